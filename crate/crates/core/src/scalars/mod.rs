//! Exact scalars: arbitrary-precision rationals and sparse polynomials over
//! the rationals, plus the sign oracle and polynomial sign constraints.

mod constraint;
mod parse;
mod polynomial;

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub use constraint::{normalize_constraint, ConditionDisjunction, Constraint, Normalized, Relation};
pub use parse::parse_scalar;
pub use polynomial::Polynomial;

pub type Rational = num_rational::BigRational;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn of_rational(q: &Rational) -> Sign {
        if q.is_positive() {
            Sign::Positive
        } else if q.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Zero => '0',
            Sign::Positive => '+',
        }
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        match (self, rhs) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Symbols assumed strictly positive.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AssumptionSet {
    positive: BTreeSet<String>,
}

impl AssumptionSet {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn positive<I, S>(symbols: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self { positive: symbols.into_iter().map(Into::into).collect() }
    }

    pub fn is_positive(&self, symbol: &str) -> bool {
        self.positive.contains(symbol)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> {
        self.positive.iter().map(String::as_str)
    }
}

/// An exact matrix entry. Polynomials without variables are always stored as
/// the `Rational` variant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Polynomial(Polynomial),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(Rational::one())
    }

    pub fn int(n: i64) -> Self {
        Scalar::Rational(Rational::from_integer(n.into()))
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        match p.as_constant() {
            Some(c) => Scalar::Rational(c),
            None => Scalar::Polynomial(p),
        }
    }

    pub fn variable(name: &str) -> Self {
        Scalar::Polynomial(Polynomial::variable(name))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Polynomial(p) => p.is_zero(),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, Scalar::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Polynomial(_) => None,
        }
    }

    pub fn to_polynomial(&self) -> Polynomial {
        match self {
            Scalar::Rational(q) => Polynomial::constant(q.clone()),
            Scalar::Polynomial(p) => p.clone(),
        }
    }

    /// Positive rational content (1 for zero).
    pub fn content(&self) -> Rational {
        match self {
            Scalar::Rational(q) if q.is_zero() => Rational::one(),
            Scalar::Rational(q) => q.abs(),
            Scalar::Polynomial(p) => p.content(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(q * c),
            Scalar::Polynomial(p) => Scalar::from_polynomial(p.scale(c)),
        }
    }

    pub fn substitute(&self, values: &HashMap<String, Rational>) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Polynomial(p) => Scalar::from_polynomial(p.substitute(values)),
        }
    }

    pub fn evaluate(&self, point: &HashMap<String, Rational>) -> crate::Result<Rational> {
        match self {
            Scalar::Rational(q) => Ok(q.clone()),
            Scalar::Polynomial(p) => p.evaluate(point),
        }
    }

    pub fn variables(&self) -> Vec<String> {
        match self {
            Scalar::Rational(_) => Vec::new(),
            Scalar::Polynomial(p) => p.variables().to_vec(),
        }
    }
}

/// Sign of a scalar, or `None` when the coefficient test cannot decide it.
///
/// A polynomial is `+` when every coefficient is positive and every variable
/// is assumed positive, `-` symmetrically.
pub fn scalar_sign(s: &Scalar, assumptions: &AssumptionSet) -> Option<Sign> {
    match s {
        Scalar::Rational(q) => Some(Sign::of_rational(q)),
        Scalar::Polynomial(p) => polynomial_sign(p, assumptions),
    }
}

pub(crate) fn polynomial_sign(p: &Polynomial, assumptions: &AssumptionSet) -> Option<Sign> {
    if let Some(c) = p.as_constant() {
        return Some(Sign::of_rational(&c));
    }
    if !p.variables().iter().all(|v| assumptions.is_positive(v)) {
        return None;
    }
    if p.coefficients().all(|c| c.is_positive()) {
        Some(Sign::Positive)
    } else if p.coefficients().all(|c| c.is_negative()) {
        Some(Sign::Negative)
    } else {
        None
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Polynomial> for Scalar {
    fn from(p: Polynomial) -> Self {
        Scalar::from_polynomial(p)
    }
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => Scalar::from_polynomial(&self.to_polynomial() + &rhs.to_polynomial()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => Scalar::from_polynomial(&self.to_polynomial() - &rhs.to_polynomial()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Polynomial(p))
            | (Scalar::Polynomial(p), Scalar::Rational(a)) => Scalar::from_polynomial(p.scale(a)),
            (Scalar::Polynomial(p), Scalar::Polynomial(q)) => Scalar::from_polynomial(p * q),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Polynomial(p) => Scalar::Polynomial(-p),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Polynomial(p) => write!(f, "{p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const VARS: [&str; 3] = ["a", "b", "c"];

    fn small_poly() -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((-4i64..=4, 1i64..=3, 0u32..=2, 0u32..=2, 0u32..=1), 0..4).prop_map(
            |terms| {
                Polynomial::from_terms(terms.into_iter().map(|(n, d, ea, eb, ec)| {
                    (rational(n, d), vec![("a", ea), ("b", eb), ("c", ec)])
                }))
            },
        )
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            (-9i64..=9, 1i64..=5).prop_map(|(n, d)| Scalar::Rational(rational(n, d))),
            small_poly().prop_map(Scalar::from_polynomial),
        ]
    }

    fn point() -> impl Strategy<Value = HashMap<String, Rational>> {
        prop::collection::vec((-7i64..=7, 1i64..=4), 3).prop_map(|v| {
            VARS.iter()
                .zip(v)
                .map(|(name, (n, d))| (name.to_string(), rational(n, d)))
                .collect()
        })
    }

    #[test]
    fn sign_examples() {
        let none = AssumptionSet::none();
        assert_eq!(scalar_sign(&Scalar::int(5), &none), Some(Sign::Positive));
        let all = AssumptionSet::positive(["a", "b", "c"]);
        assert_eq!(scalar_sign(&Scalar::variable("b"), &all), Some(Sign::Positive));
        let only_a = AssumptionSet::positive(["a"]);
        let a_minus_c = parse_scalar("a - c", &["a", "b", "c"]).unwrap();
        assert_eq!(scalar_sign(&a_minus_c, &only_a), None);
        assert_eq!(scalar_sign(&a_minus_c, &all), None);
        let neg = parse_scalar("-a*b - 2", &["a", "b"]).unwrap();
        assert_eq!(scalar_sign(&neg, &all), Some(Sign::Negative));
        assert_eq!(scalar_sign(&Scalar::zero(), &none), Some(Sign::Zero));
    }

    #[test]
    fn constant_polynomials_collapse() {
        let a = Scalar::variable("a");
        let d = &a - &a;
        assert_eq!(d, Scalar::zero());
        assert!(d.is_rational());
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(s in small_scalar()) {
            let text = s.to_string();
            prop_assert_eq!(parse_scalar(&text, &VARS).unwrap(), s);
        }

        #[test]
        fn ring_laws(p in small_scalar(), q in small_scalar(), r in small_scalar()) {
            prop_assert_eq!(&(&p + &q) * &r, &(&p * &r) + &(&q * &r));
            prop_assert_eq!(&p * &Scalar::one(), p.clone());
            prop_assert!((&p - &p).is_zero());
            prop_assert_eq!(&p * &q, &q * &p);
        }

        #[test]
        fn sign_is_odd(s in small_scalar()) {
            let assume = AssumptionSet::positive(VARS);
            let pos = scalar_sign(&s, &assume);
            let neg = scalar_sign(&(-&s), &assume);
            match (pos, neg) {
                (Some(x), Some(y)) => prop_assert_eq!(x, -y),
                (None, None) => {}
                _ => prop_assert!(false, "decidability must agree for s and -s"),
            }
        }

        #[test]
        fn evaluation_is_a_homomorphism(p in small_scalar(), q in small_scalar(), x in point()) {
            let pq = (&p * &q).evaluate(&x).unwrap();
            prop_assert_eq!(pq, p.evaluate(&x).unwrap() * q.evaluate(&x).unwrap());
            let sum = (&p + &q).evaluate(&x).unwrap();
            prop_assert_eq!(sum, p.evaluate(&x).unwrap() + q.evaluate(&x).unwrap());
        }
    }
}
