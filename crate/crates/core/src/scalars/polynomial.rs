use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial with rational coefficients.
///
/// The variable list is kept sorted by name and pruned of variables that do
/// not occur, so structural equality coincides with polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    variables: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Self { variables: Vec::new(), terms }
    }

    pub fn variable(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        Self { variables: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(coefficient, [(variable, exponent)])` terms.
    pub fn from_terms<'a, I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Rational, Vec<(&'a str, u32)>)>,
    {
        terms
            .into_iter()
            .map(|(c, mono)| {
                mono.into_iter()
                    .fold(Self::constant(c), |acc, (v, e)| &acc * &Self::variable(v).pow(e))
            })
            .fold(Self::zero(), |acc, t| &acc + &t)
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.variables.is_empty()
    }

    /// The constant value, if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &Rational> {
        self.terms.values()
    }

    /// Terms in graded-lexicographic order, leading term first.
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &Rational)> {
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| grlex(b, a));
        terms
    }

    /// Positive rational content: gcd of numerators over lcm of denominators.
    pub fn content(&self) -> Rational {
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        if num.is_zero() {
            return Rational::one();
        }
        Rational::new(num, den)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut result = Self::constant(Rational::one());
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces the given variables by rational values; others stay symbolic.
    pub fn substitute(&self, values: &HashMap<String, Rational>) -> Self {
        let mut out: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let mut c = coeff.clone();
            let mut rest = exps.clone();
            for (k, var) in self.variables.iter().enumerate() {
                if let Some(v) = values.get(var) {
                    c *= pow_rational(v, exps[k]);
                    rest[k] = 0;
                }
            }
            accumulate(&mut out, rest, c);
        }
        Self { variables: self.variables.clone(), terms: out }.pruned()
    }

    /// Evaluates at a point that assigns every occurring variable.
    pub fn evaluate(&self, point: &HashMap<String, Rational>) -> Result<Rational> {
        if let Some(missing) = self.variables.iter().find(|v| !point.contains_key(*v)) {
            return Err(Error::Invalid(format!("no value given for variable `{missing}`")));
        }
        Ok(self
            .substitute(point)
            .as_constant()
            .expect("all variables substituted"))
    }

    fn pruned(mut self) -> Self {
        self.terms.retain(|_, c| !c.is_zero());
        let n = self.variables.len();
        let used: Vec<bool> = (0..n)
            .map(|k| self.terms.keys().any(|e| e[k] > 0))
            .collect();
        if used.iter().all(|&u| u) {
            return self;
        }
        let variables = self
            .variables
            .iter()
            .zip(&used)
            .filter(|(_, &u)| u)
            .map(|(v, _)| v.clone())
            .collect();
        let terms = self
            .terms
            .into_iter()
            .map(|(e, c)| {
                let e = e
                    .into_iter()
                    .zip(&used)
                    .filter(|(_, &u)| u)
                    .map(|(x, _)| x)
                    .collect();
                (e, c)
            })
            .collect();
        Self { variables, terms }
    }

    /// Rewrites both operands over the sorted union of their variables.
    fn aligned(
        &self,
        other: &Self,
    ) -> (Vec<String>, BTreeMap<Vec<u32>, Rational>, BTreeMap<Vec<u32>, Rational>) {
        if self.variables == other.variables {
            return (self.variables.clone(), self.terms.clone(), other.terms.clone());
        }
        let mut union: Vec<String> = self
            .variables
            .iter()
            .chain(&other.variables)
            .cloned()
            .collect();
        union.sort();
        union.dedup();
        let remap = |p: &Self| -> BTreeMap<Vec<u32>, Rational> {
            let pos: Vec<usize> = p
                .variables
                .iter()
                .map(|v| union.binary_search(v).expect("variable in union"))
                .collect();
            p.terms
                .iter()
                .map(|(e, c)| {
                    let mut full = vec![0; union.len()];
                    for (k, &x) in e.iter().enumerate() {
                        full[pos[k]] = x;
                    }
                    (full, c.clone())
                })
                .collect()
        };
        let a = remap(self);
        let b = remap(other);
        (union, a, b)
    }
}

fn accumulate(terms: &mut BTreeMap<Vec<u32>, Rational>, exps: Vec<u32>, c: Rational) {
    match terms.get_mut(&exps) {
        Some(existing) => {
            *existing += c;
            if existing.is_zero() {
                terms.remove(&exps);
            }
        }
        None => {
            if !c.is_zero() {
                terms.insert(exps, c);
            }
        }
    }
}

pub(crate) fn pow_rational(base: &Rational, exp: u32) -> Rational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// Graded lexicographic comparison of exponent vectors over the same variables.
fn grlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (_, a, b) = self.aligned(other);
        let mut ta: Vec<_> = a.into_iter().collect();
        let mut tb: Vec<_> = b.into_iter().collect();
        ta.sort_by(|(x, _), (y, _)| grlex(y, x));
        tb.sort_by(|(x, _), (y, _)| grlex(y, x));
        for ((ea, ca), (eb, cb)) in ta.iter().zip(&tb) {
            let ord = grlex(ea, eb).then_with(|| ca.cmp(cb));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        ta.len().cmp(&tb.len())
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, rhs: &Polynomial) -> Polynomial {
        let (variables, mut terms, b) = self.aligned(rhs);
        for (e, c) in b {
            accumulate(&mut terms, e, c);
        }
        Polynomial { variables, terms }.pruned()
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (variables, a, b) = self.aligned(rhs);
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                accumulate(&mut terms, e, ca * cb);
            }
        }
        Polynomial { variables, terms }.pruned()
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            variables: self.variables.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (exps, coeff)) in self.sorted_terms().into_iter().enumerate() {
            let negative = coeff.is_negative();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let abs = coeff.abs();
            let monomial: Vec<String> = self
                .variables
                .iter()
                .zip(exps)
                .filter(|(_, &e)| e > 0)
                .map(|(v, &e)| if e == 1 { v.clone() } else { format!("{v}^{e}") })
                .collect();
            if monomial.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", monomial.join("*"))?;
            } else {
                write!(f, "{abs}*{}", monomial.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn prints_in_graded_lex_order() {
        let a = Polynomial::variable("a");
        let b = Polynomial::variable("b");
        let p = &(&b.scale(&r(-1, 2)) + &a.pow(2).scale(&r(2, 1))) + &Polynomial::constant(r(3, 1));
        assert_eq!(p.to_string(), "2*a^2 - 1/2*b + 3");
        let q = &a - &Polynomial::variable("c");
        assert_eq!(q.to_string(), "a - c");
        assert_eq!((-&q).to_string(), "-a + c");
    }

    #[test]
    fn cancellation_prunes_variables() {
        let a = Polynomial::variable("a");
        let b = Polynomial::variable("b");
        let p = &(&a + &b) - &a;
        assert_eq!(p, b);
        assert_eq!(p.variables(), ["b".to_string()]);
        let z = &p - &b;
        assert!(z.is_zero());
        assert!(z.is_constant());
    }

    #[test]
    fn content_is_positive() {
        let a = Polynomial::variable("a");
        let c = Polynomial::variable("c");
        let p = (&a - &c).scale(&r(-6, 4));
        assert_eq!(p.content(), r(3, 2));
    }

    #[test]
    fn substitute_partially() {
        let a = Polynomial::variable("a");
        let b = Polynomial::variable("b");
        let p = &(&a * &b) + &a.pow(3);
        let mut at = HashMap::new();
        at.insert("a".to_string(), r(2, 1));
        let q = p.substitute(&at);
        assert_eq!(q, &b.scale(&r(2, 1)) + &Polynomial::constant(r(8, 1)));
        at.insert("b".to_string(), r(-1, 2));
        assert_eq!(p.evaluate(&at).unwrap(), r(7, 1));
    }

    #[test]
    fn evaluate_requires_all_variables() {
        let p = Polynomial::variable("a");
        assert!(p.evaluate(&HashMap::new()).is_err());
    }
}
