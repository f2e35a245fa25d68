//! Sign vectors in `{-, 0, +}^n`, stored as a pair of packed bitsets.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalars::{scalar_sign, AssumptionSet, Scalar, Sign};

const WORD: usize = 64;

fn words(len: usize) -> usize {
    len.div_ceil(WORD)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    len: usize,
    plus: Vec<u64>,
    minus: Vec<u64>,
}

pub type SignVectorSet = BTreeSet<SignVector>;

impl SignVector {
    pub fn zero(len: usize) -> Self {
        Self { len, plus: vec![0; words(len)], minus: vec![0; words(len)] }
    }

    pub fn from_signs(signs: &[Sign]) -> Self {
        let mut v = Self::zero(signs.len());
        for (i, &s) in signs.iter().enumerate() {
            v.set(i, s);
        }
        v
    }

    /// Sign vector with `+` on `plus`, `-` on `minus` (zero-based positions).
    pub fn from_sets(len: usize, plus: &[usize], minus: &[usize]) -> Self {
        let mut v = Self::zero(len);
        for &i in plus {
            v.set(i, Sign::Positive);
        }
        for &i in minus {
            v.set(i, Sign::Negative);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Sign {
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        if self.plus[w] & b != 0 {
            Sign::Positive
        } else if self.minus[w] & b != 0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }

    pub fn set(&mut self, i: usize, s: Sign) {
        assert!(i < self.len, "position {i} out of range for length {}", self.len);
        let (w, b) = (i / WORD, 1u64 << (i % WORD));
        self.plus[w] &= !b;
        self.minus[w] &= !b;
        match s {
            Sign::Positive => self.plus[w] |= b,
            Sign::Negative => self.minus[w] |= b,
            Sign::Zero => {}
        }
    }

    pub fn signs(&self) -> impl Iterator<Item = Sign> + '_ {
        (0..self.len).map(|i| self.get(i))
    }

    /// Zero-based positions of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i) != Sign::Zero).collect()
    }

    pub fn plus_positions(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i) == Sign::Positive).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.plus.iter().chain(&self.minus).all(|&w| w == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.minus.iter().all(|&w| w == 0)
    }

    /// `supp self ⊆ supp other`
    pub fn support_subset_of(&self, other: &SignVector) -> bool {
        self.check_len(other).is_ok()
            && (0..self.plus.len()).all(|w| (self.plus[w] | self.minus[w]) & !(other.plus[w] | other.minus[w]) == 0)
    }

    pub fn negate(&self) -> SignVector {
        Self { len: self.len, plus: self.minus.clone(), minus: self.plus.clone() }
    }

    fn check_len(&self, other: &SignVector) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch(format!(
                "sign vectors of lengths {} and {}",
                self.len, other.len
            )));
        }
        Ok(())
    }

    /// `(self ∘ other)_i = self_i` if nonzero, else `other_i`.
    pub fn compose(&self, other: &SignVector) -> Result<SignVector> {
        self.check_len(other)?;
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &SignVector) -> SignVector {
        let mut out = self.clone();
        for w in 0..self.plus.len() {
            let free = !(self.plus[w] | self.minus[w]);
            out.plus[w] |= other.plus[w] & free;
            out.minus[w] |= other.minus[w] & free;
        }
        out
    }

    /// Conformal order: every nonzero entry of `self` agrees with `other`.
    pub fn leq(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        Ok(self.leq_unchecked(other))
    }

    pub(crate) fn leq_unchecked(&self, other: &SignVector) -> bool {
        (0..self.plus.len())
            .all(|w| self.plus[w] & !other.plus[w] == 0 && self.minus[w] & !other.minus[w] == 0)
    }

    /// Sign-orthogonality: the products `self_i * other_i` are all zero, or
    /// include both a `+` and a `-`.
    pub fn is_orthogonal_to(&self, other: &SignVector) -> Result<bool> {
        self.check_len(other)?;
        let mut pos = false;
        let mut neg = false;
        for w in 0..self.plus.len() {
            pos |= (self.plus[w] & other.plus[w]) | (self.minus[w] & other.minus[w]) != 0;
            neg |= (self.plus[w] & other.minus[w]) | (self.minus[w] & other.plus[w]) != 0;
        }
        Ok(pos == neg)
    }

    pub fn to_compact_string(&self) -> String {
        self.signs().map(Sign::as_char).collect()
    }

    fn rank_at(&self, i: usize) -> u8 {
        match self.get(i) {
            Sign::Zero => 0,
            Sign::Negative => 1,
            Sign::Positive => 2,
        }
    }
}

/// Componentwise sign of a vector; fails on the first undecidable entry.
pub fn sign_vector_of(v: &[Scalar], assumptions: &AssumptionSet) -> Result<SignVector> {
    let mut out = SignVector::zero(v.len());
    for (i, x) in v.iter().enumerate() {
        match scalar_sign(x, assumptions) {
            Some(s) => out.set(i, s),
            None => {
                return Err(Error::UndecidableSign {
                    what: format!("entry {}", i + 1),
                    value: x.to_string(),
                })
            }
        }
    }
    Ok(out)
}

/// All sign vectors conformally below some member of `set`.
pub fn lower_closure(set: &SignVectorSet) -> Result<SignVectorSet> {
    let mut out = SignVectorSet::new();
    let Some(first) = set.iter().next() else {
        return Ok(out);
    };
    for tau in set {
        first.check_len(tau)?;
        let supp = tau.support();
        for mask in 0u64..(1u64 << supp.len()) {
            let mut sigma = SignVector::zero(tau.len());
            for (k, &i) in supp.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    sigma.set(i, tau.get(i));
                }
            }
            out.insert(sigma);
        }
    }
    Ok(out)
}

// Lexicographic with 0 < - < +.
impl Ord for SignVector {
    fn cmp(&self, other: &Self) -> Ordering {
        for i in 0..self.len.min(other.len) {
            match self.rank_at(i).cmp(&other.rank_at(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        self.len.cmp(&other.len)
    }
}

impl PartialOrd for SignVector {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_compact_string())
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Accepts `+0-+` or `(+0-+)`.
impl FromStr for SignVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim();
        let body = body
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .unwrap_or(body);
        let signs = body
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '+' => Ok(Sign::Positive),
                '-' | '−' => Ok(Sign::Negative),
                '0' => Ok(Sign::Zero),
                _ => Err(Error::Syntax { position: i, message: format!("`{c}` is not a sign") }),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(SignVector::from_signs(&signs))
    }
}

pub fn format_set(set: &SignVectorSet) -> String {
    let parts: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sv(s: &str) -> SignVector {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> SignVectorSet {
        items.iter().map(|s| sv(s)).collect()
    }

    #[test]
    fn sign_of_vectors() {
        let none = AssumptionSet::none();
        let v: Vec<Scalar> = [4, 0, -2, 1].iter().map(|&x| Scalar::int(x)).collect();
        assert_eq!(sign_vector_of(&v, &none).unwrap().to_string(), "(+0-+)");
        assert_eq!(sign_vector_of(&vec![Scalar::zero(); 3], &none).unwrap(), sv("000"));
        assert_eq!(sign_vector_of(&[Scalar::int(-1), Scalar::int(5)], &none).unwrap(), sv("-+"));
        let err = sign_vector_of(&[Scalar::int(1), Scalar::variable("a")], &none).unwrap_err();
        assert!(matches!(err, Error::UndecidableSign { ref what, .. } if what == "entry 2"));
    }

    #[test]
    fn composition() {
        assert_eq!(sv("+0-0").compose(&sv("-+0+")).unwrap(), sv("++-+"));
        assert_eq!(sv("+0-").compose(&sv("000")).unwrap(), sv("+0-"));
        assert_eq!(sv("000").compose(&sv("-+0")).unwrap(), sv("-+0"));
        assert!(sv("+").compose(&sv("+-")).is_err());
    }

    #[test]
    fn conformal_order() {
        assert!(sv("0+00").leq(&sv("++0-")).unwrap());
        assert!(!sv("+").leq(&sv("-")).unwrap());
        assert!(sv("000").leq(&sv("+-+")).unwrap());
        assert!(sv("0").leq(&sv("00")).is_err());
    }

    #[test]
    fn closure_examples() {
        assert_eq!(lower_closure(&set(&["+-"])).unwrap(), set(&["00", "+0", "0-", "+-"]));
        assert!(lower_closure(&SignVectorSet::new()).unwrap().is_empty());
        assert_eq!(lower_closure(&set(&["0+"])).unwrap(), set(&["00", "0+"]));
        assert!(lower_closure(&set(&["0+", "+"])).is_err());
    }

    #[test]
    fn nonnegativity() {
        assert!(sv("+0+0").is_nonnegative());
        assert!(sv("0000").is_nonnegative());
        assert!(!sv("+-00").is_nonnegative());
    }

    #[test]
    fn printing_order() {
        let s = set(&["+0", "-0", "00", "0+", "0-"]);
        assert_eq!(format_set(&s), "{(00), (0-), (0+), (-0), (+0)}");
    }

    #[test]
    fn long_vectors_cross_word_boundaries() {
        let mut a = SignVector::zero(130);
        a.set(0, Sign::Positive);
        a.set(129, Sign::Negative);
        let mut b = SignVector::zero(130);
        b.set(64, Sign::Positive);
        let c = a.compose(&b).unwrap();
        assert_eq!(c.support(), vec![0, 64, 129]);
        assert!(a.leq(&c).unwrap());
        assert_eq!(c.negate().get(129), Sign::Positive);
    }

    fn sign_vec(n: usize) -> impl Strategy<Value = SignVector> {
        prop::collection::vec(prop::sample::select(vec![Sign::Negative, Sign::Zero, Sign::Positive]), n)
            .prop_map(|s| SignVector::from_signs(&s))
    }

    fn triple() -> impl Strategy<Value = (SignVector, SignVector, SignVector)> {
        (1usize..8).prop_flat_map(|n| (sign_vec(n), sign_vec(n), sign_vec(n)))
    }

    proptest! {
        #[test]
        fn composition_laws((a, b, c) in triple()) {
            prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
            prop_assert_eq!(a.compose(&a).unwrap(), a.clone());
        }

        #[test]
        fn order_laws((a, b, c) in triple()) {
            let leq = a.leq(&b).unwrap();
            prop_assert_eq!(leq, a.compose(&b).unwrap() == b && a.support_subset_of(&b));
            prop_assert!(a.leq(&a).unwrap());
            if leq && b.leq(&a).unwrap() {
                prop_assert_eq!(&a, &b);
            }
            if leq && b.leq(&c).unwrap() {
                prop_assert!(a.leq(&c).unwrap());
            }
        }

        #[test]
        fn closure_size((a, _, _) in triple()) {
            let closure = lower_closure(&[a.clone()].into_iter().collect()).unwrap();
            prop_assert_eq!(closure.len(), 1usize << a.support().len());
        }

        #[test]
        fn sign_of_negation(v in prop::collection::vec(-3i64..=3, 1..8)) {
            let none = AssumptionSet::none();
            let x: Vec<Scalar> = v.iter().map(|&t| Scalar::int(t)).collect();
            let nx: Vec<Scalar> = v.iter().map(|&t| Scalar::int(-t)).collect();
            prop_assert_eq!(sign_vector_of(&nx, &none).unwrap(), sign_vector_of(&x, &none).unwrap().negate());
        }

        #[test]
        fn text_round_trip(a in sign_vec(6)) {
            prop_assert_eq!(a.to_string().parse::<SignVector>().unwrap(), a);
        }
    }
}
