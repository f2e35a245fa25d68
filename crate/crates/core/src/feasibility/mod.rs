//! Does a subspace meet a product of intervals?
//!
//! Exactly one of the following holds for the row space `V` of `M` and a box
//! of nonempty intervals: some `x ∈ V` lies in the box, or some elementary
//! vector `v` of `V⊥ = ker M` has `vᵀz > 0` for every `z` in the box.
//! [`exists_vector`] searches the elementary vectors for such a certificate;
//! [`feasibility_oracle`] decides the same question by Fourier–Motzkin
//! elimination and supplies witnesses.

mod fourier_motzkin;

use std::fmt;

use num_traits::{Signed, Zero};

pub use fourier_motzkin::{feasibility_oracle, in_row_space};

use crate::elementary::{elementary_vectors, Subspace};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::oriented_matroid::chirotope;
use crate::scalars::{scalar_sign, AssumptionSet, Rational, Scalar, Sign};

/// An interval of the rationals; `None` endpoints are infinite (and open).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lower: Option<Rational>,
    upper: Option<Rational>,
    lower_closed: bool,
    upper_closed: bool,
}

impl Interval {
    pub fn new(
        lower: Option<Rational>,
        upper: Option<Rational>,
        lower_closed: bool,
        upper_closed: bool,
    ) -> Result<Self> {
        let lower_closed = lower_closed && lower.is_some();
        let upper_closed = upper_closed && upper.is_some();
        let interval = Self { lower, upper, lower_closed, upper_closed };
        if let (Some(l), Some(u)) = (&interval.lower, &interval.upper) {
            if l > u || (l == u && !(lower_closed && upper_closed)) {
                return Err(Error::EmptyInterval(interval.to_string()));
            }
        }
        Ok(interval)
    }

    pub fn closed(lower: Rational, upper: Rational) -> Result<Self> {
        Self::new(Some(lower), Some(upper), true, true)
    }

    pub fn open(lower: Rational, upper: Rational) -> Result<Self> {
        Self::new(Some(lower), Some(upper), false, false)
    }

    pub fn point(value: Rational) -> Self {
        Self { lower: Some(value.clone()), upper: Some(value), lower_closed: true, upper_closed: true }
    }

    pub fn real() -> Self {
        Self { lower: None, upper: None, lower_closed: false, upper_closed: false }
    }

    /// `(0, +oo)`
    pub fn positive() -> Self {
        Self { lower: Some(Rational::zero()), upper: None, lower_closed: false, upper_closed: false }
    }

    /// `(-oo, 0)`
    pub fn negative() -> Self {
        Self { lower: None, upper: Some(Rational::zero()), lower_closed: false, upper_closed: false }
    }

    /// `(-oo, 0]`
    pub fn nonpositive() -> Self {
        Self { lower: None, upper: Some(Rational::zero()), lower_closed: false, upper_closed: true }
    }

    pub fn lower(&self) -> Option<&Rational> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&Rational> {
        self.upper.as_ref()
    }

    pub fn lower_closed(&self) -> bool {
        self.lower_closed
    }

    pub fn upper_closed(&self) -> bool {
        self.upper_closed
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = match &self.lower {
            None => true,
            Some(l) => x > l || (self.lower_closed && x == l),
        };
        let below = match &self.upper {
            None => true,
            Some(u) => x < u || (self.upper_closed && x == u),
        };
        above && below
    }

    /// Whether `other ⊆ self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lower_ok = match (&self.lower, &other.lower) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a < b || (a == b && (self.lower_closed || !other.lower_closed)),
        };
        let upper_ok = match (&self.upper, &other.upper) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a > b || (a == b && (self.upper_closed || !other.upper_closed)),
        };
        lower_ok && upper_ok
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.lower_closed { '[' } else { '(' };
        let close = if self.upper_closed { ']' } else { ')' };
        let lower = self.lower.as_ref().map_or_else(|| "-oo".to_string(), ToString::to_string);
        let upper = self.upper.as_ref().map_or_else(|| "+oo".to_string(), ToString::to_string);
        write!(f, "{open}{lower}, {upper}{close}")
    }
}

/// Cartesian product of intervals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalBox(Vec<Interval>);

impl IntervalBox {
    pub fn new(intervals: Vec<Interval>) -> Self {
        IntervalBox(intervals)
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        x.len() == self.0.len() && self.0.iter().zip(x).all(|(i, v)| i.contains(v))
    }
}

impl fmt::Display for IntervalBox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Builds a box from endpoint lists (`None` = infinite) and closedness flags.
pub fn intervals_from_bounds(
    lower: &[Option<Rational>],
    upper: &[Option<Rational>],
    lower_closed: &[bool],
    upper_closed: &[bool],
) -> Result<IntervalBox> {
    let n = lower.len();
    if upper.len() != n || lower_closed.len() != n || upper_closed.len() != n {
        return Err(Error::DimensionMismatch("bound and flag lists differ in length".into()));
    }
    (0..n)
        .map(|i| Interval::new(lower[i].clone(), upper[i].clone(), lower_closed[i], upper_closed[i]))
        .collect::<Result<Vec<_>>>()
        .map(IntervalBox)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeasibilityResult {
    pub feasible: bool,
    /// A point of the subspace inside the box.
    pub witness: Option<Vec<Rational>>,
    /// An elementary vector of the orthogonal complement, positive on the box.
    pub certificate: Option<Vec<Scalar>>,
}

impl FeasibilityResult {
    pub(crate) fn feasible(witness: Option<Vec<Rational>>) -> Self {
        Self { feasible: true, witness, certificate: None }
    }

    pub(crate) fn infeasible(certificate: Option<Vec<Scalar>>) -> Self {
        Self { feasible: false, witness: None, certificate }
    }
}

/// Whether `vᵀz > 0` for every `z` in the box.
///
/// The infimum takes the lower bound where `v_i > 0` and the upper bound where
/// `v_i < 0`. It must be positive, or zero and not attained.
pub fn linear_form_positive_on_box(v: &[Rational], bounds: &IntervalBox) -> bool {
    let v: Vec<Scalar> = v.iter().cloned().map(Scalar::Rational).collect();
    form_positive_on_box(&v, bounds, &AssumptionSet::none()).expect("rational signs are decidable")
}

/// Parametric version of [`linear_form_positive_on_box`]: entry signs and the
/// sign of the infimum must be decidable under the assumptions.
pub fn form_positive_on_box(v: &[Scalar], bounds: &IntervalBox, assumptions: &AssumptionSet) -> Result<bool> {
    assert_eq!(v.len(), bounds.len(), "vector and box lengths differ");
    let mut infimum = Scalar::zero();
    let mut attained = true;
    for (x, interval) in v.iter().zip(bounds.intervals()) {
        let sign = scalar_sign(x, assumptions).ok_or_else(|| Error::UndecidableSign {
            what: "a certificate entry".into(),
            value: x.to_string(),
        })?;
        let (bound, closed) = match sign {
            Sign::Zero => continue,
            Sign::Positive => (interval.lower(), interval.lower_closed()),
            Sign::Negative => (interval.upper(), interval.upper_closed()),
        };
        let Some(bound) = bound else {
            return Ok(false);
        };
        attained &= closed;
        if !bound.is_zero() {
            infimum = &infimum + &x.scale(bound);
        }
    }
    match scalar_sign(&infimum, assumptions) {
        Some(Sign::Positive) => Ok(true),
        Some(Sign::Zero) => Ok(!attained),
        Some(Sign::Negative) => Ok(false),
        None => Err(Error::UndecidableSign { what: "a certificate infimum".into(), value: infimum.to_string() }),
    }
}

fn check_box(m: &ExactMatrix, bounds: &IntervalBox) -> Result<()> {
    if bounds.len() != m.n_cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} intervals for {} columns",
            bounds.len(),
            m.n_cols()
        )));
    }
    Ok(())
}

/// Decides whether the row space of `m` meets `bounds`.
///
/// On infeasibility the certificate is the first elementary vector of
/// `ker m` (or its negative), in column-set order, that is positive on the box.
/// Witnesses, when requested, come from [`feasibility_oracle`].
pub fn exists_vector(m: &ExactMatrix, bounds: &IntervalBox, want_witness: bool) -> Result<FeasibilityResult> {
    check_box(m, bounds)?;
    m.to_rational_rows()?;
    if let Some(cert) = find_certificate(m, bounds, &AssumptionSet::none())? {
        return Ok(FeasibilityResult::infeasible(Some(cert)));
    }
    if !want_witness {
        return Ok(FeasibilityResult::feasible(None));
    }
    let oracle = feasibility_oracle(m, bounds)?;
    assert!(oracle.feasible, "elementary-vector search and elimination disagree on {m} and {bounds}");
    Ok(oracle)
}

/// [`exists_vector`] for a matrix with parametric entries. Every maximal
/// minor must have a decidable sign under `assumptions`, so the elementary
/// vectors are the same for all admissible parameter values.
pub fn exists_vector_assuming(
    m: &ExactMatrix,
    bounds: &IntervalBox,
    assumptions: &AssumptionSet,
) -> Result<FeasibilityResult> {
    check_box(m, bounds)?;
    if m.is_rational() {
        return exists_vector(m, bounds, false);
    }
    let signs = chirotope(m, assumptions)?;
    if signs.iter().all(|&s| s == Sign::Zero) {
        return Err(Error::RankDeficient { rank: 0, rows: m.n_rows() });
    }
    Ok(match find_certificate(m, bounds, assumptions)? {
        Some(cert) => FeasibilityResult::infeasible(Some(cert)),
        None => FeasibilityResult::feasible(None),
    })
}

fn find_certificate(m: &ExactMatrix, bounds: &IntervalBox, assumptions: &AssumptionSet) -> Result<Option<Vec<Scalar>>> {
    for v in elementary_vectors(m, Subspace::Kernel, true)?.into_vectors() {
        if form_positive_on_box(&v, bounds, assumptions)? {
            return Ok(Some(v));
        }
        let neg: Vec<Scalar> = v.iter().map(|x| -x).collect();
        if form_positive_on_box(&neg, bounds, assumptions)? {
            return Ok(Some(neg));
        }
    }
    Ok(None)
}

/// Strictly positive concentrations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcentrationVector(Vec<Rational>);

impl ConcentrationVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|x| !x.is_positive()) {
            return Err(Error::Nonpositive(format!("concentration {bad}")));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_scalar, rational};

    fn r(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn sample_box() -> IntervalBox {
        intervals_from_bounds(
            &[Some(r(2)), Some(r(5)), Some(r(0)), None],
            &[Some(r(5)), None, Some(r(8)), Some(r(5))],
            &[true, true, false, false],
            &[false, false, false, true],
        )
        .unwrap()
    }

    #[test]
    fn box_display() {
        assert_eq!(sample_box().to_string(), "[[2, 5), [5, +oo), (0, 8), (-oo, 5]]");
        let point = intervals_from_bounds(&[Some(r(0))], &[Some(r(0))], &[true], &[true]).unwrap();
        assert_eq!(point.to_string(), "[[0, 0]]");
    }

    #[test]
    fn empty_intervals_are_rejected() {
        assert!(matches!(
            intervals_from_bounds(&[Some(r(1))], &[Some(r(0))], &[true], &[true]),
            Err(Error::EmptyInterval(_))
        ));
        assert!(Interval::new(Some(r(1)), Some(r(1)), true, false).is_err());
        assert!(intervals_from_bounds(&[None], &[], &[true], &[true]).is_err());
    }

    #[test]
    fn infinite_endpoints_are_open() {
        let i = Interval::new(None, Some(r(3)), true, true).unwrap();
        assert!(!i.lower_closed());
        assert_eq!(i.to_string(), "(-oo, 3]");
    }

    #[test]
    fn positivity_on_box() {
        let half_open = IntervalBox::new(vec![Interval::new(Some(r(2)), Some(r(5)), false, true).unwrap()]);
        assert!(linear_form_positive_on_box(&[r(1)], &half_open));
        let open = IntervalBox::new(vec![Interval::open(r(0), r(1)).unwrap()]);
        assert!(linear_form_positive_on_box(&[r(1)], &open));
        let closed = IntervalBox::new(vec![Interval::closed(r(0), r(1)).unwrap()]);
        assert!(!linear_form_positive_on_box(&[r(1)], &closed));
        assert!(!linear_form_positive_on_box(&[r(-1)], &IntervalBox::new(vec![Interval::positive()])));
        assert!(!linear_form_positive_on_box(&[r(0)], &open));
    }

    #[test]
    fn sample_box_is_feasible() {
        let m = ExactMatrix::from_ints(&[[1, 0, 1, 0], [0, 1, 1, 1]]);
        let result = exists_vector(&m, &sample_box(), true).unwrap();
        assert!(result.feasible);
        let x = result.witness.unwrap();
        assert!(sample_box().contains(&x));
        assert!(in_row_space(&m, &x).unwrap());
    }

    #[test]
    fn identity_row_space_meets_everything() {
        let m = ExactMatrix::identity(3);
        let b = IntervalBox::new(vec![Interval::positive(), Interval::negative(), Interval::point(r(7))]);
        assert!(exists_vector(&m, &b, true).unwrap().feasible);
    }

    #[test]
    fn infeasible_with_certificate() {
        let m = ExactMatrix::from_ints(&[[1, 1]]);
        let b = IntervalBox::new(vec![
            Interval::closed(r(1), r(2)).unwrap(),
            Interval::closed(r(-2), r(-1)).unwrap(),
        ]);
        let result = exists_vector(&m, &b, true).unwrap();
        assert!(!result.feasible);
        assert_eq!(result.certificate, Some(vec![Scalar::int(1), Scalar::int(-1)]));
        assert!(result.witness.is_none());
    }

    #[test]
    fn parametric_row_space() {
        let vars = ["a"];
        let m = ExactMatrix::from_rows(
            vec![vec![Scalar::int(1), parse_scalar("a", &vars).unwrap()]],
            2,
        )
        .unwrap();
        let assume = AssumptionSet::positive(vars);
        let opposite = IntervalBox::new(vec![Interval::positive(), Interval::negative()]);
        assert!(!exists_vector_assuming(&m, &opposite, &assume).unwrap().feasible);
        let same = IntervalBox::new(vec![Interval::positive(), Interval::positive()]);
        assert!(exists_vector_assuming(&m, &same, &assume).unwrap().feasible);
        assert!(exists_vector_assuming(&m, &same, &AssumptionSet::none()).is_err());
    }

    #[test]
    fn concentrations_must_be_positive() {
        assert!(ConcentrationVector::new(vec![r(1), rational(1, 2)]).is_ok());
        assert!(ConcentrationVector::new(vec![r(1), r(0)]).is_err());
    }
}
