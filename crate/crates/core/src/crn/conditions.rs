//! Sign-vector conditions on a pair `S = ker W`, `S̃ = ker W̃`, in both their
//! combinatorial form and their maximal-minor form.

use crate::elementary::Subspace;
use crate::error::{Error, Result};
use crate::feasibility::{exists_vector, exists_vector_assuming, Interval, IntervalBox};
use crate::matrix::ExactMatrix;
use crate::oriented_matroid::{covectors_from_matrix, nonnegative_cocircuits};
use crate::scalars::{
    normalize_constraint, AssumptionSet, ConditionDisjunction, Normalized, Rational, Relation, Sign,
};
use crate::sign_vector::SignVector;

/// Two `d × n` matrices of rank `d` with `S = ker W` and `S̃ = ker W̃`.
/// `W` is rational; `W̃` may carry parameters.
#[derive(Clone, Debug)]
pub struct SubspacePair {
    w: ExactMatrix,
    wt: ExactMatrix,
}

impl SubspacePair {
    pub fn new(w: ExactMatrix, wt: ExactMatrix) -> Result<Self> {
        if (w.n_rows(), w.n_cols()) != (wt.n_rows(), wt.n_cols()) {
            return Err(Error::DimensionMismatch(format!(
                "W is {}x{} but W̃ is {}x{}",
                w.n_rows(),
                w.n_cols(),
                wt.n_rows(),
                wt.n_cols()
            )));
        }
        for (name, m) in [("W", &w), ("W̃", &wt)] {
            if name == "W" && !m.is_rational() {
                return Err(Error::Parametric(format!("{name} must be rational")));
            }
            if m.is_rational() {
                let rank = m.rank()?;
                if rank != m.n_rows() {
                    return Err(Error::RankDeficient { rank, rows: m.n_rows() });
                }
            }
        }
        Ok(Self { w, wt })
    }

    pub fn w(&self) -> &ExactMatrix {
        &self.w
    }

    pub fn wt(&self) -> &ExactMatrix {
        &self.wt
    }

    pub fn is_rational(&self) -> bool {
        self.wt.is_rational()
    }

    fn require_rational(&self, what: &str) -> Result<()> {
        if self.is_rational() {
            Ok(())
        } else {
            Err(Error::Parametric(format!("{what} needs a numeric W̃; substitute the parameters first")))
        }
    }
}

fn resolved(poly: &crate::Polynomial, relation: Relation, assumptions: &AssumptionSet) -> Normalized {
    match normalize_constraint(poly, relation) {
        Normalized::Constraint(c) => c.resolve(assumptions),
        other => other,
    }
}

/// Branches `ε ∈ {+, -}` of `ε · det W_I · det W̃_I (rel) 0` over all
/// `d`-subsets `I` with `det W_I ≠ 0`. `W` must be rational.
///
/// For the non-strict relation some product must also be nonzero: when none
/// is known to be, the branch splits into one branch per `I` requiring
/// `ε · det W_I · det W̃_I > 0`.
pub(crate) fn minor_condition(
    w: &ExactMatrix,
    wt: &ExactMatrix,
    relation: Relation,
    assumptions: &AssumptionSet,
) -> Result<ConditionDisjunction> {
    let minors = w.maximal_minors()?;
    let tilde = wt.maximal_minors()?;
    let mut out = ConditionDisjunction::unsatisfiable();
    for orientation in [Sign::Positive, Sign::Negative] {
        let mut products = Vec::new();
        for (set, m) in minors.iter() {
            let sign = Sign::of_rational(m.as_rational().expect("W is rational"));
            if sign == Sign::Zero {
                continue;
            }
            let mt = tilde.get(set).expect("same column sets").to_polynomial();
            products.push(if sign * orientation == Sign::Positive { mt } else { -&mt });
        }
        let branch: Vec<Normalized> = products.iter().map(|p| resolved(p, relation, assumptions)).collect();
        if relation == Relation::Positive {
            out.push_branch(branch);
            continue;
        }
        let strict: Vec<Normalized> = products.iter().map(|p| resolved(p, Relation::Positive, assumptions)).collect();
        if strict.contains(&Normalized::Always) {
            out.push_branch(branch);
            continue;
        }
        for (k, s) in strict.into_iter().enumerate() {
            let mut split = branch.clone();
            split[k] = s;
            out.push_branch(split);
        }
    }
    Ok(out)
}

/// `sign(S) ⊆ lower closure of sign(S̃)`, in terms of maximal minors.
pub fn condition_closure_minors(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<ConditionDisjunction> {
    minor_condition(&pair.w, &pair.wt, Relation::Positive, assumptions)
}

/// `sign(S) ∩ sign(S̃⊥) = {0}`, in terms of maximal minors.
pub fn condition_uniqueness_minors(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<ConditionDisjunction> {
    minor_condition(&pair.w, &pair.wt, Relation::NonNegative, assumptions)
}

/// Every covector of `ker W` lies conformally below a covector of `ker W̃`.
pub fn condition_closure_sign_vectors(pair: &SubspacePair) -> Result<bool> {
    pair.require_rational("the closure test on sign vectors")?;
    let none = AssumptionSet::none();
    let s = covectors_from_matrix(&pair.w, Subspace::Kernel, &none)?;
    let st = covectors_from_matrix(&pair.wt, Subspace::Kernel, &none)?;
    Ok(s.iter().all(|sigma| st.iter().any(|tau| sigma.leq_unchecked(tau))))
}

/// The box of vectors with sign vector `sigma`.
pub(crate) fn orthant(sigma: &SignVector) -> IntervalBox {
    IntervalBox::new(
        sigma
            .signs()
            .map(|s| match s {
                Sign::Positive => Interval::positive(),
                Sign::Negative => Interval::negative(),
                Sign::Zero => Interval::point(Rational::from_integer(0.into())),
            })
            .collect(),
    )
}

/// No nonzero covector of `ker W` is the sign vector of a vector in `row W̃`.
///
/// A parametric `W̃` is accepted when all its maximal minors have decidable
/// signs under `assumptions`.
pub fn condition_uniqueness_sign_vectors(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<bool> {
    let covectors = covectors_from_matrix(&pair.w, Subspace::Kernel, &AssumptionSet::none())?;
    for sigma in covectors.iter().filter(|s| !s.is_zero()) {
        let bounds = orthant(sigma);
        let realizable = if pair.is_rational() {
            exists_vector(&pair.wt, &bounds, false)?.feasible
        } else {
            exists_vector_assuming(&pair.wt, &bounds, assumptions)?.feasible
        };
        if realizable {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every nonnegative cocircuit of `row W̃` dominates a nonnegative cocircuit
/// of `row W`.
pub fn condition_faces(pair: &SubspacePair) -> Result<bool> {
    pair.require_rational("the face condition")?;
    let none = AssumptionSet::none();
    let below = nonnegative_cocircuits(&pair.w, Subspace::RowSpace, &none)?;
    let above = nonnegative_cocircuits(&pair.wt, Subspace::RowSpace, &none)?;
    Ok(above.iter().all(|tt| below.iter().any(|t| t.leq_unchecked(tt))))
}

#[cfg(test)]
pub(crate) fn scalar_rows(rows: &[&[i64]]) -> Vec<Vec<crate::Scalar>> {
    rows.iter().map(|r| r.iter().map(|&x| crate::Scalar::int(x)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;
    use crate::sign_vector::lower_closure;
    use proptest::prelude::*;
    use std::collections::HashMap;

    pub(crate) fn parametric(rows: &[&[&str]], vars: &[&str]) -> ExactMatrix {
        let n = rows[0].len();
        let rows = rows.iter().map(|r| r.iter().map(|x| parse_scalar(x, vars).unwrap()).collect()).collect();
        ExactMatrix::from_rows(rows, n).unwrap()
    }

    fn running_pair() -> SubspacePair {
        let w = ExactMatrix::from_ints(&[[1, 0, 1, 1, 1], [0, 1, 1, 1, 0]]);
        let wt = parametric(&[&["1", "0", "a", "a - c", "1"], &["0", "1", "b", "b", "0"]], &["a", "b", "c"]);
        SubspacePair::new(w, wt).unwrap()
    }

    fn pair(w: &[&[i64]], wt: &[&[i64]]) -> SubspacePair {
        let n = w[0].len();
        SubspacePair::new(
            ExactMatrix::from_rows(scalar_rows(w), n).unwrap(),
            ExactMatrix::from_rows(scalar_rows(wt), n).unwrap(),
        )
        .unwrap()
    }

    fn at(values: &[(&str, i64)]) -> HashMap<String, Rational> {
        values.iter().map(|(k, v)| (k.to_string(), Rational::from_integer((*v).into()))).collect()
    }

    #[test]
    fn closure_minors_running_example() {
        let none = AssumptionSet::none();
        let result = condition_closure_minors(&running_pair(), &none).unwrap();
        assert_eq!(result.to_string(), "[{a - c > 0, a > 0, b > 0}]");
        let assumed = condition_closure_minors(&running_pair(), &AssumptionSet::positive(["a", "b", "c"])).unwrap();
        assert_eq!(assumed.to_string(), "[{a - c > 0}]");
    }

    #[test]
    fn uniqueness_minors_running_example() {
        let result = condition_uniqueness_minors(&running_pair(), &AssumptionSet::none()).unwrap();
        assert_eq!(result.to_string(), "[{a - c >= 0, a >= 0, b >= 0}]");
    }

    #[test]
    fn specialized_running_example() {
        let p = running_pair();
        let special = SubspacePair::new(p.w().clone(), p.wt().substitute(&at(&[("a", 2), ("b", 1), ("c", 1)]))).unwrap();
        assert!(condition_closure_sign_vectors(&special).unwrap());
        let bad = SubspacePair::new(p.w().clone(), p.wt().substitute(&at(&[("a", 1), ("b", 1), ("c", 2)]))).unwrap();
        assert!(!condition_closure_sign_vectors(&bad).unwrap());
        assert!(condition_closure_sign_vectors(&p).is_err());
    }

    #[test]
    fn small_pairs() {
        let none = AssumptionSet::none();
        let same = pair(&[&[1, 2, 0], &[0, 1, 1]], &[&[1, 2, 0], &[0, 1, 1]]);
        assert!(condition_closure_minors(&same, &none).unwrap().is_unconditional());
        assert!(condition_uniqueness_minors(&same, &none).unwrap().is_unconditional());
        assert!(condition_closure_sign_vectors(&same).unwrap());
        assert!(condition_faces(&same).unwrap());

        let opposed = pair(&[&[1, 1]], &[&[1, -1]]);
        assert!(condition_closure_minors(&opposed, &none).unwrap().is_unsatisfiable());
        assert!(condition_uniqueness_minors(&opposed, &none).unwrap().is_unsatisfiable());
        assert!(!condition_closure_sign_vectors(&opposed).unwrap());
        assert!(!condition_uniqueness_sign_vectors(&opposed, &none).unwrap());

        assert!(condition_uniqueness_sign_vectors(&pair(&[&[1, 1]], &[&[1, 1]]), &none).unwrap());
        assert!(!condition_faces(&pair(&[&[1, 1]], &[&[1, 0]])).unwrap());
    }

    #[test]
    fn uniqueness_needs_a_nonzero_product() {
        let none = AssumptionSet::none();
        let vanishing = pair(&[&[1, 0]], &[&[0, 1]]);
        assert!(condition_uniqueness_minors(&vanishing, &none).unwrap().is_unsatisfiable());
        assert!(!condition_uniqueness_sign_vectors(&vanishing, &none).unwrap());
        let split = SubspacePair::new(ExactMatrix::from_ints(&[[1, 0]]), parametric(&[&["a", "1"]], &["a"])).unwrap();
        assert_eq!(condition_uniqueness_minors(&split, &none).unwrap().to_string(), "[{a > 0}, {-a > 0}]");
    }

    #[test]
    fn pair_validation() {
        let w = ExactMatrix::from_ints(&[[1, 1], [2, 2]]);
        assert!(matches!(SubspacePair::new(w.clone(), w), Err(Error::RankDeficient { .. })));
        let w = ExactMatrix::from_ints(&[[1, 1]]);
        assert!(SubspacePair::new(w, ExactMatrix::from_ints(&[[1, 1, 1]])).is_err());
    }

    fn full_rank(d: usize, n: usize) -> impl Strategy<Value = ExactMatrix> {
        prop::collection::vec(prop::collection::vec(-2i64..=2, n), d)
            .prop_map(move |rows| ExactMatrix::from_rows(scalar_rows(&rows.iter().map(|r| &r[..]).collect::<Vec<_>>()), n).unwrap())
            .prop_filter("full rank", move |m| m.rank().unwrap() == d)
    }

    fn random_pair() -> impl Strategy<Value = SubspacePair> {
        (1usize..=3, 0usize..=2)
            .prop_flat_map(|(d, extra)| (full_rank(d, d + 1 + extra), full_rank(d, d + 1 + extra)))
            .prop_map(|(w, wt)| SubspacePair::new(w, wt).unwrap())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn closure_minors_match_sign_vectors(p in random_pair()) {
            let minors = condition_closure_minors(&p, &AssumptionSet::none()).unwrap();
            // direct subset test against the explicit lower closure
            let none = AssumptionSet::none();
            let s = covectors_from_matrix(p.w(), Subspace::Kernel, &none).unwrap();
            let closure = lower_closure(&covectors_from_matrix(p.wt(), Subspace::Kernel, &none).unwrap()).unwrap();
            let direct = s.is_subset(&closure);
            prop_assert_eq!(!minors.is_unsatisfiable(), direct);
            prop_assert_eq!(condition_closure_sign_vectors(&p).unwrap(), direct);
        }

        #[test]
        fn uniqueness_minors_match_sign_vectors(p in random_pair()) {
            let none = AssumptionSet::none();
            let minors = condition_uniqueness_minors(&p, &none).unwrap();
            let s = covectors_from_matrix(p.w(), Subspace::Kernel, &none).unwrap();
            let perp = covectors_from_matrix(p.wt(), Subspace::RowSpace, &none).unwrap();
            let direct = s.intersection(&perp).all(SignVector::is_zero);
            prop_assert_eq!(!minors.is_unsatisfiable(), direct);
            prop_assert_eq!(condition_uniqueness_sign_vectors(&p, &none).unwrap(), direct);
        }
    }
}
