//! Recursive degeneracy test for a pair `(S, S̃)`.
//!
//! A pair is degenerate when some `z ∈ S̃⊥` is positive and constant on the
//! supports of a collection of nonnegative cocircuits of `S`, nonpositive
//! elsewhere, and `supp z` contains the support of no nonnegative cocircuit
//! of `S⊥`. The search grows the collection one cocircuit at a time, each
//! time restricting `S̃⊥` to vectors that are equal on the new support.

use std::collections::BTreeSet;

use super::conditions::SubspacePair;
use crate::elementary::Subspace;
use crate::error::Result;
use crate::feasibility::{exists_vector, Interval, IntervalBox};
use crate::matrix::ExactMatrix;
use crate::oriented_matroid::{covectors_from_matrix, nonnegative_cocircuits};
use crate::scalars::{AssumptionSet, Scalar};
use crate::sign_vector::{SignVector, SignVectorSet};

/// Search state at one recursion node.
#[derive(Clone, Debug)]
pub struct DegeneracyState {
    /// Cocircuits not yet tried at this level, in order.
    pub remaining_cocircuits: Vec<SignVector>,
    /// `K` with the current subspace equal to `ker K`.
    pub kernel_presentation: ExactMatrix,
    /// Union of the supports chosen so far.
    pub positive_indices: BTreeSet<usize>,
    /// One support per chosen cocircuit; groups may overlap.
    pub equal_groups: Vec<Vec<usize>>,
}

struct Search {
    n: usize,
    /// Nonnegative cocircuits of `S⊥`.
    blockers: SignVectorSet,
}

impl Search {
    fn run(&self, state: &DegeneracyState) -> Result<bool> {
        for (k, pi) in state.remaining_cocircuits.iter().enumerate() {
            let support = pi.support();
            let kernel = with_equal_entries(&state.kernel_presentation, &support);
            let mut positive = state.positive_indices.clone();
            positive.extend(support.iter().copied());
            let basis = kernel.kernel_matrix()?;

            let exact = self.sign_box(&positive, Interval::nonpositive());
            if exists_vector(&basis, &exact, false)?.feasible {
                let covectors = covectors_from_matrix(&kernel, Subspace::Kernel, &AssumptionSet::none())?;
                let certified = covectors
                    .iter()
                    .filter(|sigma| sigma.plus_positions().into_iter().eq(positive.iter().copied()))
                    .any(|sigma| self.blockers.iter().all(|tau| !tau.support_subset_of(sigma)));
                if certified {
                    return Ok(true);
                }
            } else if exists_vector(&basis, &self.sign_box(&positive, Interval::real()), false)?.feasible {
                let mut equal_groups = state.equal_groups.clone();
                equal_groups.push(support);
                let next = DegeneracyState {
                    remaining_cocircuits: state.remaining_cocircuits[k + 1..].to_vec(),
                    kernel_presentation: kernel,
                    positive_indices: positive,
                    equal_groups,
                };
                if self.run(&next)? {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    /// `(0, +oo)` on `positive`, `outside` elsewhere.
    fn sign_box(&self, positive: &BTreeSet<usize>, outside: Interval) -> IntervalBox {
        IntervalBox::new(
            (0..self.n)
                .map(|i| if positive.contains(&i) { Interval::positive() } else { outside.clone() })
                .collect(),
        )
    }
}

/// Appends rows `e_i - e_j` for consecutive members of `support`.
fn with_equal_entries(k: &ExactMatrix, support: &[usize]) -> ExactMatrix {
    let n = k.n_cols();
    let rows: Vec<Vec<Scalar>> = support
        .windows(2)
        .map(|w| {
            let mut row = vec![Scalar::zero(); n];
            row[w[0]] = Scalar::int(1);
            row[w[1]] = Scalar::int(-1);
            row
        })
        .collect();
    if rows.is_empty() {
        return k.clone();
    }
    k.stack(&ExactMatrix::from_rows(rows, n).expect("rows have n entries")).expect("same width")
}

/// Whether `(ker W, ker W̃)` is degenerate. Both matrices must be rational.
pub fn is_degenerate(pair: &SubspacePair) -> Result<bool> {
    if !pair.is_rational() {
        return Err(crate::Error::Parametric(
            "the degeneracy test needs a numeric W̃; substitute the parameters first".into(),
        ));
    }
    let none = AssumptionSet::none();
    let mut cocircuits: Vec<SignVector> = nonnegative_cocircuits(pair.w(), Subspace::Kernel, &none)?.into_iter().collect();
    cocircuits.sort_by_key(SignVector::support);
    let search = Search {
        n: pair.w().n_cols(),
        blockers: nonnegative_cocircuits(pair.w(), Subspace::RowSpace, &none)?,
    };
    let start = DegeneracyState {
        remaining_cocircuits: cocircuits,
        kernel_presentation: pair.wt().kernel_matrix()?,
        positive_indices: BTreeSet::new(),
        equal_groups: Vec::new(),
    };
    search.run(&start)
}

/// `(ker W, ker W̃)` is nondegenerate.
pub fn condition_nondegenerate(pair: &SubspacePair) -> Result<bool> {
    Ok(!is_degenerate(pair)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crn::conditions::{condition_faces, condition_uniqueness_sign_vectors, scalar_rows};
    use crate::scalars::{parse_scalar, rational, Rational};
    use std::collections::HashMap;

    pub(crate) fn example_w() -> ExactMatrix {
        ExactMatrix::from_ints(&[[0, 0, 1, 1, -1, 0], [1, -1, 0, 0, 0, -1], [0, 0, 1, -1, 0, 0]])
    }

    pub(crate) fn example_wt() -> ExactMatrix {
        let vars = ["a"];
        let rows = [["1", "1", "0", "0", "-1", "a"], ["1", "-1", "0", "0", "0", "0"], ["0", "0", "1", "-1", "0", "0"]];
        let rows = rows.iter().map(|r| r.iter().map(|x| parse_scalar(x, &vars).unwrap()).collect()).collect();
        ExactMatrix::from_rows(rows, 6).unwrap()
    }

    fn at(a: Rational) -> SubspacePair {
        let values: HashMap<String, Rational> = [("a".to_string(), a)].into_iter().collect();
        SubspacePair::new(example_w(), example_wt().substitute(&values)).unwrap()
    }

    #[test]
    fn nondegenerate_between_zero_and_two_except_one() {
        for (a, expected) in [
            (rational(1, 4), true),
            (rational(1, 2), true),
            (rational(3, 4), true),
            (rational(1, 1), false),
            (rational(5, 4), true),
            (rational(3, 2), true),
            (rational(7, 4), true),
            (rational(2, 1), false),
            (rational(3, 1), false),
        ] {
            assert_eq!(condition_nondegenerate(&at(a.clone())).unwrap(), expected, "a = {a}");
        }
    }

    #[test]
    fn other_conditions_hold_for_every_a() {
        for a in [rational(1, 2), rational(2, 1)] {
            assert!(condition_uniqueness_sign_vectors(&at(a.clone()), &AssumptionSet::none()).unwrap());
            assert!(condition_faces(&at(a)).unwrap());
        }
        let symbolic = SubspacePair::new(example_w(), example_wt()).unwrap();
        assert!(condition_uniqueness_sign_vectors(&symbolic, &AssumptionSet::positive(["a"])).unwrap());
    }

    #[test]
    fn without_nonnegative_cocircuits() {
        let w = ExactMatrix::from_ints(&[[1, 1]]);
        for wt in [[1, 1], [1, -1], [0, 1]] {
            let pair = SubspacePair::new(w.clone(), ExactMatrix::from_rows(scalar_rows(&[&wt]), 2).unwrap()).unwrap();
            assert!(condition_nondegenerate(&pair).unwrap());
        }
    }

    #[test]
    fn parametric_input_is_rejected() {
        let symbolic = SubspacePair::new(example_w(), example_wt()).unwrap();
        assert!(condition_nondegenerate(&symbolic).is_err());
    }

    #[test]
    fn invariant_under_row_scaling_and_permutation() {
        for a in [rational(1, 2), rational(2, 1)] {
            let base = condition_nondegenerate(&at(a.clone())).unwrap();
            let values: HashMap<String, Rational> = [("a".to_string(), a)].into_iter().collect();
            let wt = example_wt().substitute(&values);
            let w = example_w();
            let scaled_w = ExactMatrix::from_rows(
                vec![
                    w.row(2).to_vec(),
                    w.row(0).iter().map(|x| x.scale(&rational(-3, 2))).collect(),
                    w.row(1).to_vec(),
                ],
                6,
            )
            .unwrap();
            let scaled_wt = ExactMatrix::from_rows(
                vec![wt.row(1).iter().map(|x| x.scale(&rational(-1, 1))).collect(), wt.row(0).to_vec(), wt.row(2).iter().map(|x| x.scale(&rational(5, 1))).collect()],
                6,
            )
            .unwrap();
            assert_eq!(condition_nondegenerate(&SubspacePair::new(scaled_w, scaled_wt).unwrap()).unwrap(), base);
        }
    }
}
