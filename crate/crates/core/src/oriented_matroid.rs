//! Cocircuits, covectors and chirotopes of the oriented matroid of a subspace.

use crate::elementary::{elementary_vectors, Subspace};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalars::{scalar_sign, AssumptionSet, Sign};
use crate::sign_vector::{sign_vector_of, SignVector, SignVectorSet};

/// `{±sign(v)}` over the elementary vectors of the chosen subspace.
pub fn cocircuits_from_matrix(
    m: &ExactMatrix,
    subspace: Subspace,
    assumptions: &AssumptionSet,
) -> Result<SignVectorSet> {
    let list = elementary_vectors(m, subspace, true)?;
    let mut out = SignVectorSet::new();
    for (v, set) in list.iter() {
        let sigma = sign_vector_of(v, assumptions).map_err(|e| match e {
            Error::UndecidableSign { what, value } => Error::UndecidableSign {
                what: format!("{what} of the elementary vector from columns {set}"),
                value,
            },
            other => other,
        })?;
        out.insert(sigma.negate());
        out.insert(sigma);
    }
    Ok(out)
}

/// Closure of `cocircuits ∪ {0}` under composition.
///
/// Every covector is a composition `c1 ∘ c2 ∘ … ∘ ck` of cocircuits, so it
/// suffices to compose known covectors with cocircuits on the right.
pub fn covectors_from_cocircuits(cocircuits: &SignVectorSet, len: usize) -> SignVectorSet {
    let mut out = SignVectorSet::new();
    out.insert(SignVector::zero(len));
    let mut frontier: Vec<SignVector> = cocircuits.iter().cloned().collect();
    out.extend(frontier.iter().cloned());
    while let Some(x) = frontier.pop() {
        for c in cocircuits {
            let y = x.compose_unchecked(c);
            if y != x && !out.contains(&y) {
                out.insert(y.clone());
                frontier.push(y);
            }
        }
    }
    out
}

pub fn covectors_from_matrix(
    m: &ExactMatrix,
    subspace: Subspace,
    assumptions: &AssumptionSet,
) -> Result<SignVectorSet> {
    let cocircuits = cocircuits_from_matrix(m, subspace, assumptions)?;
    Ok(covectors_from_cocircuits(&cocircuits, m.n_cols()))
}

/// Signs of the maximal minors, in lexicographic order of column sets.
pub fn chirotope(m: &ExactMatrix, assumptions: &AssumptionSet) -> Result<Vec<Sign>> {
    let minors = m.maximal_minors()?;
    minors
        .iter()
        .map(|(set, value)| {
            scalar_sign(value, assumptions).ok_or_else(|| Error::UndecidableSign {
                what: format!("the minor on columns {set}"),
                value: value.to_string(),
            })
        })
        .collect()
}

pub fn nonnegative_cocircuits(
    m: &ExactMatrix,
    subspace: Subspace,
    assumptions: &AssumptionSet,
) -> Result<SignVectorSet> {
    Ok(cocircuits_from_matrix(m, subspace, assumptions)?
        .into_iter()
        .filter(SignVector::is_nonnegative)
        .collect())
}

pub fn format_chirotope(signs: &[Sign]) -> String {
    let parts: Vec<String> = signs.iter().map(|s| s.as_char().to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::parse_scalar;

    fn set(items: &[&str]) -> SignVectorSet {
        items.iter().map(|s| s.parse().unwrap()).collect()
    }

    fn sample_m() -> ExactMatrix {
        ExactMatrix::from_ints(&[[1, 1, 2, 0], [0, 0, 1, 2]])
    }

    #[test]
    fn cocircuit_examples() {
        let none = AssumptionSet::none();
        assert_eq!(
            cocircuits_from_matrix(&sample_m(), Subspace::Kernel, &none).unwrap(),
            set(&["-+00", "-0+-", "+0-+", "+-00", "0-+-", "0+-+"])
        );
        let m = ExactMatrix::from_ints(&[[1, 1]]);
        assert_eq!(cocircuits_from_matrix(&m, Subspace::Kernel, &none).unwrap(), set(&["+-", "-+"]));
        assert_eq!(cocircuits_from_matrix(&m, Subspace::RowSpace, &none).unwrap(), set(&["++", "--"]));
    }

    #[test]
    fn covector_examples() {
        let none = AssumptionSet::none();
        let cov = covectors_from_matrix(&sample_m(), Subspace::Kernel, &none).unwrap();
        assert_eq!(cov.len(), 13);
        for s in ["0000", "-+00", "--+-", "+-+-", "++-+", "-++-"] {
            assert!(cov.contains(&s.parse().unwrap()), "{s}");
        }
        let m = ExactMatrix::from_ints(&[[1, 1]]);
        assert_eq!(covectors_from_matrix(&m, Subspace::RowSpace, &none).unwrap(), set(&["00", "++", "--"]));
        assert_eq!(
            covectors_from_matrix(&ExactMatrix::identity(3), Subspace::Kernel, &none).unwrap(),
            set(&["000"])
        );
    }

    #[test]
    fn chirotope_examples() {
        let none = AssumptionSet::none();
        use Sign::*;
        assert_eq!(
            chirotope(&sample_m(), &none).unwrap(),
            vec![Zero, Positive, Positive, Positive, Positive, Positive]
        );
        assert_eq!(chirotope(&ExactMatrix::identity(2), &none).unwrap(), vec![Positive]);
        assert_eq!(
            chirotope(&ExactMatrix::from_ints(&[[1, -1]]), &none).unwrap(),
            vec![Positive, Negative]
        );
        assert_eq!(format_chirotope(&[Zero, Positive, Negative]), "(0,+,-)");
    }

    #[test]
    fn nonnegative_examples() {
        let none = AssumptionSet::none();
        assert!(nonnegative_cocircuits(&sample_m(), Subspace::Kernel, &none).unwrap().is_empty());
        assert_eq!(
            nonnegative_cocircuits(&ExactMatrix::from_ints(&[[1, -1]]), Subspace::Kernel, &none).unwrap(),
            set(&["++"])
        );
        assert!(nonnegative_cocircuits(&ExactMatrix::from_ints(&[[1, 1]]), Subspace::Kernel, &none)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn parametric_signs_need_assumptions() {
        let vars = ["a", "b"];
        let row = |t: &[&str]| t.iter().map(|x| parse_scalar(x, &vars).unwrap()).collect::<Vec<_>>();
        let m = ExactMatrix::from_rows(vec![row(&["1", "a", "b"])], 3).unwrap();
        let err = cocircuits_from_matrix(&m, Subspace::Kernel, &AssumptionSet::none()).unwrap_err();
        assert!(matches!(err, Error::UndecidableSign { .. }));
        let cocircuits = cocircuits_from_matrix(&m, Subspace::Kernel, &AssumptionSet::positive(vars)).unwrap();
        assert_eq!(cocircuits, set(&["-+0", "+-0", "-0+", "+0-", "0-+", "0+-"]));
        assert!(chirotope(&m, &AssumptionSet::none()).is_err());
        assert_eq!(chirotope(&m, &AssumptionSet::positive(vars)).unwrap(), vec![Sign::Positive; 3]);
    }
}
