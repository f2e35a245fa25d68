//! Fourier–Motzkin elimination over the coefficients `λ` of `x = Mᵀλ`,
//! with strict and non-strict inequalities tracked separately.
//!
//! This is an independent check of the elementary-vector decision and the
//! source of witnesses on the feasible side.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

use super::{FeasibilityResult, IntervalBox};
use crate::error::{Error, Result};
use crate::matrix::ExactMatrix;
use crate::scalars::{rational, Rational, Scalar};

/// `coeffs · λ > rhs` when `strict`, else `coeffs · λ >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Inequality {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
}

impl Inequality {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn trivially_holds(&self) -> bool {
        if self.strict {
            self.rhs.is_negative()
        } else {
            !self.rhs.is_positive()
        }
    }

    /// Scales so the first nonzero coefficient has absolute value one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) {
            let inv = lead.recip();
            for c in self.coeffs.iter_mut() {
                *c *= &inv;
            }
            self.rhs *= inv;
        }
        self
    }
}

fn constraints_from_box(m: &[Vec<Rational>], n_vars: usize, bounds: &IntervalBox) -> Vec<Inequality> {
    let mut out = Vec::new();
    for (j, interval) in bounds.intervals().iter().enumerate() {
        let column: Vec<Rational> = (0..n_vars).map(|i| m[i][j].clone()).collect();
        if let Some(l) = interval.lower() {
            out.push(Inequality { coeffs: column.clone(), rhs: l.clone(), strict: !interval.lower_closed() });
        }
        if let Some(u) = interval.upper() {
            out.push(Inequality {
                coeffs: column.iter().map(|c| -c).collect(),
                rhs: -u.clone(),
                strict: !interval.upper_closed(),
            });
        }
    }
    out
}

/// Drops trivial constraints, returning `None` if one of them fails.
fn prune(system: Vec<Inequality>) -> Option<Vec<Inequality>> {
    let mut kept = BTreeSet::new();
    for ineq in system {
        if ineq.is_trivial() {
            if !ineq.trivially_holds() {
                return None;
            }
        } else {
            kept.insert(ineq.normalized());
        }
    }
    Some(kept.into_iter().collect())
}

fn eliminate(system: &[Inequality], var: usize) -> Vec<Inequality> {
    let mut out = Vec::new();
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for ineq in system {
        let a = &ineq.coeffs[var];
        if a.is_positive() {
            pos.push(ineq);
        } else if a.is_negative() {
            neg.push(ineq);
        } else {
            out.push(ineq.clone());
        }
    }
    for p in &pos {
        let sp = p.coeffs[var].recip();
        for q in &neg {
            let sq = q.coeffs[var].abs().recip();
            let coeffs = p
                .coeffs
                .iter()
                .zip(&q.coeffs)
                .map(|(x, y)| x * &sp + y * &sq)
                .collect();
            out.push(Inequality { coeffs, rhs: &p.rhs * &sp + &q.rhs * &sq, strict: p.strict || q.strict });
        }
    }
    out
}

/// A value satisfying `value > lo` / `>= lo` and `< hi` / `<= hi`.
fn pick(lower: Option<(Rational, bool)>, upper: Option<(Rational, bool)>) -> Rational {
    match (lower, upper) {
        (None, None) => Rational::zero(),
        (Some((lo, false)), _) => lo,
        (None, Some((hi, false))) | (Some((_, true)), Some((hi, false))) => hi,
        (Some((lo, true)), None) => lo + Rational::one(),
        (None, Some((hi, true))) => hi - Rational::one(),
        (Some((lo, true)), Some((hi, true))) => (lo + hi) * rational(1, 2),
    }
}

/// Tightest bound: larger value wins for lower bounds, a strict bound wins ties.
fn tighten(current: Option<(Rational, bool)>, value: Rational, strict: bool, lower: bool) -> Option<(Rational, bool)> {
    match current {
        None => Some((value, strict)),
        Some((v, s)) => {
            let better = if lower { value > v } else { value < v };
            if better {
                Some((value, strict))
            } else if value == v {
                Some((v, s || strict))
            } else {
                Some((v, s))
            }
        }
    }
}

/// Decides whether the row space of `m` meets `bounds`, by eliminating the
/// coefficients of `x = Mᵀλ`. Produces a witness `x` when feasible.
pub fn feasibility_oracle(m: &ExactMatrix, bounds: &IntervalBox) -> Result<FeasibilityResult> {
    if bounds.len() != m.n_cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} intervals for {} columns",
            bounds.len(),
            m.n_cols()
        )));
    }
    let rows = m.to_rational_rows()?;
    let d = m.n_rows();
    let Some(initial) = prune(constraints_from_box(&rows, d, bounds)) else {
        return Ok(FeasibilityResult::infeasible(None));
    };
    // stages[k] involves variables 0..k only
    let mut stages = vec![Vec::new(); d + 1];
    stages[d] = initial;
    for var in (0..d).rev() {
        match prune(eliminate(&stages[var + 1], var)) {
            Some(next) => stages[var] = next,
            None => return Ok(FeasibilityResult::infeasible(None)),
        }
    }
    let mut lambda: Vec<Rational> = Vec::with_capacity(d);
    for var in 0..d {
        let (mut lower, mut upper) = (None, None);
        for ineq in &stages[var + 1] {
            let a = &ineq.coeffs[var];
            if a.is_zero() {
                continue;
            }
            let rest: Rational = lambda.iter().zip(&ineq.coeffs).map(|(l, c)| l * c).sum();
            let bound = (&ineq.rhs - rest) / a;
            if a.is_positive() {
                lower = tighten(lower, bound, ineq.strict, true);
            } else {
                upper = tighten(upper, bound, ineq.strict, false);
            }
        }
        lambda.push(pick(lower, upper));
    }
    let witness: Vec<Rational> = (0..m.n_cols())
        .map(|j| lambda.iter().zip(&rows).map(|(l, r)| l * &r[j]).sum())
        .collect();
    debug_assert!(bounds.contains(&witness));
    Ok(FeasibilityResult::feasible(Some(witness)))
}

/// Whether `x` lies in the row space of `m`, by exact linear solve.
pub fn in_row_space(m: &ExactMatrix, x: &[Rational]) -> Result<bool> {
    let row: Vec<Scalar> = x.iter().cloned().map(Scalar::Rational).collect();
    let extended = m.stack(&ExactMatrix::from_rows(vec![row], m.n_cols())?)?;
    Ok(extended.rank()? == m.rank()?)
}
