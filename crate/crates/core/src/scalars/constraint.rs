use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use super::{polynomial_sign, AssumptionSet, Polynomial, Rational, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `p > 0`
    Positive,
    /// `p >= 0`
    NonNegative,
}

impl Relation {
    fn holds(self, value: &Rational) -> bool {
        match self {
            Relation::Positive => value.is_positive(),
            Relation::NonNegative => !value.is_negative(),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Positive => ">",
            Relation::NonNegative => ">=",
        }
    }
}

/// A polynomial sign constraint `poly > 0` or `poly >= 0`, optionally
/// guarded: it only applies where `guard != 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Constraint {
    poly: Polynomial,
    relation: Relation,
    guard: Option<Polynomial>,
}

/// Outcome of normalizing a constraint.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Normalized {
    Always,
    Never,
    Constraint(Constraint),
}

/// Divides `poly` by its positive rational content; constant polynomials
/// resolve to `Always` or `Never`.
pub fn normalize_constraint(poly: &Polynomial, relation: Relation) -> Normalized {
    if let Some(c) = poly.as_constant() {
        return if relation.holds(&c) { Normalized::Always } else { Normalized::Never };
    }
    let content = poly.content();
    Normalized::Constraint(Constraint {
        poly: poly.scale(&content.recip()),
        relation,
        guard: None,
    })
}

impl Constraint {
    pub fn poly(&self) -> &Polynomial {
        &self.poly
    }

    pub fn relation(&self) -> Relation {
        self.relation
    }

    pub fn guard(&self) -> Option<&Polynomial> {
        self.guard.as_ref()
    }

    pub fn with_guard(mut self, guard: Polynomial) -> Self {
        if !guard.is_constant() {
            self.guard = Some(guard);
        }
        self
    }

    /// Resolves the constraint when its sign (or its guard) is decided by the
    /// positivity assumptions.
    pub fn resolve(self, assumptions: &AssumptionSet) -> Normalized {
        if let Some(g) = &self.guard {
            if polynomial_sign(g, assumptions) == Some(Sign::Zero) {
                return Normalized::Always;
            }
        }
        match polynomial_sign(&self.poly, assumptions) {
            Some(Sign::Positive) => Normalized::Always,
            Some(Sign::Zero) => {
                if self.relation == Relation::NonNegative {
                    Normalized::Always
                } else {
                    self.never_unless_guarded()
                }
            }
            Some(Sign::Negative) => self.never_unless_guarded(),
            None => Normalized::Constraint(self),
        }
    }

    fn never_unless_guarded(self) -> Normalized {
        if self.guard.is_some() {
            Normalized::Constraint(self)
        } else {
            Normalized::Never
        }
    }

    /// Evaluates the constraint at a point assigning all its variables.
    pub fn holds_at(&self, point: &HashMap<String, Rational>) -> crate::Result<bool> {
        if let Some(g) = &self.guard {
            if g.evaluate(point)?.is_zero() {
                return Ok(true);
            }
        }
        Ok(self.relation.holds(&self.poly.evaluate(point)?))
    }
}

// Constraints sort by descending polynomial so that leading terms print first.
impl Ord for Constraint {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .poly
            .cmp(&self.poly)
            .then_with(|| self.relation.cmp(&other.relation))
            .then_with(|| self.guard.cmp(&other.guard))
    }
}

impl PartialOrd for Constraint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} 0", self.poly, self.relation.symbol())?;
        if let Some(g) = &self.guard {
            write!(f, " where {g} != 0")?;
        }
        Ok(())
    }
}

/// A disjunction of conjunctions of constraints. An empty branch is
/// unconditionally true; no branches at all means unsatisfiable.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConditionDisjunction {
    branches: Vec<BTreeSet<Constraint>>,
}

impl ConditionDisjunction {
    pub fn unsatisfiable() -> Self {
        Self::default()
    }

    /// Adds a branch built from normalized constraints; a `Never` kills it.
    pub fn push_branch<I>(&mut self, constraints: I)
    where
        I: IntoIterator<Item = Normalized>,
    {
        let mut branch = BTreeSet::new();
        for c in constraints {
            match c {
                Normalized::Always => {}
                Normalized::Never => return,
                Normalized::Constraint(c) => {
                    branch.insert(c);
                }
            }
        }
        if !self.branches.contains(&branch) {
            self.branches.push(branch);
        }
    }

    pub fn branches(&self) -> &[BTreeSet<Constraint>] {
        &self.branches
    }

    pub fn is_unsatisfiable(&self) -> bool {
        self.branches.is_empty()
    }

    /// True when some branch carries no constraints.
    pub fn is_unconditional(&self) -> bool {
        self.branches.iter().any(BTreeSet::is_empty)
    }

    pub fn holds_at(&self, point: &HashMap<String, Rational>) -> crate::Result<bool> {
        for branch in &self.branches {
            let mut ok = true;
            for c in branch {
                if !c.holds_at(point)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl fmt::Display for ConditionDisjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, branch) in self.branches.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            let parts: Vec<String> = branch.iter().map(ToString::to_string).collect();
            write!(f, "{{{}}}", parts.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{parse_scalar, rational};

    fn poly(text: &str) -> Polynomial {
        parse_scalar(text, &["a", "b", "c"]).unwrap().to_polynomial()
    }

    #[test]
    fn normalization_examples() {
        match normalize_constraint(&poly("2*a - 2*c"), Relation::Positive) {
            Normalized::Constraint(c) => {
                assert_eq!(c.poly(), &poly("a - c"));
                assert_eq!(c.to_string(), "a - c > 0");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(normalize_constraint(&poly("3"), Relation::Positive), Normalized::Always);
        assert_eq!(normalize_constraint(&poly("0"), Relation::Positive), Normalized::Never);
        assert_eq!(normalize_constraint(&poly("0"), Relation::NonNegative), Normalized::Always);
        match normalize_constraint(&poly("-b/3"), Relation::NonNegative) {
            Normalized::Constraint(c) => assert_eq!(c.to_string(), "-b >= 0"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn disjunction_prints_descending() {
        let mut d = ConditionDisjunction::unsatisfiable();
        d.push_branch(
            ["b", "a", "a - c", "b", "1"]
                .iter()
                .map(|t| normalize_constraint(&poly(t), Relation::Positive)),
        );
        assert_eq!(d.to_string(), "[{a - c > 0, a > 0, b > 0}]");
        d.push_branch([Normalized::Never]);
        assert_eq!(d.branches().len(), 1);
        assert!(!d.is_unconditional());
        d.push_branch([Normalized::Always]);
        assert!(d.is_unconditional());
    }

    #[test]
    fn resolve_under_assumptions() {
        let assume = AssumptionSet::positive(["a", "b"]);
        let c = match normalize_constraint(&poly("a*b + a"), Relation::Positive) {
            Normalized::Constraint(c) => c,
            _ => unreachable!(),
        };
        assert_eq!(c.resolve(&assume), Normalized::Always);
        let c = match normalize_constraint(&poly("-b"), Relation::NonNegative) {
            Normalized::Constraint(c) => c,
            _ => unreachable!(),
        };
        assert_eq!(c.resolve(&assume), Normalized::Never);
    }

    #[test]
    fn guarded_evaluation() {
        let c = match normalize_constraint(&poly("b"), Relation::Positive) {
            Normalized::Constraint(c) => c.with_guard(poly("a")),
            _ => unreachable!(),
        };
        assert_eq!(c.to_string(), "b > 0 where a != 0");
        let at = |a: i64, b: i64| {
            [("a".to_string(), rational(a, 1)), ("b".to_string(), rational(b, 1))]
                .into_iter()
                .collect::<HashMap<_, _>>()
        };
        assert!(c.holds_at(&at(0, -1)).unwrap());
        assert!(!c.holds_at(&at(1, -1)).unwrap());
        assert!(c.holds_at(&at(1, 1)).unwrap());
    }
}
