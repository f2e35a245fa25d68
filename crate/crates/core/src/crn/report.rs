//! Structured verdicts for the existence and uniqueness theorems.

use std::fmt;

use super::conditions::{
    condition_closure_minors, condition_closure_sign_vectors, condition_faces, condition_uniqueness_minors,
    condition_uniqueness_sign_vectors, minor_condition, SubspacePair,
};
use super::degeneracy::condition_nondegenerate;
use super::network::{
    deficiency, is_weakly_reversible, kinetic_order_generators, stoichiometric_generators, Deficiencies, Network,
};
use crate::error::Result;
use crate::matrix::ExactMatrix;
use crate::scalars::{AssumptionSet, ConditionDisjunction, Relation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    /// Holds exactly when one of the branches holds.
    Conditional(ConditionDisjunction),
    Undetermined(String),
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }

    pub fn from_disjunction(d: ConditionDisjunction) -> Self {
        if d.is_unconditional() {
            Verdict::Holds
        } else if d.is_unsatisfiable() {
            Verdict::Fails
        } else {
            Verdict::Conditional(d)
        }
    }

    /// `Some(true)` or `Some(false)` when the verdict does not depend on parameters.
    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails => Some(false),
            _ => None,
        }
    }

    /// Conjunction; conditional verdicts combine branch by branch.
    pub fn and(&self, other: &Verdict) -> Verdict {
        use Verdict::*;
        match (self, other) {
            (Fails, _) | (_, Fails) => Fails,
            (Undetermined(a), Undetermined(b)) if a == b => Undetermined(a.clone()),
            (Undetermined(a), Undetermined(b)) => Undetermined(format!("{a}; {b}")),
            (Undetermined(a), _) | (_, Undetermined(a)) => Undetermined(a.clone()),
            (Holds, v) | (v, Holds) => v.clone(),
            (Conditional(a), Conditional(b)) => {
                let mut out = ConditionDisjunction::unsatisfiable();
                for x in a.branches() {
                    for y in b.branches() {
                        out.push_branch(x.iter().chain(y).cloned().map(crate::Normalized::Constraint));
                    }
                }
                Verdict::from_disjunction(out)
            }
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Holds => write!(f, "true"),
            Verdict::Fails => write!(f, "false"),
            Verdict::Conditional(d) => write!(f, "iff {d}"),
            Verdict::Undetermined(why) => write!(f, "undetermined ({why})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Finding {
    pub name: &'static str,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    /// `"robust existence"` or `"unique existence"`.
    pub claim: &'static str,
    pub deficiencies: Option<Deficiencies>,
    pub weakly_reversible: Option<bool>,
    pub findings: Vec<Finding>,
    pub conclusion: Verdict,
}

impl Report {
    fn assemble(
        claim: &'static str,
        deficiencies: Option<Deficiencies>,
        weakly_reversible: Option<bool>,
        findings: Vec<Finding>,
    ) -> Self {
        let mut conclusion = Verdict::Holds;
        if let Some(d) = deficiencies {
            conclusion = conclusion.and(&Verdict::from_bool(d.stoichiometric == 0 && d.kinetic_order == 0));
        }
        if let Some(wr) = weakly_reversible {
            conclusion = conclusion.and(&Verdict::from_bool(wr));
        }
        for finding in &findings {
            conclusion = conclusion.and(&finding.verdict);
        }
        Self { claim, deficiencies, weakly_reversible, findings, conclusion }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.deficiencies {
            writeln!(f, "deficiency: {}", d.stoichiometric)?;
            writeln!(f, "kinetic-order deficiency: {}", d.kinetic_order)?;
        }
        if let Some(wr) = self.weakly_reversible {
            writeln!(f, "weakly reversible: {wr}")?;
        }
        for finding in &self.findings {
            writeln!(f, "{}: {}", finding.name, finding.verdict)?;
        }
        write!(f, "{}: {}", self.claim, self.conclusion)
    }
}

const ROBUST: &str = "robust existence";
const UNIQUE: &str = "unique existence";

fn undetermined(why: &str) -> Verdict {
    Verdict::Undetermined(why.to_string())
}

fn closure_verdict(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<Verdict> {
    if pair.is_rational() {
        Ok(Verdict::from_bool(condition_closure_sign_vectors(pair)?))
    } else {
        Ok(Verdict::from_disjunction(condition_closure_minors(pair, assumptions)?))
    }
}

fn unique_findings(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<Vec<Finding>> {
    let numeric = "needs numeric kinetic orders";
    let (uniqueness, faces, nondegenerate) = if pair.is_rational() {
        (
            Verdict::from_bool(condition_uniqueness_sign_vectors(pair, assumptions)?),
            Verdict::from_bool(condition_faces(pair)?),
            Verdict::from_bool(condition_nondegenerate(pair)?),
        )
    } else {
        (
            Verdict::from_disjunction(condition_uniqueness_minors(pair, assumptions)?),
            undetermined(numeric),
            undetermined(numeric),
        )
    };
    Ok(vec![
        Finding { name: "uniqueness", verdict: uniqueness },
        Finding { name: "faces", verdict: faces },
        Finding { name: "nondegenerate", verdict: nondegenerate },
    ])
}

/// The closure condition on a pair, without network data.
pub fn check_robust_existence_pair(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<Report> {
    let closure = closure_verdict(pair, assumptions)?;
    Ok(Report::assemble(ROBUST, None, None, vec![Finding { name: "closure", verdict: closure }]))
}

/// The three sign-vector conditions on a pair, without network data.
pub fn check_unique_existence_pair(pair: &SubspacePair, assumptions: &AssumptionSet) -> Result<Report> {
    Ok(Report::assemble(UNIQUE, None, None, unique_findings(pair, assumptions)?))
}

/// How a network's subspaces enter the conditions.
enum Presentation {
    /// `S = ker W`, `S̃ = ker W̃`.
    Kernel(SubspacePair),
    /// Bases of `S` and `S̃` as rows, from the edges of a spanning forest.
    Generators(ExactMatrix, ExactMatrix),
    Unavailable(String),
}

fn presentation(net: &Network, d: &Deficiencies) -> Result<Presentation> {
    if d.stoichiometric != 0 || d.kinetic_order != 0 {
        return Ok(Presentation::Unavailable("nonzero deficiency".into()));
    }
    let g = stoichiometric_generators(net).transpose();
    let gt = kinetic_order_generators(net).transpose();
    if gt.is_rational() {
        return Ok(Presentation::Kernel(SubspacePair::new(g.kernel_matrix()?, gt.kernel_matrix()?)?));
    }
    // with both deficiencies zero, forest edges give bases of S and S̃
    let forest = net.spanning_forest();
    Ok(Presentation::Generators(g.submatrix_by_rows(&forest), gt.submatrix_by_rows(&forest)))
}

/// Robust existence of a unique positive complex-balanced equilibrium:
/// zero deficiencies, weak reversibility and the closure condition.
///
/// With parametric kinetic orders, the closure condition is evaluated on
/// bases of `S` and `S̃`. Their maximal minors are those of `W`, `W̃` on
/// complementary column sets up to one common factor per matrix, so the
/// branches are the same up to orientation.
pub fn check_robust_existence(net: &Network, assumptions: &AssumptionSet) -> Result<Report> {
    let d = deficiency(net, assumptions)?;
    let closure = match presentation(net, &d)? {
        Presentation::Kernel(pair) => closure_verdict(&pair, assumptions)?,
        Presentation::Generators(g, gt) => {
            Verdict::from_disjunction(minor_condition(&g, &gt, Relation::Positive, assumptions)?)
        }
        Presentation::Unavailable(why) => Verdict::Undetermined(why),
    };
    let findings = vec![Finding { name: "closure", verdict: closure }];
    Ok(Report::assemble(ROBUST, Some(d), Some(is_weakly_reversible(net)), findings))
}

/// Unique existence in every stoichiometric class for all rate constants.
pub fn check_unique_existence(net: &Network, assumptions: &AssumptionSet) -> Result<Report> {
    let d = deficiency(net, assumptions)?;
    let findings = match presentation(net, &d)? {
        Presentation::Kernel(pair) => unique_findings(&pair, assumptions)?,
        Presentation::Generators(g, gt) => vec![
            Finding {
                name: "uniqueness",
                verdict: Verdict::from_disjunction(minor_condition(&g, &gt, Relation::NonNegative, assumptions)?),
            },
            Finding { name: "faces", verdict: undetermined("needs numeric kinetic orders") },
            Finding { name: "nondegenerate", verdict: undetermined("needs numeric kinetic orders") },
        ],
        Presentation::Unavailable(why) => ["uniqueness", "faces", "nondegenerate"]
            .into_iter()
            .map(|name| Finding { name, verdict: Verdict::Undetermined(why.clone()) })
            .collect(),
    };
    Ok(Report::assemble(UNIQUE, Some(d), Some(is_weakly_reversible(net)), findings))
}
