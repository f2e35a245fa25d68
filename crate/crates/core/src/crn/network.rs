use petgraph::algo::{connected_components, kosaraju_scc};
use petgraph::graph::DiGraph;

use crate::error::{Error, Result};
use crate::feasibility::ConcentrationVector;
use crate::matrix::{ExactMatrix, IndexSet};
use crate::scalars::{scalar_sign, AssumptionSet, Rational, Scalar, Sign};

/// A vertex of the reaction graph with its stoichiometric complex `y` and,
/// optionally, its kinetic-order complex `ỹ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub id: String,
    pub y: Vec<Rational>,
    pub ytilde: Option<Vec<Scalar>>,
}

/// A generalized mass-action network: a simple digraph on complexes.
///
/// Kinetic-order complexes are required on source vertices. Elsewhere they
/// default to the stoichiometric complex; they never enter a reaction rate.
#[derive(Clone, Debug)]
pub struct Network {
    species: Vec<String>,
    vertex_ids: Vec<String>,
    edges: Vec<(usize, usize)>,
    y: ExactMatrix,
    ytilde: ExactMatrix,
}

impl Network {
    /// Edges are pairs of zero-based vertex positions.
    pub fn new(species: Vec<String>, vertices: Vec<Vertex>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = species.len();
        let nv = vertices.len();
        for (k, &(i, j)) in edges.iter().enumerate() {
            if i >= nv || j >= nv {
                return Err(Error::InvalidNetwork(format!("edge {} references a missing vertex", k + 1)));
            }
            if i == j {
                return Err(Error::InvalidNetwork(format!("self-loop at vertex {}", vertices[i].id)));
            }
            if edges[..k].contains(&(i, j)) {
                return Err(Error::InvalidNetwork(format!(
                    "duplicate edge {} -> {}",
                    vertices[i].id, vertices[j].id
                )));
            }
        }
        let mut sources = vec![false; nv];
        for &(i, _) in &edges {
            sources[i] = true;
        }
        let mut y = ExactMatrix::zeros(n, nv);
        let mut ytilde = ExactMatrix::zeros(n, nv);
        for (col, v) in vertices.iter().enumerate() {
            if vertices[..col].iter().any(|w| w.id == v.id) {
                return Err(Error::InvalidNetwork(format!("duplicate vertex id {}", v.id)));
            }
            if v.y.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "complex of vertex {} has {} entries for {n} species",
                    v.id,
                    v.y.len()
                )));
            }
            let kinetic: Vec<Scalar> = match &v.ytilde {
                Some(t) if t.len() != n => {
                    return Err(Error::DimensionMismatch(format!(
                        "kinetic-order complex of vertex {} has {} entries for {n} species",
                        v.id,
                        t.len()
                    )))
                }
                Some(t) => t.clone(),
                None if sources[col] => {
                    return Err(Error::InvalidNetwork(format!(
                        "source vertex {} has no kinetic-order complex",
                        v.id
                    )))
                }
                None => v.y.iter().cloned().map(Scalar::Rational).collect(),
            };
            for s in 0..n {
                y.set(s, col, Scalar::Rational(v.y[s].clone()));
                ytilde.set(s, col, kinetic[s].clone());
            }
        }
        let vertex_ids = vertices.into_iter().map(|v| v.id).collect();
        Ok(Self { species, vertex_ids, edges, y, ytilde })
    }

    pub fn species(&self) -> &[String] {
        &self.species
    }

    pub fn vertex_ids(&self) -> &[String] {
        &self.vertex_ids
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn n_vertices(&self) -> usize {
        self.vertex_ids.len()
    }

    /// Stoichiometric complexes as columns.
    pub fn y(&self) -> &ExactMatrix {
        &self.y
    }

    /// Kinetic-order complexes as columns.
    pub fn ytilde(&self) -> &ExactMatrix {
        &self.ytilde
    }

    /// Replaces parameters in the kinetic orders by exact values.
    pub fn substitute(&self, values: &std::collections::HashMap<String, Rational>) -> Network {
        Network { ytilde: self.ytilde.substitute(values), ..self.clone() }
    }

    pub fn is_source(&self, vertex: usize) -> bool {
        self.edges.iter().any(|&(i, _)| i == vertex)
    }

    fn graph(&self) -> DiGraph<(), ()> {
        let mut g = DiGraph::new();
        let nodes: Vec<_> = (0..self.n_vertices()).map(|_| g.add_node(())).collect();
        for &(i, j) in &self.edges {
            g.add_edge(nodes[i], nodes[j], ());
        }
        g
    }

    /// Number of weakly connected components, isolated vertices included.
    pub fn linkage_classes(&self) -> usize {
        connected_components(&self.graph())
    }

    /// Edges of a spanning forest of the underlying undirected graph.
    pub(crate) fn spanning_forest(&self) -> Vec<usize> {
        let mut parent: Vec<usize> = (0..self.n_vertices()).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut forest = Vec::new();
        for (k, &(i, j)) in self.edges.iter().enumerate() {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a] = b;
                forest.push(k);
            }
        }
        forest
    }
}

/// Positive rate constants, one per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct RateVector(Vec<Scalar>);

impl RateVector {
    pub fn new(k: Vec<Scalar>, assumptions: &AssumptionSet) -> Result<Self> {
        for (e, value) in k.iter().enumerate() {
            if scalar_sign(value, assumptions) != Some(Sign::Positive) {
                return Err(Error::Nonpositive(format!("rate constant {} is {value}", e + 1)));
            }
        }
        Ok(Self(k))
    }

    pub fn from_ints(k: &[i64]) -> Result<Self> {
        Self::new(k.iter().map(|&x| Scalar::int(x)).collect(), &AssumptionSet::none())
    }

    pub fn values(&self) -> &[Scalar] {
        &self.0
    }
}

/// Column `e_{i'} - e_i` for each edge `i -> i'`.
pub fn incidence_matrix(net: &Network) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(net.n_vertices(), net.edges.len());
    for (e, &(i, j)) in net.edges.iter().enumerate() {
        m.set(i, e, Scalar::int(-1));
        m.set(j, e, Scalar::int(1));
    }
    m
}

/// Column `e_i` for each edge `i -> i'`.
pub fn source_matrix(net: &Network) -> ExactMatrix {
    let mut m = ExactMatrix::zeros(net.n_vertices(), net.edges.len());
    for (e, &(i, _)) in net.edges.iter().enumerate() {
        m.set(i, e, Scalar::int(1));
    }
    m
}

/// `A_k = I_E diag(k) I_{E,s}ᵀ`.
pub fn laplacian(net: &Network, k: &RateVector) -> Result<ExactMatrix> {
    if k.0.len() != net.edges.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} rate constants for {} edges",
            k.0.len(),
            net.edges.len()
        )));
    }
    let mut a = ExactMatrix::zeros(net.n_vertices(), net.n_vertices());
    for (&(i, j), rate) in net.edges.iter().zip(&k.0) {
        a.set(i, i, a.get(i, i) - rate);
        a.set(j, i, a.get(j, i) + rate);
    }
    Ok(a)
}

/// `Y A_k x^Ỹ`, the right-hand side of the generalized mass-action ODE.
pub fn ode_rhs(net: &Network, k: &RateVector, x: &ConcentrationVector) -> Result<Vec<Scalar>> {
    let n = net.species.len();
    if x.entries().len() != n {
        return Err(Error::DimensionMismatch(format!(
            "{} concentrations for {n} species",
            x.entries().len()
        )));
    }
    let a = laplacian(net, k)?;
    let monomials = (0..net.n_vertices())
        .map(|v| {
            if !net.is_source(v) {
                return Ok(Scalar::zero());
            }
            let mut value = Rational::from_integer(1.into());
            for (s, xs) in x.entries().iter().enumerate() {
                let order = net.ytilde.get(s, v);
                let exp = order
                    .as_rational()
                    .filter(|q| q.is_integer())
                    .map(|q| q.to_integer())
                    .ok_or_else(|| Error::NonIntegerExponent(format!("kinetic order {order} at vertex {}", net.vertex_ids[v])))?;
                let exp = i32::try_from(exp).map_err(|_| Error::NonIntegerExponent("kinetic order too large".into()))?;
                value *= num_traits::Pow::pow(xs, exp);
            }
            Ok(Scalar::Rational(value))
        })
        .collect::<Result<Vec<_>>>()?;
    net.y.mul_vector(&a.mul_vector(&monomials)?)
}

/// Columns `Y (e_{i'} - e_i)`; their span is `S`.
pub fn stoichiometric_generators(net: &Network) -> ExactMatrix {
    net.y.mul(&incidence_matrix(net)).expect("shapes agree")
}

/// Columns `Ỹ (e_{i'} - e_i)`; their span is `S̃`.
pub fn kinetic_order_generators(net: &Network) -> ExactMatrix {
    net.ytilde.mul(&incidence_matrix(net)).expect("shapes agree")
}

/// `ℓ` and the two deficiencies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Deficiencies {
    pub linkage_classes: usize,
    pub stoichiometric: usize,
    pub kinetic_order: usize,
}

/// `δ = |V| - ℓ - dim S` and `δ̃ = |V| - ℓ - dim S̃`.
///
/// `δ` is cross-checked against `dim(ker Y ∩ im I_E) = rank I_E - rank(Y I_E)`.
/// For parametric `Ỹ`, `dim S̃` must be the same for all parameter values
/// admitted by `assumptions`.
pub fn deficiency(net: &Network, assumptions: &AssumptionSet) -> Result<Deficiencies> {
    let l = net.linkage_classes();
    let nv = net.n_vertices();
    let incidence_rank = incidence_matrix(net).rank()?;
    assert_eq!(incidence_rank, nv - l, "incidence rank disagrees with the component count");
    let dim_s = stoichiometric_generators(net).rank()?;
    let intersection = incidence_rank - dim_s;
    let delta = nv - l - dim_s;
    assert_eq!(delta, intersection, "deficiency formulas disagree");
    let generators = kinetic_order_generators(net);
    let dim_st = if generators.is_rational() {
        generators.rank()?
    } else {
        certified_rank(&generators, assumptions)?
    };
    Ok(Deficiencies { linkage_classes: l, stoichiometric: delta, kinetic_order: nv - l - dim_st })
}

/// Rank of a parametric matrix, valid for every admissible parameter value.
///
/// The generic rank `r` is the largest size of a minor that is not the zero
/// polynomial. It is the rank everywhere once some `r × r` minor has a
/// decidable nonzero sign.
pub fn certified_rank(m: &ExactMatrix, assumptions: &AssumptionSet) -> Result<usize> {
    let max = m.n_rows().min(m.n_cols());
    for r in (1..=max).rev() {
        let mut generic = false;
        for rows in IndexSet::subsets(m.n_rows(), r) {
            let block = m.submatrix_by_rows(rows.as_slice());
            for cols in IndexSet::subsets(m.n_cols(), r) {
                let minor = block.submatrix_by_columns(&cols)?.determinant()?;
                if minor.is_zero() {
                    continue;
                }
                generic = true;
                if matches!(scalar_sign(&minor, assumptions), Some(Sign::Positive | Sign::Negative)) {
                    return Ok(r);
                }
            }
        }
        if generic {
            return Err(Error::UndecidableSign {
                what: format!("every nonzero {r}x{r} minor of the kinetic-order generators"),
                value: format!("rank may drop below {r}"),
            });
        }
    }
    Ok(0)
}

/// Every weakly connected component is strongly connected.
pub fn is_weakly_reversible(net: &Network) -> bool {
    let g = net.graph();
    kosaraju_scc(&g).len() == connected_components(&g)
}
