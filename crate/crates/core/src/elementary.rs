//! Elementary (support-minimal) vectors of a subspace from maximal minors.
//!
//! For a full-row-rank `d x n` matrix `M` and a column set `I` of size `d + 1`,
//! the vector with `v_i = (-1)^{#{k in I : k < i}} det M_{I \ {i}}` on `I` and
//! zero elsewhere lies in `ker M`, and is elementary unless it vanishes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::{ExactMatrix, IndexSet, MaximalMinors};
use crate::scalars::{Rational, Scalar};

/// Which subspace of a matrix is meant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Subspace {
    Kernel,
    RowSpace,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ElementaryVectorList {
    vectors: Vec<Vec<Scalar>>,
    source_sets: Vec<IndexSet>,
}

impl ElementaryVectorList {
    pub fn vectors(&self) -> &[Vec<Scalar>] {
        &self.vectors
    }

    /// The column set each vector was assembled from (of the matrix whose
    /// kernel was taken).
    pub fn source_sets(&self) -> &[IndexSet] {
        &self.source_sets
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<Scalar>, &IndexSet)> {
        self.vectors.iter().zip(&self.source_sets)
    }

    pub fn into_vectors(self) -> Vec<Vec<Scalar>> {
        self.vectors
    }

    /// The vectors as rationals; fails on parametric entries.
    pub fn to_rational_vectors(&self) -> Result<Vec<Vec<Rational>>> {
        self.vectors
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| s.as_rational().cloned().ok_or_else(|| Error::Parametric(s.to_string())))
                    .collect()
            })
            .collect()
    }
}

pub fn support(v: &[Scalar]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

fn assemble(minors: &MaximalMinors, n_cols: usize, set: &IndexSet) -> Vec<Scalar> {
    let mut v = vec![Scalar::zero(); n_cols];
    for (pos, &i) in set.as_slice().iter().enumerate() {
        let minor = minors
            .get(&set.without_position(pos))
            .expect("every d-subset has a cached minor");
        v[i] = if pos % 2 == 0 { minor.clone() } else { -minor };
    }
    v
}

fn check_full_row_rank(m: &ExactMatrix) -> Result<()> {
    if m.is_rational() {
        let rank = m.rank()?;
        if rank != m.n_rows() {
            return Err(Error::RankDeficient { rank, rows: m.n_rows() });
        }
    }
    Ok(())
}

/// The kernel vector of `m` attached to one column set of size `n_rows + 1`.
///
/// Returns the zero vector when `rank M_I < d`.
pub fn elementary_vector_for_index_set(m: &ExactMatrix, set: &IndexSet) -> Result<Vec<Scalar>> {
    if set.len() != m.n_rows() + 1 {
        return Err(Error::InvalidIndexSet(format!(
            "{set} has {} elements, expected {}",
            set.len(),
            m.n_rows() + 1
        )));
    }
    check_full_row_rank(m)?;
    let sub = m.submatrix_by_columns(set)?;
    let minors = sub.maximal_minors()?;
    let local = assemble(&minors, set.len(), &IndexSet::all(set.len()));
    let mut v = vec![Scalar::zero(); m.n_cols()];
    for (x, &i) in local.into_iter().zip(set.as_slice()) {
        v[i] = x;
    }
    Ok(v)
}

/// Positive rational content shared by all entries (coefficients of all
/// polynomial entries included).
fn vector_content(v: &[Scalar]) -> Rational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for c in v.iter().filter(|x| !x.is_zero()).map(Scalar::content) {
        num = num.gcd(c.numer());
        den = den.lcm(c.denom());
    }
    if num.is_zero() {
        Rational::one()
    } else {
        Rational::new(num, den)
    }
}

/// Elementary vectors of `ker M` (or of the row space of `M`).
///
/// Candidates are produced in lexicographic order of column sets; zero
/// candidates are discarded and, with `dedup`, so is any vector whose support
/// was already emitted. Each vector is divided by its positive content; signs
/// are kept as the formula gives them.
pub fn elementary_vectors(m: &ExactMatrix, subspace: Subspace, dedup: bool) -> Result<ElementaryVectorList> {
    match subspace {
        Subspace::Kernel => kernel_elementary_vectors(m, dedup),
        Subspace::RowSpace => {
            if !m.is_rational() {
                let bad = m.entries().iter().find(|s| !s.is_rational()).expect("parametric entry");
                return Err(Error::Parametric(bad.to_string()));
            }
            kernel_elementary_vectors(&m.kernel_matrix()?, dedup)
        }
    }
}

fn kernel_elementary_vectors(m: &ExactMatrix, dedup: bool) -> Result<ElementaryVectorList> {
    let basis;
    let m = if m.is_rational() && m.rank()? < m.n_rows() {
        basis = m.row_basis()?;
        &basis
    } else {
        m
    };
    let n = m.n_cols();
    let d = m.n_rows();
    let mut out = ElementaryVectorList::default();
    if d + 1 > n {
        return Ok(out);
    }
    let minors = m.maximal_minors()?;
    let mut seen = std::collections::HashSet::new();
    for set in IndexSet::subsets(n, d + 1) {
        let v = assemble(&minors, n, &set);
        let supp = support(&v);
        if supp.is_empty() {
            continue;
        }
        if dedup && !seen.insert(supp) {
            continue;
        }
        let content = vector_content(&v).recip();
        out.vectors.push(v.iter().map(|x| x.scale(&content)).collect());
        out.source_sets.push(set);
    }
    Ok(out)
}
