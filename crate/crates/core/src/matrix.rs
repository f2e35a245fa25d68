//! Dense matrices over exact scalars.
//!
//! Rank and kernels are only defined for rational matrices. Determinants and
//! maximal minors work for parametric entries as well: rational matrices use
//! fraction-free Bareiss elimination, parametric ones Laplace expansion.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{Rational, Scalar};

/// Strictly increasing set of column indices, stored zero-based.
///
/// Externally (display, JSON, CLI) indices are one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IndexSet(Vec<usize>);

impl IndexSet {
    pub fn from_zero_based(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        IndexSet(indices)
    }

    /// Validates one-based indices against `n_cols`.
    pub fn from_one_based(indices: &[usize], n_cols: usize) -> Result<Self> {
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n_cols) {
            return Err(Error::IndexOutOfRange { index: bad, len: n_cols });
        }
        if !indices.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidIndexSet(format!("{indices:?} is not strictly increasing")));
        }
        Ok(IndexSet(indices.iter().map(|i| i - 1).collect()))
    }

    pub fn all(n: usize) -> Self {
        IndexSet((0..n).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn without_position(&self, pos: usize) -> IndexSet {
        let mut v = self.0.clone();
        v.remove(pos);
        IndexSet(v)
    }

    /// All size-`k` subsets of `0..n` in lexicographic order.
    pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = IndexSet> {
        (0..n).combinations(k).map(IndexSet)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.one_based().iter().join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    n_rows: usize,
    n_cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(n_rows: usize, n_cols: usize, entries: Vec<Scalar>) -> Result<Self> {
        if entries.len() != n_rows * n_cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {n_rows}x{n_cols} matrix",
                entries.len()
            )));
        }
        Ok(Self { n_rows, n_cols, entries })
    }

    /// Builds a matrix from rows; `n_cols` is needed to shape a matrix with no rows.
    pub fn from_rows(rows: Vec<Vec<Scalar>>, n_cols: usize) -> Result<Self> {
        let n_rows = rows.len();
        if let Some(r) = rows.iter().find(|r| r.len() != n_cols) {
            return Err(Error::DimensionMismatch(format!(
                "row of length {} in a matrix with {n_cols} columns",
                r.len()
            )));
        }
        Ok(Self { n_rows, n_cols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let n_cols = rows.first().map_or(0, |r| r.as_ref().len());
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| Scalar::int(x)).collect())
            .collect();
        Self::from_rows(rows, n_cols).expect("rectangular integer rows")
    }

    pub fn from_rationals(rows: Vec<Vec<Rational>>, n_cols: usize) -> Result<Self> {
        Self::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(Scalar::Rational).collect())
                .collect(),
            n_cols,
        )
    }

    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        Self { n_rows, n_cols, entries: vec![Scalar::zero(); n_rows * n_cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.n_cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.n_cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.n_cols..(i + 1) * self.n_cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        (0..self.n_rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.n_rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn is_rational(&self) -> bool {
        self.entries.iter().all(Scalar::is_rational)
    }

    /// Sorted, deduplicated names of all variables occurring in the entries.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = self.entries.iter().flat_map(Scalar::variables).collect();
        vars.sort();
        vars.dedup();
        vars
    }

    pub fn to_rational_rows(&self) -> Result<Vec<Vec<Rational>>> {
        self.rows()
            .map(|r| {
                r.iter()
                    .map(|s| s.as_rational().cloned().ok_or_else(|| Error::Parametric(s.to_string())))
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.n_cols {
            for i in 0..self.n_rows {
                entries.push(self.get(i, j).clone());
            }
        }
        Self { n_rows: self.n_cols, n_cols: self.n_rows, entries }
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> Result<Self> {
        if self.n_cols != rhs.n_rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.n_rows, self.n_cols, rhs.n_rows, rhs.n_cols
            )));
        }
        let mut entries = Vec::with_capacity(self.n_rows * rhs.n_cols);
        for i in 0..self.n_rows {
            for j in 0..rhs.n_cols {
                let mut acc = Scalar::zero();
                for k in 0..self.n_cols {
                    let (a, b) = (self.get(i, k), rhs.get(k, j));
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(Self { n_rows: self.n_rows, n_cols: rhs.n_cols, entries })
    }

    pub fn mul_vector(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.n_cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for a matrix with {} columns",
                v.len(),
                self.n_cols
            )));
        }
        Ok(self
            .rows()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    /// Stacks `other` below `self`.
    pub fn stack(&self, other: &ExactMatrix) -> Result<Self> {
        if self.n_cols != other.n_cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.n_cols, self.n_cols
            )));
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Self { n_rows: self.n_rows + other.n_rows, n_cols: self.n_cols, entries })
    }

    pub fn substitute(&self, values: &HashMap<String, Rational>) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(|s| s.substitute(values)).collect(),
        }
    }

    pub fn map_entries(&self, f: impl Fn(&Scalar) -> Scalar) -> Self {
        Self {
            n_rows: self.n_rows,
            n_cols: self.n_cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn submatrix_by_columns(&self, columns: &IndexSet) -> Result<Self> {
        if let Some(&bad) = columns.as_slice().iter().find(|&&j| j >= self.n_cols) {
            return Err(Error::IndexOutOfRange { index: bad + 1, len: self.n_cols });
        }
        let mut entries = Vec::with_capacity(self.n_rows * columns.len());
        for i in 0..self.n_rows {
            for &j in columns.as_slice() {
                entries.push(self.get(i, j).clone());
            }
        }
        Ok(Self { n_rows: self.n_rows, n_cols: columns.len(), entries })
    }

    pub fn submatrix_by_rows(&self, rows: &[usize]) -> Self {
        let entries = rows.iter().flat_map(|&i| self.row(i).iter().cloned()).collect();
        Self { n_rows: rows.len(), n_cols: self.n_cols, entries }
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(RowEchelon::of(self.to_rational_rows()?, self.n_cols).pivots.len())
    }

    /// Rows of `self` forming a basis of its row space, first-come order.
    pub fn row_basis(&self) -> Result<Self> {
        let rows = self.to_rational_rows()?;
        let mut chosen: Vec<usize> = Vec::new();
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for (i, r) in rows.iter().enumerate() {
            basis.push(r.clone());
            if RowEchelon::of(basis.clone(), self.n_cols).pivots.len() == basis.len() {
                chosen.push(i);
            } else {
                basis.pop();
            }
        }
        Ok(self.submatrix_by_rows(&chosen))
    }

    /// Basis of the right kernel as rows, normalized to coprime integers with
    /// the first nonzero entry positive.
    pub fn kernel_matrix(&self) -> Result<Self> {
        let echelon = RowEchelon::of(self.to_rational_rows()?, self.n_cols);
        let free: Vec<usize> = (0..self.n_cols).filter(|j| !echelon.pivots.contains(j)).collect();
        let mut rows = Vec::with_capacity(free.len());
        for &f in &free {
            let mut v = vec![Rational::zero(); self.n_cols];
            v[f] = Rational::one();
            for (r, &p) in echelon.pivots.iter().enumerate() {
                v[p] = -echelon.rows[r][f].clone();
            }
            rows.push(primitive_integer_vector(&v));
        }
        Self::from_rationals(rows, self.n_cols)
    }

    pub fn determinant(&self) -> Result<Scalar> {
        if self.n_rows != self.n_cols {
            return Err(Error::NotSquare { rows: self.n_rows, cols: self.n_cols });
        }
        if self.is_rational() {
            Ok(Scalar::Rational(bareiss_determinant(&self.to_rational_rows()?)))
        } else {
            Ok(self.cofactor_determinant())
        }
    }

    /// Determinant by Laplace expansion along rows, memoized over column subsets.
    pub fn cofactor_determinant(&self) -> Scalar {
        assert_eq!(self.n_rows, self.n_cols, "cofactor expansion needs a square matrix");
        let n = self.n_rows;
        let mut memo: HashMap<u64, Scalar> = HashMap::new();
        self.laplace(0, (1u64 << n) - 1, &mut memo)
    }

    fn laplace(&self, row: usize, cols: u64, memo: &mut HashMap<u64, Scalar>) -> Scalar {
        if row == self.n_rows {
            return Scalar::one();
        }
        if let Some(v) = memo.get(&cols) {
            return v.clone();
        }
        let mut acc = Scalar::zero();
        let mut position = 0;
        for j in 0..self.n_cols {
            if cols & (1 << j) == 0 {
                continue;
            }
            let entry = self.get(row, j);
            if !entry.is_zero() {
                let minor = self.laplace(row + 1, cols & !(1 << j), memo);
                let term = entry * &minor;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }

    /// All `n_rows x n_rows` minors, in lexicographic order of column sets.
    pub fn maximal_minors(&self) -> Result<MaximalMinors> {
        if self.n_rows > self.n_cols {
            return Err(Error::DimensionMismatch(format!(
                "maximal minors need n_rows <= n_cols, got {}x{}",
                self.n_rows, self.n_cols
            )));
        }
        let mut sets = Vec::new();
        let mut values = Vec::new();
        for set in IndexSet::subsets(self.n_cols, self.n_rows) {
            values.push(self.submatrix_by_columns(&set)?.determinant()?);
            sets.push(set);
        }
        let lookup = sets.iter().cloned().enumerate().map(|(k, s)| (s, k)).collect();
        Ok(MaximalMinors { sets, values, lookup })
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}]", r.iter().join(", "))?;
        }
        write!(f, "]")
    }
}

/// Maximal minors of a matrix, each computed once, addressable by column set.
#[derive(Clone, Debug)]
pub struct MaximalMinors {
    sets: Vec<IndexSet>,
    values: Vec<Scalar>,
    lookup: HashMap<IndexSet, usize>,
}

impl MaximalMinors {
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn index_sets(&self) -> &[IndexSet] {
        &self.sets
    }

    pub fn get(&self, set: &IndexSet) -> Option<&Scalar> {
        self.lookup.get(set).map(|&k| &self.values[k])
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IndexSet, &Scalar)> {
        self.sets.iter().zip(&self.values)
    }

    pub fn into_values(self) -> Vec<Scalar> {
        self.values
    }
}

/// Reduced row echelon form over the rationals.
pub(crate) struct RowEchelon {
    pub rows: Vec<Vec<Rational>>,
    pub pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn of(mut rows: Vec<Vec<Rational>>, n_cols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n_cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..rows.len() {
                if i == r || rows[i][c].is_zero() {
                    continue;
                }
                let factor = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Self { rows, pivots }
    }
}

/// Scales a rational vector to coprime integers with the first nonzero entry positive.
pub(crate) fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let den = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| Rational::from_integer(&x / &g * &sign)).collect()
}

/// Fraction-free Bareiss elimination on the integer matrix obtained by
/// clearing row denominators.
pub(crate) fn bareiss_determinant(rows: &[Vec<Rational>]) -> Rational {
    let n = rows.len();
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            let den = r.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &den;
            r.iter().map(|x| (x * Rational::from_integer(den.clone())).to_integer()).collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(p) => {
                    a.swap(k, p);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    let det = if negate { -det } else { det };
    Rational::new(det, scale)
}
