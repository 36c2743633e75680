//! Dense exact linear algebra over the rationals.
//!
//! Everything here is Gauss-Jordan on `Rational` entries. Row-reduced forms
//! are unique, so a [`Subspace`] stored in reduced row-echelon form is a
//! canonical representative: two spans of the same space compare equal.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::polyring::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows(rows: Vec<Vec<Rational>>, cols: usize) -> Result<Self> {
        let nrows = rows.len();
        let mut entries = Vec::with_capacity(nrows * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: r.len(),
                });
            }
            entries.extend(r);
        }
        Ok(Matrix {
            rows: nrows,
            cols,
            entries,
        })
    }

    /// Builds a matrix whose `k`-th column is `columns[k]`.
    pub fn from_columns(columns: &[Vec<Rational>], rows: usize) -> Result<Self> {
        let mut m = Self::zeros(rows, columns.len());
        for (k, c) in columns.iter().enumerate() {
            if c.len() != rows {
                return Err(Error::LengthMismatch {
                    expected: rows,
                    found: c.len(),
                });
            }
            for (i, v) in c.iter().enumerate() {
                m[(i, k)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        if v.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.rows,
            });
        }
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch {
                left: self.rows * self.cols,
                right: other.rows * other.cols,
            });
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                left: self.cols,
                right: other.cols,
            });
        }
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Reduced row-echelon form and rank.
    ///
    /// Columns are processed left to right; within a column the pivot row is
    /// the one with the largest absolute numerator. The result does not
    /// depend on that choice since the reduced form is unique.
    pub fn rref(&self) -> (Matrix, usize) {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows)
                .filter(|&r| !m[(r, col)].is_zero())
                .max_by(|&a, &b| {
                    m[(a, col)]
                        .numer()
                        .abs()
                        .cmp(&m[(b, col)].numer().abs())
                        .then(b.cmp(&a))
                });
            let Some(p) = pivot else { continue };
            m.swap_rows(rank, p);
            let inv = m[(rank, col)].recip();
            for j in col..m.cols {
                let v = &m[(rank, j)] * &inv;
                m[(rank, j)] = v;
            }
            for r in 0..m.rows {
                if r == rank || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for j in col..m.cols {
                    if m[(rank, j)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(rank, j)];
                    m[(r, j)] -= delta;
                }
            }
            rank += 1;
        }
        (m, rank)
    }

    pub fn rank(&self) -> usize {
        self.rref().1
    }

    /// Basis of `{v : self * v = 0}`.
    pub fn nullspace(&self) -> Subspace {
        let (r, rank) = self.rref();
        let mut pivots = Vec::with_capacity(rank);
        for i in 0..rank {
            let p = (0..r.cols)
                .find(|&j| !r[(i, j)].is_zero())
                .expect("nonzero pivot row");
            pivots.push(p);
        }
        let free: Vec<usize> = (0..r.cols).filter(|j| !pivots.contains(j)).collect();
        let vectors = free.iter().map(|&f| {
            let mut v = vec![Rational::zero(); r.cols];
            v[f] = Rational::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r[(i, f)].clone();
            }
            v
        });
        Subspace::from_vectors(self.cols, vectors).expect("lengths match")
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace of `Q^ambient_dim`, stored as a basis in reduced
/// row-echelon form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let basis = (0..ambient_dim).map(|i| unit(ambient_dim, i)).collect();
        Subspace {
            ambient_dim,
            basis,
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn from_vectors<I>(ambient_dim: usize, vectors: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut s = Self::zero(ambient_dim);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient_dim
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                left: self.ambient_dim,
                right: len,
            });
        }
        Ok(())
    }

    /// Residual of `v` after elimination against the basis; zero iff `v` is
    /// in the span.
    pub fn reduce(&self, v: &[Rational]) -> Result<Vec<Rational>> {
        self.check_len(v.len())?;
        let mut v = v.to_vec();
        self.reduce_in_place(&mut v);
        Ok(v)
    }

    fn reduce_in_place(&self, v: &mut [Rational]) {
        for (row, &p) in self.basis.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for (x, r) in v.iter_mut().zip(row).skip(p) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
    }

    pub fn contains(&self, v: &[Rational]) -> Result<bool> {
        if self.is_full() {
            self.check_len(v.len())?;
            return Ok(true);
        }
        Ok(self.reduce(v)?.iter().all(Zero::is_zero))
    }

    /// Adds `v` to the span. Returns `true` if the dimension grew.
    pub fn insert(&mut self, v: Vec<Rational>) -> Result<bool> {
        self.check_len(v.len())?;
        if self.is_full() {
            return Ok(false);
        }
        let mut v = v;
        self.reduce_in_place(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return Ok(false);
        };
        let inv = v[p].recip();
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        for row in &mut self.basis {
            if row[p].is_zero() {
                continue;
            }
            let factor = row[p].clone();
            for (x, r) in row.iter_mut().zip(&v).skip(p) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.basis.insert(at, v);
        Ok(true)
    }

    /// Smallest subspace containing `self` and `vectors`.
    pub fn span_union<I>(&self, vectors: I) -> Result<Subspace>
    where
        I: IntoIterator<Item = Vec<Rational>>,
    {
        let mut s = self.clone();
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient_dim)?;
        self.span_union(other.basis.iter().cloned())
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool> {
        self.check_len(other.ambient_dim)?;
        for v in &other.basis {
            if !self.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_len(other.ambient_dim)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(self.ambient_dim));
        }
        // columns [A | -B]; a null vector (a, b) gives A^T a = B^T b
        let mut cols: Vec<Vec<Rational>> = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = Matrix::from_columns(&cols, self.ambient_dim)?;
        let k = self.dim();
        let null = m.nullspace();
        Subspace::from_vectors(
            self.ambient_dim,
            null.basis
                .iter()
                .map(|c| combine(&self.basis, &c[..k], self.ambient_dim)),
        )
    }

    /// Coordinates of `v` with respect to `self.basis()`, if `v` lies in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Result<Option<Vec<Rational>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        Ok(Some(self.pivots.iter().map(|&p| v[p].clone()).collect()))
    }
}

/// `sum_i c[i] * rows[i]`.
pub fn combine(rows: &[Vec<Rational>], c: &[Rational], len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (row, a) in rows.iter().zip(c) {
        if a.is_zero() {
            continue;
        }
        for (o, r) in out.iter_mut().zip(row) {
            if !r.is_zero() {
                *o += a * r;
            }
        }
    }
    out
}

pub fn unit(len: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); len];
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::int;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| int(x)).collect())
                .collect(),
            cols,
        )
        .unwrap()
    }

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn rref_examples() {
        let id = Matrix::identity(3);
        assert_eq!(id.rref(), (id.clone(), 3));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).rref(), (m(&[&[1, 2], &[0, 0]]), 1));
        let z = Matrix::zeros(2, 3);
        assert_eq!(z.rref(), (z.clone(), 0));
    }

    #[test]
    fn nullspace_examples() {
        assert!(Matrix::identity(3).nullspace().is_zero());
        assert_eq!(Matrix::zeros(2, 3).nullspace(), Subspace::full(3));
        let ns = m(&[&[1, 1]]).nullspace();
        assert_eq!(ns, Subspace::from_vectors(2, [v(&[1, -1])]).unwrap());
    }

    #[test]
    fn span_union_examples() {
        let e1 = v(&[1, 0]);
        let e2 = v(&[0, 1]);
        let s = Subspace::zero(2).span_union([e1.clone()]).unwrap();
        assert_eq!(s.basis(), std::slice::from_ref(&e1));
        assert_eq!(s.span_union([e1.clone()]).unwrap(), s);
        assert!(s.span_union([e2]).unwrap().is_full());
        assert!(s.span_union([v(&[1, 0, 0])]).is_err());
    }

    #[test]
    fn contains_examples() {
        assert!(Subspace::full(3).contains(&v(&[4, -1, 7])).unwrap());
        assert!(!Subspace::zero(2).contains(&v(&[1, 0])).unwrap());
        let s = Subspace::from_vectors(2, [v(&[1, 1])]).unwrap();
        assert!(!s.contains(&v(&[1, -1])).unwrap());
        assert!(s.contains(&v(&[-3, -3])).unwrap());
        assert!(s.contains(&v(&[1])).is_err());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Subspace::from_vectors(3, [v(&[1, 0, 0]), v(&[0, 1, 0])]).unwrap();
        let b = Subspace::from_vectors(3, [v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        assert_eq!(
            a.intersection(&b).unwrap(),
            Subspace::from_vectors(3, [v(&[0, 1, 0])]).unwrap()
        );
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..=3, r * c).prop_map(move |xs| {
                Matrix::from_rows(
                    xs.chunks(c)
                        .map(|row| row.iter().map(|&x| int(x)).collect())
                        .collect(),
                    c,
                )
                .unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn rref_idempotent_and_rank_transpose(a in arb_matrix()) {
            let (r, rank) = a.rref();
            prop_assert_eq!(r.rref(), (r.clone(), rank));
            prop_assert_eq!(rank, a.transpose().rank());
        }

        #[test]
        fn nullspace_is_annihilated(a in arb_matrix()) {
            let ns = a.nullspace();
            for b in ns.basis() {
                prop_assert!(is_zero_vector(&a.mul_vec(b).unwrap()));
            }
            prop_assert_eq!(a.rank() + ns.dim(), a.cols());
        }

        #[test]
        fn spans_are_canonical(a in arb_matrix(), perm_seed in 0usize..24) {
            let rows: Vec<Vec<Rational>> = (0..a.rows()).map(|i| a.row(i).to_vec()).collect();
            let mut shuffled = rows.clone();
            shuffled.rotate_left(perm_seed % rows.len().max(1));
            let mixed: Vec<Vec<Rational>> = shuffled
                .iter()
                .zip(rows.iter().cycle().skip(1))
                .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p + q).collect())
                .chain(shuffled.iter().cloned())
                .collect();
            let s1 = Subspace::from_vectors(a.cols(), rows).unwrap();
            let s2 = Subspace::from_vectors(a.cols(), mixed).unwrap();
            prop_assert_eq!(&s1, &s2);
            let (r, rank) = a.rref();
            let from_rref = Subspace::from_vectors(a.cols(), (0..rank).map(|i| r.row(i).to_vec())).unwrap();
            prop_assert_eq!(from_rref.basis(), s1.basis());
        }
    }
}
