//! Exact rational sparse linear algebra.
//!
//! Everything downstream (period polynomial spaces, bracket kernels,
//! homology ranks) reduces to ranks, kernels and intersections of small
//! matrices over the rationals. All arithmetic is exact; there is no
//! tolerance parameter anywhere in this module. Reduced row-echelon form
//! is unique for a given row space, so a [`Subspace`] in echelon form is a
//! canonical representative and subspace equality is plain data equality.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

/// Exact rational scalar. `BigRational` keeps the representation canonical
/// (reduced fraction, positive denominator).
pub type Scalar = BigRational;

/// Scalar from an integer.
pub fn scalar(n: i64) -> Scalar {
    BigRational::from_integer(n.into())
}

/// Scalar from a ratio of integers. Panics on zero denominator.
pub fn ratio(num: i64, den: i64) -> Scalar {
    BigRational::new(num.into(), den.into())
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("ambient mismatch: left lives in `{left}`, right lives in `{right}`")]
    AmbientMismatch { left: String, right: String },
    #[error("dimension mismatch: {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: String,
        expected: usize,
        got: usize,
    },
}

/// Sparse matrix over the rationals. Zero entries are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::new(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Builds a matrix from dense rows. Rows must share a length.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::new(nrows, ncols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    /// Builds a matrix from sparse rows given as `(col, value)` pairs.
    pub fn from_sparse_rows(rows: &[Vec<(usize, Scalar)>], cols: usize) -> Self {
        let mut m = Matrix::new(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            for (j, v) in row {
                m.set(i, *j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        self.entries.get(&(i, j)).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        if v.is_zero() {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), v);
        }
    }

    /// Sparse view of one row as `(col, value)` pairs in column order.
    pub fn row(&self, i: usize) -> Vec<(usize, Scalar)> {
        self.entries
            .range((i, 0)..=(i, usize::MAX))
            .map(|(&(_, j), v)| (j, v.clone()))
            .collect()
    }

    pub fn row_dense(&self, i: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.cols];
        for (j, v) in self.row(i) {
            out[j] = v;
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::new(self.cols, self.rows);
        for (&(i, j), v) in &self.entries {
            m.set(j, i, v.clone());
        }
        m
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        let mut m = Matrix::new(self.rows, rhs.cols);
        for (&(i, k), a) in &self.entries {
            for (j, b) in rhs.row(k) {
                let cur = m.get(i, j) + a * &b;
                m.set(i, j, cur);
            }
        }
        m
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "shape mismatch in apply");
        let mut out = vec![Scalar::zero(); self.rows];
        for (&(i, j), a) in &self.entries {
            if !v[j].is_zero() {
                out[i] += a * &v[j];
            }
        }
        out
    }

    /// Stacks `other` below `self`. Column counts must agree.
    pub fn stack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "shape mismatch in stack");
        let mut m = Matrix::new(self.rows + other.rows, self.cols);
        for (&(i, j), v) in &self.entries {
            m.set(i, j, v.clone());
        }
        for (&(i, j), v) in &other.entries {
            m.set(self.rows + i, j, v.clone());
        }
        m
    }

    /// Reduced row-echelon form with deterministic pivoting (lowest column
    /// index first, then lowest row index). Returns the rank and the
    /// echelon matrix with zero rows dropped, pivots normalized to 1.
    pub fn rref(&self) -> (usize, Matrix) {
        let mut rows: Vec<BTreeMap<usize, Scalar>> = (0..self.rows)
            .map(|i| self.row(i).into_iter().collect())
            .collect();
        let mut pivot_row = 0usize;
        for col in 0..self.cols {
            // lowest row index at or below the frontier with a nonzero entry
            let Some(r) = (pivot_row..rows.len())
                .find(|&r| rows[r].contains_key(&col))
            else {
                continue;
            };
            rows.swap(pivot_row, r);
            let lead = rows[pivot_row].get(&col).cloned().unwrap();
            if !lead.is_one() {
                for v in rows[pivot_row].values_mut() {
                    *v /= &lead;
                }
            }
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r == pivot_row {
                    continue;
                }
                let Some(factor) = row.get(&col).cloned() else {
                    continue;
                };
                for (j, pv) in &pivot {
                    let delta = pv * &factor;
                    match row.get_mut(j) {
                        Some(cur) => {
                            *cur -= delta;
                            if cur.is_zero() {
                                row.remove(j);
                            }
                        }
                        None => {
                            row.insert(*j, -delta);
                        }
                    }
                }
            }
            pivot_row += 1;
            if pivot_row == rows.len() {
                break;
            }
        }
        let rank = rows.iter().filter(|r| !r.is_empty()).count();
        let mut reduced = Matrix::new(rank, self.cols);
        let mut out = 0;
        for row in rows.iter().filter(|r| !r.is_empty()) {
            for (j, v) in row {
                reduced.set(out, *j, v.clone());
            }
            out += 1;
        }
        (rank, reduced)
    }

    pub fn rank(&self) -> usize {
        self.rref().0
    }

    /// Null space of the matrix acting on column vectors, as a subspace of
    /// the column-index cell named by `ambient`.
    pub fn kernel(&self, ambient: &str) -> Subspace {
        let (_, r) = self.rref();
        let mut pivot_cols = Vec::new();
        for i in 0..r.rows() {
            if let Some((j, _)) = r.row(i).into_iter().next() {
                pivot_cols.push(j);
            }
        }
        let is_pivot = |j: usize| pivot_cols.binary_search(&j).is_ok();
        let mut basis_rows = Vec::new();
        for free in (0..self.cols).filter(|&j| !is_pivot(j)) {
            let mut v = vec![Scalar::zero(); self.cols];
            v[free] = Scalar::one();
            for (i, &pc) in pivot_cols.iter().enumerate() {
                let c = r.get(i, free);
                if !c.is_zero() {
                    v[pc] = -c;
                }
            }
            basis_rows.push(v);
        }
        Subspace::from_rows(ambient, self.cols, &basis_rows)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row = self.row_dense(i);
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// A linear subspace of an explicitly ordered finite-dimensional cell,
/// stored as a reduced row-echelon basis. Binary operations require the
/// same `ambient_label`; the label names the ordered basis of the cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient_dim: usize,
    ambient_label: String,
    basis: Matrix,
}

impl Subspace {
    /// Spans the given rows inside the ambient cell; the basis is reduced
    /// to canonical echelon form.
    pub fn from_rows(ambient_label: &str, ambient_dim: usize, rows: &[Vec<Scalar>]) -> Self {
        for row in rows {
            assert_eq!(row.len(), ambient_dim, "row length != ambient dimension");
        }
        let (_, basis) = Matrix::from_rows(rows).rref();
        let basis = if rows.is_empty() {
            Matrix::new(0, ambient_dim)
        } else {
            basis
        };
        Subspace {
            ambient_dim,
            ambient_label: ambient_label.to_string(),
            basis,
        }
    }

    pub fn from_matrix(ambient_label: &str, m: &Matrix) -> Self {
        let (_, basis) = m.rref();
        Subspace {
            ambient_dim: m.cols(),
            ambient_label: ambient_label.to_string(),
            basis,
        }
    }

    pub fn zero(ambient_label: &str, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            ambient_label: ambient_label.to_string(),
            basis: Matrix::new(0, ambient_dim),
        }
    }

    pub fn full(ambient_label: &str, ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            ambient_label: ambient_label.to_string(),
            basis: Matrix::identity(ambient_dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn ambient_label(&self) -> &str {
        &self.ambient_label
    }

    /// Echelon basis rows; pivots strictly increase row by row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.dim()).map(|i| self.basis.row_dense(i)).collect()
    }

    fn check_compatible(&self, other: &Subspace) -> Result<(), LinAlgError> {
        if self.ambient_label != other.ambient_label {
            return Err(LinAlgError::AmbientMismatch {
                left: self.ambient_label.clone(),
                right: other.ambient_label.clone(),
            });
        }
        if self.ambient_dim != other.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                context: format!("ambient `{}`", self.ambient_label),
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the echelon basis; the remainder is zero exactly
    /// when `v` lies in the subspace.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ambient_dim, "vector length != ambient dim");
        let mut out = v.to_vec();
        for i in 0..self.dim() {
            let row = self.basis.row(i);
            let Some(&(pivot, _)) = row.first() else {
                continue;
            };
            let c = out[pivot].clone();
            if c.is_zero() {
                continue;
            }
            for (j, bv) in &row {
                let delta = bv * &c;
                out[*j] -= delta;
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_compatible(other)?;
        Ok((0..other.dim()).all(|i| self.contains(&other.basis.row_dense(i))))
    }

    /// Sum of subspaces (span of the union of the bases).
    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        Ok(Subspace::from_matrix(
            &self.ambient_label,
            &self.basis.stack(&other.basis),
        ))
    }

    /// Intersection, computed from the kernel of the stacked system
    /// `sum y_i u_i = sum z_j w_j`: each kernel vector yields a vector
    /// lying in both row spaces.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_compatible(other)?;
        let p = self.dim();
        let q = other.dim();
        if p == 0 || q == 0 {
            return Ok(Subspace::zero(&self.ambient_label, self.ambient_dim));
        }
        // columns: p coefficients on self's basis, then q on other's
        let mut sys = Matrix::new(self.ambient_dim, p + q);
        for i in 0..p {
            for (j, v) in self.basis.row(i) {
                sys.set(j, i, v);
            }
        }
        for i in 0..q {
            for (j, v) in other.basis.row(i) {
                sys.set(j, p + i, -v);
            }
        }
        let ker = sys.kernel("intersect-coefficients");
        let mut rows = Vec::new();
        for kv in ker.basis_rows() {
            let mut v = vec![Scalar::zero(); self.ambient_dim];
            for (i, c) in kv.iter().take(p).enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (j, bv) in self.basis.row(i) {
                    v[j] += &bv * c;
                }
            }
            rows.push(v);
        }
        Ok(Subspace::from_rows(&self.ambient_label, self.ambient_dim, &rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(n: i64) -> Scalar {
        scalar(n)
    }

    #[test]
    fn rref_identity() {
        let m = Matrix::identity(2);
        let (rank, r) = m.rref();
        assert_eq!(rank, 2);
        assert_eq!(r, Matrix::identity(2));
    }

    #[test]
    fn rref_zero_matrix() {
        let m = Matrix::new(3, 4);
        let (rank, r) = m.rref();
        assert_eq!(rank, 0);
        assert_eq!(r.rows(), 0);
        assert_eq!(r.cols(), 4);
    }

    #[test]
    fn rref_dependent_rows() {
        let m = Matrix::from_rows(&[vec![s(1), s(2)], vec![s(2), s(4)]]);
        let (rank, r) = m.rref();
        assert_eq!(rank, 1);
        assert_eq!(r.row_dense(0), vec![s(1), s(2)]);
    }

    #[test]
    fn kernel_identity_is_zero() {
        let ker = Matrix::identity(3).kernel("cell");
        assert_eq!(ker.dim(), 0);
    }

    #[test]
    fn kernel_zero_matrix_is_full() {
        let ker = Matrix::new(2, 3).kernel("cell");
        assert_eq!(ker.dim(), 3);
        assert_eq!(ker, Subspace::full("cell", 3));
    }

    #[test]
    fn kernel_vectors_multiply_back_to_zero() {
        // multiply-back oracle on a fixed rectangular matrix
        let m = Matrix::from_rows(&[
            vec![s(1), s(2), s(3), s(4)],
            vec![s(2), s(4), s(6), s(8)],
            vec![s(0), s(1), s(1), s(0)],
        ]);
        let ker = m.kernel("cell");
        assert_eq!(ker.dim() + m.rank(), m.cols());
        for v in ker.basis_rows() {
            assert!(m.apply(&v).iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn intersect_self_is_identity() {
        let u = Subspace::from_rows(
            "cell",
            3,
            &[vec![s(1), s(0), s(2)], vec![s(0), s(1), s(-1)]],
        );
        assert_eq!(u.intersect(&u).unwrap(), u);
    }

    #[test]
    fn intersect_complementary_coordinates_is_zero() {
        let u = Subspace::from_rows("cell", 4, &[vec![s(1), s(0), s(0), s(0)]]);
        let w = Subspace::from_rows(
            "cell",
            4,
            &[vec![s(0), s(1), s(0), s(0)], vec![s(0), s(0), s(1), s(0)]],
        );
        assert_eq!(u.intersect(&w).unwrap().dim(), 0);
    }

    #[test]
    fn intersect_rejects_ambient_mismatch() {
        let u = Subspace::full("a", 2);
        let w = Subspace::full("b", 2);
        assert!(matches!(
            u.intersect(&w),
            Err(LinAlgError::AmbientMismatch { .. })
        ));
    }

    // Independent oracle for intersections: the result must lie in both
    // inputs and its dimension must satisfy the modular law
    // dim(u ∩ w) = dim u + dim w − dim(u + w). Together with canonicity of
    // echelon form this pins the subspace uniquely.
    fn check_intersection(u: &Subspace, w: &Subspace) {
        let i = u.intersect(w).unwrap();
        assert!(u.contains_subspace(&i).unwrap());
        assert!(w.contains_subspace(&i).unwrap());
        let s = u.sum(w).unwrap();
        assert_eq!(i.dim() + s.dim(), u.dim() + w.dim());
    }

    proptest! {
        #[test]
        fn intersection_matches_dimension_law(
            a in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 0..4),
            b in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 5), 0..4),
        ) {
            let rows_a: Vec<Vec<Scalar>> =
                a.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
            let rows_b: Vec<Vec<Scalar>> =
                b.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
            let u = Subspace::from_rows("cell", 5, &rows_a);
            let w = Subspace::from_rows("cell", 5, &rows_b);
            check_intersection(&u, &w);
            // commutativity as subspace equality (echelon form is canonical)
            prop_assert_eq!(u.intersect(&w).unwrap(), w.intersect(&u).unwrap());
        }

        #[test]
        fn rank_equals_transpose_rank(
            a in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 1..5),
        ) {
            let rows: Vec<Vec<Scalar>> =
                a.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
            let m = Matrix::from_rows(&rows);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn kernel_dimension_law(
            a in proptest::collection::vec(proptest::collection::vec(-5i64..=5, 4), 1..5),
        ) {
            let rows: Vec<Vec<Scalar>> =
                a.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
            let m = Matrix::from_rows(&rows);
            let ker = m.kernel("cell");
            prop_assert_eq!(ker.dim() + m.rank(), m.cols());
            for v in ker.basis_rows() {
                prop_assert!(m.apply(&v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn intersect_associative_idempotent(
            a in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..4),
            b in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..4),
            c in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 4), 0..4),
        ) {
            let mk = |rows: &Vec<Vec<i64>>| {
                let rows: Vec<Vec<Scalar>> =
                    rows.iter().map(|r| r.iter().map(|&x| s(x)).collect()).collect();
                Subspace::from_rows("cell", 4, &rows)
            };
            let (u, v, w) = (mk(&a), mk(&b), mk(&c));
            prop_assert_eq!(u.intersect(&u).unwrap(), u.clone());
            let left = u.intersect(&v).unwrap().intersect(&w).unwrap();
            let right = u.intersect(&v.intersect(&w).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }
    }
}
