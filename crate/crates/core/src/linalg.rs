//! Dense exact matrices over Q(√3) and subspaces in reduced row-echelon form.
//!
//! Rank decisions are exact. Elimination skips structurally zero entries,
//! which keeps the block-sparse operators of the exterior algebra cheap.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::Q3;

#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<Q3>,
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![Q3::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Q3::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Q3>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_cols(cols: &[Vec<Q3>], nrows: usize) -> Self {
        let mut m = Mat::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn row(&self, r: usize) -> &[Q3] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Q3> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Q3>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (i..self.cols).all(|j| (&self[(i, j)] + &self[(j, i)]).is_zero()))
    }

    pub fn trace(&self) -> Q3 {
        let mut t = Q3::zero();
        for i in 0..self.rows.min(self.cols) {
            t += &self[(i, i)];
        }
        t
    }

    pub fn scale(&self, s: &Q3) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn mul(&self, o: &Mat) -> Mat {
        assert_eq!(self.cols, o.rows, "shape mismatch in product");
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        let p = a * b;
                        out[(i, j)] += &p;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q3]) -> Vec<Q3> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut acc = Q3::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn commutator(&self, o: &Mat) -> Mat {
        self.mul(o).sub(&o.mul(self))
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Mat]) -> Mat {
        let cols = blocks.first().map_or(0, |m| m.cols);
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols);
            rows += b.rows;
            data.extend(b.data.iter().cloned());
        }
        Mat { rows, cols, data }
    }

    /// Reduced row-echelon form and the pivot columns.
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut rows = self.row_vecs();
        let pivots = rref_rows(&mut rows, self.cols);
        rows.truncate(pivots.len());
        let m = if rows.is_empty() {
            Mat::zeros(0, self.cols)
        } else {
            Mat::from_rows(rows)
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.row_vecs();
        rref_rows(&mut rows, self.cols).len()
    }

    /// Basis of the right kernel `{x : self · x = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Q3>> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut out = Vec::new();
        for free in (0..n).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Q3::zero(); n];
            v[free] = Q3::one();
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -&r[(k, free)];
            }
            out.push(v);
        }
        out
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn det_bareiss(&self) -> Q3 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Q3::one();
        }
        let mut a = self.row_vecs();
        let mut sign = Q3::one();
        let mut prev = Q3::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return Q3::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = &num / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        &sign * &a[n - 1][n - 1]
    }

    /// Solve `self · x = b` for one particular solution.
    pub fn solve(&self, b: &[Q3]) -> Option<Vec<Q3>> {
        assert_eq!(b.len(), self.rows);
        let mut rows: Vec<Vec<Q3>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_rows(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Q3::zero(); self.cols];
        for (k, &p) in pivots.iter().enumerate() {
            x[p] = rows[k][self.cols].clone();
        }
        Some(x)
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = Q3;
    fn index(&self, (r, c): (usize, usize)) -> &Q3 {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Q3 {
        &mut self.data[r * self.cols + c]
    }
}

/// In-place Gauss-Jordan; rows `0..pivots.len()` hold the reduced basis.
fn rref_rows(rows: &mut [Vec<Q3>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x * &inv;
                }
            }
        }
        let support: Vec<usize> = (0..ncols).filter(|&j| !rows[r][j].is_zero()).collect();
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &support {
                let d = &f * &pivot_row[j];
                row[j] -= &d;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn dot(a: &[Q3], b: &[Q3]) -> Q3 {
    assert_eq!(a.len(), b.len());
    let mut acc = Q3::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

pub fn axpy(y: &mut [Q3], a: &Q3, x: &[Q3]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi += &(a * xi);
        }
    }
}

/// Linear subspace of Q(√3)ⁿ with the standard dot product as inner product.
///
/// The basis is kept in reduced row-echelon form, so equality of spans is
/// equality of bases and coordinates can be read off at the pivot columns.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Q3>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::span(ambient, Mat::identity(ambient).row_vecs())
    }

    pub fn span(ambient: usize, vectors: Vec<Vec<Q3>>) -> Self {
        let mut rows: Vec<Vec<Q3>> = vectors;
        assert!(
            rows.iter().all(|v| v.len() == ambient),
            "vector length differs from ambient"
        );
        let pivots = rref_rows(&mut rows, ambient);
        rows.truncate(pivots.len());
        Subspace {
            ambient,
            basis: rows,
            pivots,
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Q3>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    fn check(&self, o: &Subspace) -> Result<()> {
        if self.ambient != o.ambient {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.ambient, o.ambient)));
        }
        Ok(())
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &[Q3]) -> Option<Vec<Q3>> {
        let c: Vec<Q3> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut r = v.to_vec();
        for (ci, b) in c.iter().zip(&self.basis) {
            axpy(&mut r, &-ci, b);
        }
        r.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[Q3]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_subspace(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && o.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        let mut v = self.basis.clone();
        v.extend(o.basis.iter().cloned());
        Ok(Subspace::span(self.ambient, v))
    }

    /// Exact intersection through the kernel of `[A | B]`.
    pub fn intersect(&self, o: &Subspace) -> Result<Subspace> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        let mut cols = self.basis.clone();
        cols.extend(o.basis.iter().cloned());
        let m = Mat::from_cols(&cols, self.ambient);
        let vectors = m
            .kernel()
            .into_iter()
            .map(|k| {
                let mut v = vec![Q3::zero(); self.ambient];
                for (c, b) in k.iter().zip(&self.basis) {
                    axpy(&mut v, c, b);
                }
                v
            })
            .collect();
        Ok(Subspace::span(self.ambient, vectors))
    }

    pub fn orth_complement(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient);
        }
        let m = Mat::from_rows(self.basis.clone());
        Subspace::span(self.ambient, m.kernel())
    }

    /// Orthogonal projection of `v` onto this subspace.
    pub fn project(&self, v: &[Q3]) -> Vec<Q3> {
        if self.is_zero() {
            return vec![Q3::zero(); self.ambient];
        }
        let b = Mat::from_rows(self.basis.clone());
        let gram = b.mul(&b.transpose());
        let rhs = b.mul_vec(v);
        let c = gram.solve(&rhs).expect("Gram matrix of a basis is invertible");
        let mut out = vec![Q3::zero(); self.ambient];
        for (ci, bi) in c.iter().zip(&self.basis) {
            axpy(&mut out, ci, bi);
        }
        out
    }

    /// Image of `o` under orthogonal projection onto this subspace.
    pub fn project_subspace(&self, o: &Subspace) -> Subspace {
        Subspace::span(self.ambient, o.basis.iter().map(|v| self.project(v)).collect())
    }

    /// Orthogonal complement of `inner` inside `self`.
    pub fn relative_complement(&self, inner: &Subspace) -> Result<Subspace> {
        self.check(inner)?;
        self.intersect(&inner.orth_complement())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q3 {
        Q3::from_int(n)
    }

    fn v(xs: &[i64]) -> Vec<Q3> {
        xs.iter().map(|&x| q(x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let m = Mat::from_rows(vec![v(&[1, 2, 3]), v(&[2, 4, 6]), v(&[1, 0, 1])]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Zero::is_zero));
    }

    #[test]
    fn bareiss_matches_cofactor() {
        let m = Mat::from_rows(vec![v(&[2, 0, 1]), v(&[1, 3, 2]), v(&[1, 1, 1])]);
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(m.det_bareiss(), q(0));
        let m = Mat::from_rows(vec![v(&[0, 1]), v(&[1, 0])]);
        assert_eq!(m.det_bareiss(), q(-1));
        let s = Q3::sqrt3();
        let m = Mat::from_rows(vec![vec![s.clone(), q(1)], vec![q(1), s]]);
        assert_eq!(m.det_bareiss(), q(2));
    }

    #[test]
    fn subspace_lattice_laws() {
        let a = Subspace::span(4, vec![v(&[1, 0, 0, 0]), v(&[0, 1, 1, 0])]);
        let b = Subspace::span(4, vec![v(&[0, 1, 1, 0]), v(&[0, 0, 0, 1])]);
        let i = a.intersect(&b).unwrap();
        let s = a.sum(&b).unwrap();
        assert_eq!(i.dim(), 1);
        assert_eq!(a.dim() + b.dim(), i.dim() + s.dim());
        assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert_eq!(a.orth_complement().orth_complement(), a);
        assert!(a.intersect(&Subspace::zero(4)).unwrap().is_zero());
        assert!(a.intersect(&Subspace::zero(5)).is_err());
    }

    #[test]
    fn projection_is_orthogonal() {
        let a = Subspace::span(3, vec![v(&[1, 1, 0])]);
        let p = a.project(&v(&[1, 0, 0]));
        assert_eq!(p, vec![Q3::from_ratio(1, 2), Q3::from_ratio(1, 2), q(0)]);
        let r: Vec<Q3> = v(&[1, 0, 0]).iter().zip(&p).map(|(x, y)| x - y).collect();
        assert!(dot(&r, &a.basis()[0]).is_zero());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = Mat::from_rows(vec![v(&[1, 1]), v(&[2, 2])]);
        assert!(m.solve(&v(&[1, 3])).is_none());
        assert!(m.solve(&v(&[1, 2])).is_some());
    }
}
