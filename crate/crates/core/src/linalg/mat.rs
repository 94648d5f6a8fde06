//! Dense matrices over a prime field.
//!
//! Entries are stored row-major as residues `0..p`. Operator impls on
//! references (`&a * &b`, `&a + &b`) panic on shape mismatch; the `try_*`
//! methods return [`Error::DimensionMismatch`] instead.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::PrimeField;
use super::subspace::Subspace;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

/// Result of Gauss-Jordan elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn new(field: PrimeField, rows: usize, cols: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(&bad) = data.iter().find(|&&v| v >= field.p()) {
            return Err(Error::EntryOutOfRange {
                value: bad as u32,
                p: field.p(),
            });
        }
        Ok(Self {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Builds from arbitrary integers, reducing each mod p.
    pub fn from_i64(field: PrimeField, rows: usize, cols: usize, data: &[i64]) -> Result<Self> {
        let data = data.iter().map(|&v| field.reduce(v)).collect();
        Self::new(field, rows, cols, data)
    }

    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Matrix unit E_ij (0-based indices).
    pub fn unit(field: PrimeField, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        m.set(i, j, 1);
        m
    }

    pub fn from_fn(
        field: PrimeField,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j) % field.p());
            }
        }
        Self {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(field: PrimeField, rows: usize, columns: &[Vec<u8>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |i, j| columns[j][i])
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Row-major entries.
    #[inline]
    pub fn entries(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.data[i * self.cols + j] = v % self.field.p();
    }

    pub fn row(&self, i: usize) -> &[u8] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u8> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(mismatch("hstack", self, other));
        }
        Ok(Mat::from_fn(
            self.field,
            self.rows,
            self.cols + other.cols,
            |i, j| {
                if j < self.cols {
                    self.get(i, j)
                } else {
                    other.get(i, j - self.cols)
                }
            },
        ))
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(mismatch("vstack", self, other));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimensionMismatch(format!(
                "fields {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch("add", self, other));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Ok(Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_sub(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(mismatch("sub", self, other));
        }
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Ok(Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(mismatch("mul", self, other));
        }
        let p = self.field.p() as u32;
        let (n, m, k) = (self.rows, other.cols, self.cols);
        let mut acc = vec![0u32; n * m];
        for i in 0..n {
            for l in 0..k {
                let a = self.data[i * k + l] as u32;
                if a == 0 {
                    continue;
                }
                let row = &other.data[l * m..(l + 1) * m];
                let out = &mut acc[i * m..(i + 1) * m];
                for (o, &b) in out.iter_mut().zip(row) {
                    *o += a * b as u32;
                }
            }
            // entries are < 251, so k * 250^2 stays far below u32::MAX for k < 60000
            for o in &mut acc[i * m..(i + 1) * m] {
                *o %= p;
            }
        }
        Ok(Mat {
            field: self.field,
            rows: n,
            cols: m,
            data: acc.into_iter().map(|v| v as u8).collect(),
        })
    }

    pub fn scale(&self, c: u8) -> Mat {
        let f = self.field;
        Mat {
            data: self.data.iter().map(|&v| f.mul(v, c)).collect(),
            ..self.clone()
        }
    }

    pub fn pow(&self, mut k: u64) -> Mat {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut base = self.clone();
        let mut acc = Mat::identity(self.field, self.rows);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Reduced row echelon form via Gauss-Jordan elimination.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = f.inv(m.get(r, c)).expect("nonzero pivot");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                let factor = m.get(i, c);
                if i != r && factor != 0 {
                    m.sub_row_multiple(i, r, factor);
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            reduced: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, r: usize, c: u8) {
        let f = self.field;
        for v in &mut self.data[r * self.cols..(r + 1) * self.cols] {
            *v = f.mul(*v, c);
        }
    }

    // row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: u8) {
        let f = self.field;
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j];
            let t = &mut self.data[target * self.cols + j];
            *t = f.sub(*t, f.mul(factor, s));
        }
    }

    /// Solves `self * x = b`. Free variables are set to zero, so the
    /// returned solution is canonical. `Ok(None)` when inconsistent.
    pub fn solve_right(&self, b: &Mat) -> Result<Option<Mat>> {
        self.same_field(b)?;
        if self.rows != b.rows {
            return Err(mismatch("solve_right", self, b));
        }
        let aug = self.hstack(b)?;
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zeros(self.field, self.cols, b.cols);
        for (i, &c) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(c, j, reduced.get(i, self.cols + j));
            }
        }
        Ok(Some(x))
    }

    /// Null space `{v : self * v = 0}` as a subspace of `F^cols`.
    pub fn kernel_basis(&self) -> Subspace {
        let f = self.field;
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let mut vectors = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0u8; self.cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(reduced.get(i, free));
            }
            vectors.push(v);
        }
        Subspace::span(f, self.cols, &vectors)
    }

    /// Column space as a subspace of `F^rows`.
    pub fn image_basis(&self) -> Subspace {
        Subspace::column_space(self)
    }

    /// Two-sided inverse, if the matrix is square and nonsingular.
    pub fn inverse(&self) -> Option<Mat> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n)).ok()?;
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Mat::from_fn(self.field, n, n, |i, j| reduced.get(i, n + j)))
    }

    /// Canonical inner inverse `g` with `a g a = a`.
    ///
    /// Built from the rank factorization `a = C F`, where `F` is the nonzero
    /// part of `rref(a)` and `C` the pivot columns of `a`. `F` gets the right
    /// inverse that places the identity on the pivot rows, and `C` the left
    /// inverse supported on its first independent rows. The result is also a
    /// reflexive inverse (`g a g = g`), equals `a^{-1}` for invertible `a`,
    /// and is zero for the zero matrix.
    pub fn inner_inverse(&self) -> Mat {
        let f = self.field;
        let Rref { pivots, rank, .. } = self.rref();
        if rank == 0 {
            return Mat::zeros(f, self.cols, self.rows);
        }
        let c = self.select_cols(&pivots);
        // first independent rows of C are the pivot columns of C^T
        let rows = c.transpose().rref().pivots;
        let c_inv = c
            .select_rows(&rows)
            .inverse()
            .expect("independent rows form an invertible block");
        let mut left = Mat::zeros(f, rank, self.rows);
        for i in 0..rank {
            for (k, &r) in rows.iter().enumerate() {
                left.set(i, r, c_inv.get(i, k));
            }
        }
        let mut right = Mat::zeros(f, self.cols, rank);
        for (i, &pc) in pivots.iter().enumerate() {
            right.set(pc, i, 1);
        }
        &right * &left
    }
}

fn mismatch(op: &str, a: &Mat, b: &Mat) -> Error {
    Error::DimensionMismatch(format!(
        "{op}: {}x{} and {}x{}",
        a.rows, a.cols, b.rows, b.cols
    ))
}

impl Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        let f = self.field;
        Mat {
            data: self.data.iter().map(|&v| f.neg(v)).collect(),
            ..self.clone()
        }
    }
}

/// `p:RxC:[e,e,...]`, row-major.
impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}x{}:[", self.field.p(), self.rows, self.cols)?;
        for (i, v) in self.data.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn m2(p: u32, e: [u8; 4]) -> Mat {
        Mat::new(gf(p), 2, 2, e.to_vec()).unwrap()
    }

    fn all_m2(p: u32) -> Vec<Mat> {
        let p8 = p as u8;
        let mut out = Vec::new();
        for a in 0..p8 {
            for b in 0..p8 {
                for c in 0..p8 {
                    for d in 0..p8 {
                        out.push(m2(p, [a, b, c, d]));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn rref_examples() {
        let id = Mat::identity(gf(2), 2);
        let r = id.rref();
        assert_eq!((r.reduced, r.rank, r.pivots), (id.clone(), 2, vec![0, 1]));

        let z = Mat::zeros(gf(2), 3, 3);
        let r = z.rref();
        assert_eq!((r.reduced, r.rank, r.pivots), (z, 0, vec![]));

        let r = m2(2, [1, 1, 1, 1]).rref();
        assert_eq!(r.reduced, m2(2, [1, 1, 0, 0]));
        assert_eq!(r.rank, 1);
    }

    #[test]
    fn new_validates() {
        assert!(Mat::new(gf(3), 2, 2, vec![0, 1, 2]).is_err());
        assert!(Mat::new(gf(3), 1, 2, vec![0, 3]).is_err());
    }

    #[test]
    fn solve_right_examples() {
        let b = m2(3, [2, 1, 0, 2]);
        assert_eq!(Mat::identity(gf(3), 2).solve_right(&b).unwrap(), Some(b));
        let z = Mat::zeros(gf(2), 2, 2);
        assert_eq!(z.solve_right(&z).unwrap(), Some(z.clone()));

        // E12 x = E11 is solved by E21; E12 x = E22 has no solution among all 16
        let e12 = Mat::unit(gf(2), 2, 0, 1);
        let e11 = Mat::unit(gf(2), 2, 0, 0);
        let e22 = Mat::unit(gf(2), 2, 1, 1);
        assert_eq!(
            e12.solve_right(&e11).unwrap(),
            Some(Mat::unit(gf(2), 2, 1, 0))
        );
        assert!(all_m2(2).iter().all(|x| &e12 * x != e22));
        assert_eq!(e12.solve_right(&e22).unwrap(), None);

        assert!(e12.solve_right(&Mat::zeros(gf(2), 3, 1)).is_err());
    }

    #[test]
    fn kernel_and_image() {
        let id = Mat::identity(gf(2), 2);
        assert_eq!(id.kernel_basis().dim(), 0);
        assert_eq!(id.image_basis().dim(), 2);
        let z = Mat::zeros(gf(2), 2, 2);
        assert_eq!(z.kernel_basis().dim(), 2);
        assert_eq!(z.image_basis().dim(), 0);

        let e12 = Mat::unit(gf(2), 2, 0, 1);
        let e1 = Subspace::span(gf(2), 2, &[vec![1, 0]]);
        assert_eq!(e12.kernel_basis(), e1);
        assert_eq!(e12.image_basis(), e1);
    }

    #[test]
    fn inner_inverse_examples() {
        assert_eq!(
            Mat::identity(gf(2), 2).inner_inverse(),
            Mat::identity(gf(2), 2)
        );
        assert_eq!(
            Mat::zeros(gf(2), 2, 2).inner_inverse(),
            Mat::zeros(gf(2), 2, 2)
        );

        // All inner inverses of E12 by brute force; canonical output must be among them.
        let e12 = Mat::unit(gf(2), 2, 0, 1);
        let inner: Vec<Mat> = all_m2(2)
            .into_iter()
            .filter(|g| &(&e12 * g) * &e12 == e12)
            .collect();
        assert_eq!(inner.len(), 8);
        let g = e12.inner_inverse();
        assert!(inner.contains(&g));
        assert_eq!(g, Mat::unit(gf(2), 2, 1, 0));
    }

    #[test]
    fn inner_inverse_exhaustive_small() {
        for p in [2, 3] {
            for a in all_m2(p) {
                let g = a.inner_inverse();
                assert_eq!(&(&a * &g) * &a, a);
                assert_eq!(&(&g * &a) * &g, g, "reflexive");
                if let Some(inv) = a.inverse() {
                    assert_eq!(g, inv);
                }
            }
        }
    }

    #[test]
    fn kernel_rank_nullity_and_inverse() {
        let f = gf(5);
        let a = Mat::from_i64(f, 3, 4, &[1, 2, 3, 4, 2, 4, 1, 0, 3, 1, 4, 4]).unwrap();
        assert_eq!(a.kernel_basis().dim() + a.rank(), 4);
        let b = Mat::from_i64(f, 2, 2, &[2, 1, 1, 1]).unwrap();
        let bi = b.inverse().unwrap();
        assert_eq!(&b * &bi, Mat::identity(f, 2));
        assert!(m2(2, [1, 1, 1, 1]).inverse().is_none());
    }

    #[test]
    fn display_format() {
        assert_eq!(m2(2, [0, 1, 0, 0]).to_string(), "2:2x2:[0,1,0,0]");
    }
}
