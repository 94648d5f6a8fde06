//! Subspaces of `GF(p)^n` kept as canonical RREF row bases.

use std::fmt;

use rand::Rng;

use super::field::PrimeField;
use super::mat::Mat;
use crate::error::{Error, Result};

/// A subspace of `GF(p)^n`. The basis is the nonzero part of an RREF, so two
/// subspaces are equal exactly when their representations are.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: PrimeField,
    ambient: usize,
    // dim x ambient, reduced row echelon, no zero rows
    basis: Mat,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            basis: Mat::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            field,
            ambient,
            basis: Mat::identity(field, ambient),
        }
    }

    /// Row space of `m` (each row is a vector of length `m.cols()`).
    pub fn row_space(m: &Mat) -> Self {
        let r = m.rref();
        let keep: Vec<usize> = (0..r.rank).collect();
        Self {
            field: m.field(),
            ambient: m.cols(),
            basis: r.reduced.select_rows(&keep),
        }
    }

    pub fn column_space(m: &Mat) -> Self {
        Self::row_space(&m.transpose())
    }

    /// Span of a list of vectors; entries are taken mod p.
    pub fn span(field: PrimeField, ambient: usize, vectors: &[Vec<u8>]) -> Self {
        for v in vectors {
            assert_eq!(
                v.len(),
                ambient,
                "vector length must equal ambient dimension"
            );
        }
        let m = Mat::from_fn(field, vectors.len(), ambient, |i, j| vectors[i][j]);
        Self::row_space(&m)
    }

    /// Span of the standard basis vectors with the given indices.
    pub fn coordinate(field: PrimeField, ambient: usize, idx: &[usize]) -> Self {
        let m = Mat::from_fn(field, idx.len(), ambient, |i, j| (idx[i] == j) as u8);
        Self::row_space(&m)
    }

    /// Rebuilds from a stored basis, checking that it is already canonical.
    pub fn from_basis_rows(field: PrimeField, ambient: usize, rows: &[Vec<u8>]) -> Result<Self> {
        let mut data = Vec::new();
        for r in rows {
            if r.len() != ambient {
                return Err(Error::DimensionMismatch(format!(
                    "basis row of length {} in ambient dimension {ambient}",
                    r.len()
                )));
            }
            data.extend_from_slice(r);
        }
        let m = Mat::new(field, rows.len(), ambient, data)?;
        let s = Self::row_space(&m);
        if s.basis != m {
            return Err(Error::Precondition(
                "basis rows are not in reduced echelon form".into(),
            ));
        }
        Ok(s)
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis as a `dim x ambient` matrix (rows are basis vectors).
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<u8>> {
        (0..self.dim())
            .map(|i| self.basis.row(i).to_vec())
            .collect()
    }

    /// Basis as an `ambient x dim` matrix (columns are basis vectors).
    pub fn basis_columns(&self) -> Mat {
        self.basis.transpose()
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.field != other.field || self.ambient != other.ambient {
            return Err(Error::DimensionMismatch(format!(
                "subspaces of {}^{} and {}^{}",
                self.field, self.ambient, other.field, other.ambient
            )));
        }
        Ok(())
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        let extended = Self::span(self.field, self.ambient, &[v.to_vec()]);
        extended.leq(self).unwrap_or(false)
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.compatible(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(other.sum(self)?.dim() == other.dim())
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        Ok(Self::row_space(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection through the kernel of `[U^T | -V^T]`: a kernel vector
    /// `(s, t)` gives the common vector `s U = t V`.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let f = self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(f, self.ambient));
        }
        let k = self.dim();
        let stacked = self
            .basis
            .transpose()
            .hstack(&(-&other.basis).transpose())?;
        let kernel = stacked.kernel_basis();
        let coeffs = kernel.basis.select_cols(&(0..k).collect::<Vec<_>>());
        Ok(Self::row_space(&(&coeffs * &self.basis)))
    }

    /// A complement of `self` inside `w`: greedily adds basis rows of `w`
    /// that are not yet in the span.
    pub fn extend_to_complement(&self, w: &Self) -> Result<Self> {
        if !self.leq(w)? {
            return Err(Error::NotContained);
        }
        let mut current = self.clone();
        let mut chosen = Vec::new();
        for row in w.basis_rows() {
            if current.dim() == w.dim() {
                break;
            }
            let next = current.sum(&Self::span(
                self.field,
                self.ambient,
                std::slice::from_ref(&row),
            ))?;
            if next.dim() > current.dim() {
                chosen.push(row);
                current = next;
            }
        }
        Ok(Self::span(self.field, self.ambient, &chosen))
    }

    /// Complement of `self` in the whole space.
    pub fn complement(&self) -> Self {
        self.extend_to_complement(&Self::full(self.field, self.ambient))
            .expect("every subspace lies in the full space")
    }

    /// Matrix of the projection onto `self` along `kernel`; the two must be
    /// complementary.
    pub fn projection_along(&self, kernel: &Self) -> Result<Mat> {
        self.compatible(kernel)?;
        if self.dim() + kernel.dim() != self.ambient || !self.intersect(kernel)?.is_zero() {
            return Err(Error::Precondition(
                "projection needs complementary subspaces".into(),
            ));
        }
        let n = self.ambient;
        let b = self.basis_columns().hstack(&kernel.basis_columns())?;
        let binv = b
            .inverse()
            .expect("complementary bases form an invertible matrix");
        let keep = Mat::from_fn(self.field, n, n, |i, j| (i == j && i < self.dim()) as u8);
        Ok(&(&b * &keep) * &binv)
    }

    /// Image of the subspace under a linear map given by an
    /// `m x ambient` matrix.
    pub fn image_under(&self, map: &Mat) -> Self {
        Self::column_space(&(map * &self.basis_columns()))
    }

    /// Uniformly random vectors spanning a subspace; dimensions up to `max_gens`.
    pub fn random<R: Rng + ?Sized>(
        field: PrimeField,
        ambient: usize,
        gens: usize,
        rng: &mut R,
    ) -> Self {
        let p = field.p();
        let m = Mat::from_fn(field, gens, ambient, |_, _| rng.gen_range(0..p));
        Self::row_space(&m)
    }

    /// Random subspace of exactly the given dimension.
    pub fn random_of_dim<R: Rng + ?Sized>(
        field: PrimeField,
        ambient: usize,
        dim: usize,
        rng: &mut R,
    ) -> Self {
        assert!(dim <= ambient);
        loop {
            let s = Self::random(field, ambient, dim, rng);
            if s.dim() == dim {
                return s;
            }
        }
    }

    /// Random subspace `s` with `lo <= s <= hi`.
    pub fn random_between<R: Rng + ?Sized>(lo: &Self, hi: &Self, rng: &mut R) -> Result<Self> {
        let c = lo.extend_to_complement(hi)?;
        let k = c.dim();
        let p = lo.field.p();
        let coeffs = Mat::from_fn(lo.field, k, k, |_, _| rng.gen_range(0..p));
        let part = Self::row_space(&(&coeffs * &c.basis));
        lo.sum(&part)
    }

    /// Every subspace of `GF(p)^n`, ordered by dimension, then pivot set, then
    /// free entries.
    pub fn enumerate_all(field: PrimeField, ambient: usize) -> Vec<Self> {
        let mut out = Vec::new();
        for k in 0..=ambient {
            for pivots in combinations(ambient, k) {
                // free positions: row i, column j > pivots[i], j not a pivot
                let free: Vec<(usize, usize)> = (0..k)
                    .flat_map(|i| {
                        let pv = &pivots;
                        (pv[i] + 1..ambient)
                            .filter(move |j| !pv.contains(j))
                            .map(move |j| (i, j))
                    })
                    .collect();
                let p = field.p() as usize;
                let total = p.pow(free.len() as u32);
                for code in 0..total {
                    let mut m = Mat::zeros(field, k, ambient);
                    for (i, &pc) in pivots.iter().enumerate() {
                        m.set(i, pc, 1);
                    }
                    let mut c = code;
                    for &(i, j) in free.iter().rev() {
                        m.set(i, j, (c % p) as u8);
                        c /= p;
                    }
                    out.push(Self {
                        field,
                        ambient,
                        basis: m,
                    });
                }
            }
        }
        out
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for i in 0..self.dim() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let row: Vec<String> = self.basis.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "({})", row.join(","))?;
        }
        f.write_str(">")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn sum_and_intersect_examples() {
        let f = gf(2);
        let e1 = Subspace::coordinate(f, 2, &[0]);
        let e2 = Subspace::coordinate(f, 2, &[1]);
        assert_eq!(e1.sum(&e1).unwrap(), e1);
        assert_eq!(e1.intersect(&e1).unwrap(), e1);
        assert!(e1.sum(&e2).unwrap().is_full());
        assert!(e1.intersect(&e2).unwrap().is_zero());

        let u = Subspace::span(f, 3, &[vec![1, 1, 0]]);
        let v = Subspace::coordinate(f, 3, &[0]);
        assert_eq!(u.sum(&v).unwrap(), Subspace::coordinate(f, 3, &[0, 1]));
        assert!(u.intersect(&v).unwrap().is_zero());
        assert!(u.sum(&Subspace::zero(f, 2)).is_err());
    }

    #[test]
    fn sum_enumerates_seven_vectors() {
        let f = gf(2);
        let s = Subspace::span(f, 3, &[vec![1, 1, 0], vec![1, 0, 0]]);
        let count = (1..8u8)
            .map(|c| vec![c & 1, (c >> 1) & 1, (c >> 2) & 1])
            .filter(|v| s.contains(v))
            .count();
        assert_eq!(count, 3);
    }

    #[test]
    fn complement_examples() {
        let f = gf(2);
        let w = Subspace::full(f, 2);
        assert_eq!(Subspace::zero(f, 2).extend_to_complement(&w).unwrap(), w);
        assert!(w.extend_to_complement(&w).unwrap().is_zero());
        let e1 = Subspace::coordinate(f, 2, &[0]);
        assert_eq!(
            e1.extend_to_complement(&w).unwrap(),
            Subspace::coordinate(f, 2, &[1])
        );
        assert_eq!(w.extend_to_complement(&e1), Err(Error::NotContained));
    }

    #[test]
    fn modular_dimension_formula_and_law() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10_000 {
            let p = if rng.gen_bool(0.5) { 2 } else { 3 };
            let f = gf(p);
            let n = rng.gen_range(1..=5);
            let u = Subspace::random(f, n, rng.gen_range(0..=n), &mut rng);
            let v = Subspace::random(f, n, rng.gen_range(0..=n), &mut rng);
            let s = u.sum(&v).unwrap();
            let i = u.intersect(&v).unwrap();
            assert_eq!(s.dim() + i.dim(), u.dim() + v.dim());
            assert!(i.leq(&u).unwrap() && i.leq(&v).unwrap());
            // b <= a  =>  a(b + c) = b + ac
            let c = Subspace::random(f, n, rng.gen_range(0..=n), &mut rng);
            let (a, b) = (s, u);
            let lhs = a.intersect(&b.sum(&c).unwrap()).unwrap();
            let rhs = b.sum(&a.intersect(&c).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn projection_is_idempotent_with_right_image_and_kernel() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let f = gf(3);
        for _ in 0..200 {
            let u = Subspace::random(f, 4, 2, &mut rng);
            let k = u.complement();
            let pm = u.projection_along(&k).unwrap();
            assert_eq!(&pm * &pm, pm);
            assert_eq!(pm.image_basis(), u);
            assert_eq!(pm.kernel_basis(), k);
        }
    }

    #[test]
    fn enumeration_counts() {
        // Gaussian binomial sums: number of subspaces of GF(2)^n
        let counts: Vec<usize> = (0..=4)
            .map(|n| Subspace::enumerate_all(gf(2), n).len())
            .collect();
        assert_eq!(counts, vec![1, 2, 5, 16, 67]);
        assert_eq!(Subspace::enumerate_all(gf(3), 2).len(), 6);
        let all = Subspace::enumerate_all(gf(2), 3);
        let set: std::collections::HashSet<_> = all.iter().collect();
        assert_eq!(set.len(), all.len());
        for s in &all {
            assert_eq!(&Subspace::row_space(s.basis()), s);
        }
    }
}
