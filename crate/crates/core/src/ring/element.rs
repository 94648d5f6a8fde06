use std::fmt;

use super::spec::{Component, RingSpec};
use crate::error::{Error, Result};
use crate::linalg::{Mat, PrimeField};

/// An element of a product of matrix rings: one square matrix per factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingElement {
    parts: Vec<Mat>,
}

impl RingElement {
    /// Wraps matrices as an element. Every part must be square.
    pub fn from_parts(parts: Vec<Mat>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::Precondition(
                "an element needs at least one component".into(),
            ));
        }
        if let Some(m) = parts.iter().find(|m| !m.is_square()) {
            return Err(Error::DimensionMismatch(format!(
                "non-square component {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self { parts })
    }

    pub fn from_mat(m: Mat) -> Self {
        Self::from_parts(vec![m]).expect("square matrix")
    }

    pub fn parts(&self) -> &[Mat] {
        &self.parts
    }

    pub fn into_parts(self) -> Vec<Mat> {
        self.parts
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec::new(
            self.parts
                .iter()
                .map(|m| Component {
                    n: m.rows(),
                    field: m.field(),
                })
                .collect(),
        )
        .expect("parts are nonempty and square")
    }

    pub fn zero(spec: &RingSpec) -> Self {
        Self {
            parts: spec
                .components()
                .iter()
                .map(|c| Mat::zeros(c.field, c.n, c.n))
                .collect(),
        }
    }

    pub fn one(spec: &RingSpec) -> Self {
        Self {
            parts: spec
                .components()
                .iter()
                .map(|c| Mat::identity(c.field, c.n))
                .collect(),
        }
    }

    pub fn same_spec(&self, other: &Self) -> bool {
        self.parts.len() == other.parts.len()
            && self
                .parts
                .iter()
                .zip(&other.parts)
                .all(|(a, b)| a.rows() == b.rows() && a.field() == b.field())
    }

    fn check_spec(&self, other: &Self) -> Result<()> {
        if self.same_spec(other) {
            Ok(())
        } else {
            Err(Error::SpecMismatch {
                left: self.spec().to_string(),
                right: other.spec().to_string(),
            })
        }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Mat, &Mat) -> Mat) -> Result<Self> {
        self.check_spec(other)?;
        Ok(Self {
            parts: self
                .parts
                .iter()
                .zip(&other.parts)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    fn map(&self, f: impl Fn(&Mat) -> Mat) -> Self {
        Self {
            parts: self.parts.iter().map(f).collect(),
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).unwrap()
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.try_sub(other).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).unwrap()
    }

    pub fn neg(&self) -> Self {
        self.map(|m| -m)
    }

    /// `1 - self`.
    pub fn one_minus(&self) -> Self {
        Self::one(&self.spec()).sub(self)
    }

    pub fn pow(&self, k: u64) -> Self {
        self.map(|m| m.pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Mat::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.parts
            .iter()
            .all(|m| *m == Mat::identity(m.field(), m.rows()))
    }

    /// Canonical inner inverse `a'`, componentwise.
    pub fn quasi_inverse(&self) -> Self {
        self.map(Mat::inner_inverse)
    }

    /// `a+ = a' a a'`, a reflexive inverse of `a`.
    pub fn reflexive(&self) -> Self {
        let q = self.quasi_inverse();
        q.mul(self).mul(&q)
    }

    /// `gamma(a) = a a+`, an idempotent with the same right ideal as `a`.
    pub fn gamma(&self) -> Self {
        self.mul(&self.reflexive())
    }

    pub fn is_idempotent(&self) -> bool {
        self.mul(self) == *self
    }

    pub fn is_unit(&self) -> bool {
        self.parts.iter().all(|m| m.rank() == m.rows())
    }

    pub fn unit_inverse(&self) -> Result<Self> {
        let parts = self
            .parts
            .iter()
            .map(|m| m.inverse().ok_or(Error::NotAUnit))
            .collect::<Result<_>>()?;
        Ok(Self { parts })
    }

    /// Per-component ranks.
    pub fn ranks(&self) -> Vec<usize> {
        self.parts.iter().map(Mat::rank).collect()
    }

    /// Idempotent generating `xR + yR`: with `f = gamma(x)` and
    /// `g = gamma((1-f) y)` this is `f + g (1-f)`.
    pub fn join(&self, y: &Self) -> Self {
        let f = self.gamma();
        let g = f.one_minus().mul(y).gamma();
        f.add(&g.mul(&f.one_minus()))
    }

    /// Idempotent generating `xR ∩ yR`: `gamma(y (1 - c+ c))` with
    /// `c = (1 - gamma(x)) y`.
    pub fn meet(&self, y: &Self) -> Self {
        let c = self.gamma().one_minus().mul(y);
        let k = c.reflexive().mul(&c).one_minus();
        y.mul(&k).gamma()
    }

    /// `e - g e`. For idempotents with `gR ⊆ eR` the result is an
    /// idempotent whose ideal is a complement of `gR` in `eR`.
    pub fn ominus(&self, g: &Self) -> Self {
        self.sub(&g.mul(self))
    }

    /// Parses `;`-separated components, each either in matrix format
    /// `p:RxC:[e,...]` or a bare row-major comma list.
    pub fn parse(spec: &RingSpec, text: &str) -> Result<Self> {
        let chunks: Vec<&str> = text.split(';').collect();
        if chunks.len() != spec.components().len() {
            return Err(Error::Parse {
                pos: 0,
                msg: format!(
                    "expected {} components, found {}",
                    spec.components().len(),
                    chunks.len()
                ),
            });
        }
        let mut offset = 0;
        let mut parts = Vec::new();
        for (chunk, comp) in chunks.iter().zip(spec.components()) {
            parts.push(parse_matrix(chunk, *comp, offset)?);
            offset += chunk.len() + 1;
        }
        Self::from_parts(parts)
    }
}

fn parse_matrix(text: &str, comp: Component, offset: usize) -> Result<Mat> {
    let trimmed = text.trim();
    let lead = offset + (text.len() - text.trim_start().len());
    let perr = |pos: usize, msg: String| Error::Parse {
        pos: lead + pos,
        msg,
    };
    let (body, body_at) = if let Some(open) = trimmed.find('[') {
        let header = &trimmed[..open];
        let mut it = header.trim_end_matches(':').splitn(2, ':');
        let p: u32 = it
            .next()
            .unwrap_or("")
            .trim()
            .parse()
            .map_err(|_| perr(0, "bad prime".into()))?;
        let shape = it.next().ok_or_else(|| perr(0, "missing shape".into()))?;
        let (r, c) = shape
            .split_once('x')
            .ok_or_else(|| perr(0, "shape must be RxC".into()))?;
        let r: usize = r
            .trim()
            .parse()
            .map_err(|_| perr(0, "bad row count".into()))?;
        let c: usize = c
            .trim()
            .parse()
            .map_err(|_| perr(0, "bad column count".into()))?;
        if p != comp.field.p() as u32 || r != comp.n || c != comp.n {
            return Err(perr(
                0,
                format!(
                    "matrix {p}:{r}x{c} does not match component M{}(F{})",
                    comp.n,
                    comp.field.p()
                ),
            ));
        }
        let close = trimmed
            .rfind(']')
            .ok_or_else(|| perr(trimmed.len(), "missing `]`".into()))?;
        (&trimmed[open + 1..close], open + 1)
    } else {
        (trimmed, 0)
    };
    let mut entries = Vec::new();
    let mut at = body_at;
    for tok in body.split(',') {
        let v: i64 = tok
            .trim()
            .parse()
            .map_err(|_| perr(at, format!("bad entry `{}`", tok.trim())))?;
        if v < 0 || v >= comp.field.p() as i64 {
            return Err(perr(
                at,
                format!("entry {v} out of range for F{}", comp.field.p()),
            ));
        }
        entries.push(v as u8);
        at += tok.len() + 1;
    }
    if entries.len() != comp.n * comp.n {
        return Err(perr(
            0,
            format!(
                "expected {} entries, found {}",
                comp.n * comp.n,
                entries.len()
            ),
        ));
    }
    Mat::new(comp.field, comp.n, comp.n, entries)
}

impl serde::Serialize for RingElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Components in matrix format, joined by `;`.
impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// Single-component element from a row-major entry list.
pub fn mat_elem(p: u32, n: usize, entries: &[i64]) -> RingElement {
    let field = PrimeField::new(p).expect("prime");
    RingElement::from_mat(Mat::from_i64(field, n, n, entries).expect("entry count"))
}
