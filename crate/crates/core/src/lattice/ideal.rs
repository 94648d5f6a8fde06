use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::ring::{Component, RingElement, RingSpec};

/// A principal right ideal `aR`, stored as the column space of each
/// component of `a`. Equal ideals have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Ideal {
    spaces: Vec<Subspace>,
}

/// JSON form of one component of an ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealComponentJson {
    pub component: usize,
    pub dim: usize,
    pub basis: Vec<Vec<u8>>,
}

impl Ideal {
    pub fn of(a: &RingElement) -> Self {
        Self {
            spaces: a.parts().iter().map(Subspace::column_space).collect(),
        }
    }

    pub fn from_spaces(spaces: Vec<Subspace>) -> Result<Self> {
        if spaces.is_empty() {
            return Err(Error::Precondition(
                "an ideal needs at least one component".into(),
            ));
        }
        Ok(Self { spaces })
    }

    pub fn zero(spec: &RingSpec) -> Self {
        Self {
            spaces: spec
                .components()
                .iter()
                .map(|c| Subspace::zero(c.field, c.n))
                .collect(),
        }
    }

    pub fn full(spec: &RingSpec) -> Self {
        Self {
            spaces: spec
                .components()
                .iter()
                .map(|c| Subspace::full(c.field, c.n))
                .collect(),
        }
    }

    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn spec(&self) -> RingSpec {
        RingSpec::new(
            self.spaces
                .iter()
                .map(|s| Component {
                    n: s.ambient_dim(),
                    field: s.field(),
                })
                .collect(),
        )
        .expect("nonempty")
    }

    /// Sum of the component dimensions.
    pub fn height(&self) -> usize {
        self.spaces.iter().map(Subspace::dim).sum()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.spaces.iter().all(Subspace::is_zero)
    }

    fn zip(
        &self,
        other: &Self,
        f: impl Fn(&Subspace, &Subspace) -> Result<Subspace>,
    ) -> Result<Self> {
        if self.spaces.len() != other.spaces.len() {
            return Err(Error::SpecMismatch {
                left: self.spec().to_string(),
                right: other.spec().to_string(),
            });
        }
        let spaces = self
            .spaces
            .iter()
            .zip(&other.spaces)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()
            .map_err(|_| Error::SpecMismatch {
                left: self.spec().to_string(),
                right: other.spec().to_string(),
            })?;
        Ok(Self { spaces })
    }

    pub fn try_meet(&self, other: &Self) -> Result<Self> {
        self.zip(other, Subspace::intersect)
    }

    pub fn try_join(&self, other: &Self) -> Result<Self> {
        self.zip(other, Subspace::sum)
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.try_meet(other).unwrap()
    }

    pub fn join(&self, other: &Self) -> Self {
        self.try_join(other).unwrap()
    }

    pub fn try_leq(&self, other: &Self) -> Result<bool> {
        if self.spaces.len() != other.spaces.len() {
            return Err(Error::SpecMismatch {
                left: self.spec().to_string(),
                right: other.spec().to_string(),
            });
        }
        let mut all = true;
        for (a, b) in self.spaces.iter().zip(&other.spaces) {
            all &= a.leq(b)?;
        }
        Ok(all)
    }

    pub fn leq(&self, other: &Self) -> bool {
        self.try_leq(other).unwrap()
    }

    /// Canonical complement in the whole lattice.
    pub fn complement(&self) -> Self {
        Self {
            spaces: self.spaces.iter().map(Subspace::complement).collect(),
        }
    }

    /// `X` with `self ∩ X = lo` and `self + X = hi`, for `lo <= self <= hi`.
    pub fn relative_complement(&self, lo: &Self, hi: &Self) -> Result<Self> {
        if !lo.try_leq(self)? || !self.try_leq(hi)? {
            return Err(Error::IntervalViolation);
        }
        let spaces = self
            .spaces
            .iter()
            .zip(&lo.spaces)
            .zip(&hi.spaces)
            .map(|((a, l), h)| a.extend_to_complement(h)?.sum(l))
            .collect::<Result<_>>()?;
        Ok(Self { spaces })
    }

    /// Canonical idempotent generating the ideal: per component the
    /// projection onto the space along its canonical complement.
    pub fn idempotent(&self) -> RingElement {
        let parts = self
            .spaces
            .iter()
            .map(|s| s.projection_along(&s.complement()).expect("complementary"))
            .collect();
        RingElement::from_parts(parts).expect("square")
    }

    /// The ideal `a * self`.
    pub fn left_image(&self, a: &RingElement) -> Self {
        Self {
            spaces: self
                .spaces
                .iter()
                .zip(a.parts())
                .map(|(s, m)| s.image_under(m))
                .collect(),
        }
    }

    pub fn to_json(&self) -> Vec<IdealComponentJson> {
        self.spaces
            .iter()
            .enumerate()
            .map(|(i, s)| IdealComponentJson {
                component: i,
                dim: s.dim(),
                basis: s.basis_rows(),
            })
            .collect()
    }

    pub fn from_json(spec: &RingSpec, json: &[IdealComponentJson]) -> Result<Self> {
        if json.len() != spec.components().len() {
            return Err(Error::SpecMismatch {
                left: spec.to_string(),
                right: format!("{} components", json.len()),
            });
        }
        let spaces = json
            .iter()
            .zip(spec.components())
            .map(|(j, c)| {
                let s = Subspace::from_basis_rows(c.field, c.n, &j.basis)?;
                if s.dim() != j.dim {
                    return Err(Error::Precondition(format!(
                        "component {} declares dim {}",
                        j.component, j.dim
                    )));
                }
                Ok(s)
            })
            .collect::<Result<_>>()?;
        Ok(Self { spaces })
    }

    /// Element whose components have these spaces as column spaces
    /// (the basis vectors, padded with zero columns).
    pub fn generator(&self) -> RingElement {
        let parts = self
            .spaces
            .iter()
            .map(|s| {
                let cols = s.basis_columns();
                let n = s.ambient_dim();
                Mat::from_fn(s.field(), n, n, |i, j| {
                    if j < cols.cols() {
                        cols.get(i, j)
                    } else {
                        0
                    }
                })
            })
            .collect();
        RingElement::from_parts(parts).expect("square")
    }

    /// All ideals of the ring, component-major.
    pub fn enumerate_all(spec: &RingSpec) -> Vec<Self> {
        let mut out: Vec<Vec<Subspace>> = vec![Vec::new()];
        for c in spec.components() {
            let options = Subspace::enumerate_all(c.field, c.n);
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    options.iter().map(move |s| {
                        let mut v = prefix.clone();
                        v.push(s.clone());
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(|spaces| Self { spaces }).collect()
    }
}

impl Serialize for Ideal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, s) in self.spaces.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::mat_elem;

    fn m2() -> RingSpec {
        RingSpec::matrix(2, 2).unwrap()
    }

    #[test]
    fn ideal_of_examples() {
        let spec = m2();
        let full = Ideal::of(&RingElement::one(&spec));
        assert_eq!(full, Ideal::full(&spec));
        assert_eq!(full.height(), spec.length());
        assert!(Ideal::of(&RingElement::zero(&spec)).is_zero());
        let e12 = Ideal::of(&mat_elem(2, 2, &[0, 1, 0, 0]));
        assert_eq!(e12.height(), 1);
        assert_eq!(e12, Ideal::of(&mat_elem(2, 2, &[1, 0, 0, 0])));
    }

    #[test]
    fn lattice_ops() {
        let spec = m2();
        let a = Ideal::of(&mat_elem(2, 2, &[1, 0, 0, 0]));
        let b = Ideal::of(&mat_elem(2, 2, &[0, 0, 0, 1]));
        assert_eq!(a.meet(&Ideal::full(&spec)), a);
        assert_eq!(a.join(&Ideal::zero(&spec)), a);
        assert!(a.meet(&b).is_zero());
        assert_eq!(a.join(&b), Ideal::full(&spec));
        assert!(a
            .try_meet(&Ideal::full(&RingSpec::matrix(2, 3).unwrap()))
            .is_err());
    }

    #[test]
    fn complements() {
        let spec = m2();
        assert_eq!(Ideal::zero(&spec).complement(), Ideal::full(&spec));
        assert!(Ideal::full(&spec).complement().is_zero());
        let a = Ideal::of(&mat_elem(2, 2, &[1, 0, 0, 0]));
        let c = a.complement();
        assert_eq!(c.height(), 1);
        assert!(a.meet(&c).is_zero());
        assert_eq!(a.join(&c), Ideal::full(&spec));
        assert_eq!(
            Ideal::full(&spec).relative_complement(&a, &a),
            Err(Error::IntervalViolation)
        );
    }

    #[test]
    fn idempotent_generates_and_json_round_trips() {
        let spec: RingSpec = "M3(F3)xM2(F2)".parse().unwrap();
        for a in Ideal::enumerate_all(&spec).into_iter().step_by(7) {
            let e = a.idempotent();
            assert!(e.is_idempotent());
            assert_eq!(Ideal::of(&e), a);
            assert_eq!(Ideal::of(&a.generator()), a);
            assert_eq!(Ideal::from_json(&spec, &a.to_json()).unwrap(), a);
        }
    }

    #[test]
    fn ideal_of_product_is_below() {
        let spec = m2();
        let all: Vec<RingElement> = crate::ring::enumerate_elements(&spec, 1 << 10)
            .unwrap()
            .collect();
        for a in &all {
            assert_eq!(Ideal::of(a), Ideal::of(&a.gamma()));
            for r in &all {
                assert!(Ideal::of(&a.mul(r)).leq(&Ideal::of(a)));
            }
        }
    }
}
