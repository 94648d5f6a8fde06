//! Finite regular rings `M_{n_1}(GF(p_1)) x ... x M_{n_k}(GF(p_k))`.

mod element;
mod enumerate;
mod spec;

pub use element::{mat_elem, RingElement};
pub use enumerate::{
    case_rng, element_at, element_count, enumerate_elements, random_element, sample_element,
    DEFAULT_BUDGET,
};
pub use spec::{Component, RingSpec};

use crate::error::{Error, Result};

/// The corner ring `eRe` of an idempotent `e`, with unit `e`.
#[derive(Clone, Debug)]
pub struct Corner {
    e: RingElement,
}

impl Corner {
    pub fn new(e: RingElement) -> Result<Self> {
        if !e.is_idempotent() {
            return Err(Error::NotIdempotent);
        }
        Ok(Self { e })
    }

    pub fn unit(&self) -> &RingElement {
        &self.e
    }

    pub fn contains(&self, x: &RingElement) -> bool {
        x.same_spec(&self.e) && self.e.mul(x).mul(&self.e) == *x
    }

    /// Elements of `eRe`, filtered from the whole ring.
    pub fn elements(&self, budget: u64) -> Result<Vec<RingElement>> {
        let spec = self.e.spec();
        Ok(enumerate_elements(&spec, budget)?
            .filter(|x| self.contains(x))
            .collect())
    }
}
