//! Deterministic enumeration and seeded sampling of ring elements.
//!
//! Elements are ordered lexicographically on their row-major entry tuples,
//! first component most significant. `element_at` maps an index to its
//! element directly, so scans can be split across workers by index range.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::element::RingElement;
use super::spec::RingSpec;
use crate::error::{Error, Result};
use crate::linalg::Mat;

/// Default cap on the number of cases an exhaustive scan may visit.
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// Number of elements, failing if it exceeds `budget`.
pub fn element_count(spec: &RingSpec, budget: u64) -> Result<u64> {
    match spec.order() {
        Some(n) if n <= budget as u128 => Ok(n as u64),
        Some(n) => Err(Error::BudgetExceeded { needed: n, budget }),
        None => Err(Error::BudgetExceeded {
            needed: u128::MAX,
            budget,
        }),
    }
}

/// The element with the given index in enumeration order.
pub fn element_at(spec: &RingSpec, mut index: u64) -> RingElement {
    let comps = spec.components();
    let mut parts: Vec<Mat> = comps
        .iter()
        .map(|c| Mat::zeros(c.field, c.n, c.n))
        .collect();
    for (c, m) in comps.iter().zip(parts.iter_mut()).rev() {
        let p = c.field.p() as u64;
        for k in (0..c.n * c.n).rev() {
            m.set(k / c.n, k % c.n, (index % p) as u8);
            index /= p;
        }
    }
    RingElement::from_parts(parts).expect("square parts")
}

/// Every element exactly once, in enumeration order.
pub fn enumerate_elements(
    spec: &RingSpec,
    budget: u64,
) -> Result<impl Iterator<Item = RingElement>> {
    let n = element_count(spec, budget)?;
    let spec = spec.clone();
    Ok((0..n).map(move |i| element_at(&spec, i)))
}

/// Uniform random element from an rng.
pub fn random_element<R: Rng + ?Sized>(spec: &RingSpec, rng: &mut R) -> RingElement {
    let parts = spec
        .components()
        .iter()
        .map(|c| {
            let p = c.field.p();
            Mat::from_fn(c.field, c.n, c.n, |_, _| rng.gen_range(0..p))
        })
        .collect();
    RingElement::from_parts(parts).expect("square parts")
}

/// Uniform random element determined by `seed`.
pub fn sample_element(spec: &RingSpec, seed: u64) -> RingElement {
    random_element(spec, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Rng for case `index` of a run seeded with `seed`; independent of how
/// cases are split across threads.
pub fn case_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts() {
        let m1: RingSpec = "M1(F2)".parse().unwrap();
        let all: Vec<_> = enumerate_elements(&m1, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(all.len(), 2);
        assert!(all[0].is_zero() && all[1].is_one());

        let m2: RingSpec = "M2(F2)".parse().unwrap();
        assert_eq!(enumerate_elements(&m2, DEFAULT_BUDGET).unwrap().count(), 16);

        let prod: RingSpec = "M2(F2)xM1(F3)".parse().unwrap();
        let all: HashSet<_> = enumerate_elements(&prod, DEFAULT_BUDGET).unwrap().collect();
        assert_eq!(all.len(), 48);
    }

    #[test]
    fn order_is_lexicographic() {
        let prod: RingSpec = "M2(F2)xM1(F3)".parse().unwrap();
        assert_eq!(
            element_at(&prod, 1).to_string(),
            "2:2x2:[0,0,0,0];3:1x1:[1]"
        );
        assert_eq!(
            element_at(&prod, 3).to_string(),
            "2:2x2:[0,0,0,1];3:1x1:[0]"
        );
        assert_eq!(
            element_at(&prod, 47).to_string(),
            "2:2x2:[1,1,1,1];3:1x1:[2]"
        );
    }

    #[test]
    fn budget_is_enforced() {
        let big: RingSpec = "M5(F3)".parse().unwrap();
        assert!(matches!(
            enumerate_elements(&big, DEFAULT_BUDGET),
            Err(Error::BudgetExceeded { .. })
        ));
        let m2: RingSpec = "M2(F2)".parse().unwrap();
        assert!(element_count(&m2, 15).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let spec: RingSpec = "M3(F5)".parse().unwrap();
        assert_eq!(sample_element(&spec, 9), sample_element(&spec, 9));
        assert_ne!(
            (0..8)
                .map(|s| sample_element(&spec, s))
                .collect::<HashSet<_>>()
                .len(),
            1
        );
    }
}
