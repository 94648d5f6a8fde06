//! Property suites for the modular-lattice lemmas and the facts on
//! reflexive inverses, run on sampled configurations.
//!
//! Each trial draws from its own rng (`case_rng(seed, i)`), so results do not
//! depend on thread scheduling. Samplers build configurations that satisfy a
//! law's hypotheses by construction; `Sampling::Rejection` instead draws
//! unconstrained configurations and discards those that miss.

mod lattice;
mod ring;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{common_complement, Ideal};
use crate::linalg::{Mat, PrimeField, Subspace};
use crate::ring::{case_rng, RingSpec};

pub use lattice::{
    check_fact1, check_fact2, check_fact3a, check_fact5a, check_lemma4, check_lemma5,
};
pub use ring::{check_lemma6, check_observation, check_ring_facts, ring_facts_at};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sampling {
    Constructive,
    Rejection,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawConfig {
    /// Lattice suites work in the ideal lattice of this ring; with a single
    /// factor `M_n(GF(p))` that is the subspace lattice of `GF(p)^n`.
    pub spec: RingSpec,
    pub trials: u64,
    pub seed: u64,
    pub mode: Sampling,
}

impl LawConfig {
    pub fn new(spec: RingSpec, trials: u64, seed: u64, mode: Sampling) -> Result<Self> {
        if trials == 0 {
            return Err(Error::Precondition("trials must be at least 1".into()));
        }
        Ok(Self {
            spec,
            trials,
            seed,
            mode,
        })
    }

    /// Subspaces of `GF(p)^dim`.
    pub fn subspaces(dim: usize, p: u32, trials: u64, seed: u64) -> Result<Self> {
        Self::new(
            RingSpec::matrix(dim, p)?,
            trials,
            seed,
            Sampling::Constructive,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawVerdict {
    pub law: String,
    pub passed: u64,
    pub failed: u64,
    /// Trials where no configuration meeting the hypotheses was found.
    pub skipped: u64,
    pub first_failure: Option<String>,
}

impl LawVerdict {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub const SUITES: [&str; 9] = [
    "fact1",
    "fact2",
    "fact3a",
    "fact5a",
    "lemma4",
    "lemma5",
    "observation",
    "lemma6",
    "ring_facts",
];

pub fn run_suite(name: &str, cfg: &LawConfig) -> Result<LawVerdict> {
    Ok(match name {
        "fact1" => check_fact1(cfg),
        "fact2" => check_fact2(cfg),
        "fact3a" => check_fact3a(cfg),
        "fact5a" => check_fact5a(cfg),
        "lemma4" => check_lemma4(cfg),
        "lemma5" => check_lemma5(cfg),
        "observation" => check_observation(cfg),
        "lemma6" => check_lemma6(cfg),
        "ring_facts" => check_ring_facts(cfg),
        other => return Err(Error::Precondition(format!("unknown suite `{other}`"))),
    })
}

pub(crate) enum Outcome {
    Pass,
    Skip,
    Fail(String),
}

/// Turns a failed assertion into `Outcome::Fail` with a description.
macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return $crate::laws::Outcome::Fail(format!($($fmt)+));
        }
    };
}
pub(crate) use ensure;

pub(crate) fn run_trials(
    law: &str,
    cfg: &LawConfig,
    trial: impl Fn(&mut ChaCha8Rng) -> Outcome + Sync,
) -> LawVerdict {
    let outcomes: Vec<Outcome> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| trial(&mut case_rng(cfg.seed, i)))
        .collect();
    let mut v = LawVerdict {
        law: law.to_string(),
        passed: 0,
        failed: 0,
        skipped: 0,
        first_failure: None,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Outcome::Pass => v.passed += 1,
            Outcome::Skip => v.skipped += 1,
            Outcome::Fail(msg) => {
                v.failed += 1;
                if v.first_failure.is_none() {
                    v.first_failure = Some(format!("trial {i}: {msg}"));
                }
            }
        }
    }
    v
}

/// Builds `k` ideals by sampling `k` subspaces in every component.
pub(crate) fn per_component<R: Rng>(
    spec: &RingSpec,
    rng: &mut R,
    k: usize,
    mut f: impl FnMut(PrimeField, usize, &mut R) -> Vec<Subspace>,
) -> Vec<Ideal> {
    let mut spaces: Vec<Vec<Subspace>> = vec![Vec::new(); k];
    for c in spec.components() {
        let parts = f(c.field, c.n, rng);
        assert_eq!(parts.len(), k, "sampler arity");
        for (slot, s) in spaces.iter_mut().zip(parts) {
            slot.push(s);
        }
    }
    spaces
        .into_iter()
        .map(|s| Ideal::from_spaces(s).expect("nonempty"))
        .collect()
}

/// Uniformly random invertible `n x n` matrix; its columns form a random basis.
pub(crate) fn random_basis<R: Rng + ?Sized>(field: PrimeField, n: usize, rng: &mut R) -> Mat {
    loop {
        let m = Mat::from_fn(field, n, n, |_, _| rng.gen_range(0..field.p()));
        if m.rank() == n {
            return m;
        }
    }
}

/// Span of the basis columns `lo..hi`.
pub(crate) fn block(basis: &Mat, lo: usize, hi: usize) -> Subspace {
    Subspace::column_space(&basis.select_cols(&(lo..hi).collect::<Vec<_>>()))
}

/// Random subspace of dimension `dim` inside `space`.
pub(crate) fn random_inside<R: Rng + ?Sized>(
    space: &Subspace,
    dim: usize,
    rng: &mut R,
) -> Subspace {
    assert!(dim <= space.dim());
    let f = space.field();
    loop {
        let coeffs = Mat::from_fn(f, dim, space.dim(), |_, _| rng.gen_range(0..f.p()));
        let s = Subspace::row_space(&(&coeffs * space.basis()));
        if s.dim() == dim {
            return s;
        }
    }
}

/// Random sizes `s_0..s_{k-1}` with `sum <= n`, filled in random order.
pub(crate) fn random_sizes<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Vec<usize> {
    let mut order: Vec<usize> = (0..k).collect();
    for i in (1..k).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    let mut left = n;
    let mut sizes = vec![0; k];
    for &slot in &order {
        sizes[slot] = rng.gen_range(0..=left);
        left -= sizes[slot];
    }
    sizes
}

/// Witness-backed perspectivity.
pub(crate) fn perspective(a: &Ideal, b: &Ideal) -> bool {
    common_complement(a, b).is_ok_and(|ax| ax.checks.all())
}

pub(crate) fn show(named: &[(&str, &Ideal)]) -> String {
    named
        .iter()
        .map(|(n, i)| format!("{n}={i}"))
        .collect::<Vec<_>>()
        .join(" ")
}
