use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Ideal;
use crate::ring::{random_element, RingElement, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Heights {
    pub e: usize,
    pub f: usize,
    pub g: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub n: usize,
    pub e: RingElement,
    pub f: RingElement,
    pub g: RingElement,
    pub heights: Heights,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Least `n` with `g_{n+1}R = g_nR`.
    Stabilized {
        at: usize,
    },
    Exhausted {
        max_steps: usize,
    },
}

/// The chains `e_n`, `f_n`, `g_n` for a mutually reflexive pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionTrace {
    pub a: RingElement,
    pub b: RingElement,
    /// Steps `0..=at+1` when stabilized.
    pub steps: Vec<Step>,
    pub status: Status,
}

impl ReductionTrace {
    pub fn stabilized_at(&self) -> Option<usize> {
        match self.status {
            Status::Stabilized { at } => Some(at),
            Status::Exhausted { .. } => None,
        }
    }

    pub fn g_heights(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.heights.g).collect()
    }

    /// Number of strict drops `g_{n+1} < g_n` along the recorded steps.
    pub fn strict_drops(&self) -> usize {
        self.steps
            .windows(2)
            .filter(|w| w[1].heights.g < w[0].heights.g)
            .count()
    }

    /// Rechecks the structural invariants of every recorded step.
    pub fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Verification(msg));
        let (a, b) = (&self.a, &self.b);
        if self.steps.is_empty() {
            return fail("empty trace".into());
        }
        if self.steps[0].e != b.mul(a) || self.steps[0].f != a.mul(b) {
            return fail("e_0 = ba and f_0 = ab".into());
        }
        let mut apow = a.clone();
        let mut bpow = b.clone();
        for (k, s) in self.steps.iter().enumerate() {
            let (ie, i_f, ig) = (Ideal::of(&s.e), Ideal::of(&s.f), Ideal::of(&s.g));
            if !s.e.is_idempotent() || !s.f.is_idempotent() || !s.g.is_idempotent() {
                return fail(format!("idempotents at step {k}"));
            }
            if ig != ie.meet(&i_f) {
                return fail(format!("g_{k} generates e_{k}R ∩ f_{k}R"));
            }
            if apow.mul(&s.e).ranks() != s.e.ranks() {
                return fail(format!("a^(2^{k}) is injective on e_{k}R"));
            }
            if let Some(next) = self.steps.get(k + 1) {
                if next.e != bpow.mul(&s.g).gamma() || next.f != apow.mul(&s.g).gamma() {
                    return fail(format!("step {} recursion", k + 1));
                }
                if !Ideal::of(&next.e).leq(&ie)
                    || !Ideal::of(&next.f).leq(&i_f)
                    || !Ideal::of(&next.g).leq(&ig)
                {
                    return fail(format!("chains descend at step {}", k + 1));
                }
            }
            apow = apow.mul(&apow);
            bpow = bpow.mul(&bpow);
        }
        if let Status::Stabilized { at } = self.status {
            let (g0, g1) = (&self.steps[at].g, &self.steps[at + 1].g);
            if Ideal::of(g0) != Ideal::of(g1) {
                return fail("stabilization".into());
            }
            if self.steps[..=at]
                .windows(2)
                .any(|w| Ideal::of(&w[0].g) == Ideal::of(&w[1].g))
            {
                return fail("stabilization index is not the least".into());
            }
        }
        Ok(())
    }
}

pub fn is_mutually_reflexive(a: &RingElement, b: &RingElement) -> bool {
    a.same_spec(b) && a.mul(b).mul(a) == *a && b.mul(a).mul(b) == *b
}

/// `(a, a+)`.
pub fn make_reflexive_pair(a: &RingElement) -> (RingElement, RingElement) {
    (a.clone(), a.reflexive())
}

/// Random reflexive inverse of `a`: with `q` inner,
/// `x = q + (1 - qa) w + z (1 - aq)` is an inner inverse and `xax` is reflexive.
pub fn random_reflexive_inverse<R: Rng + ?Sized>(a: &RingElement, rng: &mut R) -> RingElement {
    let spec = a.spec();
    let w = random_element(&spec, rng);
    let z = random_element(&spec, rng);
    let q = a.quasi_inverse();
    let x = q
        .add(&q.mul(a).one_minus().mul(&w))
        .add(&z.mul(&a.mul(&q).one_minus()));
    x.mul(a).mul(&x)
}

/// Random `a` with a random reflexive inverse.
pub fn random_reflexive_pair<R: Rng + ?Sized>(
    spec: &RingSpec,
    rng: &mut R,
) -> (RingElement, RingElement) {
    let a = random_element(spec, rng);
    let b = random_reflexive_inverse(&a, rng);
    (a, b)
}

fn step(n: usize, e: RingElement, f: RingElement) -> Step {
    let (ie, i_f) = (Ideal::of(&e), Ideal::of(&f));
    let ig = ie.meet(&i_f);
    let heights = Heights {
        e: ie.height(),
        f: i_f.height(),
        g: ig.height(),
    };
    Step {
        n,
        e,
        f,
        g: ig.idempotent(),
        heights,
    }
}

/// Runs `e_{n+1} = gamma(b^{2^n} g_n)`, `f_{n+1} = gamma(a^{2^n} g_n)` from
/// `e_0 = ba`, `f_0 = ab`, with `g_n` the canonical idempotent of
/// `e_nR ∩ f_nR`. Stops at the first `n < max_steps` with
/// `g_{n+1}R = g_nR`; `max_steps` defaults to `length(R) + 1`.
pub fn run_reduction(
    a: &RingElement,
    b: &RingElement,
    max_steps: Option<usize>,
) -> Result<ReductionTrace> {
    if !is_mutually_reflexive(a, b) {
        return Err(Error::NotMutuallyReflexive);
    }
    let max_steps = max_steps.unwrap_or(a.spec().length() + 1);
    let mut steps = vec![step(0, b.mul(a), a.mul(b))];
    let mut apow = a.clone();
    let mut bpow = b.clone();
    for n in 0..max_steps {
        let g = steps[n].g.clone();
        let next = step(n + 1, bpow.mul(&g).gamma(), apow.mul(&g).gamma());
        let stable = next.heights.g == steps[n].heights.g;
        steps.push(next);
        if stable {
            // g_{n+1} <= g_n, so equal heights mean equal ideals
            return Ok(ReductionTrace {
                a: a.clone(),
                b: b.clone(),
                steps,
                status: Status::Stabilized { at: n },
            });
        }
        apow = apow.mul(&apow);
        bpow = bpow.mul(&bpow);
    }
    Ok(ReductionTrace {
        a: a.clone(),
        b: b.clone(),
        steps,
        status: Status::Exhausted { max_steps },
    })
}
