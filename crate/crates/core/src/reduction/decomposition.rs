use serde::Serialize;

use super::trace::ReductionTrace;
use crate::error::{Error, Result};
use crate::lattice::{common_complement, independent, Ideal};
use crate::ring::RingElement;

/// Outcome of the decomposition postconditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionChecks {
    /// `e_n = x_n ⊕ (e_{n+1} + g_n)` for every `n`.
    pub e_split: bool,
    /// `f_n = y_n ⊕ (g_n + f_{n+1})` for every `n`.
    pub f_split: bool,
    /// `(e_k + f_k)(x_n + y_n) = 0` for all `k > n`.
    pub later_disjoint: bool,
    /// `x_n ∩ y_n = 0` and `x_n ∼ y_n` via a verified axis.
    pub perspective_pieces: bool,
    /// `x_0, y_0, ..., x_m, y_m` is independent.
    pub independent: bool,
    /// `Σ x_n + g_0 = e_0` and `Σ y_n + g_0 = f_0`; only checked when
    /// `g_m = g_{m+1}`.
    pub covers: Option<bool>,
}

impl DecompositionChecks {
    pub fn all(&self) -> bool {
        self.e_split
            && self.f_split
            && self.later_disjoint
            && self.perspective_pieces
            && self.independent
            && self.covers.unwrap_or(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub xs: Vec<RingElement>,
    pub ys: Vec<RingElement>,
    pub checks: DecompositionChecks,
}

/// Pieces `x_n` with `e_n = x_n ⊕ (e_{n+1} + g_n)` and
/// `y_n = gamma(a^{2^n} x_n)` for `n = 0..=m`, where `m + 1` is the last
/// recorded step.
pub fn lemma_ind_decomposition(trace: &ReductionTrace) -> Result<Decomposition> {
    if trace.steps.len() < 2 {
        return Err(Error::TraceTooShort(1));
    }
    let m = trace.steps.len() - 2;
    let spec = trace.a.spec();
    let zero = Ideal::zero(&spec);
    let ie: Vec<Ideal> = trace.steps.iter().map(|s| Ideal::of(&s.e)).collect();
    let i_f: Vec<Ideal> = trace.steps.iter().map(|s| Ideal::of(&s.f)).collect();
    let ig: Vec<Ideal> = trace.steps.iter().map(|s| Ideal::of(&s.g)).collect();

    let mut xs = Vec::new();
    let mut ys = Vec::new();
    let mut apow = trace.a.clone();
    for n in 0..=m {
        let inner = ie[n + 1].join(&ig[n]);
        let xi = inner.relative_complement(&zero, &ie[n])?;
        let x = xi.idempotent();
        ys.push(apow.mul(&x).gamma());
        xs.push(x);
        apow = apow.mul(&apow);
    }
    let ix: Vec<Ideal> = xs.iter().map(Ideal::of).collect();
    let iy: Vec<Ideal> = ys.iter().map(Ideal::of).collect();

    let direct = |piece: &Ideal, rest: &Ideal, whole: &Ideal| {
        piece.meet(rest).is_zero() && piece.join(rest) == *whole
    };
    let e_split = (0..=m).all(|n| direct(&ix[n], &ie[n + 1].join(&ig[n]), &ie[n]));
    let f_split = (0..=m).all(|n| direct(&iy[n], &ig[n].join(&i_f[n + 1]), &i_f[n]));
    let later_disjoint = (0..=m)
        .all(|n| (n + 1..=m + 1).all(|k| ie[k].join(&i_f[k]).meet(&ix[n].join(&iy[n])).is_zero()));
    let perspective_pieces = (0..=m).all(|n| {
        ix[n].meet(&iy[n]).is_zero()
            && common_complement(&ix[n], &iy[n])
                .map(|ax| ax.checks.all())
                .unwrap_or(false)
    });
    let interleaved: Vec<Ideal> = ix
        .iter()
        .zip(&iy)
        .flat_map(|(x, y)| [x.clone(), y.clone()])
        .collect();
    let covers = (ig[m] == ig[m + 1]).then(|| {
        let sx = ix.iter().fold(ig[0].clone(), |acc, x| acc.join(x));
        let sy = iy.iter().fold(ig[0].clone(), |acc, y| acc.join(y));
        sx == ie[0] && sy == i_f[0]
    });
    let checks = DecompositionChecks {
        e_split,
        f_split,
        later_disjoint,
        perspective_pieces,
        independent: independent(&interleaved),
        covers,
    };
    Ok(Decomposition { xs, ys, checks })
}
