use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ideal::Ideal;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};
use crate::ring::{case_rng, RingElement, RingSpec};
use crate::Mode;

/// Elements with `e = yx`, `f = xy`, `fxe = x` and `eyf = y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MvnWitness {
    pub x: RingElement,
    pub y: RingElement,
    pub e: RingElement,
    pub f: RingElement,
}

impl MvnWitness {
    pub fn verify(&self) -> bool {
        let MvnWitness { x, y, e, f } = self;
        y.mul(x) == *e && x.mul(y) == *f && f.mul(x).mul(e) == *x && e.mul(y).mul(f) == *y
    }
}

/// Witness that the idempotents `e` and `f` are Murray-von Neumann
/// equivalent. Per component, a canonical basis `U` of `im e` is sent to the
/// canonical basis `W` of `im f`: with `U L = e` and `W M = f` this gives
/// `x = W L` and `y = U M`.
pub fn mvn_witness(e: &RingElement, f: &RingElement) -> Result<MvnWitness> {
    if !e.is_idempotent() || !f.is_idempotent() {
        return Err(Error::NotIdempotent);
    }
    if !e.same_spec(f) {
        return Err(Error::SpecMismatch {
            left: e.spec().to_string(),
            right: f.spec().to_string(),
        });
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (pe, pf) in e.parts().iter().zip(f.parts()) {
        let u = Subspace::column_space(pe).basis_columns();
        let w = Subspace::column_space(pf).basis_columns();
        if u.cols() != w.cols() {
            return Err(Error::NotIso);
        }
        let n = pe.rows();
        if u.cols() == 0 {
            xs.push(Mat::zeros(pe.field(), n, n));
            ys.push(Mat::zeros(pe.field(), n, n));
            continue;
        }
        let l = u.solve_right(pe)?.expect("e lies in its own column space");
        let m = w.solve_right(pf)?.expect("f lies in its own column space");
        xs.push(&w * &l);
        ys.push(&u * &m);
    }
    let wit = MvnWitness {
        x: RingElement::from_parts(xs)?,
        y: RingElement::from_parts(ys)?,
        e: e.clone(),
        f: f.clone(),
    };
    if !wit.verify() {
        return Err(Error::Verification("mvn witness equalities".into()));
    }
    Ok(wit)
}

/// Whether `A ≅ B` as right modules. Only answers `true` after building and
/// checking an explicit witness.
pub fn is_module_iso(a: &Ideal, b: &Ideal) -> bool {
    if a.dims() != b.dims() {
        return false;
    }
    mvn_witness(&a.idempotent(), &b.idempotent()).is_ok()
}

/// Outcome of the five equalities `a+b = a+c = b+c`, `ab = ac = bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct AxisChecks {
    pub ab_join_eq_ac_join: bool,
    pub ab_join_eq_bc_join: bool,
    pub ac_join_eq_bc_join: bool,
    pub ab_meet_eq_ac_meet: bool,
    pub ab_meet_eq_bc_meet: bool,
}

impl AxisChecks {
    pub fn compute(a: &Ideal, b: &Ideal, c: &Ideal) -> Self {
        let (ab, ac, bc) = (a.join(b), a.join(c), b.join(c));
        let (mab, mac, mbc) = (a.meet(b), a.meet(c), b.meet(c));
        Self {
            ab_join_eq_ac_join: ab == ac,
            ab_join_eq_bc_join: ab == bc,
            ac_join_eq_bc_join: ac == bc,
            ab_meet_eq_ac_meet: mab == mac,
            ab_meet_eq_bc_meet: mab == mbc,
        }
    }

    pub fn all(&self) -> bool {
        self.ab_join_eq_ac_join
            && self.ab_join_eq_bc_join
            && self.ac_join_eq_bc_join
            && self.ab_meet_eq_ac_meet
            && self.ab_meet_eq_bc_meet
    }
}

/// An element `c` with `A ∼_c B`, together with the recorded checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerspectivityAxis {
    pub c: RingElement,
    pub checks: AxisChecks,
}

/// Whether `c` is an axis of perspectivity between `A` and `B`.
pub fn is_axis(a: &Ideal, b: &Ideal, c: &RingElement) -> bool {
    AxisChecks::compute(a, b, &Ideal::of(c)).all()
}

/// Common complement of `A` and `B` inside `[A∩B, A+B]`.
///
/// With `g` generating `A∩B`, split `A = X ⊕ (A∩B)` and `B = Y ⊕ (A∩B)`,
/// take a witness `x: X → Y` and use the graph `{v + xv}` of `x` joined with
/// `A∩B`. For `A = B` the axis generates `A` itself.
pub fn common_complement(a: &Ideal, b: &Ideal) -> Result<PerspectivityAxis> {
    a.try_meet(b)?;
    if a.dims() != b.dims() {
        return Err(Error::NotPerspective);
    }
    let m = a.meet(b);
    let g = m.idempotent();
    let x_part = m.relative_complement(&Ideal::zero(&a.spec()), a)?;
    let y_part = m.relative_complement(&Ideal::zero(&a.spec()), b)?;
    let e1 = x_part.idempotent();
    let f1 = y_part.idempotent();
    let wit = mvn_witness(&e1, &f1)?;
    let d = e1.add(&wit.x.mul(&e1));
    let c = d.join(&g);
    let checks = AxisChecks::compute(a, b, &Ideal::of(&c));
    if !checks.all() {
        return Err(Error::Verification(format!("axis for {a} and {b}")));
    }
    Ok(PerspectivityAxis { c, checks })
}

/// `a_n ∩ (a_{n+1} + ... + a_m) = 0` for every `n`.
pub fn independent(seq: &[Ideal]) -> bool {
    let Some(last) = seq.last() else {
        return true;
    };
    let mut tail = Ideal::zero(&last.spec());
    for a in seq.iter().rev() {
        if !a.meet(&tail).is_zero() {
            return false;
        }
        tail = tail.join(a);
    }
    true
}

/// Result of a neutrality check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeutralReport {
    pub neutral: bool,
    pub mode: Mode,
    pub cases: u64,
    pub counterexample: Option<(Ideal, Ideal)>,
}

fn neutral_at(u: &Ideal, x: &Ideal, y: &Ideal) -> bool {
    u.join(x).meet(&u.join(y)) == u.join(&x.meet(y))
}

/// Random ideal with uniformly random generators.
pub fn random_ideal<R: Rng + ?Sized>(spec: &RingSpec, rng: &mut R) -> Ideal {
    let spaces = spec
        .components()
        .iter()
        .map(|c| {
            let gens = rng.gen_range(0..=c.n);
            Subspace::random(c.field, c.n, gens, rng)
        })
        .collect();
    Ideal::from_spaces(spaces).expect("nonempty")
}

/// Checks `(u+x)(u+y) = u+xy`. Exhaustive over all ideal pairs when their
/// number is within `budget`; `Mode::Sampled` forces `samples` random pairs.
pub fn is_neutral(
    u: &Ideal,
    mode: Mode,
    budget: u64,
    samples: u64,
    seed: u64,
) -> Result<NeutralReport> {
    let spec = u.spec();
    match mode {
        Mode::Exhaustive => {
            let all = Ideal::enumerate_all(&spec);
            let n = all.len() as u64;
            if n * n > budget {
                return Err(Error::BudgetExceeded {
                    needed: (n as u128) * (n as u128),
                    budget,
                });
            }
            let bad = (0..n * n)
                .into_par_iter()
                .find_first(|&k| !neutral_at(u, &all[(k / n) as usize], &all[(k % n) as usize]));
            Ok(NeutralReport {
                neutral: bad.is_none(),
                mode,
                cases: n * n,
                counterexample: bad
                    .map(|k| (all[(k / n) as usize].clone(), all[(k % n) as usize].clone())),
            })
        }
        Mode::Sampled => {
            let draw = |k: u64| {
                let mut rng = case_rng(seed, k);
                (random_ideal(&spec, &mut rng), random_ideal(&spec, &mut rng))
            };
            let bad = (0..samples).into_par_iter().find_first(|&k| {
                let (x, y) = draw(k);
                !neutral_at(u, &x, &y)
            });
            Ok(NeutralReport {
                neutral: bad.is_none(),
                mode,
                cases: samples,
                counterexample: bad.map(draw),
            })
        }
    }
}
