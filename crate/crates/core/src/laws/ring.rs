use rand_chacha::ChaCha8Rng;

use super::{ensure, perspective, run_trials, LawConfig, LawVerdict, Outcome};
use crate::lattice::{is_module_iso, mvn_witness, Ideal};
use crate::reduction::{
    random_reflexive_inverse, random_reflexive_pair, run_reduction, ReductionTrace,
};
use crate::ring::{random_element, RingElement};

fn traced(cfg: &LawConfig, rng: &mut ChaCha8Rng) -> ReductionTrace {
    let (a, b) = random_reflexive_pair(&cfg.spec, rng);
    run_reduction(&a, &b, None).expect("reflexive pair")
}

/// Per recorded step `n`, `α_n` is left multiplication by `a^{2^n}` from
/// `e_nR` onto `f_nR`, with inverse left multiplication by `b^{2^n}`.
struct StepMaps {
    e: Ideal,
    f: Ideal,
    g: Ideal,
    alpha_g: Ideal,
    alpha_inv_g: Ideal,
    iso: bool,
}

fn step_maps(t: &ReductionTrace) -> Vec<StepMaps> {
    let mut out = Vec::new();
    let (mut ap, mut bp) = (t.a.clone(), t.b.clone());
    for s in &t.steps {
        let (e, f, g) = (Ideal::of(&s.e), Ideal::of(&s.f), Ideal::of(&s.g));
        let iso = e.left_image(&ap) == f
            && f.left_image(&bp) == e
            && bp.mul(&ap).mul(&s.e) == s.e
            && ap.mul(&bp).mul(&s.f) == s.f;
        out.push(StepMaps {
            alpha_g: g.left_image(&ap),
            alpha_inv_g: g.left_image(&bp),
            e,
            f,
            g,
            iso,
        });
        ap = ap.mul(&ap);
        bp = bp.mul(&bp);
    }
    out
}

/// `α⁻¹(g) ∩ α(g) <= g`, with equality iff `α(g) = g`, for
/// `g = eR ∩ fR` at every step of a reduction.
pub fn check_observation(cfg: &LawConfig) -> LawVerdict {
    run_trials("observation", cfg, |rng| {
        let t = traced(cfg, rng);
        for (n, m) in step_maps(&t).iter().enumerate() {
            let ctx = format!("a={} b={} n={n}", t.a, t.b);
            ensure!(m.iso, "α_n is not an isomorphism e_nR → f_nR: {ctx}");
            let both = m.alpha_inv_g.meet(&m.alpha_g);
            ensure!(both.leq(&m.g), "α⁻¹(g) ∩ α(g) not below g: {ctx}");
            ensure!((both == m.g) == (m.alpha_g == m.g), "equality case: {ctx}");
        }
        Outcome::Pass
    })
}

/// At every step: `α(g) = g` implies `e ∼ f`, and `α⁻¹(g) ∼ α(g)`
/// implies `e ∼ f`.
pub fn check_lemma6(cfg: &LawConfig) -> LawVerdict {
    run_trials("lemma6", cfg, |rng| {
        let t = traced(cfg, rng);
        for (n, m) in step_maps(&t).iter().enumerate() {
            let ctx = format!("a={} b={} n={n}", t.a, t.b);
            ensure!(m.iso, "α_n is not an isomorphism e_nR → f_nR: {ctx}");
            let ef = perspective(&m.e, &m.f);
            if m.alpha_g == m.g {
                ensure!(ef, "(i): α(g) = g but e ≁ f: {ctx}");
            }
            if perspective(&m.alpha_inv_g, &m.alpha_g) {
                ensure!(ef, "(ii): α⁻¹(g) ∼ α(g) but e ≁ f: {ctx}");
            }
        }
        Outcome::Pass
    })
}

/// The facts on reflexive inverses for `a`, `b = a+` and a second random
/// reflexive inverse `c`.
pub fn ring_facts_at(a: &RingElement, rng: &mut ChaCha8Rng) -> Result<(), String> {
    let check = |ok: bool, what: &str| {
        if ok {
            Ok(())
        } else {
            Err(format!("{what}: a={a}"))
        }
    };
    let b = a.reflexive();
    check(
        a.mul(&b).mul(a) == *a && b.mul(a).mul(&b) == b,
        "(1) aba = a, bab = b",
    )?;
    let (e, f) = (b.mul(a), a.mul(&b));
    check(
        e.is_idempotent() && f.is_idempotent(),
        "(1) ab, ba idempotent",
    )?;
    check(
        f.mul(a).mul(&e) == *a && e.mul(&b).mul(&f) == b,
        "(2) fae = a, ebf = b",
    )?;

    let (ie, i_f) = (Ideal::of(&e), Ideal::of(&f));
    check(
        ie == Ideal::of(&b) && i_f == Ideal::of(a),
        "(2) eR = bR, fR = aR",
    )?;
    check(
        ie.left_image(a) == i_f && i_f.left_image(&b) == ie,
        "(2) ω_{a,b} onto with inverse ω_{b,a}",
    )?;
    let wit = mvn_witness(&e, &f).map_err(|err| format!("(2) e, f equivalent: {err}: a={a}"))?;
    check(wit.verify(), "(2) witness")?;

    // (3): an isomorphism eR → fR is determined by the images of e and f
    let (x, y) = (wit.x.clone(), wit.y.clone());
    check(
        x.mul(&y).mul(&x) == x && y.mul(&x).mul(&y) == y,
        "(3) ω(e), ω⁻¹(f) reflexive",
    )?;

    if perspective(&ie, &i_f) {
        check(is_module_iso(&ie, &i_f), "(4) eR ∼ fR gives eR ≅ fR")?;
    }
    if ie.meet(&i_f).is_zero() && is_module_iso(&ie, &i_f) {
        check(perspective(&ie, &i_f), "(4) converse when eR ∩ fR = 0")?;
    }

    let c = random_reflexive_inverse(a, rng);
    check(
        a.mul(&c).mul(a) == *a && c.mul(a).mul(&c) == c,
        "(5) c reflexive",
    )?;
    let (ib, ic) = (Ideal::of(&b), Ideal::of(&c));
    check(perspective(&ib, &ic), "(5) bR ∼ cR")?;
    let ca = c.mul(a);
    check(
        ib.left_image(&ca) == ic && ca.mul(&b).ranks() == b.ranks(),
        "(5) x ↦ cax maps bR onto cR",
    )?;
    Ok(())
}

pub fn check_ring_facts(cfg: &LawConfig) -> LawVerdict {
    run_trials("ring_facts", cfg, |rng| {
        let a = random_element(&cfg.spec, rng);
        match ring_facts_at(&a, rng) {
            Ok(()) => Outcome::Pass,
            Err(msg) => Outcome::Fail(msg),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laws::Sampling;
    use crate::ring::{case_rng, enumerate_elements, mat_elem, RingSpec};

    #[test]
    fn trace_suites() {
        for spec in ["M3(F2)", "M5(F2)", "M3(F3)", "M2(F2)xM2(F3)"] {
            let c = LawConfig::new(spec.parse().unwrap(), 200, 5, Sampling::Constructive).unwrap();
            for f in [check_observation, check_lemma6, check_ring_facts] {
                let v = f(&c);
                assert!(v.ok() && v.passed == 200, "{spec}: {v:?}");
            }
        }
    }

    #[test]
    fn ring_facts_exhaustive_m2() {
        let spec = RingSpec::matrix(2, 2).unwrap();
        for (i, a) in enumerate_elements(&spec, 16).unwrap().enumerate() {
            ring_facts_at(&a, &mut case_rng(0, i as u64)).unwrap();
        }
    }

    #[test]
    fn identity_map_and_nilpotent_pair() {
        let one = RingElement::one(&RingSpec::matrix(3, 2).unwrap());
        let t = run_reduction(&one, &one, None).unwrap();
        assert!(step_maps(&t).iter().all(|m| m.iso && m.alpha_g == m.g));
        let (a, b) = (mat_elem(2, 2, &[0, 1, 0, 0]), mat_elem(2, 2, &[0, 0, 1, 0]));
        let t = run_reduction(&a, &b, None).unwrap();
        let m = &step_maps(&t)[0];
        assert!(m.g.is_zero() && m.alpha_g.is_zero());
    }
}
