//! Ring-level predicates on finite products of matrix rings, and the
//! finite-instance harness for the term identities that bound the length.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::lattice::{common_complement, is_module_iso, Ideal};
use crate::linalg::Mat;
use crate::reduction::{run_reduction, unit_witness};
use crate::ring::{case_rng, enumerate_elements, random_element, RingElement, RingSpec};
use crate::term::{check_identity, plus, term_s, Term, Verdict};
use crate::Mode;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PropReport {
    pub ring: String,
    pub property: String,
    pub holds: bool,
    pub witness_or_counterexample: Option<Value>,
    pub cases: u64,
}

impl PropReport {
    fn new(
        spec: &RingSpec,
        property: &str,
        holds: bool,
        detail: Option<Value>,
        cases: u64,
    ) -> Self {
        Self {
            ring: spec.to_string(),
            property: property.to_string(),
            holds,
            witness_or_counterexample: detail,
            cases,
        }
    }
}

fn all_elements(spec: &RingSpec, budget: u64) -> Result<Vec<RingElement>> {
    Ok(enumerate_elements(spec, budget)?.collect())
}

/// Scans pairs with `ab = 1` and checks `ba = 1`.
pub fn is_directly_finite(
    spec: &RingSpec,
    mode: Mode,
    budget: u64,
    seed: u64,
) -> Result<PropReport> {
    let bad = |a: &RingElement, b: &RingElement| a.mul(b).is_one() && !b.mul(a).is_one();
    let (cases, found) = match mode {
        Mode::Exhaustive => {
            let els = all_elements(spec, budget)?;
            let n = els.len() as u64;
            if n.checked_mul(n).is_none_or(|t| t > budget) {
                return Err(Error::BudgetExceeded {
                    needed: (n as u128) * (n as u128),
                    budget,
                });
            }
            let hit = (0..n * n)
                .into_par_iter()
                .find_first(|&i| bad(&els[(i / n) as usize], &els[(i % n) as usize]));
            (
                n * n,
                hit.map(|i| (els[(i / n) as usize].clone(), els[(i % n) as usize].clone())),
            )
        }
        Mode::Sampled => {
            // b is drawn as a one-sided inverse when one exists, so ab = 1 is not vacuous
            let draw = |i: u64| {
                let mut rng = case_rng(seed, i);
                let a = random_element(spec, &mut rng);
                let b = a.reflexive();
                (a, b)
            };
            let hit = (0..budget).into_par_iter().find_first(|&i| {
                let (a, b) = draw(i);
                bad(&a, &b)
            });
            (budget, hit.map(draw))
        }
    };
    let detail = found.as_ref().map(|(a, b)| json!({ "a": a, "b": b }));
    Ok(PropReport::new(
        spec,
        "directly_finite",
        found.is_none(),
        detail,
        cases,
    ))
}

/// Unit `u` with `aua = a`, from the reduction of `(a, a+)`.
pub fn unit_quasi_inverse(a: &RingElement) -> Result<RingElement> {
    let b = a.reflexive();
    let trace = run_reduction(a, &b, None)?;
    let cert = unit_witness(a, &b, &trace)?;
    if !cert.all_verified() {
        return Err(Error::Verification(format!("unit quasi-inverse of {a}")));
    }
    Ok(cert.payload)
}

pub fn is_unit_regular_element(a: &RingElement) -> PropReport {
    let spec = a.spec();
    match unit_quasi_inverse(a) {
        Ok(u) => PropReport::new(
            &spec,
            "unit_regular",
            true,
            Some(json!({ "a": a, "u": u })),
            1,
        ),
        Err(e) => PropReport::new(
            &spec,
            "unit_regular",
            false,
            Some(json!({ "a": a, "error": e.to_string() })),
            1,
        ),
    }
}

/// First unit `u` in enumeration order with `aua = a`; a brute-force oracle.
pub fn search_unit_quasi_inverse(a: &RingElement, budget: u64) -> Result<Option<RingElement>> {
    Ok(enumerate_elements(&a.spec(), budget)?.find(|u| u.is_unit() && a.mul(u).mul(a) == *a))
}

fn in_right_ideal(m: &Mat, gen: &Mat) -> bool {
    gen.solve_right(m).expect("square").is_some()
}

/// Least `n >= 1` with `a^n ∈ a^{n+1}R ∩ Ra^{n+1}`, searched up to
/// `Σ n_i + 1`.
pub fn strong_pi_index(a: &RingElement) -> Option<usize> {
    let bound = a.spec().length() + 1;
    let mut an = a.clone();
    for n in 1..=bound {
        let next = an.mul(a);
        let ok =
            an.parts().iter().zip(next.parts()).all(|(x, y)| {
                in_right_ideal(x, y) && in_right_ideal(&x.transpose(), &y.transpose())
            });
        if ok {
            return Some(n);
        }
        an = next;
    }
    None
}

fn idempotents(spec: &RingSpec, budget: u64) -> Result<Vec<RingElement>> {
    Ok(enumerate_elements(spec, budget)?
        .filter(RingElement::is_idempotent)
        .collect())
}

/// Every pair of idempotents with `eR ≅ fR` gets a verified common
/// complement, and every element a verified unit quasi-inverse.
pub fn handelman_scan(spec: &RingSpec, budget: u64) -> Result<PropReport> {
    let idem = idempotents(spec, budget)?;
    let ideals: Vec<Ideal> = idem.iter().map(Ideal::of).collect();
    let k = idem.len();
    let pair_fail = (0..k * k).into_par_iter().find_first(|&i| {
        let (a, b) = (&ideals[i / k], &ideals[i % k]);
        is_module_iso(a, b) && !common_complement(a, b).is_ok_and(|ax| ax.checks.all())
    });
    if let Some(i) = pair_fail {
        let detail = json!({ "e": idem[i / k], "f": idem[i % k] });
        return Ok(PropReport::new(
            spec,
            "handelman",
            false,
            Some(detail),
            (k * k) as u64,
        ));
    }
    let els = all_elements(spec, budget)?;
    let unit_fail = els
        .par_iter()
        .position_first(|a| unit_quasi_inverse(a).is_err());
    let cases = (k * k + els.len()) as u64;
    let detail = unit_fail.map(|i| json!({ "a": els[i] }));
    Ok(PropReport::new(
        spec,
        "handelman",
        unit_fail.is_none(),
        detail,
        cases,
    ))
}

/// `eR ≅ fR` implies `(1-e)R ≅ (1-f)R` for all idempotents.
pub fn ehrlich_check(spec: &RingSpec, budget: u64) -> Result<PropReport> {
    let idem = idempotents(spec, budget)?;
    let k = idem.len();
    let fail = (0..k * k).into_par_iter().find_first(|&i| {
        let (e, f) = (&idem[i / k], &idem[i % k]);
        is_module_iso(&Ideal::of(e), &Ideal::of(f))
            && !is_module_iso(&Ideal::of(&e.one_minus()), &Ideal::of(&f.one_minus()))
    });
    let detail = fail.map(|i| json!({ "e": idem[i / k], "f": idem[i % k] }));
    Ok(PropReport::new(
        spec,
        "ehrlich",
        fail.is_none(),
        detail,
        (k * k) as u64,
    ))
}

/// Every element has strong π-index at most `Σ n_i` and a unit
/// quasi-inverse.
pub fn strongly_pi_regular_scan(spec: &RingSpec, budget: u64) -> Result<PropReport> {
    let els = all_elements(spec, budget)?;
    let bound = spec.length();
    let fail = els.par_iter().position_first(|a| {
        strong_pi_index(a).is_none_or(|n| n > bound) || unit_quasi_inverse(a).is_err()
    });
    let detail = fail.map(|i| json!({ "a": els[i], "index": strong_pi_index(&els[i]) }));
    Ok(PropReport::new(
        spec,
        "strongly_pi_regular",
        fail.is_none(),
        detail,
        els.len() as u64,
    ))
}

/// `s_{n+1}(x) s_n(x) = s_n(x)`.
pub fn identity7(n: usize) -> (Term, Term) {
    (term_s(n + 1).mul(&term_s(n)), term_s(n))
}

/// `x^{m+1}(x^{m+1})+ x^m = x^m` and `x^m (x^{m+1})+ x^{m+1} = x^m`.
pub fn identities8(m: u64) -> [(Term, Term); 2] {
    let x = Term::var("x");
    let (xm, xm1) = (x.pow(m), x.pow(m + 1));
    let p = plus(&xm1);
    [
        (xm1.mul(&p).mul(&xm), xm.clone()),
        (xm.mul(&p).mul(&xm1), xm),
    ]
}

/// Checks (7) at `n = d - 2` and both (8) identities at `m = d` on every
/// ring, exhaustively when `|R|` fits the budget and sampled otherwise.
pub fn theorem23_check(d: usize, specs: &[RingSpec], budget: u64, seed: u64) -> Result<PropReport> {
    if d < 2 {
        return Err(Error::Precondition("d must be at least 2".into()));
    }
    if let Some(s) = specs.iter().find(|s| s.length() > d) {
        return Err(Error::Precondition(format!(
            "{s} has length {} > {d}",
            s.length()
        )));
    }
    let mut rows = Vec::new();
    let (mut holds, mut cases) = (true, 0);
    for spec in specs {
        let mode = if spec.order().is_some_and(|o| o <= budget as u128) {
            Mode::Exhaustive
        } else {
            Mode::Sampled
        };
        let [i8a, i8b] = identities8(d as u64);
        for (name, (l, r)) in [("7", identity7(d - 2)), ("8a", i8a), ("8b", i8b)] {
            let v = check_identity(spec, &l, &r, mode, budget, seed)?;
            holds &= v.holds;
            cases += v.cases_checked;
            rows.push(json!({ "ring": spec.to_string(), "identity": name, "verdict": v }));
        }
    }
    let ring = specs
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    Ok(PropReport {
        ring,
        property: format!("theorem23(d={d})"),
        holds,
        witness_or_counterexample: Some(json!(rows)),
        cases,
    })
}

/// `s_{n+1} s_n = s_n` at an arbitrary `n`; used for exploring indices
/// below `d - 2`, where nothing is claimed.
pub fn s_scan(spec: &RingSpec, n: usize, mode: Mode, budget: u64, seed: u64) -> Result<Verdict> {
    let (l, r) = identity7(n);
    check_identity(spec, &l, &r, mode, budget, seed)
}
