//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; exits nonzero on any failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use perspectivity::examples::verify_example1;
use perspectivity::lattice::Ideal;
use perspectivity::laws::{run_suite, LawConfig, SUITES};
use perspectivity::props::{
    handelman_scan, identities8, identity7, is_directly_finite, strongly_pi_regular_scan,
};
use perspectivity::reduction::{
    axis_witness, is_mutually_reflexive, random_reflexive_pair, run_reduction, unit_witness,
    verify_certificate,
};
use perspectivity::ring::{case_rng, enumerate_elements, RingElement, RingSpec, DEFAULT_BUDGET};
use perspectivity::term::{
    check_identity, env_xy, parse_term, term_join, term_meet, term_ominus, term_t,
};
use perspectivity::Mode;

const PAIRS_PER_RING: u64 = 1000;
const PAIR_SEED: u64 = 20_251;
const LAW_TRIALS: u64 = 1000;
const LAW_DIM: usize = 6;
const LAW_SEED: u64 = 7;
const TERM_DEPTH: usize = 4;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn spec(s: &str) -> RingSpec {
    s.parse().expect("ring spec")
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn require(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_defining_identity() -> Outcome {
    let (l, r) = (parse_term("x*x'*x").unwrap(), parse_term("x").unwrap());
    let mut total = 0;
    for (ring, expect) in [("M2(F2)", 16), ("M3(F2)", 512), ("M2(F3)", 81)] {
        let v = check_identity(&spec(ring), &l, &r, Mode::Exhaustive, DEFAULT_BUDGET, 0)
            .map_err(|e| e.to_string())?;
        require(v.holds, || {
            format!("{ring}: counterexample {:?}", v.counterexample)
        })?;
        require(v.cases_checked == expect, || {
            format!("{ring}: {} cases", v.cases_checked)
        })?;
        total += v.cases_checked;
    }
    Ok(format!("{total} elements"))
}

fn c2_length_two_pairs() -> Outcome {
    let s = spec("M2(F2)");
    let all: Vec<RingElement> = enumerate_elements(&s, 16).unwrap().collect();
    let (t0, t1) = (term_t(0), term_t(1));
    let mut pairs = 0;
    for a in &all {
        for b in all.iter().filter(|b| is_mutually_reflexive(a, b)) {
            pairs += 1;
            let env = env_xy(a, Some(b));
            let v0 = t0.eval(&s, &env).unwrap();
            let v1 = t1.eval(&s, &env).unwrap();
            require(v1.mul(&v0) == v0, || format!("a={a} b={b}"))?;
        }
    }
    Ok(format!("{pairs} mutually reflexive pairs"))
}

fn c3_identity7() -> Outcome {
    let mut total = 0;
    for (ring, d) in [("M2(F2)", 2), ("M2(F3)", 2), ("M3(F2)", 3)] {
        let (l, r) = identity7(d - 2);
        let v = check_identity(&spec(ring), &l, &r, Mode::Exhaustive, DEFAULT_BUDGET, 0)
            .map_err(|e| e.to_string())?;
        require(v.holds, || {
            format!("{ring}: counterexample {:?}", v.counterexample)
        })?;
        total += v.cases_checked;
    }
    require(total == 16 + 81 + 512, || format!("{total} cases"))?;
    Ok(format!("{total} cases"))
}

fn c4_identities8() -> Outcome {
    let mut total = 0;
    for (ring, d) in [("M2(F2)", 2), ("M2(F3)", 2), ("M3(F2)", 3)] {
        for (k, (l, r)) in identities8(d).into_iter().enumerate() {
            let v = check_identity(&spec(ring), &l, &r, Mode::Exhaustive, DEFAULT_BUDGET, 0)
                .map_err(|e| e.to_string())?;
            require(v.holds, || {
                format!("{ring} identity {k}: {:?}", v.counterexample)
            })?;
            total += v.cases_checked;
        }
    }
    Ok(format!("{total} cases over both identities"))
}

const PAIR_RINGS: [&str; 3] = ["M3(F2)", "M4(F2)", "M3(F3)"];

fn c5_certificates() -> Outcome {
    for ring in PAIR_RINGS {
        let s = spec(ring);
        for i in 0..PAIRS_PER_RING {
            let (a, b) = random_reflexive_pair(&s, &mut case_rng(PAIR_SEED, i));
            let ctx = || format!("{ring} pair {i}: a={a} b={b}");
            let t = run_reduction(&a, &b, None).map_err(|e| format!("{}: {e}", ctx()))?;
            require(t.stabilized_at().is_some_and(|at| at <= s.length()), ctx)?;
            let axis = axis_witness(&a, &b, &t).map_err(|e| format!("{}: {e}", ctx()))?;
            let unit = unit_witness(&a, &b, &t).map_err(|e| format!("{}: {e}", ctx()))?;
            require(
                axis.all_verified() && verify_certificate(&a, &b, &axis),
                ctx,
            )?;
            require(
                unit.all_verified() && verify_certificate(&a, &b, &unit),
                ctx,
            )?;
        }
    }
    Ok(format!(
        "{} pairs in {} rings",
        PAIRS_PER_RING * 3,
        PAIR_RINGS.len()
    ))
}

/// `g_0..=g_depth` computed directly from the recursion, without stopping
/// at stabilization.
fn g_chain(a: &RingElement, b: &RingElement, depth: usize) -> Vec<Ideal> {
    let (mut e, mut f) = (b.mul(a), a.mul(b));
    let (mut ap, mut bp) = (a.clone(), b.clone());
    let mut out = Vec::new();
    for _ in 0..=depth {
        let g = Ideal::of(&e).meet(&Ideal::of(&f));
        let gi = g.idempotent();
        out.push(g);
        (e, f) = (bp.mul(&gi), ap.mul(&gi));
        ap = ap.mul(&ap);
        bp = bp.mul(&bp);
    }
    out
}

fn c6_term_bridge() -> Outcome {
    let mut checked = 0;
    for ring in PAIR_RINGS {
        let s = spec(ring);
        let terms: Vec<_> = (0..=TERM_DEPTH).map(term_t).collect();
        for i in 0..PAIRS_PER_RING {
            let (a, b) = random_reflexive_pair(&s, &mut case_rng(PAIR_SEED, i));
            let chain = g_chain(&a, &b, TERM_DEPTH);
            let t = run_reduction(&a, &b, None).unwrap();
            for (n, step) in t.steps.iter().enumerate().take(TERM_DEPTH + 1) {
                require(Ideal::of(&step.g) == chain[n], || {
                    format!("{ring} pair {i}: trace g_{n}")
                })?;
            }
            let env = env_xy(&a, Some(&b));
            for (n, term) in terms.iter().enumerate() {
                let v = term.eval(&s, &env).unwrap();
                require(Ideal::of(&v) == chain[n], || {
                    format!("{ring} pair {i}: t_{n} a={a} b={b}")
                })?;
                checked += 1;
            }
        }
    }
    let s = spec("M2(F2)");
    let all: Vec<RingElement> = enumerate_elements(&s, 16).unwrap().collect();
    let (join, meet, ominus) = (term_join(), term_meet(), term_ominus());
    let mut pairs = 0;
    for x in &all {
        for y in &all {
            pairs += 1;
            let ctx = || format!("x={x} y={y}");
            let (ix, iy) = (Ideal::of(x), Ideal::of(y));
            let env = env_xy(x, Some(y));
            let j = join.eval(&s, &env).unwrap();
            require(Ideal::of(&j) == ix.join(&iy), ctx)?;
            require(
                Ideal::of(&meet.eval(&s, &env).unwrap()) == ix.meet(&iy),
                ctx,
            )?;
            // e = x ∨ y, g = gamma(y) with gR <= eR: (e ⊖ g)R ⊕ gR = eR
            let g = y.gamma();
            let d = ominus.eval(&s, &env_xy(&j, Some(&g))).unwrap();
            let (id, ig) = (Ideal::of(&d), Ideal::of(&g));
            require(id.meet(&ig).is_zero() && id.join(&ig) == Ideal::of(&j), ctx)?;
        }
    }
    Ok(format!(
        "{checked} t_n evaluations, {pairs} lattice-term pairs"
    ))
}

fn c7_law_suites() -> Outcome {
    let cfg = LawConfig::subspaces(LAW_DIM, 2, LAW_TRIALS, LAW_SEED).unwrap();
    let mut parts = Vec::new();
    for name in SUITES {
        let v = run_suite(name, &cfg).map_err(|e| e.to_string())?;
        require(v.ok(), || format!("{name}: {v:?}"))?;
        require(v.passed >= LAW_TRIALS * 95 / 100, || {
            format!("{name}: only {} of {LAW_TRIALS} trials ran", v.passed)
        })?;
        parts.push(format!("{name}={}", v.passed));
    }
    Ok(parts.join(" "))
}

fn c8_example1() -> Outcome {
    let mut heights = Vec::new();
    for n in 0..=3 {
        let r = verify_example1(n, 2).map_err(|e| e.to_string())?;
        let detail = r.witness_or_counterexample.unwrap();
        require(r.holds, || format!("n={n}: {}", detail["checks"]))?;
        heights.push(format!("n={n}:{}", detail["g_heights"]));
    }
    Ok(heights.join(" "))
}

const SCAN_RINGS: [&str; 4] = ["M2(F2)", "M3(F2)", "M2(F3)", "M2(F2)xM1(F3)"];

fn c9_handelman() -> Outcome {
    let mut cases = 0;
    for ring in SCAN_RINGS {
        let s = spec(ring);
        let h = handelman_scan(&s, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        require(h.holds, || {
            format!("{ring}: {:?}", h.witness_or_counterexample)
        })?;
        let df = is_directly_finite(&s, Mode::Exhaustive, DEFAULT_BUDGET, 0)
            .map_err(|e| e.to_string())?;
        require(df.holds, || {
            format!(
                "{ring} direct finiteness: {:?}",
                df.witness_or_counterexample
            )
        })?;
        cases += h.cases + df.cases;
    }
    Ok(format!("{cases} cases"))
}

fn c10_strong_pi() -> Outcome {
    let mut cases = 0;
    for ring in SCAN_RINGS {
        let r = strongly_pi_regular_scan(&spec(ring), DEFAULT_BUDGET).map_err(|e| e.to_string())?;
        require(r.holds, || {
            format!("{ring}: {:?}", r.witness_or_counterexample)
        })?;
        cases += r.cases;
    }
    Ok(format!("{cases} elements"))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            name: "defining identity xx'x = x",
            limit: secs(5),
            run: c1_defining_identity,
        },
        Criterion {
            id: 2,
            name: "t_1 t_0 = t_0 on reflexive pairs of M2(F2)",
            limit: None,
            run: c2_length_two_pairs,
        },
        Criterion {
            id: 3,
            name: "s_{d-1} s_{d-2} = s_{d-2}",
            limit: secs(10),
            run: c3_identity7,
        },
        Criterion {
            id: 4,
            name: "power identities at m = d",
            limit: None,
            run: c4_identities8,
        },
        Criterion {
            id: 5,
            name: "axis and unit certificates",
            limit: secs(60),
            run: c5_certificates,
        },
        Criterion {
            id: 6,
            name: "terms match the lattice",
            limit: None,
            run: c6_term_bridge,
        },
        Criterion {
            id: 7,
            name: "law suites",
            limit: secs(60),
            run: c7_law_suites,
        },
        Criterion {
            id: 8,
            name: "strictly dropping examples",
            limit: secs(10),
            run: c8_example1,
        },
        Criterion {
            id: 9,
            name: "perspective rings and direct finiteness",
            limit: secs(120),
            run: c9_handelman,
        },
        Criterion {
            id: 10,
            name: "strong pi-regularity and unit-regularity",
            limit: None,
            run: c10_strong_pi,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let timing = match c.limit {
            Some(l) => format!("{:.2}s, limit {}s", elapsed.as_secs_f64(), l.as_secs()),
            None => format!("{:.2}s", elapsed.as_secs_f64()),
        };
        let result = match outcome {
            Ok(_) if c.limit.is_some_and(|l| elapsed > l) => Err("time limit exceeded".to_string()),
            other => other,
        };
        match result {
            Ok(detail) => println!(
                "criterion {:>2} PASS  {}: {detail} ({timing})",
                c.id, c.name
            ),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {}: {why} ({timing})", c.id, c.name);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
