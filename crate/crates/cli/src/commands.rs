use std::error::Error as StdError;
use std::fs;
use std::io::{self, Write};

use perspectivity::examples::verify_example1;
use perspectivity::laws::{run_suite, LawConfig, Sampling, SUITES};
use perspectivity::props::{
    ehrlich_check, handelman_scan, identities8, identity7, is_directly_finite,
    is_unit_regular_element, strong_pi_index, strongly_pi_regular_scan, theorem23_check,
    PropReport,
};
use perspectivity::reduction::{
    axis_witness, lemma_ind_decomposition, run_reduction, unit_witness, CertificateDoc,
};
use perspectivity::ring::{RingElement, RingSpec, DEFAULT_BUDGET};
use perspectivity::term::{check_identity, parse_term, Term};
use perspectivity::Mode;
use serde_json::{json, Value};

use crate::args::{
    CertifyArgs, Check, Cli, Command, ExampleArgs, Format, IdentityArgs, LawArgs, PairArgs,
    PropArgs, SamplingArg, ScanMode, Scheme,
};

type Res<T> = Result<T, Box<dyn StdError>>;

/// Randomized commands fail without `--seed` when this is set to anything
/// but `0` or the empty string.
pub const STRICT_SEED_ENV: &str = "PERSP_STRICT_SEED";
/// Default enumeration budget.
pub const BUDGET_ENV: &str = "PERSP_BUDGET";

pub struct Output {
    pub ok: bool,
    pub json: Value,
    pub text: String,
    force_json: bool,
}

impl Output {
    fn new(ok: bool, json: Value, text: String) -> Self {
        Self {
            ok,
            json,
            text,
            force_json: false,
        }
    }

    pub fn emit(&self, cli: &Cli) -> io::Result<()> {
        let body = if cli.format == Format::Json || self.force_json {
            let mut s = serde_json::to_string_pretty(&self.json).map_err(io::Error::other)?;
            s.push('\n');
            s
        } else {
            self.text.clone()
        };
        match &cli.out {
            Some(path) => fs::write(path, body),
            None => io::stdout().lock().write_all(body.as_bytes()),
        }
    }
}

pub fn run(cli: &Cli) -> Res<Output> {
    match &cli.command {
        Command::Reduce(a) => reduce(a),
        Command::Certify(a) => certify(a),
        Command::Identities(a) => identities(a),
        Command::Laws(a) => laws(a),
        Command::Props(a) => props(a),
        Command::Example1(a) => example1(a),
    }
}

fn strict_seed() -> bool {
    std::env::var(STRICT_SEED_ENV).is_ok_and(|v| !v.is_empty() && v != "0")
}

fn seed(given: Option<u64>, randomized: bool) -> Res<u64> {
    match given {
        Some(s) => Ok(s),
        None if randomized && strict_seed() => {
            Err(format!("--seed is required when {STRICT_SEED_ENV} is set").into())
        }
        None => Ok(0),
    }
}

fn budget(given: Option<u64>) -> Res<u64> {
    if let Some(b) = given {
        return Ok(b);
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .parse()
            .map_err(|_| format!("{BUDGET_ENV}={v} is not a number").into()),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn pair(ring: &str, a: &str, b: Option<&str>) -> Res<(RingElement, RingElement)> {
    let spec: RingSpec = ring.parse()?;
    let a = RingElement::parse(&spec, a)?;
    let b = match b {
        Some(b) => RingElement::parse(&spec, b)?,
        None => a.reflexive(),
    };
    Ok((a, b))
}

fn certificate_doc(
    a: &RingElement,
    b: &RingElement,
    max_steps: Option<usize>,
) -> Res<(CertificateDoc, perspectivity::reduction::ReductionTrace)> {
    let trace = run_reduction(a, b, max_steps)?;
    let axis = axis_witness(a, b, &trace).ok();
    let unit = unit_witness(a, b, &trace).ok();
    Ok((
        CertificateDoc::build(&trace, axis.as_ref(), unit.as_ref()),
        trace,
    ))
}

fn doc_text(doc: &CertificateDoc) -> String {
    let heights: Vec<String> = doc.trace.iter().map(|t| t.g_height.to_string()).collect();
    let status = match (doc.status.stabilized_at, doc.status.exhausted_after) {
        (Some(at), _) => format!("stabilized at {at}"),
        (_, Some(n)) => format!("exhausted after {n} steps"),
        _ => "unknown".into(),
    };
    let show = |o: &Option<String>| o.clone().unwrap_or_else(|| "-".into());
    format!(
        "ring {}\ng heights {}\n{status}\naxis {} ({})\nunit {} ({})\n",
        doc.ring,
        heights.join(" "),
        show(&doc.axis),
        verdict_word(doc.verified.axis),
        show(&doc.unit),
        verdict_word(doc.verified.unit),
    )
}

fn verdict_word(ok: bool) -> &'static str {
    if ok {
        "verified"
    } else {
        "FAILED"
    }
}

fn reduce(args: &PairArgs) -> Res<Output> {
    let (a, b) = pair(&args.ring, &args.a, args.b.as_deref())?;
    let (doc, trace) = certificate_doc(&a, &b, args.max_steps)?;
    let invariants = trace.check_invariants().is_ok();
    let decomposition = lemma_ind_decomposition(&trace).ok().map(|d| d.checks);
    let ok = invariants
        && doc.verified.axis
        && doc.verified.unit
        && decomposition.is_some_and(|c| c.all());
    let mut json = serde_json::to_value(&doc)?;
    json["invariants"] = json!(invariants);
    json["decomposition"] = json!(decomposition);
    let mut text = doc_text(&doc);
    text.push_str(&format!("invariants {}\n", verdict_word(invariants)));
    Ok(Output::new(ok, json, text))
}

fn certify(args: &CertifyArgs) -> Res<Output> {
    if let Some(path) = &args.verify {
        let raw = fs::read_to_string(path)?;
        let doc: CertificateDoc = serde_json::from_str(&raw)?;
        let check = doc.check()?;
        let text = format!(
            "reflexive {}\ntrace {}\naxis {}\nunit {}\n",
            verdict_word(check.reflexive),
            verdict_word(check.trace),
            verdict_word(check.axis),
            verdict_word(check.unit)
        );
        return Ok(Output::new(check.all(), serde_json::to_value(check)?, text));
    }
    let (ring, a) = (
        args.ring.as_deref().unwrap_or_default(),
        args.a.as_deref().unwrap_or_default(),
    );
    let (a, b) = pair(ring, a, args.b.as_deref())?;
    let (doc, _) = certificate_doc(&a, &b, None)?;
    let ok = doc.verified.axis && doc.verified.unit;
    Ok(Output::new(ok, serde_json::to_value(&doc)?, doc_text(&doc)))
}

fn identities(args: &IdentityArgs) -> Res<Output> {
    let spec: RingSpec = args.ring.parse()?;
    let mode = match args.mode {
        ScanMode::Exhaustive => Mode::Exhaustive,
        ScanMode::Sampled => Mode::Sampled,
    };
    let seed = seed(args.seed, mode == Mode::Sampled)?;
    let budget = budget(args.budget)?;
    // (name, lhs label, rhs label, lhs, rhs); scheme terms are too large to print
    let pairs: Vec<(String, String, String, Term, Term)> = match (args.scheme, args.d) {
        (Some(scheme), Some(d)) => {
            if d < 2 {
                return Err("--d must be at least 2".into());
            }
            if spec.length() > d {
                return Err(format!("{spec} has length {} > {d}", spec.length()).into());
            }
            match scheme {
                Scheme::Thm23Seven => {
                    let (l, r) = identity7(d - 2);
                    let n = d - 2;
                    vec![(
                        "7".into(),
                        format!("s[{}](x)*s[{n}](x)", n + 1),
                        format!("s[{n}](x)"),
                        l,
                        r,
                    )]
                }
                Scheme::Thm23Eight => {
                    let [(l1, r1), (l2, r2)] = identities8(d as u64);
                    let (m, m1) = (d, d + 1);
                    vec![
                        (
                            "8a".into(),
                            format!("x^{m1}*plus(x^{m1})*x^{m}"),
                            format!("x^{m}"),
                            l1,
                            r1,
                        ),
                        (
                            "8b".into(),
                            format!("x^{m}*plus(x^{m1})*x^{m1}"),
                            format!("x^{m}"),
                            l2,
                            r2,
                        ),
                    ]
                }
            }
        }
        _ => {
            let (l, r) = (
                args.lhs.as_deref().unwrap_or_default(),
                args.rhs.as_deref().unwrap_or_default(),
            );
            let (lt, rt) = (parse_term(l)?, parse_term(r)?);
            vec![(
                "custom".into(),
                l.trim().to_string(),
                r.trim().to_string(),
                lt,
                rt,
            )]
        }
    };
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    for (name, ls, rs, l, r) in pairs {
        let v = check_identity(&spec, &l, &r, mode, budget, seed)?;
        ok &= v.holds;
        text.push_str(&format!(
            "{name}: {ls} = {rs}: {} ({} cases)\n",
            if v.holds { "holds" } else { "FAILS" },
            v.cases_checked
        ));
        rows.push(json!({ "name": name, "lhs": ls, "rhs": rs, "verdict": v }));
    }
    let json = json!({ "ring": spec.to_string(), "holds": ok, "identities": rows });
    Ok(Output::new(ok, json, text))
}

fn laws(args: &LawArgs) -> Res<Output> {
    let spec: RingSpec = match &args.ring {
        Some(r) => r.parse()?,
        None => RingSpec::matrix(args.dim, args.p)?,
    };
    let mode = match args.mode {
        SamplingArg::Constructive => Sampling::Constructive,
        SamplingArg::Rejection => Sampling::Rejection,
    };
    let cfg = LawConfig::new(spec, args.trials, seed(args.seed, true)?, mode)?;
    let names: Vec<&str> = if args.suite == "all" {
        SUITES.to_vec()
    } else {
        vec![args.suite.as_str()]
    };
    let mut verdicts = Vec::new();
    let mut text = String::new();
    for name in names {
        let v = run_suite(name, &cfg)?;
        text.push_str(&format!(
            "{}: passed={} failed={} skipped={}\n",
            v.law, v.passed, v.failed, v.skipped
        ));
        if let Some(f) = &v.first_failure {
            text.push_str(&format!("  first failure: {f}\n"));
        }
        verdicts.push(v);
    }
    let ok = verdicts.iter().all(|v| v.ok());
    let json = json!({ "ring": cfg.spec.to_string(), "seed": cfg.seed, "trials": cfg.trials, "mode": mode, "verdicts": verdicts });
    Ok(Output::new(ok, json, text))
}

fn report_output(r: PropReport) -> Res<Output> {
    let text = format!(
        "{} on {}: {} ({} cases)\n",
        r.property,
        r.ring,
        if r.holds { "holds" } else { "FAILS" },
        r.cases
    );
    Ok(Output::new(r.holds, serde_json::to_value(&r)?, text))
}

fn props(args: &PropArgs) -> Res<Output> {
    let spec: RingSpec = args.ring.parse()?;
    let budget = budget(args.budget)?;
    let element = || -> Res<RingElement> {
        let a = args.a.as_deref().ok_or("--a is required for this check")?;
        Ok(RingElement::parse(&spec, a)?)
    };
    let report = match args.check {
        Check::DirectlyFinite => {
            let pairs = spec.order().and_then(|o| o.checked_mul(o));
            if pairs.is_some_and(|p| p <= budget as u128) {
                is_directly_finite(&spec, Mode::Exhaustive, budget, 0)?
            } else {
                is_directly_finite(
                    &spec,
                    Mode::Sampled,
                    budget.min(100_000),
                    seed(args.seed, true)?,
                )?
            }
        }
        Check::UnitRegular => is_unit_regular_element(&element()?),
        Check::StrongPi => {
            let a = element()?;
            let index = strong_pi_index(&a);
            PropReport {
                ring: spec.to_string(),
                property: "strong_pi_index".into(),
                holds: index.is_some(),
                witness_or_counterexample: Some(json!({ "a": a, "index": index })),
                cases: 1,
            }
        }
        Check::Handelman => handelman_scan(&spec, budget)?,
        Check::Ehrlich => ehrlich_check(&spec, budget)?,
        Check::Good3 => strongly_pi_regular_scan(&spec, budget)?,
        Check::Theorem23 => {
            let d = args.d.ok_or("--d is required for theorem23")?;
            let sampled = spec.order().is_none_or(|o| o > budget as u128);
            theorem23_check(d, &[spec], budget, seed(args.seed, sampled)?)?
        }
    };
    report_output(report)
}

fn example1(args: &ExampleArgs) -> Res<Output> {
    let r = verify_example1(args.n, args.p)?;
    let detail = r.witness_or_counterexample.clone().unwrap_or(Value::Null);
    let text = format!(
        "example1 n={} p={} dim={}\ng heights {}\nstabilized at {}\nchecks {}\n",
        args.n,
        args.p,
        detail["dim"],
        detail["g_heights"],
        detail["stabilized_at"],
        detail["checks"]
    );
    let mut out = report_output(r)?;
    out.text = text;
    out.force_json = args.emit_json;
    Ok(out)
}
