use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::trace::{run_reduction, ReductionTrace, Status};
use crate::error::{Error, Result};
use crate::lattice::{common_complement, mvn_witness, AxisChecks, Ideal};
use crate::linalg::Mat;
use crate::ring::{RingElement, RingSpec};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CertKind {
    Axis,
    Unit,
}

/// A witness element with the outcome of each defining equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub kind: CertKind,
    pub payload: RingElement,
    pub verified: BTreeMap<String, bool>,
}

impl Certificate {
    pub fn all_verified(&self) -> bool {
        !self.verified.is_empty() && self.verified.values().all(|&v| v)
    }
}

fn axis_record(c: &AxisChecks) -> BTreeMap<String, bool> {
    [
        ("a+b=a+c", c.ab_join_eq_ac_join),
        ("a+b=b+c", c.ab_join_eq_bc_join),
        ("a+c=b+c", c.ac_join_eq_bc_join),
        ("ab=ac", c.ab_meet_eq_ac_meet),
        ("ab=bc", c.ab_meet_eq_bc_meet),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect()
}

fn unit_record(a: &RingElement, u: &RingElement) -> BTreeMap<String, bool> {
    let invertible = u.same_spec(a) && u.is_unit();
    let regular = u.same_spec(a) && a.mul(u).mul(a) == *a;
    [
        ("invertible".to_string(), invertible),
        ("aua=a".to_string(), regular),
    ]
    .into_iter()
    .collect()
}

fn require_stable(trace: &ReductionTrace) -> Result<()> {
    match trace.status {
        Status::Stabilized { .. } => Ok(()),
        Status::Exhausted { .. } => Err(Error::NotStabilized),
    }
}

/// An axis `c` with `bR ∼_c aR`. The stabilized trace is what guarantees one
/// exists; the element itself comes from the common complement construction.
pub fn axis_witness(
    a: &RingElement,
    b: &RingElement,
    trace: &ReductionTrace,
) -> Result<Certificate> {
    require_stable(trace)?;
    let axis = common_complement(&Ideal::of(b), &Ideal::of(a))?;
    Ok(Certificate {
        kind: CertKind::Axis,
        payload: axis.c,
        verified: axis_record(&axis.checks),
    })
}

/// A unit `u` with `aua = a`.
///
/// With `e = ba`, `f = ab`, `g` generating `eR ∩ fR`, complements
/// `e'R ⊕ gR = eR`, `f'R ⊕ gR = fR` and `hR = eR + fR`, we have
/// `R = fR ⊕ e'R ⊕ (1-h)R = eR ⊕ f'R ⊕ (1-h)R`. The automorphism acts by
/// `b` on `fR`, by a witness `e'R → f'R` on `e'R` and by the identity on
/// `(1-h)R`; `u` is the image of `1`.
pub fn unit_witness(
    a: &RingElement,
    b: &RingElement,
    trace: &ReductionTrace,
) -> Result<Certificate> {
    require_stable(trace)?;
    let spec = a.spec();
    let zero = Ideal::zero(&spec);
    let (e, f) = (b.mul(a), a.mul(b));
    let (ie, i_f) = (Ideal::of(&e), Ideal::of(&f));
    let ig = ie.meet(&i_f);
    let e1 = ig.relative_complement(&zero, &ie)?.idempotent();
    let f1 = ig.relative_complement(&zero, &i_f)?.idempotent();
    let h = ie.join(&i_f).idempotent();
    let nh = h.one_minus();
    let wit = mvn_witness(&e1, &f1)?;

    let mut parts = Vec::new();
    for k in 0..spec.components().len() {
        let (pf, pe1, pnh) = (&f.parts()[k], &e1.parts()[k], &nh.parts()[k]);
        let n = pf.rows();
        let system = pf.hstack(pe1)?.hstack(pnh)?;
        let id = Mat::identity(pf.field(), n);
        let sol = system
            .solve_right(&id)?
            .ok_or_else(|| Error::Verification("fR ⊕ e'R ⊕ (1-h)R spans R".into()))?;
        let rows = |lo: usize| sol.select_rows(&(lo..lo + n).collect::<Vec<_>>());
        let (r0, s0, t0) = (pf * &rows(0), pe1 * &rows(n), pnh * &rows(2 * n));
        let u = &(&(&b.parts()[k] * &r0) + &(&wit.x.parts()[k] * &s0)) + &t0;
        parts.push(u);
    }
    let u = RingElement::from_parts(parts)?;
    let verified = unit_record(a, &u);
    Ok(Certificate {
        kind: CertKind::Unit,
        payload: u,
        verified,
    })
}

/// Recomputes the defining equalities of `cert` from scratch.
pub fn verify_certificate(a: &RingElement, b: &RingElement, cert: &Certificate) -> bool {
    if !cert.payload.same_spec(a) || !a.same_spec(b) {
        return false;
    }
    match cert.kind {
        CertKind::Axis => {
            AxisChecks::compute(&Ideal::of(b), &Ideal::of(a), &Ideal::of(&cert.payload)).all()
        }
        CertKind::Unit => unit_record(a, &cert.payload).values().all(|&v| v),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntryJson {
    pub n: usize,
    pub g_height: usize,
    pub e: String,
    pub f: String,
    pub g: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatusJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub stabilized_at: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub exhausted_after: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedJson {
    pub axis: bool,
    pub unit: bool,
}

/// Serialized reduction run with its certificates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub ring: String,
    pub a: String,
    pub b: String,
    pub trace: Vec<TraceEntryJson>,
    pub status: StatusJson,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub axis: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub unit: Option<String>,
    pub verified: VerifiedJson,
}

/// Outcome of independently rechecking a certificate document.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DocCheck {
    pub reflexive: bool,
    pub trace: bool,
    pub axis: bool,
    pub unit: bool,
}

impl DocCheck {
    pub fn all(&self) -> bool {
        self.reflexive && self.trace && self.axis && self.unit
    }
}

impl CertificateDoc {
    pub fn build(
        trace: &ReductionTrace,
        axis: Option<&Certificate>,
        unit: Option<&Certificate>,
    ) -> Self {
        let status = match trace.status {
            Status::Stabilized { at } => StatusJson {
                stabilized_at: Some(at),
                exhausted_after: None,
            },
            Status::Exhausted { max_steps } => StatusJson {
                stabilized_at: None,
                exhausted_after: Some(max_steps),
            },
        };
        Self {
            ring: trace.a.spec().to_string(),
            a: trace.a.to_string(),
            b: trace.b.to_string(),
            trace: trace
                .steps
                .iter()
                .map(|s| TraceEntryJson {
                    n: s.n,
                    g_height: s.heights.g,
                    e: s.e.to_string(),
                    f: s.f.to_string(),
                    g: s.g.to_string(),
                })
                .collect(),
            status,
            axis: axis.map(|c| c.payload.to_string()),
            unit: unit.map(|c| c.payload.to_string()),
            verified: VerifiedJson {
                axis: axis.is_some_and(Certificate::all_verified),
                unit: unit.is_some_and(Certificate::all_verified),
            },
        }
    }

    /// Parses every element and rechecks trace, axis and unit. Recorded
    /// `verified` flags are ignored.
    pub fn check(&self) -> Result<DocCheck> {
        let spec: RingSpec = self.ring.parse()?;
        let a = RingElement::parse(&spec, &self.a)?;
        let b = RingElement::parse(&spec, &self.b)?;
        let reflexive = super::trace::is_mutually_reflexive(&a, &b);
        let trace = reflexive
            && run_reduction(&a, &b, None)
                .map(|t| {
                    let fresh = CertificateDoc::build(&t, None, None);
                    fresh.trace == self.trace && fresh.status == self.status
                })
                .unwrap_or(false);
        let check_elem = |text: &Option<String>, kind: CertKind| -> Result<bool> {
            let Some(text) = text else { return Ok(false) };
            let payload = RingElement::parse(&spec, text)?;
            Ok(verify_certificate(
                &a,
                &b,
                &Certificate {
                    kind,
                    payload,
                    verified: BTreeMap::new(),
                },
            ))
        };
        Ok(DocCheck {
            reflexive,
            trace,
            axis: check_elem(&self.axis, CertKind::Axis)?,
            unit: check_elem(&self.unit, CertKind::Unit)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::trace::random_reflexive_pair;
    use crate::ring::{case_rng, mat_elem};

    fn certs(a: &RingElement, b: &RingElement) -> (ReductionTrace, Certificate, Certificate) {
        let t = run_reduction(a, b, None).unwrap();
        let ax = axis_witness(a, b, &t).unwrap();
        let u = unit_witness(a, b, &t).unwrap();
        (t, ax, u)
    }

    #[test]
    fn worked_examples() {
        let a = mat_elem(2, 2, &[0, 1, 0, 0]);
        let b = mat_elem(2, 2, &[0, 0, 1, 0]);
        let (_, ax, u) = certs(&a, &b);
        assert_eq!(ax.payload, mat_elem(2, 2, &[1, 0, 1, 0]));
        assert_eq!(u.payload, mat_elem(2, 2, &[0, 1, 1, 0]));
        assert!(ax.all_verified() && u.all_verified());

        let spec = RingSpec::matrix(2, 2).unwrap();
        let one = RingElement::one(&spec);
        let (_, ax, u) = certs(&one, &one);
        assert!(ax.payload.is_one() && u.payload.is_one());

        let zero = RingElement::zero(&spec);
        let (_, _, u) = certs(&zero, &zero);
        assert!(u.payload.is_one());

        let inv = mat_elem(2, 3, &[1, 0, 0, 0, 1, 1, 1, 0, 1]);
        let (_, _, u) = certs(&inv, &inv.unit_inverse().unwrap());
        assert_eq!(u.payload, inv.unit_inverse().unwrap());
    }

    #[test]
    fn tampering_is_detected() {
        let spec = RingSpec::matrix(3, 2).unwrap();
        let (a, b) = random_reflexive_pair(&spec, &mut case_rng(8, 0));
        let (_, ax, u) = certs(&a, &b);
        assert!(verify_certificate(&a, &b, &ax) && verify_certificate(&a, &b, &u));

        // for a = E12 every valid u has u_21 = 1, so flipping it must fail
        let a = mat_elem(2, 2, &[0, 1, 0, 0]);
        let b = mat_elem(2, 2, &[0, 0, 1, 0]);
        let (_, _, u) = certs(&a, &b);
        let mut parts = u.payload.clone().into_parts();
        let v = parts[0].get(1, 0);
        parts[0].set(1, 0, 1 - v);
        let bad = Certificate {
            payload: RingElement::from_parts(parts).unwrap(),
            ..u.clone()
        };
        assert!(!verify_certificate(&a, &b, &bad));
        let wrong_kind = Certificate {
            kind: CertKind::Axis,
            ..u
        };
        assert!(!verify_certificate(&a, &b, &wrong_kind));
    }

    #[test]
    fn random_pairs_certify() {
        for (spec, seed) in [
            ("M3(F2)", 1),
            ("M3(F3)", 2),
            ("M2(F3)xM2(F2)", 3),
            ("M5(F2)", 4),
        ] {
            let spec: RingSpec = spec.parse().unwrap();
            for i in 0..150 {
                let (a, b) = random_reflexive_pair(&spec, &mut case_rng(seed, i));
                let (_, ax, u) = certs(&a, &b);
                assert!(
                    ax.all_verified() && verify_certificate(&a, &b, &ax),
                    "{a} {b}"
                );
                assert!(
                    u.all_verified() && verify_certificate(&a, &b, &u),
                    "{a} {b}"
                );
            }
        }
    }

    #[test]
    fn document_round_trip() {
        let spec = RingSpec::matrix(3, 3).unwrap();
        let (a, b) = random_reflexive_pair(&spec, &mut case_rng(5, 5));
        let (t, ax, u) = certs(&a, &b);
        let doc = CertificateDoc::build(&t, Some(&ax), Some(&u));
        let json = serde_json::to_string(&doc).unwrap();
        let back: CertificateDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(back, doc);
        assert!(back.check().unwrap().all());
        let mut forged = back.clone();
        forged.axis = Some(RingElement::zero(&spec).to_string());
        forged.unit = Some(RingElement::zero(&spec).to_string());
        let c = forged.check().unwrap();
        assert!(!c.unit);
        assert_eq!(
            c.axis,
            AxisChecks::compute(&Ideal::of(&b), &Ideal::of(&a), &Ideal::zero(&spec)).all()
        );
    }
}
