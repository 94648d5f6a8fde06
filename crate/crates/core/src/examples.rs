//! A family of reflexive pairs whose reduction chain `g_0 > g_1 > ...`
//! drops strictly for a prescribed number of steps.
//!
//! The depth-0 instance lives on `V = GF(p)^3` with basis `v_1, v_2, v_3`:
//! `a v_1 = v_2`, `a v_2 = 0`, `a v_3 = v_3 - v_2`, and `a+ v_1 = 0`,
//! `a+ v_2 = v_1`, `a+ v_3 = v_1 + v_3`. Depth `n + 1` is built on `V ⊕ V`
//! from depth `n` as `a = [[0, a_0], [1, 0]]`, `a+ = [[0, 1], [a_0+, 0]]`,
//! so squaring reproduces the previous pair on each summand and the chain
//! gains one strict step.

use serde_json::json;

use crate::error::{Error, Result};
use crate::lattice::Ideal;
use crate::linalg::{Mat, PrimeField, Subspace};
use crate::props::PropReport;
use crate::reduction::{
    axis_witness, is_mutually_reflexive, run_reduction, unit_witness, verify_certificate,
};
use crate::ring::{RingElement, RingSpec};
use crate::term::{env_xy, term_t};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExampleOneInstance {
    pub n: usize,
    pub p: u32,
    pub a: Mat,
    pub a_plus: Mat,
    /// `im a+`
    pub v1: Subspace,
    /// `im a`
    pub v2: Subspace,
}

impl ExampleOneInstance {
    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// The instance invariants; `Err` names the first that fails.
    pub fn check(&self) -> Result<()> {
        let fail = |m: &str| Err(Error::Verification(format!("example1 n={}: {m}", self.n)));
        let (a, b) = (&self.a, &self.a_plus);
        if &(&(a * b) * a) != a || &(&(b * a) * b) != b {
            return fail("a a+ a = a and a+ a a+ = a+");
        }
        if self.v1 != Subspace::column_space(b) || self.v2 != Subspace::column_space(a) {
            return fail("V_1 = im a+ and V_2 = im a");
        }
        let d = self.dim();
        if self.v1.dim() + 1 != d || self.v2.dim() + 1 != d {
            return fail("V_1 and V_2 have codimension 1");
        }
        if self.v1.image_under(a) != self.v2 || self.v1.dim() != self.v2.dim() {
            return fail("a maps V_1 onto V_2");
        }
        Ok(())
    }
}

fn base(field: PrimeField) -> (Mat, Mat) {
    let m1 = field.p() - 1;
    let a = Mat::from_columns(field, 3, &[vec![0, 1, 0], vec![0, 0, 0], vec![0, m1, 1]]);
    let b = Mat::from_columns(field, 3, &[vec![0, 0, 0], vec![1, 0, 0], vec![1, 0, 1]]);
    (a, b)
}

fn block2(tl: &Mat, tr: &Mat, bl: &Mat, br: &Mat) -> Mat {
    let top = tl.hstack(tr).expect("rows");
    top.vstack(&bl.hstack(br).expect("rows")).expect("cols")
}

/// Depth-`n` instance on `GF(p)^{3·2^n}`.
pub fn build_example1(n: usize, p: u32) -> Result<ExampleOneInstance> {
    let field = PrimeField::new(p)?;
    let (mut a, mut b) = base(field);
    for _ in 0..n {
        let d = a.rows();
        let (z, i) = (Mat::zeros(field, d, d), Mat::identity(field, d));
        (a, b) = (block2(&z, &a, &i, &z), block2(&z, &i, &b, &z));
    }
    let inst = ExampleOneInstance {
        n,
        p,
        v1: Subspace::column_space(&b),
        v2: Subspace::column_space(&a),
        a,
        a_plus: b,
    };
    inst.check()?;
    Ok(inst)
}

fn rows(s: &Subspace) -> Vec<Vec<u8>> {
    s.basis_rows()
}

/// Builds the depth-`n` instance and checks: the invariants, strict drops
/// `g_0 > ... > g_{n+1}`, `t_{n+1} t_n != t_n` at `(a, a+)`, stabilization
/// by step `dim`, and verified axis and unit certificates.
pub fn verify_example1(n: usize, p: u32) -> Result<PropReport> {
    let inst = build_example1(n, p)?;
    let spec = RingSpec::matrix(inst.dim(), p)?;
    let a = RingElement::from_mat(inst.a.clone());
    let b = RingElement::from_mat(inst.a_plus.clone());
    let mutual = is_mutually_reflexive(&a, &b);
    let trace = run_reduction(&a, &b, None)?;
    trace.check_invariants()?;
    let heights = trace.g_heights();
    let strict = heights.len() >= n + 2 && heights[..n + 2].windows(2).all(|w| w[0] > w[1]);
    let at = trace.stabilized_at();
    let stable = at.is_some_and(|at| at > n && at <= inst.dim());

    let env = env_xy(&a, Some(&b));
    let tn = term_t(n).eval(&spec, &env)?;
    let tn1 = term_t(n + 1).eval(&spec, &env)?;
    let t_fails = tn1.mul(&tn) != tn;
    let t_matches = (0..=n + 1).all(|k| {
        term_t(k)
            .eval(&spec, &env)
            .is_ok_and(|t| Ideal::of(&t) == Ideal::of(&trace.steps[k].g))
    });

    let axis = axis_witness(&a, &b, &trace)?;
    let unit = unit_witness(&a, &b, &trace)?;
    let axis_ok = axis.all_verified() && verify_certificate(&a, &b, &axis);
    let unit_ok = unit.all_verified() && verify_certificate(&a, &b, &unit);

    let holds = mutual && strict && stable && t_fails && t_matches && axis_ok && unit_ok;
    let detail = json!({
        "n": n,
        "p": p,
        "dim": inst.dim(),
        "a": a,
        "a_plus": b,
        "v1": rows(&inst.v1),
        "v2": rows(&inst.v2),
        "g_heights": heights,
        "stabilized_at": at,
        "checks": {
            "mutually_reflexive": mutual,
            "strict_drops": strict,
            "stabilized": stable,
            "t_fails_at_n": t_fails,
            "t_matches_g": t_matches,
            "axis": axis_ok,
            "unit": unit_ok,
        },
        "axis": axis,
        "unit": unit,
    });
    Ok(PropReport {
        ring: spec.to_string(),
        property: format!("example1(n={n})"),
        holds,
        witness_or_counterexample: Some(detail),
        cases: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_instance_matches_assignments() {
        let inst = build_example1(0, 2).unwrap();
        assert_eq!(
            inst.a,
            Mat::from_i64(
                PrimeField::new(2).unwrap(),
                3,
                3,
                &[0, 0, 0, 1, 0, 1, 0, 0, 1]
            )
            .unwrap()
        );
        assert_eq!(
            inst.a_plus,
            Mat::from_i64(
                PrimeField::new(2).unwrap(),
                3,
                3,
                &[0, 1, 1, 0, 0, 0, 0, 0, 1]
            )
            .unwrap()
        );
        let i5 = build_example1(0, 5).unwrap();
        assert_eq!(i5.a.get(1, 2), 4);
    }

    #[test]
    fn depths_zero_to_three() {
        for n in 0..=3 {
            let r = verify_example1(n, 2).unwrap();
            assert!(r.holds, "{}", r.witness_or_counterexample.unwrap());
            let h = r.witness_or_counterexample.unwrap()["g_heights"].clone();
            let h: Vec<usize> = serde_json::from_value(h).unwrap();
            assert!(h.len() >= n + 2);
        }
    }

    #[test]
    fn odd_prime() {
        assert!(verify_example1(1, 3).unwrap().holds);
    }
}
