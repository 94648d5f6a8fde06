use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ast::Term;
use crate::error::{Error, Result};
use crate::ring::{case_rng, element_at, random_element, RingElement, RingSpec};
use crate::Mode;

/// Outcome of checking `lhs = rhs` on a ring.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    /// First failing assignment in case order, as `(variable, value)` pairs.
    pub counterexample: Option<Vec<(String, RingElement)>>,
    pub cases_checked: u64,
    pub mode: Mode,
}

impl Verdict {
    pub fn counterexample_env(&self) -> Option<HashMap<String, RingElement>> {
        self.counterexample
            .as_ref()
            .map(|c| c.iter().cloned().collect())
    }
}

/// Checks `lhs = rhs` for every assignment of the free variables.
///
/// `Mode::Exhaustive` visits all `|R|^k` assignments (fails if that exceeds
/// `budget`); the first variable in sorted order is the most significant
/// digit. `Mode::Sampled` draws `budget` assignments, case `i` from
/// `case_rng(seed, i)`. Either way the reported counterexample is the first
/// failing case, whatever the thread split.
pub fn check_identity(
    spec: &RingSpec,
    lhs: &Term,
    rhs: &Term,
    mode: Mode,
    budget: u64,
    seed: u64,
) -> Result<Verdict> {
    let mut vars: Vec<String> = lhs.variables().union(&rhs.variables()).cloned().collect();
    vars.sort();
    let fails = |env: &HashMap<String, RingElement>| -> bool {
        lhs.eval(spec, env).expect("bound") != rhs.eval(spec, env).expect("bound")
    };
    let to_env = |vals: Vec<RingElement>| -> Vec<(String, RingElement)> {
        vars.iter().cloned().zip(vals).collect()
    };

    let (cases, first) = match mode {
        Mode::Exhaustive => {
            let order = spec.order().unwrap_or(u128::MAX);
            let total = order.checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
            if total > budget as u128 {
                return Err(Error::BudgetExceeded {
                    needed: total,
                    budget,
                });
            }
            let order = order as u64;
            let assignment = |mut i: u64| -> Vec<RingElement> {
                let mut vals = vec![RingElement::zero(spec); vars.len()];
                for v in vals.iter_mut().rev() {
                    *v = element_at(spec, i % order);
                    i /= order;
                }
                vals
            };
            let total = total as u64;
            let bad = (0..total).into_par_iter().find_first(|&i| {
                let env: HashMap<_, _> = to_env(assignment(i)).into_iter().collect();
                fails(&env)
            });
            (total, bad.map(|i| to_env(assignment(i))))
        }
        Mode::Sampled => {
            let assignment = |i: u64| -> Vec<RingElement> {
                let mut rng = case_rng(seed, i);
                vars.iter()
                    .map(|_| random_element(spec, &mut rng))
                    .collect()
            };
            let bad = (0..budget).into_par_iter().find_first(|&i| {
                let env: HashMap<_, _> = to_env(assignment(i)).into_iter().collect();
                fails(&env)
            });
            (budget, bad.map(|i| to_env(assignment(i))))
        }
    };
    Ok(Verdict {
        holds: first.is_none(),
        counterexample: first,
        cases_checked: cases,
        mode,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::ast::term_s;
    use crate::term::parse_term;

    fn m2() -> RingSpec {
        RingSpec::matrix(2, 2).unwrap()
    }

    fn check(src_l: &str, src_r: &str, spec: &RingSpec) -> Verdict {
        check_identity(
            spec,
            &parse_term(src_l).unwrap(),
            &parse_term(src_r).unwrap(),
            Mode::Exhaustive,
            1 << 20,
            0,
        )
        .unwrap()
    }

    #[test]
    fn defining_identity_holds() {
        let v = check("x*x'*x", "x", &m2());
        assert!(v.holds);
        assert_eq!(v.cases_checked, 16);
    }

    #[test]
    fn commutativity_fails_with_first_counterexample() {
        let spec = m2();
        let v = check("x*y", "y*x", &spec);
        assert!(!v.holds);
        assert_eq!(v.cases_checked, 256);
        let env = v.counterexample_env().unwrap();
        let (x, y) = (&env["x"], &env["y"]);
        assert_ne!(x.mul(y), y.mul(x));
        // no earlier assignment fails
        let (xi, yi) = (0..16)
            .flat_map(|i| (0..16).map(move |j| (i, j)))
            .find(|&(i, j)| {
                let (a, b) = (element_at(&spec, i), element_at(&spec, j));
                a.mul(&b) != b.mul(&a)
            })
            .unwrap();
        assert_eq!((x, y), (&element_at(&spec, xi), &element_at(&spec, yi)));
    }

    #[test]
    fn power_identity_and_s_terms() {
        let spec = m2();
        assert!(check("x^3*(x^3)'*x^2", "x^2", &spec).holds);
        let v = check_identity(
            &spec,
            &term_s(1).mul(&term_s(0)),
            &term_s(0),
            Mode::Exhaustive,
            16,
            0,
        )
        .unwrap();
        assert!(v.holds && v.cases_checked == 16);
    }

    #[test]
    fn budget_and_sampling() {
        let spec = m2();
        let (l, r) = (parse_term("x*y").unwrap(), parse_term("y*x").unwrap());
        assert!(matches!(
            check_identity(&spec, &l, &r, Mode::Exhaustive, 255, 0),
            Err(Error::BudgetExceeded { .. })
        ));
        let a = check_identity(&spec, &l, &r, Mode::Sampled, 500, 11).unwrap();
        let b = check_identity(&spec, &l, &r, Mode::Sampled, 500, 11).unwrap();
        assert!(!a.holds);
        assert_eq!(a, b);
        let big = RingSpec::matrix(4, 3).unwrap();
        let v = check_identity(
            &big,
            &parse_term("x*x'*x").unwrap(),
            &parse_term("x").unwrap(),
            Mode::Sampled,
            200,
            1,
        )
        .unwrap();
        assert!(v.holds && v.mode == Mode::Sampled);
    }
}
