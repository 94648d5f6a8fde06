use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{RingElement, RingSpec};

#[derive(Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Var(String),
    Zero,
    One,
    Add(Term, Term),
    Neg(Term),
    Mul(Term, Term),
    QuasiInv(Term),
}

/// A term in the language of rings with quasi-inversion.
///
/// Terms are shared DAGs: builders reuse subterms instead of copying them,
/// so `t_n` stays linear in `n` and evaluation visits each shared node once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term(Arc<Node>);

impl Term {
    fn node(n: Node) -> Self {
        Term(Arc::new(n))
    }

    pub fn kind(&self) -> &Node {
        &self.0
    }

    pub fn var(name: &str) -> Self {
        Self::node(Node::Var(name.to_string()))
    }

    pub fn zero() -> Self {
        Self::node(Node::Zero)
    }

    pub fn one() -> Self {
        Self::node(Node::One)
    }

    pub fn add(&self, other: &Term) -> Self {
        Self::node(Node::Add(self.clone(), other.clone()))
    }

    pub fn neg(&self) -> Self {
        Self::node(Node::Neg(self.clone()))
    }

    pub fn sub(&self, other: &Term) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Term) -> Self {
        Self::node(Node::Mul(self.clone(), other.clone()))
    }

    /// `t'`.
    pub fn quasi(&self) -> Self {
        Self::node(Node::QuasiInv(self.clone()))
    }

    /// `1 - t`.
    pub fn one_minus(&self) -> Self {
        Self::one().sub(self)
    }

    /// `t^k` by repeated squaring; `t^0 = 1`.
    pub fn pow(&self, k: u64) -> Self {
        if k == 0 {
            return Self::one();
        }
        let mut acc: Option<Term> = None;
        let mut base = self.clone();
        let mut k = k;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.expect("k > 0")
    }

    /// The integer `k` as `1 + 1 + ...`, built by doubling.
    pub fn integer(k: u64) -> Self {
        match k {
            0 => return Self::zero(),
            1 => return Self::one(),
            _ => {}
        }
        let half = Self::integer(k / 2);
        let twice = half.add(&half);
        if k % 2 == 1 {
            twice.add(&Self::one())
        } else {
            twice
        }
    }

    /// Free variables, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut seen = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&t.0) as usize) {
                continue;
            }
            match t.kind() {
                Node::Var(v) => {
                    out.insert(v.clone());
                }
                Node::Zero | Node::One => {}
                Node::Add(a, b) | Node::Mul(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                Node::Neg(a) | Node::QuasiInv(a) => stack.push(a),
            }
        }
        out
    }

    /// Number of distinct nodes in the DAG.
    pub fn dag_size(&self) -> usize {
        let mut seen = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            if !seen.insert(Arc::as_ptr(&t.0) as usize) {
                continue;
            }
            match t.kind() {
                Node::Add(a, b) | Node::Mul(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                Node::Neg(a) | Node::QuasiInv(a) => stack.push(a),
                _ => {}
            }
        }
        seen.len()
    }

    /// Evaluates with every variable bound in `env`. Shared subterms are
    /// evaluated once.
    pub fn eval(&self, spec: &RingSpec, env: &HashMap<String, RingElement>) -> Result<RingElement> {
        for (name, v) in env {
            if v.spec() != *spec {
                return Err(Error::SpecMismatch {
                    left: spec.to_string(),
                    right: format!("{name} in {}", v.spec()),
                });
            }
        }
        let mut memo = HashMap::new();
        self.eval_memo(spec, env, &mut memo)
    }

    fn eval_memo(
        &self,
        spec: &RingSpec,
        env: &HashMap<String, RingElement>,
        memo: &mut HashMap<usize, RingElement>,
    ) -> Result<RingElement> {
        let key = Arc::as_ptr(&self.0) as usize;
        if let Some(v) = memo.get(&key) {
            return Ok(v.clone());
        }
        let v = match self.kind() {
            Node::Var(name) => env
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnboundVariable(name.clone()))?,
            Node::Zero => RingElement::zero(spec),
            Node::One => RingElement::one(spec),
            Node::Add(a, b) => a
                .eval_memo(spec, env, memo)?
                .add(&b.eval_memo(spec, env, memo)?),
            Node::Mul(a, b) => a
                .eval_memo(spec, env, memo)?
                .mul(&b.eval_memo(spec, env, memo)?),
            Node::Neg(a) => a.eval_memo(spec, env, memo)?.neg(),
            Node::QuasiInv(a) => a.eval_memo(spec, env, memo)?.quasi_inverse(),
        };
        memo.insert(key, v.clone());
        Ok(v)
    }
}

/// Fully parenthesized surface syntax. Shared subterms are printed in full,
/// so deep `t_n` terms print very long.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Node::Var(v) => f.write_str(v),
            Node::Zero => f.write_str("0"),
            Node::One => f.write_str("1"),
            Node::Add(a, b) => match b.kind() {
                Node::Neg(c) => write!(f, "({a} - {c})"),
                _ => write!(f, "({a} + {b})"),
            },
            Node::Neg(a) => write!(f, "-{a}"),
            Node::Mul(a, b) => write!(f, "({a}*{b})"),
            Node::QuasiInv(a) => match a.kind() {
                Node::Neg(_) => write!(f, "({a})'"),
                _ => write!(f, "{a}'"),
            },
        }
    }
}

/// `t+ = t' t t'`.
pub fn plus(t: &Term) -> Term {
    let q = t.quasi();
    q.mul(t).mul(&q)
}

/// `gamma(t) = t t+`.
pub fn gamma(t: &Term) -> Term {
    t.mul(&plus(t))
}

/// `f + g (1 - f)` with `f = gamma(s)`, `g = gamma((1 - f) t)`.
pub fn join(s: &Term, t: &Term) -> Term {
    let f = gamma(s);
    let nf = f.one_minus();
    let g = gamma(&nf.mul(t));
    f.add(&g.mul(&nf))
}

/// `gamma(t (1 - c+ c))` with `c = (1 - gamma(s)) t`.
pub fn meet(s: &Term, t: &Term) -> Term {
    let c = gamma(s).one_minus().mul(t);
    gamma(&t.mul(&plus(&c).mul(&c).one_minus()))
}

/// `e - g e`.
pub fn ominus(e: &Term, g: &Term) -> Term {
    e.sub(&g.mul(e))
}

/// `t_0 = yx ∧ xy`, `t_{k+1} = y^{2^k} t_k ∧ x^{2^k} t_k`.
pub fn t_n(n: usize, x: &Term, y: &Term) -> Term {
    let mut t = meet(&y.mul(x), &x.mul(y));
    let (mut xp, mut yp) = (x.clone(), y.clone());
    for _ in 0..n {
        t = meet(&yp.mul(&t), &xp.mul(&t));
        xp = xp.mul(&xp);
        yp = yp.mul(&yp);
    }
    t
}

/// `s_n(x) = t_n(x, x+)`.
pub fn s_n(n: usize, x: &Term) -> Term {
    t_n(n, x, &plus(x))
}

pub fn term_plus() -> Term {
    plus(&Term::var("x"))
}

pub fn term_gamma() -> Term {
    gamma(&Term::var("x"))
}

pub fn term_join() -> Term {
    join(&Term::var("x"), &Term::var("y"))
}

pub fn term_meet() -> Term {
    meet(&Term::var("x"), &Term::var("y"))
}

pub fn term_ominus() -> Term {
    ominus(&Term::var("x"), &Term::var("y"))
}

pub fn term_t(n: usize) -> Term {
    t_n(n, &Term::var("x"), &Term::var("y"))
}

pub fn term_s(n: usize) -> Term {
    s_n(n, &Term::var("x"))
}

/// Environment binding `x` and, optionally, `y`.
pub fn env_xy(x: &RingElement, y: Option<&RingElement>) -> HashMap<String, RingElement> {
    let mut env = HashMap::new();
    env.insert("x".to_string(), x.clone());
    if let Some(y) = y {
        env.insert("y".to_string(), y.clone());
    }
    env
}
