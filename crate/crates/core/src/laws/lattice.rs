use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    block, ensure, per_component, perspective, random_basis, random_inside, random_sizes,
    run_trials, show, LawConfig, LawVerdict, Outcome, Sampling,
};
use crate::lattice::{common_complement, independent, random_ideal, AxisChecks, Ideal};
use crate::linalg::Subspace;
use crate::ring::RingSpec;

const REJECTION_TRIES: usize = 200;

fn zero(a: &Ideal) -> Ideal {
    Ideal::zero(&a.spec())
}

/// Draws until `accept` returns a configuration, or gives up.
fn rejection<T>(
    rng: &mut ChaCha8Rng,
    mut draw: impl FnMut(&mut ChaCha8Rng) -> Option<T>,
) -> Option<T> {
    (0..REJECTION_TRIES).find_map(|_| draw(rng))
}

/// Two ideals of equal dimension in every component.
fn same_height_pair(spec: &RingSpec, rng: &mut ChaCha8Rng) -> (Ideal, Ideal) {
    let v = per_component(spec, rng, 2, |f, n, rng| {
        let d = rng.gen_range(0..=n);
        vec![
            Subspace::random_of_dim(f, n, d, rng),
            Subspace::random_of_dim(f, n, d, rng),
        ]
    });
    (v[0].clone(), v[1].clone())
}

/// For `ab <= x <= a` and `ab <= y <= b`: `x + y = (x + b)(y + a)`,
/// `(x + y)a = x` and `(x + y)b = y`.
pub fn check_fact1(cfg: &LawConfig) -> LawVerdict {
    run_trials("fact1", cfg, |rng| {
        let sample = match cfg.mode {
            Sampling::Constructive => {
                let (a, b) = (random_ideal(&cfg.spec, rng), random_ideal(&cfg.spec, rng));
                let m = a.meet(&b);
                let x = random_between(&m, &a, rng);
                let y = random_between(&m, &b, rng);
                Some((a, b, x, y))
            }
            Sampling::Rejection => rejection(rng, |rng| {
                let v: Vec<Ideal> = (0..4).map(|_| random_ideal(&cfg.spec, rng)).collect();
                let m = v[0].meet(&v[1]);
                (m.leq(&v[2]) && v[2].leq(&v[0]) && m.leq(&v[3]) && v[3].leq(&v[1]))
                    .then(|| (v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone()))
            }),
        };
        let Some((a, b, x, y)) = sample else {
            return Outcome::Skip;
        };
        let m = a.meet(&b);
        let ctx = show(&[("a", &a), ("b", &b), ("x", &x), ("y", &y)]);
        ensure!(
            m.leq(&x) && x.leq(&a) && m.leq(&y) && y.leq(&b),
            "sampler left the intervals: {ctx}"
        );
        let s = x.join(&y);
        ensure!(
            s == x.join(&b).meet(&y.join(&a)),
            "x+y != (x+b)(y+a): {ctx}"
        );
        ensure!(
            s.meet(&a) == x && s.meet(&b) == y,
            "(x+y) does not recover x, y: {ctx}"
        );
        Outcome::Pass
    })
}

fn random_between(lo: &Ideal, hi: &Ideal, rng: &mut ChaCha8Rng) -> Ideal {
    let spaces = lo
        .spaces()
        .iter()
        .zip(hi.spaces())
        .map(|(l, h)| Subspace::random_between(l, h, rng).expect("lo <= hi"))
        .collect();
    Ideal::from_spaces(spaces).expect("nonempty")
}

/// `a_i ∼_{c_i} b_i` for `i = 1, 2` with
/// `(a_1 + b_1)(a_2 + b_2) <= a_1 b_1 a_2 b_2` gives
/// `a_1 + a_2 ∼_{c_1 + c_2} b_1 + b_2`.
pub fn check_fact2(cfg: &LawConfig) -> LawVerdict {
    let guard = |v: &[Ideal]| {
        let lhs = v[0].join(&v[1]).meet(&v[2].join(&v[3]));
        lhs.leq(&v[0].meet(&v[1]).meet(&v[2]).meet(&v[3]))
    };
    run_trials("fact2", cfg, |rng| {
        let sample = match cfg.mode {
            // a_i = M ⊕ a_i', b_i = M ⊕ b_i' with a_i', b_i' inside Q_i and
            // M, Q_1, Q_2 independent
            Sampling::Constructive => Some(per_component(&cfg.spec, rng, 4, |f, n, rng| {
                let basis = random_basis(f, n, rng);
                let s = random_sizes(n, 3, rng);
                let m = block(&basis, 0, s[0]);
                let q1 = block(&basis, s[0], s[0] + s[1]);
                let q2 = block(&basis, s[0] + s[1], s[0] + s[1] + s[2]);
                let (d1, d2) = (rng.gen_range(0..=s[1]), rng.gen_range(0..=s[2]));
                let mut out = Vec::new();
                for (q, d) in [(&q1, d1), (&q1, d1), (&q2, d2), (&q2, d2)] {
                    out.push(m.sum(&random_inside(q, d, rng)).expect("same ambient"));
                }
                // order a_1, b_1, a_2, b_2
                out
            })),
            Sampling::Rejection => rejection(rng, |rng| {
                let (a1, b1) = same_height_pair(&cfg.spec, rng);
                let (a2, b2) = same_height_pair(&cfg.spec, rng);
                let v = vec![a1, b1, a2, b2];
                guard(&v).then_some(v)
            }),
        };
        let Some(v) = sample else {
            return Outcome::Skip;
        };
        let ctx = show(&[("a1", &v[0]), ("b1", &v[1]), ("a2", &v[2]), ("b2", &v[3])]);
        ensure!(guard(&v), "sampler broke the guard: {ctx}");
        let (Ok(c1), Ok(c2)) = (
            common_complement(&v[0], &v[1]),
            common_complement(&v[2], &v[3]),
        ) else {
            return Outcome::Fail(format!("no axis for a sampled pair: {ctx}"));
        };
        let c = Ideal::of(&c1.c).join(&Ideal::of(&c2.c));
        let (a, b) = (v[0].join(&v[2]), v[1].join(&v[3]));
        ensure!(
            AxisChecks::compute(&a, &b, &c).all(),
            "c1+c2 is not an axis for a1+a2, b1+b2: {ctx} c={c}"
        );
        Outcome::Pass
    })
}

/// With `a = x ⊕ ab` and `b = y ⊕ ab`: `a ∼ b` iff `x ∼ y`, and
/// `a ⊕ y = a + b = b ⊕ x`.
pub fn check_fact3a(cfg: &LawConfig) -> LawVerdict {
    run_trials("fact3a", cfg, |rng| {
        let (a, b) = if rng.gen_bool(0.5) {
            same_height_pair(&cfg.spec, rng)
        } else {
            (random_ideal(&cfg.spec, rng), random_ideal(&cfg.spec, rng))
        };
        let m = a.meet(&b);
        let x = m.relative_complement(&zero(&a), &a).expect("ab <= a");
        let y = m.relative_complement(&zero(&a), &b).expect("ab <= b");
        let ctx = show(&[("a", &a), ("b", &b), ("x", &x), ("y", &y)]);
        ensure!(
            perspective(&a, &b) == perspective(&x, &y),
            "a ∼ b and x ∼ y disagree: {ctx}"
        );
        let s = a.join(&b);
        ensure!(
            a.meet(&y).is_zero() && a.join(&y) == s,
            "a ⊕ y != a+b: {ctx}"
        );
        ensure!(
            b.meet(&x).is_zero() && b.join(&x) == s,
            "b ⊕ x != a+b: {ctx}"
        );
        Outcome::Pass
    })
}

/// `z = x ⊕ y`, `w = u ⊕ v` and `zw = xu` give `yv = 0`; if moreover
/// `x ∼ u` and `y ∼ v` then `z ∼ w`.
pub fn check_lemma4(cfg: &LawConfig) -> LawVerdict {
    let hypotheses = |v: &[Ideal]| {
        let (x, y, u, w_) = (&v[0], &v[1], &v[2], &v[3]);
        let (z, w) = (x.join(y), u.join(w_));
        x.meet(y).is_zero() && u.meet(w_).is_zero() && z.meet(&w) == x.meet(u)
    };
    run_trials("lemma4", cfg, |rng| {
        let iso = rng.gen_bool(0.5);
        let sample = match cfg.mode {
            Sampling::Constructive => rejection(rng, |rng| {
                let v = per_component(&cfg.spec, rng, 4, |f, n, rng| {
                    lemma4_component(f, n, iso, rng)
                });
                hypotheses(&v).then_some(v)
            }),
            Sampling::Rejection => rejection(rng, |rng| {
                let v: Vec<Ideal> = if iso {
                    let (x, u) = same_height_pair(&cfg.spec, rng);
                    let (y, w) = same_height_pair(&cfg.spec, rng);
                    vec![x, y, u, w]
                } else {
                    (0..4).map(|_| random_ideal(&cfg.spec, rng)).collect()
                };
                hypotheses(&v).then_some(v)
            }),
        };
        let Some(v) = sample else {
            return Outcome::Skip;
        };
        let (x, y, u, vv) = (&v[0], &v[1], &v[2], &v[3]);
        let ctx = show(&[("x", x), ("y", y), ("u", u), ("v", vv)]);
        ensure!(y.meet(vv).is_zero(), "yv != 0: {ctx}");
        if perspective(x, u) && perspective(y, vv) {
            ensure!(perspective(&x.join(y), &u.join(vv)), "z ≁ w: {ctx}");
        }
        Outcome::Pass
    })
}

/// `x = K + X'`, `u = K + U'` over independent blocks, with `y` and `v`
/// spanned by block vectors tilted into `U' + K` and `X' + K`.
fn lemma4_component(
    f: crate::linalg::PrimeField,
    n: usize,
    iso: bool,
    rng: &mut ChaCha8Rng,
) -> Vec<Subspace> {
    let s = loop {
        let s = random_sizes(n, 5, rng);
        if !iso || (s[1] == s[2] && s[3] == s[4]) {
            break s;
        }
    };
    let basis = random_basis(f, n, rng);
    let mut at = 0;
    let mut cols = |k: usize| {
        let r: Vec<Vec<u8>> = (at..at + k).map(|j| basis.column(j)).collect();
        at += k;
        r
    };
    let (kk, xp, up, yb, vb) = (cols(s[0]), cols(s[1]), cols(s[2]), cols(s[3]), cols(s[4]));
    let tilt = |rng: &mut ChaCha8Rng, base: &[Vec<u8>], mix: &[&[Vec<u8>]]| -> Vec<Vec<u8>> {
        base.iter()
            .map(|b| {
                let mut v = b.clone();
                for group in mix {
                    for w in group.iter() {
                        let c = rng.gen_range(0..f.p());
                        for (vi, wi) in v.iter_mut().zip(w) {
                            *vi = f.add(*vi, f.mul(c, *wi));
                        }
                    }
                }
                v
            })
            .collect()
    };
    let yv = tilt(rng, &yb, &[&up, &kk]);
    let vv = tilt(rng, &vb, &[&xp, &kk]);
    let span = |parts: &[&[Vec<u8>]]| Subspace::span(f, n, &parts.concat());
    vec![
        span(&[&kk, &xp]),
        span(&[&yv]),
        span(&[&kk, &up]),
        span(&[&vv]),
    ]
}

/// `a ∼ b` and `d = (a + d)(b + d)` give `a + d ∼ b + d`.
///
/// This needs `ad ≅ bd` as well: `a = d`, `b` not below `d` is a
/// counterexample. The constructive sampler keeps `ad = bd = ab`; rejection
/// sampling draws `d` freely and reports such cases as failures.
pub fn check_lemma5(cfg: &LawConfig) -> LawVerdict {
    let closed = |a: &Ideal, b: &Ideal, d: &Ideal| a.join(d).meet(&b.join(d)) == *d;
    run_trials("lemma5", cfg, |rng| {
        let sample = rejection(rng, |rng| {
            let (a, b) = same_height_pair(&cfg.spec, rng);
            let d = match cfg.mode {
                // d = ab + D' with D' a tilted subspace of a complement of a + b
                Sampling::Constructive => {
                    let s = a.join(&b);
                    let outside = s.complement();
                    let parts = outside
                        .spaces()
                        .iter()
                        .zip(s.spaces())
                        .map(|(o, s)| {
                            let k = rng.gen_range(0..=o.dim());
                            let base = random_inside(o, k, rng);
                            tilt_into(&base, s, rng)
                        })
                        .collect();
                    a.meet(&b)
                        .join(&Ideal::from_spaces(parts).expect("nonempty"))
                }
                Sampling::Rejection => random_ideal(&cfg.spec, rng),
            };
            closed(&a, &b, &d).then_some((a, b, d))
        });
        let Some((a, b, d)) = sample else {
            return Outcome::Skip;
        };
        let ctx = show(&[("a", &a), ("b", &b), ("d", &d)]);
        ensure!(perspective(&a, &b), "sampled a ≁ b: {ctx}");
        ensure!(perspective(&a.join(&d), &b.join(&d)), "a+d ≁ b+d: {ctx}");
        Outcome::Pass
    })
}

/// Adds a random vector of `target` to every basis vector of `base`.
fn tilt_into(base: &Subspace, target: &Subspace, rng: &mut ChaCha8Rng) -> Subspace {
    let f = base.field();
    let rows: Vec<Vec<u8>> = base
        .basis_rows()
        .into_iter()
        .map(|mut v| {
            for t in target.basis_rows() {
                let c = rng.gen_range(0..f.p());
                for (vi, ti) in v.iter_mut().zip(&t) {
                    *vi = f.add(*vi, f.mul(c, *ti));
                }
            }
            v
        })
        .collect();
    Subspace::span(f, base.ambient_dim(), &rows)
}

/// If `a_0 + b_0, ..., a_m + b_m` is independent and each `a_n ≈ b_n`
/// (perspective with `a_n b_n = 0`), then `Σ a_n ≈ Σ b_n`.
pub fn check_fact5a(cfg: &LawConfig) -> LawVerdict {
    run_trials("fact5a", cfg, |rng| {
        let pieces = rng.gen_range(1..=3);
        let sample = match cfg.mode {
            Sampling::Constructive => {
                Some(per_component(&cfg.spec, rng, 2 * pieces, |f, n, rng| {
                    let basis = random_basis(f, n, rng);
                    let sizes = random_sizes(n, pieces, rng);
                    let mut at = 0;
                    let mut out = Vec::new();
                    for s in sizes {
                        let blk = block(&basis, at, at + s);
                        at += s;
                        let d = rng.gen_range(0..=s / 2);
                        let ab = random_inside(&blk, 2 * d, rng);
                        let a = random_inside(&ab, d, rng);
                        let b = a.extend_to_complement(&ab).expect("a <= ab");
                        let b = tilt_into(&b, &a, rng);
                        out.push(a);
                        out.push(b);
                    }
                    out
                }))
            }
            Sampling::Rejection => rejection(rng, |rng| {
                let mut v = Vec::new();
                for _ in 0..pieces {
                    let (a, b) = same_height_pair(&cfg.spec, rng);
                    v.push(a);
                    v.push(b);
                }
                let sums: Vec<Ideal> = v.chunks(2).map(|p| p[0].join(&p[1])).collect();
                (independent(&sums) && v.chunks(2).all(|p| p[0].meet(&p[1]).is_zero())).then_some(v)
            }),
        };
        let Some(v) = sample else {
            return Outcome::Skip;
        };
        let named: Vec<(String, &Ideal)> = v
            .iter()
            .enumerate()
            .map(|(i, x)| (format!("{}{}", ["a", "b"][i % 2], i / 2), x))
            .collect();
        let ctx = named
            .iter()
            .map(|(n, x)| format!("{n}={x}"))
            .collect::<Vec<_>>()
            .join(" ");
        let sums: Vec<Ideal> = v.chunks(2).map(|p| p[0].join(&p[1])).collect();
        ensure!(independent(&sums), "sums not independent: {ctx}");
        for p in v.chunks(2) {
            ensure!(
                p[0].meet(&p[1]).is_zero() && perspective(&p[0], &p[1]),
                "sampled pair not strongly perspective: {ctx}"
            );
        }
        let sa = v.iter().step_by(2).fold(zero(&v[0]), |acc, x| acc.join(x));
        let sb = v
            .iter()
            .skip(1)
            .step_by(2)
            .fold(zero(&v[0]), |acc, x| acc.join(x));
        ensure!(
            sa.meet(&sb).is_zero() && perspective(&sa, &sb),
            "Σa ≉ Σb: {ctx}"
        );
        Outcome::Pass
    })
}
