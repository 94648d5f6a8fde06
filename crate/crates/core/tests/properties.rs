use perspectivity::lattice::Ideal;
use perspectivity::linalg::{PrimeField, Subspace};
use perspectivity::reduction::{
    axis_witness, is_mutually_reflexive, random_reflexive_pair, run_reduction, unit_witness,
};
use perspectivity::ring::{case_rng, random_element, RingElement, RingSpec};
use perspectivity::term::{env_xy, parse_term, Term};
use proptest::prelude::*;

const RINGS: [&str; 5] = ["M2(F2)", "M3(F2)", "M2(F3)", "M3(F5)", "M2(F2)xM1(F3)"];

fn ring() -> impl Strategy<Value = RingSpec> {
    prop::sample::select(&RINGS[..]).prop_map(|s| s.parse().unwrap())
}

fn elements(k: usize) -> impl Strategy<Value = (RingSpec, Vec<RingElement>)> {
    (ring(), any::<u64>()).prop_map(move |(spec, seed)| {
        let mut rng = case_rng(seed, 0);
        let xs = (0..k).map(|_| random_element(&spec, &mut rng)).collect();
        (spec, xs)
    })
}

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::var("x")),
        Just(Term::var("y")),
        Just(Term::zero()),
        Just(Term::one()),
    ];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.sub(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            inner.clone().prop_map(|a| a.neg()),
            inner.prop_map(|a| a.quasi()),
        ]
    })
}

fn subspaces(k: usize) -> impl Strategy<Value = Vec<Subspace>> {
    (
        1usize..=5,
        prop::sample::select(vec![2u32, 3]),
        any::<u64>(),
    )
        .prop_map(move |(n, p, seed)| {
            let field = PrimeField::new(p).unwrap();
            let mut rng = case_rng(seed, 1);
            (0..k)
                .map(|_| Subspace::random(field, n, n, &mut rng))
                .collect()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn quasi_inverse_is_inner_and_reflexive((_, xs) in elements(1)) {
        let x = &xs[0];
        let q = x.quasi_inverse();
        prop_assert_eq!(x.mul(&q).mul(x), x.clone());
        let r = x.reflexive();
        prop_assert!(is_mutually_reflexive(x, &r));
        prop_assert!(x.gamma().is_idempotent());
        prop_assert_eq!(Ideal::of(&x.gamma()), Ideal::of(x));
    }

    #[test]
    fn ring_axioms((_, xs) in elements(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        prop_assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        prop_assert_eq!(a.add(b), b.add(a));
        prop_assert!(a.sub(a).is_zero());
    }

    #[test]
    fn join_and_meet_compute_ideals((_, xs) in elements(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        let j = x.join(y);
        let m = x.meet(y);
        prop_assert!(j.is_idempotent());
        prop_assert!(m.is_idempotent());
        prop_assert_eq!(Ideal::of(&j), Ideal::of(x).join(&Ideal::of(y)));
        prop_assert_eq!(Ideal::of(&m), Ideal::of(x).meet(&Ideal::of(y)));
    }

    #[test]
    fn ominus_complements((_, xs) in elements(2)) {
        let e = xs[0].join(&xs[1]);
        let g = xs[1].gamma();
        let d = e.ominus(&g);
        prop_assert!(d.is_idempotent());
        let (id, ig) = (Ideal::of(&d), Ideal::of(&g));
        prop_assert!(id.meet(&ig).is_zero());
        prop_assert_eq!(id.join(&ig), Ideal::of(&e));
    }

    #[test]
    fn modular_law(v in subspaces(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        // with a <= c: a + (b ∩ c) = (a + b) ∩ c
        let a = a.intersect(c).unwrap();
        let lhs = a.sum(&b.intersect(c).unwrap()).unwrap();
        let rhs = a.sum(b).unwrap().intersect(c).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dimension_formula(v in subspaces(2)) {
        let (a, b) = (&v[0], &v[1]);
        let s = a.sum(b).unwrap().dim();
        let i = a.intersect(b).unwrap().dim();
        prop_assert_eq!(s + i, a.dim() + b.dim());
    }

    #[test]
    fn term_display_round_trips(t in term(), (spec, xs) in elements(2)) {
        let text = t.to_string();
        let back = parse_term(&text).unwrap();
        prop_assert_eq!(back.to_string(), text);
        let env = env_xy(&xs[0], Some(&xs[1]));
        prop_assert_eq!(back.eval(&spec, &env).unwrap(), t.eval(&spec, &env).unwrap());
    }

    #[test]
    fn element_display_round_trips((spec, xs) in elements(1)) {
        let x = &xs[0];
        prop_assert_eq!(&RingElement::parse(&spec, &x.to_string()).unwrap(), x);
    }

    #[test]
    fn reduction_certifies_random_pairs(spec in ring(), seed in any::<u64>()) {
        let (a, b) = random_reflexive_pair(&spec, &mut case_rng(seed, 2));
        let t = run_reduction(&a, &b, None).unwrap();
        prop_assert!(t.stabilized_at().is_some_and(|at| at <= spec.length()));
        prop_assert!(axis_witness(&a, &b, &t).unwrap().all_verified());
        let unit = unit_witness(&a, &b, &t).unwrap();
        prop_assert!(unit.all_verified());
    }
}
