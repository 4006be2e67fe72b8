use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use ratlink::blocks::{canonical_block_form, two_step};
use ratlink::braid::{braid_index, braid_index_dl};
use ratlink::contfrac::{absorb_zero, euclid, expand_even, expand_nonalternating, insert_pair, twin, ContFrac};
use ratlink::homfly::{homfly, LaurentPoly2};
use ratlink::link::{build_diagram, mirror, reoriented, schubert_equivalent, signed_vector, SignedVector};
use ratlink::verify::{run_sweep, Check, SweepReport};
use ratlink::ExactRational;

fn link(max_q: u64) -> impl Strategy<Value = (u64, u64)> {
    (2..=max_q).prop_flat_map(|q| (Just(q), 1..q)).prop_filter("coprime", |(q, p)| q.gcd(p) == 1)
}

fn even_link(max_q: u64) -> impl Strategy<Value = (u64, u64)> {
    link(max_q).prop_filter("pq even", |(q, p)| (q * p) % 2 == 0)
}

fn terms() -> impl Strategy<Value = ContFrac> {
    prop::collection::vec(-6i64..=6, 1..8).prop_map(|t| ContFrac::new(t).unwrap())
}

fn poly() -> impl Strategy<Value = LaurentPoly2> {
    prop::collection::vec((-5i64..=5, -4i64..=4, -3i64..=3), 0..6)
        .prop_map(|v| LaurentPoly2::from_terms(v.into_iter().map(|(c, i, j)| (BigInt::from(c), i, j))))
}

fn rational(q: u64, p: u64) -> ExactRational {
    ExactRational::new(p, q).unwrap()
}

proptest! {
    #[test]
    fn insert_pair_preserves_value(cf in terms(), i in 0usize..8, delta in prop::sample::select(vec![-1i64, 1])) {
        if let Ok(out) = insert_pair(&cf, i, delta) {
            prop_assert_eq!(out.eval(), cf.eval());
        }
    }

    #[test]
    fn absorb_zero_preserves_value(cf in terms(), j in 0usize..8) {
        if let Ok(out) = absorb_zero(&cf, j) {
            prop_assert_eq!(out.eval(), cf.eval());
            prop_assert!(out.n() < cf.n());
        }
    }

    #[test]
    fn two_step_preserves_value(cf in terms(), i in 0usize..8, delta in prop::sample::select(vec![-1i64, 1])) {
        if let Ok(out) = two_step(&cf, i, delta) {
            prop_assert_eq!(out.eval(), cf.eval());
        }
    }

    #[test]
    fn negation_negates_value(cf in terms()) {
        prop_assert_eq!(cf.negate().eval(), cf.eval().neg());
        prop_assert_eq!(cf.negate().negate(), cf);
    }

    #[test]
    fn expansions_round_trip((q, p) in link(5000)) {
        let r = rational(q, p);
        prop_assert_eq!(euclid(&r).unwrap().eval(), r.clone());
        let (a, b) = expand_nonalternating(&r).unwrap();
        prop_assert!(a.is_nonalternating() && b.is_nonalternating());
        prop_assert_eq!(twin(&a), b.clone());
        prop_assert_eq!(a.eval(), r.clone());
        prop_assert_eq!(b.eval(), r.clone());
        prop_assert_eq!(canonical_block_form(&r).unwrap().source().eval(), r.clone());
        if r.pq_even() {
            let e = expand_even(&r).unwrap();
            prop_assert!(e.is_even_form());
            prop_assert_eq!(e.eval(), r);
        }
    }

    #[test]
    fn contfrac_text_round_trip(cf in terms()) {
        prop_assert_eq!(cf.to_string().parse::<ContFrac>().unwrap(), cf);
    }

    #[test]
    fn rational_text_round_trip((q, p) in link(10_000)) {
        let r = rational(q, p);
        prop_assert_eq!(r.to_string().parse::<ExactRational>().unwrap(), r);
    }

    #[test]
    fn ring_laws(x in poly(), y in poly(), z in poly()) {
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&x * &LaurentPoly2::one(), x.clone());
        prop_assert!((&x - &x).is_zero());
        prop_assert_eq!(&(-&x) + &y, &y - &x);
    }

    #[test]
    fn substitutions_are_involutive_homomorphisms(x in poly(), y in poly()) {
        prop_assert_eq!(x.subst_a_inverse().subst_a_inverse(), x.clone());
        prop_assert_eq!(x.mirror_substitution().mirror_substitution(), x.clone());
        prop_assert_eq!((&x * &y).subst_a_inverse(), &x.subst_a_inverse() * &y.subst_a_inverse());
        prop_assert_eq!((&x * &y).mirror_substitution(), &x.mirror_substitution() * &y.mirror_substitution());
    }

    #[test]
    fn poly_serialization_round_trips(x in poly()) {
        prop_assert_eq!(x.to_string().parse::<LaurentPoly2>().unwrap(), x.clone());
        prop_assert_eq!(LaurentPoly2::from_json(&x.to_json()).unwrap(), x);
    }

    #[test]
    fn schubert_is_reflexive_and_symmetric((q, p) in link(400), p2 in 1u64..400, oriented in any::<bool>()) {
        prop_assert!(schubert_equivalent(q, p, q, p, oriented));
        let p2 = p2 % q;
        if p2 > 0 && p2.gcd(&q) == 1 {
            prop_assert_eq!(schubert_equivalent(q, p, q, p2, oriented), schubert_equivalent(q, p2, q, p, oriented));
            if oriented && schubert_equivalent(q, p, q, p2, true) {
                prop_assert!(schubert_equivalent(q, p, q, p2, false));
            }
        }
    }

    #[test]
    fn signed_vector_formula_ignores_convention_and_mirror((q, p) in even_link(3000)) {
        let d = build_diagram(q, p).unwrap();
        let want = braid_index(q, p).unwrap().value;
        for conv in [-1, 1] {
            let sv = signed_vector(&d, conv);
            prop_assert_eq!(braid_index_dl(&sv).unwrap(), want);
            let flipped = SignedVector { entries: sv.entries.iter().map(|x| -x).collect(), convention: -conv };
            prop_assert_eq!(braid_index_dl(&flipped).unwrap(), want);
        }
    }

    #[test]
    fn mirror_and_reorientation_are_involutions((q, p) in link(3000)) {
        let d = build_diagram(q, p).unwrap();
        prop_assert_eq!(mirror(&mirror(&d)), d.clone());
        prop_assert_eq!(reoriented(&reoriented(&d)), d);
    }

    #[test]
    fn knot_mirror_invariants((q, p) in link(400).prop_filter("knot", |(q, _)| q % 2 == 1)) {
        let (h, _) = homfly(q, p).unwrap();
        let (m, _) = homfly(q, q - p).unwrap();
        prop_assert_eq!(m, h.mirror_substitution());
        prop_assert_eq!(braid_index(q, p).unwrap().value, braid_index(q, q - p).unwrap().value);
    }

    #[test]
    fn report_json_round_trips(max_q in 2u64..14) {
        let report = run_sweep(max_q, &Check::ALL);
        let text = report.to_json();
        prop_assert_eq!(SweepReport::from_json(&text).unwrap().to_json(), text);
        prop_assert!(report.passed());
    }
}
