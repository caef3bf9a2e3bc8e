use fdb_core::numeric::eval::{eval_expr, Bindings};
use fdb_core::numeric::oracle::{random_cuboid, rng_from, RandomRationalMap};
use fdb_core::numeric::suites::{chain_oracle, tangent_oracle};
use fdb_core::symbolic::{parse_json, parse_text, render_json, render_text, ParseContext};
use fdb_core::{
    build_asets, canonicalize, enumerate_partitions, expand_chain, expand_tangent, Expr,
    MultiIndex, Value, VectorMap,
};
use proptest::prelude::*;

fn bell(n: usize) -> usize {
    let mut row = vec![1usize];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for v in &row {
            next.push(next.last().unwrap() + v);
        }
        row = next;
    }
    row[0]
}

fn multi_index(max_len: usize) -> impl Strategy<Value = MultiIndex> {
    (1..=max_len)
        .prop_flat_map(|len| (0..1u64 << len).prop_map(move |b| MultiIndex::from_bits(len, b)))
}

fn nonzero_index(max_len: usize) -> impl Strategy<Value = MultiIndex> {
    multi_index(max_len).prop_filter("nonzero", |a| !a.is_zero())
}

const CUBOID_DIM: usize = 3;

fn leaf() -> impl Strategy<Value = Expr> {
    prop_oneof![
        Just(Expr::point("x")),
        Just(Expr::vector("w")),
        Just(Expr::vector("v_1")),
        (0..1u64 << CUBOID_DIM)
            .prop_map(|b| Expr::component("u", MultiIndex::from_bits(CUBOID_DIM, b))),
    ]
}

fn func() -> impl Strategy<Value = String> {
    prop_oneof![Just("f".to_string()), Just("g".to_string())]
}

fn expr() -> impl Strategy<Value = Expr> {
    leaf().prop_recursive(3, 24, 3, |inner| {
        prop_oneof![
            prop::collection::vec(inner.clone(), 0..4).prop_map(Expr::sum),
            (func(), inner.clone()).prop_map(|(f, a)| Expr::app(f, a)),
            (
                prop::collection::vec((0u32..3, inner.clone()), 1..3),
                func(),
                inner
            )
                .prop_map(|(dirs, f, base)| {
                    let (alpha, directions) = dirs.into_iter().unzip();
                    Expr::delta_alpha(alpha, directions, f, base)
                }),
        ]
    })
}

fn evaluate(e: &Expr, seed: u64) -> Option<Value> {
    let f = RandomRationalMap::new(seed, 2, 2);
    let g = RandomRationalMap::new(seed ^ 0xabcd, 2, 2);
    let mut rng = rng_from(seed);
    let mut b = Bindings::new()
        .map("f", &f as &dyn VectorMap)
        .map("g", &g as &dyn VectorMap)
        .point("x", Value::from_ints(&[1, -2]))
        .vector("w", Value::from_ints(&[3, 1]))
        .vector("v_1", Value::from_ints(&[-1, 2]))
        .cuboid("u", random_cuboid(&mut rng, CUBOID_DIM, 2));
    b.zero_dim = Some(2);
    eval_expr(e, &b).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn partitions_are_counted_by_bell_numbers(alpha in multi_index(8)) {
        let table = enumerate_partitions(alpha);
        prop_assert_eq!(table.len(), bell(alpha.order()));
        for p in table.iter() {
            let mut acc = MultiIndex::zero(alpha.len());
            for b in p.blocks() {
                prop_assert!(!b.is_zero());
                prop_assert!(b.leq(&alpha).unwrap());
                prop_assert!(acc.disjoint(b).unwrap());
                acc = acc.join(b).unwrap();
            }
            prop_assert_eq!(acc, alpha);
        }
    }

    #[test]
    fn partitions_follow_the_support(alpha in nonzero_index(8)) {
        let support = alpha.support();
        let dense = enumerate_partitions(MultiIndex::ones(support.len()));
        let embedded: Vec<_> = dense.iter().map(|p| p.embed(alpha.len(), &support)).collect();
        let direct: Vec<_> = enumerate_partitions(alpha).iter().cloned().collect();
        prop_assert_eq!(embedded, direct);
    }

    #[test]
    fn index_sets_follow_the_support(alpha in nonzero_index(6)) {
        let support = alpha.support();
        let dense = build_asets(MultiIndex::ones(support.len()));
        let direct = build_asets(alpha);
        prop_assert_eq!(dense.len(), direct.len());
        for (d, s) in dense.iter().zip(&direct) {
            prop_assert_eq!(d.partition.embed(alpha.len(), &support), s.partition.clone());
            for ((b1, set1), (b2, set2)) in d.entries().zip(s.entries()) {
                prop_assert_eq!(b1.embed(alpha.len(), &support), b2);
                let moved: Vec<_> = set1.iter().map(|g| g.embed(alpha.len(), &support)).collect();
                prop_assert_eq!(moved, set2.to_vec());
            }
        }
    }

    #[test]
    fn expansions_have_one_term_per_partition(alpha in nonzero_index(6)) {
        let n = bell(alpha.order());
        prop_assert_eq!(expand_tangent(alpha).summands().len(), n);
        prop_assert_eq!(expand_chain(alpha).summands().len(), n);
    }

    #[test]
    fn difference_and_sum_operators_are_inverse(seed in any::<u64>(), k in 0usize..6) {
        let c = random_cuboid(&mut rng_from(seed), k, 2);
        prop_assert_eq!(c.delta().delta_inv(), c.clone());
        prop_assert_eq!(c.delta_inv().delta(), c);
    }

    #[test]
    fn random_maps_are_functions_of_seed_and_point(seed in any::<u64>(), a in -50i64..50, b in -50i64..50) {
        let x = Value::from_ints(&[a, b]);
        let first = RandomRationalMap::new(seed, 2, 3);
        let second = RandomRationalMap::new(seed, 2, 3);
        let v = first.apply(&x);
        prop_assert_eq!(&v, &first.apply(&x));
        prop_assert_eq!(v, second.apply(&x));
    }

    #[test]
    fn canonical_form_is_idempotent(e in expr()) {
        let c = canonicalize(&e);
        prop_assert_eq!(canonicalize(&c), c);
    }

    #[test]
    fn json_round_trips(e in expr()) {
        prop_assert_eq!(parse_json(&render_json(&e)).unwrap(), e);
    }

    #[test]
    fn text_round_trips_in_canonical_form(e in expr()) {
        let c = canonicalize(&e);
        let text = render_text(&c);
        let parsed = parse_text(&text, &ParseContext::new(CUBOID_DIM)).unwrap();
        prop_assert_eq!(canonicalize(&parsed), c, "{}", text);
    }

    #[test]
    fn canonical_form_preserves_the_value(e in expr(), seed in any::<u64>()) {
        prop_assert_eq!(evaluate(&canonicalize(&e), seed), evaluate(&e, seed));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chain_expansion_matches_brute_force(alpha in multi_index(4), seed in any::<u64>()) {
        let r = chain_oracle(alpha, seed, 2, 2);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }

    #[test]
    fn tangent_expansion_matches_brute_force(alpha in multi_index(4), seed in any::<u64>()) {
        let r = tangent_oracle(alpha, seed, 2, 2);
        prop_assert!(r.passed(), "{:?}", r.failures);
    }
}
