mod common;

use cellforge::finset::{FinMap, FinSet, FinSetContext};
use cellforge::kernel::{find_isomorphism, hom, Span};
use cellforge::sset::SSetContext;
use cellforge::Context;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_map(dom: usize, cod: usize) -> impl Strategy<Value = FinMap> {
    proptest::collection::vec(0..cod, dom)
        .prop_map(move |t| FinMap::new(FinSet::range(dom), FinSet::range(cod), t).unwrap())
}

fn arb_triple() -> impl Strategy<Value = (FinMap, FinMap, FinMap)> {
    (1usize..5, 1usize..5, 1usize..5, 1usize..5)
        .prop_flat_map(|(a, b, c, d)| (arb_map(a, b), arb_map(b, c), arb_map(c, d)))
}

proptest! {
    #[test]
    fn composition_is_associative((f, g, h) in arb_triple()) {
        let ctx = FinSetContext;
        let left = ctx.compose(&h, &ctx.compose(&g, &f).unwrap()).unwrap();
        let right = ctx.compose(&ctx.compose(&h, &g).unwrap(), &f).unwrap();
        prop_assert_eq!(&left, &right);
        // table oracle
        let direct: Vec<usize> = (0..f.dom().len()).map(|x| h.apply(g.apply(f.apply(x)))).collect();
        prop_assert_eq!(left.table(), direct.as_slice());
    }

    #[test]
    fn identities_are_units(f in (1usize..6, 1usize..6).prop_flat_map(|(a, b)| arb_map(a, b))) {
        let ctx = FinSetContext;
        prop_assert_eq!(ctx.compose(&f, &ctx.identity(f.dom())).unwrap(), f.clone());
        prop_assert_eq!(ctx.compose(&ctx.identity(f.cod()), &f).unwrap(), f);
    }

    #[test]
    fn product_sizes_and_pairing(a in 1usize..5, b in 1usize..5, seed in any::<u64>()) {
        let ctx = FinSetContext;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y) = (FinSet::range(a), FinSet::range(b));
        let p = ctx.product(&x, &y).unwrap();
        prop_assert_eq!(p.vertex.len(), a * b);
        let z = random_set(&mut rng, 3);
        let (f, g) = (random_map(&mut rng, &z, &x), random_map(&mut rng, &z, &y));
        let m = ctx.pair(&f, &g, &p).unwrap();
        prop_assert_eq!(ctx.compose(&p.proj1, &m).unwrap(), f);
        prop_assert_eq!(ctx.compose(&p.proj2, &m).unwrap(), g);
    }

    #[test]
    fn pushout_commutes_and_counts(s in 1usize..4, a in 1usize..4, b in 1usize..4, seed in any::<u64>()) {
        let ctx = FinSetContext;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let apex = FinSet::range(s);
        let (x, y) = (FinSet::range(a), FinSet::range(b));
        let (l, r) = (random_map(&mut rng, &apex, &x), random_map(&mut rng, &apex, &y));
        let po = ctx.pushout(&Span { apex, left: l.clone(), right: r.clone() }).unwrap();
        prop_assert_eq!(
            ctx.compose(&po.inj_left, &l).unwrap(),
            ctx.compose(&po.inj_right, &r).unwrap()
        );
        prop_assert!(po.vertex.len() <= a + b);
    }

    #[test]
    fn json_round_trip(f in (1usize..5, 1usize..5).prop_flat_map(|(a, b)| arb_map(a, b))) {
        let ctx = FinSetContext;
        let back = ctx.mor_from_json(&ctx.mor_to_json(&f)).unwrap();
        prop_assert_eq!(back, f.clone());
        let obj = ctx.obj_from_json(&ctx.obj_to_json(f.dom())).unwrap();
        prop_assert_eq!(&obj, f.dom());
    }
}

#[test]
fn product_of_two_and_three() {
    let p = FinSetContext.product(&FinSet::range(2), &FinSet::range(3)).unwrap();
    assert_eq!(p.vertex.len(), 6);
}

#[test]
fn terminal_and_initial() {
    let ctx = FinSetContext;
    let x = FinSet::range(3);
    assert_eq!(hom(&ctx, &x, &ctx.terminal(), 1000).unwrap().len(), 1);
    assert_eq!(hom(&ctx, &ctx.initial(), &x, 1000).unwrap().len(), 1);
    let s = SSetContext::new(3).unwrap();
    let c = circle(&s);
    assert_eq!(hom(&s, &c, &s.terminal(), 1000).unwrap().len(), 1);
    assert_eq!(hom(&s, &s.initial(), &c, 1000).unwrap().len(), 1);
}

#[test]
fn sset_json_round_trip_and_isomorphism() {
    let s = SSetContext::new(3).unwrap();
    let c = circle(&s);
    let back = s.obj_from_json(&s.obj_to_json(&c)).unwrap();
    assert_eq!(back, c);
    let v = s.vertex(&c, 2).unwrap();
    assert_eq!(s.mor_from_json(&s.mor_to_json(&v)).unwrap(), v);
    let iso = find_isomorphism(&s, &c, &back, 10_000).unwrap().unwrap();
    assert!(s.is_iso(&iso));
}

#[test]
fn budget_exhaustion_is_reported() {
    let ctx = FinSetContext;
    let err = hom(&ctx, &FinSet::range(6), &FinSet::range(6), 10).unwrap_err();
    assert!(err.is_budget(), "{err:?}");
}
