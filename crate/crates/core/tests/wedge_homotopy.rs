mod common;

use cellforge::finset::{FinSet, FinSetContext};
use cellforge::homotopy::{
    are_homotopic, check_homotopy_relation, is_contractible, product_homotopy, reverse_homotopy,
};
use cellforge::kernel::{audit_axioms, hom};
use cellforge::sset::SSetContext;
use cellforge::wedge::{flatten_contractible, wedge_morphism, wedge_object};
use cellforge::Context;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn wedge_is_a_functor(seed in any::<u64>()) {
        let ctx = FinSetContext;
        let w = ctx.witnesses();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (x, y, z) = (random_set(&mut rng, 4), random_set(&mut rng, 4), random_set(&mut rng, 4));
        let (f, g) = (random_map(&mut rng, &x, &y), random_map(&mut rng, &y, &z));
        let (wx, wy, wz) = (wedge_object(&ctx, &w, &x).unwrap(), wedge_object(&ctx, &w, &y).unwrap(), wedge_object(&ctx, &w, &z).unwrap());
        prop_assert_eq!(wx.vertex.len(), x.len() + 1);
        let whole = wedge_morphism(&ctx, &ctx.compose(&g, &f).unwrap(), &wx, &wz).unwrap();
        let parts = ctx.compose(&wedge_morphism(&ctx, &g, &wy, &wz).unwrap(), &wedge_morphism(&ctx, &f, &wx, &wy).unwrap()).unwrap();
        prop_assert_eq!(whole, parts);
        prop_assert_eq!(wedge_morphism(&ctx, &ctx.identity(&x), &wx, &wx).unwrap(), ctx.identity(&wx.vertex));
    }

    #[test]
    fn bottom_square_commutes(seed in any::<u64>()) {
        let ctx = FinSetContext;
        let w = ctx.witnesses();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_set(&mut rng, 4);
        let wx = wedge_object(&ctx, &w, &x).unwrap();
        let wwx = wedge_object(&ctx, &w, &wx.vertex).unwrap();
        let lhs = ctx.compose(&wwx.bottom, &wx.bottom).unwrap();
        let rhs = ctx.compose(&wedge_morphism(&ctx, &wx.bottom, &wx, &wwx).unwrap(), &wx.bottom).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn sset_wedge_functor_and_bottom_square() {
    let ctx = SSetContext::new(3).unwrap();
    let w = ctx.witnesses();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..4 {
        let x = random_complex(&mut rng, &ctx, 3);
        let y = random_complex(&mut rng, &ctx, 3);
        let maps = hom(&ctx, &x, &y, BUDGET).unwrap();
        let (wx, wy) = (wedge_object(&ctx, &w, &x).unwrap(), wedge_object(&ctx, &w, &y).unwrap());
        assert!(wx.vertex.validate().passed());
        for f in maps.iter().take(5) {
            let wf = wedge_morphism(&ctx, f, &wx, &wy).unwrap();
            assert_eq!(ctx.compose(&wf, &wx.bottom).unwrap(), ctx.compose(&wy.bottom, f).unwrap());
        }
        let wwx = wedge_object(&ctx, &w, &wx.vertex).unwrap();
        let lhs = ctx.compose(&wwx.bottom, &wx.bottom).unwrap();
        let rhs = ctx.compose(&wedge_morphism(&ctx, &wx.bottom, &wx, &wwx).unwrap(), &wx.bottom).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn flatten_retracts_bottom_for_contractible_objects() {
    let ctx = FinSetContext;
    let w = ctx.witnesses();
    for k in 1..=4 {
        let x = FinSet::range(k);
        let (pt, h) = is_contractible(&ctx, &w, &x, BUDGET).unwrap().unwrap();
        let wd = wedge_object(&ctx, &w, &x).unwrap();
        let f = flatten_contractible(&ctx, &w, &x, &h, &pt, &wd).unwrap();
        assert_eq!(ctx.compose(&f, &wd.bottom).unwrap(), ctx.identity(&x));
    }
    let s = SSetContext::new(3).unwrap();
    let sw = s.witnesses();
    let x = s.standard_simplex(1);
    let (pt, h) = is_contractible(&s, &sw, &x, BUDGET).unwrap().unwrap();
    let wd = wedge_object(&s, &sw, &x).unwrap();
    let f = flatten_contractible(&s, &sw, &x, &h, &pt, &wd).unwrap();
    assert_eq!(s.compose(&f, &wd.bottom).unwrap(), s.identity(&x));
}

#[test]
fn products_of_contractible_objects_contract() {
    let s = SSetContext::new(3).unwrap();
    let w = s.witnesses();
    let pieces = [s.terminal(), s.standard_simplex(1), s.standard_simplex(2)];
    for a in &pieces {
        for b in &pieces[..2] {
            let p = s.product(a, b).unwrap();
            assert!(is_contractible(&s, &w, &p.vertex, BUDGET).unwrap().is_some(), "{} × {}", s.describe(a), s.describe(b));
        }
    }
    let ctx = FinSetContext;
    let fw = ctx.witnesses();
    for a in 1..=3 {
        for b in 1..=3 {
            let p = ctx.product(&FinSet::range(a), &FinSet::range(b)).unwrap();
            assert!(is_contractible(&ctx, &fw, &p.vertex, BUDGET).unwrap().is_some());
        }
    }
}

#[test]
fn homotopies_reverse_and_multiply_in_finite_sets() {
    let ctx = FinSetContext;
    let w = ctx.witnesses();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let (x, y) = (random_set(&mut rng, 3), random_set(&mut rng, 3));
        let (f, g) = (random_map(&mut rng, &x, &y), random_map(&mut rng, &x, &y));
        let hw = are_homotopic(&ctx, &w, &f, &g, BUDGET).unwrap().unwrap();
        assert!(hw.verify(&ctx, &w).unwrap());
        let back = reverse_homotopy(&ctx, &w, &hw).unwrap().unwrap();
        assert_eq!((back.f.clone(), back.g.clone()), (g.clone(), f.clone()));
        let a = random_set(&mut rng, 2);
        let ph = product_homotopy(&ctx, &w, &a, &hw).unwrap();
        assert!(ph.verify(&ctx, &w).unwrap());
    }
}

#[test]
fn sset_relation_follows_the_audit() {
    let s = SSetContext::new(3).unwrap();
    let w = s.witnesses();
    let audit = audit_axioms(&s, &w, BUDGET);
    let x = s.terminal();
    let y = s.standard_simplex(1);
    let (_, rel) = check_homotopy_relation(&s, &w, &x, &y, Some(&audit), BUDGET).unwrap();
    assert!(rel.reflexive);
    assert!(!rel.symmetry_expected);
    // vertex 0 reaches vertex 1 along the edge, not back
    assert!(!rel.symmetric);
    let c = circle(&s);
    let (maps, rel) = check_homotopy_relation(&s, &w, &x, &c, Some(&audit), BUDGET).unwrap();
    assert_eq!(maps.len(), 3);
    assert!(rel.reflexive);
}
