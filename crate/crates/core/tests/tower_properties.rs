mod common;

use cellforge::cells::{verify_simplicial_identities, CosimplicialFunctor, IdentityFamily};
use cellforge::delta::{all_monotone, DeltaMorphism, Generator};
use cellforge::homotopy::is_contractible;
use cellforge::Context;
use common::*;
use proptest::prelude::*;

/// A random generator word starting at `[start]` that stays within `top`.
fn arb_word(top: usize) -> impl Strategy<Value = (usize, Vec<Generator>)> {
    (0..=top, proptest::collection::vec((any::<bool>(), any::<u8>()), 0..6)).prop_map(move |(start, steps)| {
        let mut level = start;
        let mut word = Vec::new();
        for (up, pick) in steps {
            // going up uses a face into level+1, going down a degeneracy
            if up && level < top {
                let n = level + 1;
                word.push(Generator::Face { n, i: pick as usize % (n + 1) });
                level = n;
            } else if level >= 1 {
                let n = level - 1;
                word.push(Generator::Degen { n, i: pick as usize % (n + 1) });
                level = n;
            }
        }
        (start, word)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn images_do_not_depend_on_the_word((start, word) in arb_word(4)) {
        let t = finset_tower(5);
        let cf = CosimplicialFunctor::new(t.clone());
        let direct = t.apply_word(start, &word).unwrap();
        let phi = DeltaMorphism::from_word(&word).unwrap().unwrap_or_else(|| DeltaMorphism::identity(start));
        prop_assert_eq!(cf.apply(&phi).unwrap(), direct);
    }

    #[test]
    fn sset_images_do_not_depend_on_the_word((start, word) in arb_word(3)) {
        let t = sset_tower(3, 3);
        let cf = CosimplicialFunctor::new(t.clone());
        let direct = t.apply_word(start, &word).unwrap();
        let phi = DeltaMorphism::from_word(&word).unwrap().unwrap_or_else(|| DeltaMorphism::identity(start));
        prop_assert_eq!(cf.apply(&phi).unwrap(), direct);
    }
}

#[test]
fn functor_agrees_with_simplex_maps() {
    let t = finset_tower(4);
    let theta = delta_labels(&t);
    let cf = CosimplicialFunctor::new(t);
    for m in 0..=4 {
        for n in 0..=4 {
            for phi in all_monotone(m, n) {
                let want = table_through(&theta, m, n, phi.images());
                assert_eq!(cf.apply(&phi).unwrap().table(), want.as_slice(), "{phi:?}");
            }
        }
    }
}

#[test]
fn functor_preserves_identities_and_composition() {
    let cf = CosimplicialFunctor::new(sset_tower(3, 3));
    let ctx = cf.ctx().clone();
    for n in 0..=3 {
        assert_eq!(cf.apply(&DeltaMorphism::identity(n)).unwrap(), ctx.identity(cf.cell(n).unwrap()));
    }
    for f in all_monotone(1, 2) {
        for g in all_monotone(2, 3) {
            let whole = cf.apply(&g.after(&f).unwrap()).unwrap();
            let parts = ctx.compose(&cf.apply(&g).unwrap(), &cf.apply(&f).unwrap()).unwrap();
            assert_eq!(whole, parts);
        }
    }
}

#[test]
fn finite_set_report_isolates_one_family() {
    let report = verify_simplicial_identities(&finset_tower(6)).unwrap();
    for family in IdentityFamily::SIMPLICIAL {
        let (pass, total) = report.family_counts(family);
        assert!(total > 0);
        assert_eq!(pass, total, "{family}");
    }
    let failing: Vec<_> = report.failures().map(|f| f.family).collect();
    assert!(failing.iter().all(|&f| f == IdentityFamily::FlattenWedgeBottom));
}

#[test]
fn simplicial_families_hold_in_sset() {
    let report = verify_simplicial_identities(&sset_tower(3, 4)).unwrap();
    for family in IdentityFamily::SIMPLICIAL {
        let (pass, total) = report.family_counts(family);
        assert_eq!(pass, total, "{family}");
    }
}

#[test]
fn cells_are_contractible() {
    let t = sset_tower(3, 3);
    let w = t.ctx.witnesses();
    for n in 0..=3 {
        assert!(is_contractible(&t.ctx, &w, t.cell(n).unwrap(), BUDGET).unwrap().is_some(), "F_{n}");
    }
}

#[test]
fn sset_cells_validate_and_serialize() {
    let t = sset_tower(3, 4);
    for x in t.cells() {
        assert!(x.validate().passed());
    }
    let json = t.to_json();
    assert!(json.is_object());
    assert_eq!(t.cell(0).unwrap().size(0), 1);
    assert_eq!(t.cell(1).unwrap().nondegenerate(1).len(), 1);
}
