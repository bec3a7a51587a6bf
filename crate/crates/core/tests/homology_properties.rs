mod common;

use cellforge::cells::CosimplicialFunctor;
use cellforge::finset::{FinMap, FinSet, FinSetContext};
use cellforge::homology::{
    asc_chain_complex, check_nerve_identities, homology_groups, induced_on_complexes, nerve, nerve_complex,
    nerve_homology, HomologyGroup,
};
use cellforge::complexes::Asc;
use cellforge::snf::{check_smith, smith_normal_form, IntMatrix};
use cellforge::sset::SSetContext;
use cellforge::Context;
use common::*;
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn arb_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=6, 1usize..=6).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-9i64..=9, c), r))
}

proptest! {
    #[test]
    fn smith_form_is_valid(rows in arb_matrix()) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m);
        prop_assert!(check_smith(&m, &s).is_ok());
    }

    #[test]
    fn smith_form_keeps_determinant_magnitude(rows in (1usize..=5).prop_flat_map(|n| proptest::collection::vec(proptest::collection::vec(-9i64..=9, n), n))) {
        let m = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&m);
        let prod: BigInt = (0..rows.len()).map(|i| s.d[(i, i)].clone()).product();
        let det = m.determinant().unwrap();
        prop_assert_eq!(prod, if det < BigInt::from(0) { -det } else { det });
    }
}

#[test]
fn finite_sets_have_point_homology() {
    let cf = CosimplicialFunctor::new(finset_tower(4));
    for k in 1..=3 {
        let h = nerve_homology(&cf, &FinSet::range(k), 3, BUDGET).unwrap();
        assert_eq!(h[0].betti, 1);
        assert!(h[1..].iter().all(HomologyGroup::is_trivial));
    }
}

#[test]
fn simplicial_circle_nerve() {
    let cf = CosimplicialFunctor::new(sset_tower(3, 3));
    let c = circle(cf.ctx());
    let levels = nerve(&cf, &c, 2, BUDGET).unwrap();
    check_nerve_identities(&levels).unwrap();
    // brute-force count of maps from each cell
    for (n, level) in levels.iter().enumerate() {
        let cell = cf.cell(n).unwrap();
        let mut count = 0;
        let verts = cell.size(0);
        let total = 3usize.pow(verts as u32);
        for code in 0..total {
            let assign: Vec<usize> = (0..verts).map(|v| code / 3usize.pow(v as u32) % 3).collect();
            // maps into an ordered complex are fixed by vertices; each simplex
            // must land on a weakly increasing face
            let ok = (0..=cell.dim()).all(|k| {
                (0..cell.size(k)).all(|s| {
                    let vs: Vec<usize> = cell.vertices_of(k, s).iter().map(|&v| assign[v]).collect();
                    let mut distinct = vs.clone();
                    distinct.dedup();
                    vs.windows(2).all(|w| w[0] <= w[1]) && distinct.len() <= 2
                })
            });
            count += usize::from(ok);
        }
        assert_eq!(level.len(), count, "level {n}");
    }
    let h = nerve_homology(&cf, &c, 1, BUDGET).unwrap();
    assert_eq!(h[0].betti, 1);
    assert_eq!(h[1].betti, 1);
}

#[test]
fn induced_maps_compose() {
    let cf = CosimplicialFunctor::new(finset_tower(3));
    let ctx = FinSetContext;
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let (x, y, z) = (random_set(&mut rng, 3), random_set(&mut rng, 3), random_set(&mut rng, 3));
        let (f, g) = (random_map(&mut rng, &x, &y), random_map(&mut rng, &y, &z));
        let cx = nerve_complex(&cf, &x, 1, BUDGET).unwrap();
        let cy = nerve_complex(&cf, &y, 1, BUDGET).unwrap();
        let cz = nerve_complex(&cf, &z, 1, BUDGET).unwrap();
        let hf = induced_on_complexes(&ctx, &f, &cx, &cy, 1).unwrap();
        let hg = induced_on_complexes(&ctx, &g, &cy, &cz, 1).unwrap();
        let gf = ctx.compose(&g, &f).unwrap();
        let hgf = induced_on_complexes(&ctx, &gf, &cx, &cz, 1).unwrap();
        for n in 0..=1 {
            assert_eq!(hgf.matrices[n], hg.matrices[n].mul(&hf.matrices[n]).unwrap());
        }
    }
}

#[test]
fn sset_induced_maps_compose_on_the_circle() {
    let cf = CosimplicialFunctor::new(sset_tower(3, 3));
    let ctx = cf.ctx().clone();
    let c = circle(&ctx);
    let cc = nerve_complex(&cf, &c, 1, BUDGET).unwrap();
    let maps = cellforge::kernel::hom(&ctx, &c, &c, BUDGET).unwrap();
    for f in &maps {
        for g in &maps {
            let hf = induced_on_complexes(&ctx, f, &cc, &cc, 1).unwrap();
            let hg = induced_on_complexes(&ctx, g, &cc, &cc, 1).unwrap();
            let hgf = induced_on_complexes(&ctx, &ctx.compose(g, f).unwrap(), &cc, &cc, 1).unwrap();
            assert_eq!(hgf.matrices[1], hg.matrices[1].mul(&hf.matrices[1]).unwrap());
        }
    }
}

#[test]
fn relabeling_keeps_homology() {
    let s = SSetContext::new(3).unwrap();
    let a = s.ordered_complex(3, &[vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]]).unwrap();
    let b = s.ordered_complex(3, &[vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]]).unwrap();
    let cf = CosimplicialFunctor::new(sset_tower(3, 3));
    assert_eq!(nerve_homology(&cf, &a, 1, BUDGET).unwrap(), nerve_homology(&cf, &b, 1, BUDGET).unwrap());
    let names: Vec<String> = ["c", "a", "b"].iter().map(|s| s.to_string()).collect();
    let x = Asc::closure(names, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    let y = Asc::closure((0..3).map(|v| format!("v{v}")).collect(), &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
    assert_eq!(
        homology_groups(&asc_chain_complex(&x).unwrap(), 1).unwrap(),
        homology_groups(&asc_chain_complex(&y).unwrap(), 1).unwrap()
    );
}

#[test]
fn constant_map_is_identity_on_degree_zero() {
    let cf = CosimplicialFunctor::new(finset_tower(3));
    let ctx = FinSetContext;
    let x = FinSet::range(3);
    let y = FinSet::range(2);
    let c = FinMap::new(x.clone(), y.clone(), vec![1, 1, 1]).unwrap();
    let cx = nerve_complex(&cf, &x, 1, BUDGET).unwrap();
    let cy = nerve_complex(&cf, &y, 1, BUDGET).unwrap();
    let h = induced_on_complexes(&ctx, &c, &cx, &cy, 1).unwrap();
    assert_eq!(h.matrices[0], IntMatrix::identity(1));
}
