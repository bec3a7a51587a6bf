#![allow(dead_code)]

use cellforge::cells::{build_tower, CellTower};
use cellforge::finset::{FinMap, FinSet, FinSetContext};
use cellforge::sset::{SSet, SSetContext};
use cellforge::Context;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const BUDGET: u64 = 5_000_000;

pub fn finset_tower(n: usize) -> CellTower<FinSetContext> {
    let ctx = FinSetContext;
    build_tower(&ctx, &ctx.witnesses(), n, BUDGET).expect("finite-set tower")
}

pub fn sset_tower(n: usize, dim: usize) -> CellTower<SSetContext> {
    let ctx = SSetContext::new(dim).expect("dimension");
    build_tower(&ctx, &ctx.witnesses(), n, BUDGET).expect("simplicial tower")
}

/// `θ_n: [n] → F_n` built from the interval, then bottom and apex of each
/// wedge; `theta[n][k]` is the element standing for `k`.
pub fn delta_labels(t: &CellTower<FinSetContext>) -> Vec<Vec<usize>> {
    let mut theta = vec![vec![0], vec![0, 1]];
    for n in 1..t.height() {
        let wd = t.wedge(n).unwrap();
        let mut next: Vec<usize> = theta[n].iter().map(|&e| wd.bottom.apply(e)).collect();
        next.push(wd.top.apply(0));
        theta.push(next);
    }
    theta.truncate(t.height() + 1);
    theta
}

/// Brute-force `Hom([m], [n])` tables for monotone maps, via a map on `θ`.
pub fn table_through(theta: &[Vec<usize>], m: usize, n: usize, images: &[usize]) -> Vec<usize> {
    let mut out = vec![usize::MAX; theta[m].len()];
    for (k, &img) in images.iter().enumerate() {
        out[theta[m][k]] = theta[n][img];
    }
    out
}

pub fn random_set(rng: &mut ChaCha8Rng, max: usize) -> FinSet {
    FinSet::range(rng.gen_range(1..=max))
}

pub fn random_map(rng: &mut ChaCha8Rng, dom: &FinSet, cod: &FinSet) -> FinMap {
    let table = (0..dom.len()).map(|_| rng.gen_range(0..cod.len())).collect();
    FinMap::new(dom.clone(), cod.clone(), table).unwrap()
}

/// A random ordered complex on at most `max_vertices` vertices.
pub fn random_complex(rng: &mut ChaCha8Rng, ctx: &SSetContext, max_vertices: usize) -> SSet {
    let v = rng.gen_range(1..=max_vertices);
    let mut faces: Vec<Vec<usize>> = (0..v).map(|k| vec![k]).collect();
    for a in 0..v {
        for b in a + 1..v {
            if rng.gen_bool(0.5) {
                faces.push(vec![a, b]);
            }
        }
    }
    ctx.ordered_complex(v, &faces).unwrap()
}

/// Three vertices and three edges: the boundary of a triangle.
pub fn circle(ctx: &SSetContext) -> SSet {
    ctx.ordered_complex(3, &[vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap()
}
