//! Nerves `n ↦ Hom(F_n, X)`, normalized integer chain complexes, homology
//! groups with explicit bases, and induced maps on homology.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cells::CosimplicialFunctor;
use crate::complexes::Asc;
use crate::delta::DeltaMorphism;
use crate::error::{CellError, Result};
use crate::kernel::{hom, Context};
use crate::snf::{smith_normal_form, IntMatrix};

/// One level of the nerve: the hom-set `Hom(F_n, X)` with its face action
/// to level `n-1` and the degeneracy action from level `n-1`.
#[derive(Clone, Debug)]
pub struct NerveLevel<C: Context> {
    pub degree: usize,
    pub elements: Vec<C::Mor>,
    pub index: HashMap<C::Mor, usize>,
    /// `faces[i][σ]` is the index of `σ ∘ F(d_{n,i})` at level `n-1`.
    pub faces: Vec<Vec<usize>>,
    /// `degens[i][τ]` is the index of `τ ∘ F(s_{n-1,i})` here, for `τ` at
    /// level `n-1`.
    pub degens: Vec<Vec<usize>>,
}

impl<C: Context> NerveLevel<C> {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements outside the image of every degeneracy.
    pub fn nondegenerate(&self) -> Vec<usize> {
        let mut degenerate = vec![false; self.len()];
        for table in &self.degens {
            for &x in table {
                degenerate[x] = true;
            }
        }
        (0..self.len()).filter(|&x| !degenerate[x]).collect()
    }
}

fn lookup<C: Context>(index: &HashMap<C::Mor, usize>, m: &C::Mor) -> Result<usize> {
    index
        .get(m)
        .copied()
        .ok_or_else(|| CellError::Invariant(format!("{m:?} is missing from its nerve level")))
}

pub fn nerve<C: Context>(
    cf: &CosimplicialFunctor<C>,
    x: &C::Obj,
    max_degree: usize,
    budget: u64,
) -> Result<Vec<NerveLevel<C>>> {
    if max_degree > cf.height() {
        return Err(CellError::IndexOutOfRange(format!(
            "nerve degree {max_degree} exceeds the tower height {}",
            cf.height()
        )));
    }
    let ctx = cf.ctx();
    let mut levels: Vec<NerveLevel<C>> = Vec::with_capacity(max_degree + 1);
    for n in 0..=max_degree {
        let elements = hom(ctx, cf.cell(n)?, x, budget)?;
        let index: HashMap<C::Mor, usize> = elements.iter().cloned().enumerate().map(|(k, m)| (m, k)).collect();
        let mut faces = Vec::new();
        let mut degens = Vec::new();
        if n >= 1 {
            let below = &levels[n - 1];
            for i in 0..=n {
                let d = cf.apply(&DeltaMorphism::face(n, i))?;
                let table = elements
                    .iter()
                    .map(|s| lookup::<C>(&below.index, &ctx.compose(s, &d)?))
                    .collect::<Result<Vec<_>>>()?;
                faces.push(table);
            }
            for i in 0..n {
                let s = cf.apply(&DeltaMorphism::degeneracy(n - 1, i))?;
                let table = below
                    .elements
                    .iter()
                    .map(|t| lookup::<C>(&index, &ctx.compose(t, &s)?))
                    .collect::<Result<Vec<_>>>()?;
                degens.push(table);
            }
        }
        levels.push(NerveLevel { degree: n, elements, index, faces, degens });
    }
    Ok(levels)
}

/// Checks the presheaf simplicial identities on the action tables.
pub fn check_nerve_identities<C: Context>(levels: &[NerveLevel<C>]) -> Result<()> {
    let bad = |what: &str, n: usize, i: usize, j: usize| {
        Err(CellError::Invariant(format!("nerve {what} identity fails at n={n}, i={i}, j={j}")))
    };
    for n in 2..levels.len() {
        let (hi, lo) = (&levels[n], &levels[n - 1]);
        for j in 0..=n {
            for i in 0..j {
                // d_i d_j = d_{j-1} d_i on elements
                for x in 0..hi.len() {
                    if lo.faces[i][hi.faces[j][x]] != lo.faces[j - 1][hi.faces[i][x]] {
                        return bad("face-face", n, i, j);
                    }
                }
            }
        }
    }
    for n in 1..levels.len() {
        let (hi, lo) = (&levels[n], &levels[n - 1]);
        for j in 0..n {
            for x in 0..lo.len() {
                let y = hi.degens[j][x];
                if hi.faces[j][y] != x || hi.faces[j + 1][y] != x {
                    return bad("face-degeneracy", n, j, j);
                }
            }
        }
    }
    Ok(())
}

/// Free abelian groups `C_n` of rank `ranks[n]` and boundaries
/// `boundaries[n]: C_n → C_{n-1}`; `boundaries[0]` is the zero map to the
/// zero group. Degrees past the stored range are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplex {
    pub fn new(ranks: Vec<usize>, higher: Vec<IntMatrix>) -> Result<Self> {
        if higher.len() + 1 != ranks.len().max(1) {
            return Err(CellError::mismatch("chain complex needs one boundary per positive degree"));
        }
        let mut boundaries = vec![IntMatrix::zeros(0, ranks.first().copied().unwrap_or(0))];
        for (k, m) in higher.into_iter().enumerate() {
            let n = k + 1;
            if m.rows() != ranks[n - 1] || m.cols() != ranks[n] {
                return Err(CellError::mismatch(format!("boundary {n} has the wrong shape")));
            }
            boundaries.push(m);
        }
        let c = ChainComplex { ranks, boundaries };
        c.check_square_zero()?;
        Ok(c)
    }

    pub fn top_degree(&self) -> usize {
        self.ranks.len().saturating_sub(1)
    }

    pub fn rank(&self, n: usize) -> usize {
        self.ranks.get(n).copied().unwrap_or(0)
    }

    /// `∂_n`, a `rank(n-1) × rank(n)` matrix (zero outside the stored range).
    pub fn boundary(&self, n: usize) -> IntMatrix {
        match self.boundaries.get(n) {
            Some(m) => m.clone(),
            None => IntMatrix::zeros(if n == 0 { 0 } else { self.rank(n - 1) }, self.rank(n)),
        }
    }

    pub fn check_square_zero(&self) -> Result<()> {
        for n in 2..self.boundaries.len() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n])?.is_zero() {
                return Err(CellError::Invariant(format!("∂_{}∘∂_{n} ≠ 0", n - 1)));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }

    /// `ℤ^b ⊕ ℤ/t_1 ⊕ …` in plain text, `0` when trivial.
    pub fn pretty(&self) -> String {
        let mut parts = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "degree": self.degree,
            "betti": self.betti,
            "torsion": self.torsion.iter().map(big_json).collect::<Vec<_>>(),
        })
    }
}

pub(crate) fn big_json(b: &BigInt) -> Value {
    match i64::try_from(b) {
        Ok(v) => json!(v),
        Err(_) => json!(b.to_string()),
    }
}

/// Homology in one degree together with coordinates: a cycle `z` has
/// coordinates `p · (v_inv · z)[rank..]`; entries below `torsion_start`
/// are units and dropped, the next ones are torsion, the rest free.
#[derive(Clone, Debug)]
pub struct HomologyBasis {
    pub group: HomologyGroup,
    boundary_rank: usize,
    v_inv: IntMatrix,
    p: IntMatrix,
    factors: Vec<BigInt>,
    torsion_start: usize,
    /// Representative cycles, torsion generators first then free ones.
    pub generators: Vec<Vec<BigInt>>,
}

impl HomologyBasis {
    pub fn compute(c: &ChainComplex, n: usize) -> Result<Self> {
        let d_n = c.boundary(n);
        let d_up = c.boundary(n + 1);
        let s = smith_normal_form(&d_n);
        let r = s.rank;
        let dim = c.rank(n);
        let k = dim - r;
        let projected = s.v_inv.mul(&d_up)?;
        if !projected.block(0, r, 0, projected.cols()).is_zero() {
            return Err(CellError::Invariant(format!("image of ∂_{} is not made of cycles", n + 1)));
        }
        let rel = projected.block(r, dim, 0, projected.cols());
        let t = smith_normal_form(&rel);
        let factors = t.invariant_factors();
        let torsion_start = factors.iter().take_while(|e| e.is_one()).count();
        let kernel_basis = s.v.block(0, dim, r, dim);
        let mut generators = Vec::new();
        for i in torsion_start..k {
            let col = t.u_inv.column(i);
            generators.push(kernel_basis.mul_vec(&col));
        }
        let group = HomologyGroup {
            degree: n,
            betti: k - factors.len(),
            torsion: factors[torsion_start..].to_vec(),
        };
        Ok(HomologyBasis { group, boundary_rank: r, v_inv: s.v_inv, p: t.u, factors, torsion_start, generators })
    }

    pub fn dimension(&self) -> usize {
        self.generators.len()
    }

    /// Coordinates of a cycle, torsion entries reduced into `[0, t)`.
    pub fn coordinates(&self, z: &[BigInt]) -> Result<Vec<BigInt>> {
        let full = self.v_inv.mul_vec(z);
        if full[..self.boundary_rank].iter().any(|e| !e.is_zero()) {
            return Err(CellError::Invariant(format!("chain is not a cycle in degree {}", self.group.degree)));
        }
        let y = self.p.mul_vec(&full[self.boundary_rank..]);
        Ok((self.torsion_start..y.len())
            .map(|i| match self.factors.get(i) {
                Some(e) => y[i].mod_floor(e),
                None => y[i].clone(),
            })
            .collect())
    }
}

pub fn homology_groups(c: &ChainComplex, max_degree: usize) -> Result<Vec<HomologyGroup>> {
    (0..=max_degree)
        .into_par_iter()
        .map(|n| HomologyBasis::compute(c, n).map(|b| b.group))
        .collect()
}

pub fn homology_to_json(groups: &[HomologyGroup]) -> Value {
    Value::Array(groups.iter().map(HomologyGroup::to_json).collect())
}

/// A nerve with its normalized chain complex and generator bookkeeping.
#[derive(Clone, Debug)]
pub struct NerveComplex<C: Context> {
    pub levels: Vec<NerveLevel<C>>,
    pub complex: ChainComplex,
    /// Generator `k` in degree `n` is element `generators[n][k]`.
    pub generators: Vec<Vec<usize>>,
    generator_of: Vec<Vec<Option<usize>>>,
}

impl<C: Context> NerveComplex<C> {
    /// The generator index of a nerve element, `None` when degenerate.
    pub fn generator_of(&self, n: usize, element: usize) -> Option<usize> {
        self.generator_of[n][element]
    }
}

pub fn normalized_chain_complex<C: Context>(levels: Vec<NerveLevel<C>>) -> Result<NerveComplex<C>> {
    let generators: Vec<Vec<usize>> = levels.iter().map(NerveLevel::nondegenerate).collect();
    let generator_of: Vec<Vec<Option<usize>>> = levels
        .iter()
        .zip(&generators)
        .map(|(l, g)| {
            let mut t = vec![None; l.len()];
            for (k, &x) in g.iter().enumerate() {
                t[x] = Some(k);
            }
            t
        })
        .collect();
    let ranks: Vec<usize> = generators.iter().map(Vec::len).collect();
    let mut higher = Vec::new();
    for n in 1..levels.len() {
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (col, &x) in generators[n].iter().enumerate() {
            for (i, table) in levels[n].faces.iter().enumerate() {
                if let Some(row) = generator_of[n - 1][table[x]] {
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    m[(row, col)] += sign;
                }
            }
        }
        higher.push(m);
    }
    let complex = ChainComplex::new(ranks, higher)?;
    Ok(NerveComplex { levels, complex, generators, generator_of })
}

/// Nerve complex of `x` deep enough for homology through `max_degree`.
pub fn nerve_complex<C: Context>(
    cf: &CosimplicialFunctor<C>,
    x: &C::Obj,
    max_degree: usize,
    budget: u64,
) -> Result<NerveComplex<C>> {
    normalized_chain_complex(nerve(cf, x, max_degree + 1, budget)?)
}

pub fn nerve_homology<C: Context>(
    cf: &CosimplicialFunctor<C>,
    x: &C::Obj,
    max_degree: usize,
    budget: u64,
) -> Result<Vec<HomologyGroup>> {
    homology_groups(&nerve_complex(cf, x, max_degree, budget)?.complex, max_degree)
}

/// The chain map `σ ↦ f ∘ σ`, one matrix per degree.
pub fn chain_map<C: Context>(
    ctx: &C,
    f: &C::Mor,
    source: &NerveComplex<C>,
    target: &NerveComplex<C>,
) -> Result<Vec<IntMatrix>> {
    let depth = source.levels.len().min(target.levels.len());
    let mut maps = Vec::with_capacity(depth);
    for n in 0..depth {
        let mut m = IntMatrix::zeros(target.complex.rank(n), source.complex.rank(n));
        for (col, &x) in source.generators[n].iter().enumerate() {
            let image = ctx.compose(f, &source.levels[n].elements[x])?;
            let y = lookup::<C>(&target.levels[n].index, &image)?;
            if let Some(row) = target.generator_of(n, y) {
                m[(row, col)] = BigInt::one();
            }
        }
        maps.push(m);
    }
    for n in 1..depth {
        let lhs = target.complex.boundary(n).mul(&maps[n])?;
        let rhs = maps[n - 1].mul(&source.complex.boundary(n))?;
        if lhs != rhs {
            return Err(CellError::Invariant(format!("postcomposition is not a chain map in degree {n}")));
        }
    }
    Ok(maps)
}

/// Matrices of `H_n(f)` in the bases of [`HomologyBasis`], rows and columns
/// ordered torsion first then free.
#[derive(Clone, Debug)]
pub struct InducedHomology {
    pub source: Vec<HomologyGroup>,
    pub target: Vec<HomologyGroup>,
    pub matrices: Vec<IntMatrix>,
}

impl InducedHomology {
    pub fn to_json(&self) -> Value {
        json!({
            "source": homology_to_json(&self.source),
            "target": homology_to_json(&self.target),
            "matrices": self.matrices.iter().map(|m| json!(m.to_i64_rows())).collect::<Vec<_>>(),
        })
    }
}

pub fn induced_on_complexes<C: Context>(
    ctx: &C,
    f: &C::Mor,
    source: &NerveComplex<C>,
    target: &NerveComplex<C>,
    max_degree: usize,
) -> Result<InducedHomology> {
    let maps = chain_map(ctx, f, source, target)?;
    if maps.len() < max_degree + 2 {
        return Err(CellError::IndexOutOfRange(format!("nerves too shallow for degree {max_degree}")));
    }
    let (mut src_groups, mut tgt_groups, mut matrices) = (Vec::new(), Vec::new(), Vec::new());
    for n in 0..=max_degree {
        let hs = HomologyBasis::compute(&source.complex, n)?;
        let ht = HomologyBasis::compute(&target.complex, n)?;
        let mut m = IntMatrix::zeros(ht.dimension(), hs.dimension());
        for (col, g) in hs.generators.iter().enumerate() {
            let coords = ht.coordinates(&maps[n].mul_vec(g))?;
            for (row, v) in coords.into_iter().enumerate() {
                m[(row, col)] = v;
            }
        }
        src_groups.push(hs.group);
        tgt_groups.push(ht.group);
        matrices.push(m);
    }
    Ok(InducedHomology { source: src_groups, target: tgt_groups, matrices })
}

pub fn induced_map_on_homology<C: Context>(
    cf: &CosimplicialFunctor<C>,
    f: &C::Mor,
    max_degree: usize,
    budget: u64,
) -> Result<InducedHomology> {
    let ctx = cf.ctx();
    let source = nerve_complex(cf, &ctx.dom(f), max_degree, budget)?;
    let target = nerve_complex(cf, &ctx.cod(f), max_degree, budget)?;
    induced_on_complexes(ctx, f, &source, &target, max_degree)
}

/// Chains on the faces of an abstract simplicial complex, faces of each
/// dimension in lexicographic vertex order.
pub fn asc_chain_complex(a: &Asc) -> Result<ChainComplex> {
    a.validate()?;
    let top = a.dimension();
    let Some(top) = top else {
        return ChainComplex::new(vec![0], Vec::new());
    };
    let by_dim: Vec<Vec<Vec<usize>>> = (0..=top).map(|d| a.faces_of_dim(d)).collect();
    let ranks: Vec<usize> = by_dim.iter().map(Vec::len).collect();
    let mut higher = Vec::new();
    for n in 1..=top {
        let index: HashMap<&[usize], usize> = by_dim[n - 1].iter().enumerate().map(|(k, f)| (f.as_slice(), k)).collect();
        let mut m = IntMatrix::zeros(ranks[n - 1], ranks[n]);
        for (col, face) in by_dim[n].iter().enumerate() {
            for i in 0..face.len() {
                let mut sub = face.clone();
                sub.remove(i);
                let row = index[sub.as_slice()];
                m[(row, col)] += if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
            }
        }
        higher.push(m);
    }
    ChainComplex::new(ranks, higher)
}

/// Euler characteristic `Σ (−1)^n rank C_n`.
pub fn euler_characteristic(c: &ChainComplex) -> i64 {
    c.ranks.iter().enumerate().map(|(n, &r)| if n % 2 == 0 { r as i64 } else { -(r as i64) }).sum()
}

/// Invariant factors greater than one, for a single matrix.
pub fn torsion_of(m: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(m).invariant_factors().into_iter().filter(|e| e.abs() > BigInt::one()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::build_tower;
    use crate::finset::{FinSet, FinSetContext};
    use crate::kernel::constant;

    fn z(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn finset_cf(n: usize) -> CosimplicialFunctor<FinSetContext> {
        let ctx = FinSetContext;
        let w = ctx.witnesses();
        CosimplicialFunctor::new(build_tower(&ctx, &w, n, 1_000_000).unwrap())
    }

    fn circle_complex() -> ChainComplex {
        // three vertices and three edges 01, 02, 12
        let d1 = IntMatrix::from_rows(&[vec![-1, -1, 0], vec![1, 0, -1], vec![0, 1, 1]]).unwrap();
        ChainComplex::new(vec![3, 3], vec![d1]).unwrap()
    }

    #[test]
    fn circle_homology() {
        let h = homology_groups(&circle_complex(), 2).unwrap();
        assert_eq!(h[0].betti, 1);
        assert_eq!(h[1].betti, 1);
        assert!(h[2].is_trivial());
    }

    #[test]
    fn projective_plane_like_torsion() {
        // one vertex, one edge, one face attached by degree 2
        let d1 = IntMatrix::from_rows(&[vec![0]]).unwrap();
        let d2 = IntMatrix::from_rows(&[vec![2]]).unwrap();
        let c = ChainComplex::new(vec![1, 1, 1], vec![d1, d2]).unwrap();
        let h = homology_groups(&c, 2).unwrap();
        assert_eq!(h[1].torsion, vec![z(2)]);
        assert_eq!(h[1].betti, 0);
        assert!(h[2].is_trivial());
        assert_eq!(h[1].pretty(), "Z/2");
    }

    #[test]
    fn rejects_nonzero_square() {
        let d1 = IntMatrix::from_rows(&[vec![1]]).unwrap();
        let d2 = IntMatrix::from_rows(&[vec![1]]).unwrap();
        assert!(ChainComplex::new(vec![1, 1, 1], vec![d1, d2]).is_err());
    }

    #[test]
    fn terminal_nerve_is_a_point() {
        let cf = finset_cf(4);
        let levels = nerve(&cf, &FinSetContext.terminal(), 3, 100_000).unwrap();
        assert!(levels.iter().all(|l| l.len() == 1));
        let nc = normalized_chain_complex(levels).unwrap();
        assert_eq!(nc.complex.ranks, vec![1, 0, 0, 0]);
        let h = homology_groups(&nc.complex, 2).unwrap();
        assert_eq!(h[0].betti, 1);
        assert!(h[1..].iter().all(HomologyGroup::is_trivial));
    }

    #[test]
    fn finset_nerve_sizes() {
        let cf = finset_cf(4);
        let x = FinSet::range(3);
        let levels = nerve(&cf, &x, 3, 100_000).unwrap();
        for (n, l) in levels.iter().enumerate() {
            assert_eq!(l.len(), 3usize.pow(n as u32 + 1));
        }
        check_nerve_identities(&levels).unwrap();
    }

    #[test]
    fn two_point_nondegenerate_edges_and_boundary() {
        let cf = finset_cf(3);
        let x = FinSet::range(2);
        let nc = normalized_chain_complex(nerve(&cf, &x, 2, 100_000).unwrap()).unwrap();
        assert_eq!(nc.complex.rank(1), 2);
        // the edge (0,1): d_0 keeps vertex 1, d_1 keeps vertex 0
        let edge = nc.generators[1]
            .iter()
            .position(|&e| nc.levels[1].elements[e].table() == [0, 1])
            .unwrap();
        let d = nc.complex.boundary(1);
        let col: Vec<BigInt> = d.column(edge);
        let zero_vertex = nc.levels[0].elements.iter().position(|m| m.table() == [0]).unwrap();
        let one_vertex = nc.levels[0].elements.iter().position(|m| m.table() == [1]).unwrap();
        assert_eq!(col[nc.generator_of(0, zero_vertex).unwrap()], z(-1));
        assert_eq!(col[nc.generator_of(0, one_vertex).unwrap()], z(1));
    }

    #[test]
    fn finite_sets_are_acyclic() {
        let cf = finset_cf(4);
        for k in 1..=3 {
            let h = nerve_homology(&cf, &FinSet::range(k), 2, 1_000_000).unwrap();
            assert_eq!(h[0].betti, 1);
            assert!(h[1..].iter().all(HomologyGroup::is_trivial), "{h:?}");
        }
    }

    #[test]
    fn identity_and_constant_maps() {
        let cf = finset_cf(3);
        let ctx = FinSetContext;
        let x = FinSet::range(2);
        let id = induced_map_on_homology(&cf, &ctx.identity(&x), 1, 100_000).unwrap();
        assert_eq!(id.matrices[0], IntMatrix::identity(1));
        let y = FinSet::range(3);
        let pt = crate::finset::FinMap::new(ctx.terminal(), y.clone(), vec![2]).unwrap();
        let c = constant(&ctx, &x, &pt).unwrap();
        let ind = induced_map_on_homology(&cf, &c, 1, 100_000).unwrap();
        assert_eq!(ind.matrices[0], IntMatrix::identity(1));
        assert_eq!(ind.matrices[1].rows(), 0);
    }

    #[test]
    fn asc_oracles() {
        let tri = Asc::closure(vec!["a".into(), "b".into(), "c".into()], &[vec![0, 1, 2]]).unwrap();
        let h = homology_groups(&asc_chain_complex(&tri).unwrap(), 2).unwrap();
        assert_eq!((h[0].betti, h[1].betti, h[2].betti), (1, 0, 0));
        let hollow = Asc::closure(vec!["a".into(), "b".into(), "c".into()], &[vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        let c = asc_chain_complex(&hollow).unwrap();
        assert_eq!(euler_characteristic(&c), 0);
        let h = homology_groups(&c, 1).unwrap();
        assert_eq!((h[0].betti, h[1].betti), (1, 1));
    }

    #[test]
    fn coordinates_of_boundary_vanish() {
        let c = circle_complex();
        let b = HomologyBasis::compute(&c, 0).unwrap();
        // a 0-boundary is trivial in H_0
        let boundary = c.boundary(1).column(0);
        assert_eq!(b.coordinates(&boundary).unwrap(), vec![z(0)]);
        let vertex = vec![z(1), z(0), z(0)];
        assert_eq!(b.coordinates(&vertex).unwrap().len(), 1);
    }
}
