//! Homotopies, contractibility, and the cone construction on cells.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cells::{CellTower, CosimplicialFunctor};
use crate::error::{CellError, Result};
use crate::kernel::{
    cylinder_end, hom, points, AxiomId, AxiomReport, AxiomWitnesses, Constraint, Context,
    ProductData, SearchOptions, Verdict,
};
use crate::wedge::search_contraction;

/// `h: X × F_1 → Y` restricting to `f` at endpoint 0 and `g` at endpoint 1.
#[derive(Clone, Debug)]
pub struct HomotopyWitness<C: Context> {
    pub f: C::Mor,
    pub g: C::Mor,
    pub h: C::Mor,
    pub cylinder: ProductData<C>,
}

impl<C: Context> HomotopyWitness<C> {
    pub fn verify(&self, ctx: &C, w: &AxiomWitnesses<C>) -> Result<bool> {
        let x = ctx.dom(&self.f);
        let near = ctx.compose(&self.h, &cylinder_end(ctx, &x, &self.cylinder, &w.endpoint0)?)?;
        let far = ctx.compose(&self.h, &cylinder_end(ctx, &x, &self.cylinder, &w.endpoint1)?)?;
        Ok(near == self.f && far == self.g)
    }
}

/// Searches for a homotopy from `f` to `g`.
///
/// `Ok(None)` means the search was exhaustive and found nothing; running out
/// of budget is an error.
pub fn are_homotopic<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    f: &C::Mor,
    g: &C::Mor,
    budget: u64,
) -> Result<Option<HomotopyWitness<C>>> {
    let (x, y) = (ctx.dom(f), ctx.cod(f));
    if ctx.dom(g) != x || ctx.cod(g) != y {
        return Err(CellError::mismatch("are_homotopic: morphisms are not parallel"));
    }
    let cylinder = ctx.product(&x, &w.interval)?;
    if f == g {
        let h = ctx.compose(f, &cylinder.proj1)?;
        return Ok(Some(HomotopyWitness { f: f.clone(), g: g.clone(), h, cylinder }));
    }
    let near = cylinder_end(ctx, &x, &cylinder, &w.endpoint0)?;
    let far = cylinder_end(ctx, &x, &cylinder, &w.endpoint1)?;
    let found = ctx.search(
        &cylinder.vertex,
        &y,
        &[Constraint::new(near, f.clone()), Constraint::new(far, g.clone())],
        SearchOptions::first(budget),
    )?;
    Ok(found.into_iter().next().map(|h| HomotopyWitness { f: f.clone(), g: g.clone(), h, cylinder }))
}

/// `g ≃ f` from `f ≃ g` by running the cylinder backwards through the swap.
pub fn reverse_homotopy<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    hw: &HomotopyWitness<C>,
) -> Result<Option<HomotopyWitness<C>>> {
    let Some(swap) = &w.swap else { return Ok(None) };
    let flip = ctx.pair(&hw.cylinder.proj1, &ctx.compose(swap, &hw.cylinder.proj2)?, &hw.cylinder)?;
    let h = ctx.compose(&hw.h, &flip)?;
    let out = HomotopyWitness { f: hw.g.clone(), g: hw.f.clone(), h, cylinder: hw.cylinder.clone() };
    Ok(if out.verify(ctx, w)? { Some(out) } else { None })
}

/// `A × f ≃ A × g` from `f ≃ g`.
pub fn product_homotopy<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    a: &C::Obj,
    hw: &HomotopyWitness<C>,
) -> Result<HomotopyWitness<C>> {
    let (x, y) = (ctx.dom(&hw.f), ctx.cod(&hw.f));
    let ax = ctx.product(a, &x)?;
    let ay = ctx.product(a, &y)?;
    let cyl = ctx.product(&ax.vertex, &w.interval)?;
    let a_part = ctx.compose(&ax.proj1, &cyl.proj1)?;
    let x_part = ctx.compose(&ax.proj2, &cyl.proj1)?;
    let inner = ctx.pair(&x_part, &cyl.proj2, &hw.cylinder)?;
    let h = ctx.pair(&a_part, &ctx.compose(&hw.h, &inner)?, &ay)?;
    let times = |m: &C::Mor| -> Result<C::Mor> {
        ctx.pair(&ax.proj1, &ctx.compose(m, &ax.proj2)?, &ay)
    };
    let out = HomotopyWitness { f: times(&hw.f)?, g: times(&hw.g)?, h, cylinder: cyl };
    if !out.verify(ctx, w)? {
        return Err(CellError::Invariant("product homotopy has the wrong ends".into()));
    }
    Ok(out)
}

/// A point of `x` and a contraction of `x` onto it, if any exists.
pub fn is_contractible<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    x: &C::Obj,
    budget: u64,
) -> Result<Option<(C::Mor, C::Mor)>> {
    for pt in points(ctx, x, budget)? {
        if let Some((_, h)) = search_contraction(ctx, w, x, &pt, budget)? {
            return Ok(Some((pt, h)));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub size: usize,
    /// `related[a][b]`: a homotopy from map `a` to map `b` exists.
    pub related: Vec<Vec<bool>>,
    pub reflexive: bool,
    pub symmetric: bool,
    pub transitive: bool,
    /// Set when the axiom audit predicts symmetry (a working swap).
    pub symmetry_expected: bool,
    /// Set when the axiom audit predicts transitivity (a working join).
    pub transitivity_expected: bool,
}

/// The full one-sided homotopy relation on `Hom(x, y)`.
pub fn check_homotopy_relation<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    x: &C::Obj,
    y: &C::Obj,
    audit: Option<&AxiomReport<C>>,
    budget: u64,
) -> Result<(Vec<C::Mor>, RelationReport)> {
    let maps = hom(ctx, x, y, budget)?;
    let k = maps.len();
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).collect();
    let found = pairs
        .par_iter()
        .map(|&(a, b)| Ok(are_homotopic(ctx, w, &maps[a], &maps[b], budget)?.is_some()))
        .collect::<Result<Vec<bool>>>()?;
    let related: Vec<Vec<bool>> = found.chunks(k.max(1)).map(<[bool]>::to_vec).take(k).collect();
    let reflexive = (0..k).all(|a| related[a][a]);
    let symmetric = (0..k).all(|a| (0..k).all(|b| related[a][b] == related[b][a]));
    let transitive =
        (0..k).all(|a| (0..k).all(|b| !related[a][b] || (0..k).all(|c| !related[b][c] || related[a][c])));
    let expect = |id| audit.and_then(|r| r.verdict(id)) == Some(Verdict::Pass);
    Ok((
        maps,
        RelationReport {
            size: k,
            related,
            reflexive,
            symmetric,
            transitive,
            symmetry_expected: expect(AxiomId::Swap),
            transitivity_expected: expect(AxiomId::F1Join),
        },
    ))
}

// ---------------------------------------------------------------------------
// Base, cone, convexity

/// Which end of `F_{n+1}` the cone point sits at.
///
/// The wedge collapses the last vertex, so the cone built from it is
/// `Trailing`: its base is the face opposite the last vertex. `Leading`
/// reads the base as the zeroth face instead.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Orientation {
    Leading,
    Trailing,
}

/// Which degeneracy of `F_{m+1}` closes the cone; `First` is only useful for
/// showing that the checks notice a wrong recipe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConeRecipe {
    Top,
    First,
}

fn base_face(n: usize, orientation: Orientation) -> usize {
    match orientation {
        Orientation::Leading => 0,
        Orientation::Trailing => n + 1,
    }
}

/// `Base(σ) = σ ∘ d_{n+1,k}` for `σ: F_{n+1} → X`, with `k` the base face of
/// the orientation.
pub fn base_map<C: Context>(
    cf: &CosimplicialFunctor<C>,
    sigma: &C::Mor,
    n: usize,
    orientation: Orientation,
) -> Result<C::Mor> {
    let d = cf.tower.face(n + 1, base_face(n, orientation))?;
    if cf.ctx().dom(sigma) != *cf.cell(n + 1)? {
        return Err(CellError::mismatch("base_map: σ does not start at F_{n+1}"));
    }
    cf.ctx().compose(sigma, d)
}

/// `Cone_n(σ) = s_{m,m} ∘ W(σ)` for `σ: F_n → F_m`.
pub fn cone<C: Context>(t: &CellTower<C>, sigma: &C::Mor, n: usize, m: usize, recipe: ConeRecipe) -> Result<C::Mor> {
    if n + 1 > t.height() || m + 1 > t.height() {
        return Err(CellError::IndexOutOfRange(format!("cone of a map F_{n} → F_{m}")));
    }
    let s = match recipe {
        ConeRecipe::Top => t.degeneracy(m, m)?,
        ConeRecipe::First => t.degeneracy(m, 0)?,
    };
    t.ctx.compose(s, &t.wedge_of(sigma, n, m)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ConvexityCheck {
    /// The cone restricted to its base is `σ`.
    Base,
    /// The cone restricted to a side face is the cone of the restriction.
    Naturality,
    /// Every face of the cone, base and sides together.
    FaceTable,
    /// `Base` commutes with the face maps after reindexing.
    BaseSquare,
}

impl ConvexityCheck {
    pub fn name(self) -> &'static str {
        match self {
            ConvexityCheck::Base => "base",
            ConvexityCheck::Naturality => "naturality",
            ConvexityCheck::FaceTable => "face-table",
            ConvexityCheck::BaseSquare => "base-square",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityInstance {
    pub check: ConvexityCheck,
    pub m: usize,
    pub n: usize,
    pub i: usize,
    /// Position of `σ` in the enumerated hom-set.
    pub sigma: usize,
    pub passed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvexityReport {
    pub orientation: Orientation,
    pub recipe: ConeRecipe,
    pub instances: Vec<ConvexityInstance>,
    /// The base and naturality checks agree with the face-table check.
    pub consistent: bool,
}

impl ConvexityReport {
    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    pub fn count(&self, check: ConvexityCheck) -> (usize, usize) {
        let of: Vec<_> = self.instances.iter().filter(|i| i.check == check).collect();
        (of.iter().filter(|i| i.passed).count(), of.len())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "orientation": self.orientation,
            "recipe": self.recipe,
            "consistent": self.consistent,
            "passed": self.instances.iter().filter(|i| i.passed).count(),
            "failed": self.instances.iter().filter(|i| !i.passed).count(),
            "instances": self.instances.iter().map(|i| json!({
                "check": i.check.name(), "m": i.m, "n": i.n, "i": i.i, "sigma": i.sigma,
                "verdict": if i.passed { "pass" } else { "fail" },
            })).collect::<Vec<_>>(),
        })
    }
}

/// Enumerates `Hom(F_n, F_m)` for `n, m ≤ depth` and checks the cone
/// identities for every `σ`.
pub fn verify_convexity<C: Context>(
    cf: &CosimplicialFunctor<C>,
    depth: usize,
    orientation: Orientation,
    recipe: ConeRecipe,
    budget: u64,
) -> Result<ConvexityReport> {
    let t = &cf.tower;
    let c = &t.ctx;
    if depth + 1 > t.height() {
        return Err(CellError::IndexOutOfRange(format!("convexity depth {depth} needs a tower of height {}", depth + 1)));
    }
    let mut instances = Vec::new();
    let mut consistent = true;
    for m in 0..=depth {
        for n in 0..=depth {
            let homs = hom(c, t.cell(n)?, t.cell(m)?, budget)?;
            let results = homs
                .par_iter()
                .enumerate()
                .map(|(k, sigma)| -> Result<Vec<ConvexityInstance>> {
                    let mut out = Vec::new();
                    let cone_s = cone(t, sigma, n, m, recipe)?;
                    let base_idx = base_face(n, orientation);
                    let base_ok = c.compose(&cone_s, t.face(n + 1, base_idx)?)? == *sigma;
                    out.push(ConvexityInstance { check: ConvexityCheck::Base, m, n, i: base_idx, sigma: k, passed: base_ok });
                    let mut sides_ok = true;
                    if n >= 1 {
                        for i in 0..=n {
                            let side = match orientation {
                                Orientation::Leading => i + 1,
                                Orientation::Trailing => i,
                            };
                            let lhs = c.compose(&cone_s, t.face(n + 1, side)?)?;
                            let rhs = cone(t, &c.compose(sigma, t.face(n, i)?)?, n - 1, m, recipe)?;
                            let ok = lhs == rhs;
                            sides_ok &= ok;
                            out.push(ConvexityInstance { check: ConvexityCheck::Naturality, m, n, i, sigma: k, passed: ok });
                        }
                    }
                    // every face of the cone at once
                    let mut table_ok = true;
                    for i in 0..=n + 1 {
                        let lhs = c.compose(&cone_s, t.face(n + 1, i)?)?;
                        if n == 0 && i != base_idx {
                            continue;
                        }
                        let rhs = if i == base_idx {
                            sigma.clone()
                        } else {
                            let below = match orientation {
                                Orientation::Leading => i - 1,
                                Orientation::Trailing => i,
                            };
                            cone(t, &c.compose(sigma, t.face(n, below)?)?, n - 1, m, recipe)?
                        };
                        let ok = lhs == rhs;
                        table_ok &= ok;
                        out.push(ConvexityInstance { check: ConvexityCheck::FaceTable, m, n, i, sigma: k, passed: ok });
                    }
                    if table_ok != (base_ok && sides_ok) {
                        out.push(ConvexityInstance { check: ConvexityCheck::FaceTable, m, n, i: usize::MAX, sigma: k, passed: false });
                    }
                    Ok(out)
                })
                .collect::<Result<Vec<_>>>()?;
            for r in results {
                if r.iter().any(|i| i.i == usize::MAX) {
                    consistent = false;
                }
                instances.extend(r.into_iter().filter(|i| i.i != usize::MAX));
            }
            // base squares on Hom(F_{n+1}, F_m)
            if n >= 1 && n < t.height() {
                let upper = hom(c, t.cell(n + 1)?, t.cell(m)?, budget)?;
                for (k, sigma) in upper.iter().enumerate() {
                    let based = base_map(cf, sigma, n, orientation)?;
                    for i in 0..=n {
                        let shifted = match orientation {
                            Orientation::Leading => i + 1,
                            Orientation::Trailing => i,
                        };
                        let restricted = c.compose(sigma, t.face(n + 1, shifted)?)?;
                        let lhs = base_map(cf, &restricted, n - 1, orientation)?;
                        let rhs = c.compose(&based, t.face(n, i)?)?;
                        instances.push(ConvexityInstance { check: ConvexityCheck::BaseSquare, m, n, i, sigma: k, passed: lhs == rhs });
                    }
                }
            }
        }
    }
    Ok(ConvexityReport { orientation, recipe, instances, consistent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cells::build_tower;
    use crate::kernel::constant;
    use crate::finset::{FinMap, FinSet, FinSetContext};
    use crate::sset::SSetContext;

    #[test]
    fn finset_all_maps_homotopic() {
        let c = FinSetContext;
        let w = c.witnesses();
        for (a, b) in [(1, 1), (2, 3), (3, 2)] {
            let (x, y) = (FinSet::range(a), FinSet::range(b));
            let (_, rel) = check_homotopy_relation(&c, &w, &x, &y, None, 1_000_000).unwrap();
            assert!(rel.related.iter().flatten().all(|&r| r));
        }
    }

    #[test]
    fn finset_contractible_iff_nonempty() {
        let c = FinSetContext;
        let w = c.witnesses();
        for n in 0..5 {
            let found = is_contractible(&c, &w, &FinSet::range(n), 1_000_000).unwrap();
            assert_eq!(found.is_some(), n > 0);
        }
    }

    #[test]
    fn sset_interval_contraction_recovered() {
        let c = SSetContext::new(3).unwrap();
        let w = c.witnesses();
        let id = c.identity(&w.interval);
        let k1 = constant(&c, &w.interval, &w.endpoint1).unwrap();
        let hw = are_homotopic(&c, &w, &id, &k1, 100_000).unwrap().unwrap();
        assert_eq!(&hw.h, w.contraction.as_ref().unwrap());
        assert!(hw.verify(&c, &w).unwrap());
    }

    #[test]
    fn sset_relation_on_interval_is_one_sided() {
        let c = SSetContext::new(3).unwrap();
        let w = c.witnesses();
        let (_, rel) = check_homotopy_relation(&c, &w, &w.interval, &w.interval, None, 1_000_000).unwrap();
        assert_eq!(rel.size, 3);
        assert!(rel.reflexive);
        assert!(!rel.symmetric);
    }

    #[test]
    fn swap_reverses_finset_homotopies() {
        let c = FinSetContext;
        let w = c.witnesses();
        let x = FinSet::range(2);
        let f = FinMap::new(x.clone(), x.clone(), vec![0, 0]).unwrap();
        let g = FinMap::new(x.clone(), x.clone(), vec![1, 0]).unwrap();
        let hw = are_homotopic(&c, &w, &f, &g, 10_000).unwrap().unwrap();
        let back = reverse_homotopy(&c, &w, &hw).unwrap().unwrap();
        assert_eq!(back.f, g);
        let prod = product_homotopy(&c, &w, &FinSet::range(3), &hw).unwrap();
        assert!(prod.verify(&c, &w).unwrap());
    }

    #[test]
    fn circle_is_not_contractible() {
        let c = SSetContext::new(2).unwrap();
        let w = c.witnesses();
        let circle = c.ordered_complex(3, &[vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2], vec![1, 2]]).unwrap();
        assert!(is_contractible(&c, &w, &circle, 10_000_000).unwrap().is_none());
    }

    #[test]
    fn finset_convexity_trailing_passes_leading_fails() {
        let c = FinSetContext;
        let cf = CosimplicialFunctor::new(build_tower(&c, &c.witnesses(), 3, 1_000_000).unwrap());
        let good = verify_convexity(&cf, 2, Orientation::Trailing, ConeRecipe::Top, 1_000_000).unwrap();
        assert!(good.all_passed());
        assert!(good.consistent);
        let leading = verify_convexity(&cf, 2, Orientation::Leading, ConeRecipe::Top, 1_000_000).unwrap();
        assert!(!leading.all_passed());
        let mutated = verify_convexity(&cf, 2, Orientation::Trailing, ConeRecipe::First, 1_000_000).unwrap();
        assert!(mutated.count(ConvexityCheck::FaceTable).0 < mutated.count(ConvexityCheck::FaceTable).1);
    }

    #[test]
    fn base_map_on_terminal_is_constant() {
        let c = FinSetContext;
        let cf = CosimplicialFunctor::new(build_tower(&c, &c.witnesses(), 2, 1_000_000).unwrap());
        let sigma = c.terminal_morphism(cf.cell(2).unwrap());
        let b = base_map(&cf, &sigma, 1, Orientation::Leading).unwrap();
        assert_eq!(b, c.terminal_morphism(cf.cell(1).unwrap()));
    }
}
