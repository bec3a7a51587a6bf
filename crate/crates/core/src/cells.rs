//! The cell tower `F_0, …, F_N` with its face maps, degeneracies and
//! centroids, the induced cosimplicial object, and the identity verifier.
//!
//! Indexing: `d_{n,i}: F_{n-1} → F_n` for `0 ≤ i ≤ n` and
//! `s_{n,i}: F_{n+1} → F_n` for `0 ≤ i ≤ n`.
//!
//! `F_1` is the witness interval and `F_{n+1} = W(F_n)` for `n ≥ 1`. At the
//! bottom the faces of `F_1` are `d_{1,0}` = endpoint 1 (the collapsed end)
//! and `d_{1,1}` = endpoint 0; above that `d_{n+1,i} = W(d_{n,i})` for
//! `i ≤ n` and `d_{n+1,n+1} = Bottom`, while `s_{n,j} = W(s_{n-1,j})` for
//! `j < n` and `s_{n,n}` flattens `W(F_n)` onto the centroid `a_n`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::delta::{DeltaMorphism, Generator};
use crate::error::{CellError, Result};
use crate::kernel::{AxiomWitnesses, Context, ProductData};
use crate::wedge::{
    cone_contraction, flatten_contractible, is_contraction, search_contraction, wedge_morphism,
    wedge_object, WedgeData,
};

#[derive(Clone, Debug)]
pub struct CellTower<C: Context> {
    pub ctx: C,
    pub witnesses: AxiomWitnesses<C>,
    top: usize,
    cells: Vec<C::Obj>,
    /// `wedges[k]` is `W(F_k)`; `wedges[0]` is only used through `unit_iso`.
    wedges: Vec<WedgeData<C>>,
    /// `W(F_0) → F_1`.
    unit_iso: C::Mor,
    unit_iso_inv: C::Mor,
    faces: Vec<Vec<C::Mor>>,
    degens: Vec<Vec<C::Mor>>,
    centroids: Vec<C::Mor>,
    contractions: Vec<(ProductData<C>, C::Mor)>,
}

/// Builds `F_0 … F_N`, checking every construction step.
pub fn build_tower<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, top: usize, budget: u64) -> Result<CellTower<C>> {
    if top < 1 {
        return Err(CellError::InvalidInput("tower height must be at least 1".into()));
    }
    let f0 = ctx.terminal();
    let f1 = w.interval.clone();
    let w0 = wedge_object(ctx, w, &f0)?;
    let unit_iso = ctx.factor_through_pushout(&w0.pushout, &w.endpoint1, &w0.cylinder.proj2)?;
    let back = ctx.pair(&ctx.terminal_morphism(&f1), &ctx.identity(&f1), &w0.cylinder)?;
    let unit_iso_inv = ctx.compose(&w0.pinch, &back)?;
    if ctx.compose(&unit_iso, &unit_iso_inv)? != ctx.identity(&f1)
        || ctx.compose(&unit_iso_inv, &unit_iso)? != ctx.identity(&w0.vertex)
    {
        return Err(CellError::Invariant("W(F_0) is not isomorphic to F_1".into()));
    }
    let point_contraction = match &w.contraction {
        Some(c) => {
            let sq = ctx.product(&f1, &f1)?;
            if is_contraction(ctx, w, &f1, &sq, c, &w.basepoint)? {
                Some((sq, c.clone()))
            } else {
                None
            }
        }
        None => None,
    };
    let first_contraction = match point_contraction {
        Some(pc) => pc,
        None => search_contraction(ctx, w, &f1, &w.basepoint, budget)?
            .ok_or_else(|| CellError::Invariant("F_1 is not contractible onto the basepoint".into()))?,
    };
    let mut t = CellTower {
        ctx: ctx.clone(),
        witnesses: w.clone(),
        top,
        cells: vec![f0.clone(), f1.clone()],
        wedges: vec![w0],
        unit_iso,
        unit_iso_inv,
        faces: vec![Vec::new(), vec![w.endpoint1.clone(), w.endpoint0.clone()]],
        degens: vec![vec![ctx.terminal_morphism(&f1)]],
        centroids: vec![ctx.identity(&f0), w.basepoint.clone()],
        contractions: vec![first_contraction.clone(), first_contraction],
    };
    for n in 1..top {
        let fn_ = t.cells[n].clone();
        let wd = wedge_object(ctx, w, &fn_)?;
        t.cells.push(wd.vertex.clone());
        t.wedges.push(wd.clone());
        let mut faces = Vec::with_capacity(n + 2);
        for j in 0..=n {
            faces.push(t.wedge_of(&t.faces[n][j], n - 1, n)?);
        }
        faces.push(wd.bottom.clone());
        t.faces.push(faces);
        let mut degens = Vec::with_capacity(n + 1);
        for j in 0..n {
            degens.push(t.wedge_of(&t.degens[n - 1][j], n, n - 1)?);
        }
        let (cyl, h) = &t.contractions[n];
        debug_assert_eq!(cyl.vertex, wd.cylinder.vertex);
        degens.push(flatten_contractible(ctx, w, &fn_, h, &t.centroids[n], &wd)?);
        t.degens.push(degens);
        let a = ctx.compose(&wd.pinch, &ctx.pair(&t.centroids[n], &w.basepoint, &wd.cylinder)?)?;
        let contraction = if a == wd.top {
            cone_contraction(ctx, w, &wd, budget)?
        } else {
            search_contraction(ctx, w, &wd.vertex, &a, budget)?.ok_or_else(|| {
                CellError::Invariant(format!("F_{} is not contractible onto its centroid", n + 1))
            })?
        };
        t.centroids.push(a);
        t.contractions.push(contraction);
    }
    t.check_shapes()?;
    Ok(t)
}

impl<C: Context> CellTower<C> {
    pub fn height(&self) -> usize {
        self.top
    }

    pub fn cell(&self, n: usize) -> Result<&C::Obj> {
        self.cells.get(n).ok_or_else(|| CellError::IndexOutOfRange(format!("cell F_{n}")))
    }

    pub fn cells(&self) -> &[C::Obj] {
        &self.cells
    }

    /// `d_{n,i}: F_{n-1} → F_n`.
    pub fn face(&self, n: usize, i: usize) -> Result<&C::Mor> {
        if n == 0 || n > self.top || i > n {
            return Err(CellError::IndexOutOfRange(format!("face d_{{{n},{i}}}")));
        }
        Ok(&self.faces[n][i])
    }

    /// `s_{n,i}: F_{n+1} → F_n`.
    pub fn degeneracy(&self, n: usize, i: usize) -> Result<&C::Mor> {
        if n >= self.top || i > n {
            return Err(CellError::IndexOutOfRange(format!("degeneracy s_{{{n},{i}}}")));
        }
        Ok(&self.degens[n][i])
    }

    /// `a_n: 1 → F_n`.
    pub fn centroid(&self, n: usize) -> Result<&C::Mor> {
        if n > self.top {
            return Err(CellError::IndexOutOfRange(format!("centroid a_{n}")));
        }
        Ok(&self.centroids[n])
    }

    /// Contraction of `F_n` onto `a_n`, with its cylinder.
    pub fn contraction(&self, n: usize) -> Result<&(ProductData<C>, C::Mor)> {
        if n == 0 || n > self.top {
            return Err(CellError::IndexOutOfRange(format!("contraction of F_{n}")));
        }
        Ok(&self.contractions[n])
    }

    /// `W(F_n)` for `1 ≤ n < N`, whose vertex is `F_{n+1}`.
    pub fn wedge(&self, n: usize) -> Result<&WedgeData<C>> {
        if n == 0 || n >= self.top {
            return Err(CellError::IndexOutOfRange(format!("wedge of F_{n}")));
        }
        Ok(&self.wedges[n])
    }

    pub fn unit_iso(&self) -> (&C::Mor, &C::Mor) {
        (&self.unit_iso, &self.unit_iso_inv)
    }

    /// `W(φ): F_{a+1} → F_{b+1}` for `φ: F_a → F_b`, reading `W(F_0)` as
    /// `F_1` through the unit isomorphism.
    pub fn wedge_of(&self, phi: &C::Mor, a: usize, b: usize) -> Result<C::Mor> {
        if a >= self.wedges.len() || b >= self.wedges.len() {
            return Err(CellError::IndexOutOfRange(format!("wedge of a map F_{a} → F_{b}")));
        }
        let raw = wedge_morphism(&self.ctx, phi, &self.wedges[a], &self.wedges[b])?;
        let raw = if a == 0 { self.ctx.compose(&raw, &self.unit_iso_inv)? } else { raw };
        if b == 0 {
            self.ctx.compose(&self.unit_iso, &raw)
        } else {
            Ok(raw)
        }
    }

    /// Replaces `d_{n,i}` and `d_{n,j}` by each other; used to check that
    /// the verifier notices broken towers.
    pub fn with_faces_swapped(&self, n: usize, i: usize, j: usize) -> Result<Self> {
        self.face(n, i)?;
        self.face(n, j)?;
        let mut t = self.clone();
        t.faces[n].swap(i, j);
        Ok(t)
    }

    fn check_shapes(&self) -> Result<()> {
        let c = &self.ctx;
        for n in 1..=self.top {
            for (i, d) in self.faces[n].iter().enumerate() {
                if c.dom(d) != self.cells[n - 1] || c.cod(d) != self.cells[n] {
                    return Err(CellError::Invariant(format!("face d_{{{n},{i}}} has the wrong endpoints")));
                }
            }
            if c.dom(&self.centroids[n]) != c.terminal() || c.cod(&self.centroids[n]) != self.cells[n] {
                return Err(CellError::Invariant(format!("centroid a_{n} has the wrong endpoints")));
            }
        }
        for n in 0..self.top {
            for (i, s) in self.degens[n].iter().enumerate() {
                if c.dom(s) != self.cells[n + 1] || c.cod(s) != self.cells[n] {
                    return Err(CellError::Invariant(format!("degeneracy s_{{{n},{i}}} has the wrong endpoints")));
                }
            }
        }
        Ok(())
    }

    pub fn generator(&self, g: Generator) -> Result<&C::Mor> {
        match g {
            Generator::Face { n, i } => self.face(n, i),
            Generator::Degen { n, i } => self.degeneracy(n, i),
        }
    }

    /// Composes a generator word (in application order) starting at `F_start`.
    pub fn apply_word(&self, start: usize, word: &[Generator]) -> Result<C::Mor> {
        let mut acc = self.ctx.identity(self.cell(start)?);
        for &g in word {
            acc = self.ctx.compose(self.generator(g)?, &acc)?;
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> Value {
        let c = &self.ctx;
        let mut faces = serde_json::Map::new();
        for n in 1..=self.top {
            for (i, d) in self.faces[n].iter().enumerate() {
                faces.insert(format!("{n},{i}"), c.mor_to_json(d));
            }
        }
        let mut degens = serde_json::Map::new();
        for n in 0..self.top {
            for (i, s) in self.degens[n].iter().enumerate() {
                degens.insert(format!("{n},{i}"), c.mor_to_json(s));
            }
        }
        json!({
            "backend": c.tag(),
            "height": self.top,
            "cells": self.cells.iter().map(|x| c.obj_to_json(x)).collect::<Vec<_>>(),
            "sizes": self.cells.iter().map(|x| c.size_profile(x)).collect::<Vec<_>>(),
            "faces": faces,
            "degeneracies": degens,
            "centroids": self.centroids[1..].iter().map(|a| c.mor_to_json(a)).collect::<Vec<_>>(),
        })
    }
}

/// The functor `Δ≤N → 𝒞` generated by the tower, with a cache of images.
pub struct CosimplicialFunctor<C: Context> {
    pub tower: CellTower<C>,
    cache: Mutex<HashMap<DeltaMorphism, C::Mor>>,
}

impl<C: Context> fmt::Debug for CosimplicialFunctor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CosimplicialFunctor").field("height", &self.tower.top).finish()
    }
}

impl<C: Context> CosimplicialFunctor<C> {
    pub fn new(tower: CellTower<C>) -> Self {
        CosimplicialFunctor { tower, cache: Mutex::new(HashMap::new()) }
    }

    pub fn ctx(&self) -> &C {
        &self.tower.ctx
    }

    pub fn height(&self) -> usize {
        self.tower.top
    }

    pub fn cell(&self, n: usize) -> Result<&C::Obj> {
        self.tower.cell(n)
    }

    /// The image of `φ: [m] → [n]`, through its canonical factorization.
    pub fn apply(&self, phi: &DeltaMorphism) -> Result<C::Mor> {
        if phi.source() > self.tower.top || phi.target() > self.tower.top {
            return Err(CellError::IndexOutOfRange(format!(
                "Δ-morphism {phi:?} exceeds the tower height {}",
                self.tower.top
            )));
        }
        if let Some(m) = self.cache.lock().unwrap().get(phi) {
            return Ok(m.clone());
        }
        let word = phi.factorize();
        // degeneracies may pass through levels above both endpoints
        let highest = word.iter().map(|g| g.source().max(g.target())).max().unwrap_or(0);
        if highest > self.tower.top {
            return Err(CellError::IndexOutOfRange(format!("{phi:?} needs level {highest}")));
        }
        let m = self.tower.apply_word(phi.source(), &word)?;
        self.cache.lock().unwrap().insert(phi.clone(), m.clone());
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum IdentityFamily {
    /// `d_{n+1,i} d_{n,j} = d_{n+1,j+1} d_{n,i}`, `i ≤ j`.
    FaceFace,
    /// `s_{n-1,j} d_{n,i} = d_{n-1,i} s_{n-2,j-1}`, `i < j`.
    DegenFaceBelow,
    /// `s_{n-1,j} d_{n,j} = id`.
    DegenFaceSame,
    /// `s_{n-1,j} d_{n,j+1} = id`.
    DegenFaceNext,
    /// `s_{n-1,j} d_{n,i} = d_{n-1,i-1} s_{n-2,j}`, `i > j + 1`.
    DegenFaceAbove,
    /// `s_{n-1,j} s_{n,i} = s_{n-1,i} s_{n,j+1}`, `i ≤ j`.
    DegenDegen,
    /// `W(Bottom_{F_{n-1}}) Bottom_{F_{n-1}} = Bottom_{F_n} Bottom_{F_{n-1}}`.
    WedgeBottomSquare,
    /// `W(d_{n,i}) Bottom_{F_{n-1}} = Bottom_{F_n} W(d_{n-1,i})`, `i < n`.
    WedgeFaceBottom,
    /// `Flatten_{n-1} W(Bottom_{F_{n-2}}) = Bottom_{F_{n-2}} Flatten_{n-2}`.
    FlattenWedgeBottom,
    /// `Flatten_{n-1} d_{n,i} = d_{n-1,i} Flatten_{n-2}`, `i < n - 1`.
    FlattenFace,
    /// `s_{n-1,j} Bottom_{F_{n-1}} = Bottom_{F_{n-2}} s_{n-2,j}`, `j < n - 2`.
    DegenBottom,
    /// `s_{n,n} d_{n+1,n+1} = id`.
    FlattenRetractsBottom,
}

impl IdentityFamily {
    pub const SIMPLICIAL: [IdentityFamily; 6] = [
        IdentityFamily::FaceFace,
        IdentityFamily::DegenFaceBelow,
        IdentityFamily::DegenFaceSame,
        IdentityFamily::DegenFaceNext,
        IdentityFamily::DegenFaceAbove,
        IdentityFamily::DegenDegen,
    ];

    pub const AUXILIARY: [IdentityFamily; 6] = [
        IdentityFamily::WedgeBottomSquare,
        IdentityFamily::WedgeFaceBottom,
        IdentityFamily::FlattenWedgeBottom,
        IdentityFamily::FlattenFace,
        IdentityFamily::DegenBottom,
        IdentityFamily::FlattenRetractsBottom,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityFamily::FaceFace => "dd",
            IdentityFamily::DegenFaceBelow => "sd-below",
            IdentityFamily::DegenFaceSame => "sd-same",
            IdentityFamily::DegenFaceNext => "sd-next",
            IdentityFamily::DegenFaceAbove => "sd-above",
            IdentityFamily::DegenDegen => "ss",
            IdentityFamily::WedgeBottomSquare => "wedge-bottom-square",
            IdentityFamily::WedgeFaceBottom => "wedge-face-bottom",
            IdentityFamily::FlattenWedgeBottom => "flatten-wedge-bottom",
            IdentityFamily::FlattenFace => "flatten-face",
            IdentityFamily::DegenBottom => "degeneracy-bottom",
            IdentityFamily::FlattenRetractsBottom => "flatten-retracts-bottom",
        }
    }
}

impl fmt::Display for IdentityFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct IdentityInstance<C: Context> {
    pub family: IdentityFamily,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub passed: bool,
    /// Both sides, kept only on failure.
    pub sides: Option<(C::Mor, C::Mor)>,
}

#[derive(Clone, Debug)]
pub struct IdentityReport<C: Context> {
    pub instances: Vec<IdentityInstance<C>>,
}

impl<C: Context> IdentityReport<C> {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityInstance<C>> {
        self.instances.iter().filter(|i| !i.passed)
    }

    pub fn all_passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    pub fn family_counts(&self, family: IdentityFamily) -> (usize, usize) {
        let of: Vec<_> = self.instances.iter().filter(|i| i.family == family).collect();
        (of.iter().filter(|i| i.passed).count(), of.len())
    }

    pub fn to_json(&self, ctx: &C) -> Value {
        let instances: Vec<Value> = self
            .instances
            .iter()
            .map(|inst| {
                let mut v = json!({
                    "family": inst.family.name(),
                    "n": inst.n,
                    "i": inst.i,
                    "j": inst.j,
                    "verdict": if inst.passed { "pass" } else { "fail" },
                });
                if let Some((l, r)) = &inst.sides {
                    v["lhs"] = ctx.mor_to_json(l);
                    v["rhs"] = ctx.mor_to_json(r);
                }
                v
            })
            .collect();
        json!({
            "passed": self.instances.iter().filter(|i| i.passed).count(),
            "failed": self.instances.iter().filter(|i| !i.passed).count(),
            "instances": instances,
        })
    }
}

fn identity_cases(top: usize) -> Vec<(IdentityFamily, usize, usize, usize)> {
    use IdentityFamily::*;
    let mut cases = Vec::new();
    for n in 1..top {
        for j in 0..=n {
            for i in 0..=j {
                cases.push((FaceFace, n, i, j));
            }
        }
    }
    for n in 1..=top {
        for j in 0..n {
            for i in 0..j {
                if n >= 2 {
                    cases.push((DegenFaceBelow, n, i, j));
                }
            }
            cases.push((DegenFaceSame, n, j, j));
            cases.push((DegenFaceNext, n, j + 1, j));
            for i in j + 2..=n {
                cases.push((DegenFaceAbove, n, i, j));
            }
        }
    }
    for n in 1..top {
        for j in 0..n {
            for i in 0..=j {
                cases.push((DegenDegen, n, i, j));
            }
        }
    }
    for n in 1..top {
        cases.push((WedgeBottomSquare, n, n, n));
    }
    for n in 2..top {
        for i in 0..n {
            cases.push((WedgeFaceBottom, n, i, n));
        }
    }
    for n in 2..=top {
        cases.push((FlattenWedgeBottom, n, n - 1, n - 1));
        for i in 0..n - 1 {
            cases.push((FlattenFace, n, i, n - 1));
        }
        for j in 0..n.saturating_sub(2) {
            cases.push((DegenBottom, n, n, j));
        }
    }
    for n in 0..top {
        cases.push((FlattenRetractsBottom, n, n + 1, n));
    }
    cases
}

fn sides<C: Context>(t: &CellTower<C>, family: IdentityFamily, n: usize, i: usize, j: usize) -> Result<(C::Mor, C::Mor)> {
    use IdentityFamily::*;
    let c = &t.ctx;
    let d = |n, i| t.face(n, i);
    let s = |n, i| t.degeneracy(n, i);
    Ok(match family {
        FaceFace => (c.compose(d(n + 1, i)?, d(n, j)?)?, c.compose(d(n + 1, j + 1)?, d(n, i)?)?),
        DegenFaceBelow => (c.compose(s(n - 1, j)?, d(n, i)?)?, c.compose(d(n - 1, i)?, s(n - 2, j - 1)?)?),
        DegenFaceSame | DegenFaceNext => (c.compose(s(n - 1, j)?, d(n, i)?)?, c.identity(t.cell(n - 1)?)),
        DegenFaceAbove => (c.compose(s(n - 1, j)?, d(n, i)?)?, c.compose(d(n - 1, i - 1)?, s(n - 2, j)?)?),
        DegenDegen => (c.compose(s(n - 1, j)?, s(n, i)?)?, c.compose(s(n - 1, i)?, s(n, j + 1)?)?),
        WedgeBottomSquare => {
            let bottom = d(n, n)?;
            (c.compose(&t.wedge_of(bottom, n - 1, n)?, bottom)?, c.compose(d(n + 1, n + 1)?, bottom)?)
        }
        WedgeFaceBottom => (
            c.compose(&t.wedge_of(d(n, i)?, n - 1, n)?, d(n, n)?)?,
            c.compose(d(n + 1, n + 1)?, &t.wedge_of(d(n - 1, i)?, n - 2, n - 1)?)?,
        ),
        FlattenWedgeBottom => (
            c.compose(s(n - 1, n - 1)?, &t.wedge_of(d(n - 1, n - 1)?, n - 2, n - 1)?)?,
            c.compose(d(n - 1, n - 1)?, s(n - 2, n - 2)?)?,
        ),
        FlattenFace => (c.compose(s(n - 1, n - 1)?, d(n, i)?)?, c.compose(d(n - 1, i)?, s(n - 2, n - 2)?)?),
        DegenBottom => (c.compose(s(n - 1, j)?, d(n, n)?)?, c.compose(d(n - 1, n - 1)?, s(n - 2, j)?)?),
        FlattenRetractsBottom => (c.compose(s(n, n)?, d(n + 1, n + 1)?)?, c.identity(t.cell(n)?)),
    })
}

/// Checks every instance of the six simplicial identity families and of the
/// auxiliary wedge identities up to the tower height.
pub fn verify_simplicial_identities<C: Context>(t: &CellTower<C>) -> Result<IdentityReport<C>> {
    let cases = identity_cases(t.top);
    let instances = cases
        .par_iter()
        .map(|&(family, n, i, j)| {
            let (lhs, rhs) = sides(t, family, n, i, j)?;
            let passed = lhs == rhs;
            Ok(IdentityInstance { family, n, i, j, passed, sides: if passed { None } else { Some((lhs, rhs)) } })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(IdentityReport { instances })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finset::FinSetContext;
    use crate::sset::SSetContext;

    fn finset_tower(n: usize) -> CellTower<FinSetContext> {
        let c = FinSetContext;
        build_tower(&c, &c.witnesses(), n, 1_000_000).unwrap()
    }

    #[test]
    fn sizes_grow_by_one() {
        let t = finset_tower(5);
        for n in 0..=5 {
            assert_eq!(t.cell(n).unwrap().len(), n + 1);
        }
    }

    #[test]
    fn zero_height_rejected() {
        let c = FinSetContext;
        assert!(build_tower(&c, &c.witnesses(), 0, 1000).is_err());
    }

    #[test]
    fn top_face_is_bottom() {
        let t = finset_tower(3);
        assert_eq!(t.face(2, 2).unwrap(), &t.wedge(1).unwrap().bottom);
    }

    #[test]
    fn top_degeneracy_retracts() {
        let t = finset_tower(3);
        let c = &t.ctx;
        assert_eq!(c.compose(t.degeneracy(1, 1).unwrap(), t.face(2, 2).unwrap()).unwrap(), c.identity(t.cell(1).unwrap()));
    }

    #[test]
    fn centroid_two_is_apex() {
        let t = finset_tower(3);
        assert_eq!(t.centroid(2).unwrap(), &t.wedge(1).unwrap().top);
    }

    #[test]
    fn out_of_range_indices() {
        let t = finset_tower(2);
        assert!(t.face(3, 0).is_err());
        assert!(t.face(2, 3).is_err());
        assert!(t.degeneracy(2, 0).is_err());
        assert!(t.centroid(3).is_err());
    }

    #[test]
    fn finset_identities_hold_except_the_false_auxiliary_one() {
        let t = finset_tower(5);
        let report = verify_simplicial_identities(&t).unwrap();
        for inst in &report.instances {
            let expect = inst.family != IdentityFamily::FlattenWedgeBottom;
            assert_eq!(inst.passed, expect, "{} n={} i={} j={}", inst.family, inst.n, inst.i, inst.j);
        }
    }

    #[test]
    fn sset_identities_small() {
        let c = SSetContext::new(3).unwrap();
        let t = build_tower(&c, &c.witnesses(), 3, 5_000_000).unwrap();
        let report = verify_simplicial_identities(&t).unwrap();
        for family in IdentityFamily::SIMPLICIAL {
            let (ok, total) = report.family_counts(family);
            assert_eq!(ok, total, "{family}");
        }
    }

    #[test]
    fn swapped_faces_are_caught() {
        let t = finset_tower(4).with_faces_swapped(3, 0, 2).unwrap();
        let report = verify_simplicial_identities(&t).unwrap();
        let failed: Vec<_> = report
            .failures()
            .filter(|f| f.family != IdentityFamily::FlattenWedgeBottom)
            .collect();
        assert!(!failed.is_empty());
        assert!(failed.iter().any(|f| f.family == IdentityFamily::FaceFace));
    }

    #[test]
    fn functor_identity_and_base_case() {
        let cf = CosimplicialFunctor::new(finset_tower(3));
        let id = cf.apply(&DeltaMorphism::identity(2)).unwrap();
        assert_eq!(id, cf.ctx().identity(cf.cell(2).unwrap()));
        let lhs = cf.apply(&DeltaMorphism::face(2, 0).after(&DeltaMorphism::face(1, 1)).unwrap()).unwrap();
        let rhs = cf.tower.ctx.compose(cf.tower.face(2, 2).unwrap(), cf.tower.face(1, 0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert!(cf.apply(&DeltaMorphism::identity(4)).is_err());
    }
}
