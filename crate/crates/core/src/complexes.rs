//! Spheres, handle attachment, cell-complex diagrams, abstract simplicial
//! complexes and realization of simplicial sets against the cell tower.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::cells::{CellTower, CosimplicialFunctor};
use crate::delta::DeltaMorphism;
use crate::error::{CellError, Result};
use crate::kernel::{CoproductData, Context, PushoutData, Span};
use crate::sset::SSet;

// ---------------------------------------------------------------------------
// Colimits of finite diagrams

/// An arrow `source → target` of a diagram, labelled by its morphism.
#[derive(Clone, Debug)]
pub struct DiagramArrow<C: Context> {
    pub source: usize,
    pub target: usize,
    pub map: C::Mor,
}

/// A colimit built as a coproduct of the nodes followed by one coequalizer,
/// itself computed as a pushout.
#[derive(Clone, Debug)]
pub struct ColimitData<C: Context> {
    pub vertex: C::Obj,
    /// One leg per node.
    pub legs: Vec<C::Mor>,
    nodes: Option<CoproductData<C>>,
    glue: Option<(CoproductData<C>, PushoutData<C>)>,
    arrows: Vec<DiagramArrow<C>>,
}

pub fn diagram_colimit<C: Context>(ctx: &C, objects: &[C::Obj], arrows: &[DiagramArrow<C>]) -> Result<ColimitData<C>> {
    for a in arrows {
        if a.source >= objects.len() || a.target >= objects.len() {
            return Err(CellError::IndexOutOfRange("diagram arrow names a missing node".into()));
        }
        if ctx.dom(&a.map) != objects[a.source] || ctx.cod(&a.map) != objects[a.target] {
            return Err(CellError::mismatch("diagram arrow endpoints"));
        }
    }
    if objects.is_empty() {
        return Ok(ColimitData { vertex: ctx.initial(), legs: Vec::new(), nodes: None, glue: None, arrows: Vec::new() });
    }
    let nodes = ctx.coproduct(objects)?;
    if arrows.is_empty() {
        return Ok(ColimitData {
            vertex: nodes.vertex.clone(),
            legs: nodes.injections.clone(),
            nodes: Some(nodes),
            glue: None,
            arrows: Vec::new(),
        });
    }
    let sources: Vec<C::Obj> = arrows.iter().map(|a| objects[a.source].clone()).collect();
    let a_sum = ctx.coproduct(&sources)?;
    let forward = arrows
        .iter()
        .map(|a| ctx.compose(&nodes.injections[a.target], &a.map))
        .collect::<Result<Vec<_>>>()?;
    let stay: Vec<C::Mor> = arrows.iter().map(|a| nodes.injections[a.source].clone()).collect();
    let u = ctx.copair(&a_sum, &forward)?;
    let v = ctx.copair(&a_sum, &stay)?;
    let doubled = ctx.coproduct(&[a_sum.vertex.clone(), a_sum.vertex.clone()])?;
    let left = ctx.copair(&doubled, &[u, v])?;
    let id = ctx.identity(&a_sum.vertex);
    let right = ctx.copair(&doubled, &[id.clone(), id])?;
    let po = ctx.pushout(&Span { apex: doubled.vertex.clone(), left, right })?;
    let legs = nodes
        .injections
        .iter()
        .map(|i| ctx.compose(&po.inj_left, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(ColimitData {
        vertex: po.vertex.clone(),
        legs,
        nodes: Some(nodes),
        glue: Some((doubled, po)),
        arrows: arrows.to_vec(),
    })
}

impl<C: Context> ColimitData<C> {
    /// The unique map out of the colimit restricting to `cocone` on the
    /// legs; the cocone is checked against every arrow first.
    pub fn factor(&self, ctx: &C, cocone: &[C::Mor], target: &C::Obj) -> Result<C::Mor> {
        if cocone.len() != self.legs.len() {
            return Err(CellError::mismatch("cocone has the wrong number of legs"));
        }
        for a in &self.arrows {
            if ctx.compose(&cocone[a.target], &a.map)? != cocone[a.source] {
                return Err(CellError::NonCommutingCocone(format!("arrow {} → {}", a.source, a.target)));
            }
        }
        let Some(nodes) = &self.nodes else {
            return Ok(ctx.initial_morphism(target));
        };
        let out = ctx.copair(nodes, cocone)?;
        match &self.glue {
            None => Ok(out),
            Some((doubled, po)) => {
                let first = ctx.compose(&po.span.left, &doubled.injections[0])?;
                let right = ctx.compose(&out, &first)?;
                ctx.factor_through_pushout(po, &out, &right)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Spheres and handles

/// `(α, β)` with `d_{n,i} ∘ d_{n-1,α} = d_{n,j} ∘ d_{n-1,β}` for `i < j`.
pub fn sphere_indices(n: usize, i: usize, j: usize) -> Result<(usize, usize)> {
    if !(i < j && j <= n) || n < 2 {
        return Err(CellError::IndexOutOfRange(format!("sphere indices need 0 ≤ i < j ≤ n, n ≥ 2; got ({n},{i},{j})")));
    }
    Ok((j - 1, i))
}

/// Checks the defining equation of [`sphere_indices`] in a tower.
pub fn check_sphere_indices<C: Context>(t: &CellTower<C>, n: usize, i: usize, j: usize) -> Result<bool> {
    let (a, b) = sphere_indices(n, i, j)?;
    let lhs = t.ctx.compose(t.face(n, i)?, t.face(n - 1, a)?)?;
    let rhs = t.ctx.compose(t.face(n, j)?, t.face(n - 1, b)?)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug)]
pub struct SphereData<C: Context> {
    pub n: usize,
    pub vertex: C::Obj,
    pub inclusion: C::Mor,
    pub is_monic: bool,
    pub colimit: ColimitData<C>,
}

/// The boundary sphere of `F_n`: one `F_{n-1}` per face, glued along shared
/// `F_{n-2}` faces. For `n = 0` it is the initial object.
pub fn sphere<C: Context>(t: &CellTower<C>, n: usize) -> Result<SphereData<C>> {
    let ctx = &t.ctx;
    let fn_obj = t.cell(n)?.clone();
    if n == 0 {
        let colimit = diagram_colimit(ctx, &[], &[])?;
        let inclusion = ctx.initial_morphism(&fn_obj);
        let is_monic = ctx.is_monic(&inclusion);
        return Ok(SphereData { n, vertex: colimit.vertex.clone(), inclusion, is_monic, colimit });
    }
    let mut objects = vec![t.cell(n - 1)?.clone(); n + 1];
    let mut arrows = Vec::new();
    let mut cocone: Vec<C::Mor> = (0..=n).map(|i| t.face(n, i).cloned()).collect::<Result<_>>()?;
    if n >= 2 {
        for j in 0..=n {
            for i in 0..j {
                let (a, b) = sphere_indices(n, i, j)?;
                let shared = objects.len();
                objects.push(t.cell(n - 2)?.clone());
                arrows.push(DiagramArrow { source: shared, target: i, map: t.face(n - 1, a)?.clone() });
                arrows.push(DiagramArrow { source: shared, target: j, map: t.face(n - 1, b)?.clone() });
                cocone.push(ctx.compose(t.face(n, i)?, t.face(n - 1, a)?)?);
            }
        }
    }
    let colimit = diagram_colimit(ctx, &objects, &arrows)?;
    let inclusion = colimit.factor(ctx, &cocone, &fn_obj)?;
    for (leg, want) in colimit.legs.iter().zip(&cocone) {
        if ctx.compose(&inclusion, leg)? != *want {
            return Err(CellError::Invariant(format!("sphere {n}: inclusion does not restrict to the faces")));
        }
    }
    let is_monic = ctx.is_monic(&inclusion);
    Ok(SphereData { n, vertex: colimit.vertex.clone(), inclusion, is_monic, colimit })
}

#[derive(Clone, Debug)]
pub struct HandleAttachment<C: Context> {
    pub vertex: C::Obj,
    pub from_base: C::Mor,
    /// `F_k → result`, one per handle.
    pub handles: Vec<C::Mor>,
}

/// `X ⊔_{α_1} F_{k_1} … ⊔_{α_m} F_{k_m}`, each `α: 𝕊^{k-1} → X`.
pub fn attach_handles<C: Context>(t: &CellTower<C>, x: &C::Obj, specs: &[(usize, C::Mor)]) -> Result<HandleAttachment<C>> {
    let ctx = &t.ctx;
    let mut objects = vec![x.clone()];
    let mut arrows = Vec::new();
    let mut cell_nodes = Vec::new();
    for (k, alpha) in specs {
        let s = sphere(t, *k)?;
        if ctx.dom(alpha) != s.vertex || ctx.cod(alpha) != *x {
            return Err(CellError::mismatch(format!("attaching map for a {k}-handle")));
        }
        let s_node = objects.len();
        objects.push(s.vertex.clone());
        objects.push(t.cell(*k)?.clone());
        arrows.push(DiagramArrow { source: s_node, target: 0, map: alpha.clone() });
        arrows.push(DiagramArrow { source: s_node, target: s_node + 1, map: s.inclusion.clone() });
        cell_nodes.push(s_node + 1);
    }
    let colimit = diagram_colimit(ctx, &objects, &arrows)?;
    Ok(HandleAttachment {
        vertex: colimit.vertex.clone(),
        from_base: colimit.legs[0].clone(),
        handles: cell_nodes.iter().map(|&c| colimit.legs[c].clone()).collect(),
    })
}

// ---------------------------------------------------------------------------
// Abstract simplicial complexes

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Asc {
    vertices: Vec<String>,
    faces: BTreeSet<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct AscJson {
    vertices: Vec<String>,
    faces: Vec<Vec<String>>,
}

impl Asc {
    /// Faces given as sorted or unsorted vertex-index lists; closure under
    /// nonempty subsets is checked, not added.
    pub fn new(vertices: Vec<String>, faces: &[Vec<usize>]) -> Result<Self> {
        let a = Asc { faces: normalize_faces(&vertices, faces)?, vertices };
        a.validate()?;
        Ok(a)
    }

    /// The smallest complex containing `generators`.
    pub fn closure(vertices: Vec<String>, generators: &[Vec<usize>]) -> Result<Self> {
        let gens = normalize_faces(&vertices, generators)?;
        let mut faces = BTreeSet::new();
        for g in gens {
            for mask in 1u64..(1 << g.len()) {
                faces.insert(g.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &v)| v).collect());
            }
        }
        Ok(Asc { vertices, faces })
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = BTreeSet::new();
        for v in &self.vertices {
            if !seen.insert(v) {
                return Err(CellError::InvalidInput(format!("duplicate vertex {v}")));
            }
        }
        for f in &self.faces {
            if f.len() < 2 {
                continue;
            }
            for k in 0..f.len() {
                let mut sub = f.clone();
                sub.remove(k);
                if !self.faces.contains(&sub) {
                    return Err(CellError::InvalidInput(format!(
                        "face {} is missing its subface {}",
                        self.face_label(f),
                        self.face_label(&sub)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn faces(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.faces.iter()
    }

    pub fn dimension(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.len() - 1).max()
    }

    /// Faces with `d + 1` vertices, in lexicographic order.
    pub fn faces_of_dim(&self, d: usize) -> Vec<Vec<usize>> {
        self.faces.iter().filter(|f| f.len() == d + 1).cloned().collect()
    }

    fn face_label(&self, f: &[usize]) -> String {
        let names: Vec<&str> = f.iter().map(|&v| self.vertices[v].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }

    pub fn to_json(&self) -> Value {
        let faces = self.faces.iter().map(|f| f.iter().map(|&v| self.vertices[v].clone()).collect()).collect();
        serde_json::to_value(AscJson { vertices: self.vertices.clone(), faces }).expect("plain data")
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let raw: AscJson = serde_json::from_value(v.clone()).map_err(|e| CellError::InvalidInput(format!("ASC: {e}")))?;
        let index: HashMap<&str, usize> = raw.vertices.iter().enumerate().map(|(k, s)| (s.as_str(), k)).collect();
        let faces = raw
            .faces
            .iter()
            .map(|f| {
                f.iter()
                    .map(|s| index.get(s.as_str()).copied().ok_or_else(|| CellError::InvalidInput(format!("ASC face names unknown vertex {s}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Asc::new(raw.vertices, &faces)
    }
}

fn normalize_faces(vertices: &[String], faces: &[Vec<usize>]) -> Result<BTreeSet<Vec<usize>>> {
    let mut out = BTreeSet::new();
    for f in faces {
        let mut f = f.clone();
        f.sort_unstable();
        if f.is_empty() || f.windows(2).any(|w| w[0] == w[1]) || f.iter().any(|&v| v >= vertices.len()) {
            return Err(CellError::InvalidInput(format!("bad face {f:?}")));
        }
        out.insert(f);
    }
    Ok(out)
}

/// The simplicial set of weakly increasing vertex sequences spanning faces,
/// truncated at `dim`.
pub fn asc_to_sset(a: &Asc, dim: usize) -> Result<SSet> {
    a.validate()?;
    let faces: Vec<Vec<usize>> = a.faces.iter().cloned().collect();
    SSet::ordered_complex(dim, a.vertices.len(), &faces)
}

// ---------------------------------------------------------------------------
// Cell-complex diagrams

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GscArrow {
    pub from: usize,
    pub to: usize,
    pub j: usize,
}

/// Nodes partitioned into levels `0..=L`; an arrow from a level-`l` node to
/// a level-`l+1` node with index `j` is the face `d_{l+1,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GscDiagram {
    pub levels: Vec<Vec<usize>>,
    pub arrows: Vec<GscArrow>,
}

impl GscDiagram {
    pub fn level_of(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for (l, ids) in self.levels.iter().enumerate() {
            for &id in ids {
                m.insert(id, l);
            }
        }
        m
    }

    pub fn validate(&self) -> Result<()> {
        let mut level = BTreeMap::new();
        for (l, ids) in self.levels.iter().enumerate() {
            for &id in ids {
                if level.insert(id, l).is_some() {
                    return Err(CellError::InvalidInput(format!("node {id} appears twice")));
                }
            }
        }
        let mut used = BTreeSet::new();
        for a in &self.arrows {
            let (Some(&lf), Some(&lt)) = (level.get(&a.from), level.get(&a.to)) else {
                return Err(CellError::InvalidInput(format!("arrow {}→{} names an unknown node", a.from, a.to)));
            };
            if lt != lf + 1 {
                return Err(CellError::InvalidInput(format!("arrow {}→{} skips levels", a.from, a.to)));
            }
            if a.j > lt {
                return Err(CellError::IndexOutOfRange(format!("face index {} on a level-{lt} node", a.j)));
            }
            if !used.insert((a.to, a.j)) {
                return Err(CellError::InvalidInput(format!("node {} has two faces with index {}", a.to, a.j)));
            }
        }
        Ok(())
    }

    pub fn height(&self) -> usize {
        self.levels.len().saturating_sub(1)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let g: GscDiagram = serde_json::from_value(v.clone()).map_err(|e| CellError::InvalidInput(format!("diagram: {e}")))?;
        g.validate()?;
        Ok(g)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

/// Interprets a level-`l` node as `F_l` and each arrow as a face map.
pub fn gsc_colimit<C: Context>(t: &CellTower<C>, g: &GscDiagram) -> Result<ColimitData<C>> {
    g.validate()?;
    if g.height() > t.height() {
        return Err(CellError::IndexOutOfRange(format!("diagram height {} exceeds the tower", g.height())));
    }
    let order: Vec<usize> = g.levels.iter().flatten().copied().collect();
    let pos: HashMap<usize, usize> = order.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let level = g.level_of();
    let objects = order.iter().map(|id| t.cell(level[id]).cloned()).collect::<Result<Vec<_>>>()?;
    let arrows = g
        .arrows
        .iter()
        .map(|a| {
            Ok(DiagramArrow { source: pos[&a.from], target: pos[&a.to], map: t.face(level[&a.to], a.j)?.clone() })
        })
        .collect::<Result<Vec<_>>>()?;
    diagram_colimit(&t.ctx, &objects, &arrows)
}

/// Traces every node down to its level-0 vertices.
pub fn gsc_to_asc(g: &GscDiagram) -> Result<Asc> {
    g.validate()?;
    let base = g.levels.first().cloned().unwrap_or_default();
    let vindex: HashMap<usize, usize> = base.iter().enumerate().map(|(k, &id)| (id, k)).collect();
    let mut spans: HashMap<usize, BTreeSet<usize>> = base.iter().map(|&id| (id, BTreeSet::from([vindex[&id]]))).collect();
    let mut faces = Vec::new();
    for (l, ids) in g.levels.iter().enumerate().skip(1) {
        for &id in ids {
            let mut span = BTreeSet::new();
            for a in g.arrows.iter().filter(|a| a.to == id) {
                span.extend(spans[&a.from].iter().copied());
            }
            if span.len() != l + 1 {
                return Err(CellError::InvalidInput(format!(
                    "node {id} at level {l} traces to {} vertices, not {}",
                    span.len(),
                    l + 1
                )));
            }
            faces.push(span.iter().copied().collect::<Vec<_>>());
            spans.insert(id, span);
        }
    }
    faces.extend(base.iter().map(|id| vec![vindex[id]]));
    let names = base.iter().map(|id| format!("v{id}")).collect();
    Asc::new(names, &faces)
}

// ---------------------------------------------------------------------------
// Realization

#[derive(Clone, Debug)]
pub struct Realization<C: Context> {
    pub vertex: C::Obj,
    /// `(n, x)` for every node, in leg order.
    pub nodes: Vec<(usize, usize)>,
    pub colimit: ColimitData<C>,
}

/// `⨿_n X_n × F_n` glued along the face and degeneracy generators, over the
/// levels the tower reaches.
pub fn realize<C: Context>(cf: &CosimplicialFunctor<C>, x: &SSet) -> Result<Realization<C>> {
    let top = x.dim().min(cf.height());
    for n in top + 1..=x.dim() {
        if !x.nondegenerate(n).is_empty() {
            return Err(CellError::IndexOutOfRange(format!(
                "nondegenerate {n}-simplices lie above the tower height {}",
                cf.height()
            )));
        }
    }
    let mut nodes = Vec::new();
    let mut node_of: Vec<Vec<usize>> = Vec::new();
    for n in 0..=top {
        node_of.push((0..x.size(n)).map(|s| nodes.len() + s).collect());
        nodes.extend((0..x.size(n)).map(|s| (n, s)));
    }
    let objects = nodes.iter().map(|&(n, _)| cf.cell(n).cloned()).collect::<Result<Vec<_>>>()?;
    let mut arrows = Vec::new();
    for n in 1..=top {
        for i in 0..=n {
            let d = cf.apply(&DeltaMorphism::face(n, i))?;
            for s in 0..x.size(n) {
                arrows.push(DiagramArrow { source: node_of[n - 1][x.face(n, i, s)], target: node_of[n][s], map: d.clone() });
            }
        }
    }
    for n in 0..top {
        for i in 0..=n {
            let s_map = cf.apply(&DeltaMorphism::degeneracy(n, i))?;
            for s in 0..x.size(n) {
                arrows.push(DiagramArrow { source: node_of[n + 1][x.degen(n, i, s)], target: node_of[n][s], map: s_map.clone() });
            }
        }
    }
    let colimit = diagram_colimit(cf.ctx(), &objects, &arrows)?;
    Ok(Realization { vertex: colimit.vertex.clone(), nodes, colimit })
}

impl<C: Context> Realization<C> {
    /// For `x = Δ[n]`: the map to `F_n` sending the node of a simplex to the
    /// image of its vertex sequence.
    pub fn representable_comparison(&self, cf: &CosimplicialFunctor<C>, x: &SSet, n: usize) -> Result<C::Mor> {
        let target = cf.cell(n)?.clone();
        let cocone = self
            .nodes
            .iter()
            .map(|&(k, s)| cf.apply(&DeltaMorphism::new(k, n, x.vertices_of(k, s))?))
            .collect::<Result<Vec<_>>>()?;
        self.colimit.factor(cf.ctx(), &cocone, &target)
    }
}
