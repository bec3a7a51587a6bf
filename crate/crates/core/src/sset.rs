//! Finite simplicial sets truncated at a fixed dimension.
//!
//! Simplices are dense integer ids per level and every structure map is an
//! array. Maps are found by backtracking over nondegenerate simplices in
//! order of increasing degree; degenerate simplices follow by naturality.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use petgraph::unionfind::UnionFind;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::{CellError, Result};
use crate::finset::quotient_classes;
use crate::kernel::{
    AxiomWitnesses, BackendTag, Constraint, Context, CoproductData, ProductData, PushoutData,
    SearchOptions, Span,
};

/// `(root degree, root id, surjection [n] → [root degree])` with
/// `x = surjection^*(root)` and the root nondegenerate.
#[derive(Clone, Debug)]
struct Decomposition {
    level: usize,
    root: usize,
    surjection: Vec<usize>,
}

struct SSetData {
    dim: usize,
    sizes: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
    fingerprint: u64,
    decomp: OnceLock<Vec<Vec<Decomposition>>>,
    by_faces: OnceLock<Vec<HashMap<Vec<usize>, Vec<usize>>>>,
}

#[derive(Clone)]
pub struct SSet(Arc<SSetData>);

impl PartialEq for SSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.fingerprint == other.0.fingerprint
                && self.0.dim == other.0.dim
                && self.0.sizes == other.0.sizes
                && self.0.faces == other.0.faces
                && self.0.degens == other.0.degens)
    }
}

impl Eq for SSet {}

impl Hash for SSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.fingerprint.hash(state);
    }
}

impl fmt::Debug for SSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SSet(dim {}, sizes {:?}, nondegenerate {:?})", self.0.dim, self.0.sizes, self.census())
    }
}

/// One violated simplicial identity instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub relation: String,
    pub n: usize,
    pub i: usize,
    pub j: usize,
    pub simplex: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at (n={}, i={}, j={}) on simplex {}", self.relation, self.n, self.i, self.j, self.simplex)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

impl SSet {
    /// Builds and validates a simplicial set from raw tables.
    ///
    /// `faces[n][i]` maps level `n` to level `n - 1` (so `faces[0]` is
    /// empty); `degens[n][i]` maps level `n` to level `n + 1` for `n < dim`.
    pub fn from_tables(
        dim: usize,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let x = Self::from_tables_unchecked(dim, sizes, faces, degens)?;
        let report = x.validate();
        if let Some(v) = report.violations.first() {
            return Err(CellError::InvalidInput(format!(
                "simplicial identity violated: {v} ({} violations)",
                report.violations.len()
            )));
        }
        Ok(x)
    }

    /// Checks only table shapes, so deliberately broken sets can be built
    /// and fed to [`SSet::validate`].
    pub fn from_tables_unchecked(
        dim: usize,
        sizes: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degens: Vec<Vec<Vec<usize>>>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(CellError::InvalidInput(msg));
        if sizes.len() != dim + 1 || faces.len() != dim + 1 || degens.len() != dim {
            return bad(format!("tables do not match dimension {dim}"));
        }
        for n in 0..=dim {
            let expected = if n == 0 { 0 } else { n + 1 };
            if faces[n].len() != expected {
                return bad(format!("level {n} needs {expected} face tables"));
            }
            for (i, t) in faces[n].iter().enumerate() {
                if t.len() != sizes[n] || t.iter().any(|&v| v >= sizes[n - 1]) {
                    return bad(format!("face table ({n},{i}) malformed"));
                }
            }
            if n < dim {
                if degens[n].len() != n + 1 {
                    return bad(format!("level {n} needs {} degeneracy tables", n + 1));
                }
                for (i, t) in degens[n].iter().enumerate() {
                    if t.len() != sizes[n] || t.iter().any(|&v| v >= sizes[n + 1]) {
                        return bad(format!("degeneracy table ({n},{i}) malformed"));
                    }
                }
            }
        }
        let mut h = DefaultHasher::new();
        (dim, &sizes, &faces, &degens).hash(&mut h);
        Ok(SSet(Arc::new(SSetData {
            dim,
            sizes,
            faces,
            degens,
            fingerprint: h.finish(),
            decomp: OnceLock::new(),
            by_faces: OnceLock::new(),
        })))
    }

    /// The simplicial set whose `k`-simplices are the weakly increasing
    /// sequences over `0..vertex_count` spanning one of `faces`.
    ///
    /// `faces` must be closed under nonempty subsets; each face is a sorted
    /// vertex list.
    pub fn ordered_complex(dim: usize, vertex_count: usize, faces: &[Vec<usize>]) -> Result<Self> {
        let mut face_set: HashSet<Vec<usize>> = HashSet::new();
        for f in faces {
            if f.is_empty() || f.windows(2).any(|w| w[0] >= w[1]) || f.iter().any(|&v| v >= vertex_count) {
                return Err(CellError::InvalidInput(format!("face {f:?} is not a sorted vertex set")));
            }
            face_set.insert(f.clone());
        }
        let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(dim + 1);
        for k in 0..=dim {
            let mut seqs = Vec::new();
            for f in &face_set {
                if f.len() <= k + 1 {
                    surjective_sequences(f, k + 1, &mut seqs);
                }
            }
            seqs.sort();
            levels.push(seqs);
        }
        Self::from_sequences(dim, levels)
    }

    /// `Δ[n]` truncated at `dim`.
    pub fn standard_simplex(n: usize, dim: usize) -> Self {
        let faces = all_nonempty_subsets(n + 1);
        Self::ordered_complex(dim, n + 1, &faces).expect("standard simplex")
    }

    pub fn point(dim: usize) -> Self {
        Self::standard_simplex(0, dim)
    }

    pub fn empty(dim: usize) -> Self {
        Self::from_tables_unchecked(
            dim,
            vec![0; dim + 1],
            (0..=dim).map(|n| vec![Vec::new(); if n == 0 { 0 } else { n + 1 }]).collect(),
            (0..dim).map(|n| vec![Vec::new(); n + 1]).collect(),
        )
        .expect("empty simplicial set")
    }

    fn from_sequences(dim: usize, levels: Vec<Vec<Vec<usize>>>) -> Result<Self> {
        let index: Vec<HashMap<&[usize], usize>> =
            levels.iter().map(|l| l.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()).collect();
        let sizes = levels.iter().map(Vec::len).collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=dim {
            let tables = (0..=n)
                .map(|i| {
                    levels[n]
                        .iter()
                        .map(|s| {
                            let mut t = s.clone();
                            t.remove(i);
                            index[n - 1][t.as_slice()]
                        })
                        .collect()
                })
                .collect();
            faces.push(tables);
        }
        let degens = (0..dim)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        levels[n]
                            .iter()
                            .map(|s| {
                                let mut t = s.clone();
                                t.insert(i, s[i]);
                                index[n + 1][t.as_slice()]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Self::from_tables(dim, sizes, faces, degens)
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn sizes(&self) -> &[usize] {
        &self.0.sizes
    }

    pub fn size(&self, n: usize) -> usize {
        self.0.sizes[n]
    }

    /// `d_i` on level `n`.
    pub fn face(&self, n: usize, i: usize, x: usize) -> usize {
        self.0.faces[n][i][x]
    }

    /// `s_i` on level `n`.
    pub fn degen(&self, n: usize, i: usize, x: usize) -> usize {
        self.0.degens[n][i][x]
    }

    pub fn face_table(&self, n: usize, i: usize) -> &[usize] {
        &self.0.faces[n][i]
    }

    pub fn degen_table(&self, n: usize, i: usize) -> &[usize] {
        &self.0.degens[n][i]
    }

    pub fn validate(&self) -> ValidationReport {
        let d = &self.0;
        let mut violations = Vec::new();
        let mut push = |relation: &str, n, i, j, simplex| {
            violations.push(Violation { relation: relation.to_string(), n, i, j, simplex })
        };
        for n in 2..=d.dim {
            for j in 1..=n {
                for i in 0..j {
                    for x in 0..d.sizes[n] {
                        if d.faces[n - 1][i][d.faces[n][j][x]] != d.faces[n - 1][j - 1][d.faces[n][i][x]] {
                            push("d_i d_j = d_{j-1} d_i", n, i, j, x);
                        }
                    }
                }
            }
        }
        for n in 0..d.dim.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    for x in 0..d.sizes[n] {
                        if d.degens[n + 1][i][d.degens[n][j][x]] != d.degens[n + 1][j + 1][d.degens[n][i][x]] {
                            push("s_i s_j = s_{j+1} s_i", n, i, j, x);
                        }
                    }
                }
            }
        }
        for n in 0..d.dim {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    for x in 0..d.sizes[n] {
                        let lhs = d.faces[n + 1][i][d.degens[n][j][x]];
                        let (ok, rel) = if i < j {
                            (lhs == d.degens[n - 1][j - 1][d.faces[n][i][x]], "d_i s_j = s_{j-1} d_i")
                        } else if i == j || i == j + 1 {
                            (lhs == x, "d_i s_i = d_{i+1} s_i = id")
                        } else {
                            (lhs == d.degens[n - 1][j][d.faces[n][i - 1][x]], "d_i s_j = s_j d_{i-1}")
                        };
                        if !ok {
                            push(rel, n, i, j, x);
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    fn decompositions(&self) -> &Vec<Vec<Decomposition>> {
        self.0.decomp.get_or_init(|| {
            let d = &self.0;
            let mut out: Vec<Vec<Decomposition>> = Vec::with_capacity(d.dim + 1);
            for n in 0..=d.dim {
                let level = (0..d.sizes[n])
                    .map(|x| {
                        let found = (0..n).find(|&i| d.degens[n - 1][i][d.faces[n][i][x]] == x);
                        match found {
                            None => Decomposition { level: n, root: x, surjection: (0..=n).collect() },
                            Some(i) => {
                                let inner = &out[n - 1][d.faces[n][i][x]];
                                let surjection = (0..=n)
                                    .map(|t| inner.surjection[if t <= i { t } else { t - 1 }])
                                    .collect();
                                Decomposition { level: inner.level, root: inner.root, surjection }
                            }
                        }
                    })
                    .collect();
                out.push(level);
            }
            out
        })
    }

    fn face_index(&self) -> &Vec<HashMap<Vec<usize>, Vec<usize>>> {
        self.0.by_faces.get_or_init(|| {
            let d = &self.0;
            (0..=d.dim)
                .map(|n| {
                    let mut m: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
                    if n > 0 {
                        for x in 0..d.sizes[n] {
                            let key = (0..=n).map(|i| d.faces[n][i][x]).collect();
                            m.entry(key).or_default().push(x);
                        }
                    }
                    m
                })
                .collect()
        })
    }

    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        self.decompositions()[n][x].level < n
    }

    /// Ids of the nondegenerate simplices of degree `n`.
    pub fn nondegenerate(&self, n: usize) -> Vec<usize> {
        (0..self.0.sizes[n]).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// Number of nondegenerate simplices per degree.
    pub fn census(&self) -> Vec<usize> {
        (0..=self.0.dim).map(|n| self.nondegenerate(n).len()).collect()
    }

    /// Root nondegenerate simplex and the surjection exhibiting `x` as its
    /// degeneracy.
    pub fn decompose(&self, n: usize, x: usize) -> (usize, usize, Vec<usize>) {
        let d = &self.decompositions()[n][x];
        (d.level, d.root, d.surjection.clone())
    }

    /// `σ^* y` for a monotone surjection `σ: [n] → [k]` and `y` of degree `k`.
    pub fn degenerate_by(&self, sigma: &[usize], y: usize) -> usize {
        let n = sigma.len() - 1;
        match (0..n).find(|&j| sigma[j] == sigma[j + 1]) {
            None => y,
            Some(j) => {
                let mut rest = sigma.to_vec();
                rest.remove(j + 1);
                let inner = self.degenerate_by(&rest, y);
                self.0.degens[n - 1][j][inner]
            }
        }
    }

    /// `δ^* y` for a monotone injection `δ: [m] → [n]` and `y` of degree `n`.
    pub fn face_by(&self, delta: &[usize], n: usize, y: usize) -> usize {
        if delta.len() == n + 1 {
            return y;
        }
        let missing = (0..=n).rev().find(|v| !delta.contains(v)).expect("injection misses a vertex");
        let rest: Vec<usize> = delta.iter().map(|&v| if v < missing { v } else { v - 1 }).collect();
        self.face_by(&rest, n - 1, self.0.faces[n][missing][y])
    }

    /// `α^* y` for any monotone `α: [m] → [n]` given by its image sequence.
    pub fn act(&self, alpha: &[usize], n: usize, y: usize) -> usize {
        let mut image: Vec<usize> = alpha.to_vec();
        image.dedup();
        let sigma: Vec<usize> = alpha.iter().map(|v| image.iter().position(|w| w == v).unwrap()).collect();
        let face = self.face_by(&image, n, y);
        self.degenerate_by(&sigma, face)
    }

    /// The vertices of a simplex, in order.
    pub fn vertices_of(&self, n: usize, x: usize) -> Vec<usize> {
        (0..=n).map(|v| self.act(&[v], n, x)).collect()
    }
}

fn surjective_sequences(face: &[usize], len: usize, out: &mut Vec<Vec<usize>>) {
    // distribute len slots over the face vertices, each used at least once
    fn go(face: &[usize], remaining: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if face.is_empty() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let max_here = remaining + 1 - face.len();
        for c in 1..=max_here {
            cur.extend(std::iter::repeat_n(face[0], c));
            go(&face[1..], remaining - c, cur, out);
            cur.truncate(cur.len() - c);
        }
    }
    if len >= face.len() {
        go(face, len, &mut Vec::new(), out);
    }
}

/// Nonempty subsets of `0..k` as sorted lists.
pub fn all_nonempty_subsets(k: usize) -> Vec<Vec<usize>> {
    (1u64..(1 << k)).map(|mask| (0..k).filter(|&v| mask >> v & 1 == 1).collect()).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SMap {
    dom: SSet,
    cod: SSet,
    levels: Arc<Vec<Vec<usize>>>,
}

impl fmt::Debug for SMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SMap{:?}", self.levels.first().map(Vec::as_slice).unwrap_or(&[]))
    }
}

impl SMap {
    /// Builds a map after checking that it commutes with every face and
    /// degeneracy.
    pub fn new(dom: SSet, cod: SSet, levels: Vec<Vec<usize>>) -> Result<Self> {
        if dom.dim() != cod.dim() || levels.len() != dom.dim() + 1 {
            return Err(CellError::mismatch("simplicial map: dimension bounds"));
        }
        for (n, l) in levels.iter().enumerate() {
            if l.len() != dom.size(n) || l.iter().any(|&v| v >= cod.size(n)) {
                return Err(CellError::InvalidInput(format!("simplicial map: level {n} table malformed")));
            }
        }
        let m = SMap { dom, cod, levels: Arc::new(levels) };
        if !m.is_natural() {
            return Err(CellError::InvalidInput("simplicial map does not commute with structure maps".into()));
        }
        Ok(m)
    }

    fn is_natural(&self) -> bool {
        let (a, b) = (&self.dom, &self.cod);
        for n in 0..=a.dim() {
            for x in 0..a.size(n) {
                let fx = self.levels[n][x];
                if n > 0 && (0..=n).any(|i| self.levels[n - 1][a.face(n, i, x)] != b.face(n, i, fx)) {
                    return false;
                }
                if n < a.dim() && (0..=n).any(|i| self.levels[n + 1][a.degen(n, i, x)] != b.degen(n, i, fx)) {
                    return false;
                }
            }
        }
        true
    }

    pub fn dom(&self) -> &SSet {
        &self.dom
    }

    pub fn cod(&self) -> &SSet {
        &self.cod
    }

    pub fn level(&self, n: usize) -> &[usize] {
        &self.levels[n]
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }
}

/// Truncated simplicial sets of a fixed dimension bound.
#[derive(Clone, Debug)]
pub struct SSetContext {
    dim: usize,
    point: SSet,
    empty: SSet,
}

impl SSetContext {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(CellError::InvalidInput(format!("dimension bound must be at least 2, got {dim}")));
        }
        Ok(SSetContext { dim, point: SSet::point(dim), empty: SSet::empty(dim) })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn standard_simplex(&self, n: usize) -> SSet {
        SSet::standard_simplex(n, self.dim)
    }

    pub fn ordered_complex(&self, vertex_count: usize, faces: &[Vec<usize>]) -> Result<SSet> {
        SSet::ordered_complex(self.dim, vertex_count, faces)
    }

    /// The point `1 → x` at vertex `v`.
    pub fn vertex(&self, x: &SSet, v: usize) -> Result<SMap> {
        if v >= x.size(0) {
            return Err(CellError::IndexOutOfRange(format!("vertex {v}")));
        }
        let levels = (0..=self.dim).map(|n| vec![x.degenerate_by(&vec![0; n + 1], v)]).collect();
        SMap::new(self.point.clone(), x.clone(), levels)
    }

    fn check_dim(&self, x: &SSet) -> Result<()> {
        if x.dim() != self.dim {
            return Err(CellError::mismatch(format!("dimension bound {} in a context of {}", x.dim(), self.dim)));
        }
        Ok(())
    }

    fn levelwise_quotient(
        &self,
        parts: &[&SSet],
        glue: impl Fn(usize, &mut UnionFind<usize>, &[usize]),
    ) -> Result<(SSet, Vec<Vec<Vec<usize>>>)> {
        // returns the quotient and, per part, per level, the class of each simplex
        let dim = self.dim;
        let mut sizes = Vec::new();
        let mut class_tables: Vec<Vec<usize>> = Vec::new();
        let mut reps_tables: Vec<Vec<usize>> = Vec::new();
        let offsets_per_level: Vec<Vec<usize>> = (0..=dim)
            .map(|n| {
                let mut acc = 0;
                parts
                    .iter()
                    .map(|p| {
                        let o = acc;
                        acc += p.size(n);
                        o
                    })
                    .collect()
            })
            .collect();
        for n in 0..=dim {
            let total: usize = parts.iter().map(|p| p.size(n)).sum();
            let mut uf = UnionFind::<usize>::new(total);
            glue(n, &mut uf, &offsets_per_level[n]);
            let (class_of, reps) = quotient_classes(&mut uf, total);
            sizes.push(reps.len());
            class_tables.push(class_of);
            reps_tables.push(reps);
        }
        let owners: Vec<Vec<(usize, usize)>> = (0..=dim)
            .map(|n| parts.iter().enumerate().flat_map(|(k, p)| (0..p.size(n)).map(move |x| (k, x))).collect())
            .collect();
        let locate = |n: usize, global: usize| owners[n][global];
        let mut faces = vec![Vec::new()];
        for n in 1..=dim {
            let tables = (0..=n)
                .map(|i| {
                    reps_tables[n]
                        .iter()
                        .map(|&g| {
                            let (k, x) = locate(n, g);
                            class_tables[n - 1][offsets_per_level[n - 1][k] + parts[k].face(n, i, x)]
                        })
                        .collect()
                })
                .collect();
            faces.push(tables);
        }
        let degens = (0..dim)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        reps_tables[n]
                            .iter()
                            .map(|&g| {
                                let (k, x) = locate(n, g);
                                class_tables[n + 1][offsets_per_level[n + 1][k] + parts[k].degen(n, i, x)]
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let quotient = SSet::from_tables(dim, sizes, faces, degens)?;
        let per_part = (0..parts.len())
            .map(|k| {
                (0..=dim)
                    .map(|n| {
                        let o = offsets_per_level[n][k];
                        class_tables[n][o..o + parts[k].size(n)].to_vec()
                    })
                    .collect()
            })
            .collect();
        Ok((quotient, per_part))
    }
}

fn check_constraint_shapes(c: &Constraint<SSetContext>, dom: &SSet, cod: &SSet) -> Result<()> {
    if c.along.dom != c.value.dom || &c.along.cod != dom || &c.value.cod != cod {
        return Err(CellError::mismatch("search: constraint endpoints"));
    }
    Ok(())
}

impl Context for SSetContext {
    type Obj = SSet;
    type Mor = SMap;

    fn tag(&self) -> BackendTag {
        BackendTag::SSet
    }

    fn dom(&self, f: &SMap) -> SSet {
        f.dom.clone()
    }

    fn cod(&self, f: &SMap) -> SSet {
        f.cod.clone()
    }

    fn identity(&self, x: &SSet) -> SMap {
        SMap { dom: x.clone(), cod: x.clone(), levels: Arc::new(x.sizes().iter().map(|&s| (0..s).collect()).collect()) }
    }

    fn compose(&self, g: &SMap, f: &SMap) -> Result<SMap> {
        if f.cod != g.dom {
            return Err(CellError::mismatch("compose: cod(f) ≠ dom(g)"));
        }
        let levels = f
            .levels
            .iter()
            .zip(g.levels.iter())
            .map(|(fl, gl)| fl.iter().map(|&x| gl[x]).collect())
            .collect();
        Ok(SMap { dom: f.dom.clone(), cod: g.cod.clone(), levels: Arc::new(levels) })
    }

    fn terminal(&self) -> SSet {
        self.point.clone()
    }

    fn initial(&self) -> SSet {
        self.empty.clone()
    }

    fn terminal_morphism(&self, x: &SSet) -> SMap {
        SMap { dom: x.clone(), cod: self.point.clone(), levels: Arc::new(x.sizes().iter().map(|&s| vec![0; s]).collect()) }
    }

    fn initial_morphism(&self, x: &SSet) -> SMap {
        SMap { dom: self.empty.clone(), cod: x.clone(), levels: Arc::new(vec![Vec::new(); self.dim + 1]) }
    }

    fn product(&self, a: &SSet, b: &SSet) -> Result<ProductData<Self>> {
        self.check_dim(a)?;
        self.check_dim(b)?;
        let dim = self.dim;
        let sizes: Vec<usize> = (0..=dim).map(|n| a.size(n) * b.size(n)).collect();
        let faces = (0..=dim)
            .map(|n| {
                if n == 0 {
                    return Vec::new();
                }
                (0..=n)
                    .map(|i| {
                        (0..sizes[n])
                            .map(|k| {
                                let (x, y) = (k / b.size(n), k % b.size(n));
                                a.face(n, i, x) * b.size(n - 1) + b.face(n, i, y)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let degens = (0..dim)
            .map(|n| {
                (0..=n)
                    .map(|i| {
                        (0..sizes[n])
                            .map(|k| {
                                let (x, y) = (k / b.size(n), k % b.size(n));
                                a.degen(n, i, x) * b.size(n + 1) + b.degen(n, i, y)
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let vertex = SSet::from_tables_unchecked(dim, sizes.clone(), faces, degens)?;
        let proj = |which: usize| {
            let levels = (0..=dim)
                .map(|n| (0..sizes[n]).map(|k| if which == 0 { k / b.size(n) } else { k % b.size(n) }).collect())
                .collect();
            SMap { dom: vertex.clone(), cod: if which == 0 { a.clone() } else { b.clone() }, levels: Arc::new(levels) }
        };
        Ok(ProductData { proj1: proj(0), proj2: proj(1), vertex })
    }

    fn pair(&self, f: &SMap, g: &SMap, p: &ProductData<Self>) -> Result<SMap> {
        if f.dom != g.dom {
            return Err(CellError::mismatch("pair: legs have different domains"));
        }
        if f.cod != p.proj1.cod || g.cod != p.proj2.cod {
            return Err(CellError::mismatch("pair: legs do not land in the factors"));
        }
        let levels = (0..=self.dim)
            .map(|n| {
                let nb = g.cod.size(n);
                f.levels[n].iter().zip(&g.levels[n]).map(|(&x, &y)| x * nb + y).collect()
            })
            .collect();
        Ok(SMap { dom: f.dom.clone(), cod: p.vertex.clone(), levels: Arc::new(levels) })
    }

    fn coproduct(&self, objs: &[SSet]) -> Result<CoproductData<Self>> {
        if objs.is_empty() {
            return Err(CellError::EmptyCoproduct);
        }
        for o in objs {
            self.check_dim(o)?;
        }
        let parts: Vec<&SSet> = objs.iter().collect();
        let (vertex, classes) = self.levelwise_quotient(&parts, |_, _, _| {})?;
        let injections = objs
            .iter()
            .zip(classes)
            .map(|(o, levels)| SMap { dom: o.clone(), cod: vertex.clone(), levels: Arc::new(levels) })
            .collect();
        Ok(CoproductData { summands: objs.to_vec(), vertex, injections })
    }

    fn copair(&self, c: &CoproductData<Self>, legs: &[SMap]) -> Result<SMap> {
        if legs.len() != c.summands.len() {
            return Err(CellError::mismatch("copair: wrong number of legs"));
        }
        let cod = legs[0].cod.clone();
        let mut levels: Vec<Vec<usize>> = c.vertex.sizes().iter().map(|&s| vec![usize::MAX; s]).collect();
        for ((leg, summand), inj) in legs.iter().zip(&c.summands).zip(&c.injections) {
            if &leg.dom != summand || leg.cod != cod {
                return Err(CellError::mismatch("copair: leg endpoints"));
            }
            for n in 0..=self.dim {
                for (x, &y) in inj.levels[n].iter().enumerate() {
                    levels[n][y] = leg.levels[n][x];
                }
            }
        }
        Ok(SMap { dom: c.vertex.clone(), cod, levels: Arc::new(levels) })
    }

    fn pushout(&self, s: &Span<Self>) -> Result<PushoutData<Self>> {
        if s.left.dom != s.apex || s.right.dom != s.apex {
            return Err(CellError::mismatch("pushout: span legs do not start at the apex"));
        }
        let (l, r) = (s.left.cod.clone(), s.right.cod.clone());
        let parts = [&l, &r];
        let (vertex, mut classes) = self.levelwise_quotient(&parts, |n, uf, offs| {
            for a in 0..s.apex.size(n) {
                uf.union(offs[0] + s.left.levels[n][a], offs[1] + s.right.levels[n][a]);
            }
        })?;
        let right_levels = classes.pop().unwrap();
        let left_levels = classes.pop().unwrap();
        Ok(PushoutData {
            span: s.clone(),
            inj_left: SMap { dom: l, cod: vertex.clone(), levels: Arc::new(left_levels) },
            inj_right: SMap { dom: r, cod: vertex.clone(), levels: Arc::new(right_levels) },
            vertex,
        })
    }

    fn factor_through_pushout(&self, p: &PushoutData<Self>, left: &SMap, right: &SMap) -> Result<SMap> {
        if left.dom != p.inj_left.dom || right.dom != p.inj_right.dom || left.cod != right.cod {
            return Err(CellError::mismatch("factor_through_pushout: cocone endpoints"));
        }
        if self.compose(left, &p.span.left)? != self.compose(right, &p.span.right)? {
            return Err(CellError::NonCommutingCocone("cocone legs disagree on the apex".into()));
        }
        let mut levels = Vec::with_capacity(self.dim + 1);
        for n in 0..=self.dim {
            let mut table: Vec<Option<usize>> = vec![None; p.vertex.size(n)];
            let pairs = p.inj_left.levels[n]
                .iter()
                .zip(&left.levels[n])
                .chain(p.inj_right.levels[n].iter().zip(&right.levels[n]));
            for (&class, &value) in pairs {
                match table[class] {
                    None => table[class] = Some(value),
                    Some(v) if v == value => {}
                    Some(_) => return Err(CellError::Invariant("pushout class maps to two values".into())),
                }
            }
            levels.push(
                table
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| CellError::Invariant("pushout class not covered".into()))?,
            );
        }
        Ok(SMap { dom: p.vertex.clone(), cod: left.cod.clone(), levels: Arc::new(levels) })
    }

    fn search(
        &self,
        dom: &SSet,
        cod: &SSet,
        constraints: &[Constraint<Self>],
        opts: SearchOptions,
    ) -> Result<Vec<SMap>> {
        self.check_dim(dom)?;
        self.check_dim(cod)?;
        let dim = self.dim;
        let mut fixed: Vec<Vec<Option<usize>>> = dom.sizes().iter().map(|&s| vec![None; s]).collect();
        for c in constraints {
            check_constraint_shapes(c, dom, cod)?;
            let a = &c.along.dom;
            for n in 0..=dim {
                for x in a.nondegenerate(n) {
                    let z = c.along.levels[n][x];
                    let v = c.value.levels[n][x];
                    let (k, r, sigma) = dom.decompose(n, z);
                    // σ^* is injective with left inverse δ^*, δ the first-occurrence section
                    let section: Vec<usize> = (0..=k).map(|t| sigma.iter().position(|&s| s == t).unwrap()).collect();
                    let w = cod.face_by(&section, n, v);
                    if cod.degenerate_by(&sigma, w) != v {
                        return Ok(Vec::new());
                    }
                    match fixed[k][r] {
                        None => fixed[k][r] = Some(w),
                        Some(u) if u == w => {}
                        Some(_) => return Ok(Vec::new()),
                    }
                }
            }
        }
        let order: Vec<(usize, usize)> =
            (0..=dim).flat_map(|n| dom.nondegenerate(n).into_iter().map(move |x| (n, x))).collect();
        let mut st = SsSearch {
            dom,
            cod,
            fixed,
            order,
            opts,
            assign: dom.sizes().iter().map(|&s| vec![usize::MAX; s]).collect(),
            used: cod.sizes().iter().map(|&s| vec![false; s]).collect(),
            spent: 0,
            out: Vec::new(),
        };
        st.run(0)?;
        Ok(st
            .out
            .into_iter()
            .map(|levels| SMap { dom: dom.clone(), cod: cod.clone(), levels: Arc::new(levels) })
            .collect())
    }

    fn is_monic(&self, f: &SMap) -> bool {
        f.levels.iter().all(|l| {
            let mut seen = HashSet::new();
            l.iter().all(|v| seen.insert(*v))
        })
    }

    fn is_iso(&self, f: &SMap) -> bool {
        f.dom.sizes() == f.cod.sizes() && self.is_monic(f)
    }

    fn size_profile(&self, x: &SSet) -> Vec<usize> {
        x.sizes().to_vec()
    }

    fn describe(&self, x: &SSet) -> String {
        let c = x.census();
        format!("{} vertices, nondegenerate simplices per degree {:?}", x.size(0), c)
    }

    fn witnesses(&self) -> AxiomWitnesses<Self> {
        let interval = self.standard_simplex(1);
        let square = self.product(&interval, &interval).expect("product");
        // pointwise max of the two vertex sequences
        let levels = (0..=self.dim)
            .map(|n| {
                (0..square.vertex.size(n))
                    .map(|k| {
                        let a = interval.vertices_of(n, square.proj1.levels[n][k]);
                        let b = interval.vertices_of(n, square.proj2.levels[n][k]);
                        let m: Vec<usize> = a.iter().zip(&b).map(|(x, y)| *x.max(y)).collect();
                        sequence_in_simplex(&interval, n, &m)
                    })
                    .collect()
            })
            .collect();
        let contraction = SMap::new(square.vertex.clone(), interval.clone(), levels).expect("max contraction");
        AxiomWitnesses {
            terminal: self.terminal(),
            endpoint0: self.vertex(&interval, 0).expect("vertex 0"),
            endpoint1: self.vertex(&interval, 1).expect("vertex 1"),
            swap: None,
            basepoint: self.vertex(&interval, 1).expect("vertex 1"),
            join: None,
            contraction: Some(contraction),
            interval,
        }
    }

    fn obj_to_json(&self, x: &SSet) -> Value {
        let mut faces = Map::new();
        for n in 1..=x.dim() {
            for i in 0..=n {
                faces.insert(format!("{n},{i}"), json!(x.face_table(n, i)));
            }
        }
        let mut degens = Map::new();
        for n in 0..x.dim() {
            for i in 0..=n {
                degens.insert(format!("{n},{i}"), json!(x.degen_table(n, i)));
            }
        }
        json!({ "dim": x.dim(), "levels": x.sizes(), "faces": faces, "degens": degens })
    }

    fn mor_to_json(&self, f: &SMap) -> Value {
        json!({ "dom": self.obj_to_json(&f.dom), "cod": self.obj_to_json(&f.cod), "levels": f.levels.as_slice() })
    }

    fn obj_from_json(&self, v: &Value) -> Result<SSet> {
        let bad = |m: &str| CellError::InvalidInput(format!("object: {m}"));
        let dim = v.get("dim").and_then(Value::as_u64).ok_or_else(|| bad("missing integer field \"dim\""))? as usize;
        if dim != self.dim {
            return Err(bad(&format!("\"dim\" is {dim} but the context uses {}", self.dim)));
        }
        let sizes: Vec<usize> = serde_json::from_value(v.get("levels").cloned().ok_or_else(|| bad("missing field \"levels\""))?)
            .map_err(|e| bad(&format!("\"levels\": {e}")))?;
        let tables = |name: &str| -> Result<BTreeMap<String, Vec<usize>>> {
            serde_json::from_value(v.get(name).cloned().ok_or_else(|| bad(&format!("missing field \"{name}\"")))?)
                .map_err(|e| bad(&format!("\"{name}\": {e}")))
        };
        let fmap = tables("faces")?;
        let dmap = tables("degens")?;
        let get = |m: &BTreeMap<String, Vec<usize>>, name: &str, n: usize, i: usize| {
            m.get(&format!("{n},{i}")).cloned().ok_or_else(|| bad(&format!("\"{name}\" lacks key \"{n},{i}\"")))
        };
        let faces = (0..=dim)
            .map(|n| if n == 0 { Ok(Vec::new()) } else { (0..=n).map(|i| get(&fmap, "faces", n, i)).collect() })
            .collect::<Result<Vec<_>>>()?;
        let degens = (0..dim)
            .map(|n| (0..=n).map(|i| get(&dmap, "degens", n, i)).collect())
            .collect::<Result<Vec<_>>>()?;
        SSet::from_tables(dim, sizes, faces, degens)
    }

    fn mor_from_json(&self, v: &Value) -> Result<SMap> {
        let field = |name: &str| v.get(name).ok_or_else(|| CellError::InvalidInput(format!("morphism: missing field \"{name}\"")));
        let dom = self.obj_from_json(field("dom")?)?;
        let cod = self.obj_from_json(field("cod")?)?;
        let levels: Vec<Vec<usize>> = serde_json::from_value(field("levels")?.clone())
            .map_err(|e| CellError::InvalidInput(format!("morphism: \"levels\": {e}")))?;
        SMap::new(dom, cod, levels)
    }
}

/// Id of the simplex of `x` (a standard simplex or ordered complex) with the
/// given vertex sequence.
fn sequence_in_simplex(x: &SSet, n: usize, seq: &[usize]) -> usize {
    (0..x.size(n)).find(|&s| x.vertices_of(n, s) == seq).expect("sequence is a simplex")
}

struct SsSearch<'a> {
    dom: &'a SSet,
    cod: &'a SSet,
    fixed: Vec<Vec<Option<usize>>>,
    order: Vec<(usize, usize)>,
    opts: SearchOptions,
    assign: Vec<Vec<usize>>,
    used: Vec<Vec<bool>>,
    spent: u64,
    out: Vec<Vec<Vec<usize>>>,
}

impl SsSearch<'_> {
    fn image(&self, n: usize, x: usize) -> usize {
        let (k, r, sigma) = self.dom.decompose(n, x);
        self.cod.degenerate_by(&sigma, self.assign[k][r])
    }

    fn run(&mut self, pos: usize) -> Result<()> {
        if self.out.len() >= self.opts.limit {
            return Ok(());
        }
        if pos == self.order.len() {
            if let Some(levels) = self.complete() {
                self.out.push(levels);
            }
            return Ok(());
        }
        let (n, z) = self.order[pos];
        let candidates: Vec<usize> = if n == 0 {
            match self.fixed[0][z] {
                Some(v) => vec![v],
                None => (0..self.cod.size(0)).collect(),
            }
        } else {
            let key: Vec<usize> = (0..=n).map(|i| self.image(n - 1, self.dom.face(n, i, z))).collect();
            let all = self.cod.face_index()[n].get(&key).cloned().unwrap_or_default();
            match self.fixed[n][z] {
                Some(v) => all.into_iter().filter(|&c| c == v).collect(),
                None => all,
            }
        };
        for c in candidates {
            if self.out.len() >= self.opts.limit {
                break;
            }
            self.spent += 1;
            if self.spent > self.opts.budget {
                return Err(CellError::BudgetExhausted { budget: self.opts.budget });
            }
            if self.opts.injective && (self.used[n][c] || self.cod.is_degenerate(n, c)) {
                continue;
            }
            self.assign[n][z] = c;
            self.used[n][c] = true;
            self.run(pos + 1)?;
            self.used[n][c] = false;
        }
        self.assign[n][z] = usize::MAX;
        Ok(())
    }

    fn complete(&self) -> Option<Vec<Vec<usize>>> {
        let levels: Vec<Vec<usize>> =
            (0..=self.dom.dim()).map(|n| (0..self.dom.size(n)).map(|x| self.image(n, x)).collect()).collect();
        let candidate = SMap { dom: self.dom.clone(), cod: self.cod.clone(), levels: Arc::new(levels) };
        if !candidate.is_natural() {
            return None;
        }
        if self.opts.injective {
            let ok = candidate.levels.iter().all(|l| {
                let mut seen = HashSet::new();
                l.iter().all(|v| seen.insert(*v))
            });
            if !ok {
                return None;
            }
        }
        Arc::try_unwrap(candidate.levels).ok()
    }
}
