//! Finite sets and functions.
//!
//! The cell tower built here is exactly the simplex category: `F_n` has
//! `n + 1` elements and the generated face and degeneracy maps are the
//! usual coface and codegeneracy maps.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use serde_json::{json, Map, Value};

use crate::error::{CellError, Result};
use crate::kernel::{
    AxiomWitnesses, BackendTag, Constraint, Context, CoproductData, ProductData, PushoutData,
    SearchOptions, Span,
};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinSet {
    labels: Arc<Vec<String>>,
}

impl FinSet {
    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Result<Self> {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(CellError::InvalidInput(format!("duplicate label {l:?}")));
            }
        }
        Ok(FinSet { labels: Arc::new(labels) })
    }

    /// `{0, 1, …, n-1}`.
    pub fn range(n: usize) -> Self {
        FinSet { labels: Arc::new((0..n).map(|i| i.to_string()).collect()) }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }
}

impl fmt::Debug for FinSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.labels.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FinMap {
    dom: FinSet,
    cod: FinSet,
    table: Vec<usize>,
}

impl FinMap {
    pub fn new(dom: FinSet, cod: FinSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != dom.len() {
            return Err(CellError::InvalidInput(format!(
                "table has {} entries for a domain of {}",
                table.len(),
                dom.len()
            )));
        }
        if let Some(bad) = table.iter().find(|&&t| t >= cod.len()) {
            return Err(CellError::InvalidInput(format!("image index {bad} outside codomain")));
        }
        Ok(FinMap { dom, cod, table })
    }

    pub fn from_fn(dom: &FinSet, cod: &FinSet, f: impl Fn(usize) -> usize) -> Result<Self> {
        FinMap::new(dom.clone(), cod.clone(), (0..dom.len()).map(f).collect())
    }

    pub fn dom(&self) -> &FinSet {
        &self.dom
    }

    pub fn cod(&self) -> &FinSet {
        &self.cod
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, i: usize) -> usize {
        self.table[i]
    }
}

impl fmt::Debug for FinMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinMap{:?}", self.table)
    }
}

/// The category of finite sets.
#[derive(Clone, Copy, Debug, Default)]
pub struct FinSetContext;

impl FinSetContext {
    pub fn new() -> Self {
        FinSetContext
    }

    pub fn constant_point(&self, x: &FinSet, i: usize) -> FinMap {
        FinMap { dom: self.terminal(), cod: x.clone(), table: vec![i] }
    }
}

fn pair_label(a: &str, b: &str) -> String {
    format!("({a},{b})")
}

fn summand_labels(objs: &[FinSet]) -> Vec<String> {
    let mut seen = HashSet::new();
    let distinct = objs.iter().flat_map(|o| o.labels.iter()).all(|l| seen.insert(l.as_str()));
    objs.iter()
        .enumerate()
        .flat_map(|(k, o)| {
            o.labels.iter().map(move |l| if distinct { l.clone() } else { format!("{k}:{l}") })
        })
        .collect()
}

impl Context for FinSetContext {
    type Obj = FinSet;
    type Mor = FinMap;

    fn tag(&self) -> BackendTag {
        BackendTag::FinSet
    }

    fn dom(&self, f: &FinMap) -> FinSet {
        f.dom.clone()
    }

    fn cod(&self, f: &FinMap) -> FinSet {
        f.cod.clone()
    }

    fn identity(&self, x: &FinSet) -> FinMap {
        FinMap { dom: x.clone(), cod: x.clone(), table: (0..x.len()).collect() }
    }

    fn compose(&self, g: &FinMap, f: &FinMap) -> Result<FinMap> {
        if f.cod != g.dom {
            return Err(CellError::mismatch("compose: cod(f) ≠ dom(g)"));
        }
        Ok(FinMap { dom: f.dom.clone(), cod: g.cod.clone(), table: f.table.iter().map(|&i| g.table[i]).collect() })
    }

    fn terminal(&self) -> FinSet {
        FinSet { labels: Arc::new(vec!["*".to_string()]) }
    }

    fn initial(&self) -> FinSet {
        FinSet { labels: Arc::new(Vec::new()) }
    }

    fn terminal_morphism(&self, x: &FinSet) -> FinMap {
        FinMap { dom: x.clone(), cod: self.terminal(), table: vec![0; x.len()] }
    }

    fn initial_morphism(&self, x: &FinSet) -> FinMap {
        FinMap { dom: self.initial(), cod: x.clone(), table: Vec::new() }
    }

    fn product(&self, a: &FinSet, b: &FinSet) -> Result<ProductData<Self>> {
        let labels: Vec<String> =
            a.labels.iter().flat_map(|x| b.labels.iter().map(move |y| pair_label(x, y))).collect();
        let vertex = FinSet { labels: Arc::new(labels) };
        let nb = b.len();
        let proj1 = FinMap { dom: vertex.clone(), cod: a.clone(), table: (0..vertex.len()).map(|k| k / nb).collect() };
        let proj2 = FinMap { dom: vertex.clone(), cod: b.clone(), table: (0..vertex.len()).map(|k| k % nb).collect() };
        Ok(ProductData { vertex, proj1, proj2 })
    }

    fn pair(&self, f: &FinMap, g: &FinMap, p: &ProductData<Self>) -> Result<FinMap> {
        if f.dom != g.dom {
            return Err(CellError::mismatch("pair: legs have different domains"));
        }
        if f.cod != p.proj1.cod || g.cod != p.proj2.cod {
            return Err(CellError::mismatch("pair: legs do not land in the factors"));
        }
        let nb = g.cod.len();
        let table = f.table.iter().zip(&g.table).map(|(&i, &j)| i * nb + j).collect();
        Ok(FinMap { dom: f.dom.clone(), cod: p.vertex.clone(), table })
    }

    fn coproduct(&self, objs: &[FinSet]) -> Result<CoproductData<Self>> {
        if objs.is_empty() {
            return Err(CellError::EmptyCoproduct);
        }
        let vertex = FinSet { labels: Arc::new(summand_labels(objs)) };
        let mut offset = 0;
        let injections = objs
            .iter()
            .map(|o| {
                let inj = FinMap { dom: o.clone(), cod: vertex.clone(), table: (offset..offset + o.len()).collect() };
                offset += o.len();
                inj
            })
            .collect();
        Ok(CoproductData { summands: objs.to_vec(), vertex, injections })
    }

    fn copair(&self, c: &CoproductData<Self>, legs: &[FinMap]) -> Result<FinMap> {
        if legs.len() != c.summands.len() {
            return Err(CellError::mismatch("copair: wrong number of legs"));
        }
        let cod = legs[0].cod.clone();
        let mut table = Vec::with_capacity(c.vertex.len());
        for (leg, summand) in legs.iter().zip(&c.summands) {
            if &leg.dom != summand || leg.cod != cod {
                return Err(CellError::mismatch("copair: leg endpoints"));
            }
            table.extend_from_slice(&leg.table);
        }
        Ok(FinMap { dom: c.vertex.clone(), cod, table })
    }

    fn pushout(&self, s: &Span<Self>) -> Result<PushoutData<Self>> {
        if s.left.dom != s.apex || s.right.dom != s.apex {
            return Err(CellError::mismatch("pushout: span legs do not start at the apex"));
        }
        let (l, r) = (&s.left.cod, &s.right.cod);
        let total = l.len() + r.len();
        let mut uf = UnionFind::<usize>::new(total);
        for a in 0..s.apex.len() {
            uf.union(s.left.table[a], l.len() + s.right.table[a]);
        }
        let (class_of, reps) = quotient_classes(&mut uf, total);
        let joint = summand_labels(&[l.clone(), r.clone()]);
        let vertex = FinSet { labels: Arc::new(reps.iter().map(|&i| joint[i].clone()).collect()) };
        let inj_left = FinMap { dom: l.clone(), cod: vertex.clone(), table: class_of[..l.len()].to_vec() };
        let inj_right = FinMap { dom: r.clone(), cod: vertex.clone(), table: class_of[l.len()..].to_vec() };
        Ok(PushoutData { span: s.clone(), vertex, inj_left, inj_right })
    }

    fn factor_through_pushout(&self, p: &PushoutData<Self>, left: &FinMap, right: &FinMap) -> Result<FinMap> {
        if left.dom != p.inj_left.dom || right.dom != p.inj_right.dom || left.cod != right.cod {
            return Err(CellError::mismatch("factor_through_pushout: cocone endpoints"));
        }
        if self.compose(left, &p.span.left)? != self.compose(right, &p.span.right)? {
            return Err(CellError::NonCommutingCocone("cocone legs disagree on the apex".into()));
        }
        let mut table: Vec<Option<usize>> = vec![None; p.vertex.len()];
        let pairs = p.inj_left.table.iter().zip(&left.table).chain(p.inj_right.table.iter().zip(&right.table));
        for (&class, &value) in pairs {
            match table[class] {
                None => table[class] = Some(value),
                Some(v) if v == value => {}
                Some(_) => return Err(CellError::Invariant("pushout class maps to two values".into())),
            }
        }
        let table = table
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| CellError::Invariant("pushout class not covered by the injections".into()))?;
        Ok(FinMap { dom: p.vertex.clone(), cod: left.cod.clone(), table })
    }

    fn search(
        &self,
        dom: &FinSet,
        cod: &FinSet,
        constraints: &[Constraint<Self>],
        opts: SearchOptions,
    ) -> Result<Vec<FinMap>> {
        let mut fixed: Vec<Option<usize>> = vec![None; dom.len()];
        for c in constraints {
            if c.along.dom != c.value.dom || &c.along.cod != dom || &c.value.cod != cod {
                return Err(CellError::mismatch("search: constraint endpoints"));
            }
            for (&x, &v) in c.along.table.iter().zip(&c.value.table) {
                match fixed[x] {
                    None => fixed[x] = Some(v),
                    Some(w) if w == v => {}
                    Some(_) => return Ok(Vec::new()),
                }
            }
        }
        let mut st = FsSearch {
            fixed: &fixed,
            cod_len: cod.len(),
            opts,
            used: vec![false; cod.len()],
            current: Vec::with_capacity(dom.len()),
            spent: 0,
            out: Vec::new(),
        };
        if opts.injective {
            let mut seen = HashSet::new();
            if !fixed.iter().flatten().all(|v| seen.insert(*v)) {
                return Ok(Vec::new());
            }
        }
        st.run()?;
        Ok(st.out.into_iter().map(|table| FinMap { dom: dom.clone(), cod: cod.clone(), table }).collect())
    }

    fn is_monic(&self, f: &FinMap) -> bool {
        let mut seen = HashSet::new();
        f.table.iter().all(|v| seen.insert(*v))
    }

    fn is_iso(&self, f: &FinMap) -> bool {
        f.dom.len() == f.cod.len() && self.is_monic(f)
    }

    fn size_profile(&self, x: &FinSet) -> Vec<usize> {
        vec![x.len()]
    }

    fn describe(&self, x: &FinSet) -> String {
        format!("{} elements", x.len())
    }

    fn witnesses(&self) -> AxiomWitnesses<Self> {
        let interval = FinSet::range(2);
        let square = self.product(&interval, &interval).expect("finite product");
        // (x, 0) ↦ x, (x, 1) ↦ 1
        let contraction = FinMap::from_fn(&square.vertex, &interval, |k| if k % 2 == 0 { k / 2 } else { 1 })
            .expect("contraction table");
        AxiomWitnesses {
            terminal: self.terminal(),
            endpoint0: self.constant_point(&interval, 0),
            endpoint1: self.constant_point(&interval, 1),
            swap: Some(FinMap::new(interval.clone(), interval.clone(), vec![1, 0]).expect("swap table")),
            basepoint: self.constant_point(&interval, 1),
            join: None,
            contraction: Some(contraction),
            interval,
        }
    }

    fn obj_to_json(&self, x: &FinSet) -> Value {
        json!({ "labels": x.labels.as_slice() })
    }

    fn mor_to_json(&self, f: &FinMap) -> Value {
        let map: Map<String, Value> = f
            .table
            .iter()
            .enumerate()
            .map(|(i, &j)| (f.dom.labels[i].clone(), Value::String(f.cod.labels[j].clone())))
            .collect();
        json!({ "dom": self.obj_to_json(&f.dom), "cod": self.obj_to_json(&f.cod), "map": map })
    }

    fn obj_from_json(&self, v: &Value) -> Result<FinSet> {
        let labels = v
            .get("labels")
            .and_then(Value::as_array)
            .ok_or_else(|| CellError::InvalidInput("object: missing array field \"labels\"".into()))?;
        let labels = labels
            .iter()
            .map(|l| match l {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                _ => Err(CellError::InvalidInput("object: labels must be strings".into())),
            })
            .collect::<Result<Vec<_>>>()?;
        FinSet::new(labels)
    }

    fn mor_from_json(&self, v: &Value) -> Result<FinMap> {
        let field = |name: &str| v.get(name).ok_or_else(|| CellError::InvalidInput(format!("morphism: missing field \"{name}\"")));
        let dom = self.obj_from_json(field("dom")?)?;
        let cod = self.obj_from_json(field("cod")?)?;
        let map = field("map")?
            .as_object()
            .ok_or_else(|| CellError::InvalidInput("morphism: \"map\" must be an object".into()))?;
        let index: HashMap<&str, usize> = cod.labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let table = dom
            .labels
            .iter()
            .map(|l| {
                let img = map
                    .get(l)
                    .and_then(|t| match t {
                        Value::String(s) => Some(s.clone()),
                        Value::Number(n) => Some(n.to_string()),
                        _ => None,
                    })
                    .ok_or_else(|| CellError::InvalidInput(format!("morphism: \"map\" has no image for {l:?}")))?;
                index
                    .get(img.as_str())
                    .copied()
                    .ok_or_else(|| CellError::InvalidInput(format!("morphism: image {img:?} not in codomain")))
            })
            .collect::<Result<Vec<_>>>()?;
        FinMap::new(dom, cod, table)
    }
}

/// Class index per element and the least member of each class, with classes
/// ordered by their least member.
pub(crate) fn quotient_classes(uf: &mut UnionFind<usize>, total: usize) -> (Vec<usize>, Vec<usize>) {
    let mut root_class: HashMap<usize, usize> = HashMap::new();
    let mut reps = Vec::new();
    let mut class_of = Vec::with_capacity(total);
    for i in 0..total {
        let root = uf.find_mut(i);
        let class = *root_class.entry(root).or_insert_with(|| {
            reps.push(i);
            reps.len() - 1
        });
        class_of.push(class);
    }
    (class_of, reps)
}

struct FsSearch<'a> {
    fixed: &'a [Option<usize>],
    cod_len: usize,
    opts: SearchOptions,
    used: Vec<bool>,
    current: Vec<usize>,
    spent: u64,
    out: Vec<Vec<usize>>,
}

impl FsSearch<'_> {
    fn run(&mut self) -> Result<()> {
        let x = self.current.len();
        if x == self.fixed.len() {
            self.out.push(self.current.clone());
            return Ok(());
        }
        let candidates: Vec<usize> = match self.fixed[x] {
            Some(v) => vec![v],
            None => (0..self.cod_len).collect(),
        };
        for v in candidates {
            if self.out.len() >= self.opts.limit {
                return Ok(());
            }
            self.spent += 1;
            if self.spent > self.opts.budget {
                return Err(CellError::BudgetExhausted { budget: self.opts.budget });
            }
            if self.opts.injective {
                // fixed values are reserved up front
                let clash = self.used[v] || (self.fixed[x].is_none() && self.fixed.contains(&Some(v)));
                if clash {
                    continue;
                }
                self.used[v] = true;
            }
            self.current.push(v);
            self.run()?;
            self.current.pop();
            if self.opts.injective {
                self.used[v] = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{audit_axioms, hom, AxiomId, Verdict};

    fn ctx() -> FinSetContext {
        FinSetContext
    }

    #[test]
    fn duplicate_labels_rejected() {
        assert!(FinSet::new(["a", "a"]).is_err());
    }

    #[test]
    fn composition_follows_tables() {
        let c = ctx();
        let f = FinMap::new(FinSet::range(2), FinSet::range(3), vec![1, 2]).unwrap();
        let g = FinMap::new(FinSet::range(3), FinSet::range(2), vec![0, 0, 0]).unwrap();
        let gf = c.compose(&g, &f).unwrap();
        assert_eq!(gf.table(), &[0, 0]);
        assert!(c.compose(&f, &f).is_err());
    }

    #[test]
    fn product_sizes() {
        let c = ctx();
        let p = c.product(&FinSet::range(2), &FinSet::range(3)).unwrap();
        assert_eq!(p.vertex.len(), 6);
        let e = c.product(&c.initial(), &FinSet::range(3)).unwrap();
        assert!(e.vertex.is_empty());
        let id = c.pair(&p.proj1, &p.proj2, &p).unwrap();
        assert_eq!(id, c.identity(&p.vertex));
    }

    #[test]
    fn diagonal_pairing() {
        let c = ctx();
        let two = FinSet::range(2);
        let p = c.product(&two, &two).unwrap();
        let d = c.pair(&c.identity(&two), &c.identity(&two), &p).unwrap();
        assert_eq!(p.vertex.label(d.apply(0)), "(0,0)");
        assert_eq!(p.vertex.label(d.apply(1)), "(1,1)");
    }

    #[test]
    fn pushout_of_point_into_pair() {
        let c = ctx();
        let ab = FinSet::new(["a", "b"]).unwrap();
        let span = Span { apex: c.terminal(), left: c.identity(&c.terminal()), right: FinMap::new(c.terminal(), ab.clone(), vec![0]).unwrap() };
        let p = c.pushout(&span).unwrap();
        assert_eq!(p.vertex.len(), 2);
        let u = c.factor_through_pushout(&p, &p.inj_left, &p.inj_right).unwrap();
        assert_eq!(u, c.identity(&p.vertex));
    }

    #[test]
    fn pushout_over_empty_is_disjoint_union() {
        let c = ctx();
        let (a, b) = (FinSet::range(2), FinSet::range(3));
        let span = Span { apex: c.initial(), left: c.initial_morphism(&a), right: c.initial_morphism(&b) };
        assert_eq!(c.pushout(&span).unwrap().vertex.len(), 5);
    }

    #[test]
    fn pushout_rejects_non_commuting_cocone() {
        let c = ctx();
        let two = FinSet::range(2);
        let span = Span { apex: c.terminal(), left: c.identity(&c.terminal()), right: FinMap::new(c.terminal(), two.clone(), vec![0]).unwrap() };
        let p = c.pushout(&span).unwrap();
        let left = FinMap::new(c.terminal(), two.clone(), vec![1]).unwrap();
        let err = c.factor_through_pushout(&p, &left, &c.identity(&two)).unwrap_err();
        assert!(matches!(err, CellError::NonCommutingCocone(_)));
    }

    #[test]
    fn search_counts_and_budget() {
        let c = ctx();
        let maps = hom(&c, &FinSet::range(2), &FinSet::range(3), 1000).unwrap();
        assert_eq!(maps.len(), 9);
        let err = hom(&c, &FinSet::range(4), &FinSet::range(4), 10).unwrap_err();
        assert!(err.is_budget());
        let inj = c.search(&FinSet::range(3), &FinSet::range(3), &[], SearchOptions { budget: 1000, limit: usize::MAX, injective: true }).unwrap();
        assert_eq!(inj.len(), 6);
    }

    #[test]
    fn constrained_search_respects_fixed_values() {
        let c = ctx();
        let three = FinSet::range(3);
        let pick = FinMap::new(c.terminal(), three.clone(), vec![2]).unwrap();
        let val = FinMap::new(c.terminal(), three.clone(), vec![0]).unwrap();
        let maps = c.search(&three, &three, &[Constraint::new(pick, val)], SearchOptions::all(1000)).unwrap();
        assert_eq!(maps.len(), 9);
        assert!(maps.iter().all(|m| m.apply(2) == 0));
    }

    #[test]
    fn witnesses_satisfy_their_equations() {
        let c = ctx();
        let w = c.witnesses();
        let swap = w.swap.clone().unwrap();
        assert_eq!(c.compose(&swap, &w.endpoint0).unwrap(), w.endpoint1);
        let report = audit_axioms(&c, &w, 100_000);
        for id in AxiomId::ALL {
            let expected = if id == AxiomId::F1Join { Verdict::Fail } else { Verdict::Pass };
            assert_eq!(report.verdict(id), Some(expected), "{id}: {}", report.entry(id).unwrap().note);
        }
        assert!(report.entry(AxiomId::F1Join).unwrap().note.contains("3 elements"));
    }

    #[test]
    fn json_round_trip() {
        let c = ctx();
        let f = FinMap::new(FinSet::new(["p", "q"]).unwrap(), FinSet::range(3), vec![2, 0]).unwrap();
        let back = c.mor_from_json(&c.mor_to_json(&f)).unwrap();
        assert_eq!(back, f);
        assert!(c.obj_from_json(&json!({"lables": []})).is_err());
    }
}
