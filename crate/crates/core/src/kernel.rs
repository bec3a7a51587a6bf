//! The context-category contract every backend implements, plus the axiom
//! auditor.

use std::fmt::{self, Debug};
use std::hash::Hash;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CellError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BackendTag {
    FinSet,
    SSet,
}

impl fmt::Display for BackendTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BackendTag::FinSet => f.write_str("finset"),
            BackendTag::SSet => f.write_str("sset"),
        }
    }
}

/// Limits for a backtracking search over morphisms.
///
/// `budget` counts candidate assignments tried, never wall-clock time, so
/// every search is deterministic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub budget: u64,
    /// Stop after this many solutions.
    pub limit: usize,
    /// Only accept morphisms that are injective in every degree.
    pub injective: bool,
}

impl SearchOptions {
    pub fn all(budget: u64) -> Self {
        SearchOptions { budget, limit: usize::MAX, injective: false }
    }

    pub fn first(budget: u64) -> Self {
        SearchOptions { budget, limit: 1, injective: false }
    }

    pub fn up_to(budget: u64, limit: usize) -> Self {
        SearchOptions { budget, limit, injective: false }
    }
}

/// Requirement `h ∘ along = value` on a morphism `h` being searched for.
#[derive(Clone, Debug)]
pub struct Constraint<C: Context> {
    pub along: C::Mor,
    pub value: C::Mor,
}

impl<C: Context> Constraint<C> {
    pub fn new(along: C::Mor, value: C::Mor) -> Self {
        Constraint { along, value }
    }
}

#[derive(Clone, Debug)]
pub struct Span<C: Context> {
    pub apex: C::Obj,
    pub left: C::Mor,
    pub right: C::Mor,
}

#[derive(Clone, Debug)]
pub struct PushoutData<C: Context> {
    pub span: Span<C>,
    pub vertex: C::Obj,
    pub inj_left: C::Mor,
    pub inj_right: C::Mor,
}

#[derive(Clone, Debug)]
pub struct ProductData<C: Context> {
    pub vertex: C::Obj,
    pub proj1: C::Mor,
    pub proj2: C::Mor,
}

#[derive(Clone, Debug)]
pub struct CoproductData<C: Context> {
    pub summands: Vec<C::Obj>,
    pub vertex: C::Obj,
    pub injections: Vec<C::Mor>,
}

/// A finitely computable category with terminal object, finite products,
/// pushouts and finite coproducts.
///
/// Morphism equality is extensional: two morphisms are equal when they have
/// the same endpoints and the same mapping tables.
pub trait Context: Clone + Debug + Send + Sync {
    type Obj: Clone + Debug + Eq + Send + Sync;
    type Mor: Clone + Debug + Eq + Hash + Send + Sync;

    fn tag(&self) -> BackendTag;

    fn dom(&self, f: &Self::Mor) -> Self::Obj;
    fn cod(&self, f: &Self::Mor) -> Self::Obj;
    fn identity(&self, x: &Self::Obj) -> Self::Mor;
    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    fn terminal(&self) -> Self::Obj;
    fn initial(&self) -> Self::Obj;
    fn terminal_morphism(&self, x: &Self::Obj) -> Self::Mor;
    fn initial_morphism(&self, x: &Self::Obj) -> Self::Mor;

    fn product(&self, a: &Self::Obj, b: &Self::Obj) -> Result<ProductData<Self>>;
    fn pair(&self, f: &Self::Mor, g: &Self::Mor, p: &ProductData<Self>) -> Result<Self::Mor>;

    fn coproduct(&self, objs: &[Self::Obj]) -> Result<CoproductData<Self>>;
    fn copair(&self, c: &CoproductData<Self>, legs: &[Self::Mor]) -> Result<Self::Mor>;

    fn pushout(&self, s: &Span<Self>) -> Result<PushoutData<Self>>;
    fn factor_through_pushout(
        &self,
        p: &PushoutData<Self>,
        left: &Self::Mor,
        right: &Self::Mor,
    ) -> Result<Self::Mor>;

    /// Every morphism `dom → cod` satisfying all constraints, in a
    /// deterministic order, up to `opts.limit` of them.
    fn search(
        &self,
        dom: &Self::Obj,
        cod: &Self::Obj,
        constraints: &[Constraint<Self>],
        opts: SearchOptions,
    ) -> Result<Vec<Self::Mor>>;

    fn is_monic(&self, f: &Self::Mor) -> bool;
    fn is_iso(&self, f: &Self::Mor) -> bool;

    /// Element counts (per degree, where the backend has degrees).
    fn size_profile(&self, x: &Self::Obj) -> Vec<usize>;
    /// Short human-readable summary of an object.
    fn describe(&self, x: &Self::Obj) -> String;

    fn witnesses(&self) -> AxiomWitnesses<Self>;

    fn obj_to_json(&self, x: &Self::Obj) -> Value;
    fn mor_to_json(&self, f: &Self::Mor) -> Value;
    fn obj_from_json(&self, v: &Value) -> Result<Self::Obj>;
    fn mor_from_json(&self, v: &Value) -> Result<Self::Mor>;

    fn equal_morphisms(&self, f: &Self::Mor, g: &Self::Mor) -> Result<bool> {
        if self.dom(f) != self.dom(g) || self.cod(f) != self.cod(g) {
            return Err(CellError::mismatch("equal_morphisms: morphisms are not parallel"));
        }
        Ok(f == g)
    }
}

/// `pt ∘ !_x`, the constant endomorphism-style map `x → cod(pt)`.
pub fn constant<C: Context>(ctx: &C, x: &C::Obj, pt: &C::Mor) -> Result<C::Mor> {
    ctx.compose(pt, &ctx.terminal_morphism(x))
}

/// `f × g : a × b → c × d`.
pub fn product_map<C: Context>(
    ctx: &C,
    f: &C::Mor,
    g: &C::Mor,
    source: &ProductData<C>,
    target: &ProductData<C>,
) -> Result<C::Mor> {
    let left = ctx.compose(f, &source.proj1)?;
    let right = ctx.compose(g, &source.proj2)?;
    ctx.pair(&left, &right, target)
}

/// The end inclusion `X ≅ X × 1 → X × I` at the endpoint `end: 1 → I`.
pub fn cylinder_end<C: Context>(
    ctx: &C,
    x: &C::Obj,
    cylinder: &ProductData<C>,
    end: &C::Mor,
) -> Result<C::Mor> {
    ctx.pair(&ctx.identity(x), &constant(ctx, x, end)?, cylinder)
}

pub fn hom<C: Context>(ctx: &C, a: &C::Obj, b: &C::Obj, budget: u64) -> Result<Vec<C::Mor>> {
    ctx.search(a, b, &[], SearchOptions::all(budget))
}

/// The points `1 → x`.
pub fn points<C: Context>(ctx: &C, x: &C::Obj, budget: u64) -> Result<Vec<C::Mor>> {
    hom(ctx, &ctx.terminal(), x, budget)
}

/// Two-sided inverse of `f`, if one exists.
pub fn inverse<C: Context>(ctx: &C, f: &C::Mor, budget: u64) -> Result<Option<C::Mor>> {
    let (a, b) = (ctx.dom(f), ctx.cod(f));
    let found = ctx.search(&b, &a, &[Constraint::new(f.clone(), ctx.identity(&a))], SearchOptions::first(budget))?;
    Ok(found.into_iter().find(|g| {
        ctx.compose(f, g).map(|fg| fg == ctx.identity(&b)).unwrap_or(false)
    }))
}

/// Bounded search for an isomorphism `a → b`; the witness is returned.
pub fn find_isomorphism<C: Context>(
    ctx: &C,
    a: &C::Obj,
    b: &C::Obj,
    budget: u64,
) -> Result<Option<C::Mor>> {
    if ctx.size_profile(a) != ctx.size_profile(b) {
        return Ok(None);
    }
    let opts = SearchOptions { budget, limit: 1, injective: true };
    let found = ctx.search(a, b, &[], opts)?;
    Ok(found.into_iter().find(|f| ctx.is_iso(f)))
}

/// Morphisms `u` out of a pushout vertex with `u ∘ inj_left = left` and
/// `u ∘ inj_right = right`, found by exhaustive search (at most two are
/// reported). Used to test uniqueness independently of the factorization.
pub fn pushout_factorizations<C: Context>(
    ctx: &C,
    p: &PushoutData<C>,
    left: &C::Mor,
    right: &C::Mor,
    budget: u64,
) -> Result<Vec<C::Mor>> {
    let target = ctx.cod(left);
    ctx.search(
        &p.vertex,
        &target,
        &[
            Constraint::new(p.inj_left.clone(), left.clone()),
            Constraint::new(p.inj_right.clone(), right.clone()),
        ],
        SearchOptions::up_to(budget, 2),
    )
}

// ---------------------------------------------------------------------------
// Axiom witnesses and the auditor

#[derive(Clone, Debug)]
pub struct JoinStructure<C: Context> {
    pub left: C::Mor,
    pub right: C::Mor,
    pub mid: C::Mor,
}

/// The data a backend supplies so that cells can be generated: the interval
/// `F_1` with its endpoints, and optional swap, join and contraction
/// morphisms.
#[derive(Clone, Debug)]
pub struct AxiomWitnesses<C: Context> {
    pub terminal: C::Obj,
    pub interval: C::Obj,
    pub endpoint0: C::Mor,
    pub endpoint1: C::Mor,
    pub swap: Option<C::Mor>,
    /// Distinguished point of the interval, the first centroid.
    pub basepoint: C::Mor,
    pub join: Option<JoinStructure<C>>,
    /// `F_1 × F_1 → F_1`, identity at endpoint 0 and constant at the
    /// basepoint at endpoint 1.
    pub contraction: Option<C::Mor>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "A:C")]
    Category,
    #[serde(rename = "A:brace")]
    Brace,
    #[serde(rename = "A:swap")]
    Swap,
    #[serde(rename = "A:F1_join")]
    F1Join,
    #[serde(rename = "A:pushout")]
    Pushout,
    #[serde(rename = "A:1_0_cell")]
    ZeroCell,
    #[serde(rename = "A:1_contract")]
    OneContract,
}

impl AxiomId {
    pub const ALL: [AxiomId; 7] = [
        AxiomId::Category,
        AxiomId::Brace,
        AxiomId::Swap,
        AxiomId::F1Join,
        AxiomId::Pushout,
        AxiomId::ZeroCell,
        AxiomId::OneContract,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::Category => "A:C",
            AxiomId::Brace => "A:brace",
            AxiomId::Swap => "A:swap",
            AxiomId::F1Join => "A:F1_join",
            AxiomId::Pushout => "A:pushout",
            AxiomId::ZeroCell => "A:1_0_cell",
            AxiomId::OneContract => "A:1_contract",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct AxiomEntry<C: Context> {
    pub axiom: AxiomId,
    pub verdict: Verdict,
    pub evidence: Vec<C::Mor>,
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct AxiomReport<C: Context> {
    pub backend: BackendTag,
    pub entries: Vec<AxiomEntry<C>>,
}

impl<C: Context> AxiomReport<C> {
    pub fn verdict(&self, axiom: AxiomId) -> Option<Verdict> {
        self.entries.iter().find(|e| e.axiom == axiom).map(|e| e.verdict)
    }

    pub fn entry(&self, axiom: AxiomId) -> Option<&AxiomEntry<C>> {
        self.entries.iter().find(|e| e.axiom == axiom)
    }

    pub fn to_json(&self, ctx: &C) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                json!({
                    "axiom": e.axiom.name(),
                    "verdict": e.verdict,
                    "note": e.note,
                    "evidence": e.evidence.iter().map(|m| ctx.mor_to_json(m)).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({ "backend": self.backend, "axioms": entries })
    }
}

struct Outcome<C: Context> {
    verdict: Verdict,
    evidence: Vec<C::Mor>,
    note: String,
}

impl<C: Context> Outcome<C> {
    fn pass(note: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Pass, evidence: Vec::new(), note: note.into() }
    }
    fn fail(note: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Fail, evidence: Vec::new(), note: note.into() }
    }
    fn with(mut self, evidence: Vec<C::Mor>) -> Self {
        self.evidence = evidence;
        self
    }
}

/// Mechanically checks each axiom against the supplied witnesses.
///
/// Searches that run out of budget yield [`Verdict::Inconclusive`]; absent
/// optional witnesses yield a failing entry, never an error.
pub fn audit_axioms<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, budget: u64) -> AxiomReport<C> {
    let entries = AxiomId::ALL
        .iter()
        .map(|&axiom| {
            let outcome = match axiom {
                AxiomId::Category => audit_category(ctx, w, budget),
                AxiomId::Brace => audit_brace(ctx, w),
                AxiomId::Swap => audit_swap(ctx, w, budget),
                AxiomId::F1Join => audit_join(ctx, w, budget),
                AxiomId::Pushout => audit_pushout(ctx, w, budget),
                AxiomId::ZeroCell => audit_zero_cell(ctx, w, budget),
                AxiomId::OneContract => audit_contraction(ctx, w),
            };
            let outcome = outcome.unwrap_or_else(|e| match e {
                CellError::BudgetExhausted { .. } => Outcome {
                    verdict: Verdict::Inconclusive,
                    evidence: Vec::new(),
                    note: e.to_string(),
                },
                other => Outcome::fail(other.to_string()),
            });
            AxiomEntry { axiom, verdict: outcome.verdict, evidence: outcome.evidence, note: outcome.note }
        })
        .collect();
    AxiomReport { backend: ctx.tag(), entries }
}

fn audit_category<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, budget: u64) -> Result<Outcome<C>> {
    if w.terminal != ctx.terminal() {
        return Ok(Outcome::fail("witness terminal differs from the backend terminal"));
    }
    let square = ctx.product(&w.interval, &w.interval)?;
    for x in [w.terminal.clone(), w.interval.clone(), square.vertex.clone()] {
        let maps = hom(ctx, &x, &w.terminal, budget)?;
        if maps.len() != 1 || maps[0] != ctx.terminal_morphism(&x) {
            return Ok(Outcome::fail(format!(
                "{} morphisms from {} to the terminal object",
                maps.len(),
                ctx.describe(&x)
            )));
        }
    }
    // product universal property on the interval, probed from the interval
    let probes = hom(ctx, &w.interval, &w.interval, budget)?;
    let into_square = hom(ctx, &w.interval, &square.vertex, budget)?;
    for f in &probes {
        for g in &probes {
            let paired = ctx.pair(f, g, &square)?;
            let mut hits = 0;
            for u in &into_square {
                if &ctx.compose(&square.proj1, u)? == f && &ctx.compose(&square.proj2, u)? == g {
                    hits += 1;
                    if *u != paired {
                        return Ok(Outcome::fail("pairing differs from the unique solution"));
                    }
                }
            }
            if hits != 1 {
                return Ok(Outcome::fail(format!("{hits} morphisms satisfy the pairing equations")));
            }
        }
    }
    Ok(Outcome::pass(format!(
        "terminal unique; {} pairings into F_1 × F_1 exist uniquely",
        probes.len() * probes.len()
    )))
}

fn audit_brace<C: Context>(ctx: &C, w: &AxiomWitnesses<C>) -> Result<Outcome<C>> {
    for (name, e) in [("endpoint 0", &w.endpoint0), ("endpoint 1", &w.endpoint1)] {
        if ctx.dom(e) != w.terminal || ctx.cod(e) != w.interval {
            return Ok(Outcome::fail(format!("{name} is not a point of the interval")));
        }
    }
    Ok(Outcome::pass(format!("interval {} with two endpoints", ctx.describe(&w.interval)))
        .with(vec![w.endpoint0.clone(), w.endpoint1.clone()]))
}

fn audit_swap<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, budget: u64) -> Result<Outcome<C>> {
    let Some(swap) = &w.swap else {
        return Ok(Outcome::fail("witness absent"));
    };
    if ctx.dom(swap) != w.interval || ctx.cod(swap) != w.interval {
        return Ok(Outcome::fail("swap is not an endomorphism of the interval"));
    }
    if ctx.compose(swap, &w.endpoint0)? != w.endpoint1 {
        return Ok(Outcome::fail("swap ∘ endpoint 0 ≠ endpoint 1").with(vec![swap.clone()]));
    }
    if ctx.compose(swap, swap)? != ctx.identity(&w.interval) {
        return Ok(Outcome::fail("swap ∘ swap ≠ identity").with(vec![swap.clone()]));
    }
    if inverse(ctx, swap, budget)?.is_none() {
        return Ok(Outcome::fail("swap is not invertible"));
    }
    Ok(Outcome::pass("swap exchanges the endpoints and is an involution").with(vec![swap.clone()]))
}

fn audit_join<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, budget: u64) -> Result<Outcome<C>> {
    let span = Span { apex: w.terminal.clone(), left: w.endpoint0.clone(), right: w.endpoint1.clone() };
    let p = ctx.pushout(&span)?;
    let evidence = vec![p.inj_left.clone(), p.inj_right.clone()];
    let joined = ctx.describe(&p.vertex);
    let interval = ctx.describe(&w.interval);
    if let Some(join) = &w.join {
        let mid_left = ctx.compose(&join.left, &w.endpoint0)?;
        let mid_right = ctx.compose(&join.right, &w.endpoint1)?;
        if mid_left != join.mid || mid_right != join.mid {
            return Ok(Outcome::fail("join square does not commute with mid").with(evidence));
        }
        let u = ctx.factor_through_pushout(&p, &join.left, &join.right)?;
        return Ok(if ctx.is_iso(&u) {
            Outcome::pass("join witness factors as an isomorphism").with(vec![u])
        } else {
            Outcome::fail(format!("join vertex {joined} is not F_1 = {interval} via the witness")).with(evidence)
        });
    }
    if ctx.size_profile(&p.vertex) != ctx.size_profile(&w.interval) {
        return Ok(Outcome::fail(format!("join vertex {joined} is not isomorphic to F_1 = {interval}"))
            .with(evidence));
    }
    // any isomorphism must carry the glued point somewhere; the basepoint is
    // the designated mid-point
    let glued = ctx.compose(&p.inj_left, &w.endpoint0)?;
    let opts = SearchOptions { budget, limit: 1, injective: true };
    let iso = ctx.search(
        &p.vertex,
        &w.interval,
        &[Constraint::new(glued, w.basepoint.clone())],
        opts,
    )?;
    match iso.into_iter().find(|f| ctx.is_iso(f)) {
        Some(f) => Ok(Outcome::pass("join vertex is isomorphic to F_1 fixing the mid-point").with(vec![f])),
        None => Ok(Outcome::fail(format!("no isomorphism from the join vertex {joined} to F_1 fixes the mid-point"))
            .with(evidence)),
    }
}

fn audit_pushout<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, budget: u64) -> Result<Outcome<C>> {
    let interval_sq = ctx.product(&w.interval, &w.interval)?;
    let top = cylinder_end(ctx, &w.interval, &interval_sq, &w.endpoint1)?;
    let wedge_span = Span {
        apex: w.interval.clone(),
        left: ctx.terminal_morphism(&w.interval),
        right: top,
    };
    let join_span = Span { apex: w.terminal.clone(), left: w.endpoint0.clone(), right: w.endpoint1.clone() };
    let mut checked = 0usize;
    for span in [join_span, wedge_span] {
        let p = ctx.pushout(&span)?;
        let l = ctx.compose(&p.inj_left, &span.left)?;
        let r = ctx.compose(&p.inj_right, &span.right)?;
        if l != r {
            return Ok(Outcome::fail("pushout square does not commute"));
        }
        let lcod = ctx.cod(&span.left);
        let rcod = ctx.cod(&span.right);
        let lefts = hom(ctx, &lcod, &w.interval, budget)?;
        let rights = hom(ctx, &rcod, &w.interval, budget)?;
        for a in &lefts {
            for b in &rights {
                if ctx.compose(a, &span.left)? != ctx.compose(b, &span.right)? {
                    continue;
                }
                let u = ctx.factor_through_pushout(&p, a, b)?;
                let all = pushout_factorizations(ctx, &p, a, b, budget)?;
                if all.len() != 1 || all[0] != u {
                    return Ok(Outcome::fail(format!("{} factorizations of a cocone", all.len())));
                }
                checked += 1;
            }
        }
    }
    Ok(Outcome::pass(format!("{checked} cocones into F_1 factor uniquely")))
}

fn audit_zero_cell<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, budget: u64) -> Result<Outcome<C>> {
    let ends = hom(ctx, &w.terminal, &w.terminal, budget)?;
    if ends.len() == 1 && ends[0] == ctx.identity(&w.terminal) {
        Ok(Outcome::pass("F_0 is the terminal object"))
    } else {
        Ok(Outcome::fail("F_0 has non-identity endomorphisms"))
    }
}

fn audit_contraction<C: Context>(ctx: &C, w: &AxiomWitnesses<C>) -> Result<Outcome<C>> {
    let Some(c) = &w.contraction else {
        return Ok(Outcome::fail("witness absent"));
    };
    let sq = ctx.product(&w.interval, &w.interval)?;
    if ctx.dom(c) != sq.vertex || ctx.cod(c) != w.interval {
        return Ok(Outcome::fail("contraction is not a map F_1 × F_1 → F_1"));
    }
    let at0 = ctx.compose(c, &cylinder_end(ctx, &w.interval, &sq, &w.endpoint0)?)?;
    let at1 = ctx.compose(c, &cylinder_end(ctx, &w.interval, &sq, &w.endpoint1)?)?;
    if at0 != ctx.identity(&w.interval) {
        return Ok(Outcome::fail("contraction is not the identity at endpoint 0").with(vec![c.clone()]));
    }
    if at1 != constant(ctx, &w.interval, &w.basepoint)? {
        return Ok(Outcome::fail("contraction is not constant at the basepoint at endpoint 1").with(vec![c.clone()]));
    }
    Ok(Outcome::pass("contraction restricts to identity and to the constant basepoint").with(vec![c.clone()]))
}
