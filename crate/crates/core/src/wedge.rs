//! The wedge construction `W(X)`: the cylinder `X × F_1` with its far end
//! collapsed to a point.

use crate::error::{CellError, Result};
use crate::kernel::{
    constant, cylinder_end, AxiomWitnesses, Constraint, Context, ProductData, PushoutData,
    SearchOptions, Span,
};

#[derive(Clone, Debug)]
pub struct WedgeData<C: Context> {
    pub input: C::Obj,
    pub vertex: C::Obj,
    /// `1 → W(X)`, the collapsed end.
    pub top: C::Mor,
    /// `X × F_1 → W(X)`.
    pub pinch: C::Mor,
    /// `X → W(X)`, the uncollapsed end.
    pub bottom: C::Mor,
    pub cylinder: ProductData<C>,
    pub pushout: PushoutData<C>,
}

pub fn wedge_object<C: Context>(ctx: &C, w: &AxiomWitnesses<C>, x: &C::Obj) -> Result<WedgeData<C>> {
    let cylinder = ctx.product(x, &w.interval)?;
    let far_end = cylinder_end(ctx, x, &cylinder, &w.endpoint1)?;
    let span = Span { apex: x.clone(), left: ctx.terminal_morphism(x), right: far_end.clone() };
    let pushout = ctx.pushout(&span)?;
    let top = pushout.inj_left.clone();
    let pinch = pushout.inj_right.clone();
    let bottom = ctx.compose(&pinch, &cylinder_end(ctx, x, &cylinder, &w.endpoint0)?)?;
    if ctx.compose(&pinch, &far_end)? != ctx.compose(&top, &ctx.terminal_morphism(x))? {
        return Err(CellError::Invariant("wedge square does not commute".into()));
    }
    Ok(WedgeData { input: x.clone(), vertex: pushout.vertex.clone(), top, pinch, bottom, cylinder, pushout })
}

/// `W(φ)` for `φ: a → b`, the factorization of `(Top_b, Pinch_b ∘ (φ × F_1))`.
pub fn wedge_morphism<C: Context>(ctx: &C, phi: &C::Mor, wa: &WedgeData<C>, wb: &WedgeData<C>) -> Result<C::Mor> {
    if ctx.dom(phi) != wa.input || ctx.cod(phi) != wb.input {
        return Err(CellError::mismatch("wedge_morphism: φ does not run between the wedge inputs"));
    }
    let along = ctx.compose(phi, &wa.cylinder.proj1)?;
    let moved = ctx.pair(&along, &wa.cylinder.proj2, &wb.cylinder)?;
    let right = ctx.compose(&wb.pinch, &moved)?;
    ctx.factor_through_pushout(&wa.pushout, &wb.top, &right)
}

/// True when `h: X × F_1 → X` is the identity at endpoint 0 and constant at
/// `pt` at endpoint 1.
pub fn is_contraction<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    x: &C::Obj,
    cylinder: &ProductData<C>,
    h: &C::Mor,
    pt: &C::Mor,
) -> Result<bool> {
    if ctx.dom(h) != cylinder.vertex || ctx.cod(h) != *x || ctx.cod(pt) != *x {
        return Ok(false);
    }
    let near = ctx.compose(h, &cylinder_end(ctx, x, cylinder, &w.endpoint0)?)?;
    let far = ctx.compose(h, &cylinder_end(ctx, x, cylinder, &w.endpoint1)?)?;
    Ok(near == ctx.identity(x) && far == constant(ctx, x, pt)?)
}

/// First contraction `X × F_1 → X` onto `pt` found by exhaustive search.
pub fn search_contraction<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    x: &C::Obj,
    pt: &C::Mor,
    budget: u64,
) -> Result<Option<(ProductData<C>, C::Mor)>> {
    let cylinder = ctx.product(x, &w.interval)?;
    let near = cylinder_end(ctx, x, &cylinder, &w.endpoint0)?;
    let far = cylinder_end(ctx, x, &cylinder, &w.endpoint1)?;
    let found = ctx.search(
        &cylinder.vertex,
        x,
        &[Constraint::new(near, ctx.identity(x)), Constraint::new(far, constant(ctx, x, pt)?)],
        SearchOptions::first(budget),
    )?;
    Ok(found.into_iter().next().map(|h| (cylinder, h)))
}

/// The unique `u: W(X) → X` with `u ∘ Bottom = id` and `u ∘ Top = pt`.
///
/// Fails with [`CellError::NotUnique`] when the two conditions leave `u`
/// undetermined, which happens whenever the cylinder has simplices off both
/// ends.
pub fn flatten_at_point<C: Context>(
    ctx: &C,
    x: &C::Obj,
    pt: &C::Mor,
    wd: &WedgeData<C>,
    budget: u64,
) -> Result<C::Mor> {
    if *x != wd.input || ctx.cod(pt) != *x || ctx.dom(pt) != ctx.terminal() {
        return Err(CellError::mismatch("flatten_at_point: point or wedge input"));
    }
    let found = ctx.search(
        &wd.vertex,
        x,
        &[Constraint::new(wd.bottom.clone(), ctx.identity(x)), Constraint::new(wd.top.clone(), pt.clone())],
        SearchOptions::up_to(budget, 2),
    )?;
    match found.len() {
        0 => Err(CellError::NoSolution("no map flattens the wedge onto the point".into())),
        1 => Ok(found.into_iter().next().unwrap()),
        _ => Err(CellError::NotUnique("several maps flatten the wedge onto the point".into())),
    }
}

/// `Flatten_X`, the factorization of `(pt, contraction)` through the wedge
/// pushout; a left inverse of `Bottom_X`.
pub fn flatten_contractible<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    x: &C::Obj,
    contraction: &C::Mor,
    pt: &C::Mor,
    wd: &WedgeData<C>,
) -> Result<C::Mor> {
    if *x != wd.input {
        return Err(CellError::mismatch("flatten_contractible: wedge input"));
    }
    if !is_contraction(ctx, w, x, &wd.cylinder, contraction, pt)? {
        return Err(CellError::InvalidInput("contraction does not restrict to id and the constant point".into()));
    }
    ctx.factor_through_pushout(&wd.pushout, pt, contraction)
}

/// Contraction of `W(Y)` onto `Top_Y`: a point `(y, s)` of the cylinder
/// slides to `(y, c(s, t))` where `c` is the interval's own contraction.
pub fn cone_contraction<C: Context>(
    ctx: &C,
    w: &AxiomWitnesses<C>,
    wd: &WedgeData<C>,
    budget: u64,
) -> Result<(ProductData<C>, C::Mor)> {
    let c = w
        .contraction
        .as_ref()
        .ok_or_else(|| CellError::InvalidInput("interval contraction witness absent".into()))?;
    let interval_sq = ctx.product(&w.interval, &w.interval)?;
    let outer = ctx.product(&wd.vertex, &w.interval)?;
    // (Y × F_1) × F_1
    let prism = ctx.product(&wd.cylinder.vertex, &w.interval)?;
    let i1 = ctx.pair(&ctx.compose(&wd.pinch, &prism.proj1)?, &prism.proj2, &outer)?;
    let y = ctx.compose(&wd.cylinder.proj1, &prism.proj1)?;
    let s = ctx.compose(&wd.cylinder.proj2, &prism.proj1)?;
    let slid = ctx.compose(c, &ctx.pair(&s, &prism.proj2, &interval_sq)?)?;
    let h1 = ctx.compose(&wd.pinch, &ctx.pair(&y, &slid, &wd.cylinder)?)?;
    // 1 × F_1
    let apex_line = ctx.product(&ctx.terminal(), &w.interval)?;
    let i2 = ctx.pair(&ctx.compose(&wd.top, &apex_line.proj1)?, &apex_line.proj2, &outer)?;
    let h2 = constant(ctx, &apex_line.vertex, &wd.top)?;
    let found = ctx.search(
        &outer.vertex,
        &wd.vertex,
        &[Constraint::new(i1, h1), Constraint::new(i2, h2)],
        SearchOptions::up_to(budget, 2),
    )?;
    let h = match found.len() {
        1 => found.into_iter().next().unwrap(),
        0 => return Err(CellError::NoSolution("the cone contraction does not glue".into())),
        _ => return Err(CellError::NotUnique("the cone contraction is underdetermined".into())),
    };
    if !is_contraction(ctx, w, &wd.vertex, &outer, &h, &wd.top)? {
        return Err(CellError::Invariant("cone contraction has the wrong ends".into()));
    }
    Ok((outer, h))
}
