use std::path::Path;

use serde_json::{json, Value};

use cellforge::cells::{build_tower, verify_simplicial_identities, CellTower, CosimplicialFunctor};
use cellforge::complexes::{asc_to_sset, gsc_colimit, gsc_to_asc, realize, Asc, GscDiagram};
use cellforge::homology::{asc_chain_complex, homology_groups, homology_to_json, induced_map_on_homology, nerve_homology};
use cellforge::homotopy::{are_homotopic, verify_convexity, ConeRecipe, Orientation};
use cellforge::kernel::{audit_axioms, Verdict};
use cellforge::{BackendTag, Context};

use crate::{Command, Failure, Outcome, RunConfig};

pub fn dispatch<C: Context>(ctx: &C, cfg: &RunConfig, cmd: &Command) -> Result<Outcome, Failure> {
    let (name, mut out) = match cmd {
        Command::Cells => ("cells", cells(ctx, cfg)?),
        Command::Verify { depth } => ("verify", verify(ctx, cfg, *depth)?),
        Command::Audit => ("audit", audit(ctx, cfg)?),
        Command::Homology { object, max_degree } => ("homology", homology(ctx, cfg, object, *max_degree)?),
        Command::Realize { file } => ("realize", realize_file(ctx, cfg, file)?),
        Command::Homotopy { f, g, max_degree } => ("homotopy", homotopy(ctx, cfg, f, g, *max_degree)?),
    };
    let mut run = json!({
        "command": name,
        "backend": ctx.tag().to_string(),
        "n": cfg.n,
        "budget": cfg.budget,
        "seed": cfg.seed,
    });
    if ctx.tag() == BackendTag::SSet {
        run["dim"] = json!(cfg.dim);
    }
    out.report["run"] = run;
    out.report["passed"] = json!(out.passed);
    Ok(out)
}

fn tower<C: Context>(ctx: &C, cfg: &RunConfig, height: usize) -> Result<CellTower<C>, Failure> {
    Ok(build_tower(ctx, &ctx.witnesses(), height, cfg.budget)?)
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn cells<C: Context>(ctx: &C, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let t = tower(ctx, cfg, cfg.n)?;
    let sizes: Vec<Value> = t.cells().iter().map(|x| json!(ctx.size_profile(x))).collect();
    Ok(Outcome { report: json!({ "tower": t.to_json(), "sizes": sizes }), passed: true })
}

fn verify<C: Context>(ctx: &C, cfg: &RunConfig, depth: Option<usize>) -> Result<Outcome, Failure> {
    let t = tower(ctx, cfg, cfg.n)?;
    let identities = verify_simplicial_identities(&t)?;
    let depth = depth.unwrap_or(3).min(cfg.n - 1);
    let cf = CosimplicialFunctor::new(t);
    let convexity = verify_convexity(&cf, depth, Orientation::Trailing, ConeRecipe::Top, cfg.budget)?;
    let passed = identities.all_passed() && convexity.all_passed() && convexity.consistent;
    Ok(Outcome {
        report: json!({
            "identities": identities.to_json(ctx),
            "convexity": convexity.to_json(),
        }),
        passed,
    })
}

fn audit<C: Context>(ctx: &C, cfg: &RunConfig) -> Result<Outcome, Failure> {
    let report = audit_axioms(ctx, &ctx.witnesses(), cfg.budget);
    if report.entries.iter().any(|e| e.verdict == Verdict::Inconclusive) {
        return Err(Failure::Budget(format!("audit inconclusive within a budget of {}", cfg.budget)));
    }
    let passed = report.entries.iter().all(|e| e.verdict == Verdict::Pass);
    Ok(Outcome { report: json!({ "audit": report.to_json(ctx) }), passed })
}

fn homology<C: Context>(ctx: &C, cfg: &RunConfig, object: &Path, max_degree: usize) -> Result<Outcome, Failure> {
    let x = ctx.obj_from_json(&read_json(object)?)?;
    let cf = CosimplicialFunctor::new(tower(ctx, cfg, cfg.n.max(max_degree + 1))?);
    let groups = nerve_homology(&cf, &x, max_degree, cfg.budget)?;
    Ok(Outcome {
        report: json!({
            "object": ctx.describe(&x),
            "homology": homology_to_json(&groups),
            "pretty": groups.iter().map(|g| g.pretty()).collect::<Vec<_>>(),
        }),
        passed: true,
    })
}

fn realize_file<C: Context>(ctx: &C, cfg: &RunConfig, file: &Path) -> Result<Outcome, Failure> {
    let v = read_json(file)?;
    let (asc, vertex, sizes) = if v.get("levels").is_some() {
        let g = GscDiagram::from_json(&v)?;
        let t = tower(ctx, cfg, cfg.n.max(g.height()))?;
        let colim = gsc_colimit(&t, &g)?;
        let sizes = ctx.size_profile(&colim.vertex);
        (gsc_to_asc(&g)?, colim.vertex, sizes)
    } else if v.get("faces").is_some() {
        let a = Asc::from_json(&v)?;
        let top = a.dimension().unwrap_or(0);
        let x = asc_to_sset(&a, cfg.dim.max(top))?;
        let cf = CosimplicialFunctor::new(tower(ctx, cfg, cfg.n.max(top))?);
        let r = realize(&cf, &x)?;
        let sizes = ctx.size_profile(&r.vertex);
        (a, r.vertex, sizes)
    } else {
        return Err(Failure::Input(format!("{}: expected \"faces\" or \"levels\"", file.display())));
    };
    let top = asc.dimension().unwrap_or(0);
    let groups = homology_groups(&asc_chain_complex(&asc)?, top)?;
    Ok(Outcome {
        report: json!({
            "object": ctx.obj_to_json(&vertex),
            "sizes": sizes,
            "complex": asc.to_json(),
            "homology": homology_to_json(&groups),
        }),
        passed: true,
    })
}

fn homotopy<C: Context>(ctx: &C, cfg: &RunConfig, f: &Path, g: &Path, max_degree: usize) -> Result<Outcome, Failure> {
    let f = ctx.mor_from_json(&read_json(f)?)?;
    let g = ctx.mor_from_json(&read_json(g)?)?;
    let w = ctx.witnesses();
    let Some(hw) = are_homotopic(ctx, &w, &f, &g, cfg.budget)? else {
        return Ok(Outcome { report: json!({ "homotopic": false }), passed: false });
    };
    let cf = CosimplicialFunctor::new(tower(ctx, cfg, cfg.n.max(max_degree + 1))?);
    let hf = induced_map_on_homology(&cf, &f, max_degree, cfg.budget)?;
    let hg = induced_map_on_homology(&cf, &g, max_degree, cfg.budget)?;
    let agree = hf.matrices == hg.matrices;
    Ok(Outcome {
        report: json!({
            "homotopic": true,
            "witness": ctx.mor_to_json(&hw.h),
            "induced_f": hf.to_json(),
            "induced_g": hg.to_json(),
            "induced_agree": agree,
        }),
        passed: agree,
    })
}
