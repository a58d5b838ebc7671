use std::fs;
use std::path::{Path, PathBuf};

use isores::determinant::{sweep_csv, Determinant, DeterminantConfig};
use isores::invariants::{fit_heat_coefficients, heat_invariant, verify_invariants_equal, HeatTrace, InvariantVector, DEFAULT_SPACING};
use isores::potential::{inequality_report, Bump, Potential};
use isores::resonance::{compare_resonance_sets, locate_resonances, SearchRegion};
use isores::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::config::{Command, RunConfig, SweepGrid};
use crate::CliError;

struct Ctx {
    cfg: RunConfig,
    base: PathBuf,
    out: PathBuf,
    verbose: bool,
}

impl Ctx {
    fn log(&self, msg: impl AsRef<str>) {
        if self.verbose {
            eprintln!("{}", msg.as_ref());
        }
    }

    fn load(&self, p: &Path) -> Result<Potential<f64>, CliError> {
        let path = self.base.join(p);
        let text = fs::read_to_string(&path)
            .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))?;
        Potential::from_json(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
    }

    fn potentials(&self) -> Result<Vec<(String, Potential<f64>)>, CliError> {
        self.cfg.potentials.iter().map(|p| Ok((p.display().to_string(), self.load(p)?))).collect()
    }

    fn det_config(&self) -> DeterminantConfig {
        DeterminantConfig { nodes: self.cfg.nodes, ell_max: self.cfg.ell_max, ..DeterminantConfig::default() }
    }

    fn region(&self) -> SearchRegion {
        self.cfg.region.expect("validated")
    }

    fn write(&self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.out.join(name);
        fs::write(&path, contents).map_err(|e| CliError::Validation(format!("cannot write {}: {e}", path.display())))?;
        self.log(format!("wrote {}", path.display()));
        Ok(())
    }

    fn write_json(&self, name: &str, mut report: Value) -> Result<(), CliError> {
        let mut cfg = serde_json::to_value(&self.cfg).expect("config serializes");
        cfg["output"] = json!(self.out.display().to_string());
        report["config"] = cfg;
        let mut text = serde_json::to_string_pretty(&report).expect("reports serialize");
        text.push('\n');
        self.write(name, &text)
    }
}

pub fn run(config: &Path, output: Option<&Path>, verbose: bool) -> Result<(), CliError> {
    let cfg = RunConfig::load(config)?;
    let base = config.parent().map(Path::to_path_buf).unwrap_or_default();
    cfg.validate(&base)?;
    let out = match (output, &cfg.output) {
        (Some(o), _) => o.to_path_buf(),
        (None, Some(o)) => base.join(o),
        (None, None) => PathBuf::from("."),
    };
    fs::create_dir_all(&out).map_err(|e| CliError::Validation(format!("cannot create {}: {e}", out.display())))?;
    let ctx = Ctx { cfg, base, out, verbose };
    match ctx.cfg.command {
        Command::Resonances => resonances(&ctx),
        Command::Invariants => invariants(&ctx),
        Command::Compare => compare(&ctx),
        Command::Sobolev => sobolev(&ctx),
        Command::HeatTrace => heat_trace(&ctx),
        Command::DetSweep => det_sweep(&ctx),
    }
}

fn resonances(ctx: &Ctx) -> Result<(), CliError> {
    let (name, v) = ctx.potentials()?.remove(0);
    ctx.log(format!("searching {name} in {:?}", ctx.region()));
    let set = locate_resonances(&v, &ctx.region(), ctx.cfg.tol, ctx.det_config())?;
    ctx.log(format!("{} resonances, total multiplicity {}", set.len(), set.total_multiplicity()));
    ctx.write("resonances.csv", &set.to_csv())?;
    ctx.write_json(
        "resonances.json",
        json!({ "potential": name, "winding": set.winding, "resonances": set.to_json_value() }),
    )
}

fn invariants(ctx: &Ctx) -> Result<(), CliError> {
    let mut reports = Vec::new();
    for (name, v) in ctx.potentials()? {
        ctx.log(format!("invariants of {name} up to j = {}", ctx.cfg.j_max));
        let inv = InvariantVector::compute(&v, ctx.cfg.j_max)?;
        reports.push(json!({ "potential": name, "invariants": inv.to_json_value() }));
    }
    ctx.write_json("invariants.json", json!({ "reports": reports }))
}

fn compare(ctx: &Ctx) -> Result<(), CliError> {
    let pots = ctx.potentials()?;
    let sets = pots
        .iter()
        .map(|(name, v)| {
            ctx.log(format!("searching {name}"));
            locate_resonances(v, &ctx.region(), ctx.cfg.tol, ctx.det_config())
        })
        .collect::<Result<Vec<_>, _>>()?;
    let iso = compare_resonance_sets(&sets[0], &sets[1], ctx.cfg.match_tol);
    ctx.log(format!("iso-resonant: {}", iso.iso_resonant));
    let smooth = pots.iter().all(|(_, v)| v.is_smooth() || v.is_zero());
    let jmax = if smooth { ctx.cfg.j_max } else { ctx.cfg.j_max.min(2) };
    let inv = verify_invariants_equal(&pots[0].1, &pots[1].1, jmax, 1e-10)?;
    let matched: Vec<Value> = iso.matched.iter().map(|&(a, b, d)| json!({ "a": a, "b": b, "distance": d })).collect();
    ctx.write_json(
        "compare.json",
        json!({
            "potentials": [pots[0].0, pots[1].0],
            "iso_resonant": iso.iso_resonant,
            "matched": matched,
            "unmatched_a": iso.unmatched_a,
            "unmatched_b": iso.unmatched_b,
            "max_distance": iso.max_distance,
            "resonances": [sets[0].to_json_value(), sets[1].to_json_value()],
            "invariants": inv,
        }),
    )
}

/// Bump sum on the line with one to three bumps inside [−R, R].
fn random_bump_sum(rng: &mut ChaCha8Rng) -> Result<Potential<f64>, CliError> {
    let radius: f64 = rng.gen_range(0.5..2.0);
    let count = rng.gen_range(1..=3);
    let bumps = (0..count)
        .map(|_| {
            let width = rng.gen_range(0.2 * radius..radius);
            let center = rng.gen_range(-(radius - width)..=(radius - width));
            Bump::new(rng.gen_range(-5.0..5.0), center, width)
        })
        .collect();
    Ok(Potential::bump_sum(1, bumps, radius)?)
}

fn sobolev(ctx: &Ctx) -> Result<(), CliError> {
    let mut pots = ctx.potentials()?;
    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
    for i in 0..ctx.cfg.random_potentials {
        pots.push((format!("random[{i}]"), random_bump_sum(&mut rng)?));
    }
    let mut reports = Vec::new();
    let mut failures = Vec::new();
    for (name, v) in &pots {
        for j in 3..=ctx.cfg.j_max.max(3) {
            let r = inequality_report(v, j)?;
            if !r.all_hold() {
                failures.push(format!("{name} at j = {j}"));
            }
            let potential = serde_json::from_str::<Value>(&v.to_json()).expect("potential json");
            reports.push(json!({ "potential": name, "definition": potential, "report": r }));
        }
    }
    ctx.log(format!("{} reports, {} with violations", reports.len(), failures.len()));
    ctx.write_json("sobolev.json", json!({ "all_hold": failures.is_empty(), "reports": reports }))?;
    if failures.is_empty() {
        Ok(())
    } else {
        Err(CliError::Numerical(format!("inequalities violated for {}", failures.join(", "))))
    }
}

fn heat_trace(ctx: &Ctx) -> Result<(), CliError> {
    let (name, v) = ctx.potentials()?.remove(0);
    let ts = ctx.cfg.t_grid.clone().expect("filled on load");
    if ts.is_empty() || ts.iter().any(|t| !t.is_finite()) {
        return Err(CliError::Validation("t_grid must be a non-empty list of numbers".into()));
    }
    let tmin = ts.iter().cloned().fold(f64::INFINITY, f64::min);
    let tmax = ts.iter().cloned().fold(0.0, f64::max);
    ctx.log(format!("heat trace of {name} on {} times", ts.len()));
    let trace = HeatTrace::new(&v, tmin, tmax, DEFAULT_SPACING)?;
    let mut csv = String::from("t,value,coarse,fine,extrapolation_error\n");
    for &t in &ts {
        let s = trace.value(t)?;
        csv.push_str(&format!("{:.12e},{:.12e},{:.12e},{:.12e},{:.6e}\n", s.t, s.value, s.coarse, s.fine, s.extrapolation_error));
    }
    ctx.write("heat_trace.csv", &csv)?;
    let jmax = ctx.cfg.j_max.clamp(1, 3);
    let fit = fit_heat_coefficients(&v, &ts, jmax)?;
    let closed: Vec<Option<f64>> = (1..=jmax).map(|j| heat_invariant(j, &v).ok()).collect();
    ctx.write_json("heat_fit.json", json!({ "potential": name, "fit": fit, "invariants": closed }))
}

fn sweep_points(region: &SearchRegion, grid: SweepGrid) -> Vec<Complex<f64>> {
    let axis = |lo: f64, hi: f64, n: usize| -> Vec<f64> {
        if n == 1 {
            vec![lo]
        } else {
            (0..n).map(|i| if i + 1 == n { hi } else { lo + (hi - lo) * i as f64 / (n - 1) as f64 }).collect()
        }
    };
    let res = axis(region.re_min, region.re_max, grid.re_steps);
    let ims = axis(region.im_min, region.im_max, grid.im_steps);
    ims.iter().flat_map(|&im| res.iter().map(move |&re| Complex::new(re, im))).collect()
}

fn det_sweep(ctx: &Ctx) -> Result<(), CliError> {
    let (name, v) = ctx.potentials()?.remove(0);
    let points = sweep_points(&ctx.region(), ctx.cfg.grid.expect("validated"));
    ctx.log(format!("sweeping D for {name} over {} points", points.len()));
    let det = Determinant::new(&v, ctx.det_config())?;
    let values = det.sweep(&points)?;
    ctx.write("det_sweep.csv", &sweep_csv(&values))?;
    let max_err = values.iter().map(|d| d.error_estimate).fold(0.0, f64::max);
    let tail = values.iter().filter(|d| d.tail_warning()).count();
    if tail > 0 {
        eprintln!("warning: {tail} points have a non-negligible last angular sector");
    }
    ctx.write_json(
        "det_sweep.json",
        json!({ "potential": name, "points": values.len(), "max_error_estimate": max_err, "tail_warnings": tail }),
    )
}
