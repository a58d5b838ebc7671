//! Zeros of analytic functions in rectangles: winding numbers by phase
//! tracking, recursive quadrisection, Newton refinement and multiplicities.
//! Applied to λ ↦ D_V(λ) this yields resonance sets.

mod oracles;

pub use oracles::{
    dirichlet_box_eigenvalues, square_well_bound_states, swave_function, swave_oracle_3d, transfer_matrix_function,
    transfer_matrix_oracle_1d, PiecewiseConstant,
};

use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::determinant::{Determinant, DeterminantConfig};
use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::resolvent::LAMBDA_MIN;
use crate::scalar::{to_c64, Complex, Real};

/// Largest number of cells examined by one search.
pub const CELL_BUDGET: usize = 20_000;
/// Boundary samples with |f| below this abort the winding count.
pub const BOUNDARY_FLOOR: f64 = 1e-10;
const MAX_PERTURBATIONS: usize = 6;
const CLUSTER_DIAMETER: f64 = 1e-3;

/// Closed rectangle [re_min, re_max] × [im_min, im_max] of the λ-plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchRegion {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    #[serde(default = "default_exclusion")]
    pub exclusion_radius: f64,
}

fn default_exclusion() -> f64 {
    LAMBDA_MIN
}

impl SearchRegion {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<Self> {
        let r = SearchRegion { re_min, re_max, im_min, im_max, exclusion_radius: LAMBDA_MIN };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        let all = [self.re_min, self.re_max, self.im_min, self.im_max, self.exclusion_radius];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidRegion("non-finite bounds".into()));
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(Error::InvalidRegion(format!(
                "empty rectangle [{}, {}] x [{}, {}]",
                self.re_min, self.re_max, self.im_min, self.im_max
            )));
        }
        if self.exclusion_radius < 0.0 {
            return Err(Error::InvalidRegion("negative exclusion radius".into()));
        }
        let nx = if self.re_min > 0.0 { self.re_min } else if self.re_max < 0.0 { -self.re_max } else { 0.0 };
        let ny = if self.im_min > 0.0 { self.im_min } else if self.im_max < 0.0 { -self.im_max } else { 0.0 };
        if self.exclusion_radius > 0.0 && nx.hypot(ny) <= self.exclusion_radius {
            return Err(Error::InvalidRegion(format!(
                "rectangle meets the exclusion disk of radius {} around 0",
                self.exclusion_radius
            )));
        }
        Ok(())
    }

    pub fn diameter(&self) -> f64 {
        (self.re_max - self.re_min).hypot(self.im_max - self.im_min)
    }

    pub fn center(&self) -> Complex<f64> {
        Complex::new(0.5 * (self.re_min + self.re_max), 0.5 * (self.im_min + self.im_max))
    }

    pub fn contains(&self, z: Complex<f64>, slack: f64) -> bool {
        z.re >= self.re_min - slack && z.re <= self.re_max + slack && z.im >= self.im_min - slack && z.im <= self.im_max + slack
    }

    /// Image under λ ↦ −λ̄.
    pub fn mirrored(&self) -> Self {
        SearchRegion { re_min: -self.re_max, re_max: -self.re_min, ..*self }
    }

    /// Splits at the given fractions of the width and height into four
    /// cells, ordered (lower-left, lower-right, upper-left, upper-right).
    fn quadrisect(&self, fx: f64, fy: f64) -> [SearchRegion; 4] {
        let xm = self.re_min + fx * (self.re_max - self.re_min);
        let ym = self.im_min + fy * (self.im_max - self.im_min);
        let cell = |a, b, c, d| SearchRegion { re_min: a, re_max: b, im_min: c, im_max: d, exclusion_radius: self.exclusion_radius };
        [
            cell(self.re_min, xm, self.im_min, ym),
            cell(xm, self.re_max, self.im_min, ym),
            cell(self.re_min, xm, ym, self.im_max),
            cell(xm, self.re_max, ym, self.im_max),
        ]
    }

    fn corners(&self) -> [Complex<f64>; 4] {
        [
            Complex::new(self.re_min, self.im_min),
            Complex::new(self.re_max, self.im_min),
            Complex::new(self.re_max, self.im_max),
            Complex::new(self.re_min, self.im_max),
        ]
    }
}

/// Winding number of f along a rectangle boundary.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Winding {
    pub count: i64,
    /// Distance of the accumulated phase / 2π from the nearest integer.
    pub residual: f64,
    pub evaluations: usize,
    pub min_modulus: f64,
}

/// Winding number of `f` around the boundary of `region`, by tracking the
/// phase of f along adaptively refined edges.
pub fn count_zeros<F>(f: &F, region: &SearchRegion) -> Result<Winding>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>> + Sync,
{
    region.validate()?;
    let mut evals = 0;
    let mut min_mod = f64::INFINITY;
    let mut refine = 16usize;
    loop {
        let corners = region.corners();
        let mut total = 0.0;
        let values: Vec<Complex<f64>> = corners.iter().map(|&z| f(z)).collect::<Result<_>>()?;
        evals += 4;
        for k in 0..4 {
            let (a, b) = (corners[k], corners[(k + 1) % 4]);
            let (fa, fb) = (values[k], values[(k + 1) % 4]);
            let (d, n, m) = edge_phase(f, a, b, fa, fb, refine)?;
            total += d;
            evals += n;
            min_mod = min_mod.min(m);
        }
        for (z, v) in corners.iter().zip(&values) {
            check_boundary(*z, *v)?;
            min_mod = min_mod.min(v.norm());
        }
        let w = total / (2.0 * PI);
        let count = w.round();
        let residual = (w - count).abs();
        if residual < 0.25 {
            return Ok(Winding { count: count as i64, residual, evaluations: evals, min_modulus: min_mod });
        }
        refine *= 4;
        if refine > 4096 {
            return Err(Error::NonConvergence(format!("winding residual {residual} after refinement")));
        }
    }
}

fn check_boundary(z: Complex<f64>, v: Complex<f64>) -> Result<()> {
    if !(v.norm() > BOUNDARY_FLOOR) {
        return Err(Error::ZeroOnBoundary { re: z.re, im: z.im });
    }
    Ok(())
}

/// Accumulated phase change of f along the segment a → b.
fn edge_phase<F>(f: &F, a: Complex<f64>, b: Complex<f64>, fa: Complex<f64>, fb: Complex<f64>, pieces: usize) -> Result<(f64, usize, f64)>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>> + Sync,
{
    let pts: Vec<Complex<f64>> = (1..pieces).map(|i| a + (b - a) * (i as f64 / pieces as f64)).collect();
    let inner: Vec<Complex<f64>> = pts.par_iter().map(|&z| f(z)).collect::<Result<_>>()?;
    let mut zs = vec![a];
    zs.extend(pts);
    zs.push(b);
    let mut fs = vec![fa];
    fs.extend(inner);
    fs.push(fb);
    let mut total = 0.0;
    let mut evals = pieces - 1;
    let mut min_mod = f64::INFINITY;
    for (z, v) in zs.iter().zip(&fs) {
        check_boundary(*z, *v)?;
        min_mod = min_mod.min(v.norm());
    }
    for k in 0..pieces {
        let (d, n, m) = segment_phase(f, zs[k], zs[k + 1], fs[k], fs[k + 1], 0)?;
        total += d;
        evals += n;
        min_mod = min_mod.min(m);
    }
    Ok((total, evals, min_mod))
}

fn segment_phase<F>(f: &F, a: Complex<f64>, b: Complex<f64>, fa: Complex<f64>, fb: Complex<f64>, depth: usize) -> Result<(f64, usize, f64)>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>> + Sync,
{
    let whole = (fb / fa).arg();
    let m = (a + b) * 0.5;
    let fm = f(m)?;
    check_boundary(m, fm)?;
    let left = (fm / fa).arg();
    let right = (fb / fm).arg();
    let consistent = (left + right - whole).abs() < 1e-6;
    // f must vary little and nearly linearly over the segment, otherwise a
    // nearby zero can hide a full turn inside one half
    let floor = fa.norm().min(fb.norm()).min(fm.norm());
    let tame = (fb - fa).norm() <= 0.5 * floor && (fm - (fa + fb) * 0.5).norm() <= 0.25 * floor;
    if (whole.abs() < PI / 4.0 && consistent && tame) || depth >= 40 {
        if depth >= 40 {
            return Err(Error::NonConvergence("phase tracking did not resolve an edge".into()));
        }
        return Ok((left + right, 1, fm.norm()));
    }
    let (l, nl, ml) = segment_phase(f, a, m, fa, fm, depth + 1)?;
    let (r, nr, mr) = segment_phase(f, m, b, fm, fb, depth + 1)?;
    Ok((l + r, nl + nr + 1, ml.min(mr).min(fm.norm())))
}

/// A zero with its multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Resonance {
    pub lambda: Complex<f64>,
    pub multiplicity: usize,
}

/// Zeros found in a search region.
#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceSet {
    pub entries: Vec<Resonance>,
    pub region: SearchRegion,
    pub tolerance: f64,
    pub ell_max: Option<usize>,
    /// Winding number of the searched function around the region.
    pub winding: i64,
}

#[derive(Serialize, Deserialize)]
struct EntryDoc {
    re: f64,
    im: f64,
    multiplicity: usize,
}

#[derive(Serialize, Deserialize)]
struct SetDoc {
    region: SearchRegion,
    tolerance: f64,
    entries: Vec<EntryDoc>,
    ell_max: Option<usize>,
}

impl ResonanceSet {
    pub fn empty(region: SearchRegion, tolerance: f64) -> Self {
        ResonanceSet { entries: Vec::new(), region, tolerance, ell_max: None, winding: 0 }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_multiplicity(&self) -> usize {
        self.entries.iter().map(|e| e.multiplicity).sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(SetDoc {
            region: self.region,
            tolerance: self.tolerance,
            entries: self.entries.iter().map(|e| EntryDoc { re: e.lambda.re, im: e.lambda.im, multiplicity: e.multiplicity }).collect(),
            ell_max: self.ell_max,
        })
        .expect("resonance sets serialize")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_value()).expect("resonance sets serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let doc: SetDoc = serde_json::from_str(s)?;
        doc.region.validate()?;
        let entries: Vec<Resonance> = doc
            .entries
            .into_iter()
            .map(|e| Resonance { lambda: Complex::new(e.re, e.im), multiplicity: e.multiplicity })
            .collect();
        let winding = entries.iter().map(|e| e.multiplicity as i64).sum();
        Ok(ResonanceSet { entries, region: doc.region, tolerance: doc.tolerance, ell_max: doc.ell_max, winding })
    }

    /// CSV rows `re_lambda,im_lambda,multiplicity`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("re_lambda,im_lambda,multiplicity\n");
        for e in &self.entries {
            s.push_str(&format!("{:.12e},{:.12e},{}\n", e.lambda.re, e.lambda.im, e.multiplicity));
        }
        s
    }
}

/// Search parameters.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchOptions {
    pub tol: f64,
    pub cell_budget: usize,
}

impl SearchOptions {
    pub fn new(tol: f64) -> Self {
        SearchOptions { tol, cell_budget: CELL_BUDGET }
    }
}

/// Split fractions tried in turn when a cut passes too close to a zero.
const SPLITS: [(f64, f64); MAX_PERTURBATIONS] =
    [(0.5123, 0.4871), (0.4617, 0.5389), (0.5571, 0.4423), (0.4213, 0.5779), (0.6037, 0.3961), (0.3719, 0.6203)];

/// Central-difference derivative with h = 1e-5 (1 + |λ|).
pub fn central_derivative<F>(f: &F, z: Complex<f64>) -> Result<Complex<f64>>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>>,
{
    let h = 1e-5 * (1.0 + z.norm());
    Ok((f(z + h)? - f(z - h)?) / (2.0 * h))
}

/// Newton (modified for multiplicity m) from z0; returns the limit if the
/// iteration converges to |Δλ| < tol inside the slack-enlarged cell.
fn newton<F>(f: &F, z0: Complex<f64>, m: usize, cell: &SearchRegion, tol: f64) -> Result<Option<Complex<f64>>>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>>,
{
    let mut z = z0;
    let slack = 0.1 * cell.diameter();
    for _ in 0..60 {
        let fz = f(z)?;
        if fz.norm() == 0.0 {
            return Ok(Some(z));
        }
        let dz = central_derivative(f, z)?;
        if dz.norm() == 0.0 || !dz.re.is_finite() || !dz.im.is_finite() {
            return Ok(None);
        }
        let step = fz / dz * m as f64;
        z -= step;
        if !cell.contains(z, slack) {
            return Ok(None);
        }
        if step.norm() < tol {
            // one more step polishes a simple root to roughly tol²
            let fz = f(z)?;
            let dz = central_derivative(f, z)?;
            if dz.norm() > 0.0 {
                let s = fz / dz * m as f64;
                if s.norm() < tol {
                    z -= s;
                }
            }
            return Ok(cell.contains(z, tol).then_some(z));
        }
    }
    Ok(None)
}

enum CellOutcome {
    Done(Vec<Resonance>),
    Split(Vec<(SearchRegion, i64)>),
}

fn examine<F>(f: &F, cell: &SearchRegion, winding: i64, tol: f64) -> Result<CellOutcome>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>> + Sync,
{
    let m = winding as usize;
    let small = cell.diameter() < tol;
    if m == 1 || small || cell.diameter() < CLUSTER_DIAMETER {
        if let Some(z) = newton(f, cell.center(), m, cell, tol)? {
            return Ok(CellOutcome::Done(vec![Resonance { lambda: z, multiplicity: m }]));
        }
        if small {
            return Ok(CellOutcome::Done(vec![Resonance { lambda: cell.center(), multiplicity: m }]));
        }
    }
    let mut last_err = None;
    for &(fx, fy) in &SPLITS {
        let kids = cell.quadrisect(fx, fy);
        let counts: Result<Vec<Winding>> = kids.iter().map(|k| count_zeros(f, k)).collect();
        match counts {
            Ok(ws) => {
                let total: i64 = ws.iter().map(|w| w.count).sum();
                if total != winding {
                    last_err = Some(Error::NonConvergence(format!(
                        "sub-cell windings sum to {total}, parent has {winding}"
                    )));
                    continue;
                }
                return Ok(CellOutcome::Split(
                    kids.into_iter().zip(ws).filter(|(_, w)| w.count != 0).map(|(k, w)| (k, w.count)).collect(),
                ));
            }
            Err(e @ Error::ZeroOnBoundary { .. }) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap_or_else(|| Error::NonConvergence("cell could not be split".into())))
}

/// All zeros of `f` in `region` with multiplicities.
pub fn find_zeros<F>(f: &F, region: &SearchRegion, opts: SearchOptions) -> Result<ResonanceSet>
where
    F: Fn(Complex<f64>) -> Result<Complex<f64>> + Sync,
{
    if !(opts.tol >= 1e-12 && opts.tol.is_finite()) {
        return Err(Error::InvalidArgument(format!("tolerance {} below 1e-12", opts.tol)));
    }
    let outer = count_zeros(f, region)?;
    if outer.count < 0 {
        return Err(Error::NonConvergence(format!("negative winding {} for an analytic function", outer.count)));
    }
    let mut frontier = if outer.count > 0 { vec![(*region, outer.count)] } else { Vec::new() };
    let mut found = Vec::new();
    let mut cells = 1;
    while !frontier.is_empty() {
        cells += 4 * frontier.len();
        if cells > opts.cell_budget {
            return Err(Error::BudgetExceeded(opts.cell_budget));
        }
        let outcomes: Vec<CellOutcome> =
            frontier.par_iter().map(|(c, w)| examine(f, c, *w, opts.tol)).collect::<Result<_>>()?;
        let mut next = Vec::new();
        for o in outcomes {
            match o {
                CellOutcome::Done(z) => found.extend(z),
                CellOutcome::Split(k) => next.extend(k),
            }
        }
        frontier = next;
    }
    let entries = merge(found, opts.tol);
    let total: usize = entries.iter().map(|e| e.multiplicity).sum();
    if total as i64 != outer.count {
        return Err(Error::NonConvergence(format!(
            "located multiplicities sum to {total}, winding number is {}",
            outer.count
        )));
    }
    Ok(ResonanceSet { entries, region: *region, tolerance: opts.tol, ell_max: None, winding: outer.count })
}

/// Merges zeros closer than 2·tol into their multiplicity-weighted centroid
/// and sorts by (Re, Im).
pub fn merge(mut zs: Vec<Resonance>, tol: f64) -> Vec<Resonance> {
    sort_canonical(&mut zs);
    let mut out: Vec<Resonance> = Vec::new();
    'outer: for z in zs {
        for o in out.iter_mut() {
            if (o.lambda - z.lambda).norm() < 2.0 * tol {
                let m = (o.multiplicity + z.multiplicity) as f64;
                o.lambda = (o.lambda * o.multiplicity as f64 + z.lambda * z.multiplicity as f64) / m;
                o.multiplicity += z.multiplicity;
                continue 'outer;
            }
        }
        out.push(z);
    }
    sort_canonical(&mut out);
    out
}

fn sort_canonical(zs: &mut [Resonance]) {
    zs.sort_by(|a, b| {
        a.lambda.re.total_cmp(&b.lambda.re).then(a.lambda.im.total_cmp(&b.lambda.im)).then(a.multiplicity.cmp(&b.multiplicity))
    });
}

fn to_t<T: Real>(z: Complex<f64>) -> Complex<T> {
    Complex::new(T::lit(z.re), T::lit(z.im))
}

/// Resonances (and bound-state parameters iκ) of V in a region: zeros of
/// D_V, or for d = 3 the union over sectors ℓ ≤ ℓ_max of the zeros of the
/// sector determinants, each with multiplicity (2ℓ+1)·(sector multiplicity).
pub fn locate_resonances<T: Real>(v: &Potential<T>, region: &SearchRegion, tol: f64, config: DeterminantConfig) -> Result<ResonanceSet> {
    region.validate()?;
    let det = Determinant::new(v, config)?;
    if v.is_zero() {
        let mut s = ResonanceSet::empty(*region, tol);
        s.ell_max = (v.dimension() == 3).then_some(config.ell_max);
        return Ok(s);
    }
    if v.dimension() == 1 {
        let f = |z: Complex<f64>| det.value(to_t(z)).map(|d| to_c64(d.value));
        return find_zeros(&f, region, SearchOptions::new(tol));
    }
    let mut entries = Vec::new();
    let mut winding = 0;
    for ell in 0..=config.ell_max {
        let s = locate_in_sector(&det, ell, region, tol)?;
        let deg = 2 * ell + 1;
        winding += s.winding * deg as i64;
        entries.extend(s.entries.into_iter().map(|e| Resonance { lambda: e.lambda, multiplicity: e.multiplicity * deg }));
    }
    let entries = merge(entries, tol);
    Ok(ResonanceSet { entries, region: *region, tolerance: tol, ell_max: Some(config.ell_max), winding })
}

/// Zeros of the ℓ-th sector determinant det₂(I + K_ℓ), searched on
/// det(I + K_ℓ) = det₂(I + K_ℓ)·e^{tr K_ℓ}.
pub fn locate_in_sector<T: Real>(det: &Determinant<T>, ell: usize, region: &SearchRegion, tol: f64) -> Result<ResonanceSet> {
    let f = |z: Complex<f64>| det.sector_fredholm(to_t(z), ell).map(|(d, _)| to_c64(d));
    find_zeros(&f, region, SearchOptions::new(tol))
}

/// Outcome of matching two resonance sets.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IsoReport {
    pub iso_resonant: bool,
    pub tolerance: f64,
    /// (index in A, index in B, distance).
    pub matched: Vec<(usize, usize, f64)>,
    pub unmatched_a: Vec<usize>,
    pub unmatched_b: Vec<usize>,
    pub max_distance: f64,
}

/// Greedy nearest-pair matching of equal-multiplicity entries closer than
/// `tol`; the sets are iso-resonant iff the matching is perfect.
pub fn compare_resonance_sets(a: &ResonanceSet, b: &ResonanceSet, tol: f64) -> IsoReport {
    let mut pairs = Vec::new();
    for (i, x) in a.entries.iter().enumerate() {
        for (j, y) in b.entries.iter().enumerate() {
            let d = (x.lambda - y.lambda).norm();
            if d < tol && x.multiplicity == y.multiplicity {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; a.entries.len()];
    let mut used_b = vec![false; b.entries.len()];
    let mut matched = Vec::new();
    for (d, i, j) in pairs {
        if !used_a[i] && !used_b[j] {
            used_a[i] = true;
            used_b[j] = true;
            matched.push((i, j, d));
        }
    }
    matched.sort_by_key(|m| m.0);
    let unmatched_a: Vec<usize> = (0..a.entries.len()).filter(|&i| !used_a[i]).collect();
    let unmatched_b: Vec<usize> = (0..b.entries.len()).filter(|&j| !used_b[j]).collect();
    let max_distance = matched.iter().map(|m| m.2).fold(0.0, f64::max);
    IsoReport { iso_resonant: unmatched_a.is_empty() && unmatched_b.is_empty(), tolerance: tol, matched, unmatched_a, unmatched_b, max_distance }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn synthetic_winding_counts() {
        let r = SearchRegion { re_min: 0.0, re_max: 2.0, im_min: -2.0, im_max: 0.0, exclusion_radius: 0.0 };
        let z0 = Complex::new(1.0, -1.0);
        let double = |z: Complex<f64>| Ok((z - z0).powi(2) * z.exp());
        assert_eq!(count_zeros(&double, &r).unwrap().count, 2);
        let pair = |z: Complex<f64>| Ok((z - z0) * (z - Complex::new(3.0, -1.0)));
        assert_eq!(count_zeros(&pair, &r).unwrap().count, 1);
    }

    #[test]
    fn double_zero_is_found_once_with_multiplicity_two() {
        let r = SearchRegion { re_min: 0.0, re_max: 2.0, im_min: -2.0, im_max: 0.0, exclusion_radius: 0.0 };
        let z0 = Complex::new(1.0, -1.0);
        let f = |z: Complex<f64>| Ok((z - z0).powi(2) * z.exp());
        let s = find_zeros(&f, &r, SearchOptions::new(1e-8)).unwrap();
        assert_eq!(s.entries.len(), 1);
        assert_eq!(s.entries[0].multiplicity, 2);
        assert!((s.entries[0].lambda - z0).norm() < 1e-6);
    }

    #[test]
    fn region_must_avoid_the_origin() {
        assert!(SearchRegion::new(-1.0, 1.0, -1.0, 1.0).is_err());
        assert!(SearchRegion::new(1.0, 0.0, -1.0, 1.0).is_err());
        assert!(SearchRegion::new(0.1, 1.0, -1.0, 1.0).is_ok());
    }
}
