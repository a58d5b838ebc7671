//! Regularized heat trace Tr(e^{−tH_V} − e^{−tH₀}) on the line from
//! finite-difference Dirichlet boxes, and small-t fits of its expansion.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{least_squares, SymTridiagonal};
use crate::potential::Potential;
use crate::scalar::Real;

/// Default grid spacing of the coarse box discretization.
pub const DEFAULT_SPACING: f64 = 2e-3;
const EXPONENT_CUTOFF: f64 = 60.0;
const RICHARDSON_LIMIT: f64 = 1e-6;

/// Eigenvalues of one box discretization below the cutoff, with the
/// closed-form free spectrum.
#[derive(Clone, Debug)]
struct BoxSpectrum {
    with_v: Vec<f64>,
    free: Vec<f64>,
}

impl BoxSpectrum {
    fn new<T: Real>(v: &Potential<T>, half_width: f64, cells: usize, cutoff: f64) -> Self {
        let h = 2.0 * half_width / cells as f64;
        let n = cells - 1;
        let inv = 1.0 / (h * h);
        let vals: Vec<f64> = (1..=n)
            .map(|i| {
                let x = -half_width + i as f64 * h;
                0.5 * (v.profile(T::lit(x - 0.25 * h)) + v.profile(T::lit(x + 0.25 * h))).as_f64()
            })
            .collect();
        let vmin = vals.iter().cloned().fold(0.0, f64::min);
        let vmax = vals.iter().cloned().fold(0.0, f64::max);
        // −Δ_h with Dirichlet conditions: (4/h²) sin²(kπ / (2(n+1)))
        let free: Vec<f64> = (1..=n)
            .map(|k| 4.0 * inv * (k as f64 * std::f64::consts::PI / (2.0 * (n + 1) as f64)).sin().powi(2))
            .take_while(|&mu| mu + vmin < cutoff)
            .collect();
        let diag: Vec<f64> = vals.iter().map(|&x| 2.0 * inv + x).collect();
        let op = SymTridiagonal::new(diag, vec![-inv; n - 1]);
        // Weyl: μ⁰_k + min V ≤ μ_k ≤ μ⁰_k + max V
        let with_v = free
            .iter()
            .enumerate()
            .map(|(k, &mu)| {
                let pad = 1e-9 * (1.0 + mu.abs());
                op.eigenvalue_in(k, mu + vmin - pad, mu + vmax + pad)
            })
            .collect();
        BoxSpectrum { with_v, free }
    }

    fn trace(&self, t: f64) -> f64 {
        self.with_v
            .iter()
            .zip(&self.free)
            .map(|(&mu, &mu0)| (-t * mu0).exp() * (-t * (mu - mu0)).exp_m1())
            .sum()
    }
}

/// Heat-trace value with its extrapolation diagnostics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HeatTraceValue {
    pub t: f64,
    pub value: f64,
    pub coarse: f64,
    pub fine: f64,
    /// |fine − coarse| / 3, the size of the Richardson correction.
    pub extrapolation_error: f64,
}

/// Heat trace of a fixed potential for all t ≥ `t_min`, sharing the box
/// spectra between t values.
#[derive(Clone, Debug)]
pub struct HeatTrace {
    pub half_width: f64,
    pub spacing: f64,
    pub t_min: f64,
    pub t_max: f64,
    coarse: Option<BoxSpectrum>,
    fine: Option<BoxSpectrum>,
}

impl HeatTrace {
    /// Box half-width L = max(8R, R + 10√t_max), spacings h and h/2.
    pub fn new<T: Real>(v: &Potential<T>, t_min: f64, t_max: f64, spacing: f64) -> Result<Self> {
        if v.dimension() != 1 {
            return Err(Error::InvalidArgument("the heat-trace oracle works on the line".into()));
        }
        if !(1e-3 * (1.0 - 1e-12) <= t_min && t_min <= t_max && t_max <= 1.0) {
            return Err(Error::InvalidArgument(format!("heat times must lie in [1e-3, 1], got [{t_min}, {t_max}]")));
        }
        if !(spacing > 0.0 && spacing < 0.1) {
            return Err(Error::InvalidArgument(format!("invalid grid spacing {spacing}")));
        }
        let r = v.support_radius().as_f64();
        let half_width = (8.0 * r).max(r + 10.0 * t_max.sqrt());
        let cells = (2.0 * half_width / spacing).round() as usize;
        let cutoff = EXPONENT_CUTOFF / t_min;
        let (coarse, fine) = if v.is_zero() {
            (None, None)
        } else {
            let (c, f) = rayon::join(
                || BoxSpectrum::new(v, half_width, cells, cutoff),
                || BoxSpectrum::new(v, half_width, 2 * cells, cutoff),
            );
            (Some(c), Some(f))
        };
        Ok(HeatTrace { half_width, spacing, t_min, t_max, coarse, fine })
    }

    pub fn value(&self, t: f64) -> Result<HeatTraceValue> {
        if !(t >= self.t_min * (1.0 - 1e-12) && t <= self.t_max * (1.0 + 1e-12)) {
            return Err(Error::InvalidArgument(format!("t = {t} outside [{}, {}]", self.t_min, self.t_max)));
        }
        let (Some(c), Some(f)) = (&self.coarse, &self.fine) else {
            return Ok(HeatTraceValue { t, value: 0.0, coarse: 0.0, fine: 0.0, extrapolation_error: 0.0 });
        };
        let (sc, sf) = (c.trace(t), f.trace(t));
        let err = (sf - sc).abs() / 3.0;
        if err > RICHARDSON_LIMIT {
            return Err(Error::ResolutionInsufficient(err));
        }
        Ok(HeatTraceValue { t, value: (4.0 * sf - sc) / 3.0, coarse: sc, fine: sf, extrapolation_error: err })
    }
}

/// Tr(e^{−tH_V} − e^{−tH₀}) at a single t ∈ [1e−3, 1].
pub fn heat_trace_oracle<T: Real>(v: &Potential<T>, t: f64) -> Result<HeatTraceValue> {
    HeatTrace::new(v, t, t, DEFAULT_SPACING)?.value(t)
}

/// Least-squares fit of (4πt)^{1/2} Tr(…) ≈ Σ_{j=1}^J γ_j t^j.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HeatFit {
    pub gamma: Vec<f64>,
    pub condition: f64,
    pub rms_residual: f64,
    pub samples: Vec<HeatTraceValue>,
}

/// Condition estimates above this reject the fit.
pub const FIT_CONDITION_LIMIT: f64 = 1e10;

pub fn fit_heat_coefficients<T: Real>(v: &Potential<T>, t_grid: &[f64], jmax: usize) -> Result<HeatFit> {
    if jmax == 0 || jmax > 3 {
        return Err(Error::InvalidArgument(format!("fits use 1 ≤ J ≤ 3, got {jmax}")));
    }
    if t_grid.len() < 2 * jmax {
        return Err(Error::InvalidArgument(format!("need at least {} times, got {}", 2 * jmax, t_grid.len())));
    }
    let tmin = t_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let tmax = t_grid.iter().cloned().fold(0.0, f64::max);
    if tmax < 10.0 * tmin * (1.0 - 1e-9) {
        return Err(Error::InvalidArgument("the time grid must span a decade".into()));
    }
    let oracle = HeatTrace::new(v, tmin, tmax, DEFAULT_SPACING)?;
    let samples: Vec<HeatTraceValue> = t_grid.iter().map(|&t| oracle.value(t)).collect::<Result<_>>()?;
    let design: Vec<Vec<f64>> = t_grid.iter().map(|&t| (1..=jmax).map(|j| t.powi(j as i32)).collect()).collect();
    let rhs: Vec<f64> =
        samples.iter().map(|s| (4.0 * std::f64::consts::PI * s.t).sqrt() * s.value).collect();
    let (gamma, condition) = least_squares(&design, &rhs);
    if !(condition < FIT_CONDITION_LIMIT) {
        return Err(Error::IllConditionedFit(condition));
    }
    let rms = (design
        .iter()
        .zip(&rhs)
        .map(|(row, &b)| {
            let fit: f64 = row.iter().zip(&gamma).map(|(a, g)| a * g).sum();
            (fit - b).powi(2)
        })
        .sum::<f64>()
        / rhs.len() as f64)
        .sqrt();
    Ok(HeatFit { gamma, condition, rms_residual: rms, samples })
}

