//! Regularized determinants D_V(λ) of I + K_V(λ).
//!
//! The default discretization uses midpoint nodes. The Birman–Schwinger
//! matrix is then diagonal-times-semiseparable, so det(I + K) follows from
//! an O(n) recurrence, and a Romberg tableau over n, 2n, 4n, … nodes removes
//! the even-power error expansion of the midpoint rule.

use rayon::prelude::*;
use serde::Serialize;

use crate::birman_schwinger::{assemble_k, support_rule};
use crate::error::{Error, Result};
use crate::linalg::{log_det, CMatrix, LogDet};
use crate::potential::Potential;
use crate::quadrature::{romberg, NodeRule};
use crate::resolvent::{green_factors, Sector, LAMBDA_MIN};
use crate::scalar::{lit, Complex, Real};
use crate::special::{riccati_h, riccati_j};

/// Regularized determinant det_p(I + A) for p ∈ {1, 2}, in log form.
pub fn det_reg_log<T: Real>(p: u32, a: &CMatrix<T>) -> Result<LogDet<T>> {
    if !a.is_square() {
        return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
    }
    let id = CMatrix::identity(a.rows());
    let base = log_det(&id.add(a));
    match p {
        1 => Ok(base),
        2 => Ok(base.mul_exp(-a.trace())),
        _ => Err(Error::InvalidArgument(format!("regularization order must be 1 or 2, got {p}"))),
    }
}

/// Regularized determinant det_p(I + A) for p ∈ {1, 2}.
pub fn det_reg<T: Real>(p: u32, a: &CMatrix<T>) -> Result<Complex<T>> {
    det_reg_log(p, a).map(|d| d.value())
}

/// det(I + diag(d) G) for G[m][n] = a[min(m,n)] b[max(m,n)].
pub fn semiseparable_det<T: Real>(a: &[Complex<T>], b: &[Complex<T>], d: &[Complex<T>]) -> Complex<T> {
    let one = Complex::new(T::one(), T::zero());
    let mut acc_b = one;
    let mut acc_a = Complex::new(T::zero(), T::zero());
    for m in 0..d.len() {
        if d[m].re == T::zero() && d[m].im == T::zero() {
            continue;
        }
        let w = d[m] * (a[m] * acc_b + b[m] * acc_a);
        acc_b += w * b[m];
        acc_a -= w * a[m];
    }
    acc_b
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// O(n) recurrence for the semiseparable Birman–Schwinger matrix.
    #[default]
    Recurrence,
    /// Dense assembly and LU factorization.
    Dense,
}

/// Discretization parameters for determinant evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct DeterminantConfig {
    /// Nodes on the coarsest level.
    pub nodes: usize,
    /// Number of Romberg levels (n, 2n, …); ignored for Gauss–Legendre nodes.
    pub levels: usize,
    /// Largest angular momentum in d = 3.
    pub ell_max: usize,
    pub rule: NodeRule,
    pub method: Method,
}

impl Default for DeterminantConfig {
    fn default() -> Self {
        DeterminantConfig { nodes: 200, levels: 5, ell_max: 8, rule: NodeRule::Midpoint, method: Method::Recurrence }
    }
}

impl DeterminantConfig {
    pub fn with_nodes(nodes: usize) -> Self {
        DeterminantConfig { nodes, ..Self::default() }
    }
}

/// D_V(λ) together with its discretization diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct DeterminantValue<T> {
    pub lam: Complex<T>,
    pub value: Complex<T>,
    /// 1 on the line, 2 in three dimensions.
    pub p: u32,
    pub log_abs: T,
    /// Largest sector included (d = 3).
    pub ell_max: Option<usize>,
    /// Hilbert–Schmidt norm of the last included sector (d = 3).
    pub tail_hs: Option<T>,
    /// Difference of the two most refined Romberg estimates.
    pub error_estimate: T,
}

impl<T: Real> DeterminantValue<T> {
    /// Sector-truncation heuristic: the last sector should be negligible.
    pub fn tail_warning(&self) -> bool {
        self.tail_hs.is_some_and(|t| t >= lit(1e-8))
    }
}

#[derive(Clone, Debug)]
struct Level<T> {
    nodes: Vec<T>,
    weights: Vec<T>,
    values: Vec<T>,
}

/// Evaluator of λ ↦ D_V(λ) for a fixed potential and discretization.
#[derive(Clone, Debug)]
pub struct Determinant<T> {
    potential: Potential<T>,
    config: DeterminantConfig,
    levels: Vec<Level<T>>,
    sector_list: Vec<Sector>,
    zero: bool,
}

impl<T: Real> Determinant<T> {
    pub fn new(v: &Potential<T>, config: DeterminantConfig) -> Result<Self> {
        if config.nodes < 4 {
            return Err(Error::InvalidArgument(format!("need at least 4 nodes, got {}", config.nodes)));
        }
        let sector_list: Vec<Sector> = if v.dimension() == 1 {
            vec![Sector::Line]
        } else {
            (0..=config.ell_max).map(Sector::Radial).collect()
        };
        let nlev = match config.rule {
            NodeRule::Midpoint => config.levels.max(1),
            NodeRule::GaussLegendre => 1,
        };
        let levels = (0..nlev)
            .map(|k| {
                let q = support_rule(v, sector_list[0], config.nodes << k, config.rule)?;
                let values = q.nodes.iter().map(|&x| v.profile(x)).collect();
                Ok(Level { nodes: q.nodes, weights: q.weights, values })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Determinant { zero: v.is_zero(), potential: v.clone(), config, levels, sector_list })
    }

    pub fn potential(&self) -> &Potential<T> {
        &self.potential
    }

    pub fn config(&self) -> &DeterminantConfig {
        &self.config
    }

    /// Regularization order: 1 on the line, 2 in three dimensions.
    pub fn order(&self) -> u32 {
        if self.potential.dimension() == 1 {
            1
        } else {
            2
        }
    }

    fn check_lambda(&self, lam: Complex<T>) -> Result<()> {
        if !(lam.norm() >= lit(LAMBDA_MIN)) {
            return Err(Error::PoleProximity { modulus: lam.norm().as_f64(), radius: LAMBDA_MIN });
        }
        Ok(())
    }

    /// Per-level determinants of one sector (det on the line, det₂ radially).
    fn sector_levels(&self, lam: Complex<T>, sector: Sector) -> Result<Vec<Complex<T>>> {
        self.levels.iter().map(|lv| self.level_value(lv, lam, sector, None)).collect()
    }

    fn level_value(
        &self,
        lv: &Level<T>,
        lam: Complex<T>,
        sector: Sector,
        factors: Option<(&[Complex<T>], &[Complex<T>])>,
    ) -> Result<Complex<T>> {
        match self.config.method {
            Method::Dense => {
                let k = assemble_k(&self.potential, lam, lv.nodes.len(), sector, self.config.rule)?;
                det_reg(self.order(), &k.entries)
            }
            Method::Recurrence => {
                let owned;
                let (a, b) = match factors {
                    Some(f) => f,
                    None => {
                        owned = green_factors(sector, &lv.nodes, lam)?;
                        (&owned.0[..], &owned.1[..])
                    }
                };
                let d: Vec<Complex<T>> =
                    lv.weights.iter().zip(&lv.values).map(|(&w, &v)| Complex::new(w * v, T::zero())).collect();
                let det = semiseparable_det(a, b, &d);
                if self.order() == 1 {
                    Ok(det)
                } else {
                    let tr: Complex<T> = (0..d.len()).map(|m| d[m] * a[m] * b[m]).sum();
                    Ok(det * (-tr).exp())
                }
            }
        }
    }

    /// Romberg-extrapolated determinant of a single sector (det₂ for radial
    /// sectors) with its error estimate.
    pub fn sector_value(&self, lam: Complex<T>, sector: Sector) -> Result<(Complex<T>, T)> {
        self.check_lambda(lam)?;
        if self.zero {
            return Ok((Complex::new(T::one(), T::zero()), T::zero()));
        }
        let seq = self.sector_levels(lam, sector)?;
        Ok(extrapolate(&seq))
    }

    /// Romberg-extrapolated det(I + K_ℓ) of a radial sector: det₂ times
    /// e^{tr K_ℓ}, with the same zeros but without the exponential factor.
    pub fn sector_fredholm(&self, lam: Complex<T>, ell: usize) -> Result<(Complex<T>, T)> {
        self.check_lambda(lam)?;
        if self.zero {
            return Ok((Complex::new(T::one(), T::zero()), T::zero()));
        }
        let sector = Sector::Radial(ell);
        let seq = self
            .levels
            .iter()
            .map(|lv| -> Result<Complex<T>> {
                let (a, b) = green_factors(sector, &lv.nodes, lam)?;
                let d: Vec<Complex<T>> =
                    lv.weights.iter().zip(&lv.values).map(|(&w, &v)| Complex::new(w * v, T::zero())).collect();
                Ok(semiseparable_det(&a, &b, &d))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(extrapolate(&seq))
    }

    /// The determinant on a single discretization level (no extrapolation).
    pub fn level_determinant(&self, lam: Complex<T>, level: usize) -> Result<Complex<T>> {
        self.check_lambda(lam)?;
        let lv = self.levels.get(level).ok_or_else(|| Error::InvalidArgument(format!("no level {level}")))?;
        let mut total = LogDet::one();
        for &s in &self.sector_list {
            let v = self.level_value(lv, lam, s, None)?;
            total = total.mul(LogDet::from_value(v).powi(multiplicity(s)));
        }
        Ok(total.value())
    }

    /// D_V(λ).
    pub fn value(&self, lam: Complex<T>) -> Result<DeterminantValue<T>> {
        self.check_lambda(lam)?;
        let one = Complex::new(T::one(), T::zero());
        let p = self.order();
        if self.zero {
            return Ok(DeterminantValue {
                lam,
                value: one,
                p,
                log_abs: T::zero(),
                ell_max: (p == 2).then_some(self.config.ell_max),
                tail_hs: (p == 2).then_some(T::zero()),
                error_estimate: T::zero(),
            });
        }
        if p == 1 {
            let (value, err) = extrapolate(&self.sector_levels(lam, Sector::Line)?);
            return Ok(DeterminantValue { lam, value, p, log_abs: value.norm().ln(), ell_max: None, tail_hs: None, error_estimate: err });
        }
        let lmax = self.config.ell_max;
        let mut per_sector: Vec<Vec<Complex<T>>> = vec![Vec::with_capacity(self.levels.len()); lmax + 1];
        for lv in &self.levels {
            let mut js = Vec::with_capacity(lv.nodes.len());
            let mut hs = Vec::with_capacity(lv.nodes.len());
            for &r in &lv.nodes {
                js.push(riccati_j(lmax, lam * r)?);
                hs.push(riccati_h(lmax, lam * r)?);
            }
            let i_over_lam = Complex::new(T::zero(), T::one()) / lam;
            for (ell, seq) in per_sector.iter_mut().enumerate() {
                let a: Vec<Complex<T>> = js.iter().map(|j| i_over_lam * j[ell]).collect();
                let b: Vec<Complex<T>> = hs.iter().map(|h| h[ell]).collect();
                seq.push(self.level_value(lv, lam, Sector::Radial(ell), Some((&a, &b)))?);
            }
        }
        let mut total = LogDet::one();
        let mut err = T::zero();
        for (ell, seq) in per_sector.iter().enumerate() {
            let (v, e) = extrapolate(seq);
            err += e * lit((2 * ell + 1) as f64);
            total = total.mul(LogDet::from_value(v).powi((2 * ell + 1) as u32));
        }
        let tail = self.sector_hs(lam, lmax)?;
        let value = total.value();
        Ok(DeterminantValue {
            lam,
            value,
            p,
            log_abs: total.log_abs,
            ell_max: Some(lmax),
            tail_hs: Some(tail),
            error_estimate: err * value.norm(),
        })
    }

    /// Hilbert–Schmidt norm of K_ℓ on the coarsest level, in O(n).
    pub fn sector_hs(&self, lam: Complex<T>, ell: usize) -> Result<T> {
        let lv = &self.levels[0];
        let (a, b) = green_factors(Sector::Radial(ell), &lv.nodes, lam)?;
        let n = lv.nodes.len();
        // Σ_n |k(x_m,x_n)|² w_n = |b_m|² Σ_{n<=m} |a_n|² w_n + |a_m|² Σ_{n>m} |b_n|² w_n
        let mut suffix = vec![T::zero(); n + 1];
        for m in (0..n).rev() {
            suffix[m] = suffix[m + 1] + b[m].norm_sqr() * lv.weights[m];
        }
        let mut prefix = T::zero();
        let mut total = T::zero();
        for m in 0..n {
            prefix += a[m].norm_sqr() * lv.weights[m];
            let row = b[m].norm_sqr() * prefix + a[m].norm_sqr() * suffix[m + 1];
            total += lv.weights[m] * lv.values[m] * lv.values[m] * row;
        }
        Ok(total.sqrt())
    }

    /// Central difference (D(λ+h) − D(λ−h))/(2h) with h = 1e-5 (1 + |λ|).
    pub fn derivative(&self, lam: Complex<T>) -> Result<Complex<T>> {
        let h = lit::<T>(1e-5) * (T::one() + lam.norm());
        let hp = Complex::new(h, T::zero());
        let plus = self.value(lam + hp)?.value;
        let minus = self.value(lam - hp)?.value;
        Ok((plus - minus) / (hp * lit::<T>(2.0)))
    }

    /// D on a list of spectral parameters, evaluated in parallel.
    pub fn sweep(&self, grid: &[Complex<T>]) -> Result<Vec<DeterminantValue<T>>> {
        grid.par_iter().map(|&lam| self.value(lam)).collect()
    }
}

fn multiplicity(s: Sector) -> u32 {
    match s {
        Sector::Line => 1,
        Sector::Radial(l) => (2 * l + 1) as u32,
    }
}

fn extrapolate<T: Real>(seq: &[Complex<T>]) -> (Complex<T>, T) {
    if seq.len() == 1 {
        return (seq[0], T::zero());
    }
    romberg(seq)
}

/// D_V(λ) with default settings and `n` coarsest-level nodes.
pub fn determinant_at<T: Real>(v: &Potential<T>, lam: Complex<T>, n: usize, ell_max: Option<usize>) -> Result<DeterminantValue<T>> {
    let mut cfg = DeterminantConfig::with_nodes(n);
    if let Some(l) = ell_max {
        cfg.ell_max = l;
    }
    Determinant::new(v, cfg)?.value(lam)
}

/// dD_V/dλ with default settings and `n` coarsest-level nodes.
pub fn determinant_derivative<T: Real>(v: &Potential<T>, lam: Complex<T>, n: usize) -> Result<Complex<T>> {
    Determinant::new(v, DeterminantConfig::with_nodes(n))?.derivative(lam)
}

/// CSV rows `re_lambda,im_lambda,re_D,im_D,log_abs_D`.
pub fn sweep_csv<T: Real>(values: &[DeterminantValue<T>]) -> String {
    let mut s = String::from("re_lambda,im_lambda,re_D,im_D,log_abs_D\n");
    for v in values {
        s.push_str(&format!(
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e}\n",
            v.lam.re.as_f64(),
            v.lam.im.as_f64(),
            v.value.re.as_f64(),
            v.value.im.as_f64(),
            v.log_abs.as_f64()
        ));
    }
    s
}

/// Uniform convergence of D_{V + W/j} → D_V on a λ grid.
#[derive(Clone, Debug, Serialize)]
pub struct ContinuityReport {
    /// e_j = max_λ |D_{V+W/j}(λ) − D_V(λ)|, j = 1..=steps.
    pub errors: Vec<f64>,
    pub slope: f64,
    pub decreasing: bool,
    /// e_j / ‖W/j‖_∞.
    pub lipschitz_ratios: Vec<f64>,
    /// max/min of the Lipschitz ratios.
    pub ratio_spread: f64,
}

/// Measures e_j for V_j = V + W/j and fits the log–log decay rate.
pub fn verify_continuity<T: Real>(
    v: &Potential<T>,
    w: &Potential<T>,
    grid: &[Complex<T>],
    config: DeterminantConfig,
    steps: usize,
) -> Result<ContinuityReport> {
    if steps < 2 {
        return Err(Error::InvalidArgument("continuity check needs at least two steps".into()));
    }
    let base = Determinant::new(v, config)?.sweep(grid)?;
    let wsup = w.sup_norm().as_f64();
    let errors: Vec<f64> = (1..=steps)
        .into_par_iter()
        .map(|j| -> Result<f64> {
            let vj = v.plus(&w.scaled(T::one() / T::from_usize_lossy(j)))?;
            let vals = Determinant::new(&vj, config)?.sweep(grid)?;
            Ok(vals
                .iter()
                .zip(&base)
                .map(|(a, b)| (a.value - b.value).norm().as_f64())
                .fold(0.0, f64::max))
        })
        .collect::<Result<_>>()?;
    let decreasing = errors.windows(2).all(|p| p[1] <= p[0]);
    let (slope, lipschitz_ratios, ratio_spread) = if errors.iter().all(|&e| e > 0.0) {
        let xs: Vec<f64> = (1..=steps).map(|j| (j as f64).ln()).collect();
        let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
        let (slope, _) = crate::resolvent::linear_fit(&xs, &ys);
        let ratios: Vec<f64> = errors.iter().enumerate().map(|(i, e)| e * (i + 1) as f64 / wsup).collect();
        let hi = ratios.iter().cloned().fold(f64::MIN, f64::max);
        let lo = ratios.iter().cloned().fold(f64::MAX, f64::min);
        (slope, ratios, hi / lo)
    } else {
        (f64::NEG_INFINITY, vec![0.0; steps], 1.0)
    };
    Ok(ContinuityReport { errors, slope, decreasing, lipschitz_ratios, ratio_spread })
}
