//! Free-resolvent kernels, Nyström matrices of the cut-off resolvent and
//! numerical checks of resolvent-norm and singular-value estimates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::quadrature::{romberg_real, NodeRule, Rule};
use crate::scalar::{lit, Complex, Real};
use crate::special::{riccati_h, riccati_j};

/// Default exclusion radius around the pole of the line kernel at λ = 0.
pub const LAMBDA_MIN: f64 = 1e-3;

/// Largest angular momentum accepted by the radial kernels.
pub const ELL_LIMIT: usize = 64;

/// Which reduced problem a Nyström discretization lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sector {
    /// The line, d = 1.
    Line,
    /// Angular-momentum sector ℓ of a radial problem in R³.
    Radial(usize),
}

impl Sector {
    pub fn dimension(self) -> usize {
        match self {
            Sector::Line => 1,
            Sector::Radial(_) => 3,
        }
    }
}

fn i_unit<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::one())
}

fn check_pole<T: Real>(lam: Complex<T>, lam_min: T) -> Result<()> {
    if !(lam.norm() >= lam_min) {
        return Err(Error::PoleProximity { modulus: lam.norm().as_f64(), radius: lam_min.as_f64() });
    }
    Ok(())
}

/// Line kernel (i/2λ) e^{iλ|x-y|} of (-d²/dx² - λ²)^{-1}.
pub fn kernel_1d<T: Real>(x: T, y: T, lam: Complex<T>) -> Result<Complex<T>> {
    kernel_1d_with_min(x, y, lam, lit(LAMBDA_MIN))
}

pub fn kernel_1d_with_min<T: Real>(x: T, y: T, lam: Complex<T>, lam_min: T) -> Result<Complex<T>> {
    check_pole(lam, lam_min)?;
    let i = i_unit::<T>();
    Ok(i / (lam * lit::<T>(2.0)) * (i * lam * (x - y).abs()).exp())
}

/// Outgoing kernel e^{iλr}/(4πr) of (-Δ - λ²)^{-1} in R³.
pub fn kernel_3d<T: Real>(r: T, lam: Complex<T>) -> Result<Complex<T>> {
    if !(r > T::zero()) {
        return Err(Error::DiagonalSingularity);
    }
    Ok((i_unit::<T>() * lam * r).exp() / (lit::<T>(4.0) * T::PI() * r))
}

/// Outgoing Green kernel of -d²/dr² + ℓ(ℓ+1)/r² - λ² on (0, ∞):
/// G_ℓ(r, r') = (i/λ) ĵ_ℓ(λ r_<) ĥ_ℓ(λ r_>) with Riccati–Bessel ĵ and
/// Riccati–Hankel ĥ.
pub fn kernel_radial<T: Real>(ell: usize, r: T, rp: T, lam: Complex<T>) -> Result<Complex<T>> {
    if !(r > T::zero()) || !(rp > T::zero()) {
        return Err(Error::DiagonalSingularity);
    }
    if ell > ELL_LIMIT {
        return Err(Error::InvalidArgument(format!("angular momentum {ell} exceeds {ELL_LIMIT}")));
    }
    check_pole(lam, lit(LAMBDA_MIN))?;
    let (lo, hi) = if r <= rp { (r, rp) } else { (rp, r) };
    let j = riccati_j(ell, lam * lo)?;
    let h = riccati_h(ell, lam * hi)?;
    let g = i_unit::<T>() / lam * j[ell] * h[ell];
    if !(g.re.is_finite() && g.im.is_finite()) {
        return Err(Error::RecurrenceOverflow { ell, modulus: (lam.norm() * hi).as_f64() });
    }
    Ok(g)
}

/// Factors (a_m, b_m) with kernel(x_m, x_n) = a_{min(m,n)} b_{max(m,n)} for
/// ascending nodes.
pub(crate) fn green_factors<T: Real>(
    sector: Sector,
    nodes: &[T],
    lam: Complex<T>,
) -> Result<(Vec<Complex<T>>, Vec<Complex<T>>)> {
    check_pole(lam, lit(LAMBDA_MIN))?;
    let i = i_unit::<T>();
    match sector {
        Sector::Line => {
            let c = i / (lam * lit::<T>(2.0));
            let a = nodes.iter().map(|&x| c * (-i * lam * x).exp()).collect();
            let b = nodes.iter().map(|&x| (i * lam * x).exp()).collect();
            Ok((a, b))
        }
        Sector::Radial(ell) => {
            if ell > ELL_LIMIT {
                return Err(Error::InvalidArgument(format!("angular momentum {ell} exceeds {ELL_LIMIT}")));
            }
            let c = i / lam;
            let mut a = Vec::with_capacity(nodes.len());
            let mut b = Vec::with_capacity(nodes.len());
            for &r in nodes {
                if !(r > T::zero()) {
                    return Err(Error::DiagonalSingularity);
                }
                let z = lam * r;
                if ell == 0 {
                    a.push(c * z.sin());
                    b.push(-i * (i * z).exp());
                } else {
                    a.push(c * riccati_j(ell, z)?[ell]);
                    b.push(riccati_h(ell, z)?[ell]);
                }
            }
            if a.iter().chain(&b).any(|z: &Complex<T>| !(z.re.is_finite() && z.im.is_finite())) {
                return Err(Error::RecurrenceOverflow { ell, modulus: (lam.norm() * nodes[nodes.len() - 1]).as_f64() });
            }
            Ok((a, b))
        }
    }
}

/// Nyström discretization of an integral operator: A[m][n] = k(x_m, x_n) w_n.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelMatrix<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub entries: CMatrix<T>,
}

impl<T: Real> KernelMatrix<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// √w_m k(x_m, x_n) √w_n: the matrix of the operator in an orthonormal
    /// basis of the quadrature space.
    pub fn symmetrized(&self) -> CMatrix<T> {
        let s: Vec<T> = self.weights.iter().map(|w| w.sqrt()).collect();
        CMatrix::from_fn(self.len(), self.len(), |m, n| self.entries[(m, n)] * (s[m] / s[n]))
    }

    pub fn to_csv(&self) -> String {
        self.entries.to_csv()
    }
}

/// Quadrature nodes on the support of a sector: [-R, R] or (0, R].
pub fn sector_rule<T: Real>(sector: Sector, lo: T, hi: T, n: usize, rule: NodeRule) -> Rule<T> {
    let (a, b) = match sector {
        Sector::Line => (lo, hi),
        Sector::Radial(_) => (lo.max(T::zero()), hi),
    };
    Rule::of_kind(rule, n).mapped(a, b)
}

/// Nyström matrix of χ_R R₀(λ) χ_R on [-R, R] (line) or (0, R] (radial sector).
pub fn assemble_cutoff_resolvent<T: Real>(
    radius: T,
    lam: Complex<T>,
    n: usize,
    sector: Sector,
    rule: NodeRule,
) -> Result<KernelMatrix<T>> {
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 nodes, got {n}")));
    }
    let q = sector_rule(sector, -radius, radius, n, rule);
    let entries = match sector {
        Sector::Line => {
            check_pole(lam, lit(LAMBDA_MIN))?;
            let mut m = CMatrix::zeros(n, n);
            for a in 0..n {
                for b in 0..n {
                    m[(a, b)] = kernel_1d(q.nodes[a], q.nodes[b], lam)? * q.weights[b];
                }
            }
            m
        }
        Sector::Radial(_) => {
            let (fa, fb) = green_factors(sector, &q.nodes, lam)?;
            CMatrix::from_fn(n, n, |a, b| {
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                fa[lo] * fb[hi] * q.weights[b]
            })
        }
    };
    if !entries.is_finite() {
        return Err(Error::NonConvergence("non-finite kernel matrix entries".into()));
    }
    Ok(KernelMatrix { nodes: q.nodes, weights: q.weights, entries })
}

/// L² operator norm of the discretized operator, by power iteration on
/// A*A of the weight-symmetrized matrix (relative tolerance 1e-10).
pub fn operator_norm<T: Real>(a: &KernelMatrix<T>) -> Result<T> {
    linalg::spectral_norm(&a.symmetrized(), lit(1e-10))
}

/// Singular values of the weight-symmetrized matrix, descending.
pub fn singular_values<T: Real>(a: &KernelMatrix<T>) -> Vec<T> {
    linalg::singular_values(&a.symmetrized())
}

/// Romberg-extrapolated operator norm of χ_R R₀(λ) χ_R from midpoint
/// discretizations with n, 2n, 4n nodes. Returns (value, error estimate).
pub fn resolvent_norm<T: Real>(radius: T, lam: Complex<T>, sector: Sector, n: usize) -> Result<(T, T)> {
    let mut seq = Vec::with_capacity(3);
    for level in 0..3 {
        let k = assemble_cutoff_resolvent(radius, lam, n << level, sector, NodeRule::Midpoint)?;
        seq.push(operator_norm(&k)?);
    }
    Ok(romberg_real(&seq))
}

/// Romberg-extrapolated leading `count` singular values (n, 2n, 4n midpoint nodes).
pub fn extrapolated_singular_values<T: Real>(
    radius: T,
    lam: Complex<T>,
    sector: Sector,
    n: usize,
    count: usize,
) -> Result<Vec<T>> {
    if count > n {
        return Err(Error::InvalidArgument("more singular values requested than nodes".into()));
    }
    let levels: Vec<Vec<T>> = (0..3)
        .map(|level| {
            assemble_cutoff_resolvent(radius, lam, n << level, sector, NodeRule::Midpoint).map(|k| singular_values(&k))
        })
        .collect::<Result<_>>()?;
    Ok((0..count)
        .map(|j| romberg_real(&[levels[0][j], levels[1][j], levels[2][j]]).0)
        .collect())
}

/// Empirical resolvent-bound constant over a λ grid.
#[derive(Clone, Debug, Serialize)]
pub struct BoundReport {
    pub dimension: usize,
    /// α = 2R in the exponential weight.
    pub alpha: f64,
    /// sup over the grid of the weighted norm (C_ρ for d = 1, D_ρ for d = 3).
    pub constant: f64,
    pub argmax: (f64, f64),
    /// (Re λ, Im λ, ‖χR₀χ‖, weighted value) per grid point.
    pub samples: Vec<(f64, f64, f64, f64)>,
}

/// Computes sup_λ ‖χR₀(λ)χ‖·|λ|·e^{α Im λ} (line) or ‖χR₀(λ)χ‖·e^{α Im λ}
/// (radial sector) with α = 2R, using n midpoint nodes per assembly.
pub fn verify_resolvent_bound<T: Real>(
    radius: T,
    sector: Sector,
    grid: &[Complex<T>],
    n: usize,
) -> Result<BoundReport> {
    let alpha = radius * lit(2.0);
    let mut samples = Vec::with_capacity(grid.len());
    let mut best = (T::neg_infinity(), (0.0, 0.0));
    for &lam in grid {
        let k = assemble_cutoff_resolvent(radius, lam, n, sector, NodeRule::Midpoint)?;
        let norm = operator_norm(&k)?;
        let mut w = norm * (alpha * lam.im).exp();
        if sector == Sector::Line {
            w *= lam.norm();
        }
        if !w.is_finite() {
            return Err(Error::NonConvergence("resolvent bound is not finite".into()));
        }
        if w > best.0 {
            best = (w, (lam.re.as_f64(), lam.im.as_f64()));
        }
        samples.push((lam.re.as_f64(), lam.im.as_f64(), norm.as_f64(), w.as_f64()));
    }
    Ok(BoundReport {
        dimension: sector.dimension(),
        alpha: alpha.as_f64(),
        constant: best.0.max(T::zero()).as_f64(),
        argmax: best.1,
        samples,
    })
}

/// Log–log decay fit of singular values.
#[derive(Clone, Debug, Serialize)]
pub struct DecayReport {
    pub slope: f64,
    pub intercept: f64,
    /// Fitted index range (1-based, inclusive).
    pub fit_range: (usize, usize),
    pub resolved: usize,
    /// −2/d + 0.1
    pub bound: f64,
    pub within_bound: bool,
    pub singular_values: Vec<f64>,
}

/// Singular values resolved above this threshold count as reliable.
pub const SINGULAR_FLOOR: f64 = 1e-13;

/// Fits log σ_j against log j over j ∈ [1, min(n/4, resolved)] and compares
/// the slope with the −2/d decay.
pub fn verify_singular_decay<T: Real>(radius: T, sector: Sector, lam: Complex<T>, n: usize) -> Result<DecayReport> {
    let k = assemble_cutoff_resolvent(radius, lam, n, sector, NodeRule::Midpoint)?;
    let sv = singular_values(&k);
    let resolved = sv.iter().take_while(|&&s| s > lit(SINGULAR_FLOOR)).count();
    if resolved < 30 {
        return Err(Error::InsufficientSingularValues { found: resolved, needed: 30, threshold: SINGULAR_FLOOR });
    }
    let hi = (n / 4).min(resolved).max(2);
    let xs: Vec<f64> = (1..=hi).map(|j| (j as f64).ln()).collect();
    let ys: Vec<f64> = sv[..hi].iter().map(|s| s.as_f64().ln()).collect();
    let (slope, intercept) = linear_fit(&xs, &ys);
    let bound = -2.0 / sector.dimension() as f64 + 0.1;
    Ok(DecayReport {
        slope,
        intercept,
        fit_range: (1, hi),
        resolved,
        bound,
        within_bound: slope <= bound,
        singular_values: sv.iter().map(|s| s.as_f64()).collect(),
    })
}

/// Ordinary least-squares line through (x, y); returns (slope, intercept).
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn line_kernel_examples() {
        assert!((kernel_1d(0.0, 0.0, c(0.0, 1.0)).unwrap() - c(0.5, 0.0)).norm() < 1e-15);
        assert!((kernel_1d(1.0, 0.0, c(1.0, 0.0)).unwrap() - c(-0.420735492403948, 0.270151152934070)).norm() < 1e-12);
        assert!((kernel_1d(0.0, 0.0, c(0.0, -1.0)).unwrap() - c(-0.5, 0.0)).norm() < 1e-15);
        assert!(matches!(kernel_1d(0.0, 0.0, c(1e-4, 0.0)), Err(Error::PoleProximity { .. })));
    }

    #[test]
    fn three_dimensional_kernel_examples() {
        let pi = std::f64::consts::PI;
        assert!((kernel_3d(1.0, c(0.0, 0.0)).unwrap().re - 1.0 / (4.0 * pi)).abs() < 1e-15);
        assert!((kernel_3d(2.0, c(0.0, 0.0)).unwrap().re - 1.0 / (8.0 * pi)).abs() < 1e-15);
        assert!(kernel_3d(0.0, c(1.0, 0.0)).is_err());
    }

    #[test]
    fn s_wave_kernel_is_minus_the_textbook_form() {
        let lam = c(1.3, -0.4);
        let (r, rp) = (0.3, 0.8);
        let i = c(0.0, 1.0);
        let textbook = ((i * lam * (r + rp)).exp() - (i * lam * (rp - r)).exp()) / (-2.0 * i * lam);
        let g = kernel_radial(0, r, rp, lam).unwrap();
        assert!((g + textbook).norm() < 1e-14);
    }

    #[test]
    fn factors_reproduce_kernels() {
        let lam = c(2.0, -0.7);
        let nodes = [0.1, 0.45, 0.9];
        for sector in [Sector::Line, Sector::Radial(0), Sector::Radial(3)] {
            let (a, b) = green_factors(sector, &nodes, lam).unwrap();
            let k = match sector {
                Sector::Line => kernel_1d(nodes[0], nodes[2], lam).unwrap(),
                Sector::Radial(l) => kernel_radial(l, nodes[0], nodes[2], lam).unwrap(),
            };
            assert!((a[0] * b[2] - k).norm() < 1e-13 * k.norm());
        }
    }
}
