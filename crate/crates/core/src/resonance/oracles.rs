//! Independent routes to resonances of simple potentials: transfer
//! matrices, the s-wave matching condition, square-well bound states and
//! finite-difference Dirichlet boxes.

use crate::error::{Error, Result};
use crate::linalg::SymTridiagonal;
use crate::potential::{Potential, Shape};
use crate::scalar::{Complex, Real};

use super::{find_zeros, ResonanceSet, SearchOptions, SearchRegion};

/// Piecewise-constant potential on the line: value `values[i]` on
/// `[breaks[i], breaks[i + 1])`.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseConstant {
    pub breaks: Vec<f64>,
    pub values: Vec<f64>,
}

impl PiecewiseConstant {
    pub fn new(breaks: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if values.is_empty() || breaks.len() != values.len() + 1 {
            return Err(Error::InvalidPotential("need one more break than piece values".into()));
        }
        if breaks.windows(2).any(|w| !(w[0] < w[1])) || breaks.iter().chain(&values).any(|v| !v.is_finite()) {
            return Err(Error::InvalidPotential("breaks must be finite and increasing".into()));
        }
        Ok(PiecewiseConstant { breaks, values })
    }

    /// Square wells on the line; anything else is rejected.
    pub fn from_potential<T: Real>(v: &Potential<T>) -> Result<Self> {
        if v.dimension() != 1 {
            return Err(Error::InvalidPotential("transfer matrices need a potential on the line".into()));
        }
        match v.shape() {
            Shape::SquareWell { depth, half_width } => {
                Self::new(vec![-half_width.as_f64(), half_width.as_f64()], vec![depth.as_f64()])
            }
            Shape::BumpSum(b) if b.is_empty() => {
                let r = v.support_radius().as_f64();
                Self::new(vec![-r, r], vec![0.0])
            }
            _ => Err(Error::InvalidPotential(format!("{} is not piecewise constant", v.kind_name()))),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    /// Splits piece `i` at its midpoint.
    pub fn split(&self, i: usize) -> Self {
        let mut out = self.clone();
        let mid = 0.5 * (self.breaks[i] + self.breaks[i + 1]);
        out.breaks.insert(i + 1, mid);
        out.values.insert(i, self.values[i]);
        out
    }
}

/// cos(kh) and sin(kh)/k from k², both even in k.
fn propagator(k2: Complex<f64>, h: f64) -> (Complex<f64>, Complex<f64>) {
    let k = k2.sqrt();
    let kh = k * h;
    if kh.norm() < 1e-3 {
        let x = k2 * (h * h);
        let c = 1.0 - x / 2.0 + x * x / 24.0 - x * x * x / 720.0;
        let s = (1.0 - x / 6.0 + x * x / 120.0 - x * x * x / 5040.0) * h;
        (c, s)
    } else {
        (kh.cos(), kh.sin() / k)
    }
}

/// Coefficient of the incoming wave e^{−iλx} to the right of the support
/// for the solution equal to e^{−iλx} on the left, normalized to 1 for
/// V = 0. It vanishes exactly at resonances and at iκ for bound states.
pub fn transfer_matrix_function(v: &PiecewiseConstant, lam: Complex<f64>) -> Complex<f64> {
    let i = Complex::new(0.0, 1.0);
    let x0 = v.breaks[0];
    let mut u = (-i * lam * x0).exp();
    let mut du = -i * lam * u;
    for (p, &val) in v.values.iter().enumerate() {
        let h = v.breaks[p + 1] - v.breaks[p];
        let k2 = lam * lam - val;
        let (c, s) = propagator(k2, h);
        let nu = c * u + s * du;
        let ndu = -k2 * s * u + c * du;
        u = nu;
        du = ndu;
    }
    let x1 = *v.breaks.last().expect("non-empty breaks");
    (i * lam * u - du) * (i * lam * x1).exp() / (2.0 * i * lam)
}

/// Resonances of a piecewise-constant potential as zeros of the transfer
/// matrix matching function.
pub fn transfer_matrix_oracle_1d(v: &PiecewiseConstant, region: &SearchRegion, tol: f64) -> Result<ResonanceSet> {
    region.validate()?;
    if v.is_zero() {
        return Ok(ResonanceSet::empty(*region, tol));
    }
    let f = |z: Complex<f64>| Ok(transfer_matrix_function(v, z));
    find_zeros(&f, region, SearchOptions::new(tol))
}

/// e^{iλa}(cos k′a − iλ sin(k′a)/k′) with k′ = √(λ² − depth): the ℓ = 0
/// outgoing matching condition of a spherical well of radius a.
pub fn swave_function(depth: f64, a: f64, lam: Complex<f64>) -> Complex<f64> {
    let i = Complex::new(0.0, 1.0);
    let (c, s) = propagator(lam * lam - depth, a);
    (i * lam * a).exp() * (c - i * lam * s)
}

/// ℓ = 0 resonances of the spherical well depth·1_{r<a}.
pub fn swave_oracle_3d(depth: f64, a: f64, region: &SearchRegion, tol: f64) -> Result<ResonanceSet> {
    region.validate()?;
    if depth == 0.0 {
        return Ok(ResonanceSet::empty(*region, tol));
    }
    if !(a > 0.0) {
        return Err(Error::InvalidPotential(format!("well radius must be positive, got {a}")));
    }
    let f = |z: Complex<f64>| Ok(swave_function(depth, a, z));
    find_zeros(&f, region, SearchOptions::new(tol))
}

fn bisect<F: Fn(f64) -> f64>(f: F, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid);
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Bound-state decay rates κ > 0 of the well depth·1_{|x|<a} on the line,
/// descending, from k′ sin k′a = κ cos k′a (even) and k′ cos k′a = −κ sin k′a
/// (odd) with k′² + κ² = −depth.
pub fn square_well_bound_states(depth: f64, a: f64) -> Vec<f64> {
    if !(depth < 0.0) || !(a > 0.0) {
        return Vec::new();
    }
    let q = (-depth).sqrt();
    let kappa = |k: f64| (q * q - k * k).max(0.0).sqrt();
    let even = |k: f64| k * (k * a).sin() - kappa(k) * (k * a).cos();
    let odd = |k: f64| k * (k * a).cos() + kappa(k) * (k * a).sin();
    let samples = 20_000;
    let mut out = Vec::new();
    for g in [&even as &dyn Fn(f64) -> f64, &odd] {
        let mut prev_k = 0.0;
        let mut prev = g(prev_k);
        for s in 1..samples {
            let k = q * s as f64 / samples as f64;
            let cur = g(k);
            if prev == 0.0 && prev_k > 0.0 {
                out.push(kappa(prev_k));
            } else if (prev < 0.0) != (cur < 0.0) && cur != 0.0 {
                out.push(kappa(bisect(g, prev_k, k)));
            }
            prev_k = k;
            prev = cur;
        }
    }
    out.retain(|&k| k > 0.0);
    out.sort_by(|a, b| b.total_cmp(a));
    out
}

fn box_eigenvalues<T: Real>(v: &Potential<T>, half_width: f64, cells: usize) -> Vec<f64> {
    let h = 2.0 * half_width / cells as f64;
    let n = cells - 1;
    let inv = 1.0 / (h * h);
    let diag: Vec<T> = (1..=n)
        .map(|i| {
            let x = -half_width + i as f64 * h;
            let avg = 0.5 * (v.profile(T::lit(x - 0.25 * h)) + v.profile(T::lit(x + 0.25 * h))).as_f64();
            T::lit(2.0 * inv + avg)
        })
        .collect();
    let off = vec![T::lit(-inv); n - 1];
    SymTridiagonal::new(diag, off).eigenvalues_below(T::zero()).into_iter().map(|e| e.as_f64()).collect()
}

/// Negative eigenvalues of −u″ + Vu with Dirichlet conditions on
/// [−L, L], from second-order finite differences at spacings h and h/2
/// combined by Richardson extrapolation. Ascending.
pub fn dirichlet_box_eigenvalues<T: Real>(v: &Potential<T>, half_width: f64, h: f64) -> Result<Vec<f64>> {
    if v.dimension() != 1 {
        return Err(Error::InvalidPotential("Dirichlet boxes are implemented on the line".into()));
    }
    if !(half_width > 0.0 && h > 0.0 && h < half_width) {
        return Err(Error::InvalidArgument(format!("invalid box half-width {half_width} or spacing {h}")));
    }
    let cells = (2.0 * half_width / h).round() as usize;
    let coarse = box_eigenvalues(v, half_width, cells);
    let fine = box_eigenvalues(v, half_width, 2 * cells);
    Ok(coarse.iter().zip(&fine).map(|(c, f)| (4.0 * f - c) / 3.0).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_matching_functions_are_one() {
        let free = PiecewiseConstant::new(vec![-1.0, 0.5, 1.0], vec![0.0, 0.0]).unwrap();
        let z = Complex::new(1.3, -0.7);
        assert!((transfer_matrix_function(&free, z) - 1.0).norm() < 1e-13);
        assert!((swave_function(0.0, 1.0, z) - 1.0).norm() < 1e-13);
    }

    #[test]
    fn square_well_has_three_bound_states() {
        // q = √10 ≈ 3.16 and a = 1: qa/(π/2) ≈ 2.01, so three states
        let k = square_well_bound_states(-10.0, 1.0);
        assert_eq!(k.len(), 3);
        let w = PiecewiseConstant::new(vec![-1.0, 1.0], vec![-10.0]).unwrap();
        for kappa in k {
            assert!(transfer_matrix_function(&w, Complex::new(0.0, kappa)).norm() < 1e-10);
        }
    }
}
