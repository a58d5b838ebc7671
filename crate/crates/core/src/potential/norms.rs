use super::{index_set::FrechetIndexing, sup_of, Jets, Potential, Shape};
use crate::error::{Error, Result};
use crate::quadrature::{integrate, integrate_many};
use crate::scalar::{lit, Real};

pub(crate) const REL_TOL: f64 = 1e-12;

/// Value of the truncated Fréchet metric with the bound on the omitted tail.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrechetValue<T> {
    pub value: T,
    pub tail_bound: T,
}

/// (2n - 1)!! with (-1)!! = 1.
fn odd_double_factorial(n: usize) -> f64 {
    let mut p = 1.0;
    let mut k = 1;
    while k + 1 <= 2 * n {
        p *= k as f64;
        k += 2;
    }
    p
}

/// Angular weight of D^α for radial functions in R³:
/// ‖D^α V‖² = weight(α) · ‖|ξ|^{|α|} V̂‖² (Plancherel normalization).
pub fn radial_multi_index_weight(alpha: &[usize]) -> f64 {
    let k: usize = alpha.iter().sum();
    alpha.iter().map(|&a| odd_double_factorial(a)).product::<f64>() / odd_double_factorial(k + 1)
}

/// Σ over |α| = k (α ∈ N³) of the angular weights.
fn radial_degree_weight(k: usize) -> f64 {
    let mut s = 0.0;
    for a in 0..=k {
        for b in 0..=(k - a) {
            s += radial_multi_index_weight(&[a, b, k - a - b]);
        }
    }
    s
}

fn merged_breaks<T: Real>(a: &[T], b: &[T]) -> Vec<T> {
    let mut all: Vec<T> = a.iter().chain(b).cloned().collect();
    all.sort_by(|x, y| x.partial_cmp(y).unwrap());
    all.dedup_by(|x, y| (*x - *y).abs() <= T::epsilon() * (T::one() + x.abs()));
    all
}

/// ‖|ξ|^k f̂‖² for a radial profile, using Δ^m f = u^{(2m)}/r with u = r f.
/// `jet(r)` must return f, f', ..., f^(k) at r.
fn radial_energy<T: Real>(jet: &dyn Fn(T) -> Vec<T>, ks: &[usize], breaks: &[T]) -> Vec<T> {
    let four_pi = lit::<T>(4.0) * T::PI();
    let u = |f: &[T], r: T, n: usize| -> T {
        if n == 0 {
            r * f[0]
        } else {
            r * f[n] + T::from_usize_lossy(n) * f[n - 1]
        }
    };
    let q = integrate_many(
        |r| {
            let f = jet(r);
            ks.iter()
                .map(|&k| {
                    let g = if k % 2 == 0 { u(&f, r, k) } else { u(&f, r, k) - u(&f, r, k - 1) / r };
                    g * g
                })
                .collect()
        },
        ks.len(),
        breaks,
        lit(REL_TOL),
    );
    q.iter().map(|q| four_pi * q.value).collect()
}

impl<T: Real> Potential<T> {
    /// Integral of `f` applied to the profile variable against the
    /// dimension's measure (dx on the line, 4πr² dr radially).
    pub(crate) fn measure_integral<F: Fn(T) -> T>(&self, f: F) -> T {
        let breaks = self.breakpoints();
        if self.dimension == 1 {
            integrate(f, &breaks, lit(REL_TOL)).value
        } else {
            let four_pi = lit::<T>(4.0) * T::PI();
            integrate(|r| four_pi * r * r * f(r), &breaks, lit(REL_TOL)).value
        }
    }

    /// ∫ V over R^d.
    pub fn integral(&self) -> T {
        match (&self.shape, self.dimension) {
            (Shape::SquareWell { depth, half_width }, 1) => *depth * *half_width * lit(2.0),
            (Shape::SquareWell { depth, half_width }, _) => {
                *depth * lit::<T>(4.0 / 3.0) * T::PI() * half_width.powi(3)
            }
            _ => self.measure_integral(|x| self.profile(x)),
        }
    }

    /// ‖V‖_p for p in [1, ∞]; pass `T::infinity()` for the sup norm.
    pub fn lp_norm(&self, p: T) -> Result<T> {
        if !(p >= T::one()) {
            return Err(Error::InvalidArgument(format!("L^p norm needs p >= 1, got {p}")));
        }
        if p.is_infinite() {
            return Ok(self.sup_norm());
        }
        if self.is_zero() {
            return Ok(T::zero());
        }
        let integral = match (&self.shape, self.dimension) {
            (Shape::SquareWell { depth, half_width }, 1) => depth.abs().powf(p) * *half_width * lit(2.0),
            (Shape::SquareWell { depth, half_width }, _) => {
                depth.abs().powf(p) * lit::<T>(4.0 / 3.0) * T::PI() * half_width.powi(3)
            }
            _ => self.measure_integral(|x| self.profile(x).abs().powf(p)),
        };
        Ok(integral.powf(T::one() / p))
    }

    /// ‖D^α V‖₂ for a multi-index of length d.
    pub fn derivative_l2_norm(&self, alpha: &[usize]) -> Result<T> {
        if alpha.len() != self.dimension {
            return Err(Error::InvalidArgument("multi-index length must equal the dimension".into()));
        }
        let k: usize = alpha.iter().sum();
        if k == 0 {
            return self.lp_norm(lit(2.0));
        }
        let jets = self.jets(k)?;
        if self.dimension == 1 {
            let q = integrate(|x| jets.at(x)[k].powi(2), &self.breakpoints(), lit(REL_TOL));
            Ok(q.value.sqrt())
        } else {
            let e = radial_energy(&|r| jets.at(r), &[k], &self.breakpoints())[0];
            Ok((lit::<T>(radial_multi_index_weight(alpha)) * e).sqrt())
        }
    }

    /// Squared norms Σ_{|α| = k} ‖D^α V‖² for k = 0..=s.
    pub fn derivative_energies(&self, s: usize) -> Result<Vec<T>> {
        if self.is_zero() {
            return Ok(vec![T::zero(); s + 1]);
        }
        if s == 0 {
            return Ok(vec![self.lp_norm(lit(2.0))?.powi(2)]);
        }
        let jets = self.jets(s)?;
        let breaks = self.breakpoints();
        if self.dimension == 1 {
            let q = integrate_many(|x| jets.at(x).iter().map(|v| *v * *v).collect(), s + 1, &breaks, lit(REL_TOL));
            Ok(q.iter().map(|q| q.value).collect())
        } else {
            let ks: Vec<usize> = (0..=s).collect();
            let e = radial_energy(&|r| jets.at(r), &ks, &breaks);
            Ok(e.iter().enumerate().map(|(k, &v)| v * lit(radial_degree_weight(k))).collect())
        }
    }

    /// ‖V‖_{s,2} = (Σ_{|α| ≤ s} ‖D^α V‖₂²)^{1/2}.
    pub fn sobolev_norm(&self, s: usize) -> Result<T> {
        if s > 0 && !self.is_smooth() {
            return Err(Error::NonSmooth("SquareWell"));
        }
        Ok(self.derivative_energies(s)?.into_iter().sum::<T>().sqrt())
    }

    /// D^α V sampled on a grid.
    ///
    /// Bump sums are differentiated exactly (Taylor-mode); grid potentials by
    /// Fourier differentiation. In three dimensions only α = 0 keeps the
    /// result radial, so other multi-indices are rejected.
    pub fn derivative(&self, alpha: &[usize]) -> Result<Potential<T>> {
        if alpha.len() != self.dimension {
            return Err(Error::InvalidArgument("multi-index length must equal the dimension".into()));
        }
        if !self.is_smooth() {
            return Err(Error::NonSmooth("SquareWell"));
        }
        let k: usize = alpha.iter().sum();
        if self.dimension == 3 && k > 0 {
            return Err(Error::InvalidArgument(
                "derivatives of radial potentials with |alpha| > 0 are not radial".into(),
            ));
        }
        match &self.shape {
            Shape::GridSampled { spacing, .. } => {
                let jets = self.jets(k)?;
                let grid = match &jets.kind {
                    super::JetKind::Grid { derivs, .. } => derivs[k].clone(),
                    _ => unreachable!("grid potentials produce grid jets"),
                };
                Potential::new(Shape::GridSampled { spacing: *spacing, samples: grid }, self.dimension, self.support_radius)
            }
            _ => {
                let n = 2049;
                let r = self.support_radius;
                let (origin, span) = if self.dimension == 1 { (-r, r * lit(2.0)) } else { (T::zero(), r) };
                let h = span / T::from_usize_lossy(n - 1);
                let jets = self.jets(k)?;
                let samples = (0..n)
                    .map(|i| {
                        let x = origin + h * T::from_usize_lossy(i);
                        if x.abs() >= r { T::zero() } else { jets.at(x)[k] }
                    })
                    .collect();
                Potential::new(Shape::GridSampled { spacing: h, samples }, self.dimension, self.support_radius)
            }
        }
    }

    /// Truncated Fréchet metric Σ_{i ≤ i_max} 2^{-i} a_i/(1 + a_i) with
    /// a_i = ‖D^{α(i)}(V - W)‖₂.
    pub fn frechet_metric(&self, other: &Potential<T>, idx: &FrechetIndexing) -> Result<FrechetValue<T>> {
        if self.dimension != other.dimension || idx.dimension() != self.dimension {
            return Err(Error::InvalidArgument("Fréchet metric needs equal dimensions".into()));
        }
        let alphas: Vec<Vec<usize>> = (1..=idx.depth()).map(|i| idx.multi_index(i)).collect();
        let max_order = alphas.iter().map(|a| a.iter().sum::<usize>()).max().unwrap_or(0);
        let jv = self.jets(max_order)?;
        let jw = other.jets(max_order)?;
        let diff = |x: T| -> Vec<T> { jv.at(x).iter().zip(jw.at(x)).map(|(a, b)| *a - b).collect() };
        let breaks = merged_breaks(&self.breakpoints(), &other.breakpoints());
        let energies: Vec<T> = if self.dimension == 1 {
            integrate_many(|x| diff(x).iter().map(|v| *v * *v).collect(), max_order + 1, &breaks, lit(REL_TOL))
                .iter()
                .map(|q| q.value)
                .collect()
        } else {
            let ks: Vec<usize> = (0..=max_order).collect();
            radial_energy(&diff, &ks, &breaks)
        };
        let mut value = T::zero();
        let mut weight = T::one();
        for alpha in &alphas {
            weight *= lit(0.5);
            let k: usize = alpha.iter().sum();
            let e = if self.dimension == 1 { energies[k] } else { energies[k] * lit(radial_multi_index_weight(alpha)) };
            let a = e.max(T::zero()).sqrt();
            value += weight * a / (T::one() + a);
        }
        Ok(FrechetValue { value, tail_bound: weight })
    }
}

/// Sup norm of the k-th profile derivative.
pub(crate) fn derivative_sup<T: Real>(jets: &Jets<T>, k: usize, breaks: &[T]) -> T {
    sup_of(|x| jets.at(x)[k].abs(), breaks)
}
