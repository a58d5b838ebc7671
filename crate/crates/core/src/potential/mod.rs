//! Compactly supported real potentials on the line or radial in R³.

mod fourier;
mod index_set;
mod io;
mod inequalities;
mod norms;

pub use index_set::{enumerate_index_set, FrechetIndexing, MultiIndexTuple};
pub use io::{PotentialDoc, BumpDoc};
pub use inequalities::{
    inequality_report, sobolev_constant_3d, verify_inequality_suite, InequalityCheck, InequalityReport, SobolevBound,
    QUADRATURE_SLACK, SUP_CONSTANT_1D,
};
pub use norms::FrechetValue;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};
use crate::taylor::bump_derivatives;

/// One smooth bump `amplitude * exp(-1/(1 - ((x-center)/width)^2))` on `|x - center| < width`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Bump<T> {
    pub amplitude: T,
    pub center: T,
    pub width: T,
}

impl<T: Real> Bump<T> {
    pub fn new(amplitude: T, center: T, width: T) -> Self {
        Bump { amplitude, center, width }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shape<T> {
    /// `depth` on `|x| < half_width`, zero elsewhere.
    SquareWell { depth: T, half_width: T },
    BumpSum(Vec<Bump<T>>),
    /// Samples on `x_i = -R + i h` (d = 1) or `r_i = i h` (d = 3).
    GridSampled { spacing: T, samples: Vec<T> },
}

/// A real potential supported in the closed ball of radius `R`.
#[derive(Clone, Debug, PartialEq)]
pub struct Potential<T> {
    shape: Shape<T>,
    dimension: usize,
    support_radius: T,
}

impl<T: Real> Potential<T> {
    pub fn new(shape: Shape<T>, dimension: usize, support_radius: T) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidPotential(m));
        if dimension != 1 && dimension != 3 {
            return bad(format!("dimension must be 1 or 3, got {dimension}"));
        }
        if !(support_radius > T::zero()) || !support_radius.is_finite() {
            return bad("support_radius must be positive and finite".into());
        }
        let slack = support_radius * lit(1e-12);
        match &shape {
            Shape::SquareWell { depth, half_width } => {
                if !depth.is_finite() || !(*half_width > T::zero()) || *half_width > support_radius + slack {
                    return bad("square well needs finite depth and 0 < half_width <= support_radius".into());
                }
            }
            Shape::BumpSum(bumps) => {
                for b in bumps {
                    if !b.amplitude.is_finite() || !b.center.is_finite() || !(b.width > T::zero()) {
                        return bad("bump needs finite amplitude/center and positive width".into());
                    }
                    if dimension == 1 && b.center.abs() + b.width > support_radius + slack {
                        return bad(format!(
                            "bump at {} with width {} leaves the support ball",
                            b.center, b.width
                        ));
                    }
                    if dimension == 3 {
                        if b.center < T::zero() || b.center + b.width > support_radius + slack {
                            return bad("radial bump must satisfy 0 <= center and center + width <= R".into());
                        }
                        if b.center > T::zero() && b.center < b.width {
                            return bad("radial bump must be centred at 0 or stay away from the origin".into());
                        }
                    }
                }
            }
            Shape::GridSampled { spacing, samples } => {
                if !(*spacing > T::zero()) || samples.len() < 4 {
                    return bad("grid needs positive spacing and at least 4 samples".into());
                }
                if samples.iter().any(|v| !v.is_finite()) {
                    return bad("grid samples must be finite".into());
                }
                let span = if dimension == 1 { support_radius * lit(2.0) } else { support_radius };
                let covered = *spacing * T::from_usize_lossy(samples.len() - 1);
                if (covered - span).abs() > *spacing * lit(1e-6) {
                    return bad(format!(
                        "grid of {} samples at spacing {} covers {} but the support needs {}",
                        samples.len(),
                        spacing,
                        covered,
                        span
                    ));
                }
            }
        }
        Ok(Potential { shape, dimension, support_radius })
    }

    /// The zero potential (an empty bump sum).
    pub fn zero(dimension: usize, support_radius: T) -> Result<Self> {
        Self::new(Shape::BumpSum(Vec::new()), dimension, support_radius)
    }

    pub fn square_well(dimension: usize, depth: T, half_width: T) -> Result<Self> {
        Self::new(Shape::SquareWell { depth, half_width }, dimension, half_width)
    }

    pub fn bump_sum(dimension: usize, bumps: Vec<Bump<T>>, support_radius: T) -> Result<Self> {
        Self::new(Shape::BumpSum(bumps), dimension, support_radius)
    }

    pub fn grid(dimension: usize, spacing: T, samples: Vec<T>, support_radius: T) -> Result<Self> {
        Self::new(Shape::GridSampled { spacing, samples }, dimension, support_radius)
    }

    pub fn shape(&self) -> &Shape<T> {
        &self.shape
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn support_radius(&self) -> T {
        self.support_radius
    }

    pub fn is_radial(&self) -> bool {
        self.dimension == 3
    }

    pub fn kind_name(&self) -> &'static str {
        match self.shape {
            Shape::SquareWell { .. } => "SquareWell",
            Shape::BumpSum(_) => "BumpSum",
            Shape::GridSampled { .. } => "GridSampled",
        }
    }

    pub fn is_smooth(&self) -> bool {
        !matches!(self.shape, Shape::SquareWell { .. })
    }

    pub fn is_zero(&self) -> bool {
        match &self.shape {
            Shape::SquareWell { depth, .. } => *depth == T::zero(),
            Shape::BumpSum(b) => b.iter().all(|b| b.amplitude == T::zero()),
            Shape::GridSampled { samples, .. } => samples.iter().all(|&v| v == T::zero()),
        }
    }

    /// V at a point of R^d.
    pub fn evaluate(&self, x: &[T]) -> T {
        assert_eq!(x.len(), self.dimension, "point dimension mismatch");
        let r = if self.dimension == 1 { x[0] } else { x.iter().map(|&v| v * v).sum::<T>().sqrt() };
        self.profile(r)
    }

    /// The one-variable profile: V(x) for d = 1, V(|x|) as a function of r
    /// (extended evenly to r < 0) for d = 3.
    pub fn profile(&self, x: T) -> T {
        let x = if self.dimension == 3 { x.abs() } else { x };
        if x.abs() >= self.support_radius {
            return T::zero();
        }
        match &self.shape {
            Shape::SquareWell { depth, half_width } => {
                if x.abs() < *half_width {
                    *depth
                } else {
                    T::zero()
                }
            }
            Shape::BumpSum(bumps) => bumps
                .iter()
                .map(|b| {
                    let t = (x - b.center) / b.width;
                    if t.abs() < T::one() {
                        b.amplitude * (-T::one() / (T::one() - t * t)).exp()
                    } else {
                        T::zero()
                    }
                })
                .sum(),
            Shape::GridSampled { spacing, samples } => {
                let origin = if self.dimension == 1 { -self.support_radius } else { T::zero() };
                interpolate(samples, origin, *spacing, x, self.dimension == 3)
            }
        }
    }

    /// Support hull of the profile variable: [lo, hi] in x (d = 1) or r (d = 3).
    pub fn support_interval(&self) -> (T, T) {
        let r = self.support_radius;
        let (lo, hi) = match &self.shape {
            Shape::SquareWell { half_width, .. } => (-*half_width, *half_width),
            Shape::BumpSum(bumps) if !bumps.is_empty() => bumps.iter().fold((T::infinity(), T::neg_infinity()), |(l, h), b| {
                (l.min(b.center - b.width), h.max(b.center + b.width))
            }),
            Shape::BumpSum(_) => (-r, r),
            Shape::GridSampled { .. } => (-r, r),
        };
        if self.dimension == 3 {
            (T::zero(), hi.min(r))
        } else {
            (lo.max(-r), hi.min(r))
        }
    }

    /// Points where the profile or its derivatives may fail to be smooth,
    /// sorted and including the support hull end points.
    pub fn breakpoints(&self) -> Vec<T> {
        let (lo, hi) = self.support_interval();
        let mut pts = vec![lo, hi];
        if let Shape::BumpSum(bumps) = &self.shape {
            for b in bumps.iter().filter(|b| b.amplitude != T::zero()) {
                for p in [b.center - b.width, b.center + b.width] {
                    if p > lo && p < hi {
                        pts.push(p);
                    }
                }
            }
        }
        pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        pts.dedup_by(|a, b| (*a - *b).abs() <= T::epsilon() * (T::one() + a.abs()));
        pts
    }

    pub fn scaled(&self, c: T) -> Self {
        let shape = match &self.shape {
            Shape::SquareWell { depth, half_width } => Shape::SquareWell { depth: *depth * c, half_width: *half_width },
            Shape::BumpSum(b) => Shape::BumpSum(
                b.iter().map(|b| Bump { amplitude: b.amplitude * c, ..*b }).collect(),
            ),
            Shape::GridSampled { spacing, samples } => Shape::GridSampled {
                spacing: *spacing,
                samples: samples.iter().map(|&v| v * c).collect(),
            },
        };
        Potential { shape, ..self.clone() }
    }

    /// x ↦ V(-x). Radial potentials are returned unchanged.
    pub fn reflected(&self) -> Self {
        if self.dimension == 3 {
            return self.clone();
        }
        let shape = match &self.shape {
            Shape::SquareWell { .. } => self.shape.clone(),
            Shape::BumpSum(b) => Shape::BumpSum(b.iter().map(|b| Bump { center: -b.center, ..*b }).collect()),
            Shape::GridSampled { spacing, samples } => Shape::GridSampled {
                spacing: *spacing,
                samples: samples.iter().rev().cloned().collect(),
            },
        };
        Potential { shape, ..self.clone() }
    }

    /// x ↦ V(x - s) for a bump sum on the line; fails if the shift leaves the ball.
    pub fn translated(&self, s: T) -> Result<Self> {
        match (&self.shape, self.dimension) {
            (Shape::BumpSum(b), 1) => Self::new(
                Shape::BumpSum(b.iter().map(|b| Bump { center: b.center + s, ..*b }).collect()),
                1,
                self.support_radius,
            ),
            _ => Err(Error::InvalidArgument("translation is implemented for bump sums on the line".into())),
        }
    }

    /// Sum of two bump sums with the larger support radius.
    pub fn plus(&self, other: &Self) -> Result<Self> {
        match (&self.shape, &other.shape) {
            (Shape::BumpSum(a), Shape::BumpSum(b)) if self.dimension == other.dimension => {
                let mut all = a.clone();
                all.extend(b.iter().cloned());
                Self::new(Shape::BumpSum(all), self.dimension, self.support_radius.max(other.support_radius))
            }
            _ => Err(Error::InvalidArgument("sums are implemented for bump sums of equal dimension".into())),
        }
    }

    /// Largest |V| over the support.
    pub fn sup_norm(&self) -> T {
        match &self.shape {
            Shape::SquareWell { depth, .. } => depth.abs(),
            _ => sup_of(|x| self.profile(x).abs(), &self.breakpoints()),
        }
    }

    /// Derivative evaluator for the profile up to `order`.
    pub fn jets(&self, order: usize) -> Result<Jets<T>> {
        match &self.shape {
            Shape::SquareWell { depth, half_width } => {
                if order > 0 {
                    return Err(Error::NonSmooth("SquareWell"));
                }
                Ok(Jets { kind: JetKind::Square { depth: *depth, half_width: *half_width }, order, radius: self.support_radius })
            }
            Shape::BumpSum(b) => Ok(Jets { kind: JetKind::Bumps(b.clone()), order, radius: self.support_radius }),
            Shape::GridSampled { spacing, samples } => {
                let even = self.dimension == 3;
                let derivs = fourier::derivative_grids(samples, *spacing, even, order)?;
                let origin = if even { T::zero() } else { -self.support_radius };
                Ok(Jets { kind: JetKind::Grid { origin, spacing: *spacing, derivs, even }, order, radius: self.support_radius })
            }
        }
    }
}

#[derive(Clone, Debug)]
enum JetKind<T> {
    Square { depth: T, half_width: T },
    Bumps(Vec<Bump<T>>),
    Grid { origin: T, spacing: T, derivs: Vec<Vec<T>>, even: bool },
}

/// Evaluates a profile together with its derivatives.
#[derive(Clone, Debug)]
pub struct Jets<T> {
    kind: JetKind<T>,
    order: usize,
    radius: T,
}

impl<T: Real> Jets<T> {
    pub fn order(&self) -> usize {
        self.order
    }

    /// `[f(x), f'(x), ..., f^(order)(x)]`.
    pub fn at(&self, x: T) -> Vec<T> {
        let mut out = vec![T::zero(); self.order + 1];
        match &self.kind {
            JetKind::Square { depth, half_width } => {
                if x.abs() < *half_width && x.abs() < self.radius {
                    out[0] = *depth;
                }
            }
            JetKind::Bumps(bumps) => {
                for b in bumps {
                    if (x - b.center).abs() < b.width {
                        for (o, v) in out.iter_mut().zip(bump_derivatives(b.amplitude, b.center, b.width, x, self.order)) {
                            *o += v;
                        }
                    }
                }
            }
            JetKind::Grid { origin, spacing, derivs, even } => {
                for (m, grid) in derivs.iter().enumerate() {
                    let sign = if *even && x < T::zero() && m % 2 == 1 { -T::one() } else { T::one() };
                    let xx = if *even { x.abs() } else { x };
                    let v = if *even && m % 2 == 1 {
                        interpolate_odd(grid, *spacing, xx)
                    } else {
                        interpolate(grid, *origin, *spacing, xx, *even)
                    };
                    out[m] = sign * v;
                }
            }
        }
        out
    }
}

/// Local cubic Lagrange interpolation of samples on `origin + i h`
/// (zero outside; even reflection about 0 when `even`).
pub(crate) fn interpolate<T: Real>(samples: &[T], origin: T, h: T, x: T, even: bool) -> T {
    let n = samples.len() as isize;
    let get = |i: isize| -> T {
        if even && i < 0 {
            samples.get((-i) as usize).cloned().unwrap_or(T::zero())
        } else if i < 0 || i >= n {
            T::zero()
        } else {
            samples[i as usize]
        }
    };
    interp4(get, origin, h, x)
}

/// Interpolation of an odd function sampled at `r_i = i h`, i >= 0.
fn interpolate_odd<T: Real>(samples: &[T], h: T, x: T) -> T {
    let n = samples.len() as isize;
    let get = |i: isize| -> T {
        if i < 0 {
            -samples.get((-i) as usize).cloned().unwrap_or(T::zero())
        } else if i >= n {
            T::zero()
        } else {
            samples[i as usize]
        }
    };
    interp4(get, T::zero(), h, x)
}

fn interp4<T: Real, G: Fn(isize) -> T>(get: G, origin: T, h: T, x: T) -> T {
    let s = (x - origin) / h;
    let i = s.floor();
    let f = s - i;
    let i = i.to_isize().unwrap_or(isize::MIN / 2);
    let (p0, p1, p2, p3) = (get(i - 1), get(i), get(i + 1), get(i + 2));
    let one = T::one();
    let two = lit::<T>(2.0);
    let six = lit::<T>(6.0);
    // Lagrange basis on nodes -1, 0, 1, 2
    let l0 = -f * (f - one) * (f - two) / six;
    let l1 = (f + one) * (f - one) * (f - two) / two;
    let l2 = -(f + one) * f * (f - two) / two;
    let l3 = (f + one) * f * (f - one) / six;
    p0 * l0 + p1 * l1 + p2 * l2 + p3 * l3
}

/// Maximum of a continuous function over [first, last] of `breaks`:
/// dense sampling followed by golden-section refinement.
pub(crate) fn sup_of<T: Real, F: Fn(T) -> T>(f: F, breaks: &[T]) -> T {
    let mut best = T::zero();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let m = 2048;
        let h = (b - a) / T::from_usize_lossy(m);
        let mut arg = 0;
        let mut val = T::neg_infinity();
        for i in 0..=m {
            let v = f(a + h * T::from_usize_lossy(i));
            if v > val {
                val = v;
                arg = i;
            }
        }
        let mut lo = a + h * T::from_usize_lossy(arg.saturating_sub(1));
        let mut hi = (a + h * T::from_usize_lossy(arg + 1)).min(b);
        let g = lit::<T>(0.6180339887498949);
        for _ in 0..80 {
            let x1 = hi - g * (hi - lo);
            let x2 = lo + g * (hi - lo);
            if f(x1) < f(x2) {
                lo = x1;
            } else {
                hi = x2;
            }
        }
        best = best.max(val).max(f((lo + hi) * lit(0.5)));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_examples() {
        let w = Potential::square_well(1, -10.0, 1.0).unwrap();
        assert_eq!(w.evaluate(&[0.0]), -10.0);
        assert_eq!(w.evaluate(&[2.0]), 0.0);
        let b = Potential::bump_sum(1, vec![Bump::new(1.0, 0.0, 1.0)], 1.0).unwrap();
        assert!((b.evaluate(&[0.0]) - (-1.0f64).exp()).abs() < 1e-15);
        assert_eq!(b.evaluate(&[1.0]), 0.0);
        let r = Potential::bump_sum(3, vec![Bump::new(1.0, 0.0, 1.0)], 1.0).unwrap();
        assert!((r.evaluate(&[0.3, 0.4, 0.0]) - b.evaluate(&[0.5])).abs() < 1e-15);
    }

    #[test]
    fn rejects_bumps_outside_ball() {
        assert!(Potential::bump_sum(1, vec![Bump::new(1.0, 0.5, 0.6)], 1.0).is_err());
        assert!(Potential::bump_sum(3, vec![Bump::new(1.0, 0.2, 0.5)], 1.0).is_err());
        assert!(Potential::square_well(2, -1.0, 1.0).is_err());
    }

    #[test]
    fn cubic_interpolation_is_exact_for_cubics() {
        let h = 0.1;
        let samples: Vec<f64> = (0..21).map(|i| {
            let x = -1.0 + i as f64 * h;
            x * x * x - x
        }).collect();
        let v = interpolate(&samples, -1.0, h, 0.234, false);
        assert!((v - (0.234f64.powi(3) - 0.234)).abs() < 1e-13);
    }

    #[test]
    fn sup_norm_of_bump() {
        let b = Potential::bump_sum(1, vec![Bump::new(-2.0, 0.1, 0.5)], 1.0).unwrap();
        assert!((b.sup_norm() - 2.0 * (-1.0f64).exp()).abs() < 1e-12);
    }
}
