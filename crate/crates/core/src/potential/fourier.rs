use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::scalar::{lit, Real};

/// Fraction of derivative energy allowed in the top third of the spectrum.
const TAIL_FRACTION: f64 = 1e-6;

/// Spectral derivatives of order `0..=order` of a compactly supported
/// sampled profile, by discrete Fourier differentiation on a zero-padded
/// periodic extension at least twice as wide as the support.
///
/// With `even`, samples are `f(i h)` for `i >= 0` of an even function and the
/// returned grids use the same layout.
pub(crate) fn derivative_grids<T: Real>(samples: &[T], h: T, even: bool, order: usize) -> Result<Vec<Vec<T>>> {
    let full: Vec<T> = if even {
        samples.iter().skip(1).rev().chain(samples.iter()).cloned().collect()
    } else {
        samples.to_vec()
    };
    let k = full.len();
    let pad = k / 2 + 2;
    let m = k + 2 * pad;
    let mut buf: Vec<Complex<T>> = vec![Complex::new(T::zero(), T::zero()); m];
    for (i, &v) in full.iter().enumerate() {
        buf[pad + i] = Complex::new(v, T::zero());
    }
    let mut planner = FftPlanner::<T>::new();
    let fwd = planner.plan_fft_forward(m);
    let inv = planner.plan_fft_inverse(m);
    fwd.process(&mut buf);
    let period = h * T::from_usize_lossy(m);
    let omega: Vec<T> = (0..m)
        .map(|j| {
            let jj = if j <= m / 2 { j as f64 } else { j as f64 - m as f64 };
            lit::<T>(2.0 * std::f64::consts::PI * jj) / period
        })
        .collect();
    let mut out = Vec::with_capacity(order + 1);
    out.push(samples.to_vec());
    for ord in 1..=order {
        let mut spec = buf.clone();
        let mut total = T::zero();
        let mut tail = T::zero();
        for (j, z) in spec.iter_mut().enumerate() {
            let w = omega[j];
            if m % 2 == 0 && j == m / 2 && ord % 2 == 1 {
                *z = Complex::new(T::zero(), T::zero());
                continue;
            }
            // (i w)^ord
            let mag = w.powi(ord as i32);
            let factor = match ord % 4 {
                0 => Complex::new(mag, T::zero()),
                1 => Complex::new(T::zero(), mag),
                2 => Complex::new(-mag, T::zero()),
                _ => Complex::new(T::zero(), -mag),
            };
            *z = *z * factor;
            let e = z.norm_sqr();
            total += e;
            let jj = if j <= m / 2 { j } else { m - j };
            if 3 * jj > m {
                tail += e;
            }
        }
        if total > T::zero() && tail > lit::<T>(TAIL_FRACTION) * total {
            return Err(Error::OrderTooHigh { order: ord });
        }
        inv.process(&mut spec);
        let scale = T::one() / T::from_usize_lossy(m);
        let vals: Vec<T> = spec[pad..pad + k].iter().map(|z| z.re * scale).collect();
        let grid = if even { vals[samples.len() - 1..].to_vec() } else { vals };
        out.push(grid);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn differentiates_gaussian_like_profile() {
        // exp(-1/(1-x^2)) sampled on [-1, 1]
        let n = 801;
        let h = 2.0 / (n - 1) as f64;
        let f = |x: f64| if x.abs() < 1.0 { (-1.0 / (1.0 - x * x)).exp() } else { 0.0 };
        let samples: Vec<f64> = (0..n).map(|i| f(-1.0 + i as f64 * h)).collect();
        let d = derivative_grids(&samples, h, false, 2).unwrap();
        for i in [100, 400, 555] {
            let x = -1.0 + i as f64 * h;
            let exact = crate::taylor::bump_derivatives(1.0, 0.0, 1.0, x, 2);
            assert!((d[1][i] - exact[1]).abs() < 1e-8, "{} vs {}", d[1][i], exact[1]);
            assert!((d[2][i] - exact[2]).abs() < 1e-7);
        }
    }

    #[test]
    fn coarse_grid_rejects_high_orders() {
        let n = 21;
        let h = 0.1;
        let samples: Vec<f64> = (0..n).map(|i| if i == 10 { 1.0 } else { 0.0 }).collect();
        assert!(matches!(derivative_grids(&samples, h, false, 3), Err(Error::OrderTooHigh { .. })));
    }
}
