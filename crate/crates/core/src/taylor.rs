//! Truncated Taylor arithmetic used for exact derivatives of smooth bumps.

use crate::scalar::{lit, Real};

/// Taylor coefficients `e_0..=e_order` of `exp(-1 / (1 - (t + s)^2))` in `s`.
///
/// All coefficients are zero when `|t| >= 1`.
pub fn bump_series<T: Real>(t: T, order: usize) -> Vec<T> {
    let mut e = vec![T::zero(); order + 1];
    let q0 = T::one() - t * t;
    if q0 <= T::zero() {
        return e;
    }
    let g0 = -T::one() / q0;
    if g0 < lit(-700.0) {
        return e;
    }
    // q(s) = q0 + q1 s + q2 s^2; r = 1/q; g = -r
    let q1 = lit::<T>(-2.0) * t;
    let q2 = -T::one();
    let mut r = vec![T::zero(); order + 1];
    r[0] = T::one() / q0;
    for n in 1..=order {
        let mut acc = q1 * r[n - 1];
        if n >= 2 {
            acc += q2 * r[n - 2];
        }
        r[n] = -acc / q0;
    }
    let g: Vec<T> = r.iter().map(|&v| -v).collect();
    e[0] = g0.exp();
    for n in 1..=order {
        let mut acc = T::zero();
        for k in 1..=n {
            acc += T::from_usize_lossy(k) * g[k] * e[n - k];
        }
        e[n] = acc / T::from_usize_lossy(n);
    }
    e
}

/// Derivatives `f, f', ..., f^(order)` at `x` of
/// `amplitude * exp(-1 / (1 - ((x - center) / width)^2))`.
pub fn bump_derivatives<T: Real>(amplitude: T, center: T, width: T, x: T, order: usize) -> Vec<T> {
    let t = (x - center) / width;
    let mut e = bump_series(t, order);
    let mut fact = T::one();
    let mut wpow = T::one();
    for (m, v) in e.iter_mut().enumerate() {
        if m > 0 {
            fact *= T::from_usize_lossy(m);
            wpow *= width;
        }
        *v = amplitude * *v * fact / wpow;
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_closed_form_first_derivatives() {
        let f = |x: f64| (-1.0 / (1.0 - x * x)).exp();
        for x in [-0.7, -0.2, 0.0, 0.35, 0.9] {
            let d = bump_derivatives(1.0, 0.0, 1.0, x, 2);
            let q = 1.0 - x * x;
            let d1 = f(x) * (-2.0 * x / (q * q));
            let d2 = f(x) * ((2.0 * x / (q * q)).powi(2) - (2.0 * q * q + 8.0 * x * x * q) / q.powi(4));
            assert!((d[0] - f(x)).abs() < 1e-15);
            assert!((d[1] - d1).abs() < 1e-13 * (1.0 + d1.abs()));
            assert!((d[2] - d2).abs() < 1e-12 * (1.0 + d2.abs()), "{x}: {} vs {}", d[2], d2);
        }
    }

    #[test]
    fn vanishes_outside_support() {
        assert!(bump_derivatives(2.0, 0.5, 0.25, 0.8, 5).iter().all(|&v| v == 0.0));
    }
}
