//! Riccati–Bessel and Riccati–Hankel functions of complex argument and
//! Gamma at half-integers.

use crate::error::{Error, Result};
use crate::scalar::{lit, Complex, Real};

/// Riccati–Bessel functions `z j_k(z)` for `k = 0..=lmax`, by Miller's
/// downward recurrence normalized against the closed forms for k = 0, 1.
pub fn riccati_j<T: Real>(lmax: usize, z: Complex<T>) -> Result<Vec<Complex<T>>> {
    let modulus = z.norm();
    if modulus == T::zero() {
        return Ok(vec![Complex::new(T::zero(), T::zero()); lmax + 1]);
    }
    let zero = Complex::new(T::zero(), T::zero());
    let start = lmax + modulus.to_usize().unwrap_or(10_000).min(10_000) + 40;
    let big = lit::<T>(1e100);
    let mut f = vec![zero; start + 2];
    f[start] = Complex::new(lit::<T>(1e-30), T::zero());
    for k in (1..=start).rev() {
        f[k - 1] = f[k] * lit::<T>((2 * k + 1) as f64) / z - f[k + 1];
        let m = f[k - 1].norm();
        if m > big {
            let s = T::one() / m;
            let upper = k.max(lmax + 1);
            for v in f[k - 1..=upper].iter_mut() {
                *v = *v * s;
            }
        }
    }
    let mut vals = f;
    let j0 = z.sin();
    let j1 = z.sin() / z - z.cos();
    let scale = if j0.norm() >= j1.norm() { j0 / vals[0] } else { j1 / vals[1] };
    vals.truncate(lmax + 1);
    let out: Vec<Complex<T>> = vals.into_iter().map(|v| v * scale).collect();
    if out.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::RecurrenceOverflow { ell: lmax, modulus: modulus.as_f64() });
    }
    Ok(out)
}

/// Riccati–Hankel functions `z h_k^{(1)}(z)` for `k = 0..=lmax` by upward
/// recurrence.
pub fn riccati_h<T: Real>(lmax: usize, z: Complex<T>) -> Result<Vec<Complex<T>>> {
    let modulus = z.norm();
    if modulus == T::zero() {
        return Err(Error::DiagonalSingularity);
    }
    let i = Complex::new(T::zero(), T::one());
    let e = (i * z).exp();
    let mut out = Vec::with_capacity(lmax + 1);
    out.push(-i * e);
    if lmax >= 1 {
        out.push(-e * (Complex::new(T::one(), T::zero()) + i / z));
    }
    for k in 1..lmax {
        let v = out[k] * lit::<T>((2 * k + 1) as f64) / z - out[k - 1];
        out.push(v);
    }
    if out.iter().any(|v| !(v.re.is_finite() && v.im.is_finite())) {
        return Err(Error::RecurrenceOverflow { ell: lmax, modulus: modulus.as_f64() });
    }
    Ok(out)
}

/// Γ(n/2) for a positive integer n.
pub fn gamma_half<T: Real>(n: u32) -> T {
    assert!(n > 0, "Gamma has a pole at 0");
    let mut g = if n % 2 == 0 { T::one() } else { T::PI().sqrt() };
    let mut k = if n % 2 == 0 { 2 } else { 1 };
    while k < n {
        g *= T::from_u32(k).unwrap() * lit(0.5);
        k += 2;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn low_orders_match_closed_forms() {
        for z in [c(0.3, 0.0), c(2.0, -1.0), c(7.5, 0.4), c(1e-3, -2e-4)] {
            let j = riccati_j(3, z).unwrap();
            let j2 = if z.norm() < 0.01 {
                // closed form cancels badly; use the series z^3/15 - z^5/210
                z * z * z / 15.0 - z.powi(5) / 210.0
            } else {
                (c(3.0, 0.0) / (z * z) - c(1.0, 0.0)) * z.sin() - c(3.0, 0.0) * z.cos() / z
            };
            assert!((j[0] - z.sin()).norm() < 1e-14 * (1.0 + z.sin().norm()));
            assert!((j[2] - j2).norm() <= 1e-9 * j2.norm().max(1e-12), "{z}: {} vs {}", j[2], j2);
            let h = riccati_h(2, z).unwrap();
            let i = c(0.0, 1.0);
            let h2 = i * (z * z + 3.0 * i * z - 3.0) / (z * z) * (i * z).exp();
            assert!((h[2] - h2).norm() <= 1e-12 * h2.norm());
        }
    }

    #[test]
    fn wronskian_identity() {
        // ĵ_l ĥ_l' - ĵ_l' ĥ_l = i; with derivatives from the recurrences
        for z in [c(1.3, -0.7), c(4.0, 0.2), c(0.2, -0.1)] {
            let l = 4;
            let j = riccati_j(l + 1, z).unwrap();
            let h = riccati_h(l + 1, z).unwrap();
            let lf = l as f64;
            let jd = j[l - 1] - j[l] * lf / z;
            let hd = h[l - 1] - h[l] * lf / z;
            let w = j[l] * hd - jd * h[l];
            assert!((w - c(0.0, 1.0)).norm() < 1e-9, "{w}");
        }
    }

    #[test]
    fn gamma_half_values() {
        assert!((gamma_half::<f64>(1) - std::f64::consts::PI.sqrt()).abs() < 1e-15);
        assert!((gamma_half::<f64>(8) - 6.0).abs() < 1e-15);
        assert!((gamma_half::<f64>(5) - 0.75 * std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }
}
