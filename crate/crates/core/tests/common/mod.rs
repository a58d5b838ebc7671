#![allow(dead_code)]

use isores::potential::{Bump, Potential};
use isores::Complex;
use rand::Rng;

pub fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

pub fn bump(amplitude: f64, center: f64, width: f64, radius: f64) -> Potential<f64> {
    Potential::bump_sum(1, vec![Bump::new(amplitude, center, width)], radius).unwrap()
}

/// One to three bumps in the ball of a random radius; radial bumps are
/// centred at the origin or kept away from it.
pub fn random_bump_sum<R: Rng>(rng: &mut R, dimension: usize) -> Potential<f64> {
    let radius: f64 = rng.gen_range(0.5..2.0);
    let count = rng.gen_range(1..=3);
    let bumps = (0..count)
        .map(|_| {
            let amplitude = rng.gen_range(-5.0..5.0);
            if dimension == 1 {
                let width = rng.gen_range(0.2 * radius..radius);
                Bump::new(amplitude, rng.gen_range(-(radius - width)..=(radius - width)), width)
            } else if rng.gen_bool(0.5) {
                Bump::new(amplitude, 0.0, rng.gen_range(0.2 * radius..radius))
            } else {
                let width = rng.gen_range(0.1 * radius..0.5 * radius);
                Bump::new(amplitude, rng.gen_range(width..=(radius - width)), width)
            }
        })
        .collect();
    Potential::bump_sum(dimension, bumps, radius).unwrap()
}

/// Simpson's rule on a uniform grid of 2m panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, m: usize) -> f64 {
    let n = 2 * m;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(a + i as f64 * h);
    }
    s * h / 3.0
}

/// The bump profile a·exp(−1/(1 − ((x − c)/w)²)) written out directly.
pub fn bump_profile(a: f64, center: f64, width: f64, x: f64) -> f64 {
    let t = (x - center) / width;
    if t.abs() >= 1.0 {
        0.0
    } else {
        a * (-1.0 / (1.0 - t * t)).exp()
    }
}
