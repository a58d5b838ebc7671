//! Reference values produced by independent closed forms written out here,
//! frozen, and checked against the library.

mod common;

use common::{bump, bump_profile, c, simpson};
use isores::determinant::{Determinant, DeterminantConfig};
use isores::invariants::{heat_invariant, heat_invariant_closed, heat_invariant_symbolic, n_constant, wave_constants};
use isores::potential::Potential;
use isores::resonance::{
    locate_in_sector, locate_resonances, square_well_bound_states, swave_function, transfer_matrix_function,
    PiecewiseConstant, SearchRegion,
};
use isores::Complex;

const WELL_RESONANCES: [(f64, f64); 3] = [
    (3.2270135884927, -1.2697160956756),
    (5.2010273139479, -1.5074527188425),
    (6.9830886110125, -1.7003108756199),
];
const WELL_KAPPAS: [f64; 3] = [2.9313453012618, 2.1503939374751, 0.063397653374];
const SWAVE_RESONANCES: [(f64, f64); 2] = [(3.227013588493, -1.269716095676), (6.983088611012, -1.700310875620)];
const BUMP_INVARIANTS: [f64; 3] = [0.4439938161680791, 0.1330861208449945, 0.2473548750913511];

/// 1/T(λ) for the well depth·1_{|x|<a}: the line determinant in closed form.
fn well_inverse_transmission(depth: f64, a: f64, lam: Complex<f64>) -> Complex<f64> {
    let i = Complex::new(0.0, 1.0);
    let kp = (lam * lam - depth).sqrt();
    (i * lam * 2.0 * a).exp()
        * ((kp * 2.0 * a).cos() - i * (lam * lam + kp * kp) / (lam * kp * 2.0) * (kp * 2.0 * a).sin())
}

fn newton(f: impl Fn(Complex<f64>) -> Complex<f64>, mut z: Complex<f64>) -> Complex<f64> {
    for _ in 0..50 {
        let h = 1e-7;
        let d = (f(z + h) - f(z - h)) / (2.0 * h);
        let step = f(z) / d;
        z -= step;
        if step.norm() < 1e-15 {
            break;
        }
    }
    z
}

#[test]
fn well_resonances_are_zeros_of_the_closed_form() {
    for (re, im) in WELL_RESONANCES {
        let z = newton(|l| well_inverse_transmission(-10.0, 1.0, l), c(re, im));
        assert!((z - c(re, im)).norm() < 1e-11, "{z}");
    }
}

#[test]
fn located_well_resonances_match_frozen_values() {
    let v = Potential::square_well(1, -10.0, 1.0).unwrap();
    let region = SearchRegion::new(0.1, 8.0, -3.0, -1e-3).unwrap();
    let set = locate_resonances(&v, &region, 1e-10, DeterminantConfig::default()).unwrap();
    assert_eq!(set.len(), 3);
    for (r, (re, im)) in set.entries.iter().zip(WELL_RESONANCES) {
        assert_eq!(r.multiplicity, 1);
        assert!((r.lambda - c(re, im)).norm() < 1e-9, "{}", r.lambda);
    }
}

#[test]
fn determinant_equals_inverse_transmission() {
    let v = Potential::square_well(1, -10.0, 1.0).unwrap();
    let det = Determinant::new(&v, DeterminantConfig::default()).unwrap();
    let pc = PiecewiseConstant::from_potential(&v).unwrap();
    for lam in [c(1.0, -0.5), c(2.5, 0.7), c(0.3, -2.0), c(-4.0, -1.0)] {
        let closed = well_inverse_transmission(-10.0, 1.0, lam);
        let d = det.value(lam).unwrap().value;
        assert!((d - closed).norm() < 1e-11 * closed.norm().max(1.0), "{lam}: {d} vs {closed}");
        assert!((transfer_matrix_function(&pc, lam) - closed).norm() < 1e-11 * closed.norm().max(1.0));
    }
    let frozen = c(4.445656440721892e-1, 2.335267871685501e0);
    assert!((det.value(c(1.0, -0.5)).unwrap().value - frozen).norm() < 1e-12);
}

#[test]
fn bound_states_match_even_and_odd_conditions() {
    // even: k′ tan k′ = κ, odd: −k′ cot k′ = κ, with k′² + κ² = 10
    let even = |k: f64| k * k.tan() - (10.0 - k * k).sqrt();
    let odd = |k: f64| -k / k.tan() - (10.0 - k * k).sqrt();
    let root = |g: &dyn Fn(f64) -> f64, mut lo: f64, mut hi: f64| {
        for _ in 0..200 {
            let m = 0.5 * (lo + hi);
            if (g(lo) < 0.0) == (g(m) < 0.0) {
                lo = m;
            } else {
                hi = m;
            }
        }
        (10.0 - lo * lo).sqrt()
    };
    let q = 10f64.sqrt();
    let mut kappas = vec![
        root(&even, 1e-9, std::f64::consts::FRAC_PI_2 - 1e-9),
        root(&odd, std::f64::consts::FRAC_PI_2 + 1e-9, q.min(std::f64::consts::PI) - 1e-12),
        root(&even, std::f64::consts::PI + 1e-9, q - 1e-12),
    ];
    kappas.sort_by(|a, b| b.total_cmp(a));
    for (k, frozen) in kappas.iter().zip(WELL_KAPPAS) {
        assert!((k - frozen).abs() < 1e-11, "{k} vs {frozen}");
    }
    for (k, frozen) in square_well_bound_states(-10.0, 1.0).iter().zip(WELL_KAPPAS) {
        assert!((k - frozen).abs() < 1e-10);
    }
    let v = Potential::square_well(1, -10.0, 1.0).unwrap();
    let det = Determinant::new(&v, DeterminantConfig::default()).unwrap();
    for k in WELL_KAPPAS {
        assert!(det.value(c(0.0, k)).unwrap().value.norm() < 1e-9);
    }
}

#[test]
fn swave_zeros_match_frozen_values() {
    // s-wave Jost function of the ball well: e^{iλa}(cos k′a − iλ sin(k′a)/k′)
    let i = Complex::new(0.0, 1.0);
    let jost = |l: Complex<f64>| {
        let kp = (l * l + 10.0).sqrt();
        (i * l).exp() * (kp.cos() - i * l * kp.sin() / kp)
    };
    for (re, im) in SWAVE_RESONANCES {
        let z = newton(jost, c(re, im));
        assert!((z - c(re, im)).norm() < 1e-11);
        assert!((swave_function(-10.0, 1.0, z) - jost(z)).norm() < 1e-13);
    }
    let v = Potential::square_well(3, -10.0, 1.0).unwrap();
    let det = Determinant::new(&v, DeterminantConfig::default()).unwrap();
    let region = SearchRegion::new(0.1, 8.0, -3.0, -1e-3).unwrap();
    let set = locate_in_sector(&det, 0, &region, 1e-10).unwrap();
    assert_eq!(set.len(), 2);
    for (r, (re, im)) in set.entries.iter().zip(SWAVE_RESONANCES) {
        assert!((r.lambda - c(re, im)).norm() < 1e-9);
    }
    let lam = c(1.0, -0.5);
    let (d0, _) = det.sector_fredholm(lam, 0).unwrap();
    assert!((d0 / jost(lam) - 1.0).norm() < 1e-10);
}

#[test]
fn bump_heat_invariants_by_direct_quadrature() {
    let (a, w) = (1.0, 1.0);
    let v = |x: f64| bump_profile(a, 0.0, w, x);
    let dv = |x: f64| {
        let t = x / w;
        if t.abs() >= 1.0 {
            0.0
        } else {
            v(x) * (-2.0 * t / (1.0 - t * t).powi(2)) / w
        }
    };
    let c1 = simpson(v, -1.0, 1.0, 20_000);
    let c2 = simpson(|x| v(x).powi(2), -1.0, 1.0, 20_000);
    let c3 = simpson(|x| v(x).powi(3) + 0.5 * dv(x).powi(2), -1.0, 1.0, 20_000);
    for (got, frozen) in [c1, c2, c3].iter().zip(BUMP_INVARIANTS) {
        assert!((got - frozen).abs() < 1e-12, "{got} vs {frozen}");
    }
    let p = bump(a, 0.0, w, 1.0);
    for (j, frozen) in (1..=3).zip(BUMP_INVARIANTS) {
        assert!((heat_invariant_closed(j, &p).unwrap() - frozen).abs() < 1e-12);
        assert!((heat_invariant_symbolic(j, &p).unwrap() - frozen).abs() < 1e-10);
        assert!((heat_invariant(j, &p).unwrap() - frozen).abs() < 1e-12);
    }
}

#[test]
fn n_constants_in_three_dimensions() {
    // N_j = Γ(j − 1) for d = 3
    let factorials = [1.0, 1.0, 2.0, 6.0, 24.0];
    for (j, f) in (2..=6).zip(factorials) {
        assert!((n_constant(j, 3).unwrap() - f).abs() < 1e-10);
    }
    assert_eq!(wave_constants(1, 3).unwrap().m, Some(1.0));
}
