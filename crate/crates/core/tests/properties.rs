//! Property tests of the structural identities the library relies on.

mod common;

use common::c;
use isores::birman_schwinger::assemble_k;
use isores::determinant::{det_reg, Determinant, DeterminantConfig};
use isores::invariants::heat_invariant;
use isores::linalg::CMatrix;
use isores::potential::{inequality_report, Bump, FrechetIndexing, Potential};
use isores::quadrature::NodeRule;
use isores::resolvent::{assemble_cutoff_resolvent, kernel_1d, kernel_3d, operator_norm, singular_values, Sector};
use isores::resonance::{count_zeros, locate_resonances, SearchRegion};
use isores::symbolic::{rational, DifferentialPolynomial, SymbolicTerm};
use isores::Complex;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

fn fixed(cases: u32) -> Config {
    Config { cases, rng_seed: RngSeed::Fixed(0x5eed), failure_persistence: None, ..Config::default() }
}

/// Bump sums on the line built from (amplitude, centre fraction, width
/// fraction) triples inside the ball of radius `r`.
fn line_bumps(max: usize) -> impl Strategy<Value = Potential<f64>> {
    (0.6f64..1.8, prop::collection::vec((-4.0f64..4.0, -1.0f64..1.0, 0.25f64..1.0), 1..=max)).prop_map(|(r, raw)| {
        let bumps = raw
            .into_iter()
            .map(|(a, cf, wf)| {
                let w = wf * r;
                Bump::new(a, cf * (r - w), w)
            })
            .collect();
        Potential::bump_sum(1, bumps, r).unwrap()
    })
}

fn cmatrix(n: usize) -> impl Strategy<Value = CMatrix<f64>> {
    prop::collection::vec((-0.5f64..0.5, -0.5f64..0.5), n * n)
        .prop_map(move |v| CMatrix::from_fn(n, n, |i, j| c(v[i * n + j].0, v[i * n + j].1)))
}

fn close(a: Complex<f64>, b: Complex<f64>, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + a.norm().max(b.norm()))
}

proptest! {
    #![proptest_config(fixed(24))]

    #[test]
    fn frechet_metric_is_a_metric(u in line_bumps(2), v in line_bumps(2), w in line_bumps(2)) {
        let idx = FrechetIndexing::new(1, FrechetIndexing::DEFAULT_DEPTH);
        let d = |a: &Potential<f64>, b: &Potential<f64>| a.frechet_metric(b, &idx).unwrap().value;
        prop_assert!((d(&u, &v) - d(&v, &u)).abs() < 1e-12);
        prop_assert!(d(&u, &w) <= d(&u, &v) + d(&v, &w) + 1e-12);
        prop_assert!(d(&u, &u).abs() < 1e-12);
    }

    #[test]
    fn sobolev_norms_increase_with_order(v in line_bumps(3)) {
        let norms: Vec<f64> = (0..=4).map(|s| v.sobolev_norm(s).unwrap()).collect();
        for p in norms.windows(2) {
            prop_assert!(p[0] <= p[1] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn inequality_suite_holds(v in line_bumps(3), j in 3usize..=5) {
        let r = inequality_report(&v, j).unwrap();
        prop_assert!(r.all_hold(), "{:?}", r.violations());
    }

    #[test]
    fn heat_invariants_scale_and_translate(v in line_bumps(2), s in prop::sample::select(vec![2.0, -1.0])) {
        let c1 = heat_invariant(1, &v).unwrap();
        let c2 = heat_invariant(2, &v).unwrap();
        prop_assert!((heat_invariant(1, &v.scaled(s)).unwrap() - s * c1).abs() < 1e-12 * (1.0 + c1.abs()));
        prop_assert!((heat_invariant(2, &v.scaled(s)).unwrap() - s * s * c2).abs() < 1e-12 * (1.0 + c2.abs()));
        // shift inside a ball of twice the radius
        let r = v.support_radius();
        let wide = match v.shape() {
            isores::potential::Shape::BumpSum(b) => Potential::bump_sum(1, b.clone(), 2.0 * r).unwrap(),
            _ => unreachable!(),
        };
        let moved = wide.translated(0.5 * r).unwrap();
        for j in 1..=3 {
            let a = heat_invariant(j, &wide).unwrap();
            prop_assert!((heat_invariant(j, &moved).unwrap() - a).abs() < 1e-9 * (1.0 + a.abs()));
        }
    }

    #[test]
    fn multiplicative_under_direct_sums(a in cmatrix(4), b in cmatrix(3)) {
        let ab = a.direct_sum(&b);
        for p in [1, 2] {
            let lhs = det_reg(p, &ab).unwrap();
            let rhs = det_reg(p, &a).unwrap() * det_reg(p, &b).unwrap();
            prop_assert!(close(lhs, rhs, 1e-12));
        }
    }

    #[test]
    fn similarity_invariance(a in cmatrix(5), l in prop::collection::vec((-0.5f64..0.5, -0.5f64..0.5), 10)) {
        // unit lower-triangular S and its inverse by forward substitution
        let n = 5;
        let mut k = 0;
        let mut entries = vec![vec![c(0.0, 0.0); n]; n];
        for i in 0..n {
            entries[i][i] = c(1.0, 0.0);
            for j in 0..i {
                entries[i][j] = c(l[k].0, l[k].1);
                k += 1;
            }
        }
        let s = CMatrix::from_rows(entries.clone());
        let mut inv = vec![vec![c(0.0, 0.0); n]; n];
        for col in 0..n {
            for i in 0..n {
                let mut x = if i == col { c(1.0, 0.0) } else { c(0.0, 0.0) };
                for j in 0..i {
                    x -= entries[i][j] * inv[j][col];
                }
                inv[i][col] = x;
            }
        }
        let sinv = CMatrix::from_rows(inv);
        let conj = s.matmul(&a).matmul(&sinv);
        for p in [1, 2] {
            prop_assert!(close(det_reg(p, &conj).unwrap(), det_reg(p, &a).unwrap(), 1e-9));
        }
    }

    #[test]
    fn regularizations_differ_by_the_trace(a in cmatrix(6)) {
        let lhs = det_reg(1, &a).unwrap();
        let rhs = det_reg(2, &a).unwrap() * a.trace().exp();
        prop_assert!(close(lhs, rhs, 1e-10));
    }

    #[test]
    fn kernels_solve_the_free_equation(x in -1.0f64..1.0, y in -1.0f64..1.0, re in 0.2f64..2.0, im in -1.0f64..1.0) {
        prop_assume!((x - y).abs() > 0.05);
        let lam = c(re, im);
        let h = 1e-3;
        let g = |t: f64| kernel_1d(t, y, lam).unwrap();
        let residual = -(g(x + h) - g(x) * 2.0 + g(x - h)) / (h * h) - lam * lam * g(x);
        prop_assert!(residual.norm() < 1e-6 * (1.0 + (lam * lam * g(x)).norm()));
        // radial part of the Laplacian for the three-dimensional kernel
        let r = 0.1 + (x - y).abs();
        let u = |t: f64| kernel_3d(t, lam).unwrap() * t;
        let res3 = (-(u(r + h) - u(r) * 2.0 + u(r - h)) / (h * h) - lam * lam * u(r)) / r;
        prop_assert!(res3.norm() < 1e-6 * (1.0 + (lam * lam * kernel_3d(r, lam).unwrap()).norm()));
    }

    #[test]
    fn operator_norm_below_hilbert_schmidt(re in 0.2f64..4.0, im in -2.0f64..1.0, radial in any::<bool>()) {
        let sector = if radial { Sector::Radial(1) } else { Sector::Line };
        let k = assemble_cutoff_resolvent(1.0, c(re, im), 64, sector, NodeRule::Midpoint).unwrap();
        let hs: f64 = singular_values(&k).iter().map(|s| s * s).sum::<f64>().sqrt();
        prop_assert!(operator_norm(&k).unwrap() <= hs * (1.0 + 1e-10));
    }

    #[test]
    fn birman_schwinger_is_linear_in_v(v in line_bumps(2), s in -3.0f64..3.0, re in 0.2f64..4.0, im in -2.0f64..1.0) {
        let lam = c(re, im);
        let k = assemble_k(&v, lam, 48, Sector::Line, NodeRule::GaussLegendre).unwrap();
        let ks = assemble_k(&v.scaled(s), lam, 48, Sector::Line, NodeRule::GaussLegendre).unwrap();
        let sum = assemble_k(&v.plus(&v.scaled(s)).unwrap(), lam, 48, Sector::Line, NodeRule::GaussLegendre).unwrap();
        for ((a, b), t) in k.entries.as_slice().iter().zip(ks.entries.as_slice()).zip(sum.entries.as_slice()) {
            prop_assert!((a * s - b).norm() < 1e-12 * (1.0 + a.norm()));
            prop_assert!((a * (1.0 + s) - t).norm() < 1e-12 * (1.0 + a.norm()));
        }
    }

    #[test]
    fn trace_is_first_heat_invariant(v in line_bumps(3), re in 0.2f64..4.0, im in -2.0f64..1.0) {
        let lam = c(re, im);
        let factor = c(0.0, 1.0) / (lam * 2.0);
        let k = assemble_k(&v, lam, 200, Sector::Line, NodeRule::GaussLegendre).unwrap();
        let on_nodes: f64 = k.weights.iter().zip(&k.potential_values).map(|(w, p)| w * p).sum();
        prop_assert!((k.trace() - factor * on_nodes).norm() < 1e-13 * (1.0 + k.trace().norm()));
        let fine = assemble_k(&v, lam, 800, Sector::Line, NodeRule::Midpoint).unwrap();
        let expected = factor * heat_invariant(1, &v).unwrap();
        prop_assert!((fine.trace() - expected).norm() < 1e-9 * (1.0 + expected.norm()));
    }

    #[test]
    fn determinant_conjugate_symmetry(v in line_bumps(2), re in 0.2f64..5.0, im in -2.0f64..1.0) {
        let det = Determinant::new(&v, DeterminantConfig::with_nodes(64)).unwrap();
        let lam = c(re, im);
        let a = det.value(lam).unwrap().value;
        let b = det.value(-lam.conj()).unwrap().value;
        prop_assert!((a.conj() - b).norm() < 1e-10 * (1.0 + a.norm()));
    }

    #[test]
    fn canonical_form_is_idempotent(raw in prop::collection::vec((-5i64..5, 1i64..4, 0u32..3, prop::collection::vec(0u32..4, 0..4)), 0..8)) {
        let p = DifferentialPolynomial::from_terms(raw.into_iter().map(|(n, d, z, vs)| SymbolicTerm::new(rational(n, d), z, vs)));
        prop_assert_eq!(p.canonicalize(), p.canonicalize().canonicalize());
        prop_assert_eq!(p.canonicalize(), p.clone());
    }
}

proptest! {
    #![proptest_config(fixed(6))]

    #[test]
    fn resonance_sets_are_mirror_symmetric(depth in -14.0f64..8.0, a in 0.6f64..1.4) {
        prop_assume!(depth.abs() > 0.5);
        let v = Potential::square_well(1, depth, a).unwrap();
        let region = SearchRegion::new(0.3, 6.1, -2.3, -0.05).unwrap();
        let cfg = DeterminantConfig::with_nodes(100);
        let right = locate_resonances(&v, &region, 1e-9, cfg).unwrap();
        let left = locate_resonances(&v, &region.mirrored(), 1e-9, cfg).unwrap();
        prop_assert_eq!(right.len(), left.len());
        for r in &right.entries {
            prop_assert!(left.entries.iter().any(|l| (l.lambda + r.lambda.conj()).norm() < 1e-7 && l.multiplicity == r.multiplicity));
        }
        let det = Determinant::new(&v, cfg).unwrap();
        let f = |z: Complex<f64>| det.value(z).map(|d| d.value);
        let w = count_zeros(&f, &region).unwrap();
        prop_assert_eq!(w.count as usize, right.total_multiplicity());
        prop_assert!(w.residual < 0.25);
    }
}

#[test]
fn positive_imaginary_axis_gives_symmetric_real_kernels() {
    for kappa in [0.1, 0.7, 2.5] {
        let k = assemble_cutoff_resolvent(1.0, c(0.0, kappa), 40, Sector::Line, NodeRule::Midpoint).unwrap();
        let m = k.symmetrized();
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                let (a, b) = (m.row(i)[j], m.row(j)[i]);
                assert!(a.im.abs() < 1e-15 && (a - b).norm() < 1e-15);
            }
        }
    }
}

#[test]
fn hilbert_schmidt_growth_is_exponential_in_imaginary_part() {
    let v = common::bump(-3.0, 0.0, 1.0, 1.0);
    let alpha = 2.0;
    let ims: Vec<f64> = (0..12).map(|i| -0.25 * i as f64).collect();
    let mut hs = Vec::new();
    for &im in &ims {
        let k = assemble_k(&v, c(2.0, im), 96, Sector::Line, NodeRule::GaussLegendre).unwrap();
        hs.push(k.hilbert_schmidt_norm());
    }
    let weighted: Vec<f64> = hs.iter().zip(&ims).map(|(h, im)| h * (-alpha * im.abs()).exp()).collect();
    let hi = weighted.iter().cloned().fold(f64::MIN, f64::max);
    let lo = weighted.iter().cloned().fold(f64::MAX, f64::min);
    assert!(hi / lo < 50.0 && hi <= weighted[0] * 1.0001, "{weighted:?}");
}

#[test]
fn derivatives_compose() {
    let v = Potential::bump_sum(1, vec![Bump::new(1.5, 0.1, 0.8), Bump::new(-0.7, -0.3, 0.6)], 1.0).unwrap();
    let twice = v.derivative(&[1]).unwrap().derivative(&[1]).unwrap();
    let direct = v.derivative(&[2]).unwrap();
    let scale = direct.sup_norm();
    for i in 0..=200 {
        let x = -0.9 + 1.8 * i as f64 / 200.0;
        assert!((twice.profile(x) - direct.profile(x)).abs() < 1e-6 * scale, "x = {x}");
    }
}

/// H_V applied n times to z^{2k} at z = 0, against truncated Taylor
/// arithmetic in t = y − x for V(y) = a cos(b y + φ).
#[test]
fn symbolic_h_matches_taylor_arithmetic() {
    let (a, b, phi, x): (f64, f64, f64, f64) = (1.3, 0.9, 0.4, 0.2);
    let deriv = |m: usize| a * b.powi(m as i32) * (b * x + phi + m as f64 * std::f64::consts::FRAC_PI_2).cos();
    let jets: Vec<f64> = (0..=16).map(deriv).collect();
    let mut fact = vec![1.0; 17];
    for m in 1..17 {
        fact[m] = fact[m - 1] * m as f64;
    }
    let vt: Vec<f64> = (0..=16).map(|m| jets[m] / fact[m]).collect();
    for k in 0..=3usize {
        for n in 1..=4u32 {
            let deg = 2 * k + 2 * n as usize + 2;
            // z = x − y = −t
            let mut f = vec![0.0; deg + 1];
            f[2 * k] = 1.0;
            for _ in 0..n {
                let mut g = vec![0.0; deg + 1];
                for d in 0..deg - 1 {
                    g[d] -= f[d + 2] * ((d + 2) * (d + 1)) as f64;
                }
                for (i, fi) in f.iter().enumerate() {
                    for (j, vj) in vt.iter().enumerate() {
                        if i + j <= deg {
                            g[i + j] += fi * vj;
                        }
                    }
                }
                f = g;
            }
            let p = DifferentialPolynomial::<isores::Rational>::z_power(2 * k as u32).apply_h_power_at_diagonal(n);
            let sym = p.evaluate(0.0, &jets);
            assert!((sym - f[0]).abs() < 1e-10 * (1.0 + sym.abs()), "k={k} n={n}: {sym} vs {}", f[0]);
        }
    }
}
