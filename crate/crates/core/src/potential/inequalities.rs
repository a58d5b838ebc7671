//! Numerical checks of the inequalities behind the uniform Sobolev bounds:
//! generalized Hölder, L^p interpolation, the one-dimensional sup bound,
//! the case analysis bounding products of derivatives, the three-dimensional
//! chain for ∫V³, and the Sobolev bound read off the heat invariants.

use std::collections::BTreeSet;

use serde::Serialize;

use super::norms::{derivative_sup, REL_TOL};
use super::{enumerate_index_set, Jets, Potential};
use crate::error::{Error, Result};
use crate::invariants::sobolev_split;
use crate::quadrature::integrate_many;
use crate::scalar::{lit, Real};
use crate::special::gamma_half;

/// Relative slack granted to every comparison for quadrature error.
pub const QUADRATURE_SLACK: f64 = 1e-9;

/// Constant of ‖u‖_∞ ≤ C ‖u‖_{1,2} on the line (u² ≤ ½(‖u‖₂² + ‖u′‖₂²)).
pub const SUP_CONSTANT_1D: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Best constant K with ‖u‖₆ ≤ K ‖∇u‖₂ in R³: (3π)^{-1/2} (Γ(3)/Γ(3/2))^{1/3}.
pub fn sobolev_constant_3d() -> f64 {
    (3.0 * std::f64::consts::PI).powf(-0.5) * (2.0 / gamma_half::<f64>(3)).powf(1.0 / 3.0)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

impl InequalityCheck {
    fn new(name: impl Into<String>, lhs: f64, rhs: f64) -> Self {
        let holds = lhs <= rhs + QUADRATURE_SLACK * lhs.abs().max(rhs.abs());
        InequalityCheck { name: name.into(), lhs, rhs, holds }
    }
}

/// ‖V‖²_{j−2,2} ≤ C_j (1 + Σ_{k=3}^j Σ_{α ∈ 𝒜_{j,k}} ∫|Π D^{α^m} V|) with the
/// explicit C_j obtained from the reduced heat-invariant density.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SobolevBound {
    pub j: usize,
    pub lhs: f64,
    /// 1 + Σ ∫|Π D^{α^m} V|.
    pub bracket: f64,
    pub constant: f64,
    /// lhs / bracket, the smallest constant that would do.
    pub implied_ratio: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InequalityReport {
    pub j: usize,
    pub dimension: usize,
    pub checks: Vec<InequalityCheck>,
    pub sobolev: Option<SobolevBound>,
}

impl InequalityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.sobolev.as_ref().is_none_or(|s| s.holds)
    }

    pub fn violations(&self) -> Vec<&InequalityCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

/// ∫ Π_i |V^(o_i)|^{p_i} for a list of (order, power).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Integrand(Vec<(usize, u32)>);

struct Integrals {
    wanted: Vec<Integrand>,
    values: Vec<f64>,
}

impl Integrals {
    fn get(&self, key: &[(usize, u32)]) -> f64 {
        let i = self.wanted.iter().position(|s| s.0 == key).expect("integrand registered");
        self.values[i]
    }
}

fn compute_integrals<T: Real>(v: &Potential<T>, order: usize, wanted: BTreeSet<Integrand>) -> Result<Integrals> {
    let wanted: Vec<Integrand> = wanted.into_iter().collect();
    if v.is_zero() {
        return Ok(Integrals { values: vec![0.0; wanted.len()], wanted });
    }
    let jets = v.jets(order)?;
    let breaks = sign_change_breaks(&jets, order, &v.breakpoints());
    let radial = v.dimension() == 3;
    let four_pi = lit::<T>(4.0) * T::PI();
    let q = integrate_many(
        |x| {
            let f = jets.at(x);
            let w = if radial { four_pi * x * x } else { T::one() };
            wanted.iter().map(|s| s.0.iter().fold(w, |p, &(o, k)| p * f[o].abs().powi(k as i32))).collect()
        },
        wanted.len(),
        &breaks,
        lit(REL_TOL),
    );
    Ok(Integrals { values: q.iter().map(|q| q.value.as_f64()).collect(), wanted })
}

/// Breakpoints refined by the sign changes of V, V′, …, V^(order), where
/// the absolute values in the integrands have kinks.
fn sign_change_breaks<T: Real>(jets: &Jets<T>, order: usize, breaks: &[T]) -> Vec<T> {
    const SAMPLES: usize = 400;
    let mut out: Vec<T> = breaks.to_vec();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if !(b > a) {
            continue;
        }
        let h = (b - a) / T::from_usize_lossy(SAMPLES);
        let mut prev = jets.at(a);
        for i in 1..=SAMPLES {
            let x = a + h * T::from_usize_lossy(i);
            let cur = jets.at(x);
            for o in 0..=order {
                if (prev[o] < T::zero()) != (cur[o] < T::zero()) && prev[o] != T::zero() && cur[o] != T::zero() {
                    let (mut lo, mut hi) = (x - h, x);
                    for _ in 0..60 {
                        let mid = (lo + hi) * lit(0.5);
                        if (jets.at(mid)[o] < T::zero()) == (prev[o] < T::zero()) {
                            lo = mid;
                        } else {
                            hi = mid;
                        }
                    }
                    out.push((lo + hi) * lit(0.5));
                }
            }
            prev = cur;
        }
    }
    out.sort_by(|p, q| p.partial_cmp(q).expect("finite breakpoints"));
    out.dedup_by(|p, q| (*p - *q).abs() <= T::epsilon() * lit(16.0) * (T::one() + q.abs()));
    out
}

fn lp(int: &Integrals, order: usize, p: u32) -> f64 {
    int.get(&[(order, p)]).powf(1.0 / p as f64)
}

/// Multisets of derivative orders occurring in 𝒜_{j,k} (d = 1), each with
/// the number of ordered tuples realizing it.
fn index_multisets(j: usize) -> Result<Vec<(usize, Vec<usize>, usize)>> {
    let mut out = Vec::new();
    for k in 3..=j {
        let mut seen: Vec<(Vec<usize>, usize)> = Vec::new();
        for t in enumerate_index_set(j, k, 1)? {
            let mut o = t.orders();
            o.sort_unstable();
            match seen.iter_mut().find(|(m, _)| *m == o) {
                Some(e) => e.1 += 1,
                None => seen.push((o, 1)),
            }
        }
        out.extend(seen.into_iter().map(|(m, n)| (k, m, n)));
    }
    Ok(out)
}

fn product_spec(orders: &[usize]) -> Vec<(usize, u32)> {
    let mut v: Vec<(usize, u32)> = Vec::new();
    for &o in orders {
        match v.iter_mut().find(|e| e.0 == o) {
            Some(e) => e.1 += 1,
            None => v.push((o, 1)),
        }
    }
    v.sort_unstable();
    v
}

const INTERPOLATION_TRIPLES: [(u32, u32, u32); 4] = [(2, 4, 6), (1, 2, 3), (2, 3, 6), (3, 5, 8)];
/// Factor lists (order, exponent p) with Σ 1/p = 1.
const MIXED_HOLDER: [&[(usize, u32)]; 3] = [&[(0, 2), (1, 4), (2, 4)], &[(0, 2), (0, 3), (1, 6)], &[(0, 3), (1, 3), (2, 3)]];

/// Evaluates every inequality of the suite on V without asserting.
pub fn inequality_report<T: Real>(v: &Potential<T>, j: usize) -> Result<InequalityReport> {
    if j < 3 {
        return Err(Error::InvalidArgument(format!("the suite starts at j = 3, got {j}")));
    }
    if !v.is_smooth() && !v.is_zero() {
        return Err(Error::NonSmooth(v.kind_name()));
    }
    if v.dimension() == 1 {
        line_report(v, j)
    } else {
        radial_report(v, j)
    }
}

/// [`inequality_report`], failing with the first violated inequality.
pub fn verify_inequality_suite<T: Real>(v: &Potential<T>, j: usize) -> Result<InequalityReport> {
    let r = inequality_report(v, j)?;
    if let Some(c) = r.violations().first() {
        return Err(Error::InequalityViolated(format!("{}: {} > {}", c.name, c.lhs, c.rhs)));
    }
    if let Some(s) = r.sobolev.as_ref().filter(|s| !s.holds) {
        return Err(Error::InequalityViolated(format!(
            "Sobolev bound j = {}: {} > {} * {}",
            s.j, s.lhs, s.constant, s.bracket
        )));
    }
    Ok(r)
}

fn interpolation_checks(int: &Integrals, checks: &mut Vec<InequalityCheck>) {
    for &(p, q, r) in &INTERPOLATION_TRIPLES {
        let (pf, qf, rf) = (p as f64, q as f64, r as f64);
        let theta = (1.0 / qf - 1.0 / rf) / (1.0 / pf - 1.0 / rf);
        checks.push(InequalityCheck::new(
            format!("interpolation ‖V‖_{q} ≤ ‖V‖_{p}^{theta:.4} ‖V‖_{r}^{:.4}", 1.0 - theta),
            lp(int, 0, q),
            lp(int, 0, p).powf(theta) * lp(int, 0, r).powf(1.0 - theta),
        ));
    }
}

fn line_report<T: Real>(v: &Potential<T>, j: usize) -> Result<InequalityReport> {
    let order = (j - 2).max(2);
    let sets = index_multisets(j)?;
    let mut wanted = BTreeSet::new();
    for o in 0..=order {
        wanted.insert(Integrand(vec![(o, 2)]));
    }
    for p in 1..=8 {
        wanted.insert(Integrand(vec![(0, p)]));
    }
    for (k, m, _) in &sets {
        wanted.insert(Integrand(product_spec(m)));
        for &o in m {
            wanted.insert(Integrand(vec![(o, *k as u32)]));
        }
    }
    for factors in MIXED_HOLDER {
        wanted.insert(Integrand(product_spec(&factors.iter().map(|f| f.0).collect::<Vec<_>>())));
        for &(o, p) in factors {
            wanted.insert(Integrand(vec![(o, p)]));
        }
    }
    let int = compute_integrals(v, order, wanted)?;
    let energy = |o: usize| int.get(&[(o, 2)]);
    let mut checks = Vec::new();

    // generalized Hölder
    for (k, m, _) in &sets {
        let lhs = int.get(&product_spec(m));
        let rhs: f64 = m.iter().map(|&o| lp(&int, o, *k as u32)).product();
        checks.push(InequalityCheck::new(format!("Hölder p = {k} on orders {m:?}"), lhs, rhs));
    }
    for factors in MIXED_HOLDER {
        let orders: Vec<usize> = factors.iter().map(|f| f.0).collect();
        let lhs = int.get(&product_spec(&orders));
        let rhs: f64 = factors.iter().map(|&(o, p)| lp(&int, o, p)).product();
        let ps: Vec<u32> = factors.iter().map(|f| f.1).collect();
        checks.push(InequalityCheck::new(format!("Hölder p = {ps:?} on orders {orders:?}"), lhs, rhs));
    }
    interpolation_checks(&int, &mut checks);

    // sup bound for V, V′, …, V^(j−3)
    let jets = if v.is_zero() { None } else { Some(v.jets(order)?) };
    let breaks = v.breakpoints();
    for a in 0..=j - 3 {
        let sup = jets.as_ref().map_or(0.0, |jt| derivative_sup(jt, a, &breaks).as_f64());
        checks.push(InequalityCheck::new(
            format!("‖V^({a})‖_∞ ≤ 2^(-1/2) ‖V^({a})‖_(1,2)"),
            sup,
            SUP_CONSTANT_1D * (energy(a) + energy(a + 1)).sqrt(),
        ));
    }

    // product bounds by the number of factors of top order j − 3
    let (lo, hi) = v.support_interval();
    let support = (hi - lo).as_f64();
    let m_norm = (0..=j - 3).map(energy).sum::<f64>().sqrt();
    let m_next = (0..=j - 2).map(energy).sum::<f64>().sqrt();
    let s = SUP_CONSTANT_1D;
    for (k, m, _) in &sets {
        let lhs = int.get(&product_spec(m));
        let top = m.iter().filter(|&&o| o == j - 3).count();
        let kf = *k as i32;
        let rhs = match top {
            0 => support * (s * m_norm).powi(kf),
            1 => (s * m_norm).powi(kf - 1) * support.sqrt() * m_norm,
            2 => (s * m_norm).powi(kf - 2) * m_norm * m_norm,
            // only for j = 3, where every factor is V itself
            _ => (s * m_next).powi(kf - 2) * m_norm * m_norm,
        };
        checks.push(InequalityCheck::new(format!("product bound j = {j}, orders {m:?} ({top} top-order)"), lhs, rhs));
    }

    // Sobolev bound from the reduced density of c_j
    let (lead, rest) = sobolev_split(j)?;
    let mut c_j = lead * energy(j - 2);
    let mut max_b: f64 = 0.0;
    let extra = rest.iter().map(|t| t.v_derivs.iter().map(|&o| o as usize).max().unwrap_or(0)).max().unwrap_or(0);
    let rest_values = if rest.is_empty() || v.is_zero() {
        vec![0.0; rest.len()]
    } else {
        let poly = crate::symbolic::DifferentialPolynomial::from_terms(rest.iter().cloned());
        debug_assert!(extra <= order);
        poly.term_integrals(v)?.into_iter().map(|x| x.as_f64()).collect()
    };
    for (t, val) in rest.iter().zip(&rest_values) {
        c_j += val;
        max_b = max_b.max(t.coeff.abs());
    }
    let lhs: f64 = (0..=j - 2).map(energy).sum();
    let bracket = 1.0 + sets.iter().map(|(_, m, n)| *n as f64 * int.get(&product_spec(m))).sum::<f64>();
    let lower: f64 = (0..=j - 3).map(energy).sum();
    let constant = (lower + c_j.abs() / lead.abs()).max(max_b / lead.abs());
    let holds = lhs <= constant * bracket * (1.0 + QUADRATURE_SLACK);
    let sobolev = SobolevBound { j, lhs, bracket, constant, implied_ratio: lhs / bracket, holds };
    Ok(InequalityReport { j, dimension: 1, checks, sobolev: Some(sobolev) })
}

fn radial_report<T: Real>(v: &Potential<T>, j: usize) -> Result<InequalityReport> {
    let mut wanted = BTreeSet::new();
    for p in 1..=8 {
        wanted.insert(Integrand(vec![(0, p)]));
    }
    let int = compute_integrals(v, 1, wanted)?;
    let mut checks = Vec::new();
    let lhs = int.get(&[(0, 3)]);
    interpolation_checks(&int, &mut checks);
    let n2 = lp(&int, 0, 2);
    let n6 = lp(&int, 0, 6);
    let step1 = lp(&int, 0, 4).powi(2) * n2;
    let step2 = n2.powf(1.5) * n6.powf(1.5);
    let energies = v.derivative_energies(1)?;
    let grad = energies[1].as_f64().max(0.0).sqrt();
    let h1 = (energies[0].as_f64() + energies[1].as_f64()).sqrt();
    let k = sobolev_constant_3d();
    checks.push(InequalityCheck::new("‖V‖₆ ≤ K₃ ‖∇V‖₂", n6, k * grad));
    checks.push(InequalityCheck::new("|∫V³| ≤ ‖V‖₄² ‖V‖₂", lhs, step1));
    checks.push(InequalityCheck::new("‖V‖₄² ‖V‖₂ ≤ ‖V‖₂^(3/2) ‖V‖₆^(3/2)", step1, step2));
    let step3 = k.powf(1.5) * n2.powf(1.5) * grad.powf(1.5);
    checks.push(InequalityCheck::new("‖V‖₂^(3/2) ‖V‖₆^(3/2) ≤ K₃^(3/2) ‖V‖₂^(3/2) ‖∇V‖₂^(3/2)", step2, step3));
    checks.push(InequalityCheck::new(
        "K₃^(3/2) ‖V‖₂^(3/2) ‖∇V‖₂^(3/2) ≤ K₃^(3/2) ‖V‖₂^(3/2) ‖V‖_(1,2)^(3/2)",
        step3,
        k.powf(1.5) * n2.powf(1.5) * h1.powf(1.5),
    ));
    Ok(InequalityReport { j, dimension: 3, checks, sobolev: None })
}
