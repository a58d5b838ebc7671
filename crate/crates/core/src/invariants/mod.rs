//! Heat invariants c_j(V), their Hitrik–Polterovich densities, the
//! wave-invariant constants and the numerical heat trace.

mod heat;

pub use heat::{fit_heat_coefficients, heat_trace_oracle, HeatFit, HeatTrace, HeatTraceValue, DEFAULT_SPACING};

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::MultiIndexTuple;
use crate::potential::Potential;
use crate::quadrature::integrate;
use crate::scalar::{lit, Real};
use crate::special::gamma_half;
use crate::symbolic::{Coefficient, DifferentialPolynomial, Rational, SymbolicTerm};

/// Largest order the symbolic engine is used for by default.
pub const SYMBOLIC_MAX_ORDER: usize = 6;

/// c_1 = ∫V, c_2 = ∫V², c_3 = ∫(V³ + ½|∇V|²) (radially with 4πr² dr).
pub fn heat_invariant_closed<T: Real>(j: usize, v: &Potential<T>) -> Result<T> {
    match j {
        1 => Ok(v.integral()),
        2 => v.lp_norm(lit(2.0)).map(|n| n * n),
        3 => {
            if v.is_zero() {
                return Ok(T::zero());
            }
            if !v.is_smooth() {
                return Err(Error::NonSmooth(v.kind_name()));
            }
            let jets = v.jets(1)?;
            let half = lit::<T>(0.5);
            Ok(v.measure_integral(|x| {
                let f = jets.at(x);
                f[0] * f[0] * f[0] + half * f[1] * f[1]
            }))
        }
        _ => Err(Error::InvalidArgument(format!("closed forms exist for j = 1, 2, 3; got {j}"))),
    }
}

/// c_{j,k} = binom(j − 1 + d/2, k + d/2) = Π_{i=1}^{j−1−k} (k + d/2 + i)/i.
pub fn hp_coefficient<C: Coefficient>(j: usize, k: usize, d: usize) -> C {
    (1..j - k).fold(C::one(), |acc, i| {
        let num = C::from_usize(2 * k + d + 2 * i).expect("small integer");
        let den = C::from_usize(2 * i).expect("small integer");
        acc * num / den
    })
}

fn factorial<C: Coefficient>(n: usize) -> C {
    (1..=n).fold(C::one(), |a, i| a * C::from_usize(i).expect("small integer"))
}

/// The density c_j(x) = (−1)^j Σ_k c_{j,k} (H_V)_y^{k+j}(|x−y|^{2k})|_{x=y} / (4^k k! (k+j)!)
/// on the line, before integration by parts.
pub fn hp_density_in<C: Coefficient>(j: usize) -> Result<DifferentialPolynomial<C>> {
    if j == 0 {
        return Err(Error::InvalidArgument("heat invariants start at j = 1".into()));
    }
    let mut total = DifferentialPolynomial::<C>::zero();
    let sign = if j % 2 == 0 { C::one() } else { -C::one() };
    for k in 0..j {
        let h = DifferentialPolynomial::<C>::z_power(2 * k as u32).apply_h_power_at_diagonal((k + j) as u32);
        let four_k = (0..k).fold(C::one(), |a, _| a * C::from_u32(4).expect("small integer"));
        let c = sign.clone() * hp_coefficient::<C>(j, k, 1) / (four_k * factorial::<C>(k) * factorial::<C>(k + j));
        total = total.add(&h.scale(&c));
    }
    Ok(total)
}

/// [`hp_density_in`] with exact rational coefficients.
pub fn hp_density(j: usize) -> Result<DifferentialPolynomial<Rational>> {
    hp_density_in::<Rational>(j)
}

/// The density after integration by parts.
pub fn reduced_density(j: usize) -> Result<DifferentialPolynomial<Rational>> {
    hp_density(j)?.integrate_by_parts()
}

/// κ_j = (−1)^j / j!, the factor relating the density integral to the
/// closed-form normalization of c_1, c_2, c_3 (physical heat coefficient
/// = κ_j · closed form).
pub fn kappa(j: usize) -> Rational {
    let f: BigInt = (1..=j as i64).map(BigInt::from).product();
    let s = if j % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    Rational::new(s, f)
}

/// The coefficient γ_j of t^j in (4πt)^{1/2} Tr(e^{−tH_V} − e^{−tH₀}),
/// as the integral of the Hitrik–Polterovich density.
pub fn hp_heat_coefficient<T: Real>(j: usize, v: &Potential<T>) -> Result<T> {
    if v.dimension() != 1 {
        return Err(Error::InvalidArgument("the symbolic engine works on the line".into()));
    }
    reduced_density(j)?.integral(v)
}

/// c_j(V) in the closed-form normalization: the density integral divided
/// by κ_j.
pub fn heat_invariant_symbolic<T: Real>(j: usize, v: &Potential<T>) -> Result<T> {
    let k = kappa(j).to_f64().expect("finite rational");
    Ok(hp_heat_coefficient(j, v)? / lit(k))
}

/// c_j(V) for any available j: closed forms for j ≤ 3, the symbolic engine
/// beyond (line only).
pub fn heat_invariant<T: Real>(j: usize, v: &Potential<T>) -> Result<T> {
    if j <= 3 {
        heat_invariant_closed(j, v)
    } else if v.dimension() == 1 {
        heat_invariant_symbolic(j, v)
    } else {
        Err(Error::InvalidArgument(format!("c_{j} is only available on the line")))
    }
}

/// Shape of the reduced density: the leading quadratic term and whether
/// every higher product term lies in the index set 𝒜_{j,k}.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureReport {
    pub j: usize,
    /// Coefficient of (V^(j−2))² (κ_j-normalized density).
    pub leading: f64,
    /// Products other than (V^(j−2))² with fewer than three factors.
    pub unexpected_low_terms: Vec<Vec<u32>>,
    /// Products with k ≥ 3 factors outside 𝒜_{j,k}.
    pub outside_index_set: Vec<Vec<u32>>,
    pub terms: usize,
    pub ok: bool,
}

/// Checks the reduced density of c_j (j ≥ 3) against the structure
/// d_j ∫|V^(j−2)|² + Σ_{α ∈ 𝒜_{j,k}} c_α ∫ Π D^{α^m} V.
pub fn structure_check(j: usize) -> Result<StructureReport> {
    if j < 3 {
        return Err(Error::InvalidArgument("the structure statement starts at j = 3".into()));
    }
    let red = reduced_density(j)?.scale(&(Rational::one() / kappa(j)));
    let mut leading = 0.0;
    let mut low = Vec::new();
    let mut outside = Vec::new();
    for t in red.terms() {
        let k = t.v_derivs.len();
        if k == 2 && t.v_derivs == [j as u32 - 2, j as u32 - 2] {
            leading = t.coeff.to_f64().unwrap_or(f64::NAN);
        } else if k < 3 {
            low.push(t.v_derivs.clone());
        } else {
            let tuple = MultiIndexTuple { j, k, alphas: t.v_derivs.iter().map(|&m| vec![m as usize]).collect() };
            if k > j || !tuple.is_valid() {
                outside.push(t.v_derivs.clone());
            }
        }
    }
    let ok = low.is_empty() && outside.is_empty() && leading != 0.0;
    Ok(StructureReport { j, leading, unexpected_low_terms: low, outside_index_set: outside, terms: red.len(), ok })
}

/// Constants relating wave and heat invariants: w_j = d_j c_j.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct WaveConstants {
    pub j: usize,
    pub dimension: usize,
    pub d: f64,
    #[serde(rename = "M", skip_serializing_if = "Option::is_none")]
    pub m: Option<f64>,
    #[serde(rename = "N", skip_serializing_if = "Option::is_none")]
    pub n: Option<f64>,
}

/// [(d/dθ)^n e^{−θ²}]_{θ=0} = (−1)^n H_n(0), exactly.
pub fn gaussian_derivative_at_zero(n: usize) -> BigInt {
    // H_{m+1}(0) = −2m H_{m−1}(0)
    let mut prev = BigInt::one();
    let mut cur = BigInt::zero();
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let next = -BigInt::from(2 * m) * &prev;
        prev = cur;
        cur = next;
    }
    if n % 2 == 1 {
        -cur
    } else {
        cur
    }
}

/// N_j = ∫ e^{−θ²} |θ|^{2j−d} dθ by composite Gauss–Legendre on [0, 12].
pub fn n_constant(j: usize, d: usize) -> Result<f64> {
    let p = 2 * j as i64 - d as i64;
    if p <= -1 {
        return Err(Error::DivergentIntegral(format!("|θ|^{p} is not integrable at 0")));
    }
    let breaks: Vec<f64> = (0..=24).map(|i| 0.5 * i as f64).collect();
    let q = integrate(|t: f64| (-t * t).exp() * t.powi(p as i32), &breaks, 1e-15);
    Ok(2.0 * q.value)
}

/// d_j with M_j (1 ≤ j ≤ (d−1)/2) or N_j (j ≥ (d+1)/2), d odd.
pub fn wave_constants(j: usize, d: usize) -> Result<WaveConstants> {
    if d % 2 == 0 || j == 0 {
        return Err(Error::InvalidArgument(format!("wave constants need odd d and j ≥ 1, got d = {d}, j = {j}")));
    }
    let scale = 2f64.powi(2 * (j as i32 - d as i32) + 1);
    if 2 * j < d {
        let m = gaussian_derivative_at_zero(d - 1 - 2 * j).to_f64().expect("finite");
        Ok(WaveConstants { j, dimension: d, d: scale / m, m: Some(m), n: None })
    } else {
        let n = n_constant(j, d)?;
        Ok(WaveConstants { j, dimension: d, d: scale / n, m: None, n: Some(n) })
    }
}

/// Γ(j − (d−1)/2), the closed form of N_j.
pub fn n_constant_gamma(j: usize, d: usize) -> f64 {
    gamma_half::<f64>((2 * j + 1 - d) as u32)
}

/// w_j = d_j c_j for j = 1..=J.
pub fn wave_trace_expansion<T: Real>(v: &Potential<T>, jmax: usize) -> Result<BTreeMap<usize, T>> {
    let mut out = BTreeMap::new();
    for j in 1..=jmax {
        let c = wave_constants(j, v.dimension())?;
        out.insert(j, lit::<T>(c.d) * heat_invariant(j, v)?);
    }
    Ok(out)
}

/// Heat and wave invariants of one potential.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantVector {
    pub dimension: usize,
    pub c: BTreeMap<usize, f64>,
    pub w: BTreeMap<usize, f64>,
    pub constants: BTreeMap<usize, WaveConstants>,
    pub kappa: BTreeMap<usize, f64>,
}

impl InvariantVector {
    pub fn compute<T: Real>(v: &Potential<T>, jmax: usize) -> Result<Self> {
        let mut c = BTreeMap::new();
        let mut w = BTreeMap::new();
        let mut constants = BTreeMap::new();
        let mut kap = BTreeMap::new();
        for j in 1..=jmax {
            let cj = heat_invariant(j, v)?.as_f64();
            let k = wave_constants(j, v.dimension())?;
            c.insert(j, cj);
            w.insert(j, k.d * cj);
            constants.insert(j, k);
            kap.insert(j, kappa(j).to_f64().expect("finite"));
        }
        Ok(InvariantVector { dimension: v.dimension(), c, w, constants, kappa: kap })
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        let keyed = |m: &BTreeMap<usize, f64>| -> serde_json::Map<String, serde_json::Value> {
            m.iter().map(|(k, v)| (k.to_string(), serde_json::json!(v))).collect()
        };
        let constants: serde_json::Map<String, serde_json::Value> = self
            .constants
            .iter()
            .map(|(k, c)| (k.to_string(), serde_json::to_value(c).expect("constants serialize")))
            .collect();
        serde_json::json!({
            "dimension": self.dimension,
            "c": keyed(&self.c),
            "w": keyed(&self.w),
            "constants": constants,
            "calibration": { "kappa": keyed(&self.kappa) },
        })
    }
}

/// Per-j comparison of invariants of two potentials.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantComparison {
    pub equal: bool,
    pub tolerance: f64,
    /// |c_j(V0) − c_j(V1)| / (1 + |c_j(V0)|), j = 1..=J.
    pub residuals: Vec<f64>,
    pub values: Vec<(f64, f64)>,
}

/// Checks |c_j(V0) − c_j(V1)| ≤ tol (1 + |c_j(V0)|) for j ≤ J.
pub fn verify_invariants_equal<T: Real>(v0: &Potential<T>, v1: &Potential<T>, jmax: usize, tol: f64) -> Result<InvariantComparison> {
    if v0.dimension() != v1.dimension() {
        return Err(Error::InvalidArgument("potentials live in different dimensions".into()));
    }
    let limit = if v0.dimension() == 1 { SYMBOLIC_MAX_ORDER } else { 3 };
    if jmax > limit {
        return Err(Error::InvalidArgument(format!("invariants are available up to j = {limit}")));
    }
    let mut residuals = Vec::new();
    let mut values = Vec::new();
    for j in 1..=jmax {
        let a = heat_invariant(j, v0)?.as_f64();
        let b = heat_invariant(j, v1)?.as_f64();
        residuals.push((a - b).abs() / (1.0 + a.abs()));
        values.push((a, b));
    }
    let equal = residuals.iter().all(|&r| r <= tol);
    Ok(InvariantComparison { equal, tolerance: tol, residuals, values })
}

/// Splits the reduced density of c_j (closed-form normalization) into the
/// leading coefficient a_j of ∫(V^(j−2))² and the remaining product terms.
pub fn sobolev_split(j: usize) -> Result<(f64, Vec<SymbolicTerm<f64>>)> {
    let red = reduced_density(j)?.scale(&(Rational::one() / kappa(j)));
    let mut lead = 0.0;
    let mut rest = Vec::new();
    for t in red.terms() {
        let c = t.coeff.to_f64().unwrap_or(f64::NAN);
        if t.v_derivs.len() == 2 && t.v_derivs == [j as u32 - 2, j as u32 - 2] {
            lead = c;
        } else {
            rest.push(SymbolicTerm { coeff: c, z_power: 0, v_derivs: t.v_derivs.clone() });
        }
    }
    Ok((lead, rest))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbolic::rational;

    #[test]
    fn low_order_densities() {
        let one = DifferentialPolynomial::from_terms([SymbolicTerm::new(rational(-1, 1), 0, vec![0])]);
        assert_eq!(reduced_density(1).unwrap(), one);
        let two = DifferentialPolynomial::from_terms([SymbolicTerm::new(rational(1, 2), 0, vec![0, 0])]);
        assert_eq!(reduced_density(2).unwrap(), two);
        let three = DifferentialPolynomial::from_terms([
            SymbolicTerm::new(rational(-1, 6), 0, vec![0, 0, 0]),
            SymbolicTerm::new(rational(-1, 12), 0, vec![1, 1]),
        ]);
        assert_eq!(reduced_density(3).unwrap(), three);
    }

    #[test]
    fn hermite_values() {
        assert_eq!(gaussian_derivative_at_zero(0), BigInt::from(1));
        assert_eq!(gaussian_derivative_at_zero(1), BigInt::from(0));
        assert_eq!(gaussian_derivative_at_zero(2), BigInt::from(-2));
        assert_eq!(gaussian_derivative_at_zero(4), BigInt::from(12));
    }

    #[test]
    fn binomial_product_form() {
        // binom(3/2, 1/2) = 3/2 and binom(5/2, 1/2) = 15/8
        assert_eq!(hp_coefficient::<Rational>(2, 0, 1), rational(3, 2));
        assert_eq!(hp_coefficient::<Rational>(3, 0, 1), rational(15, 8));
        assert_eq!(hp_coefficient::<Rational>(3, 2, 1), rational(1, 1));
    }
}
