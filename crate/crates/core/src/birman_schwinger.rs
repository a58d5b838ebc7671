//! Nyström discretization of the Birman–Schwinger operator K_V(λ) = V R₀(λ) χ.

use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::potential::Potential;
use crate::quadrature::{NodeRule, Rule};
use crate::resolvent::{green_factors, kernel_1d, sector_rule, Sector};
use crate::scalar::{Complex, Real};

/// Discretized K_V(λ) with entries V(x_m) k(x_m, x_n; λ) w_n.
#[derive(Clone, Debug, PartialEq)]
pub struct BsMatrix<T> {
    pub lam: Complex<T>,
    pub sector: Sector,
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
    pub potential_values: Vec<T>,
    pub entries: CMatrix<T>,
}

/// Nodes covering the support hull of V in the sector's variable.
pub(crate) fn support_rule<T: Real>(v: &Potential<T>, sector: Sector, n: usize, rule: NodeRule) -> Result<Rule<T>> {
    match (sector, v.dimension()) {
        (Sector::Line, 1) | (Sector::Radial(_), 3) => {}
        _ => {
            return Err(Error::InvalidArgument(format!(
                "sector {sector:?} does not match a {}-dimensional potential",
                v.dimension()
            )))
        }
    }
    if n < 4 {
        return Err(Error::InvalidArgument(format!("need at least 4 nodes, got {n}")));
    }
    let (lo, hi) = v.support_interval();
    Ok(sector_rule(sector, lo, hi, n, rule))
}

/// Assembles K_V(λ) on n nodes of the given rule.
pub fn assemble_k<T: Real>(v: &Potential<T>, lam: Complex<T>, n: usize, sector: Sector, rule: NodeRule) -> Result<BsMatrix<T>> {
    let q = support_rule(v, sector, n, rule)?;
    let pv: Vec<T> = q.nodes.iter().map(|&x| v.profile(x)).collect();
    let zero = Complex::new(T::zero(), T::zero());
    let entries = match sector {
        Sector::Line => {
            let mut m = CMatrix::zeros(n, n);
            for a in 0..n {
                if pv[a] == T::zero() {
                    continue;
                }
                for b in 0..n {
                    m[(a, b)] = kernel_1d(q.nodes[a], q.nodes[b], lam)? * (pv[a] * q.weights[b]);
                }
            }
            m
        }
        Sector::Radial(_) => {
            let (fa, fb) = green_factors(sector, &q.nodes, lam)?;
            CMatrix::from_fn(n, n, |a, b| {
                if pv[a] == T::zero() {
                    return zero;
                }
                let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                fa[lo] * fb[hi] * (pv[a] * q.weights[b])
            })
        }
    };
    if !entries.is_finite() {
        return Err(Error::NonConvergence("non-finite Birman–Schwinger entries".into()));
    }
    Ok(BsMatrix { lam, sector, nodes: q.nodes, weights: q.weights, potential_values: pv, entries })
}

impl<T: Real> BsMatrix<T> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn trace(&self) -> Complex<T> {
        self.entries.trace()
    }

    /// (Σ w_m |V(x_m) k(x_m, x_n)|² w_n)^{1/2}.
    pub fn hilbert_schmidt_norm(&self) -> T {
        self.symmetrized().frobenius_norm()
    }

    /// √w_m V(x_m) k(x_m, x_n) √w_n.
    pub fn symmetrized(&self) -> CMatrix<T> {
        let s: Vec<T> = self.weights.iter().map(|w| w.sqrt()).collect();
        CMatrix::from_fn(self.len(), self.len(), |m, n| self.entries[(m, n)] * (s[m] / s[n]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trace_of_square_well_on_imaginary_axis() {
        let v = Potential::square_well(1, -10.0, 1.0).unwrap();
        for (lam, expected) in [(Complex::new(0.0, 1.0), -10.0), (Complex::new(0.0, -1.0), 10.0)] {
            let k = assemble_k(&v, lam, 64, Sector::Line, NodeRule::GaussLegendre).unwrap();
            assert!((k.trace() - Complex::new(expected, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn zero_potential_gives_zero_matrix() {
        let v = Potential::<f64>::zero(1, 1.0).unwrap();
        let k = assemble_k(&v, Complex::new(1.0, -0.5), 16, Sector::Line, NodeRule::Midpoint).unwrap();
        assert_eq!(k.entries.frobenius_norm(), 0.0);
        assert_eq!(k.hilbert_schmidt_norm(), 0.0);
    }
}
