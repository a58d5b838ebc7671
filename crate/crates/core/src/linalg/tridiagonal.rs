use crate::scalar::{lit, Real};

/// Real symmetric tridiagonal matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal<T> {
    pub diag: Vec<T>,
    pub off: Vec<T>,
}

impl<T: Real> SymTridiagonal<T> {
    pub fn new(diag: Vec<T>, off: Vec<T>) -> Self {
        assert!(diag.is_empty() || off.len() + 1 == diag.len(), "off-diagonal length must be n - 1");
        SymTridiagonal { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence).
    pub fn count_below(&self, x: T) -> usize {
        let pivmin = T::min_positive_value().sqrt();
        let mut count = 0;
        let mut q = T::one();
        for i in 0..self.diag.len() {
            let e2 = if i == 0 { T::zero() } else { self.off[i - 1] * self.off[i - 1] };
            q = self.diag[i] - x - if i == 0 { T::zero() } else { e2 / q };
            if q.abs() < pivmin {
                q = -pivmin;
            }
            if q < T::zero() {
                count += 1;
            }
        }
        count
    }

    /// Gershgorin enclosure of the spectrum.
    pub fn gershgorin(&self) -> (T, T) {
        let n = self.diag.len();
        let mut lo = T::infinity();
        let mut hi = T::neg_infinity();
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { T::zero() }
                + if i + 1 < n { self.off[i].abs() } else { T::zero() };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// The `k`-th smallest eigenvalue (0-based), bisected inside a bracket
    /// `[lo, hi]` known to contain it.
    pub fn eigenvalue_in(&self, k: usize, mut lo: T, mut hi: T) -> T {
        debug_assert!(k < self.len());
        let tiny = T::min_positive_value().sqrt();
        for _ in 0..200 {
            let mid = (lo + hi) * lit(0.5);
            if hi - lo <= lit::<T>(2.0) * T::epsilon() * (lo.abs().max(hi.abs())) + tiny {
                break;
            }
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        (lo + hi) * lit(0.5)
    }

    pub fn eigenvalue(&self, k: usize) -> T {
        let (lo, hi) = self.gershgorin();
        let pad = (hi - lo).abs() * lit(1e-12) + T::min_positive_value();
        self.eigenvalue_in(k, lo - pad, hi + pad)
    }

    /// All eigenvalues strictly below `x`, ascending.
    pub fn eigenvalues_below(&self, x: T) -> Vec<T> {
        let m = self.count_below(x);
        let (lo, _) = self.gershgorin();
        let lo = lo - lit::<T>(1e-12) * (lo.abs() + T::one());
        let mut out = Vec::with_capacity(m);
        let mut floor = lo;
        for k in 0..m {
            let v = self.eigenvalue_in(k, floor, x);
            out.push(v);
            floor = v - lit::<T>(8.0) * T::epsilon() * (v.abs() + T::one());
        }
        out
    }

    /// Unit eigenvector for an (approximate) eigenvalue `mu` by inverse
    /// iteration with a partially pivoted tridiagonal factorization.
    pub fn eigenvector(&self, mu: T) -> Vec<T> {
        let n = self.len();
        if n == 0 {
            return Vec::new();
        }
        let scale = self.diag.iter().chain(&self.off).fold(T::one(), |m, &v| m.max(v.abs()));
        let shift = mu + lit::<T>(16.0) * T::epsilon() * scale;
        let mut x: Vec<T> = (0..n)
            .map(|i| T::one() + lit::<T>(0.01) * (T::from_usize_lossy(i) * lit(0.618)).sin())
            .collect();
        for _ in 0..4 {
            x = self.solve_shifted(shift, &x);
            let nrm = x.iter().map(|&v| v * v).sum::<T>().sqrt();
            if nrm == T::zero() || !nrm.is_finite() {
                break;
            }
            for v in x.iter_mut() {
                *v /= nrm;
            }
        }
        x
    }

    /// Solves (T - s I) x = b by Gaussian elimination with partial pivoting.
    fn solve_shifted(&self, s: T, b: &[T]) -> Vec<T> {
        let n = self.len();
        // rows hold (sub, diag, sup, sup2)
        let mut dl: Vec<T> = self.off.clone();
        let mut d: Vec<T> = self.diag.iter().map(|&v| v - s).collect();
        let mut du: Vec<T> = self.off.clone();
        let mut du2 = vec![T::zero(); n.saturating_sub(2)];
        let mut rhs = b.to_vec();
        let tiny = T::epsilon() * (T::one() + s.abs());
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == T::zero() {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
                rhs[i + 1] = rhs[i + 1] - f * rhs[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] = -f * du[i + 1];
                }
                rhs.swap(i, i + 1);
                rhs[i + 1] = rhs[i + 1] - f * rhs[i];
            }
        }
        if d[n - 1] == T::zero() {
            d[n - 1] = tiny;
        }
        let mut x = vec![T::zero(); n];
        for i in (0..n).rev() {
            let mut v = rhs[i];
            if i + 1 < n {
                v -= du[i] * x[i + 1];
            }
            if i + 2 < n {
                v -= du2[i] * x[i + 2];
            }
            x[i] = v / d[i];
        }
        x
    }

    pub fn matvec(&self, x: &[T]) -> Vec<T> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut v = self.diag[i] * x[i];
                if i > 0 {
                    v += self.off[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    v += self.off[i] * x[i + 1];
                }
                v
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn laplacian(n: usize) -> SymTridiagonal<f64> {
        SymTridiagonal::new(vec![2.0; n], vec![-1.0; n - 1])
    }

    #[test]
    fn discrete_laplacian_spectrum() {
        let n = 50;
        let t = laplacian(n);
        for k in [0, 7, 49] {
            let exact = 4.0 * (((k + 1) as f64) * std::f64::consts::PI / (2.0 * (n as f64 + 1.0))).sin().powi(2);
            assert!((t.eigenvalue(k) - exact).abs() < 1e-13);
        }
        assert_eq!(t.eigenvalues_below(1.0).len(), t.count_below(1.0));
    }

    #[test]
    fn inverse_iteration_gives_eigenvector() {
        let mut t = laplacian(40);
        t.diag[10] -= 3.0;
        let mu = t.eigenvalue(0);
        let v = t.eigenvector(mu);
        let tv = t.matvec(&v);
        let res: f64 = tv.iter().zip(&v).map(|(a, b)| (a - mu * b).powi(2)).sum::<f64>().sqrt();
        assert!(res < 1e-10, "residual {res}");
    }
}
