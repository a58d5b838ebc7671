//! Gauss–Legendre and midpoint rules, composite integration and Romberg
//! extrapolation.

use crate::scalar::{lit, Complex, Real};

/// A quadrature rule: nodes with matching weights.
#[derive(Clone, Debug, PartialEq)]
pub struct Rule<T> {
    pub nodes: Vec<T>,
    pub weights: Vec<T>,
}

/// Which node family a Nyström discretization uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeRule {
    GaussLegendre,
    #[default]
    Midpoint,
}

impl<T: Real> Rule<T> {
    /// Gauss–Legendre rule on [-1, 1], nodes ascending.
    pub fn gauss_legendre(n: usize) -> Self {
        assert!(n > 0, "rule needs at least one node");
        let mut nodes = vec![T::zero(); n];
        let mut weights = vec![T::zero(); n];
        let nn = T::from_usize_lossy(n);
        let half = (n + 1) / 2;
        for i in 0..half {
            let guess = (T::PI() * (T::from_usize_lossy(i) + lit(0.75)) / (nn + lit(0.5))).cos();
            let mut x = guess;
            let mut dp = T::one();
            for _ in 0..100 {
                let (p, d) = legendre_with_derivative(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() <= T::epsilon() * lit(4.0) {
                    let (_, d) = legendre_with_derivative(n, x);
                    dp = d;
                    break;
                }
            }
            let w = lit::<T>(2.0) / ((T::one() - x * x) * dp * dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        if n % 2 == 1 {
            nodes[n / 2] = T::zero();
        }
        Rule { nodes, weights }
    }

    /// Composite midpoint rule on [-1, 1].
    pub fn midpoint(n: usize) -> Self {
        assert!(n > 0, "rule needs at least one node");
        let h = lit::<T>(2.0) / T::from_usize_lossy(n);
        let nodes = (0..n)
            .map(|i| -T::one() + (T::from_usize_lossy(i) + lit(0.5)) * h)
            .collect();
        Rule { nodes, weights: vec![h; n] }
    }

    pub fn of_kind(kind: NodeRule, n: usize) -> Self {
        match kind {
            NodeRule::GaussLegendre => Self::gauss_legendre(n),
            NodeRule::Midpoint => Self::midpoint(n),
        }
    }

    /// Affinely maps a rule on [-1, 1] to [a, b].
    pub fn mapped(&self, a: T, b: T) -> Self {
        let half = (b - a) * lit(0.5);
        let mid = (a + b) * lit(0.5);
        Rule {
            nodes: self.nodes.iter().map(|&x| mid + half * x).collect(),
            weights: self.weights.iter().map(|&w| w * half).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn sum<F: FnMut(T) -> T>(&self, mut f: F) -> T {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// Legendre polynomial P_n and its derivative at x.
fn legendre_with_derivative<T: Real>(n: usize, x: T) -> (T, T) {
    let mut p0 = T::one();
    let mut p1 = x;
    if n == 0 {
        return (T::one(), T::zero());
    }
    for k in 2..=n {
        let kk = T::from_usize_lossy(k);
        let p2 = ((lit::<T>(2.0) * kk - T::one()) * x * p1 - (kk - T::one()) * p0) / kk;
        p0 = p1;
        p1 = p2;
    }
    let nn = T::from_usize_lossy(n);
    let d = nn * (x * p1 - p0) / (x * x - T::one());
    (p1, d)
}

/// Result of a self-refining integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quad<T> {
    pub value: T,
    /// Difference between the last two refinement levels.
    pub error: T,
    pub converged: bool,
}

const PANEL_NODES: usize = 16;
const MAX_PANELS: usize = 1 << 13;

/// Composite Gauss–Legendre integration over consecutive breakpoints.
///
/// The panel count is doubled until two successive totals agree to
/// `rel_tol` relative (with a floor at a few ulps of the integral of |f|).
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, breaks: &[T], rel_tol: T) -> Quad<T> {
    integrate_many(|x| vec![f(x)], 1, breaks, rel_tol)[0]
}

/// Vector-valued variant of [`integrate`]: refinement continues until every
/// component has converged.
pub fn integrate_many<T: Real, F: Fn(T) -> Vec<T>>(f: F, len: usize, breaks: &[T], rel_tol: T) -> Vec<Quad<T>> {
    let base = Rule::<T>::gauss_legendre(PANEL_NODES);
    let pieces: Vec<(T, T)> = breaks
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1]))
        .collect();
    let zero = Quad { value: T::zero(), error: T::zero(), converged: true };
    if pieces.is_empty() || len == 0 {
        return vec![zero; len];
    }
    let eval = |panels: usize| -> (Vec<T>, Vec<T>) {
        let mut total = vec![T::zero(); len];
        let mut total_abs = vec![T::zero(); len];
        for &(a, b) in &pieces {
            let width = (b - a) / T::from_usize_lossy(panels);
            for p in 0..panels {
                let lo = a + width * T::from_usize_lossy(p);
                let rule = base.mapped(lo, lo + width);
                for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
                    let v = f(x);
                    for c in 0..len {
                        total[c] += w * v[c];
                        total_abs[c] += w * v[c].abs();
                    }
                }
            }
        }
        (total, total_abs)
    };
    let mut panels = 1;
    let (mut prev, _) = eval(panels);
    loop {
        panels *= 2;
        let (cur, cur_abs) = eval(panels);
        let mut out = Vec::with_capacity(len);
        let mut all = true;
        for c in 0..len {
            let err = (cur[c] - prev[c]).abs();
            let floor = lit::<T>(16.0) * T::epsilon() * cur_abs[c];
            let ok = err <= rel_tol * cur[c].abs() || err <= floor;
            all &= ok;
            out.push(Quad { value: cur[c], error: err, converged: ok });
        }
        if all || panels >= MAX_PANELS {
            return out;
        }
        prev = cur;
    }
}

/// Romberg extrapolation of a sequence computed at step sizes h, h/2, h/4, ...
/// whose error expansion contains only even powers of h.
///
/// Returns the extrapolated value and the difference between the two most
/// refined diagonal entries as an error estimate.
pub fn romberg<T: Real>(seq: &[Complex<T>]) -> (Complex<T>, T) {
    assert!(!seq.is_empty(), "romberg needs at least one value");
    let mut prev_row = vec![seq[0]];
    let mut prev_diag = seq[0];
    let mut err = T::infinity();
    for (k, &v) in seq.iter().enumerate().skip(1) {
        let mut row = Vec::with_capacity(k + 1);
        row.push(v);
        let mut factor = T::one();
        for m in 1..=k {
            factor *= lit(4.0);
            let next = row[m - 1] + (row[m - 1] - prev_row[m - 1]) / (factor - T::one());
            row.push(next);
        }
        let diag = row[k];
        err = (diag - prev_diag).norm();
        prev_diag = diag;
        prev_row = row;
    }
    (prev_diag, err)
}

/// Real-valued convenience wrapper around [`romberg`].
pub fn romberg_real<T: Real>(seq: &[T]) -> (T, T) {
    let c: Vec<Complex<T>> = seq.iter().map(|&x| Complex::new(x, T::zero())).collect();
    let (v, e) = romberg(&c);
    (v.re, e)
}
