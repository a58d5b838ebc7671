//! Dense complex matrices, log-scaled LU determinants, Jacobi singular
//! values, power iteration and a symmetric tridiagonal eigensolver.

mod tridiagonal;

pub use tridiagonal::SymTridiagonal;

use std::fmt::Write as _;
use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::scalar::{lit, Complex, Real};

/// Row-major dense complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: vec![Complex::new(T::zero(), T::zero()); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::new(T::one(), T::zero());
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> Complex<T>>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        CMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &v) in d.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[Complex<T>] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        CMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let out_row = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (o, &b) in out_row.iter_mut().zip(orow) {
                    *o += a * b;
                }
            }
        }
        out
    }

    pub fn matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(x).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    pub fn adjoint_matvec(&self, x: &[Complex<T>]) -> Vec<Complex<T>> {
        assert_eq!(x.len(), self.rows);
        let mut out = vec![Complex::new(T::zero(), T::zero()); self.cols];
        for (i, &xi) in x.iter().enumerate() {
            for (o, &a) in out.iter_mut().zip(self.row(i)) {
                *o += a.conj() * xi;
            }
        }
        out
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Row-major CSV with one `re,im` cell per entry (cells separated by `;`).
    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for i in 0..self.rows {
            let cells: Vec<String> = self
                .row(i)
                .iter()
                .map(|z| format!("{:e},{:e}", z.re.as_f64(), z.im.as_f64()))
                .collect();
            let _ = writeln!(s, "{}", cells.join(";"));
        }
        s
    }
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.cols + j]
    }
}

/// Determinant stored as log-magnitude plus unit phase.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LogDet<T> {
    pub log_abs: T,
    pub phase: Complex<T>,
    pub is_zero: bool,
}

impl<T: Real> LogDet<T> {
    pub fn one() -> Self {
        LogDet { log_abs: T::zero(), phase: Complex::new(T::one(), T::zero()), is_zero: false }
    }

    pub fn value(&self) -> Complex<T> {
        if self.is_zero {
            Complex::new(T::zero(), T::zero())
        } else {
            self.phase * self.log_abs.exp()
        }
    }

    pub fn mul(self, other: Self) -> Self {
        LogDet {
            log_abs: self.log_abs + other.log_abs,
            phase: self.phase * other.phase,
            is_zero: self.is_zero || other.is_zero,
        }
    }

    /// Multiplies by `exp(z)`.
    pub fn mul_exp(self, z: Complex<T>) -> Self {
        LogDet {
            log_abs: self.log_abs + z.re,
            phase: self.phase * Complex::new(z.im.cos(), z.im.sin()),
            is_zero: self.is_zero,
        }
    }

    pub fn powi(self, k: u32) -> Self {
        let mut phase = Complex::new(T::one(), T::zero());
        for _ in 0..k {
            phase = phase * self.phase;
        }
        LogDet {
            log_abs: self.log_abs * T::from_u32(k).unwrap(),
            phase: phase / phase.norm(),
            is_zero: self.is_zero && k > 0,
        }
    }

    pub fn from_value(z: Complex<T>) -> Self {
        let r = z.norm();
        if r == T::zero() {
            LogDet { log_abs: T::neg_infinity(), phase: Complex::new(T::one(), T::zero()), is_zero: true }
        } else {
            LogDet { log_abs: r.ln(), phase: z / r, is_zero: false }
        }
    }
}

/// Determinant of a square matrix by LU with partial pivoting,
/// accumulated as log-magnitude and phase.
pub fn log_det<T: Real>(a: &CMatrix<T>) -> LogDet<T> {
    assert!(a.is_square(), "determinant of a non-square matrix");
    let n = a.rows;
    let mut m = a.data.clone();
    let mut out = LogDet::one();
    for k in 0..n {
        let (p, pmax) = (k..n)
            .map(|i| (i, m[i * n + k].norm()))
            .fold((k, T::neg_infinity()), |acc, x| if x.1 > acc.1 { x } else { acc });
        if pmax == T::zero() {
            return LogDet { log_abs: T::neg_infinity(), phase: out.phase, is_zero: true };
        }
        if p != k {
            for j in 0..n {
                m.swap(k * n + j, p * n + j);
            }
            out.phase = -out.phase;
        }
        let pivot = m[k * n + k];
        out.log_abs += pmax.ln();
        out.phase = out.phase * (pivot / pmax);
        for i in (k + 1)..n {
            let f = m[i * n + k] / pivot;
            if f.re == T::zero() && f.im == T::zero() {
                continue;
            }
            for j in (k + 1)..n {
                let u = m[k * n + j];
                m[i * n + j] -= f * u;
            }
        }
        let r = out.phase.norm();
        out.phase = out.phase / r;
    }
    out
}

/// Singular values in descending order by one-sided (Hestenes) Jacobi,
/// i.e. cyclic Jacobi applied implicitly to the Gram matrix A*A.
pub fn singular_values<T: Real>(a: &CMatrix<T>) -> Vec<T> {
    let (m, n) = (a.rows, a.cols);
    if m == 0 || n == 0 {
        return Vec::new();
    }
    // column-major working copy
    let mut cols: Vec<Vec<Complex<T>>> = (0..n).map(|j| (0..m).map(|i| a[(i, j)]).collect()).collect();
    let eps = T::epsilon();
    for _sweep in 0..60 {
        let mut rotated = false;
        for p in 0..n {
            for q in (p + 1)..n {
                let (left, right) = cols.split_at_mut(q);
                let u = &mut left[p];
                let v = &mut right[0];
                let mut alpha = T::zero();
                let mut beta = T::zero();
                let mut gamma = Complex::new(T::zero(), T::zero());
                for (x, y) in u.iter().zip(v.iter()) {
                    alpha += x.norm_sqr();
                    beta += y.norm_sqr();
                    gamma += x.conj() * *y;
                }
                let g = gamma.norm();
                if g == T::zero() || g <= eps * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (lit::<T>(2.0) * g);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                let ph = phase.conj();
                for (x, y) in u.iter_mut().zip(v.iter_mut()) {
                    let yt = *y * ph;
                    let nx = *x * c - yt * s;
                    let ny = *x * s + yt * c;
                    *x = nx;
                    *y = ny;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<T> = cols.iter().map(|c| c.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()).collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    sv.truncate(m.min(n));
    sv
}

/// Largest singular value by power iteration on A*A.
pub fn spectral_norm<T: Real>(a: &CMatrix<T>, rel_tol: T) -> Result<T> {
    let n = a.cols;
    if n == 0 || a.rows == 0 {
        return Ok(T::zero());
    }
    // deterministic start vector with generic components
    let mut x: Vec<Complex<T>> = (0..n)
        .map(|i| {
            let t = T::from_usize_lossy(i + 1);
            Complex::new(T::one() + (t * lit(0.7548776662)).sin() * lit(0.5), (t * lit(0.5698402910)).cos() * lit(0.25))
        })
        .collect();
    normalize(&mut x);
    if a.matvec(&x).iter().all(|z| z.norm_sqr() == T::zero()) {
        // start vector happens to lie in the kernel: restart on the heaviest column
        let col_norm = |j: usize| (0..a.rows).map(|i| a[(i, j)].norm_sqr()).sum::<T>();
        let j = (0..n).fold(0, |best, j| if col_norm(j) > col_norm(best) { j } else { best });
        if col_norm(j) == T::zero() {
            return Ok(T::zero());
        }
        x = (0..n)
            .map(|k| Complex::new(if k == j { T::one() } else { T::zero() }, T::zero()))
            .collect();
    }
    let mut rho = T::zero();
    for it in 0..200_000 {
        let ax = a.matvec(&x);
        let rq = ax.iter().map(|z| z.norm_sqr()).sum::<T>();
        if rq == T::zero() {
            return Ok(T::zero());
        }
        let mut y = a.adjoint_matvec(&ax);
        normalize(&mut y);
        x = y;
        if it > 2 && (rq - rho).abs() <= rel_tol * lit(1e-3) * rq {
            return Ok(rq.sqrt());
        }
        rho = rq;
    }
    Err(Error::NonConvergence(format!("power iteration did not reach relative tolerance {:e}", rel_tol.as_f64())))
}

fn normalize<T: Real>(x: &mut [Complex<T>]) {
    let n = x.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
    if n > T::zero() {
        for z in x.iter_mut() {
            *z = *z / n;
        }
    }
}

/// Least squares for a small real system via the normal equations of the
/// column-scaled design, with a condition estimate from its singular values.
pub fn least_squares<T: Real>(design: &[Vec<T>], rhs: &[T]) -> (Vec<T>, T) {
    let m = design.len();
    let n = design.first().map_or(0, Vec::len);
    let scales: Vec<T> = (0..n)
        .map(|j| {
            let s = design.iter().map(|r| r[j] * r[j]).sum::<T>().sqrt();
            if s > T::zero() {
                s
            } else {
                T::one()
            }
        })
        .collect();
    let a = CMatrix::from_fn(m, n, |i, j| Complex::new(design[i][j] / scales[j], T::zero()));
    let sv = singular_values(&a);
    let cond = match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if lo > T::zero() => hi / lo,
        _ => T::infinity(),
    };
    // Householder QR on the scaled design
    let mut r: Vec<Vec<T>> = (0..m).map(|i| (0..n).map(|j| design[i][j] / scales[j]).collect()).collect();
    let mut b = rhs.to_vec();
    for k in 0..n {
        let norm = (k..m).map(|i| r[i][k] * r[i][k]).sum::<T>().sqrt();
        if norm == T::zero() {
            continue;
        }
        let alpha = if r[k][k] > T::zero() { -norm } else { norm };
        let mut v: Vec<T> = (k..m).map(|i| r[i][k]).collect();
        v[0] -= alpha;
        let vn = v.iter().map(|&x| x * x).sum::<T>();
        if vn == T::zero() {
            continue;
        }
        for j in k..n {
            let dot: T = (k..m).map(|i| v[i - k] * r[i][j]).sum();
            let f = lit::<T>(2.0) * dot / vn;
            for i in k..m {
                r[i][j] -= f * v[i - k];
            }
        }
        let dot: T = (k..m).map(|i| v[i - k] * b[i]).sum();
        let f = lit::<T>(2.0) * dot / vn;
        for i in k..m {
            b[i] -= f * v[i - k];
        }
    }
    let mut x = vec![T::zero(); n];
    for k in (0..n).rev() {
        let s: T = ((k + 1)..n).map(|j| r[k][j] * x[j]).sum();
        x[k] = if r[k][k] == T::zero() { T::zero() } else { (b[k] - s) / r[k][k] };
    }
    for (xj, s) in x.iter_mut().zip(&scales) {
        *xj /= *s;
    }
    (x, cond)
}
