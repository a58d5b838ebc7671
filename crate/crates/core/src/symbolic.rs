//! Differential polynomials in z = x − y and derivatives of V at y, with
//! the operator H_V = −∂²_y + V(y) acting on them (one dimension).

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, ToPrimitive};

use crate::error::{Error, Result};
use crate::potential::Potential;
use crate::quadrature::integrate_many;
use crate::scalar::{lit, Real};

/// Coefficient field of a differential polynomial.
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = Self> + FromPrimitive + ToPrimitive + Send + Sync
{
}

impl<C> Coefficient for C where
    C: Clone + PartialEq + fmt::Debug + fmt::Display + Num + Neg<Output = C> + FromPrimitive + ToPrimitive + Send + Sync
{
}

/// Exact rational coefficients.
pub type Rational = BigRational;

/// `num / den` as an exact rational.
pub fn rational(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// coeff · z^z_power · Π V^(m) over `v_derivs`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolicTerm<C = Rational> {
    pub coeff: C,
    pub z_power: u32,
    /// Derivative orders, ascending.
    pub v_derivs: Vec<u32>,
}

impl<C: Coefficient> SymbolicTerm<C> {
    pub fn new(coeff: C, z_power: u32, mut v_derivs: Vec<u32>) -> Self {
        v_derivs.sort_unstable();
        SymbolicTerm { coeff, z_power, v_derivs }
    }

    /// Total number of derivatives on V.
    pub fn weight(&self) -> u32 {
        self.v_derivs.iter().sum()
    }
}

/// Canonical sum of [`SymbolicTerm`]s: sorted by (z power, derivative
/// multiset), like terms merged, zero coefficients dropped.
#[derive(Clone, Debug, PartialEq)]
pub struct DifferentialPolynomial<C = Rational> {
    terms: Vec<SymbolicTerm<C>>,
}

type Key = (u32, Vec<u32>);

impl<C: Coefficient> DifferentialPolynomial<C> {
    pub fn zero() -> Self {
        DifferentialPolynomial { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::z_power(0)
    }

    /// z^n.
    pub fn z_power(n: u32) -> Self {
        DifferentialPolynomial { terms: vec![SymbolicTerm::new(C::one(), n, Vec::new())] }
    }

    pub fn from_terms<I: IntoIterator<Item = SymbolicTerm<C>>>(terms: I) -> Self {
        let mut map: BTreeMap<Key, C> = BTreeMap::new();
        for t in terms {
            let mut d = t.v_derivs;
            d.sort_unstable();
            let slot = map.entry((t.z_power, d)).or_insert_with(C::zero);
            *slot = slot.clone() + t.coeff;
        }
        DifferentialPolynomial {
            terms: map
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((z_power, v_derivs), coeff)| SymbolicTerm { coeff, z_power, v_derivs })
                .collect(),
        }
    }

    pub fn terms(&self) -> &[SymbolicTerm<C>] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn canonicalize(&self) -> Self {
        Self::from_terms(self.terms.iter().cloned())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.terms.iter().chain(&other.terms).cloned())
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::from_terms(self.terms.iter().map(|t| SymbolicTerm { coeff: t.coeff.clone() * c.clone(), ..t.clone() }))
    }

    /// ∂/∂y with ∂_y z = −1 and ∂_y V^(m) = V^(m+1).
    pub fn d_dy(&self) -> Self {
        let mut out = Vec::new();
        for t in &self.terms {
            if t.z_power > 0 {
                let n = C::from_u32(t.z_power).expect("small integer");
                out.push(SymbolicTerm { coeff: -(t.coeff.clone() * n), z_power: t.z_power - 1, v_derivs: t.v_derivs.clone() });
            }
            for i in 0..t.v_derivs.len() {
                if i > 0 && t.v_derivs[i] == t.v_derivs[i - 1] {
                    continue;
                }
                let mult = t.v_derivs.iter().filter(|&&m| m == t.v_derivs[i]).count();
                let mut d = t.v_derivs.clone();
                d[i] += 1;
                out.push(SymbolicTerm::new(t.coeff.clone() * C::from_usize(mult).expect("small integer"), t.z_power, d));
            }
        }
        Self::from_terms(out)
    }

    /// Multiplication by V(y).
    pub fn times_v(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|t| {
            let mut d = t.v_derivs.clone();
            d.push(0);
            SymbolicTerm::new(t.coeff.clone(), t.z_power, d)
        }))
    }

    /// H_V = −∂²_y + V(y).
    pub fn apply_h(&self) -> Self {
        self.d_dy().d_dy().scale(&-C::one()).add(&self.times_v())
    }

    /// Drops terms whose z power exceeds 2·`remaining`: they cannot reach
    /// the diagonal within that many further applications of H.
    pub fn pruned(&self, remaining: u32) -> Self {
        DifferentialPolynomial { terms: self.terms.iter().filter(|t| t.z_power <= 2 * remaining).cloned().collect() }
    }

    /// H^n applied to self and restricted to the diagonal z = 0.
    pub fn apply_h_power_at_diagonal(&self, n: u32) -> Self {
        let mut p = self.pruned(n);
        for k in 0..n {
            p = p.apply_h().pruned(n - k - 1);
        }
        p.at_diagonal()
    }

    /// Restriction to z = 0.
    pub fn at_diagonal(&self) -> Self {
        DifferentialPolynomial { terms: self.terms.iter().filter(|t| t.z_power == 0).cloned().collect() }
    }

    pub fn max_order(&self) -> u32 {
        self.terms.iter().flat_map(|t| t.v_derivs.iter().cloned()).max().unwrap_or(0)
    }

    /// Normal form modulo total y-derivatives (integration by parts over a
    /// compactly supported V). In the result every monomial carries its
    /// highest derivative at least twice. Requires z-free terms.
    pub fn integrate_by_parts(&self) -> Result<Self> {
        if self.terms.iter().any(|t| t.z_power > 0) {
            return Err(Error::InvalidArgument("integration by parts needs a z-free polynomial".into()));
        }
        let mut memo = HashMap::new();
        let mut out = Vec::new();
        for t in &self.terms {
            for r in reduce_monomial::<C>(&t.v_derivs, &mut memo) {
                out.push(SymbolicTerm { coeff: r.coeff * t.coeff.clone(), ..r });
            }
        }
        Ok(Self::from_terms(out))
    }

    pub fn map_coefficients<D: Coefficient, F: Fn(&C) -> D>(&self, f: F) -> DifferentialPolynomial<D> {
        DifferentialPolynomial::from_terms(
            self.terms.iter().map(|t| SymbolicTerm { coeff: f(&t.coeff), z_power: t.z_power, v_derivs: t.v_derivs.clone() }),
        )
    }

    /// Value at a point given z and the derivatives V, V′, … there.
    pub fn evaluate<T: Real>(&self, z: T, jets: &[T]) -> T {
        let mut s = T::zero();
        for t in &self.terms {
            let mut p = lit::<T>(t.coeff.to_f64().unwrap_or(f64::NAN)) * z.powi(t.z_power as i32);
            for &m in &t.v_derivs {
                p *= jets[m as usize];
            }
            s += p;
        }
        s
    }

    /// ∫ P dx over the line for a smooth potential (z-free terms only).
    pub fn integral<T: Real>(&self, v: &Potential<T>) -> Result<T> {
        Ok(self.term_integrals(v)?.iter().cloned().sum())
    }

    /// ∫ of each term (coefficient included), in term order.
    pub fn term_integrals<T: Real>(&self, v: &Potential<T>) -> Result<Vec<T>> {
        if v.dimension() != 1 {
            return Err(Error::InvalidArgument("differential polynomials are evaluated on the line".into()));
        }
        if self.terms.iter().any(|t| t.z_power > 0) {
            return Err(Error::InvalidArgument("only z-free polynomials can be integrated".into()));
        }
        if self.is_zero() || v.is_zero() {
            return Ok(vec![T::zero(); self.len()]);
        }
        let jets = v.jets(self.max_order() as usize)?;
        let coeffs: Vec<T> = self.terms.iter().map(|t| lit(t.coeff.to_f64().unwrap_or(f64::NAN))).collect();
        let q = integrate_many(
            |x| {
                let j = jets.at(x);
                self.terms
                    .iter()
                    .zip(&coeffs)
                    .map(|(t, &c)| t.v_derivs.iter().fold(c, |p, &m| p * j[m as usize]))
                    .collect()
            },
            self.len(),
            &v.breakpoints(),
            lit(1e-13),
        );
        Ok(q.into_iter().map(|q| q.value).collect())
    }
}

/// Integration-by-parts normal form of the monomial Π V^(m), m ∈ `d`.
fn reduce_monomial<C: Coefficient>(d: &[u32], memo: &mut HashMap<Vec<u32>, Vec<SymbolicTerm<C>>>) -> Vec<SymbolicTerm<C>> {
    if let Some(r) = memo.get(d) {
        return r.clone();
    }
    let result = reduce_uncached(d, memo);
    memo.insert(d.to_vec(), result.clone());
    result
}

fn reduce_uncached<C: Coefficient>(d: &[u32], memo: &mut HashMap<Vec<u32>, Vec<SymbolicTerm<C>>>) -> Vec<SymbolicTerm<C>> {
    let n = d.len();
    if n == 0 {
        return vec![SymbolicTerm::new(C::one(), 0, Vec::new())];
    }
    let a = d[n - 1];
    if a == 0 || (n >= 2 && d[n - 2] == a) {
        return vec![SymbolicTerm::new(C::one(), 0, d.to_vec())];
    }
    if n == 1 {
        // a total derivative
        return Vec::new();
    }
    // single top factor V^(a), a ≥ 1
    let rest = &d[..n - 1];
    let p = rest.iter().filter(|&&m| m == a - 1).count();
    let lower: Vec<u32> = rest.iter().cloned().filter(|&m| m != a - 1).collect();
    let mut expanded = Vec::new();
    if p == 0 {
        // ∫ V^(a) R = −∫ V^(a−1) R′
        let r = DifferentialPolynomial::<C>::from_terms([SymbolicTerm::new(C::one(), 0, rest.to_vec())]).d_dy();
        for t in r.terms {
            let mut m = t.v_derivs;
            m.push(a - 1);
            expanded.push(SymbolicTerm::new(-t.coeff, 0, m));
        }
    } else {
        // ∫ (V^(a−1))^p V^(a) R = −1/(p+1) ∫ (V^(a−1))^{p+1} R′
        let c = -(C::one() / C::from_usize(p + 1).expect("small integer"));
        let r = DifferentialPolynomial::<C>::from_terms([SymbolicTerm::new(C::one(), 0, lower)]).d_dy();
        for t in r.terms {
            let mut m = t.v_derivs;
            m.extend(std::iter::repeat_n(a - 1, p + 1));
            expanded.push(SymbolicTerm::new(c.clone() * t.coeff, 0, m));
        }
    }
    let mut out = Vec::new();
    for t in expanded {
        for r in reduce_monomial::<C>(&t.v_derivs, memo) {
            out.push(SymbolicTerm { coeff: r.coeff * t.coeff.clone(), ..r });
        }
    }
    DifferentialPolynomial::from_terms(out).terms
}

impl<C: Coefficient> fmt::Display for DifferentialPolynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})", t.coeff)?;
            if t.z_power > 0 {
                write!(f, " z^{}", t.z_power)?;
            }
            for &m in &t.v_derivs {
                match m {
                    0 => write!(f, " V")?,
                    m => write!(f, " V^({m})")?,
                }
            }
        }
        Ok(())
    }
}
