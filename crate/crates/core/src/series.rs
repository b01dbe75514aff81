//! Truncated power series with exact coefficients, and the generating-function
//! identities that produce lower central series ranks φ_k and Chen ranks θ_k.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CutCoefficients, Graph};
use crate::scalar::Field;
use crate::{GroupKind, Rational};

/// Default truncation order for rank vectors.
pub const DEFAULT_ORDER: usize = 12;

/// Polynomial with integer coefficients, `coeffs[k]` the coefficient of `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_u64s(coeffs: &[u64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `p(t)` as a series truncated at `order`.
    pub fn to_series(&self, order: usize) -> PowerSeries<Rational> {
        PowerSeries::new(
            self.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect(),
            order,
        )
    }

    /// `p(-t)` as a series truncated at `order`.
    pub fn to_series_negated(&self, order: usize) -> PowerSeries<Rational> {
        PowerSeries::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let c = Rational::from_integer(c.clone());
                    if k % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect(),
            order,
        )
    }
}

impl std::fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if wrote {
                write!(f, " {sign} ")?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Power series known up to (excluding) `t^order`.
///
/// Binary operations truncate to the smaller of the two orders.
#[derive(Debug, Clone, PartialEq)]
pub struct PowerSeries<T> {
    coeffs: Vec<T>,
    order: usize,
}

impl<T: Field> PowerSeries<T> {
    pub fn new(mut coeffs: Vec<T>, order: usize) -> Self {
        coeffs.resize(order, T::zero());
        PowerSeries { coeffs, order }
    }

    pub fn zero(order: usize) -> Self {
        PowerSeries::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        PowerSeries::new(vec![T::one()], order)
    }

    /// `1/(1 - t) = Σ t^k`.
    pub fn geometric(order: usize) -> Self {
        PowerSeries::new(vec![T::one(); order], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn scale(&self, c: &T) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            order: self.order,
        }
    }

    /// Multiplicative inverse; `None` when the constant term vanishes.
    pub fn inverse(&self) -> Option<Self> {
        if self.order == 0 {
            return Some(self.clone());
        }
        if self.coeffs[0].is_zero() {
            return None;
        }
        let inv0 = T::one() / self.coeffs[0].clone();
        let mut out = vec![T::zero(); self.order];
        out[0] = inv0.clone();
        for k in 1..self.order {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j].clone() * out[k - j].clone();
            }
            out[k] = -(acc * inv0.clone());
        }
        Some(PowerSeries {
            coeffs: out,
            order: self.order,
        })
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        Some(self * &rhs.inverse()?)
    }

    /// Composition with `t/(1 - t)`; the argument has no constant term so the
    /// truncation order is preserved.
    pub fn substitute_geometric(&self) -> Self {
        let n = self.order;
        let u = {
            let mut c = vec![T::one(); n];
            if n > 0 {
                c[0] = T::zero();
            }
            PowerSeries { coeffs: c, order: n }
        };
        let mut out = PowerSeries::zero(n);
        let mut power = PowerSeries::one(n);
        for j in 0..n {
            if !self.coeffs[j].is_zero() {
                out = &out + &power.scale(&self.coeffs[j]);
            }
            power = &power * &u;
        }
        out
    }
}

impl<T: Field> Add for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn add(self, rhs: Self) -> PowerSeries<T> {
        let order = self.order.min(rhs.order);
        PowerSeries {
            coeffs: (0..order)
                .map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone())
                .collect(),
            order,
        }
    }
}

impl<T: Field> Sub for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn sub(self, rhs: Self) -> PowerSeries<T> {
        let order = self.order.min(rhs.order);
        PowerSeries {
            coeffs: (0..order)
                .map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone())
                .collect(),
            order,
        }
    }
}

impl<T: Field> Mul for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn mul(self, rhs: Self) -> PowerSeries<T> {
        let order = self.order.min(rhs.order);
        let mut out = vec![T::zero(); order];
        for (i, a) in self.coeffs.iter().take(order).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(order - i).enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        PowerSeries { coeffs: out, order }
    }
}

impl<T: Field> Neg for &PowerSeries<T> {
    type Output = PowerSeries<T>;
    fn neg(self) -> PowerSeries<T> {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
            order: self.order,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RankKind {
    Lcs,
    Chen,
}

/// Graded ranks `r_1, r_2, …` of a group, all nonnegative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RankVector {
    pub group: GroupKind,
    pub kind: RankKind,
    /// `values[k - 1]` is the rank in degree `k`.
    pub values: Vec<BigUint>,
    /// Set when fewer terms than requested could be certified.
    pub truncated: bool,
}

impl RankVector {
    pub fn get(&self, k: usize) -> Option<&BigUint> {
        k.checked_sub(1).and_then(|i| self.values.get(i))
    }

    /// Values as `u64`, panicking on overflow. Intended for tests and small graphs.
    pub fn to_u64s(&self) -> Vec<u64> {
        self.values
            .iter()
            .map(|v| v.to_u64().expect("rank exceeds u64"))
            .collect()
    }
}

/// Clique polynomial `P_Γ(t) = Σ f_k t^k`.
pub fn clique_polynomial(g: &Graph) -> IntPolynomial {
    IntPolynomial::from_u64s(&g.clique_counts())
}

/// Cut polynomial `Q_Γ(t) = Σ_{j≥2} c_j t^j`; the truncation flag of the cut
/// coefficients is passed through.
pub fn cut_polynomial(cut: &CutCoefficients) -> (IntPolynomial, bool) {
    (IntPolynomial::from_u64s(&cut.coeffs), cut.truncated)
}

fn binomial(n: &BigInt, k: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - BigInt::from(i)) / BigInt::from(i + 1);
    }
    acc
}

/// `(1 - t^k)^e` truncated at `order`, for any integer exponent `e`.
fn cyclotomic_power(k: usize, e: &BigInt, order: usize) -> PowerSeries<Rational> {
    let mut coeffs = vec![Rational::zero(); order];
    if e.sign() != Sign::Minus {
        // Σ (-1)^m C(e, m) t^{km}
        let mut m = 0u64;
        while (m as usize) * k < order {
            let c = binomial(e, m);
            if c.is_zero() {
                break;
            }
            let c = if m % 2 == 1 { -c } else { c };
            coeffs[m as usize * k] = Rational::from_integer(c);
            m += 1;
        }
    } else {
        // Σ C(|e| + m - 1, m) t^{km}
        let pos = -e;
        let mut c = BigInt::one();
        let mut m = 0u64;
        while (m as usize) * k < order {
            coeffs[m as usize * k] = Rational::from_integer(c.clone());
            c = c * (&pos + BigInt::from(m)) / BigInt::from(m + 1);
            m += 1;
        }
    }
    PowerSeries::new(coeffs, order)
}

/// The series whose product expansion encodes the LCS ranks:
/// `P(-t)` for the Artin group and `P(-t)/(1 - t)` for the Bestvina-Brady group.
pub fn lcs_generating_series(p: &IntPolynomial, mode: GroupKind, order: usize) -> PowerSeries<Rational> {
    let base = p.to_series_negated(order);
    match mode {
        GroupKind::Raag => base,
        GroupKind::Bb => &base * &PowerSeries::geometric(order),
    }
}

/// Extracts `φ_1..φ_n` from `∏ (1 - t^k)^{φ_k} = f(t)` by peeling one factor at a time.
///
/// Every extracted coefficient must be a nonnegative integer; anything else means
/// the identity does not hold for the input and is reported as an error.
pub fn extract_product_exponents(
    f: &PowerSeries<Rational>,
    n_terms: usize,
) -> Result<Vec<BigUint>> {
    assert!(f.order() > n_terms, "series order too small for {n_terms} terms");
    if !f.coeff(0).is_one() {
        return Err(Error::IdentityViolation {
            degree: 0,
            value: f.coeff(0).to_string(),
        });
    }
    let order = n_terms + 1;
    let mut residual = PowerSeries::new(f.coeffs()[..order].to_vec(), order);
    let mut out = Vec::with_capacity(n_terms);
    for k in 1..=n_terms {
        let c = -residual.coeff(k).clone();
        if !c.is_integer() || c.is_negative() {
            return Err(Error::IdentityViolation {
                degree: k,
                value: c.to_string(),
            });
        }
        let phi = c.to_integer();
        if !phi.is_zero() {
            residual = &residual * &cyclotomic_power(k, &-phi.clone(), order);
        }
        debug_assert!(residual.coeff(k).is_zero());
        out.push(phi.to_biguint().expect("nonnegative"));
    }
    Ok(out)
}

/// `∏_{k ≤ n} (1 - t^k)^{r_k}` truncated at `order`; inverse of the extraction.
pub fn product_from_ranks(ranks: &[BigUint], order: usize) -> PowerSeries<Rational> {
    let mut acc = PowerSeries::one(order);
    for (i, r) in ranks.iter().enumerate() {
        if !r.is_zero() {
            acc = &acc * &cyclotomic_power(i + 1, &BigInt::from(r.clone()), order);
        }
    }
    acc
}

/// LCS ranks from the clique polynomial. The caller is responsible for the
/// connectivity hypothesis in `Bb` mode; see [`graph_lcs_ranks`].
pub fn lcs_ranks(p: &IntPolynomial, mode: GroupKind, n_terms: usize) -> Result<RankVector> {
    let f = lcs_generating_series(p, mode, n_terms + 1);
    Ok(RankVector {
        group: mode,
        kind: RankKind::Lcs,
        values: extract_product_exponents(&f, n_terms)?,
        truncated: false,
    })
}

/// Chen ranks via the closed form `θ_k = Σ_j c_j C(k-1, j-1)` for `k >= 2`,
/// with `θ_1 = |V|` (Artin) or `|V| - 1` (Bestvina-Brady).
///
/// When the cut coefficients were capped at `m`, only `θ_1..θ_m` are certified
/// and the output is cut there and flagged.
pub fn chen_ranks(cut: &CutCoefficients, mode: GroupKind, n_terms: usize) -> RankVector {
    let n = cut.n_vertices as u64;
    let certified = if cut.truncated {
        n_terms.min(cut.computed_up_to().max(1))
    } else {
        n_terms
    };
    let mut values = Vec::with_capacity(certified);
    for k in 1..=certified {
        if k == 1 {
            let first = match mode {
                GroupKind::Raag => n,
                GroupKind::Bb => n.saturating_sub(1),
            };
            values.push(BigUint::from(first));
            continue;
        }
        let mut acc = BigInt::zero();
        for j in 2..=k {
            let c = cut.get(j).expect("certified range");
            if c != 0 {
                acc += BigInt::from(c) * binomial(&BigInt::from(k - 1), (j - 1) as u64);
            }
        }
        values.push(acc.to_biguint().expect("nonnegative"));
    }
    RankVector {
        group: mode,
        kind: RankKind::Chen,
        values,
        truncated: certified < n_terms,
    }
}

/// Chen ranks by literally expanding `Q(t/(1 - t))` as a power series.
pub fn chen_ranks_by_substitution(cut: &CutCoefficients, mode: GroupKind, n_terms: usize) -> RankVector {
    let order = n_terms + 1;
    let (q, _) = cut_polynomial(cut);
    let expanded = q.to_series(order).substitute_geometric();
    let n = cut.n_vertices as u64;
    let mut values = Vec::with_capacity(n_terms);
    for k in 1..=n_terms {
        if k == 1 {
            values.push(BigUint::from(match mode {
                GroupKind::Raag => n,
                GroupKind::Bb => n.saturating_sub(1),
            }));
        } else {
            let c = expanded.coeff(k);
            values.push(c.to_integer().to_biguint().expect("nonnegative coefficient"));
        }
    }
    RankVector {
        group: mode,
        kind: RankKind::Chen,
        values,
        truncated: cut.truncated,
    }
}

/// LCS ranks of `G_Γ` or `N_Γ`; `Bb` mode requires a connected graph.
pub fn graph_lcs_ranks(g: &Graph, mode: GroupKind, n_terms: usize) -> Result<RankVector> {
    if mode == GroupKind::Bb && !g.is_connected() {
        return Err(Error::Disconnected("N_Γ is finitely generated only for connected Γ"));
    }
    lcs_ranks(&clique_polynomial(g), mode, n_terms)
}

/// Chen ranks of `G_Γ` or `N_Γ`; `Bb` mode requires a connected graph.
pub fn graph_chen_ranks(
    g: &Graph,
    mode: GroupKind,
    n_terms: usize,
    max_subset_size: Option<usize>,
) -> Result<RankVector> {
    if mode == GroupKind::Bb && !g.is_connected() {
        return Err(Error::Disconnected("N_Γ is finitely generated only for connected Γ"));
    }
    Ok(chen_ranks(&g.cut_coefficients(max_subset_size), mode, n_terms))
}

fn mobius(n: u64) -> i64 {
    let mut m = n;
    let mut result = 1;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            m /= d;
            if m.is_multiple_of(d) {
                return 0;
            }
            result = -result;
        }
        d += 1;
    }
    if m > 1 {
        result = -result;
    }
    result
}

/// Witt numbers `φ_k(F_n) = (1/k) Σ_{d | k} μ(d) n^{k/d}`: LCS ranks of the free
/// group of rank `n`.
pub fn witt_ranks(n: u64, n_terms: usize) -> RankVector {
    let base = BigInt::from(n);
    let values = (1..=n_terms as u64)
        .map(|k| {
            let mut acc = BigInt::zero();
            for d in (1..=k).filter(|d| k % d == 0) {
                let mu = mobius(d);
                if mu != 0 {
                    acc += BigInt::from(mu) * num_traits::pow(base.clone(), (k / d) as usize);
                }
            }
            let (q, r) = acc.div_rem(&BigInt::from(k));
            debug_assert!(r.is_zero());
            q.to_biguint().expect("Witt numbers are nonnegative")
        })
        .collect();
    RankVector {
        group: GroupKind::Raag,
        kind: RankKind::Lcs,
        values,
        truncated: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    fn u(v: &RankVector) -> Vec<u64> {
        v.to_u64s()
    }

    #[test]
    fn clique_polynomials() {
        assert_eq!(clique_polynomial(&Graph::path(3)), IntPolynomial::from_u64s(&[1, 3, 2]));
        assert_eq!(
            clique_polynomial(&Graph::complete(4)),
            IntPolynomial::from_u64s(&[1, 4, 6, 4, 1])
        );
        assert_eq!(clique_polynomial(&Graph::cycle(4)), IntPolynomial::from_u64s(&[1, 4, 4]));
        assert_eq!(clique_polynomial(&Graph::path(3)).to_string(), "1 + 3t + 2t^2");
    }

    #[test]
    fn cut_polynomials() {
        let (p, trunc) = cut_polynomial(&Graph::path(3).cut_coefficients(None));
        assert_eq!(p, IntPolynomial::from_u64s(&[0, 0, 1]));
        assert!(!trunc);
        let (p, _) = cut_polynomial(&Graph::cycle(4).cut_coefficients(None));
        assert_eq!(p.to_string(), "2t^2");
        let (p, _) = cut_polynomial(&Graph::complete(5).cut_coefficients(None));
        assert!(p.is_zero());
    }

    #[test]
    fn witt_numbers() {
        assert_eq!(u(&witt_ranks(2, 7)), vec![2, 1, 2, 3, 6, 9, 18]);
        assert_eq!(u(&witt_ranks(1, 4)), vec![1, 0, 0, 0]);
        assert_eq!(u(&witt_ranks(3, 4)), vec![3, 3, 8, 18]);
    }

    #[test]
    fn lcs_examples() {
        let p3 = graph_lcs_ranks(&Graph::path(3), GroupKind::Bb, 5).unwrap();
        assert_eq!(u(&p3), vec![2, 1, 2, 3, 6]);
        let k4 = graph_lcs_ranks(&Graph::complete(4), GroupKind::Bb, 5).unwrap();
        assert_eq!(u(&k4), vec![3, 0, 0, 0, 0]);
        let c4 = graph_lcs_ranks(&Graph::cycle(4), GroupKind::Raag, 4).unwrap();
        assert_eq!(u(&c4), vec![4, 2, 4, 6]);
        let c4 = graph_lcs_ranks(&Graph::cycle(4), GroupKind::Bb, 4).unwrap();
        assert_eq!(u(&c4), vec![3, 2, 4, 6]);
    }

    #[test]
    fn bb_requires_connected_graph() {
        assert!(graph_lcs_ranks(&Graph::empty(2), GroupKind::Bb, 3).is_err());
        assert!(graph_chen_ranks(&Graph::empty(2), GroupKind::Bb, 3, None).is_err());
    }

    #[test]
    fn identity_violations_are_reported() {
        // 1 + t has φ_1 = -1
        let err = lcs_ranks(&IntPolynomial::from_i64s(&[1, -1]), GroupKind::Raag, 3).unwrap_err();
        assert!(matches!(err, Error::IdentityViolation { degree: 1, .. }));
        let f = PowerSeries::new(vec![rational(1), crate::scalar::ratio(-1, 2)], 3);
        assert!(extract_product_exponents(&f, 2).is_err());
    }

    #[test]
    fn chen_examples() {
        let p3 = graph_chen_ranks(&Graph::path(3), GroupKind::Bb, 5, None).unwrap();
        assert_eq!(u(&p3), vec![2, 1, 2, 3, 4]);
        let c4 = graph_chen_ranks(&Graph::cycle(4), GroupKind::Bb, 5, None).unwrap();
        assert_eq!(u(&c4), vec![3, 2, 4, 6, 8]);
        let k5 = graph_chen_ranks(&Graph::complete(5), GroupKind::Bb, 4, None).unwrap();
        assert_eq!(u(&k5), vec![4, 0, 0, 0]);
        let raag = graph_chen_ranks(&Graph::path(3), GroupKind::Raag, 2, None).unwrap();
        assert_eq!(u(&raag), vec![3, 1]);
    }

    #[test]
    fn truncated_cut_coefficients_shorten_chen_ranks() {
        let v = graph_chen_ranks(&Graph::cycle(5), GroupKind::Bb, 8, Some(3)).unwrap();
        assert!(v.truncated);
        assert_eq!(v.values.len(), 3);
        let full = graph_chen_ranks(&Graph::cycle(5), GroupKind::Bb, 8, None).unwrap();
        assert_eq!(v.values[..], full.values[..3]);
    }

    #[test]
    fn series_inverse_and_division() {
        let one_minus_t = PowerSeries::new(vec![rational(1), rational(-1)], 6);
        let inv = one_minus_t.inverse().unwrap();
        assert_eq!(inv, PowerSeries::geometric(6));
        assert!(PowerSeries::<Rational>::zero(3).inverse().is_none());
        let q = PowerSeries::<Rational>::one(6).checked_div(&one_minus_t).unwrap();
        assert_eq!(q, inv);
    }

    #[test]
    fn geometric_substitution() {
        // t^2 -> t^2/(1-t)^2 = Σ (k-1) t^k
        let s = PowerSeries::new(vec![rational(0), rational(0), rational(1)], 7).substitute_geometric();
        let expect: Vec<Rational> = (0..7).map(|k: i64| rational((k - 1).max(0))).collect();
        assert_eq!(s.coeffs(), &expect[..]);
    }

    #[test]
    fn orders_truncate_to_minimum() {
        let a = PowerSeries::<Rational>::geometric(4);
        let b = PowerSeries::<Rational>::geometric(6);
        assert_eq!((&a * &b).order(), 4);
        assert_eq!((&a + &b).order(), 4);
    }
}
