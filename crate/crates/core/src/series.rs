//! Truncated one-variable formal power series with zero constant term.
//!
//! Coefficients are stored in one of two explicit conventions. The factorial
//! convention stores `f_k` for `Σ f_k a^k / k!` and is the one the symmetric
//! (commutative) side reads; the plain convention stores literal
//! coefficients and is the one the tensor side reads.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{contract, Error, Result};
use crate::graded::{compositions, factorial, int, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `Σ f_k a^k / k!`
    Factorial,
    /// `Σ f_k a^k`
    Plain,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Convention::Factorial => f.write_str("factorial"),
            Convention::Plain => f.write_str("plain"),
        }
    }
}

fn fact(k: usize) -> Scalar {
    Scalar::from_integer(factorial(k))
}

/// Coefficients `c_1..c_N` of a series truncated after `a^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    convention: Convention,
    coeffs: Vec<Scalar>,
}

impl TruncatedSeries {
    pub fn new(coeffs: Vec<Scalar>, convention: Convention) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Usage("a series needs order at least 1".into()));
        }
        Ok(TruncatedSeries { convention, coeffs })
    }

    fn from_plain(plain: &[Scalar], convention: Convention) -> Self {
        let coeffs = match convention {
            Convention::Plain => plain.to_vec(),
            Convention::Factorial => plain
                .iter()
                .enumerate()
                .map(|(i, c)| c * fact(i + 1))
                .collect(),
        };
        TruncatedSeries { convention, coeffs }
    }

    pub fn identity(order: usize, convention: Convention) -> Result<Self> {
        let mut coeffs = vec![Scalar::zero(); order];
        if let Some(c) = coeffs.first_mut() {
            *c = Scalar::one();
        }
        Self::new(coeffs, convention)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// The stored coefficient of index `k` (1-based), zero beyond the order.
    pub fn coeff(&self, k: usize) -> Scalar {
        if k == 0 {
            return Scalar::zero();
        }
        self.coeffs.get(k - 1).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Literal coefficients `[0, p_1, …, p_N]` of `a^0..a^N`.
    pub fn plain_with_constant(&self) -> Vec<Scalar> {
        let mut out = Vec::with_capacity(self.order() + 1);
        out.push(Scalar::zero());
        match self.convention {
            Convention::Plain => out.extend(self.coeffs.iter().cloned()),
            Convention::Factorial => out.extend(
                self.coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c / fact(i + 1)),
            ),
        }
        out
    }

    pub fn with_convention(&self, convention: Convention) -> Self {
        if convention == self.convention {
            return self.clone();
        }
        Self::from_plain(&self.plain_with_constant()[1..], convention)
    }

    /// Equality of the underlying series, regardless of stored convention.
    pub fn same_series(&self, other: &TruncatedSeries) -> bool {
        self.order() == other.order()
            && self.plain_with_constant() == other.with_convention(self.convention).plain_with_constant()
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(", "))
    }
}

/// Product of two coefficient vectors (index = power), truncated to `len`.
fn mul_trunc(a: &[Scalar], b: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `Σ_k outer[k] · inner^k` truncated to `len`; `inner[0]` must be zero.
fn compose_raw(outer: &[Scalar], inner: &[Scalar], len: usize) -> Vec<Scalar> {
    let mut out = vec![Scalar::zero(); len];
    let mut power = vec![Scalar::zero(); len];
    power[0] = Scalar::one();
    for (k, c) in outer.iter().enumerate().take(len) {
        if k > 0 {
            power = mul_trunc(&power, inner, len);
        }
        if c.is_zero() {
            continue;
        }
        for (o, p) in out.iter_mut().zip(&power) {
            *o += c * p;
        }
    }
    out
}

fn check_compatible(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<()> {
    if a.order() != b.order() {
        return Err(contract(format!(
            "series orders differ ({} vs {})",
            a.order(),
            b.order()
        )));
    }
    if a.convention != b.convention {
        return Err(contract(format!(
            "series conventions differ ({} vs {})",
            a.convention, b.convention
        )));
    }
    Ok(())
}

/// `outer(inner(a))` truncated to the common order.
pub fn compose(outer: &TruncatedSeries, inner: &TruncatedSeries) -> Result<TruncatedSeries> {
    check_compatible(outer, inner)?;
    let n = outer.order();
    let plain = compose_raw(
        &outer.plain_with_constant(),
        &inner.plain_with_constant(),
        n + 1,
    );
    Ok(TruncatedSeries::from_plain(&plain[1..], outer.convention))
}

/// Compositional inverse by Lagrange inversion:
/// `g_k = (1/k) [a^{k-1}] (a / f(a))^k`.
pub fn invert(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    let n = f.order();
    let fp = f.plain_with_constant();
    if fp[1].is_zero() {
        return Err(Error::SingularSeries);
    }
    // q = f(a)/a, h = 1/q, both known through a^{n-1}
    let q = &fp[1..];
    let mut h = vec![Scalar::zero(); n];
    h[0] = q[0].recip();
    for k in 1..n {
        let acc: Scalar = (1..=k).map(|j| &q[j] * &h[k - j]).sum();
        h[k] = -acc * &h[0];
    }
    let mut g = Vec::with_capacity(n);
    let mut power = h.clone();
    for k in 1..=n {
        if k > 1 {
            power = mul_trunc(&power, &h, n);
        }
        g.push(&power[k - 1] / int(k as i64));
    }
    Ok(TruncatedSeries::from_plain(&g, f.convention))
}

/// Named series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    /// `exp(a) - 1`
    ExpMinusOne,
    /// `log(1 + a)`
    LogOnePlus,
    /// `a / (1 - a)`
    Geometric,
    /// `a / (1 + a)`
    AltGeometric,
    Identity,
}

impl Preset {
    pub const ALL: [Preset; 5] = [
        Preset::ExpMinusOne,
        Preset::LogOnePlus,
        Preset::Geometric,
        Preset::AltGeometric,
        Preset::Identity,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::ExpMinusOne => "exp-minus-one",
            Preset::LogOnePlus => "log-one-plus",
            Preset::Geometric => "geometric",
            Preset::AltGeometric => "alt-geometric",
            Preset::Identity => "identity",
        }
    }
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.replace('_', "-");
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == key)
            .ok_or_else(|| Error::Usage(format!("unknown series preset `{s}`")))
    }
}

/// Exact coefficients of a named series.
pub fn preset(name: Preset, order: usize, convention: Convention) -> Result<TruncatedSeries> {
    if order == 0 {
        return Err(Error::Usage("a series needs order at least 1".into()));
    }
    let plain: Vec<Scalar> = (1..=order)
        .map(|k| {
            let alt = if k % 2 == 1 { int(1) } else { int(-1) };
            match name {
                Preset::ExpMinusOne => fact(k).recip(),
                Preset::LogOnePlus => alt / int(k as i64),
                Preset::Geometric => int(1),
                Preset::AltGeometric => alt,
                Preset::Identity => {
                    if k == 1 {
                        int(1)
                    } else {
                        int(0)
                    }
                }
            }
        })
        .collect();
    Ok(TruncatedSeries::from_plain(&plain, convention))
}

/// A pseudo-random invertible series with small rational coefficients.
pub fn random_invertible<R: Rng + ?Sized>(
    rng: &mut R,
    order: usize,
    convention: Convention,
) -> TruncatedSeries {
    let coeffs = (0..order)
        .map(|k| loop {
            let num: i64 = rng.gen_range(-6..=6);
            let den: i64 = rng.gen_range(1..=4);
            if k > 0 || num != 0 {
                break Scalar::new(BigInt::from(num), BigInt::from(den));
            }
        })
        .collect();
    TruncatedSeries { convention, coeffs }
}

fn check_inverse_pair(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<()> {
    if f.order() != g.order() {
        return Err(contract("f and g must have the same order"));
    }
    let expected = invert(f)?;
    if !expected.same_series(g) {
        return Err(contract("g is not the compositional inverse of f"));
    }
    Ok(())
}

/// The coefficients `c_0..c_R` of the generalized brace, where `c_r` is the
/// r-th derivative at zero of `ψ'(φ(a))` and `c_0 = g_1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientVector {
    values: Vec<Scalar>,
}

impl CoefficientVector {
    pub fn new(values: Vec<Scalar>) -> Self {
        CoefficientVector { values }
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn get(&self, r: usize) -> Option<&Scalar> {
        self.values.get(r)
    }

    /// Largest `r` available.
    pub fn max_r(&self) -> usize {
        self.values.len().saturating_sub(1)
    }
}

/// `c_0..c_R` by differentiating and composing the series directly.
pub fn c_from_series(f: &TruncatedSeries, g: &TruncatedSeries, r_max: usize) -> Result<CoefficientVector> {
    check_inverse_pair(f, g)?;
    let n = f.order();
    if r_max >= n {
        return Err(Error::InsufficientOrder {
            needed: r_max + 1,
            available: n,
        });
    }
    let psi = g.plain_with_constant();
    // ψ'(x), known through x^{n-1}
    let psi_prime: Vec<Scalar> = (0..n).map(|j| &psi[j + 1] * int(j as i64 + 1)).collect();
    let phi = f.plain_with_constant();
    let series = compose_raw(&psi_prime, &phi, r_max + 1);
    let values = series
        .iter()
        .enumerate()
        .map(|(r, c)| c * fact(r))
        .collect();
    Ok(CoefficientVector { values })
}

/// `c_r` from the closed composition sum
/// `Σ_{k≥2} Σ_{i_2+⋯+i_k=r} g_k · f_{i_2}⋯f_{i_k}/(k-1)! · r!/(i_2!⋯i_k!)`,
/// in factorial-convention coefficients; `c_0 = g_1`.
pub fn c_closed_form(f: &TruncatedSeries, g: &TruncatedSeries, r: usize) -> Result<Scalar> {
    check_inverse_pair(f, g)?;
    if r >= f.order() {
        return Err(Error::InsufficientOrder {
            needed: r + 1,
            available: f.order(),
        });
    }
    Ok(closed_c(f, g, r))
}

/// [`c_closed_form`] for every `r ≤ r_max`, checking the inverse pair once.
pub fn c_closed_forms(f: &TruncatedSeries, g: &TruncatedSeries, r_max: usize) -> Result<CoefficientVector> {
    check_inverse_pair(f, g)?;
    if r_max >= f.order() {
        return Err(Error::InsufficientOrder {
            needed: r_max + 1,
            available: f.order(),
        });
    }
    Ok(CoefficientVector::new((0..=r_max).map(|r| closed_c(f, g, r)).collect()))
}

fn closed_c(f: &TruncatedSeries, g: &TruncatedSeries, r: usize) -> Scalar {
    let f = f.with_convention(Convention::Factorial);
    let g = g.with_convention(Convention::Factorial);
    if r == 0 {
        return g.coeff(1);
    }
    let r_fact = fact(r);
    // f_i / i!, i.e. the plain coefficients
    let scaled: Vec<Scalar> = (0..=r).map(|i| if i == 0 { Scalar::zero() } else { f.coeff(i) / fact(i) }).collect();
    let weights: Vec<Scalar> = (0..=r + 1)
        .map(|k| if k < 2 { Scalar::zero() } else { g.coeff(k) / fact(k - 1) * &r_fact })
        .collect();
    let mut total = Scalar::zero();
    for parts in compositions(r) {
        let prod = parts.iter().fold(Scalar::one(), |acc, &i| acc * &scaled[i]);
        total += &weights[parts.len() + 1] * prod;
    }
    total
}

/// Left-hand side of the identity
/// `Σ_{k≥2} Σ_{i_2+⋯+i_k=r} (-1)^{k-1} r!/(i_2!⋯i_k!) = (-1)^r`.
pub fn alternating_composition_sum(r: usize) -> Scalar {
    let r_fact = fact(r);
    compositions(r)
        .into_iter()
        .filter(|parts| !parts.is_empty())
        .map(|parts| {
            let k = parts.len() + 1;
            let sign = if k % 2 == 0 { int(-1) } else { int(1) };
            parts.iter().fold(sign * &r_fact, |acc, &i| acc / fact(i))
        })
        .sum()
}

/// Two-sided coefficients `C(p, s)` for the tensor-side generalized brace:
/// the coefficient of `a_1⋯a_p ∇(…) a_{n-s+1}⋯a_n`, up to the factor `f_i`
/// of the `∇` window. They are the Taylor coefficients of
/// `(x - y) / (φ(x) - φ(y))` with `φ` read in the plain convention.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoefficientTable {
    max_total: usize,
    values: Vec<Vec<Scalar>>,
}

impl CoefficientTable {
    pub fn max_total(&self) -> usize {
        self.max_total
    }

    pub fn get(&self, p: usize, s: usize) -> Option<&Scalar> {
        if p + s > self.max_total {
            return None;
        }
        self.values.get(p).and_then(|row| row.get(s))
    }
}

/// `C(p, s)` for `p + s ≤ max_total`, by inverting the divided difference
/// `(φ(x) - φ(y)) / (x - y)` as a bivariate series.
pub fn c_table_from_series(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    max_total: usize,
) -> Result<CoefficientTable> {
    check_inverse_pair(f, g)?;
    if max_total >= f.order() {
        return Err(Error::InsufficientOrder {
            needed: max_total + 1,
            available: f.order(),
        });
    }
    let phi = f.plain_with_constant();
    // D[a][b] = φ_{a+b+1}
    let d = |a: usize, b: usize| &phi[a + b + 1];
    let inv_lead = phi[1].recip();
    let mut e: Vec<Vec<Scalar>> = (0..=max_total)
        .map(|p| vec![Scalar::zero(); max_total - p + 1])
        .collect();
    for total in 0..=max_total {
        for p in 0..=total {
            let s = total - p;
            if total == 0 {
                e[0][0] = inv_lead.clone();
                continue;
            }
            let mut acc = Scalar::zero();
            for a in 0..=p {
                for b in 0..=s {
                    if a + b == 0 {
                        continue;
                    }
                    acc += d(a, b) * &e[p - a][s - b];
                }
            }
            e[p][s] = -acc * &inv_lead;
        }
    }
    Ok(CoefficientTable {
        max_total,
        values: e,
    })
}

/// `[x^p] φ(x)^l` in the plain convention, as a sum over compositions.
fn power_coeff(phi: &[Scalar], p: usize, l: usize) -> Scalar {
    if l == 0 {
        return if p == 0 { Scalar::one() } else { Scalar::zero() };
    }
    compositions(p)
        .into_iter()
        .filter(|parts| parts.len() == l)
        .map(|parts| parts.iter().fold(Scalar::one(), |acc, &i| acc * &phi[i]))
        .sum()
}

/// `C(p, s) = Σ_{l,m} g_{l+m+1} [x^p]φ^l [y^s]φ^m` from the plain coefficients.
pub fn c_table_closed_form(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    p: usize,
    s: usize,
) -> Result<Scalar> {
    check_inverse_pair(f, g)?;
    if p + s >= f.order() {
        return Err(Error::InsufficientOrder {
            needed: p + s + 1,
            available: f.order(),
        });
    }
    Ok(closed_table_entry(f, g, p, s))
}

/// [`c_table_closed_form`] for every `p + s ≤ max_total`, checking the
/// inverse pair once.
pub fn c_table_closed_forms(
    f: &TruncatedSeries,
    g: &TruncatedSeries,
    max_total: usize,
) -> Result<CoefficientTable> {
    check_inverse_pair(f, g)?;
    if max_total >= f.order() {
        return Err(Error::InsufficientOrder {
            needed: max_total + 1,
            available: f.order(),
        });
    }
    let values = (0..=max_total)
        .map(|p| (0..=max_total - p).map(|s| closed_table_entry(f, g, p, s)).collect())
        .collect();
    Ok(CoefficientTable { max_total, values })
}

fn closed_table_entry(f: &TruncatedSeries, g: &TruncatedSeries, p: usize, s: usize) -> Scalar {
    let phi = f.plain_with_constant();
    let psi = g.plain_with_constant();
    let left: Vec<Scalar> = (0..=p).map(|l| power_coeff(&phi, p, l)).collect();
    let right: Vec<Scalar> = (0..=s).map(|m| power_coeff(&phi, s, m)).collect();
    let mut total = Scalar::zero();
    for (l, x) in left.iter().enumerate() {
        for (m, y) in right.iter().enumerate() {
            total += &psi[l + m + 1] * x * y;
        }
    }
    total
}
