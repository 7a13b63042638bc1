//! Weight sequences `w_i(n) = (-1)^{d_{p-1-v_p(n)}(i)}` and the transforms
//! built on them.
//!
//! For `n < p` the row `(w_0(n), ..., w_{2^p-1}(n))` samples the Rademacher
//! function `φ_n` at the dyadic points `i / 2^p`. The coefficients
//! `B_i = Σ_{n<p} w_i(n) a_n` form the discrete Rademacher transform of the
//! generators of a PTM sequence, and the half range of weights inverts it:
//! `a_n = 2^{1-p} Σ_{i<2^{p-1}} w_i(n) B_i` for every `n`.
//!
//! Walsh products `w̃_i(m)` multiply `w_i(n_j)` over the set bits `n_j` of
//! `m`. Sums over `i` run over the full range `0..2^p`: the half-range sum of
//! `w̃_i(m)` does not vanish at `m = 1`, because `w_i(0) = 1` for every
//! `i < 2^{p-1}`. [`half_range_walsh_sum`] exposes that sum for reporting.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::{digit_sum_mod, Modulus};
use crate::error::{Error, Result};
use crate::ptm::{classic_w, PtmSequence};

#[inline]
fn sign_of_bit(bit: u32) -> i8 {
    1 - 2 * (bit as i8)
}

/// `w_i(n)` for `n` already reduced to a residue `< p`.
#[inline]
pub(crate) fn weight_at_residue(i: u32, residue: u32, p: u32) -> i8 {
    sign_of_bit((i >> (p - 1 - residue)) & 1)
}

/// The weight `w_i(n)` for arbitrary `n >= 0`.
pub fn weight(i: u32, n: u64, p: Modulus) -> Result<i8> {
    let i = p.check_index(i)?;
    Ok(weight_at_residue(i, digit_sum_mod(n, p), p.get()))
}

/// Which indices a weight vector spans.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeightRange {
    /// `0 <= i < 2^{p-1}`
    Half,
    /// `0 <= i < 2^p`
    Full,
}

impl WeightRange {
    pub fn count(self, p: Modulus) -> u32 {
        match self {
            WeightRange::Half => p.half_count(),
            WeightRange::Full => p.index_count(),
        }
    }
}

/// `W_p(n) = (w_0(n), w_1(n), ...)` read across `i`, for `0 <= n < p`.
pub fn weight_vector(n: u32, p: Modulus, range: WeightRange) -> Result<Vec<i8>> {
    if n >= p.get() {
        return Err(Error::ResidueOutOfRange {
            n: n as u64,
            p: p.get(),
        });
    }
    Ok((0..range.count(p))
        .map(|i| weight_at_residue(i, n, p.get()))
        .collect())
}

/// The `2^p x p` matrix of weights `w_i(n)` for `n < p`. Values at other `n`
/// route through `v_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    modulus: Modulus,
    values: Vec<i8>,
}

impl WeightTable {
    pub fn new(p: Modulus) -> Self {
        let width = p.get();
        let values = (0..p.index_count())
            .flat_map(|i| (0..width).map(move |n| weight_at_residue(i, n, width)))
            .collect();
        WeightTable { modulus: p, values }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn rows(&self) -> u32 {
        self.modulus.index_count()
    }

    /// `(w_i(0), ..., w_i(p-1))`.
    pub fn row(&self, i: u32) -> &[i8] {
        let w = self.modulus.get() as usize;
        &self.values[i as usize * w..(i as usize + 1) * w]
    }

    pub fn get(&self, i: u32, n: u64) -> i8 {
        self.row(i)[digit_sum_mod(n, self.modulus) as usize]
    }

    /// `(w_i(0), ..., w_i(len-1))`; the first `p` entries are the stored row.
    pub fn extended_row(&self, i: u32, len: u64) -> Vec<i8> {
        (0..len).map(|n| self.get(i, n)).collect()
    }
}

/// The discrete Rademacher transform `B_0, ..., B_{2^p-1}` of a PTM sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientVector {
    modulus: Modulus,
    coeffs: Vec<BigInt>,
}

impl CoefficientVector {
    /// Wraps raw coefficients. Nothing checks that they came from a
    /// sequence; [`reconstruct`] and [`walsh_project`] detect inconsistent
    /// input through inexact division.
    pub fn from_raw(modulus: Modulus, coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() != modulus.index_count() as usize {
            return Err(Error::GeneratorCount {
                expected: modulus.index_count() as usize,
                got: coeffs.len(),
            });
        }
        Ok(CoefficientVector { modulus, coeffs })
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn get(&self, i: u32) -> &BigInt {
        &self.coeffs[i as usize]
    }

    pub fn as_slice(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `B_0, ..., B_{2^{p-1}-1}`, the coefficients used by the inverse.
    pub fn half(&self) -> &[BigInt] {
        &self.coeffs[..self.modulus.half_count() as usize]
    }

    pub fn is_antisymmetric(&self) -> bool {
        let last = self.coeffs.len() - 1;
        (0..self.coeffs.len()).all(|i| self.coeffs[i] == -&self.coeffs[last - i])
    }
}

pub fn rademacher_coeffs(seq: &PtmSequence) -> CoefficientVector {
    let p = seq.modulus();
    let gens = seq.generators();
    let coeffs = (0..p.index_count())
        .map(|i| {
            gens.iter().enumerate().fold(BigInt::zero(), |acc, (n, a)| {
                if weight_at_residue(i, n as u32, p.get()) > 0 {
                    acc + a
                } else {
                    acc - a
                }
            })
        })
        .collect();
    CoefficientVector { modulus: p, coeffs }
}

fn exact_div(numerator: BigInt, denominator: BigInt) -> Result<BigInt> {
    let (q, r) = numerator.div_rem(&denominator);
    if r.is_zero() {
        Ok(q)
    } else {
        Err(Error::InexactDivision {
            numerator,
            denominator,
        })
    }
}

/// `a_n = 2^{1-p} Σ_{i<2^{p-1}} w_i(n) B_i`.
pub fn reconstruct(coeffs: &CoefficientVector, n: u64) -> Result<BigInt> {
    let p = coeffs.modulus();
    let residue = digit_sum_mod(n, p);
    let total = coeffs
        .half()
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, b)| {
            if weight_at_residue(i as u32, residue, p.get()) > 0 {
                acc + b
            } else {
                acc - b
            }
        });
    exact_div(total, BigInt::from(p.half_count()))
}

/// A Walsh index `m = 2^{n_k} + ... + 2^{n_1}` with `m < 2^p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WalshIndex {
    m: u32,
}

impl WalshIndex {
    pub fn new(m: u32, p: Modulus) -> Result<Self> {
        Ok(WalshIndex {
            m: p.check_index(m)?,
        })
    }

    pub fn get(self) -> u32 {
        self.m
    }

    /// Set-bit positions `n_1 < ... < n_k`.
    pub fn positions(self) -> impl Iterator<Item = u32> {
        (0..32).filter(move |&k| (self.m >> k) & 1 == 1)
    }

    pub fn order(self) -> u32 {
        self.m.count_ones()
    }
}

#[inline]
fn walsh_weight_unchecked(i: u32, m: u32, p: u32) -> i8 {
    let mut sign = 1i8;
    let mut bits = m;
    while bits != 0 {
        let n = bits.trailing_zeros();
        sign *= weight_at_residue(i, n, p);
        bits &= bits - 1;
    }
    sign
}

/// `w̃_i(m) = w_i(n_k) ... w_i(n_1)`; the empty product at `m = 0` is `+1`.
pub fn walsh_weight(i: u32, m: u32, p: Modulus) -> Result<i8> {
    let i = p.check_index(i)?;
    let m = WalshIndex::new(m, p)?;
    Ok(walsh_weight_unchecked(i, m.get(), p.get()))
}

/// `Σ_{i<2^p} w̃_i(m)`: `2^p` at `m = 0` and zero otherwise.
pub fn walsh_sum(m: u32, p: Modulus) -> Result<i64> {
    let m = WalshIndex::new(m, p)?.get();
    Ok((0..p.index_count())
        .map(|i| walsh_weight_unchecked(i, m, p.get()) as i64)
        .sum())
}

/// `Σ_{i<2^{p-1}} w̃_i(m)`, which is `2^{p-1}` rather than zero at `m = 1`.
pub fn half_range_walsh_sum(m: u32, p: Modulus) -> Result<i64> {
    let m = WalshIndex::new(m, p)?.get();
    Ok((0..p.half_count())
        .map(|i| walsh_weight_unchecked(i, m, p.get()) as i64)
        .sum())
}

/// `2^{-p} Σ_{i<2^p} w̃_i(m) B_i`: `a_n` when `m = 2^n`, zero otherwise.
pub fn walsh_project(coeffs: &CoefficientVector, m: u32) -> Result<BigInt> {
    let p = coeffs.modulus();
    let m = WalshIndex::new(m, p)?.get();
    let total = coeffs
        .as_slice()
        .iter()
        .enumerate()
        .fold(BigInt::zero(), |acc, (i, b)| {
            if walsh_weight_unchecked(i as u32, m, p.get()) > 0 {
                acc + b
            } else {
                acc - b
            }
        });
    exact_div(total, BigInt::from(p.index_count()))
}

/// `i / 2^p` as an exact rational.
pub fn dyadic(i: u64, p: u32) -> BigRational {
    BigRational::new(BigInt::from(i), BigInt::one() << p)
}

/// The Rademacher function `φ_n(x) = φ_0(2^n x)`, where `φ_0` is `+1` on
/// `[0, 1/2)`, `-1` on `[1/2, 1)` and 1-periodic. Only dyadic `x` is accepted.
pub fn rademacher_phi(n: u32, x: &BigRational) -> Result<i8> {
    let denom = x.denom();
    let is_power_of_two = denom.is_positive() && (denom & (denom - BigInt::one())).is_zero();
    if !is_power_of_two {
        return Err(Error::NotDyadic(x.to_string()));
    }
    let scaled = x * BigRational::from_integer(BigInt::one() << n);
    let frac = &scaled - scaled.floor();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok(if frac < half { 1 } else { -1 })
}

/// Result of one named property check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyCheck {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

impl PropertyCheck {
    fn new(name: &str, failures: Vec<String>, checked: usize) -> Self {
        let pass = failures.is_empty();
        let detail = if pass {
            format!("{checked} cases hold")
        } else {
            let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
            format!(
                "{} of {checked} cases fail: {}",
                failures.len(),
                shown.join("; ")
            )
        };
        PropertyCheck {
            name: name.to_string(),
            pass,
            detail,
        }
    }
}

/// Property checks for one modulus plus the half-range Walsh sums that do not
/// vanish. The latter are informational and never fail the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsVerification {
    pub p: u32,
    pub checks: Vec<PropertyCheck>,
    /// `(m, Σ_{i<2^{p-1}} w̃_i(m))` for every `m >= 1` where the sum is nonzero.
    pub half_range_nonzero: Vec<(u32, i64)>,
}

impl WeightsVerification {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Runs every weight-level property for `p`, using `samples` for the checks
/// that need a PTM sequence.
pub fn verify_weights(p: Modulus, samples: &[PtmSequence]) -> Result<WeightsVerification> {
    let pv = p.get();
    let full = p.index_count();
    let half = p.half_count();
    let mut checks = Vec::new();

    let mut fails = Vec::new();
    for n in 0..pv {
        for m in 0..pv {
            let dot: i64 = (0..half)
                .map(|i| (weight_at_residue(i, n, pv) * weight_at_residue(i, m, pv)) as i64)
                .sum();
            let expected = if n == m { half as i64 } else { 0 };
            if dot != expected {
                fails.push(format!("W({n})·W({m}) = {dot}"));
            }
        }
    }
    checks.push(PropertyCheck::new(
        "orthogonality",
        fails,
        (pv * pv) as usize,
    ));

    let mut fails = Vec::new();
    for i in 0..full {
        for n in 0..pv {
            if weight_at_residue(i, n, pv) != -weight_at_residue(full - 1 - i, n, pv) {
                fails.push(format!("i = {i}, n = {n}"));
            }
        }
    }
    checks.push(PropertyCheck::new(
        "antisymmetry",
        fails,
        (full * pv) as usize,
    ));

    let mut fails = Vec::new();
    for m in 0..full {
        let s = walsh_sum(m, p)?;
        let expected = if m == 0 { full as i64 } else { 0 };
        if s != expected {
            fails.push(format!("m = {m}: {s}"));
        }
    }
    checks.push(PropertyCheck::new(
        "walsh_sum_full_range",
        fails,
        full as usize,
    ));

    let mut fails = Vec::new();
    for i in 0..full {
        if walsh_weight_unchecked(i, full - 1, pv) != classic_w(i as u64) {
            fails.push(format!("i = {i}"));
        }
    }
    checks.push(PropertyCheck::new("richman_product", fails, full as usize));

    let mut fails = Vec::new();
    for i in 0..full {
        for n in 0..pv {
            if rademacher_phi(n, &dyadic(i as u64, pv))? != weight_at_residue(i, n, pv) {
                fails.push(format!("φ_{n}({i}/2^{pv})"));
            }
        }
    }
    checks.push(PropertyCheck::new(
        "rademacher_bridge",
        fails,
        (full * pv) as usize,
    ));

    let mut round_trip = Vec::new();
    let mut selector = Vec::new();
    let mut antisym = Vec::new();
    let round_trip_len = (pv as u64).pow(3);
    for (k, seq) in samples.iter().enumerate() {
        let b = rademacher_coeffs(seq);
        if !b.is_antisymmetric() || *b.get(0) != seq.generator_sum() {
            antisym.push(format!("sample {k}"));
        }
        for n in 0..round_trip_len {
            if reconstruct(&b, n)? != *seq.term(n) {
                round_trip.push(format!("sample {k}, n = {n}"));
            }
        }
        for m in 0..full {
            let expected = if m.is_power_of_two() {
                seq.generators()[m.trailing_zeros() as usize].clone()
            } else {
                BigInt::zero()
            };
            if walsh_project(&b, m)? != expected {
                selector.push(format!("sample {k}, m = {m}"));
            }
        }
    }
    checks.push(PropertyCheck::new(
        "coefficient_antisymmetry",
        antisym,
        samples.len(),
    ));
    checks.push(PropertyCheck::new(
        "round_trip",
        round_trip,
        samples.len() * round_trip_len as usize,
    ));
    checks.push(PropertyCheck::new(
        "walsh_selector",
        selector,
        samples.len() * full as usize,
    ));

    let mut half_range_nonzero = Vec::new();
    for m in 1..full {
        let s = half_range_walsh_sum(m, p)?;
        if s != 0 {
            half_range_nonzero.push((m, s));
        }
    }

    Ok(WeightsVerification {
        p: pv,
        checks,
        half_range_nonzero,
    })
}
