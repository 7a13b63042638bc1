//! Digit arithmetic: base-`p` expansions, the mod-`p` digit sum `v_p`, xor
//! bit-sums and the degree-`p` xor-shift.
//!
//! Digits are stored little-endian: `digits[k]` is the coefficient of
//! `base^k`, so index `k` is the digit `d_k`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus. Weight indices range over `0..2^p`, so this
/// bounds every table the crate materializes.
pub const MAX_MODULUS: u32 = 24;

/// A modulus `p` with `2 <= p <= MAX_MODULUS`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(p: u32) -> Result<Self> {
        if (2..=MAX_MODULUS).contains(&p) {
            Ok(Modulus(p))
        } else {
            Err(Error::ModulusOutOfRange {
                p: p as u64,
                min: 2,
                max: MAX_MODULUS,
            })
        }
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of weight indices, `2^p`.
    #[inline]
    pub fn index_count(self) -> u32 {
        1 << self.0
    }

    /// Number of indices in the half range, `2^{p-1}`.
    #[inline]
    pub fn half_count(self) -> u32 {
        1 << (self.0 - 1)
    }

    /// Rejects weight indices `i >= 2^p`.
    pub fn check_index(self, i: u32) -> Result<u32> {
        if i < self.index_count() {
            Ok(i)
        } else {
            Err(Error::IndexOutOfRange {
                index: i as u64,
                p: self.0,
            })
        }
    }

    /// `p^exp`, or `None` on overflow.
    pub fn checked_pow(self, exp: u32) -> Option<u64> {
        (self.0 as u64).checked_pow(exp)
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(p: u32) -> Result<Self> {
        Modulus::new(p)
    }
}

impl From<Modulus> for u32 {
    fn from(p: Modulus) -> u32 {
        p.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Canonical little-endian digit expansion of a non-negative integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DigitVector {
    base: u64,
    digits: Vec<u64>,
}

impl DigitVector {
    pub fn base(&self) -> u64 {
        self.base
    }

    /// Little-endian digits. Zero is the single digit `[0]`.
    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Reassembles the integer. Returns `None` if it does not fit in `u64`.
    pub fn value(&self) -> Option<u64> {
        self.digits
            .iter()
            .rev()
            .try_fold(0u64, |acc, &d| acc.checked_mul(self.base)?.checked_add(d))
    }

    pub fn digit_sum(&self) -> u64 {
        self.digits.iter().sum()
    }
}

/// Most-significant digit first, as integers are usually written.
impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.digits.iter().rev().map(|d| d.to_string()).collect();
        if self.base <= 10 {
            write!(f, "{}_{}", parts.concat(), self.base)
        } else {
            write!(f, "({})_{}", parts.join(","), self.base)
        }
    }
}

pub fn base_digits(n: u64, base: u64) -> Result<DigitVector> {
    if base < 2 {
        return Err(Error::InvalidBase(base));
    }
    let mut digits = Vec::new();
    let mut rest = n;
    loop {
        digits.push(rest % base);
        rest /= base;
        if rest == 0 {
            break;
        }
    }
    Ok(DigitVector { base, digits })
}

/// The mod-`p` sum-of-digits function `v_p(n)`.
pub fn digit_sum_mod(n: u64, p: Modulus) -> u32 {
    let p = p.get() as u64;
    let mut rest = n;
    let mut acc = 0u64;
    while rest > 0 {
        acc += rest % p;
        rest /= p;
    }
    (acc % p) as u32
}

/// Bitwise exclusive-or of the binary expansions of `x` and `y`.
#[inline]
pub fn xor_bitsum(x: u64, y: u64) -> u64 {
    x ^ y
}

/// Cyclic left rotation of the low `p` bits of `i` by `r`.
#[inline]
pub(crate) fn rotl_bits(i: u32, r: u32, p: u32) -> u32 {
    let mask = (1u64 << p) - 1;
    let i = i as u64;
    (((i << r) | (i >> (p - r))) & mask) as u32
}

/// The degree-`p` xor-shift `x_r(i) = i XOR rotl_p(i, r)`.
///
/// Bit `k` of the result is `d_k ^ d_{k-r}` for `k >= r` and
/// `d_k ^ d_{k+p-r}` for `k < r`.
pub fn xor_shift(i: u32, r: u32, p: Modulus) -> Result<u32> {
    let i = p.check_index(i)?;
    if r >= p.get() {
        return Err(Error::ShiftOutOfRange { r, p: p.get() });
    }
    Ok(i ^ rotl_bits(i, r, p.get()))
}

/// Number of binary digits of `n`; zero for `n = 0`.
#[inline]
pub fn bit_length(n: u64) -> u32 {
    64 - n.leading_zeros()
}
