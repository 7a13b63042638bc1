//! Exact power sums `Σ n^m` over sets of non-negative integers.
//!
//! Terms and partial sums stay in `u128` while they fit and spill into
//! `BigInt` otherwise, so results are exact for any input size.

use num_bigint::BigInt;
use num_traits::Zero;

/// Running sum that keeps a `u128` fast lane and a `BigInt` overflow lane.
#[derive(Debug, Clone, Default)]
struct SpillSum {
    small: u128,
    big: BigInt,
}

impl SpillSum {
    fn add_u128(&mut self, x: u128) {
        match self.small.checked_add(x) {
            Some(s) => self.small = s,
            None => {
                self.big += BigInt::from(std::mem::take(&mut self.small));
                self.small = x;
            }
        }
    }

    fn add_big(&mut self, x: &BigInt) {
        self.big += x;
    }

    fn total(&self) -> BigInt {
        &self.big + BigInt::from(self.small)
    }
}

/// Accumulates `Σ n^m` for every `m` in `0..=max_m` simultaneously.
#[derive(Debug, Clone)]
pub struct PowerSums {
    sums: Vec<SpillSum>,
}

impl PowerSums {
    pub fn new(max_m: u32) -> Self {
        PowerSums {
            sums: vec![SpillSum::default(); max_m as usize + 1],
        }
    }

    pub fn max_exponent(&self) -> u32 {
        (self.sums.len() - 1) as u32
    }

    pub fn push(&mut self, n: u64) {
        enum Power {
            Small(u128),
            Big(BigInt),
        }
        let mut power = Power::Small(1);
        for slot in self.sums.iter_mut() {
            power = match power {
                Power::Small(pw) => {
                    slot.add_u128(pw);
                    match pw.checked_mul(n as u128) {
                        Some(next) => Power::Small(next),
                        None => Power::Big(BigInt::from(pw) * n),
                    }
                }
                Power::Big(pw) => {
                    slot.add_big(&pw);
                    Power::Big(pw * n)
                }
            };
        }
    }

    /// `Σ n^m` over everything pushed so far.
    pub fn get(&self, m: u32) -> BigInt {
        self.sums[m as usize].total()
    }

    pub fn into_vec(self) -> Vec<BigInt> {
        self.sums.iter().map(SpillSum::total).collect()
    }
}

impl Extend<u64> for PowerSums {
    fn extend<T: IntoIterator<Item = u64>>(&mut self, iter: T) {
        for n in iter {
            self.push(n);
        }
    }
}

/// `[Σ n^0, Σ n^1, ..., Σ n^max_m]` over `values`.
pub fn power_sums<I: IntoIterator<Item = u64>>(values: I, max_m: u32) -> Vec<BigInt> {
    let mut acc = PowerSums::new(max_m);
    acc.extend(values);
    acc.into_vec()
}

/// `Σ_{n<len} n^m` for `m` in `0..=max_m`.
pub fn range_power_sums(len: u64, max_m: u32) -> Vec<BigInt> {
    power_sums(0..len, max_m)
}

/// `n^m` as an exact integer.
pub fn pow_exact(n: u64, m: u32) -> BigInt {
    if m == 0 {
        return BigInt::from(1u8);
    }
    if n.is_zero() {
        return BigInt::zero();
    }
    num_traits::pow(BigInt::from(n), m as usize)
}
