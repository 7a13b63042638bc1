//! The exponent function `E_p(i, n)` and the xor-shift recurrence
//! `w_i(pn + r) = w_{x_r(i)}(n) w_i(n)`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::digits::{digit_sum_mod, rotl_bits, xor_shift, Modulus};
use crate::error::{Error, Result};

/// `E_p(i, n)`: the binary digit of `i` at position `p - 1 - v_p(n)`.
pub fn exponent(i: u32, n: u64, p: Modulus) -> Result<u8> {
    let i = p.check_index(i)?;
    Ok(digit_at(i, p.get() - 1 - digit_sum_mod(n, p)))
}

#[inline]
fn digit_at(i: u32, k: u32) -> u8 {
    ((i >> k) & 1) as u8
}

/// Both sides of `E_p(i, pn+r) - E_p(i, n) ≡ E_p(x_r(i), n) (mod 2)`, plus the
/// case formula for `E_p(i, pn+r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftCheck {
    pub i: u32,
    pub n: u64,
    pub r: u32,
    pub p: u32,
    /// `x_r(i)`
    pub shifted: u32,
    /// `v_p(n) + r >= p`
    pub wraps: bool,
    /// `E_p(i, pn+r)` from the digit sum of `pn + r`.
    pub direct: u8,
    /// `E_p(i, pn+r)` from the case formula: digit `p-1-v_p(n)-r` without
    /// wrap, digit `p-1-s` with `s = v_p(n)+r-p` otherwise.
    pub by_cases: u8,
    /// `(E_p(i, pn+r) - E_p(i, n)) mod 2`
    pub lhs: u8,
    /// `E_p(x_r(i), n)`
    pub rhs: u8,
}

impl ShiftCheck {
    pub fn holds(&self) -> bool {
        self.direct == self.by_cases && self.lhs == self.rhs
    }
}

pub fn exponent_shift_check(i: u32, n: u64, r: u32, p: Modulus) -> Result<ShiftCheck> {
    let shifted = xor_shift(i, r, p)?;
    let pv = p.get();
    let next = n
        .checked_mul(pv as u64)
        .and_then(|x| x.checked_add(r as u64))
        .ok_or(Error::Overflow(n))?;

    let v = digit_sum_mod(n, p);
    let wraps = v + r >= pv;
    let by_cases = if wraps {
        let s = v + r - pv;
        digit_at(i, pv - 1 - s)
    } else {
        digit_at(i, pv - 1 - v - r)
    };
    let direct = exponent(i, next, p)?;
    let base = exponent(i, n, p)?;
    let lhs = ((direct as i8 - base as i8).rem_euclid(2)) as u8;
    let rhs = exponent(shifted, n, p)?;

    let check = ShiftCheck {
        i,
        n,
        r,
        p: pv,
        shifted,
        wraps,
        direct,
        by_cases,
        lhs,
        rhs,
    };
    if check.holds() {
        Ok(check)
    } else {
        Err(Error::IdentityViolation(format!(
            "exponent shift failed: {check:?}"
        )))
    }
}

/// Evaluates `w_i(n)` by peeling base-`p` digits of `n` with the recurrence.
///
/// Each step rewrites `w_j(pn' + r)` as `w_{x_r(j)}(n') w_j(n')`. The product
/// is tracked as the set of indices with odd multiplicity (`w_j^2 = 1`, and
/// `w_0 ≡ 1` drops out), and the remaining factors are evaluated at the base
/// case `w_j(0) = (-1)^{d_{p-1}(j)}`.
fn peel_digits(i: u32, n: u64, p: u32, shift: impl Fn(u32, u32) -> u32) -> i8 {
    let mut live: Vec<u32> = if i == 0 { Vec::new() } else { vec![i] };
    let mut scratch = Vec::new();
    let mut rest = n;
    while rest > 0 && !live.is_empty() {
        let r = (rest % p as u64) as u32;
        rest /= p as u64;
        scratch.clear();
        for &j in &live {
            let x = shift(j, r);
            if x != 0 {
                scratch.push(x);
            }
            scratch.push(j);
        }
        scratch.sort_unstable();
        live.clear();
        let mut k = 0;
        while k < scratch.len() {
            if k + 1 < scratch.len() && scratch[k] == scratch[k + 1] {
                k += 2;
            } else {
                live.push(scratch[k]);
                k += 1;
            }
        }
    }
    let negatives = live.iter().filter(|&&j| (j >> (p - 1)) & 1 == 1).count();
    if negatives % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `w_i(n)` computed through the xor-shift recurrence instead of `v_p`.
pub fn weight_recursive(i: u32, n: u64, p: Modulus) -> Result<i8> {
    let i = p.check_index(i)?;
    let pv = p.get();
    Ok(peel_digits(i, n, pv, |j, r| j ^ rotl_bits(j, r, pv)))
}

/// Memoized xor-shifts `x_r(j)` for every `(j, r)`, `2^p · p` entries.
#[derive(Debug, Clone)]
pub struct ShiftTable {
    modulus: Modulus,
    shifts: Vec<u32>,
}

impl ShiftTable {
    pub fn new(p: Modulus) -> Self {
        let pv = p.get();
        let shifts = (0..p.index_count())
            .flat_map(|j| (0..pv).map(move |r| j ^ rotl_bits(j, r, pv)))
            .collect();
        ShiftTable { modulus: p, shifts }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn shift(&self, j: u32, r: u32) -> u32 {
        self.shifts[(j * self.modulus.get() + r) as usize]
    }

    /// Same as [`weight_recursive`] with the table standing in for `x_r`.
    pub fn weight(&self, i: u32, n: u64) -> Result<i8> {
        let i = self.modulus.check_index(i)?;
        Ok(peel_digits(i, n, self.modulus.get(), |j, r| {
            self.shift(j, r)
        }))
    }

    pub fn rules(&self) -> Vec<RecurrenceRule> {
        let pv = self.modulus.get();
        (0..self.modulus.index_count())
            .flat_map(|i| {
                (0..pv).map(move |r| RecurrenceRule {
                    p: pv,
                    i,
                    r,
                    shifted: self.shift(i, r),
                })
            })
            .collect()
    }
}

/// One instance `w_i(pn + r) = w_{x_r(i)}(n) w_i(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecurrenceRule {
    pub p: u32,
    pub i: u32,
    pub r: u32,
    pub shifted: u32,
}

impl fmt::Display for RecurrenceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arg = if self.r == 0 {
            format!("{}n", self.p)
        } else {
            format!("{}n+{}", self.p, self.r)
        };
        write!(
            f,
            "w_{}({}) = w_{}(n)w_{}(n)",
            self.i, arg, self.shifted, self.i
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::weight;

    fn m(p: u32) -> Modulus {
        Modulus::new(p).unwrap()
    }

    #[test]
    fn exponent_examples() {
        for p in 2..=8 {
            let top = m(p).index_count() - 1;
            for n in 0..100 {
                assert_eq!(exponent(0, n, m(p)).unwrap(), 0);
                assert_eq!(exponent(top, n, m(p)).unwrap(), 1);
            }
        }
        assert_eq!(exponent(5, 4, m(3)).unwrap(), 1);
        assert_eq!(weight(5, 4, m(3)).unwrap(), -1);
    }

    #[test]
    fn shift_check_examples() {
        for i in 0..8 {
            let c = exponent_shift_check(i, 11, 0, m(3)).unwrap();
            assert_eq!(c.shifted, 0);
            assert_eq!((c.lhs, c.rhs), (0, 0));
        }
        let c = exponent_shift_check(1, 1, 1, m(3)).unwrap();
        assert_eq!(c.shifted, 3);
        assert!(c.holds());
        assert!(matches!(
            exponent_shift_check(1, 1, 3, m(3)),
            Err(Error::ShiftOutOfRange { .. })
        ));
        assert!(matches!(
            exponent_shift_check(1, u64::MAX, 1, m(3)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn shift_check_exhaustive_small() {
        for p in 2..=6 {
            let mut wrapped = 0;
            let mut plain = 0;
            for i in 0..(1u32 << p) {
                for n in 0..(p as u64).pow(3) {
                    for r in 0..p {
                        let c = exponent_shift_check(i, n, r, m(p)).unwrap();
                        if c.wraps {
                            wrapped += 1;
                        } else {
                            plain += 1;
                        }
                    }
                }
            }
            assert!(wrapped > 0 && plain > 0);
        }
    }

    #[test]
    fn p2_rules_reduce_to_classic_recurrence() {
        let t = ShiftTable::new(m(2));
        assert_eq!(t.shift(1, 0), 0);
        assert_eq!(t.shift(1, 1), 3);
        assert_eq!(
            RecurrenceRule {
                p: 2,
                i: 1,
                r: 1,
                shifted: 3
            }
            .to_string(),
            "w_1(2n+1) = w_3(n)w_1(n)"
        );
        for n in 0..500u64 {
            let w = weight_recursive(1, n, m(2)).unwrap();
            assert_eq!(weight_recursive(1, 2 * n, m(2)).unwrap(), w);
            assert_eq!(weight_recursive(1, 2 * n + 1, m(2)).unwrap(), -w);
        }
    }

    #[test]
    fn p3_rule_table() {
        let t = ShiftTable::new(m(3));
        let expected = [(1, [0, 3, 5]), (2, [0, 6, 3]), (3, [0, 5, 6])];
        for (i, shifts) in expected {
            for (r, s) in shifts.into_iter().enumerate() {
                assert_eq!(t.shift(i, r as u32), s, "x_{r}({i})");
            }
        }
        assert_eq!(
            RecurrenceRule {
                p: 3,
                i: 1,
                r: 1,
                shifted: 3
            }
            .to_string(),
            "w_1(3n+1) = w_3(n)w_1(n)"
        );
        assert_eq!(t.rules().len(), 8 * 3);
    }

    #[test]
    fn recursive_matches_direct_exhaustive() {
        for p in 2..=5 {
            let table = ShiftTable::new(m(p));
            for i in 0..(1u32 << p) {
                assert_eq!(
                    weight_recursive(i, 0, m(p)).unwrap(),
                    weight(i, 0, m(p)).unwrap()
                );
                for n in 0..(p as u64).pow(4) {
                    let direct = weight(i, n, m(p)).unwrap();
                    assert_eq!(
                        weight_recursive(i, n, m(p)).unwrap(),
                        direct,
                        "p={p} i={i} n={n}"
                    );
                    assert_eq!(table.weight(i, n).unwrap(), direct);
                    assert_eq!((-1i8).pow(exponent(i, n, m(p)).unwrap() as u32), direct);
                }
            }
        }
    }

    #[test]
    fn recurrence_at_zero_residue() {
        for p in 2..=6 {
            for i in 0..(1u32 << p) {
                for n in 0..200u64 {
                    assert_eq!(
                        weight(i, p as u64 * n, m(p)).unwrap(),
                        weight(i, n, m(p)).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn recurrence_identity_direct() {
        for p in 2..=6 {
            let md = m(p);
            for i in 0..(1u32 << p) {
                for r in 0..p {
                    let x = xor_shift(i, r, md).unwrap();
                    for n in 0..100u64 {
                        let lhs = weight(i, p as u64 * n + r as u64, md).unwrap();
                        let rhs = weight(x, n, md).unwrap() * weight(i, n, md).unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
