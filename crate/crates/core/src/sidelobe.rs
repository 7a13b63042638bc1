//! Sidelobe decomposition `2^{p-1} a_n = B_0 + S_p(n)` with
//! `S_p(n) = Σ_{i=1}^{2^{p-1}-1} w_i(n) B_i`, and the moment identity
//! `Σ_{n<L} n^m S_p(n) = N_m(L) B_0` where `N_m(L) = 2^{p-1} P_m - Σ_{n<L} n^m`.

use std::ops::{AddAssign, SubAssign};

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::digits::digit_sum_mod;
use crate::error::{Error, Result};
use crate::powers::PowerSums;
use crate::ptm::{partition_len, PtmSequence, DEFAULT_SIZE_CAP};
use crate::weights::weight_at_residue;

/// `S_p(r)` for every residue `r < p`, streaming over `i` without storing the
/// coefficient vector.
fn half_range_sidelobes<T>(gens: &[T], p: u32) -> Vec<T>
where
    T: Clone + Zero + for<'a> AddAssign<&'a T> + for<'a> SubAssign<&'a T>,
{
    let mut out = vec![T::zero(); p as usize];
    for i in 1..(1u32 << (p - 1)) {
        let mut b = T::zero();
        for (k, a) in gens.iter().enumerate() {
            if weight_at_residue(i, k as u32, p) > 0 {
                b += a;
            } else {
                b -= a;
            }
        }
        for (r, s) in out.iter_mut().enumerate() {
            if weight_at_residue(i, r as u32, p) > 0 {
                *s += &b;
            } else {
                *s -= &b;
            }
        }
    }
    out
}

/// A PTM sequence split into its `B_0` component and sidelobe term.
#[derive(Debug, Clone)]
pub struct SidelobeDecomposition {
    seq: PtmSequence,
    b0: BigInt,
    by_residue: Vec<BigInt>,
}

impl SidelobeDecomposition {
    pub fn new(seq: &PtmSequence) -> Self {
        let p = seq.modulus().get();
        // |Σ ±a_k| <= 24 · 2^63 and the outer sum adds at most 2^23 of those,
        // so i128 is exact whenever every generator fits in i64.
        let small: Option<Vec<i128>> = seq
            .generators()
            .iter()
            .map(|a| a.to_i64().map(i128::from))
            .collect();
        let by_residue = match small {
            Some(gens) => half_range_sidelobes(&gens, p)
                .into_iter()
                .map(BigInt::from)
                .collect(),
            None => half_range_sidelobes(seq.generators(), p),
        };
        SidelobeDecomposition {
            seq: seq.clone(),
            b0: seq.generator_sum(),
            by_residue,
        }
    }

    pub fn sequence(&self) -> &PtmSequence {
        &self.seq
    }

    /// `B_0 = a_0 + ... + a_{p-1}`.
    pub fn b0(&self) -> &BigInt {
        &self.b0
    }

    pub fn term(&self, n: u64) -> &BigInt {
        &self.by_residue[digit_sum_mod(n, self.seq.modulus()) as usize]
    }

    /// `2^{p-1} a_n == B_0 + S_p(n)`.
    pub fn decomposes(&self, n: u64) -> bool {
        let lhs = self.seq.term(n) * BigInt::from(self.seq.modulus().half_count());
        lhs == &self.b0 + self.term(n)
    }
}

pub fn sidelobe_term(seq: &PtmSequence, n: u64) -> BigInt {
    SidelobeDecomposition::new(seq).term(n).clone()
}

/// One row of the moment identity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentRecord {
    pub m: u32,
    #[serde(with = "crate::serde_bigint")]
    pub prouhet: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub n_m: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub lhs: BigInt,
    #[serde(with = "crate::serde_bigint")]
    pub rhs: BigInt,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SidelobeReport {
    pub p: u32,
    pub depth: u32,
    pub len: u64,
    #[serde(with = "crate::serde_bigint")]
    pub b0: BigInt,
    pub records: Vec<MomentRecord>,
}

impl SidelobeReport {
    pub fn pass(&self) -> bool {
        self.records.iter().all(|r| r.equal)
    }
}

pub fn sidelobe_moments(seq: &PtmSequence, depth: u32) -> Result<SidelobeReport> {
    sidelobe_moments_capped(&SidelobeDecomposition::new(seq), depth, DEFAULT_SIZE_CAP)
}

/// Evaluates both sides of the moment identity for `m = 1..=M` by direct
/// summation over `n < L`.
pub fn sidelobe_moments_capped(
    decomposition: &SidelobeDecomposition,
    depth: u32,
    cap: u64,
) -> Result<SidelobeReport> {
    let seq = decomposition.sequence();
    let p = seq.modulus();
    let len = partition_len(p, depth, cap)?;

    let mut lhs = vec![BigInt::zero(); depth as usize + 1];
    let mut all = PowerSums::new(depth);
    let mut first_block = PowerSums::new(depth);
    for n in 0..len {
        all.push(n);
        if digit_sum_mod(n, p) == 0 {
            first_block.push(n);
        }
        let s = decomposition.term(n);
        if s.is_zero() || n == 0 {
            continue;
        }
        let mut power = BigInt::from(1u8);
        for slot in lhs.iter_mut().skip(1) {
            power *= n;
            *slot += &power * s;
        }
    }

    let scale = BigInt::from(p.half_count());
    let records = (1..=depth)
        .map(|m| {
            let prouhet = first_block.get(m);
            let n_m = &scale * &prouhet - all.get(m);
            let rhs = &n_m * decomposition.b0();
            let lhs = lhs[m as usize].clone();
            MomentRecord {
                m,
                equal: lhs == rhs,
                prouhet,
                n_m,
                lhs,
                rhs,
            }
        })
        .collect();

    Ok(SidelobeReport {
        p: p.get(),
        depth,
        len,
        b0: decomposition.b0().clone(),
        records,
    })
}

/// Like [`sidelobe_moments`] but turns an unequal row into an error.
pub fn checked_sidelobe_moments(seq: &PtmSequence, depth: u32) -> Result<SidelobeReport> {
    let report = sidelobe_moments(seq, depth)?;
    match report.records.iter().find(|r| !r.equal) {
        None => Ok(report),
        Some(r) => Err(Error::IdentityViolation(format!(
            "sidelobe moment m = {}: {} != {}",
            r.m, r.lhs, r.rhs
        ))),
    }
}
