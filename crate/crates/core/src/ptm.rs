//! Mod-`p` Prouhet-Thue-Morse sequences, the classic binary sequence, and the
//! PTM p-block partition of `{0, ..., p^{M+1} - 1}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::digits::{digit_sum_mod, Modulus};
use crate::error::{Error, Result};
use crate::powers::{pow_exact, PowerSums};

/// Default cap on `L = p^{M+1}` for anything that materializes `0..L`.
pub const DEFAULT_SIZE_CAP: u64 = 10_000_000;

/// A mod-`p` PTM sequence: `a_n = a_{v_p(n)}` for the `p` generators
/// `a_0, ..., a_{p-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PtmSequence {
    modulus: Modulus,
    generators: Vec<BigInt>,
}

impl PtmSequence {
    pub fn new(modulus: Modulus, generators: Vec<BigInt>) -> Result<Self> {
        if generators.len() != modulus.get() as usize {
            return Err(Error::GeneratorCount {
                expected: modulus.get() as usize,
                got: generators.len(),
            });
        }
        Ok(PtmSequence {
            modulus,
            generators,
        })
    }

    /// Builds a sequence from machine integers; `p` is the number of generators.
    pub fn from_i64s(generators: &[i64]) -> Result<Self> {
        let modulus = Modulus::new(generators.len().try_into().unwrap_or(u32::MAX))?;
        Self::new(
            modulus,
            generators.iter().map(|&a| BigInt::from(a)).collect(),
        )
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn generators(&self) -> &[BigInt] {
        &self.generators
    }

    /// `a_0 + a_1 + ... + a_{p-1}`.
    pub fn generator_sum(&self) -> BigInt {
        self.generators.iter().sum()
    }

    pub fn term(&self, n: u64) -> &BigInt {
        &self.generators[digit_sum_mod(n, self.modulus) as usize]
    }
}

pub fn ptm_term(seq: &PtmSequence, n: u64) -> BigInt {
    seq.term(n).clone()
}

/// The classic PTM bit `v(n)`: parity of the binary digit sum.
#[inline]
pub fn classic_v(n: u64) -> u8 {
    (n.count_ones() & 1) as u8
}

/// The classic ±1 sequence `w(n) = (-1)^{v(n)}`.
#[inline]
pub fn classic_w(n: u64) -> i8 {
    1 - 2 * classic_v(n) as i8
}

/// Ways of producing the classic sequence `v(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClassicGenerator {
    /// Parity of the binary digit sum.
    DigitSum,
    /// `v(0) = 0`, `v(2n) = v(n)`, `v(2n+1) = 1 - v(n)`.
    Recurrence,
    /// `0 -> 01 -> 0110 -> ...`: append the complement of the prefix.
    AppendNegate,
    /// Iterate the substitution `0 -> 01`, `1 -> 10` from `0`.
    Morphism,
}

impl ClassicGenerator {
    pub const ALL: [ClassicGenerator; 4] = [
        ClassicGenerator::DigitSum,
        ClassicGenerator::Recurrence,
        ClassicGenerator::AppendNegate,
        ClassicGenerator::Morphism,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassicGenerator::DigitSum => "digit_sum",
            ClassicGenerator::Recurrence => "recurrence",
            ClassicGenerator::AppendNegate => "append_negate",
            ClassicGenerator::Morphism => "morphism",
        }
    }
}

impl fmt::Display for ClassicGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassicGenerator {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        ClassicGenerator::ALL
            .into_iter()
            .find(|g| g.name() == s || g.name().replace('_', "-") == s)
            .ok_or_else(|| format!("unknown generator `{s}`"))
    }
}

/// First `length` terms of `v(n)` produced by `generator`.
pub fn classic_prefix(generator: ClassicGenerator, length: usize) -> Result<Vec<u8>> {
    if length == 0 {
        return Err(Error::EmptyPrefix);
    }
    let mut out = match generator {
        ClassicGenerator::DigitSum => (0..length as u64)
            .map(|n| digit_sum_mod(n, Modulus::new(2).expect("2 is a valid modulus")) as u8)
            .collect(),
        ClassicGenerator::Recurrence => {
            let mut v = vec![0u8; length];
            for n in 1..length {
                v[n] = if n % 2 == 0 { v[n / 2] } else { 1 - v[n / 2] };
            }
            v
        }
        ClassicGenerator::AppendNegate => {
            let mut v = vec![0u8];
            while v.len() < length {
                let complement: Vec<u8> = v.iter().map(|&b| 1 - b).collect();
                v.extend(complement);
            }
            v
        }
        ClassicGenerator::Morphism => {
            let mut word = vec![0u8];
            while word.len() < length {
                word = word
                    .iter()
                    .flat_map(|&b| if b == 0 { [0, 1] } else { [1, 0] })
                    .collect();
            }
            word
        }
    };
    out.truncate(length);
    Ok(out)
}

/// `L = p^{M+1}`, checked against `cap`.
pub fn partition_len(p: Modulus, depth: u32, cap: u64) -> Result<u64> {
    let exp = depth.checked_add(1).ok_or(Error::Overflow(depth as u64))?;
    let len = (p.get() as u128).checked_pow(exp).unwrap_or(u128::MAX);
    if len > cap as u128 {
        return Err(Error::SizeCapExceeded { size: len, cap });
    }
    Ok(len as u64)
}

/// The PTM p-block partition `S_0, ..., S_{p-1}` of `{0, ..., L-1}`, with
/// `n ∈ S_{v_p(n)}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionBlocks {
    modulus: Modulus,
    depth: u32,
    len: u64,
    blocks: Vec<Vec<u64>>,
}

impl PartitionBlocks {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// The depth `M`; power sums agree across blocks for `1 <= m <= M`.
    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// `L = p^{M+1}`.
    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn blocks(&self) -> &[Vec<u64>] {
        &self.blocks
    }

    pub fn block(&self, index: usize) -> &[u64] {
        &self.blocks[index]
    }

    /// Block containing `n`, or `None` if `n >= L`.
    pub fn block_of(&self, n: u64) -> Option<u32> {
        (n < self.len).then(|| digit_sum_mod(n, self.modulus))
    }

    /// Prouhet sums for every `m` in `0..=max_m`, computed in one pass.
    pub fn power_sum_table(&self, max_m: u32) -> Vec<ProuhetSum> {
        let per_block: Vec<Vec<BigInt>> = self
            .blocks
            .iter()
            .map(|b| {
                let mut acc = PowerSums::new(max_m);
                acc.extend(b.iter().copied());
                acc.into_vec()
            })
            .collect();
        (0..=max_m)
            .map(|m| {
                let block_sums: Vec<BigInt> =
                    per_block.iter().map(|s| s[m as usize].clone()).collect();
                ProuhetSum::from_block_sums(m, self.depth, block_sums)
            })
            .collect()
    }
}

/// Membership predicate for the partition of `0..L` without materializing it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PartitionShape {
    pub modulus: Modulus,
    pub depth: u32,
    pub len: u64,
}

impl PartitionShape {
    /// Shape of `0..p^{M+1}`; only overflow of `u64` is rejected.
    pub fn new(modulus: Modulus, depth: u32) -> Result<Self> {
        let len = partition_len(modulus, depth, u64::MAX)?;
        Ok(PartitionShape {
            modulus,
            depth,
            len,
        })
    }

    pub fn block_of(&self, n: u64) -> Option<u32> {
        (n < self.len).then(|| digit_sum_mod(n, self.modulus))
    }

    pub fn materialize(&self, cap: u64) -> Result<PartitionBlocks> {
        partition_len(self.modulus, self.depth, cap)?;
        let mut blocks = vec![
            Vec::with_capacity((self.len / self.modulus.get() as u64) as usize);
            self.modulus.get() as usize
        ];
        for n in 0..self.len {
            blocks[digit_sum_mod(n, self.modulus) as usize].push(n);
        }
        Ok(PartitionBlocks {
            modulus: self.modulus,
            depth: self.depth,
            len: self.len,
            blocks,
        })
    }
}

pub fn ptm_partition(p: Modulus, depth: u32) -> Result<PartitionBlocks> {
    ptm_partition_capped(p, depth, DEFAULT_SIZE_CAP)
}

pub fn ptm_partition_capped(p: Modulus, depth: u32, cap: u64) -> Result<PartitionBlocks> {
    partition_len(p, depth, cap)?;
    PartitionShape::new(p, depth)?.materialize(cap)
}

/// The `m`-th Prouhet sum `P_m = Σ_{n ∈ S_0} n^m`, together with the power sums
/// of every block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProuhetSum {
    pub m: u32,
    pub value: BigInt,
    pub block_sums: Vec<BigInt>,
    /// All blocks have the same `m`-th power sum.
    pub blocks_equal: bool,
    /// `1 <= m <= M`, where equality across blocks is a theorem. Outside this
    /// range `blocks_equal` is only an observation.
    pub guaranteed: bool,
}

impl ProuhetSum {
    fn from_block_sums(m: u32, depth: u32, block_sums: Vec<BigInt>) -> Self {
        let value = block_sums[0].clone();
        let blocks_equal = block_sums.iter().all(|s| *s == value);
        ProuhetSum {
            m,
            value,
            block_sums,
            blocks_equal,
            guaranteed: m <= depth,
        }
    }

    /// False only when equality is guaranteed but does not hold.
    pub fn passes(&self) -> bool {
        !self.guaranteed || self.blocks_equal
    }
}

pub fn prouhet_sum(blocks: &PartitionBlocks, m: u32) -> ProuhetSum {
    let block_sums = blocks
        .blocks
        .iter()
        .map(|b| b.iter().map(|&n| pow_exact(n, m)).sum())
        .collect();
    ProuhetSum::from_block_sums(m, blocks.depth, block_sums)
}

/// `Σ_{n<L} n^m a_n` for `L = p^{M+1}`, checked against `P_m (a_0 + ... + a_{p-1})`.
pub fn moment_sum(seq: &PtmSequence, depth: u32, m: u32) -> Result<BigInt> {
    moment_sum_capped(seq, depth, m, DEFAULT_SIZE_CAP)
}

pub fn moment_sum_capped(seq: &PtmSequence, depth: u32, m: u32, cap: u64) -> Result<BigInt> {
    if m > depth {
        return Err(Error::ExponentAboveDepth { m, depth });
    }
    let p = seq.modulus();
    let len = partition_len(p, depth, cap)?;
    let mut direct = BigInt::zero();
    let mut prouhet = BigInt::zero();
    for n in 0..len {
        let power = pow_exact(n, m);
        if digit_sum_mod(n, p) == 0 {
            prouhet += &power;
        }
        direct += power * seq.term(n);
    }
    let expected = &prouhet * seq.generator_sum();
    if direct != expected {
        return Err(Error::IdentityViolation(format!(
            "moment sum {direct} != P_{m} * Σa = {expected} (p = {p}, M = {depth})"
        )));
    }
    Ok(direct)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(p: u32) -> Modulus {
        Modulus::new(p).unwrap()
    }

    /// Base-p digit sum by repeated division, kept separate from `digit_sum_mod`.
    fn digit_sum_oracle(mut n: u64, p: u64) -> u64 {
        let mut s = 0;
        while n > 0 {
            s += n % p;
            n /= p;
        }
        s % p
    }

    #[test]
    fn classic_sequence_examples() {
        let v: Vec<u8> = (0..8).map(classic_v).collect();
        assert_eq!(v, vec![0, 1, 1, 0, 1, 0, 0, 1]);
        let w: Vec<i8> = (0..8).map(classic_w).collect();
        assert_eq!(w, vec![1, -1, -1, 1, -1, 1, 1, -1]);
        for k in 0..64 {
            assert_eq!(classic_v(1 << k), 1);
        }
        let prefix = classic_prefix(ClassicGenerator::AppendNegate, 16).unwrap();
        for (n, &bit) in prefix.iter().enumerate() {
            assert_eq!(classic_w(n as u64), 1 - 2 * bit as i8);
            assert_eq!(classic_w(2 * n as u64), classic_w(n as u64));
            assert_eq!(classic_w(2 * n as u64 + 1), -classic_w(n as u64));
        }
    }

    #[test]
    fn generic_term_examples() {
        let a = PtmSequence::from_i64s(&[10, 20]).unwrap();
        let got: Vec<i64> = (0..8)
            .map(|n| ptm_term(&a, n).try_into().unwrap())
            .collect();
        assert_eq!(got, vec![10, 20, 20, 10, 20, 10, 10, 20]);
        let b = PtmSequence::from_i64s(&[0, 1, 2]).unwrap();
        assert_eq!(ptm_term(&b, 5), BigInt::from(0));
        for n in 0..3 {
            assert_eq!(ptm_term(&b, n), BigInt::from(n));
        }
    }

    #[test]
    fn generator_count_is_checked() {
        assert_eq!(
            PtmSequence::new(m(3), vec![BigInt::from(1); 2]),
            Err(Error::GeneratorCount {
                expected: 3,
                got: 2
            })
        );
        assert!(PtmSequence::from_i64s(&[1]).is_err());
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(
            classic_prefix(ClassicGenerator::AppendNegate, 8).unwrap(),
            vec![0, 1, 1, 0, 1, 0, 0, 1]
        );
        assert_eq!(
            classic_prefix(ClassicGenerator::Morphism, 2).unwrap(),
            vec![0, 1]
        );
        assert_eq!(
            classic_prefix(ClassicGenerator::Recurrence, 1024).unwrap(),
            classic_prefix(ClassicGenerator::DigitSum, 1024).unwrap()
        );
        for g in ClassicGenerator::ALL {
            assert_eq!(classic_prefix(g, 0), Err(Error::EmptyPrefix));
            assert_eq!(classic_prefix(g, 1).unwrap(), vec![0]);
            assert_eq!(g.name().parse::<ClassicGenerator>().unwrap(), g);
        }
    }

    #[test]
    fn partition_example_p2_m3() {
        let blocks = ptm_partition(m(2), 3).unwrap();
        assert_eq!(blocks.len(), 16);
        assert_eq!(blocks.block(0), &[0, 3, 5, 6, 9, 10, 12, 15]);
        assert_eq!(blocks.block(1), &[1, 2, 4, 7, 8, 11, 13, 14]);
        let expected = [60, 620, 7200];
        for (k, &e) in expected.iter().enumerate() {
            let s = prouhet_sum(&blocks, k as u32 + 1);
            assert_eq!(s.value, BigInt::from(e));
            assert!(s.blocks_equal && s.guaranteed);
        }
        let s4 = prouhet_sum(&blocks, 4);
        assert!(!s4.guaranteed);
        assert!(!s4.blocks_equal);
        assert!(s4.passes());
    }

    #[test]
    fn depth_zero_partition_is_singletons() {
        for p in 2..=9 {
            let blocks = ptm_partition(m(p), 0).unwrap();
            for i in 0..p {
                assert_eq!(blocks.block(i as usize), &[i as u64]);
            }
        }
    }

    #[test]
    fn partition_p3_m1_by_oracle() {
        let blocks = ptm_partition(m(3), 1).unwrap();
        for i in 0..3u64 {
            let expected: Vec<u64> = (0..9).filter(|&n| digit_sum_oracle(n, 3) == i).collect();
            assert_eq!(blocks.block(i as usize), expected.as_slice());
        }
        assert_eq!(blocks.block(0), &[0, 5, 7]);
        let s = prouhet_sum(&blocks, 1);
        assert_eq!(s.value, BigInt::from(12));
        assert!(s.blocks_equal);
        let zeroth = prouhet_sum(&blocks, 0);
        assert_eq!(zeroth.value, BigInt::from(3));
    }

    #[test]
    fn partition_cap_is_enforced() {
        assert!(matches!(
            ptm_partition_capped(m(2), 10, 1000),
            Err(Error::SizeCapExceeded {
                size: 2048,
                cap: 1000
            })
        ));
        assert!(matches!(
            ptm_partition(m(24), 100),
            Err(Error::SizeCapExceeded { .. })
        ));
        let shape = PartitionShape::new(m(2), 40).unwrap();
        assert_eq!(shape.block_of(3), Some(0));
        assert_eq!(shape.block_of(1 << 41), None);
    }

    #[test]
    fn power_sum_table_matches_single_sums() {
        let blocks = ptm_partition(m(3), 2).unwrap();
        let table = blocks.power_sum_table(4);
        for row in &table {
            assert_eq!(*row, prouhet_sum(&blocks, row.m));
        }
        assert!(table.iter().all(ProuhetSum::passes));
    }

    #[test]
    fn moment_sum_examples() {
        let a = PtmSequence::from_i64s(&[1, -1]).unwrap();
        assert_eq!(moment_sum(&a, 3, 1).unwrap(), BigInt::from(0));

        let b = PtmSequence::from_i64s(&[0, 1, 2]).unwrap();
        let direct: i64 = (0..9u64)
            .map(|n| n as i64 * digit_sum_oracle(n, 3) as i64)
            .sum();
        assert_eq!(moment_sum(&b, 1, 1).unwrap(), BigInt::from(direct));
        assert_eq!(BigInt::from(direct), BigInt::from(12 * 3));

        let c = PtmSequence::from_i64s(&[4, -7, 9, 2]).unwrap();
        assert_eq!(moment_sum(&c, 2, 0).unwrap(), BigInt::from(16 * 8));

        assert_eq!(
            moment_sum(&a, 2, 3),
            Err(Error::ExponentAboveDepth { m: 3, depth: 2 })
        );
    }
}
