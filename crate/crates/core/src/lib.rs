//! Generalized Prouhet-Thue-Morse sequences and their ±1 weight sequences.
//!
//! A mod-`p` PTM sequence is any sequence satisfying `a_n = a_{v_p(n)}`, where
//! `v_p(n)` is the base-`p` digit sum of `n` reduced mod `p`. Such a sequence
//! decomposes over `2^{p-1}` weight sequences `w_i(n) = (-1)^{d_{p-1-v_p(n)}(i)}`,
//! which are samples of Rademacher functions at dyadic points. This crate
//! provides:
//!
//! - [`digits`]: base-`p` digits, `v_p`, xor bit-sums and the degree-`p` xor-shift.
//! - [`ptm`]: PTM sequences, the classic sequence via four generators, the
//!   p-block partition solving the Prouhet-Tarry-Escott problem, power sums.
//! - [`weights`]: weight tables, the discrete Rademacher transform and its
//!   inverse, Walsh products, the Rademacher-function bridge.
//! - [`recurrence`]: the xor-shift recurrence `w_i(pn+r) = w_{x_r(i)}(n) w_i(n)`.
//! - [`sidelobe`]: the sidelobe decomposition and its moment identity.
//! - [`cli`]: the `ptm` command-line front end.
//!
//! All arithmetic on sequence values is exact.

pub mod cli;
pub mod digits;
mod error;
pub mod powers;
pub mod ptm;
pub mod recurrence;
mod serde_bigint;
pub mod sidelobe;
pub mod weights;

pub use digits::{base_digits, digit_sum_mod, xor_bitsum, xor_shift, DigitVector, Modulus};
pub use error::{Error, Result};
pub use ptm::{
    classic_prefix, classic_v, classic_w, moment_sum, prouhet_sum, ptm_partition, ptm_term,
    ClassicGenerator, PartitionBlocks, ProuhetSum, PtmSequence,
};
pub use recurrence::{exponent, exponent_shift_check, weight_recursive};
pub use sidelobe::{sidelobe_moments, sidelobe_term, SidelobeReport};
pub use weights::{
    rademacher_coeffs, rademacher_phi, reconstruct, walsh_project, walsh_sum, walsh_weight, weight,
    weight_vector, CoefficientVector, WeightRange, WeightTable,
};
