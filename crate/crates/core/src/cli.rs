//! The `ptm` command-line front end.
//!
//! Every subcommand builds a [`CommandOutput`] holding JSON results, a CSV
//! table and a human-readable rendering; `--format` picks one. The process
//! exits with 0 iff every check in the subcommand passed, 1 if a check
//! failed and 2 on invalid input.

use std::fmt::Write as _;
use std::io;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::digits::{digit_sum_mod, Modulus, MAX_MODULUS};
use crate::error::Error as CoreError;
use crate::ptm::{
    classic_prefix, partition_len, ptm_partition_capped, ClassicGenerator, PtmSequence,
    DEFAULT_SIZE_CAP,
};
use crate::recurrence::{exponent_shift_check, ShiftTable};
use crate::sidelobe::{sidelobe_moments_capped, SidelobeDecomposition};
use crate::weights::{
    rademacher_coeffs, reconstruct, verify_weights, walsh_project, weight, WeightTable,
};

/// Largest `p` accepted without `--max-p`.
pub const DEFAULT_CLI_MAX_P: u32 = 16;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] CoreError),
    #[error("cannot write output: {0}")]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Parser)]
#[command(
    name = "ptm",
    version,
    about = "Generalized Prouhet-Thue-Morse sequences, weight transforms and their identities"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// Seed for randomly drawn generators when `--elements` is absent.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Override the cap on materialized lengths (default 10^7).
    #[arg(long = "max-size", global = true, value_name = "N")]
    pub max_size: Option<u64>,
    /// Override the cap on p (default 16, at most 24).
    #[arg(long = "max-p", global = true, value_name = "P")]
    pub max_p: Option<u32>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Emit a prefix of v_p(n), the classic v/w sequences, or a_n.
    Gen(GenArgs),
    /// Emit the PTM p-block partition and its power sums.
    Partition(PartitionArgs),
    /// Weight tables and the discrete Rademacher/Walsh transforms.
    Weights(WeightsArgs),
    /// Emit the xor-shift recurrence table and check it against the definition.
    Recurrence(RecurrenceArgs),
    /// Check the sidelobe moment identity.
    Sidelobe(SidelobeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// v_p(n); the classic bit when p = 2
    V,
    /// classic ±1 sequence (p = 2 only)
    W,
    /// a_n = a_{v_p(n)} for the given elements
    A,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeneratorArg {
    DigitSum,
    Recurrence,
    AppendNegate,
    Morphism,
}

impl From<GeneratorArg> for ClassicGenerator {
    fn from(g: GeneratorArg) -> Self {
        match g {
            GeneratorArg::DigitSum => ClassicGenerator::DigitSum,
            GeneratorArg::Recurrence => ClassicGenerator::Recurrence,
            GeneratorArg::AppendNegate => ClassicGenerator::AppendNegate,
            GeneratorArg::Morphism => ClassicGenerator::Morphism,
        }
    }
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long = "p", default_value_t = 2)]
    pub p: u32,
    #[arg(long)]
    pub length: u64,
    /// Defaults to `a` when elements are given, `v` otherwise.
    #[arg(long, value_enum)]
    pub kind: Option<GenKind>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub elements: Option<Vec<BigInt>>,
    /// Generator for the classic sequence (p = 2).
    #[arg(long, value_enum)]
    pub generator: Option<GeneratorArg>,
    /// Print ±1 values as bits (1 -> 0, -1 -> 1).
    #[arg(long)]
    pub as_bits: bool,
}

#[derive(Debug, Args)]
pub struct PartitionArgs {
    #[arg(long = "p")]
    pub p: u32,
    #[arg(long = "M", alias = "depth")]
    pub depth: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WeightsMode {
    Table,
    Coeffs,
    Reconstruct,
    Project,
    Verify,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(value_enum)]
    pub mode: WeightsMode,
    #[arg(long = "p")]
    pub p: u32,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub elements: Option<Vec<BigInt>>,
    /// Columns for `table` (default p), terms for `reconstruct` (default p^3).
    #[arg(long)]
    pub length: Option<u64>,
    /// Random generator vectors checked by `verify`.
    #[arg(long, default_value_t = 20)]
    pub samples: usize,
    #[arg(long)]
    pub as_bits: bool,
}

#[derive(Debug, Args)]
pub struct RecurrenceArgs {
    #[arg(long = "p")]
    pub p: u32,
    /// Check the recursive evaluation for n below this bound (default min(p^4, 4096)).
    #[arg(long = "check-n")]
    pub check_n: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SidelobeArgs {
    #[arg(long = "p")]
    pub p: u32,
    #[arg(long = "M", alias = "depth")]
    pub depth: u32,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub elements: Option<Vec<BigInt>>,
}

/// Limits and shared options resolved from the global flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub format: Format,
    pub out: Option<PathBuf>,
    pub seed: u64,
    pub max_size: u64,
    pub max_p: u32,
    pub warnings: Vec<String>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let mut warnings = Vec::new();
        let max_size = match cli.max_size {
            Some(n) if n > DEFAULT_SIZE_CAP => {
                warnings.push(format!(
                    "warning: size cap raised to {n} (default {DEFAULT_SIZE_CAP})"
                ));
                n
            }
            Some(n) => n,
            None => DEFAULT_SIZE_CAP,
        };
        let max_p = match cli.max_p {
            Some(p) if p > MAX_MODULUS => {
                return Err(CliError::Usage(format!(
                    "--max-p {p} exceeds the supported maximum {MAX_MODULUS}"
                )))
            }
            Some(p) if p > DEFAULT_CLI_MAX_P => {
                warnings.push(format!(
                    "warning: p cap raised to {p} (default {DEFAULT_CLI_MAX_P})"
                ));
                p
            }
            Some(p) => p,
            None => DEFAULT_CLI_MAX_P,
        };
        Ok(RunConfig {
            format: cli.format,
            out: cli.out.clone(),
            seed: cli.seed,
            max_size,
            max_p,
            warnings,
        })
    }

    fn modulus(&self, p: u32) -> Result<Modulus, CliError> {
        if p > self.max_p {
            return Err(CliError::Usage(format!(
                "p = {p} exceeds the cap {} (raise with --max-p)",
                self.max_p
            )));
        }
        Ok(Modulus::new(p)?)
    }

    fn check_size(&self, size: u64) -> Result<(), CliError> {
        if size > self.max_size {
            return Err(CoreError::SizeCapExceeded {
                size: size as u128,
                cap: self.max_size,
            }
            .into());
        }
        Ok(())
    }

    /// The given elements, or `p` values drawn from `seed` when absent.
    fn sequence(
        &self,
        p: Modulus,
        elements: &Option<Vec<BigInt>>,
    ) -> Result<PtmSequence, CliError> {
        match elements {
            Some(e) => Ok(PtmSequence::new(p, e.clone())?),
            None => Ok(random_sequence(p, &mut self.rng(p))),
        }
    }

    fn rng(&self, p: Modulus) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ ((p.get() as u64) << 32))
    }
}

fn random_sequence(p: Modulus, rng: &mut ChaCha8Rng) -> PtmSequence {
    let gens = (0..p.get())
        .map(|_| BigInt::from(rng.gen_range(-100i64..=100)))
        .collect();
    PtmSequence::new(p, gens).expect("generator count matches p")
}

#[derive(Debug, Clone, Default)]
pub struct CsvTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    fn new<S: ToString>(header: &[S]) -> Self {
        CsvTable {
            header: header.iter().map(ToString::to_string).collect(),
            rows: Vec::new(),
        }
    }

    fn push<S: ToString>(&mut self, row: &[S]) {
        self.rows
            .push(row.iter().map(ToString::to_string).collect());
    }

    pub fn render(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Debug, Clone)]
pub struct CommandOutput {
    pub command: &'static str,
    pub params: Value,
    pub results: Value,
    pub pass: bool,
    pub csv: CsvTable,
    pub table: String,
}

impl CommandOutput {
    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "pass": self.pass,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv.render(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.to_json()).expect("JSON values serialize");
                s.push('\n');
                s
            }
            Format::Table => self.table.clone(),
        }
    }
}

fn join<T: ToString>(values: &[T]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

fn strings(values: &[BigInt]) -> Vec<String> {
    values.iter().map(ToString::to_string).collect()
}

fn sign_text(w: i8, as_bits: bool) -> String {
    if as_bits {
        if w > 0 { "0" } else { "1" }.to_string()
    } else {
        w.to_string()
    }
}

pub fn cmd_gen(cfg: &RunConfig, args: &GenArgs) -> Result<CommandOutput, CliError> {
    let p = cfg.modulus(args.p)?;
    if args.length == 0 {
        return Err(CoreError::EmptyPrefix.into());
    }
    cfg.check_size(args.length)?;
    let kind = args.kind.unwrap_or(if args.elements.is_some() {
        GenKind::A
    } else {
        GenKind::V
    });
    if args.generator.is_some() && p.get() != 2 {
        return Err(CliError::Usage("--generator applies only to p = 2".into()));
    }
    let len = args.length;
    let residues: Vec<u32> = match args.generator {
        Some(g) => classic_prefix(g.into(), len as usize)?
            .into_iter()
            .map(u32::from)
            .collect(),
        None => (0..len).map(|n| digit_sum_mod(n, p)).collect(),
    };
    let values: Vec<String> = match kind {
        GenKind::V => residues.iter().map(ToString::to_string).collect(),
        GenKind::W => {
            if p.get() != 2 {
                return Err(CliError::Usage("--kind w requires p = 2".into()));
            }
            residues
                .iter()
                .map(|&v| sign_text(1 - 2 * v as i8, args.as_bits))
                .collect()
        }
        GenKind::A => {
            let elements = args
                .elements
                .as_ref()
                .ok_or_else(|| CliError::Usage("--kind a requires --elements".into()))?;
            let seq = PtmSequence::new(p, elements.clone())?;
            residues
                .iter()
                .map(|&v| seq.generators()[v as usize].to_string())
                .collect()
        }
    };

    let mut csv = CsvTable::new(&["n", "v_p", "value"]);
    for (n, (v, value)) in residues.iter().zip(&values).enumerate() {
        csv.push(&[n.to_string(), v.to_string(), value.clone()]);
    }
    let kind_name = match kind {
        GenKind::V => "v",
        GenKind::W => "w",
        GenKind::A => "a",
    };
    Ok(CommandOutput {
        command: "gen",
        params: json!({
            "p": p.get(),
            "length": len,
            "kind": kind_name,
            "generator": args.generator.map(|g| ClassicGenerator::from(g).name()),
            "elements": args.elements.as_deref().map(strings),
            "as_bits": args.as_bits,
        }),
        results: json!({ "values": values }),
        pass: true,
        table: format!("{}\n", values.join(",")),
        csv,
    })
}

pub fn cmd_partition(cfg: &RunConfig, args: &PartitionArgs) -> Result<CommandOutput, CliError> {
    let p = cfg.modulus(args.p)?;
    let blocks = ptm_partition_capped(p, args.depth, cfg.max_size)?;
    let sums: Vec<_> = blocks
        .power_sum_table(args.depth)
        .into_iter()
        .skip(1)
        .collect();
    let pass = sums.iter().all(|s| s.passes());

    let mut csv = CsvTable::new(&["n", "v_p", "block"]);
    for n in 0..blocks.len() {
        let v = digit_sum_mod(n, p);
        csv.push(&[n, v as u64, v as u64]);
    }

    let mut table = format!("p = {}, M = {}, L = {}\n", p, args.depth, blocks.len());
    for (i, b) in blocks.blocks().iter().enumerate() {
        let _ = writeln!(table, "S_{i} = {{{}}}", join(b));
    }
    if !sums.is_empty() {
        let _ = writeln!(table, "m\tP_m\tblock sums\tequal");
        for s in &sums {
            let _ = writeln!(
                table,
                "{}\t{}\t{}\t{}",
                s.m,
                s.value,
                join(&s.block_sums),
                if s.blocks_equal { "pass" } else { "FAIL" }
            );
        }
    }

    let sum_json: Vec<Value> = sums
        .iter()
        .map(|s| {
            json!({
                "m": s.m,
                "value": s.value.to_string(),
                "block_sums": strings(&s.block_sums),
                "equal": s.blocks_equal,
            })
        })
        .collect();
    Ok(CommandOutput {
        command: "partition",
        params: json!({ "p": p.get(), "M": args.depth }),
        results: json!({
            "len": blocks.len(),
            "blocks": blocks.blocks(),
            "power_sums": sum_json,
        }),
        pass,
        csv,
        table,
    })
}

pub fn cmd_weights(cfg: &RunConfig, args: &WeightsArgs) -> Result<CommandOutput, CliError> {
    let p = cfg.modulus(args.p)?;
    let pv = p.get();
    let mut params = json!({ "p": pv, "mode": format!("{:?}", args.mode).to_lowercase() });
    match args.mode {
        WeightsMode::Table => {
            let len = args.length.unwrap_or(pv as u64);
            cfg.check_size(len.saturating_mul(p.index_count() as u64))?;
            let table = WeightTable::new(p);
            let mut header = vec!["i".to_string()];
            header.extend((0..len).map(|n| n.to_string()));
            let mut csv = CsvTable::new(&header);
            let mut text = String::new();
            let mut rows = Vec::new();
            for i in 0..table.rows() {
                let row: Vec<String> = table
                    .extended_row(i, len)
                    .into_iter()
                    .map(|w| sign_text(w, args.as_bits))
                    .collect();
                let mut line = vec![i.to_string()];
                line.extend(row.iter().cloned());
                csv.push(&line);
                let head = row.len().min(pv as usize);
                let mut shown = format!("[{}]", row[..head].join(", "));
                if row.len() > head {
                    shown.push_str(", ");
                    shown.push_str(&row[head..].join(", "));
                }
                let _ = writeln!(text, "w_{i}(n) = ({shown})");
                rows.push(row);
            }
            params["length"] = json!(len);
            params["as_bits"] = json!(args.as_bits);
            Ok(CommandOutput {
                command: "weights",
                params,
                results: json!({ "rows": rows }),
                pass: true,
                csv,
                table: text,
            })
        }
        WeightsMode::Coeffs => {
            let seq = cfg.sequence(p, &args.elements)?;
            let coeffs = rademacher_coeffs(&seq);
            let pass = coeffs.is_antisymmetric() && *coeffs.get(0) == seq.generator_sum();
            let mut csv = CsvTable::new(&["i", "B_i"]);
            let mut text = String::new();
            for (i, b) in coeffs.as_slice().iter().enumerate() {
                csv.push(&[i.to_string(), b.to_string()]);
                let _ = writeln!(text, "B_{i} = {b}");
            }
            let _ = writeln!(text, "antisymmetry: {}", pass_word(pass));
            params["elements"] = json!(strings(seq.generators()));
            Ok(CommandOutput {
                command: "weights",
                params,
                results: json!({
                    "coefficients": strings(coeffs.as_slice()),
                    "antisymmetric": pass,
                }),
                pass,
                csv,
                table: text,
            })
        }
        WeightsMode::Reconstruct => {
            let seq = cfg.sequence(p, &args.elements)?;
            let len = args.length.unwrap_or((pv as u64).pow(3));
            cfg.check_size(len)?;
            let coeffs = rademacher_coeffs(&seq);
            let mut csv = CsvTable::new(&["n", "reconstructed", "a_n", "equal"]);
            let mut values = Vec::new();
            let mut pass = true;
            for n in 0..len {
                let got = reconstruct(&coeffs, n)?;
                let expected = seq.term(n);
                let eq = got == *expected;
                pass &= eq;
                csv.push(&[
                    n.to_string(),
                    got.to_string(),
                    expected.to_string(),
                    eq.to_string(),
                ]);
                values.push(got.to_string());
            }
            params["elements"] = json!(strings(seq.generators()));
            params["length"] = json!(len);
            Ok(CommandOutput {
                command: "weights",
                params,
                results: json!({ "values": values, "round_trip": pass }),
                pass,
                csv,
                table: format!("{}\nround trip: {}\n", values.join(","), pass_word(pass)),
            })
        }
        WeightsMode::Project => {
            let seq = cfg.sequence(p, &args.elements)?;
            let coeffs = rademacher_coeffs(&seq);
            let mut csv = CsvTable::new(&["m", "projection", "expected", "equal"]);
            let mut values = Vec::new();
            let mut pass = true;
            for m in 0..p.index_count() {
                let got = walsh_project(&coeffs, m)?;
                let expected = if m.is_power_of_two() {
                    seq.generators()[m.trailing_zeros() as usize].clone()
                } else {
                    BigInt::zero()
                };
                let eq = got == expected;
                pass &= eq;
                csv.push(&[
                    m.to_string(),
                    got.to_string(),
                    expected.to_string(),
                    eq.to_string(),
                ]);
                values.push(got.to_string());
            }
            params["elements"] = json!(strings(seq.generators()));
            Ok(CommandOutput {
                command: "weights",
                params,
                results: json!({ "selector": values, "normalization": "1/2^p" }),
                pass,
                csv,
                table: format!("{}\nselector: {}\n", values.join(","), pass_word(pass)),
            })
        }
        WeightsMode::Verify => {
            let mut rng = cfg.rng(p);
            let samples: Vec<PtmSequence> = (0..args.samples)
                .map(|_| random_sequence(p, &mut rng))
                .collect();
            let report = verify_weights(p, &samples)?;
            let pass = report.pass();
            let half = p.half_count() as i64;
            let note = format!(
                "half-range Walsh sums over i < 2^(p-1) are nonzero at m = {}; at m = 1 the sum is {} = 2^(p-1). \
                 The vanishing-sum property holds over the full range i < 2^p.",
                join(&report.half_range_nonzero.iter().map(|(m, _)| *m).collect::<Vec<_>>()),
                report
                    .half_range_nonzero
                    .iter()
                    .find(|(m, _)| *m == 1)
                    .map(|(_, s)| *s)
                    .unwrap_or(0),
            );
            let mut csv = CsvTable::new(&["property", "pass", "detail"]);
            let mut text = String::new();
            for c in &report.checks {
                csv.push(&[
                    c.name.clone(),
                    c.pass.to_string(),
                    c.detail.replace(',', ";"),
                ]);
                let _ = writeln!(text, "{:<26}{}  {}", c.name, pass_word(c.pass), c.detail);
            }
            let _ = writeln!(text, "note: {note}");
            params["samples"] = json!(args.samples);
            params["seed"] = json!(cfg.seed);
            Ok(CommandOutput {
                command: "weights",
                params,
                results: json!({
                    "checks": report.checks,
                    "half_range_walsh_sum": {
                        "nonzero": report.half_range_nonzero,
                        "expected_at_m1": half,
                        "note": note,
                    },
                }),
                pass,
                csv,
                table: text,
            })
        }
    }
}

pub fn cmd_recurrence(cfg: &RunConfig, args: &RecurrenceArgs) -> Result<CommandOutput, CliError> {
    let p = cfg.modulus(args.p)?;
    let pv = p.get();
    let check_n = args.check_n.unwrap_or_else(|| (pv as u64).pow(4).min(4096));
    cfg.check_size(check_n)?;
    let table = ShiftTable::new(p);
    let rules = table.rules();

    let mut mismatches = Vec::new();
    for i in 0..p.index_count() {
        for n in 0..check_n {
            if table.weight(i, n)? != weight(i, n, p)? {
                mismatches.push(json!({ "i": i, "n": n }));
            }
        }
    }
    let shift_bound = check_n.min((pv as u64).pow(2));
    let mut shift_failures = 0u64;
    for i in 0..p.index_count() {
        for n in 0..shift_bound {
            for r in 0..pv {
                match exponent_shift_check(i, n, r, p) {
                    Ok(_) => {}
                    Err(CoreError::IdentityViolation(_)) => shift_failures += 1,
                    Err(e) => return Err(e.into()),
                }
            }
        }
    }
    let pass = mismatches.is_empty() && shift_failures == 0;

    let mut csv = CsvTable::new(&["i", "r", "x_r"]);
    let mut text = String::new();
    for rule in &rules {
        csv.push(&[rule.i, rule.r, rule.shifted]);
        let _ = writeln!(text, "{rule}");
    }
    let _ = writeln!(
        text,
        "recursive = direct for i < {}, n < {check_n}: {}",
        p.index_count(),
        pass_word(mismatches.is_empty())
    );
    let _ = writeln!(
        text,
        "exponent shift congruence for n < {shift_bound}: {}",
        pass_word(shift_failures == 0)
    );
    Ok(CommandOutput {
        command: "recurrence",
        params: json!({ "p": pv, "check_n": check_n }),
        results: json!({
            "rules": rules,
            "mismatches": mismatches,
            "shift_check_bound": shift_bound,
            "shift_check_failures": shift_failures,
        }),
        pass,
        csv,
        table: text,
    })
}

pub fn cmd_sidelobe(cfg: &RunConfig, args: &SidelobeArgs) -> Result<CommandOutput, CliError> {
    let p = cfg.modulus(args.p)?;
    partition_len(p, args.depth, cfg.max_size)?;
    let seq = cfg.sequence(p, &args.elements)?;
    let report =
        sidelobe_moments_capped(&SidelobeDecomposition::new(&seq), args.depth, cfg.max_size)?;
    let pass = report.pass();

    let mut csv = CsvTable::new(&["m", "P_m", "N_m", "lhs", "rhs", "equal"]);
    let mut text = format!(
        "p = {}, M = {}, L = {}, B_0 = {}\nm\tP_m\tN_m\tlhs\trhs\tequal\n",
        report.p, report.depth, report.len, report.b0
    );
    for r in &report.records {
        csv.push(&[
            r.m.to_string(),
            r.prouhet.to_string(),
            r.n_m.to_string(),
            r.lhs.to_string(),
            r.rhs.to_string(),
            r.equal.to_string(),
        ]);
        let _ = writeln!(
            text,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.m,
            r.prouhet,
            r.n_m,
            r.lhs,
            r.rhs,
            pass_word(r.equal)
        );
    }
    Ok(CommandOutput {
        command: "sidelobe",
        params: json!({ "p": report.p, "M": report.depth, "elements": strings(seq.generators()) }),
        results: serde_json::to_value(&report).expect("report serializes"),
        pass,
        csv,
        table: text,
    })
}

fn pass_word(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "FAIL"
    }
}

pub fn execute(cli: &Cli) -> Result<(RunConfig, CommandOutput), CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let out = match &cli.command {
        Command::Gen(a) => cmd_gen(&cfg, a)?,
        Command::Partition(a) => cmd_partition(&cfg, a)?,
        Command::Weights(a) => cmd_weights(&cfg, a)?,
        Command::Recurrence(a) => cmd_recurrence(&cfg, a)?,
        Command::Sidelobe(a) => cmd_sidelobe(&cfg, a)?,
    };
    Ok((cfg, out))
}

/// Parses `args`, runs the command, and writes output. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok((cfg, out)) => {
            for w in &cfg.warnings {
                eprintln!("{w}");
            }
            let text = out.render(cfg.format);
            let written = match &cfg.out {
                Some(path) => std::fs::write(path, text),
                None => {
                    use std::io::Write;
                    io::stdout().write_all(text.as_bytes())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {}", CliError::Io(e));
                return 2;
            }
            if out.pass {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
