//! `cdcst`: build, query, verify and benchmark CDAWG suffix-tree indexes.
//!
//! Exit codes: 0 ok, 1 usage or bad arguments, 2 verification mismatch or
//! probe bound exceeded, 3 IO failure or corrupt index.

mod bench;
mod query;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use cdawg_cst::corpus::{self, DNA};
use cdawg_cst::verify::{self, Coverage, Report};
use cdawg_cst::{Cst, CstOptions, Error, LaKind, Mode, OracleIndex, Text};
use clap::{Parser, Subcommand, ValueEnum};

use query::QueryError;

/// Largest text the naive oracle is run on.
const ORACLE_LIMIT: usize = 10_000;

#[derive(Parser)]
#[command(name = "cdcst", version, about = "Compressed suffix trees over the CDAWG")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    Lite,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::Lite => Mode::Lite,
        }
    }
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Alphabet {
    /// Any byte is a symbol.
    #[default]
    Bytes,
    /// Only `A`, `C`, `G` and `T`.
    Dna,
}

#[derive(clap::Args)]
struct TextArgs {
    #[arg(long, value_enum, default_value_t = Alphabet::Bytes)]
    alphabet: Alphabet,
}

#[derive(Subcommand)]
enum Command {
    /// Build an index from a raw text file.
    Build {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        /// Use the ladder level-ancestor structure instead of binary lifting.
        #[arg(long)]
        ladder: bool,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Answer one query; ranges are written `i:j`, nodes as `root`, a leaf rank, or `lo:hi`.
    Query {
        index: PathBuf,
        op: String,
        args: Vec<String>,
    },
    /// Check an index or a text against the naive oracle.
    Verify {
        /// A raw text, or an index file (recognized by its magic bytes).
        input: Option<PathBuf>,
        /// Verify this many seeded random strings instead of an input file.
        #[arg(long, conflicts_with = "input")]
        random: Option<usize>,
        #[arg(long, default_value_t = 200)]
        max_len: usize,
        #[arg(long, default_value_t = 4)]
        max_sigma: usize,
        /// Mode to build texts in; both when omitted.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
        /// Check every argument instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Sampled queries per operation.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Probe counts per query over doubling prefixes of a text.
    Bench {
        input: PathBuf,
        #[arg(long, default_value_t = 200)]
        queries: usize,
        /// Constant `c` of the `c * log2(n)^2` probe bound.
        #[arg(long, default_value_t = 8)]
        bound: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Full)]
        mode: ModeArg,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[command(flatten)]
        text: TextArgs,
    },
    /// Sizes of an index and its parts.
    Stats { index: PathBuf },
}

/// A failed command: message for stderr and exit code.
struct Failure {
    code: u8,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Failure {
        Failure { code: 1, msg: msg.into() }
    }

    fn io(path: &Path, e: std::io::Error) -> Failure {
        Failure {
            code: 3,
            msg: format!("{}: {e}", path.display()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::Corrupt(_) | Error::Version { .. } => 3,
            _ => 1,
        };
        Failure { code, msg: e.to_string() }
    }
}

impl From<QueryError> for Failure {
    fn from(e: QueryError) -> Failure {
        match e {
            QueryError::Usage(msg) => Failure::usage(msg),
            QueryError::Index(e) => e.into(),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let outcome = match cli.command {
        Command::Build {
            input,
            output,
            mode,
            ladder,
            text,
        } => build(&input, &output, mode.into(), ladder, text.alphabet),
        Command::Query { index, op, args } => run_query(&index, &op, &args),
        Command::Verify {
            input,
            random,
            max_len,
            max_sigma,
            mode,
            exhaustive,
            samples,
            seed,
            text,
        } => {
            let modes = mode.map_or(vec![Mode::Full, Mode::Lite], |m| vec![m.into()]);
            let sampled = Coverage::Sampled { queries: samples, seed };
            match (input, random) {
                (Some(path), None) => verify_path(&path, &modes, text.alphabet, exhaustive, sampled),
                (None, Some(count)) => {
                    let coverage = if exhaustive { Coverage::Exhaustive } else { sampled };
                    verify_random(count, max_len, max_sigma, seed, &modes, text.alphabet, coverage)
                }
                _ => Err(Failure::usage("verify needs an input file or --random N")),
            }
        }
        Command::Bench {
            input,
            queries,
            bound,
            mode,
            seed,
            text,
        } => read_text(&input, text.alphabet).and_then(|raw| bench::run(&raw, mode.into(), queries, bound, seed)),
        Command::Stats { index } => stats(&index),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.msg);
            ExitCode::from(f.code)
        }
    }
}

fn read_text(path: &Path, alphabet: Alphabet) -> Result<Vec<u8>, Failure> {
    let raw = std::fs::read(path).map_err(|e| Failure::io(path, e))?;
    check_alphabet(&raw, alphabet)?;
    Ok(raw)
}

fn check_alphabet(raw: &[u8], alphabet: Alphabet) -> Outcome {
    if let Alphabet::Dna = alphabet {
        if let Some(at) = raw.iter().position(|b| !DNA.contains(b)) {
            return Err(Failure::usage(format!("byte {:#04x} at offset {at} is not one of ACGT", raw[at])));
        }
    }
    Ok(())
}

fn load(path: &Path) -> Result<Cst, Failure> {
    let bytes = std::fs::read(path).map_err(|e| Failure::io(path, e))?;
    Ok(Cst::from_bytes(&bytes)?)
}

/// Number of runs in the BWT.
fn bwt_runs(cst: &Cst) -> Result<usize, Error> {
    if let Some(rl) = cst.cdawg().rlbwt() {
        return Ok(rl.num_runs());
    }
    let n = cst.n();
    let text = cst.extract(1, n)?;
    let sa = cst.sa_range(1, n)?;
    let bwt: Vec<u32> = sa.iter().map(|&p| text[if p == 1 { n - 1 } else { p - 2 }]).collect();
    Ok(1 + bwt.windows(2).filter(|w| w[0] != w[1]).count())
}

fn build(input: &Path, output: &Path, mode: Mode, ladder: bool, alphabet: Alphabet) -> Outcome {
    let raw = read_text(input, alphabet)?;
    let start = Instant::now();
    let text = Text::normalize(&raw)?;
    let level_ancestor = if ladder { LaKind::Ladder } else { LaKind::BinaryLifting };
    let cst = Cst::build_with(&text, CstOptions { mode, level_ancestor })?;
    let elapsed = start.elapsed();
    std::fs::write(output, cst.to_bytes()).map_err(|e| Failure::io(output, e))?;
    eprintln!(
        "n={} sigma={} e_T={} runs={} grammar={} mode={} time={:.3}s",
        cst.n(),
        cst.sigma(),
        cst.cdawg().num_arcs(),
        bwt_runs(&cst)?,
        cst.grammar().grammar_size(),
        mode.name(),
        elapsed.as_secs_f64()
    );
    Ok(())
}

fn run_query(index: &Path, op: &str, args: &[String]) -> Outcome {
    let cst = load(index)?;
    for line in query::run(&cst, op, args)? {
        println!("{line}");
    }
    Ok(())
}

fn stats(index: &Path) -> Outcome {
    let cst = load(index)?;
    let size = std::fs::metadata(index).map_err(|e| Failure::io(index, e))?.len();
    let g = cst.grammar();
    let rows: [(&str, String); 13] = [
        ("n", cst.n().to_string()),
        ("sigma", cst.sigma().to_string()),
        ("mode", cst.mode().name().to_string()),
        ("level ancestor", format!("{:?}", cst.forward_hpd().la_kind()).to_lowercase()),
        ("cdawg nodes", cst.cdawg().num_nodes().to_string()),
        ("e_T", cst.cdawg().num_arcs().to_string()),
        ("bwt runs", bwt_runs(&cst)?.to_string()),
        ("grammar nodes", g.num_nodes().to_string()),
        ("grammar arcs", g.grammar_size().to_string()),
        ("grammar expansion", g.n().to_string()),
        ("hpd nodes forward", cst.forward_hpd().expanded_nodes().to_string()),
        ("hpd nodes reverse", cst.reverse_hpd().expanded_nodes().to_string()),
        ("file bytes", size.to_string()),
    ];
    for (k, v) in rows {
        println!("{k}: {v}");
    }
    Ok(())
}

/// Tallies reports over several indexes and prints the verdict.
#[derive(Default)]
struct Tally {
    report: Report,
    structural: Vec<String>,
}

impl Tally {
    fn check(&mut self, cst: &Cst, oracle: &OracleIndex, coverage: Coverage) {
        self.report.merge(verify::verify(cst, oracle, coverage));
        self.structural.extend(verify::structural(cst, oracle));
    }

    fn finish(self) -> Outcome {
        let bad = self.report.failures + self.structural.len() as u64;
        if bad == 0 {
            println!("OK, 0 mismatches");
            eprintln!("{} checks", self.report.checks);
            return Ok(());
        }
        if let Some(m) = self.report.mismatches.first() {
            println!("{m}");
        }
        if let Some(s) = self.structural.first() {
            println!("structural: {s}");
        }
        Err(Failure {
            code: 2,
            msg: format!("{bad} mismatches in {} checks", self.report.checks),
        })
    }
}

fn oracle_guard(n: usize) -> Outcome {
    if n > ORACLE_LIMIT {
        return Err(Failure::usage(format!("text of length {n} exceeds the oracle limit of {ORACLE_LIMIT}")));
    }
    Ok(())
}

/// Small texts are always checked exhaustively.
fn pick(n: usize, exhaustive: bool, sampled: Coverage) -> Coverage {
    if exhaustive || n <= 64 {
        Coverage::Exhaustive
    } else {
        sampled
    }
}

fn verify_path(path: &Path, modes: &[Mode], alphabet: Alphabet, exhaustive: bool, coverage: Coverage) -> Outcome {
    let bytes = std::fs::read(path).map_err(|e| Failure::io(path, e))?;
    let mut tally = Tally::default();
    if bytes.starts_with(cdawg_cst::index_file::MAGIC) {
        let cst = Cst::from_bytes(&bytes)?;
        oracle_guard(cst.n())?;
        let raw = cst.render(&cst.extract(1, cst.n() - 1)?);
        let oracle = OracleIndex::build_fast(&Text::normalize(&raw)?);
        tally.check(&cst, &oracle, pick(cst.n(), exhaustive, coverage));
        return tally.finish();
    }
    check_alphabet(&bytes, alphabet)?;
    let text = Text::normalize(&bytes)?;
    oracle_guard(text.len())?;
    let oracle = OracleIndex::build_fast(&text);
    for &mode in modes {
        tally.check(&Cst::build(&text, mode)?, &oracle, pick(text.len(), exhaustive, coverage));
    }
    tally.finish()
}

fn verify_random(
    count: usize,
    max_len: usize,
    max_sigma: usize,
    seed: u64,
    modes: &[Mode],
    alphabet: Alphabet,
    coverage: Coverage,
) -> Outcome {
    let letters: &[u8] = match alphabet {
        Alphabet::Dna => DNA,
        Alphabet::Bytes => b"abcdefghijklmnopqrstuvwxyz",
    };
    if max_len == 0 || max_len >= ORACLE_LIMIT {
        return Err(Failure::usage(format!("--max-len must be in 1..{ORACLE_LIMIT}")));
    }
    if max_sigma == 0 || max_sigma > letters.len() {
        return Err(Failure::usage(format!("--max-sigma must be in 1..={}", letters.len())));
    }
    let mut tally = Tally::default();
    for raw in corpus::random_strings(seed, count, max_len, max_sigma, letters) {
        let text = Text::normalize(&raw)?;
        let oracle = OracleIndex::build_fast(&text);
        for &mode in modes {
            tally.check(&Cst::build(&text, mode)?, &oracle, coverage);
        }
    }
    tally.finish()
}
