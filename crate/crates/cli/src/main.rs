use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use apnkit::format::{parse_vbf1, ElementFormat};
use apnkit::invariants::{classical_spectrum, distinguish, gamma_rank, InvariantBundle};
use apnkit::search::{search_tr_l, SearchMode, SearchOptions};
use apnkit::{Field, Vbf};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Stdout writers that stay quiet when the reader has gone away
/// (`apnkit … | head`).
macro_rules! out {
    ($($t:tt)*) => {
        $crate::emit(&format!($($t)*))
    };
}

macro_rules! outln {
    ($($t:tt)*) => {
        $crate::emit(&format!("{}\n", format_args!($($t)*)))
    };
}

mod construct;
mod verify;

pub fn emit(text: &str) {
    use std::io::Write;
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Input { path: PathBuf, source: apnkit::Error },
    #[error(transparent)]
    Core(#[from] apnkit::Error),
}

pub type CliResult<T> = Result<T, CliError>;

#[derive(Parser, Debug)]
#[command(name = "apnkit", version, about = "Analyze and construct APN vectorial Boolean functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Field selection shared by subcommands working in GF(2^n).
#[derive(Args, Debug, Clone)]
pub struct FieldArgs {
    /// Extension degree n.
    #[arg(long, default_value_t = 6)]
    pub n: u32,
    /// Defining polynomial as a hex bitmask (default: the preset for n).
    #[arg(long, value_parser = parse_hex_arg)]
    pub modulus: Option<u32>,
}

impl FieldArgs {
    pub fn field(&self) -> CliResult<Field> {
        Ok(match self.modulus {
            Some(m) => Field::new(self.n, m)?,
            None => Field::preset(self.n)?,
        })
    }
}

pub fn parse_hex_arg(s: &str) -> Result<u32, String> {
    let digits = s.strip_prefix("0x").unwrap_or(s);
    u32::from_str_radix(digits, 16).map_err(|e| format!("`{s}`: {e}"))
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementStyle {
    Hex,
    Power,
}

impl From<ElementStyle> for ElementFormat {
    fn from(s: ElementStyle) -> Self {
        match s {
            ElementStyle::Hex => ElementFormat::Hex,
            ElementStyle::Power => ElementFormat::Power,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Exhaustive,
    Random,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutFormat {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Differential, algebraic and Walsh properties of a vbf1 file.
    Analyze {
        path: PathBuf,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Re-run a published result and print a pass/fail table.
    Verify(verify::VerifyArgs),
    /// Build a function by a secondary construction; writes vbf1 and a JSON certificate.
    Construct(construct::ConstructArgs),
    /// Count linear maps L with x^3 + Tr(x)L(x) APN.
    Search {
        #[arg(long, default_value_t = 4)]
        n: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
        /// Maximum number of hits listed.
        #[arg(long, default_value_t = 100)]
        cap: usize,
        #[arg(long, value_enum, default_value_t = OutFormat::Json)]
        out: OutFormat,
        /// e_0 (hex) with Tr(e_0) = 1.
        #[arg(long, value_parser = parse_hex_arg)]
        e0: Option<u32>,
        /// Let L(e_0) vary too.
        #[arg(long)]
        free_e0_image: bool,
        /// Allow exhaustive runs for n ≥ 6.
        #[arg(long)]
        long: bool,
    },
    /// Write the power function x^d on GF(2^n) as vbf1.
    Power {
        #[command(flatten)]
        field: FieldArgs,
        /// Exponent d (2^n - 2 gives the inverse function).
        #[arg(long)]
        d: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Γ-rank of a vbf1 file.
    Rank {
        path: PathBuf,
        /// Required when n + m > 14.
        #[arg(long)]
        long: bool,
    },
    /// Compare invariants of two vbf1 files; never claims equivalence.
    Compare {
        first: PathBuf,
        second: PathBuf,
        /// Include Γ-ranks.
        #[arg(long)]
        gamma_rank: bool,
    },
}

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn read_vbf(path: &Path) -> CliResult<Vbf> {
    parse_vbf1(&read_text(path)?).map_err(|source| CliError::Input {
        path: path.to_owned(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn print_json(value: &impl serde::Serialize) {
    outln!("{}", serde_json::to_string_pretty(value).expect("serializable report"));
}

fn analyze(path: &Path, as_json: bool) -> CliResult<ExitCode> {
    let f = read_vbf(path)?;
    let profile = f.ddt();
    let degree = f.algebraic_degree();
    let spectrum = f.walsh_spectrum();
    let classical = if f.n() == f.m() && f.n() % 2 == 0 {
        Some(spectrum == classical_spectrum(f.n())?)
    } else {
        None
    };
    if as_json {
        print_json(&json!({
            "n": f.n(),
            "m": f.m(),
            "uniformity": profile.uniformity,
            "apn": profile.is_apn(),
            "degree": degree,
            "quadratic": f.is_quadratic(),
            "walsh": spectrum.counts,
            "classical": classical,
        }));
    } else {
        outln!("n = {}, m = {}", f.n(), f.m());
        outln!("δ = {}", profile.uniformity);
        outln!("APN: {}", profile.is_apn());
        outln!("algebraic degree: {degree}");
        outln!("quadratic: {}", f.is_quadratic());
        outln!("Walsh values:");
        for (v, c) in &spectrum.counts {
            outln!("  {v:>6}: {c}");
        }
        match classical {
            Some(true) => outln!("spectrum: classical"),
            Some(false) => outln!("spectrum: non-classical"),
            None => outln!("spectrum: classical form undefined (needs n = m even)"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn search(
    n: u32,
    mode: Mode,
    samples: u64,
    seed: u64,
    workers: usize,
    cap: usize,
    out: OutFormat,
    e0: Option<u32>,
    free_e0_image: bool,
    long: bool,
) -> CliResult<ExitCode> {
    let field = Field::preset(n)?;
    let opts = SearchOptions {
        mode: match mode {
            Mode::Exhaustive => SearchMode::Exhaustive,
            Mode::Random => SearchMode::Random { samples, seed },
        },
        workers,
        cap,
        e0,
        free_e0_image,
        allow_long: long,
    };
    let report = search_tr_l(&field, &Vbf::power(&field, 3), &opts)?;
    match out {
        OutFormat::Json => print_json(&report),
        OutFormat::Csv => out!("{}", report.to_csv()),
    }
    Ok(if report.verification_failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn rank(path: &Path, long: bool) -> CliResult<ExitCode> {
    let f = read_vbf(path)?;
    if f.n() + f.m() > 14 && !long {
        return Err(CliError::Usage(format!(
            "Γ-rank with n + m = {} is a long computation; pass --long",
            f.n() + f.m()
        )));
    }
    let start = Instant::now();
    let r = gamma_rank(&f)?;
    print_json(&json!({
        "n": f.n(),
        "m": f.m(),
        "gamma_rank": r,
        "seconds": start.elapsed().as_secs_f64(),
    }));
    Ok(ExitCode::SUCCESS)
}

fn compare(first: &Path, second: &Path, with_rank: bool) -> CliResult<ExitCode> {
    let (f, g) = (read_vbf(first)?, read_vbf(second)?);
    let (bf, bg) = (
        InvariantBundle::compute(&f, with_rank)?,
        InvariantBundle::compute(&g, with_rank)?,
    );
    print_json(&json!({
        "first": bf,
        "second": bg,
        "distinction": distinguish(&bf, &bg),
    }));
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Analyze { path, json } => analyze(&path, json),
        Command::Verify(args) => verify::run(&args),
        Command::Construct(args) => construct::run(&args),
        Command::Search {
            n,
            mode,
            samples,
            seed,
            workers,
            cap,
            out,
            e0,
            free_e0_image,
            long,
        } => search(n, mode, samples, seed, workers, cap, out, e0, free_e0_image, long),
        Command::Power { field, d, out } => {
            let text = apnkit::format::write_vbf1(&Vbf::power(&field.field()?, d));
            match out {
                Some(p) => write_text(&p, &text)?,
                None => out!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rank { path, long } => rank(&path, long),
        Command::Compare {
            first,
            second,
            gamma_rank,
        } => compare(&first, &second, gamma_rank),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
