use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use qsl_shor::engine::{Executor, Histogram, SampleOptions};
use qsl_shor::oracle::{ideal_distribution, sso, BootstrapOptions, SsoResult};
use qsl_shor::selftest;
use qsl_shor::shor::{run_subroutine, shor_driver, DriverConfig, ShorParams, MODULUS};

const EXIT_SELFTEST: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INPUT: u8 = 3;
const EXIT_EXHAUSTED: u8 = 4;

/// Shor's algorithm for N = 15 on two-bit-per-qubit QSL simulation, with an
/// exact state-vector reference.
#[derive(Parser, Debug)]
#[command(name = "qsl-shor", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Sample the order-finding subroutine for one base and write the histogram.
    Run {
        #[arg(short = 'a', value_name = "A")]
        a: u64,
        #[command(flatten)]
        sampling: Sampling,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Square statistical overlap of a histogram file, or of fresh runs for all bases.
    Sso {
        /// Histogram file (JSON or CSV).
        #[arg(required_unless_present = "all", conflicts_with = "all")]
        file: Option<PathBuf>,
        /// Sample every valid base and print the full table.
        #[arg(long)]
        all: bool,
        #[command(flatten)]
        sampling: Sampling,
        #[arg(long, default_value_t = 200)]
        replicates: usize,
    },
    /// Exact outcome distribution from the state-vector reference.
    Oracle {
        /// Base; all valid bases when omitted.
        #[arg(short = 'a', value_name = "A")]
        a: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Factor N end to end.
    Factor {
        #[arg(short = 'N', value_name = "N", default_value_t = MODULUS)]
        modulus: u64,
        #[arg(long)]
        seed: Option<u64>,
        /// Budget of subroutine invocations.
        #[arg(long, default_value_t = DriverConfig::DEFAULT_MAX_RETRIES)]
        max_retries: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exhaustive gate-table, multiplier and oracle checks.
    Selftest,
}

#[derive(clap::Args, Debug)]
struct Sampling {
    #[arg(long, default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    /// Defaults to a random seed, which is always echoed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[arg(long, value_enum, default_value_t = ExecutorArg::BitSliced)]
    executor: ExecutorArg,
}

impl Sampling {
    fn options(&self, seed: u64) -> SampleOptions {
        let mut opts = SampleOptions::new(self.shots, seed).executor(match self.executor {
            ExecutorArg::Scalar => Executor::Scalar,
            ExecutorArg::BitSliced => Executor::BitSliced,
        });
        if let Some(t) = self.threads {
            opts = opts.threads(t as usize);
        }
        opts
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExecutorArg {
    Scalar,
    BitSliced,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl ToString) -> Failure {
    Failure {
        code,
        message: message.to_string(),
    }
}

type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Run {
            a,
            sampling,
            out,
            format,
        } => cmd_run(a, &sampling, out.as_deref(), format),
        Command::Sso {
            file,
            all,
            sampling,
            replicates,
        } => match file {
            Some(path) if !all => cmd_sso_file(&path, replicates),
            _ => cmd_sso_all(&sampling, replicates),
        },
        Command::Oracle { a, out } => cmd_oracle(a, out.as_deref()),
        Command::Factor {
            modulus,
            seed,
            max_retries,
            out,
        } => cmd_factor(modulus, seed, max_retries, out.as_deref()),
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn effective_seed(seed: Option<u64>) -> u64 {
    let seed = seed.unwrap_or_else(rand::random);
    eprintln!("seed: {seed}");
    seed
}

fn params(a: u64) -> Result<ShorParams, Failure> {
    ShorParams::new(a).map_err(|e| fail(EXIT_USAGE, e))
}

fn emit(out: Option<&Path>, data: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, data)
            .map_err(|e| fail(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(data.as_bytes())
            .map_err(|e| fail(EXIT_USAGE, e)),
    }
}

fn score(hist: &Histogram, replicates: usize, seed: u64) -> Result<SsoResult, Failure> {
    let base = hist
        .base()
        .ok_or_else(|| fail(EXIT_INPUT, "histogram does not record the base a"))?;
    if hist.modulus().is_some_and(|n| n != MODULUS) {
        return Err(fail(EXIT_INPUT, format!("histogram is for N = {}", hist.modulus().unwrap())));
    }
    let p = ShorParams::new(base).map_err(|e| fail(EXIT_INPUT, e))?;
    let ideal = ideal_distribution(&p).map_err(|e| fail(EXIT_INPUT, e))?;
    sso(hist, &ideal, &BootstrapOptions { replicates, seed }).map_err(|e| fail(EXIT_INPUT, e))
}

fn sso_line(a: u64, r: &SsoResult) -> String {
    format!("a={a:<2} SSO = {:.6} ± {:.6}  ({} shots)", r.sso, r.stderr, r.shots)
}

fn cmd_run(a: u64, sampling: &Sampling, out: Option<&Path>, format: Format) -> CmdResult {
    let p = params(a)?;
    let seed = effective_seed(sampling.seed);
    let hist = run_subroutine(&p, &sampling.options(seed)).map_err(|e| fail(EXIT_USAGE, e))?;
    let data = match format {
        Format::Json => hist.to_json(),
        Format::Csv => hist.to_csv(),
    };
    emit(out, &data)?;
    let r = score(&hist, BootstrapOptions::default().replicates, seed)?;
    eprintln!("{}", sso_line(a, &r));
    Ok(ExitCode::SUCCESS)
}

fn read_histogram(path: &Path) -> Result<Histogram, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let parsed = if text.trim_start().starts_with('{') {
        Histogram::from_json(&text)
    } else {
        Histogram::read_csv(BufReader::new(text.as_bytes()))
    };
    parsed.map_err(|e| fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn cmd_sso_file(path: &Path, replicates: usize) -> CmdResult {
    let hist = read_histogram(path)?;
    if hist.shots() == 0 {
        return Err(fail(EXIT_INPUT, format!("{}: histogram has no counts", path.display())));
    }
    let r = score(&hist, replicates, hist.seed().unwrap_or(0))?;
    println!("{}", sso_line(hist.base().unwrap_or_default(), &r));
    Ok(ExitCode::SUCCESS)
}

fn cmd_sso_all(sampling: &Sampling, replicates: usize) -> CmdResult {
    let seed = effective_seed(sampling.seed);
    for p in ShorParams::all() {
        let hist = run_subroutine(&p, &sampling.options(seed)).map_err(|e| fail(EXIT_USAGE, e))?;
        let r = score(&hist, replicates, seed)?;
        println!("{}", sso_line(p.base(), &r));
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_oracle(a: Option<u64>, out: Option<&Path>) -> CmdResult {
    let bases = match a {
        Some(a) => vec![params(a)?],
        None => ShorParams::all().collect(),
    };
    let mut docs = Vec::new();
    for p in &bases {
        let d = ideal_distribution(p).map_err(|e| fail(EXIT_USAGE, e))?;
        docs.push(d.to_json());
    }
    let data = if docs.len() == 1 {
        docs.remove(0)
    } else {
        let values: Vec<serde_json::Value> = docs
            .iter()
            .map(|d| serde_json::from_str(d).expect("distribution json"))
            .collect();
        let mut s = serde_json::to_string_pretty(&values).expect("json");
        s.push('\n');
        s
    };
    emit(out, &data)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_factor(modulus: u64, seed: Option<u64>, max_retries: u32, out: Option<&Path>) -> CmdResult {
    let seed = effective_seed(seed);
    let config = DriverConfig {
        modulus,
        seed,
        max_retries,
    };
    let report = shor_driver(&config).map_err(|e| fail(EXIT_USAGE, e))?;
    emit(out, &report.to_json())?;
    if report.succeeded() {
        let f: Vec<String> = report.factors.iter().map(u64::to_string).collect();
        eprintln!(
            "factors of {modulus}: {{{}}} after {} subroutine invocation(s)",
            f.join(", "),
            report.invocations
        );
        Ok(ExitCode::SUCCESS)
    } else {
        Err(fail(
            EXIT_EXHAUSTED,
            format!("no factor found within {max_retries} subroutine invocation(s)"),
        ))
    }
}

fn cmd_selftest() -> CmdResult {
    let report = selftest::run();
    println!("{report}");
    println!("multiplier cases: {}", report.cases("multiplier"));
    if report.passed() {
        Ok(ExitCode::SUCCESS)
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(fail(EXIT_SELFTEST, format!("failed: {}", names.join(", "))))
    }
}
