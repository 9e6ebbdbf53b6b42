//! `klc`: linear complexity and k-error linear complexity of binary
//! sequences with power-of-two period, plus counting tables, exhaustive
//! distributions, and closed-form-versus-oracle verification reports.
//!
//! Exit codes: 0 success (and every verification verdict a match), 1 when
//! any verdict is a mismatch, 2 on usage errors, 3 when a request exceeds
//! the resource envelope.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use klc_core::counting::counting_table;
use klc_core::verify::{compare, exhaustive_distribution, EngineOpts, Method};
use klc_core::{kerror_lc, profile, Error, PeriodicSequence, SeqClass};

#[derive(Parser)]
#[command(
    name = "klc",
    version,
    about = "linear complexity and k-error linear complexity of 2^n-periodic binary sequences"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClassArg {
    Lt,
    Eq,
    All,
}

impl From<ClassArg> for SeqClass {
    fn from(v: ClassArg) -> SeqClass {
        match v {
            ClassArg::Lt => SeqClass::Lt,
            ClassArg::Eq => SeqClass::Eq,
            ClassArg::All => SeqClass::All,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Exhaustive,
    Ball,
}

impl From<MethodArg> for Method {
    fn from(v: MethodArg) -> Method {
        match v {
            MethodArg::Exhaustive => Method::Exhaustive,
            MethodArg::Ball => Method::Ball,
        }
    }
}

#[derive(Args)]
struct SequenceInput {
    /// One period of the sequence, first bit first.
    sequence: String,
    /// Read the sequence as hexadecimal (most significant nibble first)
    /// instead of a binary string.
    #[arg(long)]
    hex: bool,
    /// Expected exponent; rejected if the parsed length disagrees.
    #[arg(long)]
    n: Option<u32>,
}

impl SequenceInput {
    fn parse(&self) -> Result<PeriodicSequence, Error> {
        let seq = if self.hex {
            PeriodicSequence::from_hex_str(&self.sequence)?
        } else {
            PeriodicSequence::from_bin_str(&self.sequence)?
        };
        if let Some(n) = self.n {
            if n != seq.exponent() {
                return Err(Error::InvalidArgument(format!(
                    "sequence has exponent {} but --n {n} was requested",
                    seq.exponent()
                )));
            }
        }
        Ok(seq)
    }
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    format: FormatArg,
    /// Write the artifact to a file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct WorkerArgs {
    /// Worker thread count (default: KLC_WORKERS, then the CPU count).
    #[arg(long)]
    workers: Option<usize>,
}

impl WorkerArgs {
    fn resolve(&self) -> usize {
        self.workers
            .or_else(|| {
                std::env::var("KLC_WORKERS")
                    .ok()
                    .and_then(|v| v.parse().ok())
            })
            .unwrap_or_else(|| {
                std::thread::available_parallelism()
                    .map(|v| v.get())
                    .unwrap_or(1)
            })
            .max(1)
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Linear complexity of one sequence.
    Lc {
        #[command(flatten)]
        input: SequenceInput,
    },
    /// k-error linear complexity of one sequence.
    Klc {
        #[command(flatten)]
        input: SequenceInput,
        /// Maximum number of bits that may be changed.
        #[arg(long)]
        k: u64,
    },
    /// Complexity profile L_0..L_kmax of one sequence.
    Profile {
        #[command(flatten)]
        input: SequenceInput,
        #[arg(long)]
        kmax: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form counting table for a (n, k, class) combination.
    Table {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Exhaustive k-error complexity distribution (n <= 4).
    Dist {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u64,
        #[arg(long, value_enum)]
        class: ClassArg,
        #[command(flatten)]
        workers: WorkerArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Compare closed-form counts against an independent oracle.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Restrict the report to these complexity values (comma-separated).
        #[arg(long = "L", value_delimiter = ',')]
        l: Option<Vec<u64>>,
        #[arg(long, value_enum)]
        method: MethodArg,
        #[command(flatten)]
        workers: WorkerArgs,
        /// Hold one ball bitmap at a time instead of two.
        #[arg(long)]
        low_mem: bool,
        /// Include runtime and shard metadata in JSON output (volatile
        /// across runs, so off by default).
        #[arg(long)]
        emit_metadata: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn emit(out: &OutputArgs, data: &str) -> Result<(), Error> {
    match &out.output {
        Some(path) => fs::write(path, data)
            .map_err(|e| Error::InvalidArgument(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{data}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.cmd {
        Cmd::Lc { input } => {
            println!("{}", input.parse()?.linear_complexity());
            Ok(0)
        }
        Cmd::Klc { input, k } => {
            println!("{}", kerror_lc(&input.parse()?, k)?);
            Ok(0)
        }
        Cmd::Profile { input, kmax, out } => {
            let prof = profile(&input.parse()?, kmax)?;
            let data = match out.format {
                FormatArg::Text => {
                    let values: Vec<String> =
                        prof.values().iter().map(|v| v.to_string()).collect();
                    format!("{}\n", values.join(" "))
                }
                FormatArg::Json => {
                    let values: Vec<String> =
                        prof.values().iter().map(|v| v.to_string()).collect();
                    format!(
                        "{{\"n\":{},\"values\":[{}]}}\n",
                        prof.exponent(),
                        values.join(",")
                    )
                }
                FormatArg::Csv => {
                    let mut s = String::from("k,L\n");
                    for (k, v) in prof.values().iter().enumerate() {
                        s.push_str(&format!("{k},{v}\n"));
                    }
                    s
                }
            };
            emit(&out, &data)?;
            Ok(0)
        }
        Cmd::Table { n, k, class, out } => {
            let table = counting_table(n, k, class.into())?;
            let data = match out.format {
                FormatArg::Text => table.to_text(),
                FormatArg::Json => format!("{}\n", table.to_json()),
                FormatArg::Csv => table.to_csv(),
            };
            emit(&out, &data)?;
            Ok(0)
        }
        Cmd::Dist {
            n,
            k,
            class,
            workers,
            out,
        } => {
            let opts = EngineOpts {
                workers: workers.resolve(),
                low_mem: false,
            };
            let table = exhaustive_distribution(n, k, class.into(), opts)?;
            let data = match out.format {
                FormatArg::Text => table.to_text(),
                FormatArg::Json => format!("{}\n", table.to_json()),
                FormatArg::Csv => table.to_csv(),
            };
            emit(&out, &data)?;
            Ok(0)
        }
        Cmd::Verify {
            n,
            k,
            class,
            l,
            method,
            workers,
            low_mem,
            emit_metadata,
            out,
        } => {
            let opts = EngineOpts {
                workers: workers.resolve(),
                low_mem,
            };
            let report = compare(n, k, class.into(), method.into(), l.as_deref(), opts)?;
            let data = match out.format {
                FormatArg::Text => report.to_text(),
                FormatArg::Json => format!("{}\n", report.to_json(emit_metadata)),
                FormatArg::Csv => report.to_csv(),
            };
            emit(&out, &data)?;
            eprintln!(
                "verify: {} rows in {} ms with {} workers",
                report.rows.len(),
                report.runtime_ms,
                report.shards
            );
            Ok(u8::from(report.any_mismatch()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse(); // clap exits with code 2 on usage errors
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::InvalidArgument(_) => 2,
                Error::ResourceLimit(_) => 3,
                Error::Inconsistency(_) => 1,
            })
        }
    }
}
