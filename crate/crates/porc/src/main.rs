use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use porc::cli::{self, Command, Format, Input, RunConfig};

/// Synthesize and check PORC counting functions of monomial systems over
/// finite fields.
#[derive(Parser)]
#[command(name = "porc", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,

    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,

    /// Cap on tuples enumerated by the field and exponent oracles.
    #[arg(long, default_value_t = cli::DEFAULT_MAX_ENUM, global = true,
          value_parser = clap::value_parser!(u64).range(1..))]
    max_enum: u64,

    /// Cap on inequations (inclusion-exclusion has 2^neq terms).
    #[arg(long, default_value_t = cli::DEFAULT_MAX_NEQ as u64, global = true,
          value_parser = clap::value_parser!(u64).range(1..=63))]
    max_neq: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Args)]
struct Source {
    /// Input file.
    #[arg(conflicts_with = "expr", required_unless_present = "expr")]
    path: Option<PathBuf>,

    /// Inline input instead of a file.
    #[arg(short = 'e', long)]
    expr: Option<String>,
}

impl Source {
    fn into_input(self) -> Input {
        match (self.path, self.expr) {
            (_, Some(text)) => Input::Inline(text),
            (Some(path), None) => Input::Path(path),
            (None, None) => unreachable!("clap requires one input"),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the counting function of a system.
    Synthesize(Source),
    /// Count solutions at one value of q.
    Count {
        #[command(flatten)]
        source: Source,
        /// Value of q (at least 2).
        #[arg(long)]
        q: u64,
    },
    /// Closed form for the gcd of the values of polynomials, one per line.
    GcdPorc(Source),
    /// One polynomial per residue class of q.
    Table {
        #[command(flatten)]
        source: Source,
        /// Read a polynomial list (as for gcd-porc) instead of a system.
        #[arg(long)]
        polys: bool,
    },
    /// Check the counting function against the oracles over a range of q.
    Verify {
        #[command(flatten)]
        source: Source,
        /// Inclusive range lo:hi.
        #[arg(long, default_value = "2:9", value_parser = parse_range)]
        q_range: (u64, u64),
    },
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: u64 = lo
        .trim()
        .parse()
        .map_err(|e| format!("bad lower bound: {e}"))?;
    let hi: u64 = hi
        .trim()
        .parse()
        .map_err(|e| format!("bad upper bound: {e}"))?;
    if lo < 2 || lo > hi {
        return Err("need 2 <= lo <= hi".into());
    }
    Ok((lo, hi))
}

fn main() -> ExitCode {
    let parsed = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(cli::EXIT_INPUT)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let (command, source) = match parsed.command {
        Cmd::Synthesize(s) => (Command::Synthesize, s),
        Cmd::Count { source, q } => (Command::Count { q }, source),
        Cmd::GcdPorc(s) => (Command::GcdPorc, s),
        Cmd::Table { source, polys } => (Command::Table { polys }, source),
        Cmd::Verify { source, q_range } => (
            Command::Verify {
                lo: q_range.0,
                hi: q_range.1,
            },
            source,
        ),
    };
    let config = RunConfig {
        command,
        input: source.into_input(),
        format: match parsed.format {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
        },
        max_enum: parsed.max_enum,
        max_neq: parsed.max_neq as usize,
    };
    let report = cli::run(&config);
    let _ = std::io::stdout().write_all(report.stdout.as_bytes());
    let _ = std::io::stderr().write_all(report.stderr.as_bytes());
    ExitCode::from(report.code)
}
