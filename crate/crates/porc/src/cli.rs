//! Subcommand execution, independent of argument parsing so it can be driven
//! from tests.

use std::fmt::Write as _;
use std::path::PathBuf;

use num_bigint::BigInt;
use porc_core::ffield::{brute_force_count, exponent_space_count};
use porc_core::{
    arith, count_at_with, counting_eval, parse_polynomial_lines, parse_system,
    synthesize_counting_function_with, synthesize_gcd_function, CountOptions, MonomialSystem,
    ParseError,
};

use crate::json;

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_SCALE: u8 = 2;
pub const EXIT_MISMATCH: u8 = 3;

pub const DEFAULT_MAX_ENUM: u64 = 1_000_000;
pub const DEFAULT_MAX_NEQ: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    Path(PathBuf),
    Inline(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    /// Print the counting function of a system.
    Synthesize,
    /// Count solutions at one value of `q`.
    Count { q: u64 },
    /// Closed form for the gcd of a list of polynomials.
    GcdPorc,
    /// Residue-class table of a system's counting function, or of the gcd
    /// function of a polynomial list when `polys` is set.
    Table { polys: bool },
    /// Cross-check the counting function against the oracles for every
    /// `q` in `lo..=hi`.
    Verify { lo: u64, hi: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: Input,
    pub format: Format,
    pub max_enum: u64,
    pub max_neq: usize,
}

impl RunConfig {
    pub fn new(command: Command, input: Input) -> Self {
        Self {
            command,
            input,
            format: Format::Text,
            max_enum: DEFAULT_MAX_ENUM,
            max_neq: DEFAULT_MAX_NEQ,
        }
    }
}

/// Exit status and captured output of one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error("{origin}: cannot read input: {source}")]
    Io {
        origin: String,
        source: std::io::Error,
    },
    #[error("{origin}:{err}")]
    Parse { origin: String, err: ParseError },
    #[error("{0}")]
    Core(#[from] porc_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Mismatch(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Io { .. } | Failure::Parse { .. } | Failure::Usage(_) => EXIT_INPUT,
            Failure::Core(e) if e.is_scale() => EXIT_SCALE,
            Failure::Core(porc_core::Error::Inconsistent(_)) => EXIT_MISMATCH,
            Failure::Core(_) => EXIT_INPUT,
            Failure::Mismatch(_) => EXIT_MISMATCH,
        }
    }
}

fn origin(input: &Input) -> String {
    match input {
        Input::Path(p) => p.display().to_string(),
        Input::Inline(_) => "<expr>".into(),
    }
}

fn read(input: &Input) -> Result<String, Failure> {
    match input {
        Input::Path(p) => std::fs::read_to_string(p).map_err(|source| Failure::Io {
            origin: origin(input),
            source,
        }),
        Input::Inline(s) => Ok(s.clone()),
    }
}

fn system(input: &Input) -> Result<MonomialSystem, Failure> {
    parse_system(&read(input)?).map_err(|err| Failure::Parse {
        origin: origin(input),
        err,
    })
}

fn polynomials(input: &Input) -> Result<Vec<porc_core::IntPoly>, Failure> {
    parse_polynomial_lines(&read(input)?).map_err(|err| Failure::Parse {
        origin: origin(input),
        err,
    })
}

fn json_line(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string(v).expect("serializable");
    s.push('\n');
    s
}

pub fn run(config: &RunConfig) -> Report {
    let mut report = Report::default();
    match execute(config, &mut report.stdout) {
        Ok(()) => report.code = EXIT_OK,
        Err(e) => {
            report.code = e.code();
            report.stderr = format!("error: {e}\n");
        }
    }
    report
}

fn execute(config: &RunConfig, out: &mut String) -> Result<(), Failure> {
    if config.max_enum == 0 || config.max_neq == 0 {
        return Err(Failure::Usage("caps must be positive".into()));
    }
    let opts = CountOptions {
        max_neq: config.max_neq,
    };
    let as_json = config.format == Format::Json;
    match &config.command {
        Command::Synthesize => {
            let cf = synthesize_counting_function_with(&system(&config.input)?, opts)?;
            if as_json {
                out.push_str(&json_line(&json::counting_function_value(&cf)));
            } else {
                writeln!(out, "{}", cf.display_with("q")).unwrap();
            }
        }
        Command::Count { q } => {
            if *q < 2 {
                return Err(Failure::Usage(format!("--q must be at least 2, got {q}")));
            }
            let count = count_at_with(&system(&config.input)?, *q, opts)?;
            if as_json {
                let v = serde_json::json!({ "q": q, "count": json::integer(&count) });
                out.push_str(&json_line(&v));
            } else {
                writeln!(out, "{count}").unwrap();
            }
        }
        Command::GcdPorc => {
            let g = synthesize_gcd_function(&polynomials(&config.input)?)?;
            if as_json {
                out.push_str(&json_line(&json::gcd_function_value(&g)));
            } else {
                writeln!(out, "{}", g.display_with("x")).unwrap();
            }
        }
        Command::Table { polys } => {
            let (table, var) = if *polys {
                let g = synthesize_gcd_function(&polynomials(&config.input)?)?;
                (g.residue_table()?, "x")
            } else {
                let cf = synthesize_counting_function_with(&system(&config.input)?, opts)?;
                (cf.residue_table()?, "q")
            };
            if as_json {
                out.push_str(&json_line(&json::table_value(&table)));
            } else {
                out.push_str(&table.render(var));
            }
        }
        Command::Verify { lo, hi } => verify(config, *lo, *hi, opts, out)?,
    }
    Ok(())
}

fn prime_power(q: u64) -> Option<(u64, u32)> {
    match arith::factor(q).as_slice() {
        [(p, e)] => Some((*p, *e)),
        _ => None,
    }
}

struct Check {
    q: u64,
    count: BigInt,
    formula: BigInt,
    field: Option<u64>,
    exponents: Option<u64>,
}

fn agrees(oracle: Option<u64>, count: &BigInt) -> bool {
    oracle.map_or(true, |x| BigInt::from(x) == *count)
}

impl Check {
    fn ok(&self) -> bool {
        self.formula == self.count
            && agrees(self.field, &self.count)
            && agrees(self.exponents, &self.count)
    }
}

fn verify(
    config: &RunConfig,
    lo: u64,
    hi: u64,
    opts: CountOptions,
    out: &mut String,
) -> Result<(), Failure> {
    if lo < 2 || lo > hi {
        return Err(Failure::Usage(format!(
            "bad q-range {lo}:{hi}; need 2 <= lo <= hi"
        )));
    }
    let sys = system(&config.input)?;
    let cf = synthesize_counting_function_with(&sys, opts)?;
    let mut checks = Vec::new();
    for q in lo..=hi {
        let count = count_at_with(&sys, q, opts)?;
        let formula = counting_eval(&cf, q)?;
        let group = BigInt::from(q).pow(sys.n() as u32) - 1u32;
        let small = group.pow(sys.k() as u32) <= BigInt::from(config.max_enum);
        let (field, exponents) = match prime_power(q) {
            Some((p, e)) if small => (
                Some(brute_force_count(&sys, p, e, config.max_enum)?),
                Some(exponent_space_count(&sys, q, config.max_enum)?),
            ),
            _ => (None, None),
        };
        checks.push(Check {
            q,
            count,
            formula,
            field,
            exponents,
        });
    }
    let failures: Vec<u64> = checks.iter().filter(|c| !c.ok()).map(|c| c.q).collect();
    if config.format == Format::Json {
        let rows: Vec<serde_json::Value> = checks
            .iter()
            .map(|c| {
                serde_json::json!({
                    "q": c.q,
                    "count": json::integer(&c.count),
                    "formula": json::integer(&c.formula),
                    "field": c.field,
                    "exponents": c.exponents,
                    "ok": c.ok(),
                })
            })
            .collect();
        out.push_str(&json_line(
            &serde_json::json!({ "checks": rows, "ok": failures.is_empty() }),
        ));
    } else {
        let show = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
        for c in &checks {
            writeln!(
                out,
                "q={}: count {} formula {} field {} exponents {} {}",
                c.q,
                c.count,
                c.formula,
                show(c.field),
                show(c.exponents),
                if c.ok() { "ok" } else { "MISMATCH" }
            )
            .unwrap();
        }
        let oracle = checks.iter().filter(|c| c.field.is_some()).count();
        writeln!(
            out,
            "{} of {} values agree; {oracle} checked against the field oracles",
            checks.len() - failures.len(),
            checks.len()
        )
        .unwrap();
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(Failure::Mismatch(format!(
            "disagreement at q = {failures:?}"
        )))
    }
}
