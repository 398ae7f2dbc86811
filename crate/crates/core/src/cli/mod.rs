//! Command-line front end. `run` does all the work and returns the exit code
//! with the text to print, so it can be driven from tests.

pub mod report;
pub mod suites;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::cox::{all_ruling_relations, build_generators, pluecker_model_r4, ruling_relations, GeneratorSet};
use crate::enumeration::{classify_family, exceptional_curves, roots, rulings};
use crate::error::{Error, Result};
use crate::lattice::check_r;
use crate::plane_geometry::{random_config, PointConfig};
use report::{Check, Inputs, RunReport};
use suites::{suites_for, Suite};

pub const THREADS_ENV: &str = "COX_DELPEZZO_THREADS";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "cox-delpezzo", version, about = "Exact computations on Del Pezzo surfaces X_r, 3 <= r <= 8")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exceptional curves with their plane-curve family.
    Curves {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// The root system R_r.
    Roots {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Rulings and their reducible fibres.
    Rulings {
        #[arg(long)]
        r: usize,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Write a seeded configuration in general position.
    SampleConfig {
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        bound: i64,
        /// Output file; standard output if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Section polynomials of all generators over a configuration.
    Sections {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Exact ruling relations over a configuration.
    Relations {
        #[arg(long)]
        config: PathBuf,
        /// Index into the sorted list of rulings.
        #[arg(long)]
        ruling: Option<usize>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// The Grassmannian model of an r = 4 configuration.
    Pluecker {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run verification suites.
    Verify {
        #[arg(long)]
        r: usize,
        /// Configuration to use instead of the seeded one.
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(msg: impl Into<String>) -> Self {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: msg.into(),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome::usage(text)
            } else {
                Outcome::ok(text)
            };
        }
    };
    let threads = std::env::var(THREADS_ENV).ok().and_then(|v| v.parse::<usize>().ok());
    match threads {
        Some(n) if n > 0 => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Outcome::usage(format!("cannot build thread pool: {e}")),
        },
        _ => dispatch(cli.command),
    }
}

fn dispatch(cmd: Command) -> Outcome {
    let result = match cmd {
        Command::Curves { r, format } => with_r(r, || curves(r, format)),
        Command::Roots { r, format } => with_r(r, || roots_cmd(r, format)),
        Command::Rulings { r, format } => with_r(r, || rulings_cmd(r, format)),
        Command::SampleConfig { r, seed, bound, out } => with_r(r, || sample_config(r, seed, bound, out)),
        Command::Sections { config, format } => sections(&config, format),
        Command::Relations { config, ruling, format } => relations(&config, ruling, format),
        Command::Pluecker { config, format } => pluecker(&config, format),
        Command::Verify {
            r,
            config,
            seed,
            suite,
            format,
        } => return verify(r, config, seed, suite, format),
    };
    match result {
        Ok(text) => Outcome::ok(text),
        Err(e @ (Error::RangeError(..) | Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::InvalidInput(_))) => {
            Outcome::usage(format!("error: {e}\n"))
        }
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn with_r(r: usize, f: impl FnOnce() -> Result<String>) -> Result<String> {
    check_r(r)?;
    f()
}

fn json_out(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n"
}

fn coeff_string(c: &crate::lattice::PicClass) -> String {
    c.coeffs().iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn curves(r: usize, format: Format) -> Result<String> {
    let list = exceptional_curves(r)?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let rows: Vec<Value> = list
                .iter()
                .map(|e| {
                    let fam = classify_family(e).expect("exceptional");
                    json!({ "class": e, "family": fam.tag(), "curve": fam.to_string() })
                })
                .collect();
            out = json_out(&Value::Array(rows));
        }
        Format::Csv => {
            out.push_str("index,class,family,curve\n");
            for (i, e) in list.iter().enumerate() {
                let fam = classify_family(e)?;
                writeln!(out, "{},{},{},\"{}\"", i, coeff_string(e), fam.tag(), fam).unwrap();
            }
        }
        Format::Table => {
            writeln!(out, "{:>4}  {:<40}  {:<22}  curve", "#", "class", "family").unwrap();
            for (i, e) in list.iter().enumerate() {
                let fam = classify_family(e)?;
                writeln!(out, "{:>4}  {:<40}  {:<22}  {}", i, e.to_string(), fam.tag(), fam).unwrap();
            }
        }
    }
    Ok(out)
}

fn roots_cmd(r: usize, format: Format) -> Result<String> {
    let list = roots(r)?;
    let mut out = String::new();
    match format {
        Format::Json => out = json_out(&serde_json::to_value(&list)?),
        Format::Csv => {
            out.push_str("index,class\n");
            for (i, a) in list.iter().enumerate() {
                writeln!(out, "{},{}", i, coeff_string(a)).unwrap();
            }
        }
        Format::Table => {
            writeln!(out, "{:>4}  class", "#").unwrap();
            for (i, a) in list.iter().enumerate() {
                writeln!(out, "{i:>4}  {a}").unwrap();
            }
        }
    }
    Ok(out)
}

fn rulings_cmd(r: usize, format: Format) -> Result<String> {
    let list = rulings(r)?;
    let mut out = String::new();
    match format {
        Format::Json => out = json_out(&serde_json::to_value(&list)?),
        Format::Csv => {
            out.push_str("index,class,fibres\n");
            for (i, ru) in list.iter().enumerate() {
                writeln!(out, "{},{},{}", i, coeff_string(&ru.class), ru.fibers.len()).unwrap();
            }
        }
        Format::Table => {
            for (i, ru) in list.iter().enumerate() {
                writeln!(out, "{i:>4}  {}", ru.class).unwrap();
                for (a, b) in &ru.fibers {
                    writeln!(out, "        ({a}) + ({b})").unwrap();
                }
            }
        }
    }
    Ok(out)
}

fn sample_config(r: usize, seed: u64, bound: i64, out: Option<PathBuf>) -> Result<String> {
    let mut cfg = random_config(r, seed, bound)?;
    cfg.seed = Some(seed);
    match out {
        Some(path) => {
            cfg.save(&path)?;
            Ok(format!("wrote {}\n", path.display()))
        }
        None => Ok(cfg.to_json_string() + "\n"),
    }
}

fn load_generators(path: &Path) -> Result<GeneratorSet> {
    let cfg = PointConfig::load(path)?;
    build_generators(&cfg)
}

fn sections(path: &Path, format: Format) -> Result<String> {
    let g = load_generators(path)?;
    if format == Format::Json {
        return Ok(json_out(&serde_json::to_value(g.generators())?));
    }
    let mut out = String::new();
    for gen in g.generators() {
        writeln!(out, "{:<40}  {}", gen.label, gen.poly).unwrap();
    }
    Ok(out)
}

fn relations(path: &Path, ruling: Option<usize>, format: Format) -> Result<String> {
    let g = load_generators(path)?;
    let selected = match ruling {
        Some(i) => {
            let all = rulings(g.r())?;
            let ru = all
                .get(i)
                .ok_or_else(|| Error::InvalidInput(format!("ruling index {i} out of range 0..{}", all.len())))?
                .clone();
            let rels = ruling_relations(&ru, &g)?;
            vec![(ru, rels)]
        }
        None => all_ruling_relations(&g)?,
    };
    if format == Format::Json {
        let v: Vec<Value> = selected
            .iter()
            .flat_map(|(_, rels)| rels.iter().map(|rel| rel.to_json(&g)))
            .collect();
        return Ok(json_out(&Value::Array(v)));
    }
    let mut out = String::new();
    for (ru, rels) in &selected {
        writeln!(out, "ruling {}", ru.class).unwrap();
        for rel in rels {
            let terms: Vec<String> = rel
                .terms
                .iter()
                .map(|t| format!("({}) {} {}", t.coeff, g.get(t.pair.0).label, g.get(t.pair.1).label))
                .collect();
            writeln!(out, "  {} = 0", terms.join(" + ")).unwrap();
        }
    }
    Ok(out)
}

fn pluecker(path: &Path, format: Format) -> Result<String> {
    let cfg = PointConfig::load(path)?;
    let rep = pluecker_model_r4(&cfg)?;
    if format == Format::Json {
        return Ok(json_out(&serde_json::to_value(&rep)?));
    }
    let mut out = String::new();
    for m in &rep.minors {
        writeln!(out, "M{:?} = {} * x[{}]", m.columns, m.scalar, m.class).unwrap();
    }
    for id in &rep.identities {
        let status = if id.vanishes { "vanishes" } else { "FAILS" };
        writeln!(out, "Plücker identity fixing column {} (ruling {}): {status}", id.fixed, id.ruling).unwrap();
    }
    for (ruling, ok) in &rep.relation_matches {
        writeln!(out, "relation of {ruling} proportional to its quadric: {ok}").unwrap();
    }
    writeln!(out, "note: {}", rep.note).unwrap();
    Ok(out)
}

/// Runs the requested suites and returns the report.
pub fn verify_report(r: usize, config: Option<&PathBuf>, seed: u64, suite: Suite) -> Result<RunReport> {
    check_r(r)?;
    if suite == Suite::Jacobian && !(4..=6).contains(&r) {
        return Err(Error::RangeError(r, "the jacobian suite supports r in 4..=6"));
    }
    let start = Instant::now();
    let cfg = match config {
        Some(p) => {
            let c = PointConfig::load(p)?;
            if c.r() != r {
                return Err(Error::InvalidInput(format!("configuration has r = {}, expected {r}", c.r())));
            }
            c
        }
        None => suites::seeded_config(r, seed)?,
    };
    let run = suites_for(suite, r);
    let needs_generators = run
        .iter()
        .any(|s| matches!(s, Suite::Relations | Suite::Generation | Suite::Jacobian));
    let genset = if needs_generators { Some(build_generators(&cfg)?) } else { None };
    let mut checks: Vec<Check> = Vec::new();
    for s in run {
        let g = || genset.as_ref().expect("generators built");
        match s {
            Suite::Counts => checks.extend(suites::counts(r)?),
            Suite::Weyl => checks.extend(suites::weyl(r)?),
            Suite::Relations => checks.extend(suites::relations(g())?),
            Suite::Generation => checks.extend(suites::generation(g())?),
            Suite::Jacobian => checks.extend(suites::jacobian(g(), seed)?),
            Suite::All => unreachable!("expanded by suites_for"),
        }
    }
    Ok(RunReport {
        command: format!("verify --r {r} --suite {}", suite.to_possible_value().expect("named").get_name()),
        inputs: Inputs {
            r: Some(r),
            seed: Some(seed),
            config: config.map(|p| p.display().to_string()),
        },
        checks,
        timing_ms: start.elapsed().as_millis(),
    })
}

fn verify(r: usize, config: Option<PathBuf>, seed: u64, suite: Suite, format: Format) -> Outcome {
    match verify_report(r, config.as_ref(), seed, suite) {
        Ok(rep) => {
            let stdout = match format {
                Format::Json => json_out(&serde_json::to_value(&rep).expect("report serializes")),
                _ => rep.to_string() + "\n",
            };
            let stderr: String = rep
                .failures()
                .map(|c| format!("failed check: {}\n", c.name))
                .collect();
            Outcome {
                code: if rep.all_pass() { 0 } else { 1 },
                stdout,
                stderr,
            }
        }
        Err(e @ (Error::RangeError(..) | Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::InvalidInput(_))) => {
            Outcome::usage(format!("error: {e}\n"))
        }
        Err(e) => Outcome {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
