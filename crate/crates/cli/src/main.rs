use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use pd3_core::bar::bar_homology;
use pd3_core::checks::{mutation_audit, Workbench, DEFAULT_MAX_LENGTH};
use pd3_core::complex::{FreeComplex, IntComplex, Presentation};
use pd3_core::corpus::Corpus;
use pd3_core::group::{normalize, GroupId, Word};
use pd3_core::homology::homology;
use pd3_core::intmat::{smith, IntMatrix, Transforms};
use pd3_core::par::Parallelism;
use pd3_core::report::run_suite;

#[derive(Parser)]
#[command(name = "pd3", version, about = "Exact checks for small PD3-complexes over S3 and S3 *_{Z/2} S3")]
struct Cli {
    /// Run every computation on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suite.
    Verify {
        /// Check id or prefix pattern such as `Y*`; repeatable.
        #[arg(long = "check", value_name = "ID")]
        checks: Vec<String>,
        /// Run every check (the default when no --check is given).
        #[arg(long, conflicts_with = "checks")]
        all: bool,
        /// Radius of the word-length ball for bounded searches.
        #[arg(long, default_value_t = DEFAULT_MAX_LENGTH)]
        max_length: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, value_name = "PATH")]
        out: Option<PathBuf>,
        /// Directory holding a complete set of corpus files to use instead of the built-in ones.
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
        /// Leave wall times out of the report.
        #[arg(long)]
        no_timings: bool,
    },
    /// Normal form of a word.
    Normalize {
        #[arg(long)]
        group: String,
        word: String,
    },
    /// Fox-Lyndon differentials of a presentation file.
    Fox {
        #[arg(long, value_name = "FILE")]
        presentation: PathBuf,
    },
    /// Integral homology of a corpus complex.
    Homology {
        #[arg(long, value_enum)]
        complex: ComplexName,
        #[arg(long, value_name = "DIR")]
        corpus: Option<PathBuf>,
    },
    /// Smith normal form U A V = D of an integer matrix file.
    Snf { file: PathBuf },
    /// Homology of a finite group from the normalized bar resolution.
    Bar {
        #[arg(long, value_enum)]
        group: BarGroup,
        #[arg(long)]
        degree: usize,
    },
    /// Inject sampled single-coefficient faults into the corpus and rerun the suite.
    Audit {
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 2)]
        max_length: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ComplexName {
    X,
    Y,
    Z,
    XUniversal,
    YDouble,
}

#[derive(Clone, Copy, ValueEnum)]
enum BarGroup {
    Z2,
    Z3,
    S3,
}

/// Failure before any check could run: exit code 2.
struct ConfigError(anyhow::Error);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let par = if cli.sequential { Parallelism::Sequential } else { Parallelism::Parallel };
    match run(cli.command, par) {
        Ok(code) => ExitCode::from(code),
        Err(ConfigError(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn load_corpus(dir: Option<PathBuf>) -> Result<Corpus> {
    match dir {
        Some(d) => Corpus::from_dir(&d).with_context(|| format!("loading corpus from {}", d.display())),
        None => Ok(Corpus::embedded()),
    }
}

fn run(command: Command, par: Parallelism) -> std::result::Result<u8, ConfigError> {
    match command {
        Command::Verify { checks, all, max_length, format, out, corpus, no_timings } => {
            let corpus = load_corpus(corpus).map_err(ConfigError)?;
            let filters = (!all && !checks.is_empty()).then_some(checks.as_slice());
            let report = run_suite(corpus, filters, max_length, par).map_err(|e| ConfigError(e.into()))?;
            let text = match format {
                Format::Text => report.to_text(!no_timings),
                Format::Json => report.to_json(!no_timings),
            };
            match out {
                Some(path) => std::fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))
                    .map_err(ConfigError)?,
                None => print!("{text}"),
            }
            Ok(report.exit_code() as u8)
        }
        Command::Audit { count, seed, max_length } => {
            let outcomes =
                mutation_audit(&Corpus::embedded(), count, seed, max_length, par).map_err(|e| ConfigError(e.into()))?;
            let mut escaped = 0;
            for o in &outcomes {
                if o.failing.is_empty() {
                    escaped += 1;
                    println!("UNDETECTED {}", o.site);
                } else {
                    println!("caught     {} by {}", o.site, o.failing.join(", "));
                }
            }
            println!("{} of {} mutations caught", outcomes.len() - escaped, outcomes.len());
            Ok(u8::from(escaped > 0))
        }
        other => tool(other, par).map(|()| 0).map_err(ConfigError),
    }
}

fn tool(command: Command, par: Parallelism) -> Result<()> {
    match command {
        Command::Normalize { group, word } => {
            let group: GroupId = group.parse()?;
            println!("{}", normalize(group, &Word::parse(&word)?)?);
        }
        Command::Fox { presentation } => {
            let text = std::fs::read_to_string(&presentation)
                .with_context(|| format!("reading {}", presentation.display()))?;
            let p = Presentation::parse_document(&text)?;
            println!("{p}");
            print!("{}", FreeComplex::fox_lyndon(&p)?);
        }
        Command::Homology { complex, corpus } => {
            let bench = Workbench::new(load_corpus(corpus)?, DEFAULT_MAX_LENGTH, par);
            let cx: IntComplex = match complex {
                ComplexName::X => bench.x()?.augment(),
                ComplexName::Y => bench.y()?.augment(),
                ComplexName::Z => bench.z()?.augment(),
                ComplexName::XUniversal => bench.x()?.flatten()?,
                ComplexName::YDouble => bench.y()?.restrict_to_index_two()?.augment(),
            };
            for (k, h) in homology(&cx, par)?.iter().enumerate() {
                println!("H{k} = {}", h.primary_form());
            }
        }
        Command::Snf { file } => {
            let text = std::fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let a = IntMatrix::parse_document(&text)?;
            let s = smith(&a, Transforms::BOTH, par);
            if let Err(e) = s.verify(&a) {
                bail!("internal error, Smith form postcondition failed: {e}");
            }
            let (u, v) = (s.u.as_ref().expect("tracked"), s.v.as_ref().expect("tracked"));
            println!("U =\n{u}\nD =\n{}\nV =\n{v}", s.d_matrix());
        }
        Command::Bar { group, degree } => {
            let g = match group {
                BarGroup::Z2 => GroupId::Z2,
                BarGroup::Z3 => GroupId::Z3,
                BarGroup::S3 => GroupId::S3,
            };
            println!("H{degree}({g}) = {}", bar_homology(g, degree, par)?);
        }
        Command::Verify { .. } | Command::Audit { .. } => unreachable!("handled by run"),
    }
    Ok(())
}
