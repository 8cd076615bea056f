mod config;

use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use island_core::cnf::{read_dimacs, Formula};
use island_core::confined::{confined_local_search, SearchConfig};
use island_core::harness::{
    count_solutions, format_table, run_suite, stats_report, to_csv, InstanceReport, StatsOptions,
};
use island_core::island::is_island;
use island_core::{island_extract, Guard, Heuristic};
use serde::{Deserialize, Serialize};

use config::FileConfig;

#[derive(Parser, Debug)]
#[command(name = "islands", version, about = "Island extraction and confined local search for CNF formulas")]
struct Cli {
    /// TOML file with defaults for the flags below.
    #[arg(long, global = true, env = "ISLANDS_CONFIG")]
    config: Option<PathBuf>,

    /// Maximum number of states a brute-force enumeration may visit.
    #[arg(long, global = true, env = "ISLANDS_GUARD")]
    guard: Option<u64>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Shorthand for `--format json`.
    #[arg(long, global = true, conflicts_with_all = ["csv", "format"])]
    json: bool,

    /// Shorthand for `--format csv`.
    #[arg(long, global = true, conflicts_with = "format")]
    csv: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Extract an island from a DIMACS file.
    Extract {
        file: PathBuf,
        #[command(flatten)]
        heuristic: HeuristicArg,
    },
    /// Decide by enumeration whether the whole formula is an island.
    CheckIsland { file: PathBuf },
    /// Count models by enumeration.
    Count { file: PathBuf },
    /// Extraction statistics for one or more files.
    Stats {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        heuristic: HeuristicArg,
        #[command(flatten)]
        enumerate: EnumerateArg,
    },
    /// Run local search confined to the extracted island.
    Solve {
        file: PathBuf,
        #[command(flatten)]
        heuristic: HeuristicArg,
        /// Maximum number of flips.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        /// Probability of a random confined flip instead of the greedy one.
        #[arg(long)]
        noise: Option<f64>,
    },
    /// Statistics for every `.cnf` file below a directory.
    Suite {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        heuristic: HeuristicArg,
        #[command(flatten)]
        enumerate: EnumerateArg,
    },
}

#[derive(Args, Debug)]
struct HeuristicArg {
    /// Literal scoring: neg, diff, ratio or nratio.
    #[arg(long)]
    heuristic: Option<Heuristic>,
}

#[derive(Args, Debug)]
struct EnumerateArg {
    /// Also count island and formula solutions by enumeration.
    #[arg(long)]
    enumerate: bool,
}

/// Flags merged with the config file.
struct Settings {
    file: FileConfig,
    guard: Guard,
    guard_overridden: bool,
    format: Format,
}

impl Settings {
    fn new(cli: &Cli) -> Result<Self> {
        let file = match &cli.config {
            Some(p) => FileConfig::load(p)?,
            None => FileConfig::default(),
        };
        let limit = cli.guard.or(file.guard);
        let format = if cli.json {
            Format::Json
        } else if cli.csv {
            Format::Csv
        } else {
            cli.format.or(file.format).unwrap_or(Format::Table)
        };
        Ok(Settings {
            guard: limit.map(Guard::states).unwrap_or_default(),
            guard_overridden: limit.is_some_and(|l| l != Guard::DEFAULT_STATES),
            format,
            file,
        })
    }

    fn heuristic(&self, arg: &HeuristicArg) -> Heuristic {
        arg.heuristic
            .or(self.file.heuristic)
            .unwrap_or(Heuristic::Ratio)
    }

    fn enumerate(&self, arg: &EnumerateArg) -> bool {
        arg.enumerate || self.file.enumerate.unwrap_or(false)
    }

    /// Announces the state count before an enumeration under a non-default guard.
    fn announce(&self, num_vars: usize) {
        if self.guard_overridden {
            let projected = if num_vars < 128 {
                (1u128 << num_vars).to_string()
            } else {
                format!("2^{num_vars}")
            };
            eprintln!(
                "guard {}: enumeration needs {projected} states",
                self.guard.limit
            );
        }
    }
}

fn load(path: &Path) -> Result<Formula> {
    let d = read_dimacs(path).with_context(|| format!("reading {}", path.display()))?;
    if d.tautologies_dropped > 0 {
        log::info!("{}: dropped {} tautologies", path.display(), d.tautologies_dropped);
    }
    Ok(d.formula)
}

fn instance_name(f: &Formula, path: &Path) -> String {
    f.name()
        .map(str::to_string)
        .unwrap_or_else(|| path.display().to_string())
}

fn emit_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// `key: value` lines for single-record table output, or a one-row CSV.
fn emit_fields(out: &mut impl Write, format: Format, fields: &[(&str, String)]) -> Result<()> {
    match format {
        Format::Csv => {
            let keys: Vec<&str> = fields.iter().map(|(k, _)| *k).collect();
            let vals: Vec<&str> = fields.iter().map(|(_, v)| v.as_str()).collect();
            writeln!(out, "{}", keys.join(","))?;
            writeln!(out, "{}", vals.join(","))?;
        }
        _ => {
            let w = fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in fields {
                writeln!(out, "{k:<w$}  {v}")?;
            }
        }
    }
    Ok(())
}

fn emit_reports(out: &mut impl Write, format: Format, reports: &[InstanceReport]) -> Result<()> {
    match format {
        Format::Table => {
            write!(out, "{}", format_table(reports))?;
            for r in reports {
                for note in &r.notes {
                    writeln!(out, "note ({}): {note}", r.name)?;
                }
            }
        }
        Format::Json => {
            for r in reports {
                emit_json(out, r)?;
            }
        }
        Format::Csv => write!(out, "{}", to_csv(reports))?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let settings = Settings::new(&cli)?;
    let format = settings.format;
    let stdout = io::stdout();
    let mut out = stdout.lock();

    match &cli.command {
        Command::Extract { file, heuristic } => {
            let f = load(file)?;
            let res = island_extract(&f, settings.heuristic(heuristic));
            let mut rec = res.record();
            rec.instance = instance_name(&f, file);
            match format {
                Format::Json => emit_json(&mut out, &rec)?,
                _ => {
                    let mut fields = vec![
                        ("instance", rec.instance.clone()),
                        ("heuristic", rec.heuristic.to_string()),
                        ("clauses", rec.num_clauses.to_string()),
                        ("island_clauses", rec.island_clauses.to_string()),
                        ("coverage_pct", format!("{:.1}", rec.coverage_pct)),
                        ("primal_literals", rec.primal_literals.to_string()),
                        ("seed", rec.seed.clone()),
                    ];
                    if format == Format::Table {
                        let lits: Vec<String> =
                            res.primal_list.iter().map(|l| l.to_string()).collect();
                        fields.push(("primal_list", lits.join(" ")));
                    }
                    emit_fields(&mut out, format, &fields)?;
                }
            }
        }
        Command::CheckIsland { file } => {
            let f = load(file)?;
            settings.announce(f.num_vars());
            let check = is_island(&f, settings.guard)?;
            match format {
                Format::Json => emit_json(&mut out, &check)?,
                _ => {
                    let mut fields = vec![
                        ("instance", instance_name(&f, file)),
                        ("island", check.is_island.to_string()),
                        ("solutions", check.solutions.to_string()),
                        ("components", check.components.to_string()),
                    ];
                    if let Some((a, b)) = &check.witness {
                        fields.push(("witness", format!("{a} {b}")));
                    }
                    emit_fields(&mut out, format, &fields)?;
                }
            }
        }
        Command::Count { file } => {
            let f = load(file)?;
            settings.announce(f.num_vars());
            let count = count_solutions(&f, settings.guard)?;
            #[derive(Serialize)]
            struct CountRecord {
                instance: String,
                num_vars: usize,
                model_count: u64,
            }
            let rec = CountRecord {
                instance: instance_name(&f, file),
                num_vars: f.num_vars(),
                model_count: count,
            };
            match format {
                Format::Json => emit_json(&mut out, &rec)?,
                _ => emit_fields(
                    &mut out,
                    format,
                    &[
                        ("instance", rec.instance),
                        ("num_vars", rec.num_vars.to_string()),
                        ("model_count", count.to_string()),
                    ],
                )?,
            }
        }
        Command::Stats {
            files,
            heuristic,
            enumerate,
        } => {
            let opts = StatsOptions {
                enumerate: settings.enumerate(enumerate),
                guard: settings.guard,
            };
            let h = settings.heuristic(heuristic);
            let mut reports = Vec::new();
            for file in files {
                let f = load(file)?;
                if opts.enumerate {
                    settings.announce(f.num_vars());
                }
                let mut r = stats_report(&f, h, opts);
                r.name = instance_name(&f, file);
                reports.push(r);
            }
            emit_reports(&mut out, format, &reports)?;
        }
        Command::Solve {
            file,
            heuristic,
            budget,
            seed,
            noise,
        } => {
            let f = load(file)?;
            let res = island_extract(&f, settings.heuristic(heuristic));
            let mut cfg = SearchConfig::new(
                budget.or(settings.file.budget).unwrap_or(100_000),
                seed.or(settings.file.seed).unwrap_or(0),
            );
            cfg.noise = noise.or(settings.file.noise).unwrap_or(0.0);
            anyhow::ensure!((0.0..=1.0).contains(&cfg.noise), "noise must lie in [0, 1]");
            let outcome = confined_local_search(&f, &res, &cfg);
            let report = outcome.report(&instance_name(&f, file), &cfg);
            match format {
                Format::Json => emit_json(&mut out, &report)?,
                _ => emit_fields(
                    &mut out,
                    format,
                    &[
                        ("instance", report.instance.clone()),
                        ("solved", report.solved.to_string()),
                        ("flips_used", report.flips_used.to_string()),
                        ("budget", report.budget.to_string()),
                        ("rng_seed", report.rng_seed.to_string()),
                        ("final_state", report.final_state.clone()),
                    ],
                )?,
            }
        }
        Command::Suite {
            paths,
            heuristic,
            enumerate,
        } => {
            let opts = StatsOptions {
                enumerate: settings.enumerate(enumerate),
                guard: settings.guard,
            };
            let suite = run_suite(paths, settings.heuristic(heuristic), opts)
                .context("scanning suite paths")?;
            emit_reports(&mut out, format, &suite.reports)?;
            match suite.mean_coverage {
                Some(m) => eprintln!("{} instances, mean coverage {m:.1}%", suite.reports.len()),
                None => eprintln!("no instances; mean coverage undefined"),
            }
            for fail in &suite.failures {
                eprintln!("error: {}: {}", fail.path.display(), fail.message);
            }
            if !suite.all_ok() {
                return Ok(ExitCode::FAILURE);
            }
        }
    }
    out.flush()?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
