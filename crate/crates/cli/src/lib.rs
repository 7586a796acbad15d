//! Command-line surface: argument parsing, dispatch to solvers and analysis,
//! and CSV/JSON report encoding.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use subgame::analysis::{density_samples, digit_histogram, max_records, siegel_fit, MonomialFit};
use subgame::games::{moser_nim_formula, GameSelector};
use subgame::solvers::{cold_sieve, hotcold_dandc, hotcold_dp, nim_dp, nim_layered, NimTable};
use subgame::{BitVec, GameSpec};

#[derive(Debug, Parser)]
#[command(
    name = "subgame",
    version,
    about = "Evaluate subtraction games and run experiments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Nim-value of every heap size below the limit.
    Nim(Common),
    /// Cold (zero nim-value) heap sizes below the limit.
    Cold(Common),
    /// Record nim-values, cold-position density, or digit histograms.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Args)]
pub struct Common {
    /// squares | moser | explicit:<v1>,<v2>,...
    #[arg(long, default_value = "squares", value_parser = parse_game)]
    pub game: GameSelector,
    /// Exclusive bound on heap sizes.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub limit: u64,
    /// Defaults to dp for nim-values and sieve for cold positions.
    #[arg(long)]
    pub algo: Option<Algorithm>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExperimentArgs {
    #[arg(long, value_enum)]
    pub experiment: Experiment,
    #[command(flatten)]
    pub common: Common,
    /// Digit base for the digits experiment.
    #[arg(long, default_value_t = 5)]
    pub base: u64,
    /// Number of low-order digit positions for the digits experiment.
    #[arg(long, default_value_t = 3)]
    pub positions: u32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    Dp,
    Sieve,
    Dandc,
    Layered,
    Formula,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Experiment {
    MaxNim,
    Density,
    Digits,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().unwrap().get_name())
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_possible_value().unwrap().get_name())
    }
}

fn parse_game(s: &str) -> Result<GameSelector, String> {
    s.parse().map_err(|e: subgame::Error| e.to_string())
}

/// A finished run: tabular data plus an optional fit. The JSON encoding
/// keys each row object by the CSV column names.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub experiment: Option<Experiment>,
    pub game: String,
    pub limit: u64,
    pub algorithm: Algorithm,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<u64>>,
    pub fit: Option<MonomialFit>,
    pub warnings: Vec<String>,
}

impl Report {
    pub fn write_csv(&self, out: &mut dyn Write) -> std::io::Result<()> {
        writeln!(out, "{}", self.columns.join(","))?;
        for row in &self.rows {
            let fields: Vec<String> = row.iter().map(u64::to_string).collect();
            writeln!(out, "{}", fields.join(","))?;
        }
        if let Some(fit) = &self.fit {
            writeln!(
                out,
                "#fit,c={},e={},points={}",
                fit.coefficient, fit.exponent, fit.point_count
            )?;
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(&k, &v)| (k.to_string(), Value::from(v)))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "command": self.command,
            "experiment": self.experiment.map(|e| e.to_string()),
            "game": self.game,
            "limit": self.limit,
            "algorithm": self.algorithm.to_string(),
            "columns": self.columns,
            "rows": rows,
            "fit": self.fit.map(|f| json!({
                "c": f.coefficient,
                "e": f.exponent,
                "points": f.point_count,
            })),
            "warnings": self.warnings,
        })
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => {
                serde_json::to_writer_pretty(&mut *out, &self.to_json())?;
                writeln!(out)
            }
        }
    }
}

fn build_game(common: &Common) -> Result<GameSpec> {
    let limit = usize::try_from(common.limit).context("limit does not fit in memory")?;
    Ok(common.game.build(limit)?)
}

fn nim_table(common: &Common, algo: Algorithm) -> Result<NimTable> {
    match algo {
        Algorithm::Dp => Ok(nim_dp(&build_game(common)?)?),
        Algorithm::Layered => Ok(nim_layered(&build_game(common)?)?),
        Algorithm::Formula => {
            if common.game != GameSelector::Moser {
                bail!("the formula algorithm only applies to the moser game");
            }
            Ok(NimTable::new(
                (0..common.limit).map(moser_nim_formula).collect(),
            ))
        }
        other => {
            bail!("algorithm `{other}` does not compute nim-values (use dp, layered or formula)")
        }
    }
}

fn cold_set(common: &Common, algo: Algorithm) -> Result<BitVec> {
    let game = build_game(common)?;
    match algo {
        Algorithm::Sieve => Ok(cold_sieve(&game)?),
        Algorithm::Dp => Ok(hotcold_dp(&game).into_cold()),
        Algorithm::Dandc => Ok(hotcold_dandc(&game)?.into_cold()),
        other => {
            bail!("algorithm `{other}` does not compute cold positions (use sieve, dp or dandc)")
        }
    }
}

fn fit_or_warn(points: &[(f64, f64)], warnings: &mut Vec<String>) -> Option<MonomialFit> {
    match siegel_fit(points) {
        Ok(fit) => Some(fit),
        Err(e) => {
            warnings.push(format!("fit omitted: {e}"));
            None
        }
    }
}

/// Runs one command and returns its report without writing it.
pub fn execute(command: &Command) -> Result<Report> {
    let (common, name, experiment) = match command {
        Command::Nim(c) => (c, "nim", None),
        Command::Cold(c) => (c, "cold", None),
        Command::Experiment(e) => (&e.common, "experiment", Some(e)),
    };
    let mut report = Report {
        command: name,
        experiment: experiment.map(|e| e.experiment),
        game: common.game.to_string(),
        limit: common.limit,
        algorithm: Algorithm::Dp,
        columns: Vec::new(),
        rows: Vec::new(),
        fit: None,
        warnings: Vec::new(),
    };
    let wants_nim = matches!(command, Command::Nim(_))
        || experiment.is_some_and(|e| e.experiment == Experiment::MaxNim);
    let algo = common.algo.unwrap_or(if wants_nim {
        Algorithm::Dp
    } else {
        Algorithm::Sieve
    });
    report.algorithm = algo;

    match (command, experiment) {
        (Command::Nim(_), _) => {
            let table = nim_table(common, algo)?;
            report.columns = vec!["position", "nim_value"];
            report.rows = table
                .values()
                .iter()
                .enumerate()
                .map(|(p, &v)| vec![p as u64, v as u64])
                .collect();
        }
        (Command::Cold(_), _) => {
            let cold = cold_set(common, algo)?;
            report.columns = vec!["position"];
            report.rows = cold.positions().map(|p| vec![p as u64]).collect();
        }
        (_, Some(args)) => match args.experiment {
            Experiment::MaxNim => {
                let records = max_records(&nim_table(common, algo)?);
                report.columns = vec!["n", "max_nim"];
                report.rows = records
                    .points
                    .iter()
                    .map(|&(n, m)| vec![n as u64, m as u64])
                    .collect();
                report.fit = fit_or_warn(&records.fit_points(), &mut report.warnings);
            }
            Experiment::Density => {
                let cold = cold_set(common, algo)?;
                let samples = density_samples(&cold, cold.len());
                report.columns = vec!["n", "cold_count"];
                report.rows = samples
                    .iter()
                    .map(|&(n, c)| vec![n as u64, c as u64])
                    .collect();
                let points: Vec<(f64, f64)> =
                    samples.iter().map(|&(n, c)| (n as f64, c as f64)).collect();
                report.fit = fit_or_warn(&points, &mut report.warnings);
            }
            Experiment::Digits => {
                if args.base < 2 {
                    bail!("invalid base {}: must be at least 2", args.base);
                }
                let cold = cold_set(common, algo)?;
                report.columns = vec!["base", "position", "digit", "count"];
                for position in 0..args.positions {
                    let h = digit_histogram(&cold, args.base, position)?;
                    for (digit, &count) in h.counts.iter().enumerate() {
                        report
                            .rows
                            .push(vec![args.base, position as u64, digit as u64, count]);
                    }
                }
            }
        },
        _ => unreachable!("experiment command always carries its arguments"),
    }
    Ok(report)
}

/// Executes and writes the report to `--out` or to `stdout`. Warnings go to
/// `stderr`.
pub fn run(cli: &Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let report = execute(&cli.command)?;
    for w in &report.warnings {
        writeln!(stderr, "warning: {w}")?;
    }
    let common = match &cli.command {
        Command::Nim(c) | Command::Cold(c) => c,
        Command::Experiment(e) => &e.common,
    };
    match &common.out {
        Some(path) => {
            let file = std::fs::File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))?;
            let mut w = std::io::BufWriter::new(file);
            report.write(common.format, &mut w)?;
            w.flush()?;
        }
        None => report.write(common.format, stdout)?,
    }
    Ok(())
}
