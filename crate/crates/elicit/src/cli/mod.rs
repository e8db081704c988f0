//! Command front end: forecast comparison on CSV data, property reports,
//! estimation, and ranking simulations.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 domain violation,
//! 3 property violated, 4 internal numeric failure.

pub mod config;
pub mod dataset;
pub mod literal;

pub use config::Config;
pub use dataset::{parse_dataset, write_dataset, DataRow, Dataset};
pub use literal::{parse_functional, parse_score};

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dist::{parse_distribution, Distribution, Functional};
use crate::error::{ElicitError, Result};
use crate::mest;
use crate::props::{self, CheckConfig, OrderSensitivity, PropertyReport, Verdict};
use crate::scores::{canonical_identification, Score};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_VIOLATED: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Parser, Debug)]
#[command(
    name = "elicit",
    about = "Consistent scoring functions: comparison, property checks, estimation, simulation"
)]
struct Cli {
    /// Seed override for every randomized step.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory for report and experiment files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank forecasters on a CSV dataset by realized mean score.
    Compare {
        #[arg(long)]
        data: PathBuf,
        #[arg(long)]
        score: String,
    },
    /// Run property verifiers from a config file, one report file each.
    Properties {
        #[arg(long)]
        config: PathBuf,
    },
    /// Fit a score on data or run a consistency experiment.
    Estimate {
        #[arg(long)]
        config: PathBuf,
    },
    /// Ranking-divergence experiment between two scores.
    Simulate {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Entry point for the binary; returns the process exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap prints its own help/version output with code 0
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn exit_code_for(e: &ElicitError) -> i32 {
    match e {
        ElicitError::UsageError(_) | ElicitError::ParseError { .. } => EXIT_USAGE,
        ElicitError::DomainError(_)
        | ElicitError::DomainViolation { .. }
        | ElicitError::DenominatorError { .. }
        | ElicitError::NotSymmetric { .. }
        | ElicitError::NonUniqueQuantile { .. }
        | ElicitError::Unsupported(_)
        | ElicitError::ConvexityError { .. }
        | ElicitError::PathOutsideDomain { .. } => EXIT_DOMAIN,
        ElicitError::NonFiniteIntegrand { .. } | ElicitError::Diverged { .. } => EXIT_INTERNAL,
    }
}

fn dispatch(cli: &Cli) -> Result<i32> {
    match &cli.command {
        Command::Compare { data, score } => {
            let dataset = parse_dataset(data)?;
            let score = parse_score(score)?;
            let output = cmd_compare(&dataset, &score, cli.format)?;
            print!("{output}");
            Ok(EXIT_OK)
        }
        Command::Properties { config } => {
            let cfg = Config::from_path(config)?;
            let out_dir = resolve_out(cli, &cfg);
            let (stdout, any_violated) = cmd_properties(&cfg, cli.seed, &out_dir)?;
            print!("{stdout}");
            Ok(if any_violated { EXIT_VIOLATED } else { EXIT_OK })
        }
        Command::Estimate { config } => {
            let cfg = Config::from_path(config)?;
            let out_dir = resolve_out(cli, &cfg);
            let stdout = cmd_estimate(&cfg, cli.seed, &out_dir, cli.format)?;
            print!("{stdout}");
            Ok(EXIT_OK)
        }
        Command::Simulate { config } => {
            let cfg = Config::from_path(config)?;
            let out_dir = resolve_out(cli, &cfg);
            let stdout = cmd_simulate(&cfg, cli.seed, &out_dir)?;
            print!("{stdout}");
            Ok(EXIT_OK)
        }
    }
}

fn resolve_out(cli: &Cli, cfg: &Config) -> PathBuf {
    cli.out
        .clone()
        .or_else(|| cfg.get("io", "out").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from("."))
}

/// All floating-point output carries 12 significant digits.
pub fn sig12(v: f64) -> String {
    format!("{:.11e}", v)
}

/// Realized mean scores per forecaster, ranked ascending, plus pairwise
/// mean-score differences.
pub fn cmd_compare(dataset: &Dataset, score: &Score, format: Format) -> Result<String> {
    if dataset.dim != score.dim() {
        return Err(ElicitError::DomainError(format!(
            "score expects dimension {}, dataset has {}",
            score.dim(),
            dataset.dim
        )));
    }
    let n = dataset.rows.len() as f64;
    let mut means: Vec<(String, f64)> = Vec::with_capacity(dataset.forecasters.len());
    for (fi, name) in dataset.forecasters.iter().enumerate() {
        let mut acc = 0.0;
        for (ri, row) in dataset.rows.iter().enumerate() {
            let x = &row.forecasts[fi];
            if !score.domain.contains(x) {
                return Err(ElicitError::DomainError(format!(
                    "forecast of {name:?} at data row {} lies outside the action domain",
                    ri + 2
                )));
            }
            acc += score.evaluate(x, row.y)?;
        }
        means.push((name.clone(), acc / n));
    }
    let mut ranked = means.clone();
    ranked.sort_by(|a, b| a.1.partial_cmp(&b.1).unwrap().then(a.0.cmp(&b.0)));

    match format {
        Format::Csv => {
            let mut out = String::from("rank,forecaster,mean_score\n");
            for (i, (name, v)) in ranked.iter().enumerate() {
                out.push_str(&format!("{},{},{}\n", i + 1, name, sig12(*v)));
            }
            out.push_str("\nforecaster_a,forecaster_b,mean_score_difference\n");
            for i in 0..means.len() {
                for j in (i + 1)..means.len() {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        means[i].0,
                        means[j].0,
                        sig12(means[i].1 - means[j].1)
                    ));
                }
            }
            Ok(out)
        }
        Format::Json => {
            use serde_json::json;
            let ranking: Vec<_> = ranked
                .iter()
                .enumerate()
                .map(|(i, (name, v))| {
                    json!({"rank": i + 1, "forecaster": name, "mean_score": sig12(*v)})
                })
                .collect();
            let mut pairwise = Vec::new();
            for i in 0..means.len() {
                for j in (i + 1)..means.len() {
                    pairwise.push(json!({
                        "forecaster_a": means[i].0,
                        "forecaster_b": means[j].0,
                        "mean_score_difference": sig12(means[i].1 - means[j].1),
                    }));
                }
            }
            let doc = json!({"ranking": ranking, "pairwise": pairwise});
            Ok(format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))
        }
    }
}

fn parse_grid_spec(spec: &str) -> Result<Vec<(f64, f64, usize)>> {
    spec.split(';')
        .map(|axis| {
            let parts: Vec<&str> = axis.split(',').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(ElicitError::UsageError(format!(
                    "grid axis needs lo,hi,n: {axis:?}"
                )));
            }
            let lo = parts[0]
                .parse::<f64>()
                .map_err(|_| ElicitError::UsageError(format!("bad grid bound {:?}", parts[0])))?;
            let hi = parts[1]
                .parse::<f64>()
                .map_err(|_| ElicitError::UsageError(format!("bad grid bound {:?}", parts[1])))?;
            let n = parts[2]
                .parse::<usize>()
                .map_err(|_| ElicitError::UsageError(format!("bad grid count {:?}", parts[2])))?;
            Ok((lo, hi, n))
        })
        .collect()
}

fn parse_dists(spec: &str) -> Result<Vec<Distribution>> {
    spec.split(';').map(parse_distribution).collect()
}

fn build_check_config(
    cfg: &Config,
    functional: &Functional,
    seed_override: Option<u64>,
) -> Result<CheckConfig> {
    let k = functional.output_dim();
    let grid = match cfg.get("check", "grid") {
        Some(spec) => {
            let grid = parse_grid_spec(spec)?;
            if grid.len() != k {
                return Err(ElicitError::UsageError(format!(
                    "grid has {} axes, functional needs {k}",
                    grid.len()
                )));
            }
            grid
        }
        None => vec![(-3.0, 3.0, 201); k],
    };
    let seed = seed_override
        .or(cfg.get_u64("check", "seed")?)
        .unwrap_or(7);
    let mut check = CheckConfig::with_seed(grid, seed)?;
    if let Some(tol) = cfg.get_f64("check", "tol_eq")? {
        check.tol_eq = tol;
    }
    if let Some(tol) = cfg.get_f64("check", "tol_mono")? {
        check.tol_mono = tol;
    }
    Ok(check)
}

/// Runs the configured verifiers; one JSON report file per property plus a
/// one-line verdict per property on stdout.
pub fn cmd_properties(
    cfg: &Config,
    seed_override: Option<u64>,
    out_dir: &Path,
) -> Result<(String, bool)> {
    let functional = parse_functional(cfg.require("functional", "literal")?)?;
    let check = build_check_config(cfg, &functional, seed_override)?;
    let dists = parse_dists(cfg.require("check", "dists")?)?;
    let requested: Vec<String> = cfg
        .require("check", "properties")?
        .split(',')
        .map(|p| p.trim().to_string())
        .collect();

    let score = cfg
        .get("score", "literal")
        .map(parse_score)
        .transpose()?;
    fn need_score(s: &Option<Score>) -> Result<&Score> {
        s.as_ref().ok_or_else(|| {
            ElicitError::UsageError("this property needs a [score] literal =".into())
        })
    }

    std::fs::create_dir_all(out_dir).map_err(|e| {
        ElicitError::UsageError(format!("cannot create {}: {e}", out_dir.display()))
    })?;

    let mut stdout = String::new();
    let mut any_violated = false;
    for prop in &requested {
        let report: PropertyReport = match prop.as_str() {
            "consistency" => {
                props::check_consistency(need_score(&score)?, &functional, &dists, &check)?
            }
            "componentwise" => props::check_order_sensitivity(
                need_score(&score)?,
                &functional,
                OrderSensitivity::Componentwise,
                &dists,
                &check,
            )?,
            "line_segments" => props::check_order_sensitivity(
                need_score(&score)?,
                &functional,
                OrderSensitivity::LineSegments,
                &dists,
                &check,
            )?,
            "metrical" => {
                let p = cfg.get_f64("check", "p")?.unwrap_or(2.0);
                props::check_order_sensitivity(
                    need_score(&score)?,
                    &functional,
                    OrderSensitivity::Metrical { p },
                    &dists,
                    &check,
                )?
            }
            "self_calibration" => {
                let eps = cfg.get_f64_list("check", "epsilons")?.ok_or_else(|| {
                    ElicitError::UsageError("self_calibration needs [check] epsilons =".into())
                })?;
                props::check_self_calibration(
                    need_score(&score)?,
                    &functional,
                    &dists,
                    &eps,
                    &check,
                )?
            }
            "orientation" => {
                let v = canonical_identification(&functional)?;
                props::check_orientation(&v, &dists, &check)?
            }
            other => {
                return Err(ElicitError::UsageError(format!(
                    "unknown property {other:?}"
                )))
            }
        };
        let path = out_dir.join(format!("{}.json", report.property));
        std::fs::write(&path, report.to_json()).map_err(|e| {
            ElicitError::UsageError(format!("cannot write {}: {e}", path.display()))
        })?;
        stdout.push_str(&format!("{}: {}\n", report.property, report.verdict.as_str()));
        any_violated |= report.verdict == Verdict::Violated;
    }
    Ok((stdout, any_violated))
}

/// Reads the y column of a CSV with an `id,y,...` or `y,...` header.
fn read_y_column(path: &Path) -> Result<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| ElicitError::UsageError(format!("cannot open {}: {e}", path.display())))?;
    let headers = reader
        .headers()
        .map_err(|e| ElicitError::ParseError {
            row: 1,
            detail: format!("unreadable header: {e}"),
        })?
        .clone();
    let y_col = headers.iter().position(|h| h == "y").ok_or_else(|| {
        ElicitError::ParseError {
            row: 1,
            detail: "no y column in header".into(),
        }
    })?;
    let mut ys = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let row = i + 2;
        let record = record.map_err(|e| ElicitError::ParseError {
            row,
            detail: format!("unreadable row: {e}"),
        })?;
        let cell = record.get(y_col).ok_or_else(|| ElicitError::ParseError {
            row,
            detail: "missing y cell".into(),
        })?;
        ys.push(cell.parse::<f64>().map_err(|_| ElicitError::ParseError {
            row,
            detail: format!("non-numeric y cell {cell:?}"),
        })?);
    }
    if ys.is_empty() {
        return Err(ElicitError::UsageError(format!(
            "{} contains no data rows",
            path.display()
        )));
    }
    Ok(ys)
}

/// Either fits a score on the y column of a data file, or runs a sampling
/// consistency experiment writing per-replication CSV and a JSON summary.
pub fn cmd_estimate(
    cfg: &Config,
    seed_override: Option<u64>,
    out_dir: &Path,
    format: Format,
) -> Result<String> {
    let score = parse_score(cfg.require("score", "literal")?)?;
    let seed = seed_override
        .or(cfg.get_u64("check", "seed")?)
        .unwrap_or(7);

    if let Some(data) = cfg.get("io", "data") {
        let ys = read_y_column(Path::new(data))?;
        let sample = mest::Sample {
            observations: ys,
            seed,
            source: data.to_string(),
        };
        let estimate = mest::fit(&score, &sample)?;
        let rendered: Vec<String> = estimate.iter().map(|v| sig12(*v)).collect();
        return Ok(match format {
            Format::Csv => format!("estimate\n{}\n", rendered.join(",")),
            Format::Json => format!(
                "{}\n",
                serde_json::json!({ "estimate": rendered })
            ),
        });
    }

    let functional = parse_functional(cfg.require("functional", "literal")?)?;
    let dist = parse_distribution(cfg.require("check", "dist")?)?;
    let ns: Vec<usize> = cfg
        .get_f64_list("check", "ns")?
        .ok_or_else(|| {
            ElicitError::UsageError("estimate needs [io] data = or [check] ns =".into())
        })?
        .into_iter()
        .map(|v| v as usize)
        .collect();
    let reps = cfg.get_u64("check", "reps")?.unwrap_or(10) as usize;
    let result = mest::consistency_experiment(&score, &functional, &dist, &ns, reps, seed)?;

    std::fs::create_dir_all(out_dir).map_err(|e| {
        ElicitError::UsageError(format!("cannot create {}: {e}", out_dir.display()))
    })?;
    let rows_path = out_dir.join("estimate_rows.csv");
    std::fs::write(&rows_path, result.to_csv())
        .map_err(|e| ElicitError::UsageError(format!("cannot write {}: {e}", rows_path.display())))?;
    let summary_path = out_dir.join("estimate_summary.json");
    std::fs::write(&summary_path, result.to_json_summary()).map_err(|e| {
        ElicitError::UsageError(format!("cannot write {}: {e}", summary_path.display()))
    })?;

    let mut out = String::from("n,mean_error,max_error\n");
    for agg in &result.aggregates {
        out.push_str(&format!(
            "{},{},{}\n",
            agg.n,
            sig12(agg.mean_error),
            sig12(agg.max_error)
        ));
    }
    out.push_str(&format!("consistent_trend,{}\n", result.consistent_trend));
    Ok(out)
}

/// Ranking-divergence experiment between two scores for fixed forecasts.
pub fn cmd_simulate(cfg: &Config, seed_override: Option<u64>, out_dir: &Path) -> Result<String> {
    let s1 = parse_score(cfg.require("score", "literal")?)?;
    let s2 = parse_score(cfg.require("score", "literal2")?)?;
    let dist = parse_distribution(cfg.require("check", "dist")?)?;
    let a = cfg
        .get_f64_list("check", "forecast_a")?
        .ok_or_else(|| ElicitError::UsageError("simulate needs [check] forecast_a =".into()))?;
    let b = cfg
        .get_f64_list("check", "forecast_b")?
        .ok_or_else(|| ElicitError::UsageError("simulate needs [check] forecast_b =".into()))?;
    let n = cfg.get_u64("check", "n")?.unwrap_or(100) as usize;
    let reps = cfg.get_u64("check", "reps")?.unwrap_or(20) as usize;
    let seed = seed_override
        .or(cfg.get_u64("check", "seed")?)
        .unwrap_or(7);

    let result = mest::ranking_experiment(&s1, &s2, &dist, &a, &b, n, reps, seed)?;

    std::fs::create_dir_all(out_dir).map_err(|e| {
        ElicitError::UsageError(format!("cannot create {}: {e}", out_dir.display()))
    })?;
    let rows_path = out_dir.join("simulate_rows.csv");
    std::fs::write(&rows_path, result.to_csv())
        .map_err(|e| ElicitError::UsageError(format!("cannot write {}: {e}", rows_path.display())))?;
    let summary_path = out_dir.join("simulate_summary.json");
    std::fs::write(&summary_path, result.to_json_summary()).map_err(|e| {
        ElicitError::UsageError(format!("cannot write {}: {e}", summary_path.display()))
    })?;

    Ok(format!(
        "disagreement_fraction,{}\npopulation_diff_s1,{}\npopulation_diff_s2,{}\n",
        sig12(result.disagreement_fraction),
        sig12(result.population_diff_s1),
        sig12(result.population_diff_s2)
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn write_temp(content: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(content.as_bytes()).unwrap();
        f
    }

    fn three_row_dataset() -> Dataset {
        Dataset {
            forecasters: vec!["a".into(), "b".into()],
            dim: 1,
            rows: vec![
                DataRow {
                    id: "1".into(),
                    y: 0.0,
                    forecasts: vec![vec![0.0], vec![1.0]],
                },
                DataRow {
                    id: "2".into(),
                    y: 0.0,
                    forecasts: vec![vec![0.0], vec![1.0]],
                },
                DataRow {
                    id: "3".into(),
                    y: 0.0,
                    forecasts: vec![vec![0.0], vec![1.0]],
                },
            ],
        }
    }

    #[test]
    fn compare_ranks_hindsight_first() {
        let score = parse_score("mean_sq").unwrap();
        let out = cmd_compare(&three_row_dataset(), &score, Format::Csv).unwrap();
        let mut lines = out.lines();
        assert_eq!(lines.next().unwrap(), "rank,forecaster,mean_score");
        assert!(lines.next().unwrap().starts_with("1,a,0"));
        assert!(lines.next().unwrap().starts_with("2,b,5.00000000000e-1"));
    }

    #[test]
    fn compare_pairwise_difference() {
        let score = parse_score("mean_sq").unwrap();
        let out = cmd_compare(&three_row_dataset(), &score, Format::Csv).unwrap();
        assert!(out.contains("a,b,-5.00000000000e-1"));
    }

    #[test]
    fn compare_rejects_dimension_mismatch() {
        let score = parse_score("mv_hom").unwrap();
        assert!(cmd_compare(&three_row_dataset(), &score, Format::Csv).is_err());
    }

    #[test]
    fn compare_pinball_hindsight_is_zero() {
        let dataset = Dataset {
            forecasters: vec!["oracle".into()],
            dim: 1,
            rows: vec![DataRow {
                id: "1".into(),
                y: 0.7,
                forecasts: vec![vec![0.7]],
            }],
        };
        let score = parse_score("pinball:alpha=0.3").unwrap();
        let out = cmd_compare(&dataset, &score, Format::Csv).unwrap();
        assert!(out.contains("1,oracle,0.00000000000e0"));
    }

    #[test]
    fn properties_command_writes_reports() {
        let cfg = Config::parse(
            "[functional]\nliteral = mean\n[score]\nliteral = mean_sq\n\
             [check]\nproperties = consistency, metrical\ndists = normal: 0, 1\n",
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (stdout, violated) = cmd_properties(&cfg, None, dir.path()).unwrap();
        assert!(stdout.contains("consistency: holds_on_probes"));
        assert!(!violated);
        assert!(dir.path().join("consistency.json").exists());
        assert!(dir.path().join("order_sensitivity_metrical_p2.json").exists());
    }

    #[test]
    fn properties_flags_pinball_metrical_falsification() {
        let cfg = Config::parse(
            "[functional]\nliteral = quantile:alpha=0.1\n[score]\nliteral = pinball:alpha=0.1\n\
             [check]\nproperties = metrical\ndists = normal: 0, 1\n",
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let (stdout, violated) = cmd_properties(&cfg, None, dir.path()).unwrap();
        assert!(violated);
        assert!(stdout.contains("violated"));
    }

    #[test]
    fn properties_rejects_unknown_property_and_bad_literal() {
        let cfg = Config::parse(
            "[functional]\nliteral = mean\n[score]\nliteral = mean_sq\n\
             [check]\nproperties = monotone\ndists = normal: 0, 1\n",
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            cmd_properties(&cfg, None, dir.path()),
            Err(ElicitError::UsageError(_))
        ));
        let cfg = Config::parse(
            "[functional]\nliteral = mean\n[score]\nliteral = nonsense\n\
             [check]\nproperties = consistency\ndists = normal: 0, 1\n",
        )
        .unwrap();
        assert!(matches!(
            cmd_properties(&cfg, None, dir.path()),
            Err(ElicitError::UsageError(_))
        ));
    }

    #[test]
    fn estimate_fits_sample_median_from_csv() {
        let data = write_temp("id,y,a\n1,0.0,0\n2,1.0,0\n3,2.0,0\n");
        let cfg = Config::parse(&format!(
            "[score]\nliteral = pinball:alpha=0.5\n[io]\ndata = {}\n",
            data.path().display()
        ))
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = cmd_estimate(&cfg, None, dir.path(), Format::Csv).unwrap();
        let value: f64 = out.lines().nth(1).unwrap().parse().unwrap();
        assert!((value - 1.0).abs() < 1e-6, "median estimate {value}");
    }

    #[test]
    fn estimate_runs_consistency_experiment() {
        let cfg = Config::parse(
            "[functional]\nliteral = mean\n[score]\nliteral = mean_sq\n\
             [check]\ndist = discrete: 0:0.5, 1:0.5\nns = 20, 80\nreps = 3\nseed = 5\n",
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = cmd_estimate(&cfg, None, dir.path(), Format::Csv).unwrap();
        assert!(out.starts_with("n,mean_error,max_error\n"));
        assert!(dir.path().join("estimate_rows.csv").exists());
        assert!(dir.path().join("estimate_summary.json").exists());
    }

    #[test]
    fn simulate_reports_population_divergence() {
        let cfg = Config::parse(
            "[score]\nliteral = mean_sq\nliteral2 = mean_sq\n\
             [check]\ndist = normal: 0, 1\nforecast_a = 0.5\nforecast_b = 0.5\nn = 20\nreps = 2\n",
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let out = cmd_simulate(&cfg, None, dir.path()).unwrap();
        assert!(out.starts_with("disagreement_fraction,0.00000000000e0"));
        assert!(dir.path().join("simulate_rows.csv").exists());
    }

    #[test]
    fn y_column_reader_reports_rows() {
        let data = write_temp("id,y\n1,0.5\n2,nope\n");
        match read_y_column(data.path()) {
            Err(ElicitError::ParseError { row, .. }) => assert_eq!(row, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
