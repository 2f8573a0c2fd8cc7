//! Seeded run batches over {example} × {cases} × {objective} × {algorithm}
//! and their CSV artifacts.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::baseline::{run_de, run_pso, DeConfig, PsoConfig};
use crate::objective::Objective;
use crate::optimizer::{run as run_faglsud, FaglsudConfig, RunRecord};
use crate::problem::WallProblem;
use crate::wall::{seismic_cases, Example, ParamError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Faglsud,
    Pso,
    De,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Faglsud => "faglsud",
            Algorithm::Pso => "pso",
            Algorithm::De => "de",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "faglsud" => Ok(Algorithm::Faglsud),
            "pso" => Ok(Algorithm::Pso),
            "de" => Ok(Algorithm::De),
            other => Err(format!("unknown algorithm {other:?}")),
        }
    }
}

/// Run-count/iteration presets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    /// 11 runs × 300 iterations: desk-scale checks.
    Ci,
    /// 101 runs × 1000 iterations: the full protocol.
    Full,
}

impl Profile {
    pub fn runs(&self) -> usize {
        match self {
            Profile::Ci => 11,
            Profile::Full => 101,
        }
    }
    pub fn iterations(&self) -> usize {
        match self {
            Profile::Ci => 300,
            Profile::Full => 1000,
        }
    }
}

impl std::str::FromStr for Profile {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ci" => Ok(Profile::Ci),
            "full" => Ok(Profile::Full),
            other => Err(format!("unknown profile {other:?}, expected ci or full")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub example: Example,
    /// 1-based case numbers, each in 1..=9.
    pub cases: Vec<usize>,
    pub objective: Objective,
    pub algorithm: Algorithm,
    pub runs: usize,
    pub population: usize,
    pub iterations: usize,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), ExperimentError> {
        if self.runs < 1 {
            return Err(ExperimentError::Invalid("runs must be >= 1".into()));
        }
        if self.population < 2 {
            return Err(ExperimentError::Invalid("population must be >= 2".into()));
        }
        if self.iterations < 1 {
            return Err(ExperimentError::Invalid("iterations must be >= 1".into()));
        }
        if self.cases.is_empty() {
            return Err(ExperimentError::Invalid("at least one case required".into()));
        }
        for &case in &self.cases {
            if !(1..=9).contains(&case) {
                return Err(ExperimentError::Invalid(format!(
                    "case {case} out of range 1..=9"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    Invalid(String),
    #[error(transparent)]
    Params(#[from] ParamError),
    #[error("pressure model: {0}")]
    Pressure(#[from] crate::pressure::PressureError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("summary file {0}: {1}")]
    Summary(PathBuf, String),
}

/// Per-case batch statistics over the final best raw objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseSummary {
    pub case: usize,
    pub mean: f64,
    pub sd: f64,
    pub best: f64,
    pub worst: f64,
}

#[derive(Debug)]
pub struct CaseResult {
    pub case: usize,
    pub records: Vec<RunRecord>,
    pub summary: CaseSummary,
}

/// SplitMix64 step: decorrelates per-run streams from one root seed.
pub fn derive_seed(root: u64, stream: u64) -> u64 {
    let mut z = root
        .wrapping_add(0x9E3779B97F4A7C15u64.wrapping_mul(stream.wrapping_add(1)));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn run_one(
    problem: &WallProblem,
    algorithm: Algorithm,
    population: usize,
    iterations: usize,
    seed: u64,
) -> RunRecord {
    match algorithm {
        Algorithm::Faglsud => {
            let config = FaglsudConfig {
                population,
                iterations,
                empires: FaglsudConfig::default().empires.min(population - 1),
                ..FaglsudConfig::default()
            };
            run_faglsud(problem, &config, seed)
        }
        Algorithm::Pso => {
            let config = PsoConfig {
                population,
                iterations,
                ..PsoConfig::default()
            };
            run_pso(problem, &config, seed)
        }
        Algorithm::De => {
            let config = DeConfig {
                population,
                iterations,
                ..DeConfig::default()
            };
            run_de(problem, &config, seed)
        }
    }
}

fn summarize(case: usize, records: &[RunRecord]) -> CaseSummary {
    let finals: Vec<f64> = records.iter().map(|r| r.best_raw).collect();
    let n = finals.len() as f64;
    let mean = finals.iter().sum::<f64>() / n;
    let sd = if finals.len() > 1 {
        (finals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let best = finals.iter().copied().fold(f64::INFINITY, f64::min);
    let worst = finals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    CaseSummary {
        case,
        mean,
        sd,
        best,
        worst,
    }
}

/// Runs one batch for a single case; runs execute in parallel, each on its
/// own derived stream, so results are independent of scheduling order.
pub fn run_case_batch(
    config: &ExperimentConfig,
    case_number: usize,
) -> Result<CaseResult, ExperimentError> {
    let case = seismic_cases()[case_number - 1];
    let problem = WallProblem::new(&config.example, case, config.objective)?;
    let case_root = derive_seed(config.seed, case_number as u64);
    let records: Vec<RunRecord> = (0..config.runs)
        .into_par_iter()
        .map(|run_idx| {
            let seed = derive_seed(case_root, run_idx as u64);
            run_one(
                &problem,
                config.algorithm,
                config.population,
                config.iterations,
                seed,
            )
        })
        .collect();
    let summary = summarize(case_number, &records);
    Ok(CaseResult {
        case: case_number,
        records,
        summary,
    })
}

/// Executes the full experiment and, when an output directory is set,
/// writes `summary.csv` plus per-case `convergence.csv` / `designs.csv`.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<CaseResult>, ExperimentError> {
    config.validate()?;
    let mut results = Vec::with_capacity(config.cases.len());
    for &case_number in &config.cases {
        let result = run_case_batch(config, case_number)?;
        if let Some(dir) = &config.out_dir {
            write_case_files(dir, &result)?;
        }
        results.push(result);
    }
    if let Some(dir) = &config.out_dir {
        write_summary_csv(
            &dir.join("summary.csv"),
            &results.iter().map(|r| r.summary.clone()).collect::<Vec<_>>(),
        )?;
    }
    Ok(results)
}

fn write_case_files(dir: &Path, result: &CaseResult) -> Result<(), ExperimentError> {
    let case_dir = dir.join(format!("case{}", result.case));
    fs::create_dir_all(&case_dir)?;

    let mut conv = fs::File::create(case_dir.join("convergence.csv"))?;
    writeln!(conv, "run_id,iteration,best_penalized,best_raw")?;
    for (run_id, record) in result.records.iter().enumerate() {
        for (iter_idx, (pen, raw)) in record
            .history
            .iter()
            .zip(&record.raw_history)
            .enumerate()
        {
            writeln!(conv, "{},{},{},{}", run_id, iter_idx + 1, pen, raw)?;
        }
    }

    let mut designs = fs::File::create(case_dir.join("designs.csv"))?;
    writeln!(
        designs,
        "run_id,x1,x2,x3,x4,x5,x6,x7,x8,r1,r2,r3,r4,objective,feasible"
    )?;
    for (run_id, record) in result.records.iter().enumerate() {
        let design = record.best_design();
        let xs = design
            .x
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        let rs = design
            .r
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        writeln!(
            designs,
            "{},{},{},{},{}",
            run_id, xs, rs, record.best_raw, record.best_feasible
        )?;
    }
    Ok(())
}

pub fn write_summary_csv(path: &Path, summaries: &[CaseSummary]) -> Result<(), ExperimentError> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent)?;
    }
    let mut file = fs::File::create(path)?;
    writeln!(file, "case,mean,sd,best,worst")?;
    for s in summaries {
        writeln!(file, "{},{},{},{},{}", s.case, s.mean, s.sd, s.best, s.worst)?;
    }
    Ok(())
}

/// Reads a summary.csv produced by [`run_experiment`].
pub fn read_summary_csv(path: &Path) -> Result<Vec<CaseSummary>, ExperimentError> {
    let mut reader = csv::Reader::from_path(path)
        .map_err(|e| ExperimentError::Summary(path.to_path_buf(), e.to_string()))?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record?;
        let field = |i: usize| -> Result<f64, ExperimentError> {
            record
                .get(i)
                .and_then(|s| s.parse::<f64>().ok())
                .ok_or_else(|| {
                    ExperimentError::Summary(path.to_path_buf(), format!("bad field {i}"))
                })
        };
        out.push(CaseSummary {
            case: field(0)? as usize,
            mean: field(1)?,
            sd: field(2)?,
            best: field(3)?,
            worst: field(4)?,
        });
    }
    if out.is_empty() {
        return Err(ExperimentError::Summary(
            path.to_path_buf(),
            "no data rows".into(),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wall::example1;

    fn tiny_config(dir: Option<PathBuf>) -> ExperimentConfig {
        ExperimentConfig {
            example: example1(),
            cases: vec![1],
            objective: Objective::Cost,
            algorithm: Algorithm::Pso,
            runs: 3,
            population: 10,
            iterations: 10,
            seed: 99,
            out_dir: dir,
        }
    }

    #[test]
    fn derive_seed_spreads_streams() {
        let a = derive_seed(1, 0);
        let b = derive_seed(1, 1);
        let c = derive_seed(2, 0);
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_eq!(a, derive_seed(1, 0));
    }

    #[test]
    fn convergence_row_count_contract() {
        let dir = std::env::temp_dir().join(format!("wallopt-test-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let config = tiny_config(Some(dir.clone()));
        run_experiment(&config).unwrap();
        let text = fs::read_to_string(dir.join("case1/convergence.csv")).unwrap();
        // Header plus runs × iterations data rows.
        assert_eq!(text.lines().count(), 1 + 3 * 10);
        let designs = fs::read_to_string(dir.join("case1/designs.csv")).unwrap();
        assert_eq!(designs.lines().count(), 1 + 3);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn rerun_is_byte_identical() {
        let dir1 = std::env::temp_dir().join(format!("wallopt-det-a-{}", std::process::id()));
        let dir2 = std::env::temp_dir().join(format!("wallopt-det-b-{}", std::process::id()));
        for d in [&dir1, &dir2] {
            let _ = fs::remove_dir_all(d);
            run_experiment(&tiny_config(Some(d.clone()))).unwrap();
        }
        for file in ["summary.csv", "case1/convergence.csv", "case1/designs.csv"] {
            let a = fs::read(dir1.join(file)).unwrap();
            let b = fs::read(dir2.join(file)).unwrap();
            assert_eq!(a, b, "{file} differs between identical runs");
        }
        fs::remove_dir_all(&dir1).unwrap();
        fs::remove_dir_all(&dir2).unwrap();
    }

    #[test]
    fn summary_roundtrip() {
        let dir = std::env::temp_dir().join(format!("wallopt-sum-{}", std::process::id()));
        let _ = fs::remove_dir_all(&dir);
        let config = tiny_config(Some(dir.clone()));
        let results = run_experiment(&config).unwrap();
        let read = read_summary_csv(&dir.join("summary.csv")).unwrap();
        assert_eq!(read.len(), 1);
        assert_eq!(read[0].case, 1);
        assert!((read[0].mean - results[0].summary.mean).abs() < 1e-12);
        fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut c = tiny_config(None);
        c.runs = 0;
        assert!(c.validate().is_err());
        let mut c = tiny_config(None);
        c.cases = vec![10];
        assert!(c.validate().is_err());
        let mut c = tiny_config(None);
        c.cases.clear();
        assert!(c.validate().is_err());
    }
}
