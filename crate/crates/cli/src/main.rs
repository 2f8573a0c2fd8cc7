//! Command-line driver: seeded optimization batches with CSV artifacts,
//! nonparametric comparison of summary files, single-design verification,
//! and the reinforcement catalog.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use wallopt_core::experiment::{
    read_summary_csv, run_experiment, Algorithm, CaseSummary, ExperimentConfig, Profile,
};
use wallopt_core::limit_state::evaluate_design;
use wallopt_core::objective::{evaluate_objective, Objective};
use wallopt_core::stats::{friedman_ranks, wilcoxon_signed_rank};
use wallopt_core::wall::{preset, seismic_cases, DesignParameters, DesignVector, Example, N_VAR};
use wallopt_core::Catalog;

#[derive(Parser)]
#[command(name = "wallopt", version, about = "Seismic retaining-wall design optimization")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an optimization batch and write CSV artifacts.
    Run(RunArgs),
    /// Friedman ranks and pairwise Wilcoxon tests over summary files.
    Stats(StatsArgs),
    /// Evaluate one design file: constraints, safety factors, objectives.
    Check(CheckArgs),
    /// Print the 223-entry reinforcement catalog.
    Catalog,
}

#[derive(Args)]
struct RunArgs {
    /// Built-in example preset: 1 or 2.
    #[arg(long, default_value = "1")]
    example: String,
    /// Loading cases, e.g. "1", "1,3,9", or "all".
    #[arg(long = "case", default_value = "1")]
    cases: String,
    /// cost | weight | co2.
    #[arg(long, default_value = "cost")]
    objective: Objective,
    /// faglsud | pso | de.
    #[arg(long, default_value = "faglsud")]
    algo: Algorithm,
    /// Independent runs per case.
    #[arg(long)]
    runs: Option<usize>,
    /// Iterations per run.
    #[arg(long)]
    iters: Option<usize>,
    /// Population size.
    #[arg(long, default_value_t = 50)]
    pop: usize,
    /// Root seed; per-run streams are derived from it.
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Output directory for CSV artifacts.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Named preset for runs × iterations: ci (11 × 300) or full (101 × 1000).
    #[arg(long, default_value = "full")]
    profile: Profile,
    /// Design parameters TOML (Table-9 symbol keys) replacing the preset's.
    #[arg(long)]
    params: Option<PathBuf>,
    /// Experiment config TOML; its values override the flags.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// Optional overrides mirroring the `run` flags.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RunFileConfig {
    example: Option<String>,
    cases: Option<String>,
    objective: Option<Objective>,
    algo: Option<Algorithm>,
    runs: Option<usize>,
    iters: Option<usize>,
    pop: Option<usize>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    profile: Option<String>,
    params: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    /// Two or more `name=summary.csv` entries; the first is the reference.
    #[arg(required = true, num_args = 2..)]
    inputs: Vec<String>,
}

#[derive(Args)]
struct CheckArgs {
    /// File with 12 whitespace/comma-separated values: X1..X8 R1..R4.
    #[arg(long)]
    design: PathBuf,
    #[arg(long, default_value = "1")]
    example: String,
    /// Loading case 1..=9.
    #[arg(long, default_value_t = 1)]
    case: usize,
    /// Design parameters TOML replacing the preset's.
    #[arg(long)]
    params: Option<PathBuf>,
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::Run(args) => cmd_run(args),
        Command::Stats(args) => cmd_stats(args),
        Command::Check(args) => cmd_check(args),
        Command::Catalog => cmd_catalog(),
    }
}

fn load_example(name: &str, params_file: Option<&PathBuf>) -> Result<Example> {
    let mut example = preset(name).map_err(|e| anyhow!("{e}"))?;
    if let Some(path) = params_file {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        example.params = DesignParameters::from_toml_str(&text).map_err(|e| anyhow!("{e}"))?;
    }
    Ok(example)
}

fn parse_cases(spec: &str) -> Result<Vec<usize>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok((1..=9).collect());
    }
    spec.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<usize>()
                .with_context(|| format!("bad case {tok:?}"))
        })
        .collect()
}

fn cmd_run(mut args: RunArgs) -> Result<()> {
    if let Some(path) = &args.config {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        let file: RunFileConfig = toml::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))?;
        // File values override flags.
        if let Some(v) = file.example {
            args.example = v;
        }
        if let Some(v) = file.cases {
            args.cases = v;
        }
        if let Some(v) = file.objective {
            args.objective = v;
        }
        if let Some(v) = file.algo {
            args.algo = v;
        }
        if let Some(v) = file.runs {
            args.runs = Some(v);
        }
        if let Some(v) = file.iters {
            args.iters = Some(v);
        }
        if let Some(v) = file.pop {
            args.pop = v;
        }
        if let Some(v) = file.seed {
            args.seed = v;
        }
        if let Some(v) = file.out {
            args.out = Some(v);
        }
        if let Some(v) = file.profile {
            args.profile = v.parse().map_err(|e: String| anyhow!(e))?;
        }
        if let Some(v) = file.params {
            args.params = Some(v);
        }
    }

    let example = load_example(&args.example, args.params.as_ref())?;
    let config = ExperimentConfig {
        example,
        cases: parse_cases(&args.cases)?,
        objective: args.objective,
        algorithm: args.algo,
        runs: args.runs.unwrap_or_else(|| args.profile.runs()),
        population: args.pop,
        iterations: args.iters.unwrap_or_else(|| args.profile.iterations()),
        seed: args.seed,
        out_dir: args.out.clone(),
    };

    eprintln!(
        "running {} on {} ({}), {} runs x {} iterations, cases {:?}, seed {}",
        config.algorithm.name(),
        config.example.name,
        config.objective.name(),
        config.runs,
        config.iterations,
        config.cases,
        config.seed
    );
    let results = run_experiment(&config)?;

    println!("case      mean        sd      best     worst  feasible");
    for result in &results {
        let s = &result.summary;
        let feasible = result.records.iter().filter(|r| r.best_feasible).count();
        println!(
            "{:>4} {:>9.2} {:>9.2} {:>9.2} {:>9.2} {:>6}/{}",
            s.case,
            s.mean,
            s.sd,
            s.best,
            s.worst,
            feasible,
            result.records.len()
        );
    }
    if let Some(dir) = &config.out_dir {
        eprintln!("artifacts written under {}", dir.display());
    }
    Ok(())
}

fn cmd_stats(args: StatsArgs) -> Result<()> {
    let mut entries: Vec<(String, Vec<CaseSummary>)> = Vec::new();
    for input in &args.inputs {
        let (name, path) = input
            .split_once('=')
            .ok_or_else(|| anyhow!("expected name=path, got {input:?}"))?;
        let summaries = read_summary_csv(&PathBuf::from(path))?;
        entries.push((name.to_string(), summaries));
    }
    let case_set: Vec<usize> = entries[0].1.iter().map(|s| s.case).collect();
    for (name, summaries) in &entries[1..] {
        let cases: Vec<usize> = summaries.iter().map(|s| s.case).collect();
        if cases != case_set {
            bail!(
                "case sets differ: {} covers {:?}, {} covers {:?}",
                entries[0].0,
                case_set,
                name,
                cases
            );
        }
    }

    // Friedman ranking over the per-case means.
    let means: Vec<Vec<f64>> = (0..case_set.len())
        .map(|row| entries.iter().map(|(_, s)| s[row].mean).collect())
        .collect();
    let friedman = friedman_ranks(&means).map_err(|e| anyhow!("{e}"))?;

    println!("Friedman ranks (1 = lowest mean)");
    print!("{:>6}", "case");
    for (name, _) in &entries {
        print!(" {name:>12}");
    }
    println!();
    for (row, &case) in case_set.iter().enumerate() {
        print!("{case:>6}");
        for a in 0..entries.len() {
            print!(" {:>12.2}", friedman.ranks[row][a]);
        }
        println!();
    }
    print!("{:>6}", "avg");
    for a in 0..entries.len() {
        print!(" {:>12.2}", friedman.average_ranks[a]);
    }
    println!();
    print!("{:>6}", "rank");
    for a in 0..entries.len() {
        print!(" {:>12.0}", friedman.overall_ranks[a]);
    }
    println!();

    // Pairwise Wilcoxon: reference vs each other algorithm.
    let (ref_name, ref_summaries) = &entries[0];
    let ref_means: Vec<f64> = ref_summaries.iter().map(|s| s.mean).collect();
    for (name, summaries) in &entries[1..] {
        let other: Vec<f64> = summaries.iter().map(|s| s.mean).collect();
        let w = wilcoxon_signed_rank(&ref_means, &other).map_err(|e| anyhow!("{e}"))?;
        println!();
        println!("Wilcoxon signed-rank: {ref_name} vs {name}");
        println!("{:>6} {:>12} {:>12} {:>12} {:>6}", "case", ref_name, name, "diff", "rank");
        let diffs: Vec<f64> = ref_means.iter().zip(&other).map(|(a, b)| a - b).collect();
        let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
        let ranks = wallopt_core::stats::rank_with_ties(&abs);
        for (i, &case) in case_set.iter().enumerate() {
            println!(
                "{case:>6} {:>12.2} {:>12.2} {:>+12.2} {:>6.2}",
                ref_means[i], other[i], diffs[i], ranks[i]
            );
        }
        if w.undefined {
            println!("all differences zero: test undefined, not significant");
        } else {
            let crit = w
                .w_crit
                .map(|c| c.to_string())
                .unwrap_or_else(|| "n/a (n < 6)".to_string());
            println!(
                "T+ = {}, T- = {}, W_stat = {}, W_crit = {} (n = {}): {}",
                w.t_plus,
                w.t_minus,
                w.w_stat,
                crit,
                w.n_used,
                if w.significant {
                    "significant difference"
                } else {
                    "no significant difference"
                }
            );
        }
    }
    Ok(())
}

fn cmd_check(args: CheckArgs) -> Result<()> {
    if !(1..=9).contains(&args.case) {
        bail!("case {} out of range 1..=9", args.case);
    }
    let example = load_example(&args.example, args.params.as_ref())?;
    let text = std::fs::read_to_string(&args.design)
        .with_context(|| format!("reading {}", args.design.display()))?;
    let values: Vec<f64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().with_context(|| format!("bad value {t:?}")))
        .collect::<Result<_>>()?;
    if values.len() != N_VAR {
        bail!("expected 12 values (X1..X8 R1..R4), got {}", values.len());
    }
    let mut position = [0.0; N_VAR];
    position.copy_from_slice(&values);
    let design = DesignVector::from_position(&position);
    if !example.bounds.contains(&position) {
        eprintln!("note: design lies outside the example bounds; evaluating anyway");
    }

    let catalog = Catalog::build().map_err(|e| anyhow!("{e}"))?;
    let case = seismic_cases()[args.case - 1];
    let assessment =
        evaluate_design(&design, &example.params, case, &catalog).map_err(|e| anyhow!("{e}"))?;
    let objectives = evaluate_objective(&design, &example.params, &catalog);

    println!(
        "design: X = {:?}, R = {:?}",
        design.x.map(|v| (v * 1000.0).round() / 1000.0),
        design.r
    );
    println!(
        "case {} (k_h = {}, k_v = {})",
        args.case, case.k_h, case.k_v
    );
    let st = &assessment.stability;
    println!(
        "FS_overturning = {:.3}  FS_sliding = {:.3}  FS_bearing = {:.3}",
        st.fs_overturning, st.fs_sliding, st.fs_bearing
    );
    println!(
        "e = {:.4} m  q_max = {:.2} kPa  q_min = {:.2} kPa  q_ult = {:.2} kPa",
        st.eccentricity, st.q_max, st.q_min, st.q_ultimate
    );
    println!(
        "cost = {:.2} USD/m  weight = {:.2} kg/m  co2 = {:.2} kg/m",
        objectives.cost, objectives.weight, objectives.co2
    );
    println!("constraints (g <= 0 is feasible):");
    for (i, g) in assessment.constraints.g.iter().enumerate() {
        let mark = if *g > 0.0 { " VIOLATED" } else { "" };
        println!("  g{:<2} = {:+.6}{}", i + 1, g, mark);
    }
    let max_violation = assessment.constraints.max_violation();
    if max_violation <= 0.0 {
        println!("feasible: yes");
    } else {
        println!("feasible: no (max violation {max_violation:.6})");
    }
    Ok(())
}

fn cmd_catalog() -> Result<()> {
    let catalog = Catalog::build().map_err(|e| anyhow!("{e}"))?;
    println!("index count diameter_mm area_cm2");
    for (i, entry) in catalog.entries().iter().enumerate() {
        println!(
            "{:>5} {:>5} {:>11} {:>8.3}",
            i + 1,
            entry.count,
            entry.diameter_mm,
            entry.area_cm2
        );
    }
    Ok(())
}
