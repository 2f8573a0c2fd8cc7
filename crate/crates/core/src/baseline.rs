//! Reference optimizers sharing the penalized fitness path: a global-best
//! PSO with damped inertia, and DE/rand/1/bin.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::optimizer::{initialize, RunRecord};
use crate::problem::Fitness;
use crate::wall::N_VAR;

#[derive(Debug, Clone)]
pub struct PsoConfig {
    pub population: usize,
    pub iterations: usize,
    /// Starting inertia weight; multiplied by `damping` each iteration.
    pub inertia: f64,
    pub damping: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Velocity limit as a fraction of the variable span.
    pub velocity_fraction: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        PsoConfig {
            population: 50,
            iterations: 1000,
            inertia: 1.0,
            damping: 0.99,
            cognitive: 1.5,
            social: 2.0,
            velocity_fraction: 0.1,
        }
    }
}

/// Global-best particle swarm with per-dimension random factors, velocity
/// clamping, and reflective bound handling.
pub fn run_pso<F: Fitness + ?Sized>(problem: &F, config: &PsoConfig, seed: u64) -> RunRecord {
    let started = std::time::Instant::now();
    let bounds = problem.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0u64;

    let mut positions = initialize(bounds, config.population, &mut rng);
    let mut velocities = vec![[0.0f64; N_VAR]; config.population];
    let mut evals: Vec<_> = positions
        .iter()
        .map(|p| {
            evaluations += 1;
            problem.evaluate(p)
        })
        .collect();
    let mut best_positions = positions.clone();
    let mut best_evals = evals.clone();
    let mut best_powers: Vec<f64> = evals.iter().map(|e| e.power).collect();

    let g_idx = argmax(&best_powers);
    let mut g_pos = best_positions[g_idx];
    let mut g_eval = evals[g_idx];

    let vel_max: Vec<f64> = (0..N_VAR)
        .map(|d| config.velocity_fraction * bounds.span(d))
        .collect();

    let mut inertia = config.inertia;
    let mut history = Vec::with_capacity(config.iterations);
    let mut raw_history = Vec::with_capacity(config.iterations);
    for _ in 0..config.iterations {
        for i in 0..config.population {
            for d in 0..N_VAR {
                let r1 = rng.gen::<f64>();
                let r2 = rng.gen::<f64>();
                let v = inertia * velocities[i][d]
                    + config.cognitive * r1 * (best_positions[i][d] - positions[i][d])
                    + config.social * r2 * (g_pos[d] - positions[i][d]);
                let v = v.clamp(-vel_max[d], vel_max[d]);
                velocities[i][d] = v;
                positions[i][d] += v;
                if positions[i][d] > bounds.upper[d] {
                    positions[i][d] = bounds.upper[d];
                    velocities[i][d] = -velocities[i][d];
                } else if positions[i][d] < bounds.lower[d] {
                    positions[i][d] = bounds.lower[d];
                    velocities[i][d] = -velocities[i][d];
                }
            }
            let eval = problem.evaluate(&positions[i]);
            evaluations += 1;
            evals[i] = eval;
            if eval.power > best_powers[i] {
                best_powers[i] = eval.power;
                best_positions[i] = positions[i];
                best_evals[i] = eval;
            }
        }
        let candidate = argmax(&best_powers);
        if best_powers[candidate] > g_eval.power {
            g_pos = best_positions[candidate];
            g_eval = best_evals[candidate];
        }
        inertia *= config.damping;
        history.push(g_eval.penalized);
        raw_history.push(g_eval.raw);
    }

    RunRecord {
        history,
        raw_history,
        best_position: g_pos,
        best_penalized: g_eval.penalized,
        best_raw: g_eval.raw,
        best_feasible: g_eval.feasible,
        seed,
        evaluations,
        wall_seconds: started.elapsed().as_secs_f64(),
    }
}

#[derive(Debug, Clone)]
pub struct DeConfig {
    pub population: usize,
    pub iterations: usize,
    /// Differential scaling factor F.
    pub scaling: f64,
    /// Crossover probability pCR.
    pub crossover: f64,
}

impl Default for DeConfig {
    fn default() -> Self {
        DeConfig {
            population: 50,
            iterations: 1000,
            scaling: 0.2,
            crossover: 0.01,
        }
    }
}

/// Panmictic DE/rand/1/bin with greedy selection and clamped trials.
pub fn run_de<F: Fitness + ?Sized>(problem: &F, config: &DeConfig, seed: u64) -> RunRecord {
    let started = std::time::Instant::now();
    let bounds = problem.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut evaluations = 0u64;

    let mut positions = initialize(bounds, config.population, &mut rng);
    let mut evals: Vec<_> = positions
        .iter()
        .map(|p| {
            evaluations += 1;
            problem.evaluate(p)
        })
        .collect();

    let g_idx = argmax(&evals.iter().map(|e| e.power).collect::<Vec<_>>());
    let mut g_pos = positions[g_idx];
    let mut g_eval = evals[g_idx];

    let n = config.population;
    let mut history = Vec::with_capacity(config.iterations);
    let mut raw_history = Vec::with_capacity(config.iterations);
    for _ in 0..config.iterations {
        for i in 0..n {
            let a = distinct_index(&mut rng, n, &[i]);
            let b = distinct_index(&mut rng, n, &[i, a]);
            let c = distinct_index(&mut rng, n, &[i, a, b]);
            let forced = rng.gen_range(0..N_VAR);
            // pCR is the target-retention probability: with pCR = 0.01 the
            // trial is almost the whole mutant vector.
            let mut trial = positions[i];
            for d in 0..N_VAR {
                if d == forced || rng.gen::<f64>() > config.crossover {
                    let v = positions[a][d]
                        + config.scaling * (positions[b][d] - positions[c][d]);
                    trial[d] = v.clamp(bounds.lower[d], bounds.upper[d]);
                }
            }
            let eval = problem.evaluate(&trial);
            evaluations += 1;
            if eval.power > evals[i].power {
                positions[i] = trial;
                evals[i] = eval;
                if eval.power > g_eval.power {
                    g_pos = trial;
                    g_eval = eval;
                }
            }
        }
        history.push(g_eval.penalized);
        raw_history.push(g_eval.raw);
    }

    RunRecord {
        history,
        raw_history,
        best_position: g_pos,
        best_penalized: g_eval.penalized,
        best_raw: g_eval.raw,
        best_feasible: g_eval.feasible,
        seed,
        evaluations,
        wall_seconds: started.elapsed().as_secs_f64(),
    }
}

fn argmax(values: &[f64]) -> usize {
    values
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
        .map(|(i, _)| i)
        .expect("non-empty")
}

fn distinct_index(rng: &mut ChaCha8Rng, n: usize, taken: &[usize]) -> usize {
    loop {
        let i = rng.gen_range(0..n);
        if !taken.contains(&i) {
            return i;
        }
    }
}
