//! Fuzzy-adaptive empire-based search (FAGLSUD): a fixed set of empires,
//! three velocity/trial operators gated by adaptive probabilities, fuzzy
//! parameter adaptation per agent, and a stagnation-driven operator selector
//! every window.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::fuzzy::{adapt_edels, adapt_glva, adapt_udvd, select_operators};
use crate::problem::{Evaluation, Fitness, Position};
use crate::wall::{Bounds, DesignVector, N_VAR};

#[derive(Debug, Clone)]
pub struct FaglsudConfig {
    pub population: usize,
    pub empires: usize,
    pub iterations: usize,
    /// Velocity-limit scale α.
    pub alpha: f64,
    /// Minimum mobility inside the shrinking velocity limit, as a fraction
    /// of the variable span; the limit is exactly zero at the archive point.
    pub velocity_floor: f64,
    /// Operator-selection window length (iterations).
    pub window: usize,
    /// Probabilities before the first window closes.
    pub initial_probability: f64,
    /// Test hook: when set, the operator probabilities are pinned and the
    /// selector never runs.
    pub fixed_probabilities: Option<[f64; 3]>,
}

impl Default for FaglsudConfig {
    fn default() -> Self {
        FaglsudConfig {
            population: 50,
            empires: 20,
            iterations: 1000,
            alpha: 10.0,
            velocity_floor: 1.0,
            window: 10,
            initial_probability: 0.5,
            fixed_probabilities: None,
        }
    }
}

/// Outcome of one seeded run.
#[derive(Debug, Clone)]
pub struct RunRecord {
    /// Best-ever penalized value after each iteration (non-increasing).
    pub history: Vec<f64>,
    /// Raw objective of the best-ever design after each iteration.
    pub raw_history: Vec<f64>,
    pub best_position: Position,
    pub best_penalized: f64,
    pub best_raw: f64,
    pub best_feasible: bool,
    pub seed: u64,
    pub evaluations: u64,
    pub wall_seconds: f64,
}

impl RunRecord {
    pub fn best_design(&self) -> DesignVector {
        DesignVector::from_position(&self.best_position)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Imperialist,
    Colony,
}

/// One search agent.
#[derive(Debug, Clone)]
pub struct Country {
    pub position: Position,
    pub velocity: Position,
    pub best_position: Position,
    pub best_power: f64,
    pub eval: Evaluation,
    pub role: Role,
    pub empire: usize,
    dirty: bool,
}

#[derive(Debug, Clone)]
struct Empire {
    imperialist: usize,
    colonies: Vec<usize>,
}

/// Best-ever archive; keeps the reported history monotone even though the
/// agent occupying the best point may move on.
#[derive(Debug, Clone, Copy)]
struct Archive {
    position: Position,
    power: f64,
    penalized: f64,
    raw: f64,
    feasible: bool,
}

pub struct Faglsud<'a, F: Fitness + ?Sized> {
    problem: &'a F,
    config: FaglsudConfig,
    rng: ChaCha8Rng,
    countries: Vec<Country>,
    empires: Vec<Empire>,
    archive: Archive,
    probabilities: [f64; 3],
    window_powers: Vec<f64>,
    evaluations: u64,
}

/// Uniform random positions within bounds, zero velocities.
pub fn initialize(bounds: &Bounds, population: usize, rng: &mut ChaCha8Rng) -> Vec<Position> {
    (0..population)
        .map(|_| {
            let mut p = [0.0; N_VAR];
            for d in 0..N_VAR {
                p[d] = bounds.lower[d] + rng.gen::<f64>() * bounds.span(d);
            }
            p
        })
        .collect()
}

/// Learning velocity: social pull toward a leader plus cognitive pull
/// toward the agent's own best, each with its coefficient and random factor.
pub fn learning_velocity(
    social: f64,
    cognitive: f64,
    r1: f64,
    r2: f64,
    leader: &Position,
    personal_best: &Position,
    position: &Position,
) -> Position {
    let mut v = [0.0; N_VAR];
    for d in 0..N_VAR {
        v[d] = social * r1 * (leader[d] - position[d])
            + cognitive * r2 * (personal_best[d] - position[d]);
    }
    v
}

/// Diversity velocity: the current velocity plus a pull toward a peer's
/// best, all scaled by one weight.
pub fn diversity_velocity(
    weight: f64,
    r: f64,
    velocity: &Position,
    exemplar_best: &Position,
    position: &Position,
) -> Position {
    let mut v = [0.0; N_VAR];
    for d in 0..N_VAR {
        v[d] = weight * (velocity[d] + r * (exemplar_best[d] - position[d]));
    }
    v
}

/// Differential mutant: a scaled difference pair, a pull of the target
/// toward a leader, and a push away from the worst member.
pub fn differential_mutant(
    f: [f64; 3],
    first: &Position,
    second: &Position,
    leader: &Position,
    target: &Position,
    worst: &Position,
) -> Position {
    let mut v = [0.0; N_VAR];
    for d in 0..N_VAR {
        v[d] = f[0] * (first[d] - second[d])
            + f[1] * (leader[d] - target[d])
            + f[2] * (target[d] - worst[d]);
    }
    v
}

/// |a − b| / reference, clamped to the unit interval.
pub fn normalized_relative_power(a: f64, b: f64, reference: f64) -> f64 {
    if reference <= 0.0 {
        return 1.0;
    }
    ((a - b).abs() / reference).clamp(0.0, 1.0)
}

/// 1 − (max − min)/max over a window of best powers; an empty window counts
/// as fully stagnant.
pub fn compute_stagnation(window: &[f64]) -> f64 {
    let max = window.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = window.iter().copied().fold(f64::INFINITY, f64::min);
    if window.is_empty() || max <= 0.0 {
        return 1.0;
    }
    (1.0 - (max - min) / max).clamp(0.0, 1.0)
}

/// Colony counts per empire from normalized imperialist powers: floor of the
/// proportional share, any residue to the strongest empire. Degenerate
/// all-equal powers split uniformly.
pub fn colony_allocation(imperialist_powers: &[f64], n_colonies: usize) -> Vec<usize> {
    let n_imp = imperialist_powers.len();
    let max_power = imperialist_powers
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let normalized: Vec<f64> = imperialist_powers.iter().map(|&p| max_power - p).collect();
    let total: f64 = normalized.iter().sum();
    let mut counts = vec![0usize; n_imp];
    if total > 1e-300 {
        for (k, share) in normalized.iter().enumerate() {
            counts[k] = ((share / total) * n_colonies as f64).floor() as usize;
        }
    } else {
        for count in counts.iter_mut() {
            *count = n_colonies / n_imp;
        }
    }
    let assigned: usize = counts.iter().sum();
    counts[0] += n_colonies.saturating_sub(assigned);
    counts
}

impl<'a, F: Fitness + ?Sized> Faglsud<'a, F> {
    pub fn new(problem: &'a F, config: FaglsudConfig, seed: u64) -> Self {
        assert!(config.population >= 2, "population must be at least 2");
        assert!(
            config.empires >= 1 && config.empires < config.population,
            "empire count must be in [1, population)"
        );
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut evaluations = 0u64;
        let positions = initialize(problem.bounds(), config.population, &mut rng);
        let countries: Vec<Country> = positions
            .into_iter()
            .map(|position| {
                let eval = problem.evaluate(&position);
                evaluations += 1;
                Country {
                    position,
                    velocity: [0.0; N_VAR],
                    best_position: position,
                    best_power: eval.power,
                    eval,
                    role: Role::Colony,
                    empire: 0,
                    dirty: false,
                }
            })
            .collect();

        let best = countries
            .iter()
            .max_by(|a, b| a.eval.power.partial_cmp(&b.eval.power).unwrap())
            .expect("population is non-empty");
        let archive = Archive {
            position: best.position,
            power: best.eval.power,
            penalized: best.eval.penalized,
            raw: best.eval.raw,
            feasible: best.eval.feasible,
        };

        let probabilities = config
            .fixed_probabilities
            .unwrap_or([config.initial_probability; 3]);
        let mut this = Faglsud {
            problem,
            config,
            rng,
            countries,
            empires: Vec::new(),
            archive,
            probabilities,
            window_powers: Vec::new(),
            evaluations,
        };
        this.form_empires();
        this
    }

    /// Ranks by power, crowns the strongest as imperialists, and deals the
    /// rest out as colonies according to the allocation shares.
    fn form_empires(&mut self) {
        let n_imp = self.config.empires;
        let mut order: Vec<usize> = (0..self.countries.len()).collect();
        order.sort_by(|&a, &b| {
            self.countries[b]
                .eval
                .power
                .partial_cmp(&self.countries[a].eval.power)
                .unwrap()
        });
        let imperialists = &order[..n_imp];
        let powers: Vec<f64> = imperialists
            .iter()
            .map(|&i| self.countries[i].eval.power)
            .collect();
        let counts = colony_allocation(&powers, self.countries.len() - n_imp);

        let mut colonies: Vec<usize> = order[n_imp..].to_vec();
        // Random membership draw: shuffle, then deal the allocated counts.
        for i in (1..colonies.len()).rev() {
            let j = self.rng.gen_range(0..=i);
            colonies.swap(i, j);
        }

        self.empires.clear();
        let mut cursor = 0;
        for (k, (&imp, &count)) in imperialists.iter().zip(&counts).enumerate() {
            let members = colonies[cursor..cursor + count].to_vec();
            cursor += count;
            self.countries[imp].role = Role::Imperialist;
            self.countries[imp].empire = k;
            for &c in &members {
                self.countries[c].role = Role::Colony;
                self.countries[c].empire = k;
            }
            self.empires.push(Empire {
                imperialist: imp,
                colonies: members,
            });
        }
    }

    fn refresh_dirty(&mut self) {
        for country in self.countries.iter_mut() {
            if !country.dirty {
                continue;
            }
            country.eval = self.problem.evaluate(&country.position);
            self.evaluations += 1;
            country.dirty = false;
            if country.eval.power > country.best_power {
                country.best_power = country.eval.power;
                country.best_position = country.position;
            }
        }
        for country in &self.countries {
            if country.eval.power > self.archive.power {
                self.archive = Archive {
                    position: country.position,
                    power: country.eval.power,
                    penalized: country.eval.penalized,
                    raw: country.eval.raw,
                    feasible: country.eval.feasible,
                };
            }
        }
    }

    /// Velocity clamp, position step, and boundary reflection: the limit
    /// shrinks with 1/t and with the gap to the archive best (floored at a
    /// small span fraction so the population keeps polishing), and is zero
    /// for an agent sitting exactly on the archive point.
    fn clamp_and_step(&self, start: Position, velocity: Position, t: usize) -> (Position, Position) {
        let bounds = self.problem.bounds();
        let at_archive = start == self.archive.position;
        let mut v = velocity;
        let mut pos = start;
        for d in 0..N_VAR {
            let vel_max = if at_archive {
                0.0
            } else {
                let upper = bounds.upper[d];
                let ratio = if upper.abs() > 1e-12 {
                    bounds.span(d) / upper
                } else {
                    1.0
                };
                let gap = (self.archive.position[d] - pos[d])
                    .abs()
                    .max(self.config.velocity_floor * bounds.span(d));
                self.config.alpha * ratio * gap / t as f64
            };
            v[d] = v[d].clamp(-vel_max, vel_max);
            pos[d] += v[d];
            if pos[d] > bounds.upper[d] {
                pos[d] = bounds.upper[d];
                v[d] = -v[d];
            } else if pos[d] < bounds.lower[d] {
                pos[d] = bounds.lower[d];
                v[d] = -v[d];
            }
        }
        (pos, v)
    }

    fn apply_velocity_and_move(&mut self, idx: usize, velocity: Position, t: usize) {
        let (pos, v) = self.clamp_and_step(self.countries[idx].position, velocity, t);
        let country = &mut self.countries[idx];
        if pos != country.position {
            country.dirty = true;
        }
        country.position = pos;
        country.velocity = v;
    }

    /// Power-proportional roulette over `candidates`, excluding `skip`.
    fn roulette(&mut self, candidates: &[usize], skip: Option<usize>) -> Option<usize> {
        let pool: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&i| Some(i) != skip)
            .collect();
        if pool.is_empty() {
            return None;
        }
        let total: f64 = pool.iter().map(|&i| self.countries[i].eval.power).sum();
        if total <= 0.0 {
            let j = self.rng.gen_range(0..pool.len());
            return Some(pool[j]);
        }
        let mut ticket = self.rng.gen::<f64>() * total;
        for &i in &pool {
            ticket -= self.countries[i].eval.power;
            if ticket <= 0.0 {
                return Some(i);
            }
        }
        Some(*pool.last().unwrap())
    }

    fn empire_nrp12_mean(&self, empire: &Empire) -> (f64, f64) {
        if empire.colonies.is_empty() {
            return (0.0, 0.0);
        }
        let gb = self.archive.power;
        let imp_power = self.countries[empire.imperialist].eval.power;
        let mut n1 = 0.0;
        let mut n2 = 0.0;
        for &c in &empire.colonies {
            let col = &self.countries[c];
            n1 += normalized_relative_power(imp_power, col.eval.power, gb);
            n2 += normalized_relative_power(col.best_power, col.eval.power, gb);
        }
        let k = empire.colonies.len() as f64;
        (n1 / k, n2 / k)
    }

    /// Global learning: colonies track their imperialist and personal best;
    /// imperialists track the archive best and their personal best.
    fn glva_phase(&mut self, t: usize, nit: f64) {
        let p_gate = self.probabilities[0];
        let gb = self.archive.power;
        let empires = self.empires.clone();
        for empire in &empires {
            let imp = empire.imperialist;
            let imp_power = self.countries[imp].eval.power;
            let imp_best_power = self.countries[imp].best_power;
            let nrp3 = normalized_relative_power(gb, imp_power, gb);
            let nrp4 = normalized_relative_power(imp_best_power, imp_power, gb);

            for &c in &empire.colonies {
                if self.rng.gen::<f64>() > p_gate {
                    continue;
                }
                let col = &self.countries[c];
                let nrp1 = normalized_relative_power(imp_power, col.eval.power, gb);
                let nrp2 = normalized_relative_power(col.best_power, col.eval.power, gb);
                let params = adapt_glva([nrp1, nrp2, nrp3, nrp4], nit);
                let (beta1, c1) = (params[0], params[1]);
                let r1 = self.rng.gen::<f64>();
                let r2 = self.rng.gen::<f64>();
                let imp_pos = self.countries[imp].position;
                let col = &self.countries[c];
                let v = learning_velocity(
                    beta1,
                    c1,
                    r1,
                    r2,
                    &imp_pos,
                    &col.best_position,
                    &col.position,
                );
                self.apply_velocity_and_move(c, v, t);
            }

            if self.rng.gen::<f64>() > p_gate {
                continue;
            }
            let (nrp1m, nrp2m) = self.empire_nrp12_mean(empire);
            let params = adapt_glva([nrp1m, nrp2m, nrp3, nrp4], nit);
            let (beta2, c2) = (params[2], params[3]);
            let r1 = self.rng.gen::<f64>();
            let r2 = self.rng.gen::<f64>();
            let imp_country = &self.countries[imp];
            let v = learning_velocity(
                beta2,
                c2,
                r1,
                r2,
                &self.archive.position,
                &imp_country.best_position,
                &imp_country.position,
            );
            self.apply_velocity_and_move(imp, v, t);
        }
    }

    /// Universal diversity: agents diverge toward the personal bests of
    /// roulette-picked peers; the leading imperialist gets its own weight.
    fn udvd_phase(&mut self, t: usize, nit: f64) {
        let p_gate = self.probabilities[1];
        let gb = self.archive.power;

        let all_colonies: Vec<usize> = self
            .empires
            .iter()
            .flat_map(|e| e.colonies.iter().copied())
            .collect();
        let imperialists: Vec<usize> = self.empires.iter().map(|e| e.imperialist).collect();
        let best_imp = imperialists
            .iter()
            .copied()
            .max_by(|&a, &b| {
                self.countries[a]
                    .eval
                    .power
                    .partial_cmp(&self.countries[b].eval.power)
                    .unwrap()
            })
            .expect("at least one empire");

        for &c in &all_colonies {
            if self.rng.gen::<f64>() > p_gate {
                continue;
            }
            let Some(exemplar) = self.roulette(&all_colonies, Some(c)) else {
                continue;
            };
            let empire = &self.empires[self.countries[c].empire];
            let imp_power = self.countries[empire.imperialist].eval.power;
            let imp_best = self.countries[empire.imperialist].best_power;
            let col = &self.countries[c];
            let nrp = [
                normalized_relative_power(imp_power, col.eval.power, gb),
                normalized_relative_power(col.best_power, col.eval.power, gb),
                normalized_relative_power(gb, imp_power, gb),
                normalized_relative_power(imp_best, imp_power, gb),
            ];
            let w1 = adapt_udvd(nrp, nit)[0];
            let r1 = self.rng.gen::<f64>();
            let exemplar_best = self.countries[exemplar].best_position;
            let col = &self.countries[c];
            let v = diversity_velocity(w1, r1, &col.velocity, &exemplar_best, &col.position);
            self.apply_velocity_and_move(c, v, t);
        }

        if imperialists.len() < 2 {
            return;
        }
        for &j in &imperialists {
            if self.rng.gen::<f64>() > p_gate {
                continue;
            }
            let Some(exemplar) = self.roulette(&imperialists, Some(j)) else {
                continue;
            };
            let empire = self.empires[self.countries[j].empire].clone();
            let (nrp1m, nrp2m) = self.empire_nrp12_mean(&empire);
            let imp = &self.countries[j];
            let nrp = [
                nrp1m,
                nrp2m,
                normalized_relative_power(gb, imp.eval.power, gb),
                normalized_relative_power(imp.best_power, imp.eval.power, gb),
            ];
            let weights = adapt_udvd(nrp, nit);
            // The strongest imperialist diverges with its own (third) weight.
            let w = if j == best_imp { weights[2] } else { weights[1] };
            let r = self.rng.gen::<f64>();
            let exemplar_best = self.countries[exemplar].best_position;
            let imp = &self.countries[j];
            let v = diversity_velocity(w, r, &imp.velocity, &exemplar_best, &imp.position);
            self.apply_velocity_and_move(j, v, t);
        }
    }

    /// Differential-evolution local search: one gated colony trial per
    /// empire and one gated imperialist trial per iteration, each with
    /// fuzzy-scaled difference terms and greedy selection.
    fn edels_phase(&mut self, t: usize, nit: f64) {
        let p_gate = self.probabilities[2];
        let gb = self.archive.power;

        let imperialists: Vec<usize> = self.empires.iter().map(|e| e.imperialist).collect();
        let worst_imp = imperialists
            .iter()
            .copied()
            .min_by(|&a, &b| {
                self.countries[a]
                    .eval
                    .power
                    .partial_cmp(&self.countries[b].eval.power)
                    .unwrap()
            })
            .expect("at least one empire");

        for k in 0..self.empires.len() {
            if self.rng.gen::<f64>() > p_gate {
                continue;
            }
            let empire = self.empires[k].clone();
            if empire.colonies.is_empty() {
                continue;
            }
            let worst_col = *empire
                .colonies
                .iter()
                .min_by(|&&a, &&b| {
                    self.countries[a]
                        .eval
                        .power
                        .partial_cmp(&self.countries[b].eval.power)
                        .unwrap()
                })
                .unwrap();
            let pool: Vec<usize> = empire
                .colonies
                .iter()
                .copied()
                .filter(|&c| c != worst_col)
                .collect();
            if pool.is_empty() {
                continue;
            }
            let (r1, r2, r3) = self.pick_triple(&pool);
            let imp = empire.imperialist;
            let nrp = [
                normalized_relative_power(
                    self.countries[imp].eval.power,
                    self.countries[r3].eval.power,
                    gb,
                ),
                normalized_relative_power(
                    self.countries[r3].eval.power,
                    self.countries[worst_col].eval.power,
                    gb,
                ),
                normalized_relative_power(gb, self.countries[imp].eval.power, gb),
                normalized_relative_power(
                    self.countries[imp].eval.power,
                    self.countries[worst_imp].eval.power,
                    gb,
                ),
            ];
            let f = adapt_edels(nrp, nit);
            let mutant = differential_mutant(
                [f[0], f[1], f[2]],
                &self.countries[r1].position,
                &self.countries[r2].position,
                &self.countries[imp].position,
                &self.countries[r3].position,
                &self.countries[worst_col].position,
            );
            self.trial_and_select(r3, mutant, p_gate, t);
        }

        // Imperialist side: each empire may try a differential step on its
        // own imperialist, mixing in two foreign imperialists.
        if imperialists.len() >= 3 {
            for k in 0..self.empires.len() {
                if self.rng.gen::<f64>() > p_gate {
                    continue;
                }
                let r3 = self.empires[k].imperialist;
                if r3 == worst_imp {
                    continue;
                }
                let pool: Vec<usize> = imperialists
                    .iter()
                    .copied()
                    .filter(|&j| j != worst_imp && j != r3)
                    .collect();
                if pool.len() < 2 {
                    continue;
                }
                let r1 = pool[self.rng.gen_range(0..pool.len())];
                let r2 = loop {
                    let c = pool[self.rng.gen_range(0..pool.len())];
                    if c != r1 || pool.len() == 1 {
                        break c;
                    }
                };
                let empire = self.empires[k].clone();
                let (nrp5, nrp6) = self.empire_nrp12_mean(&empire);
                let nrp = [
                    nrp5,
                    nrp6,
                    normalized_relative_power(gb, self.countries[r3].eval.power, gb),
                    normalized_relative_power(
                        self.countries[r3].eval.power,
                        self.countries[worst_imp].eval.power,
                        gb,
                    ),
                ];
                let f = adapt_edels(nrp, nit);
                let mutant = differential_mutant(
                    [f[3], f[4], f[5]],
                    &self.countries[r1].position,
                    &self.countries[r2].position,
                    &self.archive.position,
                    &self.countries[r3].position,
                    &self.countries[worst_imp].position,
                );
                self.trial_and_select(r3, mutant, p_gate, t);
            }
        }
    }

    /// r1, r2, r3 from the pool: distinct when the pool allows it, otherwise
    /// sampled with replacement around a distinct target r3.
    fn pick_triple(&mut self, pool: &[usize]) -> (usize, usize, usize) {
        let n = pool.len();
        if n >= 3 {
            let a = self.rng.gen_range(0..n);
            let b = loop {
                let b = self.rng.gen_range(0..n);
                if b != a {
                    break b;
                }
            };
            let c = loop {
                let c = self.rng.gen_range(0..n);
                if c != a && c != b {
                    break c;
                }
            };
            (pool[a], pool[b], pool[c])
        } else {
            let r3 = pool[self.rng.gen_range(0..n)];
            let r1 = pool[self.rng.gen_range(0..n)];
            let r2 = pool[self.rng.gen_range(0..n)];
            (r1, r2, r3)
        }
    }

    /// Binomial crossover with one forced dimension, a bounded trial step
    /// from the target's position, and greedy replacement.
    fn trial_and_select(&mut self, target: usize, mutant: Position, rate: f64, t: usize) {
        let forced = self.rng.gen_range(0..N_VAR);
        let mut trial_v = [0.0; N_VAR];
        for d in 0..N_VAR {
            trial_v[d] = if d == forced || self.rng.gen::<f64>() <= rate {
                mutant[d]
            } else {
                self.countries[target].velocity[d]
            };
        }

        // Clamp and reflect exactly as the velocity operators do, but on a
        // scratch copy so the target only changes if the trial wins.
        let (pos, v) = self.clamp_and_step(self.countries[target].position, trial_v, t);

        let eval = self.problem.evaluate(&pos);
        self.evaluations += 1;
        let country = &mut self.countries[target];
        if eval.power > country.eval.power {
            country.position = pos;
            country.velocity = v;
            country.eval = eval;
            country.dirty = false;
            if eval.power > country.best_power {
                country.best_power = eval.power;
                country.best_position = pos;
            }
        }
        if eval.power > self.archive.power {
            self.archive = Archive {
                position: pos,
                power: eval.power,
                penalized: eval.penalized,
                raw: eval.raw,
                feasible: eval.feasible,
            };
        }
    }

    /// Exchanges roles whenever a colony overtakes its imperialist.
    fn swap_roles(&mut self) {
        for empire in self.empires.iter_mut() {
            let Some((slot, &best_colony)) = empire
                .colonies
                .iter()
                .enumerate()
                .max_by(|a, b| {
                    self.countries[*a.1]
                        .eval
                        .power
                        .partial_cmp(&self.countries[*b.1].eval.power)
                        .unwrap()
                })
            else {
                continue;
            };
            let imp = empire.imperialist;
            if self.countries[best_colony].eval.power > self.countries[imp].eval.power {
                empire.colonies[slot] = imp;
                empire.imperialist = best_colony;
                self.countries[imp].role = Role::Colony;
                self.countries[best_colony].role = Role::Imperialist;
            }
        }
    }

    /// Advances one full iteration: evaluation refresh, the three gated
    /// operators, and role swaps. `nit` is the normalized iteration clock.
    pub fn step(&mut self, t: usize, nit: f64) {
        self.refresh_dirty();
        self.glva_phase(t, nit);
        self.refresh_dirty();
        self.udvd_phase(t, nit);
        self.refresh_dirty();
        self.edels_phase(t, nit);
        self.swap_roles();
    }

    pub fn run(mut self) -> RunRecord {
        let started = Instant::now();
        let iterations = self.config.iterations;
        let mut history = Vec::with_capacity(iterations);
        let mut raw_history = Vec::with_capacity(iterations);

        for t in 1..=iterations {
            let nit = t as f64 / iterations as f64;
            self.step(t, nit);

            self.window_powers.push(self.archive.power);
            if self.config.fixed_probabilities.is_none()
                && self.config.window > 0
                && t % self.config.window == 0
            {
                let start = self.window_powers.len() - self.config.window;
                let stagnation = compute_stagnation(&self.window_powers[start..]);
                self.probabilities = select_operators(nit, stagnation, self.probabilities);
            }
            history.push(self.archive.penalized);
            raw_history.push(self.archive.raw);
        }

        RunRecord {
            history,
            raw_history,
            best_position: self.archive.position,
            best_penalized: self.archive.penalized,
            best_raw: self.archive.raw,
            best_feasible: self.archive.feasible,
            seed: 0,
            evaluations: self.evaluations,
            wall_seconds: started.elapsed().as_secs_f64(),
        }
    }

    pub fn countries(&self) -> &[Country] {
        &self.countries
    }

    /// Power of the best-ever design (the reported global best).
    pub fn archive_power(&self) -> f64 {
        self.archive.power
    }

    pub fn empire_layout(&self) -> Vec<(usize, Vec<usize>)> {
        self.empires
            .iter()
            .map(|e| (e.imperialist, e.colonies.clone()))
            .collect()
    }
}

/// Runs FAGLSUD on `problem` with the given seed.
pub fn run<F: Fitness + ?Sized>(problem: &F, config: &FaglsudConfig, seed: u64) -> RunRecord {
    let mut record = Faglsud::new(problem, config.clone(), seed).run();
    record.seed = seed;
    record
}
