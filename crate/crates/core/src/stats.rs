//! Nonparametric comparison machinery: Friedman ranks across cases and the
//! two-tailed Wilcoxon signed-rank test for paired samples.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum StatsError {
    #[error("rank matrix needs at least one algorithm and one case")]
    Empty,
    #[error("algorithm {0} has {1} cases, expected {2}")]
    RaggedMatrix(usize, usize, usize),
    #[error("paired samples differ in length: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("no critical value tabulated for n = {0}")]
    NoCriticalValue(usize),
}

/// Average ranks of tied values; rank 1 is the smallest value.
pub fn rank_with_ties(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap());
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        let avg = (i + j + 2) as f64 / 2.0; // ranks are 1-based
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

#[derive(Debug, Clone)]
pub struct FriedmanResult {
    /// ranks[case][algorithm], ties averaged, 1 = best (lowest mean).
    pub ranks: Vec<Vec<f64>>,
    pub average_ranks: Vec<f64>,
    /// 1-based overall standing per algorithm (rank of the average ranks).
    pub overall_ranks: Vec<f64>,
}

/// Friedman ranking of a cases × algorithms matrix of means:
/// `means[case][algorithm]`.
pub fn friedman_ranks(means: &[Vec<f64>]) -> Result<FriedmanResult, StatsError> {
    if means.is_empty() || means[0].is_empty() {
        return Err(StatsError::Empty);
    }
    let n_algos = means[0].len();
    for (case, row) in means.iter().enumerate() {
        if row.len() != n_algos {
            return Err(StatsError::RaggedMatrix(case, row.len(), n_algos));
        }
    }
    let ranks: Vec<Vec<f64>> = means.iter().map(|row| rank_with_ties(row)).collect();
    let n_cases = means.len() as f64;
    let average_ranks: Vec<f64> = (0..n_algos)
        .map(|a| ranks.iter().map(|row| row[a]).sum::<f64>() / n_cases)
        .collect();
    let overall_ranks = rank_with_ties(&average_ranks);
    Ok(FriedmanResult {
        ranks,
        average_ranks,
        overall_ranks,
    })
}

/// Critical values of the two-tailed Wilcoxon signed-rank statistic at
/// α = 0.05 for n = 6..=25 nonzero differences.
const W_CRIT_TABLE: [(usize, f64); 20] = [
    (6, 0.0),
    (7, 2.0),
    (8, 3.0),
    (9, 5.0),
    (10, 8.0),
    (11, 10.0),
    (12, 13.0),
    (13, 17.0),
    (14, 21.0),
    (15, 25.0),
    (16, 29.0),
    (17, 34.0),
    (18, 40.0),
    (19, 46.0),
    (20, 52.0),
    (21, 58.0),
    (22, 65.0),
    (23, 73.0),
    (24, 81.0),
    (25, 89.0),
];

#[derive(Debug, Clone)]
pub struct WilcoxonResult {
    /// Rank sum of positive differences (a − b > 0).
    pub t_plus: f64,
    /// Rank sum of negative differences.
    pub t_minus: f64,
    pub w_stat: f64,
    /// Tabulated critical value; None below n = 6, where the two-tailed
    /// test has no rejection region at α = 0.05.
    pub w_crit: Option<f64>,
    /// Count of nonzero differences actually ranked.
    pub n_used: usize,
    pub significant: bool,
    /// All differences were zero: the test is undefined.
    pub undefined: bool,
}

/// Two-tailed Wilcoxon signed-rank test on paired samples at α = 0.05.
/// Significant iff W_stat = min(T₊, T₋) falls below the tabulated critical
/// value. Zero differences are dropped; an all-zero sample is reported as
/// undefined and not significant.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<WilcoxonResult, StatsError> {
    if a.len() != b.len() {
        return Err(StatsError::LengthMismatch(a.len(), b.len()));
    }
    let diffs: Vec<f64> = a
        .iter()
        .zip(b)
        .map(|(x, y)| x - y)
        .filter(|d| *d != 0.0)
        .collect();
    if diffs.is_empty() {
        return Ok(WilcoxonResult {
            t_plus: 0.0,
            t_minus: 0.0,
            w_stat: 0.0,
            w_crit: None,
            n_used: 0,
            significant: false,
            undefined: true,
        });
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = rank_with_ties(&abs);
    let mut t_plus = 0.0;
    let mut t_minus = 0.0;
    for (d, r) in diffs.iter().zip(&ranks) {
        if *d > 0.0 {
            t_plus += r;
        } else {
            t_minus += r;
        }
    }
    let n = diffs.len();
    let w_crit = match W_CRIT_TABLE.iter().find(|(k, _)| *k == n) {
        Some((_, v)) => Some(*v),
        // Below six pairs the two-tailed test cannot reach α = 0.05.
        None if n < 6 => None,
        None => return Err(StatsError::NoCriticalValue(n)),
    };
    let w_stat = t_plus.min(t_minus);
    Ok(WilcoxonResult {
        t_plus,
        t_minus,
        w_stat,
        w_crit,
        n_used: n,
        significant: w_crit.is_some_and(|crit| w_stat < crit),
        undefined: false,
    })
}
