//! Minimal type-1 Mamdani inference: Ruspini triangular fuzzification on
//! [0, 1], min-conjunction antecedents, max-aggregation of clipped output
//! sets, exact centroid defuzzification.

pub mod tables;

pub use tables::{edels_table, glva_table, selector_table, udvd_table};

/// Memberships of a crisp value in {Low, Medium, High}. The three triangles
/// peak at 0, 0.5, and 1 and sum to one everywhere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipTriple {
    pub low: f64,
    pub medium: f64,
    pub high: f64,
}

/// Fuzzifies a crisp input, clamped to [0, 1].
pub fn fuzzify(x: f64) -> MembershipTriple {
    let x = x.clamp(0.0, 1.0);
    let low = (1.0 - 2.0 * x).max(0.0);
    let high = (2.0 * x - 1.0).max(0.0);
    MembershipTriple {
        low,
        medium: 1.0 - low - high,
        high,
    }
}

/// Linguistic terms usable in rule antecedents; consequents are restricted
/// to Low/Medium/High.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Term {
    Low,
    Medium,
    High,
    /// "L or M": the max of the two memberships.
    LowOrMedium,
    /// Wildcard antecedent, always fully true.
    Any,
}

impl Term {
    fn membership(self, t: MembershipTriple) -> f64 {
        match self {
            Term::Low => t.low,
            Term::Medium => t.medium,
            Term::High => t.high,
            Term::LowOrMedium => t.low.max(t.medium),
            Term::Any => 1.0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Rule {
    pub when: &'static [Term],
    pub then: &'static [Term],
}

#[derive(Debug, Clone, Copy)]
pub struct OutputVar {
    pub name: &'static str,
    pub min: f64,
    pub max: f64,
}

/// A complete rule system: named inputs on [0, 1], named bounded outputs,
/// and the rule rows exactly as tabulated.
#[derive(Debug, Clone)]
pub struct RuleTable {
    pub name: &'static str,
    pub inputs: &'static [&'static str],
    pub outputs: &'static [OutputVar],
    pub rules: Vec<Rule>,
}

impl RuleTable {
    /// Firing strength of every rule for the given crisp inputs.
    pub fn strengths(&self, inputs: &[f64]) -> Vec<f64> {
        debug_assert_eq!(inputs.len(), self.inputs.len());
        let triples: Vec<MembershipTriple> = inputs.iter().map(|&x| fuzzify(x)).collect();
        self.rules
            .iter()
            .map(|rule| {
                rule.when
                    .iter()
                    .zip(&triples)
                    .map(|(term, &t)| term.membership(t))
                    .fold(1.0, f64::min)
            })
            .collect()
    }

    /// Runs the full fuzzify → rules → centroid pipeline.
    pub fn infer(&self, inputs: &[f64]) -> Vec<f64> {
        let strengths = self.strengths(inputs);
        self.outputs
            .iter()
            .enumerate()
            .map(|(k, var)| {
                let mut alpha = [0.0f64; 3]; // clip heights for L, M, H
                for (rule, &s) in self.rules.iter().zip(&strengths) {
                    if s <= 0.0 {
                        continue;
                    }
                    let slot = match rule.then[k] {
                        Term::Low => 0,
                        Term::Medium => 1,
                        Term::High => 2,
                        _ => unreachable!("consequents are L/M/H"),
                    };
                    alpha[slot] = alpha[slot].max(s);
                }
                let u = centroid_unit(alpha[0], alpha[1], alpha[2]);
                var.min + u * (var.max - var.min)
            })
            .collect()
    }
}

/// A linear segment y = a + b·u.
#[derive(Clone, Copy)]
struct Lin {
    a: f64,
    b: f64,
}

impl Lin {
    fn at(self, u: f64) -> f64 {
        self.a + self.b * u
    }
}

/// Integrates max(f, g) over [u0, u1], accumulating (area, first moment).
fn max_integral(f: Lin, g: Lin, u0: f64, u1: f64, acc: &mut (f64, f64)) {
    if u1 <= u0 {
        return;
    }
    let segment = |l: Lin, a: f64, b: f64, acc: &mut (f64, f64)| {
        let w = b - a;
        acc.0 += w * (l.at(a) + l.at(b)) / 2.0;
        // ∫ u (p + q u) du over [a, b].
        acc.1 += l.a * (b * b - a * a) / 2.0 + l.b * (b * b * b - a * a * a) / 3.0;
    };
    let d0 = f.at(u0) - g.at(u0);
    let d1 = f.at(u1) - g.at(u1);
    if d0 >= 0.0 && d1 >= 0.0 {
        segment(f, u0, u1, acc);
    } else if d0 <= 0.0 && d1 <= 0.0 {
        segment(g, u0, u1, acc);
    } else {
        let t = u0 + (u1 - u0) * d0 / (d0 - d1);
        if d0 > 0.0 {
            segment(f, u0, t, acc);
            segment(g, t, u1, acc);
        } else {
            segment(g, u0, t, acc);
            segment(f, t, u1, acc);
        }
    }
}

/// Exact centroid on [0, 1] of max(clip(L, αl), clip(M, αm), clip(H, αh))
/// for the three Ruspini triangles. Zero aggregate mass falls back to the
/// midpoint.
fn centroid_unit(alpha_l: f64, alpha_m: f64, alpha_h: f64) -> f64 {
    let mut acc = (0.0, 0.0);

    // Left half [0, 0.5]: only L (descending) and M (ascending) are present.
    // Each clipped set is linear on the subintervals delimited by its
    // plateau boundary.
    let l_knee = (1.0 - alpha_l) / 2.0; // L plateau ends here
    let m_knee = alpha_m / 2.0; // M plateau starts here
    let mut cuts = [0.0, l_knee, m_knee, 0.5];
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in cuts.windows(2) {
        let (a, b) = (w[0].clamp(0.0, 0.5), w[1].clamp(0.0, 0.5));
        if b <= a {
            continue;
        }
        let mid = (a + b) / 2.0;
        let l_seg = if mid <= l_knee {
            Lin { a: alpha_l, b: 0.0 }
        } else {
            Lin { a: 1.0, b: -2.0 }
        };
        let m_seg = if mid <= m_knee {
            Lin { a: 0.0, b: 2.0 }
        } else {
            Lin { a: alpha_m, b: 0.0 }
        };
        max_integral(l_seg, m_seg, a, b, &mut acc);
    }

    // Right half [0.5, 1]: M (descending) and H (ascending), mirrored.
    let m_knee_r = 1.0 - alpha_m / 2.0;
    let h_knee = (1.0 + alpha_h) / 2.0;
    let mut cuts = [0.5, m_knee_r, h_knee, 1.0];
    cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for w in cuts.windows(2) {
        let (a, b) = (w[0].clamp(0.5, 1.0), w[1].clamp(0.5, 1.0));
        if b <= a {
            continue;
        }
        let mid = (a + b) / 2.0;
        let m_seg = if mid <= m_knee_r {
            Lin { a: alpha_m, b: 0.0 }
        } else {
            Lin { a: 2.0, b: -2.0 }
        };
        let h_seg = if mid <= h_knee {
            Lin { a: -1.0, b: 2.0 }
        } else {
            Lin { a: alpha_h, b: 0.0 }
        };
        max_integral(m_seg, h_seg, a, b, &mut acc);
    }

    let (area, moment) = acc;
    if area <= 1e-12 {
        0.5
    } else {
        moment / area
    }
}

/// Adapted exploitation parameters (β₁, c₁, β₂, c₂), each in [0, 2].
pub fn adapt_glva(nrp: [f64; 4], nit: f64) -> [f64; 4] {
    let out = glva_table().infer(&[nrp[0], nrp[1], nrp[2], nrp[3], nit]);
    [out[0], out[1], out[2], out[3]]
}

/// Adapted exploration weights (w₁, w₂, w₃), each in [0, 1].
pub fn adapt_udvd(nrp: [f64; 4], nit: f64) -> [f64; 3] {
    let out = udvd_table().infer(&[nrp[0], nrp[1], nrp[2], nrp[3], nit]);
    [out[0], out[1], out[2]]
}

/// Adapted differential scaling factors F₁..F₆, each in [0, 2].
pub fn adapt_edels(nrp: [f64; 4], nit: f64) -> [f64; 6] {
    let out = edels_table().infer(&[nrp[0], nrp[1], nrp[2], nrp[3], nit]);
    [out[0], out[1], out[2], out[3], out[4], out[5]]
}

/// Next-window operator probabilities from the iteration clock, the
/// stagnation measure, and the prior probabilities.
pub fn select_operators(nit: f64, stagnation: f64, priors: [f64; 3]) -> [f64; 3] {
    let out = selector_table().infer(&[nit, stagnation, priors[0], priors[1], priors[2]]);
    [out[0], out[1], out[2]]
}
