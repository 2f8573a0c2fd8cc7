//! The four bundled rule systems, one record per table row so tests can
//! diff them against their sources verbatim.

use std::sync::OnceLock;

use super::{OutputVar, Rule, RuleTable, Term};

use Term::{Any, High as H, Low as L, LowOrMedium as LM, Medium as M};

/// Antecedent patterns for the sixteen L/H corner rows shared by the three
/// adaptation tables, in row order.
const CORNERS: [[Term; 4]; 16] = [
    [L, L, L, L],
    [L, L, L, H],
    [L, L, H, L],
    [L, L, H, H],
    [L, H, L, L],
    [L, H, L, H],
    [L, H, H, L],
    [L, H, H, H],
    [H, L, L, L],
    [H, L, L, H],
    [H, L, H, L],
    [H, L, H, H],
    [H, H, L, L],
    [H, H, L, H],
    [H, H, H, L],
    [H, H, H, H],
];

/// Leaks a small rule-row array into static storage; tables are built once.
fn leak<const N: usize>(arr: [Term; N]) -> &'static [Term] {
    &*Box::leak(Box::new(arr))
}

fn leak_when(nrp: [Term; 4], nit: Term) -> &'static [Term] {
    leak([nrp[0], nrp[1], nrp[2], nrp[3], nit])
}

/// Exploitation-parameter adaptation: 18 rules mapping (NRP₁..NRP₄, NIT) to
/// (β₁, c₁, β₂, c₂). For the corner rows each parameter echoes its status
/// indicator; the terminal-phase row weights personal learning.
pub fn glva_table() -> &'static RuleTable {
    static TABLE: OnceLock<RuleTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rules: Vec<Rule> = CORNERS
            .iter()
            .map(|&c| Rule {
                when: leak_when(c, LM),
                then: leak([c[0], c[1], c[2], c[3]]),
            })
            .collect();
        rules.push(Rule {
            when: leak_when([M, M, M, M], LM),
            then: &[M, M, M, M],
        });
        rules.push(Rule {
            when: leak_when([Any, Any, Any, Any], H),
            then: &[L, H, L, H],
        });
        RuleTable {
            name: "glva",
            inputs: &["NRP1", "NRP2", "NRP3", "NRP4", "NIT"],
            outputs: &[
                OutputVar { name: "beta1", min: 0.0, max: 2.0 },
                OutputVar { name: "c1", min: 0.0, max: 2.0 },
                OutputVar { name: "beta2", min: 0.0, max: 2.0 },
                OutputVar { name: "c2", min: 0.0, max: 2.0 },
            ],
            rules,
        }
    })
}

/// Exploration-weight adaptation: (NRP₁..NRP₄, NIT) to (w₁, w₂, w₃).
/// w₁ follows the colony indicator, w₂ the imperialist indicator, w₃ opens
/// only in the worst corner.
pub fn udvd_table() -> &'static RuleTable {
    static TABLE: OnceLock<RuleTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rules: Vec<Rule> = CORNERS
            .iter()
            .enumerate()
            .map(|(row, &c)| {
                let w3 = if row == 15 { H } else { L };
                Rule {
                    when: leak_when(c, LM),
                    then: leak([c[0], c[2], w3]),
                }
            })
            .collect();
        rules.push(Rule {
            when: leak_when([M, M, M, M], LM),
            then: &[M, M, M],
        });
        rules.push(Rule {
            when: leak_when([Any, Any, Any, Any], H),
            then: &[L, L, L],
        });
        RuleTable {
            name: "udvd",
            inputs: &["NRP1", "NRP2", "NRP3", "NRP4", "NIT"],
            outputs: &[
                OutputVar { name: "w1", min: 0.0, max: 1.0 },
                OutputVar { name: "w2", min: 0.0, max: 1.0 },
                OutputVar { name: "w3", min: 0.0, max: 1.0 },
            ],
            rules,
        }
    })
}

/// Differential-scaling adaptation: (NRP₅..NRP₈, NIT) to (F₁..F₆), one
/// consequent row per tabulated rule.
pub fn edels_table() -> &'static RuleTable {
    static TABLE: OnceLock<RuleTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        const THEN: [[Term; 6]; 16] = [
            [H, H, L, H, H, L],
            [H, H, L, L, H, L],
            [H, H, L, H, L, L],
            [H, H, L, H, L, H],
            [L, H, H, H, H, L],
            [L, H, H, L, H, H],
            [L, H, H, H, L, L],
            [L, H, H, H, L, H],
            [H, L, L, H, H, L],
            [H, L, L, L, H, H],
            [L, H, H, L, H, H],
            [H, L, L, H, L, H],
            [H, L, H, H, H, L],
            [H, L, H, L, H, H],
            [H, L, H, H, L, L],
            [H, L, H, H, L, H],
        ];
        let mut rules: Vec<Rule> = CORNERS
            .iter()
            .zip(THEN.iter())
            .map(|(&c, t)| Rule {
                when: leak_when(c, LM),
                then: leak(*t),
            })
            .collect();
        rules.push(Rule {
            when: leak_when([M, M, M, M], LM),
            then: &[M, M, M, M, M, M],
        });
        rules.push(Rule {
            when: leak_when([Any, Any, Any, Any], H),
            then: &[L, H, L, L, H, L],
        });
        RuleTable {
            name: "edels",
            inputs: &["NRP5", "NRP6", "NRP7", "NRP8", "NIT"],
            outputs: &[
                OutputVar { name: "F1", min: 0.0, max: 2.0 },
                OutputVar { name: "F2", min: 0.0, max: 2.0 },
                OutputVar { name: "F3", min: 0.0, max: 2.0 },
                OutputVar { name: "F4", min: 0.0, max: 2.0 },
                OutputVar { name: "F5", min: 0.0, max: 2.0 },
                OutputVar { name: "F6", min: 0.0, max: 2.0 },
            ],
            rules,
        }
    })
}

/// Operator-selection rules: (NIT, stagnation, three prior probabilities) to
/// the next window's probabilities. Early-and-stagnant or late-and-moving
/// windows reverse the priors; the other two phases keep them.
pub fn selector_table() -> &'static RuleTable {
    static TABLE: OnceLock<RuleTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        const PRIORS: [[Term; 3]; 8] = [
            [L, L, L],
            [L, L, H],
            [L, H, L],
            [L, H, H],
            [H, L, L],
            [H, L, H],
            [H, H, L],
            [H, H, H],
        ];
        let flip = |t: Term| if t == L { H } else { L };
        let mut rules = Vec::with_capacity(33);
        let block = |rules: &mut Vec<Rule>, nit: Term, stag: Term, reverse: bool| {
            for p in PRIORS {
                let then: [Term; 3] = if reverse {
                    [flip(p[0]), flip(p[1]), flip(p[2])]
                } else {
                    p
                };
                rules.push(Rule {
                    when: leak([nit, stag, p[0], p[1], p[2]]),
                    then: leak(then),
                });
            }
        };
        block(&mut rules, L, L, false); // rules 1-8: keep
        block(&mut rules, L, H, true); // rules 9-16: reverse
        rules.push(Rule {
            // rule 17
            when: &[M, M, M, M, M],
            then: &[M, M, M],
        });
        block(&mut rules, H, L, true); // rules 18-25: reverse
        block(&mut rules, H, H, false); // rules 26-33: keep
        RuleTable {
            name: "selector",
            inputs: &["NIT", "stagnation", "PFAGLVA", "PFAUDVD", "PFAEDELS"],
            outputs: &[
                OutputVar { name: "PFAGLVA", min: 0.0, max: 1.0 },
                OutputVar { name: "PFAUDVD", min: 0.0, max: 1.0 },
                OutputVar { name: "PFAEDELS", min: 0.0, max: 1.0 },
            ],
            rules,
        }
    })
}
