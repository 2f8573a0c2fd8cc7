//! Cost, weight, and CO₂ objectives plus the quadratic exterior penalty and
//! its reciprocal "power" fitness.

use serde::Deserialize;

use crate::catalog::Catalog;
use crate::limit_state::{ConstraintVector, STEEL_DENSITY};
use crate::wall::{DesignParameters, DesignVector};

/// Penalty factor applied to squared constraint violations.
pub const PENALTY_LAMBDA: f64 = 1.0e15;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    Cost,
    Weight,
    Co2,
}

impl Objective {
    pub fn name(&self) -> &'static str {
        match self {
            Objective::Cost => "cost",
            Objective::Weight => "weight",
            Objective::Co2 => "co2",
        }
    }

    pub fn unit(&self) -> &'static str {
        match self {
            Objective::Cost => "USD/m",
            Objective::Weight => "kg/m",
            Objective::Co2 => "kg-CO2/m",
        }
    }
}

impl std::str::FromStr for Objective {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "cost" => Ok(Objective::Cost),
            "weight" => Ok(Objective::Weight),
            "co2" => Ok(Objective::Co2),
            other => Err(format!("unknown objective {other:?}")),
        }
    }
}

/// Shared material quantities: every objective reads the same steel weight
/// and concrete volume.
#[derive(Debug, Clone, Copy)]
pub struct ObjectiveBreakdown {
    /// Reinforcing steel per meter of wall (kg/m).
    pub steel_weight: f64,
    /// Concrete volume per meter of wall (m³/m).
    pub concrete_volume: f64,
    pub cost: f64,
    pub weight: f64,
    pub co2: f64,
}

impl ObjectiveBreakdown {
    pub fn value(&self, objective: Objective) -> f64 {
        match objective {
            Objective::Cost => self.cost,
            Objective::Weight => self.weight,
            Objective::Co2 => self.co2,
        }
    }
}

/// Concrete volume of the cross-section: stem trapezoid, base slab, key.
pub fn concrete_volume(design: &DesignVector, params: &DesignParameters) -> f64 {
    let stem = 0.5 * (design.stem_bottom() + design.stem_top()) * params.stem_height;
    let base = design.base_width() * design.slab_thickness();
    let key = design.key_width() * design.key_height();
    stem + base + key
}

/// Reinforcing steel weight: catalog areas over member bar lengths (member
/// span less cover at both ends; stem bars run through the slab) plus
/// shrinkage-and-temperature steel on each member's gross section.
pub fn steel_weight(design: &DesignVector, params: &DesignParameters, catalog: &Catalog) -> f64 {
    let area_m2 = |idx: usize| catalog.lookup(idx).expect("indices clamped").area_cm2 * 1.0e-4;
    let bar_len = |span: f64| (span - 2.0 * params.cover).max(0.0);

    let stem_len = bar_len(params.stem_height + design.slab_thickness());
    let main = area_m2(design.r[0]) * stem_len
        + area_m2(design.r[1]) * bar_len(design.toe_width())
        + area_m2(design.r[2]) * bar_len(design.heel_width().max(0.0))
        + area_m2(design.r[3]) * bar_len(design.key_height());

    let stem_vol = 0.5 * (design.stem_bottom() + design.stem_top()) * params.stem_height;
    let base_vol = design.base_width() * design.slab_thickness();
    let key_vol = design.key_width() * design.key_height();
    let shrinkage = params.rho_st * (stem_vol + base_vol + key_vol);

    (main + shrinkage) * STEEL_DENSITY
}

/// Evaluates all three objectives from one shared material take-off.
pub fn evaluate_objective(
    design: &DesignVector,
    params: &DesignParameters,
    catalog: &Catalog,
) -> ObjectiveBreakdown {
    let w_s = steel_weight(design, params, catalog);
    let v_c = concrete_volume(design, params);
    ObjectiveBreakdown {
        steel_weight: w_s,
        concrete_volume: v_c,
        cost: params.steel_cost * w_s + params.concrete_cost * v_c,
        weight: w_s + 100.0 * params.gamma_c * v_c,
        co2: params.e_s * w_s + params.e_c * v_c,
    }
}

/// A penalized objective value and its reciprocal fitness.
#[derive(Debug, Clone, Copy)]
pub struct PenalizedFitness {
    pub penalized: f64,
    pub power: f64,
    pub lambda: f64,
}

/// Adds λ Σ g² over violated constraints and inverts into the maximization
/// fitness.
pub fn penalize(raw: f64, constraints: &ConstraintVector, lambda: f64) -> PenalizedFitness {
    debug_assert!(raw > 0.0);
    let penalized = raw + lambda * constraints.violation_sum_squares();
    PenalizedFitness {
        penalized,
        power: 1.0 / penalized,
        lambda,
    }
}
