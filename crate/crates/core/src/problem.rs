//! The fitness surface seen by every optimizer: bounds, evaluation, and the
//! penalized power.

use crate::catalog::Catalog;
use crate::limit_state::{evaluate_design, ConstraintVector};
use crate::objective::{evaluate_objective, penalize, Objective, PENALTY_LAMBDA};
use crate::pressure::PressureError;
use crate::wall::{Bounds, DesignParameters, DesignVector, Example, SeismicCase, N_VAR};

pub type Position = [f64; N_VAR];

/// One fitness evaluation.
#[derive(Debug, Clone, Copy)]
pub struct Evaluation {
    /// Raw objective value before penalization.
    pub raw: f64,
    pub penalized: f64,
    /// Maximization fitness, 1/penalized.
    pub power: f64,
    pub feasible: bool,
}

/// Anything the search algorithms can optimize: a box-bounded 12-variable
/// problem with a positive maximization power.
pub trait Fitness: Sync {
    fn bounds(&self) -> &Bounds;
    fn evaluate(&self, position: &Position) -> Evaluation;
}

/// The retaining-wall design problem for one example, loading case, and
/// objective.
#[derive(Debug, Clone)]
pub struct WallProblem {
    pub params: DesignParameters,
    pub bounds: Bounds,
    pub case: SeismicCase,
    pub objective: Objective,
    pub lambda: f64,
    catalog: Catalog,
    feasibility_tol: f64,
}

impl WallProblem {
    /// Builds the problem, verifying up front that the pressure model is
    /// defined for this parameter/case combination (it depends only on
    /// angles, never on the design vector).
    pub fn new(
        example: &Example,
        case: SeismicCase,
        objective: Objective,
    ) -> Result<Self, PressureError> {
        let catalog = Catalog::build().expect("catalog generation is pinned by tests");
        let probe = DesignVector {
            x: [
                example.bounds.lower[0],
                example.bounds.lower[1],
                example.bounds.lower[2],
                example.bounds.lower[3],
                example.bounds.lower[4],
                example.bounds.lower[5],
                example.bounds.lower[6],
                example.bounds.lower[7],
            ],
            r: [1, 1, 1, 1],
        };
        crate::pressure::earth_forces(&probe, &example.params, case)?;
        Ok(WallProblem {
            params: example.params.clone(),
            bounds: example.bounds.clone(),
            case,
            objective,
            lambda: PENALTY_LAMBDA,
            catalog,
            // Optima sit on active constraints; tolerate rounding residue
            // when flagging feasibility (the penalty itself is exact).
            feasibility_tol: 1e-6,
        })
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    /// Full constraint evaluation for reporting purposes.
    pub fn assess(&self, position: &Position) -> (DesignVector, ConstraintVector, Evaluation) {
        let design = DesignVector::from_position(position);
        let assessment = evaluate_design(&design, &self.params, self.case, &self.catalog)
            .expect("case validated at construction");
        let breakdown = evaluate_objective(&design, &self.params, &self.catalog);
        let raw = breakdown.value(self.objective);
        let fit = penalize(raw, &assessment.constraints, self.lambda);
        let eval = Evaluation {
            raw,
            penalized: fit.penalized,
            power: fit.power,
            feasible: assessment.constraints.is_feasible(self.feasibility_tol),
        };
        (design, assessment.constraints, eval)
    }
}

impl Fitness for WallProblem {
    fn bounds(&self) -> &Bounds {
        &self.bounds
    }

    fn evaluate(&self, position: &Position) -> Evaluation {
        let (_, _, eval) = self.assess(position);
        eval
    }
}
