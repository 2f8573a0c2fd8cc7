//! Mononobe-Okabe pseudo-static earth pressures.
//!
//! Active coefficients follow the standard dynamic Coulomb wedge form; the
//! static coefficients are the θ = 0 specialization, which reproduces the
//! Coulomb and Rankine closed forms in their limits.

use thiserror::Error;

use crate::wall::{DesignParameters, DesignVector, SeismicCase};

#[derive(Debug, Error, PartialEq)]
pub enum PressureError {
    #[error("vertical coefficient k_v={0} must be < 1")]
    VerticalCoefficient(f64),
    #[error("no sliding wedge exists: phi={phi}° < theta={theta}° + slope={slope}°")]
    InfeasibleActiveWedge { phi: f64, theta: f64, slope: f64 },
    #[error("passive wedge solution degenerates for phi={phi}°, delta={delta}°, theta={theta}°")]
    InfeasiblePassiveWedge { phi: f64, delta: f64, theta: f64 },
}

/// Seismic inertia angle θ = atan(k_h / (1 − k_v)), in radians.
pub fn seismic_inertia_angle(case: SeismicCase) -> Result<f64, PressureError> {
    if case.k_v >= 1.0 {
        return Err(PressureError::VerticalCoefficient(case.k_v));
    }
    Ok((case.k_h / (1.0 - case.k_v)).atan())
}

/// Dynamic active coefficient for friction angle `phi`, wall friction
/// `delta`, wall-back slope `beta`, backfill slope `slope` (all degrees) and
/// inertia angle `theta` (radians).
pub fn dynamic_active_coefficient(
    phi: f64,
    delta: f64,
    beta: f64,
    slope: f64,
    theta: f64,
) -> Result<f64, PressureError> {
    let (p, d, b, s) = (
        phi.to_radians(),
        delta.to_radians(),
        beta.to_radians(),
        slope.to_radians(),
    );
    let inner = (d + p).sin() * (p - theta - s).sin() / ((d + b + theta).cos() * (s - b).cos());
    if inner < 0.0 {
        return Err(PressureError::InfeasibleActiveWedge {
            phi,
            theta: theta.to_degrees(),
            slope,
        });
    }
    let num = (p - theta - b).cos().powi(2);
    let den =
        theta.cos() * b.cos().powi(2) * (d + theta + b).cos() * (1.0 + inner.sqrt()).powi(2);
    Ok(num / den)
}

/// Dynamic passive coefficient (same argument conventions).
pub fn dynamic_passive_coefficient(
    phi: f64,
    delta: f64,
    beta: f64,
    slope: f64,
    theta: f64,
) -> Result<f64, PressureError> {
    let (p, d, b, s) = (
        phi.to_radians(),
        delta.to_radians(),
        beta.to_radians(),
        slope.to_radians(),
    );
    let inner = (p + d).sin() * (p + s - theta).sin() / ((d - b + theta).cos() * (s - b).cos());
    if inner < 0.0 {
        return Err(PressureError::InfeasiblePassiveWedge {
            phi,
            delta,
            theta: theta.to_degrees(),
        });
    }
    let bracket = 1.0 - inner.sqrt();
    if bracket <= 0.0 {
        return Err(PressureError::InfeasiblePassiveWedge {
            phi,
            delta,
            theta: theta.to_degrees(),
        });
    }
    let num = (p + b - theta).cos().powi(2);
    let den = theta.cos() * b.cos().powi(2) * (d - b + theta).cos() * bracket.powi(2);
    Ok(num / den)
}

/// (k_a, k_ae): static and dynamic active coefficients.
pub fn active_coefficients(
    phi: f64,
    delta: f64,
    beta: f64,
    slope: f64,
    theta: f64,
) -> Result<(f64, f64), PressureError> {
    let k_a = dynamic_active_coefficient(phi, delta, beta, slope, 0.0)?;
    let k_ae = dynamic_active_coefficient(phi, delta, beta, slope, theta)?;
    Ok((k_a, k_ae))
}

/// (k_p, k_pe): static and dynamic passive coefficients.
pub fn passive_coefficients(
    phi: f64,
    delta: f64,
    beta: f64,
    theta: f64,
) -> Result<(f64, f64), PressureError> {
    let k_p = dynamic_passive_coefficient(phi, delta, beta, 0.0, 0.0)?;
    let k_pe = dynamic_passive_coefficient(phi, delta, beta, 0.0, theta)?;
    Ok((k_p, k_pe))
}

/// All earth-pressure resultants for one design under one loading case,
/// per meter of wall. Forces in kN/m, heights in m.
#[derive(Debug, Clone, Copy)]
pub struct PressureState {
    pub theta: f64,
    pub k_a: f64,
    pub k_ae: f64,
    pub k_p: f64,
    pub k_pe: f64,
    /// Static soil thrust (no vertical-coefficient reduction).
    pub p_a: f64,
    /// Total dynamic soil thrust, ½ k_ae γ h² (1 − k_v).
    pub p_ae: f64,
    /// Dynamic increment, p_ae − p_a (negative when k_v dominates).
    pub dp_ae: f64,
    /// Surcharge thrust k_ae q h (1 − k_v), acting at h/2.
    pub p_surcharge: f64,
    /// Static passive resultant in front of the toe over the embedment depth.
    pub p_p: f64,
    /// Seismic-reduced passive resultant in front of the toe.
    pub p_pe: f64,
    pub dp_pe: f64,
    /// Seismic-reduced passive resultant on the shear key face.
    pub p_k: f64,
    /// Acting height of the soil thrust above the base underside.
    pub h_bar: f64,
    /// Effective pressure height used for the soil thrust.
    pub h: f64,
}

/// Pressure height at the heel-side virtual back: stem height plus slab
/// thickness plus the sloped-backfill rise over the heel.
pub fn pressure_height(design: &DesignVector, params: &DesignParameters) -> f64 {
    params.stem_height
        + design.slab_thickness()
        + design.heel_width().max(0.0) * params.i.to_radians().tan()
}

/// Evaluates every force resultant of the pressure model.
pub fn earth_forces(
    design: &DesignVector,
    params: &DesignParameters,
    case: SeismicCase,
) -> Result<PressureState, PressureError> {
    let theta = seismic_inertia_angle(case)?;
    let delta = params.wall_friction();
    let (k_a, k_ae) = active_coefficients(params.phi, delta, 0.0, params.i, theta)?;
    let delta_base = params.base_friction();
    let (k_p, k_pe) = passive_coefficients(params.phi_base, delta_base, 0.0, theta)?;

    let h = pressure_height(design, params);
    let kv_factor = 1.0 - case.k_v;
    let gamma = params.gamma_s;

    let p_a = 0.5 * k_a * gamma * h * h;
    let p_ae = 0.5 * k_ae * gamma * h * h * kv_factor;
    let dp_ae = p_ae - p_a;
    let p_surcharge = k_ae * params.q * h * kv_factor;

    // Acting height of the total soil thrust: static part at h/3, dynamic
    // increment at 0.6 h.
    let h_bar = if p_ae.abs() > 0.0 {
        (p_a * (h / 3.0) + dp_ae * (0.6 * h)) / p_ae
    } else {
        h / 3.0
    };

    // Passive side: front soil over the embedment depth, key face over the
    // band below it. The dynamic reduction (1 - k_v) k_pe applies to both.
    let d_front = params.front_depth;
    let gamma_b = params.gamma_base;
    let p_p = 0.5 * k_p * gamma_b * d_front * d_front;
    let p_pe = 0.5 * k_pe * gamma_b * d_front * d_front * kv_factor;
    let dp_pe = p_p - p_pe;
    let key_toe = d_front + design.key_height();
    let p_k = 0.5 * k_pe * gamma_b * (key_toe * key_toe - d_front * d_front) * kv_factor;

    Ok(PressureState {
        theta,
        k_a,
        k_ae,
        k_p,
        k_pe,
        p_a,
        p_ae,
        dp_ae,
        p_surcharge,
        p_p,
        p_pe,
        dp_pe,
        p_k,
        h_bar,
        h,
    })
}
