//! Design variables, variable bounds, site/material parameters, and the nine
//! pseudo-static loading cases.

use serde::Deserialize;
use thiserror::Error;

use crate::catalog::CATALOG_LEN;

pub const N_VAR: usize = 12;
pub const N_GEOMETRY: usize = 8;

/// A candidate wall design: eight geometry lengths (m) and four reinforcement
/// catalog indices.
///
/// Geometry components, in order: base width, toe width, stem bottom
/// thickness, stem top thickness, base slab thickness, key offset from the
/// toe, key width, key height.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignVector {
    pub x: [f64; N_GEOMETRY],
    pub r: [usize; 4],
}

impl DesignVector {
    /// Builds a design from a raw 12-component position, rounding the
    /// reinforcement components to the nearest catalog index.
    pub fn from_position(position: &[f64; N_VAR]) -> Self {
        let mut x = [0.0; N_GEOMETRY];
        x.copy_from_slice(&position[..N_GEOMETRY]);
        let mut r = [0usize; 4];
        for (k, slot) in r.iter_mut().enumerate() {
            *slot = crate::catalog::Catalog::round_index(position[N_GEOMETRY + k]);
        }
        DesignVector { x, r }
    }

    pub fn base_width(&self) -> f64 {
        self.x[0]
    }
    pub fn toe_width(&self) -> f64 {
        self.x[1]
    }
    pub fn stem_bottom(&self) -> f64 {
        self.x[2]
    }
    pub fn stem_top(&self) -> f64 {
        self.x[3]
    }
    pub fn slab_thickness(&self) -> f64 {
        self.x[4]
    }
    pub fn key_offset(&self) -> f64 {
        self.x[5]
    }
    pub fn key_width(&self) -> f64 {
        self.x[6]
    }
    pub fn key_height(&self) -> f64 {
        self.x[7]
    }
    /// Heel slab length: base width minus toe width and stem bottom thickness.
    pub fn heel_width(&self) -> f64 {
        self.x[0] - self.x[1] - self.x[2]
    }
}

/// Componentwise search-space box for the 12 design variables.
#[derive(Debug, Clone, PartialEq)]
pub struct Bounds {
    pub lower: [f64; N_VAR],
    pub upper: [f64; N_VAR],
}

impl Bounds {
    pub fn new(lower: [f64; N_VAR], upper: [f64; N_VAR]) -> Result<Self, ParamError> {
        for d in 0..N_VAR {
            if !(lower[d] <= upper[d]) {
                return Err(ParamError::InvalidBounds(d));
            }
        }
        for d in N_GEOMETRY..N_VAR {
            if lower[d] < 1.0 || upper[d] > CATALOG_LEN as f64 {
                return Err(ParamError::InvalidBounds(d));
            }
        }
        Ok(Bounds { lower, upper })
    }

    pub fn clamp(&self, position: &mut [f64; N_VAR]) {
        for d in 0..N_VAR {
            position[d] = position[d].clamp(self.lower[d], self.upper[d]);
        }
    }

    pub fn contains(&self, position: &[f64; N_VAR]) -> bool {
        (0..N_VAR).all(|d| position[d] >= self.lower[d] - 1e-12 && position[d] <= self.upper[d] + 1e-12)
    }

    pub fn span(&self, d: usize) -> f64 {
        self.upper[d] - self.lower[d]
    }
}

/// One pseudo-static loading case: horizontal and vertical seismic
/// coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeismicCase {
    pub k_h: f64,
    pub k_v: f64,
}

impl SeismicCase {
    pub fn new(k_h: f64, k_v: f64) -> Result<Self, ParamError> {
        if k_h < 0.0 || k_v < 0.0 || k_v >= 1.0 {
            return Err(ParamError::InvalidSeismicCase { k_h, k_v });
        }
        Ok(SeismicCase { k_h, k_v })
    }

    pub fn is_static(&self) -> bool {
        self.k_h == 0.0 && self.k_v == 0.0
    }
}

/// The nine coefficient combinations, in case order 1..=9.
pub fn seismic_cases() -> [SeismicCase; 9] {
    let mut cases = [SeismicCase { k_h: 0.0, k_v: 0.0 }; 9];
    let levels = [0.0, 0.15, 0.3];
    for (i, case) in cases.iter_mut().enumerate() {
        case.k_h = levels[i % 3];
        case.k_v = levels[i / 3];
    }
    cases
}

/// Site, material, economic, and safety-target parameters for one design
/// example. Lengths in m, stresses in MPa, pressures in kPa, unit weights in
/// kN/m³, angles in degrees.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DesignParameters {
    /// Stem height above the base slab.
    #[serde(rename = "H")]
    pub stem_height: f64,
    pub f_y: f64,
    pub f_c: f64,
    /// Concrete cover (m).
    #[serde(rename = "CC")]
    pub cover: f64,
    /// Shrinkage and temperature reinforcement ratio.
    pub rho_st: f64,
    /// Surcharge load (kPa).
    pub q: f64,
    /// Backfill slope (deg).
    pub i: f64,
    /// Internal friction angle of retained soil (deg).
    pub phi: f64,
    /// Internal friction angle of base soil (deg).
    pub phi_base: f64,
    /// Unit weight of retained soil.
    pub gamma_s: f64,
    /// Unit weight of base soil.
    pub gamma_base: f64,
    /// Unit weight of concrete.
    pub gamma_c: f64,
    /// Cohesion of base soil (kPa).
    pub c_base: f64,
    /// Depth of soil in front of the wall (m).
    #[serde(rename = "D")]
    pub front_depth: f64,
    /// Steel cost ($/kg).
    #[serde(rename = "C_s")]
    pub steel_cost: f64,
    /// Concrete cost ($/m³).
    #[serde(rename = "C_c")]
    pub concrete_cost: f64,
    #[serde(rename = "FS_O_design")]
    pub fs_overturning: f64,
    #[serde(rename = "FS_S_design")]
    pub fs_sliding: f64,
    #[serde(rename = "FS_B_design")]
    pub fs_bearing: f64,
    /// Steel emission factor (kg CO₂ per kg).
    pub e_s: f64,
    /// Concrete emission factor (kg CO₂ per m³).
    pub e_c: f64,
}

impl DesignParameters {
    /// Wall friction angle δ = 2φ/3 (deg), the only choice consistent with
    /// the sliding resistance term tan(2φ_base/3).
    pub fn wall_friction(&self) -> f64 {
        2.0 * self.phi / 3.0
    }

    pub fn base_friction(&self) -> f64 {
        2.0 * self.phi_base / 3.0
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let positives = [
            ("H", self.stem_height),
            ("f_y", self.f_y),
            ("f_c", self.f_c),
            ("CC", self.cover),
            ("rho_st", self.rho_st),
            ("q", self.q),
            ("phi", self.phi),
            ("phi_base", self.phi_base),
            ("gamma_s", self.gamma_s),
            ("gamma_base", self.gamma_base),
            ("gamma_c", self.gamma_c),
            ("c_base", self.c_base),
            ("D", self.front_depth),
            ("C_s", self.steel_cost),
            ("C_c", self.concrete_cost),
            ("FS_O_design", self.fs_overturning),
            ("FS_S_design", self.fs_sliding),
            ("FS_B_design", self.fs_bearing),
            ("e_s", self.e_s),
            ("e_c", self.e_c),
        ];
        for (name, value) in positives {
            if !(value > 0.0) {
                return Err(ParamError::NonPositive(name));
            }
        }
        if self.i < 0.0 {
            return Err(ParamError::NonPositive("i"));
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self, ParamError> {
        let params: DesignParameters =
            toml::from_str(text).map_err(|e| ParamError::Parse(e.to_string()))?;
        params.validate()?;
        Ok(params)
    }
}

#[derive(Debug, Error)]
pub enum ParamError {
    #[error("bounds invalid at component {0}")]
    InvalidBounds(usize),
    #[error("invalid seismic case k_h={k_h}, k_v={k_v}")]
    InvalidSeismicCase { k_h: f64, k_v: f64 },
    #[error("parameter {0} must be positive")]
    NonPositive(&'static str),
    #[error("parameter file: {0}")]
    Parse(String),
    #[error("unknown preset {0:?}, expected \"example1\" or \"example2\"")]
    UnknownPreset(String),
}

/// A named example: parameters plus variable bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct Example {
    pub name: &'static str,
    pub params: DesignParameters,
    pub bounds: Bounds,
}

/// 3 m stem, sloped granular backfill.
pub fn example1() -> Example {
    let params = DesignParameters {
        stem_height: 3.0,
        f_y: 400.0,
        f_c: 21.0,
        cover: 0.07,
        rho_st: 0.002,
        q: 20.0,
        i: 10.0,
        phi: 36.0,
        phi_base: 36.0,
        gamma_s: 17.5,
        gamma_base: 18.5,
        gamma_c: 23.5,
        c_base: 125.0,
        front_depth: 0.5,
        steel_cost: 0.4,
        concrete_cost: 40.0,
        fs_overturning: 1.5,
        fs_sliding: 1.5,
        fs_bearing: 3.0,
        e_s: 2.82,
        e_c: 224.94,
    };
    let bounds = Bounds::new(
        [
            1.31, 0.44, 0.20, 0.20, 0.27, 1.31, 0.20, 0.20, 1.0, 1.0, 1.0, 1.0,
        ],
        [
            3.50, 0.78, 0.33, 0.33, 0.33, 3.50, 0.33, 0.33, 223.0, 223.0, 223.0, 223.0,
        ],
    )
    .expect("preset bounds are valid");
    Example {
        name: "example1",
        params,
        bounds,
    }
}

/// 6 m stem, level backfill, heavier surcharge.
pub fn example2() -> Example {
    let params = DesignParameters {
        stem_height: 6.0,
        f_y: 400.0,
        f_c: 21.0,
        cover: 0.07,
        rho_st: 0.002,
        q: 30.0,
        i: 0.0,
        phi: 32.0,
        phi_base: 32.0,
        gamma_s: 20.0,
        gamma_base: 18.0,
        gamma_c: 23.5,
        c_base: 100.0,
        front_depth: 1.0,
        steel_cost: 0.4,
        concrete_cost: 40.0,
        fs_overturning: 1.5,
        fs_sliding: 1.5,
        fs_bearing: 3.0,
        e_s: 2.82,
        e_c: 224.94,
    };
    let bounds = Bounds::new(
        [
            2.60, 0.87, 0.30, 0.30, 0.54, 2.60, 0.30, 0.30, 1.0, 1.0, 1.0, 1.0,
        ],
        [
            5.50, 1.56, 0.67, 0.67, 0.67, 5.50, 0.67, 0.67, 223.0, 223.0, 223.0, 223.0,
        ],
    )
    .expect("preset bounds are valid");
    Example {
        name: "example2",
        params,
        bounds,
    }
}

pub fn preset(name: &str) -> Result<Example, ParamError> {
    match name {
        "example1" | "1" => Ok(example1()),
        "example2" | "2" => Ok(example2()),
        other => Err(ParamError::UnknownPreset(other.to_string())),
    }
}
