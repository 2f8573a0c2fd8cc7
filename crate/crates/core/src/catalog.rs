//! Discrete reinforcement catalog: 223 bar-count/diameter combinations
//! sorted by cross-sectional area.

use thiserror::Error;

/// One reinforcement option: `count` bars of diameter `diameter_mm`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RebarChoice {
    pub count: u32,
    pub diameter_mm: f64,
    /// Total cross-sectional area in cm².
    pub area_cm2: f64,
}

impl RebarChoice {
    fn new(count: u32, diameter_mm: f64) -> Self {
        let area_cm2 = count as f64 * std::f64::consts::PI * (diameter_mm / 10.0).powi(2) / 4.0;
        RebarChoice {
            count,
            diameter_mm,
            area_cm2,
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("catalog generation produced {0} entries, expected {expected}", expected = CATALOG_LEN)]
    WrongLength(usize),
    #[error("catalog row {index} is {got:?}, expected {want:?}")]
    PinnedRowMismatch {
        index: usize,
        got: (u32, u32),
        want: (u32, u32),
    },
    #[error("rebar index {0} out of range 1..={max}", max = CATALOG_LEN)]
    IndexOutOfRange(usize),
}

pub const CATALOG_LEN: usize = 223;

/// Bar diameters available in the pool (mm).
const DIAMETERS: [u32; 10] = [10, 12, 14, 15, 16, 18, 20, 22, 24, 30];
const MIN_COUNT: u32 = 3;
const MAX_COUNT: u32 = 25;

/// Known head and tail rows used to pin the generation rule.
const PINNED: [(usize, u32, u32); 8] = [
    (1, 3, 10),
    (2, 4, 10),
    (3, 3, 12),
    (4, 5, 10),
    (5, 4, 12),
    (221, 16, 30),
    (222, 17, 30),
    (223, 18, 30),
];

/// Immutable 1-indexed reinforcement catalog.
#[derive(Debug, Clone)]
pub struct Catalog {
    entries: Vec<RebarChoice>,
}

impl Catalog {
    /// Enumerates counts 3..=25 over the diameter pool, keeps combinations no
    /// larger than 18φ30, and sorts by (area, diameter, count). The result is
    /// checked against the known head and tail rows; ties in area (distinct
    /// bar layouts with identical steel) are kept as separate rows.
    pub fn build() -> Result<Self, CatalogError> {
        let cap = RebarChoice::new(18, 30.0).area_cm2 + 1e-9;
        let mut entries = Vec::with_capacity(CATALOG_LEN);
        for &d in &DIAMETERS {
            for n in MIN_COUNT..=MAX_COUNT {
                let choice = RebarChoice::new(n, d as f64);
                if choice.area_cm2 <= cap {
                    entries.push(choice);
                }
            }
        }
        entries.sort_by(|a, b| {
            (a.area_cm2, a.diameter_mm, a.count as f64)
                .partial_cmp(&(b.area_cm2, b.diameter_mm, b.count as f64))
                .expect("areas are finite")
        });
        if entries.len() != CATALOG_LEN {
            return Err(CatalogError::WrongLength(entries.len()));
        }
        for &(index, n, d) in &PINNED {
            let got = entries[index - 1];
            if got.count != n || got.diameter_mm != d as f64 {
                return Err(CatalogError::PinnedRowMismatch {
                    index,
                    got: (got.count, got.diameter_mm as u32),
                    want: (n, d),
                });
            }
        }
        Ok(Catalog { entries })
    }

    /// Looks up a 1-based catalog index.
    pub fn lookup(&self, index: usize) -> Result<RebarChoice, CatalogError> {
        if index < 1 || index > CATALOG_LEN {
            return Err(CatalogError::IndexOutOfRange(index));
        }
        Ok(self.entries[index - 1])
    }

    pub fn entries(&self) -> &[RebarChoice] {
        &self.entries
    }

    /// Rounds a continuous reinforcement variable to the nearest valid index.
    pub fn round_index(value: f64) -> usize {
        let idx = value.round();
        idx.clamp(1.0, CATALOG_LEN as f64) as usize
    }
}
