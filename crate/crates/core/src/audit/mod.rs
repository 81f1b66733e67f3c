//! Claim registry and audit runner.
//!
//! Each [`Claim`] carries a formula as printed in the source being audited
//! and a checker that compares it, cell by cell, with the direct convolution
//! sum. A claim is refuted by the smallest failing cell, where cells are
//! ordered by `n` and then by [`cmp_from_unity`] on `a`.

mod claims;
mod report;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::{cmp_from_unity, Rat};

pub use claims::{registry, side_findings};
pub use report::{parse_report, render_report, statuses, ReportFormat};

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("claim registry is empty")]
    EmptyRegistry,
    #[error("grid has no cells")]
    EmptyGrid,
    #[error("malformed report: {0}")]
    Parse(#[from] serde_json::Error),
}

/// Set of `(n, a)` evaluation points: every `n` in `0..=n_max` against
/// every listed `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    pub n_max: u64,
    #[serde(rename = "a")]
    pub a_values: Vec<Rat>,
}

impl Grid {
    pub fn new(n_max: u64, a_values: impl IntoIterator<Item = Rat>) -> Self {
        let mut a_values: Vec<Rat> = a_values.into_iter().collect();
        a_values.sort_by(cmp_from_unity);
        a_values.dedup();
        Grid { n_max, a_values }
    }

    /// `n <= 24`, `a` in `{0, 1, -1, 2, 1/2, -3, 7/5}`.
    pub fn default_grid() -> Self {
        let a = [(0, 1), (1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (7, 5)];
        Grid::new(24, a.iter().map(|&(p, q)| Rat::from_frac(p, q)))
    }

    pub fn cells(&self) -> Vec<Cell> {
        (0..=self.n_max)
            .flat_map(|n| self.a_values.iter().map(move |a| Cell { n, a: a.clone() }))
            .collect()
    }

    /// Cells at a single fixed `a`, for claims about one special value.
    pub fn cells_at(&self, a: Rat) -> Vec<Cell> {
        (0..=self.n_max).map(|n| Cell { n, a: a.clone() }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub n: u64,
    pub a: Rat,
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| cmp_from_unity(&self.a, &other.a))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Outcome of one cell: `lhs` is the reference value, `rhs` the claim's.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCheck {
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
}

impl CellCheck {
    pub fn exact(lhs: &Rat, rhs: &Rat) -> Self {
        CellCheck {
            pass: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Floats in reports: 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub type CellsFn = fn(&Grid) -> Vec<Cell>;
/// `Err` marks the cell inconclusive (outside the claim's domain).
pub type CheckFn = fn(&Cell) -> Result<CellCheck, String>;

#[derive(Clone)]
pub struct Claim {
    pub id: &'static str,
    pub description: &'static str,
    /// The statement as printed in the audited source.
    pub printed: &'static str,
    pub cells: CellsFn,
    pub check: CheckFn,
}

impl std::fmt::Debug for Claim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Claim")
            .field("id", &self.id)
            .finish_non_exhaustive()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Confirmed,
    Refuted,
    Inconclusive,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Confirmed => "confirmed",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub n: u64,
    pub a: Rat,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub id: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub cells: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub version: String,
    pub timestamp: String,
    pub grid: Grid,
    pub verdicts: Vec<Verdict>,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn verdict(&self, id: &str) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.id == id)
    }

    pub fn status_map(&self) -> BTreeMap<String, Status> {
        self.verdicts
            .iter()
            .map(|v| (v.id.clone(), v.status))
            .collect()
    }
}

/// Checks every cell of the claim. Refuted with the smallest failing cell as
/// witness; confirmed when at least one cell passes and none fail;
/// inconclusive when no cell could be evaluated.
pub fn run_claim(claim: &Claim, grid: &Grid) -> Result<Verdict, AuditError> {
    let mut cells = (claim.cells)(grid);
    if cells.is_empty() {
        return Err(AuditError::EmptyGrid);
    }
    cells.sort();
    let mut passed = 0u64;
    let mut witness = None;
    for cell in &cells {
        match (claim.check)(cell) {
            Ok(check) if check.pass => passed += 1,
            Ok(check) => {
                witness = Some(Witness {
                    n: cell.n,
                    a: cell.a.clone(),
                    lhs: check.lhs,
                    rhs: check.rhs,
                });
                break;
            }
            Err(_) => {}
        }
    }
    let status = match (&witness, passed) {
        (Some(_), _) => Status::Refuted,
        (None, 0) => Status::Inconclusive,
        (None, _) => Status::Confirmed,
    };
    Ok(Verdict {
        id: claim.id.to_string(),
        status,
        witness,
        cells: cells.len() as u64,
    })
}

/// Runs every claim (in parallel) and collects the verdicts in registry order.
pub fn run_all(claims: &[Claim], grid: &Grid) -> Result<AuditReport, AuditError> {
    if claims.is_empty() {
        return Err(AuditError::EmptyRegistry);
    }
    let verdicts = claims
        .par_iter()
        .map(|c| run_claim(c, grid))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(AuditReport {
        version: env!("CARGO_PKG_VERSION").to_string(),
        timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        grid: grid.clone(),
        verdicts,
        notes: side_findings(grid),
    })
}
