use serde::{Deserialize, Serialize};

use crate::fuzzy::{Point, TGrid};

/// Finite stand-in for the universally quantified points of an inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleSet {
    pub points_x: Vec<Point>,
    pub points_y: Vec<Point>,
    pub grid: TGrid,
    /// Skip tuples whose two X points (or two Y points, for the dual
    /// inequality) coincide within the point tolerance.
    pub exclude_diagonal: bool,
    /// Keep every evaluated ratio in the report.
    #[serde(default)]
    pub record_table: bool,
}

impl SampleSet {
    pub fn new(points_x: Vec<Point>, points_y: Vec<Point>, grid: TGrid) -> Self {
        Self {
            points_x,
            points_y,
            grid,
            exclude_diagonal: true,
            record_table: false,
        }
    }

    pub fn include_diagonal(mut self) -> Self {
        self.exclude_diagonal = false;
        self
    }

    pub fn with_table(mut self) -> Self {
        self.record_table = true;
        self
    }
}

/// The tuple at which a ratio was evaluated. Unused slots are `None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tuple {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x2: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<Point>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y2: Option<Point>,
    pub t: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub tuple: Tuple,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
}

/// Result of scanning one contraction inequality `k·lhs ≥ rhs` over a
/// sample. `k_hat` is the largest `rhs / lhs` seen, so the inequality holds
/// on the sample with constant k iff k ≥ k_hat.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub inequality: String,
    pub k_hat: f64,
    pub witness: Option<RatioRow>,
    pub evaluated_count: usize,
    pub skipped_count: usize,
    pub grid: Vec<f64>,
    pub sample_size_x: usize,
    pub sample_size_y: usize,
    pub exclude_diagonal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<RatioRow>>,
}

impl HypothesisReport {
    /// The inequality holds on the sample for some k < 1.
    pub fn holds(&self) -> bool {
        self.k_hat < 1.0
    }
}

/// Running max of `rhs / lhs`, first maximum wins on ties.
pub(crate) struct RatioScan {
    k_hat: f64,
    witness: Option<RatioRow>,
    evaluated: usize,
    skipped: usize,
    table: Option<Vec<RatioRow>>,
}

impl RatioScan {
    pub(crate) fn new(record_table: bool) -> Self {
        Self {
            k_hat: 0.0,
            witness: None,
            evaluated: 0,
            skipped: 0,
            table: record_table.then(Vec::new),
        }
    }

    pub(crate) fn skip(&mut self) {
        self.skipped += 1;
    }

    pub(crate) fn skip_many(&mut self, n: usize) {
        self.skipped += n;
    }

    pub(crate) fn push(&mut self, tuple: impl FnOnce() -> Tuple, lhs: f64, rhs: f64) {
        self.evaluated += 1;
        let ratio = rhs / lhs;
        let better = self.witness.is_none() || ratio > self.k_hat;
        if better || self.table.is_some() {
            let row = RatioRow {
                tuple: tuple(),
                lhs,
                rhs,
                ratio,
            };
            if better {
                self.k_hat = ratio;
                self.witness = Some(row.clone());
            }
            if let Some(table) = self.table.as_mut() {
                table.push(row);
            }
        }
    }

    pub(crate) fn finish(
        self,
        inequality: &str,
        samples: &SampleSet,
        exclude_diagonal: bool,
    ) -> crate::error::Result<HypothesisReport> {
        if self.evaluated == 0 {
            return Err(crate::error::Error::EmptySample {
                skipped: self.skipped,
            });
        }
        Ok(HypothesisReport {
            inequality: inequality.to_string(),
            k_hat: self.k_hat,
            witness: self.witness,
            evaluated_count: self.evaluated,
            skipped_count: self.skipped,
            grid: samples.grid.values().to_vec(),
            sample_size_x: samples.points_x.len(),
            sample_size_y: samples.points_y.len(),
            exclude_diagonal,
            table: self.table,
        })
    }
}

