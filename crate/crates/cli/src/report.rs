//! Serializable results. Exact values are carried as strings (`p/q`),
//! decimals as JSON numbers.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountReport {
    pub index: usize,
    pub nullity: usize,
    pub threshold: String,
    /// `q*pi^2`, present only when exact.
    pub energy: Option<String>,
    pub energy_decimal: f64,
    pub boundary_points: Vec<[i64; 2]>,
    pub variant: String,
    pub exact: bool,
    pub index_range: [usize; 2],
    pub nullity_range: [usize; 2],
    pub n: i64,
    pub m: i64,
    pub omega1: [String; 2],
    pub omega2: [String; 2],
}

/// Flat form of [`CountReport`] for CSV.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountRow {
    pub variant: String,
    pub n: i64,
    pub m: i64,
    pub index: usize,
    pub nullity: usize,
    pub threshold: String,
    pub energy: String,
    pub energy_decimal: f64,
    pub exact: bool,
    pub index_min: usize,
    pub index_max: usize,
    pub nullity_min: usize,
    pub nullity_max: usize,
    pub boundary_points: String,
}

impl From<&CountReport> for CountRow {
    fn from(r: &CountReport) -> Self {
        Self {
            variant: r.variant.clone(),
            n: r.n,
            m: r.m,
            index: r.index,
            nullity: r.nullity,
            threshold: r.threshold.clone(),
            energy: r.energy.clone().unwrap_or_default(),
            energy_decimal: r.energy_decimal,
            exact: r.exact,
            index_min: r.index_range[0],
            index_max: r.index_range[1],
            nullity_min: r.nullity_range[0],
            nullity_max: r.nullity_range[1],
            boundary_points: r
                .boundary_points
                .iter()
                .map(|[k, l]| format!("{k}:{l}"))
                .collect::<Vec<_>>()
                .join(" "),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub variant: String,
    pub k: i64,
    pub l: i64,
    pub theta: String,
    pub lambda_minus_over_pi2: String,
    pub lambda_plus_over_pi2: String,
    pub lambda_minus: f64,
    pub lambda_plus: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub variant: Option<String>,
    pub passed: bool,
    pub measured: Option<f64>,
    pub bound: Option<f64>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdjudicationReport {
    pub grid: usize,
    pub fd_negative: usize,
    pub fd_near_zero: usize,
    pub band: f64,
    pub lowest_eigenvalue: f64,
    pub paper_index: usize,
    pub paper_nullity: usize,
    pub dual_index: usize,
    pub dual_nullity: usize,
    pub matching: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub checks: Vec<CheckReport>,
    pub adjudication: Option<AdjudicationReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RatioRow {
    pub variant: String,
    pub t: i64,
    pub n: i64,
    pub m: i64,
    pub energy: f64,
    pub index: usize,
    pub ratio: f64,
    pub limit: f64,
    pub corollary_limit: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub struct SampleRow {
    #[serde(rename = "s")]
    pub s: f64,
    #[serde(rename = "t")]
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}
