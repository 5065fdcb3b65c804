//! The machine-readable JSON report, schema version "1".
//!
//! Reports are deterministic: the same resolved configuration produces a
//! byte-identical document, except for the timing block, which can be
//! suppressed with `--no-timing`.

use serde::Serialize;
use sha2::{Digest, Sha256};

use hochschild_core::homology::CohomologyReport;
use hochschild_core::matrix::SparseMatrix;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct Report {
    pub schema_version: &'static str,
    pub command: String,
    pub config_digest: String,
    pub field: String,
    pub pair: String,
    pub q_max: usize,
    pub validation: ValidationSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cohomology: Option<CohomologySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theorem: Option<TheoremSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<PhiSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrices: Option<Vec<MatrixDump>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingSection>,
}

#[derive(Serialize)]
pub struct ValidationSection {
    pub ok: bool,
    pub algebra_a: Vec<String>,
    pub algebra_b: Vec<String>,
    pub epsilon: Vec<String>,
    pub module: Vec<String>,
    pub pair: Vec<String>,
}

#[derive(Serialize)]
pub struct CohomologySection {
    pub degrees: Vec<DegreeRow>,
}

#[derive(Serialize)]
pub struct DegreeRow {
    pub degree: usize,
    pub space_dim: usize,
    pub rank_outgoing: usize,
    pub rank_incoming: usize,
    pub cohomology_dim: usize,
}

impl CohomologySection {
    pub fn from_report(report: &CohomologyReport) -> Self {
        CohomologySection {
            degrees: report
                .degrees
                .iter()
                .map(|d| DegreeRow {
                    degree: d.degree,
                    space_dim: d.space_dim,
                    rank_outgoing: d.outgoing_rank,
                    rank_incoming: d.incoming_rank,
                    cohomology_dim: d.cohomology_dim,
                })
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TheoremSection {
    pub all_equal: bool,
    pub degrees: Vec<TheoremRow>,
}

#[derive(Serialize)]
pub struct TheoremRow {
    /// Matrices compared in degree `n` map `C^{n-1}` to `C^n`.
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    pub equal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_difference: Option<DifferenceRow>,
}

#[derive(Serialize)]
pub struct DifferenceRow {
    pub row: usize,
    pub col: usize,
    /// Value in the directly-built secondary differential ("0" if absent).
    pub lhs: String,
    /// Value in the disk-pair differential ("0" if absent).
    pub rhs: String,
}

#[derive(Serialize)]
pub struct PhiSection {
    pub degrees: Vec<PhiRow>,
}

#[derive(Serialize)]
pub struct PhiRow {
    pub q: usize,
    pub rows: usize,
    pub cols: usize,
    pub nnz: usize,
    pub cochain_map_ok: bool,
}

#[derive(Serialize)]
pub struct MatrixDump {
    pub name: String,
    pub rows: usize,
    pub cols: usize,
    /// `(row, col, scalar)` triplets in canonical order.
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixDump {
    pub fn new(name: String, matrix: &SparseMatrix) -> Self {
        MatrixDump {
            name,
            rows: matrix.rows(),
            cols: matrix.cols(),
            entries: matrix
                .entries()
                .iter()
                .map(|(r, c, v)| (*r, *c, v.to_string()))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct TimingSection {
    pub resolve_ms: u128,
    pub validate_ms: u128,
    pub compute_ms: u128,
    pub total_ms: u128,
}

/// SHA-256 of the canonical JSON form of the resolved configuration.
pub fn config_digest<T: Serialize>(config: &T) -> String {
    let canonical = serde_json::to_string(config).expect("config serializes");
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    let mut hex = String::with_capacity(64);
    for byte in digest {
        hex.push_str(&format!("{byte:02x}"));
    }
    hex
}
