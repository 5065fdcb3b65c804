//! The four batch commands, each producing sections of the JSON report.

use hochschild_core::cochain::{
    pair_differential, pair_pullback, secondary_differential_direct, CochainSpace,
};
use hochschild_core::homology::{cohomology_dims, HomologyError};
use hochschild_core::matrix::SparseMatrix;
use hochschild_core::simplicial::{build_circle_pair, build_disk_pair, inclusion_circle_into_disk};

use crate::config::Job;
use crate::report::{
    CohomologySection, DifferenceRow, MatrixDump, PhiRow, PhiSection, TheoremRow, TheoremSection,
    ValidationSection,
};
use crate::CliError;

/// Runs every validator and collects the violations as display strings.
pub fn validate_job(job: &Job) -> ValidationSection {
    let algebra_a: Vec<String> = job.triple.a().validate().iter().map(|v| v.to_string()).collect();
    let algebra_b: Vec<String> = job.triple.b().validate().iter().map(|v| v.to_string()).collect();
    let epsilon: Vec<String> = job
        .triple
        .epsilon()
        .validate()
        .iter()
        .map(|v| v.to_string())
        .collect();
    let module: Vec<String> = job
        .module
        .validate(job.triple.a())
        .iter()
        .map(|v| v.to_string())
        .collect();
    let pair: Vec<String> = job.pair.validate().iter().map(|v| v.to_string()).collect();
    let ok = algebra_a.is_empty()
        && algebra_b.is_empty()
        && epsilon.is_empty()
        && module.is_empty()
        && pair.is_empty();
    ValidationSection {
        ok,
        algebra_a,
        algebra_b,
        epsilon,
        module,
        pair,
    }
}

pub struct CommandOutput {
    pub cohomology: Option<CohomologySection>,
    pub theorem: Option<TheoremSection>,
    pub phi: Option<PhiSection>,
    pub matrices: Vec<MatrixDump>,
    /// Exit code contribution: 0 on success, 1 on a domain failure.
    pub exit: i32,
}

impl CommandOutput {
    fn empty() -> Self {
        CommandOutput {
            cohomology: None,
            theorem: None,
            phi: None,
            matrices: Vec::new(),
            exit: 0,
        }
    }
}

pub fn cmd_cohomology(job: &Job, emit_matrices: bool) -> Result<CommandOutput, CliError> {
    if job.q_max + 1 > job.pair.max_degree() {
        return Err(CliError::domain(format!(
            "q_max = {} needs the pair truncated at degree {} or deeper, got {}",
            job.q_max,
            job.q_max + 1,
            job.pair.max_degree()
        )));
    }
    let mut out = CommandOutput::empty();
    let report = cohomology_dims(&job.pair, &job.triple, &job.module, job.q_max).map_err(
        |e| match e {
            HomologyError::Cochain(e) => CliError::domain(e.to_string()),
            HomologyError::DifferentialSquareNonzero { .. } => CliError::domain(e.to_string()),
        },
    )?;
    out.cohomology = Some(CohomologySection::from_report(&report));
    if emit_matrices {
        for q in 0..=job.q_max {
            let d = pair_differential(&job.pair, q, &job.triple, &job.module)
                .map_err(|e| CliError::domain(e.to_string()))?;
            out.matrices.push(MatrixDump::new(format!("differential_q{q}"), &d));
        }
    }
    Ok(out)
}

pub fn cmd_verify_theorem(
    job: &Job,
    emit_matrices: bool,
    transpose_b_order: bool,
) -> Result<CommandOutput, CliError> {
    // The theorem compares against the disk pair regardless of the
    // configured pair.
    let disk = build_disk_pair(job.q_max.max(1));
    let mut out = CommandOutput::empty();
    let mut rows = Vec::new();
    let mut all_equal = true;
    for n in 1..=job.q_max {
        let mut direct = secondary_differential_direct(n, &job.triple, &job.module)
            .map_err(|e| CliError::domain(e.to_string()))?;
        if transpose_b_order {
            direct = reverse_b_factor_order(&direct, n, job);
        }
        let induced = pair_differential(&disk, n - 1, &job.triple, &job.module)
            .map_err(|e| CliError::domain(e.to_string()))?;
        let difference = direct.first_difference(&induced);
        let equal = difference.is_none();
        all_equal &= equal;
        rows.push(TheoremRow {
            n,
            rows: direct.rows(),
            cols: direct.cols(),
            equal,
            first_difference: difference.map(|d| DifferenceRow {
                row: d.row,
                col: d.col,
                lhs: d.left.map_or_else(|| "0".into(), |s| s.to_string()),
                rhs: d.right.map_or_else(|| "0".into(), |s| s.to_string()),
            }),
        });
        if emit_matrices {
            out.matrices
                .push(MatrixDump::new(format!("secondary_direct_n{n}"), &direct));
            out.matrices
                .push(MatrixDump::new(format!("disk_pair_n{n}"), &induced));
        }
    }
    out.exit = if all_equal { 0 } else { 1 };
    out.theorem = Some(TheoremSection {
        all_equal,
        degrees: rows,
    });
    Ok(out)
}

/// Rebuilds a secondary-differential matrix as if the B-tensor factors
/// had been enumerated in reverse order on both sides. A deliberate
/// negative control: for degrees with more than one B-factor the result
/// must differ from the pair construction.
fn reverse_b_factor_order(matrix: &SparseMatrix, n: usize, job: &Job) -> SparseMatrix {
    let row_space = CochainSpace::new(n, n * (n - 1) / 2, &job.triple, &job.module);
    let col_space = CochainSpace::new(
        n - 1,
        (n - 1) * n.saturating_sub(2) / 2,
        &job.triple,
        &job.module,
    );
    let permute = |space: &CochainSpace, coord: usize| {
        let indexer = space.indexer();
        let (m_idx, tensor) = indexer.decode_coord(coord);
        let (a_idx, mut b_idx) = indexer.decode_tensor(tensor);
        b_idx.reverse();
        indexer.coord(m_idx, indexer.tensor_index(&a_idx, &b_idx))
    };
    let triplets = matrix
        .entries()
        .iter()
        .map(|(r, c, v)| (permute(&row_space, *r), permute(&col_space, *c), v.clone()))
        .collect();
    SparseMatrix::from_triplets(matrix.rows(), matrix.cols(), triplets)
}

pub fn cmd_phi(job: &Job, emit_matrices: bool) -> Result<CommandOutput, CliError> {
    let depth = job.q_max + 1;
    let inclusion = inclusion_circle_into_disk(depth);
    let circle = build_circle_pair(depth);
    let disk = build_disk_pair(depth);
    let mut out = CommandOutput::empty();
    let mut rows = Vec::new();
    for q in 0..=job.q_max {
        let phi_q = pair_pullback(&inclusion, q, &job.triple, &job.module)
            .map_err(|e| CliError::domain(e.to_string()))?;
        let phi_next = pair_pullback(&inclusion, q + 1, &job.triple, &job.module)
            .map_err(|e| CliError::domain(e.to_string()))?;
        let d_disk = pair_differential(&disk, q, &job.triple, &job.module)
            .map_err(|e| CliError::domain(e.to_string()))?;
        let d_circle = pair_differential(&circle, q, &job.triple, &job.module)
            .map_err(|e| CliError::domain(e.to_string()))?;
        let cochain_map_ok = phi_next.matmul(&d_disk) == d_circle.matmul(&phi_q);
        rows.push(PhiRow {
            q,
            rows: phi_q.rows(),
            cols: phi_q.cols(),
            nnz: phi_q.nnz(),
            cochain_map_ok,
        });
        if emit_matrices {
            out.matrices.push(MatrixDump::new(format!("phi_q{q}"), &phi_q));
        }
        if !cochain_map_ok {
            out.exit = 1;
        }
    }
    if out.exit != 0 {
        return Err(CliError::domain(
            "internal consistency failure: the pullback is not a cochain map".into(),
        ));
    }
    out.phi = Some(PhiSection { degrees: rows });
    Ok(out)
}
