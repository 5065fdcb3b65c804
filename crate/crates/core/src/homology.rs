//! Exact ranks of differential matrices and cohomology dimensions.
//!
//! Ranks over a prime field come from sparse Gaussian elimination with
//! Markowitz-style pivoting; ranks over the rationals come from
//! fraction-free Bareiss elimination on arbitrary-precision integers
//! after clearing denominators row by row. Cohomology dimensions then
//! follow from rank-nullity: `dim H^q = dim C^q - rank ∂_q - rank ∂_{q-1}`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{SymmetricBimodule, Triple};
use crate::cochain::{pair_differential, CochainError, CochainSpace};
use crate::field::Scalar;
use crate::matrix::SparseMatrix;
use crate::simplicial::SimplicialPair;

/// Exact rank of a sparse matrix.
pub fn rank(matrix: &SparseMatrix) -> usize {
    match matrix.field() {
        None => 0,
        Some(crate::field::FieldSpec::Prime(p)) => sparse_rank_prime(matrix, p),
        Some(crate::field::FieldSpec::Rational) => bareiss_rank(matrix),
    }
}

/// Sparse elimination over `F_p`.
///
/// Rows are kept as sorted association lists; each step picks, among the
/// entries of a shortest remaining row, the one minimizing the Markowitz
/// count `(row_len - 1) * (col_count - 1)` to limit fill-in.
fn sparse_rank_prime(matrix: &SparseMatrix, p: u32) -> usize {
    let p64 = u64::from(p);
    let inv = |a: u64| -> u64 {
        // Extended Euclid; a is nonzero mod p.
        let (mut r0, mut r1) = (a as i64, p64 as i64);
        let (mut t0, mut t1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        t0.rem_euclid(p64 as i64) as u64
    };

    let mut rows: Vec<BTreeMap<usize, u64>> = Vec::new();
    let mut col_counts: BTreeMap<usize, usize> = BTreeMap::new();
    {
        let mut grouped: BTreeMap<usize, BTreeMap<usize, u64>> = BTreeMap::new();
        for (r, c, v) in matrix.entries() {
            let value = match v {
                Scalar::Prime { value, .. } => u64::from(*value),
                Scalar::Rational(_) => unreachable!("field dispatch"),
            };
            grouped.entry(*r).or_default().insert(*c, value);
            *col_counts.entry(*c).or_insert(0) += 1;
        }
        rows.extend(grouped.into_values());
    }

    let mut rank = 0;
    let mut active: Vec<usize> = (0..rows.len()).collect();
    while !active.is_empty() {
        // Pivot selection: scan the shortest rows first and take the entry
        // with the smallest Markowitz count; a count of zero cannot be
        // beaten, so stop looking once one turns up.
        active.sort_by_key(|&r| rows[r].len());
        let mut best: Option<(usize, usize, u64, usize)> = None;
        'scan: for &r in &active {
            let row_len = rows[r].len();
            for (&c, &v) in &rows[r] {
                let score = (row_len - 1) * (col_counts[&c] - 1);
                if best.map_or(true, |(_, _, _, s)| score < s) {
                    best = Some((r, c, v, score));
                    if score == 0 {
                        break 'scan;
                    }
                }
            }
        }
        let Some((pivot_row, pivot_col, pivot_val, _)) = best else {
            break;
        };
        rank += 1;
        let pivot = rows[pivot_row].clone();
        let pivot_inv = inv(pivot_val);
        for (&c, _) in &pivot {
            if let Some(count) = col_counts.get_mut(&c) {
                *count -= 1;
            }
        }
        active.retain(|&r| r != pivot_row);
        rows[pivot_row].clear();
        for &r in &active {
            let Some(&factor) = rows[r].get(&pivot_col) else {
                continue;
            };
            let scale = factor * pivot_inv % p64;
            for (&c, &pv) in &pivot {
                let entry = rows[r].entry(c);
                match entry {
                    alloc::collections::btree_map::Entry::Occupied(mut o) => {
                        let updated = (*o.get() + p64 - scale * pv % p64) % p64;
                        if updated == 0 {
                            o.remove();
                            *col_counts.get_mut(&c).expect("column counted") -= 1;
                        } else {
                            *o.get_mut() = updated;
                        }
                    }
                    alloc::collections::btree_map::Entry::Vacant(vac) => {
                        let updated = (p64 - scale * pv % p64) % p64;
                        if updated != 0 {
                            vac.insert(updated);
                            *col_counts.entry(c).or_insert(0) += 1;
                        }
                    }
                }
            }
            debug_assert!(!rows[r].contains_key(&pivot_col));
        }
    }
    rank
}

/// Fraction-free Bareiss elimination over the integers.
///
/// Each row is scaled by the least common multiple of its denominators
/// first (row scaling preserves rank), then eliminated with the Bareiss
/// update `a'_{ij} = (a_kk a_ij - a_ik a_kj) / prev_pivot`, which keeps
/// every intermediate value an exact integer minor.
fn bareiss_rank(matrix: &SparseMatrix) -> usize {
    let mut dense: Vec<Vec<BigInt>> = {
        let mut grouped: BTreeMap<usize, Vec<(usize, &Scalar)>> = BTreeMap::new();
        for (r, c, v) in matrix.entries() {
            grouped.entry(*r).or_default().push((*c, v));
        }
        grouped
            .into_values()
            .map(|row_entries| {
                let mut lcm = BigInt::one();
                for (_, v) in &row_entries {
                    let Scalar::Rational(r) = v else {
                        unreachable!("field dispatch")
                    };
                    lcm = lcm.lcm(r.denom());
                }
                let mut row = Vec::with_capacity(matrix.cols());
                row.resize(matrix.cols(), BigInt::zero());
                for (c, v) in row_entries {
                    let Scalar::Rational(r) = v else {
                        unreachable!("field dispatch")
                    };
                    row[c] = r.numer() * (&lcm / r.denom());
                }
                row
            })
            .collect()
    };
    if dense.is_empty() {
        return 0;
    }
    let cols = matrix.cols();
    let mut rank = 0;
    let mut prev_pivot = BigInt::one();
    let mut col = 0;
    while col < cols && rank < dense.len() {
        // Pick the smallest nonzero entry in this column as pivot to slow
        // coefficient growth.
        let pivot_row = (rank..dense.len())
            .filter(|&r| !dense[r][col].is_zero())
            .min_by_key(|&r| dense[r][col].magnitude().bits());
        let Some(pivot_row) = pivot_row else {
            col += 1;
            continue;
        };
        dense.swap(rank, pivot_row);
        for r in rank + 1..dense.len() {
            // The full Bareiss update also rescales rows with a zero in
            // the pivot column; skipping them would break the exactness
            // of later divisions.
            for c in col + 1..cols {
                let num = &dense[rank][col] * &dense[r][c] - &dense[r][col] * &dense[rank][c];
                debug_assert!((&num % &prev_pivot).is_zero());
                dense[r][c] = num / &prev_pivot;
            }
            dense[r][col] = BigInt::zero();
        }
        prev_pivot = dense[rank][col].clone();
        rank += 1;
        col += 1;
    }
    rank
}

/// One degree of a cochain complex: the space dimension with its incoming
/// and outgoing differentials.
#[derive(Clone, Debug)]
pub struct ComplexSlice {
    pub degree: usize,
    pub space_dim: usize,
    /// `∂_{q-1}`, absent in degree zero.
    pub incoming: Option<SparseMatrix>,
    /// `∂_q`.
    pub outgoing: SparseMatrix,
}

/// Per-degree dimensions and ranks of a cochain complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyReport {
    pub degrees: Vec<DegreeSummary>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeSummary {
    pub degree: usize,
    pub space_dim: usize,
    /// Rank of `∂_q` out of this degree.
    pub outgoing_rank: usize,
    /// Rank of `∂_{q-1}` into this degree (zero in degree zero).
    pub incoming_rank: usize,
    pub cohomology_dim: usize,
}

impl CohomologyReport {
    pub fn dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.cohomology_dim).collect()
    }
}

/// Errors from the cohomology pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomologyError {
    Cochain(CochainError),
    /// `∂_{q+1} ∂_q ≠ 0`: the complex construction is broken, with the
    /// position of a nonzero product entry as witness.
    DifferentialSquareNonzero { q: usize, row: usize, col: usize },
}

impl fmt::Display for HomologyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyError::Cochain(e) => write!(f, "{e}"),
            HomologyError::DifferentialSquareNonzero { q, row, col } => write!(
                f,
                "internal consistency failure: (d_{} ∘ d_{q}) has a nonzero entry at ({row}, {col})",
                q + 1
            ),
        }
    }
}

impl core::error::Error for HomologyError {}

impl From<CochainError> for HomologyError {
    fn from(e: CochainError) -> Self {
        HomologyError::Cochain(e)
    }
}

/// Builds the differentials `∂_0, …, ∂_{q_max}` of a pair, asserts
/// `∂_{q+1} ∂_q = 0` on all consecutive pairs, and returns them as
/// complex slices. The `d² = 0` check is always on; a failure means the
/// construction itself is wrong and is reported as a fatal error.
pub fn complex_slices(
    pair: &SimplicialPair,
    triple: &Triple,
    module: &SymmetricBimodule,
    q_max: usize,
) -> Result<Vec<ComplexSlice>, HomologyError> {
    let mut differentials = Vec::with_capacity(q_max + 1);
    for q in 0..=q_max {
        differentials.push(pair_differential(pair, q, triple, module)?);
    }
    for q in 0..q_max {
        if let Err((row, col)) = differentials[q + 1].product_is_zero(&differentials[q]) {
            return Err(HomologyError::DifferentialSquareNonzero { q, row, col });
        }
    }
    let mut slices = Vec::with_capacity(q_max + 1);
    for (q, outgoing) in differentials.iter().enumerate() {
        slices.push(ComplexSlice {
            degree: q,
            space_dim: CochainSpace::for_level(pair.level(q), triple, module).total_dim(),
            incoming: if q == 0 {
                None
            } else {
                Some(differentials[q - 1].clone())
            },
            outgoing: outgoing.clone(),
        });
    }
    Ok(slices)
}

/// Cohomology dimensions of a pair for degrees `0 ..= q_max`.
///
/// Needs the pair truncated at `q_max + 1` or deeper, since `∂_{q_max}`
/// uses the faces of level `q_max + 1`.
pub fn cohomology_dims(
    pair: &SimplicialPair,
    triple: &Triple,
    module: &SymmetricBimodule,
    q_max: usize,
) -> Result<CohomologyReport, HomologyError> {
    let slices = complex_slices(pair, triple, module, q_max)?;
    let mut degrees = Vec::with_capacity(q_max + 1);
    let mut previous_rank = 0;
    for slice in &slices {
        let outgoing_rank = rank(&slice.outgoing);
        let incoming_rank = previous_rank;
        degrees.push(DegreeSummary {
            degree: slice.degree,
            space_dim: slice.space_dim,
            outgoing_rank,
            incoming_rank,
            cohomology_dim: slice.space_dim - outgoing_rank - incoming_rank,
        });
        previous_rank = outgoing_rank;
    }
    Ok(CohomologyReport { degrees })
}
