//! Shared fixtures and independent oracles for the integration suites.
//!
//! The rank oracle here is plain dense Gaussian elimination over the
//! scalar field, written against the public `Scalar` operations only; it
//! shares no code with the production elimination routines it checks.

use hochschild_core::algebra::{
    builtin_algebra, builtin_morphism, BuiltinAlgebra, SymmetricBimodule, Triple,
};
use hochschild_core::field::FieldSpec;
use hochschild_core::matrix::SparseMatrix;

pub const A_NAMES: [BuiltinAlgebra; 4] = [
    BuiltinAlgebra::GroundField,
    BuiltinAlgebra::DualNumbers,
    BuiltinAlgebra::TruncatedPoly(3),
    BuiltinAlgebra::ProductKk,
];

pub const B_NAMES: [BuiltinAlgebra; 2] =
    [BuiltinAlgebra::GroundField, BuiltinAlgebra::DualNumbers];

pub fn both_fields() -> [FieldSpec; 2] {
    [FieldSpec::prime(101).unwrap(), FieldSpec::Rational]
}

/// A fixture triple with the canonical morphism and `M = A` regular.
pub fn fixture(a: BuiltinAlgebra, b: BuiltinAlgebra, field: &FieldSpec) -> (Triple, SymmetricBimodule) {
    let eps = builtin_morphism(a, b, field);
    let alg_a = builtin_algebra(a, field);
    let alg_b = builtin_algebra(b, field);
    let module = SymmetricBimodule::regular(&alg_a);
    (Triple::new(alg_a, alg_b, eps).unwrap(), module)
}

/// Dense Gaussian elimination rank, the oracle for the sparse and
/// fraction-free production routines.
pub fn dense_rank(matrix: &SparseMatrix) -> usize {
    let Some(field) = matrix.field() else {
        return 0;
    };
    let mut dense = matrix.to_dense(&field);
    let rows = matrix.rows();
    let cols = matrix.cols();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !dense[r][col].is_zero()) else {
            continue;
        };
        dense.swap(rank, pivot);
        let inv = dense[rank][col].inv().expect("pivot is nonzero");
        for c in col..cols {
            dense[rank][c] = &dense[rank][c] * &inv;
        }
        for r in 0..rows {
            if r != rank && !dense[r][col].is_zero() {
                let factor = dense[r][col].clone();
                for c in col..cols {
                    dense[r][c] = &dense[r][c] - &(&factor * &dense[rank][c]);
                }
            }
        }
        rank += 1;
        if rank == rows {
            break;
        }
    }
    rank
}
