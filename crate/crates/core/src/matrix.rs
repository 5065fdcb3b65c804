//! Sparse exact matrices in canonical triplet form.
//!
//! Entries are kept sorted by `(row, col)`, with duplicates accumulated and
//! zeros dropped, so two matrices are equal as linear maps exactly when
//! their representations are equal. Matrices act on column vectors: an
//! `r × c` matrix maps a `c`-dimensional space into an `r`-dimensional one.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Scalar)>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn identity(n: usize, field: &FieldSpec) -> Self {
        SparseMatrix {
            rows: n,
            cols: n,
            entries: (0..n).map(|i| (i, i, field.one())).collect(),
        }
    }

    /// Builds a matrix from arbitrary triplets: out-of-order input is
    /// sorted, repeated positions are summed, zeros are dropped.
    pub fn from_triplets(rows: usize, cols: usize, triplets: Vec<(usize, usize, Scalar)>) -> Self {
        let mut triplets = triplets;
        for (r, c, _) in &triplets {
            assert!(*r < rows && *c < cols, "triplet ({r}, {c}) out of bounds for {rows}x{cols}");
        }
        triplets.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::with_capacity(triplets.len());
        for (r, c, v) in triplets {
            match entries.last_mut() {
                Some((lr, lc, lv)) if *lr == r && *lc == c => {
                    *lv = &*lv + &v;
                }
                _ => entries.push((r, c, v)),
            }
        }
        entries.retain(|(_, _, v)| !v.is_zero());
        SparseMatrix { rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sorted `(row, col, value)` triplets.
    pub fn entries(&self) -> &[(usize, usize, Scalar)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by(|(r, c, _)| (*r, *c).cmp(&(row, col)))
            .ok()
            .map(|i| &self.entries[i].2)
    }

    /// The field of the entries, if any entry exists.
    pub fn field(&self) -> Option<FieldSpec> {
        self.entries.first().map(|(_, _, v)| v.field())
    }

    /// `self · rhs` as maps on column vectors.
    pub fn matmul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            self.cols, rhs.rows,
            "shape mismatch: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        // Group our entries by column so each rhs entry (k, j, w) can be
        // paired with our column k.
        let mut by_col: Vec<Vec<(usize, &Scalar)>> = Vec::new();
        by_col.resize_with(self.cols, Vec::new);
        for (r, c, v) in &self.entries {
            by_col[*c].push((*r, v));
        }
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (k, j, w) in &rhs.entries {
            for (i, v) in &by_col[*k] {
                let term = *v * w;
                match acc.get_mut(&(*i, *j)) {
                    Some(sum) => *sum = &*sum + &term,
                    None => {
                        acc.insert((*i, *j), term);
                    }
                }
            }
        }
        let entries = acc
            .into_iter()
            .filter(|(_, v)| !v.is_zero())
            .map(|((r, c), v)| (r, c, v))
            .collect();
        SparseMatrix {
            rows: self.rows,
            cols: rhs.cols,
            entries,
        }
    }

    /// Checks `self · rhs = 0` without materializing the product; returns
    /// the position of the first nonzero product entry otherwise.
    ///
    /// Memory stays proportional to one row of the product, which matters
    /// when `self` is large.
    pub fn product_is_zero(&self, rhs: &SparseMatrix) -> Result<(), (usize, usize)> {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        let mut rhs_by_row: Vec<Vec<(usize, &Scalar)>> = Vec::new();
        rhs_by_row.resize_with(rhs.rows, Vec::new);
        for (r, c, v) in &rhs.entries {
            rhs_by_row[*r].push((*c, v));
        }
        // Our entries are sorted by row, so each row of the product can be
        // accumulated and checked in one pass.
        let mut idx = 0;
        while idx < self.entries.len() {
            let row = self.entries[idx].0;
            let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
            while idx < self.entries.len() && self.entries[idx].0 == row {
                let (_, k, v) = &self.entries[idx];
                for (j, w) in &rhs_by_row[*k] {
                    let term = v * *w;
                    match acc.get_mut(j) {
                        Some(sum) => *sum = &*sum + &term,
                        None => {
                            acc.insert(*j, term);
                        }
                    }
                }
                idx += 1;
            }
            if let Some((j, _)) = acc.iter().find(|(_, v)| !v.is_zero()) {
                return Err((row, *j));
            }
        }
        Ok(())
    }

    /// First position where the two matrices differ, with both values
    /// (absent entries count as zero). `None` means the matrices are equal.
    pub fn first_difference(&self, other: &SparseMatrix) -> Option<EntryDifference> {
        if self.rows != other.rows || self.cols != other.cols {
            return Some(EntryDifference {
                row: 0,
                col: 0,
                left: None,
                right: None,
                shape_mismatch: true,
            });
        }
        let (mut i, mut j) = (0, 0);
        while i < self.entries.len() || j < other.entries.len() {
            let a = self.entries.get(i);
            let b = other.entries.get(j);
            match (a, b) {
                (Some((ar, ac, av)), Some((br, bc, bv))) => match (ar, ac).cmp(&(br, bc)) {
                    core::cmp::Ordering::Equal => {
                        if av != bv {
                            return Some(EntryDifference {
                                row: *ar,
                                col: *ac,
                                left: Some(av.clone()),
                                right: Some(bv.clone()),
                                shape_mismatch: false,
                            });
                        }
                        i += 1;
                        j += 1;
                    }
                    core::cmp::Ordering::Less => {
                        return Some(EntryDifference {
                            row: *ar,
                            col: *ac,
                            left: Some(av.clone()),
                            right: None,
                            shape_mismatch: false,
                        });
                    }
                    core::cmp::Ordering::Greater => {
                        return Some(EntryDifference {
                            row: *br,
                            col: *bc,
                            left: None,
                            right: Some(bv.clone()),
                            shape_mismatch: false,
                        });
                    }
                },
                (Some((ar, ac, av)), None) => {
                    return Some(EntryDifference {
                        row: *ar,
                        col: *ac,
                        left: Some(av.clone()),
                        right: None,
                        shape_mismatch: false,
                    });
                }
                (None, Some((br, bc, bv))) => {
                    return Some(EntryDifference {
                        row: *br,
                        col: *bc,
                        left: None,
                        right: Some(bv.clone()),
                        shape_mismatch: false,
                    });
                }
                (None, None) => unreachable!(),
            }
        }
        None
    }

    /// Dense row-major copy; intended for small matrices and test oracles.
    pub fn to_dense(&self, field: &FieldSpec) -> Vec<Vec<Scalar>> {
        let mut dense = Vec::with_capacity(self.rows);
        for _ in 0..self.rows {
            let mut row = Vec::with_capacity(self.cols);
            row.resize(self.cols, field.zero());
            dense.push(row);
        }
        for (r, c, v) in &self.entries {
            dense[*r][*c] = v.clone();
        }
        dense
    }
}

/// A located discrepancy between two matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryDifference {
    pub row: usize,
    pub col: usize,
    /// Value in the left matrix, `None` for an absent (zero) entry.
    pub left: Option<Scalar>,
    pub right: Option<Scalar>,
    pub shape_mismatch: bool,
}
