//! Cochain spaces `Hom(A^⊗m ⊗ B^⊗n, M)` and the linear maps between them.
//!
//! A level `(x_size, y_size)` of a simplicial pair is a pair of pointed
//! sets and contributes the cochain space with `m = x_size - 1` tensor
//! factors from `A` (one per non-base element of the subset) and
//! `n = y_size - x_size` factors from `B` (one per element outside the
//! subset). A pointed map of pairs `f` pulls cochains back along a
//! formula that multiplies together everything landing on the same
//! element: factors collapsing into the subset are multiplied in `A`
//! (applying `ε` to the `B`-factors among them), factors collapsing
//! outside the subset are multiplied in `B`, and everything landing on
//! the basepoint acts on the module value. Empty products are units.
//!
//! Three differential constructions live here:
//!
//! * [`pair_differential`] — the alternating sum of the maps induced by
//!   the face tables of a simplicial pair,
//! * [`secondary_differential_direct`] — the secondary Hochschild
//!   coboundary written out directly from its defining formula on
//!   upper-triangular tensor matrices, sharing no assembly code with the
//!   induced-map machinery,
//! * [`classical_differential`] — the textbook Hochschild coboundary,
//!   used as an independent oracle.
//!
//! All matrices use one basis convention: a cochain coordinate pairs a
//! module basis index (most significant) with a tensor index that runs
//! over the `A`-block then the `B`-block, rightmost factor fastest. For
//! the disk pair the `B`-factors are ordered like the upper-triangular
//! positions `(r, c)` read row by row, which is exactly the canonical
//! cell order of [`DiskCellLabel`], so the secondary and the pair-induced
//! matrices can be compared entry for entry.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{SymmetricBimodule, Triple};
use crate::field::{FieldSpec, Scalar};
use crate::matrix::SparseMatrix;
use crate::simplicial::{DiskCellLabel, PairLevel, PairMorphism, SimplicialPair};

/// Dimension data of one cochain space `Hom(A^⊗m ⊗ B^⊗n, M)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CochainSpace {
    a_factors: usize,
    b_factors: usize,
    dim_a: usize,
    dim_b: usize,
    dim_m: usize,
}

impl CochainSpace {
    pub fn new(a_factors: usize, b_factors: usize, triple: &Triple, module: &SymmetricBimodule) -> Self {
        CochainSpace {
            a_factors,
            b_factors,
            dim_a: triple.a().dim(),
            dim_b: triple.b().dim(),
            dim_m: module.dim(),
        }
    }

    /// The cochain space attached to one level of a pair.
    pub fn for_level(level: PairLevel, triple: &Triple, module: &SymmetricBimodule) -> Self {
        CochainSpace::new(level.x_size - 1, level.y_size - level.x_size, triple, module)
    }

    pub fn a_factors(&self) -> usize {
        self.a_factors
    }

    pub fn b_factors(&self) -> usize {
        self.b_factors
    }

    /// Number of basis tensors of `A^⊗m ⊗ B^⊗n`.
    pub fn tensor_count(&self) -> usize {
        self.dim_a.pow(self.a_factors as u32) * self.dim_b.pow(self.b_factors as u32)
    }

    /// Dimension of the cochain space itself.
    pub fn total_dim(&self) -> usize {
        self.dim_m * self.tensor_count()
    }

    pub fn indexer(&self) -> BasisIndexer {
        BasisIndexer { space: *self }
    }
}

/// The bijection between cochain coordinates and basis tuples.
///
/// A tensor index encodes `(a_1, …, a_m, b_1, …, b_n)` with the rightmost
/// index fastest; a coordinate is `m_idx * tensor_count + tensor_idx`.
#[derive(Clone, Copy, Debug)]
pub struct BasisIndexer {
    space: CochainSpace,
}

impl BasisIndexer {
    pub fn tensor_index(&self, a_idx: &[usize], b_idx: &[usize]) -> usize {
        debug_assert_eq!(a_idx.len(), self.space.a_factors);
        debug_assert_eq!(b_idx.len(), self.space.b_factors);
        let mut t = 0;
        for &a in a_idx {
            debug_assert!(a < self.space.dim_a);
            t = t * self.space.dim_a + a;
        }
        for &b in b_idx {
            debug_assert!(b < self.space.dim_b);
            t = t * self.space.dim_b + b;
        }
        t
    }

    pub fn decode_tensor(&self, mut t: usize) -> (Vec<usize>, Vec<usize>) {
        let mut b_idx = Vec::with_capacity(self.space.b_factors);
        b_idx.resize(self.space.b_factors, 0);
        for slot in (0..self.space.b_factors).rev() {
            b_idx[slot] = t % self.space.dim_b;
            t /= self.space.dim_b;
        }
        let mut a_idx = Vec::with_capacity(self.space.a_factors);
        a_idx.resize(self.space.a_factors, 0);
        for slot in (0..self.space.a_factors).rev() {
            a_idx[slot] = t % self.space.dim_a;
            t /= self.space.dim_a;
        }
        debug_assert_eq!(t, 0);
        (a_idx, b_idx)
    }

    pub fn coord(&self, m_idx: usize, tensor_idx: usize) -> usize {
        debug_assert!(m_idx < self.space.dim_m);
        m_idx * self.space.tensor_count() + tensor_idx
    }

    pub fn decode_coord(&self, coord: usize) -> (usize, usize) {
        let t = self.space.tensor_count();
        (coord / t, coord % t)
    }
}

/// A position in the upper-triangular tensor matrix of the disk pair:
/// `(r, r)` on the diagonal carries an `A`-entry, `(r, c)` with `r < c`
/// carries a `B`-entry, and `(0, 0)` stands for the basepoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorMatrixPosition {
    pub row: usize,
    pub col: usize,
}

/// Errors from cochain-level operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CochainError {
    /// A map table is not a morphism of pointed-set pairs.
    InvalidTable(&'static str),
    /// A degree outside the truncation range of the pair.
    DegreeOutOfRange { q: usize, max_degree: usize },
    /// A cell label whose parameters do not match the stated degree.
    LabelDegreeMismatch,
    /// The pair morphism fails validation.
    InvalidPairMorphism,
    /// The algebras and module do not fit together.
    DimensionMismatch(&'static str),
    /// The secondary differential needs a target degree of at least one.
    DegreeTooSmall,
}

impl fmt::Display for CochainError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CochainError::InvalidTable(what) => write!(f, "invalid pair-map table: {what}"),
            CochainError::DegreeOutOfRange { q, max_degree } => {
                write!(f, "degree {q} needs level {}, pair is truncated at {max_degree}", q + 1)
            }
            CochainError::LabelDegreeMismatch => write!(f, "cell label does not match the degree"),
            CochainError::InvalidPairMorphism => write!(f, "pair morphism fails validation"),
            CochainError::DimensionMismatch(what) => write!(f, "dimension mismatch: {what}"),
            CochainError::DegreeTooSmall => write!(f, "secondary differential needs n >= 1"),
        }
    }
}

impl core::error::Error for CochainError {}

/// Tensor-matrix position of a disk cell of degree `n`.
pub fn tensor_position_of(label: &DiskCellLabel, n: usize) -> Result<TensorMatrixPosition, CochainError> {
    if !label.has_degree(n) {
        return Err(CochainError::LabelDegreeMismatch);
    }
    Ok(match *label {
        DiskCellLabel::Basepoint => TensorMatrixPosition { row: 0, col: 0 },
        DiskCellLabel::Interval { a, .. } => TensorMatrixPosition { row: a + 1, col: a + 1 },
        DiskCellLabel::Triangle { a, b, .. } => TensorMatrixPosition { row: a + 1, col: a + b + 2 },
    })
}

fn check_coefficients(triple: &Triple, module: &SymmetricBimodule) -> Result<(), CochainError> {
    if module.algebra_dim() != triple.a().dim() {
        return Err(CochainError::DimensionMismatch("module is not over the algebra A"));
    }
    if module.field() != triple.field() {
        return Err(CochainError::DimensionMismatch("module over a different field"));
    }
    Ok(())
}

/// Where one tensor factor of the row-side space comes from.
#[derive(Clone, Copy, Debug)]
struct FiberSource {
    /// Element index in the row-side level, `1..y_size`.
    position: usize,
    /// Whether the factor passes through `ε` (a `B`-factor collapsing
    /// into the subset).
    via_eps: bool,
}

/// One signed pair-map table with its fibers precomputed: `fibers[i]`
/// lists the non-base source elements mapping to target element `i`.
struct SignedTable {
    negative: bool,
    fibers: Vec<Vec<FiberSource>>,
}

/// A slot value during column expansion: a basis vector (by index), a
/// borrowed coordinate vector, or a shared product from the memo table.
enum Vect<'a> {
    Basis(usize),
    Slice(&'a [Scalar]),
    Shared(Rc<Vec<Scalar>>),
}

impl Vect<'_> {
    fn coords(&self) -> Option<&[Scalar]> {
        match self {
            Vect::Basis(_) => None,
            Vect::Slice(s) => Some(s),
            Vect::Shared(v) => Some(v),
        }
    }
}

/// Assembles matrices of pulled-back cochain maps for one pair of levels.
///
/// `row_level` is the level of the map's source pair of pointed sets and
/// indexes the matrix rows (contravariance: cochains pull back from the
/// table's target to its source).
struct InducedMapAssembler<'a> {
    triple: &'a Triple,
    module: &'a SymmetricBimodule,
    row_level: PairLevel,
    col_level: PairLevel,
    row_space: CochainSpace,
    col_space: CochainSpace,
    field: FieldSpec,
    /// Memoized fiber products, keyed by `(table, slot)` and the packed
    /// basis indices of the fiber members.
    memo: BTreeMap<(usize, usize, u64), Rc<Vec<Scalar>>>,
}

impl<'a> InducedMapAssembler<'a> {
    fn new(
        row_level: PairLevel,
        col_level: PairLevel,
        triple: &'a Triple,
        module: &'a SymmetricBimodule,
    ) -> Result<Self, CochainError> {
        check_coefficients(triple, module)?;
        if row_level.x_size < 1 || row_level.x_size > row_level.y_size {
            return Err(CochainError::DimensionMismatch("row level sizes"));
        }
        if col_level.x_size < 1 || col_level.x_size > col_level.y_size {
            return Err(CochainError::DimensionMismatch("column level sizes"));
        }
        Ok(InducedMapAssembler {
            triple,
            module,
            row_level,
            col_level,
            row_space: CochainSpace::for_level(row_level, triple, module),
            col_space: CochainSpace::for_level(col_level, triple, module),
            field: *triple.field(),
            memo: BTreeMap::new(),
        })
    }

    /// Checks that `table` is a basepoint-preserving map sending the
    /// subset into the subset, and splits it into fibers.
    fn signed_table(&self, table: &[usize], negative: bool) -> Result<SignedTable, CochainError> {
        if table.len() != self.row_level.y_size {
            return Err(CochainError::InvalidTable("length does not match the level"));
        }
        if table[0] != 0 {
            return Err(CochainError::InvalidTable("basepoint is not preserved"));
        }
        let mut fibers: Vec<Vec<FiberSource>> = Vec::new();
        fibers.resize_with(self.col_level.y_size, Vec::new);
        for (position, &image) in table.iter().enumerate().skip(1) {
            if image >= self.col_level.y_size {
                return Err(CochainError::InvalidTable("image out of range"));
            }
            let from_subset = position < self.row_level.x_size;
            let into_subset = image < self.col_level.x_size;
            if from_subset && !into_subset {
                return Err(CochainError::InvalidTable("subset does not map into subset"));
            }
            fibers[image].push(FiberSource {
                position,
                via_eps: !from_subset && into_subset,
            });
        }
        Ok(SignedTable { negative, fibers })
    }

    fn source_index(&self, s: &FiberSource, a_idx: &[usize], b_idx: &[usize]) -> usize {
        if s.position < self.row_level.x_size {
            a_idx[s.position - 1]
        } else {
            b_idx[s.position - self.row_level.x_size]
        }
    }

    /// The value of target slot `slot` on the row tensor `(a_idx, b_idx)`:
    /// the product of all fiber members, an empty product being the unit.
    fn slot_value(
        &mut self,
        table_idx: usize,
        slot: usize,
        fiber: &[FiberSource],
        a_idx: &[usize],
        b_idx: &[usize],
    ) -> Vect<'a> {
        let in_a = slot < self.col_level.x_size;
        // Fast paths: empty fiber is the unit, a single factor that needs
        // no multiplication is used as is.
        if fiber.is_empty() {
            return if in_a {
                Vect::Slice(self.triple.a().unit_coords())
            } else {
                Vect::Slice(self.triple.b().unit_coords())
            };
        }
        if fiber.len() == 1 {
            let s = fiber[0];
            let index = self.source_index(&s, a_idx, b_idx);
            return if s.via_eps {
                Vect::Slice(self.triple.epsilon().image_of_basis(index))
            } else {
                Vect::Basis(index)
            };
        }
        // Multi-factor fiber: memoize on the packed member indices, since
        // the same small products repeat across row tensors.
        let packable =
            fiber.len() <= 8 && fiber.iter().all(|s| self.source_index(s, a_idx, b_idx) < 256);
        if packable {
            let mut key = 0u64;
            for s in fiber {
                key = key << 8 | self.source_index(s, a_idx, b_idx) as u64;
            }
            if let Some(v) = self.memo.get(&(table_idx, slot, key)) {
                return Vect::Shared(Rc::clone(v));
            }
            let v = Rc::new(self.multiply_fiber(fiber, in_a, a_idx, b_idx));
            self.memo.insert((table_idx, slot, key), Rc::clone(&v));
            Vect::Shared(v)
        } else {
            Vect::Shared(Rc::new(self.multiply_fiber(fiber, in_a, a_idx, b_idx)))
        }
    }

    fn multiply_fiber(
        &self,
        fiber: &[FiberSource],
        in_a: bool,
        a_idx: &[usize],
        b_idx: &[usize],
    ) -> Vec<Scalar> {
        let algebra = if in_a { self.triple.a() } else { self.triple.b() };
        let mut acc = algebra.unit_element();
        for s in fiber {
            let index = self.source_index(s, a_idx, b_idx);
            let factor = if s.position >= self.row_level.x_size && s.via_eps {
                self.triple
                    .a()
                    .element(self.triple.epsilon().image_of_basis(index).to_vec())
                    .expect("epsilon columns have the dimension of A")
            } else {
                algebra.basis_element(index)
            };
            acc = algebra
                .multiply(&acc, &factor)
                .expect("fiber factors live in the slot algebra");
        }
        acc.coords().to_vec()
    }

    /// Dense action block of the basepoint fiber value: entry
    /// `(m_out, m_in)` is the `m_out`-coordinate of `base · m_{m_in}`.
    fn action_block(&self, base: &Vect<'_>) -> Vec<Scalar> {
        let dim_m = self.module.dim();
        let mut block = Vec::with_capacity(dim_m * dim_m);
        block.resize(dim_m * dim_m, self.field.zero());
        match base {
            Vect::Basis(l) => {
                for m_in in 0..dim_m {
                    for (m_out, c) in self.module.basis_action(*l, m_in).iter().enumerate() {
                        if !c.is_zero() {
                            block[m_out * dim_m + m_in] = c.clone();
                        }
                    }
                }
            }
            _ => {
                let coords = base.coords().expect("non-basis value has coordinates");
                for (l, bl) in coords.iter().enumerate() {
                    if bl.is_zero() {
                        continue;
                    }
                    for m_in in 0..dim_m {
                        for (m_out, c) in self.module.basis_action(l, m_in).iter().enumerate() {
                            if !c.is_zero() {
                                let cell = &mut block[m_out * dim_m + m_in];
                                *cell = &*cell + &(bl * c);
                            }
                        }
                    }
                }
            }
        }
        block
    }

    /// Builds the matrix of the signed sum of the pulled-back maps.
    fn assemble(&mut self, tables: &[(bool, &[usize])]) -> Result<SparseMatrix, CochainError> {
        let signed: Vec<SignedTable> = tables
            .iter()
            .map(|(negative, table)| self.signed_table(table, *negative))
            .collect::<Result<_, _>>()?;
        let row_indexer = self.row_space.indexer();
        let col_indexer = self.col_space.indexer();
        let dim_m = self.module.dim();
        let row_tensors = self.row_space.tensor_count();
        let col_x = self.col_level.x_size;
        let col_y = self.col_level.y_size;
        let dim_a = self.triple.a().dim();
        let dim_b = self.triple.b().dim();
        let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();

        for row_tensor in 0..row_tensors {
            let (a_idx, b_idx) = row_indexer.decode_tensor(row_tensor);
            // Accumulate all signed contributions for this row group as
            // dense (m_out × m_in) blocks per column tensor, so opposite
            // faces cancel before anything is stored.
            let mut blocks: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
            for (table_idx, table) in signed.iter().enumerate() {
                let base = self.slot_value(table_idx, 0, &table.fibers[0], &a_idx, &b_idx);
                let action = self.action_block(&base);
                if action.iter().all(Scalar::is_zero) {
                    continue;
                }
                let mut slots = Vec::with_capacity(col_y - 1);
                for slot in 1..col_y {
                    slots.push((
                        self.slot_value(table_idx, slot, &table.fibers[slot], &a_idx, &b_idx),
                        if slot < col_x { dim_a } else { dim_b },
                    ));
                }
                let field = self.field;
                expand_tensor(&slots, &field, &mut |col_tensor, coeff| {
                    let block = blocks.entry(col_tensor).or_insert_with(|| {
                        let mut b = Vec::with_capacity(dim_m * dim_m);
                        b.resize(dim_m * dim_m, field.zero());
                        b
                    });
                    for (pos, act) in action.iter().enumerate() {
                        if act.is_zero() {
                            continue;
                        }
                        let term = act * coeff;
                        block[pos] = if table.negative {
                            &block[pos] - &term
                        } else {
                            &block[pos] + &term
                        };
                    }
                });
            }
            for (col_tensor, block) in blocks {
                for m_out in 0..dim_m {
                    for m_in in 0..dim_m {
                        let v = &block[m_out * dim_m + m_in];
                        if !v.is_zero() {
                            triplets.push((
                                row_indexer.coord(m_out, row_tensor),
                                col_indexer.coord(m_in, col_tensor),
                                v.clone(),
                            ));
                        }
                    }
                }
            }
        }
        Ok(SparseMatrix::from_triplets(
            self.row_space.total_dim(),
            self.col_space.total_dim(),
            triplets,
        ))
    }
}

/// Depth-first expansion of a tensor product of coordinate vectors into
/// basis tensors: calls `emit(tensor_index, coefficient)` once per
/// combination of nonzero coordinates.
fn expand_tensor(
    slots: &[(Vect<'_>, usize)],
    field: &FieldSpec,
    emit: &mut dyn FnMut(usize, &Scalar),
) {
    fn go(
        slots: &[(Vect<'_>, usize)],
        k: usize,
        t: usize,
        coeff: &Scalar,
        emit: &mut dyn FnMut(usize, &Scalar),
    ) {
        if k == slots.len() {
            emit(t, coeff);
            return;
        }
        let (value, dim) = &slots[k];
        match value {
            Vect::Basis(i) => go(slots, k + 1, t * dim + i, coeff, emit),
            _ => {
                for (i, c) in value.coords().expect("vector slot").iter().enumerate() {
                    if !c.is_zero() {
                        go(slots, k + 1, t * dim + i, &(coeff * c), emit);
                    }
                }
            }
        }
    }
    go(slots, 0, 0, &field.one(), emit);
}

/// Matrix of the pullback along one map of pointed-set pairs.
///
/// `table` maps `source_level` to `target_level`; the returned matrix is
/// contravariant, sending cochains on the target level to cochains on the
/// source level, so its rows are indexed by the source-level space.
pub fn induced_map(
    source_level: PairLevel,
    target_level: PairLevel,
    table: &[usize],
    triple: &Triple,
    module: &SymmetricBimodule,
) -> Result<SparseMatrix, CochainError> {
    let mut assembler = InducedMapAssembler::new(source_level, target_level, triple, module)?;
    assembler.assemble(&[(false, table)])
}

/// The differential `∂_q: C^q → C^{q+1}` of a simplicial pair: the
/// alternating sum `Σ (-1)^i d_i^*` over the faces of level `q + 1`.
pub fn pair_differential(
    pair: &SimplicialPair,
    q: usize,
    triple: &Triple,
    module: &SymmetricBimodule,
) -> Result<SparseMatrix, CochainError> {
    if q + 1 > pair.max_degree() {
        return Err(CochainError::DegreeOutOfRange {
            q,
            max_degree: pair.max_degree(),
        });
    }
    let mut assembler =
        InducedMapAssembler::new(pair.level(q + 1), pair.level(q), triple, module)?;
    let tables: Vec<(bool, &[usize])> = (0..=q + 1)
        .map(|i| (i % 2 == 1, pair.face_table(q + 1, i)))
        .collect();
    assembler.assemble(&tables)
}

/// Cochain-level pullback along a morphism of simplicial pairs, at one
/// degree.
pub fn pair_pullback(
    h: &PairMorphism,
    q: usize,
    triple: &Triple,
    module: &SymmetricBimodule,
) -> Result<SparseMatrix, CochainError> {
    if q > h.source().max_degree() {
        return Err(CochainError::DegreeOutOfRange {
            q,
            max_degree: h.source().max_degree(),
        });
    }
    if !h.validate().is_empty() {
        return Err(CochainError::InvalidPairMorphism);
    }
    let mut assembler =
        InducedMapAssembler::new(h.source().level(q), h.target().level(q), triple, module)?;
    assembler.assemble(&[(false, h.level_map(q))])
}

/// Linear index of the upper-triangular position `(i, j)`, `1 ≤ i < j ≤ n`,
/// in row-major order.
fn pair_slot(i: usize, j: usize, n: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    (i - 1) * n - i * (i - 1) / 2 + (j - i - 1)
}

/// The secondary Hochschild coboundary `δ_{n-1}: C^{n-1} → C^n` written
/// out directly from its defining formula on tensor matrices.
///
/// The three groups of terms are: the left action of
/// `a_1 ε(α_{1,2} ⋯ α_{1,n})` on the cochain value at the matrix with row
/// and column one deleted; for `1 ≤ i ≤ n-1` the sign `(-1)^i` times the
/// value at the matrix with rows and columns `i, i+1` merged (diagonal
/// `a_i a_{i+1} ε(α_{i,i+1})`, row and column entries multiplied
/// pairwise); and `(-1)^n` times the right action of
/// `a_n ε(α_{1,n} ⋯ α_{n-1,n})` at the matrix with row and column `n`
/// deleted. The module is symmetric, so the right action is the left one.
///
/// This construction deliberately shares no assembly code with
/// [`induced_map`]; agreeing with [`pair_differential`] on the disk pair
/// is the theorem this crate verifies.
pub fn secondary_differential_direct(
    n: usize,
    triple: &Triple,
    module: &SymmetricBimodule,
) -> Result<SparseMatrix, CochainError> {
    if n == 0 {
        return Err(CochainError::DegreeTooSmall);
    }
    check_coefficients(triple, module)?;
    let a = triple.a();
    let b = triple.b();
    let eps = triple.epsilon();
    let field = *triple.field();
    let dim_m = module.dim();
    let row_space = CochainSpace::new(n, n * (n - 1) / 2, triple, module);
    let col_space = CochainSpace::new(n - 1, (n - 1) * n.saturating_sub(2) / 2, triple, module);
    let row_indexer = row_space.indexer();
    let col_indexer = col_space.indexer();
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();

    // A small self-contained expansion of coordinate-vector slots into
    // basis tensors, independent of the induced-map machinery.
    struct Slot {
        coords: Vec<Scalar>,
        dim: usize,
    }
    fn expand_slots(
        slots: &[Slot],
        k: usize,
        t: usize,
        coeff: &Scalar,
        out: &mut Vec<(usize, Scalar)>,
    ) {
        if k == slots.len() {
            out.push((t, coeff.clone()));
            return;
        }
        for (i, c) in slots[k].coords.iter().enumerate() {
            if !c.is_zero() {
                expand_slots(slots, k + 1, t * slots[k].dim + i, &(coeff * c), out);
            }
        }
    }

    let zero_block = |dim_m: usize, field: &FieldSpec| {
        let mut z = Vec::with_capacity(dim_m * dim_m);
        z.resize(dim_m * dim_m, field.zero());
        z
    };

    for row_tensor in 0..row_space.tensor_count() {
        let (a_idx, b_idx) = row_indexer.decode_tensor(row_tensor);
        let alpha = |i: usize, j: usize| b_idx[pair_slot(i, j, n)];
        let mut blocks: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        let action_term = |blocks: &mut BTreeMap<usize, Vec<Scalar>>,
                               col_tensor: usize,
                               actor: &crate::algebra::AlgebraElement,
                               negative: bool| {
            let block = blocks
                .entry(col_tensor)
                .or_insert_with(|| zero_block(dim_m, &field));
            for (l, c) in actor.coords().iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for m_in in 0..dim_m {
                    for (m_out, act) in module.basis_action(l, m_in).iter().enumerate() {
                        if act.is_zero() {
                            continue;
                        }
                        let cell = &mut block[m_out * dim_m + m_in];
                        let term = c * act;
                        *cell = if negative { &*cell - &term } else { &*cell + &term };
                    }
                }
            }
        };

        // Left-action term: a_1 ε(α_{1,2} ⋯ α_{1,n}) acting on the value
        // at the matrix with row and column 1 removed.
        {
            let mut beta = b.unit_element();
            for j in 2..=n {
                beta = b
                    .multiply(&beta, &b.basis_element(alpha(1, j)))
                    .expect("factors live in B");
            }
            let actor = a
                .multiply(&a.basis_element(a_idx[0]), &eps.apply(&beta).expect("beta lives in B"))
                .expect("factors live in A");
            let col_a: Vec<usize> = a_idx[1..].to_vec();
            let mut col_b = Vec::with_capacity(col_space.b_factors());
            col_b.resize(col_space.b_factors(), 0);
            for r in 2..=n {
                for c in r + 1..=n {
                    col_b[pair_slot(r - 1, c - 1, n - 1)] = alpha(r, c);
                }
            }
            let col_tensor = col_indexer.tensor_index(&col_a, &col_b);
            action_term(&mut blocks, col_tensor, &actor, false);
        }

        // Merge terms: (-1)^i times the value at the matrix with rows and
        // columns i, i+1 merged.
        for i in 1..n {
            let mut slots: Vec<Slot> =
                Vec::with_capacity(col_space.a_factors() + col_space.b_factors());
            for j in 1..n {
                let coords = if j == i {
                    let merged = a
                        .multiply(&a.basis_element(a_idx[i - 1]), &a.basis_element(a_idx[i]))
                        .expect("factors live in A");
                    let eps_alpha = a
                        .element(eps.image_of_basis(alpha(i, i + 1)).to_vec())
                        .expect("epsilon columns have the dimension of A");
                    a.multiply(&merged, &eps_alpha)
                        .expect("factors live in A")
                        .coords()
                        .to_vec()
                } else {
                    let old = if j < i { j } else { j + 1 };
                    a.basis_element(a_idx[old - 1]).coords().to_vec()
                };
                slots.push(Slot { coords, dim: a.dim() });
            }
            for r in 1..n {
                for c in r + 1..n {
                    // Old pairs collapsing onto the merged position (r, c).
                    let coords = if c < i {
                        b.basis_element(alpha(r, c)).coords().to_vec()
                    } else if c == i {
                        b.multiply(&b.basis_element(alpha(r, i)), &b.basis_element(alpha(r, i + 1)))
                            .expect("factors live in B")
                            .coords()
                            .to_vec()
                    } else if r < i {
                        b.basis_element(alpha(r, c + 1)).coords().to_vec()
                    } else if r == i {
                        b.multiply(
                            &b.basis_element(alpha(i, c + 1)),
                            &b.basis_element(alpha(i + 1, c + 1)),
                        )
                        .expect("factors live in B")
                        .coords()
                        .to_vec()
                    } else {
                        b.basis_element(alpha(r + 1, c + 1)).coords().to_vec()
                    };
                    slots.push(Slot { coords, dim: b.dim() });
                }
            }
            let mut expanded = Vec::new();
            expand_slots(&slots, 0, 0, &field.one(), &mut expanded);
            let negative = i % 2 == 1;
            for (col_tensor, coeff) in expanded {
                let block = blocks
                    .entry(col_tensor)
                    .or_insert_with(|| zero_block(dim_m, &field));
                for m in 0..dim_m {
                    let cell = &mut block[m * dim_m + m];
                    *cell = if negative { &*cell - &coeff } else { &*cell + &coeff };
                }
            }
        }

        // Right-action term: (-1)^n times a_n ε(α_{1,n} ⋯ α_{n-1,n})
        // acting on the value at the matrix with row and column n removed.
        {
            let mut beta = b.unit_element();
            for j in 1..n {
                beta = b
                    .multiply(&beta, &b.basis_element(alpha(j, n)))
                    .expect("factors live in B");
            }
            let actor = a
                .multiply(
                    &a.basis_element(a_idx[n - 1]),
                    &eps.apply(&beta).expect("beta lives in B"),
                )
                .expect("factors live in A");
            let col_a: Vec<usize> = a_idx[..n - 1].to_vec();
            let mut col_b = Vec::with_capacity(col_space.b_factors());
            col_b.resize(col_space.b_factors(), 0);
            for r in 1..n {
                for c in r + 1..n {
                    col_b[pair_slot(r, c, n - 1)] = alpha(r, c);
                }
            }
            let col_tensor = col_indexer.tensor_index(&col_a, &col_b);
            action_term(&mut blocks, col_tensor, &actor, n % 2 == 1);
        }

        for (col_tensor, block) in blocks {
            for m_out in 0..dim_m {
                for m_in in 0..dim_m {
                    let v = &block[m_out * dim_m + m_in];
                    if !v.is_zero() {
                        triplets.push((
                            row_indexer.coord(m_out, row_tensor),
                            col_indexer.coord(m_in, col_tensor),
                            v.clone(),
                        ));
                    }
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(
        row_space.total_dim(),
        col_space.total_dim(),
        triplets,
    ))
}

/// The classical Hochschild coboundary `Hom(A^⊗n, M) → Hom(A^⊗(n+1), M)`,
/// written out from the textbook formula. Kept independent of the
/// simplicial machinery so it can serve as an oracle for the circle pair.
pub fn classical_differential(
    n: usize,
    algebra: &crate::algebra::Algebra,
    module: &SymmetricBimodule,
) -> Result<SparseMatrix, CochainError> {
    if module.algebra_dim() != algebra.dim() {
        return Err(CochainError::DimensionMismatch("module is not over the algebra"));
    }
    if module.field() != algebra.field() {
        return Err(CochainError::DimensionMismatch("module over a different field"));
    }
    let field = *algebra.field();
    let dim_a = algebra.dim();
    let dim_m = module.dim();
    let row_tensors = dim_a.pow((n + 1) as u32);
    let col_tensors = dim_a.pow(n as u32);
    let mut triplets: Vec<(usize, usize, Scalar)> = Vec::new();

    let decode = |mut t: usize| {
        let mut idx = Vec::with_capacity(n + 1);
        idx.resize(n + 1, 0);
        for slot in (0..n + 1).rev() {
            idx[slot] = t % dim_a;
            t /= dim_a;
        }
        idx
    };
    let encode = |idx: &[usize]| idx.iter().fold(0, |t, &i| t * dim_a + i);

    for row_tensor in 0..row_tensors {
        let a_idx = decode(row_tensor);
        let mut blocks: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        let action_term = |blocks: &mut BTreeMap<usize, Vec<Scalar>>,
                               col_tensor: usize,
                               actor: usize,
                               negative: bool| {
            let block = blocks.entry(col_tensor).or_insert_with(|| {
                let mut z = Vec::with_capacity(dim_m * dim_m);
                z.resize(dim_m * dim_m, field.zero());
                z
            });
            for m_in in 0..dim_m {
                for (m_out, act) in module.basis_action(actor, m_in).iter().enumerate() {
                    if act.is_zero() {
                        continue;
                    }
                    let cell = &mut block[m_out * dim_m + m_in];
                    *cell = if negative { &*cell - act } else { &*cell + act };
                }
            }
        };

        // a_1 · f(a_2 ⊗ … ⊗ a_{n+1})
        action_term(&mut blocks, encode(&a_idx[1..]), a_idx[0], false);
        // (-1)^i f(… ⊗ a_i a_{i+1} ⊗ …)
        for i in 1..=n {
            let product = algebra.basis_product(a_idx[i - 1], a_idx[i]);
            let negative = i % 2 == 1;
            for (k, c) in product.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let mut col_idx = Vec::with_capacity(n);
                col_idx.extend_from_slice(&a_idx[..i - 1]);
                col_idx.push(k);
                col_idx.extend_from_slice(&a_idx[i + 1..]);
                let col_tensor = encode(&col_idx);
                let block = blocks.entry(col_tensor).or_insert_with(|| {
                    let mut z = Vec::with_capacity(dim_m * dim_m);
                    z.resize(dim_m * dim_m, field.zero());
                    z
                });
                for m in 0..dim_m {
                    let cell = &mut block[m * dim_m + m];
                    *cell = if negative { &*cell - c } else { &*cell + c };
                }
            }
        }
        // (-1)^{n+1} f(a_1 ⊗ … ⊗ a_n) · a_{n+1}; right action = left action
        action_term(&mut blocks, encode(&a_idx[..n]), a_idx[n], (n + 1) % 2 == 1);

        for (col_tensor, block) in blocks {
            for m_out in 0..dim_m {
                for m_in in 0..dim_m {
                    let v = &block[m_out * dim_m + m_in];
                    if !v.is_zero() {
                        triplets.push((
                            m_out * row_tensors + row_tensor,
                            m_in * col_tensors + col_tensor,
                            v.clone(),
                        ));
                    }
                }
            }
        }
    }
    Ok(SparseMatrix::from_triplets(
        dim_m * row_tensors,
        dim_m * col_tensors,
        triplets,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin_algebra, builtin_morphism, BuiltinAlgebra};
    use crate::simplicial::{
        build_circle_pair, build_disk_pair, build_point, inclusion_circle_into_disk,
    };
    use alloc::vec;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn triple(a: BuiltinAlgebra, b: BuiltinAlgebra, field: &FieldSpec) -> (Triple, SymmetricBimodule) {
        let eps = builtin_morphism(a, b, field);
        let alg_a = builtin_algebra(a, field);
        let alg_b = builtin_algebra(b, field);
        let module = SymmetricBimodule::regular(&alg_a);
        (Triple::new(alg_a, alg_b, eps).unwrap(), module)
    }

    fn dual_triple() -> (Triple, SymmetricBimodule) {
        triple(BuiltinAlgebra::DualNumbers, BuiltinAlgebra::GroundField, &q())
    }

    #[test]
    fn tensor_positions() {
        assert_eq!(
            tensor_position_of(&DiskCellLabel::Interval { a: 0, b: 0 }, 1).unwrap(),
            TensorMatrixPosition { row: 1, col: 1 }
        );
        assert_eq!(
            tensor_position_of(&DiskCellLabel::Triangle { a: 0, b: 0, c: 0 }, 2).unwrap(),
            TensorMatrixPosition { row: 1, col: 2 }
        );
        assert_eq!(
            tensor_position_of(&DiskCellLabel::Basepoint, 5).unwrap(),
            TensorMatrixPosition { row: 0, col: 0 }
        );
        assert_eq!(
            tensor_position_of(&DiskCellLabel::Interval { a: 0, b: 0 }, 3),
            Err(CochainError::LabelDegreeMismatch)
        );
    }

    #[test]
    fn cell_order_matches_tensor_matrix_order() {
        // The canonical cell order of a disk level must list the diagonal
        // positions in order followed by the above-diagonal positions in
        // row-major order; the basis identification relies on it.
        for n in 1..=6 {
            let mut expected_b = 0;
            for (idx, cell) in DiskCellLabel::level(n).iter().enumerate() {
                let pos = tensor_position_of(cell, n).unwrap();
                if idx == 0 {
                    assert_eq!(pos, TensorMatrixPosition { row: 0, col: 0 });
                } else if idx <= n {
                    assert_eq!(pos, TensorMatrixPosition { row: idx, col: idx });
                } else {
                    assert_eq!(pair_slot(pos.row, pos.col, n), expected_b);
                    expected_b += 1;
                }
            }
        }
    }

    #[test]
    fn identity_table_induces_identity_matrix() {
        let (t, m) = dual_triple();
        let disk = build_disk_pair(3);
        for q_deg in 0..=3 {
            let level = disk.level(q_deg);
            let table: Vec<usize> = (0..level.y_size).collect();
            let mat = induced_map(level, level, &table, &t, &m).unwrap();
            let dim = CochainSpace::for_level(level, &t, &m).total_dim();
            assert_eq!(mat, SparseMatrix::identity(dim, t.field()));
        }
    }

    #[test]
    fn collapse_to_basepoint_kills_square_zero_rows() {
        // Everything maps to the basepoint, so the pullback of m ∈ M is
        // (a_1 ⊗ a_2) ↦ a_1 a_2 · m; rows indexed by (x, x) vanish because
        // x² = 0 in the dual numbers.
        let (t, m) = dual_triple();
        let source = PairLevel { x_size: 3, y_size: 3 };
        let target = PairLevel { x_size: 1, y_size: 1 };
        let mat = induced_map(source, target, &[0, 0, 0], &t, &m).unwrap();
        assert_eq!(mat.rows(), 2 * 4);
        assert_eq!(mat.cols(), 2);
        let indexer = CochainSpace::for_level(source, &t, &m).indexer();
        let xx = indexer.tensor_index(&[1, 1], &[]);
        for m_out in 0..2 {
            for col in 0..2 {
                assert_eq!(mat.get(indexer.coord(m_out, xx), col), None);
            }
        }
        // The (1, x) row carries the action of x: x · 1 = x.
        let one_x = indexer.tensor_index(&[0, 1], &[]);
        assert_eq!(mat.get(indexer.coord(1, one_x), 0), Some(&q().one()));
    }

    #[test]
    fn single_merge_is_the_regular_action_matrix() {
        // ({*,1}, {*,1}) → ({*}, {*}): Hom(k, M) → Hom(A, M) is
        // f ↦ (a ↦ a · f(1)); over the dual numbers this is the 4 × 2
        // matrix of the regular action.
        let (t, m) = dual_triple();
        let mat = induced_map(
            PairLevel { x_size: 2, y_size: 2 },
            PairLevel { x_size: 1, y_size: 1 },
            &[0, 0],
            &t,
            &m,
        )
        .unwrap();
        let one = q().one();
        let expected = SparseMatrix::from_triplets(
            4,
            2,
            vec![
                (0, 0, one.clone()), // value at a = 1, coordinate 1 of 1·f(1)
                (2, 1, one.clone()), // value at a = 1, coordinate x of x-part
                (3, 0, one.clone()), // value at a = x, coordinate x of x·f(1)
            ],
        );
        assert_eq!(mat, expected);
    }

    #[test]
    fn invalid_tables_are_rejected() {
        let (t, m) = dual_triple();
        let src = PairLevel { x_size: 2, y_size: 3 };
        let tgt = PairLevel { x_size: 1, y_size: 2 };
        // Moves the basepoint.
        assert!(matches!(
            induced_map(src, tgt, &[1, 0, 0], &t, &m),
            Err(CochainError::InvalidTable(_))
        ));
        // X-element escapes X.
        assert!(matches!(
            induced_map(src, tgt, &[0, 1, 0], &t, &m),
            Err(CochainError::InvalidTable(_))
        ));
        // Out of range.
        assert!(matches!(
            induced_map(src, tgt, &[0, 0, 5], &t, &m),
            Err(CochainError::InvalidTable(_))
        ));
        // Wrong length.
        assert!(matches!(
            induced_map(src, tgt, &[0, 0], &t, &m),
            Err(CochainError::InvalidTable(_))
        ));
    }

    #[test]
    fn point_pair_differential_alternates() {
        let (t, m) = dual_triple();
        let point = build_point(4);
        for q_deg in 0..=3 {
            let d = pair_differential(&point, q_deg, &t, &m).unwrap();
            if q_deg % 2 == 0 {
                assert!(d.is_zero(), "even degree should vanish");
            } else {
                assert_eq!(d, SparseMatrix::identity(2, t.field()));
            }
        }
    }

    #[test]
    fn circle_degree_zero_differential_vanishes() {
        let (t, m) = dual_triple();
        let circle = build_circle_pair(2);
        let d0 = pair_differential(&circle, 0, &t, &m).unwrap();
        assert!(d0.is_zero(), "symmetric module forces the degree-0 map to vanish");
    }

    #[test]
    fn degree_out_of_range_is_an_error() {
        let (t, m) = dual_triple();
        let circle = build_circle_pair(2);
        assert!(matches!(
            pair_differential(&circle, 2, &t, &m),
            Err(CochainError::DegreeOutOfRange { .. })
        ));
    }

    #[test]
    fn classical_matches_evaluation_of_the_formula() {
        // Apply the matrix of the degree-1 coboundary to a hand-picked
        // cochain f and compare with (δf)(a ⊗ b) = a f(b) - f(ab) + f(a) b.
        let (t, m) = dual_triple();
        let a = t.a();
        let d1 = classical_differential(1, a, &m).unwrap();
        assert_eq!(d1.rows(), 2 * 4);
        assert_eq!(d1.cols(), 2 * 2);
        // f(1) = x, f(x) = 1 as coordinates over (m_idx, tensor).
        let f = [q().zero(), q().one(), q().one(), q().zero()];
        let mut df = vec![q().zero(); 8];
        for (row, col, v) in d1.entries() {
            if !f[*col].is_zero() {
                df[*row] = &df[*row] + &(v * &f[*col]);
            }
        }
        let eval = |a_i: usize, b_i: usize, m_out: usize| df[m_out * 4 + a_i * 2 + b_i].clone();
        // (δf)(x ⊗ x) = x·f(x) - f(x²) + f(x)·x = x·1 - 0 + 1·x = 2x.
        assert_eq!(eval(1, 1, 1), q().from_integer(2));
        assert_eq!(eval(1, 1, 0), q().zero());
        // (δf)(1 ⊗ 1) = 1·x - f(1) + x·1 = 2x - x = x.
        assert_eq!(eval(0, 0, 1), q().one());
        assert_eq!(eval(0, 0, 0), q().zero());
    }

    #[test]
    fn secondary_degree_one_vanishes_for_symmetric_modules() {
        for (a, b) in [
            (BuiltinAlgebra::DualNumbers, BuiltinAlgebra::DualNumbers),
            (BuiltinAlgebra::TruncatedPoly(3), BuiltinAlgebra::DualNumbers),
        ] {
            let (t, m) = triple(a, b, &q());
            let d0 = secondary_differential_direct(1, &t, &m).unwrap();
            assert!(d0.is_zero());
        }
        let (t, m) = dual_triple();
        assert_eq!(
            secondary_differential_direct(0, &t, &m),
            Err(CochainError::DegreeTooSmall)
        );
    }

    #[test]
    fn secondary_with_trivial_b_is_classical() {
        // With B = k every ε(α) is the unit and the B-tensor factors are
        // one-dimensional, so the secondary coboundary must coincide with
        // the classical one.
        for a in [
            BuiltinAlgebra::DualNumbers,
            BuiltinAlgebra::TruncatedPoly(3),
            BuiltinAlgebra::ProductKk,
        ] {
            let (t, m) = triple(a, BuiltinAlgebra::GroundField, &q());
            for n in 1..=3 {
                let secondary = secondary_differential_direct(n, &t, &m).unwrap();
                let classical = classical_differential(n - 1, t.a(), &m).unwrap();
                assert_eq!(secondary, classical, "A = {a:?}, n = {n}");
            }
        }
    }

    #[test]
    fn secondary_degree_two_matches_the_formula() {
        // δ_1(f)(a_1 ⊗ a_2 ⊗ α) = a_1 ε(α) f(a_2) - f(a_1 a_2 ε(α))
        //                          + f(a_1) a_2 ε(α)
        // over A = B = dual numbers with ε = id, M = A.
        let (t, m) = triple(BuiltinAlgebra::DualNumbers, BuiltinAlgebra::DualNumbers, &q());
        let d1 = secondary_differential_direct(2, &t, &m).unwrap();
        assert_eq!(d1.rows(), 2 * 8);
        assert_eq!(d1.cols(), 2 * 2);
        // f = identity as a map A → M = A: f(1) = 1, f(x) = x.
        let col_indexer = CochainSpace::new(1, 0, &t, &m).indexer();
        let mut f = vec![q().zero(); 4];
        f[col_indexer.coord(0, 0)] = q().one();
        f[col_indexer.coord(1, 1)] = q().one();
        let mut df = vec![q().zero(); 16];
        for (row, col, v) in d1.entries() {
            if !f[*col].is_zero() {
                df[*row] = &df[*row] + &(v * &f[*col]);
            }
        }
        let row_indexer = CochainSpace::new(2, 1, &t, &m).indexer();
        // At (a_1, a_2, α) = (x, 1, y): x·x·f(1) - f(x·1·x) + f(x)·1·x
        //   = x² - 0 + x² = 0.
        let t_x1y = row_indexer.tensor_index(&[1, 0], &[1]);
        for m_out in 0..2 {
            assert!(df[row_indexer.coord(m_out, t_x1y)].is_zero());
        }
        // At (1, 1, y): x·f(1) - f(x) + f(1)·x = x - x + x = x.
        let t_11y = row_indexer.tensor_index(&[0, 0], &[1]);
        assert!(df[row_indexer.coord(0, t_11y)].is_zero());
        assert_eq!(df[row_indexer.coord(1, t_11y)], q().one());
        // At (1, 1, 1): f(1) - f(1) + f(1) = 1.
        let t_111 = row_indexer.tensor_index(&[0, 0], &[0]);
        assert_eq!(df[row_indexer.coord(0, t_111)], q().one());
        assert!(df[row_indexer.coord(1, t_111)].is_zero());
    }

    #[test]
    fn pullback_of_identity_is_identity() {
        let (t, m) = dual_triple();
        let disk = build_disk_pair(3);
        let maps = (0..=3).map(|q| (0..disk.level(q).y_size).collect()).collect();
        let h = PairMorphism::new(disk.clone(), disk.clone(), maps).unwrap();
        for q_deg in 0..=3 {
            let mat = pair_pullback(&h, q_deg, &t, &m).unwrap();
            let dim = CochainSpace::for_level(disk.level(q_deg), &t, &m).total_dim();
            assert_eq!(mat, SparseMatrix::identity(dim, t.field()));
        }
    }

    #[test]
    fn inclusion_pullback_selects_unit_columns() {
        // Pulling back along the inclusion of the circle into the disk
        // evaluates a disk cochain with every B-factor set to the unit of
        // B; for B with unit e_0 that selects the columns whose B-indices
        // are all zero.
        let (t, m) = triple(BuiltinAlgebra::DualNumbers, BuiltinAlgebra::DualNumbers, &q());
        let h = inclusion_circle_into_disk(3);
        for q_deg in 0..=3 {
            let mat = pair_pullback(&h, q_deg, &t, &m).unwrap();
            let circle_space = CochainSpace::for_level(h.source().level(q_deg), &t, &m);
            let disk_space = CochainSpace::for_level(h.target().level(q_deg), &t, &m);
            assert_eq!(mat.rows(), circle_space.total_dim());
            assert_eq!(mat.cols(), disk_space.total_dim());
            assert_eq!(mat.nnz(), circle_space.total_dim());
            let ci = circle_space.indexer();
            let di = disk_space.indexer();
            for (row, col, v) in mat.entries() {
                assert!(v.is_one());
                let (m_row, t_row) = ci.decode_coord(*row);
                let (m_col, t_col) = di.decode_coord(*col);
                assert_eq!(m_row, m_col);
                let (a_row, b_row) = ci.decode_tensor(t_row);
                let (a_col, b_col) = di.decode_tensor(t_col);
                assert_eq!(a_row, a_col);
                assert!(b_row.is_empty());
                assert!(b_col.iter().all(|&b| b == 0));
            }
        }
    }

    #[test]
    fn inputs_are_shareable_across_threads() {
        // Row groups of a differential are independent, so callers may
        // fan computations out over threads holding shared references.
        fn check<T: Send + Sync>() {}
        check::<Triple>();
        check::<SymmetricBimodule>();
        check::<SimplicialPair>();
        check::<SparseMatrix>();
    }

    #[test]
    fn functoriality_on_random_composable_tables() {
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;
        let field = FieldSpec::prime(101).unwrap();
        let (t, m) = triple(BuiltinAlgebra::DualNumbers, BuiltinAlgebra::DualNumbers, &field);
        let disk = build_disk_pair(4);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut random_table = |src: PairLevel, tgt: PairLevel| -> Vec<usize> {
            (0..src.y_size)
                .map(|e| {
                    if e == 0 {
                        0
                    } else if e < src.x_size {
                        rng.gen_range(0..tgt.x_size)
                    } else {
                        rng.gen_range(0..tgt.y_size)
                    }
                })
                .collect()
        };
        for (q1, q2, q3) in [(4, 3, 2), (3, 2, 1), (2, 1, 0), (3, 1, 0)] {
            let (l1, l2, l3) = (disk.level(q1), disk.level(q2), disk.level(q3));
            for _ in 0..3 {
                let f = random_table(l1, l2);
                let g = random_table(l2, l3);
                let composed: Vec<usize> = f.iter().map(|&e| g[e]).collect();
                let lhs = induced_map(l1, l3, &composed, &t, &m).unwrap();
                let rhs = induced_map(l1, l2, &f, &t, &m)
                    .unwrap()
                    .matmul(&induced_map(l2, l3, &g, &t, &m).unwrap());
                assert_eq!(lhs, rhs, "functoriality at ({q1}, {q2}, {q3})");
            }
        }
    }
}
