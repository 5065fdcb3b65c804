//! Truncated pointed simplicial pairs and their face-map tables.
//!
//! A pair holds, for each degree `q` up to a working truncation, the sizes
//! of a pointed set `Y_q` and of a pointed subset `X_q ⊆ Y_q`, together
//! with tables for the face maps `d_i: Y_q → Y_{q-1}`. Elements are plain
//! indices with a fixed canonical ordering: index `0` is the basepoint,
//! indices `[0, x_size)` are exactly `X_q`, and the rest is `Y_q \ X_q`.
//!
//! The built-in pairs are the point, the circle `(S¹, S¹)`, and the circle
//! inside the disk `(S¹, D²)`. For the latter two, degree `q` consists of
//! the basepoint, the degenerate edge cells `I(a, b)` with `a + b = q - 1`,
//! and (for the disk) the degenerate triangle cells `Δ(a, b, c)` with
//! `a + b + c = q - 2`; the parameters count how often each vertex of the
//! underlying nondegenerate cell is repeated. Degeneracy maps are not
//! stored: the cochain differential uses faces only, and the complex built
//! on top of these pairs is the unnormalized one, so degenerate cells
//! contribute tensor factors and must be enumerated.

use alloc::vec::Vec;
use core::fmt;

/// Sizes of one level of a pair: a pointed set of `y_size` elements with a
/// pointed subset of the first `x_size` ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairLevel {
    pub x_size: usize,
    pub y_size: usize,
}

/// A degree-wise finite pointed simplicial pair, truncated at `max_degree`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialPair {
    max_degree: usize,
    levels: Vec<PairLevel>,
    /// `faces[q - 1][i]` is the table of `d_i: Y_q → Y_{q-1}`, `0 ≤ i ≤ q`.
    faces: Vec<Vec<Vec<usize>>>,
}

/// Errors raised when the arrays handed to [`SimplicialPair::new`] do not
/// even have consistent lengths. Everything deeper (range bounds, pointed
/// maps, simplicial identities) is reported by [`SimplicialPair::validate`]
/// so that malformed input can be diagnosed in full.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairShapeError {
    LevelCount,
    FaceTableCount { degree: usize },
    FaceTableLength { degree: usize, face: usize },
}

impl fmt::Display for PairShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairShapeError::LevelCount => write!(f, "need max_degree + 1 levels"),
            PairShapeError::FaceTableCount { degree } => {
                write!(f, "degree {degree} needs {} face tables", degree + 1)
            }
            PairShapeError::FaceTableLength { degree, face } => {
                write!(f, "face table d_{face} at degree {degree} has the wrong length")
            }
        }
    }
}

impl core::error::Error for PairShapeError {}

impl SimplicialPair {
    /// Assembles a pair from explicit level sizes and face tables.
    ///
    /// `faces[q - 1]` must hold the `q + 1` tables for degree `q`, each of
    /// length `y_size(q)`.
    pub fn new(levels: Vec<PairLevel>, faces: Vec<Vec<Vec<usize>>>) -> Result<Self, PairShapeError> {
        if levels.is_empty() || faces.len() + 1 != levels.len() {
            return Err(PairShapeError::LevelCount);
        }
        let max_degree = levels.len() - 1;
        for q in 1..=max_degree {
            let tables = &faces[q - 1];
            if tables.len() != q + 1 {
                return Err(PairShapeError::FaceTableCount { degree: q });
            }
            for (i, table) in tables.iter().enumerate() {
                if table.len() != levels[q].y_size {
                    return Err(PairShapeError::FaceTableLength { degree: q, face: i });
                }
            }
        }
        Ok(SimplicialPair {
            max_degree,
            levels,
            faces,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn level(&self, q: usize) -> PairLevel {
        self.levels[q]
    }

    /// The table of `d_i: Y_q → Y_{q-1}` (`1 ≤ q ≤ max_degree`).
    pub fn face_table(&self, q: usize, i: usize) -> &[usize] {
        &self.faces[q - 1][i]
    }

    /// Checks basepoint preservation, `X` mapping into `X`, range bounds,
    /// and the simplicial identities `d_i ∘ d_j = d_{j-1} ∘ d_i` for
    /// `i < j`, listing every violation with a witness.
    pub fn validate(&self) -> Vec<PairViolation> {
        let mut violations = Vec::new();
        for (q, level) in self.levels.iter().enumerate() {
            if level.x_size < 1 || level.x_size > level.y_size {
                violations.push(PairViolation::LevelSizes { q });
            }
        }
        for q in 1..=self.max_degree {
            let src = self.levels[q];
            let tgt = self.levels[q - 1];
            for i in 0..=q {
                let table = self.face_table(q, i);
                for (elem, &image) in table.iter().enumerate() {
                    if image >= tgt.y_size {
                        violations.push(PairViolation::OutOfRange { q, i, elem });
                        continue;
                    }
                    if elem == 0 && image != 0 {
                        violations.push(PairViolation::Basepoint { q, i });
                    }
                    if elem < src.x_size && image >= tgt.x_size {
                        violations.push(PairViolation::XEscapes { q, i, elem });
                    }
                }
            }
        }
        // d_i d_j = d_{j-1} d_i for i < j, as maps Y_q → Y_{q-2}.
        for q in 2..=self.max_degree {
            let y_size = self.levels[q].y_size;
            let lower = self.levels[q - 1].y_size;
            for j in 1..=q {
                for i in 0..j {
                    let dj = self.face_table(q, j);
                    let di_top = self.face_table(q, i);
                    let di = self.face_table(q - 1, i);
                    let djm1 = self.face_table(q - 1, j - 1);
                    for elem in 0..y_size {
                        if dj[elem] >= lower || di_top[elem] >= lower {
                            continue; // already reported as OutOfRange
                        }
                        if di[dj[elem]] != djm1[di_top[elem]] {
                            violations.push(PairViolation::SimplicialIdentity { q, i, j, elem });
                        }
                    }
                }
            }
        }
        violations
    }
}

/// A violated simplicial-pair invariant with a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairViolation {
    /// `x_size` outside `[1, y_size]`.
    LevelSizes { q: usize },
    /// A face-table value outside `[0, y_size(q-1))`.
    OutOfRange { q: usize, i: usize, elem: usize },
    /// `d_i` does not send the basepoint to the basepoint.
    Basepoint { q: usize, i: usize },
    /// `d_i` maps an `X`-element outside of `X`.
    XEscapes { q: usize, i: usize, elem: usize },
    /// `d_i(d_j(elem)) ≠ d_{j-1}(d_i(elem))` for `i < j`.
    SimplicialIdentity { q: usize, i: usize, j: usize, elem: usize },
}

impl fmt::Display for PairViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairViolation::LevelSizes { q } => write!(f, "level {q} has invalid sizes"),
            PairViolation::OutOfRange { q, i, elem } => {
                write!(f, "d_{i} at degree {q} sends element {elem} out of range")
            }
            PairViolation::Basepoint { q, i } => {
                write!(f, "d_{i} at degree {q} moves the basepoint")
            }
            PairViolation::XEscapes { q, i, elem } => {
                write!(f, "d_{i} at degree {q} maps X-element {elem} outside X")
            }
            PairViolation::SimplicialIdentity { q, i, j, elem } => {
                write!(
                    f,
                    "simplicial identity d_{i} d_{j} = d_{} d_{i} fails at degree {q} on element {elem}",
                    j - 1
                )
            }
        }
    }
}

/// A cell of the disk pair `(S¹, D²)` in some degree `n`.
///
/// `Interval { a, b }` requires `a + b = n - 1` and `Triangle { a, b, c }`
/// requires `a + b + c = n - 2`; the parameters are the number of extra
/// repetitions of each vertex of the underlying nondegenerate cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiskCellLabel {
    Basepoint,
    Interval { a: usize, b: usize },
    Triangle { a: usize, b: usize, c: usize },
}

impl DiskCellLabel {
    /// Whether the label is well-formed in degree `n`.
    pub fn has_degree(&self, n: usize) -> bool {
        match *self {
            DiskCellLabel::Basepoint => true,
            DiskCellLabel::Interval { a, b } => a + b + 1 == n,
            DiskCellLabel::Triangle { a, b, c } => a + b + c + 2 == n,
        }
    }

    /// Canonical position of this cell inside `Y_n`: the basepoint first,
    /// then the interval block with `a` ascending, then the triangle block
    /// ordered like the positions `(a+1, a+b+2)` of an upper-triangular
    /// matrix read row by row.
    pub fn index_in_level(&self, n: usize) -> usize {
        assert!(self.has_degree(n), "label {self:?} does not live in degree {n}");
        match *self {
            DiskCellLabel::Basepoint => 0,
            DiskCellLabel::Interval { a, .. } => 1 + a,
            DiskCellLabel::Triangle { a, b, .. } => {
                let (r, c) = (a + 1, a + b + 2);
                // rank of (r, c), 1 <= r < c <= n, in row-major order
                let before_row = (r - 1) * n - r * (r - 1) / 2;
                1 + n + before_row + (c - r - 1)
            }
        }
    }

    /// Inverse of [`DiskCellLabel::index_in_level`].
    pub fn from_index(n: usize, index: usize) -> DiskCellLabel {
        if index == 0 {
            return DiskCellLabel::Basepoint;
        }
        if index <= n {
            let a = index - 1;
            return DiskCellLabel::Interval { a, b: n - 1 - a };
        }
        let mut rank = index - 1 - n;
        let mut r = 1;
        while rank >= n - r {
            rank -= n - r;
            r += 1;
        }
        let c = r + 1 + rank;
        DiskCellLabel::Triangle {
            a: r - 1,
            b: c - r - 1,
            c: n - c,
        }
    }

    /// All cells of `Y_n` in canonical order.
    pub fn level(n: usize) -> Vec<DiskCellLabel> {
        let mut cells = Vec::with_capacity(1 + n + n * n.saturating_sub(1) / 2);
        cells.push(DiskCellLabel::Basepoint);
        for a in 0..n {
            cells.push(DiskCellLabel::Interval { a, b: n - 1 - a });
        }
        for a in 0..n.saturating_sub(1) {
            for b in 0..n - 1 - a {
                cells.push(DiskCellLabel::Triangle { a, b, c: n - 2 - a - b });
            }
        }
        cells
    }

    /// The `i`-th face of this cell in degree `n` (`0 ≤ i ≤ n`).
    pub fn face(&self, n: usize, i: usize) -> DiskCellLabel {
        assert!(self.has_degree(n) && i <= n);
        match *self {
            DiskCellLabel::Basepoint => DiskCellLabel::Basepoint,
            DiskCellLabel::Interval { a, b } => {
                if a == 0 && i == 0 {
                    DiskCellLabel::Basepoint
                } else if a != 0 && i <= a {
                    DiskCellLabel::Interval { a: a - 1, b }
                } else if b != 0 && i > a {
                    DiskCellLabel::Interval { a, b: b - 1 }
                } else {
                    debug_assert!(b == 0 && i == n && n == a + 1);
                    DiskCellLabel::Basepoint
                }
            }
            DiskCellLabel::Triangle { a, b, c } => {
                if a == 0 && i == 0 {
                    DiskCellLabel::Basepoint
                } else if a != 0 && i <= a {
                    DiskCellLabel::Triangle { a: a - 1, b, c }
                } else if b == 0 && i == a + 1 {
                    DiskCellLabel::Interval { a, b: c }
                } else if b != 0 && a < i && i <= a + b + 1 {
                    DiskCellLabel::Triangle { a, b: b - 1, c }
                } else if c == 0 && i == n {
                    debug_assert_eq!(n, a + b + 2);
                    DiskCellLabel::Basepoint
                } else {
                    debug_assert!(c != 0 && i >= a + b + 2);
                    DiskCellLabel::Triangle { a, b, c: c - 1 }
                }
            }
        }
    }
}

/// The terminal pair: a single point in each degree.
pub fn build_point(max_degree: usize) -> SimplicialPair {
    assert!(max_degree >= 1);
    let levels = alloc::vec![PairLevel { x_size: 1, y_size: 1 }; max_degree + 1];
    let faces = (1..=max_degree)
        .map(|q| alloc::vec![alloc::vec![0usize]; q + 1])
        .collect();
    SimplicialPair::new(levels, faces).expect("point pair shapes are consistent")
}

/// The pair `(S¹, S¹)`: the circle with one nondegenerate edge, whose
/// degree `q` consists of the basepoint and the cells `I(a, q-1-a)`.
pub fn build_circle_pair(max_degree: usize) -> SimplicialPair {
    assert!(max_degree >= 1);
    let levels = (0..=max_degree)
        .map(|q| PairLevel {
            x_size: 1 + q,
            y_size: 1 + q,
        })
        .collect();
    let faces = (1..=max_degree)
        .map(|q| {
            (0..=q)
                .map(|i| {
                    DiskCellLabel::level(q)
                        .into_iter()
                        .take(1 + q) // basepoint and interval block only
                        .map(|cell| cell.face(q, i).index_in_level(q - 1))
                        .collect()
                })
                .collect()
        })
        .collect();
    SimplicialPair::new(levels, faces).expect("circle pair shapes are consistent")
}

/// The pair `(S¹, D²)`: the circle of [`build_circle_pair`] as the
/// subobject, with the triangle cells `Δ(a, b, c)` on top.
pub fn build_disk_pair(max_degree: usize) -> SimplicialPair {
    assert!(max_degree >= 1);
    let levels = (0..=max_degree)
        .map(|q| PairLevel {
            x_size: 1 + q,
            y_size: 1 + q + q * q.saturating_sub(1) / 2,
        })
        .collect();
    let faces = (1..=max_degree)
        .map(|q| {
            (0..=q)
                .map(|i| {
                    DiskCellLabel::level(q)
                        .into_iter()
                        .map(|cell| cell.face(q, i).index_in_level(q - 1))
                        .collect()
                })
                .collect()
        })
        .collect();
    SimplicialPair::new(levels, faces).expect("disk pair shapes are consistent")
}

/// A degree-wise map of pairs, commuting with faces.
#[derive(Clone, Debug)]
pub struct PairMorphism {
    source: SimplicialPair,
    target: SimplicialPair,
    maps: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairMorphismShapeError {
    DegreeMismatch,
    TableLength { q: usize },
}

impl fmt::Display for PairMorphismShapeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairMorphismShapeError::DegreeMismatch => {
                write!(f, "source and target pairs have different truncation degrees")
            }
            PairMorphismShapeError::TableLength { q } => {
                write!(f, "morphism table at degree {q} has the wrong length")
            }
        }
    }
}

impl core::error::Error for PairMorphismShapeError {}

impl PairMorphism {
    pub fn new(
        source: SimplicialPair,
        target: SimplicialPair,
        maps: Vec<Vec<usize>>,
    ) -> Result<Self, PairMorphismShapeError> {
        if source.max_degree() != target.max_degree() || maps.len() != source.max_degree() + 1 {
            return Err(PairMorphismShapeError::DegreeMismatch);
        }
        for (q, table) in maps.iter().enumerate() {
            if table.len() != source.level(q).y_size {
                return Err(PairMorphismShapeError::TableLength { q });
            }
        }
        Ok(PairMorphism {
            source,
            target,
            maps,
        })
    }

    pub fn source(&self) -> &SimplicialPair {
        &self.source
    }

    pub fn target(&self) -> &SimplicialPair {
        &self.target
    }

    pub fn level_map(&self, q: usize) -> &[usize] {
        &self.maps[q]
    }

    /// Checks pointedness, `X → X`, range bounds, and commutation with all
    /// face tables.
    pub fn validate(&self) -> Vec<PairMorphismViolation> {
        let mut violations = Vec::new();
        for q in 0..=self.source.max_degree() {
            let src = self.source.level(q);
            let tgt = self.target.level(q);
            let table = &self.maps[q];
            for (elem, &image) in table.iter().enumerate() {
                if image >= tgt.y_size {
                    violations.push(PairMorphismViolation::OutOfRange { q, elem });
                    continue;
                }
                if elem == 0 && image != 0 {
                    violations.push(PairMorphismViolation::Basepoint { q });
                }
                if elem < src.x_size && image >= tgt.x_size {
                    violations.push(PairMorphismViolation::XEscapes { q, elem });
                }
            }
        }
        for q in 1..=self.source.max_degree() {
            for i in 0..=q {
                let src_face = self.source.face_table(q, i);
                let tgt_face = self.target.face_table(q, i);
                for elem in 0..self.source.level(q).y_size {
                    let via_target = tgt_face[self.maps[q][elem]];
                    let via_source = self.maps[q - 1][src_face[elem]];
                    if via_target != via_source {
                        violations.push(PairMorphismViolation::FaceCommutation { q, i, elem });
                    }
                }
            }
        }
        violations
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PairMorphismViolation {
    OutOfRange { q: usize, elem: usize },
    Basepoint { q: usize },
    XEscapes { q: usize, elem: usize },
    FaceCommutation { q: usize, i: usize, elem: usize },
}

impl fmt::Display for PairMorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PairMorphismViolation::OutOfRange { q, elem } => {
                write!(f, "map at degree {q} sends element {elem} out of range")
            }
            PairMorphismViolation::Basepoint { q } => {
                write!(f, "map at degree {q} moves the basepoint")
            }
            PairMorphismViolation::XEscapes { q, elem } => {
                write!(f, "map at degree {q} sends X-element {elem} outside X")
            }
            PairMorphismViolation::FaceCommutation { q, i, elem } => {
                write!(f, "map does not commute with d_{i} at degree {q} on element {elem}")
            }
        }
    }
}

/// The degree-wise inclusion `(S¹, S¹) → (S¹, D²)`.
pub fn inclusion_circle_into_disk(max_degree: usize) -> PairMorphism {
    let circle = build_circle_pair(max_degree);
    let disk = build_disk_pair(max_degree);
    let maps = (0..=max_degree)
        .map(|q| (0..circle.level(q).y_size).collect())
        .collect();
    PairMorphism::new(circle, disk, maps).expect("inclusion shapes are consistent")
}
