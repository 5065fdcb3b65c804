//! Finite-dimensional commutative unital algebras given by structure
//! constants, algebra morphisms `ε: B → A`, and symmetric bimodules.
//!
//! The structure constants `c[i][j][k]` express basis products as
//! `e_i · e_j = Σ_k c[i][j][k] · e_k`; a module action tensor
//! `act[i][j][k]` likewise expresses `e_i · m_j = Σ_k act[i][j][k] · m_k`.
//! Only one module action is stored: coefficients here are always
//! commutative algebras acting on symmetric bimodules, where the right
//! action is defined to equal the left one. Construction checks only array
//! shapes; the algebraic axioms are verified separately by the `validate`
//! methods, which enumerate every violation instead of failing fast so
//! that hand-written configuration files get full diagnostics.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{FieldSpec, Scalar};

/// Shape errors raised when assembling algebraic data from raw arrays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionError {
    /// An array dimension does not match the declared dimension.
    DimensionMismatch(&'static str),
    /// A scalar belongs to a different field than the declared one.
    FieldMismatch(&'static str),
    /// A dimension that must be positive is zero.
    EmptyBasis,
}

impl fmt::Display for ConstructionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionError::DimensionMismatch(what) => {
                write!(f, "dimension mismatch in {what}")
            }
            ConstructionError::FieldMismatch(what) => {
                write!(f, "scalar from a different field in {what}")
            }
            ConstructionError::EmptyBasis => write!(f, "dimension must be positive"),
        }
    }
}

impl core::error::Error for ConstructionError {}

fn check_scalars<'a>(
    what: &'static str,
    field: &FieldSpec,
    scalars: impl Iterator<Item = &'a Scalar>,
) -> Result<(), ConstructionError> {
    for s in scalars {
        if s.field() != *field {
            return Err(ConstructionError::FieldMismatch(what));
        }
    }
    Ok(())
}

/// A finite-dimensional commutative unital algebra over an exact field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: FieldSpec,
    dim: usize,
    basis_labels: Vec<String>,
    /// Flattened `dim³` array, `c[i][j][k]` at `(i * dim + j) * dim + k`.
    structure: Vec<Scalar>,
    unit: Vec<Scalar>,
}

impl Algebra {
    pub fn new(
        field: FieldSpec,
        basis_labels: Vec<String>,
        structure_constants: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Result<Self, ConstructionError> {
        let dim = basis_labels.len();
        if dim == 0 {
            return Err(ConstructionError::EmptyBasis);
        }
        if structure_constants.len() != dim
            || structure_constants
                .iter()
                .any(|rows| rows.len() != dim || rows.iter().any(|entry| entry.len() != dim))
        {
            return Err(ConstructionError::DimensionMismatch("structure constants"));
        }
        if unit.len() != dim {
            return Err(ConstructionError::DimensionMismatch("unit vector"));
        }
        let structure: Vec<Scalar> = structure_constants
            .into_iter()
            .flatten()
            .flatten()
            .collect();
        check_scalars("structure constants", &field, structure.iter())?;
        check_scalars("unit vector", &field, unit.iter())?;
        Ok(Algebra {
            field,
            dim,
            basis_labels,
            structure,
            unit,
        })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis_labels(&self) -> &[String] {
        &self.basis_labels
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.structure[(i * self.dim + j) * self.dim + k]
    }

    /// The coordinate vector of `e_i · e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim + j) * self.dim;
        &self.structure[base..base + self.dim]
    }

    /// Coordinates of the unit element.
    pub fn unit_coords(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn unit_element(&self) -> AlgebraElement {
        AlgebraElement {
            coords: self.unit.clone(),
        }
    }

    pub fn basis_element(&self, i: usize) -> AlgebraElement {
        assert!(i < self.dim);
        let mut coords = Vec::with_capacity(self.dim);
        coords.resize(self.dim, self.field.zero());
        coords[i] = self.field.one();
        AlgebraElement { coords }
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<AlgebraElement, ConstructionError> {
        if coords.len() != self.dim {
            return Err(ConstructionError::DimensionMismatch("element coordinates"));
        }
        check_scalars("element coordinates", &self.field, coords.iter())?;
        Ok(AlgebraElement { coords })
    }

    pub fn zero_element(&self) -> AlgebraElement {
        let mut coords = Vec::with_capacity(self.dim);
        coords.resize(self.dim, self.field.zero());
        AlgebraElement { coords }
    }

    /// Bilinear extension of the structure constants.
    pub fn multiply(
        &self,
        x: &AlgebraElement,
        y: &AlgebraElement,
    ) -> Result<AlgebraElement, ConstructionError> {
        if x.coords.len() != self.dim || y.coords.len() != self.dim {
            return Err(ConstructionError::DimensionMismatch("multiply operands"));
        }
        let mut out = self.zero_element();
        for (i, xi) in x.coords.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.coords.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let coeff = xi * yj;
                for (k, c) in self.basis_product(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.coords[k] = &out.coords[k] + &(&coeff * c);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Left-fold product of a family of elements; the empty family gives
    /// the unit, matching the empty-product convention of the induced-map
    /// formula.
    pub fn product_of_family(
        &self,
        factors: &[AlgebraElement],
    ) -> Result<AlgebraElement, ConstructionError> {
        let mut acc = self.unit_element();
        for f in factors {
            acc = self.multiply(&acc, f)?;
        }
        Ok(acc)
    }

    /// Checks commutativity, associativity, and unitality on all basis
    /// tuples, reporting every violation with its witnessing indices.
    pub fn validate(&self) -> Vec<AlgebraViolation> {
        let mut violations = Vec::new();
        let d = self.dim;
        for i in 0..d {
            for j in 0..i {
                if (0..d).any(|k| self.structure_constant(i, j, k) != self.structure_constant(j, i, k)) {
                    violations.push(AlgebraViolation::Commutativity { i: j, j: i });
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for l in 0..d {
                    for k in 0..d {
                        // (e_i e_j) e_l = e_i (e_j e_l), coefficient of e_k
                        let mut lhs = self.field.zero();
                        let mut rhs = self.field.zero();
                        for m in 0..d {
                            lhs = &lhs
                                + &(self.structure_constant(i, j, m) * self.structure_constant(m, l, k));
                            rhs = &rhs
                                + &(self.structure_constant(j, l, m) * self.structure_constant(i, m, k));
                        }
                        if lhs != rhs {
                            violations.push(AlgebraViolation::Associativity { i, j, l, k });
                        }
                    }
                }
            }
        }
        for j in 0..d {
            let product = self
                .multiply(&self.unit_element(), &self.basis_element(j))
                .expect("dimensions fixed by construction");
            if product != self.basis_element(j) {
                violations.push(AlgebraViolation::Unitality { j });
            }
        }
        violations
    }
}

/// A violated algebra axiom together with witnessing basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraViolation {
    Commutativity { i: usize, j: usize },
    Associativity { i: usize, j: usize, l: usize, k: usize },
    Unitality { j: usize },
}

impl fmt::Display for AlgebraViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraViolation::Commutativity { i, j } => {
                write!(f, "commutativity fails at basis pair ({i}, {j})")
            }
            AlgebraViolation::Associativity { i, j, l, k } => {
                write!(f, "associativity fails at (i, j, l, k) = ({i}, {j}, {l}, {k})")
            }
            AlgebraViolation::Unitality { j } => {
                write!(f, "unit does not fix basis element {j}")
            }
        }
    }
}

/// An element of an algebra as a coordinate vector over its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    coords: Vec<Scalar>,
}

impl AlgebraElement {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }
}

/// An element of a module as a coordinate vector over its basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    coords: Vec<Scalar>,
}

impl ModuleElement {
    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }
}

/// An algebra morphism `ε: B → A`, stored as the images of the basis of
/// `B` in `A`-coordinates (column-major: column `j` is `ε(e_j)`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    source: Algebra,
    target: Algebra,
    columns: Vec<Vec<Scalar>>,
}

impl AlgebraMorphism {
    pub fn new(
        source: Algebra,
        target: Algebra,
        columns: Vec<Vec<Scalar>>,
    ) -> Result<Self, ConstructionError> {
        if source.field() != target.field() {
            return Err(ConstructionError::FieldMismatch("morphism algebras"));
        }
        if columns.len() != source.dim() || columns.iter().any(|c| c.len() != target.dim()) {
            return Err(ConstructionError::DimensionMismatch("morphism matrix"));
        }
        for col in &columns {
            check_scalars("morphism matrix", target.field(), col.iter())?;
        }
        Ok(AlgebraMorphism {
            source,
            target,
            columns,
        })
    }

    pub fn source(&self) -> &Algebra {
        &self.source
    }

    pub fn target(&self) -> &Algebra {
        &self.target
    }

    /// `ε(e_j)` as a coordinate vector in the target algebra.
    pub fn image_of_basis(&self, j: usize) -> &[Scalar] {
        &self.columns[j]
    }

    pub fn apply(&self, b: &AlgebraElement) -> Result<AlgebraElement, ConstructionError> {
        if b.coords.len() != self.source.dim() {
            return Err(ConstructionError::DimensionMismatch("morphism argument"));
        }
        let mut out = self.target.zero_element();
        for (j, bj) in b.coords.iter().enumerate() {
            if bj.is_zero() {
                continue;
            }
            for (k, c) in self.columns[j].iter().enumerate() {
                if !c.is_zero() {
                    out.coords[k] = &out.coords[k] + &(bj * c);
                }
            }
        }
        Ok(out)
    }

    /// Checks `ε(1) = 1` and multiplicativity on all basis pairs.
    pub fn validate(&self) -> Vec<MorphismViolation> {
        let mut violations = Vec::new();
        let unit_image = self
            .apply(&self.source.unit_element())
            .expect("dimensions fixed by construction");
        if unit_image != self.target.unit_element() {
            violations.push(MorphismViolation::Unit);
        }
        for i in 0..self.source.dim() {
            for j in 0..=i {
                let product_image = self
                    .apply(
                        &self
                            .source
                            .multiply(&self.source.basis_element(i), &self.source.basis_element(j))
                            .expect("dimensions fixed by construction"),
                    )
                    .expect("dimensions fixed by construction");
                let image_product = self
                    .target
                    .multiply(
                        &self
                            .target
                            .element(self.columns[i].clone())
                            .expect("column shape checked"),
                        &self
                            .target
                            .element(self.columns[j].clone())
                            .expect("column shape checked"),
                    )
                    .expect("dimensions fixed by construction");
                if product_image != image_product {
                    violations.push(MorphismViolation::Multiplicativity { i: j, j: i });
                }
            }
        }
        violations
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MorphismViolation {
    /// `ε(1_B) ≠ 1_A`.
    Unit,
    /// `ε(e_i e_j) ≠ ε(e_i) ε(e_j)`.
    Multiplicativity { i: usize, j: usize },
}

impl fmt::Display for MorphismViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MorphismViolation::Unit => write!(f, "morphism does not preserve the unit"),
            MorphismViolation::Multiplicativity { i, j } => {
                write!(f, "morphism is not multiplicative on basis pair ({i}, {j})")
            }
        }
    }
}

/// A symmetric bimodule over an algebra, stored as the single action
/// tensor `act[i][j][k]`: `e_i · m_j = Σ_k act[i][j][k] · m_k`.
///
/// Symmetry (`a·m = m·a`) and `B`-symmetry through `ε` hold structurally
/// because only this one action exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricBimodule {
    field: FieldSpec,
    algebra_dim: usize,
    dim: usize,
    /// Flattened `algebra_dim × dim × dim`, `act[i][j][k]` at
    /// `(i * dim + j) * dim + k`.
    action: Vec<Scalar>,
}

impl SymmetricBimodule {
    pub fn new(
        field: FieldSpec,
        algebra_dim: usize,
        action: Vec<Vec<Vec<Scalar>>>,
    ) -> Result<Self, ConstructionError> {
        if action.len() != algebra_dim || algebra_dim == 0 {
            return Err(ConstructionError::DimensionMismatch("action tensor"));
        }
        let dim = action[0].len();
        if dim == 0 {
            return Err(ConstructionError::EmptyBasis);
        }
        if action
            .iter()
            .any(|rows| rows.len() != dim || rows.iter().any(|entry| entry.len() != dim))
        {
            return Err(ConstructionError::DimensionMismatch("action tensor"));
        }
        let action: Vec<Scalar> = action.into_iter().flatten().flatten().collect();
        check_scalars("action tensor", &field, action.iter())?;
        Ok(SymmetricBimodule {
            field,
            algebra_dim,
            dim,
            action,
        })
    }

    /// The regular module: `M = A` acting on itself.
    pub fn regular(algebra: &Algebra) -> Self {
        SymmetricBimodule {
            field: *algebra.field(),
            algebra_dim: algebra.dim(),
            dim: algebra.dim(),
            action: algebra.structure.clone(),
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn algebra_dim(&self) -> usize {
        self.algebra_dim
    }

    /// The coordinate vector of `e_i · m_j`.
    pub fn basis_action(&self, i: usize, j: usize) -> &[Scalar] {
        let base = (i * self.dim + j) * self.dim;
        &self.action[base..base + self.dim]
    }

    pub fn basis_element(&self, j: usize) -> ModuleElement {
        assert!(j < self.dim);
        let mut coords = Vec::with_capacity(self.dim);
        coords.resize(self.dim, self.field.zero());
        coords[j] = self.field.one();
        ModuleElement { coords }
    }

    pub fn element(&self, coords: Vec<Scalar>) -> Result<ModuleElement, ConstructionError> {
        if coords.len() != self.dim {
            return Err(ConstructionError::DimensionMismatch("module coordinates"));
        }
        check_scalars("module coordinates", &self.field, coords.iter())?;
        Ok(ModuleElement { coords })
    }

    /// Bilinear extension of the action constants.
    pub fn act(
        &self,
        a: &AlgebraElement,
        m: &ModuleElement,
    ) -> Result<ModuleElement, ConstructionError> {
        if a.coords.len() != self.algebra_dim || m.coords.len() != self.dim {
            return Err(ConstructionError::DimensionMismatch("action operands"));
        }
        let mut coords = Vec::with_capacity(self.dim);
        coords.resize(self.dim, self.field.zero());
        for (i, ai) in a.coords.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, mj) in m.coords.iter().enumerate() {
                if mj.is_zero() {
                    continue;
                }
                let coeff = ai * mj;
                for (k, c) in self.basis_action(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        coords[k] = &coords[k] + &(&coeff * c);
                    }
                }
            }
        }
        Ok(ModuleElement { coords })
    }

    /// Checks that the unit acts as the identity and that the action is
    /// associative over the given algebra.
    pub fn validate(&self, algebra: &Algebra) -> Vec<ModuleViolation> {
        let mut violations = Vec::new();
        if algebra.dim() != self.algebra_dim {
            violations.push(ModuleViolation::AlgebraDimension);
            return violations;
        }
        for j in 0..self.dim {
            let fixed = self
                .act(&algebra.unit_element(), &self.basis_element(j))
                .expect("dimensions fixed by construction");
            if fixed != self.basis_element(j) {
                violations.push(ModuleViolation::UnitAction { j });
            }
        }
        for i in 0..self.algebra_dim {
            for j in 0..self.algebra_dim {
                for l in 0..self.dim {
                    // (e_i e_j) · m_l = e_i · (e_j · m_l)
                    let product = algebra
                        .multiply(&algebra.basis_element(i), &algebra.basis_element(j))
                        .expect("dimensions fixed by construction");
                    let lhs = self
                        .act(&product, &self.basis_element(l))
                        .expect("dimensions fixed by construction");
                    let inner = self
                        .act(&algebra.basis_element(j), &self.basis_element(l))
                        .expect("dimensions fixed by construction");
                    let rhs = self
                        .act(&algebra.basis_element(i), &inner)
                        .expect("dimensions fixed by construction");
                    if lhs != rhs {
                        violations.push(ModuleViolation::ActionAssociativity { i, j, l });
                    }
                }
            }
        }
        violations
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleViolation {
    /// Module was built over an algebra of a different dimension.
    AlgebraDimension,
    /// `1 · m_j ≠ m_j`.
    UnitAction { j: usize },
    /// `(e_i e_j) · m_l ≠ e_i · (e_j · m_l)`.
    ActionAssociativity { i: usize, j: usize, l: usize },
}

impl fmt::Display for ModuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleViolation::AlgebraDimension => {
                write!(f, "module action tensor does not match the algebra dimension")
            }
            ModuleViolation::UnitAction { j } => {
                write!(f, "unit does not act as identity on module basis element {j}")
            }
            ModuleViolation::ActionAssociativity { i, j, l } => {
                write!(f, "action associativity fails at (i, j, l) = ({i}, {j}, {l})")
            }
        }
    }
}

/// The triple `(A, B, ε)`: two commutative algebras joined by a morphism
/// `ε: B → A`.
#[derive(Clone, Debug)]
pub struct Triple {
    a: Algebra,
    b: Algebra,
    epsilon: AlgebraMorphism,
}

impl Triple {
    pub fn new(a: Algebra, b: Algebra, epsilon: AlgebraMorphism) -> Result<Self, ConstructionError> {
        if epsilon.source() != &b || epsilon.target() != &a {
            return Err(ConstructionError::DimensionMismatch("triple morphism"));
        }
        Ok(Triple { a, b, epsilon })
    }

    pub fn a(&self) -> &Algebra {
        &self.a
    }

    pub fn b(&self) -> &Algebra {
        &self.b
    }

    pub fn epsilon(&self) -> &AlgebraMorphism {
        &self.epsilon
    }

    pub fn field(&self) -> &FieldSpec {
        self.a.field()
    }
}

/// The built-in algebras used as fixtures and presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinAlgebra {
    /// The ground field `k` itself.
    GroundField,
    /// The dual numbers `k[x]/(x²)`.
    DualNumbers,
    /// The truncated polynomial algebra `k[x]/(x^m)`, `m ≥ 2`.
    TruncatedPoly(usize),
    /// The product algebra `k × k`.
    ProductKk,
}

/// Builds the named algebra with its canonical basis (`1, x, x², …` for
/// the truncated polynomial algebras, the idempotent pair for `k × k`).
pub fn builtin_algebra(name: BuiltinAlgebra, field: &FieldSpec) -> Algebra {
    match name {
        BuiltinAlgebra::GroundField => monomial_truncated(field, 1),
        BuiltinAlgebra::DualNumbers => monomial_truncated(field, 2),
        BuiltinAlgebra::TruncatedPoly(m) => {
            assert!(m >= 2, "truncated polynomial algebra needs exponent >= 2");
            monomial_truncated(field, m)
        }
        BuiltinAlgebra::ProductKk => {
            let zero = field.zero();
            let one = field.one();
            let mut constants = Vec::new();
            for i in 0..2 {
                let mut rows = Vec::new();
                for j in 0..2 {
                    let mut entry = Vec::new();
                    for k in 0..2 {
                        entry.push(if i == j && j == k { one.clone() } else { zero.clone() });
                    }
                    rows.push(entry);
                }
                constants.push(rows);
            }
            Algebra::new(
                *field,
                alloc::vec![String::from("e1"), String::from("e2")],
                constants,
                alloc::vec![one.clone(), one],
            )
            .expect("shapes are correct by construction")
        }
    }
}

/// `k[x]/(x^m)` with basis `1, x, …, x^{m-1}`; `m = 1` is the ground field.
fn monomial_truncated(field: &FieldSpec, m: usize) -> Algebra {
    let zero = field.zero();
    let one = field.one();
    let mut constants = Vec::new();
    for i in 0..m {
        let mut rows = Vec::new();
        for j in 0..m {
            let mut entry = Vec::new();
            for k in 0..m {
                entry.push(if i + j == k { one.clone() } else { zero.clone() });
            }
            rows.push(entry);
        }
        constants.push(rows);
    }
    let labels = (0..m)
        .map(|i| match i {
            0 => String::from("1"),
            1 => String::from("x"),
            _ => alloc::format!("x^{i}"),
        })
        .collect();
    let mut unit = Vec::with_capacity(m);
    unit.resize(m, zero);
    unit[0] = one;
    Algebra::new(*field, labels, constants, unit).expect("shapes are correct by construction")
}

/// The canonical morphism `ε: B → A` used by the built-in fixtures.
///
/// The unit goes to the unit; when `B` is the dual numbers, its nilpotent
/// generator goes to the largest interesting square-zero element of `A`:
/// `x` for the dual numbers, `x^{m-1}` for `k[x]/(x^m)`, and `0` when `A`
/// has no nonzero square-zero elements.
pub fn builtin_morphism(a: BuiltinAlgebra, b: BuiltinAlgebra, field: &FieldSpec) -> AlgebraMorphism {
    let target = builtin_algebra(a, field);
    let source = builtin_algebra(b, field);
    let mut columns = Vec::with_capacity(source.dim());
    columns.push(target.unit_coords().to_vec());
    for j in 1..source.dim() {
        assert_eq!(
            (b, j),
            (BuiltinAlgebra::DualNumbers, 1),
            "no canonical morphism is defined from this source algebra"
        );
        let image = match a {
            BuiltinAlgebra::GroundField | BuiltinAlgebra::ProductKk => target.zero_element(),
            BuiltinAlgebra::DualNumbers => target.basis_element(1),
            BuiltinAlgebra::TruncatedPoly(m) => target.basis_element(m - 1),
        };
        columns.push(image.coords().to_vec());
    }
    AlgebraMorphism::new(source, target, columns).expect("shapes are correct by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use alloc::vec;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> FieldSpec {
        FieldSpec::Rational
    }

    fn dual() -> Algebra {
        builtin_algebra(BuiltinAlgebra::DualNumbers, &q())
    }

    #[test]
    fn defining_relations_of_builtins() {
        let a = dual();
        let x = a.basis_element(1);
        assert_eq!(a.multiply(&x, &x).unwrap(), a.zero_element());

        let t3 = builtin_algebra(BuiltinAlgebra::TruncatedPoly(3), &q());
        let x = t3.basis_element(1);
        assert_eq!(t3.multiply(&x, &x).unwrap(), t3.basis_element(2));
        assert_eq!(
            t3.multiply(&x, &t3.basis_element(2)).unwrap(),
            t3.zero_element()
        );

        let ground = builtin_algebra(BuiltinAlgebra::GroundField, &q());
        assert_eq!(ground.dim(), 1);
        assert!(ground.structure_constant(0, 0, 0).is_one());

        let kk = builtin_algebra(BuiltinAlgebra::ProductKk, &q());
        let e1 = kk.basis_element(0);
        assert_eq!(kk.multiply(&e1, &e1).unwrap(), e1);
        assert_eq!(kk.multiply(&e1, &kk.basis_element(1)).unwrap(), kk.zero_element());
    }

    #[test]
    fn unit_is_neutral() {
        for name in [
            BuiltinAlgebra::GroundField,
            BuiltinAlgebra::DualNumbers,
            BuiltinAlgebra::TruncatedPoly(4),
            BuiltinAlgebra::ProductKk,
        ] {
            let a = builtin_algebra(name, &q());
            for j in 0..a.dim() {
                let e = a.basis_element(j);
                assert_eq!(a.multiply(&a.unit_element(), &e).unwrap(), e);
            }
        }
    }

    #[test]
    fn product_of_family_conventions() {
        let a = dual();
        assert_eq!(a.product_of_family(&[]).unwrap(), a.unit_element());
        let x = a.basis_element(1);
        assert_eq!(a.product_of_family(&[x.clone()]).unwrap(), x);
        assert_eq!(
            a.product_of_family(&[x.clone(), x]).unwrap(),
            a.zero_element()
        );
    }

    #[test]
    fn regular_module_action() {
        let a = dual();
        let m = SymmetricBimodule::regular(&a);
        let x = a.basis_element(1);
        assert_eq!(m.act(&a.unit_element(), &m.basis_element(1)).unwrap(), m.basis_element(1));
        assert_eq!(
            m.act(&x, &m.basis_element(1)).unwrap(),
            m.element(vec![q().zero(), q().zero()]).unwrap()
        );
        assert_eq!(
            m.act(&a.zero_element(), &m.basis_element(0)).unwrap(),
            m.element(vec![q().zero(), q().zero()]).unwrap()
        );
        assert!(m.validate(&a).is_empty());
    }

    #[test]
    fn builtins_validate_clean() {
        for name in [
            BuiltinAlgebra::GroundField,
            BuiltinAlgebra::DualNumbers,
            BuiltinAlgebra::TruncatedPoly(3),
            BuiltinAlgebra::ProductKk,
        ] {
            let a = builtin_algebra(name, &q());
            assert!(a.validate().is_empty(), "{name:?} should be valid");
        }
    }

    #[test]
    fn violations_are_witnessed() {
        // Break commutativity at (0, 1): set c[0][1][0] = 1, c[1][0][0] = 0
        // on an otherwise zero product (not unital either, but we only look
        // for the commutativity witness here).
        let zero = q().zero();
        let one = q().one();
        let mut constants = vec![vec![vec![zero.clone(); 2]; 2]; 2];
        constants[0][1][0] = one.clone();
        let a = Algebra::new(
            q(),
            vec![String::from("u"), String::from("v")],
            constants,
            vec![one, zero],
        )
        .unwrap();
        let violations = a.validate();
        assert!(violations.contains(&AlgebraViolation::Commutativity { i: 0, j: 1 }));
    }

    #[test]
    fn canonical_morphisms_validate() {
        let fields = [q(), FieldSpec::prime(101).unwrap()];
        let a_names = [
            BuiltinAlgebra::GroundField,
            BuiltinAlgebra::DualNumbers,
            BuiltinAlgebra::TruncatedPoly(3),
            BuiltinAlgebra::ProductKk,
        ];
        let b_names = [BuiltinAlgebra::GroundField, BuiltinAlgebra::DualNumbers];
        for field in &fields {
            for a in a_names {
                for b in b_names {
                    let eps = builtin_morphism(a, b, field);
                    assert!(
                        eps.validate().is_empty(),
                        "canonical morphism {b:?} -> {a:?} over {field} should be valid"
                    );
                }
            }
        }
    }

    #[test]
    fn non_multiplicative_morphism_is_caught() {
        // Send the nilpotent of the dual numbers to 1: eps(x)^2 = 1 but
        // eps(x^2) = eps(0) = 0.
        let a = dual();
        let b = dual();
        let eps = AlgebraMorphism::new(
            b,
            a.clone(),
            vec![a.unit_coords().to_vec(), a.unit_coords().to_vec()],
        )
        .unwrap();
        let violations = eps.validate();
        assert!(violations
            .iter()
            .any(|v| matches!(v, MorphismViolation::Multiplicativity { .. })));
    }

    /// Random change of basis (scale + permute) of a built-in algebra.
    ///
    /// With `e'_i = λ_i e_{σ(i)}` the constants transform as
    /// `c'[i][j][k] = λ_i λ_j λ_k⁻¹ c[σ(i)][σ(j)][σ(k)]` and the unit as
    /// `u'_k = λ_k⁻¹ u_{σ(k)}`.
    fn rescaled(a: &Algebra, rng: &mut ChaCha8Rng) -> Algebra {
        let field = *a.field();
        let d = a.dim();
        let mut perm: Vec<usize> = (0..d).collect();
        for i in (1..d).rev() {
            perm.swap(i, rng.gen_range(0..=i));
        }
        let lambdas: Vec<Scalar> = (0..d)
            .map(|_| field.from_integer(rng.gen_range(1..100)))
            .collect();
        let mut constants = vec![vec![vec![field.zero(); d]; d]; d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let c = a.structure_constant(perm[i], perm[j], perm[k]);
                    constants[i][j][k] =
                        &(&(&lambdas[i] * &lambdas[j]) * &lambdas[k].inv().unwrap()) * c;
                }
            }
        }
        let unit = (0..d)
            .map(|k| &lambdas[k].inv().unwrap() * &a.unit_coords()[perm[k]])
            .collect();
        Algebra::new(field, a.basis_labels().to_vec(), constants, unit).unwrap()
    }

    #[test]
    fn random_basis_changes_stay_valid_and_commutative() {
        let field = FieldSpec::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let bases = [
            BuiltinAlgebra::DualNumbers,
            BuiltinAlgebra::TruncatedPoly(3),
            BuiltinAlgebra::ProductKk,
        ];
        for name in bases {
            let a = builtin_algebra(name, &field);
            for _ in 0..5 {
                let b = rescaled(&a, &mut rng);
                assert!(b.validate().is_empty(), "{name:?} transform should stay valid");
                for _ in 0..100 {
                    let rand_elem = |rng: &mut ChaCha8Rng| {
                        let coords = (0..b.dim())
                            .map(|_| field.from_integer(rng.gen_range(-10..10)))
                            .collect();
                        b.element(coords).unwrap()
                    };
                    let (x, y, z) = (rand_elem(&mut rng), rand_elem(&mut rng), rand_elem(&mut rng));
                    assert_eq!(b.multiply(&x, &y).unwrap(), b.multiply(&y, &x).unwrap());
                    assert_eq!(
                        b.multiply(&b.multiply(&x, &y).unwrap(), &z).unwrap(),
                        b.multiply(&x, &b.multiply(&y, &z).unwrap()).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn construction_shape_errors() {
        let one = q().one();
        assert_eq!(
            Algebra::new(q(), vec![], vec![], vec![]),
            Err(ConstructionError::EmptyBasis)
        );
        assert_eq!(
            Algebra::new(
                q(),
                vec![String::from("1")],
                vec![vec![vec![one.clone()]]],
                vec![one.clone(), one],
            ),
            Err(ConstructionError::DimensionMismatch("unit vector"))
        );
        let a = dual();
        assert!(a.element(vec![q().one()]).is_err());
        let fp = FieldSpec::prime(7).unwrap();
        assert!(a.element(vec![fp.one(), fp.zero()]).is_err());
    }
}
