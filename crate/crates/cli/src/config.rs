//! Job configuration: JSON ingestion, fixture presets, and conversion
//! into validated core types.
//!
//! A job is a coefficient field, a triple `(A, B, ε)` with a symmetric
//! bimodule `M`, a simplicial pair, and a maximal degree. Each algebraic
//! component is either a builtin name or explicit structure-constant
//! data with all scalars as strings ("13", "-3/7"); there is no
//! expression language. Shape problems and unparseable scalars are usage
//! errors (exit code 2); violations of the algebraic axioms are domain
//! findings reported by the `validate` command (exit code 1).

use serde::{Deserialize, Serialize};

use hochschild_core::algebra::{
    builtin_algebra, builtin_morphism, Algebra, AlgebraMorphism, BuiltinAlgebra,
    SymmetricBimodule, Triple,
};
use hochschild_core::field::FieldSpec;
use hochschild_core::simplicial::{
    build_circle_pair, build_disk_pair, build_point, PairLevel, SimplicialPair,
};

use crate::CliError;

/// The JSON shape of a job configuration file.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub field: FieldValue,
    pub algebra_a: AlgebraConfig,
    #[serde(default = "default_algebra_b")]
    pub algebra_b: AlgebraConfig,
    #[serde(default)]
    pub epsilon: MorphismConfig,
    #[serde(default)]
    pub module: ModuleConfig,
    #[serde(default = "default_pair")]
    pub pair: PairConfig,
    #[serde(default = "default_q_max")]
    pub q_max: usize,
}

fn default_algebra_b() -> AlgebraConfig {
    AlgebraConfig::Builtin("ground_field".into())
}

fn default_pair() -> PairConfig {
    PairConfig::Builtin("disk-pair".into())
}

fn default_q_max() -> usize {
    3
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldValue {
    Number(u64),
    Name(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraConfig {
    Builtin(String),
    Explicit(ExplicitAlgebra),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitAlgebra {
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// `c[i][j][k]` as scalar strings.
    pub structure_constants: Vec<Vec<Vec<String>>>,
    pub unit: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MorphismConfig {
    /// `"canonical"`: the morphism of the builtin fixtures.
    Named(String),
    /// Column `j` is the image of the `j`-th basis vector of `B` in
    /// `A`-coordinates.
    Columns(Vec<Vec<String>>),
}

impl Default for MorphismConfig {
    fn default() -> Self {
        MorphismConfig::Named("canonical".into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleConfig {
    /// `"regular"`: `M = A` acting on itself.
    Named(String),
    Explicit(ExplicitModule),
}

impl Default for ModuleConfig {
    fn default() -> Self {
        ModuleConfig::Named("regular".into())
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitModule {
    pub dim: usize,
    /// `act[i][j][k]` as scalar strings, `i` over the basis of `A`.
    pub action: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairConfig {
    Builtin(String),
    Explicit(ExplicitPair),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExplicitPair {
    pub levels: Vec<LevelConfig>,
    /// `faces[q - 1][i][element]` for `1 <= q`, `0 <= i <= q`.
    pub faces: Vec<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelConfig {
    pub x_size: usize,
    pub y_size: usize,
}

/// A fully assembled job, ready for validation and computation.
pub struct Job {
    pub config: JobConfig,
    pub field: FieldSpec,
    pub triple: Triple,
    pub module: SymmetricBimodule,
    pub pair: SimplicialPair,
    pub pair_name: String,
    pub q_max: usize,
}

impl JobConfig {
    pub fn from_json(text: &str) -> Result<JobConfig, CliError> {
        serde_json::from_str(text).map_err(|e| {
            CliError::usage(format!(
                "config parse error at line {}, column {}: {e}",
                e.line(),
                e.column()
            ))
        })
    }

    /// Builds a config from a fixture spec `A[:B][@pair]`, for example
    /// `dual_numbers`, `truncated_poly_3:dual_numbers@circle`.
    pub fn from_fixture(spec: &str, field: &str, q_max: usize) -> Result<JobConfig, CliError> {
        let (names, pair) = match spec.split_once('@') {
            Some((names, pair)) => (names, pair),
            None => (spec, "disk-pair"),
        };
        let (a, b) = match names.split_once(':') {
            Some((a, b)) => (a, b),
            None => (names, "ground_field"),
        };
        parse_builtin_algebra(a)?;
        let b_name = parse_builtin_algebra(b)?;
        if !matches!(b_name, BuiltinAlgebra::GroundField | BuiltinAlgebra::DualNumbers) {
            return Err(CliError::usage(format!(
                "no canonical morphism is defined from fixture algebra {b:?}; \
                 use ground_field or dual_numbers for B"
            )));
        }
        parse_builtin_pair_name(pair)?;
        Ok(JobConfig {
            field: FieldValue::Name(field.into()),
            algebra_a: AlgebraConfig::Builtin(a.into()),
            algebra_b: AlgebraConfig::Builtin(b.into()),
            epsilon: MorphismConfig::default(),
            module: ModuleConfig::default(),
            pair: PairConfig::Builtin(pair.into()),
            q_max,
        })
    }

    /// Resolves the configuration into core objects. Only shapes are
    /// checked here; axiom validation is a separate, reported step.
    pub fn resolve(self) -> Result<Job, CliError> {
        let field = parse_field(&self.field)?;
        let q_max = self.q_max;
        let algebra_a = resolve_algebra(&self.algebra_a, &field, "algebra_a")?;
        let algebra_b = resolve_algebra(&self.algebra_b, &field, "algebra_b")?;
        let epsilon = match &self.epsilon {
            MorphismConfig::Named(name) => {
                if name != "canonical" {
                    return Err(CliError::usage(format!(
                        "epsilon: unknown morphism name {name:?}; expected \"canonical\" or columns"
                    )));
                }
                // With B = k the morphism is forced (1 goes to the unit),
                // so it works for explicit A as well; other builtin B's
                // need a builtin A to pin the canonical generator image.
                if algebra_b.dim() == 1 && builtin_name(&self.algebra_b).is_some() {
                    AlgebraMorphism::new(
                        algebra_b.clone(),
                        algebra_a.clone(),
                        vec![algebra_a.unit_coords().to_vec()],
                    )
                    .map_err(|e| CliError::usage(format!("epsilon: {e}")))?
                } else {
                    let (Some(a), Some(b)) = (
                        builtin_name(&self.algebra_a),
                        builtin_name(&self.algebra_b),
                    ) else {
                        return Err(CliError::usage(
                            "epsilon: \"canonical\" needs builtin algebra names for A and B \
                             (except when B is the ground field); give the morphism columns \
                             explicitly"
                                .into(),
                        ));
                    };
                    builtin_morphism(parse_builtin_algebra(a)?, parse_builtin_algebra(b)?, &field)
                }
            }
            MorphismConfig::Columns(columns) => {
                let parsed = columns
                    .iter()
                    .map(|col| parse_scalars(col, &field, "epsilon"))
                    .collect::<Result<Vec<_>, _>>()?;
                AlgebraMorphism::new(algebra_b.clone(), algebra_a.clone(), parsed)
                    .map_err(|e| CliError::usage(format!("epsilon: {e}")))?
            }
        };
        let module = match &self.module {
            ModuleConfig::Named(name) => {
                if name != "regular" {
                    return Err(CliError::usage(format!(
                        "module: unknown module name {name:?}; expected \"regular\" or an action tensor"
                    )));
                }
                SymmetricBimodule::regular(&algebra_a)
            }
            ModuleConfig::Explicit(m) => {
                if m.action.first().map(Vec::len) != Some(m.dim)
                    || m.action.len() != algebra_a.dim()
                {
                    return Err(CliError::usage(
                        "module: action tensor must be dim(A) x dim x dim".into(),
                    ));
                }
                let action = m
                    .action
                    .iter()
                    .map(|rows| {
                        rows.iter()
                            .map(|entry| parse_scalars(entry, &field, "module"))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                SymmetricBimodule::new(field, algebra_a.dim(), action)
                    .map_err(|e| CliError::usage(format!("module: {e}")))?
            }
        };
        let (pair, pair_name) = resolve_pair(&self.pair, q_max)?;
        let triple = Triple::new(algebra_a, algebra_b, epsilon)
            .map_err(|e| CliError::usage(format!("triple: {e}")))?;
        Ok(Job {
            config: self,
            field,
            triple,
            module,
            pair,
            pair_name,
            q_max,
        })
    }
}

fn builtin_name(config: &AlgebraConfig) -> Option<&str> {
    match config {
        AlgebraConfig::Builtin(name) => Some(name),
        AlgebraConfig::Explicit(_) => None,
    }
}

fn parse_field(value: &FieldValue) -> Result<FieldSpec, CliError> {
    let text = match value {
        FieldValue::Number(p) => {
            return FieldSpec::prime(*p).map_err(|e| CliError::usage(format!("field: {e}")))
        }
        FieldValue::Name(s) => s.trim(),
    };
    if text == "Q" || text == "q" {
        return Ok(FieldSpec::Rational);
    }
    let p: u64 = text
        .parse()
        .map_err(|_| CliError::usage(format!("field: expected \"Q\" or a prime, got {text:?}")))?;
    FieldSpec::prime(p).map_err(|e| CliError::usage(format!("field: {e}")))
}

pub fn parse_builtin_algebra(name: &str) -> Result<BuiltinAlgebra, CliError> {
    match name {
        "ground_field" => Ok(BuiltinAlgebra::GroundField),
        "dual_numbers" => Ok(BuiltinAlgebra::DualNumbers),
        "product_kk" => Ok(BuiltinAlgebra::ProductKk),
        _ => {
            if let Some(m) = name.strip_prefix("truncated_poly_") {
                let m: usize = m.parse().map_err(|_| {
                    CliError::usage(format!("unknown builtin algebra {name:?}"))
                })?;
                if m < 2 {
                    return Err(CliError::usage(
                        "truncated_poly needs an exponent of at least 2".into(),
                    ));
                }
                Ok(BuiltinAlgebra::TruncatedPoly(m))
            } else {
                Err(CliError::usage(format!(
                    "unknown builtin algebra {name:?}; expected ground_field, dual_numbers, \
                     truncated_poly_<m>, or product_kk"
                )))
            }
        }
    }
}

fn parse_builtin_pair_name(name: &str) -> Result<(), CliError> {
    match name {
        "point" | "circle" | "disk-pair" => Ok(()),
        _ => Err(CliError::usage(format!(
            "unknown builtin pair {name:?}; expected point, circle, or disk-pair"
        ))),
    }
}

fn resolve_algebra(
    config: &AlgebraConfig,
    field: &FieldSpec,
    what: &str,
) -> Result<Algebra, CliError> {
    match config {
        AlgebraConfig::Builtin(name) => Ok(builtin_algebra(parse_builtin_algebra(name)?, field)),
        AlgebraConfig::Explicit(spec) => {
            if spec.basis_labels.len() != spec.dim {
                return Err(CliError::usage(format!(
                    "{what}: {} basis labels for declared dim {}",
                    spec.basis_labels.len(),
                    spec.dim
                )));
            }
            let constants = spec
                .structure_constants
                .iter()
                .map(|rows| {
                    rows.iter()
                        .map(|entry| parse_scalars(entry, field, what))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let unit = parse_scalars(&spec.unit, field, what)?;
            Algebra::new(*field, spec.basis_labels.clone(), constants, unit)
                .map_err(|e| CliError::usage(format!("{what}: {e}")))
        }
    }
}

fn parse_scalars(
    strings: &[String],
    field: &FieldSpec,
    what: &str,
) -> Result<Vec<hochschild_core::field::Scalar>, CliError> {
    strings
        .iter()
        .map(|s| {
            field
                .parse_scalar(s)
                .map_err(|e| CliError::usage(format!("{what}: {e}")))
        })
        .collect()
}

fn resolve_pair(config: &PairConfig, q_max: usize) -> Result<(SimplicialPair, String), CliError> {
    // Computing H^q needs the differential out of degree q, which uses
    // the faces of level q + 1.
    let depth = q_max + 1;
    match config {
        PairConfig::Builtin(name) => {
            parse_builtin_pair_name(name)?;
            let pair = match name.as_str() {
                "point" => build_point(depth),
                "circle" => build_circle_pair(depth),
                _ => build_disk_pair(depth),
            };
            Ok((pair, name.clone()))
        }
        PairConfig::Explicit(spec) => {
            let levels: Vec<PairLevel> = spec
                .levels
                .iter()
                .map(|l| PairLevel {
                    x_size: l.x_size,
                    y_size: l.y_size,
                })
                .collect();
            let pair = SimplicialPair::new(levels, spec.faces.clone())
                .map_err(|e| CliError::usage(format!("pair: {e}")))?;
            Ok((pair, "custom".into()))
        }
    }
}
