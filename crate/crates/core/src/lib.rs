//! Sum-rank metric codes over finite field towers: field arithmetic,
//! exhaustive distance oracles, MSRD generator matrices and the
//! constructions that combine or extend them.

pub mod codes;
pub mod combiners;
pub mod compare;
pub mod error;
pub mod extenders;
pub mod format;
pub mod gf;
pub mod linalg;
pub mod msrd_gen;
pub mod sumrank;

pub use codes::{FqLinearCode, FqmLinearCode, MsrdCertificate, WeightDistribution, DEFAULT_GUARD};
pub use error::{Error, Result};
pub use format::{CodeBody, CodeFile};
pub use gf::{BaseField, FieldElement, FieldTower, FiniteField};
pub use sumrank::{
    expand_distance, matrix_repr, singleton_bound, sumrank_distance, sumrank_weight, BlockProfile,
    BoundExpansion, LengthPartition, Matrix, MatrixTuple,
};
