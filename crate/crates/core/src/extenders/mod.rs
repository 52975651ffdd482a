//! Extending MSRD codes by extra blocks: through a lattice of nested MSRD
//! codes, or through a systematic generator matrix and a partition of the
//! `m × t` coordinate matrix into submatrices.

mod lattice;
mod partition;
mod systematic;

pub use lattice::{
    build_lattice_t2, build_lattice_t3, check_one_weight, extend_lattice, lattice_distances,
    LatticeMember, LatticeRows, LatticeSpec, OneWeightReport,
};
pub use partition::{phi_build, MatrixPartition, PhiMap};
pub use systematic::{extend_systematic, systematic_form, SystematicForm};
