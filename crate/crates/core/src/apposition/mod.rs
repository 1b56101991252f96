//! The adjoint-spectrum route: structure constants, the cyclic element
//! `x(β)` and the eigen-decomposition of `ad x(β)`.

pub mod chevalley;
mod cyclic;
mod graded;
mod spectrum;
mod structure;

pub use cyclic::{build_cyclic_element, CyclicElement};
pub use graded::{
    eigen_residual, reconstruct_root_vector, zero_component_eigencheck, GradedVector, GRADING_TOL,
    RECURSION_BITS, ZERO_PROJECTION_TOL,
};
pub use spectrum::{
    group_moduli, modulus_spectrum, normal_eigen, oracle_eigenvalues, oracle_radii, regularity,
    rotation_defect, spectrum, ModulusClass, NormalEigen, OracleRadius, Regularity, SpectralReport,
    CLASS_TOL, CLUSTER_GAP, KERNEL_TOL, SINGULAR_TOL,
};
pub use structure::{
    build_structure_constants, build_with_seed, StructureConstants, JACOBI_SAMPLES, JACOBI_SEED,
};
