//! Coordinate Bethe Ansatz for particles on the half-line with delta and
//! momentum-dependent (`pδp`) contact interactions, organised around the
//! hyperoctahedral group `W_N` of signed permutations.
//!
//! Modules follow the dependency order: `weyl_group` and `representations`
//! underlie the scattering operators in `exchange`, whose consistency is
//! checked in `consistency`. `bethe` builds wavefunctions from them and
//! `boundary` verifies those. `scattering` holds the one-particle amplitudes.

pub mod bethe;
pub mod boundary;
pub mod consistency;
pub mod error;
pub mod exchange;
pub mod representations;
pub mod scattering;
pub mod weyl_group;

pub use num_complex::Complex64;

pub use bethe::{
    compute_coefficients, energy, evaluate_psi, word_independence_test, BetheCoefficients,
    CoefficientMode, Momenta, WavefunctionSample,
};
pub use boundary::{
    check_eigen, check_halfline_reduction, check_pair_boundary, check_wall_boundary,
    duality_compare, BoundaryProbe, Facet, FacetResiduals,
};
pub use consistency::{consistency_report, ConsistencyReport, Relation, ResidualReport};
pub use error::{Error, Result};
pub use exchange::{
    boundary_coeffs, coeffs_delta, coeffs_pdp, y_op, z_op, CoefficientPair, Model, ModelSpec,
    OperatorChain, RepOperator,
};
pub use representations::{one_dim_rep, Representation, Sector, Sign};
pub use scattering::{finite_wall_amp, reflection_amp, Parity, ScatteringAmplitude};
pub use weyl_group::{
    classify_wedge, word_for, Generator, GeneratorWord, SignedPermutation, WeylGroup,
};
