//! Exact exterior-algebra arithmetic and Grassmann-matrix identity checks.
//!
//! The generic Grassmann matrix `X` has the degree-1 generator `x_{h·n+k}` in
//! position `(h, k)`. Read as an antisymmetric multilinear map on `n × n`
//! matrices, `X^a` is the standard polynomial `S_a`, so the identity
//! `S_{2n} = 0` on `M_n` becomes `X^{2n} = 0`. This crate computes these
//! objects exactly and checks the identities they satisfy.

pub mod bench;
pub mod blade;
pub mod coeff;
pub mod concrete;
pub mod error;
pub mod identities;
pub mod linalg;
pub mod matrix;
pub mod multilinear;
pub mod multivector;
pub mod newton;
pub mod random;
pub mod rational;
pub mod report;
pub mod suite;

pub use blade::{Blade, WedgeSign};
pub use coeff::{Coefficient, Ring};
pub use concrete::{ConcreteMatrix, MatrixFile};
pub use error::{Error, Result};
pub use identities::{
    verify_al, verify_anticommutation, verify_cayley_hamilton_generic, verify_free_basis,
    verify_structure_identity, verify_trace_vanishing, Convention,
};
pub use matrix::GrassmannMatrix;
pub use multilinear::{
    equivariance_check, evaluate_map, proposition_check, staircase, standard_identity_check,
    standard_poly_eval, wedge_of_maps_check, Permutation,
};
pub use multivector::Multivector;
pub use newton::{cayley_hamilton_check, newton_char_coeffs};
pub use report::{CheckReport, Witness};
pub use suite::{run_suite, SuiteConfig};
