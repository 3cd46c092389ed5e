//! O(3)-invariants of 3×3 matrices, evaluated at random points.

pub mod catalog;
pub mod cor1;
pub mod decompose;
pub mod exact;
pub mod interp;
pub mod matrix;
pub mod mpoly;

pub use catalog::{catalog_at, generator_catalog, Generator};
pub use cor1::{cor1_crosscheck, CrossCheck};
pub use decompose::{DegreeVerdict, DmaxReport, Oracle, OracleConfig, Verdict};
pub use exact::{exact_decomposable, generic_value, nilpotent_certificate, ExactVerdict, NilpotentCertificate};
pub use interp::{extract_component, linearized_sigma_tr, LinearizedArgs};
pub use matrix::{eval_ncpoly, eval_sigma, eval_sigma_poly, EvaluationPoint, Mat3, Ring};
pub use mpoly::MPoly;
