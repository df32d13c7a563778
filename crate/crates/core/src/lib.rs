//! Exact algebraic Jacobi functions, their su(2,2) ladder operators, Wigner
//! d-matrices and label-space transforms.

pub mod error;
pub mod funcspace;
pub mod jacobi;
pub mod ladders;
pub mod params;
pub mod scalar;
pub mod transforms;
pub mod verify;
pub mod wigner;

pub use error::{Error, Result};
pub use funcspace::{FunctionSum, Image, LabeledFunction, WeightedPoly};
pub use jacobi::{ajf, ajf_hat};
pub use ladders::{apply_generator_closed, Action, Generator};
pub use params::{HalfInt, JmqTriple, NabTriple};
pub use scalar::{RadicalScalar, Rational};
pub use verify::{run_suite, Suite, VerifyReport};
pub use wigner::{d_element, d_matrix, DMatrix};
pub use transforms::{analyze, synthesize, CoefficientVector};
