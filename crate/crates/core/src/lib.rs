//! Decomposition theory of nonnegative sesquilinear forms on `C^n`.
//!
//! Forms are Hermitian positive-semidefinite matrices with the convention
//! `t(x, y) = y^H T x`. On top of that the crate provides:
//!
//! - binary relations: order, domination, absolute continuity, singularity
//!   ([`form`]);
//! - parallel sums, shorts, and the Lebesgue-type and short-type
//!   decompositions ([`decomposition`]);
//! - infima and extreme points of form intervals ([`order`]);
//! - Radon–Nikodym representatives ([`radon_nikodym`]);
//! - operator-valued positive definite kernels on finite sets, their
//!   decompositions and dilations ([`kernel`]).
//!
//! ```
//! use sesqui::{form::Form, decomposition::lebesgue_decompose};
//!
//! let t = Form::identity(2);
//! let w = Form::diag(&[1.0, 0.0]).unwrap();
//! let dec = lebesgue_decompose(&t, &w).unwrap();
//! assert!(dec.regular.approx_eq(&w, 1e-12));
//! assert!(dec.singular_part.approx_eq(&Form::diag(&[0.0, 1.0]).unwrap(), 1e-12));
//! ```

pub mod decomposition;
pub mod error;
pub mod form;
pub mod kernel;
pub mod linalg;
pub mod order;
pub mod radon_nikodym;
pub mod random;

pub use error::{Error, Result};
pub use form::Form;
pub use kernel::Kernel;
pub use linalg::{ComplexMatrix, ComplexVector, Tolerances};
