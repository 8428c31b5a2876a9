//! Exact computations on distance-regular graphs.
//!
//! The crate takes an intersection array `{b_0,...,b_{d-1}; c_1,...,c_d}` and
//! derives everything that follows from it: the full parameter table and
//! intersection-number tensor in exact arithmetic ([`params`]), eigenvalues and
//! multiplicities of the tridiagonal intersection matrix ([`spectrum`]), the
//! growth/expansion inequalities and their sequence machinery ([`tradeoff`]),
//! lower bounds on the minimal degree of the automorphism group ([`motion`]),
//! and halved/folded reductions for bipartite and antipodal graphs
//! ([`imprimitive`]).
//!
//! Everything is cross-validated against brute force on concrete small graphs:
//! [`oracle`] builds named graphs, extracts their parameters empirically, and
//! enumerates their automorphism groups exactly. [`catalog`] ships a fixed set
//! of reference graphs and [`verify`] packages the cross-validation sweeps as
//! runnable check suites.
//!
//! ```
//! use drg_core::params::{derive_parameters, IntersectionArray};
//! use drg_core::motion::distinguishing_numbers;
//! use drg_core::{eigen_spectrum, oracle};
//!
//! // The Petersen graph from its intersection array {3,2; 1,1} ...
//! let array = IntersectionArray::new(vec![3, 2], vec![1, 1])?;
//! let table = derive_parameters(&array)?;
//! assert_eq!(table.n(), &num::BigInt::from(10));
//!
//! let spectrum = eigen_spectrum(&array)?;
//! assert_eq!(spectrum.eigenvalues.len(), 3);
//!
//! // ... bounds every automorphism below by the distinguishing minimum,
//! // which brute force confirms is attained.
//! let dmin = distinguishing_numbers(&table).dmin;
//! assert_eq!(dmin, num::BigInt::from(6));
//! let motion = oracle::automorphism::motion_exact(&oracle::petersen())?;
//! assert_eq!(motion, 6);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod catalog;
pub mod imprimitive;
pub mod motion;
pub mod oracle;
pub mod params;
pub mod spectrum;
pub mod tradeoff;
pub mod verify;

pub use params::{derive_parameters, IntersectionArray, ParameterTable};
pub use spectrum::{eigen_spectrum, Spectrum};

use thiserror::Error;

/// Input outside the documented parameter range of an operation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("domain error: {0}")]
pub struct DomainError(pub String);

pub(crate) type Int = num::BigInt;
pub(crate) type Rat = num::BigRational;
