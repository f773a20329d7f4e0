//! Exact symbolic engine for a family of `q`-deformed coordinate algebras:
//! their defining presentations, R-matrix calculus, differential calculi and
//! the ADHM-style instanton constructions living over them.
//!
//! Everything is computed over the exact field `Q(i)(s)` with `q = s^4`;
//! there is no floating point and no truncation of coefficients anywhere.
//! The main layers:
//!
//! - [`scalar`]: the coefficient field.
//! - [`engine`]: words, presentations, rewriting, truncated completion,
//!   dimension counting, homomorphism checking, tensor squares.
//! - [`linalg`]: exact dense linear algebra over any field-like type.
//! - [`rmatrix`]: the 4×4 braid data, gauge conjugates, Hecke relations and
//!   projector decompositions.
//! - [`algebras`]: the catalog of named presentations and the structural
//!   verification entry points (realizations, gluing, Hopf data, flags).
//! - [`forms`]: differential graded extensions, the exterior differential,
//!   Hodge star and (anti-)self-dual decompositions.
//! - [`instanton`]: ADHM data, monads, curvature and patch gluing.

pub mod algebras;
pub mod engine;
pub mod forms;
pub mod instanton;
pub mod linalg;
pub mod parallel;
pub mod rmatrix;
pub mod scalar;
