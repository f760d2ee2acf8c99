//! Krull dimension, valuative dimension and Jaffard/AF status of k-algebras
//! built from pullbacks, and of their tensor products over `k`.
//!
//! Terms are [`AlgebraExpr`] trees. [`invariants`] propagates dimension data
//! bottom-up; [`tensor`] dispatches over closed-form rules for `A1 ⊗_k A2`
//! and falls back to certified intervals. [`dsl`] is the textual front end
//! and [`harness`] the randomized cross-checking suites.

pub mod dim;
pub mod dsl;
pub mod error;
pub mod harness;
pub mod invariants;
pub mod model;
pub mod tensor;

pub use dim::{DimValue, TriState};
pub use error::{Error, Result};
pub use invariants::InvariantBundle;
pub use model::{AlgebraExpr, MaximalIdealData, Violation};
pub use tensor::{Evaluation, RuleId, Trace, Verdict};
