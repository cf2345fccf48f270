//! Exact-arithmetic toolkit for composition algebras, Jordan algebras over
//! them, rank strata of the four hermitian p-space models, and dual-pair
//! momentum maps.
//!
//! Everything is computed over Q or Q(i) with arbitrary-precision rationals,
//! so every identity checked here is checked exactly. Random inputs come from
//! [`rng::trial_rng`], a counter-based scheme keyed by seed, check name and
//! trial index.

pub mod catalog;
pub mod cd;
pub mod dual_pair;
pub mod error;
pub mod jordan;
pub mod linalg;
pub mod poly;
pub mod rng;
pub mod scalar;
pub mod strata;
pub mod verify;

pub use catalog::{HermitianAlgebraEntry, ScorzaEntry};
pub use cd::CDElement;
pub use dual_pair::{CaseKind, DualPairCase, MomentMaps, Reduction, WElement};
pub use error::{Error, Result};
pub use jordan::JordanElement;
pub use linalg::Matrix;
pub use scalar::{Field, Scalar};
pub use strata::{Defects, PSpaceModel, StratumDim, StratumPoint};
pub use verify::{Suite, VerificationReport};
