//! Algebraic invariants of Lefschetz fibrations read off their vanishing cycles.
//!
//! * [`symplectic`]: integral and mod-2 symplectic linear algebra, quadratic
//!   refinements and finite group enumeration.
//! * [`fibration`]: homological monodromy, spin detection and mod-2 image
//!   classification.
//! * [`theta_weil`]: theta-null sums, the finite Heisenberg group and Weil
//!   intertwiners.
//! * [`verlinde`]: SU(2) conformal-block ranks by three independent routes.
//! * [`rep`]: commutants and reducibility of the composed representation.
//! * [`bundle`]: degree, splitting type and section counts on a pencil.
//!
//! Numerical code is generic over [`scalar::Real`] (`f32`, `f64`) and integral
//! code over [`scalar::Coeff`] (`i64`, `i128`, `BigInt`); the aliases below fix
//! the common choices.

pub mod bundle;
pub mod error;
pub mod fibration;
pub mod linalg;
pub mod random;
pub mod rep;
pub mod scalar;
pub mod symplectic;
pub mod theta_weil;
pub mod verlinde;

pub use error::{Error, Result};
pub use fibration::{FibrationDescription, ImageClass};
pub use rep::{HomPlusStatus, Reducibility};
pub use symplectic::{F2Matrix, QuadraticFormF2, SymplecticBasis};
pub use verlinde::FusionRingSU2k;

/// Integer symplectic matrices with overflow-checked `i64` entries.
pub type SymplecticMatrixZ = symplectic::SymplecticMatrix<i64>;
/// Arbitrary-precision symplectic matrices.
pub type SymplecticMatrixBig = symplectic::SymplecticMatrix<num_bigint::BigInt>;
pub type MonodromyZ = fibration::Monodromy<i64>;
pub type SiegelPointF64 = theta_weil::SiegelPoint<f64>;
pub type WeilOperatorF64 = theta_weil::WeilOperator<f64>;
pub type WeilOperatorF32 = theta_weil::WeilOperator<f32>;
pub type ProjectiveRepF64 = rep::ProjectiveRep<f64>;
pub type CommutantReportF64 = rep::CommutantReport<f64>;
pub type ReducibilityReportF64 = rep::ReducibilityReport<f64>;
