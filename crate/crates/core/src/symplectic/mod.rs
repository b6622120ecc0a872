//! Exact linear algebra for the standard symplectic form.
//!
//! Coordinates are interleaved: a vector of length `2g` lists the
//! coefficients of `(a₁, b₁, …, a_g, b_g)` and the pairing satisfies
//! `⟨aᵢ, bᵢ⟩ = +1`. A positive Dehn twist about `v` acts on homology by the
//! transvection `x ↦ x + ⟨x, v⟩ v`.

mod basis;
mod f2;
mod group;
mod matrix;

pub use basis::{pairing, SymplecticBasis};
pub use f2::{pairing_f2, F2Matrix, F2Vector, QuadraticFormF2, MAX_F2_GENUS};
pub use group::{
    generated_subgroup_mod2, orbit_mod2, sp_order_f2, FiniteGroupEnumeration, MAX_ENUMERATION_GENUS,
};
pub use matrix::SymplecticMatrix;
