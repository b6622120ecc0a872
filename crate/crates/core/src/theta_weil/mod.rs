//! Abelian conformal blocks: theta-null sums, the finite Heisenberg group in
//! its Schrödinger model, and the Weil intertwiners of `Sp_{2g}(ℤ/k)`.

mod heisenberg;
mod theta;
mod weil;

pub(crate) use heisenberg::state_space_size;
pub use heisenberg::{heisenberg_cocycle, heisenberg_operator, state_index, HeisenbergElement, MAX_STATE_SPACE};
pub use theta::{theta_factorization_check, theta_null, theta_tail_bound, SiegelPoint, ThetaLabel};
pub use weil::{weil_intertwiner, weil_intertwiner_at_level, weil_tensor_factorization, WeilOperator, WeilOptions};
