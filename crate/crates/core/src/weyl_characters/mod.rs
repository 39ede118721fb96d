//! Graded characters of local and global Weyl modules, the globalization
//! functors `U[t]`, `U[t^-1]`, and exterior-power models in type A.

mod character;
mod globalize;
mod model;

pub use character::{
    ch_global, character_dim, dominant_conjugate, dominant_multiplicities, inverse_pochhammer, irreducible_character,
    local_weyl_character, local_weyl_dim, lr_two_fundamentals, omega_or_zero, q_binomial, QCharacter, WeightMap,
};
pub use globalize::{check_duality, globalize, pairing, CurrentModule, Direction, GlobalModule, GlobalVector};
pub use model::{
    columns, dual_model, exterior_model, exterior_weight, mat_mul, mat_vec, zero_matrix, Chevalley, GModuleModel, Matrix,
};
