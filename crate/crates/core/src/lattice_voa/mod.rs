//! The `P/Q`-graded lattice vertex algebra `S(t^{-1} h[t^{-1}]) (x) C[P]`.

pub mod basis;
pub mod checks;
pub mod currents;
pub mod modes;
pub mod state;

pub use basis::{creator_sets, lattice_points, monomials_up_to};
pub use modes::{AffineGen, LatticeVoa};
pub use state::{Creator, Creators, FockMonomial, FockPoly, State};
