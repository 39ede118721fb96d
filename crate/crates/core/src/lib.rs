pub mod cyclotomic;
pub mod error;
pub mod filtration_ring;
pub mod lattice_voa;
pub mod linalg;
pub mod rational;
pub mod root_data;
pub mod typea_plucker;
pub mod weyl_characters;

pub use cyclotomic::CycScalar;
pub use error::{Error, Result};
pub use rational::Q;
pub use root_data::{Kind, RootSystem, Weight};
