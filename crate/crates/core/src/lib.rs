pub mod error;
pub mod gf;
pub mod linalg;
pub mod pauli;
pub mod stab;
pub mod codes;
pub mod concat;
pub mod bounds;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
