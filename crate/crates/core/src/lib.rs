pub mod cli;
pub mod clifford;
pub mod design;
pub mod error;
pub mod frame;
pub mod linalg;
pub mod mixing;
pub mod operator;
pub mod pauli;
pub mod perm;
pub mod report;
pub mod scalar;
pub mod witness;

pub use error::{Error, Result};
