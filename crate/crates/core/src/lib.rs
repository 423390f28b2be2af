pub mod density;
pub mod error;
pub mod gabor;
pub mod invariance;
pub mod io;
pub mod lattice;
pub mod symplectic;

pub use error::{Error, Result};
