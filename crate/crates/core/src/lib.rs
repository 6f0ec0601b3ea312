pub mod complex;
pub mod deformation;
pub mod derived;
pub mod error;
pub mod hilbert90;
pub mod io;
pub mod linalg;
pub mod random;
pub mod simplicial;

pub use error::{Error, Result};
