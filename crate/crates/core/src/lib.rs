pub mod cli;
pub mod cy;
pub mod derived;
pub mod error;
pub mod linalg;
pub mod quiver;
pub mod rep;
pub mod torsion;
pub mod tube;
pub mod twist;
pub mod wpl;

pub use error::{Error, Result};
