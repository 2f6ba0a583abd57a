pub mod error;
pub mod exactnum;
pub mod polytope;
pub mod toric;
pub mod twistorfiber;
pub mod coxeter;
pub mod betti;

pub use error::{Error, Result};
