pub mod cli;
pub mod cocycles;
pub mod cohomology;
pub mod cyclotomic;
pub mod error;
pub mod groups;
pub mod nilrep;
pub mod projrep;
pub mod zlinalg;

pub use error::{Error, Result};
