pub mod cli;
pub mod error;
pub mod gcm;
pub mod geometry;
pub mod liegroup;
pub mod linalg;
pub mod refspace;
pub mod weylrep;

pub use error::{Error, Result};
