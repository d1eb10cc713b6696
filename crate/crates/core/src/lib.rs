pub mod algebra;
pub mod error;
pub mod lyndon;
pub mod paths;
pub mod signature;
pub mod varieties;
pub mod words;

pub use error::{Error, Result};
