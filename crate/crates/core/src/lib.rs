pub mod bench;
pub mod cli;
pub mod error;
pub mod harness;
pub mod pairing;
pub mod poly;
pub mod scheme;
pub mod wire;

pub use error::{Error, Result};
