pub mod cli;
pub mod dequant;
pub mod error;
pub mod io;
pub mod lattice;
pub mod num;
pub mod pants;
pub mod patchwork;
pub mod subdivision;
pub mod svg;
pub mod tropical;

pub use error::{Error, Result};
