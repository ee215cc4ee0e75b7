//! Documents, rendering, random drawings and the command line around
//! `upward-core`.

pub mod cli;
pub mod document;
mod error;
pub mod generate;
pub mod svg;

pub use error::{HarnessError, Result};
