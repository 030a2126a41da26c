//! Reading, writing and publishing multi-label datasets.
//!
//! The algorithms live in [`mltk_core`]; this crate adds the file formats,
//! partition export, the static repository builder and the `mltk` binary.

pub mod error;
pub mod export;
pub mod format;
pub mod indices;
pub mod predictions;
pub mod repo;

pub use error::{Error, ParseError, Result};
pub use format::{read, read_any, render, Format, ReadOptions, Schema};
pub use mltk_core as core;
