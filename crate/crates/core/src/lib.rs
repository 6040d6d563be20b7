pub mod arith;
pub mod error;
pub mod fixtures;
pub mod geometry;
pub mod lattice;
pub mod report;
pub mod rootset;
pub mod cones;
pub mod vinberg;
pub mod weylstruct;
pub mod kacmoody;
pub mod qseries;
pub mod cli;

pub use error::{Error, Result};
