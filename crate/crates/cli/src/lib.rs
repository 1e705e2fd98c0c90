//! Command-line front end for exact Fourier-matrix verification: parsing
//! of exact scalar and matrix documents, structured reports, and the
//! command implementations behind the `fmat` binary.

pub mod commands;
pub mod document;
pub mod parser;
pub mod report;
