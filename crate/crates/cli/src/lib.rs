//! Verification commands behind the `witt` binary.

pub mod checks;
pub mod render;
pub mod report;
