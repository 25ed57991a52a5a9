//! Configuration and artifact-rendering layer of the `coinwalk` binary,
//! exposed as a library so integration tests can parse what the binary
//! writes.

pub mod config;
pub mod output;
