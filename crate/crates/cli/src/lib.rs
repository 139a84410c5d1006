//! Command implementations behind the `tridist` binary.

pub mod commands;
pub mod document;
