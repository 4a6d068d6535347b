//! Command implementations and the review service behind the `koalign`
//! binary.

pub mod commands;
pub mod failure;
pub mod serve;
