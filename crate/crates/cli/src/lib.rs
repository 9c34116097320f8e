//! Command implementations and report types behind the `dla` binary.

pub mod commands;
pub mod report;
