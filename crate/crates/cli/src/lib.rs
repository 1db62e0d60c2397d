//! Command-line front end: parameter sweeps, the fixed figure presets and the
//! validation suite.

pub mod app;
pub mod config;
pub mod sweep;
pub mod table;
pub mod validate;
