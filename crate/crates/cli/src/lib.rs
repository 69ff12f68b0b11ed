//! File formats, configuration, caching, verification reports, and the
//! command implementations behind the `minsurf` binary.

pub mod cache;
pub mod commands;
pub mod config;
pub mod csvio;
pub mod json;
pub mod verify;
