//! Command-line front end for the flocking simulator: scenario files in,
//! traces, verdicts, metrics, and trajectory plots out.

pub mod commands;
pub mod io;
pub mod missions;
pub mod schema;
pub mod svg;
