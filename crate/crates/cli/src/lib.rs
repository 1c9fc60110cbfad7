//! Front end of the `sdias` binary: algebra files, report rendering and
//! command dispatch.

pub mod commands;
pub mod files;
pub mod render;

pub use commands::{execute, Cli, Execution, Status};
