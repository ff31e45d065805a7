//! JSON formats, reports and the command line for `niltower-core`.

pub mod cli;
pub mod fixtures;
pub mod input;
pub mod report;

pub use cli::{caps_from_env, run_args, Outcome};
