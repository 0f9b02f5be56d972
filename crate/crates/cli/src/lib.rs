//! Scenario runner and file-level verbs for twistlab.

pub mod cache;
pub mod cli;
pub mod config;
pub mod error;
pub mod files;
pub mod ops;
pub mod report;
pub mod scenario;

pub use cli::main_with_args;
pub use report::{Outcome, Report, Status, StepReport};
pub use scenario::{builtin, Scenario};
