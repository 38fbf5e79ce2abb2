//! Std companion to `twochoice-core`: a thread-pool trial executor, the
//! CSV and JSON result formats, and the `twochoice` command line.

pub mod cli;
pub mod executor;
pub mod format;
pub mod report;

pub use executor::ParallelExecutor;
