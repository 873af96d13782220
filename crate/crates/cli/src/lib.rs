//! Threads, files and the command line around `sawcantor-core`: a parallel
//! and cached SAW counter, JSON/CSV reports, construction manifests with
//! replay, and interval diagrams.

pub mod app;
pub mod cache;
pub mod counter;
pub mod diagram;
pub mod exit;
pub mod manifest;
pub mod report;

pub use app::{run, Cli, Io, RunConfig};
pub use cache::Cached;
pub use counter::Parallel;
pub use exit::Failure;
