//! Command line interface and HTTP service for storyuml.

pub mod cli;
pub mod repl;
pub mod server;

pub use cli::run;
