//! Command-line front end for `deltakit`: instance files, command
//! dispatch and benchmarking.

pub mod app;
pub mod bench;
pub mod instance;

pub use app::run;
