//! File formats and command line for the `conley-core` engine.

pub mod bundled;
pub mod cli;
pub mod io;
pub mod random;

pub use cli::{run, Outcome};
