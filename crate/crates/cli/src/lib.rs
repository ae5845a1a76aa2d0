//! Library side of the `supertriv` binary: the module file format and the
//! command implementations, kept free of process handling so they can be
//! tested directly.

pub mod commands;
pub mod format;

pub use commands::{Failure, Outcome};
pub use format::ModuleFile;
