//! File formats, Graphviz output, verification checks and the command-line
//! front end for `paq-core`.

pub mod budget;
pub mod cli;
pub mod dot;
pub mod format;
pub mod verify;
