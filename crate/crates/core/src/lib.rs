//! Bounded context-switching analysis for shared-memory concurrent programs.

pub mod automata;
pub mod bcs;
pub mod error;
pub mod format;
pub mod generators;
pub mod interface;
pub mod local;
pub mod oracles;
pub mod random;
pub mod sched;
pub mod shuffle;

pub use error::{Error, Result};
