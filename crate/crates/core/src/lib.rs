pub mod action;
pub mod builtins;
pub mod error;
pub mod harness;
pub mod linalg;
pub mod perm;
pub mod rep;
pub mod report;
pub mod runner;
pub mod scenario;
pub mod spaces;
pub mod spin;
pub mod subgroups;
pub mod tolerance;

pub use error::{Error, Result};
