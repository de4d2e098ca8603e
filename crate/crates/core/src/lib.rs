//! Nonuniform Berry–Esseen-type tail bounds for sums of independent random
//! variables, their Winsorized and truncated versions, and exact
//! verification machinery on finite discrete systems.

pub mod bounds;
pub mod cli;
pub mod dist;
pub mod error;
pub mod funcs;
pub mod gauss;
pub mod grid;
pub mod io;
pub mod mc;
pub mod scalar;
pub mod verify;

pub use dist::{convolve, Atom, DiscreteRv, SubMeasure, System, WinsorMode};
pub use error::{Error, Result};
pub use scalar::{Exact, Mode, Scalar};
