//! Exact tropical geometry over nonarchimedean valued fields.

pub mod anlim;
pub mod basechange;
pub mod cli;
pub mod closure;
pub mod error;
pub mod io;
pub mod laurent;
pub mod linalg;
pub mod polyhedra;
pub mod svg;
pub mod text;
pub mod torictrop;
pub mod tropvar;
pub mod valfield;

pub use error::{Error, Result};
