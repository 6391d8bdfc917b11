//! Exact-arithmetic computations with finite groupoids: structure validation,
//! simplicial nerves, crossed modules and their crossed products, integral
//! cohomology through Smith normal form, and the two chain-level transgression
//! maps whose agreement the verify suite checks mechanically.

pub mod cohomology;
pub mod crossed;
pub mod error;
pub mod format;
pub mod groupoid;
pub mod matrix;
pub mod nerve;
pub mod report;
pub mod transgression;
pub mod verify;

pub use error::{Error, Result};
