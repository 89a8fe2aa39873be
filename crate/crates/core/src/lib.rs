//! Exact computation of Eisenbud-Khimshiashvili-Levine classes (local
//! A1-Brouwer degrees) of polynomial maps with isolated zeros, and their
//! classification in the Grothendieck-Witt group of QQ, F_p, RR or Q_p.

// Matrix code reads more clearly with explicit indices.
#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod degree;
pub mod ekl;
pub mod error;
pub mod fields;
pub mod gw;
pub mod poly;
pub mod standard_basis;

pub use error::{Error, ErrorClass, Result};
