//! Loewy structures of modules over finite-dimensional basic algebras given
//! by quivers with relations over a prime field.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod examples;
pub mod linalg;
pub mod loewy;
pub mod modules;
pub mod verify;

pub use error::{Error, Result};
