//! Exact finite computations around the zip cone of GSp(2n) over F_p.

pub mod characters;
pub mod cli;
pub mod error;
pub mod fp_linalg;
pub mod hilbert;
pub mod poly;
pub mod selftest;
pub mod strata;
pub mod symtrans;
pub mod weyl;
pub mod weylmod;
pub mod zipcone;

pub use error::{Error, Result};
