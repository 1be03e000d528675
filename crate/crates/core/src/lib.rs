//! Exact symbolic engine for twisted permutation-equivariant quantum K-theory of projective spaces.

pub mod algebra_core;
pub mod error;

pub use error::{Error, Result};
pub mod qcalc;
pub mod twistkit;
pub mod oracle_hrr;
pub mod loopspace;
pub mod lefschetz;
pub mod expr;
pub mod io;
pub mod verify;
