//! Rational functions of `q` over the K-ring: expansions, polarization, residues, limits.

pub mod laurent;
pub mod qrat;

pub use laurent::LaurentQ;
pub use qrat::{Factor, Point, QRat};

use crate::algebra_core::KClass;
use crate::error::Result;

pub fn subst_q(f: &QRat, k: i64) -> QRat {
    f.subst_q(k)
}

pub fn expand_at(f: &QRat, point: Point, order: usize) -> LaurentQ {
    f.expand_at(point, order)
}

pub fn project_plus(f: &QRat) -> LaurentQ {
    f.project_plus()
}

pub fn project_minus(f: &QRat) -> QRat {
    f.project_minus()
}

pub fn residue_bracket(f: &QRat) -> KClass {
    f.residue_bracket()
}

pub fn limit_at_one(f: &QRat, param: &str) -> Result<QRat> {
    f.limit_at_one(param)
}
