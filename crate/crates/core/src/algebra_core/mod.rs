//! Ground ring, target K-ring, cyclotomic scalars and truncated series.

pub mod cyclo;
pub mod kclass;
pub mod mpoly;
pub mod ratfunc;
pub mod rational;
pub mod scalar;
pub mod series;

pub use cyclo::{cyclotomic, CycRep, CycloElem};
pub use kclass::{adams, chi, dual_basis, euler_class, pair_twisted, KClass};
pub use mpoly::{MPoly, Param};
pub use ratfunc::RatFunc;
pub use rational::{rat, ratio, Rational};
pub use scalar::{EqScalar, Marker};
pub use series::TruncatedSeries;

use crate::error::{Error, Result};

/// Minimal commutative Q-algebra interface used by the nilpotent exponential.
pub trait Algebra: Clone {
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn scale_rational(&self, r: &Rational) -> Self;
    /// True when some power of `self` is guaranteed to vanish.
    fn is_structurally_nilpotent(&self) -> bool;
}

/// `exp(f) = sum f^m/m!`, a finite sum for nilpotent `f`.
pub fn exp_nilpotent<A: Algebra>(f: &A) -> Result<A> {
    if !f.is_structurally_nilpotent() {
        return Err(Error::NotNilpotent);
    }
    let mut sum = f.one_like();
    let mut term = f.one_like();
    let mut m = 1i64;
    loop {
        term = term.mul_ref(f).scale_rational(&ratio(1, m));
        if term.is_zero() {
            return Ok(sum);
        }
        sum = sum.add_ref(&term);
        m += 1;
    }
}

/// Exponential of a truncated series with vanishing constant term.
pub fn series_exp(f: &TruncatedSeries) -> Result<TruncatedSeries> {
    exp_nilpotent(f)
}

/// Character of `v` at the generator of `Z_r`.
pub fn trace_generator(v: &CycRep) -> CycloElem {
    v.trace_generator()
}
