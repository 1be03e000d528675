//! Dilaton vectors and kappa divisibility.

use crate::algebra_core::{exp_nilpotent, ratio, KClass};
use crate::error::{Error, Result};
use crate::qcalc::{LaurentQ, QRat};

use super::data::TwistData;

/// Divides by `1 - q^k` exactly.
fn div_one_minus_qk(f: &LaurentQ, k: i64) -> Result<LaurentQ> {
    let n = f.rank();
    let one = KClass::one(n);
    let quot = f.div_one_minus(&one, k.abs()).ok_or_else(|| {
        Error::InexactDivision(format!("{} by 1-q^{}", f.render(), k.abs()))
    })?;
    if k > 0 {
        Ok(quot)
    } else {
        // 1 - q^{-K} = -q^{-K} (1 - q^K)
        Ok((-&quot).shift(-k))
    }
}

/// `Psi^k(E(q) - E(1)) / (1 - q^k)` as a Laurent polynomial.
pub fn kappa_ratio(k: i64, e: &LaurentQ) -> Result<LaurentQ> {
    if k == 0 {
        return Err(Error::ZeroAdamsIndex);
    }
    let shifted = e - &LaurentQ::constant(e.at_one());
    div_one_minus_qk(&shifted.adams(k)?, k)
}

/// `sum_k kappa_ratio(k, E^(kr)) / k`.
fn dilaton_exponent(r: i64, data: &TwistData) -> Result<LaurentQ> {
    let mut acc = LaurentQ::zero(data.rank());
    if data.mode().is_eulerian() {
        return Ok(acc);
    }
    for (k, e) in data.reindexed(r) {
        acc = &acc + &kappa_ratio(k, e)?.scale_rational(&ratio(1, k));
    }
    Ok(acc)
}

/// `v_r = (1 - q) exp(sum_k Psi^k(E^(kr)(q) - E^(kr)(1)) / (k (1 - q^k)))`.
pub fn dilaton_vector(r: i64, data: &TwistData) -> Result<QRat> {
    if r <= 0 {
        return Err(Error::InvalidInput(format!("level r must be positive, got {r}")));
    }
    let n = data.rank();
    let base = QRat::from_laurent(LaurentQ::one_minus(&KClass::one(n), 1));
    let expo = dilaton_exponent(r, data)?;
    if expo.is_zero() {
        return Ok(base);
    }
    data.require_infinitesimal("dilaton_vector")?;
    Ok(&base * &exp_nilpotent(&QRat::from_laurent(expo))?)
}

/// `(1 - q^r) exp(sum_k Psi^{rk}[(E^(rk)(q) - E^(rk)(1)) / (k (1 - q))])`.
pub fn psi_dilaton_lhs(r: i64, data: &TwistData) -> Result<QRat> {
    data.require_infinitesimal("psi_dilaton_check")?;
    let n = data.rank();
    let mut expo = LaurentQ::zero(n);
    for (k, e) in data.reindexed(r) {
        let shifted = e - &LaurentQ::constant(e.at_one());
        let inner = div_one_minus_qk(&shifted, 1)?;
        expo = &expo + &inner.adams(r * k)?.scale_rational(&ratio(1, k));
    }
    let base = QRat::from_laurent(LaurentQ::one_minus(&KClass::one(n), r));
    Ok(&base * &exp_nilpotent(&QRat::from_laurent(expo))?)
}

/// The `r`-th dilaton vector is `Psi^r` of the first-level shape.
pub fn psi_dilaton_check(r: i64, data: &TwistData) -> Result<bool> {
    let lhs = psi_dilaton_lhs(r, data)?;
    let rhs = dilaton_vector(r, data)?.adams(r)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{EqScalar, Marker};

    fn eps() -> EqScalar {
        EqScalar::marker(&Marker::new("eps", 1))
    }

    #[test]
    fn kappa_examples() {
        let n = 2;
        let p = KClass::hopf(n);
        for k in [-3i64, -1, 1, 2, 4] {
            let e = LaurentQ::monomial(p.clone(), 1);
            assert_eq!(kappa_ratio(k, &e).unwrap(), LaurentQ::constant(-&p.pow(k).unwrap()));
            let e = LaurentQ::q_pow(n, 1);
            assert_eq!(kappa_ratio(k, &e).unwrap(), LaurentQ::constant(KClass::from_i64(n, -1)));
            let e = &LaurentQ::q_pow(n, 1) + &LaurentQ::q_pow(n, -1);
            let expected = -&LaurentQ::one_minus(&KClass::one(n), -k);
            assert_eq!(kappa_ratio(k, &e).unwrap(), expected);
        }
    }

    #[test]
    fn dilaton_examples() {
        let n = 2;
        let one_minus_q = QRat::from_laurent(LaurentQ::one_minus(&KClass::one(n), 1));
        let ep = KClass::hopf(n).scale(&eps());
        let d = TwistData::infinitesimal(n, [(1, LaurentQ::monomial(ep.clone(), 1))]).unwrap();
        let expected = &one_minus_q * &QRat::constant(&KClass::one(n) - &ep);
        assert_eq!(dilaton_vector(1, &d).unwrap(), expected);
        assert_eq!(dilaton_vector(2, &d).unwrap(), one_minus_q);
        let c = TwistData::infinitesimal(n, [(1, LaurentQ::constant(ep))]).unwrap();
        assert_eq!(dilaton_vector(1, &c).unwrap(), one_minus_q);
        let f = TwistData::finite(n, [(1, LaurentQ::q_pow(n, 1))]).unwrap();
        assert!(dilaton_vector(1, &f).is_err());
    }

    #[test]
    fn psi_dilaton_examples() {
        let n = 2;
        let ep = KClass::hopf(n).scale(&eps());
        let d = TwistData::infinitesimal(n, [(2, LaurentQ::monomial(ep, 1))]).unwrap();
        assert!(psi_dilaton_check(2, &d).unwrap());
        let lhs = psi_dilaton_lhs(2, &d).unwrap();
        let p2e = KClass::hopf_pow(n, 2).scale(&eps());
        let expected = &QRat::from_laurent(LaurentQ::one_minus(&KClass::one(n), 2))
            * &QRat::constant(&KClass::one(n) - &p2e);
        assert_eq!(lhs, expected);
        assert!(psi_dilaton_check(1, &d).unwrap());
        let empty = TwistData::infinitesimal(n, []).unwrap();
        assert!(psi_dilaton_check(3, &empty).unwrap());
    }
}
