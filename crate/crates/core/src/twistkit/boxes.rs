//! Box exponents, pairing twists and the quantum Serre relation.

use crate::algebra_core::{exp_nilpotent, ratio, KClass};
use crate::error::{Error, Result};
use crate::qcalc::{LaurentQ, QRat};

use super::data::{Support, TwistData, TwistMode};

fn check_r(r: i64) -> Result<()> {
    if r <= 0 {
        Err(Error::InvalidInput(format!("level r must be positive, got {r}")))
    } else {
        Ok(())
    }
}

/// `Psi^k(E) / k`, with `E` taken at `q = 1` when asked.
fn adams_over_k(k: i64, e: &LaurentQ, at_one: bool) -> Result<LaurentQ> {
    let a = if at_one {
        LaurentQ::constant(e.at_one().adams(k)?)
    } else {
        e.adams(k)?
    };
    Ok(a.scale_rational(&ratio(1, k)))
}

/// `Psi^k(E) / (k (1 - q^k))`.
pub fn box_term(k: i64, e: &LaurentQ, at_one: bool) -> Result<QRat> {
    if k == 0 {
        return Err(Error::ZeroAdamsIndex);
    }
    let a = QRat::from_laurent(adams_over_k(k, e, at_one)?);
    Ok(&a * &QRat::inv_one_minus(&KClass::one(e.rank()), k, 1)?)
}

/// `X_r(q) = sum_k Psi^k(E^(rk)) / (k (1 - q^k))`.
pub fn box_log(r: i64, data: &TwistData, at_one: bool) -> Result<QRat> {
    check_r(r)?;
    data.require_finite("box_log")?;
    let mut acc = QRat::zero(data.rank());
    for (k, e) in data.reindexed(r) {
        acc = &acc + &box_term(k, e, at_one)?;
    }
    Ok(acc)
}

/// `Box_r = exp(X_r)`, finite for infinitesimal data.
pub fn box_operator(r: i64, data: &TwistData) -> Result<QRat> {
    data.require_infinitesimal("box_operator")?;
    exp_nilpotent(&box_log(r, data, false)?)
}

/// `A/(k(1-q^k)) + A/(k(1-q^{-k})) = A/k` for `A = Psi^k(E^(rk))`.
pub fn box_symmetry_check(r: i64, k: i64, data: &TwistData) -> Result<bool> {
    check_r(r)?;
    if k == 0 {
        return Err(Error::ZeroAdamsIndex);
    }
    let n = data.rank();
    let a = QRat::from_laurent(adams_over_k(k, &data.entry(r * k), false)?);
    let lhs = &(&a * &QRat::inv_one_minus(&KClass::one(n), k, 1)?)
        + &(&a * &QRat::inv_one_minus(&KClass::one(n), -k, 1)?);
    Ok(lhs == a)
}

/// The collapsed Euler factor of one line in an Eulerian pattern.
fn eulerian_factor(l: &KClass, support: Support, sign: i64) -> Result<KClass> {
    let n = l.rank();
    let base = match support {
        Support::Negative => &KClass::one(n) - &l.inverse()?,
        Support::Positive => &KClass::one(n) - l,
    };
    // negative support: exp(sum_{k<0} Psi^k(L)/k) = 1 - L^{-1}
    // positive support: exp(sum_{k>0} Psi^k(L)/k) = (1 - L)^{-1}
    let invert = matches!((support, sign), (Support::Negative, -1) | (Support::Positive, 1));
    if invert {
        base.inverse()
            .map_err(|_| Error::EquivariantParameterRequired(base.render()))
    } else {
        Ok(base)
    }
}

/// The pairing twist `Delta_r = exp(sum_k Psi^k(E^(rk))/k)`.
pub fn pairing_twist(r: i64, data: &TwistData) -> Result<KClass> {
    check_r(r)?;
    let n = data.rank();
    match data.mode() {
        TwistMode::EulerianPi | TwistMode::EulerianDual => {
            let mut acc = KClass::one(n);
            for l in data.lines() {
                acc = &acc * &eulerian_factor(l, data.support(), data.eulerian_sign())?;
            }
            Ok(acc)
        }
        TwistMode::Infinitesimal => exp_nilpotent(&twist_exponent(r, data)?),
        TwistMode::Finite => Err(Error::UnsupportedMode {
            mode: data.mode().name(),
            operation: "pairing_twist",
        }),
    }
}

/// `[X_r term of data at k] - [X_r term of the Serre dual at -k]`.
pub fn serre_relation_difference(r: i64, k: i64, data: &TwistData) -> Result<QRat> {
    check_r(r)?;
    if k == 0 {
        return Err(Error::ZeroAdamsIndex);
    }
    let dual = data.serre_dual()?;
    let ours = box_term(k, &data.entry(r * k), false)?;
    let theirs = box_term(-k, &dual.entry(-r * k), false)?;
    Ok(&ours - &theirs)
}

/// The difference above equals `Psi^k(E^(rk))/k`.
pub fn serre_relation_check(r: i64, k: i64, data: &TwistData) -> Result<bool> {
    let diff = serre_relation_difference(r, k, data)?;
    let expected = QRat::from_laurent(adams_over_k(k, &data.entry(r * k), false)?);
    Ok(diff == expected)
}

/// `X_r(q) + X_r(q^{-1})`, which is `q`-free for `q`-constant data.
pub fn box_log_reflection(r: i64, data: &TwistData) -> Result<QRat> {
    let x = box_log(r, data, false)?;
    Ok((&x + &x.subst_q(-1)).reduce())
}

/// `sum_k Psi^k(E^(rk)(1))/k`.
pub fn twist_exponent(r: i64, data: &TwistData) -> Result<KClass> {
    data.require_finite("twist_exponent")?;
    let mut acc = KClass::zero(data.rank());
    for (k, e) in data.reindexed(r) {
        acc = &acc + &e.at_one().adams(k)?.scale_rational(&ratio(1, k));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{EqScalar, Marker};

    fn eps() -> EqScalar {
        EqScalar::marker(&Marker::new("eps", 1))
    }

    fn konst(c: KClass) -> LaurentQ {
        LaurentQ::constant(c)
    }

    #[test]
    fn box_log_examples() {
        let n = 2;
        let d = TwistData::infinitesimal(n, [(-1, konst(KClass::hopf(n).scale(&eps())))]).unwrap();
        let x = box_log(1, &d, false).unwrap();
        let expected = &QRat::monomial(KClass::hopf_pow(n, -1).scale(&eps()), 1)
            * &QRat::inv_one_minus(&KClass::one(n), 1, 1).unwrap();
        assert_eq!(x, expected);

        let d1 = TwistData::infinitesimal(1, [(1, konst(KClass::scalar(1, eps())))]).unwrap();
        assert!(box_log(2, &d1, false).unwrap().is_zero());
        let expected = &QRat::constant(KClass::scalar(1, eps()))
            * &QRat::inv_one_minus(&KClass::one(1), 1, 1).unwrap();
        assert_eq!(box_log(1, &d1, false).unwrap(), expected);

        let pi = TwistData::eulerian_pi(n, vec![KClass::hopf(n)]).unwrap();
        assert!(matches!(box_log(1, &pi, false), Err(Error::UnsupportedMode { .. })));
    }

    #[test]
    fn box_symmetry_examples() {
        let n = 2;
        let d = TwistData::finite(n, [(1, konst(KClass::hopf(n)))]).unwrap();
        assert!(box_symmetry_check(1, 1, &d).unwrap());
        let lam = KClass::scalar(n, EqScalar::param("lambda"));
        let d = TwistData::finite(n, [(-3, konst(lam))]).unwrap();
        assert!(box_symmetry_check(1, -3, &d).unwrap());
        assert!(box_symmetry_check(1, 2, &TwistData::empty(n)).unwrap());
    }

    #[test]
    fn pairing_twist_examples() {
        let n = 2;
        let pi = TwistData::eulerian_pi(n, vec![KClass::hopf(n)]).unwrap();
        assert_eq!(pairing_twist(1, &pi).unwrap(), &KClass::hopf(n) - &KClass::one(n));
        let lam_inv = KClass::scalar(1, EqScalar::param_pow("lambda", -1));
        let dual = TwistData::eulerian_dual(1, vec![lam_inv]).unwrap();
        let lam = KClass::scalar(1, EqScalar::param("lambda"));
        assert_eq!(
            pairing_twist(1, &dual).unwrap(),
            (&KClass::one(1) - &lam).inverse().unwrap()
        );
        let inf = TwistData::infinitesimal(1, [(1, konst(KClass::scalar(1, eps())))]).unwrap();
        assert_eq!(
            pairing_twist(1, &inf).unwrap(),
            KClass::scalar(1, &EqScalar::one() + &eps())
        );
        let bad = TwistData::eulerian_dual(n, vec![KClass::hopf(n)]).unwrap();
        assert!(matches!(
            pairing_twist(1, &bad),
            Err(Error::EquivariantParameterRequired(_))
        ));
    }

    #[test]
    fn serre_relation_examples() {
        let n = 2;
        let e = KClass::hopf_pow(n, 2);
        let d = TwistData::finite(n, [(-1, konst(e.clone()))]).unwrap();
        assert!(serre_relation_check(1, -1, &d).unwrap());
        assert_eq!(
            serre_relation_difference(1, -1, &d).unwrap(),
            QRat::constant(-&e.adams(-1).unwrap())
        );
        let lp = KClass::hopf(n).scale(&EqScalar::param("lambda"));
        let d = TwistData::finite(n, [(1, konst(lp))]).unwrap();
        assert!(serre_relation_check(1, 1, &d).unwrap());
        assert!(serre_relation_check(1, 5, &TwistData::empty(n)).unwrap());
    }

    #[test]
    fn infinitesimal_twist_matches_exponent() {
        let n = 2;
        let e2 = EqScalar::marker(&Marker::new("eps", 2));
        let d = TwistData::infinitesimal(
            n,
            [
                (1, konst(KClass::hopf(n).scale(&e2))),
                (-2, konst(KClass::from_i64(n, 3).scale(&e2))),
            ],
        )
        .unwrap();
        for r in 1..=2 {
            let expo = twist_exponent(r, &d).unwrap();
            let delta = pairing_twist(r, &d).unwrap();
            let first_order = &KClass::one(n) + &expo;
            let diff = &delta - &first_order;
            assert!(diff.coeffs().iter().all(|c| c.truncate_marker_degree(1).is_zero()));
            assert_eq!(box_log_reflection(r, &d).unwrap(), QRat::constant(expo));
        }
    }
}
