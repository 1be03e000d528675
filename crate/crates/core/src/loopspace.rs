//! The symplectic loop space: residue forms, assembled form, Box action.

use std::collections::BTreeMap;

use crate::algebra_core::{ratio, EqScalar, KClass};
use crate::error::{Error, Result};
use crate::qcalc::QRat;
use crate::twistkit::{box_operator, TwistData};

/// Which polarization half a point claims to lie in.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Membership {
    #[default]
    Unspecified,
    Plus,
    Minus,
}

/// A finitely supported sequence `r -> f_r`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopPoint {
    components: BTreeMap<i64, QRat>,
    membership: Membership,
}

impl LoopPoint {
    pub fn new(components: impl IntoIterator<Item = (i64, QRat)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (r, f) in components {
            if r <= 0 {
                return Err(Error::InvalidInput(format!(
                    "loop-space components are indexed by r > 0, got {r}"
                )));
            }
            if !f.is_zero() {
                map.insert(r, f);
            }
        }
        Ok(LoopPoint {
            components: map,
            membership: Membership::Unspecified,
        })
    }

    pub fn single(r: i64, f: QRat) -> Result<Self> {
        LoopPoint::new([(r, f)])
    }

    /// Records a membership claim after checking it.
    pub fn claim(mut self, membership: Membership) -> Result<Self> {
        self.membership = membership;
        if self.satisfies_claim() {
            Ok(self)
        } else {
            Err(Error::InvalidInput(format!(
                "loop point does not lie in the claimed {membership:?} space"
            )))
        }
    }

    pub fn membership(&self) -> Membership {
        self.membership
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &QRat)> {
        self.components.iter().map(|(r, f)| (*r, f))
    }

    pub fn component(&self, r: i64) -> Option<&QRat> {
        self.components.get(&r)
    }

    pub fn in_plus(&self) -> bool {
        self.components
            .values()
            .all(|f| f.project_minus().is_zero())
    }

    pub fn in_minus(&self) -> bool {
        self.components.values().all(|f| f.project_plus().is_zero())
    }

    pub fn satisfies_claim(&self) -> bool {
        match self.membership {
            Membership::Unspecified => true,
            Membership::Plus => self.in_plus(),
            Membership::Minus => self.in_minus(),
        }
    }
}

/// `Omega^(r)(f, g) = chi(Delta * residue_bracket(f(q^{-1}) g(q)))`.
pub fn omega_r(f: &QRat, g: &QRat, r: i64, delta: &KClass) -> Result<EqScalar> {
    if r <= 0 {
        return Err(Error::InvalidInput(format!("level r must be positive, got {r}")));
    }
    let integrand = &f.subst_q(-1) * g;
    Ok((&integrand.residue_bracket() * delta).chi())
}

/// `Omega^inf(f, g) = sum_r Psi^r(Omega^(r)(f_r, g_r)) / r`.
pub fn omega_inf(f: &LoopPoint, g: &LoopPoint, twists: &BTreeMap<i64, KClass>) -> Result<EqScalar> {
    let mut acc = EqScalar::zero();
    for (r, fr) in f.components() {
        let Some(gr) = g.component(r) else { continue };
        let delta = match twists.get(&r) {
            Some(d) => d.clone(),
            None => KClass::one(fr.rank()),
        };
        let w = omega_r(fr, gr, r, &delta)?;
        acc = &acc + &w.adams(r)?.scale(&ratio(1, r));
    }
    Ok(acc)
}

/// `f_r -> Box_r(q) f_r` componentwise.
pub fn apply_box(f: &LoopPoint, data: &TwistData) -> Result<LoopPoint> {
    let mut components = BTreeMap::new();
    for (r, fr) in f.components() {
        let b = box_operator(r, data)?;
        let v = (&b * fr).reduce();
        if !v.is_zero() {
            components.insert(r, v);
        }
    }
    Ok(LoopPoint {
        components,
        membership: f.membership,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::{rat, Marker};
    use crate::qcalc::LaurentQ;
    use crate::twistkit::pairing_twist;

    fn geo(n: usize) -> QRat {
        QRat::inv_one_minus(&KClass::one(n), 1, 1).unwrap()
    }

    fn eps() -> EqScalar {
        EqScalar::marker(&Marker::new("eps", 1))
    }

    #[test]
    fn omega_r_examples() {
        let w = omega_r(&QRat::one(1), &geo(1), 1, &KClass::one(1)).unwrap();
        assert_eq!(w, EqScalar::from_i64(-1));
        let w = omega_r(&QRat::q_pow(2, 1), &QRat::q_pow(2, 2), 1, &KClass::one(2)).unwrap();
        assert!(w.is_zero());
        let w = omega_r(&QRat::one(2), &geo(2), 1, &KClass::hopf_pow(2, -1)).unwrap();
        assert_eq!(w, EqScalar::from_i64(-2));
    }

    #[test]
    fn omega_inf_examples() {
        let lam = EqScalar::param("lambda");
        let f = LoopPoint::single(2, QRat::constant(KClass::scalar(1, lam.clone()))).unwrap();
        let g = LoopPoint::single(2, geo(1)).unwrap();
        let w = omega_inf(&f, &g, &BTreeMap::new()).unwrap();
        assert_eq!(w, (-&lam.pow_u(2)).scale(&ratio(1, 2)));
        let h = LoopPoint::single(3, geo(1)).unwrap();
        assert!(omega_inf(&f, &h, &BTreeMap::new()).unwrap().is_zero());
        let f1 = LoopPoint::single(1, QRat::one(1)).unwrap();
        let g1 = LoopPoint::single(1, geo(1)).unwrap();
        assert_eq!(omega_inf(&f1, &g1, &BTreeMap::new()).unwrap(), EqScalar::from_i64(-1));
    }

    #[test]
    fn apply_box_examples() {
        let n = 2;
        let ep = KClass::hopf(n).scale(&eps());
        let data = TwistData::infinitesimal(n, [(-1, LaurentQ::constant(ep))]).unwrap();
        let f = LoopPoint::single(1, QRat::one(n)).unwrap();
        let out = apply_box(&f, &data).unwrap();
        let term = &QRat::monomial(KClass::hopf_pow(n, -1).scale(&eps()), 1) * &geo(n);
        assert_eq!(out.component(1).unwrap(), &(&QRat::one(n) + &term));

        let empty = TwistData::infinitesimal(n, []).unwrap();
        assert_eq!(apply_box(&f, &empty).unwrap(), f);

        let g = LoopPoint::single(1, geo(n)).unwrap().claim(Membership::Minus).unwrap();
        let boxed = apply_box(&g, &data).unwrap();
        assert!(boxed.satisfies_claim());
        assert!(boxed.component(1).unwrap().project_plus().is_zero());
    }

    #[test]
    fn box_transforms_twisted_form() {
        let n = 2;
        let ep = KClass::hopf(n).scale(&eps());
        let data = TwistData::infinitesimal(
            n,
            [(-1, LaurentQ::constant(ep.clone())), (2, LaurentQ::constant(ep))],
        )
        .unwrap();
        let f = &QRat::monomial(KClass::hopf(n), 1) + &geo(n);
        let g = &QRat::q_pow(n, -1) + &QRat::inv_one_minus(&KClass::hopf(n), 1, 2).unwrap();
        for r in 1..=2 {
            let delta = pairing_twist(r, &data).unwrap();
            let b = box_operator(r, &data).unwrap();
            let lhs = omega_r(&f, &g, r, &delta).unwrap();
            let rhs = omega_r(&(&b * &f), &(&b * &g), r, &KClass::one(n)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn scalar_twist_scales_form() {
        let n = 2;
        let tau = KClass::scalar(n, &EqScalar::one() + &eps().scale(&rat(3)));
        let f = &QRat::one(n) + &QRat::q_pow(n, 2);
        let g = geo(n);
        let plain = omega_r(&f, &g, 1, &KClass::one(n)).unwrap();
        let twisted = omega_r(&f, &g, 1, &tau).unwrap();
        assert_eq!(twisted, &plain * tau.as_scalar().unwrap());
    }

    #[test]
    fn antisymmetry() {
        let n = 2;
        let f = &QRat::q_pow(n, 1) + &geo(n);
        let g = &QRat::one(n) + &QRat::inv_one_minus(&KClass::hopf(n), 1, 1).unwrap();
        let a = omega_r(&f, &g, 1, &KClass::one(n)).unwrap();
        let b = omega_r(&g, &f, 1, &KClass::one(n)).unwrap();
        assert_eq!(a, -&b);
    }
}
