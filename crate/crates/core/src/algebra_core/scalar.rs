//! The ground ring: rational functions in the equivariant parameters,
//! extended by truncated nilpotent markers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;

use super::mpoly::Param;
use super::ratfunc::RatFunc;
use super::rational::{rat, Rational};
use super::Algebra;
use crate::error::{Error, Result};

/// A nilpotent marker `eps` with `eps^(order + 1) = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marker {
    name: Arc<str>,
    order: u32,
}

impl Marker {
    pub fn new(name: &str, order: u32) -> Self {
        assert!(order >= 1, "marker truncation order must be positive");
        Marker {
            name: Arc::from(name),
            order,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u32 {
        self.order
    }
}

impl fmt::Debug for Marker {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.name, self.order)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
struct EpsMonomial(Vec<(Marker, u32)>);

impl EpsMonomial {
    fn mul(&self, other: &EpsMonomial) -> Option<EpsMonomial> {
        let mut map: BTreeMap<Marker, u32> = self.0.iter().cloned().collect();
        for (m, e) in &other.0 {
            let slot = map.entry(m.clone()).or_insert(0);
            *slot += e;
            if *slot > m.order {
                return None;
            }
        }
        Some(EpsMonomial(map.into_iter().collect()))
    }

    fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }
}

/// Element of the ground ring: `sum_m f_m(params) * eps^m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct EqScalar {
    terms: BTreeMap<EpsMonomial, RatFunc>,
}

impl EqScalar {
    pub fn zero() -> Self {
        EqScalar::default()
    }

    pub fn one() -> Self {
        EqScalar::from_ratfunc(RatFunc::one())
    }

    pub fn from_i64(n: i64) -> Self {
        EqScalar::rational(rat(n))
    }

    pub fn rational(r: Rational) -> Self {
        EqScalar::from_ratfunc(RatFunc::constant(r))
    }

    pub fn from_ratfunc(f: RatFunc) -> Self {
        let mut terms = BTreeMap::new();
        if !f.is_zero() {
            terms.insert(EpsMonomial::default(), f);
        }
        EqScalar { terms }
    }

    pub fn param(name: &str) -> Self {
        EqScalar::from_ratfunc(RatFunc::param(&Param::new(name)))
    }

    /// `param^e` for any integer `e`.
    pub fn param_pow(name: &str, e: i64) -> Self {
        let p = EqScalar::param(name);
        if e >= 0 {
            p.pow_u(e as u32)
        } else {
            p.inverse()
                .expect("parameters are invertible")
                .pow_u(e.unsigned_abs() as u32)
        }
    }

    pub fn marker(m: &Marker) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(EpsMonomial(vec![(m.clone(), 1)]), RatFunc::one());
        EqScalar { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.unit_part().is_one()
    }

    /// The marker-free part.
    pub fn unit_part(&self) -> RatFunc {
        self.terms
            .get(&EpsMonomial::default())
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    /// True when the element lies in the ideal generated by the markers.
    pub fn is_nilpotent(&self) -> bool {
        self.unit_part().is_zero()
    }

    pub fn is_invertible(&self) -> bool {
        !self.is_nilpotent()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .get(&EpsMonomial::default())
                .and_then(|f| f.as_constant()),
            _ => None,
        }
    }

    pub fn params(&self) -> BTreeSet<Param> {
        self.terms.values().flat_map(|f| f.vars()).collect()
    }

    pub fn markers(&self) -> BTreeSet<Marker> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(mk, _)| mk.clone()))
            .collect()
    }

    /// Upper bound on the nilpotency index of the marker ideal.
    pub fn nilpotency_bound(&self) -> u32 {
        self.markers().iter().map(|m| m.order).sum::<u32>() + 1
    }

    fn insert_add(&mut self, m: EpsMonomial, f: RatFunc) {
        if f.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + &f;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, f);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> EqScalar {
        if c.is_zero() {
            return EqScalar::zero();
        }
        EqScalar {
            terms: self
                .terms
                .iter()
                .map(|(m, f)| (m.clone(), f.scale(c)))
                .collect(),
        }
    }

    pub fn pow_u(&self, e: u32) -> EqScalar {
        let mut acc = EqScalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Result<EqScalar> {
        if e >= 0 {
            Ok(self.pow_u(e as u32))
        } else {
            Ok(self.inverse()?.pow_u(e.unsigned_abs() as u32))
        }
    }

    /// Inverse, defined exactly when the marker-free part is nonzero.
    pub fn inverse(&self) -> Result<EqScalar> {
        let unit = self.unit_part();
        let unit_inv = unit
            .inverse()
            .ok_or_else(|| Error::NotInvertible(self.render()))?;
        let unit_inv = EqScalar::from_ratfunc(unit_inv);
        // a = u (1 + n), n nilpotent: a^{-1} = u^{-1} sum (-n)^j
        let n = &(self * &unit_inv) - &EqScalar::one();
        let minus_n = -&n;
        let mut sum = EqScalar::one();
        let mut term = EqScalar::one();
        loop {
            term = &term * &minus_n;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(&sum * &unit_inv)
    }

    /// Adams action: parameters `p -> p^k`, markers fixed.
    pub fn adams(&self, k: i64) -> Result<EqScalar> {
        if k == 0 {
            return Err(Error::ZeroAdamsIndex);
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let mut out = EqScalar::zero();
        for (m, f) in &self.terms {
            out.insert_add(m.clone(), f.adams(k));
        }
        Ok(out)
    }

    /// Substitutes `param := value`.
    pub fn eval_param(&self, param: &str, value: &Rational) -> Result<EqScalar> {
        let p = Param::new(param);
        let mut out = EqScalar::zero();
        for (m, f) in &self.terms {
            let v = f.eval_param(&p, value).ok_or_else(|| {
                Error::LimitDoesNotExist(format!(
                    "{} has a pole at {}={}",
                    f.render(),
                    param,
                    super::rational::fmt_rational(value)
                ))
            })?;
            out.insert_add(m.clone(), v);
        }
        Ok(out)
    }

    /// Drops every marker term (the marker-free part as a scalar).
    pub fn without_markers(&self) -> EqScalar {
        EqScalar::from_ratfunc(self.unit_part())
    }

    /// The part of total marker degree `<= d`.
    pub fn truncate_marker_degree(&self, d: u32) -> EqScalar {
        EqScalar {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= d)
                .map(|(m, f)| (m.clone(), f.clone()))
                .collect(),
        }
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, f) in &self.terms {
            let coeff = f.render();
            let piece = if m.0.is_empty() {
                coeff
            } else {
                let eps: Vec<String> = m
                    .0
                    .iter()
                    .map(|(mk, e)| {
                        if *e == 1 {
                            mk.name().to_string()
                        } else {
                            format!("{}^{}", mk.name(), e)
                        }
                    })
                    .collect();
                let eps = eps.join("*");
                if f.is_one() {
                    eps
                } else if (-f).is_one() {
                    format!("-{eps}")
                } else if f.as_constant().is_some() && !coeff.contains('/') {
                    format!("{coeff}*{eps}")
                } else {
                    format!("({coeff})*{eps}")
                }
            };
            if !out.is_empty() && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        out
    }
}

impl Add for &EqScalar {
    type Output = EqScalar;
    fn add(self, rhs: &EqScalar) -> EqScalar {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.insert_add(m.clone(), f.clone());
        }
        out
    }
}

impl Sub for &EqScalar {
    type Output = EqScalar;
    fn sub(self, rhs: &EqScalar) -> EqScalar {
        let mut out = self.clone();
        for (m, f) in &rhs.terms {
            out.insert_add(m.clone(), -f);
        }
        out
    }
}

impl Mul for &EqScalar {
    type Output = EqScalar;
    fn mul(self, rhs: &EqScalar) -> EqScalar {
        let mut out = EqScalar::zero();
        for (ma, fa) in &self.terms {
            for (mb, fb) in &rhs.terms {
                if let Some(m) = ma.mul(mb) {
                    out.insert_add(m, fa * fb);
                }
            }
        }
        out
    }
}

impl Neg for &EqScalar {
    type Output = EqScalar;
    fn neg(self) -> EqScalar {
        EqScalar {
            terms: self.terms.iter().map(|(m, f)| (m.clone(), -f)).collect(),
        }
    }
}

impl Algebra for EqScalar {
    fn one_like(&self) -> Self {
        EqScalar::one()
    }
    fn is_zero(&self) -> bool {
        EqScalar::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        self.scale(r)
    }
    fn is_structurally_nilpotent(&self) -> bool {
        self.is_nilpotent()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rational::ratio;

    fn eps() -> EqScalar {
        EqScalar::marker(&Marker::new("eps", 2))
    }

    #[test]
    fn markers_truncate() {
        let e = eps();
        assert!(!e.pow_u(2).is_zero());
        assert!(e.pow_u(3).is_zero());
    }

    #[test]
    fn inverse_with_markers() {
        let a = &EqScalar::from_i64(2) + &eps();
        let inv = a.inverse().unwrap();
        assert!((&a * &inv).is_one());
        assert!(eps().inverse().is_err());
    }

    #[test]
    fn adams_fixes_markers() {
        let lam = EqScalar::param("lambda");
        let a = &(&lam * &eps()) + &EqScalar::rational(ratio(1, 2));
        let b = a.adams(3).unwrap();
        let expected = &(&lam.pow_u(3) * &eps()) + &EqScalar::rational(ratio(1, 2));
        assert_eq!(b, expected);
        assert_eq!(a.adams(0), Err(Error::ZeroAdamsIndex));
    }

    #[test]
    fn param_negative_power() {
        let lam = EqScalar::param("lambda");
        let inv = EqScalar::param_pow("lambda", -2);
        assert!((&inv * &lam.pow_u(2)).is_one());
    }
}
