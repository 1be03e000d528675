//! Truncated multivariate power series over Q.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::rational::{fmt_rational, rat, Rational};
use super::Algebra;
use crate::error::{Error, Result};

/// Power series in `vars` with `vars[i]^orders[i] = 0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    vars: Arc<[String]>,
    orders: Arc<[u32]>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TruncatedSeries {
    pub fn zero(vars: &[&str], orders: &[u32]) -> Self {
        assert_eq!(vars.len(), orders.len(), "one order per variable");
        TruncatedSeries {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            orders: orders.into(),
            terms: BTreeMap::new(),
        }
    }

    fn zero_like(&self) -> Self {
        TruncatedSeries {
            vars: self.vars.clone(),
            orders: self.orders.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant_like(&self, c: Rational) -> Self {
        self.monomial_like(&vec![0; self.vars.len()], c)
    }

    pub fn one(vars: &[&str], orders: &[u32]) -> Self {
        TruncatedSeries::zero(vars, orders).constant_like(rat(1))
    }

    /// `c * prod vars[i]^exps[i]`, dropped if past the truncation.
    pub fn monomial_like(&self, exps: &[u32], c: Rational) -> Self {
        let mut out = self.zero_like();
        out.insert(exps.to_vec(), c);
        out
    }

    pub fn var(vars: &[&str], orders: &[u32], i: usize) -> Self {
        let z = TruncatedSeries::zero(vars, orders);
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        z.monomial_like(&e, rat(1))
    }

    fn insert(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || exps.iter().zip(self.orders.iter()).any(|(e, o)| e >= o) {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rational {
        self.terms.get(exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn constant_term(&self) -> Rational {
        self.coeff(&vec![0; self.vars.len()])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = self.zero_like();
        for (e, v) in &self.terms {
            out.insert(e.clone(), v * c);
        }
        out
    }

    pub fn pow_u(&self, k: u32) -> Self {
        let mut acc = self.constant_like(rat(1));
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicative inverse; needs a nonzero constant term.
    pub fn inverse(&self) -> Result<Self> {
        let c = self.constant_term();
        if c.is_zero() {
            return Err(Error::NotInvertible(self.render()));
        }
        let c_inv = c.recip();
        let y = &self.scale(&c_inv) - &self.constant_like(rat(1));
        let minus_y = -&y;
        let mut sum = self.constant_like(rat(1));
        let mut term = sum.clone();
        loop {
            term = &term * &minus_y;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum.scale(&c_inv))
    }

    fn check(&self, other: &Self) {
        assert!(
            self.vars == other.vars && self.orders == other.orders,
            "series over different variables or truncations"
        );
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{v}^{k}") })
                .collect();
            let mono = mono.join("*");
            let piece = if mono.is_empty() {
                fmt_rational(c)
            } else if c.is_one() {
                mono
            } else if (-c).is_one() {
                format!("-{mono}")
            } else {
                format!("{}*{mono}", fmt_rational(c))
            };
            if !out.is_empty() && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self + &(-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&rat(-1))
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.check(rhs);
        let mut out = self.zero_like();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a.saturating_add(*b)).collect();
                out.insert(e, ca * cb);
            }
        }
        out
    }
}

impl Algebra for TruncatedSeries {
    fn one_like(&self) -> Self {
        self.constant_like(rat(1))
    }
    fn is_zero(&self) -> bool {
        TruncatedSeries::is_zero(self)
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
        self.constant_term().is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rational::ratio;

    #[test]
    fn truncation_and_inverse() {
        let t = TruncatedSeries::var(&["t"], &[4], 0);
        assert!(t.pow_u(4).is_zero());
        let one = t.one_like();
        let inv = (&one - &t).inverse().unwrap();
        for k in 0..4 {
            assert_eq!(inv.coeff(&[k]), rat(1));
        }
        assert!(t.inverse().is_err());
    }

    #[test]
    fn mixed_variables() {
        let u = TruncatedSeries::var(&["u", "t"], &[2, 3], 0);
        let t = TruncatedSeries::var(&["u", "t"], &[2, 3], 1);
        let s = &(&u + &t).pow_u(2) - &t.pow_u(2);
        assert_eq!(s.coeff(&[1, 1]), rat(2));
        assert!(s.coeff(&[2, 0]).is_zero());
        assert_eq!(s.scale(&ratio(1, 2)).render(), "u*t");
    }
}
