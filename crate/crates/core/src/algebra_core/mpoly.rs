//! Sparse multivariate polynomials over Q in named parameters.
//!
//! Monomials are ordered lexicographically with parameter names compared
//! alphabetically (earlier names are more significant). The gcd is the
//! classical recursive primitive polynomial remainder sequence.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::rational::{fmt_rational, Rational};

/// A named equivariant parameter such as `lambda`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Param(Arc<str>);

impl Param {
    pub fn new(name: &str) -> Self {
        Param(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Product of parameter powers; entries sorted by parameter, exponents positive.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial(Vec<(Param, u32)>);

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.0, &other.0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((pa, ea)), Some((pb, eb))) => match pa.cmp(pb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        match ea.cmp(eb) {
                            Ordering::Equal => {}
                            ord => return ord,
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(p: Param, e: u32) -> Self {
        if e == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(p, e)])
        }
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree_in(&self, p: &Param) -> u32 {
        self.0
            .iter()
            .find(|(q, _)| q == p)
            .map(|(_, e)| *e)
            .unwrap_or(0)
    }

    pub fn factors(&self) -> &[(Param, u32)] {
        &self.0
    }

    fn from_map(map: BTreeMap<Param, u32>) -> Self {
        Monomial(map.into_iter().filter(|(_, e)| *e > 0).collect())
    }

    fn to_map(&self) -> BTreeMap<Param, u32> {
        self.0.iter().cloned().collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut map = self.to_map();
        for (p, e) in &other.0 {
            *map.entry(p.clone()).or_insert(0) += e;
        }
        Monomial::from_map(map)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut map = self.to_map();
        for (p, e) in &other.0 {
            let slot = map.get_mut(p)?;
            if *slot < *e {
                return None;
            }
            *slot -= e;
        }
        Some(Monomial::from_map(map))
    }

    /// Replaces the exponent of `p` by `f(exponent)`.
    fn map_exponent(&self, p: &Param, f: impl Fn(u32) -> u32) -> Monomial {
        let mut map = self.to_map();
        let e = map.get(p).copied().unwrap_or(0);
        map.insert(p.clone(), f(e));
        Monomial::from_map(map)
    }

    /// Componentwise minimum of exponents.
    fn meet(&self, other: &Monomial) -> Monomial {
        let b = other.to_map();
        Monomial::from_map(
            self.0
                .iter()
                .filter_map(|(p, e)| b.get(p).map(|f| (p.clone(), (*e).min(*f))))
                .collect(),
        )
    }

    fn without(&self, p: &Param) -> Monomial {
        Monomial(self.0.iter().filter(|(q, _)| q != p).cloned().collect())
    }
}

/// Multivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        MPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        MPoly::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn var(p: Param) -> Self {
        MPoly::term(Monomial::var(p, 1), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// The value if the polynomial involves no parameter.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn vars(&self) -> BTreeSet<Param> {
        self.terms
            .keys()
            .flat_map(|m| m.0.iter().map(|(p, _)| p.clone()))
            .collect()
    }

    /// The largest monomial dividing every term.
    fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |acc, m| acc.meet(m)),
        }
    }

    fn div_monomial(&self, m: &Monomial) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(t, c)| (t.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    pub fn degree_in(&self, p: &Param) -> u32 {
        self.terms.keys().map(|m| m.degree_in(p)).max().unwrap_or(0)
    }

    fn insert_add(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> MPoly {
        match self.leading() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    pub fn leading_coefficient(&self) -> Rational {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.recip()));
        }
        let (lm_d, lc_d) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((lm_r, lc_r)) = rem.leading() {
            let m = lm_r.div(&lm_d)?;
            let c = lc_r / &lc_d;
            let t = MPoly::term(m, c);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Coefficients with respect to `p`, indexed by degree.
    pub fn to_univariate(&self, p: &Param) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(); self.degree_in(p) as usize + 1];
        for (m, c) in &self.terms {
            let e = m.degree_in(p) as usize;
            out[e].insert_add(m.without(p), c.clone());
        }
        trim(&mut out);
        out
    }

    pub fn from_univariate(p: &Param, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = Monomial::var(p.clone(), e as u32);
            for (m, v) in &c.terms {
                out.insert_add(m.mul(&shift), v.clone());
            }
        }
        out
    }

    /// Substitutes a rational value for `p`.
    pub fn eval_param(&self, p: &Param, value: &Rational) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let e = m.degree_in(p);
            let mut v = c.clone();
            for _ in 0..e {
                v *= value;
            }
            out.insert_add(m.without(p), v);
        }
        out
    }

    /// Rewrites every exponent `e` of `p` as `f(e)`.
    pub fn map_exponent(&self, p: &Param, f: impl Fn(u32) -> u32) -> MPoly {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            out.insert_add(m.map_exponent(p, &f), c.clone());
        }
        out
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter() {
            let neg = c.is_negative();
            let abs = c.abs();
            let mut body = String::new();
            if m.is_one() {
                body.push_str(&fmt_rational(&abs));
            } else {
                if !abs.is_one() {
                    body.push_str(&fmt_rational(&abs));
                    body.push('*');
                }
                let parts: Vec<String> = m
                    .0
                    .iter()
                    .map(|(p, e)| {
                        if *e == 1 {
                            p.name().to_string()
                        } else {
                            format!("{}^{}", p.name(), e)
                        }
                    })
                    .collect();
                body.push_str(&parts.join("*"));
            }
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        out
    }
}

fn trim(v: &mut Vec<MPoly>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn content(coeffs: &[MPoly]) -> MPoly {
    coeffs.iter().fold(MPoly::zero(), |acc, c| gcd(&acc, c))
}

/// Divides by the content and fixes the scale so that the leading
/// coefficient's leading coefficient is 1.
fn primitive(coeffs: &[MPoly]) -> Vec<MPoly> {
    if coeffs.is_empty() {
        return Vec::new();
    }
    let c = content(coeffs);
    let mut out: Vec<MPoly> = coeffs
        .iter()
        .map(|x| x.div_exact(&c).expect("content divides every coefficient"))
        .collect();
    let lc = out.last().unwrap().leading_coefficient();
    if !lc.is_one() {
        let inv = lc.recip();
        for x in out.iter_mut() {
            *x = x.scale(&inv);
        }
    }
    out
}

fn pseudo_remainder(a: &[MPoly], b: &[MPoly]) -> Vec<MPoly> {
    let lb = b.last().expect("nonzero divisor").clone();
    let mut r = a.to_vec();
    while r.len() >= b.len() && !r.is_empty() {
        let lr = r.last().unwrap().clone();
        let shift = r.len() - b.len();
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &(&lr * bc);
        }
        trim(&mut r);
    }
    r
}

/// Greatest common divisor, normalized to leading coefficient 1.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.as_constant().is_some() || b.as_constant().is_some() {
        return MPoly::one();
    }
    let (ma, mb) = (a.monomial_content(), b.monomial_content());
    let mono = ma.meet(&mb);
    if a.num_terms() == 1 || b.num_terms() == 1 {
        return MPoly::term(mono, Rational::one());
    }
    if !ma.is_one() || !mb.is_one() {
        let g = gcd(&a.div_monomial(&ma), &b.div_monomial(&mb));
        return (&g * &MPoly::term(mono, Rational::one())).monic();
    }
    let mut vars = a.vars();
    vars.extend(b.vars());
    let v = vars.into_iter().next().expect("non-constant input");
    if a.degree_in(&v) == 0 {
        return gcd(a, &content(&b.to_univariate(&v)));
    }
    if b.degree_in(&v) == 0 {
        return gcd(&content(&a.to_univariate(&v)), b);
    }
    let ua = a.to_univariate(&v);
    let ub = b.to_univariate(&v);
    let c = gcd(&content(&ua), &content(&ub));
    let mut pa = primitive(&ua);
    let mut pb = primitive(&ub);
    if pa.len() < pb.len() {
        std::mem::swap(&mut pa, &mut pb);
    }
    while !pb.is_empty() {
        let r = pseudo_remainder(&pa, &pb);
        pa = pb;
        pb = primitive(&r);
    }
    let g = MPoly::from_univariate(&v, &primitive(&pa));
    (&c * &g).monic()
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.insert_add(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.insert_add(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rational::rat;

    fn lam() -> MPoly {
        MPoly::var(Param::new("lambda"))
    }
    fn mu() -> MPoly {
        MPoly::var(Param::new("mu"))
    }
    fn c(n: i64) -> MPoly {
        MPoly::constant(rat(n))
    }

    #[test]
    fn lex_order_prefers_earlier_names() {
        let a = Monomial::var(Param::new("a"), 1);
        let b = Monomial::var(Param::new("b"), 5);
        assert!(a > b);
        assert!(a.mul(&b) > a);
    }

    #[test]
    fn exact_division() {
        let p = &(&c(1) - &lam()) * &(&c(1) + &lam());
        let q = p.div_exact(&(&c(1) - &lam())).unwrap();
        assert_eq!(q, &c(1) + &lam());
        assert!(p.div_exact(&(&c(2) + &lam())).is_none());
    }

    #[test]
    fn univariate_gcd() {
        let a = &(&c(1) - &lam()).pow(2) * &(&c(3) + &lam());
        let b = &(&c(1) - &lam()) * &(&c(1) + &lam());
        assert_eq!(gcd(&a, &b), (&c(1) - &lam()).monic());
    }

    #[test]
    fn bivariate_gcd() {
        let common = &(&lam() * &mu()) - &c(1);
        let a = &common * &(&lam() + &mu());
        let b = &common * &(&lam() - &c(2));
        assert_eq!(gcd(&a, &b), common.monic());
        let coprime = gcd(&(&lam() + &mu()), &(&lam() - &mu()));
        assert!(coprime.is_one());
    }

    #[test]
    fn gcd_with_constant_content() {
        let a = (&lam() - &c(1)).scale(&rat(6));
        let b = (&lam() - &c(1)).scale(&rat(4));
        assert_eq!(gcd(&a, &b), &lam() - &c(1));
    }

    #[test]
    fn render_ascending() {
        let p = &(&c(1) - &lam()).pow(2) * &c(1);
        assert_eq!(p.render(), "1-2*lambda+lambda^2");
    }
}
