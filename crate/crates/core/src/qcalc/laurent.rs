//! Laurent polynomials in `q` with K-class coefficients.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra_core::kclass::is_atomic;
use crate::algebra_core::{KClass, Rational};
use crate::error::Result;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LaurentQ {
    n: usize,
    terms: BTreeMap<i64, KClass>,
}

impl LaurentQ {
    pub fn zero(n: usize) -> Self {
        LaurentQ {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(n: usize) -> Self {
        LaurentQ::constant(KClass::one(n))
    }

    pub fn constant(c: KClass) -> Self {
        LaurentQ::monomial(c, 0)
    }

    /// `c * q^e`.
    pub fn monomial(c: KClass, e: i64) -> Self {
        let mut out = LaurentQ::zero(c.rank());
        if !c.is_zero() {
            out.terms.insert(e, c);
        }
        out
    }

    pub fn q_pow(n: usize, e: i64) -> Self {
        LaurentQ::monomial(KClass::one(n), e)
    }

    /// `1 - c q^m`.
    pub fn one_minus(c: &KClass, m: i64) -> Self {
        &LaurentQ::one(c.rank()) - &LaurentQ::monomial(c.clone(), m)
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (i64, KClass)>) -> Self {
        let mut out = LaurentQ::zero(n);
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: i64, c: &KClass) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &KClass)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, e: i64) -> KClass {
        self.terms
            .get(&e)
            .cloned()
            .unwrap_or_else(|| KClass::zero(self.n))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The `q`-free part if there is no other.
    pub fn as_constant(&self) -> Option<KClass> {
        match self.terms.len() {
            0 => Some(KClass::zero(self.n)),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Terms with exponent in `lo..=hi`.
    pub fn truncate(&self, lo: i64, hi: i64) -> LaurentQ {
        LaurentQ {
            n: self.n,
            terms: self
                .terms
                .range(lo..=hi)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &KClass) -> LaurentQ {
        LaurentQ::from_terms(self.n, self.terms.iter().map(|(e, a)| (*e, a * c)))
    }

    pub fn scale_rational(&self, r: &Rational) -> LaurentQ {
        LaurentQ::from_terms(
            self.n,
            self.terms.iter().map(|(e, a)| (*e, a.scale_rational(r))),
        )
    }

    pub fn shift(&self, s: i64) -> LaurentQ {
        LaurentQ {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e + s, c.clone())).collect(),
        }
    }

    pub fn pow_u(&self, k: u32) -> LaurentQ {
        let mut acc = LaurentQ::one(self.n);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `q -> q^k`.
    pub fn subst_q(&self, k: i64) -> LaurentQ {
        assert!(k != 0, "substitution q -> q^0 is not allowed");
        LaurentQ {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (e * k, c.clone())).collect(),
        }
    }

    /// Adams operation on coefficients together with `q -> q^k`.
    pub fn adams(&self, k: i64) -> Result<LaurentQ> {
        let mut out = LaurentQ::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(e * k, &c.adams(k)?);
        }
        Ok(out)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> KClass {
        self.terms
            .values()
            .fold(KClass::zero(self.n), |acc, c| &acc + c)
    }

    pub fn map_coeffs(&self, f: impl Fn(&KClass) -> Result<KClass>) -> Result<LaurentQ> {
        let mut out = LaurentQ::zero(self.n);
        for (e, c) in &self.terms {
            out.add_term(*e, &f(c)?);
        }
        Ok(out)
    }

    pub fn eval_param(&self, param: &str, value: &Rational) -> Result<LaurentQ> {
        self.map_coeffs(|c| c.eval_param(param, value))
    }

    /// Every coefficient lies in the nilpotent ideal.
    pub fn is_nilpotent(&self) -> bool {
        self.terms.values().all(|c| c.is_nilpotent())
    }

    /// Exact quotient by `1 - c q^m` (`m > 0`), if it exists.
    pub fn div_one_minus(&self, c: &KClass, m: i64) -> Option<LaurentQ> {
        assert!(m > 0);
        let (lo, hi) = match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (lo, hi),
            _ => return Some(self.clone()),
        };
        if hi - lo < m {
            return None;
        }
        // N = (1 - c q^m) Q  =>  Q_j = N_j + c Q_{j-m}
        let mut quot: BTreeMap<i64, KClass> = BTreeMap::new();
        for j in lo..=hi - m {
            let mut v = self.coeff(j);
            if let Some(prev) = quot.get(&(j - m)) {
                v = &v + &(c * prev);
            }
            if !v.is_zero() {
                quot.insert(j, v);
            }
        }
        let q = LaurentQ {
            n: self.n,
            terms: quot,
        };
        (&LaurentQ::one_minus(c, m) * &q == *self).then_some(q)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.terms {
            let piece = render_term(c, *e);
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

fn q_str(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "q".into(),
        _ => format!("q^{e}"),
    }
}

/// `c*q^e` with the sign carried in front when possible.
pub(crate) fn render_term(c: &KClass, e: i64) -> String {
    let qs = q_str(e);
    let cs = c.render();
    if qs.is_empty() {
        return if is_atomic(&cs) { cs } else { format!("({cs})") };
    }
    if c.is_one() {
        qs
    } else if (-c).is_one() {
        format!("-{qs}")
    } else if is_atomic(&cs) {
        format!("{cs}*{qs}")
    } else {
        format!("({cs})*{qs}")
    }
}

impl Add for &LaurentQ {
    type Output = LaurentQ;
    fn add(self, rhs: &LaurentQ) -> LaurentQ {
        assert_eq!(self.n, rhs.n, "Laurent polynomials of different rank");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl Sub for &LaurentQ {
    type Output = LaurentQ;
    fn sub(self, rhs: &LaurentQ) -> LaurentQ {
        self + &(-rhs)
    }
}

impl Neg for &LaurentQ {
    type Output = LaurentQ;
    fn neg(self) -> LaurentQ {
        LaurentQ {
            n: self.n,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentQ {
    type Output = LaurentQ;
    fn mul(self, rhs: &LaurentQ) -> LaurentQ {
        assert_eq!(self.n, rhs.n, "Laurent polynomials of different rank");
        let mut out = LaurentQ::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, &(ca * cb));
            }
        }
        out
    }
}
