//! Rational functions in `q` with a factored denominator.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::laurent::LaurentQ;
use crate::algebra_core::kclass::is_atomic;
use crate::algebra_core::rational::binomial;
use crate::algebra_core::{Algebra, KClass, Rational};
use crate::error::{Error, Result};

/// The denominator factor `1 - c q^m` with `m > 0` and `c` invertible.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Factor {
    m: i64,
    c: KClass,
}

impl Factor {
    pub fn c(&self) -> &KClass {
        &self.c
    }

    pub fn m(&self) -> i64 {
        self.m
    }

    pub fn as_laurent(&self) -> LaurentQ {
        LaurentQ::one_minus(&self.c, self.m)
    }

    fn render(&self) -> String {
        let mut t = super::laurent::render_term(&self.c, self.m);
        if t.starts_with('-') {
            t.remove(0);
            format!("1+{t}")
        } else {
            format!("1-{t}")
        }
    }
}

/// `num / prod (1 - c_i q^{m_i})^{e_i}`.
#[derive(Clone, Debug)]
pub struct QRat {
    num: LaurentQ,
    den: BTreeMap<Factor, u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Point {
    Zero,
    Infinity,
}

impl QRat {
    pub fn zero(n: usize) -> Self {
        QRat::from_laurent(LaurentQ::zero(n))
    }

    pub fn one(n: usize) -> Self {
        QRat::from_laurent(LaurentQ::one(n))
    }

    pub fn constant(c: KClass) -> Self {
        QRat::from_laurent(LaurentQ::constant(c))
    }

    pub fn monomial(c: KClass, e: i64) -> Self {
        QRat::from_laurent(LaurentQ::monomial(c, e))
    }

    pub fn q_pow(n: usize, e: i64) -> Self {
        QRat::from_laurent(LaurentQ::q_pow(n, e))
    }

    pub fn from_laurent(num: LaurentQ) -> Self {
        QRat {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `num / prod (1 - c q^m)^e` for arbitrary nonzero `m`.
    pub fn new(num: LaurentQ, factors: &[(KClass, i64, u32)]) -> Result<Self> {
        let mut out = QRat::from_laurent(num);
        for (c, m, e) in factors {
            out = &out * &QRat::inv_one_minus(c, *m, *e)?;
        }
        Ok(out)
    }

    /// `1 / (1 - c q^m)^e`.
    pub fn inv_one_minus(c: &KClass, m: i64, e: u32) -> Result<Self> {
        let n = c.rank();
        if e == 0 {
            return Ok(QRat::one(n));
        }
        if m == 0 {
            let base = (&KClass::one(n) - c).inverse()?;
            return Ok(QRat::constant(base.pow_u(e)));
        }
        let c_inv = c
            .inverse()
            .map_err(|_| Error::NotInvertible(format!("1-({})*q^{m}", c.render())))?;
        if m > 0 {
            let mut den = BTreeMap::new();
            den.insert(Factor { m, c: c.clone() }, e);
            return Ok(QRat {
                num: LaurentQ::one(n),
                den,
            });
        }
        // 1/(1 - c q^{-M}) = -c^{-1} q^M / (1 - c^{-1} q^M)
        let big_m = -m;
        let mut den = BTreeMap::new();
        den.insert(
            Factor {
                m: big_m,
                c: c_inv.clone(),
            },
            e,
        );
        let num = LaurentQ::monomial((-&c_inv).pow_u(e), big_m * e as i64);
        Ok(QRat { num, den })
    }

    pub fn rank(&self) -> usize {
        self.num.rank()
    }

    pub fn numerator(&self) -> &LaurentQ {
        &self.num
    }

    pub fn factors(&self) -> impl Iterator<Item = (&Factor, u32)> {
        self.den.iter().map(|(f, e)| (f, *e))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The Laurent polynomial if the denominator is trivial.
    pub fn as_laurent(&self) -> Option<&LaurentQ> {
        self.den.is_empty().then_some(&self.num)
    }

    /// Denominator degree in `q`.
    fn den_degree(&self) -> i64 {
        self.den.iter().map(|(f, e)| f.m * *e as i64).sum()
    }

    fn den_laurent(den: &BTreeMap<Factor, u32>, n: usize) -> LaurentQ {
        den.iter().fold(LaurentQ::one(n), |acc, (f, e)| {
            &acc * &f.as_laurent().pow_u(*e)
        })
    }

    /// The multipliers taking each denominator to their least common multiple.
    fn common(a: &QRat, b: &QRat) -> (BTreeMap<Factor, u32>, LaurentQ, LaurentQ) {
        let n = a.rank();
        let mut lcm = a.den.clone();
        for (f, e) in &b.den {
            let slot = lcm.entry(f.clone()).or_insert(0);
            *slot = (*slot).max(*e);
        }
        let missing = |d: &BTreeMap<Factor, u32>| {
            let rest: BTreeMap<Factor, u32> = lcm
                .iter()
                .filter_map(|(f, e)| {
                    let have = d.get(f).copied().unwrap_or(0);
                    (*e > have).then(|| (f.clone(), e - have))
                })
                .collect();
            QRat::den_laurent(&rest, n)
        };
        let ma = missing(&a.den);
        let mb = missing(&b.den);
        (lcm, ma, mb)
    }

    pub fn scale(&self, c: &KClass) -> QRat {
        QRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> QRat {
        QRat {
            num: self.num.scale_rational(r),
            den: self.den.clone(),
        }
    }

    pub fn pow_u(&self, k: u32) -> QRat {
        let mut acc = QRat::one(self.rank());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Inverse when the numerator is a unit times `q^i` times factors of the
    /// form `1 - c q^m` with `c` invertible; numerators with up to two terms are recognized.
    pub fn try_inverse(&self) -> Result<QRat> {
        let n = self.rank();
        let den_poly = QRat::den_laurent(&self.den, n);
        let terms: Vec<(i64, KClass)> = self.num.terms().map(|(e, c)| (*e, c.clone())).collect();
        match terms.as_slice() {
            [] => Err(Error::DivisionByZero),
            [(i, a)] => {
                let a_inv = a.inverse()?;
                Ok(QRat::from_laurent(den_poly.scale(&a_inv).shift(-i)))
            }
            [(i, a), (j, b)] => {
                // a q^i + b q^j = a q^i (1 - c q^{j-i}), c = -b/a
                let (lead, e0, other) = if a.is_invertible() {
                    (a, *i, (b, *j - *i))
                } else if b.is_invertible() {
                    (b, *j, (a, *i - *j))
                } else {
                    return Err(Error::NotInvertible(self.render()));
                };
                let lead_inv = lead.inverse()?;
                let c = -&(other.0 * &lead_inv);
                let base = QRat::inv_one_minus(&c, other.1, 1)?;
                Ok(&base.scale(&lead_inv) * &QRat::from_laurent(den_poly.shift(-e0)))
            }
            _ => Err(Error::NotInvertible(self.render())),
        }
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(&self) -> QRat {
        let mut num = self.num.clone();
        let mut den = BTreeMap::new();
        for (f, e) in &self.den {
            let mut left = *e;
            while left > 0 {
                match num.div_one_minus(&f.c, f.m) {
                    Some(q) => {
                        num = q;
                        left -= 1;
                    }
                    None => break,
                }
            }
            if left > 0 && !num.is_zero() {
                den.insert(f.clone(), left);
            }
        }
        QRat { num, den }
    }

    /// `q -> q^k`.
    pub fn subst_q(&self, k: i64) -> QRat {
        assert!(k != 0, "substitution q -> q^0 is not allowed");
        let mut out = QRat::from_laurent(self.num.subst_q(k));
        for (f, e) in &self.den {
            let g = QRat::inv_one_minus(&f.c, f.m * k, *e).expect("factor constants are invertible");
            out = &out * &g;
        }
        out
    }

    /// Adams operation on coefficients, parameters and `q`.
    pub fn adams(&self, k: i64) -> Result<QRat> {
        if k == 0 {
            return Err(Error::ZeroAdamsIndex);
        }
        let mut out = QRat::from_laurent(self.num.adams(k)?);
        for (f, e) in &self.den {
            out = &out * &QRat::inv_one_minus(&f.c.adams(k)?, f.m * k, *e)?;
        }
        Ok(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&KClass) -> Result<KClass>) -> Result<QRat> {
        let mut out = QRat::from_laurent(self.num.map_coeffs(&f)?);
        for (fac, e) in &self.den {
            out = &out * &QRat::inv_one_minus(&f(&fac.c)?, fac.m, *e)?;
        }
        Ok(out)
    }

    /// Substitutes a parameter value; fails when a factor stops being a unit.
    pub fn eval_param(&self, param: &str, value: &Rational) -> Result<QRat> {
        self.map_coeffs(|c| c.eval_param(param, value))
            .map_err(|e| match e {
                Error::NotInvertible(s) => Error::LimitDoesNotExist(s),
                other => other,
            })
    }

    /// Expansion at `q = 0` keeping exponents `<= hi`.
    pub fn expand_zero_upto(&self, hi: i64) -> LaurentQ {
        let n = self.rank();
        let lo = match self.num.min_exp() {
            Some(lo) => lo,
            None => return LaurentQ::zero(n),
        };
        if hi < lo {
            return LaurentQ::zero(n);
        }
        let span = hi - lo;
        let mut acc = self.num.truncate(lo, hi);
        for (f, e) in &self.den {
            // (1 - c q^m)^{-e} = sum_j binom(e+j-1, j) c^j q^{mj}
            let mut series = LaurentQ::zero(n);
            let mut cj = KClass::one(n);
            let mut j = 0i64;
            while f.m * j <= span {
                let coef = cj.scale_rational(&binomial(*e as i64 + j - 1, j as u32));
                series.add_term(f.m * j, &coef);
                cj = &cj * &f.c;
                j += 1;
            }
            acc = (&acc * &series).truncate(lo, hi);
        }
        acc
    }

    /// Expansion at `q = infinity` keeping exponents `>= lo`.
    pub fn expand_inf_downto(&self, lo: i64) -> LaurentQ {
        self.subst_q(-1).expand_zero_upto(-lo).subst_q(-1)
    }

    /// Lowest exponent at zero, highest exponent at infinity.
    pub fn leading_exponent(&self, point: Point) -> Option<i64> {
        match point {
            Point::Zero => self.num.min_exp(),
            Point::Infinity => self.num.max_exp().map(|m| m - self.den_degree()),
        }
    }

    /// The first `order` terms of the expansion at `point`.
    pub fn expand_at(&self, point: Point, order: usize) -> LaurentQ {
        let lead = match self.leading_exponent(point) {
            Some(e) => e,
            None => return LaurentQ::zero(self.rank()),
        };
        let span = order as i64 - 1;
        match point {
            Point::Zero => self.expand_zero_upto(lead + span),
            Point::Infinity => self.expand_inf_downto(lead - span),
        }
    }

    /// The Laurent polynomial part `f_+`.
    pub fn project_plus(&self) -> LaurentQ {
        if self.den.is_empty() {
            return self.num.clone();
        }
        &self.expand_zero_upto(-1) + &self.expand_inf_downto(0)
    }

    /// `f - f_+`.
    pub fn project_minus(&self) -> QRat {
        (self - &QRat::from_laurent(self.project_plus())).reduce()
    }

    /// `b_0 - a_0`, the `q^0` coefficient at infinity minus the one at zero.
    pub fn residue_bracket(&self) -> KClass {
        if self.den.is_empty() {
            return KClass::zero(self.rank());
        }
        let a0 = self.expand_zero_upto(0).coeff(0);
        let b0 = self.expand_inf_downto(0).coeff(0);
        &b0 - &a0
    }

    /// Reduce, substitute `param := 1`, reduce again.
    pub fn limit_at_one(&self, param: &str) -> Result<QRat> {
        let one = Rational::from_integer(1.into());
        Ok(self.reduce().eval_param(param, &one)?.reduce())
    }

    pub fn render(&self) -> String {
        let num = self.num.render();
        if self.den.is_empty() {
            return num;
        }
        let num = if is_atomic(&num) && !num.starts_with('-') {
            num
        } else {
            format!("({num})")
        };
        let parts: Vec<String> = self
            .den
            .iter()
            .map(|(f, e)| {
                if *e == 1 {
                    format!("({})", f.render())
                } else {
                    format!("({})^{e}", f.render())
                }
            })
            .collect();
        if parts.len() == 1 {
            format!("{num}/{}", parts[0])
        } else {
            format!("{num}/({})", parts.join("*"))
        }
    }
}

impl fmt::Display for QRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl PartialEq for QRat {
    fn eq(&self, other: &QRat) -> bool {
        if self.rank() != other.rank() {
            return false;
        }
        if self.den == other.den {
            return self.num == other.num;
        }
        // factors are non-zero-divisors, so cross-multiplication is faithful
        let (_, ma, mb) = QRat::common(self, other);
        &self.num * &ma == &other.num * &mb
    }
}

impl Eq for QRat {}

impl Add for &QRat {
    type Output = QRat;
    fn add(self, rhs: &QRat) -> QRat {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return QRat {
                num: &self.num + &rhs.num,
                den: self.den.clone(),
            };
        }
        let (den, ma, mb) = QRat::common(self, rhs);
        QRat {
            num: &(&self.num * &ma) + &(&rhs.num * &mb),
            den,
        }
    }
}

impl Sub for &QRat {
    type Output = QRat;
    fn sub(self, rhs: &QRat) -> QRat {
        self + &(-rhs)
    }
}

impl Neg for &QRat {
    type Output = QRat;
    fn neg(self) -> QRat {
        QRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QRat {
    type Output = QRat;
    fn mul(self, rhs: &QRat) -> QRat {
        let num = &self.num * &rhs.num;
        if num.is_zero() {
            return QRat::from_laurent(num);
        }
        let mut den = self.den.clone();
        for (f, e) in &rhs.den {
            *den.entry(f.clone()).or_insert(0) += e;
        }
        QRat { num, den }
    }
}

impl Algebra for QRat {
    fn one_like(&self) -> Self {
        QRat::one(self.rank())
    }
    fn is_zero(&self) -> bool {
        QRat::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        QRat::scale_rational(self, r)
    }
    fn is_structurally_nilpotent(&self) -> bool {
        self.num.is_nilpotent()
    }
}
