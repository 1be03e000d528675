//! Normalized rational functions in the equivariant parameters.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::{gcd, MPoly, Param};
use super::rational::Rational;

/// `num / den` with `gcd(num, den) = 1` and `den` of leading coefficient 1.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc {
            num: MPoly::constant(c),
            den: MPoly::one(),
        }
    }

    pub fn poly(p: MPoly) -> Self {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn param(p: &Param) -> Self {
        RatFunc::poly(MPoly::var(p.clone()))
    }

    /// Builds `num / den`; `None` if `den` is zero.
    pub fn new(num: MPoly, den: MPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        Some(Self::normalized(num, den))
    }

    fn normalized(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if let Some(c) = den.as_constant() {
            return RatFunc {
                num: num.scale(&c.recip()),
                den: MPoly::one(),
            };
        }
        let (num, den) = if num.as_constant().is_some() {
            (num, den)
        } else {
            let g = gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g).expect("gcd divides numerator"),
                    den.div_exact(&g).expect("gcd divides denominator"),
                )
            }
        };
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Assumes `num` and `den` are coprime.
    fn with_monic_den(num: MPoly, den: &MPoly) -> Self {
        let lc = den.leading_coefficient();
        if lc.is_one() {
            RatFunc { num, den: den.clone() }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn inverse(&self) -> Option<RatFunc> {
        if self.is_zero() {
            return None;
        }
        Some(Self::normalized(self.den.clone(), self.num.clone()))
    }

    pub fn scale(&self, c: &Rational) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero();
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn vars(&self) -> std::collections::BTreeSet<Param> {
        let mut v = self.num.vars();
        v.extend(self.den.vars());
        v
    }

    /// Substitutes `p := value`; `None` if the denominator vanishes there.
    pub fn eval_param(&self, p: &Param, value: &Rational) -> Option<RatFunc> {
        let num = self.num.eval_param(p, value);
        let den = self.den.eval_param(p, value);
        RatFunc::new(num, den)
    }

    /// The substitution `p -> p^k` for every parameter (the Adams action).
    pub fn adams(&self, k: i64) -> RatFunc {
        assert!(k != 0, "Adams index must be nonzero");
        if k == 1 || self.vars().is_empty() {
            return self.clone();
        }
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        let ku = k.unsigned_abs() as u32;
        for p in self.vars() {
            if k > 0 {
                num = num.map_exponent(&p, |e| e * ku);
                den = den.map_exponent(&p, |e| e * ku);
            } else {
                let top = num.degree_in(&p).max(den.degree_in(&p));
                num = num.map_exponent(&p, |e| (top - e) * ku);
                den = den.map_exponent(&p, |e| (top - e) * ku);
            }
        }
        Self::normalized(num, den)
    }

    pub fn render(&self) -> String {
        if self.den.is_one() {
            self.num.render()
        } else {
            let n = self.num.render();
            let n = if self.num.num_terms() > 1 || n.starts_with('-') {
                format!("({n})")
            } else {
                n
            };
            let d = self.den.render();
            let d = if self.den.num_terms() > 1 || d.contains('*') || d.contains('^') {
                format!("({d})")
            } else {
                d
            };
            format!("{n}/{d}")
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return RatFunc::poly(num);
            }
            return RatFunc::normalized(num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (da, db) = (quo(&self.den, &g), quo(&rhs.den, &g));
        let num = &(&self.num * &db) + &(&rhs.num * &da);
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = gcd(&num, &g);
        RatFunc::with_monic_den(quo(&num, &h), &quo(&(&self.den * &db), &h))
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::poly(&self.num * &rhs.num);
        }
        let g1 = gcd(&self.num, &rhs.den);
        let g2 = gcd(&rhs.num, &self.den);
        let num = &quo(&self.num, &g1) * &quo(&rhs.num, &g2);
        let den = &quo(&self.den, &g2) * &quo(&rhs.den, &g1);
        RatFunc::with_monic_den(num, &den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

fn quo(a: &MPoly, b: &MPoly) -> MPoly {
    if b.is_one() {
        return a.clone();
    }
    a.div_exact(b).expect("exact division by a gcd")
}
