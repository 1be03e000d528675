//! Cohomological oracle: `chi = int td(T) ch(W)` on `CP^{n-1}`.

use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::algebra_core::{rat, KClass, Rational};
use crate::error::{Error, Result};

/// A polynomial in the hyperplane class `h` modulo `h^n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohClass {
    coeffs: Vec<Rational>,
}

impl CohClass {
    pub fn zero(n: usize) -> Self {
        CohClass {
            coeffs: vec![Rational::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        let mut c = CohClass::zero(n);
        c.coeffs[0] = Rational::one();
        c
    }

    pub fn from_coeffs(n: usize, cs: &[Rational]) -> Self {
        let mut c = CohClass::zero(n);
        for (i, v) in cs.iter().enumerate().take(n) {
            c.coeffs[i] = v.clone();
        }
        c
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &Rational {
        &self.coeffs[i]
    }

    pub fn scale(&self, r: &Rational) -> Self {
        CohClass {
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(CohClass::one(self.rank()), |acc, _| &acc * self)
    }

    /// `exp(c h)` truncated.
    pub fn exp_h(n: usize, c: &Rational) -> Self {
        let mut out = CohClass::zero(n);
        let mut term = Rational::one();
        for i in 0..n {
            out.coeffs[i] = term.clone();
            term = term * c / rat(i as i64 + 1);
        }
        out
    }

    /// Inverse of a class with nonzero constant term.
    pub fn inverse(&self) -> Option<Self> {
        let n = self.rank();
        let c0 = self.coeffs[0].clone();
        if c0.is_zero() {
            return None;
        }
        let mut out = vec![Rational::zero(); n];
        out[0] = c0.recip();
        for i in 1..n {
            let s: Rational = (1..=i).map(|j| &self.coeffs[j] * &out[i - j]).sum();
            out[i] = -s / &c0;
        }
        Some(CohClass { coeffs: out })
    }
}

impl Add for &CohClass {
    type Output = CohClass;
    fn add(self, rhs: &CohClass) -> CohClass {
        CohClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Mul for &CohClass {
    type Output = CohClass;
    fn mul(self, rhs: &CohClass) -> CohClass {
        let n = self.rank();
        let mut out = CohClass::zero(n);
        for i in 0..n {
            for j in 0..n - i {
                out.coeffs[i + j] += &self.coeffs[i] * &rhs.coeffs[j];
            }
        }
        out
    }
}

/// Chern character: `P -> exp(-h)`, so `x = 1 - P -> 1 - exp(-h)`.
pub fn ch(a: &KClass) -> Result<CohClass> {
    let n = a.rank();
    let x = &CohClass::one(n) + &CohClass::exp_h(n, &rat(-1)).scale(&rat(-1));
    let mut out = CohClass::zero(n);
    let mut xa = CohClass::one(n);
    for c in a.coeffs() {
        let c = c.as_rational().ok_or_else(|| {
            Error::InvalidInput(format!(
                "the cohomological oracle needs parameter-free input, got {}",
                c.render()
            ))
        })?;
        out = &out + &xa.scale(&c);
        xa = &xa * &x;
    }
    Ok(out)
}

/// `(h / (1 - exp(-h)))^n`.
pub fn td_tangent(n: usize) -> CohClass {
    // (1 - exp(-h))/h = sum_j (-1)^j h^j/(j+1)!
    let mut s = CohClass::zero(n);
    let mut fact = Rational::one();
    for j in 0..n {
        fact *= rat(j as i64 + 1);
        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        s.coeffs[j] = sign / &fact;
    }
    s.inverse().expect("constant term is 1").pow(n as u32)
}

/// Coefficient of `h^{n-1}` in `td(T) ch(a)`.
pub fn chi_fake(a: &KClass) -> Result<Rational> {
    let n = a.rank();
    Ok((&td_tangent(n) * &ch(a)?).coeff(n - 1).clone())
}
