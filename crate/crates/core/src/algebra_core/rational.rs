//! Arbitrary-precision rationals and a few helpers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `n choose k` for any integer `n` and `k >= 0` (generalized binomial).
pub fn binomial(n: i64, k: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..k as i64 {
        acc = acc * rat(n - i) / rat(i + 1);
    }
    acc
}

/// Renders `a` or `a/b` in lowest terms.
pub fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_generalized() {
        assert_eq!(binomial(5, 2), rat(10));
        assert_eq!(binomial(-1, 3), rat(-1));
        assert_eq!(binomial(-2, 2), rat(3));
        assert_eq!(binomial(3, 0), rat(1));
    }

    #[test]
    fn rendering() {
        assert_eq!(fmt_rational(&ratio(6, -4)), "-3/2");
        assert_eq!(fmt_rational(&rat(7)), "7");
    }
}
