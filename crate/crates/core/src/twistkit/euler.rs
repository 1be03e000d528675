//! Truncated Euler-product expansions.

use crate::algebra_core::{ratio, series_exp, TruncatedSeries};
use crate::error::Result;

/// `prod_{l=0}^{S} (1 - u t^l)` modulo `(u^{M+1}, t^{S+1})`.
pub fn euler_product(big_m: u32, s: u32) -> TruncatedSeries {
    let vars = ["u", "t"];
    let orders = [big_m + 1, s + 1];
    let one = TruncatedSeries::one(&vars, &orders);
    let mut acc = one.clone();
    for l in 0..=s {
        let term = one.monomial_like(&[1, l], ratio(1, 1));
        acc = &acc * &(&one - &term);
    }
    acc
}

/// `exp(-sum_{m=1}^{M} u^m / (m (1 - t^m)))` with geometric expansion of `1/(1 - t^m)`.
pub fn euler_exponential(big_m: u32, s: u32) -> Result<TruncatedSeries> {
    let vars = ["u", "t"];
    let orders = [big_m + 1, s + 1];
    let zero = TruncatedSeries::zero(&vars, &orders);
    let mut expo = zero.clone();
    for m in 1..=big_m {
        let mut j = 0;
        while m * j <= s {
            expo = &expo + &zero.monomial_like(&[m, m * j], ratio(-1, m as i64));
            j += 1;
        }
    }
    series_exp(&expo)
}

pub fn euler_product_check(big_m: u32, s: u32) -> Result<bool> {
    Ok(euler_product(big_m, s) == euler_exponential(big_m, s)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        for m in 0..=4 {
            for s in 0..=4 {
                assert!(euler_product_check(m, s).unwrap(), "M={m} S={s}");
            }
        }
        // (1 - u)(1 - u t) mod t^2, u^3: 1 - u - u t + u^2 t
        let p = euler_product(2, 1);
        assert_eq!(p.render(), "1-u-u*t+u^2*t");
    }
}
