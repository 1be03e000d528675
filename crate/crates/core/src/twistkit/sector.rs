//! Sector identities over `Q(zeta_m)` with `p^m = q`.

use std::collections::BTreeMap;

use crate::algebra_core::{ratio, CycloElem, KClass};
use crate::error::{Error, Result};

use super::boxes::box_log;
use super::data::TwistData;

/// Series in `p` with coefficients in `K (x) Q(zeta_m)`, stored over the power basis of `zeta`.
#[derive(Clone, PartialEq, Eq, Debug)]
struct ZetaSeries {
    m: u32,
    n: usize,
    terms: BTreeMap<i64, Vec<KClass>>,
}

impl ZetaSeries {
    fn new(m: u32, n: usize) -> Self {
        ZetaSeries {
            m,
            n,
            terms: BTreeMap::new(),
        }
    }

    /// Adds `c * z * p^e`.
    fn add(&mut self, e: i64, c: &KClass, z: &CycloElem) {
        let dim = CycloElem::field_degree(self.m);
        let slot = self
            .terms
            .entry(e)
            .or_insert_with(|| vec![KClass::zero(self.n); dim]);
        for (i, r) in z.coeffs().iter().enumerate() {
            slot[i] = &slot[i] + &c.scale_rational(r);
        }
    }

    fn normalized(mut self) -> Self {
        self.terms.retain(|_, v| v.iter().any(|c| !c.is_zero()));
        self
    }
}

fn positive(name: &str, v: i64) -> Result<()> {
    if v <= 0 {
        Err(Error::InvalidInput(format!("{name} must be positive, got {v}")))
    } else {
        Ok(())
    }
}

/// `1 + sum_{a'} sum_{l>=1} zeta^{k'a'} q^{rk'(l - a'/m)} = sum_n zeta^{-k'n} p^{rk'n}
/// = 1/(1 - (p^r/zeta)^{k'})`, compared up to `n <= order`.
pub fn sector_geometric_identity(r: i64, m: u32, kp: i64, order: u32) -> Result<bool> {
    positive("r", r)?;
    positive("m", m as i64)?;
    if kp == 0 {
        return Err(Error::InvalidInput("k' must be nonzero".into()));
    }
    let mi = m as i64;
    let order = order as i64;
    // coefficient of p^{rk'n}, indexed by n
    let mut lhs: BTreeMap<i64, CycloElem> = BTreeMap::new();
    let put = |map: &mut BTreeMap<i64, CycloElem>, n: i64, z: CycloElem| {
        let v = map.remove(&n).unwrap_or_else(|| CycloElem::zero(m));
        let v = &v + &z;
        if !v.is_zero() {
            map.insert(n, v);
        }
    };
    put(&mut lhs, 0, CycloElem::one(m));
    let mut l = 1i64;
    while mi * l - (mi - 1) <= order {
        for a in 0..mi {
            // q^{rk'(l - a'/m)} = p^{rk'(ml - a')}
            let n = mi * l - a;
            if n <= order {
                put(&mut lhs, n, CycloElem::zeta_pow(m, kp * a));
            }
        }
        l += 1;
    }
    let mut rhs: BTreeMap<i64, CycloElem> = BTreeMap::new();
    for n in 0..=order {
        put(&mut rhs, n, CycloElem::zeta_pow(m, -kp * n));
    }
    if lhs != rhs {
        return Ok(false);
    }
    // (1 - zeta^{-k'} s) * sum_{n<=order} (zeta^{-k'} s)^n = 1 - (zeta^{-k'} s)^{order+1}
    let c = CycloElem::zeta_pow(m, -kp);
    let mut prod: BTreeMap<i64, CycloElem> = BTreeMap::new();
    for (n, z) in &rhs {
        put(&mut prod, *n, z.clone());
        put(&mut prod, n + 1, -&(&c * z));
    }
    let mut closed: BTreeMap<i64, CycloElem> = BTreeMap::new();
    put(&mut closed, 0, CycloElem::one(m));
    put(&mut closed, order + 1, -&CycloElem::zeta_pow(m, -kp * (order + 1)));
    Ok(prod == closed)
}

/// Exponent of the sector operator built term by term:
/// `sum_k Psi^{rk}(E^(rk))/k * 1/(1 - zeta^{-k} p^{rk})` expanded at `p = 0`.
fn sector_exponent_direct(r: i64, m: u32, data: &TwistData, top: i64) -> Result<ZetaSeries> {
    let mut out = ZetaSeries::new(m, data.rank());
    for (k, e) in data.reindexed(r) {
        let a = e.at_one().adams(r * k)?.scale_rational(&ratio(1, k));
        let big = k.abs();
        if k > 0 {
            let mut n = 0;
            while r * big * n <= top {
                out.add(r * big * n, &a, &CycloElem::zeta_pow(m, -k * n));
                n += 1;
            }
        } else {
            let mut n = 1;
            while r * big * n <= top {
                out.add(r * big * n, &-&a, &CycloElem::zeta_pow(m, -big * n));
                n += 1;
            }
        }
    }
    Ok(out.normalized())
}

/// `Psi^r(X_r(p/zeta))` from the box exponent's expansion at `q = 0`.
fn sector_exponent_from_box(r: i64, m: u32, data: &TwistData, top: i64) -> Result<ZetaSeries> {
    let x = box_log(r, data, true)?;
    let mut out = ZetaSeries::new(m, data.rank());
    let series = x.expand_zero_upto(top.div_euclid(r));
    for (j, c) in series.terms() {
        // q^j -> zeta^{-j} p^j, then Psi^r with zeta fixed
        out.add(r * j, &c.adams(r)?, &CycloElem::zeta_pow(m, -j));
    }
    Ok(out.normalized())
}

/// `Box_r^(zeta)(q) = Psi^r(Box_r(q^{1/m}/zeta))` at the level of exponents,
/// compared through `p`-degree `r * order`.
pub fn sector_box_relation(r: i64, m: u32, data: &TwistData, order: u32) -> Result<bool> {
    positive("r", r)?;
    positive("m", m as i64)?;
    data.require_finite("sector_box_relation")?;
    let top = r * order as i64;
    let lhs = sector_exponent_direct(r, m, data, top)?;
    let rhs = sector_exponent_from_box(r, m, data, top)?;
    Ok(lhs == rhs)
}
