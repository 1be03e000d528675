//! Cyclotomic fields `Q(zeta_m)` and the group ring of `Z_r`.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};

use super::rational::{fmt_rational, rat, Rational};

/// Dense polynomial helpers over Q, coefficients ascending.
fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

/// Quotient and remainder by a monic divisor.
fn poly_divrem(a: &[Rational], d: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = d.len() - 1;
    let mut r = trim(a.to_vec());
    if r.len() <= dd {
        return (Vec::new(), r);
    }
    let mut q = vec![Rational::zero(); r.len() - dd];
    while r.len() > dd {
        let shift = r.len() - 1 - dd;
        let c = r.last().unwrap().clone();
        for (j, dj) in d.iter().enumerate() {
            r[shift + j] -= &c * dj;
        }
        q[shift] = c;
        r = trim(r);
    }
    (trim(q), r)
}

fn cache() -> &'static Mutex<HashMap<u32, Arc<Vec<Rational>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Rational>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The cyclotomic polynomial `Phi_m`, ascending coefficients.
pub fn cyclotomic(m: u32) -> Arc<Vec<Rational>> {
    assert!(m >= 1, "conductor must be positive");
    if let Some(p) = cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // z^m - 1 divided by Phi_d for proper divisors d
    let mut p = vec![Rational::zero(); m as usize + 1];
    p[0] = rat(-1);
    p[m as usize] = rat(1);
    for d in (1..m).filter(|d| m.is_multiple_of(*d)) {
        let (q, r) = poly_divrem(&p, &cyclotomic(d));
        debug_assert!(r.is_empty());
        p = q;
    }
    let p = Arc::new(p);
    cache().lock().unwrap().insert(m, p.clone());
    p
}

/// Product of `Phi_d` over the divisors of `m`.
pub fn cyclotomic_divisor_product(m: u32) -> Vec<Rational> {
    (1..=m)
        .filter(|d| m.is_multiple_of(*d))
        .fold(vec![rat(1)], |acc, d| poly_mul(&acc, &cyclotomic(d)))
}

/// An element of `Q(zeta_m)` as a polynomial in `z` reduced modulo `Phi_m`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycloElem {
    m: u32,
    coeffs: Vec<Rational>,
}

impl CycloElem {
    fn reduced(m: u32, coeffs: Vec<Rational>) -> Self {
        let (_, r) = poly_divrem(&coeffs, &cyclotomic(m));
        CycloElem { m, coeffs: r }
    }

    pub fn zero(m: u32) -> Self {
        CycloElem {
            m,
            coeffs: Vec::new(),
        }
    }

    pub fn one(m: u32) -> Self {
        CycloElem::from_rational(m, rat(1))
    }

    pub fn from_rational(m: u32, c: Rational) -> Self {
        CycloElem::reduced(m, vec![c])
    }

    pub fn from_poly(m: u32, coeffs: Vec<Rational>) -> Self {
        CycloElem::reduced(m, coeffs)
    }

    /// `zeta_m^e` for any integer `e`.
    pub fn zeta_pow(m: u32, e: i64) -> Self {
        let e = e.rem_euclid(m as i64) as usize;
        let mut coeffs = vec![Rational::zero(); e + 1];
        coeffs[e] = rat(1);
        CycloElem::reduced(m, coeffs)
    }

    pub fn conductor(&self) -> u32 {
        self.m
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        CycloElem {
            m: self.m,
            coeffs: trim(self.coeffs.iter().map(|x| x * c).collect()),
        }
    }

    /// Degree of the field over Q.
    pub fn field_degree(m: u32) -> usize {
        cyclotomic(m).len() - 1
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let zs = match i {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{i}"),
            };
            let piece = if zs.is_empty() {
                fmt_rational(c)
            } else if c.is_one() {
                zs
            } else if (-c).is_one() {
                format!("-{zs}")
            } else {
                format!("{}*{zs}", fmt_rational(c))
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

    fn check(&self, other: &CycloElem) {
        assert_eq!(self.m, other.m, "cyclotomic conductors differ");
    }
}

impl Add for &CycloElem {
    type Output = CycloElem;
    fn add(self, rhs: &CycloElem) -> CycloElem {
        self.check(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Rational::zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        CycloElem {
            m: self.m,
            coeffs: trim(coeffs),
        }
    }
}

impl Sub for &CycloElem {
    type Output = CycloElem;
    fn sub(self, rhs: &CycloElem) -> CycloElem {
        self + &(-rhs)
    }
}

impl Neg for &CycloElem {
    type Output = CycloElem;
    fn neg(self) -> CycloElem {
        CycloElem {
            m: self.m,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &CycloElem {
    type Output = CycloElem;
    fn mul(self, rhs: &CycloElem) -> CycloElem {
        self.check(rhs);
        CycloElem::reduced(self.m, poly_mul(&self.coeffs, &rhs.coeffs))
    }
}

/// An element of `Q[Z_r] = Q[h]/(h^r - 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycRep {
    r: u32,
    coeffs: Vec<Rational>,
}

impl CycRep {
    pub fn zero(r: u32) -> Self {
        assert!(r >= 1, "cyclic order must be positive");
        CycRep {
            r,
            coeffs: vec![Rational::zero(); r as usize],
        }
    }

    /// `h^e` for any integer `e`.
    pub fn h_pow(r: u32, e: i64) -> Self {
        let mut v = CycRep::zero(r);
        v.coeffs[e.rem_euclid(r as i64) as usize] = rat(1);
        v
    }

    /// The regular representation `1 + h + ... + h^{r-1}`.
    pub fn regular(r: u32) -> Self {
        let mut v = CycRep::zero(r);
        v.coeffs.iter_mut().for_each(|c| *c = rat(1));
        v
    }

    pub fn from_coeffs(r: u32, coeffs: &[Rational]) -> Self {
        let mut v = CycRep::zero(r);
        for (i, c) in coeffs.iter().enumerate() {
            v.coeffs[i % r as usize] += c;
        }
        v
    }

    pub fn order(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `h -> h^k`.
    pub fn adams(&self, k: i64) -> CycRep {
        let mut out = CycRep::zero(self.r);
        for (j, c) in self.coeffs.iter().enumerate() {
            let e = (j as i64 * k).rem_euclid(self.r as i64) as usize;
            out.coeffs[e] += c;
        }
        out
    }

    /// The character at the generator: `h -> zeta_r`.
    pub fn trace_generator(&self) -> CycloElem {
        CycloElem::from_poly(self.r, self.coeffs.clone())
    }
}
