//! The K-ring of CP^{n-1} over the ground ring, in the basis `x^a`, `x = 1 - P`.

use std::ops::{Add, Mul, Neg, Sub};

use super::rational::{binomial, Rational};
use super::scalar::EqScalar;
use super::Algebra;
use crate::error::{Error, Result};

/// `sum_a c_a x^a` with `x^n = 0`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct KClass {
    coeffs: Vec<EqScalar>,
}

impl KClass {
    pub fn zero(n: usize) -> Self {
        assert!(n >= 1, "target rank must be at least 1");
        KClass {
            coeffs: vec![EqScalar::zero(); n],
        }
    }

    pub fn one(n: usize) -> Self {
        KClass::scalar(n, EqScalar::one())
    }

    pub fn from_i64(n: usize, c: i64) -> Self {
        KClass::scalar(n, EqScalar::from_i64(c))
    }

    pub fn scalar(n: usize, s: EqScalar) -> Self {
        let mut k = KClass::zero(n);
        k.coeffs[0] = s;
        k
    }

    pub fn from_coeffs(coeffs: Vec<EqScalar>) -> Self {
        assert!(!coeffs.is_empty(), "target rank must be at least 1");
        KClass { coeffs }
    }

    /// `x^a` (zero for `a >= n`).
    pub fn x_pow(n: usize, a: usize) -> Self {
        let mut k = KClass::zero(n);
        if a < n {
            k.coeffs[a] = EqScalar::one();
        }
        k
    }

    /// The Hopf class `P = 1 - x`.
    pub fn hopf(n: usize) -> Self {
        KClass::hopf_pow(n, 1)
    }

    /// `P^j = (1 - x)^j` for any integer `j`, via the binomial series.
    pub fn hopf_pow(n: usize, j: i64) -> Self {
        let coeffs = (0..n)
            .map(|a| {
                let c = binomial(j, a as u32);
                let c = if a % 2 == 1 { -c } else { c };
                EqScalar::rational(c)
            })
            .collect();
        KClass { coeffs }
    }

    /// The line class `s * P^j` for a scalar weight `s`.
    pub fn line(n: usize, j: i64, weight: EqScalar) -> Self {
        KClass::hopf_pow(n, j).scale(&weight)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[EqScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, a: usize) -> &EqScalar {
        &self.coeffs[a]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The scalar if the class is a multiple of 1.
    pub fn as_scalar(&self) -> Option<&EqScalar> {
        self.coeffs[1..]
            .iter()
            .all(|c| c.is_zero())
            .then(|| &self.coeffs[0])
    }

    pub fn is_invertible(&self) -> bool {
        self.coeffs[0].is_invertible()
    }

    /// True when the class lies in the nilpotent ideal `(x, markers)`.
    pub fn is_nilpotent(&self) -> bool {
        self.coeffs[0].is_nilpotent()
    }

    /// Every coefficient is a multiple of the nilpotent markers.
    pub fn is_marker_multiple(&self) -> bool {
        self.coeffs.iter().all(|c| c.unit_part().is_zero())
    }

    pub fn scale(&self, s: &EqScalar) -> KClass {
        KClass {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn scale_rational(&self, r: &Rational) -> KClass {
        KClass {
            coeffs: self.coeffs.iter().map(|c| c.scale(r)).collect(),
        }
    }

    fn check_rank(&self, other: &KClass) {
        assert_eq!(
            self.rank(),
            other.rank(),
            "K-classes of different target rank"
        );
    }

    pub fn inverse(&self) -> Result<KClass> {
        let n = self.rank();
        let c0_inv = self.coeffs[0]
            .inverse()
            .map_err(|_| Error::NotInvertible(self.render()))?;
        // a = c0 (1 + y), y nilpotent
        let y = &self.scale(&c0_inv) - &KClass::one(n);
        let minus_y = -&y;
        let mut sum = KClass::one(n);
        let mut term = KClass::one(n);
        loop {
            term = &term * &minus_y;
            if term.is_zero() {
                break;
            }
            sum = &sum + &term;
        }
        Ok(sum.scale(&c0_inv))
    }

    pub fn pow_u(&self, e: u32) -> KClass {
        let mut acc = KClass::one(self.rank());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn pow(&self, e: i64) -> Result<KClass> {
        if e >= 0 {
            Ok(self.pow_u(e as u32))
        } else {
            Ok(self.inverse()?.pow_u(e.unsigned_abs() as u32))
        }
    }

    /// Adams operation: `P -> P^k`, parameters `p -> p^k`, markers fixed.
    pub fn adams(&self, k: i64) -> Result<KClass> {
        if k == 0 {
            return Err(Error::ZeroAdamsIndex);
        }
        if k == 1 {
            return Ok(self.clone());
        }
        let n = self.rank();
        let psi_x = &KClass::one(n) - &KClass::hopf_pow(n, k);
        // Horner in psi_x
        let mut acc = KClass::zero(n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &psi_x) + &KClass::scalar(n, c.adams(k)?);
        }
        Ok(acc)
    }

    /// Euler characteristic: every `x^a` (a < n) is a linear subspace class with chi = 1.
    pub fn chi(&self) -> EqScalar {
        self.coeffs
            .iter()
            .fold(EqScalar::zero(), |acc, c| &acc + c)
    }

    pub fn eval_param(&self, param: &str, value: &Rational) -> Result<KClass> {
        Ok(KClass {
            coeffs: self
                .coeffs
                .iter()
                .map(|c| c.eval_param(param, value))
                .collect::<Result<_>>()?,
        })
    }

    pub fn map_scalars(&self, f: impl Fn(&EqScalar) -> EqScalar) -> KClass {
        KClass {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }

    /// Recognizes `s * P^j` for small `|j|`, returning `(s, j)`.
    pub fn as_line_multiple(&self) -> Option<(EqScalar, i64)> {
        let n = self.rank();
        if n == 1 {
            return Some((self.coeffs[0].clone(), 0));
        }
        let s = self.coeffs[0].clone();
        if s.is_zero() {
            return None;
        }
        let bound = 2 * n as i64 + 2;
        let mut js = vec![0i64];
        for j in 1..=bound {
            js.push(j);
            js.push(-j);
        }
        js.into_iter()
            .find(|&j| KClass::hopf_pow(n, j).scale(&s) == *self)
            .map(|j| (s, j))
    }

    pub fn render(&self) -> String {
        if let Some((s, j)) = self.as_line_multiple() {
            return render_line(&s, j);
        }
        let mut out = String::new();
        for (a, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let xs = match a {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{a}"),
            };
            let cs = c.render();
            let piece = if xs.is_empty() {
                if is_atomic(&cs) {
                    cs
                } else {
                    format!("({cs})")
                }
            } else if c.is_one() {
                xs
            } else if (-c).is_one() {
                format!("-{xs}")
            } else if is_atomic(&cs) && !cs.contains('/') {
                format!("{cs}*{xs}")
            } else {
                format!("({cs})*{xs}")
            };
            if !out.is_empty() && !piece.starts_with('-') {
                out.push('+');
            }
            out.push_str(&piece);
        }
        if out.is_empty() {
            "0".to_string()
        } else {
            out
        }
    }
}

fn render_line(s: &EqScalar, j: i64) -> String {
    let ps = match j {
        0 => String::new(),
        1 => "P".to_string(),
        _ => format!("P^{j}"),
    };
    let cs = s.render();
    if ps.is_empty() {
        return cs;
    }
    if s.is_one() {
        ps
    } else if (-s).is_one() {
        format!("-{ps}")
    } else if is_atomic(&cs) && !cs.contains('/') {
        format!("{cs}*{ps}")
    } else {
        format!("({cs})*{ps}")
    }
}

/// No top-level `+` or binary `-`.
pub(crate) fn is_atomic(s: &str) -> bool {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            '+' if depth == 0 => return false,
            '-' if depth == 0 && i > 0 => {
                let prev = s[..i].chars().last().unwrap();
                if prev != '^' {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

impl Add for &KClass {
    type Output = KClass;
    fn add(self, rhs: &KClass) -> KClass {
        self.check_rank(rhs);
        KClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &KClass {
    type Output = KClass;
    fn sub(self, rhs: &KClass) -> KClass {
        self.check_rank(rhs);
        KClass {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &KClass {
    type Output = KClass;
    fn mul(self, rhs: &KClass) -> KClass {
        self.check_rank(rhs);
        let n = self.rank();
        let mut coeffs = vec![EqScalar::zero(); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..n - i].iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        KClass { coeffs }
    }
}

impl Neg for &KClass {
    type Output = KClass;
    fn neg(self) -> KClass {
        KClass {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Algebra for KClass {
    fn one_like(&self) -> Self {
        KClass::one(self.rank())
    }
    fn is_zero(&self) -> bool {
        KClass::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_rational(&self, r: &Rational) -> Self {
        KClass::scale_rational(self, r)
    }
    fn is_structurally_nilpotent(&self) -> bool {
        self.is_nilpotent()
    }
}

/// `Psi^k(a)`.
pub fn adams(k: i64, a: &KClass) -> Result<KClass> {
    a.adams(k)
}

/// `prod_i (1 - L_i^{-1})` over invertible line classes.
pub fn euler_class(n: usize, lines: &[KClass]) -> Result<KClass> {
    let mut acc = KClass::one(n);
    for l in lines {
        if l.rank() != n {
            return Err(Error::RankMismatch(n, l.rank()));
        }
        let inv = l.inverse()?;
        acc = &acc * &(&KClass::one(n) - &inv);
    }
    Ok(acc)
}

pub fn chi(a: &KClass) -> EqScalar {
    a.chi()
}

/// `chi(a b Delta)`.
pub fn pair_twisted(a: &KClass, b: &KClass, delta: &KClass) -> EqScalar {
    (&(a * b) * delta).chi()
}

/// The basis dual to `basis` under the undeformed pairing `chi(a b)`.
pub fn dual_basis(basis: &[KClass]) -> Result<Vec<KClass>> {
    let n = basis.first().map(|b| b.rank()).unwrap_or(0);
    if n == 0 || basis.len() != n {
        return Err(Error::InvalidInput(format!(
            "a basis of the rank-{n} K-ring needs {n} elements, got {}",
            basis.len()
        )));
    }
    if let Some(b) = basis.iter().find(|b| b.rank() != n) {
        return Err(Error::RankMismatch(n, b.rank()));
    }
    let gram: Vec<Vec<EqScalar>> = basis
        .iter()
        .map(|a| basis.iter().map(|b| (a * b).chi()).collect())
        .collect();
    let inv = invert_matrix(gram)?;
    // phi^b = sum_c (G^{-1})_{b c} phi_c
    Ok(inv
        .iter()
        .map(|row| {
            row.iter()
                .zip(basis)
                .fold(KClass::zero(n), |acc, (c, phi)| &acc + &phi.scale(c))
        })
        .collect())
}

/// Gauss-Jordan inversion over the ground ring; pivots must be units.
fn invert_matrix(mut m: Vec<Vec<EqScalar>>) -> Result<Vec<Vec<EqScalar>>> {
    let n = m.len();
    let mut inv: Vec<Vec<EqScalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { EqScalar::one() } else { EqScalar::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| m[r][col].is_invertible())
            .ok_or(Error::SingularGram)?;
        m.swap(col, pivot);
        inv.swap(col, pivot);
        let p_inv = m[col][col].inverse()?;
        for j in 0..n {
            m[col][j] = &m[col][j] * &p_inv;
            inv[col][j] = &inv[col][j] * &p_inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for j in 0..n {
                let a = &m[col][j] * &f;
                m[r][j] = &m[r][j] - &a;
                let b = &inv[col][j] * &f;
                inv[r][j] = &inv[r][j] - &b;
            }
        }
    }
    Ok(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::rational::rat;
    use crate::algebra_core::scalar::Marker;

    fn p(n: usize) -> KClass {
        KClass::hopf(n)
    }

    #[test]
    fn adams_on_line() {
        assert_eq!(p(3).adams(2).unwrap(), p(3).pow_u(2));
        // Psi^{-1}(P) = 2 - P for n = 2
        assert_eq!(
            p(2).adams(-1).unwrap(),
            &KClass::from_i64(2, 2) - &p(2)
        );
        let lam = EqScalar::param("lambda");
        let lp = p(4).scale(&lam);
        assert_eq!(
            lp.adams(3).unwrap(),
            p(4).pow_u(3).scale(&lam.pow_u(3))
        );
        assert_eq!(p(2).adams(0), Err(Error::ZeroAdamsIndex));
    }

    #[test]
    fn euler_class_examples() {
        assert!(euler_class(3, &[KClass::one(3)]).unwrap().is_zero());
        assert_eq!(
            euler_class(2, &[p(2)]).unwrap(),
            &p(2) - &KClass::one(2)
        );
        let lam = KClass::scalar(1, EqScalar::param("lambda"));
        let expected = &KClass::one(1) - &lam.inverse().unwrap();
        assert_eq!(euler_class(1, &[lam]).unwrap(), expected);
        assert!(euler_class(2, &[KClass::x_pow(2, 1)]).is_err());
    }

    #[test]
    fn chi_examples() {
        for n in 1..6 {
            assert!(KClass::one(n).chi().is_one());
        }
        assert_eq!(KClass::hopf_pow(3, -1).chi(), EqScalar::from_i64(3));
        assert!(p(2).chi().is_zero());
    }

    #[test]
    fn pairing_examples() {
        let one = KClass::one(2);
        assert_eq!(
            pair_twisted(&one, &one, &KClass::hopf_pow(2, -1)),
            EqScalar::from_i64(2)
        );
        assert!(pair_twisted(&one, &one, &one).is_one());
        // Delta = (1 - lambda)/(1 - lambda P^{-1})^2
        let lam = EqScalar::param("lambda");
        let n = 2;
        let base = &KClass::one(n) - &KClass::hopf_pow(n, -1).scale(&lam);
        let delta = &KClass::scalar(n, &EqScalar::one() - &lam) * &base.pow(-2).unwrap();
        // (1 - lambda P^{-1}) = (1 - lambda) - lambda x, squared inverse:
        // (1-lambda)^{-2} (1 + 2 lambda x/(1-lambda)), chi = (1+lambda)/(1-lambda)^2
        let got = pair_twisted(&one, &one, &delta);
        let oml = &EqScalar::one() - &lam;
        let expected = &(&EqScalar::one() + &lam) * &oml.pow(-2).unwrap();
        assert_eq!(got, expected);
    }

    #[test]
    fn dual_basis_examples() {
        let b2 = vec![KClass::one(2), KClass::x_pow(2, 1)];
        let d2 = dual_basis(&b2).unwrap();
        assert_eq!(d2[0], KClass::x_pow(2, 1));
        assert_eq!(d2[1], &KClass::one(2) - &KClass::x_pow(2, 1));
        assert_eq!(dual_basis(&[KClass::one(1)]).unwrap(), vec![KClass::one(1)]);
        let b3: Vec<KClass> = (0..3).map(|a| KClass::x_pow(3, a)).collect();
        let d3 = dual_basis(&b3).unwrap();
        for (i, a) in b3.iter().enumerate() {
            for (j, b) in d3.iter().enumerate() {
                let v = (a * b).chi();
                assert_eq!(v, EqScalar::from_i64((i == j) as i64));
            }
        }
        assert_eq!(dual_basis(&d3).unwrap(), b3);
        assert_eq!(
            dual_basis(&[KClass::one(2), KClass::one(2)]),
            Err(Error::SingularGram)
        );
    }

    #[test]
    fn nilpotent_inverse() {
        let eps = EqScalar::marker(&Marker::new("eps", 1));
        let a = &KClass::from_i64(3, 2) + &p(3).scale(&eps);
        assert!((&a * &a.inverse().unwrap()).is_one());
        assert_eq!(KClass::hopf_pow(3, 2).coeff(2), &EqScalar::rational(rat(1)));
    }

    #[test]
    fn rendering() {
        assert_eq!(p(2).render(), "P");
        assert_eq!(KClass::hopf_pow(3, -1).render(), "P^-1");
        assert_eq!(KClass::x_pow(3, 1).render(), "x");
        let lam = EqScalar::param("lambda");
        assert_eq!(KClass::hopf_pow(2, -1).scale(&lam).render(), "lambda*P^-1");
        assert_eq!((&KClass::x_pow(3, 2) - &KClass::x_pow(3, 1)).render(), "-x+x^2");
    }
}
