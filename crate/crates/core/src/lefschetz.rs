//! Novikov-truncated series, the small J-function, Lefschetz transforms.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra_core::{EqScalar, KClass};
use crate::error::{Error, Result};
use crate::qcalc::{LaurentQ, QRat};
use crate::twistkit::LineSummand;

/// A curve degree `d = (d_a)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DegreeVec(pub Vec<i64>);

impl DegreeVec {
    pub fn single(d: i64) -> Self {
        DegreeVec(vec![d])
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&d| d >= 0)
    }

    pub fn picard_rank(&self) -> usize {
        self.0.len()
    }

    fn add(&self, other: &DegreeVec) -> DegreeVec {
        DegreeVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn scale(&self, k: i64) -> DegreeVec {
        DegreeVec(self.0.iter().map(|d| d * k).collect())
    }
}

impl fmt::Display for DegreeVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|d| d.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

/// How Adams operations act on Novikov variables.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum NovikovAdams {
    /// `Q^d -> Q^{|k| d}`; `Psi^{-1}` fixes `Q`.
    #[default]
    Scaling,
    /// `Q` is fixed by every `Psi^k`.
    Fixed,
}

/// `sum_d f_d Q^d` over effective degrees of total degree `<= D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NovSeries {
    n: usize,
    picard: usize,
    truncation: i64,
    terms: BTreeMap<DegreeVec, QRat>,
}

impl NovSeries {
    pub fn zero(n: usize, picard: usize, truncation: i64) -> Self {
        NovSeries {
            n,
            picard,
            truncation,
            terms: BTreeMap::new(),
        }
    }

    /// Builds a series, dropping degrees beyond the truncation.
    pub fn from_terms(
        n: usize,
        picard: usize,
        truncation: i64,
        terms: impl IntoIterator<Item = (DegreeVec, QRat)>,
    ) -> Result<Self> {
        let mut out = NovSeries::zero(n, picard, truncation);
        for (d, f) in terms {
            out.insert(d, f)?;
        }
        Ok(out)
    }

    fn insert(&mut self, d: DegreeVec, f: QRat) -> Result<()> {
        if d.picard_rank() != self.picard {
            return Err(Error::InvalidInput(format!(
                "degree {d} has Picard rank {}, expected {}",
                d.picard_rank(),
                self.picard
            )));
        }
        if !d.is_effective() {
            return Err(Error::InvalidInput(format!("degree {d} is not effective")));
        }
        if f.rank() != self.n {
            return Err(Error::RankMismatch(f.rank(), self.n));
        }
        if d.total() > self.truncation {
            return Ok(());
        }
        let v = match self.terms.remove(&d) {
            Some(old) => &old + &f,
            None => f,
        };
        if !v.is_zero() {
            self.terms.insert(d, v);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn picard_rank(&self) -> usize {
        self.picard
    }

    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    pub fn terms(&self) -> impl Iterator<Item = (&DegreeVec, &QRat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, d: &DegreeVec) -> QRat {
        self.terms
            .get(d)
            .cloned()
            .unwrap_or_else(|| QRat::zero(self.n))
    }

    pub fn coeff_at(&self, d: i64) -> QRat {
        self.coeff(&DegreeVec::single(d))
    }

    fn compatible(&self, other: &NovSeries) -> Result<()> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        if self.picard != other.picard {
            return Err(Error::InvalidInput("Picard ranks differ".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &NovSeries) -> Result<NovSeries> {
        self.compatible(other)?;
        let mut out = NovSeries::zero(self.n, self.picard, self.truncation.min(other.truncation));
        for (d, f) in self.terms.iter().chain(&other.terms) {
            out.insert(d.clone(), f.clone())?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &NovSeries) -> Result<NovSeries> {
        self.compatible(other)?;
        let mut out = NovSeries::zero(self.n, self.picard, self.truncation.min(other.truncation));
        for (d1, f1) in &self.terms {
            for (d2, f2) in &other.terms {
                let d = d1.add(d2);
                if d.total() <= out.truncation {
                    out.insert(d, f1 * f2)?;
                }
            }
        }
        Ok(out)
    }

    pub fn map_coeffs(&self, f: impl Fn(&DegreeVec, &QRat) -> Result<QRat>) -> Result<NovSeries> {
        let mut out = NovSeries::zero(self.n, self.picard, self.truncation);
        for (d, v) in &self.terms {
            out.insert(d.clone(), f(d, v)?)?;
        }
        Ok(out)
    }

    pub fn adams(&self, k: i64, convention: NovikovAdams) -> Result<NovSeries> {
        if k == 0 {
            return Err(Error::ZeroAdamsIndex);
        }
        let mut out = NovSeries::zero(self.n, self.picard, self.truncation);
        for (d, v) in &self.terms {
            let d2 = match convention {
                NovikovAdams::Scaling => d.scale(k.abs()),
                NovikovAdams::Fixed => d.clone(),
            };
            out.insert(d2, v.adams(k)?)?;
        }
        Ok(out)
    }

    pub fn reduce(&self) -> NovSeries {
        NovSeries {
            terms: self.terms.iter().map(|(d, f)| (d.clone(), f.reduce())).collect(),
            ..self.clone()
        }
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(d, f)| format!("Q^{d}: {}", f.render()))
            .collect();
        parts.join("\n")
    }
}

fn one_minus_q(n: usize) -> LaurentQ {
    LaurentQ::one_minus(&KClass::one(n), 1)
}

fn positive_rank(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidInput("rank n must be at least 1".into()))
    } else {
        Ok(())
    }
}

fn nonneg_truncation(d: i64) -> Result<()> {
    if d < 0 {
        Err(Error::InvalidInput(format!("truncation must be nonnegative, got {d}")))
    } else {
        Ok(())
    }
}

/// `(1 - q) sum_d Q^d / prod_{l=1}^d (1 - P q^l)^n`.
pub fn j_small(n: usize, big_d: i64) -> Result<NovSeries> {
    positive_rank(n)?;
    nonneg_truncation(big_d)?;
    let p = KClass::hopf(n);
    let mut out = NovSeries::zero(n, 1, big_d);
    for d in 0..=big_d {
        let factors: Vec<(KClass, i64, u32)> = (1..=d).map(|l| (p.clone(), l, n as u32)).collect();
        out.insert(DegreeVec::single(d), QRat::new(one_minus_q(n), &factors)?)?;
    }
    Ok(out)
}

/// `(1 - q) sum_d Q^d prod_{l=0}^{d-1} (1 - lambda P^{-1} q^{-l})^n / prod_{l=1}^d (1 - P q^l)^n`,
/// with the `d = 0` term `1 - q`.
pub fn i_cotangent(n: usize, big_d: i64) -> Result<NovSeries> {
    positive_rank(n)?;
    nonneg_truncation(big_d)?;
    let p = KClass::hopf(n);
    let e = KClass::line(n, -1, EqScalar::param("lambda"));
    let mut out = NovSeries::zero(n, 1, big_d);
    for d in 0..=big_d {
        let mut num = one_minus_q(n);
        for l in 0..d {
            num = &num * &LaurentQ::one_minus(&e, -l).pow_u(n as u32);
        }
        let factors: Vec<(KClass, i64, u32)> = (1..=d).map(|l| (p.clone(), l, n as u32)).collect();
        out.insert(DegreeVec::single(d), QRat::new(num, &factors)?)?;
    }
    Ok(out)
}

/// Which half of the Lefschetz pair to apply.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LefschetzMode {
    Pi,
    Dual,
}

impl LefschetzMode {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "pi" => Some(LefschetzMode::Pi),
            "dual" => Some(LefschetzMode::Dual),
            _ => None,
        }
    }
}

/// `(1 - c q^e)^{mult}` collected as a numerator polynomial and a factor list.
fn apply_multiplicities(
    n: usize,
    mults: &BTreeMap<i64, i64>,
    c: &KClass,
) -> Result<QRat> {
    let mut num = LaurentQ::one(n);
    let mut factors = Vec::new();
    for (&e, &mult) in mults {
        if mult > 0 {
            num = &num * &LaurentQ::one_minus(c, e).pow_u(mult as u32);
        } else if mult < 0 {
            factors.push((c.clone(), e, (-mult) as u32));
        }
    }
    QRat::new(num, &factors).map_err(|err| match err {
        Error::NotInvertible(s) => Error::EquivariantParameterRequired(s),
        other => other,
    })
}

/// The degree-`d` factor of the transform for a single line summand.
pub fn lefschetz_factor(n: usize, line: &LineSummand, d: &DegreeVec, mode: LefschetzMode) -> Result<QRat> {
    if line.m.len() != d.picard_rank() {
        return Err(Error::InvalidInput(format!(
            "line summand has Picard rank {}, degree has {}",
            line.m.len(),
            d.picard_rank()
        )));
    }
    let big_d = line.degree_pairing(&d.0);
    let e = line.class(n)?;
    let mut mults = BTreeMap::new();
    match mode {
        LefschetzMode::Pi => {
            // prod_{l=1}^{D} (1 - E^{-1} q^l), or its literal ratio for D < 0
            let c = e.inverse()?;
            if big_d >= 0 {
                for l in 1..=big_d {
                    *mults.entry(l).or_insert(0) += 1;
                }
            } else {
                for l in big_d + 1..=0 {
                    *mults.entry(l).or_insert(0) -= 1;
                }
            }
            apply_multiplicities(n, &mults, &c)
        }
        LefschetzMode::Dual => {
            // prod_{l=0}^{D-1} (1 - E q^{-l})
            if big_d >= 0 {
                for l in 0..big_d {
                    *mults.entry(-l).or_insert(0) += 1;
                }
            } else {
                for l in big_d..=-1 {
                    *mults.entry(-l).or_insert(0) -= 1;
                }
            }
            apply_multiplicities(n, &mults, &e)
        }
    }
}

/// Multiplies each degree-`d` coefficient by the product of the per-summand factors.
pub fn lefschetz_transform(f: &NovSeries, bundles: &[LineSummand], mode: LefschetzMode) -> Result<NovSeries> {
    f.map_coeffs(|d, v| {
        let mut acc = v.clone();
        for line in bundles {
            acc = &acc * &lefschetz_factor(f.rank(), line, d, mode)?;
        }
        Ok(acc.reduce())
    })
}

/// `n` copies of `lambda P^{-1}`.
pub fn cotangent_bundles(n: usize) -> Vec<LineSummand> {
    (0..n)
        .map(|_| LineSummand::weighted(vec![1], EqScalar::param("lambda")))
        .collect()
}

/// The summand `E^{-1}`.
pub fn dual_summand(line: &LineSummand) -> Result<LineSummand> {
    Ok(LineSummand::weighted(
        line.m.iter().map(|m| -m).collect(),
        line.weight.inverse()?,
    ))
}

/// Both sides of the non-equivariant limit, degree by degree for `d >= 1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct NoneqLimit {
    pub limit: NovSeries,
    pub closed_form: NovSeries,
}

impl NoneqLimit {
    pub fn agrees(&self) -> bool {
        let degrees: std::collections::BTreeSet<&DegreeVec> = self
            .limit
            .terms()
            .map(|(d, _)| d)
            .chain(self.closed_form.terms().map(|(d, _)| d))
            .collect();
        degrees
            .into_iter()
            .all(|d| self.limit.coeff(d) == self.closed_form.coeff(d))
    }
}

/// `(1 - q)(-1)^{n(d-1)} P^{-n(d-1)} q^{-n d(d-1)/2} / (1 - P q^d)^n`.
pub fn noneq_closed_form(n: usize, d: i64) -> Result<QRat> {
    let nn = n as i64;
    let sign = if (nn * (d - 1)).rem_euclid(2) == 0 { 1 } else { -1 };
    let c = KClass::hopf_pow(n, -nn * (d - 1)).scale(&EqScalar::from_i64(sign));
    let num = &one_minus_q(n) * &LaurentQ::monomial(c, -nn * d * (d - 1) / 2);
    QRat::new(num, &[(KClass::hopf(n), d, n as u32)])
}

/// `lim_{lambda -> 1} (I - (1 - q)) / (1 - lambda P^{-1})^n` next to its closed form.
pub fn noneq_limit(n: usize, big_d: i64) -> Result<NoneqLimit> {
    let i = i_cotangent(n, big_d)?;
    let eu = (&KClass::one(n) - &KClass::line(n, -1, EqScalar::param("lambda"))).pow_u(n as u32);
    let eu_inv = eu.inverse()?;
    let mut limit = NovSeries::zero(n, 1, big_d);
    let mut closed = NovSeries::zero(n, 1, big_d);
    for d in 1..=big_d {
        let v = i.coeff_at(d).scale(&eu_inv);
        limit.insert(DegreeVec::single(d), v.limit_at_one("lambda")?)?;
        closed.insert(DegreeVec::single(d), noneq_closed_form(n, d)?)?;
    }
    Ok(NoneqLimit {
        limit,
        closed_form: closed,
    })
}

/// Net multiplicities of `(1 - E q^e)` in
/// `prod_{l<=0}(1 - E q^l) / prod_{l<=-D}(1 - E q^l)` (left) and
/// `prod_{l<D}(1 - E q^{-l}) / prod_{l<0}(1 - E q^{-l})` (right), tails cut at `cutoff`.
fn telescoping_sides(big_d: i64, cutoff: i64) -> (BTreeMap<i64, i64>, BTreeMap<i64, i64>) {
    let bump = |m: &mut BTreeMap<i64, i64>, e: i64, s: i64| {
        let v = m.entry(e).or_insert(0);
        *v += s;
        if *v == 0 {
            m.remove(&e);
        }
    };
    let mut left = BTreeMap::new();
    for l in -cutoff..=0 {
        bump(&mut left, l, 1);
    }
    for l in -cutoff..=-big_d {
        bump(&mut left, l, -1);
    }
    let mut right = BTreeMap::new();
    for l in -cutoff..big_d {
        bump(&mut right, -l, 1);
    }
    for l in -cutoff..0 {
        bump(&mut right, -l, -1);
    }
    (left, right)
}

/// Checks the per-degree telescoping identity for a line monomial `E` and each `D` in range.
pub fn telescoping_check(e: &KClass, d_range: std::ops::RangeInclusive<i64>) -> Result<bool> {
    if e.as_line_multiple().is_none() {
        return Err(Error::InvalidInput(format!(
            "telescoping needs a line monomial, got {}",
            e.render()
        )));
    }
    let n = e.rank();
    for big_d in d_range {
        let (left, right) = telescoping_sides(big_d, big_d.abs() + 2);
        if left != right {
            return Ok(false);
        }
        // both sides as finite products, when they are polynomials
        if left.values().all(|&m| m > 0) {
            let expand = |m: &BTreeMap<i64, i64>| {
                m.iter().fold(LaurentQ::one(n), |acc, (&ex, &mult)| {
                    &acc * &LaurentQ::one_minus(e, ex).pow_u(mult as u32)
                })
            };
            if expand(&left) != expand(&right) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcalc::project_plus;

    fn p(n: usize) -> KClass {
        KClass::hopf(n)
    }

    fn lam_pinv(n: usize) -> KClass {
        KClass::line(n, -1, EqScalar::param("lambda"))
    }

    #[test]
    fn j_examples() {
        let j = j_small(2, 1).unwrap();
        assert_eq!(j.coeff_at(0), QRat::from_laurent(one_minus_q(2)));
        let expect = QRat::new(one_minus_q(2), &[(p(2), 1, 2)]).unwrap();
        assert_eq!(j.coeff_at(1), expect);
        assert_eq!(j.coeff_at(1).render(), "(1-q)/(1-P*q)^2");
        for n in 1..=4 {
            let j = j_small(n, 0).unwrap();
            assert_eq!(j.terms().count(), 1);
            assert_eq!(j.coeff_at(0), QRat::from_laurent(one_minus_q(n)));
        }
        let j = j_small(3, 2).unwrap();
        let expect = QRat::new(one_minus_q(3), &[(p(3), 1, 3), (p(3), 2, 3)]).unwrap();
        assert_eq!(j.coeff_at(2), expect);
    }

    #[test]
    fn j_polarization() {
        for n in 2..=3 {
            let j = j_small(n, 4).unwrap();
            for (d, v) in j.terms() {
                let plus = project_plus(v);
                if d.total() == 0 {
                    assert_eq!(plus, one_minus_q(n));
                } else {
                    assert!(plus.is_zero(), "d={d}");
                }
            }
        }
    }

    #[test]
    fn transform_example() {
        let n = 2;
        let j = j_small(n, 1).unwrap();
        let t = lefschetz_transform(&j, &[LineSummand::new(vec![2])], LefschetzMode::Pi).unwrap();
        let p2 = KClass::hopf_pow(n, 2);
        let num = &(&one_minus_q(n) * &LaurentQ::one_minus(&p2, 1)) * &LaurentQ::one_minus(&p2, 2);
        let expect = QRat::new(num, &[(p(n), 1, 2)]).unwrap();
        assert_eq!(t.coeff_at(1), expect);
        assert_eq!(lefschetz_transform(&j, &[], LefschetzMode::Dual).unwrap(), j);
    }

    #[test]
    fn cotangent_matches_i() {
        for n in 1..=3 {
            let j = j_small(n, 3).unwrap();
            let t = lefschetz_transform(&j, &cotangent_bundles(n), LefschetzMode::Dual).unwrap();
            let i = i_cotangent(n, 3).unwrap();
            for d in 0..=3 {
                assert_eq!(t.coeff_at(d), i.coeff_at(d), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn i_examples() {
        for n in 1..=3 {
            let i = i_cotangent(n, 1).unwrap();
            let num = &one_minus_q(n) * &LaurentQ::one_minus(&lam_pinv(n), 0).pow_u(n as u32);
            assert_eq!(i.coeff_at(1), QRat::new(num, &[(p(n), 1, n as u32)]).unwrap());
            assert_eq!(i_cotangent(n, 0).unwrap().coeff_at(0), QRat::from_laurent(one_minus_q(n)));
        }
        let n = 2;
        let num = &(&one_minus_q(n) * &LaurentQ::one_minus(&lam_pinv(n), 0).pow_u(2))
            * &LaurentQ::one_minus(&lam_pinv(n), -1).pow_u(2);
        let expect = QRat::new(num, &[(p(n), 1, 2), (p(n), 2, 2)]).unwrap();
        assert_eq!(i_cotangent(n, 2).unwrap().coeff_at(2), expect);
    }

    #[test]
    fn noneq_examples() {
        for n in 1..=3 {
            let lim = noneq_limit(n, 3).unwrap();
            let d1 = QRat::new(one_minus_q(n), &[(p(n), 1, n as u32)]).unwrap();
            assert_eq!(lim.limit.coeff_at(1), d1);
            // (1 - q)(-P q)^{-n} / (1 - P q^2)^n
            let c = KClass::hopf_pow(n, -(n as i64)).scale(&EqScalar::from_i64(if n % 2 == 0 { 1 } else { -1 }));
            let num = &one_minus_q(n) * &LaurentQ::monomial(c, -(n as i64));
            let d2 = QRat::new(num, &[(p(n), 2, n as u32)]).unwrap();
            assert_eq!(lim.limit.coeff_at(2), d2);
            assert!(lim.agrees());
        }
        assert!(noneq_limit(2, 4).unwrap().agrees());
    }

    #[test]
    fn telescoping_examples() {
        let n = 3;
        assert!(telescoping_check(&p(n), 0..=0).unwrap());
        let (left, right) = telescoping_sides(1, 3);
        assert_eq!(left, BTreeMap::from([(0, 1)]));
        assert_eq!(right, left);
        assert!(telescoping_check(&p(n), 1..=1).unwrap());
        assert!(telescoping_check(&lam_pinv(n), 3..=3).unwrap());
        assert!(telescoping_check(&lam_pinv(n), -5..=5).unwrap());
        assert!(telescoping_check(&(&p(n) + &KClass::one(n)), 0..=1).is_err());
    }

    #[test]
    fn pi_and_dual_are_inverse() {
        let n = 2;
        let j = j_small(n, 3).unwrap();
        let lines = [
            LineSummand::weighted(vec![1], EqScalar::param("lambda")),
            LineSummand::weighted(vec![2], EqScalar::param("mu")),
        ];
        let duals: Vec<LineSummand> = lines.iter().map(|l| dual_summand(l).unwrap()).collect();
        let there = lefschetz_transform(&j, &lines, LefschetzMode::Pi).unwrap();
        let back = lefschetz_transform(&there, &duals, LefschetzMode::Dual).unwrap();
        for d in 0..=3 {
            assert_eq!(back.coeff_at(d), j.coeff_at(d));
        }
    }

    #[test]
    fn multiplicative_over_concatenation() {
        let n = 2;
        let j = j_small(n, 3).unwrap();
        let a = [LineSummand::weighted(vec![1], EqScalar::param("lambda"))];
        let b = [LineSummand::new(vec![2])];
        for mode in [LefschetzMode::Pi, LefschetzMode::Dual] {
            let both: Vec<LineSummand> = a.iter().chain(&b).cloned().collect();
            let once = lefschetz_transform(&j, &both, mode).unwrap();
            let twice = lefschetz_transform(&lefschetz_transform(&j, &a, mode).unwrap(), &b, mode).unwrap();
            for d in 0..=3 {
                assert_eq!(once.coeff_at(d), twice.coeff_at(d));
            }
        }
    }

    #[test]
    fn novikov_adams() {
        let j = j_small(2, 4).unwrap();
        let a = j.adams(2, NovikovAdams::Scaling).unwrap();
        assert_eq!(a.coeff_at(2), j.coeff_at(1).adams(2).unwrap());
        assert!(a.coeff_at(1).is_zero());
        let b = j.adams(-1, NovikovAdams::Scaling).unwrap();
        assert_eq!(b.coeff_at(1), j.coeff_at(1).adams(-1).unwrap());
        let c = j.adams(2, NovikovAdams::Fixed).unwrap();
        assert_eq!(c.coeff_at(1), j.coeff_at(1).adams(2).unwrap());
    }

    #[test]
    fn series_ring() {
        let j = j_small(2, 3).unwrap();
        let one = NovSeries::from_terms(2, 1, 3, [(DegreeVec::single(0), QRat::one(2))]).unwrap();
        assert_eq!(j.mul(&one).unwrap(), j);
        let s = j.add(&j).unwrap();
        assert_eq!(s.coeff_at(2), &j.coeff_at(2) + &j.coeff_at(2));
        let sq = j.mul(&j).unwrap();
        assert!(sq.terms().all(|(d, _)| d.total() <= 3));
    }
}
