//! Twisting data and split bundle data.

use std::collections::BTreeMap;

use crate::algebra_core::{EqScalar, KClass};
use crate::error::{Error, Result};
use crate::qcalc::LaurentQ;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum TwistMode {
    Finite,
    Infinitesimal,
    /// `E^(k) = E` on the support.
    EulerianPi,
    /// `E^(k) = -F` on the support.
    EulerianDual,
}

impl TwistMode {
    pub fn name(self) -> &'static str {
        match self {
            TwistMode::Finite => "finite",
            TwistMode::Infinitesimal => "infinitesimal",
            TwistMode::EulerianPi => "eulerian_pi",
            TwistMode::EulerianDual => "eulerian_dual",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "finite" => TwistMode::Finite,
            "infinitesimal" => TwistMode::Infinitesimal,
            "eulerian_pi" => TwistMode::EulerianPi,
            "eulerian_dual" => TwistMode::EulerianDual,
            _ => return None,
        })
    }

    pub fn is_eulerian(self) -> bool {
        matches!(self, TwistMode::EulerianPi | TwistMode::EulerianDual)
    }
}

/// Which half of the indices an Eulerian pattern lives on.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Support {
    Negative,
    Positive,
}

impl Support {
    pub fn contains(self, k: i64) -> bool {
        match self {
            Support::Negative => k < 0,
            Support::Positive => k > 0,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Support::Negative => Support::Positive,
            Support::Positive => Support::Negative,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Support::Negative => "negative",
            Support::Positive => "positive",
        }
    }
}

/// A finitely supported `k -> E^(k)`, or an Eulerian pattern on a half-line.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistData {
    n: usize,
    mode: TwistMode,
    entries: BTreeMap<i64, LaurentQ>,
    lines: Vec<KClass>,
    support: Support,
}

impl TwistData {
    pub fn empty(n: usize) -> Self {
        TwistData {
            n,
            mode: TwistMode::Finite,
            entries: BTreeMap::new(),
            lines: Vec::new(),
            support: Support::Negative,
        }
    }

    pub fn finite(n: usize, entries: impl IntoIterator<Item = (i64, LaurentQ)>) -> Result<Self> {
        let mut out = TwistData::empty(n);
        for (k, e) in entries {
            out.insert(k, e)?;
        }
        Ok(out)
    }

    /// Every entry must be a multiple of the nilpotent markers.
    pub fn infinitesimal(
        n: usize,
        entries: impl IntoIterator<Item = (i64, LaurentQ)>,
    ) -> Result<Self> {
        let mut out = TwistData::finite(n, entries)?;
        out.mode = TwistMode::Infinitesimal;
        if let Some((k, _)) = out
            .entries
            .iter()
            .find(|(_, e)| !e.terms().all(|(_, c)| c.is_marker_multiple()))
        {
            return Err(Error::InvalidInput(format!(
                "infinitesimal twisting entry E^({k}) is not a multiple of a nilpotent marker"
            )));
        }
        Ok(out)
    }

    /// `E^(k) = E` for `k < 0`, with `E` the sum of `lines`.
    pub fn eulerian_pi(n: usize, lines: Vec<KClass>) -> Result<Self> {
        TwistData::eulerian(n, TwistMode::EulerianPi, lines)
    }

    /// `E^(k) = -F` for `k < 0`, with `F` the sum of `lines`.
    pub fn eulerian_dual(n: usize, lines: Vec<KClass>) -> Result<Self> {
        TwistData::eulerian(n, TwistMode::EulerianDual, lines)
    }

    fn eulerian(n: usize, mode: TwistMode, lines: Vec<KClass>) -> Result<Self> {
        for l in &lines {
            if l.rank() != n {
                return Err(Error::RankMismatch(n, l.rank()));
            }
            if !l.is_invertible() {
                return Err(Error::NotInvertible(l.render()));
            }
        }
        Ok(TwistData {
            n,
            mode,
            entries: BTreeMap::new(),
            lines,
            support: Support::Negative,
        })
    }

    pub fn with_support(mut self, support: Support) -> Self {
        self.support = support;
        self
    }

    fn insert(&mut self, k: i64, e: LaurentQ) -> Result<()> {
        if k == 0 {
            return Err(Error::InvalidInput("twisting index k = 0".into()));
        }
        if e.rank() != self.n {
            return Err(Error::RankMismatch(self.n, e.rank()));
        }
        if e.is_zero() {
            self.entries.remove(&k);
        } else {
            self.entries.insert(k, e);
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn mode(&self) -> TwistMode {
        self.mode
    }

    pub fn lines(&self) -> &[KClass] {
        &self.lines
    }

    pub fn support(&self) -> Support {
        self.support
    }

    /// Explicit entries (finite and infinitesimal modes).
    pub fn entries(&self) -> impl Iterator<Item = (i64, &LaurentQ)> {
        self.entries.iter().map(|(k, e)| (*k, e))
    }

    /// Sign of the Eulerian pattern.
    pub fn eulerian_sign(&self) -> i64 {
        if self.mode == TwistMode::EulerianDual {
            -1
        } else {
            1
        }
    }

    /// `E^(k)` in any mode.
    pub fn entry(&self, k: i64) -> LaurentQ {
        if self.mode.is_eulerian() {
            if !self.support.contains(k) {
                return LaurentQ::zero(self.n);
            }
            let sum = self.lines.iter().fold(KClass::zero(self.n), |a, l| &a + l);
            let sum = if self.eulerian_sign() < 0 { -&sum } else { sum };
            return LaurentQ::constant(sum);
        }
        self.entries
            .get(&k)
            .cloned()
            .unwrap_or_else(|| LaurentQ::zero(self.n))
    }

    /// Pairs `(k, E^(rk))` with `E^(rk) != 0`, for finite modes.
    pub fn reindexed(&self, r: i64) -> Vec<(i64, &LaurentQ)> {
        self.entries
            .iter()
            .filter(|(k, _)| *k % r == 0)
            .map(|(k, e)| (k / r, e))
            .collect()
    }

    pub(crate) fn require_finite(&self, operation: &'static str) -> Result<()> {
        if self.mode.is_eulerian() {
            Err(Error::UnsupportedMode {
                mode: self.mode.name(),
                operation,
            })
        } else {
            Ok(())
        }
    }

    pub(crate) fn require_infinitesimal(&self, operation: &'static str) -> Result<()> {
        if self.mode == TwistMode::Infinitesimal {
            Ok(())
        } else {
            Err(Error::UnsupportedMode {
                mode: self.mode.name(),
                operation,
            })
        }
    }

    /// `k -> Psi^{-1}(E^(-k))`.
    pub fn serre_dual(&self) -> Result<TwistData> {
        if self.mode.is_eulerian() {
            let lines = self
                .lines
                .iter()
                .map(|l| l.adams(-1))
                .collect::<Result<Vec<_>>>()?;
            return Ok(TwistData {
                n: self.n,
                mode: self.mode,
                entries: BTreeMap::new(),
                lines,
                support: self.support.flip(),
            });
        }
        let mut out = TwistData::empty(self.n);
        out.mode = self.mode;
        for (k, e) in &self.entries {
            out.insert(-k, e.adams(-1)?)?;
        }
        Ok(out)
    }
}

/// A line summand `w * prod_a P_a^{-m_a}` of a split bundle.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineSummand {
    pub m: Vec<i64>,
    pub weight: EqScalar,
}

impl LineSummand {
    pub fn new(m: Vec<i64>) -> Self {
        LineSummand {
            m,
            weight: EqScalar::one(),
        }
    }

    pub fn weighted(m: Vec<i64>, weight: EqScalar) -> Self {
        LineSummand { m, weight }
    }

    /// `D(d) = sum_a m_a d_a`.
    pub fn degree_pairing(&self, d: &[i64]) -> i64 {
        self.m.iter().zip(d).map(|(m, d)| m * d).sum()
    }

    /// The class on `CP^{n-1}` (Picard rank one).
    pub fn class(&self, n: usize) -> Result<KClass> {
        match self.m.as_slice() {
            [m] => Ok(KClass::line(n, -m, self.weight.clone())),
            _ => Err(Error::InvalidInput(format!(
                "line summand of Picard rank {} on a rank-one target",
                self.m.len()
            ))),
        }
    }
}
