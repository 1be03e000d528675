//! Named identity suites with deterministic randomized inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra_core::{rat, CycRep, CycloElem, EqScalar, KClass, Marker};
use crate::error::{Error, Result};
use crate::lefschetz::{
    cotangent_bundles, dual_summand, i_cotangent, j_small, lefschetz_transform, noneq_limit,
    telescoping_check, LefschetzMode,
};
use crate::loopspace::{apply_box, omega_r, LoopPoint, Membership};
use crate::oracle_hrr::chi_fake;
use crate::qcalc::{LaurentQ, QRat};
use crate::twistkit::{
    box_operator, box_symmetry_check, dilaton_vector, euler_product_check, pairing_twist,
    psi_dilaton_check, sector_box_relation, sector_geometric_identity, serre_dual,
    serre_relation_check, LineSummand, Support, TwistData,
};

pub const SUITES: [&str; 10] = [
    "lemma", "box", "serre", "dilaton", "lefschetz", "limit", "hrr", "loopspace", "sector", "qseries",
];

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { seed: 1, samples: 200 }
    }
}

/// Outcome of one identity over a family of cases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl Check {
    fn new(name: &str) -> Self {
        Check {
            name: name.into(),
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, case: impl FnOnce() -> String, outcome: Result<bool>) {
        self.cases += 1;
        match outcome {
            Ok(true) => {}
            Ok(false) => self.failures.push(case()),
            Err(e) => self.failures.push(format!("{}: {e}", case())),
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.cases > 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag} {}: {} ({} cases)\n", self.suite, c.name, c.cases));
            for f in c.failures.iter().take(5) {
                out.push_str(&format!("  failed at {f}\n"));
            }
        }
        out
    }
}

/// Random inputs for the suites.
pub mod random {
    use super::*;

    pub fn rng(seed: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(seed)
    }

    pub fn eps() -> EqScalar {
        EqScalar::marker(&Marker::new("eps", 1))
    }

    fn small_int(rng: &mut ChaCha8Rng) -> i64 {
        let v = rng.gen_range(1..=3);
        if rng.gen_bool(0.5) {
            v
        } else {
            -v
        }
    }

    /// `+-P^j`, sometimes weighted by `lambda`.
    pub fn line(n: usize, rng: &mut ChaCha8Rng) -> KClass {
        let j = rng.gen_range(-2..=2);
        let weight = if rng.gen_bool(0.25) {
            EqScalar::param("lambda")
        } else {
            EqScalar::one()
        };
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        KClass::line(n, j, weight.scale(&rat(sign)))
    }

    /// Integer combinations of powers of `P`.
    pub fn kclass(n: usize, rng: &mut ChaCha8Rng) -> KClass {
        let mut acc = KClass::zero(n);
        for _ in 0..rng.gen_range(1..=2) {
            let j = rng.gen_range(-2..=2);
            acc = &acc + &KClass::hopf_pow(n, j).scale_rational(&rat(small_int(rng)));
        }
        acc
    }

    pub fn laurent(n: usize, lo: i64, hi: i64, rng: &mut ChaCha8Rng) -> LaurentQ {
        let mut out = LaurentQ::zero(n);
        for _ in 0..rng.gen_range(1..=3) {
            let e = rng.gen_range(lo..=hi);
            out = &out + &LaurentQ::monomial(kclass(n, rng), e);
        }
        out
    }

    /// A Laurent polynomial, so an element of `K_+`.
    pub fn k_plus(n: usize, rng: &mut ChaCha8Rng) -> QRat {
        QRat::from_laurent(laurent(n, -2, 2, rng))
    }

    /// A proper rational function regular at `0`, so an element of `K_-`.
    pub fn k_minus(n: usize, rng: &mut ChaCha8Rng) -> QRat {
        let mut factors = Vec::new();
        let mut deg = 0;
        for _ in 0..rng.gen_range(1..=2) {
            let m = rng.gen_range(1..=2);
            deg += m;
            factors.push((line(n, rng), m, 1));
        }
        let num = laurent(n, 0, deg - 1, rng);
        QRat::new(num, &factors).expect("line classes are invertible")
    }

    /// Finite data with entries at `0 < |k| <= kmax`, Laurent in `q` when asked.
    pub fn finite_twist(n: usize, kmax: i64, q_dependent: bool, rng: &mut ChaCha8Rng) -> TwistData {
        let entries = random_entries(n, kmax, q_dependent, rng, KClass::one(n));
        TwistData::finite(n, entries).expect("valid entries")
    }

    /// Infinitesimal data: every entry is a multiple of `eps`.
    pub fn infinitesimal_twist(n: usize, kmax: i64, q_dependent: bool, rng: &mut ChaCha8Rng) -> TwistData {
        let e = KClass::scalar(n, eps());
        let entries = random_entries(n, kmax, q_dependent, rng, e);
        TwistData::infinitesimal(n, entries).expect("entries are eps multiples")
    }

    fn random_entries(
        n: usize,
        kmax: i64,
        q_dependent: bool,
        rng: &mut ChaCha8Rng,
        scale: KClass,
    ) -> Vec<(i64, LaurentQ)> {
        let mut entries = Vec::new();
        for _ in 0..rng.gen_range(1..=3) {
            let mut k = rng.gen_range(1..=kmax);
            if rng.gen_bool(0.5) {
                k = -k;
            }
            let e = if q_dependent {
                laurent(n, -1, 2, rng)
            } else {
                LaurentQ::constant(kclass(n, rng))
            };
            entries.push((k, e.scale(&scale)));
        }
        entries
    }
}

fn lemma_suite() -> Vec<Check> {
    let mut c = Check::new("trace of Psi^k on the regular representation is r*[r|k]");
    for r in 1..=8u32 {
        for k in (-12i64..=12).filter(|k| *k != 0) {
            let tr = CycRep::regular(r).adams(k).trace_generator();
            let expect = if k % r as i64 == 0 { rat(r as i64) } else { rat(0) };
            c.record(|| format!("r={r} k={k}"), Ok(tr == CycloElem::from_rational(r, expect)));
        }
    }
    vec![c]
}

fn box_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = random::rng(cfg.seed);
    let mut sym = Check::new("Box term symmetry under q -> 1/q");
    let mut serre = Check::new("quantum Serre relation on random finite data");
    for trial in 0..(cfg.samples / 2).max(4) {
        let n = rng.gen_range(1..=3);
        let data = random::finite_twist(n, 6, trial % 2 == 0, &mut rng);
        let r = rng.gen_range(1..=2);
        for k in (-6i64..=6).filter(|k| *k != 0) {
            if data.entry(r * k).is_zero() {
                continue;
            }
            sym.record(|| format!("trial {trial} r={r} k={k}"), box_symmetry_check(r, k, &data));
            serre.record(|| format!("trial {trial} r={r} k={k}"), serre_relation_check(r, k, &data));
        }
    }
    vec![sym, serre]
}

fn serre_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = random::rng(cfg.seed.wrapping_add(1));
    let mut rel = Check::new("quantum Serre relation on Eulerian and infinitesimal data");
    let mut inv = Check::new("pairing twists of Serre-dual data are inverse");
    let mut invol = Check::new("Serre duality is an involution");
    for trial in 0..(cfg.samples / 10).max(4) {
        let n = rng.gen_range(1..=3);
        let lam = EqScalar::param("lambda");
        let lines: Vec<KClass> = (0..rng.gen_range(1..=2))
            .map(|_| KClass::line(n, rng.gen_range(-2..=2), lam.clone()))
            .collect();
        let support = if rng.gen_bool(0.5) { Support::Negative } else { Support::Positive };
        let eulerian = if rng.gen_bool(0.5) {
            TwistData::eulerian_pi(n, lines)
        } else {
            TwistData::eulerian_dual(n, lines)
        }
        .expect("weighted lines are invertible")
        .with_support(support);
        let inf = random::infinitesimal_twist(n, 4, false, &mut rng);
        for data in [&eulerian, &inf] {
            for k in [-3i64, -2, -1, 1, 2, 3] {
                rel.record(|| format!("trial {trial} {:?} k={k}", data.mode()), serre_relation_check(1, k, data));
            }
            let dual = serre_dual(data);
            inv.record(
                || format!("trial {trial} {:?}", data.mode()),
                dual.and_then(|d| Ok((&pairing_twist(1, data)? * &pairing_twist(1, &d)?).is_one())),
            );
            invol.record(
                || format!("trial {trial} {:?}", data.mode()),
                serre_dual(data).and_then(|d| serre_dual(&d)).map(|dd| &dd == data),
            );
        }
    }
    vec![rel, inv, invol]
}

fn dilaton_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = random::rng(cfg.seed.wrapping_add(2));
    let mut flat = Check::new("dilaton vector is 1-q on q-constant data");
    let mut psi = Check::new("r-th dilaton vector is Psi^r of the first-level shape");
    let one_minus_q = |n| QRat::from_laurent(LaurentQ::one_minus(&KClass::one(n), 1));
    for trial in 0..(cfg.samples / 20).max(4) {
        let n = rng.gen_range(1..=3);
        let constant = random::finite_twist(n, 4, false, &mut rng);
        let inf_constant = random::infinitesimal_twist(n, 4, false, &mut rng);
        let inf = random::infinitesimal_twist(n, 4, true, &mut rng);
        for r in 1..=4 {
            for d in [&constant, &inf_constant] {
                flat.record(
                    || format!("trial {trial} r={r}"),
                    dilaton_vector(r, d).map(|v| v == one_minus_q(n)),
                );
            }
            psi.record(|| format!("trial {trial} r={r}"), psi_dilaton_check(r, &inf));
        }
    }
    vec![flat, psi]
}

fn lefschetz_suite() -> Vec<Check> {
    let mut pol = Check::new("J lies in 1-q + K_-");
    for n in 2..=4usize {
        let j = match j_small(n, 6) {
            Ok(j) => j,
            Err(e) => {
                pol.record(|| format!("n={n}"), Err(e));
                continue;
            }
        };
        for d in 0..=6 {
            let plus = j.coeff_at(d).project_plus();
            let expect = if d == 0 {
                LaurentQ::one_minus(&KClass::one(n), 1)
            } else {
                LaurentQ::zero(n)
            };
            pol.record(|| format!("n={n} d={d}"), Ok(plus == expect));
        }
    }
    let mut cot = Check::new("dual transform of J by n copies of lambda*P^-1 is I");
    for n in 1..=4usize {
        let outcome = (|| {
            let j = j_small(n, 4)?;
            let t = lefschetz_transform(&j, &cotangent_bundles(n), LefschetzMode::Dual)?;
            let i = i_cotangent(n, 4)?;
            Ok((0..=4).all(|d| t.coeff_at(d) == i.coeff_at(d)))
        })();
        cot.record(|| format!("n={n} D=4"), outcome);
    }
    let mut inv = Check::new("pi and dual transforms with inverse lines cancel");
    for n in 1..=3usize {
        for m in [-2i64, -1, 1, 2] {
            let outcome = (|| {
                let j = j_small(n, 3)?;
                let line = LineSummand::weighted(vec![m], EqScalar::param("lambda"));
                let there = lefschetz_transform(&j, std::slice::from_ref(&line), LefschetzMode::Pi)?;
                let back = lefschetz_transform(&there, &[dual_summand(&line)?], LefschetzMode::Dual)?;
                Ok((0..=3).all(|d| back.coeff_at(d) == j.coeff_at(d)))
            })();
            inv.record(|| format!("n={n} m={m}"), outcome);
        }
    }
    let mut tel = Check::new("telescoping of Gamma-operator shadows");
    for n in 1..=3usize {
        for e in [KClass::hopf(n), KClass::line(n, -1, EqScalar::param("lambda"))] {
            tel.record(|| format!("n={n} E={}", e.render()), telescoping_check(&e, -6..=6));
        }
    }
    vec![pol, cot, inv, tel]
}

fn limit_suite() -> Vec<Check> {
    let mut c = Check::new("non-equivariant limit matches the closed form");
    for n in 1..=4usize {
        c.record(|| format!("n={n} D=4"), noneq_limit(n, 4).map(|l| l.agrees()));
    }
    vec![c]
}

fn hrr_suite() -> Vec<Check> {
    let mut c = Check::new("fake Euler characteristic equals chi on powers of P");
    for n in 1..=6usize {
        for j in -(n as i64)..=(n as i64) {
            let p = KClass::hopf_pow(n, j);
            c.record(
                || format!("n={n} j={j}"),
                chi_fake(&p).map(|v| p.chi() == EqScalar::rational(v)),
            );
        }
    }
    vec![c]
}

fn loopspace_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut rng = random::rng(cfg.seed.wrapping_add(3));
    let mut plus = Check::new("K_+ is isotropic");
    let mut minus = Check::new("K_- is isotropic");
    let mut boxed = Check::new("Box transforms the twisted form to the untwisted one");
    let mut keeps = Check::new("Box multiplication preserves K_-");
    for trial in 0..cfg.samples {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=3);
        let delta = random::kclass(n, &mut rng);
        let (f, g) = (random::k_plus(n, &mut rng), random::k_plus(n, &mut rng));
        plus.record(|| format!("trial {trial}"), omega_r(&f, &g, r, &delta).map(|w| w.is_zero()));
        let (f, g) = (random::k_minus(n, &mut rng), random::k_minus(n, &mut rng));
        minus.record(|| format!("trial {trial}"), omega_r(&f, &g, r, &delta).map(|w| w.is_zero()));
    }
    for trial in 0..(cfg.samples / 10).max(4) {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=3);
        let data = random::infinitesimal_twist(n, 4, false, &mut rng);
        let f = &random::k_plus(n, &mut rng) + &random::k_minus(n, &mut rng);
        let g = &random::k_plus(n, &mut rng) + &random::k_minus(n, &mut rng);
        let outcome = (|| {
            let delta = pairing_twist(r, &data)?;
            let b = box_operator(r, &data)?;
            let lhs = omega_r(&f, &g, r, &delta)?;
            let rhs = omega_r(&(&b * &f), &(&b * &g), r, &KClass::one(n))?;
            Ok(lhs == rhs)
        })();
        boxed.record(|| format!("trial {trial} r={r}"), outcome);
        let h = random::k_minus(n, &mut rng);
        let outcome = (|| {
            let p = LoopPoint::single(r, h.clone())?.claim(Membership::Minus)?;
            Ok(apply_box(&p, &data)?.in_minus())
        })();
        keeps.record(|| format!("trial {trial} r={r}"), outcome);
    }
    vec![plus, minus, boxed, keeps]
}

fn sector_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut geo = Check::new("sector geometric identity");
    for r in 1..=3 {
        for m in 1..=4u32 {
            for kp in [-3i64, -2, -1, 1, 2, 3] {
                geo.record(|| format!("r={r} m={m} k'={kp}"), sector_geometric_identity(r, m, kp, 8));
            }
        }
    }
    let mut rel = Check::new("sector Box relation");
    let mut rng = random::rng(cfg.seed.wrapping_add(4));
    for trial in 0..4 {
        let n = rng.gen_range(1..=2);
        let data = random::finite_twist(n, 3, trial % 2 == 1, &mut rng);
        for r in 1..=3 {
            for m in 1..=4u32 {
                rel.record(|| format!("trial {trial} r={r} m={m}"), sector_box_relation(r, m, &data, 8));
            }
        }
    }
    vec![geo, rel]
}

fn qseries_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut euler = Check::new("Euler product equals its exponential form");
    for m in 0..=8 {
        for s in 0..=8 {
            euler.record(|| format!("M={m} S={s}"), euler_product_check(m, s));
        }
    }
    let mut split = Check::new("f = [f]_+ + [f]_- with [f]_- in K_-");
    let mut rng = random::rng(cfg.seed.wrapping_add(5));
    for trial in 0..(cfg.samples / 4).max(4) {
        let n = rng.gen_range(1..=3);
        let f = &random::k_plus(n, &mut rng) + &random::k_minus(n, &mut rng);
        let p = f.project_plus();
        let m = f.project_minus();
        split.record(
            || format!("trial {trial}"),
            Ok(&QRat::from_laurent(p) + &m == f && m.project_plus().is_zero()),
        );
    }
    vec![euler, split]
}

/// Runs one named suite.
pub fn run_suite(name: &str, cfg: &VerifyConfig) -> Result<SuiteReport> {
    let checks = match name {
        "lemma" => lemma_suite(),
        "box" => box_suite(cfg),
        "serre" => serre_suite(cfg),
        "dilaton" => dilaton_suite(cfg),
        "lefschetz" => lefschetz_suite(),
        "limit" => limit_suite(),
        "hrr" => hrr_suite(),
        "loopspace" => loopspace_suite(cfg),
        "sector" => sector_suite(cfg),
        "qseries" => qseries_suite(cfg),
        other => return Err(Error::InvalidInput(format!("unknown suite \"{other}\""))),
    };
    Ok(SuiteReport {
        suite: name.into(),
        checks,
    })
}

/// Runs suites in parallel; reports come back in the order given.
pub fn run_suites(names: &[&str], cfg: &VerifyConfig) -> Result<Vec<SuiteReport>> {
    for n in names {
        if !SUITES.contains(n) {
            return Err(Error::InvalidInput(format!("unknown suite \"{n}\"")));
        }
    }
    std::thread::scope(|s| {
        let handles: Vec<_> = names
            .iter()
            .map(|n| s.spawn(move || run_suite(n, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    })
}
