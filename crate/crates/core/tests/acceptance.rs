//! Acceptance run: one PASS/FAIL line per criterion.

use std::process::ExitCode;

use rand::Rng;

use qkadams::algebra_core::{rat, ratio, CycRep, CycloElem, EqScalar, KClass, Rational};
use qkadams::lefschetz::{cotangent_bundles, i_cotangent, j_small, lefschetz_transform, noneq_limit, LefschetzMode};
use qkadams::loopspace::{apply_box, omega_r, LoopPoint, Membership};
use qkadams::oracle_hrr::chi_fake;
use qkadams::qcalc::{LaurentQ, QRat};
use qkadams::twistkit::{
    box_operator, box_symmetry_check, dilaton_vector, euler_exponential, euler_product_check,
    pairing_twist, psi_dilaton_check, sector_box_relation, sector_geometric_identity,
    serre_relation_check,
};
use qkadams::verify::random;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn one_minus_q(n: usize) -> LaurentQ {
    LaurentQ::one_minus(&KClass::one(n), 1)
}

fn c1_polarization() -> Outcome {
    for n in 2..=4usize {
        let j = j_small(n, 6).map_err(|e| e.to_string())?;
        let mut plus = LaurentQ::zero(n);
        for d in 0..=6 {
            let p = j.coeff_at(d).project_plus();
            if d >= 1 {
                ensure(p.is_zero(), || format!("n={n} d={d}: [J_d]_+ = {}", p.render()))?;
            }
            plus = &plus + &p;
        }
        ensure(plus == one_minus_q(n), || format!("n={n}: [J]_+ = {}", plus.render()))?;
    }
    Ok(())
}

fn c2_cotangent() -> Outcome {
    for n in 1..=4usize {
        for big_d in 0..=4 {
            let j = j_small(n, big_d).map_err(|e| e.to_string())?;
            let t = lefschetz_transform(&j, &cotangent_bundles(n), LefschetzMode::Dual).map_err(|e| e.to_string())?;
            let i = i_cotangent(n, big_d).map_err(|e| e.to_string())?;
            for d in 0..=big_d {
                ensure(t.coeff_at(d) == i.coeff_at(d), || format!("n={n} D={big_d} d={d}"))?;
            }
        }
    }
    Ok(())
}

/// `(1-q)(-P q^{d/2})^{-n(d-1)} / (1 - P q^d)^n`, expanded by hand.
fn closed_form(n: usize, d: i64) -> QRat {
    let nn = n as i64;
    let power = nn * (d - 1);
    let sign = if power % 2 == 0 { 1 } else { -1 };
    // (-P q^{d/2})^{-power} = (-1)^power P^{-power} q^{-d*power/2}
    let coeff = KClass::hopf_pow(n, -power).scale_rational(&rat(sign));
    let num = &one_minus_q(n) * &LaurentQ::monomial(coeff, -(d * power) / 2);
    let mut f = QRat::from_laurent(num);
    for _ in 0..n {
        f = &f * &QRat::inv_one_minus(&KClass::hopf(n), d, 1).unwrap();
    }
    f
}

fn c3_limit() -> Outcome {
    for n in 1..=4usize {
        let lim = noneq_limit(n, 4).map_err(|e| e.to_string())?;
        for d in 1..=4 {
            let got = lim.limit.coeff_at(d);
            ensure(got == closed_form(n, d), || format!("n={n} d={d}: {}", got.render()))?;
        }
    }
    Ok(())
}

fn c4_lemma() -> Outcome {
    for r in 1..=8u32 {
        for k in (-12i64..=12).filter(|k| *k != 0) {
            let tr = CycRep::regular(r).adams(k).trace_generator();
            // sum_{j<r} zeta^{jk} computed from the geometric series
            let expect = if k.rem_euclid(r as i64) == 0 { r as i64 } else { 0 };
            ensure(tr == CycloElem::from_rational(r, rat(expect)), || format!("r={r} k={k}"))?;
        }
    }
    Ok(())
}

fn c5_box() -> Outcome {
    let mut rng = random::rng(11);
    let mut cases = 0;
    for trial in 0..60 {
        let n = rng.gen_range(1..=3);
        let data = random::finite_twist(n, 6, trial % 2 == 0, &mut rng);
        for r in 1..=2 {
            for k in (-6i64..=6).filter(|k| *k != 0) {
                let a = box_symmetry_check(r, k, &data).map_err(|e| e.to_string())?;
                let b = serre_relation_check(r, k, &data).map_err(|e| e.to_string())?;
                ensure(a && b, || format!("trial {trial} r={r} k={k}"))?;
                if !data.entry(r * k).is_zero() {
                    cases += 1;
                }
            }
        }
    }
    ensure(cases > 100, || format!("only {cases} nontrivial cases"))
}

fn c6_dilaton() -> Outcome {
    let mut rng = random::rng(12);
    for trial in 0..20 {
        let n = rng.gen_range(1..=3);
        let flat = random::finite_twist(n, 4, false, &mut rng);
        let inf = random::infinitesimal_twist(n, 4, true, &mut rng);
        for r in 1..=4 {
            let v = dilaton_vector(r, &flat).map_err(|e| e.to_string())?;
            ensure(v == QRat::from_laurent(one_minus_q(n)), || format!("trial {trial} r={r}: {}", v.render()))?;
            let ok = psi_dilaton_check(r, &inf).map_err(|e| e.to_string())?;
            ensure(ok, || format!("trial {trial} r={r}"))?;
        }
    }
    Ok(())
}

/// Coefficients of `prod_{l=0}^{S} (1 - u t^l)` mod `(u^{M+1}, t^{S+1})` by integer convolution.
fn euler_oracle(m: usize, s: usize) -> Vec<Vec<i64>> {
    let mut acc = vec![vec![0i64; s + 1]; m + 1];
    acc[0][0] = 1;
    for l in 0..=s {
        let mut next = acc.clone();
        for a in 0..m {
            for b in 0..=s - l {
                next[a + 1][b + l] -= acc[a][b];
            }
        }
        acc = next;
    }
    acc
}

fn c7_euler() -> Outcome {
    for m in 0..=8u32 {
        for s in 0..=8u32 {
            ensure(euler_product_check(m, s).map_err(|e| e.to_string())?, || format!("M={m} S={s}"))?;
            let oracle = euler_oracle(m as usize, s as usize);
            let series = euler_exponential(m, s).map_err(|e| e.to_string())?;
            for a in 0..=m {
                for b in 0..=s {
                    let want = Rational::from_integer(oracle[a as usize][b as usize].into());
                    ensure(series.coeff(&[a, b]) == want, || format!("M={m} S={s} u^{a} t^{b}"))?;
                }
            }
        }
    }
    Ok(())
}

fn c8_symplectic() -> Outcome {
    let mut rng = random::rng(13);
    for trial in 0..200 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=3);
        let delta = random::kclass(n, &mut rng);
        let (f, g) = (random::k_plus(n, &mut rng), random::k_plus(n, &mut rng));
        let w = omega_r(&f, &g, r, &delta).map_err(|e| e.to_string())?;
        ensure(w.is_zero(), || format!("K_+ trial {trial}: {}", w.render()))?;
        let (f, g) = (random::k_minus(n, &mut rng), random::k_minus(n, &mut rng));
        let w = omega_r(&f, &g, r, &delta).map_err(|e| e.to_string())?;
        ensure(w.is_zero(), || format!("K_- trial {trial}: {}", w.render()))?;
    }
    for trial in 0..30 {
        let n = rng.gen_range(1..=3);
        let r = rng.gen_range(1..=3);
        let data = random::infinitesimal_twist(n, 4, false, &mut rng);
        let f = &random::k_plus(n, &mut rng) + &random::k_minus(n, &mut rng);
        let g = &random::k_plus(n, &mut rng) + &random::k_minus(n, &mut rng);
        let delta = pairing_twist(r, &data).map_err(|e| e.to_string())?;
        let b = box_operator(r, &data).map_err(|e| e.to_string())?;
        let lhs = omega_r(&f, &g, r, &delta).map_err(|e| e.to_string())?;
        let rhs = omega_r(&(&b * &f), &(&b * &g), r, &KClass::one(n)).map_err(|e| e.to_string())?;
        ensure(lhs == rhs, || format!("Box trial {trial}"))?;
        let h = random::k_minus(n, &mut rng);
        let p = LoopPoint::single(r, h)
            .and_then(|p| p.claim(Membership::Minus))
            .map_err(|e| e.to_string())?;
        let boxed = apply_box(&p, &data).map_err(|e| e.to_string())?;
        ensure(boxed.in_minus(), || format!("K_- preservation trial {trial}"))?;
    }
    Ok(())
}

/// `binom(j + n - 1, n - 1)` as a polynomial in `j`.
fn count_sections(n: usize, j: i64) -> Rational {
    let mut num = Rational::from_integer(1.into());
    for i in 1..n as i64 {
        num *= ratio(j + i, i);
    }
    num
}

fn c9_hrr() -> Outcome {
    for n in 1..=6usize {
        for j in -(n as i64)..=(n as i64) {
            let p = KClass::hopf_pow(n, j);
            let fake = chi_fake(&p).map_err(|e| e.to_string())?;
            ensure(p.chi() == EqScalar::rational(fake.clone()), || format!("n={n} j={j}"))?;
            // P^j = O(-j)
            ensure(fake == count_sections(n, -j), || format!("n={n} j={j}: oracle"))?;
        }
    }
    Ok(())
}

fn c10_sector() -> Outcome {
    for r in 1..=3 {
        for m in 1..=4u32 {
            for kp in (-3i64..=3).filter(|k| *k != 0) {
                let ok = sector_geometric_identity(r, m, kp, 8).map_err(|e| e.to_string())?;
                ensure(ok, || format!("geometric r={r} m={m} k'={kp}"))?;
            }
        }
    }
    let mut rng = random::rng(14);
    for trial in 0..6 {
        let n = rng.gen_range(1..=2);
        let data = random::finite_twist(n, 3, trial % 2 == 0, &mut rng);
        for r in 1..=3 {
            for m in 1..=4u32 {
                let ok = sector_box_relation(r, m, &data, 8).map_err(|e| e.to_string())?;
                ensure(ok, || format!("Box relation trial {trial} r={r} m={m}"))?;
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("1 J-polarization", c1_polarization),
        ("2 cotangent example", c2_cotangent),
        ("3 non-equivariant limit", c3_limit),
        ("4 Adams lemma", c4_lemma),
        ("5 Box identities", c5_box),
        ("6 dilaton", c6_dilaton),
        ("7 Euler product", c7_euler),
        ("8 symplectic", c8_symplectic),
        ("9 HRR cross-check", c9_hrr),
        ("10 sector", c10_sector),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(()) => println!("PASS {name}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {name}: {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
