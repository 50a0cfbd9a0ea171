//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use zeta_resonance::campaign::{
    aistleitner_constant, exhaustive_max, hunt, montgomery_constant, theorem_bound, verify_gcdsum, verify_moments,
    verify_poisson, verify_reduction_suite, verify_sigma1, Bound, HuntConfig, RangeMode, ResonatorChoice,
    VerifyRecord, C_MAX,
};
use zeta_resonance::engine::{d2_discrete, discrete_mean_square, WeightFunction};
use zeta_resonance::resonator::{build_critical_resonator, build_strip_resonator, CriticalSeed};
use zeta_resonance::zeta::{zeta, EvalPoint, ProgressionSpec};
use zeta_resonance::ZrError;

type Outcome = Result<(bool, String), ZrError>;

fn oracle() -> Vec<(f64, f64, Complex64)> {
    let path = format!("{}/tests/data/zeta_oracle.csv", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .expect("oracle data")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.trim().parse().unwrap()).collect();
            (f[0], f[1], Complex64::new(f[2], f[3]))
        })
        .collect()
}

fn all_pass(records: &[VerifyRecord]) -> (bool, usize) {
    let n = records.iter().filter(|r| r.pass).count();
    (n == records.len(), n)
}

fn worst(records: &[VerifyRecord]) -> f64 {
    records.iter().map(|r| r.gap_or_ratio).fold(0.0, f64::max)
}

fn zeta_evaluator() -> Outcome {
    let z2 = zeta(EvalPoint::new(2.0, 0.0)?, 1e-12)?;
    let e2 = (z2 - PI * PI / 6.0).norm();
    let z0 = zeta(EvalPoint::new(0.5, 14.134_725_141_7)?, 1e-12)?.norm();
    let points = oracle();
    let mut e_max: f64 = 0.0;
    for &(s, t, want) in &points {
        e_max = e_max.max((zeta(EvalPoint::new(s, t)?, 1e-11)? - want).norm());
    }
    let ok = e2 < 1e-10 && z0 < 1e-6 && points.len() == 100 && e_max < 1e-9;
    Ok((ok, format!("|ζ(2)−π²/6|={e2:.1e} |ζ(ρ₁)|={z0:.1e} oracle {} pts max err {e_max:.1e}", points.len())))
}

fn gcd_inequality() -> Outcome {
    let recs = verify_gcdsum(true)?;
    let (ok, n) = all_pass(&recs);
    let spot = &recs[0];
    let grid: Vec<_> = recs.iter().filter(|r| r.check_id == "gcdsum.lower_bound").collect();
    let min_ratio = grid.iter().map(|r| r.gap_or_ratio).fold(f64::INFINITY, f64::min);
    Ok((
        ok && grid.len() == 36,
        format!(
            "{n}/{} records, grid {} rows, min ratio {min_ratio:.4}; spot {:.5} ≥ {:.5}",
            recs.len(),
            grid.len(),
            spot.lhs,
            spot.rhs
        ),
    ))
}

fn poisson() -> Outcome {
    let recs = verify_poisson(true);
    let (ok, n) = all_pass(&recs);
    Ok((ok && recs.len() == 12, format!("{n}/{} combos, max gap {:.1e}", recs.len(), worst(&recs))))
}

fn reduction() -> Outcome {
    let recs = verify_reduction_suite(false)?;
    let (ok, n) = all_pass(&recs);
    Ok((ok && recs.len() == 2, format!("{n}/{} resonators, max route gap {:.1e}", recs.len(), worst(&recs))))
}

fn moments() -> Outcome {
    let recs = verify_moments(true)?;
    let (ok, n) = all_pass(&recs);
    Ok((ok && recs.len() == 12, format!("{n}/{} quantities, max rel gap {:.1e}", recs.len(), worst(&recs))))
}

fn sigma1() -> Outcome {
    let recs = verify_sigma1(true);
    let (ok, n) = all_pass(&recs);
    let gaps: Vec<String> = recs
        .iter()
        .filter(|r| r.check_id == "sigma1.series_vs_product")
        .map(|r| format!("{:.1e}", r.gap_or_ratio))
        .collect();
    Ok((ok && recs.len() == 6, format!("{n}/{} records, series gaps [{}]", recs.len(), gaps.join(", "))))
}

fn d2_positivity() -> Outcome {
    let resonators = [
        build_strip_resonator(1.0, 2)?,
        build_strip_resonator(3.0, 2)?,
        build_strip_resonator(5.0, 3)?,
        build_critical_resonator(10_000, 0.3, CriticalSeed::default())?,
    ];
    let mut min_lower = f64::INFINITY;
    for r in &resonators {
        for alpha in [1.0, 0.5] {
            let prog = ProgressionSpec::homogeneous(0.5, alpha)?;
            min_lower = min_lower.min(d2_discrete(r, &prog, 200, WeightFunction::Gaussian)?.poisson_lower);
        }
    }
    // a shifted progression on the critical line cannot even be constructed
    let rejected = matches!(ProgressionSpec::new(0.5, 1.0, 0.3), Err(ZrError::Beta { .. }));
    Ok((min_lower > 0.0 && rejected, format!("min poisson_lower {min_lower:.4e}, β≠0 rejected: {rejected}")))
}

fn mean_square() -> Outcome {
    let a = discrete_mean_square(1.0, 1_000, 1e-10)?.normalized;
    let b = discrete_mean_square(1.0, 10_000, 1e-10)?.normalized;
    let ratio = b / a;
    Ok(((1.0 / 3.0..=3.0).contains(&ratio), format!("normalized {a:.4} → {b:.4}, ratio {ratio:.3}")))
}

fn hunt_config(n: u64) -> Result<HuntConfig, ZrError> {
    let mut cfg = HuntConfig::new(ProgressionSpec::homogeneous(0.75, 1.0)?, n, RangeMode::Thm11);
    cfg.resonator = ResonatorChoice::Strip { x: 7.0, ell: 2 };
    Ok(cfg)
}

fn hunt_end_to_end() -> Outcome {
    let cfg = hunt_config(1_000)?;
    let exact = exhaustive_max(&cfg)?;
    let first = hunt(&cfg)?;
    let recovered = first.max_modulus / exact.modulus;
    let fraction = first.samples_evaluated as f64 / first.candidates as f64;
    let mut maxima = vec![first.max_modulus];
    for n in [10_000, 100_000] {
        maxima.push(hunt(&hunt_config(n)?)?.max_modulus);
    }
    let monotone = maxima.windows(2).all(|w| w[0] <= w[1]);
    Ok((
        recovered >= 0.9 && fraction <= 0.05 && monotone,
        format!(
            "recovered {recovered:.4} of {:.5}, evaluated {:.2}%, maxima {:?}",
            exact.modulus,
            100.0 * fraction,
            maxima.iter().map(|m| (m * 1e4).round() / 1e4).collect::<Vec<_>>()
        ),
    ))
}

fn bound_formulas() -> Outcome {
    let m = montgomery_constant(0.75)?;
    let a = aistleitner_constant(0.75)?;
    let below = theorem_bound(Bound::Thm12 { c: 0.7 }, 1e6).is_ok();
    let at_cap = theorem_bound(Bound::Thm12 { c: C_MAX }, 1e6).is_err();
    let above = theorem_bound(Bound::Thm12 { c: 0.75 }, 1e6).is_err();
    let ok = (m - 0.025).abs() < 1e-12 && (a - 0.151_367).abs() < 1e-5 && below && at_cap && above;
    Ok((ok, format!("C_σ(Montgomery)={m} C_σ(Aistleitner)={a:.7} c<1/√2 enforced: {}", at_cap && above)))
}

type Criterion = (&'static str, fn() -> Outcome, u64);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("zeta evaluator", zeta_evaluator, 30),
        ("gcd-sum lower bound", gcd_inequality, 10),
        ("poisson summation", poisson, 1),
        ("reduction identity", reduction, 300),
        ("moment identities", moments, 120),
        ("sigma=1 ratio", sigma1, 30),
        ("D2 positivity", d2_positivity, 60),
        ("mean square", mean_square, 600),
        ("hunt end-to-end", hunt_end_to_end, 900),
        ("bound formulas", bound_formulas, 1),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_budget = elapsed <= Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok((ok, d)) => (ok && in_budget, d),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.2}s / {budget}s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
