use num_complex::Complex64;
use zeta_resonance::zeta::{riemann_siegel, zeta, EvalPoint, ZetaEvaluator};

fn load(name: &str) -> Vec<(f64, f64, Complex64)> {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<f64> = l.split(',').map(|x| x.trim().parse().unwrap()).collect();
            (f[0], f[1], Complex64::new(f[2], f[3]))
        })
        .collect()
}

#[test]
fn random_points_match_oracle() {
    let mut worst: f64 = 0.0;
    for (s, t, want) in load("zeta_oracle.csv") {
        let got = zeta(EvalPoint::new(s, t).unwrap(), 1e-10).unwrap();
        worst = worst.max((got - want).norm());
    }
    println!("worst {worst:e}");
    assert!(worst < 1e-10);
}

#[test]
fn named_points_match_oracle() {
    for (s, t, want) in load("zeta_points.csv") {
        let got = zeta(EvalPoint::new(s, t).unwrap(), 1e-10).unwrap();
        let err = (got - want).norm();
        println!("{s} {t} err {err:e}");
        assert!(err < 1e-9, "sigma {s} t {t}: err {err:e}");
    }
}

#[test]
fn riemann_siegel_agrees_with_euler_maclaurin_below_switch() {
    let ev = ZetaEvaluator::default();
    for t in [1000.0, 2500.5, 7777.7, 9999.0] {
        let (rs, _) = riemann_siegel::zeta_critical(t);
        let em = ev.euler_maclaurin(EvalPoint::new(0.5, t).unwrap(), 1e-12).unwrap().value;
        println!("{t} {:e}", (rs - em).norm());
        assert!((rs - em).norm() < 1e-9);
    }
}
