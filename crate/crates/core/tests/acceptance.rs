//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fail.

use std::f64::consts::{FRAC_PI_2, LN_2};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wree::css_opt::{
    css_from_angles, epsilon_monotonicity_probe, minimize_g, ree_numeric_general,
    ree_numeric_restricted, verify_css, GeneralConfig, ProbeReference,
};
use wree::monogamy::{concurrence_ckw_check, delta, WParams};
use wree::qmat::{Complex64, DensityMatrix};
use wree::verify::{random_interior_xstate, random_wparams, DEFAULT_SEED};
use wree::xfamily::{ree_closed_form, XState};

struct Outcome {
    passed: bool,
    detail: String,
}

fn check(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn states(n: usize, seed: u64) -> Vec<XState> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| random_interior_xstate(&mut rng)).collect()
}

fn ac1() -> Outcome {
    let mut worst = 0.0_f64;
    for k in 1..=19 {
        let l = 0.05 * k as f64;
        let closed = ree_closed_form(&XState::new(1.0 - l, l / 2.0, l / 2.0).unwrap());
        let reference = (1.0 - l) * (1.0 - l).ln() + (l - 2.0) * (1.0 - l / 2.0).ln();
        worst = worst.max((closed - reference).abs());
    }
    check(
        worst <= 1e-12,
        format!("max |closed - VP| = {worst:.2e} over 19 λ (tol 1e-12)"),
    )
}

fn ac2() -> Outcome {
    let closed = ree_closed_form(&XState::new(0.0, 0.5, 0.5).unwrap());
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let psi = [z, Complex64::new(h, 0.0), Complex64::new(h, 0.0), z];
    let rho = DensityMatrix::from_pure(&psi).unwrap();
    let general = ree_numeric_general(&rho, &GeneralConfig::default())
        .unwrap()
        .value
        .to_f64();
    let closed_ok = (closed - LN_2).abs() <= 1e-12;
    let general_ok = (LN_2 - 1e-6..=LN_2 + 1e-4).contains(&general);
    check(
        closed_ok && general_ok,
        format!(
            "|closed - ln2| = {:.2e} (tol 1e-12); general - ln2 = {:.2e} (band [-1e-6, 1e-4])",
            (closed - LN_2).abs(),
            general - LN_2
        ),
    )
}

fn ac3() -> Outcome {
    let samples = states(500, DEFAULT_SEED);
    let mut restricted_worst = 0.0_f64;
    let mut diffs = Vec::with_capacity(samples.len());
    for (i, s) in samples.iter().enumerate() {
        let closed = ree_closed_form(s);
        restricted_worst = restricted_worst.max((ree_numeric_restricted(s) - closed).abs());
        let cfg = GeneralConfig {
            seed: DEFAULT_SEED + i as u64,
            ..GeneralConfig::default()
        };
        let general = ree_numeric_general(&s.to_density(), &cfg)
            .unwrap()
            .value
            .to_f64();
        diffs.push(general - closed);
    }
    let in_band = diffs.iter().filter(|d| (-1e-6..=1e-4).contains(*d)).count();
    let lo = diffs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    check(
        restricted_worst <= 1e-8 && in_band == diffs.len(),
        format!(
            "max |restricted - closed| = {restricted_worst:.2e} (tol 1e-8); \
             general - closed in [{lo:.2e}, {hi:.2e}], {in_band}/{} inside [-1e-6, 1e-4]",
            diffs.len()
        ),
    )
}

fn ac4() -> Outcome {
    let samples = states(100, DEFAULT_SEED + 1);
    let (mut ppt_lo, mut ppt_hi) = (f64::INFINITY, f64::NEG_INFINITY);
    let (mut value_worst, mut value_ok) = (0.0_f64, 0usize);
    for s in &samples {
        let (angles, _) = minimize_g(s).unwrap();
        let report = verify_css(&s.to_density(), &css_from_angles(&angles)).unwrap();
        ppt_lo = ppt_lo.min(report.ppt_min_eigenvalue);
        ppt_hi = ppt_hi.max(report.ppt_min_eigenvalue);
        let err = (report.relative_entropy_value.to_f64() - ree_closed_form(s)).abs();
        value_worst = value_worst.max(err);
        value_ok += usize::from(err <= 1e-8);
    }
    let ppt_ok = ppt_lo >= -1e-9 && ppt_hi <= 1e-7;
    check(
        ppt_ok && value_ok == samples.len(),
        format!(
            "min eig of σ^TA in [{ppt_lo:.2e}, {ppt_hi:.2e}] (band [-1e-9, 1e-7]); \
             max |S(ρ||σ*) - closed| = {value_worst:.2e}, {value_ok}/{} within 1e-8",
            samples.len()
        ),
    )
}

fn parse_sweep(path: &Path) -> Vec<Vec<f64>> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_path(path)
        .unwrap();
    reader
        .records()
        .map(|r| r.unwrap().iter().map(|f| f.parse().unwrap()).collect())
        .collect()
}

fn ac5() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fig1.csv");
    let status = Command::new(env!("CARGO_BIN_EXE_wree"))
        .args(["sweep", "--resolution", "200", "--out"])
        .arg(&out)
        .output()
        .unwrap()
        .status;
    if !status.success() {
        return check(false, format!("sweep exited with {status}"));
    }
    let rows = parse_sweep(&out);
    let min = rows.iter().map(|r| r[6]).fold(f64::INFINITY, f64::min);
    let edge = rows
        .iter()
        .filter(|r| r[0] == 0.0 || r[2] == 0.0)
        .map(|r| r[6].abs())
        .fold(0.0, f64::max);
    let s = 1.0 / 3f64.sqrt();
    let w_point = delta(&WParams::new(s, s, s).unwrap()).delta;
    let passed =
        rows.len() == 20_301 && min >= -1e-9 && edge <= 1e-9 && (w_point - 0.287682).abs() <= 1e-6;
    check(
        passed,
        format!(
            "{} points, min δ = {min:.2e}; max |δ| on α=0, γ=0 edges = {edge:.2e}; δ(W) = {w_point:.7}",
            rows.len()
        ),
    )
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let worst = (0..10_000)
        .map(|_| concurrence_ckw_check(&random_wparams(&mut rng)).slack.abs())
        .fold(0.0, f64::max);
    check(
        worst <= 1e-12,
        format!("max |CKW slack| = {worst:.2e} over 10^4 (tol 1e-12)"),
    )
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let bc = (0..1000)
        .map(|_| {
            let s = random_interior_xstate(&mut rng);
            (ree_closed_form(&s) - ree_closed_form(&s.swapped())).abs()
        })
        .fold(0.0, f64::max);
    let ab = (0..1000)
        .map(|_| {
            let w = random_wparams(&mut rng);
            (delta(&w).delta - delta(&w.swap_alpha_beta()).delta).abs()
        })
        .fold(0.0, f64::max);
    check(
        bc <= 1e-12 && ab <= 1e-12,
        format!("max b<->c deviation {bc:.2e}, max α<->β deviation {ab:.2e} (tol 1e-12)"),
    )
}

fn ac8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let mut worst_drop = 0.0_f64;
    for _ in 0..100 {
        let s = random_interior_xstate(&mut rng);
        let theta = rng.gen_range(0.0..FRAC_PI_2);
        let (u, v) = (rng.gen_range(0.05..0.45), rng.gen_range(0.05..0.45));
        let reference = ProbeReference {
            x: (1.0 - u - v) / 2.0,
            u,
            v,
        };
        let eps: Vec<f64> = (0..=16).map(|k| u * v * k as f64 / 16.0).collect();
        let values = epsilon_monotonicity_probe(&s, theta, &reference, &eps).unwrap();
        for w in values.windows(2) {
            worst_drop = worst_drop.max(w[0].to_f64() - w[1].to_f64());
        }
    }
    check(
        worst_drop <= 0.0,
        format!("largest decrease along ε = {worst_drop:.2e} over 100 probes"),
    )
}

fn ac9() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let status = Command::new(env!("CARGO_BIN_EXE_wree"))
            .args([
                "sweep",
                "--resolution",
                "50",
                "--seed",
                "7",
                "--engine",
                "both",
                "--out",
            ])
            .arg(&out)
            .output()
            .unwrap()
            .status;
        (status.success(), std::fs::read(&out).unwrap_or_default())
    };
    let (ok1, first) = run("a.csv");
    let (ok2, second) = run("b.csv");
    check(
        ok1 && ok2 && !first.is_empty() && first == second,
        format!(
            "two runs: {} and {} bytes, identical = {}",
            first.len(),
            second.len(),
            first == second
        ),
    )
}

type Criterion = (&'static str, &'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 9] = [
        ("AC1", "Vedral-Plenio identity", ac1, Duration::from_secs(1)),
        ("AC2", "Bell-state limit", ac2, Duration::from_secs(10)),
        (
            "AC3",
            "closed form vs numerical oracles",
            ac3,
            Duration::from_secs(300),
        ),
        (
            "AC4",
            "CSS boundary certificate",
            ac4,
            Duration::from_secs(60),
        ),
        (
            "AC5",
            "monogamy over the simplex",
            ac5,
            Duration::from_secs(120),
        ),
        ("AC6", "CKW equality", ac6, Duration::from_secs(5)),
        ("AC7", "symmetry", ac7, Duration::from_secs(5)),
        ("AC8", "ε monotonicity", ac8, Duration::from_secs(5)),
        ("AC9", "sweep determinism", ac9, Duration::from_secs(120)),
    ];
    let mut failed = Vec::new();
    for (id, name, run, budget) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let passed = outcome.passed && in_time;
        println!(
            "{id} {} {name}: {} [{:.2}s / budget {}s]",
            if passed { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64(),
            budget.as_secs()
        );
        if !passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
    } else {
        println!("acceptance: failed {}", failed.join(", "));
        std::process::exit(1);
    }
}
