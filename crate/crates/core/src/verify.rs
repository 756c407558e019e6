//! Seeded verification suites cross-checking the closed form against the
//! numerical oracles and the structural identities of the W family.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::css_opt::{
    css_from_angles, epsilon_monotonicity_probe, minimize_g, ree_numeric_general,
    ree_numeric_restricted, verify_css, GeneralConfig, ProbeReference,
};
use crate::monogamy::{concurrence_ckw_check, delta, WParams};
use crate::xfamily::{ree_closed_form, XState};
use crate::{Error, Result};

/// Seed used when none is given on the command line.
pub const DEFAULT_SEED: u64 = 2013;

/// Smallest population drawn by [`random_interior_xstate`].
pub const INTERIOR_FLOOR: f64 = 1e-3;

pub const RESTRICTED_TOL: f64 = 1e-8;
pub const GENERAL_BAND: (f64, f64) = (-1e-6, 1e-4);
pub const PPT_BAND: (f64, f64) = (-1e-9, 1e-7);
pub const CSS_VALUE_TOL: f64 = 1e-8;
pub const SYMMETRY_TOL: f64 = 1e-12;
pub const CKW_TOL: f64 = 1e-12;

/// Uniform point of the simplex with every population above
/// [`INTERIOR_FLOOR`].
pub fn random_interior_xstate(rng: &mut impl Rng) -> XState {
    loop {
        let (u, v): (f64, f64) = (rng.gen(), rng.gen());
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        let (a, b, c) = (lo, hi - lo, 1.0 - hi);
        if a > INTERIOR_FLOOR && b > INTERIOR_FLOOR && c > INTERIOR_FLOOR {
            if let Ok(s) = XState::new(a, b, c) {
                return s;
            }
        }
    }
}

/// Uniformly random point of the unit sphere, canonicalized to |amplitudes|.
pub fn random_wparams(rng: &mut impl Rng) -> WParams {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-6 && n2 <= 1.0 {
            let n = n2.sqrt();
            if let Ok(w) = WParams::new(v[0] / n, v[1] / n, v[2] / n) {
                return w;
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub samples: usize,
    /// Largest absolute error observed.
    pub max_error: f64,
    pub criterion: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifySummary {
    pub seed: u64,
    pub samples: usize,
    pub suites: Vec<SuiteResult>,
}

impl VerifySummary {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed)
    }

    pub fn failed(&self) -> Vec<&'static str> {
        self.suites
            .iter()
            .filter(|s| !s.passed)
            .map(|s| s.name)
            .collect()
    }
}

/// Runs every suite on `samples` seeded inputs.
pub fn run_all(samples: usize, seed: u64) -> Result<VerifySummary> {
    if samples == 0 {
        return Err(Error::OutOfRange {
            what: "samples must be at least 1",
            value: 0.0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let states: Vec<XState> = (0..samples)
        .map(|_| random_interior_xstate(&mut rng))
        .collect();
    let ws: Vec<WParams> = (0..samples).map(|_| random_wparams(&mut rng)).collect();
    let probes: Vec<(f64, f64, f64)> = (0..samples)
        .map(|_| {
            (
                rng.gen_range(0.0..std::f64::consts::FRAC_PI_2),
                rng.gen_range(0.05..0.45),
                rng.gen_range(0.05..0.45),
            )
        })
        .collect();

    let suites = vec![
        restricted_suite(&states),
        general_suite(&states, seed),
        css_boundary_suite(&states),
        css_value_suite(&states),
        symmetry_suite(&states, &ws),
        ckw_suite(&ws),
        monotonicity_suite(&states, &probes),
    ];
    Ok(VerifySummary {
        seed,
        samples,
        suites,
    })
}

pub fn restricted_suite(states: &[XState]) -> SuiteResult {
    let max_error = states
        .par_iter()
        .map(|s| (ree_numeric_restricted(s) - ree_closed_form(s)).abs())
        .reduce(|| 0.0, f64::max);
    SuiteResult {
        name: "restricted-oracle",
        samples: states.len(),
        max_error,
        criterion: format!("|restricted - closed| <= {RESTRICTED_TOL:e}"),
        passed: max_error <= RESTRICTED_TOL,
    }
}

pub fn general_suite(states: &[XState], seed: u64) -> SuiteResult {
    let diffs: Vec<f64> = states
        .par_iter()
        .enumerate()
        .map(|(i, s)| {
            let cfg = GeneralConfig {
                seed: seed.wrapping_add(i as u64),
                ..GeneralConfig::default()
            };
            let out = ree_numeric_general(&s.to_density(), &cfg).expect("two-qubit input");
            out.value.to_f64() - ree_closed_form(s)
        })
        .collect();
    let (lo, hi) = GENERAL_BAND;
    let passed = diffs.iter().all(|d| (lo..=hi).contains(d));
    SuiteResult {
        name: "general-oracle",
        samples: states.len(),
        max_error: diffs.iter().map(|d| d.abs()).fold(0.0, f64::max),
        criterion: format!("general - closed in [{lo:e}, {hi:e}]"),
        passed,
    }
}

pub fn css_boundary_suite(states: &[XState]) -> SuiteResult {
    let mins: Vec<f64> = states
        .par_iter()
        .map(|s| {
            let (angles, _) = minimize_g(s).expect("interior state");
            verify_css(&s.to_density(), &css_from_angles(&angles))
                .expect("two-qubit input")
                .ppt_min_eigenvalue
        })
        .collect();
    let (lo, hi) = PPT_BAND;
    SuiteResult {
        name: "css-boundary",
        samples: states.len(),
        max_error: mins.iter().map(|m| m.abs()).fold(0.0, f64::max),
        criterion: format!("min eig of partial transpose in [{lo:e}, {hi:e}]"),
        passed: mins.iter().all(|m| (lo..=hi).contains(m)),
    }
}

pub fn css_value_suite(states: &[XState]) -> SuiteResult {
    let max_error = states
        .par_iter()
        .map(|s| {
            let (angles, _) = minimize_g(s).expect("interior state");
            let report =
                verify_css(&s.to_density(), &css_from_angles(&angles)).expect("two-qubit input");
            (report.relative_entropy_value.to_f64() - ree_closed_form(s)).abs()
        })
        .reduce(|| 0.0, f64::max);
    SuiteResult {
        name: "css-value",
        samples: states.len(),
        max_error,
        criterion: format!("|S(rho||sigma*) - closed| <= {CSS_VALUE_TOL:e}"),
        passed: max_error <= CSS_VALUE_TOL,
    }
}

pub fn symmetry_suite(states: &[XState], ws: &[WParams]) -> SuiteResult {
    let bc = states
        .iter()
        .map(|s| (ree_closed_form(s) - ree_closed_form(&s.swapped())).abs())
        .fold(0.0, f64::max);
    let ab = ws
        .iter()
        .map(|w| (delta(w).delta - delta(&w.swap_alpha_beta()).delta).abs())
        .fold(0.0, f64::max);
    let max_error = bc.max(ab);
    SuiteResult {
        name: "symmetry",
        samples: states.len() + ws.len(),
        max_error,
        criterion: format!("b<->c and alpha<->beta invariance within {SYMMETRY_TOL:e}"),
        passed: max_error <= SYMMETRY_TOL,
    }
}

pub fn ckw_suite(ws: &[WParams]) -> SuiteResult {
    let max_error = ws
        .iter()
        .map(|w| concurrence_ckw_check(w).slack.abs())
        .fold(0.0, f64::max);
    SuiteResult {
        name: "ckw",
        samples: ws.len(),
        max_error,
        criterion: format!("|CKW slack| <= {CKW_TOL:e}"),
        passed: max_error <= CKW_TOL,
    }
}

/// Probes with `cos θ > 0`; `probes` holds `(θ, u, v)` with `x = 1 - u - v`
/// split evenly with `y`.
pub fn monotonicity_suite(states: &[XState], probes: &[(f64, f64, f64)]) -> SuiteResult {
    let mut worst_drop = 0.0_f64;
    for (s, &(theta, u, v)) in states.iter().zip(probes) {
        let reference = ProbeReference {
            x: (1.0 - u - v) / 2.0,
            u,
            v,
        };
        let uv = u * v;
        let eps: Vec<f64> = (0..=16).map(|k| uv * k as f64 / 16.0).collect();
        let values = epsilon_monotonicity_probe(s, theta, &reference, &eps).expect("valid probe");
        for w in values.windows(2) {
            worst_drop = worst_drop.max(w[0].to_f64() - w[1].to_f64());
        }
    }
    SuiteResult {
        name: "epsilon-monotonicity",
        samples: states.len().min(probes.len()),
        max_error: worst_drop.max(0.0),
        criterion: "f(theta, eps) non-decreasing in eps".into(),
        passed: worst_drop <= 0.0,
    }
}
