//! Generalized W states `α|001> + β|010> + γ|100>`, their two-qubit
//! reductions, and the monogamy slack
//! `δ = E(A:BC) - E(AB) - E(AC)` of the relative entropy of entanglement.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::css_opt::ree_numeric_restricted;
use crate::xfamily::{ree_closed_form, XState};
use crate::{binary_entropy, Error, Result};

const NORM_TOL: f64 = 1e-12;

/// W-state amplitudes, stored as absolute values. Sign flips are local
/// unitaries and leave every entanglement quantity unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WParams {
    alpha: f64,
    beta: f64,
    gamma: f64,
}

impl WParams {
    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite() && gamma.is_finite()) {
            return Err(Error::InvalidParameters("non-finite amplitude".into()));
        }
        let norm = alpha * alpha + beta * beta + gamma * gamma;
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidParameters(format!(
                "amplitudes ({alpha}, {beta}, {gamma}) have squared norm {norm}"
            )));
        }
        Ok(Self {
            alpha: alpha.abs(),
            beta: beta.abs(),
            gamma: gamma.abs(),
        })
    }

    /// From squared amplitudes on the simplex.
    pub fn from_squares(alpha_sq: f64, beta_sq: f64, gamma_sq: f64) -> Result<Self> {
        if alpha_sq < 0.0 || beta_sq < 0.0 || gamma_sq < 0.0 {
            return Err(Error::InvalidParameters(
                "squared amplitudes must be non-negative".into(),
            ));
        }
        Self::new(alpha_sq.sqrt(), beta_sq.sqrt(), gamma_sq.sqrt())
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Exchanges α and β (relabels qubits B and C).
    pub fn swap_alpha_beta(&self) -> Self {
        Self {
            alpha: self.beta,
            beta: self.alpha,
            gamma: self.gamma,
        }
    }
}

/// The eight amplitudes in `|ABC>` order (A is the most significant bit).
pub fn w_state_vector(w: &WParams) -> [Complex64; 8] {
    let mut psi = [Complex64::new(0.0, 0.0); 8];
    psi[0b001] = Complex64::new(w.alpha, 0.0);
    psi[0b010] = Complex64::new(w.beta, 0.0);
    psi[0b100] = Complex64::new(w.gamma, 0.0);
    psi
}

/// `tr_C |ψ_W><ψ_W|` as `(a, b, c) = (α², β², γ²)`.
pub fn reduced_ab(w: &WParams) -> XState {
    simplex_point(w.alpha * w.alpha, w.beta * w.beta, w.gamma * w.gamma)
}

/// `tr_B |ψ_W><ψ_W|` as `(a, b, c) = (β², α², γ²)`.
pub fn reduced_ac(w: &WParams) -> XState {
    simplex_point(w.beta * w.beta, w.alpha * w.alpha, w.gamma * w.gamma)
}

fn simplex_point(a: f64, b: f64, c: f64) -> XState {
    let sum = a + b + c;
    XState::new(a / sum, b / sum, c / sum).expect("normalized amplitudes")
}

/// REE across the A:BC cut of the pure W state: the binary entropy of γ².
pub fn ree_a_bc(w: &WParams) -> f64 {
    binary_entropy(w.gamma * w.gamma)
}

/// One point of the monogamy audit. Entanglement values are in nats unless
/// converted by [`MonogamyRecord::in_base`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonogamyRecord {
    pub alpha_sq: f64,
    pub beta_sq: f64,
    pub gamma_sq: f64,
    pub e_ab: f64,
    pub e_ac: f64,
    pub e_abc: f64,
    pub delta: f64,
}

impl MonogamyRecord {
    fn from_parts(w: &WParams, e_ab: f64, e_ac: f64, e_abc: f64) -> Self {
        Self {
            alpha_sq: w.alpha * w.alpha,
            beta_sq: w.beta * w.beta,
            gamma_sq: w.gamma * w.gamma,
            e_ab,
            e_ac,
            e_abc,
            delta: slack(e_abc, e_ab, e_ac),
        }
    }

    /// Divides every entanglement value by `ln_base` and recomputes δ from the
    /// converted values, so the stored row stays self-consistent.
    pub fn in_base(&self, ln_base: f64) -> Self {
        let (e_ab, e_ac, e_abc) = (
            self.e_ab / ln_base,
            self.e_ac / ln_base,
            self.e_abc / ln_base,
        );
        Self {
            e_ab,
            e_ac,
            e_abc,
            delta: slack(e_abc, e_ab, e_ac),
            ..*self
        }
    }
}

/// `δ = e_abc - e_ab - e_ac`, always evaluated in this order.
#[inline]
pub fn slack(e_abc: f64, e_ab: f64, e_ac: f64) -> f64 {
    (e_abc - e_ab) - e_ac
}

/// Source of the pairwise REE values.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Engine {
    ClosedForm,
    RestrictedNumeric,
}

impl Engine {
    pub fn ree(self, s: &XState) -> f64 {
        match self {
            Engine::ClosedForm => ree_closed_form(s),
            Engine::RestrictedNumeric => ree_numeric_restricted(s),
        }
    }
}

pub fn delta(w: &WParams) -> MonogamyRecord {
    delta_with(w, Engine::ClosedForm)
}

pub fn delta_with(w: &WParams, engine: Engine) -> MonogamyRecord {
    let e_ab = engine.ree(&reduced_ab(w));
    let e_ac = engine.ree(&reduced_ac(w));
    MonogamyRecord::from_parts(w, e_ab, e_ac, ree_a_bc(w))
}

/// Squared concurrences of the Coffman-Kundu-Wootters inequality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CkwReport {
    pub c2_ab: f64,
    pub c2_ac: f64,
    pub c2_abc: f64,
    /// `c2_abc - c2_ab - c2_ac`; zero for the W class.
    pub slack: f64,
}

pub fn concurrence_ckw_check(w: &WParams) -> CkwReport {
    let (a2, b2, g2) = (w.alpha * w.alpha, w.beta * w.beta, w.gamma * w.gamma);
    let c2_ab = 4.0 * b2 * g2;
    let c2_ac = 4.0 * a2 * g2;
    let c2_abc = 4.0 * g2 * (1.0 - g2);
    CkwReport {
        c2_ab,
        c2_ac,
        c2_abc,
        slack: c2_abc - c2_ab - c2_ac,
    }
}

/// Number of points of a resolution-`n` simplex grid.
pub fn grid_size(n: usize) -> usize {
    (n + 1) * (n + 2) / 2
}

/// Evaluates δ on the grid `β² = i/n`, `γ² = j/n`, `i + j <= n`, in row-major
/// `(i, j)` order. Points are computed in parallel; the order is fixed.
pub fn sweep(n: usize, engine: Engine) -> Result<Vec<MonogamyRecord>> {
    if n < 2 {
        return Err(Error::OutOfRange {
            what: "sweep resolution must be at least 2",
            value: n as f64,
        });
    }
    let points: Vec<(usize, usize)> = (0..=n)
        .flat_map(|i| (0..=n - i).map(move |j| (i, j)))
        .collect();
    let nf = n as f64;
    Ok(points
        .par_iter()
        .map(|&(i, j)| {
            let beta_sq = i as f64 / nf;
            let gamma_sq = j as f64 / nf;
            // the complement of the two integer fractions
            let alpha_sq = (n - i - j) as f64 / nf;
            let w = WParams::from_squares(alpha_sq, beta_sq, gamma_sq).expect("grid point");
            MonogamyRecord {
                alpha_sq,
                beta_sq,
                gamma_sq,
                ..delta_with(&w, engine)
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::{partial_trace, von_neumann_entropy, DensityMatrix};
    use crate::xfamily::ree_vedral_plenio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn standard_w() -> WParams {
        let s = 1.0 / 3f64.sqrt();
        WParams::new(s, s, s).unwrap()
    }

    fn random_w(rng: &mut ChaCha8Rng) -> WParams {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        WParams::new(v[0] / n, v[1] / n, v[2] / n).unwrap()
    }

    #[test]
    fn params_validate_and_canonicalize() {
        assert!(WParams::new(1.0, 1.0, 0.0).is_err());
        let w = WParams::new(-0.6, 0.0, 0.8).unwrap();
        assert_eq!((w.alpha(), w.gamma()), (0.6, 0.8));
    }

    #[test]
    fn state_vectors() {
        let psi = w_state_vector(&WParams::new(0.0, 0.0, 1.0).unwrap());
        assert_eq!(psi[0b100], Complex64::new(1.0, 0.0));
        assert_eq!(psi.iter().filter(|z| z.norm() > 0.0).count(), 1);

        let w = WParams::new(1.0 / 2f64.sqrt(), 0.5, 0.5).unwrap();
        let psi = w_state_vector(&w);
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-15);
        assert_eq!(psi.iter().filter(|z| z.norm() > 0.0).count(), 3);
        for (i, z) in psi.iter().enumerate() {
            if ![0b001, 0b010, 0b100].contains(&i) {
                assert_eq!(z.norm(), 0.0);
            }
        }
    }

    #[test]
    fn reductions_at_named_points() {
        let t = 1.0 / 3.0;
        let ab = reduced_ab(&standard_w());
        assert!((ab.a() - t).abs() < 1e-15 && (ab.b() - t).abs() < 1e-15);
        assert_eq!(
            reduced_ab(&WParams::new(1.0, 0.0, 0.0).unwrap()),
            XState::new(1.0, 0.0, 0.0).unwrap()
        );
        assert_eq!(
            reduced_ac(&WParams::new(0.0, 1.0, 0.0).unwrap()),
            XState::new(1.0, 0.0, 0.0).unwrap()
        );
        let (b, g) = (0.6, 0.8);
        let s = reduced_ab(&WParams::new(0.0, b, g).unwrap());
        assert_eq!(s.a(), 0.0);
        assert!((s.b() - 0.36).abs() < 1e-15);
        let s = reduced_ac(&WParams::new(b, 0.0, g).unwrap());
        assert!(s.a() == 0.0 && (s.b() - 0.36).abs() < 1e-15);
    }

    #[test]
    fn reductions_agree_with_partial_trace() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..500 {
            let w = random_w(&mut rng);
            let rho = DensityMatrix::from_pure(&w_state_vector(&w)).unwrap();
            let ab = partial_trace(&rho, 2).unwrap();
            let ac = partial_trace(&rho, 1).unwrap();
            assert!(
                ab.matrix()
                    .max_abs_diff(reduced_ab(&w).to_density().matrix())
                    <= 1e-12
            );
            assert!(
                ac.matrix()
                    .max_abs_diff(reduced_ac(&w).to_density().matrix())
                    <= 1e-12
            );
        }
    }

    #[test]
    fn a_bc_entropy() {
        assert_eq!(ree_a_bc(&WParams::new(1.0, 0.0, 0.0).unwrap()), 0.0);
        let h = 1.0 / 2f64.sqrt();
        assert!((ree_a_bc(&WParams::new(0.5, 0.5, h).unwrap()) - LN_2).abs() < 1e-15);
        assert!((ree_a_bc(&standard_w()) - 0.636514).abs() < 1e-6);

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..200 {
            let w = random_w(&mut rng);
            let rho = DensityMatrix::from_pure(&w_state_vector(&w)).unwrap();
            let rho_a = partial_trace(&partial_trace(&rho, 2).unwrap(), 1).unwrap();
            assert!((von_neumann_entropy(&rho_a) - ree_a_bc(&w)).abs() <= 1e-10);
        }
    }

    #[test]
    fn delta_at_named_points() {
        let r = delta(&standard_w());
        let expected = (3f64.ln() / 3.0 + 2.0 / 3.0 * 1.5f64.ln())
            - 2.0 * ree_vedral_plenio(2.0 / 3.0).unwrap();
        assert!((r.delta - expected).abs() < 1e-12);
        assert!((r.delta - 0.287682).abs() < 1e-6);

        let r = delta(&WParams::new(0.0, 0.6, 0.8).unwrap());
        assert!(r.delta.abs() < 1e-12 && r.e_ac == 0.0);
        assert!((r.e_ab - r.e_abc).abs() < 1e-12);
        assert_eq!(delta(&WParams::new(0.0, 0.0, 1.0).unwrap()).delta, 0.0);
    }

    #[test]
    fn beta_zero_edge() {
        let r = delta(&WParams::new(0.6, 0.0, 0.8).unwrap());
        assert_eq!(r.e_ab, 0.0);
        assert!((r.delta - (r.e_abc - r.e_ac)).abs() < 1e-15);
        assert!(r.delta >= 0.0);
    }

    #[test]
    fn alpha_beta_exchange_symmetry() {
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for _ in 0..1000 {
            let w = random_w(&mut rng);
            let d = (delta(&w).delta - delta(&w.swap_alpha_beta()).delta).abs();
            assert!(d <= 1e-12, "{w:?}: {d:e}");
        }
    }

    #[test]
    fn ckw_saturation() {
        let r = concurrence_ckw_check(&standard_w());
        assert!((r.c2_ab - 4.0 / 9.0).abs() < 1e-15);
        assert!((r.c2_ac - 4.0 / 9.0).abs() < 1e-15);
        assert!((r.c2_abc - 8.0 / 9.0).abs() < 1e-15);
        assert!(r.slack.abs() < 1e-15);
        let r = concurrence_ckw_check(&WParams::new(1.0, 0.0, 0.0).unwrap());
        assert_eq!((r.c2_ab, r.c2_ac, r.c2_abc, r.slack), (0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn small_sweep() {
        let records = sweep(2, Engine::ClosedForm).unwrap();
        assert_eq!(records.len(), 6);
        let corners: Vec<_> = records
            .iter()
            .filter(|r| [r.alpha_sq, r.beta_sq, r.gamma_sq].contains(&1.0))
            .collect();
        assert_eq!(corners.len(), 3);
        assert!(corners.iter().all(|r| r.delta == 0.0));
        // row-major (i, j) ordering
        let order: Vec<(f64, f64)> = records.iter().map(|r| (r.beta_sq, r.gamma_sq)).collect();
        assert_eq!(
            order,
            vec![
                (0.0, 0.0),
                (0.0, 0.5),
                (0.0, 1.0),
                (0.5, 0.0),
                (0.5, 0.5),
                (1.0, 0.0)
            ]
        );
        assert!(sweep(1, Engine::ClosedForm).is_err());
    }

    #[test]
    fn base_conversion_keeps_rows_consistent() {
        let r = delta(&standard_w()).in_base(LN_2);
        assert_eq!(r.delta, slack(r.e_abc, r.e_ab, r.e_ac));
        assert!((r.e_abc - 0.918_295_834_054_489_6).abs() < 1e-12);
    }
}
