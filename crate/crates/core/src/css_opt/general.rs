use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::search::golden_section;
use crate::qmat::eigen::jacobi;
use crate::qmat::{ComplexMatrix, DensityMatrix, SUPPORT_EPS, ZERO_EIGENVALUE_EPS};
use crate::{xlnx, Error, ExtReal, Result};

const LBFGS_MEMORY: usize = 10;
const ARMIJO_C1: f64 = 1e-4;

/// Settings of [`ree_numeric_general`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralConfig {
    /// Number of product terms in the mixture.
    pub k: usize,
    pub restarts: usize,
    pub seed: u64,
    /// Optimizer iterations per restart.
    pub max_iters: usize,
    /// Largest acceptable improvement of the best value by the final restart.
    pub tol: f64,
}

impl Default for GeneralConfig {
    fn default() -> Self {
        Self {
            k: 16,
            restarts: 8,
            seed: 0x5EED_2013,
            max_iters: 1500,
            tol: 1e-6,
        }
    }
}

/// Bloch angles of a single-qubit pure state
/// `cos(polar/2)|0> + e^{i azimuth} sin(polar/2)|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitAngles {
    pub polar: f64,
    pub azimuth: f64,
}

impl QubitAngles {
    fn ket(&self) -> [Complex64; 2] {
        let (s, c) = (self.polar / 2.0).sin_cos();
        [
            Complex64::new(c, 0.0),
            Complex64::from_polar(s, self.azimuth),
        ]
    }

    fn d_polar(&self) -> [Complex64; 2] {
        let (s, c) = (self.polar / 2.0).sin_cos();
        [
            Complex64::new(-s / 2.0, 0.0),
            Complex64::from_polar(c / 2.0, self.azimuth),
        ]
    }

    fn d_azimuth(&self) -> [Complex64; 2] {
        let s = (self.polar / 2.0).sin();
        [
            Complex64::new(0.0, 0.0),
            Complex64::from_polar(s, self.azimuth) * Complex64::i(),
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductTerm {
    pub a: QubitAngles,
    pub b: QubitAngles,
}

impl ProductTerm {
    fn ket(&self) -> [Complex64; 4] {
        kron2(self.a.ket(), self.b.ket())
    }
}

fn kron2(a: [Complex64; 2], b: [Complex64; 2]) -> [Complex64; 4] {
    [a[0] * b[0], a[0] * b[1], a[1] * b[0], a[1] * b[1]]
}

/// A convex combination of pure product states; separable by construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductMixtureAnsatz {
    weights: Vec<f64>,
    terms: Vec<ProductTerm>,
}

impl ProductMixtureAnsatz {
    pub fn new(weights: Vec<f64>, terms: Vec<ProductTerm>) -> Result<Self> {
        if weights.is_empty() || weights.len() != terms.len() {
            return Err(Error::InvalidParameters(format!(
                "{} weights for {} terms",
                weights.len(),
                terms.len()
            )));
        }
        if weights.iter().any(|w| w.is_nan() || *w < 0.0) {
            return Err(Error::InvalidParameters(
                "weights must be non-negative".into(),
            ));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameters(format!("weights sum to {sum}")));
        }
        Ok(Self { weights, terms })
    }

    pub fn k(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn terms(&self) -> &[ProductTerm] {
        &self.terms
    }

    pub fn to_density(&self) -> DensityMatrix {
        let mut m = ComplexMatrix::zeros(4).expect("4x4");
        for (w, t) in self.weights.iter().zip(&self.terms) {
            accumulate_projector(&mut m, *w, &t.ket());
        }
        DensityMatrix::from_trusted(m)
    }
}

fn accumulate_projector(m: &mut ComplexMatrix, w: f64, psi: &[Complex64; 4]) {
    for i in 0..4 {
        for j in 0..4 {
            m[(i, j)] += psi[i] * psi[j].conj() * w;
        }
    }
}

/// Result of [`ree_numeric_general`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneralOutcome {
    /// Best relative entropy found: an upper bound on the REE.
    pub value: ExtReal,
    pub ansatz: ProductMixtureAnsatz,
    /// Final value of each restart, in restart order.
    pub restart_values: Vec<f64>,
    /// Objective after every accepted step of the winning restart.
    pub history: Vec<f64>,
    /// Improvement of the running best contributed by the final restart.
    pub last_change: f64,
    pub tol: f64,
}

impl GeneralOutcome {
    pub fn converged(&self) -> bool {
        self.last_change <= self.tol
    }

    /// The non-fatal convergence warning, if any.
    pub fn convergence_failure(&self) -> Option<Error> {
        (!self.converged()).then_some(Error::ConvergenceFailure {
            change: self.last_change,
            tol: self.tol,
        })
    }
}

/// Upper bound on the REE of a two-qubit state by minimizing `S(rho || sigma)`
/// over mixtures of `k` product states.
///
/// Weights are parametrized as `w_i = s_i² / Σ s²`, which keeps every iterate
/// on the simplex. Each restart runs L-BFGS with analytic gradients and a
/// monotone line search, so its objective never increases. Restarts use
/// independent streams of a ChaCha generator keyed by `(seed, restart)` and
/// may run concurrently; the minimum is taken in restart order.
pub fn ree_numeric_general(rho: &DensityMatrix, cfg: &GeneralConfig) -> Result<GeneralOutcome> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: rho.qubits(),
        });
    }
    if cfg.k == 0 || cfg.restarts == 0 {
        return Err(Error::InvalidParameters(
            "k and restarts must be positive".into(),
        ));
    }
    let problem = Problem::new(rho, cfg.k);
    let runs: Vec<Run> = (0..cfg.restarts)
        .into_par_iter()
        .map(|restart| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(restart as u64);
            problem.run(problem.random_start(&mut rng), cfg.max_iters)
        })
        .collect();

    let restart_values: Vec<f64> = runs.iter().map(|r| r.value).collect();
    let mut best_idx = 0;
    let mut before_last = f64::INFINITY;
    for (i, v) in restart_values.iter().enumerate() {
        if i + 1 == restart_values.len() {
            before_last = restart_values[best_idx];
        }
        if *v < restart_values[best_idx] {
            best_idx = i;
        }
    }
    let best = restart_values[best_idx];
    let last_change = if cfg.restarts == 1 {
        0.0
    } else if before_last.is_finite() {
        before_last - best
    } else if best.is_finite() {
        f64::INFINITY
    } else {
        0.0
    };
    let winner = &runs[best_idx];
    Ok(GeneralOutcome {
        value: ExtReal::from_f64(best),
        ansatz: problem.ansatz(&winner.params),
        restart_values,
        history: winner.history.clone(),
        last_change,
        tol: cfg.tol,
    })
}

struct Run {
    params: Vec<f64>,
    value: f64,
    history: Vec<f64>,
}

/// Parameter layout: `k` weight amplitudes followed by four angles per term
/// (polar A, azimuth A, polar B, azimuth B).
struct Problem {
    rho: ComplexMatrix,
    neg_entropy: f64,
    k: usize,
}

impl Problem {
    fn new(rho: &DensityMatrix, k: usize) -> Self {
        let neg_entropy = rho
            .eigensystem()
            .eigenvalues
            .iter()
            .filter(|&&l| l > ZERO_EIGENVALUE_EPS)
            .map(|&l| xlnx(l))
            .sum();
        Self {
            rho: rho.matrix().clone(),
            neg_entropy,
            k,
        }
    }

    fn random_start(&self, rng: &mut ChaCha8Rng) -> Vec<f64> {
        let mut p = Vec::with_capacity(5 * self.k);
        for _ in 0..self.k {
            p.push(rng.gen_range(0.5..1.5));
        }
        for _ in 0..self.k {
            p.push(rng.gen_range(0.0..PI));
            p.push(rng.gen_range(0.0..TAU));
            p.push(rng.gen_range(0.0..PI));
            p.push(rng.gen_range(0.0..TAU));
        }
        p
    }

    fn terms(&self, p: &[f64]) -> Vec<ProductTerm> {
        (0..self.k)
            .map(|i| {
                let q = &p[self.k + 4 * i..self.k + 4 * i + 4];
                ProductTerm {
                    a: QubitAngles {
                        polar: q[0],
                        azimuth: q[1],
                    },
                    b: QubitAngles {
                        polar: q[2],
                        azimuth: q[3],
                    },
                }
            })
            .collect()
    }

    fn weights(&self, p: &[f64]) -> Vec<f64> {
        let norm: f64 = p[..self.k].iter().map(|s| s * s).sum();
        p[..self.k].iter().map(|s| s * s / norm).collect()
    }

    fn ansatz(&self, p: &[f64]) -> ProductMixtureAnsatz {
        let terms = self.terms(p).into_iter().map(canonical_term).collect();
        ProductMixtureAnsatz {
            weights: self.weights(p),
            terms,
        }
    }

    fn sigma(&self, weights: &[f64], kets: &[[Complex64; 4]]) -> ComplexMatrix {
        let mut m = ComplexMatrix::zeros(4).expect("4x4");
        for (w, psi) in weights.iter().zip(kets) {
            accumulate_projector(&mut m, *w, psi);
        }
        m
    }

    fn value(&self, p: &[f64]) -> f64 {
        let weights = self.weights(p);
        let kets: Vec<[Complex64; 4]> = self.terms(p).iter().map(ProductTerm::ket).collect();
        let es = jacobi(&self.sigma(&weights, &kets));
        let mut cross = 0.0;
        for (j, &lambda) in es.eigenvalues.iter().enumerate() {
            let weight = self.rho.expectation(&es.vector(j)).re;
            if lambda <= SUPPORT_EPS {
                if weight > SUPPORT_EPS {
                    return f64::INFINITY;
                }
                continue;
            }
            cross -= weight * lambda.ln();
        }
        self.neg_entropy + cross
    }

    /// Objective and gradient. The gradient of `-tr(rho ln sigma)` with respect
    /// to `sigma` is `-V (L ∘ V† rho V) V†` with the divided differences
    /// `L_ij = (ln λ_i - ln λ_j) / (λ_i - λ_j)`.
    fn value_and_gradient(&self, p: &[f64]) -> (f64, Vec<f64>) {
        let k = self.k;
        let weights = self.weights(p);
        let terms = self.terms(p);
        let kets: Vec<[Complex64; 4]> = terms.iter().map(ProductTerm::ket).collect();
        let es = jacobi(&self.sigma(&weights, &kets));
        let lambdas = &es.eigenvalues;
        let v = &es.eigenvectors;

        let rho_eig = v
            .adjoint()
            .matmul(&self.rho)
            .expect("4x4")
            .matmul(v)
            .expect("4x4");
        let mut cross = 0.0;
        for j in 0..4 {
            let weight = rho_eig[(j, j)].re;
            if lambdas[j] <= SUPPORT_EPS {
                if weight > SUPPORT_EPS {
                    return (f64::INFINITY, vec![0.0; p.len()]);
                }
                continue;
            }
            cross -= weight * lambdas[j].ln();
        }
        let value = self.neg_entropy + cross;

        let floor = |l: f64| l.max(SUPPORT_EPS);
        let mut inner = ComplexMatrix::zeros(4).expect("4x4");
        for i in 0..4 {
            for j in 0..4 {
                let (li, lj) = (floor(lambdas[i]), floor(lambdas[j]));
                let divided = if (li - lj).abs() <= 1e-12 * li.max(lj) {
                    2.0 / (li + lj)
                } else {
                    (li.ln() - lj.ln()) / (li - lj)
                };
                inner[(i, j)] = -rho_eig[(i, j)] * divided;
            }
        }
        let grad_sigma = inner.conjugate_by(v).expect("4x4");

        let mut grad = vec![0.0; p.len()];
        let dw: Vec<f64> = kets
            .iter()
            .map(|psi| grad_sigma.expectation(psi).re)
            .collect();
        let mean: f64 = weights.iter().zip(&dw).map(|(w, g)| w * g).sum();
        let norm: f64 = p[..k].iter().map(|s| s * s).sum();
        for i in 0..k {
            grad[i] = 2.0 * p[i] / norm * (dw[i] - mean);
        }
        for (i, t) in terms.iter().enumerate() {
            let (ka, kb) = (t.a.ket(), t.b.ket());
            let g_psi = apply(&grad_sigma, &kets[i]);
            let partials = [
                kron2(t.a.d_polar(), kb),
                kron2(t.a.d_azimuth(), kb),
                kron2(ka, t.b.d_polar()),
                kron2(ka, t.b.d_azimuth()),
            ];
            for (n, d) in partials.iter().enumerate() {
                let overlap: Complex64 = d.iter().zip(&g_psi).map(|(x, y)| x.conj() * y).sum();
                grad[k + 4 * i + n] = 2.0 * weights[i] * overlap.re;
            }
        }
        (value, grad)
    }

    fn run(&self, mut p: Vec<f64>, max_iters: usize) -> Run {
        let (mut f, mut g) = self.value_and_gradient(&p);
        let mut history = vec![f];
        let mut s_hist: Vec<Vec<f64>> = Vec::new();
        let mut y_hist: Vec<Vec<f64>> = Vec::new();

        for _ in 0..max_iters {
            if !f.is_finite() {
                break;
            }
            let mut dir = two_loop(&g, &s_hist, &y_hist);
            let mut slope = dot(&g, &dir);
            if slope.is_nan() || slope >= 0.0 {
                // not a descent direction: fall back to steepest descent
                s_hist.clear();
                y_hist.clear();
                dir = g.iter().map(|x| -x).collect();
                slope = -dot(&g, &g);
            }
            if slope.abs() < 1e-300 {
                break;
            }
            let mut step = if s_hist.is_empty() {
                1.0 / norm(&g).max(1.0)
            } else {
                1.0
            };
            let mut accepted = None;
            for _ in 0..60 {
                let trial: Vec<f64> = p.iter().zip(&dir).map(|(x, d)| x + step * d).collect();
                let ft = self.value(&trial);
                if ft <= f + ARMIJO_C1 * step * slope {
                    accepted = Some((trial, ft));
                    break;
                }
                step *= 0.5;
            }
            let Some((trial, ft)) = accepted.or_else(|| self.golden_fallback(&p, &dir, f)) else {
                break;
            };
            let (ft, gt) = {
                let (v, gr) = self.value_and_gradient(&trial);
                debug_assert!((v - ft).abs() < 1e-9 || !v.is_finite());
                (v, gr)
            };
            if ft.is_nan() || ft > f {
                break;
            }
            let s: Vec<f64> = trial.iter().zip(&p).map(|(a, b)| a - b).collect();
            let y: Vec<f64> = gt.iter().zip(&g).map(|(a, b)| a - b).collect();
            if dot(&s, &y) > 1e-16 * norm(&s) * norm(&y) {
                if s_hist.len() == LBFGS_MEMORY {
                    s_hist.remove(0);
                    y_hist.remove(0);
                }
                s_hist.push(s);
                y_hist.push(y);
            }
            let improvement = f - ft;
            p = trial;
            f = ft;
            g = gt;
            history.push(f);
            if improvement <= 1e-15 * f.abs().max(1e-3) && norm(&g) < 1e-9 {
                break;
            }
            if improvement == 0.0 {
                break;
            }
        }
        Run {
            params: p,
            value: f,
            history,
        }
    }

    /// Golden-section search along `dir` when backtracking found no decrease.
    fn golden_fallback(&self, p: &[f64], dir: &[f64], f: f64) -> Option<(Vec<f64>, f64)> {
        let at = |t: f64| -> Vec<f64> { p.iter().zip(dir).map(|(x, d)| x + t * d).collect() };
        let scale = 1e-6 / norm(dir).max(1e-300);
        let (t, ft) = golden_section(|t| self.value(&at(t)), 0.0, scale, scale * 1e-6);
        (ft < f).then(|| (at(t), ft))
    }
}

fn canonical_term(t: ProductTerm) -> ProductTerm {
    let fold = |q: QubitAngles| {
        let mut polar = q.polar.rem_euclid(TAU);
        let mut azimuth = q.azimuth;
        if polar > PI {
            polar = TAU - polar;
            azimuth += PI;
        }
        QubitAngles {
            polar,
            azimuth: azimuth.rem_euclid(TAU),
        }
    };
    ProductTerm {
        a: fold(t.a),
        b: fold(t.b),
    }
}

fn apply(m: &ComplexMatrix, psi: &[Complex64; 4]) -> [Complex64; 4] {
    let mut out = [Complex64::new(0.0, 0.0); 4];
    for (i, o) in out.iter_mut().enumerate() {
        for (j, x) in psi.iter().enumerate() {
            *o += m[(i, j)] * x;
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

fn two_loop(g: &[f64], s_hist: &[Vec<f64>], y_hist: &[Vec<f64>]) -> Vec<f64> {
    let mut q: Vec<f64> = g.to_vec();
    let m = s_hist.len();
    let mut alpha = vec![0.0; m];
    for i in (0..m).rev() {
        let rho = 1.0 / dot(&y_hist[i], &s_hist[i]);
        alpha[i] = rho * dot(&s_hist[i], &q);
        for (qj, yj) in q.iter_mut().zip(&y_hist[i]) {
            *qj -= alpha[i] * yj;
        }
    }
    if let (Some(s), Some(y)) = (s_hist.last(), y_hist.last()) {
        let gamma = dot(s, y) / dot(y, y);
        q.iter_mut().for_each(|x| *x *= gamma);
    }
    for i in 0..m {
        let rho = 1.0 / dot(&y_hist[i], &s_hist[i]);
        let beta = rho * dot(&y_hist[i], &q);
        for (qj, sj) in q.iter_mut().zip(&s_hist[i]) {
            *qj += (alpha[i] - beta) * sj;
        }
    }
    q.iter_mut().for_each(|x| *x = -*x);
    q
}
