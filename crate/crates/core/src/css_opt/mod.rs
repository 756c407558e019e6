//! Numerical routes to the relative entropy of entanglement and checks on the
//! closest separable state (CSS).
//!
//! * [`minimize_g`] / [`ree_numeric_restricted`]: two-angle minimization over
//!   boundary separable states of the invariant family.
//! * [`ree_numeric_general`]: minimization over explicit mixtures of product
//!   states, an upper bound on the REE of any two-qubit state.
//! * [`verify_css`]: positivity, partial-transpose singularity and relative
//!   entropy of a candidate CSS.

mod general;
mod restricted;
pub mod search;

pub use general::{
    ree_numeric_general, GeneralConfig, GeneralOutcome, ProductMixtureAnsatz, ProductTerm,
    QubitAngles,
};
pub use restricted::{
    css_from_angles, epsilon_monotonicity_probe, g_objective, minimize_g, ree_numeric_restricted,
    ProbeReference, GRID_POINTS,
};

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex64;

use crate::qmat::{partial_transpose, relative_entropy, ComplexMatrix, DensityMatrix, Subsystem};
use crate::{Error, ExtReal, Result};

const CANDIDATE_TOL: f64 = 1e-12;

/// A separable state of the U⊗U-invariant family:
///
/// ```text
/// | x 0        0         0 |
/// | 0 u        r e^{iθ}   0 |
/// | 0 r e^{-iθ} v         0 |
/// | 0 0        0         y |
/// ```
///
/// with `uv >= r²` (positivity) and `xy >= r²` (positive partial transpose).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeparableCandidate {
    pub x: f64,
    pub u: f64,
    pub v: f64,
    pub y: f64,
    pub r: f64,
    pub theta: f64,
}

impl SeparableCandidate {
    pub fn new(x: f64, u: f64, v: f64, y: f64, r: f64, theta: f64) -> Result<Self> {
        let all = [x, u, v, y, r, theta];
        if all.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidParameters(
                "non-finite candidate parameter".into(),
            ));
        }
        if [x, u, v, y, r].iter().any(|&p| p < -CANDIDATE_TOL) {
            return Err(Error::InvalidParameters(
                "candidate populations must be non-negative".into(),
            ));
        }
        if (x + u + v + y - 1.0).abs() > CANDIDATE_TOL {
            return Err(Error::InvalidParameters(format!(
                "candidate populations sum to {}",
                x + u + v + y
            )));
        }
        if u * v - r * r < -CANDIDATE_TOL {
            return Err(Error::InvalidParameters("uv - r² < 0: not positive".into()));
        }
        if x * y - r * r < -CANDIDATE_TOL {
            return Err(Error::InvalidParameters("xy - r² < 0: not PPT".into()));
        }
        Ok(Self {
            x,
            u,
            v,
            y,
            r,
            theta: theta.rem_euclid(TAU),
        })
    }

    pub fn to_density(&self) -> DensityMatrix {
        let zero = Complex64::new(0.0, 0.0);
        let re = |p: f64| Complex64::new(p.max(0.0), 0.0);
        let coh = Complex64::from_polar(self.r, self.theta);
        #[rustfmt::skip]
        let entries = [
            re(self.x), zero, zero, zero,
            zero, re(self.u), coh, zero,
            zero, coh.conj(), re(self.v), zero,
            zero, zero, zero, re(self.y),
        ];
        DensityMatrix::from_trusted(ComplexMatrix::from_rows(4, &entries).expect("4x4"))
    }
}

/// Two angles in `[0, π/2]` parametrizing boundary candidates through
/// `x = cos²θ₁cos²θ₂`, `u = sin²θ₁cos²θ₂`, `v = cos²θ₁sin²θ₂`, `y = sin²θ₁sin²θ₂`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleParams {
    theta1: f64,
    theta2: f64,
}

impl AngleParams {
    pub fn new(theta1: f64, theta2: f64) -> Result<Self> {
        for t in [theta1, theta2] {
            if !(0.0..=FRAC_PI_2).contains(&t) {
                return Err(Error::OutOfRange {
                    what: "angles must lie in [0, π/2]",
                    value: t,
                });
            }
        }
        Ok(Self { theta1, theta2 })
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    /// `(x, u, v, y)`
    pub fn populations(&self) -> [f64; 4] {
        let (s1, c1) = sin_cos(self.theta1);
        let (s2, c2) = sin_cos(self.theta2);
        let (c1s, s1s, c2s, s2s) = (c1 * c1, s1 * s1, c2 * c2, s2 * s2);
        [c1s * c2s, s1s * c2s, c1s * s2s, s1s * s2s]
    }
}

/// `sin_cos` that is exact at the endpoints of `[0, π/2]`.
pub(crate) fn sin_cos(t: f64) -> (f64, f64) {
    if t == FRAC_PI_2 {
        (1.0, 0.0)
    } else {
        t.sin_cos()
    }
}

/// Spectral data of a candidate CSS against a target state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CssReport {
    /// Minimum eigenvalue of the partial transpose on A.
    pub ppt_min_eigenvalue: f64,
    pub sigma_min_eigenvalue: f64,
    /// The smaller of the two minima: distance from the separable boundary.
    pub boundary_gap: f64,
    pub relative_entropy_value: ExtReal,
}

pub fn verify_css(rho: &DensityMatrix, sigma: &SeparableCandidate) -> Result<CssReport> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: 4,
        });
    }
    let sigma = sigma.to_density();
    let sigma_min_eigenvalue = sigma.eigensystem().min_eigenvalue();
    let pt = partial_transpose(sigma.matrix(), Subsystem::A)?;
    let ppt_min_eigenvalue = crate::qmat::hermitian_eigensystem(&pt)?.min_eigenvalue();
    Ok(CssReport {
        ppt_min_eigenvalue,
        sigma_min_eigenvalue,
        boundary_gap: ppt_min_eigenvalue.min(sigma_min_eigenvalue),
        relative_entropy_value: relative_entropy(rho, &sigma)?,
    })
}
