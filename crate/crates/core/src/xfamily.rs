//! The rank-2 two-qubit family
//!
//! ```text
//! | a  0       0       0 |
//! | 0  b       sqrt(bc) 0 |
//! | 0  sqrt(bc) c       0 |
//! | 0  0       0       0 |      a + b + c = 1
//! ```
//!
//! and its closed-form relative entropy of entanglement.

use num_complex::Complex64;

use crate::qmat::{ComplexMatrix, DensityMatrix};
use crate::{xlnx, Error, Result, DEGENERATE_EPS};

const SIMPLEX_TOL: f64 = 1e-12;

/// Populations `(a, b, c)` of `a|00><00| + (sqrt(b)|01> + sqrt(c)|10>)(h.c.)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XState {
    a: f64,
    b: f64,
    c: f64,
}

impl XState {
    /// Accepts components down to `-1e-12` (clamped to zero) summing to one
    /// within `1e-12`.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let finite = a.is_finite() && b.is_finite() && c.is_finite();
        if !finite || a < -SIMPLEX_TOL || b < -SIMPLEX_TOL || c < -SIMPLEX_TOL {
            return Err(Error::InvalidParameters(format!(
                "populations ({a}, {b}, {c}) must be non-negative"
            )));
        }
        let sum = a + b + c;
        if (sum - 1.0).abs() > SIMPLEX_TOL {
            return Err(Error::InvalidParameters(format!(
                "populations ({a}, {b}, {c}) sum to {sum}, expected 1"
            )));
        }
        Ok(Self {
            a: a.max(0.0),
            b: b.max(0.0),
            c: c.max(0.0),
        })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// The same state with `b` and `c` exchanged (conjugation by SWAP).
    pub fn swapped(&self) -> Self {
        Self {
            a: self.a,
            b: self.c,
            c: self.b,
        }
    }

    /// True when `a`, `b` and `c` all exceed the degenerate threshold.
    pub fn is_interior(&self) -> bool {
        self.a > DEGENERATE_EPS && self.b > DEGENERATE_EPS && self.c > DEGENERATE_EPS
    }

    pub fn to_density(&self) -> DensityMatrix {
        DensityMatrix::from_trusted(self.matrix())
    }

    fn matrix(&self) -> ComplexMatrix {
        let r = (self.b * self.c).sqrt();
        #[rustfmt::skip]
        let entries = [
            self.a, 0.0, 0.0, 0.0,
            0.0, self.b, r, 0.0,
            0.0, r, self.c, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ];
        ComplexMatrix::from_real_rows(4, &entries).expect("4x4")
    }
}

/// Recovers `(a, b, c)` from a two-qubit density matrix that matches the
/// family entrywise within `tol`.
pub fn from_density(rho: &DensityMatrix, tol: f64) -> Result<XState> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: rho.qubits(),
        });
    }
    if tol.is_nan() || tol < 0.0 {
        return Err(Error::OutOfRange {
            what: "tolerance must be non-negative",
            value: tol,
        });
    }
    let m = rho.matrix();
    let (a, b, c) = (m[(0, 0)].re, m[(1, 1)].re, m[(2, 2)].re);
    let pattern = XState {
        a: a.max(0.0),
        b: b.max(0.0),
        c: c.max(0.0),
    }
    .matrix();
    let max_deviation = m.max_abs_diff(&pattern);
    if max_deviation > tol {
        return Err(Error::NotInFamily { max_deviation });
    }
    let sum = a.max(0.0) + b.max(0.0) + c.max(0.0);
    XState::new(a.max(0.0) / sum, b.max(0.0) / sum, c.max(0.0) / sum)
}

/// The discriminant and the two auxiliary parameters of the closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormParts {
    pub delta_disc: f64,
    pub m_param: f64,
    pub n_param: f64,
}

/// `Δ = (b-c)² + 4a²bc`,
/// `M = (√Δ + b - c - 2a²b) / (2ab(1+a))`,
/// `N = (√Δ - b + c - 2a²c) / (2ac(1+a))`.
///
/// Evaluated in a rationalized form free of cancellation: with
/// `p = √Δ + |b-c|` and `s = b + c + √Δ`, the larger-population side is
/// `(b+c) p / (a s)` and the other is `4abc(b+c) / (p s)`.
pub fn closed_form_parts(s: &XState) -> Result<ClosedFormParts> {
    let (a, b, c) = (s.a, s.b, s.c);
    if a <= DEGENERATE_EPS || a >= 1.0 - DEGENERATE_EPS {
        return Err(Error::DegenerateInput("closed form needs 0 < a < 1"));
    }
    if b <= DEGENERATE_EPS || c <= DEGENERATE_EPS {
        return Err(Error::DegenerateInput("closed form needs b > 0 and c > 0"));
    }
    let delta_disc = (b - c) * (b - c) + 4.0 * a * a * b * c;
    let root = delta_disc.sqrt();
    let one_minus_a = b + c;
    let p = root + (b - c).abs();
    let s_sum = b + c + root;
    let large = one_minus_a * p / (a * s_sum);
    let small = 4.0 * a * b * c * one_minus_a / (p * s_sum);
    let (m_param, n_param) = if b >= c {
        (large, small)
    } else {
        (small, large)
    };
    Ok(ClosedFormParts {
        delta_disc,
        m_param,
        n_param,
    })
}

/// Relative entropy of entanglement in nats.
///
/// Interior points use
/// `a ln a + 2(1-a) ln(1-a) + ln[(1+M)(1+N)] - (b+c) ln(bM + 2√(bcMN) + cN)`.
/// Degenerate points are resolved analytically: `bc = 0` (which includes
/// `a = 1`) is diagonal and separable, and `a = 0` is the pure state
/// `√b|01> + √c|10>` with REE `-b ln b - c ln c`.
pub fn ree_closed_form(s: &XState) -> f64 {
    if let Some(v) = degenerate_ree(s) {
        return v;
    }
    let parts = closed_form_parts(s).expect("interior point");
    let (a, b, c) = (s.a, s.b, s.c);
    let (m, n) = (parts.m_param, parts.n_param);
    let one_minus_a = b + c;
    let inner = b * m + 2.0 * (b * c * m * n).sqrt() + c * n;
    let value =
        xlnx(a) + 2.0 * xlnx(one_minus_a) + (m.ln_1p() + n.ln_1p()) - one_minus_a * inner.ln();
    value.max(0.0)
}

/// Analytic value for degenerate points, `None` for interior ones.
pub(crate) fn degenerate_ree(s: &XState) -> Option<f64> {
    if s.b <= DEGENERATE_EPS || s.c <= DEGENERATE_EPS {
        return Some(0.0);
    }
    if s.a <= DEGENERATE_EPS {
        let norm = s.b + s.c;
        let (b, c) = (s.b / norm, s.c / norm);
        return Some(-xlnx(b) - xlnx(c));
    }
    None
}

/// `(1-λ) ln(1-λ) + (λ-2) ln(1-λ/2)` for the mixture
/// `(1-λ)|00><00| + λ|Ψ+><Ψ+|`.
pub fn ree_vedral_plenio(lambda: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&lambda) {
        return Err(Error::OutOfRange {
            what: "lambda must lie in [0, 1]",
            value: lambda,
        });
    }
    // (λ-2) ln(1-λ/2) = -2 (1-λ/2) ln(1-λ/2)
    Ok((xlnx(1.0 - lambda) - 2.0 * xlnx(1.0 - lambda / 2.0)).max(0.0))
}

/// The U⊗U*-invariant rank-2 form
///
/// ```text
/// | b 0 0 f |
/// | 0 a 0 0 |
/// | 0 0 0 0 |
/// | f 0 0 c |
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UxConjugateState {
    a: f64,
    b: f64,
    c: f64,
    f: f64,
}

impl UxConjugateState {
    pub fn new(a: f64, b: f64, c: f64, f: f64) -> Result<Self> {
        XState::new(a, b, c)?;
        if !f.is_finite() || f * f > b * c + SIMPLEX_TOL {
            return Err(Error::InvalidParameters(format!(
                "coherence {f} violates f² <= bc"
            )));
        }
        Ok(Self { a, b, c, f })
    }

    pub fn f(&self) -> f64 {
        self.f
    }

    pub fn to_density(&self) -> DensityMatrix {
        let (a, b, c, f) = (self.a.max(0.0), self.b.max(0.0), self.c.max(0.0), self.f);
        #[rustfmt::skip]
        let entries = [
            b, 0.0, 0.0, f,
            0.0, a, 0.0, 0.0,
            0.0, 0.0, 0.0, 0.0,
            f, 0.0, 0.0, c,
        ];
        DensityMatrix::from_trusted(ComplexMatrix::from_real_rows(4, &entries).expect("4x4"))
    }
}

/// Maps the corner form onto the X family by a bit flip on qubit B
/// (`00 <-> 01`, `10 <-> 11`). Only `f = sqrt(bc)` is supported.
pub fn ux_conjugate_to_ux(s: &UxConjugateState) -> Result<XState> {
    let expected = (s.b.max(0.0) * s.c.max(0.0)).sqrt();
    if (s.f - expected).abs() > 1e-10 {
        return Err(Error::UnsupportedCoherence { f: s.f, expected });
    }
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let flip = ComplexMatrix::from_rows(2, &[zero, one, one, zero])?;
    let flip_b = ComplexMatrix::identity(2)?.kron(&flip)?;
    let flipped = s.to_density().matrix().conjugate_by(&flip_b)?;
    from_density(&DensityMatrix::from_trusted(flipped), 1e-10)
}
