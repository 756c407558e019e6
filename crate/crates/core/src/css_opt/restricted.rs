use std::f64::consts::FRAC_PI_2;

use super::search::golden_section;
use super::{AngleParams, SeparableCandidate};
use crate::xfamily::{degenerate_ree, XState};
use crate::{xlnx, Error, ExtReal, Result};

/// Grid points per axis of the global stage of [`minimize_g`].
pub const GRID_POINTS: usize = 256;

const LOG_FLOOR: f64 = 1e-300;
const REFINE_WIDTH: f64 = 1e-12;
const MAX_REFINE_SWEEPS: usize = 2000;

/// Precomputed pieces of
/// `g(θ₁,θ₂) = a ln a + 2(1-a) ln(1-a) - a ln(cos²θ₁cos²θ₂)
///            - (1-a) ln[(√b sinθ₁cosθ₂ + √c cosθ₁sinθ₂)²]`.
struct GFunction {
    a: f64,
    one_minus_a: f64,
    sqrt_b: f64,
    sqrt_c: f64,
    offset: f64,
}

impl GFunction {
    fn new(s: &XState) -> Result<Self> {
        if !s.is_interior() {
            return Err(Error::DegenerateInput("g objective needs a, b, c > 0"));
        }
        let one_minus_a = s.b() + s.c();
        Ok(Self {
            a: s.a(),
            one_minus_a,
            sqrt_b: s.b().sqrt(),
            sqrt_c: s.c().sqrt(),
            offset: xlnx(s.a()) + 2.0 * xlnx(one_minus_a),
        })
    }

    #[inline]
    fn eval_trig(&self, s1: f64, c1: f64, s2: f64, c2: f64) -> f64 {
        let x = (c1 * c2) * (c1 * c2);
        let q = self.sqrt_b * s1 * c2 + self.sqrt_c * c1 * s2;
        let q2 = q * q;
        if x < LOG_FLOOR || q2 < LOG_FLOOR {
            return f64::INFINITY;
        }
        self.offset - self.a * x.ln() - self.one_minus_a * q2.ln()
    }

    #[inline]
    fn eval(&self, t1: f64, t2: f64) -> f64 {
        let (s1, c1) = super::sin_cos(t1);
        let (s2, c2) = super::sin_cos(t2);
        self.eval_trig(s1, c1, s2, c2)
    }
}

/// Evaluates `g` at the given angles; `+∞` where a logarithm's argument falls
/// below `1e-300`.
pub fn g_objective(s: &XState, angles: &AngleParams) -> Result<ExtReal> {
    let g = GFunction::new(s)?;
    Ok(ExtReal::from_f64(g.eval(angles.theta1(), angles.theta2())))
}

/// Global minimum of `g` over `[0, π/2]²`.
///
/// A cell-centred 256×256 grid locates the basin; alternating golden-section
/// line searches on each angle then refine it to bracket width `1e-12`.
pub fn minimize_g(s: &XState) -> Result<(AngleParams, f64)> {
    let g = GFunction::new(s)?;
    let h = FRAC_PI_2 / GRID_POINTS as f64;
    let trig: Vec<(f64, f64)> = (0..GRID_POINTS)
        .map(|i| ((i as f64 + 0.5) * h).sin_cos())
        .collect();

    let (mut best_i, mut best_j, mut best) = (0, 0, f64::INFINITY);
    for (i, &(s1, c1)) in trig.iter().enumerate() {
        for (j, &(s2, c2)) in trig.iter().enumerate() {
            let v = g.eval_trig(s1, c1, s2, c2);
            if v < best {
                (best_i, best_j, best) = (i, j, v);
            }
        }
    }
    let mut t1 = (best_i as f64 + 0.5) * h;
    let mut t2 = (best_j as f64 + 0.5) * h;

    // coordinate descent; each window spans the neighbouring grid cells
    for _ in 0..MAX_REFINE_SWEEPS {
        let prev = (t1, t2, best);
        let (n1, v1) = golden_section(
            |t| g.eval(t, t2),
            (t1 - h).max(0.0),
            (t1 + h).min(FRAC_PI_2),
            REFINE_WIDTH,
        );
        if v1 <= best {
            (t1, best) = (n1, v1);
        }
        let (n2, v2) = golden_section(
            |t| g.eval(t1, t),
            (t2 - h).max(0.0),
            (t2 + h).min(FRAC_PI_2),
            REFINE_WIDTH,
        );
        if v2 <= best {
            (t2, best) = (n2, v2);
        }
        let moved = (t1 - prev.0).abs().max((t2 - prev.1).abs());
        if moved <= REFINE_WIDTH || prev.2 - best <= 0.0 {
            break;
        }
    }
    Ok((AngleParams::new(t1, t2)?, best))
}

/// Boundary candidate at the given angles: `r = √(xy)` and zero phase.
pub fn css_from_angles(angles: &AngleParams) -> SeparableCandidate {
    let [x, u, v, y] = angles.populations();
    let r = (x * y).sqrt();
    SeparableCandidate::new(x, u, v, y, r, 0.0).expect("angle parametrization is separable")
}

/// REE via the two-angle minimization, with degenerate points resolved
/// analytically.
pub fn ree_numeric_restricted(s: &XState) -> f64 {
    match degenerate_ree(s) {
        Some(v) => v,
        None => minimize_g(s).expect("interior point").1.max(0.0),
    }
}

/// Fixed `(x, u, v)` of the reference candidate used by
/// [`epsilon_monotonicity_probe`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeReference {
    pub x: f64,
    pub u: f64,
    pub v: f64,
}

/// `f(θ, ε) = -a ln x - (1-a) ln[bu + 2√(bc)√(uv-ε) cosθ + cv]` at each `ε`.
pub fn epsilon_monotonicity_probe(
    s: &XState,
    theta: f64,
    reference: &ProbeReference,
    epsilons: &[f64],
) -> Result<Vec<ExtReal>> {
    if !s.is_interior() {
        return Err(Error::DegenerateInput("probe needs a, b, c > 0"));
    }
    let ProbeReference { x, u, v } = *reference;
    if !(x > 0.0 && u >= 0.0 && v >= 0.0 && x + u + v <= 1.0 + 1e-12) {
        return Err(Error::InvalidParameters(format!(
            "bad probe reference {reference:?}"
        )));
    }
    let uv = u * v;
    for w in epsilons.windows(2) {
        if w[1] < w[0] {
            return Err(Error::OutOfRange {
                what: "epsilons must be ascending",
                value: w[1],
            });
        }
    }
    let (a, b, c) = (s.a(), s.b(), s.c());
    let coherence = 2.0 * (b * c).sqrt() * theta.cos();
    epsilons
        .iter()
        .map(|&eps| {
            if !(0.0..=uv).contains(&eps) {
                return Err(Error::OutOfRange {
                    what: "epsilon must lie in [0, uv]",
                    value: eps,
                });
            }
            let arg = b * u + coherence * (uv - eps).sqrt() + c * v;
            if arg < LOG_FLOOR {
                return Ok(ExtReal::PosInf);
            }
            Ok(ExtReal::Finite(-a * x.ln() - (b + c) * arg.ln()))
        })
        .collect()
}
