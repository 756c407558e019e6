//! Relative entropy of entanglement (REE) for the rank-2 two-qubit reductions of
//! generalized three-qubit W states, together with numerical oracles and a
//! monogamy audit over the W-state amplitude simplex.
//!
//! All entropies are in nats. Conversion to bits happens only when values are
//! presented (see [`output::LogBase`]).

pub mod css_opt;
pub mod error;
pub mod ext;
pub mod monogamy;
pub mod output;
pub mod qmat;
pub mod verify;
pub mod xfamily;

pub use error::{Error, Result};
pub use ext::ExtReal;

/// Values below this are treated as exactly zero by the degenerate-case branches.
pub const DEGENERATE_EPS: f64 = 1e-12;

/// `p ln p` with the convention `0 ln 0 = 0`.
#[inline]
pub fn xlnx(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        p * p.ln()
    }
}

/// Binary entropy in nats.
#[inline]
pub fn binary_entropy(p: f64) -> f64 {
    -xlnx(p) - xlnx(1.0 - p)
}
