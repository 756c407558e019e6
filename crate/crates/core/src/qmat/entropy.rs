use super::eigen::jacobi;
use super::DensityMatrix;
use crate::{xlnx, Error, ExtReal, Result};

/// Eigenvalues at or below this magnitude count as exact zeros in entropy sums.
pub const ZERO_EIGENVALUE_EPS: f64 = 1e-14;
/// Threshold of the support-inclusion test in [`relative_entropy`].
pub const SUPPORT_EPS: f64 = 1e-12;

/// Von Neumann entropy `-tr(rho ln rho)` in nats.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let es = rho.eigensystem();
    let s: f64 = es
        .eigenvalues
        .iter()
        .filter(|&&l| l > ZERO_EIGENVALUE_EPS)
        .map(|&l| -xlnx(l))
        .sum();
    s.max(0.0)
}

/// Quantum relative entropy `S(rho || sigma) = tr(rho ln rho - rho ln sigma)`.
///
/// Returns [`ExtReal::PosInf`] when an eigenvector of `sigma` with eigenvalue
/// `<= 1e-12` carries more than `1e-12` of `rho`'s weight, i.e. when the
/// support of `rho` is not contained in the support of `sigma`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<ExtReal> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            left: rho.dim(),
            right: sigma.dim(),
        });
    }
    let neg_entropy: f64 = rho
        .eigensystem()
        .eigenvalues
        .iter()
        .filter(|&&l| l > ZERO_EIGENVALUE_EPS)
        .map(|&l| xlnx(l))
        .sum();

    let sigma_es = jacobi(sigma.matrix());
    let mut cross = 0.0;
    for (k, &lambda) in sigma_es.eigenvalues.iter().enumerate() {
        let weight = rho.matrix().expectation(&sigma_es.vector(k)).re;
        if lambda <= SUPPORT_EPS {
            if weight > SUPPORT_EPS {
                return Ok(ExtReal::PosInf);
            }
            continue;
        }
        cross -= weight * lambda.ln();
    }
    Ok(ExtReal::Finite((neg_entropy + cross).max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::ComplexMatrix;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::LN_2;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap();
        let m = g.matmul(&g.adjoint()).unwrap();
        let tr = m.trace().re;
        DensityMatrix::new(m.scale(1.0 / tr)).unwrap()
    }

    /// Haar-ish unitary from the eigenvectors of a random Hermitian matrix.
    fn random_unitary(rng: &mut ChaCha8Rng, dim: usize) -> ComplexMatrix {
        let h = random_density(rng, dim);
        h.eigensystem().eigenvectors
    }

    #[test]
    fn entropy_of_simple_states() {
        let pure = DensityMatrix::from_pure(&[c(0.6), c(0.8)]).unwrap();
        assert!(von_neumann_entropy(&pure) < 1e-14);
        let mixed = DensityMatrix::maximally_mixed(1).unwrap();
        assert!((von_neumann_entropy(&mixed) - LN_2).abs() < 1e-15);
        let d =
            DensityMatrix::new(ComplexMatrix::diagonal(&[1.0 / 3.0, 2.0 / 3.0]).unwrap()).unwrap();
        // (1/3) ln 3 + (2/3) ln(3/2)
        let expected = 3f64.ln() / 3.0 + 2.0 / 3.0 * 1.5f64.ln();
        assert!((von_neumann_entropy(&d) - expected).abs() < 1e-15);
        assert!((expected - 0.636514).abs() < 1e-6);
    }

    #[test]
    fn entropy_bounded_and_unitarily_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for i in 0..300 {
            let dim = [2, 4, 8][i % 3];
            let rho = random_density(&mut rng, dim);
            let s = von_neumann_entropy(&rho);
            assert!((0.0..=(dim as f64).ln() + 1e-12).contains(&s));
            let u = random_unitary(&mut rng, dim);
            let rotated = DensityMatrix::new(rho.matrix().conjugate_by(&u).unwrap()).unwrap();
            assert!((von_neumann_entropy(&rotated) - s).abs() <= 1e-9);
        }
    }

    #[test]
    fn relative_entropy_of_state_with_itself_is_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for dim in [2, 4, 8] {
            let rho = random_density(&mut rng, dim);
            let s = relative_entropy(&rho, &rho).unwrap().finite().unwrap();
            assert!(s.abs() < 1e-10, "{s}");
        }
        let pure = DensityMatrix::from_pure(&[c(0.0), c(1.0), c(1.0), c(0.0)]).unwrap();
        assert!(relative_entropy(&pure, &pure).unwrap().finite().unwrap() < 1e-10);
    }

    #[test]
    fn disjoint_supports_give_infinity() {
        let zero = DensityMatrix::from_pure(&[c(1.0), c(0.0)]).unwrap();
        let one = DensityMatrix::from_pure(&[c(0.0), c(1.0)]).unwrap();
        assert_eq!(relative_entropy(&zero, &one).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn bell_state_against_its_dephased_mixture() {
        let s = 1.0 / 2f64.sqrt();
        let bell = DensityMatrix::from_pure(&[c(0.0), c(s), c(s), c(0.0)]).unwrap();
        let sigma =
            DensityMatrix::new(ComplexMatrix::diagonal(&[0.0, 0.5, 0.5, 0.0]).unwrap()).unwrap();
        let value = relative_entropy(&bell, &sigma).unwrap().finite().unwrap();
        assert!((value - LN_2).abs() < 1e-14);
    }

    #[test]
    fn dimension_mismatch() {
        let a = DensityMatrix::maximally_mixed(1).unwrap();
        let b = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(
            relative_entropy(&a, &b).unwrap_err(),
            Error::DimensionMismatch { left: 2, right: 4 }
        );
    }

    #[test]
    fn relative_entropy_non_negative_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for i in 0..10_000 {
            let dim = [2, 4][i % 2];
            let rho = random_density(&mut rng, dim);
            let sigma = random_density(&mut rng, dim);
            let s = relative_entropy(&rho, &sigma).unwrap().finite().unwrap();
            assert!(s >= 0.0);
            // strictly positive unless the pair coincides
            if rho.matrix().max_abs_diff(sigma.matrix()) > 1e-6 {
                assert!(s > 0.0);
            }
        }
    }
}
