use num_complex::Complex64;

use super::eigen::jacobi;
use super::{qubits_of, ComplexMatrix, EigenSystem, HERMITIAN_TOL};
use crate::{Error, Result};

const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-10;

/// A Hermitian, positive-semidefinite, unit-trace matrix on 1-3 qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        let deviation = matrix.hermiticity_deviation();
        if deviation > HERMITIAN_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::BadTrace { trace });
        }
        let min_eigenvalue = jacobi(&matrix).min_eigenvalue();
        if min_eigenvalue < -PSD_TOL {
            return Err(Error::NotPositive { min_eigenvalue });
        }
        Ok(Self { matrix })
    }

    /// Projector onto a pure state; the vector is normalized first.
    pub fn from_pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidParameters("zero state vector".into()));
        }
        let unit: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Self::new(ComplexMatrix::outer(&unit)?)
    }

    pub fn maximally_mixed(qubits: usize) -> Result<Self> {
        let dim = 1usize << qubits;
        Self::new(ComplexMatrix::identity(dim)?.scale(1.0 / dim as f64))
    }

    /// Skips validation; callers guarantee the invariants hold.
    pub(crate) fn from_trusted(matrix: ComplexMatrix) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn qubits(&self) -> usize {
        qubits_of(self.dim())
    }

    pub fn eigensystem(&self) -> EigenSystem {
        jacobi(&self.matrix)
    }

    pub fn kron(&self, other: &Self) -> Result<Self> {
        Ok(Self::from_trusted(self.matrix.kron(&other.matrix)?))
    }
}

/// Two-qubit subsystem label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    A,
    B,
}

/// Traces out `traced_qubit` (qubit 0 is the leftmost label).
pub fn partial_trace(rho: &DensityMatrix, traced_qubit: usize) -> Result<DensityMatrix> {
    let n = rho.qubits();
    if n < 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: n,
        });
    }
    if traced_qubit >= n {
        return Err(Error::IndexOutOfRange {
            index: traced_qubit,
            qubits: n,
        });
    }
    let bit = n - 1 - traced_qubit;
    let low_mask = (1usize << bit) - 1;
    // inserts a value for the traced bit into a reduced index
    let expand = |r: usize, t: usize| ((r & !low_mask) << 1) | (t << bit) | (r & low_mask);
    let m = rho.matrix();
    let out = ComplexMatrix::from_fn(rho.dim() / 2, |i, j| {
        m[(expand(i, 0), expand(j, 0))] + m[(expand(i, 1), expand(j, 1))]
    })?;
    Ok(DensityMatrix::from_trusted(out))
}

/// Partial transpose of a two-qubit matrix on the given subsystem.
///
/// This is a pure permutation of entries, so applying it twice reproduces the
/// input bit for bit.
pub fn partial_transpose(rho: &ComplexMatrix, subsystem: Subsystem) -> Result<ComplexMatrix> {
    if rho.dim() != 4 {
        return Err(Error::WrongDimension {
            expected: 2,
            actual: qubits_of(rho.dim()),
        });
    }
    let mask = match subsystem {
        Subsystem::A => 0b10,
        Subsystem::B => 0b01,
    };
    ComplexMatrix::from_fn(4, |i, j| {
        let (i2, j2) = ((i & !mask) | (j & mask), (j & !mask) | (i & mask));
        rho[(i2, j2)]
    })
}

/// True iff the minimum eigenvalue of the partial transpose is at least `-tol`.
pub fn is_ppt(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    if tol < 0.0 {
        return Err(Error::OutOfRange {
            what: "PPT tolerance must be non-negative",
            value: tol,
        });
    }
    let pt = partial_transpose(rho.matrix(), Subsystem::A)?;
    Ok(jacobi(&pt).min_eigenvalue() >= -tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmat::hermitian_eigensystem;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn ket(bits: usize, dim: usize) -> Vec<Complex64> {
        (0..dim)
            .map(|i| c(if i == bits { 1.0 } else { 0.0 }))
            .collect()
    }

    fn bell_psi_plus() -> DensityMatrix {
        let s = 1.0 / 2f64.sqrt();
        DensityMatrix::from_pure(&[c(0.0), c(s), c(s), c(0.0)]).unwrap()
    }

    fn random_density(rng: &mut ChaCha8Rng, dim: usize) -> DensityMatrix {
        // G G† / tr
        let g = ComplexMatrix::from_fn(dim, |_, _| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        })
        .unwrap();
        let m = g.matmul(&g.adjoint()).unwrap();
        let tr = m.trace().re;
        DensityMatrix::new(m.scale(1.0 / tr)).unwrap()
    }

    #[test]
    fn validation_rejects_bad_matrices() {
        let bad_trace = ComplexMatrix::diagonal(&[0.5, 0.4]).unwrap();
        assert!(matches!(
            DensityMatrix::new(bad_trace),
            Err(Error::BadTrace { .. })
        ));
        let negative = ComplexMatrix::diagonal(&[1.5, -0.5]).unwrap();
        assert!(matches!(
            DensityMatrix::new(negative),
            Err(Error::NotPositive { .. })
        ));
        let mut skew = ComplexMatrix::diagonal(&[0.5, 0.5]).unwrap();
        skew[(0, 1)] = Complex64::new(0.0, 0.1);
        assert!(matches!(
            DensityMatrix::new(skew),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn trace_of_product_state() {
        let rho = DensityMatrix::from_pure(&ket(0b00, 4)).unwrap();
        let reduced = partial_trace(&rho, 1).unwrap();
        assert_eq!(
            reduced.matrix(),
            &ComplexMatrix::diagonal(&[1.0, 0.0]).unwrap()
        );
    }

    #[test]
    fn tracing_a_product_factor_returns_the_other() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_density(&mut rng, 2);
        let b = random_density(&mut rng, 4);
        let ab = a.kron(&b).unwrap();
        let back = partial_trace(&ab, 0).unwrap();
        assert!(back.matrix().max_abs_diff(b.matrix()) < 1e-15);
        let a_back = partial_trace(&partial_trace(&ab, 2).unwrap(), 1).unwrap();
        assert!(a_back.matrix().max_abs_diff(a.matrix()) < 1e-15);
    }

    #[test]
    fn w_state_reductions_match_closed_matrices() {
        let s = 1.0 / 3f64.sqrt();
        let mut psi = vec![c(0.0); 8];
        psi[0b001] = c(s);
        psi[0b010] = c(s);
        psi[0b100] = c(s);
        let w = DensityMatrix::from_pure(&psi).unwrap();
        let t = 1.0 / 3.0;
        #[rustfmt::skip]
        let expected = ComplexMatrix::from_real_rows(4, &[
            t, 0.0, 0.0, 0.0,
            0.0, t, t, 0.0,
            0.0, t, t, 0.0,
            0.0, 0.0, 0.0, 0.0,
        ]).unwrap();
        // tracing C and tracing B give the same matrix at equal amplitudes
        for traced in [2, 1] {
            let r = partial_trace(&w, traced).unwrap();
            assert!(
                r.matrix().max_abs_diff(&expected) < 1e-15,
                "traced qubit {traced}"
            );
        }
    }

    #[test]
    fn partial_trace_index_errors() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert_eq!(
            partial_trace(&rho, 2).unwrap_err(),
            Error::IndexOutOfRange {
                index: 2,
                qubits: 2
            }
        );
        let single = DensityMatrix::maximally_mixed(1).unwrap();
        assert!(matches!(
            partial_trace(&single, 0),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn partial_trace_preserves_trace_and_positivity() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..500 {
            let rho = random_density(&mut rng, 8);
            for q in 0..3 {
                let r = partial_trace(&rho, q).unwrap();
                assert!((r.matrix().trace().re - 1.0).abs() < 1e-12);
                assert!(r.matrix().is_hermitian(1e-14));
                assert!(r.eigensystem().min_eigenvalue() > -1e-12);
            }
        }
    }

    #[test]
    fn bell_partial_transpose_min_eigenvalue() {
        let pt = partial_transpose(bell_psi_plus().matrix(), Subsystem::A).unwrap();
        let min = hermitian_eigensystem(&pt).unwrap().min_eigenvalue();
        assert!((min + 0.5).abs() < 1e-14);
        assert!(!is_ppt(&bell_psi_plus(), 1e-9).unwrap());
    }

    #[test]
    fn product_states_are_ppt() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let rho = random_density(&mut rng, 2)
                .kron(&random_density(&mut rng, 2))
                .unwrap();
            assert!(is_ppt(&rho, 1e-12).unwrap());
        }
        assert!(is_ppt(&DensityMatrix::from_pure(&ket(0, 4)).unwrap(), 0.0).unwrap());
    }

    #[test]
    fn boundary_separable_state_is_ppt_and_singular() {
        // x = u = v = y = r = 1/4: xy - r^2 = 0
        let q = 0.25;
        #[rustfmt::skip]
        let sigma = ComplexMatrix::from_real_rows(4, &[
            q, 0.0, 0.0, 0.0,
            0.0, q, q, 0.0,
            0.0, q, q, 0.0,
            0.0, 0.0, 0.0, q,
        ]).unwrap();
        let rho = DensityMatrix::new(sigma.clone()).unwrap();
        assert!(is_ppt(&rho, 1e-12).unwrap());
        let pt = partial_transpose(&sigma, Subsystem::A).unwrap();
        let min = hermitian_eigensystem(&pt).unwrap().min_eigenvalue();
        assert!(min.abs() < 1e-15, "{min}");
    }

    #[test]
    fn partial_transpose_is_a_bitwise_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let rho = random_density(&mut rng, 4);
            for sub in [Subsystem::A, Subsystem::B] {
                let once = partial_transpose(rho.matrix(), sub).unwrap();
                assert_eq!(&partial_transpose(&once, sub).unwrap(), rho.matrix());
                assert_eq!(once.trace(), rho.matrix().trace());
            }
        }
        let three = DensityMatrix::maximally_mixed(3).unwrap();
        assert!(matches!(
            partial_transpose(three.matrix(), Subsystem::A),
            Err(Error::WrongDimension { .. })
        ));
    }

    #[test]
    fn is_ppt_rejects_negative_tolerance() {
        let rho = DensityMatrix::maximally_mixed(2).unwrap();
        assert!(matches!(is_ppt(&rho, -1.0), Err(Error::OutOfRange { .. })));
    }
}
