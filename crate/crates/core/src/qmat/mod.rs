//! Dense complex matrices on 1-3 qubits, Hermitian eigensystems, partial
//! trace/transpose and entropy functionals.
//!
//! Basis labels are computational-basis bit strings with qubit 0 as the most
//! significant (leftmost) bit, so `|q0 q1 q2>` has index `4 q0 + 2 q1 + q2`.

mod density;
pub(crate) mod eigen;
mod entropy;

pub use density::{is_ppt, partial_trace, partial_transpose, DensityMatrix, Subsystem};
pub use eigen::{hermitian_eigensystem, EigenSystem};
pub use entropy::{relative_entropy, von_neumann_entropy, SUPPORT_EPS, ZERO_EIGENVALUE_EPS};

use std::ops::{Index, IndexMut};

pub use num_complex::Complex64;

use crate::{Error, Result};

/// Tolerance of the Hermiticity check.
pub const HERMITIAN_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Result<Self> {
        check_dim(dim)?;
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Ok(Self { dim, data })
    }

    /// Builds a matrix from row-major complex entries.
    pub fn from_rows(dim: usize, entries: &[Complex64]) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Self {
            dim,
            data: entries.to_vec(),
        })
    }

    /// Builds a matrix from row-major real entries.
    pub fn from_real_rows(dim: usize, entries: &[f64]) -> Result<Self> {
        check_dim(dim)?;
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                left: dim * dim,
                right: entries.len(),
            });
        }
        Ok(Self {
            dim,
            data: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        })
    }

    pub fn diagonal(values: &[f64]) -> Result<Self> {
        let mut m = Self::zeros(values.len())?;
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = Complex64::new(v, 0.0);
        }
        Ok(m)
    }

    /// `|psi><psi|`
    pub fn outer(psi: &[Complex64]) -> Result<Self> {
        Self::from_fn(psi.len(), |i, j| psi[i] * psi[j].conj())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.data[i * n + j] = self.data[j * n + i].conj();
            }
        }
        out
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        Ok(Self { dim: n, data: out })
    }

    /// `U M U†`
    pub fn conjugate_by(&self, unitary: &Self) -> Result<Self> {
        unitary.matmul(self)?.matmul(&unitary.adjoint())
    }

    pub fn kron(&self, rhs: &Self) -> Result<Self> {
        let (n, m) = (self.dim, rhs.dim);
        Self::from_fn(n * m, |i, j| self[(i / m, j / m)] * rhs[(i % m, j % m)])
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// max |M[i,j] - conj(M[j,i])|
    pub fn hermiticity_deviation(&self) -> f64 {
        let n = self.dim;
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        dev
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Entrywise max-norm distance.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "max_abs_diff on mismatched dimensions");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<v| M |v>`
    pub fn expectation(&self, v: &[Complex64]) -> Complex64 {
        let n = self.dim;
        let mut acc = Complex64::new(0.0, 0.0);
        for (i, vi) in v.iter().enumerate().take(n) {
            let row: Complex64 = self.data[i * n..(i + 1) * n]
                .iter()
                .zip(v)
                .map(|(m, x)| m * x)
                .sum();
            acc += vi.conj() * row;
        }
        acc
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 | 8 => Ok(()),
        _ => Err(Error::UnsupportedDimension(dim)),
    }
}

/// Number of qubits for a supported dimension.
pub(crate) fn qubits_of(dim: usize) -> usize {
    dim.trailing_zeros() as usize
}
