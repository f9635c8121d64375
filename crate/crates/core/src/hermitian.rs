//! Dense complex Hermitian matrices with a cyclic Jacobi eigensolver.
//!
//! Every other module is built on top of these primitives. Matrices are
//! immutable after construction; hermiticity is enforced by symmetrizing
//! `(A + A†)/2` and rejecting inputs whose correction exceeds 1e-12.

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Maximum per-component correction tolerated when symmetrizing input.
pub const HERMITICITY_TOL: f64 = 1e-12;
/// Jacobi sweep cap; non-convergence past this is an error.
pub const MAX_SWEEPS: usize = 100;

/// A `d x d` complex Hermitian matrix, stored dense in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp {
    dim: usize,
    entries: Vec<Complex64>,
}

impl HermitianOp {
    /// Builds a matrix from row-major entries, symmetrizing `(A + A†)/2`.
    /// Fails if the symmetrization correction exceeds [`HERMITICITY_TOL`].
    pub fn new(dim: usize, entries: Vec<Complex64>) -> Result<Self> {
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        if entries.len() != dim * dim {
            return Err(Error::DimensionMismatch(entries.len(), dim * dim));
        }
        let mut sym = entries.clone();
        let mut max_correction: f64 = 0.0;
        for j in 0..dim {
            for k in j..dim {
                let a = entries[j * dim + k];
                let b = entries[k * dim + j].conj();
                let avg = 0.5 * (a + b);
                max_correction = max_correction.max((a - avg).norm());
                sym[j * dim + k] = avg;
                sym[k * dim + j] = avg.conj();
            }
        }
        if max_correction > HERMITICITY_TOL {
            return Err(Error::NotHermitian(max_correction));
        }
        Ok(Self { dim, entries: sym })
    }

    /// Builds a matrix entry by entry; `f(row, col)` must be Hermitian.
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> Complex64) -> Result<Self> {
        let mut entries = Vec::with_capacity(dim * dim);
        for j in 0..dim {
            for k in 0..dim {
                entries.push(f(j, k));
            }
        }
        Self::new(dim, entries)
    }

    pub fn identity(dim: usize) -> Self {
        Self::scaled_identity(dim, 1.0)
    }

    pub fn scaled_identity(dim: usize, scale: f64) -> Self {
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for j in 0..dim {
            entries[j * dim + j] = Complex64::new(scale, 0.0);
        }
        Self { dim, entries }
    }

    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            entries: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    /// Projector on a (not necessarily normalized) column vector: `|v><v| / <v|v>`.
    pub fn projector(ket: &[Complex64]) -> Result<Self> {
        let dim = ket.len();
        if dim < 2 {
            return Err(Error::BadDimension(dim));
        }
        let norm2: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        Self::from_fn(dim, |j, k| ket[j] * ket[k].conj() / norm2)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Real trace (the diagonal of a Hermitian matrix is real).
    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|j| self.entries[j * self.dim + j].re).sum()
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// Forms `sum_i c_i * M_i`. All terms must share a dimension.
    pub fn linear_combination(terms: &[(f64, &HermitianOp)]) -> Result<Self> {
        let dim = terms
            .first()
            .map(|(_, m)| m.dim)
            .ok_or_else(|| Error::InvalidArgument("empty linear combination".into()))?;
        let mut entries = vec![Complex64::new(0.0, 0.0); dim * dim];
        for (c, m) in terms {
            if m.dim != dim {
                return Err(Error::DimensionMismatch(m.dim, dim));
            }
            for (e, z) in entries.iter_mut().zip(m.entries.iter()) {
                *e += z * *c;
            }
        }
        Ok(Self { dim, entries })
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs_entry(&self) -> f64 {
        self.entries.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Max-entry distance to another matrix of the same dimension.
    pub fn max_abs_diff(&self, other: &HermitianOp) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn frobenius_distance(&self, other: &HermitianOp) -> Result<f64> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// Full spectral decomposition by cyclic Jacobi rotations.
    ///
    /// Converges when the off-diagonal Frobenius mass drops below
    /// `1e-13 * ||A||_F`; eigenvalues are returned in descending order with
    /// matching eigenvector columns. Deterministic for identical input.
    pub fn eig(&self) -> Result<Spectrum> {
        let d = self.dim;
        let mut a = self.entries.clone();
        let mut vecs = HermitianOp::identity(d).entries;
        let norm = self.frobenius_norm();
        let threshold = 1e-13 * norm;
        let mut converged = off_diag_norm(&a, d) <= threshold;
        let mut sweeps = 0;
        while !converged && sweeps < MAX_SWEEPS {
            for p in 0..d {
                for q in (p + 1)..d {
                    jacobi_rotate(&mut a, &mut vecs, d, p, q);
                }
            }
            sweeps += 1;
            converged = off_diag_norm(&a, d) <= threshold;
        }
        if !converged {
            return Err(Error::NoConvergence(MAX_SWEEPS));
        }
        let mut order: Vec<usize> = (0..d).collect();
        order.sort_by(|&i, &j| {
            a[j * d + j]
                .re
                .partial_cmp(&a[i * d + i].re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(i.cmp(&j))
        });
        let eigenvalues: Vec<f64> = order.iter().map(|&i| a[i * d + i].re).collect();
        let mut eigenvectors = vec![Complex64::new(0.0, 0.0); d * d];
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..d {
                eigenvectors[row * d + new_col] = vecs[row * d + old_col];
            }
        }
        Ok(Spectrum {
            dim: d,
            eigenvalues,
            eigenvectors,
        })
    }

    /// Smallest eigenvalue, i.e. the last entry of [`HermitianOp::eig`].
    pub fn min_eigenvalue(&self) -> Result<f64> {
        Ok(*self.eig()?.eigenvalues.last().expect("dim >= 2"))
    }

    /// True iff the smallest eigenvalue is at least `-tol`.
    pub fn is_psd(&self, tol: f64) -> Result<bool> {
        Ok(self.min_eigenvalue()? >= -tol)
    }
}

/// Hilbert-Schmidt inner product `Tr(AB)` of two Hermitian matrices.
///
/// The result is mathematically real; the imaginary residue is asserted
/// small and discarded.
pub fn hs_inner(a: &HermitianOp, b: &HermitianOp) -> Result<f64> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch(a.dim, b.dim));
    }
    let d = a.dim;
    let mut sum = Complex64::new(0.0, 0.0);
    for j in 0..d {
        for k in 0..d {
            sum += a.entries[j * d + k] * b.entries[k * d + j];
        }
    }
    let scale = 1.0 + a.frobenius_norm() * b.frobenius_norm();
    assert!(
        sum.im.abs() < 1e-13 * scale,
        "Tr(AB) of Hermitian A, B must be real; got imaginary residue {:e}",
        sum.im
    );
    Ok(sum.re)
}

fn off_diag_norm(a: &[Complex64], d: usize) -> f64 {
    let mut s = 0.0;
    for p in 0..d {
        for q in (p + 1)..d {
            s += 2.0 * a[p * d + q].norm_sqr();
        }
    }
    s.sqrt()
}

/// One complex Jacobi rotation annihilating the `(p, q)` entry.
fn jacobi_rotate(a: &mut [Complex64], vecs: &mut [Complex64], d: usize, p: usize, q: usize) {
    let beta = a[p * d + q];
    let babs = beta.norm();
    if babs == 0.0 {
        return;
    }
    let phase = beta / babs; // e^{i arg(a_pq)}
    let app = a[p * d + p].re;
    let aqq = a[q * d + q].re;
    let tau = (aqq - app) / (2.0 * babs);
    let t = if tau >= 0.0 {
        1.0 / (tau + (1.0 + tau * tau).sqrt())
    } else {
        1.0 / (tau - (1.0 + tau * tau).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    // The rotation is U = D * J with D = diag(1, conj(phase)) acting on the
    // (p, q) plane; A <- U† A U, V <- V U.
    let u_qp = -phase.conj() * s; // U[q][p]
    let u_qq = phase.conj() * c; // U[q][q]
    for j in 0..d {
        let ajp = a[j * d + p];
        let ajq = a[j * d + q];
        a[j * d + p] = ajp * c + ajq * u_qp;
        a[j * d + q] = ajp * s + ajq * u_qq;
    }
    for k in 0..d {
        let apk = a[p * d + k];
        let aqk = a[q * d + k];
        a[p * d + k] = apk * c + aqk * u_qp.conj();
        a[q * d + k] = apk * s + aqk * u_qq.conj();
    }
    a[p * d + q] = Complex64::new(0.0, 0.0);
    a[q * d + p] = Complex64::new(0.0, 0.0);
    a[p * d + p] = Complex64::new(a[p * d + p].re, 0.0);
    a[q * d + q] = Complex64::new(a[q * d + q].re, 0.0);
    for j in 0..d {
        let vjp = vecs[j * d + p];
        let vjq = vecs[j * d + q];
        vecs[j * d + p] = vjp * c + vjq * u_qp;
        vecs[j * d + q] = vjp * s + vjq * u_qq;
    }
}

/// Spectral decomposition: descending eigenvalues and a unitary whose
/// columns are the matching eigenvectors.
#[derive(Debug, Clone)]
pub struct Spectrum {
    dim: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Complex64>,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[self.dim - 1]
    }

    /// Column `k` of the eigenvector unitary.
    pub fn eigenvector(&self, k: usize) -> Vec<Complex64> {
        (0..self.dim).map(|j| self.eigenvectors[j * self.dim + k]).collect()
    }

    /// Reassembles `U diag(lambda) U†`.
    pub fn reconstruct(&self) -> Result<HermitianOp> {
        let d = self.dim;
        HermitianOp::from_fn(d, |j, k| {
            let mut sum = Complex64::new(0.0, 0.0);
            for l in 0..d {
                sum += self.eigenvectors[j * d + l]
                    * self.eigenvalues[l]
                    * self.eigenvectors[k * d + l].conj();
            }
            sum
        })
    }

    /// Max-entry deviation of `U† U` from the identity.
    pub fn unitarity_error(&self) -> f64 {
        let d = self.dim;
        let mut worst: f64 = 0.0;
        for a in 0..d {
            for b in 0..d {
                let mut sum = Complex64::new(0.0, 0.0);
                for j in 0..d {
                    sum += self.eigenvectors[j * d + a].conj() * self.eigenvectors[j * d + b];
                }
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((sum - target).norm());
            }
        }
        worst
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    dim: usize,
    entries: Vec<Vec<[f64; 2]>>,
}

impl Serialize for HermitianOp {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let entries = (0..self.dim)
            .map(|j| {
                (0..self.dim)
                    .map(|k| {
                        let z = self.get(j, k);
                        [z.re, z.im]
                    })
                    .collect()
            })
            .collect();
        MatrixJson {
            dim: self.dim,
            entries,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for HermitianOp {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = MatrixJson::deserialize(deserializer)?;
        if raw.entries.len() != raw.dim || raw.entries.iter().any(|row| row.len() != raw.dim) {
            return Err(D::Error::custom("entries do not form a dim x dim matrix"));
        }
        let flat = raw
            .entries
            .iter()
            .flatten()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        HermitianOp::new(raw.dim, flat).map_err(D::Error::custom)
    }
}
