//! Orthonormal bases of the traceless Hermitian subspace T_d: the
//! generalized Gell-Mann construction, the d=2 Pauli triple, and
//! orthogonally rotated variants.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{hs_inner, HermitianOp};
use crate::rng::CounterRng;

/// Max trace residual accepted for a basis element.
pub const TRACE_TOL: f64 = 1e-12;
/// Max Gram deviation from the identity accepted at construction.
pub const ORTHONORMALITY_TOL: f64 = 1e-10;

/// An ordered orthonormal basis `{F_alpha}` of T_d with the cached sum
/// `F = sum_alpha F_alpha`.
#[derive(Debug, Clone)]
pub struct TracelessBasis {
    dim: usize,
    elements: Vec<HermitianOp>,
    sum_f: HermitianOp,
    label: String,
}

impl TracelessBasis {
    /// Validates tracelessness and orthonormality, then caches the sum.
    pub fn new(dim: usize, elements: Vec<HermitianOp>, label: impl Into<String>) -> Result<Self> {
        let report = validate_basis(&elements)?;
        if report.dim != dim {
            return Err(Error::DimensionMismatch(report.dim, dim));
        }
        if elements.len() != dim * dim - 1 {
            return Err(Error::InvalidBasis(format!(
                "expected {} elements for dimension {}, got {}",
                dim * dim - 1,
                dim,
                elements.len()
            )));
        }
        if !report.passes(TRACE_TOL, ORTHONORMALITY_TOL) {
            return Err(Error::InvalidBasis(format!(
                "max trace residual {:.3e}, max orthonormality violation {:.3e}",
                report.max_trace_residual, report.max_gram_violation
            )));
        }
        Ok(Self::from_parts_unchecked(dim, elements, label))
    }

    /// Skips the Gram validation; for callers whose construction preserves
    /// orthonormality exactly (Givens rotation of a valid basis).
    pub(crate) fn from_parts_unchecked(
        dim: usize,
        elements: Vec<HermitianOp>,
        label: impl Into<String>,
    ) -> Self {
        let refs: Vec<(f64, &HermitianOp)> = elements.iter().map(|e| (1.0, e)).collect();
        let sum_f = HermitianOp::linear_combination(&refs).expect("nonempty by construction");
        Self {
            dim,
            elements,
            sum_f,
            label: label.into(),
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of basis elements, `d^2 - 1`.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, alpha: usize) -> &HermitianOp {
        &self.elements[alpha]
    }

    pub fn elements(&self) -> &[HermitianOp] {
        &self.elements
    }

    /// The cached sum `F = sum_alpha F_alpha`.
    pub fn sum_f(&self) -> &HermitianOp {
        &self.sum_f
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// The basis `{-F_alpha}`; swaps the roles of t0 and t1.
    pub fn negated(&self) -> Self {
        let elements = self.elements.iter().map(|e| e.scale(-1.0)).collect();
        Self::from_parts_unchecked(self.dim, elements, format!("negated({})", self.label))
    }
}

#[derive(Serialize, Deserialize)]
struct BasisJson {
    dim: usize,
    label: String,
    elements: Vec<HermitianOp>,
}

impl Serialize for TracelessBasis {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        BasisJson {
            dim: self.dim,
            label: self.label.clone(),
            elements: self.elements.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TracelessBasis {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = BasisJson::deserialize(deserializer)?;
        TracelessBasis::new(raw.dim, raw.elements, raw.label).map_err(serde::de::Error::custom)
    }
}

/// Two-index label of a generalized Gell-Mann matrix and its position in
/// the flat ordering: all symmetric `(n < m)` pairs lexicographically, then
/// all antisymmetric `(m < n)` pairs lexicographically, then the diagonals
/// `n = 1..d-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GellMannIndex {
    pub n: usize,
    pub m: usize,
    pub flat: usize,
}

impl GellMannIndex {
    /// The flat position (1-based) of `G_nm` for dimension `d`.
    pub fn from_pair(n: usize, m: usize, d: usize) -> Result<Self> {
        if n < 1 || n > d || m < 1 || m > d || (n == m && n == d) {
            return Err(Error::InvalidArgument(format!(
                "invalid Gell-Mann index ({n},{m}) for dimension {d}"
            )));
        }
        let pairs = d * (d - 1) / 2;
        let flat = if n < m {
            // lexicographic rank of (n, m) among n < m pairs
            (n - 1) * d - (n - 1) * n / 2 + (m - n)
        } else if m < n {
            pairs + (n - 2) * (n - 1) / 2 + m
        } else {
            2 * pairs + n
        };
        Ok(Self { n, m, flat })
    }

    /// Inverse of [`GellMannIndex::from_pair`] for a 1-based flat index.
    pub fn from_flat(flat: usize, d: usize) -> Result<Self> {
        if flat < 1 || flat > d * d - 1 {
            return Err(Error::InvalidArgument(format!(
                "flat index {flat} out of range for dimension {d}"
            )));
        }
        let pairs = d * (d - 1) / 2;
        if flat <= pairs {
            let mut rank = flat;
            for n in 1..d {
                let row = d - n;
                if rank <= row {
                    return Self::from_pair(n, n + rank, d);
                }
                rank -= row;
            }
            unreachable!()
        } else if flat <= 2 * pairs {
            let mut rank = flat - pairs;
            for n in 2..=d {
                if rank <= n - 1 {
                    return Self::from_pair(n, rank, d);
                }
                rank -= n - 1;
            }
            unreachable!()
        } else {
            let n = flat - 2 * pairs;
            Self::from_pair(n, n, d)
        }
    }
}

fn gell_mann_element(index: &GellMannIndex, d: usize) -> HermitianOp {
    let inv_sqrt2 = 1.0 / 2.0_f64.sqrt();
    let (n, m) = (index.n - 1, index.m - 1); // to 0-based kets
    if index.n < index.m {
        HermitianOp::from_fn(d, |j, k| {
            if (j, k) == (n, m) || (j, k) == (m, n) {
                Complex64::new(inv_sqrt2, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .expect("symmetric Gell-Mann element is Hermitian")
    } else if index.m < index.n {
        HermitianOp::from_fn(d, |j, k| {
            if (j, k) == (n, m) {
                Complex64::new(0.0, inv_sqrt2)
            } else if (j, k) == (m, n) {
                Complex64::new(0.0, -inv_sqrt2)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .expect("antisymmetric Gell-Mann element is Hermitian")
    } else {
        let nn = index.n; // 1-based
        let scale = 1.0 / ((nn * (nn + 1)) as f64).sqrt();
        HermitianOp::from_fn(d, |j, k| {
            if j != k {
                Complex64::new(0.0, 0.0)
            } else if j < nn {
                Complex64::new(scale, 0.0)
            } else if j == nn {
                Complex64::new(-(nn as f64) * scale, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
        .expect("diagonal Gell-Mann element is Hermitian")
    }
}

/// The generalized Gell-Mann basis of T_d in the flat ordering.
pub fn gell_mann_basis(d: usize) -> Result<TracelessBasis> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let elements: Result<Vec<HermitianOp>> = (1..d * d)
        .map(|flat| Ok(gell_mann_element(&GellMannIndex::from_flat(flat, d)?, d)))
        .collect();
    TracelessBasis::new(d, elements?, "gellmann")
}

/// The three normalized Pauli matrices for d = 2, in the sign convention of
/// the explicit rank-1 example (`F_2 = (1/sqrt2) [[0, i], [-i, 0]]`).
pub fn pauli_basis() -> TracelessBasis {
    let s = 1.0 / 2.0_f64.sqrt();
    let c = Complex64::new;
    let f1 = HermitianOp::new(2, vec![c(0.0, 0.0), c(s, 0.0), c(s, 0.0), c(0.0, 0.0)]).unwrap();
    let f2 = HermitianOp::new(2, vec![c(0.0, 0.0), c(0.0, s), c(0.0, -s), c(0.0, 0.0)]).unwrap();
    let f3 = HermitianOp::new(2, vec![c(s, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-s, 0.0)]).unwrap();
    TracelessBasis::new(2, vec![f1, f2, f3], "pauli").expect("Pauli triple is orthonormal")
}

/// One plane rotation of the coefficient space R^(d^2-1).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct GivensRotation {
    pub i: usize,
    pub j: usize,
    pub angle: f64,
}

/// A real orthogonal matrix given as a product of Givens rotations, with an
/// optional single-axis sign flip for the determinant -1 component.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct OrthogonalParam {
    pub rotations: Vec<GivensRotation>,
    pub flip_axis: Option<usize>,
}

impl OrthogonalParam {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn single(i: usize, j: usize, angle: f64) -> Self {
        Self {
            rotations: vec![GivensRotation { i, j, angle }],
            flip_axis: None,
        }
    }

    /// `steps` random Givens rotations with uniform plane pairs and angles
    /// uniform in (-pi, pi), drawn from the seeded counter RNG.
    pub fn random(n: usize, steps: usize, seed: u64) -> Self {
        let mut rng = CounterRng::new(seed, 0);
        let rotations = (0..steps)
            .map(|_| {
                let i = rng.next_below(n as u64) as usize;
                let mut j = rng.next_below(n as u64 - 1) as usize;
                if j >= i {
                    j += 1;
                }
                let angle = (2.0 * rng.next_f64() - 1.0) * std::f64::consts::PI;
                GivensRotation { i, j, angle }
            })
            .collect();
        Self {
            rotations,
            flip_axis: None,
        }
    }

    /// Materializes the `n x n` orthogonal matrix, rotations applied in
    /// sequence after the optional flip.
    pub fn to_matrix(&self, n: usize) -> Result<Vec<Vec<f64>>> {
        let mut a: Vec<Vec<f64>> = (0..n)
            .map(|r| (0..n).map(|c| if r == c { 1.0 } else { 0.0 }).collect())
            .collect();
        if let Some(axis) = self.flip_axis {
            if axis >= n {
                return Err(Error::DimensionMismatch(axis, n));
            }
            for c in 0..n {
                a[axis][c] = -a[axis][c];
            }
        }
        for rot in &self.rotations {
            if rot.i >= n || rot.j >= n || rot.i == rot.j {
                return Err(Error::InvalidArgument(format!(
                    "Givens plane ({}, {}) invalid for size {}",
                    rot.i, rot.j, n
                )));
            }
            let (c, s) = (rot.angle.cos(), rot.angle.sin());
            for col in 0..n {
                let (x, y) = (a[rot.i][col], a[rot.j][col]);
                a[rot.i][col] = c * x - s * y;
                a[rot.j][col] = s * x + c * y;
            }
        }
        Ok(a)
    }
}

/// Applies a real orthogonal transformation: `F'_alpha = sum_beta A_ab F_beta`.
pub fn rotate_basis(basis: &TracelessBasis, rotation: &OrthogonalParam) -> Result<TracelessBasis> {
    let n = basis.len();
    let a = rotation.to_matrix(n)?;
    let mut elements = Vec::with_capacity(n);
    for row in &a {
        let terms: Vec<(f64, &HermitianOp)> = row
            .iter()
            .zip(basis.elements())
            .map(|(&coef, f)| (coef, f))
            .collect();
        elements.push(HermitianOp::linear_combination(&terms)?);
    }
    Ok(TracelessBasis::from_parts_unchecked(
        basis.dim(),
        elements,
        format!("rotated({})", basis.label()),
    ))
}

/// Trace residuals, the full Gram matrix, and a verdict for a candidate
/// orthonormal set in T_d.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub count: usize,
    pub trace_residuals: Vec<f64>,
    pub max_trace_residual: f64,
    pub gram: Vec<Vec<f64>>,
    pub max_gram_violation: f64,
}

impl ValidationReport {
    pub fn passes(&self, trace_tol: f64, gram_tol: f64) -> bool {
        self.max_trace_residual <= trace_tol && self.max_gram_violation <= gram_tol
    }
}

/// Measures orthonormality and tracelessness; failures are carried in the
/// report, only structural problems (empty list, mixed dimensions) error.
pub fn validate_basis(elements: &[HermitianOp]) -> Result<ValidationReport> {
    let dim = elements
        .first()
        .map(HermitianOp::dim)
        .ok_or_else(|| Error::InvalidBasis("empty element list".into()))?;
    for e in elements {
        if e.dim() != dim {
            return Err(Error::DimensionMismatch(e.dim(), dim));
        }
    }
    let count = elements.len();
    let trace_residuals: Vec<f64> = elements.iter().map(|e| e.trace().abs()).collect();
    let max_trace_residual = trace_residuals.iter().cloned().fold(0.0, f64::max);
    let mut gram = vec![vec![0.0; count]; count];
    let mut max_gram_violation: f64 = 0.0;
    for i in 0..count {
        for j in i..count {
            let g = hs_inner(&elements[i], &elements[j])?;
            gram[i][j] = g;
            gram[j][i] = g;
            let target = if i == j { 1.0 } else { 0.0 };
            max_gram_violation = max_gram_violation.max((g - target).abs());
        }
    }
    Ok(ValidationReport {
        dim,
        count,
        trace_residuals,
        max_trace_residual,
        gram,
        max_gram_violation,
    })
}

/// Modified Gram-Schmidt in the Hilbert-Schmidt inner product, with a trace
/// projection; used to repair accumulated drift.
pub fn reorthonormalize(basis: &TracelessBasis) -> Result<TracelessBasis> {
    let d = basis.dim();
    let mut cleaned: Vec<HermitianOp> = Vec::with_capacity(basis.len());
    for element in basis.elements() {
        // remove any trace drift first
        let mut current =
            HermitianOp::linear_combination(&[(1.0, element)])?;
        let tr = current.trace();
        if tr.abs() > 0.0 {
            current = HermitianOp::linear_combination(&[
                (1.0, &current),
                (-tr / d as f64, &HermitianOp::identity(d)),
            ])?;
        }
        for prev in &cleaned {
            let coef = hs_inner(&current, prev)?;
            current = HermitianOp::linear_combination(&[(1.0, &current), (-coef, prev)])?;
        }
        let norm = hs_inner(&current, &current)?.sqrt();
        if norm < 1e-8 {
            return Err(Error::InvalidBasis(
                "element became numerically dependent during re-orthonormalization".into(),
            ));
        }
        cleaned.push(current.scale(1.0 / norm));
    }
    Ok(TracelessBasis::from_parts_unchecked(
        d,
        cleaned,
        basis.label().to_string(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gell_mann_d2_is_pauli_triple() {
        let b = gell_mann_basis(2).unwrap();
        assert_eq!(b.len(), 3);
        let s = 1.0 / 2.0_f64.sqrt();
        // flat order: G_12 (X), G_21 (Y), G_11 (Z), all over sqrt2
        assert!((b.element(0).get(0, 1).re - s).abs() < 1e-15);
        assert!((b.element(1).get(0, 1).im + s).abs() < 1e-15);
        assert!((b.element(2).get(0, 0).re - s).abs() < 1e-15);
        assert!((b.element(2).get(1, 1).re + s).abs() < 1e-15);
    }

    #[test]
    fn gell_mann_d3_first_diagonal() {
        let b = gell_mann_basis(3).unwrap();
        let idx = GellMannIndex::from_pair(1, 1, 3).unwrap();
        let g11 = b.element(idx.flat - 1);
        let s = 1.0 / 2.0_f64.sqrt();
        assert!((g11.get(0, 0).re - s).abs() < 1e-15);
        assert!((g11.get(1, 1).re + s).abs() < 1e-15);
        assert!(g11.get(2, 2).norm() < 1e-15);
    }

    #[test]
    fn gell_mann_counts_and_orthonormality() {
        for d in 2..=12 {
            let b = gell_mann_basis(d).unwrap();
            assert_eq!(b.len(), d * d - 1);
            let report = validate_basis(b.elements()).unwrap();
            assert!(report.passes(1e-12, 1e-12), "d = {d}");
        }
    }

    #[test]
    fn gell_mann_sector_counts() {
        let d = 5;
        let pairs = d * (d - 1) / 2;
        for flat in 1..=pairs {
            let idx = GellMannIndex::from_flat(flat, d).unwrap();
            assert!(idx.n < idx.m);
        }
        for flat in pairs + 1..=2 * pairs {
            let idx = GellMannIndex::from_flat(flat, d).unwrap();
            assert!(idx.m < idx.n);
        }
        for flat in 2 * pairs + 1..d * d {
            let idx = GellMannIndex::from_flat(flat, d).unwrap();
            assert_eq!(idx.n, idx.m);
        }
    }

    #[test]
    fn flat_index_is_a_bijection() {
        for d in 2..=7 {
            for flat in 1..d * d {
                let idx = GellMannIndex::from_flat(flat, d).unwrap();
                assert_eq!(idx.flat, flat, "d={d}");
                let back = GellMannIndex::from_pair(idx.n, idx.m, d).unwrap();
                assert_eq!(back.flat, flat);
            }
        }
    }

    #[test]
    fn rejects_d_below_two() {
        assert!(gell_mann_basis(1).is_err());
    }

    #[test]
    fn rotate_identity_is_identity() {
        let b = gell_mann_basis(3).unwrap();
        let r = rotate_basis(&b, &OrthogonalParam::identity()).unwrap();
        for (orig, rot) in b.elements().iter().zip(r.elements()) {
            assert!(orig.max_abs_diff(rot).unwrap() < 1e-15);
        }
    }

    #[test]
    fn rotate_by_quarter_turn_permutes() {
        let b = gell_mann_basis(2).unwrap();
        // angle pi/2 swaps axes 0 and 1 up to sign
        let r = rotate_basis(&b, &OrthogonalParam::single(0, 1, std::f64::consts::FRAC_PI_2)).unwrap();
        assert!(r.element(0).max_abs_diff(&b.element(1).scale(-1.0)).unwrap() < 1e-15);
        assert!(r.element(1).max_abs_diff(b.element(0)).unwrap() < 1e-15);
        assert!(validate_basis(r.elements()).unwrap().passes(1e-12, 1e-12));
    }

    #[test]
    fn random_givens_products_stay_orthonormal() {
        let b = gell_mann_basis(3).unwrap();
        let param = OrthogonalParam::random(b.len(), 10, 99);
        let r = rotate_basis(&b, &param).unwrap();
        let report = validate_basis(r.elements()).unwrap();
        assert!(report.passes(1e-12, 1e-10));
    }

    #[test]
    fn rotations_compose() {
        let b = gell_mann_basis(3).unwrap();
        let a1 = OrthogonalParam::random(b.len(), 5, 1);
        let a2 = OrthogonalParam::random(b.len(), 5, 2);
        let sequential = rotate_basis(&rotate_basis(&b, &a1).unwrap(), &a2).unwrap();
        let mut combined = a1.clone();
        combined.rotations.extend(a2.rotations.iter().cloned());
        let direct = rotate_basis(&b, &combined).unwrap();
        for (x, y) in sequential.elements().iter().zip(direct.elements()) {
            assert!(x.max_abs_diff(y).unwrap() < 1e-10);
        }
    }

    #[test]
    fn reflection_preserves_orthonormality() {
        let b = gell_mann_basis(2).unwrap();
        let param = OrthogonalParam {
            rotations: vec![],
            flip_axis: Some(1),
        };
        let r = rotate_basis(&b, &param).unwrap();
        assert!(r.element(1).max_abs_diff(&b.element(1).scale(-1.0)).unwrap() < 1e-15);
        assert!(validate_basis(r.elements()).unwrap().passes(1e-12, 1e-12));
    }

    #[test]
    fn validate_flags_duplicates() {
        let b = gell_mann_basis(2).unwrap();
        let dup = vec![b.element(0).clone(), b.element(0).clone()];
        let report = validate_basis(&dup).unwrap();
        assert!(!report.passes(1e-12, 1e-10));
        assert!((report.gram[0][1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn sum_f_matches_elementwise_sum() {
        let b = gell_mann_basis(4).unwrap();
        let terms: Vec<(f64, &HermitianOp)> = b.elements().iter().map(|e| (1.0, e)).collect();
        let direct = HermitianOp::linear_combination(&terms).unwrap();
        assert!(b.sum_f().max_abs_diff(&direct).unwrap() < 1e-12);
    }

    #[test]
    fn reorthonormalize_repairs_drift() {
        let b = gell_mann_basis(3).unwrap();
        // contaminate one element with a small admixture of another
        let mut elements: Vec<HermitianOp> = b.elements().to_vec();
        elements[0] = HermitianOp::linear_combination(&[(1.0, &elements[0]), (1e-6, &elements[1])])
            .unwrap();
        let dirty = TracelessBasis::from_parts_unchecked(3, elements, "dirty");
        assert!(validate_basis(dirty.elements()).unwrap().max_gram_violation > 1e-7);
        let clean = reorthonormalize(&dirty).unwrap();
        assert!(validate_basis(clean.elements()).unwrap().passes(1e-12, 1e-12));
    }

    #[test]
    fn basis_serde_round_trip() {
        let b = gell_mann_basis(3).unwrap();
        let json = serde_json::to_string(&b).unwrap();
        let back: TracelessBasis = serde_json::from_str(&json).unwrap();
        assert_eq!(back.label(), "gellmann");
        for (x, y) in b.elements().iter().zip(back.elements()) {
            assert_eq!(x, y);
        }
    }
}
