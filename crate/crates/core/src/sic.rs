//! Construction of general SIC POVMs from orthonormal bases of T_d,
//! admissible parameter intervals, dual frames, verification, and rank-1
//! detection.

use serde::{Deserialize, Serialize};

use crate::basis::TracelessBasis;
use crate::error::{Error, Result};
use crate::hermitian::{hs_inner, HermitianOp};

/// Eigenvalue tolerance for positive-semidefiniteness of POVM elements.
pub const PSD_TOL: f64 = 1e-10;

/// A basis together with the operators `R_alpha = F - d(d+1) F_alpha`
/// (plus `R_{d^2} = (d+1) F`), their extreme eigenvalues, and the
/// admissible parameter interval `[t0, t1]`.
#[derive(Debug, Clone)]
pub struct SicFamily {
    basis: TracelessBasis,
    r_ops: Vec<HermitianOp>,
    per_op_extremes: Vec<(f64, f64)>,
    t0: f64,
    t1: f64,
}

impl SicFamily {
    pub fn basis(&self) -> &TracelessBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn r_ops(&self) -> &[HermitianOp] {
        &self.r_ops
    }

    /// `(lambda_alpha, mu_alpha)` pairs, max and min eigenvalue of each
    /// `R_alpha`.
    pub fn per_op_extremes(&self) -> &[(f64, f64)] {
        &self.per_op_extremes
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn t1(&self) -> f64 {
        self.t1
    }

    /// Largest admissible magnitude, `max{|t0|, t1}`.
    pub fn t_m(&self) -> f64 {
        self.t0.abs().max(self.t1)
    }

    /// The raw operators `I/d^2 + t R_alpha` without any positivity check.
    pub fn operators_at(&self, t: f64) -> Vec<HermitianOp> {
        let d = self.dim();
        let eye = HermitianOp::scaled_identity(d, 1.0 / (d * d) as f64);
        self.r_ops
            .iter()
            .map(|r| {
                HermitianOp::linear_combination(&[(1.0, &eye), (t, r)])
                    .expect("dimensions match by construction")
            })
            .collect()
    }
}

/// Builds all `R_alpha`, eigensolves each, and derives `[t0, t1]`.
pub fn make_family(basis: &TracelessBasis) -> Result<SicFamily> {
    let d = basis.dim();
    let f = basis.sum_f();
    let coeff = -((d * (d + 1)) as f64);
    let mut r_ops: Vec<HermitianOp> = basis
        .elements()
        .iter()
        .map(|f_alpha| HermitianOp::linear_combination(&[(1.0, f), (coeff, f_alpha)]))
        .collect::<Result<_>>()?;
    r_ops.push(f.scale((d + 1) as f64));

    let mut per_op_extremes = Vec::with_capacity(r_ops.len());
    for r in &r_ops {
        let spectrum = r.eig()?;
        per_op_extremes.push((spectrum.max_eigenvalue(), spectrum.min_eigenvalue()));
    }
    let d2 = (d * d) as f64;
    let t0 = -per_op_extremes
        .iter()
        .map(|&(lambda, _)| 1.0 / lambda)
        .fold(f64::INFINITY, f64::min)
        / d2;
    let t1 = -per_op_extremes
        .iter()
        .map(|&(_, mu)| 1.0 / mu)
        .fold(f64::NEG_INFINITY, f64::max)
        / d2;
    Ok(SicFamily {
        basis: basis.clone(),
        r_ops,
        per_op_extremes,
        t0,
        t1,
    })
}

/// A concrete general SIC POVM `{P_alpha}` with its purity `a` and
/// pairwise overlap `b`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SicPovm {
    pub dim: usize,
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub ops: Vec<HermitianOp>,
    pub basis_label: String,
}

impl SicPovm {
    pub fn op(&self, alpha: usize) -> &HermitianOp {
        &self.ops[alpha]
    }

    /// Whether the POVM is flagged "weak": all elements nearly `I/d^2`.
    pub fn is_weak(&self) -> bool {
        let d3 = (self.dim * self.dim * self.dim) as f64;
        self.t.abs() < 1e-7 / d3
    }
}

/// Purity `a(t) = 1/d^3 + t^2 (d-1)(d+1)^3`.
pub fn purity(t: f64, d: usize) -> f64 {
    let df = d as f64;
    1.0 / (df * df * df) + t * t * (df - 1.0) * (df + 1.0).powi(3)
}

/// Pairwise overlap `b = (1 - d a) / (d (d^2 - 1))` for purity `a`.
pub fn overlap_b(a: f64, d: usize) -> Result<f64> {
    let df = d as f64;
    let lo = 1.0 / (df * df * df);
    let hi = 1.0 / (df * df);
    if a < lo - 1e-12 || a > hi + 1e-12 {
        return Err(Error::PurityOutOfRange(a));
    }
    Ok((1.0 - df * a) / (df * (df * df - 1.0)))
}

/// Instantiates the POVM at parameter `t`, rejecting `t = 0` and any `t`
/// for which some element fails positive-semidefiniteness.
pub fn construct_sic(family: &SicFamily, t: f64) -> Result<SicPovm> {
    if t == 0.0 {
        return Err(Error::ZeroT);
    }
    let d = family.dim();
    let ops = family.operators_at(t);
    for (index, op) in ops.iter().enumerate() {
        let eigenvalue = op.min_eigenvalue()?;
        if eigenvalue < -PSD_TOL {
            return Err(Error::NotPsd { index, eigenvalue });
        }
    }
    let a = purity(t, d);
    let b = overlap_b(a, d)?;
    Ok(SicPovm {
        dim: d,
        t,
        a,
        b,
        ops,
        basis_label: family.basis().label().to_string(),
    })
}

/// The maximal-purity POVM of a basis with the positivity convention: if
/// `|t0| > t1` the basis is replaced by its negation so that the selected
/// parameter `t_m` is positive.
pub fn max_purity_sic(basis: &TracelessBasis) -> Result<(SicFamily, SicPovm)> {
    let family = make_family(basis)?;
    let family = if family.t0.abs() > family.t1 {
        make_family(&basis.negated())?
    } else {
        family
    };
    let t = family.t1;
    let povm = construct_sic(&family, t)?;
    Ok((family, povm))
}

/// The dual operators `{Q_alpha}` of a SIC POVM.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DualFrame {
    pub dim: usize,
    pub ops: Vec<HermitianOp>,
    pub source_a: f64,
}

/// Closed-form dual basis
/// `Q_alpha = d/(a d^3 - 1) [(d^2 - 1) P_alpha - (1 - d a) I]`.
pub fn dual_frame(sic: &SicPovm) -> Result<DualFrame> {
    let d = sic.dim;
    let df = d as f64;
    let denom = sic.a * df.powi(3) - 1.0;
    if (sic.a - 1.0 / df.powi(3)).abs() < 1e-13 {
        return Err(Error::DegeneratePovm);
    }
    let scale = df / denom;
    let eye = HermitianOp::identity(d);
    let ops = sic
        .ops
        .iter()
        .map(|p| {
            HermitianOp::linear_combination(&[
                (scale * (df * df - 1.0), p),
                (-scale * (1.0 - df * sic.a), &eye),
            ])
        })
        .collect::<Result<_>>()?;
    Ok(DualFrame {
        dim: d,
        ops,
        source_a: sic.a,
    })
}

/// Recovers the generating orthonormal basis:
/// `F_alpha = (1/(t d (d+1)^2)) ((1/d) I + P_{d^2} - (d+1) P_alpha)`.
/// Fails basis validation when the input set is not a SIC POVM.
pub fn recover_basis(sic: &SicPovm) -> Result<TracelessBasis> {
    if sic.t == 0.0 {
        return Err(Error::ZeroT);
    }
    let d = sic.dim;
    let df = d as f64;
    let scale = 1.0 / (sic.t * df * (df + 1.0) * (df + 1.0));
    let eye = HermitianOp::identity(d);
    let last = &sic.ops[d * d - 1];
    let elements: Vec<HermitianOp> = sic.ops[..d * d - 1]
        .iter()
        .map(|p| {
            HermitianOp::linear_combination(&[
                (scale / df, &eye),
                (scale, last),
                (-scale * (df + 1.0), p),
            ])
        })
        .collect::<Result<_>>()?;
    TracelessBasis::new(d, elements, "recovered")
}

/// The plus-branch parameter `t+ = t (d+1)/(d-1)` paired with
/// [`plus_branch_basis`].
pub fn plus_branch_t(t: f64, d: usize) -> f64 {
    t * (d + 1) as f64 / (d - 1) as f64
}

/// The second orthonormal basis associated with the same POVM through the
/// other root of the symmetry condition:
/// `F_{alpha,+} = (1/(t+ d (d-1)^2)) ((1/d) I - P_{d^2} - (d-1) P_alpha)`,
/// where `t+ = t (d+1)/(d-1)` is the parameter of the plus branch (the
/// rescaling that keeps the recovered elements unit-norm). `t` is the
/// ordinary (minus-branch) parameter of the POVM.
pub fn plus_branch_basis(sic: &SicPovm, t: f64) -> Result<TracelessBasis> {
    if t == 0.0 {
        return Err(Error::ZeroT);
    }
    let d = sic.dim;
    let df = d as f64;
    let t_plus = plus_branch_t(t, d);
    let scale = 1.0 / (t_plus * df * (df - 1.0) * (df - 1.0));
    let eye = HermitianOp::identity(d);
    let last = &sic.ops[d * d - 1];
    let elements: Vec<HermitianOp> = sic.ops[..d * d - 1]
        .iter()
        .map(|p| {
            HermitianOp::linear_combination(&[
                (scale / df, &eye),
                (-scale, last),
                (-scale * (df - 1.0), p),
            ])
        })
        .collect::<Result<_>>()?;
    TracelessBasis::new(d, elements, "plus-branch")
}

/// Builds the symmetric set `P_alpha = I/d^2 + t R_alpha`,
/// `P_{d^2} = I/d^2 - t sum R_alpha` after validating the equiangular Gram
/// structure `Tr(R_a R_b) = r delta - r/(d^2-1) (1 - delta)`.
pub fn symmetric_from_r(r_ops: &[HermitianOp], t: f64) -> Result<Vec<HermitianOp>> {
    if t == 0.0 {
        return Err(Error::ZeroT);
    }
    let d = r_ops
        .first()
        .map(HermitianOp::dim)
        .ok_or_else(|| Error::InvalidArgument("empty operator list".into()))?;
    let count = d * d - 1;
    if r_ops.len() != count {
        return Err(Error::InvalidArgument(format!(
            "expected {} operators for dimension {}, got {}",
            count,
            d,
            r_ops.len()
        )));
    }
    let r: f64 = r_ops
        .iter()
        .map(|op| hs_inner(op, op))
        .sum::<Result<f64>>()?
        / count as f64;
    if r <= 0.0 {
        return Err(Error::BadGramStructure(r));
    }
    let off_target = -r / (count as f64);
    let tol = 1e-9 * r.max(1.0);
    let mut worst: f64 = 0.0;
    for i in 0..count {
        for j in i..count {
            let g = hs_inner(&r_ops[i], &r_ops[j])?;
            let target = if i == j { r } else { off_target };
            worst = worst.max((g - target).abs());
        }
    }
    if worst > tol {
        return Err(Error::BadGramStructure(worst));
    }
    let eye = HermitianOp::scaled_identity(d, 1.0 / (d * d) as f64);
    let mut ops: Vec<HermitianOp> = r_ops
        .iter()
        .map(|rop| HermitianOp::linear_combination(&[(1.0, &eye), (t, rop)]))
        .collect::<Result<_>>()?;
    let mut last_terms: Vec<(f64, &HermitianOp)> = vec![(1.0, &eye)];
    last_terms.extend(r_ops.iter().map(|rop| (-t, rop)));
    ops.push(HermitianOp::linear_combination(&last_terms)?);
    Ok(ops)
}

/// The two roots `omega_+- = 1 - d^2 +- d` of the symmetry condition on the
/// mixing ratio; `omega_- - 1 = -d(d+1)` is the coefficient used by the
/// main construction.
pub fn omega_solutions(d: usize) -> (f64, f64) {
    let df = d as f64;
    (1.0 - df * df + df, 1.0 - df * df - df)
}

/// Rank-1 diagnostics for a SIC POVM.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Rank1Report {
    pub dim: usize,
    /// Whether `a` is within 1e-10 of the rank-1 ceiling `1/d^2`.
    pub is_rank1: bool,
    pub a_gap: f64,
    /// Numerical rank of each element (eigenvalues above `1e-9 * Tr(P)`).
    pub ranks: Vec<usize>,
    /// Eigenvalues every recovered `F_alpha` must have in the rank-1 case.
    pub target_spectrum: Vec<f64>,
    /// Max deviation of each recovered `F_alpha` spectrum from the target.
    pub spectrum_distances: Vec<f64>,
}

/// The eigenvalues all recovered basis elements share for a rank-1 SIC
/// POVM, in descending order.
pub fn rank1_target_spectrum(d: usize) -> Vec<f64> {
    let df = d as f64;
    let root = (df * df + 4.0 * df).sqrt();
    let denom = 2.0 * (df * (df + 1.0)).sqrt();
    let gamma1 = (2.0 - df + root) / denom;
    let gamma2 = (2.0 - df - root) / denom;
    let gamma_k = 1.0 / (df * (df + 1.0)).sqrt();
    let mut spectrum = vec![gamma1];
    spectrum.extend(std::iter::repeat(gamma_k).take(d - 2));
    spectrum.push(gamma2);
    spectrum
}

pub fn rank1_check(sic: &SicPovm) -> Result<Rank1Report> {
    let d = sic.dim;
    let df = d as f64;
    let a_gap = (1.0 / (df * df) - sic.a).abs();
    let is_rank1 = a_gap < 1e-10;
    let mut ranks = Vec::with_capacity(sic.ops.len());
    for op in &sic.ops {
        let threshold = 1e-9 * op.trace();
        let rank = op
            .eig()?
            .eigenvalues()
            .iter()
            .filter(|&&lambda| lambda > threshold)
            .count();
        ranks.push(rank);
    }
    let target_spectrum = rank1_target_spectrum(d);
    let recovered = recover_basis(sic)?;
    let mut spectrum_distances = Vec::with_capacity(recovered.len());
    for f_alpha in recovered.elements() {
        let eigenvalues = f_alpha.eig()?.eigenvalues().to_vec();
        let dist = eigenvalues
            .iter()
            .zip(&target_spectrum)
            .map(|(x, y)| (x - y).abs())
            .fold(0.0, f64::max);
        spectrum_distances.push(dist);
    }
    Ok(Rank1Report {
        dim: d,
        is_rank1,
        a_gap,
        ranks,
        target_spectrum,
        spectrum_distances,
    })
}

/// Named residuals of the defining SIC POVM properties.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    pub dim: usize,
    pub t: f64,
    pub a: f64,
    pub b: f64,
    pub weak: bool,
    /// Max-entry residual of `sum P_alpha - I`.
    pub povm_sum: f64,
    /// Max residual of `Tr(P_alpha) - 1/d`.
    pub trace: f64,
    /// Max residual of `Tr(P_alpha^2) - a`.
    pub gram_diag: f64,
    /// Max residual of `Tr(P_alpha P_beta) - b` over distinct pairs.
    pub gram_offdiag: f64,
    /// Smallest eigenvalue over all elements.
    pub min_eig: f64,
    /// Max residual of `Tr(P_alpha Q_beta) - delta`; absent when the dual
    /// frame is singular.
    pub duality: Option<f64>,
    pub pass: bool,
}

/// Measures every Definition-level property of a POVM numerically.
pub fn verify(sic: &SicPovm) -> Result<VerificationReport> {
    let d = sic.dim;
    let df = d as f64;
    let count = d * d;
    if sic.ops.len() != count {
        return Err(Error::InvalidArgument(format!(
            "expected {} operators, got {}",
            count,
            sic.ops.len()
        )));
    }
    let refs: Vec<(f64, &HermitianOp)> = sic.ops.iter().map(|p| (1.0, p)).collect();
    let sum = HermitianOp::linear_combination(&refs)?;
    let povm_sum = sum.max_abs_diff(&HermitianOp::identity(d))?;
    let trace = sic
        .ops
        .iter()
        .map(|p| (p.trace() - 1.0 / df).abs())
        .fold(0.0, f64::max);
    let mut gram_diag: f64 = 0.0;
    let mut gram_offdiag: f64 = 0.0;
    for i in 0..count {
        for j in i..count {
            let g = hs_inner(&sic.ops[i], &sic.ops[j])?;
            if i == j {
                gram_diag = gram_diag.max((g - sic.a).abs());
            } else {
                gram_offdiag = gram_offdiag.max((g - sic.b).abs());
            }
        }
    }
    let mut min_eig = f64::INFINITY;
    for op in &sic.ops {
        min_eig = min_eig.min(op.min_eigenvalue()?);
    }
    let duality = match dual_frame(sic) {
        Ok(dual) => {
            let mut worst: f64 = 0.0;
            for (i, p) in sic.ops.iter().enumerate() {
                for (j, q) in dual.ops.iter().enumerate() {
                    let target = if i == j { 1.0 } else { 0.0 };
                    worst = worst.max((hs_inner(p, q)? - target).abs());
                }
            }
            Some(worst)
        }
        Err(Error::DegeneratePovm) => None,
        Err(e) => return Err(e),
    };
    let pass = povm_sum < 1e-11
        && trace < 1e-11
        && gram_diag < 1e-10
        && gram_offdiag < 1e-10
        && min_eig >= -PSD_TOL
        && duality.map_or(true, |r| r < 1e-9);
    Ok(VerificationReport {
        dim: d,
        t: sic.t,
        a: sic.a,
        b: sic.b,
        weak: sic.is_weak(),
        povm_sum,
        trace,
        gram_diag,
        gram_offdiag,
        min_eig,
        duality,
        pass,
    })
}

/// Max-entry deviation of the cross-Gram matrix
/// `M_ab = Tr(F_{a,+} F_{b,-})` from orthogonality (`M M^T = I`).
pub fn cross_gram_orthogonality(plus: &TracelessBasis, minus: &TracelessBasis) -> Result<f64> {
    if plus.len() != minus.len() {
        return Err(Error::DimensionMismatch(plus.len(), minus.len()));
    }
    let n = plus.len();
    let mut m = vec![vec![0.0; n]; n];
    for (i, fp) in plus.elements().iter().enumerate() {
        for (j, fm) in minus.elements().iter().enumerate() {
            m[i][j] = hs_inner(fp, fm)?;
        }
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let dot: f64 = (0..n).map(|k| m[i][k] * m[j][k]).sum();
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((dot - target).abs());
        }
    }
    Ok(worst)
}
