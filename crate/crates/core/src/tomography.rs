//! State tomography with a SIC POVM: Born probabilities, finite-shot
//! sampling, and linear-inversion reconstruction through the dual frame.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hermitian::{hs_inner, HermitianOp};
use crate::rng::CounterRng;
use crate::sic::{DualFrame, SicPovm};

const TRACE_TOL: f64 = 1e-12;
const PSD_TOL: f64 = 1e-12;

/// A validated quantum state: Hermitian, unit trace, positive
/// semidefinite.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct DensityMatrix {
    op: HermitianOp,
}

impl DensityMatrix {
    pub fn new(op: HermitianOp) -> Result<Self> {
        let trace = op.trace();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::InvalidArgument(format!(
                "density matrix trace {trace} is not 1"
            )));
        }
        if !op.is_psd(PSD_TOL)? {
            return Err(Error::InvalidArgument(
                "density matrix is not positive semidefinite".into(),
            ));
        }
        Ok(Self { op })
    }

    pub fn pure_state(ket: &[Complex64]) -> Result<Self> {
        let norm_sqr: f64 = ket.iter().map(|z| z.norm_sqr()).sum();
        if norm_sqr < 1e-300 {
            return Err(Error::InvalidArgument("zero state vector".into()));
        }
        let scaled: Vec<Complex64> = ket.iter().map(|z| z / norm_sqr.sqrt()).collect();
        Ok(Self {
            op: HermitianOp::projector(&scaled)?,
        })
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self {
            op: HermitianOp::scaled_identity(dim, 1.0 / dim as f64),
        }
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn op(&self) -> &HermitianOp {
        &self.op
    }
}

impl<'de> Deserialize<'de> for DensityMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let op = HermitianOp::deserialize(deserializer)?;
        DensityMatrix::new(op).map_err(serde::de::Error::custom)
    }
}

/// Outcome distribution of a SIC POVM: d^2 probabilities.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbabilityVector {
    pub dim: usize,
    pub probs: Vec<f64>,
}

impl ProbabilityVector {
    pub fn new(dim: usize, probs: Vec<f64>) -> Result<Self> {
        if probs.len() != dim * dim {
            return Err(Error::DimensionMismatch(probs.len(), dim * dim));
        }
        if probs.iter().any(|&p| !(-1e-12..=1.0 + 1e-12).contains(&p)) {
            return Err(Error::InvalidArgument("probability outside [0, 1]".into()));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::InvalidArgument(format!(
                "probabilities sum to {total}, not 1"
            )));
        }
        Ok(Self { dim, probs })
    }
}

/// Per-outcome tallies from a finite-shot measurement simulation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CountVector {
    pub shots: u64,
    pub counts: Vec<u64>,
}

/// `p_alpha = Tr(P_alpha rho)`.
pub fn born_probabilities(sic: &SicPovm, rho: &DensityMatrix) -> Result<ProbabilityVector> {
    if sic.dim != rho.dim() {
        return Err(Error::DimensionMismatch(sic.dim, rho.dim()));
    }
    let probs = sic
        .ops
        .iter()
        .map(|p| hs_inner(p, rho.op()))
        .collect::<Result<Vec<f64>>>()?;
    ProbabilityVector::new(sic.dim, probs)
}

/// `rho = sum_alpha p_alpha Q_alpha`: linear inversion through the dual
/// frame. The output is Hermitian but not guaranteed positive.
pub fn reconstruct(dual: &DualFrame, p: &ProbabilityVector) -> Result<HermitianOp> {
    if dual.dim != p.dim {
        return Err(Error::DimensionMismatch(dual.dim, p.dim));
    }
    let terms: Vec<(f64, &HermitianOp)> = p.probs.iter().copied().zip(&dual.ops).collect();
    HermitianOp::linear_combination(&terms)
}

/// Draws `shots` independent outcomes by inverse-CDF sampling of the Born
/// distribution. Bit-reproducible for a fixed seed.
pub fn simulate_shots(
    sic: &SicPovm,
    rho: &DensityMatrix,
    shots: u64,
    seed: u64,
) -> Result<CountVector> {
    if shots == 0 {
        return Err(Error::InvalidArgument("shots must be at least 1".into()));
    }
    let p = born_probabilities(sic, rho)?;
    let mut cdf = Vec::with_capacity(p.probs.len());
    let mut acc = 0.0;
    for &prob in &p.probs {
        acc += prob.max(0.0);
        cdf.push(acc);
    }
    let mut counts = vec![0u64; p.probs.len()];
    let mut rng = CounterRng::new(seed, 0);
    for _ in 0..shots {
        let u = rng.next_f64();
        // clamp to the last outcome when u lands past the accumulated sum
        let outcome = cdf
            .iter()
            .position(|&c| u < c)
            .unwrap_or(counts.len() - 1);
        counts[outcome] += 1;
    }
    Ok(CountVector { shots, counts })
}

/// Linear-inversion estimate from empirical frequencies. Always unit
/// trace; positivity is not guaranteed at finite statistics.
pub fn estimate_state(dual: &DualFrame, counts: &CountVector) -> Result<HermitianOp> {
    let total: u64 = counts.counts.iter().sum();
    if total == 0 {
        return Err(Error::InvalidArgument("empty count vector".into()));
    }
    if counts.counts.len() != dual.dim * dual.dim {
        return Err(Error::DimensionMismatch(
            counts.counts.len(),
            dual.dim * dual.dim,
        ));
    }
    let freqs: Vec<f64> = counts
        .counts
        .iter()
        .map(|&c| c as f64 / total as f64)
        .collect();
    let terms: Vec<(f64, &HermitianOp)> =
        freqs.iter().copied().zip(&dual.ops).collect();
    HermitianOp::linear_combination(&terms)
}
