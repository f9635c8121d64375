//! Shared oracle code for the integration suites. Determinants and root
//! finding here deliberately avoid the library's Jacobi eigensolver so the
//! acceptance checks have an independent reference path.

use num_complex::Complex64;
use sicpovm::rng::CounterRng;
use sicpovm::HermitianOp;

/// Random density-matrix entries: normalized `G G†` for a box-random `G`.
pub fn random_density_entries(dim: usize, seed: u64) -> Vec<Complex64> {
    let mut rng = CounterRng::new(seed, 1);
    let g: Vec<Complex64> = (0..dim * dim)
        .map(|_| Complex64::new(2.0 * rng.next_f64() - 1.0, 2.0 * rng.next_f64() - 1.0))
        .collect();
    let mut gg = vec![Complex64::new(0.0, 0.0); dim * dim];
    for j in 0..dim {
        for k in 0..dim {
            let mut sum = Complex64::new(0.0, 0.0);
            for l in 0..dim {
                sum += g[j * dim + l] * g[k * dim + l].conj();
            }
            gg[j * dim + k] = sum;
        }
    }
    let trace: f64 = (0..dim).map(|j| gg[j * dim + j].re).sum();
    gg.iter().map(|z| z / trace).collect()
}

/// Determinant of a dense complex matrix by LU with partial pivoting.
pub fn lu_determinant(dim: usize, entries: &[Complex64]) -> Complex64 {
    let mut m = entries.to_vec();
    let mut det = Complex64::new(1.0, 0.0);
    for col in 0..dim {
        let mut piv = col;
        for r in col + 1..dim {
            if m[r * dim + col].norm() > m[piv * dim + col].norm() {
                piv = r;
            }
        }
        if m[piv * dim + col].norm() == 0.0 {
            return Complex64::new(0.0, 0.0);
        }
        if piv != col {
            for k in 0..dim {
                m.swap(col * dim + k, piv * dim + k);
            }
            det = -det;
        }
        det *= m[col * dim + col];
        for r in col + 1..dim {
            let factor = m[r * dim + col] / m[col * dim + col];
            for k in col..dim {
                let sub = factor * m[col * dim + k];
                m[r * dim + k] -= sub;
            }
        }
    }
    det
}

/// `det(H - x I)`; real up to rounding for Hermitian `H`.
pub fn char_poly_det(h: &HermitianOp, x: f64) -> f64 {
    let d = h.dim();
    let mut m: Vec<Complex64> = h.entries().to_vec();
    for j in 0..d {
        m[j * d + j] -= x;
    }
    lu_determinant(d, &m).re
}

/// Gershgorin interval containing every eigenvalue of `h`.
pub fn gershgorin_interval(h: &HermitianOp) -> (f64, f64) {
    let d = h.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..d {
        let center = h.get(j, j).re;
        let radius: f64 = (0..d).filter(|&k| k != j).map(|k| h.get(j, k).norm()).sum();
        lo = lo.min(center - radius);
        hi = hi.max(center + radius);
    }
    (lo, hi)
}

/// Extreme eigenvalues of `h` via sign-change bisection of the
/// characteristic polynomial; returns `(max_root, min_root)`.
pub fn extreme_eigenvalues_by_bisection(h: &HermitianOp, grid: usize) -> (f64, f64) {
    let (lo, hi) = gershgorin_interval(h);
    let f = |x: f64| char_poly_det(h, x);
    let n = grid.max(64);
    let mut changes: Vec<(f64, f64)> = Vec::new();
    let mut prev_x = lo;
    let mut prev_v = f(lo);
    for i in 1..=n {
        let x = lo + (hi - lo) * i as f64 / n as f64;
        let v = f(x);
        if prev_v == 0.0 || prev_v.signum() != v.signum() {
            changes.push((prev_x, x));
        }
        prev_x = x;
        prev_v = v;
    }
    assert!(!changes.is_empty(), "bisection oracle found no sign change");
    let bisect = |(mut a, mut b): (f64, f64)| {
        let fa = f(a);
        if fa == 0.0 {
            return a;
        }
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            let fm = f(mid);
            if fm == 0.0 {
                return mid;
            }
            if fm.signum() == fa.signum() {
                a = mid;
            } else {
                b = mid;
            }
        }
        0.5 * (a + b)
    };
    let min_root = bisect(changes[0]);
    let max_root = bisect(*changes.last().unwrap());
    (max_root, min_root)
}
