//! Analytic spectral bounds for the Gell-Mann-basis family: Weyl
//! inequalities on F and all R_nm, border-matrix characteristic
//! polynomials evaluated by a Schur-complement recursion, and the
//! dimension scan of the admissible parameter magnitude.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::basis::gell_mann_basis;
use crate::error::{Error, Result};
use crate::hermitian::HermitianOp;
use crate::sic::{make_family, purity};

/// Off-diagonal part of F in the Gell-Mann basis: zero diagonal,
/// `(1-i)/sqrt(2)` above the diagonal.
pub fn border_matrix_v(d: usize) -> HermitianOp {
    let s = 1.0 / 2.0f64.sqrt();
    HermitianOp::from_fn(d, |i, j| {
        if i < j {
            Complex64::new(s, -s)
        } else if i > j {
            Complex64::new(s, s)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("hermitian by construction")
}

/// `W = V - d(d+1) G_12`: like V but with `(1 - d(d+1) - i)/sqrt(2)` in
/// the (0,1) corner.
pub fn w_matrix(d: usize) -> HermitianOp {
    let s = 1.0 / 2.0f64.sqrt();
    let td = (d * (d + 1)) as f64;
    HermitianOp::from_fn(d, |i, j| {
        if i == 0 && j == 1 {
            Complex64::new(s * (1.0 - td), -s)
        } else if i == 1 && j == 0 {
            Complex64::new(s * (1.0 - td), s)
        } else if i < j {
            Complex64::new(s, -s)
        } else if i > j {
            Complex64::new(s, s)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
    .expect("hermitian by construction")
}

/// [lo, hi] interval containing all eigenvalues, from Gershgorin disks.
pub fn gershgorin_interval(h: &HermitianOp) -> (f64, f64) {
    let d = h.dim();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..d {
        let center = h.get(i, i).re;
        let radius: f64 = (0..d)
            .filter(|&j| j != i)
            .map(|j| h.get(i, j).norm())
            .sum();
        lo = lo.min(center - radius);
        hi = hi.max(center + radius);
    }
    (lo, hi)
}

/// Solves the dense complex system `a x = rhs` in place by Gaussian
/// elimination with partial pivoting. `a` is n x n row-major.
fn solve_complex(mut a: Vec<Complex64>, mut rhs: Vec<Complex64>) -> Result<(Vec<Complex64>, f64)> {
    let n = rhs.len();
    debug_assert_eq!(a.len(), n * n);
    let scale = a
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
        .max(f64::MIN_POSITIVE);
    let mut growth: f64 = 1.0;
    for col in 0..n {
        let pivot_row = (col..n)
            .max_by(|&p, &q| {
                a[p * n + col]
                    .norm()
                    .partial_cmp(&a[q * n + col].norm())
                    .unwrap()
            })
            .unwrap();
        let pivot = a[pivot_row * n + col];
        if pivot.norm() <= 1e-12 * scale {
            return Err(Error::SingularBlock(pivot.norm()));
        }
        growth = growth.max(scale / pivot.norm());
        if pivot_row != col {
            for k in 0..n {
                a.swap(col * n + k, pivot_row * n + k);
            }
            rhs.swap(col, pivot_row);
        }
        for row in col + 1..n {
            let factor = a[row * n + col] / pivot;
            if factor.norm() == 0.0 {
                continue;
            }
            for k in col..n {
                let sub = factor * a[col * n + k];
                a[row * n + k] -= sub;
            }
            let sub = factor * rhs[col];
            rhs[row] -= sub;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for k in row + 1..n {
            acc -= a[row * n + k] * x[k];
        }
        x[row] = acc / a[row * n + row];
    }
    Ok((x, growth))
}

/// Row-major entries of the scaled shifted border matrix, with diagonal
/// `-sqrt(2) v`, `1-i` above, `1+i` below.
fn v_tilde_entries(k: usize, v: f64) -> Vec<Complex64> {
    let diag = Complex64::new(-(2.0f64.sqrt()) * v, 0.0);
    let mut entries = vec![Complex64::new(0.0, 0.0); k * k];
    for i in 0..k {
        for j in 0..k {
            entries[i * k + j] = if i == j {
                diag
            } else if i < j {
                Complex64::new(1.0, -1.0)
            } else {
                Complex64::new(1.0, 1.0)
            };
        }
    }
    entries
}

/// One recursion step: the Schur-complement factor
/// `-sqrt(2) v - B_k inv(V~_k) C_k` for the border vectors `b` (row) and
/// their conjugates (column).
// returns (factor, mag, noise): `mag` is the magnitude of the cancelling
// terms and `noise` an estimate of the factor's rounding error, which is
// amplified by the conditioning of the inner solve near singular blocks
fn schur_factor(k: usize, v: f64, border: &[Complex64]) -> Result<(Complex64, f64, f64)> {
    let rhs: Vec<Complex64> = border.iter().map(Complex64::conj).collect();
    let (x, growth) = solve_complex(v_tilde_entries(k, v), rhs)?;
    let dot: Complex64 = border.iter().zip(&x).map(|(b, xi)| b * xi).sum();
    let shift = -(2.0f64.sqrt()) * v;
    let mag = shift.abs() + border.iter().zip(&x).map(|(b, xi)| (b * xi).norm()).sum::<f64>();
    Ok((Complex64::new(shift, 0.0) - dot, mag, mag * growth * 1e-15))
}

// returns (determinant, scale, noise): `scale` is the largest magnitude
// seen while accumulating and `noise` an absolute rounding-error bound
fn det_v_tilde(d: usize, v: f64) -> Result<(Complex64, f64, f64)> {
    debug_assert!(d >= 2);
    let mut det = Complex64::new(2.0 * v * v - 2.0, 0.0);
    let mut scale = det.norm();
    let mut noise = 0.0;
    let border = Complex64::new(1.0, -1.0);
    for k in 2..d {
        let (factor, mag, factor_noise) = schur_factor(k, v, &vec![border; k])?;
        scale = scale.max(det.norm() * mag);
        noise = noise * factor.norm() + det.norm() * factor_noise;
        det *= factor;
        scale = scale.max(det.norm());
    }
    Ok((det, scale, noise))
}

// the imaginary part of a determinant of a Hermitian-shifted matrix is
// pure rounding noise; it must be small relative to the largest partial
// product, not to the (possibly cancelled) final value
fn real_part_checked(det: Complex64, scale: f64, noise: f64) -> f64 {
    assert!(
        det.im.abs() <= 1e-10 * (1.0 + scale) + 10.0 * noise,
        "determinant imaginary residue {} too large (det {det}, scale {scale}, noise {noise})",
        det.im
    );
    det.re
}

/// `Det(V~_d)` at the real value `v`: a scaled characteristic polynomial
/// of V whose roots are the eigenvalues of V. Fails with a singular-block
/// error when `v` is an eigenvalue of an inner block; callers perturb.
pub fn char_poly_v(d: usize, v: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let (det, scale, noise) = det_v_tilde(d, v)?;
    Ok(real_part_checked(det, scale, noise))
}

/// `Det(W~)` at the real value `w`: the inner `V~_{d-1}` recursion
/// followed by a final step with border vector
/// `(1 - d(d+1) - i, 1-i, ..., 1-i)`.
pub fn char_poly_w(d: usize, w: f64) -> Result<f64> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let td = (d * (d + 1)) as f64;
    if d == 2 {
        let corner = Complex64::new(1.0 - td, -1.0);
        return Ok(2.0 * w * w - corner.norm_sqr());
    }
    let (inner, inner_scale, inner_noise) = det_v_tilde(d - 1, w)?;
    let mut border = vec![Complex64::new(1.0, -1.0); d - 1];
    border[0] = Complex64::new(1.0 - td, -1.0);
    let (factor, mag, factor_noise) = schur_factor(d - 1, w, &border)?;
    let det = inner * factor;
    let scale = inner_scale.max(inner.norm() * mag).max(det.norm());
    let noise = inner_noise * factor.norm() + inner.norm() * factor_noise;
    Ok(real_part_checked(det, scale, noise))
}

const ROOT_TOL: f64 = 1e-10;
const GRID_RETRIES: usize = 4;

fn eval_perturbed(poly: &impl Fn(f64) -> Result<f64>, x: f64) -> Result<f64> {
    match poly(x) {
        Ok(y) => Ok(y),
        Err(Error::SingularBlock(_)) => poly(x + 1e-12),
        Err(e) => Err(e),
    }
}

fn bisect_root(poly: &impl Fn(f64) -> Result<f64>, mut lo: f64, mut hi: f64, f_lo: f64) -> Result<f64> {
    while hi - lo > ROOT_TOL {
        let mid = 0.5 * (lo + hi);
        let f_mid = eval_perturbed(poly, mid)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Largest and smallest real roots of `poly` inside `[lo, hi]` by
/// sign-change bisection on a uniform grid, starting at `initial_grid`
/// points and retrying with 4x density while no sign change is found.
pub fn extreme_roots(
    poly: impl Fn(f64) -> Result<f64>,
    lo: f64,
    hi: f64,
    initial_grid: usize,
) -> Result<(f64, f64)> {
    if !(lo < hi) || initial_grid < 2 {
        return Err(Error::InvalidArgument(format!(
            "bad bracket [{lo}, {hi}] or grid {initial_grid}"
        )));
    }
    let mut points = initial_grid;
    for _ in 0..=GRID_RETRIES {
        let xs: Vec<f64> = (0..=points)
            .map(|i| lo + (hi - lo) * i as f64 / points as f64)
            .collect();
        let mut ys = Vec::with_capacity(xs.len());
        for &x in &xs {
            ys.push(eval_perturbed(&poly, x)?);
        }
        let mut brackets = Vec::new();
        for i in 0..points {
            if ys[i] == 0.0 {
                brackets.push((xs[i], xs[i], ys[i]));
            } else if (ys[i] > 0.0) != (ys[i + 1] > 0.0) {
                brackets.push((xs[i], xs[i + 1], ys[i]));
            }
        }
        if let (Some(first), Some(last)) = (brackets.first(), brackets.last()) {
            let min_root = bisect_root(&poly, first.0, first.1, first.2)?;
            let max_root = bisect_root(&poly, last.0, last.1, last.2)?;
            return Ok((max_root, min_root));
        }
        points *= 4;
    }
    Err(Error::NoSignChange)
}

/// Analytic Weyl-inequality bounds next to the numerically computed
/// admissible interval for the Gell-Mann basis.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundsReport {
    pub dim: usize,
    pub v1: f64,
    pub vd: f64,
    pub w1: f64,
    pub wd: f64,
    pub n1: f64,
    pub nd: f64,
    /// Interval containing all eigenvalues of F.
    pub f_bounds: (f64, f64),
    /// Interval containing all eigenvalues of every R_nn.
    pub rnn_bounds: (f64, f64),
    /// Interval containing all eigenvalues of every R_nm, n != m.
    pub rnm_bounds: (f64, f64),
    pub lambda_max: f64,
    pub lambda_min: f64,
    pub t0_bound: f64,
    pub t1_bound: f64,
    pub t0_numeric: f64,
    pub t1_numeric: f64,
    pub t_m_numeric: f64,
}

/// Extreme diagonal entries of `N = sum_n G_nn`:
/// `n1 = sum 1/sqrt(n(n+1))`, `nd = -sqrt((d-1)/d)`.
pub fn n_extremes(d: usize) -> (f64, f64) {
    let n1 = (1..d).map(|n| 1.0 / ((n * (n + 1)) as f64).sqrt()).sum();
    let nd = -(((d - 1) as f64) / d as f64).sqrt();
    (n1, nd)
}

pub fn weyl_bounds(d: usize) -> Result<BoundsReport> {
    if d < 2 {
        return Err(Error::BadDimension(d));
    }
    let (n1, nd) = n_extremes(d);
    let td = (d * (d + 1)) as f64;
    let grid = 8 * d;
    let (v_lo, v_hi) = gershgorin_interval(&border_matrix_v(d));
    let (v1, vd) = extreme_roots(|v| char_poly_v(d, v), v_lo - 1.0, v_hi + 1.0, grid)?;
    let (w_lo, w_hi) = gershgorin_interval(&w_matrix(d));
    let (w1, wd) = extreme_roots(|w| char_poly_w(d, w), w_lo - 1.0, w_hi + 1.0, grid)?;
    let f_bounds = (nd + vd, n1 + v1);
    let root = (((d - 1) as f64) / d as f64).sqrt();
    let rnn_bounds = (nd - td * n1 + vd, n1 + td * root + v1);
    let rnm_bounds = (nd + wd, n1 + w1);
    let dp1 = (d + 1) as f64;
    let lambda_max = (dp1 * f_bounds.1).max(rnn_bounds.1).max(rnm_bounds.1);
    let lambda_min = (dp1 * f_bounds.0).min(rnm_bounds.0).min(rnn_bounds.0);
    let d2 = (d * d) as f64;
    let family = make_family(&gell_mann_basis(d)?)?;
    Ok(BoundsReport {
        dim: d,
        v1,
        vd,
        w1,
        wd,
        n1,
        nd,
        f_bounds,
        rnn_bounds,
        rnm_bounds,
        lambda_max,
        lambda_min,
        t0_bound: -1.0 / (d2 * lambda_max),
        t1_bound: -1.0 / (d2 * lambda_min),
        t0_numeric: family.t0(),
        t1_numeric: family.t1(),
        t_m_numeric: family.t_m(),
    })
}

/// One dimension of the scan: the numeric admissible interval of the
/// Gell-Mann basis, its magnitude `t_m`, the ratio of `t_m` to the rank-1
/// ceiling `1/(d(d+1))^{3/2}`, and the purity at `t_m`.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ScanRow {
    pub d: usize,
    pub t0: f64,
    pub t1: f64,
    pub t_m: f64,
    pub ratio: f64,
    pub a_tm: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
}

impl ScanTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("d,t0,t1,t_m,ratio,a_tm\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}\n",
                row.d, row.t0, row.t1, row.t_m, row.ratio, row.a_tm
            ));
        }
        out
    }
}

pub fn dimension_scan(d_min: usize, d_max: usize) -> Result<ScanTable> {
    if d_min < 2 || d_min > d_max {
        return Err(Error::BadDimension(d_min));
    }
    let mut rows = Vec::with_capacity(d_max - d_min + 1);
    for d in d_min..=d_max {
        let family = make_family(&gell_mann_basis(d)?)?;
        let t_m = family.t_m();
        rows.push(ScanRow {
            d,
            t0: family.t0(),
            t1: family.t1(),
            t_m,
            ratio: t_m * ((d * (d + 1)) as f64).powf(1.5),
            a_tm: purity(t_m, d),
        });
    }
    Ok(ScanTable { rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::GellMannIndex;
    use crate::rng::CounterRng;
    use crate::test_oracles::lu_determinant;

    fn direct_det_v(d: usize, v: f64) -> f64 {
        let det = lu_determinant(d, &v_tilde_entries(d, v));
        assert!(det.im.abs() <= 1e-9 * (1.0 + det.norm()));
        det.re
    }

    fn w_tilde_entries(d: usize, w: f64) -> Vec<Complex64> {
        let mut entries = v_tilde_entries(d, w);
        let td = (d * (d + 1)) as f64;
        entries[1] = Complex64::new(1.0 - td, -1.0);
        entries[d] = Complex64::new(1.0 - td, 1.0);
        entries
    }

    #[test]
    fn border_matrix_d2_entries() {
        let v = border_matrix_v(2);
        let s = 1.0 / 2.0f64.sqrt();
        assert_eq!(v.get(0, 1), Complex64::new(s, -s));
        assert_eq!(v.get(1, 0), Complex64::new(s, s));
        assert_eq!(v.get(0, 0), Complex64::new(0.0, 0.0));
        assert!(v.trace().abs() < 1e-15);
    }

    #[test]
    fn border_matrix_is_offdiagonal_part_of_f() {
        for d in 2..=12 {
            let f = gell_mann_basis(d).unwrap().sum_f().clone();
            let n = HermitianOp::from_fn(d, |i, j| {
                if i == j {
                    f.get(i, i)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            })
            .unwrap();
            let v = HermitianOp::linear_combination(&[(1.0, &f), (-1.0, &n)]).unwrap();
            assert!(v.max_abs_diff(&border_matrix_v(d)).unwrap() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn n_extremes_match_diagonal_of_f() {
        for d in 2..=12 {
            let f = gell_mann_basis(d).unwrap().sum_f().clone();
            let diag: Vec<f64> = (0..d).map(|i| f.get(i, i).re).collect();
            let (n1, nd) = n_extremes(d);
            let hi = diag.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            let lo = diag.iter().cloned().fold(f64::INFINITY, f64::min);
            assert!((hi - n1).abs() < 1e-12, "d = {d}");
            assert!((lo - nd).abs() < 1e-12, "d = {d}");
        }
    }

    #[test]
    fn char_poly_v_base_case() {
        assert!(char_poly_v(2, 1.0).unwrap().abs() < 1e-12);
        assert!(char_poly_v(2, -1.0).unwrap().abs() < 1e-12);
        assert!((char_poly_v(2, 0.0).unwrap() + 2.0).abs() < 1e-12);
    }

    #[test]
    fn char_poly_v_matches_direct_determinant() {
        let direct = direct_det_v(3, 0.0);
        let recursive = char_poly_v(3, 0.0).unwrap();
        assert!((recursive - direct).abs() < 1e-9 * (1.0 + direct.abs()));

        let mut rng = CounterRng::new(17, 0);
        for _ in 0..20 {
            let v = 20.0 * rng.next_f64() - 10.0;
            let direct = direct_det_v(5, v);
            let recursive = match char_poly_v(5, v) {
                Ok(x) => x,
                Err(Error::SingularBlock(_)) => continue,
                Err(e) => panic!("{e}"),
            };
            assert!(
                (recursive - direct).abs() < 1e-8 * (1.0 + direct.abs()),
                "v = {v}: {recursive} vs {direct}"
            );
        }
    }

    #[test]
    fn char_poly_v_grid_agreement() {
        for d in 2..=10usize {
            let span = 2.0 * d as f64;
            for i in 0..50 {
                let v = -span + 2.0 * span * i as f64 / 49.0;
                let recursive = match char_poly_v(d, v) {
                    Ok(x) => x,
                    Err(Error::SingularBlock(_)) => continue,
                    Err(e) => panic!("{e}"),
                };
                let direct = direct_det_v(d, v);
                assert!(
                    (recursive - direct).abs() < 1e-8 * (1.0 + direct.abs()),
                    "d = {d}, v = {v}"
                );
            }
        }
    }

    #[test]
    fn char_poly_w_closed_form_d2() {
        for w in [-3.0, -0.5, 0.0, 0.7, 4.0] {
            let direct = lu_determinant(2, &w_tilde_entries(2, w));
            let value = char_poly_w(2, w).unwrap();
            assert!((value - direct.re).abs() < 1e-12 * (1.0 + direct.norm()));
        }
    }

    #[test]
    fn char_poly_w_roots_match_eigensolver() {
        let w = w_matrix(3);
        let spectrum = w.eig().unwrap();
        let (lo, hi) = gershgorin_interval(&w);
        let (max_root, min_root) =
            extreme_roots(|x| char_poly_w(3, x), lo - 1.0, hi + 1.0, 24).unwrap();
        assert!((max_root - spectrum.max_eigenvalue()).abs() < 1e-8);
        assert!((min_root - spectrum.min_eigenvalue()).abs() < 1e-8);
    }

    #[test]
    fn w_12_matches_w_matrix_and_all_r_nm_fit_its_interval() {
        // the spectra of V - d(d+1) G_nm are close but not identical
        // across (n, m) pairs; what the bound needs, and what holds, is
        // that every R_nm eigenvalue lies inside [nd + wd, n1 + w1]
        for d in [3usize, 4] {
            let td = (d * (d + 1)) as f64;
            let v = border_matrix_v(d);
            let basis = gell_mann_basis(d).unwrap();
            let g12 = GellMannIndex::from_pair(1, 2, d).unwrap();
            let w_12 = HermitianOp::linear_combination(&[
                (1.0, &v),
                (-td, basis.element(g12.flat - 1)),
            ])
            .unwrap();
            assert!(w_12.max_abs_diff(&w_matrix(d)).unwrap() < 1e-12);
            let spectrum = w_matrix(d).eig().unwrap();
            let (n1, nd) = n_extremes(d);
            let lo = nd + spectrum.min_eigenvalue();
            let hi = n1 + spectrum.max_eigenvalue();
            let f = basis.sum_f();
            for n in 1..d {
                for m in 1..d {
                    if n == m {
                        continue;
                    }
                    let g = GellMannIndex::from_pair(n, m, d).unwrap();
                    let r_nm = HermitianOp::linear_combination(&[
                        (1.0, f),
                        (-td, basis.element(g.flat - 1)),
                    ])
                    .unwrap();
                    let eig = r_nm.eig().unwrap();
                    assert!(eig.min_eigenvalue() >= lo - 1e-9, "d = {d}, n = {n}, m = {m}");
                    assert!(eig.max_eigenvalue() <= hi + 1e-9, "d = {d}, n = {n}, m = {m}");
                }
            }
        }
    }

    #[test]
    fn extreme_roots_quadratic() {
        let (hi, lo) = extreme_roots(|x| Ok(x * x - 4.0), -10.0, 10.0, 16).unwrap();
        assert!((hi - 2.0).abs() < 1e-9);
        assert!((lo + 2.0).abs() < 1e-9);
    }

    #[test]
    fn extreme_roots_v_base_case() {
        let (hi, lo) = extreme_roots(|x| char_poly_v(2, x), -5.0, 5.0, 16).unwrap();
        assert!((hi - 1.0).abs() < 1e-9);
        assert!((lo + 1.0).abs() < 1e-9);
    }

    #[test]
    fn extreme_roots_match_eigensolver_d3() {
        let spectrum = border_matrix_v(3).eig().unwrap();
        let (hi, lo) = extreme_roots(|x| char_poly_v(3, x), -5.0, 5.0, 24).unwrap();
        assert!((hi - spectrum.max_eigenvalue()).abs() < 1e-8);
        assert!((lo - spectrum.min_eigenvalue()).abs() < 1e-8);
    }

    #[test]
    fn extreme_roots_no_sign_change() {
        assert!(matches!(
            extreme_roots(|x| Ok(x * x + 1.0), -5.0, 5.0, 8),
            Err(Error::NoSignChange)
        ));
    }

    #[test]
    fn block_determinant_identity() {
        // Det([[A,B],[C,D]]) = Det(D) Det(A - B inv(D) C) for scalar A and
        // invertible D, checked against full LU on random Hermitian input
        let mut rng = CounterRng::new(99, 0);
        for trial in 0..10 {
            let n = 4;
            let h = crate::test_oracles::random_hermitian(n, 1000 + trial);
            let full = lu_determinant(n, h.entries());
            let d_block: Vec<Complex64> = (1..n)
                .flat_map(|i| (1..n).map(|j| h.get(i, j)).collect::<Vec<_>>())
                .collect();
            let det_d = lu_determinant(n - 1, &d_block);
            if det_d.norm() < 1e-9 {
                continue;
            }
            let rhs: Vec<Complex64> = (1..n).map(|i| h.get(i, 0)).collect();
            let (x, _) = solve_complex(d_block, rhs).unwrap();
            let correction: Complex64 = (1..n).map(|j| h.get(0, j) * x[j - 1]).sum();
            let schur = (h.get(0, 0) - correction) * det_d;
            assert!(
                (schur - full).norm() < 1e-9 * (1.0 + full.norm()),
                "trial {trial}"
            );
            let _ = rng.next_u64();
        }
    }

    #[test]
    fn gershgorin_contains_spectrum() {
        for d in 2..=8 {
            for h in [border_matrix_v(d), w_matrix(d)] {
                let (lo, hi) = gershgorin_interval(&h);
                let spectrum = h.eig().unwrap();
                assert!(spectrum.min_eigenvalue() >= lo - 1e-10);
                assert!(spectrum.max_eigenvalue() <= hi + 1e-10);
            }
        }
    }

    #[test]
    fn weyl_bounds_d2_contain_exact_extremes() {
        let report = weyl_bounds(2).unwrap();
        let magnitude = 3.0 * (1.5f64).sqrt();
        assert!(report.rnn_bounds.0 <= -magnitude && magnitude <= report.rnn_bounds.1);
        assert!(report.rnm_bounds.0 <= -magnitude && magnitude <= report.rnm_bounds.1);
        let (n1, nd) = n_extremes(2);
        assert!((n1 - 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
        assert!((nd + 1.0 / 2.0f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn weyl_bounds_are_conservative() {
        for d in 3..=6 {
            let report = weyl_bounds(d).unwrap();
            assert!(report.t0_bound.abs() <= report.t0_numeric.abs() + 1e-15, "d = {d}");
            assert!(report.t1_bound <= report.t1_numeric + 1e-15, "d = {d}");
            assert!(report.lambda_max > 0.0 && report.lambda_min < 0.0);
            let f = gell_mann_basis(d).unwrap().sum_f().clone();
            let spectrum = f.eig().unwrap();
            assert!(spectrum.max_eigenvalue() <= report.f_bounds.1 + 1e-10);
            assert!(spectrum.min_eigenvalue() >= report.f_bounds.0 - 1e-10);
        }
    }

    #[test]
    fn scan_ratio_decreasing_from_one() {
        let table = dimension_scan(2, 6).unwrap();
        assert_eq!(table.rows.len(), 5);
        assert!((table.rows[0].ratio - 1.0).abs() < 1e-9);
        for pair in table.rows.windows(2) {
            assert!(pair[1].ratio < pair[0].ratio);
        }
        for row in &table.rows {
            assert!(row.ratio > 0.0 && row.ratio <= 1.0 + 1e-12);
            assert!(row.t_m >= row.t1 - 1e-15);
            let df = row.d as f64;
            assert!(row.a_tm > 1.0 / df.powi(3) && row.a_tm <= 1.0 / (df * df) + 1e-12);
        }
    }

    #[test]
    fn scan_csv_format() {
        let table = dimension_scan(2, 3).unwrap();
        let csv = table.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "d,t0,t1,t_m,ratio,a_tm");
        let row = lines.next().unwrap();
        assert!(row.starts_with("2,"));
        assert_eq!(row.split(',').count(), 6);
        // 17 significant digits and byte-stable
        let ratio_field = row.split(',').nth(4).unwrap();
        assert_eq!(ratio_field.split('e').next().unwrap().len(), 18);
        assert!((ratio_field.parse::<f64>().unwrap() - 1.0).abs() < 1e-9);
        assert_eq!(csv, dimension_scan(2, 3).unwrap().to_csv());
    }
}
