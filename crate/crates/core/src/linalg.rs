//! Dense complex factorizations: LU, QR-algorithm Schur form, one-sided
//! Jacobi SVD, and the rank / eigenvalue / solve front-ends built on them.
//!
//! Everything is written directly against `ComplexMatrix`; matrices here are
//! at most a few hundred rows, so plain O(n^3) algorithms with careful
//! shifting and deflation are both fast enough and fully deterministic.



use crate::error::LinalgError;
use crate::matrix::{vec_norm, C64, ComplexMatrix};

/// Hard cap on eigenproblem dimensions; guards against accidental misuse.
pub const DEFAULT_DIM_CAP: usize = 512;

const EPS: f64 = f64::EPSILON;

fn czero() -> C64 {
    C64::new(0.0, 0.0)
}

// ---------------------------------------------------------------------------
// LU with partial pivoting
// ---------------------------------------------------------------------------

/// LU factorization PA = LU with partial pivoting.
pub struct Lu {
    n: usize,
    /// Packed L (unit diagonal, below) and U (on and above).
    lu: ComplexMatrix,
    /// Row permutation: row i of PA is row perm[i] of A.
    perm: Vec<usize>,
    smallest_pivot: f64,
}

impl Lu {
    pub fn factor(m: &ComplexMatrix) -> Result<Self, LinalgError> {
        if !m.is_square() {
            return Err(LinalgError::NonSquare { rows: m.rows(), cols: m.cols() });
        }
        let n = m.rows();
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let floor = EPS * m.max_abs() * n as f64;
        let mut smallest = f64::INFINITY;
        for k in 0..n {
            // pivot search in column k
            let (mut best, mut best_abs) = (k, lu[(k, k)].norm());
            for i in k + 1..n {
                let a = lu[(i, k)].norm();
                if a > best_abs {
                    best = i;
                    best_abs = a;
                }
            }
            if best_abs <= floor {
                return Err(LinalgError::Singular { pivot: best_abs });
            }
            smallest = smallest.min(best_abs);
            if best != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(best, j)];
                    lu[(best, j)] = tmp;
                }
                perm.swap(k, best);
            }
            let pivot = lu[(k, k)];
            for i in k + 1..n {
                let factor = lu[(i, k)] / pivot;
                lu[(i, k)] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[(k, j)];
                    lu[(i, j)] -= sub;
                }
            }
        }
        Ok(Self { n, lu, perm, smallest_pivot: if n == 0 { 0.0 } else { smallest } })
    }

    pub fn smallest_pivot(&self) -> f64 {
        self.smallest_pivot
    }

    pub fn solve_vec(&self, b: &[C64]) -> Vec<C64> {
        assert_eq!(b.len(), self.n);
        let n = self.n;
        let mut y: Vec<C64> = (0..n).map(|i| b[self.perm[i]]).collect();
        // forward: L y' = Pb
        for i in 0..n {
            for j in 0..i {
                let sub = self.lu[(i, j)] * y[j];
                y[i] -= sub;
            }
        }
        // backward: U x = y'
        for i in (0..n).rev() {
            for j in i + 1..n {
                let sub = self.lu[(i, j)] * y[j];
                y[i] -= sub;
            }
            y[i] /= self.lu[(i, i)];
        }
        y
    }

    pub fn solve_mat(&self, rhs: &ComplexMatrix) -> ComplexMatrix {
        assert_eq!(rhs.rows(), self.n);
        let cols: Vec<Vec<C64>> = (0..rhs.cols()).map(|j| self.solve_vec(&rhs.col(j))).collect();
        ComplexMatrix::from_columns(&cols)
    }
}

/// Solves M Y = RHS, reporting a two-norm condition estimate of M.
pub fn solve(m: &ComplexMatrix, rhs: &ComplexMatrix) -> Result<(ComplexMatrix, f64), LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() != rhs.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "solve: {}x{} vs rhs {}x{}",
            m.rows(),
            m.cols(),
            rhs.rows(),
            rhs.cols()
        )));
    }
    let lu = Lu::factor(m)?;
    let y = lu.solve_mat(rhs);
    let svd = jacobi_svd(m);
    let kappa = if svd.sigma.is_empty() || svd.sigma[svd.sigma.len() - 1] == 0.0 {
        f64::INFINITY
    } else {
        svd.sigma[0] / svd.sigma[svd.sigma.len() - 1]
    };
    Ok((y, kappa))
}

pub fn inverse(m: &ComplexMatrix) -> Result<ComplexMatrix, LinalgError> {
    let lu = Lu::factor(m)?;
    Ok(lu.solve_mat(&ComplexMatrix::identity(m.rows())))
}

// ---------------------------------------------------------------------------
// One-sided Jacobi SVD
// ---------------------------------------------------------------------------

/// Thin SVD data: M = U diag(sigma) V*, sigma descending.
pub struct Svd {
    pub u: ComplexMatrix,
    pub sigma: Vec<f64>,
    pub v: ComplexMatrix,
}

/// One-sided Jacobi SVD. Columns of M are orthogonalized by plane rotations;
/// small singular values come out with high relative accuracy, which the
/// rank decisions downstream depend on. V is always full n x n; for zero
/// singular values the corresponding U column is zero.
pub fn jacobi_svd(m: &ComplexMatrix) -> Svd {
    let n = m.cols();
    let mut w: Vec<Vec<C64>> = (0..n).map(|j| m.col(j)).collect();
    let mut v: Vec<Vec<C64>> = (0..n)
        .map(|j| {
            let mut e = vec![czero(); n];
            if n > 0 {
                e[j] = C64::new(1.0, 0.0);
            }
            e
        })
        .collect();

    let max_sweeps = 60;
    for _sweep in 0..max_sweeps {
        let mut converged = true;
        // columns at eps-scale relative to the largest are numerically zero;
        // rotating them only corrupts V through denormal arithmetic
        let scale2 = w
            .iter()
            .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>())
            .fold(0.0, f64::max);
        let floor2 = EPS * EPS * scale2;
        for i in 0..n.saturating_sub(1) {
            for j in i + 1..n {
                let a: f64 = w[i].iter().map(|z| z.norm_sqr()).sum();
                let b: f64 = w[j].iter().map(|z| z.norm_sqr()).sum();
                // g = w_i* w_j
                let g: C64 = w[i].iter().zip(&w[j]).map(|(x, y)| x.conj() * y).sum();
                let gn = g.norm();
                if a <= floor2 || b <= floor2 || gn <= 1e2 * EPS * (a * b).sqrt() {
                    continue;
                }
                converged = false;
                let alpha = g / gn;
                let tau = (b - a) / (2.0 * gn);
                let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = alpha * (t * c);
                for col in [&mut w, &mut v] {
                    let (ci, cj) = {
                        let wi = &col[i];
                        let wj = &col[j];
                        let ci: Vec<C64> =
                            wi.iter().zip(wj).map(|(x, y)| c * x - s.conj() * y).collect();
                        let cj: Vec<C64> = wi.iter().zip(wj).map(|(x, y)| s * x + c * y).collect();
                        (ci, cj)
                    };
                    col[i] = ci;
                    col[j] = cj;
                }
            }
        }
        if converged {
            break;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let norms: Vec<f64> = w.iter().map(|c| vec_norm(c)).collect();
    order.sort_by(|&p, &q| norms[q].partial_cmp(&norms[p]).unwrap());
    let sigma: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let u_cols: Vec<Vec<C64>> = order
        .iter()
        .map(|&k| {
            if norms[k] > 0.0 {
                w[k].iter().map(|z| z / norms[k]).collect()
            } else {
                vec![czero(); m.rows()]
            }
        })
        .collect();
    let v_cols: Vec<Vec<C64>> = order.iter().map(|&k| v[k].clone()).collect();
    Svd {
        u: ComplexMatrix::from_columns(&u_cols),
        sigma,
        v: ComplexMatrix::from_columns(&v_cols),
    }
}

/// Spectral norm (largest singular value).
pub fn two_norm(m: &ComplexMatrix) -> f64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0.0;
    }
    jacobi_svd(m).sigma[0]
}

/// Numerical rank together with orthonormal bases of range and null space.
pub struct RankInfo {
    pub rank: usize,
    /// Orthonormal basis of the range (rows x rank).
    pub range: ComplexMatrix,
    /// Orthonormal basis of the null space (cols x (cols - rank)).
    pub null: ComplexMatrix,
    pub sigma: Vec<f64>,
}

/// Rank relative to tol * sigma_max, per the SVD.
pub fn rank_decomp(m: &ComplexMatrix, tol: f64) -> RankInfo {
    let svd = jacobi_svd(m);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let rank = svd.sigma.iter().filter(|&&s| s > tol * smax && s > 0.0).count();
    let range = svd.u.block(0, 0, m.rows(), rank);
    let null = svd.v.block(0, rank, m.cols(), m.cols() - rank);
    RankInfo { rank, range, null, sigma: svd.sigma }
}

/// Orthonormal basis of the column span of M (drops directions below
/// tol * sigma_max).
pub fn orthonormal_columns(m: &ComplexMatrix, tol: f64) -> ComplexMatrix {
    let svd = jacobi_svd(m);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let rank = svd.sigma.iter().filter(|&&s| s > tol * smax && s > 0.0).count();
    svd.u.block(0, 0, m.rows(), rank)
}

// ---------------------------------------------------------------------------
// Complex Schur form: Hessenberg reduction + shifted QR iteration
// ---------------------------------------------------------------------------

/// Unitary Schur decomposition M = Q T Q* with T upper triangular.
pub struct Schur {
    pub t: ComplexMatrix,
    pub q: ComplexMatrix,
}

fn householder_hessenberg(m: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = m.rows();
    let mut h = m.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        // reflector annihilating h[k+2.., k]
        let x: Vec<C64> = (k + 1..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&x);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if x[0].norm() > 0.0 { x[0] / x[0].norm() } else { C64::new(1.0, 0.0) };
        let beta = -phase * xnorm;
        let mut v = x.clone();
        v[0] -= beta;
        let vnorm = vec_norm(&v);
        if vnorm <= EPS * xnorm {
            continue;
        }
        for z in v.iter_mut() {
            *z /= vnorm;
        }
        // h <- P h with P = I - 2 v v* acting on rows k+1..n
        for j in 0..n {
            let s: C64 = (0..v.len()).map(|i| v[i].conj() * h[(k + 1 + i, j)]).sum();
            let s2 = s * 2.0;
            for i in 0..v.len() {
                let sub = s2 * v[i];
                h[(k + 1 + i, j)] -= sub;
            }
        }
        // h <- h P on columns k+1..n
        for i in 0..n {
            let s: C64 = (0..v.len()).map(|j| h[(i, k + 1 + j)] * v[j]).sum();
            let s2 = s * 2.0;
            for j in 0..v.len() {
                let sub = s2 * v[j].conj();
                h[(i, k + 1 + j)] -= sub;
            }
        }
        // accumulate q <- q P
        for i in 0..n {
            let s: C64 = (0..v.len()).map(|j| q[(i, k + 1 + j)] * v[j]).sum();
            let s2 = s * 2.0;
            for j in 0..v.len() {
                let sub = s2 * v[j].conj();
                q[(i, k + 1 + j)] -= sub;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = czero();
        }
        h[(k + 1, k)] = beta;
    }
    (h, q)
}

/// Complex Givens rotation with G (a,b)^T = (r,0)^T,
/// G = [[c, s], [-conj(s), c]], c real.
fn givens(a: C64, b: C64) -> (f64, C64) {
    let bn = b.norm();
    if bn == 0.0 {
        return (1.0, czero());
    }
    let an = a.norm();
    let r = (an * an + bn * bn).sqrt();
    if an == 0.0 {
        return (0.0, b.conj() / bn);
    }
    let c = an / r;
    let s = (a / an) * b.conj() / r;
    (c, s)
}

/// Eigenvalues of [[a,b],[c,d]].
fn eig2x2(a: C64, b: C64, c: C64, d: C64) -> (C64, C64) {
    let mu = (a + d) * 0.5;
    let s = (a - d) * 0.5;
    let disc = (s * s + b * c).sqrt();
    (mu + disc, mu - disc)
}

/// Schur decomposition by shifted QR with deflation. Exact unitary
/// triangularization is used for 2x2 trailing blocks, which keeps the modal
/// building blocks of the examples at machine accuracy.
pub fn schur(m: &ComplexMatrix) -> Result<Schur, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    if n == 0 {
        return Ok(Schur { t: m.clone(), q: m.clone() });
    }
    let (mut h, mut q) = householder_hessenberg(m);
    let norm = m.fro_norm().max(EPS);

    let rotate = |h: &mut ComplexMatrix, q: &mut ComplexMatrix, k: usize, c: f64, s: C64| {
        let n = h.rows();
        // rows k, k+1 from the left
        for j in 0..n {
            let x = h[(k, j)];
            let y = h[(k + 1, j)];
            h[(k, j)] = c * x + s * y;
            h[(k + 1, j)] = -s.conj() * x + c * y;
        }
        // columns k, k+1 from the right (by G*)
        for mat in [h, q] {
            for i in 0..n {
                let x = mat[(i, k)];
                let y = mat[(i, k + 1)];
                mat[(i, k)] = c * x + s.conj() * y;
                mat[(i, k + 1)] = -s * x + c * y;
            }
        }
    };

    let mut hi = n - 1;
    let mut iter_at_hi = 0usize;
    let mut total = 0usize;
    let max_total = 60 * n.max(4);
    loop {
        // set negligible subdiagonals to zero; the absolute floor eps |M|
        // keeps clusters of eigenvalues far below the matrix norm from
        // stalling the iteration (deflating there is backward stable)
        for i in 1..=hi {
            let scale = (h[(i - 1, i - 1)].norm() + h[(i, i)].norm()).max(norm);
            if h[(i, i - 1)].norm() <= EPS * scale {
                h[(i, i - 1)] = czero();
            }
        }
        // find the active block [lo, hi]
        let mut lo = hi;
        while lo > 0 && h[(lo, lo - 1)] != czero() {
            lo -= 1;
        }
        if lo == hi {
            if hi == 0 {
                break;
            }
            hi -= 1;
            iter_at_hi = 0;
            continue;
        }
        if lo + 1 == hi {
            // exact 2x2 deflation: rotate an eigenvector into triangular position
            let (a, b) = (h[(lo, lo)], h[(lo, hi)]);
            let (cc, d) = (h[(hi, lo)], h[(hi, hi)]);
            let (l1, l2) = eig2x2(a, b, cc, d);
            // pick the eigenvalue defining the better-conditioned eigenvector
            let pick = |l: C64| -> (C64, C64) {
                let v1 = (b, l - a);
                let v2 = (l - d, cc);
                if v1.0.norm() + v1.1.norm() >= v2.0.norm() + v2.1.norm() {
                    v1
                } else {
                    v2
                }
            };
            let lam = if (l1 - d).norm() <= (l2 - d).norm() { l1 } else { l2 };
            let (vx, vy) = pick(lam);
            // G* e1 parallel to (vx, vy): G with G (vx,vy)^T = (r, 0)^T
            let (c, s) = givens(vx, vy);
            rotate(&mut h, &mut q, lo, c, s);
            h[(hi, lo)] = czero();
            if hi >= 2 {
                hi -= 2;
                iter_at_hi = 0;
                continue;
            }
            break;
        }

        total += 1;
        iter_at_hi += 1;
        if total > max_total {
            return Err(LinalgError::ConvergenceFailure { sweeps: total });
        }
        // Wilkinson shift from the trailing 2x2, with a deterministic
        // exceptional shift every 12 stalled iterations.
        let mut mu = {
            let (l1, l2) = eig2x2(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)]);
            if (l1 - h[(hi, hi)]).norm() <= (l2 - h[(hi, hi)]).norm() {
                l1
            } else {
                l2
            }
        };
        if iter_at_hi.is_multiple_of(12) {
            mu = h[(hi, hi)] + C64::new(1.5 * h[(hi, hi - 1)].norm(), 0.0);
        }
        // explicit shifted QR step on [lo, hi]
        for i in lo..=hi {
            h[(i, i)] -= mu;
        }
        let mut rots: Vec<(f64, C64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let (c, s) = givens(h[(k, k)], h[(k + 1, k)]);
            // left rotation on rows k, k+1
            for j in 0..n {
                let x = h[(k, j)];
                let y = h[(k + 1, j)];
                h[(k, j)] = c * x + s * y;
                h[(k + 1, j)] = -s.conj() * x + c * y;
            }
            rots.push((c, s));
        }
        for (k, (c, s)) in (lo..hi).zip(rots) {
            for mat in [&mut h, &mut q] {
                for i in 0..n {
                    let x = mat[(i, k)];
                    let y = mat[(i, k + 1)];
                    mat[(i, k)] = c * x + s.conj() * y;
                    mat[(i, k + 1)] = -s * x + c * y;
                }
            }
        }
        for i in lo..=hi {
            h[(i, i)] += mu;
        }
    }
    // enforce exact triangularity
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = czero();
        }
    }
    Ok(Schur { t: h, q })
}

// ---------------------------------------------------------------------------
// Eigen front-ends
// ---------------------------------------------------------------------------

/// Full eigendecomposition: all n eigenvalues with algebraic multiplicity
/// (repeated entries) and unit-norm eigenvectors, sorted by (re, im).
///
/// Residuals satisfy |M v - lambda v| <= O(eps) |M| per pair; for defective
/// eigenvalues the repeated entries share the eigenspace, as they must.
pub fn eig(m: &ComplexMatrix) -> Result<Vec<(C64, Vec<C64>)>, LinalgError> {
    eig_with_cap(m, DEFAULT_DIM_CAP)
}

pub fn eig_with_cap(
    m: &ComplexMatrix,
    cap: usize,
) -> Result<Vec<(C64, Vec<C64>)>, LinalgError> {
    if !m.is_square() {
        return Err(LinalgError::NonSquare { rows: m.rows(), cols: m.cols() });
    }
    if m.rows() > cap {
        return Err(LinalgError::DimensionCap { dim: m.rows(), cap });
    }
    let n = m.rows();
    let Schur { t, q } = schur(m)?;
    let tnorm = t.fro_norm().max(EPS);
    let mut out: Vec<(C64, Vec<C64>)> = Vec::with_capacity(n);
    for e in 0..n {
        let lam = t[(e, e)];
        // back-substitution for the triangular eigenvector
        let mut y = vec![czero(); e + 1];
        y[e] = C64::new(1.0, 0.0);
        for i in (0..e).rev() {
            let mut acc = czero();
            for j in i + 1..=e {
                acc += t[(i, j)] * y[j];
            }
            let mut den = t[(i, i)] - lam;
            if den.norm() < EPS * tnorm {
                den = C64::new(EPS * tnorm, 0.0);
            }
            y[i] = -acc / den;
            let yn = y[i].norm();
            if yn > 1.0 / EPS {
                for z in y.iter_mut() {
                    *z /= yn;
                }
            }
        }
        let mut v = vec![czero(); n];
        for (j, yj) in y.iter().enumerate() {
            if *yj == czero() {
                continue;
            }
            for i in 0..n {
                v[i] += q[(i, j)] * yj;
            }
        }
        let vn = vec_norm(&v);
        for z in v.iter_mut() {
            *z /= vn;
        }
        out.push((lam, v));
    }
    out.sort_by(|a, b| {
        (a.0.re, a.0.im)
            .partial_cmp(&(b.0.re, b.0.im))
            .unwrap()
    });
    Ok(out)
}

/// Eigenvalues only, sorted by (re, im).
pub fn eigenvalues(m: &ComplexMatrix) -> Result<Vec<C64>, LinalgError> {
    let s = schur(m)?;
    let mut vals: Vec<C64> = (0..m.rows()).map(|i| s.t[(i, i)]).collect();
    vals.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(vals)
}

/// Eigendecomposition of a Hermitian matrix: real ascending eigenvalues and
/// an orthonormal eigenbasis (columns). The input is symmetrized first.
pub fn hermitian_eigen(m: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), LinalgError> {
    let h = m.hermitian_part();
    let Schur { t, q } = schur(&h)?;
    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    let vals: Vec<f64> = (0..n).map(|i| t[(i, i)].re).collect();
    order.sort_by(|&a, &b| vals[a].partial_cmp(&vals[b]).unwrap());
    let cols: Vec<Vec<C64>> = order.iter().map(|&j| q.col(j)).collect();
    Ok((order.iter().map(|&j| vals[j]).collect(), ComplexMatrix::from_columns(&cols)))
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue(m: &ComplexMatrix) -> Result<f64, LinalgError> {
    Ok(hermitian_eigen(m)?.0[0])
}

/// sin of the largest principal angle between two subspaces given by
/// orthonormal column bases; the symmetric gap metric.
pub fn subspace_gap(u: &ComplexMatrix, w: &ComplexMatrix) -> f64 {
    let pu = u.matmul(&u.adjoint());
    let pw = w.matmul(&w.adjoint());
    two_norm(&pu.sub(&pw))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::DetRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn lu_solves_diagonal() {
        let m = ComplexMatrix::diag(&[c(2.0, 0.0), c(4.0, 0.0)]);
        let (y, kappa) = solve(&m, &ComplexMatrix::identity(2)).unwrap();
        assert!((y[(0, 0)] - c(0.5, 0.0)).norm() < 1e-15);
        assert!((y[(1, 1)] - c(0.25, 0.0)).norm() < 1e-15);
        assert!((kappa - 2.0).abs() < 1e-12);
    }

    #[test]
    fn lu_identity_passthrough() {
        let mut rng = DetRng::new(7);
        let rhs = rng.matrix(3, 2);
        let (y, _) = solve(&ComplexMatrix::identity(3), &rhs).unwrap();
        assert!(y.sub(&rhs).fro_norm() < 1e-15);
    }

    #[test]
    fn lu_construct_then_recover() {
        let mut rng = DetRng::new(42);
        let m = rng.matrix(8, 8);
        let y0 = rng.matrix(8, 3);
        let rhs = m.matmul(&y0);
        let (y, _) = solve(&m, &rhs).unwrap();
        assert!(y.sub(&y0).fro_norm() < 1e-10 * y0.fro_norm().max(1.0));
    }

    #[test]
    fn lu_flags_singular() {
        let m = ComplexMatrix::from_fn(2, 2, |i, _| c(i as f64 + 1.0, 0.0));
        assert!(matches!(Lu::factor(&m), Err(LinalgError::Singular { .. })));
    }

    #[test]
    fn svd_of_rank_one() {
        let mut rng = DetRng::new(3);
        let u = rng.vector(5);
        let v = rng.vector(4);
        let m = ComplexMatrix::from_fn(5, 4, |i, j| u[i] * v[j].conj());
        let info = rank_decomp(&m, 1e-12);
        assert_eq!(info.rank, 1);
        assert_eq!(info.null.cols(), 3);
        assert!(two_norm(&m.matmul(&info.null)) < 1e-11 * two_norm(&m));
    }

    #[test]
    fn rank_of_projection_matrix() {
        let m = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let info = rank_decomp(&m, 1e-12);
        assert_eq!(info.rank, 1);
        assert_eq!(info.null.cols(), 1);
        // null space is span{(0, 1)}
        assert!(info.null[(0, 0)].norm() < 1e-15);
        assert!((info.null[(1, 0)].norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn non_square_inputs_are_rejected() {
        let m = ComplexMatrix::zeros(2, 3);
        assert!(matches!(eig(&m), Err(LinalgError::NonSquare { .. })));
        assert!(matches!(Lu::factor(&m), Err(LinalgError::NonSquare { .. })));
        assert!(matches!(
            solve(&m, &ComplexMatrix::zeros(2, 1)),
            Err(LinalgError::NonSquare { .. })
        ));
    }

    #[test]
    fn svd_wide_matrix_null_space() {
        let mut rng = DetRng::new(8);
        let m = rng.matrix(3, 6);
        let info = rank_decomp(&m, 1e-12);
        assert_eq!(info.rank, 3);
        assert_eq!(info.null.cols(), 3);
        assert!(two_norm(&m.matmul(&info.null)) < 1e-12 * two_norm(&m));
        let vtv = info.null.adjoint().matmul(&info.null);
        assert!(vtv.sub(&ComplexMatrix::identity(3)).fro_norm() < 1e-13);
    }

    #[test]
    fn svd_zero_matrix() {
        let m = ComplexMatrix::zeros(3, 3);
        let info = rank_decomp(&m, 1e-12);
        assert_eq!(info.rank, 0);
        assert_eq!(info.null.cols(), 3);
    }

    #[test]
    fn svd_reconstructs() {
        let mut rng = DetRng::new(11);
        let m = rng.matrix(6, 4);
        let svd = jacobi_svd(&m);
        let thin_sig = ComplexMatrix::diag(&svd.sigma.iter().map(|&s| c(s, 0.0)).collect::<Vec<_>>());
        let recon = svd.u.matmul(&thin_sig).matmul(&svd.v.adjoint());
        let err = recon.sub(&m).fro_norm();
        assert!(err < 1e-12 * m.fro_norm(), "err {err}");
        // orthonormal factors
        assert!(svd.v.adjoint().matmul(&svd.v).sub(&ComplexMatrix::identity(4)).fro_norm() < 1e-13);
    }

    #[test]
    fn eig_symmetric_permutation() {
        let m = ComplexMatrix::from_fn(2, 2, |i, j| if i != j { c(1.0, 0.0) } else { czero() });
        let pairs = eig(&m).unwrap();
        let vals: Vec<C64> = pairs.iter().map(|p| p.0).collect();
        assert!((vals[0] - c(-1.0, 0.0)).norm() < 1e-14);
        assert!((vals[1] - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn eig_complex_2x2() {
        // [[i,1],[1,i]] has eigenvalues i+1, i-1 with eigenvectors (1, +-1)
        let m = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)])
            .unwrap();
        let pairs = eig(&m).unwrap();
        assert!((pairs[0].0 - c(-1.0, 1.0)).norm() < 1e-14);
        assert!((pairs[1].0 - c(1.0, 1.0)).norm() < 1e-14);
        for (lam, v) in &pairs {
            let mv = m.mat_vec(v);
            let res: f64 = mv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - lam * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-14);
            assert!((v[0].norm() - v[1].norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn eig_construct_then_recover() {
        let mut rng = DetRng::new(2024);
        let d: Vec<C64> = (0..6).map(|k| c(k as f64 - 2.5, (k * k) as f64 * 0.3)).collect();
        let q = rng.unitary(6);
        let m = q.matmul(&ComplexMatrix::diag(&d)).matmul(&q.adjoint());
        let pairs = eig(&m).unwrap();
        let mut got: Vec<C64> = pairs.iter().map(|p| p.0).collect();
        let mut want = d.clone();
        got.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        want.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
        for (g, w) in got.iter().zip(&want) {
            assert!((g - w).norm() < 1e-10, "{} vs {}", g, w);
        }
    }

    #[test]
    fn eig_residuals_on_random() {
        let mut rng = DetRng::new(55);
        for n in [3, 7, 12] {
            let m = rng.matrix(n, n);
            let nrm = two_norm(&m);
            for (lam, v) in eig(&m).unwrap() {
                let mv = m.mat_vec(&v);
                let res: f64 = mv
                    .iter()
                    .zip(&v)
                    .map(|(a, b)| (a - lam * b).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(res <= 1e-10 * nrm, "residual {} at n={}", res, n);
            }
        }
    }

    #[test]
    fn eig_jordan_block_shares_eigenvector() {
        let lam = c(2.0, -1.0);
        let m = ComplexMatrix::new(2, 2, vec![lam, c(1.0, 0.0), czero(), lam]).unwrap();
        let pairs = eig(&m).unwrap();
        for (l, v) in &pairs {
            assert!((l - lam).norm() < 1e-7);
            let mv = m.mat_vec(v);
            let res: f64 = mv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - l * b).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(res < 1e-10 * two_norm(&m));
        }
    }

    #[test]
    fn eig_rejects_dimension_cap() {
        let m = ComplexMatrix::identity(9);
        assert!(matches!(
            eig_with_cap(&m, 8),
            Err(LinalgError::DimensionCap { dim: 9, cap: 8 })
        ));
    }

    #[test]
    fn hermitian_eigen_orthonormal_on_degenerate() {
        // beta I has a fully degenerate spectrum; the basis must stay orthonormal
        let m = ComplexMatrix::identity(4).scale(c(0.7, 0.0));
        let (vals, q) = hermitian_eigen(&m).unwrap();
        for v in &vals {
            assert!((v - 0.7).abs() < 1e-14);
        }
        let qtq = q.adjoint().matmul(&q);
        assert!(qtq.sub(&ComplexMatrix::identity(4)).fro_norm() < 1e-13);
    }

    #[test]
    fn hermitian_eigen_known_values() {
        let m = ComplexMatrix::new(
            2,
            2,
            vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)],
        )
        .unwrap();
        let (vals, q) = hermitian_eigen(&m).unwrap();
        assert!((vals[0] - 1.0).abs() < 1e-13);
        assert!((vals[1] - 3.0).abs() < 1e-13);
        let recon = q
            .matmul(&ComplexMatrix::diag(&vals.iter().map(|&v| c(v, 0.0)).collect::<Vec<_>>()))
            .matmul(&q.adjoint());
        assert!(recon.sub(&m).fro_norm() < 1e-13);
    }

    #[test]
    fn similarity_invariance_of_spectra() {
        let mut rng = DetRng::new(99);
        for n in [4, 9, 24] {
            let m = rng.matrix(n, n);
            let q = rng.unitary(n);
            let m2 = q.adjoint().matmul(&m).matmul(&q);
            let e1 = eigenvalues(&m).unwrap();
            let mut e2 = eigenvalues(&m2).unwrap();
            for v in &e1 {
                let (k, d) = e2
                    .iter()
                    .enumerate()
                    .map(|(k, w)| (k, (v - w).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                assert!(d < 1e-9, "eigenvalue mismatch {}", d);
                e2.remove(k);
            }
        }
    }
}
