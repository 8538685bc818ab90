//! Riccati solutions from invariant subspaces: graph extraction X = Z2 Z1^{-1},
//! residuals, the canonical extremal pair from the half-plane spectra, the
//! Loewner ordering and projection-representation certificates, closed-loop
//! spectra, the split norm bound, and a brute-force eigenvector-subset oracle.

use serde::Serialize;

use crate::error::RiccatiError;
use crate::hamiltonian::HamiltonianMatrix;
use crate::krein::{self, Definiteness, KreinForm, SubspaceBasis};
use crate::linalg;
use crate::matrix::{C64, ComplexMatrix};
use crate::spectral::{HalfPlane, SpectralData};
use crate::subspaces::{self, ScSet};
use crate::tol::Tolerances;

/// Where a solution came from.
#[derive(Debug, Clone, Serialize)]
pub enum SolutionSource {
    ScSet(String),
    External,
}

/// A symmetrized solution candidate with its certificates.
#[derive(Debug, Clone)]
pub struct RiccatiSolution {
    pub x: ComplexMatrix,
    pub source: SolutionSource,
    /// Frobenius norm of A*X + XA + XBX - C.
    pub residual: f64,
    /// Spectral norm of the same matrix: the worst weak-form defect over
    /// unit vectors.
    pub weak_residual: f64,
    /// |X - X*| before symmetrization.
    pub asymmetry: f64,
    pub definiteness: Definiteness,
    pub closed_loop: Vec<C64>,
    /// Smallest singular value of X.
    pub invertibility: f64,
    /// Riccati residual acceptance: residual <= ricc_tol (|A||X| + |C| + |B||X|^2).
    pub accepted: bool,
}

/// Splits a subspace basis into upper/lower blocks and extracts
/// X = Z2 Z1^{-1} when the upper block is invertible at the configured
/// condition cap. The returned matrix is symmetrized; the recorded asymmetry
/// certifies Hermiticity of the raw quotient.
pub fn extract_graph(
    u: &SubspaceBasis,
    tols: &Tolerances,
) -> Result<(ComplexMatrix, f64), RiccatiError> {
    let n2 = u.ambient_dim;
    let n = n2 / 2;
    if u.dim() != n {
        return Err(RiccatiError::Subspace(crate::error::SubspaceError::DimensionMismatch {
            got: u.dim(),
            expected: n,
        }));
    }
    let z1 = u.basis.block(0, 0, n, n);
    let z2 = u.basis.block(n, 0, n, n);
    let svd = linalg::jacobi_svd(&z1);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    let smin = svd.sigma.last().copied().unwrap_or(0.0);
    if smin <= 0.0 || smax / smin > tols.graph_cond_cap {
        return Err(RiccatiError::NotAGraph { sigma_min: smin });
    }
    let z1_inv = linalg::inverse(&z1).map_err(RiccatiError::Linalg)?;
    let x_raw = z2.matmul(&z1_inv);
    let asymmetry = x_raw.asymmetry();
    Ok((x_raw.hermitian_part(), asymmetry))
}

/// Frobenius and spectral norms of A*X + XA + XBX - C. The spectral norm
/// bounds the weak-form defect |(Xu|Av) + (Au|Xv) + (BXu|Xv) - (Cu|v)| over
/// unit u, v.
pub fn riccati_residual(h: &HamiltonianMatrix, x: &ComplexMatrix) -> (f64, f64) {
    let r = h
        .a
        .adjoint()
        .matmul(x)
        .add(&x.matmul(&h.a))
        .add(&x.matmul(&h.b).matmul(x))
        .sub(&h.c);
    (r.fro_norm(), linalg::two_norm(&r))
}

fn residual_scale(h: &HamiltonianMatrix, x: &ComplexMatrix) -> f64 {
    let xn = linalg::two_norm(x);
    linalg::two_norm(&h.a) * xn + linalg::two_norm(&h.c) + linalg::two_norm(&h.b) * xn * xn
}

/// Packages a symmetrized X into a full solution record.
pub fn certify_solution(
    h: &HamiltonianMatrix,
    x: ComplexMatrix,
    asymmetry: f64,
    source: SolutionSource,
    tols: &Tolerances,
) -> Result<RiccatiSolution, RiccatiError> {
    let (residual, weak_residual) = riccati_residual(h, &x);
    let (vals, _) = linalg::hermitian_eigen(&x).map_err(RiccatiError::Linalg)?;
    let definiteness = krein::classify_from_eigenvalues(&vals, tols.neutral_tol);
    let closed_loop =
        linalg::eigenvalues(&h.a.add(&h.b.matmul(&x))).map_err(RiccatiError::Linalg)?;
    let svd = linalg::jacobi_svd(&x);
    let invertibility = svd.sigma.last().copied().unwrap_or(0.0);
    let accepted = residual <= tols.ricc_tol * residual_scale(h, &x).max(1.0)
        && asymmetry <= tols.sym_tol * linalg::two_norm(&x).max(1.0);
    Ok(RiccatiSolution {
        x,
        source,
        residual,
        weak_residual,
        asymmetry,
        definiteness,
        closed_loop,
        invertibility,
        accepted,
    })
}

/// Solution from one sc-set: build the invariant subspace, extract the graph,
/// certify.
pub fn solve_scset(
    h: &HamiltonianMatrix,
    s: &SpectralData,
    scset: &ScSet,
    tols: &Tolerances,
) -> Result<RiccatiSolution, RiccatiError> {
    let u = subspaces::build_subspace(&h.t, s, scset, tols)?;
    let (x, asym) = extract_graph(&u, tols)?;
    certify_solution(h, x, asym, SolutionSource::ScSet(scset.id()), tols)
}

/// The canonical extremal pair: X+ from the right half-plane spectrum, X-
/// from the left. Fails when imaginary eigenvalues are present.
pub fn canonical_pair(
    h: &HamiltonianMatrix,
    s: &SpectralData,
    tols: &Tolerances,
) -> Result<(RiccatiSolution, RiccatiSolution), RiccatiError> {
    if !s.indices_by_class(HalfPlane::Imaginary).is_empty() {
        return Err(RiccatiError::ImaginarySpectrum);
    }
    let side = |class: HalfPlane| -> Result<RiccatiSolution, RiccatiError> {
        let blocks: Vec<&ComplexMatrix> =
            s.indices_by_class(class).into_iter().map(|i| &s.root_bases[i]).collect();
        let basis = SubspaceBasis::new(&ComplexMatrix::hstack(&blocks), tols.rank_tol);
        let (x, asym) = extract_graph(&basis, tols)?;
        let tag = match class {
            HalfPlane::Right => "sc[+]",
            _ => "sc[-]",
        };
        certify_solution(h, x, asym, SolutionSource::ScSet(tag.into()), tols)
    };
    Ok((side(HalfPlane::Right)?, side(HalfPlane::Left)?))
}

/// Loewner-order certificate X- <= X <= X+, with the inverse ordering
/// X-^{-1} <= X^{-1} <= X+^{-1} checked whenever all three are invertible.
#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub min_eig_upper: f64,
    pub min_eig_lower: f64,
    pub inverses_checked: bool,
    pub inv_min_eig_upper: f64,
    pub inv_min_eig_lower: f64,
    pub pass: bool,
}

pub fn certify_order(
    x_minus: &ComplexMatrix,
    x: &ComplexMatrix,
    x_plus: &ComplexMatrix,
    tols: &Tolerances,
) -> Result<OrderReport, RiccatiError> {
    let min_eig_upper = linalg::min_eigenvalue(&x_plus.sub(x)).map_err(RiccatiError::Linalg)?;
    let min_eig_lower = linalg::min_eigenvalue(&x.sub(x_minus)).map_err(RiccatiError::Linalg)?;
    let invertible = |m: &ComplexMatrix| -> bool {
        let svd = linalg::jacobi_svd(m);
        let smin = svd.sigma.last().copied().unwrap_or(0.0);
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        smin > 1e-10 * smax.max(1.0)
    };
    let mut inv_min_eig_upper = 0.0;
    let mut inv_min_eig_lower = 0.0;
    let inverses_checked = invertible(x) && invertible(x_plus) && invertible(x_minus);
    if inverses_checked {
        let xi = linalg::inverse(x).map_err(RiccatiError::Linalg)?;
        let xpi = linalg::inverse(x_plus).map_err(RiccatiError::Linalg)?;
        let xmi = linalg::inverse(x_minus).map_err(RiccatiError::Linalg)?;
        inv_min_eig_upper =
            linalg::min_eigenvalue(&xpi.sub(&xi)).map_err(RiccatiError::Linalg)?;
        inv_min_eig_lower = linalg::min_eigenvalue(&xi.sub(&xmi)).map_err(RiccatiError::Linalg)?;
    }
    let pass = min_eig_upper >= -tols.order_tol
        && min_eig_lower >= -tols.order_tol
        && (!inverses_checked
            || (inv_min_eig_upper >= -tols.order_tol && inv_min_eig_lower >= -tols.order_tol));
    Ok(OrderReport {
        min_eig_upper,
        min_eig_lower,
        inverses_checked,
        inv_min_eig_upper,
        inv_min_eig_lower,
        pass,
    })
}

/// Representation X = X+ P + X- (I - P) with P = (X+ - X-)^{-1} (X - X-).
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionReport {
    pub idempotency: f64,
    pub representation: f64,
    pub pass: bool,
}

pub fn projection_representation(
    x: &ComplexMatrix,
    x_plus: &ComplexMatrix,
    x_minus: &ComplexMatrix,
    tols: &Tolerances,
) -> Result<(ComplexMatrix, ProjectionReport), RiccatiError> {
    let gap = x_plus.sub(x_minus);
    let svd = linalg::jacobi_svd(&gap);
    let smin = svd.sigma.last().copied().unwrap_or(0.0);
    let smax = svd.sigma.first().copied().unwrap_or(0.0);
    if smin <= 1e-12 * smax.max(1.0) {
        return Err(RiccatiError::SingularGap);
    }
    let gap_inv = linalg::inverse(&gap).map_err(RiccatiError::Linalg)?;
    let p = gap_inv.matmul(&x.sub(x_minus));
    let idempotency = linalg::two_norm(&p.matmul(&p).sub(&p));
    let recon = x_plus.matmul(&p).add(&x_minus.matmul(&ComplexMatrix::identity(p.rows()).sub(&p)));
    let representation = recon.sub(x).fro_norm();
    let pass = idempotency <= tols.proj_tol.max(1e-8)
        && representation <= tols.ricc_tol * (1.0 + linalg::two_norm(x));
    Ok((p, ProjectionReport { idempotency, representation, pass }))
}

/// Greedy matching of the closed-loop spectrum of A + BX against the
/// eigenvalues selected by the sc-set.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedLoopReport {
    /// (target re, target im, distance) per matched eigenvalue.
    pub matches: Vec<(f64, f64, f64)>,
    pub max_distance: f64,
    pub pass: bool,
}

pub fn closed_loop_spectrum(
    h: &HamiltonianMatrix,
    x: &ComplexMatrix,
    targets: &[(C64, usize)],
    tols: &Tolerances,
) -> Result<ClosedLoopReport, RiccatiError> {
    let got = linalg::eigenvalues(&h.a.add(&h.b.matmul(x))).map_err(RiccatiError::Linalg)?;
    let mut wanted: Vec<C64> = Vec::new();
    for &(v, m) in targets {
        for _ in 0..m {
            wanted.push(v);
        }
    }
    let mut remaining = got;
    let mut matches = Vec::new();
    let mut max_distance = 0.0f64;
    for w in &wanted {
        let (k, d) = remaining
            .iter()
            .enumerate()
            .map(|(k, g)| (k, (g - w).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .ok_or(RiccatiError::ImaginarySpectrum)?;
        matches.push((w.re, w.im, d));
        max_distance = max_distance.max(d);
        remaining.remove(k);
    }
    let pass = remaining.is_empty() && max_distance <= tols.match_tol;
    Ok(ClosedLoopReport { matches, max_distance, pass })
}

/// Norm bound sqrt(2/delta) max(|X+|, |X-|) with
/// delta = (gamma / (|X+| + |X-|))^2 / 2, valid for every Hermitian matrix
/// agreeing with X+ and X- on complementary invariant pieces.
pub fn split_bound(
    x_plus: &ComplexMatrix,
    x_minus: &ComplexMatrix,
    gamma_pos: f64,
) -> Result<f64, RiccatiError> {
    if gamma_pos <= 0.0 {
        return Err(RiccatiError::NotUniform { level: gamma_pos });
    }
    let min_plus = linalg::min_eigenvalue(x_plus).map_err(RiccatiError::Linalg)?;
    if min_plus < gamma_pos * (1.0 - 1e-10) {
        return Err(RiccatiError::NotUniform { level: min_plus });
    }
    let np = linalg::two_norm(x_plus);
    let nm = linalg::two_norm(x_minus);
    let delta = 0.5 * (gamma_pos / (np + nm)).powi(2);
    Ok((2.0 / delta).sqrt() * np.max(nm))
}

/// Result of the eigenvector-subset oracle.
pub struct BruteForceSolutions {
    pub solutions: Vec<ComplexMatrix>,
    /// Distinct subsets that collided onto an already-found solution at the
    /// deduplication distance.
    pub collisions: usize,
}

/// Brute-force oracle: every n-subset of eigenvectors of T with an
/// invertible upper block yields a candidate X = Z2 Z1^{-1}; Hermitian
/// candidates with small residual are kept and deduplicated. Requires a
/// diagonalizable T with distinct eigenvalues and 2n <= 12.
pub fn brute_force_solutions(
    h: &HamiltonianMatrix,
    tols: &Tolerances,
) -> Result<BruteForceSolutions, RiccatiError> {
    let n2 = 2 * h.n;
    if n2 > 12 {
        return Err(RiccatiError::Linalg(crate::error::LinalgError::DimensionCap {
            dim: n2,
            cap: 12,
        }));
    }
    let pairs = linalg::eig(&h.t).map_err(RiccatiError::Linalg)?;
    let tnorm = linalg::two_norm(&h.t).max(1.0);
    for i in 0..n2 {
        for j in i + 1..n2 {
            if (pairs[i].0 - pairs[j].0).norm() <= 10.0 * tols.cluster_tol * tnorm {
                return Err(RiccatiError::Defective);
            }
        }
    }

    // lexicographic enumeration of n-subsets of the 2n eigenvectors
    let n = h.n;
    fn subsets(n2: usize, n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (0..n).collect();
        loop {
            out.push(cur.clone());
            let mut i = n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] != i + n2 - n {
                    break;
                }
                if i == 0 {
                    return out;
                }
            }
            cur[i] += 1;
            for j in i + 1..n {
                cur[j] = cur[j - 1] + 1;
            }
        }
    }
    let mut solutions: Vec<ComplexMatrix> = Vec::new();
    let mut collisions = 0usize;
    for idx in subsets(n2, n) {
        let cols: Vec<Vec<C64>> = idx.iter().map(|&i| pairs[i].1.clone()).collect();
        let z = ComplexMatrix::from_columns(&cols);
        let z1 = z.block(0, 0, n, n);
        let z2 = z.block(n, 0, n, n);
        let svd = linalg::jacobi_svd(&z1);
        let smin = svd.sigma.last().copied().unwrap_or(0.0);
        let smax = svd.sigma.first().copied().unwrap_or(0.0);
        if smin <= 0.0 || smax / smin > tols.graph_cond_cap {
            continue;
        }
        let z1_inv = match linalg::inverse(&z1) {
            Ok(m) => m,
            Err(_) => continue,
        };
        let x_raw = z2.matmul(&z1_inv);
        let xnorm = linalg::two_norm(&x_raw).max(1.0);
        if x_raw.asymmetry() > tols.sym_tol * xnorm {
            continue;
        }
        let x = x_raw.hermitian_part();
        let (res, _) = riccati_residual(h, &x);
        if res > tols.ricc_tol * residual_scale(h, &x).max(1.0) {
            continue;
        }
        let duplicate = solutions
            .iter()
            .any(|y| y.sub(&x).fro_norm() <= tols.dedup_tol * x.fro_norm().max(1.0));
        if duplicate {
            collisions += 1;
        } else {
            solutions.push(x);
        }
    }
    Ok(BruteForceSolutions { solutions, collisions })
}

/// Per-sc-set solution report in wire form.
#[derive(Debug, Clone, Serialize)]
pub struct SolutionJson {
    pub scset: crate::subspaces::ScSetJson,
    pub x: crate::json::MatrixJson,
    pub residual: f64,
    pub weak_residual: f64,
    pub asymmetry: f64,
    pub definiteness: Definiteness,
    pub closed_loop: Vec<(f64, f64)>,
    pub invertibility: f64,
    pub order_check: Option<OrderReport>,
    pub projection_check: Option<ProjectionReport>,
    pub closed_loop_check: Option<ClosedLoopReport>,
    pub accepted: bool,
}

impl RiccatiSolution {
    pub fn to_json(
        &self,
        scset: crate::subspaces::ScSetJson,
        order: Option<OrderReport>,
        projection: Option<ProjectionReport>,
        closed_loop: Option<ClosedLoopReport>,
    ) -> SolutionJson {
        SolutionJson {
            scset,
            x: crate::json::MatrixJson::from(&self.x),
            residual: self.residual,
            weak_residual: self.weak_residual,
            asymmetry: self.asymmetry,
            definiteness: self.definiteness,
            closed_loop: self.closed_loop.iter().map(|z| (z.re, z.im)).collect(),
            invertibility: self.invertibility,
            order_check: order,
            projection_check: projection,
            closed_loop_check: closed_loop,
            accepted: self.accepted,
        }
    }
}

/// Verifies that the graph of a Hermitian X is hypermaximal J1-neutral; the
/// numerical face of selfadjointness.
pub fn graph_is_selfadjoint(x: &ComplexMatrix, tol: f64) -> Result<bool, RiccatiError> {
    let u = SubspaceBasis::graph(x);
    let j1 = KreinForm::j1(x.rows());
    krein::is_hypermaximal_neutral(&j1, &u, tol)
        .map_err(|e| RiccatiError::Subspace(crate::error::SubspaceError::Krein(e)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::{assemble, scalar_mode};
    use crate::rng::DetRng;
    use crate::spectral::analyze_spectrum;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn swap_block() -> HamiltonianMatrix {
        scalar_mode(c(0.0, 0.0), 1.0, 1.0, &tols())
    }

    #[test]
    fn extract_graph_identity_line() {
        let u = SubspaceBasis::new(
            &ComplexMatrix::from_columns(&[vec![c(1.0, 0.0), c(1.0, 0.0)]]),
            1e-13,
        );
        let (x, asym) = extract_graph(&u, &tols()).unwrap();
        assert!((x[(0, 0)] - c(1.0, 0.0)).norm() < 1e-14);
        assert!(asym < 1e-14);
    }

    #[test]
    fn extract_graph_vertical_line_fails() {
        let u = SubspaceBasis::new(
            &ComplexMatrix::from_columns(&[vec![c(0.0, 0.0), c(1.0, 0.0)]]),
            1e-13,
        );
        assert!(matches!(extract_graph(&u, &tols()), Err(RiccatiError::NotAGraph { .. })));
    }

    #[test]
    fn residual_examples() {
        // A = 0, B = C = I, X = I: X^2 - I = 0
        let h = assemble(
            &ComplexMatrix::zeros(2, 2),
            &ComplexMatrix::identity(2),
            &ComplexMatrix::identity(2),
            &tols(),
        )
        .unwrap();
        let (r, w) = riccati_residual(&h, &ComplexMatrix::identity(2));
        assert_eq!(r, 0.0);
        assert_eq!(w, 0.0);
        // X = 0 leaves -C
        let (r0, _) = riccati_residual(&h, &ComplexMatrix::zeros(2, 2));
        assert!((r0 - h.c.fro_norm()).abs() < 1e-15);
        // mode k with X = sqrt(k): exact cancellation up to rounding
        let k = 7.0f64;
        let hk = scalar_mode(c(0.0, k * k), 1.0, k, &tols());
        let (rk, _) = riccati_residual(&hk, &ComplexMatrix::diag(&[c(k.sqrt(), 0.0)]));
        assert!(rk <= 1e-12, "mode residual {rk}");
    }

    #[test]
    fn canonical_pair_swap_block() {
        let h = swap_block();
        let s = analyze_spectrum(&h.t, &tols()).unwrap();
        let (xp, xm) = canonical_pair(&h, &s, &tols()).unwrap();
        assert!((xp.x[(0, 0)] - c(1.0, 0.0)).norm() < 1e-12);
        assert!((xm.x[(0, 0)] + c(1.0, 0.0)).norm() < 1e-12);
        assert!(xp.accepted && xm.accepted);
        assert!(matches!(xp.definiteness, Definiteness::UniformPos(_)));
        assert!(matches!(xm.definiteness, Definiteness::UniformNeg(_)));
    }

    #[test]
    fn canonical_pair_scalar_quadratic() {
        // scalar a > 0: roots (-a +- sqrt(a^2 + bc))/b of b X^2 + 2a X - c
        let (a, b, cc) = (0.8, 1.3, 2.1);
        let h = scalar_mode(c(a, 0.0), b, cc, &tols());
        let s = analyze_spectrum(&h.t, &tols()).unwrap();
        let (xp, xm) = canonical_pair(&h, &s, &tols()).unwrap();
        let disc = (a * a + b * cc).sqrt();
        assert!((xp.x[(0, 0)].re - (-a + disc) / b).abs() < 1e-12);
        assert!((xm.x[(0, 0)].re - (-a - disc) / b).abs() < 1e-12);
    }

    #[test]
    fn canonical_pair_rejects_imaginary_spectrum() {
        // A = i, B = C = 0: T has imaginary eigenvalues
        let h = assemble(
            &ComplexMatrix::diag(&[c(0.0, 1.0)]),
            &ComplexMatrix::zeros(1, 1),
            &ComplexMatrix::zeros(1, 1),
            &tols(),
        )
        .unwrap();
        let s = analyze_spectrum(&h.t, &tols()).unwrap();
        assert!(matches!(canonical_pair(&h, &s, &tols()), Err(RiccatiError::ImaginarySpectrum)));
    }

    #[test]
    fn order_boundary_and_violation() {
        let x_plus = ComplexMatrix::identity(2);
        let x_minus = ComplexMatrix::identity(2).scale(c(-1.0, 0.0));
        // boundary: X = X+
        let rep = certify_order(&x_minus, &x_plus, &x_plus, &tols()).unwrap();
        assert!(rep.pass);
        assert!(rep.min_eig_upper.abs() < 1e-12);
        // violation: X outside the bracket
        let bad = ComplexMatrix::identity(2).scale(c(2.0, 0.0));
        let rep = certify_order(&x_minus, &bad, &x_plus, &tols()).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn projection_extremes() {
        let x_plus = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let x_minus = ComplexMatrix::diag(&[c(-1.0, 0.0), c(-0.5, 0.0)]);
        let (p, rep) = projection_representation(&x_plus, &x_plus, &x_minus, &tols()).unwrap();
        assert!(p.sub(&ComplexMatrix::identity(2)).fro_norm() < 1e-12);
        assert!(rep.pass);
        let (p, rep) = projection_representation(&x_minus, &x_plus, &x_minus, &tols()).unwrap();
        assert!(p.fro_norm() < 1e-12);
        assert!(rep.pass);
    }

    #[test]
    fn projection_mixed_modal() {
        // two modes (k = 1, 2), mixed signs: X = diag(1, -sqrt 2),
        // X+ = diag(1, sqrt 2), X- = -X+, P = diag(1, 0)
        let s2 = 2.0f64.sqrt();
        let x_plus = ComplexMatrix::diag(&[c(1.0, 0.0), c(s2, 0.0)]);
        let x_minus = x_plus.scale(c(-1.0, 0.0));
        let x = ComplexMatrix::diag(&[c(1.0, 0.0), c(-s2, 0.0)]);
        let (p, rep) = projection_representation(&x, &x_plus, &x_minus, &tols()).unwrap();
        assert!(p.sub(&ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 0.0)])).fro_norm() < 1e-10);
        assert!(rep.idempotency <= 1e-10);
        assert!(rep.pass);
    }

    #[test]
    fn projection_singular_gap() {
        let x = ComplexMatrix::identity(2);
        assert!(matches!(
            projection_representation(&x, &x, &x, &tols()),
            Err(RiccatiError::SingularGap)
        ));
    }

    #[test]
    fn closed_loop_mode() {
        // mode k, X = sqrt(k): A + BX = ik^2 + sqrt(k)
        let k = 9.0f64;
        let h = scalar_mode(c(0.0, k * k), 1.0, k, &tols());
        let x = ComplexMatrix::diag(&[c(k.sqrt(), 0.0)]);
        let rep =
            closed_loop_spectrum(&h, &x, &[(c(k.sqrt(), k * k), 1)], &tols()).unwrap();
        assert!(rep.pass, "max distance {}", rep.max_distance);
    }

    #[test]
    fn split_bound_values() {
        // X+ = I, X- = -I, gamma = 1: delta = 1/8, bound 4
        let i2 = ComplexMatrix::identity(2);
        let b = split_bound(&i2, &i2.scale(c(-1.0, 0.0)), 1.0).unwrap();
        assert!((b - 4.0).abs() < 1e-12);
        // X+ = 2I, X- = 0, gamma = 2: delta = 1/2, bound 4
        let b = split_bound(&i2.scale(c(2.0, 0.0)), &ComplexMatrix::zeros(2, 2), 2.0).unwrap();
        assert!((b - 4.0).abs() < 1e-12);
        assert!(matches!(
            split_bound(&i2, &i2.scale(c(-1.0, 0.0)), 0.0),
            Err(RiccatiError::NotUniform { .. })
        ));
    }

    #[test]
    fn brute_force_swap_block() {
        let h = swap_block();
        let sols = brute_force_solutions(&h, &tols()).unwrap().solutions;
        assert_eq!(sols.len(), 2);
        let mut vals: Vec<f64> = sols.iter().map(|x| x[(0, 0)].re).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn brute_force_scalar_roots() {
        let (a, b, cc) = (0.5, 2.0, 1.5);
        let h = scalar_mode(c(a, 0.0), b, cc, &tols());
        let sols = brute_force_solutions(&h, &tols()).unwrap().solutions;
        assert_eq!(sols.len(), 2);
        let disc = (a * a + b * cc).sqrt();
        let mut got: Vec<f64> = sols.iter().map(|x| x[(0, 0)].re).collect();
        got.sort_by(|p, q| p.partial_cmp(q).unwrap());
        assert!((got[0] - (-a - disc) / b).abs() < 1e-12);
        assert!((got[1] - (-a + disc) / b).abs() < 1e-12);
    }

    #[test]
    fn brute_force_matches_scset_enumeration() {
        // 4x4 two-pair instance: exactly 4 Hermitian solutions either way
        let mut rng = DetRng::new(404);
        let a = rng.matrix(2, 2);
        let b = rng.psd_plus(2, 0.8);
        let cc = rng.psd_plus(2, 0.8);
        let h = assemble(&a, &b, &cc, &tols()).unwrap();
        let s = analyze_spectrum(&h.t, &tols()).unwrap();
        let pairing = crate::spectral::pair_skew_conjugate(&s, &tols()).unwrap();
        let scsets = subspaces::enumerate_scsets(&h.t, &s, &pairing, 64, 0, &tols());
        assert_eq!(scsets.len(), 4);
        let mut from_scsets: Vec<ComplexMatrix> = scsets
            .iter()
            .map(|sc| solve_scset(&h, &s, sc, &tols()).unwrap().x)
            .collect();
        let brute = brute_force_solutions(&h, &tols()).unwrap().solutions;
        assert_eq!(brute.len(), 4);
        for y in &brute {
            let (k, d) = from_scsets
                .iter()
                .enumerate()
                .map(|(k, x)| (k, x.sub(y).fro_norm()))
                .min_by(|p, q| p.1.partial_cmp(&q.1).unwrap())
                .unwrap();
            assert!(d <= 1e-8 * y.fro_norm().max(1.0), "unmatched solution, distance {d}");
            from_scsets.remove(k);
        }
    }

    #[test]
    fn brute_force_rejects_defective() {
        // B = C = 0, A a Jordan block: T defective
        let a = ComplexMatrix::new(2, 2, vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)])
            .unwrap();
        let zero = ComplexMatrix::zeros(2, 2);
        let h = assemble(&a, &zero, &zero, &tols()).unwrap();
        assert!(matches!(brute_force_solutions(&h, &tols()), Err(RiccatiError::Defective)));
    }

    #[test]
    fn asymmetry_certifies_selfadjointness() {
        let mut rng = DetRng::new(9);
        let x = rng.hermitian(3);
        assert!(graph_is_selfadjoint(&x, 1e-9).unwrap());
        let mut bad = x.clone();
        bad[(0, 2)] += c(1e-4, 0.0);
        assert!(!graph_is_selfadjoint(&bad, 1e-9).unwrap());
    }
}
