//! Hamiltonian block matrices T = [[A, B], [C, -A*]] and their structural
//! validation: the algebraic identities tying T to the two Krein forms, the
//! spectral gap and strip bounds for uniformly positive blocks, kernel
//! intersection criteria for imaginary eigenvalues, and the resolvent-decay
//! and subordination diagnostics for the diagonal/off-diagonal split T = G + S.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::HamiltonianError;
use crate::krein::KreinForm;
use crate::linalg;
use crate::matrix::{C64, ComplexMatrix};
use crate::spectral::{Pairing, SpectralData};
use crate::tol::Tolerances;

/// Assembled Hamiltonian with its diagonal/off-diagonal split and
/// positivity metadata.
#[derive(Debug, Clone)]
pub struct HamiltonianMatrix {
    pub n: usize,
    pub a: ComplexMatrix,
    pub b: ComplexMatrix,
    pub c: ComplexMatrix,
    /// [[A, B], [C, -A*]]
    pub t: ComplexMatrix,
    /// [[A, 0], [0, -A*]]
    pub g: ComplexMatrix,
    /// [[0, B], [C, 0]]
    pub s: ComplexMatrix,
    /// Smallest eigenvalue of B and C when both are positive definite.
    pub gamma: Option<f64>,
    /// max(|B|, |C|) in the spectral norm.
    pub b_norm: f64,
    /// True when B and C are (numerically) positive semidefinite.
    pub nonnegative: bool,
}

/// Builds T = [[A, B], [C, -A*]], validating Hermiticity of B and C and
/// computing the positivity metadata.
pub fn assemble(
    a: &ComplexMatrix,
    b: &ComplexMatrix,
    c: &ComplexMatrix,
    tols: &Tolerances,
) -> Result<HamiltonianMatrix, HamiltonianError> {
    let n = a.rows();
    if !a.is_square() || !b.is_square() || !c.is_square() || b.rows() != n || c.rows() != n {
        return Err(HamiltonianError::SizeMismatch);
    }
    for (m, which) in [(b, 'B'), (c, 'C')] {
        let asym = m.asymmetry();
        if asym > tols.herm_tol * m.fro_norm().max(1.0) {
            return Err(HamiltonianError::NotHermitian { which, asymmetry: asym });
        }
    }
    let neg_a_star = a.adjoint().scale(Complex64::new(-1.0, 0.0));
    let zero = ComplexMatrix::zeros(n, n);
    let t = ComplexMatrix::from_blocks(a, b, c, &neg_a_star);
    let g = ComplexMatrix::from_blocks(a, &zero, &zero, &neg_a_star);
    let s = ComplexMatrix::from_blocks(&zero, b, c, &zero);

    let min_b = linalg::min_eigenvalue(b).map_err(HamiltonianError::Linalg)?;
    let min_c = linalg::min_eigenvalue(c).map_err(HamiltonianError::Linalg)?;
    let nonnegative = min_b >= -tols.herm_tol && min_c >= -tols.herm_tol;
    let level = min_b.min(min_c);
    let gamma = if level > 0.0 { Some(level) } else { None };
    let b_norm = linalg::two_norm(b).max(linalg::two_norm(c));
    Ok(HamiltonianMatrix {
        n,
        a: a.clone(),
        b: b.clone(),
        c: c.clone(),
        t,
        g,
        s,
        gamma,
        b_norm,
        nonnegative,
    })
}

/// |J1 T + T* J1| / |T|; zero in exact arithmetic for every assembled block
/// form, since the residual collapses to diag(i(C*-C), i(B-B*)).
pub fn check_j1_skew(h: &HamiltonianMatrix) -> f64 {
    let j1 = KreinForm::j1(h.n).matrix();
    let res = j1.matmul(&h.t).add(&h.t.adjoint().matmul(&j1));
    let tn = h.t.fro_norm();
    if tn == 0.0 {
        res.fro_norm()
    } else {
        res.fro_norm() / tn
    }
}

/// Hermitian part of J2 T, which equals diag(C, B) identically, and its
/// smallest eigenvalue; the Hamiltonian is nonnegative iff that is >= 0.
pub struct AccretivityReport {
    pub herm_part: ComplexMatrix,
    pub min_eig: f64,
    /// |herm_part - diag(C, B)|, a pure floating-point identity check.
    pub identity_residual: f64,
}

pub fn check_j2_accretive(h: &HamiltonianMatrix) -> Result<AccretivityReport, HamiltonianError> {
    let j2 = KreinForm::j2(h.n).matrix();
    let herm = j2.matmul(&h.t).add(&h.t.adjoint().matmul(&j2)).scale(Complex64::new(0.5, 0.0));
    let zero = ComplexMatrix::zeros(h.n, h.n);
    let want = ComplexMatrix::from_blocks(&h.c, &zero, &zero, &h.b);
    let identity_residual = herm.sub(&want).fro_norm();
    let min_eig = linalg::min_eigenvalue(&herm).map_err(HamiltonianError::Linalg)?;
    Ok(AccretivityReport { herm_part: herm, min_eig, identity_residual })
}

/// One matched skew-conjugate pair in a symmetry report.
#[derive(Debug, Clone, Serialize)]
pub struct MatchedPair {
    pub plus_re: f64,
    pub plus_im: f64,
    pub minus_re: f64,
    pub minus_im: f64,
    pub mult: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SymmetryReport {
    pub pairs: Vec<MatchedPair>,
    pub imaginary: Vec<(f64, usize)>,
    pub violations: Vec<String>,
    pub pass: bool,
}

/// Wraps skew-conjugate pairing into a pass/fail report.
pub fn check_spectral_symmetry(s: &SpectralData, tols: &Tolerances) -> SymmetryReport {
    match crate::spectral::pair_skew_conjugate(s, tols) {
        Ok(pairing) => SymmetryReport {
            pairs: pairing
                .pairs
                .iter()
                .map(|&(p, m)| MatchedPair {
                    plus_re: s.eigenvalues[p].value.re,
                    plus_im: s.eigenvalues[p].value.im,
                    minus_re: s.eigenvalues[m].value.re,
                    minus_im: s.eigenvalues[m].value.im,
                    mult: s.eigenvalues[p].alg_mult,
                })
                .collect(),
            imaginary: pairing
                .imaginary
                .iter()
                .map(|&i| (s.eigenvalues[i].value.im, s.eigenvalues[i].alg_mult))
                .collect(),
            violations: Vec::new(),
            pass: true,
        },
        Err(e) => SymmetryReport {
            pairs: Vec::new(),
            imaginary: Vec::new(),
            violations: vec![e.to_string()],
            pass: false,
        },
    }
}

/// Gap |Re lambda| >= gamma and strip |Re lambda| <= max(|B|, |C|) checks for
/// uniformly positive Hamiltonians.
pub fn check_gap_strip(
    h: &HamiltonianMatrix,
    s: &SpectralData,
    tols: &Tolerances,
) -> Result<(bool, bool), HamiltonianError> {
    let gamma = h.gamma.ok_or(HamiltonianError::GammaUnset)?;
    let slack = tols.tol_axis * s.norm.max(1.0);
    let gap_ok = s.eigenvalues.iter().all(|e| e.value.re.abs() >= gamma - slack);
    let strip_ok = gap_ok && s.eigenvalues.iter().all(|e| e.value.re.abs() <= h.b_norm + slack);
    Ok((gap_ok, strip_ok))
}

/// For each purely imaginary eigenvalue it of A (equivalently of -A*),
/// checks ker(A - it) cap ker C = ker(A* + it) cap ker B = {0} via the rank
/// of stacked matrices. Returns the t values where an intersection is
/// nontrivial; an empty list predicts no imaginary point spectrum for a
/// nonnegative Hamiltonian.
pub fn check_imaginary_kernels(
    h: &HamiltonianMatrix,
    tols: &Tolerances,
) -> Result<Vec<f64>, HamiltonianError> {
    let n = h.n;
    let a_norm = linalg::two_norm(&h.a).max(1.0);
    let eigs = linalg::eigenvalues(&h.a).map_err(HamiltonianError::Linalg)?;
    let mut violating = Vec::new();
    for lam in eigs {
        if lam.re.abs() > tols.tol_axis * a_norm {
            continue;
        }
        let t = lam.im;
        let it = Complex64::new(0.0, t);
        let shift_a = h.a.sub(&ComplexMatrix::identity(n).scale(it));
        let stacked_c = ComplexMatrix::from_fn(
            2 * n,
            n,
            |i, j| if i < n { shift_a[(i, j)] } else { h.c[(i - n, j)] },
        );
        let dim_ac = n - linalg::rank_decomp(&stacked_c, tols.rank_tol.max(1e-10)).rank;
        let shift_astar = h.a.adjoint().add(&ComplexMatrix::identity(n).scale(it));
        let stacked_b = ComplexMatrix::from_fn(
            2 * n,
            n,
            |i, j| if i < n { shift_astar[(i, j)] } else { h.b[(i - n, j)] },
        );
        let dim_ab = n - linalg::rank_decomp(&stacked_b, tols.rank_tol.max(1e-10)).rank;
        if dim_ac > 0 || dim_ab > 0 {
            violating.push(t);
        }
    }
    violating.sort_by(|a, b| a.partial_cmp(b).unwrap());
    violating.dedup_by(|a, b| (*a - *b).abs() <= tols.tol_axis * a_norm);
    Ok(violating)
}

/// Decay table of |S (G - z)^{-1}| along a ray.
#[derive(Debug, Clone, Serialize)]
pub struct R0Table {
    /// (|z|, norm) rows.
    pub rows: Vec<(f64, f64)>,
    pub pass: bool,
}

/// Samples |S (G - z)^{-1}| for z = radius * direction; passes when the last
/// value is below `dominance_tol` and the tail of the table is decreasing.
pub fn check_r0_dominance(
    h: &HamiltonianMatrix,
    direction: C64,
    radii: &[f64],
    tols: &Tolerances,
) -> Result<R0Table, HamiltonianError> {
    check_r0_dominance_modal(std::slice::from_ref(h), direction, radii, tols)
}

/// Decay table for a family of blocks: the value at each z is the supremum
/// of the per-block norms.
pub fn check_r0_dominance_modal(
    modes: &[HamiltonianMatrix],
    direction: C64,
    radii: &[f64],
    tols: &Tolerances,
) -> Result<R0Table, HamiltonianError> {
    let dir = direction / direction.norm();
    let mut rows = Vec::with_capacity(radii.len());
    for &r in radii {
        let z = dir * r;
        let mut sup = 0.0f64;
        for h in modes {
            let eigs = linalg::eigenvalues(&h.g).map_err(HamiltonianError::Linalg)?;
            let margin = eigs.iter().map(|l| (l - z).norm()).fold(f64::INFINITY, f64::min);
            if margin <= tols.ring_tol * r.max(1.0) {
                return Err(HamiltonianError::RaySpectrumCollision { dist: margin });
            }
            let shifted = h.g.sub(&ComplexMatrix::identity(2 * h.n).scale(z));
            let inv = linalg::inverse(&shifted).map_err(HamiltonianError::Linalg)?;
            sup = sup.max(linalg::two_norm(&h.s.matmul(&inv)));
        }
        rows.push((r, sup));
    }
    Ok(R0Table { pass: r0_pass(&rows, tols.dominance_tol), rows })
}

fn r0_pass(rows: &[(f64, f64)], dominance_tol: f64) -> bool {
    if rows.is_empty() {
        return false;
    }
    let last_ok = rows[rows.len() - 1].1 <= dominance_tol;
    let half = rows.len() / 2;
    let decreasing = rows.windows(2).skip(half.saturating_sub(1)).all(|w| w[1].1 <= w[0].1);
    last_ok && decreasing
}

/// One probe for the subordination quotient: (|S u|, |u|, |G u|).
pub type SubordinationProbe = (f64, f64, f64);

/// b_p = max |Su| / (|u|^{1-p} |Gu|^p) over the probes.
pub fn subordination_estimate(
    probes: &[SubordinationProbe],
    p: f64,
) -> Result<f64, HamiltonianError> {
    assert!((0.0..=1.0).contains(&p));
    let mut best = 0.0f64;
    for &(su, u, gu) in probes {
        if u <= 0.0 || gu <= 0.0 {
            return Err(HamiltonianError::ZeroDenominator);
        }
        best = best.max(su / (u.powf(1.0 - p) * gu.powf(p)));
    }
    Ok(best)
}

/// Probe triples from the doubled standard basis of a block.
pub fn block_probes(h: &HamiltonianMatrix) -> Vec<SubordinationProbe> {
    let n2 = 2 * h.n;
    let mut out = Vec::with_capacity(n2);
    for j in 0..n2 {
        let mut e = vec![Complex64::new(0.0, 0.0); n2];
        e[j] = Complex64::new(1.0, 0.0);
        let su = crate::matrix::vec_norm(&h.s.mat_vec(&e));
        let gu = crate::matrix::vec_norm(&h.g.mat_vec(&e));
        out.push((su, 1.0, gu));
    }
    out
}

/// Bisection detector for the subordination exponent: the smallest p for
/// which b_p stays bounded along a geometric ladder of truncation sizes
/// (bounded meaning the last two ladder values differ by under 5%).
pub fn subordination_search(
    probes_up_to: impl Fn(usize) -> Vec<SubordinationProbe>,
    ladder: &[usize],
    iterations: usize,
) -> Result<f64, HamiltonianError> {
    assert!(ladder.len() >= 2);
    let bounded = |p: f64| -> Result<bool, HamiltonianError> {
        let mut values = Vec::with_capacity(ladder.len());
        for &kmax in ladder {
            values.push(subordination_estimate(&probes_up_to(kmax), p)?);
        }
        let last = values[values.len() - 1];
        let prev = values[values.len() - 2];
        Ok((last - prev).abs() <= 0.05 * prev.max(1e-300))
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..iterations {
        let mid = 0.5 * (lo + hi);
        if bounded(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// Structural check summary used by the analyze pipeline.
#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub j1_skew_residual: f64,
    pub j2_min_eig: f64,
    pub j2_identity_residual: f64,
    pub symmetry: SymmetryReport,
    pub gap_ok: Option<bool>,
    pub strip_ok: Option<bool>,
    pub imaginary_kernel_violations: Vec<f64>,
    pub gamma: Option<f64>,
    pub b_norm: f64,
    pub pass: bool,
}

/// Runs the full structural battery on an assembled Hamiltonian.
pub fn check_structure(
    h: &HamiltonianMatrix,
    s: &SpectralData,
    tols: &Tolerances,
) -> Result<StructureReport, HamiltonianError> {
    let scale = h.t.fro_norm().max(1.0);
    let j1 = check_j1_skew(h);
    let acc = check_j2_accretive(h)?;
    let symmetry = check_spectral_symmetry(s, tols);
    let (gap_ok, strip_ok) = match h.gamma {
        Some(_) => {
            let (g, st) = check_gap_strip(h, s, tols)?;
            (Some(g), Some(st))
        }
        None => (None, None),
    };
    let kernel_violations = check_imaginary_kernels(h, tols)?;
    let pass = j1 <= tols.struct_tol * scale
        && acc.identity_residual <= tols.struct_tol * scale
        && symmetry.pass
        && gap_ok.unwrap_or(true)
        && strip_ok.unwrap_or(true);
    Ok(StructureReport {
        j1_skew_residual: j1,
        j2_min_eig: acc.min_eig,
        j2_identity_residual: acc.identity_residual,
        symmetry,
        gap_ok,
        strip_ok,
        imaginary_kernel_violations: kernel_violations,
        gamma: h.gamma,
        b_norm: h.b_norm,
        pass,
    })
}

/// Skew-conjugate pairing for downstream enumeration.
pub fn pairing(s: &SpectralData, tols: &Tolerances) -> Result<Pairing, crate::error::SpectralError> {
    crate::spectral::pair_skew_conjugate(s, tols)
}

/// Counting-function ratio N(r)/r^{1-p} along a grid; verifies the
/// perturbation hypotheses on modal families.
pub fn counting_ratio(eigs: &[(C64, usize)], p: f64, radii: &[f64]) -> Vec<(f64, f64)> {
    radii
        .iter()
        .map(|&r| {
            let n = crate::spectral::counting_function(eigs, r) as f64;
            (r, n / r.powf(1.0 - p))
        })
        .collect()
}

/// Scalar mode [[a]], [[b]], [[c]] as a Hamiltonian block.
pub fn scalar_mode(a: C64, b: f64, c: f64, tols: &Tolerances) -> HamiltonianMatrix {
    assemble(
        &ComplexMatrix::diag(&[a]),
        &ComplexMatrix::diag(&[Complex64::new(b, 0.0)]),
        &ComplexMatrix::diag(&[Complex64::new(c, 0.0)]),
        tols,
    )
    .expect("scalar blocks are always Hermitian")
}
