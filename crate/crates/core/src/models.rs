//! Model generators: the diagonal modal family with eigenvalues ik^2 and
//! coupling k (the unbounded-solution showcase), a synthetic cubic modal
//! family matching the growth and subordination profile of third-order
//! differential operators, the periodic transport model with Toeplitz
//! multiplication operators, and the modal diagnostics built on them
//! (solution growth, dichotomy failure, Riesz-constant decay, step-function
//! solutions).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::ModelError;
use crate::hamiltonian::{assemble, scalar_mode, HamiltonianMatrix, SubordinationProbe};
use crate::linalg;
use crate::matrix::{vec_norm, C64, ComplexMatrix};
use crate::riccati::{self, RiccatiSolution, SolutionSource};
use crate::tol::Tolerances;

/// Per-mode closed-form eigendata kept for regression tests.
#[derive(Debug, Clone)]
pub struct ModeClosedForm {
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    /// Scalar solutions attached to the two eigenvalue choices.
    pub x_plus: f64,
    pub x_minus: f64,
}

/// An indexed family of small Hamiltonian blocks.
#[derive(Debug, Clone)]
pub struct ModalModel {
    pub modes: Vec<HamiltonianMatrix>,
    /// Physical mode index k per block.
    pub labels: Vec<usize>,
    pub closed_forms: Option<Vec<ModeClosedForm>>,
}

/// Which eigenvalue a mode contributes to an sc-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ModeSign {
    Plus,
    Minus,
}

impl ModalModel {
    /// Pairwise disjointness of the per-mode spectra, checked numerically on
    /// the generated range.
    pub fn validate_disjoint(&self) -> Result<(), ModelError> {
        let spectra: Vec<Vec<C64>> = self
            .modes
            .iter()
            .map(|h| linalg::eigenvalues(&h.t).map_err(|e| ModelError::Hamiltonian(e.into())))
            .collect::<Result<_, _>>()?;
        for i in 0..spectra.len() {
            for j in i + 1..spectra.len() {
                for a in &spectra[i] {
                    for b in &spectra[j] {
                        if (a - b).norm() <= 1e-9 * a.norm().max(1.0) {
                            return Err(ModelError::InvalidParameter(format!(
                                "modes {} and {} share an eigenvalue near {}",
                                self.labels[i], self.labels[j], a
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Direct sum of the blocks as a single Hamiltonian.
    pub fn direct_sum(&self, tols: &Tolerances) -> Result<HamiltonianMatrix, ModelError> {
        let total: usize = self.modes.iter().map(|h| h.n).sum();
        let mut a = ComplexMatrix::zeros(total, total);
        let mut b = ComplexMatrix::zeros(total, total);
        let mut c = ComplexMatrix::zeros(total, total);
        let mut off = 0;
        for h in &self.modes {
            for i in 0..h.n {
                for j in 0..h.n {
                    a[(off + i, off + j)] = h.a[(i, j)];
                    b[(off + i, off + j)] = h.b[(i, j)];
                    c[(off + i, off + j)] = h.c[(i, j)];
                }
            }
            off += h.n;
        }
        assemble(&a, &b, &c, tols).map_err(ModelError::Hamiltonian)
    }

    /// Eigenvalues of the diagonal blocks A_k with multiplicity, the input of
    /// the counting-function hypotheses.
    pub fn a_eigenvalues(&self) -> Vec<(C64, usize)> {
        let mut out = Vec::new();
        for h in &self.modes {
            if let Ok(vals) = linalg::eigenvalues(&h.a) {
                for v in vals {
                    out.push((v, 1));
                }
            }
        }
        out
    }

    /// Subordination probes from the doubled standard basis of every mode
    /// with label <= kmax.
    pub fn subordination_probes(&self, kmax: usize) -> Vec<SubordinationProbe> {
        self.modes
            .iter()
            .zip(&self.labels)
            .filter(|(_, &k)| k <= kmax)
            .flat_map(|(h, _)| crate::hamiltonian::block_probes(h))
            .collect()
    }
}

/// Modal family with A_k = ik^2, B_k = 1, C_k = k: per-mode eigenvalues
/// ik^2 +- sqrt(k) and scalar solutions +- sqrt(k).
pub fn gen_example_diag(kmax: usize, tols: &Tolerances) -> Result<ModalModel, ModelError> {
    if kmax < 1 {
        return Err(ModelError::InvalidParameter("kmax must be >= 1".into()));
    }
    let mut modes = Vec::with_capacity(kmax);
    let mut labels = Vec::with_capacity(kmax);
    let mut forms = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let kf = k as f64;
        modes.push(scalar_mode(Complex64::new(0.0, kf * kf), 1.0, kf, tols));
        labels.push(k);
        forms.push(ModeClosedForm {
            lambda_plus: Complex64::new(kf.sqrt(), kf * kf),
            lambda_minus: Complex64::new(-kf.sqrt(), kf * kf),
            x_plus: kf.sqrt(),
            x_minus: -kf.sqrt(),
        });
    }
    Ok(ModalModel { modes, labels, closed_forms: Some(forms) })
}

/// Synthetic cubic family with A_k = i c1 k^3, B_k = C_k = k^2: the
/// eigenvalue growth and 2/3-subordination profile of third-order
/// differential models without their boundary-value machinery.
pub fn gen_cubic_modal(kmax: usize, c1: f64, tols: &Tolerances) -> Result<ModalModel, ModelError> {
    if kmax < 1 || c1 == 0.0 {
        return Err(ModelError::InvalidParameter("kmax >= 1 and c1 != 0 required".into()));
    }
    let mut modes = Vec::with_capacity(kmax);
    let mut labels = Vec::with_capacity(kmax);
    let mut forms = Vec::with_capacity(kmax);
    for k in 1..=kmax {
        let kf = k as f64;
        modes.push(scalar_mode(Complex64::new(0.0, c1 * kf * kf * kf), kf * kf, kf * kf, tols));
        labels.push(k);
        forms.push(ModeClosedForm {
            lambda_plus: Complex64::new(kf * kf, c1 * kf * kf * kf),
            lambda_minus: Complex64::new(-kf * kf, c1 * kf * kf * kf),
            x_plus: 1.0,
            x_minus: -1.0,
        });
    }
    Ok(ModalModel { modes, labels, closed_forms: Some(forms) })
}

// ---------------------------------------------------------------------------
// Periodic transport model: Fourier coefficients and Toeplitz operators
// ---------------------------------------------------------------------------

/// Sparse Fourier coefficient list [(m, value)] of a function on [-1, 1]
/// with period 2. Realness means f(-m) = conj(f(m)).
pub type FourierCoeffs = Vec<(i64, C64)>;

/// Value of f at a point, synthesized as sum f_m e^{-i pi m t}.
pub fn synthesize(coeffs: &FourierCoeffs, t: f64) -> C64 {
    coeffs
        .iter()
        .map(|&(m, v)| v * Complex64::from_polar(1.0, -std::f64::consts::PI * m as f64 * t))
        .sum()
}

fn coeff_at(coeffs: &FourierCoeffs, m: i64) -> C64 {
    coeffs.iter().filter(|&&(mm, _)| mm == m).map(|&(_, v)| v).sum()
}

fn validate_real(coeffs: &FourierCoeffs) -> Result<(), ModelError> {
    let scale = coeffs.iter().map(|(_, v)| v.norm()).fold(1e-30, f64::max);
    for &(m, v) in coeffs {
        let w = coeff_at(coeffs, -m);
        if (w - v.conj()).norm() > 1e-12 * scale {
            return Err(ModelError::NotReal { mode: m });
        }
    }
    Ok(())
}

/// Toeplitz matrix (f(j-k)) on mode indices -n..n.
fn toeplitz(coeffs: &FourierCoeffs, n: i64) -> ComplexMatrix {
    let d = (2 * n + 1) as usize;
    ComplexMatrix::from_fn(d, d, |j, k| coeff_at(coeffs, j as i64 - k as i64))
}

/// The transport model with its positivity certificates.
#[derive(Debug, Clone)]
pub struct FourierModel {
    pub h: HamiltonianMatrix,
    /// Truncation order: mode indices -n..n.
    pub n_modes: i64,
    pub min_eig_b: f64,
    pub min_eig_c: f64,
    pub sup_b: f64,
    pub sup_c: f64,
    /// Both sup norms below pi/2, the hypothesis for an eigenvector Riesz
    /// basis of the transport model.
    pub riesz_hypotheses_ok: bool,
}

/// Transport model: A = diag(i pi k) for k = -N..N, B and C the Toeplitz
/// matrices of real coefficient functions. Positivity is certified from the
/// truncated matrices, not assumed from the coefficients; a non-positive
/// certified lower bound is an error, while sup norms at or above pi/2 are
/// only flagged.
pub fn gen_fourier_transport(
    n: i64,
    b_spec: &FourierCoeffs,
    c_spec: &FourierCoeffs,
    tols: &Tolerances,
) -> Result<FourierModel, ModelError> {
    if n < 0 {
        return Err(ModelError::InvalidParameter("N must be >= 0".into()));
    }
    for spec in [b_spec, c_spec] {
        let degree = spec.iter().map(|&(m, _)| m.abs()).max().unwrap_or(0);
        if degree > n {
            return Err(ModelError::InvalidParameter(format!(
                "coefficient degree {degree} exceeds N = {n}"
            )));
        }
    }
    validate_real(b_spec)?;
    validate_real(c_spec)?;
    let d = (2 * n + 1) as usize;
    let a = ComplexMatrix::from_fn(d, d, |j, k| {
        if j == k {
            Complex64::new(0.0, std::f64::consts::PI * (j as i64 - n) as f64)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let b = toeplitz(b_spec, n);
    let c = toeplitz(c_spec, n);
    let min_eig_b = linalg::min_eigenvalue(&b).map_err(|e| ModelError::Hamiltonian(e.into()))?;
    let min_eig_c = linalg::min_eigenvalue(&c).map_err(|e| ModelError::Hamiltonian(e.into()))?;
    if min_eig_b <= 0.0 {
        return Err(ModelError::NotPositive { which: 'B', bound: min_eig_b });
    }
    if min_eig_c <= 0.0 {
        return Err(ModelError::NotPositive { which: 'C', bound: min_eig_c });
    }
    let h = assemble(&a, &b, &c, tols).map_err(ModelError::Hamiltonian)?;
    let sup = |coeffs: &FourierCoeffs| -> f64 {
        (0..=2000)
            .map(|i| -1.0 + 2.0 * i as f64 / 2000.0)
            .map(|t| synthesize(coeffs, t).norm())
            .fold(0.0, f64::max)
    };
    let sup_b = sup(b_spec);
    let sup_c = sup(c_spec);
    let half_pi = std::f64::consts::FRAC_PI_2;
    Ok(FourierModel {
        h,
        n_modes: n,
        min_eig_b,
        min_eig_c,
        sup_b,
        sup_c,
        riesz_hypotheses_ok: sup_b < half_pi && sup_c < half_pi,
    })
}

// ---------------------------------------------------------------------------
// Step-function multiplication solution
// ---------------------------------------------------------------------------

/// Piecewise-constant symbol: 1 for t < 0, alpha for t >= 0.
#[derive(Debug, Clone, Copy)]
pub struct StepFunction {
    pub alpha: f64,
}

impl StepFunction {
    pub fn value(&self, t: f64) -> f64 {
        if t < 0.0 {
            1.0
        } else {
            self.alpha
        }
    }

    /// Analytic Fourier coefficients: f(0) = (1 + alpha)/2 and
    /// f(m) = (1 - alpha)(1 - (-1)^m) / (2 pi i m) for m != 0.
    pub fn coeff(&self, m: i64) -> C64 {
        if m == 0 {
            Complex64::new((1.0 + self.alpha) / 2.0, 0.0)
        } else {
            let parity = if m % 2 == 0 { 0.0 } else { 2.0 };
            let num = (1.0 - self.alpha) * parity;
            num / Complex64::new(0.0, 2.0 * std::f64::consts::PI * m as f64)
        }
    }

    pub fn coeffs_up_to(&self, degree: i64) -> FourierCoeffs {
        (-degree..=degree).map(|m| (m, self.coeff(m))).collect()
    }
}

/// Step-function multiplication solution for the transport model with
/// c = chi^2 b: the Toeplitz matrix of chi, the induced coefficients of c
/// truncated at degree N, and the pointwise defect of the truncation against
/// the exact identity chi^2 b - c = 0.
pub struct StepChiSolution {
    pub x_chi: ComplexMatrix,
    pub c_coeffs: FourierCoeffs,
    /// max over a t-grid of |chi(t)^2 b(t) - c_N(t)|; pure truncation error,
    /// dominated by the jump discontinuities.
    pub pointwise_residual: f64,
}

pub fn step_chi_solution(
    alpha: f64,
    b_spec: &FourierCoeffs,
    n: i64,
) -> Result<StepChiSolution, ModelError> {
    if alpha == 0.0 || alpha == 1.0 {
        return Err(ModelError::InvalidParameter("alpha must avoid 0 and 1".into()));
    }
    validate_real(b_spec)?;
    let chi = StepFunction { alpha };
    let chi_sq = StepFunction { alpha: alpha * alpha };
    // c = chi^2 b by exact coefficient convolution, truncated at degree N
    let mut c_coeffs: FourierCoeffs = Vec::new();
    for m in -n..=n {
        let mut v = Complex64::new(0.0, 0.0);
        for &(l, bl) in b_spec {
            v += chi_sq.coeff(m - l) * bl;
        }
        c_coeffs.push((m, v));
    }
    // Toeplitz matrix of chi on mode indices -N..N
    let d = (2 * n + 1) as usize;
    let x_chi = ComplexMatrix::from_fn(d, d, |j, k| chi.coeff(j as i64 - k as i64));

    let mut residual = 0.0f64;
    for i in 0..=4000 {
        let t = -1.0 + 2.0 * i as f64 / 4000.0;
        let lhs = chi.value(t) * chi.value(t) * synthesize(b_spec, t).re;
        let rhs = synthesize(&c_coeffs, t).re;
        residual = residual.max((lhs - rhs).abs());
    }
    Ok(StepChiSolution { x_chi, c_coeffs, pointwise_residual: residual })
}

// ---------------------------------------------------------------------------
// Modal diagnostics
// ---------------------------------------------------------------------------

/// Growth profile of a per-mode solution family.
#[derive(Debug, Clone, Serialize)]
pub struct GrowthReport {
    pub sup_x: f64,
    pub min_x: f64,
    /// Least-squares slope of log |X_k| against log k.
    pub slope: f64,
    pub unbounded: bool,
}

/// Solves each mode with the requested eigenvalue sign and reports the
/// growth of |X_k|: a positive log-log slope flags an unbounded family.
pub fn modal_solution(
    model: &ModalModel,
    signs: &[ModeSign],
    tols: &Tolerances,
) -> Result<(Vec<RiccatiSolution>, GrowthReport), ModelError> {
    assert_eq!(signs.len(), model.modes.len());
    let mut solutions = Vec::with_capacity(model.modes.len());
    for (h, &sign) in model.modes.iter().zip(signs) {
        let s = crate::spectral::analyze_spectrum(&h.t, tols)
            .map_err(|e| ModelError::InvalidParameter(e.to_string()))?;
        let class = match sign {
            ModeSign::Plus => crate::spectral::HalfPlane::Right,
            ModeSign::Minus => crate::spectral::HalfPlane::Left,
        };
        let idx = s.indices_by_class(class);
        if idx.is_empty() {
            return Err(ModelError::InvalidParameter(
                "mode has no eigenvalue in the requested half-plane".into(),
            ));
        }
        let blocks: Vec<&ComplexMatrix> = idx.iter().map(|&i| &s.root_bases[i]).collect();
        let basis =
            crate::krein::SubspaceBasis::new(&ComplexMatrix::hstack(&blocks), tols.rank_tol);
        let (x, asym) = riccati::extract_graph(&basis, tols)
            .map_err(|e| ModelError::InvalidParameter(e.to_string()))?;
        let tag = match sign {
            ModeSign::Plus => "mode+",
            ModeSign::Minus => "mode-",
        };
        let sol = riccati::certify_solution(h, x, asym, SolutionSource::ScSet(tag.into()), tols)
            .map_err(|e| ModelError::InvalidParameter(e.to_string()))?;
        solutions.push(sol);
    }
    let norms: Vec<f64> = solutions.iter().map(|s| linalg::two_norm(&s.x)).collect();
    let sup_x = norms.iter().copied().fold(0.0, f64::max);
    let min_x = norms.iter().copied().fold(f64::INFINITY, f64::min);
    // log-log least squares against the mode label
    let pts: Vec<(f64, f64)> = model
        .labels
        .iter()
        .zip(&norms)
        .filter(|(_, &x)| x > 0.0)
        .map(|(&k, &x)| ((k as f64).ln(), x.ln()))
        .collect();
    let slope = if pts.len() < 2 {
        0.0
    } else {
        let n = pts.len() as f64;
        let sx: f64 = pts.iter().map(|p| p.0).sum();
        let sy: f64 = pts.iter().map(|p| p.1).sum();
        let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
        let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
        (n * sxy - sx * sy) / (n * sxx - sx * sx)
    };
    let report = GrowthReport { sup_x, min_x, slope, unbounded: slope > tols.slope_tol };
    Ok((solutions, report))
}

/// The non-dichotomy witness of the diagonal family at mode k: the vector
/// x_k = (2/sqrt(k) e_k, 0) shrinks while its eigenvector components do not,
/// and the eigenvector gram degenerates like 2/(k+1).
#[derive(Debug, Clone, Serialize)]
pub struct DichotomyWitness {
    pub x_norm: f64,
    pub x_plus_norm: f64,
    pub x_minus_norm: f64,
    pub cos_theta: f64,
    pub riesz_lower: f64,
}

pub fn dichotomy_witness(model: &ModalModel, k: usize) -> Result<DichotomyWitness, ModelError> {
    let pos = model
        .labels
        .iter()
        .position(|&l| l == k)
        .ok_or_else(|| ModelError::InvalidParameter(format!("mode {k} not in model")))?;
    let h = &model.modes[pos];
    let pairs = linalg::eig(&h.t).map_err(|e| ModelError::Hamiltonian(e.into()))?;
    let v_plus = pairs
        .iter()
        .find(|(l, _)| l.re > 0.0)
        .ok_or_else(|| ModelError::InvalidParameter("no right eigenvalue".into()))?
        .1
        .clone();
    let v_minus = pairs
        .iter()
        .find(|(l, _)| l.re < 0.0)
        .ok_or_else(|| ModelError::InvalidParameter("no left eigenvalue".into()))?
        .1
        .clone();
    let kf = k as f64;
    let x = vec![Complex64::new(2.0 / kf.sqrt(), 0.0), Complex64::new(0.0, 0.0)];
    // expansion coefficients in the eigenvector pair
    let vmat = ComplexMatrix::from_columns(&[v_plus.clone(), v_minus.clone()]);
    let lu = crate::linalg::Lu::factor(&vmat).map_err(|e| ModelError::Hamiltonian(e.into()))?;
    let coeff = lu.solve_vec(&x);
    let overlap = crate::matrix::dot(&v_plus, &v_minus).norm();
    Ok(DichotomyWitness {
        x_norm: vec_norm(&x),
        x_plus_norm: coeff[0].norm(),
        x_minus_norm: coeff[1].norm(),
        cos_theta: overlap,
        // smallest eigenvalue of the 2x2 gram [[1, g], [conj(g), 1]]
        riesz_lower: 1.0 - overlap,
    })
}
