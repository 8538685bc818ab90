//! The two indefinite inner products on the doubled space and the
//! classification of subspaces against them.
//!
//! `J1 = [[0, -iI], [iI, 0]]` encodes selfadjointness: the graph of X is
//! J1-neutral exactly when X is Hermitian, hypermaximal neutral exactly when
//! X is selfadjoint. `J2 = [[0, I], [I, 0]]` encodes definiteness: the graph
//! is J2-nonnegative exactly when X >= 0.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::KreinError;
use crate::linalg;
use crate::matrix::{C64, ComplexMatrix};

/// Which fundamental symmetry a form uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FormKind {
    J1,
    J2,
}

/// An indefinite inner product <x|y> = (J x | y) on C^{2n}.
#[derive(Debug, Clone)]
pub struct KreinForm {
    pub kind: FormKind,
    pub half_dim: usize,
}

impl KreinForm {
    pub fn j1(half_dim: usize) -> Self {
        Self { kind: FormKind::J1, half_dim }
    }

    pub fn j2(half_dim: usize) -> Self {
        Self { kind: FormKind::J2, half_dim }
    }

    pub fn dim(&self) -> usize {
        2 * self.half_dim
    }

    /// The fundamental symmetry as a matrix; Hermitian involution with
    /// signature (n, n).
    pub fn matrix(&self) -> ComplexMatrix {
        let n = self.half_dim;
        let mut j = ComplexMatrix::zeros(2 * n, 2 * n);
        match self.kind {
            FormKind::J1 => {
                for k in 0..n {
                    j[(k, n + k)] = Complex64::new(0.0, -1.0);
                    j[(n + k, k)] = Complex64::new(0.0, 1.0);
                }
            }
            FormKind::J2 => {
                for k in 0..n {
                    j[(k, n + k)] = Complex64::new(1.0, 0.0);
                    j[(n + k, k)] = Complex64::new(1.0, 0.0);
                }
            }
        }
        j
    }

    /// J applied to a doubled-space vector without forming the matrix.
    pub fn apply(&self, x: &[C64]) -> Vec<C64> {
        let n = self.half_dim;
        assert_eq!(x.len(), 2 * n);
        let mut y = vec![Complex64::new(0.0, 0.0); 2 * n];
        match self.kind {
            FormKind::J1 => {
                for k in 0..n {
                    y[k] = Complex64::new(0.0, -1.0) * x[n + k];
                    y[n + k] = Complex64::new(0.0, 1.0) * x[k];
                }
            }
            FormKind::J2 => {
                y[..n].copy_from_slice(&x[n..]);
                y[n..].copy_from_slice(&x[..n]);
            }
        }
        y
    }
}

/// Definiteness classification of a subspace under a Krein form.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum Definiteness {
    Neutral,
    Nonneg,
    Nonpos,
    /// Uniformly positive with level alpha (the smallest gram eigenvalue).
    UniformPos(f64),
    /// Uniformly negative with level alpha (magnitude of the largest gram
    /// eigenvalue).
    UniformNeg(f64),
    Indefinite,
}

/// Residual certificates cached on a subspace basis.
#[derive(Debug, Clone, Default)]
pub struct Certificates {
    /// |(I - P_U) T P_U| for the matrix the subspace was built from.
    pub invariance: Option<f64>,
    /// |Z* J1 Z|.
    pub j1_neutral: Option<f64>,
    pub j2_class: Option<Definiteness>,
}

/// Orthonormal column basis of a subspace of the doubled space.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub basis: ComplexMatrix,
    pub certificates: Certificates,
}

impl SubspaceBasis {
    /// Orthonormalizes the given columns (directions below tol * sigma_max
    /// are dropped).
    pub fn new(columns: &ComplexMatrix, tol: f64) -> Self {
        let basis = linalg::orthonormal_columns(columns, tol);
        Self { ambient_dim: columns.rows(), basis, certificates: Certificates::default() }
    }

    /// Wraps columns that are already orthonormal.
    pub fn from_orthonormal(basis: ComplexMatrix) -> Self {
        debug_assert!(
            basis
                .adjoint()
                .matmul(&basis)
                .sub(&ComplexMatrix::identity(basis.cols()))
                .fro_norm()
                < 1e-12 * (basis.cols().max(1) as f64)
        );
        Self { ambient_dim: basis.rows(), basis, certificates: Certificates::default() }
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    /// Graph basis of a square matrix X: orthonormalized columns of [I; X].
    pub fn graph(x: &ComplexMatrix) -> Self {
        let n = x.rows();
        let stacked = ComplexMatrix::from_fn(2 * n, n, |i, j| {
            if i < n {
                if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            } else {
                x[(i - n, j)]
            }
        });
        Self::new(&stacked, 1e-14)
    }
}

/// Gram matrix Z* J Z of a subspace basis; Hermitian up to rounding.
pub fn gram(form: &KreinForm, u: &SubspaceBasis) -> Result<ComplexMatrix, KreinError> {
    if u.ambient_dim != form.dim() {
        return Err(KreinError::DimensionMismatch { form: form.dim(), basis: u.ambient_dim });
    }
    let jz = ComplexMatrix::from_columns(
        &(0..u.basis.cols()).map(|j| form.apply(&u.basis.col(j))).collect::<Vec<_>>(),
    );
    Ok(u.basis.adjoint().matmul(&jz))
}

/// Classifies a subspace from the eigenvalues of its gram matrix.
pub fn classify(form: &KreinForm, u: &SubspaceBasis, tol: f64) -> Result<Definiteness, KreinError> {
    let g = gram(form, u)?;
    let (vals, _) = linalg::hermitian_eigen(&g)?;
    Ok(classify_from_eigenvalues(&vals, tol))
}

pub fn classify_from_eigenvalues(vals: &[f64], tol: f64) -> Definiteness {
    if vals.is_empty() {
        return Definiteness::Neutral;
    }
    let lo = vals[0];
    let hi = vals[vals.len() - 1];
    if lo.abs().max(hi.abs()) <= tol {
        Definiteness::Neutral
    } else if lo > tol {
        Definiteness::UniformPos(lo)
    } else if lo >= -tol {
        Definiteness::Nonneg
    } else if hi < -tol {
        Definiteness::UniformNeg(-hi)
    } else if hi <= tol {
        Definiteness::Nonpos
    } else {
        Definiteness::Indefinite
    }
}

/// Hypermaximal neutrality via the finite-dimensional criterion: neutral and
/// of half the ambient dimension.
pub fn is_hypermaximal_neutral(
    form: &KreinForm,
    u: &SubspaceBasis,
    tol: f64,
) -> Result<bool, KreinError> {
    let neutral = matches!(classify(form, u, tol)?, Definiteness::Neutral);
    Ok(neutral && u.dim() == form.half_dim)
}

/// J-orthogonal complement U^<perp> = null(Z* J); used to cross-check the
/// dimension criterion.
pub fn j_orthogonal_complement(
    form: &KreinForm,
    u: &SubspaceBasis,
    rank_tol: f64,
) -> Result<SubspaceBasis, KreinError> {
    if u.ambient_dim != form.dim() {
        return Err(KreinError::DimensionMismatch { form: form.dim(), basis: u.ambient_dim });
    }
    let zj = u.basis.adjoint().matmul(&form.matrix());
    let info = linalg::rank_decomp(&zj, rank_tol);
    Ok(SubspaceBasis::from_orthonormal(info.null))
}

/// A neutral direct decomposition L = M (+) N in the coordinates of L.
#[derive(Debug, Clone)]
pub struct NeutralSplit {
    /// Coordinates of a basis of M (m x p).
    pub m: ComplexMatrix,
    /// Coordinates of a basis of N (m x p).
    pub n: ComplexMatrix,
    pub m_neutrality: f64,
    pub n_neutrality: f64,
}

/// Splits a non-degenerate finite Krein space, given by its gram matrix, into
/// two neutral halves. Returns `None` when the signature is unbalanced, in
/// which case no such split exists.
///
/// M comes from pairing positive and negative gram eigenvectors; N is then
/// built by the dual-pair recursion: each basis vector e of M gets a partner
/// f with <e|f> = 1, orthogonalized against the previous pairs and corrected
/// by -<f|f>/2 e to make it neutral.
pub fn neutral_split(gram: &ComplexMatrix, tol: f64) -> Result<Option<NeutralSplit>, KreinError> {
    let m = gram.rows();
    let (vals, q) = linalg::hermitian_eigen(gram)?;
    let scale = vals.iter().fold(0.0f64, |a, v| a.max(v.abs())).max(1.0);
    let min_abs = vals.iter().fold(f64::INFINITY, |a, v| a.min(v.abs()));
    if min_abs <= tol * scale {
        return Err(KreinError::Degenerate { min_abs });
    }
    let pos: Vec<usize> = (0..m).filter(|&i| vals[i] > 0.0).collect();
    let neg: Vec<usize> = (0..m).filter(|&i| vals[i] < 0.0).collect();
    if pos.len() != neg.len() {
        return Ok(None);
    }
    let p = pos.len();

    // <xi|eta> = eta* G xi in L-coordinates
    let ip = |x: &[C64], y: &[C64]| -> C64 {
        let gx = gram.mat_vec(x);
        crate::matrix::dot(&gx, y)
    };

    // M: normalized mixed pairs (e_i + f_i)/sqrt(2)
    let mut m_cols: Vec<Vec<C64>> = Vec::with_capacity(p);
    for i in 0..p {
        let ei = q.col(pos[i]);
        let fi = q.col(neg[i]);
        let sp = vals[pos[i]].sqrt();
        let sn = (-vals[neg[i]]).sqrt();
        let col: Vec<C64> = ei
            .iter()
            .zip(&fi)
            .map(|(a, b)| (a / sp + b / sn) / Complex64::new(std::f64::consts::SQRT_2, 0.0))
            .collect();
        m_cols.push(col);
    }

    // dual-pair recursion for the complementary neutral N
    let mut es: Vec<Vec<C64>> = Vec::with_capacity(p);
    let mut fs: Vec<Vec<C64>> = Vec::with_capacity(p);
    for u in &m_cols {
        let mut e = u.clone();
        for (ej, fj) in es.iter().zip(&fs) {
            let coeff = ip(&e, fj);
            e = crate::matrix::vec_axpy(&e, coeff, ej);
        }
        // partner with <e|f> = 1
        let ge = gram.mat_vec(&e);
        let gnorm2: f64 = ge.iter().map(|z| z.norm_sqr()).sum();
        let mut f: Vec<C64> = ge.iter().map(|z| z / gnorm2).collect();
        debug_assert!((ip(&e, &f) - Complex64::new(1.0, 0.0)).norm() < 1e-8);
        let mut ftilde = f.clone();
        for (ej, fj) in es.iter().zip(&fs) {
            let ce = ip(&ftilde, ej);
            let cf = ip(&ftilde, fj);
            ftilde = crate::matrix::vec_axpy(&ftilde, ce, fj);
            ftilde = crate::matrix::vec_axpy(&ftilde, cf, ej);
        }
        let self_ip = ip(&ftilde, &ftilde);
        f = crate::matrix::vec_axpy(&ftilde, self_ip * 0.5, &e);
        es.push(e);
        fs.push(f);
    }

    let m_mat = ComplexMatrix::from_columns(&es);
    let n_mat = ComplexMatrix::from_columns(&fs);
    let neut = |cols: &ComplexMatrix| -> f64 {
        // norm of the gram of the (re-orthonormalized) span
        let q = linalg::orthonormal_columns(cols, 1e-13);
        let g = q.adjoint().matmul(&gram.matmul(&q));
        linalg::two_norm(&g)
    };
    Ok(Some(NeutralSplit {
        m_neutrality: neut(&m_mat),
        n_neutrality: neut(&n_mat),
        m: m_mat,
        n: n_mat,
    }))
}
