//! sc-set enumeration and the invariant subspaces they generate.
//!
//! An sc-set picks one eigenvalue from each skew-conjugate pair
//! (lambda, -conj(lambda)) off the imaginary axis; imaginary eigenvalues
//! contribute a neutral invariant half of their root subspace when one
//! exists. The span of the chosen root subspaces is the hypermaximal
//! J1-neutral invariant subspace whose graph encodes a selfadjoint Riccati
//! solution. This module also carries the principal-value resolvent
//! integral and the resolvent L2 lower bound used to certify definiteness
//! of the half-plane subspaces.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::SubspaceError;
use crate::krein::{self, Definiteness, KreinForm, SubspaceBasis};
use crate::linalg::{self, Lu};
use crate::matrix::{vec_norm, C64, ComplexMatrix};
use crate::quad;
use crate::rng::DetRng;
use crate::spectral::{HalfPlane, Pairing, SpectralData};
use crate::tol::Tolerances;

/// Choice of one eigenvalue per skew-conjugate pair plus neutral invariant
/// halves at imaginary eigenvalues.
#[derive(Debug, Clone)]
pub struct ScSet {
    /// Indices into the spectral data, one per pair.
    pub chosen: Vec<usize>,
    /// (eigenvalue index, neutral invariant half) per imaginary eigenvalue;
    /// `None` marks an obstruction that makes the sc-set unusable.
    pub imaginary_choices: Vec<(usize, Option<SubspaceBasis>)>,
}

impl ScSet {
    pub fn usable(&self) -> bool {
        self.imaginary_choices.iter().all(|(_, m)| m.is_some())
    }

    /// Stable identifier: chosen indices in order.
    pub fn id(&self) -> String {
        let parts: Vec<String> = self.chosen.iter().map(|i| i.to_string()).collect();
        format!("sc[{}]", parts.join(","))
    }

    pub fn to_json(&self, s: &SpectralData) -> ScSetJson {
        ScSetJson {
            chosen: self.chosen.clone(),
            imaginary: self
                .imaginary_choices
                .iter()
                .map(|(idx, m)| {
                    m.as_ref().map(|basis| ImaginaryChoiceJson {
                        t: s.eigenvalues[*idx].value.im,
                        m_basis: crate::json::MatrixJson::from(&basis.basis),
                    })
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ScSetJson {
    pub chosen: Vec<usize>,
    pub imaginary: Vec<Option<ImaginaryChoiceJson>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ImaginaryChoiceJson {
    pub t: f64,
    pub m_basis: crate::json::MatrixJson,
}

/// Enumerates sc-sets. With 2^pairs <= limit all selections are produced in
/// bitmask order (bit set = left choice); otherwise the two canonical
/// half-plane selections plus seeded random picks. Imaginary eigenvalues get
/// a neutral invariant split when the search finds one; failures surface as
/// `None` choices so callers can flag the sc-set unusable.
pub fn enumerate_scsets(
    t: &ComplexMatrix,
    s: &SpectralData,
    pairing: &Pairing,
    limit: usize,
    seed: u64,
    tols: &Tolerances,
) -> Vec<ScSet> {
    let pairs = &pairing.pairs;
    // the neutral invariant halves are shared by every sc-set
    let imaginary_choices: Vec<(usize, Option<SubspaceBasis>)> = pairing
        .imaginary
        .iter()
        .map(|&idx| {
            let m = neutral_invariant_split(
                t,
                &s.root_bases[idx],
                s.eigenvalues[idx].value,
                seed,
                tols,
            )
            .ok();
            (idx, m)
        })
        .collect();

    let mut out = Vec::new();
    let total = 1usize.checked_shl(pairs.len() as u32);
    match total {
        Some(total) if total <= limit => {
            for mask in 0..total {
                let chosen = pairs
                    .iter()
                    .enumerate()
                    .map(|(b, &(p, m))| if mask >> b & 1 == 0 { p } else { m })
                    .collect();
                out.push(ScSet { chosen, imaginary_choices: imaginary_choices.clone() });
            }
        }
        _ => {
            let all_right: Vec<usize> = pairs.iter().map(|&(p, _)| p).collect();
            let all_left: Vec<usize> = pairs.iter().map(|&(_, m)| m).collect();
            out.push(ScSet { chosen: all_right, imaginary_choices: imaginary_choices.clone() });
            out.push(ScSet { chosen: all_left, imaginary_choices: imaginary_choices.clone() });
            let mut rng = DetRng::new(seed).split(0x5c5e7);
            let mut seen: Vec<Vec<usize>> = out.iter().map(|s| s.chosen.clone()).collect();
            while out.len() < limit {
                let chosen: Vec<usize> =
                    pairs.iter().map(|&(p, m)| if rng.bool() { p } else { m }).collect();
                if !seen.contains(&chosen) {
                    seen.push(chosen.clone());
                    out.push(ScSet { chosen, imaginary_choices: imaginary_choices.clone() });
                }
            }
        }
    }
    out
}

/// Searches for a half-dimensional, T-invariant, J1-neutral subspace of the
/// root subspace L(it) of an imaginary eigenvalue, with a certified neutral
/// complement available. Search order: plain neutral split when T acts as a
/// scalar, Jordan-chain prefix combinations, then seeded random invariant
/// subspaces (capped at 1000 trials).
pub fn neutral_invariant_split(
    t: &ComplexMatrix,
    root_basis: &ComplexMatrix,
    value: C64,
    seed: u64,
    tols: &Tolerances,
) -> Result<SubspaceBasis, SubspaceError> {
    let mdim = root_basis.cols();
    let n2 = root_basis.rows();
    let j1 = KreinForm::j1(n2 / 2);
    let gram_of = |cols: &ComplexMatrix| -> ComplexMatrix {
        let jz = ComplexMatrix::from_columns(
            &(0..cols.cols()).map(|j| j1.apply(&cols.col(j))).collect::<Vec<_>>(),
        );
        cols.adjoint().matmul(&jz)
    };
    let full_gram = gram_of(root_basis);
    let (gvals, _) = linalg::hermitian_eigen(&full_gram).map_err(SubspaceError::Linalg)?;
    let pos = gvals.iter().filter(|&&v| v > 0.0).count();
    let neg = gvals.len() - pos;
    if !mdim.is_multiple_of(2) || pos != neg {
        return Err(SubspaceError::NotFound { pos, neg });
    }
    let half = mdim / 2;
    let tnorm = linalg::two_norm(t).max(1.0);

    let invariance = |basis: &ComplexMatrix| -> f64 {
        let tz = t.matmul(basis);
        let coeff = basis.adjoint().matmul(&tz);
        linalg::two_norm(&tz.sub(&basis.matmul(&coeff))) / tnorm
    };
    let neutrality = |basis: &ComplexMatrix| -> f64 { linalg::two_norm(&gram_of(basis)) };

    let accept = |cols: &ComplexMatrix| -> Option<SubspaceBasis> {
        let basis = linalg::orthonormal_columns(cols, 1e-12);
        if basis.cols() != half {
            return None;
        }
        let inv = invariance(&basis);
        let neu = neutrality(&basis);
        if inv <= tols.inv_tol && neu <= tols.neutral_tol {
            let mut sb = SubspaceBasis::from_orthonormal(basis);
            sb.certificates.invariance = Some(inv);
            sb.certificates.j1_neutral = Some(neu);
            Some(sb)
        } else {
            None
        }
    };

    // scalar action: T|L = it I, any neutral half works
    let shifted = t.sub(&ComplexMatrix::identity(n2).scale(value));
    let action = linalg::two_norm(&shifted.matmul(root_basis));
    if action <= tols.inv_tol * tnorm {
        if let Some(split) =
            krein::neutral_split(&full_gram, 1e-10).map_err(SubspaceError::Krein)?
        {
            let m_ambient = root_basis.matmul(&split.m);
            if let Some(sb) = accept(&m_ambient) {
                return Ok(sb);
            }
        }
    }

    // Jordan-chain prefixes: spans of chain heads are invariant by construction
    let chains = chain_vectors(t, root_basis, value, tols)?;
    let prefix_sets =
        prefix_combinations(&chains.iter().map(|c| c.len()).collect::<Vec<_>>(), half);
    for lens in prefix_sets {
        let mut cols: Vec<Vec<C64>> = Vec::new();
        for (chain, &take) in chains.iter().zip(&lens) {
            cols.extend(chain.iter().take(take).cloned());
        }
        if cols.is_empty() {
            continue;
        }
        if let Some(sb) = accept(&ComplexMatrix::from_columns(&cols)) {
            return Ok(sb);
        }
    }

    // seeded random invariant subspaces from Krylov spans inside L
    let mut rng = DetRng::new(seed).split(0x11ab5);
    for _ in 0..1000 {
        let coeff = rng.vector(mdim);
        let mut x = root_basis.mat_vec(&coeff);
        let nx = vec_norm(&x);
        if nx == 0.0 {
            continue;
        }
        for z in x.iter_mut() {
            *z /= nx;
        }
        let mut cols = vec![x.clone()];
        for _ in 1..half {
            x = shifted.mat_vec(&x);
            cols.push(x.clone());
        }
        if let Some(sb) = accept(&ComplexMatrix::from_columns(&cols)) {
            return Ok(sb);
        }
    }
    Err(SubspaceError::NotFound { pos, neg })
}

/// Jordan chains of T restricted to the span of `root_basis` at `value`,
/// returned as ambient vectors ordered from eigenvector upward.
fn chain_vectors(
    t: &ComplexMatrix,
    root_basis: &ComplexMatrix,
    value: C64,
    tols: &Tolerances,
) -> Result<Vec<Vec<Vec<C64>>>, SubspaceError> {
    let restricted = root_basis.adjoint().matmul(&t.matmul(root_basis));
    let local = crate::spectral::analyze_spectrum(&restricted, tols)?;
    let scale = linalg::two_norm(t).max(1.0);
    let mut out = Vec::new();
    for (e, chains) in local.eigenvalues.iter().zip(&local.chains) {
        if (e.value - value).norm() > 1e-5 * scale {
            continue;
        }
        for ch in chains {
            out.push(ch.iter().map(|v| root_basis.mat_vec(v)).collect());
        }
    }
    Ok(out)
}

/// All ways to take prefix lengths l_i <= len_i with sum = target.
fn prefix_combinations(lens: &[usize], target: usize) -> Vec<Vec<usize>> {
    fn rec(
        lens: &[usize],
        idx: usize,
        left: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if idx == lens.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for take in 0..=lens[idx].min(left) {
            cur[idx] = take;
            rec(lens, idx + 1, left - take, cur, out);
        }
        cur[idx] = 0;
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; lens.len()];
    rec(lens, 0, target, &mut cur, &mut out);
    out
}

/// Builds the invariant subspace of an sc-set: the span of the root bases of
/// the chosen eigenvalues plus all neutral invariant halves, orthonormalized,
/// with invariance and J1-neutrality certificates attached.
pub fn build_subspace(
    t: &ComplexMatrix,
    s: &SpectralData,
    scset: &ScSet,
    tols: &Tolerances,
) -> Result<SubspaceBasis, SubspaceError> {
    if !scset.usable() {
        return Err(SubspaceError::UnusableScSet(scset.id()));
    }
    let n = t.rows() / 2;
    let mut blocks: Vec<&ComplexMatrix> =
        scset.chosen.iter().map(|&i| &s.root_bases[i]).collect();
    let halves: Vec<&ComplexMatrix> = scset
        .imaginary_choices
        .iter()
        .filter_map(|(_, m)| m.as_ref().map(|sb| &sb.basis))
        .collect();
    blocks.extend(halves);
    if blocks.is_empty() {
        return Err(SubspaceError::DimensionMismatch { got: 0, expected: n });
    }
    let stacked = ComplexMatrix::hstack(&blocks);
    let basis = linalg::orthonormal_columns(&stacked, tols.rank_tol);
    if basis.cols() != n {
        return Err(SubspaceError::DimensionMismatch { got: basis.cols(), expected: n });
    }
    let tnorm = linalg::two_norm(t).max(1.0);
    let tz = t.matmul(&basis);
    let coeff = basis.adjoint().matmul(&tz);
    let inv_res = linalg::two_norm(&tz.sub(&basis.matmul(&coeff))) / tnorm;
    let mut sb = SubspaceBasis::from_orthonormal(basis);
    let j1 = KreinForm::j1(n);
    let neu = linalg::two_norm(&krein::gram(&j1, &sb).map_err(SubspaceError::Krein)?);
    sb.certificates.invariance = Some(inv_res);
    sb.certificates.j1_neutral = Some(neu);
    Ok(sb)
}

/// Panel endpoints along [-r, r] sized by the distance to the spectrum.
fn axis_panels(eigs: &[C64], r: f64) -> Vec<f64> {
    let mut cuts = vec![-r];
    let mut t = -r;
    while t < r {
        let local = eigs
            .iter()
            .map(|l| (l - Complex64::new(0.0, t)).norm())
            .fold(f64::INFINITY, f64::min)
            .max(0.25);
        t = (t + 0.5 * local).min(r);
        cuts.push(t);
    }
    cuts
}

/// Principal-value resolvent integral (1/(i pi)) int_{-ir}^{ir} (T-z)^{-1} x dz,
/// which approaches (P+ - P-) x with error O(1/r). Gauss-Legendre panels along
/// the axis are sized by the local distance to the spectrum.
pub fn pv_resolvent_diff(
    t: &ComplexMatrix,
    x: &[C64],
    r: f64,
    tols: &Tolerances,
) -> Result<Vec<C64>, SubspaceError> {
    let n = t.rows();
    let eigs = linalg::eigenvalues(t).map_err(SubspaceError::Linalg)?;
    let tnorm = linalg::two_norm(t).max(1.0);
    let axis_dist = eigs.iter().map(|l| l.re.abs()).fold(f64::INFINITY, f64::min);
    if axis_dist <= tols.ring_tol * tnorm {
        return Err(SubspaceError::AxisEigenvalue { dist: axis_dist });
    }

    let cuts = axis_panels(&eigs, r);
    let (nodes, weights) = quad::gauss_legendre(16);
    let mut acc = vec![Complex64::new(0.0, 0.0); n];
    for w in cuts.windows(2) {
        let vals = quad::integrate_panel(w[0], w[1], &nodes, &weights, |ti| {
            let z = Complex64::new(0.0, ti);
            let lu = Lu::factor(&t.sub(&ComplexMatrix::identity(n).scale(z)))
                .expect("resolvent is regular on the axis");
            lu.solve_vec(x)
        });
        for (a, v) in acc.iter_mut().zip(vals) {
            *a += v;
        }
    }
    // dz = i dt cancels the 1/(i pi) prefactor down to 1/pi
    Ok(acc.iter().map(|z| z / std::f64::consts::PI).collect())
}

/// Empirical constant of the resolvent L2 lower bound
/// int |(T - it)^{-1} x|^2 dt >= c |x|^2, compared against the closed form
/// m pi / (2 M sqrt(1 + a^2)) for Riesz constants m, M and strip half-width a.
/// The integral is cut at +-R; the discarded tail is O(1/R) and only lowers
/// the empirical constant, so passing is conservative.
pub struct LowerBoundReport {
    pub c_emp: f64,
    pub c_formula: f64,
    /// Magnitude bound on the discarded tail per unit |x|^2.
    pub tail_bound: f64,
    pub pass: bool,
}

pub fn resolvent_l2_lowerbound(
    t: &ComplexMatrix,
    m_const: f64,
    big_m_const: f64,
    strip_a: f64,
    probes: &[Vec<C64>],
    cut_radius: f64,
    tols: &Tolerances,
) -> Result<LowerBoundReport, SubspaceError> {
    let n = t.rows();
    let eigs = linalg::eigenvalues(t).map_err(SubspaceError::Linalg)?;
    let tnorm = linalg::two_norm(t).max(1.0);
    let axis_dist = eigs.iter().map(|l| l.re.abs()).fold(f64::INFINITY, f64::min);
    if axis_dist <= tols.ring_tol * tnorm {
        return Err(SubspaceError::AxisEigenvalue { dist: axis_dist });
    }

    let cuts = axis_panels(&eigs, cut_radius);
    let (nodes, weights) = quad::gauss_legendre(16);
    let mut c_emp = f64::INFINITY;
    for x in probes {
        let xn2: f64 = x.iter().map(|z| z.norm_sqr()).sum();
        if xn2 == 0.0 {
            continue;
        }
        let mut integral = 0.0;
        for w in cuts.windows(2) {
            let vals = quad::integrate_panel(w[0], w[1], &nodes, &weights, |ti| {
                let z = Complex64::new(0.0, ti);
                let lu = Lu::factor(&t.sub(&ComplexMatrix::identity(n).scale(z)))
                    .expect("resolvent is regular on the axis");
                let y = lu.solve_vec(x);
                vec![y.iter().map(|z| z.norm_sqr()).sum::<f64>()]
            });
            integral += vals[0];
        }
        c_emp = c_emp.min(integral / xn2);
    }
    let c_formula =
        m_const * std::f64::consts::PI / (2.0 * big_m_const * (1.0 + strip_a * strip_a).sqrt());
    Ok(LowerBoundReport {
        c_emp,
        c_formula,
        tail_bound: 2.0 / cut_radius,
        pass: c_emp >= c_formula * (1.0 - tols.qtol),
    })
}

/// Classification of the half-plane subspaces U+ and U- under J2.
#[derive(Debug, Clone, Serialize)]
pub struct UpmReport {
    pub plus: Definiteness,
    pub minus: Definiteness,
}

/// Builds U+ and U- from the right/left root subspaces and classifies them.
/// Requires an empty imaginary point spectrum.
pub fn classify_upm(s: &SpectralData, tols: &Tolerances) -> Result<UpmReport, SubspaceError> {
    if !s.indices_by_class(HalfPlane::Imaginary).is_empty() {
        return Err(SubspaceError::AxisEigenvalue { dist: 0.0 });
    }
    let n = s.dim / 2;
    let j2 = KreinForm::j2(n);
    let side = |class: HalfPlane| -> Result<Definiteness, SubspaceError> {
        let blocks: Vec<&ComplexMatrix> =
            s.indices_by_class(class).into_iter().map(|i| &s.root_bases[i]).collect();
        if blocks.is_empty() {
            return Ok(Definiteness::Neutral);
        }
        let basis = SubspaceBasis::new(&ComplexMatrix::hstack(&blocks), tols.rank_tol);
        krein::classify(&j2, &basis, tols.neutral_tol).map_err(SubspaceError::Krein)
    };
    Ok(UpmReport { plus: side(HalfPlane::Right)?, minus: side(HalfPlane::Left)? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamiltonian::scalar_mode;
    use crate::spectral::analyze_spectrum;

    fn c(re: f64, im: f64) -> C64 {
        Complex64::new(re, im)
    }

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    fn analyze(t: &ComplexMatrix) -> (SpectralData, Pairing) {
        let s = analyze_spectrum(t, &tols()).unwrap();
        let p = crate::spectral::pair_skew_conjugate(&s, &tols()).unwrap();
        (s, p)
    }

    fn block_diag(blocks: &[ComplexMatrix]) -> ComplexMatrix {
        let n: usize = blocks.iter().map(|b| b.rows()).sum();
        let mut t = ComplexMatrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for r in 0..b.rows() {
                for cc in 0..b.cols() {
                    t[(off + r, off + cc)] = b[(r, cc)];
                }
            }
            off += b.rows();
        }
        t
    }

    #[test]
    fn enumerate_two_pairs_gives_four() {
        let t = block_diag(&[
            scalar_mode(c(0.0, 1.0), 1.0, 1.0, &tols()).t,
            scalar_mode(c(0.0, 4.0), 1.0, 2.0, &tols()).t,
        ]);
        let (s, p) = analyze(&t);
        assert_eq!(p.pairs.len(), 2);
        let sets = enumerate_scsets(&t, &s, &p, 64, 0, &tols());
        assert_eq!(sets.len(), 4);
        for set in &sets {
            assert!(set.usable());
            assert_eq!(set.chosen.len(), 2);
        }
    }

    #[test]
    fn enumerate_three_modes_gives_eight() {
        let blocks: Vec<ComplexMatrix> = (1..=3)
            .map(|k| scalar_mode(c(0.0, (k * k) as f64), 1.0, k as f64, &tols()).t)
            .collect();
        let t = block_diag(&blocks);
        let (s, p) = analyze(&t);
        let sets = enumerate_scsets(&t, &s, &p, 64, 0, &tols());
        assert_eq!(sets.len(), 8);
    }

    #[test]
    fn enumerate_respects_limit_with_canonical_first() {
        let blocks: Vec<ComplexMatrix> = (1..=5)
            .map(|k| scalar_mode(c(0.0, (k * k) as f64), 1.0, k as f64, &tols()).t)
            .collect();
        let t = block_diag(&blocks);
        let (s, p) = analyze(&t);
        let sets = enumerate_scsets(&t, &s, &p, 8, 3, &tols());
        assert_eq!(sets.len(), 8);
        for &i in &sets[0].chosen {
            assert_eq!(s.eigenvalues[i].class, HalfPlane::Right);
        }
        for &i in &sets[1].chosen {
            assert_eq!(s.eigenvalues[i].class, HalfPlane::Left);
        }
        let again = enumerate_scsets(&t, &s, &p, 8, 3, &tols());
        for (a, b) in sets.iter().zip(&again) {
            assert_eq!(a.chosen, b.chosen);
        }
    }

    #[test]
    fn enumerate_flags_unusable_on_definite_imaginary_gram() {
        // spectrum {+1, -1, 2i (defective, double)} where the root subspace
        // of 2i has J1-gram of signature (2, 0): no neutral half exists and
        // every sc-set is emitted unusable
        let s2 = std::f64::consts::SQRT_2;
        let w_cols: Vec<Vec<C64>> = vec![
            vec![c(1.0 / s2, 0.0), c(0.0, 0.0), c(0.0, 1.0 / s2), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0 / s2, 0.0), c(0.0, 0.0), c(0.0, 1.0 / s2)],
            vec![c(1.0 / s2, 0.0), c(0.0, 0.0), c(0.0, -1.0 / s2), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0 / s2, 0.0), c(0.0, 0.0), c(0.0, -1.0 / s2)],
        ];
        let w = ComplexMatrix::from_columns(&w_cols);
        let mut d = ComplexMatrix::zeros(4, 4);
        d[(0, 0)] = c(0.0, 2.0);
        d[(0, 1)] = c(1.0, 0.0);
        d[(1, 1)] = c(0.0, 2.0);
        d[(2, 2)] = c(1.0, 0.0);
        d[(3, 3)] = c(-1.0, 0.0);
        let t = w.matmul(&d).matmul(&w.adjoint());
        let (s, p) = analyze(&t);
        assert_eq!(p.pairs.len(), 1);
        assert_eq!(p.imaginary.len(), 1);
        let sets = enumerate_scsets(&t, &s, &p, 8, 0, &tols());
        assert_eq!(sets.len(), 2);
        for set in &sets {
            assert!(!set.usable());
            assert!(matches!(
                build_subspace(&t, &s, set, &tols()),
                Err(SubspaceError::UnusableScSet(_))
            ));
        }
    }

    #[test]
    fn upm_uniform_level_stable_for_constant_transport() {
        // constant b = c = 1: per-mode graph gram level 2 sqrt(bc)/(1+bc) = 1,
        // independent of the truncation order
        for n in [4i64, 8] {
            let spec = vec![(0, c(1.0, 0.0))];
            let model =
                crate::models::gen_fourier_transport(n, &spec, &spec, &tols()).unwrap();
            let s = analyze_spectrum(&model.h.t, &tols()).unwrap();
            let rep = classify_upm(&s, &tols()).unwrap();
            match rep.plus {
                Definiteness::UniformPos(a) => assert!((a - 1.0).abs() < 1e-9, "N={n}: {a}"),
                other => panic!("N={n}: U+ classified {other:?}"),
            }
        }
    }

    #[test]
    fn neutral_invariant_split_scalar_action() {
        // T = 2i I on the doubled space of n = 1: L is all of C^2, the gram
        // has signature (1,1), any neutral line is invariant
        let t = ComplexMatrix::diag(&[c(0.0, 2.0), c(0.0, 2.0)]);
        let basis = ComplexMatrix::identity(2);
        let m = neutral_invariant_split(&t, &basis, c(0.0, 2.0), 0, &tols()).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(m.certificates.invariance.unwrap() <= 1e-9);
        assert!(m.certificates.j1_neutral.unwrap() <= 1e-9);
    }

    #[test]
    fn neutral_invariant_split_jordan_block() {
        // T = [[0, 1], [0, 0]]: root subspace C^2 at 0, invariant neutral
        // eigenline span{e1}
        let t =
            ComplexMatrix::new(2, 2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)])
                .unwrap();
        let basis = ComplexMatrix::identity(2);
        let m = neutral_invariant_split(&t, &basis, c(0.0, 0.0), 0, &tols()).unwrap();
        assert_eq!(m.dim(), 1);
        assert!((m.basis[(0, 0)].norm() - 1.0).abs() < 1e-10);
        assert!(m.basis[(1, 0)].norm() < 1e-10);
    }

    #[test]
    fn neutral_invariant_split_unbalanced_gram_fails() {
        // odd-dimensional root subspace can never split into equal halves
        let t = ComplexMatrix::diag(&[c(0.0, 1.0), c(0.0, -3.0)]);
        let basis = ComplexMatrix::from_columns(&[vec![c(1.0, 0.0), c(0.0, 0.0)]]);
        let err = neutral_invariant_split(&t, &basis, c(0.0, 1.0), 0, &tols());
        assert!(matches!(err, Err(SubspaceError::NotFound { .. })));
    }

    #[test]
    fn build_subspace_mode_plus() {
        // mode k: choosing lambda+ gives span (1, sqrt(k))/sqrt(1+k)
        let k = 4.0;
        let h = scalar_mode(c(0.0, k * k), 1.0, k, &tols());
        let (s, p) = analyze(&h.t);
        let sets = enumerate_scsets(&h.t, &s, &p, 4, 0, &tols());
        let plus = sets
            .iter()
            .find(|sc| s.eigenvalues[sc.chosen[0]].class == HalfPlane::Right)
            .unwrap();
        let u = build_subspace(&h.t, &s, plus, &tols()).unwrap();
        assert_eq!(u.dim(), 1);
        let want = ComplexMatrix::from_columns(&[vec![
            c(1.0 / (1.0 + k).sqrt(), 0.0),
            c(k.sqrt() / (1.0 + k).sqrt(), 0.0),
        ]]);
        assert!(linalg::subspace_gap(&u.basis, &want) < 1e-10);
        assert!(u.certificates.invariance.unwrap() <= 1e-9);
        assert!(u.certificates.j1_neutral.unwrap() <= 1e-9);
    }

    #[test]
    fn build_subspace_swap_block_is_hypermaximal() {
        let h = scalar_mode(c(0.0, 0.0), 1.0, 1.0, &tols());
        let (s, p) = analyze(&h.t);
        let sets = enumerate_scsets(&h.t, &s, &p, 4, 0, &tols());
        assert_eq!(sets.len(), 2);
        for set in &sets {
            let u = build_subspace(&h.t, &s, set, &tols()).unwrap();
            let j1 = KreinForm::j1(1);
            assert!(krein::is_hypermaximal_neutral(&j1, &u, 1e-9).unwrap());
        }
    }

    #[test]
    fn complementary_scsets_give_transversal_subspaces() {
        // mode k: cos(angle) between the two eigenlines is (k-1)/(k+1)
        for k in [1.0f64, 4.0, 9.0, 25.0] {
            let h = scalar_mode(c(0.0, k * k), 1.0, k, &tols());
            let (s, p) = analyze(&h.t);
            let sets = enumerate_scsets(&h.t, &s, &p, 4, 0, &tols());
            let u0 = build_subspace(&h.t, &s, &sets[0], &tols()).unwrap();
            let u1 = build_subspace(&h.t, &s, &sets[1], &tols()).unwrap();
            let cosang = u0.basis.adjoint().matmul(&u1.basis).max_abs();
            let want = (k - 1.0) / (k + 1.0);
            assert!((cosang - want).abs() < 1e-10, "k={k}: {cosang} vs {want}");
        }
    }

    #[test]
    fn pv_scalar_positive() {
        // closed form: -(i/pi) log((lambda + ir)/(lambda - ir)) -> 1
        let t = ComplexMatrix::diag(&[c(1.0, 0.0)]);
        let r = 1000.0;
        let out = pv_resolvent_diff(&t, &[c(1.0, 0.0)], r, &tols()).unwrap();
        let err = (out[0] - c(1.0, 0.0)).norm();
        assert!(err <= 2e-3, "err {err}");
        let lam = c(1.0, 0.0);
        let exact = (-Complex64::i() / std::f64::consts::PI)
            * ((lam + c(0.0, r)) / (lam - c(0.0, r))).ln();
        assert!((out[0] - exact).norm() < 1e-10);
    }

    #[test]
    fn pv_sign_split() {
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let out = pv_resolvent_diff(&t, &[c(1.0, 0.0), c(1.0, 0.0)], 1000.0, &tols()).unwrap();
        assert!((out[0] - c(1.0, 0.0)).norm() < 2e-3);
        assert!((out[1] + c(1.0, 0.0)).norm() < 2e-3);
    }

    #[test]
    fn pv_jordan_block() {
        // size-2 Jordan block at 2: the integral tends to +x
        let lam = c(2.0, 0.0);
        let t = ComplexMatrix::new(2, 2, vec![lam, c(1.0, 0.0), c(0.0, 0.0), lam]).unwrap();
        let x = vec![c(0.6, 0.0), c(0.8, 0.0)];
        let out = pv_resolvent_diff(&t, &x, 2000.0, &tols()).unwrap();
        let err: f64 =
            out.iter().zip(&x).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        assert!(err < 5e-3, "err {err}");
    }

    #[test]
    fn pv_rejects_axis_eigenvalue() {
        let t = ComplexMatrix::diag(&[c(0.0, 1.0)]);
        assert!(matches!(
            pv_resolvent_diff(&t, &[c(1.0, 0.0)], 100.0, &tols()),
            Err(SubspaceError::AxisEigenvalue { .. })
        ));
    }

    #[test]
    fn pv_error_halves_with_r() {
        let mut rng = DetRng::new(21);
        let d: Vec<C64> = vec![c(1.0, 0.3), c(-0.7, 2.0), c(2.5, -1.0), c(-1.2, 0.0)];
        let q = rng.unitary(4);
        let t = q.matmul(&ComplexMatrix::diag(&d)).matmul(&q.adjoint());
        // exact P+ - P- from the eigenbasis
        let signs =
            ComplexMatrix::diag(&d.iter().map(|l| c(l.re.signum(), 0.0)).collect::<Vec<_>>());
        let exact = q.matmul(&signs).matmul(&q.adjoint());
        let x = rng.unit_vector(4);
        let want = exact.mat_vec(&x);
        let mut errs = Vec::new();
        for r in [250.0, 500.0, 1000.0, 2000.0] {
            let out = pv_resolvent_diff(&t, &x, r, &tols()).unwrap();
            let err: f64 =
                out.iter().zip(&want).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
            errs.push(err);
        }
        for w in errs.windows(2) {
            let ratio = w[0] / w[1];
            assert!(ratio > 1.5 && ratio < 2.5, "halving ratio {ratio}");
        }
    }

    #[test]
    fn lower_bound_scalar() {
        // T = [[1]]: integral of dt/(1+t^2) = pi >= pi/(2 sqrt 2)
        let t = ComplexMatrix::diag(&[c(1.0, 0.0)]);
        let rep =
            resolvent_l2_lowerbound(&t, 1.0, 1.0, 1.0, &[vec![c(1.0, 0.0)]], 400.0, &tols())
                .unwrap();
        assert!((rep.c_emp - std::f64::consts::PI).abs() < 0.01);
        assert!((rep.c_formula - std::f64::consts::PI / (2.0 * 2.0f64.sqrt())).abs() < 1e-12);
        assert!(rep.pass);
    }

    #[test]
    fn lower_bound_diag_pm_one() {
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let mut rng = DetRng::new(6);
        let probes: Vec<Vec<C64>> = (0..4).map(|_| rng.unit_vector(2)).collect();
        let rep = resolvent_l2_lowerbound(&t, 1.0, 1.0, 1.0, &probes, 400.0, &tols()).unwrap();
        assert!(rep.pass, "c_emp {} vs formula {}", rep.c_emp, rep.c_formula);
    }

    #[test]
    fn lower_bound_rejects_axis_spectrum() {
        let t = ComplexMatrix::diag(&[c(0.0, 1.0)]);
        assert!(matches!(
            resolvent_l2_lowerbound(&t, 1.0, 1.0, 1.0, &[vec![c(1.0, 0.0)]], 100.0, &tols()),
            Err(SubspaceError::AxisEigenvalue { .. })
        ));
    }

    #[test]
    fn upm_classification_swap_block() {
        let h = scalar_mode(c(0.0, 0.0), 1.0, 1.0, &tols());
        let s = analyze_spectrum(&h.t, &tols()).unwrap();
        let rep = classify_upm(&s, &tols()).unwrap();
        match rep.plus {
            Definiteness::UniformPos(a) => assert!((a - 1.0).abs() < 1e-10),
            other => panic!("U+ classified {other:?}"),
        }
        match rep.minus {
            Definiteness::UniformNeg(a) => assert!((a - 1.0).abs() < 1e-10),
            other => panic!("U- classified {other:?}"),
        }
    }

    #[test]
    fn upm_uniformity_decays_along_modal_family() {
        // per-mode level alpha(k) = 2 sqrt(k)/(1+k) decays to 0
        let mut alphas = Vec::new();
        for k in [1.0f64, 4.0, 16.0, 50.0] {
            let h = scalar_mode(c(0.0, k * k), 1.0, k, &tols());
            let s = analyze_spectrum(&h.t, &tols()).unwrap();
            let rep = classify_upm(&s, &tols()).unwrap();
            match rep.plus {
                Definiteness::UniformPos(a) => {
                    assert!((a - 2.0 * k.sqrt() / (1.0 + k)).abs() < 1e-10);
                    alphas.push(a);
                }
                other => panic!("mode {k}: {other:?}"),
            }
        }
        for w in alphas.windows(2) {
            assert!(w[1] < w[0]);
        }
    }
}
