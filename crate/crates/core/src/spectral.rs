//! Eigenstructure analysis: clustered eigenvalues, Jordan chains, root
//! subspaces, Riesz projections by contour quadrature, skew-conjugate
//! pairing, and the eigenvalue counting function.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::SpectralError;
use crate::linalg::{self, Lu};
use crate::matrix::{vec_norm, C64, ComplexMatrix};
use crate::tol::Tolerances;

/// Half-plane classification of an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum HalfPlane {
    Left,
    Right,
    Imaginary,
}

/// One clustered eigenvalue with its multiplicities.
#[derive(Debug, Clone)]
pub struct Eigenvalue {
    pub value: C64,
    pub alg_mult: usize,
    pub geo_mult: usize,
    pub class: HalfPlane,
}

/// Full spectral data of a square matrix.
pub struct SpectralData {
    pub dim: usize,
    pub norm: f64,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Orthonormal basis of each root subspace (dim x alg_mult).
    pub root_bases: Vec<ComplexMatrix>,
    /// Jordan chains per eigenvalue; chain[0] is the eigenvector and
    /// (T - lambda) chain[k] = chain[k-1] for k >= 1.
    pub chains: Vec<Vec<Vec<Vec<C64>>>>,
    /// Clusters closer than 10x the merge radius that stayed separate.
    pub ambiguities: Vec<(C64, C64)>,
    /// Eigenvalues within 10x of the imaginary-axis classification cut;
    /// their half-plane tag is sensitive to the tol_axis choice.
    pub axis_marginal: Vec<C64>,
}

impl SpectralData {
    pub fn indices_by_class(&self, class: HalfPlane) -> Vec<usize> {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter(|(_, e)| e.class == class)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn values_with_mult(&self) -> Vec<(C64, usize)> {
        self.eigenvalues.iter().map(|e| (e.value, e.alg_mult)).collect()
    }
}

/// Skew-conjugate pairing of a spectrum symmetric about the imaginary axis.
#[derive(Debug, Clone, Serialize)]
pub struct Pairing {
    /// (right half-plane index, left half-plane index) per pair.
    pub pairs: Vec<(usize, usize)>,
    /// Imaginary eigenvalues, self-paired.
    pub imaginary: Vec<usize>,
}

/// Computes eigenvalues with clustering, Jordan chains, and root subspaces.
pub fn analyze_spectrum(t: &ComplexMatrix, tols: &Tolerances) -> Result<SpectralData, SpectralError> {
    if !t.is_square() {
        return Err(SpectralError::Linalg(crate::error::LinalgError::NonSquare {
            rows: t.rows(),
            cols: t.cols(),
        }));
    }
    let n = t.rows();
    let norm = linalg::two_norm(t).max(f64::MIN_POSITIVE);
    let raw = linalg::eig_with_cap(t, tols.dim_cap)?;
    let merge_radius = tols.cluster_tol * norm;

    // single-linkage clustering of the computed eigenvalues
    let vals: Vec<C64> = raw.iter().map(|p| p.0).collect();
    let mut cluster_of: Vec<usize> = (0..n).collect();
    fn find(c: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while c[r] != r {
            r = c[r];
        }
        let mut i = i;
        while c[i] != r {
            let next = c[i];
            c[i] = r;
            i = next;
        }
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (vals[i] - vals[j]).norm() <= merge_radius {
                let (a, b) = (find(&mut cluster_of, i), find(&mut cluster_of, j));
                if a != b {
                    cluster_of[a] = b;
                }
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut root_to_group: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut cluster_of, i);
        match root_to_group[r] {
            Some(g) => groups[g].push(i),
            None => {
                root_to_group[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }

    // cluster means, sorted deterministically
    let mut centers: Vec<(C64, usize)> = groups
        .iter()
        .map(|g| {
            let sum: C64 = g.iter().map(|&i| vals[i]).sum();
            (sum / g.len() as f64, g.len())
        })
        .collect();
    let mut order: Vec<usize> = (0..centers.len()).collect();
    order.sort_by(|&a, &b| {
        (centers[a].0.re, centers[a].0.im)
            .partial_cmp(&(centers[b].0.re, centers[b].0.im))
            .unwrap()
    });
    centers = order.iter().map(|&k| centers[k]).collect();

    let mut ambiguities = Vec::new();
    for i in 0..centers.len() {
        for j in i + 1..centers.len() {
            let d = (centers[i].0 - centers[j].0).norm();
            if d <= 10.0 * merge_radius {
                ambiguities.push((centers[i].0, centers[j].0));
            }
        }
    }

    // eigenvectors of the raw pairs, reused for simple eigenvalues
    let find_vector = |value: C64| -> Vec<C64> {
        raw.iter()
            .min_by(|a, b| {
                (a.0 - value).norm().partial_cmp(&(b.0 - value).norm()).unwrap()
            })
            .map(|p| p.1.clone())
            .unwrap()
    };

    let axis_width = tols.tol_axis * norm;
    let axis_marginal: Vec<C64> = centers
        .iter()
        .filter(|(v, _)| v.re.abs() > axis_width && v.re.abs() <= 10.0 * axis_width)
        .map(|&(v, _)| v)
        .collect();
    let mut eigenvalues = Vec::with_capacity(centers.len());
    let mut root_bases = Vec::with_capacity(centers.len());
    let mut chains_all = Vec::with_capacity(centers.len());
    for &(value, alg_mult) in &centers {
        // simple eigenvalues skip the rank staircase entirely
        let chains = if alg_mult == 1 {
            vec![vec![find_vector(value)]]
        } else {
            jordan_chains(t, value, alg_mult, tols)?
        };
        let geo_mult = chains.len();
        let all_vectors: Vec<Vec<C64>> =
            chains.iter().flat_map(|ch| ch.iter().cloned()).collect();
        let span = ComplexMatrix::from_columns(&all_vectors);
        let basis = linalg::orthonormal_columns(&span, tols.rank_tol);
        let class = if value.re.abs() <= axis_width {
            HalfPlane::Imaginary
        } else if value.re > 0.0 {
            HalfPlane::Right
        } else {
            HalfPlane::Left
        };
        eigenvalues.push(Eigenvalue { value, alg_mult, geo_mult, class });
        root_bases.push(basis);
        chains_all.push(chains);
    }

    Ok(SpectralData {
        dim: n,
        norm,
        eigenvalues,
        root_bases,
        chains: chains_all,
        ambiguities,
        axis_marginal,
    })
}

/// Jordan chains for one eigenvalue by the staircase method: null spaces of
/// ascending powers of (T - lambda), chain tops picked from the top power and
/// pushed down by repeated application of (T - lambda).
fn jordan_chains(
    t: &ComplexMatrix,
    lambda: C64,
    alg_mult: usize,
    tols: &Tolerances,
) -> Result<Vec<Vec<Vec<C64>>>, SpectralError> {
    let n = t.rows();
    let shifted = t.sub(&ComplexMatrix::identity(n).scale(lambda));

    // nullities d[k] of (T - lambda)^k until they stabilize at alg_mult
    let mut powers: Vec<ComplexMatrix> = vec![shifted.clone()];
    let mut nullities: Vec<usize> = Vec::new();
    let mut null_bases: Vec<ComplexMatrix> = Vec::new();
    loop {
        let p = powers.last().unwrap();
        let info = linalg::rank_decomp(p, tols.rank_tol);
        let d = n - info.rank;
        nullities.push(d);
        null_bases.push(info.null);
        if d >= alg_mult || nullities.len() >= alg_mult || d == *nullities.first().unwrap() && nullities.len() > 1 && nullities[nullities.len() - 2] == d
        {
            break;
        }
        if nullities.len() >= 2 && nullities[nullities.len() - 2] == d {
            break;
        }
        powers.push(p.matmul(&shifted));
    }
    let height = nullities.len();

    // chains with length >= k: r[k] = d[k] - d[k-1]
    let r = |k: usize| -> isize {
        if k == 0 {
            return 0;
        }
        let dk = nullities[(k - 1).min(height - 1)] as isize;
        let dk1 = if k >= 2 { nullities[(k - 2).min(height - 1)] as isize } else { 0 };
        dk - dk1
    };

    let mut chains: Vec<Vec<Vec<C64>>> = Vec::new();
    // columns already claimed at each height (top vectors pushed down)
    let mut claimed_at: Vec<Vec<Vec<C64>>> = vec![Vec::new(); height + 1];
    for k in (1..=height).rev() {
        let new_seeds = r(k) - r(k + 1);
        if new_seeds <= 0 {
            continue;
        }
        // candidates: null basis of power k, made independent of null(power k-1)
        // and of chain vectors already present at height k
        let cand = &null_bases[k - 1];
        let mut obstructions: Vec<Vec<C64>> = Vec::new();
        if k >= 2 {
            let lower = &null_bases[k - 2];
            for j in 0..lower.cols() {
                obstructions.push(lower.col(j));
            }
        }
        obstructions.extend(claimed_at[k].iter().cloned());
        let proj_basis = if obstructions.is_empty() {
            None
        } else {
            Some(linalg::orthonormal_columns(
                &ComplexMatrix::from_columns(&obstructions),
                tols.rank_tol,
            ))
        };
        // residuals of candidates after projecting out the obstructions
        let mut residuals: Vec<Vec<C64>> = Vec::new();
        for j in 0..cand.cols() {
            let mut v = cand.col(j);
            if let Some(q) = &proj_basis {
                for c in 0..q.cols() {
                    let qc = q.col(c);
                    let coeff = crate::matrix::dot(&v, &qc);
                    v = crate::matrix::vec_axpy(&v, coeff, &qc);
                }
            }
            residuals.push(v);
        }
        // strongest independent directions among the residuals
        let picked = linalg::orthonormal_columns(
            &ComplexMatrix::from_columns(&residuals),
            1e-8,
        );
        for s in 0..(new_seeds as usize).min(picked.cols()) {
            let top = picked.col(s);
            let mut chain_rev = vec![top.clone()];
            let mut cur = top;
            for h in (1..k).rev() {
                cur = shifted.mat_vec(&cur);
                claimed_at[h].push(cur.clone());
                chain_rev.push(cur.clone());
            }
            chain_rev.reverse();
            chains.push(chain_rev);
        }
    }

    // normalize each chain by its top vector
    for chain in chains.iter_mut() {
        let s = vec_norm(chain.last().unwrap());
        if s > 0.0 {
            for v in chain.iter_mut() {
                for z in v.iter_mut() {
                    *z /= s;
                }
            }
        }
    }
    // longest chains first, then deterministic
    chains.sort_by_key(|ch| std::cmp::Reverse(ch.len()));
    Ok(chains)
}

/// Riesz projection onto the root subspaces enclosed by the circle
/// |z - center| = radius, by trapezoidal quadrature of the resolvent.
/// Points are doubled until |P^2 - P| falls below `proj_tol` or the cap.
pub fn riesz_projection(
    t: &ComplexMatrix,
    center: C64,
    radius: f64,
    quad_points: usize,
    tols: &Tolerances,
) -> Result<ComplexMatrix, SpectralError> {
    let n = t.rows();
    let norm = linalg::two_norm(t).max(1.0);
    let eigs = linalg::eigenvalues(t)?;
    let clearance = eigs
        .iter()
        .map(|l| ((l - center).norm() - radius).abs())
        .fold(f64::INFINITY, f64::min);
    if clearance <= tols.ring_tol * norm.max(radius) {
        return Err(SpectralError::EigenvalueOnContour { dist: clearance });
    }

    let mut points = quad_points.max(4);
    loop {
        let mut acc = ComplexMatrix::zeros(n, n);
        for j in 0..points {
            let theta = std::f64::consts::TAU * j as f64 / points as f64;
            let w = Complex64::from_polar(1.0, theta);
            let z = center + radius * w;
            let lu = Lu::factor(&t.sub(&ComplexMatrix::identity(n).scale(z)))
                .map_err(SpectralError::Linalg)?;
            let res = lu.solve_mat(&ComplexMatrix::identity(n));
            acc = acc.add(&res.scale(w));
        }
        // P = -(radius / points) * sum_j e^{i theta_j} (T - z_j)^{-1}
        let p = acc.scale(Complex64::new(-radius / points as f64, 0.0));
        let defect = linalg::two_norm(&p.matmul(&p).sub(&p));
        if defect <= tols.proj_tol {
            return Ok(p);
        }
        if points >= tols.quad_cap {
            return Err(SpectralError::QuadratureDivergence { defect, points });
        }
        points *= 2;
    }
}

/// Matches eigenvalues into skew-conjugate pairs (lambda, -conj(lambda)).
pub fn pair_skew_conjugate(s: &SpectralData, tols: &Tolerances) -> Result<Pairing, SpectralError> {
    let radius = tols.pair_tol * s.norm;
    let mut pairs = Vec::new();
    let mut imaginary = Vec::new();
    let mut used = vec![false; s.eigenvalues.len()];
    for (i, e) in s.eigenvalues.iter().enumerate() {
        if e.class == HalfPlane::Imaginary {
            imaginary.push(i);
            used[i] = true;
        }
    }
    for i in 0..s.eigenvalues.len() {
        if used[i] {
            continue;
        }
        let e = &s.eigenvalues[i];
        let mirror = -e.value.conj();
        let partner = s
            .eigenvalues
            .iter()
            .enumerate()
            .filter(|(j, f)| !used[*j] && *j != i && (f.value - mirror).norm() <= radius)
            .min_by(|(_, a), (_, b)| {
                (a.value - mirror)
                    .norm()
                    .partial_cmp(&(b.value - mirror).norm())
                    .unwrap()
            });
        let Some((j, f)) = partner else {
            return Err(SpectralError::SymmetryViolation(format!(
                "eigenvalue {} has no skew-conjugate partner",
                e.value
            )));
        };
        if f.alg_mult != e.alg_mult {
            return Err(SpectralError::SymmetryViolation(format!(
                "multiplicity mismatch at ({}, {}): {} vs {}",
                e.value, f.value, e.alg_mult, f.alg_mult
            )));
        }
        used[i] = true;
        used[j] = true;
        if e.class == HalfPlane::Right {
            pairs.push((i, j));
        } else {
            pairs.push((j, i));
        }
    }
    Ok(Pairing { pairs, imaginary })
}

/// N(r): sum of algebraic multiplicities of eigenvalues with |lambda| <= r.
pub fn counting_function(eigs: &[(C64, usize)], r: f64) -> usize {
    assert!(r >= 0.0);
    eigs.iter().filter(|(l, _)| l.norm() <= r).map(|(_, m)| m).sum()
}

/// Wire form of the spectral data.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralJson {
    pub eigenvalues: Vec<EigenvalueJson>,
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenvalueJson {
    pub value_re: f64,
    pub value_im: f64,
    pub alg_mult: usize,
    pub geo_mult: usize,
    pub class: HalfPlane,
    pub chains: Vec<Vec<crate::json::MatrixJson>>,
}

impl SpectralData {
    pub fn to_json(&self) -> SpectralJson {
        SpectralJson {
            eigenvalues: self
                .eigenvalues
                .iter()
                .zip(&self.chains)
                .map(|(e, chains)| EigenvalueJson {
                    value_re: e.value.re,
                    value_im: e.value.im,
                    alg_mult: e.alg_mult,
                    geo_mult: e.geo_mult,
                    class: e.class,
                    chains: chains
                        .iter()
                        .map(|ch| {
                            ch.iter()
                                .map(|v| crate::json::MatrixJson::from(&ComplexMatrix::column(v)))
                                .collect()
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn tols() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn simple_diagonal_spectrum() {
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let s = analyze_spectrum(&t, &tols()).unwrap();
        assert_eq!(s.eigenvalues.len(), 3);
        for e in &s.eigenvalues {
            assert_eq!(e.alg_mult, 1);
            assert_eq!(e.geo_mult, 1);
        }
        let total: usize = s.eigenvalues.iter().map(|e| e.alg_mult).sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn jordan_block_multiplicities_and_chain() {
        let lam = c(2.0, 0.5);
        let t = ComplexMatrix::new(2, 2, vec![lam, c(1.0, 0.0), c(0.0, 0.0), lam]).unwrap();
        let s = analyze_spectrum(&t, &tols()).unwrap();
        assert_eq!(s.eigenvalues.len(), 1);
        let e = &s.eigenvalues[0];
        assert_eq!(e.alg_mult, 2);
        assert_eq!(e.geo_mult, 1);
        assert_eq!(s.chains[0].len(), 1);
        let chain = &s.chains[0][0];
        assert_eq!(chain.len(), 2);
        // chain relations
        let shifted = t.sub(&ComplexMatrix::identity(2).scale(e.value));
        let r1 = vec_norm(&shifted.mat_vec(&chain[0]));
        assert!(r1 < 1e-7 * linalg::two_norm(&t), "chain base residual {r1}");
        let r2 = vec_norm(&crate::matrix::vec_sub(&shifted.mat_vec(&chain[1]), &chain[0]));
        assert!(r2 < 1e-7 * linalg::two_norm(&t), "chain link residual {r2}");
        assert_eq!(s.root_bases[0].cols(), 2);
    }

    #[test]
    fn modal_block_spectrum_matches_closed_form() {
        // [[16i, 1], [4, 16i]] has eigenvalues 16i +- 2
        let t = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 16.0), c(1.0, 0.0), c(4.0, 0.0), c(0.0, 16.0)],
        )
        .unwrap();
        let s = analyze_spectrum(&t, &tols()).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert!((s.eigenvalues[0].value - c(-2.0, 16.0)).norm() < 1e-12);
        assert!((s.eigenvalues[1].value - c(2.0, 16.0)).norm() < 1e-12);
        assert_eq!(s.eigenvalues[0].class, HalfPlane::Left);
        assert_eq!(s.eigenvalues[1].class, HalfPlane::Right);
    }

    #[test]
    fn cluster_ambiguity_is_reported_not_fatal() {
        // two eigenvalues separated by 5x the merge radius: distinct
        // clusters, flagged as ambiguous
        let gap = 5e-7;
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(1.0 + gap, 0.0)]);
        let s = analyze_spectrum(&t, &tols()).unwrap();
        assert_eq!(s.eigenvalues.len(), 2);
        assert_eq!(s.ambiguities.len(), 1);
    }

    #[test]
    fn axis_marginal_diagnostic() {
        // |T| ~ 1: the cut is 1e-8; an eigenvalue at Re = 5e-8 is marginal
        let t = ComplexMatrix::diag(&[c(5e-8, 1.0), c(0.5, -1.0), c(-0.5, 0.0)]);
        let s = analyze_spectrum(&t, &tols()).unwrap();
        assert_eq!(s.axis_marginal.len(), 1);
        assert!((s.axis_marginal[0].im - 1.0).abs() < 1e-12);
        // still classified (as right half-plane) rather than dropped
        assert_eq!(s.indices_by_class(HalfPlane::Imaginary).len(), 0);
    }

    #[test]
    fn riesz_projection_on_diagonal() {
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(5.0, 0.0)]);
        let p = riesz_projection(&t, c(1.0, 0.0), 1.0, 64, &tols()).unwrap();
        let want = ComplexMatrix::diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        assert!(p.sub(&want).fro_norm() < 1e-12);
    }

    #[test]
    fn riesz_projection_on_jordan_block() {
        let t = ComplexMatrix::new(2, 2, vec![c(2.0, 0.0), c(1.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)])
            .unwrap();
        let p = riesz_projection(&t, c(2.0, 0.0), 1.0, 64, &tols()).unwrap();
        assert!(p.sub(&ComplexMatrix::identity(2)).fro_norm() < 1e-10);
    }

    #[test]
    fn riesz_projection_example_mode() {
        // mode k=1 block [[i,1],[1,i]], circle around i+1: rank-1 projection
        // onto span (1,1)/sqrt(2)
        let t = ComplexMatrix::new(2, 2, vec![c(0.0, 1.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)])
            .unwrap();
        let p = riesz_projection(&t, c(1.0, 1.0), 0.5, 64, &tols()).unwrap();
        let half = c(0.5, 0.0);
        let want = ComplexMatrix::new(2, 2, vec![half, half, half, half]).unwrap();
        assert!(p.sub(&want).fro_norm() < 1e-10);
    }

    #[test]
    fn riesz_rejects_eigenvalue_on_contour() {
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let err = riesz_projection(&t, c(1.0, 0.0), 1.0, 64, &tols());
        assert!(matches!(err, Err(SpectralError::EigenvalueOnContour { .. })));
    }

    #[test]
    fn pairing_basics() {
        let t = ComplexMatrix::from_fn(2, 2, |i, j| if i != j { c(1.0, 0.0) } else { c(0.0, 0.0) });
        let s = analyze_spectrum(&t, &tols()).unwrap();
        let p = pair_skew_conjugate(&s, &tols()).unwrap();
        assert_eq!(p.pairs.len(), 1);
        assert!(p.imaginary.is_empty());
    }

    #[test]
    fn pairing_mode_one() {
        // {i+1, i-1}: -conj(i+1) = i-1, one pair
        let t = ComplexMatrix::diag(&[c(1.0, 1.0), c(-1.0, 1.0)]);
        let s = analyze_spectrum(&t, &tols()).unwrap();
        let p = pair_skew_conjugate(&s, &tols()).unwrap();
        assert_eq!(p.pairs.len(), 1);
        let (r, l) = p.pairs[0];
        assert!(s.eigenvalues[r].value.re > 0.0);
        assert!(s.eigenvalues[l].value.re < 0.0);
    }

    #[test]
    fn pairing_imaginary_selfpaired() {
        let t = ComplexMatrix::diag(&[c(0.0, 2.0)]);
        let s = analyze_spectrum(&t, &tols()).unwrap();
        let p = pair_skew_conjugate(&s, &tols()).unwrap();
        assert!(p.pairs.is_empty());
        assert_eq!(p.imaginary, vec![0]);
    }

    #[test]
    fn pairing_detects_asymmetry() {
        let t = ComplexMatrix::diag(&[c(1.0, 0.0), c(2.0, 0.0)]);
        let s = analyze_spectrum(&t, &tols()).unwrap();
        assert!(pair_skew_conjugate(&s, &tols()).is_err());
    }

    #[test]
    fn counting_function_examples() {
        // ik^2 for k = 1..100; r = 25 counts k <= 5
        let eigs: Vec<(C64, usize)> =
            (1..=100).map(|k| (c(0.0, (k * k) as f64), 1)).collect();
        assert_eq!(counting_function(&eigs, 25.0), 5);
        assert_eq!(counting_function(&eigs, 0.0), 0);
        // N(r)/sqrt(r) <= 1 along the family
        for r in [1.0, 7.5, 100.0, 6561.0, 10000.0] {
            let n = counting_function(&eigs, r) as f64;
            assert!(n <= r.sqrt() + 1e-12);
        }
    }
}
