//! Property tests for the kernel invariants.

use krein_riccati::krein::{classify, is_hypermaximal_neutral, Definiteness, KreinForm, SubspaceBasis};
use krein_riccati::linalg;
use krein_riccati::matrix::{C64, ComplexMatrix};
use proptest::prelude::*;

fn matrix_strategy(rows: usize, cols: usize) -> impl Strategy<Value = ComplexMatrix> {
    proptest::collection::vec((-3.0f64..3.0, -3.0f64..3.0), rows * cols).prop_map(
        move |entries| {
            ComplexMatrix::new(
                rows,
                cols,
                entries.into_iter().map(|(re, im)| C64::new(re, im)).collect(),
            )
            .unwrap()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn rank_plus_nullity_is_cols(m in matrix_strategy(5, 4)) {
        let info = linalg::rank_decomp(&m, 1e-12);
        prop_assert_eq!(info.rank + info.null.cols(), 4);
        // null space really annihilates
        if info.null.cols() > 0 {
            let res = linalg::two_norm(&m.matmul(&info.null));
            prop_assert!(res <= 1e-11 * linalg::two_norm(&m).max(1.0));
        }
    }

    #[test]
    fn eig_residuals_bounded(m in matrix_strategy(5, 5)) {
        let nrm = linalg::two_norm(&m).max(1e-300);
        for (lam, v) in linalg::eig(&m).unwrap() {
            let mv = m.mat_vec(&v);
            let res: f64 = mv.iter().zip(&v)
                .map(|(a, b)| (a - lam * b).norm_sqr()).sum::<f64>().sqrt();
            prop_assert!(res <= 1e-10 * nrm);
        }
    }

    #[test]
    fn spectra_invariant_under_unitary_similarity(
        m in matrix_strategy(5, 5),
        g in matrix_strategy(5, 5),
    ) {
        let q = linalg::orthonormal_columns(&g, 1e-10);
        prop_assume!(q.cols() == 5);
        let m2 = q.adjoint().matmul(&m).matmul(&q);
        let e1 = linalg::eigenvalues(&m).unwrap();
        let mut e2 = linalg::eigenvalues(&m2).unwrap();
        for v in &e1 {
            let (k, d) = e2.iter().enumerate()
                .map(|(k, w)| (k, (v - w).norm()))
                .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                .unwrap();
            prop_assert!(d <= 1e-9 * linalg::two_norm(&m).max(1.0));
            e2.remove(k);
        }
    }

    #[test]
    fn graph_nonnegativity_tracks_semidefiniteness(g in matrix_strategy(4, 4)) {
        // X = G G* is psd; X - shift I is indefinite for a large enough shift
        let x = g.matmul(&g.adjoint()).hermitian_part();
        let j2 = KreinForm::j2(4);
        let cls = classify(&j2, &SubspaceBasis::graph(&x), 1e-9).unwrap();
        prop_assert!(matches!(
            cls,
            Definiteness::Nonneg | Definiteness::UniformPos(_) | Definiteness::Neutral
        ));
        let (vals, _) = linalg::hermitian_eigen(&x).unwrap();
        let shifted = x.sub(&ComplexMatrix::identity(4).scale(C64::new(vals[3] * 0.5 + 1.0, 0.0)));
        let (svals, _) = linalg::hermitian_eigen(&shifted).unwrap();
        if svals[0] < -1e-6 && svals[3] > 1e-6 {
            let cls2 = classify(&j2, &SubspaceBasis::graph(&shifted), 1e-9).unwrap();
            prop_assert_eq!(cls2, Definiteness::Indefinite);
        }
    }

    #[test]
    fn hypermaximal_neutrality_tracks_hermiticity(g in matrix_strategy(4, 4)) {
        let j1 = KreinForm::j1(4);
        let herm = g.hermitian_part();
        prop_assert!(is_hypermaximal_neutral(&j1, &SubspaceBasis::graph(&herm), 1e-9).unwrap());
        let asym = g.sub(&g.adjoint()).fro_norm();
        if asym > 1e-6 {
            prop_assert!(!is_hypermaximal_neutral(&j1, &SubspaceBasis::graph(&g), 1e-9).unwrap());
        }
    }

    #[test]
    fn matrix_json_round_trip(m in matrix_strategy(3, 5)) {
        let j = krein_riccati::json::MatrixJson::from(&m);
        let text = serde_json::to_string(&j).unwrap();
        let back: krein_riccati::json::MatrixJson = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(ComplexMatrix::try_from(&back).unwrap(), m);
    }
}
