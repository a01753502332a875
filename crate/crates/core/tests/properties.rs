use opeq::cli::{parse_matrix, render_matrix};
use opeq::congruence::{congruence_apply, homogeneous_congruence, range_intersection};
use opeq::harness::generate::{generate, Family, InstanceSpec, Shape};
use opeq::harness::rng::InstanceRng;
use opeq::projections::{numerical_rank, projection_quad, range_inclusion};
use opeq::spectral::pinv;
use opeq::sylvester::{homogeneous_ax_yb, SylvesterParams};
use opeq::{ComplexMatrix, ToleranceConfig};
use proptest::prelude::*;

fn tol() -> ToleranceConfig {
    ToleranceConfig::default()
}

/// `(seed, rows, cols, rank)` with `rank ≤ min(rows, cols)`.
fn ranked() -> impl Strategy<Value = (u64, usize, usize, usize)> {
    (any::<u64>(), 1usize..=9, 1usize..=9).prop_flat_map(|(s, m, n)| (Just(s), Just(m), Just(n), 0..=m.min(n)))
}

fn build(seed: u64, m: usize, n: usize, r: usize) -> ComplexMatrix {
    InstanceRng::new(seed).rank_matrix(m, n, r)
}

fn diff(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    (a - b).frobenius_norm()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pinv_satisfies_penrose((seed, m, n, r) in ranked()) {
        let a = build(seed, m, n, r);
        let g = pinv(&a, &tol());
        let scale = a.frobenius_norm().max(1.0);
        prop_assert!(diff(&(&(&a * &g) * &a), &a) <= 1e-10 * scale);
        prop_assert!(diff(&(&(&g * &a) * &g), &g) <= 1e-10 * g.frobenius_norm().max(1.0));
        prop_assert!((&a * &g).hermitian_defect() <= 1e-10);
        prop_assert!((&g * &a).hermitian_defect() <= 1e-10);
        prop_assert!(diff(&pinv(&g, &tol()), &a) <= 1e-8 * scale);
    }

    #[test]
    fn projections_are_orthogonal_and_complementary((seed, m, n, r) in ranked()) {
        let a = build(seed, m, n, r);
        let q = projection_quad(&a, &tol());
        prop_assert_eq!(q.rank, r);
        for p in [&q.p_a, &q.p_astar, &q.n_a, &q.n_astar] {
            prop_assert!(diff(&(p * p), p) <= 1e-10);
            prop_assert!(p.hermitian_defect() <= 1e-10);
        }
        prop_assert!(diff(&(&q.p_a * &a), &a) <= 1e-10 * a.frobenius_norm().max(1.0));
        prop_assert!((&a * &q.n_a).frobenius_norm() <= 1e-10 * a.frobenius_norm().max(1.0));
        prop_assert!((q.p_a.trace().re - r as f64).abs() <= 1e-9);
    }

    #[test]
    fn rank_is_adjoint_invariant((seed, m, n, r) in ranked()) {
        let a = build(seed, m, n, r);
        prop_assert_eq!(numerical_rank(&a, &tol()), numerical_rank(&a.adjoint(), &tol()));
    }

    #[test]
    fn products_stay_in_range((seed, m, n, r) in ranked(), k in 1usize..=5) {
        let a = build(seed, m, n, r);
        let c = &a * &InstanceRng::new(seed ^ 1).gaussian_matrix(n, k);
        prop_assert!(range_inclusion(&c, &a, &tol()).unwrap().holds);
    }

    #[test]
    fn sylvester_homogeneous_part_solves_zero(seed in any::<u64>(), m in 1usize..=6, n in 1usize..=6, p in 1usize..=6, q in 1usize..=6) {
        let mut rng = InstanceRng::new(seed);
        let ra = rng.range_inclusive(0, m.min(p));
        let a = rng.rank_matrix(m, p, ra);
        let rb = rng.range_inclusive(0, q.min(n));
        let b = rng.rank_matrix(q, n, rb);
        let params = SylvesterParams::seeded(&a, &b, seed);
        let (x, y) = homogeneous_ax_yb(&a, &b, &params, &tol()).unwrap();
        let scale = (a.frobenius_norm() * x.frobenius_norm() + y.frobenius_norm() * b.frobenius_norm()).max(1.0);
        prop_assert!((&(&a * &x) + &(&y * &b)).frobenius_norm() <= 1e-10 * scale);
    }

    #[test]
    fn congruence_homogeneous_part_solves_zero(seed in any::<u64>(), m in 1usize..=6, p in 1usize..=6, q in 1usize..=6, onto in any::<bool>()) {
        let mut rng = InstanceRng::new(seed);
        // surjective A and B satisfy both range hypotheses for every V
        let (p, q) = if onto { (p.max(m), q.max(m)) } else { (p, q) };
        let ra = if onto { m } else { rng.range_inclusive(0, m.min(p)) };
        let a = rng.rank_matrix(m, p, ra);
        let rb = if onto { m } else { rng.range_inclusive(0, m.min(q)) };
        let b = rng.rank_matrix(m, q, rb);
        let v1 = rng.gaussian_matrix(q, p);
        let v2 = rng.gaussian_matrix(m, p);
        let v3 = rng.gaussian_matrix(q, m);
        match homogeneous_congruence(&a, &b, &v1, &v2, &v3, &tol()) {
            Ok((x, y)) => {
                let scale = (x.frobenius_norm() + y.frobenius_norm()).max(1.0);
                prop_assert!(congruence_apply(&a, &b, &x, &y).frobenius_norm() <= 1e-9 * scale);
            }
            Err(e) => prop_assert!(!onto, "{e}"),
        }
    }

    #[test]
    fn intersection_blocks_satisfy_identities(seed in any::<u64>(), m in 1usize..=7, p in 1usize..=7, q in 1usize..=7) {
        let mut rng = InstanceRng::new(seed);
        let ra = rng.range_inclusive(0, m.min(p));
        let a = rng.rank_matrix(m, p, ra);
        let rb = rng.range_inclusive(0, m.min(q));
        let b = rng.rank_matrix(m, q, rb);
        let r = range_intersection(&a, &b, &tol()).unwrap();
        prop_assert!(r.dims_agree());
        prop_assert!(r.projection_defect <= 1e-10);
        prop_assert!(r.block_identity_residual <= 1e-10);
        prop_assert!(r.cross_residual <= 1e-10 * r.scale.max(1.0));
        prop_assert_eq!(r.intersection_basis.cols(), r.dim);
    }

    #[test]
    fn matrix_files_round_trip(seed in any::<u64>(), m in 1usize..=6, n in 1usize..=6, s in -300i32..300) {
        let a = InstanceRng::new(seed).gaussian_matrix(m, n).scale(10f64.powi(s));
        let (back, _) = parse_matrix(&render_matrix(&a, None)).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn generation_is_deterministic(seed in any::<u64>(), f in 0usize..Family::ALL.len()) {
        let spec = InstanceSpec::new(Family::ALL[f], seed, Shape::new(6, 5, 6, 6, 1));
        let (x, y) = (generate(&spec).unwrap(), generate(&spec).unwrap());
        prop_assert_eq!(x.operators, y.operators);
        prop_assert_eq!(x.hidden, y.hidden);
    }
}
