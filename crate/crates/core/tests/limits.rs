mod common;

use common::*;
use simcorr_core::real::{modified_similarity_moments, EPS_VAR};
use simcorr_core::toy::SplitMix64;
use simcorr_core::{
    distance_correlation, distance_covariance, maximize_correlation,
    modified_similarity_correlation, rv_coefficient, similarity_covariance, similarity_variance,
    triple_center, KernelConfig, KernelFamily, ScaleGrid, SymmetricMatrix,
};

#[test]
fn equidistant_points_have_no_similarity_covariance() {
    let x = set(&tetrahedron());
    let mut rng = SplitMix64::new(321);
    let mut distance_nonzero = 0;
    for _ in 0..20 {
        let y = set(&random_rows(&mut rng, 4, 2));
        for s in [1e-3, 0.1, 1.0, 8.0, 1e3] {
            let cx = KernelConfig::exponential(2.0, s).unwrap();
            let cy = KernelConfig::exponential(2.0, 0.5).unwrap();
            let c = similarity_covariance(&x, &y, &cx, &cy).unwrap();
            assert!(c.abs() <= EPS_VAR, "covariance {c} at s = {s}");
        }
        let best = maximize_correlation(
            &x,
            &y,
            KernelFamily::Exponential,
            2.0,
            &ScaleGrid::default(),
        )
        .unwrap();
        assert_eq!(best.estimate.value, 0.0);
        assert!(best.estimate.degenerate);
        if distance_covariance(&x, &y).unwrap().abs() > 1e-6 {
            distance_nonzero += 1;
        }
    }
    assert!(distance_nonzero >= 1);
}

#[test]
fn equidistant_similarity_matrix_triple_centers_to_zero() {
    for (n, f) in [(4, 0.3), (5, 0.9), (7, 1e-5)] {
        let m = SymmetricMatrix::from_rows(
            &(0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { 1.0 } else { f })
                        .collect::<Vec<f64>>()
                })
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let t = triple_center(&m).unwrap();
        assert!(t.max_abs() <= 1e-12, "{}", t.max_abs());
    }
}

#[test]
fn tetrahedron_distance_variance() {
    // A = -a H with edge a, so the variance is a^2 (N - 1) / N^2.
    let x = set(&tetrahedron());
    let a = 8f64.sqrt();
    let v = simcorr_core::distance_variance(&x);
    assert!((v - a * a * 3.0 / 16.0).abs() <= 1e-12);
}

#[test]
fn extreme_scales_kill_the_similarity_variance() {
    let mut rng = SplitMix64::new(99);
    for k in 0..10 {
        let x = set(&random_rows(&mut rng, 10 + k, 1 + k % 3));
        for s in [1e-300, 1e300] {
            for alpha in [1.0, 2.0] {
                let v = similarity_variance(&x, &KernelConfig::exponential(alpha, s).unwrap());
                assert!(v <= EPS_VAR, "variance {v} at s = {s}");
            }
        }
    }
}

#[test]
fn large_scales_approach_distance_correlation() {
    let mut rng = SplitMix64::new(2024);
    for _ in 0..5 {
        let xr = random_rows(&mut rng, 50, 2);
        let yr: Vec<Vec<f64>> = xr
            .iter()
            .map(|r| vec![r[0] * r[0] + 0.3 * (2.0 * rng.next_unit() - 1.0), r[1]])
            .collect();
        let (x, y) = (set(&xr), set(&yr));
        let (mx, my) = (max_distance(&xr), max_distance(&yr));
        let rd = distance_correlation(&x, &y).unwrap().value;
        let gap =
            |f: f64| (modified_similarity_correlation(&x, &y, f * mx, f * my).unwrap() - rd).abs();
        assert!(gap(1e6) <= 1e-4, "gap {}", gap(1e6));
        let (g2, g3, g4) = (gap(1e2), gap(1e3), gap(1e4));
        assert!(g2 > g3 && g3 > g4, "{g2} {g3} {g4}");
        assert!(!modified_similarity_moments(&x, &y, 1e6 * mx, 1e6 * my)
            .unwrap()
            .is_degenerate());
    }
}

#[test]
fn rv_baseline() {
    let mut rng = SplitMix64::new(5);
    for _ in 0..20 {
        let x: Vec<f64> = (0..30).map(|_| rng.next_unit()).collect();
        let y: Vec<f64> = x
            .iter()
            .map(|v| v - 2.0 * v * v + rng.next_unit())
            .collect();
        let xs = simcorr_core::SampleSet::from_column(&x).unwrap();
        let ys = simcorr_core::SampleSet::from_column(&y).unwrap();
        let r = pearson(&x, &y);
        assert!((rv_coefficient(&xs, &ys).unwrap().value - r * r).abs() <= 1e-10);
        assert!((rv_coefficient(&xs, &xs).unwrap().value - 1.0).abs() <= 1e-12);
    }
}
