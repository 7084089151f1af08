//! Dense reference implementations built with an explicit centering matrix.
#![allow(dead_code)]

use simcorr_core::toy::SplitMix64;
use simcorr_core::SampleSet;

pub type Dense = Vec<Vec<f64>>;

pub fn random_rows(rng: &mut SplitMix64, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| (0..dim).map(|_| 2.0 * rng.next_unit() - 1.0).collect())
        .collect()
}

pub fn set(rows: &[Vec<f64>]) -> SampleSet {
    SampleSet::from_rows(rows).unwrap()
}

pub fn distances(rows: &[Vec<f64>]) -> Dense {
    rows.iter()
        .map(|a| {
            rows.iter()
                .map(|b| {
                    a.iter()
                        .zip(b)
                        .map(|(p, q)| (p - q) * (p - q))
                        .sum::<f64>()
                        .sqrt()
                })
                .collect()
        })
        .collect()
}

pub fn centering(n: usize) -> Dense {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { 1.0 } else { 0.0 } - 1.0 / n as f64)
                .collect()
        })
        .collect()
}

pub fn matmul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

/// `H m H`.
pub fn h_double(m: &Dense) -> Dense {
    let h = centering(m.len());
    matmul(&matmul(&h, m), &h)
}

/// `H m H - tr(H m H) / (N - 1) * H`.
pub fn h_triple(m: &Dense) -> Dense {
    let n = m.len();
    let h = centering(n);
    let c = h_double(m);
    let t: f64 = (0..n).map(|i| c[i][i]).sum::<f64>() / (n - 1) as f64;
    (0..n)
        .map(|i| (0..n).map(|j| c[i][j] - t * h[i][j]).collect())
        .collect()
}

pub fn map(m: &Dense, f: impl Fn(f64) -> f64) -> Dense {
    m.iter()
        .map(|r| r.iter().map(|&v| f(v)).collect())
        .collect()
}

/// `exp(-d^alpha / s)`.
pub fn similarity(d: &Dense, alpha: f64, s: f64) -> Dense {
    map(d, |v| (-v.powf(alpha) / s).exp())
}

pub fn gram(rows: &[Vec<f64>]) -> Dense {
    rows.iter()
        .map(|a| {
            rows.iter()
                .map(|b| a.iter().zip(b).map(|(p, q)| p * q).sum())
                .collect()
        })
        .collect()
}

/// `tr(A B) / N^2` for symmetric `A`, `B`.
pub fn cov(a: &Dense, b: &Dense) -> f64 {
    let n = a.len() as f64;
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(p, q)| p * q).sum::<f64>())
        .sum::<f64>()
        / (n * n)
}

pub fn corr(a: &Dense, b: &Dense) -> f64 {
    cov(a, b) / (cov(a, a) * cov(b, b)).sqrt()
}

pub fn pearson(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let (mx, my) = (x.iter().sum::<f64>() / n, y.iter().sum::<f64>() / n);
    let sxy: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = x.iter().map(|a| (a - mx) * (a - mx)).sum();
    let syy: f64 = y.iter().map(|b| (b - my) * (b - my)).sum();
    sxy / (sxx * syy).sqrt()
}

/// Vertices of a regular tetrahedron with edge `2 sqrt(2)`.
pub fn tetrahedron() -> Vec<Vec<f64>> {
    vec![
        vec![1.0, 1.0, 1.0],
        vec![1.0, -1.0, -1.0],
        vec![-1.0, 1.0, -1.0],
        vec![-1.0, -1.0, 1.0],
    ]
}

pub fn max_distance(rows: &[Vec<f64>]) -> f64 {
    distances(rows)
        .iter()
        .flatten()
        .copied()
        .fold(0.0, f64::max)
}

/// `|a - b| <= tol * max(|b|, scale)`.
pub fn close(a: f64, b: f64, tol: f64, scale: f64) -> bool {
    (a - b).abs() <= tol * b.abs().max(scale)
}
