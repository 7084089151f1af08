//! Dense symmetric matrices, pairwise distances and the centering operators.
//!
//! Centering never materializes `H = I - 11'/N`: double-centering is
//! `m_ij - (r_i + r_j) + g` with row means `r` and grand mean `g`, and
//! triple-centering further subtracts `beta * H` with
//! `beta = tr(HmH) / (N - 1)`, the value minimizing `tr([HmH - beta H]^2)`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::par;
use crate::sample::{ComplexSampleSet, SampleSet};

/// Square symmetric matrix, stored in full row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    n: usize,
    entries: Vec<f64>,
}

impl SymmetricMatrix {
    /// Validates shape, finiteness and exact symmetry.
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::TooFewSamples { min: 1, got: 0 });
        }
        if entries.len() != n * n {
            return Err(Error::Shape {
                expected: n * n,
                got: entries.len(),
            });
        }
        for i in 0..n {
            for j in 0..n {
                let v = entries[i * n + j];
                if !v.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                if j > i && v != entries[j * n + i] {
                    return Err(Error::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for r in rows {
            if r.as_ref().len() != n {
                return Err(Error::Shape {
                    expected: n,
                    got: r.as_ref().len(),
                });
            }
            entries.extend_from_slice(r.as_ref());
        }
        Self::new(n, entries)
    }

    /// Fills every entry from `f(i, j)`; `f` must be symmetric in its
    /// arguments bit for bit.
    pub(crate) fn from_fn<F>(n: usize, f: F) -> Self
    where
        F: Fn(usize, usize) -> f64 + Sync + Send,
    {
        let mut entries = vec![0.0; n * n];
        par::fill_rows(&mut entries, n, |i, row| {
            for (j, v) in row.iter_mut().enumerate() {
                *v = f(i, j);
            }
        });
        Self { n, entries }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    pub fn ones(n: usize) -> Self {
        Self::from_fn(n, |_, _| 1.0)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    /// `(1/N^2) * sum_ij m_ij^2`.
    pub fn mean_square(&self) -> f64 {
        symmetric_inner(self.n, &self.entries, &self.entries) / (self.n * self.n) as f64
    }
}

/// What a [`PairwiseMatrix`] holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MatrixKind {
    /// Zero diagonal, non-negative entries.
    Distance,
    /// Unit diagonal, entries in `[0, 1]`.
    Similarity,
}

/// Pairwise distances or kernel similarities between the samples of a set.
#[derive(Debug, Clone, PartialEq)]
pub struct PairwiseMatrix {
    matrix: SymmetricMatrix,
    kind: MatrixKind,
}

impl PairwiseMatrix {
    pub fn new(matrix: SymmetricMatrix, kind: MatrixKind) -> Result<Self> {
        let ok = match kind {
            MatrixKind::Distance => {
                (0..matrix.n).all(|i| matrix.get(i, i) == 0.0)
                    && matrix.entries.iter().all(|&v| v >= 0.0)
            }
            MatrixKind::Similarity => {
                (0..matrix.n).all(|i| matrix.get(i, i) == 1.0)
                    && matrix.entries.iter().all(|&v| (0.0..=1.0).contains(&v))
            }
        };
        if !ok {
            return Err(Error::Config(match kind {
                MatrixKind::Distance => "distance matrix needs a zero diagonal and entries >= 0",
                MatrixKind::Similarity => {
                    "similarity matrix needs a unit diagonal and entries in [0, 1]"
                }
            }));
        }
        Ok(Self { matrix, kind })
    }

    pub(crate) fn from_parts(matrix: SymmetricMatrix, kind: MatrixKind) -> Self {
        Self { matrix, kind }
    }

    pub fn matrix(&self) -> &SymmetricMatrix {
        &self.matrix
    }

    pub fn kind(&self) -> MatrixKind {
        self.kind
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.matrix.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.matrix.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix.get(i, j)
    }

    pub fn max_entry(&self) -> f64 {
        self.matrix.entries.iter().fold(0.0, |m, &v| f64::max(m, v))
    }

    /// Median of the strictly positive off-diagonal entries (upper triangle),
    /// averaging the two middle values for an even count.
    pub fn median_nonzero(&self) -> Option<f64> {
        let n = self.matrix.n;
        let mut vals: Vec<f64> = (0..n)
            .flat_map(|i| self.matrix.row(i)[i + 1..].iter().copied())
            .filter(|&v| v > 0.0)
            .collect();
        if vals.is_empty() {
            return None;
        }
        let mid = vals.len() / 2;
        let (_, &mut upper, _) = vals.select_nth_unstable_by(mid, f64::total_cmp);
        if vals.len() % 2 == 1 {
            return Some(upper);
        }
        let lower = vals[..mid].iter().copied().fold(f64::MIN, f64::max);
        Some(0.5 * (lower + upper))
    }
}

/// Euclidean distances between all pairs of samples.
pub fn pairwise_distances(x: &SampleSet) -> PairwiseMatrix {
    let m = SymmetricMatrix::from_fn(x.len(), |i, j| libm::sqrt(squared_gap(x.row(i), x.row(j))));
    PairwiseMatrix::from_parts(m, MatrixKind::Distance)
}

/// Distances between complex samples: `sqrt(|dRe|^2 + |dIm|^2)`.
pub fn pairwise_distances_complex(x: &ComplexSampleSet) -> PairwiseMatrix {
    let (re, im) = (x.re(), x.im());
    let m = SymmetricMatrix::from_fn(x.len(), |i, j| {
        libm::sqrt(squared_gap(re.row(i), re.row(j)) + squared_gap(im.row(i), im.row(j)))
    });
    PairwiseMatrix::from_parts(m, MatrixKind::Distance)
}

#[inline]
fn squared_gap(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(u, v)| (u - v) * (u - v)).sum()
}

/// A symmetric matrix whose rows and columns all sum to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct CenteredKernel {
    n: usize,
    entries: Vec<f64>,
    reference: f64,
}

impl CenteredKernel {
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Mean squared entry of the matrix this kernel was centered from.
    /// Used as the natural magnitude when deciding degeneracy.
    pub fn reference(&self) -> f64 {
        self.reference
    }

    pub fn trace(&self) -> f64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    /// `sum_ij K_ij * L_ij`, i.e. `tr(KL)` for symmetric kernels.
    pub fn inner(&self, other: &CenteredKernel) -> f64 {
        assert_eq!(self.n, other.n, "kernel sizes differ");
        symmetric_inner(self.n, &self.entries, &other.entries)
    }

    pub fn sum_squares(&self) -> f64 {
        self.inner(self)
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, v| f64::max(m, v.abs()))
    }

    pub fn max_abs_row_sum(&self) -> f64 {
        self.entries
            .chunks_exact(self.n)
            .map(|r| r.iter().sum::<f64>().abs())
            .fold(0.0, f64::max)
    }

    /// Zero-sum tolerance `1e-9 * N * max|entry|`.
    pub fn tolerance(&self) -> f64 {
        1e-9 * self.n as f64 * self.max_abs()
    }

    pub fn to_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix {
            n: self.n,
            entries: self.entries.clone(),
        }
    }
}

/// `HmH`: subtract row and column means, add back the grand mean.
pub fn double_center(m: &SymmetricMatrix) -> CenteredKernel {
    let n = m.n;
    let nf = n as f64;
    let row_means = par::map_rows(n, |i| m.row(i).iter().sum::<f64>() / nf);
    let grand = row_means.iter().sum::<f64>() / nf;
    let mut entries = vec![0.0; n * n];
    par::fill_rows(&mut entries, n, |i, row| {
        let src = m.row(i);
        for j in 0..n {
            row[j] = src[j] - (row_means[i] + row_means[j]) + grand;
        }
    });
    CenteredKernel {
        n,
        entries,
        reference: m.mean_square(),
    }
}

/// `HmH - [tr(HmH)/(N-1)] H`.
pub fn triple_center(m: &SymmetricMatrix) -> Result<CenteredKernel> {
    if m.n < 2 {
        return Err(Error::TooFewSamples { min: 2, got: m.n });
    }
    let mut k = double_center(m);
    let beta = k.trace() / (m.n - 1) as f64;
    subtract_scaled_centering(&mut k, beta);
    Ok(k)
}

/// `K - beta * H` in place.
pub(crate) fn subtract_scaled_centering(k: &mut CenteredKernel, beta: f64) {
    let n = k.n;
    let off = beta / n as f64;
    par::fill_rows(&mut k.entries, n, |i, row| {
        for v in row.iter_mut() {
            *v += off;
        }
        row[i] -= beta;
    });
}

/// `sum_ij a_ij b_ij` for symmetric `a`, `b`, visiting only the upper
/// triangle. Row partials are combined in row order.
fn symmetric_inner(n: usize, a: &[f64], b: &[f64]) -> f64 {
    par::sum_rows(n, |i| {
        let ra = &a[i * n..(i + 1) * n];
        let rb = &b[i * n..(i + 1) * n];
        let off: f64 = ra[i + 1..]
            .iter()
            .zip(&rb[i + 1..])
            .map(|(x, y)| x * y)
            .sum();
        ra[i] * rb[i] + 2.0 * off
    })
}
