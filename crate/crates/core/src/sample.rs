//! Sample containers: `N` observations of a `p`-dimensional vector.

use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Upper bound on `N` used by the plain constructors. Every estimator
/// materializes `N x N` matrices, so memory grows as `8 N^2` bytes each.
pub const DEFAULT_MAX_SAMPLES: usize = 10_000;

/// `N` real vectors of dimension `p`, stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    n: usize,
    dim: usize,
    values: Vec<f64>,
}

impl SampleSet {
    /// Builds a set from row-major `values` (`n * dim` of them).
    pub fn new(n: usize, dim: usize, values: Vec<f64>) -> Result<Self> {
        Self::with_limit(n, dim, values, DEFAULT_MAX_SAMPLES)
    }

    pub fn with_limit(n: usize, dim: usize, values: Vec<f64>, limit: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewSamples { min: 2, got: n });
        }
        if n > limit {
            return Err(Error::TooManySamples { got: n, limit });
        }
        if dim == 0 {
            return Err(Error::Shape {
                expected: n,
                got: 0,
            });
        }
        if values.len() != n * dim {
            return Err(Error::Shape {
                expected: n * dim,
                got: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: k / dim,
                col: k % dim,
            });
        }
        Ok(Self { n, dim, values })
    }

    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let dim = rows.first().map_or(0, |r| r.as_ref().len());
        let mut values = Vec::with_capacity(rows.len() * dim);
        for r in rows {
            let r = r.as_ref();
            if r.len() != dim {
                return Err(Error::Shape {
                    expected: dim,
                    got: r.len(),
                });
            }
            values.extend_from_slice(r);
        }
        Self::new(rows.len(), dim, values)
    }

    /// One-dimensional samples.
    pub fn from_column(values: &[f64]) -> Result<Self> {
        Self::new(values.len(), 1, values.to_vec())
    }

    /// Stacks columns side by side: `columns[k][i]` is coordinate `k` of
    /// sample `i`.
    pub fn from_columns<C: AsRef<[f64]>>(columns: &[C]) -> Result<Self> {
        let dim = columns.len();
        let n = columns.first().map_or(0, |c| c.as_ref().len());
        let mut values = Vec::with_capacity(n * dim);
        for i in 0..n {
            for c in columns {
                let c = c.as_ref();
                if c.len() != n {
                    return Err(Error::Shape {
                        expected: n,
                        got: c.len(),
                    });
                }
                values.push(c[i]);
            }
        }
        Self::new(n, dim, values)
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
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.values[i * self.dim..(i + 1) * self.dim]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> {
        self.values.chunks_exact(self.dim)
    }

    /// Coordinate `k` of every sample.
    pub fn column(&self, k: usize) -> Vec<f64> {
        self.rows().map(|r| r[k]).collect()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.values
    }
}

/// `N` complex vectors of dimension `p`, kept as separate real and
/// imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexSampleSet {
    re: SampleSet,
    im: SampleSet,
}

impl ComplexSampleSet {
    pub fn new(re: SampleSet, im: SampleSet) -> Result<Self> {
        if re.len() != im.len() {
            return Err(Error::SampleCountMismatch {
                left: re.len(),
                right: im.len(),
            });
        }
        if re.dim() != im.dim() {
            return Err(Error::Shape {
                expected: re.dim(),
                got: im.dim(),
            });
        }
        Ok(Self { re, im })
    }

    /// A complex set with zero imaginary part.
    pub fn from_real(re: SampleSet) -> Self {
        let im = SampleSet {
            n: re.n,
            dim: re.dim,
            values: alloc::vec![0.0; re.values.len()],
        };
        Self { re, im }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.re.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.re.is_empty()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.re.dim()
    }

    pub fn re(&self) -> &SampleSet {
        &self.re
    }

    pub fn im(&self) -> &SampleSet {
        &self.im
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_finite() {
        let err = SampleSet::from_rows(&[[0.0, 1.0], [f64::NAN, 2.0]]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 1, col: 0 });
        assert!(SampleSet::from_column(&[1.0, f64::INFINITY]).is_err());
    }

    #[test]
    fn rejects_single_sample() {
        assert_eq!(
            SampleSet::from_column(&[1.0]).unwrap_err(),
            Error::TooFewSamples { min: 2, got: 1 }
        );
    }

    #[test]
    fn enforces_limit() {
        let err = SampleSet::with_limit(5, 1, alloc::vec![0.0; 5], 4).unwrap_err();
        assert_eq!(err, Error::TooManySamples { got: 5, limit: 4 });
    }

    #[test]
    fn ragged_rows() {
        let rows: [&[f64]; 2] = [&[0.0, 1.0], &[2.0]];
        assert!(matches!(
            SampleSet::from_rows(&rows),
            Err(Error::Shape { .. })
        ));
    }

    #[test]
    fn columns_and_rows_agree() {
        let a = SampleSet::from_columns(&[[1.0, 2.0, 3.0], [4.0, 5.0, 6.0]]).unwrap();
        let b = SampleSet::from_rows(&[[1.0, 4.0], [2.0, 5.0], [3.0, 6.0]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.column(1), alloc::vec![4.0, 5.0, 6.0]);
    }

    #[test]
    fn complex_parts_must_match() {
        let re = SampleSet::from_column(&[0.0, 1.0]).unwrap();
        let im = SampleSet::from_column(&[0.0, 1.0, 2.0]).unwrap();
        assert!(ComplexSampleSet::new(re, im).is_err());
    }
}
