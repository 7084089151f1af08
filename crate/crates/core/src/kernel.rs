//! Similarity kernels `k(d^alpha / s)` mapping distance 0 to similarity 1.

use crate::error::{Error, Result};
use crate::matrix::{MatrixKind, PairwiseMatrix, SymmetricMatrix};

/// The two commonly used distance exponents.
pub const ALPHA_ONE: f64 = 1.0;
pub const ALPHA_TWO: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum KernelFamily {
    /// `exp(-t)`.
    #[default]
    Exponential,
    /// `(1 - t)^2` for `t < 1`, else 0. Tukey's biweight when `alpha = 2`.
    Biweight,
}

impl KernelFamily {
    /// Kernel value at `t = d^alpha / s >= 0`.
    #[inline]
    pub fn eval(self, t: f64) -> f64 {
        match self {
            KernelFamily::Exponential => libm::exp(-t),
            KernelFamily::Biweight => {
                if t < 1.0 {
                    (1.0 - t) * (1.0 - t)
                } else {
                    0.0
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelConfig {
    family: KernelFamily,
    alpha: f64,
    scale: f64,
}

impl KernelConfig {
    pub fn new(family: KernelFamily, alpha: f64, scale: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(Error::Config("alpha must be a positive finite number"));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::Config("scale must be a positive finite number"));
        }
        Ok(Self {
            family,
            alpha,
            scale,
        })
    }

    pub fn exponential(alpha: f64, scale: f64) -> Result<Self> {
        Self::new(KernelFamily::Exponential, alpha, scale)
    }

    pub fn biweight(alpha: f64, scale: f64) -> Result<Self> {
        Self::new(KernelFamily::Biweight, alpha, scale)
    }

    pub fn family(&self) -> KernelFamily {
        self.family
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Similarity at Euclidean distance `d`.
    #[inline]
    pub fn similarity(&self, d: f64) -> f64 {
        self.family.eval(pow_alpha(d, self.alpha) / self.scale)
    }
}

/// `d^alpha`, exact for the two common exponents.
#[inline]
pub(crate) fn pow_alpha(d: f64, alpha: f64) -> f64 {
    if alpha == 1.0 {
        d
    } else if alpha == 2.0 {
        d * d
    } else {
        libm::pow(d, alpha)
    }
}

/// Applies the kernel entrywise to a distance matrix.
pub fn similarity_from_distances(d: &PairwiseMatrix, cfg: &KernelConfig) -> Result<PairwiseMatrix> {
    if d.kind() != MatrixKind::Distance {
        return Err(Error::WrongKind {
            expected: MatrixKind::Distance,
            got: d.kind(),
        });
    }
    let m = d.matrix();
    let s = SymmetricMatrix::from_fn(m.len(), |i, j| cfg.similarity(m.get(i, j)));
    Ok(PairwiseMatrix::from_parts(s, MatrixKind::Similarity))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::pairwise_distances;
    use crate::sample::SampleSet;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn zero_distance_is_unit_similarity() {
        for fam in [KernelFamily::Exponential, KernelFamily::Biweight] {
            for alpha in [0.5, 1.0, 2.0] {
                let cfg = KernelConfig::new(fam, alpha, 0.3).unwrap();
                assert_eq!(cfg.similarity(0.0), 1.0);
            }
        }
    }

    #[test]
    fn direct_values() {
        let e = KernelConfig::exponential(2.0, 1.0).unwrap();
        assert_abs_diff_eq!(e.similarity(1.0), 0.367_879_441_171_442_33, epsilon = 1e-15);
        let b = KernelConfig::biweight(2.0, 1.0).unwrap();
        assert_eq!(b.similarity(2.0), 0.0);
        assert_eq!(b.similarity(1.0), 0.0);
        assert_abs_diff_eq!(b.similarity(0.5), 0.5625, epsilon = 1e-15);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(KernelConfig::exponential(2.0, 0.0).is_err());
        assert!(KernelConfig::exponential(2.0, -1.0).is_err());
        assert!(KernelConfig::exponential(0.0, 1.0).is_err());
        assert!(KernelConfig::biweight(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn needs_a_distance_matrix() {
        let x = SampleSet::from_column(&[0.0, 1.0, 2.0]).unwrap();
        let cfg = KernelConfig::exponential(1.0, 1.0).unwrap();
        let s = similarity_from_distances(&pairwise_distances(&x), &cfg).unwrap();
        assert_eq!(s.kind(), MatrixKind::Similarity);
        assert!(matches!(
            similarity_from_distances(&s, &cfg),
            Err(Error::WrongKind { .. })
        ));
    }

    proptest! {
        #[test]
        fn kernel_range_and_monotonicity(
            d1 in 0.0f64..50.0,
            d2 in 0.0f64..50.0,
            alpha in 0.25f64..3.0,
            log_s in -3.0f64..3.0,
        ) {
            let s = libm::pow(10.0, log_s);
            let (lo, hi) = if d1 <= d2 { (d1, d2) } else { (d2, d1) };
            let e = KernelConfig::exponential(alpha, s).unwrap();
            let b = KernelConfig::biweight(alpha, s).unwrap();
            let (el, eh) = (e.similarity(lo), e.similarity(hi));
            prop_assert!((0.0..=1.0).contains(&el) && (0.0..=1.0).contains(&eh));
            prop_assert!(eh <= el);
            let (bl, bh) = (b.similarity(lo), b.similarity(hi));
            prop_assert!((0.0..=1.0).contains(&bl) && (0.0..=1.0).contains(&bh));
            prop_assert!(bh <= bl);
            // exp(-t) stays strictly positive for moderate arguments
            if pow_alpha(hi, alpha) / s < 700.0 {
                prop_assert!(eh > 0.0);
            }
        }
    }
}
