//! Deterministic toy datasets.
//!
//! Real toys (two groups `x`, `y`; noise goes to the `y` group only):
//!
//! | name             | construction                                            |
//! |------------------|---------------------------------------------------------|
//! | `line`           | `x_i = i/(n-1)`, `y = x`                                |
//! | `x_shape`        | the `n/2` abscissae repeated for `y = x` then `y = 1-x` |
//! | `line_plus_sine` | `y = sin(7 pi x) + x`                                   |
//! | `random_dots`    | `x`, `y` independent `U[0, 1]`                          |
//! | `circle`         | `n/2` abscissae on `[-1, 1]`, `y = +sqrt(1-x^2)` then `-sqrt(1-x^2)` |
//! | `paraboloid`     | `sqrt(n) x sqrt(n)` grid on `[-1, 1]^2` as a 2-D group, `z = x^2 + y^2` |
//!
//! Complex toys put `x` on a `sqrt(n) x sqrt(n)` grid over `[-1, 1]^2` of the
//! complex plane (which never contains 0 for an even side) and set
//! `y = a f(x)` with `a = 0.5 - i`.
//!
//! Random draws come from [`SplitMix64`]: data draws first, then noise.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sample::{ComplexSampleSet, SampleSet};

/// Coefficient of every complex toy.
pub const COEFFICIENT: (f64, f64) = (0.5, -1.0);

/// Steele, Lea and Flood's SplitMix64.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub const GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;
    const MIX1: u64 = 0xBF58_476D_1CE4_E5B9;
    const MIX2: u64 = 0x94D0_49BB_1331_11EB;

    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(Self::GAMMA);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(Self::MIX1);
        z = (z ^ (z >> 27)).wrapping_mul(Self::MIX2);
        z ^ (z >> 31)
    }

    /// Uniform on `[0, 1)` from the top 53 bits.
    pub fn next_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[-beta, beta)`.
    pub fn next_symmetric(&mut self, beta: f64) -> f64 {
        beta * (2.0 * self.next_unit() - 1.0)
    }
}

/// `count` draws from `U[-beta, beta]`; all exact zeros when `beta == 0`.
pub fn uniform_noise(seed: u64, count: usize, beta: f64) -> Vec<f64> {
    if beta == 0.0 {
        return alloc::vec![0.0; count];
    }
    let mut rng = SplitMix64::new(seed);
    (0..count).map(|_| rng.next_symmetric(beta)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ToyName {
    Line,
    XShape,
    LinePlusSine,
    RandomDots,
    Circle,
    Paraboloid,
    CxLinear,
    CxQuadratic,
    CxSqrt,
    CxLog,
}

impl ToyName {
    pub const REAL: [ToyName; 6] = [
        ToyName::Line,
        ToyName::XShape,
        ToyName::LinePlusSine,
        ToyName::RandomDots,
        ToyName::Circle,
        ToyName::Paraboloid,
    ];
    pub const COMPLEX: [ToyName; 4] = [
        ToyName::CxLinear,
        ToyName::CxQuadratic,
        ToyName::CxSqrt,
        ToyName::CxLog,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ToyName::Line => "line",
            ToyName::XShape => "x_shape",
            ToyName::LinePlusSine => "line_plus_sine",
            ToyName::RandomDots => "random_dots",
            ToyName::Circle => "circle",
            ToyName::Paraboloid => "paraboloid",
            ToyName::CxLinear => "cx_linear",
            ToyName::CxQuadratic => "cx_quadratic",
            ToyName::CxSqrt => "cx_sqrt",
            ToyName::CxLog => "cx_log",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::REAL
            .into_iter()
            .chain(Self::COMPLEX)
            .find(|t| t.as_str() == s)
    }

    pub fn is_complex(self) -> bool {
        Self::COMPLEX.contains(&self)
    }

    /// Sample size of the reference tables.
    pub fn default_n(self) -> usize {
        match self {
            ToyName::Line | ToyName::LinePlusSine => 1000,
            ToyName::XShape | ToyName::RandomDots | ToyName::Circle => 2000,
            _ => 900,
        }
    }

    /// Noise half-width of the noisy column of the reference table.
    pub fn table_noise(self) -> f64 {
        match self {
            ToyName::LinePlusSine | ToyName::Paraboloid => 0.4,
            _ => 0.2,
        }
    }
}

/// Variant of the complex logarithm used by [`ToyName::CxLog`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LogForm {
    /// `ln r + i Arg(x)`, `Arg` in `(-pi, pi]`.
    #[default]
    Principal,
    /// `ln r + Arg(x)` with the argument added to the real part.
    Paper,
    /// `ln r + i atan(Im x / Re x)`, the argument folded into `(-pi/2, pi/2)`.
    Arctan,
}

impl LogForm {
    pub const ALL: [LogForm; 3] = [LogForm::Principal, LogForm::Paper, LogForm::Arctan];

    pub fn as_str(self) -> &'static str {
        match self {
            LogForm::Principal => "principal",
            LogForm::Paper => "paper",
            LogForm::Arctan => "arctan",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.as_str() == s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToySpec {
    pub name: ToyName,
    pub n: usize,
    pub noise_beta: f64,
    pub seed: u64,
    pub log_form: LogForm,
}

impl ToySpec {
    /// Reference sample size, no noise, seed 0.
    pub fn new(name: ToyName) -> Self {
        Self {
            name,
            n: name.default_n(),
            noise_beta: 0.0,
            seed: 0,
            log_form: LogForm::default(),
        }
    }

    pub fn with_n(self, n: usize) -> Self {
        Self { n, ..self }
    }

    pub fn with_noise(self, beta: f64, seed: u64) -> Self {
        Self {
            noise_beta: beta,
            seed,
            ..self
        }
    }

    pub fn with_log_form(self, log_form: LogForm) -> Self {
        Self { log_form, ..self }
    }

    fn validate(&self) -> Result<()> {
        if !(self.noise_beta >= 0.0 && self.noise_beta.is_finite()) {
            return Err(Error::Toy("noise beta must be finite and >= 0"));
        }
        if self.n < 2 {
            return Err(Error::TooFewSamples {
                min: 2,
                got: self.n,
            });
        }
        Ok(())
    }
}

fn equispaced(count: usize, lo: f64, hi: f64) -> Vec<f64> {
    let last = (count - 1) as f64;
    (0..count)
        .map(|i| {
            if i + 1 == count {
                hi
            } else {
                lo + (hi - lo) * (i as f64 / last)
            }
        })
        .collect()
}

fn square_side(n: usize) -> Result<usize> {
    let side = libm::round(libm::sqrt(n as f64)) as usize;
    if side * side != n || side < 2 {
        return Err(Error::Toy("grid toys need a perfect-square sample size"));
    }
    Ok(side)
}

fn even_half(n: usize) -> Result<usize> {
    if !n.is_multiple_of(2) || n < 4 {
        return Err(Error::Toy("two-branch toys need an even sample size >= 4"));
    }
    Ok(n / 2)
}

/// Generates the two groups of a real toy.
pub fn generate_real(spec: &ToySpec) -> Result<(SampleSet, SampleSet)> {
    spec.validate()?;
    let n = spec.n;
    let mut rng = SplitMix64::new(spec.seed);
    let (x_cols, mut y): (Vec<Vec<f64>>, Vec<f64>) = match spec.name {
        ToyName::Line => {
            let x = equispaced(n, 0.0, 1.0);
            (alloc::vec![x.clone()], x)
        }
        ToyName::XShape => {
            let half = equispaced(even_half(n)?, 0.0, 1.0);
            let x: Vec<f64> = half.iter().chain(&half).copied().collect();
            let y: Vec<f64> = half
                .iter()
                .copied()
                .chain(half.iter().map(|v| 1.0 - v))
                .collect();
            (alloc::vec![x], y)
        }
        ToyName::LinePlusSine => {
            let x = equispaced(n, 0.0, 1.0);
            let y = x.iter().map(|&v| libm::sin(7.0 * PI * v) + v).collect();
            (alloc::vec![x], y)
        }
        ToyName::RandomDots => {
            let x: Vec<f64> = (0..n).map(|_| rng.next_unit()).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.next_unit()).collect();
            (alloc::vec![x], y)
        }
        ToyName::Circle => {
            let half = equispaced(even_half(n)?, -1.0, 1.0);
            let arc = |v: f64| libm::sqrt((1.0 - v * v).max(0.0));
            let x: Vec<f64> = half.iter().chain(&half).copied().collect();
            let y: Vec<f64> = half
                .iter()
                .map(|&v| arc(v))
                .chain(half.iter().map(|&v| -arc(v)))
                .collect();
            (alloc::vec![x], y)
        }
        ToyName::Paraboloid => {
            let side = square_side(n)?;
            let g = equispaced(side, -1.0, 1.0);
            let (mut u, mut v) = (Vec::with_capacity(n), Vec::with_capacity(n));
            for &a in &g {
                for &b in &g {
                    u.push(a);
                    v.push(b);
                }
            }
            let z = u.iter().zip(&v).map(|(a, b)| a * a + b * b).collect();
            (alloc::vec![u, v], z)
        }
        _ => return Err(Error::Toy("not a real-valued toy")),
    };
    if spec.noise_beta > 0.0 {
        for v in y.iter_mut() {
            *v += rng.next_symmetric(spec.noise_beta);
        }
    }
    Ok((
        SampleSet::from_columns(&x_cols)?,
        SampleSet::from_column(&y)?,
    ))
}

/// Principal square root, `sgn(0)` taken as +1.
pub fn principal_sqrt(re: f64, im: f64) -> (f64, f64) {
    let r = libm::hypot(re, im);
    let sgn = if im < 0.0 { -1.0 } else { 1.0 };
    (
        libm::sqrt(((r + re) / 2.0).max(0.0)),
        sgn * libm::sqrt(((r - re) / 2.0).max(0.0)),
    )
}

pub fn complex_log(re: f64, im: f64, form: LogForm) -> (f64, f64) {
    let ln_r = libm::log(libm::hypot(re, im));
    match form {
        LogForm::Principal => (ln_r, libm::atan2(im, re)),
        LogForm::Paper => (ln_r + libm::atan2(im, re), 0.0),
        LogForm::Arctan => (ln_r, libm::atan(im / re)),
    }
}

#[inline]
fn mul(a: (f64, f64), b: (f64, f64)) -> (f64, f64) {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

/// Generates the two groups of a complex toy (one complex variable each).
pub fn generate_complex(spec: &ToySpec) -> Result<(ComplexSampleSet, ComplexSampleSet)> {
    spec.validate()?;
    let side = square_side(spec.n)?;
    if side % 2 != 0 {
        return Err(Error::Toy(
            "complex grid side must be even to avoid the origin",
        ));
    }
    let g = equispaced(side, -1.0, 1.0);
    let mut xs = Vec::with_capacity(spec.n);
    for &re in &g {
        for &im in &g {
            xs.push((re, im));
        }
    }
    let f = |x: (f64, f64)| -> Result<(f64, f64)> {
        Ok(match spec.name {
            ToyName::CxLinear => x,
            ToyName::CxQuadratic => mul(x, x),
            ToyName::CxSqrt => principal_sqrt(x.0, x.1),
            ToyName::CxLog => complex_log(x.0, x.1, spec.log_form),
            _ => return Err(Error::Toy("not a complex-valued toy")),
        })
    };
    let mut ys = xs
        .iter()
        .map(|&x| f(x).map(|v| mul(COEFFICIENT, v)))
        .collect::<Result<Vec<_>>>()?;
    if spec.noise_beta > 0.0 {
        let mut rng = SplitMix64::new(spec.seed);
        for y in ys.iter_mut() {
            y.0 += rng.next_symmetric(spec.noise_beta);
            y.1 += rng.next_symmetric(spec.noise_beta);
        }
    }
    let split = |v: &[(f64, f64)]| -> Result<ComplexSampleSet> {
        let re: Vec<f64> = v.iter().map(|c| c.0).collect();
        let im: Vec<f64> = v.iter().map(|c| c.1).collect();
        ComplexSampleSet::new(SampleSet::from_column(&re)?, SampleSet::from_column(&im)?)
    };
    Ok((split(&xs)?, split(&ys)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 0 (reference implementation by Vigna).
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn noise_basics() {
        assert!(uniform_noise(5, 100, 0.0).iter().all(|&v| v == 0.0));
        assert_eq!(uniform_noise(9, 50, 0.3), uniform_noise(9, 50, 0.3));
        assert!(uniform_noise(9, 1000, 0.3).iter().all(|v| v.abs() <= 0.3));
    }

    #[test]
    fn noise_mean_is_near_zero() {
        let beta = 0.2;
        let count = 100_000;
        let v = uniform_noise(2024, count, beta);
        let mean = v.iter().sum::<f64>() / count as f64;
        // sd of U[-b, b] is b / sqrt(3)
        let bound = 3.0 * beta / libm::sqrt(3.0 * count as f64);
        assert!(mean.abs() <= bound, "mean {mean} bound {bound}");
    }

    #[test]
    fn line_is_equispaced() {
        let (x, y) = generate_real(&ToySpec::new(ToyName::Line).with_n(3)).unwrap();
        assert_eq!(x.as_slice(), &[0.0, 0.5, 1.0]);
        assert_eq!(y.as_slice(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn x_shape_branches() {
        let (x, y) = generate_real(&ToySpec::new(ToyName::XShape)).unwrap();
        assert_eq!(x.len(), 2000);
        assert_eq!((x.row(1000)[0], y.row(1000)[0]), (0.0, 1.0));
        assert_eq!((x.row(999)[0], y.row(999)[0]), (1.0, 1.0));
        assert!(generate_real(&ToySpec::new(ToyName::XShape).with_n(7)).is_err());
    }

    #[test]
    fn circle_is_on_the_unit_circle() {
        let (x, y) = generate_real(&ToySpec::new(ToyName::Circle)).unwrap();
        for (a, b) in x.as_slice().iter().zip(y.as_slice()) {
            assert_abs_diff_eq!(a * a + b * b, 1.0, epsilon = 1e-12);
        }
        assert!(y.as_slice()[..1000].iter().all(|&v| v >= 0.0));
        assert!(y.as_slice()[1000..].iter().all(|&v| v <= 0.0));
    }

    #[test]
    fn paraboloid_grid() {
        let (xy, z) = generate_real(&ToySpec::new(ToyName::Paraboloid)).unwrap();
        assert_eq!((xy.len(), xy.dim(), z.dim()), (900, 2, 1));
        let zs = z.as_slice();
        assert!(zs.iter().all(|&v| (0.0..=2.0).contains(&v)));
        assert_eq!(zs.iter().copied().fold(0.0, f64::max), 2.0);
        assert!(generate_real(&ToySpec::new(ToyName::Paraboloid).with_n(899)).is_err());
    }

    #[test]
    fn noise_goes_to_y_only() {
        let clean = generate_real(&ToySpec::new(ToyName::LinePlusSine)).unwrap();
        let spec = ToySpec::new(ToyName::LinePlusSine).with_noise(0.4, 3);
        let noisy = generate_real(&spec).unwrap();
        assert_eq!(clean.0, noisy.0);
        assert_ne!(clean.1, noisy.1);
        for (a, b) in clean.1.as_slice().iter().zip(noisy.1.as_slice()) {
            assert!((a - b).abs() <= 0.4);
        }
        assert_eq!(noisy, generate_real(&spec).unwrap());
    }

    #[test]
    fn random_dots_are_in_the_unit_square() {
        let (x, y) = generate_real(&ToySpec::new(ToyName::RandomDots).with_noise(0.0, 11)).unwrap();
        assert!(x
            .as_slice()
            .iter()
            .chain(y.as_slice())
            .all(|v| (0.0..1.0).contains(v)));
    }

    #[test]
    fn kinds_must_match() {
        assert!(generate_real(&ToySpec::new(ToyName::CxLinear)).is_err());
        assert!(generate_complex(&ToySpec::new(ToyName::Line)).is_err());
        assert!(generate_real(&ToySpec::new(ToyName::Line).with_noise(-1.0, 0)).is_err());
    }

    #[test]
    fn complex_grid() {
        let (x, _) = generate_complex(&ToySpec::new(ToyName::CxLinear)).unwrap();
        assert_eq!(x.len(), 900);
        let mut pts: Vec<(u64, u64)> = x
            .re()
            .as_slice()
            .iter()
            .zip(x.im().as_slice())
            .map(|(a, b)| {
                assert!(libm::hypot(*a, *b) > 0.0);
                (a.to_bits(), b.to_bits())
            })
            .collect();
        pts.sort_unstable();
        pts.dedup();
        assert_eq!(pts.len(), 900);
    }

    #[test]
    fn linear_at_one() {
        let (x, y) = generate_complex(&ToySpec::new(ToyName::CxLinear)).unwrap();
        let k = (0..900)
            .find(|&k| x.re().row(k)[0] == 1.0 && x.im().row(k)[0] == -1.0)
            .unwrap();
        // a * (1 - i) = 0.5 - 0.5i - i - 1 = -0.5 - 1.5i
        assert_abs_diff_eq!(y.re().row(k)[0], -0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(y.im().row(k)[0], -1.5, epsilon = 1e-15);
        assert_eq!(mul(COEFFICIENT, (1.0, 0.0)), (0.5, -1.0));
    }

    #[test]
    fn quadratic_at_i() {
        let sq = mul((0.0, 1.0), (0.0, 1.0));
        assert_eq!(sq, (-1.0, 0.0));
        assert_eq!(mul(COEFFICIENT, sq), (-0.5, 1.0));
    }

    #[test]
    fn sqrt_follows_the_sign_of_im() {
        let (x, _) = generate_complex(&ToySpec::new(ToyName::CxSqrt)).unwrap();
        for (a, b) in x.re().as_slice().iter().zip(x.im().as_slice()) {
            let (sr, si) = principal_sqrt(*a, *b);
            assert_eq!(si < 0.0, *b < 0.0);
            assert!(sr >= 0.0);
            let back = mul((sr, si), (sr, si));
            assert_abs_diff_eq!(back.0, *a, epsilon = 1e-12);
            assert_abs_diff_eq!(back.1, *b, epsilon = 1e-12);
        }
        assert_eq!(principal_sqrt(-4.0, 0.0), (0.0, 2.0));
    }

    #[test]
    fn principal_log_inverts_exp() {
        let (x, _) = generate_complex(&ToySpec::new(ToyName::CxLog)).unwrap();
        for (a, b) in x.re().as_slice().iter().zip(x.im().as_slice()) {
            let (lr, li) = complex_log(*a, *b, LogForm::Principal);
            let m = libm::exp(lr);
            assert_abs_diff_eq!(m * libm::cos(li), *a, epsilon = 1e-12);
            assert_abs_diff_eq!(m * libm::sin(li), *b, epsilon = 1e-12);
        }
    }

    #[test]
    fn log_forms_agree_in_the_right_half_plane() {
        let p = complex_log(0.3, -0.7, LogForm::Principal);
        let a = complex_log(0.3, -0.7, LogForm::Arctan);
        assert_abs_diff_eq!(p.0, a.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.1, a.1, epsilon = 1e-15);
        let l = complex_log(-0.3, -0.7, LogForm::Paper);
        assert_eq!(l.1, 0.0);
    }

    #[test]
    fn names_round_trip() {
        for t in ToyName::REAL.into_iter().chain(ToyName::COMPLEX) {
            assert_eq!(ToyName::parse(t.as_str()), Some(t));
        }
        for f in LogForm::ALL {
            assert_eq!(LogForm::parse(f.as_str()), Some(f));
        }
    }
}
