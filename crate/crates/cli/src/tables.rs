//! Regeneration of the two reference toy tables.

use std::fmt::Write;

use simcorr_core::toy::{generate_complex, generate_real, LogForm, ToyName, ToySpec};
use simcorr_core::{
    distance_coherence, distance_correlation, maximize_correlation, similarity_coherence,
    CoherenceBreakdown, KernelFamily, Result, ScaleGrid,
};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table7Row {
    pub toy: ToyName,
    pub n: usize,
    pub beta: f64,
    pub rd: f64,
    pub rd_noisy: f64,
    pub rs: f64,
    pub rs_noisy: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Table8Row {
    pub toy: ToyName,
    /// Set for the logarithm row only.
    pub log_form: Option<LogForm>,
    pub distance: CoherenceBreakdown,
    pub similarity: CoherenceBreakdown,
}

/// Settings shared by both tables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableConfig {
    pub alpha: f64,
    pub family: KernelFamily,
    pub grid: ScaleGrid,
}

impl Default for TableConfig {
    fn default() -> Self {
        Self {
            alpha: 2.0,
            family: KernelFamily::Exponential,
            grid: ScaleGrid::decades(),
        }
    }
}

/// Distance and maximum similarity correlation of one toy, noiseless and
/// with the table's noise level.
pub fn table7_row(toy: ToyName, cfg: &TableConfig, seed: u64) -> Result<Table7Row> {
    let measure = |spec: ToySpec| -> Result<(f64, f64)> {
        let (x, y) = generate_real(&spec)?;
        let rd = distance_correlation(&x, &y)?.value;
        let rs = maximize_correlation(&x, &y, cfg.family, cfg.alpha, &cfg.grid)?
            .estimate
            .value;
        Ok((rd, rs))
    };
    let spec = ToySpec::new(toy);
    let beta = toy.table_noise();
    let (rd, rs) = measure(spec)?;
    let (rd_noisy, rs_noisy) = measure(spec.with_noise(beta, seed))?;
    Ok(Table7Row {
        toy,
        n: spec.n,
        beta,
        rd,
        rd_noisy,
        rs,
        rs_noisy,
    })
}

pub fn table7(cfg: &TableConfig, seed: u64) -> Result<Vec<Table7Row>> {
    ToyName::REAL
        .into_iter()
        .map(|t| table7_row(t, cfg, seed))
        .collect()
}

pub fn table8_row(toy: ToyName, log_form: LogForm, cfg: &TableConfig) -> Result<Table8Row> {
    let (x, y) = generate_complex(&ToySpec::new(toy).with_log_form(log_form))?;
    Ok(Table8Row {
        toy,
        log_form: (toy == ToyName::CxLog).then_some(log_form),
        distance: distance_coherence(&x, &y)?,
        similarity: similarity_coherence(&x, &y, cfg.family, cfg.alpha, &cfg.grid)?,
    })
}

/// The three algebraic rows, then one logarithm row per requested form.
pub fn table8(cfg: &TableConfig, log_forms: &[LogForm]) -> Result<Vec<Table8Row>> {
    let mut rows = Vec::new();
    for toy in [ToyName::CxLinear, ToyName::CxQuadratic, ToyName::CxSqrt] {
        rows.push(table8_row(toy, LogForm::default(), cfg)?);
    }
    for &form in log_forms {
        rows.push(table8_row(ToyName::CxLog, form, cfg)?);
    }
    Ok(rows)
}

pub fn format_table7(rows: &[Table7Row]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<16} {:>6} {:>8} {:>8} {:>6} {:>8} {:>8}",
        "toy", "N", "Rd", "Rd~", "beta", "Rs", "Rs~"
    );
    for r in rows {
        let _ = writeln!(
            s,
            "{:<16} {:>6} {:>8.4} {:>8.4} {:>6.1} {:>8.4} {:>8.4}",
            r.toy.as_str(),
            r.n,
            r.rd,
            r.rd_noisy,
            r.beta,
            r.rs,
            r.rs_noisy
        );
    }
    s
}

pub fn format_table8(rows: &[Table8Row]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "{:<22} {:>8} {:>8} {:>8} {:>8} {:>8} {:>8}",
        "function", "ed", "ed_re", "ed_im", "es", "es_re", "es_im"
    );
    for r in rows {
        let name = match r.log_form {
            Some(f) => format!("{} ({})", r.toy.as_str(), f.as_str()),
            None => r.toy.as_str().to_string(),
        };
        let (d, m) = (&r.distance, &r.similarity);
        let _ = writeln!(
            s,
            "{:<22} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            name, d.total, d.real_part, d.imag_part, m.total, m.real_part, m.imag_part
        );
    }
    s
}
