//! The result record printed by `compute`.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use simcorr_core::{Normalization, ScaleGrid};

use crate::csvio::Table;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub log10_min: f64,
    pub log10_max: f64,
    pub points: usize,
    pub refine: usize,
    pub refine_tolerance: f64,
    pub normalize: String,
}

impl From<&ScaleGrid> for GridInfo {
    fn from(g: &ScaleGrid) -> Self {
        Self {
            log10_min: g.log10_min,
            log10_max: g.log10_max,
            points: g.points_per_axis,
            refine: g.refine_iterations,
            refine_tolerance: g.refine_tolerance,
            normalize: normalization_name(g.normalization).to_string(),
        }
    }
}

pub fn normalization_name(n: Normalization) -> &'static str {
    match n {
        Normalization::Median => "median",
        Normalization::None => "none",
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fingerprint {
    pub rows: usize,
    pub columns: Vec<String>,
    pub sha256: String,
}

impl From<&Table> for Fingerprint {
    fn from(t: &Table) -> Self {
        Self {
            rows: t.rows(),
            columns: t.header.clone(),
            sha256: t.sha256.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub measure: String,
    pub value: f64,
    pub real_part: Option<f64>,
    pub imag_part: Option<f64>,
    pub degenerate: bool,
    pub partition_degenerate: Option<bool>,
    pub s_x: Option<f64>,
    pub s_y: Option<f64>,
    pub alpha: Option<f64>,
    pub kernel: String,
    pub grid: Option<GridInfo>,
    pub evaluations: Option<usize>,
    pub x_columns: Vec<String>,
    pub y_columns: Vec<String>,
    pub dataset: Fingerprint,
    pub wall_time_s: f64,
}

impl RunReport {
    /// One line of JSON.
    pub fn to_record(&self) -> String {
        serde_json::to_string(self).expect("report is always serializable")
    }

    pub fn from_record(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn to_text(&self) -> String {
        let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.6e}"));
        let mut s = String::new();
        let _ = writeln!(s, "measure      {}", self.measure);
        let _ = writeln!(s, "value        {:.4}", self.value);
        if let (Some(re), Some(im)) = (self.real_part, self.imag_part) {
            let _ = writeln!(s, "real part    {re:.4}");
            let _ = writeln!(s, "imag part    {im:.4}");
        }
        let _ = writeln!(s, "degenerate   {}", self.degenerate);
        if let Some(p) = self.partition_degenerate {
            let _ = writeln!(s, "even split   {p}");
        }
        let _ = writeln!(s, "s_x          {}", opt(self.s_x));
        let _ = writeln!(s, "s_y          {}", opt(self.s_y));
        let _ = writeln!(
            s,
            "alpha        {}",
            self.alpha.map_or("-".into(), |a| a.to_string())
        );
        let _ = writeln!(s, "kernel       {}", self.kernel);
        if let Some(g) = &self.grid {
            let _ = writeln!(
                s,
                "grid         {}:{}:{} refine {} tol {} normalize {}",
                g.log10_min, g.log10_max, g.points, g.refine, g.refine_tolerance, g.normalize
            );
        }
        if let Some(e) = self.evaluations {
            let _ = writeln!(s, "evaluations  {e}");
        }
        let _ = writeln!(s, "x columns    {}", self.x_columns.join(","));
        let _ = writeln!(s, "y columns    {}", self.y_columns.join(","));
        let _ = writeln!(
            s,
            "dataset      {} rows, columns {}, sha256 {}",
            self.dataset.rows,
            self.dataset.columns.join(","),
            self.dataset.sha256
        );
        let _ = writeln!(s, "wall time    {:.3} s", self.wall_time_s);
        s
    }
}
