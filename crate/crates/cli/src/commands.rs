//! Argument definitions and the five subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use simcorr_core::real::modified_similarity_moments;
use simcorr_core::toy::{generate_complex, generate_real, LogForm, ToyName, ToySpec};
use simcorr_core::{
    distance_coherence, distance_correlation, evaluate_surface, maximize_correlation,
    rv_coefficient, similarity_coherence, KernelFamily, Normalization, ScaleGrid,
};

use crate::csvio::{read_csv, render_csv, write_atomic, Table};
use crate::error::{CliError, Result};
use crate::report::{Fingerprint, GridInfo, RunReport};
use crate::select::{parse_names, parse_pairs, ColumnSelector};
use crate::tables::{format_table7, format_table8, table7, table8, TableConfig};

#[derive(Debug, Parser)]
#[command(
    name = "simcorr",
    version,
    about = "Distance correlation, maximum similarity correlation and coherence"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a toy dataset as CSV.
    Gen(GenArgs),
    /// Compute one association measure on CSV columns.
    Compute(ComputeArgs),
    /// Regenerate the real-valued toy table.
    Table7(Table7Args),
    /// Regenerate the complex coherence table.
    Table8(Table8Args),
    /// Export the similarity-correlation surface over (s_x, s_y) as TSV.
    Surface(SurfaceArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Dcorr,
    Scorr,
    Rv,
    Dcoh,
    Scoh,
    ModifiedScorr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Exponential,
    Biweight,
}

impl From<KernelArg> for KernelFamily {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Exponential => KernelFamily::Exponential,
            KernelArg::Biweight => KernelFamily::Biweight,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormalizeArg {
    Median,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Record,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogFormArg {
    Principal,
    Paper,
    Arctan,
}

impl From<LogFormArg> for LogForm {
    fn from(f: LogFormArg) -> Self {
        match f {
            LogFormArg::Principal => LogForm::Principal,
            LogFormArg::Paper => LogForm::Paper,
            LogFormArg::Arctan => LogForm::Arctan,
        }
    }
}

/// `LO:HI:POINTS`.
pub fn parse_grid(s: &str) -> std::result::Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, pts] = parts[..] else {
        return Err(format!("expected LO:HI:POINTS, got '{s}'"));
    };
    let lo: f64 = lo.parse().map_err(|_| format!("bad LO '{lo}'"))?;
    let hi: f64 = hi.parse().map_err(|_| format!("bad HI '{hi}'"))?;
    let pts: usize = pts.parse().map_err(|_| format!("bad POINTS '{pts}'"))?;
    Ok((lo, hi, pts))
}

#[derive(Debug, Clone, Args)]
pub struct KernelOpts {
    /// Distance exponent of the similarity kernel.
    #[arg(long, default_value_t = 2.0)]
    pub alpha: f64,
    #[arg(long, value_enum, default_value_t = KernelArg::Exponential)]
    pub kernel: KernelArg,
    /// Coarse grid over log10 of the scales.
    #[arg(long, value_parser = parse_grid, value_name = "LO:HI:POINTS", allow_hyphen_values = true)]
    pub grid: Option<(f64, f64, usize)>,
    /// Nested refinement rounds around the coarse maximum.
    #[arg(long, value_name = "N")]
    pub refine: Option<usize>,
    /// Grid coordinates relative to the median distance^alpha, or raw.
    #[arg(long, value_enum)]
    pub normalize: Option<NormalizeArg>,
}

impl KernelOpts {
    /// Applies the explicit flags on top of `base`.
    pub fn grid_over(&self, base: ScaleGrid) -> ScaleGrid {
        let mut g = base;
        if let Some((lo, hi, pts)) = self.grid {
            g.log10_min = lo;
            g.log10_max = hi;
            g.points_per_axis = pts;
        }
        if let Some(r) = self.refine {
            g.refine_iterations = r;
        }
        if let Some(n) = self.normalize {
            g.normalization = match n {
                NormalizeArg::Median => Normalization::Median,
                NormalizeArg::None => Normalization::None,
            };
        }
        g
    }
}

#[derive(Debug, Clone, Args)]
pub struct SelectOpts {
    /// Comma-separated real columns of the x group.
    #[arg(long, value_name = "COLS")]
    pub x_cols: Option<String>,
    #[arg(long, value_name = "COLS")]
    pub y_cols: Option<String>,
    /// Comma-separated RE:IM column pairs of the complex x group.
    #[arg(long, value_name = "PAIRS")]
    pub complex_x: Option<String>,
    #[arg(long, value_name = "PAIRS")]
    pub complex_y: Option<String>,
}

impl SelectOpts {
    fn selector(&self, table: &Table, complex: bool) -> Result<ColumnSelector> {
        if complex {
            if self.x_cols.is_some() || self.y_cols.is_some() {
                return Err(CliError::selector(
                    "complex measures take --complex-x/--complex-y",
                ));
            }
            let d = ColumnSelector::default_complex();
            let (dx, dy) = d.complex_pairs.unwrap();
            let x = self
                .complex_x
                .as_deref()
                .map(parse_pairs)
                .transpose()?
                .unwrap_or(dx);
            let y = self
                .complex_y
                .as_deref()
                .map(parse_pairs)
                .transpose()?
                .unwrap_or(dy);
            Ok(ColumnSelector::complex(x, y))
        } else {
            if self.complex_x.is_some() || self.complex_y.is_some() {
                return Err(CliError::selector("real measures take --x-cols/--y-cols"));
            }
            let d = ColumnSelector::default_real(table);
            let x = self
                .x_cols
                .as_deref()
                .map(parse_names)
                .transpose()?
                .unwrap_or(d.x_columns);
            let y = self
                .y_cols
                .as_deref()
                .map(parse_names)
                .transpose()?
                .unwrap_or(d.y_columns);
            Ok(ColumnSelector::real(x, y))
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct GenArgs {
    /// line, x_shape, line_plus_sine, random_dots, circle, paraboloid,
    /// cx_linear, cx_quadratic, cx_sqrt or cx_log.
    #[arg(value_parser = parse_toy)]
    pub toy: ToyName,
    /// Sample count (defaults to the table's).
    #[arg(long)]
    pub n: Option<usize>,
    /// Half-width of the uniform noise added to y.
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = LogFormArg::Principal)]
    pub log_form: LogFormArg,
    /// Output file; stdout when absent.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

fn parse_toy(s: &str) -> std::result::Result<ToyName, String> {
    ToyName::parse(s).ok_or_else(|| format!("unknown toy '{s}'"))
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[arg(long, value_enum)]
    pub measure: MeasureArg,
    #[command(flatten)]
    pub select: SelectOpts,
    #[command(flatten)]
    pub kernel: KernelOpts,
    /// Fixed x scale for modified-scorr.
    #[arg(long)]
    pub sx: Option<f64>,
    /// Fixed y scale for modified-scorr.
    #[arg(long)]
    pub sy: Option<f64>,
    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,
    /// Also write the report here.
    #[arg(long, short)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct Table7Args {
    #[command(flatten)]
    pub kernel: KernelOpts,
    /// Seed of the noisy column.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Args)]
pub struct Table8Args {
    #[command(flatten)]
    pub kernel: KernelOpts,
    /// Logarithm variant; all variants are listed when absent.
    #[arg(long, value_enum)]
    pub log_form: Option<LogFormArg>,
}

#[derive(Debug, Clone, Args)]
pub struct SurfaceArgs {
    #[arg(long, short)]
    pub input: PathBuf,
    #[command(flatten)]
    pub select: SelectOpts,
    #[command(flatten)]
    pub kernel: KernelOpts,
    #[arg(long, short)]
    pub output: PathBuf,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::Gen(a) => gen(&a, out),
        Command::Compute(a) => {
            let report = compute(&a)?;
            let text = match a.format {
                FormatArg::Text => report.to_text(),
                FormatArg::Record => report.to_record() + "\n",
            };
            if let Some(path) = &a.output {
                write_atomic(path, text.as_bytes())?;
            }
            emit(out, &text)
        }
        Command::Table7(a) => {
            let rows = table7(&table_config(&a.kernel), a.seed)?;
            emit(out, &format_table7(&rows))
        }
        Command::Table8(a) => {
            let forms: Vec<LogForm> = match a.log_form {
                Some(f) => vec![f.into()],
                None => LogForm::ALL.to_vec(),
            };
            let rows = table8(&table_config(&a.kernel), &forms)?;
            emit(out, &format_table8(&rows))
        }
        Command::Surface(a) => surface(&a),
    }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    out.write_all(text.as_bytes())
        .map_err(|e| CliError::io("stdout", e))
}

fn table_config(k: &KernelOpts) -> TableConfig {
    TableConfig {
        alpha: k.alpha,
        family: k.kernel.into(),
        grid: k.grid_over(ScaleGrid::decades()),
    }
}

/// CSV bytes of a toy dataset.
pub fn gen_bytes(spec: &ToySpec) -> Result<Vec<u8>> {
    let (header, columns): (Vec<String>, Vec<Vec<f64>>) = if spec.name.is_complex() {
        let (x, y) = generate_complex(spec)?;
        let header = ["x_re", "x_im", "y_re", "y_im"].map(String::from).to_vec();
        let cols = vec![
            x.re().column(0),
            x.im().column(0),
            y.re().column(0),
            y.im().column(0),
        ];
        (header, cols)
    } else {
        let (x, y) = generate_real(spec)?;
        let mut header = Vec::new();
        let mut cols = Vec::new();
        for (g, set) in [("x", &x), ("y", &y)] {
            for k in 0..set.dim() {
                header.push(format!("{g}{}", k + 1));
                cols.push(set.column(k));
            }
        }
        (header, cols)
    };
    Ok(render_csv(&header, &columns))
}

fn gen(a: &GenArgs, out: &mut dyn Write) -> Result<()> {
    let spec = ToySpec::new(a.toy)
        .with_n(a.n.unwrap_or(a.toy.default_n()))
        .with_noise(a.beta, a.seed)
        .with_log_form(a.log_form.into());
    let bytes = gen_bytes(&spec)?;
    match &a.output {
        Some(path) => write_atomic(path, &bytes),
        None => out.write_all(&bytes).map_err(|e| CliError::io("stdout", e)),
    }
}

fn read_input(path: &Path) -> Result<Table> {
    read_csv(path)
}

pub fn compute(a: &ComputeArgs) -> Result<RunReport> {
    let start = Instant::now();
    let table = read_input(&a.input)?;
    let complex = matches!(a.measure, MeasureArg::Dcoh | MeasureArg::Scoh);
    let selector = a.select.selector(&table, complex)?;
    let grid = a.kernel.grid_over(ScaleGrid::default());
    let family: KernelFamily = a.kernel.kernel.into();
    let mut report = RunReport {
        measure: measure_name(a.measure).to_string(),
        value: 0.0,
        real_part: None,
        imag_part: None,
        degenerate: false,
        partition_degenerate: None,
        s_x: None,
        s_y: None,
        alpha: None,
        kernel: match family {
            KernelFamily::Exponential => "exponential",
            KernelFamily::Biweight => "biweight",
        }
        .to_string(),
        grid: None,
        evaluations: None,
        x_columns: selector.x_columns.clone(),
        y_columns: selector.y_columns.clone(),
        dataset: Fingerprint::from(&table),
        wall_time_s: 0.0,
    };
    match a.measure {
        MeasureArg::Dcorr | MeasureArg::Rv => {
            let (x, y) = selector.real_sets(&table)?;
            let est = if a.measure == MeasureArg::Dcorr {
                distance_correlation(&x, &y)?
            } else {
                rv_coefficient(&x, &y)?
            };
            report.value = est.value;
            report.degenerate = est.degenerate;
            report.alpha = est.alpha;
        }
        MeasureArg::Scorr => {
            let (x, y) = selector.real_sets(&table)?;
            let opt = maximize_correlation(&x, &y, family, a.kernel.alpha, &grid)?;
            report.value = opt.estimate.value;
            report.degenerate = opt.estimate.degenerate;
            report.s_x = opt.estimate.s_x;
            report.s_y = opt.estimate.s_y;
            report.alpha = Some(a.kernel.alpha);
            report.grid = Some(GridInfo::from(&grid));
            report.evaluations = Some(opt.evaluations);
        }
        MeasureArg::ModifiedScorr => {
            let (Some(sx), Some(sy)) = (a.sx, a.sy) else {
                return Err(CliError::usage("modified-scorr needs --sx and --sy"));
            };
            let (x, y) = selector.real_sets(&table)?;
            let m = modified_similarity_moments(&x, &y, sx, sy)?;
            report.value = m.correlation();
            report.degenerate = m.is_degenerate();
            report.s_x = Some(sx);
            report.s_y = Some(sy);
            report.alpha = Some(1.0);
            report.kernel = "exponential".to_string();
        }
        MeasureArg::Dcoh | MeasureArg::Scoh => {
            let (x, y) = selector.complex_sets(&table)?;
            let c = if a.measure == MeasureArg::Dcoh {
                report.alpha = Some(1.0);
                distance_coherence(&x, &y)?
            } else {
                report.alpha = Some(a.kernel.alpha);
                report.grid = Some(GridInfo::from(&grid));
                similarity_coherence(&x, &y, family, a.kernel.alpha, &grid)?
            };
            report.value = c.total;
            report.real_part = Some(c.real_part);
            report.imag_part = Some(c.imag_part);
            report.degenerate = c.degenerate;
            report.partition_degenerate = Some(c.partition_degenerate);
            report.s_x = c.s_x;
            report.s_y = c.s_y;
        }
    }
    report.wall_time_s = start.elapsed().as_secs_f64();
    Ok(report)
}

fn measure_name(m: MeasureArg) -> &'static str {
    match m {
        MeasureArg::Dcorr => "dcorr",
        MeasureArg::Scorr => "scorr",
        MeasureArg::Rv => "rv",
        MeasureArg::Dcoh => "dcoh",
        MeasureArg::Scoh => "scoh",
        MeasureArg::ModifiedScorr => "modified-scorr",
    }
}

/// TSV of the coarse similarity-correlation surface.
pub fn surface_bytes(a: &SurfaceArgs) -> Result<Vec<u8>> {
    let table = read_input(&a.input)?;
    let (x, y) = a.select.selector(&table, false)?.real_sets(&table)?;
    let grid = a.kernel.grid_over(ScaleGrid::default());
    let cells = evaluate_surface(&x, &y, a.kernel.kernel.into(), a.kernel.alpha, &grid)?;
    let mut s = String::from("log10_sx\tlog10_sy\tvalue\n");
    for c in cells {
        s.push_str(&format!(
            "{:?}\t{:?}\t{:?}\n",
            c.log10_sx, c.log10_sy, c.value
        ));
    }
    Ok(s.into_bytes())
}

fn surface(a: &SurfaceArgs) -> Result<()> {
    let bytes = surface_bytes(a)?;
    write_atomic(&a.output, &bytes)
}
