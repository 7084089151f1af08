//! Which CSV columns form the `x` and `y` groups.

use simcorr_core::{ComplexSampleSet, SampleSet};

use crate::csvio::Table;
use crate::error::{CliError, Result};

/// `(re, im)` column names.
pub type Pairs = Vec<(String, String)>;

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ColumnSelector {
    pub x_columns: Vec<String>,
    pub y_columns: Vec<String>,
    /// `(re, im)` column pairs per group.
    pub complex_pairs: Option<(Pairs, Pairs)>,
}

/// Splits `a,b,c` into names.
pub fn parse_names(s: &str) -> Result<Vec<String>> {
    let names: Vec<String> = s.split(',').map(|t| t.trim().to_string()).collect();
    if names.iter().any(String::is_empty) {
        return Err(CliError::selector(format!("empty column name in '{s}'")));
    }
    Ok(names)
}

/// Splits `re:im,re2:im2` into pairs.
pub fn parse_pairs(s: &str) -> Result<Pairs> {
    s.split(',')
        .map(|t| match t.trim().split_once(':') {
            Some((re, im)) if !re.is_empty() && !im.is_empty() => {
                Ok((re.to_string(), im.to_string()))
            }
            _ => Err(CliError::selector(format!("expected RE:IM, got '{t}'"))),
        })
        .collect()
}

impl ColumnSelector {
    pub fn real(x: Vec<String>, y: Vec<String>) -> Self {
        Self {
            x_columns: x,
            y_columns: y,
            complex_pairs: None,
        }
    }

    pub fn complex(x: Pairs, y: Pairs) -> Self {
        let flat =
            |v: &[(String, String)]| v.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
        Self {
            x_columns: flat(&x),
            y_columns: flat(&y),
            complex_pairs: Some((x, y)),
        }
    }

    /// Real groups from the `x*` and `y*` columns of `table`, the layout
    /// written by `gen`.
    pub fn default_real(table: &Table) -> Self {
        let pick = |p: char| {
            table
                .header
                .iter()
                .filter(|h| h.starts_with(p))
                .cloned()
                .collect()
        };
        Self::real(pick('x'), pick('y'))
    }

    /// `x_re:x_im` against `y_re:y_im`.
    pub fn default_complex() -> Self {
        let pair = |g: &str| vec![(format!("{g}_re"), format!("{g}_im"))];
        Self::complex(pair("x"), pair("y"))
    }

    pub fn validate(&self, table: &Table) -> Result<()> {
        if self.x_columns.is_empty() || self.y_columns.is_empty() {
            return Err(CliError::selector("both groups need at least one column"));
        }
        for name in self.x_columns.iter().chain(&self.y_columns) {
            if table.index_of(name).is_none() {
                return Err(CliError::selector(format!("no column named '{name}'")));
            }
        }
        for (k, name) in self.x_columns.iter().enumerate() {
            if self.x_columns[..k].contains(name) {
                return Err(CliError::selector(format!("'{name}' selected twice for x")));
            }
        }
        for (k, name) in self.y_columns.iter().enumerate() {
            if self.y_columns[..k].contains(name) {
                return Err(CliError::selector(format!("'{name}' selected twice for y")));
            }
        }
        if let Some(name) = self.x_columns.iter().find(|n| self.y_columns.contains(n)) {
            return Err(CliError::selector(format!("'{name}' is in both x and y")));
        }
        Ok(())
    }

    fn gather(table: &Table, names: &[String]) -> Result<SampleSet> {
        let cols: Vec<&[f64]> = names.iter().map(|n| table.column(n).unwrap()).collect();
        Ok(SampleSet::from_columns(&cols)?)
    }

    pub fn real_sets(&self, table: &Table) -> Result<(SampleSet, SampleSet)> {
        self.validate(table)?;
        if self.complex_pairs.is_some() {
            return Err(CliError::selector(
                "this measure needs real columns (--x-cols/--y-cols)",
            ));
        }
        Ok((
            Self::gather(table, &self.x_columns)?,
            Self::gather(table, &self.y_columns)?,
        ))
    }

    pub fn complex_sets(&self, table: &Table) -> Result<(ComplexSampleSet, ComplexSampleSet)> {
        self.validate(table)?;
        let Some((x, y)) = &self.complex_pairs else {
            return Err(CliError::selector(
                "this measure needs complex columns (--complex-x/--complex-y)",
            ));
        };
        let group = |pairs: &[(String, String)]| -> Result<ComplexSampleSet> {
            let re: Vec<String> = pairs.iter().map(|p| p.0.clone()).collect();
            let im: Vec<String> = pairs.iter().map(|p| p.1.clone()).collect();
            Ok(ComplexSampleSet::new(
                Self::gather(table, &re)?,
                Self::gather(table, &im)?,
            )?)
        };
        Ok((group(x)?, group(y)?))
    }
}
