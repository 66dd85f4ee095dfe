//! Run configuration, optionally read from a TOML file:
//!
//! ```toml
//! signature = "n,1"
//! v = ["0.37", "0.61+0.29i"]
//! seed = 7
//! format = "json"
//!
//! [tolerance]
//! residual = 1e-9
//!
//! [truncation]
//! w = 8
//! ```

use std::ops::Range;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Deserialize;
use toml::Spanned;

use crate::error::{Error, Result};
use crate::pimenov::{parse_complex, ParameterSignature};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Format> {
        match s {
            "json" => Ok(Format::Json),
            "table" => Ok(Format::Table),
            "csv" => Ok(Format::Csv),
            _ => Err(Error::Config { line: 0, field: "format".into(), msg: format!("unknown format `{s}` (json, table, csv)") }),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Coefficients at or below this are dropped in normal forms.
    pub coefficient: f64,
    /// Largest residual a passing check may have.
    pub residual: f64,
    /// Relative pivot threshold of the echelon step.
    pub pivot: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { coefficient: 1e-13, residual: 1e-9, pivot: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub signature: ParameterSignature,
    pub v: Vec<Complex64>,
    pub seed: u64,
    pub tolerances: Tolerances,
    pub trunc_w: usize,
    pub trunc_x: usize,
    pub format: Format,
    /// Adds wall-clock times to reports, which makes output nondeterministic.
    pub timing: bool,
}

pub const DEFAULT_SEED: u64 = 20_240_607;

pub fn default_v() -> Vec<Complex64> {
    vec![Complex64::new(0.37, 0.0), Complex64::new(0.61, 0.29)]
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            signature: "1,1".parse().expect("valid"),
            v: default_v(),
            seed: DEFAULT_SEED,
            tolerances: Tolerances::default(),
            trunc_w: 8,
            trunc_x: 8,
            format: Format::Json,
            timing: false,
        }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTolerances {
    coefficient: Option<Spanned<f64>>,
    residual: Option<Spanned<f64>>,
    pivot: Option<Spanned<f64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileTruncation {
    w: Option<Spanned<i64>>,
    x: Option<Spanned<i64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    signature: Option<Spanned<String>>,
    v: Option<Spanned<Vec<String>>>,
    seed: Option<Spanned<i64>>,
    format: Option<Spanned<String>>,
    timing: Option<bool>,
    tolerance: Option<FileTolerances>,
    truncation: Option<FileTruncation>,
}

fn line_of(text: &str, span: Range<usize>) -> usize {
    text[..span.start.min(text.len())].matches('\n').count() + 1
}

impl RunConfig {
    /// Reads a configuration file on top of the defaults.
    pub fn from_toml(text: &str) -> Result<RunConfig> {
        let file: FileConfig = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(0, |s| line_of(text, s));
            Error::Config { line, field: String::new(), msg: e.message().to_string() }
        })?;
        let mut cfg = RunConfig::default();
        let err = |span: Range<usize>, field: &str, msg: String| Error::Config {
            line: line_of(text, span),
            field: field.to_string(),
            msg,
        };
        if let Some(s) = file.signature {
            cfg.signature = s.get_ref().parse().map_err(|e: Error| err(s.span(), "signature", e.to_string()))?;
        }
        if let Some(v) = file.v {
            let parsed = v
                .get_ref()
                .iter()
                .map(|x| parse_complex(x))
                .collect::<Result<Vec<_>>>()
                .map_err(|e| err(v.span(), "v", e.to_string()))?;
            cfg.v = parsed;
        }
        if let Some(s) = file.seed {
            cfg.seed = u64::try_from(*s.get_ref()).map_err(|_| err(s.span(), "seed", "seed must be non-negative".into()))?;
        }
        if let Some(f) = file.format {
            cfg.format = f.get_ref().parse().map_err(|e: Error| err(f.span(), "format", e.to_string()))?;
        }
        if let Some(t) = file.timing {
            cfg.timing = t;
        }
        if let Some(t) = file.tolerance {
            for (slot, value, name) in [
                (&mut cfg.tolerances.coefficient, t.coefficient, "tolerance.coefficient"),
                (&mut cfg.tolerances.residual, t.residual, "tolerance.residual"),
                (&mut cfg.tolerances.pivot, t.pivot, "tolerance.pivot"),
            ] {
                if let Some(x) = value {
                    if !(*x.get_ref() > 0.0) {
                        return Err(err(x.span(), name, "tolerances must be positive".into()));
                    }
                    *slot = *x.get_ref();
                }
            }
        }
        if let Some(t) = file.truncation {
            for (slot, value, name) in [(&mut cfg.trunc_w, t.w, "truncation.w"), (&mut cfg.trunc_x, t.x, "truncation.x")] {
                if let Some(x) = value {
                    let d = *x.get_ref();
                    if !(1..=16).contains(&d) {
                        return Err(err(x.span(), name, format!("truncation order {d} outside 1..=16")));
                    }
                    *slot = d as usize;
                }
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, msg: &str| Err(Error::Config { line: 0, field: field.into(), msg: msg.into() });
        if self.v.is_empty() {
            return bad("v", "at least one v sample is required");
        }
        let t = &self.tolerances;
        if !(t.coefficient > 0.0 && t.residual > 0.0 && t.pivot > 0.0) {
            return bad("tolerance", "tolerances must be positive");
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_file() {
        let text = "signature = \"n,1\"\nv = [\"0.5\", \"1-2i\"]\nseed = 3\nformat = \"csv\"\n[tolerance]\nresidual = 1e-8\n[truncation]\nw = 10\n";
        let c = RunConfig::from_toml(text).unwrap();
        assert_eq!(c.signature.to_string(), "n,1");
        assert_eq!(c.v, vec![Complex64::new(0.5, 0.0), Complex64::new(1.0, -2.0)]);
        assert_eq!(c.seed, 3);
        assert_eq!(c.format, Format::Csv);
        assert_eq!(c.tolerances.residual, 1e-8);
        assert_eq!(c.trunc_w, 10);
        assert_eq!(c.trunc_x, 8);
    }

    #[test]
    fn field_error_has_line() {
        let text = "seed = 1\nsignature = \"n,q\"\n";
        match RunConfig::from_toml(text) {
            Err(Error::Config { line, field, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(field, "signature");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn syntax_error_has_line() {
        let text = "seed = 1\n\nv = [\"0.3\"\n";
        assert!(matches!(RunConfig::from_toml(text), Err(Error::Config { line: 3.., .. })));
    }

    #[test]
    fn rejects_empty_v_and_bad_tolerance() {
        assert!(RunConfig::from_toml("v = []").is_err());
        assert!(matches!(
            RunConfig::from_toml("[tolerance]\npivot = -1.0"),
            Err(Error::Config { line: 2, .. })
        ));
    }
}
