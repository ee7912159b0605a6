//! Writing benchmark reports to disk.
//!
//! Every number is written with 17 significant digits so the files round-trip
//! the in-memory `f64` values exactly and runs can be compared byte for byte.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use super::MethodReport;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReportFormat {
    Csv,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::invalid(format!("unknown report format '{other}'"))),
        }
    }
}

/// Formats a float with 17 significant digits in scientific notation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Pretty JSON whose floats use [`fmt_f64`].
struct FixedDigits<'a>(PrettyFormatter<'a>);

macro_rules! delegate {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl Formatter for FixedDigits<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(fmt_f64(value).as_bytes())
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}

pub fn to_json(report: &MethodReport) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser =
        serde_json::Serializer::with_formatter(&mut buf, FixedDigits(PrettyFormatter::new()));
    report
        .serialize(&mut ser)
        .map_err(|e| Error::invalid(format!("cannot serialise report: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Keeps letters, digits, `-`, `_` and `.`; everything else becomes `_`.
fn file_stem(name: &str) -> String {
    let s: String = name
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || "-_.".contains(c) {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() || s.chars().all(|c| c == '.') {
        "report".into()
    } else {
        s
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: impl IntoIterator<Item = String>) -> String {
    let mut line = fields.into_iter().collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

fn rmse_table(report: &MethodReport) -> String {
    let methods = report.method_names();
    let mut out = csv_line(
        std::iter::once("dataset".to_string()).chain(methods.iter().map(|m| csv_field(m))),
    );
    for d in &report.datasets {
        let row = methods.iter().map(|m| {
            let score = d.scores.iter().find(|s| s.method_name == *m).unwrap();
            fmt_f64(score.mean_rmse)
        });
        out.push_str(&csv_line(std::iter::once(csv_field(&d.dataset)).chain(row)));
    }
    out
}

fn summary_table(report: &MethodReport) -> String {
    let mut out = csv_line(
        [
            "position",
            "method",
            "mean_rmse",
            "median_rmse",
            "mean_rank",
            "wins",
        ]
        .map(String::from),
    );
    for s in &report.summary {
        out.push_str(&csv_line([
            s.position.to_string(),
            csv_field(&s.method_name),
            fmt_f64(s.mean_rmse),
            fmt_f64(s.median_rmse),
            fmt_f64(s.mean_rank),
            s.wins.to_string(),
        ]));
    }
    out
}

fn boxplot_table(report: &MethodReport) -> String {
    let mut out = csv_line(["dataset", "method", "rmse", "rank"].map(String::from));
    for d in &report.datasets {
        for s in &d.scores {
            for r in &s.per_signal_rmse {
                out.push_str(&csv_line([
                    csv_field(&d.dataset),
                    csv_field(&s.method_name),
                    fmt_f64(*r),
                    s.rank_position.to_string(),
                ]));
            }
        }
    }
    out
}

fn write_file(path: PathBuf, contents: &str) -> Result<PathBuf> {
    fs::write(&path, contents).map_err(|e| Error::io(&path, e))?;
    Ok(path)
}

/// Writes the requested formats into `out_dir` (created if missing) and
/// returns the paths written, in a fixed order.
pub fn emit_report(
    report: &MethodReport,
    out_dir: &Path,
    formats: &[ReportFormat],
) -> Result<Vec<PathBuf>> {
    if report.summary.is_empty() || report.datasets.iter().any(|d| d.scores.is_empty()) {
        return Err(Error::invalid("report has no methods"));
    }
    if formats.is_empty() {
        return Err(Error::invalid("no report formats requested"));
    }
    fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    if formats.contains(&ReportFormat::Csv) {
        let rmse_name = format!("{}_rmse.csv", file_stem(&report.name));
        written.push(write_file(out_dir.join(rmse_name), &rmse_table(report))?);
        written.push(write_file(
            out_dir.join("summary.csv"),
            &summary_table(report),
        )?);
        written.push(write_file(
            out_dir.join("boxplot_long.csv"),
            &boxplot_table(report),
        )?);
    }
    if formats.contains(&ReportFormat::Json) {
        written.push(write_file(out_dir.join("report.json"), &to_json(report)?)?);
    }
    Ok(written)
}
