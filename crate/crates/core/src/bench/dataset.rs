//! Loading of UCR-style datasets.
//!
//! UCR archive files hold one signal per row with the class label in the first
//! column. TSV files are tab separated with no header; CSV files are comma
//! separated, may start with a header row and may carry the label in any
//! column (or none).

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::types::{DatasetBundle, Provenance, TimeSeries};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DataFormat {
    /// Tab separated, label in column 0, no header.
    Tsv,
    /// Comma separated, optional header row, optional label column.
    Csv { label_column: Option<usize> },
}

impl DataFormat {
    /// UCR CSV convention: label in column 0.
    pub const UCR_CSV: DataFormat = DataFormat::Csv {
        label_column: Some(0),
    };

    fn name(self) -> &'static str {
        match self {
            DataFormat::Tsv => "tsv",
            DataFormat::Csv { .. } => "csv",
        }
    }

    fn delimiter(self) -> u8 {
        match self {
            DataFormat::Tsv => b'\t',
            DataFormat::Csv { .. } => b',',
        }
    }

    fn label_column(self) -> Option<usize> {
        match self {
            DataFormat::Tsv => Some(0),
            DataFormat::Csv { label_column } => label_column,
        }
    }
}

fn read_rows(path: &Path, format: DataFormat) -> Result<Vec<TimeSeries>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let label = format.label_column();
    let delimiter = format.delimiter() as char;
    let mut rows = Vec::new();
    let mut first_data_row = true;

    for (line_no, line) in text.lines().enumerate() {
        let row = line_no + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(delimiter).map(str::trim).collect();
        let mut values = Vec::with_capacity(fields.len());
        let mut failure = None;
        for (col, field) in fields.iter().enumerate() {
            if Some(col) == label {
                continue;
            }
            match field.parse::<f64>() {
                Ok(v) if v.is_finite() => values.push(v),
                Ok(_) => {
                    failure = Some((col + 1, format!("non-finite value '{field}'")));
                    break;
                }
                Err(_) => {
                    failure = Some((col + 1, format!("cannot parse '{field}' as a number")));
                    break;
                }
            }
        }
        if let Some((column, message)) = failure {
            let is_header = first_data_row && matches!(format, DataFormat::Csv { .. });
            first_data_row = false;
            if is_header {
                continue;
            }
            return Err(Error::Parse {
                path: path.to_path_buf(),
                row,
                column,
                message,
            });
        }
        first_data_row = false;
        if values.is_empty() {
            return Err(Error::Parse {
                path: path.to_path_buf(),
                row,
                column: 1,
                message: "row has no values after removing the label".into(),
            });
        }
        rows.push(TimeSeries::new(values)?);
    }
    Ok(rows)
}

/// Loads one or more files (train first, then test) into a single bundle.
/// Labels are discarded.
pub fn load_ucr_dataset(
    name: impl Into<String>,
    paths: &[&Path],
    format: DataFormat,
) -> Result<DatasetBundle> {
    let name = name.into();
    if paths.is_empty() {
        return Err(Error::invalid("no dataset files given"));
    }
    let mut signals = Vec::new();
    for path in paths {
        signals.extend(read_rows(path, format)?);
    }
    let source = paths
        .iter()
        .map(|p| p.display().to_string())
        .collect::<Vec<_>>()
        .join(";");
    DatasetBundle::new(name, signals, Provenance::new(source, format.name()))
}

/// A dataset found on disk: its train file and optional test file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatasetFiles {
    pub name: String,
    pub train: PathBuf,
    pub test: Option<PathBuf>,
    pub format: DataFormat,
}

impl DatasetFiles {
    pub fn load(&self) -> Result<DatasetBundle> {
        let mut paths: Vec<&Path> = vec![&self.train];
        if let Some(test) = &self.test {
            paths.push(test);
        }
        load_ucr_dataset(self.name.clone(), &paths, self.format)
    }
}

/// Finds `<Name>_TRAIN.tsv` / `<Name>_TRAIN.csv` files (with optional
/// `_TEST` siblings) in `dir` and its immediate subdirectories, sorted by
/// dataset name.
pub fn discover_datasets(dir: &Path) -> Result<Vec<DatasetFiles>> {
    let mut found = Vec::new();
    let mut dirs = vec![dir.to_path_buf()];
    for entry in fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let entry = entry.map_err(|e| Error::io(dir, e))?;
        if entry.path().is_dir() {
            dirs.push(entry.path());
        }
    }
    for d in dirs {
        for entry in fs::read_dir(&d).map_err(|e| Error::io(&d, e))? {
            let path = entry.map_err(|e| Error::io(&d, e))?.path();
            let Some(file) = path.file_name().and_then(|f| f.to_str()) else {
                continue;
            };
            let (stem, format, ext) = if let Some(stem) = file.strip_suffix("_TRAIN.tsv") {
                (stem, DataFormat::Tsv, "tsv")
            } else if let Some(stem) = file.strip_suffix("_TRAIN.csv") {
                (stem, DataFormat::UCR_CSV, "csv")
            } else {
                continue;
            };
            let test = path.with_file_name(format!("{stem}_TEST.{ext}"));
            found.push(DatasetFiles {
                name: stem.to_string(),
                train: path.clone(),
                test: test.is_file().then_some(test),
                format,
            });
        }
    }
    found.sort_by(|a, b| a.name.cmp(&b.name));
    found.dedup_by(|a, b| a.name == b.name);
    Ok(found)
}
