//! Column-oriented dataset emission and parsing.
//!
//! Two on-disk formats share one logical layout: named columns of equal
//! length plus a string-keyed provenance map. CSV files open with sorted
//! `# key=value` provenance lines, then a column-name row, then data rows
//! with full round-trip precision. JSON files hold the same content under
//! `"provenance"` and `"columns"` keys. Emission is byte-deterministic
//! for identical inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use crate::error::{Error, Result};

/// On-disk encoding for [`emit_dataset`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::InvalidInput(format!(
                "unknown output format {other:?}, expected \"csv\" or \"json\""
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.extension())
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Column {
    name: String,
    unit: String,
    values: Vec<f64>,
}

/// Named columns of equal length plus provenance, ready for emission.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    columns: Vec<Column>,
    provenance: BTreeMap<String, String>,
}

impl Dataset {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            columns: Vec::new(),
            provenance: BTreeMap::new(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Appends a column; every column must match the length of the first,
    /// and names must be unique. The unit string is recorded as
    /// `unit.<name>` provenance on emission (empty string for a pure
    /// number).
    pub fn push_column(
        &mut self,
        name: impl Into<String>,
        unit: impl Into<String>,
        values: Vec<f64>,
    ) -> Result<()> {
        let name = name.into();
        if self.columns.iter().any(|c| c.name == name) {
            return Err(Error::InvalidInput(format!(
                "duplicate column name {name:?}"
            )));
        }
        if let Some(first) = self.columns.first() {
            if values.len() != first.values.len() {
                return Err(Error::InvalidInput(format!(
                    "column {name:?} has {} rows, expected {}",
                    values.len(),
                    first.values.len()
                )));
            }
        }
        self.columns.push(Column {
            name,
            unit: unit.into(),
            values,
        });
        Ok(())
    }

    pub fn set_provenance(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.provenance.insert(key.into(), value.into());
    }

    pub fn provenance(&self) -> &BTreeMap<String, String> {
        &self.provenance
    }

    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.values.as_slice())
    }

    pub fn column_unit(&self, name: &str) -> Option<&str> {
        self.columns
            .iter()
            .find(|c| c.name == name)
            .map(|c| c.unit.as_str())
    }

    pub fn column_names(&self) -> Vec<&str> {
        self.columns.iter().map(|c| c.name.as_str()).collect()
    }

    pub fn n_rows(&self) -> usize {
        self.columns.first().map_or(0, |c| c.values.len())
    }

    pub fn n_columns(&self) -> usize {
        self.columns.len()
    }

    /// Full provenance map as emitted: user entries plus the reserved
    /// `dataset` name key and one `unit.<column>` key per column.
    fn merged_provenance(&self) -> Result<BTreeMap<String, String>> {
        let mut merged = self.provenance.clone();
        merged.insert("dataset".into(), self.name.clone());
        for c in &self.columns {
            merged.insert(format!("unit.{}", c.name), c.unit.clone());
        }
        for (k, v) in &merged {
            if k.contains('=') || k.contains('\n') || k.is_empty() {
                return Err(Error::InvalidInput(format!(
                    "provenance key {k:?} must be nonempty without '=' or newlines"
                )));
            }
            if v.contains('\n') {
                return Err(Error::InvalidInput(format!(
                    "provenance value for {k:?} must not contain newlines"
                )));
            }
        }
        Ok(merged)
    }
}

// 17 significant digits: enough for bit-exact f64 round trips.
fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

fn render_csv(ds: &Dataset) -> Result<String> {
    let mut out = String::new();
    for (k, v) in ds.merged_provenance()? {
        out.push_str("# ");
        out.push_str(&k);
        out.push('=');
        out.push_str(&v);
        out.push('\n');
    }
    if ds.columns.is_empty() {
        return Ok(out);
    }
    for c in &ds.columns {
        if c.name.contains(',') || c.name.contains('\n') {
            return Err(Error::InvalidInput(format!(
                "column name {:?} must not contain commas or newlines",
                c.name
            )));
        }
    }
    out.push_str(&ds.column_names().join(","));
    out.push('\n');
    for row in 0..ds.n_rows() {
        let cells: Vec<String> = ds
            .columns
            .iter()
            .map(|c| format_value(c.values[row]))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

fn render_json(ds: &Dataset) -> Result<String> {
    let mut provenance = serde_json::Map::new();
    for (k, v) in ds.merged_provenance()? {
        provenance.insert(k, serde_json::Value::String(v));
    }
    let mut columns = serde_json::Map::new();
    for c in &ds.columns {
        let values: Result<Vec<serde_json::Value>> = c
            .values
            .iter()
            .map(|&v| {
                serde_json::Number::from_f64(v)
                    .map(serde_json::Value::Number)
                    .ok_or_else(|| {
                        Error::InvalidInput(format!(
                            "column {:?} holds non-finite value {v}, not representable in JSON",
                            c.name
                        ))
                    })
            })
            .collect();
        columns.insert(c.name.clone(), serde_json::Value::Array(values?));
    }
    let root = serde_json::json!({
        "provenance": serde_json::Value::Object(provenance),
        "columns": serde_json::Value::Object(columns),
    });
    let mut text = serde_json::to_string_pretty(&root).expect("json tree is serializable");
    text.push('\n');
    Ok(text)
}

/// Writes the dataset to `path` in the requested format.
pub fn emit_dataset(ds: &Dataset, format: OutputFormat, path: &Path) -> Result<()> {
    let text = match format {
        OutputFormat::Csv => render_csv(ds)?,
        OutputFormat::Json => render_json(ds)?,
    };
    fs::write(path, text).map_err(|source| Error::FileError {
        path: path.to_path_buf(),
        source,
    })
}

fn parse_csv(text: &str) -> Result<Dataset> {
    let mut provenance = BTreeMap::new();
    let mut lines = text.lines().peekable();
    while let Some(line) = lines.peek() {
        let Some(rest) = line.strip_prefix("# ") else {
            break;
        };
        let (k, v) = rest.split_once('=').ok_or_else(|| {
            Error::InvalidInput(format!("malformed provenance line {line:?}"))
        })?;
        provenance.insert(k.to_string(), v.to_string());
        lines.next();
    }
    let name = provenance
        .remove("dataset")
        .ok_or_else(|| Error::InvalidInput("missing 'dataset' provenance key".into()))?;
    let mut units: BTreeMap<String, String> = BTreeMap::new();
    provenance.retain(|k, v| {
        if let Some(col) = k.strip_prefix("unit.") {
            units.insert(col.to_string(), v.clone());
            false
        } else {
            true
        }
    });

    let mut ds = Dataset::new(name);
    ds.provenance = provenance;
    let Some(header) = lines.next() else {
        return Ok(ds);
    };
    let names: Vec<&str> = header.split(',').collect();
    let mut columns: Vec<Vec<f64>> = vec![Vec::new(); names.len()];
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        if cells.len() != names.len() {
            return Err(Error::InvalidInput(format!(
                "row has {} cells, expected {}: {line:?}",
                cells.len(),
                names.len()
            )));
        }
        for (col, cell) in columns.iter_mut().zip(&cells) {
            let v: f64 = cell.parse().map_err(|_| {
                Error::InvalidInput(format!("unparseable numeric cell {cell:?}"))
            })?;
            col.push(v);
        }
    }
    for (name, values) in names.iter().zip(columns) {
        let unit = units.remove(*name).unwrap_or_default();
        ds.push_column(*name, unit, values)?;
    }
    Ok(ds)
}

fn parse_json(text: &str) -> Result<Dataset> {
    let root: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| Error::InvalidInput(format!("malformed JSON dataset: {e}")))?;
    let provenance = root
        .get("provenance")
        .and_then(|v| v.as_object())
        .ok_or_else(|| Error::InvalidInput("missing 'provenance' object".into()))?;
    let columns = root
        .get("columns")
        .and_then(|v| v.as_object())
        .ok_or_else(|| Error::InvalidInput("missing 'columns' object".into()))?;

    let mut prov: BTreeMap<String, String> = BTreeMap::new();
    for (k, v) in provenance {
        let s = v
            .as_str()
            .ok_or_else(|| Error::InvalidInput(format!("provenance {k:?} is not a string")))?;
        prov.insert(k.clone(), s.to_string());
    }
    let name = prov
        .remove("dataset")
        .ok_or_else(|| Error::InvalidInput("missing 'dataset' provenance key".into()))?;
    let mut units: BTreeMap<String, String> = BTreeMap::new();
    prov.retain(|k, v| {
        if let Some(col) = k.strip_prefix("unit.") {
            units.insert(col.to_string(), v.clone());
            false
        } else {
            true
        }
    });

    let mut ds = Dataset::new(name);
    ds.provenance = prov;
    for (cname, array) in columns {
        let values: Result<Vec<f64>> = array
            .as_array()
            .ok_or_else(|| Error::InvalidInput(format!("column {cname:?} is not an array")))?
            .iter()
            .map(|v| {
                v.as_f64().ok_or_else(|| {
                    Error::InvalidInput(format!("column {cname:?} holds a non-numeric entry"))
                })
            })
            .collect();
        let unit = units.remove(cname.as_str()).unwrap_or_default();
        ds.push_column(cname, unit, values?)?;
    }
    Ok(ds)
}

/// Reads a dataset back from disk, detecting the format from the content
/// (leading `{` means JSON, anything else CSV).
pub fn parse_dataset(path: &Path) -> Result<Dataset> {
    let text = fs::read_to_string(path).map_err(|source| Error::FileError {
        path: path.to_path_buf(),
        source,
    })?;
    if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Dataset {
        let mut ds = Dataset::new("sample");
        ds.push_column("r", "a_omega", vec![0.0, 0.1, 0.2]).unwrap();
        ds.push_column("u", "", vec![0.0, 0.5, 0.25]).unwrap();
        ds.set_provenance("gamma", "10");
        ds
    }

    #[test]
    fn csv_layout() {
        let text = render_csv(&sample()).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "# dataset=sample");
        assert_eq!(lines[1], "# gamma=10");
        assert_eq!(lines[2], "# unit.r=a_omega");
        assert_eq!(lines[3], "# unit.u=");
        assert_eq!(lines[4], "r,u");
        assert!(lines[5].starts_with("0.0000000000000000e0,"));
        assert_eq!(lines.len(), 8);
    }

    #[test]
    fn rejects_bad_columns_and_keys() {
        let mut ds = sample();
        assert!(ds.push_column("r", "", vec![1.0, 2.0, 3.0]).is_err());
        assert!(ds.push_column("w", "", vec![1.0]).is_err());
        ds.set_provenance("bad=key", "x");
        assert!(render_csv(&ds).is_err());
        let mut ds2 = sample();
        ds2.set_provenance("note", "line1\nline2");
        assert!(render_csv(&ds2).is_err());
    }

    #[test]
    fn json_rejects_non_finite() {
        let mut ds = Dataset::new("nan");
        ds.push_column("x", "", vec![f64::NAN]).unwrap();
        assert!(render_json(&ds).is_err());
    }

    #[test]
    fn empty_dataset_emits_provenance_only() {
        let mut ds = Dataset::new("empty");
        ds.set_provenance("note", "no columns");
        let text = render_csv(&ds).unwrap();
        assert_eq!(text, "# dataset=empty\n# note=no columns\n");
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!("JSON".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("yaml".parse::<OutputFormat>().is_err());
        assert_eq!(OutputFormat::Csv.to_string(), "csv");
    }

    #[test]
    fn value_formatting_round_trips() {
        for v in [
            0.0,
            1.0,
            -1.0,
            std::f64::consts::PI,
            1.234_567_890_123_456_7e-300,
            9.87e250,
            f64::MIN_POSITIVE,
        ] {
            let back: f64 = format_value(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits(), "value {v}");
        }
    }
}
