//! `x,value[,reference]` sample files.
//!
//! Floats are written with 17 significant digits so a write/read cycle is
//! lossless for `f64`.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub x: Vec<f64>,
    pub value: Vec<f64>,
    pub reference: Option<Vec<f64>>,
}

impl Samples {
    pub fn new(x: Vec<f64>, value: Vec<f64>) -> Self {
        Self {
            x,
            value,
            reference: None,
        }
    }

    pub fn with_reference(mut self, reference: Vec<f64>) -> Self {
        self.reference = Some(reference);
        self
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }
}

fn io_err(path: &Path, source: std::io::Error) -> CliError {
    CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_samples(path: &Path) -> Result<Samples> {
    let parse_err = |line: u64, msg: String| CliError::Parse {
        path: path.to_path_buf(),
        line,
        msg,
    };
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| match e.into_kind() {
            csv::ErrorKind::Io(io) => io_err(path, io),
            other => parse_err(1, format!("{other:?}")),
        })?;
    let header: Vec<String> = rdr
        .headers()
        .map_err(|e| parse_err(1, e.to_string()))?
        .iter()
        .map(str::to_owned)
        .collect();
    let has_ref = match header.as_slice() {
        [x, v] if x == "x" && v == "value" => false,
        [x, v, r] if x == "x" && v == "value" && r == "reference" => true,
        _ => {
            return Err(parse_err(
                1,
                format!(
                    "expected header `x,value` or `x,value,reference`, found `{}`",
                    header.join(",")
                ),
            ))
        }
    };
    let mut out = Samples::new(Vec::new(), Vec::new());
    let mut reference = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            parse_err(line, e.to_string())
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(0);
        let field = |i: usize| -> Result<f64> {
            let raw = rec.get(i).unwrap_or("");
            raw.parse::<f64>()
                .map_err(|_| parse_err(line, format!("column {} is not a number: `{raw}`", i + 1)))
        };
        out.x.push(field(0)?);
        out.value.push(field(1)?);
        if has_ref {
            reference.push(field(2)?);
        }
    }
    if out.is_empty() {
        return Err(parse_err(2, "no data rows".into()));
    }
    if has_ref {
        out.reference = Some(reference);
    }
    Ok(out)
}

pub fn write_samples(path: &Path, s: &Samples) -> Result<()> {
    let mut buf = String::new();
    match &s.reference {
        Some(r) => {
            buf.push_str("x,value,reference\n");
            for ((x, v), r) in s.x.iter().zip(&s.value).zip(r) {
                buf.push_str(&format!("{x:.16e},{v:.16e},{r:.16e}\n"));
            }
        }
        None => {
            buf.push_str("x,value\n");
            for (x, v) in s.x.iter().zip(&s.value) {
                buf.push_str(&format!("{x:.16e},{v:.16e}\n"));
            }
        }
    }
    write_text(path, &buf)
}

/// Writes a table with an arbitrary header, one `{:.16e}` float per cell.
pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<f64>]) -> Result<()> {
    let mut buf = header.join(",");
    buf.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(|v| format!("{v:.16e}")).collect();
        buf.push_str(&cells.join(","));
        buf.push('\n');
    }
    write_text(path, &buf)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    }
    let mut f = File::create(path).map_err(|e| io_err(path, e))?;
    f.write_all(text.as_bytes()).map_err(|e| io_err(path, e))
}
