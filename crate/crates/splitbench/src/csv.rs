//! Trace persistence: one row per iteration, exact float round-trips.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use crate::BenchError;

pub const HEADER: &str = "k,r,residual,error,lyapunov,bound";

/// One iteration of a run. Optional columns are empty in the file when the
/// run had no reference solution or certificate.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub k: usize,
    pub r: f64,
    pub residual: f64,
    pub error: Option<f64>,
    pub lyapunov: Option<f64>,
    pub bound: Option<f64>,
}

fn opt_cell(v: &Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Writes records as CSV. The file appears atomically: rows go to a
/// temporary file in the target directory which is renamed over `path`
/// only after a successful flush, so readers never observe a partial
/// trace. Floats are serialized as their shortest round-trip decimal.
pub fn emit_csv(records: &[Record], path: impl AsRef<Path>) -> Result<(), BenchError> {
    let path = path.as_ref();
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut body = String::with_capacity(64 * (records.len() + 1));
    body.push_str(HEADER);
    body.push('\n');
    for r in records {
        writeln!(
            body,
            "{},{},{},{},{},{}",
            r.k,
            r.r,
            r.residual,
            opt_cell(&r.error),
            opt_cell(&r.lyapunov),
            opt_cell(&r.bound)
        )
        .expect("writing to a String cannot fail");
    }
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| BenchError::Io(e.error))?;
    Ok(())
}

fn parse_cell(path: &str, line: usize, name: &str, cell: &str) -> Result<f64, BenchError> {
    cell.parse::<f64>().map_err(|_| BenchError::Csv {
        path: path.to_string(),
        line,
        msg: format!("column '{name}': expected a number, got '{cell}'"),
    })
}

fn parse_opt_cell(
    path: &str,
    line: usize,
    name: &str,
    cell: &str,
) -> Result<Option<f64>, BenchError> {
    if cell.is_empty() {
        Ok(None)
    } else {
        parse_cell(path, line, name, cell).map(Some)
    }
}

/// Reads a trace written by [`emit_csv`] back into records.
pub fn parse_csv(path: impl AsRef<Path>) -> Result<Vec<Record>, BenchError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)?;
    let label = path.display().to_string();
    parse_csv_str(&text, &label)
}

/// Parses CSV text; `origin` labels the source in error messages.
pub fn parse_csv_str(text: &str, origin: &str) -> Result<Vec<Record>, BenchError> {
    let err = |line: usize, msg: String| BenchError::Csv {
        path: origin.to_string(),
        line,
        msg,
    };
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, first)) if first == HEADER => {}
        Some((_, first)) => {
            return Err(err(1, format!("expected header '{HEADER}', got '{first}'")))
        }
        None => return Err(err(1, format!("empty file; expected header '{HEADER}'"))),
    }
    let mut records = Vec::new();
    for (i, row) in lines {
        let line = i + 1;
        if row.is_empty() {
            continue;
        }
        let cells: Vec<&str> = row.split(',').collect();
        if cells.len() != 6 {
            return Err(err(
                line,
                format!("expected 6 comma-separated columns, got {}", cells.len()),
            ));
        }
        let k = cells[0].parse::<usize>().map_err(|_| {
            err(line, format!("column 'k': expected an integer, got '{}'", cells[0]))
        })?;
        records.push(Record {
            k,
            r: parse_cell(origin, line, "r", cells[1])?,
            residual: parse_cell(origin, line, "residual", cells[2])?,
            error: parse_opt_cell(origin, line, "error", cells[3])?,
            lyapunov: parse_opt_cell(origin, line, "lyapunov", cells[4])?,
            bound: parse_opt_cell(origin, line, "bound", cells[5])?,
        });
    }
    Ok(records)
}
