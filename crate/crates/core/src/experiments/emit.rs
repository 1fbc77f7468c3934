use super::{max_possible_depth, EstimateRecord, Metric};
use crate::error::{Error, Result};
use crate::io::fmt_f64;
use std::path::Path;

pub const CSV_HEADER: [&str; 12] = [
    "k",
    "n",
    "t",
    "trials",
    "metric",
    "mean",
    "variance",
    "stderr",
    "ci95_low",
    "ci95_high",
    "bound_value",
    "seconds",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

impl OutputFormat {
    /// `.json` paths get JSON, everything else CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some("json") => OutputFormat::Json,
            _ => OutputFormat::Csv,
        }
    }
}

pub fn format_csv(records: &[EstimateRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.k.to_string(),
            r.n.to_string(),
            r.t.to_string(),
            r.trials.to_string(),
            r.metric.name().to_string(),
            fmt_f64(r.mean),
            fmt_f64(r.variance),
            fmt_f64(r.stderr),
            fmt_f64(r.ci95_low),
            fmt_f64(r.ci95_high),
            r.bound_value.map(fmt_f64).unwrap_or_default(),
            fmt_f64(r.seconds),
        ])?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn parse_csv(text: &str) -> Result<Vec<EstimateRecord>> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rd.headers()?.iter().map(str::to_string).collect();
    if header != CSV_HEADER {
        return Err(Error::Parse {
            line: 1,
            reason: format!("unexpected header {header:?}"),
        });
    }
    let mut out = Vec::new();
    for (row, rec) in rd.records().enumerate() {
        let rec = rec?;
        let line = row + 2;
        let bad = |c: usize| Error::Parse {
            line,
            reason: format!("bad value in column {}", CSV_HEADER[c]),
        };
        let int = |c: usize| rec[c].parse::<usize>().map_err(|_| bad(c));
        let real = |c: usize| rec[c].parse::<f64>().map_err(|_| bad(c));
        let (n, t) = (int(1)?, int(2)?);
        out.push(EstimateRecord {
            k: int(0)?,
            n,
            t,
            trials: int(3)?,
            metric: rec[4].parse::<Metric>().map_err(|_| bad(4))?,
            mean: real(5)?,
            variance: real(6)?,
            stderr: real(7)?,
            ci95_low: real(8)?,
            ci95_high: real(9)?,
            bound_value: if rec[10].is_empty() {
                None
            } else {
                Some(real(10)?)
            },
            seconds: real(11)?,
            saturated: t >= max_possible_depth(n),
        });
    }
    Ok(out)
}

/// Writes records as CSV (exact column set) or as a JSON array.
pub fn emit(records: &[EstimateRecord], format: OutputFormat, path: &Path) -> Result<()> {
    let body = match format {
        OutputFormat::Csv => format_csv(records)?,
        OutputFormat::Json => serde_json::to_string_pretty(records)? + "\n",
    };
    std::fs::write(path, body).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
