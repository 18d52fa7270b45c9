//! CSV and JSON files. Floats are written with 17 significant digits so that
//! every value parses back to the same `f64`.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;

use super::run::Checkpoint;
use crate::error::{Error, Result};
use crate::ode::Trajectory;
use crate::strategy::Stage;

const CHECKPOINT_HEADER: [&str; 10] = ["t", "s", "x", "l1", "l2", "b", "r", "m", "stage", "types"];

fn io(path: &Path) -> impl FnOnce(std::io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn format_err(path: &Path, message: impl std::fmt::Display) -> Error {
    Error::Format {
        path: path.to_path_buf(),
        message: message.to_string(),
    }
}

fn csv_err(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(source) => Error::Io {
                path: path.to_path_buf(),
                source,
            },
            other => format_err(path, format!("{other:?}")),
        }
    } else {
        format_err(path, e)
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn stage_name(stage: Stage) -> &'static str {
    match stage {
        Stage::Greedy => "greedy",
        Stage::Randomized => "randomized",
        Stage::Cleanup => "cleanup",
        Stage::Closing => "closing",
        Stage::Baseline => "baseline",
    }
}

fn parse_stage(s: &str) -> Option<Stage> {
    [
        Stage::Greedy,
        Stage::Randomized,
        Stage::Cleanup,
        Stage::Closing,
        Stage::Baseline,
    ]
    .into_iter()
    .find(|&st| stage_name(st) == s)
}

/// One row per checkpoint. The `types` column lists `k1:k2:c` triples
/// separated by `;`.
pub fn write_checkpoints_csv(path: &Path, checkpoints: &[Checkpoint]) -> Result<()> {
    let file = File::create(path).map_err(io(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    w.write_record(CHECKPOINT_HEADER)
        .map_err(|e| csv_err(path, e))?;
    for c in checkpoints {
        let types = c
            .types
            .iter()
            .map(|&(a, b, v)| format!("{a}:{b}:{}", num(v)))
            .collect::<Vec<_>>()
            .join(";");
        w.write_record([
            c.t.to_string(),
            num(c.s),
            num(c.x),
            num(c.l1),
            num(c.l2),
            num(c.b),
            num(c.r),
            num(c.m),
            stage_name(c.stage).to_string(),
            types,
        ])
        .map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(io(path))
}

pub fn read_checkpoints_csv(path: &Path) -> Result<Vec<Checkpoint>> {
    let file = File::open(path).map_err(io(path))?;
    let mut r = csv::Reader::from_reader(BufReader::new(file));
    let header = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.iter().ne(CHECKPOINT_HEADER) {
        return Err(format_err(path, format!("unexpected header {header:?}")));
    }
    let mut out = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let bad = |what: &str| format_err(path, format!("row {}: bad {what}", line + 1));
        let f = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(CHECKPOINT_HEADER[i]));
        let types = if rec[9].is_empty() {
            Vec::new()
        } else {
            rec[9]
                .split(';')
                .map(|item| {
                    let mut it = item.split(':');
                    let a = it.next().and_then(|v| v.parse().ok());
                    let b = it.next().and_then(|v| v.parse().ok());
                    let c = it.next().and_then(|v| v.parse().ok());
                    match (a, b, c, it.next()) {
                        (Some(a), Some(b), Some(c), None) => Ok((a, b, c)),
                        _ => Err(bad("types")),
                    }
                })
                .collect::<Result<_>>()?
        };
        out.push(Checkpoint {
            t: rec[0].parse().map_err(|_| bad("t"))?,
            s: f(1)?,
            x: f(2)?,
            l1: f(3)?,
            l2: f(4)?,
            b: f(5)?,
            r: f(6)?,
            m: f(7)?,
            stage: parse_stage(&rec[8]).ok_or_else(|| bad("stage"))?,
            types,
        });
    }
    Ok(out)
}

/// Header `s` followed by the trajectory labels; one row per sample.
pub fn write_trajectory_csv(path: &Path, trajectory: &Trajectory) -> Result<()> {
    let file = File::create(path).map_err(io(path))?;
    let mut w = csv::Writer::from_writer(BufWriter::new(file));
    let mut header = vec!["s".to_string()];
    header.extend(trajectory.labels.iter().cloned());
    w.write_record(&header).map_err(|e| csv_err(path, e))?;
    for (s, y) in &trajectory.samples {
        let row: Vec<String> = std::iter::once(*s)
            .chain(y.iter().copied())
            .map(num)
            .collect();
        w.write_record(&row).map_err(|e| csv_err(path, e))?;
    }
    w.flush().map_err(io(path))
}

/// Labels and `(s, state)` samples of a file written by
/// [`write_trajectory_csv`].
pub fn read_trajectory_csv(path: &Path) -> Result<(Vec<String>, Vec<(f64, Vec<f64>)>)> {
    let file = File::open(path).map_err(io(path))?;
    let mut r = csv::Reader::from_reader(BufReader::new(file));
    let header = r.headers().map_err(|e| csv_err(path, e))?.clone();
    if header.get(0) != Some("s") {
        return Err(format_err(path, "first column must be s"));
    }
    let labels: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    let mut samples = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| csv_err(path, e))?;
        let vals: Vec<f64> = rec
            .iter()
            .map(|v| v.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| format_err(path, format!("row {}: not a number", line + 1)))?;
        samples.push((vals[0], vals[1..].to_vec()));
    }
    Ok((labels, samples))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let file = File::create(path).map_err(io(path))?;
    let mut w = BufWriter::new(file);
    serde_json::to_writer_pretty(&mut w, value).map_err(|e| format_err(path, e))?;
    w.write_all(b"\n").map_err(io(path))?;
    w.flush().map_err(io(path))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let file = File::open(path).map_err(io(path))?;
    serde_json::from_reader(BufReader::new(file)).map_err(|e| format_err(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_checkpoint_file_has_header_only() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.csv");
        write_checkpoints_csv(&p, &[]).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text.trim_end(), CHECKPOINT_HEADER.join(","));
        assert!(read_checkpoints_csv(&p).unwrap().is_empty());
    }

    #[test]
    fn missing_directory_is_an_io_error() {
        let p = Path::new("/nonexistent-dir/x.csv");
        assert!(matches!(
            write_checkpoints_csv(p, &[]),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn garbage_is_a_format_error() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.json");
        std::fs::write(&p, "{").unwrap();
        assert!(matches!(
            read_json::<Vec<f64>>(&p),
            Err(Error::Format { .. })
        ));
    }
}
