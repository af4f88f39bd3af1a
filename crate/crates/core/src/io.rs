//! OBJ meshes, JSON configs and certificates, CSV traces.
//!
//! The OBJ subset is `v x y z`, `f i j k` (1-based, optionally `i/t/n`) and
//! `#` comments. Positions are written with 17 significant digits.

use std::fmt::Write as _;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::mesh::{MeshError, PolyhedralDisc, Vec3};
use crate::optimize::{OptimizationTrace, OptimizerConfig};
use crate::saddle::SaddleCertificate;

/// CSV header of optimization traces.
pub const TRACE_COLUMNS: [&str; 6] = ["iter", "area", "flips", "reductions", "moves", "triangles"];

#[derive(Debug, Error)]
pub enum IoError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("topology error: {0}")]
    Topology(#[from] MeshError),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based starting columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

pub fn parse_obj(text: &str) -> Result<PolyhedralDisc, IoError> {
    let mut positions = Vec::new();
    let mut faces: Vec<([usize; 3], usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(&(col, head)) = toks.first() else {
            continue;
        };
        match head {
            "v" => {
                if toks.len() != 4 {
                    return Err(parse_error(line_no, col, "vertex needs exactly 3 coordinates"));
                }
                let mut c = [0.0; 3];
                for (k, &(tc, t)) in toks[1..].iter().enumerate() {
                    c[k] = t
                        .parse::<f64>()
                        .ok()
                        .filter(|x| x.is_finite())
                        .ok_or_else(|| parse_error(line_no, tc, format!("bad coordinate {t:?}")))?;
                }
                positions.push(Vec3::new(c[0], c[1], c[2]));
            }
            "f" => {
                if toks.len() != 4 {
                    return Err(parse_error(
                        line_no,
                        col,
                        format!("only triangles are supported, face has {} vertices", toks.len() - 1),
                    ));
                }
                let mut f = [0usize; 3];
                for (k, &(tc, t)) in toks[1..].iter().enumerate() {
                    let index = t.split('/').next().unwrap_or("");
                    let i: usize = index
                        .parse()
                        .ok()
                        .filter(|&i| i >= 1)
                        .ok_or_else(|| parse_error(line_no, tc, format!("bad vertex index {t:?}")))?;
                    f[k] = i - 1;
                }
                faces.push((f, line_no));
            }
            other => {
                return Err(parse_error(line_no, col, format!("unsupported directive {other:?}")));
            }
        }
    }
    for &(f, line_no) in &faces {
        if f.iter().any(|&i| i >= positions.len()) {
            return Err(parse_error(line_no, 1, "face references a missing vertex"));
        }
    }
    let tris: Vec<[usize; 3]> = faces.into_iter().map(|(f, _)| f).collect();
    Ok(PolyhedralDisc::from_triangles(positions, &tris)?)
}

pub fn write_obj(disc: &PolyhedralDisc) -> String {
    let mut out = String::new();
    for p in disc.positions() {
        writeln!(out, "v {:.16e} {:.16e} {:.16e}", p.x, p.y, p.z).expect("write to string");
    }
    for t in disc.complex().triangles() {
        writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1).expect("write to string");
    }
    out
}

pub fn load_obj(path: impl AsRef<Path>) -> Result<PolyhedralDisc, IoError> {
    parse_obj(&fs::read_to_string(path)?)
}

pub fn save_obj(disc: &PolyhedralDisc, path: impl AsRef<Path>) -> Result<(), IoError> {
    fs::write(path, write_obj(disc))?;
    Ok(())
}

pub fn parse_config(text: &str) -> Result<OptimizerConfig, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load_config(path: impl AsRef<Path>) -> Result<OptimizerConfig, IoError> {
    parse_config(&fs::read_to_string(path)?)
}

pub fn certificate_json(cert: &SaddleCertificate) -> String {
    serde_json::to_string_pretty(cert).expect("certificates serialize")
}

pub fn write_trace_csv<W: Write>(trace: &OptimizationTrace, w: W) -> Result<(), IoError> {
    let mut writer = csv::Writer::from_writer(w);
    for row in &trace.rows {
        writer.serialize(row)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn trace_csv(trace: &OptimizationTrace) -> String {
    let mut buf = Vec::new();
    write_trace_csv(trace, &mut buf).expect("in-memory csv");
    String::from_utf8(buf).expect("csv is utf-8")
}

/// Summary written next to a trace.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary<'a> {
    pub converged: bool,
    pub outer_iterations: usize,
    pub input_area: f64,
    pub final_area: f64,
    pub initial_triangles: usize,
    pub final_triangles: usize,
    pub flips: usize,
    pub reductions: usize,
    pub moves: usize,
    pub flip_cap_hit: bool,
    pub certificate: &'a SaddleCertificate,
}

impl<'a> RunSummary<'a> {
    pub fn new(trace: &'a OptimizationTrace) -> Self {
        RunSummary {
            converged: trace.converged,
            outer_iterations: trace.outer_iterations(),
            input_area: trace.input_area,
            final_area: trace.final_area(),
            initial_triangles: trace.rows.first().map_or(0, |r| r.triangles),
            final_triangles: trace.rows.last().map_or(0, |r| r.triangles),
            flips: trace.flips.len(),
            reductions: trace.reductions.len(),
            moves: trace.moves.len(),
            flip_cap_hit: trace.flip_cap_hit,
            certificate: &trace.certificate,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("summaries serialize")
    }
}
