//! Instance files, result JSON and convergence-trace CSV.
//!
//! Text instance format: a header line `name N`, then `N` lines of
//! `radius mass`. Blank lines and lines starting with `#` are ignored.
//! Numbers are written with Rust's shortest round-trip formatting, so
//! write/parse is lossless. A JSON document (`{"name":..,"circles":[..]}`)
//! is accepted as well.

use std::fmt::Write as _;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::geometry::Point2;
use crate::model::{Circle, Hyperparameters, IterationRecord, ProblemInstance, SolveResult};
use crate::solver::{convergence_milestones, Milestone, MILESTONE_FRACTIONS};
use crate::{Error, Result};

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses either format, picking JSON when the first non-blank byte is `{`.
pub fn parse_instance(bytes: &[u8]) -> Result<ProblemInstance> {
    let text = std::str::from_utf8(bytes).map_err(|e| parse_err(0, format!("not UTF-8: {e}")))?;
    if text.trim_start().starts_with('{') {
        parse_instance_json(text)
    } else {
        parse_instance_text(text)
    }
}

pub fn parse_instance_json(text: &str) -> Result<ProblemInstance> {
    serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
}

pub fn parse_instance_text(text: &str) -> Result<ProblemInstance> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines.next().ok_or_else(|| parse_err(0, "missing header `name N`"))?;
    let mut head = header.split_whitespace();
    let name = head.next().ok_or_else(|| parse_err(header_line, "missing instance name"))?;
    let count: usize = head
        .next()
        .ok_or_else(|| parse_err(header_line, "missing circle count"))?
        .parse()
        .map_err(|e| parse_err(header_line, format!("circle count: {e}")))?;
    if head.next().is_some() {
        return Err(parse_err(header_line, "header must be `name N`"));
    }
    if count == 0 {
        return Err(parse_err(header_line, "empty instance"));
    }

    let mut circles = Vec::with_capacity(count);
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        if circles.len() == count {
            return Err(parse_err(line, format!("more than the {count} declared circles")));
        }
        let mut fields = content.split_whitespace();
        let mut field = |what: &str| -> Result<f64> {
            let raw = fields.next().ok_or_else(|| parse_err(line, format!("missing {what}")))?;
            let v: f64 = raw.parse().map_err(|e| parse_err(line, format!("{what} `{raw}`: {e}")))?;
            if !v.is_finite() || v <= 0.0 {
                return Err(parse_err(line, format!("{what} must be positive and finite, got {raw}")));
            }
            Ok(v)
        };
        let radius = field("radius")?;
        let mass = field("mass")?;
        if fields.next().is_some() {
            return Err(parse_err(line, "expected `radius mass`"));
        }
        circles.push(Circle::new(radius, mass));
    }
    if circles.len() != count {
        return Err(parse_err(
            last_line,
            format!("declared {count} circles, found {}", circles.len()),
        ));
    }
    ProblemInstance::new(name, circles).map_err(|e| parse_err(header_line, e.to_string()))
}

pub fn write_instance(instance: &ProblemInstance) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", instance.name(), instance.len());
    for c in instance.circles() {
        let _ = writeln!(out, "{} {}", c.radius, c.mass);
    }
    out
}

pub fn write_instance_json(instance: &ProblemInstance) -> Result<String> {
    Ok(serde_json::to_string_pretty(instance)?)
}

/// Serialized outcome of one solver run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultFile {
    pub instance: String,
    pub seed: u64,
    pub feasible: bool,
    pub best_radius: Option<f64>,
    pub best_iteration: Option<usize>,
    pub reference_radius: Option<f64>,
    pub radii: Vec<f64>,
    pub masses: Vec<f64>,
    /// Circle centers with the center of gravity at the origin.
    pub positions: Vec<Point2>,
    pub milestones: Vec<Milestone>,
    pub hyperparameters: Hyperparameters,
}

impl ResultFile {
    pub fn new(instance: &ProblemInstance, hp: &Hyperparameters, result: &SolveResult) -> Self {
        let milestones = match &result.best {
            Some(best) => convergence_milestones(&result.history, best.radius, &MILESTONE_FRACTIONS)
                .unwrap_or_default(),
            None => Vec::new(),
        };
        Self {
            instance: instance.name().to_string(),
            seed: hp.seed,
            feasible: result.feasible(),
            best_radius: result.best_radius(),
            best_iteration: result.best_iteration(),
            reference_radius: crate::corpus::reference_radius(instance.name()),
            radii: instance.radii().to_vec(),
            masses: instance.masses().to_vec(),
            positions: result.best_positions().map(<[_]>::to_vec).unwrap_or_default(),
            milestones,
            hyperparameters: hp.clone(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: ResultFile = serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))?;
        let n = file.radii.len();
        if file.masses.len() != n || (file.feasible && file.positions.len() != n) {
            return Err(parse_err(0, "positions, radii and masses must have equal length"));
        }
        Ok(file)
    }

    pub fn instance(&self) -> Result<ProblemInstance> {
        ProblemInstance::from_lists(self.instance.clone(), &self.radii, &self.masses)
    }
}

#[derive(Serialize)]
struct TraceRow {
    iteration: usize,
    target_radius: f64,
    actual_radius: Option<f64>,
    overlap: f64,
    cg_violation: f64,
    feasible: bool,
}

/// Writes the convergence trace; `actual_radius` is empty on infeasible rows.
pub fn write_trace_csv<W: Write>(history: &[IterationRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in history {
        w.serialize(TraceRow {
            iteration: r.iteration,
            target_radius: r.target_radius,
            actual_radius: r.actual_radius,
            overlap: r.overlap,
            cg_violation: r.cg_violation,
            feasible: r.feasible,
        })?;
    }
    w.flush()?;
    Ok(())
}
