//! JSON documents read and written by the command-line tool.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use shortcut_core::{ArcPosition, Network, Point};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Path,
    Cycle,
}

impl std::fmt::Display for Kind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Kind::Path => "path",
            Kind::Cycle => "cycle",
        })
    }
}

/// Input network: `{"kind": "path" | "cycle", "vertices": [[x, y], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NetworkDocument {
    pub kind: Kind,
    pub vertices: Vec<[f64; 2]>,
}

impl NetworkDocument {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let doc: NetworkDocument = serde_json::from_str(text).map_err(|e| {
            CliError::malformed(format!(
                "line {}, column {}: {}",
                e.line(),
                e.column(),
                e
            ))
        })?;
        doc.check()?;
        Ok(doc)
    }

    fn check(&self) -> Result<(), CliError> {
        if self.vertices.len() < 2 {
            return Err(CliError::malformed(format!(
                "field `vertices`: need at least 2 vertices, got {}",
                self.vertices.len()
            )));
        }
        if let Some(i) = self
            .vertices
            .iter()
            .position(|v| !(v[0].is_finite() && v[1].is_finite()))
        {
            return Err(CliError::malformed(format!(
                "field `vertices[{i}]`: coordinates must be finite"
            )));
        }
        Ok(())
    }

    pub fn points(&self) -> Vec<Point> {
        self.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect()
    }
}

/// A point on the network, both as arc position and as coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PositionDocument {
    pub edge: usize,
    pub lambda: f64,
    pub x: f64,
    pub y: f64,
}

impl PositionDocument {
    pub fn new<N: Network + ?Sized>(net: &N, pos: ArcPosition) -> Self {
        let pt = net.point_at(pos).unwrap_or_else(|_| net.point_at_arc(0.0));
        PositionDocument {
            edge: pos.edge,
            lambda: pos.lambda,
            x: pt.x,
            y: pt.y,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiameterDocument {
    pub kind: Kind,
    pub input: NetworkDocument,
    pub diameter: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PathSolutionDocument {
    pub kind: Kind,
    pub input: NetworkDocument,
    pub x_star: f64,
    pub p: PositionDocument,
    pub q: PositionDocument,
    pub shortcut_length: f64,
    pub diameter: f64,
    pub improvement: f64,
    pub budget_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CycleSolutionDocument {
    pub kind: Kind,
    pub input: NetworkDocument,
    pub p: PositionDocument,
    pub r: PositionDocument,
    pub q: PositionDocument,
    pub s: PositionDocument,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub len_pq: f64,
    pub len_rs: f64,
    pub diameter: f64,
    pub improvement: f64,
    pub balance_residuals: [f64; 3],
    pub corollary_3_14_residuals: [f64; 7],
    pub stages: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SolutionDocument {
    Cycle(CycleSolutionDocument),
    Path(PathSolutionDocument),
    Diameter(DiameterDocument),
}

/// Rounds to 12 significant digits.
pub fn round_float(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Applies [`round_float`] to every number in `value`.
pub fn round_numbers(value: &mut Value) {
    match value {
        Value::Number(n) => {
            if n.is_f64() {
                if let Some(x) = n.as_f64() {
                    if let Some(r) = serde_json::Number::from_f64(round_float(x)) {
                        *n = r;
                    }
                }
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_numbers),
        Value::Object(map) => map.values_mut().for_each(round_numbers),
        _ => {}
    }
}

/// Serializes with sorted keys and rounded floats.
pub fn to_json<T: Serialize>(doc: &T) -> Value {
    let mut value = serde_json::to_value(doc).expect("documents serialize");
    round_numbers(&mut value);
    value
}
