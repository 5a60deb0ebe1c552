//! Command-line front end for `shortcut-core`: reads a network as JSON,
//! runs a solver or an oracle and prints the result as JSON.

pub mod document;
pub mod svg;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use shortcut_core::cycle::{check_corollary_3_14, optimal_pair_with, BalanceSolver};
use shortcut_core::oracle::{approx_diameter, grid_search_cycle_pair, grid_search_path};
use shortcut_core::path::{candidate_lengths, optimal_path_shortcut, PathCandidate};
use shortcut_core::{
    plain_diameter, CycleNetwork, Error, Network, PathNetwork, Point,
};

use document::{
    to_json, CycleSolutionDocument, DiameterDocument, Kind, NetworkDocument,
    PathSolutionDocument, PositionDocument,
};
use svg::{Marker, Scene};

/// An error with the process exit code it maps to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn malformed(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn wrong_kind(expected: Kind, got: Kind) -> Self {
        CliError {
            code: 3,
            message: format!("expected a {expected}, got a {got}"),
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidNetwork(_) => 2,
            Error::NotConvex => 4,
            Error::Degenerate => 5,
            Error::BudgetExceeded { .. } => 6,
            _ => 1,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "shortcut", version, about = "Diameter-minimizing shortcuts for polygonal paths and cycles")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,

    /// Grid resolution for oracle searches.
    #[arg(long, global = true)]
    pub grid: Option<usize>,

    /// Sample spacing for oracle diameters.
    #[arg(long, global = true)]
    pub spacing: Option<f64>,

    /// Residual tolerance of the cycle solver, relative to the cycle length.
    #[arg(long, global = true, default_value_t = 1e-7)]
    pub tolerance: f64,

    /// Write an SVG rendering to this file.
    #[arg(long, global = true)]
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Continuous diameter of a path or cycle.
    Diameter { input: PathBuf },
    /// Optimal single shortcut for a path.
    PathShortcut { input: PathBuf },
    /// Optimal pair of shortcuts for a convex cycle.
    CyclePair { input: PathBuf },
    /// Brute-force check of a solver.
    Oracle {
        #[arg(value_enum)]
        target: OracleTarget,
        input: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleTarget {
    Path,
    Cycle,
    Diameter,
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub json: Value,
    pub warnings: Vec<String>,
    pub svg: Option<String>,
}

impl Report {
    fn json(json: Value) -> Self {
        Report {
            json,
            warnings: Vec::new(),
            svg: None,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<NetworkDocument, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })?;
    NetworkDocument::parse(&text)
}

fn path_of(doc: &NetworkDocument) -> Result<PathNetwork, CliError> {
    if doc.kind != Kind::Path {
        return Err(CliError::wrong_kind(Kind::Path, doc.kind));
    }
    Ok(PathNetwork::new(doc.points())?)
}

fn cycle_of(doc: &NetworkDocument) -> Result<CycleNetwork, CliError> {
    if doc.kind != Kind::Cycle {
        return Err(CliError::wrong_kind(Kind::Cycle, doc.kind));
    }
    Ok(CycleNetwork::new(doc.points())?)
}

/// Runs one command without touching stdout, stderr or the SVG file.
pub fn run(args: &Args) -> Result<Report, CliError> {
    match &args.command {
        Command::Diameter { input } => diameter(&read_input(input)?),
        Command::PathShortcut { input } => path_shortcut(&read_input(input)?, args.tolerance),
        Command::CyclePair { input } => cycle_pair(&read_input(input)?, args.tolerance),
        Command::Oracle { target, input } => {
            let doc = read_input(input)?;
            match target {
                OracleTarget::Path => oracle_path(&doc, args.grid.unwrap_or(400)),
                OracleTarget::Cycle => oracle_cycle(&doc, args.grid.unwrap_or(40), args.spacing, args.tolerance),
                OracleTarget::Diameter => oracle_diameter(&doc, args.spacing),
            }
        }
    }
}

pub fn diameter(doc: &NetworkDocument) -> Result<Report, CliError> {
    let diameter = match doc.kind {
        Kind::Path => plain_diameter(&PathNetwork::new(doc.points())?),
        Kind::Cycle => plain_diameter(&CycleNetwork::new(doc.points())?),
    };
    Ok(Report::json(to_json(&DiameterDocument {
        kind: doc.kind,
        input: doc.clone(),
        diameter,
    })))
}

pub fn path_shortcut(doc: &NetworkDocument, tolerance: f64) -> Result<Report, CliError> {
    let path = path_of(doc)?;
    let sol = optimal_path_shortcut(&path);
    let out = PathSolutionDocument {
        kind: Kind::Path,
        input: doc.clone(),
        x_star: sol.x_star,
        p: PositionDocument::new(&path, sol.p),
        q: PositionDocument::new(&path, sol.q),
        shortcut_length: sol.shortcut_length,
        diameter: sol.diameter,
        improvement: sol.improvement,
        budget_bound: sol.budget_bound,
    };
    let mut warnings = Vec::new();
    let (p, q) = (path.point_at_arc(sol.x_star), path.point_at_arc(path.total_length() - sol.x_star));
    let mut scene = Scene {
        vertices: path.vertices().to_vec(),
        closed: false,
        ..Scene::default()
    };
    if sol.improvement <= tolerance * path.total_length() {
        warnings.push("no shortcut decreases the diameter of this path".to_string());
        scene.markers.push(witness(path.point_at_arc(0.0), "s"));
        scene.markers.push(witness(path.point_at_arc(path.total_length()), "e"));
    } else {
        scene.shortcuts.push((p, q));
        scene.markers.push(balanced(p, "p"));
        scene.markers.push(balanced(q, "q"));
        scene.markers.extend(path_witnesses(&path, &sol, tolerance));
    }
    Ok(Report {
        json: to_json(&out),
        warnings,
        svg: Some(svg::render(&scene)),
    })
}

fn witness(at: Point, label: &str) -> Marker {
    Marker {
        at,
        class: "witness",
        label: label.to_string(),
    }
}

fn balanced(at: Point, label: &str) -> Marker {
    Marker {
        at,
        class: "balanced",
        label: label.to_string(),
    }
}

/// Endpoints of the candidate paths that attain the diameter.
fn path_witnesses(
    path: &PathNetwork,
    sol: &shortcut_core::path::PathShortcutSolution,
    tolerance: f64,
) -> Vec<Marker> {
    let Ok(lengths) = candidate_lengths(path, sol.p, sol.q) else {
        return Vec::new();
    };
    let total = path.total_length();
    let (tp, tq) = (sol.x_star, total - sol.x_star);
    // the point of the created cycle farthest from p lies on the path,
    // half the cycle length away from p
    let half_cycle = (lengths.shortcut_length + (tq - tp)) / 2.0;
    let mut out = Vec::new();
    for cand in lengths.dominant(tolerance * total) {
        match cand {
            PathCandidate::Through => {
                out.push(witness(path.point_at_arc(0.0), "s"));
                out.push(witness(path.point_at_arc(total), "e"));
            }
            PathCandidate::FromStart => {
                out.push(witness(path.point_at_arc(0.0), "s"));
                out.push(witness(path.point_at_arc(tp + half_cycle), "farthest from s"));
            }
            PathCandidate::FromEnd => {
                out.push(witness(path.point_at_arc(total), "e"));
                out.push(witness(path.point_at_arc(tq - half_cycle), "farthest from e"));
            }
        }
    }
    out
}

pub fn cycle_pair(doc: &NetworkDocument, tolerance: f64) -> Result<Report, CliError> {
    let cycle = cycle_of(doc)?;
    let solver = BalanceSolver {
        tolerance,
        ..BalanceSolver::default()
    };
    let sol = optimal_pair_with(&cycle, &solver)?;
    let pair = sol.config.pair;
    let arcs = pair.arcs;
    let out = CycleSolutionDocument {
        kind: Kind::Cycle,
        input: doc.clone(),
        p: PositionDocument::new(&cycle, pair.p),
        r: PositionDocument::new(&cycle, pair.r),
        q: PositionDocument::new(&cycle, pair.q),
        s: PositionDocument::new(&cycle, pair.s),
        a: arcs.a,
        b: arcs.b,
        c: arcs.c,
        d: arcs.d,
        len_pq: arcs.len_pq,
        len_rs: arcs.len_rs,
        diameter: sol.diameter,
        improvement: sol.improvement,
        balance_residuals: sol.config.residuals,
        corollary_3_14_residuals: check_corollary_3_14(&arcs),
        stages: sol.stages,
    };
    let at = |pos| cycle.point_at(pos).map_err(CliError::from);
    let (p, r, q, s) = (at(pair.p)?, at(pair.r)?, at(pair.q)?, at(pair.s)?);
    let scene = Scene {
        vertices: cycle.vertices().to_vec(),
        closed: true,
        shortcuts: vec![(p, q), (r, s)],
        markers: vec![
            witness(p, "p"),
            witness(r, "r"),
            witness(q, "q"),
            witness(s, "s"),
        ],
    };
    Ok(Report {
        json: to_json(&out),
        warnings: Vec::new(),
        svg: Some(svg::render(&scene)),
    })
}

fn agreement(solver: f64, oracle: f64, bound: f64) -> (bool, String) {
    let gap = (solver - oracle).abs();
    let ok = gap <= bound;
    let line = format!(
        "solver {solver:.9} oracle {oracle:.9} difference {gap:.3e} bound {bound:.3e}: {}",
        if ok { "agree" } else { "DISAGREE" }
    );
    (ok, line)
}

pub fn oracle_path(doc: &NetworkDocument, grid: usize) -> Result<Report, CliError> {
    let path = path_of(doc)?;
    let best = grid_search_path(&path, grid)?;
    let sol = optimal_path_shortcut(&path);
    let (ok, line) = agreement(sol.diameter, best.diameter, best.error_bound);
    let json = json!({
        "kind": "path",
        "grid": grid,
        "oracle_diameter": best.diameter,
        "oracle_p": PositionDocument::new(&path, best.p),
        "oracle_q": PositionDocument::new(&path, best.q),
        "solver_diameter": sol.diameter,
        "error_bound": best.error_bound,
        "agrees": ok,
    });
    Ok(Report {
        json: to_json(&json),
        warnings: vec![line],
        svg: None,
    })
}

pub fn oracle_cycle(
    doc: &NetworkDocument,
    grid: usize,
    spacing: Option<f64>,
    tolerance: f64,
) -> Result<Report, CliError> {
    let cycle = cycle_of(doc)?;
    let h = spacing.unwrap_or(cycle.total_length() / 800.0);
    let best = grid_search_cycle_pair(&cycle, grid, h)?;
    let solver = BalanceSolver {
        tolerance,
        ..BalanceSolver::default()
    };
    let mut json = json!({
        "kind": "cycle",
        "grid": grid,
        "spacing": h,
        "oracle_diameter": best.diameter,
        "oracle_arcs": best.arcs,
        "error_bound": best.error_bound,
    });
    let mut warnings = Vec::new();
    match optimal_pair_with(&cycle, &solver) {
        Ok(sol) => {
            let (ok, line) = agreement(sol.diameter, best.diameter, best.error_bound);
            json["solver_diameter"] = json!(sol.diameter);
            json["agrees"] = json!(ok);
            warnings.push(line);
        }
        Err(e @ (Error::NotConvex | Error::Degenerate)) => {
            warnings.push(format!("solver not run: {e}"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(Report {
        json: to_json(&json),
        warnings,
        svg: None,
    })
}

pub fn oracle_diameter(doc: &NetworkDocument, spacing: Option<f64>) -> Result<Report, CliError> {
    let (approx, plain, h) = match doc.kind {
        Kind::Path => {
            let net = PathNetwork::new(doc.points())?;
            let h = spacing.unwrap_or(net.total_length() / 1000.0);
            (approx_diameter(&net, &[], h)?, plain_diameter(&net), h)
        }
        Kind::Cycle => {
            let net = CycleNetwork::new(doc.points())?;
            let h = spacing.unwrap_or(net.total_length() / 1000.0);
            (approx_diameter(&net, &[], h)?, plain_diameter(&net), h)
        }
    };
    let bound = 2.0 * h;
    let (ok, line) = agreement(plain, approx, bound);
    let json = json!({
        "kind": doc.kind,
        "spacing": h,
        "oracle_diameter": approx,
        "diameter": plain,
        "error_bound": bound,
        "agrees": ok,
    });
    Ok(Report {
        json: to_json(&json),
        warnings: vec![line],
        svg: None,
    })
}
