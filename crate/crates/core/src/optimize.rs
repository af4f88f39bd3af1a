//! Area minimization with a fixed boundary.
//!
//! Each outer iteration removes chordal 3-cycles, runs a flip pass until every
//! hinge angle sum is at least π, and then moves interior vertices: a vertex
//! whose edges can be cut by a plane is pushed toward that plane, any other
//! vertex takes a damped Newton step on its local area. Boundary positions are
//! never touched and the triangle count never grows.

use std::f64::consts::PI;

use nalgebra::{Matrix3, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::flip::{can_flip, flip, measure_hinge, reduce_fan, FlipError};
use crate::mesh::{heron_area, Edge, PolyhedralDisc, Vec3, EPS_DEGENERATE};
use crate::saddle::{certify_saddle, cutting_direction, star_edge_vectors, SaddleCertificate};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OptimizeError {
    #[error("disc has {triangles} triangles, budget is {budget}")]
    BudgetExceeded { triangles: usize, budget: usize },
    #[error("vertex {0} is on the boundary")]
    BoundaryVertex(usize),
    #[error("vertex {0} is saddle, no plane cuts its edges")]
    NotCuttable(usize),
    #[error("every trial step at vertex {0} degenerates a triangle")]
    DegenerationBlocked(usize),
    #[error(transparent)]
    Flip(#[from] FlipError),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct LineSearch {
    /// Initial step as a fraction of the distance to the cutting plane.
    pub step: f64,
    pub shrink: f64,
    pub max_backtracks: usize,
}

impl Default for LineSearch {
    fn default() -> Self {
        LineSearch {
            step: 0.5,
            shrink: 0.5,
            max_backtracks: 30,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OptimizerConfig {
    /// Defaults to the input triangle count.
    pub triangle_budget: Option<usize>,
    pub eps_flip: f64,
    pub eps_saddle: f64,
    /// Absolute; defaults to `1e-12 * diameter²`.
    pub eps_area: Option<f64>,
    pub max_outer_iterations: usize,
    pub line_search: LineSearch,
    /// Absolute; defaults to `1e-9 * diameter`.
    pub jitter_amplitude: Option<f64>,
    pub seed: u64,
    pub flips_enabled: bool,
    pub reductions_enabled: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        OptimizerConfig {
            triangle_budget: None,
            eps_flip: 1e-9,
            eps_saddle: crate::saddle::EPS_SADDLE,
            eps_area: None,
            max_outer_iterations: 10_000,
            line_search: LineSearch::default(),
            jitter_amplitude: None,
            seed: 0,
            flips_enabled: true,
            reductions_enabled: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlipRecord {
    pub iter: usize,
    pub edge: [usize; 2],
    pub new_edge: [usize; 2],
    pub sigma: f64,
    pub gain: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReductionRecord {
    pub iter: usize,
    pub triple: [usize; 3],
    pub removed_triangles: usize,
    pub removed_vertices: Vec<usize>,
    pub area_delta: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MoveKind {
    /// Motion along the normal of a cutting plane.
    Cut,
    /// Damped Newton step on the vertex's local area.
    Newton,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub iter: usize,
    pub vertex: usize,
    pub kind: MoveKind,
    pub displacement: f64,
    pub area_decrease: f64,
}

/// One CSV row per outer iteration; row 0 is the state after jitter.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub iter: usize,
    pub area: f64,
    pub flips: usize,
    pub reductions: usize,
    pub moves: usize,
    pub triangles: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OptimizationTrace {
    pub input_area: f64,
    pub rows: Vec<TraceRow>,
    pub flips: Vec<FlipRecord>,
    pub reductions: Vec<ReductionRecord>,
    pub moves: Vec<MoveRecord>,
    /// Cut moves that found no decrease, with whether some incident hinge had
    /// an angle sum below π at the time.
    pub stalled_cuts: Vec<(usize, usize, bool)>,
    pub flip_cap_hit: bool,
    pub converged: bool,
    pub eps_area: f64,
    pub certificate: SaddleCertificate,
}

impl OptimizationTrace {
    pub fn final_area(&self) -> f64 {
        self.rows.last().map_or(self.input_area, |r| r.area)
    }

    pub fn outer_iterations(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }
}

#[derive(Debug, Clone)]
pub struct FlipPass {
    pub disc: PolyhedralDisc,
    pub flips: Vec<FlipRecord>,
    /// Set when the `100 * E` flip cap stopped the pass.
    pub cap_hit: bool,
}

/// Flips hinges with angle sum below `π - eps_flip` until none is left.
///
/// Edges are scanned in index order and the scan restarts after every flip.
pub fn flip_pass(disc: &PolyhedralDisc, eps_flip: f64, eps_area: f64) -> FlipPass {
    let cap = 100 * disc.complex().edge_count();
    let mut current = disc.clone();
    let mut flips = Vec::new();
    'scan: while flips.len() < cap {
        let edges: Vec<Edge> = current.complex().interior_edges().collect();
        for e in edges {
            let Ok(m) = measure_hinge(&current, e) else {
                continue;
            };
            if !m.wants_flip(eps_flip) || m.gain < -eps_area || can_flip(current.complex(), e).is_err() {
                continue;
            }
            if let Ok(next) = flip(&current, e) {
                let (x, y) = m.opposite;
                flips.push(FlipRecord {
                    iter: 0,
                    edge: [e.0, e.1],
                    new_edge: [x.min(y), x.max(y)],
                    sigma: m.sigma,
                    gain: m.gain,
                });
                current = next;
                continue 'scan;
            }
        }
        return FlipPass {
            disc: current,
            flips,
            cap_hit: false,
        };
    }
    FlipPass {
        disc: current,
        flips,
        cap_hit: true,
    }
}

/// Sum of the areas of the triangles around `v`.
fn star_area(disc: &PolyhedralDisc, v: usize) -> f64 {
    disc.complex()
        .vertex_triangles(v)
        .iter()
        .map(|&t| disc.triangle_area(t))
        .sum()
}

/// Each incident triangle as `(b, c)` with `v -> b -> c` its orientation.
fn star_wedges(disc: &PolyhedralDisc, v: usize) -> Vec<(Vec3, Vec3)> {
    disc.complex()
        .vertex_triangles(v)
        .iter()
        .map(|&t| {
            let tri = disc.complex().triangle(t);
            let k = tri.iter().position(|&u| u == v).expect("incident");
            (
                disc.position(tri[(k + 1) % 3]),
                disc.position(tri[(k + 2) % 3]),
            )
        })
        .collect()
}

/// Exact gradient of the total area with respect to the position of `v`.
pub fn position_area_gradient(disc: &PolyhedralDisc, v: usize) -> Vec3 {
    let p = disc.position(v);
    star_wedges(disc, v)
        .into_iter()
        .map(|(b, c)| {
            let w = (b - p).cross(&(c - p));
            let n = w.norm();
            if n == 0.0 {
                Vec3::zeros()
            } else {
                0.5 * (b - c).cross(&(w / n))
            }
        })
        .sum()
}

fn skew(e: &Vec3) -> Matrix3<f64> {
    Matrix3::new(0.0, -e.z, e.y, e.z, 0.0, -e.x, -e.y, e.x, 0.0)
}

/// Hessian of the total area with respect to the position of `v`.
pub fn position_area_hessian(disc: &PolyhedralDisc, v: usize) -> Matrix3<f64> {
    let p = disc.position(v);
    star_wedges(disc, v)
        .into_iter()
        .map(|(b, c)| {
            let w = (b - p).cross(&(c - p));
            let n = w.norm();
            if n == 0.0 {
                return Matrix3::zeros();
            }
            let u = w / n;
            let j = skew(&(b - c));
            let proj = Matrix3::identity() - u * u.transpose();
            0.5 * j.transpose() * proj * j / n
        })
        .sum()
}

/// `∂A/∂ℓ` for every edge at `v`, holding all other edge lengths fixed.
///
/// Uses central differences of the Heron areas of the two triangles on each
/// edge, step `1e-6 * ℓ`.
pub fn edge_length_area_gradient(disc: &PolyhedralDisc, v: usize) -> Vec<(Edge, f64)> {
    let complex = disc.complex();
    let star = complex.vertex_star(v).expect("vertex exists");
    star.neighbors()
        .iter()
        .map(|&u| {
            let e = Edge::new(v, u);
            let l = disc.edge_length(v, u);
            let h = 1e-6 * l;
            let mut derivative = 0.0;
            for &t in &complex.edge(e).expect("star edge").triangles {
                let tri = complex.triangle(t);
                let w = crate::mesh::third_vertex(&tri, v, u);
                let l1 = disc.edge_length(v, w);
                let l2 = disc.edge_length(u, w);
                derivative += (heron_area(l + h, l1, l2) - heron_area(l - h, l1, l2)) / (2.0 * h);
            }
            (e, derivative)
        })
        .collect()
}

/// Result of one vertex move attempt.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepOutcome {
    pub area_decrease: f64,
    pub displacement: f64,
    /// `true` if some incident interior hinge has angle sum below π.
    pub angle_condition_fails: bool,
}

fn incident_nondegenerate(disc: &PolyhedralDisc, v: usize, threshold: f64) -> bool {
    disc.complex()
        .vertex_triangles(v)
        .iter()
        .all(|&t| 2.0 * disc.triangle_area(t) > threshold)
}

fn angle_condition_fails(disc: &PolyhedralDisc, v: usize, eps_flip: f64) -> bool {
    disc.complex()
        .neighbors(v)
        .into_iter()
        .filter_map(|u| measure_hinge(disc, Edge::new(v, u)).ok())
        .any(|m| m.sigma < PI - eps_flip)
}

/// Moves interior vertex `v` along the normal of a plane cutting all of its
/// edges, by backtracking from half the distance to that plane.
///
/// A step is accepted when it lowers the area by at least `eps_area`, keeps
/// the incident triangles nondegenerate and shortens every incident edge.
/// With no acceptable step the disc is returned unchanged with zero decrease.
pub fn vertex_descent_step(
    disc: &PolyhedralDisc,
    v: usize,
    eps_saddle: f64,
    line_search: &LineSearch,
    eps_area: f64,
) -> Result<(PolyhedralDisc, StepOutcome), OptimizeError> {
    if disc.complex().is_boundary_vertex(v) {
        return Err(OptimizeError::BoundaryVertex(v));
    }
    let edges = star_edge_vectors(disc, v);
    let verdict = cutting_direction(&edges, eps_saddle).expect("interior star is nonempty");
    let (Some(n), Some(margin)) = (verdict.normal_vec(), verdict.margin) else {
        return Err(OptimizeError::NotCuttable(v));
    };
    let shortest = edges.iter().map(|e| e.norm()).fold(f64::INFINITY, f64::min);
    let plane_distance = 0.5 * margin * shortest;
    let d = disc.diameter();
    let degenerate_below = EPS_DEGENERATE * d * d;

    let start = disc.position(v);
    let before = star_area(disc, v);
    let mut trial = disc.clone();
    let mut t = line_search.step * plane_distance;
    let mut degenerate_only = true;
    for _ in 0..=line_search.max_backtracks {
        let shift = t * n;
        let shorter = edges.iter().all(|e| (e - shift).norm() < e.norm());
        trial.set_position(v, start + shift);
        if shorter && incident_nondegenerate(&trial, v, degenerate_below) {
            degenerate_only = false;
            let decrease = before - star_area(&trial, v);
            if decrease >= eps_area {
                return Ok((
                    trial,
                    StepOutcome {
                        area_decrease: decrease,
                        displacement: t,
                        angle_condition_fails: false,
                    },
                ));
            }
        }
        t *= line_search.shrink;
    }
    if degenerate_only {
        return Err(OptimizeError::DegenerationBlocked(v));
    }
    Ok((
        disc.clone(),
        StepOutcome {
            area_decrease: 0.0,
            displacement: 0.0,
            angle_condition_fails: angle_condition_fails(disc, v, 1e-9),
        },
    ))
}

/// Damped Newton step on the area around `v`; falls back to steepest descent
/// when the Newton direction is not a descent direction.
pub fn newton_step(
    disc: &PolyhedralDisc,
    v: usize,
    line_search: &LineSearch,
) -> Option<(PolyhedralDisc, StepOutcome)> {
    let g = position_area_gradient(disc, v);
    let d = disc.diameter();
    if g.norm() <= 1e-15 * d {
        return None;
    }
    let eig = SymmetricEigen::new(position_area_hessian(disc, v));
    let top = eig.eigenvalues.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut dir = Vec3::zeros();
    for i in 0..3 {
        let lambda = eig.eigenvalues[i];
        if lambda > 1e-12 * top {
            let q = eig.eigenvectors.column(i).into_owned();
            dir -= q * (q.dot(&g) / lambda);
        }
    }
    if !(dir.dot(&g) < 0.0) || !dir.iter().all(|c| c.is_finite()) {
        let scale = d / disc.complex().vertex_count() as f64;
        dir = -g.normalize() * scale;
    }
    let slope = dir.dot(&g);
    let degenerate_below = EPS_DEGENERATE * d * d;
    let start = disc.position(v);
    let before = star_area(disc, v);
    let mut trial = disc.clone();
    let mut t = 1.0;
    for _ in 0..=line_search.max_backtracks {
        trial.set_position(v, start + t * dir);
        if incident_nondegenerate(&trial, v, degenerate_below) {
            let decrease = before - star_area(&trial, v);
            if decrease > 0.0 && decrease >= -1e-4 * t * slope {
                return Some((
                    trial,
                    StepOutcome {
                        area_decrease: decrease,
                        displacement: t * dir.norm(),
                        angle_condition_fails: false,
                    },
                ));
            }
        }
        t *= line_search.shrink;
    }
    None
}

fn jitter(disc: &mut PolyhedralDisc, amplitude: f64, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d = disc.diameter();
    let threshold = EPS_DEGENERATE * d * d;
    let interior: Vec<usize> = disc.complex().interior_vertices().collect();
    for v in interior {
        let old = disc.position(v);
        let offset = Vec3::new(
            rng.random_range(-amplitude..=amplitude),
            rng.random_range(-amplitude..=amplitude),
            rng.random_range(-amplitude..=amplitude),
        );
        disc.set_position(v, old + offset);
        if !incident_nondegenerate(disc, v, threshold) {
            disc.set_position(v, old);
        }
    }
}

/// Local-search area minimization over flips, fan reductions and vertex moves.
pub fn minimize(
    input: &PolyhedralDisc,
    config: &OptimizerConfig,
) -> Result<(PolyhedralDisc, OptimizationTrace), OptimizeError> {
    let triangles = input.complex().triangle_count();
    if let Some(budget) = config.triangle_budget {
        if triangles > budget {
            return Err(OptimizeError::BudgetExceeded { triangles, budget });
        }
    }
    let diam = input.diameter();
    let eps_area = config.eps_area.unwrap_or(1e-12 * diam * diam);
    let amplitude = config.jitter_amplitude.unwrap_or(1e-9 * diam);

    let mut disc = input.clone();
    if amplitude > 0.0 {
        jitter(&mut disc, amplitude, config.seed);
    }
    let input_area = input.total_area();
    let mut rows = vec![TraceRow {
        iter: 0,
        area: disc.total_area(),
        flips: 0,
        reductions: 0,
        moves: 0,
        triangles: disc.complex().triangle_count(),
    }];
    let mut flips = Vec::new();
    let mut reductions = Vec::new();
    let mut moves = Vec::new();
    let mut stalled_cuts = Vec::new();
    let mut flip_cap_hit = false;
    let mut converged = false;

    for iter in 1..=config.max_outer_iterations {
        let area_start = disc.total_area();
        let mut row = TraceRow {
            iter,
            area: area_start,
            flips: 0,
            reductions: 0,
            moves: 0,
            triangles: 0,
        };

        if config.reductions_enabled {
            while let Some(&triple) = disc.complex().no_triangle_violations().first() {
                let (next, red) = reduce_fan(&disc, triple)?;
                reductions.push(ReductionRecord {
                    iter,
                    triple,
                    removed_triangles: red.removed_triangles,
                    removed_vertices: red.removed_vertices.clone(),
                    area_delta: red.area_delta(),
                });
                row.reductions += 1;
                disc = next;
            }
        }

        if config.flips_enabled {
            let pass = flip_pass(&disc, config.eps_flip, eps_area);
            flip_cap_hit |= pass.cap_hit;
            row.flips = pass.flips.len();
            flips.extend(pass.flips.into_iter().map(|f| FlipRecord { iter, ..f }));
            disc = pass.disc;
        }

        let interior: Vec<usize> = disc.complex().interior_vertices().collect();
        for v in interior {
            let edges = star_edge_vectors(&disc, v);
            let cuttable = !cutting_direction(&edges, config.eps_saddle)
                .expect("interior star is nonempty")
                .is_saddle();
            if cuttable {
                match vertex_descent_step(&disc, v, config.eps_saddle, &config.line_search, eps_area) {
                    Ok((next, out)) if out.area_decrease > 0.0 => {
                        moves.push(MoveRecord {
                            iter,
                            vertex: v,
                            kind: MoveKind::Cut,
                            displacement: out.displacement,
                            area_decrease: out.area_decrease,
                        });
                        row.moves += 1;
                        disc = next;
                        continue;
                    }
                    Ok((_, out)) => stalled_cuts.push((iter, v, out.angle_condition_fails)),
                    Err(_) => stalled_cuts.push((iter, v, false)),
                }
            }
            if let Some((next, out)) = newton_step(&disc, v, &config.line_search) {
                moves.push(MoveRecord {
                    iter,
                    vertex: v,
                    kind: MoveKind::Newton,
                    displacement: out.displacement,
                    area_decrease: out.area_decrease,
                });
                row.moves += 1;
                disc = next;
            }
        }

        let area_end = disc.total_area();
        row.area = area_end;
        row.triangles = disc.complex().triangle_count();
        let quiet = row.flips == 0 && row.reductions == 0;
        rows.push(row);
        if area_start - area_end < eps_area && quiet {
            converged = true;
            break;
        }
    }

    let certificate = certify_saddle(&disc, config.eps_saddle);
    Ok((
        disc,
        OptimizationTrace {
            input_area,
            rows,
            flips,
            reductions,
            moves,
            stalled_cuts,
            flip_cap_hit,
            converged,
            eps_area,
            certificate,
        },
    ))
}
