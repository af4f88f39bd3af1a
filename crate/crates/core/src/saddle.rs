//! Saddle certification of interior vertices.
//!
//! A plane cuts every edge leaving vertex `a` exactly when the normalized edge
//! directions lie in an open half-space. The best margin
//! `max { t : <n, e_i> >= t, |n| <= 1 }` equals the distance from the origin to
//! the convex hull of the directions, so the solver computes the minimum-norm
//! point of that hull. In three dimensions the minimizer is supported on at
//! most four directions, and enumerating those support sets is exact.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::mesh::{PolyhedralDisc, Vec3};

pub const EPS_SADDLE: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum SaddleError {
    #[error("vertex star has no edges")]
    EmptyStar,
    #[error("edge direction {0} has zero length")]
    ZeroDirection(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexStatus {
    Saddle,
    NonSaddle,
}

/// Verdict for one vertex (or one bare star of directions).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexVerdict {
    #[serde(rename = "id")]
    pub vertex: usize,
    pub status: VertexStatus,
    /// Unit normal with `<normal, e_i/|e_i|> >= margin` for every edge.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normal: Option<[f64; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub margin: Option<f64>,
    /// Convex weights over the edge directions whose combination nearly vanishes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
}

impl VertexVerdict {
    pub fn is_saddle(&self) -> bool {
        self.status == VertexStatus::Saddle
    }

    pub fn normal_vec(&self) -> Option<Vec3> {
        self.normal.map(|n| Vec3::new(n[0], n[1], n[2]))
    }

    /// Re-checks the witness against unit `directions`.
    pub fn verify(&self, directions: &[Vec3], eps: f64) -> bool {
        match self.status {
            VertexStatus::NonSaddle => match (self.normal_vec(), self.margin) {
                (Some(n), Some(m)) => {
                    m > eps && directions.iter().all(|e| n.dot(e) >= m)
                }
                _ => false,
            },
            VertexStatus::Saddle => match &self.lambda {
                Some(l) if l.len() == directions.len() => {
                    let sum: f64 = l.iter().sum();
                    let combo: Vec3 = l.iter().zip(directions).map(|(w, e)| *w * e).sum();
                    l.iter().all(|w| *w >= 0.0) && (sum - 1.0).abs() <= 1e-12 && combo.norm() <= eps
                }
                _ => false,
            },
        }
    }
}

/// Verdicts for every interior vertex of a disc.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaddleCertificate {
    pub vertices: Vec<VertexVerdict>,
    pub saddle: bool,
}

impl SaddleCertificate {
    pub fn non_saddle(&self) -> impl Iterator<Item = &VertexVerdict> {
        self.vertices.iter().filter(|v| !v.is_saddle())
    }
}

/// A plane strictly separating a vertex from all of its neighbors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuttingPlane {
    pub normal: Vec3,
    pub offset: f64,
}

impl CuttingPlane {
    pub fn signed_distance(&self, p: &Vec3) -> f64 {
        self.normal.dot(p) - self.offset
    }

    /// `true` if the segment `[p, q]` has its ends strictly on opposite sides.
    pub fn cuts(&self, p: &Vec3, q: &Vec3) -> bool {
        self.signed_distance(p) * self.signed_distance(q) < 0.0
    }
}

struct Candidate {
    point: Vec3,
    support: Vec<usize>,
    weights: Vec<f64>,
}

/// Minimum-norm point of the affine hull of `pts[support]`, with its
/// barycentric weights. `None` if the points are affinely dependent.
fn affine_min_norm(pts: &[Vec3], support: &[usize]) -> Option<(Vec3, Vec<f64>)> {
    let base = pts[support[0]];
    let m = support.len() - 1;
    if m == 0 {
        return Some((base, vec![1.0]));
    }
    let cols: Vec<Vec3> = support[1..].iter().map(|&i| pts[i] - base).collect();
    let mut gram = Matrix3::<f64>::identity();
    let mut rhs = Vector3::<f64>::zeros();
    for i in 0..m {
        for j in 0..m {
            gram[(i, j)] = cols[i].dot(&cols[j]);
        }
        rhs[i] = -cols[i].dot(&base);
    }
    // Reject near-singular Gram matrices relative to their diagonal.
    let diag: f64 = (0..m).map(|i| gram[(i, i)]).product();
    let det = gram.determinant();
    if diag <= 0.0 || det <= 1e-18 * diag {
        return None;
    }
    let mu = gram.lu().solve(&rhs)?;
    let mut point = base;
    let mut weights = vec![0.0; m + 1];
    let mut rest = 1.0;
    for i in 0..m {
        point += mu[i] * cols[i];
        weights[i + 1] = mu[i];
        rest -= mu[i];
    }
    weights[0] = rest;
    Some((point, weights))
}

fn subsets(n: usize, max_size: usize, f: &mut impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, max_size: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        for i in start..n {
            cur.push(i);
            f(cur);
            if cur.len() < max_size {
                rec(i + 1, n, max_size, cur, f);
            }
            cur.pop();
        }
    }
    rec(0, n, max_size, &mut Vec::with_capacity(max_size), f);
}

fn local_candidates(directions: &[Vec3]) -> Vec<Candidate> {
    let mut out = Vec::new();
    subsets(directions.len(), 4, &mut |support| {
        if let Some((point, weights)) = affine_min_norm(directions, support) {
            if weights.iter().all(|w| *w >= -1e-12) {
                out.push(Candidate {
                    point,
                    support: support.to_vec(),
                    weights,
                });
            }
        }
    });
    out
}

/// Decides whether `directions` lie in an open half-space.
///
/// Directions are normalized first. The returned verdict carries
/// `vertex = usize::MAX`; [`certify_saddle`] fills in the id.
pub fn cutting_direction(directions: &[Vec3], eps_saddle: f64) -> Result<VertexVerdict, SaddleError> {
    if directions.is_empty() {
        return Err(SaddleError::EmptyStar);
    }
    let unit: Vec<Vec3> = directions
        .iter()
        .enumerate()
        .map(|(i, d)| {
            let n = d.norm();
            if n > 0.0 && n.is_finite() {
                Ok(d / n)
            } else {
                Err(SaddleError::ZeroDirection(i))
            }
        })
        .collect::<Result<_, _>>()?;

    let candidates = local_candidates(&unit);
    let best = candidates
        .iter()
        .min_by(|a, b| a.point.norm().total_cmp(&b.point.norm()))
        .expect("every single direction is a candidate");
    let best_norm = best.point.norm();

    if best_norm > 0.0 {
        let n = best.point / best_norm;
        let margin = unit
            .iter()
            .map(|e| n.dot(e))
            .fold(f64::INFINITY, f64::min);
        if margin > eps_saddle {
            return Ok(VertexVerdict {
                vertex: usize::MAX,
                status: VertexStatus::NonSaddle,
                normal: Some([n.x, n.y, n.z]),
                margin: Some(margin),
                lambda: None,
                residual: None,
            });
        }
    }

    // Average the weights of every support set that nearly contains the
    // origin; the mean stays a probability vector and its residual is no
    // larger than the worst one averaged.
    let threshold = best_norm.max(1e-15) * 4.0;
    let mut lambda = vec![0.0; unit.len()];
    let mut count = 0usize;
    let add = |c: &Candidate, lambda: &mut Vec<f64>| {
        for (&i, &w) in c.support.iter().zip(&c.weights) {
            lambda[i] += w.max(0.0);
        }
    };
    for c in candidates.iter().filter(|c| c.point.norm() <= threshold.min(eps_saddle)) {
        add(c, &mut lambda);
        count += 1;
    }
    if count == 0 {
        add(best, &mut lambda);
    }
    let total: f64 = lambda.iter().sum();
    for w in &mut lambda {
        *w /= total;
    }
    let residual = lambda
        .iter()
        .zip(&unit)
        .map(|(w, e)| *w * e)
        .sum::<Vec3>()
        .norm();
    Ok(VertexVerdict {
        vertex: usize::MAX,
        status: VertexStatus::Saddle,
        normal: None,
        margin: None,
        lambda: Some(lambda),
        residual: Some(residual),
    })
}

/// Quasi-uniform sphere samples (Fibonacci lattice).
pub fn sphere_samples(n: usize) -> Vec<Vec3> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..n)
        .map(|i| {
            let z = 1.0 - (2.0 * i as f64 + 1.0) / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * i as f64;
            Vec3::new(r * phi.cos(), r * phi.sin(), z)
        })
        .collect()
}

/// Best `(n, min_i <n, e_i>)` over `samples` sphere directions: a lower bound
/// on the true margin.
pub fn brute_force_cutting_direction(directions: &[Vec3], samples: usize) -> (Vec3, f64) {
    let unit: Vec<Vec3> = directions.iter().map(|d| d.normalize()).collect();
    sphere_samples(samples.max(100))
        .into_iter()
        .map(|n| {
            let t = unit.iter().map(|e| n.dot(e)).fold(f64::INFINITY, f64::min);
            (n, t)
        })
        .max_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one sample")
}

/// Edge vectors `b_i - a` from interior vertex `v`, in star order.
pub fn star_edge_vectors(disc: &PolyhedralDisc, v: usize) -> Vec<Vec3> {
    let a = disc.position(v);
    disc.complex()
        .vertex_star(v)
        .expect("vertex exists")
        .neighbors()
        .iter()
        .map(|&u| disc.position(u) - a)
        .collect()
}

pub fn certify_vertex(disc: &PolyhedralDisc, v: usize, eps_saddle: f64) -> VertexVerdict {
    let edges = star_edge_vectors(disc, v);
    let mut verdict = cutting_direction(&edges, eps_saddle)
        .expect("interior vertices have nonempty stars of nonzero edges");
    verdict.vertex = v;
    verdict
}

pub fn certify_saddle(disc: &PolyhedralDisc, eps_saddle: f64) -> SaddleCertificate {
    let vertices: Vec<VertexVerdict> = disc
        .complex()
        .interior_vertices()
        .map(|v| certify_vertex(disc, v, eps_saddle))
        .collect();
    let saddle = vertices.iter().all(VertexVerdict::is_saddle);
    SaddleCertificate { vertices, saddle }
}

/// Explicit cutting plane for a non-saddle verdict at vertex position `apex`
/// with edge vectors `edges`: offset `<n, a> + margin * min|e_i| / 2`.
pub fn cutting_plane(verdict: &VertexVerdict, apex: &Vec3, edges: &[Vec3]) -> Option<CuttingPlane> {
    let n = verdict.normal_vec()?;
    let margin = verdict.margin?;
    let shortest = edges.iter().map(|e| e.norm()).fold(f64::INFINITY, f64::min);
    Some(CuttingPlane {
        normal: n,
        offset: n.dot(apex) + 0.5 * margin * shortest,
    })
}
