//! Instance generators: the tent and seeded random boundaries.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::mesh::{PolyhedralDisc, Vec3};
use crate::optimize::{minimize, OptimizationTrace, OptimizeError, OptimizerConfig};
use crate::saddle::VertexVerdict;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScenarioError {
    #[error("degenerate tent parameters: {0}")]
    DegenerateParameters(String),
    #[error("a boundary needs at least 4 vertices, got {0}")]
    TooFewVertices(usize),
    #[error(transparent)]
    Optimize(#[from] OptimizeError),
    #[error(transparent)]
    Mesh(#[from] crate::mesh::MeshError),
}

pub const TENT_SIDES: usize = 12;

/// Tent boundary: a 12-gon alternating between outer vertices (radius 1,
/// height 0) and raised inner vertices (`inner_radius`, `ridge_height`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TentParams {
    /// Initial height of the fan apex above the center.
    pub apex_height: f64,
    pub ridge_height: f64,
    pub inner_radius: f64,
    pub seed: u64,
}

impl Default for TentParams {
    fn default() -> Self {
        TentParams {
            apex_height: 0.75,
            ridge_height: 0.5,
            inner_radius: 0.7,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct TentScenario {
    pub params: TentParams,
    pub boundary: Vec<Vec3>,
    /// 12 triangles around one apex.
    pub fan_disc: PolyhedralDisc,
    /// 10 triangles, no interior vertex: a roof and six eaves.
    pub chord_disc: PolyhedralDisc,
    /// Fan optimized with flips and reductions disabled.
    pub fan_fixed_optimum: PolyhedralDisc,
    pub fan_fixed_trace: OptimizationTrace,
    pub chord_optimum: PolyhedralDisc,
    pub chord_trace: OptimizationTrace,
    pub apex_verdict: VertexVerdict,
}

impl TentScenario {
    /// `fan fixed-triangulation optimum - chord optimum`.
    pub fn area_gap(&self) -> f64 {
        self.fan_fixed_optimum.total_area() - self.chord_optimum.total_area()
    }
}

pub fn tent_boundary(params: &TentParams) -> Vec<Vec3> {
    (0..TENT_SIDES)
        .map(|k| {
            let theta = TAU * k as f64 / TENT_SIDES as f64;
            let (r, z) = if k % 2 == 0 {
                (1.0, 0.0)
            } else {
                (params.inner_radius, params.ridge_height)
            };
            Vec3::new(r * theta.cos(), r * theta.sin(), z)
        })
        .collect()
}

/// Builds the tent and checks that the fixed-triangulation fan optimum is not
/// saddle and that the chord triangulation ends with strictly less area.
pub fn make_tent(params: &TentParams) -> Result<TentScenario, ScenarioError> {
    if !(params.apex_height > 0.0) {
        return Err(ScenarioError::DegenerateParameters(
            "apex height must be positive".into(),
        ));
    }
    if !(params.inner_radius > 0.0) {
        return Err(ScenarioError::DegenerateParameters(
            "inner radius must be positive".into(),
        ));
    }
    let boundary = tent_boundary(params);
    let n = TENT_SIDES;

    let mut fan_pos = boundary.clone();
    fan_pos.push(Vec3::new(0.0, 0.0, params.apex_height));
    let fan_tris: Vec<[usize; 3]> = (0..n).map(|k| [n, k, (k + 1) % n]).collect();
    let fan_disc = PolyhedralDisc::from_triangles(fan_pos, &fan_tris)?;

    // A flat roof on the raised vertices and one eave down to each outer vertex.
    let mut chord_tris: Vec<[usize; 3]> = (0..n / 2)
        .map(|j| [2 * j + 1, (2 * j + 2) % n, (2 * j + 3) % n])
        .collect();
    chord_tris.extend((1..n / 2 - 1).map(|j| [1, 2 * j + 1, 2 * j + 3]));
    let chord_disc = PolyhedralDisc::from_triangles(boundary.clone(), &chord_tris)?;

    let fixed = OptimizerConfig {
        flips_enabled: false,
        reductions_enabled: false,
        seed: params.seed,
        ..Default::default()
    };
    let (fan_fixed_optimum, fan_fixed_trace) = minimize(&fan_disc, &fixed)?;
    let apex_verdict = fan_fixed_trace
        .certificate
        .vertices
        .first()
        .cloned()
        .ok_or_else(|| ScenarioError::DegenerateParameters("fan has no apex".into()))?;
    if apex_verdict.is_saddle() {
        return Err(ScenarioError::DegenerateParameters(
            "fixed-triangulation fan optimum is saddle at its apex".into(),
        ));
    }

    let free = OptimizerConfig {
        seed: params.seed,
        ..Default::default()
    };
    let (chord_optimum, chord_trace) = minimize(&chord_disc, &free)?;
    let gap = fan_fixed_optimum.total_area() - chord_optimum.total_area();
    if !(gap > 1e-6 * fan_fixed_optimum.total_area()) {
        return Err(ScenarioError::DegenerateParameters(format!(
            "chord disc is not smaller than the fan optimum (gap {gap:e})"
        )));
    }

    Ok(TentScenario {
        params: *params,
        boundary,
        fan_disc,
        chord_disc,
        fan_fixed_optimum,
        fan_fixed_trace,
        chord_optimum,
        chord_trace,
        apex_verdict,
    })
}

/// Seeded random nonplanar `m`-gon filled by a fan from its centroid.
///
/// Boundary angles are jittered around the regular positions, radii are drawn
/// from `[0.7, 1.3]` and heights from `[-nonplanarity, nonplanarity]`.
pub fn random_instance(m: usize, nonplanarity: f64, seed: u64) -> Result<PolyhedralDisc, ScenarioError> {
    if m < 4 {
        return Err(ScenarioError::TooFewVertices(m));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pos: Vec<Vec3> = (0..m)
        .map(|k| {
            let theta = TAU * (k as f64 + rng.random_range(-0.3..0.3)) / m as f64;
            let r = rng.random_range(0.7..1.3);
            let z = if nonplanarity > 0.0 {
                rng.random_range(-nonplanarity..nonplanarity)
            } else {
                0.0
            };
            Vec3::new(r * theta.cos(), r * theta.sin(), z)
        })
        .collect();
    let centroid = pos.iter().sum::<Vec3>() / m as f64;
    pos.push(centroid);
    let tris: Vec<[usize; 3]> = (0..m).map(|k| [m, k, (k + 1) % m]).collect();
    Ok(PolyhedralDisc::from_triangles(pos, &tris)?)
}
