//! Edge flips, hinge measurements and fan reductions.
//!
//! A hinge is an interior edge `[ab]` with its two triangles `abx` and `aby`.
//! When the four angles adjacent to the edge sum to less than π, replacing the
//! hinge by `axy`, `bxy` never increases area. Fan reduction replaces the
//! sub-disc bounded by a chordal 3-cycle by the single triangle on it.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::f64::consts::PI;

use thiserror::Error;

use crate::mesh::{
    corner_angle, triangle_area, DiscComplex, Edge, EdgeKind, MeshError, PolyhedralDisc, Vec3,
    EPS_DEGENERATE,
};

/// Why an edge cannot be flipped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FlipBlocker {
    #[error("no such edge")]
    NotAnEdge,
    #[error("edge lies on the boundary")]
    BoundaryEdge,
    #[error("opposite vertices are already joined by an edge")]
    OppositeVerticesAdjacent,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FlipError {
    #[error("flip forbidden: {0}")]
    FlipForbidden(FlipBlocker),
    #[error("flip would create a degenerate triangle")]
    DegenerateResult,
    #[error("({0}, {1}, {2}) is not a no-triangle violation")]
    NotAViolation(usize, usize, usize),
    #[error("the 3-cycle ({0}, {1}, {2}) does not bound an interior sub-disc")]
    CycleBoundsBoundary(usize, usize, usize),
    #[error(transparent)]
    Mesh(#[from] MeshError),
}

/// Four points of a hinge: diagonal `[ab]`, opposite corners `x` and `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hinge {
    pub a: Vec3,
    pub b: Vec3,
    pub x: Vec3,
    pub y: Vec3,
}

impl Hinge {
    /// `(∠abx, ∠aby, ∠bax, ∠bay)`.
    pub fn four_angles(&self) -> [f64; 4] {
        let Hinge { a, b, x, y } = self;
        [
            corner_angle(b, a, x),
            corner_angle(b, a, y),
            corner_angle(a, b, x),
            corner_angle(a, b, y),
        ]
    }

    pub fn sigma(&self) -> f64 {
        self.four_angles().iter().sum()
    }

    /// `area(abx) + area(aby) - area(axy) - area(bxy)`.
    pub fn gain(&self) -> f64 {
        let Hinge { a, b, x, y } = self;
        triangle_area(a, b, x) + triangle_area(a, b, y)
            - triangle_area(a, x, y)
            - triangle_area(b, x, y)
    }

    /// Largest pairwise distance between the four points.
    pub fn diameter(&self) -> f64 {
        let p = [self.a, self.b, self.x, self.y];
        let mut d: f64 = 0.0;
        for i in 0..4 {
            for j in i + 1..4 {
                d = d.max((p[i] - p[j]).norm());
            }
        }
        d
    }

    /// Coplanar within `tol` (tetrahedron volume over diameter³) and convex.
    pub fn is_flat_convex(&self, tol: f64) -> bool {
        let Hinge { a, b, x, y } = *self;
        let diam = self.diameter();
        if diam == 0.0 {
            return false;
        }
        let volume = (b - a).dot(&(x - a).cross(&(y - a))).abs() / 6.0;
        if volume > tol * diam.powi(3) {
            return false;
        }
        // Newell normal of the polygon a x b y.
        let ring = [a, x, b, y];
        let normal: Vec3 = (0..4).map(|i| ring[i].cross(&ring[(i + 1) % 4])).sum();
        if normal.norm() == 0.0 {
            return false;
        }
        let n = normal.normalize();
        let orient = |p: Vec3, q: Vec3, r: Vec3| (q - p).cross(&(r - p)).dot(&n);
        orient(a, b, x) * orient(a, b, y) < 0.0 && orient(x, y, a) * orient(x, y, b) < 0.0
    }
}

/// Hinge quantities measured on a disc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HingeMeasurement {
    pub edge: Edge,
    pub opposite: (usize, usize),
    pub four_angles: [f64; 4],
    pub sigma: f64,
    pub gain: f64,
}

impl HingeMeasurement {
    /// `true` when the angle sum is below π by more than `eps_flip`.
    pub fn wants_flip(&self, eps_flip: f64) -> bool {
        self.sigma < PI - eps_flip
    }
}

pub fn hinge(disc: &PolyhedralDisc, edge: Edge) -> Result<(Hinge, (usize, usize)), FlipError> {
    let complex = disc.complex();
    let rec = complex
        .edge(edge)
        .ok_or(FlipError::FlipForbidden(FlipBlocker::NotAnEdge))?;
    if rec.kind == EdgeKind::Boundary {
        return Err(FlipError::FlipForbidden(FlipBlocker::BoundaryEdge));
    }
    let (x, y) = complex
        .opposite_vertices(edge)
        .expect("interior edge has two opposite vertices");
    Ok((
        Hinge {
            a: disc.position(edge.0),
            b: disc.position(edge.1),
            x: disc.position(x),
            y: disc.position(y),
        },
        (x, y),
    ))
}

pub fn measure_hinge(disc: &PolyhedralDisc, edge: Edge) -> Result<HingeMeasurement, FlipError> {
    let (h, opposite) = hinge(disc, edge)?;
    for &t in &disc.complex().edge(edge).expect("checked").triangles {
        if disc.is_degenerate(t, EPS_DEGENERATE) {
            return Err(MeshError::DegenerateTriangle(t).into());
        }
    }
    let four_angles = h.four_angles();
    Ok(HingeMeasurement {
        edge,
        opposite,
        four_angles,
        sigma: four_angles.iter().sum(),
        gain: h.gain(),
    })
}

pub fn can_flip(complex: &DiscComplex, edge: Edge) -> Result<(), FlipBlocker> {
    let rec = complex.edge(edge).ok_or(FlipBlocker::NotAnEdge)?;
    if rec.kind == EdgeKind::Boundary {
        return Err(FlipBlocker::BoundaryEdge);
    }
    let (x, y) = complex
        .opposite_vertices(edge)
        .expect("interior edge has two opposite vertices");
    if complex.has_edge(x, y) {
        return Err(FlipBlocker::OppositeVerticesAdjacent);
    }
    Ok(())
}

/// Exchanges `abx`, `aby` for `axy`, `bxy`. Positions are untouched.
pub fn flip(disc: &PolyhedralDisc, edge: Edge) -> Result<PolyhedralDisc, FlipError> {
    let complex = disc.complex();
    can_flip(complex, edge).map_err(FlipError::FlipForbidden)?;
    let (a, b) = (edge.0, edge.1);
    let (x, y) = complex.opposite_vertices(edge).expect("checked");
    let mut triangles = complex.triangles().to_vec();
    for &t in &complex.edge(edge).expect("checked").triangles {
        let tri = triangles[t];
        triangles[t] = if tri.contains(&x) { [x, a, y] } else { [y, b, x] };
    }
    let next = DiscComplex::build(complex.vertex_count(), &triangles)?;
    let positions = disc.positions().to_vec();
    PolyhedralDisc::new(next, positions).map_err(|e| match e {
        MeshError::DegenerateTriangle(_) => FlipError::DegenerateResult,
        other => other.into(),
    })
}

pub fn flat_convex_check(disc: &PolyhedralDisc, edge: Edge, tol: f64) -> Result<bool, FlipError> {
    let (h, _) = hinge(disc, edge)?;
    Ok(h.is_flat_convex(tol))
}

/// Outcome of one fan reduction.
#[derive(Debug, Clone, PartialEq)]
pub struct FanReduction {
    pub triple: [usize; 3],
    pub removed_triangles: usize,
    /// Old ids of the vertices that were strictly inside the replaced region.
    pub removed_vertices: Vec<usize>,
    /// Old id to new id; `None` for removed vertices.
    pub vertex_map: Vec<Option<usize>>,
    pub area_before: f64,
    pub area_after: f64,
}

impl FanReduction {
    /// Change in triangle count; always negative.
    pub fn triangle_delta(&self) -> i64 {
        1 - self.removed_triangles as i64
    }

    pub fn area_delta(&self) -> f64 {
        self.area_after - self.area_before
    }
}

/// Replaces the sub-disc bounded by the 3-cycle `triple` with one triangle.
///
/// The region is found by growing across every edge except the three cycle
/// edges; the component whose own boundary is exactly the cycle is replaced.
pub fn reduce_fan(
    disc: &PolyhedralDisc,
    triple: [usize; 3],
) -> Result<(PolyhedralDisc, FanReduction), FlipError> {
    let complex = disc.complex();
    let [a, b, c] = triple;
    let n = complex.vertex_count();
    let not_violation = FlipError::NotAViolation(a, b, c);
    if a >= n || b >= n || c >= n || a == b || b == c || a == c {
        return Err(not_violation);
    }
    let cycle: BTreeSet<Edge> = [Edge::new(a, b), Edge::new(b, c), Edge::new(c, a)].into();
    if cycle.iter().any(|e| complex.edge(*e).is_none()) || complex.has_triangle(a, b, c) {
        return Err(not_violation);
    }

    let tris = complex.triangles();
    let mut component = vec![usize::MAX; tris.len()];
    let mut components: Vec<Vec<usize>> = Vec::new();
    for seed in 0..tris.len() {
        if component[seed] != usize::MAX {
            continue;
        }
        let id = components.len();
        let mut members = vec![seed];
        component[seed] = id;
        let mut queue = VecDeque::from([seed]);
        while let Some(t) = queue.pop_front() {
            let tri = tris[t];
            for k in 0..3 {
                let e = Edge::new(tri[k], tri[(k + 1) % 3]);
                if cycle.contains(&e) {
                    continue;
                }
                for &m in &complex.edge(e).expect("edge of triangle").triangles {
                    if component[m] == usize::MAX {
                        component[m] = id;
                        members.push(m);
                        queue.push_back(m);
                    }
                }
            }
        }
        components.push(members);
    }

    let region = components
        .iter()
        .filter(|members| {
            let mut uses: BTreeMap<Edge, usize> = BTreeMap::new();
            for &t in members.iter() {
                let tri = tris[t];
                for k in 0..3 {
                    *uses.entry(Edge::new(tri[k], tri[(k + 1) % 3])).or_default() += 1;
                }
            }
            let rim: BTreeSet<Edge> = uses
                .into_iter()
                .filter(|&(_, u)| u == 1)
                .map(|(e, _)| e)
                .collect();
            rim == cycle
        })
        .min_by_key(|members| members.len())
        .ok_or(FlipError::CycleBoundsBoundary(a, b, c))?;

    // Orient the new triangle like the rim of the region.
    let mut next = BTreeMap::new();
    for &t in region {
        let tri = tris[t];
        for k in 0..3 {
            let (u, v) = (tri[k], tri[(k + 1) % 3]);
            if cycle.contains(&Edge::new(u, v)) {
                next.insert(u, v);
            }
        }
    }
    let replacement = [a, next[&a], next[&next[&a]]];

    let in_region: BTreeSet<usize> = region.iter().copied().collect();
    let mut kept = vec![false; n];
    for (t, tri) in tris.iter().enumerate() {
        if !in_region.contains(&t) {
            for &v in tri {
                kept[v] = true;
            }
        }
    }
    for v in triple {
        kept[v] = true;
    }
    let mut vertex_map = vec![None; n];
    let mut positions = Vec::new();
    let mut removed_vertices = Vec::new();
    for v in 0..n {
        if kept[v] {
            vertex_map[v] = Some(positions.len());
            positions.push(disc.position(v));
        } else {
            removed_vertices.push(v);
        }
    }
    let relabel = |tri: [usize; 3]| tri.map(|v| vertex_map[v].expect("kept vertex"));
    // The replacement takes the slot of the region's first triangle.
    let first = *region.iter().min().expect("nonempty region");
    let triangles: Vec<[usize; 3]> = tris
        .iter()
        .enumerate()
        .filter_map(|(t, tri)| {
            if t == first {
                Some(relabel(replacement))
            } else if in_region.contains(&t) {
                None
            } else {
                Some(relabel(*tri))
            }
        })
        .collect();

    let area_before = disc.total_area();
    let out = PolyhedralDisc::new(DiscComplex::build(positions.len(), &triangles)?, positions)?;
    let area_after = out.total_area();
    let d = disc.diameter();
    debug_assert!(
        area_after - area_before <= 1e-9 * d * d,
        "a triangle is the least-area filling of its boundary"
    );
    Ok((
        out,
        FanReduction {
            triple,
            removed_triangles: region.len(),
            removed_vertices,
            vertex_map,
            area_before,
            area_after,
        },
    ))
}
