//! Triangulated disc complexes and their embeddings in 3-space.
//!
//! A [`DiscComplex`] is purely combinatorial: a list of consistently oriented
//! vertex triples that together form a topological disc. A [`PolyhedralDisc`]
//! pairs a complex with one position per vertex; each triangle maps linearly,
//! self-intersections are allowed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use nalgebra::Vector3;
use thiserror::Error;

pub type Vec3 = Vector3<f64>;

/// Default degeneracy threshold, relative to the squared mesh diameter.
pub const EPS_DEGENERATE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MeshError {
    #[error("complex has no triangles")]
    Empty,
    #[error("triangle {triangle} references vertex {vertex}, but only {vertex_count} vertices exist")]
    IndexOutOfRange {
        triangle: usize,
        vertex: usize,
        vertex_count: usize,
    },
    #[error("triangle {0} repeats a vertex")]
    RepeatedVertex(usize),
    #[error("edge ({0}, {1}) is shared by {2} triangles")]
    NonManifoldEdge(usize, usize, usize),
    #[error("complex is not connected (or has unused vertices)")]
    DisconnectedComplex,
    #[error("triangles cannot be oriented consistently")]
    NonOrientable,
    #[error("Euler characteristic is {0}, expected 1")]
    WrongEuler(i64),
    #[error("boundary edges form {0} cycles, expected exactly one")]
    MultipleBoundaryComponents(usize),
    #[error("boundary vertex {0} is pinched")]
    NonManifoldVertex(usize),
    #[error("expected {expected} positions, got {got}")]
    PositionCount { expected: usize, got: usize },
    #[error("triangle {0} is degenerate")]
    DegenerateTriangle(usize),
    #[error("vertex {vertex} is not a corner of triangle {triangle}")]
    NotACorner { triangle: usize, vertex: usize },
    #[error("vertex {0} does not exist")]
    NoSuchVertex(usize),
}

/// Unordered vertex pair, stored with the smaller index first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(pub usize, pub usize);

impl Edge {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0 == v || self.1 == v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Interior,
    Boundary,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeRecord {
    pub kind: EdgeKind,
    /// Indices of the one or two incident triangles.
    pub triangles: Vec<usize>,
}

/// Neighbors of a vertex in rotational order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Star {
    /// Interior vertex: the link is a closed cycle.
    Cycle(Vec<usize>),
    /// Boundary vertex: the link is a path between its two boundary neighbors.
    Path(Vec<usize>),
}

impl Star {
    pub fn neighbors(&self) -> &[usize] {
        match self {
            Star::Cycle(v) | Star::Path(v) => v,
        }
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, Star::Cycle(_))
    }
}

/// A validated, consistently oriented triangulation of a disc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiscComplex {
    vertex_count: usize,
    triangles: Vec<[usize; 3]>,
    edges: BTreeMap<Edge, EdgeRecord>,
    boundary_cycle: Vec<usize>,
    on_boundary: Vec<bool>,
    vertex_triangles: Vec<Vec<usize>>,
}

impl DiscComplex {
    /// Validates `triples` as a disc over vertices `0..vertex_count`.
    ///
    /// Orientation is propagated breadth-first from the first triangle, so the
    /// input orientation of the remaining triangles is ignored.
    pub fn build(vertex_count: usize, triples: &[[usize; 3]]) -> Result<Self, MeshError> {
        if triples.is_empty() {
            return Err(MeshError::Empty);
        }
        for (t, tri) in triples.iter().enumerate() {
            for &v in tri {
                if v >= vertex_count {
                    return Err(MeshError::IndexOutOfRange {
                        triangle: t,
                        vertex: v,
                        vertex_count,
                    });
                }
            }
            if tri[0] == tri[1] || tri[1] == tri[2] || tri[2] == tri[0] {
                return Err(MeshError::RepeatedVertex(t));
            }
        }

        let mut incidence: BTreeMap<Edge, Vec<usize>> = BTreeMap::new();
        for (t, tri) in triples.iter().enumerate() {
            for k in 0..3 {
                incidence
                    .entry(Edge::new(tri[k], tri[(k + 1) % 3]))
                    .or_default()
                    .push(t);
            }
        }
        if let Some((e, ts)) = incidence.iter().find(|(_, ts)| ts.len() > 2) {
            return Err(MeshError::NonManifoldEdge(e.0, e.1, ts.len()));
        }

        let mut triangles = triples.to_vec();
        let mut visited = vec![false; triangles.len()];
        let mut queue = VecDeque::from([0usize]);
        visited[0] = true;
        let mut reached = 1;
        while let Some(t) = queue.pop_front() {
            let tri = triangles[t];
            for k in 0..3 {
                let (u, v) = (tri[k], tri[(k + 1) % 3]);
                for &n in &incidence[&Edge::new(u, v)] {
                    if n == t {
                        continue;
                    }
                    let same_direction = has_directed_edge(&triangles[n], u, v);
                    if visited[n] {
                        if same_direction {
                            return Err(MeshError::NonOrientable);
                        }
                    } else {
                        if same_direction {
                            triangles[n].swap(1, 2);
                        }
                        visited[n] = true;
                        reached += 1;
                        queue.push_back(n);
                    }
                }
            }
        }
        if reached != triangles.len() {
            return Err(MeshError::DisconnectedComplex);
        }

        let mut vertex_triangles = vec![Vec::new(); vertex_count];
        for (t, tri) in triangles.iter().enumerate() {
            for &v in tri {
                vertex_triangles[v].push(t);
            }
        }
        if vertex_triangles.iter().any(Vec::is_empty) {
            return Err(MeshError::DisconnectedComplex);
        }

        let euler = vertex_count as i64 - incidence.len() as i64 + triangles.len() as i64;
        if euler != 1 {
            return Err(MeshError::WrongEuler(euler));
        }

        // Boundary edges inherit the direction they have in their triangle.
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        let mut boundary_edges = 0;
        for (t, tri) in triangles.iter().enumerate() {
            for k in 0..3 {
                let (u, v) = (tri[k], tri[(k + 1) % 3]);
                if incidence[&Edge::new(u, v)].len() == 1 {
                    debug_assert_eq!(incidence[&Edge::new(u, v)][0], t);
                    boundary_edges += 1;
                    if next.insert(u, v).is_some() {
                        return Err(MeshError::NonManifoldVertex(u));
                    }
                }
            }
        }
        if boundary_edges == 0 {
            return Err(MeshError::MultipleBoundaryComponents(0));
        }
        let start = *next.keys().next().expect("nonempty boundary");
        let mut boundary_cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            boundary_cycle.push(cur);
            cur = next[&cur];
        }
        if boundary_cycle.len() != boundary_edges {
            return Err(MeshError::MultipleBoundaryComponents(count_cycles(&next)));
        }

        let mut on_boundary = vec![false; vertex_count];
        for &v in &boundary_cycle {
            on_boundary[v] = true;
        }
        let edges = incidence
            .into_iter()
            .map(|(e, ts)| {
                let kind = if ts.len() == 1 {
                    EdgeKind::Boundary
                } else {
                    EdgeKind::Interior
                };
                (e, EdgeRecord { kind, triangles: ts })
            })
            .collect();

        Ok(DiscComplex {
            vertex_count,
            triangles,
            edges,
            boundary_cycle,
            on_boundary,
            vertex_triangles,
        })
    }

    /// Builds a complex whose vertex count is one past the largest index used.
    pub fn from_triangles(triples: &[[usize; 3]]) -> Result<Self, MeshError> {
        let n = triples.iter().flatten().max().map_or(0, |m| m + 1);
        Self::build(n, triples)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub fn triangle(&self, t: usize) -> [usize; 3] {
        self.triangles[t]
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Edge, &EdgeRecord)> {
        self.edges.iter()
    }

    pub fn edge(&self, e: Edge) -> Option<&EdgeRecord> {
        self.edges.get(&e)
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.contains_key(&Edge::new(a, b))
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.edges
            .iter()
            .filter(|(_, r)| r.kind == EdgeKind::Interior)
            .map(|(e, _)| *e)
    }

    pub fn boundary_cycle(&self) -> &[usize] {
        &self.boundary_cycle
    }

    pub fn is_boundary_vertex(&self, v: usize) -> bool {
        self.on_boundary[v]
    }

    pub fn interior_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.vertex_count).filter(|&v| !self.on_boundary[v])
    }

    pub fn vertex_triangles(&self, v: usize) -> &[usize] {
        &self.vertex_triangles[v]
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count as i64 - self.edges.len() as i64 + self.triangles.len() as i64
    }

    pub fn has_triangle(&self, a: usize, b: usize, c: usize) -> bool {
        let mut key = [a, b, c];
        key.sort_unstable();
        self.vertex_triangles[a].iter().any(|&t| {
            let mut tri = self.triangles[t];
            tri.sort_unstable();
            tri == key
        })
    }

    /// Neighbors of `v` sorted by index.
    pub fn neighbors(&self, v: usize) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &t in &self.vertex_triangles[v] {
            for &u in &self.triangles[t] {
                if u != v {
                    out.insert(u);
                }
            }
        }
        out
    }

    /// Neighbors of `v` in rotational order, following the triangle orientation.
    pub fn vertex_star(&self, v: usize) -> Result<Star, MeshError> {
        if v >= self.vertex_count {
            return Err(MeshError::NoSuchVertex(v));
        }
        let mut succ: BTreeMap<usize, usize> = BTreeMap::new();
        for &t in &self.vertex_triangles[v] {
            let tri = self.triangles[t];
            let k = tri.iter().position(|&u| u == v).expect("incident");
            succ.insert(tri[(k + 1) % 3], tri[(k + 2) % 3]);
        }
        let start = if self.on_boundary[v] {
            let targets: BTreeSet<usize> = succ.values().copied().collect();
            *succ
                .keys()
                .find(|u| !targets.contains(u))
                .expect("boundary vertex has a path start")
        } else {
            *succ.keys().next().expect("vertex has triangles")
        };
        let mut order = vec![start];
        let mut cur = start;
        while let Some(&n) = succ.get(&cur) {
            if n == start {
                break;
            }
            order.push(n);
            cur = n;
        }
        Ok(if self.on_boundary[v] {
            Star::Path(order)
        } else {
            Star::Cycle(order)
        })
    }

    /// Every pairwise-adjacent vertex triple that is not a triangle of the complex.
    pub fn no_triangle_violations(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for e in self.edges.keys() {
            let na = self.neighbors(e.0);
            for c in self.neighbors(e.1) {
                if c > e.1 && na.contains(&c) && !self.has_triangle(e.0, e.1, c) {
                    out.push([e.0, e.1, c]);
                }
            }
        }
        out
    }

    /// For an interior edge `[a, b]`, returns `(x, y)` where `a -> b -> x` and
    /// `b -> a -> y` are the two oriented incident triangles.
    pub fn opposite_vertices(&self, e: Edge) -> Option<(usize, usize)> {
        let rec = self.edges.get(&e)?;
        if rec.kind != EdgeKind::Interior {
            return None;
        }
        let (a, b) = (e.0, e.1);
        let mut x = None;
        let mut y = None;
        for &t in &rec.triangles {
            let tri = self.triangles[t];
            let third = third_vertex(&tri, a, b);
            if has_directed_edge(&tri, a, b) {
                x = Some(third);
            } else {
                y = Some(third);
            }
        }
        Some((x?, y?))
    }
}

pub(crate) fn has_directed_edge(tri: &[usize; 3], u: usize, v: usize) -> bool {
    (0..3).any(|k| tri[k] == u && tri[(k + 1) % 3] == v)
}

pub(crate) fn third_vertex(tri: &[usize; 3], a: usize, b: usize) -> usize {
    *tri.iter()
        .find(|&&v| v != a && v != b)
        .expect("triangle has a third vertex")
}

fn count_cycles(next: &BTreeMap<usize, usize>) -> usize {
    let mut seen = BTreeSet::new();
    let mut cycles = 0;
    for &s in next.keys() {
        if seen.contains(&s) {
            continue;
        }
        cycles += 1;
        let mut cur = s;
        while seen.insert(cur) {
            cur = next[&cur];
        }
    }
    cycles
}

pub fn triangle_area(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    0.5 * (b - a).cross(&(c - a)).norm()
}

/// Angle at `a` in the triangle `a b c`.
pub fn corner_angle(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let u = b - a;
    let v = c - a;
    u.cross(&v).norm().atan2(u.dot(&v))
}

/// Area of a triangle from its side lengths (Kahan's stable form of Heron).
pub fn heron_area(l0: f64, l1: f64, l2: f64) -> f64 {
    let mut s = [l0, l1, l2];
    s.sort_unstable_by(|x, y| y.total_cmp(x));
    let [a, b, c] = s;
    let p = (a + (b + c)) * (c - (a - b)) * (c + (a - b)) * (a + (b - c));
    0.25 * p.max(0.0).sqrt()
}

/// A disc complex together with a position for every vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedralDisc {
    complex: DiscComplex,
    positions: Vec<Vec3>,
}

impl PolyhedralDisc {
    /// Checks the position count and rejects degenerate triangles.
    pub fn new(complex: DiscComplex, positions: Vec<Vec3>) -> Result<Self, MeshError> {
        if positions.len() != complex.vertex_count() {
            return Err(MeshError::PositionCount {
                expected: complex.vertex_count(),
                got: positions.len(),
            });
        }
        let disc = PolyhedralDisc { complex, positions };
        if let Some(t) = disc.degenerate_triangles(EPS_DEGENERATE).first() {
            return Err(MeshError::DegenerateTriangle(*t));
        }
        Ok(disc)
    }

    pub fn from_triangles(positions: Vec<Vec3>, triples: &[[usize; 3]]) -> Result<Self, MeshError> {
        let complex = DiscComplex::build(positions.len(), triples)?;
        Self::new(complex, positions)
    }

    pub fn complex(&self) -> &DiscComplex {
        &self.complex
    }

    pub fn positions(&self) -> &[Vec3] {
        &self.positions
    }

    pub fn position(&self, v: usize) -> Vec3 {
        self.positions[v]
    }

    /// Replaces one position without revalidating; callers check degeneracy.
    pub(crate) fn set_position(&mut self, v: usize, p: Vec3) {
        self.positions[v] = p;
    }

    /// Positions along the boundary cycle: the fixed curve F(∂D).
    pub fn boundary_curve(&self) -> Vec<Vec3> {
        self.complex
            .boundary_cycle()
            .iter()
            .map(|&v| self.positions[v])
            .collect()
    }

    /// Bounding-box diagonal, used to make tolerances scale-free.
    pub fn diameter(&self) -> f64 {
        let mut lo = self.positions[0];
        let mut hi = self.positions[0];
        for p in &self.positions {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        (hi - lo).norm()
    }

    pub fn corners(&self, t: usize) -> [Vec3; 3] {
        let [a, b, c] = self.complex.triangle(t);
        [self.positions[a], self.positions[b], self.positions[c]]
    }

    pub fn triangle_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.corners(t);
        triangle_area(&a, &b, &c)
    }

    pub fn total_area(&self) -> f64 {
        (0..self.complex.triangle_count())
            .map(|t| self.triangle_area(t))
            .sum()
    }

    pub fn edge_length(&self, a: usize, b: usize) -> f64 {
        (self.positions[a] - self.positions[b]).norm()
    }

    /// Interior angle of triangle `t` at its corner `v`.
    pub fn angle_at(&self, t: usize, v: usize) -> Result<f64, MeshError> {
        let tri = self.complex.triangle(t);
        let k = tri
            .iter()
            .position(|&u| u == v)
            .ok_or(MeshError::NotACorner { triangle: t, vertex: v })?;
        if self.is_degenerate(t, EPS_DEGENERATE) {
            return Err(MeshError::DegenerateTriangle(t));
        }
        let a = self.positions[tri[k]];
        let b = self.positions[tri[(k + 1) % 3]];
        let c = self.positions[tri[(k + 2) % 3]];
        Ok(corner_angle(&a, &b, &c))
    }

    /// Twice the area is compared against `eps * diameter²`.
    pub fn is_degenerate(&self, t: usize, eps: f64) -> bool {
        let d = self.diameter();
        2.0 * self.triangle_area(t) <= eps * d * d
    }

    pub fn degenerate_triangles(&self, eps: f64) -> Vec<usize> {
        let d = self.diameter();
        let threshold = eps * d * d;
        (0..self.complex.triangle_count())
            .filter(|&t| 2.0 * self.triangle_area(t) <= threshold)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn fan(n: usize) -> Vec<[usize; 3]> {
        (0..n).map(|k| [n, k, (k + 1) % n]).collect()
    }

    #[test]
    fn single_triangle() {
        let c = DiscComplex::from_triangles(&[[0, 1, 2]]).unwrap();
        assert_eq!(
            (c.vertex_count(), c.edge_count(), c.triangle_count()),
            (3, 3, 1)
        );
        assert_eq!(c.boundary_cycle().len(), 3);
        assert_eq!(c.interior_vertices().count(), 0);
    }

    #[test]
    fn twelve_fan() {
        let c = DiscComplex::from_triangles(&fan(12)).unwrap();
        assert_eq!(
            (c.vertex_count(), c.edge_count(), c.triangle_count()),
            (13, 24, 12)
        );
        assert_eq!(c.euler_characteristic(), 1);
        assert_eq!(c.interior_vertices().collect::<Vec<_>>(), vec![12]);
        assert!(c.no_triangle_violations().is_empty());
        match c.vertex_star(12).unwrap() {
            Star::Cycle(n) => {
                assert_eq!(n.len(), 12);
                // rotational order follows the boundary
                for w in n.windows(2) {
                    assert_eq!((w[0] + 1) % 12, w[1]);
                }
            }
            s => panic!("expected a cycle, got {s:?}"),
        }
    }

    #[test]
    fn two_copies_of_a_triangle_rejected() {
        let err = DiscComplex::from_triangles(&[[0, 1, 2], [0, 2, 1]]).unwrap_err();
        assert!(matches!(
            err,
            MeshError::WrongEuler(_) | MeshError::NonManifoldEdge(..)
        ));
    }

    #[test]
    fn topology_errors() {
        // three triangles on one edge
        assert!(matches!(
            DiscComplex::from_triangles(&[[0, 1, 2], [0, 1, 3], [0, 1, 4]]),
            Err(MeshError::NonManifoldEdge(0, 1, 3))
        ));
        assert_eq!(
            DiscComplex::from_triangles(&[[0, 1, 2], [3, 4, 5]]),
            Err(MeshError::DisconnectedComplex)
        );
        // closed octahedron
        let oct = [
            [0, 2, 4],
            [2, 1, 4],
            [1, 3, 4],
            [3, 0, 4],
            [2, 0, 5],
            [1, 2, 5],
            [3, 1, 5],
            [0, 3, 5],
        ];
        assert_eq!(
            DiscComplex::from_triangles(&oct),
            Err(MeshError::WrongEuler(2))
        );
        // annulus: square ring around a square hole
        let mut ring = Vec::new();
        for k in 0..4 {
            let (o0, o1, i0, i1) = (k, (k + 1) % 4, 4 + k, 4 + (k + 1) % 4);
            ring.push([o0, o1, i1]);
            ring.push([o0, i1, i0]);
        }
        assert_eq!(
            DiscComplex::from_triangles(&ring),
            Err(MeshError::WrongEuler(0))
        );
        assert_eq!(
            DiscComplex::from_triangles(&[[0, 0, 1]]),
            Err(MeshError::RepeatedVertex(0))
        );
        assert!(matches!(
            DiscComplex::build(3, &[[0, 1, 3]]),
            Err(MeshError::IndexOutOfRange { vertex: 3, .. })
        ));
        assert_eq!(DiscComplex::from_triangles(&[]), Err(MeshError::Empty));
    }

    #[test]
    fn orientation_is_repaired() {
        // second triangle given with the wrong orientation
        let c = DiscComplex::from_triangles(&[[0, 1, 2], [1, 2, 3]]).unwrap();
        assert_eq!(c.triangle(1), [1, 3, 2]);
        assert_eq!(c.boundary_cycle(), &[0, 1, 3, 2]);
    }

    #[test]
    fn boundary_star_is_path() {
        let c = DiscComplex::from_triangles(&[[0, 1, 2]]).unwrap();
        assert_eq!(c.vertex_star(0).unwrap(), Star::Path(vec![1, 2]));
    }

    #[test]
    fn areas_and_angles() {
        let right = PolyhedralDisc::from_triangles(
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
            ],
            &[[0, 1, 2]],
        )
        .unwrap();
        assert_eq!(right.total_area(), 0.5);
        assert!((right.angle_at(0, 0).unwrap() - PI / 2.0).abs() < 1e-15);
        assert!(matches!(
            right.angle_at(0, 7),
            Err(MeshError::NotACorner { .. })
        ));

        let square = PolyhedralDisc::from_triangles(
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(1.0, 1.0, 0.0),
                Vec3::new(0.0, 1.0, 0.0),
            ],
            &[[0, 1, 2], [0, 2, 3]],
        )
        .unwrap();
        assert!((square.total_area() - 1.0).abs() < 1e-15);

        let h = 3f64.sqrt() / 2.0;
        let eq = PolyhedralDisc::from_triangles(
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(0.5, h, 0.0),
            ],
            &[[0, 1, 2]],
        )
        .unwrap();
        for v in 0..3 {
            assert!((eq.angle_at(0, v).unwrap() - PI / 3.0).abs() < 1e-12);
        }
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let err = PolyhedralDisc::from_triangles(
            vec![
                Vec3::new(0.0, 0.0, 0.0),
                Vec3::new(1.0, 0.0, 0.0),
                Vec3::new(2.0, 0.0, 0.0),
            ],
            &[[0, 1, 2]],
        )
        .unwrap_err();
        assert_eq!(err, MeshError::DegenerateTriangle(0));
    }

    #[test]
    fn heron_matches_cross_product() {
        let a = Vec3::new(0.1, -0.3, 0.7);
        let b = Vec3::new(1.3, 0.2, -0.4);
        let c = Vec3::new(-0.5, 0.9, 0.2);
        let lab = (a - b).norm();
        let lbc = (b - c).norm();
        let lca = (c - a).norm();
        assert!((heron_area(lab, lbc, lca) - triangle_area(&a, &b, &c)).abs() < 1e-14);
    }

    #[test]
    fn no_triangle_violation_in_subdivided_hexagon() {
        // hexagon 0..5, chords 0-2-4 bound a central triangle split by hub 6
        let tris = [
            [0, 1, 2],
            [2, 3, 4],
            [4, 5, 0],
            [0, 2, 6],
            [2, 4, 6],
            [4, 0, 6],
        ];
        let c = DiscComplex::from_triangles(&tris).unwrap();
        assert_eq!(c.no_triangle_violations(), vec![[0, 2, 4]]);
    }
}
