//! Combinatorial 1-planar drawings.
//!
//! A drawing is stored through its planarization: every crossing becomes a
//! dummy node of degree 4, and the embedding is a rotation system over real
//! vertices and crossing dummies.  Edge `e` owns four dart ids:
//!
//! * `4e + 0` — end of `e` at its first endpoint `u`,
//! * `4e + 1` — end of `e` at its second endpoint `v`,
//! * `4e + 2` — end of the `u`-side segment at the crossing (crossed edges only),
//! * `4e + 3` — end of the `v`-side segment at the crossing.
//!
//! For an uncrossed edge the darts `4e+0` and `4e+1` are twins; for a crossed
//! edge the twin pairs are `(4e+0, 4e+2)` and `(4e+1, 4e+3)`.  Cells (faces of
//! the planarization) are orbits of `d -> rot_next(twin(d))`.

mod build;
mod format;

pub use build::{corner_of_vertex, side_dart_of_edge};

use crate::error::{Error, Result};
use std::collections::VecDeque;

pub type Dart = usize;
pub type VertexId = usize;
pub type EdgeId = usize;
pub type CrossingId = usize;
pub type CellId = usize;

/// A node of the planarization: a real vertex or a crossing dummy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Node {
    Vertex(VertexId),
    Cross(CrossingId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.u == self.v
    }
    /// Endpoint pair with the smaller id first, used to group parallel copies.
    pub fn key(&self) -> (VertexId, VertexId) {
        (self.u.min(self.v), self.u.max(self.v))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub e1: EdgeId,
    pub e2: EdgeId,
}

#[derive(Debug, Clone)]
pub struct Drawing {
    n: usize,
    edges: Vec<Edge>,
    crossings: Vec<Crossing>,
    /// Per edge: the crossing it participates in, if any.
    crossing_of: Vec<Option<CrossingId>>,
    vertex_rot: Vec<Vec<Dart>>,
    crossing_rot: Vec<[Dart; 4]>,
}

/// One cell of the planarization.  Cells of a (connected) host drawing have a
/// single boundary circuit, except for the degenerate one-vertex drawing whose
/// only cell is bounded by a singleton circuit.
#[derive(Debug, Clone)]
pub struct Cell {
    pub id: CellId,
    /// Boundary circuit as a dart sequence (empty for a singleton circuit).
    pub darts: Vec<Dart>,
    /// Singleton-vertex circuit, for isolated vertices.
    pub singleton: Option<VertexId>,
    /// Corner at each circuit position (node the dart departs from).
    pub corners: Vec<Node>,
    /// Edge-incidence count of the boundary.
    pub m: usize,
    /// Number of boundary circuits.
    pub comp: usize,
    /// `m + 2 comp - 2`.
    pub degree: i64,
    /// True iff some corner is a crossing dummy.
    pub crossed: bool,
}

impl Cell {
    /// Distinct real vertices incident to the cell.
    pub fn vertices(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = self
            .corners
            .iter()
            .filter_map(|c| match c {
                Node::Vertex(v) => Some(*v),
                Node::Cross(_) => None,
            })
            .chain(self.singleton)
            .collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }
}

/// Face structure of a drawing, with a dart -> cell index.
#[derive(Debug, Clone)]
pub struct Cells {
    pub cells: Vec<Cell>,
    cell_of: Vec<usize>,
}

impl Cells {
    pub fn len(&self) -> usize {
        self.cells.len()
    }
    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
    pub fn cell_of(&self, d: Dart) -> CellId {
        self.cell_of[d]
    }
    pub fn iter(&self) -> std::slice::Iter<'_, Cell> {
        self.cells.iter()
    }
}

impl std::ops::Index<CellId> for Cells {
    type Output = Cell;
    fn index(&self, i: CellId) -> &Cell {
        &self.cells[i]
    }
}

/// Structural flags of a drawing (loops, parallel copies, triangulation).
#[derive(Debug, Clone)]
pub struct Diagnostics {
    /// No loops.
    pub n1: bool,
    /// Every parallel class has at most one crossed copy.
    pub n2: bool,
    /// Every parallel class with two or more copies is entirely uncrossed.
    pub n3: bool,
    pub simple: bool,
    pub triangulated: bool,
    pub loop_edges: Vec<EdgeId>,
    /// Parallel classes (by endpoint key) violating N2 / N3.
    pub n2_violations: Vec<(VertexId, VertexId)>,
    pub n3_violations: Vec<(VertexId, VertexId)>,
    pub nontriangle_cells: Vec<CellId>,
}

/// Presence of the kite-edge in each of the four quadrants around a crossing.
#[derive(Debug, Clone)]
pub struct KiteStatus {
    pub crossing: CrossingId,
    /// Endpoint vertices in rotation order around the dummy.
    pub endpoints: [VertexId; 4],
    /// `quadrants[i]` is the kite-edge joining `endpoints[i]` and
    /// `endpoints[(i+1)%4]` on the cell between the two segments, if present.
    pub quadrants: [Option<EdgeId>; 4],
}

impl KiteStatus {
    pub fn all_present(&self) -> bool {
        self.quadrants.iter().all(|q| q.is_some())
    }
    pub fn present_count(&self) -> usize {
        self.quadrants.iter().filter(|q| q.is_some()).count()
    }
}

impl Drawing {
    /// Builds a drawing from raw parts and validates every structural
    /// invariant (dart conservation, alternation, planarity, connectivity).
    pub fn new(
        n: usize,
        edges: Vec<Edge>,
        crossings: Vec<Crossing>,
        vertex_rot: Vec<Vec<Dart>>,
        crossing_rot: Vec<[Dart; 4]>,
    ) -> Result<Drawing> {
        let mut crossing_of = vec![None; edges.len()];
        for (x, c) in crossings.iter().enumerate() {
            for &e in &[c.e1, c.e2] {
                if e >= edges.len() {
                    return Err(Error::InvalidDrawing(format!(
                        "crossing {x} references unknown edge {e}"
                    )));
                }
                if crossing_of[e].is_some() {
                    return Err(Error::EdgeCrossedTwice(e));
                }
                crossing_of[e] = Some(x);
            }
        }
        let d = Drawing {
            n,
            edges,
            crossings,
            crossing_of,
            vertex_rot,
            crossing_rot,
        };
        d.validate_structure()?;
        Ok(d)
    }

    pub fn n(&self) -> usize {
        self.n
    }
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }
    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }
    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }
    pub fn crossing(&self, x: CrossingId) -> Crossing {
        self.crossings[x]
    }
    pub fn crossing_of(&self, e: EdgeId) -> Option<CrossingId> {
        self.crossing_of[e]
    }
    pub fn is_crossed(&self, e: EdgeId) -> bool {
        self.crossing_of[e].is_some()
    }
    pub fn vertex_rotation(&self, v: VertexId) -> &[Dart] {
        &self.vertex_rot[v]
    }
    pub fn crossing_rotation(&self, x: CrossingId) -> &[Dart; 4] {
        &self.crossing_rot[x]
    }

    /// The two edges of a crossing, as the partner of `e` at its crossing.
    pub fn crossing_partner(&self, e: EdgeId) -> Option<EdgeId> {
        self.crossing_of[e].map(|x| {
            let c = self.crossings[x];
            if c.e1 == e {
                c.e2
            } else {
                c.e1
            }
        })
    }

    pub fn edge_of_dart(d: Dart) -> EdgeId {
        d / 4
    }

    /// Whether the dart id denotes a live dart of this drawing.
    pub fn dart_live(&self, d: Dart) -> bool {
        let e = d / 4;
        e < self.edges.len() && (d % 4 < 2 || self.is_crossed(e))
    }

    pub fn twin(&self, d: Dart) -> Dart {
        let e = d / 4;
        match d % 4 {
            0 => {
                if self.is_crossed(e) {
                    4 * e + 2
                } else {
                    4 * e + 1
                }
            }
            1 => {
                if self.is_crossed(e) {
                    4 * e + 3
                } else {
                    4 * e
                }
            }
            2 => 4 * e,
            _ => 4 * e + 1,
        }
    }

    /// The planarization node a dart is attached to.
    pub fn node_of_dart(&self, d: Dart) -> Node {
        let e = d / 4;
        match d % 4 {
            0 => Node::Vertex(self.edges[e].u),
            1 => Node::Vertex(self.edges[e].v),
            _ => Node::Cross(self.crossing_of[e].expect("segment dart of uncrossed edge")),
        }
    }

    fn rotation_at(&self, node: Node) -> &[Dart] {
        match node {
            Node::Vertex(v) => &self.vertex_rot[v],
            Node::Cross(x) => &self.crossing_rot[x],
        }
    }

    /// Successor of `d` in the rotation at its node.
    pub fn rot_next(&self, d: Dart) -> Dart {
        let rot = self.rotation_at(self.node_of_dart(d));
        let pos = rot.iter().position(|&x| x == d).expect("dart in rotation");
        rot[(pos + 1) % rot.len()]
    }

    /// Successor along the cell boundary.
    pub fn next_in_face(&self, d: Dart) -> Dart {
        self.rot_next(self.twin(d))
    }

    fn live_darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..4 * self.edges.len()).filter(move |&d| self.dart_live(d))
    }

    /// Darts actually present in some rotation.  Equal to the live darts for
    /// every validated drawing; surgeries traverse intermediate states where
    /// an edge is allocated but not yet placed.
    fn placed_darts(&self) -> Vec<bool> {
        let mut placed = vec![false; 4 * self.edges.len()];
        for rot in &self.vertex_rot {
            for &d in rot {
                placed[d] = true;
            }
        }
        for rot in &self.crossing_rot {
            for &d in rot {
                placed[d] = true;
            }
        }
        placed
    }

    fn validate_structure(&self) -> Result<()> {
        if self.vertex_rot.len() != self.n {
            return Err(Error::InvalidDrawing(format!(
                "expected {} vertex rotations, found {}",
                self.n,
                self.vertex_rot.len()
            )));
        }
        if self.crossing_rot.len() != self.crossings.len() {
            return Err(Error::InvalidDrawing(format!(
                "expected {} crossing rotations, found {}",
                self.crossings.len(),
                self.crossing_rot.len()
            )));
        }
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.u >= self.n || edge.v >= self.n {
                return Err(Error::InvalidDrawing(format!(
                    "edge {e} has endpoint out of range"
                )));
            }
        }
        for (x, c) in self.crossings.iter().enumerate() {
            if c.e1 == c.e2 {
                return Err(Error::InvalidDrawing(format!(
                    "crossing {x} pairs edge {} with itself",
                    c.e1
                )));
            }
            let (a, b) = (self.edges[c.e1], self.edges[c.e2]);
            if a.is_loop() {
                return Err(Error::LoopCrossed(c.e1));
            }
            if b.is_loop() {
                return Err(Error::LoopCrossed(c.e2));
            }
            if a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v {
                return Err(Error::InvalidDrawing(format!(
                    "crossing {x} pairs adjacent edges {} and {}",
                    c.e1, c.e2
                )));
            }
        }

        // Dart conservation: every live dart appears exactly once, at the
        // node that owns it.
        let mut seen = vec![false; 4 * self.edges.len()];
        let mut check = |rot: &[Dart], node: Node| -> Result<()> {
            for &d in rot {
                if d >= 4 * self.edges.len() || !self.dart_live(d) {
                    return Err(Error::DanglingDart(d));
                }
                if seen[d] {
                    return Err(Error::DanglingDart(d));
                }
                seen[d] = true;
                if self.node_of_dart(d) != node {
                    return Err(Error::DanglingDart(d));
                }
            }
            Ok(())
        };
        for v in 0..self.n {
            check(&self.vertex_rot[v], Node::Vertex(v))?;
        }
        for x in 0..self.crossings.len() {
            check(&self.crossing_rot[x], Node::Cross(x))?;
            // Alternation: opposite positions belong to the same edge,
            // neighbouring positions to different edges.
            let rot = &self.crossing_rot[x];
            let eds: Vec<EdgeId> = rot.iter().map(|&d| d / 4).collect();
            if eds[0] != eds[2] || eds[1] != eds[3] || eds[0] == eds[1] {
                return Err(Error::NonAlternatingCrossing(x));
            }
            for &d in rot.iter() {
                if d % 4 < 2 {
                    return Err(Error::DanglingDart(d));
                }
            }
        }
        for d in self.live_darts() {
            if !seen[d] {
                return Err(Error::DanglingDart(d));
            }
        }

        self.check_connected()?;

        // Planarity of the rotation system via Euler's formula.
        let v = self.n + self.crossings.len();
        let e = self.planarized_edge_count();
        let f = self.count_faces();
        if self.n > 0 && v + f != e + 2 {
            return Err(Error::NotPlanar { v, e, f });
        }
        Ok(())
    }

    /// Number of edges of the planarization (each crossed edge contributes
    /// two segments).
    pub fn planarized_edge_count(&self) -> usize {
        self.edges.len() + 2 * self.crossings.len()
    }

    fn count_faces(&self) -> usize {
        let placed = self.placed_darts();
        let mut visited = vec![false; 4 * self.edges.len()];
        let mut faces = 0;
        for d0 in (0..4 * self.edges.len()).filter(|&d| placed[d]) {
            if visited[d0] {
                continue;
            }
            faces += 1;
            let mut d = d0;
            loop {
                visited[d] = true;
                d = self.next_in_face(d);
                if d == d0 {
                    break;
                }
            }
        }
        // Isolated vertices each bound their own face.
        faces + (0..self.n).filter(|&v| self.vertex_rot[v].is_empty()).count()
    }

    fn check_connected(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidDrawing("drawing has no vertices".into()));
        }
        if self.n == 1 {
            return Ok(());
        }
        // BFS over planarization nodes.
        let total = self.n + self.crossings.len();
        let idx = |node: Node| match node {
            Node::Vertex(v) => v,
            Node::Cross(x) => self.n + x,
        };
        let mut seen = vec![false; total];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(Node::Vertex(0));
        let mut count = 1;
        while let Some(node) = queue.pop_front() {
            for &d in self.rotation_at(node) {
                let other = self.node_of_dart(self.twin(d));
                if !seen[idx(other)] {
                    seen[idx(other)] = true;
                    count += 1;
                    queue.push_back(other);
                }
            }
        }
        if count != total {
            return Err(Error::Disconnected);
        }
        Ok(())
    }

    /// Computes all cells of the planarization.  Deterministic: cells are
    /// ordered by their smallest dart and each circuit starts at it.
    pub fn cells(&self) -> Cells {
        let placed = self.placed_darts();
        let mut cell_of = vec![usize::MAX; 4 * self.edges.len()];
        let mut cells = Vec::new();
        for d0 in (0..4 * self.edges.len()).filter(|&d| placed[d]) {
            if cell_of[d0] != usize::MAX {
                continue;
            }
            let id = cells.len();
            let mut darts = Vec::new();
            let mut d = d0;
            loop {
                cell_of[d] = id;
                darts.push(d);
                d = self.next_in_face(d);
                if d == d0 {
                    break;
                }
            }
            let corners: Vec<Node> = darts.iter().map(|&d| self.node_of_dart(d)).collect();
            let m = darts.len();
            let crossed = corners.iter().any(|c| matches!(c, Node::Cross(_)));
            cells.push(Cell {
                id,
                darts,
                singleton: None,
                corners,
                m,
                comp: 1,
                degree: m as i64,
                crossed,
            });
        }
        for v in 0..self.n {
            if self.vertex_rot[v].is_empty() {
                let id = cells.len();
                cells.push(Cell {
                    id,
                    darts: Vec::new(),
                    singleton: Some(v),
                    corners: Vec::new(),
                    m: 0,
                    comp: 1,
                    degree: 0,
                    crossed: false,
                });
            }
        }
        Cells { cells, cell_of }
    }

    /// Left-hand side of the face-degree identity: `sum (deg - 2)` over cells.
    /// Equals `2 (n + #crossings) - 4` for every valid drawing.
    pub fn face_degree_sum(&self) -> i64 {
        self.cells().iter().map(|c| c.degree - 2).sum()
    }

    /// Structural flags N1-N3, simplicity and triangulation.
    pub fn diagnostics(&self) -> Diagnostics {
        let mut loop_edges = Vec::new();
        let mut classes: std::collections::BTreeMap<(usize, usize), Vec<EdgeId>> =
            std::collections::BTreeMap::new();
        for (e, edge) in self.edges.iter().enumerate() {
            if edge.is_loop() {
                loop_edges.push(e);
            }
            classes.entry(edge.key()).or_default().push(e);
        }
        let mut n2_violations = Vec::new();
        let mut n3_violations = Vec::new();
        let mut any_parallel = false;
        for (key, members) in &classes {
            if members.len() < 2 {
                continue;
            }
            any_parallel = true;
            let crossed = members.iter().filter(|&&e| self.is_crossed(e)).count();
            if crossed > 1 {
                n2_violations.push(*key);
            }
            if crossed > 0 {
                n3_violations.push(*key);
            }
        }
        let cells = self.cells();
        let nontriangle_cells: Vec<CellId> = cells
            .iter()
            .filter(|c| c.degree != 3)
            .map(|c| c.id)
            .collect();
        let n1 = loop_edges.is_empty();
        Diagnostics {
            n1,
            n2: n2_violations.is_empty(),
            n3: n3_violations.is_empty(),
            simple: n1 && !any_parallel,
            triangulated: nontriangle_cells.is_empty(),
            loop_edges,
            n2_violations,
            n3_violations,
            nontriangle_cells,
        }
    }

    /// Kite-edge presence in the four quadrants around crossing `x`.
    pub fn kite_edge_status(&self, cells: &Cells, x: CrossingId) -> Result<KiteStatus> {
        if x >= self.crossings.len() {
            return Err(Error::InvalidDrawing(format!("unknown crossing id {x}")));
        }
        let rot = &self.crossing_rot[x];
        let endpoint = |d: Dart| -> VertexId {
            match self.node_of_dart(self.twin(d)) {
                Node::Vertex(v) => v,
                Node::Cross(_) => unreachable!("segment twin ends at a vertex"),
            }
        };
        let mut endpoints = [0; 4];
        let mut quadrants = [None; 4];
        for i in 0..4 {
            endpoints[i] = endpoint(rot[i]);
        }
        for i in 0..4 {
            let a = endpoints[i];
            let b = endpoints[(i + 1) % 4];
            // The cell of the corner between rot[i] and rot[i+1] is the cell
            // containing rot[(i+1)%4].
            let cell = &cells[cells.cell_of(rot[(i + 1) % 4])];
            quadrants[i] = cell
                .darts
                .iter()
                .map(|&d| d / 4)
                .find(|&e| self.edges[e].key() == (a.min(b), a.max(b)) && a != b);
        }
        Ok(KiteStatus {
            crossing: x,
            endpoints,
            quadrants,
        })
    }

    /// All kite statuses; convenience for "all possible kite-edges exist".
    pub fn all_kite_edges_present(&self) -> bool {
        let cells = self.cells();
        (0..self.crossings.len())
            .all(|x| self.kite_edge_status(&cells, x).map(|k| k.all_present()).unwrap_or(false))
    }

    /// Distinct non-loop edges of the underlying simple graph.
    pub fn simple_edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut es: Vec<(usize, usize)> = self
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .map(|e| e.key())
            .collect();
        es.sort_unstable();
        es.dedup();
        es
    }

    /// Adjacency test on the underlying graph (any copy, crossed or not).
    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges
            .iter()
            .any(|e| e.key() == (a.min(b), a.max(b)) && a != b)
    }

    /// Component structure of the underlying graph after deleting `s`.
    /// Returns (component count, odd component count, component vertex lists).
    pub fn components_minus(&self, s: &[VertexId]) -> (usize, usize, Vec<Vec<VertexId>>) {
        let mut removed = vec![false; self.n];
        for &v in s {
            removed[v] = true;
        }
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.simple_edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = removed.clone();
        let mut comps = Vec::new();
        for v0 in 0..self.n {
            if seen[v0] {
                continue;
            }
            let mut comp = vec![v0];
            seen[v0] = true;
            let mut queue = VecDeque::from([v0]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        let odd = comps.iter().filter(|c| c.len() % 2 == 1).count();
        (comps.len(), odd, comps)
    }

    /// Exhaustive cut-vertex / cutting-pair test on the underlying simple
    /// graph.  Errors when the graph has fewer than 4 vertices.
    pub fn is_three_connected(&self) -> Result<bool> {
        if self.n < 4 {
            return Err(Error::Precondition(format!(
                "3-connectivity test needs at least 4 vertices, got {}",
                self.n
            )));
        }
        let mut adj = vec![Vec::new(); self.n];
        for (a, b) in self.simple_edges() {
            adj[a].push(b);
            adj[b].push(a);
        }
        let connected_without = |cut: &[VertexId]| -> bool {
            let mut removed = vec![false; self.n];
            for &v in cut {
                removed[v] = true;
            }
            let start = (0..self.n).find(|&v| !removed[v]);
            let Some(start) = start else { return true };
            let mut seen = removed.clone();
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            let mut count = 1;
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        queue.push_back(w);
                    }
                }
            }
            count == self.n - cut.len()
        };
        if !connected_without(&[]) {
            return Ok(false);
        }
        for a in 0..self.n {
            if !connected_without(&[a]) {
                return Ok(false);
            }
        }
        for a in 0..self.n {
            for b in a + 1..self.n {
                if !connected_without(&[a, b]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
