//! Embedding surgery: local edits of a drawing that preserve a valid
//! rotation system.  All anchors are darts, which are stable identifiers
//! across edits (existing darts never move between nodes).
//!
//! With the face convention `next(d) = rot_next(twin(d))`, inserting the new
//! dart of an added edge immediately *before* the anchor dart in its node's
//! rotation places the new edge in the corner that the anchor dart departs
//! from.

use super::{Cell, Cells, Dart, Drawing, Edge, EdgeId, Error, Node, Result, VertexId};
use crate::error::Error as E;

impl Drawing {
    /// A triangle on vertices 0,1,2: the smallest simple drawing.
    pub fn triangle() -> Drawing {
        let edges = vec![
            Edge { u: 0, v: 1 },
            Edge { u: 1, v: 2 },
            Edge { u: 2, v: 0 },
        ];
        // ccw rotations
        let vertex_rot = vec![vec![0, 9], vec![4, 1], vec![8, 5]];
        Drawing::new(3, edges, Vec::new(), vertex_rot, Vec::new()).expect("triangle is valid")
    }

    /// The one-vertex drawing.
    pub fn single_vertex() -> Drawing {
        Drawing::new(1, Vec::new(), Vec::new(), vec![Vec::new()], Vec::new())
            .expect("single vertex is valid")
    }

    fn insert_before(&mut self, anchor: Dart, new_dart: Dart) {
        let node = self.node_of_dart(anchor);
        match node {
            Node::Vertex(v) => {
                let rot = &mut self.vertex_rot[v];
                let pos = rot.iter().position(|&x| x == anchor).expect("anchor present");
                rot.insert(pos, new_dart);
            }
            Node::Cross(_) => unreachable!("new darts are only inserted at vertices"),
        }
    }

    fn vertex_of_corner(&self, d: Dart) -> Result<VertexId> {
        match self.node_of_dart(d) {
            Node::Vertex(v) => Ok(v),
            Node::Cross(_) => Err(E::InvalidSurgery(format!(
                "dart {d} is attached to a crossing, not a vertex"
            ))),
        }
    }

    fn circuit_positions(cell: &Cell, anchors: &[Dart]) -> Result<Vec<usize>> {
        anchors
            .iter()
            .map(|&a| {
                cell.darts
                    .iter()
                    .position(|&d| d == a)
                    .ok_or_else(|| E::InvalidSurgery(format!("dart {a} not on the target cell")))
            })
            .collect()
    }

    /// Adds a new vertex inside the cell containing the anchor darts and
    /// connects it to the corner of each anchor.  Anchors must lie on one
    /// boundary circuit, listed in circuit order.  Returns the new vertex id.
    pub fn add_vertex_in_cell(&mut self, anchors: &[Dart]) -> Result<VertexId> {
        if anchors.is_empty() {
            return Err(E::InvalidSurgery("no anchors given".into()));
        }
        let cells = self.cells();
        let cell = &cells[cells.cell_of(anchors[0])];
        for &a in anchors {
            if cells.cell_of(a) != cell.id {
                return Err(E::InvalidSurgery(
                    "anchors do not lie on a single cell".into(),
                ));
            }
        }
        let pos = Self::circuit_positions(cell, anchors)?;
        // Cyclic order check: positions strictly increase after rotating the
        // smallest to the front.
        if anchors.len() >= 2 {
            let min_at = pos
                .iter()
                .enumerate()
                .min_by_key(|(_, &p)| p)
                .map(|(i, _)| i)
                .unwrap();
            let rotated: Vec<usize> = (0..pos.len()).map(|i| pos[(min_at + i) % pos.len()]).collect();
            if rotated.windows(2).any(|w| w[0] >= w[1]) {
                return Err(E::InvalidSurgery(
                    "anchors are not in circuit order".into(),
                ));
            }
        }
        let z = self.n;
        self.n += 1;
        self.vertex_rot.push(Vec::new());
        let mut z_darts = Vec::new();
        for &a in anchors {
            let va = self.vertex_of_corner(a)?;
            let e = self.edges.len();
            self.edges.push(Edge { u: va, v: z });
            self.crossing_of.push(None);
            self.insert_before(a, 4 * e);
            z_darts.push(4 * e + 1);
        }
        // Face closure requires the z-rotation to be the reverse of the
        // anchors' circuit order.
        z_darts.reverse();
        self.vertex_rot[z] = z_darts;
        debug_assert!(self.validate_structure_debug());
        Ok(z)
    }

    /// Adds an uncrossed edge between the corners of two darts on one
    /// boundary circuit, splitting the cell.  Returns the new edge id.
    pub fn add_chord(&mut self, a: Dart, b: Dart) -> Result<EdgeId> {
        let cells = self.cells();
        if cells.cell_of(a) != cells.cell_of(b) {
            return Err(E::InvalidSurgery("chord corners on different cells".into()));
        }
        if a == b {
            return Err(E::InvalidSurgery("chord needs two distinct corners".into()));
        }
        let va = self.vertex_of_corner(a)?;
        let vb = self.vertex_of_corner(b)?;
        if va == vb {
            return Err(E::InvalidSurgery("chord would create a loop".into()));
        }
        let e = self.edges.len();
        self.edges.push(Edge { u: va, v: vb });
        self.crossing_of.push(None);
        self.insert_before(a, 4 * e);
        self.insert_before(b, 4 * e + 1);
        debug_assert!(self.validate_structure_debug());
        Ok(e)
    }

    /// Adds an edge from the corner of `a` to the corner of `b` that crosses
    /// the uncrossed edge `crossed`; the two corners must lie on the two
    /// distinct cells flanking `crossed`.  Returns the new edge id.
    pub fn add_crossing_edge(&mut self, a: Dart, b: Dart, crossed: EdgeId) -> Result<EdgeId> {
        let e = self.edges.len();
        self.edges.push(Edge { u: 0, v: 0 }); // fixed up in the helper
        self.crossing_of.push(None);
        match self.install_crossing_edge(e, a, b, crossed) {
            Ok(()) => Ok(e),
            Err(err) => {
                self.edges.pop();
                self.crossing_of.pop();
                Err(err)
            }
        }
    }

    /// Re-routes the existing uncrossed edge `e` so that it now crosses
    /// `crossed`, entering at the corners of `a` and `b`.  The endpoints of
    /// `e` must equal the corner vertices.
    pub fn reroute_as_crossing(
        &mut self,
        e: EdgeId,
        a: Dart,
        b: Dart,
        crossed: EdgeId,
    ) -> Result<()> {
        if self.is_crossed(e) {
            return Err(E::InvalidSurgery(format!(
                "edge {e} is already crossed and cannot be re-routed"
            )));
        }
        if e == crossed {
            return Err(E::InvalidSurgery("edge cannot cross itself".into()));
        }
        // Detach the old curve.
        let old = self.edges[e];
        for (vertex, dart) in [(old.u, 4 * e), (old.v, 4 * e + 1)] {
            let rot = &mut self.vertex_rot[vertex];
            let pos = rot.iter().position(|&x| x == dart).expect("dart present");
            rot.remove(pos);
        }
        self.install_crossing_edge(e, a, b, crossed)
    }

    /// Shared mechanics for adding edge `e` (already allocated, no darts in
    /// any rotation) as a crossing edge over `crossed`.
    fn install_crossing_edge(&mut self, e: EdgeId, a: Dart, b: Dart, crossed: EdgeId) -> Result<()> {
        if self.is_crossed(crossed) {
            return Err(E::InvalidSurgery(format!(
                "edge {crossed} is already crossed; a second crossing would violate 1-planarity"
            )));
        }
        let va = self.vertex_of_corner(a)?;
        let vb = self.vertex_of_corner(b)?;
        if va == vb {
            return Err(E::InvalidSurgery("crossing edge would be a loop".into()));
        }
        let ce = self.edges[crossed];
        if va == ce.u || va == ce.v || vb == ce.u || vb == ce.v {
            return Err(E::InvalidSurgery(
                "crossing edge would share an endpoint with the crossed edge".into(),
            ));
        }
        let cells = self.cells();
        let (ca, cb) = (cells.cell_of(a), cells.cell_of(b));
        if ca == cb {
            return Err(E::InvalidSurgery(
                "both corners lie on the same cell; the edge would not cross".into(),
            ));
        }
        let h_u = 4 * crossed; // dart of `crossed` at ce.u
        let h_v = 4 * crossed + 1;
        let (cu, cv) = (cells.cell_of(h_u), cells.cell_of(h_v));
        if !((cu == ca && cv == cb) || (cu == cb && cv == ca)) {
            return Err(E::InvalidSurgery(
                "corners do not lie on the two cells flanking the crossed edge".into(),
            ));
        }
        self.edges[e] = Edge { u: va, v: vb };
        let x = self.crossings.len();
        self.crossings.push(super::Crossing { e1: crossed, e2: e });
        self.crossing_of[crossed] = Some(x);
        self.crossing_of[e] = Some(x);
        // Face-closure fixes the rotation at the dummy uniquely; see the
        // derivation in the module tests.
        let rot = if cu == ca {
            [4 * crossed + 2, 4 * e + 2, 4 * crossed + 3, 4 * e + 3]
        } else {
            [4 * crossed + 3, 4 * e + 2, 4 * crossed + 2, 4 * e + 3]
        };
        self.crossing_rot.push(rot);
        self.insert_before(a, 4 * e);
        self.insert_before(b, 4 * e + 1);
        debug_assert!(self.validate_structure_debug());
        Ok(())
    }

    fn validate_structure_debug(&self) -> bool {
        self.validate_structure().is_ok()
    }

    /// Re-validates all invariants; surgeries maintain them, this is a guard
    /// for release builds at construction sites that want certainty.
    pub fn revalidate(&self) -> Result<()> {
        self.validate_structure()
    }
}

/// Finds the dart of edge `e` whose cell is `cell`, i.e. the side of `e`
/// facing that cell.  Errors if `e` is crossed or not on the cell.
pub fn side_dart_of_edge(d: &Drawing, cells: &Cells, e: EdgeId, cell: usize) -> Result<Dart> {
    if d.is_crossed(e) {
        return Err(Error::InvalidSurgery(format!("edge {e} is crossed")));
    }
    for dart in [4 * e, 4 * e + 1] {
        if cells.cell_of(dart) == cell {
            return Ok(dart);
        }
    }
    Err(Error::InvalidSurgery(format!(
        "edge {e} does not bound cell {cell}"
    )))
}

/// First corner of vertex `v` on the given cell, as a dart departing `v`.
pub fn corner_of_vertex(d: &Drawing, cell: &Cell, v: VertexId) -> Result<Dart> {
    cell.darts
        .iter()
        .copied()
        .find(|&dart| d.node_of_dart(dart) == Node::Vertex(v))
        .ok_or_else(|| Error::InvalidSurgery(format!("vertex {v} not on cell {}", cell.id)))
}
