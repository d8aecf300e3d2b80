//! Canonical drawings of the extremal families, plus small fixtures.
//!
//! Everything is built on the bipyramid: a base cycle of length `s - 2`
//! (vertex ids `0..s-2`) and two apices `c = s - 2`, `c' = s - 1` adjacent to
//! every base vertex.  Faces are filled with K4, K6 or crossed-K4 inserts and
//! triangles are attached at edges; deterministic ids make generated
//! drawings byte-stable.

use crate::drawing::{
    corner_of_vertex, side_dart_of_edge, CellId, Cells, Drawing, EdgeId, Node, VertexId,
};
use crate::error::{Error, Result};
use crate::saturation::triangulate;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyTag {
    Bipyramid,
    BipyramidT,
    G1,
    G2,
    Gamma3,
    Gamma4,
    G5,
    G6,
    LoopStar,
    DoubleK6A,
    DoubleK6B,
}

impl FamilyTag {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyTag::Bipyramid => "bipyramid",
            FamilyTag::BipyramidT => "bipyramid-t",
            FamilyTag::G1 => "g1",
            FamilyTag::G2 => "g2",
            FamilyTag::Gamma3 => "gamma3",
            FamilyTag::Gamma4 => "gamma4",
            FamilyTag::G5 => "g5",
            FamilyTag::G6 => "g6",
            FamilyTag::LoopStar => "loop-star",
            FamilyTag::DoubleK6A => "double-k6-a",
            FamilyTag::DoubleK6B => "double-k6-b",
        }
    }

    pub fn parse(name: &str) -> Option<FamilyTag> {
        Some(match name {
            "bipyramid" => FamilyTag::Bipyramid,
            "bipyramid-t" | "bipyramidt" => FamilyTag::BipyramidT,
            "g1" => FamilyTag::G1,
            "g2" => FamilyTag::G2,
            "gamma3" => FamilyTag::Gamma3,
            "gamma4" => FamilyTag::Gamma4,
            "g5" => FamilyTag::G5,
            "g6" => FamilyTag::G6,
            "loop-star" | "loopstar" => FamilyTag::LoopStar,
            "double-k6-a" => FamilyTag::DoubleK6A,
            "double-k6-b" => FamilyTag::DoubleK6B,
            _ => return None,
        })
    }

    pub fn all() -> [FamilyTag; 11] {
        [
            FamilyTag::Bipyramid,
            FamilyTag::BipyramidT,
            FamilyTag::G1,
            FamilyTag::G2,
            FamilyTag::Gamma3,
            FamilyTag::Gamma4,
            FamilyTag::G5,
            FamilyTag::G6,
            FamilyTag::LoopStar,
            FamilyTag::DoubleK6A,
            FamilyTag::DoubleK6B,
        ]
    }
}

/// A generated drawing together with its expected invariants.
#[derive(Debug, Clone)]
pub struct GeneratedInstance {
    pub drawing: Drawing,
    pub family: FamilyTag,
    pub s: usize,
    pub expected_n: usize,
    pub expected_mu: usize,
    pub expected_deficiency: i64,
    /// Tutte-Berge witness set (bipyramid vertices for the main families).
    pub witness: Vec<VertexId>,
}

impl GeneratedInstance {
    pub fn meta_text(&self) -> String {
        let witness = self
            .witness
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "family = {}\ns = {}\nn = {}\nmu = {}\ndeficiency = {}\nwitness = {}\n",
            self.family.name(),
            self.s,
            self.expected_n,
            self.expected_mu,
            self.expected_deficiency,
            witness
        )
    }
}

/// Parses the sidecar metadata written next to generated drawing files.
pub fn parse_meta(text: &str) -> Result<(FamilyTag, usize, usize, usize, i64, Vec<VertexId>)> {
    let mut family = None;
    let (mut s, mut n, mut mu) = (0usize, 0usize, 0usize);
    let mut deficiency = 0i64;
    let mut witness = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
            line: lineno + 1,
            msg: "expected `key = value`".into(),
        })?;
        let value = value.trim();
        match key.trim() {
            "family" => family = FamilyTag::parse(value),
            "s" => s = value.parse().unwrap_or(0),
            "n" => n = value.parse().unwrap_or(0),
            "mu" => mu = value.parse().unwrap_or(0),
            "deficiency" => deficiency = value.parse().unwrap_or(0),
            "witness" => {
                witness = value
                    .split_whitespace()
                    .map(|t| t.parse().unwrap_or(0))
                    .collect()
            }
            _ => {}
        }
    }
    let family = family.ok_or(Error::Parse {
        line: 0,
        msg: "missing or unknown family".into(),
    })?;
    Ok((family, s, n, mu, deficiency, witness))
}

/// Color of a bipyramid face in the proper 2-coloring (s even).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FaceColor {
    White,
    Black,
}

/// The planar bipyramid `B_s` with its face handles.
#[derive(Debug, Clone)]
pub struct Bipyramid {
    pub drawing: Drawing,
    pub s: usize,
    /// `coloring[apex][i]` for face `(apex, u_i, u_{i+1})`; present iff s even.
    pub coloring: Option<[Vec<FaceColor>; 2]>,
}

impl Bipyramid {
    pub fn base_len(&self) -> usize {
        self.s - 2
    }
    pub fn apex(&self, side: usize) -> VertexId {
        self.s - 2 + side
    }
    pub fn base_edge(&self, i: usize) -> EdgeId {
        i
    }
    pub fn apex_edge(&self, side: usize, i: usize) -> EdgeId {
        (1 + side) * self.base_len() + i
    }
    /// Corner vertices of face `(side, i)`.
    pub fn face_vertices(&self, side: usize, i: usize) -> [VertexId; 3] {
        let m = self.base_len();
        [self.apex(side), i, (i + 1) % m]
    }
}

/// Planar triangulated bipyramid: base cycle `u_0..u_{s-3}`, apices
/// `c = s-2` inside and `c' = s-1` outside.
pub fn bipyramid(s: usize) -> Result<Bipyramid> {
    if s < 5 {
        return Err(Error::Precondition(format!(
            "bipyramid needs s >= 5, got {s}"
        )));
    }
    let m = s - 2;
    let c = m;
    let cp = m + 1;
    let mut edges = Vec::new();
    for i in 0..m {
        edges.push(crate::drawing::Edge { u: i, v: (i + 1) % m }); // base e_i
    }
    for i in 0..m {
        edges.push(crate::drawing::Edge { u: c, v: i }); // c-apex
    }
    for i in 0..m {
        edges.push(crate::drawing::Edge { u: cp, v: i }); // c'-apex
    }
    let mut vertex_rot = vec![Vec::new(); s];
    for i in 0..m {
        let prev = (i + m - 1) % m;
        vertex_rot[i] = vec![
            4 * (2 * m + i) + 1, // to c'
            4 * i,               // to u_{i+1}
            4 * (m + i) + 1,     // to c
            4 * prev + 1,        // to u_{i-1}
        ];
    }
    vertex_rot[c] = (0..m).map(|i| 4 * (m + i)).collect();
    vertex_rot[cp] = (0..m).map(|i| 4 * (2 * m + (m - i) % m)).collect();
    let drawing = Drawing::new(s, edges, Vec::new(), vertex_rot, Vec::new())?;
    let coloring = if s % 2 == 0 {
        let c_side: Vec<FaceColor> = (0..m)
            .map(|i| if i % 2 == 0 { FaceColor::White } else { FaceColor::Black })
            .collect();
        let cp_side: Vec<FaceColor> = (0..m)
            .map(|i| if i % 2 == 0 { FaceColor::Black } else { FaceColor::White })
            .collect();
        Some([c_side, cp_side])
    } else {
        None
    };
    Ok(Bipyramid { drawing, s, coloring })
}

/// The pairing between bipyramid faces and apex-edges: face
/// `(apex, u_i, u_{i+1})` is paired with edge `(apex, u_i)`.
#[derive(Debug, Clone)]
pub struct ApexPairing {
    /// `(side, face index, apex edge id)`.
    pub pairs: Vec<(usize, usize, EdgeId)>,
}

pub fn apex_pairing(b: &Bipyramid) -> ApexPairing {
    let m = b.base_len();
    let mut pairs = Vec::new();
    for side in 0..2 {
        for i in 0..m {
            pairs.push((side, i, b.apex_edge(side, i)));
        }
    }
    // Bijection and incidence sanity.
    let mut seen = std::collections::HashSet::new();
    for &(side, i, e) in &pairs {
        assert!(seen.insert(e), "pairing must be injective");
        let fv = b.face_vertices(side, i);
        let edge = b.drawing.edge(e);
        assert!(
            fv.contains(&edge.u) && fv.contains(&edge.v),
            "paired edge must be incident to its face"
        );
    }
    ApexPairing { pairs }
}

/// Finds the unique uncrossed cell whose corners are exactly `verts`.
pub fn find_face_cell(cells: &Cells, verts: &[VertexId]) -> Result<CellId> {
    let mut want: Vec<VertexId> = verts.to_vec();
    want.sort_unstable();
    let mut found = None;
    for cell in cells.iter() {
        if cell.crossed || cell.m != verts.len() {
            continue;
        }
        if cell.vertices() == want {
            if found.is_some() {
                return Err(Error::Precondition(format!(
                    "cell with corners {want:?} is not unique"
                )));
            }
            found = Some(cell.id);
        }
    }
    found.ok_or_else(|| Error::Precondition(format!("no cell with corners {want:?}")))
}

/// Corner darts of the given vertices on one cell, sorted in circuit order
/// starting from the first listed vertex.
fn corners_in_circuit_order(
    d: &Drawing,
    cells: &Cells,
    cell: CellId,
    verts: &[VertexId],
) -> Result<Vec<crate::drawing::Dart>> {
    let cell = &cells[cell];
    let mut picked: Vec<(usize, crate::drawing::Dart)> = Vec::new();
    for &v in verts {
        let dart = corner_of_vertex(d, cell, v)?;
        let pos = cell.darts.iter().position(|&x| x == dart).unwrap();
        picked.push((pos, dart));
    }
    let first = picked[0].0;
    let len = cell.darts.len();
    picked.sort_by_key(|&(p, _)| (p + len - first) % len);
    Ok(picked.into_iter().map(|(_, d)| d).collect())
}

/// Attaches a triangle at uncrossed edge `e`: a new degree-2 vertex inside
/// cell `side`, adjacent to both endpoints of `e`.
pub fn attach_triangle(d: &mut Drawing, e: EdgeId, side: CellId) -> Result<VertexId> {
    if d.is_crossed(e) {
        return Err(Error::Precondition(format!(
            "cannot attach a triangle at crossed edge {e}"
        )));
    }
    let cells = d.cells();
    let h = side_dart_of_edge(d, &cells, e, side)?;
    let next = d.next_in_face(h);
    d.add_vertex_in_cell(&[h, next])
}

fn check_triangle_face(cells: &Cells, face: CellId) -> Result<[VertexId; 3]> {
    let cell = &cells[face];
    if cell.crossed || cell.degree != 3 {
        return Err(Error::Precondition(format!(
            "cell {face} is not an uncrossed triangle"
        )));
    }
    let vs = cell.vertices();
    if vs.len() != 3 {
        return Err(Error::Precondition(format!(
            "cell {face} does not have three distinct vertices"
        )));
    }
    Ok([vs[0], vs[1], vs[2]])
}

/// Inserts a planar K4: one new vertex adjacent to the three corners of an
/// uncrossed triangular face.
pub fn insert_k4(d: &mut Drawing, face: CellId) -> Result<VertexId> {
    let cells = d.cells();
    check_triangle_face(&cells, face)?;
    let anchors = cells[face].darts.clone();
    d.add_vertex_in_cell(&anchors)
}

/// Inserts a K6 into an uncrossed triangular face: three new vertices
/// adjacent to each other and to all three corners, drawn with the three
/// crossings of the canonical 1-planar K6 layout; the face's own edges stay
/// uncrossed.  Returns the new vertex ids.
pub fn insert_k6(d: &mut Drawing, face: CellId) -> Result<[VertexId; 3]> {
    let cells = d.cells();
    check_triangle_face(&cells, face)?;
    let circuit = cells[face].darts.clone();
    let (u, v, w) = match (
        d.node_of_dart(circuit[0]),
        d.node_of_dart(circuit[1]),
        d.node_of_dart(circuit[2]),
    ) {
        (Node::Vertex(a), Node::Vertex(b), Node::Vertex(c)) => (a, b, c),
        _ => unreachable!("triangle corners are vertices"),
    };
    // z1 next to edge (u,v), then z2 and z3 filling the remaining quad.
    let z1 = d.add_vertex_in_cell(&[circuit[0], circuit[1]])?;
    let cells = d.cells();
    let quad = find_cell_with_vertices(&cells, &[z1, v, w, u], 4)?;
    let anchors = corners_in_circuit_order(d, &cells, quad, &[z1, v, w])?;
    let z2 = d.add_vertex_in_cell(&anchors)?;
    let cells = d.cells();
    let quad = find_cell_with_vertices(&cells, &[z2, w, u, z1], 4)?;
    let anchors = corners_in_circuit_order(d, &cells, quad, &[z2, w, u, z1])?;
    let z3 = d.add_vertex_in_cell(&anchors)?;
    // Diagonals, each crossing one spoke.
    add_diagonal(d, w, z1, (v, z2))?;
    add_diagonal(d, u, z2, (w, z3))?;
    add_diagonal(d, v, z3, (u, z1))?;
    Ok([z1, z2, z3])
}

fn edge_by_key(d: &Drawing, a: VertexId, b: VertexId) -> Result<EdgeId> {
    let key = (a.min(b), a.max(b));
    let matches: Vec<EdgeId> = (0..d.edges().len())
        .filter(|&e| d.edge(e).key() == key)
        .collect();
    match matches.as_slice() {
        [e] => Ok(*e),
        [] => Err(Error::Precondition(format!("no edge ({a},{b})"))),
        _ => Err(Error::Precondition(format!("edge ({a},{b}) is not unique"))),
    }
}

/// Adds edge (a,b) crossing the uncrossed edge `over`.
fn add_diagonal(d: &mut Drawing, a: VertexId, b: VertexId, over: (VertexId, VertexId)) -> Result<EdgeId> {
    let e = edge_by_key(d, over.0, over.1)?;
    let cells = d.cells();
    let (ca, cb) = (cells.cell_of(4 * e), cells.cell_of(4 * e + 1));
    let (da, db) = if corner_of_vertex(d, &cells[ca], a).is_ok() {
        (
            corner_of_vertex(d, &cells[ca], a)?,
            corner_of_vertex(d, &cells[cb], b)?,
        )
    } else {
        (
            corner_of_vertex(d, &cells[cb], a)?,
            corner_of_vertex(d, &cells[ca], b)?,
        )
    };
    d.add_crossing_edge(da, db, e)
}

fn find_cell_with_vertices(
    cells: &Cells,
    verts: &[VertexId],
    m: usize,
) -> Result<CellId> {
    let mut want: Vec<VertexId> = verts.to_vec();
    want.sort_unstable();
    let mut found = None;
    for cell in cells.iter() {
        if cell.crossed || cell.m != m {
            continue;
        }
        if cell.vertices() == want {
            if found.is_some() {
                return Err(Error::Precondition(format!(
                    "cell with corners {want:?} not unique"
                )));
            }
            found = Some(cell.id);
        }
    }
    found.ok_or_else(|| Error::Precondition(format!("no cell with corners {want:?}")))
}

/// Inserts a crossed K4 into an uncrossed triangular face: a new vertex `z`
/// adjacent to all three corners, after which the paired edge `e` (an edge of
/// the face) is re-routed to cross the one new edge not sharing an endpoint
/// with it.
pub fn insert_k4x(d: &mut Drawing, face: CellId, paired: EdgeId) -> Result<VertexId> {
    let cells = d.cells();
    let vs = check_triangle_face(&cells, face)?;
    if d.is_crossed(paired) {
        return Err(Error::Precondition(format!(
            "paired edge {paired} is already crossed"
        )));
    }
    let pe = d.edge(paired);
    if !vs.contains(&pe.u) || !vs.contains(&pe.v) {
        return Err(Error::Precondition(format!(
            "paired edge {paired} is not incident to the face"
        )));
    }
    let z = insert_k4(d, face)?;
    reroute_paired_edge(d, paired, z)?;
    Ok(z)
}

/// Re-routes apex/face edge `paired` so it crosses the spoke from `z` to the
/// face corner not on `paired`.
fn reroute_paired_edge(d: &mut Drawing, paired: EdgeId, z: VertexId) -> Result<()> {
    let pe = d.edge(paired);
    // The spoke (z,t) where t is z's neighbour not an endpoint of `paired`.
    let t = {
        let spokes: Vec<VertexId> = (0..d.edges().len())
            .filter_map(|e| {
                let edge = d.edge(e);
                if edge.u == z {
                    Some(edge.v)
                } else if edge.v == z {
                    Some(edge.u)
                } else {
                    None
                }
            })
            .filter(|&x| x != pe.u && x != pe.v)
            .collect();
        match spokes.as_slice() {
            [t] => *t,
            _ => {
                return Err(Error::Precondition(
                    "inserted vertex does not have a unique non-incident spoke".into(),
                ))
            }
        }
    };
    let spoke = edge_by_key(d, z, t)?;
    let cells = d.cells();
    let (ca, cb) = (cells.cell_of(4 * spoke), cells.cell_of(4 * spoke + 1));
    let (da, db) = if corner_of_vertex(d, &cells[ca], pe.u).is_ok() {
        (
            corner_of_vertex(d, &cells[ca], pe.u)?,
            corner_of_vertex(d, &cells[cb], pe.v)?,
        )
    } else {
        (
            corner_of_vertex(d, &cells[cb], pe.u)?,
            corner_of_vertex(d, &cells[ca], pe.v)?,
        )
    };
    d.reroute_as_crossing(paired, da, db, spoke)
}

fn require_even_s(tag: FamilyTag, s: usize) -> Result<()> {
    if s < 8 || s % 2 != 0 {
        return Err(Error::Precondition(format!(
            "family {} needs even s >= 8, got {s}",
            tag.name()
        )));
    }
    Ok(())
}

fn face_cell(b: &Bipyramid, d: &Drawing, side: usize, i: usize) -> Result<CellId> {
    let cells = d.cells();
    find_face_cell(&cells, &b.face_vertices(side, i))
}

/// `B_s` with a triangle attached at every base edge (drawn in the c-side
/// face).
fn build_bipyramid_t(s: usize) -> Result<Drawing> {
    let b = bipyramid(s)?;
    let mut d = b.drawing.clone();
    for i in 0..b.base_len() {
        let e = b.base_edge(i);
        let cells = d.cells();
        let side = cells.cell_of(4 * e);
        attach_triangle(&mut d, e, side)?;
    }
    Ok(d)
}

/// `Gamma_3(s)`: crossed K4 inserted into every bipyramid face using the
/// face/apex-edge pairing.  All vertex inserts happen first, then the paired
/// edges are re-routed; this realizes the same drawing as applying the
/// insert to each face in turn.
fn build_gamma3(s: usize) -> Result<(Drawing, Vec<VertexId>)> {
    let b = bipyramid(s)?;
    let pairing = apex_pairing(&b);
    let mut d = b.drawing.clone();
    let mut inserted = Vec::new();
    let mut z_of_pair = Vec::new();
    for &(side, i, e) in &pairing.pairs {
        let face = face_cell(&b, &d, side, i)?;
        let z = insert_k4(&mut d, face)?;
        inserted.push(z);
        z_of_pair.push((e, z));
    }
    for &(e, z) in &z_of_pair {
        reroute_paired_edge(&mut d, e, z)?;
    }
    Ok((d, inserted))
}

fn build_gamma4(s: usize) -> Result<Drawing> {
    let b = bipyramid(s)?;
    let (mut d, _) = build_gamma3(s)?;
    for i in 0..b.base_len() {
        let e = b.base_edge(i);
        let cells = d.cells();
        let side = cells.cell_of(4 * e);
        attach_triangle(&mut d, e, side)?;
    }
    Ok(d)
}

fn build_g1(s: usize) -> Result<Drawing> {
    let b = bipyramid(s)?;
    let coloring = b
        .coloring
        .clone()
        .ok_or_else(|| Error::Precondition("G1 needs even s".into()))?;
    let mut d = b.drawing.clone();
    for side in 0..2 {
        for i in 0..b.base_len() {
            let face = face_cell(&b, &d, side, i)?;
            match coloring[side][i] {
                FaceColor::White => {
                    insert_k4(&mut d, face)?;
                }
                FaceColor::Black => {
                    insert_k6(&mut d, face)?;
                }
            }
        }
    }
    Ok(d)
}

fn build_g2(s: usize) -> Result<Drawing> {
    let b = bipyramid(s)?;
    let mut d = b.drawing.clone();
    for side in 0..2 {
        for i in 0..b.base_len() {
            let face = face_cell(&b, &d, side, i)?;
            insert_k6(&mut d, face)?;
        }
    }
    // Triangles at every edge of B_s.
    for e in 0..b.drawing.edges().len() {
        let cells = d.cells();
        let side = cells.cell_of(4 * e);
        attach_triangle(&mut d, e, side)?;
    }
    Ok(d)
}

fn build_loop_star(k: usize) -> Result<Drawing> {
    if k < 3 {
        return Err(Error::Precondition(format!(
            "loop-star needs at least 3 leaves, got {k}"
        )));
    }
    let n = k + 1;
    let mut edges = Vec::new();
    for i in 0..k {
        edges.push(crate::drawing::Edge { u: 0, v: i + 1 }); // spokes
    }
    for _ in 0..k {
        edges.push(crate::drawing::Edge { u: 0, v: 0 }); // loops
    }
    let mut rot0 = Vec::new();
    for i in 0..k {
        rot0.push(4 * (k + i)); // loop opens
        rot0.push(4 * i); // spoke
        rot0.push(4 * (k + i) + 1); // loop closes around the leaf
    }
    let mut vertex_rot = vec![rot0];
    for i in 0..k {
        vertex_rot.push(vec![4 * i + 1]);
    }
    Drawing::new(n, edges, Vec::new(), vertex_rot, Vec::new())
}

/// Two K6's sharing an edge (vertices 0 and 1).  In the `saturated` variant
/// the second K6 hangs off the crossed cell flanking the shared edge, which
/// leaves a single degree-4 cell whose vertex pairs are all adjacent; in the
/// other variant it hangs off the uncrossed flank and the degree-4 cell
/// witnesses a missing edge.
fn build_double_k6(saturated: bool) -> Result<Drawing> {
    let mut d = Drawing::triangle();
    let cells = d.cells();
    let inner = cells.cell_of(0);
    insert_k6(&mut d, inner)?;
    let cells = d.cells();
    let (f0, f1) = (cells.cell_of(0), cells.cell_of(1));
    let side = if cells[f0].crossed == saturated { f0 } else { f1 };
    // Triangle (0, 1, w_b) inside the chosen flank, then the second K6.
    let h = side_dart_of_edge(&d, &cells, 0, side)?;
    let next = d.next_in_face(h);
    let wb = d.add_vertex_in_cell(&[h, next])?;
    let cells = d.cells();
    let face = find_face_cell(&cells, &[0, 1, wb])?;
    insert_k6(&mut d, face)?;
    Ok(d)
}

/// K4 drawn with one crossing and then triangulated: the smallest crossed
/// fixture (needs one parallel copy of the crossed edge, so chi_N3 = 0).
pub fn k4_crossed_triangulated() -> Drawing {
    let mut d = Drawing::triangle();
    let cells = d.cells();
    let inner = &cells[cells.cell_of(0)];
    let anchors = inner.darts.clone();
    let z = d.add_vertex_in_cell(&anchors).unwrap();
    let spoke = edge_by_key(&d, 2, z).unwrap();
    let cells = d.cells();
    let (fa, fb) = (cells.cell_of(4 * spoke), cells.cell_of(4 * spoke + 1));
    let (ca, cb) = (&cells[fa], &cells[fb]);
    let (a, b) = if ca.vertices().contains(&0) {
        (
            corner_of_vertex(&d, ca, 0).unwrap(),
            corner_of_vertex(&d, cb, 1).unwrap(),
        )
    } else {
        (
            corner_of_vertex(&d, cb, 0).unwrap(),
            corner_of_vertex(&d, ca, 1).unwrap(),
        )
    };
    d.reroute_as_crossing(0, a, b, spoke).unwrap();
    triangulate(&d).unwrap()
}

/// A standalone K6: a triangle with the K6 content inserted into one side.
pub fn k6_drawing() -> Drawing {
    let mut d = Drawing::triangle();
    let cells = d.cells();
    let inner = cells.cell_of(0);
    insert_k6(&mut d, inner).unwrap();
    d
}

/// Builds the canonical instance of a family.  For `loop-star` the parameter
/// is the leaf count; the double-K6 fixtures ignore it.
pub fn family(tag: FamilyTag, s: usize) -> Result<GeneratedInstance> {
    let bip_witness = |s: usize| -> Vec<VertexId> { (0..s).collect() };
    let (drawing, expected_n, expected_mu, witness): (Drawing, usize, usize, Vec<VertexId>) =
        match tag {
            FamilyTag::Bipyramid => {
                let b = bipyramid(s)?;
                (b.drawing, s, s / 2, Vec::new())
            }
            FamilyTag::BipyramidT => {
                if s < 5 {
                    return Err(Error::Precondition("bipyramid-t needs s >= 5".into()));
                }
                (build_bipyramid_t(s)?, 2 * s - 2, s - 2, (0..s - 2).collect())
            }
            FamilyTag::G1 => {
                require_even_s(tag, s)?;
                let n = 5 * s - 8;
                (build_g1(s)?, n, (2 * n + 6) / 5, bip_witness(s))
            }
            FamilyTag::G2 => {
                require_even_s(tag, s)?;
                let n = 10 * s - 18;
                (build_g2(s)?, n, (3 * n + 14) / 10, bip_witness(s))
            }
            FamilyTag::Gamma3 => {
                require_even_s(tag, s)?;
                let n = 3 * s - 4;
                (build_gamma3(s)?.0, n, (n + 4) / 3, bip_witness(s))
            }
            FamilyTag::Gamma4 => {
                require_even_s(tag, s)?;
                let n = 4 * s - 6;
                (build_gamma4(s)?, n, (n + 6) / 4, bip_witness(s))
            }
            FamilyTag::G5 => {
                require_even_s(tag, s)?;
                let n = 3 * s - 4;
                (triangulate(&build_gamma3(s)?.0)?, n, (n + 4) / 3, bip_witness(s))
            }
            FamilyTag::G6 => {
                require_even_s(tag, s)?;
                let n = 4 * s - 6;
                (triangulate(&build_gamma4(s)?)?, n, (n + 6) / 4, bip_witness(s))
            }
            FamilyTag::LoopStar => (build_loop_star(s)?, s + 1, 1, vec![0]),
            FamilyTag::DoubleK6A => (build_double_k6(true)?, 10, 5, Vec::new()),
            FamilyTag::DoubleK6B => (build_double_k6(false)?, 10, 5, Vec::new()),
        };
    if drawing.n() != expected_n {
        return Err(Error::Precondition(format!(
            "family {} produced n = {}, expected {}",
            tag.name(),
            drawing.n(),
            expected_n
        )));
    }
    Ok(GeneratedInstance {
        expected_deficiency: expected_n as i64 - 2 * expected_mu as i64,
        drawing,
        family: tag,
        s,
        expected_n,
        expected_mu,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::{max_matching, verify_witness, Graph};

    #[test]
    fn bipyramid_counts() {
        let b = bipyramid(6).unwrap();
        assert_eq!(b.drawing.n(), 6);
        assert_eq!(b.drawing.edges().len(), 12);
        let cells = b.drawing.cells();
        assert_eq!(cells.len(), 8);
        assert!(cells.iter().all(|c| c.degree == 3 && !c.crossed));
        assert!(bipyramid(4).is_err());
    }

    #[test]
    fn bipyramid_coloring() {
        let b = bipyramid(8).unwrap();
        let coloring = b.coloring.as_ref().unwrap();
        let count = |c: FaceColor| {
            coloring
                .iter()
                .flat_map(|side| side.iter())
                .filter(|&&x| x == c)
                .count()
        };
        assert_eq!(count(FaceColor::White), 6);
        assert_eq!(count(FaceColor::Black), 6);
        // Proper coloring: faces sharing an edge get different colors.
        let m = b.base_len();
        for i in 0..m {
            assert_ne!(coloring[0][i], coloring[0][(i + 1) % m]);
            assert_ne!(coloring[0][i], coloring[1][i]);
        }
        assert!(bipyramid(7).unwrap().coloring.is_none());
    }

    #[test]
    fn apex_pairing_bijective() {
        for s in [6, 8] {
            let b = bipyramid(s).unwrap();
            let p = apex_pairing(&b);
            assert_eq!(p.pairs.len(), 2 * (s - 2));
        }
    }

    #[test]
    fn attach_triangle_counts() {
        let b = bipyramid(8).unwrap();
        let mut d = b.drawing.clone();
        let cells = d.cells();
        let side = cells.cell_of(0);
        attach_triangle(&mut d, 0, side).unwrap();
        assert_eq!(d.n(), 9);
        d.revalidate().unwrap();

        let t = build_bipyramid_t(8).unwrap();
        assert_eq!(t.n(), 14);
        t.revalidate().unwrap();

        // Crossed edge refused.
        let g3 = build_gamma3(8).unwrap().0;
        let crossed = (0..g3.edges().len()).find(|&e| g3.is_crossed(e)).unwrap();
        let mut g3m = g3.clone();
        let side = g3.cells().cell_of(4 * crossed);
        assert!(attach_triangle(&mut g3m, crossed, side).is_err());
    }

    #[test]
    fn k6_insert_shape() {
        let mut d = Drawing::triangle();
        let cells = d.cells();
        let inner = cells.cell_of(0);
        let before = d.edges().len();
        insert_k6(&mut d, inner).unwrap();
        d.revalidate().unwrap();
        assert_eq!(d.n(), 6);
        assert_eq!(d.edges().len(), before + 12);
        assert_eq!(d.crossings().len(), 3);
        // Full K6: every pair adjacent.
        for a in 0..6 {
            for b in a + 1..6 {
                assert!(d.has_edge(a, b), "missing edge ({a},{b})");
            }
        }
        // 14 cells, all of degree 3, 12 crossed.
        let cells = d.cells();
        assert_eq!(cells.len(), 14);
        assert!(cells.iter().all(|c| c.degree == 3));
        assert_eq!(cells.iter().filter(|c| c.crossed).count(), 12);
        assert!(d.all_kite_edges_present());
        let diag = d.diagnostics();
        assert!(diag.simple && diag.triangulated);
    }

    #[test]
    fn gamma3_structure() {
        let (d, inserted) = build_gamma3(8).unwrap();
        d.revalidate().unwrap();
        assert_eq!(d.n(), 20);
        assert_eq!(inserted.len(), 12);
        assert_eq!(d.crossings().len(), 12);
        let diag = d.diagnostics();
        assert!(diag.simple);
        // Not triangulated: one degree-4 cell per crossing.
        assert!(!diag.triangulated);
        let cells = d.cells();
        let deg4 = cells.iter().filter(|c| c.degree == 4).count();
        assert_eq!(deg4, 12);
        assert!(cells.iter().all(|c| c.degree == 3 || c.degree == 4));
        // All cells crossed, 4 per crossing.
        assert_eq!(cells.len(), 48);
        // Each crossing has exactly 3 of its 4 kite-edges.
        for x in 0..d.crossings().len() {
            let k = d.kite_edge_status(&cells, x).unwrap();
            assert_eq!(k.present_count(), 3, "crossing {x}");
        }
    }

    #[test]
    fn g5_is_triangulated_gamma3() {
        let inst = family(FamilyTag::G5, 8).unwrap();
        let d = &inst.drawing;
        d.revalidate().unwrap();
        assert_eq!(d.n(), 20);
        let diag = d.diagnostics();
        assert!(diag.triangulated);
        assert!(!diag.simple);
        assert!(diag.n1 && diag.n2);
        assert!(!diag.n3, "original apex edges are crossed and have copies");
        assert!(d.all_kite_edges_present());
        // Cell census from the weight identity: 4 per crossing + 2s-4.
        assert_eq!(d.cells().len(), 4 * 12 + 12);
    }

    #[test]
    fn family_counts_and_matchings() {
        for (tag, s, n, mu) in [
            (FamilyTag::G1, 8usize, 32usize, 14usize),
            (FamilyTag::Gamma3, 8, 20, 8),
            (FamilyTag::Gamma4, 8, 26, 8),
            (FamilyTag::G5, 8, 20, 8),
            (FamilyTag::G6, 8, 26, 8),
            (FamilyTag::BipyramidT, 8, 14, 6),
            (FamilyTag::Bipyramid, 8, 8, 4),
            (FamilyTag::LoopStar, 4, 5, 1),
        ] {
            let inst = family(tag, s).unwrap();
            assert_eq!(inst.expected_n, n, "{}", tag.name());
            assert_eq!(inst.expected_mu, mu, "{}", tag.name());
            inst.drawing.revalidate().unwrap();
            let g = Graph::from_drawing(&inst.drawing);
            assert_eq!(max_matching(&g).mu, mu, "mu mismatch for {}", tag.name());
            let w = verify_witness(&g, &inst.witness);
            assert!(w.tight, "witness not tight for {}", tag.name());
            assert_eq!(w.value, inst.expected_deficiency);
        }
    }

    #[test]
    fn g2_counts() {
        let inst = family(FamilyTag::G2, 8).unwrap();
        assert_eq!(inst.expected_n, 62);
        assert_eq!(inst.expected_mu, 20);
        inst.drawing.revalidate().unwrap();
        let g = Graph::from_drawing(&inst.drawing);
        assert_eq!(max_matching(&g).mu, 20);
        let w = verify_witness(&g, &inst.witness);
        assert!(w.tight);
        assert_eq!(w.value, 22); // 4s - 10
    }

    #[test]
    fn double_k6_fixtures() {
        let a = family(FamilyTag::DoubleK6A, 0).unwrap().drawing;
        let b = family(FamilyTag::DoubleK6B, 0).unwrap().drawing;
        a.revalidate().unwrap();
        b.revalidate().unwrap();
        assert_eq!(a.n(), 10);
        assert_eq!(b.n(), 10);
        assert_eq!(a.crossings().len(), 6);
        // Same underlying graph.
        assert_eq!(a.simple_edges(), b.simple_edges());
        // One degree-4 cell each, rest triangles.
        for d in [&a, &b] {
            let mut degs: Vec<i64> = d.cells().iter().map(|c| c.degree).collect();
            degs.sort_unstable();
            assert_eq!(degs.pop(), Some(4));
            assert!(degs.iter().all(|&x| x == 3));
        }
        // The unsaturated variant misses exactly the edge between the two
        // third vertices flanking the shared edge (0,1): vertex 2 of the
        // first K6 and the attached vertex 6 of the second.
        let rb = crate::saturation::check_saturation(&b);
        assert!(rb.insertable.iter().any(|i| (i.z0, i.z1) == (2, 6)));
        assert!(rb.s1_witnesses.iter().any(|&(_, x, y)| (x, y) == (2, 6)));
    }

    #[test]
    fn loop_star_structure() {
        let d = build_loop_star(3).unwrap();
        d.revalidate().unwrap();
        let diag = d.diagnostics();
        assert!(!diag.n1);
        let mut degs: Vec<i64> = d.cells().iter().map(|c| c.degree).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![3, 3, 3, 3]);
        let d5 = build_loop_star(5).unwrap();
        let mut degs: Vec<i64> = d5.cells().iter().map(|c| c.degree).collect();
        degs.sort_unstable();
        assert_eq!(degs, vec![3, 3, 3, 3, 3, 5]);
    }

    #[test]
    fn insert_k4x_twice_errors() {
        let b = bipyramid(8).unwrap();
        let mut d = b.drawing.clone();
        let face = face_cell(&b, &d, 0, 0).unwrap();
        insert_k4x(&mut d, face, b.apex_edge(0, 0)).unwrap();
        d.revalidate().unwrap();
        // The paired edge is now crossed: using it again must fail.
        let cells = d.cells();
        let other = find_face_cell(&cells, &b.face_vertices(0, 2)).unwrap();
        assert!(insert_k4x(&mut d, other, b.apex_edge(0, 0)).is_err());
    }

    #[test]
    fn edge_and_crossing_counts() {
        for s in [8usize, 10] {
            let cases = [
                (FamilyTag::Bipyramid, 3 * s - 6, 0),
                (FamilyTag::BipyramidT, 3 * s - 6 + 2 * (s - 2), 0),
                (FamilyTag::Gamma3, 9 * s - 18, 2 * s - 4),
                (FamilyTag::Gamma4, 11 * s - 22, 2 * s - 4),
                (FamilyTag::G5, 11 * s - 22, 2 * s - 4),
                (FamilyTag::G6, 14 * s - 28, 2 * s - 4),
                (FamilyTag::G1, 3 * s - 6 + 15 * (s - 2), 3 * (s - 2)),
                (FamilyTag::G2, 33 * s - 66, 6 * s - 12),
            ];
            for (tag, edges, crossings) in cases {
                let inst = family(tag, s).unwrap();
                assert_eq!(inst.drawing.edges().len(), edges, "{} s={s}", tag.name());
                assert_eq!(
                    inst.drawing.crossings().len(),
                    crossings,
                    "{} s={s}",
                    tag.name()
                );
            }
        }
    }

    #[test]
    fn triangulating_gamma3_gives_g5() {
        let g3 = family(FamilyTag::Gamma3, 8).unwrap().drawing;
        let g5 = family(FamilyTag::G5, 8).unwrap().drawing;
        let t = crate::saturation::triangulate(&g3).unwrap();
        assert!(t.canonical_eq(&g5));
        let g4 = family(FamilyTag::Gamma4, 8).unwrap().drawing;
        let g6 = family(FamilyTag::G6, 8).unwrap().drawing;
        assert!(crate::saturation::triangulate(&g4).unwrap().canonical_eq(&g6));
    }

    #[test]
    fn saturation_flags_per_family() {
        use crate::saturation::{check_proper_cell, check_saturation};
        // The graph families keep their canonical drawings saturated.
        for (tag, s) in [(FamilyTag::G1, 8), (FamilyTag::G2, 8)] {
            let inst = family(tag, s).unwrap();
            assert!(
                check_saturation(&inst.drawing).simple_saturated,
                "{}",
                tag.name()
            );
        }
        // Gamma3 is simple-saturated but admits a proper parallel insertion
        // (the same ones the triangulation adds), so it is not
        // proper-cell-saturated.
        let g3 = family(FamilyTag::Gamma3, 8).unwrap().drawing;
        assert!(check_saturation(&g3).simple_saturated);
        assert_eq!(check_proper_cell(&g3), (true, false));
        // The loop-star is proper-cell-saturated despite its loops.
        let star = family(FamilyTag::LoopStar, 3).unwrap().drawing;
        assert_eq!(check_proper_cell(&star), (true, true));
        let star5 = family(FamilyTag::LoopStar, 5).unwrap().drawing;
        assert_eq!(check_proper_cell(&star5), (true, true));
    }

    #[test]
    fn precondition_errors() {
        // Parity and size requirements of the main families.
        for tag in [FamilyTag::G1, FamilyTag::G2, FamilyTag::Gamma3, FamilyTag::G5] {
            assert!(family(tag, 7).is_err(), "{}", tag.name());
            assert!(family(tag, 6).is_err(), "{}", tag.name());
        }
        assert!(family(FamilyTag::LoopStar, 2).is_err());
        // insert_k4 / insert_k6 refuse non-triangular and crossed cells.
        let g5 = family(FamilyTag::G5, 8).unwrap().drawing;
        let cells = g5.cells();
        let crossed = cells.iter().find(|c| c.crossed).unwrap().id;
        let mut scratch = g5.clone();
        assert!(insert_k4(&mut scratch, crossed).is_err());
        let mut scratch = g5.clone();
        assert!(insert_k6(&mut scratch, crossed).is_err());
        // attach_triangle with a cell not incident to the edge.
        let b = bipyramid(6).unwrap();
        let mut d = b.drawing.clone();
        let cells = d.cells();
        let wrong = cells
            .iter()
            .find(|c| !c.darts.iter().any(|&x| x / 4 == 0))
            .unwrap()
            .id;
        assert!(attach_triangle(&mut d, 0, wrong).is_err());
        // Gamma_S requires a loop-free host even when triangulated.
        let star = family(FamilyTag::LoopStar, 3).unwrap().drawing;
        assert!(star.diagnostics().triangulated);
        assert!(crate::patches::build_gamma_s(&star, &[0]).is_err());
    }

    #[test]
    fn g1_component_structure() {
        let inst = family(FamilyTag::G1, 8).unwrap();
        let (comp, odd, lists) = inst.drawing.components_minus(&inst.witness);
        assert_eq!(comp, 12);
        assert_eq!(odd, 12);
        // Alternating singleton K4-vertices and K6 triples.
        let mut sizes: Vec<usize> = lists.iter().map(|l| l.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 1, 1, 1, 1, 1, 3, 3, 3, 3, 3, 3]);
    }

    #[test]
    fn meta_roundtrip() {
        let inst = family(FamilyTag::Gamma3, 8).unwrap();
        let text = inst.meta_text();
        let (tag, s, n, mu, def, witness) = parse_meta(&text).unwrap();
        assert_eq!(tag, FamilyTag::Gamma3);
        assert_eq!((s, n, mu, def), (8, 20, 8, 4));
        assert_eq!(witness, inst.witness);
    }
}
