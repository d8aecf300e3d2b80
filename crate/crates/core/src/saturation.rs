//! Saturation properties of 1-planar drawings and the triangulation
//! augmentation.
//!
//! A simple drawing is simple-saturated iff no edge can be added keeping the
//! drawing simple and 1-planar; this is equivalent to the two cell conditions
//! S1 and S2.  For non-simple drawings the right notion is proper-cell
//! saturation: every cell has degree >= 3 and no insertion (parallel copies
//! allowed, loops not) keeps it that way.

use crate::drawing::{corner_of_vertex, Cells, Drawing, EdgeId, VertexId};
use crate::error::{Error, Result};

/// Places a new edge can go: drawn uncrossed inside one cell, or crossing an
/// uncrossed edge between its two flanking cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionMode {
    InCell(usize),
    CrossingEdge(EdgeId),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Insertion {
    pub z0: VertexId,
    pub z1: VertexId,
    pub mode: InsertionMode,
}

/// Which insertions count as legal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InsertionRule {
    /// Keep the graph simple: no loops, no parallel copies.
    Simple,
    /// Keep every cell proper (degree >= 3); parallel copies allowed,
    /// loops not.
    ProperCell,
}

#[derive(Debug, Clone)]
pub struct SaturationReport {
    /// Every cell with two distinct incident vertices has them adjacent.
    pub s1: bool,
    /// For every uncrossed edge, third vertices of the two flanking cells
    /// are equal or adjacent.
    pub s2: bool,
    /// No cell boundary is disconnected.
    pub s3: bool,
    /// No cell meets a vertex more than once.
    pub s4: bool,
    pub simple: bool,
    pub simple_saturated: bool,
    /// Cell id and vertex pair violating S1.
    pub s1_witnesses: Vec<(usize, VertexId, VertexId)>,
    /// Edge id and the z0/z1 pair violating S2.
    pub s2_witnesses: Vec<(EdgeId, VertexId, VertexId)>,
    pub s3_witnesses: Vec<usize>,
    pub s4_witnesses: Vec<(usize, VertexId)>,
    pub proper: bool,
    pub proper_cell_saturated: bool,
    /// Candidate edges insertable under the simple rule.
    pub insertable: Vec<Insertion>,
}

fn cell_vertices_multiset(cell: &crate::drawing::Cell) -> Vec<VertexId> {
    cell.corners
        .iter()
        .filter_map(|c| match c {
            crate::drawing::Node::Vertex(v) => Some(*v),
            _ => None,
        })
        .chain(cell.singleton)
        .collect()
}

pub fn check_saturation(d: &Drawing) -> SaturationReport {
    let cells = d.cells();
    let diag = d.diagnostics();

    let mut s1_witnesses = Vec::new();
    let mut s3_witnesses = Vec::new();
    let mut s4_witnesses = Vec::new();
    for cell in cells.iter() {
        if cell.comp > 1 {
            s3_witnesses.push(cell.id);
        }
        let occ = cell_vertices_multiset(cell);
        let mut sorted = occ.clone();
        sorted.sort_unstable();
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                s4_witnesses.push((cell.id, w[0]));
            }
        }
        let vs = cell.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                if !d.has_edge(vs[i], vs[j]) {
                    s1_witnesses.push((cell.id, vs[i], vs[j]));
                }
            }
        }
    }
    s4_witnesses.dedup();

    let mut s2_witnesses = Vec::new();
    for e in 0..d.edges().len() {
        if d.is_crossed(e) || d.edge(e).is_loop() {
            continue;
        }
        let (u, v) = (d.edge(e).u, d.edge(e).v);
        let c0 = &cells[cells.cell_of(4 * e)];
        let c1 = &cells[cells.cell_of(4 * e + 1)];
        let others = |c: &crate::drawing::Cell| -> Vec<VertexId> {
            c.vertices().into_iter().filter(|&z| z != u && z != v).collect()
        };
        for &z0 in &others(c0) {
            for &z1 in &others(c1) {
                if z0 != z1 && !d.has_edge(z0, z1) {
                    s2_witnesses.push((e, z0.min(z1), z0.max(z1)));
                }
            }
        }
    }
    s2_witnesses.sort_unstable();
    s2_witnesses.dedup();

    let s1 = s1_witnesses.is_empty();
    let s2 = s2_witnesses.is_empty();
    let insertable = enumerate_insertions(d, InsertionRule::Simple);
    let (proper, proper_cell_saturated) = check_proper_cell(d);
    SaturationReport {
        s1,
        s2,
        s3: s3_witnesses.is_empty(),
        s4: s4_witnesses.is_empty(),
        simple: diag.simple,
        simple_saturated: diag.simple && s1 && s2,
        s1_witnesses,
        s2_witnesses,
        s3_witnesses,
        s4_witnesses,
        proper,
        proper_cell_saturated,
        insertable,
    }
}

/// All legal single-edge insertions under the given rule.  For simple
/// drawings the list is empty iff the drawing is simple-saturated.
pub fn enumerate_insertions(d: &Drawing, rule: InsertionRule) -> Vec<Insertion> {
    let cells = d.cells();
    let mut found = Vec::new();

    // (i) uncrossed chord inside a cell.
    for cell in cells.iter() {
        let vs = cell.vertices();
        for i in 0..vs.len() {
            for j in i + 1..vs.len() {
                let (z0, z1) = (vs[i], vs[j]);
                let candidate = Insertion {
                    z0,
                    z1,
                    mode: InsertionMode::InCell(cell.id),
                };
                if admissible(d, &cells, candidate, rule) {
                    found.push(candidate);
                }
            }
        }
    }

    // (ii) edge crossing an uncrossed edge, joining the two flanking cells.
    for e in 0..d.edges().len() {
        if d.is_crossed(e) || d.edge(e).is_loop() {
            continue;
        }
        let (u, v) = (d.edge(e).u, d.edge(e).v);
        let (a, b) = (cells.cell_of(4 * e), cells.cell_of(4 * e + 1));
        if a == b {
            // A chord of the same cell already covers these pairs.
            continue;
        }
        let pick = |c: usize| -> Vec<VertexId> {
            cells[c].vertices().into_iter().filter(|&z| z != u && z != v).collect()
        };
        for &z0 in &pick(a) {
            for &z1 in &pick(b) {
                if z0 == z1 {
                    continue;
                }
                let candidate = Insertion {
                    z0: z0.min(z1),
                    z1: z0.max(z1),
                    mode: InsertionMode::CrossingEdge(e),
                };
                if admissible(d, &cells, candidate, rule) {
                    found.push(candidate);
                }
            }
        }
    }
    found.sort_unstable_by_key(|i| (i.z0, i.z1));
    found.dedup();
    found
}

fn admissible(d: &Drawing, cells: &Cells, ins: Insertion, rule: InsertionRule) -> bool {
    if ins.z0 == ins.z1 {
        return false;
    }
    match rule {
        InsertionRule::Simple => !d.has_edge(ins.z0, ins.z1),
        InsertionRule::ProperCell => {
            // Perform the insertion on a scratch copy and require every cell
            // of the result to stay proper.
            let mut scratch = d.clone();
            let ok = match ins.mode {
                InsertionMode::InCell(c) => {
                    let cell = &cells[c];
                    let a = corner_of_vertex(d, cell, ins.z0);
                    let b = corner_of_vertex(d, cell, ins.z1);
                    match (a, b) {
                        (Ok(a), Ok(b)) => scratch.add_chord(a, b).is_ok(),
                        _ => false,
                    }
                }
                InsertionMode::CrossingEdge(e) => {
                    // z0 must sit on one flank, z1 on the other.
                    let (ca, cb) = (cells.cell_of(4 * e), cells.cell_of(4 * e + 1));
                    let a = corner_of_vertex(d, &cells[ca], ins.z0)
                        .ok()
                        .zip(corner_of_vertex(d, &cells[cb], ins.z1).ok());
                    let b = corner_of_vertex(d, &cells[cb], ins.z0)
                        .ok()
                        .zip(corner_of_vertex(d, &cells[ca], ins.z1).ok());
                    match a.or(b) {
                        Some((x, y)) => scratch.add_crossing_edge(x, y, e).is_ok(),
                        None => false,
                    }
                }
            };
            ok && scratch.cells().iter().all(|c| c.degree >= 3)
        }
    }
}

/// (all cells proper, proper-cell-saturated).
pub fn check_proper_cell(d: &Drawing) -> (bool, bool) {
    let proper = d.cells().iter().all(|c| c.degree >= 3);
    if !proper {
        return (false, false);
    }
    let saturated = enumerate_insertions(d, InsertionRule::ProperCell).is_empty();
    (proper, saturated)
}

/// Triangulates a saturated drawing by adding uncrossed parallel copies of
/// existing edges inside cells of degree >= 4, between the lexicographically
/// smallest non-consecutive vertex pair.  Every added edge is a parallel copy
/// of an existing edge; the loop terminates because the cell count strictly
/// increases and is bounded by `4n - 8`.
pub fn triangulate(d: &Drawing) -> Result<Drawing> {
    let mut out = d.clone();
    let cell_bound = 4 * d.n().max(3);
    let mut steps = 0usize;
    loop {
        let cells = out.cells();
        let target = cells.iter().find(|c| c.degree >= 4);
        let Some(cell) = target else {
            // All cells have degree 3 (or the drawing is degenerate and has
            // none of degree >= 4).
            if let Some(bad) = out.cells().iter().find(|c| c.degree != 3) {
                return Err(Error::NotTriangulated(bad.id, bad.degree));
            }
            return Ok(out);
        };
        // Non-consecutive distinct-vertex corner pairs, lexicographically
        // smallest vertex pair first.
        let len = cell.darts.len();
        let mut pairs: Vec<(VertexId, VertexId, usize, usize)> = Vec::new();
        for i in 0..len {
            for j in i + 1..len {
                let gap = (j - i).min(len - (j - i));
                if gap < 2 {
                    continue;
                }
                use crate::drawing::Node;
                if let (Node::Vertex(a), Node::Vertex(b)) = (cell.corners[i], cell.corners[j]) {
                    if a != b {
                        pairs.push((a.min(b), a.max(b), i, j));
                    }
                }
            }
        }
        pairs.sort_unstable();
        let Some(&(a, b, i, j)) = pairs.first() else {
            return Err(Error::NotSaturated {
                cell: cell.id,
                degree: cell.degree,
            });
        };
        if !out.has_edge(a, b) {
            return Err(Error::NotSaturated {
                cell: cell.id,
                degree: cell.degree,
            });
        }
        let count_before = cells.len();
        out.add_chord(cell.darts[i], cell.darts[j])?;
        steps += 1;
        debug_assert!(out.cells().len() > count_before);
        if steps > cell_bound {
            return Err(Error::Precondition(
                "triangulation did not terminate within the cell bound".into(),
            ));
        }
    }
}
