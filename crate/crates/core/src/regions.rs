//! Merged-region structures: the face structure of a sub-drawing, inherited
//! from a connected host drawing.
//!
//! Given a host drawing with its cells, a subset of retained edges and a
//! subset of retained vertices, the cells of the host are merged across every
//! non-retained edge segment.  Each resulting region is bounded by circuits of
//! retained darts plus singleton circuits for retained vertices that lost all
//! their edges.  Degrees follow `m + 2 comp - 2`, and the face-degree identity
//! `sum (deg - 2) = 2 |V'| - 4` holds over the regions even when the retained
//! sub-drawing is disconnected, non-simple or has at most two vertices.

use crate::drawing::{CellId, Cells, Dart, Drawing, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Clone)]
pub struct Region {
    /// Host cells merged into this region, ascending.
    pub cells: Vec<CellId>,
    /// Boundary circuits of retained darts.
    pub circuits: Vec<Vec<Dart>>,
    /// Retained vertices with no retained incident edges, enclosed here.
    pub singletons: Vec<VertexId>,
    /// Edge-incidence count (total darts over circuits).
    pub m: usize,
    /// Number of boundary circuits including singletons.
    pub comp: usize,
    /// `m + 2 comp - 2`.
    pub degree: i64,
}

#[derive(Debug, Clone)]
pub struct RegionStructure {
    pub regions: Vec<Region>,
    region_of_cell: Vec<usize>,
}

impl RegionStructure {
    pub fn region_of_cell(&self, c: CellId) -> usize {
        self.region_of_cell[c]
    }

    pub fn degree_sum(&self) -> i64 {
        self.regions.iter().map(|r| r.degree - 2).sum()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Keep the smaller root so region ids stay deterministic.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }
}

/// Builds the merged-region structure.  Requirements:
/// * every retained edge has both endpoints retained;
/// * each crossing has both of its edges retained or both deleted.
pub fn build(
    host: &Drawing,
    cells: &Cells,
    retained_edge: &[bool],
    retained_vertex: &[bool],
) -> Result<RegionStructure> {
    if retained_edge.len() != host.edges().len() || retained_vertex.len() != host.n() {
        return Err(Error::Precondition("retained mask length mismatch".into()));
    }
    for (e, &keep) in retained_edge.iter().enumerate() {
        if keep {
            let edge = host.edge(e);
            if !retained_vertex[edge.u] || !retained_vertex[edge.v] {
                return Err(Error::Precondition(format!(
                    "retained edge {e} has a non-retained endpoint"
                )));
            }
        }
    }
    for (x, c) in host.crossings().iter().enumerate() {
        if retained_edge[c.e1] != retained_edge[c.e2] {
            return Err(Error::Precondition(format!(
                "crossing {x} has one retained and one deleted edge"
            )));
        }
    }

    let mut uf = UnionFind::new(cells.len());
    for e in 0..host.edges().len() {
        if retained_edge[e] {
            continue;
        }
        let darts: &[Dart] = if host.is_crossed(e) {
            &[4 * e, 4 * e + 1, 4 * e + 2, 4 * e + 3]
        } else {
            &[4 * e, 4 * e + 1]
        };
        // Merging across both darts of each segment merges across the twin
        // pairing automatically; union once per segment suffices.
        for &d in darts {
            uf.union(cells.cell_of(d), cells.cell_of(host.twin(d)));
        }
    }

    let retained_dart = |d: Dart| retained_edge[d / 4];

    // Boundary circuits: restricted face traversal over retained darts.
    // Deleting an edge removes its darts from the rotations, so the
    // restricted successor scans past deleted darts at the twin's node.
    let next_region = |d: Dart| -> Dart {
        let mut t = host.twin(d);
        loop {
            t = host.rot_next(t);
            if retained_dart(t) {
                return t;
            }
        }
    };

    let mut circuit_of_dart = vec![usize::MAX; 4 * host.edges().len()];
    let mut circuits: Vec<(usize, Vec<Dart>)> = Vec::new(); // (uf root, darts)
    for e in 0..host.edges().len() {
        if !retained_edge[e] {
            continue;
        }
        let darts: &[Dart] = if host.is_crossed(e) {
            &[4 * e, 4 * e + 1, 4 * e + 2, 4 * e + 3]
        } else {
            &[4 * e, 4 * e + 1]
        };
        for &d0 in darts {
            if circuit_of_dart[d0] != usize::MAX {
                continue;
            }
            let root = uf.find(cells.cell_of(d0));
            let id = circuits.len();
            let mut darts = Vec::new();
            let mut d = d0;
            loop {
                debug_assert_eq!(uf.find(cells.cell_of(d)), root);
                circuit_of_dart[d] = id;
                darts.push(d);
                d = next_region(d);
                if d == d0 {
                    break;
                }
            }
            circuits.push((root, darts));
        }
    }

    // Singletons: retained vertices with no retained incident darts.
    let mut singletons: Vec<(usize, VertexId)> = Vec::new();
    for v in 0..host.n() {
        if !retained_vertex[v] {
            continue;
        }
        let rot = host.vertex_rotation(v);
        if rot.iter().any(|&d| retained_dart(d)) {
            continue;
        }
        let root = if let Some(&d) = rot.first() {
            uf.find(cells.cell_of(d))
        } else {
            // Vertex isolated in the host: only possible for the one-vertex
            // drawing, whose single cell hosts it.
            let c = cells
                .iter()
                .find(|c| c.singleton == Some(v))
                .map(|c| c.id)
                .unwrap_or(0);
            uf.find(c)
        };
        singletons.push((root, v));
    }

    // Assemble regions ordered by smallest cell id.
    let mut root_to_region = std::collections::BTreeMap::new();
    for c in 0..cells.len() {
        let root = uf.find(c);
        let next = root_to_region.len();
        root_to_region.entry(root).or_insert(next);
    }
    let mut regions: Vec<Region> = (0..root_to_region.len())
        .map(|_| Region {
            cells: Vec::new(),
            circuits: Vec::new(),
            singletons: Vec::new(),
            m: 0,
            comp: 0,
            degree: 0,
        })
        .collect();
    let mut region_of_cell = vec![0usize; cells.len()];
    for c in 0..cells.len() {
        let r = root_to_region[&uf.find(c)];
        region_of_cell[c] = r;
        regions[r].cells.push(c);
    }
    for (root, darts) in circuits {
        regions[root_to_region[&root]].circuits.push(darts);
    }
    for (root, v) in singletons {
        regions[root_to_region[&root]].singletons.push(v);
    }
    for r in &mut regions {
        r.m = r.circuits.iter().map(|c| c.len()).sum();
        r.comp = r.circuits.len() + r.singletons.len();
        r.degree = r.m as i64 + 2 * r.comp as i64 - 2;
    }
    Ok(RegionStructure {
        regions,
        region_of_cell,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::Drawing;

    #[test]
    fn deleting_one_triangle_edge_merges_both_cells() {
        let d = Drawing::triangle();
        let cells = d.cells();
        let retained_edge = vec![true, true, false];
        let retained_vertex = vec![true; 3];
        let s = build(&d, &cells, &retained_edge, &retained_vertex).unwrap();
        assert_eq!(s.regions.len(), 1);
        let r = &s.regions[0];
        // One circuit walking the path 0-1-2 on both sides.
        assert_eq!((r.m, r.comp, r.degree), (4, 1, 4));
        assert_eq!(s.degree_sum(), 2 * 3 - 4);
    }

    #[test]
    fn singleton_circuit_gives_degree_five_region() {
        // Triangle with a center vertex whose spokes are all deleted: the
        // inner region keeps the 3-cycle circuit plus a singleton circuit,
        // so m = 3, comp = 2 and the degree is 5.
        let mut d = Drawing::triangle();
        let cells = d.cells();
        let inner = &cells[cells.cell_of(0)];
        let anchors = inner.darts.clone();
        d.add_vertex_in_cell(&anchors).unwrap();
        let cells = d.cells();
        let retained_edge: Vec<bool> = (0..d.edges().len()).map(|e| e < 3).collect();
        let retained_vertex = vec![true; 4];
        let s = build(&d, &cells, &retained_edge, &retained_vertex).unwrap();
        assert_eq!(s.regions.len(), 2);
        let with_singleton = s
            .regions
            .iter()
            .find(|r| !r.singletons.is_empty())
            .expect("inner region holds the isolated vertex");
        assert_eq!(with_singleton.singletons, vec![3]);
        assert_eq!(
            (with_singleton.m, with_singleton.comp, with_singleton.degree),
            (3, 2, 5)
        );
        assert_eq!(s.degree_sum(), 2 * 4 - 4);
    }

    #[test]
    fn empty_retained_set_keeps_one_degree_minus_two_region() {
        let d = Drawing::triangle();
        let cells = d.cells();
        let s = build(&d, &cells, &[false; 3], &[false; 3]).unwrap();
        assert_eq!(s.regions.len(), 1);
        assert_eq!(s.regions[0].degree, -2);
        assert_eq!(s.degree_sum(), -4);
    }

    #[test]
    fn masks_are_validated() {
        let d = Drawing::triangle();
        let cells = d.cells();
        // Retained edge with a deleted endpoint.
        assert!(build(&d, &cells, &[true, false, false], &[true, false, true]).is_err());
        // Wrong mask length.
        assert!(build(&d, &cells, &[true; 2], &[true; 3]).is_err());
    }
}
