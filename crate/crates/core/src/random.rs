//! Random instances for the verification suites: loop-free random graphs
//! for the matching oracle, and random planar triangulations with random
//! deletions for the face-degree identity over merged regions.

use crate::drawing::Drawing;
use crate::matching::Graph;
use rand::Rng;

pub fn random_graph<R: Rng>(rng: &mut R, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p = [0.15, 0.3, 0.5, 0.8][rng.gen_range(0..4)];
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Random planar triangulation: a triangle grown by repeatedly inserting a
/// vertex into a random cell, connected to three corners of it.
pub fn random_planar_triangulation<R: Rng>(rng: &mut R, inserts: usize) -> Drawing {
    let mut d = Drawing::triangle();
    for _ in 0..inserts {
        let cells = d.cells();
        let cell = &cells[rng.gen_range(0..cells.len())];
        let anchors = cell.darts.clone();
        d.add_vertex_in_cell(&anchors).expect("insert into a cell");
    }
    d
}

/// A host triangulation plus random vertex/edge deletions, as retained
/// masks suitable for the region structure.  Sometimes keeps fewer than
/// three vertices so the degenerate cases get exercised.
pub fn random_region_case<R: Rng>(rng: &mut R) -> (Drawing, Vec<bool>, Vec<bool>) {
    let inserts = rng.gen_range(0..8);
    let host = random_planar_triangulation(rng, inserts);
    let n = host.n();
    let keep_target = if rng.gen_bool(0.2) {
        rng.gen_range(0..=2.min(n))
    } else {
        rng.gen_range(0..=n)
    };
    let mut retained_vertex = vec![false; n];
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..order.len()).rev() {
        order.swap(i, rng.gen_range(0..=i));
    }
    for &v in order.iter().take(keep_target) {
        retained_vertex[v] = true;
    }
    let edge_p = [0.0, 0.4, 0.8, 1.0][rng.gen_range(0..4)];
    let retained_edge: Vec<bool> = (0..host.edges().len())
        .map(|e| {
            let edge = host.edge(e);
            retained_vertex[edge.u] && retained_vertex[edge.v] && rng.gen_bool(edge_p)
        })
        .collect();
    (host, retained_edge, retained_vertex)
}
