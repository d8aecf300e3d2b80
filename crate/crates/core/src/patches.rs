//! The retained sub-drawing `Gamma_S`, its patch decomposition, the weight
//! functions `w_0` / `w_alpha` with their transfer machinery, and the
//! deficiency bounds.
//!
//! For a triangulated host drawing and a vertex set S, the retained edges are
//! those with both endpoints in S, minus edges crossed by an edge leaving S,
//! minus (to a fixpoint) uncrossed edges incident twice to one region.  Host
//! cells merge across deleted edges; the four cells at each surviving
//! crossing form a crossing-patch and every other region is a face-patch.
//! All weights are exact rationals.

use crate::drawing::{CellId, Cells, CrossingId, Dart, Drawing, EdgeId, VertexId};
use crate::error::{Error, Result};
use crate::regions;
use num_rational::Rational64;
use num_traits::Zero;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeletionStep {
    /// An endpoint lies outside S.
    NotInduced,
    /// Crossed by an edge with an endpoint outside S.
    CrossedByOutside,
    /// Uncrossed and incident twice to the same region (iterated).
    DoublyIncident,
}

/// Result of the three deletion steps.
#[derive(Debug, Clone)]
pub struct GammaS {
    pub s_member: Vec<bool>,
    pub s_vertices: Vec<VertexId>,
    pub retained: Vec<bool>,
    pub deletion_log: Vec<(EdgeId, DeletionStep)>,
    /// Crossings both of whose edges survive.
    pub pure_crossings: Vec<CrossingId>,
}

/// Builds `Gamma_S`.  The host must be triangulated and loop-free.
pub fn build_gamma_s(d: &Drawing, s: &[VertexId]) -> Result<GammaS> {
    let diag = d.diagnostics();
    if !diag.triangulated {
        return Err(Error::Precondition(
            "Gamma_S requires a triangulated host drawing".into(),
        ));
    }
    if !diag.n1 {
        return Err(Error::Precondition("Gamma_S requires a loop-free host".into()));
    }
    let mut s_member = vec![false; d.n()];
    for &v in s {
        if v >= d.n() {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        s_member[v] = true;
    }
    let mut retained = vec![false; d.edges().len()];
    let mut deletion_log = Vec::new();
    for e in 0..d.edges().len() {
        let edge = d.edge(e);
        if s_member[edge.u] && s_member[edge.v] {
            retained[e] = true;
        } else {
            deletion_log.push((e, DeletionStep::NotInduced));
        }
    }
    // Step 2: delete edges crossed by an edge leaving S.
    for e in 0..d.edges().len() {
        if !retained[e] {
            continue;
        }
        if let Some(p) = d.crossing_partner(e) {
            let pe = d.edge(p);
            if !s_member[pe.u] || !s_member[pe.v] {
                retained[e] = false;
                deletion_log.push((e, DeletionStep::CrossedByOutside));
            }
        }
    }
    // Step 3 to a fixpoint: deleting an edge merges regions and can only
    // expose more doubly-incident edges, so batch passes converge.
    let cells = d.cells();
    loop {
        let structure = regions::build(d, &cells, &retained, &s_member)?;
        let mut changed = false;
        for e in 0..d.edges().len() {
            if !retained[e] || d.is_crossed(e) {
                continue;
            }
            let r0 = structure.region_of_cell(cells.cell_of(4 * e));
            let r1 = structure.region_of_cell(cells.cell_of(4 * e + 1));
            if r0 == r1 {
                retained[e] = false;
                deletion_log.push((e, DeletionStep::DoublyIncident));
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    let pure_crossings: Vec<CrossingId> = (0..d.crossings().len())
        .filter(|&x| {
            let c = d.crossing(x);
            retained[c.e1] && retained[c.e2]
        })
        .collect();
    // Retained crossed edges always come in pure pairs.
    for e in 0..d.edges().len() {
        if retained[e] && d.is_crossed(e) {
            debug_assert!(retained[d.crossing_partner(e).unwrap()]);
        }
    }
    Ok(GammaS {
        s_member,
        s_vertices: s.to_vec(),
        retained,
        deletion_log,
        pure_crossings,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatchKind {
    Crossing {
        crossing: CrossingId,
        kite_edges: [EdgeId; 4],
    },
    Face {
        circuits: Vec<Vec<Dart>>,
        singletons: Vec<VertexId>,
        m: usize,
        comp: usize,
    },
}

/// Classification of a patch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatchClass {
    /// `P^x`: four cells around a pure-S crossing.
    CrossingPatch,
    /// `P_d` covering at least one vertex (`P_d^o`).
    FaceCovering(i64),
    /// Degree-3 face-patch covering nothing (`P_3^v`): a cell of the host.
    FaceEmptyTriangle,
    /// Face-patch of degree != 3 covering nothing; flagged by the covering
    /// checks, should not occur over triangulated hosts.
    FaceEmpty(i64),
}

#[derive(Debug, Clone)]
pub struct Patch {
    pub id: usize,
    pub kind: PatchKind,
    pub degree: i64,
    pub covered_cells: Vec<CellId>,
    /// Covered vertices (outside S).
    pub z: Vec<VertexId>,
    /// Indices into `PatchDecomposition::components`.
    pub covered_components: Vec<usize>,
    pub class: PatchClass,
}

impl Patch {
    pub fn is_face(&self) -> bool {
        matches!(self.kind, PatchKind::Face { .. })
    }
}

#[derive(Debug, Clone)]
pub struct PatchDecomposition {
    pub gamma: GammaS,
    pub patches: Vec<Patch>,
    pub patch_of_cell: Vec<usize>,
    pub cell_count: usize,
    /// Components of the host minus S.
    pub components: Vec<Vec<VertexId>>,
    pub comp_minus_s: usize,
    pub odd_minus_s: usize,
}

impl PatchDecomposition {
    pub fn count(&self, f: impl Fn(&Patch) -> bool) -> usize {
        self.patches.iter().filter(|p| f(p)).count()
    }
    pub fn crossing_patches(&self) -> usize {
        self.count(|p| p.class == PatchClass::CrossingPatch)
    }
    /// `|P_d^o|` for a given degree.
    pub fn covering_faces(&self, d: i64) -> usize {
        self.count(|p| p.class == PatchClass::FaceCovering(d))
    }
    pub fn empty_triangles(&self) -> usize {
        self.count(|p| p.class == PatchClass::FaceEmptyTriangle)
    }
}

/// Decomposes the host cells into patches for `Gamma_S`.
pub fn decompose_patches(d: &Drawing, gamma: &GammaS) -> Result<PatchDecomposition> {
    let cells = d.cells();
    let structure = regions::build(d, &cells, &gamma.retained, &gamma.s_member)?;

    // Regions made of a single cell at a pure crossing turn into
    // crossing-patches, grouped four per crossing.
    let mut is_crossing_cell = vec![None; cells.len()];
    for &x in &gamma.pure_crossings {
        for &dart in d.crossing_rotation(x) {
            let c = cells.cell_of(dart);
            is_crossing_cell[c] = Some(x);
        }
    }

    let s_ids: Vec<VertexId> = gamma.s_vertices.clone();
    let (comp_count, odd_count, components) = d.components_minus(&s_ids);

    let mut patches: Vec<Patch> = Vec::new();
    let mut patch_of_cell = vec![usize::MAX; cells.len()];

    for &x in &gamma.pure_crossings {
        let id = patches.len();
        let mut covered = Vec::new();
        for &dart in d.crossing_rotation(x) {
            let c = cells.cell_of(dart);
            let region = &structure.regions[structure.region_of_cell(c)];
            if region.cells.len() != 1 {
                return Err(Error::Precondition(format!(
                    "cell {c} at pure crossing {x} merged with other cells"
                )));
            }
            if patch_of_cell[c] == usize::MAX {
                patch_of_cell[c] = id;
                covered.push(c);
            }
        }
        covered.sort_unstable();
        covered.dedup();
        if covered.len() != 4 {
            return Err(Error::Precondition(format!(
                "pure crossing {x} does not have four distinct cells"
            )));
        }
        let kites = d.kite_edge_status(&cells, x)?;
        let kite_edges = match kites.quadrants {
            [Some(a), Some(b), Some(c2), Some(e)] => [a, b, c2, e],
            _ => {
                return Err(Error::Precondition(format!(
                    "pure crossing {x} is missing a kite-edge"
                )))
            }
        };
        let z = covered_vertices(&cells, &covered, &gamma.s_member);
        patches.push(Patch {
            id,
            kind: PatchKind::Crossing { crossing: x, kite_edges },
            degree: 0,
            covered_cells: covered,
            z,
            covered_components: Vec::new(),
            class: PatchClass::CrossingPatch,
        });
    }

    for region in &structure.regions {
        // Skip regions fully consumed by crossing patches.
        if region.cells.len() == 1 && is_crossing_cell[region.cells[0]].is_some() {
            continue;
        }
        if region
            .cells
            .iter()
            .any(|&c| is_crossing_cell[c].is_some())
        {
            return Err(Error::Precondition(
                "region mixes crossing cells with face cells".into(),
            ));
        }
        let id = patches.len();
        for &c in &region.cells {
            patch_of_cell[c] = id;
        }
        let z = covered_vertices(&cells, &region.cells, &gamma.s_member);
        let class = if !z.is_empty() {
            PatchClass::FaceCovering(region.degree)
        } else if region.degree == 3 {
            PatchClass::FaceEmptyTriangle
        } else {
            PatchClass::FaceEmpty(region.degree)
        };
        patches.push(Patch {
            id,
            kind: PatchKind::Face {
                circuits: region.circuits.clone(),
                singletons: region.singletons.clone(),
                m: region.m,
                comp: region.comp,
            },
            degree: region.degree,
            covered_cells: region.cells.clone(),
            z,
            covered_components: Vec::new(),
            class,
        });
    }

    // Attach covered components: a component is covered by the patch covering
    // its vertices (the covering checks verify that this is well-defined).
    for (ci, comp) in components.iter().enumerate() {
        let mut owners: Vec<usize> = comp
            .iter()
            .flat_map(|&v| patches.iter().filter(move |p| p.z.contains(&v)).map(|p| p.id))
            .collect();
        owners.sort_unstable();
        owners.dedup();
        for &o in &owners {
            patches[o].covered_components.push(ci);
        }
    }

    Ok(PatchDecomposition {
        gamma: gamma.clone(),
        patches,
        patch_of_cell,
        cell_count: cells.len(),
        components,
        comp_minus_s: comp_count,
        odd_minus_s: odd_count,
    })
}

fn covered_vertices(
    cells: &Cells,
    covered: &[CellId],
    s_member: &[bool],
) -> Vec<VertexId> {
    let mut z: Vec<VertexId> = covered
        .iter()
        .flat_map(|&c| cells[c].vertices())
        .filter(|&v| !s_member[v])
        .collect();
    z.sort_unstable();
    z.dedup();
    z
}

/// Report of the covering checks over one decomposition.
#[derive(Debug, Clone)]
pub struct CoveringReport {
    pub violations: Vec<String>,
}

impl CoveringReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that the patches partition the cells, that every component of the
/// host minus S is covered by exactly one face-patch, that face-patches cover
/// at most one component, and that face-patches of degree != 3 cover at least
/// one vertex.
pub fn covering_checks(p: &PatchDecomposition) -> CoveringReport {
    let mut violations = Vec::new();
    let covered_total: usize = p.patches.iter().map(|x| x.covered_cells.len()).sum();
    if covered_total != p.cell_count {
        violations.push(format!(
            "patches cover {covered_total} cells, host has {}",
            p.cell_count
        ));
    }
    if p.patch_of_cell.contains(&usize::MAX) {
        violations.push("some cell belongs to no patch".into());
    }
    for (ci, comp) in p.components.iter().enumerate() {
        let owners: Vec<usize> = p
            .patches
            .iter()
            .filter(|patch| patch.covered_components.contains(&ci))
            .map(|patch| patch.id)
            .collect();
        if owners.len() != 1 {
            violations.push(format!(
                "component {ci} ({comp:?}) covered by {} patches",
                owners.len()
            ));
        } else if !p.patches[owners[0]].is_face() {
            violations.push(format!("component {ci} covered by a crossing-patch"));
        } else {
            // All vertices of the component must be covered by that patch.
            let z = &p.patches[owners[0]].z;
            if !comp.iter().all(|v| z.contains(v)) {
                violations.push(format!("component {ci} not fully covered by one patch"));
            }
        }
    }
    for patch in &p.patches {
        if patch.is_face() && patch.covered_components.len() > 1 {
            violations.push(format!(
                "face-patch {} covers {} components",
                patch.id,
                patch.covered_components.len()
            ));
        }
        if let PatchClass::FaceEmpty(d) = patch.class {
            violations.push(format!(
                "face-patch {} has degree {d} but covers no vertex",
                patch.id
            ));
        }
    }
    CoveringReport { violations }
}

/// Shapes of small face-patches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum PatchShape {
    Bigon,
    Triangle,
    SimpleFourCycle,
    FourCircuitThreeVertices,
    TwoPlusSingleton,
    Other,
}

/// Classifies a face-patch of degree 2, 3 or 4 (degree >= 5 is `Other`).
/// Preconditions of the shape trichotomy: at least two components outside S
/// and no loops in the host.
pub fn small_patch_shape(d: &Drawing, p: &PatchDecomposition, patch: usize) -> Result<PatchShape> {
    if p.comp_minus_s < 2 {
        return Err(Error::Precondition(
            "patch shapes need comp(G \\ S) >= 2".into(),
        ));
    }
    let patch = &p.patches[patch];
    let PatchKind::Face { circuits, singletons, .. } = &patch.kind else {
        return Err(Error::Precondition("crossing-patches have no shape".into()));
    };
    Ok(classify_face_shape(d, patch.degree, circuits, singletons))
}

pub fn classify_face_shape(
    d: &Drawing,
    degree: i64,
    circuits: &[Vec<Dart>],
    singletons: &[VertexId],
) -> PatchShape {
    let vertex_of = |dart: Dart| match d.node_of_dart(dart) {
        crate::drawing::Node::Vertex(v) => Some(v),
        _ => None,
    };
    let distinct = |circuit: &[Dart]| {
        let mut vs: Vec<VertexId> = circuit.iter().filter_map(|&x| vertex_of(x)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs.len()
    };
    let distinct_edges = |circuit: &[Dart]| {
        let mut es: Vec<EdgeId> = circuit.iter().map(|&x| x / 4).collect();
        es.sort_unstable();
        es.dedup();
        es.len()
    };
    match (degree, circuits.len(), singletons.len()) {
        (2, 1, 0) if distinct(&circuits[0]) == 2 && distinct_edges(&circuits[0]) == 2 => {
            PatchShape::Bigon
        }
        (3, 1, 0) if distinct(&circuits[0]) == 3 => PatchShape::Triangle,
        (4, 1, 0) if distinct_edges(&circuits[0]) == 4 => match distinct(&circuits[0]) {
            4 => PatchShape::SimpleFourCycle,
            3 => PatchShape::FourCircuitThreeVertices,
            _ => PatchShape::Other,
        },
        (4, 1, 1) if distinct_edges(&circuits[0]) == 2 && circuits[0].len() == 2 => {
            PatchShape::TwoPlusSingleton
        }
        _ => PatchShape::Other,
    }
}

/// Transfer class of a host cell under a weight assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellTransferClass {
    /// Crossed transfer cell (`T^x`).
    TransferCrossed,
    /// Uncrossed transfer cell with all vertices in S (`T^v`).
    TransferAllS,
    /// Uncrossed transfer cell with a vertex outside S (`T^o`).
    TransferOneOut,
    PlainCrossed,
    PlainUncrossed,
}

#[derive(Debug, Clone)]
pub struct WeightAssignment {
    pub alpha: Rational64,
    pub chi_n3: bool,
    pub transfer_edges: Vec<EdgeId>,
    pub cell_class: Vec<CellTransferClass>,
    pub w0_cell: Vec<Rational64>,
    pub wa_cell: Vec<Rational64>,
    pub patch_w0: Vec<Rational64>,
    pub patch_wa: Vec<Rational64>,
    pub total_w0: Rational64,
    pub total_wa: Rational64,
}

/// Computes `w_0` and `w_alpha` per cell and per patch.  `alpha` must lie in
/// `[0, 3]`; `chi_n3` states whether every parallel class is uncrossed.
pub fn compute_weights(
    d: &Drawing,
    p: &PatchDecomposition,
    alpha: Rational64,
    chi_n3: bool,
) -> Result<WeightAssignment> {
    if alpha < Rational64::zero() || alpha > Rational64::from_integer(3) {
        return Err(Error::AlphaOutOfRange(alpha.to_string()));
    }
    let cells = d.cells();
    // Transfer edges: edges on a P_2 or covering P_3 face-patch boundary.
    let mut transfer_edges: Vec<EdgeId> = Vec::new();
    for patch in &p.patches {
        let take = matches!(
            patch.class,
            PatchClass::FaceCovering(2) | PatchClass::FaceCovering(3) | PatchClass::FaceEmpty(2)
        );
        if !take {
            continue;
        }
        if let PatchKind::Face { circuits, .. } = &patch.kind {
            for circuit in circuits {
                for &dart in circuit {
                    transfer_edges.push(dart / 4);
                }
            }
        }
    }
    transfer_edges.sort_unstable();
    transfer_edges.dedup();

    let mut is_transfer_cell = vec![false; cells.len()];
    for &e in &transfer_edges {
        debug_assert!(!d.is_crossed(e), "transfer edges are uncrossed");
        for dart in [4 * e, 4 * e + 1] {
            is_transfer_cell[cells.cell_of(dart)] = true;
        }
    }

    let mut cell_class = Vec::with_capacity(cells.len());
    let mut w0_cell = Vec::with_capacity(cells.len());
    let mut wa_cell = Vec::with_capacity(cells.len());
    for cell in cells.iter() {
        let w0 = if cell.crossed {
            Rational64::from_integer(1)
        } else {
            Rational64::from_integer(2 * (cell.degree - 2))
        };
        let class = if is_transfer_cell[cell.id] {
            if cell.crossed {
                CellTransferClass::TransferCrossed
            } else if cell.vertices().iter().all(|&v| p.gamma.s_member[v]) {
                CellTransferClass::TransferAllS
            } else {
                CellTransferClass::TransferOneOut
            }
        } else if cell.crossed {
            CellTransferClass::PlainCrossed
        } else {
            CellTransferClass::PlainUncrossed
        };
        let wa = match class {
            CellTransferClass::TransferCrossed => w0 - alpha,
            CellTransferClass::TransferAllS => w0 - alpha - alpha,
            CellTransferClass::TransferOneOut => w0 + alpha,
            _ => w0,
        };
        cell_class.push(class);
        w0_cell.push(w0);
        wa_cell.push(wa);
    }

    let mut patch_w0 = vec![Rational64::zero(); p.patches.len()];
    let mut patch_wa = vec![Rational64::zero(); p.patches.len()];
    for patch in &p.patches {
        for &c in &patch.covered_cells {
            patch_w0[patch.id] += w0_cell[c];
            patch_wa[patch.id] += wa_cell[c];
        }
    }
    let total_w0: Rational64 = w0_cell.iter().sum();
    let total_wa: Rational64 = wa_cell.iter().sum();
    Ok(WeightAssignment {
        alpha,
        chi_n3,
        transfer_edges,
        cell_class,
        w0_cell,
        wa_cell,
        patch_w0,
        patch_wa,
        total_w0,
        total_wa,
    })
}

#[derive(Debug, Clone)]
pub struct WeightViolation {
    pub patch: usize,
    pub bound: Rational64,
    pub actual: Rational64,
}

/// Per-patch lower bound on `w_alpha(P)`.  The rows that additionally need
/// property N2 (degree-2 patches covering evenly many vertices; degree-4
/// patches at alpha > 2) fall back to the unconditional bound
/// `min(0, (2 - alpha) d)` when `n2` is false.
pub fn patch_weight_bound(
    class: PatchClass,
    z_count: usize,
    alpha: Rational64,
    chi_n3: bool,
    n2: bool,
) -> Rational64 {
    let chi = if chi_n3 { 1 } else { 0 };
    let int = Rational64::from_integer;
    let min2 = |a: Rational64, b: Rational64| if a < b { a } else { b };
    let fallback = |d: i64| min2(Rational64::zero(), (int(2) - alpha) * int(d));
    match class {
        PatchClass::CrossingPatch => int(4) - int(4) * alpha,
        PatchClass::FaceEmptyTriangle => int(2) - int(2) * alpha,
        PatchClass::FaceCovering(2) | PatchClass::FaceEmpty(2) => {
            if n2 || z_count % 2 == 1 {
                min2(int(4) + int(2) * alpha, int(12 + 4 * chi) - int(2) * alpha)
            } else {
                fallback(2)
            }
        }
        PatchClass::FaceCovering(3) => min2(
            int(6) + int(3) * alpha,
            min2(
                int(6 + 6 * chi) - alpha,
                int(10 + 4 * chi) - int(3) * alpha,
            ),
        ),
        PatchClass::FaceCovering(4) | PatchClass::FaceEmpty(4) => {
            if n2 || alpha <= int(2) {
                Rational64::zero()
            } else {
                fallback(4)
            }
        }
        PatchClass::FaceCovering(d) | PatchClass::FaceEmpty(d) => fallback(d),
    }
}

/// Evaluates the per-patch weight lower bounds and reports the patches whose
/// `w_alpha` falls below.  Preconditions: no loops, `comp(G \ S) >= 2`.
pub fn check_weight_lower_bounds(
    p: &PatchDecomposition,
    w: &WeightAssignment,
    n2: bool,
) -> Vec<WeightViolation> {
    let mut violations = Vec::new();
    for patch in &p.patches {
        let bound = patch_weight_bound(patch.class, patch.z.len(), w.alpha, w.chi_n3, n2);
        let actual = w.patch_wa[patch.id];
        if actual < bound {
            violations.push(WeightViolation {
                patch: patch.id,
                bound,
                actual,
            });
        }
    }
    violations
}

/// The three upper bounds on `comp(G \ S) - |S|` derived from a patch
/// decomposition.
#[derive(Debug, Clone)]
pub struct DeficiencyBounds {
    /// `1/2 (sum_d (4-d) |P_d^o| - 2 |P^x| - |P_3^v|) - 2`.
    pub towards: Rational64,
    /// `|P_2| + 1/2 |P_3^o| - 1/2 |P^x| - 1/4 |P_3^v| - 2`.
    pub corollary: Rational64,
    /// As above without the `|P_2|` term (valid when 3-connected).
    pub corollary_3conn: Rational64,
    pub comp_minus_s: usize,
}

pub fn deficiency_bound(p: &PatchDecomposition) -> Result<DeficiencyBounds> {
    if p.comp_minus_s < 2 {
        return Err(Error::Precondition(format!(
            "deficiency bound needs comp(G \\ S) >= 2, got {}",
            p.comp_minus_s
        )));
    }
    let int = Rational64::from_integer;
    let mut sum = Rational64::zero();
    for patch in &p.patches {
        if let PatchClass::FaceCovering(dg) = patch.class {
            sum += int(4 - dg);
        }
    }
    let crossings = int(p.crossing_patches() as i64);
    let nablas = int(p.empty_triangles() as i64);
    let towards = (sum - int(2) * crossings - nablas) / int(2) - int(2);
    let p2 = int(p.covering_faces(2) as i64);
    let p3 = int(p.covering_faces(3) as i64);
    let corollary = p2 + p3 / int(2) - crossings / int(2) - nablas / int(4) - int(2);
    let corollary_3conn = p3 / int(2) - crossings / int(2) - nablas / int(4) - int(2);
    Ok(DeficiencyBounds {
        towards,
        corollary,
        corollary_3conn,
        comp_minus_s: p.comp_minus_s,
    })
}
