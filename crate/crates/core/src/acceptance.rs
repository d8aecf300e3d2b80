//! The acceptance suite: one entry per criterion, each returning a pass/fail
//! verdict with a short detail line.  Used by the `verify` CLI subcommand and
//! by the integration test target.

use crate::drawing::Drawing;
use crate::generators::{family, FamilyTag};
use crate::matching::{brute_force_deficiency, max_matching, verify_witness, Graph};
use crate::patches::{
    build_gamma_s, check_weight_lower_bounds, compute_weights, decompose_patches,
    deficiency_bound,
};
use crate::regions;
use crate::saturation::{check_proper_cell, check_saturation, triangulate};
use num_rational::Rational64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {} {} = {} ({})",
            self.id,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

pub const FAMILY_SIZES: [usize; 5] = [8, 10, 12, 14, 16];
const SWEEP_ALPHAS: [(i64, i64); 4] = [(0, 1), (4, 3), (2, 1), (3, 1)];

struct Fixture {
    name: String,
    drawing: Drawing,
}

/// Small triangulated loop-free fixtures whose subsets we enumerate.
/// All of these satisfy S2, which the weight-transfer bound needs.
fn sweep_fixtures_s2() -> Vec<Fixture> {
    vec![
        Fixture { name: "triangle".into(), drawing: Drawing::triangle() },
        Fixture { name: "k4x".into(), drawing: crate::generators::k4_crossed_triangulated() },
        Fixture { name: "k6".into(), drawing: crate::generators::k6_drawing() },
        Fixture {
            name: "double-k6-a-tri".into(),
            drawing: triangulate(&family(FamilyTag::DoubleK6A, 0).unwrap().drawing).unwrap(),
        },
    ]
}

/// Wider sweep set: also the plain bipyramids, which are triangulated and
/// loop-free but not saturated (S2 fails at base edges).
fn sweep_fixtures_n1() -> Vec<Fixture> {
    let mut v = sweep_fixtures_s2();
    for s in [6, 7, 8] {
        v.push(Fixture {
            name: format!("bipyramid-{s}"),
            drawing: crate::generators::bipyramid(s).unwrap().drawing,
        });
    }
    v
}

fn subsets_with_components(d: &Drawing) -> Vec<(Vec<usize>, usize)> {
    let n = d.n();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let (comp, _, _) = d.components_minus(&s);
        out.push((s, comp));
    }
    out
}

fn criterion_family_exactness() -> (bool, String) {
    let mut checked = 0;
    for &s in &FAMILY_SIZES {
        for tag in [
            FamilyTag::G1,
            FamilyTag::G2,
            FamilyTag::Gamma3,
            FamilyTag::Gamma4,
            FamilyTag::G5,
            FamilyTag::G6,
        ] {
            let inst = match family(tag, s) {
                Ok(i) => i,
                Err(e) => return (false, format!("{} s={s}: {e}", tag.name())),
            };
            let mu = max_matching(&Graph::from_drawing(&inst.drawing)).mu;
            if mu != inst.expected_mu {
                return (
                    false,
                    format!(
                        "{} s={s}: mu = {mu}, expected {}",
                        tag.name(),
                        inst.expected_mu
                    ),
                );
            }
            checked += 1;
        }
    }
    (true, format!("{checked} family instances match their closed forms"))
}

fn criterion_witness_tightness() -> (bool, String) {
    let mut checked = 0;
    for &s in &FAMILY_SIZES {
        let s64 = s as i64;
        for (tag, expected) in [
            (FamilyTag::G1, s64 - 4),
            (FamilyTag::G2, 4 * s64 - 10),
            (FamilyTag::Gamma3, s64 - 4),
            (FamilyTag::Gamma4, 2 * s64 - 6),
            (FamilyTag::G5, s64 - 4),
            (FamilyTag::G6, 2 * s64 - 6),
        ] {
            let inst = match family(tag, s) {
                Ok(i) => i,
                Err(e) => return (false, format!("{} s={s}: {e}", tag.name())),
            };
            let g = Graph::from_drawing(&inst.drawing);
            let w = verify_witness(&g, &inst.witness);
            if !w.tight || w.value != expected {
                return (
                    false,
                    format!(
                        "{} s={s}: witness value {} (tight: {}), expected {expected}",
                        tag.name(),
                        w.value,
                        w.tight
                    ),
                );
            }
            checked += 1;
        }
    }
    (true, format!("{checked} structural witnesses tight"))
}

fn criterion_oracle_equivalence(brute_limit: usize) -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xC0FFEE);
    let mut checked = 0;
    for _ in 0..500 {
        let g = crate::random::random_graph(&mut rng, 12);
        let mu = max_matching(&g).mu;
        let w = match brute_force_deficiency(&g, brute_limit) {
            Ok(w) => w,
            Err(e) => return (false, e.to_string()),
        };
        if g.n as i64 - 2 * mu as i64 != w.value {
            return (
                false,
                format!("random graph n={} disagrees: blossom {mu}, oracle {}", g.n, w.value),
            );
        }
        checked += 1;
    }
    let mut fixtures: Vec<(String, Graph)> = vec![
        ("triangle".into(), Graph::from_drawing(&Drawing::triangle())),
        ("k4x".into(), Graph::from_drawing(&crate::generators::k4_crossed_triangulated())),
        ("k6".into(), Graph::from_drawing(&crate::generators::k6_drawing())),
    ];
    for s in [5, 6, 7, 8] {
        fixtures.push((
            format!("bipyramid-{s}"),
            Graph::from_drawing(&crate::generators::bipyramid(s).unwrap().drawing),
        ));
    }
    for tag in [FamilyTag::DoubleK6A, FamilyTag::DoubleK6B] {
        fixtures.push((
            tag.name().into(),
            Graph::from_drawing(&family(tag, 0).unwrap().drawing),
        ));
    }
    fixtures.push((
        "loop-star-3".into(),
        Graph::from_drawing(&family(FamilyTag::LoopStar, 3).unwrap().drawing),
    ));
    fixtures.push((
        "bipyramid-t-8".into(),
        Graph::from_drawing(&family(FamilyTag::BipyramidT, 8).unwrap().drawing),
    ));
    for (name, g) in fixtures {
        if g.n > brute_limit {
            continue;
        }
        let mu = max_matching(&g).mu;
        let w = brute_force_deficiency(&g, brute_limit).unwrap();
        if g.n as i64 - 2 * mu as i64 != w.value {
            return (false, format!("fixture {name} disagrees"));
        }
        checked += 1;
    }
    (true, format!("{checked} graphs agree with the subset oracle"))
}

fn criterion_face_degree_identity() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0xFACADE);
    let mut checked = 0;
    let mut tiny = 0;
    for case in 0..220 {
        let (host, retained_edge, retained_vertex) = crate::random::random_region_case(&mut rng);
        // The host itself satisfies the identity.
        if host.face_degree_sum() != 2 * host.n() as i64 - 4 {
            return (false, format!("host identity failed on case {case}"));
        }
        let cells = host.cells();
        let structure = match regions::build(&host, &cells, &retained_edge, &retained_vertex) {
            Ok(s) => s,
            Err(e) => return (false, format!("case {case}: {e}")),
        };
        let kept = retained_vertex.iter().filter(|&&k| k).count();
        if kept <= 2 {
            tiny += 1;
        }
        let want = 2 * kept as i64 - 4;
        if structure.degree_sum() != want {
            return (
                false,
                format!(
                    "case {case}: sum(deg-2) = {}, expected {want} over {kept} vertices",
                    structure.degree_sum()
                ),
            );
        }
        checked += 1;
    }
    if tiny < 5 {
        return (false, format!("only {tiny} degenerate cases with n <= 2"));
    }
    (
        true,
        format!("{checked} region structures satisfy the identity ({tiny} with n <= 2)"),
    )
}

fn w0_total_fixtures() -> Vec<Fixture> {
    let mut v = sweep_fixtures_n1();
    for (tag, s) in [
        (FamilyTag::G5, 8),
        (FamilyTag::G5, 10),
        (FamilyTag::G6, 8),
        (FamilyTag::G1, 8),
    ] {
        v.push(Fixture {
            name: format!("{}-{s}", tag.name()),
            drawing: family(tag, s).unwrap().drawing,
        });
    }
    v.push(Fixture {
        name: "g2-8-tri".into(),
        drawing: triangulate(&family(FamilyTag::G2, 8).unwrap().drawing).unwrap(),
    });
    v
}

fn criterion_weight_totals() -> (bool, String) {
    // Sum of w0 over every triangulated fixture with all kite-edges.
    for f in w0_total_fixtures() {
        if !f.drawing.diagnostics().triangulated {
            return (false, format!("{} not triangulated", f.name));
        }
        if !f.drawing.all_kite_edges_present() {
            return (false, format!("{} missing kite-edges", f.name));
        }
        let cells = f.drawing.cells();
        let total: i64 = cells
            .iter()
            .map(|c| if c.crossed { 1 } else { 2 * (c.degree - 2) })
            .sum();
        if total != 4 * f.drawing.n() as i64 - 8 {
            return (
                false,
                format!("{}: sum w0 = {total}, expected {}", f.name, 4 * f.drawing.n() - 8),
            );
        }
    }
    // Exhaustive S sweep on the small saturated fixtures: w_alpha never
    // exceeds the w0 total.
    let mut sweeps = 0;
    for f in sweep_fixtures_s2() {
        let total_w0 = Rational64::from_integer(4 * f.drawing.n() as i64 - 8);
        for (s, comp) in subsets_with_components(&f.drawing) {
            if comp < 2 {
                continue;
            }
            let gamma = match build_gamma_s(&f.drawing, &s) {
                Ok(g) => g,
                Err(e) => return (false, format!("{} S={s:?}: {e}", f.name)),
            };
            let p = match decompose_patches(&f.drawing, &gamma) {
                Ok(p) => p,
                Err(e) => return (false, format!("{} S={s:?}: {e}", f.name)),
            };
            let chi = f.drawing.diagnostics().n3;
            for (num, den) in SWEEP_ALPHAS {
                let w = compute_weights(&f.drawing, &p, Rational64::new(num, den), chi).unwrap();
                if w.total_wa > total_w0 {
                    return (
                        false,
                        format!(
                            "{} S={s:?} alpha={num}/{den}: w_alpha total {} > {}",
                            f.name, w.total_wa, total_w0
                        ),
                    );
                }
                sweeps += 1;
            }
        }
    }
    (true, format!("w0 totals exact; {sweeps} sweep evaluations bounded"))
}

fn criterion_table3_bounds() -> (bool, String) {
    let mut sweeps = 0;
    for f in sweep_fixtures_n1() {
        let diag = f.drawing.diagnostics();
        for (s, comp) in subsets_with_components(&f.drawing) {
            if comp < 2 {
                continue;
            }
            let gamma = match build_gamma_s(&f.drawing, &s) {
                Ok(g) => g,
                Err(e) => return (false, format!("{} S={s:?}: {e}", f.name)),
            };
            let p = decompose_patches(&f.drawing, &gamma).unwrap();
            for (num, den) in SWEEP_ALPHAS {
                let w = compute_weights(&f.drawing, &p, Rational64::new(num, den), diag.n3).unwrap();
                let violations = check_weight_lower_bounds(&p, &w, diag.n2);
                if let Some(v) = violations.first() {
                    return (
                        false,
                        format!(
                            "{} S={s:?} alpha={num}/{den}: patch {} has w={} < bound {}",
                            f.name, v.patch, v.actual, v.bound
                        ),
                    );
                }
                sweeps += 1;
            }
        }
    }
    (true, format!("no Table-3 violations over {sweeps} evaluations"))
}

fn criterion_deficiency_soundness() -> (bool, String) {
    let mut sweeps = 0;
    for f in sweep_fixtures_n1() {
        for (s, comp) in subsets_with_components(&f.drawing) {
            if comp < 2 {
                continue;
            }
            let gamma = build_gamma_s(&f.drawing, &s).unwrap();
            let p = decompose_patches(&f.drawing, &gamma).unwrap();
            let b = deficiency_bound(&p).unwrap();
            let diff = Rational64::from_integer(comp as i64 - s.len() as i64);
            if b.towards < diff {
                return (
                    false,
                    format!("{} S={s:?}: towards {} < comp-|S| {}", f.name, b.towards, diff),
                );
            }
            sweeps += 1;
        }
    }
    // Tight on the triangulated Gamma_3(8) with S = bipyramid vertices.
    let inst = family(FamilyTag::G5, 8).unwrap();
    let gamma = build_gamma_s(&inst.drawing, &inst.witness).unwrap();
    let p = decompose_patches(&inst.drawing, &gamma).unwrap();
    let b = deficiency_bound(&p).unwrap();
    let expected = Rational64::from_integer(4);
    if b.towards != expected || p.comp_minus_s as i64 - 8 != 4 {
        return (
            false,
            format!("gamma3(8) bound {} not tight at {expected}", b.towards),
        );
    }
    (true, format!("bound sound over {sweeps} evaluations, tight on gamma3(8)"))
}

fn criterion_saturation_and_triangulation() -> (bool, String) {
    for (tag, s) in [(FamilyTag::Gamma3, 8), (FamilyTag::Gamma3, 10), (FamilyTag::Gamma4, 8)] {
        let inst = family(tag, s).unwrap();
        let r = check_saturation(&inst.drawing);
        if !r.simple_saturated {
            return (false, format!("{} s={s} not simple-saturated", tag.name()));
        }
    }
    for (tag, s) in [(FamilyTag::G5, 8), (FamilyTag::G6, 8)] {
        let inst = family(tag, s).unwrap();
        let (proper, sat) = check_proper_cell(&inst.drawing);
        if !(proper && sat) {
            return (
                false,
                format!("{} s={s}: proper={proper}, saturated={sat}", tag.name()),
            );
        }
    }
    let a = family(FamilyTag::DoubleK6A, 0).unwrap().drawing;
    let b = family(FamilyTag::DoubleK6B, 0).unwrap().drawing;
    if !check_saturation(&a).simple_saturated {
        return (false, "double-k6-a should be simple-saturated".into());
    }
    let rb = check_saturation(&b);
    if rb.simple_saturated || rb.insertable.is_empty() {
        return (false, "double-k6-b should admit an insertion".into());
    }
    // The saturated variant triangulates by exactly one parallel edge.
    let ta = triangulate(&a).unwrap();
    if ta.edges().len() != a.edges().len() + 1 {
        return (
            false,
            format!("double-k6-a triangulation added {} edges", ta.edges().len() - a.edges().len()),
        );
    }
    // Triangulation outputs over the saturated inputs.
    let inputs: Vec<(String, Drawing)> = vec![
        ("gamma3-8".into(), family(FamilyTag::Gamma3, 8).unwrap().drawing),
        ("gamma4-8".into(), family(FamilyTag::Gamma4, 8).unwrap().drawing),
        ("double-k6-a".into(), a),
        ("g1-8".into(), family(FamilyTag::G1, 8).unwrap().drawing),
        ("g2-8".into(), family(FamilyTag::G2, 8).unwrap().drawing),
    ];
    for (name, input) in inputs {
        let out = match triangulate(&input) {
            Ok(o) => o,
            Err(e) => return (false, format!("triangulate {name}: {e}")),
        };
        let diag = out.diagnostics();
        if !diag.triangulated || !diag.n1 || !diag.n2 {
            return (false, format!("{name}: output flags wrong"));
        }
        let r = check_saturation(&out);
        if !r.s2 {
            return (false, format!("{name}: S2 lost by triangulation"));
        }
        if out.cells().len() > 4 * out.n() - 8 {
            return (false, format!("{name}: more than 4n-8 cells"));
        }
        let again = triangulate(&out).unwrap();
        if !again.canonical_eq(&out) {
            return (false, format!("{name}: triangulate not idempotent"));
        }
        // Added edges are parallel copies of existing edges.
        for e in input.edges().len()..out.edges().len() {
            let key = out.edge(e).key();
            let copies = (0..input.edges().len())
                .filter(|&d| input.edge(d).key() == key)
                .count();
            if copies == 0 {
                return (false, format!("{name}: edge {e} is not a parallel copy"));
            }
            if out.is_crossed(e) {
                return (false, format!("{name}: added edge {e} is crossed"));
            }
        }
    }
    (true, "saturation flags and triangulation outputs as specified".into())
}

pub fn run_all(brute_limit: usize) -> Vec<CriterionResult> {
    let specs: Vec<(usize, &'static str, Box<dyn Fn() -> (bool, String)>)> = vec![
        (1, "family-exactness", Box::new(criterion_family_exactness)),
        (2, "witness-tightness", Box::new(criterion_witness_tightness)),
        (
            3,
            "oracle-equivalence",
            Box::new(move || criterion_oracle_equivalence(brute_limit)),
        ),
        (4, "face-degree-identity", Box::new(criterion_face_degree_identity)),
        (5, "weight-totals", Box::new(criterion_weight_totals)),
        (6, "table3-lower-bounds", Box::new(criterion_table3_bounds)),
        (7, "deficiency-bound-soundness", Box::new(criterion_deficiency_soundness)),
        (
            8,
            "saturation-and-triangulation",
            Box::new(criterion_saturation_and_triangulation),
        ),
    ];
    specs
        .into_iter()
        .map(|(id, name, f)| {
            let (passed, detail) = f();
            CriterionResult { id, name, passed, detail }
        })
        .collect()
}
