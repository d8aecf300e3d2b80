//! Command-line front end for the 1-planar matching toolkit.
//!
//! Reports are `key = value` lines in the same style as drawing files.
//! Exit status: 0 when every requested check passes, 1 on domain errors or
//! failed checks, 2 on usage errors.

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use onepmatch_core::drawing::Drawing;
use onepmatch_core::generators::{family, parse_meta, FamilyTag};
use onepmatch_core::matching::{
    brute_force_deficiency, check_theorem_bound, max_matching, verify_witness, BoundClass, Graph,
};
use onepmatch_core::patches::{
    build_gamma_s, check_weight_lower_bounds, compute_weights, covering_checks,
    decompose_patches, deficiency_bound, PatchClass,
};
use onepmatch_core::saturation::{check_proper_cell, check_saturation, triangulate};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "onepmatch",
    version,
    about = "1-planar drawings: cells, saturation, patches and matchings"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct DrawingArg {
    /// Path to a drawing file.
    #[arg(long)]
    drawing: PathBuf,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a canonical family drawing and its metadata sidecar.
    Generate {
        /// Family tag (bipyramid, bipyramid-t, g1, g2, gamma3, gamma4, g5,
        /// g6, loop-star, double-k6-a, double-k6-b).
        #[arg(long)]
        family: String,
        /// Size parameter (even s >= 8 for the main families; leaf count for
        /// loop-star; ignored by the double-k6 fixtures).
        #[arg(long, default_value_t = 8)]
        s: usize,
        /// Output path; the sidecar goes to `<out>.meta`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Validate a drawing file and print its structural flags.
    Validate(DrawingArg),
    /// Triangulate a saturated drawing by adding parallel edges.
    Triangulate {
        #[command(flatten)]
        drawing: DrawingArg,
        /// Write the result here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decompose into patches for a vertex set and report weights and bounds.
    Patches {
        #[command(flatten)]
        drawing: DrawingArg,
        /// Comma-separated vertex ids of S.
        #[arg(long, value_delimiter = ',')]
        set: Vec<usize>,
        /// Exact rational alpha, e.g. `4/3` or `2`.
        #[arg(long, default_value = "2")]
        alpha: String,
        /// `auto` derives chi_N3 from the drawing; `0`/`1` force it.
        #[arg(long, default_value = "auto")]
        chi_n3: String,
    },
    /// Maximum matching, deficiency and witness evaluation.
    Match {
        #[command(flatten)]
        drawing: DrawingArg,
        /// Comma-separated witness set S.
        #[arg(long, value_delimiter = ',')]
        witness: Option<Vec<usize>>,
        /// Read the witness from the drawing's `.meta` sidecar.
        #[arg(long)]
        witness_from_meta: bool,
    },
    /// Check a matching lower bound for a drawing class.
    Bound {
        #[command(flatten)]
        drawing: DrawingArg,
        /// One of: 3conn-drawing, drawing, 3conn-graph, graph, proper-cell,
        /// proper-cell-3conn.
        #[arg(long)]
        class: String,
        /// Override the size threshold for the proper-cell classes.
        #[arg(long)]
        min_n: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value = "acceptance")]
        suite: String,
    },
    /// Export the planarization as a DOT graph.
    ExportDot {
        #[command(flatten)]
        drawing: DrawingArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn brute_limit() -> usize {
    std::env::var("ONEPMATCH_BRUTE_LIMIT")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(14)
}

fn load(path: &PathBuf) -> Result<Drawing, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Drawing::parse(&text).map_err(|e| e.to_string())
}

fn parse_alpha(text: &str) -> Result<Rational64, String> {
    if let Some((p, q)) = text.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| format!("bad alpha `{text}`"))?;
        let q: i64 = q.trim().parse().map_err(|_| format!("bad alpha `{text}`"))?;
        if q == 0 {
            return Err("alpha denominator is zero".into());
        }
        Ok(Rational64::new(p, q))
    } else {
        let p: i64 = text.trim().parse().map_err(|_| format!("bad alpha `{text}`"))?;
        Ok(Rational64::from_integer(p))
    }
}

fn fmt_list(items: &[usize]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run() -> Result<bool, String> {
    let cli = Cli::parse();
    match cli.command {
        Command::Generate { family: name, s, out } => {
            let tag = FamilyTag::parse(&name).ok_or_else(|| format!("unknown family `{name}`"))?;
            let inst = family(tag, s).map_err(|e| e.to_string())?;
            std::fs::write(&out, inst.drawing.serialize()).map_err(|e| e.to_string())?;
            let meta_path = PathBuf::from(format!("{}.meta", out.display()));
            std::fs::write(&meta_path, inst.meta_text()).map_err(|e| e.to_string())?;
            println!("command = generate");
            println!("family = {}", tag.name());
            println!("s = {s}");
            println!("n = {}", inst.expected_n);
            println!("mu = {}", inst.expected_mu);
            println!("deficiency = {}", inst.expected_deficiency);
            println!("out = {}", out.display());
            println!("meta = {}", meta_path.display());
            Ok(true)
        }
        Command::Validate(arg) => {
            let d = load(&arg.drawing)?;
            let diag = d.diagnostics();
            let sat = check_saturation(&d);
            let (proper, proper_sat) = check_proper_cell(&d);
            println!("command = validate");
            println!("n = {}", d.n());
            println!("edges = {}", d.edges().len());
            println!("crossings = {}", d.crossings().len());
            println!("cells = {}", d.cells().len());
            println!("n1 = {}", diag.n1);
            println!("n2 = {}", diag.n2);
            println!("n3 = {}", diag.n3);
            println!("simple = {}", diag.simple);
            println!("triangulated = {}", diag.triangulated);
            println!("s1 = {}", sat.s1);
            println!("s2 = {}", sat.s2);
            println!("s3 = {}", sat.s3);
            println!("s4 = {}", sat.s4);
            println!("simple-saturated = {}", sat.simple_saturated);
            println!("proper-cell = {proper}");
            println!("proper-cell-saturated = {proper_sat}");
            println!("insertable = {}", sat.insertable.len());
            Ok(true)
        }
        Command::Triangulate { drawing, out } => {
            let d = load(&drawing.drawing)?;
            let t = triangulate(&d).map_err(|e| e.to_string())?;
            println!("command = triangulate");
            println!("added-edges = {}", t.edges().len() - d.edges().len());
            println!("cells = {}", t.cells().len());
            println!("n3 = {}", t.diagnostics().n3);
            match out {
                Some(path) => {
                    std::fs::write(&path, t.serialize()).map_err(|e| e.to_string())?;
                    println!("out = {}", path.display());
                }
                None => print!("{}", t.serialize()),
            }
            Ok(true)
        }
        Command::Patches { drawing, set, alpha, chi_n3 } => {
            let d = load(&drawing.drawing)?;
            let alpha = parse_alpha(&alpha)?;
            let diag = d.diagnostics();
            let chi = match chi_n3.as_str() {
                "auto" => diag.n3,
                "0" => false,
                "1" => true,
                other => return Err(format!("bad --chi-n3 `{other}`")),
            };
            let gamma = build_gamma_s(&d, &set).map_err(|e| e.to_string())?;
            let p = decompose_patches(&d, &gamma).map_err(|e| e.to_string())?;
            println!("command = patches");
            println!("set = {}", fmt_list(&set));
            println!(
                "retained-edges = {}",
                gamma.retained.iter().filter(|&&r| r).count()
            );
            println!("pure-crossings = {}", gamma.pure_crossings.len());
            println!("comp-minus-s = {}", p.comp_minus_s);
            println!("odd-minus-s = {}", p.odd_minus_s);
            println!("patches = {}", p.patches.len());
            println!("crossing-patches = {}", p.crossing_patches());
            for degree in 2..=8 {
                let covering = p.covering_faces(degree);
                if covering > 0 {
                    println!("covering-faces-deg-{degree} = {covering}");
                }
            }
            println!("empty-triangles = {}", p.empty_triangles());
            let cover = covering_checks(&p);
            println!("covering-ok = {}", cover.ok());
            for v in &cover.violations {
                println!("covering-violation = {v}");
            }
            let w = compute_weights(&d, &p, alpha, chi).map_err(|e| e.to_string())?;
            println!("alpha = {alpha}");
            println!("chi-n3 = {}", u8::from(chi));
            println!("transfer-edges = {}", w.transfer_edges.len());
            println!("total-w0 = {}", w.total_w0);
            println!("total-walpha = {}", w.total_wa);
            for patch in &p.patches {
                let class = match patch.class {
                    PatchClass::CrossingPatch => "crossing".to_string(),
                    PatchClass::FaceCovering(dg) => format!("P{dg}o"),
                    PatchClass::FaceEmptyTriangle => "P3v".to_string(),
                    PatchClass::FaceEmpty(dg) => format!("P{dg}-empty"),
                };
                println!(
                    "patch {} = class={class} degree={} cells={} z={} w0={} walpha={}",
                    patch.id,
                    patch.degree,
                    patch.covered_cells.len(),
                    patch.z.len(),
                    w.patch_w0[patch.id],
                    w.patch_wa[patch.id]
                );
            }
            let mut ok = cover.ok();
            if p.comp_minus_s >= 2 {
                // The per-patch bounds assume at least two components
                // outside S.
                let violations = check_weight_lower_bounds(&p, &w, diag.n2);
                println!("weight-violations = {}", violations.len());
                for v in &violations {
                    println!(
                        "weight-violation = patch {} w={} bound={}",
                        v.patch, v.actual, v.bound
                    );
                }
                ok &= violations.is_empty();
                let b = deficiency_bound(&p).map_err(|e| e.to_string())?;
                println!("bound-towards = {}", b.towards);
                println!("bound-corollary = {}", b.corollary);
                println!("bound-corollary-3conn = {}", b.corollary_3conn);
                let diff = Rational64::from_integer(p.comp_minus_s as i64 - set.len() as i64);
                println!("comp-minus-size = {diff}");
                ok &= b.towards >= diff;
            } else {
                println!("weight-violations = skipped");
                println!("bound-towards = skipped");
            }
            Ok(ok)
        }
        Command::Match { drawing, witness, witness_from_meta } => {
            let d = load(&drawing.drawing)?;
            let g = Graph::from_drawing(&d);
            let m = max_matching(&g);
            println!("command = match");
            println!("n = {}", d.n());
            println!("mu = {}", m.mu);
            println!("deficiency = {}", g.n as i64 - 2 * m.mu as i64);
            println!(
                "matching = {}",
                m.edges
                    .iter()
                    .map(|(a, b)| format!("{a}-{b}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            println!("unmatched = {}", fmt_list(&m.unmatched));
            let limit = brute_limit();
            let mut ok = true;
            if g.n <= limit {
                let oracle = brute_force_deficiency(&g, limit).map_err(|e| e.to_string())?;
                println!("oracle-deficiency = {}", oracle.value);
                println!("oracle-set = {}", fmt_list(&oracle.set));
                ok &= oracle.value == g.n as i64 - 2 * m.mu as i64;
            }
            let witness = if witness_from_meta {
                let meta_path = format!("{}.meta", drawing.drawing.display());
                let text =
                    std::fs::read_to_string(&meta_path).map_err(|e| format!("{meta_path}: {e}"))?;
                let (_, _, _, _, _, w) = parse_meta(&text).map_err(|e| e.to_string())?;
                Some(w)
            } else {
                witness
            };
            if let Some(set) = witness {
                let r = verify_witness(&g, &set);
                println!("witness = {}", fmt_list(&set));
                println!("witness-value = {}", r.value);
                println!("witness-tight = {}", r.tight);
                ok &= r.tight;
            }
            Ok(ok)
        }
        Command::Bound { drawing, class, min_n } => {
            let d = load(&drawing.drawing)?;
            let class = match class.as_str() {
                "3conn-drawing" => BoundClass::ThreeConnDrawing,
                "drawing" => BoundClass::Drawing,
                "3conn-graph" => BoundClass::ThreeConnGraph,
                "graph" => BoundClass::GraphClass,
                "proper-cell" => BoundClass::ProperCell,
                "proper-cell-3conn" => BoundClass::ProperCellThreeConn,
                other => return Err(format!("unknown class `{other}`")),
            };
            let r = check_theorem_bound(&d, class, min_n).map_err(|e| e.to_string())?;
            println!("command = bound");
            println!("class = {}", r.class.name());
            println!("n = {}", r.n);
            println!("mu = {}", r.mu);
            println!("required = {}", r.required);
            println!("assumed-threshold = {}", r.assumed_threshold);
            println!("passed = {}", r.passed);
            Ok(r.passed)
        }
        Command::Verify { suite } => {
            if suite != "acceptance" {
                return Err(format!("unknown suite `{suite}`"));
            }
            let results = onepmatch_core::acceptance::run_all(brute_limit());
            println!("command = verify");
            let mut ok = true;
            for r in &results {
                println!("{}", r.line());
                ok &= r.passed;
            }
            println!("all = {}", if ok { "PASS" } else { "FAIL" });
            Ok(ok)
        }
        Command::ExportDot { drawing, out } => {
            let d = load(&drawing.drawing)?;
            let mut dot = String::from("graph planarization {\n");
            for v in 0..d.n() {
                dot.push_str(&format!("  v{v} [shape=circle];\n"));
            }
            for x in 0..d.crossings().len() {
                dot.push_str(&format!("  x{x} [shape=point, label=\"\"];\n"));
            }
            for e in 0..d.edges().len() {
                let edge = d.edge(e);
                if let Some(x) = d.crossing_of(e) {
                    dot.push_str(&format!("  v{} -- x{x} [label=\"e{e}\"];\n", edge.u));
                    dot.push_str(&format!("  x{x} -- v{} [label=\"e{e}\"];\n", edge.v));
                } else {
                    dot.push_str(&format!("  v{} -- v{} [label=\"e{e}\"];\n", edge.u, edge.v));
                }
            }
            dot.push_str("}\n");
            match out {
                Some(path) => std::fs::write(&path, dot).map_err(|e| e.to_string())?,
                None => print!("{dot}"),
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
