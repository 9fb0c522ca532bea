//! Batch CLI: load JSON descriptions of groupoids, functors, bibundles,
//! cocycles, and simplicial actions, run an operation, and print a
//! deterministic JSON or text report.
//!
//! Exit codes: 0 success, 1 validation or mathematical failure, 2 search
//! budget or size cap exceeded, 3 I/O or schema error.

use clap::{Parser, Subcommand, ValueEnum};
use groupoidal::abelian::{AbelianGroupDescriptor, Presentation};
use groupoidal::algebra::{
    algebra_morita_check, bimodule_of_bibundle, mho_iso_check, AlgebraMoritaVerdict,
    GroupoidAlgebra,
};
use groupoidal::bibundle::{
    are_isomorphic, invert, morita_equivalent, tensor, MoritaVerdict,
};
use groupoidal::cocycle::{cohomologous, extract_cocycle, sigma};
use groupoidal::error::Error;
use groupoidal::groupoid::{
    effect, is_essential_equivalence, orbit_space, vertex_group_by_id, EssEquivVerdict,
    FiniteGroupoid,
};
use groupoidal::homology::{
    action_groupoid_chains, balanced_homology, discrete_groupoid_chains, groupoid_homology,
    mayer_vietoris_check, GroupoidChains,
};
use groupoidal::json::{
    load_json, ActionJson, BibundleJson, CocycleJson, FunctorJson, GroupoidJson, HomologyJson,
    PresentationJson,
};
use groupoidal::leaf::{holonomy_of_loop, leaves, HLoop};
use groupoidal::pi1::{coset_enumeration, pi1_action_groupoid, pi1_discrete, CosetResult};
use groupoidal::DEFAULT_BUDGET;
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Parser)]
#[command(name = "groupoidal", about = "Finite groupoid calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Search budget (default: GROUPOIDAL_BUDGET or a built-in value).
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Homology degree.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Base object or vertex.
    #[arg(long, global = true)]
    base: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a groupoid file and summarize it.
    Validate { file: PathBuf },
    /// Summary with orbit and vertex-group data.
    Info { file: PathBuf },
    /// Orbit blocks of the object set.
    Orbits { file: PathBuf },
    /// Vertex group at --base.
    VertexGroup { file: PathBuf },
    /// The effect groupoid.
    Effect { file: PathBuf },
    /// Decide whether a functor is an essential equivalence.
    EssEquiv { file: PathBuf },
    /// Tensor product of two bibundles.
    Tensor { left: PathBuf, right: PathBuf },
    /// Inverse of a principal equivalence bibundle.
    Invert { file: PathBuf },
    /// Search for an equivariant isomorphism of bibundles.
    Iso { left: PathBuf, right: PathBuf },
    /// Decide Morita equivalence of two groupoids.
    Morita { left: PathBuf, right: PathBuf },
    /// Leaves of a transitive bibundle.
    Leaves { file: PathBuf },
    /// Holonomy of a loop: second file holds {element, base, steps}.
    Holonomy { bundle: PathBuf, r#loop: PathBuf },
    /// Principal bundle glued from a cocycle.
    Sigma { file: PathBuf },
    /// Cocycle extracted from a principal bundle over a discrete base.
    ExtractCocycle { file: PathBuf },
    /// Decide whether two cocycles on one cover are cohomologous.
    Cohomologous { left: PathBuf, right: PathBuf },
    /// Groupoid homology in degree --n (groupoid or action input).
    Homology { file: PathBuf },
    /// Balanced homology BH in degree --n.
    Balanced { file: PathBuf },
    /// Mayer–Vietoris exactness report for two invariant vertex sets.
    MvCheck {
        file: PathBuf,
        /// Comma-separated vertex indices of the first subcomplex.
        #[arg(long)]
        u: String,
        /// Comma-separated vertex indices of the second subcomplex.
        #[arg(long)]
        v: String,
    },
    /// Fundamental group (vertex group or edge-path presentation).
    Pi1 { file: PathBuf },
    /// Convolution algebra structure constants.
    Algebra { file: PathBuf },
    /// Bimodule of a principal bibundle.
    Bimodule { file: PathBuf },
    /// Check the canonical balanced-tensor isomorphism for two bundles.
    MhoCheck { left: PathBuf, right: PathBuf },
    /// Morita equivalence at the algebra level.
    AlgebraMorita { left: PathBuf, right: PathBuf },
}

#[derive(Deserialize)]
struct LoopJson {
    element: String,
    base: String,
    steps: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli
        .budget
        .or_else(|| std::env::var("GROUPOIDAL_BUDGET").ok().and_then(|s| s.parse().ok()))
        .unwrap_or(DEFAULT_BUDGET);
    match run(&cli.cmd, budget, cli.n, cli.base.as_deref()) {
        Ok(value) => {
            emit(&value, cli.format);
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = match &e {
                Error::SearchBudgetExceeded { .. } | Error::CapExceeded(_) => 2,
                Error::Io(_) | Error::Schema(_) => 3,
                _ => 1,
            };
            let obj = json!({"error": {"kind": error_kind(&e), "message": e.to_string()}});
            emit(&obj, cli.format);
            ExitCode::from(code)
        }
    }
}

/// Print the report, ignoring a closed stdout (e.g. a downstream `head`).
fn emit(value: &Value, format: Format) {
    use std::io::Write;
    let text = match format {
        Format::Json => serde_json::to_string_pretty(value).unwrap() + "\n",
        Format::Text => render_text(value, 0),
    };
    let _ = std::io::stdout().write_all(text.as_bytes());
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Validation(_) => "validation",
        Error::SearchBudgetExceeded { .. } => "budget",
        Error::CapExceeded(_) => "cap",
        Error::Io(_) => "io",
        Error::Schema(_) => "schema",
        _ => "invalid",
    }
}

fn render_text(v: &Value, indent: usize) -> String {
    let mut lines = Vec::new();
    text_lines(v, indent, &mut lines);
    lines.join("\n") + "\n"
}

fn text_lines(v: &Value, indent: usize, out: &mut Vec<String>) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push(format!("{pad}{k}:"));
                        text_lines(v, indent + 1, out);
                    }
                    _ => out.push(format!("{pad}{k}: {}", scalar_text(v))),
                }
            }
        }
        Value::Array(a) => {
            for v in a {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push(format!("{pad}-"));
                        text_lines(v, indent + 1, out);
                    }
                    _ => out.push(format!("{pad}- {}", scalar_text(v))),
                }
            }
        }
        _ => out.push(format!("{pad}{}", scalar_text(v))),
    }
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn dir_of(p: &Path) -> PathBuf {
    p.parent().map(|d| d.to_path_buf()).unwrap_or_else(|| PathBuf::from("."))
}

fn load_groupoid(p: &Path) -> Result<FiniteGroupoid, Error> {
    load_json::<GroupoidJson>(p)?.to_groupoid()
}

fn load_bundle(p: &Path) -> Result<groupoidal::bibundle::Bibundle, Error> {
    load_json::<BibundleJson>(p)?.to_bibundle(&dir_of(p))
}

/// Input accepted by the homology commands: a groupoid (discrete tier) or
/// a simplicial action.
fn load_chains(p: &Path) -> Result<GroupoidChains, Error> {
    let raw: Value = load_json(p)?;
    if raw.get("complex").is_some() {
        let aj: ActionJson =
            serde_json::from_value(raw).map_err(|e| Error::Schema(e.to_string()))?;
        Ok(action_groupoid_chains(&aj.to_action()?))
    } else {
        let gj: GroupoidJson =
            serde_json::from_value(raw).map_err(|e| Error::Schema(e.to_string()))?;
        Ok(discrete_groupoid_chains(&gj.to_groupoid()?, 4))
    }
}

fn homology_json(n: usize, d: &AbelianGroupDescriptor) -> Value {
    serde_json::to_value(HomologyJson {
        n,
        rank: d.rank,
        torsion: d.torsion.iter().map(|t| t.to_string()).collect(),
    })
    .unwrap()
}

fn presentation_json(p: &groupoidal::pi1::GroupPresentation) -> Value {
    serde_json::to_value(PresentationJson {
        generators: p.generators.clone(),
        relators: p.relators.clone(),
    })
    .unwrap()
}

fn groupoid_summary(g: &FiniteGroupoid) -> Value {
    json!({
        "objects": g.n_objects(),
        "morphisms": g.n_morphisms(),
        "orbits": orbit_space(g).n_blocks(),
    })
}

fn parse_vertices(s: &str, max: usize) -> Result<BTreeSet<usize>, Error> {
    let mut out = BTreeSet::new();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let v: usize = part
            .trim()
            .parse()
            .map_err(|_| Error::Schema(format!("bad vertex index {part}")))?;
        if v >= max {
            return Err(Error::Schema(format!("vertex {v} out of range")));
        }
        out.insert(v);
    }
    Ok(out)
}

fn need_base(base: Option<&str>) -> Result<&str, Error> {
    base.ok_or_else(|| Error::InvalidInput("--base is required".into()))
}

fn run(cmd: &Cmd, budget: u64, n: Option<usize>, base: Option<&str>) -> Result<Value, Error> {
    match cmd {
        Cmd::Validate { file } => {
            let g = load_groupoid(file)?;
            Ok(groupoid_summary(&g))
        }
        Cmd::Info { file } => {
            let g = load_groupoid(file)?;
            let orbits = orbit_space(&g);
            let vgs: Vec<Value> = orbits
                .blocks
                .iter()
                .map(|b| {
                    let rep = g.object_id(b[0]);
                    let vg = vertex_group_by_id(&g, rep).unwrap();
                    json!({"object": rep, "order": vg.order()})
                })
                .collect();
            let mut summary = groupoid_summary(&g);
            summary["vertex_groups"] = Value::Array(vgs);
            summary["discrete_space"] = Value::Bool(g.is_discrete());
            Ok(summary)
        }
        Cmd::Orbits { file } => {
            let g = load_groupoid(file)?;
            let blocks: Vec<Vec<&str>> = orbit_space(&g)
                .blocks
                .iter()
                .map(|b| b.iter().map(|&a| g.object_id(a)).collect())
                .collect();
            Ok(json!({ "orbits": blocks }))
        }
        Cmd::VertexGroup { file } => {
            let g = load_groupoid(file)?;
            let b = need_base(base)?;
            let vg = vertex_group_by_id(&g, b)?;
            Ok(json!({"object": b, "order": vg.order(), "elements": vg.elements()}))
        }
        Cmd::Effect { file } => {
            let g = load_groupoid(file)?;
            let (eff, _) = effect(&g);
            Ok(serde_json::to_value(GroupoidJson::from_groupoid(&eff)).unwrap())
        }
        Cmd::EssEquiv { file } => {
            let f = load_json::<FunctorJson>(file)?.to_functor(&dir_of(file))?;
            Ok(match is_essential_equivalence(&f) {
                EssEquivVerdict::Yes => json!({"essential_equivalence": true}),
                EssEquivVerdict::No { witness } => {
                    json!({"essential_equivalence": false, "witness": witness})
                }
            })
        }
        Cmd::Tensor { left, right } => {
            let e = load_bundle(left)?;
            let f = load_bundle(right)?;
            let tp = tensor(&e, &f)?;
            let c = tp.bundle.classify();
            let mut out =
                serde_json::to_value(BibundleJson::from_bibundle(&tp.bundle)).unwrap();
            out["classification"] =
                json!({"transitive": c.transitive, "principal": c.principal});
            Ok(out)
        }
        Cmd::Invert { file } => {
            let e = load_bundle(file)?;
            let inv = invert(&e)?;
            Ok(serde_json::to_value(BibundleJson::from_bibundle(&inv)).unwrap())
        }
        Cmd::Iso { left, right } => {
            let e = load_bundle(left)?;
            let f = load_bundle(right)?;
            Ok(match are_isomorphic(&e, &f, budget)? {
                Some(m) => {
                    let map: Vec<[&str; 2]> = (0..e.n_elements())
                        .map(|i| [e.element_id(i), f.element_id(m.map[i])])
                        .collect();
                    json!({"isomorphic": true, "map": map})
                }
                None => json!({"isomorphic": false}),
            })
        }
        Cmd::Morita { left, right } => {
            let g = load_groupoid(left)?;
            let h = load_groupoid(right)?;
            Ok(match morita_equivalent(&g, &h, budget)? {
                MoritaVerdict::Equivalent { witness } => {
                    json!({"equivalent": true, "witness_size": witness.n_elements()})
                }
                MoritaVerdict::NotEquivalent { reason } => {
                    json!({"equivalent": false, "reason": reason})
                }
            })
        }
        Cmd::Leaves { file } => {
            let e = load_bundle(file)?;
            let report: Vec<Value> = leaves(&e)?
                .iter()
                .map(|l| {
                    json!({
                        "fiber_object": e.left.object_id(l.fiber_object),
                        "component": l.component.iter().map(|&i| e.element_id(i)).collect::<Vec<_>>(),
                        "underlying": l.underlying.iter().map(|&b| e.right.object_id(b)).collect::<Vec<_>>(),
                        "holonomy_order": l.holonomy.order(),
                        "holonomy_generators": l.holonomy.elements(),
                    })
                })
                .collect();
            Ok(json!({ "leaves": report }))
        }
        Cmd::Holonomy { bundle, r#loop } => {
            let e = load_bundle(bundle)?;
            let lj: LoopJson = load_json(r#loop)?;
            let l = HLoop {
                base: e.right.object_index(&lj.base)?,
                steps: lj
                    .steps
                    .iter()
                    .map(|s| e.right.morphism_index(s))
                    .collect::<Result<_, _>>()?,
            };
            let elem = e.element_index(&lj.element)?;
            let g = holonomy_of_loop(&e, elem, &l)?;
            Ok(json!({"result": e.left.morphism_id(g)}))
        }
        Cmd::Sigma { file } => {
            let c = load_json::<CocycleJson>(file)?.to_cocycle(&dir_of(file))?;
            let s = sigma(&c);
            Ok(serde_json::to_value(BibundleJson::from_bibundle(&s.bundle)).unwrap())
        }
        Cmd::ExtractCocycle { file } => {
            let e = load_bundle(file)?;
            let c = extract_cocycle(&e)?;
            Ok(serde_json::to_value(CocycleJson::from_cocycle(&c)).unwrap())
        }
        Cmd::Cohomologous { left, right } => {
            let c1 = load_json::<CocycleJson>(left)?.to_cocycle(&dir_of(left))?;
            let c2 = load_json::<CocycleJson>(right)?.to_cocycle(&dir_of(right))?;
            Ok(json!({"cohomologous": cohomologous(&c1, &c2)?.is_some()}))
        }
        Cmd::Homology { file } => {
            let ch = load_chains(file)?;
            let deg = n.unwrap_or(0);
            let d = groupoid_homology(&ch, deg, &Presentation::free(1));
            Ok(homology_json(deg, &d))
        }
        Cmd::Balanced { file } => {
            let ch = load_chains(file)?;
            let deg = n.unwrap_or(0);
            let d = balanced_homology(&ch, deg, &Presentation::free(1));
            Ok(homology_json(deg, &d))
        }
        Cmd::MvCheck { file, u, v } => {
            let sa = load_json::<ActionJson>(file)?.to_action()?;
            let nv = sa.complex.vertices.len();
            let us = parse_vertices(u, nv)?;
            let vs = parse_vertices(v, nv)?;
            let report = mayer_vietoris_check(&sa, &us, &vs)?;
            Ok(json!({ "report": report }))
        }
        Cmd::Pi1 { file } => {
            let raw: Value = load_json(file)?;
            if raw.get("complex").is_some() {
                let sa = serde_json::from_value::<ActionJson>(raw)
                    .map_err(|e| Error::Schema(e.to_string()))?
                    .to_action()?;
                let base_vertex = match base {
                    Some(b) => sa
                        .complex
                        .vertices
                        .iter()
                        .position(|x| x == b)
                        .ok_or_else(|| Error::NoSuchObject(b.to_string()))?,
                    None => 0,
                };
                let out = pi1_action_groupoid(&sa, base_vertex)?;
                let index = match coset_enumeration(&out.presentation, &out.inclusion_words, 10_000)
                {
                    CosetResult::Index(i) => json!(i),
                    CosetResult::Inconclusive => json!("inconclusive"),
                };
                Ok(json!({
                    "presentation": presentation_json(&out.presentation),
                    "group_order": out.group_order,
                    "subgroup_index": index,
                }))
            } else {
                let g = serde_json::from_value::<GroupoidJson>(raw)
                    .map_err(|e| Error::Schema(e.to_string()))?
                    .to_groupoid()?;
                let b = need_base(base)?;
                let vg = pi1_discrete(&g, b)?;
                Ok(json!({"order": vg.order(), "elements": vg.elements()}))
            }
        }
        Cmd::Algebra { file } => {
            let g = load_groupoid(file)?;
            let alg = GroupoidAlgebra::new(g.clone())?;
            let mut constants = Vec::new();
            for i in 0..alg.dim() {
                for j in 0..alg.dim() {
                    if let Some(k) = g.compose(i, j) {
                        constants.push(json!([i, j, k, 1, 1]));
                    }
                }
            }
            Ok(json!({"dim": alg.dim(), "structure_constants": constants}))
        }
        Cmd::Bimodule { file } => {
            let e = load_bundle(file)?;
            let bm = bimodule_of_bibundle(&e)?;
            let dump = |mats: &[groupoidal::RatMatrix]| -> Vec<Value> {
                let mut out = Vec::new();
                for (a, m) in mats.iter().enumerate() {
                    for r in 0..m.rows() {
                        for c in 0..m.cols() {
                            let x = m.get(r, c);
                            if !num_traits::Zero::is_zero(x) {
                                out.push(json!([
                                    a,
                                    c,
                                    r,
                                    x.numer().to_string(),
                                    x.denom().to_string()
                                ]));
                            }
                        }
                    }
                }
                out
            };
            Ok(json!({
                "dim": bm.dim(),
                "left_dim": bm.left.dim(),
                "right_dim": bm.right.dim(),
                "basis": bm.basis,
                "left_act": dump(&bm.left_act),
                "right_act": dump(&bm.right_act),
            }))
        }
        Cmd::MhoCheck { left, right } => {
            let e = load_bundle(left)?;
            let f = load_bundle(right)?;
            let out = mho_iso_check(&e, &f)?;
            Ok(json!({
                "dim_lhs": out.matrix.cols(),
                "dim_rhs": out.matrix.rows(),
                "bijective": true,
                "report": out.report,
            }))
        }
        Cmd::AlgebraMorita { left, right } => {
            let g = load_groupoid(left)?;
            let h = load_groupoid(right)?;
            Ok(match algebra_morita_check(&g, &h, budget)? {
                AlgebraMoritaVerdict::Equivalent { report } => {
                    json!({"equivalent": true, "report": report})
                }
                AlgebraMoritaVerdict::NotEquivalent { reason } => {
                    json!({"equivalent": false, "reason": reason})
                }
            })
        }
    }
}
