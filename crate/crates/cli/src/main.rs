use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Zero;
use serde_json::{json, Value};

use hypop::constructs::{
    check_diamond_poset, face_poset_capped, Construct, Face, FacePoset, DEFAULT_MAX_FACES,
};
use hypop::games::{brute_force_vertices, realize, CooperativeGame, GameError, RationalPoint};
use hypop::graphs::{alpha, alpha_inv, Graph, GraphFile, GraphTree, TreeNode};
use hypop::homology::{betti, diamond_sign_check, verify_complex, CoverSigns};
use hypop::hypergraph::{Hypergraph, HypergraphFile};
use hypop::minimodel::{basis_boundary, boundary, boundary_matrix, graded_basis, model_complex, rho, FreeComponent, SignConvention};
use hypop::variants::classify;

/// Exit status for command-line misuse.
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "hypop", version, about = "Hypergraph polytopes and minimal models of graph operads")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hypergraph pipelines.
    #[command(subcommand)]
    Hg(HgCommand),
    /// Graph pipelines.
    #[command(subcommand)]
    Graph(GraphCommand),
    /// Minimal-model pipelines.
    #[command(subcommand)]
    Model(ModelCommand),
    /// Subcategory membership.
    #[command(subcommand)]
    Variants(VariantsCommand),
}

#[derive(Subcommand)]
enum HgCommand {
    /// Validate a hypergraph file.
    Check(Input),
    /// List constructs, or count them by rank.
    Constructs {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_MAX_FACES)]
        max_faces: usize,
    },
    /// The face poset.
    Poset {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long, default_value_t = DEFAULT_MAX_FACES)]
        max_faces: usize,
    },
    /// Check the diamond property.
    Diamond {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_MAX_FACES)]
        max_faces: usize,
    },
    /// Realize the polytope as a restricted game core.
    Realize {
        #[command(flatten)]
        input: Input,
        /// `pow3`, `loday`, or a JSON file with a value table.
        #[arg(long, default_value = "pow3")]
        game: String,
        #[arg(long)]
        verify_brute_force: bool,
    },
}

#[derive(Subcommand)]
enum GraphCommand {
    /// Validate a graph file.
    Validate(Input),
    /// The incidence hypergraph of the internal edges.
    Hyper(Input),
    /// Graph-trees, one per construct of the incidence hypergraph.
    Gtrees {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        count: bool,
    },
}

#[derive(Subcommand)]
enum ModelCommand {
    /// Boundary matrices of the minimal model.
    Boundary {
        #[command(flatten)]
        input: Input,
        /// Only the map from this grade.
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        sign: Sign,
    },
    /// Betti numbers of the minimal model.
    Homology {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sign: Sign,
    },
    /// Run every model invariant and report the first failure.
    Check {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        sign: Sign,
    },
}

#[derive(Subcommand)]
enum VariantsCommand {
    /// Which subcategories the graph belongs to.
    Classify(Input),
}

#[derive(Args)]
struct Input {
    path: PathBuf,
}

#[derive(Args)]
struct Sign {
    #[arg(long, value_enum, default_value_t = SignArg::Default)]
    sign_convention: SignArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Default,
    Alt,
}

impl Sign {
    fn get(&self) -> SignConvention {
        match self.sign_convention {
            SignArg::Default => SignConvention::Default,
            SignArg::Alt => SignConvention::Alt,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Triplets,
}

enum Failure {
    Input(anyhow::Error),
    Violation(String),
    Usage(String),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Input(e)
    }
}

type Run = Result<String, Failure>;

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn load_hypergraph(input: &Input) -> anyhow::Result<(Hypergraph, Vec<String>)> {
    let file: HypergraphFile = serde_json::from_value(read_json(&input.path)?)?;
    Ok(file.build()?)
}

fn load_graph_file(input: &Input) -> anyhow::Result<GraphFile> {
    Ok(serde_json::from_value(read_json(&input.path)?)?)
}

fn load_graph(input: &Input) -> anyhow::Result<Graph> {
    Ok(Graph::from_file(&load_graph_file(input)?)?)
}

fn graph_id(input: &Input) -> String {
    input.path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("JSON values serialize")
}

fn poset(h: &Hypergraph, max_faces: usize) -> anyhow::Result<FacePoset> {
    Ok(face_poset_capped(h, max_faces)?)
}

fn hg(cmd: HgCommand) -> Run {
    match cmd {
        HgCommand::Check(input) => {
            let (h, warnings) = load_hypergraph(&input)?;
            for w in &warnings {
                eprintln!("warning: {w}");
            }
            Ok(compact(&json!({
                "vertices": h.len(),
                "hyperedges": h.hyperedges().len(),
                "connected": h.is_connected(),
                "saturated": h.is_saturated(),
            })))
        }
        HgCommand::Constructs { input, rank, count, max_faces } => {
            let (h, _) = load_hypergraph(&input)?;
            let p = poset(&h, max_faces)?;
            let chosen: Vec<&Construct> =
                p.constructs.iter().filter(|c| rank.is_none_or(|k| c.rank() as usize == k)).collect();
            if count {
                let mut out = json!({ "by_rank": p.f_vector(), "total": p.constructs.len() });
                if rank.is_some() {
                    out = json!({ "rank": rank, "total": chosen.len() });
                }
                return Ok(compact(&out));
            }
            let list: Vec<Value> = chosen
                .iter()
                .map(|c| json!({ "construct": c.display(&h), "rank": c.rank(), "tree": c.to_json(&h) }))
                .collect();
            Ok(pretty(&Value::Array(list)))
        }
        HgCommand::Poset { input, format, max_faces } => {
            let (h, _) = load_hypergraph(&input)?;
            let p = poset(&h, max_faces)?;
            match format {
                Format::Json => Ok(pretty(&p.to_json())),
                Format::Dot => Ok(p.to_dot()),
                Format::Triplets => Err(Failure::Usage("poset supports --format json or dot".into())),
            }
        }
        HgCommand::Diamond { input, max_faces } => {
            let (h, _) = load_hypergraph(&input)?;
            let r = check_diamond_poset(&poset(&h, max_faces)?);
            if let Some(w) = &r.witness {
                return Err(Failure::Violation(format!(
                    "diamond fails below {}: {} and {}: {}",
                    w.lower.display(&h),
                    w.left.display(&h),
                    w.right.display(&h),
                    w.reason
                )));
            }
            let shapes: Vec<String> = r.shapes.iter().map(|s| format!("{s:?}")).collect();
            Ok(compact(&json!({ "holds": r.holds, "checked": r.checked, "shapes": shapes })))
        }
        HgCommand::Realize { input, game, verify_brute_force } => {
            let (h, _) = load_hypergraph(&input)?;
            let g = match game.as_str() {
                "pow3" | "loday" => CooperativeGame::builtin(&game, h.ground()),
                path => CooperativeGame::from_json(&read_json(Path::new(path))?, h.ground()),
            }
            .map_err(anyhow::Error::from)?;
            let r = match realize(&h, &g) {
                Ok(r) => r,
                Err(e @ (GameError::Degenerate(..) | GameError::Infeasible(_))) => {
                    return Err(Failure::Violation(e.to_string()))
                }
                Err(e) => return Err(Failure::Input(e.into())),
            };
            let ground = h.ground();
            let mut out = json!({
                "game": game,
                "core": r.hrep.to_json(),
                "vertices": r.vertices.iter().map(|(c, p)| json!({
                    "construct": c.display(&h),
                    "point": p.to_json(ground),
                })).collect::<Vec<_>>(),
                "report": {
                    "points": r.report.points,
                    "constraints_checked": r.report.constraints_checked,
                    "all_feasible": r.report.all_feasible,
                    "pairwise_distinct": r.report.pairwise_distinct,
                },
            });
            if verify_brute_force {
                let brute = brute_force_vertices(&r.hrep).map_err(anyhow::Error::from)?;
                let got: std::collections::BTreeSet<RationalPoint> = r.vertices.iter().map(|(_, p)| p.clone()).collect();
                if got != brute {
                    return Err(Failure::Violation(format!(
                        "brute force finds {} vertices, realization gives {}",
                        brute.len(),
                        got.len()
                    )));
                }
                out["verification"] = json!("ok");
            }
            Ok(pretty(&out))
        }
    }
}

fn tree_json(n: &TreeNode) -> Value {
    json!({
        "graph": serde_json::to_value(n.graph.to_file()).expect("graph files serialize"),
        "children": n.children.iter().map(tree_json).collect::<Vec<_>>(),
    })
}

fn gtree_json(h: &Hypergraph, c: &Construct, t: &GraphTree) -> Value {
    json!({ "construct": c.display(h), "rank": c.rank(), "tree": tree_json(t.root()) })
}

fn graph(cmd: GraphCommand) -> Run {
    match cmd {
        GraphCommand::Validate(input) => {
            let g = load_graph(&input)?;
            Ok(compact(&json!({
                "vertices": g.vertices().len(),
                "edges": g.edge_count(),
                "legs": g.legs().len(),
                "b1": g.b1(),
            })))
        }
        GraphCommand::Hyper(input) => {
            let h = load_graph(&input)?.incidence_hypergraph().map_err(anyhow::Error::from)?;
            Ok(pretty(&serde_json::to_value(HypergraphFile::from(&h)).expect("hypergraph files serialize")))
        }
        GraphCommand::Gtrees { input, count } => {
            let g = load_graph(&input)?;
            let h = g.incidence_hypergraph().map_err(anyhow::Error::from)?;
            let cs = hypop::constructs::enumerate_constructs(&h).map_err(anyhow::Error::from)?;
            if count {
                return Ok(compact(&json!({ "total": cs.len() })));
            }
            let mut out = vec![];
            for c in &cs {
                let t = alpha(&g, c).map_err(anyhow::Error::from)?;
                out.push(gtree_json(&h, c, &t));
            }
            Ok(pretty(&Value::Array(out)))
        }
    }
}

fn model(cmd: ModelCommand) -> Run {
    match cmd {
        ModelCommand::Boundary { input, rank, format, sign } => {
            let g = load_graph(&input)?;
            let conv = sign.get();
            if format == Format::Dot {
                return Err(Failure::Usage("boundary supports --format json or triplets".into()));
            }
            let Some(k) = rank else {
                let c = model_complex(&g, conv).map_err(anyhow::Error::from)?;
                if format == Format::Triplets {
                    return Ok(c.boundaries.iter().map(|m| m.to_triplets()).collect::<Vec<_>>().join("\n"));
                }
                let mut out = c.to_json();
                out["sign_convention"] = json!(conv.tag());
                return Ok(pretty(&out));
            };
            let m = boundary_matrix(&g, k, conv).map_err(anyhow::Error::from)?;
            if format == Format::Triplets {
                return Ok(m.to_triplets());
            }
            let h = g.incidence_hypergraph().map_err(anyhow::Error::from)?;
            let grades = graded_basis(&g).map_err(anyhow::Error::from)?;
            let names = |k: usize| grades[k].iter().map(|c| c.display(&h)).collect::<Vec<_>>();
            Ok(pretty(&json!({
                "sign_convention": conv.tag(),
                "rank": k,
                "columns": names(k),
                "rows": names(k - 1),
                "matrix": m.to_json(),
            })))
        }
        ModelCommand::Homology { input, sign } => {
            let g = load_graph(&input)?;
            let c = model_complex(&g, sign.get()).map_err(anyhow::Error::from)?;
            let ok = verify_complex(&c).map_err(anyhow::Error::from)?;
            if !ok {
                return Err(Failure::Violation("∂∂ ≠ 0".into()));
            }
            let b = betti(&c).map_err(anyhow::Error::from)?;
            let f: Vec<usize> = c.bases.iter().map(Vec::len).collect();
            Ok(compact(&json!({
                "graph": graph_id(&input),
                "betti": b,
                "f_vector": f,
                "d_squared_zero": ok,
                "sign_convention": sign.get().tag(),
            })))
        }
        ModelCommand::Check { input, sign } => {
            let g = load_graph(&input)?;
            let checks = model_checks(&g, sign.get()).map_err(Failure::Input)?;
            let mut report = serde_json::Map::new();
            let mut first = None;
            for (name, witness) in checks {
                report.insert(name.into(), json!(witness.is_none()));
                if let (None, Some(w)) = (&first, witness) {
                    first = Some(format!("{name}: {w}"));
                }
            }
            let _ = writeln!(std::io::stdout(), "{}", compact(&Value::Object(report)));
            match first {
                Some(w) => Err(Failure::Violation(w)),
                None => Ok(String::new()),
            }
        }
    }
}

/// Each model invariant with its first witness, if any.
fn model_checks(g: &Graph, conv: SignConvention) -> anyhow::Result<Vec<(&'static str, Option<String>)>> {
    let c = model_complex(g, conv)?;
    let failures = c.failures()?;
    let squared = failures.first().map(|k| format!("∂_{k}∂_{} ≠ 0", k + 1));
    if g.edge_count() == 0 {
        return Ok(vec![("d_squared_zero", squared)]);
    }
    let h = g.incidence_hypergraph()?;
    let p = face_poset_capped(&h, DEFAULT_MAX_FACES)?;
    let mut support = None;
    let mut signs = CoverSigns::new();
    for (i, con) in p.constructs.iter().enumerate() {
        let mut got = std::collections::BTreeMap::new();
        for (f, s) in basis_boundary(&h, con, conv) {
            *got.entry(f).or_insert(0) += s;
        }
        let want: std::collections::BTreeSet<&Construct> =
            p.covers.iter().filter(|&&(_, hi)| hi == i).map(|&(lo, _)| &p.constructs[lo]).collect();
        let ok = got.values().all(|s: &i32| s.abs() == 1) && got.keys().collect::<std::collections::BTreeSet<_>>() == want;
        if !ok && support.is_none() {
            support = Some(format!("∂{}", con.display(&h)));
        }
        for (f, s) in got {
            if let Some(lo) = p.index_of(&f) {
                signs.insert((Face::Construct(lo), Face::Construct(i)), s as i8);
            }
        }
    }
    let diamond = diamond_sign_check(&p, &signs)
        .map_err(|e| anyhow!(e))?
        .map(|w| format!("{:?} to {:?} via {:?}, sum {}", w.lower, w.upper, w.middles, w.sum));
    let mut chain = None;
    for con in graded_basis(g)?.get(1).into_iter().flatten() {
        let d = boundary(&FreeComponent::basis(g, con.clone())?, conv);
        if !rho(&d).is_zero() {
            chain = Some(format!("ρ∂{} ≠ 0", con.display(&h)));
            break;
        }
    }
    let mut roundtrip = None;
    for con in &p.constructs {
        let t = alpha(g, con)?;
        if alpha_inv(g, &t)? != *con {
            roundtrip = Some(con.display(&h));
            break;
        }
    }
    Ok(vec![
        ("d_squared_zero", squared),
        ("unit_support", support),
        ("diamond_signs", diamond),
        ("chain_map", chain),
        ("alpha_roundtrip", roundtrip),
    ])
}

fn variants(cmd: VariantsCommand) -> Run {
    match cmd {
        VariantsCommand::Classify(input) => {
            let file = load_graph_file(&input)?;
            let g = Graph::from_file(&file).map_err(anyhow::Error::from)?;
            let c = classify(&g, file.genus.as_ref(), file.orientation.as_ref()).map_err(anyhow::Error::from)?;
            Ok(compact(&serde_json::to_value(c).expect("classification serializes")))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return ExitCode::from(if usage { EXIT_USAGE } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Hg(c) => hg(c),
        Command::Graph(c) => graph(c),
        Command::Model(c) => model(c),
        Command::Variants(c) => variants(c),
    };
    match result {
        Ok(out) => {
            if !out.is_empty() {
                // a closed pipe downstream is not an error of ours
                let _ = writeln!(std::io::stdout(), "{out}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Violation(w)) => {
            eprintln!("violation: {w}");
            ExitCode::from(2)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage: {m}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
