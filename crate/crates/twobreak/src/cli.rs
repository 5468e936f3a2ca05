//! Command-line front end.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Map, Value};
use twobreak_core::colored::{Color, Coloring};
use twobreak_core::genome::{apply_dcj, dcj_cost, ExtremityColoring};
use twobreak_core::genome_mcps::{mcps_genomes_with, pair_weight, weight_matrix};
use twobreak_core::hardness::reduce_macd_to_circle;
use twobreak_core::{
    circle, colored, macd, oracle, BreakpointGraph, Circle, ColoredMultigraph, Error, Genome, PathPool, Scenario,
};

use crate::formats::{
    breakpoint_ids, looks_like_genome, parse_extremity_coloring, parse_genome, parse_graph, parse_simple_graph,
    write_coloring, write_genome, write_graph, ColorNames, GraphFile,
};
use crate::gen;
use crate::json::{
    dcj_from_json, dcj_to_json, is_dcj_list, scenario_field, scenario_from_json, scenario_to_json, DcjJson, MoveJson,
    SCHEMA,
};

#[derive(Parser, Debug)]
#[command(name = "twobreak", version, about = "Minimum-length and minimum-cost 2-break and DCJ scenarios")]
pub struct Cli {
    /// Edge cap for exact and exhaustive searches.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Threads for the genome pair-weight matrix.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Minimum scenario length: `<graph>` or `<genomeA> <genomeB>`.
    Dist {
        #[arg(num_args = 1..=2, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Minimum-cost scenario: `<graph> [colors]` or `<genomeA> <genomeB> <colors>`.
    Mincost {
        #[arg(num_args = 1..=3, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Minimum-cost parsimonious scenario of a circle.
    McpsCircle { graph: PathBuf, colors: Option<PathBuf> },
    /// Maximum independent set of arcs of a circle cut at a vertex.
    Misa {
        graph: PathBuf,
        colors: Option<PathBuf>,
        /// Vertex to cut at; defaults to the circle's first vertex.
        #[arg(long)]
        at: Option<String>,
    },
    /// Minimum-cost parsimonious scenario of a general graph by exact search.
    McpsGraph { graph: PathBuf, colors: Option<PathBuf> },
    /// Minimum-cost parsimonious DCJ scenario between two genomes.
    McpsGenomes { a: PathBuf, b: PathBuf, colors: PathBuf },
    /// Replays a scenario: `<inputs...> <scenario.json>`.
    Validate {
        #[arg(num_args = 2..=4, required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Circle and coloring whose minimum cost encodes the cycle
    /// decomposition of a simple Eulerian graph (`e u v` lines).
    Reduce {
        graph: PathBuf,
        #[arg(long)]
        graph_out: Option<PathBuf>,
        #[arg(long)]
        colors_out: Option<PathBuf>,
    },
    /// Exhaustive reference computations.
    Oracle {
        #[command(subcommand)]
        op: OracleOp,
    },
    /// Seeded random instances.
    Gen {
        #[arg(value_enum)]
        kind: GenKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Edges for graphs and circles, genes for genomes.
        #[arg(long, default_value_t = 5)]
        size: usize,
        #[arg(long, default_value_t = 3)]
        colors: u32,
        /// Vertex count for `graph`.
        #[arg(long)]
        vertices: Option<u32>,
        /// Directory for genome output (`A.gen`, `B.gen`, `colors.txt`).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OracleOp {
    /// Shortest 2-break scenario by breadth-first search
    MinLength { graph: PathBuf },
    /// Cheapest scenario of any length by 0-1 breadth-first search
    MinCost { graph: PathBuf, colors: Option<PathBuf> },
    /// Largest alternating cycle decomposition by enumeration
    Macd { graph: PathBuf },
    /// Cheapest parsimonious scenario over all shortest scenarios
    Mcps { graph: PathBuf, colors: Option<PathBuf> },
    /// Largest independent arc set of a circle by backtracking
    Misa { graph: PathBuf, colors: Option<PathBuf> },
    /// Every parsimonious scenario of a small graph
    Scenarios { graph: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Graph,
    Circle,
    Genomes,
}

/// Parses `argv`, runs the command and writes its report; returns the
/// process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() { write!(err, "{e}") } else { write!(out, "{e}") };
            return code;
        }
    };
    match execute(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => serde_json::to_string_pretty(&report.json).expect("JSON values serialize") + "\n",
                Format::Text => report.text,
            };
            match out.write_all(text.as_bytes()) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(err, "error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e:#}");
            exit_code(&e)
        }
    }
}

/// 2 for an exceeded search cap, 1 otherwise.
pub fn exit_code(e: &anyhow::Error) -> i32 {
    let capped = e.chain().any(|c| matches!(c.downcast_ref::<Error>(), Some(Error::CapExceeded { .. })));
    if capped {
        2
    } else {
        1
    }
}

pub struct Report {
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(command: &str, mut fields: Map<String, Value>) -> Self {
        let mut text = String::new();
        for (k, v) in &fields {
            if !v.is_array() && !v.is_object() {
                writeln!(text, "{k}: {}", v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()))
                    .expect("writing to a String");
            }
        }
        fields.insert("schema".into(), json!(SCHEMA));
        fields.insert("command".into(), json!(command));
        Report { json: Value::Object(fields), text }
    }

    fn with_text(mut self, text: String) -> Self {
        self.text = text;
        self
    }
}

fn fields(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        _ => unreachable!("reports are built from objects"),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

struct GenomePair {
    a: Genome,
    b: Genome,
    bg: BreakpointGraph,
    col: Option<ExtremityColoring>,
}

/// A graph instance read from a graph file or built from a genome pair.
struct Loaded {
    file: GraphFile,
    col: Option<Coloring>,
    genomes: Option<GenomePair>,
}

fn load(paths: &[PathBuf], want_colors: bool) -> Result<Loaded> {
    let first = read(&paths[0])?;
    if looks_like_genome(&first) {
        let [_, b, rest @ ..] = paths else { bail!("a genome pair needs two genome files") };
        if rest.len() > 1 {
            bail!("expected `<genomeA> <genomeB> [colors]`");
        }
        let a = parse_genome(&first).with_context(|| format!("parsing {}", paths[0].display()))?.genome;
        let b = parse_genome(&read(b)?).with_context(|| format!("parsing {}", b.display()))?.genome;
        let bg = BreakpointGraph::new(&a, &b)?;
        let mut file = GraphFile::from_graph(bg.graph.clone(), breakpoint_ids(&bg));
        let (col, ecol) = match rest.first() {
            Some(p) => {
                let ecol = parse_extremity_coloring(&read(p)?, &a, &mut file.names)
                    .with_context(|| format!("parsing {}", p.display()))?;
                (Some(bg.coloring(&ecol)?), Some(ecol))
            }
            None if want_colors => bail!("a coloring file is required"),
            None => (None, None),
        };
        return Ok(Loaded { file, col, genomes: Some(GenomePair { a, b, bg, col: ecol }) });
    }
    if paths.len() > 2 {
        bail!("expected `<graph> [colors]`");
    }
    let mut file = parse_graph(&first).with_context(|| format!("parsing {}", paths[0].display()))?;
    let col = match paths.get(1) {
        Some(p) => Some(file.coloring(Some(&read(p)?)).with_context(|| format!("coloring from {}", p.display()))?),
        None if want_colors => Some(file.coloring(None)?),
        None => file.colors.iter().all(Option::is_some).then(|| file.coloring(None)).transpose()?,
    };
    Ok(Loaded { file, col, genomes: None })
}

fn scenario_json(f: &GraphFile, s: &Scenario) -> Result<Value> {
    Ok(serde_json::to_value(scenario_to_json(f, s)?)?)
}

fn exact_cap(cli: &Cli) -> usize {
    cli.cap.unwrap_or(macd::DEFAULT_CAP)
}

fn oracle_cap(cli: &Cli) -> usize {
    cli.cap.unwrap_or(oracle::DEFAULT_CAP)
}

fn execute(cli: &Cli) -> Result<Report> {
    log::debug!("running {:?}", cli.command);
    match &cli.command {
        Command::Dist { inputs } => dist(cli, inputs),
        Command::Mincost { inputs } => mincost(cli, inputs),
        Command::McpsCircle { graph, colors } => {
            let l = load(&paths(graph, colors), true)?;
            let col = l.col.expect("coloring required");
            let c = Circle::from_graph(&l.file.graph)?;
            let (cost, s) = circle::mcps_circle(&c, &col)?;
            let f = json!({
                "cost": cost,
                "length": s.len(),
                "misa": c.e() as u64 - cost,
                "scenario": scenario_json(&l.file, &s)?,
            });
            Ok(Report::new("mcps-circle", fields(f)))
        }
        Command::Misa { graph, colors, at } => {
            let l = load(&paths(graph, colors), true)?;
            let col = l.col.expect("coloring required");
            let c = Circle::from_graph(&l.file.graph)?;
            let v = match at {
                Some(id) => l.file.vertex(id)?,
                None => c.vertices[0],
            };
            let p = circle::split_at_vertex(&c, v, &col)?;
            let (size, arcs) = circle::misa_path(&p);
            let ids = |k: usize| l.file.id(p.vertices[k]).to_string();
            let arcs: Vec<Value> = arcs.iter().map(|a| json!({"start": a.start, "end": a.end, "from": ids(a.start), "to": ids(a.end)})).collect();
            let path: Vec<String> = (0..p.vertices.len()).map(ids).collect();
            let f = json!({"size": size, "path_edges": p.len(), "path": path, "arcs": arcs, "cost": c.e() - size});
            Ok(Report::new("misa", fields(f)))
        }
        Command::McpsGraph { graph, colors } => {
            let l = load(&paths(graph, colors), true)?;
            let col = l.col.expect("coloring required");
            let r = twobreak_core::mcps_graph_exact(&l.file.graph, &col, exact_cap(cli))?;
            let parts: Vec<Vec<u32>> = r.decomposition.parts.iter().map(|p| p.iter().map(|x| x.0).collect()).collect();
            let f = json!({
                "cost": r.cost,
                "length": r.scenario.len(),
                "cycles": r.decomposition.len(),
                "decomposition": parts,
                "scenario": scenario_json(&l.file, &r.scenario)?,
            });
            Ok(Report::new("mcps-graph", fields(f)))
        }
        Command::McpsGenomes { a, b, colors } => {
            let l = load(&[a.clone(), b.clone(), colors.clone()], true)?;
            let gp = l.genomes.as_ref().ok_or_else(|| anyhow!("mcps-genomes takes genome files"))?;
            genome_report(cli, "mcps-genomes", &l.file, gp, gp.col.as_ref().expect("coloring required"))
        }
        Command::Validate { inputs } => validate(inputs),
        Command::Reduce { graph, graph_out, colors_out } => reduce(graph, graph_out.as_deref(), colors_out.as_deref()),
        Command::Oracle { op } => run_oracle(cli, op),
        Command::Gen { kind, seed, size, colors, vertices, out } => generate(*kind, *seed, *size, *colors, *vertices, out.as_deref()),
    }
}

fn paths(graph: &Path, colors: &Option<PathBuf>) -> Vec<PathBuf> {
    core::iter::once(graph.to_path_buf()).chain(colors.clone()).collect()
}

/// Parallel pair weights when more than one job is requested.
fn weigher(jobs: usize) -> Result<Box<dyn Fn(&PathPool, &Coloring) -> twobreak_core::Result<Vec<Vec<u64>>>>> {
    if jobs <= 1 {
        return Ok(Box::new(weight_matrix));
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    Ok(Box::new(move |p: &PathPool, col: &Coloring| {
        pool.install(|| {
            p.aa.par_iter()
                .map(|a| p.bb.iter().map(|b| pair_weight(p.vertex_count, a, b, col)).collect())
                .collect()
        })
    }))
}

fn genome_report(cli: &Cli, command: &str, file: &GraphFile, gp: &GenomePair, col: &ExtremityColoring) -> Result<Report> {
    let weigh = weigher(cli.jobs)?;
    let r = mcps_genomes_with(&gp.a, &gp.b, col, &*weigh)?;
    if !r.dropped.is_empty() {
        log::warn!("{} 2-break(s) only exchange telomere loops and have no DCJ form: {:?}", r.dropped.len(), r.dropped);
    }
    let dcj: Vec<DcjJson> = r.dcj.iter().map(dcj_to_json).collect();
    let s = &r.summary;
    let f = json!({
        "cost": r.cost,
        "length": r.length,
        "dcj_count": r.dcj.len(),
        "scenario": dcj,
        "two_breaks": scenario_json(file, &r.two_breaks)?,
        "dropped": r.dropped,
        "decomposition": {
            "circles": s.circles,
            "aa": s.aa,
            "bb": s.bb,
            "cycles": s.circles + s.pairs.len(),
            "circle_cost": s.circle_cost,
            "matching_cost": s.matching_cost,
            "pairs": s.pairs,
        },
    });
    Ok(Report::new(command, fields(f)))
}

fn dist(cli: &Cli, inputs: &[PathBuf]) -> Result<Report> {
    let l = load(inputs, false)?;
    if let Some(gp) = &l.genomes {
        // every extremity one color: the MCPS pipeline then yields a
        // minimum-length scenario without the exact cycle search
        let uniform: ExtremityColoring = gp.a.extremities().into_iter().map(|x| (x, Color(0))).collect();
        let r = genome_report(cli, "dist", &l.file, gp, &uniform)?;
        let mut f = fields(r.json);
        f.remove("cost");
        f.remove("schema");
        f.remove("command");
        if let Some(Value::Object(d)) = f.get_mut("decomposition") {
            d.retain(|k, _| matches!(k.as_str(), "circles" | "aa" | "bb" | "cycles"));
        }
        f.insert("edges".into(), json!(gp.bg.graph.e()));
        return Ok(Report::new("dist", f));
    }
    let g = &l.file.graph;
    let (c, d) = macd::macd_exact(g, exact_cap(cli))?;
    let s = twobreak_core::parsimonious_scenario(g, &d)?;
    let f = json!({"length": s.len(), "edges": g.e(), "cycles": c, "scenario": scenario_json(&l.file, &s)?});
    Ok(Report::new("dist", fields(f)))
}

fn mincost(cli: &Cli, inputs: &[PathBuf]) -> Result<Report> {
    let l = load(inputs, true)?;
    let col = l.col.clone().expect("coloring required");
    let g = &l.file.graph;
    let j = colored::merged_graph(g, &col)?;
    let (cj, _) = macd::macd_exact(&j.graph, exact_cap(cli))?;
    let (cost, s) = colored::min_cost_scenario(g, &col, exact_cap(cli))?;
    let f = json!({
        "cost": cost,
        "length": s.len(),
        "merged": {"edges": j.graph.e(), "cycles": cj},
        "scenario": scenario_json(&l.file, &s)?,
    });
    Ok(Report::new("mincost", fields(f)))
}

fn validate(inputs: &[PathBuf]) -> Result<Report> {
    let (doc_path, rest) = inputs.split_last().expect("clap requires two or more inputs");
    let doc: Value = serde_json::from_str(&read(doc_path)?).with_context(|| format!("parsing {}", doc_path.display()))?;
    let l = load(rest, false)?;
    let moves = scenario_field(&doc, "scenario").ok_or_else(|| anyhow!("no scenario in {}", doc_path.display()))?;
    let mut f = Map::new();
    let mut ok = true;

    let two_breaks = if is_dcj_list(&moves) { scenario_field(&doc, "two_breaks") } else { Some(moves.clone()) };
    if let Some(tb) = two_breaks {
        let moves: Vec<MoveJson> = serde_json::from_value(tb).context("reading 2-break moves")?;
        let s = scenario_from_json(&l.file, &moves)?;
        let rep = twobreak_core::validate_scenario(&l.file.graph, &s)?;
        ok &= rep.final_terminal;
        f.insert("length".into(), json!(rep.length));
        f.insert("final_terminal".into(), json!(rep.final_terminal));
        if let Some(col) = &l.col {
            f.insert("cost".into(), json!(colored::scenario_cost(&l.file.graph, &s, col)?));
        }
    }
    if is_dcj_list(&moves) {
        let gp = l.genomes.as_ref().ok_or_else(|| anyhow!("a DCJ scenario needs genome inputs"))?;
        let dcjs: Vec<DcjJson> = serde_json::from_value(moves).context("reading DCJ moves")?;
        let mut genome = gp.a.clone();
        let mut cost = 0u64;
        for (i, m) in dcjs.iter().enumerate() {
            let m = dcj_from_json(m).with_context(|| format!("DCJ {i}"))?;
            if let Some(col) = &gp.col {
                cost += dcj_cost(&m, &genome, col)? as u64;
            }
            genome = apply_dcj(&genome, &m).with_context(|| format!("DCJ {i}"))?;
        }
        let reached = genome == gp.b;
        ok &= reached;
        f.insert("dcj_count".into(), json!(dcjs.len()));
        f.insert("reaches_target".into(), json!(reached));
        if gp.col.is_some() {
            match f.get("cost").and_then(Value::as_u64) {
                Some(c) => ok &= c == cost,
                None => {
                    f.insert("cost".into(), json!(cost));
                }
            }
            f.insert("dcj_cost".into(), json!(cost));
        }
        if !f.contains_key("length") {
            f.insert("length".into(), json!(dcjs.len()));
        }
    }
    for key in ["length", "cost"] {
        if let (Some(claimed), Some(found)) = (doc.get(key), f.get(key)) {
            ok &= claimed == found;
        }
    }
    f.insert("ok".into(), json!(ok));
    Ok(Report::new("validate", f))
}

fn reduce(graph: &Path, graph_out: Option<&Path>, colors_out: Option<&Path>) -> Result<Report> {
    let (sg, names) = parse_simple_graph(&read(graph)?).with_context(|| format!("parsing {}", graph.display()))?;
    let r = reduce_macd_to_circle(&sg)?;
    let ids: Vec<String> = (1..=r.graph.vertex_count()).map(|i| format!("v{i}")).collect();
    let mut color_names = ColorNames::default();
    for n in &names {
        color_names.intern(n);
    }
    let graph_text = write_graph(&r.graph, &ids, None);
    let coloring_text = write_coloring(&ids, &r.coloring, &color_names);
    if let Some(p) = graph_out {
        std::fs::write(p, &graph_text).with_context(|| format!("writing {}", p.display()))?;
    }
    if let Some(p) = colors_out {
        std::fs::write(p, &coloring_text).with_context(|| format!("writing {}", p.display()))?;
    }
    let tour: Vec<&str> = r.tour.iter().map(|&u| names[u as usize].as_str()).collect();
    let text = write_graph(&r.graph, &ids, Some((&r.coloring, &color_names)));
    let f = json!({"edges": r.graph.e(), "tour": tour, "graph": graph_text, "coloring": coloring_text});
    Ok(Report::new("reduce", fields(f)).with_text(text))
}

fn run_oracle(cli: &Cli, op: &OracleOp) -> Result<Report> {
    let cap = oracle_cap(cli);
    let (name, f) = match op {
        OracleOp::MinLength { graph } => {
            let l = load(&[graph.clone()], false)?;
            ("min-length", json!({"length": oracle::brute_min_length(&l.file.graph, cap)?}))
        }
        OracleOp::MinCost { graph, colors } => {
            let l = load(&paths(graph, colors), true)?;
            ("min-cost", json!({"cost": oracle::brute_min_cost(&l.file.graph, l.col.as_ref().expect("coloring"), cap)?}))
        }
        OracleOp::Macd { graph } => {
            let l = load(&[graph.clone()], false)?;
            let cap = cli.cap.unwrap_or(10);
            ("macd", json!({"cycles": oracle::brute_macd(&l.file.graph, cap)?}))
        }
        OracleOp::Mcps { graph, colors } => {
            let l = load(&paths(graph, colors), true)?;
            ("mcps", json!({"cost": oracle::brute_mcps(&l.file.graph, l.col.as_ref().expect("coloring"), cap)?}))
        }
        OracleOp::Misa { graph, colors } => {
            let l = load(&paths(graph, colors), true)?;
            let c = Circle::from_graph(&l.file.graph)?;
            ("misa", json!({"size": oracle::brute_misa_circle(&c, l.col.as_ref().expect("coloring"), cap)?}))
        }
        OracleOp::Scenarios { graph } => {
            let l = load(&[graph.clone()], false)?;
            let all = oracle::enumerate_parsimonious_scenarios(&l.file.graph, cap)?;
            let list = all.iter().map(|s| scenario_json(&l.file, s)).collect::<Result<Vec<_>>>()?;
            ("scenarios", json!({"count": all.len(), "scenarios": list}))
        }
    };
    Ok(Report::new(&format!("oracle {name}"), fields(f)))
}

fn generate(kind: GenKind, seed: u64, size: usize, colors: u32, vertices: Option<u32>, out: Option<&Path>) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names = ColorNames::default();
    for c in 0..colors.max(1) {
        names.intern(&format!("c{c}"));
    }
    let graph_text = |g: &ColoredMultigraph, col: &Coloring, names: &ColorNames| {
        let ids: Vec<String> = (0..g.vertex_count()).map(|i| i.to_string()).collect();
        write_graph(g, &ids, Some((col, names)))
    };
    let text = match kind {
        GenKind::Graph => {
            let n = vertices.unwrap_or(size as u32 + 1).max(1);
            let g = gen::eulerian_graph(&mut rng, size, n);
            let col = gen::coloring(&mut rng, n, colors);
            graph_text(&g, &col, &names)
        }
        GenKind::Circle => {
            let (g, col) = gen::colored_circle(&mut rng, size, colors);
            graph_text(&g, &col, &names)
        }
        GenKind::Genomes => {
            let dir = out.ok_or_else(|| anyhow!("`gen genomes` needs --out DIR"))?;
            let n = size.max(1) as u32;
            let a = gen::genome(&mut rng, n, n.div_ceil(2));
            let b = gen::genome(&mut rng, n, n.div_ceil(2));
            let col = gen::extremity_coloring(&mut rng, &a, colors);
            std::fs::create_dir_all(dir)?;
            let mut ctext = String::new();
            for (x, c) in &col {
                writeln!(ctext, "{} {}", crate::formats::extremity_token(*x), names.name(*c)).expect("writing to a String");
            }
            for (name, body) in [("A.gen", write_genome("A", &a)), ("B.gen", write_genome("B", &b)), ("colors.txt", ctext)] {
                let p = dir.join(name);
                std::fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
            }
            let f = json!({"genes": n, "files": ["A.gen", "B.gen", "colors.txt"], "dir": dir.display().to_string()});
            return Ok(Report::new("gen", fields(f)));
        }
    };
    let f = json!({"seed": seed, "instance": text.clone()});
    Ok(Report::new("gen", fields(f)).with_text(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(core::iter::once("twobreak").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_subcommand_is_exit_one() {
        let (code, _, err) = run_str(&["frobnicate"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
    }

    #[test]
    fn missing_file_is_exit_one() {
        let (code, _, err) = run_str(&["dist", "/nonexistent/graph.txt"]);
        assert_eq!(code, 1);
        assert!(err.contains("reading"));
    }

    #[test]
    fn cap_error_maps_to_two() {
        let e = anyhow::Error::new(Error::CapExceeded { what: "x", size: 9, cap: 5 }).context("outer");
        assert_eq!(exit_code(&e), 2);
        assert_eq!(exit_code(&anyhow!("plain")), 1);
    }
}
