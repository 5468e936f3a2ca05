//! Text formats: colored graphs, colorings, simple graphs and genomes.
//!
//! Graph files hold one item per line: `v <id> [color]` declares a vertex,
//! `b <u> <v>` adds a black edge and `g <u> <v>` a gray edge. Vertices used
//! by edges without a declaration are created on first use. Black edges get
//! labels 1..e and gray edges e+1..2e, both in file order. `#` starts a
//! comment. The vertex id `@` and the color name `@` are reserved for the
//! telomere.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use anyhow::{anyhow, bail, Context, Result};
use twobreak_core::colored::{Color, Coloring};
use twobreak_core::genome::{ChromosomeKind, ExtremityColoring};
use twobreak_core::hardness::SimpleGraph;
use twobreak_core::{BreakpointGraph, Chromosome, ColoredMultigraph, End, Extremity, GeneId, Genome, Vertex};

pub const TELOMERE_ID: &str = "@";

/// Meaningful tokens of each line, with 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

/// Color names to dense color indices, in order of first appearance.
#[derive(Clone, Debug, Default)]
pub struct ColorNames {
    names: Vec<String>,
    index: HashMap<String, Color>,
}

impl ColorNames {
    pub fn intern(&mut self, name: &str) -> Color {
        if name == TELOMERE_ID {
            return Color::TELOMERE;
        }
        if let Some(&c) = self.index.get(name) {
            return c;
        }
        let c = Color(self.names.len() as u32);
        self.names.push(name.to_string());
        self.index.insert(name.to_string(), c);
        c
    }

    pub fn name(&self, c: Color) -> &str {
        if c == Color::TELOMERE {
            TELOMERE_ID
        } else {
            &self.names[c.0 as usize]
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// A parsed graph file together with its vertex names and any inline colors.
#[derive(Clone, Debug)]
pub struct GraphFile {
    pub graph: ColoredMultigraph,
    pub ids: Vec<String>,
    pub index: HashMap<String, Vertex>,
    pub colors: Vec<Option<Color>>,
    pub names: ColorNames,
}

impl GraphFile {
    pub fn vertex(&self, id: &str) -> Result<Vertex> {
        self.index.get(id).copied().ok_or_else(|| anyhow!("unknown vertex `{id}`"))
    }

    pub fn id(&self, v: Vertex) -> &str {
        &self.ids[v.0 as usize]
    }

    /// Inline colors overlaid with an optional coloring file; the telomere
    /// vertex defaults to the reserved color.
    pub fn coloring(&mut self, color_file: Option<&str>) -> Result<Coloring> {
        let mut colors = self.colors.clone();
        if let Some(text) = color_file {
            for (line, toks) in lines(text) {
                let [id, name] = toks[..] else { bail!("line {line}: expected `<vertex> <color>`") };
                let v = self.vertex(id).with_context(|| format!("line {line}"))?;
                colors[v.0 as usize] = Some(self.names.intern(name));
            }
        }
        let mut out = Vec::with_capacity(colors.len());
        for (i, c) in colors.into_iter().enumerate() {
            match c {
                Some(c) => out.push(c),
                None if self.ids[i] == TELOMERE_ID => out.push(Color::TELOMERE),
                None => bail!("vertex `{}` has no color", self.ids[i]),
            }
        }
        Ok(Coloring::new(out))
    }

    /// Wraps an already-built graph with the given vertex names.
    pub fn from_graph(graph: ColoredMultigraph, ids: Vec<String>) -> Self {
        let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), Vertex(i as u32))).collect();
        let colors = vec![None; ids.len()];
        GraphFile { graph, ids, index, colors, names: ColorNames::default() }
    }
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut ids: Vec<String> = Vec::new();
    let mut index: HashMap<String, Vertex> = HashMap::new();
    let mut colors: Vec<Option<Color>> = Vec::new();
    let mut names = ColorNames::default();
    let mut black = Vec::new();
    let mut gray = Vec::new();
    let mut vertex = |id: &str, ids: &mut Vec<String>, colors: &mut Vec<Option<Color>>| -> Vertex {
        *index.entry(id.to_string()).or_insert_with(|| {
            ids.push(id.to_string());
            colors.push(None);
            Vertex(ids.len() as u32 - 1)
        })
    };
    for (line, toks) in lines(text) {
        match toks[..] {
            ["v", id] => {
                vertex(id, &mut ids, &mut colors);
            }
            ["v", id, name] => {
                let v = vertex(id, &mut ids, &mut colors);
                let c = names.intern(name);
                if colors[v.0 as usize].is_some_and(|old| old != c) {
                    bail!("line {line}: vertex `{id}` colored twice");
                }
                colors[v.0 as usize] = Some(c);
            }
            [kind @ ("b" | "g"), u, w] => {
                let e = (vertex(u, &mut ids, &mut colors), vertex(w, &mut ids, &mut colors));
                if kind == "b" { black.push(e) } else { gray.push(e) }
            }
            _ => bail!("line {line}: expected `v <id> [color]`, `b <u> <v>` or `g <u> <v>`"),
        }
    }
    let graph = ColoredMultigraph::new(ids.len() as u32, &black, &gray)?;
    let index = ids.iter().enumerate().map(|(i, s)| (s.clone(), Vertex(i as u32))).collect();
    Ok(GraphFile { graph, ids, index, colors, names })
}

/// Graph file text; colors are written inline when given.
pub fn write_graph(g: &ColoredMultigraph, ids: &[String], col: Option<(&Coloring, &ColorNames)>) -> String {
    let mut out = String::new();
    for (i, id) in ids.iter().enumerate() {
        match col {
            Some((col, names)) => writeln!(out, "v {id} {}", names.name(col.of(Vertex(i as u32)))),
            None => writeln!(out, "v {id}"),
        }
        .expect("writing to a String");
    }
    for (kind, edges) in [("b", g.black()), ("g", g.gray())] {
        for e in edges {
            writeln!(out, "{kind} {} {}", ids[e.ends.0 .0 as usize], ids[e.ends.1 .0 as usize]).expect("writing to a String");
        }
    }
    out
}

pub fn write_coloring(ids: &[String], col: &Coloring, names: &ColorNames) -> String {
    let mut out = String::new();
    for (i, id) in ids.iter().enumerate() {
        writeln!(out, "{id} {}", names.name(col.of(Vertex(i as u32)))).expect("writing to a String");
    }
    out
}

/// Simple graph file: `e <u> <v>` lines; vertex names are arbitrary tokens
/// numbered in order of first appearance.
pub fn parse_simple_graph(text: &str) -> Result<(SimpleGraph, Vec<String>)> {
    let mut ids: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    let mut edges = Vec::new();
    for (line, toks) in lines(text) {
        let ["e", u, w] = toks[..] else { bail!("line {line}: expected `e <u> <v>`") };
        let mut id = |s: &str| {
            *index.entry(s.to_string()).or_insert_with(|| {
                ids.push(s.to_string());
                ids.len() as u32 - 1
            })
        };
        edges.push((id(u), id(w)));
    }
    Ok((SimpleGraph::new(ids.len() as u32, edges)?, ids))
}

/// A named genome.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenomeFile {
    pub name: String,
    pub genome: Genome,
}

pub fn parse_genome(text: &str) -> Result<GenomeFile> {
    let mut name = None;
    let mut chromosomes = Vec::new();
    let mut unoriented = BTreeSet::new();
    for (line, toks) in lines(text) {
        let gene = |t: &str| -> Result<(GeneId, bool)> {
            let (reversed, digits) = match t.strip_prefix('-') {
                Some(d) => (true, d),
                None => (false, t.strip_prefix('+').unwrap_or(t)),
            };
            let id: u32 = digits.parse().map_err(|_| anyhow!("line {line}: bad gene `{t}`"))?;
            if id == 0 {
                bail!("line {line}: gene ids start at 1");
            }
            Ok((GeneId(id), reversed))
        };
        match toks[0] {
            ">" => {
                if name.is_some() || !chromosomes.is_empty() {
                    bail!("line {line}: one genome per file");
                }
                name = Some(toks[1..].join(" "));
            }
            h if h.starts_with('>') => {
                if name.is_some() || !chromosomes.is_empty() {
                    bail!("line {line}: one genome per file");
                }
                name = Some(core::iter::once(&h[1..]).chain(toks[1..].iter().copied()).collect::<Vec<_>>().join(" "));
            }
            kind @ ("L" | "C") => {
                let genes = toks[1..].iter().map(|t| gene(t)).collect::<Result<Vec<_>>>()?;
                if genes.is_empty() {
                    bail!("line {line}: empty chromosome");
                }
                let kind = if kind == "L" { ChromosomeKind::Linear } else { ChromosomeKind::Circular };
                chromosomes.push(Chromosome { kind, genes });
            }
            "U" => {
                for t in &toks[1..] {
                    unoriented.insert(gene(t)?.0);
                }
            }
            other => bail!("line {line}: unknown line kind `{other}`"),
        }
    }
    let genome = Genome::from_chromosomes(&chromosomes, &unoriented)?;
    Ok(GenomeFile { name: name.unwrap_or_default(), genome })
}

pub fn write_genome(name: &str, g: &Genome) -> String {
    let mut out = format!("> {name}\n");
    for c in g.to_chromosomes() {
        out.push(if c.kind == ChromosomeKind::Linear { 'L' } else { 'C' });
        for (gene, reversed) in &c.genes {
            let sign = if *reversed && !g.unoriented().contains(gene) { "-" } else { "" };
            write!(out, " {sign}{}", gene.0).expect("writing to a String");
        }
        out.push('\n');
    }
    if !g.unoriented().is_empty() {
        out.push('U');
        for gene in g.unoriented() {
            write!(out, " {}", gene.0).expect("writing to a String");
        }
        out.push('\n');
    }
    out
}

/// `12h`, `12t`, or `12` for the single extremity of an unoriented gene.
pub fn extremity_token(x: Extremity) -> String {
    match x.end {
        End::Head => format!("{}h", x.gene.0),
        End::Tail => format!("{}t", x.gene.0),
        End::Whole => format!("{}", x.gene.0),
    }
}

pub fn parse_extremity(t: &str) -> Result<Extremity> {
    let bad = || anyhow!("bad extremity `{t}`");
    let (digits, end) = match t.as_bytes().last() {
        Some(b'h') => (&t[..t.len() - 1], End::Head),
        Some(b't') => (&t[..t.len() - 1], End::Tail),
        _ => (t, End::Whole),
    };
    let gene: u32 = digits.parse().map_err(|_| bad())?;
    if gene == 0 {
        return Err(bad());
    }
    Ok(Extremity { gene: GeneId(gene), end })
}

/// Extremity coloring file: `<extremity> <color>` lines; `@` may appear
/// and must carry the reserved color.
pub fn parse_extremity_coloring(text: &str, genome: &Genome, names: &mut ColorNames) -> Result<ExtremityColoring> {
    let known: BTreeSet<Extremity> = genome.extremities().into_iter().collect();
    let mut col = BTreeMap::new();
    for (line, toks) in lines(text) {
        let [tok, name] = toks[..] else { bail!("line {line}: expected `<extremity> <color>`") };
        if tok == TELOMERE_ID {
            if name != TELOMERE_ID {
                bail!("line {line}: the telomere only takes the reserved color `@`");
            }
            continue;
        }
        let x = parse_extremity(tok).with_context(|| format!("line {line}"))?;
        if !known.contains(&x) {
            bail!("line {line}: extremity `{tok}` is not in the genome");
        }
        if col.insert(x, names.intern(name)).is_some() {
            bail!("line {line}: extremity `{tok}` colored twice");
        }
    }
    Ok(col)
}

/// Vertex names of a breakpoint graph: `@` then the extremity tokens.
pub fn breakpoint_ids(bg: &BreakpointGraph) -> Vec<String> {
    core::iter::once(TELOMERE_ID.to_string()).chain(bg.extremities.iter().map(|&x| extremity_token(x))).collect()
}

/// True when the first meaningful line opens a genome.
pub fn looks_like_genome(text: &str) -> bool {
    lines(text).next().is_some_and(|(_, toks)| toks[0].starts_with('>') || matches!(toks[0], "L" | "C" | "U"))
}
