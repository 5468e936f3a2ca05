//! Genomes as adjacency multisets, double cut and join, and the
//! breakpoint graph of two genomes.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::colored::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{ends, ColoredMultigraph, Edge, Ends, Label, Vertex};
use crate::scenario::{KBreak, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneId(pub u32);

/// Which end of a gene; unoriented genes have a single extremity that
/// occurs twice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum End {
    Tail,
    Head,
    Whole,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Extremity {
    pub gene: GeneId,
    pub end: End,
}

impl Extremity {
    pub fn head(g: u32) -> Self {
        Extremity { gene: GeneId(g), end: End::Head }
    }

    pub fn tail(g: u32) -> Self {
        Extremity { gene: GeneId(g), end: End::Tail }
    }

    pub fn whole(g: u32) -> Self {
        Extremity { gene: GeneId(g), end: End::Whole }
    }
}

/// Two extremities joined in a chromosome, or one extremity at a
/// chromosome end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Adjacency {
    Internal(Extremity, Extremity),
    External(Extremity),
}

impl Adjacency {
    pub fn internal(a: Extremity, b: Extremity) -> Self {
        if a <= b {
            Adjacency::Internal(a, b)
        } else {
            Adjacency::Internal(b, a)
        }
    }

    fn extremities(&self) -> impl Iterator<Item = Extremity> {
        let (a, b) = match *self {
            Adjacency::Internal(a, b) => (a, Some(b)),
            Adjacency::External(a) => (a, None),
        };
        core::iter::once(a).chain(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChromosomeKind {
    Linear,
    Circular,
}

/// Genes in order; `true` marks a gene read in reverse (head first).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chromosome {
    pub kind: ChromosomeKind,
    pub genes: Vec<(GeneId, bool)>,
}

/// A genome as a sorted multiset of adjacencies in which every extremity
/// of every gene occurs exactly once (twice for an unoriented gene).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Genome {
    adjacencies: Vec<Adjacency>,
    genes: BTreeSet<GeneId>,
    unoriented: BTreeSet<GeneId>,
}

impl Genome {
    pub fn from_adjacencies(mut adjacencies: Vec<Adjacency>, unoriented: &BTreeSet<GeneId>) -> Result<Self> {
        let mut counts: BTreeMap<Extremity, usize> = BTreeMap::new();
        for a in adjacencies.iter_mut() {
            if let Adjacency::Internal(x, y) = *a {
                *a = Adjacency::internal(x, y);
            }
            for x in a.extremities() {
                *counts.entry(x).or_default() += 1;
            }
        }
        let genes: BTreeSet<GeneId> = counts.keys().map(|x| x.gene).chain(unoriented.iter().copied()).collect();
        for &g in &genes {
            let n = |end| counts.get(&Extremity { gene: g, end }).copied().unwrap_or(0);
            let (tail, head, whole) = (n(End::Tail), n(End::Head), n(End::Whole));
            let ok = if unoriented.contains(&g) { (tail, head, whole) == (0, 0, 2) } else { (tail, head, whole) == (1, 1, 0) };
            if !ok {
                let problem = if tail > 1 || head > 1 || whole > 2 {
                    "extremity occurs more than once"
                } else if unoriented.contains(&g) != (whole > 0) {
                    "oriented and unoriented extremities mixed"
                } else {
                    "missing extremity"
                };
                return Err(Error::BadExtremity { gene: g.0, problem });
            }
        }
        adjacencies.sort_unstable();
        Ok(Genome { adjacencies, genes, unoriented: unoriented.clone() })
    }

    pub fn from_chromosomes(chromosomes: &[Chromosome], unoriented: &BTreeSet<GeneId>) -> Result<Self> {
        let mut adj = Vec::new();
        for c in chromosomes {
            if c.genes.is_empty() {
                return Err(Error::BadExtremity { gene: 0, problem: "empty chromosome" });
            }
            // (left, right) extremity of each gene in reading order
            let sides: Vec<(Extremity, Extremity)> = c
                .genes
                .iter()
                .map(|&(g, rev)| {
                    if unoriented.contains(&g) {
                        (Extremity::whole(g.0), Extremity::whole(g.0))
                    } else if rev {
                        (Extremity::head(g.0), Extremity::tail(g.0))
                    } else {
                        (Extremity::tail(g.0), Extremity::head(g.0))
                    }
                })
                .collect();
            for w in sides.windows(2) {
                adj.push(Adjacency::internal(w[0].1, w[1].0));
            }
            let (first, last) = (sides[0].0, sides[sides.len() - 1].1);
            match c.kind {
                ChromosomeKind::Linear => {
                    adj.push(Adjacency::External(first));
                    adj.push(Adjacency::External(last));
                }
                ChromosomeKind::Circular => adj.push(Adjacency::internal(last, first)),
            }
        }
        Genome::from_adjacencies(adj, unoriented)
    }

    pub fn adjacencies(&self) -> &[Adjacency] {
        &self.adjacencies
    }

    pub fn genes(&self) -> &BTreeSet<GeneId> {
        &self.genes
    }

    pub fn unoriented(&self) -> &BTreeSet<GeneId> {
        &self.unoriented
    }

    pub fn gene_count(&self) -> usize {
        self.genes.len()
    }

    /// All extremity slots, sorted; an unoriented gene contributes its
    /// single extremity once.
    pub fn extremities(&self) -> Vec<Extremity> {
        let mut xs: Vec<Extremity> = self.adjacencies.iter().flat_map(|a| a.extremities()).collect();
        xs.sort_unstable();
        xs.dedup();
        xs
    }

    fn partner(&self, x: Extremity) -> Extremity {
        match x.end {
            End::Tail => Extremity { gene: x.gene, end: End::Head },
            End::Head => Extremity { gene: x.gene, end: End::Tail },
            End::Whole => x,
        }
    }

    /// Reads the chromosomes back: linear ones from their smaller free
    /// end, circular ones from their smallest gene.
    pub fn to_chromosomes(&self) -> Vec<Chromosome> {
        let mut used = alloc::vec![false; self.adjacencies.len()];
        let mut by_ext: BTreeMap<Extremity, Vec<usize>> = BTreeMap::new();
        for (i, a) in self.adjacencies.iter().enumerate() {
            for x in a.extremities() {
                by_ext.entry(x).or_default().push(i);
            }
        }
        let mut out = Vec::new();
        let mut walk = |start_adj: usize, entry: Extremity, kind: ChromosomeKind, used: &mut Vec<bool>| {
            used[start_adj] = true;
            let mut genes = Vec::new();
            let mut x = entry;
            loop {
                let rev = x.end == End::Head;
                genes.push((x.gene, rev));
                let y = self.partner(x);
                let Some(&k) = by_ext[&y].iter().find(|&&k| !used[k]) else { break };
                used[k] = true;
                match self.adjacencies[k] {
                    Adjacency::External(_) => break,
                    Adjacency::Internal(a, b) => x = if a == y { b } else { a },
                }
            }
            out.push(Chromosome { kind, genes });
        };
        for i in 0..self.adjacencies.len() {
            if let (false, Adjacency::External(x)) = (used[i], self.adjacencies[i]) {
                walk(i, x, ChromosomeKind::Linear, &mut used);
            }
        }
        let mut by_gene: Vec<(Extremity, usize)> =
            by_ext.iter().flat_map(|(&x, ks)| ks.iter().map(move |&k| (x, k))).collect();
        by_gene.sort_unstable();
        for (x, k) in by_gene {
            if used[k] || x.end == End::Head {
                continue;
            }
            // enter the circle through the adjacency before x's gene
            walk(k, x, ChromosomeKind::Circular, &mut used);
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DcjForm {
    /// {a,b},{c,d} -> {a,c},{b,d}
    Exchange,
    /// {a,b},{c} -> {a,c},{b}
    ExchangeWithEnd,
    /// {a,b} -> {a},{b}
    Cut,
    /// {a},{b} -> {a,b}
    Join,
}

/// A double cut and join: remove `cut`, add `join`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DcjMove {
    pub cut: Vec<Adjacency>,
    pub join: Vec<Adjacency>,
}

impl DcjMove {
    pub fn new(cut: Vec<Adjacency>, join: Vec<Adjacency>) -> Result<Self> {
        let m = DcjMove { cut, join };
        m.form()?;
        Ok(m)
    }

    pub fn form(&self) -> Result<DcjForm> {
        let mut before: Vec<Extremity> = self.cut.iter().flat_map(|a| a.extremities()).collect();
        let mut after: Vec<Extremity> = self.join.iter().flat_map(|a| a.extremities()).collect();
        before.sort_unstable();
        after.sort_unstable();
        if before != after {
            return Err(Error::NotADcj);
        }
        let internal = |v: &[Adjacency]| v.iter().filter(|a| matches!(a, Adjacency::Internal(..))).count();
        let shape = (self.cut.len(), internal(&self.cut), self.join.len(), internal(&self.join));
        let form = match shape {
            (2, 2, 2, 2) => DcjForm::Exchange,
            (2, 1, 2, 1) => DcjForm::ExchangeWithEnd,
            (1, 1, 2, 0) => DcjForm::Cut,
            (2, 0, 1, 1) => DcjForm::Join,
            _ => return Err(Error::NotADcj),
        };
        let mut c = self.cut.clone();
        let mut j = self.join.clone();
        c.sort_unstable();
        j.sort_unstable();
        if c == j {
            return Err(Error::NotADcj);
        }
        Ok(form)
    }
}

pub fn apply_dcj(a: &Genome, m: &DcjMove) -> Result<Genome> {
    m.form()?;
    let mut adj = a.adjacencies.clone();
    for c in &m.cut {
        let i = adj.iter().position(|x| x == c).ok_or(Error::MissingAdjacency)?;
        adj.swap_remove(i);
    }
    adj.extend(m.join.iter().map(|&j| match j {
        Adjacency::Internal(x, y) => Adjacency::internal(x, y),
        e => e,
    }));
    Genome::from_adjacencies(adj, &a.unoriented)
}

/// Extremity colors; the telomere is implicitly [`Color::TELOMERE`].
pub type ExtremityColoring = BTreeMap<Extremity, Color>;

fn colored_pair(a: &Adjacency, col: &ExtremityColoring) -> Result<(Color, Color)> {
    let c = |x: Extremity| col.get(&x).copied().ok_or(Error::MissingColor(x.gene.0));
    let (p, q) = match *a {
        Adjacency::Internal(x, y) => (c(x)?, c(y)?),
        Adjacency::External(x) => (c(x)?, Color::TELOMERE),
    };
    Ok(if p <= q { (p, q) } else { (q, p) })
}

/// 0 if the move preserves the multiset of colored adjacencies, else 1.
pub fn dcj_cost(m: &DcjMove, before: &Genome, col: &ExtremityColoring) -> Result<u8> {
    for c in &m.cut {
        if !before.adjacencies.contains(c) {
            return Err(Error::MissingAdjacency);
        }
    }
    let colored = |v: &[Adjacency]| -> Result<Vec<(Color, Color)>> {
        let mut out = v.iter().map(|a| colored_pair(a, col)).collect::<Result<Vec<_>>>()?;
        // A telomere pair {∘,∘} is implicit on both sides.
        while out.len() < 2 {
            out.push((Color::TELOMERE, Color::TELOMERE));
        }
        out.sort_unstable();
        Ok(out)
    };
    Ok((colored(&m.cut)? != colored(&m.join)?) as u8)
}

/// G(A,B): vertex 0 is the telomere, then every extremity in sorted order.
/// Black edges are A's adjacencies, gray edges B's, each padded with
/// telomere loops so both colors have 2n edge ends at the telomere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BreakpointGraph {
    pub graph: ColoredMultigraph,
    pub telomere: Vertex,
    pub extremities: Vec<Extremity>,
}

impl BreakpointGraph {
    pub fn new(a: &Genome, b: &Genome) -> Result<Self> {
        if a.genes != b.genes || a.unoriented != b.unoriented {
            return Err(Error::GeneContentMismatch);
        }
        let extremities = a.extremities();
        let slots = a.genes.len() * 2;
        let mut bg = BreakpointGraph {
            graph: ColoredMultigraph::new(0, &[], &[])?,
            telomere: Vertex(0),
            extremities,
        };
        let mut label = 0u32;
        let mut side = |g: &Genome, bg: &BreakpointGraph| -> Vec<Edge> {
            let mut edges: Vec<Edge> = Vec::new();
            let mut external = 0;
            for adj in &g.adjacencies {
                external += matches!(adj, Adjacency::External(_)) as usize;
                label += 1;
                let (u, v) = bg.adjacency_ends(adj);
                edges.push(Edge::new(Label(label), u, v));
            }
            for _ in 0..(slots - external) / 2 {
                label += 1;
                edges.push(Edge::new(Label(label), Vertex(0), Vertex(0)));
            }
            edges
        };
        let black = side(a, &bg);
        let gray = side(b, &bg);
        bg.graph = ColoredMultigraph::with_labels(bg.extremities.len() as u32 + 1, black, gray)?;
        Ok(bg)
    }

    pub fn vertex_of(&self, x: Extremity) -> Option<Vertex> {
        self.extremities.binary_search(&x).ok().map(|i| Vertex(i as u32 + 1))
    }

    pub fn extremity_of(&self, v: Vertex) -> Option<Extremity> {
        if v == self.telomere {
            None
        } else {
            self.extremities.get(v.0 as usize - 1).copied()
        }
    }

    fn adjacency_ends(&self, a: &Adjacency) -> Ends {
        let vx = |x| self.vertex_of(x).expect("extremity of the shared gene set");
        match *a {
            Adjacency::Internal(x, y) => ends(vx(x), vx(y)),
            Adjacency::External(x) => ends(self.telomere, vx(x)),
        }
    }

    /// The adjacency an edge stands for; `None` for a telomere loop.
    pub fn adjacency_of(&self, e: Ends) -> Option<Adjacency> {
        match (self.extremity_of(e.0), self.extremity_of(e.1)) {
            (None, None) => None,
            (None, Some(x)) | (Some(x), None) => Some(Adjacency::External(x)),
            (Some(x), Some(y)) => Some(Adjacency::internal(x, y)),
        }
    }

    /// Vertex coloring induced by an extremity coloring.
    pub fn coloring(&self, col: &ExtremityColoring) -> Result<Coloring> {
        let mut cs = alloc::vec![Color::TELOMERE];
        for x in &self.extremities {
            cs.push(*col.get(x).ok_or(Error::MissingColor(x.gene.0))?);
        }
        Ok(Coloring::new(cs))
    }

    /// The 2-break on `state` induced by a DCJ; cut and join of a single
    /// adjacency use a telomere loop.
    pub fn two_break_for(&self, state: &ColoredMultigraph, m: &DcjMove) -> Result<KBreak> {
        m.form()?;
        let mut removed = Vec::new();
        let take = |e: Ends, removed: &mut Vec<Label>| -> Result<()> {
            let l = state
                .black()
                .iter()
                .find(|x| x.ends == e && !removed.contains(&x.label))
                .ok_or(Error::MissingAdjacency)?
                .label;
            removed.push(l);
            Ok(())
        };
        for c in &m.cut {
            take(self.adjacency_ends(c), &mut removed)?;
        }
        let mut added: Vec<Ends> = m.join.iter().map(|j| self.adjacency_ends(j)).collect();
        let t = self.telomere;
        if m.cut.len() == 1 {
            take((t, t), &mut removed)?;
        }
        if m.join.len() == 1 {
            added.push((t, t));
        }
        Ok(KBreak { added: added.into_iter().zip(removed.iter().copied()).collect(), removed })
    }
}

pub fn breakpoint_graph(a: &Genome, b: &Genome) -> Result<BreakpointGraph> {
    BreakpointGraph::new(a, b)
}

/// DCJ moves read off a 2-break scenario on G(A,B).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedScenario {
    pub moves: Vec<DcjMove>,
    /// Indices of 2-breaks that only exchange telomere loops and so have
    /// no DCJ counterpart.
    pub dropped: Vec<usize>,
    pub final_genome: Genome,
}

pub fn lift_scenario_to_dcj(a: &Genome, b: &Genome, scenario: &Scenario) -> Result<LiftedScenario> {
    let bg = BreakpointGraph::new(a, b)?;
    let mut state = bg.graph.clone();
    let mut genome = a.clone();
    let mut moves = Vec::new();
    let mut dropped = Vec::new();
    for (i, m) in scenario.moves.iter().enumerate() {
        let mut cut = Vec::new();
        for l in &m.removed {
            let e = state.black_edge(*l).ok_or(Error::UnknownLabel(l.0).at(i))?;
            cut.extend(bg.adjacency_of(e.ends));
        }
        let mut join: Vec<Adjacency> = m.added.iter().filter_map(|&(e, _)| bg.adjacency_of(e)).collect();
        state = m.apply(&state).map_err(|e| e.at(i))?;
        cut.sort_unstable();
        join.sort_unstable();
        if cut == join {
            dropped.push(i);
            continue;
        }
        let dcj = DcjMove::new(cut, join).map_err(|e| e.at(i))?;
        genome = apply_dcj(&genome, &dcj).map_err(|e| e.at(i))?;
        moves.push(dcj);
    }
    Ok(LiftedScenario { moves, dropped, final_genome: genome })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::two_break_cost;
    use crate::macd::macd_exact;

    fn lin(genes: &[i32]) -> Chromosome {
        Chromosome { kind: ChromosomeKind::Linear, genes: genes.iter().map(|&g| (GeneId(g.unsigned_abs()), g < 0)).collect() }
    }

    fn circ(genes: &[i32]) -> Chromosome {
        Chromosome { kind: ChromosomeKind::Circular, ..lin(genes) }
    }

    fn genome(cs: &[Chromosome]) -> Genome {
        Genome::from_chromosomes(cs, &BTreeSet::new()).unwrap()
    }

    #[test]
    fn linear_chromosome_adjacencies() {
        let a = genome(&[lin(&[1, 2, -3])]);
        assert_eq!(
            a.adjacencies(),
            &[
                Adjacency::internal(Extremity::tail(2), Extremity::head(1)),
                Adjacency::internal(Extremity::head(2), Extremity::head(3)),
                Adjacency::External(Extremity::tail(1)),
                Adjacency::External(Extremity::tail(3)),
            ]
        );
    }

    #[test]
    fn chromosomes_round_trip() {
        let a = genome(&[lin(&[1, -2]), circ(&[3, 4, -5]), circ(&[6])]);
        let back = Genome::from_chromosomes(&a.to_chromosomes(), &BTreeSet::new()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn repeated_extremity_rejected() {
        let err = Genome::from_chromosomes(&[lin(&[1, 1])], &BTreeSet::new()).unwrap_err();
        assert!(matches!(err, Error::BadExtremity { gene: 1, .. }));
    }

    #[test]
    fn breakpoint_graph_pads_telomere() {
        let a = genome(&[lin(&[1, 2, 3])]);
        let b = genome(&[lin(&[1]), lin(&[2]), lin(&[3])]);
        let bg = BreakpointGraph::new(&a, &b).unwrap();
        assert_eq!(bg.graph.e(), 6);
        let telomere_loops = |es: &[Edge]| es.iter().filter(|e| e.ends == (Vertex(0), Vertex(0))).count();
        assert_eq!(telomere_loops(bg.graph.black()), 2);
        assert_eq!(telomere_loops(bg.graph.gray()), 0);
        assert_eq!(bg.graph.degrees().0[0], 6);
    }

    #[test]
    fn dcj_forms() {
        let (a, b, c, d) = (Extremity::head(1), Extremity::tail(2), Extremity::head(2), Extremity::tail(3));
        let ex = DcjMove::new(
            vec![Adjacency::internal(a, b), Adjacency::internal(c, d)],
            vec![Adjacency::internal(a, c), Adjacency::internal(b, d)],
        )
        .unwrap();
        assert_eq!(ex.form().unwrap(), DcjForm::Exchange);
        let cut = DcjMove::new(vec![Adjacency::internal(a, b)], vec![Adjacency::External(a), Adjacency::External(b)]).unwrap();
        assert_eq!(cut.form().unwrap(), DcjForm::Cut);
        assert!(DcjMove::new(vec![Adjacency::internal(a, b)], vec![Adjacency::internal(a, c)]).is_err());
    }

    #[test]
    fn induced_two_break_has_equal_cost() {
        let a = genome(&[lin(&[1, 2, -3])]);
        let b = genome(&[lin(&[1, -2, -3])]);
        let bg = BreakpointGraph::new(&a, &b).unwrap();
        let m = DcjMove::new(
            vec![
                Adjacency::internal(Extremity::head(1), Extremity::tail(2)),
                Adjacency::internal(Extremity::head(2), Extremity::head(3)),
            ],
            vec![
                Adjacency::internal(Extremity::head(1), Extremity::head(2)),
                Adjacency::internal(Extremity::tail(2), Extremity::head(3)),
            ],
        )
        .unwrap();
        let mut col = ExtremityColoring::new();
        for (i, x) in a.extremities().into_iter().enumerate() {
            col.insert(x, Color(i as u32 % 2));
        }
        let vcol = bg.coloring(&col).unwrap();
        let k = bg.two_break_for(&bg.graph, &m).unwrap();
        let removed: Vec<Ends> = k.removed.iter().map(|l| bg.graph.black_edge(*l).unwrap().ends).collect();
        let two = two_break_cost([removed[0], removed[1]], [k.added[0].0, k.added[1].0], &vcol);
        assert_eq!(two, dcj_cost(&m, &a, &col).unwrap());
        let after = k.apply(&bg.graph).unwrap();
        assert!(after.is_terminal());
        assert_eq!(apply_dcj(&a, &m).unwrap(), b);
        assert_eq!(macd_exact(&bg.graph, 16).unwrap().0, 5);
    }
}
