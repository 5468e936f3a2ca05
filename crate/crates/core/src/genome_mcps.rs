//! Polynomial minimum-cost parsimonious DCJ scenarios for genomes with
//! oriented genes.
//!
//! Every non-telomere vertex of G(A,B) has one black and one gray edge, so
//! the graph falls apart into circles and telomere-to-telomere segments.
//! Circles and segments with ends of different colors are cycles of every
//! maximum decomposition; segments with two black ends (AA) must be paired
//! with segments with two gray ends (BB), and the cheapest pairing is a
//! minimum-cost perfect matching.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::circle::{mcps_circle, mcps_circle_cost, Circle};
use crate::colored::{scenario_cost, Coloring};
use crate::error::{Error, Result};
use crate::genome::{lift_scenario_to_dcj, BreakpointGraph, DcjMove, ExtremityColoring, Genome};
use crate::graph::{ColoredMultigraph, Edge, EdgeColor, Label, Vertex};
use crate::scenario::Scenario;
use crate::simple_cycle::{mcps_simple_cycle, mcps_simple_cycle_cost};

pub use crate::assignment::min_cost_perfect_matching;

/// A telomere-to-telomere alternating path; `vertices` starts and ends at
/// the telomere and `labels[k]` joins `vertices[k]` and `vertices[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub vertices: Vec<Vertex>,
    pub labels: Vec<Label>,
    pub first: EdgeColor,
}

impl Segment {
    pub fn edges(&self) -> impl Iterator<Item = (EdgeColor, Edge)> + '_ {
        self.labels.iter().enumerate().map(move |(k, &l)| {
            let color = if k % 2 == 0 { self.first } else { self.first.flip() };
            (color, Edge::new(l, self.vertices[k], self.vertices[k + 1]))
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
}

/// The pieces of a breakpoint graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathPool {
    pub vertex_count: u32,
    pub circles: Vec<Circle>,
    pub aa: Vec<Segment>,
    pub bb: Vec<Segment>,
}

/// Splits G(A,B) into circles and AA/BB segments.
pub fn decompose_breakpoint(g: &ColoredMultigraph, telomere: Vertex) -> Result<PathPool> {
    let n = g.vertex_count() as usize;
    let mut at: Vec<[Option<Edge>; 2]> = alloc::vec![[None, None]; n];
    for (slot, edges) in [(0usize, g.black()), (1, g.gray())] {
        for e in edges {
            for x in [e.ends.0, e.ends.1] {
                if x != telomere && at[x.0 as usize][slot].replace(*e).is_some() {
                    return Err(Error::NotBreakpointGraph("vertex with two edges of one color"));
                }
            }
            if e.is_loop() && e.ends.0 != telomere {
                return Err(Error::NotBreakpointGraph("loop away from the telomere"));
            }
        }
    }
    let slot_of = |c: EdgeColor| (c == EdgeColor::Gray) as usize;
    let mut used: BTreeSet<Label> = BTreeSet::new();
    let mut pool = PathPool { vertex_count: g.vertex_count(), circles: Vec::new(), aa: Vec::new(), bb: Vec::new() };

    for (color, edges) in [(EdgeColor::Black, g.black()), (EdgeColor::Gray, g.gray())] {
        for e in edges.iter().filter(|e| e.touches(telomere)) {
            if !used.insert(e.label) {
                continue;
            }
            let mut vertices = alloc::vec![telomere];
            let mut labels = alloc::vec![e.label];
            let mut cur = e.other(telomere);
            let mut c = color;
            while cur != telomere {
                vertices.push(cur);
                c = c.flip();
                let next = at[cur.0 as usize][slot_of(c)].ok_or(Error::NotBreakpointGraph("dangling path"))?;
                used.insert(next.label);
                labels.push(next.label);
                cur = next.other(cur);
            }
            vertices.push(telomere);
            let last = c;
            match (color, last) {
                (EdgeColor::Black, EdgeColor::Black) => pool.aa.push(Segment { vertices, labels, first: color }),
                (EdgeColor::Gray, EdgeColor::Gray) => pool.bb.push(Segment { vertices, labels, first: color }),
                _ => {
                    vertices.pop();
                    if color == EdgeColor::Gray {
                        // Start the circle on its black end edge.
                        vertices.reverse();
                        labels.reverse();
                        vertices.rotate_right(1);
                    }
                    pool.circles.push(Circle { vertices, edges: labels });
                }
            }
        }
    }
    for e in g.black() {
        if used.contains(&e.label) {
            continue;
        }
        let mut vertices = alloc::vec![e.ends.0];
        let mut labels = alloc::vec![e.label];
        used.insert(e.label);
        let mut cur = e.ends.1;
        let mut c = EdgeColor::Black;
        while cur != e.ends.0 || c == EdgeColor::Black {
            vertices.push(cur);
            c = c.flip();
            let next = at[cur.0 as usize][slot_of(c)].ok_or(Error::NotBreakpointGraph("dangling path"))?;
            used.insert(next.label);
            labels.push(next.label);
            cur = next.other(cur);
        }
        pool.circles.push(Circle { vertices, edges: labels });
    }
    if pool.aa.len() != pool.bb.len() {
        return Err(Error::NotBreakpointGraph("unequal numbers of AA and BB segments"));
    }
    Ok(pool)
}

/// The simple cycle formed by an AA and a BB segment.
pub fn pair_graph(vertex_count: u32, a: &Segment, b: &Segment) -> Result<ColoredMultigraph> {
    let mut black = Vec::new();
    let mut gray = Vec::new();
    for (c, e) in a.edges().chain(b.edges()) {
        match c {
            EdgeColor::Black => black.push(e),
            EdgeColor::Gray => gray.push(e),
        }
    }
    ColoredMultigraph::with_labels(vertex_count, black, gray)
}

/// MCPS cost of the simple cycle formed by an AA and a BB segment, computed
/// on a copy renumbered to the pair's own vertices.
pub fn pair_weight(vertex_count: u32, a: &Segment, b: &Segment, col: &Coloring) -> Result<u64> {
    if a.len() == 1 && b.len() == 1 {
        // a black and a gray telomere loop: already sorted
        return Ok(0);
    }
    let mut origin: Vec<Vertex> = a.vertices.iter().chain(&b.vertices).copied().collect();
    origin.sort_unstable();
    origin.dedup();
    if origin.last().is_some_and(|v| v.0 >= vertex_count) {
        return Err(Error::UnknownVertex(origin[origin.len() - 1].0));
    }
    let local = |v: Vertex| Vertex(origin.binary_search(&v).expect("segment vertex") as u32);
    let mut black = Vec::new();
    let mut gray = Vec::new();
    for (c, e) in a.edges().chain(b.edges()) {
        let e = Edge { label: e.label, ends: crate::graph::ends(local(e.ends.0), local(e.ends.1)) };
        match c {
            EdgeColor::Black => black.push(e),
            EdgeColor::Gray => gray.push(e),
        }
    }
    let g = ColoredMultigraph::with_labels(origin.len() as u32, black, gray)?;
    mcps_simple_cycle_cost(&g, &col.pull_back(&origin))
}

/// The full AA x BB weight matrix.
pub fn weight_matrix(pool: &PathPool, col: &Coloring) -> Result<Vec<Vec<u64>>> {
    pool.aa
        .iter()
        .map(|a| pool.bb.iter().map(|b| pair_weight(pool.vertex_count, a, b, col)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoolSummary {
    pub circles: usize,
    pub aa: usize,
    pub bb: usize,
    pub circle_cost: u64,
    pub matching_cost: u64,
    /// (AA index, BB index) of each matched pair.
    pub pairs: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenomeMcps {
    pub cost: u64,
    pub length: usize,
    pub breakpoint: BreakpointGraph,
    pub two_breaks: Scenario,
    pub dcj: Vec<DcjMove>,
    /// Indices into `two_breaks` that move only telomere loops.
    pub dropped: Vec<usize>,
    pub summary: PoolSummary,
}

/// Computes the AA x BB weight matrix of a pool.
pub type Weigher<'a> = &'a dyn Fn(&PathPool, &Coloring) -> Result<Vec<Vec<u64>>>;

pub fn mcps_genomes(a: &Genome, b: &Genome, col: &ExtremityColoring) -> Result<GenomeMcps> {
    mcps_genomes_with(a, b, col, &weight_matrix)
}

/// As [`mcps_genomes`], with a caller-supplied weight computation (for
/// example a parallel one).
pub fn mcps_genomes_with(a: &Genome, b: &Genome, col: &ExtremityColoring, weigh: Weigher<'_>) -> Result<GenomeMcps> {
    if !a.unoriented().is_empty() || !b.unoriented().is_empty() {
        return Err(Error::Unoriented);
    }
    let bg = BreakpointGraph::new(a, b)?;
    let vcol = bg.coloring(col)?;
    let pool = decompose_breakpoint(&bg.graph, bg.telomere)?;
    let circle_cost: u64 = pool.circles.iter().map(|c| mcps_circle_cost(c, &vcol)).sum();
    let weights = weigh(&pool, &vcol)?;
    let (matching_cost, assignment) = min_cost_perfect_matching(&weights)?;

    let mut two_breaks = Scenario::default();
    for c in &pool.circles {
        two_breaks.extend(mcps_circle(c, &vcol)?.1);
    }
    let pairs: Vec<(usize, usize)> = assignment.iter().copied().enumerate().collect();
    for &(i, j) in &pairs {
        let s = pair_graph(pool.vertex_count, &pool.aa[i], &pool.bb[j])?;
        two_breaks.extend(mcps_simple_cycle(&s, &vcol)?.1);
    }
    let cost = circle_cost + matching_cost;
    let c = pool.circles.len() + pairs.len();
    let length = bg.graph.e() - c;
    if two_breaks.len() != length || scenario_cost(&bg.graph, &two_breaks, &vcol)? != cost {
        return Err(Error::Internal("assembled genome scenario disagrees with its parts"));
    }
    let lifted = lift_scenario_to_dcj(a, b, &two_breaks)?;
    if lifted.final_genome != *b {
        return Err(Error::Internal("lifted DCJ scenario does not reach the target genome"));
    }
    let summary = PoolSummary {
        circles: pool.circles.len(),
        aa: pool.aa.len(),
        bb: pool.bb.len(),
        circle_cost,
        matching_cost,
        pairs,
    };
    Ok(GenomeMcps { cost, length, breakpoint: bg, two_breaks, dcj: lifted.moves, dropped: lifted.dropped, summary })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::Color;
    use crate::genome::{dcj_cost, Adjacency, Chromosome, ChromosomeKind, Extremity, GeneId};

    fn lin(genes: &[i32]) -> Chromosome {
        Chromosome { kind: ChromosomeKind::Linear, genes: genes.iter().map(|&g| (GeneId(g.unsigned_abs()), g < 0)).collect() }
    }

    fn genome(cs: &[Chromosome]) -> Genome {
        Genome::from_chromosomes(cs, &BTreeSet::new()).unwrap()
    }

    fn worked_example() -> (Genome, Genome, ExtremityColoring) {
        let a = genome(&[lin(&[1, 2, -3])]);
        let b = genome(&[lin(&[1, -2, -3])]);
        let (x, y, z) = (Color(0), Color(1), Color(2));
        let col: ExtremityColoring = [
            (Extremity::tail(1), x),
            (Extremity::head(1), x),
            (Extremity::tail(2), x),
            (Extremity::head(2), y),
            (Extremity::head(3), z),
            (Extremity::tail(3), z),
        ]
        .into_iter()
        .collect();
        (a, b, col)
    }

    #[test]
    fn worked_example_pipeline() {
        let (a, b, col) = worked_example();
        let r = mcps_genomes(&a, &b, &col).unwrap();
        assert_eq!((r.cost, r.length), (1, 1));
        assert_eq!(r.summary.circles, 3);
        assert_eq!((r.summary.aa, r.summary.bb), (2, 2));
        assert_eq!(r.dcj.len(), 1);
        let expected = DcjMove::new(
            alloc::vec![
                Adjacency::internal(Extremity::head(1), Extremity::tail(2)),
                Adjacency::internal(Extremity::head(2), Extremity::head(3)),
            ],
            alloc::vec![
                Adjacency::internal(Extremity::head(1), Extremity::head(2)),
                Adjacency::internal(Extremity::tail(2), Extremity::head(3)),
            ],
        )
        .unwrap();
        let norm = |m: &DcjMove| {
            let (mut c, mut j) = (m.cut.clone(), m.join.clone());
            c.sort();
            j.sort();
            (c, j)
        };
        assert_eq!(norm(&r.dcj[0]), norm(&expected));
        assert_eq!(dcj_cost(&r.dcj[0], &a, &col).unwrap(), 1);
    }

    #[test]
    fn chain_against_singletons() {
        // A = one linear chromosome, B = every gene circular on its own.
        let a = genome(&[lin(&[1, 2, 3, 4])]);
        let b = Genome::from_chromosomes(
            &(1..=4).map(|g| Chromosome { kind: ChromosomeKind::Circular, genes: alloc::vec![(GeneId(g), false)] }).collect::<Vec<_>>(),
            &BTreeSet::new(),
        )
        .unwrap();
        let bg = BreakpointGraph::new(&a, &b).unwrap();
        let pool = decompose_breakpoint(&bg.graph, bg.telomere).unwrap();
        assert_eq!(pool.aa.len(), 4);
        assert_eq!(pool.bb.len(), 4);
        let col: ExtremityColoring = a.extremities().into_iter().enumerate().map(|(i, x)| (x, Color(i as u32 % 3))).collect();
        let r = mcps_genomes(&a, &b, &col).unwrap();
        assert_eq!(r.length, bg.graph.e() - pool.circles.len() - 4);
    }
}
