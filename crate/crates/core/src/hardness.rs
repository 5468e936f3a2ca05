//! Reduction from maximum cycle decomposition of a simple Eulerian graph
//! to minimum-cost sorting of a circle.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::circle::Circle;
use crate::colored::{Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, Vertex};

/// An undirected simple graph on vertices `0..vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    pub vertex_count: u32,
    pub edges: Vec<(u32, u32)>,
}

impl SimpleGraph {
    /// Rejects loops, repeated edges, odd degrees and disconnected edge sets.
    pub fn new(vertex_count: u32, edges: Vec<(u32, u32)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut deg = vec![0usize; vertex_count as usize];
        for &(a, b) in &edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(Error::UnknownVertex(a.max(b)));
            }
            if a == b {
                return Err(Error::NotSimpleGraph("loop"));
            }
            if !seen.insert((a.min(b), a.max(b))) {
                return Err(Error::NotSimpleGraph("repeated edge"));
            }
            deg[a as usize] += 1;
            deg[b as usize] += 1;
        }
        if edges.is_empty() {
            return Err(Error::NotSimpleGraph("no edges"));
        }
        if deg.iter().any(|d| d % 2 == 1) {
            return Err(Error::NotSimpleGraph("odd degree"));
        }
        let g = SimpleGraph { vertex_count, edges };
        if g.euler_tour().len() != g.edges.len() {
            return Err(Error::NotSimpleGraph("disconnected"));
        }
        Ok(g)
    }

    /// Eulerian circuit from the smallest non-isolated vertex, always
    /// leaving along the smallest unused neighbour; the closing return to
    /// the start is implicit.
    pub fn euler_tour(&self) -> Vec<u32> {
        let n = self.vertex_count as usize;
        let mut adj: Vec<Vec<(u32, usize)>> = vec![Vec::new(); n];
        for (k, &(a, b)) in self.edges.iter().enumerate() {
            adj[a as usize].push((b, k));
            adj[b as usize].push((a, k));
        }
        for list in adj.iter_mut() {
            list.sort_unstable();
            list.reverse();
        }
        let mut used = vec![false; self.edges.len()];
        let start = self.edges.iter().map(|&(a, b)| a.min(b)).min().unwrap_or(0);
        let mut stack = vec![start];
        let mut tour = Vec::new();
        while let Some(&v) = stack.last() {
            let list = &mut adj[v as usize];
            while list.last().is_some_and(|&(_, k)| used[k]) {
                list.pop();
            }
            match list.pop() {
                Some((w, k)) => {
                    used[k] = true;
                    stack.push(w);
                }
                None => tour.push(stack.pop().expect("non-empty")),
            }
        }
        tour.reverse();
        tour.pop();
        tour
    }
}

/// The circle built from an Euler tour u_1..u_n: vertices v_1..v_2n with
/// gray edges (v_{2i-1}, v_{2i}), black edges (v_{2i}, v_{2i+1}) and both
/// v_{2i-1} and v_{2i} colored u_i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: ColoredMultigraph,
    pub coloring: Coloring,
    pub circle: Circle,
    pub tour: Vec<u32>,
}

pub fn reduce_macd_to_circle(g: &SimpleGraph) -> Result<Reduction> {
    let tour = g.euler_tour();
    let n = tour.len() as u32;
    let black: Vec<(Vertex, Vertex)> = (0..n).map(|i| (Vertex(2 * i + 1), Vertex((2 * i + 2) % (2 * n)))).collect();
    let gray: Vec<(Vertex, Vertex)> = (0..n).map(|i| (Vertex(2 * i), Vertex(2 * i + 1))).collect();
    let graph = ColoredMultigraph::new(2 * n, &black, &gray)?;
    let coloring = Coloring::new(tour.iter().flat_map(|&u| [Color(u), Color(u)]).collect());
    let circle = Circle::from_graph(&graph)?;
    Ok(Reduction { graph, coloring, circle, tour })
}

/// Maximum number of edge-disjoint cycles covering every edge, by a
/// bitmask programme over even subgraphs.
pub fn max_cycle_decomposition(g: &SimpleGraph) -> Result<usize> {
    let m = g.edges.len();
    if m > 20 {
        return Err(Error::CapExceeded { what: "max_cycle_decomposition", size: m, cap: 20 });
    }
    let full = (1usize << m) - 1;
    let even = |mask: usize| -> bool {
        let mut deg = vec![0u8; g.vertex_count as usize];
        for (k, &(a, b)) in g.edges.iter().enumerate() {
            if mask >> k & 1 == 1 {
                deg[a as usize] ^= 1;
                deg[b as usize] ^= 1;
            }
        }
        deg.iter().all(|&d| d == 0)
    };
    let ok: Vec<bool> = (0..=full).map(even).collect();
    let mut best = vec![0u32; full + 1];
    for mask in 1..=full {
        if !ok[mask] {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let mut sub = mask;
        let mut b = 0;
        while sub != 0 {
            if sub & low != 0 && ok[sub] {
                b = b.max(1 + best[mask ^ sub]);
            }
            sub = (sub - 1) & mask;
        }
        best[mask] = b;
    }
    Ok(best[full] as usize)
}

/// All connected Eulerian simple graphs with at most `max_edges` edges,
/// one per isomorphism class, with vertices `0..k` all non-isolated.
pub fn connected_eulerian_graphs(max_edges: usize) -> Vec<SimpleGraph> {
    let mut out: Vec<SimpleGraph> = Vec::new();
    let mut canon_seen: BTreeSet<Vec<(u32, u32)>> = BTreeSet::new();
    for k in 3..=max_edges as u32 {
        let pairs: Vec<(u32, u32)> = (0..k).flat_map(|a| (a + 1..k).map(move |b| (a, b))).collect();
        if pairs.len() > 20 {
            continue;
        }
        let mut choose = Vec::new();
        subsets(&pairs, 0, max_edges, &mut choose, &mut |edges: &[(u32, u32)]| {
            let mut deg = vec![0usize; k as usize];
            for &(a, b) in edges {
                deg[a as usize] += 1;
                deg[b as usize] += 1;
            }
            if deg.iter().any(|&d| d == 0 || d % 2 == 1) {
                return;
            }
            let Ok(g) = SimpleGraph::new(k, edges.to_vec()) else { return };
            if canon_seen.insert(canonical(&g)) {
                out.push(g);
            }
        });
    }
    out
}

fn subsets(pairs: &[(u32, u32)], from: usize, left: usize, chosen: &mut Vec<(u32, u32)>, f: &mut dyn FnMut(&[(u32, u32)])) {
    if !chosen.is_empty() {
        f(chosen);
    }
    if left == 0 {
        return;
    }
    for i in from..pairs.len() {
        chosen.push(pairs[i]);
        subsets(pairs, i + 1, left - 1, chosen, f);
        chosen.pop();
    }
}

/// Lexicographically smallest sorted edge list over all vertex relabellings.
fn canonical(g: &SimpleGraph) -> Vec<(u32, u32)> {
    let n = g.vertex_count as usize;
    let mut perm: Vec<u32> = (0..n as u32).collect();
    let mut best: Option<Vec<(u32, u32)>> = None;
    loop {
        let mut e: Vec<(u32, u32)> = g
            .edges
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a as usize], perm[b as usize]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [u32]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).expect("exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::merged_graph;

    #[test]
    fn triangle_reduces_to_a_three_edge_circle() {
        let g = SimpleGraph::new(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.euler_tour(), vec![0, 1, 2]);
        let r = reduce_macd_to_circle(&g).unwrap();
        assert_eq!(r.graph.e(), 3);
        let j = merged_graph(&r.graph, &r.coloring).unwrap().graph;
        assert_eq!(j.black_key().len(), 3);
        assert!(j.gray().iter().all(|e| e.is_loop()));
        assert_eq!(max_cycle_decomposition(&g).unwrap(), 1);
    }

    #[test]
    fn invalid_graphs_rejected() {
        assert!(SimpleGraph::new(3, vec![(0, 1), (1, 2)]).is_err());
        assert!(SimpleGraph::new(6, vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).is_err());
        assert!(SimpleGraph::new(2, vec![(0, 1), (0, 1)]).is_err());
    }

    #[test]
    fn small_eulerian_classes() {
        // C3, C4, C5, C6 and the bowtie
        let gs = connected_eulerian_graphs(6);
        assert_eq!(gs.len(), 5);
        let bowtie = gs.iter().find(|g| g.edges.len() == 6 && g.vertex_count == 5).unwrap();
        assert_eq!(max_cycle_decomposition(bowtie).unwrap(), 2);
    }
}
