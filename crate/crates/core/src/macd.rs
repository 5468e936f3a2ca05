//! Maximum alternating cycle decompositions by exhaustive search.
//!
//! The search works per connected component on a bitmask of remaining
//! edges: the lowest remaining black edge must lie in some part, so every
//! closed alternating trail through it is tried and the rest is solved
//! recursively with memoisation. Parallel edges of the same color are
//! interchangeable, so only the lowest available one of a parallel class
//! is ever chosen.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, EdgeColor, Label, Vertex};
use crate::union_find::UnionFind;

/// Default cap on the number of black edges of one connected component.
pub const DEFAULT_CAP: usize = 16;

/// A partition of all edge labels into alternating cycles.
/// Parts are sorted internally and ordered by their smallest label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CycleDecomposition {
    pub parts: Vec<Vec<Label>>,
}

impl CycleDecomposition {
    pub fn new(mut parts: Vec<Vec<Label>>) -> Self {
        for p in parts.iter_mut() {
            p.sort_unstable();
        }
        parts.retain(|p| !p.is_empty());
        parts.sort();
        CycleDecomposition { parts }
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks that the parts partition the graph's labels into Eulerian subgraphs.
    pub fn check(&self, g: &ColoredMultigraph) -> Result<()> {
        let mut seen = BTreeSet::new();
        for part in &self.parts {
            for &l in part {
                if g.edge(l).is_none() {
                    return Err(Error::InvalidDecomposition("label not in graph"));
                }
                if !seen.insert(l) {
                    return Err(Error::InvalidDecomposition("label in two parts"));
                }
            }
            g.subgraph(part).map_err(|_| Error::InvalidDecomposition("part is not Eulerian"))?;
        }
        if seen.len() != 2 * g.e() {
            return Err(Error::InvalidDecomposition("labels not covered"));
        }
        Ok(())
    }
}

struct Search {
    black_mask: u64,
    ends: Vec<(Vertex, Vertex)>,
    labels: Vec<Label>,
    /// incident[v][color] = (edge index, opposite endpoint), ascending by index.
    incident: BTreeMap<Vertex, [Vec<(usize, Vertex)>; 2]>,
    twin_before: Vec<Option<usize>>,
    memo: BTreeMap<u64, u32>,
}

impl Search {
    /// Black edges must precede gray ones in `edges`.
    fn new(edges: &[(Vertex, Vertex, EdgeColor, Label)]) -> Self {
        let mut incident: BTreeMap<Vertex, [Vec<(usize, Vertex)>; 2]> = BTreeMap::new();
        let mut black_mask = 0u64;
        let mut twin_before = vec![None; edges.len()];
        let mut last_of_class: BTreeMap<(Vertex, Vertex, EdgeColor), usize> = BTreeMap::new();
        for (i, &(a, b, c, _)) in edges.iter().enumerate() {
            let slot = (c == EdgeColor::Gray) as usize;
            if c == EdgeColor::Black {
                black_mask |= 1 << i;
            }
            incident.entry(a).or_default()[slot].push((i, b));
            if a != b {
                incident.entry(b).or_default()[slot].push((i, a));
            }
            twin_before[i] = last_of_class.insert((a, b, c), i);
        }
        Search {
            black_mask,
            ends: edges.iter().map(|&(a, b, _, _)| (a, b)).collect(),
            labels: edges.iter().map(|&(_, _, _, l)| l).collect(),
            incident,
            twin_before,
            memo: BTreeMap::new(),
        }
    }

    fn shadowed(&self, f: usize, avail: u64) -> bool {
        let mut t = self.twin_before[f];
        while let Some(x) = t {
            if avail & (1 << x) != 0 {
                return true;
            }
            t = self.twin_before[x];
        }
        false
    }

    /// Edge sets of the closed alternating trails through the lowest
    /// remaining black edge that close at their first return to the start.
    fn trails(&self, remaining: u64) -> Vec<u64> {
        let first = (remaining & self.black_mask).trailing_zeros() as usize;
        let (s, v) = self.ends[first];
        let mut out = BTreeSet::new();
        self.extend(s, v, EdgeColor::Gray, 1 << first, remaining, &mut out);
        out.into_iter().collect()
    }

    fn extend(&self, start: Vertex, cur: Vertex, need: EdgeColor, used: u64, remaining: u64, out: &mut BTreeSet<u64>) {
        let avail = remaining & !used;
        let slot = (need == EdgeColor::Gray) as usize;
        let Some(lists) = self.incident.get(&cur) else { return };
        for &(f, other) in &lists[slot] {
            if avail & (1 << f) == 0 || self.shadowed(f, avail) {
                continue;
            }
            let next_used = used | (1 << f);
            if need == EdgeColor::Gray && other == start {
                out.insert(next_used);
                continue;
            }
            self.extend(start, other, need.flip(), next_used, remaining, out);
        }
    }

    fn best(&mut self, remaining: u64) -> u32 {
        if remaining == 0 {
            return 0;
        }
        if let Some(&b) = self.memo.get(&remaining) {
            return b;
        }
        let mut best = 0;
        for t in self.trails(remaining) {
            best = best.max(1 + self.best(remaining & !t));
        }
        self.memo.insert(remaining, best);
        best
    }

    fn one(&mut self, mut remaining: u64) -> Vec<u64> {
        let mut parts = Vec::new();
        while remaining != 0 {
            let b = self.best(remaining);
            let t = self
                .trails(remaining)
                .into_iter()
                .find(|&t| 1 + self.best(remaining & !t) == b)
                .expect("some trail attains the optimum");
            parts.push(t);
            remaining &= !t;
        }
        parts
    }

    fn all(&mut self, remaining: u64) -> Vec<Vec<u64>> {
        if remaining == 0 {
            return vec![Vec::new()];
        }
        let b = self.best(remaining);
        let mut out = Vec::new();
        for t in self.trails(remaining) {
            if 1 + self.best(remaining & !t) == b {
                for mut rest in self.all(remaining & !t) {
                    rest.insert(0, t);
                    out.push(rest);
                }
            }
        }
        out
    }

    fn part_labels(&self, mask: u64) -> Vec<Label> {
        (0..self.labels.len()).filter(|i| mask & (1 << i) != 0).map(|i| self.labels[i]).collect()
    }
}

fn component_edge_lists(g: &ColoredMultigraph) -> Vec<Vec<(Vertex, Vertex, EdgeColor, Label)>> {
    let mut uf = UnionFind::new(g.vertex_count() as usize);
    for e in g.black().iter().chain(g.gray()) {
        uf.union(e.ends.0 .0 as usize, e.ends.1 .0 as usize);
    }
    let mut by_root: BTreeMap<usize, Vec<(Vertex, Vertex, EdgeColor, Label)>> = BTreeMap::new();
    for (color, edges) in [(EdgeColor::Black, g.black()), (EdgeColor::Gray, g.gray())] {
        for e in edges {
            let r = uf.find(e.ends.0 .0 as usize);
            by_root.entry(r).or_default().push((e.ends.0, e.ends.1, color, e.label));
        }
    }
    by_root.into_values().collect()
}

fn searches(g: &ColoredMultigraph, cap: usize) -> Result<Vec<Search>> {
    let comps = component_edge_lists(g);
    let mut out = Vec::with_capacity(comps.len());
    for c in comps {
        let e = c.len() / 2;
        if e > cap || c.len() > 64 {
            return Err(Error::CapExceeded { what: "exact cycle decomposition", size: e, cap: cap.min(32) });
        }
        out.push(Search::new(&c));
    }
    Ok(out)
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// c(G) together with one maximum decomposition.
///
/// `cap` bounds the number of black edges in any connected component.
pub fn macd_exact(g: &ColoredMultigraph, cap: usize) -> Result<(usize, CycleDecomposition)> {
    let mut parts = Vec::new();
    for mut s in searches(g, cap)? {
        let all = full_mask(s.labels.len());
        for m in s.one(all) {
            parts.push(s.part_labels(m));
        }
    }
    let d = CycleDecomposition::new(parts);
    Ok((d.len(), d))
}

/// c(G) alone.
pub fn cycle_count(g: &ColoredMultigraph, cap: usize) -> Result<usize> {
    let mut total = 0;
    for mut s in searches(g, cap)? {
        let all = full_mask(s.labels.len());
        total += s.best(all) as usize;
    }
    Ok(total)
}

/// Every maximum decomposition, up to exchanging parallel same-colored
/// edges, sorted lexicographically.
pub fn all_macds(g: &ColoredMultigraph, cap: usize) -> Result<(usize, Vec<CycleDecomposition>)> {
    let mut combos: Vec<Vec<Vec<Label>>> = vec![Vec::new()];
    for mut s in searches(g, cap)? {
        let all = full_mask(s.labels.len());
        let options: Vec<Vec<Vec<Label>>> =
            s.all(all).into_iter().map(|ps| ps.into_iter().map(|m| s.part_labels(m)).collect()).collect();
        let mut next = Vec::with_capacity(combos.len() * options.len());
        for base in &combos {
            for opt in &options {
                let mut c = base.clone();
                c.extend(opt.iter().cloned());
                next.push(c);
            }
        }
        combos = next;
    }
    let mut out: Vec<CycleDecomposition> = combos.into_iter().map(CycleDecomposition::new).collect();
    out.sort();
    out.dedup();
    let c = out.first().map_or(0, |d| d.len());
    Ok((c, out))
}
