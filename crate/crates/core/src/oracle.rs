//! Exhaustive reference implementations for small instances. Each one
//! refuses inputs above its cap instead of running for hours.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::circle::{AlternatingPath, Arc, Circle};
use crate::colored::{two_break_cost, Coloring};
use crate::error::{Error, Result};
use crate::graph::{ends, ColoredMultigraph, Edge, Ends, Label};
use crate::macd::cycle_count;
use crate::scenario::{KBreak, Scenario};
use crate::union_find::UnionFind;

pub const DEFAULT_CAP: usize = 5;

fn check_cap(what: &'static str, size: usize, cap: usize) -> Result<()> {
    if size > cap {
        Err(Error::CapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}

/// Sorted black endpoint multiset: the state of a scenario search.
type State = Vec<Ends>;

/// Every distinct state one 2-break away, with the move's cost under `col`.
fn neighbours(state: &State, col: Option<&Coloring>) -> Vec<(State, u8)> {
    let mut out = BTreeMap::new();
    for i in 0..state.len() {
        for j in i + 1..state.len() {
            let ((a, b), (c, d)) = (state[i], state[j]);
            for added in [[ends(a, c), ends(b, d)], [ends(a, d), ends(b, c)]] {
                let mut next = state.clone();
                next[i] = added[0];
                next[j] = added[1];
                next.sort_unstable();
                if next == *state {
                    continue;
                }
                let cost = col.map_or(1, |col| two_break_cost([state[i], state[j]], added, col));
                let slot = out.entry(next).or_insert(cost);
                *slot = (*slot).min(cost);
            }
        }
    }
    out.into_iter().collect()
}

/// Minimum scenario length by breadth-first search over states.
pub fn brute_min_length(g: &ColoredMultigraph, cap: usize) -> Result<usize> {
    check_cap("brute_min_length", g.e(), cap)?;
    let target = g.gray_key();
    let start = g.black_key();
    let mut dist: BTreeMap<State, usize> = BTreeMap::new();
    dist.insert(start.clone(), 0);
    let mut queue = VecDeque::from([start]);
    while let Some(s) = queue.pop_front() {
        let d = dist[&s];
        if s == target {
            return Ok(d);
        }
        for (n, _) in neighbours(&s, None) {
            if !dist.contains_key(&n) {
                dist.insert(n.clone(), d + 1);
                queue.push_back(n);
            }
        }
    }
    Err(Error::Internal("terminal state unreachable"))
}

/// Minimum total cost over all scenarios, by 0-1 breadth-first search.
pub fn brute_min_cost(g: &ColoredMultigraph, col: &Coloring, cap: usize) -> Result<u64> {
    check_cap("brute_min_cost", g.e(), cap)?;
    col.check(g)?;
    let target = g.gray_key();
    let start = g.black_key();
    let mut dist: BTreeMap<State, u64> = BTreeMap::new();
    dist.insert(start.clone(), 0);
    let mut deque = VecDeque::from([(0u64, start)]);
    while let Some((d, s)) = deque.pop_front() {
        if dist.get(&s).is_some_and(|&best| best < d) {
            continue;
        }
        if s == target {
            return Ok(d);
        }
        for (n, c) in neighbours(&s, Some(col)) {
            let nd = d + c as u64;
            if dist.get(&n).is_none_or(|&best| nd < best) {
                dist.insert(n.clone(), nd);
                if c == 0 {
                    deque.push_front((nd, n));
                } else {
                    deque.push_back((nd, n));
                }
            }
        }
    }
    Err(Error::Internal("terminal state unreachable"))
}

/// Bitmask dynamic programme over Eulerian edge subsets: c(G).
pub fn brute_macd(g: &ColoredMultigraph, cap: usize) -> Result<usize> {
    check_cap("brute_macd", g.e(), cap.min(10))?;
    let edges: Vec<Edge> = g.black().iter().chain(g.gray()).copied().collect();
    let e = g.e();
    let m = edges.len();
    let full = (1usize << m) - 1;
    let n = g.vertex_count() as usize;
    let eulerian = |mask: usize| -> bool {
        let mut bal = vec![0i32; n];
        for (k, ed) in edges.iter().enumerate() {
            if mask >> k & 1 == 1 {
                let s = if k < e { 1 } else { -1 };
                bal[ed.ends.0 .0 as usize] += s;
                bal[ed.ends.1 .0 as usize] += s;
            }
        }
        bal.iter().all(|&b| b == 0)
    };
    let ok: Vec<bool> = (0..=full).map(eulerian).collect();
    let mut best = vec![0u32; full + 1];
    for mask in 1..=full {
        if !ok[mask] {
            continue;
        }
        let low = mask & mask.wrapping_neg();
        let mut b = 0;
        let mut sub = mask;
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

/// c(G) for oracle states: components that are plain circles count one;
/// others go to the bitmask programme when tiny, else the exact search.
fn state_cycles(g: &ColoredMultigraph) -> Result<usize> {
    let mut uf = UnionFind::new(g.vertex_count() as usize);
    for e in g.black().iter().chain(g.gray()) {
        uf.union(e.ends.0 .0 as usize, e.ends.1 .0 as usize);
    }
    let mut parts: BTreeMap<usize, Vec<Label>> = BTreeMap::new();
    for e in g.black().iter().chain(g.gray()) {
        parts.entry(uf.find(e.ends.0 .0 as usize)).or_default().push(e.label);
    }
    let mut total = 0;
    for labels in parts.into_values() {
        let sub = g.subgraph(&labels)?;
        let (db, _) = sub.degrees();
        total += if db.iter().all(|&d| d <= 1) {
            1
        } else if sub.e() <= 4 {
            brute_macd(&sub, 4)?
        } else {
            cycle_count(&sub, 32)?
        };
    }
    Ok(total)
}

struct McpsSearch<'a> {
    gray: Vec<Edge>,
    target: State,
    vertex_count: u32,
    col: &'a Coloring,
    cycles: BTreeMap<State, usize>,
    memo: BTreeMap<State, u64>,
}

impl McpsSearch<'_> {
    fn graph(&self, s: &State) -> ColoredMultigraph {
        let black: Vec<Edge> = s.iter().enumerate().map(|(i, &(a, b))| Edge::new(Label(i as u32 + 1), a, b)).collect();
        let off = s.len() as u32;
        let gray = self.gray.iter().enumerate().map(|(i, e)| Edge { label: Label(off + i as u32 + 1), ends: e.ends }).collect();
        ColoredMultigraph::with_labels(self.vertex_count, black, gray).expect("2-breaks keep the graph Eulerian")
    }

    fn cycles(&mut self, s: &State) -> Result<usize> {
        if let Some(&c) = self.cycles.get(s) {
            return Ok(c);
        }
        let c = state_cycles(&self.graph(s))?;
        self.cycles.insert(s.clone(), c);
        Ok(c)
    }

    fn solve(&mut self, s: &State) -> Result<u64> {
        if *s == self.target {
            return Ok(0);
        }
        if let Some(&v) = self.memo.get(s) {
            return Ok(v);
        }
        let c = self.cycles(s)?;
        let mut best = u64::MAX;
        for (n, cost) in neighbours(s, Some(self.col)) {
            if self.cycles(&n)? != c + 1 {
                continue;
            }
            best = best.min(cost as u64 + self.solve(&n)?);
        }
        if best == u64::MAX {
            return Err(Error::Internal("no parsimonious move from a non-terminal state"));
        }
        self.memo.insert(s.clone(), best);
        Ok(best)
    }
}

/// Minimum cost over all minimum-length scenarios: a search over states
/// restricted to moves that raise c by one.
pub fn brute_mcps(g: &ColoredMultigraph, col: &Coloring, cap: usize) -> Result<u64> {
    check_cap("brute_mcps", g.e(), cap)?;
    col.check(g)?;
    let mut search = McpsSearch {
        gray: g.gray().to_vec(),
        target: g.gray_key(),
        vertex_count: g.vertex_count(),
        col,
        cycles: BTreeMap::new(),
        memo: BTreeMap::new(),
    };
    search.solve(&g.black_key())
}

/// Every minimum-length scenario of `g`, as labelled 2-breaks.
pub fn enumerate_parsimonious_scenarios(g: &ColoredMultigraph, cap: usize) -> Result<Vec<Scenario>> {
    check_cap("enumerate_parsimonious_scenarios", g.e(), cap)?;
    fn go(g: &ColoredMultigraph, c: usize, prefix: &mut Vec<KBreak>, out: &mut Vec<Scenario>) -> Result<()> {
        if g.is_terminal() {
            out.push(Scenario::new(prefix.clone()));
            return Ok(());
        }
        let black = g.black();
        for i in 0..black.len() {
            for j in i + 1..black.len() {
                let ((a, b), (x, y)) = (black[i].ends, black[j].ends);
                let mut seen = BTreeSet::new();
                for added in [[ends(a, x), ends(b, y)], [ends(a, y), ends(b, x)]] {
                    let mut key = added;
                    key.sort_unstable();
                    let mut old = [black[i].ends, black[j].ends];
                    old.sort_unstable();
                    if key == old || !seen.insert(key) {
                        continue;
                    }
                    let m = KBreak::two([black[i].label, black[j].label], [(added[0], black[i].label), (added[1], black[j].label)]);
                    let next = m.apply(g)?;
                    if state_cycles(&next)? == c + 1 {
                        prefix.push(m);
                        go(&next, c + 1, prefix, out)?;
                        prefix.pop();
                    }
                }
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(g, state_cycles(g)?, &mut Vec::new(), &mut out)?;
    Ok(out)
}

fn brute_max_independent(arcs: &[Arc], overlaps: &dyn Fn(&Arc, &Arc) -> bool) -> usize {
    fn go(k: usize, arcs: &[Arc], chosen: &mut Vec<usize>, best: &mut usize, overlaps: &dyn Fn(&Arc, &Arc) -> bool) {
        if chosen.len() + (arcs.len() - k) <= *best {
            return;
        }
        if k == arcs.len() {
            *best = chosen.len();
            return;
        }
        if chosen.iter().all(|&c| !overlaps(&arcs[c], &arcs[k])) {
            chosen.push(k);
            go(k + 1, arcs, chosen, best, overlaps);
            chosen.pop();
        }
        go(k + 1, arcs, chosen, best, overlaps);
    }
    let mut best = 0;
    go(0, arcs, &mut Vec::new(), &mut best, overlaps);
    best
}

/// MISA size by backtracking over all arcs of the path.
pub fn brute_misa_path(p: &AlternatingPath, cap: usize) -> Result<usize> {
    check_cap("brute_misa_path", p.len(), cap)?;
    let n = p.colors.len();
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in (i + 2..n).step_by(2) {
            if p.colors[i] == p.colors[j] {
                arcs.push(Arc { start: i, end: j });
            }
        }
    }
    Ok(brute_max_independent(&arcs, &|a, b| a.overlaps(b)))
}

/// MISA size of a circle with arcs taken as cyclic intervals, including
/// the whole circle from any vertex.
pub fn brute_misa_circle(circle: &Circle, col: &Coloring, cap: usize) -> Result<usize> {
    check_cap("brute_misa_circle", circle.e(), cap)?;
    let len = circle.vertices.len();
    let mut arcs = Vec::new();
    for s in 0..len {
        for l in (2..=len).step_by(2) {
            if col.of(circle.vertices[s]) == col.of(circle.vertices[(s + l) % len]) {
                // encode as (start edge, length)
                arcs.push(Arc { start: s, end: s + l });
            }
        }
    }
    let mask = |a: &Arc| -> u64 { (a.start..a.end).fold(0, |m, k| m | 1 << (k % len)) };
    let end_edges = |a: &Arc| -> u64 { (1 << (a.start % len)) | (1 << ((a.end - 1) % len)) };
    let overlaps = |a: &Arc, b: &Arc| -> bool {
        let (ma, mb) = (mask(a), mask(b));
        if ma & mb == 0 {
            return false;
        }
        let inside = |outer: &Arc, mo: u64, mi: u64| mi & !mo == 0 && mi != mo && mi & end_edges(outer) == 0;
        !(inside(a, ma, mb) || inside(b, mb, ma))
    };
    Ok(brute_max_independent(&arcs, &overlaps))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::Color;
    use crate::graph::{EdgeColor, Vertex};

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    fn circle_graph(e: u32) -> ColoredMultigraph {
        let n = 2 * e;
        let black: Vec<_> = (0..e).map(|i| (v(2 * i), v(2 * i + 1))).collect();
        let gray: Vec<_> = (0..e).map(|i| (v(2 * i + 1), v((2 * i + 2) % n))).collect();
        ColoredMultigraph::new(n, &black, &gray).unwrap()
    }

    #[test]
    fn circle_distance() {
        let g = circle_graph(4);
        assert_eq!(brute_min_length(&g, 5).unwrap(), 3);
        assert_eq!(brute_macd(&g, 8).unwrap(), 1);
        assert_eq!(brute_min_cost(&g, &Coloring::distinct(8), 5).unwrap(), 3);
        assert_eq!(brute_mcps(&g, &Coloring::uniform(8, Color(0)), 5).unwrap(), 0);
    }

    #[test]
    fn caps_are_enforced() {
        let g = circle_graph(6);
        assert!(matches!(brute_min_length(&g, 5), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn one_color_misa() {
        let p = AlternatingPath::from_colors(vec![Color(0); 5], EdgeColor::Black);
        assert_eq!(brute_misa_path(&p, 12).unwrap(), 2);
        let c = Circle::from_graph(&circle_graph(3)).unwrap();
        assert_eq!(brute_misa_circle(&c, &Coloring::uniform(6, Color(0)), 6).unwrap(), 3);
    }

    #[test]
    fn parsimonious_scenario_counts() {
        // a circle with k black edges has k^(k-2) minimum-length scenarios
        assert_eq!(enumerate_parsimonious_scenarios(&circle_graph(2), 5).unwrap().len(), 1);
        assert_eq!(enumerate_parsimonious_scenarios(&circle_graph(3), 5).unwrap().len(), 3);
        assert_eq!(enumerate_parsimonious_scenarios(&circle_graph(4), 5).unwrap().len(), 16);
    }
}
