//! Circles, arcs, the maximum independent set of arcs, and minimum-cost
//! parsimonious sorting of a circle.

use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::colored::{two_break_cost, Color, Coloring};
use crate::error::{Error, Result};
use crate::graph::{ends, ColoredMultigraph, Edge, EdgeColor, Label, Vertex};
use crate::macd::CycleDecomposition;
use crate::scenario::{sort_trail, KBreak, PlacedTwoBreak, Scenario, Step};

/// A connected graph in which every vertex has one black and one gray edge,
/// stored as its cyclic vertex sequence. `edges[k]` joins `vertices[k]` to
/// `vertices[k+1]` (cyclically); even positions are black.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Circle {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Label>,
}

impl Circle {
    /// Reads the circle formed by all edges of `g`; isolated vertices are ignored.
    pub fn from_graph(g: &ColoredMultigraph) -> Result<Circle> {
        if g.e() == 0 {
            return Err(Error::NotACircle);
        }
        let n = g.vertex_count() as usize;
        let mut black_at: Vec<Option<Edge>> = vec![None; n];
        let mut gray_at: Vec<Option<Edge>> = vec![None; n];
        for (edges, slot) in [(g.black(), &mut black_at), (g.gray(), &mut gray_at)] {
            for e in edges {
                if e.is_loop() {
                    return Err(Error::NotACircle);
                }
                for x in [e.ends.0, e.ends.1] {
                    if slot[x.0 as usize].replace(*e).is_some() {
                        return Err(Error::NotACircle);
                    }
                }
            }
        }
        let first = g.black()[0];
        let start = first.ends.0;
        let mut vertices = vec![start];
        let mut edges = vec![first.label];
        let mut cur = first.ends.1;
        let mut need = EdgeColor::Gray;
        loop {
            let table = if need == EdgeColor::Gray { &gray_at } else { &black_at };
            let e = table[cur.0 as usize].ok_or(Error::NotACircle)?;
            vertices.push(cur);
            edges.push(e.label);
            cur = e.other(cur);
            if need == EdgeColor::Gray && cur == start {
                break;
            }
            need = need.flip();
        }
        if edges.len() != 2 * g.e() {
            return Err(Error::NotACircle);
        }
        Ok(Circle { vertices, edges })
    }

    /// Number of black edges.
    pub fn e(&self) -> usize {
        self.edges.len() / 2
    }

    pub fn edge_color(k: usize) -> EdgeColor {
        if k % 2 == 0 {
            EdgeColor::Black
        } else {
            EdgeColor::Gray
        }
    }

    pub fn to_graph(&self, vertex_count: u32) -> Result<ColoredMultigraph> {
        let len = self.vertices.len();
        let mut black = Vec::new();
        let mut gray = Vec::new();
        for k in 0..len {
            let e = Edge::new(self.edges[k], self.vertices[k], self.vertices[(k + 1) % len]);
            if k % 2 == 0 {
                black.push(e);
            } else {
                gray.push(e);
            }
        }
        ColoredMultigraph::with_labels(vertex_count, black, gray)
    }

    pub fn position_of(&self, v: Vertex) -> Option<usize> {
        self.vertices.iter().position(|&x| x == v)
    }
}

/// An alternating path given by its vertex colors; `vertices` keep the
/// identities when the path was cut from a circle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternatingPath {
    pub vertices: Vec<Vertex>,
    pub colors: Vec<Color>,
    pub first_edge: EdgeColor,
}

impl AlternatingPath {
    pub fn from_colors(colors: Vec<Color>, first_edge: EdgeColor) -> Self {
        let vertices = (0..colors.len() as u32).map(Vertex).collect();
        AlternatingPath { vertices, colors, first_edge }
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.colors.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn compatible(&self, i: usize, j: usize) -> bool {
        j >= i + 2 && (j - i) % 2 == 0 && self.colors[i] == self.colors[j]
    }
}

/// Cuts the circle at `v`, which then appears at both ends of the path.
pub fn split_at_vertex(circle: &Circle, v: Vertex, col: &Coloring) -> Result<AlternatingPath> {
    let p = circle.position_of(v).ok_or(Error::VertexNotOnCircle(v.0))?;
    let len = circle.vertices.len();
    let vertices: Vec<Vertex> = (0..=len).map(|k| circle.vertices[(p + k) % len]).collect();
    let colors = vertices.iter().map(|&x| col.of(x)).collect();
    Ok(AlternatingPath { vertices, colors, first_edge: Circle::edge_color(p) })
}

/// The subpath between path positions `start < end`; its edges are
/// `start..end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub start: usize,
    pub end: usize,
}

impl Arc {
    /// Two arcs may coexist if they share no edge, or one lies strictly
    /// inside the other without touching either of its end edges.
    pub fn overlaps(&self, other: &Arc) -> bool {
        let (a, b) = if self.end - self.start >= other.end - other.start { (self, other) } else { (other, self) };
        let disjoint = a.end <= b.start || b.end <= a.start;
        let strictly_inside = a.start < b.start && b.end < a.end;
        !(disjoint || strictly_inside)
    }
}

pub fn is_independent(arcs: &[Arc]) -> bool {
    arcs.iter().enumerate().all(|(i, a)| arcs[i + 1..].iter().all(|b| !a.overlaps(b)))
}

/// Interval table of maximum independent arc counts over subpaths, stored
/// by column as a triangle: column `j` holds the counts for `i..=j`, `i <= j`.
struct MisaTable {
    n: usize,
    m: Vec<u32>,
}

fn column_start(j: usize) -> usize {
    j * (j + 1) / 2
}

impl MisaTable {
    fn get(&self, i: usize, j: usize) -> u32 {
        self.m[column_start(j) + i]
    }
}

/// Column `j` starts as column `j-1` plus the arc (i, j) where allowed; then
/// each arc start `k`, once final, offers `M(i,k) + M(k,j)` to every `i < k`.
fn misa_table(p: &AlternatingPath) -> MisaTable {
    let n = p.colors.len();
    let mut m: Vec<u32> = Vec::with_capacity(column_start(n));
    m.push(0);
    for j in 1..n {
        let prev_start = column_start(j - 1);
        m.extend_from_within(prev_start..prev_start + j);
        m.push(0);
        let (done, col) = m.split_at_mut(column_start(j));
        let prev = &done[prev_start..];
        let mut i = j;
        while i >= 2 {
            i -= 2;
            if p.colors[i] != p.colors[j] {
                continue;
            }
            col[i] = col[i].max(prev[i + 1] + 1);
            let via = col[i];
            let left = &done[column_start(i)..column_start(i) + i];
            for (c, &l) in col[..i].iter_mut().zip(left) {
                *c = (*c).max(l + via);
            }
        }
    }
    MisaTable { n, m }
}

/// Size of a maximum independent set of arcs.
pub fn misa_size(p: &AlternatingPath) -> usize {
    if p.colors.len() < 3 {
        return 0;
    }
    let t = misa_table(p);
    t.get(0, t.n - 1) as usize
}

/// A maximum independent set of arcs, by interval dynamic programming.
pub fn misa_path(p: &AlternatingPath) -> (usize, Vec<Arc>) {
    if p.colors.len() < 3 {
        return (0, Vec::new());
    }
    let t = misa_table(p);
    let mut arcs = Vec::new();
    let mut stack = vec![(0usize, t.n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j <= i + 1 {
            continue;
        }
        let here = t.get(i, j);
        if here == 0 {
            continue;
        }
        if here == t.get(i, j - 1) {
            stack.push((i, j - 1));
        } else if p.compatible(i, j) && here == t.get(i + 1, j - 1) + 1 {
            arcs.push(Arc { start: i, end: j });
            stack.push((i + 1, j - 1));
        } else {
            let k = (i + 1..j)
                .find(|&k| p.compatible(k, j) && t.get(i, k) + t.get(k, j) == here)
                .expect("table entry has a witness");
            stack.push((i, k));
            stack.push((k, j));
        }
    }
    arcs.sort_unstable();
    (arcs.len(), arcs)
}

/// Minimum cost among minimum-length scenarios of a circle:
/// e(O) - |MISA|.
pub fn mcps_circle_cost(circle: &Circle, col: &Coloring) -> u64 {
    let p = split_at_vertex(circle, circle.vertices[0], col).expect("first vertex is on the circle");
    (circle.e() - misa_size(&p)) as u64
}

/// An optimal scenario for a circle: all but one arc of a maximum
/// independent set are cut off at cost 0, then the remaining circles are
/// sorted directly.
pub fn mcps_circle(circle: &Circle, col: &Coloring) -> Result<(u64, Scenario)> {
    let len = circle.vertices.len();
    let p = split_at_vertex(circle, circle.vertices[0], col)?;
    let (size, arcs) = misa_path(&p);

    // Circle as a linked list of nodes 0..len; edge k leaves node k.
    let mut next: Vec<usize> = (0..len).map(|k| (k + 1) % len).collect();
    let mut prev: Vec<usize> = (0..len).map(|k| (k + len - 1) % len).collect();
    let mut label: Vec<Label> = circle.edges.clone();
    let black: Vec<bool> = (0..len).map(|k| k % 2 == 0).collect();
    let vx = |k: usize| circle.vertices[k];

    // Nesting forest of the arcs; an arc is ready once its children are gone.
    let mut parent = vec![None; arcs.len()];
    let mut children = vec![0usize; arcs.len()];
    let mut order: Vec<usize> = (0..arcs.len()).collect();
    order.sort_unstable_by_key(|&a| (arcs[a].start, core::cmp::Reverse(arcs[a].end)));
    let mut open: Vec<usize> = Vec::new();
    for &a in &order {
        while let Some(&top) = open.last() {
            if arcs[top].end <= arcs[a].start {
                open.pop();
            } else {
                break;
            }
        }
        if let Some(&top) = open.last() {
            parent[a] = Some(top);
            children[top] += 1;
        }
        open.push(a);
    }
    let mut start_node: Vec<usize> = arcs.iter().map(|a| a.start % len).collect();
    let mut end_node: Vec<usize> = arcs.iter().map(|a| a.end % len).collect();
    let mut ready: BTreeSet<(usize, usize)> =
        (0..arcs.len()).filter(|&a| children[a] == 0).map(|a| (arcs[a].start, a)).collect();
    let mut alive = vec![true; arcs.len()];

    let mut moves: Vec<PlacedTwoBreak> = Vec::new();
    for _ in 1..size {
        let (_, u) = ready.pop_first().expect("a minimal arc remains");
        alive[u] = false;
        let (s, t) = (start_node[u], end_node[u]);
        if black[s] {
            // Join t back to the arc's second vertex and s past the arc.
            let (s1, t1) = (next[s], next[t]);
            let (ls, lt) = (label[s], label[t]);
            moves.push(PlacedTwoBreak {
                removed: [(ls, ends(vx(s), vx(s1))), (lt, ends(vx(t), vx(t1)))],
                added: [(ends(vx(t), vx(s1)), ls), (ends(vx(s), vx(t1)), lt)],
            });
            next[t] = s1;
            prev[s1] = t;
            next[s] = t1;
            prev[t1] = s;
            label[s] = lt;
            label[t] = ls;
            for a in 0..arcs.len() {
                if alive[a] && start_node[a] == t {
                    start_node[a] = s;
                }
            }
        } else {
            let (s0, t0) = (prev[s], prev[t]);
            let (ls0, lt0) = (label[s0], label[t0]);
            moves.push(PlacedTwoBreak {
                removed: [(ls0, ends(vx(s0), vx(s))), (lt0, ends(vx(t0), vx(t)))],
                added: [(ends(vx(t0), vx(s)), ls0), (ends(vx(s0), vx(t)), lt0)],
            });
            next[t0] = s;
            prev[s] = t0;
            next[s0] = t;
            prev[t] = s0;
            label[t0] = ls0;
            label[s0] = lt0;
            for a in 0..arcs.len() {
                if alive[a] && end_node[a] == s {
                    end_node[a] = t;
                }
            }
        }
        if let Some(q) = parent[u] {
            children[q] -= 1;
            if children[q] == 0 {
                ready.insert((arcs[q].start, q));
            }
        }
    }
    let extracted = moves.len();

    let mut seen = vec![false; len];
    for s in 0..len {
        if seen[s] {
            continue;
        }
        let mut trail = Vec::new();
        let mut k = s;
        while !seen[k] {
            seen[k] = true;
            let color = if black[k] { EdgeColor::Black } else { EdgeColor::Gray };
            trail.push(Step { label: label[k], from: vx(k), to: vx(next[k]), color });
            k = next[k];
        }
        moves.extend(sort_trail(&trail));
    }

    let mut cost = 0u64;
    for (i, m) in moves.iter().enumerate() {
        let c = two_break_cost([m.removed[0].1, m.removed[1].1], [m.added[0].0, m.added[1].0], col) as u64;
        if i < extracted && c != 0 {
            return Err(Error::Internal("arc extraction has positive cost"));
        }
        cost += c;
    }
    if cost != (circle.e() - size) as u64 || moves.len() != circle.e() - 1 {
        return Err(Error::Internal("circle scenario misses the optimum"));
    }
    Ok((cost, Scenario::new(moves.iter().map(PlacedTwoBreak::to_kbreak).collect::<Vec<KBreak>>())))
}

/// True when no two parts of `d` interleave around the circle.
pub fn is_noncrossing(d: &CycleDecomposition, circle: &Circle) -> Result<bool> {
    let len = circle.edges.len();
    let mut part_at = vec![usize::MAX; len];
    let mut covered = 0;
    for (pi, part) in d.parts.iter().enumerate() {
        for l in part {
            let k = circle.edges.iter().position(|x| x == l).ok_or(Error::LabelMismatch)?;
            part_at[k] = pi;
            covered += 1;
        }
    }
    if covered != len {
        return Err(Error::LabelMismatch);
    }
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            let mut seq: Vec<usize> = part_at.iter().copied().filter(|&x| x == a || x == b).collect();
            seq.dedup();
            if seq.len() > 1 && seq.first() == seq.last() {
                seq.pop();
            }
            if seq.len() >= 4 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::scenario_cost;
    use crate::scenario::validate_scenario;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    fn circle_graph(e: u32) -> ColoredMultigraph {
        let n = 2 * e;
        let black: Vec<_> = (0..e).map(|i| (v(2 * i), v(2 * i + 1))).collect();
        let gray: Vec<_> = (0..e).map(|i| (v(2 * i + 1), v((2 * i + 2) % n))).collect();
        ColoredMultigraph::new(n, &black, &gray).unwrap()
    }

    fn colors(cs: &[u32]) -> Vec<Color> {
        cs.iter().map(|&c| Color(c)).collect()
    }

    #[test]
    fn circle_traversal() {
        let c = Circle::from_graph(&circle_graph(3)).unwrap();
        assert_eq!(c.vertices, vec![v(0), v(1), v(2), v(3), v(4), v(5)]);
        assert_eq!(c.edges, vec![Label(1), Label(4), Label(2), Label(5), Label(3), Label(6)]);
        assert_eq!(c.to_graph(6).unwrap(), circle_graph(3));
    }

    #[test]
    fn one_color_path_of_four_edges() {
        let p = AlternatingPath::from_colors(colors(&[0, 0, 0, 0, 0]), EdgeColor::Black);
        let (k, arcs) = misa_path(&p);
        assert_eq!(k, 2);
        assert!(is_independent(&arcs));
    }

    #[test]
    fn overlap_rules() {
        let whole = Arc { start: 0, end: 6 };
        assert!(!whole.overlaps(&Arc { start: 2, end: 4 }));
        assert!(whole.overlaps(&Arc { start: 0, end: 2 }));
        assert!(whole.overlaps(&Arc { start: 4, end: 6 }));
        assert!(!Arc { start: 0, end: 2 }.overlaps(&Arc { start: 2, end: 4 }));
        assert!(Arc { start: 0, end: 4 }.overlaps(&Arc { start: 2, end: 6 }));
        assert!(whole.overlaps(&whole));
    }

    #[test]
    fn distinct_colors_cost_e_minus_one() {
        let g = circle_graph(3);
        let c = Circle::from_graph(&g).unwrap();
        let col = Coloring::distinct(6);
        let (cost, s) = mcps_circle(&c, &col).unwrap();
        assert_eq!(cost, 2);
        assert_eq!(mcps_circle_cost(&c, &col), 2);
        assert!(validate_scenario(&g, &s).unwrap().final_terminal);
        assert_eq!(scenario_cost(&g, &s, &col).unwrap(), 2);
    }

    #[test]
    fn one_color_circle_is_free() {
        let g = circle_graph(4);
        let c = Circle::from_graph(&g).unwrap();
        let col = Coloring::uniform(8, Color(0));
        let (cost, s) = mcps_circle(&c, &col).unwrap();
        assert_eq!(cost, 0);
        assert_eq!(s.len(), 3);
        assert_eq!(scenario_cost(&g, &s, &col).unwrap(), 0);
    }

    #[test]
    fn gray_started_arcs_are_extracted() {
        // colors chosen so the optimal arcs begin on gray edges
        let g = circle_graph(4);
        let c = Circle::from_graph(&g).unwrap();
        let col = Coloring::new(colors(&[0, 1, 2, 1, 3, 1, 4, 5]));
        let (cost, s) = mcps_circle(&c, &col).unwrap();
        assert_eq!(cost, mcps_circle_cost(&c, &col));
        assert_eq!(scenario_cost(&g, &s, &col).unwrap(), cost);
        assert!(validate_scenario(&g, &s).unwrap().final_terminal);
    }

    #[test]
    fn crossing_detection() {
        let c = Circle::from_graph(&circle_graph(2)).unwrap();
        // positions: 1,3,2,4 ; parts {1,2} and {3,4} interleave
        let crossing = CycleDecomposition::new(vec![vec![Label(1), Label(2)], vec![Label(3), Label(4)]]);
        assert!(!is_noncrossing(&crossing, &c).unwrap());
        let nested = CycleDecomposition::new(vec![vec![Label(1), Label(3)], vec![Label(2), Label(4)]]);
        assert!(is_noncrossing(&nested, &c).unwrap());
    }
}
