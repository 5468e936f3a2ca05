//! Vertex colorings, the colored 2-break cost, the color-merged graph,
//! and minimum-cost scenarios.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{ends, ColoredMultigraph, Edge, Ends, Label, Vertex};
use crate::macd::{macd_exact, CycleDecomposition};
use crate::scenario::{parsimonious_scenario, terminal_matching, KBreak, Scenario};
use crate::union_find::UnionFind;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Color(pub u32);

impl Color {
    /// Reserved for the telomere vertex of a breakpoint graph.
    pub const TELOMERE: Color = Color(u32::MAX);
}

/// One color per vertex, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(colors: Vec<Color>) -> Self {
        Coloring { colors }
    }

    pub fn uniform(n: u32, c: Color) -> Self {
        Coloring { colors: alloc::vec![c; n as usize] }
    }

    /// Every vertex its own color.
    pub fn distinct(n: u32) -> Self {
        Coloring { colors: (0..n).map(Color).collect() }
    }

    pub fn of(&self, v: Vertex) -> Color {
        self.colors[v.0 as usize]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    /// The coloring of a graph whose vertex `i` stands for `origin[i]`.
    pub fn pull_back(&self, origin: &[Vertex]) -> Coloring {
        Coloring { colors: origin.iter().map(|&v| self.of(v)).collect() }
    }

    pub fn check(&self, g: &ColoredMultigraph) -> Result<()> {
        if self.colors.len() < g.vertex_count() as usize {
            return Err(Error::ColoringSize { got: self.colors.len(), need: g.vertex_count() as usize });
        }
        Ok(())
    }

    fn pair(&self, e: Ends) -> (Color, Color) {
        let (a, b) = (self.of(e.0), self.of(e.1));
        if a <= b {
            (a, b)
        } else {
            (b, a)
        }
    }
}

/// 0 if the move leaves the multiset of colored endpoint pairs unchanged,
/// 1 otherwise.
pub fn two_break_cost(removed: [Ends; 2], added: [Ends; 2], col: &Coloring) -> u8 {
    let mut before = [col.pair(removed[0]), col.pair(removed[1])];
    let mut after = [col.pair(added[0]), col.pair(added[1])];
    before.sort_unstable();
    after.sort_unstable();
    (before != after) as u8
}

/// Cost of a 2-break applied to the state `g`.
pub fn move_cost(g: &ColoredMultigraph, m: &KBreak, col: &Coloring) -> Result<u8> {
    if m.k() != 2 {
        return Err(Error::BadArity);
    }
    let r0 = g.black_edge(m.removed[0]).ok_or(Error::UnknownLabel(m.removed[0].0))?;
    let r1 = g.black_edge(m.removed[1]).ok_or(Error::UnknownLabel(m.removed[1].0))?;
    Ok(two_break_cost([r0.ends, r1.ends], [m.added[0].0, m.added[1].0], col))
}

/// Replays a 2-break scenario and sums its move costs.
pub fn scenario_cost(g: &ColoredMultigraph, scenario: &Scenario, col: &Coloring) -> Result<u64> {
    col.check(g)?;
    let mut cur = g.clone();
    let mut total = 0u64;
    for (i, m) in scenario.moves.iter().enumerate() {
        total += move_cost(&cur, m, col).map_err(|e| e.at(i))? as u64;
        cur = m.apply(&cur).map_err(|e| e.at(i))?;
    }
    Ok(total)
}

/// The quotient J(G, col): one vertex per color, edge labels preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MergedGraph {
    pub graph: ColoredMultigraph,
    /// Color represented by each merged vertex, ascending.
    pub colors: Vec<Color>,
}

impl MergedGraph {
    pub fn vertex_of(&self, c: Color) -> Vertex {
        Vertex(self.colors.binary_search(&c).expect("color present") as u32)
    }

    fn project(&self, e: Ends, col: &Coloring) -> Ends {
        ends(self.vertex_of(col.of(e.0)), self.vertex_of(col.of(e.1)))
    }
}

pub fn merged_graph(g: &ColoredMultigraph, col: &Coloring) -> Result<MergedGraph> {
    col.check(g)?;
    let colors: Vec<Color> =
        g.active_vertices().iter().map(|&v| col.of(v)).collect::<BTreeSet<_>>().into_iter().collect();
    let vertex_of = |v: Vertex| Vertex(colors.binary_search(&col.of(v)).expect("color present") as u32);
    let map = |edges: &[Edge]| -> Vec<Edge> {
        edges.iter().map(|e| Edge { label: e.label, ends: ends(vertex_of(e.ends.0), vertex_of(e.ends.1)) }).collect()
    };
    let graph = ColoredMultigraph::with_labels(colors.len() as u32, map(g.black()), map(g.gray()))?;
    Ok(MergedGraph { graph, colors })
}

/// A scenario on G pushed down to J together with the decomposition of J
/// it induces.
#[derive(Clone, Debug)]
pub struct Projection {
    pub merged: MergedGraph,
    pub scenario: Scenario,
    pub decomposition: CycleDecomposition,
}

/// Orients the removed edges as (a,b),(c,d) so that the added edges are
/// (a,c),(b,d); `None` for a move that re-adds its removed edges.
fn orient(r: [Ends; 2], added: [Ends; 2]) -> Option<[Vertex; 4]> {
    let want = {
        let mut w = added;
        w.sort_unstable();
        w
    };
    for (a, b) in [(r[0].0, r[0].1), (r[0].1, r[0].0)] {
        for (c, d) in [(r[1].0, r[1].1), (r[1].1, r[1].0)] {
            let mut got = [ends(a, c), ends(b, d)];
            got.sort_unstable();
            if got == want {
                return Some([a, b, c, d]);
            }
        }
    }
    None
}

/// Projects a 2-break scenario on G to J so that every cost-1 move maps to
/// a move on J and cost-0 moves only relabel.
pub fn project_scenario_to_merged(g: &ColoredMultigraph, col: &Coloring, scenario: &Scenario) -> Result<Projection> {
    let merged = merged_graph(g, col)?;
    let labels: Vec<Label> = g.labels().collect();
    let index: BTreeMap<Label, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut uf = UnionFind::new(labels.len());
    // scenario label -> label of the same edge in the projection
    let mut relabel: BTreeMap<Label, Label> = g.black().iter().map(|e| (e.label, e.label)).collect();
    let mut cur = g.clone();
    let mut moves = Vec::new();
    for (idx, m) in scenario.moves.iter().enumerate() {
        if m.k() != 2 {
            return Err(Error::BadArity.at(idx));
        }
        let r0 = *cur.black_edge(m.removed[0]).ok_or(Error::UnknownLabel(m.removed[0].0).at(idx))?;
        let r1 = *cur.black_edge(m.removed[1]).ok_or(Error::UnknownLabel(m.removed[1].0).at(idx))?;
        let next = m.apply(&cur).map_err(|e| e.at(idx))?;
        let (i, j) = (relabel[&r0.label], relabel[&r1.label]);
        let added = [m.added[0], m.added[1]];
        // New projection labels for the pairs (a,c) and (b,d).
        let assign = |ac: Ends, ac_label: Label, bd_label: Label, relabel: &mut BTreeMap<Label, Label>| {
            let (first, second) = if added[0].0 == ac { (ac_label, bd_label) } else { (bd_label, ac_label) };
            relabel.insert(added[0].1, first);
            relabel.insert(added[1].1, second);
        };
        match orient([r0.ends, r1.ends], [added[0].0, added[1].0]) {
            None => {
                // Re-adds the removed edges; only the labels move.
                let (first, second) = if added[0].0 == r0.ends { (i, j) } else { (j, i) };
                relabel.insert(added[0].1, first);
                relabel.insert(added[1].1, second);
            }
            Some([a, b, c, d]) => {
                let cost = two_break_cost([r0.ends, r1.ends], [added[0].0, added[1].0], col);
                let (ac, bd) = (ends(a, c), ends(b, d));
                if cost == 1 {
                    assign(ac, i, j, &mut relabel);
                    uf.union(index[&i], index[&j]);
                    moves.push(KBreak::two([i, j], [(merged.project(ac, col), i), (merged.project(bd, col), j)]));
                } else if col.of(a) == col.of(d) {
                    assign(ac, j, i, &mut relabel);
                } else {
                    assign(ac, i, j, &mut relabel);
                }
            }
        }
        cur = next;
    }
    let black: Vec<Edge> = cur.black().iter().map(|e| Edge { label: relabel[&e.label], ends: e.ends }).collect();
    let projected = ColoredMultigraph::with_labels(cur.vertex_count(), black, cur.gray().to_vec())?;
    for (b, gr) in terminal_matching(&projected)? {
        uf.union(index[&b], index[&gr]);
    }
    let mut parts: BTreeMap<usize, Vec<Label>> = BTreeMap::new();
    for (k, &l) in labels.iter().enumerate() {
        parts.entry(uf.find(k)).or_default().push(l);
    }
    Ok(Projection { merged, scenario: Scenario::new(moves), decomposition: CycleDecomposition::new(parts.into_values().collect()) })
}

/// Black edges of `g` not paired with a parallel gray edge, and the
/// unpaired gray edges, pairing lowest labels first.
fn unmatched(g: &ColoredMultigraph) -> (Vec<Edge>, Vec<Edge>) {
    let mut gray_by_ends: BTreeMap<Ends, Vec<Edge>> = BTreeMap::new();
    for e in g.gray().iter().rev() {
        gray_by_ends.entry(e.ends).or_default().push(*e);
    }
    let mut black_left = Vec::new();
    for e in g.black() {
        match gray_by_ends.get_mut(&e.ends).and_then(|v| v.pop()) {
            Some(_) => {}
            None => black_left.push(*e),
        }
    }
    let mut gray_left: Vec<Edge> = gray_by_ends.into_values().flatten().collect();
    gray_left.sort_unstable_by_key(|e| e.label);
    (black_left, gray_left)
}

/// A complete scenario of cost 0 for a graph whose merged graph is terminal.
pub fn zero_cost_sort(g: &ColoredMultigraph, col: &Coloring) -> Result<Scenario> {
    if !merged_graph(g, col)?.graph.is_terminal() {
        return Err(Error::MergedNotTerminal);
    }
    let mut cur = g.clone();
    let mut moves = Vec::new();
    let mut push = |cur: &mut ColoredMultigraph, removed: [(Label, Ends); 2], added: [(Ends, Label); 2]| -> Result<()> {
        if two_break_cost([removed[0].1, removed[1].1], [added[0].0, added[1].0], col) != 0 {
            return Err(Error::Internal("zero-cost step has positive cost"));
        }
        let m = KBreak::two([removed[0].0, removed[1].0], added);
        *cur = m.apply(cur)?;
        moves.push(m);
        Ok(())
    };
    loop {
        let (black, gray) = unmatched(&cur);
        let Some(&first) = black.first() else { break };
        let (u, v) = first.ends;
        // A leftover gray edge (u', v') with col(u') = col(u), col(v') = col(v).
        let (up, vp) = gray
            .iter()
            .find_map(|e| {
                let (x, y) = e.ends;
                if col.of(x) == col.of(u) && col.of(y) == col.of(v) {
                    Some((x, y))
                } else if col.of(y) == col.of(u) && col.of(x) == col.of(v) {
                    Some((y, x))
                } else {
                    None
                }
            })
            .ok_or(Error::Internal("no gray partner of matching colors"))?;
        let ep = *black.iter().find(|e| e.touches(up)).ok_or(Error::Internal("no black edge at u'"))?;
        let er = *black
            .iter()
            .find(|e| e.label != ep.label && e.touches(vp))
            .ok_or(Error::Internal("no second black edge at v'"))?;
        let p = ep.other(up);
        let r = er.other(vp);
        if first.label == ep.label || first.label == er.label {
            push(&mut cur, [(ep.label, ep.ends), (er.label, er.ends)], [(ends(p, r), ep.label), (ends(up, vp), er.label)])?;
        } else {
            push(
                &mut cur,
                [(first.label, first.ends), (ep.label, ep.ends)],
                [(ends(u, p), first.label), (ends(v, up), ep.label)],
            )?;
            push(
                &mut cur,
                [(ep.label, ends(v, up)), (er.label, er.ends)],
                [(ends(up, vp), ep.label), (ends(v, r), er.label)],
            )?;
        }
    }
    Ok(Scenario::new(moves))
}

/// A scenario of minimum total cost, e(J) - c(J).
///
/// `cap` bounds the exact decomposition of J.
pub fn min_cost_scenario(g: &ColoredMultigraph, col: &Coloring, cap: usize) -> Result<(u64, Scenario)> {
    let merged = merged_graph(g, col)?;
    let j = &merged.graph;
    let (c, d) = macd_exact(j, cap)?;
    let on_j = parsimonious_scenario(j, &d)?;
    let mut cur = g.clone();
    let mut moves = Vec::new();
    for m in &on_j.moves {
        let lifted = lift_merged_move(&cur, &merged, col, m)?;
        cur = lifted.apply(&cur)?;
        moves.push(lifted);
    }
    let mut scenario = Scenario::new(moves);
    scenario.extend(zero_cost_sort(&cur, col)?);
    let cost = scenario_cost(g, &scenario, col)?;
    if cost != (j.e() - c) as u64 {
        return Err(Error::Internal("lifted scenario cost differs from e(J) - c(J)"));
    }
    Ok((cost, scenario))
}

/// Realises a 2-break on J as a 2-break on G removing the same labels.
fn lift_merged_move(g: &ColoredMultigraph, merged: &MergedGraph, col: &Coloring, m: &KBreak) -> Result<KBreak> {
    let (p, q) = g.black_edge(m.removed[0]).ok_or(Error::UnknownLabel(m.removed[0].0))?.ends;
    let (r, t) = g.black_edge(m.removed[1]).ok_or(Error::UnknownLabel(m.removed[1].0))?.ends;
    let target = [m.added[0], m.added[1]];
    for pairing in [[(p, r), (q, t)], [(p, t), (q, r)], [(p, q), (r, t)]] {
        let x = [ends(pairing[0].0, pairing[0].1), ends(pairing[1].0, pairing[1].1)];
        let px = [merged.project(x[0], col), merged.project(x[1], col)];
        if px[0] == target[0].0 && px[1] == target[1].0 {
            return Ok(KBreak::two([m.removed[0], m.removed[1]], [(x[0], target[0].1), (x[1], target[1].1)]));
        }
        if px[1] == target[0].0 && px[0] == target[1].0 {
            return Ok(KBreak::two([m.removed[0], m.removed[1]], [(x[1], target[0].1), (x[0], target[1].1)]));
        }
    }
    Err(Error::Internal("merged move has no lift"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scenario::validate_scenario;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    /// Alternating circle 0..2e with black (2i, 2i+1) and gray (2i+1, 2i+2).
    fn circle(e: u32) -> ColoredMultigraph {
        let n = 2 * e;
        let black: Vec<_> = (0..e).map(|i| (v(2 * i), v(2 * i + 1))).collect();
        let gray: Vec<_> = (0..e).map(|i| (v(2 * i + 1), v((2 * i + 2) % n))).collect();
        ColoredMultigraph::new(n, &black, &gray).unwrap()
    }

    #[test]
    fn cost_is_zero_iff_color_pairs_preserved() {
        let col = Coloring::new(alloc::vec![Color(0), Color(1), Color(0), Color(2)]);
        // (0,1),(2,3) -> (0,2),(1,3): pairs {0,1},{0,2} -> {0,0},{1,2}
        assert_eq!(two_break_cost([(v(0), v(1)), (v(2), v(3))], [(v(0), v(2)), (v(1), v(3))], &col), 1);
        // (0,1),(2,3) -> (0,3),(1,2): {0,2},{0,1} -> same multiset
        assert_eq!(two_break_cost([(v(0), v(1)), (v(2), v(3))], [(v(0), v(3)), (v(1), v(2))], &col), 0);
    }

    #[test]
    fn merged_graph_of_distinct_coloring_is_isomorphic() {
        let g = circle(3);
        let m = merged_graph(&g, &Coloring::distinct(6)).unwrap();
        assert_eq!(m.graph, g);
    }

    #[test]
    fn min_cost_of_distinct_circle_is_e_minus_one() {
        let g = circle(3);
        let (cost, s) = min_cost_scenario(&g, &Coloring::distinct(6), 16).unwrap();
        assert_eq!(cost, 2);
        assert!(validate_scenario(&g, &s).unwrap().final_terminal);
    }

    #[test]
    fn uniform_coloring_costs_nothing() {
        let g = circle(4);
        let col = Coloring::uniform(8, Color(7));
        let s = zero_cost_sort(&g, &col).unwrap();
        assert!(validate_scenario(&g, &s).unwrap().final_terminal);
        assert_eq!(scenario_cost(&g, &s, &col).unwrap(), 0);
    }

    #[test]
    fn zero_cost_sort_needs_terminal_merge() {
        assert_eq!(zero_cost_sort(&circle(2), &Coloring::distinct(4)), Err(Error::MergedNotTerminal));
    }

    #[test]
    fn projection_of_cost_one_move() {
        let g = circle(2);
        let col = Coloring::distinct(4);
        // black (0,1),(2,3); gray (1,2),(3,0)
        let s = Scenario::new(alloc::vec![KBreak::two(
            [Label(1), Label(2)],
            [((v(1), v(2)), Label(1)), ((v(0), v(3)), Label(2))]
        )]);
        let p = project_scenario_to_merged(&g, &col, &s).unwrap();
        assert_eq!(p.scenario.len(), 1);
        assert_eq!(p.decomposition.len(), 1);
        assert!(p.scenario.replay(&p.merged.graph).unwrap().is_terminal());
    }
}
