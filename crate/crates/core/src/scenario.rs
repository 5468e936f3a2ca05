//! k-break scenarios: validation, the cycle decomposition a scenario
//! induces, and construction of a scenario from a decomposition.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::graph::{ends, ColoredMultigraph, Edge, EdgeColor, Ends, Label, Vertex};
use crate::macd::CycleDecomposition;
use crate::union_find::UnionFind;

/// Removes the black edges `removed` and adds `added`, each added edge
/// carrying one of the removed labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KBreak {
    pub removed: Vec<Label>,
    pub added: Vec<(Ends, Label)>,
}

impl KBreak {
    pub fn k(&self) -> usize {
        self.removed.len()
    }

    pub fn two(removed: [Label; 2], added: [(Ends, Label); 2]) -> Self {
        KBreak { removed: removed.to_vec(), added: added.to_vec() }
    }

    pub fn apply(&self, g: &ColoredMultigraph) -> Result<ColoredMultigraph> {
        g.apply_labelled(&self.removed, &self.added)
    }

    /// The same move with every added endpoint passed through `f`.
    pub fn map_vertices(&self, f: impl Fn(Vertex) -> Vertex) -> KBreak {
        KBreak {
            removed: self.removed.clone(),
            added: self.added.iter().map(|&((a, b), l)| (ends(f(a), f(b)), l)).collect(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Scenario {
    pub moves: Vec<KBreak>,
}

impl Scenario {
    pub fn new(moves: Vec<KBreak>) -> Self {
        Scenario { moves }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn extend(&mut self, other: Scenario) {
        self.moves.extend(other.moves);
    }

    /// Applies every move; errors carry the index of the failing move.
    pub fn replay(&self, g: &ColoredMultigraph) -> Result<ColoredMultigraph> {
        let mut cur = g.clone();
        for (i, m) in self.moves.iter().enumerate() {
            cur = m.apply(&cur).map_err(|e| e.at(i))?;
        }
        Ok(cur)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScenarioReport {
    pub length: usize,
    pub final_terminal: bool,
    pub intermediate_eulerian: bool,
}

/// Replays `scenario` and reports its length and whether it sorts `g`.
pub fn validate_scenario(g: &ColoredMultigraph, scenario: &Scenario) -> Result<ScenarioReport> {
    let mut cur = g.clone();
    let mut eulerian = true;
    for (i, m) in scenario.moves.iter().enumerate() {
        cur = m.apply(&cur).map_err(|e| e.at(i))?;
        let (db, dg) = cur.degrees();
        eulerian &= db == dg;
    }
    Ok(ScenarioReport { length: scenario.len(), final_terminal: cur.is_terminal(), intermediate_eulerian: eulerian })
}

/// Pairs each black edge of a terminal graph with a gray edge of the
/// same endpoints, lowest labels first.
pub(crate) fn terminal_matching(g: &ColoredMultigraph) -> Result<Vec<(Label, Label)>> {
    let mut black: Vec<(Ends, Label)> = g.black().iter().map(|e| (e.ends, e.label)).collect();
    let mut gray: Vec<(Ends, Label)> = g.gray().iter().map(|e| (e.ends, e.label)).collect();
    black.sort_unstable();
    gray.sort_unstable();
    black
        .iter()
        .zip(&gray)
        .map(|(b, gr)| if b.0 == gr.0 { Ok((b.1, gr.1)) } else { Err(Error::IncompleteScenario) })
        .collect()
}

/// Groups labels that were touched by a common move, then links each
/// black label with the gray label it ends up parallel to.
pub fn scenario_cycle_decomposition(g: &ColoredMultigraph, scenario: &Scenario) -> Result<CycleDecomposition> {
    let labels: Vec<Label> = g.labels().collect();
    let index: BTreeMap<Label, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut uf = UnionFind::new(labels.len());
    let mut cur = g.clone();
    for (i, m) in scenario.moves.iter().enumerate() {
        cur = m.apply(&cur).map_err(|e| e.at(i))?;
        let first = index[&m.removed[0]];
        for l in &m.removed[1..] {
            uf.union(first, index[l]);
        }
    }
    for (b, gr) in terminal_matching(&cur)? {
        uf.union(index[&b], index[&gr]);
    }
    let mut parts: BTreeMap<usize, Vec<Label>> = BTreeMap::new();
    for (i, &l) in labels.iter().enumerate() {
        parts.entry(uf.find(i)).or_default().push(l);
    }
    Ok(CycleDecomposition::new(parts.into_values().collect()))
}

/// One traversed edge of a closed alternating trail.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Step {
    pub label: Label,
    pub from: Vertex,
    pub to: Vertex,
    pub color: EdgeColor,
}

/// A 2-break together with the endpoints of the edges it removes.
#[derive(Clone, Debug)]
pub(crate) struct PlacedTwoBreak {
    pub removed: [(Label, Ends); 2],
    pub added: [(Ends, Label); 2],
}

impl PlacedTwoBreak {
    pub(crate) fn to_kbreak(&self) -> KBreak {
        KBreak::two([self.removed[0].0, self.removed[1].0], self.added)
    }
}

/// Splits an Eulerian edge set into closed alternating trails, one per
/// connected component, by greedy walking followed by splicing at shared
/// vertices.
pub(crate) fn closed_trails(black: &[Edge], gray: &[Edge]) -> Vec<Vec<Step>> {
    let mut incident: BTreeMap<(Vertex, EdgeColor), Vec<(Label, Vertex)>> = BTreeMap::new();
    for (color, edges) in [(EdgeColor::Black, black), (EdgeColor::Gray, gray)] {
        for e in edges {
            incident.entry((e.ends.0, color)).or_default().push((e.label, e.ends.1));
            if !e.is_loop() {
                incident.entry((e.ends.1, color)).or_default().push((e.label, e.ends.0));
            }
        }
    }
    for list in incident.values_mut() {
        list.sort_unstable();
        list.reverse();
    }
    let mut used = alloc::collections::BTreeSet::new();
    let take = |incident: &mut BTreeMap<(Vertex, EdgeColor), Vec<(Label, Vertex)>>,
                    used: &mut alloc::collections::BTreeSet<Label>,
                    at: Vertex,
                    color: EdgeColor|
     -> Option<(Label, Vertex)> {
        let list = incident.get_mut(&(at, color))?;
        while let Some((l, other)) = list.pop() {
            if used.insert(l) {
                return Some((l, other));
            }
        }
        None
    };

    let mut trails: Vec<Vec<Step>> = Vec::new();
    for e in black {
        if used.contains(&e.label) {
            continue;
        }
        used.insert(e.label);
        let start = e.ends.0;
        let mut trail = alloc::vec![Step { label: e.label, from: start, to: e.ends.1, color: EdgeColor::Black }];
        let mut cur = e.ends.1;
        let mut need = EdgeColor::Gray;
        loop {
            let (l, other) = take(&mut incident, &mut used, cur, need).expect("balanced degrees never strand a walk");
            trail.push(Step { label: l, from: cur, to: other, color: need });
            if need == EdgeColor::Gray && other == start {
                break;
            }
            cur = other;
            need = need.flip();
        }
        trails.push(trail);
    }

    // Splice trails that share a vertex until none do.
    'outer: loop {
        for i in 0..trails.len() {
            for j in i + 1..trails.len() {
                if let Some(v) = shared_vertex(&trails[i], &trails[j]) {
                    let b = trails.swap_remove(j);
                    let a = core::mem::take(&mut trails[i]);
                    trails[i] = splice(a, b, v);
                    continue 'outer;
                }
            }
        }
        break;
    }
    trails
}

fn shared_vertex(a: &[Step], b: &[Step]) -> Option<Vertex> {
    let mut va: Vec<Vertex> = a.iter().map(|s| s.from).collect();
    va.sort_unstable();
    b.iter().map(|s| s.from).filter(|v| va.binary_search(v).is_ok()).min()
}

fn reversed(t: &[Step]) -> Vec<Step> {
    t.iter().rev().map(|s| Step { label: s.label, from: s.to, to: s.from, color: s.color }).collect()
}

/// Rotates `t` (reversing it if needed) so it leaves `v` along a black edge.
fn rotate_to_black_exit(t: Vec<Step>, v: Vertex) -> Vec<Step> {
    let pick = |t: &[Step]| t.iter().position(|s| s.from == v && s.color == EdgeColor::Black);
    let t = if pick(&t).is_some() { t } else { reversed(&t) };
    let k = pick(&t).expect("vertex lies on the trail");
    let mut out = t[k..].to_vec();
    out.extend_from_slice(&t[..k]);
    out
}

fn splice(a: Vec<Step>, b: Vec<Step>, v: Vertex) -> Vec<Step> {
    let mut a = rotate_to_black_exit(a, v);
    a.extend(rotate_to_black_exit(b, v));
    a
}

/// Sorts one closed alternating trail with N black edges in N-1 moves.
///
/// The first black edge is kept as an anchor at the trail's start vertex;
/// each move detaches the next black edge so that it becomes parallel to
/// the gray edge preceding it.
pub(crate) fn sort_trail(trail: &[Step]) -> Vec<PlacedTwoBreak> {
    let k = if trail[0].color == EdgeColor::Black { 0 } else { 1 };
    let t: Vec<Step> = trail[k..].iter().chain(&trail[..k]).copied().collect();
    let x0 = t[0].from;
    let anchor = t[0].label;
    let mut far = t[0].to;
    let mut out = Vec::with_capacity(t.len() / 2);
    for b in t.iter().skip(2).step_by(2) {
        out.push(PlacedTwoBreak {
            removed: [(anchor, ends(x0, far)), (b.label, ends(b.from, b.to))],
            added: [(ends(far, b.from), b.label), (ends(x0, b.to), anchor)],
        });
        far = b.to;
    }
    out
}

/// A scenario of length e(G) - |D| realising the decomposition `d`.
pub fn parsimonious_scenario(g: &ColoredMultigraph, d: &CycleDecomposition) -> Result<Scenario> {
    d.check(g)?;
    let mut moves = Vec::new();
    for part in &d.parts {
        let sub = g.subgraph(part)?;
        let trails = closed_trails(sub.black(), sub.gray());
        if trails.len() != 1 {
            return Err(Error::InvalidDecomposition("part is not connected"));
        }
        moves.extend(sort_trail(&trails[0]).iter().map(PlacedTwoBreak::to_kbreak));
    }
    Ok(Scenario::new(moves))
}
