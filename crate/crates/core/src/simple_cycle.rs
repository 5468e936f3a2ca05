//! Minimum-cost parsimonious scenarios of simple cycles, by splitting every
//! degree-2 vertex in all ways that turn the cycle into a circle.

use alloc::vec;
use alloc::vec::Vec;

use crate::circle::{mcps_circle, mcps_circle_cost, Circle};
use crate::colored::Coloring;
use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, Edge, Vertex};
use crate::scenario::Scenario;

/// A circle obtained by splitting vertices of a simple cycle; vertex `i`
/// of `graph` stands for `origin[i]` in the original.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleLift {
    pub graph: ColoredMultigraph,
    pub circle: Circle,
    pub origin: Vec<Vertex>,
}

/// Number of vertices with black degree 2, d(S).
pub fn degree_two_count(s: &ColoredMultigraph) -> Result<usize> {
    let (db, dg) = s.degrees();
    let mut count = 0;
    for (v, (&b, &g)) in db.iter().zip(&dg).enumerate() {
        if b != g {
            return Err(Error::NotEulerian { vertex: v as u32, black: b, gray: g });
        }
        match b {
            0 | 1 => {}
            2 => count += 1,
            _ => return Err(Error::NotSimpleCycle("a vertex has degree above 2")),
        }
    }
    Ok(count)
}

fn incident(edges: &[Edge], v: Vertex) -> Vec<usize> {
    (0..edges.len()).filter(|&i| edges[i].touches(v)).collect()
}

/// Every circle reachable by splitting the degree-2 vertices of `s`.
pub fn eulerian_circles(s: &ColoredMultigraph) -> Result<Vec<CircleLift>> {
    degree_two_count(s)?;
    let origin: Vec<Vertex> = (0..s.vertex_count()).map(Vertex).collect();
    let mut work = vec![(s.clone(), origin)];
    let mut out = Vec::new();
    while let Some((g, origin)) = work.pop() {
        let (db, _) = g.degrees();
        let Some(v) = db.iter().position(|&d| d == 2).map(|v| Vertex(v as u32)) else {
            let circle = Circle::from_graph(&g).map_err(|_| Error::NotSimpleCycle("a split is disconnected"))?;
            out.push(CircleLift { graph: g, circle, origin });
            continue;
        };
        let fresh = Vertex(g.vertex_count());
        let mut origin2 = origin.clone();
        origin2.push(origin[v.0 as usize]);

        let mut black = g.black().to_vec();
        let bi = incident(&black, v);
        if bi.len() == 1 {
            black[bi[0]] = Edge::new(black[bi[0]].label, v, fresh);
        } else {
            let far = black[bi[1]].other(v);
            black[bi[1]] = Edge::new(black[bi[1]].label, fresh, far);
        }

        let gray = g.gray();
        let gi = incident(gray, v);
        let options: Vec<Vec<Edge>> = if gi.len() == 1 {
            let mut g1 = gray.to_vec();
            g1[gi[0]] = Edge::new(g1[gi[0]].label, v, fresh);
            vec![g1]
        } else {
            let (z1, z2) = (gray[gi[0]].other(v), gray[gi[1]].other(v));
            let mut keep = gray.to_vec();
            keep[gi[1]] = Edge::new(keep[gi[1]].label, z2, fresh);
            let mut swap = gray.to_vec();
            swap[gi[0]] = Edge::new(swap[gi[0]].label, z1, fresh);
            vec![keep, swap]
        };
        for gray in options.into_iter().rev() {
            let lifted = ColoredMultigraph::with_labels(fresh.0 + 1, black.clone(), gray)?;
            work.push((lifted, origin2.clone()));
        }
    }
    Ok(out)
}

/// MCPS cost of a simple cycle: the cheapest of its circle lifts.
pub fn mcps_simple_cycle_cost(s: &ColoredMultigraph, col: &Coloring) -> Result<u64> {
    col.check(s)?;
    let lifts = eulerian_circles(s)?;
    Ok(lifts.iter().map(|l| mcps_circle_cost(&l.circle, &col.pull_back(&l.origin))).min().unwrap_or(0))
}

/// MCPS of a simple cycle, translated back from its cheapest circle lift.
pub fn mcps_simple_cycle(s: &ColoredMultigraph, col: &Coloring) -> Result<(u64, Scenario)> {
    col.check(s)?;
    let lifts = eulerian_circles(s)?;
    let mut best: Option<(u64, usize)> = None;
    for (i, l) in lifts.iter().enumerate() {
        let c = mcps_circle_cost(&l.circle, &col.pull_back(&l.origin));
        if best.is_none_or(|(b, _)| c < b) {
            best = Some((c, i));
        }
    }
    let (_, i) = best.ok_or(Error::NotSimpleCycle("no edges"))?;
    let l = &lifts[i];
    let (cost, scenario) = mcps_circle(&l.circle, &col.pull_back(&l.origin))?;
    let moves = scenario.moves.iter().map(|m| m.map_vertices(|x| l.origin[x.0 as usize])).collect();
    Ok((cost, Scenario::new(moves)))
}
