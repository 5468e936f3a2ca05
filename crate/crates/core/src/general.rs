//! Exact minimum-cost parsimonious scenarios for arbitrary graphs by
//! trying every maximum decomposition.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::colored::Coloring;
use crate::error::{Error, Result};
use crate::graph::{ColoredMultigraph, Label};
use crate::macd::{all_macds, CycleDecomposition};
use crate::scenario::Scenario;
use crate::simple_cycle::{mcps_simple_cycle, mcps_simple_cycle_cost};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphMcps {
    pub cost: u64,
    pub scenario: Scenario,
    pub decomposition: CycleDecomposition,
}

/// Minimum cost over all maximum decompositions of the sum of the parts'
/// simple-cycle costs. Ties go to the lexicographically smallest
/// decomposition.
pub fn mcps_graph_exact(g: &ColoredMultigraph, col: &Coloring, cap: usize) -> Result<GraphMcps> {
    col.check(g)?;
    let (c, all) = all_macds(g, cap)?;
    let mut part_cost: BTreeMap<Vec<Label>, u64> = BTreeMap::new();
    let mut best: Option<(u64, usize)> = None;
    for (i, d) in all.iter().enumerate() {
        let mut total = 0;
        for part in &d.parts {
            let cost = match part_cost.get(part) {
                Some(&c) => c,
                None => {
                    let c = mcps_simple_cycle_cost(&g.subgraph(part)?, col)?;
                    part_cost.insert(part.clone(), c);
                    c
                }
            };
            total += cost;
        }
        if best.is_none_or(|(b, _)| total < b) {
            best = Some((total, i));
        }
    }
    let Some((cost, i)) = best else {
        return Ok(GraphMcps { cost: 0, scenario: Scenario::default(), decomposition: CycleDecomposition::new(Vec::new()) });
    };
    let decomposition = all[i].clone();
    let mut scenario = Scenario::default();
    for part in &decomposition.parts {
        scenario.extend(mcps_simple_cycle(&g.subgraph(part)?, col)?.1);
    }
    if scenario.len() != g.e() - c {
        return Err(Error::Internal("decomposition scenario is not parsimonious"));
    }
    Ok(GraphMcps { cost, scenario, decomposition })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colored::{scenario_cost, Color};
    use crate::graph::Vertex;
    use crate::scenario::validate_scenario;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    #[test]
    fn figure_eight_prefers_two_squares() {
        let g = ColoredMultigraph::new(
            7,
            &[(v(0), v(1)), (v(2), v(3)), (v(0), v(4)), (v(5), v(6))],
            &[(v(1), v(2)), (v(3), v(0)), (v(4), v(5)), (v(6), v(0))],
        )
        .unwrap();
        let col = Coloring::distinct(7);
        let r = mcps_graph_exact(&g, &col, 16).unwrap();
        assert_eq!(r.decomposition.len(), 2);
        assert_eq!(r.scenario.len(), 2);
        assert_eq!(r.cost, 2);
        assert!(validate_scenario(&g, &r.scenario).unwrap().final_terminal);
        assert_eq!(scenario_cost(&g, &r.scenario, &col).unwrap(), 2);
    }

    #[test]
    fn terminal_graph_costs_nothing() {
        let g = ColoredMultigraph::new(2, &[(v(0), v(1))], &[(v(0), v(1))]).unwrap();
        let r = mcps_graph_exact(&g, &Coloring::uniform(2, Color(0)), 16).unwrap();
        assert_eq!((r.cost, r.scenario.len()), (0, 0));
    }
}
