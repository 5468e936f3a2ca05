//! Minimum-length and minimum-cost rearrangement scenarios on Eulerian
//! 2-edge-colored multigraphs, with the breakpoint-graph view of genomes
//! under double cut and join.
//!
//! Everything here is deterministic and allocation-only (`no_std` + `alloc`).
//! File formats, generators and the command-line tool live in the
//! companion `twobreak` crate.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod circle;
pub mod colored;
pub mod error;
pub mod general;
pub mod genome;
pub mod genome_mcps;
pub mod graph;
pub mod hardness;
pub mod macd;
pub mod oracle;
pub mod scenario;
pub mod simple_cycle;

mod assignment;
mod union_find;

pub use circle::{mcps_circle, mcps_circle_cost, misa_path, split_at_vertex, AlternatingPath, Arc, Circle};
pub use colored::{merged_graph, min_cost_scenario, scenario_cost, two_break_cost, zero_cost_sort, Color, Coloring, MergedGraph};
pub use error::{Error, Result};
pub use general::mcps_graph_exact;
pub use genome::{Adjacency, BreakpointGraph, Chromosome, ChromosomeKind, DcjMove, End, Extremity, GeneId, Genome};
pub use genome_mcps::{decompose_breakpoint, mcps_genomes, min_cost_perfect_matching, pair_weight, PathPool};

pub use graph::{ends, ColoredMultigraph, Edge, EdgeColor, Ends, Label, Vertex};
pub use macd::{all_macds, macd_exact, CycleDecomposition};
pub use scenario::{parsimonious_scenario, scenario_cycle_decomposition, validate_scenario, KBreak, Scenario};
pub use simple_cycle::{eulerian_circles, mcps_simple_cycle};
