//! Eulerian 2-edge-colored multigraphs and k-break application.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex(pub u32);

/// Stable edge identifier. Black edges of a freshly built graph are
/// labelled `1..=e`, gray edges `e+1..=2e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Label(pub u32);

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unordered endpoint pair, stored with the smaller vertex first.
pub type Ends = (Vertex, Vertex);

pub fn ends(a: Vertex, b: Vertex) -> Ends {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeColor {
    Black,
    Gray,
}

impl EdgeColor {
    pub fn flip(self) -> EdgeColor {
        match self {
            EdgeColor::Black => EdgeColor::Gray,
            EdgeColor::Gray => EdgeColor::Black,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    pub label: Label,
    pub ends: Ends,
}

impl Edge {
    pub fn new(label: Label, a: Vertex, b: Vertex) -> Self {
        Edge { label, ends: ends(a, b) }
    }

    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }

    pub fn touches(&self, v: Vertex) -> bool {
        self.ends.0 == v || self.ends.1 == v
    }

    /// The endpoint opposite `v` (or `v` itself for a loop).
    pub fn other(&self, v: Vertex) -> Vertex {
        if self.ends.0 == v {
            self.ends.1
        } else {
            self.ends.0
        }
    }
}

/// A multigraph whose black and gray degrees agree at every vertex.
///
/// Vertices are `0..vertex_count`; isolated vertices are allowed so that
/// subgraphs and replayed states share the parent's vertex space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ColoredMultigraph {
    vertex_count: u32,
    black: Vec<Edge>,
    gray: Vec<Edge>,
}

impl ColoredMultigraph {
    /// Builds a graph with default labels (black `1..=e`, gray `e+1..=2e`).
    pub fn new(vertex_count: u32, black: &[(Vertex, Vertex)], gray: &[(Vertex, Vertex)]) -> Result<Self> {
        let e = black.len() as u32;
        let b = black.iter().enumerate().map(|(i, &(u, v))| Edge::new(Label(i as u32 + 1), u, v)).collect();
        let g = gray.iter().enumerate().map(|(i, &(u, v))| Edge::new(Label(e + i as u32 + 1), u, v)).collect();
        Self::with_labels(vertex_count, b, g)
    }

    /// Builds a graph from explicitly labelled edges.
    pub fn with_labels(vertex_count: u32, mut black: Vec<Edge>, mut gray: Vec<Edge>) -> Result<Self> {
        if black.len() != gray.len() {
            return Err(Error::EdgeCountMismatch { black: black.len(), gray: gray.len() });
        }
        let mut seen = BTreeSet::new();
        for edge in black.iter_mut().chain(gray.iter_mut()) {
            edge.ends = ends(edge.ends.0, edge.ends.1);
            if edge.ends.1 .0 >= vertex_count {
                return Err(Error::UnknownVertex(edge.ends.1 .0));
            }
            if !seen.insert(edge.label) {
                return Err(Error::DuplicateLabel(edge.label.0));
            }
        }
        black.sort_unstable_by_key(|e| e.label);
        gray.sort_unstable_by_key(|e| e.label);
        let graph = ColoredMultigraph { vertex_count, black, gray };
        graph.check_eulerian()?;
        Ok(graph)
    }

    fn check_eulerian(&self) -> Result<()> {
        let (db, dg) = self.degrees();
        for v in 0..self.vertex_count as usize {
            if db[v] != dg[v] {
                return Err(Error::NotEulerian { vertex: v as u32, black: db[v], gray: dg[v] });
            }
        }
        Ok(())
    }

    /// Black and gray degree of every vertex; loops count twice.
    pub fn degrees(&self) -> (Vec<usize>, Vec<usize>) {
        let n = self.vertex_count as usize;
        let mut db = alloc::vec![0usize; n];
        let mut dg = alloc::vec![0usize; n];
        for e in &self.black {
            db[e.ends.0 .0 as usize] += 1;
            db[e.ends.1 .0 as usize] += 1;
        }
        for e in &self.gray {
            dg[e.ends.0 .0 as usize] += 1;
            dg[e.ends.1 .0 as usize] += 1;
        }
        (db, dg)
    }

    pub fn vertex_count(&self) -> u32 {
        self.vertex_count
    }

    /// Number of black edges, e(G).
    pub fn e(&self) -> usize {
        self.black.len()
    }

    pub fn black(&self) -> &[Edge] {
        &self.black
    }

    pub fn gray(&self) -> &[Edge] {
        &self.gray
    }

    pub fn edges(&self, color: EdgeColor) -> &[Edge] {
        match color {
            EdgeColor::Black => &self.black,
            EdgeColor::Gray => &self.gray,
        }
    }

    pub fn black_edge(&self, label: Label) -> Option<&Edge> {
        self.black.binary_search_by_key(&label, |e| e.label).ok().map(|i| &self.black[i])
    }

    pub fn edge(&self, label: Label) -> Option<(EdgeColor, Edge)> {
        if let Some(e) = self.black_edge(label) {
            return Some((EdgeColor::Black, *e));
        }
        self.gray.binary_search_by_key(&label, |e| e.label).ok().map(|i| (EdgeColor::Gray, self.gray[i]))
    }

    pub fn labels(&self) -> impl Iterator<Item = Label> + '_ {
        self.black.iter().chain(self.gray.iter()).map(|e| e.label)
    }

    /// Black degree minus gray degree at `v`; zero for every vertex of a valid graph.
    pub fn degree_balance(&self, v: Vertex) -> Result<i64> {
        if v.0 >= self.vertex_count {
            return Err(Error::UnknownVertex(v.0));
        }
        let count = |edges: &[Edge]| -> i64 {
            edges.iter().map(|e| (e.ends.0 == v) as i64 + (e.ends.1 == v) as i64).sum()
        };
        Ok(count(&self.black) - count(&self.gray))
    }

    pub fn black_key(&self) -> Vec<Ends> {
        let mut k: Vec<Ends> = self.black.iter().map(|e| e.ends).collect();
        k.sort_unstable();
        k
    }

    pub fn gray_key(&self) -> Vec<Ends> {
        let mut k: Vec<Ends> = self.gray.iter().map(|e| e.ends).collect();
        k.sort_unstable();
        k
    }

    /// True when the black and gray endpoint multisets coincide.
    pub fn is_terminal(&self) -> bool {
        self.black_key() == self.gray_key()
    }

    /// Replaces the black edges `removed` by `added`; the i-th added edge
    /// inherits the i-th removed label.
    pub fn apply_k_break(&self, removed: &[Label], added: &[(Vertex, Vertex)]) -> Result<Self> {
        if removed.len() != added.len() {
            return Err(Error::BadArity);
        }
        let labelled: Vec<(Ends, Label)> =
            added.iter().zip(removed).map(|(&(a, b), &l)| (ends(a, b), l)).collect();
        self.apply_labelled(removed, &labelled)
    }

    /// Replaces the black edges `removed` by explicitly labelled `added` edges.
    pub fn apply_labelled(&self, removed: &[Label], added: &[(Ends, Label)]) -> Result<Self> {
        if removed.len() < 2 || removed.len() != added.len() {
            return Err(Error::BadArity);
        }
        let mut out_ends: Vec<Vertex> = Vec::with_capacity(2 * removed.len());
        let mut positions = Vec::with_capacity(removed.len());
        for (i, &l) in removed.iter().enumerate() {
            if removed[..i].contains(&l) {
                return Err(Error::BadArity);
            }
            let pos = self.black.binary_search_by_key(&l, |e| e.label).map_err(|_| Error::UnknownLabel(l.0))?;
            out_ends.push(self.black[pos].ends.0);
            out_ends.push(self.black[pos].ends.1);
            positions.push(pos);
        }
        let mut in_ends: Vec<Vertex> = added.iter().flat_map(|&((a, b), _)| [a, b]).collect();
        out_ends.sort_unstable();
        in_ends.sort_unstable();
        if out_ends != in_ends {
            return Err(Error::EndpointMismatch);
        }
        let mut want: Vec<Label> = removed.to_vec();
        let mut got: Vec<Label> = added.iter().map(|&(_, l)| l).collect();
        want.sort_unstable();
        got.sort_unstable();
        if want != got {
            return Err(Error::LabelPermutation);
        }
        let mut next = self.clone();
        // Each label keeps its slot, so the black list stays sorted by label.
        for (&pos, &l) in positions.iter().zip(removed) {
            let &((a, b), _) = added.iter().find(|&&(_, al)| al == l).expect("labels checked");
            next.black[pos] = Edge::new(l, a, b);
        }
        Ok(next)
    }

    /// The subgraph on the given edge labels, in the same vertex space.
    pub fn subgraph(&self, labels: &[Label]) -> Result<Self> {
        let wanted: BTreeSet<Label> = labels.iter().copied().collect();
        let black: Vec<Edge> = self.black.iter().filter(|e| wanted.contains(&e.label)).copied().collect();
        let gray: Vec<Edge> = self.gray.iter().filter(|e| wanted.contains(&e.label)).copied().collect();
        if black.len() + gray.len() != wanted.len() {
            let missing = wanted.iter().find(|l| self.edge(**l).is_none()).map(|l| l.0).unwrap_or(0);
            return Err(Error::UnknownLabel(missing));
        }
        Self::with_labels(self.vertex_count, black, gray)
    }

    /// Vertices incident to at least one edge.
    pub fn active_vertices(&self) -> Vec<Vertex> {
        let mut vs: Vec<Vertex> = self.black.iter().flat_map(|e| [e.ends.0, e.ends.1]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    /// Number of connected components among non-isolated vertices.
    pub fn component_count(&self) -> usize {
        let mut uf = crate::union_find::UnionFind::new(self.vertex_count as usize);
        for e in self.black.iter().chain(&self.gray) {
            uf.union(e.ends.0 .0 as usize, e.ends.1 .0 as usize);
        }
        let mut roots: Vec<usize> = self.active_vertices().iter().map(|v| uf.find(v.0 as usize)).collect();
        roots.sort_unstable();
        roots.dedup();
        roots.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(i: u32) -> Vertex {
        Vertex(i)
    }

    fn square() -> ColoredMultigraph {
        // black (0,1),(2,3); gray (1,2),(3,0)
        ColoredMultigraph::new(4, &[(v(0), v(1)), (v(2), v(3))], &[(v(1), v(2)), (v(3), v(0))]).unwrap()
    }

    #[test]
    fn default_labels() {
        let g = square();
        assert_eq!(g.black()[0].label, Label(1));
        assert_eq!(g.gray()[1].label, Label(4));
        assert_eq!(g.e(), 2);
    }

    #[test]
    fn unbalanced_vertex_rejected() {
        let err = ColoredMultigraph::new(3, &[(v(0), v(1))], &[(v(1), v(2))]).unwrap_err();
        assert!(matches!(err, Error::NotEulerian { .. }));
    }

    #[test]
    fn loops_count_twice() {
        let g = ColoredMultigraph::new(2, &[(v(0), v(0))], &[(v(0), v(0))]).unwrap();
        assert_eq!(g.degrees().0[0], 2);
        assert!(g.is_terminal());
    }

    #[test]
    fn two_break_sorts_square() {
        let g = square();
        let h = g.apply_k_break(&[Label(1), Label(2)], &[(v(1), v(2)), (v(3), v(0))]).unwrap();
        assert!(h.is_terminal());
        assert_eq!(h.black_edge(Label(2)).unwrap().ends, (v(0), v(3)));
    }

    #[test]
    fn endpoint_mismatch_rejected() {
        let g = square();
        let err = g.apply_k_break(&[Label(1), Label(2)], &[(v(0), v(0)), (v(2), v(3))]).unwrap_err();
        assert_eq!(err, Error::EndpointMismatch);
    }

    #[test]
    fn unknown_or_gray_label_rejected() {
        let g = square();
        assert_eq!(g.apply_k_break(&[Label(1), Label(3)], &[(v(0), v(1)), (v(1), v(2))]).unwrap_err(), Error::UnknownLabel(3));
        assert_eq!(g.apply_k_break(&[Label(1)], &[(v(0), v(1))]).unwrap_err(), Error::BadArity);
    }

    #[test]
    fn subgraph_keeps_vertex_space() {
        let g = ColoredMultigraph::new(2, &[(v(0), v(1)), (v(0), v(0))], &[(v(0), v(1)), (v(0), v(0))]).unwrap();
        let s = g.subgraph(&[Label(2), Label(4)]).unwrap();
        assert_eq!(s.vertex_count(), 2);
        assert_eq!(s.e(), 1);
        assert!(g.subgraph(&[Label(1)]).is_err());
    }
}
