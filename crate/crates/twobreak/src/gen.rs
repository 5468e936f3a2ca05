//! Seeded random instance generators for tests, benchmarks and `gen`.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use twobreak_core::colored::{Color, Coloring};
use twobreak_core::genome::{ChromosomeKind, ExtremityColoring};
use twobreak_core::macd::cycle_count;
use twobreak_core::simple_cycle::degree_two_count;
use twobreak_core::{AlternatingPath, Chromosome, ColoredMultigraph, EdgeColor, GeneId, Genome, Vertex};

/// Black edges between random vertices; gray edges re-pair the same
/// endpoint occurrences, so every vertex is balanced.
pub fn eulerian_graph(rng: &mut impl Rng, e: usize, vertices: u32) -> ColoredMultigraph {
    let black: Vec<(Vertex, Vertex)> =
        (0..e).map(|_| (Vertex(rng.random_range(0..vertices)), Vertex(rng.random_range(0..vertices)))).collect();
    let mut slots: Vec<Vertex> = black.iter().flat_map(|&(a, b)| [a, b]).collect();
    slots.shuffle(rng);
    let gray: Vec<(Vertex, Vertex)> = slots.chunks(2).map(|p| (p[0], p[1])).collect();
    ColoredMultigraph::new(vertices, &black, &gray).expect("balanced by construction")
}

pub fn coloring(rng: &mut impl Rng, vertices: u32, colors: u32) -> Coloring {
    Coloring::new((0..vertices).map(|_| Color(rng.random_range(0..colors.max(1)))).collect())
}

/// A colored graph whose merged graph is terminal: gray edges re-pair black
/// endpoint occurrences only within each color class.
pub fn merged_terminal(rng: &mut impl Rng, e: usize, vertices: u32, colors: u32) -> (ColoredMultigraph, Coloring) {
    let col = coloring(rng, vertices, colors);
    let black: Vec<(Vertex, Vertex)> =
        (0..e).map(|_| (Vertex(rng.random_range(0..vertices)), Vertex(rng.random_range(0..vertices)))).collect();
    let mut slots: Vec<Vertex> = black.iter().flat_map(|&(a, b)| [a, b]).collect();
    for c in 0..colors.max(1) {
        let positions: Vec<usize> = (0..slots.len()).filter(|&i| col.of(slots[i]) == Color(c)).collect();
        let mut vs: Vec<Vertex> = positions.iter().map(|&i| slots[i]).collect();
        vs.shuffle(rng);
        for (&i, v) in positions.iter().zip(vs) {
            slots[i] = v;
        }
    }
    let gray: Vec<(Vertex, Vertex)> = slots.chunks(2).map(|p| (p[0], p[1])).collect();
    let g = ColoredMultigraph::new(vertices, &black, &gray).expect("balanced by construction");
    (g, col)
}

/// The circle v0 v1 .. v(2e-1) with black edges (v2i, v2i+1).
pub fn circle(e: usize) -> ColoredMultigraph {
    let n = 2 * e as u32;
    let black: Vec<(Vertex, Vertex)> = (0..e as u32).map(|i| (Vertex(2 * i), Vertex(2 * i + 1))).collect();
    let gray: Vec<(Vertex, Vertex)> = (0..e as u32).map(|i| (Vertex(2 * i + 1), Vertex((2 * i + 2) % n))).collect();
    ColoredMultigraph::new(n, &black, &gray).expect("a circle is balanced")
}

pub fn colored_circle(rng: &mut impl Rng, e: usize, colors: u32) -> (ColoredMultigraph, Coloring) {
    let g = circle(e);
    let col = coloring(rng, g.vertex_count(), colors);
    (g, col)
}

pub fn alternating_path(rng: &mut impl Rng, edges: usize, colors: u32) -> AlternatingPath {
    let first = if rng.random_bool(0.5) { EdgeColor::Black } else { EdgeColor::Gray };
    let cs = (0..=edges).map(|_| Color(rng.random_range(0..colors.max(1)))).collect();
    AlternatingPath::from_colors(cs, first)
}

/// A simple cycle (c = 1) with `pinches` vertices of degree 2, made by
/// identifying vertex pairs of a circle. Gives up after many attempts.
pub fn simple_cycle(rng: &mut impl Rng, e: usize, pinches: usize) -> Option<ColoredMultigraph> {
    let base = circle(e);
    let n = base.vertex_count();
    for _ in 0..1000 {
        let mut map: Vec<u32> = (0..n).collect();
        let mut order: Vec<u32> = (0..n).collect();
        order.shuffle(rng);
        for k in 0..pinches {
            let (a, b) = (order[2 * k], order[2 * k + 1]);
            map[b as usize] = a;
        }
        let used: BTreeSet<u32> = map.iter().copied().collect();
        let dense: Vec<u32> = map.iter().map(|v| used.range(..v).count() as u32).collect();
        let f = |v: Vertex| Vertex(dense[v.0 as usize]);
        let black: Vec<_> = base.black().iter().map(|x| (f(x.ends.0), f(x.ends.1))).collect();
        let gray: Vec<_> = base.gray().iter().map(|x| (f(x.ends.0), f(x.ends.1))).collect();
        let g = ColoredMultigraph::new(used.len() as u32, &black, &gray).ok()?;
        if degree_two_count(&g).ok() == Some(pinches) && cycle_count(&g, 16).ok() == Some(1) {
            return Some(g);
        }
    }
    None
}

/// Genes 1..=n shuffled, randomly signed, cut into up to `max_chromosomes`
/// chromosomes that are each linear or circular.
pub fn genome(rng: &mut impl Rng, n: u32, max_chromosomes: u32) -> Genome {
    let mut genes: Vec<(GeneId, bool)> = (1..=n).map(|g| (GeneId(g), rng.random_bool(0.5))).collect();
    genes.shuffle(rng);
    let parts = rng.random_range(1..=max_chromosomes.clamp(1, n.max(1))) as usize;
    let mut cuts: Vec<usize> = (1..genes.len()).collect();
    cuts.shuffle(rng);
    let mut cuts: Vec<usize> = cuts.into_iter().take(parts - 1).collect();
    cuts.sort_unstable();
    let mut chromosomes = Vec::new();
    let mut start = 0;
    for end in cuts.into_iter().chain([genes.len()]) {
        let kind = if rng.random_bool(0.3) { ChromosomeKind::Circular } else { ChromosomeKind::Linear };
        chromosomes.push(Chromosome { kind, genes: genes[start..end].to_vec() });
        start = end;
    }
    Genome::from_chromosomes(&chromosomes, &BTreeSet::new()).expect("every gene placed once")
}

pub fn extremity_coloring(rng: &mut impl Rng, g: &Genome, colors: u32) -> ExtremityColoring {
    g.extremities().into_iter().map(|x| (x, Color(rng.random_range(0..colors.max(1))))).collect()
}

/// One linear chromosome 1..n against n circular singletons: a single
/// long AA path that is weighed against every BB telomere loop.
pub fn chain_pair(n: u32) -> (Genome, Genome) {
    let none = BTreeSet::new();
    let a = Genome::from_chromosomes(
        &[Chromosome { kind: ChromosomeKind::Linear, genes: (1..=n).map(|g| (GeneId(g), false)).collect() }],
        &none,
    )
    .expect("valid chain");
    let singles: Vec<Chromosome> =
        (1..=n).map(|g| Chromosome { kind: ChromosomeKind::Circular, genes: vec![(GeneId(g), false)] }).collect();
    let b = Genome::from_chromosomes(&singles, &none).expect("valid singletons");
    (a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use twobreak_core::merged_graph;

    #[test]
    fn generators_are_valid_and_seeded() {
        let mut r1 = ChaCha8Rng::seed_from_u64(7);
        let mut r2 = ChaCha8Rng::seed_from_u64(7);
        assert_eq!(eulerian_graph(&mut r1, 5, 4), eulerian_graph(&mut r2, 5, 4));
        for _ in 0..50 {
            let (g, col) = merged_terminal(&mut r1, 6, 6, 3);
            assert!(merged_graph(&g, &col).unwrap().graph.is_terminal());
            let a = genome(&mut r1, 7, 3);
            assert_eq!(a.gene_count(), 7);
        }
    }

    #[test]
    fn pinched_cycles() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for d in [1, 2] {
            let s = simple_cycle(&mut rng, 5, d).unwrap();
            assert_eq!(degree_two_count(&s).unwrap(), d);
        }
    }
}
