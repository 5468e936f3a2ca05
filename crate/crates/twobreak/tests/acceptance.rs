//! Acceptance criteria 1-10: one PASS/FAIL line each; exits non-zero if
//! any criterion fails.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twobreak::gen;
use twobreak_core::circle::{is_noncrossing, mcps_circle};
use twobreak_core::colored::project_scenario_to_merged;
use twobreak_core::genome::{apply_dcj, dcj_cost, ExtremityColoring};
use twobreak_core::hardness::{connected_eulerian_graphs, max_cycle_decomposition, reduce_macd_to_circle};
use twobreak_core::oracle::{
    brute_macd, brute_mcps, brute_min_cost, brute_min_length, brute_misa_circle, brute_misa_path,
    enumerate_parsimonious_scenarios,
};
use twobreak_core::{
    macd_exact, mcps_genomes, mcps_graph_exact, merged_graph, min_cost_scenario, misa_path, parsimonious_scenario,
    scenario_cost, validate_scenario, zero_cost_sort, Adjacency, BreakpointGraph, Chromosome, ChromosomeKind, Circle,
    Color, ColoredMultigraph, Coloring, DcjMove, Extremity, GeneId, Genome,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Debug>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e:?}"))
}

/// Genomes and coloring of the worked example.
fn worked_example() -> (Genome, Genome, ExtremityColoring) {
    let lin = |genes: &[i32]| Chromosome {
        kind: ChromosomeKind::Linear,
        genes: genes.iter().map(|&g| (GeneId(g.unsigned_abs()), g < 0)).collect(),
    };
    let a = Genome::from_chromosomes(&[lin(&[1, 2, -3])], &BTreeSet::new()).unwrap();
    let b = Genome::from_chromosomes(&[lin(&[1, -2, -3])], &BTreeSet::new()).unwrap();
    let (x, y, z) = (Color(0), Color(1), Color(2));
    let col = [
        (Extremity::tail(1), x),
        (Extremity::head(1), x),
        (Extremity::tail(2), x),
        (Extremity::head(2), y),
        (Extremity::head(3), z),
        (Extremity::tail(3), z),
    ]
    .into_iter()
    .collect();
    (a, b, col)
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let (a, b, col) = worked_example();
    let want_a = [
        Adjacency::internal(Extremity::head(1), Extremity::tail(2)),
        Adjacency::internal(Extremity::head(2), Extremity::head(3)),
        Adjacency::External(Extremity::tail(1)),
        Adjacency::External(Extremity::tail(3)),
    ];
    let mut sorted = want_a.to_vec();
    sorted.sort();
    ensure!(a.adjacencies() == sorted, "genome A adjacencies {:?}", a.adjacencies());
    let bg = ok(BreakpointGraph::new(&a, &b), "breakpoint graph")?;
    let vcol = ok(bg.coloring(&col), "coloring")?;
    let j = ok(merged_graph(&bg.graph, &vcol), "merged graph")?;
    let (cj, _) = ok(macd_exact(&j.graph, 16), "c(J)")?;
    ensure!(j.graph.e() == 6 && cj == 5, "e(J)={} c(J)={cj}", j.graph.e());
    let len = ok(brute_min_length(&bg.graph, 6), "min length")?;
    let (c, _) = ok(macd_exact(&bg.graph, 16), "c(G)")?;
    ensure!(len == 1 && bg.graph.e() - c == 1, "min length {len}, e-c {}", bg.graph.e() - c);
    let (cost, _) = ok(min_cost_scenario(&bg.graph, &vcol, 16), "min cost")?;
    let brute_cost = ok(brute_min_cost(&bg.graph, &vcol, 6), "brute min cost")?;
    ensure!(cost == 1 && brute_cost == 1, "min cost {cost} (search {brute_cost})");
    let r = ok(mcps_genomes(&a, &b, &col), "mcps_genomes")?;
    ensure!(r.cost == 1 && r.length == 1, "MCPS cost {} length {}", r.cost, r.length);
    let expected = ok(
        DcjMove::new(
            vec![want_a[0], want_a[1]],
            vec![
                Adjacency::internal(Extremity::head(1), Extremity::head(2)),
                Adjacency::internal(Extremity::tail(2), Extremity::head(3)),
            ],
        ),
        "expected move",
    )?;
    let norm = |m: &DcjMove| {
        let (mut c, mut j) = (m.cut.clone(), m.join.clone());
        c.sort();
        j.sort();
        (c, j)
    };
    ensure!(r.dcj.len() == 1 && norm(&r.dcj[0]) == norm(&expected), "emitted DCJ {:?}", r.dcj);
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(format!("e(J)=6 c(J)=5 length=1 min cost=1 MCPS=1, DCJ matches, {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let n = 250;
    for i in 0..n {
        let e = rng.random_range(1..=5);
        let v = rng.random_range(1..=6);
        let g = gen::eulerian_graph(&mut rng, e, v);
        let len = ok(brute_min_length(&g, 5), "brute_min_length")?;
        let c = ok(brute_macd(&g, 10), "brute_macd")?;
        ensure!(len == g.e() - c, "instance {i}: length {len} but e-c = {}", g.e() - c);
        let (_, d) = ok(macd_exact(&g, 16), "macd_exact")?;
        let s = ok(parsimonious_scenario(&g, &d), "parsimonious_scenario")?;
        let rep = ok(validate_scenario(&g, &s), "validate")?;
        ensure!(rep.final_terminal && rep.length == len, "instance {i}: scenario length {} terminal {}", rep.length, rep.final_terminal);
    }
    Ok(format!("{n} graphs, e <= 5"))
}

fn criterion_3() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let n = 250;
    for i in 0..n {
        let e = rng.random_range(1..=5);
        let v = rng.random_range(1..=7);
        let g = gen::eulerian_graph(&mut rng, e, v);
        let col = { let k = rng.random_range(1..=4); gen::coloring(&mut rng, v, k) };
        let brute = ok(brute_min_cost(&g, &col, 5), "brute_min_cost")?;
        let j = ok(merged_graph(&g, &col), "merged_graph")?;
        let cj = ok(brute_macd(&j.graph, 10), "brute_macd(J)")?;
        ensure!(brute == (j.graph.e() - cj) as u64, "instance {i}: min cost {brute} but e(J)-c(J) = {}", j.graph.e() - cj);
        let (cost, s) = ok(min_cost_scenario(&g, &col, 16), "min_cost_scenario")?;
        let replayed = ok(scenario_cost(&g, &s, &col), "scenario_cost")?;
        let done = ok(validate_scenario(&g, &s), "validate")?.final_terminal;
        ensure!(cost == brute && replayed == brute && done, "instance {i}: constructed cost {cost}/{replayed}, oracle {brute}");
    }
    Ok(format!("{n} colored graphs, e <= 5"))
}

/// Relabels colors in order of first appearance.
fn normalize(seq: &[u32]) -> Vec<u32> {
    let mut map = Vec::new();
    seq.iter()
        .map(|c| match map.iter().position(|x| x == c) {
            Some(p) => p as u32,
            None => {
                map.push(*c);
                map.len() as u32 - 1
            }
        })
        .collect()
}

/// Colorings of the e-edge circle with at most 3 colors, one per class
/// under rotation, reflection and color renaming.
fn circle_classes(e: usize) -> Vec<Vec<u32>> {
    let n = 2 * e;
    let mut out = Vec::new();
    let mut seq = vec![0u32; n];
    loop {
        let canon = normalize(&seq);
        if canon == seq {
            let mut best = canon.clone();
            for r in (0..n).step_by(2) {
                let rot: Vec<u32> = (0..n).map(|k| seq[(r + k) % n]).collect();
                let refl: Vec<u32> = (0..n).map(|k| rot[n - 1 - k]).collect();
                best = best.min(normalize(&rot)).min(normalize(&refl));
            }
            if best == seq {
                out.push(seq.clone());
            }
        }
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            if seq[k] < 2 {
                seq[k] += 1;
                break;
            }
            seq[k] = 0;
        }
    }
}

fn as_coloring(seq: &[u32]) -> Coloring {
    Coloring::new(seq.iter().map(|&c| Color(c)).collect())
}

fn check_circle(g: &ColoredMultigraph, col: &Coloring) -> Result<(), String> {
    let c = ok(Circle::from_graph(g), "circle")?;
    let (cost, _) = ok(mcps_circle(&c, col), "mcps_circle")?;
    let brute = ok(brute_mcps(g, col, 5), "brute_mcps")?;
    let misa = ok(brute_misa_circle(&c, col, 5), "brute_misa")?;
    ensure!(cost == brute && cost == (c.e() - misa) as u64, "circle {:?}: cost {cost}, brute {brute}, e-misa {}", col.as_slice(), c.e() - misa);
    Ok(())
}

fn criterion_4() -> Outcome {
    let mut classes = 0;
    for e in 1..=5 {
        let g = gen::circle(e);
        for seq in circle_classes(e) {
            check_circle(&g, &as_coloring(&seq))?;
            classes += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..500 {
        let e = rng.random_range(1..=5);
        let (g, col) = { let k = rng.random_range(1..=3); gen::colored_circle(&mut rng, e, k) };
        check_circle(&g, &col)?;
    }
    for i in 0..500 {
        let edges = rng.random_range(0..=12);
        let p = { let k = rng.random_range(1..=3); gen::alternating_path(&mut rng, edges, k) };
        let (size, _) = misa_path(&p);
        let brute = ok(brute_misa_path(&p, 12), "brute_misa_path")?;
        ensure!(size == brute, "path {i}: misa_path {size}, brute {brute}");
    }
    Ok(format!("{classes} circle classes + 500 random circles + 500 paths"))
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut cases: Vec<ColoredMultigraph> = Vec::new();
    for _ in 0..80 {
        let e = rng.random_range(1..=5);
        let v = rng.random_range(1..=5);
        cases.push(gen::eulerian_graph(&mut rng, e, v));
    }
    let mut simple = [0usize; 2];
    while simple.iter().any(|&k| k < 20) {
        let d = if simple[0] < 20 { 1 } else { 2 };
        let e = rng.random_range(2..=5);
        if let Some(s) = gen::simple_cycle(&mut rng, e, d) {
            cases.push(s);
            simple[d - 1] += 1;
        }
    }
    for (i, g) in cases.iter().enumerate() {
        let col = { let k = rng.random_range(1..=3); gen::coloring(&mut rng, g.vertex_count(), k) };
        let r = ok(mcps_graph_exact(g, &col, 16), "mcps_graph_exact")?;
        let brute = ok(brute_mcps(g, &col, 5), "brute_mcps")?;
        ensure!(r.cost == brute, "instance {i}: exact {} brute {brute}", r.cost);
        ensure!(ok(scenario_cost(g, &r.scenario, &col), "scenario_cost")? == brute, "instance {i}: scenario cost differs");
    }
    Ok(format!("{} graphs incl. 20 with d=1 and 20 with d=2", cases.len()))
}

fn criterion_6() -> Outcome {
    let mut scenarios = 0;
    for e in 1..=4 {
        let g = gen::circle(e);
        let c = ok(Circle::from_graph(&g), "circle")?;
        let all = ok(enumerate_parsimonious_scenarios(&g, 4), "enumerate")?;
        for seq in circle_classes(e) {
            let col = as_coloring(&seq);
            for (k, s) in all.iter().enumerate() {
                let p = ok(project_scenario_to_merged(&g, &col, s), "projection")?;
                ensure!(ok(is_noncrossing(&p.decomposition, &c), "is_noncrossing")?, "e={e} coloring {seq:?} scenario {k} crosses");
                scenarios += 1;
            }
        }
    }
    Ok(format!("{scenarios} (coloring, scenario) pairs, e <= 4"))
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 100;
    for i in 0..n {
        let genes = rng.random_range(1..=7);
        let a = gen::genome(&mut rng, genes, 3);
        let b = gen::genome(&mut rng, genes, 3);
        let col = { let k = rng.random_range(1..=4); gen::extremity_coloring(&mut rng, &a, k) };
        let r = ok(mcps_genomes(&a, &b, &col), "mcps_genomes")?;
        let bg = &r.breakpoint;
        let vcol = ok(bg.coloring(&col), "coloring")?;
        let brute = ok(brute_mcps(&bg.graph, &vcol, 14), "brute_mcps")?;
        ensure!(r.cost == brute, "pair {i}: pipeline {} brute {brute}", r.cost);
        let (c, _) = ok(macd_exact(&bg.graph, 32), "macd")?;
        ensure!(r.length == bg.graph.e() - c && r.two_breaks.len() == r.length, "pair {i}: length {}", r.length);
        let mut g = a.clone();
        let mut cost = 0u64;
        for m in &r.dcj {
            cost += ok(dcj_cost(m, &g, &col), "dcj_cost")? as u64;
            g = ok(apply_dcj(&g, m), "apply_dcj")?;
        }
        ensure!(g == b && cost == r.cost, "pair {i}: DCJ replay cost {cost}, reaches B: {}", g == b);
    }
    Ok(format!("{n} genome pairs, n <= 7, <= 4 colors"))
}

fn criterion_8() -> Outcome {
    let graphs = connected_eulerian_graphs(6);
    for g in &graphs {
        let r = ok(reduce_macd_to_circle(g), "reduce")?;
        let j = ok(merged_graph(&r.graph, &r.coloring), "merged")?;
        let mut want: Vec<(u32, u32)> = g.edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        want.sort_unstable();
        let source = |v: twobreak_core::Vertex| j.colors[v.0 as usize].0;
        let mut got: Vec<(u32, u32)> = j.graph.black_key().iter().map(|e| (source(e.0), source(e.1))).map(|(a, b)| (a.min(b), a.max(b))).collect();
        got.sort_unstable();
        ensure!(got == want && j.graph.gray().iter().all(|e| e.is_loop()), "structure of reduced {:?}", g.edges);
        let cost = ok(brute_min_cost(&r.graph, &r.coloring, 6), "brute_min_cost")?;
        let cmax = ok(max_cycle_decomposition(g), "max cycles")?;
        ensure!(cost == (g.edges.len() - cmax) as u64, "graph {:?}: cost {cost}, e-cmax {}", g.edges, g.edges.len() - cmax);
    }
    Ok(format!("{} connected Eulerian simple graphs, <= 6 edges", graphs.len()))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let n = 150;
    for i in 0..n {
        let e = rng.random_range(1..=6);
        let v = rng.random_range(1..=8);
        let (g, col) = { let k = rng.random_range(1..=4); gen::merged_terminal(&mut rng, e, v, k) };
        let s = ok(zero_cost_sort(&g, &col), "zero_cost_sort")?;
        let rep = ok(validate_scenario(&g, &s), "validate")?;
        let cost = ok(scenario_cost(&g, &s, &col), "scenario_cost")?;
        ensure!(rep.final_terminal && cost == 0, "instance {i}: terminal {} cost {cost}", rep.final_terminal);
    }
    Ok(format!("{n} graphs with terminal J, e <= 6"))
}

/// Least-squares slope of log(time) against log(size).
fn fitted_exponent(points: &[(f64, Duration)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.as_secs_f64().ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    // best of three runs per size
    let best = |f: &mut dyn FnMut() -> Result<(), String>| -> Result<Duration, String> {
        let mut t = Duration::MAX;
        for _ in 0..3 {
            let start = Instant::now();
            f()?;
            t = t.min(start.elapsed());
        }
        Ok(t)
    };
    let mut misa = Vec::new();
    for edges in [1000usize, 2000, 4000] {
        let p = gen::alternating_path(&mut rng, edges, 4);
        let t = best(&mut || {
            let (size, arcs) = misa_path(&p);
            ensure!(arcs.len() == size, "misa arcs");
            Ok(())
        })?;
        misa.push((edges as f64, t));
    }
    // below n = 150 the quadratic bookkeeping still outweighs the quartic term
    let mut genomes = Vec::new();
    for n in [150u32, 300, 600] {
        let (a, b) = gen::chain_pair(n);
        let col = gen::extremity_coloring(&mut rng, &a, 4);
        let t = best(&mut || {
            let r = ok(mcps_genomes(&a, &b, &col), "mcps_genomes")?;
            ensure!(r.summary.aa == n as usize, "chain family pool");
            Ok(())
        })?;
        genomes.push((n as f64, t));
    }
    let (km, kg) = (fitted_exponent(&misa), fitted_exponent(&genomes));
    let times = |pts: &[(f64, Duration)]| pts.iter().map(|(n, t)| format!("{n}:{t:.2?}")).collect::<Vec<_>>().join(" ");
    let detail = format!("misa {} exponent {km:.2}; genomes {} exponent {kg:.2}", times(&misa), times(&genomes));
    ensure!(misa[1].1 < Duration::from_secs(30), "{detail}: misa too slow at 2000 edges");
    ensure!(genomes[1].1 < Duration::from_secs(60), "{detail}: genomes too slow at n = 300");
    ensure!((km - 3.0).abs() <= 0.5, "{detail}: misa exponent off");
    ensure!((kg - 4.0).abs() <= 0.5, "{detail}: genome exponent off");
    Ok(detail)
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("worked genome example", criterion_1),
        ("length equals e - c", criterion_2),
        ("minimum cost equals e(J) - c(J)", criterion_3),
        ("circle MCPS and MISA", criterion_4),
        ("general MCPS by exact search", criterion_5),
        ("parsimonious circle scenarios are non-crossing", criterion_6),
        ("genome MCPS pipeline", criterion_7),
        ("cycle decomposition reduction", criterion_8),
        ("zero-cost sorting", criterion_9),
        ("scale", criterion_10),
    ];
    // optional criterion numbers select a subset
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        if !only.is_empty() && !only.contains(&(i + 1)) {
            continue;
        }
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} [{secs:.1}s]", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
