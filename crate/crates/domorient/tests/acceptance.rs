//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero on any FAIL.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use domorient::alternative::{brute_force_alternative, find_alternative_from};
use domorient::generators::{
    gen_extremal, gen_random_bridgeless, gen_random_standard, random_strong_orientation, Gadget,
};
use domorient::metrics::{lemma1_check, strong_distance, StrongMode};
use domorient::oracle::{
    enumerate_oriented_diameter, enumerate_oriented_strong_diameter, exact_oriented_diameter,
    exact_oriented_strong_diameter,
};
use domorient::quotient::{diameter_bound, strong_diameter_bound};
use domorient::search::{minimize, Goal, SearchOptions};
use domorient::shapes;
use domorient::{orient, Arc, EdgeId, Objective, Orientation, StandardPair, UndirectedMultigraph, VertexId};

const BOWTIE_DIAMETER: u32 = 4;
const BOWTIE_STRONG_DIAMETER: u32 = 6;
const BOWTIE_TIME: Duration = Duration::from_secs(1);
const EXTREMAL_G2_DIAMETER: u32 = 8;
const CORPUS_SIZE: u64 = 200;
const CORPUS_MAX_VERTICES: usize = 12;
const CORPUS_TIME: Duration = Duration::from_secs(300);
const SMALL_ALTERNATIVE_TIME: Duration = Duration::from_secs(30);
const MERGED_COST: u32 = 7;
const STANDARD_CORPUS: usize = 50;
const STANDARD_MAX_DOMINATORS: usize = 5;
const STANDARD_MAX_VERTICES: usize = 20;
const ORIENTATIONS_PER_PAIR: usize = 20;
const SMALL_DIGRAPH_VERTICES: u32 = 5;
const SMALL_DIGRAPH_ARCS: usize = 8;
const SANITY_GRAPHS: u64 = 100;
const SANITY_MAX_EDGES: usize = 10;
/// Every criterion is an exact comparison.
const TOLERANCE: u32 = 0;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(measured: u32, bound: u32) -> bool {
    measured <= bound + TOLERANCE
}

#[allow(clippy::absurd_extreme_comparisons)]
fn equal(a: u32, b: u32) -> bool {
    a.abs_diff(b) <= TOLERANCE
}

fn bowtie_sharpness() -> Outcome {
    let start = Instant::now();
    let g = shapes::bowtie().graph;
    let d = enumerate_oriented_diameter(&g).map_err(|e| e.to_string())?;
    let s = enumerate_oriented_strong_diameter(&g).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    ensure(equal(d, BOWTIE_DIAMETER), || format!("oriented diameter {d}"))?;
    ensure(equal(s, BOWTIE_STRONG_DIAMETER), || {
        format!("oriented strong diameter {s}")
    })?;
    ensure(elapsed < BOWTIE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!("oriented diameter {d}, oriented strong diameter {s}"))
}

fn extremal_sharpness() -> Outcome {
    let mut parts = Vec::new();
    for (p, gadget) in [(1, Gadget::Left), (2, Gadget::Right)] {
        let (g, d) = gen_extremal(2, &[gadget]).map_err(|e| e.to_string())?;
        let exact = exact_oriented_diameter(&g).map_err(|e| e.to_string())?.optimum;
        let (_, _, report) = orient(&g, Some(&d), Objective::Diameter).map_err(|e| e.to_string())?;
        ensure(equal(exact, EXTREMAL_G2_DIAMETER), || {
            format!("gadget {p}: optimum {exact}")
        })?;
        ensure(equal(report.diameter, EXTREMAL_G2_DIAMETER), || {
            format!("gadget {p}: algorithm {}", report.diameter)
        })?;
        parts.push(format!("gadget {p}: optimum {exact}, algorithm {}", report.diameter));
    }
    Ok(parts.join("; "))
}

fn random_corpus() -> Vec<UndirectedMultigraph> {
    (0..CORPUS_SIZE)
        .map(|seed| {
            let n = 4 + (seed % (CORPUS_MAX_VERTICES as u64 - 3)) as usize;
            let extra = (seed / 9 % 5) as usize;
            gen_random_bridgeless(n, extra, 1000 + seed).expect("generator")
        })
        .collect()
}

fn corpus_bound(objective: Objective) -> Outcome {
    let start = Instant::now();
    let mut worst_gap = 0;
    let mut checked = 0;
    for (i, g) in random_corpus().iter().enumerate() {
        let (o, plan, report) = orient(g, None, objective).map_err(|e| format!("graph {i}: {e}"))?;
        ensure(o.is_strong(), || format!("graph {i}: not strong"))?;
        let (measured, bound) = match objective {
            Objective::Diameter => (report.diameter, diameter_bound(report.gamma)),
            Objective::StrongDiameter => (report.strong_diameter_upper, strong_diameter_bound(report.gamma)),
        };
        ensure(within(measured, bound), || format!("graph {i}: {measured} > {bound}"))?;
        ensure(plan.replay().ok().as_ref() == Some(&o), || {
            format!("graph {i}: replay differs")
        })?;
        if objective == Objective::Diameter {
            let optimum = exact_oriented_diameter(g)
                .map_err(|e| format!("graph {i}: {e}"))?
                .optimum;
            ensure(optimum <= measured, || {
                format!("graph {i}: optimum {optimum} above {measured}")
            })?;
            worst_gap = worst_gap.max(measured - optimum);
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CORPUS_TIME, || format!("took {elapsed:?}"))?;
    let extra = if checked > 0 {
        format!(", largest gap to optimum {worst_gap} over {checked} graphs")
    } else {
        String::new()
    };
    Ok(format!("{CORPUS_SIZE} graphs, zero violations{extra}"))
}

fn search_cost(s: &shapes::Shape) -> Result<u32, String> {
    minimize(
        &s.graph,
        &BTreeMap::new(),
        &Goal::MValue(s.dominators.clone()),
        &SearchOptions::default(),
    )
    .map_err(|e| e.to_string())?
    .best
    .map(|(m, _)| m)
    .ok_or_else(|| format!("{}: no strong orientation", s.name))
}

fn small_alternative_cost() -> Outcome {
    let fixtures = shapes::small_alternative_fixtures();
    let mut slowest = Duration::ZERO;
    for s in &fixtures {
        let start = Instant::now();
        let r0 = s.dominators.len() as u32;
        let m = search_cost(s)?;
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        ensure(within(m, 3 * r0 - 2), || {
            format!("{}: m = {m} > {}", s.name, 3 * r0 - 2)
        })?;
        ensure(elapsed < SMALL_ALTERNATIVE_TIME, || {
            format!("{}: took {elapsed:?}", s.name)
        })?;
    }
    Ok(format!(
        "{} fixtures within 3 r0 - 2, slowest {slowest:.2?}",
        fixtures.len()
    ))
}

fn merged_cost() -> Outcome {
    let merged = shapes::merged_shapes();
    ensure(merged.len() == 6, || format!("{} merged shapes", merged.len()))?;
    let mut costs = Vec::new();
    for s in &merged {
        let m = search_cost(s)?;
        ensure(within(m, MERGED_COST), || format!("{}: m = {m}", s.name))?;
        costs.push(m.to_string());
    }
    Ok(format!("costs {}", costs.join(" ")))
}

fn standard_corpus() -> Vec<StandardPair> {
    (0..)
        .map(|seed: u64| gen_random_standard(2 + (seed as usize % (STANDARD_MAX_DOMINATORS - 1)), 3, 500 + seed))
        .filter_map(|sp| sp.ok())
        .filter(|sp| sp.graph.vertex_count() <= STANDARD_MAX_VERTICES)
        .take(STANDARD_CORPUS)
        .collect()
}

fn alternative_search() -> Outcome {
    let mut runs = 0;
    for (i, sp) in standard_corpus().iter().enumerate() {
        let all = brute_force_alternative(sp, 2).map_err(|e| e.to_string())?;
        for &x in sp.dominator_set() {
            let a = find_alternative_from(sp, x).map_err(|e| format!("pair {i}, {x}: {e}"))?;
            ensure(a.is_valid(&sp.graph, sp.dominator_set()), || {
                format!("pair {i}, {x}: invalid")
            })?;
            ensure(a.dominators().contains(&x), || format!("pair {i}, {x}: start missing"))?;
            ensure(a.s() >= 2, || format!("pair {i}, {x}: one dominator"))?;
            ensure(all.iter().any(|b| b.triples() == a.triples()), || {
                format!("pair {i}, {x}: not enumerated")
            })?;
            runs += 1;
        }
    }
    Ok(format!("{STANDARD_CORPUS} pairs, {runs} searches, zero failures"))
}

fn dominated_distance_invariant() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut checks = 0;
    for (i, sp) in standard_corpus().iter().enumerate() {
        for k in 0..ORIENTATIONS_PER_PAIR {
            let o = random_strong_orientation(&sp.graph, &mut rng).map_err(|e| e.to_string())?;
            let ok = lemma1_check(&o, sp).map_err(|e| e.to_string())?;
            ensure(ok, || format!("pair {i}, orientation {k}: violated"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} orientations, zero violations"))
}

/// Strong distance by trying every arc subset.
fn subset_strong_distances(n: u32, arcs: &[(u32, u32)]) -> BTreeMap<(u32, u32), u32> {
    let mut best = BTreeMap::new();
    for mask in 1u32..(1 << arcs.len()) {
        let chosen: Vec<(u32, u32)> = (0..arcs.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| arcs[i])
            .collect();
        let touched: BTreeSet<u32> = chosen.iter().flat_map(|&(a, b)| [a, b]).collect();
        let reach = |from: u32, forward: bool| -> BTreeSet<u32> {
            let mut seen = BTreeSet::from([from]);
            let mut stack = vec![from];
            while let Some(x) = stack.pop() {
                for &(a, b) in &chosen {
                    let (s, t) = if forward { (a, b) } else { (b, a) };
                    if s == x && seen.insert(t) {
                        stack.push(t);
                    }
                }
            }
            seen
        };
        let root = *touched.iter().next().expect("nonempty");
        if reach(root, true) != touched || reach(root, false) != touched {
            continue;
        }
        let size = chosen.len() as u32;
        for &u in &touched {
            for &v in &touched {
                if u < v && u < n && v < n {
                    let e = best.entry((u, v)).or_insert(u32::MAX);
                    *e = (*e).min(size);
                }
            }
        }
    }
    best
}

fn strong_distance_exactness() -> Outcome {
    let mut digraphs = 0;
    let mut pairs = 0;
    for n in 2..=SMALL_DIGRAPH_VERTICES {
        let slots: Vec<(u32, u32)> = (0..n)
            .flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b)))
            .collect();
        for mask in 1u64..(1 << slots.len()) {
            if mask.count_ones() as usize > SMALL_DIGRAPH_ARCS || mask.count_ones() < n {
                continue;
            }
            let arcs: Vec<(u32, u32)> = (0..slots.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| slots[i])
                .collect();
            let g = UndirectedMultigraph::from_edges(n as usize, &arcs).map_err(|e| e.to_string())?;
            let o = Orientation::new(
                &g,
                g.edges()
                    .zip(&arcs)
                    .map(|((e, _, _), &(a, b))| (e, Arc::new(VertexId(a), VertexId(b))))
                    .collect::<BTreeMap<EdgeId, Arc>>(),
            )
            .map_err(|e| e.to_string())?;
            if !o.is_strong() {
                continue;
            }
            digraphs += 1;
            let oracle = subset_strong_distances(n, &arcs);
            for u in 0..n {
                for v in u + 1..n {
                    let got =
                        strong_distance(&o, VertexId(u), VertexId(v), StrongMode::Exact).map_err(|e| e.to_string())?;
                    let want = oracle[&(u, v)];
                    ensure(equal(got, want), || format!("{arcs:?} pair {u} {v}: {got} vs {want}"))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{digraphs} strong digraphs, {pairs} pairs, zero mismatches"))
}

fn oracle_sanity() -> Outcome {
    let mut count = 0;
    let mut seed = 0u64;
    while count < SANITY_GRAPHS {
        let n = 3 + (seed % 6) as usize;
        let extra = (seed / 6 % 4) as usize;
        seed += 1;
        if n + extra > SANITY_MAX_EDGES {
            continue;
        }
        let g = gen_random_bridgeless(n, extra, 7000 + seed).map_err(|e| e.to_string())?;
        let a = exact_oriented_diameter(&g).map_err(|e| e.to_string())?.optimum;
        let b = enumerate_oriented_diameter(&g).map_err(|e| e.to_string())?;
        ensure(equal(a, b), || format!("seed {seed}: diameter {a} vs {b}"))?;
        let a = exact_oriented_strong_diameter(&g).map_err(|e| e.to_string())?.optimum;
        let b = enumerate_oriented_strong_diameter(&g).map_err(|e| e.to_string())?;
        ensure(equal(a, b), || format!("seed {seed}: strong diameter {a} vs {b}"))?;
        count += 1;
    }
    Ok(format!("{SANITY_GRAPHS} graphs, both objectives, zero mismatches"))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 10] = [
        ("bowtie sharpness", bowtie_sharpness),
        ("extremal sharpness at two dominators", extremal_sharpness),
        ("diameter bound on random corpus", || corpus_bound(Objective::Diameter)),
        ("strong diameter bound on random corpus", || {
            corpus_bound(Objective::StrongDiameter)
        }),
        ("small alternative cost", small_alternative_cost),
        ("merged shape cost", merged_cost),
        ("alternative search vs enumeration", alternative_search),
        ("dominated distance invariant", dominated_distance_invariant),
        ("exact strong distance", strong_distance_exactness),
        ("pruned vs unpruned oracle", oracle_sanity),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{elapsed:.2?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
