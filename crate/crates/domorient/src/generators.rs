//! Seeded instance generators.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domination::{minimum_dominating_set, DominatingSet, StandardPair};
use crate::error::{Error, Result};
use crate::graph::{Arc, Orientation, Role, UndirectedMultigraph, VertexId};
use crate::oracle::{exact_oriented_diameter, exact_oriented_strong_diameter};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gadget {
    /// Triangle on the left terminal.
    Left,
    /// Triangle on the right terminal.
    Right,
}

impl Gadget {
    pub fn from_index(i: u8) -> Option<Gadget> {
        match i {
            1 => Some(Gadget::Left),
            2 => Some(Gadget::Right),
            _ => None,
        }
    }
}

fn add_triangle(g: &mut UndirectedMultigraph, v: VertexId) -> Result<()> {
    let a = g.add_vertex(Role::Dominated);
    let b = g.add_vertex(Role::Dominated);
    g.add_edge(v, a)?;
    g.add_edge(v, b)?;
    g.add_edge(a, b)?;
    Ok(())
}

/// The extremal family: dominators `u1 .. u_gamma` (vertices `0 .. gamma`)
/// joined consecutively by gadgets. A gadget is a triangle `t a b` at one
/// terminal `t` whose vertex `a` is joined through a 4-cycle `a c t' d` to
/// the other terminal `t'`. The two end dominators carry pendant triangles;
/// `gamma = 1` gives a single triangle.
pub fn gen_extremal(gamma: usize, pattern: &[Gadget]) -> Result<(UndirectedMultigraph, DominatingSet)> {
    if gamma == 0 {
        return Err(Error::precondition("gamma must be at least 1"));
    }
    if pattern.len() != gamma - 1 {
        return Err(Error::precondition(format!(
            "pattern length {} does not match gamma - 1 = {}",
            pattern.len(),
            gamma - 1
        )));
    }
    let mut g = UndirectedMultigraph::new();
    let us: Vec<VertexId> = (0..gamma).map(|_| g.add_vertex(Role::Dominating)).collect();
    if gamma == 1 {
        add_triangle(&mut g, us[0])?;
    } else {
        for (i, gadget) in pattern.iter().enumerate() {
            let (t, other) = match gadget {
                Gadget::Left => (us[i], us[i + 1]),
                Gadget::Right => (us[i + 1], us[i]),
            };
            let a = g.add_vertex(Role::Dominated);
            let b = g.add_vertex(Role::Dominated);
            let c = g.add_vertex(Role::Dominated);
            let d = g.add_vertex(Role::Dominated);
            for (x, y) in [(t, a), (t, b), (a, b), (a, c), (a, d), (c, other), (d, other)] {
                g.add_edge(x, y)?;
            }
        }
        add_triangle(&mut g, us[0])?;
        add_triangle(&mut g, us[gamma - 1])?;
    }
    let d = DominatingSet::new(&g, us.into_iter().collect())?;
    Ok((g, d))
}

/// Random Hamiltonian cycle on `n` vertices plus `extra_edges` random
/// chords (parallel chords allowed once the simple ones run out).
pub fn gen_random_bridgeless(n: usize, extra_edges: usize, seed: u64) -> Result<UndirectedMultigraph> {
    if n < 3 {
        return Err(Error::precondition("at least three vertices are required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<u32> = (0..n as u32).collect();
    order.shuffle(&mut rng);
    let mut edges: Vec<(u32, u32)> = (0..n).map(|i| (order[i], order[(i + 1) % n])).collect();
    let mut present: BTreeSet<(u32, u32)> = edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    let simple_capacity = n * (n - 1) / 2;
    for _ in 0..extra_edges {
        loop {
            let a = rng.gen_range(0..n as u32);
            let b = rng.gen_range(0..n as u32);
            if a == b {
                continue;
            }
            let key = (a.min(b), a.max(b));
            if present.len() < simple_capacity && present.contains(&key) {
                continue;
            }
            present.insert(key);
            edges.push((a, b));
            break;
        }
    }
    UndirectedMultigraph::from_edges(n, &edges)
}

/// A random standard pair: `r` dominators with isolated triangles, each
/// also owning between two and `max_owned` further dominated vertices,
/// joined by random edges among dominated vertices until the graph is
/// connected and bridgeless.
pub fn gen_random_standard(r: usize, max_owned: usize, seed: u64) -> Result<StandardPair> {
    if r == 0 || max_owned < 2 {
        return Err(Error::precondition("need r >= 1 and max_owned >= 2"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut g = UndirectedMultigraph::new();
        let doms: Vec<VertexId> = (0..r).map(|_| g.add_vertex(Role::Dominating)).collect();
        let mut owned: Vec<VertexId> = Vec::new();
        let mut owner: BTreeMap<VertexId, VertexId> = BTreeMap::new();
        for &x in &doms {
            add_triangle(&mut g, x)?;
            for _ in 0..rng.gen_range(2..=max_owned) {
                let w = g.add_vertex(Role::Dominated);
                g.add_edge(x, w)?;
                owned.push(w);
                owner.insert(w, x);
            }
        }
        let mut tries = 0;
        while !(g.is_connected() && g.is_bridgeless()) && tries < 200 {
            tries += 1;
            let a = *owned.choose(&mut rng).expect("nonempty");
            let b = *owned.choose(&mut rng).expect("nonempty");
            if a == b || g.has_edge(a, b) {
                continue;
            }
            g.add_edge(a, b)?;
        }
        if r == 1 {
            // A single dominator with a star of owned vertices: join them in
            // a cycle through the dominator.
            for w in owned.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    g.add_edge(w[0], w[1])?;
                }
            }
        }
        let set: BTreeSet<VertexId> = doms.iter().copied().collect();
        if let Ok(sp) = StandardPair::from_standard(g, set) {
            if sp.graph.is_connected() {
                return Ok(sp);
            }
        }
    }
}

/// A uniformly seeded strong orientation: a depth-first search with shuffled
/// neighbor order orients tree edges downward and the rest upward, then
/// random single-edge reversals are kept whenever the result stays strong.
pub fn random_strong_orientation<R: Rng>(g: &UndirectedMultigraph, rng: &mut R) -> Result<Orientation> {
    g.check_bridgeless()?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let root = *vertices.choose(rng).ok_or(Error::NotConnected)?;
    let mut arcs: BTreeMap<crate::graph::EdgeId, Arc> = BTreeMap::new();
    let mut visited: BTreeSet<VertexId> = BTreeSet::from([root]);
    let mut stack: Vec<(VertexId, Vec<crate::graph::EdgeId>)> = Vec::new();
    let mut first: Vec<_> = g.incident(root).to_vec();
    first.shuffle(rng);
    stack.push((root, first));
    while let Some((v, pending)) = stack.last_mut() {
        let v = *v;
        let Some(e) = pending.pop() else {
            stack.pop();
            continue;
        };
        if arcs.contains_key(&e) {
            continue;
        }
        let w = g.opposite(e, v).expect("incident edge");
        if visited.insert(w) {
            arcs.insert(e, Arc::new(v, w));
            let mut next: Vec<_> = g.incident(w).to_vec();
            next.shuffle(rng);
            stack.push((w, next));
        } else {
            arcs.insert(e, Arc::new(v, w));
        }
    }
    let mut o = Orientation::new(g, arcs)?;
    if !o.is_strong() {
        return Err(Error::breach("depth-first orientation is not strong"));
    }
    let edges: Vec<_> = g.edge_ids().collect();
    for _ in 0..edges.len() {
        let e = *edges.choose(rng).expect("nonempty");
        let mut arcs: BTreeMap<_, _> = o.arcs().collect();
        let a = arcs[&e];
        arcs.insert(e, a.reversed());
        let flipped = Orientation::new(g, arcs)?;
        if flipped.is_strong() {
            o = flipped;
        }
    }
    Ok(o)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeRow {
    pub sample: usize,
    pub n: usize,
    pub m: usize,
    pub gamma: usize,
    pub oriented_diameter: u32,
    pub oriented_strong_diameter: u32,
    pub counterexample: bool,
    pub edges: Vec<(u32, u32)>,
}

impl ProbeRow {
    pub fn diameter_target(&self) -> u32 {
        3 * self.gamma as u32 - 1
    }

    pub fn strong_target(&self) -> u32 {
        3 * self.gamma as u32
    }
}

/// Samples random 2-connected graphs on `n` vertices and compares their
/// exact oriented diameter and strong diameter against `3 gamma - 1` and
/// `3 gamma`. Samples that are not 2-connected are discarded.
pub fn probe_two_connected(count: usize, n: usize, seed: u64) -> Result<Vec<ProbeRow>> {
    if n < 3 {
        return Err(Error::precondition("at least three vertices are required"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pairs: Vec<(u32, u32)> = (0..n as u32)
        .flat_map(|a| (a + 1..n as u32).map(move |b| (a, b)))
        .collect();
    let max_edges = pairs.len().min(crate::oracle::STRONG_EDGE_BUDGET);
    let mut rows = Vec::new();
    let mut attempts = 0;
    while rows.len() < count {
        attempts += 1;
        if attempts > 1000 * count.max(1) {
            return Err(Error::precondition("could not sample enough 2-connected graphs"));
        }
        let m = rng.gen_range(n..=max_edges.max(n));
        let chosen: Vec<(u32, u32)> = pairs.choose_multiple(&mut rng, m).copied().collect();
        let g = UndirectedMultigraph::from_edges(n, &chosen)?;
        if !g.is_two_connected() {
            continue;
        }
        let gamma = minimum_dominating_set(&g).len();
        let od = exact_oriented_diameter(&g)?.optimum;
        let osd = exact_oriented_strong_diameter(&g)?.optimum;
        let mut row = ProbeRow {
            sample: rows.len(),
            n,
            m: g.edge_count(),
            gamma,
            oriented_diameter: od,
            oriented_strong_diameter: osd,
            counterexample: false,
            edges: chosen,
        };
        row.counterexample = od > row.diameter_target() || osd > row.strong_target();
        rows.push(row);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn extremal_gamma_one_is_a_triangle() {
        let (g, d) = gen_extremal(1, &[]).unwrap();
        assert!(g.is_triangle());
        assert_eq!(d.len(), 1);
    }

    #[test]
    fn extremal_gamma_two_shape() {
        for p in [Gadget::Left, Gadget::Right] {
            let (g, d) = gen_extremal(2, &[p]).unwrap();
            assert_eq!((g.vertex_count(), g.edge_count()), (10, 13));
            assert!(g.is_bridgeless());
            assert_eq!(minimum_dominating_set(&g).len(), 2);
            assert_eq!(d.len(), 2);
        }
        assert!(gen_extremal(2, &[]).is_err());
    }

    #[test]
    fn random_generator_is_deterministic() {
        let a = gen_random_bridgeless(10, 4, 7).unwrap();
        let b = gen_random_bridgeless(10, 4, 7).unwrap();
        assert_eq!(a.edge_signature(), b.edge_signature());
        assert_eq!(a.edge_count(), 14);
        assert!(a.is_bridgeless());
        let t = gen_random_bridgeless(3, 0, 1).unwrap();
        assert!(t.is_triangle());
    }

    #[test]
    fn random_standard_pairs_are_standard() {
        for seed in 0..20 {
            let sp = gen_random_standard(3, 3, seed).unwrap();
            assert!(crate::domination::is_standard(&sp.graph, sp.dominator_set()));
        }
    }

    #[test]
    fn random_orientations_are_strong() {
        let g = gen_random_bridgeless(9, 5, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10 {
            assert!(random_strong_orientation(&g, &mut rng).unwrap().is_strong());
        }
    }
}
