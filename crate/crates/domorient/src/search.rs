//! Branch-and-bound over orientations.
//!
//! Edges are assigned one at a time. At every node the partially oriented
//! graph, with unassigned edges usable both ways, is a supergraph of every
//! completion, so its distances bound all completions from below; a mixed
//! graph that is not strongly connected has no strong completion at all.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{Arc, DistanceMatrix, EdgeId, Orientation, UndirectedMultigraph, VertexId, INF};
use crate::metrics::{exact_strong_diameter, ClassDistances};

/// Largest vertex count the bitset search supports.
pub const SEARCH_VERTEX_LIMIT: usize = 64;

/// Objective minimized by [`minimize`]. All of them are invariant under
/// reversing every arc.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Goal {
    Diameter,
    /// Maximum of `d(u,v) + d(v,u)` over pairs.
    StrongUpper,
    /// Maximum exact strong distance over pairs.
    StrongExact,
    /// `max{d0 - 2, d1 - 1, d2}` with classes given by the dominators.
    MValue(BTreeSet<VertexId>),
    /// `max{d0, d1 + 2, d2 + 4}` with classes given by the dominators.
    Cover(BTreeSet<VertexId>),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Only orientations with objective strictly below this are accepted.
    pub upper: Option<u32>,
    /// Stop as soon as an orientation with objective at most this is found.
    pub stop_at: Option<u32>,
    /// Fix the direction of the first free edge when no arc is fixed.
    pub use_symmetry: bool,
    /// Disable lower-bound pruning (strongness pruning stays on).
    pub prune: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            upper: None,
            stop_at: None,
            use_symmetry: true,
            prune: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub best: Option<(u32, Orientation)>,
    pub explored: u64,
    pub pruned: u64,
}

struct Engine<'a> {
    n: usize,
    free: Vec<(usize, usize)>,
    base_out: Vec<u64>,
    class: Vec<u8>,
    goal: &'a Goal,
    opts: &'a SearchOptions,
    choice: Vec<bool>,
    best_value: u32,
    best_choice: Option<Vec<bool>>,
    explored: u64,
    pruned: u64,
    done: bool,
}

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All-pairs distances of the bitset digraph, `None` if not strong.
fn all_pairs(out: &[u64], n: usize) -> Option<Vec<u8>> {
    let full = full_mask(n);
    let mut dist = vec![u8::MAX; n * n];
    for s in 0..n {
        let row = &mut dist[s * n..(s + 1) * n];
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        row[s] = 0;
        let mut d = 0u8;
        while frontier != 0 {
            d += 1;
            let mut next = 0u64;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= out[v];
            }
            next &= !seen;
            seen |= next;
            frontier = next;
            let mut b = next;
            while b != 0 {
                let v = b.trailing_zeros() as usize;
                b &= b - 1;
                row[v] = d;
            }
        }
        if seen != full {
            return None;
        }
    }
    Some(dist)
}

fn reaches_all(out: &[u64], n: usize, s: usize) -> bool {
    let full = full_mask(n);
    let mut seen = 1u64 << s;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0u64;
        let mut f = frontier;
        while f != 0 {
            let v = f.trailing_zeros() as usize;
            f &= f - 1;
            next |= out[v];
        }
        next &= !seen;
        seen |= next;
        frontier = next;
    }
    seen == full
}

fn transpose(out: &[u64], n: usize) -> Vec<u64> {
    let mut inn = vec![0u64; n];
    for (v, &mask) in out.iter().enumerate() {
        let mut b = mask;
        while b != 0 {
            let w = b.trailing_zeros() as usize;
            b &= b - 1;
            inn[w] |= 1 << v;
        }
    }
    inn
}

impl Engine<'_> {
    fn pair_stats(&self, dist: &[u8]) -> (u32, u32, ClassDistances) {
        let n = self.n;
        let mut diam = 0u32;
        let mut upper = 0u32;
        let mut cd = [0u32; 3];
        for s in 0..n {
            for t in s + 1..n {
                let a = dist[s * n + t] as u32;
                let b = dist[t * n + s] as u32;
                let th = a.max(b);
                diam = diam.max(th);
                upper = upper.max(a + b);
                let c = (self.class[s] + self.class[t]) as usize;
                cd[c] = cd[c].max(th);
            }
        }
        (
            diam,
            upper,
            ClassDistances {
                d0: cd[0],
                d1: cd[1],
                d2: cd[2],
            },
        )
    }

    fn bound(&self, dist: &[u8], leaf: bool, out: &[u64]) -> u32 {
        let (diam, upper, cd) = self.pair_stats(dist);
        match self.goal {
            Goal::Diameter => diam,
            Goal::StrongUpper => upper,
            Goal::MValue(_) => cd.m(),
            Goal::Cover(_) => cd.cover_bound(),
            Goal::StrongExact => {
                if self.n < 2 {
                    return 0;
                }
                if !leaf {
                    return diam + 1;
                }
                let lists: Vec<Vec<usize>> = out
                    .iter()
                    .map(|&m| (0..self.n).filter(|&w| m & (1 << w) != 0).collect())
                    .collect();
                let raw: Vec<u32> = dist
                    .iter()
                    .map(|&x| if x == u8::MAX { INF } else { x as u32 })
                    .collect();
                let matrix = DistanceMatrix::from_raw(self.n, raw);
                exact_strong_diameter(self.n, |x| lists[x].as_slice(), &matrix, self.best_value)
            }
        }
    }

    fn mixed_out(&self, k: usize) -> Vec<u64> {
        let mut out = self.base_out.clone();
        for (i, &(u, v)) in self.free.iter().enumerate() {
            if i < k {
                if self.choice[i] {
                    out[u] |= 1 << v;
                } else {
                    out[v] |= 1 << u;
                }
            } else {
                out[u] |= 1 << v;
                out[v] |= 1 << u;
            }
        }
        out
    }

    fn run(&mut self, k: usize) {
        if self.done {
            return;
        }
        self.explored += 1;
        let out = self.mixed_out(k);
        if self.n > 1 && (!reaches_all(&out, self.n, 0) || !reaches_all(&transpose(&out, self.n), self.n, 0)) {
            self.pruned += 1;
            return;
        }
        let leaf = k == self.free.len();
        if self.opts.prune || leaf {
            let Some(dist) = all_pairs(&out, self.n) else {
                self.pruned += 1;
                return;
            };
            let value = self.bound(&dist, leaf, &out);
            if value >= self.best_value {
                self.pruned += 1;
                return;
            }
            if leaf {
                self.best_value = value;
                self.best_choice = Some(self.choice.clone());
                if matches!(self.opts.stop_at, Some(t) if value <= t) {
                    self.done = true;
                }
                return;
            }
        }
        let symmetric = k == 0 && self.opts.use_symmetry && self.base_out.iter().all(|&m| m == 0);
        for dir in [true, false] {
            if symmetric && !dir {
                break;
            }
            self.choice[k] = dir;
            self.run(k + 1);
        }
    }
}

/// Minimizes `goal` over orientations of `g` that agree with `fixed`.
pub fn minimize(
    g: &UndirectedMultigraph,
    fixed: &BTreeMap<EdgeId, Arc>,
    goal: &Goal,
    opts: &SearchOptions,
) -> Result<SearchOutcome> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let n = ids.len();
    if n > SEARCH_VERTEX_LIMIT {
        return Err(Error::ExactLimit {
            what: "orientation search vertex count",
            limit: SEARCH_VERTEX_LIMIT,
            actual: n,
        });
    }
    let index: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut base_out = vec![0u64; n];
    for (&e, a) in fixed {
        let (u, v) = g.endpoints(e)?;
        if !((a.tail == u && a.head == v) || (a.tail == v && a.head == u)) {
            return Err(Error::precondition(format!("fixed arc {e} is off its endpoints")));
        }
        base_out[index[&a.tail]] |= 1 << index[&a.head];
    }
    let free_ids = edge_order(g, fixed);
    let free: Vec<(usize, usize)> = free_ids
        .iter()
        .map(|&e| {
            let (u, v) = g.endpoints(e).expect("edge exists");
            (index[&u], index[&v])
        })
        .collect();
    let dominators = match goal {
        Goal::MValue(d) | Goal::Cover(d) => Some(d),
        _ => None,
    };
    let class = ids
        .iter()
        .map(|v| dominators.is_some_and(|d| d.contains(v)) as u8)
        .collect();
    let mut engine = Engine {
        n,
        choice: vec![true; free.len()],
        free,
        base_out,
        class,
        goal,
        opts,
        best_value: opts.upper.unwrap_or(u32::MAX),
        best_choice: None,
        explored: 0,
        pruned: 0,
        done: false,
    };
    engine.run(0);
    let best = match engine.best_choice {
        None => None,
        Some(choice) => {
            let mut arcs = fixed.clone();
            for (i, &e) in free_ids.iter().enumerate() {
                let (u, v) = g.endpoints(e)?;
                arcs.insert(e, if choice[i] { Arc::new(u, v) } else { Arc::new(v, u) });
            }
            Some((engine.best_value, Orientation::new(g, arcs)?))
        }
    };
    Ok(SearchOutcome {
        best,
        explored: engine.explored,
        pruned: engine.pruned,
    })
}

/// Free edges ordered by breadth-first discovery.
fn edge_order(g: &UndirectedMultigraph, fixed: &BTreeMap<EdgeId, Arc>) -> Vec<EdgeId> {
    let mut rank = vec![u32::MAX; g.vertex_bound()];
    let mut counter = 0;
    for s in g.vertices() {
        if rank[s.index()] != u32::MAX {
            continue;
        }
        rank[s.index()] = counter;
        counter += 1;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in g.neighbors(v) {
                if rank[w.index()] == u32::MAX {
                    rank[w.index()] = counter;
                    counter += 1;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut edges: Vec<(u32, u32, EdgeId)> = g
        .edges()
        .filter(|(e, _, _)| !fixed.contains_key(e))
        .map(|(e, u, v)| {
            let (a, b) = (rank[u.index()], rank[v.index()]);
            (a.max(b), a.min(b), e)
        })
        .collect();
    edges.sort_unstable();
    edges.into_iter().map(|(_, _, e)| e).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(u32, u32)]) -> UndirectedMultigraph {
        UndirectedMultigraph::from_edges(n, edges).unwrap()
    }

    #[test]
    fn cycles_have_their_only_values() {
        let c5 = g(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        let out = minimize(&c5, &BTreeMap::new(), &Goal::Diameter, &SearchOptions::default()).unwrap();
        assert_eq!(out.best.unwrap().0, 4);
        let out = minimize(&c5, &BTreeMap::new(), &Goal::StrongExact, &SearchOptions::default()).unwrap();
        assert_eq!(out.best.unwrap().0, 5);
    }

    #[test]
    fn fixed_arcs_are_respected() {
        let k4 = g(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let fixed = BTreeMap::from([(EdgeId(0), Arc::new(VertexId(1), VertexId(0)))]);
        let (_, o) = minimize(&k4, &fixed, &Goal::Diameter, &SearchOptions::default())
            .unwrap()
            .best
            .unwrap();
        assert_eq!(o.arc(EdgeId(0)), Some(Arc::new(VertexId(1), VertexId(0))));
        assert!(o.is_strong());
    }

    #[test]
    fn bridge_leaves_nothing_to_find() {
        let bridged = g(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]);
        let out = minimize(&bridged, &BTreeMap::new(), &Goal::Diameter, &SearchOptions::default()).unwrap();
        assert!(out.best.is_none());
    }
}
