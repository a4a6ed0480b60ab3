//! The recursive orientation procedure and its audit trail.
//!
//! A pair with one dominator is oriented directly. Otherwise a maximum
//! alternative subgraph `H0` decides the step: large or small `H0` is
//! oriented, contracted, and the quotient handled recursively; with two
//! dominators per `H0` the two-dominator witnesses are merged, grouped into
//! a star, or chained and the rest of the graph hung off the chain.
//!
//! Every step records its level graph, sub-orientation, quotient map and
//! result in an [`OrientationPlan`], which replays to the final orientation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::alternative::{max_alternative, AlternativeSubgraph};
use crate::domination::{
    isolated_triangle, minimum_dominating_set, pull_back, standardize, DominatingSet, StandardPair,
};
use crate::ears::ear_orientation;
use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Orientation, UndirectedMultigraph, VertexId};
use crate::metrics::{class_distances, diameter, distance_report, m_value, strong_diameter_upper, DistanceReport};
use crate::quotient::{
    compose, composition_bound, diameter_bound, s_quotient, sdiam_compose_bound, strong_diameter_bound, QuotientMap,
};
use crate::search::{minimize, Goal, SearchOptions};
use crate::shapes::{merged_shapes, role_isomorphic};

/// Largest chain, in edges, oriented by one joint search.
pub const CHAIN_SEARCH_EDGE_LIMIT: usize = 24;
/// Largest residual edge count for the exhaustive extension fallback.
pub const EXTENSION_SEARCH_EDGE_LIMIT: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    Diameter,
    StrongDiameter,
}

impl Objective {
    pub fn name(self) -> &'static str {
        match self {
            Objective::Diameter => "diam",
            Objective::StrongDiameter => "sdiam",
        }
    }

    pub fn bound(self, r: usize) -> u32 {
        match self {
            Objective::Diameter => diameter_bound(r),
            Objective::StrongDiameter => strong_diameter_bound(r),
        }
    }
}

fn restrict(
    g: &UndirectedMultigraph,
    vertices: &BTreeSet<VertexId>,
    edges: &BTreeSet<EdgeId>,
) -> Result<UndirectedMultigraph> {
    g.restrict(vertices, edges)
}

fn orientation_digest(o: &Orientation) -> String {
    let mut h = Sha256::new();
    for (e, a) in o.arcs() {
        h.update(format!("{}:{}>{};", e.0, a.tail.0, a.head.0).as_bytes());
    }
    let bytes = h.finalize();
    bytes.iter().take(8).map(|b| format!("{b:02x}")).collect()
}

fn fmt_vertices(vs: &BTreeSet<VertexId>) -> String {
    vs.iter().map(|v| v.0.to_string()).collect::<Vec<_>>().join(",")
}

/// The single-dominator orientation: as many edge-disjoint triangles through
/// the dominator as possible are made directed, then every remaining
/// dominated vertex is put on a directed triangle with an already oriented
/// neighbor. Leftover edges point from the smaller to the larger id.
pub fn orient_base_r1(sp: &StandardPair) -> Result<Orientation> {
    if sp.dominators.len() != 1 {
        return Err(Error::precondition(format!(
            "the base case needs exactly one dominator, got {}",
            sp.dominators.len()
        )));
    }
    let g = &sp.graph;
    let v = *sp.dominator_set().iter().next().expect("one dominator");
    let mut arcs: BTreeMap<EdgeId, Arc> = BTreeMap::new();
    let spoke = |arcs: &BTreeMap<EdgeId, Arc>, w: VertexId| -> Option<EdgeId> {
        g.edges_between(v, w).into_iter().find(|e| !arcs.contains_key(e))
    };
    let mut on_triangle: BTreeSet<VertexId> = BTreeSet::new();
    for a in g.neighbor_set(v) {
        for b in g.neighbor_set(a) {
            if b == v || b <= a || on_triangle.contains(&a) || on_triangle.contains(&b) || !g.has_edge(v, b) {
                continue;
            }
            let (Some(va), Some(vb)) = (spoke(&arcs, a), spoke(&arcs, b)) else {
                continue;
            };
            let Some(ab) = g.edges_between(a, b).into_iter().find(|e| !arcs.contains_key(e)) else {
                continue;
            };
            arcs.insert(va, Arc::new(v, a));
            arcs.insert(ab, Arc::new(a, b));
            arcs.insert(vb, Arc::new(b, v));
            on_triangle.extend([a, b]);
        }
    }
    loop {
        let pending: Vec<VertexId> = g
            .neighbor_set(v)
            .into_iter()
            .filter(|w| !on_triangle.contains(w))
            .collect();
        if pending.is_empty() {
            break;
        }
        let mut progressed = false;
        for w in pending {
            let spokes: Vec<EdgeId> = g
                .edges_between(v, w)
                .into_iter()
                .filter(|e| !arcs.contains_key(e))
                .collect();
            if spokes.len() >= 2 {
                arcs.insert(spokes[0], Arc::new(v, w));
                arcs.insert(spokes[1], Arc::new(w, v));
                on_triangle.insert(w);
                progressed = true;
                continue;
            }
            let Some(&vw) = spokes.first() else {
                on_triangle.insert(w);
                continue;
            };
            for u in g.neighbor_set(w) {
                if u == v {
                    continue;
                }
                let oriented = g.edges_between(v, u).into_iter().find_map(|e| arcs.get(&e).copied());
                let free = g.edges_between(w, u).into_iter().find(|e| !arcs.contains_key(e));
                if let (Some(vu), Some(wu)) = (oriented, free) {
                    if vu.tail == v {
                        arcs.insert(wu, Arc::new(u, w));
                        arcs.insert(vw, Arc::new(w, v));
                    } else {
                        arcs.insert(vw, Arc::new(v, w));
                        arcs.insert(wu, Arc::new(w, u));
                    }
                    on_triangle.insert(w);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            return Err(Error::breach("a dominated vertex cannot be put on a directed triangle"));
        }
    }
    for (e, a, b) in g.edges() {
        arcs.entry(e).or_insert_with(|| Arc::new(a.min(b), a.max(b)));
    }
    let o = Orientation::new(g, arcs)?;
    if !o.is_strong() {
        return Err(Error::breach("single-dominator orientation is not strong"));
    }
    Ok(o)
}

fn search_best(g: &UndirectedMultigraph, goal: Goal) -> Result<(u32, Orientation)> {
    minimize(g, &BTreeMap::new(), &goal, &SearchOptions::default())?
        .best
        .ok_or_else(|| Error::breach("bridgeless subgraph without a strong orientation"))
}

/// Orientation of an alternative subgraph with three or four dominators
/// minimizing the composition cost, which must not exceed `3 r0 - 2`.
pub fn orient_small_alternative(
    g: &UndirectedMultigraph,
    dominators: &BTreeSet<VertexId>,
    a: &AlternativeSubgraph,
) -> Result<(Orientation, u32)> {
    let r0 = a.s();
    if !(3..=4).contains(&r0) {
        return Err(Error::precondition(format!(
            "expected three or four dominators, got {r0}"
        )));
    }
    let h = a.subgraph(g)?;
    let (m, o) = search_best(&h, Goal::MValue(dominators.clone()))?;
    let limit = 3 * r0 as u32 - 2;
    if m > limit {
        return Err(Error::breach(format!(
            "alternative subgraph on {} has composition cost {m} > {limit}",
            fmt_vertices(&a.vertices())
        )));
    }
    Ok((o, m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Cycle,
    Triangle,
}

/// A two-dominator subgraph of one of the two edge-minimal shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub dominators: (VertexId, VertexId),
    pub kind: WitnessKind,
    pub vertices: BTreeSet<VertexId>,
    pub edges: BTreeSet<EdgeId>,
}

fn first_edge(g: &UndirectedMultigraph, a: VertexId, b: VertexId) -> Option<EdgeId> {
    g.edges_between(a, b).into_iter().next()
}

/// Every two-dominator witness in the pair, deduplicated by edge set and
/// sorted by dominators then edges.
pub fn witnesses(sp: &StandardPair) -> Vec<Witness> {
    let g = &sp.graph;
    let doms: Vec<VertexId> = sp.dominator_set().iter().copied().collect();
    let usable = |x: VertexId| -> Vec<VertexId> {
        let tri = isolated_triangle(g, x);
        g.neighbor_set(x)
            .into_iter()
            .filter(|&w| !matches!(tri, Some((a, b)) if w == a || w == b))
            .collect()
    };
    let mut found: BTreeMap<BTreeSet<EdgeId>, Witness> = BTreeMap::new();
    for (i, &x) in doms.iter().enumerate() {
        for &y in &doms[i + 1..] {
            let nx = usable(x);
            let ny = usable(y);
            let mut push = |kind, pairs: &[(VertexId, VertexId)]| {
                let mut edges = BTreeSet::new();
                for &(a, b) in pairs {
                    match first_edge(g, a, b) {
                        Some(e) => {
                            edges.insert(e);
                        }
                        None => return,
                    }
                }
                let vertices: BTreeSet<VertexId> = pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
                if vertices.len() != 6 {
                    return;
                }
                found.entry(edges.clone()).or_insert(Witness {
                    dominators: (x, y),
                    kind,
                    vertices,
                    edges,
                });
            };
            for (p, &x1) in nx.iter().enumerate() {
                for &x2 in &nx[p + 1..] {
                    for (q, &y1) in ny.iter().enumerate() {
                        for &y2 in &ny[q + 1..] {
                            if [x1, x2].contains(&y1) || [x1, x2].contains(&y2) {
                                continue;
                            }
                            for (a, b) in [(y1, y2), (y2, y1)] {
                                if g.has_edge(x1, a) && g.has_edge(x2, b) {
                                    push(
                                        WitnessKind::Cycle,
                                        &[(x, x1), (x1, a), (a, y), (y, b), (b, x2), (x2, x)],
                                    );
                                }
                            }
                            for (c, d) in [(x1, x2), (x2, x1)] {
                                if g.has_edge(c, d) && g.has_edge(c, y1) && g.has_edge(c, y2) {
                                    push(
                                        WitnessKind::Triangle,
                                        &[(x, c), (x, d), (c, d), (c, y1), (c, y2), (y, y1), (y, y2)],
                                    );
                                }
                            }
                            for (c, d) in [(y1, y2), (y2, y1)] {
                                if g.has_edge(c, d) && g.has_edge(c, x1) && g.has_edge(c, x2) {
                                    push(
                                        WitnessKind::Triangle,
                                        &[(y, c), (y, d), (c, d), (c, x1), (c, x2), (x, x1), (x, x2)],
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    let mut out: Vec<Witness> = found.into_values().collect();
    out.sort_by(|a, b| a.dominators.cmp(&b.dominators).then(a.edges.cmp(&b.edges)));
    out
}

fn shared_dominators(a: &Witness, b: &Witness) -> usize {
    let da = [a.dominators.0, a.dominators.1];
    [b.dominators.0, b.dominators.1]
        .iter()
        .filter(|d| da.contains(d))
        .count()
}

/// First pair of witnesses sharing exactly one dominator and exactly one
/// edge.
pub fn find_merged_pair(ws: &[Witness]) -> Option<(&Witness, &Witness)> {
    for (i, a) in ws.iter().enumerate() {
        for b in &ws[i + 1..] {
            if shared_dominators(a, b) == 1 && a.edges.intersection(&b.edges).count() == 1 {
                return Some((a, b));
            }
        }
    }
    None
}

fn union_of<'a>(ws: impl IntoIterator<Item = &'a Witness>) -> (BTreeSet<VertexId>, BTreeSet<EdgeId>) {
    let mut v = BTreeSet::new();
    let mut e = BTreeSet::new();
    for w in ws {
        v.extend(w.vertices.iter().copied());
        e.extend(w.edges.iter().copied());
    }
    (v, e)
}

/// Orientation of the union of two merged witnesses with composition cost
/// at most 7. The union must be one of the six merged shapes.
pub fn orient_merged_pair(
    g: &UndirectedMultigraph,
    dominators: &BTreeSet<VertexId>,
    vertices: &BTreeSet<VertexId>,
    edges: &BTreeSet<EdgeId>,
) -> Result<(Orientation, u32)> {
    let h = restrict(g, vertices, edges)?;
    let hd: BTreeSet<VertexId> = vertices.intersection(dominators).copied().collect();
    if !merged_shapes()
        .iter()
        .any(|s| role_isomorphic(&h, &hd, &s.graph, &s.dominators))
    {
        return Err(Error::ShapeMismatch(format!(
            "union on {} is none of the merged shapes",
            fmt_vertices(vertices)
        )));
    }
    let (m, o) = search_best(&h, Goal::MValue(dominators.clone()))?;
    if m > 7 {
        return Err(Error::breach(format!(
            "merged pair on {} has composition cost {m} > 7",
            fmt_vertices(vertices)
        )));
    }
    Ok((o, m))
}

#[derive(Clone, Debug)]
pub struct ForestEdge {
    pub a: VertexId,
    pub b: VertexId,
    pub witness: Witness,
}

/// Dominators joined whenever some witness contains both.
#[derive(Clone, Debug)]
pub struct AuxiliaryForest {
    pub nodes: Vec<VertexId>,
    pub edges: Vec<ForestEdge>,
}

impl AuxiliaryForest {
    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|e| e.a == v || e.b == v).count()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = self
            .edges
            .iter()
            .filter_map(|e| {
                if e.a == v {
                    Some(e.b)
                } else if e.b == v {
                    Some(e.a)
                } else {
                    None
                }
            })
            .collect();
        out.sort();
        out
    }

    pub fn edge(&self, a: VertexId, b: VertexId) -> Option<&ForestEdge> {
        self.edges
            .iter()
            .find(|e| (e.a == a && e.b == b) || (e.a == b && e.b == a))
    }

    /// Smallest node of degree at least three.
    pub fn star_center(&self) -> Option<VertexId> {
        self.nodes.iter().copied().find(|&v| self.degree(v) >= 3)
    }

    /// A longest path, ties broken by the lexicographically smallest node
    /// sequence (each path read from its smaller end).
    pub fn longest_path(&self) -> Vec<VertexId> {
        let mut best: Vec<VertexId> = Vec::new();
        for &s in &self.nodes {
            let mut stack = vec![vec![s]];
            while let Some(path) = stack.pop() {
                let last = *path.last().expect("nonempty");
                let mut extended = false;
                for w in self.neighbors(last) {
                    if !path.contains(&w) {
                        let mut p = path.clone();
                        p.push(w);
                        stack.push(p);
                        extended = true;
                    }
                }
                if !extended {
                    let mut p = path;
                    if p.first() > p.last() {
                        p.reverse();
                    }
                    if p.len() > best.len() || (p.len() == best.len() && p < best) {
                        best = p;
                    }
                }
            }
        }
        best
    }
}

/// The auxiliary forest of a pair whose maximum alternative subgraphs have
/// two dominators and no merged witness pair.
pub fn build_forest(sp: &StandardPair, ws: &[Witness]) -> Result<AuxiliaryForest> {
    let nodes: Vec<VertexId> = sp.dominator_set().iter().copied().collect();
    let mut edges: Vec<ForestEdge> = Vec::new();
    for w in ws {
        let (a, b) = w.dominators;
        if !edges.iter().any(|e| e.a == a && e.b == b) {
            edges.push(ForestEdge {
                a,
                b,
                witness: w.clone(),
            });
        }
    }
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if !e.witness.edges.is_disjoint(&f.witness.edges) {
                return Err(Error::breach(format!(
                    "witnesses for {}-{} and {}-{} share an edge",
                    e.a, e.b, f.a, f.b
                )));
            }
        }
    }
    let mut parent: BTreeMap<VertexId, VertexId> = nodes.iter().map(|&v| (v, v)).collect();
    fn root(parent: &mut BTreeMap<VertexId, VertexId>, v: VertexId) -> VertexId {
        let mut r = v;
        while parent[&r] != r {
            r = parent[&r];
        }
        parent.insert(v, r);
        r
    }
    for e in &edges {
        let (ra, rb) = (root(&mut parent, e.a), root(&mut parent, e.b));
        if ra == rb {
            return Err(Error::breach(format!(
                "auxiliary graph has a cycle through {}-{}",
                e.a, e.b
            )));
        }
        parent.insert(ra, rb);
    }
    let forest = AuxiliaryForest { nodes, edges };
    if let Some(&v) = forest.nodes.iter().find(|&&v| forest.degree(v) == 0) {
        return Err(Error::breach(format!("dominator {v} lies in no two-dominator witness")));
    }
    Ok(forest)
}

fn edge_set_orientation(g: &UndirectedMultigraph, arcs: &BTreeMap<EdgeId, Arc>) -> Result<Orientation> {
    Orientation::new(g, arcs.clone())
}

/// Extends a strong orientation of a bridgeless subgraph containing every
/// dominator to the whole graph with diameter at most
/// `max{d0, d1 + 2, d2 + 4}` of the subgraph orientation.
pub fn extend_cover(
    sp: &StandardPair,
    h_vertices: &BTreeSet<VertexId>,
    oriented_h: &Orientation,
) -> Result<Orientation> {
    let g = &sp.graph;
    let doms = sp.dominator_set();
    if !doms.is_subset(h_vertices) {
        return Err(Error::precondition("the covered subgraph misses a dominator"));
    }
    if !oriented_h.is_strong() {
        return Err(Error::NotStrong);
    }
    let target = class_distances(oriented_h, doms)?.cover_bound();
    let mut arcs: BTreeMap<EdgeId, Arc> = oriented_h.arcs().collect();
    let outside: BTreeSet<VertexId> = g.vertices().filter(|v| !h_vertices.contains(v)).collect();
    let free = |arcs: &BTreeMap<EdgeId, Arc>, a: VertexId, b: VertexId| {
        g.edges_between(a, b).into_iter().find(|e| !arcs.contains_key(e))
    };
    let oriented = |arcs: &BTreeMap<EdgeId, Arc>, a: VertexId, b: VertexId| {
        g.edges_between(a, b).into_iter().find_map(|e| arcs.get(&e).copied())
    };
    let mut done: BTreeSet<VertexId> = BTreeSet::new();
    for &v in doms {
        let owned: Vec<VertexId> = g.neighbor_set(v).into_iter().filter(|w| outside.contains(w)).collect();
        for &a in &owned {
            for &b in &owned {
                if a >= b || done.contains(&a) || done.contains(&b) {
                    continue;
                }
                if let (Some(va), Some(ab), Some(vb)) = (free(&arcs, v, a), free(&arcs, a, b), free(&arcs, v, b)) {
                    arcs.insert(va, Arc::new(v, a));
                    arcs.insert(ab, Arc::new(a, b));
                    arcs.insert(vb, Arc::new(b, v));
                    done.extend([a, b]);
                }
            }
        }
    }
    loop {
        let mut progressed = false;
        for &w in &outside {
            if done.contains(&w) {
                continue;
            }
            let Some(v) = crate::domination::dominator_of(g, doms, w) else {
                return Err(Error::breach(format!("{w} has no unique dominator")));
            };
            let Some(vw) = free(&arcs, v, w) else {
                done.insert(w);
                continue;
            };
            for u in g.neighbor_set(w) {
                if u == v {
                    continue;
                }
                if let (Some(vu), Some(wu)) = (oriented(&arcs, v, u), free(&arcs, w, u)) {
                    if vu.tail == v {
                        arcs.insert(wu, Arc::new(u, w));
                        arcs.insert(vw, Arc::new(w, v));
                    } else {
                        arcs.insert(vw, Arc::new(v, w));
                        arcs.insert(wu, Arc::new(w, u));
                    }
                    done.insert(w);
                    progressed = true;
                    break;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let primary = residual_by_short_cycles(g, &arcs)?;
    if primary.is_strong() && diameter(&primary)? <= target {
        return Ok(primary);
    }
    let residual = g.edge_count() - arcs.len();
    if residual > EXTENSION_SEARCH_EDGE_LIMIT {
        return Err(Error::breach(format!(
            "extension misses {target} and {residual} residual edges are too many to search"
        )));
    }
    let opts = SearchOptions {
        upper: Some(target + 1),
        stop_at: Some(target),
        ..SearchOptions::default()
    };
    let outcome = minimize(g, &arcs, &Goal::Diameter, &opts)?;
    match outcome.best {
        Some((d, o)) if d <= target => Ok(o),
        _ => Err(Error::breach(format!("no extension reaches the cover bound {target}"))),
    }
}

/// Orients every unassigned edge `a b`, in id order, as the arc closing the
/// shorter directed cycle through its ends.
fn residual_by_short_cycles(g: &UndirectedMultigraph, fixed: &BTreeMap<EdgeId, Arc>) -> Result<Orientation> {
    let mut arcs = fixed.clone();
    let pending: Vec<(EdgeId, VertexId, VertexId)> = g.edges().filter(|(e, _, _)| !arcs.contains_key(e)).collect();
    for (e, a, b) in pending {
        let dist = |arcs: &BTreeMap<EdgeId, Arc>, s: VertexId, t: VertexId| -> u32 {
            let mut seen = BTreeSet::from([s]);
            let mut frontier = vec![s];
            let mut d = 0;
            while !frontier.is_empty() {
                if frontier.contains(&t) {
                    return d;
                }
                d += 1;
                let mut next = Vec::new();
                for &x in &frontier {
                    for &f in g.incident(x) {
                        if let Some(arc) = arcs.get(&f) {
                            if arc.tail == x && seen.insert(arc.head) {
                                next.push(arc.head);
                            }
                        }
                    }
                }
                frontier = next;
            }
            u32::MAX
        };
        let back = dist(&arcs, b, a);
        let forth = dist(&arcs, a, b);
        let arc = if back < forth || (back == forth && a < b) {
            Arc::new(a, b)
        } else {
            Arc::new(b, a)
        };
        arcs.insert(e, arc);
    }
    edge_set_orientation(g, &arcs)
}

/// How one level of the recursion was handled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepKind {
    Base,
    LargeAlternative { r0: usize },
    SmallAlternative { r0: usize },
    MergedPair,
    Star,
    Chain { length: usize },
    StrongContract { r0: usize },
}

impl StepKind {
    pub fn name(&self) -> String {
        match self {
            StepKind::Base => "base".into(),
            StepKind::LargeAlternative { r0 } => format!("alternative_r0_{r0}"),
            StepKind::SmallAlternative { r0 } => format!("small_alternative_r0_{r0}"),
            StepKind::MergedPair => "merged_pair".into(),
            StepKind::Star => "star".into(),
            StepKind::Chain { length } => format!("chain_{length}"),
            StepKind::StrongContract { r0 } => format!("strong_contract_r0_{r0}"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PlanStep {
    pub kind: StepKind,
    pub r: usize,
    pub graph: UndirectedMultigraph,
    pub dominators: BTreeSet<VertexId>,
    pub subgraph: BTreeSet<VertexId>,
    /// The orientation chosen for the contracted or covering subgraph.
    pub sub_orientation: Option<Orientation>,
    /// Present when the level continues with a quotient.
    pub quotient: Option<QuotientMap>,
    pub result: Orientation,
    pub bound: u32,
    pub measured: u32,
    pub bound_note: String,
}

#[derive(Clone, Debug)]
pub struct OrientationPlan {
    pub objective: Objective,
    pub gamma: usize,
    pub bound: u32,
    pub original: UndirectedMultigraph,
    pub standard: StandardPair,
    pub steps: Vec<PlanStep>,
    pub standard_orientation: Orientation,
    pub orientation: Orientation,
}

impl OrientationPlan {
    /// One line per step, then the final orientation digest.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "plan objective={} gamma={} bound={}",
            self.objective.name(),
            self.gamma,
            self.bound
        );
        for (i, s) in self.steps.iter().enumerate() {
            let _ = writeln!(
                out,
                "step={i} op={} r={} vertices={} orientation={} bound={} measured={} arithmetic={}",
                s.kind.name(),
                s.r,
                fmt_vertices(&s.subgraph),
                s.sub_orientation.as_ref().map_or("-".into(), orientation_digest),
                s.bound,
                s.measured,
                s.bound_note
            );
        }
        let _ = write!(out, "final orientation={}", orientation_digest(&self.orientation));
        out
    }

    pub fn hash(&self) -> String {
        let digest = Sha256::digest(self.dump().as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Rebuilds the final orientation from the recorded sub-orientations:
    /// the deepest level's result is composed upward through each quotient,
    /// then pulled back to the input graph.
    pub fn replay(&self) -> Result<Orientation> {
        let last = self.steps.last().ok_or_else(|| Error::breach("empty plan"))?;
        if last.quotient.is_some() {
            return Err(Error::breach("plan ends with a contraction"));
        }
        let mut current = last.result.clone();
        for s in self.steps.iter().rev().skip(1) {
            let (Some(sub), Some(qm)) = (&s.sub_orientation, &s.quotient) else {
                return Err(Error::breach("inner plan step without a quotient"));
            };
            current = compose(&s.graph, sub, &current, qm)?;
            if current != s.result {
                return Err(Error::breach(format!("replay diverges at {}", s.kind.name())));
            }
        }
        if current != self.standard_orientation {
            return Err(Error::breach("replay misses the standardized orientation"));
        }
        pull_back(&self.standard.provenance, &self.original, &current)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundReport {
    pub gamma: usize,
    pub objective: Objective,
    pub formula_bound: u32,
    pub diameter: u32,
    pub strong_diameter_upper: u32,
    pub strong_diameter_exact: Option<u32>,
    pub standard_diameter: u32,
}

impl BoundReport {
    pub fn measured(&self) -> u32 {
        match self.objective {
            Objective::Diameter => self.diameter,
            Objective::StrongDiameter => self.strong_diameter_upper,
        }
    }

    pub fn holds(&self) -> bool {
        self.measured() <= self.formula_bound
    }
}

struct Orienter {
    objective: Objective,
    steps: Vec<PlanStep>,
}

impl Orienter {
    fn breach(&self, message: String) -> Error {
        let mut trace = String::new();
        for (i, s) in self.steps.iter().enumerate() {
            let _ = writeln!(
                trace,
                "step={i} op={} r={} vertices={} bound={} measured={}",
                s.kind.name(),
                s.r,
                fmt_vertices(&s.subgraph),
                s.bound,
                s.measured
            );
        }
        Error::InvariantBreach { message, trace }
    }

    fn measure(&self, o: &Orientation) -> Result<u32> {
        match self.objective {
            Objective::Diameter => diameter(o),
            Objective::StrongDiameter => strong_diameter_upper(o),
        }
    }

    /// Orients one standard pair, appending its steps.
    fn level(&mut self, sp: &StandardPair) -> Result<Orientation> {
        let r = sp.dominators.len();
        let doms = sp.dominator_set().clone();
        let bound = self.objective.bound(r);
        if r == 1 {
            let o = orient_base_r1(sp)?;
            let measured = self.measure(&o)?;
            let limit = match self.objective {
                Objective::Diameter => 4,
                Objective::StrongDiameter => 6,
            };
            self.steps.push(PlanStep {
                kind: StepKind::Base,
                r,
                graph: sp.graph.clone(),
                dominators: doms.clone(),
                subgraph: sp.graph.vertices().collect(),
                sub_orientation: None,
                quotient: None,
                result: o.clone(),
                bound: limit,
                measured,
                bound_note: format!("single dominator <= {limit}"),
            });
            if measured > limit {
                return Err(self.breach(format!("single-dominator level measured {measured} > {limit}")));
            }
            return Ok(o);
        }
        let h0 = max_alternative(sp)?.subgraph;
        let r0 = h0.s();
        match self.objective {
            Objective::StrongDiameter => {
                let h = h0.subgraph(&sp.graph)?;
                let mut subs = vec![ear_orientation(&h)?];
                if h.edge_count() <= CHAIN_SEARCH_EDGE_LIMIT {
                    subs.insert(0, search_best(&h, Goal::MValue(doms.clone()))?.1);
                    subs.push(search_best(&h, Goal::StrongUpper)?.1);
                }
                let mut candidates = Vec::new();
                for o in subs {
                    let rev = o.reversed();
                    for c in [o, rev] {
                        if !candidates.contains(&c) {
                            candidates.push(c);
                        }
                    }
                }
                let arcs = h.edge_count();
                let note_bound = sdiam_compose_bound(r, r0, arcs)?;
                self.contract(
                    sp,
                    StepKind::StrongContract { r0 },
                    h0.vertices(),
                    candidates,
                    bound,
                    format!("7({r}-{r0}+1)-1+min(2(3*{r0}-1),{arcs}) = {note_bound}"),
                )
            }
            Objective::Diameter => {
                if r0 >= 5 {
                    let sub = ear_orientation(&h0.subgraph(&sp.graph)?)?;
                    let m = m_value(&sub, &doms)?;
                    let note = composition_bound(r, r0, m);
                    return self.contract(
                        sp,
                        StepKind::LargeAlternative { r0 },
                        h0.vertices(),
                        vec![sub],
                        note.min(bound),
                        format!("ceil((7({r}-{r0}+1)+1)/2)+{m} = {note}"),
                    );
                }
                if r0 >= 3 {
                    let (sub, m) = orient_small_alternative(&sp.graph, &doms, &h0)?;
                    let note = composition_bound(r, r0, m);
                    return self.contract(
                        sp,
                        StepKind::SmallAlternative { r0 },
                        h0.vertices(),
                        vec![sub],
                        note.min(bound),
                        format!("ceil((7({r}-{r0}+1)+1)/2)+{m} = {note}"),
                    );
                }
                self.two_dominator_level(sp, &doms, bound)
            }
        }
    }

    fn two_dominator_level(&mut self, sp: &StandardPair, doms: &BTreeSet<VertexId>, bound: u32) -> Result<Orientation> {
        let r = doms.len();
        let ws = witnesses(sp);
        if let Some((a, b)) = find_merged_pair(&ws) {
            let (v, e) = union_of([a, b]);
            let (sub, m) = orient_merged_pair(&sp.graph, doms, &v, &e)?;
            let note = composition_bound(r, 3, m);
            return self.contract(
                sp,
                StepKind::MergedPair,
                v,
                vec![sub],
                note.min(bound),
                format!("ceil((7({r}-3+1)+1)/2)+{m} = {note}"),
            );
        }
        let forest = build_forest(sp, &ws)?;
        if let Some(c) = forest.star_center() {
            let leaves: Vec<VertexId> = forest.neighbors(c).into_iter().take(3).collect();
            let chosen: Vec<&Witness> = leaves
                .iter()
                .map(|&l| &forest.edge(c, l).expect("forest edge").witness)
                .collect();
            let (v, e) = union_of(chosen);
            let h = restrict(&sp.graph, &v, &e)?;
            let (m, sub) = search_best(&h, Goal::MValue(doms.clone()))?;
            if m > 10 {
                return Err(self.breach(format!("star at {c} has composition cost {m} > 10")));
            }
            let note = composition_bound(r, 4, m);
            return self.contract(
                sp,
                StepKind::Star,
                v,
                vec![sub],
                note.min(bound),
                format!("ceil((7({r}-4+1)+1)/2)+{m} = {note}"),
            );
        }
        let path = forest.longest_path();
        let chain: Vec<&Witness> = path
            .windows(2)
            .map(|p| &forest.edge(p[0], p[1]).expect("forest edge").witness)
            .collect();
        let (v, e) = union_of(chain.iter().copied());
        if !doms.is_subset(&v) {
            return Err(self.breach(format!(
                "longest chain {} leaves dominators uncovered",
                fmt_vertices(&path.iter().copied().collect())
            )));
        }
        let h = restrict(&sp.graph, &v, &e)?;
        let sub = if e.len() <= CHAIN_SEARCH_EDGE_LIMIT {
            search_best(&h, Goal::Cover(doms.clone()))?.1
        } else {
            let mut arcs = BTreeMap::new();
            for w in &chain {
                let part = restrict(&sp.graph, &w.vertices, &w.edges)?;
                let (_, o) = search_best(&part, Goal::MValue(doms.clone()))?;
                arcs.extend(o.arcs());
            }
            Orientation::new(&h, arcs)?
        };
        if !sub.is_strong() {
            return Err(self.breach("chain orientation is not strong".into()));
        }
        let cover = class_distances(&sub, doms)?.cover_bound();
        if cover > bound {
            return Err(self.breach(format!("chain cover bound {cover} exceeds {bound}")));
        }
        let o = extend_cover(sp, &v, &sub)?;
        let measured = self.measure(&o)?;
        self.steps.push(PlanStep {
            kind: StepKind::Chain { length: path.len() },
            r,
            graph: sp.graph.clone(),
            dominators: doms.clone(),
            subgraph: v,
            sub_orientation: Some(sub),
            quotient: None,
            result: o.clone(),
            bound: cover,
            measured,
            bound_note: format!("max(d0,d1+2,d2+4) = {cover} <= {bound}"),
        });
        if measured > cover {
            return Err(self.breach(format!("chain level measured {measured} > {cover}")));
        }
        Ok(o)
    }

    fn contract(
        &mut self,
        sp: &StandardPair,
        kind: StepKind,
        h_vertices: BTreeSet<VertexId>,
        candidates: Vec<Orientation>,
        bound: u32,
        note: String,
    ) -> Result<Orientation> {
        let r = sp.dominators.len();
        let (q, qm) = s_quotient(sp, &h_vertices)?;
        let index = self.steps.len();
        self.steps.push(PlanStep {
            kind,
            r,
            graph: sp.graph.clone(),
            dominators: sp.dominator_set().clone(),
            subgraph: h_vertices,
            sub_orientation: candidates.first().cloned(),
            quotient: Some(qm.clone()),
            result: Orientation::from_fn(&sp.graph, |_, _, _| true),
            bound,
            measured: 0,
            bound_note: note,
        });
        let oq = self.level(&q)?;
        let mut best: Option<(u32, Orientation, Orientation)> = None;
        for sub in candidates {
            let o = compose(&sp.graph, &sub, &oq, &qm)?;
            let measured = self.measure(&o)?;
            if best.as_ref().is_none_or(|(b, _, _)| measured < *b) {
                best = Some((measured, sub, o));
            }
            if measured <= bound {
                break;
            }
        }
        let (measured, sub, o) = best.ok_or_else(|| Error::breach("no orientation offered for the contracted part"))?;
        let step = &mut self.steps[index];
        step.sub_orientation = Some(sub);
        step.result = o.clone();
        step.measured = measured;
        if measured > bound {
            return Err(self.breach(format!("level with {r} dominators measured {measured} > {bound}")));
        }
        Ok(o)
    }
}

/// Orients a bridgeless connected graph. Without `d` a minimum dominating
/// set is computed. The result is strong and, for the diameter objective,
/// has diameter at most `ceil((7 gamma + 1) / 2)`; for the strong objective
/// every pair has `d(u,v) + d(v,u) <= 7 gamma - 1`.
pub fn orient(
    g: &UndirectedMultigraph,
    d: Option<&DominatingSet>,
    objective: Objective,
) -> Result<(Orientation, OrientationPlan, BoundReport)> {
    if g.vertex_count() == 0 {
        return Err(Error::precondition("empty graph"));
    }
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    g.check_bridgeless()?;
    let owned;
    let d = match d {
        Some(d) => d,
        None => {
            owned = minimum_dominating_set(g);
            &owned
        }
    };
    let sp = standardize(g, d)?;
    let gamma = d.len();
    let bound = objective.bound(gamma);
    let mut orienter = Orienter {
        objective,
        steps: Vec::new(),
    };
    let standard_orientation = orienter.level(&sp)?;
    let o = pull_back(&sp.provenance, g, &standard_orientation)?;
    if !o.is_strong() {
        return Err(orienter.breach("pulled-back orientation is not strong".into()));
    }
    let rep: DistanceReport = distance_report(&o, d.members(), objective == Objective::StrongDiameter)?;
    let standard_diameter = diameter(&standard_orientation)?;
    let report = BoundReport {
        gamma,
        objective,
        formula_bound: bound,
        diameter: rep.diameter,
        strong_diameter_upper: rep.strong_diameter_upper,
        strong_diameter_exact: rep.strong_diameter_exact,
        standard_diameter,
    };
    if !report.holds() {
        return Err(orienter.breach(format!(
            "final {} {} exceeds {bound}",
            objective.name(),
            report.measured()
        )));
    }
    if objective == Objective::Diameter && report.diameter > standard_diameter {
        return Err(orienter.breach("pull-back increased the diameter".into()));
    }
    let plan = OrientationPlan {
        objective,
        gamma,
        bound,
        original: g.clone(),
        standard: sp,
        steps: orienter.steps,
        standard_orientation,
        orientation: o.clone(),
    };
    Ok((o, plan, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    #[test]
    fn base_case_on_small_shapes() {
        let tri = shapes::friendship(1).standard_pair().unwrap();
        assert_eq!(diameter(&orient_base_r1(&tri).unwrap()).unwrap(), 2);
        let bow = shapes::bowtie().standard_pair().unwrap();
        let o = orient_base_r1(&bow).unwrap();
        assert_eq!(diameter(&o).unwrap(), 4);
        assert_eq!(strong_diameter_upper(&o).unwrap(), 6);
        let f3 = shapes::friendship(3).standard_pair().unwrap();
        assert_eq!(diameter(&orient_base_r1(&f3).unwrap()).unwrap(), 4);
    }

    #[test]
    fn base_case_rejects_two_dominators() {
        let sp = shapes::h01().standard_pair().unwrap();
        assert!(orient_base_r1(&sp).unwrap_err().is_precondition());
    }

    #[test]
    fn witnesses_of_templates() {
        let sp = shapes::h01().standard_pair().unwrap();
        let ws = witnesses(&sp);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].kind, WitnessKind::Cycle);
        let sp = shapes::h02().standard_pair().unwrap();
        let ws = witnesses(&sp);
        assert_eq!(ws.len(), 1);
        assert_eq!(ws[0].kind, WitnessKind::Triangle);
    }

    #[test]
    fn longest_path_breaks_ties_lexicographically() {
        let w = |a: u32, b: u32| ForestEdge {
            a: VertexId(a),
            b: VertexId(b),
            witness: Witness {
                dominators: (VertexId(a), VertexId(b)),
                kind: WitnessKind::Cycle,
                vertices: BTreeSet::new(),
                edges: BTreeSet::new(),
            },
        };
        let f = AuxiliaryForest {
            nodes: (0..5).map(VertexId).collect(),
            edges: vec![w(3, 4), w(0, 1), w(1, 2)],
        };
        assert_eq!(f.longest_path(), vec![VertexId(0), VertexId(1), VertexId(2)]);
        assert_eq!(f.star_center(), None);
    }
}
