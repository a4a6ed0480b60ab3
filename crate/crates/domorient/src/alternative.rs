//! Alternative subgraphs: connected bridgeless subgraphs assembled from
//! dominator triples `(x, x1, x2)` in which every listed dominator is adjacent
//! to exactly its two listed vertices.
//!
//! [`find_alternative_from`] builds one through a given dominator by
//! repeatedly closing a cycle off a maximal typed path and contracting it,
//! then unwinding the contractions. [`max_alternative`] maximizes the number
//! of dominators, and [`brute_force_alternative`] is the exhaustive reference.

use std::collections::{BTreeMap, BTreeSet};

use crate::domination::{dominator_of, is_standard, isolated_triangle, StandardPair};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, UndirectedMultigraph, VertexId};
use crate::quotient::{contract_subdivide, QuotientMap};
use crate::shapes;

/// Largest dominator count for which [`max_alternative`] is exact.
pub const EXACT_ALTERNATIVE_LIMIT: usize = 12;

/// Largest vertex count accepted by [`brute_force_alternative`].
pub const BRUTE_FORCE_VERTEX_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlternativeSubgraph {
    dominators: Vec<VertexId>,
    dominated: BTreeMap<VertexId, (VertexId, VertexId)>,
    edges: BTreeSet<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AltViolation {
    Empty,
    NotADominator(VertexId),
    RepeatedVertex(VertexId),
    WrongNeighborhood(VertexId),
    UnknownEdge(EdgeId),
    EdgeLeavesVertexSet(EdgeId),
    Disconnected,
    HasBridge,
    StrayVertex(VertexId),
}

impl AlternativeSubgraph {
    pub fn new(
        dominators: Vec<VertexId>,
        dominated: BTreeMap<VertexId, (VertexId, VertexId)>,
        edges: BTreeSet<EdgeId>,
    ) -> Self {
        AlternativeSubgraph {
            dominators,
            dominated,
            edges,
        }
    }

    /// Reads the triples off a subgraph: each dominator in `vertices` must
    /// have exactly two neighbors over `edges`.
    pub fn from_subgraph(
        g: &UndirectedMultigraph,
        dominator_set: &BTreeSet<VertexId>,
        vertices: &BTreeSet<VertexId>,
        edges: &BTreeSet<EdgeId>,
        first: Option<VertexId>,
    ) -> std::result::Result<Self, AltViolation> {
        let sub = g.restrict(vertices, edges).map_err(|_| AltViolation::Disconnected)?;
        let mut dominators: Vec<VertexId> = vertices.iter().copied().filter(|v| dominator_set.contains(v)).collect();
        if let Some(f) = first {
            if let Some(p) = dominators.iter().position(|&d| d == f) {
                dominators.remove(p);
                dominators.insert(0, f);
            }
        }
        let mut dominated = BTreeMap::new();
        for &x in &dominators {
            let nbrs: Vec<VertexId> = sub.neighbor_set(x).into_iter().collect();
            if nbrs.len() != 2 || sub.degree(x) != 2 {
                return Err(AltViolation::WrongNeighborhood(x));
            }
            dominated.insert(x, (nbrs[0], nbrs[1]));
        }
        let alt = AlternativeSubgraph {
            dominators,
            dominated,
            edges: edges.clone(),
        };
        alt.check(g, dominator_set)?;
        Ok(alt)
    }

    pub fn dominators(&self) -> &[VertexId] {
        &self.dominators
    }

    pub fn dominated(&self) -> &BTreeMap<VertexId, (VertexId, VertexId)> {
        &self.dominated
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn s(&self) -> usize {
        self.dominators.len()
    }

    pub fn vertices(&self) -> BTreeSet<VertexId> {
        self.dominated.iter().flat_map(|(&x, &(a, b))| [x, a, b]).collect()
    }

    /// Dominators with their unordered pairs; two subgraphs on the same
    /// triples have the same vertex set.
    pub fn triples(&self) -> BTreeSet<(VertexId, VertexId, VertexId)> {
        self.dominated
            .iter()
            .map(|(&x, &(a, b))| (x, a.min(b), a.max(b)))
            .collect()
    }

    pub fn subgraph(&self, g: &UndirectedMultigraph) -> Result<UndirectedMultigraph> {
        g.restrict(&self.vertices(), &self.edges)
    }

    /// The defining predicate, checked condition by condition.
    pub fn check(
        &self,
        g: &UndirectedMultigraph,
        dominator_set: &BTreeSet<VertexId>,
    ) -> std::result::Result<(), AltViolation> {
        if self.dominators.is_empty() {
            return Err(AltViolation::Empty);
        }
        let listed: BTreeSet<VertexId> = self.dominators.iter().copied().collect();
        let keys: BTreeSet<VertexId> = self.dominated.keys().copied().collect();
        if listed.len() != self.dominators.len() || listed != keys {
            return Err(AltViolation::Empty);
        }
        let mut seen = BTreeSet::new();
        for (&x, &(a, b)) in &self.dominated {
            if !dominator_set.contains(&x) {
                return Err(AltViolation::NotADominator(x));
            }
            for v in [x, a, b] {
                if !seen.insert(v) {
                    return Err(AltViolation::RepeatedVertex(v));
                }
            }
            for v in [a, b] {
                if dominator_set.contains(&v) {
                    return Err(AltViolation::WrongNeighborhood(x));
                }
            }
        }
        for &e in &self.edges {
            let Ok((u, v)) = g.endpoints(e) else {
                return Err(AltViolation::UnknownEdge(e));
            };
            if !seen.contains(&u) || !seen.contains(&v) {
                return Err(AltViolation::EdgeLeavesVertexSet(e));
            }
        }
        let sub = g.restrict(&seen, &self.edges).map_err(|_| AltViolation::Disconnected)?;
        for (&x, &(a, b)) in &self.dominated {
            if sub.degree(x) != 2 || sub.neighbor_set(x) != BTreeSet::from([a, b]) {
                return Err(AltViolation::WrongNeighborhood(x));
            }
        }
        for v in sub.vertices() {
            if sub.degree(v) == 0 && seen.len() > 1 {
                return Err(AltViolation::StrayVertex(v));
            }
        }
        match sub.bridges() {
            Err(_) => Err(AltViolation::Disconnected),
            Ok(b) if !b.is_empty() => Err(AltViolation::HasBridge),
            Ok(_) => Ok(()),
        }
    }

    pub fn is_valid(&self, g: &UndirectedMultigraph, dominator_set: &BTreeSet<VertexId>) -> bool {
        self.check(g, dominator_set).is_ok()
    }
}

/// Dominated neighbors of `x` that can appear next to it in an alternative
/// subgraph with at least two dominators (its isolated-triangle vertices
/// never can).
fn usable_neighbors(sp: &StandardPair, x: VertexId) -> Vec<VertexId> {
    let tri = isolated_triangle(&sp.graph, x);
    sp.graph
        .neighbor_set(x)
        .into_iter()
        .filter(|&w| !matches!(tri, Some((a, b)) if w == a || w == b))
        .collect()
}

fn induced_is_alternative(g: &UndirectedMultigraph, vertices: &BTreeSet<VertexId>) -> bool {
    match g.induced(vertices) {
        Ok(sub) => sub.is_bridgeless(),
        Err(_) => false,
    }
}

fn pairs_of(list: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for (i, &a) in list.iter().enumerate() {
        for &b in &list[i + 1..] {
            out.push((a, b));
        }
    }
    out
}

/// Every alternative subgraph with at least `min_s` dominators, one per
/// vertex set, each with the induced edge set. Any alternative subgraph has
/// the same vertex set as exactly one of them.
pub fn brute_force_alternative(sp: &StandardPair, min_s: usize) -> Result<Vec<AlternativeSubgraph>> {
    let g = &sp.graph;
    if g.vertex_count() > BRUTE_FORCE_VERTEX_LIMIT {
        return Err(Error::ExactLimit {
            what: "alternative enumeration vertex count",
            limit: BRUTE_FORCE_VERTEX_LIMIT,
            actual: g.vertex_count(),
        });
    }
    let doms: Vec<VertexId> = sp.dominator_set().iter().copied().collect();
    let options: Vec<Vec<(VertexId, VertexId)>> = doms
        .iter()
        .map(|&x| pairs_of(&g.neighbor_set(x).into_iter().collect::<Vec<_>>()))
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<(VertexId, VertexId, VertexId)> = Vec::new();
    fn rec(
        i: usize,
        doms: &[VertexId],
        options: &[Vec<(VertexId, VertexId)>],
        chosen: &mut Vec<(VertexId, VertexId, VertexId)>,
        min_s: usize,
        sp: &StandardPair,
        out: &mut Vec<AlternativeSubgraph>,
    ) {
        if chosen.len() + (doms.len() - i) < min_s.max(1) {
            return;
        }
        if i == doms.len() {
            let vertices: BTreeSet<VertexId> = chosen.iter().flat_map(|&(x, a, b)| [x, a, b]).collect();
            if induced_is_alternative(&sp.graph, &vertices) {
                let edges = sp.graph.induced_edges(&vertices);
                let alt = AlternativeSubgraph {
                    dominators: chosen.iter().map(|t| t.0).collect(),
                    dominated: chosen.iter().map(|&(x, a, b)| (x, (a, b))).collect(),
                    edges,
                };
                if alt.is_valid(&sp.graph, sp.dominator_set()) {
                    out.push(alt);
                }
            }
            return;
        }
        for &(a, b) in &options[i] {
            chosen.push((doms[i], a, b));
            rec(i + 1, doms, options, chosen, min_s, sp, out);
            chosen.pop();
        }
        rec(i + 1, doms, options, chosen, min_s, sp, out);
    }
    rec(0, &doms, &options, &mut chosen, min_s, sp, &mut out);
    Ok(out)
}

/// Removes edges in ascending id order while the predicate keeps holding.
pub fn edge_minimize(
    alt: &AlternativeSubgraph,
    g: &UndirectedMultigraph,
    dominator_set: &BTreeSet<VertexId>,
) -> AlternativeSubgraph {
    let mut cur = alt.clone();
    for e in alt.edges.iter() {
        let mut trial = cur.clone();
        trial.edges.remove(e);
        if trial.is_valid(g, dominator_set) {
            cur = trial;
        }
    }
    cur
}

#[derive(Clone, Debug)]
pub struct MaxAlternative {
    pub subgraph: AlternativeSubgraph,
    /// True when the dominator count is certified maximum.
    pub exact: bool,
}

/// An edge-minimal alternative subgraph with the largest number of
/// dominators (exact up to [`EXACT_ALTERNATIVE_LIMIT`] dominators).
pub fn max_alternative(sp: &StandardPair) -> Result<MaxAlternative> {
    if sp.dominators.len() < 2 {
        return Err(Error::precondition("at least two dominators are required"));
    }
    let mut seed: Option<AlternativeSubgraph> = None;
    for &x in sp.dominator_set() {
        if let Ok(a) = find_alternative_from(sp, x) {
            if seed.as_ref().is_none_or(|s| a.s() > s.s()) {
                seed = Some(a);
            }
        }
    }
    let exact = sp.dominators.len() <= EXACT_ALTERNATIVE_LIMIT;
    let mut best = seed;
    if exact {
        if let Some(found) = exact_maximum(sp, best.as_ref().map_or(1, |b| b.s())) {
            best = Some(found);
        }
    }
    let best = best.ok_or_else(|| Error::breach("no alternative subgraph with two dominators"))?;
    Ok(MaxAlternative {
        subgraph: edge_minimize(&best, &sp.graph, sp.dominator_set()),
        exact,
    })
}

/// Backtracking search for an alternative subgraph with more than `floor`
/// dominators, largest first.
fn exact_maximum(sp: &StandardPair, floor: usize) -> Option<AlternativeSubgraph> {
    let g = &sp.graph;
    let doms: Vec<VertexId> = sp.dominator_set().iter().copied().collect();
    let options: Vec<Vec<(VertexId, VertexId)>> = doms.iter().map(|&x| pairs_of(&usable_neighbors(sp, x))).collect();
    let owner: BTreeMap<VertexId, usize> = doms
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| g.neighbor_set(x).into_iter().map(move |w| (w, i)))
        .collect();

    struct Ctx<'a> {
        g: &'a UndirectedMultigraph,
        doms: &'a [VertexId],
        options: &'a [Vec<(VertexId, VertexId)>],
        owner: &'a BTreeMap<VertexId, usize>,
        target: usize,
        chosen: Vec<(usize, VertexId, VertexId)>,
        selected: BTreeSet<VertexId>,
        found: Option<Vec<(usize, VertexId, VertexId)>>,
    }

    impl Ctx<'_> {
        /// Every chosen dominated vertex still has a possible second neighbor
        /// besides its dominator.
        fn feasible(&self, decided: usize) -> bool {
            for &(i, a, b) in &self.chosen {
                for v in [a, b] {
                    let ok = self.g.neighbors(v).any(|w| {
                        if w == self.doms[i] {
                            return false;
                        }
                        if self.selected.contains(&w) {
                            return true;
                        }
                        match self.owner.get(&w) {
                            Some(&j) => j >= decided,
                            None => false,
                        }
                    });
                    if !ok {
                        return false;
                    }
                }
            }
            true
        }

        fn run(&mut self, i: usize) {
            if self.found.is_some() {
                return;
            }
            if self.chosen.len() + (self.doms.len() - i) < self.target {
                return;
            }
            if !self.feasible(i) {
                return;
            }
            if i == self.doms.len() {
                let vertices: BTreeSet<VertexId> =
                    self.chosen.iter().flat_map(|&(j, a, b)| [self.doms[j], a, b]).collect();
                if induced_is_alternative(self.g, &vertices) {
                    self.found = Some(self.chosen.clone());
                }
                return;
            }
            for &(a, b) in &self.options[i] {
                self.chosen.push((i, a, b));
                self.selected.extend([self.doms[i], a, b]);
                self.run(i + 1);
                self.selected.remove(&a);
                self.selected.remove(&b);
                self.selected.remove(&self.doms[i]);
                self.chosen.pop();
                if self.found.is_some() {
                    return;
                }
            }
            self.run(i + 1);
        }
    }

    for target in (floor + 1..=doms.len()).rev() {
        let mut ctx = Ctx {
            g,
            doms: &doms,
            options: &options,
            owner: &owner,
            target,
            chosen: Vec::new(),
            selected: BTreeSet::new(),
            found: None,
        };
        ctx.run(0);
        if let Some(chosen) = ctx.found {
            let vertices: BTreeSet<VertexId> = chosen.iter().flat_map(|&(j, a, b)| [doms[j], a, b]).collect();
            let edges = g.induced_edges(&vertices);
            return AlternativeSubgraph::from_subgraph(g, sp.dominator_set(), &vertices, &edges, None).ok();
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum H0Shape {
    H01,
    H02,
    Other,
}

/// Matches a two-dominator alternative subgraph against the 6-cycle shape
/// and the triangle-plus-square shape.
pub fn classify_h01_h02(a: &AlternativeSubgraph, g: &UndirectedMultigraph) -> Result<H0Shape> {
    if a.s() != 2 {
        return Err(Error::precondition(format!(
            "classification needs exactly two dominators, got {}",
            a.s()
        )));
    }
    let sub = a.subgraph(g)?;
    let doms: BTreeSet<VertexId> = a.dominators.iter().copied().collect();
    let h01 = shapes::h01();
    let h02 = shapes::h02();
    Ok(if shapes::role_isomorphic(&sub, &doms, &h01.graph, &h01.dominators) {
        H0Shape::H01
    } else if shapes::role_isomorphic(&sub, &doms, &h02.graph, &h02.dominators) {
        H0Shape::H02
    } else {
        H0Shape::Other
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnchorKind {
    Dominator,
    DominatedInCycle,
    DominatedByPredecessor,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleRecord {
    /// Closed walk without the repeated first vertex, starting at the anchor.
    pub cycle: Vec<VertexId>,
    pub anchor: VertexId,
    /// From the path end to the anchor.
    pub escape: Vec<VertexId>,
    pub anchor_kind: AnchorKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct BadPath {
    y: VertexId,
    z1: VertexId,
    z2: VertexId,
    anchor: VertexId,
    edges: [EdgeId; 3],
}

struct Level {
    graph: UndirectedMultigraph,
    dominators: BTreeSet<VertexId>,
    bad: BTreeMap<VertexId, BadPath>,
}

struct Step {
    record: CycleRecord,
    cycle_edges: BTreeSet<EdgeId>,
    quotient: QuotientMap,
}

/// Line-oriented record of one search, one line per forward or recovery
/// step.
#[derive(Clone, Debug, Default)]
pub struct SearchTrace {
    pub lines: Vec<String>,
}

impl SearchTrace {
    fn push(&mut self, line: String) {
        self.lines.push(line);
    }

    pub fn dump(&self) -> String {
        self.lines.join("\n")
    }
}

fn fmt_seq(vs: &[VertexId]) -> String {
    vs.iter().map(|v| v.0.to_string()).collect::<Vec<_>>().join(",")
}

fn edge_of(g: &UndirectedMultigraph, u: VertexId, v: VertexId) -> Option<EdgeId> {
    g.edges_between(u, v).into_iter().next()
}

/// Checks the `x (oo *)*` pattern: dominators at positions divisible by 3,
/// and each dominated pair split between the surrounding dominators.
fn is_typed_path(g: &UndirectedMultigraph, doms: &BTreeSet<VertexId>, path: &[VertexId]) -> bool {
    if path.is_empty() || path.len() % 3 != 1 {
        return false;
    }
    let distinct: BTreeSet<_> = path.iter().collect();
    if distinct.len() != path.len() {
        return false;
    }
    for w in path.windows(2) {
        if edge_of(g, w[0], w[1]).is_none() {
            return false;
        }
    }
    for (i, &v) in path.iter().enumerate() {
        let should_dominate = i % 3 == 0;
        if doms.contains(&v) != should_dominate {
            return false;
        }
        if i % 3 == 1 && dominator_of(g, doms, v) != Some(path[i - 1]) {
            return false;
        }
        if i % 3 == 2 && dominator_of(g, doms, v) != Some(path[i + 1]) {
            return false;
        }
    }
    true
}

/// Extends `path` at its dominator end by `a b y` blocks, smallest ids first,
/// until no extension is possible.
fn extend_typed_path(g: &UndirectedMultigraph, doms: &BTreeSet<VertexId>, mut path: Vec<VertexId>) -> Vec<VertexId> {
    let mut on_path: BTreeSet<VertexId> = path.iter().copied().collect();
    'grow: loop {
        let u = *path.last().expect("nonempty");
        for a in g.neighbor_set(u) {
            if on_path.contains(&a) || doms.contains(&a) {
                continue;
            }
            for b in g.neighbor_set(a) {
                if on_path.contains(&b) || doms.contains(&b) || b == u {
                    continue;
                }
                let Some(y) = dominator_of(g, doms, b) else {
                    continue;
                };
                if on_path.contains(&y) {
                    continue;
                }
                path.extend([a, b, y]);
                on_path.extend([a, b, y]);
                continue 'grow;
            }
        }
        return path;
    }
}

/// A maximal typed path starting at the dominator `from`.
pub fn maximal_typed_path(sp: &StandardPair, from: VertexId) -> Result<Vec<VertexId>> {
    if !sp.is_dominator(from) {
        return Err(Error::precondition(format!("{from} is not a dominator")));
    }
    Ok(extend_typed_path(&sp.graph, sp.dominator_set(), vec![from]))
}

/// Shortest path from the path end back to the path through fresh vertices,
/// as `(interior, endpoint)`. Length 3 escapes must end at a dominator.
fn shortest_escape(
    g: &UndirectedMultigraph,
    doms: &BTreeSet<VertexId>,
    path: &[VertexId],
) -> std::result::Result<(Vec<VertexId>, VertexId), String> {
    let u = *path.last().expect("nonempty");
    let on_path: BTreeSet<VertexId> = path.iter().copied().collect();
    let mut two = None;
    let mut three_dom = None;
    let mut three_any = false;
    for q1 in g.neighbor_set(u) {
        if on_path.contains(&q1) {
            continue;
        }
        for t in g.neighbor_set(q1) {
            if t != u && on_path.contains(&t) && two.is_none() {
                two = Some((vec![q1], t));
            }
        }
        for q2 in g.neighbor_set(q1) {
            if q2 == u || on_path.contains(&q2) {
                continue;
            }
            for t in g.neighbor_set(q2) {
                if t != u && t != q1 && on_path.contains(&t) {
                    three_any = true;
                    if doms.contains(&t) && three_dom.is_none() {
                        three_dom = Some((vec![q1, q2], t));
                    }
                }
            }
        }
    }
    if let Some(found) = two {
        return Ok(found);
    }
    if let Some(found) = three_dom {
        return Ok(found);
    }
    if three_any {
        return Err("length-3 escape does not end at a dominator".into());
    }
    Err("no escape of length at most 3".into())
}

fn heavy_degree_sum(g: &UndirectedMultigraph) -> usize {
    g.vertices().map(|v| g.degree(v)).filter(|&d| d >= 3).sum()
}

fn cycle_edges(g: &UndirectedMultigraph, cycle: &[VertexId]) -> Option<BTreeSet<EdgeId>> {
    let mut out = BTreeSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        out.insert(edge_of(g, a, b)?);
    }
    Some(out)
}

/// An alternative subgraph containing the dominator `x` and at least one
/// other dominator.
pub fn find_alternative_from(sp: &StandardPair, x: VertexId) -> Result<AlternativeSubgraph> {
    find_alternative_traced(sp, x).map(|(a, _)| a)
}

/// Same as [`find_alternative_from`], also returning the step trace.
pub fn find_alternative_traced(sp: &StandardPair, x: VertexId) -> Result<(AlternativeSubgraph, SearchTrace)> {
    if !sp.is_dominator(x) {
        return Err(Error::precondition(format!("{x} is not a dominator")));
    }
    if sp.dominators.len() < 2 {
        return Err(Error::precondition("at least two dominators are required"));
    }
    let mut trace = SearchTrace::default();
    let fail = |trace: &SearchTrace, msg: String| Error::breach_with(msg, trace.dump());

    let mut levels = vec![Level {
        graph: sp.graph.clone(),
        dominators: sp.dominator_set().clone(),
        bad: BTreeMap::new(),
    }];
    let mut steps: Vec<Step> = Vec::new();
    let mut carried = vec![x];
    let limit = sp.graph.vertex_count() + 1;

    let terminal: (BTreeSet<VertexId>, BTreeSet<EdgeId>) = loop {
        if steps.len() > limit {
            return Err(fail(&trace, "forward phase did not terminate".into()));
        }
        let i = steps.len();
        let level = levels.last().expect("nonempty");
        let (g, doms) = (&level.graph, &level.dominators);
        if !is_typed_path(g, doms, &carried) {
            return Err(fail(&trace, format!("carried path {} is not typed", fmt_seq(&carried))));
        }
        let path = extend_typed_path(g, doms, carried.clone());
        if path.len() < 4 {
            return Err(fail(&trace, format!("level {i}: path from {x} cannot be extended")));
        }
        let u = *path.last().expect("nonempty");
        let (interior, anchor) =
            shortest_escape(g, doms, &path).map_err(|m| fail(&trace, format!("level {i}: {m}")))?;
        let pos = path.iter().position(|&v| v == anchor).expect("anchor on path");
        let mut cycle: Vec<VertexId> = path[pos..].to_vec();
        cycle.extend(interior.iter().copied());
        let mut escape = vec![u];
        escape.extend(interior.iter().copied());
        escape.push(anchor);
        let members: BTreeSet<VertexId> = cycle.iter().copied().collect();
        let kind = if doms.contains(&anchor) {
            AnchorKind::Dominator
        } else {
            match dominator_of(g, doms, anchor) {
                Some(w) if members.contains(&w) => AnchorKind::DominatedInCycle,
                Some(w) if pos > 0 && path[pos - 1] == w => AnchorKind::DominatedByPredecessor,
                _ => {
                    return Err(fail(
                        &trace,
                        format!("level {i}: anchor {anchor} has no usable dominator"),
                    ))
                }
            }
        };
        trace.push(format!(
            "forward level={i} path={} escape={} anchor={} kind={:?} cycle={}",
            fmt_seq(&path),
            fmt_seq(&escape),
            anchor.0,
            kind,
            fmt_seq(&cycle)
        ));
        let c_edges = cycle_edges(g, &cycle).ok_or_else(|| fail(&trace, format!("level {i}: cycle is not closed")))?;
        if members.is_disjoint(doms) {
            return Err(fail(&trace, format!("level {i}: cycle holds no dominator")));
        }
        if kind != AnchorKind::DominatedByPredecessor
            && AlternativeSubgraph::from_subgraph(g, doms, &members, &c_edges, None).is_err()
        {
            return Err(fail(&trace, format!("level {i}: cycle is not alternative")));
        }
        if anchor == x {
            break (members, c_edges);
        }

        let (q, qdoms, qm) = contract_subdivide(g, doms, &members, false)?;
        let h = qm.contracted;
        let before = heavy_degree_sum(g);
        let after = heavy_degree_sum(&q);
        if after + 2 > before {
            return Err(fail(
                &trace,
                format!("level {i}: heavy degree sum went from {before} to {after}"),
            ));
        }
        if !is_standard(&q, &qdoms) {
            return Err(fail(&trace, format!("level {i}: contracted pair is not standard")));
        }

        let pred = path[pos - 1];
        let entry_edge = edge_of(g, pred, anchor).expect("path edge exists");
        let entry = qm
            .boundary
            .iter()
            .find(|b| b.original == entry_edge)
            .expect("path edge crosses the cycle boundary");
        let mut next_path = path[..pos].to_vec();
        next_path.extend(entry.created_vertices.iter().rev());
        next_path.push(h);

        let mut bad = BTreeMap::new();
        for (&a, bp) in &level.bad {
            let inside = [bp.y, bp.z1, bp.z2].map(|v| members.contains(&v));
            if members.contains(&a) {
                if inside.iter().any(|&b| b) {
                    continue;
                }
                let b = qm
                    .boundary
                    .iter()
                    .find(|b| b.original == bp.edges[2])
                    .ok_or_else(|| fail(&trace, format!("level {i}: lost bad path at {a}")))?;
                if b.subdivisions != 0 {
                    return Err(fail(&trace, format!("level {i}: bad path edge was subdivided")));
                }
                let moved = BadPath {
                    anchor: h,
                    edges: [bp.edges[0], bp.edges[1], b.created_edges[0]],
                    ..*bp
                };
                bad.insert(h, moved);
            } else if !inside.iter().any(|&b| b) {
                bad.insert(a, *bp);
            }
        }
        if kind == AnchorKind::DominatedByPredecessor {
            if entry.subdivisions != 2 {
                return Err(fail(
                    &trace,
                    format!("level {i}: predecessor edge not doubly subdivided"),
                ));
            }
            let created = BadPath {
                y: pred,
                z1: entry.created_vertices[1],
                z2: entry.created_vertices[0],
                anchor: h,
                edges: [entry.created_edges[2], entry.created_edges[1], entry.created_edges[0]],
            };
            if bad.insert(h, created).is_some() {
                return Err(fail(&trace, format!("level {i}: two bad paths share anchor {h}")));
            }
        }
        steps.push(Step {
            record: CycleRecord {
                cycle,
                anchor,
                escape,
                anchor_kind: kind,
            },
            cycle_edges: c_edges,
            quotient: qm,
        });
        levels.push(Level {
            graph: q,
            dominators: qdoms,
            bad,
        });
        carried = next_path;
    };

    let mut recovery = Recovery {
        levels: &levels,
        steps: &steps,
        trace: &mut trace,
        calls: 0,
        retreats: 0,
    };
    let outcome = recovery.run(steps.len(), terminal.0, terminal.1);
    let summary = format!("recovery calls={} retreats={}", recovery.calls, recovery.retreats);
    trace.push(summary);
    let (vset, eset) = match outcome {
        Ok(Some(found)) => found,
        Ok(None) => return Err(fail(&trace, "no recovery order yields an alternative subgraph".into())),
        Err(message) => return Err(fail(&trace, message)),
    };

    let alt = AlternativeSubgraph::from_subgraph(&sp.graph, sp.dominator_set(), &vset, &eset, Some(x))
        .map_err(|v| fail(&trace, format!("final subgraph rejected: {v:?}")))?;
    if alt.s() < 2 || alt.dominators[0] != x {
        return Err(fail(&trace, "final subgraph misses x or a second dominator".into()));
    }
    Ok((alt, trace))
}

/// Upper limit on recovery calls before the search gives up.
const RECOVERY_CALL_LIMIT: usize = 100_000;

type Candidate = (String, BTreeSet<VertexId>, BTreeSet<EdgeId>);
type Selection = (BTreeSet<VertexId>, BTreeSet<EdgeId>);

/// Unwinds the contractions from the last level down. Each level offers its
/// restorations in rule order; one that leaves a lower level without any
/// valid restoration is abandoned for the next.
struct Recovery<'a> {
    levels: &'a [Level],
    steps: &'a [Step],
    trace: &'a mut SearchTrace,
    calls: usize,
    retreats: usize,
}

impl Recovery<'_> {
    fn run(
        &mut self,
        level: usize,
        vset: BTreeSet<VertexId>,
        eset: BTreeSet<EdgeId>,
    ) -> std::result::Result<Option<Selection>, String> {
        if level == 0 {
            return Ok(Some((vset, eset)));
        }
        self.calls += 1;
        if self.calls > RECOVERY_CALL_LIMIT {
            return Err(format!("recovery exceeded {RECOVERY_CALL_LIMIT} calls"));
        }
        let i = level - 1;
        for (case, v, e) in self.candidates(i, vset, eset)? {
            self.trace.push(format!(
                "recover level={i} case={case} vertices={}",
                fmt_seq(&v.iter().copied().collect::<Vec<_>>())
            ));
            if let Some(found) = self.run(i, v, e)? {
                return Ok(Some(found));
            }
            self.retreats += 1;
            self.trace.push(format!("retreat level={i}"));
        }
        Ok(None)
    }

    /// Valid restorations at level `i`, rule choice first and those keeping
    /// every bad path whole ahead of the rest.
    fn candidates(
        &self,
        i: usize,
        mut vset: BTreeSet<VertexId>,
        mut eset: BTreeSet<EdgeId>,
    ) -> std::result::Result<Vec<Candidate>, String> {
        let step = &self.steps[i];
        let level = &self.levels[i];
        let upper = &self.levels[i + 1].graph;
        let qm = &step.quotient;
        let h = qm.contracted;
        let mut raw: Vec<Candidate> = Vec::new();
        if !vset.contains(&h) {
            for b in &qm.boundary {
                if b.created_vertices.iter().any(|v| vset.contains(v)) {
                    return Err(format!("recover level={i}: stray subdivision vertex"));
                }
            }
            raw.push(("untouched".into(), vset, eset));
        } else {
            let at_h: Vec<EdgeId> = eset
                .iter()
                .copied()
                .filter(|&e| matches!(upper.endpoints(e), Ok((a, b)) if a == h || b == h))
                .collect();
            if at_h.len() != 2 {
                return Err(format!("recover level={i}: contracted vertex has {} edges", at_h.len()));
            }
            let mut attach = Vec::new();
            for &e in &at_h {
                let b = qm
                    .boundary_for_first_edge(e)
                    .ok_or_else(|| format!("recover level={i}: {e} is not a boundary path"))?;
                for v in &b.created_vertices {
                    if !vset.remove(v) {
                        return Err(format!("recover level={i}: partial boundary path"));
                    }
                }
                for e in &b.created_edges {
                    if !eset.remove(e) {
                        return Err(format!("recover level={i}: partial boundary path"));
                    }
                }
                eset.insert(b.original);
                attach.push(b.inner);
            }
            vset.remove(&h);
            let cycle = &step.record.cycle;
            vset.extend(cycle.iter().copied());
            eset.extend(step.cycle_edges.iter().copied());
            let (a1, a2) = (attach[0], attach[1]);
            let doms = &level.dominators;
            let whole = (vset.clone(), eset.clone());
            if a1 == a2 {
                let mut v = vset.clone();
                let mut e = eset.clone();
                for c in cycle.iter().filter(|&&c| c != a1) {
                    v.remove(c);
                }
                for ce in &step.cycle_edges {
                    e.remove(ce);
                }
                let only = (format!("shared dominator {}", a1.0), v, e);
                let all = (format!("shared attachment {}", a1.0), whole.0, whole.1);
                if doms.contains(&a1) {
                    raw.extend([only, all]);
                } else {
                    raw.extend([all, only]);
                }
            } else {
                let (keep, drop, reason) = choose_arc(&level.graph, doms, &level.bad, cycle, a1, a2);
                let without = |arc: &CycleArc| {
                    let mut v = vset.clone();
                    let mut e = eset.clone();
                    for x in &arc.interior {
                        v.remove(x);
                    }
                    for x in &arc.edges {
                        e.remove(x);
                    }
                    (v, e)
                };
                let (kv, ke) = without(&drop);
                let (dv, de) = without(&keep);
                let split = format!(
                    "split at {} {} keep={} by {reason}",
                    a1.0,
                    a2.0,
                    fmt_seq(&keep.interior)
                );
                let other = format!("split at {} {} keep={}", a1.0, a2.0, fmt_seq(&drop.interior));
                let all = format!("dominated attachments {} {}", a1.0, a2.0);
                if !doms.contains(&a1) && !doms.contains(&a2) {
                    raw.push((all, whole.0, whole.1));
                    raw.push((split, kv, ke));
                    raw.push((other, dv, de));
                } else {
                    raw.push((split, kv, ke));
                    raw.push((other, dv, de));
                    raw.push((all, whole.0, whole.1));
                }
            }
        }
        let valid: Vec<(bool, Candidate)> = raw
            .into_iter()
            .filter(|(_, v, e)| AlternativeSubgraph::from_subgraph(&level.graph, &level.dominators, v, e, None).is_ok())
            .map(|c| (keeps_bad_paths(level, &c.1, &c.2), c))
            .collect();
        let (mut good, rest): (Vec<_>, Vec<_>) = valid.into_iter().partition(|(ok, _)| *ok);
        good.extend(rest);
        Ok(good.into_iter().map(|(_, c)| c).collect())
    }
}

/// Every bad path whose anchor is kept lies entirely in the set.
fn keeps_bad_paths(level: &Level, vset: &BTreeSet<VertexId>, eset: &BTreeSet<EdgeId>) -> bool {
    level.bad.values().all(|bp| {
        !vset.contains(&bp.anchor)
            || ([bp.y, bp.z1, bp.z2].iter().all(|v| vset.contains(v)) && bp.edges.iter().all(|e| eset.contains(e)))
    })
}

struct CycleArc {
    interior: Vec<VertexId>,
    edges: Vec<EdgeId>,
    first_step: VertexId,
    vertices: BTreeSet<VertexId>,
}

/// The arc of the closed walk `cycle` from `from` forward to `to`.
fn arc_between(g: &UndirectedMultigraph, cycle: &[VertexId], from: VertexId, to: VertexId) -> CycleArc {
    let n = cycle.len();
    let start = cycle.iter().position(|&v| v == from).expect("on cycle");
    let mut interior = Vec::new();
    let mut edges = Vec::new();
    let mut vertices = BTreeSet::from([from]);
    let mut i = start;
    loop {
        let j = (i + 1) % n;
        edges.push(edge_of(g, cycle[i], cycle[j]).expect("cycle edge"));
        vertices.insert(cycle[j]);
        if cycle[j] == to {
            break;
        }
        interior.push(cycle[j]);
        i = j;
    }
    CycleArc {
        first_step: cycle[(start + 1) % n],
        interior,
        edges,
        vertices,
    }
}

/// Picks the arc between the attachments to keep, returned before the arc
/// to drop: the one carrying a bad path anchored at an attachment, else the
/// one leaving a dominated attachment through its dominator, else the one
/// with the smaller interior ids.
fn choose_arc(
    g: &UndirectedMultigraph,
    doms: &BTreeSet<VertexId>,
    bad: &BTreeMap<VertexId, BadPath>,
    cycle: &[VertexId],
    a1: VertexId,
    a2: VertexId,
) -> (CycleArc, CycleArc, &'static str) {
    let forward = arc_between(g, cycle, a1, a2);
    let backward = arc_between(g, cycle, a2, a1);
    let pick = |keep_forward: bool, forward: CycleArc, backward: CycleArc, why| {
        if keep_forward {
            (forward, backward, why)
        } else {
            (backward, forward, why)
        }
    };
    for a in [a1, a2] {
        if let Some(bp) = bad.get(&a) {
            let on = |arc: &CycleArc| [bp.y, bp.z1, bp.z2].iter().all(|v| arc.vertices.contains(v));
            if on(&forward) {
                return pick(true, forward, backward, "bad path");
            }
            if on(&backward) {
                return pick(false, forward, backward, "bad path");
            }
        }
    }
    for (a, other) in [(a1, a2), (a2, a1)] {
        if doms.contains(&a) || !doms.contains(&other) {
            continue;
        }
        let Some(w) = dominator_of(g, doms, a) else {
            continue;
        };
        let (leaving, arriving) = if a == a1 {
            (&forward, &backward)
        } else {
            (&backward, &forward)
        };
        if leaving.first_step == w {
            return pick(a == a1, forward, backward, "dominator");
        }
        if arriving.interior.last().copied().unwrap_or(other) == w {
            return pick(a != a1, forward, backward, "dominator");
        }
    }
    let mut f = forward.interior.clone();
    let mut b = backward.interior.clone();
    f.sort();
    b.sort();
    pick(f <= b, forward, backward, "smallest ids")
}
