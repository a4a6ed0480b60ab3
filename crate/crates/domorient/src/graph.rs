//! Undirected multigraphs, orientations and dense digraphs.
//!
//! Vertex and edge ids are plain indices into tombstoned storage, so an id is
//! never handed out twice within one graph. Every iteration runs in ascending
//! id order.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Distance value used for unreachable targets.
pub const INF: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Dominating,
    Dominated,
    /// Created by subdivision or triangle attachment.
    Auxiliary,
}

/// A subdivided edge: the new path runs `from`, `vertices..`, `to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdividedPath {
    pub from: VertexId,
    pub to: VertexId,
    pub vertices: Vec<VertexId>,
    /// Edges of the new path, ordered from `from` to `to`.
    pub edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, Default)]
pub struct UndirectedMultigraph {
    roles: Vec<Option<Role>>,
    ends: Vec<Option<(VertexId, VertexId)>>,
    adj: Vec<Vec<EdgeId>>,
    live_vertices: usize,
    live_edges: usize,
}

impl UndirectedMultigraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` (role `Dominated`) with the given edges.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex(Role::Dominated);
        }
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, role: Role) -> VertexId {
        let id = VertexId(self.roles.len() as u32);
        self.roles.push(Some(role));
        self.adj.push(Vec::new());
        self.live_vertices += 1;
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.require_vertex(u)?;
        self.require_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let id = EdgeId(self.ends.len() as u32);
        self.ends.push(Some((u, v)));
        self.adj[u.index()].push(id);
        self.adj[v.index()].push(id);
        self.live_edges += 1;
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        let (u, v) = self.endpoints(e)?;
        self.ends[e.index()] = None;
        self.adj[u.index()].retain(|&x| x != e);
        self.adj[v.index()].retain(|&x| x != e);
        self.live_edges -= 1;
        Ok((u, v))
    }

    /// Removes a vertex together with its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        self.require_vertex(v)?;
        for e in self.adj[v.index()].clone() {
            self.remove_edge(e)?;
        }
        self.roles[v.index()] = None;
        self.live_vertices -= 1;
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.live_vertices
    }

    pub fn edge_count(&self) -> usize {
        self.live_edges
    }

    /// One past the largest vertex id ever allocated.
    pub fn vertex_bound(&self) -> usize {
        self.roles.len()
    }

    pub fn edge_bound(&self) -> usize {
        self.ends.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        matches!(self.roles.get(v.index()), Some(Some(_)))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.ends.get(e.index()), Some(Some(_)))
    }

    fn require_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub fn role(&self, v: VertexId) -> Option<Role> {
        self.roles.get(v.index()).copied().flatten()
    }

    pub fn set_role(&mut self, v: VertexId, role: Role) -> Result<()> {
        self.require_vertex(v)?;
        self.roles[v.index()] = Some(role);
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.roles
            .iter()
            .enumerate()
            .filter(|(_, r)| r.is_some())
            .map(|(i, _)| VertexId(i as u32))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.ends
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|(u, v)| (EdgeId(i as u32), u, v)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges().map(|(e, _, _)| e)
    }

    pub fn endpoints(&self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        self.ends.get(e.index()).copied().flatten().ok_or(Error::UnknownEdge(e))
    }

    /// The endpoint of `e` that is not `v`.
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> Option<VertexId> {
        let (a, b) = self.endpoints(e).ok()?;
        if a == v {
            Some(b)
        } else if b == v {
            Some(a)
        } else {
            None
        }
    }

    /// Incident edge ids in ascending order; empty for unknown vertices.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        self.adj.get(v.index()).map(|a| a.as_slice()).unwrap_or(&[])
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Neighbors with multiplicity, in incident-edge order.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v)
            .iter()
            .map(move |&e| self.opposite(e, v).expect("adjacency is consistent"))
    }

    pub fn neighbor_set(&self, v: VertexId) -> BTreeSet<VertexId> {
        self.neighbors(v).collect()
    }

    pub fn edges_between(&self, u: VertexId, v: VertexId) -> Vec<EdgeId> {
        self.incident(u)
            .iter()
            .copied()
            .filter(|&e| self.opposite(e, u) == Some(v))
            .collect()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.incident(u).iter().any(|&e| self.opposite(e, u) == Some(v))
    }

    /// Sorted list of normalized endpoint pairs; equal lists mean equal
    /// labelled multigraphs regardless of edge ids.
    pub fn edge_signature(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = self.edges().map(|(_, u, v)| (u.0.min(v.0), u.0.max(v.0))).collect();
        out.sort_unstable();
        out
    }

    pub fn is_triangle(&self) -> bool {
        if self.vertex_count() != 3 || self.edge_count() != 3 {
            return false;
        }
        let vs: Vec<VertexId> = self.vertices().collect();
        self.has_edge(vs[0], vs[1]) && self.has_edge(vs[1], vs[2]) && self.has_edge(vs[0], vs[2])
    }

    pub fn is_connected(&self) -> bool {
        match self.vertices().next() {
            None => true,
            Some(s) => self.reachable_from(s).len() == self.vertex_count(),
        }
    }

    fn reachable_from(&self, s: VertexId) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for v in self.vertices() {
            if !seen.contains(&v) {
                let comp = self.reachable_from(v);
                seen.extend(comp.iter().copied());
                out.push(comp);
            }
        }
        out
    }

    /// Breadth-first distances from `s`, indexed by vertex id.
    pub fn bfs_distances(&self, s: VertexId) -> Vec<u32> {
        let mut dist = vec![INF; self.vertex_bound()];
        if !self.contains_vertex(s) {
            return dist;
        }
        dist[s.index()] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for w in self.neighbors(v) {
                if dist[w.index()] == INF {
                    dist[w.index()] = dist[v.index()] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Edges whose removal disconnects the graph. Parallel edges are never
    /// bridges.
    pub fn bridges(&self) -> Result<BTreeSet<EdgeId>> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let mut bridges = BTreeSet::new();
        let Some(root) = self.vertices().next() else {
            return Ok(bridges);
        };
        let n = self.vertex_bound();
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![u32::MAX; n];
        let mut clock = 0u32;
        // (vertex, edge used to enter it, next incident position)
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root.index()] = 0;
        low[root.index()] = 0;
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&e) = self.incident(v).get(*pos) {
                *pos += 1;
                if Some(e) == parent {
                    continue;
                }
                let w = self.opposite(e, v).expect("consistent");
                if disc[w.index()] == u32::MAX {
                    clock += 1;
                    disc[w.index()] = clock;
                    low[w.index()] = clock;
                    stack.push((w, Some(e), 0));
                } else {
                    low[v.index()] = low[v.index()].min(disc[w.index()]);
                }
            } else {
                stack.pop();
                if let (Some(e), Some(&(p, _, _))) = (parent, stack.last()) {
                    low[p.index()] = low[p.index()].min(low[v.index()]);
                    if low[v.index()] > disc[p.index()] {
                        bridges.insert(e);
                    }
                }
            }
        }
        Ok(bridges)
    }

    pub fn is_bridgeless(&self) -> bool {
        matches!(self.bridges(), Ok(b) if b.is_empty())
    }

    /// `Ok` when the graph is connected and has no bridge.
    pub fn check_bridgeless(&self) -> Result<()> {
        match self.bridges()?.iter().next() {
            Some(&e) => Err(Error::NotBridgeless(e)),
            None => Ok(()),
        }
    }

    /// Vertex sets of the blocks (maximal 2-connected subgraphs, bridges
    /// counting as blocks of two vertices).
    pub fn blocks(&self) -> Result<Vec<BTreeSet<VertexId>>> {
        if !self.is_connected() {
            return Err(Error::NotConnected);
        }
        let Some(root) = self.vertices().next() else {
            return Ok(Vec::new());
        };
        if self.edge_count() == 0 {
            return Ok(vec![BTreeSet::from([root])]);
        }
        let n = self.vertex_bound();
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![u32::MAX; n];
        let mut clock = 0u32;
        let mut edge_stack: Vec<EdgeId> = Vec::new();
        let mut blocks = Vec::new();
        let mut stack: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(root, None, 0)];
        disc[root.index()] = 0;
        low[root.index()] = 0;
        while let Some(&mut (v, parent, ref mut pos)) = stack.last_mut() {
            if let Some(&e) = self.incident(v).get(*pos) {
                *pos += 1;
                if Some(e) == parent {
                    continue;
                }
                let w = self.opposite(e, v).expect("consistent");
                if disc[w.index()] == u32::MAX {
                    clock += 1;
                    disc[w.index()] = clock;
                    low[w.index()] = clock;
                    edge_stack.push(e);
                    stack.push((w, Some(e), 0));
                } else if disc[w.index()] < disc[v.index()] {
                    edge_stack.push(e);
                    low[v.index()] = low[v.index()].min(disc[w.index()]);
                }
            } else {
                stack.pop();
                if let (Some(pe), Some(&(p, _, _))) = (parent, stack.last()) {
                    low[p.index()] = low[p.index()].min(low[v.index()]);
                    if low[v.index()] >= disc[p.index()] {
                        let mut block = BTreeSet::new();
                        while let Some(e) = edge_stack.pop() {
                            let (a, b) = self.endpoints(e)?;
                            block.insert(a);
                            block.insert(b);
                            if e == pe {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        Ok(blocks)
    }

    /// 2-connected in the block sense: connected, at least three vertices,
    /// a single block.
    pub fn is_two_connected(&self) -> bool {
        self.vertex_count() >= 3 && matches!(self.blocks(), Ok(b) if b.len() == 1)
    }

    /// Replaces edge `e` by a path through `k` new `Auxiliary` vertices.
    pub fn subdivide_edge(&mut self, e: EdgeId, k: usize) -> Result<SubdividedPath> {
        if k == 0 {
            return Err(Error::precondition("subdivision count must be at least 1"));
        }
        let (u, v) = self.remove_edge(e)?;
        let mut vertices = Vec::with_capacity(k);
        let mut edges = Vec::with_capacity(k + 1);
        let mut prev = u;
        for _ in 0..k {
            let s = self.add_vertex(Role::Auxiliary);
            edges.push(self.add_edge(prev, s)?);
            vertices.push(s);
            prev = s;
        }
        edges.push(self.add_edge(prev, v)?);
        Ok(SubdividedPath {
            from: u,
            to: v,
            vertices,
            edges,
        })
    }

    /// Merges every vertex of `set` into `into`. Edges inside the set would
    /// become self-loops and are dropped; boundary edges keep their ids.
    pub fn contract(&mut self, set: &BTreeSet<VertexId>, into: VertexId) -> Result<()> {
        if !set.contains(&into) {
            return Err(Error::precondition("contraction target must lie in the set"));
        }
        for &v in set {
            self.require_vertex(v)?;
        }
        for &v in set {
            if v == into {
                continue;
            }
            for e in self.adj[v.index()].clone() {
                let (a, b) = self.endpoints(e)?;
                let other = if a == v { b } else { a };
                if set.contains(&other) {
                    self.remove_edge(e)?;
                } else {
                    self.ends[e.index()] = Some(if a == v { (into, b) } else { (a, into) });
                    let list = &mut self.adj[into.index()];
                    let pos = list.binary_search(&e).unwrap_or_else(|p| p);
                    list.insert(pos, e);
                }
            }
            self.adj[v.index()].clear();
            self.roles[v.index()] = None;
            self.live_vertices -= 1;
        }
        for e in self.adj[into.index()].clone() {
            let (a, b) = self.endpoints(e)?;
            if a == b {
                self.remove_edge(e)?;
            }
        }
        Ok(())
    }

    /// Same id space, keeping only the given vertices and edges.
    pub fn restrict(&self, vertices: &BTreeSet<VertexId>, edges: &BTreeSet<EdgeId>) -> Result<UndirectedMultigraph> {
        let mut g = UndirectedMultigraph {
            roles: vec![None; self.vertex_bound()],
            ends: vec![None; self.edge_bound()],
            adj: vec![Vec::new(); self.vertex_bound()],
            live_vertices: 0,
            live_edges: 0,
        };
        for &v in vertices {
            self.require_vertex(v)?;
            g.roles[v.index()] = self.role(v);
            g.live_vertices += 1;
        }
        for &e in edges {
            let (u, v) = self.endpoints(e)?;
            if !vertices.contains(&u) || !vertices.contains(&v) {
                return Err(Error::precondition(format!(
                    "edge {e} leaves the restricted vertex set"
                )));
            }
            g.ends[e.index()] = Some((u, v));
            g.adj[u.index()].push(e);
            g.adj[v.index()].push(e);
            g.live_edges += 1;
        }
        for list in &mut g.adj {
            list.sort_unstable();
        }
        Ok(g)
    }

    /// Induced subgraph on `vertices`, same id space.
    pub fn induced(&self, vertices: &BTreeSet<VertexId>) -> Result<UndirectedMultigraph> {
        let edges = self.induced_edges(vertices);
        self.restrict(vertices, &edges)
    }

    pub fn induced_edges(&self, vertices: &BTreeSet<VertexId>) -> BTreeSet<EdgeId> {
        self.edges()
            .filter(|(_, u, v)| vertices.contains(u) && vertices.contains(v))
            .map(|(e, _, _)| e)
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
}

impl Arc {
    pub fn new(tail: VertexId, head: VertexId) -> Self {
        Arc { tail, head }
    }

    pub fn reversed(self) -> Self {
        Arc {
            tail: self.head,
            head: self.tail,
        }
    }
}

/// A direction for every edge of a base graph. The orientation carries its
/// own vertex list so it can be measured without the base graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    vertices: Vec<VertexId>,
    arcs: BTreeMap<EdgeId, Arc>,
}

impl Orientation {
    /// Builds and validates an orientation of `g`.
    pub fn new(g: &UndirectedMultigraph, arcs: BTreeMap<EdgeId, Arc>) -> Result<Self> {
        let o = Orientation {
            vertices: g.vertices().collect(),
            arcs,
        };
        o.validate(g)?;
        Ok(o)
    }

    /// Orients each edge `(e, u, v)` as `u -> v` when `forward` returns true.
    pub fn from_fn(g: &UndirectedMultigraph, mut forward: impl FnMut(EdgeId, VertexId, VertexId) -> bool) -> Self {
        let arcs = g
            .edges()
            .map(|(e, u, v)| {
                let arc = if forward(e, u, v) {
                    Arc::new(u, v)
                } else {
                    Arc::new(v, u)
                };
                (e, arc)
            })
            .collect();
        Orientation {
            vertices: g.vertices().collect(),
            arcs,
        }
    }

    /// Checks that every edge of `g` has exactly one arc over its endpoints.
    pub fn validate(&self, g: &UndirectedMultigraph) -> Result<()> {
        let expected: Vec<VertexId> = g.vertices().collect();
        if expected != self.vertices {
            return Err(Error::precondition("orientation vertex set differs from graph"));
        }
        if self.arcs.len() != g.edge_count() {
            return Err(Error::precondition("orientation edge set differs from graph"));
        }
        for (&e, arc) in &self.arcs {
            let (u, v) = g.endpoints(e)?;
            if !((arc.tail == u && arc.head == v) || (arc.tail == v && arc.head == u)) {
                return Err(Error::precondition(format!("arc for {e} is not over its endpoints")));
            }
        }
        Ok(())
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn arcs(&self) -> impl Iterator<Item = (EdgeId, Arc)> + '_ {
        self.arcs.iter().map(|(&e, &a)| (e, a))
    }

    pub fn arc(&self, e: EdgeId) -> Option<Arc> {
        self.arcs.get(&e).copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn reversed(&self) -> Self {
        Orientation {
            vertices: self.vertices.clone(),
            arcs: self.arcs.iter().map(|(&e, a)| (e, a.reversed())).collect(),
        }
    }

    /// Sub-orientation over a subset of vertices and edges.
    pub fn restricted(&self, vertices: &BTreeSet<VertexId>, edges: &BTreeSet<EdgeId>) -> Result<Orientation> {
        let mut arcs = BTreeMap::new();
        for &e in edges {
            let a = self.arc(e).ok_or(Error::UnknownEdge(e))?;
            if !vertices.contains(&a.tail) || !vertices.contains(&a.head) {
                return Err(Error::precondition(format!("arc {e} leaves the vertex subset")));
            }
            arcs.insert(e, a);
        }
        Ok(Orientation {
            vertices: vertices.iter().copied().collect(),
            arcs,
        })
    }

    pub fn digraph(&self) -> Digraph {
        Digraph::new(&self.vertices, self.arcs.values().copied())
    }

    pub fn is_strong(&self) -> bool {
        self.digraph().is_strong()
    }

    /// Directed distance, `None` when `v` is unreachable from `u`.
    pub fn directed_distance(&self, u: VertexId, v: VertexId) -> Result<Option<u32>> {
        let d = self.digraph();
        let s = d.index_of(u).ok_or(Error::UnknownVertex(u))?;
        let t = d.index_of(v).ok_or(Error::UnknownVertex(v))?;
        let dist = d.bfs(s)[t];
        Ok((dist != INF).then_some(dist))
    }
}

/// Dense digraph over indices `0..n` for repeated distance queries.
#[derive(Clone, Debug)]
pub struct Digraph {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

impl Digraph {
    pub fn new(vertices: &[VertexId], arcs: impl IntoIterator<Item = Arc>) -> Self {
        let index: BTreeMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut out = vec![Vec::new(); vertices.len()];
        let mut inc = vec![Vec::new(); vertices.len()];
        for a in arcs {
            let (t, h) = (index[&a.tail], index[&a.head]);
            out[t].push(h);
            inc[h].push(t);
        }
        Digraph {
            ids: vertices.to_vec(),
            index,
            out,
            inc,
        }
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn id(&self, i: usize) -> VertexId {
        self.ids[i]
    }

    pub fn index_of(&self, v: VertexId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn out_neighbors(&self, i: usize) -> &[usize] {
        &self.out[i]
    }

    pub fn in_neighbors(&self, i: usize) -> &[usize] {
        &self.inc[i]
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    fn bfs_over(adj: &[Vec<usize>], s: usize) -> Vec<u32> {
        let mut dist = vec![INF; adj.len()];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == INF {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn bfs(&self, s: usize) -> Vec<u32> {
        Self::bfs_over(&self.out, s)
    }

    /// Distances from every vertex to `t`.
    pub fn reverse_bfs(&self, t: usize) -> Vec<u32> {
        Self::bfs_over(&self.inc, t)
    }

    pub fn distance_matrix(&self) -> DistanceMatrix {
        let n = self.len();
        let mut d = Vec::with_capacity(n * n);
        for s in 0..n {
            d.extend(self.bfs(s));
        }
        DistanceMatrix { n, d }
    }

    pub fn is_strong(&self) -> bool {
        if self.ids.len() <= 1 {
            return true;
        }
        self.bfs(0).iter().all(|&x| x != INF) && self.reverse_bfs(0).iter().all(|&x| x != INF)
    }
}

/// All-pairs directed distances, row `s` holds distances from `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub(crate) fn from_raw(n: usize, d: Vec<u32>) -> Self {
        debug_assert_eq!(d.len(), n * n);
        DistanceMatrix { n, d }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn get(&self, s: usize, t: usize) -> u32 {
        self.d[s * self.n + t]
    }

    pub fn all_finite(&self) -> bool {
        self.d.iter().all(|&x| x != INF)
    }
}
