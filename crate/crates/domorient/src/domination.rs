//! Dominating sets, standard pairs and the standardizing transformations.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Orientation, Role, UndirectedMultigraph, VertexId};

/// Largest vertex count handled by the exact dominating-set solver.
pub const EXACT_DOMINATION_LIMIT: usize = 24;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatingSet {
    members: BTreeSet<VertexId>,
    minimum: bool,
}

impl DominatingSet {
    /// Wraps `members` after checking that they dominate `g`.
    pub fn new(g: &UndirectedMultigraph, members: BTreeSet<VertexId>) -> Result<Self> {
        for &v in &members {
            if !g.contains_vertex(v) {
                return Err(Error::UnknownVertex(v));
            }
        }
        if !is_dominating(g, &members) {
            return Err(Error::NotDominating);
        }
        Ok(DominatingSet {
            members,
            minimum: false,
        })
    }

    pub(crate) fn from_trusted(members: BTreeSet<VertexId>, minimum: bool) -> Self {
        DominatingSet { members, minimum }
    }

    pub fn members(&self) -> &BTreeSet<VertexId> {
        &self.members
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True when the set is certified to be of minimum size.
    pub fn is_minimum(&self) -> bool {
        self.minimum
    }
}

pub fn is_dominating(g: &UndirectedMultigraph, set: &BTreeSet<VertexId>) -> bool {
    g.vertices()
        .all(|v| set.contains(&v) || g.neighbors(v).any(|w| set.contains(&w)))
}

/// A minimum dominating set for graphs up to [`EXACT_DOMINATION_LIMIT`]
/// vertices, otherwise a greedy one flagged as not certified.
pub fn minimum_dominating_set(g: &UndirectedMultigraph) -> DominatingSet {
    if g.vertex_count() <= EXACT_DOMINATION_LIMIT {
        exact_dominating_set(g)
    } else {
        greedy_dominating_set(g)
    }
}

fn exact_dominating_set(g: &UndirectedMultigraph) -> DominatingSet {
    let ids: Vec<VertexId> = g.vertices().collect();
    let pos: BTreeMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let closed: Vec<u32> = ids
        .iter()
        .map(|&v| g.neighbors(v).fold(1u32 << pos[&v], |m, w| m | (1u32 << pos[&w])))
        .collect();
    let full: u32 = if ids.len() == 32 {
        u32::MAX
    } else {
        (1u32 << ids.len()) - 1
    };
    let max_cover = closed.iter().map(|m| m.count_ones()).max().unwrap_or(1).max(1);

    struct Search<'a> {
        closed: &'a [u32],
        full: u32,
        max_cover: u32,
        best: Vec<usize>,
        chosen: Vec<usize>,
    }

    impl Search<'_> {
        fn run(&mut self, covered: u32) {
            if covered == self.full {
                if self.chosen.len() < self.best.len() {
                    self.best = self.chosen.clone();
                }
                return;
            }
            let missing = (self.full & !covered).count_ones();
            let lower = self.chosen.len() + missing.div_ceil(self.max_cover) as usize;
            if lower >= self.best.len() {
                return;
            }
            // Branch on the undominated vertex with the fewest dominators.
            let mut target = usize::MAX;
            let mut options = u32::MAX;
            for w in 0..self.closed.len() {
                if covered & (1 << w) == 0 {
                    let count = self.closed[w].count_ones();
                    if count < options {
                        options = count;
                        target = w;
                    }
                }
            }
            let choices = self.closed[target];
            for v in 0..self.closed.len() {
                if choices & (1 << v) != 0 {
                    self.chosen.push(v);
                    self.run(covered | self.closed[v]);
                    self.chosen.pop();
                }
            }
        }
    }

    let mut search = Search {
        closed: &closed,
        full,
        max_cover,
        best: (0..ids.len()).collect(),
        chosen: Vec::new(),
    };
    search.run(0);
    let members = search.best.iter().map(|&i| ids[i]).collect();
    DominatingSet::from_trusted(members, true)
}

fn greedy_dominating_set(g: &UndirectedMultigraph) -> DominatingSet {
    let mut undominated: BTreeSet<VertexId> = g.vertices().collect();
    let mut members = BTreeSet::new();
    while !undominated.is_empty() {
        let best = g
            .vertices()
            .filter(|v| !members.contains(v))
            .max_by_key(|&v| {
                let gain = std::iter::once(v)
                    .chain(g.neighbors(v))
                    .collect::<BTreeSet<_>>()
                    .intersection(&undominated)
                    .count();
                (gain, std::cmp::Reverse(v))
            })
            .expect("an undominated vertex remains");
        undominated.remove(&best);
        for w in g.neighbors(best) {
            undominated.remove(&w);
        }
        members.insert(best);
    }
    DominatingSet::from_trusted(members, false)
}

/// One of the four conditions of a standard pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardViolation {
    NotBridgeless,
    AdjacentDominators(VertexId, VertexId),
    Undominated(VertexId),
    SeveralDominators(VertexId),
    NoIsolatedTriangle(VertexId),
}

/// The two degree-2 neighbors forming an isolated triangle with `v`, smallest
/// pair first.
pub fn isolated_triangle(g: &UndirectedMultigraph, v: VertexId) -> Option<(VertexId, VertexId)> {
    let nbrs: Vec<VertexId> = g
        .neighbor_set(v)
        .into_iter()
        .filter(|&w| g.degree(w) == 2 && g.edges_between(v, w).len() == 1)
        .collect();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            if g.has_edge(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// The unique dominator of a dominated vertex, if it is unique.
pub fn dominator_of(g: &UndirectedMultigraph, dominators: &BTreeSet<VertexId>, v: VertexId) -> Option<VertexId> {
    let doms: BTreeSet<VertexId> = g.neighbors(v).filter(|w| dominators.contains(w)).collect();
    if doms.len() == 1 {
        doms.into_iter().next()
    } else {
        None
    }
}

pub fn standard_violations(g: &UndirectedMultigraph, dominators: &BTreeSet<VertexId>) -> Vec<StandardViolation> {
    let mut out = Vec::new();
    if !g.is_bridgeless() {
        out.push(StandardViolation::NotBridgeless);
    }
    for (_, u, v) in g.edges() {
        if dominators.contains(&u) && dominators.contains(&v) {
            out.push(StandardViolation::AdjacentDominators(u, v));
        }
    }
    for v in g.vertices() {
        if dominators.contains(&v) {
            if isolated_triangle(g, v).is_none() {
                out.push(StandardViolation::NoIsolatedTriangle(v));
            }
            continue;
        }
        let count = g.neighbor_set(v).iter().filter(|w| dominators.contains(w)).count();
        match count {
            0 => out.push(StandardViolation::Undominated(v)),
            1 => {}
            _ => out.push(StandardViolation::SeveralDominators(v)),
        }
    }
    out
}

pub fn is_standard(g: &UndirectedMultigraph, dominators: &BTreeSet<VertexId>) -> bool {
    standard_violations(g, dominators).is_empty()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardizeOp {
    Subdivide {
        original: EdgeId,
        path: crate::graph::SubdividedPath,
    },
    AttachTriangle {
        dominator: VertexId,
        vertices: (VertexId, VertexId),
    },
}

/// The operations that turned an input graph into its standard form, in the
/// order they were applied.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Provenance {
    ops: Vec<StandardizeOp>,
}

impl Provenance {
    pub fn ops(&self) -> &[StandardizeOp] {
        &self.ops
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn subdivisions(&self) -> impl Iterator<Item = (EdgeId, &crate::graph::SubdividedPath)> {
        self.ops.iter().filter_map(|op| match op {
            StandardizeOp::Subdivide { original, path } => Some((*original, path)),
            _ => None,
        })
    }

    pub fn attached_triangles(&self) -> BTreeMap<VertexId, (VertexId, VertexId)> {
        self.ops
            .iter()
            .filter_map(|op| match op {
                StandardizeOp::AttachTriangle { dominator, vertices } => Some((*dominator, *vertices)),
                _ => None,
            })
            .collect()
    }

    /// Re-applies the recorded operations to `original`.
    pub fn replay(&self, original: &UndirectedMultigraph) -> Result<UndirectedMultigraph> {
        let mut g = original.clone();
        for op in &self.ops {
            match op {
                StandardizeOp::Subdivide { original, path } => {
                    let redo = g.subdivide_edge(*original, path.vertices.len())?;
                    if redo != *path {
                        return Err(Error::breach("replayed subdivision diverged"));
                    }
                }
                StandardizeOp::AttachTriangle { dominator, vertices } => {
                    let got = attach_triangle(&mut g, *dominator)?;
                    if got != *vertices {
                        return Err(Error::breach("replayed triangle diverged"));
                    }
                }
            }
        }
        Ok(g)
    }
}

fn attach_triangle(g: &mut UndirectedMultigraph, v: VertexId) -> Result<(VertexId, VertexId)> {
    let a = g.add_vertex(Role::Auxiliary);
    let b = g.add_vertex(Role::Auxiliary);
    g.add_edge(v, a)?;
    g.add_edge(v, b)?;
    g.add_edge(a, b)?;
    Ok((a, b))
}

#[derive(Clone, Debug)]
pub struct StandardPair {
    pub graph: UndirectedMultigraph,
    pub dominators: DominatingSet,
    pub provenance: Provenance,
}

impl StandardPair {
    /// Wraps a pair that is already standard, with empty provenance.
    pub fn from_standard(graph: UndirectedMultigraph, dominators: BTreeSet<VertexId>) -> Result<Self> {
        let violations = standard_violations(&graph, &dominators);
        if let Some(v) = violations.first() {
            return Err(Error::precondition(format!("pair is not standard: {v:?}")));
        }
        Ok(StandardPair {
            graph,
            dominators: DominatingSet::from_trusted(dominators, false),
            provenance: Provenance::default(),
        })
    }

    pub fn dominator_set(&self) -> &BTreeSet<VertexId> {
        self.dominators.members()
    }

    pub fn is_dominator(&self, v: VertexId) -> bool {
        self.dominators.contains(v)
    }

    pub fn dominator_of(&self, v: VertexId) -> Option<VertexId> {
        if self.is_dominator(v) {
            return None;
        }
        dominator_of(&self.graph, self.dominator_set(), v)
    }
}

/// Applies the three standardizing operations: subdivide dominator edges
/// twice, subdivide all but the smallest dominator edge of a multiply
/// dominated vertex once, attach a triangle to each dominator lacking one.
pub fn standardize(g: &UndirectedMultigraph, d: &DominatingSet) -> Result<StandardPair> {
    g.check_bridgeless()?;
    if !is_dominating(g, d.members()) {
        return Err(Error::NotDominating);
    }
    let dom = d.members();
    let mut h = g.clone();
    for v in h.vertices().collect::<Vec<_>>() {
        let role = if dom.contains(&v) {
            Role::Dominating
        } else {
            Role::Dominated
        };
        h.set_role(v, role)?;
    }
    let mut ops = Vec::new();

    let dominator_edges: Vec<EdgeId> = h
        .edges()
        .filter(|(_, u, v)| dom.contains(u) && dom.contains(v))
        .map(|(e, _, _)| e)
        .collect();
    for e in dominator_edges {
        let path = h.subdivide_edge(e, 2)?;
        ops.push(StandardizeOp::Subdivide { original: e, path });
    }

    for v in h.vertices().collect::<Vec<_>>() {
        if dom.contains(&v) {
            continue;
        }
        let doms: BTreeSet<VertexId> = h.neighbors(v).filter(|w| dom.contains(w)).collect();
        let Some(&keep) = doms.iter().next() else {
            continue;
        };
        let extra: Vec<EdgeId> = h
            .incident(v)
            .iter()
            .copied()
            .filter(|&e| {
                let w = h.opposite(e, v).expect("consistent");
                dom.contains(&w) && w != keep
            })
            .collect();
        for e in extra {
            let path = h.subdivide_edge(e, 1)?;
            ops.push(StandardizeOp::Subdivide { original: e, path });
        }
    }

    for &v in dom {
        if isolated_triangle(&h, v).is_none() {
            let vertices = attach_triangle(&mut h, v)?;
            ops.push(StandardizeOp::AttachTriangle { dominator: v, vertices });
        }
    }

    let violations = standard_violations(&h, dom);
    if !violations.is_empty() {
        return Err(Error::breach(format!("standardization left violations {violations:?}")));
    }
    Ok(StandardPair {
        graph: h,
        dominators: DominatingSet::from_trusted(dom.clone(), d.is_minimum()),
        provenance: Provenance { ops },
    })
}

/// Transfers a strong orientation of the standardized graph back to the
/// original graph.
pub fn pull_back(p: &Provenance, original: &UndirectedMultigraph, o: &Orientation) -> Result<Orientation> {
    if !o.is_strong() {
        return Err(Error::NotStrong);
    }
    let paths: BTreeMap<EdgeId, &crate::graph::SubdividedPath> = p.subdivisions().collect();
    let mut arcs = BTreeMap::new();
    for (e, u, v) in original.edges() {
        let arc = match paths.get(&e) {
            Some(path) => path_direction(path, o, &paths)?,
            None => o.arc(e).ok_or(Error::UnknownEdge(e))?,
        };
        if !((arc.tail == u && arc.head == v) || (arc.tail == v && arc.head == u)) {
            return Err(Error::breach(format!("pulled arc for {e} is off its endpoints")));
        }
        arcs.insert(e, arc);
    }
    let out = Orientation::new(original, arcs)?;
    if !out.is_strong() {
        return Err(Error::breach("pulled-back orientation is not strong"));
    }
    Ok(out)
}

/// Direction of a subdivided path under `o`; nested subdivisions (an edge of
/// the path itself subdivided later) are followed recursively.
fn path_direction(
    path: &crate::graph::SubdividedPath,
    o: &Orientation,
    paths: &BTreeMap<EdgeId, &crate::graph::SubdividedPath>,
) -> Result<Arc> {
    let mut forward = None;
    let mut prev = path.from;
    for &e in &path.edges {
        let arc = match paths.get(&e) {
            Some(inner) => path_direction(inner, o, paths)?,
            None => o.arc(e).ok_or(Error::UnknownEdge(e))?,
        };
        let dir = arc.tail == prev;
        prev = if dir { arc.head } else { arc.tail };
        if *forward.get_or_insert(dir) != dir {
            return Err(Error::breach("subdivided path is not consistently directed"));
        }
    }
    Ok(if forward.unwrap_or(true) {
        Arc::new(path.from, path.to)
    } else {
        Arc::new(path.to, path.from)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: usize, edges: &[(u32, u32)]) -> UndirectedMultigraph {
        UndirectedMultigraph::from_edges(n, edges).unwrap()
    }

    fn set(ids: &[u32]) -> BTreeSet<VertexId> {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn domination_numbers() {
        let tri = g(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(minimum_dominating_set(&tri).len(), 1);
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let d = minimum_dominating_set(&c6);
        assert_eq!(d.len(), 2);
        assert!(d.is_minimum());
        assert!(is_dominating(&c6, d.members()));
    }

    #[test]
    fn greedy_is_flagged_and_dominating() {
        let c6 = g(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0)]);
        let d = greedy_dominating_set(&c6);
        assert!(!d.is_minimum());
        assert!(is_dominating(&c6, d.members()));
    }

    #[test]
    fn standard_input_is_left_alone() {
        let bowtie = g(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let d = DominatingSet::new(&bowtie, set(&[0])).unwrap();
        let sp = standardize(&bowtie, &d).unwrap();
        assert!(sp.provenance.is_empty());
        assert_eq!(sp.graph.edge_signature(), bowtie.edge_signature());
    }

    #[test]
    fn adjacent_dominators_get_a_path_of_length_three() {
        // Two triangles joined by two disjoint edges; dominators 0 and 3 adjacent.
        let h = g(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (2, 5)]);
        let d = DominatingSet::new(&h, set(&[0, 3])).unwrap();
        let sp = standardize(&h, &d).unwrap();
        let (orig, path) = sp.provenance.subdivisions().next().unwrap();
        assert_eq!(orig, EdgeId(6));
        assert_eq!(path.edges.len(), 3);
        assert!(is_standard(&sp.graph, sp.dominator_set()));
    }

    #[test]
    fn triply_dominated_vertex_keeps_smallest_dominator() {
        // Vertex 3 is adjacent to dominators 0, 1 and 2.
        let h = g(4, &[(0, 3), (1, 3), (2, 3), (0, 1), (1, 2), (2, 0)]);
        let d = DominatingSet::new(&h, set(&[0, 1, 2])).unwrap();
        let sp = standardize(&h, &d).unwrap();
        let once: Vec<EdgeId> = sp
            .provenance
            .subdivisions()
            .filter(|(_, p)| p.vertices.len() == 1)
            .map(|(e, _)| e)
            .collect();
        assert_eq!(once, vec![EdgeId(1), EdgeId(2)]);
        assert!(sp.graph.has_edge(VertexId(0), VertexId(3)));
        assert!(is_standard(&sp.graph, sp.dominator_set()));
        assert_eq!(
            sp.provenance.replay(&h).unwrap().edge_signature(),
            sp.graph.edge_signature()
        );
    }

    #[test]
    fn bridged_input_is_rejected() {
        let p = g(3, &[(0, 1), (1, 2)]);
        let d = DominatingSet::new(&p, set(&[1])).unwrap();
        assert!(matches!(standardize(&p, &d), Err(Error::NotBridgeless(_))));
    }

    #[test]
    fn pull_back_follows_path_direction() {
        let c4 = g(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]);
        let d = DominatingSet::new(&c4, set(&[0, 1])).unwrap();
        let sp = standardize(&c4, &d).unwrap();
        let o = crate::ears::ear_orientation(&sp.graph).unwrap();
        let back = pull_back(&sp.provenance, &c4, &o).unwrap();
        assert!(back.is_strong());
        let direct = pull_back(&Provenance::default(), &sp.graph, &o).unwrap();
        assert_eq!(direct, o);
    }
}
