//! Contraction of a subgraph to one vertex followed by role-dependent
//! subdivision of the boundary edges, and the splice of orientations of the
//! two sides back into an orientation of the whole graph.

use std::collections::{BTreeMap, BTreeSet};

use crate::domination::{dominator_of, standard_violations, DominatingSet, StandardPair};
use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Orientation, Role, UndirectedMultigraph, VertexId};

/// One boundary edge `inner - outer` of the contracted set and its
/// replacement path `h - created.. - outer` in the quotient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub original: EdgeId,
    pub inner: VertexId,
    pub outer: VertexId,
    pub subdivisions: u8,
    /// Ordered from `h` toward `outer`.
    pub created_vertices: Vec<VertexId>,
    /// Ordered from `h` toward `outer`; one more than the created vertices.
    pub created_edges: Vec<EdgeId>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMap {
    pub contracted: VertexId,
    pub members: BTreeSet<VertexId>,
    pub boundary: Vec<BoundaryEdge>,
    /// Edges with both ends in the contracted set.
    pub internal: Vec<EdgeId>,
    pub triangle: Option<(VertexId, VertexId)>,
}

impl QuotientMap {
    pub fn boundary_for_first_edge(&self, e: EdgeId) -> Option<&BoundaryEdge> {
        self.boundary.iter().find(|b| b.created_edges.first() == Some(&e))
    }
}

/// Subdivision count for the boundary edge `inner - outer`: none when the
/// inner end is a dominator, twice when the outer end dominates the inner
/// end, once when both ends are dominated.
pub fn boundary_rule(dominators: &BTreeSet<VertexId>, inner: VertexId, outer: VertexId) -> u8 {
    if dominators.contains(&inner) {
        0
    } else if dominators.contains(&outer) {
        2
    } else {
        1
    }
}

/// Builds the quotient as a modified copy of `g` sharing its id space: the
/// members are deleted, a fresh dominator `h` is added and every boundary
/// edge is replaced by a subdivided path from `h`.
pub(crate) fn contract_subdivide(
    g: &UndirectedMultigraph,
    dominators: &BTreeSet<VertexId>,
    members: &BTreeSet<VertexId>,
    add_triangle: bool,
) -> Result<(UndirectedMultigraph, BTreeSet<VertexId>, QuotientMap)> {
    let mut q = g.clone();
    let mut boundary_edges = Vec::new();
    let mut internal = Vec::new();
    for (e, u, v) in g.edges() {
        match (members.contains(&u), members.contains(&v)) {
            (true, true) => internal.push(e),
            (true, false) => boundary_edges.push((e, u, v)),
            (false, true) => boundary_edges.push((e, v, u)),
            (false, false) => {}
        }
    }
    for &m in members {
        q.remove_vertex(m)?;
    }
    let h = q.add_vertex(Role::Dominating);
    let mut boundary = Vec::new();
    for (e, inner, outer) in boundary_edges {
        let k = boundary_rule(dominators, inner, outer);
        let mut created_vertices = Vec::new();
        let mut created_edges = Vec::new();
        let mut prev = h;
        for _ in 0..k {
            let s = q.add_vertex(Role::Auxiliary);
            created_edges.push(q.add_edge(prev, s)?);
            created_vertices.push(s);
            prev = s;
        }
        created_edges.push(q.add_edge(prev, outer)?);
        boundary.push(BoundaryEdge {
            original: e,
            inner,
            outer,
            subdivisions: k,
            created_vertices,
            created_edges,
        });
    }
    let triangle = if add_triangle {
        let a = q.add_vertex(Role::Auxiliary);
        let b = q.add_vertex(Role::Auxiliary);
        q.add_edge(h, a)?;
        q.add_edge(h, b)?;
        q.add_edge(a, b)?;
        Some((a, b))
    } else {
        None
    };
    let mut doms: BTreeSet<VertexId> = dominators.difference(members).copied().collect();
    doms.insert(h);
    Ok((
        q,
        doms,
        QuotientMap {
            contracted: h,
            members: members.clone(),
            boundary,
            internal,
            triangle,
        },
    ))
}

/// The standardized quotient of `sp` by the vertex set `h_sub`, with a fresh
/// triangle attached at the contracted vertex.
pub fn s_quotient(sp: &StandardPair, h_sub: &BTreeSet<VertexId>) -> Result<(StandardPair, QuotientMap)> {
    let g = &sp.graph;
    let doms = sp.dominator_set();
    if h_sub.is_empty() {
        return Err(Error::precondition("contracted set is empty"));
    }
    for &v in h_sub {
        if !g.contains_vertex(v) {
            return Err(Error::UnknownVertex(v));
        }
    }
    if !g.induced(h_sub)?.is_connected() {
        return Err(Error::precondition("contracted set does not induce a connected graph"));
    }
    if h_sub.is_disjoint(doms) {
        return Err(Error::precondition("contracted set holds no dominator"));
    }
    for &v in h_sub {
        if doms.contains(&v) {
            continue;
        }
        match dominator_of(g, doms, v) {
            Some(d) if h_sub.contains(&d) => {}
            _ => {
                return Err(Error::precondition(format!(
                    "{v} is not dominated from inside the contracted set"
                )))
            }
        }
    }
    let (q, qdoms, map) = contract_subdivide(g, doms, h_sub, true)?;
    let violations = standard_violations(&q, &qdoms);
    if !violations.is_empty() {
        return Err(Error::breach(format!("quotient is not standard: {violations:?}")));
    }
    let pair = StandardPair {
        graph: q,
        dominators: DominatingSet::from_trusted(qdoms, false),
        provenance: Default::default(),
    };
    Ok((pair, map))
}

/// Direction of a boundary edge read off its replacement path.
fn boundary_arc(b: &BoundaryEdge, h: VertexId, oq: &Orientation) -> Result<Arc> {
    let mut outward = None;
    let mut prev = h;
    for &e in &b.created_edges {
        let a = oq.arc(e).ok_or(Error::UnknownEdge(e))?;
        let dir = a.tail == prev;
        prev = if dir { a.head } else { a.tail };
        if *outward.get_or_insert(dir) != dir {
            return Err(Error::breach(format!(
                "replacement path of {} is not consistently directed",
                b.original
            )));
        }
    }
    Ok(if outward.unwrap_or(true) {
        Arc::new(b.inner, b.outer)
    } else {
        Arc::new(b.outer, b.inner)
    })
}

/// Splices an orientation of the contracted part and one of the quotient
/// into an orientation of `g`. Edges inside the contracted set that the
/// sub-orientation does not cover are oriented from smaller to larger id.
pub fn compose(
    g: &UndirectedMultigraph,
    oriented_h: &Orientation,
    oriented_quotient: &Orientation,
    qm: &QuotientMap,
) -> Result<Orientation> {
    if !oriented_h.is_strong() || !oriented_quotient.is_strong() {
        return Err(Error::NotStrong);
    }
    let by_original: BTreeMap<EdgeId, &BoundaryEdge> = qm.boundary.iter().map(|b| (b.original, b)).collect();
    let mut arcs = BTreeMap::new();
    for (e, u, v) in g.edges() {
        let arc = if qm.members.contains(&u) && qm.members.contains(&v) {
            oriented_h.arc(e).unwrap_or_else(|| Arc::new(u.min(v), u.max(v)))
        } else if let Some(b) = by_original.get(&e) {
            boundary_arc(b, qm.contracted, oriented_quotient)?
        } else {
            oriented_quotient.arc(e).ok_or(Error::UnknownEdge(e))?
        };
        arcs.insert(e, arc);
    }
    let o = Orientation::new(g, arcs)?;
    if !o.is_strong() {
        return Err(Error::breach("composed orientation is not strong"));
    }
    Ok(o)
}

/// `ceil((7 * r + 1) / 2)`.
pub fn diameter_bound(r: usize) -> u32 {
    (7 * r as u32 + 1).div_ceil(2)
}

/// `7 * r - 1`.
pub fn strong_diameter_bound(r: usize) -> u32 {
    (7 * r as u32).saturating_sub(1)
}

/// Diameter guaranteed after contracting a part with `r_prime` dominators
/// whose orientation has composition cost `m`.
pub fn composition_bound(r: usize, r_prime: usize, m: u32) -> u32 {
    diameter_bound(r - r_prime + 1) + m
}

/// Strong-diameter guarantee when contracting an alternative subgraph with
/// `r0` dominators whose orientation has `arcs` arcs.
pub fn sdiam_compose_bound(r: usize, r0: usize, arcs: usize) -> Result<u32> {
    if r0 < 2 || r0 > r {
        return Err(Error::precondition(format!(
            "contracted part needs 2 <= r0 <= r, got r0 = {r0}, r = {r}"
        )));
    }
    let inner = (2 * (3 * r0 as u32 - 1)).min(arcs as u32);
    Ok(strong_diameter_bound(r - r0 + 1) + inner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ids(v: &[u32]) -> BTreeSet<VertexId> {
        v.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn bound_arithmetic() {
        assert_eq!(diameter_bound(1), 4);
        assert_eq!(diameter_bound(2), 8);
        assert_eq!(diameter_bound(3), 11);
        assert_eq!(composition_bound(3, 3, 7), 11);
        assert_eq!(sdiam_compose_bound(2, 2, 7).unwrap(), 13);
        assert_eq!(sdiam_compose_bound(5, 5, 30).unwrap(), 34);
        assert!(sdiam_compose_bound(3, 1, 3).is_err());
    }

    #[test]
    fn boundary_rules() {
        let d = ids(&[0, 5]);
        assert_eq!(boundary_rule(&d, VertexId(0), VertexId(1)), 0);
        assert_eq!(boundary_rule(&d, VertexId(1), VertexId(2)), 1);
        assert_eq!(boundary_rule(&d, VertexId(1), VertexId(5)), 2);
    }

    #[test]
    fn quotient_of_the_whole_graph_is_a_triangle() {
        let g = UndirectedMultigraph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let sp = StandardPair::from_standard(g.clone(), ids(&[0])).unwrap();
        let (q, map) = s_quotient(&sp, &ids(&[0, 1, 2])).unwrap();
        assert!(q.graph.is_triangle());
        assert!(map.boundary.is_empty());
        let oh = Orientation::from_fn(&g, |_, _, _| true);
        let oq = crate::ears::ear_orientation(&q.graph).unwrap();
        assert_eq!(compose(&g, &oh, &oq, &map).unwrap(), oh);
    }
}
