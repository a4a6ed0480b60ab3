//! Ear (chain) decomposition of 2-edge-connected graphs.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{Arc, EdgeId, Orientation, UndirectedMultigraph, VertexId};

/// A directed path or cycle; `vertices` has one more entry than `edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ear {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
}

struct DfsTree {
    order: Vec<VertexId>,
    pre: Vec<u32>,
    parent_edge: Vec<Option<EdgeId>>,
}

fn dfs_tree(g: &UndirectedMultigraph, root: VertexId) -> DfsTree {
    let n = g.vertex_bound();
    let mut pre = vec![u32::MAX; n];
    let mut parent_edge = vec![None; n];
    let mut order = Vec::new();
    let mut stack: Vec<(VertexId, usize)> = vec![(root, 0)];
    pre[root.index()] = 0;
    order.push(root);
    while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
        if let Some(&e) = g.incident(v).get(*pos) {
            *pos += 1;
            let w = g.opposite(e, v).expect("consistent");
            if pre[w.index()] == u32::MAX {
                pre[w.index()] = order.len() as u32;
                order.push(w);
                parent_edge[w.index()] = Some(e);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
        }
    }
    DfsTree {
        order,
        pre,
        parent_edge,
    }
}

/// Chain decomposition: the first ear is a cycle, every later ear is a path
/// (or cycle) whose ends lie on earlier ears. Each ear is listed in the
/// direction it takes in [`ear_orientation`].
pub fn ear_decomposition(g: &UndirectedMultigraph) -> Result<Vec<Ear>> {
    g.check_bridgeless()?;
    let Some(root) = g.vertices().next() else {
        return Ok(Vec::new());
    };
    let tree = dfs_tree(g, root);
    let tree_edges: BTreeSet<EdgeId> = tree.parent_edge.iter().flatten().copied().collect();
    let mut visited = vec![false; g.vertex_bound()];
    let mut covered = BTreeSet::new();
    let mut ears = Vec::new();
    for &v in &tree.order {
        for &e in g.incident(v) {
            if tree_edges.contains(&e) || covered.contains(&e) {
                continue;
            }
            let w = g.opposite(e, v).expect("consistent");
            if tree.pre[w.index()] <= tree.pre[v.index()] {
                continue;
            }
            // Walk from the descendant w up the tree until a visited vertex.
            visited[v.index()] = true;
            covered.insert(e);
            let mut up_vertices = vec![w];
            let mut up_edges = Vec::new();
            let mut cur = w;
            while !visited[cur.index()] {
                visited[cur.index()] = true;
                let pe = tree.parent_edge[cur.index()].expect("non-root has a parent");
                covered.insert(pe);
                up_edges.push(pe);
                cur = g.opposite(pe, cur).expect("consistent");
                up_vertices.push(cur);
            }
            // Directed: top of the climb down to w, then the back edge to v.
            up_vertices.reverse();
            up_edges.reverse();
            up_vertices.push(v);
            up_edges.push(e);
            ears.push(Ear {
                vertices: up_vertices,
                edges: up_edges,
            });
        }
    }
    if covered.len() != g.edge_count() {
        return Err(Error::breach("chain decomposition missed an edge"));
    }
    Ok(ears)
}

/// Strong orientation with every ear of [`ear_decomposition`] directed as a
/// path: tree edges point away from the root, back edges toward it.
pub fn ear_orientation(g: &UndirectedMultigraph) -> Result<Orientation> {
    let ears = ear_decomposition(g)?;
    let mut arcs = std::collections::BTreeMap::new();
    for ear in &ears {
        for (i, &e) in ear.edges.iter().enumerate() {
            arcs.insert(e, Arc::new(ear.vertices[i], ear.vertices[i + 1]));
        }
    }
    let o = Orientation::new(g, arcs)?;
    if !o.is_strong() {
        return Err(Error::breach("ear orientation is not strong"));
    }
    Ok(o)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ears_partition_the_edges() {
        let g = UndirectedMultigraph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 5), (5, 2), (1, 4)])
            .unwrap();
        let ears = ear_decomposition(&g).unwrap();
        let first = &ears[0];
        assert_eq!(first.vertices.first(), first.vertices.last());
        let total: usize = ears.iter().map(|e| e.edges.len()).sum();
        assert_eq!(total, g.edge_count());
        assert!(ear_orientation(&g).unwrap().is_strong());
    }

    #[test]
    fn bridges_are_refused() {
        let g = UndirectedMultigraph::from_edges(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        assert!(matches!(ear_decomposition(&g), Err(Error::NotBridgeless(_))));
    }

    #[test]
    fn parallel_pair_is_a_two_cycle() {
        let g = UndirectedMultigraph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let o = ear_orientation(&g).unwrap();
        assert!(o.is_strong());
    }
}
