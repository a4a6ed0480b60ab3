//! Named small graphs with a marked dominator set, and an isomorphism test
//! that respects the marking.

use std::collections::{BTreeMap, BTreeSet};

use crate::alternative::brute_force_alternative;
use crate::domination::StandardPair;
use crate::error::Result;
use crate::graph::{Role, UndirectedMultigraph, VertexId};

#[derive(Clone, Debug)]
pub struct Shape {
    pub name: String,
    pub graph: UndirectedMultigraph,
    pub dominators: BTreeSet<VertexId>,
}

impl Shape {
    fn from_labels(name: &str, edges: &[(&str, &str)], dominators: &[&str]) -> Shape {
        let mut ids: BTreeMap<String, VertexId> = BTreeMap::new();
        let mut g = UndirectedMultigraph::new();
        let mut id = |g: &mut UndirectedMultigraph, l: &str| {
            *ids.entry(l.to_string())
                .or_insert_with(|| g.add_vertex(Role::Dominated))
        };
        let mut pairs = Vec::new();
        for &(a, b) in edges {
            let (u, v) = (id(&mut g, a), id(&mut g, b));
            pairs.push((u, v));
        }
        for (u, v) in pairs {
            g.add_edge(u, v).expect("template edges are not loops");
        }
        let dominators: BTreeSet<VertexId> = dominators.iter().map(|l| id(&mut g, l)).collect();
        for &d in &dominators {
            g.set_role(d, Role::Dominating).expect("vertex exists");
        }
        Shape {
            name: name.to_string(),
            graph: g,
            dominators,
        }
    }

    fn from_indices(name: &str, n: usize, edges: &[(u32, u32)], dominators: &[u32]) -> Shape {
        let mut g = UndirectedMultigraph::from_edges(n, edges).expect("valid shape");
        let dominators: BTreeSet<VertexId> = dominators.iter().map(|&i| VertexId(i)).collect();
        for &d in &dominators {
            g.set_role(d, Role::Dominating).expect("vertex exists");
        }
        Shape {
            name: name.to_string(),
            graph: g,
            dominators,
        }
    }

    /// The shape with a pendant triangle hung on every dominator that lacks
    /// one, which makes an alternative shape into a standard pair.
    pub fn standard_pair(&self) -> Result<StandardPair> {
        let mut g = self.graph.clone();
        for &d in &self.dominators {
            if crate::domination::isolated_triangle(&g, d).is_none() {
                let a = g.add_vertex(Role::Auxiliary);
                let b = g.add_vertex(Role::Auxiliary);
                g.add_edge(d, a)?;
                g.add_edge(d, b)?;
                g.add_edge(a, b)?;
            }
        }
        StandardPair::from_standard(g, self.dominators.clone())
    }
}

/// Alternating 6-cycle `X x1 y1 Y y2 x2`.
pub fn h01() -> Shape {
    Shape::from_labels("h01", &h01_edges("X", "x1", "x2", "Y", "y1", "y2"), &["X", "Y"])
}

/// Triangle `X x1 x2` with `x1` joined to both `y1 y2`, and `Y` adjacent
/// to `y1 y2`.
pub fn h02() -> Shape {
    Shape::from_labels("h02", &h02_edges("X", "x1", "x2", "Y", "y1", "y2"), &["X", "Y"])
}

/// Three 6-cycle witnesses sharing the dominator `C`, one per leaf
/// dominator `L1 L2 L3`.
pub fn witness_star() -> Shape {
    let labels: Vec<[String; 5]> = (1..=3)
        .map(|i| {
            [
                format!("L{i}"),
                format!("c{i}a"),
                format!("c{i}b"),
                format!("l{i}a"),
                format!("l{i}b"),
            ]
        })
        .collect();
    let mut edges = Vec::new();
    for [l, ca, cb, la, lb] in &labels {
        edges.extend(h01_edges("C", ca, cb, l, la, lb));
    }
    let mut doms: Vec<&str> = labels.iter().map(|l| l[0].as_str()).collect();
    doms.push("C");
    Shape::from_labels("witness_star", &edges, &doms)
}

/// A chain of `k` 6-cycle witnesses through dominators `D0 .. Dk`.
pub fn witness_chain(k: usize) -> Shape {
    let names: Vec<[String; 5]> = (0..k)
        .map(|i| {
            [
                format!("D{i}"),
                format!("a{i}"),
                format!("b{i}"),
                format!("c{i}"),
                format!("e{i}"),
            ]
        })
        .collect();
    let last = format!("D{k}");
    let mut edges = Vec::new();
    for (i, [d, a, b, c, e]) in names.iter().enumerate() {
        let next = if i + 1 < k {
            names[i + 1][0].as_str()
        } else {
            last.as_str()
        };
        edges.extend(h01_edges(d, a, b, next, c, e));
    }
    let mut doms: Vec<&str> = names.iter().map(|n| n[0].as_str()).collect();
    doms.push(&last);
    Shape::from_labels(&format!("witness_chain_{k}"), &edges, &doms)
}

fn h01_edges<'a>(
    x: &'a str,
    x1: &'a str,
    x2: &'a str,
    y: &'a str,
    y1: &'a str,
    y2: &'a str,
) -> Vec<(&'a str, &'a str)> {
    vec![(x, x1), (x1, y1), (y1, y), (y, y2), (y2, x2), (x2, x)]
}

fn h02_edges<'a>(
    x: &'a str,
    x1: &'a str,
    x2: &'a str,
    y: &'a str,
    y1: &'a str,
    y2: &'a str,
) -> Vec<(&'a str, &'a str)> {
    vec![(x, x1), (x, x2), (x1, x2), (x1, y1), (x1, y2), (y, y1), (y, y2)]
}

#[derive(Clone, Copy)]
enum Template {
    Cycle,
    TriangleFirst,
    TriangleSecond,
}

impl Template {
    fn edges(self, v: [&str; 6]) -> Vec<(&str, &str)> {
        let [x, x1, x2, y, y1, y2] = v;
        match self {
            Template::Cycle => h01_edges(x, x1, x2, y, y1, y2),
            Template::TriangleFirst => h02_edges(x, x1, x2, y, y1, y2),
            Template::TriangleSecond => h02_edges(y, y1, y2, x, x1, x2),
        }
    }
}

fn edge_key<'a>(a: &'a str, b: &'a str) -> (&'a str, &'a str) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Every role class of unions of two two-dominator shapes `A..C` and
/// `B..C` that share exactly one edge, at `C`, in generation order.
pub fn merged_unions() -> Vec<Shape> {
    let templates = [Template::Cycle, Template::TriangleFirst, Template::TriangleSecond];
    let mut classes: Vec<Shape> = Vec::new();
    for t1 in templates {
        for t2 in templates {
            for d1 in 0..2 {
                for d2 in 0..2 {
                    let first = ["c1", "c2"];
                    let mut second = ["c3", "c4"];
                    second[d2] = first[d1];
                    let e1 = t1.edges(["A", "a1", "a2", "C", first[0], first[1]]);
                    let e2 = t2.edges(["B", "b1", "b2", "C", second[0], second[1]]);
                    let s1: BTreeSet<_> = e1.iter().map(|&(a, b)| edge_key(a, b)).collect();
                    let s2: BTreeSet<_> = e2.iter().map(|&(a, b)| edge_key(a, b)).collect();
                    if s1.intersection(&s2).count() != 1 {
                        continue;
                    }
                    let union: Vec<(&str, &str)> = s1.union(&s2).copied().collect();
                    let name = format!("union_{}", classes.len() + 1);
                    let shape = Shape::from_labels(&name, &union, &["A", "B", "C"]);
                    let known = classes
                        .iter()
                        .any(|c| role_isomorphic(&c.graph, &c.dominators, &shape.graph, &shape.dominators));
                    if !known {
                        classes.push(shape);
                    }
                }
            }
        }
    }
    classes
}

/// The unions from [`merged_unions`] holding no alternative subgraph with
/// three dominators, renamed `merged_1..`.
pub fn merged_shapes() -> Vec<Shape> {
    merged_unions()
        .into_iter()
        .filter(|s| {
            let sp = s.standard_pair().expect("unions are standard after triangles");
            brute_force_alternative(&sp, 3).expect("unions are small").is_empty()
        })
        .enumerate()
        .map(|(i, mut s)| {
            s.name = format!("merged_{}", i + 1);
            s
        })
        .collect()
}

/// Path `u1 .. u_{3r}` plus `extra` chords; `u_i` is vertex `i - 1`.
fn path_family(name: &str, r: usize, extra: &[(u32, u32)], dominators: &[u32]) -> Shape {
    let n = 3 * r as u32;
    let mut edges: Vec<(u32, u32)> = (1..n).map(|i| (i - 1, i)).collect();
    edges.extend(extra.iter().map(|&(a, b)| (a - 1, b - 1)));
    let doms: Vec<u32> = dominators.iter().map(|d| d - 1).collect();
    Shape::from_indices(name, n as usize, &edges, &doms)
}

/// Edge-minimal alternative subgraphs with three or four dominators, each
/// reaching composition cost at most `3 r - 2`.
pub fn small_alternative_fixtures() -> Vec<Shape> {
    type Row = (&'static str, usize, &'static [(u32, u32)], &'static [u32]);
    let table: [Row; 17] = [
        ("r3_7_3", 3, &[(1, 7), (3, 9)], &[1, 5, 9]),
        ("r3_blocks", 3, &[(1, 3), (7, 9), (3, 7)], &[1, 5, 9]),
        ("r3_34_e37", 3, &[(1, 3), (4, 9), (3, 7)], &[1, 6, 9]),
        ("r4_10_3", 4, &[(1, 10), (3, 12)], &[1, 5, 8, 12]),
        ("r4_7_3", 4, &[(1, 7), (3, 12)], &[1, 5, 9, 12]),
        ("r4_10_6", 4, &[(1, 10), (6, 12)], &[1, 4, 8, 12]),
        ("r4_blocks_3_10", 4, &[(1, 3), (10, 12), (3, 10)], &[1, 5, 8, 12]),
        ("r4_blocks_u7", 4, &[(1, 3), (7, 12), (3, 7)], &[1, 5, 9, 12]),
        (
            "r4_blocks_u6_10",
            4,
            &[(1, 3), (7, 12), (3, 6), (6, 10)],
            &[1, 5, 9, 12],
        ),
        (
            "r4_blocks_u6_11",
            4,
            &[(1, 3), (7, 12), (3, 6), (6, 11)],
            &[1, 5, 9, 12],
        ),
        (
            "r4_onecut_s6_4_10",
            4,
            &[(1, 3), (7, 12), (3, 6), (4, 10)],
            &[1, 5, 9, 12],
        ),
        (
            "r4_onecut_s6_4_11",
            4,
            &[(1, 3), (7, 12), (3, 6), (4, 11)],
            &[1, 5, 9, 12],
        ),
        ("r4_onecut_s10", 4, &[(1, 3), (7, 12), (3, 10)], &[1, 5, 9, 12]),
        ("r4_onecut_s11", 4, &[(1, 3), (7, 12), (3, 11)], &[1, 5, 9, 12]),
        ("r4_67_e27", 4, &[(1, 6), (7, 12), (2, 7)], &[1, 4, 9, 12]),
        ("r4_67_e2_10", 4, &[(1, 6), (7, 12), (2, 10)], &[1, 4, 9, 12]),
        ("r4_34_e", 4, &[(1, 3), (4, 12), (3, 8)], &[1, 6, 9, 12]),
    ];
    table
        .iter()
        .map(|&(name, r, extra, doms)| path_family(name, r, extra, doms))
        .collect()
}

/// Cycle on `n` vertices, no dominators marked.
pub fn cycle(n: usize) -> Shape {
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    Shape::from_indices(&format!("cycle_{n}"), n, &edges, &[])
}

/// Cycle on `3 s` vertices with every third vertex a dominator.
pub fn alternating_cycle(s: usize) -> Shape {
    let n = 3 * s;
    let edges: Vec<(u32, u32)> = (0..n as u32).map(|i| (i, (i + 1) % n as u32)).collect();
    let doms: Vec<u32> = (0..s as u32).map(|i| 3 * i).collect();
    Shape::from_indices(&format!("alternating_{s}"), n, &edges, &doms)
}

/// `k` triangles sharing the dominator `0`.
pub fn friendship(k: usize) -> Shape {
    let mut edges = Vec::new();
    for i in 0..k as u32 {
        let (a, b) = (2 * i + 1, 2 * i + 2);
        edges.extend([(0, a), (0, b), (a, b)]);
    }
    Shape::from_indices(&format!("friendship_{k}"), 2 * k + 1, &edges, &[0])
}

/// Two triangles sharing one vertex.
pub fn bowtie() -> Shape {
    let mut s = friendship(2);
    s.name = "bowtie".into();
    s
}

/// Isomorphism between two multigraphs mapping marked vertices onto marked
/// vertices and preserving edge multiplicities.
pub fn role_isomorphic(
    g1: &UndirectedMultigraph,
    d1: &BTreeSet<VertexId>,
    g2: &UndirectedMultigraph,
    d2: &BTreeSet<VertexId>,
) -> bool {
    if g1.vertex_count() != g2.vertex_count() || g1.edge_count() != g2.edge_count() || d1.len() != d2.len() {
        return false;
    }
    let sig = |g: &UndirectedMultigraph, d: &BTreeSet<VertexId>, v: VertexId| (d.contains(&v), g.degree(v));
    let mut s1: Vec<_> = g1.vertices().map(|v| sig(g1, d1, v)).collect();
    let mut s2: Vec<_> = g2.vertices().map(|v| sig(g2, d2, v)).collect();
    s1.sort();
    s2.sort();
    if s1 != s2 {
        return false;
    }
    let order = bfs_order(g1);
    let targets: Vec<VertexId> = g2.vertices().collect();
    let mut map: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut used: BTreeSet<VertexId> = BTreeSet::new();

    #[allow(clippy::too_many_arguments)]
    fn extend(
        i: usize,
        order: &[VertexId],
        targets: &[VertexId],
        g1: &UndirectedMultigraph,
        d1: &BTreeSet<VertexId>,
        g2: &UndirectedMultigraph,
        d2: &BTreeSet<VertexId>,
        map: &mut BTreeMap<VertexId, VertexId>,
        used: &mut BTreeSet<VertexId>,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        for &w in targets {
            if used.contains(&w) || d1.contains(&v) != d2.contains(&w) || g1.degree(v) != g2.degree(w) {
                continue;
            }
            let consistent = map
                .iter()
                .all(|(&a, &b)| g1.edges_between(v, a).len() == g2.edges_between(w, b).len());
            if !consistent {
                continue;
            }
            map.insert(v, w);
            used.insert(w);
            if extend(i + 1, order, targets, g1, d1, g2, d2, map, used) {
                return true;
            }
            map.remove(&v);
            used.remove(&w);
        }
        false
    }

    extend(0, &order, &targets, g1, d1, g2, d2, &mut map, &mut used)
}

/// All vertices, each component in breadth-first order from its smallest
/// vertex.
fn bfs_order(g: &UndirectedMultigraph) -> Vec<VertexId> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in g.vertices() {
        if !seen.insert(s) {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            out.push(v);
            for w in g.neighbor_set(v) {
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates_have_expected_sizes() {
        assert_eq!((h01().graph.vertex_count(), h01().graph.edge_count()), (6, 6));
        assert_eq!((h02().graph.vertex_count(), h02().graph.edge_count()), (6, 7));
        assert!(!role_isomorphic(
            &h01().graph,
            &h01().dominators,
            &h02().graph,
            &h02().dominators
        ));
    }

    #[test]
    fn relabelled_cycle_is_isomorphic() {
        let a = alternating_cycle(2);
        assert!(role_isomorphic(
            &a.graph,
            &a.dominators,
            &h01().graph,
            &h01().dominators
        ));
        let mut wrong = a.dominators.clone();
        wrong.remove(&VertexId(3));
        wrong.insert(VertexId(1));
        assert!(!role_isomorphic(&a.graph, &wrong, &h01().graph, &h01().dominators));
    }

    #[test]
    fn union_and_merged_counts() {
        assert_eq!(merged_unions().len(), 10);
        assert_eq!(merged_shapes().len(), 6);
    }
}
