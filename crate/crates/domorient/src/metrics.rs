//! Distance quantities of an orientation: theta, diameter, class distances,
//! the composition cost m, and strong distances.

use std::collections::{BTreeSet, VecDeque};

use crate::domination::StandardPair;
use crate::error::{Error, Result};
use crate::graph::{Digraph, DistanceMatrix, Orientation, VertexId, INF};

/// Largest vertex count accepted by exact strong-distance computations.
pub const EXACT_SD_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StrongMode {
    /// `d(u,v) + d(v,u)`.
    Upper,
    /// Minimum arc count of a strong subgraph containing both vertices.
    Exact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassDistances {
    pub d0: u32,
    pub d1: u32,
    pub d2: u32,
}

impl ClassDistances {
    pub fn m(&self) -> u32 {
        let m = (self.d0 as i64 - 2).max(self.d1 as i64 - 1).max(self.d2 as i64).max(0);
        m as u32
    }

    /// The extension bound `max{d0, d1 + 2, d2 + 4}`.
    pub fn cover_bound(&self) -> u32 {
        self.d0.max(self.d1 + 2).max(self.d2 + 4)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub diameter: u32,
    pub strong_diameter_upper: u32,
    pub strong_diameter_exact: Option<u32>,
    pub d0: u32,
    pub d1: u32,
    pub d2: u32,
    pub m: u32,
}

/// Distance matrix of a strong orientation, or `NotStrong`.
pub fn strong_matrix(o: &Orientation) -> Result<(Digraph, DistanceMatrix)> {
    let d = o.digraph();
    let m = d.distance_matrix();
    if !m.all_finite() {
        return Err(Error::NotStrong);
    }
    Ok((d, m))
}

pub fn theta(o: &Orientation, u: VertexId, v: VertexId) -> Result<u32> {
    let (d, m) = strong_matrix(o)?;
    let a = d.index_of(u).ok_or(Error::UnknownVertex(u))?;
    let b = d.index_of(v).ok_or(Error::UnknownVertex(v))?;
    Ok(m.get(a, b).max(m.get(b, a)))
}

pub fn diameter(o: &Orientation) -> Result<u32> {
    let (_, m) = strong_matrix(o)?;
    Ok(matrix_diameter(&m))
}

pub(crate) fn matrix_diameter(m: &DistanceMatrix) -> u32 {
    let n = m.len();
    let mut best = 0;
    for s in 0..n {
        for t in 0..n {
            best = best.max(m.get(s, t));
        }
    }
    best
}

pub(crate) fn matrix_class_distances(
    d: &Digraph,
    m: &DistanceMatrix,
    dominators: &BTreeSet<VertexId>,
) -> ClassDistances {
    let n = d.len();
    let is_dom: Vec<bool> = (0..n).map(|i| dominators.contains(&d.id(i))).collect();
    let mut cd = [0u32; 3];
    for s in 0..n {
        for t in s + 1..n {
            let class = is_dom[s] as usize + is_dom[t] as usize;
            let th = m.get(s, t).max(m.get(t, s));
            cd[class] = cd[class].max(th);
        }
    }
    ClassDistances {
        d0: cd[0],
        d1: cd[1],
        d2: cd[2],
    }
}

pub fn class_distances(o: &Orientation, dominators: &BTreeSet<VertexId>) -> Result<ClassDistances> {
    let (d, m) = strong_matrix(o)?;
    Ok(matrix_class_distances(&d, &m, dominators))
}

pub fn m_value(o: &Orientation, dominators: &BTreeSet<VertexId>) -> Result<u32> {
    Ok(class_distances(o, dominators)?.m())
}

pub fn strong_distance(o: &Orientation, u: VertexId, v: VertexId, mode: StrongMode) -> Result<u32> {
    let (d, m) = strong_matrix(o)?;
    let a = d.index_of(u).ok_or(Error::UnknownVertex(u))?;
    let b = d.index_of(v).ok_or(Error::UnknownVertex(v))?;
    match mode {
        StrongMode::Upper => Ok(m.get(a, b) + m.get(b, a)),
        StrongMode::Exact => {
            check_exact_limit(d.len())?;
            Ok(exact_pair(&d, &m, a, b))
        }
    }
}

fn check_exact_limit(n: usize) -> Result<()> {
    if n > EXACT_SD_LIMIT {
        return Err(Error::ExactLimit {
            what: "exact strong distance vertex count",
            limit: EXACT_SD_LIMIT,
            actual: n,
        });
    }
    Ok(())
}

pub(crate) fn matrix_strong_upper(m: &DistanceMatrix) -> u32 {
    let n = m.len();
    let mut best = 0;
    for s in 0..n {
        for t in s + 1..n {
            best = best.max(m.get(s, t) + m.get(t, s));
        }
    }
    best
}

pub fn strong_diameter_upper(o: &Orientation) -> Result<u32> {
    let (_, m) = strong_matrix(o)?;
    Ok(matrix_strong_upper(&m))
}

pub fn strong_diameter_exact(o: &Orientation) -> Result<u32> {
    let (d, m) = strong_matrix(o)?;
    check_exact_limit(d.len())?;
    Ok(exact_strong_diameter(d.len(), |x| d.out_neighbors(x), &m, 0))
}

fn exact_pair(d: &Digraph, m: &DistanceMatrix, a: usize, b: usize) -> u32 {
    let to_b: Vec<u32> = (0..d.len()).map(|x| m.get(x, b)).collect();
    exact_sd(d.len(), |x| d.out_neighbors(x), a, b, &to_b, m.get(a, b) + m.get(b, a))
}

/// Maximum exact strong distance over all pairs, stopping early once the
/// running maximum reaches `stop_at` (0 disables the shortcut).
pub(crate) fn exact_strong_diameter<'a>(
    n: usize,
    out: impl Fn(usize) -> &'a [usize] + Copy,
    m: &DistanceMatrix,
    stop_at: u32,
) -> u32 {
    let mut pairs: Vec<(u32, usize, usize)> = Vec::new();
    for s in 0..n {
        for t in s + 1..n {
            pairs.push((m.get(s, t) + m.get(t, s), s, t));
        }
    }
    // Pairs with large upper bounds first, so the running maximum rises fast
    // and pairs that cannot beat it are skipped.
    pairs.sort_by(|x, y| y.0.cmp(&x.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)));
    let mut best = 0;
    for (upper, s, t) in pairs {
        let lower = m.get(s, t).max(m.get(t, s)) + 1;
        if upper <= best {
            continue;
        }
        if lower >= upper {
            best = best.max(upper);
        } else {
            let to_t: Vec<u32> = (0..n).map(|x| m.get(x, t)).collect();
            best = best.max(exact_sd(n, out, s, t, &to_t, upper));
        }
        if stop_at != 0 && best >= stop_at {
            return best;
        }
    }
    best
}

/// Exact strong distance by enumerating simple `u -> v` paths `P` and
/// completing each with the cheapest `v -> u` walk in which arcs of `P` are
/// free. `to_v[x]` is the directed distance from `x` to `v`; `upper` is a
/// known feasible value.
pub(crate) fn exact_sd<'a>(
    n: usize,
    out: impl Fn(usize) -> &'a [usize] + Copy,
    u: usize,
    v: usize,
    to_v: &[u32],
    upper: u32,
) -> u32 {
    if u == v {
        return 0;
    }
    struct State {
        on_path: Vec<bool>,
        next: Vec<usize>,
        best: u32,
    }
    fn completion<'a>(
        n: usize,
        out: impl Fn(usize) -> &'a [usize],
        st: &State,
        from: usize,
        to: usize,
        budget: u32,
    ) -> u32 {
        let mut dist = vec![INF; n];
        let mut dq = VecDeque::new();
        dist[from] = 0;
        dq.push_back(from);
        while let Some(x) = dq.pop_front() {
            if x == to {
                return dist[x];
            }
            if dist[x] >= budget {
                continue;
            }
            for &y in out(x) {
                let w = if st.next[x] == y { 0 } else { 1 };
                let nd = dist[x] + w;
                if nd < dist[y] {
                    dist[y] = nd;
                    if w == 0 {
                        dq.push_front(y);
                    } else {
                        dq.push_back(y);
                    }
                }
            }
        }
        dist[to]
    }
    #[allow(clippy::too_many_arguments)]
    fn extend<'a>(
        n: usize,
        out: impl Fn(usize) -> &'a [usize] + Copy,
        st: &mut State,
        x: usize,
        len: u32,
        u: usize,
        v: usize,
        to_v: &[u32],
    ) {
        if x == v {
            let budget = st.best - len;
            let q = completion(n, out, st, v, u, budget);
            if q != INF && len + q < st.best {
                st.best = len + q;
            }
            return;
        }
        for &y in out(x) {
            if st.on_path[y] || to_v[y] == INF {
                continue;
            }
            // The return walk needs at least one arc outside the path.
            if len + 1 + to_v[y] + 1 >= st.best {
                continue;
            }
            st.on_path[y] = true;
            st.next[x] = y;
            extend(n, out, st, y, len + 1, u, v, to_v);
            st.next[x] = usize::MAX;
            st.on_path[y] = false;
        }
    }
    let mut st = State {
        on_path: vec![false; n],
        next: vec![usize::MAX; n],
        best: upper,
    };
    st.on_path[u] = true;
    extend(n, out, &mut st, u, 0, u, v, to_v);
    st.best
}

pub fn distance_report(o: &Orientation, dominators: &BTreeSet<VertexId>, with_exact: bool) -> Result<DistanceReport> {
    let (d, m) = strong_matrix(o)?;
    let cd = matrix_class_distances(&d, &m, dominators);
    let exact = if with_exact && d.len() <= EXACT_SD_LIMIT {
        Some(exact_strong_diameter(d.len(), |x| d.out_neighbors(x), &m, 0))
    } else {
        None
    };
    Ok(DistanceReport {
        diameter: matrix_diameter(&m),
        strong_diameter_upper: matrix_strong_upper(&m),
        strong_diameter_exact: exact,
        d0: cd.d0,
        d1: cd.d1,
        d2: cd.d2,
        m: cd.m(),
    })
}

/// Checks `theta(u, v) <= diam - 2` for every dominated `u` and dominator `v`.
pub fn lemma1_check(o: &Orientation, sp: &StandardPair) -> Result<bool> {
    if sp.graph.is_triangle() {
        return Err(Error::precondition("the bound is not claimed for a triangle"));
    }
    let (d, m) = strong_matrix(o)?;
    let diam = matrix_diameter(&m);
    for a in 0..d.len() {
        if sp.is_dominator(d.id(a)) {
            continue;
        }
        for b in 0..d.len() {
            if sp.is_dominator(d.id(b)) && m.get(a, b).max(m.get(b, a)) + 2 > diam {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
