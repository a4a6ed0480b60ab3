//! Exact minimum oriented diameter and oriented strong diameter.
//!
//! The pruned solvers run the orientation branch-and-bound; the enumerators
//! walk every orientation with one edge fixed and measure each strong one
//! directly, sharing no code with the search beyond the distance routines.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Arc, Orientation, UndirectedMultigraph};
use crate::metrics::{diameter, strong_diameter_exact};
use crate::search::{minimize, Goal, SearchOptions};

/// Default edge budget for the oriented diameter.
pub const DIAMETER_EDGE_BUDGET: usize = 28;
/// Default edge budget for the oriented strong diameter.
pub const STRONG_EDGE_BUDGET: usize = 22;
/// Edge limit for the unpruned enumerators.
pub const ENUMERATION_EDGE_LIMIT: usize = 20;

#[derive(Clone, Debug)]
pub struct ExactResult {
    pub optimum: u32,
    pub witness: Orientation,
    pub explored: u64,
    pub pruned: u64,
}

fn check_budget(g: &UndirectedMultigraph, budget: usize) -> Result<()> {
    if g.edge_count() > budget {
        return Err(Error::Budget {
            edges: g.edge_count(),
            budget,
        });
    }
    g.check_bridgeless()
}

fn run(g: &UndirectedMultigraph, goal: Goal, budget: usize) -> Result<ExactResult> {
    check_budget(g, budget)?;
    let outcome = minimize(g, &BTreeMap::new(), &goal, &SearchOptions::default())?;
    let (optimum, witness) = outcome
        .best
        .ok_or_else(|| Error::breach("bridgeless graph without a strong orientation"))?;
    Ok(ExactResult {
        optimum,
        witness,
        explored: outcome.explored,
        pruned: outcome.pruned,
    })
}

pub fn exact_oriented_diameter(g: &UndirectedMultigraph) -> Result<ExactResult> {
    exact_oriented_diameter_budget(g, DIAMETER_EDGE_BUDGET)
}

pub fn exact_oriented_diameter_budget(g: &UndirectedMultigraph, budget: usize) -> Result<ExactResult> {
    run(g, Goal::Diameter, budget)
}

pub fn exact_oriented_strong_diameter(g: &UndirectedMultigraph) -> Result<ExactResult> {
    exact_oriented_strong_diameter_budget(g, STRONG_EDGE_BUDGET)
}

pub fn exact_oriented_strong_diameter_budget(g: &UndirectedMultigraph, budget: usize) -> Result<ExactResult> {
    run(g, Goal::StrongExact, budget)
}

/// Calls `visit` on every strong orientation whose first edge points from
/// its lower to its upper endpoint.
pub fn for_each_strong_orientation(
    g: &UndirectedMultigraph,
    mut visit: impl FnMut(&Orientation) -> Result<()>,
) -> Result<u64> {
    let edges: Vec<_> = g.edges().collect();
    if edges.len() > ENUMERATION_EDGE_LIMIT {
        return Err(Error::ExactLimit {
            what: "enumeration edge count",
            limit: ENUMERATION_EDGE_LIMIT,
            actual: edges.len(),
        });
    }
    let free = edges.len().saturating_sub(1);
    let mut strong = 0;
    for mask in 0u64..(1u64 << free) {
        let arcs: BTreeMap<_, _> = edges
            .iter()
            .enumerate()
            .map(|(i, &(e, u, v))| {
                let flip = i > 0 && (mask >> (i - 1)) & 1 == 1;
                (e, if flip { Arc::new(v, u) } else { Arc::new(u, v) })
            })
            .collect();
        let o = Orientation::new(g, arcs)?;
        if o.is_strong() {
            strong += 1;
            visit(&o)?;
        }
    }
    Ok(strong)
}

fn enumerate(
    g: &UndirectedMultigraph,
    measure: impl Fn(&Orientation) -> Result<u32>,
) -> Result<Option<(u32, Orientation)>> {
    g.check_bridgeless()?;
    let mut best: Option<(u32, Orientation)> = None;
    for_each_strong_orientation(g, |o| {
        let value = measure(o)?;
        if best.as_ref().is_none_or(|(b, _)| value < *b) {
            best = Some((value, o.clone()));
        }
        Ok(())
    })?;
    Ok(best)
}

/// Minimum oriented diameter by measuring every orientation.
pub fn enumerate_oriented_diameter(g: &UndirectedMultigraph) -> Result<u32> {
    enumerate(g, diameter)?
        .map(|(v, _)| v)
        .ok_or_else(|| Error::breach("no strong orientation enumerated"))
}

/// Minimum oriented strong diameter by measuring every orientation.
pub fn enumerate_oriented_strong_diameter(g: &UndirectedMultigraph) -> Result<u32> {
    enumerate(g, strong_diameter_exact)?
        .map(|(v, _)| v)
        .ok_or_else(|| Error::breach("no strong orientation enumerated"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shapes;

    fn cycle(n: usize) -> UndirectedMultigraph {
        shapes::cycle(n).graph
    }

    #[test]
    fn cycles() {
        for n in 3..8 {
            assert_eq!(exact_oriented_diameter(&cycle(n)).unwrap().optimum, n as u32 - 1);
            assert_eq!(exact_oriented_strong_diameter(&cycle(n)).unwrap().optimum, n as u32);
        }
    }

    #[test]
    fn k4_matches_enumeration() {
        let k4 = UndirectedMultigraph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let full = enumerate_oriented_diameter(&k4).unwrap();
        assert_eq!(full, 3);
        assert_eq!(exact_oriented_diameter(&k4).unwrap().optimum, full);
    }

    #[test]
    fn witness_measures_the_optimum() {
        let g = shapes::bowtie().graph;
        let r = exact_oriented_diameter(&g).unwrap();
        assert_eq!(diameter(&r.witness).unwrap(), r.optimum);
        let s = exact_oriented_strong_diameter(&g).unwrap();
        assert_eq!(strong_diameter_exact(&s.witness).unwrap(), s.optimum);
    }

    #[test]
    fn budget_is_enforced() {
        let g = cycle(30);
        assert!(matches!(exact_oriented_diameter(&g), Err(Error::Budget { .. })));
    }
}
