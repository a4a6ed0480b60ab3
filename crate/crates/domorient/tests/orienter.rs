use domorient::generators::{gen_extremal, gen_random_bridgeless, Gadget};
use domorient::metrics::strong_diameter_upper;
use domorient::orienter::{orient, Objective};
use domorient::quotient::{diameter_bound, strong_diameter_bound};

fn corpus(count: u64) -> Vec<domorient::UndirectedMultigraph> {
    (0..count)
        .map(|seed| {
            let n = 4 + (seed % 9) as usize;
            let extra = (seed / 9 % 4) as usize;
            gen_random_bridgeless(n, extra, seed).unwrap()
        })
        .collect()
}

#[test]
fn random_graphs_meet_the_diameter_bound() {
    for (i, g) in corpus(200).iter().enumerate() {
        let (o, plan, report) = match orient(g, None, Objective::Diameter) {
            Ok(x) => x,
            Err(e) => panic!("graph {i}: {e}\n{:?}", g.edge_signature()),
        };
        assert!(o.is_strong());
        assert!(report.diameter <= diameter_bound(report.gamma), "graph {i}");
        assert_eq!(plan.replay().unwrap(), o, "graph {i}");
    }
}

#[test]
fn random_graphs_meet_the_strong_bound() {
    for (i, g) in corpus(200).iter().enumerate() {
        let (o, plan, report) = match orient(g, None, Objective::StrongDiameter) {
            Ok(x) => x,
            Err(e) => panic!("graph {i}: {e}\n{:?}", g.edge_signature()),
        };
        assert!(
            strong_diameter_upper(&o).unwrap() <= strong_diameter_bound(report.gamma),
            "graph {i}"
        );
        assert_eq!(plan.replay().unwrap(), o, "graph {i}");
    }
}

#[test]
fn extremal_graphs() {
    for gadget in [Gadget::Left, Gadget::Right] {
        let (g, d) = gen_extremal(2, &[gadget]).unwrap();
        let (_, _, report) = orient(&g, Some(&d), Objective::Diameter).unwrap();
        assert_eq!(report.diameter, 8);
    }
}

#[test]
fn plan_hash_is_deterministic() {
    let g = gen_random_bridgeless(10, 4, 7).unwrap();
    let (_, a, _) = orient(&g, None, Objective::Diameter).unwrap();
    let (_, b, _) = orient(&g, None, Objective::Diameter).unwrap();
    assert_eq!(a.hash(), b.hash());
    assert_eq!(a.dump().lines().count(), a.steps.len() + 2);
}

#[test]
fn witness_star_and_chains() {
    use domorient::orienter::StepKind;
    use domorient::shapes::{witness_chain, witness_star};
    let star = witness_star().standard_pair().unwrap();
    let d = domorient::DominatingSet::new(&star.graph, star.dominator_set().clone()).unwrap();
    let (_, plan, report) = orient(&star.graph, Some(&d), Objective::Diameter).unwrap();
    assert_eq!(plan.steps[0].kind, StepKind::Star);
    assert!(report.holds());
    for k in 1..=4 {
        let chain = witness_chain(k).standard_pair().unwrap();
        let d = domorient::DominatingSet::new(&chain.graph, chain.dominator_set().clone()).unwrap();
        let (o, plan, report) = orient(&chain.graph, Some(&d), Objective::Diameter).unwrap();
        assert_eq!(plan.steps[0].kind, StepKind::Chain { length: k + 1 }, "k = {k}");
        assert!(report.holds());
        assert_eq!(plan.replay().unwrap(), o);
    }
}

#[test]
fn composition_cost_search_matches_enumeration() {
    use domorient::metrics::m_value;
    use domorient::oracle::for_each_strong_orientation;
    use domorient::search::{minimize, Goal, SearchOptions};
    use std::collections::BTreeMap;
    let mut fixtures = domorient::shapes::small_alternative_fixtures();
    fixtures.extend(domorient::shapes::merged_shapes());
    for s in fixtures {
        let mut best = u32::MAX;
        for_each_strong_orientation(&s.graph, |o| {
            best = best.min(m_value(o, &s.dominators)?);
            Ok(())
        })
        .unwrap();
        let found = minimize(
            &s.graph,
            &BTreeMap::new(),
            &Goal::MValue(s.dominators.clone()),
            &SearchOptions::default(),
        )
        .unwrap()
        .best
        .unwrap()
        .0;
        assert_eq!(found, best, "{}", s.name);
    }
}
