use proptest::prelude::*;

use domorient::domination::{pull_back, standardize};
use domorient::ears::ear_orientation;
use domorient::format::EdgeListDocument;
use domorient::generators::gen_random_bridgeless;
use domorient::metrics::{diameter, strong_diameter_upper};
use domorient::quotient::{diameter_bound, strong_diameter_bound};
use domorient::{minimum_dominating_set, orient, Objective};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(64)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn generator_is_deterministic(n in 3usize..14, extra in 0usize..6, seed in any::<u64>()) {
        let a = gen_random_bridgeless(n, extra, seed).unwrap();
        let b = gen_random_bridgeless(n, extra, seed).unwrap();
        prop_assert_eq!(a.edge_signature(), b.edge_signature());
        prop_assert!(a.is_bridgeless() && a.is_connected());
    }

    #[test]
    fn edge_list_round_trip(n in 3usize..14, extra in 0usize..6, seed in any::<u64>()) {
        let g = gen_random_bridgeless(n, extra, seed).unwrap();
        let d = minimum_dominating_set(&g);
        let doc = EdgeListDocument::from_graph(&g).with_comment("round trip").with_dominators(d.members());
        let back = EdgeListDocument::parse(&doc.to_string()).unwrap();
        prop_assert_eq!(&back, &doc);
        prop_assert_eq!(back.graph().unwrap().edge_signature(), g.edge_signature());
    }

    #[test]
    fn ear_orientation_is_strong(n in 3usize..16, extra in 0usize..8, seed in any::<u64>()) {
        let g = gen_random_bridgeless(n, extra, seed).unwrap();
        prop_assert!(ear_orientation(&g).unwrap().is_strong());
    }

    #[test]
    fn pull_back_does_not_grow_distances(n in 3usize..12, extra in 0usize..5, seed in any::<u64>()) {
        let g = gen_random_bridgeless(n, extra, seed).unwrap();
        let d = minimum_dominating_set(&g);
        let sp = standardize(&g, &d).unwrap();
        let o = ear_orientation(&sp.graph).unwrap();
        let back = pull_back(&sp.provenance, &g, &o).unwrap();
        prop_assert!(back.is_strong());
        prop_assert!(diameter(&back).unwrap() <= diameter(&o).unwrap());
        prop_assert!(strong_diameter_upper(&back).unwrap() <= strong_diameter_upper(&o).unwrap());
    }

    #[test]
    fn orient_meets_both_bounds(n in 3usize..14, extra in 0usize..6, seed in any::<u64>()) {
        let g = gen_random_bridgeless(n, extra, seed).unwrap();
        let (o, plan, report) = orient(&g, None, Objective::Diameter).unwrap();
        prop_assert!(report.diameter <= diameter_bound(report.gamma));
        prop_assert_eq!(plan.replay().unwrap(), o);
        let (o, _, report) = orient(&g, None, Objective::StrongDiameter).unwrap();
        prop_assert!(strong_diameter_upper(&o).unwrap() <= strong_diameter_bound(report.gamma));
    }
}
