use domorient::alternative::{
    brute_force_alternative, classify_h01_h02, find_alternative_from, find_alternative_traced, max_alternative, H0Shape,
};
use domorient::generators::gen_random_standard;
use domorient::shapes;

fn corpus(count: u64) -> Vec<domorient::StandardPair> {
    (0..count)
        .map(|seed| gen_random_standard(2 + (seed % 4) as usize, 3, seed).unwrap())
        .filter(|sp| sp.graph.vertex_count() <= 20)
        .collect()
}

#[test]
fn search_output_is_enumerated_by_brute_force() {
    let pairs = corpus(300);
    assert!(pairs.len() >= 100);
    for sp in &pairs {
        let all = brute_force_alternative(sp, 2).unwrap();
        for &x in sp.dominator_set() {
            let (a, trace) = match find_alternative_traced(sp, x) {
                Ok(found) => found,
                Err(e) => panic!("{e}\n{:?}", sp.graph.edge_signature()),
            };
            assert!(a.is_valid(&sp.graph, sp.dominator_set()));
            assert_eq!(a.dominators()[0], x);
            assert!(a.s() >= 2);
            assert!(
                all.iter().any(|b| b.triples() == a.triples()),
                "missing from enumeration\n{}",
                trace.dump()
            );
        }
    }
}

#[test]
fn maximum_matches_brute_force() {
    for sp in corpus(120) {
        let all = brute_force_alternative(&sp, 2).unwrap();
        let best = all.iter().map(|a| a.s()).max().unwrap();
        let found = max_alternative(&sp).unwrap();
        assert!(found.exact);
        assert_eq!(found.subgraph.s(), best);
        assert!(found.subgraph.is_valid(&sp.graph, sp.dominator_set()));
    }
}

#[test]
fn maximum_is_edge_minimal() {
    for sp in corpus(60) {
        let found = max_alternative(&sp).unwrap().subgraph;
        for &e in found.edges() {
            let mut edges = found.edges().clone();
            edges.remove(&e);
            let trial = domorient::alternative::AlternativeSubgraph::new(
                found.dominators().to_vec(),
                found.dominated().clone(),
                edges,
            );
            assert!(!trial.is_valid(&sp.graph, sp.dominator_set()));
        }
    }
}

#[test]
fn templates_classify() {
    for (shape, expected) in [(shapes::h01(), H0Shape::H01), (shapes::h02(), H0Shape::H02)] {
        let sp = shape.standard_pair().unwrap();
        let x = *sp.dominator_set().iter().next().unwrap();
        let a = find_alternative_from(&sp, x).unwrap();
        assert_eq!(classify_h01_h02(&a, &sp.graph).unwrap(), expected);
    }
}

#[test]
fn single_dominator_is_rejected() {
    let sp = shapes::bowtie().standard_pair().unwrap();
    let err = find_alternative_from(&sp, domorient::VertexId(0)).unwrap_err();
    assert!(err.is_precondition());
}
