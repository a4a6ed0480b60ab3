use std::fs;
use std::path::PathBuf;

use domorient::format::EdgeListDocument;
use domorient::generators::probe_two_connected;
use domorient::minimum_dominating_set;
use domorient::oracle::{
    enumerate_oriented_diameter, enumerate_oriented_strong_diameter, exact_oriented_diameter,
    exact_oriented_strong_diameter,
};

#[test]
fn two_connected_graph_above_three_gamma_strong_diameter() {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/two_connected_sdiam7.txt");
    let g = EdgeListDocument::parse(&fs::read_to_string(path).unwrap())
        .unwrap()
        .graph()
        .unwrap();
    assert!(g.is_two_connected());
    let gamma = minimum_dominating_set(&g).len() as u32;
    assert_eq!(gamma, 2);
    assert_eq!(enumerate_oriented_diameter(&g).unwrap(), 5);
    assert_eq!(exact_oriented_diameter(&g).unwrap().optimum, 5);
    assert_eq!(enumerate_oriented_strong_diameter(&g).unwrap(), 7);
    assert_eq!(exact_oriented_strong_diameter(&g).unwrap().optimum, 7);
    assert!(7 > 3 * gamma);
}

#[test]
fn probe_reproduces_the_fixture() {
    let rows = probe_two_connected(20, 7, 3).unwrap();
    let row = &rows[17];
    assert!(row.counterexample);
    assert_eq!(
        (row.gamma, row.oriented_diameter, row.oriented_strong_diameter),
        (2, 5, 7)
    );
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/two_connected_sdiam7.txt");
    let doc = EdgeListDocument::parse(&fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(doc.edges, row.edges);
}
