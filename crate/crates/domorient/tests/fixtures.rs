use std::fs;
use std::path::PathBuf;

use domorient::domination::is_standard;
use domorient::format::EdgeListDocument;
use domorient::generators::{gen_extremal, gen_random_bridgeless, Gadget};
use domorient::shapes;

fn fixture(name: &str) -> EdgeListDocument {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(format!("{name}.txt"));
    let text = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    let doc = EdgeListDocument::parse(&text).unwrap();
    assert_eq!(doc.to_string(), text, "{name} is not canonical");
    doc
}

#[test]
fn every_fixture_is_a_standard_pair_or_bridgeless() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let mut count = 0;
    for entry in fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let doc = fixture(&name);
        let g = doc.graph().unwrap();
        assert!(g.is_connected() && g.is_bridgeless(), "{name}");
        if let Some(d) = doc.dominator_set() {
            if !name.starts_with("extremal") {
                assert!(is_standard(&g, &d), "{name}");
            }
        }
        count += 1;
    }
    assert_eq!(count, 31);
}

#[test]
fn shape_fixtures_match_constructors() {
    let mut all = vec![shapes::h01(), shapes::h02(), shapes::bowtie(), shapes::witness_star()];
    all.extend(shapes::merged_shapes());
    all.extend(shapes::small_alternative_fixtures());
    for s in all {
        let sp = s.standard_pair().unwrap();
        let doc = fixture(&s.name);
        assert_eq!(
            doc.graph().unwrap().edge_signature(),
            sp.graph.edge_signature(),
            "{}",
            s.name
        );
        assert_eq!(doc.dominator_set().as_ref(), Some(sp.dominator_set()), "{}", s.name);
    }
}

#[test]
fn generator_goldens() {
    for (p, gadget) in [(1, Gadget::Left), (2, Gadget::Right)] {
        let (g, d) = gen_extremal(2, &[gadget]).unwrap();
        let doc = fixture(&format!("extremal_g2_p{p}"));
        assert_eq!(doc.graph().unwrap().edge_signature(), g.edge_signature());
        assert_eq!(doc.dominator_set().as_ref(), Some(d.members()));
    }
    let g = gen_random_bridgeless(10, 4, 7).unwrap();
    let doc = fixture("random_n10_e4_s7");
    assert_eq!(doc.edges.len(), 14);
    assert_eq!(doc.graph().unwrap().edge_signature(), g.edge_signature());
}
