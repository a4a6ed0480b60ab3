use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use domorient::format::EdgeListDocument;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_domorient"))
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../domorient/fixtures")
        .join(format!("{name}.txt"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn field(stdout: &str, key: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}: ")))
        .unwrap_or_else(|| panic!("no {key} in\n{stdout}"))
        .to_string()
}

#[test]
fn orient_extremal_reports_bound_and_writes_strong_orientation() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o.txt");
    let plan = dir.path().join("plan.txt");
    let input = fixture("extremal_g2_p1");
    let o = run(&[
        "orient",
        input.to_str().unwrap(),
        "--output",
        out.to_str().unwrap(),
        "--emit-plan",
        plan.to_str().unwrap(),
        "--budget-edges",
        "20",
    ]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(field(&stdout, "formula-bound"), "8");
    assert!(field(&stdout, "measured-diameter").parse::<u32>().unwrap() <= 8);
    assert_eq!(field(&stdout, "oracle-optimum"), "8");
    let g = EdgeListDocument::parse(&fs::read_to_string(&input).unwrap())
        .unwrap()
        .graph()
        .unwrap();
    let oriented = EdgeListDocument::parse(&fs::read_to_string(&out).unwrap()).unwrap();
    assert!(oriented.orientation_of(&g).unwrap().is_strong());
    let dump = fs::read_to_string(&plan).unwrap();
    assert!(dump.starts_with("plan objective=diam gamma=2 bound=8"));
}

#[test]
fn triangle_has_diameter_two() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("t.txt");
    fs::write(&input, "3 3\n0 1\n1 2\n2 0\n").unwrap();
    let o = run(&["orient", input.to_str().unwrap(), "--objective", "sdiam"]);
    assert!(o.status.success());
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(field(&stdout, "measured-diameter"), "2");
    assert_eq!(field(&stdout, "formula-bound"), "6");
    assert_eq!(field(&stdout, "sdiam-exact"), "3");
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bridge = dir.path().join("bridge.txt");
    fs::write(&bridge, "4 4\n0 1\n1 2\n2 0\n2 3\n").unwrap();
    assert_eq!(run(&["orient", bridge.to_str().unwrap()]).status.code(), Some(3));
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "3 3\n0 1\n1 x\n").unwrap();
    assert_eq!(run(&["orient", bad.to_str().unwrap()]).status.code(), Some(2));
    let h01 = fixture("h01");
    let o = run(&["exact", h01.to_str().unwrap(), "--budget-edges", "5"]);
    assert_eq!(o.status.code(), Some(5));
    let o = run(&["orient", h01.to_str().unwrap(), "--dominators", "0"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn exact_values() {
    let dir = tempfile::tempdir().unwrap();
    let c6 = dir.path().join("c6.txt");
    fs::write(&c6, "6 6\n0 1\n1 2\n2 3\n3 4\n4 5\n5 0\n").unwrap();
    let o = run(&["exact", c6.to_str().unwrap()]);
    assert_eq!(field(&String::from_utf8(o.stdout).unwrap(), "optimum"), "5");
    let bowtie = fixture("bowtie");
    let o = run(&["exact", bowtie.to_str().unwrap(), "--objective", "sdiam"]);
    assert_eq!(field(&String::from_utf8(o.stdout).unwrap(), "optimum"), "6");
    let ex = fixture("extremal_g2_p2");
    let o = run(&["exact", ex.to_str().unwrap()]);
    assert_eq!(field(&String::from_utf8(o.stdout).unwrap(), "optimum"), "8");
}

#[test]
fn gamma_and_generate() {
    let o = run(&["gamma", fixture("bowtie").to_str().unwrap()]);
    let stdout = String::from_utf8(o.stdout).unwrap();
    assert_eq!(field(&stdout, "gamma"), "1");
    let o = run(&["generate", "random", "--n", "10", "--extra", "4", "--seed", "7"]);
    let generated = EdgeListDocument::parse(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let golden = EdgeListDocument::parse(&fs::read_to_string(fixture("random_n10_e4_s7")).unwrap()).unwrap();
    assert_eq!(generated.edges, golden.edges);
    let o = run(&["generate", "extremal", "--gamma", "2", "--pattern", "2"]);
    let generated = EdgeListDocument::parse(&String::from_utf8(o.stdout).unwrap()).unwrap();
    let golden = EdgeListDocument::parse(&fs::read_to_string(fixture("extremal_g2_p2")).unwrap()).unwrap();
    assert_eq!(generated.edges, golden.edges);
    assert_eq!(generated.dominators, golden.dominators);
    assert_eq!(
        run(&["generate", "extremal", "--gamma", "2", "--pattern", "3"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn bench_is_deterministic_and_clean() {
    let o = run(&["bench", "--count", "0"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("violations=0"));
    let a = run(&["bench", "--count", "30", "--n", "10", "--seed", "1"]);
    let b = run(&["bench", "--count", "30", "--n", "10", "--seed", "1"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("violations=0"));
}

#[test]
fn probe_runs() {
    let o = run(&["probe2c", "--count", "3", "--n", "6", "--seed", "2"]);
    assert!(o.status.success());
    assert!(String::from_utf8(o.stdout).unwrap().contains("summary: samples=3"));
}
