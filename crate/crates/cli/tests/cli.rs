mod common;

use std::path::Path;

use common::{data, load_cover, load_graph, path, run, run_in};
use kgraph::{canonical_cocycle, VertexId};
use kgraph_cli::format;

fn d(name: &str) -> String {
    path(&data(name))
}

#[test]
fn validate_reports_counts_and_errors() {
    let r = run(&["validate", &d("t2.kg")]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "valid 2-graph: 1 vertex, 2 edges, 1 square\n"));
    let r = run(&["validate", &d("q2.kg")]);
    assert_eq!(r.stdout, "valid 2-graph: 4 vertices, 4 edges, 1 square\n");
    let r = run(&["validate", &d("c3.kg")]);
    assert_eq!(r.stdout, "valid 3-graph: 1 vertex, 3 edges, 3 squares\n");

    let r = run(&["validate", &d("ff2_bad.kg")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("NotBijective: "), "{}", r.stderr);
    let r = run(&["validate", &d("q2_bad.kg")]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("BadSquare: "), "{}", r.stderr);
}

#[test]
fn parse_io_and_usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.kg");
    std::fs::write(&bad, "kgraph 1\nvertex v\nedge e one v v\n").unwrap();
    let r = run(&["validate", &path(&bad)]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("ParseError: ") && r.stderr.contains(":3:"), "{}", r.stderr);

    let r = run(&["validate", &path(&dir.path().join("missing.kg"))]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.starts_with("IoError: "));

    assert_eq!(run(&["classify", &d("l1.kg")]).code, 2, "--sheets is required");
    assert_eq!(run(&["no-such-command"]).code, 2);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn pi1_and_canonical_cocycle() {
    let r = run(&["pi1", &d("t2.kg"), "--full"]);
    assert_eq!(r.code, 0);
    assert!(r.stdout.contains("abelianization: "));
    assert!(r.stdout.contains("full presentation: "));

    let dir = tempfile::tempdir().unwrap();
    let r = run_in(dir.path(), &["cocycle-canonical", &d("ff2.kg")]);
    assert_eq!(r.code, 0);
    let g = load_graph(&data("ff2.kg"));
    let written = std::fs::read_to_string(dir.path().join("canonical.cocycle")).unwrap();
    assert_eq!(written, r.stdout);
    let parsed = format::parse_cocycle(&written, &g, "canonical.cocycle").unwrap();
    assert_eq!(parsed, canonical_cocycle(&g, VertexId(0)).unwrap());
}

/// Every emitted graph is a fixed point of read then write, and every
/// emitted cover file checks.
fn check_emitted(dir: &Path) {
    for entry in std::fs::read_dir(dir).unwrap() {
        let p = entry.unwrap().path();
        let text = std::fs::read_to_string(&p).unwrap();
        match p.extension().and_then(|e| e.to_str()) {
            Some("kg") => {
                assert!(text.starts_with(format::GENERATED_HEADER));
                assert_eq!(format::write_kgraph(&load_graph(&p)), text, "{}", p.display());
            }
            Some("cover") => {
                let r = run(&["check-cover", &path(&p)]);
                assert_eq!(r.code, 0, "{}: {}", p.display(), r.stderr);
                assert!(r.stdout.starts_with("valid covering: "));
            }
            _ => {}
        }
    }
}

#[test]
fn classify_writes_checked_files() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_in(dir.path(), &["classify", &d("c2.kg"), "--sheets", "3", "--emit-proof"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.ends_with("3 connected coverings up to isomorphism\n"));
    assert!(dir.path().join("proof.txt").exists());
    check_emitted(dir.path());
    for n in 1..=3 {
        let cover = path(&dir.path().join(format!("cover_{n}.cover")));
        let r = run(&["stabilizer", &cover, "--base", "u@0"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert!(r.stdout.contains(&format!("index {n},")));
    }
}

#[test]
fn skew_quotient_and_gross_tucker_files() {
    let dir = tempfile::tempdir().unwrap();
    let (skew, q, gt) = (dir.path().join("skew"), dir.path().join("q"), dir.path().join("gt"));
    let r = run_in(&skew, &["skew", &d("t2.kg"), &d("t2_s3.cocycle")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("order 6") && r.stdout.contains("connected: no"), "{}", r.stdout);
    check_emitted(&skew);
    let r = run_in(&q, &["quotient", &path(&skew.join("skew.cover"))]);
    assert_eq!(r.code, 1, "deck groups need a connected covering");
    assert!(r.stderr.starts_with("NotConnected: "));

    let r = run_in(&skew, &["skew", &d("t2.kg"), &d("t2_z3.cocycle")]);
    assert!(r.stdout.contains("order 3") && r.stdout.contains("connected: yes"), "{}", r.stdout);

    let cover = path(&skew.join("skew.cover"));
    let r = run_in(&q, &["quotient", &cover]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("order 3") && r.stdout.contains("induced covering: 1 sheet"), "{}", r.stdout);
    check_emitted(&q);

    let r = run_in(&gt, &["gross-tucker", &path(&data("ff2_bad.kg"))]);
    assert_eq!(r.code, 2, "a graph file is not a cover file");

    let r = run_in(&gt, &["skew", &d("l1.kg"), &d("l1_z3.cocycle")]);
    assert_eq!(r.code, 0);
    let r = run_in(&gt, &["gross-tucker", &path(&gt.join("skew.cover")), "--emit-proof"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    check_emitted(&gt);
    let lambda = load_graph(&gt.join("quotient.kg"));
    let text = std::fs::read_to_string(gt.join("gt.cocycle")).unwrap();
    format::parse_cocycle(&text, &lambda, "gt.cocycle").unwrap();
    let r = run(&["iso", &path(&gt.join("skew.cover")), &path(&gt.join("orbit.cover"))]);
    assert_eq!(r.stdout.lines().next(), Some("isomorphic"));
}

#[test]
fn skew_requires_a_finite_cocycle() {
    let dir = tempfile::tempdir().unwrap();
    let c = dir.path().join("z.cocycle");
    std::fs::write(&c, "target Z^1\neta e (1)\n").unwrap();
    let r = run_in(dir.path(), &["skew", &d("l1.kg"), &path(&c)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("TargetMismatch: "));

    // violates the square e f = f e in a nonabelian group
    std::fs::write(&c, "group r s\nrelator r^3\nrelator s^2\nrelator s r s r\neta e r\neta f s\n").unwrap();
    let r = run_in(dir.path(), &["skew", &d("t2.kg"), &path(&c)]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("CocycleInvalid: "), "{}", r.stderr);
}

#[test]
fn relative_skew_product() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_in(dir.path(), &["rskew", &d("l1.kg"), "--subgroup", "e^2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("relative skew product of index 2"));
    assert!(r.stdout.contains("connected: yes") && r.stdout.contains("attached: yes"));
    check_emitted(dir.path());

    let r = run_in(dir.path(), &["rskew", &d("t2.kg"), "--cocycle", &d("t2_s3.cocycle"), "--subgroup", "s"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.starts_with("relative skew product of index 3"));
    assert!(r.stdout.contains("attached: no"), "<s> is not normal in S3");

    let r = run_in(dir.path(), &["rskew", &d("l1.kg"), "--subgroup", "q"]);
    assert_eq!(r.code, 2);
}

#[test]
fn universal_cover_and_trees() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_in(dir.path(), &["universal-cover", &d("q2.kg"), "--emit-proof"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.ends_with("k-tree: yes\n"));
    check_emitted(dir.path());
    assert_eq!(load_cover(&dir.path().join("universal.cover")).sheets(), Some(1));

    let r = run_in(dir.path(), &["universal-cover", &d("l1.kg"), "--max-cosets", "1000"]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("CosetOverflow: "));
    assert_eq!(run(&["is-tree", &d("p2.kg")]).stdout, "k-tree: yes\n");
    assert_eq!(run(&["is-tree", &d("t2.kg")]).stdout, "k-tree: no\n");
}

#[test]
fn deck_morphism_and_iso() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_in(dir.path(), &["classify", &d("l1.kg"), "--sheets", "2"]);
    assert_eq!(r.code, 0);
    let two = path(&dir.path().join("cover_2.cover"));
    let r = run(&["deck", &two]);
    assert!(r.stdout.starts_with("deck group of order 2 on fibers of size 2; normal covering: yes"));

    // the same covering built as a skew product, over a separately written base
    let skew = dir.path().join("skew");
    assert_eq!(run_in(&skew, &["skew", &d("l1.kg"), &d("l1_z2.cocycle")]).code, 0);
    let other = path(&skew.join("skew.cover"));
    let r = run(&["iso", &two, &other]);
    assert_eq!(r.stdout.lines().next(), Some("isomorphic"));
    let one = path(&dir.path().join("cover_1.cover"));
    assert_eq!(run(&["iso", &one, &other]).stdout, "not isomorphic\n");

    let r = run(&["morphism", &two, &one, "--base", "v@1", "--to", "v@0"]);
    assert_eq!(r.stdout.lines().next(), Some("morphism exists"));
    let r = run(&["morphism", &two, &one, "--to", "nowhere"]);
    assert_eq!(r.code, 1);
    let r = run(&["morphism", &two, &path(&dir.path().join("cover_2.cover")), "--base", "v@0", "--to", "v@1"]);
    assert_eq!(r.stdout.lines().next(), Some("morphism exists"), "the deck swap");

    let t2 = tempfile::tempdir().unwrap();
    assert_eq!(run_in(t2.path(), &["classify", &d("t2.kg"), "--sheets", "1"]).code, 0);
    let r = run(&["iso", &one, &path(&t2.path().join("cover_1.cover"))]);
    assert_eq!(r.code, 1);
    assert!(r.stderr.starts_with("BasepointMismatch: "));
}
