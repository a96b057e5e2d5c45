use std::path::PathBuf;

use ihom_cli::{corpus, main_with, parse_scx};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("ihom".to_string()).chain(args.iter().map(|s| s.to_string()));
    let code = main_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn ih_on_node() {
    let (code, out, _) = run(&["ih", &fixture("node.scx")]);
    assert_eq!(code, 0);
    assert_eq!(out.trim(), "IH^c: k=0:1 k=1:1");
    let (_, out, _) = run(&["ih", &fixture("tacnode.scx")]);
    assert_eq!(out.trim(), "IH^c: k=0:2 k=1:2");
}

#[test]
fn tsv_rows() {
    let (code, out, _) = run(&["homology", "corpus:torus", "--tsv"]);
    assert_eq!(code, 0);
    assert_eq!(out, "degree\tdim\n0\t1\n1\t2\n2\t1\n");
}

#[test]
fn input_errors_exit_2() {
    let (code, _, err) = run(&["ih", &fixture("node.scx"), "--p", "0,9"]);
    assert_eq!(code, 2);
    assert!(err.contains("invalid perversity pair"), "{err}");
    let (code, _, _) = run(&["ih", "/nonexistent/file.scx"]);
    assert_eq!(code, 2);
    let (code, _, _) = run(&["no-such-command"]);
    assert_eq!(code, 2);
    let dir = std::env::temp_dir().join(format!("ihom-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.scx");
    std::fs::write(&bad, "complex c dim 1\ntop a,b\nskeleton 0 a,b\n").unwrap();
    let (code, _, err) = run(&["ih", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn verify_corpus_passes() {
    let (code, out, _) = run(&["verify-corpus"]);
    assert_eq!(code, 0, "{out}");
    assert!(!out.contains("FAIL"));
    let (again, out2, _) = run(&["verify-corpus"]);
    assert_eq!((again, out2), (code, out));
}

#[test]
fn closed_supports_with_open_set() {
    let (_, out, _) = run(&["ih", "corpus:cone-hexagon", "--supports", "closed", "--tsv"]);
    assert_eq!(out, "degree\tdim\n0\t0\n1\t0\n2\t1\n");
    let (_, out, _) = run(&["ih", "corpus:cone-hexagon", "--open", "c; u0_0"]);
    assert_eq!(out.trim(), "IH^c: k=0:1 k=1:0 k=2:0");
}

#[test]
fn perversity_flags() {
    // with q_1 = 1 the pairing at the node is never consulted: ordinary homology
    for entry in ["corpus:node", "corpus:tacnode"] {
        let (code, out, _) = run(&["ih", entry, "--p", "0,0", "--q", "0,1"]);
        assert_eq!((code, out.trim()), (0, "IH^c: k=0:1 k=1:2"));
    }
    let (code, out, _) = run(&["ih", "corpus:node", "--loose-mode", "literal"]);
    assert_eq!((code, out.trim()), (0, "IH^c: k=0:1 k=1:1"));
}

#[test]
fn resolution_commands() {
    let (code, out, _) = run(&["check-small", "corpus:suspension", "--case", "sphere-blowup"]);
    assert_eq!(code, 0);
    assert!(out.contains("small: no"), "{out}");
    let (code, out, _) = run(&["strict-transform", "corpus:node", "--cycle", "both-petals"]);
    assert_eq!(code, 0, "{out}");
    assert_eq!(out.lines().next().unwrap().matches('+').count(), 5);
    let (code, out, _) = run(&["verify-smallres", "corpus:suspended-torus"]);
    assert_eq!(code, 0, "{out}");
    let (code, _, err) = run(&["verify-smallres", "corpus:suspension", "--case", "sphere-blowup"]);
    assert_eq!(code, 2);
    assert!(err.contains("not small"), "{err}");
}

#[test]
fn singular_point_commands() {
    for args in [
        vec!["local", "corpus:suspended-torus"],
        vec!["formulas", "corpus:tacnode"],
        vec!["pair", "corpus:tacnode"],
        vec!["duality", "corpus:suspension", "--case", "sphere-poles"],
        vec!["check-strat", "corpus:torus", "--complex", "torus"],
    ] {
        let (code, out, err) = run(&args);
        assert_eq!(code, 0, "{args:?}: {out}{err}");
    }
    let (_, out, _) = run(&["check-strat", "corpus:torus", "--complex", "torus"]);
    assert!(out.contains("frontier condition: holds"));
}

#[test]
fn bad_frontier_is_a_mismatch() {
    // X_1 is one edge of each triangle; each top stratum's closure meets it in half
    let dir = std::env::temp_dir().join(format!("ihom-frontier-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let f = dir.join("x.scx");
    std::fs::write(&f, "complex y dim 2\ntop a,b,x\ntop b,c,y\nskeleton 1 a,b; b,c\n").unwrap();
    let (code, out, _) = run(&["check-strat", f.to_str().unwrap()]);
    std::fs::remove_dir_all(&dir).unwrap();
    assert!(out.contains("frontier condition: fails"), "{out}");
    assert_eq!(code, 1);
}

#[test]
fn corpus_round_trips() {
    for e in corpus::entries() {
        let doc = parse_scx(&e.text).unwrap();
        assert_eq!(parse_scx(&doc.emit()).unwrap(), doc, "{}", e.name);
    }
    let (code, out, _) = run(&["corpus"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "suspended-torus"));
}
