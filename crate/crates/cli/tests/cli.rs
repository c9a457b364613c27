use std::path::{Path, PathBuf};
use std::process::Command;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn conley(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_conley"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_t_on_the_example() {
    let (code, out, _) = conley(&["verify-t", "--file", &fixture("example_2_12.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "chain map: ok; shape: ok; cover: ok (7 intervals)\n");
}

#[test]
fn enumerate_on_the_example() {
    let (code, out, _) = conley(&["enumerate-gttm", "--file", &fixture("example_2_12.json")]);
    assert_eq!(code, 0);
    assert_eq!(out, "solutions: 1; free dims: 0; T(2,3)=1\n");
}

#[test]
fn certify_ucc_outcomes() {
    let f = fixture("example_2_12.json");
    let (code, out, _) = conley(&["certify-ucc", "--file", &f, "--p", "2", "--q", "3"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("certificate: connection from 3 to 2; witness 2 < 3;"), "{out}");
    let (code, out, _) = conley(&["certify-ucc", "--file", &f, "--p", "1", "--q", "3"]);
    assert_eq!(code, 1);
    assert!(out.starts_with("no certificate"));
    let (code, _, err) = conley(&["certify-ucc", "--file", &f, "--p", "9", "--q", "3"]);
    assert_eq!(code, 2);
    assert!(err.contains("unknown element `9`"));
}

#[test]
fn singular_matrix_star() {
    let f = fixture("example_2_12.json");
    let (code, out, _) = conley(&["verify-delta", "--file", &f, "--singular", "--star", "0"]);
    assert_eq!(code, 1);
    assert!(out.contains("boundary: fails at (l1, m3)"), "{out}");
    let (code, _, _) = conley(&["verify-delta", "--file", &f, "--singular", "--star", "1"]);
    assert_eq!(code, 0);
    let (code, out, _) = conley(&["verify-delta", "--file", &f, "--matrix", "delta_lambda"]);
    assert_eq!(code, 0);
    assert!(out.contains("degree: ok"));
}

#[test]
fn homology_and_les() {
    let f = fixture("example_2_12.json");
    let (code, out, _) = conley(&["homology", "--file", &f, "--matrix", "delta_mu", "--interval", "1,2,3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "{1,2,3}: H0=0 H1=1; classes 1:g2+g3\n");
    let (code, out, _) = conley(&["les", "--file", &f, "--matrix", "delta_mu", "--pair", "1|2,3"]);
    assert_eq!(code, 0);
    assert_eq!(out, "({1}, {2,3}): exact; i* = [0]; p* = [1; 1]; delta = [1 1]\n");
    let (code, _, err) = conley(&["les", "--file", &f, "--pair", "1|3"]);
    assert_eq!(code, 2);
    assert!(err.contains("not an adjacent pair"));
    let (code, _, _) = conley(&["homology", "--file", &f, "--interval", "1,3"]);
    assert_eq!(code, 2);
}

#[test]
fn sweep_reports() {
    let f = fixture("example_2_12.json");
    let (code, out, _) = conley(&["sweep", "--file", &f, "--matrix", "delta_mu", "--check-oracle"]);
    assert_eq!(code, 0);
    assert!(out.contains("stage 2: primary none; change of basis (1, 3); T I + T(2,3)"), "{out}");
    assert!(out.ends_with("oracle: match\n"));
    let (_, oracle, _) = conley(&["ss-oracle", "--file", &f, "--matrix", "delta_mu"]);
    assert!(oracle.contains("E1: (1,0):1 (2,1):1 d1 (3,1):1"), "{oracle}");
    assert!(oracle.contains("E2: (3,1):1"));
    for name in ["random_a.json", "random_b.json", "random_c.json"] {
        let (code, out, _) = conley(&["verify-sweep", "--file", &fixture(name)]);
        assert_eq!(code, 0, "{name}: {out}");
        assert!(out.contains("expected pages: match"));
        let (code, _, _) = conley(&["sweep", "--file", &fixture(name), "--check-oracle"]);
        assert_eq!(code, 0);
    }
    // a partial order cannot be swept
    let (code, _, err) = conley(&["sweep", "--file", &fixture("double_well.json"), "--matrix", "missing"]);
    assert_eq!(code, 2);
    assert!(err.contains("no matrix named `missing`"));
}

#[test]
fn stale_expected_pages_fail() {
    let text = std::fs::read_to_string(fixture("random_a.json")).unwrap();
    let mut inst = conley::io::parse(&text).unwrap();
    inst.expected_pages.as_mut().unwrap().pages[0].dims.clear();
    let path = scratch("stale_pages.json");
    conley::io::save(&inst, &path).unwrap();
    let (code, out, _) = conley(&["verify-sweep", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("expected pages: differ at stage 1"), "{out}");
}

#[test]
fn morse_and_blocks() {
    let (code, out, _) = conley(&["morse-build", "--file", &fixture("double_well.json")]);
    assert_eq!(code, 0);
    assert!(out.starts_with("differential: d s = a + b\nhomology: H0=1 H1=0\n"), "{out}");
    let (code, out, _) = conley(&["morse-build", "--file", &fixture("circle.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("homology: H0=1 H1=1"));
    let (code, out, _) = conley(&["blocks", "--file", &fixture("example_2_12.json")]);
    assert_eq!(code, 0);
    assert!(out.contains("gttm set: free dims 0; unique: yes; block-diagonal: yes"), "{out}");
    let (code, _, _) = conley(&["morse-build", "--file", &fixture("example_2_12.json")]);
    assert_eq!(code, 2);
}

#[test]
fn interleaving_failure_is_reported() {
    let text = std::fs::read_to_string(fixture("example_2_12.json")).unwrap();
    let mut inst = conley::io::parse(&text).unwrap();
    let blocks = inst.blocks.as_mut().unwrap();
    blocks.blocks.insert(1, conley_core::Gf2Matrix::identity(2));
    let path = scratch("identity_blocks.json");
    conley::io::save(&inst, &path).unwrap();
    let (code, out, _) = conley(&["blocks", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("interleaving fails at index 1"), "{out}");
}

#[test]
fn broken_transition_is_located() {
    let text = std::fs::read_to_string(fixture("example_2_12.json")).unwrap();
    let mut inst = conley::io::parse(&text).unwrap();
    let basis = inst.basis.clone();
    inst.transition = Some(conley_core::TransitionCandidate::identity(basis));
    let path = scratch("identity_transition.json");
    conley::io::save(&inst, &path).unwrap();
    let (code, out, _) = conley(&["verify-t", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(out, "chain map: fails at (1, 3); shape: ok; cover: not examined\n");
}

#[test]
fn json_reports_are_deterministic() {
    let f = fixture("example_2_12.json");
    let args = ["--json", "enumerate-gttm", "--file", &f];
    let (code, a, _) = conley(&args);
    let (_, b, _) = conley(&args);
    assert_eq!(code, 0);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["ok"], true);
    assert_eq!(v["free_dims"], 0);
    assert_eq!(v["unknowns"][0]["position"], "T(2,3)");
    let (code, out, _) = conley(&["--json", "verify-t", "--file", "/no/such/file"]);
    assert_eq!(code, 2);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["ok"], false);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(conley(&["frobnicate"]).0, 2);
    assert_eq!(conley(&["verify-t"]).0, 2);
    assert_eq!(conley(&["verify-t", "--file", "x", "--bogus"]).0, 2);
    assert_eq!(conley(&["verify-delta", "--file", "x", "--star", "2"]).0, 2);
    assert_eq!(conley(&["--help"]).0, 0);
}

#[test]
fn load_errors_exit_2() {
    let path = scratch("bad_degree.json");
    std::fs::write(
        &path,
        r#"{"schema": 1, "poset": {"elements": ["1", "2"], "relations": [["1", "2"]]},
            "generators": [["a", "1", 0], ["b", "2", 0]], "matrices": {"delta": [["a", "b"]]}}"#,
    )
    .unwrap();
    let (code, _, err) = conley(&["verify-delta", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert_eq!(err, "error: matrices.delta: degree check fails at (a, b)\n");
    let path = scratch("syntax.json");
    std::fs::write(&path, "{\n  \"schema\": 1,\n  \"poset\": {\"elements\": [}\n}").unwrap();
    let (code, _, err) = conley(&["homology", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn examples_and_random_round_trip() {
    let (code, list, _) = conley(&["examples"]);
    assert_eq!(code, 0);
    assert_eq!(list.lines().count(), 6);
    let (_, text, _) = conley(&["examples", "circle"]);
    assert_eq!(text, std::fs::read_to_string(fixture("circle.json")).unwrap());
    let dir = scratch("written");
    let (code, _, _) = conley(&["examples", "--write", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(dir.join("example_2_12.json").exists());

    for args in [
        vec!["random", "--seed", "3", "--generators", "7", "--pages"],
        vec!["random", "--seed", "4", "--generators", "6", "--elements", "3"],
        vec!["random", "--seed", "5", "--generators", "0", "--elements", "0"],
    ] {
        let (code, text, _) = conley(&args);
        assert_eq!(code, 0);
        let inst = conley::io::parse(&text).unwrap();
        assert_eq!(inst.to_json(), text);
        let path = scratch("random.json");
        std::fs::write(&path, &text).unwrap();
        let (code, _, _) = conley(&["les", "--file", path.to_str().unwrap()]);
        assert_eq!(code, 0);
    }
}
