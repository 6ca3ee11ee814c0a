use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use sarf_kit::Decomposition;
use serde_json::Value;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn sarf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sarf-kit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p: PathBuf = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

fn groups(d: &Decomposition) -> Vec<Vec<String>> {
    d.clusters().map(|(_, m)| m.iter().cloned().collect()).collect()
}

#[test]
fn cluster_two_pairs_with_both_algorithms() {
    for algorithm in ["sarf", "newman"] {
        let o = sarf(&["cluster", "--input", &fixture("two_pairs.tsv"), "--algorithm", algorithm]);
        assert!(o.status.success(), "{}", stderr(&o));
        let d = Decomposition::from_json(&stdout(&o)).unwrap();
        assert_eq!(groups(&d), vec![vec!["A", "B"], vec!["C", "D"]]);
    }
}

#[test]
fn cluster_writes_all_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("d.json");
    let dend = dir.path().join("dend.json");
    let weights = dir.path().join("w.tsv");
    let o = sarf(&[
        "cluster",
        "--input",
        &fixture("editor_members.tsv"),
        "--output",
        out.to_str().unwrap(),
        "--dendrogram",
        dend.to_str().unwrap(),
        "--weights",
        weights.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let d = Decomposition::from_json(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(d.universe_size(), 8);
    let dendrogram = sarf_kit::Dendrogram::from_json(&std::fs::read_to_string(dend).unwrap()).unwrap();
    assert_eq!(dendrogram.merges().len(), 7);
    let w = sarf_kit::parse_class_graph(&std::fs::read_to_string(weights).unwrap()).unwrap();
    assert_eq!(w.vertex_count(), 8);
    // nested modules are folded into their outer module
    assert!(!d.contains("Shape$Circle") && d.contains("Shape"));
}

#[test]
fn dedication_emits_weighted_graph() {
    let o = sarf(&["dedication", "--input", &fixture("editor_members.tsv")]);
    assert!(o.status.success());
    let g = sarf_kit::parse_class_graph(&stdout(&o)).unwrap();
    // six modules call Logger, each through members it shares with others
    assert_eq!(g.fanin("Logger"), 6);
    assert!(g.in_strength("Logger") <= 1.0 + 1e-9);
    assert_eq!(g.weight("Parser", "Lexer"), Some(1.0));
}

#[test]
fn level_flag_overrides_inference() {
    let o = sarf(&["cluster", "--input", &fixture("two_pairs.tsv"), "--level", "member"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 1"));
}

#[test]
fn missing_file_exits_two() {
    let o = sarf(&["cluster", "--input", "does/not/exist.tsv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("exist.tsv"));
}

#[test]
fn parse_error_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.tsv", "A\tB\t-1\n");
    let o = sarf(&["cluster", "--input", &bad]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn eval_identical_files() {
    let r = fixture("reference.json");
    let o = sarf(&["eval", "--input", &r, "--reference", &r]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mojofm"], 100.0);
    assert_eq!(v["mojosim"], 100.0);
    assert_eq!(v["K"], 2);
    assert_eq!(v["K_a"], 2);
}

#[test]
fn eval_split_fixture() {
    let o = sarf(&["eval", "--input", &fixture("computed.json"), "--reference", &fixture("reference.json"),
                   "--measures", "mojofm,mojosim,mno,mojo,max_mno"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mojofm"], 75.0);
    assert_eq!(v["mojosim"], 80.0);
    assert_eq!(v["mno"], 2);
    assert_eq!(v["mojo"], 2);
    assert_eq!(v["max_mno"], 8);
}

#[test]
fn eval_single_measure() {
    let o = sarf(&["eval", "--input", &fixture("computed.json"), "--reference", &fixture("reference.json"),
                   "--measures", "ned"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.as_object().unwrap().len(), 1);
    assert_eq!(v["ned"], 0.0);
}

#[test]
fn eval_universe_mismatch_needs_restriction() {
    let args = |extra: &'static [&'static str]| {
        let mut a = vec!["eval".to_owned(), "--input".into(), fixture("v2.json"), "--reference".into(), fixture("v3.json")];
        a.extend(extra.iter().map(|s| s.to_string()));
        a
    };
    let plain = args(&[]);
    let o = sarf(&plain.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("different module sets"));
    let restricted = args(&["--restrict"]);
    let o = sarf(&restricted.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(o.status.success());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mojofm"], 100.0);
}

#[test]
fn authdecomp_traces_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("a\t6\na.b\t3\n", vec![("a", 9)]),
        ("a\t6\nb\t7\n", vec![("a", 6), ("b", 7)]),
        ("a\t2\na.b\t2\n", vec![("a", 4)]),
    ];
    for (i, (layout, expected)) in cases.iter().enumerate() {
        let mut body = String::new();
        let mut m = 0;
        for line in layout.lines() {
            let (pkg, n) = line.split_once('\t').unwrap();
            for _ in 0..n.parse::<usize>().unwrap() {
                body.push_str(&format!("M{m:02}\t{pkg}\n"));
                m += 1;
            }
        }
        let path = write(dir.path(), &format!("p{i}.tsv"), &body);
        let o = sarf(&["authdecomp", "--input", &path]);
        assert!(o.status.success(), "{}", stderr(&o));
        let d = Decomposition::from_json(&stdout(&o)).unwrap();
        let got: Vec<(&str, usize)> = d.clusters().map(|(n, s)| (n, s.len())).collect();
        assert_eq!(&got, expected);
    }
}

#[test]
fn authdecomp_threshold_flag() {
    let o = sarf(&["authdecomp", "--input", &fixture("editor_packages.tsv"), "--threshold", "0"]);
    let d = Decomposition::from_json(&stdout(&o)).unwrap();
    assert_eq!(d.cluster_count(), 4);
    let o = sarf(&["authdecomp", "--input", &fixture("editor_packages.tsv")]);
    let d = Decomposition::from_json(&stdout(&o)).unwrap();
    assert_eq!(d.cluster_count(), 1);
}

#[test]
fn stability_series() {
    let o = sarf(&["stability", "--input", &fixture("v1.json"), "--input", &fixture("v2.json"),
                   "--input", &fixture("v3.json")]);
    assert!(o.status.success(), "{}", stderr(&o));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["transitions"][0]["stability"], 90.0);
    assert_eq!(v["transitions"][1]["stability"], 100.0);
    assert_eq!(v["transitions"][1]["shared"], 10);
    assert_eq!(v["average"], 95.0);

    let o = sarf(&["stability", "--input", &fixture("v1.json"), "--format", "text"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn occupancy_warnings() {
    let dir = tempfile::tempdir().unwrap();
    let mut body = String::new();
    for (pkg, n) in [("a", 5), ("b", 5), ("c", 10)] {
        for i in 0..n {
            body.push_str(&format!("{pkg}{i}\t{pkg}\n"));
        }
    }
    let path = write(dir.path(), "p.tsv", &body);
    let o = sarf(&["occupancy", "--input", &path]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["percent"], 50.0);
    assert!(stderr(&o).contains("warning"));

    let even: String = (0..20).map(|i| format!("m{i}\tp{}\n", i % 4)).collect();
    let path = write(dir.path(), "even.tsv", &even);
    let o = sarf(&["occupancy", "--input", &path]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["percent"], 25.0);
    assert!(stderr(&o).is_empty());

    let path = write(dir.path(), "one.tsv", "x\tp\ny\tp\n");
    let o = sarf(&["occupancy", "--input", &path]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["percent"], 100.0);
    assert!(stderr(&o).contains("warning"));
}

#[test]
fn distmap_svg_and_text() {
    let dir = tempfile::tempdir().unwrap();
    let computed = write(dir.path(), "c.json", &Decomposition::from_groups(vec![vec!["a", "c"], vec!["b", "d"]]).unwrap().to_json());
    let reference = write(dir.path(), "r.json", &Decomposition::from_groups(vec![vec!["a", "b"], vec!["c", "d"]]).unwrap().to_json());
    let o = sarf(&["distmap", "--input", &computed, "--reference", &reference]);
    let svg = stdout(&o);
    assert!(svg.starts_with("<svg"));
    assert_eq!(svg.matches(r#"class="group""#).count(), 2);
    assert_eq!(svg.matches(r#"class="cell""#).count(), 4);

    let o = sarf(&["distmap", "--input", &computed, "--reference", &reference, "--format", "text"]);
    assert_eq!(stdout(&o).lines().count(), 2);

    let o = sarf(&["distmap", "--input", &computed, "--reference", &fixture("reference.json")]);
    assert_eq!(o.status.code(), Some(1));
    let o = sarf(&["distmap", "--input", &computed, "--reference", &reference, "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
}
