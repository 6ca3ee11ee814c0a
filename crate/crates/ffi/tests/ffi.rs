use std::ffi::{c_char, CStr, CString};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::ptr;

use sarf_kit_ffi::*;

fn cstr(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(sarf_last_error_message()) }.to_string_lossy().into_owned()
}

fn take_string(p: *mut c_char) -> String {
    assert!(!p.is_null());
    let s = unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned();
    unsafe { sarf_string_free(p) };
    s
}

fn decomposition(json: &str) -> *mut SarfDecomposition {
    let mut d = ptr::null_mut();
    let text = cstr(json);
    assert_eq!(unsafe { sarf_decomposition_from_json(text.as_ptr(), &mut d) }, SarfStatus::Ok);
    d
}

#[test]
fn cluster_two_pairs() {
    let tsv = cstr("A\tB\nB\tA\nC\tD\nD\tC\n");
    let mut g = ptr::null_mut();
    let mut c = ptr::null_mut();
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(sarf_graph_parse_modules(tsv.as_ptr(), &mut g), SarfStatus::Ok);
        assert_eq!(sarf_cluster(g, SarfAlgorithm::Sarf, '$' as u32, &mut c), SarfStatus::Ok);
        let mut q = 0.0;
        assert_eq!(sarf_clustering_modularity(c, &mut q), SarfStatus::Ok);
        assert!((q - 0.5).abs() < 1e-12);
        assert_eq!(sarf_clustering_decomposition(c, &mut d), SarfStatus::Ok);
        let mut k = 0;
        assert_eq!(sarf_decomposition_cluster_count(d, &mut k), SarfStatus::Ok);
        assert_eq!(k, 2);

        let mut s = ptr::null_mut();
        assert_eq!(sarf_clustering_dendrogram_json(c, &mut s), SarfStatus::Ok);
        assert!(take_string(s).contains("\"merges\""));
        assert_eq!(sarf_clustering_weights_tsv(c, &mut s), SarfStatus::Ok);
        assert_eq!(take_string(s).lines().count(), 4);
        assert_eq!(sarf_decomposition_to_json(d, &mut s), SarfStatus::Ok);
        let back = sarf_kit::Decomposition::from_json(&take_string(s)).unwrap();
        assert_eq!(back.cluster_count(), 2);

        sarf_decomposition_free(d);
        sarf_clustering_free(c);
        sarf_graph_free(g);
    }
}

#[test]
fn member_graph_round() {
    let tsv = cstr("A\tf\tB\tg\tinvoke\nB\th\tA\t-\ttyperef\n");
    let mut g = ptr::null_mut();
    let mut c = ptr::null_mut();
    unsafe {
        assert_eq!(sarf_graph_parse_members(tsv.as_ptr(), &mut g), SarfStatus::Ok);
        assert_eq!(sarf_cluster(g, SarfAlgorithm::Newman, '$' as u32, &mut c), SarfStatus::Ok);
        sarf_clustering_free(c);
        sarf_graph_free(g);
    }
}

#[test]
fn metrics_on_split_fixture() {
    let a = decomposition(r#"{"universe_size":10,"clusters":{"A1":["a0","a1","a2","a3","a4"],"A2":["a5","a6","a7","a8","a9"]}}"#);
    let c = decomposition(r#"{"universe_size":10,"clusters":{"C1":["a0","a1","a2"],"C2":["a3","a4"],"C3":["a5","a6","a7"],"C4":["a8","a9"]}}"#);
    unsafe {
        let (mut n, mut x) = (0usize, 0f64);
        assert_eq!(sarf_mno(c, a, &mut n), SarfStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(sarf_mno(a, c, &mut n), SarfStatus::Ok);
        assert_eq!(n, 4);
        assert_eq!(sarf_mojo(c, a, &mut n), SarfStatus::Ok);
        assert_eq!(n, 2);
        assert_eq!(sarf_mojofm(c, a, &mut x), SarfStatus::Ok);
        assert_eq!(x, 75.0);
        assert_eq!(sarf_mojosim(c, a, &mut x), SarfStatus::Ok);
        assert_eq!(x, 80.0);
        assert_eq!(sarf_ned(a, &mut x), SarfStatus::Ok);
        assert_eq!(x, 1.0);
        assert_eq!(sarf_decomposition_module_count(a, &mut n), SarfStatus::Ok);
        assert_eq!(n, 10);
        sarf_decomposition_free(a);
        sarf_decomposition_free(c);
    }
}

#[test]
fn packages() {
    let mut body = String::new();
    for i in 0..6 {
        body.push_str(&format!("m{i}\ta\n"));
    }
    for i in 6..9 {
        body.push_str(&format!("m{i}\ta.b\n"));
    }
    let tsv = cstr(&body);
    let mut p = ptr::null_mut();
    let mut d = ptr::null_mut();
    unsafe {
        assert_eq!(sarf_packages_parse(tsv.as_ptr(), &mut p), SarfStatus::Ok);
        let mut occ = 0.0;
        assert_eq!(sarf_occupancy(p, &mut occ), SarfStatus::Ok);
        assert!((occ - 600.0 / 9.0).abs() < 1e-9);
        assert_eq!(sarf_auth_decomposition(p, 5, &mut d), SarfStatus::Ok);
        let mut k = 0;
        sarf_decomposition_cluster_count(d, &mut k);
        assert_eq!(k, 1);
        sarf_decomposition_free(d);
        sarf_packages_free(p);
    }
}

#[test]
fn error_codes_and_messages() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(sarf_graph_parse_modules(ptr::null(), &mut g), SarfStatus::NullPointer);
        assert!(last_error().contains("tsv"));

        let bad = cstr("A\tB\t-3\n");
        assert_eq!(sarf_graph_parse_modules(bad.as_ptr(), &mut g), SarfStatus::Parse);
        assert!(last_error().contains("line 1"), "{}", last_error());

        let invalid = [0xffu8, 0];
        assert_eq!(
            sarf_graph_parse_modules(invalid.as_ptr() as *const c_char, &mut g),
            SarfStatus::InvalidUtf8
        );

        let ok = cstr("A\tB\n");
        assert_eq!(sarf_graph_parse_modules(ok.as_ptr(), ptr::null_mut()), SarfStatus::NullPointer);

        let a = decomposition(r#"{"universe_size":1,"clusters":{"C1":["x"]}}"#);
        let b = decomposition(r#"{"universe_size":1,"clusters":{"C1":["y"]}}"#);
        let mut n = 0;
        assert_eq!(sarf_mno(a, b, &mut n), SarfStatus::Domain);
        let mut x = 0.0;
        assert_eq!(sarf_mojofm(a, a, &mut x), SarfStatus::Domain);
        assert!(!last_error().is_empty());
        assert_eq!(sarf_mno(a, ptr::null(), &mut n), SarfStatus::NullPointer);
        sarf_decomposition_free(a);
        sarf_decomposition_free(b);

        let mut d = ptr::null_mut();
        let junk = cstr("{not json");
        assert_eq!(sarf_decomposition_from_json(junk.as_ptr(), &mut d), SarfStatus::Parse);

        let mut c = ptr::null_mut();
        assert_eq!(sarf_graph_parse_modules(ok.as_ptr(), &mut g), SarfStatus::Ok);
        assert_eq!(sarf_cluster(g, SarfAlgorithm::Sarf, 0xD800, &mut c), SarfStatus::Domain);
        sarf_graph_free(g);

        sarf_graph_free(ptr::null_mut());
        sarf_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated_and_compiles() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let header = dir.join("include/sarf_kit.h");
    let text = std::fs::read_to_string(&header).unwrap();
    for symbol in ["sarf_cluster", "sarf_mojofm", "sarf_auth_decomposition", "SARF_STATUS_PANIC", "typedef struct SarfGraph SarfGraph"] {
        assert!(text.contains(symbol), "{symbol} missing from header");
    }
    let Ok(cc) = which_cc() else { return };
    let out: PathBuf = tempfile_path("smoke.o");
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-c"])
        .arg("-I")
        .arg(dir.join("include"))
        .arg(dir.join("tests/c/smoke.c"))
        .arg("-o")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let _ = std::fs::remove_file(out);
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok_and(|o| o.status.success()))
        .ok_or(())
}

fn tempfile_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("sarf-kit-ffi-{}-{name}", std::process::id()))
}
