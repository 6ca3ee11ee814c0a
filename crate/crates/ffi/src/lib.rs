//! C ABI for `sarf-kit`.
//!
//! Every fallible function returns a [`SarfStatus`] and writes its result
//! through an out-pointer. On failure a message is kept per thread and can be
//! read with [`sarf_last_error_message`]. Handles returned through
//! out-pointers are owned by the caller and released with the matching
//! `*_free` function; strings with [`sarf_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sarf_kit::metrics;
use sarf_kit::{
    cluster, parse_class_graph, parse_member_graph, parse_package_map, Algorithm, ClusterInput,
    ClusteringResult, Decomposition, Error, PackageMap,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SarfStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Domain = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SarfAlgorithm {
    Sarf = 0,
    Newman = 1,
}

/// A member-level or module-level dependency graph.
pub struct SarfGraph {
    inner: ClusterInput,
}

/// Output of one clustering run.
pub struct SarfClustering {
    inner: ClusteringResult,
}

pub struct SarfDecomposition {
    inner: Decomposition,
}

/// Module-to-package assignment.
pub struct SarfPackages {
    inner: PackageMap,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure(SarfStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } | Error::Json(_) => SarfStatus::Parse,
            _ => SarfStatus::Domain,
        };
        Failure(status, e.to_string())
    }
}

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> SarfStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SarfStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(&message);
            status
        }
        Err(_) => {
            set_error("internal panic");
            SarfStatus::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(SarfStatus::NullPointer, format!("`{what}` is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(SarfStatus::InvalidUtf8, format!("`{what}`: {e}")))
}

unsafe fn handle<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn boxed<T>(value: T) -> *mut T {
    Box::into_raw(Box::new(value))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(std::ptr::null_mut(), CString::into_raw)
}

/// Message of the last failed call on this thread, or an empty string. The
/// pointer stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn sarf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sarf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a member graph (five tab-separated columns per line).
///
/// # Safety
/// `tsv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_graph_parse_members(tsv: *const c_char, out: *mut *mut SarfGraph) -> SarfStatus {
    guard(|| {
        let g = parse_member_graph(text(tsv, "tsv")?)?;
        put(out, boxed(SarfGraph { inner: ClusterInput::Members(g) }), "out")
    })
}

/// Parses a module graph (two or three tab-separated columns per line).
///
/// # Safety
/// `tsv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_graph_parse_modules(tsv: *const c_char, out: *mut *mut SarfGraph) -> SarfStatus {
    guard(|| {
        let g = parse_class_graph(text(tsv, "tsv")?)?;
        put(out, boxed(SarfGraph { inner: ClusterInput::Modules(g) }), "out")
    })
}

/// # Safety
/// `g` must be null or a graph handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sarf_graph_free(g: *mut SarfGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Clusters `g`. `separator` is the Unicode scalar separating outer and
/// nested module names (`'$'` by default in the CLI).
///
/// # Safety
/// `g` must be a live graph handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_cluster(
    g: *const SarfGraph,
    algorithm: SarfAlgorithm,
    separator: u32,
    out: *mut *mut SarfClustering,
) -> SarfStatus {
    guard(|| {
        let g = handle(g, "g")?;
        let sep = char::from_u32(separator)
            .ok_or_else(|| Failure(SarfStatus::Domain, format!("invalid separator {separator:#x}")))?;
        let algorithm = match algorithm {
            SarfAlgorithm::Sarf => Algorithm::Sarf,
            SarfAlgorithm::Newman => Algorithm::Newman,
        };
        let result = cluster(&g.inner, algorithm, sep)?;
        put(out, boxed(SarfClustering { inner: result }), "out")
    })
}

/// # Safety
/// `c` must be a live clustering handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_clustering_modularity(c: *const SarfClustering, out: *mut f64) -> SarfStatus {
    guard(|| put(out, handle(c, "c")?.inner.modularity, "out"))
}

/// Copies the flat decomposition into a new handle.
///
/// # Safety
/// `c` must be a live clustering handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_clustering_decomposition(
    c: *const SarfClustering,
    out: *mut *mut SarfDecomposition,
) -> SarfStatus {
    guard(|| {
        let d = handle(c, "c")?.inner.decomposition.clone();
        put(out, boxed(SarfDecomposition { inner: d }), "out")
    })
}

/// # Safety
/// `c` must be a live clustering handle; `out` must be writable. The string
/// is released with [`sarf_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sarf_clustering_dendrogram_json(c: *const SarfClustering, out: *mut *mut c_char) -> SarfStatus {
    guard(|| put(out, c_string(handle(c, "c")?.inner.dendrogram.to_json()), "out"))
}

/// Weighted module graph that was clustered, as module-graph TSV.
///
/// # Safety
/// `c` must be a live clustering handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_clustering_weights_tsv(c: *const SarfClustering, out: *mut *mut c_char) -> SarfStatus {
    guard(|| {
        let tsv = sarf_kit::graph::write_class_graph(&handle(c, "c")?.inner.weighted);
        put(out, c_string(tsv), "out")
    })
}

/// # Safety
/// `c` must be null or a clustering handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sarf_clustering_free(c: *mut SarfClustering) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_decomposition_from_json(
    json: *const c_char,
    out: *mut *mut SarfDecomposition,
) -> SarfStatus {
    guard(|| {
        let d = Decomposition::from_json(text(json, "json")?)?;
        put(out, boxed(SarfDecomposition { inner: d }), "out")
    })
}

/// # Safety
/// `d` must be a live decomposition handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_decomposition_to_json(d: *const SarfDecomposition, out: *mut *mut c_char) -> SarfStatus {
    guard(|| put(out, c_string(handle(d, "d")?.inner.to_json()), "out"))
}

/// # Safety
/// `d` must be a live decomposition handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_decomposition_cluster_count(d: *const SarfDecomposition, out: *mut usize) -> SarfStatus {
    guard(|| put(out, handle(d, "d")?.inner.cluster_count(), "out"))
}

/// # Safety
/// `d` must be a live decomposition handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_decomposition_module_count(d: *const SarfDecomposition, out: *mut usize) -> SarfStatus {
    guard(|| put(out, handle(d, "d")?.inner.universe_size(), "out"))
}

/// # Safety
/// `d` must be null or a decomposition handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sarf_decomposition_free(d: *mut SarfDecomposition) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

unsafe fn pair<'a>(
    c: *const SarfDecomposition,
    a: *const SarfDecomposition,
) -> Result<(&'a Decomposition, &'a Decomposition), Failure> {
    Ok((&handle(c, "c")?.inner, &handle(a, "a")?.inner))
}

/// Move-and-join operations turning `c` into `a`.
///
/// # Safety
/// `c` and `a` must be live decomposition handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_mno(c: *const SarfDecomposition, a: *const SarfDecomposition, out: *mut usize) -> SarfStatus {
    guard(|| {
        let (c, a) = pair(c, a)?;
        put(out, metrics::mno(c, a)?, "out")
    })
}

/// # Safety
/// `c` and `a` must be live decomposition handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_mojo(c: *const SarfDecomposition, a: *const SarfDecomposition, out: *mut usize) -> SarfStatus {
    guard(|| {
        let (c, a) = pair(c, a)?;
        put(out, metrics::mojo(c, a)?, "out")
    })
}

/// # Safety
/// `c` and `a` must be live decomposition handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_mojosim(c: *const SarfDecomposition, a: *const SarfDecomposition, out: *mut f64) -> SarfStatus {
    guard(|| {
        let (c, a) = pair(c, a)?;
        put(out, metrics::mojosim(c, a)?, "out")
    })
}

/// MoJoFM of `c` against reference `a`, in percent.
///
/// # Safety
/// `c` and `a` must be live decomposition handles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_mojofm(c: *const SarfDecomposition, a: *const SarfDecomposition, out: *mut f64) -> SarfStatus {
    guard(|| {
        let (c, a) = pair(c, a)?;
        put(out, metrics::mojofm(c, a)?, "out")
    })
}

/// # Safety
/// `d` must be a live decomposition handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_ned(d: *const SarfDecomposition, out: *mut f64) -> SarfStatus {
    guard(|| put(out, metrics::ned(&handle(d, "d")?.inner), "out"))
}

/// Parses a package TSV (module, package path).
///
/// # Safety
/// `tsv` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_packages_parse(tsv: *const c_char, out: *mut *mut SarfPackages) -> SarfStatus {
    guard(|| {
        let p = parse_package_map(text(tsv, "tsv")?)?;
        put(out, boxed(SarfPackages { inner: p }), "out")
    })
}

/// # Safety
/// `p` must be null or a package handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sarf_packages_free(p: *mut SarfPackages) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Reference decomposition from package structure; clusters of at most
/// `threshold` modules are folded into their parent package.
///
/// # Safety
/// `p` must be a live package handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_auth_decomposition(
    p: *const SarfPackages,
    threshold: usize,
    out: *mut *mut SarfDecomposition,
) -> SarfStatus {
    guard(|| {
        let d = metrics::auth_decomposition(&handle(p, "p")?.inner, threshold)?;
        put(out, boxed(SarfDecomposition { inner: d }), "out")
    })
}

/// Percentage of modules in the most populous package.
///
/// # Safety
/// `p` must be a live package handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sarf_occupancy(p: *const SarfPackages, out: *mut f64) -> SarfStatus {
    guard(|| put(out, metrics::occupancy(&handle(p, "p")?.inner)?.percent, "out"))
}
