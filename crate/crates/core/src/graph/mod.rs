//! Dependency graph data model.
//!
//! Two levels are modelled: a [`MemberGraph`] whose vertices are the members
//! (methods, fields, and the virtual class member) of modules, and a
//! [`WeightedDigraph`] over modules. Identifiers are opaque strings and every
//! collection is ordered, so iteration order is canonical.

mod normalize;
mod tsv;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub use normalize::{lift, normalize};
pub use tsv::{
    format_weight, parse_class_graph, parse_member_graph, parse_package_map, write_class_graph,
    write_member_graph, write_package_map,
};

/// Reserved member token standing for the module itself. Type references
/// target it.
pub const VIRTUAL_MEMBER: &str = "<class>";

/// Separator between an enclosing module and its nested modules, e.g.
/// `Outer$Inner`.
pub const DEFAULT_SEPARATOR: char = '$';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DependencyKind {
    Invoke,
    FieldRead,
    FieldWrite,
    Inherit,
    TypeRef,
}

impl DependencyKind {
    pub fn as_str(self) -> &'static str {
        match self {
            DependencyKind::Invoke => "invoke",
            DependencyKind::FieldRead => "field_read",
            DependencyKind::FieldWrite => "field_write",
            DependencyKind::Inherit => "inherit",
            DependencyKind::TypeRef => "typeref",
        }
    }

    /// Whether an edge of this kind may point at the virtual member.
    fn targets_class(self) -> bool {
        matches!(self, DependencyKind::Inherit | DependencyKind::TypeRef)
    }
}

impl FromStr for DependencyKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "invoke" => DependencyKind::Invoke,
            "field_read" => DependencyKind::FieldRead,
            "field_write" => DependencyKind::FieldWrite,
            "inherit" => DependencyKind::Inherit,
            "typeref" => DependencyKind::TypeRef,
            other => return Err(format!("unknown dependency kind `{other}`")),
        })
    }
}

impl fmt::Display for DependencyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A member of a module, addressed as `(module, member)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MemberRef {
    pub module: String,
    pub member: String,
}

impl MemberRef {
    pub fn new(module: impl Into<String>, member: impl Into<String>) -> Self {
        MemberRef {
            module: module.into(),
            member: member.into(),
        }
    }

    pub fn is_virtual(&self) -> bool {
        self.member == VIRTUAL_MEMBER
    }
}

impl fmt::Display for MemberRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.module, self.member)
    }
}

/// Member-level dependency graph.
///
/// Modules and members are declared implicitly by the edges that mention
/// them, or explicitly with [`MemberGraph::declare`]. Edges form a set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MemberGraph {
    members: BTreeMap<String, BTreeSet<String>>,
    edges: BTreeSet<(MemberRef, MemberRef)>,
}

impl MemberGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn declare(&mut self, member: &MemberRef) {
        self.members
            .entry(member.module.clone())
            .or_default()
            .insert(member.member.clone());
    }

    /// Inserts an edge, declaring both endpoints. Returns `false` when the
    /// edge was already present.
    pub fn add_edge(&mut self, src: MemberRef, dst: MemberRef) -> bool {
        self.declare(&src);
        self.declare(&dst);
        self.edges.insert((src, dst))
    }

    pub fn modules(&self) -> impl Iterator<Item = &str> {
        self.members.keys().map(String::as_str)
    }

    pub fn module_count(&self) -> usize {
        self.members.len()
    }

    pub fn members_of(&self, module: &str) -> Option<&BTreeSet<String>> {
        self.members.get(module)
    }

    pub fn edges(&self) -> impl Iterator<Item = (&MemberRef, &MemberRef)> {
        self.edges.iter().map(|(s, d)| (s, d))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges whose endpoints lie in different modules.
    pub fn cross_module_edges(&self) -> impl Iterator<Item = (&MemberRef, &MemberRef)> {
        self.edges().filter(|(s, d)| s.module != d.module)
    }
}

/// Module-level directed graph with strictly positive edge weights.
///
/// Vertices may exist without incident edges. Self-edges are rejected.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightedDigraph {
    vertices: BTreeSet<String>,
    edges: BTreeMap<(String, String), f64>,
}

impl WeightedDigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, v: impl Into<String>) {
        self.vertices.insert(v.into());
    }

    /// Adds `weight` to edge `(src, dst)`, creating it (and its endpoints)
    /// when absent.
    pub fn add_edge(&mut self, src: &str, dst: &str, weight: f64) -> Result<()> {
        if src == dst {
            return Err(Error::domain(format!("self-edge on `{src}` is not allowed")));
        }
        if !(weight.is_finite() && weight > 0.0) {
            return Err(Error::domain(format!(
                "edge {src} -> {dst}: weight must be positive and finite, got {weight}"
            )));
        }
        self.vertices.insert(src.to_owned());
        self.vertices.insert(dst.to_owned());
        *self
            .edges
            .entry((src.to_owned(), dst.to_owned()))
            .or_insert(0.0) += weight;
        Ok(())
    }

    pub fn vertices(&self) -> impl Iterator<Item = &str> {
        self.vertices.iter().map(String::as_str)
    }

    pub fn vertex_set(&self) -> &BTreeSet<String> {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn contains_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    /// Edges in canonical `(src, dst)` order.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.edges
            .iter()
            .map(|((s, d), &w)| (s.as_str(), d.as_str(), w))
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn weight(&self, src: &str, dst: &str) -> Option<f64> {
        self.edges.get(&(src.to_owned(), dst.to_owned())).copied()
    }

    /// Sum of all edge weights (`W`).
    pub fn total_weight(&self) -> f64 {
        self.edges.values().sum()
    }

    /// Number of distinct edges entering `v`.
    pub fn fanin(&self, v: &str) -> usize {
        self.edges.keys().filter(|(_, d)| d == v).count()
    }

    pub fn out_strength(&self, v: &str) -> f64 {
        self.edges().filter(|(s, _, _)| *s == v).map(|e| e.2).sum()
    }

    pub fn in_strength(&self, v: &str) -> f64 {
        self.edges().filter(|(_, d, _)| *d == v).map(|e| e.2).sum()
    }

    /// Same topology with every weight replaced by `f(src, dst, weight)`.
    ///
    /// Panics if `f` yields a non-positive weight.
    pub fn reweighted(&self, mut f: impl FnMut(&str, &str, f64) -> f64) -> WeightedDigraph {
        let edges = self
            .edges
            .iter()
            .map(|((s, d), &w)| {
                let nw = f(s, d, w);
                assert!(nw.is_finite() && nw > 0.0, "reweighting produced {nw}");
                ((s.clone(), d.clone()), nw)
            })
            .collect();
        WeightedDigraph {
            vertices: self.vertices.clone(),
            edges,
        }
    }

    pub fn unit_weighted(&self) -> WeightedDigraph {
        self.reweighted(|_, _, _| 1.0)
    }

    /// Subgraph induced by `keep`.
    pub fn induced(&self, keep: &BTreeSet<String>) -> WeightedDigraph {
        WeightedDigraph {
            vertices: self.vertices.intersection(keep).cloned().collect(),
            edges: self
                .edges
                .iter()
                .filter(|((s, d), _)| keep.contains(s) && keep.contains(d))
                .map(|(k, &w)| (k.clone(), w))
                .collect(),
        }
    }

    /// Dense index view used by the clustering engine: vertex names in
    /// canonical order and edges as `(src_index, dst_index, weight)`.
    pub fn indexed(&self) -> (Vec<String>, Vec<(usize, usize, f64)>) {
        let names: Vec<String> = self.vertices.iter().cloned().collect();
        let index: BTreeMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let edges = self
            .edges
            .iter()
            .map(|((s, d), &w)| (index[s.as_str()], index[d.as_str()], w))
            .collect();
        (names, edges)
    }
}

/// Assignment of modules to dot-separated package paths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PackageMap {
    assignment: BTreeMap<String, String>,
}

impl PackageMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Assigns `module` to `package`. Re-assigning the same package is a
    /// no-op; a different package is an error.
    pub fn assign(&mut self, module: &str, package: &str) -> Result<()> {
        validate_package_path(package).map_err(Error::domain)?;
        match self.assignment.get(module) {
            Some(existing) if existing != package => Err(Error::domain(format!(
                "module `{module}` assigned to both `{existing}` and `{package}`"
            ))),
            Some(_) => Ok(()),
            None => {
                self.assignment.insert(module.to_owned(), package.to_owned());
                Ok(())
            }
        }
    }

    pub fn get(&self, module: &str) -> Option<&str> {
        self.assignment.get(module).map(String::as_str)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.assignment
            .iter()
            .map(|(m, p)| (m.as_str(), p.as_str()))
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }

    /// Modules grouped by exact package path.
    pub fn packages(&self) -> BTreeMap<&str, BTreeSet<&str>> {
        let mut out: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (m, p) in self.iter() {
            out.entry(p).or_default().insert(m);
        }
        out
    }
}

fn validate_package_path(path: &str) -> std::result::Result<(), String> {
    if path.is_empty() {
        return Err("empty package path".into());
    }
    if path.split('.').any(str::is_empty) {
        return Err(format!("package path `{path}` has an empty segment"));
    }
    Ok(())
}

/// Parent package of a dot-separated path, if any.
pub fn parent_package(path: &str) -> Option<&str> {
    path.rfind('.').map(|i| &path[..i])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_digraph_rejects_self_edges_and_bad_weights() {
        let mut g = WeightedDigraph::new();
        assert!(g.add_edge("A", "A", 1.0).is_err());
        assert!(g.add_edge("A", "B", 0.0).is_err());
        assert!(g.add_edge("A", "B", -1.0).is_err());
        assert!(g.add_edge("A", "B", f64::NAN).is_err());
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn degrees_sum_to_total_weight() {
        let mut g = WeightedDigraph::new();
        g.add_edge("A", "B", 0.5).unwrap();
        g.add_edge("B", "C", 2.0).unwrap();
        g.add_edge("C", "A", 1.0).unwrap();
        g.add_edge("A", "C", 0.25).unwrap();
        let w = g.total_weight();
        let out: f64 = g.vertices().map(|v| g.out_strength(v)).sum();
        let inn: f64 = g.vertices().map(|v| g.in_strength(v)).sum();
        assert!((w - 3.75).abs() < 1e-12);
        assert!((out - w).abs() < 1e-12);
        assert!((inn - w).abs() < 1e-12);
        assert_eq!(g.fanin("C"), 2);
    }

    #[test]
    fn package_assignment_conflicts() {
        let mut p = PackageMap::new();
        p.assign("X", "a.b").unwrap();
        p.assign("X", "a.b").unwrap();
        assert!(p.assign("X", "a.c").is_err());
        assert!(p.assign("Y", "a..c").is_err());
        assert_eq!(parent_package("a.b.c"), Some("a.b"));
        assert_eq!(parent_package("a"), None);
    }
}
