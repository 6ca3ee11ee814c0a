//! Tab-separated interchange formats.
//!
//! * member edges: `src_module  src_member  dst_module  dst_member  kind`
//! * module edges: `src_module  dst_module  [weight]`
//! * packages:     `module  package.path`
//!
//! Blank lines and lines starting with `#` are ignored everywhere.

use std::fmt::Write as _;

use super::{DependencyKind, MemberGraph, MemberRef, PackageMap, WeightedDigraph, VIRTUAL_MEMBER};
use crate::error::{Error, Result};

/// Yields `(line_number, columns)` for every non-comment, non-blank line.
fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line.split('\t').collect()))
        }
    })
}

fn non_empty<'a>(line: usize, field: &'a str, what: &str) -> Result<&'a str> {
    if field.is_empty() {
        Err(Error::parse(line, format!("empty {what}")))
    } else {
        Ok(field)
    }
}

pub fn parse_member_graph(text: &str) -> Result<MemberGraph> {
    let mut g = MemberGraph::new();
    for (line, cols) in records(text) {
        if cols.len() != 5 {
            return Err(Error::parse(
                line,
                format!("expected 5 tab-separated columns, found {}", cols.len()),
            ));
        }
        let src_module = non_empty(line, cols[0], "source module")?;
        let src_member = non_empty(line, cols[1], "source member")?;
        let dst_module = non_empty(line, cols[2], "target module")?;
        let dst_member = non_empty(line, cols[3], "target member")?;
        let kind: DependencyKind = cols[4].parse().map_err(|e| Error::parse(line, e))?;

        let dst_member = if kind == DependencyKind::TypeRef {
            VIRTUAL_MEMBER
        } else if dst_member == VIRTUAL_MEMBER && !kind.targets_class() {
            return Err(Error::parse(
                line,
                format!("`{VIRTUAL_MEMBER}` is reserved and cannot be the target of a {kind} edge"),
            ));
        } else {
            dst_member
        };

        g.add_edge(
            MemberRef::new(src_module, src_member),
            MemberRef::new(dst_module, dst_member),
        );
    }
    Ok(g)
}

/// Canonical member-edge writer. Edges into the virtual member are written as
/// `typeref`, all others as `invoke`.
pub fn write_member_graph(g: &MemberGraph) -> String {
    let mut out = String::new();
    for (s, d) in g.edges() {
        let kind = if d.is_virtual() {
            DependencyKind::TypeRef
        } else {
            DependencyKind::Invoke
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}",
            s.module, s.member, d.module, d.member, kind
        );
    }
    out
}

pub fn parse_class_graph(text: &str) -> Result<WeightedDigraph> {
    let mut g = WeightedDigraph::new();
    for (line, cols) in records(text) {
        if !(2..=3).contains(&cols.len()) {
            return Err(Error::parse(
                line,
                format!("expected 2 or 3 tab-separated columns, found {}", cols.len()),
            ));
        }
        let src = non_empty(line, cols[0], "source module")?;
        let dst = non_empty(line, cols[1], "target module")?;
        if src == dst {
            return Err(Error::parse(line, format!("self-edge on `{src}`")));
        }
        let weight = match cols.get(2) {
            None => 1.0,
            Some(raw) => {
                let w: f64 = raw
                    .trim()
                    .parse()
                    .map_err(|_| Error::parse(line, format!("invalid weight `{raw}`")))?;
                if !(w.is_finite() && w > 0.0) {
                    return Err(Error::parse(line, format!("weight must be positive, got {raw}")));
                }
                w
            }
        };
        g.add_edge(src, dst, weight)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(g)
}

/// Formats a weight with 9 significant digits.
pub fn format_weight(w: f64) -> String {
    if w == 0.0 || !w.is_finite() {
        return format!("{w}");
    }
    let exponent = w.abs().log10().floor() as i32;
    let decimals = (8 - exponent).max(0) as usize;
    format!("{w:.decimals$}")
}

/// Canonical weighted-graph writer: rows sorted by `(src, dst)`, weights with
/// 9 significant digits. Isolated vertices are not representable and are
/// dropped.
pub fn write_class_graph(g: &WeightedDigraph) -> String {
    let mut out = String::new();
    for (s, d, w) in g.edges() {
        let _ = writeln!(out, "{s}\t{d}\t{}", format_weight(w));
    }
    out
}

pub fn parse_package_map(text: &str) -> Result<PackageMap> {
    let mut map = PackageMap::new();
    for (line, cols) in records(text) {
        if cols.len() != 2 {
            return Err(Error::parse(
                line,
                format!("expected 2 tab-separated columns, found {}", cols.len()),
            ));
        }
        let module = non_empty(line, cols[0], "module")?;
        let package = non_empty(line, cols[1], "package path")?;
        map.assign(module, package)
            .map_err(|e| Error::parse(line, e.to_string()))?;
    }
    Ok(map)
}

pub fn write_package_map(p: &PackageMap) -> String {
    let mut out = String::new();
    for (m, pkg) in p.iter() {
        let _ = writeln!(out, "{m}\t{pkg}");
    }
    out
}
