use std::collections::{BTreeMap, BTreeSet};

use super::{MemberGraph, MemberRef, WeightedDigraph};
use crate::error::{Error, Result};

/// Splits `Outer$Inner$m`-style nesting: returns the enclosing module and the
/// nested suffix, if the module name contains `separator`.
fn split_nested(module: &str, separator: char) -> Option<(&str, &str)> {
    module.split_once(separator)
}

fn rehome(r: &MemberRef, separator: char) -> MemberRef {
    match split_nested(&r.module, separator) {
        Some((outer, inner)) => {
            MemberRef::new(outer, format!("{inner}{separator}{}", r.member))
        }
        None => r.clone(),
    }
}

/// Merges nested modules into their enclosing module and drops intra-module
/// edges.
///
/// A module `Outer$Inner` becomes `Outer` and its member `m` becomes
/// `Inner$m`. Two distinct original members that land on the same new
/// identifier are reported as a [`Error::Collision`].
pub fn normalize(g: &MemberGraph, separator: char) -> Result<MemberGraph> {
    let mut origin: BTreeMap<MemberRef, MemberRef> = BTreeMap::new();
    let mut collisions = BTreeSet::new();

    for module in g.modules() {
        for member in g.members_of(module).into_iter().flatten() {
            let old = MemberRef::new(module, member.as_str());
            let new = rehome(&old, separator);
            if let Some(prev) = origin.get(&new) {
                if *prev != old {
                    collisions.insert(format!("{new} (from {prev} and {old})"));
                }
            } else {
                origin.insert(new, old);
            }
        }
    }
    if !collisions.is_empty() {
        return Err(Error::Collision(collisions.into_iter().collect()));
    }

    let mut out = MemberGraph::new();
    for new in origin.keys() {
        out.declare(new);
    }
    for (s, d) in g.edges() {
        let (s, d) = (rehome(s, separator), rehome(d, separator));
        if s.module != d.module {
            out.add_edge(s, d);
        }
    }
    Ok(out)
}

/// Module-level graph with a unit-weight edge `(A, B)` whenever some member of
/// `A` depends on some member of `B`. Modules without cross-module edges are
/// not vertices.
pub fn lift(g: &MemberGraph) -> WeightedDigraph {
    let mut out = WeightedDigraph::new();
    let pairs: BTreeSet<(&str, &str)> = g
        .cross_module_edges()
        .map(|(s, d)| (s.module.as_str(), d.module.as_str()))
        .collect();
    for (a, b) in pairs {
        out.add_edge(a, b, 1.0)
            .expect("cross-module pairs are never self-edges");
    }
    out
}
