//! Distribution maps: one row per reference group, one lettered, colored
//! cell per module keyed by the computed cluster it landed in.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};

/// Fill colors, assigned to computed clusters in name order and reused
/// cyclically; letters keep cycled clusters apart.
pub const PALETTE: [&str; 20] = [
    "#e6194b", "#3cb44b", "#ffe119", "#4363d8", "#f58231", "#911eb4", "#46f0f0", "#f032e6",
    "#bcf60c", "#fabebe", "#008080", "#e6beff", "#9a6324", "#fffac8", "#800000", "#aaffc3",
    "#808000", "#ffd8b1", "#000075", "#808080",
];

const CELL: u32 = 18;
const GAP: u32 = 2;
const CELLS_PER_LINE: u32 = 24;
const LABEL_WIDTH: u32 = 180;
const MARGIN: u32 = 10;
const PAD: u32 = 4;

/// `A`..`Z`, then `AA`, `AB`, ...
pub fn cluster_letter(index: usize) -> String {
    let mut n = index + 1;
    let mut out = Vec::new();
    while n > 0 {
        n -= 1;
        out.push(b'A' + (n % 26) as u8);
        n /= 26;
    }
    out.reverse();
    String::from_utf8(out).expect("ascii")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapCell {
    pub module: String,
    /// Index of the computed cluster in name order.
    pub cluster: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MapGroup {
    pub name: String,
    pub cells: Vec<MapCell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistributionMap {
    pub clusters: Vec<String>,
    pub groups: Vec<MapGroup>,
}

impl DistributionMap {
    pub fn new(computed: &Decomposition, reference: &Decomposition) -> Result<Self> {
        if !computed.same_universe(reference) {
            let shared = computed.universe().filter(|m| reference.contains(m)).count();
            return Err(Error::UniverseMismatch {
                left: computed.universe_size(),
                right: reference.universe_size(),
                shared,
            });
        }
        let clusters: Vec<String> = computed.clusters().map(|(n, _)| n.to_owned()).collect();
        let index: BTreeMap<&str, usize> = clusters
            .iter()
            .enumerate()
            .map(|(i, n)| (n.as_str(), i))
            .collect();
        let groups = reference
            .clusters()
            .map(|(name, modules)| MapGroup {
                name: name.to_owned(),
                cells: modules
                    .iter()
                    .map(|m| MapCell {
                        module: m.clone(),
                        cluster: index[computed.cluster_of(m).expect("same universe")],
                    })
                    .collect(),
            })
            .collect();
        Ok(DistributionMap { clusters, groups })
    }

    pub fn color(cluster: usize) -> &'static str {
        PALETTE[cluster % PALETTE.len()]
    }

    /// One line per group: `name: letters...`.
    pub fn to_text(&self) -> String {
        let width = self.groups.iter().map(|g| g.name.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for g in &self.groups {
            let letters: Vec<String> = g.cells.iter().map(|c| cluster_letter(c.cluster)).collect();
            let _ = writeln!(out, "{:<width$}  {}", g.name, letters.join(" "));
        }
        out
    }

    pub fn to_svg(&self) -> String {
        let lines_of = |g: &MapGroup| (g.cells.len() as u32).div_ceil(CELLS_PER_LINE).max(1);
        let grid_width = CELLS_PER_LINE * (CELL + GAP) - GAP + 2 * PAD;
        let width = 2 * MARGIN + LABEL_WIDTH + grid_width;
        let height = 2 * MARGIN
            + self
                .groups
                .iter()
                .map(|g| lines_of(g) * (CELL + GAP) - GAP + 2 * PAD + GAP * 3)
                .sum::<u32>();

        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="monospace" font-size="11">"#
        );
        let mut y = MARGIN;
        for g in &self.groups {
            let h = lines_of(g) * (CELL + GAP) - GAP + 2 * PAD;
            let gx = MARGIN + LABEL_WIDTH;
            let _ = writeln!(
                s,
                r#"  <text class="group-label" x="{}" y="{}">{}</text>"#,
                MARGIN,
                y + PAD + CELL - 5,
                escape(&g.name)
            );
            let _ = writeln!(
                s,
                r##"  <rect class="group" x="{gx}" y="{y}" width="{grid_width}" height="{h}" fill="none" stroke="#333333"/>"##
            );
            for (i, c) in g.cells.iter().enumerate() {
                let i = i as u32;
                let cx = gx + PAD + (i % CELLS_PER_LINE) * (CELL + GAP);
                let cy = y + PAD + (i / CELLS_PER_LINE) * (CELL + GAP);
                let _ = writeln!(
                    s,
                    r#"  <g><title>{}</title><rect class="cell" x="{cx}" y="{cy}" width="{CELL}" height="{CELL}" fill="{}"/><text x="{}" y="{}" text-anchor="middle">{}</text></g>"#,
                    escape(&c.module),
                    Self::color(c.cluster),
                    cx + CELL / 2,
                    cy + CELL - 5,
                    cluster_letter(c.cluster)
                );
            }
            y += h + GAP * 3;
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            c => out.push(c),
        }
    }
    out
}
