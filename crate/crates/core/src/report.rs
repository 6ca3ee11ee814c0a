//! Metric reports in JSON and aligned plain text.

use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{Map, Value};

use crate::decomposition::Decomposition;
use crate::error::Result;
use crate::metrics::{self, Occupancy, StabilityReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Measure {
    MoJoFm,
    MoJoSim,
    MoJo,
    Mno,
    MaxMno,
    Ned,
    /// Cluster counts of both decompositions.
    K,
    /// Universe size.
    N,
}

pub const DEFAULT_MEASURES: [Measure; 4] = [Measure::MoJoFm, Measure::MoJoSim, Measure::Ned, Measure::K];

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "mojofm" => Measure::MoJoFm,
            "mojosim" => Measure::MoJoSim,
            "mojo" => Measure::MoJo,
            "mno" => Measure::Mno,
            "max_mno" | "maxops" => Measure::MaxMno,
            "ned" => Measure::Ned,
            "k" => Measure::K,
            "n" => Measure::N,
            other => return Err(format!("unknown measure `{other}`")),
        })
    }
}

pub fn parse_measures(csv: &str) -> std::result::Result<Vec<Measure>, String> {
    let mut out = Vec::new();
    for part in csv.split(',').filter(|p| !p.trim().is_empty()) {
        let m: Measure = part.parse()?;
        if !out.contains(&m) {
            out.push(m);
        }
    }
    if out.is_empty() {
        return Err("no measures requested".into());
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Cell {
    Percent(f64),
    Ratio(f64),
    Count(usize),
}

impl Cell {
    fn json(self) -> Value {
        match self {
            Cell::Percent(x) | Cell::Ratio(x) => Value::from(x),
            Cell::Count(n) => Value::from(n),
        }
    }

    fn text(self) -> String {
        match self {
            Cell::Percent(x) => format!("{x:.1}"),
            Cell::Ratio(x) => format!("{x:.3}"),
            Cell::Count(n) => n.to_string(),
        }
    }
}

/// Values of the requested measures for one computed/reference pair.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricReport {
    pub universe_size: usize,
    pub computed_clusters: usize,
    pub reference_clusters: usize,
    columns: Vec<(&'static str, Cell)>,
}

impl MetricReport {
    /// Evaluates `computed` against `reference`. Both must cover the same
    /// modules.
    pub fn evaluate(
        computed: &Decomposition,
        reference: &Decomposition,
        measures: &[Measure],
    ) -> Result<Self> {
        let mut columns = Vec::new();
        for m in measures {
            match m {
                Measure::MoJoFm => columns.push(("mojofm", Cell::Percent(metrics::mojofm(computed, reference)?))),
                Measure::MoJoSim => columns.push(("mojosim", Cell::Percent(metrics::mojosim(computed, reference)?))),
                Measure::MoJo => columns.push(("mojo", Cell::Count(metrics::mojo(computed, reference)?))),
                Measure::Mno => columns.push(("mno", Cell::Count(metrics::mno(computed, reference)?))),
                Measure::MaxMno => columns.push(("max_mno", Cell::Count(metrics::max_mno(reference)))),
                Measure::Ned => columns.push(("ned", Cell::Ratio(metrics::ned(computed)))),
                Measure::K => {
                    columns.push(("K", Cell::Count(computed.cluster_count())));
                    columns.push(("K_a", Cell::Count(reference.cluster_count())));
                }
                Measure::N => columns.push(("N", Cell::Count(computed.universe_size()))),
            }
        }
        // universe equality is checked by every pairwise measure; do it for
        // reports made only of unary ones too
        metrics::mno(computed, reference)?;
        Ok(MetricReport {
            universe_size: computed.universe_size(),
            computed_clusters: computed.cluster_count(),
            reference_clusters: reference.cluster_count(),
            columns,
        })
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.columns.iter().find(|(k, _)| *k == key).map(|(_, c)| match c {
            Cell::Percent(x) | Cell::Ratio(x) => *x,
            Cell::Count(n) => *n as f64,
        })
    }

    pub fn to_json(&self) -> String {
        let map: Map<String, Value> = self
            .columns
            .iter()
            .map(|(k, c)| (k.to_string(), c.json()))
            .collect();
        let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let header: Vec<String> = self.columns.iter().map(|(k, _)| display_name(k).to_owned()).collect();
        let values: Vec<String> = self.columns.iter().map(|(_, c)| c.text()).collect();
        table(&[header, values])
    }
}

fn display_name(key: &str) -> &str {
    match key {
        "mojofm" => "MoJoFM",
        "mojosim" => "MoJoSim",
        "mojo" => "MoJo",
        "max_mno" => "N_maxops",
        "ned" => "NED",
        other => other,
    }
}

/// Left-aligned first column, right-aligned others, two spaces between.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            if c == 0 {
                let _ = write!(line, "{cell:<w$}", w = widths[c]);
            } else {
                let _ = write!(line, "{cell:>w$}", w = widths[c]);
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

pub fn stability_json(r: &StabilityReport) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("stability report serializes");
    s.push('\n');
    s
}

pub fn stability_text(r: &StabilityReport) -> String {
    let mut rows = vec![vec![
        "From".to_owned(),
        "To".to_owned(),
        "Shared".to_owned(),
        "Stability".to_owned(),
    ]];
    for t in &r.transitions {
        rows.push(vec![
            t.from.clone(),
            t.to.clone(),
            t.shared.to_string(),
            format!("{:.1}", t.stability),
        ]);
    }
    rows.push(vec![
        "Average".to_owned(),
        String::new(),
        String::new(),
        format!("{:.1}", r.average),
    ]);
    table(&rows)
}

pub fn occupancy_json(o: &Occupancy) -> String {
    let mut s = serde_json::to_string_pretty(o).expect("occupancy serializes");
    s.push('\n');
    s
}

pub fn occupancy_text(o: &Occupancy) -> String {
    table(&[
        vec!["Occupancy".into(), "Largest package".into(), "Modules".into(), "Packages".into()],
        vec![
            format!("{:.1}%", o.percent),
            format!("{} ({})", o.largest_package, o.largest_size),
            o.modules.to_string(),
            o.packages.to_string(),
        ],
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measure_list_parsing() {
        assert_eq!(parse_measures("ned").unwrap(), vec![Measure::Ned]);
        assert_eq!(
            parse_measures("MoJoFM, k,mojofm").unwrap(),
            vec![Measure::MoJoFm, Measure::K]
        );
        assert!(parse_measures("edgesim").is_err());
        assert!(parse_measures(",").is_err());
    }

    #[test]
    fn single_measure_report_has_single_entry() {
        let d = Decomposition::from_groups(vec![vec!["a", "b"], vec!["c"]]).unwrap();
        let r = MetricReport::evaluate(&d, &d, &[Measure::Ned]).unwrap();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v.as_object().unwrap().len(), 1);
        assert_eq!(v["ned"], 0.0);
    }

    #[test]
    fn unary_report_still_checks_universe() {
        let a = Decomposition::from_groups(vec![vec!["a"]]).unwrap();
        let b = Decomposition::from_groups(vec![vec!["b"]]).unwrap();
        assert!(MetricReport::evaluate(&a, &b, &[Measure::Ned]).is_err());
    }

    #[test]
    fn text_table_alignment() {
        let d = Decomposition::from_groups(vec![vec!["a", "b"], vec!["c"]]).unwrap();
        let r = MetricReport::evaluate(&d, &d, &DEFAULT_MEASURES).unwrap();
        let text = r.to_text();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("MoJoFM"));
        assert!(lines[1].starts_with("100.0"));
        assert_eq!(lines[0].len(), lines[1].len());
    }
}
