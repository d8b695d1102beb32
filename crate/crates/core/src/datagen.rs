//! The three artificial benchmark hypergraphs, a plain-text hypergraph
//! format and Table-style degree statistics.
//!
//! Text format: one hyperedge per line, whitespace-separated node names,
//! a repeated name meaning multiplicity. Directed lines split tail and head
//! with a single `->` token. Lines starting with `#` are comments, except
//! `# nodes: a b c`, which fixes the node order (and keeps isolated nodes).

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::hypergraph::{classify_edges, degrees, EdgeTypeReport, Hypergraph, NodeId};
use crate::multiset::Multiset;
use crate::scalar::Real;
use crate::stats::{side_stats, SideStats};

const NODES_HEADER: &str = "# nodes:";
const ARROW: &str = "->";

/// `(count, degree)` runs of a degree sequence.
type Runs = Vec<(usize, u32)>;

/// Builds one of the three artificial datasets (`which` in 1..=3).
pub fn gen_artificial(which: u32) -> Result<Hypergraph> {
    let (n, edges, node_deg, edge_deg): (usize, Vec<Runs>, Runs, Runs) = match which {
        1 => (51, artificial_1(), vec![(50, 16), (1, 30)], vec![(25, 2), (26, 30)]),
        2 => (1001, spread_and_stack(50, 10, 500, 49), vec![(500, 1), (501, 99)], vec![(1000, 50), (1, 99)]),
        3 => (501, spread_and_stack(25, 10, 250, 24), vec![(250, 1), (251, 49)], vec![(500, 25), (1, 49)]),
        _ => return Err(Error::OutOfRange { what: "artificial dataset", value: which as u64, allowed: "1..=3".into() }),
    };
    let parts: Vec<Vec<Multiset<NodeId>>> = edges
        .into_iter()
        .map(|e| vec![Multiset::from_counts(e.into_iter().filter(|&(_, m)| m > 0).map(|(v, m)| (NodeId(v as u32), m)))])
        .collect();
    let h = Hypergraph::from_edges(false, n, parts)?.with_names((0..n).map(|i| format!("v{i}")).collect())?;
    let d = degrees(&h);
    let expand = |runs: &[(usize, u32)]| -> Vec<u32> { runs.iter().flat_map(|&(k, x)| std::iter::repeat_n(x, k)).collect() };
    assert_eq!(d.nodes[0], expand(&node_deg), "artificial dataset {which}: node degrees");
    assert_eq!(d.edges[0], expand(&edge_deg), "artificial dataset {which}: hyperedge degrees");
    Ok(h)
}

fn artificial_1() -> Vec<Vec<(usize, u32)>> {
    let mut e = Vec::new();
    for i in 0..3 {
        for _ in 0..8 {
            e.push(vec![(i, 2)]);
        }
    }
    e.push(vec![(3, 2)]);
    for i in 0..4 {
        e.push(vec![(3 + i, 14), (7 + 8 * i, 16)]);
    }
    for i in 0..3 {
        e.push(vec![(4 + i, 2), (14 + 8 * i, 16), (47 + i, 12)]);
    }
    for i in 0..6u32 {
        for j in 0..3 {
            let i_ = i as usize;
            e.push(vec![(8 * (j + 1) + i_, 16), (29 + j + 3 * i_, 2 * i), (32 + j + 3 * i_, 14 - 2 * i)]);
        }
    }
    e.push(vec![(50, 30)]);
    e
}

/// Datasets 2 and 3 share one shape with `w` = 50 resp. 25: `blocks`
/// hyperedges covering the `blocks * w` degree-one nodes, `heavy`
/// hyperedges `{w v}` on the heavy nodes, `(w - 1) * blocks` hyperedges
/// `{(w-1) u, x}` topping the heavy nodes up, and one hyperedge holding the
/// last node `2w - 1` times.
fn spread_and_stack(w: usize, blocks: usize, heavy: usize, k: usize) -> Vec<Vec<(usize, u32)>> {
    let light = blocks * w;
    let mut e = Vec::new();
    for i in 0..blocks {
        e.push((w * i..w * i + w).map(|v| (v, 1)).collect());
    }
    for i in 0..heavy {
        e.push(vec![(light + i, w as u32)]);
    }
    for j in 0..blocks {
        for i in 0..k {
            e.push(vec![(light + i + k * j, k as u32), (light + heavy - 1 - j, 1)]);
        }
    }
    e.push(vec![(light + heavy, 2 * w as u32 - 1)]);
    e
}

/// Parses the text format.
pub fn parse_hypergraph(text: &str, directed: bool) -> Result<Hypergraph> {
    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, u32> = HashMap::new();
    fn intern(tok: &str, names: &mut Vec<String>, index: &mut HashMap<String, u32>) -> u32 {
        *index.entry(tok.to_string()).or_insert_with(|| {
            names.push(tok.to_string());
            names.len() as u32 - 1
        })
    }
    let mut edges: Vec<Vec<Multiset<NodeId>>> = Vec::new();
    let mut seen_edge = false;
    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.trim();
        if let Some(rest) = line.strip_prefix(NODES_HEADER) {
            if seen_edge || !names.is_empty() {
                return Err(Error::Parse { line: line_no, msg: "node header must precede every hyperedge".into() });
            }
            for tok in rest.split_whitespace() {
                if index.contains_key(tok) {
                    return Err(Error::Parse { line: line_no, msg: format!("node {tok} listed twice") });
                }
                intern(tok, &mut names, &mut index);
            }
            continue;
        }
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        seen_edge = true;
        let toks: Vec<&str> = line.split_whitespace().collect();
        let arrows = toks.iter().filter(|t| **t == ARROW).count();
        let sides: Vec<&[&str]> = if directed {
            if arrows != 1 {
                return Err(Error::Parse { line: line_no, msg: format!("directed hyperedge needs exactly one {ARROW}") });
            }
            let k = toks.iter().position(|t| *t == ARROW).expect("counted above");
            vec![&toks[..k], &toks[k + 1..]]
        } else {
            if arrows != 0 {
                return Err(Error::Parse { line: line_no, msg: format!("{ARROW} in an undirected hypergraph") });
            }
            vec![&toks[..]]
        };
        if sides.iter().all(|s| s.is_empty()) {
            return Err(Error::Parse { line: line_no, msg: "empty hyperedge".into() });
        }
        let parts = sides
            .into_iter()
            .map(|side| side.iter().map(|t| NodeId(intern(t, &mut names, &mut index))).collect::<Multiset<NodeId>>())
            .collect();
        edges.push(parts);
    }
    let n = names.len();
    Hypergraph::from_edges(directed, n, edges)?.with_names(names)
}

pub fn read_hypergraph(path: impl AsRef<Path>, directed: bool) -> Result<Hypergraph> {
    parse_hypergraph(&std::fs::read_to_string(path)?, directed)
}

/// Serialises `h` with a node header and each side's tokens in node order.
pub fn format_hypergraph(h: &Hypergraph) -> String {
    let name = |v: NodeId| h.node_name(v);
    let mut out = String::from(NODES_HEADER);
    for v in h.nodes() {
        out.push(' ');
        out.push_str(&name(v));
    }
    out.push('\n');
    for e in h.labels() {
        let sides: Vec<String> = h
            .hyperedge(e)
            .iter()
            .map(|m| m.expand().into_iter().map(name).collect::<Vec<_>>().join(" "))
            .collect();
        let line = sides.join(&format!(" {ARROW} "));
        let _ = writeln!(out, "{}", line.trim());
    }
    out
}

pub fn write_hypergraph(h: &Hypergraph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path, format_hypergraph(h))?;
    Ok(())
}

/// Degree statistics of both sides plus the forbidden-type report.
#[derive(Clone, Debug, PartialEq)]
pub struct StatsReport<F> {
    pub directed: bool,
    pub nodes: SideStats<F>,
    pub edges: SideStats<F>,
    pub types: EdgeTypeReport,
}

pub const STATS_CSV_HEADER: &str = "dataset,side,role,count,mean,median,e_min";

impl<F: Real> StatsReport<F> {
    /// Table rows, one per side and role; an undefined expected minimum
    /// prints as `-`.
    pub fn csv_rows(&self, dataset: &str) -> Vec<String> {
        let roles: &[&str] = if self.directed { &["tail", "head"] } else { &["all"] };
        let mut out = Vec::new();
        for (side, s) in [("nodes", &self.nodes), ("edges", &self.edges)] {
            for (r, st) in s.roles.iter().enumerate() {
                let emin = st.expected_min_pair.map(|x| format!("{:.2}", x.to_f64().unwrap_or(f64::NAN))).unwrap_or_else(|| "-".into());
                out.push(format!(
                    "{dataset},{side},{},{},{:.2},{:.2},{emin}",
                    roles[r],
                    st.count,
                    st.mean.to_f64().unwrap_or(f64::NAN),
                    st.median.to_f64().unwrap_or(f64::NAN),
                ));
            }
        }
        out
    }
}

pub fn stats_report<F: Real>(h: &Hypergraph) -> Result<StatsReport<F>> {
    let d = degrees(h);
    Ok(StatsReport { directed: h.is_directed(), nodes: side_stats(&d.nodes)?, edges: side_stats(&d.edges)?, types: classify_edges(h) })
}
