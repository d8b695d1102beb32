//! Hypergraph data model.
//!
//! A [`Hypergraph`] is stored through the incidence multisets of its nodes:
//! `I_v` holds every hyperedge label containing `v`, with multiplicity equal
//! to the multiplicity of `v` inside that hyperedge. Directed hypergraphs keep
//! one incidence multiset per role (tail, head). The per-label hyperedge view
//! is derived from the incidence view and kept in sync by every mutation.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::multiset::Multiset;

/// Dense node index, `0..|V|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(pub u32);

/// Dense hyperedge label, `0..|E|`. Labels only distinguish hyperedges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeLabel(pub u32);

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// Role index of the tail side (also the only role of undirected hypergraphs).
pub const TAIL: usize = 0;
/// Role index of the head side.
pub const HEAD: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
struct RoleView {
    incidence: Vec<Multiset<EdgeLabel>>,
    members: Vec<Multiset<NodeId>>,
}

impl RoleView {
    fn from_incidence(incidence: Vec<Multiset<EdgeLabel>>, n_edges: usize) -> Self {
        let mut members = vec![Multiset::new(); n_edges];
        for (v, inc) in incidence.iter().enumerate() {
            for (e, m) in inc.iter() {
                members[e.0 as usize].insert(NodeId(v as u32), m);
            }
        }
        RoleView { incidence, members }
    }
}

/// An undirected or directed hypergraph over dense node and label indices.
#[derive(Clone)]
pub struct Hypergraph {
    directed: bool,
    n_edges: usize,
    roles: Vec<RoleView>,
    names: Option<Arc<Vec<String>>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.directed == other.directed && self.n_edges == other.n_edges && self.roles == other.roles
    }
}

impl Eq for Hypergraph {}

impl fmt::Debug for Hypergraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut l = f.debug_list();
        for e in 0..self.n_edges {
            let parts: Vec<_> = self.roles.iter().map(|r| &r.members[e]).collect();
            l.entry(&parts);
        }
        l.finish()
    }
}

impl Hypergraph {
    /// Builds an undirected hypergraph from hyperedges listed as node
    /// indices; a repeated index encodes multiplicity.
    pub fn undirected(n_nodes: usize, edges: &[Vec<u32>]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|e| vec![e.iter().map(|&v| NodeId(v)).collect::<Multiset<_>>()])
            .collect();
        Self::from_edges(false, n_nodes, edges)
    }

    /// Builds a directed hypergraph from `(tail, head)` node index lists.
    pub fn directed(n_nodes: usize, edges: &[(Vec<u32>, Vec<u32>)]) -> Result<Self> {
        let edges = edges
            .iter()
            .map(|(t, h)| {
                vec![
                    t.iter().map(|&v| NodeId(v)).collect::<Multiset<_>>(),
                    h.iter().map(|&v| NodeId(v)).collect::<Multiset<_>>(),
                ]
            })
            .collect();
        Self::from_edges(true, n_nodes, edges)
    }

    /// Builds from per-label hyperedges, each given as one node multiset per
    /// role.
    pub fn from_edges(directed: bool, n_nodes: usize, edges: Vec<Vec<Multiset<NodeId>>>) -> Result<Self> {
        let n_roles = if directed { 2 } else { 1 };
        let mut incidence = vec![vec![Multiset::new(); n_nodes]; n_roles];
        for (e, parts) in edges.iter().enumerate() {
            if parts.len() != n_roles {
                return Err(Error::Invalid(format!("hyperedge {e} has {} roles, expected {n_roles}", parts.len())));
            }
            for (r, part) in parts.iter().enumerate() {
                for (v, m) in part.iter() {
                    if v.0 as usize >= n_nodes {
                        return Err(Error::UnknownNode(v.0));
                    }
                    incidence[r][v.0 as usize].insert(EdgeLabel(e as u32), m);
                }
            }
        }
        Self::from_incidence(directed, edges.len(), incidence)
    }

    /// Builds from incidence multisets indexed `[role][node]`.
    pub fn from_incidence(directed: bool, n_edges: usize, incidence: Vec<Vec<Multiset<EdgeLabel>>>) -> Result<Self> {
        let n_roles = if directed { 2 } else { 1 };
        if incidence.len() != n_roles {
            return Err(Error::Invalid(format!("expected {n_roles} incidence roles, got {}", incidence.len())));
        }
        let n_nodes = incidence[0].len();
        if incidence.iter().any(|r| r.len() != n_nodes) {
            return Err(Error::Invalid("roles disagree on node count".into()));
        }
        for role in &incidence {
            for inc in role {
                if let Some((e, _)) = inc.iter().find(|(e, _)| e.0 as usize >= n_edges) {
                    return Err(Error::UnknownEdge(e.0));
                }
            }
        }
        let roles: Vec<RoleView> = incidence.into_iter().map(|inc| RoleView::from_incidence(inc, n_edges)).collect();
        let h = Hypergraph { directed, n_edges, roles, names: None };
        for e in 0..n_edges {
            if h.edge_degree_total(EdgeLabel(e as u32)) == 0 {
                return Err(Error::EmptyEdge(e as u32));
            }
        }
        Ok(h)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.node_count() {
            return Err(Error::Invalid(format!("{} names for {} nodes", names.len(), self.node_count())));
        }
        self.names = Some(Arc::new(names));
        Ok(self)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref().map(|v| v.as_slice())
    }

    pub fn node_name(&self, v: NodeId) -> String {
        match &self.names {
            Some(n) => n[v.0 as usize].clone(),
            None => v.to_string(),
        }
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn node_count(&self) -> usize {
        self.roles[0].incidence.len()
    }

    pub fn edge_count(&self) -> usize {
        self.n_edges
    }

    /// 1 for undirected, 2 (tail, head) for directed.
    pub fn role_count(&self) -> usize {
        self.roles.len()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> {
        (0..self.node_count() as u32).map(NodeId)
    }

    pub fn labels(&self) -> impl Iterator<Item = EdgeLabel> {
        (0..self.n_edges as u32).map(EdgeLabel)
    }

    /// Incidence multiset of `v` in the given role.
    pub fn incidence(&self, role: usize, v: NodeId) -> &Multiset<EdgeLabel> {
        &self.roles[role].incidence[v.0 as usize]
    }

    /// Nodes of hyperedge `e` in the given role.
    pub fn edge(&self, role: usize, e: EdgeLabel) -> &Multiset<NodeId> {
        &self.roles[role].members[e.0 as usize]
    }

    /// Hyperedge `e` as one node multiset per role.
    pub fn hyperedge(&self, e: EdgeLabel) -> Vec<Multiset<NodeId>> {
        self.roles.iter().map(|r| r.members[e.0 as usize].clone()).collect()
    }

    pub fn check_node(&self, v: NodeId) -> Result<()> {
        if (v.0 as usize) < self.node_count() {
            Ok(())
        } else {
            Err(Error::UnknownNode(v.0))
        }
    }

    pub fn check_label(&self, e: EdgeLabel) -> Result<()> {
        if (e.0 as usize) < self.n_edges {
            Ok(())
        } else {
            Err(Error::UnknownEdge(e.0))
        }
    }

    pub(crate) fn edge_degree_total(&self, e: EdgeLabel) -> u32 {
        self.roles.iter().map(|r| r.members[e.0 as usize].len()).sum()
    }

    /// Replaces `I_v` in one role, patching the derived hyperedge view.
    /// Callers are responsible for keeping degrees consistent.
    pub fn set_incidence(&mut self, role: usize, v: NodeId, new: Multiset<EdgeLabel>) {
        let view = &mut self.roles[role];
        let old = std::mem::replace(&mut view.incidence[v.0 as usize], new);
        let new = &view.incidence[v.0 as usize];
        for (e, _) in old.iter() {
            if !new.contains(e) {
                view.members[e.0 as usize].set(v, 0);
            }
        }
        for (e, m) in new.iter() {
            if old.count(e) != m {
                view.members[e.0 as usize].set(v, m);
            }
        }
    }

    /// Replaces the node multiset of hyperedge `e` in one role, patching the
    /// incidence view.
    pub fn set_edge(&mut self, role: usize, e: EdgeLabel, new: Multiset<NodeId>) {
        let view = &mut self.roles[role];
        let old = std::mem::replace(&mut view.members[e.0 as usize], new);
        let new = &view.members[e.0 as usize];
        for (v, _) in old.iter() {
            if !new.contains(v) {
                view.incidence[v.0 as usize].set(e, 0);
            }
        }
        for (v, m) in new.iter() {
            if old.count(v) != m {
                view.incidence[v.0 as usize].set(e, m);
            }
        }
    }

    /// True if `e` contains a node with multiplicity at least two in some role.
    pub fn is_degenerate(&self, e: EdgeLabel) -> bool {
        self.roles.iter().any(|r| r.members[e.0 as usize].max_multiplicity() >= 2)
    }

    /// True if `e` is directed and its tail multiset equals its head multiset.
    pub fn is_self_loop(&self, e: EdgeLabel) -> bool {
        self.directed && self.roles[TAIL].members[e.0 as usize] == self.roles[HEAD].members[e.0 as usize]
    }

    /// True if `e` and `f` are equal as (role-aware) node multisets.
    pub fn same_edge(&self, e: EdgeLabel, f: EdgeLabel) -> bool {
        self.roles.iter().all(|r| r.members[e.0 as usize] == r.members[f.0 as usize])
    }

    /// True if some other label carries the same hyperedge as `e`.
    pub fn has_multi(&self, e: EdgeLabel) -> bool {
        // Any duplicate must contain the first node of `e` in the same role.
        let Some((role, v)) = self
            .roles
            .iter()
            .enumerate()
            .find_map(|(r, view)| view.members[e.0 as usize].elements().next().map(|v| (r, v)))
        else {
            return false;
        };
        let m = self.roles[role].members[e.0 as usize].count(v);
        self.roles[role].incidence[v.0 as usize]
            .iter()
            .any(|(f, c)| f != e && c == m && self.same_edge(e, f))
    }

    /// Undirected transpose: nodes become hyperedges and vice versa. Every
    /// node must have positive degree.
    pub fn transpose(&self) -> Result<Self> {
        if self.directed {
            return Err(Error::Precondition("transpose is defined for undirected hypergraphs".into()));
        }
        let incidence: Vec<Multiset<EdgeLabel>> = self.roles[0]
            .members
            .iter()
            .map(|m| m.map(|v| EdgeLabel(v.0)))
            .collect();
        Self::from_incidence(false, self.node_count(), vec![incidence])
    }
}

/// Node and hyperedge degrees, indexed `[role][item]`. Undirected sequences
/// have a single role; directed ones have tail then head.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreeSequence {
    pub directed: bool,
    pub nodes: Vec<Vec<u32>>,
    pub edges: Vec<Vec<u32>>,
}

impl DegreeSequence {
    pub fn undirected(nodes: Vec<u32>, edges: Vec<u32>) -> Self {
        DegreeSequence { directed: false, nodes: vec![nodes], edges: vec![edges] }
    }

    pub fn directed(nodes: &[(u32, u32)], edges: &[(u32, u32)]) -> Self {
        let split = |xs: &[(u32, u32)]| vec![xs.iter().map(|p| p.0).collect(), xs.iter().map(|p| p.1).collect()];
        DegreeSequence { directed: true, nodes: split(nodes), edges: split(edges) }
    }

    pub fn node_count(&self) -> usize {
        self.nodes[0].len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges[0].len()
    }

    pub fn role_count(&self) -> usize {
        self.nodes.len()
    }

    /// Sum of node degrees per role equals sum of edge degrees per role.
    pub fn is_balanced(&self) -> bool {
        self.nodes.len() == self.edges.len()
            && self
                .nodes
                .iter()
                .zip(&self.edges)
                .all(|(n, e)| n.iter().map(|&x| x as u64).sum::<u64>() == e.iter().map(|&x| x as u64).sum::<u64>())
    }

    /// Total number of node stubs over all roles.
    pub fn total_stubs(&self) -> u64 {
        self.nodes.iter().flatten().map(|&x| x as u64).sum()
    }

    pub fn node_degree(&self, v: usize) -> Vec<u32> {
        self.nodes.iter().map(|r| r[v]).collect()
    }

    pub fn edge_degree(&self, e: usize) -> Vec<u32> {
        self.edges.iter().map(|r| r[e]).collect()
    }

    fn fmt_side(side: &[Vec<u32>], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = side[0].len();
        for i in 0..n {
            if i > 0 {
                f.write_str(",")?;
            }
            let parts: Vec<String> = side.iter().map(|r| r[i].to_string()).collect();
            f.write_str(&parts.join(":"))?;
        }
        Ok(())
    }
}

impl fmt::Display for DegreeSequence {
    /// `nodes=2:2,2:2;edges=1:1,...` (role tuples joined by `:`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("nodes=")?;
        Self::fmt_side(&self.nodes, f)?;
        f.write_str(";edges=")?;
        Self::fmt_side(&self.edges, f)
    }
}

/// Node and hyperedge degrees of `h`.
pub fn degrees(h: &Hypergraph) -> DegreeSequence {
    let nodes = h.roles.iter().map(|r| r.incidence.iter().map(|i| i.len()).collect()).collect();
    let edges = h.roles.iter().map(|r| r.members.iter().map(|m| m.len()).collect()).collect();
    DegreeSequence { directed: h.directed, nodes, edges }
}

/// Directedness plus the hyperedge types a space admits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpaceSpec {
    pub directed: bool,
    /// Only meaningful for directed spaces.
    pub allow_self_loops: bool,
    pub allow_degenerate: bool,
    pub allow_multi: bool,
}

impl SpaceSpec {
    pub fn new(directed: bool, allow_self_loops: bool, allow_degenerate: bool, allow_multi: bool) -> Self {
        SpaceSpec { directed, allow_self_loops: directed && allow_self_loops, allow_degenerate, allow_multi }
    }

    /// Parses a subset of `"sdm"`; `s` is ignored for undirected spaces.
    pub fn parse(directed: bool, flags: &str) -> Result<Self> {
        let (mut s, mut d, mut m) = (false, false, false);
        for c in flags.chars() {
            match c {
                's' => s = true,
                'd' => d = true,
                'm' => m = true,
                ',' | ' ' | '{' | '}' => {}
                _ => return Err(Error::Invalid(format!("unknown space flag '{c}' in \"{flags}\""))),
            }
        }
        Ok(SpaceSpec::new(directed, s, d, m))
    }

    /// All spaces of the given directedness (4 undirected, 8 directed).
    pub fn all(directed: bool) -> Vec<SpaceSpec> {
        let mut out = Vec::new();
        for s in [false, true] {
            if s && !directed {
                continue;
            }
            for d in [false, true] {
                for m in [false, true] {
                    out.push(SpaceSpec::new(directed, s, d, m));
                }
            }
        }
        out
    }

    /// Flag string such as `"sdm"`, `"d"` or `""`.
    pub fn flags(&self) -> String {
        let mut s = String::new();
        if self.allow_self_loops {
            s.push('s');
        }
        if self.allow_degenerate {
            s.push('d');
        }
        if self.allow_multi {
            s.push('m');
        }
        s
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flags: Vec<String> = self.flags().chars().map(String::from).collect();
        write!(f, "{}H_{{{}}}", if self.directed { "dir:" } else { "" }, flags.join(","))
    }
}

/// Labels of each special hyperedge type present in a hypergraph.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeTypeReport {
    pub self_loop_labels: Vec<EdgeLabel>,
    pub degenerate_labels: Vec<EdgeLabel>,
    /// Groups (size >= 2) of labels carrying identical hyperedges.
    pub multi_edge_groups: Vec<Vec<EdgeLabel>>,
}

impl EdgeTypeReport {
    pub fn has_self_loops(&self) -> bool {
        !self.self_loop_labels.is_empty()
    }
    pub fn has_degenerate(&self) -> bool {
        !self.degenerate_labels.is_empty()
    }
    pub fn has_multi(&self) -> bool {
        !self.multi_edge_groups.is_empty()
    }
}

pub fn classify_edges(h: &Hypergraph) -> EdgeTypeReport {
    let mut report = EdgeTypeReport::default();
    let mut groups: HashMap<Vec<&Multiset<NodeId>>, Vec<EdgeLabel>> = HashMap::new();
    for e in h.labels() {
        if h.is_self_loop(e) {
            report.self_loop_labels.push(e);
        }
        if h.is_degenerate(e) {
            report.degenerate_labels.push(e);
        }
        let key: Vec<&Multiset<NodeId>> = h.roles.iter().map(|r| &r.members[e.0 as usize]).collect();
        groups.entry(key).or_default().push(e);
    }
    let mut multi: Vec<Vec<EdgeLabel>> = groups.into_values().filter(|g| g.len() >= 2).collect();
    multi.sort();
    report.multi_edge_groups = multi;
    report
}

/// Whether `h` lies in the hypergraph space described by `spec`.
pub fn in_space(h: &Hypergraph, spec: &SpaceSpec) -> Result<bool> {
    check_direction(h, spec)?;
    let r = classify_edges(h);
    Ok((spec.allow_self_loops || !r.has_self_loops())
        && (spec.allow_degenerate || !r.has_degenerate())
        && (spec.allow_multi || !r.has_multi()))
}

pub(crate) fn check_direction(h: &Hypergraph, spec: &SpaceSpec) -> Result<()> {
    if h.is_directed() != spec.directed {
        let name = |d: bool| if d { "directed" } else { "undirected" };
        return Err(Error::DirectednessMismatch { expected: name(spec.directed), found: name(h.is_directed()) });
    }
    Ok(())
}

/// One hyperedge in canonical form: per role, sorted `(node, multiplicity)`
/// pairs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonEdge(pub Vec<Vec<(u32, u32)>>);

/// A hypergraph up to permutation of hyperedge labels: the lexicographically
/// sorted list of its canonical hyperedges. Nodes stay labelled.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalState {
    pub directed: bool,
    pub node_count: u32,
    pub edges: Vec<CanonEdge>,
}

pub fn canonicalize(h: &Hypergraph) -> CanonicalState {
    let mut edges: Vec<CanonEdge> = h
        .labels()
        .map(|e| CanonEdge(h.roles.iter().map(|r| r.members[e.0 as usize].iter().map(|(v, m)| (v.0, m)).collect()).collect()))
        .collect();
    edges.sort_unstable();
    CanonicalState { directed: h.directed, node_count: h.node_count() as u32, edges }
}

impl CanonicalState {
    /// Representative hypergraph whose labels follow the canonical order.
    pub fn to_hypergraph(&self) -> Hypergraph {
        let edges = self
            .edges
            .iter()
            .map(|ce| ce.0.iter().map(|part| Multiset::from_counts(part.iter().map(|&(v, m)| (NodeId(v), m)))).collect())
            .collect();
        Hypergraph::from_edges(self.directed, self.node_count as usize, edges).expect("canonical state is well formed")
    }

    /// Stub-labelled configuration count of this state; see [`stub_count`].
    pub fn stub_count(&self) -> BigUint {
        let roles = if self.directed { 2 } else { 1 };
        let mut node_deg = vec![vec![0u32; self.node_count as usize]; roles];
        let mut denom = BigUint::one();
        for ce in &self.edges {
            for (r, part) in ce.0.iter().enumerate() {
                for &(v, m) in part {
                    node_deg[r][v as usize] += m;
                    denom *= factorial(m);
                }
            }
        }
        // Edges are sorted, so equal hyperedges are adjacent.
        let mut run = 1u32;
        for i in 1..=self.edges.len() {
            if i < self.edges.len() && self.edges[i] == self.edges[i - 1] {
                run += 1;
            } else {
                denom *= factorial(run);
                run = 1;
            }
        }
        let mut num = BigUint::one();
        for d in node_deg.iter().flatten() {
            num *= factorial(*d);
        }
        debug_assert!((&num % &denom) == BigUint::from(0u32));
        num / denom
    }
}

pub(crate) fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Number of stub-labelled configurations realising `h`:
/// `prod_v d_v! / (prod_e prod_v m_e(v)! * prod_groups g!)`, taken per role
/// for directed hypergraphs, where `g` ranges over the sizes of groups of
/// identical hyperedges.
pub fn stub_count(h: &Hypergraph) -> BigUint {
    canonicalize(h).stub_count()
}


#[cfg(test)]
mod tests {
    use super::fixtures::five_edge_directed;
    use super::*;

    #[test]
    fn degrees_of_directed_example() {
        let h = five_edge_directed();
        let d = degrees(&h);
        // I_d = ({e1, e2, e2}, {}) -> (3, 0)
        assert_eq!(d.node_degree(3), vec![3, 0]);
        assert_eq!(d.node_degree(0), vec![1, 1]);
        assert_eq!(d.edge_degree(4), vec![2, 2]);
        assert!(d.is_balanced());
        let inc = h.incidence(TAIL, NodeId(3));
        assert_eq!(inc.as_slice(), &[(EdgeLabel(0), 1), (EdgeLabel(1), 2)]);
    }

    #[test]
    fn degrees_of_empty_and_single_edge() {
        let h = Hypergraph::undirected(0, &[]).unwrap();
        let d = degrees(&h);
        assert!(d.nodes[0].is_empty() && d.edges[0].is_empty());

        let h = Hypergraph::undirected(2, &[vec![0, 1]]).unwrap();
        assert_eq!(degrees(&h), DegreeSequence::undirected(vec![1, 1], vec![2]));
    }

    #[test]
    fn classify_directed_example() {
        let r = classify_edges(&five_edge_directed());
        assert_eq!(r.degenerate_labels, vec![EdgeLabel(1)]);
        assert_eq!(r.self_loop_labels, vec![EdgeLabel(4)]);
        assert_eq!(r.multi_edge_groups, vec![vec![EdgeLabel(2), EdgeLabel(3)]]);
    }

    #[test]
    fn classify_simple_and_degenerate_self_loop() {
        let r = classify_edges(&Hypergraph::undirected(2, &[vec![0, 1]]).unwrap());
        assert_eq!(r, EdgeTypeReport::default());

        let h = Hypergraph::directed(1, &[(vec![0, 0], vec![0, 0])]).unwrap();
        let r = classify_edges(&h);
        assert_eq!(r.degenerate_labels, vec![EdgeLabel(0)]);
        assert_eq!(r.self_loop_labels, vec![EdgeLabel(0)]);
    }

    #[test]
    fn graph_degenerate_iff_classical_self_loop() {
        let h = Hypergraph::undirected(3, &[vec![0, 0], vec![0, 1], vec![2, 2], vec![1, 2]]).unwrap();
        let r = classify_edges(&h);
        assert_eq!(r.degenerate_labels, vec![EdgeLabel(0), EdgeLabel(2)]);
    }

    #[test]
    fn in_space_checks() {
        let h = five_edge_directed();
        assert!(in_space(&h, &SpaceSpec::parse(true, "sdm").unwrap()).unwrap());
        assert!(!in_space(&h, &SpaceSpec::parse(true, "sd").unwrap()).unwrap());
        let g = Hypergraph::undirected(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        assert!(in_space(&g, &SpaceSpec::parse(false, "").unwrap()).unwrap());
        assert!(matches!(
            in_space(&g, &SpaceSpec::parse(true, "").unwrap()),
            Err(Error::DirectednessMismatch { .. })
        ));
    }

    #[test]
    fn has_multi_matches_classification() {
        let h = five_edge_directed();
        let r = classify_edges(&h);
        for e in h.labels() {
            let grouped = r.multi_edge_groups.iter().any(|g| g.contains(&e));
            assert_eq!(h.has_multi(e), grouped, "label {e}");
        }
    }

    #[test]
    fn canonical_state_ignores_labels() {
        let a = Hypergraph::undirected(3, &[vec![0, 1], vec![1, 2], vec![0, 1]]).unwrap();
        let b = Hypergraph::undirected(3, &[vec![1, 2], vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(canonicalize(&a), canonicalize(&b));
        let c = Hypergraph::undirected(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        let d = Hypergraph::undirected(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        assert_ne!(canonicalize(&c), canonicalize(&d));
    }

    #[test]
    fn canonical_directed_example() {
        let s = canonicalize(&five_edge_directed());
        assert_eq!(s.edges.len(), 5);
        assert!(s.edges.windows(2).all(|w| w[0] <= w[1]));
        // ({a,d},{a,b}) sorts first: its tail starts at node 0.
        assert_eq!(s.edges[0], CanonEdge(vec![vec![(0, 1), (3, 1)], vec![(0, 1), (1, 1)]]));
        let back = s.to_hypergraph();
        assert_eq!(degrees(&back).nodes, degrees(&five_edge_directed()).nodes);
        assert_eq!(canonicalize(&back), s);
    }

    #[test]
    fn stub_count_small_cases() {
        let ab_ab = Hypergraph::undirected(2, &[vec![0, 1], vec![0, 1]]).unwrap();
        let aa_bb = Hypergraph::undirected(2, &[vec![0, 0], vec![1, 1]]).unwrap();
        let ab = Hypergraph::undirected(2, &[vec![0, 1]]).unwrap();
        assert_eq!(stub_count(&ab_ab), BigUint::from(2u32));
        assert_eq!(stub_count(&aa_bb), BigUint::from(1u32));
        assert_eq!(stub_count(&ab), BigUint::from(1u32));
    }

    #[test]
    fn set_incidence_keeps_views_in_sync() {
        let mut h = Hypergraph::undirected(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        // move node 0 out of e0 into e1, node 2 the reverse
        h.set_incidence(0, NodeId(0), Multiset::from_elements([EdgeLabel(1)]));
        h.set_incidence(0, NodeId(2), Multiset::from_elements([EdgeLabel(0)]));
        assert_eq!(h.edge(0, EdgeLabel(0)).expand(), vec![NodeId(1), NodeId(2)]);
        assert_eq!(h.edge(0, EdgeLabel(1)).expand(), vec![NodeId(0), NodeId(1)]);
        let rebuilt = canonicalize(&h).to_hypergraph();
        assert_eq!(canonicalize(&rebuilt), canonicalize(&h));
    }

    #[test]
    fn transpose_swaps_roles() {
        let h = Hypergraph::undirected(3, &[vec![0, 1, 1], vec![2]]).unwrap();
        let t = h.transpose().unwrap();
        assert_eq!(t.node_count(), 2);
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.edge(0, EdgeLabel(1)).expand(), vec![NodeId(0), NodeId(0)]);
        assert_eq!(t.transpose().unwrap(), h);
    }

    #[test]
    fn rejects_empty_edge() {
        assert!(matches!(Hypergraph::undirected(2, &[vec![]]), Err(Error::EmptyEdge(0))));
        assert!(matches!(Hypergraph::undirected(2, &[vec![5]]), Err(Error::UnknownNode(5))));
    }

    #[test]
    fn space_flags_round_trip() {
        for directed in [false, true] {
            for s in SpaceSpec::all(directed) {
                assert_eq!(SpaceSpec::parse(directed, &s.flags()).unwrap(), s);
            }
        }
        assert_eq!(SpaceSpec::all(false).len(), 4);
        assert_eq!(SpaceSpec::all(true).len(), 8);
        assert!(!SpaceSpec::parse(false, "sdm").unwrap().allow_self_loops);
    }
}
