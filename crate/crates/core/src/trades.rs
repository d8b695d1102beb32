//! Hypertrades: the node-pair moves of the Hypercurveball chain.
//!
//! Every move here is a proposal. It never mutates the hypergraph; the
//! chain in [`crate::chain`] applies it and decides whether to keep it.

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::chain::{Chain, Method};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeLabel, Hypergraph, NodeId, SpaceSpec};
use crate::multiset::Multiset;

/// New contents for the two items touched by a move, one multiset per role.
///
/// For trades the items are nodes and the contents incidence multisets; for
/// shuffles the items are hyperedges and the contents node multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TradeOutcome<T = EdgeLabel> {
    pub accepted: bool,
    pub first: Vec<Multiset<T>>,
    pub second: Vec<Multiset<T>>,
}

/// An outcome of an exhaustive move enumeration together with its number
/// of equally likely stub-level realisations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedOutcome<T = EdgeLabel> {
    pub first: Vec<Multiset<T>>,
    pub second: Vec<Multiset<T>>,
    pub weight: u128,
}

/// All outcomes of one move with their weights; `total` is the sum of the
/// weights.
#[derive(Clone, Debug)]
pub struct OutcomeTable<T = EdgeLabel> {
    pub outcomes: Vec<WeightedOutcome<T>>,
    pub total: u128,
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// Splits `combined` into parts of cardinality `k` and `|combined| - k`,
/// uniformly over the `C(n, k)` stub-level splits.
pub fn uniform_split<T: Ord + Copy, R: Rng + ?Sized>(
    combined: &Multiset<T>,
    k: u32,
    rng: &mut R,
) -> Result<(Multiset<T>, Multiset<T>)> {
    let n = combined.len();
    if k > n {
        return Err(Error::OutOfRange { what: "split size", value: k as u64, allowed: format!("0..={n}") });
    }
    let mut stubs = combined.expand();
    let (head, tail) = stubs.partial_shuffle(rng, k as usize);
    Ok((head.iter().copied().collect(), tail.iter().copied().collect()))
}

/// Every multiset-level split of `combined` with first part of size `k`,
/// weighted by its number of stub-level splits. Weights sum to `C(n, k)`.
pub fn enumerate_splits<T: Ord + Copy>(combined: &Multiset<T>, k: u32) -> Vec<(Multiset<T>, Multiset<T>, u128)> {
    let items = combined.as_slice();
    let mut suffix = vec![0u32; items.len() + 1];
    for i in (0..items.len()).rev() {
        suffix[i] = suffix[i + 1] + items[i].1;
    }
    let mut out = Vec::new();
    let mut counts = vec![0u32; items.len()];
    fn rec<T: Ord + Copy>(
        i: usize,
        left: u32,
        weight: u128,
        items: &[(T, u32)],
        suffix: &[u32],
        counts: &mut Vec<u32>,
        out: &mut Vec<(Multiset<T>, Multiset<T>, u128)>,
    ) {
        if i == items.len() {
            if left == 0 {
                let a = Multiset::from_counts(items.iter().zip(counts.iter()).map(|(&(x, _), &c)| (x, c)));
                let b = Multiset::from_counts(items.iter().zip(counts.iter()).map(|(&(x, m), &c)| (x, m - c)));
                out.push((a, b, weight));
            }
            return;
        }
        if left > suffix[i] {
            return;
        }
        let m = items[i].1;
        for c in 0..=m.min(left) {
            counts[i] = c;
            rec(i + 1, left - c, weight * binomial(m as u64, c as u64), items, suffix, counts, out);
        }
        counts[i] = 0;
    }
    rec(0, k, 1, items, &suffix, &mut counts, &mut out);
    out
}

/// Which hypertrade variant a space uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TradeKind {
    /// Repartition the full `I_v ⊎ I_w`.
    Full,
    /// Keep `I_v ∩ I_w` fixed and repartition the symmetric difference.
    NoDeg,
    /// As `NoDeg`, splitting potential multi-hyperedge pairs one per side.
    Simple,
}

/// Trade variant plus the post-move checks a space needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TradePlan {
    pub kind: TradeKind,
    pub reject_self_loops: bool,
    pub reject_multi: bool,
}

impl TradePlan {
    pub fn for_space(spec: &SpaceSpec) -> Self {
        let kind = if !spec.directed && !spec.allow_degenerate && !spec.allow_multi {
            TradeKind::Simple
        } else if spec.allow_degenerate {
            TradeKind::Full
        } else {
            TradeKind::NoDeg
        };
        TradePlan {
            kind,
            reject_self_loops: spec.directed && !spec.allow_self_loops,
            reject_multi: !spec.allow_multi && kind != TradeKind::Simple,
        }
    }

    pub fn needs_check(&self) -> bool {
        self.reject_self_loops || self.reject_multi
    }
}

/// Per-role decomposition of a trade: `fixed` goes to both sides, each
/// pair is split one per side, `pool` is split with `k` stubs going to the
/// first node.
struct RolePlan {
    fixed: Multiset<EdgeLabel>,
    pairs: Vec<(EdgeLabel, EdgeLabel)>,
    pool: Multiset<EdgeLabel>,
    k: u32,
}

fn check_pair(h: &Hypergraph, v: NodeId, w: NodeId) -> Result<()> {
    h.check_node(v)?;
    h.check_node(w)?;
    if v == w {
        return Err(Error::SameItem(v.0));
    }
    Ok(())
}

fn require_set(inc: &Multiset<EdgeLabel>, v: NodeId) -> Result<()> {
    if inc.max_multiplicity() > 1 {
        return Err(Error::Precondition(format!("node {v} lies in a degenerate hyperedge")));
    }
    Ok(())
}

fn role_plans(h: &Hypergraph, v: NodeId, w: NodeId, kind: TradeKind) -> Result<Vec<RolePlan>> {
    check_pair(h, v, w)?;
    if kind == TradeKind::Simple && h.is_directed() {
        return Err(Error::Precondition("hypertrade_simple is defined for undirected hypergraphs".into()));
    }
    let mut plans = Vec::with_capacity(h.role_count());
    for role in 0..h.role_count() {
        let (i, j) = (h.incidence(role, v), h.incidence(role, w));
        let plan = match kind {
            TradeKind::Full => RolePlan { fixed: Multiset::new(), pairs: Vec::new(), pool: i.sum(j), k: i.len() },
            TradeKind::NoDeg | TradeKind::Simple => {
                require_set(i, v)?;
                require_set(j, w)?;
                let only_i = i.difference(j);
                let only_j = j.difference(i);
                let pairs = if kind == TradeKind::Simple {
                    potential_multi_pairs(h, v, w, &only_i, &only_j)?
                } else {
                    Vec::new()
                };
                let mut pool = only_i.sum(&only_j);
                for &(x, y) in &pairs {
                    pool.remove(x, 1);
                    pool.remove(y, 1);
                }
                RolePlan { fixed: i.intersection(j), k: only_i.len() - pairs.len() as u32, pairs, pool }
            }
        };
        plans.push(plan);
    }
    Ok(plans)
}

/// Pairs `(x, y)` with `x` only at `v`, `y` only at `w` and identical
/// membership on every other node. Such a pair would become a
/// multi-hyperedge if both labels ended up at the same node.
fn potential_multi_pairs(
    h: &Hypergraph,
    v: NodeId,
    w: NodeId,
    only_v: &Multiset<EdgeLabel>,
    only_w: &Multiset<EdgeLabel>,
) -> Result<Vec<(EdgeLabel, EdgeLabel)>> {
    let rest = |e: EdgeLabel, u: NodeId| {
        let mut m = h.edge(0, e).clone();
        m.set(u, 0);
        m
    };
    let mut by_rest: HashMap<Multiset<NodeId>, Vec<EdgeLabel>> = HashMap::new();
    for x in only_v.elements() {
        by_rest.entry(rest(x, v)).or_default().push(x);
    }
    let mut pairs = Vec::new();
    let mut used: HashMap<EdgeLabel, EdgeLabel> = HashMap::new();
    for y in only_w.elements() {
        let Some(xs) = by_rest.get(&rest(y, w)) else { continue };
        if xs.len() > 1 {
            return Err(Error::Precondition(format!("label {y} pairs with several labels {xs:?}")));
        }
        let x = xs[0];
        if let Some(prev) = used.insert(x, y) {
            return Err(Error::Precondition(format!("label {x} pairs with both {prev} and {y}")));
        }
        pairs.push((x, y));
    }
    Ok(pairs)
}

fn sample_plans<R: Rng + ?Sized>(plans: Vec<RolePlan>, rng: &mut R) -> Result<TradeOutcome> {
    let mut first = Vec::with_capacity(plans.len());
    let mut second = Vec::with_capacity(plans.len());
    for p in plans {
        let (mut a, mut b) = uniform_split(&p.pool, p.k, rng)?;
        for &(x, y) in &p.pairs {
            let (to_a, to_b) = if rng.random_bool(0.5) { (x, y) } else { (y, x) };
            a.insert(to_a, 1);
            b.insert(to_b, 1);
        }
        first.push(a.sum(&p.fixed));
        second.push(b.sum(&p.fixed));
    }
    Ok(TradeOutcome { accepted: true, first, second })
}

fn enumerate_plans(plans: Vec<RolePlan>) -> OutcomeTable {
    let mut acc: Vec<WeightedOutcome> = vec![WeightedOutcome { first: Vec::new(), second: Vec::new(), weight: 1 }];
    let mut total: u128 = 1;
    for p in plans {
        let mut role_outcomes: Vec<(Multiset<EdgeLabel>, Multiset<EdgeLabel>, u128)> = Vec::new();
        let splits = enumerate_splits(&p.pool, p.k);
        for mask in 0u64..(1u64 << p.pairs.len()) {
            for (a, b, wgt) in &splits {
                let (mut a, mut b) = (a.sum(&p.fixed), b.sum(&p.fixed));
                for (bit, &(x, y)) in p.pairs.iter().enumerate() {
                    let (to_a, to_b) = if mask >> bit & 1 == 0 { (x, y) } else { (y, x) };
                    a.insert(to_a, 1);
                    b.insert(to_b, 1);
                }
                role_outcomes.push((a, b, *wgt));
            }
        }
        total *= binomial(p.pool.len() as u64, p.k as u64) << p.pairs.len();
        acc = acc
            .into_iter()
            .flat_map(|o| {
                role_outcomes.iter().map(move |(a, b, wgt)| {
                    let mut first = o.first.clone();
                    let mut second = o.second.clone();
                    first.push(a.clone());
                    second.push(b.clone());
                    WeightedOutcome { first, second, weight: o.weight * wgt }
                })
            })
            .collect();
    }
    OutcomeTable { outcomes: acc, total }
}

/// Repartitions `I_v ⊎ I_w` uniformly at stub level (directed: tails, then
/// heads). Always accepted.
pub fn hypertrade<R: Rng + ?Sized>(h: &Hypergraph, v: NodeId, w: NodeId, rng: &mut R) -> Result<TradeOutcome> {
    sample_plans(role_plans(h, v, w, TradeKind::Full)?, rng)
}

/// Keeps `I_v ∩ I_w` at both nodes and repartitions the symmetric
/// difference, so no label is assigned twice to one node.
pub fn hypertrade_nodeg<R: Rng + ?Sized>(h: &Hypergraph, v: NodeId, w: NodeId, rng: &mut R) -> Result<TradeOutcome> {
    sample_plans(role_plans(h, v, w, TradeKind::NoDeg)?, rng)
}

/// Undirected trade that creates neither degenerate nor multi-hyperedges.
pub fn hypertrade_simple<R: Rng + ?Sized>(h: &Hypergraph, v: NodeId, w: NodeId, rng: &mut R) -> Result<TradeOutcome> {
    sample_plans(role_plans(h, v, w, TradeKind::Simple)?, rng)
}

pub fn propose_trade<R: Rng + ?Sized>(
    h: &Hypergraph,
    v: NodeId,
    w: NodeId,
    kind: TradeKind,
    rng: &mut R,
) -> Result<TradeOutcome> {
    sample_plans(role_plans(h, v, w, kind)?, rng)
}

/// Every outcome of a trade of the given kind with its stub-level weight.
pub fn enumerate_trade(h: &Hypergraph, v: NodeId, w: NodeId, kind: TradeKind) -> Result<OutcomeTable> {
    Ok(enumerate_plans(role_plans(h, v, w, kind)?))
}

/// Writes a trade outcome into `h`.
pub fn apply_trade(h: &mut Hypergraph, v: NodeId, w: NodeId, outcome: &TradeOutcome) {
    apply_incidences(h, v, w, &outcome.first, &outcome.second);
}

pub(crate) fn apply_incidences(
    h: &mut Hypergraph,
    v: NodeId,
    w: NodeId,
    first: &[Multiset<EdgeLabel>],
    second: &[Multiset<EdgeLabel>],
) {
    for role in 0..h.role_count() {
        h.set_incidence(role, v, first[role].clone());
        h.set_incidence(role, w, second[role].clone());
    }
}

/// Runs `n` steps of the Hypercurveball chain from `h0` inside `spec`.
/// `observer` sees `(step, state)` after every step, starting at 1.
pub fn run_hypercurveball<R, O>(h0: &Hypergraph, spec: &SpaceSpec, n: u64, rng: &mut R, observer: O) -> Result<Hypergraph>
where
    R: Rng + ?Sized,
    O: FnMut(u64, &Hypergraph),
{
    Chain::new(h0.clone(), *spec, Method::Trade)?.run(n, rng, observer)
}
