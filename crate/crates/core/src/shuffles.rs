//! Hyperedge shuffles: the edge-pair moves of the baseline chain.

use rand::Rng;

use crate::chain::{Chain, Method};
use crate::error::{Error, Result};
use crate::hypergraph::{EdgeLabel, Hypergraph, NodeId, SpaceSpec};
use crate::multiset::Multiset;
use crate::trades::{binomial, enumerate_splits, uniform_split, OutcomeTable, TradeOutcome, WeightedOutcome};

/// Outcome of a shuffle: new node multisets of the two hyperedges.
pub type ShuffleOutcome = TradeOutcome<NodeId>;

fn check_labels(h: &Hypergraph, e: EdgeLabel, f: EdgeLabel) -> Result<()> {
    h.check_label(e)?;
    h.check_label(f)?;
    if e == f {
        return Err(Error::SameItem(e.0));
    }
    Ok(())
}

/// Repartitions `e ⊎ f` uniformly at stub level into parts of sizes `|e|`
/// and `|f|` (directed: tails and heads independently).
pub fn hyperedge_shuffle<R: Rng + ?Sized>(h: &Hypergraph, e: EdgeLabel, f: EdgeLabel, rng: &mut R) -> Result<ShuffleOutcome> {
    check_labels(h, e, f)?;
    let mut first = Vec::with_capacity(h.role_count());
    let mut second = Vec::with_capacity(h.role_count());
    for role in 0..h.role_count() {
        let (a, b) = (h.edge(role, e), h.edge(role, f));
        let (x, y) = uniform_split(&a.sum(b), a.len(), rng)?;
        first.push(x);
        second.push(y);
    }
    Ok(TradeOutcome { accepted: true, first, second })
}

/// Every outcome of shuffling `e` and `f`, weighted by stub-level splits.
pub fn enumerate_shuffle(h: &Hypergraph, e: EdgeLabel, f: EdgeLabel) -> Result<OutcomeTable<NodeId>> {
    check_labels(h, e, f)?;
    let mut acc = vec![WeightedOutcome { first: Vec::new(), second: Vec::new(), weight: 1 }];
    let mut total = 1u128;
    for role in 0..h.role_count() {
        let (a, b) = (h.edge(role, e), h.edge(role, f));
        let pool = a.sum(b);
        let splits = enumerate_splits(&pool, a.len());
        total *= binomial(pool.len() as u64, a.len() as u64);
        acc = acc
            .into_iter()
            .flat_map(|o| {
                splits.iter().map(move |(x, y, w)| {
                    let mut first = o.first.clone();
                    let mut second = o.second.clone();
                    first.push(x.clone());
                    second.push(y.clone());
                    WeightedOutcome { first, second, weight: o.weight * w }
                })
            })
            .collect();
    }
    Ok(OutcomeTable { outcomes: acc, total })
}

/// Exchanges one incidence: `a` leaves `e` for `f` and `b` leaves `f` for
/// `e`, on the given role.
pub fn simple_shuffle(h: &Hypergraph, e: EdgeLabel, f: EdgeLabel, a: NodeId, b: NodeId, role: usize) -> Result<Hypergraph> {
    check_labels(h, e, f)?;
    if role >= h.role_count() {
        return Err(Error::OutOfRange { what: "role", value: role as u64, allowed: format!("0..{}", h.role_count()) });
    }
    if !h.edge(role, e).contains(a) {
        return Err(Error::Precondition(format!("{a} is not in {e}")));
    }
    if !h.edge(role, f).contains(b) {
        return Err(Error::Precondition(format!("{b} is not in {f}")));
    }
    let mut g = h.clone();
    let mut ne = h.edge(role, e).clone();
    let mut nf = h.edge(role, f).clone();
    ne.remove(a, 1);
    ne.insert(b, 1);
    nf.remove(b, 1);
    nf.insert(a, 1);
    g.set_edge(role, e, ne);
    g.set_edge(role, f, nf);
    Ok(g)
}

pub fn apply_shuffle(h: &mut Hypergraph, e: EdgeLabel, f: EdgeLabel, outcome: &ShuffleOutcome) {
    apply_edges(h, e, f, &outcome.first, &outcome.second);
}

pub(crate) fn apply_edges(h: &mut Hypergraph, e: EdgeLabel, f: EdgeLabel, first: &[Multiset<NodeId>], second: &[Multiset<NodeId>]) {
    for role in 0..h.role_count() {
        h.set_edge(role, e, first[role].clone());
        h.set_edge(role, f, second[role].clone());
    }
}

/// Runs `n` steps of the hyperedge-shuffle chain from `h0` inside `spec`.
pub fn run_shuffle<R, O>(h0: &Hypergraph, spec: &SpaceSpec, n: u64, rng: &mut R, observer: O) -> Result<Hypergraph>
where
    R: Rng + ?Sized,
    O: FnMut(u64, &Hypergraph),
{
    Chain::new(h0.clone(), *spec, Method::Shuffle)?.run(n, rng, observer)
}
