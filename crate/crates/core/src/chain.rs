//! The sampling driver shared by trades and shuffles: pick two items,
//! propose a move, reject it if it leaves the space, repeat.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::hypergraph::{check_direction, in_space, EdgeLabel, Hypergraph, NodeId, SpaceSpec};
use crate::multiset::Multiset;
use crate::shuffles;
use crate::trades::{self, TradePlan};

/// Deterministic random stream used by every sampler.
pub type RngStream = ChaCha8Rng;

pub fn rng_from_seed(seed: u64) -> RngStream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seed for the `index`-th independent run derived from `base` (splitmix64).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Move family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    /// Hypercurveball node-pair trades.
    Trade,
    /// Hyperedge-pair shuffles.
    Shuffle,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Trade => "trade",
            Method::Shuffle => "shuffle",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "trade" | "hcb" | "hypercurveball" => Ok(Method::Trade),
            "shuffle" => Ok(Method::Shuffle),
            _ => Err(Error::Invalid(format!("unknown method \"{s}\" (expected trade or shuffle)"))),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Uniform unordered pair of distinct indices in `0..n`, returned in draw
/// order.
pub fn pick_pair<R: Rng + ?Sized>(rng: &mut R, n: usize) -> (usize, usize) {
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    (i, j)
}

/// True if none of `labels` is of a type `spec` forbids. Only the given
/// labels are inspected, so this is exact when they are the only ones a
/// move changed.
pub fn labels_in_space(h: &Hypergraph, spec: &SpaceSpec, labels: impl IntoIterator<Item = EdgeLabel>) -> bool {
    labels.into_iter().all(|e| {
        (spec.allow_degenerate || !h.is_degenerate(e))
            && (spec.allow_self_loops || !h.is_self_loop(e))
            && (spec.allow_multi || !h.has_multi(e))
    })
}

/// A running Markov chain on one hypergraph space.
#[derive(Clone, Debug)]
pub struct Chain {
    state: Hypergraph,
    spec: SpaceSpec,
    method: Method,
    plan: TradePlan,
    full_rescan: bool,
    steps: u64,
    accepted: u64,
}

impl Chain {
    pub fn new(h0: Hypergraph, spec: SpaceSpec, method: Method) -> Result<Self> {
        check_direction(&h0, &spec)?;
        if !in_space(&h0, &spec)? {
            return Err(Error::NotInSpace(spec.to_string()));
        }
        let (what, found) = match method {
            Method::Trade => ("nodes", h0.node_count()),
            Method::Shuffle => ("hyperedges", h0.edge_count()),
        };
        if found < 2 {
            return Err(Error::TooFew { what, needed: 2, found });
        }
        Ok(Chain { plan: TradePlan::for_space(&spec), state: h0, spec, method, full_rescan: false, steps: 0, accepted: 0 })
    }

    /// Cross-check every local rejection decision against a full rescan.
    pub fn with_full_rescan(mut self, on: bool) -> Self {
        self.full_rescan = on;
        self
    }

    pub fn state(&self) -> &Hypergraph {
        &self.state
    }

    pub fn into_state(self) -> Hypergraph {
        self.state
    }

    pub fn spec(&self) -> &SpaceSpec {
        &self.spec
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn accepted(&self) -> u64 {
        self.accepted
    }

    /// One step. Returns whether the proposal was kept; a rejected proposal
    /// still counts as a step.
    pub fn step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<bool> {
        let ok = match self.method {
            Method::Trade => self.trade_step(rng)?,
            Method::Shuffle => self.shuffle_step(rng)?,
        };
        self.steps += 1;
        if ok {
            self.accepted += 1;
        }
        Ok(ok)
    }

    pub fn run<R, O>(mut self, n: u64, rng: &mut R, mut observer: O) -> Result<Hypergraph>
    where
        R: Rng + ?Sized,
        O: FnMut(u64, &Hypergraph),
    {
        for i in 1..=n {
            self.step(rng)?;
            observer(i, &self.state);
        }
        Ok(self.state)
    }

    fn trade_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<bool> {
        let (i, j) = pick_pair(rng, self.state.node_count());
        let (v, w) = (NodeId(i as u32), NodeId(j as u32));
        let out = trades::propose_trade(&self.state, v, w, self.plan.kind, rng)?;
        let roles = self.state.role_count();
        let unchanged = (0..roles)
            .all(|r| out.first[r] == *self.state.incidence(r, v) && out.second[r] == *self.state.incidence(r, w));
        if unchanged {
            return Ok(true);
        }
        let old_v: Vec<Multiset<EdgeLabel>> = (0..roles).map(|r| self.state.incidence(r, v).clone()).collect();
        let old_w: Vec<Multiset<EdgeLabel>> = (0..roles).map(|r| self.state.incidence(r, w).clone()).collect();
        trades::apply_trade(&mut self.state, v, w, &out);
        if !self.plan.needs_check() && !self.full_rescan {
            return Ok(true);
        }
        // Per role, I_v ⊎ I_w is unchanged, so every altered label sits in
        // the new incidence of v or w.
        let mut touched: Vec<EdgeLabel> = out.first.iter().chain(&out.second).flat_map(|m| m.elements()).collect();
        touched.sort_unstable();
        touched.dedup();
        let ok = labels_in_space(&self.state, &self.spec, touched);
        self.cross_check(ok)?;
        if !ok {
            trades::apply_incidences(&mut self.state, v, w, &old_v, &old_w);
        }
        Ok(ok)
    }

    fn shuffle_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Result<bool> {
        let (i, j) = pick_pair(rng, self.state.edge_count());
        let (e, f) = (EdgeLabel(i as u32), EdgeLabel(j as u32));
        let out = shuffles::hyperedge_shuffle(&self.state, e, f, rng)?;
        let old_e = self.state.hyperedge(e);
        let old_f = self.state.hyperedge(f);
        if out.first == old_e && out.second == old_f {
            return Ok(true);
        }
        shuffles::apply_shuffle(&mut self.state, e, f, &out);
        let ok = labels_in_space(&self.state, &self.spec, [e, f]);
        self.cross_check(ok)?;
        if !ok {
            shuffles::apply_edges(&mut self.state, e, f, &old_e, &old_f);
        }
        Ok(ok)
    }

    fn cross_check(&self, local: bool) -> Result<()> {
        if self.full_rescan {
            let full = in_space(&self.state, &self.spec)?;
            if full != local {
                return Err(Error::Invalid(format!("local check says {local}, full rescan says {full}")));
            }
        }
        Ok(())
    }
}

/// Runs `n` steps of either method. See [`Chain`].
pub fn run_chain<R, O>(h0: &Hypergraph, spec: &SpaceSpec, method: Method, n: u64, rng: &mut R, observer: O) -> Result<Hypergraph>
where
    R: Rng + ?Sized,
    O: FnMut(u64, &Hypergraph),
{
    Chain::new(h0.clone(), *spec, method)?.run(n, rng, observer)
}
