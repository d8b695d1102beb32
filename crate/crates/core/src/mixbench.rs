//! Mixing experiments: perturbation degree, averaged curves, mixing-time
//! estimates, curve fits and the minimum-degree predictor.

use std::cmp::Ordering;
use std::fmt;

use levenberg_marquardt::{LeastSquaresProblem, LevenbergMarquardt};
use nalgebra::storage::Owned;
use nalgebra::{DMatrix, DVector, Dyn, OMatrix, Vector5, U5};
use rand::SeedableRng;
use rayon::prelude::*;

use crate::chain::{derive_seed, Chain, Method, RngStream};
use crate::error::{Error, Result};
use crate::hypergraph::{degrees, Hypergraph, NodeId, SpaceSpec};
use crate::multiset::Multiset;
use crate::stats::min_pair_sum;

/// `(numerator, denominator)` of the perturbation degree of `h` with
/// respect to `g`: the summed absolute multiplicity differences between
/// same-label hyperedges, over twice the total node degree.
pub fn perturbation_counts(g: &Hypergraph, h: &Hypergraph) -> Result<(u64, u64)> {
    if g.is_directed() != h.is_directed() || g.node_count() != h.node_count() || g.edge_count() != h.edge_count() {
        return Err(Error::Invalid("hypergraphs differ in directedness, nodes or hyperedge labels".into()));
    }
    let mut num = 0u64;
    let mut stubs = 0u64;
    for role in 0..g.role_count() {
        for e in g.labels() {
            let (a, b) = (g.edge(role, e), h.edge(role, e));
            if a.len() != b.len() {
                return Err(Error::Invalid(format!("{e} has degree {} and {}", a.len(), b.len())));
            }
            stubs += a.len() as u64;
            num += multiset_l1(a, b);
        }
    }
    Ok((num, 2 * stubs))
}

fn multiset_l1(a: &Multiset<NodeId>, b: &Multiset<NodeId>) -> u64 {
    let (x, y) = (a.as_slice(), b.as_slice());
    let (mut i, mut j, mut d) = (0, 0, 0u64);
    while i < x.len() || j < y.len() {
        match (x.get(i), y.get(j)) {
            (Some(&(u, m)), Some(&(v, n))) if u == v => {
                d += m.abs_diff(n) as u64;
                i += 1;
                j += 1;
            }
            (Some(&(u, m)), Some(&(v, _))) if u < v => {
                d += m as u64;
                i += 1;
            }
            (Some(&(_, m)), None) => {
                d += m as u64;
                i += 1;
            }
            (_, Some(&(_, n))) => {
                d += n as u64;
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    d
}

/// Perturbation degree in `[0, 1]`; zero iff every same-label hyperedge is
/// unchanged.
pub fn perturbation_degree(g: &Hypergraph, h: &Hypergraph) -> Result<f64> {
    let (n, d) = perturbation_counts(g, h)?;
    Ok(if d == 0 { 0.0 } else { n as f64 / d as f64 })
}

/// Mean perturbation over independent runs, recorded at fixed steps.
#[derive(Clone, Debug, PartialEq)]
pub struct MixCurve {
    pub steps: Vec<u64>,
    pub mean: Vec<f64>,
    /// Sample standard deviation over runs (zero for a single run).
    pub std: Vec<f64>,
    pub runs: u64,
    pub method: Method,
    pub dataset: String,
    pub seed: u64,
}

pub const MIX_CURVE_CSV_HEADER: &str = "step,mean,std,method,dataset,runs,seed";

impl MixCurve {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Half-width of the 95% confidence band of the mean at point `i`.
    pub fn band95(&self, i: usize) -> f64 {
        1.96 * self.std[i] / (self.runs as f64).sqrt()
    }

    pub fn csv_rows(&self) -> Vec<String> {
        (0..self.len())
            .map(|i| {
                format!(
                    "{},{:.9},{:.9},{},{},{},{}",
                    self.steps[i], self.mean[i], self.std[i], self.method, self.dataset, self.runs, self.seed
                )
            })
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from(MIX_CURVE_CSV_HEADER);
        s.push('\n');
        for r in self.csv_rows() {
            s.push_str(&r);
            s.push('\n');
        }
        s
    }
}

/// Steps at which a run of `steps` steps records: every `record_every`-th
/// step, always including 0 and the last.
pub fn record_points(steps: u64, record_every: u64) -> Vec<u64> {
    let every = record_every.max(1);
    let mut pts: Vec<u64> = (0..=steps / every).map(|k| k * every).collect();
    if *pts.last().expect("0 is always recorded") != steps {
        pts.push(steps);
    }
    pts
}

/// Runs `runs` independent chains from `h0` (seeds derived from `seed`) and
/// averages their perturbation curves.
#[allow(clippy::too_many_arguments)]
pub fn run_mixing_experiment(
    h0: &Hypergraph,
    spec: &SpaceSpec,
    method: Method,
    steps: u64,
    runs: u64,
    record_every: u64,
    seed: u64,
    dataset: &str,
) -> Result<MixCurve> {
    if runs == 0 {
        return Err(Error::TooFew { what: "runs", needed: 1, found: 0 });
    }
    let points = record_points(steps, record_every);
    let chain = Chain::new(h0.clone(), *spec, method)?;
    let per_run = (0..runs)
        .into_par_iter()
        .map(|r| {
            let mut rng = RngStream::seed_from_u64(derive_seed(seed, r));
            let mut c = chain.clone();
            let mut out = Vec::with_capacity(points.len());
            let mut done = 0u64;
            for &p in &points {
                while done < p {
                    c.step(&mut rng)?;
                    done += 1;
                }
                out.push(perturbation_degree(h0, c.state())?);
            }
            Ok(out)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?;
    let n = runs as f64;
    let mean: Vec<f64> = (0..points.len()).map(|i| per_run.iter().map(|r| r[i]).sum::<f64>() / n).collect();
    let std = (0..points.len())
        .map(|i| {
            if runs < 2 {
                return 0.0;
            }
            let ss: f64 = per_run.iter().map(|r| (r[i] - mean[i]).powi(2)).sum();
            (ss / (n - 1.0)).sqrt()
        })
        .collect();
    Ok(MixCurve { steps: points, mean, std, runs, method, dataset: dataset.to_string(), seed })
}

/// Knobs of [`estimate_mixing_time`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MixingOptions {
    /// Fraction of the recorded points whose mean is the plateau `L`.
    pub tail_frac: f64,
    /// Relative band around `L` that counts as mixed.
    pub band: f64,
    /// Largest rise of a least-squares line over the tail, relative to
    /// `L`, before the curve counts as still rising.
    pub max_tail_rise: f64,
}

impl Default for MixingOptions {
    fn default() -> Self {
        MixingOptions { tail_frac: 0.1, band: 0.02, max_tail_rise: 0.01 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum MixingEstimate {
    Mixed { step: u64, index: usize, plateau: f64 },
    NotMixed { plateau: f64, tail_rise: f64 },
}

impl MixingEstimate {
    pub fn step(&self) -> Option<u64> {
        match self {
            MixingEstimate::Mixed { step, .. } => Some(*step),
            MixingEstimate::NotMixed { .. } => None,
        }
    }

    pub fn plateau(&self) -> f64 {
        match self {
            MixingEstimate::Mixed { plateau, .. } | MixingEstimate::NotMixed { plateau, .. } => *plateau,
        }
    }
}

impl fmt::Display for MixingEstimate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MixingEstimate::Mixed { step, .. } => write!(f, "{step}"),
            MixingEstimate::NotMixed { .. } => f.write_str("not mixed"),
        }
    }
}

pub fn estimate_mixing_time(curve: &MixCurve, opts: &MixingOptions) -> Result<MixingEstimate> {
    estimate_mixing_time_points(&curve.steps, &curve.mean, opts)
}

/// The first recorded step within `band * L` of the plateau `L`.
pub fn estimate_mixing_time_points(steps: &[u64], values: &[f64], opts: &MixingOptions) -> Result<MixingEstimate> {
    if steps.is_empty() || steps.len() != values.len() {
        return Err(Error::Invalid("curve must be nonempty with one value per step".into()));
    }
    let n = values.len();
    let k = ((n as f64 * opts.tail_frac).ceil() as usize).clamp(1, n);
    let tail = n - k..n;
    let plateau = values[tail.clone()].iter().sum::<f64>() / k as f64;
    let rise = if k >= 2 {
        let xs: Vec<f64> = steps[tail.clone()].iter().map(|&s| s as f64).collect();
        let ys = &values[tail];
        let (slope, _) = ols(&xs, ys);
        slope * (xs[k - 1] - xs[0])
    } else {
        0.0
    };
    let rel_rise = if plateau > 0.0 {
        rise / plateau
    } else if rise > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    if rel_rise > opts.max_tail_rise {
        return Ok(MixingEstimate::NotMixed { plateau, tail_rise: rel_rise });
    }
    let tol = opts.band * plateau.abs();
    let index = values.iter().position(|v| (v - plateau).abs() <= tol).expect("the tail mean lies within the tail range");
    Ok(MixingEstimate::Mixed { step: steps[index], index, plateau })
}

/// `(slope, intercept)` of the ordinary least-squares line.
fn ols(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    (slope, my - slope * mx)
}

/// Parameters of `f(x) = L - a exp(-b x) - c exp(-d x)` with `b >= d > 0`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult {
    pub l: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub rmse: f64,
    pub converged: bool,
    /// First `x >= 0` with `|f(x) - L| <= band * |L|`.
    pub mixing_time: f64,
}

pub const FIT_CSV_HEADER: &str = "dataset,method,L,a,b,c,d,rmse,mixing_time,extrapolated";

impl FitResult {
    pub fn eval(&self, x: f64) -> f64 {
        self.l - self.a * (-self.b * x).exp() - self.c * (-self.d * x).exp()
    }

    /// `extrapolated` marks a mixing time beyond the last observed step.
    pub fn csv_row(&self, dataset: &str, method: &str, extrapolated: bool) -> String {
        format!(
            "{dataset},{method},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.6e},{:.3},{extrapolated}",
            self.l, self.a, self.b, self.c, self.d, self.rmse, self.mixing_time
        )
    }
}

struct DoubleExp<'a> {
    /// Abscissae rescaled to `[0, 1]`.
    u: &'a [f64],
    y: &'a [f64],
    /// `(L, a, ln b, c, ln d)` in rescaled units.
    p: Vector5<f64>,
}

impl LeastSquaresProblem<f64, Dyn, U5> for DoubleExp<'_> {
    type ResidualStorage = Owned<f64, Dyn>;
    type JacobianStorage = Owned<f64, Dyn, U5>;
    type ParameterStorage = Owned<f64, U5>;

    fn set_params(&mut self, p: &Vector5<f64>) {
        self.p = *p;
    }

    fn params(&self) -> Vector5<f64> {
        self.p
    }

    fn residuals(&self) -> Option<DVector<f64>> {
        let (l, a, b, c, d) = (self.p[0], self.p[1], self.p[2].exp(), self.p[3], self.p[4].exp());
        Some(DVector::from_iterator(
            self.u.len(),
            self.u.iter().zip(self.y).map(|(&u, &y)| l - a * (-b * u).exp() - c * (-d * u).exp() - y),
        ))
    }

    fn jacobian(&self) -> Option<OMatrix<f64, Dyn, U5>> {
        let (a, b, c, d) = (self.p[1], self.p[2].exp(), self.p[3], self.p[4].exp());
        let mut j = OMatrix::<f64, Dyn, U5>::zeros(self.u.len());
        for (i, &u) in self.u.iter().enumerate() {
            let (eb, ed) = ((-b * u).exp(), (-d * u).exp());
            j[(i, 0)] = 1.0;
            j[(i, 1)] = -eb;
            j[(i, 2)] = a * b * u * eb;
            j[(i, 3)] = -ed;
            j[(i, 4)] = c * d * u * ed;
        }
        Some(j)
    }
}

/// `(L, a, c)` minimising the squared error for fixed rescaled rates.
fn linear_part(u: &[f64], y: &[f64], b: f64, d: f64) -> Option<(f64, f64, f64)> {
    let m = DMatrix::from_fn(u.len(), 3, |i, k| match k {
        0 => 1.0,
        1 => -(-b * u[i]).exp(),
        _ => -(-d * u[i]).exp(),
    });
    let sol = m.svd(true, true).solve(&DVector::from_column_slice(y), 1e-14).ok()?;
    Some((sol[0], sol[1], sol[2]))
}

fn rmse_of(xs: &[f64], ys: &[f64], f: impl Fn(f64) -> f64) -> f64 {
    (xs.iter().zip(ys).map(|(&x, &y)| (f(x) - y).powi(2)).sum::<f64>() / xs.len() as f64).sqrt()
}

pub fn fit_double_exponential(curve: &MixCurve) -> Result<FitResult> {
    let xs: Vec<f64> = curve.steps.iter().map(|&s| s as f64).collect();
    fit_double_exponential_points(&xs, &curve.mean, 0.02)
}

/// Least-squares fit from 16 deterministic starts (rate pairs on a log
/// grid); the lowest RMSE wins, ties going to the smaller `b`.
pub fn fit_double_exponential_points(xs: &[f64], ys: &[f64], band: f64) -> Result<FitResult> {
    if xs.len() != ys.len() {
        return Err(Error::Invalid("one value per abscissa is required".into()));
    }
    if xs.len() < 10 {
        return Err(Error::TooFew { what: "points", needed: 10, found: xs.len() });
    }
    let x0 = xs.iter().cloned().fold(f64::INFINITY, f64::min);
    let x1 = xs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let scale = if x1 > 0.0 { x1 } else { 1.0 };
    if x0 < 0.0 || !xs.iter().chain(ys).all(|v| v.is_finite()) {
        return Err(Error::Invalid("abscissae must be nonnegative and all values finite".into()));
    }
    let u: Vec<f64> = xs.iter().map(|x| x / scale).collect();
    // Rescaled rates from one e-fold over the whole range to one per
    // sampling interval.
    let hi = (xs.len() as f64).max(2.0);
    let rates: Vec<f64> = (0..8).map(|i| (hi.ln() * i as f64 / 7.0).exp()).collect();
    let lm = LevenbergMarquardt::new().with_ftol(1e-15).with_xtol(1e-15).with_gtol(1e-15).with_patience(400);
    let mut best: Option<FitResult> = None;
    for &fast in &rates[4..] {
        for &slow in &rates[..4] {
            let Some((l, a, c)) = linear_part(&u, ys, fast, slow) else { continue };
            let p = Vector5::new(l, a, fast.ln(), c, slow.ln());
            let (solved, report) = lm.minimize(DoubleExp { u: &u, y: ys, p });
            let q = solved.p;
            if !q.iter().all(|v| v.is_finite()) {
                continue;
            }
            let (mut b, mut d, mut a, mut c) = (q[2].exp() / scale, q[4].exp() / scale, q[1], q[3]);
            if b < d {
                std::mem::swap(&mut b, &mut d);
                std::mem::swap(&mut a, &mut c);
            }
            let mut fit = FitResult { l: q[0], a, b, c, d, rmse: 0.0, converged: report.termination.was_successful(), mixing_time: 0.0 };
            fit.rmse = rmse_of(xs, ys, |x| fit.eval(x));
            if !fit.rmse.is_finite() {
                continue;
            }
            let better = match &best {
                None => true,
                Some(cur) => match fit.rmse.partial_cmp(&cur.rmse) {
                    Some(Ordering::Less) => true,
                    Some(Ordering::Equal) => fit.b < cur.b,
                    _ => false,
                },
            };
            if better {
                best = Some(fit);
            }
        }
    }
    let mut fit = best.ok_or_else(|| Error::Invalid("no start produced a finite fit".into()))?;
    fit.mixing_time = fitted_mixing_time(&fit, band);
    Ok(fit)
}

/// First `x >= 0` where `|a e^{-bx} + c e^{-dx}| <= band |L|`.
fn fitted_mixing_time(f: &FitResult, band: f64) -> f64 {
    let tol = band * f.l.abs();
    let gap = |x: f64| (f.a * (-f.b * x).exp() + f.c * (-f.d * x).exp()).abs();
    if gap(0.0) <= tol {
        return 0.0;
    }
    if tol <= 0.0 {
        return f64::INFINITY;
    }
    // Beyond `end` both terms are below tol / 2.
    let term_end = |m: f64, r: f64| if m.abs() <= tol / 2.0 { 0.0 } else { (2.0 * m.abs() / tol).ln() / r };
    let end = term_end(f.a, f.b).max(term_end(f.c, f.d));
    let n = 10_000;
    let mut prev = 0.0;
    for i in 1..=n {
        let x = end * i as f64 / n as f64;
        if gap(x) <= tol {
            let (mut lo, mut hi) = (prev, x);
            for _ in 0..100 {
                let mid = 0.5 * (lo + hi);
                if gap(mid) <= tol {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            return hi;
        }
        prev = x;
    }
    end
}

/// `(slope, intercept)` of `ln y` against `ln x`.
pub fn fit_loglog_scaling(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(Error::TooFew { what: "points", needed: 2, found: points.len() });
    }
    if let Some(p) = points.iter().find(|(x, y)| !(*x > 0.0 && *y > 0.0)) {
        return Err(Error::OutOfRange { what: "log-log point", value: 0, allowed: format!("positive coordinates, got {p:?}") });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0.ln()).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1.ln()).collect();
    if xs.iter().all(|&x| x == xs[0]) {
        return Err(Error::Invalid("log-log fit needs two distinct abscissae".into()));
    }
    Ok(ols(&xs, &ys))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Prediction {
    Hypercurveball,
    Shuffle,
    Tie,
}

impl Prediction {
    pub fn method(&self) -> Option<Method> {
        match self {
            Prediction::Hypercurveball => Some(Method::Trade),
            Prediction::Shuffle => Some(Method::Shuffle),
            Prediction::Tie => None,
        }
    }
}

impl fmt::Display for Prediction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Prediction::Hypercurveball => "hypercurveball",
            Prediction::Shuffle => "shuffle",
            Prediction::Tie => "tie",
        })
    }
}

/// Compares the expected minimum degree of two distinct nodes with that of
/// two distinct hyperedges (role-averaged when directed), exactly.
pub fn predict_faster(h: &Hypergraph) -> Result<Prediction> {
    for (what, found) in [("nodes", h.node_count()), ("hyperedges", h.edge_count())] {
        if found < 2 {
            return Err(Error::TooFew { what, needed: 2, found });
        }
    }
    let d = degrees(h);
    // Both roles share the pair count, so the role average compares as a
    // sum of numerators over one denominator.
    let side = |seqs: &[Vec<u32>]| -> (u128, u128) {
        let parts: Vec<(u128, u128)> = seqs.iter().map(|s| min_pair_sum(s)).collect();
        (parts.iter().map(|p| p.0).sum(), parts[0].1)
    };
    let (sv, pv) = side(&d.nodes);
    let (se, pe) = side(&d.edges);
    Ok(match (sv * pe).cmp(&(se * pv)) {
        Ordering::Greater => Prediction::Hypercurveball,
        Ordering::Less => Prediction::Shuffle,
        Ordering::Equal => Prediction::Tie,
    })
}

/// Outcome of comparing a trade curve with a shuffle curve.
#[derive(Clone, Debug, PartialEq)]
pub struct Comparison {
    pub trade: MixingEstimate,
    pub shuffle: MixingEstimate,
    /// Method that mixes first, if either does and they differ.
    pub faster: Option<Method>,
    /// Recorded step where the curves are compared: the faster method's
    /// mixing step.
    pub at_step: Option<u64>,
    /// Mean of the faster curve minus mean of the slower at `at_step`.
    pub gap: f64,
    /// Sum of both 95% half-widths at `at_step`.
    pub band: f64,
}

impl Comparison {
    /// The faster curve lies above the slower one with non-overlapping 95%
    /// bands at the faster method's mixing step.
    pub fn separated(&self) -> bool {
        self.faster.is_some() && self.gap > self.band
    }
}

pub fn compare_curves(trade: &MixCurve, shuffle: &MixCurve, opts: &MixingOptions) -> Result<Comparison> {
    if trade.steps != shuffle.steps || trade.method != Method::Trade || shuffle.method != Method::Shuffle {
        return Err(Error::Invalid("curves must be a trade and a shuffle curve on the same steps".into()));
    }
    let t = estimate_mixing_time(trade, opts)?;
    let s = estimate_mixing_time(shuffle, opts)?;
    let idx = |e: &MixingEstimate| match e {
        MixingEstimate::Mixed { index, .. } => Some(*index),
        MixingEstimate::NotMixed { .. } => None,
    };
    let (faster, at) = match (idx(&t), idx(&s)) {
        (Some(a), Some(b)) if a < b => (Some(Method::Trade), Some(a)),
        (Some(a), Some(b)) if b < a => (Some(Method::Shuffle), Some(b)),
        (Some(a), None) => (Some(Method::Trade), Some(a)),
        (None, Some(b)) => (Some(Method::Shuffle), Some(b)),
        _ => (None, None),
    };
    let (gap, band) = match (faster, at) {
        (Some(m), Some(i)) => {
            let (fast, slow) = if m == Method::Trade { (trade, shuffle) } else { (shuffle, trade) };
            (fast.mean[i] - slow.mean[i], fast.band95(i) + slow.band95(i))
        }
        _ => (0.0, 0.0),
    };
    Ok(Comparison { trade: t, shuffle: s, faster, at_step: at.map(|i| trade.steps[i]), gap, band })
}
