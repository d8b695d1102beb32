use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use hypercurveball::chainlab::{
    analyze, enumerate_constrained_partitions, sequential_partition_bias, sweep, Caps, Constraint, Partition,
    SearchBounds, SearchEntry, VERDICT_CSV_HEADER,
};
use hypercurveball::datagen::{format_hypergraph, gen_artificial, read_hypergraph, stats_report, StatsReport, STATS_CSV_HEADER};
use hypercurveball::mixbench::{
    compare_curves, fit_double_exponential_points, fit_loglog_scaling, predict_faster, run_mixing_experiment,
    MixCurve, MixingOptions, FIT_CSV_HEADER, MIX_CURVE_CSV_HEADER,
};
use hypercurveball::{rng_from_seed, Chain, DegreeSequence, Method, Multiset, Rational, SpaceSpec};

use crate::{
    BenchArgs, Cli, CliError, Command, FitArgs, GenArgs, MethodArg, PartitionArgs, SampleArgs, SearchArgs, StatsArgs,
    VerifyArgs,
};

type Result<T> = std::result::Result<T, CliError>;

pub fn run(cli: &Cli) -> Result<()> {
    if cli.jobs == 0 {
        return Err(CliError::Usage("--jobs must be at least 1".into()));
    }
    // A second build only fails if a pool already exists, which is fine.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global();
    let text = match &cli.command {
        Command::Sample(a) => sample(cli, a)?,
        Command::Bench(a) => bench(cli, a)?,
        Command::Verify(a) => return verify(cli, a),
        Command::Search(a) => search(cli, a)?,
        Command::Gen(a) => gen(a)?,
        Command::Stats(a) => stats(cli, a)?,
        Command::Fit(a) => fit(a)?,
        Command::Partitions(a) => partitions(a)?,
    };
    emit(&cli.out, &text)
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn space(directed: bool, flags: &str) -> Result<SpaceSpec> {
    SpaceSpec::parse(directed, flags).map_err(|e| CliError::Usage(e.to_string()))
}

fn methods(m: MethodArg) -> Vec<Method> {
    match m {
        MethodArg::Trade => vec![Method::Trade],
        MethodArg::Shuffle => vec![Method::Shuffle],
        MethodArg::Both => vec![Method::Trade, Method::Shuffle],
    }
}

fn single_method(m: MethodArg) -> Result<Method> {
    match m {
        MethodArg::Trade => Ok(Method::Trade),
        MethodArg::Shuffle => Ok(Method::Shuffle),
        MethodArg::Both => Err(CliError::Usage("this command runs a single method".into())),
    }
}

fn csv(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{header}\n");
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    out
}

/// Parses "2,2" (undirected) or "2:1,0:1" (directed) into per-role lists.
pub fn parse_degrees(text: &str, directed: bool) -> Result<Vec<Vec<u32>>> {
    let roles = if directed { 2 } else { 1 };
    let mut out = vec![Vec::new(); roles];
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let parts: Vec<&str> = item.split(':').collect();
        if parts.len() != roles {
            let want = if directed { "t:h" } else { "a single integer" };
            return Err(CliError::Usage(format!("degree \"{item}\" must be {want}")));
        }
        for (r, p) in parts.iter().enumerate() {
            out[r].push(p.parse().map_err(|_| CliError::Usage(format!("bad degree \"{item}\"")))?);
        }
    }
    if out[0].is_empty() {
        return Err(CliError::Usage("empty degree list".into()));
    }
    Ok(out)
}

fn sample(cli: &Cli, a: &SampleArgs) -> Result<String> {
    let h = read_hypergraph(&a.input, cli.directed)?;
    let spec = space(cli.directed, &a.space)?;
    let mut chain = Chain::new(h, spec, single_method(a.method)?)?;
    let mut rng = rng_from_seed(cli.seed);
    for _ in 0..a.steps {
        chain.step(&mut rng)?;
    }
    eprintln!("# {} steps, {} accepted", chain.steps(), chain.accepted());
    Ok(format_hypergraph(chain.state()))
}

fn bench(cli: &Cli, a: &BenchArgs) -> Result<String> {
    let (h, default_name) = match (&a.input, a.artificial) {
        (Some(p), _) => (read_hypergraph(p, cli.directed)?, stem(p)),
        (None, Some(k)) => (gen_artificial(k)?, format!("artificial_{k}")),
        (None, None) => return Err(CliError::Usage("give --in or --artificial".into())),
    };
    let name = a.name.clone().unwrap_or(default_name);
    let spec = space(h.is_directed(), &a.space)?;
    let curves = methods(a.method)
        .into_iter()
        .map(|m| run_mixing_experiment(&h, &spec, m, a.steps, a.runs, a.every, cli.seed, &name))
        .collect::<std::result::Result<Vec<MixCurve>, _>>()?;
    if let [t, s] = &curves[..] {
        let opts = MixingOptions { tail_frac: a.tail_frac, band: a.band, ..MixingOptions::default() };
        let c = compare_curves(t, s, &opts)?;
        let faster = c.faster.map(|m| m.to_string()).unwrap_or_else(|| "undecided".into());
        eprintln!(
            "# mixing: trade {:?}, shuffle {:?}, faster {faster}, separated {}, predicted {}",
            c.trade.step(),
            c.shuffle.step(),
            c.separated(),
            predict_faster(&h)?
        );
    }
    Ok(csv(MIX_CURVE_CSV_HEADER, curves.iter().flat_map(|c| c.csv_rows())))
}

fn stem(p: &Path) -> String {
    p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| "input".into())
}

fn verify(cli: &Cli, a: &VerifyArgs) -> Result<()> {
    let nodes = parse_degrees(&a.nodes, cli.directed)?;
    let edges = parse_degrees(&a.edges, cli.directed)?;
    let d = DegreeSequence { directed: cli.directed, nodes, edges };
    let spec = space(cli.directed, &a.space)?;
    let caps = Caps::default();
    let mut entries = Vec::new();
    for method in methods(a.method) {
        let verdict = if a.exact {
            analyze::<Rational>(&d, &spec, method, &caps)?.verdict
        } else {
            analyze::<f64>(&d, &spec, method, &caps)?.verdict
        };
        entries.push(SearchEntry { degrees: d.clone(), spec, method, verdict });
    }
    emit(&cli.out, &csv(VERDICT_CSV_HEADER, entries.iter().map(SearchEntry::csv_row)))?;
    if a.expect_uniform {
        if let Some(e) = entries.iter().find(|e| !e.verdict.is_uniform()) {
            return Err(CliError::Verification(format!("{} chain is {}", e.method, e.verdict.status)));
        }
    }
    Ok(())
}

fn search(cli: &Cli, a: &SearchArgs) -> Result<String> {
    let spaces = if a.space.is_empty() {
        SpaceSpec::all(cli.directed)
    } else {
        a.space.iter().map(|f| space(cli.directed, f)).collect::<Result<Vec<_>>>()?
    };
    let bounds =
        SearchBounds { directed: cli.directed, max_nodes: a.max_nodes, max_edges: a.max_edges, max_degree: a.max_degree };
    let caps = Caps { max_stubs: a.max_stubs, ..Caps::default() };
    let entries = sweep(&bounds, &spaces, &methods(a.method), &caps)?;
    let biased = entries.iter().filter(|e| !e.verdict.is_uniform()).count();
    eprintln!("# {} verdicts, {biased} not uniform", entries.len());
    Ok(csv(VERDICT_CSV_HEADER, entries.iter().filter(|e| a.all || !e.verdict.is_uniform()).map(SearchEntry::csv_row)))
}

fn gen(a: &GenArgs) -> Result<String> {
    Ok(format_hypergraph(&gen_artificial(a.artificial)?))
}

fn stats(cli: &Cli, a: &StatsArgs) -> Result<String> {
    let h = read_hypergraph(&a.input, cli.directed)?;
    let r: StatsReport<f64> = stats_report(&h)?;
    let name = a.name.clone().unwrap_or_else(|| stem(&a.input));
    let t = &r.types;
    eprintln!(
        "# forbidden types present: self-loops {}, degenerate {}, multi {}",
        t.has_self_loops(),
        t.has_degenerate(),
        t.has_multi()
    );
    Ok(csv(STATS_CSV_HEADER, r.csv_rows(&name)))
}

fn data_err(path: &Path, line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Data(format!("{}:{line}: {msg}", path.display()))
}

fn fit(a: &FitArgs) -> Result<String> {
    if let Some(p) = &a.scaling {
        let text = std::fs::read_to_string(p)?;
        let mut pts = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let cells: Vec<&str> = line.split(',').map(str::trim).collect();
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            match (cells.first().map(|c| c.parse::<f64>()), cells.get(1).map(|c| c.parse::<f64>())) {
                (Some(Ok(x)), Some(Ok(y))) => pts.push((x, y)),
                _ if i == 0 => {} // header
                _ => return Err(data_err(p, i + 1, "expected x,y")),
            }
        }
        let (slope, intercept) = fit_loglog_scaling(&pts)?;
        return Ok(format!("slope,intercept\n{slope},{intercept}\n"));
    }
    let p = a.curve.as_ref().expect("clap requires one source");
    let text = std::fs::read_to_string(p)?;
    let mut lines = text.lines().enumerate();
    let header: Vec<&str> = lines.next().map(|(_, h)| h.split(',').collect()).unwrap_or_default();
    let col = |name: &str| header.iter().position(|h| h.trim() == name).ok_or_else(|| data_err(p, 1, format!("missing column {name}")));
    let (cs, cm, cmeth, cdata) = (col("step")?, col("mean")?, col("method")?, col("dataset")?);
    let mut groups: BTreeMap<(String, String), (Vec<f64>, Vec<f64>)> = BTreeMap::new();
    for (i, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').collect();
        let get = |c: usize| cells.get(c).map(|s| s.trim()).ok_or_else(|| data_err(p, i + 1, "short row"));
        let x: f64 = get(cs)?.parse().map_err(|e| data_err(p, i + 1, e))?;
        let y: f64 = get(cm)?.parse().map_err(|e| data_err(p, i + 1, e))?;
        let g = groups.entry((get(cdata)?.to_string(), get(cmeth)?.to_string())).or_default();
        g.0.push(x);
        g.1.push(y);
    }
    let mut out = format!("{FIT_CSV_HEADER}\n");
    for ((dataset, method), (xs, ys)) in groups {
        let f = fit_double_exponential_points(&xs, &ys, a.band)?;
        let last = xs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let _ = writeln!(out, "{}", f.csv_row(&dataset, &method, f.mixing_time > last));
    }
    Ok(out)
}

fn partitions(a: &PartitionArgs) -> Result<String> {
    let mut tokens: Vec<String> = Vec::new();
    let mut combined: Vec<Multiset<u32>> = Vec::new();
    for role in a.combined.split('/') {
        let mut m = Multiset::new();
        for t in role.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i = match tokens.iter().position(|x| x == t) {
                Some(i) => i,
                None => {
                    tokens.push(t.to_string());
                    tokens.len() - 1
                }
            };
            m.insert(i as u32, 1);
        }
        combined.push(m);
    }
    let k: Vec<u32> = a
        .k
        .split('/')
        .map(|x| x.trim().parse().map_err(|_| CliError::Usage(format!("bad split size \"{x}\""))))
        .collect::<Result<_>>()?;
    let lookup = |t: &str| -> Result<u32> {
        tokens
            .iter()
            .position(|x| x == t.trim())
            .map(|i| i as u32)
            .ok_or_else(|| CliError::Usage(format!("token \"{t}\" is not in the combined multiset")))
    };
    let mut constraints = Vec::new();
    for pair in &a.differ {
        let (x, y) = pair.split_once(':').ok_or_else(|| CliError::Usage(format!("--differ wants x:y, got \"{pair}\"")))?;
        constraints.push(Constraint::Differ(lookup(x)?, lookup(y)?));
    }
    for t in &a.straddle {
        constraints.push(Constraint::Straddle(lookup(t)?));
    }
    let order: Vec<u32> = a.order.iter().map(|t| lookup(t)).collect::<Result<_>>()?;
    let show = |p: &[Multiset<u32>]| -> String {
        p.iter()
            .map(|m| m.expand().iter().map(|&i| tokens[i as usize].as_str()).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join(" / ")
    };
    let parts = enumerate_constrained_partitions(&combined, &k, &constraints)?;
    let probs: Option<Vec<(Partition<u32>, Rational)>> = if order.is_empty() {
        None
    } else {
        Some(sequential_partition_bias(&combined, &k, &constraints, &order)?)
    };
    let header = if probs.is_some() { "first,second,stub_weight,probability" } else { "first,second,stub_weight" };
    let rows = parts.iter().map(|(p, w)| {
        let mut row = format!("{},{},{w}", show(&p.first), show(&p.second));
        if let Some(ps) = &probs {
            let pr = ps.iter().find(|(q, _)| q == p).map(|x| x.1.to_string()).unwrap_or_else(|| "0".into());
            let _ = write!(row, ",{pr}");
        }
        row
    });
    Ok(csv(header, rows))
}
