//! Command-line front-end: loads game files, runs one analysis, prints a report.

pub mod file;
pub mod report;

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hiders::analytics::{self, EqualAlphaCase};
use hiders::detection;
use hiders::equilibria::{self, is_k_strong, is_pane};
use hiders::rational::parse_rational;
use hiders::{lattice, oracle, Network, Rational};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::file::{GameFile, GraphFile, Instance};
use crate::report::{edges, ext, nodes, rat, NetworkReport, VerdictReport};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("{0}")]
    Ids(String),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Model(#[from] hiders::Error),
}

impl CliError {
    /// Process exit status for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Model(hiders::Error::BudgetExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "hiders", version, about = "Stable networks of the hiders' game")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Game file (TOML).
    #[arg(long, global = true)]
    pub game: Option<PathBuf>,
    /// Graph file; repeat for join and meet.
    #[arg(long, global = true)]
    pub graph: Vec<PathBuf>,
    /// Coalition size bound.
    #[arg(long, global = true, default_value_t = 1)]
    pub k: usize,
    /// Exponent of the natural-graph prior, strictly between 2 and 3.
    #[arg(long, global = true)]
    pub beta: Option<String>,
    /// Edge edits tolerated by the detector.
    #[arg(long, global = true, default_value_t = 0)]
    pub slack: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Check k-strong pairwise stability of a network.
    Verify,
    /// Least stable network containing the given one (or the original graph).
    Least,
    /// Greatest stable network contained in the given one (or the complete graph).
    Greatest,
    /// Least stable network containing two stable networks (pass --graph twice).
    Join,
    /// Greatest stable network inside two stable networks (pass --graph twice).
    Meet,
    /// List every k-strong stable network with its order structure.
    Enumerate,
    /// Closed forms and structural characterisations that apply to the game.
    Characterize,
    /// Welfare optimum, equilibrium welfare and the prices of anarchy and stability.
    Efficiency,
    /// Additive gap bound, with the exhaustive gap when affordable.
    Bound,
    /// Test a graph for the one-clique-plus-isolated signature.
    Detect,
    /// Cross-check every fast routine against exhaustive search.
    OracleCheck,
}

/// A finished command: exit status and rendered report.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: Value,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

fn load(cli: &Cli) -> Result<Instance, CliError> {
    let path = cli.game.as_deref().ok_or_else(|| CliError::Usage("--game is required".into()))?;
    GameFile::parse(&read(path)?)?.instance()
}

fn graphs(cli: &Cli, inst: &Instance) -> Result<Vec<Network>, CliError> {
    cli.graph.iter().map(|p| GraphFile::parse(&read(p)?)?.network(inst)).collect()
}

/// The `--graph` network, else the game file's own.
fn subject(cli: &Cli, inst: &Instance) -> Result<Network, CliError> {
    match graphs(cli, inst)?.as_slice() {
        [] => Ok(inst.network.clone()),
        [one] => Ok(one.clone()),
        _ => Err(CliError::Usage("expected at most one --graph".into())),
    }
}

fn to_value<T: Serialize>(v: T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn with_command(name: &str, body: Value) -> Value {
    let mut v = json!({ "command": name });
    if let (Value::Object(dst), Value::Object(src)) = (&mut v, body) {
        dst.extend(src);
    }
    v
}

fn verdict(net: &Network, inst: &Instance, k: usize) -> Result<Value, CliError> {
    let v = if k == 1 { is_pane(net, &inst.game)? } else { is_k_strong(net, &inst.game, k)? };
    Ok(json!({
        "verdict": to_value(VerdictReport::from(&v)),
        "network": to_value(NetworkReport::new(net, &inst.game)),
    }))
}

fn characterize(cli: &Cli, inst: &Instance) -> Result<Value, CliError> {
    let (game, m, e0) = (&inst.game, inst.nonplayers, &inst.original);
    let net = subject(cli, inst)?;
    let g = analytics::greatest_closed_form(game, m, e0)?;
    let l = analytics::least_closed_form(game, m, e0)?;
    let closed = |c: &analytics::ClosedFormResult| {
        json!({
            "threshold_index": c.threshold_index,
            "clique": nodes(c.clique_members.iter().copied()),
            "edges": edges(c.predicted.edges()),
            "welfare": rat(&c.welfare),
        })
    };
    let equal = match analytics::check_equal_alpha(&net, game) {
        Ok((stable, s)) => json!({
            "stable": stable,
            "case": match s.case {
                EqualAlphaCase::Low => "low",
                EqualAlphaCase::Middle => "middle",
                EqualAlphaCase::High => "high",
            },
            "component_d": nodes(s.component_d.iter().copied()),
            "boundary_counts": s.boundary_counts,
            "d0": s.d0,
            "component_c": nodes(s.component_c.iter().copied()),
            "literal_conditions": s.literal_conditions,
            "players_closed": s.players_closed,
            "nonplayers_closed": s.nonplayers_closed,
        }),
        Err(hiders::Error::AlphaPattern(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let one = match analytics::check_one_distinct(&net, game, cli.k) {
        Ok(stable) => json!({ "stable": stable, "strength": cli.k }),
        Err(hiders::Error::AlphaPattern(_)) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "greatest": closed(&g),
        "least": closed(&l),
        "large_m": analytics::large_m_check(game, m),
        "equal_alpha": equal,
        "one_distinct": one,
    }))
}

fn efficiency(inst: &Instance, k: usize) -> Result<Value, CliError> {
    let (game, m) = (&inst.game, inst.nonplayers);
    let r = analytics::efficiency(game, m, &inst.original, k)?;
    let mut v = json!({
        "strength": r.strength,
        "max_sw": rat(&r.max_sw),
        "max_witness": r.max_witness.as_ref().map(|w| edges(w.edges())),
        "min_eq_sw": rat(&r.min_eq_sw),
        "max_eq_sw": rat(&r.max_eq_sw),
        "poa": ext(&r.poa),
        "pos": ext(&r.pos),
        "additive_bound": rat(&r.additive_bound),
    });
    if inst.original.is_empty() {
        if let Ok(e) = analytics::equal_alpha_efficiency(game, m) {
            v["equal_alpha_formula"] = json!({
                "max_sw": rat(&e.max_sw),
                "poa": ext(&e.poa),
                "pos": ext(&e.pos),
            });
        }
        if let Ok(e) = analytics::one_distinct_efficiency(game, m) {
            v["one_distinct_formula"] = json!({
                "max_sw": rat(&e.max_sw),
                "eq_sw_low": rat(&e.eq_sw_low),
                "eq_sw_high": rat(&e.eq_sw_high),
                "poa": ext(&e.poa),
                "pos": ext(&e.pos),
                "strong_poa": ext(&e.strong_poa),
                "strong_pos": ext(&e.strong_pos),
            });
        }
    }
    Ok(v)
}

fn bound(inst: &Instance) -> Result<Value, CliError> {
    let b = analytics::additive_bound(&inst.game, inst.nonplayers);
    let gap = match oracle::enumerate_feasible_graphs(&inst.game, inst.nonplayers, &inst.original) {
        Ok(set) => {
            let max = set.graphs.iter().map(|g| g.utilities.welfare).max().expect("nonempty");
            let worst = set.graphs.iter().filter(|g| g.nash).map(|g| g.utilities.welfare).min().expect("nonempty");
            Some(max - worst)
        }
        Err(hiders::Error::BudgetExceeded { .. }) => None,
        Err(e) => return Err(e.into()),
    };
    Ok(json!({
        "bound": rat(&b),
        "gap": gap.as_ref().map(rat),
        "holds": gap.map(|g| g <= b),
    }))
}

fn detect(cli: &Cli, inst: &Instance) -> Result<Value, CliError> {
    let beta: Rational = match &cli.beta {
        Some(t) => parse_rational(t).map_err(|e| CliError::Usage(format!("--beta: {e}")))?,
        None => detection::default_beta(),
    };
    let net = subject(cli, inst)?;
    let r = detection::detect_infiltration(net.edges(), beta, cli.slack)?;
    Ok(json!({
        "beta": rat(&beta),
        "matches_signature": r.matches_signature,
        "clique": nodes(r.clique.iter().copied()),
        "isolated": nodes(r.isolated.iter().copied()),
        "other": nodes(r.other.iter().copied()),
        "prior_probability": r.prior_probability,
        "suspected_players": nodes(r.suspected_players.iter().copied()),
        "tolerance_used": r.tolerance_used,
    }))
}

fn oracle_check(inst: &Instance) -> Result<(i32, Value), CliError> {
    let r = oracle::cross_validate(&inst.game, inst.nonplayers, &inst.original)?;
    let code = if r.disagreements.is_empty() { 0 } else { 1 };
    let v = json!({
        "graphs": r.graphs,
        "stable_counts": r.stable_counts,
        "disagreements": r.disagreements.iter().map(|d| json!({
            "check": d.check,
            "graph": edges(&d.graph),
            "detail": d.detail,
        })).collect::<Vec<_>>(),
    });
    Ok((code, v))
}

/// Runs the parsed command.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let inst = load(cli)?;
    let game = &inst.game;
    let k = cli.k;
    equilibria::check_strength(k, game.players())?;
    let mut code = 0;
    let (name, body) = match cli.command {
        Command::Verify => ("verify", verdict(&subject(cli, &inst)?, &inst, k)?),
        Command::Least => {
            let net = match cli.graph.is_empty() {
                true if k == 1 => lattice::least_pans(game, inst.nonplayers, &inst.original)?,
                true => equilibria::min_including_k_pans(&Network::bare(game.players(), inst.nonplayers, &inst.original)?, game, k)?,
                false if k == 1 => equilibria::min_including_pans(&subject(cli, &inst)?, game)?,
                false => equilibria::min_including_k_pans(&subject(cli, &inst)?, game, k)?,
            };
            ("least", to_value(NetworkReport::new(&net, game)))
        }
        Command::Greatest => {
            let net = match cli.graph.is_empty() {
                true => lattice::greatest_pans(game, inst.nonplayers, &inst.original)?,
                false => equilibria::max_included_pans(&subject(cli, &inst)?, game)?,
            };
            ("greatest", to_value(NetworkReport::new(&net, game)))
        }
        Command::Join | Command::Meet => {
            let gs = graphs(cli, &inst)?;
            let [s, t] = gs.as_slice() else {
                return Err(CliError::Usage("join and meet take exactly two --graph files".into()));
            };
            let (name, net) = match cli.command {
                Command::Join => ("join", lattice::join_pans(game, s, t)?),
                _ => ("meet", lattice::meet_pans(game, s, t)?),
            };
            (name, to_value(NetworkReport::new(&net, game)))
        }
        Command::Enumerate => {
            let s = lattice::enumerate_lattice(game, inst.nonplayers, &inst.original, k)?;
            let body = json!({
                "strength": s.strength,
                "count": s.elements.len(),
                "elements": s.elements.iter().map(|e| edges(e.edges())).collect::<Vec<_>>(),
                "least": edges(s.least.edges()),
                "greatest": edges(s.greatest.edges()),
                "hasse": s.hasse.iter().map(|&(a, b)| [a + 1, b + 1]).collect::<Vec<_>>(),
                "checks": {
                    "joins_exist": s.checks.joins_exist,
                    "meets_exist": s.checks.meets_exist,
                    "absorption": s.checks.absorption,
                    "join_algorithm": s.checks.join_algorithm,
                    "meet_algorithm": s.checks.meet_algorithm,
                    "nested": s.checks.nested,
                },
            });
            ("enumerate", body)
        }
        Command::Characterize => ("characterize", characterize(cli, &inst)?),
        Command::Efficiency => ("efficiency", efficiency(&inst, k)?),
        Command::Bound => ("bound", bound(&inst)?),
        Command::Detect => ("detect", detect(cli, &inst)?),
        Command::OracleCheck => {
            let (c, body) = oracle_check(&inst)?;
            code = c;
            ("oracle-check", body)
        }
    };
    Ok(Outcome { code, report: with_command(name, body) })
}

/// Renders a report in the requested format.
pub fn render(report: &Value, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("json") + "\n",
        Format::Text => report::to_text(report),
    }
}

/// Parses `argv`, runs the command and writes the report. Returns the exit status.
pub fn run_command<I, T>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => return (if e.use_stderr() { 2 } else { 0 }, e.to_string()),
    };
    match execute(&cli) {
        Ok(out) => {
            let text = render(&out.report, cli.format);
            match &cli.out {
                Some(path) => match std::fs::write(path, &text) {
                    Ok(()) => (out.code, String::new()),
                    Err(e) => (2, format!("cannot write {}: {e}\n", path.display())),
                },
                None => (out.code, text),
            }
        }
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}
