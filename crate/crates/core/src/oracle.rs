//! Brute-force ground truth: every feasible network, every coalition, every reachable move.
//!
//! A coalition `P` may, from the minimal profile of a network:
//! - add or drop any edge inside `P`, and drop (never add) edges from `P` to outside players;
//! - add or drop any edge between a member and a non-player;
//! - keep, drop or create any non-player pair that is not original and not sustained by an
//!   outsider, provided some member is adjacent to both ends afterwards.
//!
//! Everything else stays fixed. Utilities are recomputed from scratch for each candidate.

use rayon::prelude::*;

use crate::equilibria::{
    self, max_included_pans, min_including_k_pans, min_including_pans, Condition, DeviationMove,
    StabilityClass, StabilityVerdict,
};
use crate::error::{Error, Result};
use crate::graph::{bits, low_bits, Edge, EdgeSet};
use crate::model::{utilities, utility_of, GameSpec, Network, UtilityVector};
use crate::rational::Rational;

/// Default cap on the number of variable edges.
pub const DEFAULT_BUDGET: usize = 18;
/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "HIDERS_ORACLE_BUDGET";

pub fn budget() -> usize {
    std::env::var(BUDGET_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// Candidate pairs not fixed by the original graph.
pub fn variable_edges(players: usize, nonplayers: usize, original: &EdgeSet) -> usize {
    let n = players + nonplayers;
    n * (n - 1) / 2 - original.len()
}

pub fn check_budget(players: usize, nonplayers: usize, original: &EdgeSet) -> Result<()> {
    let edges = variable_edges(players, nonplayers, original);
    let budget = budget();
    if edges > budget {
        return Err(Error::BudgetExceeded { edges, budget });
    }
    Ok(())
}

/// One feasible network with its utilities and stability flags.
#[derive(Debug, Clone)]
pub struct FeasibleGraph {
    pub network: Network,
    pub utilities: UtilityVector,
    /// Nash stable (unilateral moves only).
    pub nash: bool,
    /// `strong[k - 1]` is k-strong pairwise stability.
    pub strong: Vec<bool>,
}

impl FeasibleGraph {
    pub fn is_strong(&self, k: usize) -> bool {
        self.strong[k - 1]
    }
}

#[derive(Debug, Clone)]
pub struct FeasibleGraphSet {
    pub game: GameSpec,
    pub nonplayers: usize,
    pub original: EdgeSet,
    pub graphs: Vec<FeasibleGraph>,
}

impl FeasibleGraphSet {
    pub fn players(&self) -> usize {
        self.game.players()
    }

    /// The k-strong pairwise stable networks in enumeration order.
    pub fn stable(&self, k: usize) -> Vec<&FeasibleGraph> {
        self.graphs.iter().filter(|g| g.is_strong(k)).collect()
    }

    pub fn find(&self, edges: &EdgeSet) -> Option<&FeasibleGraph> {
        self.graphs.iter().find(|g| g.network.edges() == edges)
    }
}

/// All networks whose added non-player edges have a common player neighbour, canonical sustainers.
pub fn feasible_networks(players: usize, nonplayers: usize, original: &EdgeSet) -> Result<Vec<Network>> {
    check_budget(players, nonplayers, original)?;
    let nodes = players + nonplayers;
    let cands: Vec<Edge> = EdgeSet::complete(nodes).difference(original).edges().collect();
    let pm = low_bits(players);
    let masks: Vec<u64> = (0..1u64 << cands.len()).collect();
    masks
        .par_iter()
        .filter_map(|&mask| {
            let mut edges = original.clone();
            for i in bits(mask) {
                edges.insert(cands[i]);
            }
            let sustained = bits(mask)
                .map(|i| cands[i])
                .filter(|e| e.lo() >= players)
                .all(|e| edges.neighbors(e.lo()) & edges.neighbors(e.hi()) & pm != 0);
            sustained.then(|| Network::from_edge_sets(players, nonplayers, original, &edges))
        })
        .collect()
}

/// Every feasible network with stability flags for k = 1..=n.
pub fn enumerate_feasible_graphs(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<FeasibleGraphSet> {
    let players = game.players();
    let nets = feasible_networks(players, nonplayers, original)?;
    let graphs = nets
        .into_par_iter()
        .map(|network| {
            let nash = unilateral_move(&network, game).is_none();
            let strong = (1..=players).map(|k| search(&network, game, k).is_none()).collect();
            let utilities = network.utility(game);
            FeasibleGraph { network, utilities, nash, strong }
        })
        .collect();
    Ok(FeasibleGraphSet { game: game.clone(), nonplayers, original: original.clone(), graphs })
}

/// Literal k-strong pairwise stability check.
pub fn exhaustive_stability(net: &Network, game: &GameSpec, k: usize) -> Result<StabilityVerdict> {
    equilibria::check_strength(k, net.players())?;
    check_budget(net.players(), net.nonplayers(), net.original())?;
    let class = if k == 1 { StabilityClass::Pane } else { StabilityClass::KPane };
    match search(net, game, k) {
        None => Ok(StabilityVerdict::stable(class, k)),
        Some((coalition, after)) => {
            let witness = DeviationMove::replay(net, game, coalition, &after)?;
            Ok(StabilityVerdict::unstable(class, k, Condition::Exhaustive, witness))
        }
    }
}

/// Literal Nash stability check (no pairwise requirement).
pub fn exhaustive_nash(net: &Network, game: &GameSpec) -> Result<StabilityVerdict> {
    check_budget(net.players(), net.nonplayers(), net.original())?;
    match unilateral_move(net, game) {
        None => Ok(StabilityVerdict::stable(StabilityClass::Ne, 1)),
        Some((coalition, after)) => {
            let witness = DeviationMove::replay(net, game, coalition, &after)?;
            Ok(StabilityVerdict::unstable(StabilityClass::Ne, 1, Condition::Exhaustive, witness))
        }
    }
}

fn unilateral_move(net: &Network, game: &GameSpec) -> Option<(Vec<usize>, EdgeSet)> {
    (0..net.players()).find_map(|i| coalition_move(net, game, 1 << i))
}

fn search(net: &Network, game: &GameSpec, k: usize) -> Option<(Vec<usize>, EdgeSet)> {
    let n = net.players();
    for size in 1..=k {
        let mut coalitions: Vec<u64> = (1..1u64 << n).filter(|m| m.count_ones() as usize == size).collect();
        coalitions.sort_by_key(|&m| bits(m).collect::<Vec<_>>());
        if let Some(found) = coalitions.into_iter().find_map(|pm| coalition_move(net, game, pm)) {
            return Some(found);
        }
    }
    if k == 1 {
        return pairwise_violation(net, game);
    }
    None
}

/// Every graph the coalition `pm` can reach; returns the first improving one.
fn coalition_move(net: &Network, game: &GameSpec, pm: u64) -> Option<(Vec<usize>, EdgeSet)> {
    let edges = net.edges();
    let member = |v: usize| pm >> v & 1 == 1;
    let mut toggles = Vec::new();
    let mut guarded = Vec::new();
    for e in EdgeSet::complete(net.node_count()).edges() {
        let (a, b) = e.ends();
        let free = match (net.is_player(a), net.is_player(b)) {
            (true, true) => member(a) && member(b) || (member(a) || member(b)) && edges.contains(e),
            (true, false) => member(a),
            (false, false) => {
                let outsider_held = net.sustainer(e).is_some_and(|k| !member(k));
                let free = !net.original().contains(e) && !outsider_held;
                if free {
                    guarded.push(toggles.len());
                }
                free
            }
            (false, true) => unreachable!("edges are ordered"),
        };
        if free {
            toggles.push(e);
        }
    }
    let mut base = edges.clone();
    for &e in &toggles {
        base.remove(e);
    }
    let members: Vec<usize> = bits(pm).collect();
    let before: Vec<Rational> = members.iter().map(|&i| utility_of(edges, i, game.alpha(i))).collect();
    for mask in 0..1u64 << toggles.len() {
        let mut after = base.clone();
        for t in bits(mask) {
            after.insert(toggles[t]);
        }
        let valid = guarded
            .iter()
            .filter(|&&t| mask >> t & 1 == 1)
            .all(|&t| after.neighbors(toggles[t].lo()) & after.neighbors(toggles[t].hi()) & pm != 0);
        if !valid || &after == edges {
            continue;
        }
        let mut strict = false;
        let mut weak = true;
        for (x, &i) in members.iter().enumerate() {
            let d = utility_of(&after, i, game.alpha(i)) - before[x];
            if d < Rational::from_integer(0) {
                weak = false;
                break;
            }
            strict |= d > Rational::from_integer(0);
        }
        if weak && strict {
            return Some((members, after));
        }
    }
    None
}

fn pairwise_violation(net: &Network, game: &GameSpec) -> Option<(Vec<usize>, EdgeSet)> {
    let edges = net.edges();
    let zero = Rational::from_integer(0);
    for i in 0..net.players() {
        for j in i + 1..net.players() {
            if edges.has(i, j) {
                continue;
            }
            let mut after = edges.clone();
            after.insert(Edge::new(i, j));
            let di = utility_of(&after, i, game.alpha(i)) - utility_of(edges, i, game.alpha(i));
            let dj = utility_of(&after, j, game.alpha(j)) - utility_of(edges, j, game.alpha(j));
            if di > zero && dj >= zero || dj > zero && di >= zero {
                return Some((vec![i, j], after));
            }
        }
    }
    None
}

/// Exact maximum welfare over feasible networks, with the first maximiser found.
pub fn max_social_welfare(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<(Rational, Network)> {
    let nets = feasible_networks(game.players(), nonplayers, original)?;
    let mut best: Option<(Rational, Network)> = None;
    for net in nets {
        let sw = utilities(net.edges(), game).welfare;
        if best.as_ref().map_or(true, |(b, _)| sw > *b) {
            best = Some((sw, net));
        }
    }
    Ok(best.expect("the original graph is always feasible"))
}

/// The element of `set` contained in every other element.
pub fn least_element<'a>(set: &[&'a EdgeSet]) -> Option<&'a EdgeSet> {
    set.iter().copied().find(|x| set.iter().all(|y| x.is_subset(y)))
}

/// The element of `set` containing every other element.
pub fn greatest_element<'a>(set: &[&'a EdgeSet]) -> Option<&'a EdgeSet> {
    set.iter().copied().find(|x| set.iter().all(|y| y.is_subset(x)))
}

/// A mismatch between a fast-path result and the oracle.
#[derive(Debug, Clone)]
pub struct Disagreement {
    pub check: &'static str,
    pub graph: EdgeSet,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CrossReport {
    pub graphs: usize,
    /// Number of k-strong stable networks, index k-1.
    pub stable_counts: Vec<usize>,
    pub disagreements: Vec<Disagreement>,
}

/// Compares the fast verifiers and all constructive algorithms with the oracle.
pub fn cross_validate(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<CrossReport> {
    let set = enumerate_feasible_graphs(game, nonplayers, original)?;
    let n = game.players();
    let mut out = Vec::new();
    let mut note = |check: &'static str, graph: &EdgeSet, detail: String| {
        out.push(Disagreement { check, graph: graph.clone(), detail });
    };

    for g in &set.graphs {
        for k in 1..=n {
            let fast = equilibria::is_k_strong(&g.network, game, k)?.stable;
            if fast != g.is_strong(k) {
                note("verifier", g.network.edges(), format!("k={k}: fast={fast} oracle={}", g.is_strong(k)));
            }
        }
    }

    let bare = Network::bare(n, nonplayers, original)?;
    let full = Network::complete(n, nonplayers, original)?;
    let greatest = max_included_pans(&full, game)?;
    let stable_sets: Vec<Vec<&EdgeSet>> =
        (1..=n).map(|k| set.stable(k).into_iter().map(|g| g.network.edges()).collect()).collect();
    for k in 1..=n {
        let sk = &stable_sets[k - 1];
        match least_element(sk) {
            None => note("least", bare.edges(), format!("k={k}: no least element")),
            Some(least) => {
                let alg = min_including_k_pans(&bare, game, k)?;
                if alg.edges() != least {
                    note("least", alg.edges(), format!("k={k}: expected {least:?}"));
                }
            }
        }
        match greatest_element(sk) {
            None => note("greatest", full.edges(), format!("k={k}: no greatest element")),
            Some(top) if top != greatest.edges() => {
                note("greatest", greatest.edges(), format!("k={k}: expected {top:?}"))
            }
            Some(_) => {}
        }
    }

    let s1 = &stable_sets[0];
    for g in &set.graphs {
        let e = g.network.edges();
        if let Ok(alg) = min_including_pans(&g.network, game) {
            let above: Vec<&EdgeSet> = s1.iter().copied().filter(|x| e.is_subset(x)).collect();
            match least_element(&above) {
                Some(want) if want == alg.edges() => {}
                other => note("min-including", e, format!("got {:?}, expected {other:?}", alg.edges())),
            }
        }
        if let Ok(alg) = max_included_pans(&g.network, game) {
            let below: Vec<&EdgeSet> = s1.iter().copied().filter(|x| x.is_subset(e)).collect();
            match greatest_element(&below) {
                Some(want) if want == alg.edges() => {}
                other => note("max-included", e, format!("got {:?}, expected {other:?}", alg.edges())),
            }
        }
    }

    for k in 2..=n {
        let sk = &stable_sets[k - 1];
        for x in s1 {
            let net = set.find(x).expect("listed").network.clone();
            let alg = min_including_k_pans(&net, game, k)?;
            let above: Vec<&EdgeSet> = sk.iter().copied().filter(|y| x.is_subset(y)).collect();
            match least_element(&above) {
                Some(want) if want == alg.edges() => {}
                other => note("min-including-k", x, format!("k={k}: got {:?}, expected {other:?}", alg.edges())),
            }
        }
    }

    for k in 1..=n {
        let sk = &stable_sets[k - 1];
        for (a, x) in sk.iter().enumerate() {
            for y in &sk[a..] {
                let nx = set.find(x).expect("listed").network.clone();
                let ny = set.find(y).expect("listed").network.clone();
                let upper: Vec<&EdgeSet> = sk.iter().copied().filter(|z| x.is_subset(z) && y.is_subset(z)).collect();
                let join = crate::lattice::join_pans(game, &nx, &ny)?;
                match least_element(&upper) {
                    Some(want) if want == join.edges() => {}
                    other => note("join", x, format!("k={k} with {y:?}: got {:?}, expected {other:?}", join.edges())),
                }
                let lower: Vec<&EdgeSet> = sk.iter().copied().filter(|z| z.is_subset(x) && z.is_subset(y)).collect();
                let glb = greatest_element(&lower);
                if glb.is_none() {
                    note("meet", x, format!("k={k} with {y:?}: no greatest lower bound"));
                }
                if k == 1 {
                    let meet = crate::lattice::meet_pans(game, &nx, &ny)?;
                    if Some(meet.edges()) != glb {
                        note("meet", x, format!("with {y:?}: got {:?}, expected {glb:?}", meet.edges()));
                    }
                }
            }
        }
    }

    Ok(CrossReport {
        graphs: set.graphs.len(),
        stable_counts: stable_sets.iter().map(Vec::len).collect(),
        disagreements: out,
    })
}
