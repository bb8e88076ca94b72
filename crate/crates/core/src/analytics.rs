//! Closed forms, structural characterisations, welfare ratios and property checkers.

use num_traits::Zero;

use crate::equilibria::is_ne;
use crate::error::{Error, Result};
use crate::graph::{bits, low_bits, Edge, EdgeSet};
use crate::model::{GameSpec, Network};
use crate::oracle::{self, FeasibleGraphSet};
use crate::rational::{Extended, Rational};

fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Player indices sorted by ascending α, ties by index.
fn sorted_players(game: &GameSpec) -> Vec<usize> {
    let mut order: Vec<usize> = (0..game.players()).collect();
    order.sort_by(|&a, &b| game.alpha(a).cmp(&game.alpha(b)).then(a.cmp(&b)));
    order
}

/// Predicted stable network of clique-plus-isolated shape.
#[derive(Debug, Clone)]
pub struct ClosedFormResult {
    /// `p` for the greatest network, `q` for the least; one-based with `0` / `n+1` sentinels.
    pub threshold_index: usize,
    /// Nodes of the clique, zero-based and ascending; empty when the prediction is the original graph.
    pub clique_members: Vec<usize>,
    pub predicted: Network,
    pub welfare: Rational,
}

fn clique_on(game: &GameSpec, nonplayers: usize, original: &EdgeSet, members: &[usize]) -> Result<Network> {
    let mut edges = original.clone();
    for (x, &a) in members.iter().enumerate() {
        for &b in &members[x + 1..] {
            edges.insert(Edge::new(a, b));
        }
    }
    Network::from_edge_sets(game.players(), nonplayers, original, &edges)
}

fn closed_form(
    game: &GameSpec,
    nonplayers: usize,
    original: &EdgeSet,
    threshold_index: usize,
    size: usize,
) -> Result<ClosedFormResult> {
    let n = game.players();
    if size == 0 {
        return Ok(ClosedFormResult {
            threshold_index,
            clique_members: Vec::new(),
            predicted: Network::bare(n, nonplayers, original)?,
            welfare: Rational::zero(),
        });
    }
    let order = sorted_players(game);
    let mut members: Vec<usize> = order[..size].to_vec();
    members.extend(n..n + nonplayers);
    members.sort_unstable();
    let d = int((size + nonplayers) as i64 - 1);
    let welfare = d * order[..size].iter().map(|&i| d - game.alpha(i)).sum::<Rational>();
    let predicted = clique_on(game, nonplayers, original, &members)?;
    Ok(ClosedFormResult { threshold_index, clique_members: members, predicted, welfare })
}

/// Greatest stable network: the clique on the `p` lowest-α players and all non-players.
pub fn greatest_closed_form(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<ClosedFormResult> {
    let order = sorted_players(game);
    let m = nonplayers as i64;
    let p = (1..=order.len())
        .filter(|&i| int(i as i64 + m - 1) >= game.alpha(order[i - 1]))
        .max()
        .unwrap_or(0);
    closed_form(game, nonplayers, original, p, p)
}

/// Least stable network: the clique on the `q-1` lowest-α players and all non-players.
///
/// When `α_q = q+m-1` some outside players are indifferent to linking a clique player, and a
/// partner with `α < 1` gains strictly from it. Those player links are then added until no pair
/// blocks, so the result can carry edges beyond the clique.
pub fn least_closed_form(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<ClosedFormResult> {
    let order = sorted_players(game);
    let m = nonplayers as i64;
    let q = (1..=order.len())
        .find(|&i| game.alpha(order[i - 1]) >= int((i as i64 + m - 1).max(1)))
        .unwrap_or(order.len() + 1);
    let mut result = closed_form(game, nonplayers, original, q, q - 1)?;
    let mut edges = result.predicted.edges().clone();
    if close_player_pairs(&mut edges, game) {
        result.predicted = Network::from_edge_sets(game.players(), nonplayers, original, &edges)?;
        result.welfare = result.predicted.utility(game).welfare;
    }
    Ok(result)
}

/// Adds player links that one side strictly wants and the other accepts, until none is left.
fn close_player_pairs(edges: &mut EdgeSet, game: &GameSpec) -> bool {
    let n = game.players();
    let mut changed = false;
    loop {
        let found = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).find(|&(a, b)| {
            if edges.has(a, b) {
                return false;
            }
            let ga = int(edges.degree(b) as i64 + 1) - game.alpha(a);
            let gb = int(edges.degree(a) as i64 + 1) - game.alpha(b);
            ga >= Rational::zero() && gb >= Rational::zero() && ga + gb > Rational::zero()
        });
        match found {
            Some((a, b)) => {
                edges.insert(Edge::new(a, b));
                changed = true;
            }
            None => return changed,
        }
    }
}

/// Which range the common α falls in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EqualAlphaCase {
    /// `α < max(1, m)`: only the complete graph.
    Low,
    /// `max(1, m) ≤ α ≤ n+m-1`.
    Middle,
    /// `α > n+m-1`: only the original graph.
    High,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualAlphaStructure {
    pub alpha: Rational,
    pub case: EqualAlphaCase,
    /// Non-players adjacent to at least one player.
    pub component_d: Vec<usize>,
    /// For each node of `component_d`, its original edges to non-players outside it.
    pub boundary_counts: Vec<usize>,
    /// Minimum of `boundary_counts`, zero when `component_d` is empty.
    pub d0: usize,
    /// Players with at least one player neighbour.
    pub component_c: Vec<usize>,
    /// Verdict of the three textbook conditions alone, without the two addition checks below.
    pub literal_conditions: bool,
    /// No pair of players outside and inside `C` wants to link.
    pub players_closed: bool,
    /// No player gains by linking non-players outside `D` and tying them into `D`.
    pub nonplayers_closed: bool,
}

fn equal_alpha_case(alpha: Rational, n: usize, m: usize) -> EqualAlphaCase {
    if alpha < int(m.max(1) as i64) {
        EqualAlphaCase::Low
    } else if alpha > int((n + m) as i64 - 1) {
        EqualAlphaCase::High
    } else {
        EqualAlphaCase::Middle
    }
}

fn is_clique(edges: &EdgeSet, nodes: u64) -> bool {
    bits(nodes).all(|v| nodes & !(1 << v) & !edges.neighbors(v) == 0)
}

/// Decides pairwise stability for a common α from the structure of the network alone.
pub fn check_equal_alpha(net: &Network, game: &GameSpec) -> Result<(bool, EqualAlphaStructure)> {
    let alpha = game.common_alpha().ok_or_else(|| Error::AlphaPattern("alphas are not all equal".into()))?;
    let (n, m) = (net.players(), net.nonplayers());
    let edges = net.edges();
    let pm = net.player_mask();
    let np = net.nonplayer_mask();
    let d_mask = bits(pm).fold(0u64, |acc, i| acc | edges.neighbors(i) & np);
    let c_mask = bits(pm).filter(|&i| edges.neighbors(i) & pm != 0).fold(0u64, |acc, i| acc | 1 << i);
    let boundary_counts: Vec<usize> =
        bits(d_mask).map(|v| (net.original().neighbors(v) & np & !d_mask).count_ones() as usize).collect();
    let d0 = boundary_counts.iter().copied().min().unwrap_or(0);
    let case = equal_alpha_case(alpha, n, m);
    let d = d_mask.count_ones() as i64;
    let c = c_mask.count_ones() as i64;
    let (literal_conditions, players_closed, nonplayers_closed) = match case {
        EqualAlphaCase::Low => (*edges == EdgeSet::complete(n + m), true, true),
        EqualAlphaCase::High => (edges == net.original(), true, true),
        EqualAlphaCase::Middle => {
            let d_ok = d_mask == 0
                || is_clique(edges, d_mask)
                    && bits(pm).all(|i| edges.neighbors(i) & d_mask == d_mask)
                    && int(d0 as i64 + d) >= alpha + int(1 - n as i64);
            let c_ok = c_mask == 0 || is_clique(edges, c_mask) && int(c) >= alpha + int(1 - d);
            let corner_ok = !(alpha < int(m as i64 + 1) && d_mask == np) || c_mask == pm;
            let players_closed = c_mask == 0 || c_mask == pm || alpha > int(d + 1);
            let outside = np & !d_mask;
            let nonplayers_closed = outside_gain(net.original(), d_mask, outside, alpha).is_none();
            (d_ok && c_ok && corner_ok, players_closed, nonplayers_closed)
        }
    };
    let structure = EqualAlphaStructure {
        alpha,
        case,
        component_d: bits(d_mask).collect(),
        boundary_counts,
        d0,
        component_c: bits(c_mask).collect(),
        literal_conditions,
        players_closed,
        nonplayers_closed,
    };
    Ok((literal_conditions && players_closed && nonplayers_closed, structure))
}

/// A set of non-players outside `d` that one player profits from linking, fully tied into `d`.
///
/// Each added node `s` of the set `S` ends with degree `|S| + |D|` plus its original edges leaving
/// `S`, and each new tie into `D` raises a neighbour's degree by one.
fn outside_gain(original: &EdgeSet, d: u64, outside: u64, alpha: Rational) -> Option<u64> {
    let pool: Vec<usize> = bits(outside).collect();
    let dsize = d.count_ones() as i64;
    crate::search::subsets_by_size(pool.len()).map(|sel| crate::search::pick(&pool, sel).collect::<Vec<_>>()).find_map(|chosen| {
        let s_mask = chosen.iter().fold(0u64, |acc, &v| acc | 1 << v);
        let size = chosen.len() as i64;
        let gain: Rational = chosen
            .iter()
            .map(|&v| {
                let nbrs = original.neighbors(v);
                let leaving = (nbrs & outside & !s_mask).count_ones() as i64;
                let ties = (d & !nbrs).count_ones() as i64;
                int(size + dsize + leaving + ties) - alpha
            })
            .sum();
        (gain > Rational::zero()).then_some(s_mask)
    })
}

/// Efficiency summary of a game at one strength level.
#[derive(Debug, Clone)]
pub struct EfficiencyReport {
    pub strength: usize,
    pub max_sw: Rational,
    pub max_witness: Option<Network>,
    pub min_eq_sw: Rational,
    pub max_eq_sw: Rational,
    pub poa: Extended,
    pub pos: Extended,
    pub additive_bound: Rational,
}

/// Maximum welfare for a common α: the complete graph when `α ≤ n+m-1`, else zero.
pub fn equal_alpha_max_welfare(alpha: Rational, players: usize, nonplayers: usize) -> Rational {
    let d = int((players + nonplayers) as i64 - 1);
    if alpha <= d {
        int(players as i64) * d * (d - alpha)
    } else {
        Rational::zero()
    }
}

/// Welfare and prices for a common α at strength 1, from the case analysis.
pub fn equal_alpha_efficiency(game: &GameSpec, nonplayers: usize) -> Result<EfficiencyReport> {
    let alpha = game.common_alpha().ok_or_else(|| Error::AlphaPattern("alphas are not all equal".into()))?;
    let n = game.players();
    let max_sw = equal_alpha_max_welfare(alpha, n, nonplayers);
    let (min_eq, max_eq) = match equal_alpha_case(alpha, n, nonplayers) {
        EqualAlphaCase::Low => (max_sw, max_sw),
        EqualAlphaCase::Middle => (Rational::zero(), max_sw),
        EqualAlphaCase::High => (Rational::zero(), Rational::zero()),
    };
    Ok(EfficiencyReport {
        strength: 1,
        max_sw,
        max_witness: None,
        min_eq_sw: min_eq,
        max_eq_sw: max_eq,
        poa: Extended::ratio(max_sw, min_eq),
        pos: Extended::ratio(max_sw, max_eq),
        additive_bound: additive_bound(game, nonplayers),
    })
}

fn one_distinct_alpha(game: &GameSpec) -> Result<Rational> {
    let rest = &game.alphas()[1..];
    if rest.iter().any(|a| *a >= int(1)) {
        return Err(Error::AlphaPattern("players 2..n need alpha below 1".into()));
    }
    Ok(rest.iter().copied().max().expect("at least two players"))
}

/// Decides k-strong pairwise stability when every player but the first has α below one.
pub fn check_one_distinct(net: &Network, game: &GameSpec, k: usize) -> Result<bool> {
    one_distinct_alpha(game)?;
    let nodes = net.node_count();
    let edges = net.edges();
    let rest = low_bits(nodes) & !1;
    if !is_clique(edges, rest) {
        return Ok(false);
    }
    let top = int(nodes as i64 - 1);
    let a1 = game.alpha(0);
    let nbrs = edges.neighbors(0);
    Ok(if a1 < top {
        nbrs == rest
    } else if a1 > top {
        nbrs == 0
    } else if k >= 2 {
        nbrs == rest
    } else {
        nbrs & net.player_mask() == net.player_mask() & !1
    })
}

/// Welfare values when every player but the first shares one α below one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneDistinctEfficiency {
    pub max_sw: Rational,
    /// Smallest and largest equilibrium welfare at strength 1.
    pub eq_sw_low: Rational,
    pub eq_sw_high: Rational,
    pub poa: Extended,
    pub pos: Extended,
    /// Prices at strength 2 and above, where only the larger equilibrium welfare remains.
    pub strong_poa: Extended,
    pub strong_pos: Extended,
}

/// Welfare with all nodes but the first player forming a clique, the first player linked to
/// `np` other players and `mp` non-players.
fn one_distinct_welfare(game: &GameSpec, nonplayers: usize, alpha: Rational, np: usize, mp: usize) -> Rational {
    let n = game.players() as i64;
    let d = n + nonplayers as i64 - 2;
    let base = int(n - 1) * (int(d * d) - alpha * int(d));
    let x = (np + mp) as i64;
    let first = int(x * (d + 1)) - game.alpha(0) * int(x);
    let linked = int(np as i64) * (int(2 * x - 1) - alpha);
    let others = int((n - 1 - np as i64) * x);
    base + first + linked + others
}

/// Maximum and equilibrium welfare when players 2..n share one α below one.
pub fn one_distinct_efficiency(game: &GameSpec, nonplayers: usize) -> Result<OneDistinctEfficiency> {
    let alpha = one_distinct_alpha(game)?;
    if game.alphas()[1..].iter().any(|a| *a != alpha) {
        return Err(Error::AlphaPattern("players 2..n need a common alpha".into()));
    }
    let n = game.players();
    let max_sw = (0..n)
        .flat_map(|np| (0..=nonplayers).map(move |mp| (np, mp)))
        .map(|(np, mp)| one_distinct_welfare(game, nonplayers, alpha, np, mp))
        .max()
        .expect("nonempty grid");
    let top = int((n + nonplayers) as i64 - 1);
    let all = one_distinct_welfare(game, nonplayers, alpha, n - 1, nonplayers);
    let none = one_distinct_welfare(game, nonplayers, alpha, 0, 0);
    let players_only = one_distinct_welfare(game, nonplayers, alpha, n - 1, 0);
    let a1 = game.alpha(0);
    let (low, high) = if a1 < top {
        (all, all)
    } else if a1 > top {
        (none, none)
    } else {
        (players_only, all)
    };
    Ok(OneDistinctEfficiency {
        max_sw,
        eq_sw_low: low,
        eq_sw_high: high,
        poa: Extended::ratio(max_sw, low),
        pos: Extended::ratio(max_sw, high),
        strong_poa: Extended::ratio(max_sw, high),
        strong_pos: Extended::ratio(max_sw, high),
    })
}

/// Whether there are more non-players than any player's α, which forces the complete graph.
pub fn large_m_check(game: &GameSpec, nonplayers: usize) -> bool {
    game.alphas().iter().all(|a| *a < int(nonplayers as i64))
}

/// Upper bound on the gap between maximum welfare and the worst Nash stable welfare.
pub fn additive_bound(game: &GameSpec, nonplayers: usize) -> Rational {
    let n = game.players() as i64;
    let m = nonplayers as i64;
    let top = int(n + m - 1);
    let cheap: Vec<Rational> = game.alphas().iter().copied().filter(|a| *a < top).collect();
    int(n * (n - 1) * (n - 2) / 2) + int(cheap.len() as i64 * (n - 1) * (n + m - 1)) - cheap.iter().sum::<Rational>()
        + int(n * m * (n - 1 + n * m))
}

/// Welfare and prices at strength `k` by exhaustive enumeration.
pub fn efficiency(game: &GameSpec, nonplayers: usize, original: &EdgeSet, k: usize) -> Result<EfficiencyReport> {
    crate::equilibria::check_strength(k, game.players())?;
    let set = oracle::enumerate_feasible_graphs(game, nonplayers, original)?;
    Ok(efficiency_from(&set, k))
}

/// As [`efficiency`], reusing an enumeration.
pub fn efficiency_from(set: &FeasibleGraphSet, k: usize) -> EfficiencyReport {
    let mut best: Option<(Rational, &Network)> = None;
    for g in &set.graphs {
        if best.map_or(true, |(b, _)| g.utilities.welfare > b) {
            best = Some((g.utilities.welfare, &g.network));
        }
    }
    let (max_sw, witness) = best.expect("the original graph is feasible");
    let eq: Vec<Rational> = set.stable(k).iter().map(|g| g.utilities.welfare).collect();
    let min_eq = eq.iter().copied().min().expect("a stable network exists");
    let max_eq = eq.iter().copied().max().expect("a stable network exists");
    EfficiencyReport {
        strength: k,
        max_sw,
        max_witness: Some(witness.clone()),
        min_eq_sw: min_eq,
        max_eq_sw: max_eq,
        poa: Extended::ratio(max_sw, min_eq),
        pos: Extended::ratio(max_sw, max_eq),
        additive_bound: additive_bound(&set.game, set.nonplayers),
    }
}

/// Utility changes from a smaller network `G` to a Nash stable superset `F`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotonicityReport {
    /// `u_i(F) - u_i(G)` per player.
    pub deltas: Vec<Rational>,
    pub all_equal: bool,
    /// Every added edge joins nodes without player neighbours in `G`, and each player endpoint's
    /// α equals the other endpoint's degree in `F`.
    pub equality_conditions: bool,
}

impl MonotonicityReport {
    /// Deltas are nonnegative and equality happens exactly under the conditions.
    pub fn consistent(&self) -> bool {
        self.deltas.iter().all(|d| *d >= Rational::zero()) && self.all_equal == self.equality_conditions
    }
}

pub fn monotonicity_check(f: &Network, g: &Network, game: &GameSpec) -> Result<MonotonicityReport> {
    if !f.same_frame(g) {
        return Err(Error::Mismatch);
    }
    if !g.edges().is_subset(f.edges()) || f.edges() == g.edges() {
        return Err(Error::Inclusion("the smaller network must be a strict subset".into()));
    }
    if !is_ne(f, game)?.stable {
        return Err(Error::NotStable("the larger network is not Nash stable".into()));
    }
    let (uf, ug) = (f.utility(game), g.utility(game));
    let deltas: Vec<Rational> = uf.values.iter().zip(&ug.values).map(|(a, b)| a - b).collect();
    let all_equal = deltas.iter().all(Zero::is_zero);
    let pm = g.player_mask();
    let equality_conditions = f.edges().difference(g.edges()).edges().all(|e| {
        let (a, b) = e.ends();
        let no_players = g.edges().neighbors(a) & pm == 0 && g.edges().neighbors(b) & pm == 0;
        let side = |p: usize, q: usize| !f.is_player(p) || int(f.degree(q) as i64) == game.alpha(p);
        no_players && side(a, b) && side(b, a)
    });
    Ok(MonotonicityReport { deltas, all_equal, equality_conditions })
}

/// Strength-related equivalences over one enumerated strength level.
#[derive(Debug, Clone)]
pub struct StrengthReport {
    pub strength: usize,
    /// Indices (into the k-strong set, enumeration order) of fully strong networks.
    pub strong: Vec<usize>,
    /// Indices where every player reaches her best utility within the set.
    pub max_utility: Vec<usize>,
    /// Strong exactly when every player is at her maximum.
    pub strong_iff_max_utility: bool,
    /// All strong networks give the same utility vector.
    pub strong_utilities_agree: bool,
    /// Prices of anarchy and stability coincide exactly when every k-strong network is strong.
    pub uniqueness_iff_strong: bool,
}

pub fn strength_equivalences(game: &GameSpec, nonplayers: usize, original: &EdgeSet, k: usize) -> Result<StrengthReport> {
    crate::equilibria::check_strength(k, game.players())?;
    let set = oracle::enumerate_feasible_graphs(game, nonplayers, original)?;
    Ok(strength_from(&set, k))
}

pub fn strength_from(set: &FeasibleGraphSet, k: usize) -> StrengthReport {
    let n = set.players();
    let elems = set.stable(k);
    let best: Vec<Rational> = (0..n)
        .map(|i| elems.iter().map(|g| g.utilities.values[i]).max().expect("nonempty"))
        .collect();
    let strong: Vec<usize> = (0..elems.len()).filter(|&x| elems[x].is_strong(n)).collect();
    let max_utility: Vec<usize> = (0..elems.len()).filter(|&x| elems[x].utilities.values == best).collect();
    let agree = strong.windows(2).all(|w| elems[w[0]].utilities.values == elems[w[1]].utilities.values);
    let eff = efficiency_from(set, k);
    StrengthReport {
        strength: k,
        strong_iff_max_utility: strong == max_utility,
        strong_utilities_agree: agree,
        uniqueness_iff_strong: (eff.poa == eff.pos) == (strong.len() == elems.len()),
        strong,
        max_utility,
    }
}
