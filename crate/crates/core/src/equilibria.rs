//! Stability verification and the fixpoint constructions.
//!
//! Deleting a non-player neighbour also removes every interconnection the deleting player
//! sustains through it, so a player may gain from dropping a set of non-player neighbours
//! even when no single drop pays. The deletion test therefore searches subsets of the
//! non-player neighbourhood; the single-edge threshold `deg(j) + deg(j;i) ≥ α_i` is the
//! singleton case of that search.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, Edge, EdgeSet};
use crate::model::{influence, utility_of, GameSpec, Network};
use crate::oracle;
use crate::rational::{gain_sign, Rational};
use crate::search::{pick, subsets_by_size};

/// The condition a verdict found violated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// Dropping one non-player neighbour pays: `deg(j) + deg(j;i) < α_i`.
    DeleteOne,
    /// Dropping a set of non-player neighbours pays.
    DeleteSet,
    /// Connecting to a set of non-players (and interconnecting) pays.
    AddNonplayers,
    /// Dropping a player neighbour pays: `deg(j) < α_i`.
    PlayerEdge,
    /// A missing player pair would both weakly gain, one strictly.
    PlayerPair,
    /// Two non-player neighbours of a player are not adjacent.
    Interconnect,
    /// A coalition of two or more players has an improving move.
    Coalition,
    /// Found by exhaustive search over reachable moves.
    Exhaustive,
}

impl Condition {
    pub fn label(self) -> &'static str {
        match self {
            Condition::DeleteOne => "a",
            Condition::DeleteSet => "a-set",
            Condition::AddNonplayers => "b",
            Condition::PlayerEdge => "c",
            Condition::PlayerPair => "d",
            Condition::Interconnect => "e",
            Condition::Coalition => "coalition",
            Condition::Exhaustive => "exhaustive",
        }
    }
}

/// Stability notion a verdict refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityClass {
    /// Nash stable: no unilateral improvement.
    #[serde(rename = "NE")]
    Ne,
    /// Pairwise Nash stable.
    #[serde(rename = "PANE")]
    Pane,
    /// Robust to coalitions of size at most k, without a separate pairwise requirement.
    #[serde(rename = "k-NE")]
    KNe,
    /// k-strong pairwise Nash stable.
    #[serde(rename = "k-PANE")]
    KPane,
}

/// A move by a coalition from one network to another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeviationMove {
    pub coalition: Vec<usize>,
    pub added: Vec<Edge>,
    pub deleted: Vec<Edge>,
    /// Utility change of each coalition member, in coalition order.
    pub deltas: Vec<Rational>,
    pub resulting: Network,
}

impl DeviationMove {
    /// Recomputes the move from the network after the deviation.
    pub fn replay(net: &Network, game: &GameSpec, coalition: Vec<usize>, after: &EdgeSet) -> Result<DeviationMove> {
        let resulting = net.with_edges(after)?;
        let added = after.difference(net.edges()).edges().collect();
        let deleted = net.edges().difference(after).edges().collect();
        let deltas = coalition
            .iter()
            .map(|&i| utility_of(after, i, game.alpha(i)) - utility_of(net.edges(), i, game.alpha(i)))
            .collect();
        Ok(DeviationMove { coalition, added, deleted, deltas, resulting })
    }

    /// All members weakly gain and one strictly.
    pub fn is_improving(&self) -> bool {
        self.deltas.iter().all(|d| *d >= Rational::zero()) && self.deltas.iter().any(|d| *d > Rational::zero())
    }

    /// Whether the coalition can produce the move on its own from `net`'s minimal profile.
    pub fn is_reachable(&self, net: &Network) -> bool {
        let member = |v: usize| self.coalition.contains(&v);
        let after = self.resulting.edges();
        let deletions_ok = self.deleted.iter().all(|&e| {
            member(e.lo()) || member(e.hi()) || net.sustainer(e).is_some_and(member)
        });
        let additions_ok = self.added.iter().all(|&e| {
            let (a, b) = e.ends();
            if net.is_player(a) && net.is_player(b) {
                member(a) && member(b)
            } else if net.is_player(a) {
                member(a)
            } else {
                bits(after.neighbors(a) & after.neighbors(b) & net.player_mask()).any(member)
            }
        });
        deletions_ok && additions_ok
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub stable: bool,
    pub class: StabilityClass,
    pub strength: usize,
    pub condition: Option<Condition>,
    pub witness: Option<DeviationMove>,
}

impl StabilityVerdict {
    pub(crate) fn stable(class: StabilityClass, strength: usize) -> StabilityVerdict {
        StabilityVerdict { stable: true, class, strength, condition: None, witness: None }
    }

    pub(crate) fn unstable(
        class: StabilityClass,
        strength: usize,
        condition: Condition,
        witness: DeviationMove,
    ) -> StabilityVerdict {
        StabilityVerdict { stable: false, class, strength, condition: Some(condition), witness: Some(witness) }
    }
}

/// A violated condition together with the offending coalition and post-move edges.
type Violation = (Condition, Vec<usize>, EdgeSet);

fn nonplayer_mask(players: usize, nodes: usize) -> u64 {
    crate::graph::low_bits(nodes) & !crate::graph::low_bits(players)
}

/// Edges among `within` that are missing from `edges`.
fn missing_pairs(edges: &EdgeSet, within: u64) -> impl Iterator<Item = Edge> + '_ {
    bits(within).flat_map(move |a| {
        bits(within & !edges.neighbors(a) & !crate::graph::low_bits(a + 1)).map(move |b| Edge::new(a, b))
    })
}

/// Adds every missing pair among `i`'s non-player neighbours. Returns whether anything changed.
fn interconnect(edges: &mut EdgeSet, i: usize, np: u64) -> bool {
    let pairs: Vec<Edge> = missing_pairs(edges, edges.neighbors(i) & np).collect();
    for &e in &pairs {
        edges.insert(e);
    }
    !pairs.is_empty()
}

/// Gain numerator for `i` connecting to `t` with interconnection, as `(Δinfluence, Δdeg)`.
fn addition_gain(edges: &EdgeSet, i: usize, t: u64, np: u64) -> (i64, i64) {
    let j_after = (edges.neighbors(i) & np) | t;
    let fresh = |v: usize| (j_after & !edges.neighbors(v) & !(1u64 << v)).count_ones() as i64;
    let new_nodes: i64 = bits(t).map(|v| edges.degree(v) as i64 + 1 + fresh(v)).sum();
    let old_nodes: i64 = bits(edges.neighbors(i) & np).map(fresh).sum();
    (new_nodes + old_nodes, t.count_ones() as i64)
}

/// First strictly improving set of non-player connections for `i`, in canonical order.
fn first_improving_t(
    edges: &EdgeSet,
    i: usize,
    alpha: &Rational,
    np: u64,
    exclude_full: bool,
    evaluations: &mut u64,
) -> Option<u64> {
    let cand: Vec<usize> = bits(np & !edges.neighbors(i)).collect();
    subsets_by_size(cand.len())
        .map(|m| pick(&cand, m).fold(0u64, |acc, v| acc | 1 << v))
        .filter(|&t| !(exclude_full && t == np))
        .find(|&t| {
            *evaluations += 1;
            let (num, deg) = addition_gain(edges, i, t, np);
            gain_sign(alpha, num, deg) == Ordering::Greater
        })
}

fn apply_addition(edges: &mut EdgeSet, i: usize, t: u64, np: u64) {
    for v in bits(t) {
        edges.insert(Edge::new(i, v));
    }
    interconnect(edges, i, np);
}

/// Whether adding the missing player pair `(i, j)` weakly helps both and strictly one.
fn pair_blocks(edges: &EdgeSet, game: &GameSpec, i: usize, j: usize) -> bool {
    let di = edges.degree(i) as i64 + 1;
    let dj = edges.degree(j) as i64 + 1;
    let gi = gain_sign(&game.alpha(i), dj, 1);
    let gj = gain_sign(&game.alpha(j), di, 1);
    gi != Ordering::Less && gj != Ordering::Less && (gi == Ordering::Greater || gj == Ordering::Greater)
}

/// Largest subset of `i`'s non-player neighbours whose removal maximises `i`'s gain,
/// returned only when that gain is positive.
fn best_set_deletion(net: &Network, game: &GameSpec, i: usize) -> Option<u64> {
    let edges = net.edges();
    let alpha = game.alpha(i);
    let nbrs: Vec<usize> = bits(edges.neighbors(i) & net.nonplayer_mask()).collect();
    let own: Vec<Edge> = net.sustainers().iter().filter(|(_, &k)| k == i).map(|(&e, _)| e).collect();
    let mut best: Option<(Rational, u64)> = None;
    for m in subsets_by_size(nbrs.len()) {
        let s = pick(&nbrs, m).fold(0u64, |acc, v| acc | 1 << v);
        let lost: i64 = bits(s).map(|v| edges.degree(v) as i64).sum();
        let cut = own.iter().filter(|e| (s >> e.lo() & 1) != (s >> e.hi() & 1)).count() as i64;
        let gain = alpha * Rational::from_integer(s.count_ones() as i64) - Rational::from_integer(lost + cut);
        let better = match &best {
            None => true,
            Some((g, b)) => gain > *g || gain == *g && s.count_ones() > b.count_ones(),
        };
        if better {
            best = Some((gain, s));
        }
    }
    best.filter(|(g, _)| *g > Rational::zero()).map(|(_, s)| s)
}

/// Edges after `i` drops the non-player neighbours in `s` (with the interconnections it sustains through them).
fn after_set_deletion(net: &Network, i: usize, s: u64) -> EdgeSet {
    let mut after = net.edges().clone();
    for v in bits(s) {
        after.remove(Edge::new(i, v));
    }
    for (&e, &k) in net.sustainers() {
        if k == i && (s >> e.lo() & 1 == 1 || s >> e.hi() & 1 == 1) {
            after.remove(e);
        }
    }
    after
}

fn deletion_violation(net: &Network, game: &GameSpec) -> Option<Violation> {
    let edges = net.edges();
    for i in 0..net.players() {
        for j in bits(edges.neighbors(i) & net.nonplayer_mask()) {
            let keep = (edges.degree(j) + net.effective_degree(j, i).unwrap_or(0)) as i64;
            if gain_sign(&game.alpha(i), keep, 1) == Ordering::Less {
                return Some((Condition::DeleteOne, vec![i], after_set_deletion(net, i, 1 << j)));
            }
        }
    }
    for i in 0..net.players() {
        if let Some(s) = best_set_deletion(net, game, i) {
            return Some((Condition::DeleteSet, vec![i], after_set_deletion(net, i, s)));
        }
    }
    for i in 0..net.players() {
        for j in bits(edges.neighbors(i) & net.player_mask()) {
            if gain_sign(&game.alpha(i), edges.degree(j) as i64, 1) == Ordering::Less {
                let mut after = edges.clone();
                after.remove(Edge::new(i, j));
                return Some((Condition::PlayerEdge, vec![i], after));
            }
        }
    }
    None
}

fn addition_violation(
    edges: &EdgeSet,
    players: usize,
    game: &GameSpec,
    pairwise: bool,
) -> Option<Violation> {
    let np = nonplayer_mask(players, edges.node_count());
    let mut evals = 0;
    for i in 0..players {
        if let Some(t) = first_improving_t(edges, i, &game.alpha(i), np, false, &mut evals) {
            let mut after = edges.clone();
            apply_addition(&mut after, i, t, np);
            return Some((Condition::AddNonplayers, vec![i], after));
        }
    }
    if pairwise {
        for i in 0..players {
            for j in i + 1..players {
                if !edges.has(i, j) && pair_blocks(edges, game, i, j) {
                    let mut after = edges.clone();
                    after.insert(Edge::new(i, j));
                    return Some((Condition::PlayerPair, vec![i, j], after));
                }
            }
        }
    }
    for i in 0..players {
        let mut after = edges.clone();
        if interconnect(&mut after, i, np) {
            return Some((Condition::Interconnect, vec![i], after));
        }
    }
    None
}

fn verdict_from(
    net: &Network,
    game: &GameSpec,
    class: StabilityClass,
    strength: usize,
    violation: Option<Violation>,
) -> Result<StabilityVerdict> {
    match violation {
        None => Ok(StabilityVerdict::stable(class, strength)),
        Some((cond, coalition, after)) => {
            let witness = DeviationMove::replay(net, game, coalition, &after)?;
            Ok(StabilityVerdict::unstable(class, strength, cond, witness))
        }
    }
}

fn check_frame(net: &Network, game: &GameSpec) -> Result<()> {
    if net.players() != game.players() {
        return Err(Error::AlphaCount { expected: net.players(), got: game.players() });
    }
    Ok(())
}

/// Pairwise Nash stability through the local conditions.
pub fn is_pane(net: &Network, game: &GameSpec) -> Result<StabilityVerdict> {
    check_frame(net, game)?;
    let violation = deletion_violation(net, game)
        .or_else(|| addition_violation(net.edges(), net.players(), game, true));
    verdict_from(net, game, StabilityClass::Pane, 1, violation)
}

/// Nash stability: no unilateral improvement, pairs ignored.
pub fn is_ne(net: &Network, game: &GameSpec) -> Result<StabilityVerdict> {
    check_frame(net, game)?;
    let violation = deletion_violation(net, game)
        .or_else(|| addition_violation(net.edges(), net.players(), game, false));
    verdict_from(net, game, StabilityClass::Ne, 1, violation)
}

/// k-strong pairwise Nash stability.
pub fn is_k_strong(net: &Network, game: &GameSpec, k: usize) -> Result<StabilityVerdict> {
    let verdict = is_k_strong_with(net, game, k, k == 1)?;
    if k >= 2 && verdict.stable {
        debug_assert!(
            addition_violation(net.edges(), net.players(), game, true).is_none(),
            "coalition stability must imply pairwise stability"
        );
    }
    Ok(verdict)
}

/// As [`is_k_strong`], choosing whether the pairwise condition is checked on its own.
pub fn is_k_strong_with(net: &Network, game: &GameSpec, k: usize, explicit_pairwise: bool) -> Result<StabilityVerdict> {
    check_frame(net, game)?;
    check_strength(k, net.players())?;
    if k == 1 {
        return is_pane(net, game);
    }
    oracle::check_budget(net.players(), net.nonplayers(), net.original())?;
    let violation = deletion_violation(net, game)
        .or_else(|| addition_violation(net.edges(), net.players(), game, explicit_pairwise))
        .or_else(|| coalition_addition(net.edges(), net.players(), game, 2, k));
    verdict_from(net, game, StabilityClass::KPane, k, violation)
}

/// Rejects strengths outside `1..=players`.
pub fn check_strength(k: usize, players: usize) -> Result<()> {
    if k == 0 || k > players {
        return Err(Error::Strength { k, players });
    }
    Ok(())
}

/// Searches coalitions of size `min..=max` for an improving pure addition.
///
/// Coalitions are tried by size, then lexicographically; additions by size, then
/// lexicographically. A member may contribute only the strict gain without adding anything.
fn coalition_addition(edges: &EdgeSet, players: usize, game: &GameSpec, min: usize, max: usize) -> Option<Violation> {
    let np = nonplayer_mask(players, edges.node_count());
    let player_list: Vec<usize> = (0..players).collect();
    for size in min..=max.min(players) {
        for pm in subsets_by_size(players).filter(|m| m.count_ones() as usize == size) {
            let members: Vec<usize> = pick(&player_list, pm).collect();
            let mut cands = Vec::new();
            for (x, &a) in members.iter().enumerate() {
                for &b in &members[x + 1..] {
                    if !edges.has(a, b) {
                        cands.push(Edge::new(a, b));
                    }
                }
                for v in bits(np & !edges.neighbors(a)) {
                    cands.push(Edge::new(a, v));
                }
            }
            for am in subsets_by_size(cands.len()) {
                let added: Vec<Edge> = pick(&cands, am).collect();
                let mut after = edges.clone();
                for &e in &added {
                    after.insert(e);
                }
                for &p in &members {
                    interconnect(&mut after, p, np);
                }
                if improves(edges, &after, game, &members) {
                    return Some((Condition::Coalition, members, after));
                }
            }
        }
    }
    None
}

/// Weak gain for every member and strict gain for one.
pub(crate) fn improves(before: &EdgeSet, after: &EdgeSet, game: &GameSpec, members: &[usize]) -> bool {
    let mut strict = false;
    for &i in members {
        let num = influence(after, i) - influence(before, i);
        let deg = after.degree(i) as i64 - before.degree(i) as i64;
        match gain_sign(&game.alpha(i), num, deg) {
            Ordering::Less => return false,
            Ordering::Greater => strict = true,
            Ordering::Equal => {}
        }
    }
    strict
}

/// Knobs for the fixpoint algorithms.
#[derive(Debug, Clone, Default)]
pub struct FixpointOptions {
    /// Order in which players are visited; defaults to ascending.
    pub player_order: Option<Vec<usize>>,
    /// Forbid a player from connecting to all non-players at once.
    pub exclude_full_t: bool,
}

/// Work counters of a fixpoint run.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct FixpointStats {
    pub rounds: u64,
    pub evaluations: u64,
}

fn order(opts: &FixpointOptions, players: usize) -> Vec<usize> {
    opts.player_order.clone().unwrap_or_else(|| (0..players).collect())
}

/// Smallest pairwise stable network containing `net`.
pub fn min_including_pans(net: &Network, game: &GameSpec) -> Result<Network> {
    min_including_pans_with(net, game, &FixpointOptions::default()).map(|(n, _)| n)
}

pub fn min_including_pans_with(
    net: &Network,
    game: &GameSpec,
    opts: &FixpointOptions,
) -> Result<(Network, FixpointStats)> {
    check_frame(net, game)?;
    if let Some((cond, who, _)) = deletion_violation(net, game) {
        return Err(Error::Precondition {
            algorithm: "min-including",
            detail: format!("player {} profits from deletion (condition {})", who[0] + 1, cond.label()),
        });
    }
    let players = net.players();
    let np = net.nonplayer_mask();
    let ord = order(opts, players);
    let mut edges = net.edges().clone();
    let mut stats = FixpointStats::default();
    loop {
        stats.rounds += 1;
        let mut changed = false;
        for &i in &ord {
            changed |= interconnect(&mut edges, i, np);
            let alpha = game.alpha(i);
            while let Some(t) = first_improving_t(&edges, i, &alpha, np, opts.exclude_full_t, &mut stats.evaluations) {
                apply_addition(&mut edges, i, t, np);
                changed = true;
            }
        }
        for (x, &i) in ord.iter().enumerate() {
            for &j in &ord[x + 1..] {
                stats.evaluations += 1;
                if !edges.has(i, j) && pair_blocks(&edges, game, i, j) {
                    edges.insert(Edge::new(i, j));
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Ok((net.with_edges(&edges)?, stats))
}

/// Removes added non-player edges without a common player neighbour.
fn drop_unsustained(edges: &mut EdgeSet, players: usize, original: &EdgeSet) -> bool {
    let pm = crate::graph::low_bits(players);
    let doomed: Vec<Edge> = edges
        .edges()
        .filter(|e| e.lo() >= players && !original.contains(*e))
        .filter(|e| edges.neighbors(e.lo()) & edges.neighbors(e.hi()) & pm == 0)
        .collect();
    for &e in &doomed {
        edges.remove(e);
    }
    !doomed.is_empty()
}

/// Largest pairwise stable network contained in `net`.
pub fn max_included_pans(net: &Network, game: &GameSpec) -> Result<Network> {
    check_frame(net, game)?;
    max_included_raw(net.players(), net.nonplayers(), net.original(), net.edges(), game, &FixpointOptions::default())
        .map(|(n, _)| n)
}

pub fn max_included_pans_with(
    net: &Network,
    game: &GameSpec,
    opts: &FixpointOptions,
) -> Result<(Network, FixpointStats)> {
    check_frame(net, game)?;
    max_included_raw(net.players(), net.nonplayers(), net.original(), net.edges(), game, opts)
}

/// Deletion fixpoint on an edge set that may still hold unsustained non-player edges.
pub(crate) fn max_included_raw(
    players: usize,
    nonplayers: usize,
    original: &EdgeSet,
    start: &EdgeSet,
    game: &GameSpec,
    opts: &FixpointOptions,
) -> Result<(Network, FixpointStats)> {
    if let Some((cond, who, _)) = addition_violation(start, players, game, true) {
        return Err(Error::Precondition {
            algorithm: "max-included",
            detail: format!("player {} profits from addition (condition {})", who[0] + 1, cond.label()),
        });
    }
    let ord = order(opts, players);
    let mut edges = start.union(original);
    let mut stats = FixpointStats::default();
    drop_unsustained(&mut edges, players, original);
    loop {
        stats.rounds += 1;
        let mut changed = false;
        for &i in &ord {
            for j in bits(edges.neighbors(i) & crate::graph::low_bits(players)) {
                stats.evaluations += 1;
                if gain_sign(&game.alpha(i), edges.degree(j) as i64, 1) == Ordering::Less {
                    edges.remove(Edge::new(i, j));
                    changed = true;
                }
            }
        }
        for &i in &ord {
            stats.evaluations += 1;
            let current = Network::from_edge_sets(players, nonplayers, original, &edges)?;
            if let Some(s) = best_set_deletion(&current, game, i) {
                for v in bits(s) {
                    edges.remove(Edge::new(i, v));
                }
                drop_unsustained(&mut edges, players, original);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    Ok((Network::from_edge_sets(players, nonplayers, original, &edges)?, stats))
}

/// Smallest k-strong pairwise stable network containing `net`.
pub fn min_including_k_pans(net: &Network, game: &GameSpec, k: usize) -> Result<Network> {
    check_frame(net, game)?;
    check_strength(k, net.players())?;
    if k == 1 {
        return min_including_pans(net, game);
    }
    oracle::check_budget(net.players(), net.nonplayers(), net.original())?;
    if let Some((cond, who, _)) = deletion_violation(net, game) {
        return Err(Error::Precondition {
            algorithm: "min-including-k",
            detail: format!("player {} profits from deletion (condition {})", who[0] + 1, cond.label()),
        });
    }
    let np = net.nonplayer_mask();
    let mut edges = net.edges().clone();
    loop {
        for i in 0..net.players() {
            interconnect(&mut edges, i, np);
        }
        match coalition_addition(&edges, net.players(), game, 1, k) {
            Some((_, _, after)) => edges = after,
            None => break,
        }
    }
    net.with_edges(&edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{self, network, triangle};

    #[test]
    fn example_one_is_unstable() {
        let (game, net) = instances::sustained_tie();
        let v = is_pane(&net, &game).unwrap();
        assert!(!v.stable);
        let w = v.witness.unwrap();
        assert!(w.is_improving());
        assert!(w.is_reachable(&net));
    }

    #[test]
    fn example_two_empty_graph_is_stable() {
        let net = network(2, 0, &[]);
        assert!(is_pane(&net, &instances::empty_stable_pair()).unwrap().stable);
    }

    #[test]
    fn four_at_three_halves_triangle_is_stable_and_edge_is_not() {
        let game = instances::four_at_three_halves();
        assert!(is_pane(&triangle(1, 2, 3), &game).unwrap().stable);
        let v = is_pane(&network(4, 0, &[(1, 2)]), &game).unwrap();
        assert_eq!(v.condition, Some(Condition::PlayerEdge));
    }

    #[test]
    fn two_tiers_strengths() {
        let game = instances::two_tiers();
        assert!(is_k_strong(&instances::two_tiers_middle(), &game, 2).unwrap().stable);
        let v = is_k_strong(&instances::two_tiers_middle(), &game, 3).unwrap();
        assert!(!v.stable);
        assert!(v.witness.as_ref().unwrap().is_improving());
        assert!(is_k_strong(&instances::two_tiers_complete(), &game, 5).unwrap().stable);
    }

    #[test]
    fn four_at_three_halves_empty_graph_strengths() {
        let game = instances::four_at_three_halves();
        let empty = network(4, 0, &[]);
        assert!(is_k_strong(&empty, &game, 2).unwrap().stable);
        let v = is_k_strong(&empty, &game, 3).unwrap();
        let w = v.witness.unwrap();
        assert_eq!(w.coalition.len(), 3);
        assert!(w.deltas.iter().all(|d| *d == Rational::from_integer(1)));
    }

    #[test]
    fn set_deletion_beats_single_deletions() {
        // player 1 sustains (3,4); neither single drop pays, dropping both does
        let game = GameSpec::from_pairs(&[(5, 2), (10, 1)]).unwrap();
        let net = network(2, 2, &[(1, 3), (1, 4), (3, 4)]);
        let v = is_pane(&net, &game).unwrap();
        assert_eq!(v.condition, Some(Condition::DeleteSet));
        let w = v.witness.unwrap();
        assert_eq!(w.deltas, vec![Rational::from_integer(1)]);
        assert!(w.resulting.edges().is_empty());
    }

    #[test]
    fn min_including_examples() {
        let game = instances::four_at_three_halves();
        let empty = network(4, 0, &[]);
        assert_eq!(min_including_pans(&empty, &game).unwrap(), empty);
        let two = network(4, 0, &[(1, 2), (1, 3), (2, 3), (1, 4), (2, 4)]);
        assert_eq!(min_including_pans(&two, &game).unwrap().edges().len(), 6);
        let (g1, _) = instances::sustained_tie();
        let k5 = min_including_pans(&network(2, 3, &[]), &g1).unwrap();
        assert_eq!(k5.edges().len(), 10);
    }

    #[test]
    fn min_including_rejects_profitable_deletion() {
        let game = instances::four_at_three_halves();
        let err = min_including_pans(&network(4, 0, &[(1, 2)]), &game).unwrap_err();
        assert!(matches!(err, Error::Precondition { .. }));
    }

    #[test]
    fn max_included_examples() {
        let game = instances::four_at_three_halves();
        let k4 = network(4, 0, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(max_included_pans(&k4, &game).unwrap(), k4);
        let zero_and_three_halves = instances::zero_and_three_halves();
        assert!(max_included_pans(&network(2, 0, &[(1, 2)]), &zero_and_three_halves).unwrap().edges().is_empty());
        assert!(max_included_pans(&network(4, 0, &[(1, 2)]), &game).unwrap().edges().is_empty());
    }

    #[test]
    fn max_included_drops_bundled_neighbourhood() {
        let game = GameSpec::from_pairs(&[(7, 2), (0, 1)]).unwrap();
        let full = network(2, 2, &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let out = max_included_pans(&full, &game).unwrap();
        assert_eq!(out, network(2, 2, &[(2, 3), (2, 4), (3, 4)]));
        assert!(is_pane(&out, &game).unwrap().stable);
    }

    #[test]
    fn min_including_k_examples() {
        let four_at_three_halves = instances::four_at_three_halves();
        let empty4 = network(4, 0, &[]);
        assert_eq!(min_including_k_pans(&empty4, &four_at_three_halves, 3).unwrap().edges().len(), 6);
        assert!(min_including_k_pans(&empty4, &four_at_three_halves, 1).unwrap().edges().is_empty());
        let k5 = min_including_k_pans(&network(5, 0, &[]), &instances::two_tiers(), 5).unwrap();
        assert_eq!(k5.edges().len(), 10);
    }

    #[test]
    fn strength_out_of_range() {
        let game = instances::four_at_three_halves();
        assert!(matches!(is_k_strong(&network(4, 0, &[]), &game, 0), Err(Error::Strength { .. })));
        assert!(matches!(is_k_strong(&network(4, 0, &[]), &game, 5), Err(Error::Strength { .. })));
    }
}
