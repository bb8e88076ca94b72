//! Networks with a player/non-player partition, utilities and minimal profiles.
//!
//! Nodes are indexed from zero internally: players are `0..n`, non-players `n..n+m`.
//! File formats and reports shift everything by one.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{bits, low_bits, Edge, EdgeSet, MAX_NODES};
use crate::rational::Rational;

/// Visibility-aversion coefficients, one per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameSpec {
    alphas: Vec<Rational>,
}

impl GameSpec {
    pub fn new(alphas: Vec<Rational>) -> Result<GameSpec> {
        if alphas.len() < 2 {
            return Err(Error::TooFewPlayers(alphas.len()));
        }
        if let Some((i, a)) = alphas.iter().enumerate().find(|(_, a)| **a < Rational::zero()) {
            return Err(Error::NegativeAlpha { player: i + 1, value: *a });
        }
        Ok(GameSpec { alphas })
    }

    /// Convenience constructor from `(numer, denom)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<GameSpec> {
        GameSpec::new(pairs.iter().map(|&(p, q)| Rational::new(p, q)).collect())
    }

    pub fn players(&self) -> usize {
        self.alphas.len()
    }

    pub fn alpha(&self, player: usize) -> Rational {
        self.alphas[player]
    }

    pub fn alphas(&self) -> &[Rational] {
        &self.alphas
    }

    /// Whether every player shares one coefficient.
    pub fn common_alpha(&self) -> Option<Rational> {
        let first = self.alphas[0];
        self.alphas.iter().all(|a| *a == first).then_some(first)
    }
}

/// Unvalidated network description, zero-based.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawNetwork {
    pub players: usize,
    pub nonplayers: usize,
    pub original_edges: Vec<(usize, usize)>,
    pub edges: Vec<(usize, usize)>,
    /// Explicit attribution `((j, l), k)` for added non-player edges.
    pub sustainers: Vec<((usize, usize), usize)>,
}

/// A resulting graph together with the attribution of every added non-player edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Network {
    players: usize,
    nonplayers: usize,
    original: EdgeSet,
    edges: EdgeSet,
    sustainers: BTreeMap<Edge, usize>,
}

/// Per-player utilities and their sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UtilityVector {
    #[serde(serialize_with = "ser_rationals")]
    pub values: Vec<Rational>,
    #[serde(with = "crate::rational::serde_rational")]
    pub welfare: Rational,
}

fn ser_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for r in v {
        seq.serialize_element(&crate::rational::format_rational(r))?;
    }
    seq.end()
}

/// One player's actions: direct connections and interconnections of non-player pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlayerStrategy {
    pub connect: BTreeSet<usize>,
    pub interconnect: BTreeSet<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyProfile {
    pub strategies: Vec<PlayerStrategy>,
}

fn check_node(v: usize, nodes: usize) -> Result<()> {
    if v < nodes {
        Ok(())
    } else {
        Err(Error::UnknownNode(v + 1))
    }
}

fn pair(a: usize, b: usize, nodes: usize) -> Result<Edge> {
    check_node(a, nodes)?;
    check_node(b, nodes)?;
    if a == b {
        return Err(Error::SelfLoop(a + 1));
    }
    Ok(Edge::new(a, b))
}

/// Validates a raw description against the game.
pub fn validate_network(raw: &RawNetwork, game: &GameSpec) -> Result<Network> {
    if raw.players < 2 {
        return Err(Error::TooFewPlayers(raw.players));
    }
    if game.players() != raw.players {
        return Err(Error::AlphaCount { expected: raw.players, got: game.players() });
    }
    let nodes = raw.players + raw.nonplayers;
    if nodes > MAX_NODES {
        return Err(Error::TooManyNodes(nodes));
    }
    let mut original = EdgeSet::empty(nodes);
    for &(a, b) in &raw.original_edges {
        let e = pair(a, b, nodes)?;
        if a < raw.players || b < raw.players {
            return Err(Error::OriginalTouchesPlayer(e));
        }
        original.insert(e);
    }
    let mut edges = original.clone();
    for &(a, b) in &raw.edges {
        edges.insert(pair(a, b, nodes)?);
    }
    let mut given = BTreeMap::new();
    for &((a, b), k) in &raw.sustainers {
        let e = pair(a, b, nodes)?;
        given.insert(e, k);
    }
    Network::assemble(raw.players, raw.nonplayers, original, edges, given)
}

impl Network {
    fn assemble(
        players: usize,
        nonplayers: usize,
        original: EdgeSet,
        edges: EdgeSet,
        mut given: BTreeMap<Edge, usize>,
    ) -> Result<Network> {
        let mut net = Network { players, nonplayers, original, edges, sustainers: BTreeMap::new() };
        for e in net.edges.edges().collect::<Vec<_>>() {
            if !net.is_added_nonplayer_edge(e) {
                if given.contains_key(&e) {
                    return Err(Error::StraySustainer(e));
                }
                continue;
            }
            let eligible = net.eligible_sustainers(e);
            let k = match given.remove(&e) {
                Some(k) if k < players && eligible >> k & 1 == 1 => k,
                Some(k) => return Err(Error::BadSustainer { edge: e, player: k + 1 }),
                None if eligible == 0 => return Err(Error::Unsustainable(e)),
                None => eligible.trailing_zeros() as usize,
            };
            net.sustainers.insert(e, k);
        }
        if let Some(e) = given.keys().next() {
            return Err(Error::StraySustainer(*e));
        }
        Ok(net)
    }

    /// A network on `edges ∪ original` with canonical sustainers.
    pub fn from_edge_sets(
        players: usize,
        nonplayers: usize,
        original: &EdgeSet,
        edges: &EdgeSet,
    ) -> Result<Network> {
        if players < 2 {
            return Err(Error::TooFewPlayers(players));
        }
        let nodes = players + nonplayers;
        if original.node_count() != nodes || edges.node_count() != nodes {
            return Err(Error::Mismatch);
        }
        if let Some(e) = original.edges().find(|e| e.lo() < players) {
            return Err(Error::OriginalTouchesPlayer(e));
        }
        Network::assemble(players, nonplayers, original.clone(), edges.union(original), BTreeMap::new())
    }

    /// The original graph with no added edges.
    pub fn bare(players: usize, nonplayers: usize, original: &EdgeSet) -> Result<Network> {
        Network::from_edge_sets(players, nonplayers, original, original)
    }

    /// Same partition and original edges, new edge set, canonical sustainers.
    pub fn with_edges(&self, edges: &EdgeSet) -> Result<Network> {
        Network::from_edge_sets(self.players, self.nonplayers, &self.original, edges)
    }

    /// Complete graph on all nodes.
    pub fn complete(players: usize, nonplayers: usize, original: &EdgeSet) -> Result<Network> {
        Network::from_edge_sets(players, nonplayers, original, &EdgeSet::complete(players + nonplayers))
    }

    pub fn players(&self) -> usize {
        self.players
    }

    pub fn nonplayers(&self) -> usize {
        self.nonplayers
    }

    pub fn node_count(&self) -> usize {
        self.players + self.nonplayers
    }

    pub fn is_player(&self, v: usize) -> bool {
        v < self.players
    }

    pub fn player_mask(&self) -> u64 {
        low_bits(self.players)
    }

    pub fn nonplayer_mask(&self) -> u64 {
        low_bits(self.node_count()) & !low_bits(self.players)
    }

    pub fn original(&self) -> &EdgeSet {
        &self.original
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn sustainers(&self) -> &BTreeMap<Edge, usize> {
        &self.sustainers
    }

    pub fn sustainer(&self, e: Edge) -> Option<usize> {
        self.sustainers.get(&e).copied()
    }

    /// Whether the two networks share partition and original edges.
    pub fn same_frame(&self, other: &Network) -> bool {
        self.players == other.players && self.nonplayers == other.nonplayers && self.original == other.original
    }

    pub(crate) fn is_added_nonplayer_edge(&self, e: Edge) -> bool {
        e.lo() >= self.players && !self.original.contains(e)
    }

    /// Players adjacent to both endpoints, as a bitmask.
    pub fn eligible_sustainers(&self, e: Edge) -> u64 {
        self.edges.neighbors(e.lo()) & self.edges.neighbors(e.hi()) & self.player_mask()
    }

    /// Returns `(deg, player_deg)` for a node.
    pub fn degrees(&self, node: usize) -> Result<(usize, usize)> {
        check_node(node, self.node_count())?;
        let row = self.edges.neighbors(node);
        Ok((row.count_ones() as usize, (row & self.player_mask()).count_ones() as usize))
    }

    pub fn degree(&self, node: usize) -> usize {
        self.edges.degree(node)
    }

    /// Number of non-players `l` whose added edge to `j` is sustained by `k`.
    pub fn effective_degree(&self, j: usize, k: usize) -> Result<usize> {
        check_node(j, self.node_count())?;
        check_node(k, self.node_count())?;
        if self.is_player(j) {
            return Err(Error::WrongRole { node: j + 1, expected: "non-player" });
        }
        if !self.is_player(k) {
            return Err(Error::WrongRole { node: k + 1, expected: "player" });
        }
        let nk = self.edges.neighbors(k);
        if nk >> j & 1 == 0 {
            return Ok(0);
        }
        let count = bits(self.edges.neighbors(j) & self.nonplayer_mask() & nk)
            .filter(|&l| self.sustainers.get(&Edge::new(j, l)) == Some(&k))
            .count();
        Ok(count)
    }

    pub fn utility(&self, game: &GameSpec) -> UtilityVector {
        utilities(&self.edges, game)
    }

    /// The inclusion-minimal profile producing this network under its attribution.
    pub fn minimal_profile(&self) -> StrategyProfile {
        let mut strategies = vec![PlayerStrategy::default(); self.players];
        for (i, s) in strategies.iter_mut().enumerate() {
            s.connect = bits(self.edges.neighbors(i)).collect();
        }
        for (&e, &k) in &self.sustainers {
            strategies[k].interconnect.insert(e);
        }
        StrategyProfile { strategies }
    }
}

/// `Σ_{j ∈ N(i)} deg(j)` for node `i`.
pub(crate) fn influence(edges: &EdgeSet, i: usize) -> i64 {
    bits(edges.neighbors(i)).map(|j| edges.degree(j) as i64).sum()
}

pub(crate) fn utility_of(edges: &EdgeSet, i: usize, alpha: Rational) -> Rational {
    Rational::from_integer(influence(edges, i)) - alpha * Rational::from_integer(edges.degree(i) as i64)
}

/// Utilities for every player on a bare edge set.
pub fn utilities(edges: &EdgeSet, game: &GameSpec) -> UtilityVector {
    let values: Vec<Rational> = (0..game.players()).map(|i| utility_of(edges, i, game.alpha(i))).collect();
    let welfare = values.iter().copied().sum();
    UtilityVector { values, welfare }
}

impl StrategyProfile {
    /// Builds the resulting network; the producer of each interconnection becomes its sustainer
    /// (the lowest-indexed one if several players produce the same edge).
    pub fn resulting_network(&self, nonplayers: usize, original: &EdgeSet) -> Result<Network> {
        let players = self.strategies.len();
        let nodes = players + nonplayers;
        if original.node_count() != nodes {
            return Err(Error::Mismatch);
        }
        let mut edges = original.clone();
        for (i, s) in self.strategies.iter().enumerate() {
            for &j in &s.connect {
                check_node(j, nodes)?;
                if j == i {
                    return Err(Error::SelfLoop(i + 1));
                }
                if j >= players || self.strategies[j].connect.contains(&i) {
                    edges.insert(Edge::new(i, j));
                }
            }
        }
        let mut given = BTreeMap::new();
        for (i, s) in self.strategies.iter().enumerate() {
            for &e in &s.interconnect {
                check_node(e.hi(), nodes)?;
                let effective = e.lo() >= players
                    && edges.has(i, e.lo())
                    && edges.has(i, e.hi())
                    && !original.contains(e);
                if effective && !given.contains_key(&e) {
                    given.insert(e, i);
                }
            }
        }
        for &e in given.keys() {
            edges.insert(e);
        }
        let mut net = Network::from_edge_sets(players, nonplayers, original, &edges)?;
        for (e, k) in given {
            net.sustainers.insert(e, k);
        }
        Ok(net)
    }

    /// Whether dropping any single action would change the resulting graph.
    pub fn is_minimal(&self, nonplayers: usize, original: &EdgeSet) -> Result<bool> {
        let graph = self.resulting_network(nonplayers, original)?;
        for i in 0..self.strategies.len() {
            for &j in &self.strategies[i].connect {
                let mut t = self.clone();
                t.strategies[i].connect.remove(&j);
                if t.resulting_network(nonplayers, original)?.edges == graph.edges {
                    return Ok(false);
                }
            }
            for &e in &self.strategies[i].interconnect {
                let mut t = self.clone();
                t.strategies[i].interconnect.remove(&e);
                if t.resulting_network(nonplayers, original)?.edges == graph.edges {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
