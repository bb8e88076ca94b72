//! Worked instances used by tests, the CLI fixtures and the acceptance suite.
//!
//! Helpers take one-based node labels.

use crate::graph::{Edge, EdgeSet};
use crate::model::{GameSpec, Network};
use crate::rational::Rational;

/// Edge set on `nodes` nodes from one-based pairs.
pub fn edge_set(nodes: usize, pairs: &[(usize, usize)]) -> EdgeSet {
    EdgeSet::from_edges(nodes, pairs.iter().map(|&(a, b)| Edge::new(a - 1, b - 1)))
}

/// Network with no original edges, canonical sustainers.
pub fn network(players: usize, nonplayers: usize, pairs: &[(usize, usize)]) -> Network {
    let nodes = players + nonplayers;
    Network::from_edge_sets(players, nonplayers, &EdgeSet::empty(nodes), &edge_set(nodes, pairs))
        .expect("fixture network is feasible")
}

fn game(alphas: &[(i64, i64)]) -> GameSpec {
    GameSpec::from_pairs(alphas).expect("fixture game is valid")
}

/// Two players, three non-players; player 1 links non-players 3 and 4.
pub fn sustained_tie() -> (GameSpec, Network) {
    let g = game(&[(1, 1), (1, 2)]);
    let net = network(2, 3, &[(1, 2), (1, 3), (1, 4), (3, 4), (2, 5)]);
    (g, net)
}

/// Two players with α = (1/10, 2); the empty graph is stable.
pub fn empty_stable_pair() -> GameSpec {
    game(&[(1, 10), (2, 1)])
}

/// Four players with α = 3/2.
pub fn four_at_three_halves() -> GameSpec {
    game(&[(3, 2); 4])
}

pub fn triangle(a: usize, b: usize, c: usize) -> Network {
    network(4, 0, &[(a, b), (a, c), (b, c)])
}

/// Five players with α = (1.1, 1.1, 1.1, 3.1, 3.1).
pub fn two_tiers() -> GameSpec {
    game(&[(11, 10), (11, 10), (11, 10), (31, 10), (31, 10)])
}

pub fn two_tiers_triangle() -> Network {
    network(5, 0, &[(1, 2), (1, 3), (2, 3)])
}

pub fn two_tiers_middle() -> Network {
    network(5, 0, &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (1, 4), (1, 5)])
}

pub fn two_tiers_complete() -> Network {
    Network::complete(5, 0, &EdgeSet::empty(5)).expect("complete graph")
}

/// Two players with α = (0, 1 + ε), ε = 1/2.
pub fn zero_and_three_halves() -> GameSpec {
    game(&[(0, 1), (3, 2)])
}

/// A game whose least and greatest stable networks coincide for `nonplayers > max α`.
pub fn uniform(players: usize, alpha: Rational) -> GameSpec {
    GameSpec::new(vec![alpha; players]).expect("uniform game is valid")
}
