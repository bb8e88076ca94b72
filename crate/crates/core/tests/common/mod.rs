#![allow(dead_code)]

pub mod brute;

use hiders::{Edge, EdgeSet, GameSpec, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn r(p: i64, q: i64) -> Rational {
    Rational::new(p, q)
}

/// A random instance: game, non-player count, original graph.
#[derive(Debug, Clone)]
pub struct Instance {
    pub game: GameSpec,
    pub nonplayers: usize,
    pub original: EdgeSet,
}

impl Instance {
    pub fn nodes(&self) -> usize {
        self.game.players() + self.nonplayers
    }

    pub fn variable_edges(&self) -> usize {
        let v = self.nodes();
        v * (v - 1) / 2 - self.original.len()
    }

    pub fn brute(&self) -> brute::Brute {
        brute::Brute::new(
            self.game.players(),
            self.nonplayers,
            self.game.alphas().to_vec(),
            self.original.edges().map(|e| e.ends()).collect(),
        )
    }
}

pub fn random_alpha(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    let q = rng.gen_range(1..=4);
    Rational::new(rng.gen_range(0..=max * q), q)
}

pub fn random_original(rng: &mut ChaCha8Rng, players: usize, nonplayers: usize, p: f64) -> EdgeSet {
    let nodes = players + nonplayers;
    let mut e0 = EdgeSet::empty(nodes);
    for a in players..nodes {
        for b in a + 1..nodes {
            if rng.gen_bool(p) {
                e0.insert(Edge::new(a, b));
            }
        }
    }
    e0
}

/// Arbitrary α in `[0, 8]`, random original graph.
pub fn random_instance(rng: &mut ChaCha8Rng, max_players: usize, max_nonplayers: usize) -> Instance {
    let n = rng.gen_range(2..=max_players);
    let m = rng.gen_range(0..=max_nonplayers);
    let alphas = (0..n).map(|_| random_alpha(rng, 8)).collect();
    let e0 = random_original(rng, n, m, 0.4);
    Instance { game: GameSpec::new(alphas).unwrap(), nonplayers: m, original: e0 }
}

/// Common α, small enough for the exhaustive search.
pub fn random_equal_alpha(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(0..=if n == 4 { 2 } else { 3 });
    let a = random_alpha(rng, (n + m) as i64 + 1);
    let e0 = if rng.gen_bool(0.5) { random_original(rng, n, m, 0.4) } else { EdgeSet::empty(n + m) };
    Instance { game: GameSpec::new(vec![a; n]).unwrap(), nonplayers: m, original: e0 }
}

/// First α arbitrary, the rest one common value below one.
pub fn random_one_distinct(rng: &mut ChaCha8Rng) -> Instance {
    let n = rng.gen_range(2..=4);
    let m = rng.gen_range(0..=if n == 4 { 2 } else { 3 });
    let low = Rational::new(rng.gen_range(0..4), 4);
    let mut alphas = vec![low; n];
    alphas[0] = if rng.gen_bool(0.3) {
        Rational::from_integer((n + m) as i64 - 1)
    } else {
        random_alpha(rng, (n + m) as i64 + 1)
    };
    let e0 = if rng.gen_bool(0.5) { random_original(rng, n, m, 0.4) } else { EdgeSet::empty(n + m) };
    Instance { game: GameSpec::new(alphas).unwrap(), nonplayers: m, original: e0 }
}

/// Named worked instances small enough to enumerate.
pub fn fixtures() -> Vec<(&'static str, Instance)> {
    use hiders::instances;
    let (sustained_tie, _) = instances::sustained_tie();
    let plain = |game: GameSpec, m: usize| {
        let nodes = game.players() + m;
        Instance { game, nonplayers: m, original: EdgeSet::empty(nodes) }
    };
    vec![
        ("sustained tie", plain(sustained_tie, 3)),
        ("empty stable pair", plain(instances::empty_stable_pair(), 0)),
        ("four players at 3/2", plain(instances::four_at_three_halves(), 0)),
        ("five players, two tiers", plain(instances::two_tiers(), 0)),
        ("zero and 3/2", plain(instances::zero_and_three_halves(), 0)),
        ("two players, two non-players", plain(GameSpec::from_pairs(&[(5, 2), (10, 1)]).unwrap(), 2)),
        ("three at 1/2 with a non-player", plain(instances::uniform(3, r(1, 2)), 1)),
        (
            "tied original edge",
            Instance {
                game: GameSpec::from_pairs(&[(2, 1), (3, 1), (1, 4)]).unwrap(),
                nonplayers: 2,
                original: instances::edge_set(5, &[(4, 5)]),
            },
        ),
    ]
}

/// A random feasible network on `inst`: random edges, then unsupported non-player ties removed.
pub fn random_network(rng: &mut ChaCha8Rng, inst: &Instance, density: f64) -> hiders::Network {
    let n = inst.game.players();
    let nodes = inst.nodes();
    let mut edges = inst.original.clone();
    for a in 0..nodes {
        for b in a + 1..nodes {
            if rng.gen_bool(density) {
                edges.insert(Edge::new(a, b));
            }
        }
    }
    let players = hiders::graph::low_bits(n);
    loop {
        let doomed: Vec<Edge> = edges
            .edges()
            .filter(|e| e.lo() >= n && !inst.original.contains(*e))
            .filter(|e| edges.neighbors(e.lo()) & edges.neighbors(e.hi()) & players == 0)
            .collect();
        if doomed.is_empty() {
            break;
        }
        for e in doomed {
            edges.remove(e);
        }
    }
    hiders::Network::from_edge_sets(n, inst.nonplayers, &inst.original, &edges).unwrap()
}
