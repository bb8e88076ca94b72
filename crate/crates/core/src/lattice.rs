//! Least, greatest, join and meet of pairwise stable networks, and exhaustive lattice summaries.

use crate::equilibria::{self, is_k_strong, is_pane, max_included_pans, min_including_k_pans, min_including_pans};
use crate::error::{Error, Result};
use crate::graph::EdgeSet;
use crate::model::{GameSpec, Network};
use crate::oracle::{self, greatest_element, least_element, FeasibleGraphSet};

/// Smallest pairwise stable network.
pub fn least_pans(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<Network> {
    min_including_pans(&Network::bare(game.players(), nonplayers, original)?, game)
}

/// Largest pairwise stable network.
pub fn greatest_pans(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<Network> {
    max_included_pans(&Network::complete(game.players(), nonplayers, original)?, game)
}

fn require_stable(game: &GameSpec, nets: [&Network; 2]) -> Result<()> {
    if !nets[0].same_frame(nets[1]) {
        return Err(Error::Mismatch);
    }
    for net in nets {
        let v = is_pane(net, game)?;
        if !v.stable {
            let label = v.condition.map_or("?", |c| c.label());
            return Err(Error::NotStable(format!("{:?} violates condition {label}", net.edges())));
        }
    }
    Ok(())
}

/// Smallest pairwise stable network containing both inputs.
pub fn join_pans(game: &GameSpec, s: &Network, t: &Network) -> Result<Network> {
    require_stable(game, [s, t])?;
    min_including_pans(&s.with_edges(&s.edges().union(t.edges()))?, game)
}

/// Largest pairwise stable network contained in both inputs.
pub fn meet_pans(game: &GameSpec, s: &Network, t: &Network) -> Result<Network> {
    require_stable(game, [s, t])?;
    let both = s.edges().intersection(t.edges());
    equilibria::max_included_raw(s.players(), s.nonplayers(), s.original(), &both, game, &Default::default())
        .map(|(n, _)| n)
}

/// Outcome of the lattice checks on an enumerated set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeChecks {
    /// Every pair has a least upper bound in the set.
    pub joins_exist: bool,
    /// Every pair has a greatest lower bound in the set.
    pub meets_exist: bool,
    pub absorption: bool,
    /// The join algorithm returns the least upper bound for every pair.
    pub join_algorithm: bool,
    /// The meet algorithm returns the greatest lower bound (checked for k = 1 only).
    pub meet_algorithm: bool,
    /// Every element is also stable at every smaller strength.
    pub nested: bool,
}

impl LatticeChecks {
    pub fn all(&self) -> bool {
        self.joins_exist && self.meets_exist && self.absorption && self.join_algorithm && self.meet_algorithm && self.nested
    }
}

#[derive(Debug, Clone)]
pub struct LatticeSummary {
    pub strength: usize,
    pub least: Network,
    pub greatest: Network,
    /// All k-strong stable networks, by edge count then edge list.
    pub elements: Vec<Network>,
    /// Cover relation as index pairs `(lower, upper)` into `elements`.
    pub hasse: Vec<(usize, usize)>,
    pub checks: LatticeChecks,
}

/// Enumerates the k-strong stable networks and checks the lattice laws.
pub fn enumerate_lattice(game: &GameSpec, nonplayers: usize, original: &EdgeSet, k: usize) -> Result<LatticeSummary> {
    equilibria::check_strength(k, game.players())?;
    let set = oracle::enumerate_feasible_graphs(game, nonplayers, original)?;
    summarize(&set, k)
}

/// Lattice summary at strength `k` from an existing enumeration.
pub fn summarize(set: &FeasibleGraphSet, k: usize) -> Result<LatticeSummary> {
    let game = &set.game;
    let mut elements: Vec<Network> = set.stable(k).into_iter().map(|g| g.network.clone()).collect();
    elements.sort_by_key(|n| (n.edges().len(), n.edges().edges().collect::<Vec<_>>()));
    for net in &elements {
        if !is_k_strong(net, game, k)?.stable {
            return Err(Error::OracleDisagreement(format!("{:?} at k={k}", net.edges())));
        }
    }
    let bare = Network::bare(game.players(), set.nonplayers, &set.original)?;
    let least = min_including_k_pans(&bare, game, k)?;
    let greatest = greatest_pans(game, set.nonplayers, &set.original)?;

    let edge_sets: Vec<&EdgeSet> = elements.iter().map(Network::edges).collect();
    let lub = |x: &EdgeSet, y: &EdgeSet| {
        let up: Vec<&EdgeSet> = edge_sets.iter().copied().filter(|z| x.is_subset(z) && y.is_subset(z)).collect();
        least_element(&up).cloned()
    };
    let glb = |x: &EdgeSet, y: &EdgeSet| {
        let down: Vec<&EdgeSet> = edge_sets.iter().copied().filter(|z| z.is_subset(x) && z.is_subset(y)).collect();
        greatest_element(&down).cloned()
    };
    let mut checks = LatticeChecks {
        joins_exist: true,
        meets_exist: true,
        absorption: true,
        join_algorithm: true,
        meet_algorithm: true,
        nested: true,
    };
    for (a, x) in elements.iter().enumerate() {
        for y in &elements[a..] {
            let (up, down) = (lub(x.edges(), y.edges()), glb(x.edges(), y.edges()));
            checks.joins_exist &= up.is_some();
            checks.meets_exist &= down.is_some();
            if let (Some(up), Some(down)) = (&up, &down) {
                checks.absorption &= lub(x.edges(), down).as_ref() == Some(x.edges())
                    && glb(x.edges(), up).as_ref() == Some(x.edges());
            }
            checks.join_algorithm &= Some(join_pans(game, x, y)?.edges().clone()) == up;
            if k == 1 {
                checks.meet_algorithm &= Some(meet_pans(game, x, y)?.edges().clone()) == down;
            }
        }
        checks.nested &= (1..k).all(|j| set.find(x.edges()).is_some_and(|g| g.is_strong(j)));
    }
    let in_set = |n: &Network| edge_sets.contains(&n.edges());
    if !in_set(&least) || !in_set(&greatest) {
        return Err(Error::OracleDisagreement(format!(
            "least {:?} or greatest {:?} missing from the k={k} set",
            least.edges(),
            greatest.edges()
        )));
    }
    let hasse = hasse_diagram(&edge_sets);
    Ok(LatticeSummary { strength: k, least, greatest, elements, hasse, checks })
}

/// Transitive reduction of strict inclusion.
pub fn hasse_diagram(sets: &[&EdgeSet]) -> Vec<(usize, usize)> {
    let below = |a: usize, b: usize| a != b && sets[a].is_subset(sets[b]);
    let mut cover = Vec::new();
    for a in 0..sets.len() {
        for b in 0..sets.len() {
            if below(a, b) && !(0..sets.len()).any(|c| below(a, c) && below(c, b)) {
                cover.push((a, b));
            }
        }
    }
    cover
}
