//! Infiltration diagnostics on unlabelled graphs.

use std::collections::BTreeSet;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::analytics::greatest_closed_form;
use crate::error::{Error, Result};
use crate::graph::{bits, EdgeSet};
use crate::model::{GameSpec, Network};
use crate::rational::Rational;

/// Exponent of the natural-graph prior used when none is given.
pub fn default_beta() -> Rational {
    Rational::new(5, 2)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DetectionReport {
    /// Within the edit tolerance of one clique plus isolated nodes.
    pub matches_signature: bool,
    pub clique: BTreeSet<usize>,
    /// Degree-zero nodes outside the clique.
    pub isolated: BTreeSet<usize>,
    /// Nodes that are neither.
    pub other: BTreeSet<usize>,
    /// `x^-β` for clique size `x`; `1` when there is no clique of two or more nodes.
    pub prior_probability: f64,
    /// Isolated nodes of a matching graph. Empty on a mismatch, which says nothing either way.
    pub suspected_players: BTreeSet<usize>,
    /// Edge insertions plus deletions needed to reach the exact signature.
    pub tolerance_used: usize,
}

/// Edits needed to turn `edges` into a clique on `clique` with every other node isolated.
fn edits(edges: &EdgeSet, clique: u64) -> usize {
    let size = clique.count_ones() as usize;
    let inside = bits(clique).map(|v| (edges.neighbors(v) & clique).count_ones() as usize).sum::<usize>() / 2;
    let missing = size * size.saturating_sub(1) / 2 - inside;
    missing + edges.len() - inside
}

/// The prior of a clique of `size` nodes arising without design.
pub fn clique_prior(size: usize, beta: Rational) -> f64 {
    if size < 2 {
        return 1.0;
    }
    (size as f64).powf(-beta.to_f64().expect("finite"))
}

/// Tests whether `graph` looks like a greatest stable network, and if so flags its isolated nodes.
///
/// The candidate clique is the degree-ordered prefix (ties by index) that needs the fewest edits.
pub fn detect_infiltration(graph: &EdgeSet, beta: Rational, slack: usize) -> Result<DetectionReport> {
    if beta <= Rational::from_integer(2) || beta >= Rational::from_integer(3) {
        return Err(Error::BetaOutOfRange(beta.to_string()));
    }
    let nodes = graph.node_count();
    let mut order: Vec<usize> = (0..nodes).collect();
    order.sort_by(|&a, &b| graph.degree(b).cmp(&graph.degree(a)).then(a.cmp(&b)));
    let (mut best_mask, mut best_edits) = (0u64, edits(graph, 0));
    let mut mask = 0u64;
    for &v in order.iter() {
        mask |= 1 << v;
        if mask.count_ones() < 2 {
            continue;
        }
        let e = edits(graph, mask);
        if e < best_edits || e == best_edits && mask.count_ones() > best_mask.count_ones() {
            (best_mask, best_edits) = (mask, e);
        }
    }
    let clique: BTreeSet<usize> = bits(best_mask).collect();
    let (isolated, other): (BTreeSet<usize>, BTreeSet<usize>) =
        (0..nodes).filter(|v| !clique.contains(v)).partition(|&v| graph.degree(v) == 0);
    let matches_signature = best_edits <= slack;
    Ok(DetectionReport {
        matches_signature,
        prior_probability: clique_prior(clique.len(), beta),
        suspected_players: if matches_signature { isolated.clone() } else { BTreeSet::new() },
        clique,
        isolated,
        other,
        tolerance_used: best_edits,
    })
}

/// The greatest stable network as the players would build it from the sorted-α recipe.
pub fn predict_equilibrium_shape(game: &GameSpec, nonplayers: usize, original: &EdgeSet) -> Result<Network> {
    Ok(greatest_closed_form(game, nonplayers, original)?.predicted)
}
