//! The hiders' game: players pick links to sit next to well-connected nodes while keeping
//! their own degree low.
//!
//! Player `i` earns `Σ_{j ∈ N(i)} deg(j) − α_i · deg(i)`. Non-players never act, but a player
//! adjacent to two non-players may link them. This crate verifies stability, builds the least
//! and greatest stable networks, evaluates closed forms and welfare ratios, and brute-forces
//! small instances as ground truth.

pub mod analytics;
pub mod detection;
pub mod equilibria;
pub mod error;
pub mod graph;
pub mod instances;
pub mod lattice;
pub mod model;
pub mod oracle;
pub mod rational;
mod search;

pub use error::{Error, Result};
pub use graph::{Edge, EdgeSet};
pub use model::{validate_network, GameSpec, Network, RawNetwork, StrategyProfile, UtilityVector};
pub use rational::{Extended, Rational};
