//! TOML game and graph files.
//!
//! Node ids are one-based: players are `1..=n`, non-players `n+1..=n+m`.
//!
//! ```toml
//! nonplayers = [3, 4, 5]
//! original_edges = []
//! edges = [[1, 2], [1, 3], [1, 4], [3, 4], [2, 5]]
//! sustainers = [{ edge = [3, 4], player = 1 }]
//!
//! [[players]]
//! id = 1
//! alpha = "1"
//!
//! [[players]]
//! id = 2
//! alpha = "1/2"
//! ```

use hiders::rational::{format_rational, parse_rational};
use hiders::{EdgeSet, GameSpec, Network, Rational, RawNetwork};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::CliError;

/// Exact α: an integer or a `"p/q"` / decimal string. TOML floats are rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Alpha(pub Rational);

impl Serialize for Alpha {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Alpha {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Alpha, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        let raw = Raw::deserialize(d)
            .map_err(|_| serde::de::Error::custom("alpha must be an integer or a string such as \"3/2\""))?;
        match raw {
            Raw::Int(v) => Ok(Alpha(Rational::from_integer(v))),
            Raw::Text(t) => parse_rational(&t.replace('\u{2212}', "-")).map(Alpha).map_err(serde::de::Error::custom),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlayerEntry {
    pub id: usize,
    pub alpha: Alpha,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SustainerEntry {
    pub edge: [usize; 2],
    pub player: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameFile {
    #[serde(default)]
    pub nonplayers: Vec<usize>,
    #[serde(default)]
    pub original_edges: Vec<[usize; 2]>,
    /// Current edges; the original graph when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sustainers: Vec<SustainerEntry>,
    pub players: Vec<PlayerEntry>,
}

/// A network over the nodes of some game file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphFile {
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub sustainers: Vec<SustainerEntry>,
}

/// Game, node counts and original graph of a loaded file.
#[derive(Debug, Clone)]
pub struct Instance {
    pub game: GameSpec,
    pub nonplayers: usize,
    pub original: EdgeSet,
    /// The file's own network.
    pub network: Network,
}

fn zero_based(pairs: &[[usize; 2]], nodes: usize) -> Result<Vec<(usize, usize)>, CliError> {
    pairs
        .iter()
        .map(|&[a, b]| {
            for v in [a, b] {
                if v == 0 || v > nodes {
                    return Err(CliError::Ids(format!("node {v} is outside 1..={nodes}")));
                }
            }
            Ok((a - 1, b - 1))
        })
        .collect()
}

fn sustainers(entries: &[SustainerEntry], nodes: usize) -> Result<Vec<((usize, usize), usize)>, CliError> {
    entries
        .iter()
        .map(|s| {
            let e = zero_based(&[s.edge], nodes)?[0];
            let p = zero_based(&[[s.player, s.player]], nodes)?[0].0;
            Ok((e, p))
        })
        .collect()
}

impl GameFile {
    pub fn parse(text: &str) -> Result<GameFile, CliError> {
        toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("game files always serialize")
    }

    fn game(&self) -> Result<GameSpec, CliError> {
        let mut players = self.players.clone();
        players.sort_by_key(|p| p.id);
        if players.iter().enumerate().any(|(x, p)| p.id != x + 1) {
            return Err(CliError::Ids(format!("player ids must be 1..={}", players.len())));
        }
        Ok(GameSpec::new(players.iter().map(|p| p.alpha.0).collect())?)
    }

    /// Validated model objects.
    pub fn instance(&self) -> Result<Instance, CliError> {
        let game = self.game()?;
        let n = game.players();
        let mut nonplayers = self.nonplayers.clone();
        nonplayers.sort_unstable();
        if nonplayers.iter().enumerate().any(|(x, &v)| v != n + x + 1) {
            return Err(CliError::Ids(format!("non-player ids must be {}..={}", n + 1, n + nonplayers.len())));
        }
        let m = nonplayers.len();
        let nodes = n + m;
        let original_edges = zero_based(&self.original_edges, nodes)?;
        let edges = match &self.edges {
            Some(e) => zero_based(e, nodes)?,
            None => original_edges.clone(),
        };
        let raw = RawNetwork {
            players: n,
            nonplayers: m,
            original_edges,
            edges,
            sustainers: sustainers(&self.sustainers, nodes)?,
        };
        let network = hiders::validate_network(&raw, &game)?;
        let original = network.original().clone();
        Ok(Instance { game, nonplayers: m, original, network })
    }
}

impl GraphFile {
    pub fn parse(text: &str) -> Result<GraphFile, CliError> {
        toml::from_str(text).map_err(|e| CliError::Syntax(e.to_string()))
    }

    pub fn render(&self) -> String {
        toml::to_string(self).expect("graph files always serialize")
    }

    /// The network this file describes on top of `inst`'s original graph.
    pub fn network(&self, inst: &Instance) -> Result<Network, CliError> {
        let n = inst.game.players();
        let nodes = n + inst.nonplayers;
        let raw = RawNetwork {
            players: n,
            nonplayers: inst.nonplayers,
            original_edges: inst.original.edges().map(|e| e.ends()).collect(),
            edges: zero_based(&self.edges, nodes)?,
            sustainers: sustainers(&self.sustainers, nodes)?,
        };
        Ok(hiders::validate_network(&raw, &inst.game)?)
    }
}

/// Parses a game file into its network and game.
pub fn parse_game_file(text: &str) -> Result<(Network, GameSpec), CliError> {
    let inst = GameFile::parse(text)?.instance()?;
    Ok((inst.network, inst.game))
}

fn one_based(net: &Network) -> (Vec<[usize; 2]>, Vec<SustainerEntry>) {
    let edges = net.edges().edges().map(|e| [e.lo() + 1, e.hi() + 1]).collect();
    let sustainers = net
        .sustainers()
        .iter()
        .map(|(e, &p)| SustainerEntry { edge: [e.lo() + 1, e.hi() + 1], player: p + 1 })
        .collect();
    (edges, sustainers)
}

impl From<&Network> for GraphFile {
    fn from(net: &Network) -> GraphFile {
        let (edges, sustainers) = one_based(net);
        GraphFile { edges, sustainers }
    }
}

impl GameFile {
    /// The file describing `net` under `game`.
    pub fn from_model(game: &GameSpec, net: &Network) -> GameFile {
        let n = game.players();
        let (edges, sustainers) = one_based(net);
        GameFile {
            nonplayers: (n + 1..=n + net.nonplayers()).collect(),
            original_edges: net.original().edges().map(|e| [e.lo() + 1, e.hi() + 1]).collect(),
            edges: Some(edges),
            sustainers,
            players: game.alphas().iter().enumerate().map(|(i, &a)| PlayerEntry { id: i + 1, alpha: Alpha(a) }).collect(),
        }
    }
}
