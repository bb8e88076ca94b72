//! JSON report layouts. Nodes are one-based; rationals are `"p/q"` strings.

use hiders::equilibria::StabilityVerdict;
use hiders::rational::format_rational;
use hiders::{EdgeSet, Extended, GameSpec, Network, Rational};
use serde::Serialize;
use serde_json::Value;

pub type Pair = [usize; 2];

pub fn rat(r: &Rational) -> String {
    format_rational(r)
}

pub fn ext(e: &Extended) -> String {
    e.to_string()
}

pub fn edges(set: &EdgeSet) -> Vec<Pair> {
    set.edges().map(|e| [e.lo() + 1, e.hi() + 1]).collect()
}

pub fn nodes(items: impl IntoIterator<Item = usize>) -> Vec<usize> {
    items.into_iter().map(|v| v + 1).collect()
}

#[derive(Debug, Serialize)]
pub struct SustainerReport {
    pub edge: Pair,
    pub player: usize,
}

#[derive(Debug, Serialize)]
pub struct NetworkReport {
    pub edges: Vec<Pair>,
    pub sustainers: Vec<SustainerReport>,
    pub utilities: Vec<String>,
    pub welfare: String,
}

impl NetworkReport {
    pub fn new(net: &Network, game: &GameSpec) -> NetworkReport {
        let u = net.utility(game);
        NetworkReport {
            edges: edges(net.edges()),
            sustainers: net
                .sustainers()
                .iter()
                .map(|(e, &p)| SustainerReport { edge: [e.lo() + 1, e.hi() + 1], player: p + 1 })
                .collect(),
            utilities: u.values.iter().map(rat).collect(),
            welfare: rat(&u.welfare),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub coalition: Vec<usize>,
    pub added: Vec<Pair>,
    pub deleted: Vec<Pair>,
    pub deltas: Vec<String>,
}

#[derive(Debug, Serialize)]
pub struct VerdictReport {
    pub stable: bool,
    pub class: hiders::equilibria::StabilityClass,
    pub strength: usize,
    pub condition: Option<&'static str>,
    pub witness: Option<WitnessReport>,
}

impl From<&StabilityVerdict> for VerdictReport {
    fn from(v: &StabilityVerdict) -> VerdictReport {
        VerdictReport {
            stable: v.stable,
            class: v.class,
            strength: v.strength,
            condition: v.condition.map(|c| c.label()),
            witness: v.witness.as_ref().map(|w| WitnessReport {
                coalition: nodes(w.coalition.iter().copied()),
                added: w.added.iter().map(|e| [e.lo() + 1, e.hi() + 1]).collect(),
                deleted: w.deleted.iter().map(|e| [e.lo() + 1, e.hi() + 1]).collect(),
                deltas: w.deltas.iter().map(rat).collect(),
            }),
        }
    }
}

/// Renders a JSON value as indented `key: value` lines.
pub fn to_text(value: &Value) -> String {
    let mut out = String::new();
    write_text(value, 0, &mut out);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(items) if items.iter().all(|x| matches!(x, Value::Number(_) | Value::String(_))) => {
            Some(format!("[{}]", items.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        Value::Array(items) if items.iter().all(|x| scalar(x).is_some() && x.is_array()) => {
            Some(format!("[{}]", items.iter().map(|x| scalar(x).unwrap()).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn write_text(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_text(v, depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (x, v) in items.iter().enumerate() {
                match scalar(v) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}- [{x}]\n"));
                        write_text(v, depth + 1, out);
                    }
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}
