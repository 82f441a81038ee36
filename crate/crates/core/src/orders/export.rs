//! DOT and JSON renderings of a poset. Node order is the canonical element
//! order, so identical posets render byte-identically.

use std::fmt::Write;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{KpfError, Result};
use crate::structures::{Representation, Structure};

use super::poset::{mobius, rank_function, Poset};

/// Which encoding labels the elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LabelStyle {
    Lusztig,
    #[default]
    Kostant,
    Tesler,
}

impl LabelStyle {
    fn representation(self) -> Representation {
        match self {
            LabelStyle::Lusztig => Representation::Lusztig,
            LabelStyle::Kostant => Representation::Kostant,
            LabelStyle::Tesler => Representation::Tesler,
        }
    }
}

impl FromStr for LabelStyle {
    type Err = KpfError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lusztig" => Ok(LabelStyle::Lusztig),
            "kostant" => Ok(LabelStyle::Kostant),
            "tesler" => Ok(LabelStyle::Tesler),
            other => Err(KpfError::InvalidInput(format!(
                "unknown label style `{other}`"
            ))),
        }
    }
}

fn label(p: &Poset, x: usize, style: LabelStyle) -> String {
    Structure::from_kostant(&p.elements[x], style.representation()).to_json()
}

/// One node per element, one edge per cover drawn from lower to upper.
pub fn poset_to_dot(p: &Poset, style: LabelStyle) -> String {
    let mut out = String::new();
    writeln!(out, "digraph poset {{").unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=box];").unwrap();
    for x in 0..p.len() {
        let text = label(p, x, style)
            .replace('\\', "\\\\")
            .replace('"', "\\\"");
        writeln!(out, "  n{x} [label=\"{text}\"];").unwrap();
    }
    for &(lo, hi) in &p.covers {
        writeln!(out, "  n{lo} -> n{hi};").unwrap();
    }
    writeln!(out, "}}").unwrap();
    out
}

fn big_to_json(v: &num_bigint::BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

/// `{"height", "kind", "elements", "covers", "ranks", "mobius", ...}`;
/// `ranks` is `null` for unranked posets.
pub fn poset_to_json(p: &Poset, style: LabelStyle) -> Value {
    let elements: Vec<Value> = (0..p.len())
        .map(|x| serde_json::from_str(&label(p, x, style)).expect("labels are JSON"))
        .collect();
    let ranks = rank_function(p).ok();
    let mu = mobius(p);
    json!({
        "height": p.height.entries(),
        "kind": p.kind.name(),
        "elements": elements,
        "covers": p.covers.iter().map(|&(a, b)| [a, b]).collect::<Vec<_>>(),
        "ranks": ranks,
        "mobius": mu.values.iter().map(big_to_json).collect::<Vec<_>>(),
        "synthetic_bottom": mu.synthetic_bottom(),
        "ranked": p.ranked,
        "unique_min": p.unique_min,
        "unique_max": p.unique_max,
    })
}
