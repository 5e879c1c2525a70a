//! JSON encodings of library results. Elements are always given by label.

use crosscut_core::complex::SimplicialComplex;
use crosscut_core::finite_space::{Certificate, Side, Step, Verdict};
use crosscut_core::fixed_points::FppResult;
use crosscut_core::homology::HomologySummary;
use crosscut_core::{ElementSet, FinitePoset, MonotoneMap};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

pub const SCHEMA: u32 = 1;

pub fn set_json(p: &FinitePoset, s: &ElementSet) -> Value {
    json!(p.set_labels(s))
}

/// `{label: image label}` for a self-map of `p`.
pub fn map_json(p: &FinitePoset, f: &MonotoneMap) -> Value {
    mapping_json(p, p, f.values())
}

pub fn mapping_json(source: &FinitePoset, target: &FinitePoset, values: &[usize]) -> Value {
    let mut m = Map::new();
    for (x, &y) in values.iter().enumerate() {
        m.insert(source.label(x).to_string(), json!(target.label(y)));
    }
    Value::Object(m)
}

fn integer(n: &BigInt) -> Value {
    let s = n.to_string();
    s.parse::<i64>()
        .map(Value::from)
        .unwrap_or(Value::String(s))
}

pub fn homology_json(h: &HomologySummary) -> Value {
    let torsion: Vec<Vec<Value>> = h
        .torsion
        .iter()
        .map(|t| t.iter().map(integer).collect())
        .collect();
    json!({
        "reduced": h.reduced,
        "betti": h.betti,
        "torsion": torsion,
        "betti_minus_one": h.betti_minus_one,
    })
}

pub fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Unknown => "unknown",
    }
}

pub fn certificate_json(p: &FinitePoset, c: &Certificate) -> Value {
    let trail: Vec<Value> = c
        .trail
        .iter()
        .map(|step| match step {
            Step::Removed { element, side } => json!({
                "remove": p.label(*element),
                "side": match side { Side::Down => "down", Side::Up => "up" },
            }),
            Step::Obstruction {
                dimension,
                betti,
                torsion,
            } => json!({
                "obstruction": {
                    "dimension": dimension,
                    "betti": betti,
                    "torsion": torsion.iter().map(integer).collect::<Vec<_>>(),
                }
            }),
        })
        .collect();
    json!({
        "verdict": verdict_name(c.verdict),
        "trail": trail,
        "remaining": set_json(p, &c.remaining),
    })
}

pub fn fpp_json(p: &FinitePoset, r: &FppResult) -> Value {
    json!({
        "has_fpp": r.has_fpp,
        "searched": r.searched,
        "witness": r.witness.as_ref().map(|w| map_json(p, w)),
    })
}

pub fn complex_json(k: &SimplicialComplex) -> Value {
    json!({
        "vertices": k.labels(),
        "facets": k.canonical_form(),
    })
}

pub fn poset_json(p: &FinitePoset) -> Value {
    let covers: Vec<[&str; 2]> = p
        .covers()
        .iter()
        .map(|&(a, b)| [p.label(a), p.label(b)])
        .collect();
    json!({ "elements": p.labels(), "covers": covers })
}
