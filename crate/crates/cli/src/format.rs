//! Line-based text formats for posets and simplicial complexes.
//!
//! Posets:
//!
//! ```text
//! # comment
//! elements: a b c
//! a < b
//! a < c < d
//! ```
//!
//! The `elements:` line is optional. Without it, elements are numbered in
//! order of first appearance. Relations may be any generating pairs.
//!
//! Complexes hold one `facet: v1 v2 ...` line per facet.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crosscut_core::complex::SimplicialComplex;
use crosscut_core::{ElementSet, FinitePoset};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormatError {
    /// 1-based line number; 0 when the problem is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            f.write_str(&self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for FormatError {}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError {
        line,
        message: message.into(),
    }
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

fn check_label(label: &str, line: usize) -> Result<(), FormatError> {
    if label.is_empty() {
        return Err(err(line, "empty label"));
    }
    if label.contains(['<', '#']) || label.chars().any(char::is_whitespace) {
        return Err(err(line, format!("invalid label `{label}`")));
    }
    Ok(())
}

#[derive(Default)]
struct Labels {
    names: Vec<String>,
    index: BTreeMap<String, usize>,
    declared: bool,
}

impl Labels {
    fn add(&mut self, label: &str, line: usize) -> Result<usize, FormatError> {
        check_label(label, line)?;
        if self.index.contains_key(label) {
            return Err(err(line, format!("element `{label}` listed twice")));
        }
        self.index.insert(label.to_string(), self.names.len());
        self.names.push(label.to_string());
        Ok(self.names.len() - 1)
    }

    fn lookup(&mut self, label: &str, line: usize) -> Result<usize, FormatError> {
        if let Some(&i) = self.index.get(label) {
            return Ok(i);
        }
        if self.declared {
            return Err(err(line, format!("unknown element `{label}`")));
        }
        self.add(label, line)
    }
}

pub fn parse_poset(text: &str) -> Result<FinitePoset, FormatError> {
    let mut labels = Labels::default();
    let mut pairs = Vec::new();
    let mut seen_relation = false;
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("elements:") {
            if seen_relation {
                return Err(err(n, "`elements:` must come before the relations"));
            }
            labels.declared = true;
            for l in rest.split_whitespace() {
                labels.add(l, n)?;
            }
            continue;
        }
        let parts: Vec<&str> = line.split('<').map(str::trim).collect();
        if parts.len() < 2 {
            return Err(err(n, format!("expected `a < b`, found `{line}`")));
        }
        seen_relation = true;
        let mut prev = labels.lookup(parts[0], n)?;
        for part in &parts[1..] {
            let next = labels.lookup(part, n)?;
            pairs.push((prev, next));
            prev = next;
        }
    }
    FinitePoset::from_pairs(labels.names, pairs).map_err(|e| err(0, e.to_string()))
}

/// Elements line followed by the cover relations in id order.
pub fn write_poset(p: &FinitePoset) -> String {
    let mut out = String::from("elements:");
    for l in p.labels() {
        out.push(' ');
        out.push_str(l);
    }
    out.push('\n');
    for &(a, b) in p.covers() {
        let _ = writeln!(out, "{} < {}", p.label(a), p.label(b));
    }
    out
}

pub fn parse_complex(text: &str) -> Result<SimplicialComplex, FormatError> {
    let mut labels = Labels::default();
    let mut facets: Vec<Vec<usize>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let n = i + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let Some(rest) = line.strip_prefix("facet:") else {
            return Err(err(
                n,
                format!("expected `facet: v1 v2 ...`, found `{line}`"),
            ));
        };
        let mut facet = Vec::new();
        for v in rest.split_whitespace() {
            let id = labels.lookup(v, n)?;
            if facet.contains(&id) {
                return Err(err(n, format!("vertex `{v}` repeated in a facet")));
            }
            facet.push(id);
        }
        if facet.is_empty() {
            return Err(err(n, "facet without vertices"));
        }
        facets.push(facet);
    }
    let m = labels.names.len();
    let faces = facets
        .into_iter()
        .map(|f| ElementSet::from_ids(m, f))
        .collect();
    SimplicialComplex::from_faces(labels.names, faces).map_err(|e| err(0, e.to_string()))
}

pub fn write_complex(k: &SimplicialComplex) -> String {
    let mut out = String::new();
    for f in k.facets() {
        out.push_str("facet:");
        for v in f.iter() {
            out.push(' ');
            out.push_str(&k.labels()[v]);
        }
        out.push('\n');
    }
    out
}
