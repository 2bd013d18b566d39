//! File formats: lattice JSON, labeling JSON, ideal text and DOT.
//!
//! Lattice JSON is `{"n": 3, "sets": [[], [1], ...]}` with 1-based atoms.
//! Labeling JSON is `{"lattice": <lattice JSON or path>, "labels": [{"set":
//! [...], "monomial": "..."}]}`. Ideal text holds one monomial per line; `#`
//! starts a comment and blank lines are skipped.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::{Labeling, MonomialIdeal};
use crate::lattice::{AtomSet, AtomicLattice};
use crate::monomial::Monomial;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeDoc {
    pub n: usize,
    pub sets: Vec<AtomSet>,
}

impl LatticeDoc {
    pub fn from_lattice(l: &AtomicLattice) -> LatticeDoc {
        LatticeDoc {
            n: l.atom_count(),
            sets: l.sets().to_vec(),
        }
    }

    pub fn to_lattice(&self) -> Result<AtomicLattice> {
        AtomicLattice::from_sets(self.n, self.sets.iter().copied())
    }
}

pub fn lattice_from_json(text: &str) -> Result<AtomicLattice> {
    serde_json::from_str::<LatticeDoc>(text)?.to_lattice()
}

/// Canonical lattice JSON: sets by size, then bits.
pub fn lattice_to_json(l: &AtomicLattice) -> String {
    let doc = LatticeDoc::from_lattice(l);
    let sets: Vec<String> = doc
        .sets
        .iter()
        .map(|s| serde_json::to_string(s).expect("atom lists serialize"))
        .collect();
    format!("{{\n  \"n\": {},\n  \"sets\": [{}]\n}}\n", doc.n, sets.join(", "))
}

/// Where a labeling finds its lattice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LatticeRef {
    Inline(LatticeDoc),
    Path(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelEntry {
    pub set: AtomSet,
    pub monomial: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelingDoc {
    pub lattice: LatticeRef,
    pub labels: Vec<LabelEntry>,
}

/// Reads a labeling; `load` turns a lattice path into lattice JSON text.
pub fn labeling_from_json(
    text: &str,
    load: impl FnOnce(&str) -> Result<String>,
) -> Result<(AtomicLattice, Labeling)> {
    let doc: LabelingDoc = serde_json::from_str(text)?;
    let lattice = match &doc.lattice {
        LatticeRef::Inline(d) => d.to_lattice()?,
        LatticeRef::Path(p) => lattice_from_json(&load(p)?)?,
    };
    let labels = doc
        .labels
        .iter()
        .map(|e| Ok((e.set, Monomial::parse(&e.monomial)?)))
        .collect::<Result<Vec<_>>>()?;
    let labeling = Labeling::new(&lattice, labels)?;
    Ok((lattice, labeling))
}

/// Labeling JSON with the lattice inlined and labels in canonical order.
pub fn labeling_to_json(lattice: &AtomicLattice, labeling: &Labeling) -> String {
    let doc = LabelingDoc {
        lattice: LatticeRef::Inline(LatticeDoc::from_lattice(lattice)),
        labels: labeling
            .iter()
            .map(|(s, m)| LabelEntry {
                set: s,
                monomial: m.to_string(),
            })
            .collect(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("labeling serializes");
    out.push('\n');
    out
}

/// One generator per line. Byte offsets in errors refer to the whole text.
pub fn ideal_from_text(text: &str) -> Result<MonomialIdeal> {
    let mut gens = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        let trimmed = content.trim();
        if !trimmed.is_empty() {
            let lead = content.len() - content.trim_start().len();
            let m = Monomial::parse(trimmed).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: offset + lead + o,
                    message,
                },
                other => other,
            })?;
            gens.push(m);
        }
        offset += line.len();
    }
    Ok(MonomialIdeal::new(gens))
}

pub fn ideal_to_text(gens: &[Monomial]) -> String {
    gens.iter().map(|m| format!("{m}\n")).collect()
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// Leave out the bottom element and its edges.
    pub suppress_bottom: bool,
    /// Node labels aligned with `lattice.sets()`; the atom set is used when
    /// absent.
    pub labels: Option<Vec<String>>,
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Hasse diagram with the bottom at the bottom and one rank per set size.
pub fn hasse_dot(lattice: &AtomicLattice, opts: &DotOptions) -> String {
    let sets = lattice.sets();
    let keep = |s: AtomSet| !(opts.suppress_bottom && s.is_empty());
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for (i, &s) in sets.iter().enumerate() {
        if !keep(s) {
            continue;
        }
        let label = match &opts.labels {
            Some(l) => l[i].clone(),
            None => s.to_string(),
        };
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", dot_escape(&label));
    }
    let max_rank = sets.iter().map(|s| s.len()).max().unwrap_or(0);
    for rank in 0..=max_rank {
        let ids: Vec<String> = sets
            .iter()
            .enumerate()
            .filter(|(_, s)| s.len() == rank && keep(**s))
            .map(|(i, _)| format!("n{i}"))
            .collect();
        if ids.len() > 1 {
            let _ = writeln!(out, "  {{ rank=same; {}; }}", ids.join("; "));
        }
    }
    for (p, q) in lattice.cover_pairs() {
        if keep(p) {
            let i = lattice.index_of(p).expect("member");
            let j = lattice.index_of(q).expect("member");
            let _ = writeln!(out, "  n{i} -> n{j} [arrowhead=none];");
        }
    }
    out.push_str("}\n");
    out
}

/// Cover pairs `(lower, upper)` as written by [`hasse_dot`], recovered from
/// its output; used to check structure without caring about layout.
pub fn dot_edges(dot: &str) -> Vec<(usize, usize)> {
    dot.lines()
        .filter_map(|l| {
            let l = l.trim();
            let (a, rest) = l.split_once(" -> ")?;
            let b = rest.split_whitespace().next()?.trim_end_matches(';');
            Some((a.strip_prefix('n')?.parse().ok()?, b.strip_prefix('n')?.parse().ok()?))
        })
        .collect()
}
