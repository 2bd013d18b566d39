//! Reference fixtures: small lattices, labelings and ideals with known
//! outcomes, stored as JSON data and checked end to end.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use lcmlat::coord::classify;
use lcmlat::ideal::{ideal_from_labeling, lcm_lattice, weak_ideal, Labeling, MonomialIdeal};
use lcmlat::io::{LabelEntry, LatticeDoc};
use lcmlat::iso::is_isomorphic;
use lcmlat::labeling_c::{check_cover_strength, check_interval_hypothesis, check_pair_condition, labeling_c_named};
use lcmlat::superatomic::{enumerate_super_atomic, is_super_atomic, is_super_atomic_via_supp, lofn_covers};
use lcmlat::{AtomSet, AtomicLattice, Monomial};
use serde::Deserialize;

pub const BUNDLED: &[(&str, &str)] = &[
    ("three-generator-ideal", include_str!("../fixtures/three-generator-ideal.json")),
    ("plain-not-strong", include_str!("../fixtures/plain-not-strong.json")),
    ("weak-not-plain", include_str!("../fixtures/weak-not-plain.json")),
    ("boolean-cube-weak", include_str!("../fixtures/boolean-cube-weak.json")),
    ("three-atom-super-atomic", include_str!("../fixtures/three-atom-super-atomic.json")),
    ("four-atom-super-atomic", include_str!("../fixtures/four-atom-super-atomic.json")),
    ("support-labeling-strong", include_str!("../fixtures/support-labeling-strong.json")),
    ("support-labeling-weak", include_str!("../fixtures/support-labeling-weak.json")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fixture {
    pub id: String,
    #[serde(default)]
    pub note: String,
    pub ideal: Option<Vec<String>>,
    pub lattice: Option<LatticeDoc>,
    pub labels: Option<Vec<LabelEntry>>,
    pub support_labeling: Option<Vec<String>>,
    #[serde(default)]
    pub expect: Expect,
    pub enumerate: Option<Enumerate>,
    pub cover: Option<Cover>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expect {
    pub lcm_elements: Option<Vec<String>>,
    pub lcm_covers: Option<Vec<[String; 2]>>,
    pub plain_ideal: Option<Vec<String>>,
    pub weak_ideal: Option<Vec<String>>,
    pub plain_lcm_size: Option<usize>,
    #[serde(rename = "satisfies_A1A2")]
    pub satisfies_a1a2: Option<bool>,
    #[serde(rename = "satisfies_C1C2")]
    pub satisfies_c1c2: Option<bool>,
    pub is_coordinatization: Option<bool>,
    pub is_strong: Option<bool>,
    pub is_weak: Option<bool>,
    pub super_atomic: Option<bool>,
    pub interval_hypothesis: Option<bool>,
    pub pair_condition: Option<bool>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Enumerate {
    pub n: usize,
    pub families: Vec<Vec<AtomSet>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Cover {
    pub remove: AtomSet,
    pub plain_ideal: Vec<String>,
    pub lcm_isomorphic: bool,
    pub delta_equals_x: bool,
}

/// One comparison inside a fixture.
#[derive(Debug)]
pub struct Outcome {
    pub what: String,
    pub expected: String,
    pub actual: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug)]
pub struct FixtureReport {
    pub id: String,
    pub note: String,
    pub outcomes: Vec<Outcome>,
    pub error: Option<String>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.outcomes.iter().all(Outcome::passed)
    }
}

/// Loads the bundled fixtures, or every `*.json` in `dir` when given.
pub fn load(dir: Option<&Path>) -> Result<Vec<(String, String)>, String> {
    let Some(dir) = dir else {
        return Ok(BUNDLED.iter().map(|(n, t)| (n.to_string(), t.to_string())).collect());
    };
    let entries = fs::read_dir(dir).map_err(|e| format!("{}: {e}", dir.display()))?;
    let mut out = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| e.to_string())?.path();
        if path.extension().is_some_and(|x| x == "json") {
            let text = fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
            let name = path.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            out.push((name, text));
        }
    }
    if out.is_empty() {
        return Err(format!("no fixtures in {}", dir.display()));
    }
    out.sort();
    Ok(out)
}

fn render(ms: &[Monomial]) -> String {
    ms.iter().map(|m| m.to_string()).collect::<Vec<_>>().join(", ")
}

fn canonical(strings: &[String]) -> Result<String, String> {
    let ms = strings
        .iter()
        .map(|s| Monomial::parse(s).map_err(|e| format!("{s}: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(render(&ms))
}

struct Recorder(Vec<Outcome>);

impl Recorder {
    fn check(&mut self, what: &str, expected: impl ToString, actual: impl ToString) {
        self.0.push(Outcome {
            what: what.to_string(),
            expected: expected.to_string(),
            actual: actual.to_string(),
        });
    }
}

pub fn run(text: &str) -> FixtureReport {
    let fixture: Fixture = match serde_json::from_str(text) {
        Ok(f) => f,
        Err(e) => {
            return FixtureReport {
                id: "?".into(),
                note: String::new(),
                outcomes: Vec::new(),
                error: Some(format!("unreadable fixture: {e}")),
            }
        }
    };
    let mut rec = Recorder(Vec::new());
    let error = run_fixture(&fixture, &mut rec).err();
    FixtureReport {
        id: fixture.id.clone(),
        note: fixture.note.clone(),
        outcomes: rec.0,
        error,
    }
}

fn run_fixture(f: &Fixture, rec: &mut Recorder) -> Result<(), String> {
    let e = &f.expect;
    if let Some(gens) = &f.ideal {
        let ideal = MonomialIdeal::new(
            gens.iter()
                .map(|g| Monomial::parse(g).map_err(|x| x.to_string()))
                .collect::<Result<_, _>>()?,
        );
        let lcm = lcm_lattice(&ideal).map_err(|x| x.to_string())?;
        if let Some(want) = &e.lcm_elements {
            let want: BTreeSet<String> = want.iter().map(|s| canonical(&[s.clone()])).collect::<Result<_, _>>()?;
            let got: BTreeSet<String> = lcm.monomials().iter().map(|m| m.to_string()).collect();
            rec.check("lcm elements", format!("{want:?}"), format!("{got:?}"));
        }
        if let Some(want) = &e.lcm_covers {
            let want: BTreeSet<(String, String)> = want
                .iter()
                .map(|[a, b]| Ok((canonical(&[a.clone()])?, canonical(&[b.clone()])?)))
                .collect::<Result<_, String>>()?;
            let got: BTreeSet<(String, String)> = lcm
                .lattice()
                .cover_pairs()
                .into_iter()
                .map(|(p, q)| (lcm.monomial_of(p).unwrap().to_string(), lcm.monomial_of(q).unwrap().to_string()))
                .collect();
            rec.check("lcm covers", format!("{want:?}"), format!("{got:?}"));
        }
    }

    if let Some(en) = &f.enumerate {
        let got: BTreeSet<Vec<AtomSet>> = enumerate_super_atomic(en.n)
            .map_err(|x| x.to_string())?
            .iter()
            .map(|l| l.sets().to_vec())
            .collect();
        let want: BTreeSet<Vec<AtomSet>> = en
            .families
            .iter()
            .map(|fam| {
                AtomicLattice::from_sets(en.n, fam.iter().copied())
                    .map(|l| l.sets().to_vec())
                    .map_err(|x| x.to_string())
            })
            .collect::<Result<_, _>>()?;
        rec.check("super-atomic lattices", format!("{want:?}"), format!("{got:?}"));
    }

    let Some(doc) = &f.lattice else {
        return Ok(());
    };
    let lattice = doc.to_lattice().map_err(|x| x.to_string())?;
    let labeling = match (&f.labels, &f.support_labeling) {
        (Some(entries), _) => Some(
            Labeling::new(
                &lattice,
                entries
                    .iter()
                    .map(|en| Ok((en.set, Monomial::parse(&en.monomial)?)))
                    .collect::<lcmlat::Result<Vec<_>>>()
                    .map_err(|x| x.to_string())?,
            )
            .map_err(|x| x.to_string())?,
        ),
        (None, Some(names)) => Some(labeling_c_named(&lattice, names).map_err(|x| x.to_string())?),
        (None, None) => None,
    };

    if let Some(want) = e.super_atomic {
        rec.check("super-atomic", want, is_super_atomic(&lattice));
        rec.check("super-atomic via supports", want, is_super_atomic_via_supp(&lattice));
    }
    if let Some(want) = e.interval_hypothesis {
        rec.check("interval hypothesis", want, check_interval_hypothesis(&lattice).hypothesis_holds);
    }
    if let Some(want) = e.pair_condition {
        let got = check_pair_condition(&lattice).map_err(|x| x.to_string())?;
        rec.check("pair condition", want, got.holds);
    }

    let Some(labeling) = labeling else {
        return Ok(());
    };
    let plain = ideal_from_labeling(&lattice, &labeling);
    if let Some(want) = &e.plain_ideal {
        rec.check("plain ideal", canonical(want)?, render(plain.generators()));
    }
    if let Some(want) = &e.weak_ideal {
        let weak = weak_ideal(&lattice, &labeling).map_err(|x| x.to_string())?;
        rec.check("gcd ideal", canonical(want)?, render(weak.generators()));
    }
    if let Some(want) = e.plain_lcm_size {
        let lcm = lcm_lattice(&plain).map_err(|x| x.to_string())?;
        rec.check("plain lcm-lattice size", want, lcm.len());
    }
    let needs_class = [e.satisfies_a1a2, e.satisfies_c1c2, e.is_coordinatization, e.is_strong, e.is_weak]
        .iter()
        .any(Option::is_some);
    if needs_class {
        let c = classify(&lattice, &labeling).map_err(|x| x.to_string())?;
        let pairs = [
            ("satisfies_A1A2", e.satisfies_a1a2, c.satisfies_a1a2),
            ("satisfies_C1C2", e.satisfies_c1c2, c.satisfies_c1c2),
            ("is_coordinatization", e.is_coordinatization, c.is_coordinatization),
            ("is_strong", e.is_strong, c.is_strong),
            ("is_weak", e.is_weak, c.is_weak),
        ];
        for (name, want, got) in pairs {
            if let Some(want) = want {
                rec.check(name, want, got);
            }
        }
    }

    if let Some(cv) = &f.cover {
        let names = f
            .support_labeling
            .as_ref()
            .ok_or("a cover check needs a support labeling")?;
        let smaller = lattice.without(cv.remove).map_err(|x| x.to_string())?;
        let w = lofn_covers(&lattice, &smaller);
        rec.check("cover detected", true, w.is_some());
        let c_q = labeling_c_named(&smaller, names).map_err(|x| x.to_string())?;
        let m_q = ideal_from_labeling(&smaller, &c_q);
        rec.check("covered plain ideal", canonical(&cv.plain_ideal)?, render(m_q.generators()));
        let lcm = lcm_lattice(&m_q).map_err(|x| x.to_string())?;
        rec.check("covered lcm-lattice isomorphic", cv.lcm_isomorphic, is_isomorphic(lcm.lattice(), &smaller));
        let report = check_cover_strength(&lattice, &lattice, &smaller).map_err(|x| x.to_string())?;
        rec.check("covered gcd equals plain", cv.delta_equals_x, report.delta_equals_x);
    }
    Ok(())
}
