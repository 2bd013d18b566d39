//! Deciding whether a labeling coordinatizes its lattice.
//!
//! The sufficient conditions (A1)/(A2) and (C1)/(C2) are checked literally.
//! The requirement that meet-irreducibles carry labels skips the top, whose
//! label never enters any generator.
//!
//! Strong and weak coordinatizations are decided by checking the join
//! extension of the atom map directly: it must hit every element of the
//! lcm-lattice exactly once and preserve order in both directions.

use std::collections::{BTreeMap, HashMap, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{
    atom_generators, complement_products, deltas_from_generators, join_extension, labeling_d,
    lcm_lattice, Labeling, MonomialIdeal,
};
use crate::iso::is_isomorphic;
use crate::lattice::{AtomSet, AtomicLattice};
use crate::monomial::{Monomial, Variable};

/// Why a check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// A meet-irreducible below the top carries no label.
    UnlabeledMeetIrreducible { element: AtomSet },
    /// A variable divides the labels of two incomparable elements.
    SharedVariable { variable: String, p: AtomSet, q: AtomSet },
    /// Incomparable `p`, `q` share a factor and one label divides the other's.
    TrivialQuotient { p: AtomSet, q: AtomSet, unit_side: AtomSet },
    /// Around `p` (ignoring `q`), `x` and `y` share factors with `m_p` but are
    /// incomparable.
    NonChain { p: AtomSet, q: AtomSet, x: AtomSet, y: AtomSet },
    /// The lcm-lattice and the lattice differ in size.
    CardinalityMismatch { lattice: usize, lcm_lattice: usize },
    /// Two elements have the same image.
    Collision { p: AtomSet, q: AtomSet, monomial: String },
    /// The image of `p` is not in the lcm-lattice.
    OutsideImage { p: AtomSet, monomial: String },
    /// `p <= q` and `g(p) | g(q)` disagree.
    OrderMismatch { p: AtomSet, q: AtomSet },
    /// No order isomorphism exists although the sizes agree.
    NotIsomorphic,
    /// The unit monomial is among the generators.
    DegenerateIdeal,
}

/// The outcome of one check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl Check {
    fn pass() -> Check {
        Check { holds: true, witness: None }
    }

    fn fail(w: Witness) -> Check {
        Check { holds: false, witness: Some(w) }
    }
}

/// Witnesses of the failed checks, by check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    #[serde(rename = "A1A2", skip_serializing_if = "Option::is_none")]
    pub a1a2: Option<Witness>,
    #[serde(rename = "C1C2", skip_serializing_if = "Option::is_none")]
    pub c1c2: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coordinatization: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub strong: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weak: Option<Witness>,
}

impl Witnesses {
    pub fn is_empty(&self) -> bool {
        *self == Witnesses::default()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LabelingClassification {
    #[serde(rename = "satisfies_A1A2")]
    pub satisfies_a1a2: bool,
    #[serde(rename = "satisfies_C1C2")]
    pub satisfies_c1c2: bool,
    pub is_coordinatization: bool,
    pub is_strong: bool,
    pub is_weak: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witnesses>,
}

fn unlabeled_meet_irreducible(lattice: &AtomicLattice, labeling: &Labeling) -> Option<AtomSet> {
    let top = lattice.top();
    lattice
        .meet_irreducibles()
        .into_iter()
        .find(|&p| p != top && !labeling.is_labeled(p))
}

/// For each variable, the elements whose labels it divides.
fn variable_supports(labeling: &Labeling) -> Vec<(Variable, Vec<AtomSet>)> {
    let mut map: HashMap<Variable, Vec<AtomSet>> = HashMap::new();
    for (p, m) in labeling.iter() {
        for v in m.support() {
            map.entry(v).or_default().push(p);
        }
    }
    let mut out: Vec<_> = map.into_iter().collect();
    out.sort_by(|a, b| a.0.render_cmp(&b.0));
    out
}

fn incomparable_pair(lattice: &AtomicLattice, elems: &[AtomSet]) -> Option<(AtomSet, AtomSet)> {
    for (i, &x) in elems.iter().enumerate() {
        for &y in &elems[i + 1..] {
            if !lattice.comparable(x, y) {
                return Some((x, y));
            }
        }
    }
    None
}

/// (A1): meet-irreducibles below the top are labeled. (A2): every variable
/// divides labels along a single chain.
pub fn check_a1a2(lattice: &AtomicLattice, labeling: &Labeling) -> Check {
    if let Some(p) = unlabeled_meet_irreducible(lattice, labeling) {
        return Check::fail(Witness::UnlabeledMeetIrreducible { element: p });
    }
    for (v, elems) in variable_supports(labeling) {
        if let Some((p, q)) = incomparable_pair(lattice, &elems) {
            return Check::fail(Witness::SharedVariable {
                variable: v.to_string(),
                p,
                q,
            });
        }
    }
    Check::pass()
}

/// (C1) is (A1). (C2): whenever incomparable `p`, `q` have labels sharing a
/// factor, neither label divides the other, and the elements sharing a factor
/// with `m_p` other than `q` form a chain, as do those sharing a factor with
/// `m_q` other than `p`.
pub fn check_c1c2(lattice: &AtomicLattice, labeling: &Labeling) -> Check {
    if let Some(p) = unlabeled_meet_irreducible(lattice, labeling) {
        return Check::fail(Witness::UnlabeledMeetIrreducible { element: p });
    }
    let labeled: Vec<(AtomSet, &Monomial)> = labeling.iter().collect();
    let touching = |mp: &Monomial, skip: AtomSet| -> Vec<AtomSet> {
        labeled
            .iter()
            .filter(|(s, ms)| *s != skip && !mp.gcd(ms).is_one())
            .map(|(s, _)| *s)
            .collect()
    };
    for (i, &(p, mp)) in labeled.iter().enumerate() {
        for &(q, mq) in &labeled[i + 1..] {
            if lattice.comparable(p, q) {
                continue;
            }
            let g = mp.gcd(mq);
            if g.is_one() {
                continue;
            }
            for (side, m) in [(p, mp), (q, mq)] {
                if m == &g {
                    return Check::fail(Witness::TrivialQuotient { p, q, unit_side: side });
                }
            }
            for (a, ma, b) in [(p, mp, q), (q, mq, p)] {
                let around = touching(ma, b);
                if let Some((x, y)) = incomparable_pair(lattice, &around) {
                    return Check::fail(Witness::NonChain { p: a, q: b, x, y });
                }
            }
        }
    }
    Check::pass()
}

fn lcm_or_degenerate(ideal: &MonomialIdeal) -> Result<Option<crate::ideal::LcmLattice>> {
    match lcm_lattice(ideal) {
        Ok(l) => Ok(Some(l)),
        Err(Error::DegenerateIdeal) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Abstract isomorphism between `LCM(M_{P,L})` and `P`.
pub fn coordinatization_check(lattice: &AtomicLattice, labeling: &Labeling) -> Result<Check> {
    let ideal = MonomialIdeal::new(atom_generators(lattice, labeling));
    let Some(lcm) = lcm_or_degenerate(&ideal)? else {
        return Ok(Check::fail(Witness::DegenerateIdeal));
    };
    if lcm.len() != lattice.len() {
        return Ok(Check::fail(Witness::CardinalityMismatch {
            lattice: lattice.len(),
            lcm_lattice: lcm.len(),
        }));
    }
    if is_isomorphic(lcm.lattice(), lattice) {
        Ok(Check::pass())
    } else {
        Ok(Check::fail(Witness::NotIsomorphic))
    }
}

/// Whether `images` (one per atom), extended by joins, is an order
/// isomorphism from `lattice` onto the lcm-lattice of the ideal they generate.
pub fn join_extension_check(lattice: &AtomicLattice, images: &[Monomial]) -> Result<Check> {
    let ideal = MonomialIdeal::new(images.to_vec());
    let Some(lcm) = lcm_or_degenerate(&ideal)? else {
        return Ok(Check::fail(Witness::DegenerateIdeal));
    };
    if lcm.len() != lattice.len() {
        return Ok(Check::fail(Witness::CardinalityMismatch {
            lattice: lattice.len(),
            lcm_lattice: lcm.len(),
        }));
    }
    let sets = lattice.sets();
    let g = join_extension(lattice, images);
    let mut seen: HashMap<&Monomial, AtomSet> = HashMap::new();
    for (p, m) in sets.iter().zip(&g) {
        if let Some(&q) = seen.get(m) {
            return Ok(Check::fail(Witness::Collision {
                p: q,
                q: *p,
                monomial: m.to_string(),
            }));
        }
        if !lcm.contains(m) {
            return Ok(Check::fail(Witness::OutsideImage {
                p: *p,
                monomial: m.to_string(),
            }));
        }
        seen.insert(m, *p);
    }
    for (i, &p) in sets.iter().enumerate() {
        for (j, &q) in sets.iter().enumerate() {
            if i != j && p.is_subset(q) != g[i].divides(&g[j]) {
                return Ok(Check::fail(Witness::OrderMismatch { p, q }));
            }
        }
    }
    Ok(Check::pass())
}

/// `a ↦ x(a)` extends to an isomorphism onto `LCM(M_{P,L})`.
pub fn strong_check(lattice: &AtomicLattice, labeling: &Labeling) -> Result<Check> {
    join_extension_check(lattice, &atom_generators(lattice, labeling))
}

/// `a ↦ Δ(a)` extends to an isomorphism onto `LCM(I_{P,L})`.
pub fn weak_check(lattice: &AtomicLattice, labeling: &Labeling) -> Result<Check> {
    let x = atom_generators(lattice, labeling);
    join_extension_check(lattice, &deltas_from_generators(lattice, &x)?)
}

fn holds_or_degenerate(c: Check) -> Result<bool> {
    match c.witness {
        Some(Witness::DegenerateIdeal) => Err(Error::DegenerateIdeal),
        _ => Ok(c.holds),
    }
}

/// Fails with [`Error::DegenerateIdeal`] when some `x(a)` is 1.
pub fn is_coordinatization(lattice: &AtomicLattice, labeling: &Labeling) -> Result<bool> {
    holds_or_degenerate(coordinatization_check(lattice, labeling)?)
}

/// Fails with [`Error::DegenerateIdeal`] when some `x(a)` is 1.
pub fn is_strong_coordinatization(lattice: &AtomicLattice, labeling: &Labeling) -> Result<bool> {
    holds_or_degenerate(strong_check(lattice, labeling)?)
}

/// Fails with [`Error::DegenerateIdeal`] when some `Δ(a)` is 1.
pub fn is_weak_coordinatization(lattice: &AtomicLattice, labeling: &Labeling) -> Result<bool> {
    holds_or_degenerate(weak_check(lattice, labeling)?)
}

/// Rebuilds labeling D from `LCM(M_{P,L})` through `p ↦ ∏_{q ≱ p} m_q` and
/// compares it with `labeling` on every element.
pub fn verify_d_recovery(lattice: &AtomicLattice, labeling: &Labeling) -> Result<bool> {
    let check = check_a1a2(lattice, labeling);
    if !check.holds {
        return Err(Error::Precondition(format!(
            "labeling violates (A1)/(A2): {:?}",
            check.witness
        )));
    }
    let lcm = lcm_lattice(&MonomialIdeal::new(atom_generators(lattice, labeling)))?;
    let f = complement_products(lattice, labeling);
    let distinct: HashSet<&Monomial> = f.iter().collect();
    if distinct.len() != f.len() || !f.iter().all(|m| lcm.contains(m)) {
        return Ok(false);
    }
    let iso: BTreeMap<AtomSet, Monomial> = lattice.sets().iter().copied().zip(f).collect();
    Ok(labeling_d(lattice, &iso)? == *labeling)
}

/// All five checks with witnesses for the failing ones.
pub fn classify(lattice: &AtomicLattice, labeling: &Labeling) -> Result<LabelingClassification> {
    let a = check_a1a2(lattice, labeling);
    let c = check_c1c2(lattice, labeling);
    let co = coordinatization_check(lattice, labeling)?;
    let s = strong_check(lattice, labeling)?;
    let w = weak_check(lattice, labeling)?;
    let witnesses = Witnesses {
        a1a2: a.witness,
        c1c2: c.witness,
        coordinatization: co.witness,
        strong: s.witness,
        weak: w.witness,
    };
    Ok(LabelingClassification {
        satisfies_a1a2: a.holds,
        satisfies_c1c2: c.holds,
        is_coordinatization: co.holds,
        is_strong: s.holds,
        is_weak: w.holds,
        witness: (!witnesses.is_empty()).then_some(witnesses),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(p: &AtomicLattice, items: &[(&[usize], &str)]) -> Labeling {
        Labeling::new(
            p,
            items
                .iter()
                .map(|(s, m)| (AtomSet::from_atoms(s.iter().copied()), m.parse().unwrap())),
        )
        .unwrap()
    }

    fn plain_not_strong() -> (AtomicLattice, Labeling) {
        let p = AtomicLattice::from_atom_lists(3, &[&[], &[1], &[2], &[3], &[2, 3], &[1, 2, 3]]).unwrap();
        let l = lab(&p, &[(&[1], "a*b^2"), (&[2], "e"), (&[3], "a*c")]);
        (p, l)
    }

    #[test]
    fn plain_but_not_strong() {
        let (p, l) = plain_not_strong();
        let c = classify(&p, &l).unwrap();
        assert!(c.is_coordinatization);
        assert!(!c.is_strong);
        assert!(!c.satisfies_a1a2);
        let w = c.witness.unwrap();
        assert!(matches!(w.strong, Some(Witness::Collision { .. })));
        assert_eq!(
            w.a1a2,
            Some(Witness::UnlabeledMeetIrreducible { element: AtomSet::from_atoms([2, 3]) })
        );
    }

    #[test]
    fn shared_variable_on_incomparable_elements() {
        let (p, _) = plain_not_strong();
        let l = lab(&p, &[(&[1], "a*b^2"), (&[2], "e"), (&[3], "a*c"), (&[2, 3], "f")]);
        let c = check_a1a2(&p, &l);
        assert_eq!(
            c.witness,
            Some(Witness::SharedVariable {
                variable: "a".into(),
                p: AtomSet::from_atoms([1]),
                q: AtomSet::from_atoms([3]),
            })
        );
    }

    #[test]
    fn unlabeled_lattice_is_degenerate() {
        let p = AtomicLattice::boolean(2);
        assert_eq!(
            is_coordinatization(&p, &Labeling::empty()).unwrap_err(),
            Error::DegenerateIdeal
        );
        let c = classify(&p, &Labeling::empty()).unwrap();
        assert!(!c.is_weak && !c.is_strong && !c.is_coordinatization);
    }

    #[test]
    fn d_recovery_needs_a1a2() {
        let (p, l) = plain_not_strong();
        assert!(matches!(verify_d_recovery(&p, &l), Err(Error::Precondition(_))));
    }

    #[test]
    fn chain_labeling_is_recovered() {
        // B2 with each meet-irreducible below the top labeled by a fresh variable.
        let p = AtomicLattice::boolean(2);
        let l = lab(&p, &[(&[1], "u"), (&[2], "v")]);
        assert!(check_a1a2(&p, &l).holds);
        assert!(verify_d_recovery(&p, &l).unwrap());
        assert!(is_strong_coordinatization(&p, &l).unwrap());
    }

    #[test]
    fn classification_serializes_with_stable_names() {
        let (p, l) = plain_not_strong();
        let v = serde_json::to_value(classify(&p, &l).unwrap()).unwrap();
        for k in ["satisfies_A1A2", "satisfies_C1C2", "is_coordinatization", "is_strong", "is_weak", "witness"] {
            assert!(v.get(k).is_some(), "{k}");
        }
    }
}
