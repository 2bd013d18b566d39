//! The support labeling: every nonzero element is labeled by the product of
//! the variables of its atoms. Whether it coordinatizes is governed by
//! interval counts `N([s, 1])`, the number of members containing `s`.

use serde::Serialize;

use crate::coord::is_strong_coordinatization;
use crate::error::{Error, Result};
use crate::ideal::{atom_generators, deltas_from_generators, Labeling};
use crate::lattice::{AtomSet, AtomicLattice};
use crate::monomial::{Monomial, Variable};
use crate::superatomic::{is_super_atomic, joining_pairs, lofn_covers};

/// Variable names `a1, ..., an`.
pub fn default_variable_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("a{i}")).collect()
}

/// The support labeling with atom `i` named `a{i}`.
pub fn labeling_c(lattice: &AtomicLattice) -> Labeling {
    labeling_c_named(lattice, &default_variable_names(lattice.atom_count()))
        .expect("default names are valid identifiers")
}

/// The support labeling with atom `i` named `names[i - 1]`.
pub fn labeling_c_named<S: AsRef<str>>(lattice: &AtomicLattice, names: &[S]) -> Result<Labeling> {
    if names.len() != lattice.atom_count() {
        return Err(Error::Precondition(format!(
            "{} names for {} atoms",
            names.len(),
            lattice.atom_count()
        )));
    }
    let vars = names
        .iter()
        .map(|s| Variable::new(s.as_ref()))
        .collect::<Result<Vec<_>>>()?;
    let labels = lattice
        .sets()
        .iter()
        .filter(|s| !s.is_empty())
        .map(|&s| (s, Monomial::product_of(s.atoms().map(|a| vars[a - 1]))));
    Labeling::new(lattice, labels)
}

/// `N([s, 1])` for members, by index in `lattice.sets()`.
struct UpCounts<'a> {
    lattice: &'a AtomicLattice,
    counts: Vec<usize>,
}

impl<'a> UpCounts<'a> {
    fn new(lattice: &'a AtomicLattice) -> UpCounts<'a> {
        let sets = lattice.sets();
        let counts = sets
            .iter()
            .map(|&s| sets.iter().filter(|&&t| s.is_subset(t)).count())
            .collect();
        UpCounts { lattice, counts }
    }

    fn of(&self, s: AtomSet) -> usize {
        self.counts[self.lattice.index_of(s).expect("member")]
    }

    /// `N([a_i ∨ a_k, 1])`.
    fn of_join(&self, i: usize, k: usize) -> usize {
        self.of(self.lattice.closure(AtomSet::from_atoms([i, k])))
    }
}

/// One attempt at the interval hypothesis for an element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalWitness {
    pub element: AtomSet,
    pub pair: (usize, usize),
    pub fixed: usize,
    /// An atom outside the element with `N([a_fixed ∨ a_k, 1]) >= N([p, 1])`;
    /// absent when the attempt succeeds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub violating_atom: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IntervalCriterionReport {
    pub hypothesis_holds: bool,
    /// One succeeding attempt per element where one exists, otherwise every
    /// failed attempt for that element.
    pub witnesses: Vec<IntervalWitness>,
}

/// For every element `p` above the atoms: some pair `p = a_i ∨ a_j` and one
/// fixed `r ∈ {i, j}` have `N([a_r ∨ a_k, 1]) < N([p, 1])` for every atom
/// `a_k` outside `p`.
pub fn check_interval_hypothesis(lattice: &AtomicLattice) -> IntervalCriterionReport {
    let up = UpCounts::new(lattice);
    let all = AtomSet::full(lattice.atom_count());
    let mut holds = true;
    let mut witnesses = Vec::new();
    for &p in lattice.sets().iter().filter(|s| s.len() >= 2) {
        let np = up.of(p);
        let outside: Vec<usize> = all.difference(p).atoms().collect();
        let mut failures = Vec::new();
        let mut found = None;
        'pairs: for (i, j) in joining_pairs(lattice, p) {
            for r in [i, j] {
                let bad = outside.iter().copied().find(|&k| up.of_join(r, k) >= np);
                let w = IntervalWitness {
                    element: p,
                    pair: (i, j),
                    fixed: r,
                    violating_atom: bad,
                };
                if bad.is_none() {
                    found = Some(w);
                    break 'pairs;
                }
                failures.push(w);
            }
        }
        match found {
            Some(w) => witnesses.push(w),
            None => {
                holds = false;
                witnesses.extend(failures);
            }
        }
    }
    IntervalCriterionReport {
        hypothesis_holds: holds,
        witnesses,
    }
}

/// A violation of the super-atomic strong-labeling condition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairConditionWitness {
    pub element: AtomSet,
    pub pair: (usize, usize),
    pub k: usize,
    pub r: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairConditionReport {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<PairConditionWitness>,
}

/// On a super-atomic lattice: for every `p` above the atoms with generating
/// pair `p = a_i ∨ a_j` and all `a_k, a_r` in `p`, either
/// `N([a_i ∨ a_k, 1]) <= N([a_r ∨ a_k, 1])` or
/// `N([a_j ∨ a_k, 1]) <= N([a_r ∨ a_k, 1])`.
pub fn check_pair_condition(lattice: &AtomicLattice) -> Result<PairConditionReport> {
    if !is_super_atomic(lattice) {
        return Err(Error::Precondition("lattice is not super-atomic".into()));
    }
    let up = UpCounts::new(lattice);
    for &p in lattice.sets().iter().filter(|s| s.len() >= 2) {
        let pairs = joining_pairs(lattice, p);
        let &[(i, j)] = pairs.as_slice() else {
            return Err(Error::InvariantBreach(format!("{p} has {} generating pairs", pairs.len())));
        };
        for k in p.atoms() {
            for r in p.atoms() {
                let nr = up.of_join(r, k);
                if up.of_join(i, k) > nr && up.of_join(j, k) > nr {
                    return Ok(PairConditionReport {
                        holds: false,
                        witness: Some(PairConditionWitness {
                            element: p,
                            pair: (i, j),
                            k,
                            r,
                        }),
                    });
                }
            }
        }
    }
    Ok(PairConditionReport {
        holds: true,
        witness: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverStrengthReport {
    /// `Δ_Q(a) = x_Q(a)` for every atom.
    pub delta_equals_x: bool,
    /// The support labeling of `q` is a strong coordinatization.
    pub c_q_strong: bool,
    pub agree: bool,
    /// Atoms with `Δ_Q(a) != x_Q(a)`.
    pub mismatched_atoms: Vec<usize>,
}

/// For a super-atomic `r`, a lattice `p` contained in it whose support
/// labeling is strong, and a lattice `q` covered by `p`: reports whether
/// `Δ_Q = x_Q` on atoms and, separately, whether the support labeling of `q`
/// is strong.
pub fn check_cover_strength(
    r: &AtomicLattice,
    p: &AtomicLattice,
    q: &AtomicLattice,
) -> Result<CoverStrengthReport> {
    if !is_super_atomic(r) {
        return Err(Error::Precondition("the outer lattice is not super-atomic".into()));
    }
    if r.atom_count() != p.atom_count() || !p.sets().iter().all(|s| r.contains(*s)) {
        return Err(Error::Precondition("the middle lattice is not contained in the outer one".into()));
    }
    if lofn_covers(p, q).is_none() {
        return Err(Error::Precondition("the inner lattice is not covered by the middle one".into()));
    }
    if !is_strong_coordinatization(p, &labeling_c(p))? {
        return Err(Error::Precondition(
            "the support labeling of the middle lattice is not strong".into(),
        ));
    }
    let c_q = labeling_c(q);
    let x = atom_generators(q, &c_q);
    let delta = deltas_from_generators(q, &x)?;
    let mismatched_atoms: Vec<usize> = (1..=q.atom_count()).filter(|a| x[a - 1] != delta[a - 1]).collect();
    let delta_equals_x = mismatched_atoms.is_empty();
    let c_q_strong = is_strong_coordinatization(q, &c_q)?;
    Ok(CoverStrengthReport {
        delta_equals_x,
        c_q_strong,
        agree: delta_equals_x == c_q_strong,
        mismatched_atoms,
    })
}
