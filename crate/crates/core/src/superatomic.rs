//! Super-atomic lattices and the containment order on lattices with `n`
//! ordered atoms.
//!
//! A lattice is super-atomic when, for every element `p` above the atoms and
//! every set of atoms `T` joining to `p`, exactly one pair inside `T` already
//! joins to `p`. [`enumerate_super_atomic`] builds all of them top-down: each
//! set `S` of the current level picks a pair `δ(S)` not contained in any other
//! set of that level, and contributes `S - {i}` and `S - {j}` to the next.

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::lattice::{AtomSet, AtomicLattice};

/// Largest atom count accepted by [`enumerate_super_atomic`].
pub const MAX_ENUMERATION_ATOMS: usize = 7;

/// `C(n, 2) + n + 1`, the size of every super-atomic lattice on `n` atoms.
pub fn super_atomic_size(n: usize) -> usize {
    n * n.saturating_sub(1) / 2 + n + 1
}

/// Atom pairs `(i, j)`, `i < j`, whose join is `s`.
pub fn joining_pairs(lattice: &AtomicLattice, s: AtomSet) -> Vec<(usize, usize)> {
    s.pairs()
        .filter(|&(i, j)| lattice.closure(AtomSet::from_atoms([i, j])) == s)
        .collect()
}

fn is_above_atoms(s: AtomSet) -> bool {
    s.len() >= 2
}

/// The definition, checked over every `T ∈ B_p`.
pub fn is_super_atomic(lattice: &AtomicLattice) -> bool {
    let n = lattice.atom_count();
    let mut pair_join = vec![AtomSet::EMPTY; (n + 1) * (n + 1)];
    for (i, j) in AtomSet::full(n).pairs() {
        pair_join[i * (n + 1) + j] = lattice.closure(AtomSet::from_atoms([i, j]));
    }
    lattice.sets().iter().copied().filter(|&p| is_above_atoms(p)).all(|p| {
        let atoms: Vec<usize> = p.atoms().collect();
        p.subsets().into_iter().all(|t| {
            if t.len() < 2 || lattice.closure(t) != p {
                return true;
            }
            let mut count = 0;
            for (x, &i) in atoms.iter().enumerate() {
                if !t.contains(i) {
                    continue;
                }
                for &j in &atoms[x + 1..] {
                    if t.contains(j) && pair_join[i * (n + 1) + j] == p {
                        count += 1;
                    }
                }
            }
            count == 1
        })
    })
}

/// Every `p` above the atoms is `p1 ∨ p2` with `supp(p) - {p1}` and
/// `supp(p) - {p2}` both members.
pub fn is_super_atomic_via_supp(lattice: &AtomicLattice) -> bool {
    lattice.sets().iter().copied().filter(|&p| is_above_atoms(p)).all(|p| {
        joining_pairs(lattice, p)
            .into_iter()
            .any(|(i, j)| lattice.contains(p.without(i)) && lattice.contains(p.without(j)))
    })
}

/// The three structural facts every super-atomic lattice satisfies: the
/// required sets are present; every set above the atoms is a pair join `i ∨ j`
/// and drops to a member by removing `r` exactly when `r ∈ {i, j}`; and two
/// incomparable pair joins never contain each other's generating pair.
pub fn check_structure_lemma(lattice: &AtomicLattice) -> Result<bool> {
    if !is_super_atomic(lattice) {
        return Err(Error::Precondition("lattice is not super-atomic".into()));
    }
    let n = lattice.atom_count();
    let required = std::iter::once(AtomSet::EMPTY)
        .chain((1..=n).map(AtomSet::singleton))
        .chain(std::iter::once(AtomSet::full(n)));
    let first = required.into_iter().all(|s| lattice.contains(s));

    let upper: Vec<AtomSet> = lattice.sets().iter().copied().filter(|s| is_above_atoms(*s)).collect();
    let second = upper.iter().all(|&s| {
        joining_pairs(lattice, s).into_iter().any(|(i, j)| {
            s.atoms()
                .all(|r| lattice.contains(s.without(r)) == (r == i || r == j))
        })
    });

    let mut third = true;
    for (x, &s1) in upper.iter().enumerate() {
        for &s2 in &upper[x + 1..] {
            if lattice.comparable(s1, s2) {
                continue;
            }
            let crosses = |a: AtomSet, b: AtomSet| {
                joining_pairs(lattice, a)
                    .into_iter()
                    .any(|(u, v)| b.contains(u) && b.contains(v))
            };
            if crosses(s1, s2) || crosses(s2, s1) {
                third = false;
            }
        }
    }
    Ok(first && second && third)
}

/// The pair chosen for each set, one map per level from `n` down to 3.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DeltaChoice {
    pub levels: Vec<BTreeMap<AtomSet, (usize, usize)>>,
}

/// Pairs `δ(s)` allowed for `s` given the other sets of its level.
fn admissible_pairs(s: AtomSet, level: &[AtomSet]) -> Vec<(usize, usize)> {
    s.pairs()
        .filter(|&(i, j)| {
            let d = AtomSet::from_atoms([i, j]);
            level.iter().all(|&t| t == s || !d.is_subset(t))
        })
        .collect()
}

fn base_family(n: usize) -> Vec<AtomSet> {
    let mut out = vec![AtomSet::EMPTY];
    out.extend((1..=n).map(AtomSet::singleton));
    if n >= 2 {
        out.push(AtomSet::full(n));
    }
    out
}

fn check_enumeration_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition(format!("need at least 2 atoms, got {n}")));
    }
    if n > MAX_ENUMERATION_ATOMS {
        return Err(Error::CapExceeded {
            what: "atoms for super-atomic enumeration",
            limit: MAX_ENUMERATION_ATOMS,
            got: n,
        });
    }
    Ok(())
}

/// Runs the construction for one fixed choice of pairs and returns the family.
pub fn run_construction(n: usize, choice: &DeltaChoice) -> Result<Vec<AtomSet>> {
    check_enumeration_n(n)?;
    let mut family = base_family(n);
    let mut level = vec![AtomSet::full(n)];
    let steps = n.saturating_sub(2);
    if choice.levels.len() != steps {
        return Err(Error::Precondition(format!(
            "expected {steps} levels of choices, got {}",
            choice.levels.len()
        )));
    }
    for picks in &choice.levels {
        let mut next: Vec<AtomSet> = Vec::new();
        for &s in &level {
            let &(i, j) = picks
                .get(&s)
                .ok_or_else(|| Error::Precondition(format!("no pair chosen for {s}")))?;
            if !admissible_pairs(s, &level).contains(&(i.min(j), i.max(j))) {
                return Err(Error::Precondition(format!("pair {{{i},{j}}} is not admissible for {s}")));
            }
            next.push(s.without(i));
            next.push(s.without(j));
        }
        if picks.len() != level.len() {
            return Err(Error::Precondition("choices name sets outside the level".into()));
        }
        next.sort();
        next.dedup();
        family.extend(next.iter().copied());
        level = next;
    }
    family.sort();
    family.dedup();
    Ok(family)
}

/// Every admissible choice sequence with its output family, found by plain
/// backtracking with no merging. Fails once more than `limit` sequences exist.
pub fn enumerate_delta_choices(n: usize, limit: usize) -> Result<Vec<(DeltaChoice, Vec<AtomSet>)>> {
    check_enumeration_n(n)?;
    let mut out = Vec::new();
    let mut stack = Vec::new();
    choices_rec(n, vec![AtomSet::full(n)], &mut stack, &mut out, limit)?;
    Ok(out)
}

fn choices_rec(
    n: usize,
    level: Vec<AtomSet>,
    stack: &mut Vec<BTreeMap<AtomSet, (usize, usize)>>,
    out: &mut Vec<(DeltaChoice, Vec<AtomSet>)>,
    limit: usize,
) -> Result<()> {
    if level.first().map_or(true, |s| s.len() <= 2) {
        let choice = DeltaChoice { levels: stack.clone() };
        let family = run_construction(n, &choice)?;
        if out.len() == limit {
            return Err(Error::CapExceeded {
                what: "choice sequences",
                limit,
                got: limit + 1,
            });
        }
        out.push((choice, family));
        return Ok(());
    }
    let options: Vec<Vec<(usize, usize)>> = level.iter().map(|&s| admissible_pairs(s, &level)).collect();
    if options.iter().any(Vec::is_empty) {
        return Ok(());
    }
    let mut idx = vec![0usize; level.len()];
    loop {
        let picks: BTreeMap<AtomSet, (usize, usize)> =
            level.iter().zip(&idx).zip(&options).map(|((&s, &k), o)| (s, o[k])).collect();
        let mut next: Vec<AtomSet> = picks
            .iter()
            .flat_map(|(s, &(i, j))| [s.without(i), s.without(j)])
            .collect();
        next.sort();
        next.dedup();
        stack.push(picks);
        choices_rec(n, next, stack, out, limit)?;
        stack.pop();
        // Odometer over the per-set options.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(());
            }
            idx[k] += 1;
            if idx[k] < options[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Families on at most 7 atoms as bitmaps indexed by subset bits.
type FamilyBits = u128;

fn bit(s: AtomSet) -> FamilyBits {
    1u128 << s.bits()
}

fn level_of(family: FamilyBits, size: usize) -> Vec<AtomSet> {
    let mut out = Vec::new();
    let mut f = family;
    while f != 0 {
        let b = f.trailing_zeros() as u64;
        f &= f - 1;
        let s = AtomSet::from_bits(b);
        if s.len() == size {
            out.push(s);
        }
    }
    out.sort();
    out
}

/// All outputs of the construction over every admissible choice sequence,
/// merged by equality of families and returned in canonical order.
///
/// Partial families reached by different choices are merged level by level,
/// so the work is bounded by distinct families rather than choice sequences.
pub fn enumerate_super_atomic(n: usize) -> Result<Vec<AtomicLattice>> {
    check_enumeration_n(n)?;
    let start = base_family(n).into_iter().fold(0, |acc, s| acc | bit(s));
    let mut states: HashSet<FamilyBits> = HashSet::from([start]);
    for size in (3..=n).rev() {
        let mut next_states = HashSet::new();
        for &state in &states {
            let level = level_of(state, size);
            let children: Vec<Vec<FamilyBits>> = level
                .iter()
                .map(|&s| {
                    let mut c: Vec<FamilyBits> = admissible_pairs(s, &level)
                        .into_iter()
                        .map(|(i, j)| bit(s.without(i)) | bit(s.without(j)))
                        .collect();
                    c.sort_unstable();
                    c.dedup();
                    c
                })
                .collect();
            if children.iter().any(Vec::is_empty) {
                continue;
            }
            let mut partial: HashSet<FamilyBits> = HashSet::from([0]);
            for opts in &children {
                partial = partial
                    .iter()
                    .flat_map(|&acc| opts.iter().map(move |&c| acc | c))
                    .collect();
            }
            next_states.extend(partial.into_iter().map(|c| state | c));
        }
        states = next_states;
    }
    let mut out = states
        .into_iter()
        .map(|f| {
            let mut sets = Vec::new();
            let mut rest = f;
            while rest != 0 {
                sets.push(AtomSet::from_bits(rest.trailing_zeros() as u64));
                rest &= rest - 1;
            }
            AtomicLattice::from_sets(n, sets)
                .map_err(|e| Error::InvariantBreach(format!("construction output is not a lattice: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.sets().cmp(b.sets()));
    Ok(out)
}

/// A cover `q ≺ p` in the containment order: `p` has exactly one extra set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverWitness {
    pub p: AtomicLattice,
    pub q: AtomicLattice,
    pub new_element: AtomSet,
}

/// `Some` exactly when `q`'s family is `p`'s minus one set.
pub fn lofn_covers(p: &AtomicLattice, q: &AtomicLattice) -> Option<CoverWitness> {
    if p.atom_count() != q.atom_count() || p.len() != q.len() + 1 {
        return None;
    }
    if !q.sets().iter().all(|s| p.contains(*s)) {
        return None;
    }
    let new_element = *p.sets().iter().find(|s| !q.contains(**s))?;
    Some(CoverWitness {
        p: p.clone(),
        q: q.clone(),
        new_element,
    })
}

/// Whether the added set of a cover is meet-irreducible in the larger lattice.
pub fn verify_new_element_meet_irreducible(w: &CoverWitness) -> Result<bool> {
    match lofn_covers(&w.p, &w.q) {
        Some(real) if real.new_element == w.new_element => {}
        _ => return Err(Error::Precondition("witness does not describe a cover".into())),
    }
    w.p.is_meet_irreducible(w.new_element)
}

/// Largest atom count for which every lattice is listed without opting in.
pub const FREE_LATTICE_LISTING_ATOMS: usize = 3;

/// Every lattice on `n` ordered atoms, by brute force over families of the
/// sets strictly between the atoms and the top. There are `2^(2^n - n - 2)`
/// candidates: 8 for three atoms, 1024 for four. Four atoms must be requested
/// with `allow_four`; five or more are refused.
pub fn all_atomic_lattices(n: usize, allow_four: bool) -> Result<Vec<AtomicLattice>> {
    if n == 0 {
        return Err(Error::Precondition("need at least 1 atom".into()));
    }
    let limit = if allow_four { 4 } else { FREE_LATTICE_LISTING_ATOMS };
    if n > limit {
        return Err(Error::CapExceeded {
            what: "atoms for full lattice listing",
            limit,
            got: n,
        });
    }
    let full = AtomSet::full(n);
    let middle: Vec<AtomSet> = full
        .subsets()
        .into_iter()
        .filter(|s| s.len() >= 2 && *s != full)
        .collect();
    let base = base_family(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << middle.len()) {
        let chosen = middle
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, s)| *s);
        let family: Vec<AtomSet> = base.iter().copied().chain(chosen).collect();
        let members: HashSet<AtomSet> = family.iter().copied().collect();
        let closed = family
            .iter()
            .all(|&a| family.iter().all(|&b| members.contains(&a.intersection(b))));
        if closed {
            out.push(AtomicLattice::from_sets(n, family)?);
        }
    }
    Ok(out)
}
