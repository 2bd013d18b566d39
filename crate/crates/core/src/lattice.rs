//! Finite atomic lattices in set-system form.
//!
//! A lattice on atoms `1..=n` is stored as the family of atom supports of its
//! elements. The family contains the empty set, every singleton and the full
//! set, and is closed under intersection; ordering by inclusion gives the
//! lattice back. Meets are intersections and the join of two elements is the
//! smallest member containing their union.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, ValidationError};

/// Largest supported atom count.
pub const MAX_ATOMS: usize = 64;

/// A subset of the atoms `1..=n`, bit `i - 1` standing for atom `i`.
///
/// Ordered by cardinality first and bitmask second, which is the canonical
/// order used for every iteration in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct AtomSet(u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub const fn from_bits(bits: u64) -> AtomSet {
        AtomSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{i}` for a 1-based atom index.
    pub fn singleton(atom: usize) -> AtomSet {
        assert!((1..=MAX_ATOMS).contains(&atom), "atom {atom} out of range");
        AtomSet(1 << (atom - 1))
    }

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> AtomSet {
        assert!(n <= MAX_ATOMS);
        if n == MAX_ATOMS {
            AtomSet(u64::MAX)
        } else {
            AtomSet((1u64 << n) - 1)
        }
    }

    /// Builds a set from 1-based atom indices.
    pub fn from_atoms<I: IntoIterator<Item = usize>>(atoms: I) -> AtomSet {
        atoms
            .into_iter()
            .fold(AtomSet::EMPTY, |acc, a| acc.union(AtomSet::singleton(a)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, atom: usize) -> bool {
        (1..=MAX_ATOMS).contains(&atom) && self.0 >> (atom - 1) & 1 == 1
    }

    pub fn is_subset(self, other: AtomSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: AtomSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn union(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: AtomSet) -> AtomSet {
        AtomSet(self.0 & !other.0)
    }

    pub fn with(self, atom: usize) -> AtomSet {
        self.union(AtomSet::singleton(atom))
    }

    pub fn without(self, atom: usize) -> AtomSet {
        self.difference(AtomSet::singleton(atom))
    }

    /// 1-based atom indices in increasing order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i + 1)
        })
    }

    /// Every subset of `self`, in canonical order.
    pub fn subsets(self) -> Vec<AtomSet> {
        let mut out = Vec::with_capacity(1 << self.len().min(20));
        let mut sub = self.0;
        loop {
            out.push(AtomSet(sub));
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & self.0;
        }
        out.sort();
        out
    }

    /// Unordered pairs `{i, j}` of atoms inside `self`, `i < j`.
    pub fn pairs(self) -> impl Iterator<Item = (usize, usize)> {
        let atoms: Vec<usize> = self.atoms().collect();
        let mut out = Vec::with_capacity(atoms.len() * atoms.len().saturating_sub(1) / 2);
        for (k, &i) in atoms.iter().enumerate() {
            for &j in &atoms[k + 1..] {
                out.push((i, j));
            }
        }
        out.into_iter()
    }
}

impl Ord for AtomSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.0.count_ones(), self.0).cmp(&(other.0.count_ones(), other.0))
    }
}

impl PartialOrd for AtomSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, a) in self.atoms().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for AtomSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.atoms())
    }
}

impl<'de> Deserialize<'de> for AtomSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let atoms = Vec::<usize>::deserialize(d)?;
        if let Some(bad) = atoms.iter().find(|&&a| !(1..=MAX_ATOMS).contains(&a)) {
            return Err(serde::de::Error::custom(format!("atom {bad} out of range")));
        }
        Ok(AtomSet::from_atoms(atoms))
    }
}

#[derive(Debug, Clone)]
struct Covers {
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

/// A validated finite atomic lattice.
#[derive(Clone)]
pub struct AtomicLattice {
    n: usize,
    sets: Vec<AtomSet>,
    index: HashMap<AtomSet, usize>,
    covers: OnceLock<Covers>,
}

impl PartialEq for AtomicLattice {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sets == other.sets
    }
}

impl Eq for AtomicLattice {}

impl Hash for AtomicLattice {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.sets.hash(state);
    }
}

impl fmt::Debug for AtomicLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AtomicLattice(n={}, {:?})", self.n, self.sets)
    }
}

impl AtomicLattice {
    /// Validates `family` as a lattice on `n` atoms. Duplicates are merged.
    ///
    /// On failure the error lists every missing required set and every pair
    /// whose intersection is absent.
    pub fn from_sets<I: IntoIterator<Item = AtomSet>>(n: usize, family: I) -> Result<AtomicLattice> {
        let mut err = ValidationError::default();
        if n == 0 || n > MAX_ATOMS {
            err.bad_atom_count = Some(n);
            return Err(Error::Validation(err));
        }
        let full = AtomSet::full(n);
        let mut sets: Vec<AtomSet> = family.into_iter().collect();
        for s in &sets {
            if !s.is_subset(full) {
                err.out_of_range.push(s.atoms().collect());
            }
        }
        sets.retain(|s| s.is_subset(full));
        sets.sort();
        sets.dedup();
        let index: HashMap<AtomSet, usize> = sets.iter().enumerate().map(|(i, &s)| (s, i)).collect();

        let required = std::iter::once(AtomSet::EMPTY)
            .chain((1..=n).map(AtomSet::singleton))
            .chain(std::iter::once(full));
        for r in required {
            if !index.contains_key(&r) && !err.missing_required.contains(&r) {
                err.missing_required.push(r);
            }
        }
        for (i, &p) in sets.iter().enumerate() {
            for &q in &sets[i + 1..] {
                if !index.contains_key(&p.intersection(q)) {
                    err.non_closed_pairs.push((p, q));
                }
            }
        }
        if !err.is_empty() {
            return Err(Error::Validation(err));
        }
        Ok(AtomicLattice {
            n,
            sets,
            index,
            covers: OnceLock::new(),
        })
    }

    /// Convenience constructor from 1-based atom lists.
    pub fn from_atom_lists(n: usize, lists: &[&[usize]]) -> Result<AtomicLattice> {
        Self::from_sets(n, lists.iter().map(|l| AtomSet::from_atoms(l.iter().copied())))
    }

    /// The Boolean lattice of all subsets of `n` atoms.
    pub fn boolean(n: usize) -> AtomicLattice {
        assert!(n <= 16, "boolean lattice on {n} atoms is too large");
        Self::from_sets(n, AtomSet::full(n).subsets()).expect("boolean lattice is valid")
    }

    pub fn atom_count(&self) -> usize {
        self.n
    }

    /// Members in canonical order.
    pub fn sets(&self) -> &[AtomSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: AtomSet) -> bool {
        self.index.contains_key(&s)
    }

    pub fn index_of(&self, s: AtomSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    fn require(&self, s: AtomSet) -> Result<usize> {
        self.index_of(s).ok_or(Error::NotInLattice(s))
    }

    pub fn bottom(&self) -> AtomSet {
        AtomSet::EMPTY
    }

    pub fn top(&self) -> AtomSet {
        AtomSet::full(self.n)
    }

    /// The singletons `{1}, ..., {n}`.
    pub fn atoms(&self) -> impl Iterator<Item = AtomSet> {
        (1..=self.n).map(AtomSet::singleton)
    }

    pub fn is_atom(&self, s: AtomSet) -> bool {
        s.len() == 1
    }

    /// Smallest member containing `mask`, i.e. the join of the atoms in
    /// `mask`. `mask` may be any subset of the atoms.
    pub fn closure(&self, mask: AtomSet) -> AtomSet {
        // Canonical order sorts by cardinality, and the family is closed under
        // intersection, so the first superset met is the least one.
        *self
            .sets
            .iter()
            .find(|s| mask.is_subset(**s))
            .expect("the full set contains every mask")
    }

    pub fn meet(&self, p: AtomSet, q: AtomSet) -> Result<AtomSet> {
        self.require(p)?;
        self.require(q)?;
        Ok(p.intersection(q))
    }

    pub fn join(&self, p: AtomSet, q: AtomSet) -> Result<AtomSet> {
        self.require(p)?;
        self.require(q)?;
        Ok(self.closure(p.union(q)))
    }

    /// `p <= q`.
    pub fn le(&self, p: AtomSet, q: AtomSet) -> bool {
        p.is_subset(q)
    }

    pub fn comparable(&self, p: AtomSet, q: AtomSet) -> bool {
        p.is_subset(q) || q.is_subset(p)
    }

    /// `⌈p⌉`: every member above or equal to `p`.
    pub fn filter(&self, p: AtomSet) -> Result<Vec<AtomSet>> {
        self.require(p)?;
        Ok(self.sets.iter().copied().filter(|s| p.is_subset(*s)).collect())
    }

    /// `⌊p⌋`: every member below or equal to `p`.
    pub fn order_ideal(&self, p: AtomSet) -> Result<Vec<AtomSet>> {
        self.require(p)?;
        Ok(self.sets.iter().copied().filter(|s| s.is_subset(p)).collect())
    }

    /// Members not above `p`.
    pub fn filter_complement(&self, p: AtomSet) -> Result<Vec<AtomSet>> {
        self.require(p)?;
        Ok(self.sets.iter().copied().filter(|s| !p.is_subset(*s)).collect())
    }

    fn covers(&self) -> &Covers {
        self.covers.get_or_init(|| {
            let len = self.sets.len();
            let mut upper = vec![Vec::new(); len];
            let mut lower = vec![Vec::new(); len];
            for (i, &p) in self.sets.iter().enumerate() {
                // Any strict superset of p contains the closure of p + {a} for
                // some atom a outside p, so the covers are the minimal ones.
                let mut cands: Vec<AtomSet> = AtomSet::full(self.n)
                    .difference(p)
                    .atoms()
                    .map(|a| self.closure(p.with(a)))
                    .collect();
                cands.sort();
                cands.dedup();
                let minimal: Vec<AtomSet> = cands
                    .iter()
                    .copied()
                    .filter(|c| !cands.iter().any(|d| d.is_strict_subset(*c)))
                    .collect();
                for c in minimal {
                    let j = self.index[&c];
                    upper[i].push(j);
                    lower[j].push(i);
                }
            }
            for l in &mut lower {
                l.sort();
            }
            Covers { upper, lower }
        })
    }

    /// Members covering `p`.
    pub fn upper_covers(&self, p: AtomSet) -> Result<Vec<AtomSet>> {
        let i = self.require(p)?;
        Ok(self.covers().upper[i].iter().map(|&j| self.sets[j]).collect())
    }

    /// Members covered by `p`.
    pub fn lower_covers(&self, p: AtomSet) -> Result<Vec<AtomSet>> {
        let i = self.require(p)?;
        Ok(self.covers().lower[i].iter().map(|&j| self.sets[j]).collect())
    }

    /// Cover relations `(lower, upper)` in canonical order of the lower end.
    pub fn cover_pairs(&self) -> Vec<(AtomSet, AtomSet)> {
        let covers = self.covers();
        let mut out = Vec::new();
        for (i, ups) in covers.upper.iter().enumerate() {
            let mut ups: Vec<AtomSet> = ups.iter().map(|&j| self.sets[j]).collect();
            ups.sort();
            out.extend(ups.into_iter().map(|u| (self.sets[i], u)));
        }
        out
    }

    /// `mi(P)`: members with a single upper cover, plus the top, where the
    /// defining condition holds vacuously.
    pub fn meet_irreducibles(&self) -> Vec<AtomSet> {
        let covers = self.covers();
        let top = self.top();
        self.sets
            .iter()
            .enumerate()
            .filter(|&(i, &s)| s == top || covers.upper[i].len() == 1)
            .map(|(_, &s)| s)
            .collect()
    }

    /// `mi(P)` straight from the definition: `x` is meet-irreducible when no
    /// two members strictly above it meet to `x`.
    pub fn meet_irreducibles_brute_force(&self) -> Vec<AtomSet> {
        self.sets
            .iter()
            .copied()
            .filter(|&x| {
                let above: Vec<AtomSet> = self.sets.iter().copied().filter(|s| x.is_strict_subset(*s)).collect();
                !above
                    .iter()
                    .any(|&a| above.iter().any(|&b| a.intersection(b) == x))
            })
            .collect()
    }

    pub fn is_meet_irreducible(&self, p: AtomSet) -> Result<bool> {
        let i = self.require(p)?;
        Ok(p == self.top() || self.covers().upper[i].len() == 1)
    }

    /// `B_p`: all sets of atoms under `p` whose join is `p`, in canonical
    /// order.
    pub fn b_sets(&self, p: AtomSet) -> Result<Vec<AtomSet>> {
        self.require(p)?;
        Ok(p.subsets().into_iter().filter(|&t| self.closure(t) == p).collect())
    }

    /// `N([a, b])`, the number of members between `a` and `b`.
    pub fn interval_count(&self, a: AtomSet, b: AtomSet) -> Result<usize> {
        self.require(a)?;
        self.require(b)?;
        if !a.is_subset(b) {
            return Err(Error::IncomparableEndpoints(a, b));
        }
        Ok(self
            .sets
            .iter()
            .filter(|s| a.is_subset(**s) && s.is_subset(b))
            .count())
    }

    /// `N([p, 1])`.
    pub fn up_count(&self, p: AtomSet) -> Result<usize> {
        self.interval_count(p, self.top())
    }

    /// Length of the longest chain from the bottom to each member, aligned
    /// with [`AtomicLattice::sets`].
    pub fn heights(&self) -> Vec<usize> {
        let covers = self.covers();
        let mut h = vec![0usize; self.sets.len()];
        // Canonical order lists every lower cover before its upper covers.
        for i in 0..self.sets.len() {
            h[i] = covers.lower[i].iter().map(|&j| h[j] + 1).max().unwrap_or(0);
        }
        h
    }

    /// Number of upper and lower covers of each member.
    pub fn cover_degrees(&self) -> Vec<(usize, usize)> {
        let covers = self.covers();
        covers
            .upper
            .iter()
            .zip(&covers.lower)
            .map(|(u, l)| (u.len(), l.len()))
            .collect()
    }

    /// The family with one member removed, if that is still a lattice.
    pub fn without(&self, s: AtomSet) -> Result<AtomicLattice> {
        self.require(s)?;
        Self::from_sets(self.n, self.sets.iter().copied().filter(|&t| t != s))
    }

    /// Applies an atom permutation (`perm[i - 1]` is the image of atom `i`).
    pub fn permute_atoms(&self, perm: &[usize]) -> AtomicLattice {
        assert_eq!(perm.len(), self.n);
        let map = |s: AtomSet| AtomSet::from_atoms(s.atoms().map(|a| perm[a - 1]));
        Self::from_sets(self.n, self.sets.iter().map(|&s| map(s))).expect("permutations preserve validity")
    }
}
