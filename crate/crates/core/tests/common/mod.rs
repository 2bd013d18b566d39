//! Shared generators and brute-force oracles for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};

use lcmlat::superatomic::all_atomic_lattices;
use lcmlat::{AtomSet, AtomicLattice, Labeling, Monomial, Variable};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn lat(n: usize, lists: &[&[usize]]) -> AtomicLattice {
    AtomicLattice::from_atom_lists(n, lists).unwrap()
}

pub fn mono(s: &str) -> Monomial {
    s.parse().unwrap()
}

pub fn set(atoms: &[usize]) -> AtomSet {
    AtomSet::from_atoms(atoms.iter().copied())
}

pub fn labeling(p: &AtomicLattice, items: &[(&[usize], &str)]) -> Labeling {
    Labeling::new(p, items.iter().map(|(s, m)| (set(s), mono(m)))).unwrap()
}

pub fn rendered(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(|m| m.to_string()).collect()
}

/// Every lattice on 2 to `max_n` atoms.
pub fn corpus(max_n: usize) -> Vec<AtomicLattice> {
    (2..=max_n)
        .flat_map(|n| all_atomic_lattices(n, true).unwrap())
        .collect()
}

/// Every intersection-closed family on `n` atoms containing the empty set,
/// the singletons and the full set, as raw bitmasks. Written without the
/// library so it can serve as an oracle.
pub fn raw_families(n: usize) -> Vec<Vec<u64>> {
    let full = (1u64 << n) - 1;
    let middle: Vec<u64> = (1..full).filter(|m| m.count_ones() >= 2).collect();
    let mut base: Vec<u64> = vec![0, full];
    base.extend((0..n).map(|i| 1u64 << i));
    let mut out = Vec::new();
    for pick in 0u64..(1 << middle.len()) {
        let mut fam = base.clone();
        fam.extend(middle.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).map(|(_, m)| *m));
        let members: HashSet<u64> = fam.iter().copied().collect();
        if fam.iter().all(|a| fam.iter().all(|b| members.contains(&(a & b)))) {
            fam.sort_by_key(|m| (m.count_ones(), *m));
            out.push(fam);
        }
    }
    out
}

fn var(name: &str) -> Variable {
    Variable::new(name).unwrap()
}

fn power(name: &str, e: u32) -> Monomial {
    Monomial::from_exponents([(var(name), e)]).unwrap()
}

/// A random chain of members strictly below the top, walking up covers.
fn random_chain(rng: &mut StdRng, p: &AtomicLattice) -> Vec<AtomSet> {
    let top = p.top();
    let below: Vec<AtomSet> = p.sets().iter().copied().filter(|s| *s != top).collect();
    let mut cur = *below.choose(rng).unwrap();
    let mut chain = vec![cur];
    while rng.gen_bool(0.6) {
        let ups: Vec<AtomSet> = p
            .upper_covers(cur)
            .unwrap()
            .into_iter()
            .filter(|s| *s != top)
            .collect();
        let Some(&next) = ups.choose(rng) else { break };
        cur = next;
        chain.push(cur);
    }
    chain
}

/// A labeling meeting (A1)/(A2) with the top left unlabeled: each chain
/// variable lives on a random chain, and every meet-irreducible below the top
/// gets a fresh variable.
pub fn random_a1a2(rng: &mut StdRng, p: &AtomicLattice, tag: &str) -> Labeling {
    let mut labels: BTreeMap<AtomSet, Monomial> = BTreeMap::new();
    let put = |labels: &mut BTreeMap<AtomSet, Monomial>, s: AtomSet, m: Monomial| {
        let e = labels.entry(s).or_default();
        *e = e.mul(&m);
    };
    for v in 0..rng.gen_range(0..=3) {
        let chain = random_chain(rng, p);
        let name = format!("{tag}c{v}");
        for s in chain {
            if rng.gen_bool(0.7) {
                put(&mut labels, s, power(&name, rng.gen_range(1..=3)));
            }
        }
    }
    let top = p.top();
    for (k, s) in p.meet_irreducibles().into_iter().enumerate() {
        if s != top && (!labels.contains_key(&s) || rng.gen_bool(0.3)) {
            put(&mut labels, s, power(&format!("{tag}f{k}"), rng.gen_range(1..=2)));
        }
    }
    Labeling::new(p, labels).unwrap()
}

/// Labels drawn from a small shared pool of variables, so incomparable
/// elements often share factors. Any element may be labeled.
pub fn random_shared(rng: &mut StdRng, p: &AtomicLattice) -> Labeling {
    let pool = ["u", "v", "w", "z"];
    let mut labels = Vec::new();
    for &s in p.sets() {
        if rng.gen_bool(0.65) {
            let m = Monomial::from_exponents(
                pool.iter().map(|v| (var(v), rng.gen_range(0..=2u32))),
            )
            .unwrap();
            labels.push((s, m));
        }
    }
    Labeling::new(p, labels).unwrap()
}

/// An (A1)/(A2) labeling perturbed by a variable shared between one or two
/// incomparable pairs; a good source of labelings meeting (C1)/(C2) without
/// meeting (A1)/(A2).
pub fn random_perturbed(rng: &mut StdRng, p: &AtomicLattice) -> Labeling {
    let base = random_a1a2(rng, p, "b");
    let mut labels: BTreeMap<AtomSet, Monomial> = base.iter().map(|(s, m)| (s, m.clone())).collect();
    let sets = p.sets();
    for t in 0..rng.gen_range(1..=2) {
        let x = *sets.choose(rng).unwrap();
        let y = *sets.choose(rng).unwrap();
        if p.comparable(x, y) {
            continue;
        }
        let name = format!("s{t}");
        for s in [x, y] {
            let e = labels.entry(s).or_default();
            *e = e.mul(&power(&name, rng.gen_range(1..=2)));
        }
    }
    Labeling::new(p, labels).unwrap()
}

/// Order isomorphism by trying every bijection of elements; only for tiny
/// lattices.
pub fn brute_isomorphic(p: &AtomicLattice, q: &AtomicLattice) -> bool {
    let (a, b) = (p.sets(), q.sets());
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let ok = (0..n).all(|i| (0..n).all(|j| a[i].is_subset(a[j]) == b[perm[i]].is_subset(b[perm[j]])));
        if ok {
            return true;
        }
        // Next permutation in lexicographic order.
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            return false;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
}
