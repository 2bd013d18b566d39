//! Order isomorphism between atomic lattices.
//!
//! An order isomorphism maps atoms to atoms, and every element is determined
//! by its atom support, so the search runs over atom bijections only. Atoms
//! are matched against candidates with the same structural signature, and a
//! partial assignment is abandoned as soon as some member spanned by the
//! assigned atoms fails to map onto a member of the other lattice.

use std::collections::HashSet;

use crate::lattice::{AtomSet, AtomicLattice};

type Signature = Vec<(usize, usize, usize, usize)>;

fn atom_signatures(l: &AtomicLattice) -> Vec<Signature> {
    let heights = l.heights();
    let degrees = l.cover_degrees();
    (1..=l.atom_count())
        .map(|a| {
            let mut sig: Signature = l
                .sets()
                .iter()
                .enumerate()
                .filter(|(_, s)| s.contains(a))
                .map(|(i, s)| (s.len(), heights[i], degrees[i].0, degrees[i].1))
                .collect();
            sig.sort();
            sig
        })
        .collect()
}

fn image(s: AtomSet, perm: &[usize]) -> AtomSet {
    AtomSet::from_atoms(s.atoms().map(|a| perm[a - 1]))
}

/// An atom bijection `perm` (atom `i` of `p` goes to `perm[i - 1]` of `q`)
/// carrying the set system of `p` onto that of `q`, if one exists. The first
/// one in lexicographic order of candidate choices is returned.
pub fn atom_isomorphism(p: &AtomicLattice, q: &AtomicLattice) -> Option<Vec<usize>> {
    let n = p.atom_count();
    if n != q.atom_count() || p.len() != q.len() {
        return None;
    }
    let sig_p = atom_signatures(p);
    let sig_q = atom_signatures(q);
    {
        let mut a = sig_p.clone();
        let mut b = sig_q.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }
    let q_sets: HashSet<AtomSet> = q.sets().iter().copied().collect();
    let mut perm = vec![0usize; n];
    let mut used = vec![false; n + 1];
    if search(p, q, &q_sets, &sig_p, &sig_q, 1, &mut perm, &mut used) {
        Some(perm)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn search(
    p: &AtomicLattice,
    q: &AtomicLattice,
    q_sets: &HashSet<AtomSet>,
    sig_p: &[Signature],
    sig_q: &[Signature],
    atom: usize,
    perm: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    let n = p.atom_count();
    if atom > n {
        return true;
    }
    let assigned = AtomSet::full(atom);
    for cand in 1..=n {
        if used[cand] || sig_p[atom - 1] != sig_q[cand - 1] {
            continue;
        }
        perm[atom - 1] = cand;
        used[cand] = true;
        let img_assigned = image(assigned, perm);
        let forward_ok = p
            .sets()
            .iter()
            .filter(|s| s.contains(atom) && s.is_subset(assigned))
            .all(|s| q_sets.contains(&image(*s, perm)));
        let count_ok = forward_ok
            && p.sets().iter().filter(|s| s.is_subset(assigned)).count()
                == q.sets().iter().filter(|s| s.is_subset(img_assigned)).count();
        if count_ok && search(p, q, q_sets, sig_p, sig_q, atom + 1, perm, used) {
            return true;
        }
        used[cand] = false;
    }
    perm[atom - 1] = 0;
    false
}

/// An order isomorphism from `p` onto `q` as an element map: entry `i` is the
/// index in `q.sets()` of the image of `p.sets()[i]`.
pub fn lattice_isomorphic(p: &AtomicLattice, q: &AtomicLattice) -> Option<Vec<usize>> {
    let perm = atom_isomorphism(p, q)?;
    Some(
        p.sets()
            .iter()
            .map(|&s| q.index_of(image(s, &perm)).expect("verified during search"))
            .collect(),
    )
}

pub fn is_isomorphic(p: &AtomicLattice, q: &AtomicLattice) -> bool {
    atom_isomorphism(p, q).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_on_self() {
        let l = AtomicLattice::from_atom_lists(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[1, 2, 3]]).unwrap();
        let map = lattice_isomorphic(&l, &l).unwrap();
        assert_eq!(map, (0..l.len()).collect::<Vec<_>>());
    }

    #[test]
    fn relabelled_lattice_is_found() {
        let a = AtomicLattice::from_atom_lists(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[1, 2, 3]]).unwrap();
        let b = AtomicLattice::from_atom_lists(3, &[&[], &[1], &[2], &[3], &[1, 3], &[2, 3], &[1, 2, 3]]).unwrap();
        let perm = atom_isomorphism(&a, &b).unwrap();
        assert_eq!(a.permute_atoms(&perm), b);
    }

    #[test]
    fn different_shapes_are_rejected() {
        let a = AtomicLattice::boolean(3);
        let b = AtomicLattice::from_atom_lists(3, &[&[], &[1], &[2], &[3], &[1, 2], &[1, 3], &[1, 2, 3]]).unwrap();
        assert!(lattice_isomorphic(&a, &b).is_none());
        assert!(lattice_isomorphic(&a, &AtomicLattice::boolean(2)).is_none());
    }
}
