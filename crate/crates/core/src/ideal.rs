//! Ideals built from labeled lattices, and lattices built from ideals.
//!
//! For a labeling `M` of a lattice `P`, the generator attached to an atom `a`
//! is `x(a)`, the product of the labels of every element not above `a`. The
//! weak generator `Δ(a)` is the gcd, over every set of atoms `T` whose join
//! lies above `a`, of `lcm{x(b) : b ∈ T}`.
//!
//! In the other direction, the lcm-lattice of an ideal has the subset-lcms of
//! its minimal generators as elements, and [`labeling_d`] recovers a labeling
//! from an isomorphism onto it.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::lattice::{AtomSet, AtomicLattice};
use crate::monomial::Monomial;

/// Largest generator count accepted by [`lcm_lattice`].
pub const MAX_LCM_GENERATORS: usize = 20;

/// Largest atom count for which `Δ` is computed; the computation visits
/// every subset of the atoms.
pub const MAX_DELTA_ATOMS: usize = 20;

/// Monomial labels on some elements of a lattice; absent elements carry 1.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Labeling {
    labels: BTreeMap<AtomSet, Monomial>,
}

impl Labeling {
    /// Checks every key against `lattice`; unit labels are dropped.
    pub fn new<I>(lattice: &AtomicLattice, labels: I) -> Result<Labeling>
    where
        I: IntoIterator<Item = (AtomSet, Monomial)>,
    {
        let mut out = BTreeMap::new();
        for (s, m) in labels {
            if !lattice.contains(s) {
                return Err(Error::NotInLattice(s));
            }
            if m.is_one() {
                continue;
            }
            if out.insert(s, m).is_some() {
                return Err(Error::Precondition(format!("element {s} labeled twice")));
            }
        }
        Ok(Labeling { labels: out })
    }

    pub fn empty() -> Labeling {
        Labeling::default()
    }

    /// The label of `p`, or `None` when it is 1.
    pub fn get(&self, p: AtomSet) -> Option<&Monomial> {
        self.labels.get(&p)
    }

    /// The label of `p` with 1 for unlabeled elements.
    pub fn label(&self, p: AtomSet) -> Monomial {
        self.labels.get(&p).cloned().unwrap_or_default()
    }

    pub fn is_labeled(&self, p: AtomSet) -> bool {
        self.labels.contains_key(&p)
    }

    /// Non-unit labels in canonical element order.
    pub fn iter(&self) -> impl Iterator<Item = (AtomSet, &Monomial)> {
        self.labels.iter().map(|(s, m)| (*s, m))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Applies `f` to every label.
    pub fn map_labels(&self, mut f: impl FnMut(&Monomial) -> Monomial) -> Labeling {
        Labeling {
            labels: self
                .labels
                .iter()
                .map(|(s, m)| (*s, f(m)))
                .filter(|(_, m)| !m.is_one())
                .collect(),
        }
    }
}

/// A finite list of generators. The list is kept as given; minimality is a
/// separate view.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MonomialIdeal {
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(generators: Vec<Monomial>) -> MonomialIdeal {
        MonomialIdeal { generators }
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators not divisible by an earlier kept generator or by any other
    /// distinct generator, in input order. Duplicates keep their first copy.
    pub fn minimal_generators(&self) -> Vec<Monomial> {
        let g = &self.generators;
        let mut out: Vec<Monomial> = Vec::new();
        for (i, m) in g.iter().enumerate() {
            let redundant = g.iter().enumerate().any(|(j, other)| {
                j != i && other.divides(m) && (other != m || j < i)
            });
            if !redundant {
                out.push(m.clone());
            }
        }
        out
    }

    pub fn minimalized(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.minimal_generators())
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal_generators().len() == self.generators.len()
    }

    pub fn contains_unit(&self) -> bool {
        self.generators.iter().any(Monomial::is_one)
    }
}

/// `x(a) = ∏ m_p` over the elements `p` not above the atom `a` (1-based).
pub fn x_of_atom(lattice: &AtomicLattice, labeling: &Labeling, atom: usize) -> Monomial {
    assert!((1..=lattice.atom_count()).contains(&atom), "atom {atom} out of range");
    Monomial::product(
        labeling
            .iter()
            .filter(|(p, _)| !p.contains(atom))
            .map(|(_, m)| m),
    )
}

/// `x(a)` for every atom, indexed by atom.
pub fn atom_generators(lattice: &AtomicLattice, labeling: &Labeling) -> Vec<Monomial> {
    (1..=lattice.atom_count())
        .map(|a| x_of_atom(lattice, labeling, a))
        .collect()
}

/// `M_{P,M}`: generator `i` is `x(a_{i+1})`. Nothing is removed.
pub fn ideal_from_labeling(lattice: &AtomicLattice, labeling: &Labeling) -> MonomialIdeal {
    MonomialIdeal::new(atom_generators(lattice, labeling))
}

/// `Δ(a)` for every atom, given the atom generators `x`.
///
/// Every nonempty set of atoms `T` is visited once; its lcm contributes to the
/// gcd of each atom lying under its join.
pub fn deltas_from_generators(lattice: &AtomicLattice, x: &[Monomial]) -> Result<Vec<Monomial>> {
    let n = lattice.atom_count();
    assert_eq!(x.len(), n);
    if n > MAX_DELTA_ATOMS {
        return Err(Error::CapExceeded {
            what: "atoms for delta computation",
            limit: MAX_DELTA_ATOMS,
            got: n,
        });
    }
    let mut acc: Vec<Option<Monomial>> = vec![None; n];
    // Depth-first over subsets keeps one running lcm per level.
    fn visit(
        lattice: &AtomicLattice,
        x: &[Monomial],
        next: usize,
        mask: AtomSet,
        lcm: &Monomial,
        acc: &mut [Option<Monomial>],
    ) {
        for b in next..=x.len() {
            let t = mask.with(b);
            let l = lcm.lcm(&x[b - 1]);
            for a in lattice.closure(t).atoms() {
                let slot = &mut acc[a - 1];
                *slot = Some(match slot.take() {
                    None => l.clone(),
                    Some(g) => g.gcd(&l),
                });
            }
            visit(lattice, x, b + 1, t, &l, acc);
        }
    }
    visit(lattice, x, 1, AtomSet::EMPTY, &Monomial::one(), &mut acc);
    Ok(acc
        .into_iter()
        .map(|m| m.expect("{a} itself always qualifies"))
        .collect())
}

/// `Δ(a)` for the atom `a` (1-based).
pub fn delta_of_atom(lattice: &AtomicLattice, labeling: &Labeling, atom: usize) -> Result<Monomial> {
    assert!((1..=lattice.atom_count()).contains(&atom), "atom {atom} out of range");
    let x = atom_generators(lattice, labeling);
    Ok(deltas_from_generators(lattice, &x)?.swap_remove(atom - 1))
}

/// `Δ(a)` straight from the definition: gcd over every `p >= a` and every
/// `T ∈ B_p` of `lcm{x(b) : b ∈ T}`. Slower than [`deltas_from_generators`].
pub fn delta_by_b_sets(lattice: &AtomicLattice, labeling: &Labeling, atom: usize) -> Result<Monomial> {
    let x = atom_generators(lattice, labeling);
    let mut lcms = Vec::new();
    for p in lattice.filter(AtomSet::singleton(atom))? {
        for t in lattice.b_sets(p)? {
            lcms.push(Monomial::lcm_all(t.atoms().map(|b| &x[b - 1])));
        }
    }
    Ok(Monomial::gcd_all(&lcms))
}

/// `I_{P,M}`: generator `i` is `Δ(a_{i+1})`.
pub fn weak_ideal(lattice: &AtomicLattice, labeling: &Labeling) -> Result<MonomialIdeal> {
    let x = atom_generators(lattice, labeling);
    Ok(MonomialIdeal::new(deltas_from_generators(lattice, &x)?))
}

/// `g(p) = lcm{images[a] : a ∈ supp(p)}` for each member, aligned with
/// `lattice.sets()`; `images[i]` belongs to atom `i + 1`.
pub fn join_extension(lattice: &AtomicLattice, images: &[Monomial]) -> Vec<Monomial> {
    lattice
        .sets()
        .iter()
        .map(|s| Monomial::lcm_all(s.atoms().map(|a| &images[a - 1])))
        .collect()
}

/// `f(p) = ∏ m_q` over `q` not above `p`, aligned with `lattice.sets()`.
pub fn complement_products(lattice: &AtomicLattice, labeling: &Labeling) -> Vec<Monomial> {
    lattice
        .sets()
        .iter()
        .map(|&p| {
            Monomial::product(
                labeling
                    .iter()
                    .filter(|(q, _)| !p.is_subset(*q))
                    .map(|(_, m)| m),
            )
        })
        .collect()
}

/// The lcm-lattice of an ideal.
///
/// Minimal generator `i` (in input order) is atom `i + 1`, and every element
/// is stored with the set of generators dividing it.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    generators: Vec<Monomial>,
    lattice: AtomicLattice,
    monomials: Vec<Monomial>,
    lookup: HashMap<Monomial, AtomSet>,
}

impl LcmLattice {
    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    /// The abstract lattice with the monomials forgotten.
    pub fn lattice(&self) -> &AtomicLattice {
        &self.lattice
    }

    /// Monomials aligned with `lattice().sets()`.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomial_of(&self, s: AtomSet) -> Option<&Monomial> {
        self.lattice.index_of(s).map(|i| &self.monomials[i])
    }

    pub fn element_of(&self, m: &Monomial) -> Option<AtomSet> {
        self.lookup.get(m).copied()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.lookup.contains_key(m)
    }

    /// Element map from the abstract lattice to monomials.
    pub fn element_map(&self) -> BTreeMap<AtomSet, Monomial> {
        self.lattice
            .sets()
            .iter()
            .copied()
            .zip(self.monomials.iter().cloned())
            .collect()
    }
}

/// `LCM(I)`.
pub fn lcm_lattice(ideal: &MonomialIdeal) -> Result<LcmLattice> {
    if ideal.is_empty() {
        return Err(Error::Precondition("ideal has no generators".into()));
    }
    if ideal.contains_unit() {
        return Err(Error::DegenerateIdeal);
    }
    let gens = ideal.minimal_generators();
    if gens.len() > MAX_LCM_GENERATORS {
        return Err(Error::CapExceeded {
            what: "lcm-lattice generators",
            limit: MAX_LCM_GENERATORS,
            got: gens.len(),
        });
    }
    let mut elements: Vec<Monomial> = vec![Monomial::one()];
    let mut seen: std::collections::HashSet<Monomial> = elements.iter().cloned().collect();
    for g in &gens {
        let fresh: Vec<Monomial> = elements
            .iter()
            .map(|e| e.lcm(g))
            .filter(|m| !seen.contains(m))
            .collect();
        for m in fresh {
            if seen.insert(m.clone()) {
                elements.push(m);
            }
        }
    }
    let support = |m: &Monomial| {
        AtomSet::from_atoms(
            gens.iter()
                .enumerate()
                .filter(|(_, g)| g.divides(m))
                .map(|(i, _)| i + 1),
        )
    };
    let lookup: HashMap<Monomial, AtomSet> = elements.iter().map(|m| (m.clone(), support(m))).collect();
    let lattice = AtomicLattice::from_sets(gens.len(), lookup.values().copied())
        .map_err(|e| Error::InvariantBreach(format!("lcm-lattice is not atomic: {e}")))?;
    if lattice.len() != elements.len() {
        return Err(Error::InvariantBreach("two lcms share a support".into()));
    }
    let by_set: HashMap<AtomSet, &Monomial> = lookup.iter().map(|(m, s)| (*s, m)).collect();
    let monomials = lattice.sets().iter().map(|s| by_set[s].clone()).collect();
    Ok(LcmLattice {
        generators: gens,
        lattice,
        monomials,
        lookup,
    })
}

/// The labeling `D` of an abstract lattice from an order isomorphism onto an
/// lcm-lattice: `m_p = gcd{iso(t) : t > p} / iso(p)`, with the gcd at the top
/// taken to be `iso(top)`. Unit labels are dropped.
pub fn labeling_d(lattice: &AtomicLattice, iso: &BTreeMap<AtomSet, Monomial>) -> Result<Labeling> {
    let image = |s: &AtomSet| {
        iso.get(s)
            .ok_or_else(|| Error::Precondition(format!("isomorphism does not cover {s}")))
    };
    let mut labels = Vec::new();
    for &p in lattice.sets() {
        let bar_p = image(&p)?;
        let above: Vec<&Monomial> = lattice
            .sets()
            .iter()
            .filter(|t| p.is_strict_subset(**t))
            .map(image)
            .collect::<Result<_>>()?;
        let g = if above.is_empty() {
            bar_p.clone()
        } else {
            Monomial::gcd_all(above)
        };
        let m = g
            .div_exact(bar_p)
            .map_err(|e| Error::InvariantBreach(format!("labeling D at {p}: {e}")))?;
        labels.push((p, m));
    }
    Labeling::new(lattice, labels)
}

/// The labeling `D` of the lcm-lattice's own abstract lattice.
pub fn labeling_d_of(lcm: &LcmLattice) -> Result<Labeling> {
    labeling_d(lcm.lattice(), &lcm.element_map())
}
