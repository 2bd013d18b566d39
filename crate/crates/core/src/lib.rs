//! Finite atomic lattices, monomial labelings and lcm-lattices of monomial
//! ideals.
//!
//! Lattices are stored as intersection-closed families of atom sets
//! ([`AtomicLattice`]). A [`Labeling`] puts monomials on elements; from it
//! [`ideal`] builds the ideals generated by `x(a)` and `Δ(a)`, and [`coord`]
//! decides whether their lcm-lattices reproduce the lattice. [`superatomic`]
//! enumerates super-atomic lattices, and [`labeling_c`] studies the labeling
//! of each element by its atoms.

pub mod coord;
pub mod error;
pub mod ideal;
pub mod io;
pub mod iso;
pub mod labeling_c;
pub mod lattice;
pub mod monomial;
pub mod superatomic;

pub use error::{Error, Result, ValidationError};
pub use ideal::{Labeling, LcmLattice, MonomialIdeal};
pub use lattice::{AtomSet, AtomicLattice};
pub use monomial::{Monomial, Variable};
