//! Matrix models of strongly distributive categories: tensor and direct-sum
//! structure, the canonical isomorphisms as index permutations, the copying
//! functor and its coherence diagrams, the iterator construction in naive and
//! efficient form, a state-vector simulator for controlled circuits, and
//! period finding for Shor's algorithm built on the efficient iterator.

pub mod cli;
pub mod coherence;
pub mod error;
pub mod iterator;
pub mod morphisms;
pub mod quantum;
pub mod random;
pub mod semiring;
pub mod shapes;
pub mod shor;
