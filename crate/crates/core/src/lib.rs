//! Exact computer algebra for generalized rings.
//!
//! The objects here are functors from the category of finite sets with
//! partially defined bijections into pointed sets, equipped with a
//! multiplication `◁` and a contraction `⫽` subject to six axiom families
//! (associativity, unit, two adjunctions, two linearities).  Everything is
//! finite and exact: carriers are enumerated tables or exact rational
//! vectors, and every law the library claims is checked by exhaustive or
//! seeded-random sweeps that report concrete counterexample witnesses.
//!
//! Module map:
//!
//! * [`fincat`] — finite sets, partial functions, partial bijections,
//!   monotone maps; composition, transpose, kernel/cokernel data.
//! * [`genring`] — generalized rings: carriers, transport, `◁`/`⫽`,
//!   axiom checking, formal expressions with one-contraction normal form,
//!   homomorphisms, and the shipped instance zoo.
//! * [`aset`] — module theory: A-sets, free objects and congruence-closure
//!   quotients, tensor, internal hom, coproduct, base change.
//! * [`simpset`] — truncation-bounded simplicial A-sets, standard complexes,
//!   free maps, pushout products.
//! * [`symspec`] — level-truncated symmetric sequences and sphere-module
//!   spectra: induced/decomposition tensors, twist, free modules, latching,
//!   shift adjunctions.
//! * [`specplus`] — ideals generated through the action, plus-primes, the
//!   spectrum topology, localization, and quasi-coherent sheaf sections.
//! * [`suite`] — the end-to-end verification matrix used by the CLI and the
//!   acceptance tests.

pub mod aset;
pub mod descriptor;
pub mod error;
pub mod exec;
pub mod fincat;
pub mod genring;
pub mod report;
pub mod simpset;
pub mod specplus;
pub mod suite;
pub mod symspec;

pub use error::{Error, Result};
