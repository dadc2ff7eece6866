//! Finite `(m,n)`-semirings and an algebra of fault-tolerant systems.
//!
//! * [`algebra`]: operation tables, axiom checkers and property reports.
//! * [`constructions`]: modular and Boolean instances, derived binary
//!   operations, sampled checks for rule-defined carriers.
//! * [`morphisms`]: congruences, quotients, homomorphisms, kernels.
//! * [`ideals`]: ideals, generated ideals and subset products.
//! * [`ft`]: series/parallel system terms, their normal forms, exact
//!   failure probabilities and a sound fault-tolerance order.
//! * [`cli`]: text file formats and the `mnsr` command dispatcher.

pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod ft;
pub mod ideals;
pub mod morphisms;

pub use algebra::{Check, Element, Limits, MNSemiring, OpTable, PropertyReport, Side, Witness, WitnessKind};
pub use error::{Error, Result};
