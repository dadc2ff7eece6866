//! Series/parallel systems as terms over `f` (series) and `g` (parallel),
//! with an exact failure-probability semantics and a rule-based
//! fault-tolerance order.
//!
//! `s <= t` reads "s is at least as fault tolerant as t": under every
//! assignment consistent with the atom poset, `s` fails with probability no
//! greater than `t`. That probability model is one reading of the order;
//! [`derive_order`] is sound for it but deliberately incomplete.

mod oracle;
mod order;
mod poset;
mod reliability;
mod term;

pub use oracle::{
    atom_names, check_soundness, random_duplicate_free_term, random_poset, random_term, sample_assignment,
    semantic_order_sampled, SemanticComparison, SemanticRelation, SoundnessConfig, SoundnessReport,
    SoundnessViolation, TermShape, GRID,
};
pub use order::{derive_le, derive_order, OrderResult, Relation, Rule, MAX_CHILDREN, MAX_GROUPED};
pub use poset::AtomPoset;
pub use reliability::{failure_probability, ratio, ReliabilityAssignment};
pub use term::{normalize, parse_term, term_equal, SystemTerm};
