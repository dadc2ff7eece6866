//! Subsets of a finite set under union and intersection, as a (3,2) semiring.
//! Union is not cancellative; the witness is replayed on the tables.

use mnsemiring::algebra::{idempotent_elements, DEFAULT_BUDGET};
use mnsemiring::constructions::boolean_mn_semiring;

fn main() -> mnsemiring::Result<()> {
    let s = boolean_mn_semiring(2, 3, 2)?;
    let r = s.verify(DEFAULT_BUDGET)?;
    println!("semiring: {}", r.is_semiring());
    println!("identities: f={:?} g={:?}", r.f_identity, r.g_identity);
    println!("f-idempotents: {:?}", idempotent_elements(s.f(), None));

    if let Some(w) = r.add_cancellative.witness() {
        println!("f not cancellative: {w}");
        println!("replays: {}", w.replays_on(&s));
    }
    Ok(())
}
