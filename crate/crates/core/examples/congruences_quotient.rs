//! Enumerate congruences of Z_6, take quotients, and walk refinement chains.

use mnsemiring::constructions::modular_mn_semiring;
use mnsemiring::morphisms::{enumerate_congruences, is_isomorphic, quotient};

fn main() -> mnsemiring::Result<()> {
    let z6 = modular_mn_semiring(6, 2, 2)?;
    let cs = enumerate_congruences(&z6)?;
    println!("{} congruences on Z_6", cs.len());
    for c in &cs {
        let q = quotient(&z6, c)?;
        let z = modular_mn_semiring(q.size(), 2, 2)?;
        let iso = is_isomorphic(&q, &z)?.is_some();
        println!("  {c}  ->  quotient of size {} (~ Z_{}: {iso})", q.size(), q.size());
    }

    // A congruence sigma below tau induces tau/sigma on Z_6/sigma.
    for s in &cs {
        for t in &cs {
            if s != t && s.refines(t) {
                let induced = s.induced_on_quotient(t)?;
                println!("  {s} <= {t}: {} blocks on the quotient", induced.num_blocks());
            }
        }
    }
    Ok(())
}
