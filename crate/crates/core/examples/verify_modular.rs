//! Build the ternary-by-binary semiring on Z_k and print its property report.
//!
//! cargo run --example verify_modular -- 6

use mnsemiring::algebra::DEFAULT_BUDGET;
use mnsemiring::constructions::modular_mn_semiring;

fn main() -> mnsemiring::Result<()> {
    let k: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for (m, n) in [(2, 2), (3, 2), (2, 3), (3, 3)] {
        let s = modular_mn_semiring(k, m, n)?;
        let report = s.verify(DEFAULT_BUDGET)?;
        println!("Z_{k} ({m},{n}): semiring={}", report.is_semiring());
        for (name, check) in report.checks() {
            match check {
                None => println!("  {name:<22} n/a"),
                Some(c) if c.holds() => println!("  {name:<22} holds"),
                Some(c) => println!("  {name:<22} fails: {}", c.witness().unwrap()),
            }
        }
    }
    Ok(())
}
