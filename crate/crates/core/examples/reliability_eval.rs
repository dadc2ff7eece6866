//! Exact failure probabilities. Series fails when any part fails, parallel
//! only when all do.

use mnsemiring::ft::{failure_probability, parse_term, ratio, ReliabilityAssignment};

fn main() -> mnsemiring::Result<()> {
    let mut r = ReliabilityAssignment::new();
    r.set("a", ratio(1, 10))?;
    r.set("b", ratio(1, 5))?;
    r.set("c", ratio(1, 2))?;
    println!("{r}");
    for s in ["(f a b)", "(g a b)", "(f (f a b) (f a b))", "(g (f a b) c)", "(f a (g b c))"] {
        let t = parse_term(s)?;
        println!("  P({t}) = {}", failure_probability(&t, &r)?);
    }
    if let Err(e) = failure_probability(&parse_term("(f a z)")?, &r) {
        println!("  (f a z): {e}");
    }
    Ok(())
}
