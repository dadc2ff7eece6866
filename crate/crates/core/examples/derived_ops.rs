//! Collapse a ternary semiring to binary operations by fixing middle
//! arguments, then sample a rule-defined carrier that has no table.

use mnsemiring::algebra::{check_associativity, DEFAULT_BUDGET};
use mnsemiring::constructions::{derive_binary_ops, identity_binary_ops, modular_mn_semiring, sampled_verify, RuleCarrier};

fn main() -> mnsemiring::Result<()> {
    let s = modular_mn_semiring(4, 3, 3)?;
    let (plus, times) = identity_binary_ops(&s)?;
    println!("x+y  = {:?}", plus.entries());
    println!("x*y  = {:?}", times.entries());

    let (p2, t2) = derive_binary_ops(&s, &[2], &[3])?;
    println!(
        "f(x,2,y) associative: {}, g(x,3,y) associative: {}",
        check_associativity(&p2, DEFAULT_BUDGET)?.holds(),
        check_associativity(&t2, DEFAULT_BUDGET)?.holds()
    );

    // Negative integers: closed under ternary products, not binary ones.
    let neg = RuleCarrier::negative_integers();
    for (m, n) in [(2, 3), (2, 2)] {
        println!("{}", sampled_verify(&neg, m, n, 10_000, 42));
    }
    Ok(())
}
