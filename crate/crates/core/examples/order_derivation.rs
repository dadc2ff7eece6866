//! Derive fault-tolerance comparisons between terms and print the rules used.

use mnsemiring::ft::{derive_order, parse_term, semantic_order_sampled, AtomPoset};

fn main() -> mnsemiring::Result<()> {
    let poset = AtomPoset::new(["a", "b", "c"], &[("a".into(), "b".into())])?;
    let pairs = [
        ("(g a b)", "a"),
        ("a", "b"),
        ("(f a c)", "(f b c)"),
        ("(g a c)", "(f b c)"),
        ("(f a b)", "(f (f a b) (f a b))"),
        ("a", "c"),
    ];
    for (l, r) in pairs {
        let (lt, rt) = (parse_term(l)?, parse_term(r)?);
        let d = derive_order(&lt, &rt, &poset);
        let s = semantic_order_sampled(&lt, &rt, &poset, 64, 0);
        println!("{l} vs {r}: {} (sampled {})", d.relation, s.relation);
        for rule in &d.derivation {
            println!("    {rule}");
        }
    }
    Ok(())
}
