//! Parse series/parallel terms and print their normal forms.
//!
//! cargo run --example ft_normalize -- "(f a (f b 0) (g 1 c))"

use mnsemiring::ft::{normalize, parse_term, term_equal};

fn main() {
    let inputs: Vec<String> = std::env::args().skip(1).collect();
    let inputs = if inputs.is_empty() {
        ["(f a (f b 0))", "(g (g a b) 1 c)", "(f 1 a)", "(g 0 a)", "(f b a a)", "(f a"]
            .map(String::from)
            .to_vec()
    } else {
        inputs
    };
    for s in &inputs {
        match parse_term(s) {
            Ok(t) => println!("{s:<24} => {}", normalize(&t)),
            Err(e) => println!("{s:<24} !! {e}"),
        }
    }

    let a = parse_term("(f a b)").unwrap();
    let b = parse_term("(f b (f a 0))").unwrap();
    println!("{a} == {b}: {}", term_equal(&a, &b));
}
