//! Ideals of Z_6: membership checks, generated ideals, products and meets.

use mnsemiring::constructions::modular_mn_semiring;
use mnsemiring::ideals::{all_ideals, ideal_generated_by, intersect_ideals, is_ideal, product_of_subsets, Subset};

fn main() -> mnsemiring::Result<()> {
    let s = modular_mn_semiring(6, 2, 2)?;
    let evens = Subset::new(6, [0, 2, 4])?;
    let triples = Subset::new(6, [0, 3])?;

    println!("{evens} ideal: {}", is_ideal(&s, &evens)?.holds());
    let odd = Subset::new(6, [0, 1])?;
    if let Some(w) = is_ideal(&s, &odd)?.witness() {
        println!("{odd} not an ideal: {w}");
    }

    println!("<2> = {}", ideal_generated_by(&s, &Subset::new(6, [2])?)?);
    println!("<4> = {}", ideal_generated_by(&s, &Subset::new(6, [4])?)?);
    println!("(0,3)(0,2,4) = {}", product_of_subsets(&s, &[triples, evens])?);
    println!("(0,2,4) & (0,3) = {}", intersect_ideals(&[evens, triples])?);

    let all = all_ideals(&s)?;
    println!("all ideals ({}):", all.len());
    for i in all {
        println!("  {i}");
    }
    Ok(())
}
