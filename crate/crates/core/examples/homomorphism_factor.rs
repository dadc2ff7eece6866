//! Reduction Z_6 -> Z_3: check it, take its kernel and factor it through the
//! quotient as projection followed by an injection.

use mnsemiring::constructions::modular_mn_semiring;
use mnsemiring::morphisms::{compose_maps, induced_injection, is_homomorphism, kernel, projection, Morphism};

fn main() -> mnsemiring::Result<()> {
    let z6 = modular_mn_semiring(6, 2, 2)?;
    let z3 = modular_mn_semiring(3, 2, 2)?;
    let phi = Morphism::new(3, (0..6).map(|x| x % 3).collect())?;
    println!("homomorphism: {}", is_homomorphism(&z6, &z3, &phi)?.holds());

    let ker = kernel(&phi);
    println!("kernel: {ker}");

    let (_, iota) = induced_injection(&z6, &z3, &phi)?;
    let pi = projection(&ker);
    let back = compose_maps(&pi, &iota)?;
    println!("pi:   {pi}\niota: {iota} (injective: {})", iota.is_injective());
    println!("iota . pi == phi: {}", back == phi);

    let bad = Morphism::new(3, vec![0, 1, 1, 0, 1, 2])?;
    if let Some(w) = is_homomorphism(&z6, &z3, &bad)?.witness() {
        println!("broken map: {w}");
    }
    Ok(())
}
