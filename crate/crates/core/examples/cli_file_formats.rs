//! The text formats read by `mnsr`, driven through the library entry point.

use mnsemiring::cli::{parse_algebra, parse_assignment, parse_poset, run, serialize_algebra};

const ALG: &str = "\
# Z_4 with ternary addition
size 4
m 3
n 2
f rule mod-add
g rule mod-mul
";

fn main() -> mnsemiring::Result<()> {
    let s = parse_algebra(ALG)?;
    print!("{}", serialize_algebra(&s));

    let poset = parse_poset("a <= b\nb <= c\nd\n")?;
    println!("poset: {:?}", poset.pairs());
    let r = parse_assignment("a = 1/10\nb = 1/5\n")?;
    println!("assignment: {r}");

    let path = std::env::temp_dir().join("z4-ternary.alg");
    std::fs::write(&path, ALG).expect("write temp file");
    let report = run(["mnsr", "algebra", "check", path.to_str().unwrap()]);
    print!("{}", report.stdout);
    println!("exit {}", report.code);
    Ok(())
}
