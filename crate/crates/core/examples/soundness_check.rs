//! Random term pairs: every derived comparison is checked against sampled
//! assignments consistent with a random atom order.

use mnsemiring::ft::{check_soundness, SoundnessConfig};

fn main() {
    let pairs = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let cfg = SoundnessConfig {
        pairs,
        seed: 3,
        ..SoundnessConfig::default()
    };
    let report = check_soundness(&cfg);
    println!("{report}");
    std::process::exit(if report.sound() { 0 } else { 1 });
}
