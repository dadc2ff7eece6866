//! Sampled semantic comparison and random generators for terms, posets and
//! assignments.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::order::{derive_order, Relation};
use super::poset::AtomPoset;
use super::reliability::{failure_probability, ratio, ReliabilityAssignment};
use super::term::SystemTerm;

/// Denominator of the probability grid.
pub const GRID: i64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SemanticRelation {
    Le,
    Ge,
    Eq,
    Incomparable,
}

impl fmt::Display for SemanticRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SemanticRelation::Le => "LE",
            SemanticRelation::Ge => "GE",
            SemanticRelation::Eq => "EQ",
            SemanticRelation::Incomparable => "INC",
        })
    }
}

#[derive(Debug, Clone)]
pub struct SemanticComparison {
    pub relation: SemanticRelation,
    pub samples: usize,
    /// An assignment with `P(t1) < P(t2)`.
    pub below: Option<ReliabilityAssignment>,
    /// An assignment with `P(t1) > P(t2)`.
    pub above: Option<ReliabilityAssignment>,
}

fn atoms_of<'a>(terms: &[&'a SystemTerm], poset: &'a AtomPoset) -> Vec<&'a str> {
    let mut set: BTreeSet<&str> = poset.atoms().iter().map(String::as_str).collect();
    for t in terms {
        set.extend(t.atoms());
    }
    set.into_iter().collect()
}

/// Draws grid probabilities for `atoms`, then lifts each to the maximum
/// over everything below it in `poset`, so `a <= b` implies `p(a) <= p(b)`.
pub fn sample_assignment<R: Rng>(atoms: &[&str], poset: &AtomPoset, rng: &mut R) -> ReliabilityAssignment {
    let raw: Vec<i64> = atoms.iter().map(|_| rng.gen_range(0..=GRID)).collect();
    let mut r = ReliabilityAssignment::new();
    for (j, b) in atoms.iter().enumerate() {
        let k = atoms
            .iter()
            .zip(&raw)
            .filter(|(a, _)| poset.leq(a, b))
            .map(|(_, &k)| k)
            .max()
            .unwrap_or(raw[j]);
        r.set(b, ratio(k, GRID)).expect("grid value in range");
    }
    r
}

/// Compares exact failure probabilities on `samples` poset-consistent grid
/// assignments. Deterministic in `seed`.
pub fn semantic_order_sampled(
    t1: &SystemTerm,
    t2: &SystemTerm,
    poset: &AtomPoset,
    samples: usize,
    seed: u64,
) -> SemanticComparison {
    let atoms = atoms_of(&[t1, t2], poset);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut below = None;
    let mut above = None;
    for _ in 0..samples.max(1) {
        let r = sample_assignment(&atoms, poset, &mut rng);
        let p1 = failure_probability(t1, &r).expect("every atom assigned");
        let p2 = failure_probability(t2, &r).expect("every atom assigned");
        if p1 < p2 && below.is_none() {
            below = Some(r);
        } else if p1 > p2 && above.is_none() {
            above = Some(r);
        }
        if below.is_some() && above.is_some() {
            break;
        }
    }
    let relation = match (&below, &above) {
        (None, None) => SemanticRelation::Eq,
        (Some(_), None) => SemanticRelation::Le,
        (None, Some(_)) => SemanticRelation::Ge,
        (Some(_), Some(_)) => SemanticRelation::Incomparable,
    };
    SemanticComparison {
        relation,
        samples,
        below,
        above,
    }
}

/// Shape parameters for random terms.
#[derive(Debug, Clone, Copy)]
pub struct TermShape {
    pub max_depth: usize,
    pub max_children: usize,
    /// Chance that a leaf is `0` or `1` rather than an atom.
    pub constant_rate: f64,
}

impl Default for TermShape {
    fn default() -> Self {
        TermShape {
            max_depth: 3,
            max_children: 3,
            constant_rate: 0.1,
        }
    }
}

pub fn atom_names(k: usize) -> Vec<String> {
    (0..k).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// A raw (unnormalized) term over `atoms`.
pub fn random_term<R: Rng>(rng: &mut R, atoms: &[String], shape: TermShape) -> SystemTerm {
    if shape.max_depth == 0 || shape.max_children < 2 || rng.gen_bool(0.3) {
        return if atoms.is_empty() || rng.gen_bool(shape.constant_rate) {
            if rng.gen() {
                SystemTerm::Zero
            } else {
                SystemTerm::One
            }
        } else {
            SystemTerm::Atom(atoms.choose(rng).unwrap().clone())
        };
    }
    let width = rng.gen_range(2..=shape.max_children);
    let inner = TermShape {
        max_depth: shape.max_depth - 1,
        ..shape
    };
    let children = (0..width).map(|_| random_term(rng, atoms, inner)).collect();
    if rng.gen() {
        SystemTerm::F(children)
    } else {
        SystemTerm::G(children)
    }
}

/// A random term in which every atom occurrence has its own name.
pub fn random_duplicate_free_term<R: Rng>(rng: &mut R, shape: TermShape) -> SystemTerm {
    fn rename(t: SystemTerm, next: &mut usize) -> SystemTerm {
        match t {
            SystemTerm::Atom(_) => {
                *next += 1;
                SystemTerm::Atom(format!("x{}", *next - 1))
            }
            SystemTerm::F(c) => SystemTerm::F(c.into_iter().map(|x| rename(x, next)).collect()),
            SystemTerm::G(c) => SystemTerm::G(c.into_iter().map(|x| rename(x, next)).collect()),
            leaf => leaf,
        }
    }
    let t = random_term(rng, &["x".to_owned()], shape);
    rename(t, &mut 0)
}

/// A random partial order: a hidden linear order on `atoms`, from which each
/// compatible pair is kept with probability `density`.
pub fn random_poset<R: Rng>(rng: &mut R, atoms: &[String], density: f64) -> AtomPoset {
    let mut order: Vec<&String> = atoms.iter().collect();
    order.shuffle(rng);
    let mut facts = Vec::new();
    for i in 0..order.len() {
        for j in i + 1..order.len() {
            if rng.gen_bool(density) {
                facts.push((order[i].clone(), order[j].clone()));
            }
        }
    }
    AtomPoset::new(atoms.iter().map(String::as_str), &facts).expect("acyclic by construction")
}

#[derive(Debug, Clone, Copy)]
pub struct SoundnessConfig {
    pub pairs: usize,
    pub atoms: usize,
    pub shape: TermShape,
    pub samples: usize,
    pub seed: u64,
}

impl Default for SoundnessConfig {
    fn default() -> Self {
        SoundnessConfig {
            pairs: 500,
            atoms: 4,
            shape: TermShape::default(),
            samples: 64,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SoundnessViolation {
    pub left: SystemTerm,
    pub right: SystemTerm,
    pub relation: Relation,
    pub poset: AtomPoset,
    pub assignment: ReliabilityAssignment,
    pub p_left: BigRational,
    pub p_right: BigRational,
}

impl fmt::Display for SoundnessViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} but P = {} vs {} at {}",
            self.left, self.relation, self.right, self.p_left, self.p_right, self.assignment
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct SoundnessReport {
    pub pairs: usize,
    /// Pairs for which some order (LE, GE or EQ) was derived.
    pub derived: usize,
    pub unknown: usize,
    pub assignments_checked: usize,
    pub violations: Vec<SoundnessViolation>,
}

impl SoundnessReport {
    pub fn sound(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for SoundnessReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "pairs: {}", self.pairs)?;
        writeln!(f, "derived: {}", self.derived)?;
        writeln!(f, "unknown: {}", self.unknown)?;
        writeln!(f, "assignments_checked: {}", self.assignments_checked)?;
        writeln!(f, "violations: {}", self.violations.len())?;
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

/// Derives orders on random pairs and checks every derived relation against
/// exact failure probabilities on poset-consistent assignments.
///
/// A third of the right-hand terms embed the left term in a random F or G
/// context so that derivable pairs are common.
pub fn check_soundness(cfg: &SoundnessConfig) -> SoundnessReport {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let atoms = atom_names(cfg.atoms);
    let mut report = SoundnessReport {
        pairs: cfg.pairs,
        ..Default::default()
    };
    for _ in 0..cfg.pairs {
        let poset = random_poset(&mut rng, &atoms, 0.3);
        let left = random_term(&mut rng, &atoms, cfg.shape);
        let right = if rng.gen_ratio(1, 3) {
            let other = random_term(&mut rng, &atoms, cfg.shape);
            if rng.gen() {
                SystemTerm::F(vec![left.clone(), other])
            } else {
                SystemTerm::G(vec![other, left.clone()])
            }
        } else {
            random_term(&mut rng, &atoms, cfg.shape)
        };
        let relation = derive_order(&left, &right, &poset).relation;
        if relation == Relation::Unknown {
            report.unknown += 1;
            continue;
        }
        report.derived += 1;
        let names: Vec<&str> = atoms.iter().map(String::as_str).collect();
        for _ in 0..cfg.samples {
            let r = sample_assignment(&names, &poset, &mut rng);
            let pl = failure_probability(&left, &r).expect("assigned");
            let pr = failure_probability(&right, &r).expect("assigned");
            report.assignments_checked += 1;
            let ok = match relation {
                Relation::Le => pl <= pr,
                Relation::Ge => pl >= pr,
                Relation::Eq => pl == pr,
                Relation::Unknown => true,
            };
            if !ok {
                report.violations.push(SoundnessViolation {
                    left: left.clone(),
                    right: right.clone(),
                    relation,
                    poset: poset.clone(),
                    assignment: r,
                    p_left: pl,
                    p_right: pr,
                });
                break;
            }
        }
    }
    report
}
