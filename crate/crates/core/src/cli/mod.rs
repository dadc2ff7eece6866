//! The `mnsr` command line: file formats and subcommand dispatch.
//!
//! Every subcommand is a thin adapter over the library. [`run`] returns the
//! text it would print together with the exit code: 0 when the requested
//! checks pass, 1 when one fails (a witness is printed), 2 for usage, format
//! and limit errors. An `UNKNOWN` order derivation is not a failure.

pub mod format;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_traits::ToPrimitive;

use crate::algebra::{Check, Element, Limits, MNSemiring, DEFAULT_BUDGET};
use crate::error::{Error, Result};
use crate::ft::{
    self, derive_order, failure_probability, parse_term, semantic_order_sampled, Relation, SemanticRelation,
    SoundnessConfig, TermShape,
};
use crate::ideals::{self, Subset};
use crate::morphisms::{self, Congruence, Morphism};

pub use format::{parse_algebra, parse_algebra_with_limits, parse_assignment, parse_poset, serialize_algebra};

#[derive(Debug, Parser)]
#[command(name = "mnsr", version, about = "Finite (m,n)-semirings and fault-tolerant system terms")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Assignments drawn per sampled comparison.
    #[arg(long, global = true, default_value_t = 64)]
    pub samples: usize,
    /// Maximum evaluations an exhaustive check may perform.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u128,
    /// Largest carrier size accepted when loading an algebra.
    #[arg(long = "max-k", global = true, default_value_t = 12)]
    pub max_k: usize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Axioms, properties, congruences, quotients, isomorphism.
    #[command(subcommand)]
    Algebra(AlgebraCmd),
    /// Homomorphisms between two algebras.
    #[command(subcommand)]
    Hom(HomCmd),
    /// Ideals of one algebra.
    #[command(subcommand)]
    Ideal(IdealCmd),
    /// Fault-tolerance order on system terms.
    #[command(subcommand)]
    Order(OrderCmd),
    /// Exact failure probabilities.
    #[command(subcommand)]
    Reliability(ReliabilityCmd),
}

#[derive(Debug, Subcommand)]
pub enum AlgebraCmd {
    /// Associativity of f and g, distributivity of g over f.
    Check { file: PathBuf },
    /// Every structural property, with witnesses for failures.
    Props { file: PathBuf },
    /// All congruences, coarsest first.
    Congruences { file: PathBuf },
    /// Quotient by a partition such as `0,3|1,4|2,5`, printed as an algebra file.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        partition: String,
    },
    /// Search for an isomorphism.
    Iso { left: PathBuf, right: PathBuf },
}

#[derive(Debug, Subcommand)]
pub enum HomCmd {
    /// Is `--map` (images of 0, 1, ..) a homomorphism?
    Check {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Kernel partition of a homomorphism.
    Kernel {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: String,
    },
    /// Factor a homomorphism through the quotient by its kernel.
    Factor {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum IdealCmd {
    /// Is the subset an ideal?
    Check {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Least ideal containing the subset.
    Generate {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Product of n subsets (repeat `--set`), and the ideal it generates.
    Product {
        file: PathBuf,
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
    /// Intersection of ideals (repeat `--set`).
    Intersect {
        file: PathBuf,
        #[arg(long = "set", required = true)]
        sets: Vec<String>,
    },
}

#[derive(Debug, Subcommand)]
pub enum OrderCmd {
    /// Derive the order between two terms and cross-check it by sampling.
    Compare { poset: PathBuf, left: String, right: String },
    /// Check derived orders on random term pairs against exact probabilities.
    Soundness {
        #[arg(long, default_value_t = 500)]
        pairs: usize,
        #[arg(long, default_value_t = 4)]
        atoms: usize,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 3)]
        children: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum ReliabilityCmd {
    /// Failure probability of a term under an assignment file.
    Eval { assignment: PathBuf, term: String },
}

/// Output of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn verdict(pass: bool, stdout: String) -> Self {
        Report {
            code: if pass { 0 } else { 1 },
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        Report {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Report::usage(text)
            } else {
                Report::ok(text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> Report {
    let ctx = Ctx { opts: &cli.global };
    let result = match &cli.command {
        Command::Algebra(c) => ctx.algebra(c),
        Command::Hom(c) => ctx.hom(c),
        Command::Ideal(c) => ctx.ideal(c),
        Command::Order(c) => ctx.order(c),
        Command::Reliability(c) => ctx.reliability(c),
    };
    result.unwrap_or_else(|e| Report::usage(format!("error: {e}\n")))
}

/// Runs with the process arguments, prints, and exits.
pub fn main() -> ! {
    let report = run(std::env::args_os());
    print!("{}", report.stdout);
    eprint!("{}", report.stderr);
    std::process::exit(report.code)
}

pub fn parse_elements(text: &str) -> Result<Vec<Element>> {
    let text = text.trim().trim_start_matches('{').trim_end_matches('}');
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|w| {
            w.trim().parse().map_err(|_| Error::Syntax {
                pos: 0,
                msg: format!("`{}` is not an element", w.trim()),
            })
        })
        .collect()
}

/// `0,3|1,4|2,5`.
pub fn parse_partition(size: usize, text: &str) -> Result<Congruence> {
    let blocks = text.split('|').map(parse_elements).collect::<Result<Vec<_>>>()?;
    Congruence::from_blocks(size, &blocks)
}

fn check_line(out: &mut String, name: &str, c: &Check) {
    match c {
        Check::Holds => {
            let _ = writeln!(out, "{name}: true");
        }
        Check::Fails(w) => {
            let _ = writeln!(out, "{name}: false");
            let _ = writeln!(out, "  witness: {w}");
        }
    }
}

fn opt(x: Option<Element>) -> String {
    x.map_or_else(|| "none".to_owned(), |e| e.to_string())
}

struct Ctx<'a> {
    opts: &'a GlobalOpts,
}

impl Ctx<'_> {
    fn limits(&self) -> Limits {
        Limits {
            max_size: self.opts.max_k,
            budget: self.opts.budget,
            ..Limits::default()
        }
    }

    fn read(&self, path: &Path) -> Result<String> {
        std::fs::read_to_string(path).map_err(|e| Error::Format {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })
    }

    fn load(&self, path: &Path) -> Result<MNSemiring> {
        let text = self.read(path)?;
        parse_algebra_with_limits(&text, &self.limits()).map_err(|e| match e {
            Error::Format { line, msg } => Error::Format {
                line,
                msg: format!("{}: {msg}", path.display()),
            },
            e => e,
        })
    }

    fn subset(&self, s: &MNSemiring, text: &str) -> Result<Subset> {
        Subset::new(s.size(), parse_elements(text)?)
    }

    fn morphism(&self, t: &MNSemiring, text: &str) -> Result<Morphism> {
        Morphism::new(t.size(), parse_elements(text)?)
    }

    fn algebra(&self, cmd: &AlgebraCmd) -> Result<Report> {
        let mut out = String::new();
        match cmd {
            AlgebraCmd::Check { file } => {
                let s = self.load(file)?;
                let r = s.verify(self.opts.budget)?;
                let _ = writeln!(out, "semiring: {}", r.is_semiring());
                check_line(&mut out, "associative_f", &r.associative_f);
                check_line(&mut out, "associative_g", &r.associative_g);
                check_line(&mut out, "distributive", &r.distributive);
                Ok(Report::verdict(r.is_semiring(), out))
            }
            AlgebraCmd::Props { file } => {
                let s = self.load(file)?;
                let r = s.verify(self.opts.budget)?;
                let _ = writeln!(out, "size: {}", s.size());
                let _ = writeln!(out, "arities: ({}, {})", s.m(), s.n());
                let _ = writeln!(out, "semiring: {}", r.is_semiring());
                let _ = writeln!(out, "f_identity: {}", opt(r.f_identity));
                let _ = writeln!(out, "g_identity: {}", opt(r.g_identity));
                let _ = writeln!(out, "absorbing_zero: {}", r.absorbing_zero);
                for (name, c) in r.checks() {
                    match c {
                        Some(c) => check_line(&mut out, name, c),
                        None => {
                            let _ = writeln!(out, "{name}: n/a (no f-identity)");
                        }
                    }
                }
                Ok(Report::ok(out))
            }
            AlgebraCmd::Congruences { file } => {
                let s = self.load(file)?;
                let all = morphisms::enumerate_congruences(&s)?;
                let _ = writeln!(out, "congruences: {}", all.len());
                for c in &all {
                    let _ = writeln!(out, "{c}");
                }
                Ok(Report::ok(out))
            }
            AlgebraCmd::Quotient { file, partition } => {
                let s = self.load(file)?;
                let sigma = parse_partition(s.size(), partition)?;
                if let Check::Fails(w) = morphisms::is_congruence(&s, &sigma)? {
                    let _ = writeln!(out, "congruence: false");
                    let _ = writeln!(out, "  witness: {w}");
                    return Ok(Report::verdict(false, out));
                }
                let q = morphisms::quotient(&s, &sigma)?;
                let _ = writeln!(out, "# quotient by {sigma}; block i is represented by {:?}", sigma.representatives());
                out.push_str(&serialize_algebra(&q));
                Ok(Report::ok(out))
            }
            AlgebraCmd::Iso { left, right } => {
                let (s, t) = (self.load(left)?, self.load(right)?);
                match morphisms::is_isomorphic(&s, &t)? {
                    Some(phi) => {
                        let _ = writeln!(out, "isomorphic: true");
                        let _ = writeln!(out, "map: {phi}");
                        Ok(Report::ok(out))
                    }
                    None => {
                        let _ = writeln!(out, "isomorphic: false");
                        Ok(Report::verdict(false, out))
                    }
                }
            }
        }
    }

    fn hom(&self, cmd: &HomCmd) -> Result<Report> {
        let mut out = String::new();
        let (source, target, map) = match cmd {
            HomCmd::Check { source, target, map }
            | HomCmd::Kernel { source, target, map }
            | HomCmd::Factor { source, target, map } => (source, target, map),
        };
        let (s, t) = (self.load(source)?, self.load(target)?);
        let phi = self.morphism(&t, map)?;
        if phi.domain_size() != s.size() {
            return Err(Error::SizeMismatch(format!(
                "map has {} images for a carrier of size {}",
                phi.domain_size(),
                s.size()
            )));
        }
        let check = morphisms::is_homomorphism(&s, &t, &phi)?;
        check_line(&mut out, "homomorphism", &check);
        if !check.holds() {
            return Ok(Report::verdict(false, out));
        }
        match cmd {
            HomCmd::Check { .. } => {}
            HomCmd::Kernel { .. } => {
                let _ = writeln!(out, "kernel: {}", morphisms::kernel(&phi));
            }
            HomCmd::Factor { .. } => {
                let ker = morphisms::kernel(&phi);
                let (q, psi) = morphisms::induced_injection(&s, &t, &phi)?;
                let composed = morphisms::compose_maps(&morphisms::projection(&ker), &psi)?;
                let exact = composed == phi;
                let _ = writeln!(out, "kernel: {ker}");
                let _ = writeln!(out, "quotient_size: {}", q.size());
                let _ = writeln!(out, "injection: {psi}");
                let _ = writeln!(out, "injective: {}", psi.is_injective());
                let _ = writeln!(out, "factorization: {}", if exact { "exact" } else { "mismatch" });
                return Ok(Report::verdict(exact && psi.is_injective(), out));
            }
        }
        Ok(Report::ok(out))
    }

    fn ideal(&self, cmd: &IdealCmd) -> Result<Report> {
        let mut out = String::new();
        match cmd {
            IdealCmd::Check { file, set } => {
                let s = self.load(file)?;
                let i = self.subset(&s, set)?;
                let c = ideals::is_ideal(&s, &i)?;
                check_line(&mut out, &format!("ideal {i}"), &c);
                Ok(Report::verdict(c.holds(), out))
            }
            IdealCmd::Generate { file, set } => {
                let s = self.load(file)?;
                let i = self.subset(&s, set)?;
                let _ = writeln!(out, "generated: {}", ideals::ideal_generated_by(&s, &i)?);
                Ok(Report::ok(out))
            }
            IdealCmd::Product { file, sets } => {
                let s = self.load(file)?;
                let factors = sets.iter().map(|x| self.subset(&s, x)).collect::<Result<Vec<_>>>()?;
                let p = ideals::product_of_subsets(&s, &factors)?;
                let _ = writeln!(out, "product: {p}");
                let _ = writeln!(out, "generated: {}", ideals::ideal_generated_by(&s, &p)?);
                Ok(Report::ok(out))
            }
            IdealCmd::Intersect { file, sets } => {
                let s = self.load(file)?;
                let family = sets.iter().map(|x| self.subset(&s, x)).collect::<Result<Vec<_>>>()?;
                let mut pass = true;
                for i in &family {
                    let c = ideals::is_ideal(&s, i)?;
                    pass &= c.holds();
                    check_line(&mut out, &format!("ideal {i}"), &c);
                }
                if !pass {
                    return Ok(Report::verdict(false, out));
                }
                let x = ideals::intersect_ideals(&family)?;
                let _ = writeln!(out, "intersection: {x}");
                let c = ideals::is_ideal(&s, &x)?;
                check_line(&mut out, "intersection_is_ideal", &c);
                Ok(Report::verdict(c.holds(), out))
            }
        }
    }

    fn order(&self, cmd: &OrderCmd) -> Result<Report> {
        let mut out = String::new();
        match cmd {
            OrderCmd::Compare { poset, left, right } => {
                let p = parse_poset(&self.read(poset)?)?;
                let (l, r) = (parse_term(left)?, parse_term(right)?);
                let d = derive_order(&l, &r, &p);
                match d.relation {
                    Relation::Unknown => {
                        let _ = writeln!(out, "UNKNOWN");
                        let _ = writeln!(out, "derivation: unknown, no rule applies");
                    }
                    rel => {
                        let _ = writeln!(out, "{rel}");
                        let names: Vec<&str> = d.derivation.iter().map(|r| r.name()).collect();
                        let _ = writeln!(out, "derivation: {}", names.join(", "));
                    }
                }
                if self.opts.samples == 0 {
                    return Ok(Report::ok(out));
                }
                let sem = semantic_order_sampled(&l, &r, &p, self.opts.samples, self.opts.seed);
                let _ = writeln!(out, "sampled: {} ({} assignments, seed {})", sem.relation, sem.samples, self.opts.seed);
                if let Some(w) = &sem.below {
                    let _ = writeln!(out, "  left lower at: {w}");
                }
                if let Some(w) = &sem.above {
                    let _ = writeln!(out, "  left higher at: {w}");
                }
                let contradicted = match d.relation {
                    Relation::Le => sem.above.is_some(),
                    Relation::Ge => sem.below.is_some(),
                    Relation::Eq => sem.relation != SemanticRelation::Eq,
                    Relation::Unknown => false,
                };
                if contradicted {
                    let _ = writeln!(out, "soundness: violated");
                }
                Ok(Report::verdict(!contradicted, out))
            }
            OrderCmd::Soundness {
                pairs,
                atoms,
                depth,
                children,
            } => {
                if *atoms == 0 || *atoms > 26 {
                    return Err(Error::SizeMismatch("--atoms must be in 1..=26".into()));
                }
                let report = ft::check_soundness(&SoundnessConfig {
                    pairs: *pairs,
                    atoms: *atoms,
                    shape: TermShape {
                        max_depth: *depth,
                        max_children: *children,
                        ..TermShape::default()
                    },
                    samples: self.opts.samples,
                    seed: self.opts.seed,
                });
                let _ = write!(out, "{report}");
                Ok(Report::verdict(report.sound(), out))
            }
        }
    }

    fn reliability(&self, cmd: &ReliabilityCmd) -> Result<Report> {
        let ReliabilityCmd::Eval { assignment, term } = cmd;
        let r = parse_assignment(&self.read(assignment)?)?;
        let t = parse_term(term)?;
        let p = failure_probability(&t, &r)?;
        let approx = p.to_f64().unwrap_or(f64::NAN);
        Ok(Report::ok(format!("failure_probability: {p}\napprox: {approx:.6}\n")))
    }
}
