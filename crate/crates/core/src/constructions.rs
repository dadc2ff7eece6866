//! Builders for standard (m,n)-semirings, derived binary operations, and
//! sampled verification of rule-defined carriers that cannot be tabulated.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{
    check_associativity, check_distributivity, Element, Limits, MNSemiring, OpTable,
};
use crate::error::{Error, Result};

/// An ordinary semiring `(R, +, x)` on a finite carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinarySemiringSpec {
    pub add: OpTable,
    pub mul: OpTable,
}

impl BinarySemiringSpec {
    pub fn new(add: OpTable, mul: OpTable) -> Result<Self> {
        for t in [&add, &mul] {
            if t.arity() != 2 {
                return Err(Error::ArityMismatch {
                    expected: 2,
                    got: t.arity(),
                });
            }
        }
        if add.size() != mul.size() {
            return Err(Error::CarrierMismatch {
                left: add.size(),
                right: mul.size(),
            });
        }
        Ok(BinarySemiringSpec { add, mul })
    }

    pub fn size(&self) -> usize {
        self.add.size()
    }

    /// Both operations associative and `x` distributive over `+`.
    pub fn is_semiring(&self, budget: u128) -> Result<bool> {
        Ok(check_associativity(&self.add, budget)?.holds()
            && check_associativity(&self.mul, budget)?.holds()
            && check_distributivity(&self.mul, &self.add, budget)?.holds())
    }
}

fn fold_table(base: &OpTable, arity: usize, limits: &Limits) -> Result<OpTable> {
    OpTable::from_fn_with_limits(
        base.size(),
        arity,
        |t| t[1..].iter().fold(t[0], |acc, &x| base.apply(&[acc, x])),
        limits,
    )
}

/// `f(x_1..x_m) = x_1 + .. + x_m` and `g(y_1..y_n) = y_1 x .. x y_n`,
/// both folded left to right.
pub fn from_binary_semiring(spec: &BinarySemiringSpec, m: usize, n: usize) -> Result<MNSemiring> {
    from_binary_semiring_with_limits(spec, m, n, &Limits::default())
}

pub fn from_binary_semiring_with_limits(
    spec: &BinarySemiringSpec,
    m: usize,
    n: usize,
    limits: &Limits,
) -> Result<MNSemiring> {
    let f = fold_table(&spec.add, m, limits)?;
    let g = fold_table(&spec.mul, n, limits)?;
    MNSemiring::new(f, g)
}

/// `Z_k` with addition and multiplication mod `k`.
pub fn modular_spec(k: usize) -> Result<BinarySemiringSpec> {
    BinarySemiringSpec::new(
        OpTable::from_fn(k, 2, |t| (t[0] + t[1]) % k)?,
        OpTable::from_fn(k, 2, |t| (t[0] * t[1]) % k)?,
    )
}

pub fn modular_mn_semiring(k: usize, m: usize, n: usize) -> Result<MNSemiring> {
    from_binary_semiring(&modular_spec(k)?, m, n)
}

pub const MAX_BOOLEAN_ATOMS: usize = 3;

/// Subsets of an `atoms`-element set as bitmasks, with `m`-ary union and
/// `n`-ary intersection.
pub fn boolean_mn_semiring(atoms: usize, m: usize, n: usize) -> Result<MNSemiring> {
    if atoms == 0 || atoms > MAX_BOOLEAN_ATOMS {
        return Err(Error::CarrierTooLarge {
            size: 1 << atoms.min(16),
            limit: 1 << MAX_BOOLEAN_ATOMS,
        });
    }
    let k = 1 << atoms;
    let full = k - 1;
    let f = OpTable::from_fn(k, m, |t| t.iter().fold(0, |acc, &x| acc | x))?;
    let g = OpTable::from_fn(k, n, |t| t.iter().fold(full, |acc, &x| acc & x))?;
    MNSemiring::new(f, g)
}

/// `x (+) y = f(x, a_fix, y)` and `x (x) y = g(x, b_fix, y)`.
pub fn derive_binary_ops(
    s: &MNSemiring,
    a_fix: &[Element],
    b_fix: &[Element],
) -> Result<(OpTable, OpTable)> {
    let k = s.size();
    let check = |fix: &[Element], arity: usize| -> Result<()> {
        if fix.len() + 2 != arity {
            return Err(Error::ArityMismatch {
                expected: arity - 2,
                got: fix.len(),
            });
        }
        match fix.iter().find(|&&x| x >= k) {
            Some(&bad) => Err(Error::IndexOutOfRange { index: bad, size: k }),
            None => Ok(()),
        }
    };
    check(a_fix, s.m())?;
    check(b_fix, s.n())?;
    let sandwich = |op: &OpTable, fix: &[Element]| {
        let mut args = Vec::with_capacity(fix.len() + 2);
        OpTable::from_fn(k, 2, move |t| {
            args.clear();
            args.push(t[0]);
            args.extend_from_slice(fix);
            args.push(t[1]);
            op.apply(&args)
        })
    };
    Ok((sandwich(s.f(), a_fix)?, sandwich(s.g(), b_fix)?))
}

/// [`derive_binary_ops`] padded with the identities: `x + y = f(x, 0.., y)`
/// and `x * y = g(x, 1.., y)`.
pub fn identity_binary_ops(s: &MNSemiring) -> Result<(OpTable, OpTable)> {
    let zero = s.f_identity().ok_or(Error::NoIdentity("f"))?;
    let one = s.g_identity().ok_or(Error::NoIdentity("g"))?;
    derive_binary_ops(s, &vec![zero; s.m() - 2], &vec![one; s.n() - 2])
}

type Sampler = Box<dyn Fn(&mut ChaCha8Rng) -> i128 + Send + Sync>;
type Rule = Box<dyn Fn(&[i128]) -> Option<i128> + Send + Sync>;
type Membership = Box<dyn Fn(i128) -> bool + Send + Sync>;

/// A carrier given by rules rather than tables. Rules return `None` when a
/// result cannot be represented (overflow), which is reported separately
/// from genuine violations.
pub struct RuleCarrier {
    pub name: String,
    sampler: Sampler,
    f_rule: Rule,
    g_rule: Rule,
    membership: Membership,
}

impl fmt::Debug for RuleCarrier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleCarrier").field("name", &self.name).finish_non_exhaustive()
    }
}

impl RuleCarrier {
    pub fn new(
        name: impl Into<String>,
        sampler: impl Fn(&mut ChaCha8Rng) -> i128 + Send + Sync + 'static,
        f_rule: impl Fn(&[i128]) -> Option<i128> + Send + Sync + 'static,
        g_rule: impl Fn(&[i128]) -> Option<i128> + Send + Sync + 'static,
        membership: impl Fn(i128) -> bool + Send + Sync + 'static,
    ) -> Self {
        RuleCarrier {
            name: name.into(),
            sampler: Box::new(sampler),
            f_rule: Box::new(f_rule),
            g_rule: Box::new(g_rule),
            membership: Box::new(membership),
        }
    }

    /// Negative integers with sum and product, sampled from `[-10^6, -1]`.
    pub fn negative_integers() -> Self {
        RuleCarrier::new(
            "negative integers (+, *)",
            |rng| rng.gen_range(-1_000_000i64..=-1) as i128,
            |xs| xs.iter().try_fold(0i128, |acc, &x| acc.checked_add(x)),
            |xs| xs.iter().try_fold(1i128, |acc, &x| acc.checked_mul(x)),
            |x| x < 0,
        )
    }

    /// Wraps a finite table algebra; rules reject tuples of the wrong length.
    pub fn from_semiring(s: &MNSemiring) -> Self {
        let (f, g, k) = (s.f().clone(), s.g().clone(), s.size());
        let lookup = |op: OpTable| {
            move |xs: &[i128]| -> Option<i128> {
                let args: Option<Vec<Element>> = xs.iter().map(|&x| usize::try_from(x).ok()).collect();
                op.eval(&args?).ok().map(|v| v as i128)
            }
        };
        RuleCarrier::new(
            "finite table algebra",
            move |rng| rng.gen_range(0..k) as i128,
            lookup(f),
            lookup(g),
            move |x| (0..k as i128).contains(&x),
        )
    }
}

/// A sampled counterexample (or unrepresentable evaluation).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledViolation {
    pub check: &'static str,
    pub args: Vec<i128>,
    pub detail: String,
}

/// Outcome of [`sampled_verify`]. Evidence only: a clean report is not a
/// proof that the axioms hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledReport {
    pub name: String,
    pub m: usize,
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub closure_violations: usize,
    pub associativity_violations: usize,
    pub distributivity_violations: usize,
    pub overflows: usize,
    /// First few violations, for replay.
    pub examples: Vec<SampledViolation>,
}

impl SampledReport {
    pub const NOTE: &'static str = "sampled evidence, not a proof";

    pub fn clean(&self) -> bool {
        self.closure_violations == 0 && self.associativity_violations == 0 && self.distributivity_violations == 0
    }
}

impl fmt::Display for SampledReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "carrier: {}", self.name)?;
        writeln!(f, "arities: ({}, {})", self.m, self.n)?;
        writeln!(f, "trials: {}", self.trials)?;
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "closure_violations: {}", self.closure_violations)?;
        writeln!(f, "associativity_violations: {}", self.associativity_violations)?;
        writeln!(f, "distributivity_violations: {}", self.distributivity_violations)?;
        writeln!(f, "overflows: {}", self.overflows)?;
        for v in &self.examples {
            writeln!(f, "violation: {} {:?} {}", v.check, v.args, v.detail)?;
        }
        write!(f, "note: {}", Self::NOTE)
    }
}

const MAX_EXAMPLES: usize = 8;

struct Tally<'a> {
    report: &'a mut SampledReport,
}

impl Tally<'_> {
    fn record(&mut self, check: &'static str, args: &[i128], detail: String) {
        match check {
            "closure" => self.report.closure_violations += 1,
            "associativity" => self.report.associativity_violations += 1,
            "distributivity" => self.report.distributivity_violations += 1,
            _ => self.report.overflows += 1,
        }
        if self.report.examples.len() < MAX_EXAMPLES {
            self.report.examples.push(SampledViolation {
                check,
                args: args.to_vec(),
                detail,
            });
        }
    }
}

/// Checks closure, associativity and distributivity on `trials` random
/// argument tuples. Deterministic for a fixed `seed`.
pub fn sampled_verify(rc: &RuleCarrier, m: usize, n: usize, trials: usize, seed: u64) -> SampledReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SampledReport {
        name: rc.name.clone(),
        m,
        n,
        trials,
        seed,
        closure_violations: 0,
        associativity_violations: 0,
        distributivity_violations: 0,
        overflows: 0,
        examples: Vec::new(),
    };
    let mut tally = Tally { report: &mut report };
    let width = (2 * m.max(n) - 1).max(m + n - 1);
    for _ in 0..trials {
        let xs: Vec<i128> = (0..width).map(|_| (rc.sampler)(&mut rng)).collect();
        for (label, rule, arity) in [("f", &rc.f_rule, m), ("g", &rc.g_rule, n)] {
            let args = &xs[..arity];
            match rule(args) {
                None => tally.record("overflow", args, format!("{label} unrepresentable")),
                Some(v) if !(rc.membership)(v) => {
                    tally.record("closure", args, format!("{label} = {v} leaves the carrier"))
                }
                Some(_) => {}
            }
            let x = &xs[..2 * arity - 1];
            let nested: Option<Vec<i128>> = (0..arity)
                .map(|i| {
                    let inner = rule(&x[i..i + arity])?;
                    let mut outer = x[..i].to_vec();
                    outer.push(inner);
                    outer.extend_from_slice(&x[i + arity..]);
                    rule(&outer)
                })
                .collect();
            match nested {
                None => tally.record("overflow", x, format!("{label} nesting unrepresentable")),
                Some(vals) => {
                    if let Some(i) = vals.windows(2).position(|w| w[0] != w[1]) {
                        tally.record(
                            "associativity",
                            x,
                            format!("{label} nestings at {i} and {} give {} vs {}", i + 1, vals[i], vals[i + 1]),
                        );
                    }
                }
            }
        }
        let pos = rng.gen_range(0..n);
        let ctx = &xs[..n];
        let a = &xs[n - 1..n - 1 + m];
        let at = |v: i128| {
            let mut t = ctx.to_vec();
            t[pos] = v;
            t
        };
        let lhs = (rc.f_rule)(a).and_then(|fa| (rc.g_rule)(&at(fa)));
        let rhs = a
            .iter()
            .map(|&aj| (rc.g_rule)(&at(aj)))
            .collect::<Option<Vec<_>>>()
            .and_then(|parts| (rc.f_rule)(&parts));
        let mut args = ctx.to_vec();
        args.extend_from_slice(a);
        match (lhs, rhs) {
            (Some(l), Some(r)) if l != r => {
                tally.record("distributivity", &args, format!("position {pos}: {l} vs {r}"))
            }
            (Some(_), Some(_)) => {}
            _ => tally.record("overflow", &args, "distributivity unrepresentable".into()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{find_identity, idempotent_elements, DEFAULT_BUDGET};

    #[test]
    fn modular_examples() {
        let s = modular_mn_semiring(5, 2, 3).unwrap();
        assert!(s.verify(DEFAULT_BUDGET).unwrap().is_semiring());

        let z2 = modular_mn_semiring(2, 3, 2).unwrap();
        assert_eq!(z2.f().eval(&[1, 1, 1]).unwrap(), 1);

        let z4 = modular_mn_semiring(4, 2, 3).unwrap();
        assert_eq!(z4.g().eval(&[2, 2, 1]).unwrap(), 0);

        let trivial = modular_mn_semiring(1, 2, 2).unwrap();
        assert_eq!(trivial.size(), 1);

        assert!(modular_mn_semiring(6, 2, 2).unwrap().verify(DEFAULT_BUDGET).unwrap().is_semiring());
    }

    #[test]
    fn binary_arity_reproduces_tables() {
        let spec = modular_spec(5).unwrap();
        let s = from_binary_semiring(&spec, 2, 2).unwrap();
        assert_eq!(s.f(), &spec.add);
        assert_eq!(s.g(), &spec.mul);
        assert!(spec.is_semiring(DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn arity_bound_is_enforced() {
        let spec = modular_spec(3).unwrap();
        assert!(matches!(from_binary_semiring(&spec, 5, 2), Err(Error::ArityBound { .. })));
        assert!(matches!(from_binary_semiring(&spec, 2, 1), Err(Error::ArityBound { .. })));
        let wide = Limits { max_arity: 5, ..Limits::default() };
        assert!(from_binary_semiring_with_limits(&spec, 5, 2, &wide).is_ok());
    }

    #[test]
    fn boolean_examples() {
        let b = boolean_mn_semiring(2, 3, 2).unwrap();
        assert_eq!(b.f_identity(), Some(0b00));
        assert_eq!(b.g_identity(), Some(0b11));
        assert!(b.verify(DEFAULT_BUDGET).unwrap().is_semiring());

        let b1 = boolean_mn_semiring(1, 2, 2).unwrap();
        assert_eq!(idempotent_elements(b1.f(), None), vec![0, 1]);
        assert!(matches!(boolean_mn_semiring(4, 2, 2), Err(Error::CarrierTooLarge { .. })));
        assert!(matches!(boolean_mn_semiring(0, 2, 2), Err(Error::CarrierTooLarge { .. })));
    }

    #[test]
    fn boolean_is_idempotent_and_absorbing() {
        for atoms in 1..=3 {
            let b = boolean_mn_semiring(atoms, 2, 3).unwrap();
            let k = b.size();
            assert_eq!(idempotent_elements(b.f(), None).len(), k);
            assert_eq!(idempotent_elements(b.g(), None).len(), k);
            assert!(b.is_absorbing(0).unwrap());
        }
    }

    #[test]
    fn derived_binary_ops_examples() {
        let z4 = modular_mn_semiring(4, 2, 3).unwrap();
        let (_, times) = derive_binary_ops(&z4, &[], &[1]).unwrap();
        assert_eq!(times, modular_spec(4).unwrap().mul);

        let b = boolean_mn_semiring(2, 3, 2).unwrap();
        let (plus, _) = derive_binary_ops(&b, &[0], &[]).unwrap();
        assert_eq!(plus, OpTable::from_fn(4, 2, |t| t[0] | t[1]).unwrap());

        let z2 = modular_mn_semiring(2, 3, 2).unwrap();
        let (plus, _) = derive_binary_ops(&z2, &[1], &[]).unwrap();
        assert_eq!(plus.eval(&[0, 0]).unwrap(), 1);
        assert_eq!(plus, OpTable::from_fn(2, 2, |t| (t[0] + 1 + t[1]) % 2).unwrap());

        assert!(matches!(derive_binary_ops(&z2, &[], &[]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(derive_binary_ops(&z2, &[2], &[]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn identity_padding_gives_associative_ops() {
        for (k, m, n) in [(4, 3, 2), (3, 3, 3), (5, 2, 4)] {
            let s = modular_mn_semiring(k, m, n).unwrap();
            let (plus, times) = identity_binary_ops(&s).unwrap();
            assert!(check_associativity(&plus, DEFAULT_BUDGET).unwrap().holds());
            assert!(check_associativity(&times, DEFAULT_BUDGET).unwrap().holds());
            assert_eq!(find_identity(&plus), s.f_identity());
        }
        let no_one = MNSemiring::new(
            OpTable::from_fn(2, 2, |t| t[0] | t[1]).unwrap(),
            OpTable::new(2, 2, vec![0; 4]).unwrap(),
        )
        .unwrap();
        assert_eq!(identity_binary_ops(&no_one), Err(Error::NoIdentity("g")));
    }

    #[test]
    fn negative_integers_ternary_product_is_clean() {
        let r = sampled_verify(&RuleCarrier::negative_integers(), 2, 3, 2_000, 7);
        assert!(r.clean(), "{r}");
        assert_eq!(r.overflows, 0);
    }

    #[test]
    fn negative_integers_binary_product_leaves_the_carrier() {
        let r = sampled_verify(&RuleCarrier::negative_integers(), 2, 2, 100, 7);
        assert!(r.closure_violations > 0);
        let v = r.examples.iter().find(|v| v.check == "closure").unwrap();
        assert!(v.args.iter().product::<i128>() > 0);
    }

    #[test]
    fn sampling_is_deterministic_per_seed() {
        let rc = RuleCarrier::negative_integers();
        assert_eq!(sampled_verify(&rc, 2, 2, 50, 3), sampled_verify(&rc, 2, 2, 50, 3));
    }

    #[test]
    fn wrapped_tables_agree_with_exhaustive_checker() {
        let good = modular_mn_semiring(4, 2, 3).unwrap();
        assert!(sampled_verify(&RuleCarrier::from_semiring(&good), 2, 3, 500, 1).clean());

        let sub = MNSemiring::new(
            OpTable::from_fn(3, 2, |t| (t[0] + 3 - t[1]) % 3).unwrap(),
            OpTable::from_fn(3, 2, |t| t[0] * t[1] % 3).unwrap(),
        )
        .unwrap();
        let r = sampled_verify(&RuleCarrier::from_semiring(&sub), 2, 2, 500, 1);
        assert!(r.associativity_violations > 0);
        assert_eq!(r.closure_violations, 0);
    }
}
