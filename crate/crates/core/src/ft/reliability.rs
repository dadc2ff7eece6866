use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::poset::AtomPoset;
use super::term::SystemTerm;
use crate::error::{Error, Result};

/// Exact failure probabilities of atomic components.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReliabilityAssignment {
    prob: BTreeMap<String, BigRational>,
}

/// `num / den` as an exact rational.
pub fn ratio(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

impl ReliabilityAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, atom: &str, p: BigRational) -> Result<()> {
        if p < BigRational::zero() || p > BigRational::one() {
            return Err(Error::ProbabilityRange(p.to_string()));
        }
        self.prob.insert(atom.to_owned(), p);
        Ok(())
    }

    pub fn with(mut self, atom: &str, p: BigRational) -> Result<Self> {
        self.set(atom, p)?;
        Ok(self)
    }

    pub fn get(&self, atom: &str) -> Option<&BigRational> {
        self.prob.get(atom)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &BigRational)> {
        self.prob.iter().map(|(a, p)| (a.as_str(), p))
    }

    /// `a <= b` in the poset implies `p(a) <= p(b)` for assigned atoms.
    pub fn is_consistent_with(&self, poset: &AtomPoset) -> bool {
        poset.pairs().iter().all(|(a, b)| match (self.get(a), self.get(b)) {
            (Some(pa), Some(pb)) => pa <= pb,
            _ => true,
        })
    }
}

impl fmt::Display for ReliabilityAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.prob.iter().map(|(a, p)| format!("{a}={p}")).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Probability that the system fails, assuming every atom occurrence fails
/// independently: `1 - prod(1 - p)` in series, `prod(p)` in parallel.
pub fn failure_probability(t: &SystemTerm, r: &ReliabilityAssignment) -> Result<BigRational> {
    Ok(match t {
        SystemTerm::Zero => BigRational::zero(),
        SystemTerm::One => BigRational::one(),
        SystemTerm::Atom(a) => r.get(a).cloned().ok_or_else(|| Error::UnassignedAtom(a.clone()))?,
        SystemTerm::F(children) => {
            let mut survive = BigRational::one();
            for c in children {
                survive *= BigRational::one() - failure_probability(c, r)?;
            }
            BigRational::one() - survive
        }
        SystemTerm::G(children) => {
            let mut fail = BigRational::one();
            for c in children {
                fail *= failure_probability(c, r)?;
            }
            fail
        }
    })
}
