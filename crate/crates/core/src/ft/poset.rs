use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// A partial order on atom names, stored as its reflexive-transitive
/// closure. `leq(a, b)` reads "a is at least as fault tolerant as b".
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AtomPoset {
    index: BTreeMap<String, usize>,
    names: Vec<String>,
    closure: Vec<Vec<bool>>,
}

impl AtomPoset {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Closes `facts` (pairs `a <= b`) transitively. A cycle between
    /// distinct atoms is rejected.
    pub fn new<'a>(atoms: impl IntoIterator<Item = &'a str>, facts: &[(String, String)]) -> Result<Self> {
        let mut poset = AtomPoset::default();
        for a in atoms {
            poset.intern(a);
        }
        for (a, b) in facts {
            poset.intern(a);
            poset.intern(b);
        }
        let k = poset.names.len();
        let mut c = vec![vec![false; k]; k];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = true;
        }
        for (a, b) in facts {
            c[poset.index[a]][poset.index[b]] = true;
        }
        for via in 0..k {
            for i in 0..k {
                if c[i][via] {
                    for j in 0..k {
                        if c[via][j] {
                            c[i][j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..k {
            for j in i + 1..k {
                if c[i][j] && c[j][i] {
                    return Err(Error::PosetCycle(poset.names[i].clone(), poset.names[j].clone()));
                }
            }
        }
        poset.closure = c;
        Ok(poset)
    }

    fn intern(&mut self, a: &str) {
        if !self.index.contains_key(a) {
            self.index.insert(a.to_owned(), self.names.len());
            self.names.push(a.to_owned());
        }
    }

    /// Reflexive for every name, including names the poset has never seen.
    pub fn leq(&self, a: &str, b: &str) -> bool {
        if a == b {
            return true;
        }
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.closure[i][j],
            _ => false,
        }
    }

    pub fn atoms(&self) -> &[String] {
        &self.names
    }

    /// Strict pairs of the closure, in name-insertion order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (i, a) in self.names.iter().enumerate() {
            for (j, b) in self.names.iter().enumerate() {
                if i != j && self.closure[i][j] {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fact(a: &str, b: &str) -> (String, String) {
        (a.into(), b.into())
    }

    #[test]
    fn closure_is_transitive() {
        let p = AtomPoset::new([], &[fact("a", "b"), fact("b", "c")]).unwrap();
        assert!(p.leq("a", "c"));
        assert!(!p.leq("c", "a"));
        assert!(p.leq("z", "z"));
        assert!(!p.leq("a", "z"));
        assert_eq!(p.pairs().len(), 3);
    }

    #[test]
    fn cycles_are_rejected() {
        let err = AtomPoset::new([], &[fact("a", "b"), fact("b", "c"), fact("c", "a")]).unwrap_err();
        assert!(matches!(err, Error::PosetCycle(..)));
        assert!(AtomPoset::new([], &[fact("a", "a")]).is_ok());
    }
}
