use std::collections::{HashMap, HashSet};
use std::fmt;

use super::poset::AtomPoset;
use super::term::{normalize, SystemTerm};

/// Outcome of [`derive_order`]. `Unknown` means no rule applies, not that
/// the terms are incomparable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
    Unknown,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Le => "LE",
            Relation::Ge => "GE",
            Relation::Eq => "EQ",
            Relation::Unknown => "UNKNOWN",
        })
    }
}

/// Inference rules of the order calculus, as they appear in derivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// Identical normal forms.
    Reflexivity,
    /// `0 <= t <= 1`.
    Bounds,
    /// A fact from the atom poset.
    AtomFact,
    /// `F[S] <= F[T]` by an injective matching of S into T.
    SeriesMonotone,
    /// `G[S] <= G[T]` by an injective matching of T into S.
    ParallelMonotone,
    /// `s <= F[.., s, ..]` and `G[.., s, ..] <= s`.
    Membership,
    /// `F[S] <= F[S, S, ..]` and `G[S, S, ..] <= G[S]`.
    Replication,
    /// A child was replaced by a strictly comparable one inside F or G.
    Context,
}

impl Rule {
    pub fn name(self) -> &'static str {
        match self {
            Rule::Reflexivity => "reflexivity",
            Rule::Bounds => "bounds",
            Rule::AtomFact => "atom-fact",
            Rule::SeriesMonotone => "f-monotone",
            Rule::ParallelMonotone => "g-monotone",
            Rule::Membership => "membership",
            Rule::Replication => "replication",
            Rule::Context => "context",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderResult {
    pub relation: Relation,
    /// Distinct rules used, in order of first use. Empty for `Unknown`.
    pub derivation: Vec<Rule>,
}

impl fmt::Display for OrderResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.relation)?;
        if !self.derivation.is_empty() {
            let names: Vec<&str> = self.derivation.iter().map(|r| r.name()).collect();
            write!(f, " [{}]", names.join(", "))?;
        }
        Ok(())
    }
}

/// Maximum children per node the matcher accepts; wider nodes are left
/// undecided.
pub const MAX_CHILDREN: usize = 16;

/// Nodes up to this width also try matching a child against a group of
/// children; the search is exponential in the width.
pub const MAX_GROUPED: usize = 8;

/// Decides `t1 <= t2`, `t2 <= t1`, both, or neither from the rule set.
/// Sound but incomplete. Inputs are normalized first.
pub fn derive_order(t1: &SystemTerm, t2: &SystemTerm, poset: &AtomPoset) -> OrderResult {
    let (n1, n2) = (normalize(t1), normalize(t2));
    if n1 == n2 {
        return OrderResult {
            relation: Relation::Eq,
            derivation: vec![Rule::Reflexivity],
        };
    }
    let mut d = Deriver::new(poset);
    let le = d.le(&n1, &n2);
    let ge = d.le(&n2, &n1);
    match (le, ge) {
        (Some(a), Some(b)) => {
            let mut derivation = a;
            merge(&mut derivation, &b);
            OrderResult {
                relation: Relation::Eq,
                derivation,
            }
        }
        (Some(a), None) => OrderResult {
            relation: Relation::Le,
            derivation: a,
        },
        (None, Some(b)) => OrderResult {
            relation: Relation::Ge,
            derivation: b,
        },
        (None, None) => OrderResult {
            relation: Relation::Unknown,
            derivation: Vec::new(),
        },
    }
}

/// Derivation of `t1 <= t2` alone, if one exists.
pub fn derive_le(t1: &SystemTerm, t2: &SystemTerm, poset: &AtomPoset) -> Option<Vec<Rule>> {
    let (n1, n2) = (normalize(t1), normalize(t2));
    Deriver::new(poset).le(&n1, &n2)
}

fn merge(into: &mut Vec<Rule>, from: &[Rule]) {
    for r in from {
        if *r != Rule::Reflexivity && !into.contains(r) {
            into.push(*r);
        }
    }
}

struct Deriver<'p> {
    poset: &'p AtomPoset,
    memo: HashMap<(SystemTerm, SystemTerm), Option<Vec<Rule>>>,
}

impl<'p> Deriver<'p> {
    fn new(poset: &'p AtomPoset) -> Self {
        Deriver {
            poset,
            memo: HashMap::new(),
        }
    }

    fn le(&mut self, s: &SystemTerm, t: &SystemTerm) -> Option<Vec<Rule>> {
        if s == t {
            return Some(vec![Rule::Reflexivity]);
        }
        let key = (s.clone(), t.clone());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let out = self.le_uncached(s, t);
        self.memo.insert(key, out.clone());
        out
    }

    fn le_uncached(&mut self, s: &SystemTerm, t: &SystemTerm) -> Option<Vec<Rule>> {
        use SystemTerm::*;
        if matches!(s, Zero) || matches!(t, One) {
            return Some(vec![Rule::Bounds]);
        }
        let structural = match (s, t) {
            (Atom(a), Atom(b)) if self.poset.leq(a, b) => Some(vec![Rule::AtomFact]),
            (F(xs), F(ys)) => self
                .matching(xs, ys, true)
                .map(|sub| self.wrap(Rule::SeriesMonotone, xs, ys, sub)),
            (G(xs), G(ys)) => self
                .matching(ys, xs, false)
                .map(|sub| self.wrap(Rule::ParallelMonotone, ys, xs, sub)),
            _ => None,
        };
        if structural.is_some() {
            return structural;
        }
        if let F(ys) = t {
            for c in ys {
                if let Some(sub) = self.le(s, c) {
                    let mut trail = vec![Rule::Membership];
                    merge(&mut trail, &sub);
                    return Some(trail);
                }
            }
        }
        if let G(xs) = s {
            for c in xs {
                if let Some(sub) = self.le(c, t) {
                    let mut trail = vec![Rule::Membership];
                    merge(&mut trail, &sub);
                    return Some(trail);
                }
            }
        }
        None
    }

    /// Trail for a monotonicity step where `small` was matched into `large`.
    fn wrap(&self, rule: Rule, small: &[SystemTerm], large: &[SystemTerm], sub: Vec<Vec<Rule>>) -> Vec<Rule> {
        let mut trail = vec![rule];
        if is_replication(small, large) {
            trail.push(Rule::Replication);
        }
        if sub.iter().any(|r| r.as_slice() != [Rule::Reflexivity]) {
            trail.push(Rule::Context);
        }
        for r in &sub {
            merge(&mut trail, r);
        }
        trail
    }

    /// Orders one side of a comparison. In series (`series = true`) the
    /// goal is `l <= r`, otherwise `r <= l`.
    fn edge(&mut self, l: &SystemTerm, r: &SystemTerm, series: bool) -> Option<Vec<Rule>> {
        if series {
            self.le(l, r)
        } else {
            self.le(r, l)
        }
    }

    /// Assigns every element of `left` its own part of `right`. Parts are
    /// single children first (bipartite matching), then, for small nodes,
    /// groups: `l` may be matched to `F[group]` in series, or `G[group]` in
    /// parallel, which is the same child seen through associativity.
    /// Returns the sub-derivations of the matched parts.
    fn matching(&mut self, left: &[SystemTerm], right: &[SystemTerm], series: bool) -> Option<Vec<Vec<Rule>>> {
        if left.len() > right.len() || right.len() > MAX_CHILDREN {
            return None;
        }
        let mut edges: Vec<Vec<Option<Vec<Rule>>>> = Vec::with_capacity(left.len());
        for l in left {
            let row = right.iter().map(|r| self.edge(l, r, series)).collect();
            edges.push(row);
        }
        let mut owner: Vec<Option<usize>> = vec![None; right.len()];
        let matched = (0..left.len()).all(|i| {
            let mut seen = vec![false; right.len()];
            augment(i, &edges, &mut owner, &mut seen)
        });
        if matched {
            let mut sub = Vec::with_capacity(left.len());
            for (j, o) in owner.iter().enumerate() {
                if let Some(i) = *o {
                    sub.push(edges[i][j].clone().unwrap());
                }
            }
            return Some(sub);
        }
        // Children present on both sides pair with themselves; only the
        // rest needs grouping.
        let (left, right) = cancel_common(left, right);
        if right.len() > MAX_GROUPED || left.len() > right.len() {
            return None;
        }
        let mut dead = HashSet::new();
        let mut sub = vec![vec![Rule::Reflexivity]];
        self.grouped(0, 0, &left, &right, series, &mut dead, &mut sub).then_some(sub)
    }

    #[allow(clippy::too_many_arguments)]
    fn grouped(
        &mut self,
        i: usize,
        used: u32,
        left: &[SystemTerm],
        right: &[SystemTerm],
        series: bool,
        dead: &mut HashSet<(usize, u32)>,
        sub: &mut Vec<Vec<Rule>>,
    ) -> bool {
        if i == left.len() {
            return true;
        }
        if dead.contains(&(i, used)) {
            return false;
        }
        let free = !used & ((1u32 << right.len()) - 1);
        let mut parts: Vec<u32> = Vec::new();
        let mut part = free;
        while part != 0 {
            parts.push(part);
            part = (part - 1) & free;
        }
        parts.sort_by_key(|p| (p.count_ones(), *p));
        for part in parts {
            let members: Vec<SystemTerm> = (0..right.len())
                .filter(|j| part >> j & 1 == 1)
                .map(|j| right[j].clone())
                .collect();
            let target = match members.len() {
                1 => members.into_iter().next().unwrap(),
                _ if series => SystemTerm::F(members),
                _ => SystemTerm::G(members),
            };
            if let Some(rules) = self.edge(&left[i], &target, series) {
                sub.push(rules);
                if self.grouped(i + 1, used | part, left, right, series, dead, sub) {
                    return true;
                }
                sub.pop();
            }
        }
        dead.insert((i, used));
        false
    }
}

/// Removes one copy from each side for every child the two sorted
/// multisets share.
fn cancel_common(left: &[SystemTerm], right: &[SystemTerm]) -> (Vec<SystemTerm>, Vec<SystemTerm>) {
    let (mut l, mut r) = (Vec::new(), Vec::new());
    let (mut i, mut j) = (0, 0);
    while i < left.len() && j < right.len() {
        match left[i].cmp(&right[j]) {
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
            std::cmp::Ordering::Less => {
                l.push(left[i].clone());
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                r.push(right[j].clone());
                j += 1;
            }
        }
    }
    l.extend_from_slice(&left[i..]);
    r.extend_from_slice(&right[j..]);
    (l, r)
}

fn augment(i: usize, edges: &[Vec<Option<Vec<Rule>>>], owner: &mut [Option<usize>], seen: &mut [bool]) -> bool {
    for j in 0..owner.len() {
        if edges[i][j].is_none() || seen[j] {
            continue;
        }
        seen[j] = true;
        if owner[j].is_none_or(|k| augment(k, edges, owner, seen)) {
            owner[j] = Some(i);
            return true;
        }
    }
    false
}

/// `large` is `small` repeated at least twice, as multisets.
fn is_replication(small: &[SystemTerm], large: &[SystemTerm]) -> bool {
    if small.is_empty() || large.len() < 2 * small.len() || !large.len().is_multiple_of(small.len()) {
        return false;
    }
    let copies = large.len() / small.len();
    let mut repeated: Vec<&SystemTerm> = small.iter().flat_map(|c| std::iter::repeat_n(c, copies)).collect();
    repeated.sort();
    let mut l: Vec<&SystemTerm> = large.iter().collect();
    l.sort();
    repeated == l
}
