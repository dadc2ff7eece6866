//! Finite carriers, dense operation tables and exhaustive axiom checkers.
//!
//! An operation of arity `m` on the carrier `{0, .., k-1}` is stored as a
//! table of `k^m` entries in row-major order, leftmost argument most
//! significant. Every checker is a scan over that table; checks whose cost
//! exceeds the evaluation budget refuse with [`Error::BudgetExceeded`]
//! instead of silently sampling.

use std::fmt;
use std::ops::ControlFlow;

use crate::error::{Error, Result};

/// An element of a finite carriers, identified by its index.
pub type Element = usize;

/// Default budget of elementary evaluations for one exhaustive check.
pub const DEFAULT_BUDGET: u128 = 100_000_000;

/// Construction bounds for tables and algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_arity: usize,
    pub max_size: usize,
    pub budget: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_arity: 4,
            max_size: 12,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Limits {
    pub fn check_shape(&self, size: usize, arity: usize) -> Result<()> {
        if arity < 2 || arity > self.max_arity || size == 0 || size > self.max_size {
            return Err(Error::ArityBound {
                arity,
                size,
                max_arity: self.max_arity,
                max_size: self.max_size,
            });
        }
        Ok(())
    }
}

pub(crate) fn checked_pow(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}

pub(crate) fn ensure_budget(needed: u128, budget: u128) -> Result<()> {
    if needed > budget {
        Err(Error::BudgetExceeded { needed, budget })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every tuple of `[0, size)^len` in lexicographic order
/// until it breaks.
pub fn for_each_tuple<B>(
    size: usize,
    len: usize,
    mut visit: impl FnMut(&[Element]) -> ControlFlow<B>,
) -> Option<B> {
    if size == 0 {
        return None;
    }
    let mut tuple = vec![0; len];
    loop {
        if let ControlFlow::Break(b) = visit(&tuple) {
            return Some(b);
        }
        let mut pos = len;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < size {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

/// A total `arity`-ary operation on `{0, .., size-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    arity: usize,
    size: usize,
    entries: Vec<Element>,
}

impl OpTable {
    pub fn new(size: usize, arity: usize, entries: Vec<Element>) -> Result<Self> {
        Self::with_limits(size, arity, entries, &Limits::default())
    }

    pub fn with_limits(
        size: usize,
        arity: usize,
        entries: Vec<Element>,
        limits: &Limits,
    ) -> Result<Self> {
        limits.check_shape(size, arity)?;
        let expected = size.pow(arity as u32);
        if entries.len() != expected {
            return Err(Error::TableLength {
                expected,
                got: entries.len(),
            });
        }
        if let Some(&bad) = entries.iter().find(|&&e| e >= size) {
            return Err(Error::IndexOutOfRange { index: bad, size });
        }
        Ok(OpTable {
            arity,
            size,
            entries,
        })
    }

    /// Tabulates `rule` over every argument tuple.
    pub fn from_fn(
        size: usize,
        arity: usize,
        rule: impl FnMut(&[Element]) -> Element,
    ) -> Result<Self> {
        Self::from_fn_with_limits(size, arity, rule, &Limits::default())
    }

    pub fn from_fn_with_limits(
        size: usize,
        arity: usize,
        mut rule: impl FnMut(&[Element]) -> Element,
        limits: &Limits,
    ) -> Result<Self> {
        limits.check_shape(size, arity)?;
        let mut entries = Vec::with_capacity(size.pow(arity as u32));
        for_each_tuple::<()>(size, arity, |t| {
            entries.push(rule(t));
            ControlFlow::Continue(())
        });
        Self::with_limits(size, arity, entries, limits)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entries(&self) -> &[Element] {
        &self.entries
    }

    /// Checked evaluation.
    pub fn eval(&self, args: &[Element]) -> Result<Element> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: self.size,
            });
        }
        Ok(self.apply(args))
    }

    /// Unchecked evaluation; `args` must have the right length and range.
    #[inline]
    pub fn apply(&self, args: &[Element]) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0, |acc, &a| acc * self.size + a);
        self.entries[idx]
    }

    /// `op(x, .., x)`.
    pub fn diagonal(&self, x: Element) -> Element {
        self.apply(&vec![x; self.arity])
    }
}

/// Which of the two operations of an (m,n)-semiring a witness refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    F,
    G,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::F => f.write_str("f"),
            Side::G => f.write_str("g"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WitnessKind {
    AssocFail,
    CommFail,
    DistFail,
    CancelFail,
    ZeroDivisor,
    ZeroSum,
    NotIdempotent,
    NotAbsorbing,
    Congruence,
    Homomorphism,
    Ideal,
    Other,
}

/// A concrete counterexample to a law.
///
/// The meaning of `args`, `positions`, `lhs` and `rhs` depends on `kind`:
///
/// * `AssocFail`: `args[0]` is a `(2m-1)`-tuple, `positions` the two
///   nesting offsets, `lhs`/`rhs` the disagreeing results.
/// * `CommFail`: `args[0]` is a tuple, `positions[0]` the adjacent swap.
/// * `DistFail`: `args = [ctx, a]`; `ctx[positions[0]]` is replaced.
/// * `CancelFail`: `args = [t_a, t_b]` differing only at `positions[0]`
///   with equal images `lhs == rhs`.
/// * `ZeroDivisor` / `ZeroSum`: `args[0]` maps to the zero `rhs`.
/// * `NotIdempotent` / `NotAbsorbing`: `args[0]` is the offending tuple.
/// * `Congruence`, `Homomorphism`, `Ideal`: replayed by their own modules.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    pub kind: WitnessKind,
    pub side: Option<Side>,
    pub args: Vec<Vec<Element>>,
    pub positions: Vec<usize>,
    pub lhs: Element,
    pub rhs: Element,
}

impl Witness {
    fn new(kind: WitnessKind, args: Vec<Vec<Element>>, positions: Vec<usize>, lhs: Element, rhs: Element) -> Self {
        Witness {
            kind,
            side: None,
            args,
            positions,
            lhs,
            rhs,
        }
    }

    pub(crate) fn on(mut self, side: Side) -> Self {
        self.side = Some(side);
        self
    }

    /// Re-evaluates the violation against explicit tables. `aux` is the
    /// additive table for `DistFail`; `zero` is needed by the zero kinds.
    pub fn replay(&self, op: &OpTable, aux: Option<&OpTable>, zero: Option<Element>) -> bool {
        let in_range = |t: &[Element], len: usize, size: usize| t.len() == len && t.iter().all(|&x| x < size);
        let k = op.size();
        let ar = op.arity();
        match self.kind {
            WitnessKind::AssocFail => {
                let (Some(x), [i, j]) = (self.args.first(), self.positions.as_slice()) else {
                    return false;
                };
                if !in_range(x, 2 * ar - 1, k) || *i >= ar || *j >= ar {
                    return false;
                }
                let l = nest(op, x, *i);
                let r = nest(op, x, *j);
                l == self.lhs && r == self.rhs && l != r
            }
            WitnessKind::CommFail => {
                let (Some(t), [p]) = (self.args.first(), self.positions.as_slice()) else {
                    return false;
                };
                if !in_range(t, ar, k) || p + 1 >= ar {
                    return false;
                }
                let mut s = t.clone();
                s.swap(*p, p + 1);
                let (l, r) = (op.apply(t), op.apply(&s));
                l == self.lhs && r == self.rhs && l != r
            }
            WitnessKind::DistFail => {
                let (Some(f), [ctx, a], [i]) = (aux, self.args.as_slice(), self.positions.as_slice()) else {
                    return false;
                };
                if f.size() != k || !in_range(ctx, ar, k) || !in_range(a, f.arity(), k) || *i >= ar {
                    return false;
                }
                let (l, r) = distribute(op, f, ctx, a, *i);
                l == self.lhs && r == self.rhs && l != r
            }
            WitnessKind::CancelFail => {
                let ([ta, tb], [i]) = (self.args.as_slice(), self.positions.as_slice()) else {
                    return false;
                };
                if !in_range(ta, ar, k) || !in_range(tb, ar, k) || *i >= ar {
                    return false;
                }
                let differs_only_at_i = (0..ar).all(|p| (p == *i) != (ta[p] == tb[p]));
                differs_only_at_i && op.apply(ta) == self.lhs && op.apply(tb) == self.rhs && self.lhs == self.rhs
            }
            WitnessKind::ZeroDivisor | WitnessKind::ZeroSum => {
                let (Some(z), Some(t)) = (zero, self.args.first()) else {
                    return false;
                };
                if !in_range(t, ar, k) {
                    return false;
                }
                let v = op.apply(t);
                let shape = if self.kind == WitnessKind::ZeroDivisor {
                    t.iter().all(|&x| x != z)
                } else {
                    t.iter().any(|&x| x != z)
                };
                shape && v == z && self.lhs == v && self.rhs == z
            }
            WitnessKind::NotIdempotent => {
                let Some(t) = self.args.first() else { return false };
                if t.len() != 1 || t[0] >= k {
                    return false;
                }
                let v = op.diagonal(t[0]);
                v == self.lhs && self.rhs == t[0] && v != t[0]
            }
            WitnessKind::NotAbsorbing => {
                let (Some(t), [p]) = (self.args.first(), self.positions.as_slice()) else {
                    return false;
                };
                in_range(t, ar, k) && *p < ar && t[*p] == self.rhs && op.apply(t) == self.lhs && self.lhs != self.rhs
            }
            _ => false,
        }
    }

    /// Replays against the table named by `side`.
    pub fn replays_on(&self, s: &MNSemiring) -> bool {
        match self.side {
            Some(Side::F) => self.replay(s.f(), Some(s.g()), s.f_identity()),
            Some(Side::G) => self.replay(s.g(), Some(s.f()), s.f_identity()),
            None => false,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.kind)?;
        if let Some(side) = self.side {
            write!(f, " on {side}")?;
        }
        for a in &self.args {
            write!(f, " ({})", join(a))?;
        }
        if !self.positions.is_empty() {
            write!(f, " at [{}]", join(&self.positions))?;
        }
        write!(f, ": {} vs {}", self.lhs, self.rhs)
    }
}

pub(crate) fn join(xs: &[usize]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Outcome of a law check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Holds,
    Fails(Witness),
}

impl Check {
    pub fn holds(&self) -> bool {
        matches!(self, Check::Holds)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Check::Holds => None,
            Check::Fails(w) => Some(w),
        }
    }

    fn from_break(w: Option<Witness>) -> Self {
        w.map_or(Check::Holds, Check::Fails)
    }

    fn on(self, side: Side) -> Self {
        match self {
            Check::Fails(w) => Check::Fails(w.on(side)),
            holds => holds,
        }
    }
}

// op(x[..i], op(x[i..i+m]), x[i+m..])
fn nest(op: &OpTable, x: &[Element], i: usize) -> Element {
    let m = op.arity();
    let inner = op.apply(&x[i..i + m]);
    let mut outer = Vec::with_capacity(m);
    outer.extend_from_slice(&x[..i]);
    outer.push(inner);
    outer.extend_from_slice(&x[i + m..]);
    op.apply(&outer)
}

fn distribute(g: &OpTable, f: &OpTable, ctx: &[Element], a: &[Element], i: usize) -> (Element, Element) {
    let mut t = ctx.to_vec();
    t[i] = f.apply(a);
    let lhs = g.apply(&t);
    let parts: Vec<Element> = a
        .iter()
        .map(|&aj| {
            t[i] = aj;
            g.apply(&t)
        })
        .collect();
    (lhs, f.apply(&parts))
}

/// Checks that all nestings of two applications agree. Adjacent offsets
/// `(i, i+1)` suffice since equality chains.
pub fn check_associativity(op: &OpTable, budget: u128) -> Result<Check> {
    let (k, m) = (op.size(), op.arity());
    ensure_budget(checked_pow(k, 2 * m - 1).saturating_mul(m as u128), budget)?;
    let mut values = vec![0; m];
    let w = for_each_tuple(k, 2 * m - 1, |x| {
        for (i, v) in values.iter_mut().enumerate() {
            *v = nest(op, x, i);
        }
        match values.windows(2).position(|p| p[0] != p[1]) {
            Some(i) => ControlFlow::Break(Witness::new(
                WitnessKind::AssocFail,
                vec![x.to_vec()],
                vec![i, i + 1],
                values[i],
                values[i + 1],
            )),
            None => ControlFlow::Continue(()),
        }
    });
    Ok(Check::from_break(w))
}

/// Checks invariance under argument permutations via adjacent transpositions.
pub fn check_commutativity(op: &OpTable, budget: u128) -> Result<Check> {
    let (k, m) = (op.size(), op.arity());
    ensure_budget(checked_pow(k, m).saturating_mul(m as u128), budget)?;
    let mut swapped = vec![0; m];
    let w = for_each_tuple(k, m, |t| {
        let v = op.apply(t);
        for p in 0..m - 1 {
            if t[p] == t[p + 1] {
                continue;
            }
            swapped.copy_from_slice(t);
            swapped.swap(p, p + 1);
            let u = op.apply(&swapped);
            if u != v {
                return ControlFlow::Break(Witness::new(WitnessKind::CommFail, vec![t.to_vec()], vec![p], v, u));
            }
        }
        ControlFlow::Continue(())
    });
    Ok(Check::from_break(w))
}

/// Checks that `g` distributes over `f` in every argument position of `g`.
pub fn check_distributivity(g: &OpTable, f: &OpTable, budget: u128) -> Result<Check> {
    if g.size() != f.size() {
        return Err(Error::CarrierMismatch {
            left: g.size(),
            right: f.size(),
        });
    }
    let (k, n, m) = (g.size(), g.arity(), f.arity());
    ensure_budget(
        checked_pow(k, n - 1 + m).saturating_mul((n * (m + 2)) as u128),
        budget,
    )?;
    let mut ctx = vec![0; n];
    for i in 0..n {
        let w = for_each_tuple(k, n - 1, |rest| {
            ctx[..i].copy_from_slice(&rest[..i]);
            ctx[i] = 0;
            ctx[i + 1..].copy_from_slice(&rest[i..]);
            for_each_tuple(k, m, |a| {
                let (l, r) = distribute(g, f, &ctx, a, i);
                if l != r {
                    ControlFlow::Break(Witness::new(WitnessKind::DistFail, vec![ctx.clone(), a.to_vec()], vec![i], l, r))
                } else {
                    ControlFlow::Continue(())
                }
            })
            .map_or(ControlFlow::Continue(()), ControlFlow::Break)
        });
        if let Some(w) = w {
            return Ok(Check::Fails(w));
        }
    }
    Ok(Check::Holds)
}

fn is_identity(op: &OpTable, e: Element) -> bool {
    let m = op.arity();
    let mut t = vec![e; m];
    for x in 0..op.size() {
        for p in 0..m {
            t[p] = x;
            let v = op.apply(&t);
            t[p] = e;
            if v != x {
                return false;
            }
        }
    }
    true
}

/// Every element neutral in every argument position. For binary operations
/// this has at most one member; for higher arities several may qualify
/// (ternary XOR on `{0,1}` accepts both elements).
pub fn identity_elements(op: &OpTable) -> Vec<Element> {
    (0..op.size()).filter(|&e| is_identity(op, e)).collect()
}

/// Least identity element, if any.
pub fn find_identity(op: &OpTable) -> Option<Element> {
    (0..op.size()).find(|&e| is_identity(op, e))
}

/// Checks that `a != b` never produce equal results in a shared context.
pub fn is_cancellative(op: &OpTable, budget: u128) -> Result<Check> {
    let (k, m) = (op.size(), op.arity());
    ensure_budget(checked_pow(k, m).saturating_mul(m as u128), budget)?;
    let mut t = vec![0; m];
    let mut seen: Vec<Option<Element>> = vec![None; k];
    for i in 0..m {
        let w = for_each_tuple(k, m - 1, |rest| {
            t[..i].copy_from_slice(&rest[..i]);
            t[i + 1..].copy_from_slice(&rest[i..]);
            seen.iter_mut().for_each(|s| *s = None);
            for a in 0..k {
                t[i] = a;
                let v = op.apply(&t);
                if let Some(b) = seen[v] {
                    let mut tb = t.clone();
                    tb[i] = b;
                    return ControlFlow::Break(Witness::new(WitnessKind::CancelFail, vec![tb, t.clone()], vec![i], v, v));
                }
                seen[v] = Some(a);
            }
            ControlFlow::Continue(())
        });
        if let Some(w) = w {
            return Ok(Check::Fails(w));
        }
    }
    Ok(Check::Holds)
}

/// `op(tuple, a) = op(tuple, b)` implies `a = b`.
pub fn is_left_cancellable_tuple(op: &OpTable, tuple: &[Element]) -> Result<bool> {
    left_cancel_witness(op, tuple).map(|w| w.is_none())
}

fn left_cancel_witness(op: &OpTable, tuple: &[Element]) -> Result<Option<Witness>> {
    let m = op.arity();
    if tuple.len() + 1 != m {
        return Err(Error::ArityMismatch {
            expected: m - 1,
            got: tuple.len(),
        });
    }
    if let Some(&bad) = tuple.iter().find(|&&x| x >= op.size()) {
        return Err(Error::IndexOutOfRange {
            index: bad,
            size: op.size(),
        });
    }
    let mut t = tuple.to_vec();
    t.push(0);
    let mut seen: Vec<Option<Element>> = vec![None; op.size()];
    for a in 0..op.size() {
        t[m - 1] = a;
        let v = op.apply(&t);
        if let Some(b) = seen[v] {
            let mut tb = t.clone();
            tb[m - 1] = b;
            return Ok(Some(Witness::new(WitnessKind::CancelFail, vec![tb, t], vec![m - 1], v, v)));
        }
        seen[v] = Some(a);
    }
    Ok(None)
}

/// `{ x : op(x, .., x) = x }`, optionally without `exclude`.
pub fn idempotent_elements(op: &OpTable, exclude: Option<Element>) -> Vec<Element> {
    (0..op.size())
        .filter(|&x| Some(x) != exclude && op.diagonal(x) == x)
        .collect()
}

fn idempotency_check(op: &OpTable, exclude: Option<Element>) -> Check {
    (0..op.size())
        .filter(|&x| Some(x) != exclude)
        .find(|&x| op.diagonal(x) != x)
        .map_or(Check::Holds, |x| {
            Check::Fails(Witness::new(WitnessKind::NotIdempotent, vec![vec![x]], vec![], op.diagonal(x), x))
        })
}

/// A finite `(m,n)`-semiring candidate: an `m`-ary `f` and an `n`-ary `g` on
/// a shared carrier. Construction does not verify the axioms; see
/// [`MNSemiring::verify`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MNSemiring {
    f: OpTable,
    g: OpTable,
    f_identity: Option<Element>,
    g_identity: Option<Element>,
}

impl MNSemiring {
    pub fn new(f: OpTable, g: OpTable) -> Result<Self> {
        if f.size() != g.size() {
            return Err(Error::CarrierMismatch {
                left: f.size(),
                right: g.size(),
            });
        }
        let f_identity = find_identity(&f);
        let g_identity = find_identity(&g);
        Ok(MNSemiring {
            f,
            g,
            f_identity,
            g_identity,
        })
    }

    pub fn size(&self) -> usize {
        self.f.size()
    }

    pub fn m(&self) -> usize {
        self.f.arity()
    }

    pub fn n(&self) -> usize {
        self.g.arity()
    }

    pub fn f(&self) -> &OpTable {
        &self.f
    }

    pub fn g(&self) -> &OpTable {
        &self.g
    }

    pub fn table(&self, side: Side) -> &OpTable {
        match side {
            Side::F => &self.f,
            Side::G => &self.g,
        }
    }

    /// The f-identity `0`, when one exists (least index if several do).
    pub fn f_identity(&self) -> Option<Element> {
        self.f_identity
    }

    /// The g-identity `1`.
    pub fn g_identity(&self) -> Option<Element> {
        self.g_identity
    }

    fn zero(&self) -> Result<Element> {
        self.f_identity.ok_or(Error::NoIdentity("f"))
    }

    /// `g` returns `z` whenever `z` is among its arguments.
    pub fn is_absorbing(&self, z: Element) -> Result<bool> {
        Ok(self.absorbing_witness(z)?.is_none())
    }

    fn absorbing_witness(&self, z: Element) -> Result<Option<Witness>> {
        let (k, n) = (self.size(), self.n());
        if z >= k {
            return Err(Error::IndexOutOfRange { index: z, size: k });
        }
        let mut t = vec![0; n];
        for p in 0..n {
            let w = for_each_tuple(k, n - 1, |rest| {
                t[..p].copy_from_slice(&rest[..p]);
                t[p] = z;
                t[p + 1..].copy_from_slice(&rest[p..]);
                let v = self.g.apply(&t);
                if v != z {
                    ControlFlow::Break(Witness::new(WitnessKind::NotAbsorbing, vec![t.clone()], vec![p], v, z).on(Side::G))
                } else {
                    ControlFlow::Continue(())
                }
            });
            if w.is_some() {
                return Ok(w);
            }
        }
        Ok(None)
    }

    /// `g(x_1, .., x_n) = 0` forces some `x_i = 0`.
    pub fn is_zero_divisor_free(&self) -> Result<Check> {
        let z = self.zero()?;
        let w = for_each_tuple(self.size(), self.n(), |t| {
            if t.iter().all(|&x| x != z) && self.g.apply(t) == z {
                ControlFlow::Break(Witness::new(WitnessKind::ZeroDivisor, vec![t.to_vec()], vec![], z, z))
            } else {
                ControlFlow::Continue(())
            }
        });
        Ok(Check::from_break(w).on(Side::G))
    }

    /// `f(x_1, .., x_m) = 0` forces every `x_i = 0`.
    pub fn is_zero_sum_free(&self) -> Result<Check> {
        let z = self.zero()?;
        let w = for_each_tuple(self.size(), self.m(), |t| {
            if t.iter().any(|&x| x != z) && self.f.apply(t) == z {
                ControlFlow::Break(Witness::new(WitnessKind::ZeroSum, vec![t.to_vec()], vec![], z, z))
            } else {
                ControlFlow::Continue(())
            }
        });
        Ok(Check::from_break(w).on(Side::F))
    }

    /// Every `(n-1)`-tuple of nonzero elements is left cancellable in `g`.
    pub fn is_mult_left_cancellative(&self) -> Result<Check> {
        let z = self.zero()?;
        let mut found = None;
        for_each_tuple::<()>(self.size(), self.n() - 1, |t| {
            if t.contains(&z) {
                return ControlFlow::Continue(());
            }
            match left_cancel_witness(&self.g, t) {
                Ok(Some(w)) => {
                    found = Some(w);
                    ControlFlow::Break(())
                }
                _ => ControlFlow::Continue(()),
            }
        });
        Ok(Check::from_break(found).on(Side::G))
    }

    /// Runs every exhaustive property check under `budget`.
    pub fn verify(&self, budget: u128) -> Result<PropertyReport> {
        let zero = self.f_identity;
        let absorbing_zero = match zero {
            Some(z) => self.is_absorbing(z)?,
            None => false,
        };
        Ok(PropertyReport {
            associative_f: check_associativity(&self.f, budget)?.on(Side::F),
            associative_g: check_associativity(&self.g, budget)?.on(Side::G),
            commutative_f: check_commutativity(&self.f, budget)?.on(Side::F),
            commutative_g: check_commutativity(&self.g, budget)?.on(Side::G),
            distributive: check_distributivity(&self.g, &self.f, budget)?.on(Side::G),
            f_identity: self.f_identity,
            g_identity: self.g_identity,
            absorbing_zero,
            zero_divisor_free: zero.map(|_| self.is_zero_divisor_free()).transpose()?,
            zero_sum_free: zero.map(|_| self.is_zero_sum_free()).transpose()?,
            add_cancellative: is_cancellative(&self.f, budget)?.on(Side::F),
            mult_cancellative: is_cancellative(&self.g, budget)?.on(Side::G),
            add_idempotent: idempotency_check(&self.f, None).on(Side::F),
            mult_idempotent: idempotency_check(&self.g, zero).on(Side::G),
        })
    }
}

/// Free-function form of [`MNSemiring::verify`].
pub fn verify_mn_semiring(s: &MNSemiring, budget: u128) -> Result<PropertyReport> {
    s.verify(budget)
}

/// Results of every structural check on one algebra.
///
/// Zero-related entries are `None` when the algebra has no f-identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub associative_f: Check,
    pub associative_g: Check,
    pub commutative_f: Check,
    pub commutative_g: Check,
    pub distributive: Check,
    pub f_identity: Option<Element>,
    pub g_identity: Option<Element>,
    pub absorbing_zero: bool,
    pub zero_divisor_free: Option<Check>,
    pub zero_sum_free: Option<Check>,
    pub add_cancellative: Check,
    pub mult_cancellative: Check,
    pub add_idempotent: Check,
    pub mult_idempotent: Check,
}

impl PropertyReport {
    /// Both operations associative and `g` distributive over `f`.
    pub fn is_semiring(&self) -> bool {
        self.associative_f.holds() && self.associative_g.holds() && self.distributive.holds()
    }

    /// Named checks in a fixed order, for reporting.
    pub fn checks(&self) -> Vec<(&'static str, Option<&Check>)> {
        vec![
            ("associative_f", Some(&self.associative_f)),
            ("associative_g", Some(&self.associative_g)),
            ("distributive", Some(&self.distributive)),
            ("commutative_f", Some(&self.commutative_f)),
            ("commutative_g", Some(&self.commutative_g)),
            ("zero_divisor_free", self.zero_divisor_free.as_ref()),
            ("zero_sum_free", self.zero_sum_free.as_ref()),
            ("add_cancellative", Some(&self.add_cancellative)),
            ("mult_cancellative", Some(&self.mult_cancellative)),
            ("add_idempotent", Some(&self.add_idempotent)),
            ("mult_idempotent", Some(&self.mult_idempotent)),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mod_add(k: usize) -> OpTable {
        OpTable::from_fn(k, 2, |t| (t[0] + t[1]) % k).unwrap()
    }

    fn mod_mul(k: usize, arity: usize) -> OpTable {
        OpTable::from_fn(k, arity, |t| t.iter().product::<usize>() % k).unwrap()
    }

    fn sub3() -> OpTable {
        OpTable::from_fn(3, 2, |t| (t[0] + 3 - t[1]) % 3).unwrap()
    }

    // Subsets of {a, b} as bitmasks: a = 0b01, b = 0b10.
    fn union(arity: usize) -> OpTable {
        OpTable::from_fn(4, arity, |t| t.iter().fold(0, |acc, &x| acc | x)).unwrap()
    }

    fn intersection(arity: usize) -> OpTable {
        OpTable::from_fn(4, arity, |t| t.iter().fold(3, |acc, &x| acc & x)).unwrap()
    }

    const B: u128 = DEFAULT_BUDGET;

    #[test]
    fn eval_examples() {
        assert_eq!(mod_add(5).eval(&[2, 4]).unwrap(), 1);
        assert_eq!(union(3).eval(&[0, 0, 0]).unwrap(), 0);
        assert_eq!(mod_mul(4, 3).eval(&[2, 2, 1]).unwrap(), 0);
    }

    #[test]
    fn eval_errors() {
        let t = mod_add(5);
        assert_eq!(t.eval(&[1]), Err(Error::ArityMismatch { expected: 2, got: 1 }));
        assert_eq!(t.eval(&[1, 5]), Err(Error::IndexOutOfRange { index: 5, size: 5 }));
    }

    #[test]
    fn table_construction_rejects_bad_input() {
        assert!(matches!(OpTable::new(4, 2, vec![0; 15]), Err(Error::TableLength { expected: 16, got: 15 })));
        assert!(matches!(OpTable::new(2, 2, vec![0, 1, 2, 0]), Err(Error::IndexOutOfRange { index: 2, .. })));
        assert!(matches!(OpTable::new(2, 1, vec![0, 1]), Err(Error::ArityBound { .. })));
        assert!(matches!(OpTable::new(13, 2, vec![0; 169]), Err(Error::ArityBound { .. })));
        let wide = Limits { max_size: 13, ..Limits::default() };
        assert!(OpTable::with_limits(13, 2, vec![0; 169], &wide).is_ok());
    }

    #[test]
    fn tuple_order_is_lexicographic() {
        let mut seen = vec![];
        for_each_tuple::<()>(2, 2, |t| {
            seen.push(t.to_vec());
            ControlFlow::Continue(())
        });
        assert_eq!(seen, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }

    #[test]
    fn associativity_examples() {
        assert!(check_associativity(&mod_add(5), B).unwrap().holds());
        assert!(check_associativity(&union(3), B).unwrap().holds());
        let c = check_associativity(&sub3(), B).unwrap();
        let w = c.witness().expect("subtraction is not associative");
        assert_eq!(w.kind, WitnessKind::AssocFail);
        assert!(w.replay(&sub3(), None, None));
        // (0-1)-2 = 0 but 0-(1-2) = 1
        let named = Witness::new(WitnessKind::AssocFail, vec![vec![0, 1, 2]], vec![0, 1], 0, 1);
        assert!(named.replay(&sub3(), None, None));
    }

    #[test]
    fn commutativity_examples() {
        assert!(check_commutativity(&mod_add(5), B).unwrap().holds());
        assert!(check_commutativity(&intersection(2), B).unwrap().holds());
        let c = check_commutativity(&sub3(), B).unwrap();
        let w = c.witness().unwrap();
        assert_eq!(w.args[0], vec![0, 1]);
        assert!(w.replay(&sub3(), None, None));
    }

    #[test]
    fn distributivity_examples() {
        assert!(check_distributivity(&mod_mul(4, 3), &mod_add(4), B).unwrap().holds());
        assert!(check_distributivity(&intersection(2), &union(3), B).unwrap().holds());
        let max3 = OpTable::from_fn(3, 2, |t| t[0].max(t[1])).unwrap();
        let c = check_distributivity(&max3, &mod_add(3), B).unwrap();
        let w = c.witness().unwrap();
        assert!(w.replay(&max3, Some(&mod_add(3)), None));
        assert!(matches!(
            check_distributivity(&mod_mul(4, 2), &mod_add(5), B),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn budget_refuses_rather_than_samples() {
        let big = OpTable::from_fn(12, 4, |t| t[0]).unwrap();
        assert!(matches!(check_associativity(&big, B), Err(Error::BudgetExceeded { .. })));
        assert!(check_associativity(&mod_add(3), 125).unwrap().holds());
        assert!(matches!(check_associativity(&mod_add(5), 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn identity_examples() {
        assert_eq!(find_identity(&union(3)), Some(0));
        assert_eq!(find_identity(&intersection(2)), Some(3));
        assert_eq!(find_identity(&mod_mul(4, 3)), Some(1));
        assert_eq!(find_identity(&sub3()), None);
        let xor3 = OpTable::from_fn(2, 3, |t| t.iter().sum::<usize>() % 2).unwrap();
        assert_eq!(identity_elements(&xor3), vec![0, 1]);
        assert_eq!(find_identity(&xor3), Some(0));
    }

    fn z4() -> MNSemiring {
        MNSemiring::new(mod_add(4), mod_mul(4, 3)).unwrap()
    }

    fn boolean() -> MNSemiring {
        MNSemiring::new(union(3), intersection(2)).unwrap()
    }

    #[test]
    fn absorbing_examples() {
        assert!(z4().is_absorbing(0).unwrap());
        assert!(boolean().is_absorbing(0).unwrap());
        assert!(!z4().is_absorbing(2).unwrap());
        let w = z4().absorbing_witness(2).unwrap().unwrap();
        assert!(w.replays_on(&z4()));
        assert!(matches!(z4().is_absorbing(4), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn zero_divisor_examples() {
        let c = z4().is_zero_divisor_free().unwrap();
        let w = c.witness().unwrap();
        assert!(w.replays_on(&z4()));
        assert!(w.args[0].iter().all(|&x| x != 0));
        let named = Witness::new(WitnessKind::ZeroDivisor, vec![vec![2, 2, 1]], vec![], 0, 0).on(Side::G);
        assert!(named.replays_on(&z4()));

        let z3 = MNSemiring::new(mod_add(3), mod_mul(3, 2)).unwrap();
        assert!(z3.is_zero_divisor_free().unwrap().holds());

        let c = boolean().is_zero_divisor_free().unwrap();
        assert!(c.witness().unwrap().replays_on(&boolean()));
        let named = Witness::new(WitnessKind::ZeroDivisor, vec![vec![1, 2]], vec![], 0, 0).on(Side::G);
        assert!(named.replays_on(&boolean()));
    }

    #[test]
    fn zero_sum_examples() {
        assert!(boolean().is_zero_sum_free().unwrap().holds());
        let c = z4().is_zero_sum_free().unwrap();
        assert!(c.witness().unwrap().replays_on(&z4()));
        let named = Witness::new(WitnessKind::ZeroSum, vec![vec![1, 3]], vec![], 0, 0).on(Side::F);
        assert!(named.replays_on(&z4()));

        let one = OpTable::new(1, 2, vec![0]).unwrap();
        let trivial = MNSemiring::new(one.clone(), one).unwrap();
        assert!(trivial.is_zero_sum_free().unwrap().holds());
    }

    #[test]
    fn no_identity_is_an_error() {
        let s = MNSemiring::new(sub3(), mod_mul(3, 2)).unwrap();
        assert_eq!(s.is_zero_sum_free(), Err(Error::NoIdentity("f")));
        assert_eq!(s.is_zero_divisor_free(), Err(Error::NoIdentity("f")));
    }

    #[test]
    fn cancellative_examples() {
        assert!(is_cancellative(&mod_add(5), B).unwrap().holds());

        let g = mod_mul(4, 3);
        let c = is_cancellative(&g, B).unwrap();
        assert!(c.witness().unwrap().replay(&g, None, None));
        let named = Witness::new(WitnessKind::CancelFail, vec![vec![2, 1, 1], vec![2, 3, 1]], vec![1], 2, 2);
        assert!(named.replay(&g, None, None));

        let u = union(3);
        let c = is_cancellative(&u, B).unwrap();
        assert!(c.witness().unwrap().replay(&u, None, None));
        let named = Witness::new(WitnessKind::CancelFail, vec![vec![3, 0, 0], vec![3, 1, 0]], vec![1], 3, 3);
        assert!(named.replay(&u, None, None));
    }

    #[test]
    fn left_cancellable_examples() {
        let g = mod_mul(4, 3);
        assert!(is_left_cancellable_tuple(&g, &[1, 1]).unwrap());
        assert!(!is_left_cancellable_tuple(&g, &[2, 1]).unwrap());
        assert!(is_left_cancellable_tuple(&mod_add(5), &[3]).unwrap());
        assert!(matches!(is_left_cancellable_tuple(&g, &[1]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(idempotent_elements(&union(3), None), vec![0, 1, 2, 3]);
        assert_eq!(idempotent_elements(&mod_mul(3, 2), Some(0)), vec![1]);
        assert_eq!(idempotent_elements(&mod_add(5), None), vec![0]);
    }

    #[test]
    fn verify_examples() {
        let r = z4().verify(B).unwrap();
        assert!(r.is_semiring());
        assert!(r.commutative_f.holds() && r.commutative_g.holds());
        assert_eq!(r.f_identity, Some(0));
        assert_eq!(r.g_identity, Some(1));

        let r = boolean().verify(B).unwrap();
        assert!(r.is_semiring());
        assert!(r.absorbing_zero);
        assert!(r.add_idempotent.holds() && r.mult_idempotent.holds());

        let bad = MNSemiring::new(sub3(), mod_mul(3, 2)).unwrap();
        let r = verify_mn_semiring(&bad, B).unwrap();
        assert!(!r.associative_f.holds());
        assert!(!r.is_semiring());
        assert!(r.zero_sum_free.is_none());
        for (_, c) in r.checks() {
            if let Some(w) = c.and_then(Check::witness) {
                assert!(w.replays_on(&bad), "{w}");
            }
        }
    }

    #[test]
    fn single_element_carrier_satisfies_everything() {
        let one = OpTable::new(1, 3, vec![0]).unwrap();
        let s = MNSemiring::new(one.clone(), OpTable::new(1, 2, vec![0]).unwrap()).unwrap();
        let r = s.verify(B).unwrap();
        for (name, c) in r.checks() {
            assert!(c.is_none_or(Check::holds), "{name}");
        }
    }
}
