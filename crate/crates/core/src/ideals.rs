//! Ideals of finite (m,n)-semirings.
//!
//! Positions are 0-based throughout: an `i`-ideal absorbs `g` when its
//! member sits in argument slot `i`.

use std::fmt;
use std::ops::ControlFlow;

use crate::algebra::{for_each_tuple, Check, Element, MNSemiring, Side, Witness, WitnessKind};
use crate::error::{Error, Result};

/// Largest carrier representable by [`Subset`].
pub const MAX_SUBSET_SIZE: usize = 64;

/// A subset of the carrier `{0, .., size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subset {
    size: usize,
    bits: u64,
}

impl Subset {
    pub fn new(size: usize, members: impl IntoIterator<Item = Element>) -> Result<Self> {
        if size > MAX_SUBSET_SIZE {
            return Err(Error::CarrierTooLarge {
                size,
                limit: MAX_SUBSET_SIZE,
            });
        }
        let mut bits = 0u64;
        for x in members {
            if x >= size {
                return Err(Error::IndexOutOfRange { index: x, size });
            }
            bits |= 1 << x;
        }
        Ok(Subset { size, bits })
    }

    pub fn empty(size: usize) -> Self {
        Subset { size, bits: 0 }
    }

    pub fn full(size: usize) -> Self {
        let bits = if size == 64 { u64::MAX } else { (1u64 << size) - 1 };
        Subset { size, bits }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn contains(&self, x: Element) -> bool {
        x < self.size && self.bits >> x & 1 == 1
    }

    pub fn insert(&mut self, x: Element) -> bool {
        let fresh = !self.contains(x);
        self.bits |= 1 << x;
        fresh
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_subset(&self, other: &Subset) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset {
            size: self.size,
            bits: self.bits & other.bits,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        (0..self.size).filter(|&x| self.contains(x))
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", crate::algebra::join(&self.to_vec()))
    }
}

fn check_subset(s: &MNSemiring, i: &Subset) -> Result<()> {
    if i.size() != s.size() {
        return Err(Error::CarrierMismatch {
            left: s.size(),
            right: i.size(),
        });
    }
    if i.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(())
}

fn ideal_witness(side: Side, args: Vec<Element>, position: Option<usize>, value: Element) -> Witness {
    Witness {
        kind: WitnessKind::Ideal,
        side: Some(side),
        args: vec![args],
        positions: position.into_iter().collect(),
        lhs: value,
        rhs: value,
    }
}

fn f_closure_witness(s: &MNSemiring, set: &Subset) -> Option<Witness> {
    let members = set.to_vec();
    let mut args = vec![0; s.m()];
    for_each_tuple(members.len(), s.m(), |idx| {
        for (a, &j) in args.iter_mut().zip(idx) {
            *a = members[j];
        }
        let v = s.f().apply(&args);
        if set.contains(v) {
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(ideal_witness(Side::F, args.clone(), None, v))
        }
    })
}

fn g_absorption_witness(s: &MNSemiring, set: &Subset, position: usize) -> Option<Witness> {
    let n = s.n();
    let mut t = vec![0; n];
    for_each_tuple(s.size(), n - 1, |rest| {
        t[..position].copy_from_slice(&rest[..position]);
        t[position + 1..].copy_from_slice(&rest[position..]);
        for a in set.iter() {
            t[position] = a;
            let v = s.g().apply(&t);
            if !set.contains(v) {
                return ControlFlow::Break(ideal_witness(Side::G, t.clone(), Some(position), v));
            }
        }
        ControlFlow::Continue(())
    })
}

/// `I` is closed under `f` and absorbs `g` in argument slot `position`.
pub fn is_i_ideal(s: &MNSemiring, set: &Subset, position: usize) -> Result<Check> {
    check_subset(s, set)?;
    if position >= s.n() {
        return Err(Error::PositionOutOfRange {
            position,
            arity: s.n(),
        });
    }
    let w = f_closure_witness(s, set).or_else(|| g_absorption_witness(s, set, position));
    Ok(w.map_or(Check::Holds, Check::Fails))
}

/// An `i`-ideal for every slot.
pub fn is_ideal(s: &MNSemiring, set: &Subset) -> Result<Check> {
    check_subset(s, set)?;
    let w = f_closure_witness(s, set).or_else(|| (0..s.n()).find_map(|p| g_absorption_witness(s, set, p)));
    Ok(w.map_or(Check::Holds, Check::Fails))
}

/// Replays an `Ideal` witness: the tuple's image escapes `set`.
pub fn ideal_witness_replays(s: &MNSemiring, set: &Subset, w: &Witness) -> bool {
    let (Some(side), Some(t)) = (w.side, w.args.first()) else {
        return false;
    };
    let op = s.table(side);
    if t.len() != op.arity() || t.iter().any(|&x| x >= s.size()) {
        return false;
    }
    let inside = match (side, w.positions.as_slice()) {
        (Side::F, []) => t.iter().all(|&x| set.contains(x)),
        (Side::G, [p]) => *p < t.len() && set.contains(t[*p]),
        _ => false,
    };
    let v = op.apply(t);
    inside && v == w.lhs && !set.contains(v)
}

fn close_under_f(s: &MNSemiring, set: &mut Subset) -> bool {
    let mut grew = false;
    while let Some(w) = f_closure_witness(s, set) {
        set.insert(w.lhs);
        grew = true;
    }
    grew
}

/// The least ideal containing `seed`.
pub fn ideal_generated_by(s: &MNSemiring, seed: &Subset) -> Result<Subset> {
    check_subset(s, seed)?;
    let mut set = *seed;
    loop {
        let mut grew = close_under_f(s, &mut set);
        for p in 0..s.n() {
            while let Some(w) = g_absorption_witness(s, &set, p) {
                set.insert(w.lhs);
                grew = true;
            }
        }
        if !grew {
            return Ok(set);
        }
    }
}

fn check_family(s: &MNSemiring, sets: &[Subset], expected: usize) -> Result<()> {
    if sets.len() != expected {
        return Err(Error::ArityMismatch {
            expected,
            got: sets.len(),
        });
    }
    sets.iter().try_for_each(|i| check_subset(s, i))
}

fn image(s: &MNSemiring, side: Side, sets: &[Subset]) -> Subset {
    let op = s.table(side);
    let members: Vec<Vec<Element>> = sets.iter().map(Subset::to_vec).collect();
    let mut out = Subset::empty(s.size());
    let mut args = vec![0; op.arity()];
    let mut idx = vec![0usize; op.arity()];
    loop {
        for (j, a) in args.iter_mut().enumerate() {
            *a = members[j][idx[j]];
        }
        out.insert(op.apply(&args));
        let mut p = idx.len();
        loop {
            if p == 0 {
                return out;
            }
            p -= 1;
            idx[p] += 1;
            if idx[p] < members[p].len() {
                break;
            }
            idx[p] = 0;
        }
    }
}

/// `{ f(a_1, .., a_m) : a_j in I_j }`.
pub fn f_image_of_ideals(s: &MNSemiring, ideals: &[Subset]) -> Result<Subset> {
    check_family(s, ideals, s.m())?;
    Ok(image(s, Side::F, ideals))
}

/// Elementary products `g(a_1, .., a_n)` with `a_j in A_j`, closed under
/// `f`. By associativity of `f` this is the set of all `f`-combinations
/// of `k(m-1)+1` elementary products.
pub fn product_of_subsets(s: &MNSemiring, factors: &[Subset]) -> Result<Subset> {
    check_family(s, factors, s.n())?;
    let mut set = image(s, Side::G, factors);
    close_under_f(s, &mut set);
    Ok(set)
}

/// Intersection of nonempty ideals; an empty result is an error.
pub fn intersect_ideals(ideals: &[Subset]) -> Result<Subset> {
    let (first, rest) = ideals.split_first().ok_or(Error::EmptySubset)?;
    let mut acc = *first;
    for i in rest {
        if i.size() != acc.size() {
            return Err(Error::CarrierMismatch {
                left: acc.size(),
                right: i.size(),
            });
        }
        acc = acc.intersection(i);
    }
    if acc.is_empty() {
        Err(Error::EmptyIntersection)
    } else {
        Ok(acc)
    }
}

/// `{ g(x, tail) : x in I }`.
pub fn translate(s: &MNSemiring, set: &Subset, tail: &[Element]) -> Result<Subset> {
    check_subset(s, set)?;
    if tail.len() + 1 != s.n() {
        return Err(Error::ArityMismatch {
            expected: s.n() - 1,
            got: tail.len(),
        });
    }
    let mut out = Subset::empty(s.size());
    let mut t = vec![0; s.n()];
    t[1..].copy_from_slice(tail);
    for x in set.iter() {
        t[0] = x;
        out.insert(s.g().apply(&t));
    }
    Ok(out)
}

/// Tails `a_2..a_n` drawn from `I` for which `{ g(x, tail) : x in I }`
/// differs from `I`. An empty result means the translation property holds.
pub fn translation_counterexamples(s: &MNSemiring, set: &Subset) -> Result<Vec<(Vec<Element>, Subset)>> {
    check_subset(s, set)?;
    let members = set.to_vec();
    let mut out = Vec::new();
    let mut tail = vec![0; s.n() - 1];
    for_each_tuple::<()>(members.len(), s.n() - 1, |idx| {
        for (a, &j) in tail.iter_mut().zip(idx) {
            *a = members[j];
        }
        if let Ok(img) = translate(s, set, &tail) {
            if img != *set {
                out.push((tail.clone(), img));
            }
        }
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Every ideal of `s` (exhaustive over subsets; carriers up to 16).
pub fn all_ideals(s: &MNSemiring) -> Result<Vec<Subset>> {
    const LIMIT: usize = 16;
    if s.size() > LIMIT {
        return Err(Error::CarrierTooLarge {
            size: s.size(),
            limit: LIMIT,
        });
    }
    let mut out = Vec::new();
    for bits in 1u64..1 << s.size() {
        let set = Subset { size: s.size(), bits };
        if is_ideal(s, &set)?.holds() {
            out.push(set);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{boolean_mn_semiring, modular_mn_semiring};

    fn z6() -> MNSemiring {
        modular_mn_semiring(6, 2, 2).unwrap()
    }

    fn set(k: usize, xs: &[Element]) -> Subset {
        Subset::new(k, xs.iter().copied()).unwrap()
    }

    #[test]
    fn i_ideal_examples() {
        let s = z6();
        assert!(is_i_ideal(&s, &set(6, &[0, 2, 4]), 0).unwrap().holds());
        let bad = set(6, &[0, 1]);
        let c = is_i_ideal(&s, &bad, 0).unwrap();
        let w = c.witness().unwrap();
        assert!(ideal_witness_replays(&s, &bad, w));
        assert_eq!((w.side, w.args[0].as_slice(), w.lhs), (Some(Side::F), &[1, 1][..], 2));
        assert!(is_i_ideal(&s, &set(6, &[0]), 1).unwrap().holds());
        assert!(matches!(is_i_ideal(&s, &set(6, &[0]), 2), Err(Error::PositionOutOfRange { .. })));
        assert_eq!(is_i_ideal(&s, &Subset::empty(6), 0), Err(Error::EmptySubset));
    }

    #[test]
    fn ideal_examples() {
        let s = z6();
        assert!(is_ideal(&s, &set(6, &[0, 3])).unwrap().holds());
        assert!(is_ideal(&s, &set(6, &[0, 2, 4])).unwrap().holds());
        let b = boolean_mn_semiring(2, 3, 2).unwrap();
        assert!(is_ideal(&b, &set(4, &[0, 1])).unwrap().holds());
        let c = is_ideal(&b, &set(4, &[1, 2])).unwrap();
        assert!(ideal_witness_replays(&b, &set(4, &[1, 2]), c.witness().unwrap()));
    }

    #[test]
    fn generated_ideal_examples() {
        let s = z6();
        assert_eq!(ideal_generated_by(&s, &set(6, &[2])).unwrap(), set(6, &[0, 2, 4]));
        assert_eq!(ideal_generated_by(&s, &set(6, &[1])).unwrap(), Subset::full(6));
        assert_eq!(ideal_generated_by(&s, &set(6, &[0, 3])).unwrap(), set(6, &[0, 3]));
    }

    #[test]
    fn generated_ideal_is_least() {
        for s in [z6(), boolean_mn_semiring(2, 3, 2).unwrap(), modular_mn_semiring(4, 3, 2).unwrap()] {
            let ideals = all_ideals(&s).unwrap();
            for bits in 1u64..1 << s.size() {
                let seed = Subset { size: s.size(), bits };
                let gen = ideal_generated_by(&s, &seed).unwrap();
                assert!(seed.is_subset(&gen));
                assert!(is_ideal(&s, &gen).unwrap().holds());
                for i in ideals.iter().filter(|i| seed.is_subset(i)) {
                    assert!(gen.is_subset(i));
                }
                assert_eq!(ideal_generated_by(&s, &gen).unwrap(), gen);
            }
        }
    }

    #[test]
    fn f_image_examples() {
        let s = z6();
        assert_eq!(f_image_of_ideals(&s, &[set(6, &[0, 3]), set(6, &[0, 2, 4])]).unwrap(), Subset::full(6));
        assert_eq!(f_image_of_ideals(&s, &[set(6, &[0, 3]), set(6, &[0, 3])]).unwrap(), set(6, &[0, 3]));
        assert_eq!(f_image_of_ideals(&s, &[set(6, &[0]), set(6, &[0])]).unwrap(), set(6, &[0]));
        assert!(matches!(f_image_of_ideals(&s, &[set(6, &[0])]), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn product_examples() {
        let s = z6();
        assert_eq!(product_of_subsets(&s, &[set(6, &[2]), set(6, &[3])]).unwrap(), set(6, &[0]));
        assert_eq!(product_of_subsets(&s, &[set(6, &[1]), set(6, &[2])]).unwrap(), set(6, &[0, 2, 4]));
        // closure of {1} under + is everything
        assert_eq!(product_of_subsets(&s, &[set(6, &[1]), set(6, &[1])]).unwrap(), Subset::full(6));
    }

    #[test]
    fn intersection_examples() {
        let (a, b) = (set(6, &[0, 3]), set(6, &[0, 2, 4]));
        assert_eq!(intersect_ideals(&[a, b]).unwrap(), set(6, &[0]));
        assert_eq!(intersect_ideals(&[a, a]).unwrap(), a);
        assert_eq!(intersect_ideals(&[set(4, &[0, 1]), set(4, &[0, 2])]).unwrap(), set(4, &[0]));
        assert_eq!(intersect_ideals(&[set(4, &[1]), set(4, &[2])]), Err(Error::EmptyIntersection));
    }

    #[test]
    fn ideal_laws_on_small_corpus() {
        for s in [z6(), boolean_mn_semiring(2, 3, 2).unwrap()] {
            let ideals = all_ideals(&s).unwrap();
            for a in &ideals {
                for b in &ideals {
                    let fam: Vec<Subset> = std::iter::repeat([*a, *b]).flatten().take(s.m()).collect();
                    assert!(is_ideal(&s, &f_image_of_ideals(&s, &fam).unwrap()).unwrap().holds());
                    let pair: Vec<Subset> = std::iter::repeat([*a, *b]).flatten().take(s.n()).collect();
                    if let Ok(meet) = intersect_ideals(&pair) {
                        assert!(is_ideal(&s, &meet).unwrap().holds());
                        let prod = product_of_subsets(&s, &pair).unwrap();
                        assert!(ideal_generated_by(&s, &prod).unwrap().is_subset(&meet));
                    }
                }
            }
        }
    }

    #[test]
    fn product_with_an_ideal_factor_is_an_ideal_when_commutative() {
        for s in [z6(), modular_mn_semiring(4, 2, 3).unwrap(), boolean_mn_semiring(2, 2, 2).unwrap()] {
            assert!(crate::algebra::check_commutativity(s.g(), u128::MAX).unwrap().holds());
            let k = s.size();
            for ideal in all_ideals(&s).unwrap() {
                for bits in 1u64..1 << k {
                    let other = Subset { size: k, bits };
                    let mut factors = vec![other; s.n()];
                    factors[bits as usize % s.n()] = ideal;
                    let p = product_of_subsets(&s, &factors).unwrap();
                    assert!(is_ideal(&s, &p).unwrap().holds(), "{ideal} x {other}");
                }
            }
        }
    }

    #[test]
    fn translation_property_has_zero_tail_counterexamples() {
        let s = z6();
        let i = set(6, &[0, 2, 4]);
        assert_eq!(translate(&s, &i, &[2]).unwrap(), i);
        let bad = translation_counterexamples(&s, &i).unwrap();
        assert_eq!(bad, vec![(vec![0], set(6, &[0]))]);
    }
}
