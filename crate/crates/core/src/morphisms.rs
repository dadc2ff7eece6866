//! Congruences, quotients, homomorphisms and kernels.

use std::fmt;
use std::ops::ControlFlow;

use crate::algebra::{
    for_each_tuple, idempotent_elements, Check, Element, MNSemiring, OpTable, Side, Witness, WitnessKind,
};
use crate::error::{Error, Result};

/// Largest carrier for which all partitions are enumerated.
pub const MAX_ENUMERATION_SIZE: usize = 10;
/// Largest carrier for isomorphism search.
pub const MAX_ISOMORPHISM_SIZE: usize = 8;

/// A partition of the carrier as a restricted-growth string: block ids
/// appear in first-occurrence order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_of: Vec<usize>,
}

impl Congruence {
    /// Canonicalizes arbitrary block labels.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Self {
        let mut firsts: Vec<&T> = Vec::new();
        let block_of = labels
            .iter()
            .map(|l| match firsts.iter().position(|f| *f == l) {
                Some(b) => b,
                None => {
                    firsts.push(l);
                    firsts.len() - 1
                }
            })
            .collect();
        Congruence { block_of }
    }

    /// Builds a partition from explicit blocks covering `0..size` exactly once.
    pub fn from_blocks(size: usize, blocks: &[Vec<Element>]) -> Result<Self> {
        let mut labels = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::BadPartition("empty block".into()));
            }
            for &x in block {
                if x >= size {
                    return Err(Error::IndexOutOfRange { index: x, size });
                }
                if labels[x] != usize::MAX {
                    return Err(Error::BadPartition(format!("element {x} appears twice")));
                }
                labels[x] = b;
            }
        }
        if let Some(x) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::BadPartition(format!("element {x} is in no block")));
        }
        Ok(Self::from_labels(&labels))
    }

    pub fn singletons(size: usize) -> Self {
        Congruence {
            block_of: (0..size).collect(),
        }
    }

    pub fn single_block(size: usize) -> Self {
        Congruence {
            block_of: vec![0; size],
        }
    }

    pub fn size(&self) -> usize {
        self.block_of.len()
    }

    pub fn block_of(&self, x: Element) -> usize {
        self.block_of[x]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn num_blocks(&self) -> usize {
        self.block_of.iter().max().map_or(0, |&b| b + 1)
    }

    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut blocks = vec![Vec::new(); self.num_blocks()];
        for (x, &b) in self.block_of.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// Least element of each block, indexed by block id.
    pub fn representatives(&self) -> Vec<Element> {
        self.blocks().iter().map(|b| b[0]).collect()
    }

    /// Every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Congruence) -> bool {
        self.size() == coarser.size()
            && (0..self.size()).all(|x| {
                (0..self.size()).all(|y| self.block_of[x] != self.block_of[y] || coarser.block_of[x] == coarser.block_of[y])
            })
    }

    /// The partition `sigma / self` on the blocks of `self`.
    pub fn induced_on_quotient(&self, sigma: &Congruence) -> Result<Congruence> {
        if !self.refines(sigma) {
            return Err(Error::BadPartition("first partition does not refine the second".into()));
        }
        let labels: Vec<usize> = self.representatives().iter().map(|&r| sigma.block_of(r)).collect();
        Ok(Congruence::from_labels(&labels))
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks().iter().map(|b| crate::algebra::join(b)).collect();
        f.write_str(&blocks.join("|"))
    }
}

/// Checks single-position substitution compatibility; chaining such
/// substitutions yields the all-positions condition.
pub fn is_congruence(s: &MNSemiring, part: &Congruence) -> Result<Check> {
    if part.size() != s.size() {
        return Err(Error::CarrierMismatch {
            left: s.size(),
            right: part.size(),
        });
    }
    for side in [Side::F, Side::G] {
        if let Some(w) = substitution_witness(s.table(side), part, |_| true) {
            return Ok(Check::Fails(witness_on(w, side)));
        }
    }
    Ok(Check::Holds)
}

fn witness_on(mut w: Witness, side: Side) -> Witness {
    w.side = Some(side);
    w
}

// Searches substitutions x -> y (x < y, same block) in one position whose
// results are both admitted by `known` but fall in different blocks.
fn substitution_witness(op: &OpTable, part: &Congruence, known: impl Fn(Element) -> bool) -> Option<Witness> {
    let (k, ar) = (op.size(), op.arity());
    let mut t = vec![0; ar];
    for p in 0..ar {
        let w = for_each_tuple(k, ar - 1, |rest| {
            t[..p].copy_from_slice(&rest[..p]);
            t[p + 1..].copy_from_slice(&rest[p..]);
            for x in (0..k).filter(|&x| known(x)) {
                t[p] = x;
                let vx = op.apply(&t);
                if !known(vx) {
                    continue;
                }
                for y in (x + 1..k).filter(|&y| known(y) && part.block_of(y) == part.block_of(x)) {
                    t[p] = y;
                    let vy = op.apply(&t);
                    if known(vy) && part.block_of(vx) != part.block_of(vy) {
                        let mut tx = t.clone();
                        tx[p] = x;
                        return ControlFlow::Break(Witness {
                            kind: WitnessKind::Congruence,
                            side: None,
                            args: vec![tx, t.clone()],
                            positions: vec![p],
                            lhs: vx,
                            rhs: vy,
                        });
                    }
                }
            }
            ControlFlow::Continue(())
        });
        if w.is_some() {
            return w;
        }
    }
    None
}

/// Replays a `Congruence` witness: two tuples, related argumentwise, whose
/// images land in different blocks.
pub fn congruence_witness_replays(s: &MNSemiring, part: &Congruence, w: &Witness) -> bool {
    let (Some(side), [a, b]) = (w.side, w.args.as_slice()) else {
        return false;
    };
    let op = s.table(side);
    let ok_shape = a.len() == op.arity()
        && b.len() == op.arity()
        && a.iter().chain(b).all(|&x| x < s.size())
        && a.iter().zip(b).all(|(&x, &y)| part.block_of(x) == part.block_of(y));
    ok_shape
        && op.apply(a) == w.lhs
        && op.apply(b) == w.rhs
        && part.block_of(w.lhs) != part.block_of(w.rhs)
}

/// All congruences in restricted-growth order. Partial assignments are
/// pruned as soon as a substitution among assigned elements breaks
/// compatibility.
pub fn enumerate_congruences(s: &MNSemiring) -> Result<Vec<Congruence>> {
    let k = s.size();
    if k > MAX_ENUMERATION_SIZE {
        return Err(Error::CarrierTooLarge {
            size: k,
            limit: MAX_ENUMERATION_SIZE,
        });
    }
    let mut out = Vec::new();
    let mut labels = vec![0; k];
    extend_partition(s, &mut labels, 1, 0, &mut out);
    Ok(out)
}

fn extend_partition(s: &MNSemiring, labels: &mut Vec<usize>, next: usize, max_block: usize, out: &mut Vec<Congruence>) {
    let k = labels.len();
    let part = Congruence {
        block_of: labels.clone(),
    };
    let assigned = |x: Element| x < next;
    if [Side::F, Side::G]
        .iter()
        .any(|&side| substitution_witness(s.table(side), &part, assigned).is_some())
    {
        return;
    }
    if next == k {
        out.push(part);
        return;
    }
    for b in 0..=max_block + 1 {
        labels[next] = b;
        extend_partition(s, labels, next + 1, max_block.max(b), out);
    }
    labels[next] = 0;
}

/// The algebra on the blocks of `sigma`, evaluated on representatives.
pub fn quotient(s: &MNSemiring, sigma: &Congruence) -> Result<MNSemiring> {
    if !is_congruence(s, sigma)?.holds() {
        return Err(Error::NotACongruence);
    }
    let reps = sigma.representatives();
    let lift = |op: &OpTable| {
        let mut args = vec![0; op.arity()];
        OpTable::from_fn(reps.len(), op.arity(), |blocks| {
            for (a, &b) in args.iter_mut().zip(blocks) {
                *a = reps[b];
            }
            sigma.block_of(op.apply(&args))
        })
    };
    MNSemiring::new(lift(s.f())?, lift(s.g())?)
}

/// A map between finite carriers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    codomain_size: usize,
    map: Vec<Element>,
}

impl Morphism {
    pub fn new(codomain_size: usize, map: Vec<Element>) -> Result<Self> {
        if let Some(&bad) = map.iter().find(|&&y| y >= codomain_size) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                size: codomain_size,
            });
        }
        Ok(Morphism { codomain_size, map })
    }

    pub fn identity(size: usize) -> Self {
        Morphism {
            codomain_size: size,
            map: (0..size).collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.map.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn map(&self) -> &[Element] {
        &self.map
    }

    pub fn apply(&self, x: Element) -> Element {
        self.map[x]
    }

    pub fn is_injective(&self) -> bool {
        let mut hit = vec![false; self.codomain_size];
        self.map.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.domain_size() == self.codomain_size && self.is_injective()
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::algebra::join(&self.map))
    }
}

fn check_hom_shapes(s: &MNSemiring, t: &MNSemiring, phi: &Morphism) -> Result<()> {
    if s.m() != t.m() || s.n() != t.n() {
        return Err(Error::SignatureMismatch {
            left: (s.m(), s.n()),
            right: (t.m(), t.n()),
        });
    }
    if phi.domain_size() != s.size() || phi.codomain_size() != t.size() {
        return Err(Error::SizeMismatch(format!(
            "map {}->{} does not fit algebras {}->{}",
            phi.domain_size(),
            phi.codomain_size(),
            s.size(),
            t.size()
        )));
    }
    Ok(())
}

fn hom_witness(s: &MNSemiring, t: &MNSemiring, phi: &Morphism) -> Option<Witness> {
    for side in [Side::F, Side::G] {
        let (src, dst) = (s.table(side), t.table(side));
        let mut img = vec![0; src.arity()];
        let w = for_each_tuple(s.size(), src.arity(), |x| {
            for (i, &xi) in img.iter_mut().zip(x) {
                *i = phi.apply(xi);
            }
            let (l, r) = (phi.apply(src.apply(x)), dst.apply(&img));
            if l != r {
                ControlFlow::Break(Witness {
                    kind: WitnessKind::Homomorphism,
                    side: Some(side),
                    args: vec![x.to_vec()],
                    positions: vec![],
                    lhs: l,
                    rhs: r,
                })
            } else {
                ControlFlow::Continue(())
            }
        });
        if w.is_some() {
            return w;
        }
    }
    None
}

/// `phi(f(x..)) = f'(phi x..)` and likewise for `g`, on every tuple.
pub fn is_homomorphism(s: &MNSemiring, t: &MNSemiring, phi: &Morphism) -> Result<Check> {
    check_hom_shapes(s, t, phi)?;
    Ok(hom_witness(s, t, phi).map_or(Check::Holds, Check::Fails))
}

/// Replays a `Homomorphism` witness.
pub fn homomorphism_witness_replays(s: &MNSemiring, t: &MNSemiring, phi: &Morphism, w: &Witness) -> bool {
    let (Some(side), Some(x)) = (w.side, w.args.first()) else {
        return false;
    };
    let (src, dst) = (s.table(side), t.table(side));
    if x.len() != src.arity() || x.iter().any(|&v| v >= s.size()) {
        return false;
    }
    let img: Vec<Element> = x.iter().map(|&v| phi.apply(v)).collect();
    let (l, r) = (phi.apply(src.apply(x)), dst.apply(&img));
    l == w.lhs && r == w.rhs && l != r
}

/// `psi . phi`: first `phi`, then `psi`.
pub fn compose_maps(phi: &Morphism, psi: &Morphism) -> Result<Morphism> {
    if phi.codomain_size() != psi.domain_size() {
        return Err(Error::SizeMismatch(format!(
            "codomain {} does not match domain {}",
            phi.codomain_size(),
            psi.domain_size()
        )));
    }
    Ok(Morphism {
        codomain_size: psi.codomain_size(),
        map: phi.map.iter().map(|&y| psi.apply(y)).collect(),
    })
}

/// Pairs with equal images.
pub fn kernel(phi: &Morphism) -> Congruence {
    Congruence::from_labels(&phi.map)
}

/// The quotient of `s` by `kernel(phi)` and the injective `psi` with
/// `psi . projection = phi`.
pub fn induced_injection(s: &MNSemiring, t: &MNSemiring, phi: &Morphism) -> Result<(MNSemiring, Morphism)> {
    if !is_homomorphism(s, t, phi)?.holds() {
        return Err(Error::NotAHomomorphism);
    }
    let ker = kernel(phi);
    let q = quotient(s, &ker)?;
    let psi = Morphism {
        codomain_size: t.size(),
        map: ker.representatives().iter().map(|&r| phi.apply(r)).collect(),
    };
    Ok((q, psi))
}

/// Projection onto the blocks of `sigma`.
pub fn projection(sigma: &Congruence) -> Morphism {
    Morphism {
        codomain_size: sigma.num_blocks(),
        map: sigma.labels().to_vec(),
    }
}

// Invariants every isomorphism must preserve elementwise.
fn profile(s: &MNSemiring) -> Vec<(bool, bool, bool, bool, bool)> {
    let fi = idempotent_elements(s.f(), None);
    let gi = idempotent_elements(s.g(), None);
    (0..s.size())
        .map(|x| {
            (
                Some(x) == s.f_identity(),
                Some(x) == s.g_identity(),
                fi.contains(&x),
                gi.contains(&x),
                s.is_absorbing(x).unwrap_or(false),
            )
        })
        .collect()
}

/// A bijective homomorphism `s -> t`, if one exists.
pub fn is_isomorphic(s: &MNSemiring, t: &MNSemiring) -> Result<Option<Morphism>> {
    if s.m() != t.m() || s.n() != t.n() {
        return Err(Error::SignatureMismatch {
            left: (s.m(), s.n()),
            right: (t.m(), t.n()),
        });
    }
    if s.size() != t.size() {
        return Ok(None);
    }
    let k = s.size();
    if k > MAX_ISOMORPHISM_SIZE {
        return Err(Error::CarrierTooLarge {
            size: k,
            limit: MAX_ISOMORPHISM_SIZE,
        });
    }
    let (ps, pt) = (profile(s), profile(t));
    let mut sorted_s = ps.clone();
    let mut sorted_t = pt.clone();
    sorted_s.sort();
    sorted_t.sort();
    if sorted_s != sorted_t {
        return Ok(None);
    }
    let mut map = vec![usize::MAX; k];
    let mut used = vec![false; k];
    Ok(search_bijection(s, t, &ps, &pt, 0, &mut map, &mut used))
}

fn search_bijection(
    s: &MNSemiring,
    t: &MNSemiring,
    ps: &[(bool, bool, bool, bool, bool)],
    pt: &[(bool, bool, bool, bool, bool)],
    x: usize,
    map: &mut Vec<Element>,
    used: &mut Vec<bool>,
) -> Option<Morphism> {
    let k = s.size();
    if x == k {
        let phi = Morphism {
            codomain_size: k,
            map: map.clone(),
        };
        return hom_witness(s, t, &phi).is_none().then_some(phi);
    }
    for y in 0..k {
        if used[y] || ps[x] != pt[y] {
            continue;
        }
        map[x] = y;
        used[y] = true;
        if partial_hom_ok(s, t, map, x) {
            if let Some(phi) = search_bijection(s, t, ps, pt, x + 1, map, used) {
                return Some(phi);
            }
        }
        used[y] = false;
        map[x] = usize::MAX;
    }
    None
}

// Checks tuples over assigned elements whose results are also assigned.
fn partial_hom_ok(s: &MNSemiring, t: &MNSemiring, map: &[Element], last: usize) -> bool {
    let assigned = last + 1;
    [Side::F, Side::G].iter().all(|&side| {
        let (src, dst) = (s.table(side), t.table(side));
        let mut img = vec![0; src.arity()];
        for_each_tuple(assigned, src.arity(), |x| {
            if !x.contains(&last) {
                return ControlFlow::Continue(());
            }
            let v = src.apply(x);
            if v >= assigned {
                return ControlFlow::Continue(());
            }
            for (i, &xi) in img.iter_mut().zip(x) {
                *i = map[xi];
            }
            if map[v] != dst.apply(&img) {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })
        .is_none()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::DEFAULT_BUDGET;
    use crate::constructions::{boolean_mn_semiring, identity_binary_ops, modular_mn_semiring};

    fn z(k: usize) -> MNSemiring {
        modular_mn_semiring(k, 2, 2).unwrap()
    }

    fn part(s: &str) -> Congruence {
        let blocks: Vec<Vec<usize>> = s
            .split('|')
            .map(|b| b.split(',').map(|x| x.parse().unwrap()).collect())
            .collect();
        let size = blocks.iter().map(Vec::len).sum();
        Congruence::from_blocks(size, &blocks).unwrap()
    }

    #[test]
    fn partitions_are_canonical() {
        let p = Congruence::from_labels(&[7, 3, 7, 9]);
        assert_eq!(p.labels(), &[0, 1, 0, 2]);
        assert_eq!(p.to_string(), "0,2|1|3");
        assert_eq!(part("1,4|0,3|2,5"), part("0,3|1,4|2,5"));
        assert!(Congruence::from_blocks(3, &[vec![0, 1]]).is_err());
        assert!(Congruence::from_blocks(2, &[vec![0, 1], vec![1]]).is_err());
    }

    #[test]
    fn congruence_examples() {
        let z6 = z(6);
        assert!(is_congruence(&z6, &part("0,3|1,4|2,5")).unwrap().holds());
        let bad = part("0,1|2,3|4,5");
        let c = is_congruence(&z6, &bad).unwrap();
        let w = c.witness().unwrap();
        assert!(congruence_witness_replays(&z6, &bad, w));
        // 0*3 = 0 but 1*3 = 3 lands in another block
        let named = Witness {
            kind: WitnessKind::Congruence,
            side: Some(Side::G),
            args: vec![vec![0, 3], vec![1, 3]],
            positions: vec![0],
            lhs: 0,
            rhs: 3,
        };
        assert!(congruence_witness_replays(&z6, &bad, &named));
        assert!(is_congruence(&z6, &Congruence::singletons(6)).unwrap().holds());
        assert!(matches!(
            is_congruence(&z6, &Congruence::singletons(5)),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_examples() {
        let found = enumerate_congruences(&z(6)).unwrap();
        assert_eq!(
            found,
            vec![
                part("0,1,2,3,4,5"),
                part("0,2,4|1,3,5"),
                part("0,3|1,4|2,5"),
                Congruence::singletons(6),
            ]
        );
        assert_eq!(
            enumerate_congruences(&z(5)).unwrap(),
            vec![Congruence::single_block(5), Congruence::singletons(5)]
        );
        assert_eq!(enumerate_congruences(&z(1)).unwrap().len(), 1);
        let big = MNSemiring::new(
            OpTable::from_fn(11, 2, |t| t[0]).unwrap(),
            OpTable::from_fn(11, 2, |t| t[0]).unwrap(),
        )
        .unwrap();
        assert!(matches!(enumerate_congruences(&big), Err(Error::CarrierTooLarge { .. })));
    }

    // Brute force over every labelling, canonicalized; independent of the
    // pruned search.
    fn brute_force_congruences(s: &MNSemiring) -> Vec<Congruence> {
        let k = s.size();
        let mut out = std::collections::BTreeSet::new();
        for_each_tuple::<()>(k, k, |labels| {
            let p = Congruence::from_labels(labels);
            if is_congruence(s, &p).unwrap().holds() {
                out.insert(p);
            }
            ControlFlow::Continue(())
        });
        out.into_iter().collect()
    }

    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for s in [z(4), z(6), modular_mn_semiring(4, 3, 2).unwrap(), boolean_mn_semiring(2, 2, 3).unwrap()] {
            let mut found = enumerate_congruences(&s).unwrap();
            found.sort();
            assert_eq!(found, brute_force_congruences(&s));
        }
    }

    #[test]
    fn single_substitution_matches_full_substitution() {
        fn full(s: &MNSemiring, p: &Congruence) -> bool {
            [Side::F, Side::G].iter().all(|&side| {
                let op = s.table(side);
                let ar = op.arity();
                for_each_tuple(s.size(), 2 * ar, |xy| {
                    let (x, y) = xy.split_at(ar);
                    let related = x.iter().zip(y).all(|(&a, &b)| p.block_of(a) == p.block_of(b));
                    if related && p.block_of(op.apply(x)) != p.block_of(op.apply(y)) {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                })
                .is_none()
            })
        }
        for s in [z(4), modular_mn_semiring(3, 3, 2).unwrap(), boolean_mn_semiring(2, 2, 2).unwrap()] {
            for_each_tuple::<()>(s.size(), s.size(), |labels| {
                let p = Congruence::from_labels(labels);
                assert_eq!(is_congruence(&s, &p).unwrap().holds(), full(&s, &p), "{p}");
                ControlFlow::Continue(())
            });
        }
    }

    #[test]
    fn quotient_examples() {
        let z6 = z(6);
        let q = quotient(&z6, &part("0,3|1,4|2,5")).unwrap();
        assert_eq!(q.size(), 3);
        assert!(is_isomorphic(&q, &z(3)).unwrap().is_some());
        assert_eq!(quotient(&z6, &Congruence::singletons(6)).unwrap(), z6);
        assert_eq!(quotient(&z6, &Congruence::single_block(6)).unwrap().size(), 1);
        assert_eq!(quotient(&z6, &part("0,1|2,3|4,5")), Err(Error::NotACongruence));
    }

    #[test]
    fn quotients_of_enumerated_congruences_verify() {
        for s in [z(4), z(6), modular_mn_semiring(6, 3, 2).unwrap(), boolean_mn_semiring(2, 3, 2).unwrap()] {
            for sigma in enumerate_congruences(&s).unwrap() {
                let q = quotient(&s, &sigma).unwrap();
                assert!(q.verify(DEFAULT_BUDGET).unwrap().is_semiring(), "{sigma}");
                assert!(is_homomorphism(&s, &q, &projection(&sigma)).unwrap().holds());
            }
        }
    }

    #[test]
    fn homomorphism_examples() {
        let (z6, z3) = (z(6), z(3));
        let mod3 = Morphism::new(3, (0..6).map(|x| x % 3).collect()).unwrap();
        assert!(is_homomorphism(&z6, &z3, &mod3).unwrap().holds());
        let shifted = Morphism::new(3, (0..6).map(|x| (x + 1) % 3).collect()).unwrap();
        let c = is_homomorphism(&z6, &z3, &shifted).unwrap();
        assert!(homomorphism_witness_replays(&z6, &z3, &shifted, c.witness().unwrap()));
        assert!(is_homomorphism(&z6, &z6, &Morphism::identity(6)).unwrap().holds());
        assert!(Morphism::new(3, vec![0, 3]).is_err());
        assert!(matches!(is_homomorphism(&z6, &z3, &Morphism::identity(6)), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn composition_examples() {
        let mod3 = Morphism::new(3, (0..6).map(|x| x % 3).collect()).unwrap();
        assert_eq!(compose_maps(&Morphism::identity(6), &mod3).unwrap(), mod3);
        let constant = Morphism::new(2, vec![1; 6]).unwrap();
        let any = Morphism::new(4, vec![3, 0]).unwrap();
        assert_eq!(compose_maps(&constant, &any).unwrap().map(), &[0; 6]);
        assert!(matches!(compose_maps(&mod3, &any), Err(Error::SizeMismatch(_))));
    }

    #[test]
    fn kernel_examples() {
        let mod3 = Morphism::new(3, (0..6).map(|x| x % 3).collect()).unwrap();
        assert_eq!(kernel(&mod3), part("0,3|1,4|2,5"));
        assert_eq!(kernel(&Morphism::identity(4)), Congruence::singletons(4));
        assert_eq!(kernel(&Morphism::new(2, vec![1; 5]).unwrap()), Congruence::single_block(5));
    }

    #[test]
    fn induced_injection_examples() {
        let (z6, z3) = (z(6), z(3));
        let mod3 = Morphism::new(3, (0..6).map(|x| x % 3).collect()).unwrap();
        let (q, psi) = induced_injection(&z6, &z3, &mod3).unwrap();
        assert_eq!(q.size(), 3);
        assert!(psi.is_bijective());
        assert!(is_homomorphism(&q, &z3, &psi).unwrap().holds());
        assert_eq!(compose_maps(&projection(&kernel(&mod3)), &psi).unwrap(), mod3);

        let (q, psi) = induced_injection(&z6, &z6, &Morphism::identity(6)).unwrap();
        assert_eq!(q, z6);
        assert_eq!(psi, Morphism::identity(6));

        let one = z(1);
        let (q, psi) = induced_injection(&z6, &one, &Morphism::new(1, vec![0; 6]).unwrap()).unwrap();
        assert_eq!(q.size(), 1);
        assert_eq!(psi.map(), &[0]);

        let shifted = Morphism::new(3, (0..6).map(|x| (x + 1) % 3).collect()).unwrap();
        assert_eq!(induced_injection(&z6, &z3, &shifted), Err(Error::NotAHomomorphism));
    }

    #[test]
    fn isomorphism_examples() {
        let z6 = z(6);
        let s = z(4);
        assert_eq!(is_isomorphic(&s, &s).unwrap(), Some(Morphism::identity(4)));
        let q = quotient(&z6, &part("0,3|1,4|2,5")).unwrap();
        let phi = is_isomorphic(&q, &z(3)).unwrap().unwrap();
        assert!(phi.is_bijective());

        let b = boolean_mn_semiring(2, 3, 2).unwrap();
        let (plus, times) = identity_binary_ops(&b).unwrap();
        let collapsed = MNSemiring::new(plus, times).unwrap();
        assert_eq!(is_isomorphic(&s, &collapsed).unwrap(), None);
        assert!(matches!(is_isomorphic(&z(9), &z(9)), Err(Error::CarrierTooLarge { .. })));
    }

    #[test]
    fn isomorphism_survives_relabelling() {
        let s = modular_mn_semiring(5, 2, 3).unwrap();
        let perm = [3, 0, 4, 1, 2];
        let relabel = |op: &OpTable| {
            let mut inv = [0; 5];
            for (x, &y) in perm.iter().enumerate() {
                inv[y] = x;
            }
            OpTable::from_fn(5, op.arity(), |t| {
                let pre: Vec<usize> = t.iter().map(|&y| inv[y]).collect();
                perm[op.apply(&pre)]
            })
            .unwrap()
        };
        let t = MNSemiring::new(relabel(s.f()), relabel(s.g())).unwrap();
        let phi = is_isomorphic(&s, &t).unwrap().unwrap();
        assert_eq!(phi.map(), &perm);
    }

    #[test]
    fn kernels_are_congruences_and_compositions_are_homs() {
        let algebras = [z(2), z(3), boolean_mn_semiring(1, 2, 2).unwrap()];
        let homs = |s: &MNSemiring, t: &MNSemiring| {
            let mut out = vec![];
            for_each_tuple::<()>(t.size(), s.size(), |map| {
                let phi = Morphism::new(t.size(), map.to_vec()).unwrap();
                if is_homomorphism(s, t, &phi).unwrap().holds() {
                    out.push(phi);
                }
                ControlFlow::Continue(())
            });
            out
        };
        for r in &algebras {
            for s in &algebras {
                for phi in homs(r, s) {
                    assert!(is_congruence(r, &kernel(&phi)).unwrap().holds());
                    for t in &algebras {
                        for psi in homs(s, t) {
                            let c = compose_maps(&phi, &psi).unwrap();
                            assert!(is_homomorphism(r, t, &c).unwrap().holds());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn second_isomorphism_chain() {
        let z6 = z(6);
        let chain = [Congruence::singletons(6), part("0,3|1,4|2,5"), Congruence::single_block(6)];
        for (i, rho) in chain.iter().enumerate() {
            for sigma in &chain[i..] {
                let q_rho = quotient(&z6, rho).unwrap();
                let induced = rho.induced_on_quotient(sigma).unwrap();
                assert!(is_congruence(&q_rho, &induced).unwrap().holds());
                let lhs = quotient(&q_rho, &induced).unwrap();
                let rhs = quotient(&z6, sigma).unwrap();
                assert!(is_isomorphic(&lhs, &rhs).unwrap().is_some());
            }
        }
        assert!(part("0,3|1,4|2,5").induced_on_quotient(&part("0,2,4|1,3,5")).is_err());
    }
}
