//! Right-ideal lattices and radicals.
//!
//! The Zhou radical is computed as the intersection of the essential maximal
//! right ideals and cross-checked against the pullback of the Jacobson radical
//! of `R/Soc(R_R)`. The remaining characterizations (largest δ-small right
//! ideal, the direct-summand condition, faithful singular simple modules and
//! the semisimple-complement condition) are implemented literally so they can
//! be compared against it.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::bitset::BitSet;
use crate::construct::quotient_ring;
use crate::elements::{idempotents, powers, unit_mask};
use crate::error::{Error, Result};
use crate::ring::{ElementSet, FiniteRing, Limits, SetKind};

/// `A + B` for additive subgroups given as bitsets: a union of cosets of `A`.
pub fn subgroup_sum(r: &FiniteRing, a: &BitSet, b: &BitSet) -> BitSet {
    let a_elems = a.to_vec();
    let mut out = a.clone();
    for y in b.iter() {
        if !out.contains(y) {
            for &x in &a_elems {
                out.insert(r.add(x, y));
            }
        }
    }
    out
}

/// Smallest right ideal containing `gens`: the sum of the principal right ideals `gR`.
pub fn right_ideal_generated(r: &FiniteRing, gens: impl IntoIterator<Item = usize>) -> ElementSet {
    let mut acc = BitSet::from_elems(r.order(), [r.zero()]);
    for g in gens {
        acc = subgroup_sum(r, &acc, &r.right_multiples(g));
    }
    ElementSet::new(SetKind::RightIdeal, acc)
}

/// Smallest two-sided ideal containing `gens`.
pub fn two_sided_ideal_generated(r: &FiniteRing, gens: impl IntoIterator<Item = usize>) -> ElementSet {
    let mut acc = right_ideal_generated(r, gens).bits().clone();
    loop {
        let lefts: Vec<usize> = acc
            .iter()
            .flat_map(|a| r.elements().map(move |x| (x, a)))
            .map(|(x, a)| r.mul(x, a))
            .filter(|&y| !acc.contains(y))
            .collect();
        if lefts.is_empty() {
            return ElementSet::new(SetKind::TwoSidedIdeal, acc);
        }
        for y in lefts {
            if !acc.contains(y) {
                acc = subgroup_sum(r, &acc, &r.right_multiples(y));
            }
        }
    }
}

/// Every right ideal of a ring, with its maximal, minimal and essential maximal members.
#[derive(Clone, Debug)]
pub struct IdealLattice {
    /// Sorted lexicographically by element lists.
    pub right_ideals: Vec<ElementSet>,
    /// Indices into `right_ideals`.
    pub maximal: Vec<usize>,
    pub minimal: Vec<usize>,
    pub essential_maximal: Vec<usize>,
}

impl IdealLattice {
    pub fn len(&self) -> usize {
        self.right_ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.right_ideals.is_empty()
    }

    pub fn maximal_ideals(&self) -> impl Iterator<Item = &ElementSet> {
        self.maximal.iter().map(|&i| &self.right_ideals[i])
    }

    pub fn minimal_ideals(&self) -> impl Iterator<Item = &ElementSet> {
        self.minimal.iter().map(|&i| &self.right_ideals[i])
    }

    pub fn essential_maximal_ideals(&self) -> impl Iterator<Item = &ElementSet> {
        self.essential_maximal.iter().map(|&i| &self.right_ideals[i])
    }
}

/// Cached lattice and radical data for one ring.
#[derive(Clone, Debug)]
pub struct RingAnalysis {
    ring: FiniteRing,
    limits: Limits,
    /// Distinct principal right ideals `aR`.
    cyclic: Vec<BitSet>,
    /// `cyclic_of[a]` indexes `aR` in `cyclic`.
    cyclic_of: Vec<usize>,
    units: BitSet,
    idempotents: Vec<usize>,
    lattice: IdealLattice,
    socle: ElementSet,
    jacobson: ElementSet,
    delta: ElementSet,
}

fn intersect_all<'a>(n: usize, sets: impl Iterator<Item = &'a ElementSet>) -> BitSet {
    let mut acc = BitSet::full(n);
    for s in sets {
        acc.intersect_with(s.bits());
    }
    acc
}

/// `{r : x·r ∈ L}`.
fn colon(r: &FiniteRing, l: &BitSet, x: usize) -> BitSet {
    BitSet::from_elems(r.order(), r.elements().filter(|&y| l.contains(r.mul(x, y))))
}

/// `{x : ∀y, 1 − xy is a unit}`.
pub fn jacobson_by_units(r: &FiniteRing) -> BitSet {
    let units = unit_mask(r);
    BitSet::from_elems(
        r.order(),
        r.elements()
            .filter(|&x| r.elements().all(|y| units.contains(r.sub(r.one(), r.mul(x, y))))),
    )
}

impl RingAnalysis {
    /// Enumerates the lattice and computes socle, Jacobson and Zhou radicals,
    /// failing if any pair of independent algorithms disagree.
    pub fn new(ring: FiniteRing, limits: &Limits) -> Result<Self> {
        let n = ring.order();
        let mut cyclic_index: HashMap<BitSet, usize> = HashMap::new();
        let mut cyclic = Vec::new();
        let mut cyclic_of = Vec::with_capacity(n);
        for a in ring.elements() {
            let c = ring.right_multiples(a);
            let id = *cyclic_index.entry(c.clone()).or_insert_with(|| {
                cyclic.push(c);
                cyclic.len() - 1
            });
            cyclic_of.push(id);
        }
        let lattice = build_lattice(&ring, &cyclic, limits)?;
        let units = unit_mask(&ring);
        let idempotents = idempotents(&ring).elems();

        let mut this = RingAnalysis {
            ring,
            limits: *limits,
            cyclic,
            cyclic_of,
            units,
            idempotents,
            lattice,
            socle: ElementSet::subset(BitSet::new(n)),
            jacobson: ElementSet::subset(BitSet::new(n)),
            delta: ElementSet::subset(BitSet::new(n)),
        };
        this.classify_lattice();
        this.socle = this.compute_socle()?;
        this.jacobson = this.compute_jacobson()?;
        this.delta = this.compute_delta()?;
        Ok(this)
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn limits(&self) -> &Limits {
        &self.limits
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.lattice
    }

    pub fn socle(&self) -> &ElementSet {
        &self.socle
    }

    pub fn jacobson(&self) -> &ElementSet {
        &self.jacobson
    }

    /// The Zhou radical δ(R).
    pub fn delta(&self) -> &ElementSet {
        &self.delta
    }

    pub fn units(&self) -> &BitSet {
        &self.units
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    /// `aR`.
    pub fn principal(&self, a: usize) -> &BitSet {
        &self.cyclic[self.cyclic_of[a]]
    }

    fn sum_is_whole(&self, a: &BitSet, b: &BitSet) -> bool {
        // |A + B| = |A||B| / |A ∩ B| for subgroups
        a.count() * b.count() == self.ring.order() * a.intersection_count(b)
    }

    fn classify_lattice(&mut self) {
        let n = self.ring.order();
        let ideals = &self.lattice.right_ideals;
        let maximal: Vec<usize> = (0..ideals.len())
            .filter(|&i| {
                let m = ideals[i].bits();
                m.count() < n
                    && self
                        .cyclic
                        .iter()
                        .filter(|c| !c.is_subset(m))
                        .all(|c| self.sum_is_whole(m, c))
            })
            .collect();
        // minimal right ideals are principal: aR with every nonzero b ∈ aR generating all of it
        let position: HashMap<&BitSet, usize> =
            ideals.iter().enumerate().map(|(i, s)| (s.bits(), i)).collect();
        let mut minimal: Vec<usize> = self
            .cyclic
            .iter()
            .filter(|c| {
                c.count() > 1
                    && c.iter()
                        .filter(|&b| b != self.ring.zero())
                        .all(|b| self.principal(b).count() == c.count())
            })
            .map(|c| position[c])
            .collect();
        minimal.sort_unstable();
        let essential_maximal = maximal
            .iter()
            .copied()
            .filter(|&i| self.is_essential(&ideals[i]))
            .collect();
        self.lattice.maximal = maximal;
        self.lattice.minimal = minimal;
        self.lattice.essential_maximal = essential_maximal;
    }

    /// `E ∩ aR ≠ 0` for every `a ≠ 0`.
    pub fn is_essential(&self, e: &ElementSet) -> bool {
        self.is_essential_bits(e.bits())
    }

    fn is_essential_bits(&self, e: &BitSet) -> bool {
        self.cyclic
            .iter()
            .filter(|c| c.count() > 1)
            .all(|c| e.intersection_count(c) > 1)
    }

    fn compute_socle(&self) -> Result<ElementSet> {
        let n = self.ring.order();
        let mut acc = BitSet::from_elems(n, [self.ring.zero()]);
        for m in self.lattice.minimal_ideals() {
            acc = subgroup_sum(&self.ring, &acc, m.bits());
        }
        let set = ElementSet::subset(acc);
        if let Some(w) = set.two_sided_violation(&self.ring) {
            return Err(Error::SocleNotTwoSided { witness: w });
        }
        Ok(set.with_kind(SetKind::TwoSidedIdeal))
    }

    fn compute_jacobson(&self) -> Result<ElementSet> {
        let n = self.ring.order();
        let by_maximal = intersect_all(n, self.lattice.maximal_ideals());
        let by_units = jacobson_by_units(&self.ring);
        if by_maximal != by_units {
            let w = by_maximal
                .first_outside(&by_units)
                .or_else(|| by_units.first_outside(&by_maximal));
            return Err(Error::cross_check("jacobson: maximal ideals vs unit criterion", w.into_iter().collect()));
        }
        Ok(ElementSet::new(SetKind::TwoSidedIdeal, by_maximal))
    }

    fn compute_delta(&self) -> Result<ElementSet> {
        let primary = self.r1();
        let pullback = self.socle_pullback()?;
        if primary != pullback {
            let w = primary
                .first_outside(&pullback)
                .or_else(|| pullback.first_outside(&primary));
            return Err(Error::cross_check(
                "zhou radical: essential maximal ideals vs socle-quotient pullback",
                w.into_iter().collect(),
            ));
        }
        ElementSet::checked(&self.ring, SetKind::TwoSidedIdeal, primary)
    }

    /// Intersection of the essential maximal right ideals (`R` if there are none).
    pub fn r1(&self) -> BitSet {
        intersect_all(self.ring.order(), self.lattice.essential_maximal_ideals())
    }

    /// Preimage of `J(R/S)` under `R → R/S`, `S` the right socle.
    pub fn socle_pullback(&self) -> Result<BitSet> {
        let q = quotient_ring(&self.ring, &self.socle, &self.limits)?;
        let j = ElementSet::subset(jacobson_by_units(&q.ring));
        Ok(q.pullback(&j, SetKind::Subset).bits().clone())
    }

    /// `K = eR` for some idempotent `e`.
    pub fn is_direct_summand(&self, k: &ElementSet) -> bool {
        self.idempotents.iter().any(|&e| self.principal(e) == k.bits())
    }

    fn non_summands(&self) -> Vec<&BitSet> {
        let summands: HashSet<&BitSet> = self.idempotents.iter().map(|&e| self.principal(e)).collect();
        self.lattice
            .right_ideals
            .iter()
            .map(|k| k.bits())
            .filter(|k| !summands.contains(k))
            .collect()
    }

    /// Every right ideal `K` with `xR + K = R` is a direct summand.
    pub fn r3_membership(&self, x: usize) -> bool {
        let bad = self.non_summands();
        let c = self.principal(x);
        !bad.iter().any(|k| self.sum_is_whole(c, k))
    }

    pub fn r3_set(&self) -> BitSet {
        let bad = self.non_summands();
        let ok: Vec<bool> = self
            .cyclic
            .iter()
            .map(|c| !bad.iter().any(|k| self.sum_is_whole(c, k)))
            .collect();
        BitSet::from_elems(
            self.ring.order(),
            self.ring.elements().filter(|&x| ok[self.cyclic_of[x]]),
        )
    }

    /// For each principal right ideal: does it have a complement inside the socle?
    fn socle_complemented(&self) -> Vec<bool> {
        let n = self.ring.order();
        let inside: Vec<&BitSet> = self
            .lattice
            .right_ideals
            .iter()
            .map(|y| y.bits())
            .filter(|y| y.is_subset(self.socle.bits()))
            .collect();
        self.cyclic
            .iter()
            .map(|c| {
                inside
                    .iter()
                    .any(|y| c.intersection_count(y) == 1 && c.count() * y.count() == n)
            })
            .collect()
    }

    fn r5_with(&self, complemented: &[bool], x: usize) -> bool {
        let r = &self.ring;
        r.elements().all(|y| {
            let u = r.add(r.one(), r.mul(x, y));
            complemented[self.cyclic_of[u]]
        })
    }

    /// For all `y` there is a semisimple right ideal `Y` with `(1+xy)R ⊕ Y = R`.
    pub fn r5_membership(&self, x: usize) -> bool {
        self.r5_with(&self.socle_complemented(), x)
    }

    pub fn r5_set(&self) -> BitSet {
        let comp = self.socle_complemented();
        BitSet::from_elems(
            self.ring.order(),
            self.ring.elements().filter(|&x| self.r5_with(&comp, x)),
        )
    }

    /// `R/L` singular: every `{r : xr ∈ L}` is essential.
    fn quotient_is_singular(&self, l: &BitSet) -> bool {
        self.ring
            .elements()
            .filter(|&x| !l.contains(x))
            .all(|x| self.is_essential_bits(&colon(&self.ring, l, x)))
    }

    fn singular_cokernels(&self) -> Vec<&BitSet> {
        let n = self.ring.order();
        self.lattice
            .right_ideals
            .iter()
            .map(|l| l.bits())
            .filter(|l| l.count() < n && self.quotient_is_singular(l))
            .collect()
    }

    /// `N + L = R` with `R/L` singular forces `L = R`.
    pub fn is_delta_small(&self, nset: &ElementSet) -> bool {
        let ls = self.singular_cokernels();
        !ls.iter().any(|l| self.sum_is_whole(nset.bits(), l))
    }

    /// The largest δ-small right ideal; errors if the δ-small ideals have no maximum.
    pub fn r2(&self) -> Result<BitSet> {
        let ls = self.singular_cokernels();
        let small: Vec<&BitSet> = self
            .lattice
            .right_ideals
            .iter()
            .map(|s| s.bits())
            .filter(|nn| !ls.iter().any(|l| self.sum_is_whole(nn, l)))
            .collect();
        small
            .iter()
            .find(|top| small.iter().all(|s| s.is_subset(top)))
            .map(|b| (*b).clone())
            .ok_or_else(|| Error::cross_check("no largest delta-small right ideal", vec![]))
    }

    /// Two-sided ideals of the ring, in lattice order.
    pub fn two_sided_ideals(&self) -> Vec<&ElementSet> {
        self.lattice
            .right_ideals
            .iter()
            .filter(|s| s.two_sided_violation(&self.ring).is_none())
            .collect()
    }

    /// Intersection of the ideals `P` such that `R/P` has a simple right module that is
    /// faithful over `R/P` and singular over `R`. Simple modules are realized as
    /// `(R/P)/M` for maximal right ideals `M` of `R/P`; singularity is tested on the
    /// preimage of `M` in `R`.
    pub fn r4(&self) -> Result<BitSet> {
        let n = self.ring.order();
        let mut acc = BitSet::full(n);
        for p in self.two_sided_ideals() {
            if p.len() == n {
                continue;
            }
            let q = quotient_ring(&self.ring, p, &self.limits)?;
            let qa = RingAnalysis::new(q.ring.clone(), &self.limits)?;
            let qr = &qa.ring;
            let qualifies = qa.lattice.maximal_ideals().any(|m| {
                // the annihilator of (R/P)/M is the largest two-sided ideal inside M
                let faithful = qr
                    .elements()
                    .filter(|&x| qr.elements().all(|y| m.contains(qr.mul(y, x))))
                    .all(|x| x == qr.zero());
                faithful && self.quotient_is_singular(q.pullback(m, SetKind::RightIdeal).bits())
            });
            if qualifies {
                acc.intersect_with(p.bits());
            }
        }
        Ok(acc)
    }

    /// `{x : x^k ∈ δ(R) for some k ≤ |R|}`.
    pub fn delta_sharp(&self) -> ElementSet {
        ElementSet::from_elems(
            self.ring.order(),
            SetKind::Subset,
            self.ring
                .elements()
                .filter(|&x| powers(&self.ring, x).any(|p| self.delta.contains(p))),
        )
    }

    /// `aRa ⊆ I` implies `a ∈ I`; returns the first `a` breaking it.
    pub fn semiprime_violation(&self, ideal: &ElementSet) -> Option<usize> {
        semiprime_violation(&self.ring, ideal)
    }
}

pub fn semiprime_violation(r: &FiniteRing, ideal: &ElementSet) -> Option<usize> {
    r.elements()
        .filter(|&a| !ideal.contains(a))
        .find(|&a| r.elements().all(|x| ideal.contains(r.mul(r.mul(a, x), a))))
}

pub fn is_semiprime_ideal(r: &FiniteRing, ideal: &ElementSet) -> bool {
    semiprime_violation(r, ideal).is_none()
}

/// Join-irreducible principal right ideals: those not equal to the sum of the
/// principal right ideals strictly inside them. Every right ideal is a sum of these.
fn lattice_generators<'a>(r: &FiniteRing, cyclic: &'a [BitSet]) -> Vec<&'a BitSet> {
    cyclic
        .iter()
        .filter(|c| {
            let mut below = BitSet::from_elems(r.order(), [r.zero()]);
            for d in cyclic {
                if d != *c && d.is_subset(c) && !d.is_subset(&below) {
                    below = subgroup_sum(r, &below, d);
                }
            }
            below != **c
        })
        .collect()
}

fn build_lattice(r: &FiniteRing, cyclic: &[BitSet], limits: &Limits) -> Result<IdealLattice> {
    let gens = lattice_generators(r, cyclic);
    let zero = BitSet::from_elems(r.order(), [r.zero()]);
    let mut seen: HashSet<BitSet> = HashSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(i) = queue.pop_front() {
        for c in &gens {
            if c.is_subset(&i) {
                continue;
            }
            let s = subgroup_sum(r, &i, c);
            if !seen.contains(&s) {
                if seen.len() >= limits.lattice_cap {
                    return Err(Error::LatticeCap {
                        cap: limits.lattice_cap,
                    });
                }
                seen.insert(s.clone());
                queue.push_back(s);
            }
        }
    }
    let mut ideals: Vec<BitSet> = seen.into_iter().collect();
    ideals.sort_by(|a, b| a.cmp_elements(b));
    Ok(IdealLattice {
        right_ideals: ideals
            .into_iter()
            .map(|b| ElementSet::new(SetKind::RightIdeal, b))
            .collect(),
        maximal: Vec::new(),
        minimal: Vec::new(),
        essential_maximal: Vec::new(),
    })
}

pub fn all_right_ideals(r: &FiniteRing, limits: &Limits) -> Result<IdealLattice> {
    Ok(RingAnalysis::new(r.clone(), limits)?.lattice)
}

pub fn is_essential(r: &FiniteRing, e: &ElementSet) -> bool {
    let n = r.order();
    r.elements()
        .filter(|&a| a != r.zero())
        .all(|a| e.bits().intersection_count(&r.right_multiples(a)) > 1 || n == 1)
}

pub fn socle(r: &FiniteRing, limits: &Limits) -> Result<ElementSet> {
    Ok(RingAnalysis::new(r.clone(), limits)?.socle)
}

pub fn jacobson_radical(r: &FiniteRing, limits: &Limits) -> Result<ElementSet> {
    Ok(RingAnalysis::new(r.clone(), limits)?.jacobson)
}

pub fn zhou_radical(r: &FiniteRing, limits: &Limits) -> Result<ElementSet> {
    Ok(RingAnalysis::new(r.clone(), limits)?.delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{direct_product, make_zn, matrix_ring, upper_triangular_ring};

    fn lim() -> Limits {
        Limits::default()
    }

    fn analysis(r: FiniteRing) -> RingAnalysis {
        RingAnalysis::new(r, &lim()).unwrap()
    }

    fn lists(l: &IdealLattice) -> Vec<Vec<usize>> {
        l.right_ideals.iter().map(|s| s.elems()).collect()
    }

    #[test]
    fn generated_right_ideals() {
        let z4 = make_zn(4);
        assert_eq!(right_ideal_generated(&z4, [1]).len(), 4);
        assert_eq!(right_ideal_generated(&z4, [2]).elems(), vec![0, 2]);
        assert_eq!(right_ideal_generated(&z4, []).elems(), vec![0]);
    }

    #[test]
    fn lattices_of_small_rings() {
        let l = all_right_ideals(&make_zn(4), &lim()).unwrap();
        assert_eq!(lists(&l), vec![vec![0], vec![0, 1, 2, 3], vec![0, 2]]);
        let f = all_right_ideals(&make_zn(5), &lim()).unwrap();
        assert_eq!(f.len(), 2);
        let z2 = make_zn(2);
        let k = direct_product(&[z2.clone(), z2], &lim()).unwrap();
        assert_eq!(all_right_ideals(&k, &lim()).unwrap().len(), 4);
    }

    /// Brute force over all subsets of a 16-element ring: a subset is a right
    /// ideal iff it passes the closure check.
    #[test]
    fn lattice_matches_subset_enumeration() {
        let z2 = make_zn(2);
        let m2 = matrix_ring(2, &z2, &lim()).unwrap();
        let mut brute = Vec::new();
        for mask in 0u32..(1 << 16) {
            let s = ElementSet::subset(BitSet::from_elems(16, (0..16).filter(|i| mask >> i & 1 == 1)));
            if s.right_ideal_violation(&m2).is_none() {
                brute.push(s.elems());
            }
        }
        brute.sort();
        let mut got = lists(&all_right_ideals(&m2, &lim()).unwrap());
        got.sort();
        assert_eq!(got, brute);
        assert_eq!(got.len(), 5);
    }

    #[test]
    fn essential_ideals() {
        let z4 = make_zn(4);
        let two = right_ideal_generated(&z4, [2]);
        assert!(is_essential(&z4, &two));
        assert!(is_essential(&z4, &right_ideal_generated(&z4, [1])));
        assert!(!is_essential(&z4, &right_ideal_generated(&z4, [])));
        let a = analysis(z4);
        assert!(a.is_essential(&two));
    }

    #[test]
    fn socles() {
        assert_eq!(socle(&make_zn(4), &lim()).unwrap().elems(), vec![0, 2]);
        assert_eq!(socle(&make_zn(6), &lim()).unwrap().len(), 6);
        // T2(Z2), digits (x11, x12, x22): minimal right ideals are span{E12} and span{E22}
        let t2 = upper_triangular_ring(2, &make_zn(2), &lim()).unwrap();
        assert_eq!(socle(&t2, &lim()).unwrap().elems(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn jacobson_radicals() {
        assert_eq!(jacobson_radical(&make_zn(4), &lim()).unwrap().elems(), vec![0, 2]);
        assert_eq!(jacobson_radical(&make_zn(7), &lim()).unwrap().elems(), vec![0]);
        let m = matrix_ring(2, &make_zn(3), &lim()).unwrap();
        assert_eq!(jacobson_radical(&m, &lim()).unwrap().elems(), vec![0]);
    }

    #[test]
    fn zhou_radicals() {
        assert_eq!(zhou_radical(&make_zn(4), &lim()).unwrap().elems(), vec![0, 2]);
        assert_eq!(zhou_radical(&make_zn(6), &lim()).unwrap().len(), 6);
        let m = matrix_ring(2, &make_zn(3), &lim()).unwrap();
        assert_eq!(zhou_radical(&m, &lim()).unwrap().len(), 81);
        let t2 = upper_triangular_ring(2, &make_zn(2), &lim()).unwrap();
        assert_eq!(zhou_radical(&t2, &lim()).unwrap().elems(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn literal_characterizations_on_z4() {
        let a = analysis(make_zn(4));
        assert_eq!(a.r3_set().to_vec(), vec![0, 2]);
        assert_eq!(a.r5_set().to_vec(), vec![0, 2]);
        assert_eq!(a.r4().unwrap().to_vec(), vec![0, 2]);
        assert_eq!(a.r2().unwrap().to_vec(), vec![0, 2]);
        assert!(a.r5_membership(0));
        assert!(a.r3_membership(2));
        assert!(!a.r3_membership(1));
    }

    #[test]
    fn delta_small() {
        let a = analysis(make_zn(4));
        let zero = right_ideal_generated(a.ring(), []);
        assert!(a.is_delta_small(&zero));
        assert!(a.is_delta_small(a.delta()));
        let whole = right_ideal_generated(a.ring(), [1]);
        assert!(!a.is_delta_small(&whole));
    }

    #[test]
    fn delta_sharp_and_semiprime() {
        let a = analysis(make_zn(4));
        assert_eq!(a.delta_sharp().elems(), vec![0, 2]);
        assert!(is_semiprime_ideal(a.ring(), a.delta()));
        let z8 = make_zn(8);
        let four = right_ideal_generated(&z8, [4]).with_kind(SetKind::TwoSidedIdeal);
        // 2·x·2 ∈ {0,4} for every x, yet 2 ∉ {0,4}
        assert_eq!(semiprime_violation(&z8, &four), Some(2));
    }

    #[test]
    fn direct_summands() {
        let z6 = make_zn(6);
        let a = analysis(z6.clone());
        assert!(a.is_direct_summand(&right_ideal_generated(&z6, [3])));
        let z4 = make_zn(4);
        let b = analysis(z4.clone());
        assert!(!b.is_direct_summand(&right_ideal_generated(&z4, [2])));
    }
}
