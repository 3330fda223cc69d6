//! Element-level scans: units, idempotents, nilpotents, annihilators, commutants.

use crate::bitset::BitSet;
use crate::ring::{ElementSet, FiniteRing, SetKind};

/// Two-sided inverse of `u`, if any.
pub fn inverse(r: &FiniteRing, u: usize) -> Option<usize> {
    r.elements()
        .find(|&v| r.mul(u, v) == r.one() && r.mul(v, u) == r.one())
}

/// Per-element unit flags.
pub fn unit_mask(r: &FiniteRing) -> BitSet {
    let n = r.order();
    let mut right = BitSet::new(n);
    for a in 0..n {
        for b in 0..n {
            if r.mul(a, b) == r.one() && r.mul(b, a) == r.one() {
                right.insert(a);
                break;
            }
        }
    }
    right
}

pub fn units(r: &FiniteRing) -> ElementSet {
    ElementSet::subset(unit_mask(r))
}

pub fn is_idempotent(r: &FiniteRing, e: usize) -> bool {
    r.mul(e, e) == e
}

pub fn idempotents(r: &FiniteRing) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&e| is_idempotent(r, e)),
    )
}

/// Successive powers `a, a², …, a^n` (n = ring order).
pub fn powers(r: &FiniteRing, a: usize) -> impl Iterator<Item = usize> + '_ {
    std::iter::successors(Some(a), move |&p| Some(r.mul(p, a))).take(r.order().max(1))
}

pub fn is_nilpotent(r: &FiniteRing, a: usize) -> bool {
    powers(r, a).any(|p| p == r.zero())
}

pub fn nilpotents(r: &FiniteRing) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&a| is_nilpotent(r, a)),
    )
}

pub fn square_zero(r: &FiniteRing) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&a| r.mul(a, a) == r.zero()),
    )
}

/// `{x : x·a = 0}`.
pub fn left_annihilator(r: &FiniteRing, a: usize) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&x| r.mul(x, a) == r.zero()),
    )
}

/// `{x : a·x = 0}`.
pub fn right_annihilator(r: &FiniteRing, a: usize) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&x| r.mul(a, x) == r.zero()),
    )
}

pub fn commutant(r: &FiniteRing, a: usize) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&x| r.mul(x, a) == r.mul(a, x)),
    )
}

pub fn double_commutant(r: &FiniteRing, a: usize) -> ElementSet {
    let comm = commutant(r, a).elems();
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements()
            .filter(|&x| comm.iter().all(|&y| r.mul(x, y) == r.mul(y, x))),
    )
}

pub fn is_central(r: &FiniteRing, a: usize) -> bool {
    r.elements().all(|x| r.mul(x, a) == r.mul(a, x))
}

pub fn center(r: &FiniteRing) -> ElementSet {
    ElementSet::from_elems(
        r.order(),
        SetKind::Subset,
        r.elements().filter(|&a| is_central(r, a)),
    )
}

pub fn central_units(r: &FiniteRing) -> Vec<usize> {
    let u = unit_mask(r);
    r.elements()
        .filter(|&a| u.contains(a) && is_central(r, a))
        .collect()
}

pub fn additive_order(r: &FiniteRing, a: usize) -> usize {
    let mut k = 1;
    let mut acc = a;
    while acc != r.zero() {
        acc = r.add(acc, a);
        k += 1;
    }
    k
}

/// Additive order of the identity.
pub fn characteristic(r: &FiniteRing) -> usize {
    additive_order(r, r.one())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{make_zn, matrix_ring};
    use crate::ring::Limits;

    #[test]
    fn units_of_small_rings() {
        assert_eq!(units(&make_zn(4)).elems(), vec![1, 3]);
        assert_eq!(units(&make_zn(2)).elems(), vec![1]);
        let m2 = matrix_ring(2, &make_zn(2), &Limits::default()).unwrap();
        // |GL_2(F_2)| = (4-1)(4-2)
        assert_eq!(units(&m2).len(), 6);
    }

    #[test]
    fn idempotent_scan() {
        assert_eq!(idempotents(&make_zn(6)).elems(), vec![0, 1, 3, 4]);
        assert_eq!(idempotents(&make_zn(4)).elems(), vec![0, 1]);
        assert_eq!(idempotents(&make_zn(7)).elems(), vec![0, 1]);
    }

    #[test]
    fn annihilators() {
        let z4 = make_zn(4);
        assert_eq!(left_annihilator(&z4, 2).elems(), vec![0, 2]);
        assert_eq!(right_annihilator(&z4, 2).elems(), vec![0, 2]);
        assert_eq!(left_annihilator(&z4, 1).elems(), vec![0]);
        assert_eq!(left_annihilator(&z4, 0).len(), 4);
    }

    #[test]
    fn commutants_in_m2_f2() {
        let z2 = make_zn(2);
        let m2 = matrix_ring(2, &z2, &Limits::default()).unwrap();
        assert_eq!(commutant(&z2, 1).len(), 2);
        // row-major digits, first entry most significant: E11 = 0b1000
        let e11 = 8;
        let dc = double_commutant(&m2, e11);
        let diagonal: Vec<usize> = (0..16).filter(|&x| x & 0b0110 == 0).collect();
        assert_eq!(dc.elems(), diagonal);
        assert!(dc.is_subset(&commutant(&m2, e11)));
    }

    #[test]
    fn characteristic_and_orders() {
        assert_eq!(characteristic(&make_zn(6)), 6);
        assert_eq!(additive_order(&make_zn(6), 2), 3);
        assert_eq!(characteristic(&make_zn(1)), 1);
    }
}
