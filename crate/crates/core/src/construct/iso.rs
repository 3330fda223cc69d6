//! Exact ring isomorphism search.
//!
//! Backtracks over images of a greedy additive generating set (starting at the
//! identity), extending additively and pruning on per-element invariants and
//! on multiplicativity within the span built so far.

use crate::elements::{additive_order, is_nilpotent, unit_mask};
use crate::ring::FiniteRing;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Signature {
    additive_order: usize,
    unit: bool,
    idempotent: bool,
    nilpotent: bool,
    right_multiples: usize,
    left_multiples: usize,
    right_ann: usize,
    left_ann: usize,
    square_order: usize,
}

fn signatures(r: &FiniteRing) -> Vec<Signature> {
    let units = unit_mask(r);
    r.elements()
        .map(|a| Signature {
            additive_order: additive_order(r, a),
            unit: units.contains(a),
            idempotent: r.mul(a, a) == a,
            nilpotent: is_nilpotent(r, a),
            right_multiples: r.right_multiples(a).count(),
            left_multiples: r.left_multiples(a).count(),
            right_ann: r.elements().filter(|&x| r.mul(a, x) == r.zero()).count(),
            left_ann: r.elements().filter(|&x| r.mul(x, a) == r.zero()).count(),
            square_order: additive_order(r, r.mul(a, a)),
        })
        .collect()
}

struct Search<'a> {
    a: &'a FiniteRing,
    b: &'a FiniteRing,
    sig_a: Vec<Signature>,
    sig_b: Vec<Signature>,
    gens: Vec<usize>,
    phi: Vec<usize>,
    inv: Vec<usize>,
    span: Vec<usize>,
}

const UNSET: usize = usize::MAX;

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize) -> bool {
        if self.phi[x] != UNSET {
            return self.phi[x] == y;
        }
        if self.inv[y] != UNSET || self.sig_a[x] != self.sig_b[y] {
            return false;
        }
        self.phi[x] = y;
        self.inv[y] = x;
        self.span.push(x);
        true
    }

    fn rollback(&mut self, len: usize) {
        while self.span.len() > len {
            let x = self.span.pop().unwrap();
            self.inv[self.phi[x]] = UNSET;
            self.phi[x] = UNSET;
        }
    }

    /// Adds `g ↦ h` and closes the span additively.
    fn extend(&mut self, g: usize, h: usize) -> bool {
        let base: Vec<usize> = self.span.clone();
        let ord = self.sig_a[g].additive_order;
        let (mut mg, mut mh) = (g, h);
        for _ in 1..ord {
            for &x in &base {
                let (y, t) = (self.a.add(x, mg), self.b.add(self.phi[x], mh));
                if !self.assign(y, t) {
                    return false;
                }
            }
            mg = self.a.add(mg, g);
            mh = self.b.add(mh, h);
        }
        true
    }

    fn multiplicative_on_span(&self, fresh_from: usize) -> bool {
        let (a, b) = (self.a, self.b);
        for (i, &x) in self.span.iter().enumerate() {
            let start = if i >= fresh_from { 0 } else { fresh_from };
            for &y in &self.span[start..] {
                for (p, q) in [(x, y), (y, x)] {
                    let xy = a.mul(p, q);
                    if self.phi[xy] != UNSET && self.phi[xy] != b.mul(self.phi[p], self.phi[q]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, k: usize) -> bool {
        if k == self.gens.len() {
            return self.span.len() == self.a.order();
        }
        let g = self.gens[k];
        let candidates: Vec<usize> = if k == 0 {
            vec![self.b.one()]
        } else {
            self.b
                .elements()
                .filter(|&h| self.inv[h] == UNSET && self.sig_b[h] == self.sig_a[g])
                .collect()
        };
        for h in candidates {
            let mark = self.span.len();
            if self.extend(g, h) && self.multiplicative_on_span(mark) && self.run(k + 1) {
                return true;
            }
            self.rollback(mark);
        }
        false
    }
}

/// Greedy additive generators of `r`, the identity first.
fn additive_generators(r: &FiniteRing) -> Vec<usize> {
    let n = r.order();
    let mut in_span = vec![false; n];
    in_span[r.zero()] = true;
    let mut span = vec![r.zero()];
    let mut order: Vec<usize> = r.elements().collect();
    order.sort_by_key(|&x| (std::cmp::Reverse(additive_order(r, x)), x));
    let mut gens = Vec::new();
    for g in std::iter::once(r.one()).chain(order) {
        if in_span[g] {
            continue;
        }
        gens.push(g);
        let base = span.clone();
        let mut mg = g;
        while mg != r.zero() {
            for &x in &base {
                let y = r.add(x, mg);
                if !in_span[y] {
                    in_span[y] = true;
                    span.push(y);
                }
            }
            mg = r.add(mg, g);
        }
    }
    gens
}

/// A bijection `φ` with `φ(x+y) = φ(x)+φ(y)` and `φ(xy) = φ(x)φ(y)`, if one exists.
pub fn find_isomorphism(a: &FiniteRing, b: &FiniteRing) -> Option<Vec<usize>> {
    if a.order() != b.order() {
        return None;
    }
    let sig_a = signatures(a);
    let sig_b = signatures(b);
    let (mut sa, mut sb) = (sig_a.clone(), sig_b.clone());
    sa.sort();
    sb.sort();
    if sa != sb {
        return None;
    }
    let n = a.order();
    let mut s = Search {
        a,
        b,
        sig_a,
        sig_b,
        gens: additive_generators(a),
        phi: vec![UNSET; n],
        inv: vec![UNSET; n],
        span: Vec::new(),
    };
    s.assign(a.zero(), b.zero());
    if !s.run(0) {
        return None;
    }
    let phi = s.phi;
    let ok = a.elements().all(|x| {
        a.elements().all(|y| {
            phi[a.add(x, y)] == b.add(phi[x], phi[y]) && phi[a.mul(x, y)] == b.mul(phi[x], phi[y])
        })
    });
    ok.then_some(phi)
}

pub fn are_isomorphic(a: &FiniteRing, b: &FiniteRing) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{direct_product, ks_ring, make_zn, matrix_ring, upper_triangular_ring};
    use crate::ring::Limits;

    #[test]
    fn cyclic_rings() {
        assert!(are_isomorphic(&make_zn(5), &make_zn(5)));
        assert!(!are_isomorphic(&make_zn(4), &make_zn(5)));
        let l = Limits::default();
        let z2 = make_zn(2);
        let klein = direct_product(&[z2.clone(), z2], &l).unwrap();
        assert!(!are_isomorphic(&make_zn(4), &klein));
    }

    #[test]
    fn crt_isomorphism() {
        let l = Limits::default();
        let p = direct_product(&[make_zn(3), make_zn(2)], &l).unwrap();
        let phi = find_isomorphism(&p, &make_zn(6)).unwrap();
        assert_eq!(phi[p.one()], 1);
    }

    #[test]
    fn generalized_matrix_ring_with_unit_twist_is_full_matrix_ring() {
        let l = Limits::default();
        for k in [2, 3, 4] {
            let base = make_zn(k);
            let ks = ks_ring(&base, 1, &l).unwrap();
            let m = matrix_ring(2, &base, &l).unwrap();
            assert!(are_isomorphic(&ks, &m), "K_1(Z{k}) vs M_2(Z{k})");
        }
    }

    #[test]
    fn triangular_is_not_matrix() {
        let l = Limits::default();
        let z2 = make_zn(2);
        let t = upper_triangular_ring(2, &z2, &l).unwrap();
        let p = direct_product(&[z2.clone(), z2.clone(), z2], &l).unwrap();
        assert!(!are_isomorphic(&t, &p));
    }
}
