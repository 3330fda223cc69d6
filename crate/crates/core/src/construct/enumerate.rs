//! Enumeration of small unital rings.
//!
//! The additive group is `ℤ_{d₁} × … × ℤ_{d_r}` in invariant-factor form with
//! `d₁` the exponent. The identity of a unital ring has additive order equal
//! to the characteristic, which is the exponent, and a cyclic subgroup of
//! maximal order is a direct summand, so up to isomorphism the identity can be
//! taken to be the first generator. Multiplication is then fixed by the
//! products of the remaining generators, which are searched by backtracking
//! with associativity pruning on generator triples.

use serde::Serialize;

use super::{find_isomorphism, tabulate, Radix};
use crate::elements::{characteristic, idempotents, nilpotents, units};
use crate::error::{Error, Result};
use crate::ring::{FiniteRing, Limits};

pub const MAX_ENUMERATION_ORDER: usize = 8;

/// Isomorphism invariants used to bucket candidates before exact search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Fingerprint {
    pub characteristic: usize,
    pub units: usize,
    pub idempotents: usize,
    pub nilpotents: usize,
}

impl Fingerprint {
    pub fn of(r: &FiniteRing) -> Self {
        Fingerprint {
            characteristic: characteristic(r),
            units: units(r).len(),
            idempotents: idempotents(r).len(),
            nilpotents: nilpotents(r).len(),
        }
    }
}

fn factorize(mut k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= k {
        let mut e = 0;
        while k.is_multiple_of(p) {
            k /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    if k > 1 {
        out.push((k, 1));
    }
    out
}

fn partitions(n: usize, max: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=n.min(max)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Invariant factors `d₁ ≥ d₂ ≥ …` with `d_{i+1} | d_i` of every abelian group of order `k`.
pub fn abelian_group_types(k: usize) -> Vec<Vec<usize>> {
    let mut types: Vec<Vec<usize>> = vec![vec![]];
    for (p, e) in factorize(k) {
        let mut next = Vec::new();
        for t in &types {
            for part in partitions(e, e) {
                let len = t.len().max(part.len());
                let merged: Vec<usize> = (0..len)
                    .map(|i| t.get(i).copied().unwrap_or(1) * p.pow(part.get(i).copied().unwrap_or(0) as u32))
                    .collect();
                next.push(merged);
            }
        }
        types = next;
    }
    if k == 1 {
        return vec![vec![1]];
    }
    types
}

struct GroupArith {
    bases: Vec<usize>,
}

impl GroupArith {
    fn add(&self, x: &[usize], y: &[usize]) -> Vec<usize> {
        x.iter().zip(y).zip(&self.bases).map(|((a, b), d)| (a + b) % d).collect()
    }

    fn scale(&self, k: usize, x: &[usize]) -> Vec<usize> {
        x.iter().zip(&self.bases).map(|(a, d)| (a * k) % d).collect()
    }

    fn zero(&self) -> Vec<usize> {
        vec![0; self.bases.len()]
    }

    fn unit(&self, i: usize) -> Vec<usize> {
        let mut v = self.zero();
        v[i] = 1 % self.bases[i];
        v
    }
}

struct Backtrack<'a> {
    g: &'a GroupArith,
    r: usize,
    /// products[i][j] = g_i · g_j, `None` while unassigned
    products: Vec<Vec<Option<Vec<usize>>>>,
    slots: Vec<(usize, usize)>,
    options: Vec<Vec<Vec<usize>>>,
    found: Vec<Vec<Vec<Vec<usize>>>>,
}

impl Backtrack<'_> {
    fn right_times_gen(&self, c: &[usize], k: usize) -> Option<Vec<usize>> {
        let mut acc = self.g.zero();
        for (l, &cl) in c.iter().enumerate() {
            if cl != 0 {
                let p = self.products[l][k].as_ref()?;
                acc = self.g.add(&acc, &self.g.scale(cl, p));
            }
        }
        Some(acc)
    }

    fn gen_times_left(&self, i: usize, c: &[usize]) -> Option<Vec<usize>> {
        let mut acc = self.g.zero();
        for (l, &cl) in c.iter().enumerate() {
            if cl != 0 {
                let p = self.products[i][l].as_ref()?;
                acc = self.g.add(&acc, &self.g.scale(cl, p));
            }
        }
        Some(acc)
    }

    fn associative_so_far(&self) -> bool {
        for i in 0..self.r {
            for j in 0..self.r {
                let Some(ij) = self.products[i][j].as_ref() else { continue };
                for k in 0..self.r {
                    let Some(jk) = self.products[j][k].as_ref() else { continue };
                    let lhs = self.right_times_gen(ij, k);
                    let rhs = self.gen_times_left(i, jk);
                    if let (Some(l), Some(r)) = (lhs, rhs) {
                        if l != r {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) {
        if depth == self.slots.len() {
            let full = self
                .products
                .iter()
                .map(|row| row.iter().map(|p| p.clone().unwrap()).collect())
                .collect();
            self.found.push(full);
            return;
        }
        let (i, j) = self.slots[depth];
        for opt in self.options[depth].clone() {
            self.products[i][j] = Some(opt);
            if self.associative_so_far() {
                self.run(depth + 1);
            }
        }
        self.products[i][j] = None;
    }
}

fn rings_on_group(bases: &[usize], limits: &Limits) -> Result<Vec<FiniteRing>> {
    let r = bases.len();
    let g = GroupArith {
        bases: bases.to_vec(),
    };
    let radix = Radix::new(bases.to_vec());
    let elems = radix.decode_all();
    let mut products = vec![vec![None; r]; r];
    for i in 0..r {
        products[0][i] = Some(g.unit(i));
        products[i][0] = Some(g.unit(i));
    }
    let mut slots = Vec::new();
    let mut options = Vec::new();
    for i in 1..r {
        for j in 1..r {
            let m = gcd(bases[i], bases[j]);
            slots.push((i, j));
            options.push(elems.iter().filter(|c| g.scale(m, c) == g.zero()).cloned().collect());
        }
    }
    let mut bt = Backtrack {
        g: &g,
        r,
        products,
        slots,
        options,
        found: Vec::new(),
    };
    bt.run(0);
    let n = elems.len();
    let labels: Vec<String> = elems
        .iter()
        .map(|d| {
            if r == 1 {
                d[0].to_string()
            } else {
                format!("({})", d.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    bt.found
        .into_iter()
        .map(|table| {
            let mul = |a: usize, b: usize| {
                let mut acc = g.zero();
                for (i, &x) in elems[a].iter().enumerate() {
                    for (j, &y) in elems[b].iter().enumerate() {
                        if x * y != 0 {
                            acc = g.add(&acc, &g.scale(x * y, &table[i][j]));
                        }
                    }
                }
                radix.encode(&acc)
            };
            tabulate(
                String::new(),
                n,
                0,
                radix.encode(&g.unit(0)),
                Some(labels.clone()),
                |a, b| radix.encode(&g.add(&elems[a], &elems[b])),
                mul,
                limits,
            )
        })
        .collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Every unital ring of order `k ≤ 8` whose identity is the first generator of
/// its additive group (this covers every isomorphism class). With `up_to_iso`
/// one representative per class is kept, the first one met. Rings are named
/// `Enum(k,i)` (1-based) when deduplicated and `EnumAll(k,i)` otherwise.
pub fn enumerate_unital_rings(k: usize, up_to_iso: bool, limits: &Limits) -> Result<Vec<FiniteRing>> {
    if k == 0 || k > MAX_ENUMERATION_ORDER {
        return Err(Error::SizeCap {
            order: k as u128,
            cap: MAX_ENUMERATION_ORDER,
        });
    }
    let mut all = Vec::new();
    for bases in abelian_group_types(k) {
        all.extend(rings_on_group(&bases, limits)?);
    }
    let mut kept: Vec<(Fingerprint, FiniteRing)> = Vec::new();
    for ring in all {
        let fp = Fingerprint::of(&ring);
        if up_to_iso
            && kept
                .iter()
                .any(|(f, other)| *f == fp && find_isomorphism(&ring, other).is_some())
        {
            continue;
        }
        kept.push((fp, ring));
    }
    let tag = if up_to_iso { "Enum" } else { "EnumAll" };
    Ok(kept
        .into_iter()
        .enumerate()
        .map(|(i, (_, mut r))| {
            r.set_name(format!("{tag}({k},{})", i + 1));
            r
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{are_isomorphic, direct_product, make_zn, upper_triangular_ring};

    #[test]
    fn group_types() {
        assert_eq!(abelian_group_types(8), vec![vec![8], vec![4, 2], vec![2, 2, 2]]);
        assert_eq!(abelian_group_types(6), vec![vec![6]]);
        assert_eq!(abelian_group_types(4), vec![vec![4], vec![2, 2]]);
        assert_eq!(abelian_group_types(1), vec![vec![1]]);
    }

    #[test]
    fn counts_up_to_isomorphism() {
        let l = Limits::default();
        let count = |k| enumerate_unital_rings(k, true, &l).unwrap().len();
        assert_eq!(count(1), 1);
        assert_eq!(count(2), 1);
        assert_eq!(count(3), 1);
        assert_eq!(count(4), 4);
        assert_eq!(count(5), 1);
        assert_eq!(count(6), 1);
        assert_eq!(count(7), 1);
    }

    /// Independent brute force for order 4: every pair of tables on ℤ₄ or
    /// ℤ₂×ℤ₂ with identity at a generator, validated and bucketed by iso.
    #[test]
    fn order_four_matches_known_list() {
        let l = Limits::default();
        let rings = enumerate_unital_rings(4, true, &l).unwrap();
        let z2 = make_zn(2);
        let expected = [
            make_zn(4),
            direct_product(&[z2.clone(), z2.clone()], &l).unwrap(),
        ];
        for e in &expected {
            assert_eq!(rings.iter().filter(|r| are_isomorphic(r, e)).count(), 1);
        }
        // one field, one ring with a nonzero square-zero element on ℤ₂×ℤ₂
        assert_eq!(rings.iter().filter(|r| units(r).len() == 3).count(), 1);
        assert_eq!(
            rings
                .iter()
                .filter(|r| characteristic(r) == 2 && nilpotents(r).len() == 2)
                .count(),
            1
        );
    }

    #[test]
    fn order_eight_contains_triangular_ring() {
        let l = Limits::default();
        let rings = enumerate_unital_rings(8, true, &l).unwrap();
        let t2 = upper_triangular_ring(2, &make_zn(2), &l).unwrap();
        assert_eq!(rings.iter().filter(|r| are_isomorphic(r, &t2)).count(), 1);
        assert_eq!(rings.iter().filter(|r| !r.is_commutative()).count(), 1);
    }

    #[test]
    fn too_large_is_rejected() {
        assert!(matches!(
            enumerate_unital_rings(9, true, &Limits::default()),
            Err(Error::SizeCap { .. })
        ));
    }
}
