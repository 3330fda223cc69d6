//! Ring extensions built from component rings.
//!
//! Composite rings encode each element as a mixed-radix tuple of component
//! indices, first component most significant, so index order is lexicographic
//! tuple order. Labels spell the tuple out.

mod bimodule;
mod enumerate;
mod expr;
mod iso;

pub use bimodule::Bimodule;
pub use enumerate::{abelian_group_types, enumerate_unital_rings, Fingerprint};
pub use expr::{build, parse_expr, ModuleSpec, RingExpr};
pub use iso::{are_isomorphic, find_isomorphism};

use rayon::prelude::*;

use crate::elements::{inverse, is_central, is_idempotent, unit_mask};
use crate::error::{Error, Result};
use crate::ideals::two_sided_ideal_generated;
use crate::ring::{ElementSet, FiniteRing, Limits, SetKind};

/// Mixed-radix codec for tuples of component indices.
#[derive(Clone, Debug)]
pub(crate) struct Radix {
    bases: Vec<usize>,
}

impl Radix {
    pub(crate) fn new(bases: Vec<usize>) -> Self {
        Radix { bases }
    }

    pub(crate) fn total(&self) -> u128 {
        self.bases
            .iter()
            .try_fold(1u128, |acc, &b| acc.checked_mul(b as u128))
            .unwrap_or(u128::MAX)
    }

    pub(crate) fn encode(&self, digits: &[usize]) -> usize {
        digits
            .iter()
            .zip(&self.bases)
            .fold(0, |acc, (&d, &b)| acc * b + d)
    }

    pub(crate) fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.bases.len()];
        for (slot, &b) in out.iter_mut().zip(&self.bases).rev() {
            *slot = idx % b;
            idx /= b;
        }
        out
    }

    pub(crate) fn decode_all(&self) -> Vec<Vec<usize>> {
        (0..self.total() as usize).map(|i| self.decode(i)).collect()
    }
}

/// Builds both tables by evaluating `add` and `mul` on every pair, then validates.
pub(crate) fn tabulate(
    name: String,
    order: usize,
    zero: usize,
    one: usize,
    labels: Option<Vec<String>>,
    add: impl Fn(usize, usize) -> usize + Sync,
    mul: impl Fn(usize, usize) -> usize + Sync,
    limits: &Limits,
) -> Result<FiniteRing> {
    let fill = |f: &(dyn Fn(usize, usize) -> usize + Sync)| -> Vec<u32> {
        let mut t = vec![0u32; order * order];
        t.par_chunks_mut(order).enumerate().for_each(|(a, row)| {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = f(a, b) as u32;
            }
        });
        t
    };
    let add_t = fill(&add);
    let mul_t = fill(&mul);
    FiniteRing::from_tables(name, zero, one, add_t, mul_t, labels, limits)
}

/// Entrywise helpers over a base ring.
struct Entries<'a>(&'a FiniteRing);

impl Entries<'_> {
    fn sum(&self, terms: impl IntoIterator<Item = usize>) -> usize {
        terms.into_iter().fold(self.0.zero(), |acc, t| self.0.add(acc, t))
    }

    /// Product of two `n×n` row-major matrices.
    fn matmul(&self, n: usize, a: &[usize], b: &[usize]) -> Vec<usize> {
        let r = self.0;
        let mut out = vec![r.zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = self.sum((0..n).map(|k| r.mul(a[i * n + k], b[k * n + j])));
            }
        }
        out
    }
}

fn matrix_label(r: &FiniteRing, rows: usize, cols: usize, entries: &[usize]) -> String {
    let body: Vec<String> = (0..rows)
        .map(|i| {
            let row: Vec<String> = (0..cols).map(|j| r.label(entries[i * cols + j])).collect();
            format!("[{}]", row.join(","))
        })
        .collect();
    format!("[{}]", body.join(","))
}

/// ℤ/kℤ with canonical tables. Panics on `k == 0`.
pub fn make_zn(k: usize) -> FiniteRing {
    assert!(k >= 1, "Zn needs a positive modulus");
    tabulate(
        format!("Zn({k})"),
        k,
        0,
        1 % k,
        Some((0..k).map(|a| a.to_string()).collect()),
        |a, b| (a + b) % k,
        |a, b| (a * b) % k,
        &Limits {
            size_cap: usize::MAX,
            ..Limits::default()
        },
    )
    .expect("modular arithmetic is a ring")
}

pub fn direct_product(parts: &[FiniteRing], limits: &Limits) -> Result<FiniteRing> {
    assert!(!parts.is_empty(), "direct product needs at least one factor");
    let name = format!(
        "Prod({})",
        parts.iter().map(|p| p.name()).collect::<Vec<_>>().join(",")
    );
    if parts.len() == 1 {
        let mut r = parts[0].clone();
        r.set_name(name);
        return Ok(r);
    }
    let radix = Radix::new(parts.iter().map(|p| p.order()).collect());
    let order = limits.check_order(radix.total())?;
    let tuples = radix.decode_all();
    let labels = tuples
        .iter()
        .map(|t| {
            let l: Vec<String> = t.iter().zip(parts).map(|(&x, p)| p.label(x)).collect();
            format!("({})", l.join(","))
        })
        .collect();
    let zero = radix.encode(&parts.iter().map(|p| p.zero()).collect::<Vec<_>>());
    let one = radix.encode(&parts.iter().map(|p| p.one()).collect::<Vec<_>>());
    let op = |f: fn(&FiniteRing, usize, usize) -> usize| {
        let tuples = &tuples;
        let radix = &radix;
        move |a: usize, b: usize| {
            let d: Vec<usize> = parts
                .iter()
                .enumerate()
                .map(|(i, p)| f(p, tuples[a][i], tuples[b][i]))
                .collect();
            radix.encode(&d)
        }
    };
    tabulate(
        name,
        order,
        zero,
        one,
        Some(labels),
        op(FiniteRing::add),
        op(FiniteRing::mul),
        limits,
    )
}

/// All `n×n` matrices over `base`, entries row-major.
pub fn matrix_ring(n: usize, base: &FiniteRing, limits: &Limits) -> Result<FiniteRing> {
    assert!(n >= 1);
    let radix = Radix::new(vec![base.order(); n * n]);
    let order = limits.check_order(radix.total())?;
    let mats = radix.decode_all();
    let ent = Entries(base);
    let identity: Vec<usize> = (0..n * n)
        .map(|k| if k / n == k % n { base.one() } else { base.zero() })
        .collect();
    tabulate(
        format!("M({n},{})", base.name()),
        order,
        radix.encode(&vec![base.zero(); n * n]),
        radix.encode(&identity),
        Some(mats.iter().map(|m| matrix_label(base, n, n, m)).collect()),
        |a, b| {
            let s: Vec<usize> = (0..n * n).map(|k| base.add(mats[a][k], mats[b][k])).collect();
            radix.encode(&s)
        },
        |a, b| radix.encode(&ent.matmul(n, &mats[a], &mats[b])),
        limits,
    )
}

/// Upper triangular `n×n` matrices; free entries are the positions `i ≤ j` row-major.
pub fn upper_triangular_ring(n: usize, base: &FiniteRing, limits: &Limits) -> Result<FiniteRing> {
    assert!(n >= 1);
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let radix = Radix::new(vec![base.order(); slots.len()]);
    let order = limits.check_order(radix.total())?;
    let full = |d: &[usize]| {
        let mut m = vec![base.zero(); n * n];
        for (&(i, j), &v) in slots.iter().zip(d) {
            m[i * n + j] = v;
        }
        m
    };
    let mats: Vec<Vec<usize>> = radix.decode_all().iter().map(|d| full(d)).collect();
    let pack = |m: &[usize]| radix.encode(&slots.iter().map(|&(i, j)| m[i * n + j]).collect::<Vec<_>>());
    let ent = Entries(base);
    let one: Vec<usize> = slots
        .iter()
        .map(|&(i, j)| if i == j { base.one() } else { base.zero() })
        .collect();
    tabulate(
        format!("T({n},{})", base.name()),
        order,
        radix.encode(&vec![base.zero(); slots.len()]),
        radix.encode(&one),
        Some(mats.iter().map(|m| matrix_label(base, n, n, m)).collect()),
        |a, b| {
            let s: Vec<usize> = (0..n * n).map(|k| base.add(mats[a][k], mats[b][k])).collect();
            pack(&s)
        },
        |a, b| pack(&ent.matmul(n, &mats[a], &mats[b])),
        limits,
    )
}

/// `eRe` together with its embedding into `R`.
#[derive(Clone, Debug)]
pub struct CornerRing {
    pub ring: FiniteRing,
    /// `embedding[i]` is the element of `R` represented by corner element `i`.
    pub embedding: Vec<usize>,
}

pub fn corner_ring(r: &FiniteRing, e: usize, limits: &Limits) -> Result<CornerRing> {
    if e >= r.order() {
        return Err(Error::ElementOutOfRange {
            index: e,
            order: r.order(),
        });
    }
    if !is_idempotent(r, e) {
        return Err(Error::NotIdempotent(e));
    }
    let mut members: Vec<usize> = r.elements().map(|x| r.mul(r.mul(e, x), e)).collect();
    members.sort_unstable();
    members.dedup();
    let mut position = vec![usize::MAX; r.order()];
    for (i, &x) in members.iter().enumerate() {
        position[x] = i;
    }
    let labels = members.iter().map(|&x| r.label(x)).collect();
    let ring = tabulate(
        format!("Corner({},e={e})", r.name()),
        members.len(),
        position[r.zero()],
        position[e],
        Some(labels),
        |a, b| position[r.add(members[a], members[b])],
        |a, b| position[r.mul(members[a], members[b])],
        limits,
    )?;
    Ok(CornerRing {
        ring,
        embedding: members,
    })
}

/// `R/I` with cosets numbered by their smallest member.
#[derive(Clone, Debug)]
pub struct QuotientRing {
    pub ring: FiniteRing,
    /// Coset index of every element of `R`.
    pub projection: Vec<usize>,
    /// Smallest element of each coset.
    pub representatives: Vec<usize>,
}

impl QuotientRing {
    /// Preimage of a set of cosets.
    pub fn pullback(&self, cosets: &ElementSet, kind: SetKind) -> ElementSet {
        ElementSet::from_elems(
            self.projection.len(),
            kind,
            self.projection
                .iter()
                .enumerate()
                .filter(|&(_, &c)| cosets.contains(c))
                .map(|(x, _)| x),
        )
    }
}

pub fn quotient_ring(r: &FiniteRing, ideal: &ElementSet, limits: &Limits) -> Result<QuotientRing> {
    if let Some(w) = ideal.two_sided_violation(r) {
        return Err(Error::NotTwoSidedIdeal { witness: w });
    }
    let members = ideal.elems();
    let mut projection = vec![usize::MAX; r.order()];
    let mut representatives = Vec::new();
    for x in r.elements() {
        if projection[x] == usize::MAX {
            let c = representatives.len();
            representatives.push(x);
            for &i in &members {
                projection[r.add(x, i)] = c;
            }
        }
    }
    let reps = &representatives;
    let proj = &projection;
    let label_of = |x: usize| format!("[{}]", r.label(x));
    let ring = tabulate(
        format!("Quot({},gens={:?})", r.name(), members),
        reps.len(),
        proj[r.zero()],
        proj[r.one()],
        Some(reps.iter().map(|&x| label_of(x)).collect()),
        |a, b| proj[r.add(reps[a], reps[b])],
        |a, b| proj[r.mul(reps[a], reps[b])],
        limits,
    )?;
    Ok(QuotientRing {
        ring,
        projection,
        representatives,
    })
}

/// Quotient by the two-sided ideal generated by `gens`.
pub fn quotient_by_generators(r: &FiniteRing, gens: &[usize], limits: &Limits) -> Result<QuotientRing> {
    for &g in gens {
        if g >= r.order() {
            return Err(Error::ElementOutOfRange {
                index: g,
                order: r.order(),
            });
        }
    }
    let ideal = two_sided_ideal_generated(r, gens.iter().copied());
    quotient_ring(r, &ideal, limits)
}

fn require_central_unit(r: &FiniteRing, s: usize) -> Result<usize> {
    if s >= r.order() {
        return Err(Error::ElementOutOfRange {
            index: s,
            order: r.order(),
        });
    }
    if !unit_mask(r).contains(s) || !is_central(r, s) {
        return Err(Error::NotCentralUnit(s));
    }
    Ok(inverse(r, s).expect("unit has an inverse"))
}

/// Shared body of the two 3×3 subring constructions: free tuples are lifted to
/// `M₃(R)`, multiplied there, and projected back with a closure check.
fn m3_subring(
    base: &FiniteRing,
    name: String,
    arity: usize,
    lift: impl Fn(&[usize]) -> [usize; 9] + Sync,
    project: impl Fn(&[usize; 9]) -> Option<Vec<usize>> + Sync,
    limits: &Limits,
) -> Result<FiniteRing> {
    let radix = Radix::new(vec![base.order(); arity]);
    let order = limits.check_order(radix.total())?;
    let mats: Vec<[usize; 9]> = radix.decode_all().iter().map(|d| lift(d)).collect();
    let ent = Entries(base);
    let find = |m: &[usize; 9], a: usize, b: usize| -> Result<usize> {
        project(m)
            .map(|d| radix.encode(&d))
            .ok_or_else(|| Error::ClosureViolation(vec![a, b]))
    };
    // closure over every pair is verified up front
    let pairs: Result<Vec<(usize, usize)>> = (0..order * order)
        .into_par_iter()
        .map(|k| {
            let (a, b) = (k / order, k % order);
            let p: [usize; 9] = ent.matmul(3, &mats[a], &mats[b]).try_into().unwrap();
            let s: [usize; 9] = std::array::from_fn(|i| base.add(mats[a][i], mats[b][i]));
            Ok((find(&s, a, b)?, find(&p, a, b)?))
        })
        .collect();
    let pairs = pairs?;
    let zero = find(&[base.zero(); 9], 0, 0)?;
    let mut id = [base.zero(); 9];
    for i in 0..3 {
        id[i * 4] = base.one();
    }
    let one = find(&id, 0, 0)?;
    tabulate(
        name,
        order,
        zero,
        one,
        Some(mats.iter().map(|m| matrix_label(base, 3, 3, m)).collect()),
        |a, b| pairs[a * order + b].0,
        |a, b| pairs[a * order + b].1,
        limits,
    )
}

/// `H_(s,t)(R)`: matrices `[[a,0,0],[c,d,e],[0,0,f]]` with `a−d = sc`, `d−f = te`,
/// parametrized by the free triple `(c, d, e)`.
pub fn hst_ring(base: &FiniteRing, s: usize, t: usize, limits: &Limits) -> Result<FiniteRing> {
    require_central_unit(base, s)?;
    require_central_unit(base, t)?;
    let z = base.zero();
    m3_subring(
        base,
        format!("Hst({},s={s},t={t})", base.name()),
        3,
        |d| {
            let (c, dd, e) = (d[0], d[1], d[2]);
            let a = base.add(dd, base.mul(s, c));
            let f = base.sub(dd, base.mul(t, e));
            [a, z, z, c, dd, e, z, z, f]
        },
        |m| {
            let (c, d, e) = (m[3], m[4], m[5]);
            let ok = [m[1], m[2], m[6], m[7]].iter().all(|&x| x == z)
                && base.sub(m[0], d) == base.mul(s, c)
                && base.sub(d, m[8]) == base.mul(t, e);
            ok.then(|| vec![c, d, e])
        },
        limits,
    )
}

/// `L_(s,t)(R)`: matrices `[[a,0,0],[sc,d,te],[0,0,f]]` on the free tuple `(a,c,d,e,f)`.
pub fn lst_ring(base: &FiniteRing, s: usize, t: usize, limits: &Limits) -> Result<FiniteRing> {
    let s_inv = require_central_unit(base, s)?;
    let t_inv = require_central_unit(base, t)?;
    let z = base.zero();
    m3_subring(
        base,
        format!("Lst({},s={s},t={t})", base.name()),
        5,
        |d| {
            let (a, c, dd, e, f) = (d[0], d[1], d[2], d[3], d[4]);
            [a, z, z, base.mul(s, c), dd, base.mul(t, e), z, z, f]
        },
        |m| {
            let ok = [m[1], m[2], m[6], m[7]].iter().all(|&x| x == z);
            ok.then(|| vec![m[0], base.mul(s_inv, m[3]), m[4], base.mul(t_inv, m[5]), m[8]])
        },
        limits,
    )
}

/// Generalized matrix ring `K_s(R)` on tuples `(a, x, y, b)` ~ `[[a,x],[y,b]]`,
/// with the cross terms of the diagonal scaled by the central element `s`.
pub fn ks_ring(base: &FiniteRing, s: usize, limits: &Limits) -> Result<FiniteRing> {
    if s >= base.order() {
        return Err(Error::ElementOutOfRange {
            index: s,
            order: base.order(),
        });
    }
    if !is_central(base, s) {
        return Err(Error::NotCentral(s));
    }
    let radix = Radix::new(vec![base.order(); 4]);
    let order = limits.check_order(radix.total())?;
    let q = radix.decode_all();
    let r = base;
    let name = if s == base.zero() {
        format!("K0({})", base.name())
    } else {
        format!("Ks({},s={s})", base.name())
    };
    tabulate(
        name,
        order,
        radix.encode(&[r.zero(); 4]),
        radix.encode(&[r.one(), r.zero(), r.zero(), r.one()]),
        Some(q.iter().map(|m| matrix_label(r, 2, 2, m)).collect()),
        |i, j| {
            let d: Vec<usize> = (0..4).map(|k| r.add(q[i][k], q[j][k])).collect();
            radix.encode(&d)
        },
        |i, j| {
            let ([a1, x1, y1, b1], [a2, x2, y2, b2]) = (
                [q[i][0], q[i][1], q[i][2], q[i][3]],
                [q[j][0], q[j][1], q[j][2], q[j][3]],
            );
            let tl = r.add(r.mul(a1, a2), r.mul(s, r.mul(x1, y2)));
            let tr = r.add(r.mul(a1, x2), r.mul(x1, b2));
            let bl = r.add(r.mul(y1, a2), r.mul(b1, y2));
            let br = r.add(r.mul(s, r.mul(y1, x2)), r.mul(b1, b2));
            radix.encode(&[tl, tr, bl, br])
        },
        limits,
    )
}

pub fn k0_ring(base: &FiniteRing, limits: &Limits) -> Result<FiniteRing> {
    ks_ring(base, base.zero(), limits)
}

/// Formal triangular ring `[[S, M], [0, T]]` on tuples `(s, m, t)`.
pub fn formal_triangular(
    s_ring: &FiniteRing,
    t_ring: &FiniteRing,
    m: &Bimodule,
    limits: &Limits,
) -> Result<FiniteRing> {
    m.validate(s_ring, t_ring)?;
    let radix = Radix::new(vec![s_ring.order(), m.order(), t_ring.order()]);
    let order = limits.check_order(radix.total())?;
    let q = radix.decode_all();
    tabulate(
        format!("Tri({},{}{})", s_ring.name(), t_ring.name(), m.name_suffix("m")),
        order,
        radix.encode(&[s_ring.zero(), m.zero_elem(), t_ring.zero()]),
        radix.encode(&[s_ring.one(), m.zero_elem(), t_ring.one()]),
        Some(
            q.iter()
                .map(|d| {
                    format!(
                        "[[{},{}],[0,{}]]",
                        s_ring.label(d[0]),
                        m.label(d[1]),
                        t_ring.label(d[2])
                    )
                })
                .collect(),
        ),
        |i, j| {
            radix.encode(&[
                s_ring.add(q[i][0], q[j][0]),
                m.add(q[i][1], q[j][1]),
                t_ring.add(q[i][2], q[j][2]),
            ])
        },
        |i, j| {
            let (a, b) = (&q[i], &q[j]);
            radix.encode(&[
                s_ring.mul(a[0], b[0]),
                m.add(m.left(a[0], b[1]), m.right(a[1], b[2])),
                t_ring.mul(a[2], b[2]),
            ])
        },
        limits,
    )
}

/// Morita context `[[A, M], [N, B]]` with both context products zero, on
/// tuples `(a, m, n, b)`. `m` is an A-B bimodule and `n` a B-A bimodule.
pub fn trivial_morita(
    a_ring: &FiniteRing,
    b_ring: &FiniteRing,
    m: &Bimodule,
    n: &Bimodule,
    limits: &Limits,
) -> Result<FiniteRing> {
    m.validate(a_ring, b_ring)?;
    n.validate(b_ring, a_ring)?;
    let radix = Radix::new(vec![a_ring.order(), m.order(), n.order(), b_ring.order()]);
    let order = limits.check_order(radix.total())?;
    let q = radix.decode_all();
    tabulate(
        format!(
            "Morita({},{}{}{})",
            a_ring.name(),
            b_ring.name(),
            m.name_suffix("m"),
            n.name_suffix("n")
        ),
        order,
        radix.encode(&[a_ring.zero(), m.zero_elem(), n.zero_elem(), b_ring.zero()]),
        radix.encode(&[a_ring.one(), m.zero_elem(), n.zero_elem(), b_ring.one()]),
        Some(
            q.iter()
                .map(|d| {
                    format!(
                        "[[{},{}],[{},{}]]",
                        a_ring.label(d[0]),
                        m.label(d[1]),
                        n.label(d[2]),
                        b_ring.label(d[3])
                    )
                })
                .collect(),
        ),
        |i, j| {
            radix.encode(&[
                a_ring.add(q[i][0], q[j][0]),
                m.add(q[i][1], q[j][1]),
                n.add(q[i][2], q[j][2]),
                b_ring.add(q[i][3], q[j][3]),
            ])
        },
        |i, j| {
            let (x, y) = (&q[i], &q[j]);
            radix.encode(&[
                a_ring.mul(x[0], y[0]),
                m.add(m.left(x[0], y[1]), m.right(x[1], y[3])),
                n.add(n.left(x[3], y[2]), n.right(x[2], y[0])),
                b_ring.mul(x[3], y[3]),
            ])
        },
        limits,
    )
}

/// Component digits of an element of a ring built from `bases`.
pub fn decode_element(bases: &[usize], idx: usize) -> Vec<usize> {
    Radix::new(bases.to_vec()).decode(idx)
}
