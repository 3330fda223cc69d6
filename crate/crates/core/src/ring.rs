//! Table-based finite unital rings.
//!
//! Elements are opaque indices `0..n`. All structure lives in the addition and
//! multiplication tables, which are validated exhaustively on construction.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Operational caps shared by every module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    /// Hard upper bound on ring order.
    pub size_cap: usize,
    /// Maximum number of right ideals in a lattice.
    pub lattice_cap: usize,
    /// Maximum order for the linear Armendariz scan.
    pub armendariz_cap: usize,
    /// Maximum order for the lattice-quantified radical characterizations
    /// (largest delta-small ideal, faithful singular simple modules).
    pub lattice_check_cap: usize,
}

/// Orders above this log a warning.
pub const WARN_ORDER: usize = 1024;

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_cap: 4096,
            lattice_cap: 100_000,
            armendariz_cap: 128,
            lattice_check_cap: 32,
        }
    }
}

impl Limits {
    pub fn check_order(&self, order: u128) -> Result<usize> {
        if order > self.size_cap as u128 {
            return Err(Error::SizeCap {
                order,
                cap: self.size_cap,
            });
        }
        if order > WARN_ORDER as u128 {
            log::warn!("ring of order {order} is above {WARN_ORDER}; cubic checks will be slow");
        }
        Ok(order as usize)
    }
}

/// Serialized ring tables, exactly as they appear in ring JSON files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawRing {
    pub name: String,
    pub order: usize,
    pub zero: usize,
    pub one: usize,
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

/// A validated finite ring with identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteRing {
    name: String,
    order: usize,
    zero: usize,
    one: usize,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    labels: Option<Vec<String>>,
}

impl FiniteRing {
    /// Builds and validates a ring from flat row-major tables.
    pub fn from_tables(
        name: impl Into<String>,
        zero: usize,
        one: usize,
        add: Vec<u32>,
        mul: Vec<u32>,
        labels: Option<Vec<String>>,
        limits: &Limits,
    ) -> Result<Self> {
        let n = (add.len() as f64).sqrt().round() as usize;
        if n == 0 || n * n != add.len() {
            return Err(Error::DimensionMismatch(format!(
                "addition table has {} entries, not a nonzero square",
                add.len()
            )));
        }
        if mul.len() != add.len() {
            return Err(Error::DimensionMismatch(format!(
                "multiplication table has {} entries, expected {}",
                mul.len(),
                add.len()
            )));
        }
        limits.check_order(n as u128)?;
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "{} labels for {n} elements",
                    l.len()
                )));
            }
        }
        for &i in [zero, one].iter() {
            if i >= n {
                return Err(Error::ElementOutOfRange { index: i, order: n });
            }
        }
        if let Some(&bad) = add.iter().chain(&mul).find(|&&v| v as usize >= n) {
            return Err(Error::ElementOutOfRange {
                index: bad as usize,
                order: n,
            });
        }
        let mut ring = FiniteRing {
            name: name.into(),
            order: n,
            zero,
            one,
            add,
            mul,
            neg: Vec::new(),
            labels,
        };
        ring.validate()?;
        Ok(ring)
    }

    pub fn from_raw(raw: RawRing, limits: &Limits) -> Result<Self> {
        let n = raw.order;
        let check = |t: &[Vec<usize>], what: &str| -> Result<Vec<u32>> {
            if t.len() != n || t.iter().any(|row| row.len() != n) {
                return Err(Error::DimensionMismatch(format!(
                    "{what} table is not {n}x{n}"
                )));
            }
            Ok(t.iter().flatten().map(|&v| v as u32).collect())
        };
        if n == 0 {
            return Err(Error::DimensionMismatch("order must be positive".into()));
        }
        if let Some(&bad) = raw
            .add
            .iter()
            .chain(&raw.mul)
            .flatten()
            .find(|&&v| v >= n)
        {
            return Err(Error::ElementOutOfRange { index: bad, order: n });
        }
        let add = check(&raw.add, "addition")?;
        let mul = check(&raw.mul, "multiplication")?;
        FiniteRing::from_tables(raw.name, raw.zero, raw.one, add, mul, raw.labels, limits)
    }

    pub fn from_json(text: &str, limits: &Limits) -> Result<Self> {
        let raw: RawRing = serde_json::from_str(text)?;
        FiniteRing::from_raw(raw, limits)
    }

    pub fn load(path: impl AsRef<Path>, limits: &Limits) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        FiniteRing::from_json(&text, limits)
    }

    pub fn to_raw(&self) -> RawRing {
        let n = self.order;
        let rows = |t: &[u32]| -> Vec<Vec<usize>> {
            t.chunks(n)
                .map(|r| r.iter().map(|&v| v as usize).collect())
                .collect()
        };
        RawRing {
            name: self.name.clone(),
            order: n,
            zero: self.zero,
            one: self.one,
            add: rows(&self.add),
            mul: rows(&self.mul),
            labels: self.labels.clone(),
        }
    }

    /// Compact ring JSON terminated by a newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(&self.to_raw()).expect("ring tables serialize");
        s.push('\n');
        s
    }

    fn validate(&mut self) -> Result<()> {
        let n = self.order;
        let (z, one) = (self.zero, self.one);
        let fail = |axiom: &'static str, witness: Vec<usize>| Error::AxiomViolation { axiom, witness };

        if let Some(a) = (0..n).find(|&a| self.add(z, a) != a || self.add(a, z) != a) {
            return Err(fail("additive-identity", vec![a]));
        }
        for a in 0..n {
            for b in a + 1..n {
                if self.add(a, b) != self.add(b, a) {
                    return Err(fail("additive-commutativity", vec![a, b]));
                }
            }
        }
        let mut neg = vec![u32::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| self.add(a, b) == z) {
                Some(b) => neg[a] = b as u32,
                None => return Err(fail("additive-inverse", vec![a])),
            }
        }
        if !self.laws_hold_on_generators() {
            self.scan_laws()?;
        }
        if n > 1 && z == one {
            return Err(fail("zero-distinct-from-one", vec![z]));
        }
        self.neg = neg;
        Ok(())
    }

    /// Exhaustive scan of the remaining axioms, reporting the first failing triple.
    fn scan_laws(&self) -> Result<()> {
        let n = self.order;
        let one = self.one;
        let fail = |axiom: &'static str, witness: Vec<usize>| Error::AxiomViolation { axiom, witness };
        let (add, mul) = (&self.add[..], &self.mul[..]);
        fn row_of(t: &[u32], n: usize, a: usize) -> &[u32] {
            &t[a * n..(a + 1) * n]
        }
        let row = |t, a| row_of(t, n, a);
        // (a+b)+c = a+(b+c)
        if let Some(w) = self.find_triple(|a, b| {
            let (ab, rb, ra) = (row(add, add[a * n + b] as usize), row(add, b), row(add, a));
            ab.iter().zip(rb).position(|(&x, &bc)| x != ra[bc as usize])
        }) {
            return Err(fail("additive-associativity", w));
        }
        if let Some(a) = (0..n).find(|&a| self.mul(one, a) != a || self.mul(a, one) != a) {
            return Err(fail("multiplicative-identity", vec![a]));
        }
        // (ab)c = a(bc)
        if let Some(w) = self.find_triple(|a, b| {
            let (ab, rb, ra) = (row(mul, mul[a * n + b] as usize), row(mul, b), row(mul, a));
            ab.iter().zip(rb).position(|(&x, &bc)| x != ra[bc as usize])
        }) {
            return Err(fail("multiplicative-associativity", w));
        }
        // a(b+c) = ab+ac
        if let Some(w) = self.find_triple(|a, b| {
            let (ra, rb) = (row(mul, a), row(add, b));
            let rab = row(add, ra[b] as usize);
            rb.iter().zip(ra).position(|(&bc, &ac)| ra[bc as usize] != rab[ac as usize])
        }) {
            return Err(fail("left-distributivity", w));
        }
        // (b+c)a = ba+ca, scanned with a as the outer index
        if let Some(w) = self.find_triple(|a, b| {
            let rb = row(add, b);
            let rba = row(add, mul[b * n + a] as usize);
            (0..n).position(|c| mul[rb[c] as usize * n + a] != rba[mul[c * n + a] as usize])
        }) {
            return Err(fail("right-distributivity", w));
        }
        Ok(())
    }

    /// Associativity and distributivity with the last argument restricted to an
    /// additive generating set. Each identity is additive in that argument once
    /// the additive group axioms hold, so passing here implies passing everywhere.
    fn laws_hold_on_generators(&self) -> bool {
        let n = self.order;
        let gens = additive_generators(self);
        let one = self.one;
        if (0..n).any(|a| self.mul(one, a) != a || self.mul(a, one) != a) {
            return false;
        }
        (0..n).into_par_iter().all(|a| {
            (0..n).all(|b| {
                gens.iter().all(|&g| {
                    self.add(self.add(a, b), g) == self.add(a, self.add(b, g))
                        && self.mul(self.mul(a, b), g) == self.mul(a, self.mul(b, g))
                        && self.mul(a, self.add(b, g)) == self.add(self.mul(a, b), self.mul(a, g))
                        && self.mul(self.add(b, g), a) == self.add(self.mul(b, a), self.mul(g, a))
                })
            })
        })
    }

    /// Lexicographically first triple `(a, b, c)` reported by `bad(a, b) = Some(c)`,
    /// scanned in parallel over `a`.
    fn find_triple(&self, bad: impl Fn(usize, usize) -> Option<usize> + Sync) -> Option<Vec<usize>> {
        let n = self.order;
        (0..n)
            .into_par_iter()
            .find_map_first(|a| (0..n).find_map(|b| bad(a, b).map(|c| vec![a, b, c])))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => a.to_string(),
        }
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.order + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    #[inline]
    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// `k·a` for a non-negative integer `k`.
    pub fn scale(&self, k: usize, a: usize) -> usize {
        (0..k).fold(self.zero, |acc, _| self.add(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Row `a` of the multiplication table as a set: the principal right ideal `aR`.
    pub fn right_multiples(&self, a: usize) -> BitSet {
        let n = self.order;
        BitSet::from_elems(n, self.mul[a * n..(a + 1) * n].iter().map(|&v| v as usize))
    }

    pub fn left_multiples(&self, a: usize) -> BitSet {
        BitSet::from_elems(self.order, (0..self.order).map(|r| self.mul(r, a)))
    }
}

/// Role tag for an element subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SetKind {
    Subset,
    RightIdeal,
    TwoSidedIdeal,
}

/// A subset of ring elements, stored as a membership bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ElementSet {
    kind: SetKind,
    members: BitSet,
}

impl ElementSet {
    pub fn new(kind: SetKind, members: BitSet) -> Self {
        ElementSet { kind, members }
    }

    pub fn subset(members: BitSet) -> Self {
        ElementSet::new(SetKind::Subset, members)
    }

    pub fn from_elems(order: usize, kind: SetKind, elems: impl IntoIterator<Item = usize>) -> Self {
        ElementSet::new(kind, BitSet::from_elems(order, elems))
    }

    /// Checks the closure conditions `kind` claims and returns the set with that tag.
    pub fn checked(ring: &FiniteRing, kind: SetKind, members: BitSet) -> Result<Self> {
        let set = ElementSet::new(SetKind::Subset, members);
        match kind {
            SetKind::Subset => {}
            SetKind::RightIdeal => {
                if let Some(w) = set.right_ideal_violation(ring) {
                    return Err(Error::cross_check("right-ideal closure", w));
                }
            }
            SetKind::TwoSidedIdeal => {
                if let Some(w) = set.two_sided_violation(ring) {
                    return Err(Error::NotTwoSidedIdeal { witness: w });
                }
            }
        }
        Ok(ElementSet { kind, ..set })
    }

    pub fn kind(&self) -> SetKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: SetKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn bits(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.contains(a)
    }

    pub fn len(&self) -> usize {
        self.members.count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_full(&self) -> bool {
        self.members.is_full()
    }

    pub fn elems(&self) -> Vec<usize> {
        self.members.to_vec()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members.is_subset(&other.members)
    }

    /// First failure of right-ideal closure: `[a]` (zero/negation), `[a, b]`
    /// (sum) or `[a, r]` (right multiple).
    pub fn right_ideal_violation(&self, ring: &FiniteRing) -> Option<Vec<usize>> {
        if !self.contains(ring.zero()) {
            return Some(vec![ring.zero()]);
        }
        let elems = self.elems();
        for &a in &elems {
            if !self.contains(ring.neg(a)) {
                return Some(vec![a]);
            }
            for &b in &elems {
                if !self.contains(ring.add(a, b)) {
                    return Some(vec![a, b]);
                }
            }
            for r in ring.elements() {
                if !self.contains(ring.mul(a, r)) {
                    return Some(vec![a, r]);
                }
            }
        }
        None
    }

    pub fn two_sided_violation(&self, ring: &FiniteRing) -> Option<Vec<usize>> {
        if let Some(w) = self.right_ideal_violation(ring) {
            return Some(w);
        }
        for a in self.iter() {
            for r in ring.elements() {
                if !self.contains(ring.mul(r, a)) {
                    return Some(vec![r, a]);
                }
            }
        }
        None
    }
}

impl Serialize for ElementSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.members.iter())
    }
}

/// Greedy generators: every element is reachable from zero by repeatedly adding one of them.
fn additive_generators(r: &FiniteRing) -> Vec<usize> {
    let n = r.order;
    let mut reached = vec![false; n];
    reached[r.zero] = true;
    let mut gens = Vec::new();
    while let Some(g) = (0..n).find(|&x| !reached[x]) {
        gens.push(g);
        let mut stack: Vec<usize> = (0..n).filter(|&x| reached[x]).collect();
        while let Some(x) = stack.pop() {
            for &h in &gens {
                let y = r.add(x, h);
                if !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    gens
}

/// Validates candidate tables.
pub fn validate_ring(raw: RawRing) -> Result<FiniteRing> {
    FiniteRing::from_raw(raw, &Limits::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn_raw(k: usize) -> RawRing {
        RawRing {
            name: format!("Zn({k})"),
            order: k,
            zero: 0,
            one: 1 % k,
            add: (0..k).map(|a| (0..k).map(|b| (a + b) % k).collect()).collect(),
            mul: (0..k).map(|a| (0..k).map(|b| (a * b) % k).collect()).collect(),
            labels: None,
        }
    }

    #[test]
    fn z4_is_valid() {
        let r = validate_ring(zn_raw(4)).unwrap();
        assert_eq!(r.order(), 4);
        assert_eq!(r.neg(1), 3);
        assert_eq!(r.mul(2, 3), 2);
    }

    #[test]
    fn zero_ring_is_valid() {
        let r = validate_ring(zn_raw(1)).unwrap();
        assert_eq!(r.order(), 1);
        assert_eq!(r.zero(), r.one());
    }

    #[test]
    fn tampered_multiplication_is_rejected() {
        let mut raw = zn_raw(4);
        raw.mul[2][2] = 1;
        match validate_ring(raw) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert!(
                    axiom == "multiplicative-associativity" || axiom.ends_with("distributivity"),
                    "{axiom}"
                );
                assert_eq!(witness.len(), 3);
            }
            other => panic!("expected axiom violation, got {other:?}"),
        }
    }

    #[test]
    fn tampered_witness_reproduces() {
        let mut raw = zn_raw(4);
        raw.mul[2][2] = 1;
        let (add, mul) = (raw.add.clone(), raw.mul.clone());
        let Err(Error::AxiomViolation { axiom, witness }) = validate_ring(raw) else {
            panic!()
        };
        let (a, b, c) = (witness[0], witness[1], witness[2]);
        let broken = match axiom {
            "multiplicative-associativity" => mul[mul[a][b]][c] != mul[a][mul[b][c]],
            "left-distributivity" => mul[a][add[b][c]] != add[mul[a][b]][mul[a][c]],
            "right-distributivity" => mul[add[b][c]][a] != add[mul[b][a]][mul[c][a]],
            other => panic!("{other}"),
        };
        assert!(broken);
    }

    #[test]
    fn ragged_tables_are_rejected() {
        let mut raw = zn_raw(3);
        raw.add[1].pop();
        assert!(matches!(validate_ring(raw), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn zero_equal_one_rejected_for_nontrivial_ring() {
        let mut raw = zn_raw(2);
        raw.one = 0;
        assert!(matches!(
            validate_ring(raw),
            Err(Error::AxiomViolation { axiom: "multiplicative-identity", .. })
        ));
    }

    #[test]
    fn size_cap_enforced() {
        let limits = Limits {
            size_cap: 3,
            ..Limits::default()
        };
        assert!(matches!(
            FiniteRing::from_raw(zn_raw(4), &limits),
            Err(Error::SizeCap { order: 4, cap: 3 })
        ));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let r = validate_ring(zn_raw(5)).unwrap();
        let text = r.to_json();
        let back = FiniteRing::from_json(&text, &Limits::default()).unwrap();
        assert_eq!(back.to_json(), text);
        assert!(text.starts_with(r#"{"name":"Zn(5)","order":5,"zero":0,"one":1,"add":[[0,1,2,3,4],"#));
    }
}
