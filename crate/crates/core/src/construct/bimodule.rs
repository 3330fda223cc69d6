use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::FiniteRing;

/// A finite `S`-`T` bimodule given by its additive table and two action tables.
///
/// `left[s][m]` is `s·m` and `right[m][t]` is `m·t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bimodule {
    pub order: usize,
    pub zero: usize,
    pub add: Vec<Vec<usize>>,
    pub left: Vec<Vec<usize>>,
    pub right: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    /// Short tag used in ring names; `None` for user-supplied tables.
    #[serde(skip)]
    pub tag: Option<&'static str>,
}

impl Bimodule {
    /// `R` acting on itself by multiplication on both sides.
    pub fn regular(r: &FiniteRing) -> Self {
        let n = r.order();
        let table = |f: &dyn Fn(usize, usize) -> usize| -> Vec<Vec<usize>> {
            (0..n).map(|a| (0..n).map(|b| f(a, b)).collect()).collect()
        };
        Bimodule {
            order: n,
            zero: r.zero(),
            add: table(&|a, b| r.add(a, b)),
            left: table(&|a, b| r.mul(a, b)),
            right: table(&|a, b| r.mul(a, b)),
            labels: r.labels().map(|l| l.to_vec()),
            tag: Some("self"),
        }
    }

    /// The zero module over any pair of rings.
    pub fn zero() -> Self {
        Bimodule {
            order: 1,
            zero: 0,
            add: vec![vec![0]],
            left: Vec::new(),
            right: Vec::new(),
            labels: None,
            tag: Some("zero"),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn zero_elem(&self) -> usize {
        self.zero
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a][b]
    }

    pub fn left(&self, s: usize, m: usize) -> usize {
        if self.order == 1 {
            return self.zero;
        }
        self.left[s][m]
    }

    pub fn right(&self, m: usize, t: usize) -> usize {
        if self.order == 1 {
            return self.zero;
        }
        self.right[m][t]
    }

    pub fn label(&self, m: usize) -> String {
        match &self.labels {
            Some(l) => l[m].clone(),
            None => m.to_string(),
        }
    }

    pub(crate) fn name_suffix(&self, slot: &str) -> String {
        match self.tag {
            Some("self") => String::new(),
            Some(tag) => format!(",{slot}={tag}"),
            None => format!(",{slot}=custom"),
        }
    }

    /// Exhaustive check of the abelian-group and bimodule axioms against `s_ring` and `t_ring`.
    pub fn validate(&self, s_ring: &FiniteRing, t_ring: &FiniteRing) -> Result<()> {
        let n = self.order;
        let bad = |axiom: &'static str, witness: Vec<usize>| Error::BimoduleAxiomViolation { axiom, witness };
        if n == 0 || self.zero >= n || self.add.len() != n || self.add.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("bimodule addition table".into()));
        }
        if n == 1 {
            return Ok(());
        }
        let (sn, tn) = (s_ring.order(), t_ring.order());
        if self.left.len() != sn
            || self.left.iter().any(|r| r.len() != n)
            || self.right.len() != n
            || self.right.iter().any(|r| r.len() != tn)
        {
            return Err(Error::DimensionMismatch("bimodule action tables".into()));
        }
        if self
            .add
            .iter()
            .chain(&self.left)
            .chain(&self.right)
            .flatten()
            .any(|&v| v >= n)
        {
            return Err(Error::DimensionMismatch("bimodule entry out of range".into()));
        }
        let z = self.zero;
        let add = |a: usize, b: usize| self.add[a][b];
        for a in 0..n {
            if add(z, a) != a {
                return Err(bad("additive-identity", vec![a]));
            }
            if !(0..n).any(|b| add(a, b) == z) {
                return Err(bad("additive-inverse", vec![a]));
            }
            for b in 0..n {
                if add(a, b) != add(b, a) {
                    return Err(bad("additive-commutativity", vec![a, b]));
                }
                for c in 0..n {
                    if add(add(a, b), c) != add(a, add(b, c)) {
                        return Err(bad("additive-associativity", vec![a, b, c]));
                    }
                }
            }
        }
        let l = |s: usize, m: usize| self.left[s][m];
        let r = |m: usize, t: usize| self.right[m][t];
        for m in 0..n {
            if l(s_ring.one(), m) != m {
                return Err(bad("left-unital", vec![m]));
            }
            if r(m, t_ring.one()) != m {
                return Err(bad("right-unital", vec![m]));
            }
        }
        for s in 0..sn {
            for m in 0..n {
                for k in 0..n {
                    if l(s, add(m, k)) != add(l(s, m), l(s, k)) {
                        return Err(bad("left-additive", vec![s, m, k]));
                    }
                }
                for s2 in 0..sn {
                    if l(s_ring.add(s, s2), m) != add(l(s, m), l(s2, m)) {
                        return Err(bad("left-distributive", vec![s, s2, m]));
                    }
                    if l(s_ring.mul(s, s2), m) != l(s, l(s2, m)) {
                        return Err(bad("left-associative", vec![s, s2, m]));
                    }
                }
                for t in 0..tn {
                    if r(l(s, m), t) != l(s, r(m, t)) {
                        return Err(bad("bimodule-compatibility", vec![s, m, t]));
                    }
                }
            }
        }
        for t in 0..tn {
            for m in 0..n {
                for k in 0..n {
                    if r(add(m, k), t) != add(r(m, t), r(k, t)) {
                        return Err(bad("right-additive", vec![m, k, t]));
                    }
                }
                for t2 in 0..tn {
                    if r(m, t_ring.add(t, t2)) != add(r(m, t), r(m, t2)) {
                        return Err(bad("right-distributive", vec![m, t, t2]));
                    }
                    if r(m, t_ring.mul(t, t2)) != r(r(m, t), t2) {
                        return Err(bad("right-associative", vec![m, t, t2]));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::make_zn;

    #[test]
    fn regular_module_is_valid() {
        let z4 = make_zn(4);
        Bimodule::regular(&z4).validate(&z4, &z4).unwrap();
        Bimodule::zero().validate(&z4, &make_zn(3)).unwrap();
    }

    #[test]
    fn broken_action_is_rejected() {
        let z2 = make_zn(2);
        let mut m = Bimodule::regular(&z2);
        m.left[1][1] = 0;
        assert!(matches!(
            m.validate(&z2, &z2),
            Err(Error::BimoduleAxiomViolation { axiom: "left-unital", .. })
        ));
    }

    #[test]
    fn regular_module_needs_matching_rings() {
        let z2 = make_zn(2);
        let m = Bimodule::regular(&z2);
        assert!(m.validate(&z2, &make_zn(3)).is_err());
    }
}
