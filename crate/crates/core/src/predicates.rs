//! Ring-level predicates with re-checkable witnesses.
//!
//! Every predicate scans exhaustively. A false verdict carries the
//! lexicographically first witness; `method` names the roles of its entries.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::construct::{quotient_ring, QuotientRing};
use crate::elements::{double_commutant, is_nilpotent, unit_mask};
use crate::error::{Error, Result};
use crate::ideals::{jacobson_by_units, RingAnalysis};
use crate::ring::{ElementSet, FiniteRing};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Vec<usize>>,
    pub method: String,
}

impl Verdict {
    fn from_search(found: Option<Vec<usize>>, method: impl Into<String>) -> Self {
        Verdict {
            verdict: found.is_none(),
            witness: found,
            method: method.into(),
        }
    }

    pub fn holds(&self) -> bool {
        self.verdict
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyReport {
    pub ring: String,
    pub results: BTreeMap<String, Verdict>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Predicate {
    True,
    Commutative,
    Reversible,
    JReversible,
    DeltaReversible,
    Abelian,
    Reduced,
    Semisimple,
    Local,
    DeltaClean,
    DeltaQuasipolar,
    DeltaLinearArmendariz,
    IdempotentsLift,
    CornerContainment,
    QuotientAbelian,
    QuotientReduced,
    DeltaSharpEqualsDelta,
    SocleInJacobson,
    SocleQuotientJReversible,
}

impl Predicate {
    pub const ALL: [Predicate; 19] = [
        Predicate::True,
        Predicate::Commutative,
        Predicate::Reversible,
        Predicate::JReversible,
        Predicate::DeltaReversible,
        Predicate::Abelian,
        Predicate::Reduced,
        Predicate::Semisimple,
        Predicate::Local,
        Predicate::DeltaClean,
        Predicate::DeltaQuasipolar,
        Predicate::DeltaLinearArmendariz,
        Predicate::IdempotentsLift,
        Predicate::CornerContainment,
        Predicate::QuotientAbelian,
        Predicate::QuotientReduced,
        Predicate::DeltaSharpEqualsDelta,
        Predicate::SocleInJacobson,
        Predicate::SocleQuotientJReversible,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Predicate::True => "true",
            Predicate::Commutative => "commutative",
            Predicate::Reversible => "reversible",
            Predicate::JReversible => "j-reversible",
            Predicate::DeltaReversible => "delta-reversible",
            Predicate::Abelian => "abelian",
            Predicate::Reduced => "reduced",
            Predicate::Semisimple => "semisimple",
            Predicate::Local => "local",
            Predicate::DeltaClean => "delta-clean",
            Predicate::DeltaQuasipolar => "delta-quasipolar",
            Predicate::DeltaLinearArmendariz => "delta-linear-armendariz",
            Predicate::IdempotentsLift => "idempotents-lift",
            Predicate::CornerContainment => "corner-containment",
            Predicate::QuotientAbelian => "quotient-abelian",
            Predicate::QuotientReduced => "quotient-reduced",
            Predicate::DeltaSharpEqualsDelta => "delta-sharp-equals-delta",
            Predicate::SocleInJacobson => "socle-in-jacobson",
            Predicate::SocleQuotientJReversible => "socle-quotient-j-reversible",
        }
    }

    pub fn evaluate(self, a: &RingAnalysis) -> Result<Verdict> {
        let r = a.ring();
        Ok(match self {
            Predicate::True => Verdict::from_search(None, "constant"),
            Predicate::Commutative => Verdict::from_search(
                first_pair(r, |x, y| r.mul(x, y) != r.mul(y, x)),
                "pair scan: witness (a, b) with ab != ba",
            ),
            Predicate::Reversible => Verdict::from_search(
                zero_product_violation(r, |ba| ba == r.zero()),
                "definition scan: witness (a, b) with ab = 0, ba != 0",
            ),
            Predicate::JReversible => Verdict::from_search(
                zero_product_violation(r, |ba| a.jacobson().contains(ba)),
                "definition scan: witness (a, b) with ab = 0, ba not in J(R)",
            ),
            Predicate::DeltaReversible => is_delta_reversible(a)?,
            Predicate::Abelian => is_abelian(r),
            Predicate::Reduced => is_reduced(r)?,
            Predicate::Semisimple => is_semisimple(a)?,
            Predicate::Local => is_local(a),
            Predicate::DeltaClean => Verdict::from_search(
                r.elements()
                    .find(|&x| !a.idempotents().iter().any(|&e| a.delta().contains(r.sub(x, e))))
                    .map(|x| vec![x]),
                "decomposition scan: witness x with x - e outside delta(R) for every idempotent e",
            ),
            Predicate::DeltaQuasipolar => is_delta_quasipolar(a),
            Predicate::DeltaLinearArmendariz => is_delta_linear_armendariz(a)?,
            Predicate::IdempotentsLift => idempotents_lift(a),
            Predicate::CornerContainment => Verdict::from_search(
                corner_violation(a),
                "idempotent scan: witness (e, x) with ex(1-e) or (1-e)xe outside delta(R)",
            ),
            Predicate::QuotientAbelian => {
                let q = delta_quotient(a)?;
                lift_witness(&q, is_abelian(&q.ring), "on R/delta(R): ")
            }
            Predicate::QuotientReduced => {
                let q = delta_quotient(a)?;
                lift_witness(&q, is_reduced(&q.ring)?, "on R/delta(R): ")
            }
            Predicate::DeltaSharpEqualsDelta => Verdict::from_search(
                a.delta_sharp().iter().find(|&x| !a.delta().contains(x)).map(|x| vec![x]),
                "power scan: witness x with a power in delta(R), x outside delta(R)",
            ),
            Predicate::SocleInJacobson => Verdict::from_search(
                a.socle().iter().find(|&x| !a.jacobson().contains(x)).map(|x| vec![x]),
                "witness x in Soc(R_R) outside J(R)",
            ),
            Predicate::SocleQuotientJReversible => {
                let q = quotient_ring(r, a.socle(), a.limits())?;
                let j = jacobson_by_units(&q.ring);
                let v = Verdict::from_search(
                    zero_product_violation(&q.ring, |ba| j.contains(ba)),
                    "definition scan: witness (a, b) with ab = 0, ba not in J",
                );
                lift_witness(&q, v, "on R/Soc(R_R): ")
            }
        })
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        Predicate::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnknownPredicate(s.to_string()))
    }
}

fn first_pair(r: &FiniteRing, bad: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    r.elements()
        .flat_map(|x| r.elements().map(move |y| (x, y)))
        .find(|&(x, y)| bad(x, y))
        .map(|(x, y)| vec![x, y])
}

/// First `(a, b)` with `ab = 0` and `ok(ba)` false.
fn zero_product_violation(r: &FiniteRing, ok: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    first_pair(r, |x, y| r.mul(x, y) == r.zero() && !ok(r.mul(y, x)))
}

/// Outcome of each δ-reversibility route.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReversibleRoutes {
    /// `ab = 0 ⇒ ba ∈ δ(R)`; witness `(a, b)`.
    pub definition: Option<Vec<usize>>,
    /// `r² = 0 ⇒ r ∈ δ(R)`; witness `r`.
    pub square_zero: Option<Vec<usize>>,
    /// `r² = 0 ⇒ rm − mr ∈ δ(R)`; witness `(r, m)`.
    pub square_zero_commutator: Option<Vec<usize>>,
    /// `a·l(a) ⊆ δ(R)`; witness `(a, x)` with `xa = 0`, `ax ∉ δ(R)`.
    pub left_annihilator: Option<Vec<usize>>,
    /// `r(a)·a ⊆ δ(R)`; witness `(a, x)` with `ax = 0`, `xa ∉ δ(R)`.
    pub right_annihilator: Option<Vec<usize>>,
}

impl DeltaReversibleRoutes {
    pub fn verdicts(&self) -> [(&'static str, bool); 5] {
        [
            ("definition", self.definition.is_none()),
            ("square-zero", self.square_zero.is_none()),
            ("square-zero-commutator", self.square_zero_commutator.is_none()),
            ("left-annihilator", self.left_annihilator.is_none()),
            ("right-annihilator", self.right_annihilator.is_none()),
        ]
    }

    pub fn agree(&self) -> bool {
        let v = self.verdicts();
        v.iter().all(|(_, b)| *b == v[0].1)
    }
}

pub fn delta_reversible_routes(a: &RingAnalysis) -> DeltaReversibleRoutes {
    let r = a.ring();
    let d = a.delta();
    let square_zero: Vec<usize> = r.elements().filter(|&x| r.mul(x, x) == r.zero()).collect();
    DeltaReversibleRoutes {
        definition: zero_product_violation(r, |ba| d.contains(ba)),
        square_zero: square_zero.iter().find(|&&x| !d.contains(x)).map(|&x| vec![x]),
        square_zero_commutator: square_zero.iter().find_map(|&x| {
            r.elements()
                .find(|&m| !d.contains(r.sub(r.mul(x, m), r.mul(m, x))))
                .map(|m| vec![x, m])
        }),
        left_annihilator: first_pair(r, |x, y| r.mul(y, x) == r.zero() && !d.contains(r.mul(x, y))),
        right_annihilator: first_pair(r, |x, y| r.mul(x, y) == r.zero() && !d.contains(r.mul(y, x))),
    }
}

/// Decided by the definition; the square-zero and annihilator routes must agree.
pub fn is_delta_reversible(a: &RingAnalysis) -> Result<Verdict> {
    let routes = delta_reversible_routes(a);
    if !routes.agree() {
        let detail = routes
            .verdicts()
            .iter()
            .map(|(n, b)| format!("{n}={b}"))
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::CharacterizationMismatch(format!(
            "delta-reversible routes disagree on {}: {detail}",
            a.ring().name()
        )));
    }
    Ok(Verdict::from_search(
        routes.definition,
        "definition scan, square-zero and annihilator routes agree: witness (a, b) with ab = 0, ba not in delta(R)",
    ))
}

pub fn is_abelian(r: &FiniteRing) -> Verdict {
    let found = r
        .elements()
        .filter(|&e| r.mul(e, e) == e)
        .find_map(|e| r.elements().find(|&x| r.mul(e, x) != r.mul(x, e)).map(|x| vec![e, x]));
    Verdict::from_search(found, "idempotent scan: witness (e, x) with ex != xe")
}

pub fn is_reduced(r: &FiniteRing) -> Result<Verdict> {
    let nilpotent = r.elements().find(|&x| x != r.zero() && is_nilpotent(r, x));
    let square_zero = r.elements().find(|&x| x != r.zero() && r.mul(x, x) == r.zero());
    if nilpotent.is_some() != square_zero.is_some() {
        return Err(Error::cross_check(
            "reduced: nilpotent scan vs square-zero scan",
            nilpotent.or(square_zero).into_iter().collect(),
        ));
    }
    Ok(Verdict::from_search(
        nilpotent.map(|x| vec![x]),
        "nilpotent scan, square-zero scan agrees: witness nonzero nilpotent x",
    ))
}

pub fn is_semisimple(a: &RingAnalysis) -> Result<Verdict> {
    let outside = a.ring().elements().find(|&x| !a.delta().contains(x));
    let j_zero = a.jacobson().len() == 1;
    if outside.is_none() != j_zero {
        return Err(Error::cross_check(
            "semisimple: delta(R) = R vs J(R) = 0",
            outside.into_iter().collect(),
        ));
    }
    Ok(Verdict::from_search(
        outside.map(|x| vec![x]),
        "delta(R) = R, cross-checked with J(R) = 0: witness x outside delta(R)",
    ))
}

/// Exactly one maximal right ideal. A failure witness is a pair of non-units
/// with unit sum (empty for the zero ring).
pub fn is_local(a: &RingAnalysis) -> Verdict {
    let r = a.ring();
    if a.lattice().maximal.len() == 1 {
        return Verdict::from_search(None, "lattice scan: one maximal right ideal");
    }
    let units = unit_mask(r);
    let pair = first_pair(r, |x, y| {
        !units.contains(x) && !units.contains(y) && units.contains(r.add(x, y))
    });
    Verdict {
        verdict: false,
        witness: Some(pair.unwrap_or_default()),
        method: format!(
            "lattice scan: {} maximal right ideals; witness non-units (a, b) with a + b a unit",
            a.lattice().maximal.len()
        ),
    }
}

/// As-used form: every `a` has an idempotent `p ∈ comm²(a)` with `a + p ∈ δ(R)`.
pub fn is_delta_quasipolar(a: &RingAnalysis) -> Verdict {
    let r = a.ring();
    let found = r.elements().find(|&x| {
        let cc = double_commutant(r, x);
        !a
            .idempotents()
            .iter()
            .any(|&p| cc.contains(p) && a.delta().contains(r.add(x, p)))
    });
    Verdict::from_search(
        found.map(|x| vec![x]),
        "as-used definition (p idempotent in comm2(a), a + p in delta(R)): witness a with no such p",
    )
}

/// Spectral idempotents of `x` under the as-used definition.
pub fn spectral_idempotents(a: &RingAnalysis, x: usize) -> Vec<usize> {
    let r = a.ring();
    let cc = double_commutant(r, x);
    a.idempotents()
        .iter()
        .copied()
        .filter(|&p| cc.contains(p) && a.delta().contains(r.add(x, p)))
        .collect()
}

pub fn is_delta_linear_armendariz(a: &RingAnalysis) -> Result<Verdict> {
    let r = a.ring();
    let cap = a.limits().armendariz_cap;
    if r.order() > cap {
        return Err(Error::SizeCap {
            order: r.order() as u128,
            cap,
        });
    }
    let d = a.delta();
    let zero_pairs: Vec<(usize, usize)> = r
        .elements()
        .flat_map(|x| r.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| r.mul(x, y) == r.zero())
        .collect();
    // a0b0 = a1b1 = 0 lie in δ already, and a0b1 = −a1b0, so one cross term suffices
    let found = zero_pairs.iter().find_map(|&(a0, b0)| {
        zero_pairs.iter().find_map(|&(a1, b1)| {
            let (x, y) = (r.mul(a0, b1), r.mul(a1, b0));
            (r.add(x, y) == r.zero() && !d.contains(x)).then(|| vec![a0, a1, b0, b1])
        })
    });
    Ok(Verdict::from_search(
        found,
        "zero-product quadruple scan: witness (a0, a1, b0, b1) for (a0 + a1 x)(b0 + b1 x) = 0 with a0b1 not in delta(R)",
    ))
}

pub fn idempotents_lift(a: &RingAnalysis) -> Verdict {
    let r = a.ring();
    let d = a.delta();
    let found = r.elements().find(|&f| {
        d.contains(r.sub(r.mul(f, f), f)) && !a.idempotents().iter().any(|&e| d.contains(r.sub(e, f)))
    });
    Verdict::from_search(
        found.map(|f| vec![f]),
        "witness f with f^2 - f in delta(R) and no idempotent e with e - f in delta(R)",
    )
}

pub fn corner_violation(a: &RingAnalysis) -> Option<Vec<usize>> {
    let r = a.ring();
    let d = a.delta();
    a.idempotents().iter().find_map(|&e| {
        let f = r.sub(r.one(), e);
        r.elements()
            .find(|&x| {
                !d.contains(r.mul(r.mul(e, x), f)) || !d.contains(r.mul(r.mul(f, x), e))
            })
            .map(|x| vec![e, x])
    })
}

fn delta_quotient(a: &RingAnalysis) -> Result<QuotientRing> {
    quotient_ring(a.ring(), a.delta(), a.limits())
}

/// Rewrites a verdict on `R/I` so its witness names coset representatives in `R`.
fn lift_witness(q: &QuotientRing, mut v: Verdict, prefix: &str) -> Verdict {
    if let Some(w) = &mut v.witness {
        for x in w.iter_mut() {
            *x = q.representatives[*x];
        }
    }
    v.method = format!("{prefix}{}; witness as coset representatives", v.method);
    v
}

/// `I ∩ δ(R)` for an ideal `I`; the first `(a, b)` in `I` with `ab = 0` and
/// `ba ∉ I ∩ δ(R)`.
pub fn ideal_reversibility_violation(a: &RingAnalysis, ideal: &ElementSet) -> Option<Vec<usize>> {
    let r = a.ring();
    let mut meet: BitSet = ideal.bits().clone();
    meet.intersect_with(a.delta().bits());
    ideal.iter().find_map(|x| {
        ideal
            .iter()
            .find(|&y| r.mul(x, y) == r.zero() && !meet.contains(r.mul(y, x)))
            .map(|y| vec![x, y])
    })
}

pub fn check_properties(a: &RingAnalysis, preds: &[Predicate]) -> Result<PropertyReport> {
    let mut results = BTreeMap::new();
    for &p in preds {
        results.insert(p.name().to_string(), p.evaluate(a)?);
    }
    Ok(PropertyReport {
        ring: a.ring().name().to_string(),
        results,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{k0_ring, make_zn, matrix_ring, upper_triangular_ring};
    use crate::ring::Limits;

    fn analysis(r: FiniteRing) -> RingAnalysis {
        RingAnalysis::new(r, &Limits::default()).unwrap()
    }

    fn eval(a: &RingAnalysis, p: Predicate) -> Verdict {
        p.evaluate(a).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for p in Predicate::ALL {
            assert_eq!(p.name().parse::<Predicate>().unwrap(), p);
        }
        assert!(matches!("nope".parse::<Predicate>(), Err(Error::UnknownPredicate(_))));
    }

    #[test]
    fn commutative_rings_are_reversible() {
        let a = analysis(make_zn(6));
        for p in [Predicate::Reversible, Predicate::JReversible, Predicate::DeltaReversible] {
            assert!(eval(&a, p).verdict);
        }
        assert!(eval(&a, Predicate::Reduced).verdict);
    }

    #[test]
    fn triangular_ring_is_not_reversible() {
        let l = Limits::default();
        let t = analysis(upper_triangular_ring(2, &make_zn(2), &l).unwrap());
        let v = eval(&t, Predicate::Reversible);
        assert!(!v.verdict);
        let w = v.witness.unwrap();
        let r = t.ring();
        assert_eq!(r.mul(w[0], w[1]), r.zero());
        assert_ne!(r.mul(w[1], w[0]), r.zero());
        // digits (x11, x12, x22): E22 = 1, E12 = 2
        assert_eq!(w, vec![1, 2]);
        assert!(!eval(&analysis(matrix_ring(2, &make_zn(2), &l).unwrap()), Predicate::Reversible).verdict);
    }

    #[test]
    fn abelian_local_reduced() {
        let l = Limits::default();
        let m = analysis(matrix_ring(2, &make_zn(2), &l).unwrap());
        let v = eval(&m, Predicate::Abelian);
        assert!(!v.verdict);
        let w = v.witness.unwrap();
        let r = m.ring();
        assert_eq!(r.mul(w[0], w[0]), w[0]);
        assert_ne!(r.mul(w[0], w[1]), r.mul(w[1], w[0]));
        // E11 is among the non-central idempotents
        assert!(r.elements().any(|x| r.mul(8, x) != r.mul(x, 8)));

        let z4 = analysis(make_zn(4));
        assert!(eval(&z4, Predicate::Local).verdict);
        assert!(!eval(&z4, Predicate::Reduced).verdict);
        let z6 = analysis(make_zn(6));
        let v = eval(&z6, Predicate::Local);
        assert!(!v.verdict);
        let w = v.witness.unwrap();
        assert_eq!(w, vec![2, 3]);
    }

    #[test]
    fn delta_clean_and_quasipolar() {
        let z4 = analysis(make_zn(4));
        assert!(eval(&z4, Predicate::DeltaClean).verdict);
        assert!(eval(&analysis(make_zn(5)), Predicate::DeltaQuasipolar).verdict);
        assert!(eval(&z4, Predicate::DeltaLinearArmendariz).verdict);
        assert!(eval(&z4, Predicate::IdempotentsLift).verdict);
    }

    #[test]
    fn delta_sharp_separates_on_k0() {
        let k = analysis(k0_ring(&make_zn(2), &Limits::default()).unwrap());
        let v = eval(&k, Predicate::DeltaSharpEqualsDelta);
        assert!(v.verdict, "{v:?}");
        let m = analysis(matrix_ring(2, &make_zn(4), &Limits::default()).unwrap());
        let v = eval(&m, Predicate::DeltaSharpEqualsDelta);
        assert!(!v.verdict);
        let x = v.witness.unwrap()[0];
        assert!(!m.delta().contains(x));
    }

    #[test]
    fn matrix_ring_over_z4_is_not_delta_reversible() {
        let m = analysis(matrix_ring(2, &make_zn(4), &Limits::default()).unwrap());
        let v = eval(&m, Predicate::DeltaReversible);
        assert!(!v.verdict);
        let w = v.witness.unwrap();
        let r = m.ring();
        assert_eq!(r.mul(w[0], w[1]), r.zero());
        assert!(!m.delta().contains(r.mul(w[1], w[0])));
        assert!(!eval(&m, Predicate::CornerContainment).verdict);
    }

    #[test]
    fn armendariz_cap_is_enforced() {
        let l = Limits {
            armendariz_cap: 4,
            ..Limits::default()
        };
        let a = RingAnalysis::new(make_zn(5), &l).unwrap();
        assert!(matches!(
            Predicate::DeltaLinearArmendariz.evaluate(&a),
            Err(Error::SizeCap { .. })
        ));
    }

    #[test]
    fn report_serializes_sorted() {
        let a = analysis(make_zn(4));
        let rep = check_properties(&a, &[Predicate::Reversible, Predicate::Abelian]).unwrap();
        let json = serde_json::to_string(&rep).unwrap();
        assert_eq!(
            json,
            r#"{"ring":"Zn(4)","results":{"abelian":{"verdict":true,"method":"idempotent scan: witness (e, x) with ex != xe"},"reversible":{"verdict":true,"method":"definition scan: witness (a, b) with ab = 0, ba != 0"}}}"#
        );
    }
}
