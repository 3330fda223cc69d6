//! Theorem registry, corpus presets and counterexample hunting.
//!
//! Each case is an implication (or identity) checked ring by ring. Proved
//! statements are assertions, claims taken as open are observations, and
//! remarks that only promise an example are exhibits. The corpus is analysed in
//! parallel; every report is assembled in corpus order, so the output does not
//! depend on the number of worker threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::path::Path;
use std::str::FromStr;
use std::sync::Mutex;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{
    build, corner_ring, decode_element, enumerate_unital_rings, parse_expr, ModuleSpec, RingExpr,
};
use crate::elements::{central_units, is_nilpotent};
use crate::error::{Error, Result};
use crate::ideals::RingAnalysis;
use crate::predicates::{
    delta_reversible_routes, ideal_reversibility_violation, spectral_idempotents, Predicate, Verdict,
};
use crate::ring::{FiniteRing, Limits};

pub const DEFAULT_PRESET: &str = "default-v1";
pub const SMALL_PRESET: &str = "small-v1";
pub const CORPUS_ENV: &str = "RINGLAB_CORPUS";

/// Explicit choice, then `RINGLAB_CORPUS`, then the default preset.
pub fn resolve_corpus_spec(explicit: Option<&str>) -> String {
    explicit
        .map(str::to_string)
        .or_else(|| std::env::var(CORPUS_ENV).ok().filter(|s| !s.trim().is_empty()))
        .unwrap_or_else(|| DEFAULT_PRESET.to_string())
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub label: String,
    pub expr: RingExpr,
    pub ring: FiniteRing,
}

#[derive(Clone, Debug)]
pub struct Corpus {
    pub spec: String,
    pub entries: Vec<CorpusEntry>,
}

impl Corpus {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn zn(k: usize) -> RingExpr {
    RingExpr::Zn(k)
}

fn boxed(e: RingExpr) -> Box<RingExpr> {
    Box::new(e)
}

fn default_bases(limits: &Limits) -> Result<Vec<RingExpr>> {
    let mut out: Vec<RingExpr> = (1..=9).map(zn).collect();
    for k in 1..=8 {
        let count = enumerate_unital_rings(k, true, limits)?.len();
        out.extend((1..=count).map(|i| RingExpr::Enumerated(k, i)));
    }
    for k in 2..=4 {
        out.push(RingExpr::Matrix(2, boxed(zn(k))));
    }
    for k in 2..=4 {
        out.push(RingExpr::Triangular(2, boxed(zn(k))));
    }
    for k in 2..=4 {
        out.push(RingExpr::K0(boxed(zn(k))));
    }
    for k in 2..=4 {
        let cu = central_units(&crate::construct::make_zn(k));
        for &s in &cu {
            for &t in &cu {
                out.push(RingExpr::Hst(boxed(zn(k)), s, t));
            }
        }
    }
    for k in 2..=4 {
        let cu = central_units(&crate::construct::make_zn(k));
        for &s in &cu {
            for &t in &cu {
                out.push(RingExpr::Lst(boxed(zn(k)), s, t));
            }
        }
    }
    out.push(RingExpr::Product(vec![zn(2), zn(4)]));
    for k in [2, 3] {
        out.push(RingExpr::FormalTri(boxed(zn(k)), boxed(zn(k)), ModuleSpec::Regular));
    }
    for k in [2, 3] {
        out.push(RingExpr::MoritaTrivial(
            boxed(zn(k)),
            boxed(zn(k)),
            ModuleSpec::Regular,
            ModuleSpec::Regular,
        ));
    }
    Ok(out)
}

fn small_bases(limits: &Limits) -> Result<Vec<RingExpr>> {
    let mut out: Vec<RingExpr> = (1..=6).map(zn).collect();
    for k in 1..=4 {
        let count = enumerate_unital_rings(k, true, limits)?.len();
        out.extend((1..=count).map(|i| RingExpr::Enumerated(k, i)));
    }
    out.extend([
        RingExpr::Matrix(2, boxed(zn(2))),
        RingExpr::Matrix(2, boxed(zn(3))),
        RingExpr::Triangular(2, boxed(zn(2))),
        RingExpr::K0(boxed(zn(2))),
        RingExpr::Hst(boxed(zn(2)), 1, 1),
        RingExpr::Lst(boxed(zn(2)), 1, 1),
        RingExpr::Product(vec![zn(2), zn(3)]),
        RingExpr::FormalTri(boxed(zn(2)), boxed(zn(2)), ModuleSpec::Regular),
        RingExpr::MoritaTrivial(boxed(zn(2)), boxed(zn(2)), ModuleSpec::Regular, ModuleSpec::Regular),
    ]);
    Ok(out)
}

fn entry(expr: RingExpr, limits: &Limits) -> Result<CorpusEntry> {
    let ring = build(&expr, limits)?;
    Ok(CorpusEntry {
        label: ring.name().to_string(),
        expr,
        ring,
    })
}

/// Bases followed by their corners at every idempotent.
fn with_corners(bases: Vec<RingExpr>, limits: &Limits) -> Result<Vec<CorpusEntry>> {
    let built: Result<Vec<CorpusEntry>> = bases.into_par_iter().map(|e| entry(e, limits)).collect();
    let built = built?;
    let corners: Result<Vec<Vec<CorpusEntry>>> = built
        .par_iter()
        .map(|b| {
            crate::elements::idempotents(&b.ring)
                .iter()
                .map(|e| {
                    let expr = RingExpr::Corner(boxed(b.expr.clone()), e);
                    let mut ring = corner_ring(&b.ring, e, limits)?.ring;
                    ring.set_name(expr.to_string());
                    Ok(CorpusEntry {
                        label: ring.name().to_string(),
                        expr,
                        ring,
                    })
                })
                .collect()
        })
        .collect();
    let mut out = built;
    out.extend(corners?.into_iter().flatten());
    Ok(out)
}

fn parse_list(text: &str) -> Result<Vec<RingExpr>> {
    text.split(['\n', ';'])
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(parse_expr)
        .collect()
}

/// A preset name, `@file` with one expression per line, or expressions separated by `;`.
pub fn build_corpus(spec: &str, limits: &Limits) -> Result<Corpus> {
    let spec = spec.trim();
    let entries = match spec {
        DEFAULT_PRESET | "default" => with_corners(default_bases(limits)?, limits)?,
        SMALL_PRESET | "small" => with_corners(small_bases(limits)?, limits)?,
        _ => {
            let exprs = match spec.strip_prefix('@') {
                Some(path) => parse_list(&std::fs::read_to_string(Path::new(path))?)?,
                None => parse_list(spec)?,
            };
            let built: Result<Vec<CorpusEntry>> = exprs.into_par_iter().map(|e| entry(e, limits)).collect();
            built?
        }
    };
    if entries.is_empty() {
        return Err(Error::UnknownCorpus(spec.to_string()));
    }
    Ok(Corpus {
        spec: spec.to_string(),
        entries,
    })
}

struct CornerData {
    e: usize,
    embedding: Vec<usize>,
    analysis: RingAnalysis,
}

/// Analysis of one ring plus memoized predicate verdicts.
struct Ctx {
    label: String,
    expr: RingExpr,
    analysis: RingAnalysis,
    corners: Vec<CornerData>,
    cache: Mutex<BTreeMap<Predicate, Verdict>>,
}

impl Ctx {
    fn new(label: String, expr: RingExpr, ring: FiniteRing, with_corners: bool, limits: &Limits) -> Result<Self> {
        let analysis = RingAnalysis::new(ring, limits)?;
        let corners = if with_corners {
            analysis
                .idempotents()
                .par_iter()
                .map(|&e| {
                    let c = corner_ring(analysis.ring(), e, limits)?;
                    Ok(CornerData {
                        e,
                        embedding: c.embedding,
                        analysis: RingAnalysis::new(c.ring, limits)?,
                    })
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            Vec::new()
        };
        Ok(Ctx {
            label,
            expr,
            analysis,
            corners,
            cache: Mutex::new(BTreeMap::new()),
        })
    }

    fn ring(&self) -> &FiniteRing {
        self.analysis.ring()
    }

    /// δ-reversibility is taken from the definition route here; route agreement
    /// is its own case so a disagreement is reported rather than aborting the run.
    fn verdict(&self, p: Predicate) -> Result<Verdict> {
        if let Some(v) = self.cache.lock().unwrap().get(&p) {
            return Ok(v.clone());
        }
        let v = match p {
            Predicate::DeltaReversible => delta_reversible(&self.analysis),
            _ => p.evaluate(&self.analysis)?,
        };
        self.cache.lock().unwrap().insert(p, v.clone());
        Ok(v)
    }

    fn holds(&self, p: Predicate) -> Result<bool> {
        Ok(self.verdict(p)?.verdict)
    }
}

fn delta_reversible(a: &RingAnalysis) -> Verdict {
    let d = delta_reversible_routes(a).definition;
    Verdict {
        verdict: d.is_none(),
        witness: d,
        method: "definition scan: witness (a, b) with ab = 0, ba not in delta(R)".into(),
    }
}

/// Corpus contexts plus analyses of component rings that are not corpus members.
struct World<'a> {
    limits: &'a Limits,
    ctxs: Vec<Ctx>,
    extras: Vec<Ctx>,
    index: HashMap<String, (bool, usize)>,
}

fn components(expr: &RingExpr) -> Vec<RingExpr> {
    use RingExpr::*;
    match expr {
        Product(parts) => parts.clone(),
        Matrix(_, r) | Triangular(_, r) | Hst(r, ..) | Lst(r, ..) | K0(r) | Ks(r, _) | Corner(r, _) => {
            vec![(**r).clone()]
        }
        FormalTri(a, b, _) | MoritaTrivial(a, b, ..) => vec![(**a).clone(), (**b).clone()],
        _ => Vec::new(),
    }
}

impl<'a> World<'a> {
    fn new(corpus: &Corpus, limits: &'a Limits) -> Result<Self> {
        let ctxs: Vec<Ctx> = corpus
            .entries
            .par_iter()
            .map(|e| Ctx::new(e.label.clone(), e.expr.clone(), e.ring.clone(), true, limits))
            .collect::<Result<_>>()?;
        let mut index: HashMap<String, (bool, usize)> = HashMap::new();
        for (i, c) in ctxs.iter().enumerate() {
            index.entry(c.label.clone()).or_insert((false, i));
        }
        let mut missing: Vec<RingExpr> = Vec::new();
        for c in &ctxs {
            if matches!(c.expr, RingExpr::Corner(..)) {
                continue;
            }
            for child in components(&c.expr) {
                let key = child.to_string();
                if !index.contains_key(&key) && !missing.iter().any(|m| m.to_string() == key) {
                    missing.push(child);
                }
            }
        }
        let extras: Vec<Ctx> = missing
            .into_par_iter()
            .map(|e| {
                let ring = build(&e, limits)?;
                Ctx::new(e.to_string(), e, ring, false, limits)
            })
            .collect::<Result<_>>()?;
        for (i, c) in extras.iter().enumerate() {
            index.insert(c.label.clone(), (true, i));
        }
        Ok(World {
            limits,
            ctxs,
            extras,
            index,
        })
    }

    fn child(&self, expr: &RingExpr) -> &Ctx {
        let (extra, i) = self.index[&expr.to_string()];
        if extra {
            &self.extras[i]
        } else {
            &self.ctxs[i]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CaseKind {
    /// A proved statement: a counterexample means an implementation fault or a false claim.
    Assertion,
    /// A claim checked empirically; either outcome is a finding.
    Observation,
    /// Passes when the corpus contains an example of the described phenomenon.
    Exhibit,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CaseVerdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

impl fmt::Display for CaseVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CaseVerdict::Pass => "PASS",
            CaseVerdict::Fail => "FAIL",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub ring: String,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub id: String,
    #[serde(rename = "paper_ref")]
    pub statement: String,
    pub kind: CaseKind,
    pub verdict: CaseVerdict,
    pub rings_in_scope: usize,
    pub hypothesis_held: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Finding>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub example: Option<Finding>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tool_version: String,
    pub corpus: String,
    pub corpus_size: usize,
    pub caps: Limits,
    pub notes: Vec<String>,
    pub cases: Vec<CaseReport>,
}

impl SuiteReport {
    pub fn case(&self, id: &str) -> Option<&CaseReport> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// Assertions and exhibits that failed.
    pub fn failures(&self) -> Vec<&CaseReport> {
        self.cases
            .iter()
            .filter(|c| c.kind != CaseKind::Observation && c.verdict == CaseVerdict::Fail)
            .collect()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Suite report\n");
        let _ = writeln!(s, "- tool_version: {}", self.tool_version);
        let _ = writeln!(s, "- corpus: {}", self.corpus);
        let _ = writeln!(s, "- corpus_size: {}", self.corpus_size);
        let _ = writeln!(
            s,
            "- caps: size_cap={}, lattice_cap={}, armendariz_cap={}, lattice_check_cap={}",
            self.caps.size_cap, self.caps.lattice_cap, self.caps.armendariz_cap, self.caps.lattice_check_cap
        );
        for n in &self.notes {
            let _ = writeln!(s, "- note: {n}");
        }
        let _ = writeln!(s, "\n| id | kind | verdict | in scope | hypothesis held | statement |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for c in &self.cases {
            let kind = serde_json::to_value(c.kind).unwrap();
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                c.id,
                kind.as_str().unwrap_or_default(),
                c.verdict,
                c.rings_in_scope,
                c.hypothesis_held,
                c.statement.replace('|', "\\|")
            );
        }
        for c in &self.cases {
            for (tag, f) in [("counterexample", &c.counterexample), ("example", &c.example)] {
                if let Some(f) = f {
                    let _ = writeln!(
                        s,
                        "\n## {} {tag}\n\n- ring: {}\n- witness: {:?}\n- detail: {}",
                        c.id,
                        f.ring,
                        f.witness,
                        f.detail
                    );
                }
            }
        }
        s
    }
}

/// Per-ring outcome of one case.
enum Outcome {
    OutOfScope,
    Vacuous,
    Holds,
    Violated(Vec<usize>, String),
}

type Eval = fn(&World, &Ctx) -> Result<Outcome>;

struct CaseDef {
    id: &'static str,
    statement: &'static str,
    kind: CaseKind,
    eval: Eval,
}

fn implication(c: &Ctx, hyp: &[Predicate], concl: Predicate) -> Result<Outcome> {
    for &h in hyp {
        if !c.holds(h)? {
            return Ok(Outcome::Vacuous);
        }
    }
    let v = c.verdict(concl)?;
    Ok(if v.verdict {
        Outcome::Holds
    } else {
        Outcome::Violated(v.witness.unwrap_or_default(), format!("{concl} fails: {}", v.method))
    })
}

fn first_difference(a: &crate::bitset::BitSet, b: &crate::bitset::BitSet) -> Option<usize> {
    a.first_outside(b).or_else(|| b.first_outside(a))
}

fn radical_agreement(w: &World, c: &Ctx) -> Result<Outcome> {
    let a = &c.analysis;
    let d = a.delta().bits();
    let mut sets = vec![
        ("essential-maximal intersection", a.r1()),
        ("socle-quotient pullback", a.socle_pullback()?),
        ("direct-summand set", a.r3_set()),
        ("semisimple-complement set", a.r5_set()),
    ];
    if a.ring().order() <= w.limits.lattice_check_cap {
        sets.push(("largest delta-small right ideal", a.r2()?));
        sets.push(("faithful singular simple module ideals", a.r4()?));
    }
    for (name, s) in sets {
        if let Some(x) = first_difference(&s, d) {
            return Ok(Outcome::Violated(vec![x], format!("{name} differs from delta(R) at element {x}")));
        }
    }
    Ok(Outcome::Holds)
}

fn radical_chain(_: &World, c: &Ctx) -> Result<Outcome> {
    let a = &c.analysis;
    let (j, d, s) = (a.jacobson(), a.delta(), a.socle());
    let sharp = a.delta_sharp();
    if let Some(x) = j.bits().first_outside(d.bits()) {
        return Ok(Outcome::Violated(vec![x], "J(R) not inside delta(R)".into()));
    }
    if let Some(x) = d.bits().first_outside(sharp.bits()) {
        return Ok(Outcome::Violated(vec![x], "delta(R) not inside delta#(R)".into()));
    }
    if let Some(x) = s.bits().first_outside(d.bits()) {
        return Ok(Outcome::Violated(vec![x], "Soc(R_R) not inside delta(R)".into()));
    }
    if d.is_full() != (j.len() == 1) {
        return Ok(Outcome::Violated(vec![], "delta(R) = R and J(R) = 0 disagree".into()));
    }
    Ok(Outcome::Holds)
}

fn semiprime(_: &World, c: &Ctx) -> Result<Outcome> {
    Ok(match c.analysis.semiprime_violation(c.analysis.delta()) {
        None => Outcome::Holds,
        Some(x) => Outcome::Violated(vec![x], "aRa inside delta(R) with a outside".into()),
    })
}

fn socle_case(_: &World, c: &Ctx) -> Result<Outcome> {
    if !c.holds(Predicate::SocleInJacobson)? {
        return Ok(Outcome::Vacuous);
    }
    let (d, j) = (c.verdict(Predicate::DeltaReversible)?, c.verdict(Predicate::JReversible)?);
    Ok(if d.verdict == j.verdict {
        Outcome::Holds
    } else {
        let w = d.witness.or(j.witness).unwrap_or_default();
        Outcome::Violated(w, format!("delta-reversible={} but j-reversible={}", d.verdict, j.verdict))
    })
}

fn routes_agree(_: &World, c: &Ctx) -> Result<Outcome> {
    let r = delta_reversible_routes(&c.analysis);
    if r.agree() {
        return Ok(Outcome::Holds);
    }
    let detail: Vec<String> = r.verdicts().iter().map(|(n, b)| format!("{n}={b}")).collect();
    let w = [
        &r.definition,
        &r.square_zero,
        &r.square_zero_commutator,
        &r.left_annihilator,
        &r.right_annihilator,
    ]
    .into_iter()
    .find_map(|x| x.clone())
    .unwrap_or_default();
    Ok(Outcome::Violated(w, detail.join(", ")))
}

fn ideals_case(_: &World, c: &Ctx) -> Result<Outcome> {
    if !c.holds(Predicate::DeltaReversible)? {
        return Ok(Outcome::Vacuous);
    }
    for ideal in c.analysis.two_sided_ideals() {
        if let Some(w) = ideal_reversibility_violation(&c.analysis, ideal) {
            return Ok(Outcome::Violated(
                w,
                format!("ab = 0 in the ideal {:?} but ba is outside it or outside delta(R)", ideal.elems()),
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn both_ways(lhs: bool, rhs: bool, detail: impl FnOnce() -> (Vec<usize>, String)) -> Outcome {
    if lhs == rhs {
        Outcome::Holds
    } else {
        let (w, d) = detail();
        Outcome::Violated(w, d)
    }
}

fn product_iff(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Product(parts) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let mut all = true;
    let mut failing = None;
    for p in parts {
        if !w.child(p).holds(Predicate::DeltaReversible)? {
            all = false;
            failing.get_or_insert_with(|| p.to_string());
        }
    }
    let whole = c.verdict(Predicate::DeltaReversible)?;
    Ok(both_ways(whole.verdict, all, || {
        (
            whole.witness.clone().unwrap_or_default(),
            format!(
                "product delta-reversible={}, factors all delta-reversible={all} (first failing factor: {})",
                whole.verdict,
                failing.unwrap_or_else(|| "none".into())
            ),
        )
    }))
}

fn corner_iff(_: &World, c: &Ctx) -> Result<Outcome> {
    let whole = c.holds(Predicate::DeltaReversible)?;
    let bad = c
        .corners
        .iter()
        .find(|k| !delta_reversible(&k.analysis).verdict)
        .map(|k| k.e);
    Ok(both_ways(whole, bad.is_none(), || {
        (
            bad.into_iter().collect(),
            format!("ring delta-reversible={whole}; corner eRe at the witness idempotent is not"),
        )
    }))
}

fn armendariz_case(w: &World, c: &Ctx) -> Result<Outcome> {
    if c.ring().order() > w.limits.armendariz_cap {
        return Ok(Outcome::OutOfScope);
    }
    implication(c, &[Predicate::DeltaReversible], Predicate::DeltaLinearArmendariz)
}

fn quasipolar_case(_: &World, c: &Ctx) -> Result<Outcome> {
    if !c.holds(Predicate::DeltaQuasipolar)? {
        return Ok(Outcome::Vacuous);
    }
    let a = &c.analysis;
    let r = a.ring();
    for x in r.elements().filter(|&x| is_nilpotent(r, x)) {
        if let Some(p) = spectral_idempotents(a, x).into_iter().find(|&p| !a.delta().contains(p)) {
            return Ok(Outcome::Violated(
                vec![x, p],
                "nilpotent a with spectral idempotent p outside delta(R)".into(),
            ));
        }
    }
    implication(c, &[], Predicate::DeltaReversible)
}

/// Digits of `x` in a ring built as tuples over `bases`.
fn digits(bases: &[usize], x: usize) -> Vec<usize> {
    decode_element(bases, x)
}

/// Compares δ(R) with the set of elements whose chosen digits lie in the given radicals.
fn shape_check(
    c: &Ctx,
    bases: &[usize],
    constraints: &[(usize, &crate::ring::ElementSet)],
    equality: bool,
) -> Outcome {
    let shape = |x: usize| {
        let d = digits(bases, x);
        constraints.iter().all(|(i, set)| set.contains(d[*i]))
    };
    let delta = c.analysis.delta();
    for x in c.ring().elements() {
        let (inside, fits) = (delta.contains(x), shape(x));
        if inside && !fits {
            return Outcome::Violated(vec![x], "element of delta(R) outside the predicted shape".into());
        }
        if equality && fits && !inside {
            return Outcome::Violated(vec![x], "element of the predicted shape outside delta(R)".into());
        }
    }
    Outcome::Holds
}

fn product_formula(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Product(parts) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let kids: Vec<&Ctx> = parts.iter().map(|p| w.child(p)).collect();
    let bases: Vec<usize> = kids.iter().map(|k| k.ring().order()).collect();
    let cons: Vec<(usize, &crate::ring::ElementSet)> =
        kids.iter().enumerate().map(|(i, k)| (i, k.analysis.delta())).collect();
    Ok(shape_check(c, &bases, &cons, true))
}

fn corner_formula(_: &World, c: &Ctx) -> Result<Outcome> {
    let r = c.ring();
    let d = c.analysis.delta();
    for k in &c.corners {
        let e = k.e;
        let predicted: std::collections::BTreeSet<usize> =
            d.iter().map(|x| r.mul(r.mul(e, x), e)).collect();
        let actual: std::collections::BTreeSet<usize> =
            k.analysis.delta().iter().map(|i| k.embedding[i]).collect();
        if predicted != actual {
            let x = predicted.symmetric_difference(&actual).next().copied().unwrap_or(0);
            return Ok(Outcome::Violated(
                vec![e, x],
                format!("e = {e}: element {x} lies in exactly one of delta(eRe) and e delta(R) e"),
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn matrix_formula(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Matrix(n, base) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let b = w.child(base);
    let bases = vec![b.ring().order(); n * n];
    let cons: Vec<_> = (0..n * n).map(|i| (i, b.analysis.delta())).collect();
    Ok(shape_check(c, &bases, &cons, true))
}

fn triangular_diagonal(n: usize) -> Vec<usize> {
    // slots (i, j) with i <= j, row-major
    (0..n).map(|i| (0..i).map(|r| n - r).sum()).collect()
}

fn triangular_formula(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Triangular(n, base) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let b = w.child(base);
    let bases = vec![b.ring().order(); n * (n + 1) / 2];
    let cons: Vec<_> = triangular_diagonal(*n).into_iter().map(|i| (i, b.analysis.delta())).collect();
    Ok(shape_check(c, &bases, &cons, false))
}

fn hst_formula(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Hst(base, s, t) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let b = w.child(base);
    let br = b.ring();
    let d = b.analysis.delta();
    let bases = [br.order(); 3];
    let delta = c.analysis.delta();
    // free triple (c, d, e) with a = d + sc, f = d - te
    for x in c.ring().elements() {
        let v = digits(&bases, x);
        let a = br.add(v[1], br.mul(*s, v[0]));
        let f = br.sub(v[1], br.mul(*t, v[2]));
        let fits = d.contains(a) && d.contains(v[1]) && d.contains(f);
        if fits != delta.contains(x) {
            return Ok(Outcome::Violated(
                vec![x],
                format!("in delta(R)={}, diagonal entries in delta of the base={fits}", delta.contains(x)),
            ));
        }
    }
    Ok(Outcome::Holds)
}

fn lst_formula(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Lst(base, ..) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let b = w.child(base);
    let bases = [b.ring().order(); 5];
    let d = b.analysis.delta();
    // free tuple (a, c, d, e, f)
    Ok(shape_check(c, &bases, &[(0, d), (2, d), (4, d)], true))
}

fn k0_formula(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::K0(base) = &c.expr else { return Ok(Outcome::OutOfScope) };
    let b = w.child(base);
    let bases = [b.ring().order(); 4];
    let d = b.analysis.delta();
    Ok(shape_check(c, &bases, &[(0, d), (3, d)], true))
}

fn module_order(spec: ModuleSpec, ring: &FiniteRing) -> usize {
    match spec {
        ModuleSpec::Regular => ring.order(),
        ModuleSpec::Zero => 1,
    }
}

fn block_case(w: &World, c: &Ctx) -> Result<Outcome> {
    let (a, b, bases, slots) = match &c.expr {
        RingExpr::FormalTri(s, t, m) => {
            let (sa, ta) = (w.child(s), w.child(t));
            let bases = vec![sa.ring().order(), module_order(*m, sa.ring()), ta.ring().order()];
            (sa, ta, bases, (0, 2))
        }
        RingExpr::MoritaTrivial(x, y, m, n) => {
            let (xa, ya) = (w.child(x), w.child(y));
            let bases = vec![
                xa.ring().order(),
                module_order(*m, xa.ring()),
                module_order(*n, ya.ring()),
                ya.ring().order(),
            ];
            (xa, ya, bases, (0, 3))
        }
        _ => return Ok(Outcome::OutOfScope),
    };
    let contained = shape_check(
        c,
        &bases,
        &[(slots.0, a.analysis.delta()), (slots.1, b.analysis.delta())],
        false,
    );
    if let Outcome::Violated(..) = contained {
        return Ok(contained);
    }
    if !c.holds(Predicate::DeltaReversible)? {
        return Ok(Outcome::Vacuous);
    }
    for (side, k) in [("upper-left", a), ("lower-right", b)] {
        let v = k.verdict(Predicate::DeltaReversible)?;
        if !v.verdict {
            return Ok(Outcome::Violated(
                v.witness.unwrap_or_default(),
                format!("ring delta-reversible but its {side} diagonal ring {} is not (witness in that ring)", k.label),
            ));
        }
    }
    Ok(Outcome::Holds)
}

/// `hyp(X) ⇒ concl(F(X))` style checks for a construction `F` over a base `X`.
fn extension_check(
    w: &World,
    c: &Ctx,
    base: &RingExpr,
    base_to_ext: bool,
    ext_to_base: bool,
) -> Result<Outcome> {
    let b = w.child(base);
    let (bv, ev) = (b.verdict(Predicate::DeltaReversible)?, c.verdict(Predicate::DeltaReversible)?);
    if base_to_ext && bv.verdict && !ev.verdict {
        return Ok(Outcome::Violated(
            ev.witness.unwrap_or_default(),
            format!("base {} delta-reversible, extension is not", b.label),
        ));
    }
    if ext_to_base && ev.verdict && !bv.verdict {
        return Ok(Outcome::Violated(
            bv.witness.unwrap_or_default(),
            format!("extension delta-reversible, base {} is not (witness in the base)", b.label),
        ));
    }
    let hyp = (base_to_ext && bv.verdict) || (ext_to_base && ev.verdict);
    Ok(if hyp { Outcome::Holds } else { Outcome::Vacuous })
}

fn triangular_down(w: &World, c: &Ctx) -> Result<Outcome> {
    match &c.expr {
        RingExpr::Triangular(_, b) => extension_check(w, c, b, false, true),
        _ => Ok(Outcome::OutOfScope),
    }
}

fn triangular_up(w: &World, c: &Ctx) -> Result<Outcome> {
    match &c.expr {
        RingExpr::Triangular(_, b) => extension_check(w, c, b, true, false),
        _ => Ok(Outcome::OutOfScope),
    }
}

/// Reports a matrix ring over a δ-reversible base that is not δ-reversible.
fn matrix_example(w: &World, c: &Ctx) -> Result<Outcome> {
    let RingExpr::Matrix(_, b) = &c.expr else { return Ok(Outcome::OutOfScope) };
    if !w.child(b).holds(Predicate::DeltaReversible)? {
        return Ok(Outcome::Vacuous);
    }
    implication(c, &[], Predicate::DeltaReversible)
}

fn hst_iff(w: &World, c: &Ctx) -> Result<Outcome> {
    match &c.expr {
        RingExpr::Hst(b, ..) => extension_check(w, c, b, true, true),
        _ => Ok(Outcome::OutOfScope),
    }
}

fn lst_iff(w: &World, c: &Ctx) -> Result<Outcome> {
    match &c.expr {
        RingExpr::Lst(b, ..) => extension_check(w, c, b, true, true),
        _ => Ok(Outcome::OutOfScope),
    }
}

fn k0_iff(w: &World, c: &Ctx) -> Result<Outcome> {
    match &c.expr {
        RingExpr::K0(b) => extension_check(w, c, b, true, true),
        _ => Ok(Outcome::OutOfScope),
    }
}

macro_rules! imp {
    ($($h:ident),* => $c:ident) => {
        |_: &World, c: &Ctx| implication(c, &[$(Predicate::$h),*], Predicate::$c)
    };
}

use CaseKind::{Assertion, Exhibit, Observation};

const CASES: &[CaseDef] = &[
    CaseDef {
        id: "T1",
        statement: "delta(R) equals: the intersection of essential maximal right ideals; the preimage of J(R/Soc(R_R)); {x : xR + K = R forces K to be a summand}; {x : every (1+xy)R has a semisimple complement}; and, within the lattice check cap, the largest delta-small right ideal and the intersection of ideals P with R/P having a faithful singular simple module",
        kind: Assertion,
        eval: radical_agreement,
    },
    CaseDef {
        id: "T2",
        statement: "delta(R) is a semiprime ideal",
        kind: Assertion,
        eval: semiprime,
    },
    CaseDef {
        id: "T3",
        statement: "J-reversible implies delta-reversible",
        kind: Assertion,
        eval: imp!(JReversible => DeltaReversible),
    },
    CaseDef {
        id: "T4",
        statement: "if Soc(R_R) is inside J(R), delta-reversible iff J-reversible",
        kind: Assertion,
        eval: socle_case,
    },
    CaseDef {
        id: "T5",
        statement: "R/Soc(R_R) J-reversible implies R delta-reversible",
        kind: Assertion,
        eval: imp!(SocleQuotientJReversible => DeltaReversible),
    },
    CaseDef {
        id: "T6",
        statement: "delta-reversible with idempotents lifting modulo delta(R) implies R/delta(R) abelian",
        kind: Assertion,
        eval: imp!(DeltaReversible, IdempotentsLift => QuotientAbelian),
    },
    CaseDef {
        id: "T7",
        statement: "delta-reversible implies eR(1-e) + (1-e)Re inside delta(R) for every idempotent e",
        kind: Assertion,
        eval: imp!(DeltaReversible => CornerContainment),
    },
    CaseDef {
        id: "T8",
        statement: "delta-reversible iff square-zero elements lie in delta(R) iff their commutators do iff a l(a) inside delta(R) for all a iff r(a) a inside delta(R) for all a",
        kind: Assertion,
        eval: routes_agree,
    },
    CaseDef {
        id: "T9",
        statement: "delta-reversible implies ab = 0 with a, b in an ideal I gives ba in I meet delta(R)",
        kind: Assertion,
        eval: ideals_case,
    },
    CaseDef {
        id: "T10",
        statement: "a direct product is delta-reversible iff every factor is",
        kind: Assertion,
        eval: product_iff,
    },
    CaseDef {
        id: "T11",
        statement: "R is delta-reversible iff eRe is delta-reversible for every idempotent e",
        kind: Assertion,
        eval: corner_iff,
    },
    CaseDef {
        id: "T12",
        statement: "local implies delta#(R) = delta(R)",
        kind: Assertion,
        eval: imp!(Local => DeltaSharpEqualsDelta),
    },
    CaseDef {
        id: "T13",
        statement: "delta#(R) = delta(R) implies delta-reversible",
        kind: Assertion,
        eval: imp!(DeltaSharpEqualsDelta => DeltaReversible),
    },
    CaseDef {
        id: "T14",
        statement: "R/delta(R) reduced implies delta-reversible",
        kind: Assertion,
        eval: imp!(QuotientReduced => DeltaReversible),
    },
    CaseDef {
        id: "T15",
        statement: "delta-reversible implies delta-linear Armendariz (rings within the Armendariz cap)",
        kind: Assertion,
        eval: armendariz_case,
    },
    CaseDef {
        id: "T16",
        statement: "delta-clean implies delta-reversible",
        kind: Assertion,
        eval: imp!(DeltaClean => DeltaReversible),
    },
    CaseDef {
        id: "T17",
        statement: "delta-quasipolar (a + p in delta(R), p idempotent in comm2(a)) implies delta-reversible, and spectral idempotents of nilpotents lie in delta(R)",
        kind: Assertion,
        eval: quasipolar_case,
    },
    CaseDef {
        id: "T18",
        statement: "for formal triangular rings and trivial Morita contexts, delta(R) has diagonal entries in the diagonal radicals, and delta-reversibility passes to the diagonal rings",
        kind: Assertion,
        eval: block_case,
    },
    CaseDef {
        id: "T19",
        statement: "T_n(R) delta-reversible implies R delta-reversible",
        kind: Assertion,
        eval: triangular_down,
    },
    CaseDef {
        id: "T19-converse",
        statement: "R delta-reversible implies T_n(R) delta-reversible",
        kind: Observation,
        eval: triangular_up,
    },
    CaseDef {
        id: "T20",
        statement: "M_n(R) over a delta-reversible R need not be delta-reversible",
        kind: Exhibit,
        eval: matrix_example,
    },
    CaseDef {
        id: "T21",
        statement: "R delta-reversible iff H_(s,t)(R) delta-reversible",
        kind: Assertion,
        eval: hst_iff,
    },
    CaseDef {
        id: "T22",
        statement: "R delta-reversible iff L_(s,t)(R) delta-reversible",
        kind: Assertion,
        eval: lst_iff,
    },
    CaseDef {
        id: "T23",
        statement: "R delta-reversible iff K_0(R) delta-reversible",
        kind: Assertion,
        eval: k0_iff,
    },
    CaseDef {
        id: "R-chain",
        statement: "J(R) inside delta(R) inside delta#(R), Soc(R_R) inside delta(R), and delta(R) = R iff J(R) = 0",
        kind: Assertion,
        eval: radical_chain,
    },
    CaseDef {
        id: "F-prod",
        statement: "delta of a direct product is the product of the radicals",
        kind: Assertion,
        eval: product_formula,
    },
    CaseDef {
        id: "F-corner",
        statement: "delta(eRe) = e delta(R) e for every idempotent e",
        kind: Assertion,
        eval: corner_formula,
    },
    CaseDef {
        id: "F-matrix",
        statement: "delta(M_n(R)) = M_n(delta(R))",
        kind: Assertion,
        eval: matrix_formula,
    },
    CaseDef {
        id: "F-tri",
        statement: "delta(T_n(R)) lies in the triangular matrices with diagonal entries in delta(R)",
        kind: Assertion,
        eval: triangular_formula,
    },
    CaseDef {
        id: "F-hst",
        statement: "delta(H_(s,t)(R)) = {a, d, f in delta(R)}",
        kind: Assertion,
        eval: hst_formula,
    },
    CaseDef {
        id: "F-lst",
        statement: "delta(L_(s,t)(R)) = {a, d, f in delta(R)}",
        kind: Assertion,
        eval: lst_formula,
    },
    CaseDef {
        id: "F-k0",
        statement: "delta(K_0(R)) = {both diagonal entries in delta(R)}",
        kind: Assertion,
        eval: k0_formula,
    },
];

pub fn case_ids() -> Vec<&'static str> {
    CASES.iter().map(|c| c.id).collect()
}

const NOTES: &[&str] = &[
    "delta-quasipolar uses the as-used definition: p idempotent in comm2(a) with a + p in delta(R)",
    "formal triangular and Morita corpus members use the ring acting on itself as bimodule",
    "T9 checks the set I meet delta(R); delta of a ring without identity is not computed",
    "delta-reversibility verdicts come from the definition; route agreement is case T8",
];

pub fn run_theorem_suite(corpus: &Corpus, limits: &Limits) -> Result<SuiteReport> {
    let world = World::new(corpus, limits)?;
    let grid: Vec<Vec<Outcome>> = world
        .ctxs
        .par_iter()
        .map(|c| CASES.iter().map(|case| (case.eval)(&world, c)).collect::<Result<Vec<_>>>())
        .collect::<Result<_>>()?;
    let cases = CASES
        .iter()
        .enumerate()
        .map(|(k, case)| {
            let (mut in_scope, mut held) = (0, 0);
            let mut first: Option<Finding> = None;
            for (c, row) in world.ctxs.iter().zip(&grid) {
                match &row[k] {
                    Outcome::OutOfScope => continue,
                    Outcome::Vacuous => in_scope += 1,
                    Outcome::Holds => {
                        in_scope += 1;
                        held += 1;
                    }
                    Outcome::Violated(w, d) => {
                        in_scope += 1;
                        held += 1;
                        first.get_or_insert_with(|| Finding {
                            ring: c.label.clone(),
                            witness: w.clone(),
                            detail: d.clone(),
                        });
                    }
                }
            }
            let (verdict, counterexample, example) = match case.kind {
                Exhibit => match first {
                    Some(f) => (CaseVerdict::Pass, None, Some(f)),
                    None => (CaseVerdict::Fail, None, None),
                },
                _ => match first {
                    Some(f) => (CaseVerdict::Fail, Some(f), None),
                    None => (CaseVerdict::Pass, None, None),
                },
            };
            CaseReport {
                id: case.id.to_string(),
                statement: case.statement.to_string(),
                kind: case.kind,
                verdict,
                rings_in_scope: in_scope,
                hypothesis_held: held,
                counterexample,
                example,
            }
        })
        .collect();
    Ok(SuiteReport {
        tool_version: crate::VERSION.to_string(),
        corpus: corpus.spec.clone(),
        corpus_size: corpus.len(),
        caps: *limits,
        notes: NOTES.iter().map(|s| s.to_string()).collect(),
        cases,
    })
}

/// A predicate or its negation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Literal {
    pub predicate: Predicate,
    pub negated: bool,
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("!")?;
        }
        f.write_str(self.predicate.name())
    }
}

/// `antecedent => consequent`, each a conjunction of literals joined by `&`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HuntQuery {
    pub antecedent: Vec<Literal>,
    pub consequent: Vec<Literal>,
    pub stop_at_first: bool,
}

fn parse_conjunction(s: &str) -> Result<Vec<Literal>> {
    s.split('&')
        .map(|lit| {
            let lit = lit.trim();
            let (negated, name) = match lit.strip_prefix('!') {
                Some(rest) => (true, rest.trim()),
                None => (false, lit),
            };
            Ok(Literal {
                predicate: name.parse()?,
                negated,
            })
        })
        .collect()
}

impl FromStr for HuntQuery {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let Some((lhs, rhs)) = s.split_once("=>") else {
            return Err(Error::Parse {
                pos: 0,
                msg: "expected `antecedent => consequent`".into(),
            });
        };
        Ok(HuntQuery {
            antecedent: parse_conjunction(lhs)?,
            consequent: parse_conjunction(rhs)?,
            stop_at_first: true,
        })
    }
}

impl fmt::Display for HuntQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[Literal]| v.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" & ");
        write!(f, "{} => {}", join(&self.antecedent), join(&self.consequent))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HuntReport {
    pub tool_version: String,
    pub query: String,
    pub corpus: String,
    pub caps: Limits,
    pub rings_scanned: usize,
    /// Rings where a predicate could not be evaluated within the caps.
    pub skipped: Vec<String>,
    pub findings: Vec<Finding>,
}

impl HuntReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# Hunt report\n");
        let _ = writeln!(s, "- tool_version: {}", self.tool_version);
        let _ = writeln!(s, "- query: {}", self.query);
        let _ = writeln!(s, "- corpus: {}", self.corpus);
        let _ = writeln!(
            s,
            "- caps: size_cap={}, lattice_cap={}, armendariz_cap={}, lattice_check_cap={}",
            self.caps.size_cap, self.caps.lattice_cap, self.caps.armendariz_cap, self.caps.lattice_check_cap
        );
        let _ = writeln!(s, "- rings_scanned: {}", self.rings_scanned);
        let _ = writeln!(s, "- skipped: {:?}", self.skipped);
        if self.findings.is_empty() {
            let _ = writeln!(s, "\nNo counterexample found.");
        }
        for f in &self.findings {
            let _ = writeln!(s, "\n## {}\n\n- witness: {:?}\n- detail: {}", f.ring, f.witness, f.detail);
        }
        s
    }
}

enum HuntOutcome {
    Skipped,
    Clear,
    Found(Finding),
}

fn literal_verdict(a: &RingAnalysis, l: Literal) -> Result<Option<(bool, Verdict)>> {
    match l.predicate.evaluate(a) {
        Ok(v) => Ok(Some((v.verdict != l.negated, v))),
        Err(Error::SizeCap { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

fn hunt_one(entry: &CorpusEntry, q: &HuntQuery, limits: &Limits) -> Result<HuntOutcome> {
    let a = RingAnalysis::new(entry.ring.clone(), limits)?;
    for &l in &q.antecedent {
        match literal_verdict(&a, l)? {
            None => return Ok(HuntOutcome::Skipped),
            Some((false, _)) => return Ok(HuntOutcome::Clear),
            Some((true, _)) => {}
        }
    }
    for &l in &q.consequent {
        match literal_verdict(&a, l)? {
            None => return Ok(HuntOutcome::Skipped),
            Some((true, _)) => {}
            Some((false, v)) => {
                let detail = if l.negated {
                    format!("{} holds ({})", l.predicate, v.method)
                } else {
                    format!("{} fails: {}", l.predicate, v.method)
                };
                return Ok(HuntOutcome::Found(Finding {
                    ring: entry.label.clone(),
                    witness: if l.negated { Vec::new() } else { v.witness.unwrap_or_default() },
                    detail,
                }));
            }
        }
    }
    Ok(HuntOutcome::Clear)
}

/// Corpus rings satisfying the antecedent but not the consequent, in corpus order.
pub fn hunt_counterexample(q: &HuntQuery, corpus: &Corpus, limits: &Limits) -> Result<HuntReport> {
    let mut skipped = Vec::new();
    let mut findings = Vec::new();
    let mut scanned = 0;
    let outcomes: Vec<HuntOutcome> = if q.stop_at_first {
        // ordered early exit: evaluate in parallel chunks, stop after the first hit
        let mut out = Vec::new();
        for chunk in corpus.entries.chunks(rayon::current_num_threads().max(1) * 4) {
            let part: Vec<HuntOutcome> = chunk
                .par_iter()
                .map(|e| hunt_one(e, q, limits))
                .collect::<Result<_>>()?;
            let hit = part.iter().any(|o| matches!(o, HuntOutcome::Found(_)));
            out.extend(part);
            if hit {
                break;
            }
        }
        out
    } else {
        corpus
            .entries
            .par_iter()
            .map(|e| hunt_one(e, q, limits))
            .collect::<Result<_>>()?
    };
    for (e, o) in corpus.entries.iter().zip(outcomes) {
        scanned += 1;
        match o {
            HuntOutcome::Skipped => skipped.push(e.label.clone()),
            HuntOutcome::Clear => {}
            HuntOutcome::Found(f) => {
                findings.push(f);
                if q.stop_at_first {
                    break;
                }
            }
        }
    }
    Ok(HuntReport {
        tool_version: crate::VERSION.to_string(),
        query: q.to_string(),
        corpus: corpus.spec.clone(),
        caps: *limits,
        rings_scanned: scanned,
        skipped,
        findings,
    })
}
