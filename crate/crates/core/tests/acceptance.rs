//! One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use ringlab::construct::{corner_ring, decode_element, enumerate_unital_rings};
use ringlab::elements::central_units;
use ringlab::suite::{build_corpus, CaseKind, CaseVerdict, Corpus, DEFAULT_PRESET};
use ringlab::*;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn analysis(expr: &str, l: &Limits) -> RingAnalysis {
    RingAnalysis::new(build(&parse_expr(expr).unwrap(), l).unwrap(), l).unwrap()
}

fn within(t: Instant, budget: Duration) -> bool {
    t.elapsed() < budget
}

fn criterion_1(l: &Limits) -> Outcome {
    let t = Instant::now();
    let a = analysis("M(2,Zn(3))", l);
    let r = a.ring();
    // row-major base-3 digits
    let m = |e: [usize; 4]| e[0] * 27 + e[1] * 9 + e[2] * 3 + e[3];
    let (pa, pb) = (m([1, 2, 0, 0]), m([2, 0, 2, 0]));
    let ba = m([2, 1, 2, 1]);
    let drev = Predicate::DeltaReversible.evaluate(&a).unwrap();
    let jrev = Predicate::JReversible.evaluate(&a).unwrap();
    let reported = jrev.witness.clone().unwrap_or_default();
    let reported_ok = reported.len() == 2
        && r.mul(reported[0], reported[1]) == 0
        && !a.jacobson().contains(r.mul(reported[1], reported[0]));
    let pass = r.order() == 81
        && r.mul(pa, pb) == 0
        && r.mul(pb, pa) == ba
        && a.jacobson().elems() == vec![0]
        && a.delta().len() == 81
        && drev.verdict
        && !jrev.verdict
        && !a.jacobson().contains(ba)
        && reported_ok
        && within(t, Duration::from_secs(10));
    outcome(
        pass,
        format!(
            "AB=0, BA={ba}; |J|={}, |delta|={}; delta-reversible={}, j-reversible={} (stated pair ({pa},{pb}), first witness {reported:?}); {:.2?}",
            a.jacobson().len(),
            a.delta().len(),
            drev.verdict,
            jrev.verdict,
            t.elapsed()
        ),
    )
}

fn criterion_2(corpus: &Corpus, l: &Limits) -> Outcome {
    let t = Instant::now();
    let results: Vec<Option<String>> = corpus
        .entries
        .par_iter()
        .map(|e| {
            let a = RingAnalysis::new(e.ring.clone(), l).unwrap();
            let d = a.delta().bits().clone();
            let mut sets = vec![
                ("R1", a.r1()),
                ("pullback", a.socle_pullback().unwrap()),
                ("R3", a.r3_set()),
                ("R5", a.r5_set()),
            ];
            if a.ring().order() <= 32 {
                sets.push(("R2", a.r2().unwrap()));
                sets.push(("R4", a.r4().unwrap()));
            }
            sets.into_iter()
                .find(|(_, s)| *s != d)
                .map(|(n, _)| format!("{} on {}", n, e.label))
        })
        .collect();
    let small = corpus.entries.iter().filter(|e| e.ring.order() <= 32).count();
    let bad: Vec<&String> = results.iter().flatten().collect();
    outcome(
        bad.is_empty() && within(t, Duration::from_secs(600)),
        format!(
            "{} rings, {} with R2/R4 checked, {} mismatches{}; {:.2?}",
            corpus.len(),
            small,
            bad.len(),
            bad.first().map(|b| format!(" (first: {b})")).unwrap_or_default(),
            t.elapsed()
        ),
    )
}

/// Compares delta(R) with the elements whose listed digits lie in the base radical.
fn shape(expr: &str, base: &str, digits: usize, slots: &[usize], equality: bool, l: &Limits) -> Option<usize> {
    let a = analysis(expr, l);
    let b = analysis(base, l);
    let bases = vec![b.ring().order(); digits];
    a.ring().elements().find(|&x| {
        let d = decode_element(&bases, x);
        let fits = slots.iter().all(|&i| b.delta().contains(d[i]));
        let inside = a.delta().contains(x);
        (inside && !fits) || (equality && fits && !inside)
    })
}

fn hst_shape(s: usize, t: usize, l: &Limits) -> Option<usize> {
    let a = analysis(&format!("Hst(Zn(4),s={s},t={t})"), l);
    let b = analysis("Zn(4)", l);
    let br = b.ring();
    a.ring().elements().find(|&x| {
        let v = decode_element(&[4, 4, 4], x);
        let (c, d, e) = (v[0], v[1], v[2]);
        let diag = [br.add(d, br.mul(s, c)), d, br.sub(d, br.mul(t, e))];
        diag.iter().all(|&y| b.delta().contains(y)) != a.delta().contains(x)
    })
}

fn corner_failures(corpus: &Corpus, l: &Limits) -> (usize, usize, Option<String>) {
    let per_ring: Vec<(usize, Vec<String>)> = corpus
        .entries
        .par_iter()
        .map(|entry| {
            let a = RingAnalysis::new(entry.ring.clone(), l).unwrap();
            let r = a.ring();
            let mut bad = Vec::new();
            for &e in a.idempotents() {
                let c = corner_ring(r, e, l).unwrap();
                let ca = RingAnalysis::new(c.ring, l).unwrap();
                let actual: BTreeSet<usize> = ca.delta().iter().map(|i| c.embedding[i]).collect();
                let predicted: BTreeSet<usize> = a.delta().iter().map(|x| r.mul(r.mul(e, x), e)).collect();
                if actual != predicted {
                    bad.push(format!("{} at e={e}", entry.label));
                }
            }
            (a.idempotents().len(), bad)
        })
        .collect();
    let checked = per_ring.iter().map(|p| p.0).sum();
    let bad: Vec<String> = per_ring.into_iter().flat_map(|p| p.1).collect();
    (checked, bad.len(), bad.into_iter().next())
}

fn criterion_3(corpus: &Corpus, l: &Limits) -> Outcome {
    let mut lines = Vec::new();
    let mut pass = true;
    let mut record = |name: &str, ok: bool, note: String| {
        pass &= ok;
        lines.push(format!("{name} {}{note}", if ok { "ok" } else { "FAILS" }));
    };

    let prod = shape("Prod(Zn(2),Zn(4))", "Zn(4)", 2, &[1], false, l).is_none()
        && analysis("Prod(Zn(2),Zn(4))", l).delta().len() == 2 * 2;
    record("product", prod, String::new());

    let (checked, bad, first) = corner_failures(corpus, l);
    record(
        "corners",
        bad == 0,
        format!(" ({bad} of {checked} idempotents{})", first.map(|f| format!(", first {f}")).unwrap_or_default()),
    );

    for k in 2..=4 {
        let miss = shape(&format!("M(2,Zn({k}))"), &format!("Zn({k})"), 4, &[0, 1, 2, 3], true, l);
        record(&format!("M2(Z{k})"), miss.is_none(), String::new());
    }

    let cu = central_units(&build(&parse_expr("Zn(4)").unwrap(), l).unwrap());
    let h_bad: Vec<(usize, usize)> = cu
        .iter()
        .flat_map(|&s| cu.iter().map(move |&t| (s, t)))
        .filter(|&(s, t)| hst_shape(s, t, l).is_some())
        .collect();
    record("H(Z4)", h_bad.is_empty(), format!(" (all {} unit pairs)", cu.len() * cu.len()));

    let cu3 = central_units(&build(&parse_expr("Zn(3)").unwrap(), l).unwrap());
    let mut l_bad = Vec::new();
    for &s in &cu3 {
        for &t in &cu3 {
            let expr = format!("Lst(Zn(3),s={s},t={t})");
            if let Some(x) = shape(&expr, "Zn(3)", 5, &[0, 2, 4], true, l) {
                l_bad.push(format!("{expr} at {x}, |delta|={}", analysis(&expr, l).delta().len()));
            }
        }
    }
    record(
        "L(Z3)",
        l_bad.is_empty(),
        l_bad.first().map(|b| format!(" ({} of 4; {b})", l_bad.len())).unwrap_or_default(),
    );

    let k0 = shape("K0(Zn(4))", "Zn(4)", 4, &[0, 3], true, l);
    record("K0(Z4)", k0.is_none(), String::new());
    let t2 = shape("T(2,Zn(4))", "Zn(4)", 3, &[0, 2], false, l);
    record("T2(Z4)", t2.is_none(), String::new());

    outcome(pass, lines.join("; "))
}

fn criterion_4(report: &SuiteReport, elapsed: Duration) -> Outcome {
    let proved: Vec<&ringlab::suite::CaseReport> = report
        .cases
        .iter()
        .filter(|c| c.id.starts_with('T') && c.kind == CaseKind::Assertion)
        .collect();
    let failed: Vec<&str> = proved
        .iter()
        .filter(|c| c.verdict != CaseVerdict::Pass)
        .map(|c| c.id.as_str())
        .collect();
    let ids: BTreeSet<&str> = report.cases.iter().map(|c| c.id.as_str()).collect();
    let all_present = (1..=23).all(|i| ids.contains(format!("T{i}").as_str()));
    let converse = report.case("T19-converse");
    let converse_note = match converse {
        Some(c) => match &c.counterexample {
            Some(f) => format!("T19-converse FAIL on {}", f.ring),
            None => format!("T19-converse PASS on {} rings in scope", c.rings_in_scope),
        },
        None => "T19-converse missing".into(),
    };
    outcome(
        failed.is_empty() && all_present && converse.is_some() && elapsed < Duration::from_secs(900),
        format!(
            "{} proved cases, failed {:?}; {converse_note}; suite {:.2?}",
            proved.len(),
            failed,
            elapsed
        ),
    )
}

fn reverify(finding: &ringlab::suite::Finding, l: &Limits, against: fn(&RingAnalysis) -> &ElementSet) -> bool {
    let a = analysis(&finding.ring, l);
    let r = a.ring();
    match finding.witness[..] {
        [x, y] => r.mul(x, y) == 0 && !against(&a).contains(r.mul(y, x)),
        _ => false,
    }
}

fn criterion_5(corpus: &Corpus, l: &Limits) -> Outcome {
    let q1: HuntQuery = "delta-reversible => j-reversible".parse().unwrap();
    let h1 = hunt_counterexample(&q1, corpus, l).unwrap();
    let q2: HuntQuery = "true => delta-reversible".parse().unwrap();
    let h2 = hunt_counterexample(&q2, corpus, l).unwrap();
    let (Some(f1), Some(f2)) = (h1.findings.first(), h2.findings.first()) else {
        return outcome(false, "a hunt found nothing");
    };
    let a = analysis(&f1.ring, l);
    let sep_ok = Predicate::DeltaReversible.evaluate(&a).unwrap().verdict && reverify(f1, l, |a| a.jacobson());
    let expected = ["M(2,Zn(2))", "M(2,Zn(3))"].contains(&f1.ring.as_str());
    let bad_ok = reverify(f2, l, |a| a.delta());
    outcome(
        sep_ok && expected && bad_ok,
        format!(
            "(a) {} witness {:?} re-verified={}; (b) {} witness {:?} re-verified={}",
            f1.ring, f1.witness, sep_ok, f2.ring, f2.witness, bad_ok
        ),
    )
}

fn criterion_6(l: &Limits) -> Outcome {
    let t = Instant::now();
    let mut counts = Vec::new();
    let mut valid = true;
    for k in 2..=4 {
        let rings = enumerate_unital_rings(k, true, l).unwrap();
        valid &= rings.iter().all(|r| validate_ring(r.to_raw()).is_ok());
        counts.push(rings.len());
    }
    outcome(
        counts == [1, 1, 4] && valid && within(t, Duration::from_secs(60)),
        format!("counts {counts:?} for orders 2..=4, all validate={valid}; {:.2?}", t.elapsed()),
    )
}

fn criterion_7(corpus: &Corpus, l: &Limits) -> Outcome {
    let dir = std::env::temp_dir().join(format!("ringlab-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let exprs = ["Zn(1)", "M(2,Zn(3))", "Hst(Zn(4),s=1,t=3)", "K0(Zn(2))", "Enum(8,3)"];
    let round_trip = exprs.iter().all(|e| {
        let text = build(&parse_expr(e).unwrap(), l).unwrap().to_json();
        let path = dir.join("ring.json");
        std::fs::write(&path, &text).unwrap();
        FiniteRing::load(&path, l).unwrap().to_json() == text
    });
    let _ = std::fs::remove_dir_all(&dir);
    let run = |n: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .unwrap()
            .install(|| run_theorem_suite(corpus, l).unwrap().to_json())
    };
    let (one, eight) = (run(1), run(8));
    outcome(
        round_trip && one == eight,
        format!("round trip byte-identical={round_trip}; suite JSON identical for 1 and 8 threads={}", one == eight),
    )
}

fn main() {
    let l = Limits::default();
    let t = Instant::now();
    let corpus = build_corpus(DEFAULT_PRESET, &l).unwrap();
    let report = run_theorem_suite(&corpus, &l).unwrap();
    let suite_time = t.elapsed();

    let results = [
        ("1", "worked matrix example", criterion_1(&l)),
        ("2", "radical cross-characterization", criterion_2(&corpus, &l)),
        ("3", "radical formulas", criterion_3(&corpus, &l)),
        ("4", "theorem suite", criterion_4(&report, suite_time)),
        ("5", "separation findings", criterion_5(&corpus, &l)),
        ("6", "enumeration sanity", criterion_6(&l)),
        ("7", "determinism and round trip", criterion_7(&corpus, &l)),
    ];
    let mut failed = 0;
    for (n, name, o) in &results {
        println!("criterion {n} {}: {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
