//! Acceptance gate: one PASS/FAIL line per criterion, exact arithmetic
//! throughout. Run with `cargo test --test acceptance`.

mod common;

use std::process::Command;
use std::time::{Duration, Instant};

use ccc_core::families::{build_family, build_group, family_presentation, FamilySpec, GroupSpec};
use ccc_core::graph::{ccc_graph, detect_clique_union, CliqueDecomposition, SimpleGraph};
use ccc_core::group::{
    commuting_probability, conjugacy_data, distinct_centralizer_count, quotient_by_center,
    recognize_structure, FiniteGroup, StructureTag,
};
use ccc_core::predictions::{
    closed_form_indices, quotient_prediction, verify_family_default, verify_group,
    verify_quotient_cases, QuotientCase, QuotientKind, VerificationRecord,
};
use ccc_core::presentation::{coset_enumerate, DEFAULT_COSET_LIMIT};
use ccc_core::zagreb::{zagreb_report, Verdict};
use num_bigint::{BigInt, BigUint};
use num_rational::{BigRational, Ratio};
use rand::seq::SliceRandom;
use rand::SeedableRng;

type Check = Result<String, String>;

type Criterion = (&'static str, fn() -> Check);

type KindFilter = fn(&QuotientKind) -> bool;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn tuple(r: &VerificationRecord) -> (BigUint, BigUint, BigUint, BigUint) {
    let rep = &r.report;
    (rep.m1.clone(), rep.m2.clone(), rep.num_vertices.clone(), rep.num_edges.clone())
}

fn spot(r: &VerificationRecord, values: [u64; 4]) -> Result<(), String> {
    let want = (big(values[0]), big(values[1]), big(values[2]), big(values[3]));
    ensure(tuple(r) == want, || {
        format!("{}: (M1, M2, |V|, |E|) = {:?}, expected {values:?}", r.group_name, tuple(r))
    })
}

/// Verifies each spec against its prediction and checks that equality
/// happens exactly where `equality` says.
fn sweep(
    specs: &[FamilySpec],
    equality: impl Fn(&FamilySpec) -> bool,
) -> Result<Vec<(FamilySpec, VerificationRecord)>, String> {
    let mut problems = Vec::new();
    let mut out = Vec::new();
    for spec in specs {
        let rec = verify_family_default(spec).map_err(|e| format!("{spec}: {e}"))?;
        if !rec.structure_match {
            problems.push(format!(
                "{}: brute {} vs predicted {}",
                rec.group_name,
                rec.brute_decomposition.as_deref().unwrap_or("non-clique-union"),
                rec.predicted.decomposition
            ));
        }
        if !rec.m1_match || !rec.m2_match {
            problems.push(format!("{}: closed-form indices differ from brute force", rec.group_name));
        }
        if rec.verdict == Verdict::Violated {
            problems.push(format!("{}: violated", rec.group_name));
        }
        let want = equality(spec);
        if rec.verdict.is_equality() != want {
            problems.push(format!(
                "{}: verdict {} but equality {}expected",
                rec.group_name,
                rec.verdict,
                if want { "" } else { "not " }
            ));
        }
        if !want && rec.verdict != Verdict::StrictlySatisfied {
            problems.push(format!("{}: expected strict, got {}", rec.group_name, rec.verdict));
        }
        out.push((*spec, rec));
    }
    if problems.is_empty() {
        Ok(out)
    } else {
        let shown = problems.len().min(6);
        Err(format!(
            "{} problem(s): {}{}",
            problems.len(),
            problems[..shown].join("; "),
            if problems.len() > shown { "; ..." } else { "" }
        ))
    }
}

fn find<'a>(recs: &'a [(FamilySpec, VerificationRecord)], spec: &str) -> &'a VerificationRecord {
    let spec: FamilySpec = spec.parse().unwrap();
    &recs.iter().find(|(s, _)| *s == spec).expect("spec in sweep").1
}

fn criterion_1() -> Check {
    let start = Instant::now();
    let specs: Vec<FamilySpec> = (3..=60).map(|m| FamilySpec::Dihedral { m }).collect();
    let recs = sweep(&specs, |s| matches!(s, FamilySpec::Dihedral { m: 3 | 4 | 6 }))?;
    for (spec, rec) in &recs {
        let (m1, m2) = closed_form_indices(spec).map_err(|e| e.to_string())?;
        let brute = (rat_of(&rec.report.m1), rat_of(&rec.report.m2));
        ensure((m1.clone(), m2.clone()) == brute, || {
            format!("{}: printed ({m1}, {m2}) vs brute ({}, {})", rec.group_name, brute.0, brute.1)
        })?;
    }
    spot(find(&recs, "dihedral:5"), [2, 1, 3, 1])?;
    spot(find(&recs, "dihedral:6"), [4, 2, 4, 2])?;
    let elapsed = start.elapsed();
    ensure(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("58 groups, three-way agreement, {:.2?}", elapsed))
}

fn rat_of(v: &BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v.clone()))
}

fn criterion_2() -> Check {
    let specs: Vec<FamilySpec> = (2..=30).map(|m| FamilySpec::Dicyclic { m }).collect();
    let recs = sweep(&specs, |s| matches!(s, FamilySpec::Dicyclic { m: 2 | 3 }))?;
    let q8 = find(&recs, "dicyclic:2");
    ensure(q8.verdict == Verdict::VacuousEquality, || format!("Q8 verdict {}", q8.verdict))?;
    ensure(q8.brute_decomposition.as_deref() == Some("3K1"), || "Q8 is not 3K1".into())?;
    spot(q8, [0, 0, 3, 0])?;
    spot(find(&recs, "dicyclic:3"), [4, 2, 4, 2])?;
    Ok("29 groups; equality at m = 2 (vacuous), 3".into())
}

fn criterion_3() -> Check {
    let specs: Vec<FamilySpec> = (2..=15).map(|m| FamilySpec::Semidihedral { m }).collect();
    let recs = sweep(&specs, |s| matches!(s, FamilySpec::Semidihedral { m: 3 }))?;
    let sd16 = find(&recs, "semidihedral:2");
    spot(sd16, [12, 12, 5, 3])?;
    ensure(sd16.verdict == Verdict::StrictlySatisfied, || "SD16 not strict".into())?;
    spot(find(&recs, "semidihedral:3"), [72, 108, 8, 12])?;
    Ok("14 groups; equality only at m = 3".into())
}

fn criterion_4() -> Check {
    let specs: Vec<FamilySpec> = (1..=15).map(|m| FamilySpec::V8m { m }).collect();
    let recs = sweep(&specs, |s| matches!(s, FamilySpec::V8m { m: 1 | 2 }))?;
    let v16 = find(&recs, "v8m:2");
    ensure(v16.brute_decomposition.as_deref() == Some("3K2"), || {
        format!("V16 gives {:?}", v16.brute_decomposition)
    })?;
    spot(v16, [6, 3, 6, 3])?;
    Ok("15 groups by coset enumeration; equality at m = 1, 2".into())
}

fn criterion_5() -> Check {
    let mut specs = Vec::new();
    for n in 2..=4 {
        for m in 3..=16 {
            if 2 * n * m <= 128 {
                specs.push(FamilySpec::Unm { n, m });
            }
        }
    }
    let recs = sweep(&specs, |s| matches!(s, FamilySpec::Unm { m: 3 | 4 | 6, .. }))?;
    let u23 = find(&recs, "unm:2,3");
    ensure(u23.brute_decomposition.as_deref() == Some("2K2"), || "U(2,3) is not 2K2".into())?;
    ensure(u23.predicted.case_label.contains("m-odd"), || {
        format!("U(2,3) matched {}", u23.predicted.case_label)
    })?;
    Ok(format!("{} groups; equality at m = 3, 4, 6 for every n", specs.len()))
}

fn criterion_6() -> Check {
    let mut specs = Vec::new();
    for (p, max_sum) in [(2u64, 7u64), (3, 4), (5, 3)] {
        for m in 1..max_sum {
            for n in 1..=max_sum - m {
                specs.push(FamilySpec::Gpmn { p, m, n });
            }
        }
    }
    let d8 = detect_clique_union(&ccc_graph(&build_family(&"dihedral:4".parse().unwrap()).unwrap()));
    let g211 = detect_clique_union(&ccc_graph(&build_family(&"gpmn:2,1,1".parse().unwrap()).unwrap()));
    ensure(g211.is_some() && g211 == d8, || format!("G(2,1,1) gives {g211:?}, D8 gives {d8:?}"))?;
    ensure(g211 == Some("3K1".parse::<CliqueDecomposition>().unwrap()), || "G(2,1,1) is not 3K1".into())?;
    sweep(&specs, |s| matches!(s, FamilySpec::Gpmn { n: 1, .. }))?;
    Ok(format!("{} groups; equality exactly at n = 1", specs.len()))
}

fn group(spec: &str) -> FiniteGroup {
    build_group(&spec.parse::<GroupSpec>().unwrap()).unwrap()
}

fn criterion_7() -> Check {
    for p in [2u64, 3, 5] {
        let g = group(&format!("heisenberg:{p}"));
        let case = QuotientCase { kind: QuotientKind::ElemAbelian { p }, x: p };
        let preds = quotient_prediction(&case).map_err(|e| e.to_string())?;
        let rec = verify_group(&g, &preds);
        let want = CliqueDecomposition::new([(p + 1, p - 1)]);
        ensure(rec.structure_match && rec.predicted.decomposition == want, || {
            format!("Heis({p}) gives {:?}, expected {want}", rec.brute_decomposition)
        })?;
        // p = 2 collapses to 3K1, which has no edges.
        let ok = if p == 2 { rec.verdict.is_equality() } else { rec.verdict == Verdict::Equality };
        ensure(ok, || format!("Heis({p}) verdict {}", rec.verdict))?;
        ensure(rec.report.lhs == rec.report.rhs, || format!("Heis({p}) lhs != rhs"))?;
    }
    let g = group("heisenberg:3");
    let rec = verify_group(
        &g,
        &quotient_prediction(&QuotientCase { kind: QuotientKind::ElemAbelian { p: 3 }, x: 3 }).unwrap(),
    );
    let corollary = rec
        .predicted
        .printed
        .iter()
        .find(|p| p.source == "order p^3 corollary")
        .ok_or("order p^3 corollary not attached")?;
    ensure(corollary.m1 == rat(8) && rec.report.m1 == big(8), || {
        format!("corollary M1 = {}, brute M1 = {}", corollary.m1, rec.report.m1)
    })?;
    ensure(corollary.m2 == rat(8) && rec.report.m2 == big(4), || {
        format!("corollary M2 = {}, brute M2 = {}", corollary.m2, rec.report.m2)
    })?;
    ensure(
        rec.discrepancy_notes.iter().any(|n| n.contains("printed M2 (order p^3 corollary) = 8")),
        || format!("no discrepancy note: {:?}", rec.discrepancy_notes),
    )?;
    ensure(rec.report.lhs == big(32) && rec.report.rhs == big(32), || "32 != 32".into())?;
    Ok("Heisenberg p = 2, 3, 5 match (p+1)K_{p-1}; p^3 M2 typo surfaced (8 vs 4)".into())
}

fn single_case(g: &FiniteGroup, wanted: KindFilter) -> Result<VerificationRecord, String> {
    let cases = verify_quotient_cases(g);
    let (_, rec) = cases
        .into_iter()
        .find(|(c, _)| wanted(&c.kind))
        .ok_or_else(|| format!("{}: expected quotient case not recognised", g.name()))?;
    rec.map_err(|e| e.to_string())
}

fn criterion_8() -> Check {
    let checks: [(&str, KindFilter, &str, &str); 4] = [
        ("frobenius:7,3", |k| matches!(k, QuotientKind::FrobeniusPq { .. }), "2K2", "frobenius-pq"),
        ("a4", |k| matches!(k, QuotientKind::FrobeniusP2q { .. }), "K2 + K1", "a4/K2x+Kx"),
        ("frobenius-sq:5,4", |k| matches!(k, QuotientKind::FrobeniusP2q { .. }), "K3 + K1", "p<q"),
        ("gen-dihedral:3", |k| matches!(k, QuotientKind::FrobeniusP2q { .. }), "K4 + K1", "p>q/first"),
    ];
    for (spec, kind, shape, label) in checks {
        let g = group(spec);
        let x = conjugacy_data(&g).center.len();
        ensure(x == 1, || format!("{spec}: |Z| = {x}"))?;
        let rec = single_case(&g, kind)?;
        ensure(rec.structure_match, || format!("{spec}: {:?}", rec.discrepancy_notes))?;
        ensure(rec.brute_decomposition.as_deref() == Some(shape), || {
            format!("{spec}: brute {:?}, expected {shape}", rec.brute_decomposition)
        })?;
        ensure(rec.predicted.case_label.ends_with(label), || {
            format!("{spec}: matched {}", rec.predicted.case_label)
        })?;
        ensure(rec.verdict != Verdict::Violated, || format!("{spec} violated"))?;
    }
    let f21 = single_case(&group("frobenius:7,3"), |k| matches!(k, QuotientKind::FrobeniusPq { .. }))?;
    ensure(f21.verdict == Verdict::Equality && f21.report.lhs == big(8) && f21.report.rhs == big(8), || {
        format!("F21: {} vs {}", f21.report.lhs, f21.report.rhs)
    })?;
    Ok("Z7:Z3, A4, F20, (Z3xZ3):Z2 match their shapes".into())
}

fn criterion_9() -> Check {
    let battery = [
        ("dihedral:8", "D16"),
        ("dicyclic:4", "Q16"),
        ("semidihedral:2", "SD16"),
        ("xcyclic:2:dihedral:4", "D8xZ2"),
        ("xcyclic:2:dicyclic:2", "Q8xZ2"),
        ("modular:2,4", "M16"),
    ];
    for (spec, name) in battery {
        let g = group(spec);
        ensure(g.order() == 16, || format!("{name} has order {}", g.order()))?;
        ensure(detect_clique_union(&ccc_graph(&g)).is_some(), || format!("{name}: not a clique union"))?;
        let relevant: Vec<_> = verify_quotient_cases(&g)
            .into_iter()
            .filter(|(c, _)| {
                matches!(c.kind, QuotientKind::Dihedral { m: 4 } | QuotientKind::ElemAbelian { p: 2 })
            })
            .collect();
        ensure(!relevant.is_empty(), || format!("{name}: G/Z is neither D8 nor Z2xZ2"))?;
        for (case, rec) in relevant {
            let rec = rec.map_err(|e| format!("{name} {case}: {e}"))?;
            ensure(rec.structure_match && rec.m1_match && rec.m2_match, || {
                format!("{name} {case}: {:?}", rec.discrepancy_notes)
            })?;
            ensure(rec.verdict != Verdict::Violated, || format!("{name} violated"))?;
        }
    }
    Ok("six groups of order 16 match their quotient predictions".into())
}

fn criterion_10() -> Check {
    let g: SimpleGraph = "star:5+K:3".parse().unwrap();
    let r = zagreb_report(&g);
    let values = (r.m1.clone(), r.m2.clone(), big(g.num_vertices() as u64), big(g.num_edges() as u64));
    ensure(values == (big(42), big(37), big(9), big(8)), || format!("{values:?}"))?;
    ensure(r.verdict == Verdict::Violated && r.lhs == big(333) && r.rhs == big(336), || {
        format!("{} vs {}: {}", r.lhs, r.rhs, r.verdict)
    })?;
    let status = Command::new(env!("CARGO_BIN_EXE_ccc"))
        .args(["report", "--graph", "star:5+K:3"])
        .output()
        .map_err(|e| e.to_string())?
        .status;
    ensure(status.code() == Some(2), || format!("CLI exit {status}"))?;
    Ok("(42, 37, 9, 8), 333 < 336, CLI exit 2".into())
}

fn criterion_11() -> Check {
    let d8 = group("dihedral:4");
    let d6 = group("dihedral:3");
    ensure(distinct_centralizer_count(&d8) == 4, || "D8 centralizers".into())?;
    ensure(
        recognize_structure(&quotient_by_center(&d8)) == StructureTag::ElementaryAbelian { p: 2, rank: 2 },
        || "D8/Z is not Z2xZ2".into(),
    )?;
    ensure(distinct_centralizer_count(&d6) == 5, || "D6 centralizers".into())?;
    ensure(recognize_structure(&quotient_by_center(&d6)) == StructureTag::Dihedral { m: 3 }, || {
        "D6/Z is not D6".into()
    })?;
    ensure(commuting_probability(&d8) == Ratio::new(5, 8), || "Pr(D8)".into())?;
    ensure(commuting_probability(&d6) == Ratio::new(1, 2), || "Pr(D6)".into())?;
    for g in [&d8, &d6] {
        let v = zagreb_report(&ccc_graph(g)).verdict;
        ensure(v != Verdict::Violated, || format!("{} violated", g.name()))?;
    }
    Ok("centralizer counts 4, 5; Pr = 5/8, 1/2".into())
}

fn criterion_12() -> Check {
    let corpus = common::corpus(100);
    for g in &corpus {
        let fast = ccc_graph(g);
        let slow = common::all_pairs_ccc(g);
        ensure(fast.edges() == slow.edges() && fast.labels() == slow.labels(), || {
            format!("{}: edge sets differ", g.name())
        })?;
    }
    Ok(format!("{} groups of order <= 100", corpus.len()))
}

fn fingerprint(g: &FiniteGroup) -> (usize, Vec<usize>, usize, Option<CliqueDecomposition>) {
    let data = conjugacy_data(g);
    (g.order(), data.class_sizes(), data.center.len(), detect_clique_union(&ccc_graph(g)))
}

fn criterion_13() -> Check {
    // Round-robin over the families so every presentation is exercised.
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
    let mut by_family: Vec<Vec<FamilySpec>> = Vec::new();
    for spec in common::family_specs(200) {
        match by_family.iter_mut().find(|v| v[0].family_name() == spec.family_name()) {
            Some(v) => v.push(spec),
            None => by_family.push(vec![spec]),
        }
    }
    for v in &mut by_family {
        v.shuffle(&mut rng);
    }
    let mut sample = Vec::new();
    'fill: for round in 0.. {
        for v in &by_family {
            if sample.len() == 20 {
                break 'fill;
            }
            if let Some(s) = v.get(round) {
                sample.push(*s);
            }
        }
    }
    for spec in &sample {
        let normal = build_family(spec).map_err(|e| format!("{spec}: {e}"))?;
        let pres = family_presentation(spec).map_err(|e| e.to_string())?;
        let enumerated = coset_enumerate(&pres, DEFAULT_COSET_LIMIT).map_err(|e| format!("{spec}: {e}"))?;
        let (a, b) = (fingerprint(&normal), fingerprint(&enumerated));
        ensure(a == b, || format!("{spec}: {a:?} vs {b:?}"))?;
    }
    let names: Vec<String> = sample.iter().map(|s| s.to_string()).collect();
    Ok(format!("20 specs agree: {}", names.join(" ")))
}

fn main() {
    let criteria: &[Criterion] = &[
        ("dihedral sweep m = 3..60", criterion_1),
        ("dicyclic sweep m = 2..30", criterion_2),
        ("semidihedral sweep m = 2..15", criterion_3),
        ("V8m sweep m = 1..15", criterion_4),
        ("U(n,m) sweep", criterion_5),
        ("G(p,m,n) sweep", criterion_6),
        ("central quotient Z_p x Z_p", criterion_7),
        ("Frobenius quotients", criterion_8),
        ("order-16 battery", criterion_9),
        ("counterexample K1,5 + K3", criterion_10),
        ("centralizers and commuting probability", criterion_11),
        ("CCC edge-test oracle", criterion_12),
        ("presentation vs normal form", criterion_13),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): panicked", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
