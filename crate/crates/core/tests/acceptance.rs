//! Acceptance suite: one line per criterion, nonzero exit on any failure.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use qinv_core::colored::{evaluate_labeled_link, quantum_dim, SkeinLabel};
use qinv_core::diagram::{parse_braid, random_morse_word, FramedLinkDiagram, MorseEvent, MorseWord};
use qinv_core::invariants::{
    approx_agrees, broda, broda_float, compare, rtw, rtw_float, InvariantValue, SpecialFramedLink,
};
use qinv_core::moves::{fixture_corpus, gamma_d_add, gamma_e_add, k1_add, suite_links, suite_special_links, MoveKind};
use qinv_core::ring::{LaurentPoly, Level};
use qinv_core::skein::{bracket_statesum, bracket_sweep, EvalConfig, SkeinError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

enum Verdict {
    Pass(String),
    Flagged(String),
    Fail(String),
}

type Outcome = Result<Verdict, String>;

fn level(k: i64) -> Level {
    Level::new(k).expect("valid level")
}

fn same(a: &InvariantValue, b: &InvariantValue) -> Result<bool, String> {
    let c = compare(a, b).map_err(|e| e.to_string())?;
    Ok(c.equal && !c.sign_ambiguous)
}

fn integer(v: &InvariantValue, n: i64) -> Result<bool, String> {
    let target = InvariantValue {
        numerator: qinv_core::ring::CyclotomicNumber::from_integer(&v.level.ring(), n),
        denominators: vec![],
        ..v.clone()
    };
    same(v, &target)
}

fn check(ok: bool, what: impl Into<String>, failures: &mut Vec<String>) {
    if !ok {
        failures.push(what.into());
    }
}

fn verdict(failures: Vec<String>, detail: String) -> Outcome {
    if failures.is_empty() {
        Ok(Verdict::Pass(detail))
    } else {
        Ok(Verdict::Fail(failures.join("; ")))
    }
}

fn sweep(w: &MorseWord) -> Result<LaurentPoly, String> {
    bracket_sweep(w, &EvalConfig::default()).map(|b| b.generic).map_err(|e| e.to_string())
}

fn statesum(w: &MorseWord) -> Result<LaurentPoly, String> {
    bracket_statesum(w, &EvalConfig::default()).map(|b| b.generic).map_err(|e| e.to_string())
}

fn colored_unknot() -> Outcome {
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut cases = 0;
    for k in 2..=8 {
        let l = level(k);
        for n in 0..k as u32 {
            let v = evaluate_labeled_link(&FramedLinkDiagram::unknot(0), &[SkeinLabel::Color(n)], l, &cfg)
                .map_err(|e| e.to_string())?;
            check(v == quantum_dim(n, l), format!("k={k} n={n} differs from the q-integer"), &mut failures);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let t = PI / k as f64;
            let expected = sign * ((n as f64 + 1.0) * t).sin() / t.sin();
            let z = v.complex_approx();
            check(
                (z.re - expected).abs() < 1e-9 && z.im.abs() < 1e-9,
                format!("k={k} n={n} is {z}, sine ratio {expected}"),
                &mut failures,
            );
            if n == k as u32 - 1 {
                check(v.is_zero(), format!("k={k} top color does not vanish"), &mut failures);
            }
            cases += 1;
        }
    }
    verdict(failures, format!("{cases} (k, n) pairs exact, top colors vanish"))
}

fn skein_axioms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e1f);
    let mut failures = Vec::new();
    for i in 0..50 {
        let c = rng.gen_range(1..=12);
        let d = FramedLinkDiagram::blackboard(random_morse_word(&mut rng, c, 8));
        let b = statesum(d.word())?;
        for t in [1i64, -1] {
            let kinked = d.insert_kinks(0, t).map_err(|e| e.to_string())?;
            check(
                sweep(kinked.word())? == &LaurentPoly::monomial(3 * t, -1) * &b,
                format!("sample {i}: kink {t:+}"),
                &mut failures,
            );
        }
        check(sweep(d.mirror().word())? == b.conj(), format!("sample {i}: mirror"), &mut failures);
        let c2 = rng.gen_range(0..5);
        let other = FramedLinkDiagram::blackboard(random_morse_word(&mut rng, c2, 6));
        check(
            sweep(d.distant_union(&other).word())? == &b * &sweep(other.word())?,
            format!("sample {i}: distant union"),
            &mut failures,
        );
        // cancelling crossing pair after some event of width at least 2
        let widths = d.word().width_profile();
        let at = (0..widths.len()).filter(|&j| widths[j] >= 2).nth(i % 3).unwrap_or(0);
        let p = rng.gen_range(0..widths[at] - 1);
        let mut events = d.word().events().to_vec();
        events.splice(at + 1..at + 1, [MorseEvent::cross(p, -1), MorseEvent::cross(p, 1)]);
        let padded = MorseWord::new(events).map_err(|e| e.to_string())?;
        check(sweep(&padded)? == b, format!("sample {i}: R2 pair"), &mut failures);
    }
    let pairs = [
        ("braid 3 : s1 s2 s1 S2", "braid 3 : s2 s1 s2 S2"),
        ("braid 4 : S2 s1 s2 s1 s3", "braid 4 : S2 s2 s1 s2 s3"),
        ("braid 3 : s1 S2 s1 S2", "braid 3 : s1 s2 S2 S2 s1 S2"),
        ("braid 2 : s1 s1 s1", "braid 2 : s1 S1 s1 s1 s1"),
    ];
    for (a, b) in pairs {
        let x = parse_braid(a).map_err(|e| e.to_string())?.closure();
        let y = parse_braid(b).map_err(|e| e.to_string())?.closure();
        check(sweep(x.word())? == sweep(y.word())?, format!("{a} vs {b}"), &mut failures);
    }
    verdict(failures, "50 random diagrams and 4 braid rewrites exact".into())
}

fn engine_equivalence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xe91e);
    let mut failures = Vec::new();
    let mut top = 0;
    for i in 0..50 {
        let c = if i < 10 { 14 } else { rng.gen_range(0..=14) };
        top = top.max(c);
        let w = random_morse_word(&mut rng, c, 10);
        check(statesum(&w)? == sweep(&w)?, format!("sample {i} ({c} crossings)"), &mut failures);
    }
    verdict(failures, format!("50 random words up to {top} crossings identical"))
}

fn blow_ups() -> Outcome {
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    for k in [3, 4] {
        let l = level(k);
        let s3 = rtw(&FramedLinkDiagram::empty(), l, &cfg).map_err(|e| e.to_string())?;
        check(integer(&s3, 1)?, format!("k={k}: Z(S3) != 1"), &mut failures);
        let u = rtw(&FramedLinkDiagram::unknot(1), l, &cfg).map_err(|e| e.to_string())?;
        check(same(&u, &s3)?, format!("k={k}: rtw(U+1) != rtw(empty)"), &mut failures);
        for (name, d) in suite_links() {
            let base = rtw(&d, l, &cfg).map_err(|e| e.to_string())?;
            for sign in [1, -1] {
                let blown = rtw(&k1_add(&d, sign), l, &cfg).map_err(|e| e.to_string())?;
                check(same(&base, &blown)?, format!("k={k}: {name} ⊔ U{sign:+}"), &mut failures);
            }
        }
    }
    verdict(failures, "4 links × 2 signs × k∈{3,4} exact".into())
}

fn desk_values() -> Outcome {
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let u0 = rtw(&FramedLinkDiagram::unknot(0), level(3), &cfg).map_err(|e| e.to_string())?;
    check(integer(&u0, 2)?, "rtw(U0, k=3) != 2", &mut failures);
    let s1s3 = SpecialFramedLink::new(FramedLinkDiagram::unknot(0), &[0]).map_err(|e| e.to_string())?;
    let v = broda(&s1s3, level(3), &cfg).map_err(|e| e.to_string())?;
    check(integer(&v, 2)?, "broda(special U0, k=3) != 2", &mut failures);
    for k in 3..=5 {
        let l = level(k);
        let e = broda(&SpecialFramedLink::empty(), l, &cfg).map_err(|e| e.to_string())?;
        let h = broda(&SpecialFramedLink::special_hopf(), l, &cfg).map_err(|e| e.to_string())?;
        check(integer(&e, 1)? && integer(&h, 1)?, format!("k={k}: S4 presentations != 1"), &mut failures);
    }
    verdict(failures, "rtw(U0)=2, broda(S1xS3)=2, broda(S4)=1 twice at k=3..5".into())
}

fn gamma_moves() -> Outcome {
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut count = 0;
    for k in [3, 4] {
        let l = level(k);
        for (name, sl) in suite_special_links() {
            let base = broda(&sl, l, &cfg).map_err(|e| e.to_string())?;
            for (tag, moved) in [("d", gamma_d_add(&sl)), ("e", gamma_e_add(&sl))] {
                let v = broda(&moved, l, &cfg).map_err(|e| e.to_string())?;
                check(same(&base, &v)?, format!("k={k}: Γ{tag} on {name}"), &mut failures);
                count += 1;
            }
        }
        for f in fixture_corpus() {
            if !matches!(f.kind, MoveKind::GammaA | MoveKind::GammaB | MoveKind::GammaC | MoveKind::GammaF) {
                continue;
            }
            let o = f.evaluate(l, &cfg).map_err(|e| e.to_string())?;
            let what = if f.expect_equal { "differs" } else { "fails to differ" };
            check(o.passed(), format!("k={k}: {} {what}", f.name), &mut failures);
            count += 1;
        }
    }
    verdict(failures, format!("{count} checks incl. the expected-unequal fixture"))
}

fn orientation_and_products() -> Outcome {
    let cfg = EvalConfig::default();
    let links = suite_special_links();
    let mut failures = Vec::new();
    for k in 3..=5 {
        let l = level(k);
        let s4 = broda(&SpecialFramedLink::empty(), l, &cfg).map_err(|e| e.to_string())?;
        check(integer(&s4, 1)?, format!("k={k}: I(S4) != 1"), &mut failures);
        for (a_name, a) in &links {
            let va = broda(a, l, &cfg).map_err(|e| e.to_string())?;
            let m = broda(&a.mirror(), l, &cfg).map_err(|e| e.to_string())?;
            // squares agree exactly; the float value fixes the sign
            let c = compare(&m, &va.conj()).map_err(|e| e.to_string())?;
            check(
                c.equal && approx_agrees(m.approx, va.approx.conj()),
                format!("k={k}: mirror of {a_name}"),
                &mut failures,
            );
            for (b_name, b) in &links {
                let vb = broda(b, l, &cfg).map_err(|e| e.to_string())?;
                let joint = broda(&a.distant_union(b), l, &cfg).map_err(|e| e.to_string())?;
                let prod = va.mul(&vb).map_err(|e| e.to_string())?;
                check(same(&joint, &prod)?, format!("k={k}: {a_name} ⊔ {b_name}"), &mut failures);
            }
        }
    }
    verdict(failures, "multiplicativity, mirror = conj, I(S4)=1 at k=3..5".into())
}

fn classicality() -> Outcome {
    let cfg = EvalConfig::default();
    let s2s2 = SpecialFramedLink::ordinary(FramedLinkDiagram::hopf(0, 0));
    let mixed = SpecialFramedLink::ordinary(FramedLinkDiagram::unknot(1).distant_union(&FramedLinkDiagram::unknot(-1)));
    let mut agree = Vec::new();
    let mut disagree = Vec::new();
    for k in [3, 4] {
        let l = level(k);
        let a = broda(&s2s2, l, &cfg).map_err(|e| e.to_string())?;
        let b = broda(&mixed, l, &cfg).map_err(|e| e.to_string())?;
        if same(&a, &b)? {
            agree.push(format!("k={k}"));
        } else {
            disagree.push(format!("k={k}: S2xS2 = {:.6}, CP2#CP2bar = {:.6}", a.approx, b.approx));
        }
    }
    if disagree.is_empty() {
        Ok(Verdict::Pass(format!("equal at {}", agree.join(", "))))
    } else {
        Ok(Verdict::Flagged(format!(
            "equal at {}; discrepancy at {}",
            if agree.is_empty() { "none".into() } else { agree.join(", ") },
            disagree.join("; ")
        )))
    }
}

fn performance() -> Outcome {
    let mut failures = Vec::new();
    let knot = parse_braid(&format!("braid 2 :{}", " s1".repeat(11))).map_err(|e| e.to_string())?.closure();
    let cabled = knot.cable(&[3]).map_err(|e| e.to_string())?.diagram;
    let (w, c) = (cabled.word().max_width(), cabled.crossing_count());
    check(w <= 12 && c <= 100, format!("test diagram has width {w}, {c} crossings"), &mut failures);
    let start = Instant::now();
    let v = sweep(cabled.word())?;
    let took = start.elapsed();
    check(!v.is_zero(), "cabled bracket vanished", &mut failures);
    check(took < Duration::from_secs(5), format!("sweep took {took:?}"), &mut failures);
    let refused = bracket_statesum(cabled.word(), &EvalConfig::default());
    check(
        matches!(refused, Err(SkeinError::CrossingCap { cap: 22, .. })),
        "state sum did not refuse",
        &mut failures,
    );
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let w23 = random_morse_word(&mut rng, 23, 6);
    check(
        bracket_statesum(&w23, &EvalConfig::default()).is_err(),
        "state sum accepted 23 crossings",
        &mut failures,
    );
    verdict(failures, format!("width {w}, {c} crossings in {:.3} s; state sum refuses > 22", took.as_secs_f64()))
}

fn float_agreement() -> Outcome {
    let cfg = EvalConfig::default();
    let mut failures = Vec::new();
    let mut count = 0;
    let mut worst: f64 = 0.0;
    for k in 2..=5 {
        let l = level(k);
        for (name, d) in suite_links() {
            for d in [d.clone(), k1_add(&d, 1), d.mirror()] {
                let exact = rtw(&d, l, &cfg).map_err(|e| e.to_string())?;
                let float = rtw_float(&d, l, &cfg).map_err(|e| e.to_string())?;
                worst = worst.max((exact.approx - float).norm() / exact.approx.norm().max(1.0));
                check(approx_agrees(exact.approx, float), format!("rtw {name} k={k}"), &mut failures);
                count += 1;
            }
        }
        for (name, sl) in suite_special_links() {
            for sl in [sl.clone(), gamma_d_add(&sl), sl.mirror()] {
                let exact = broda(&sl, l, &cfg).map_err(|e| e.to_string())?;
                let float = broda_float(&sl, l, &cfg).map_err(|e| e.to_string())?;
                worst = worst.max((exact.approx - float).norm() / exact.approx.norm().max(1.0));
                check(approx_agrees(exact.approx, float), format!("broda {name} k={k}"), &mut failures);
                count += 1;
            }
        }
    }
    verdict(failures, format!("{count} invariants, worst relative gap {worst:.1e} (tolerance 1e-9)"))
}

/// Name, check, and an optional wall-clock budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("colored unknot equals the quantum dimension", colored_unknot, Some(60)),
        ("skein axioms", skein_axioms, Some(30)),
        ("state sum and sweep agree", engine_equivalence, Some(60)),
        ("blow-up invariance of the 3-manifold invariant", blow_ups, Some(120)),
        ("golden desk values", desk_values, None),
        ("Γ-move invariance", gamma_moves, Some(120)),
        ("multiplicativity, orientation, S4", orientation_and_products, None),
        ("S2xS2 against CP2#CP2bar", classicality, None),
        ("sweep performance and state-sum cap", performance, None),
        ("float re-evaluation agreement", float_agreement, None),
    ];
    let mut failed = 0;
    for (i, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let over_budget = budget.filter(|b| secs >= *b as f64);
        let (tag, detail) = match (outcome, over_budget) {
            (Err(e), _) => ("FAIL", format!("error: {e}")),
            (Ok(Verdict::Fail(d)), _) => ("FAIL", d),
            (Ok(_), Some(b)) => ("FAIL", format!("took {secs:.1} s, budget {b} s")),
            (Ok(Verdict::Pass(d)), None) => ("PASS", d),
            (Ok(Verdict::Flagged(d)), None) => ("FLAGGED", d),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {tag:<7} {name} [{secs:.2} s]: {detail}", i + 1);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}
