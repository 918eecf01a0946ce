//! The `check` subcommand: move-invariance and skein-property suites.

use qinv_core::diagram::{parse_braid, random_morse_word, FramedLinkDiagram, MorseEvent, MorseWord};
use qinv_core::moves::{fixture_corpus, MoveKind};
use qinv_core::ring::{LaurentPoly, Level};
use qinv_core::skein::{bracket_statesum, bracket_sweep, EvalConfig};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Kirby,
    Gamma,
    Skein,
}

pub struct Row {
    pub passed: bool,
    pub group: String,
    pub name: String,
    pub detail: String,
}

pub fn run(suite: Suite, levels: &[u32], config: &EvalConfig) -> Vec<Row> {
    match suite {
        Suite::Kirby => fixtures(levels, config, |k| matches!(k, MoveKind::K1Plus | MoveKind::K1Minus | MoveKind::K2Slide)),
        Suite::Gamma => fixtures(levels, config, |k| {
            !matches!(k, MoveKind::K1Plus | MoveKind::K1Minus | MoveKind::K2Slide)
        }),
        Suite::Skein => skein(config),
    }
}

fn fixtures(levels: &[u32], config: &EvalConfig, keep: impl Fn(MoveKind) -> bool) -> Vec<Row> {
    let mut rows = Vec::new();
    for f in fixture_corpus().into_iter().filter(|f| keep(f.kind)) {
        for &k in levels {
            let level = Level::new(k as i64).expect("levels are at least 2");
            let expected = if f.expect_equal { "equal" } else { "unequal" };
            let (passed, detail) = match f.evaluate(level, config) {
                Ok(o) => {
                    let got = if o.comparison.equal { "equal" } else { "unequal" };
                    let note = if o.comparison.sign_ambiguous { ", up to sign" } else { "" };
                    (o.passed(), format!("{got}{note} (expected {expected})"))
                }
                Err(e) => (false, format!("error: {e}")),
            };
            rows.push(Row {
                passed,
                group: format!("{} k={k}", f.kind),
                name: f.name.clone(),
                detail,
            });
        }
    }
    rows
}

fn skein(config: &EvalConfig) -> Vec<Row> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5ce1);
    let samples = 25;
    let mut tallies: Vec<(&str, usize, Vec<String>)> = vec![
        ("engines agree", 0, vec![]),
        ("kink factor -A^3", 0, vec![]),
        ("kink factor -A^-3", 0, vec![]),
        ("mirror is A -> A^-1", 0, vec![]),
        ("distant union multiplies", 0, vec![]),
        ("cancelling crossing pair", 0, vec![]),
    ];
    let bracket = |w: &MorseWord| bracket_sweep(w, config).map(|b| b.generic).map_err(|e| e.to_string());
    for i in 0..samples {
        let c = rng.gen_range(1..=10);
        let d = FramedLinkDiagram::blackboard(random_morse_word(&mut rng, c, 8));
        let c2 = rng.gen_range(0..4);
        let e = FramedLinkDiagram::blackboard(random_morse_word(&mut rng, c2, 6));
        let widths = d.word().width_profile();
        let at = (0..widths.len()).filter(|&j| widths[j] >= 2).nth(i % 2).unwrap_or(0);
        let p = rng.gen_range(0..widths[at] - 1);
        let mut padded = d.word().events().to_vec();
        padded.splice(at + 1..at + 1, [MorseEvent::cross(p, 1), MorseEvent::cross(p, -1)]);

        let checks: Vec<Result<bool, String>> = vec![
            bracket_statesum(d.word(), config)
                .map_err(|e| e.to_string())
                .and_then(|s| Ok(s.generic == bracket(d.word())?)),
            kink(&d, 1, &bracket),
            kink(&d, -1, &bracket),
            bracket(d.mirror().word()).and_then(|m| Ok(m == bracket(d.word())?.conj())),
            bracket(d.distant_union(&e).word())
                .and_then(|u| Ok(u == &bracket(d.word())? * &bracket(e.word())?)),
            MorseWord::new(padded)
                .map_err(|e| e.to_string())
                .and_then(|w| Ok(bracket(&w)? == bracket(d.word())?)),
        ];
        for (t, r) in tallies.iter_mut().zip(checks) {
            match r {
                Ok(true) => t.1 += 1,
                Ok(false) => t.2.push(format!("sample {i}")),
                Err(e) => t.2.push(format!("sample {i}: {e}")),
            }
        }
    }
    let mut rows: Vec<Row> = tallies
        .into_iter()
        .map(|(name, ok, bad)| Row {
            passed: bad.is_empty(),
            group: "random".into(),
            name: name.into(),
            detail: if bad.is_empty() {
                format!("{ok}/{samples} diagrams")
            } else {
                format!("failed on {}", bad.join(", "))
            },
        })
        .collect();
    for (a, b) in [
        ("braid 3 : s1 s2 s1", "braid 3 : s2 s1 s2"),
        ("braid 3 : S1 S2 S1 s2", "braid 3 : S2 S1 S2 s2"),
        ("braid 2 : s1 s1 s1", "braid 2 : s1 s1 S1 s1 s1"),
    ] {
        let eval = |t: &str| {
            let d = parse_braid(t).map_err(|e| e.to_string())?.closure();
            bracket(d.word())
        };
        let (passed, detail) = match (eval(a), eval(b)) {
            (Ok(x), Ok(y)) => (x == y, if x == y { "equal".to_string() } else { "unequal".to_string() }),
            (Err(e), _) | (_, Err(e)) => (false, format!("error: {e}")),
        };
        rows.push(Row {
            passed,
            group: "rewrite".into(),
            name: format!("{a}  vs  {b}"),
            detail,
        });
    }
    rows
}

fn kink(
    d: &FramedLinkDiagram,
    t: i64,
    bracket: &impl Fn(&MorseWord) -> Result<LaurentPoly, String>,
) -> Result<bool, String> {
    let kinked = d.insert_kinks(0, t).map_err(|e| e.to_string())?;
    Ok(bracket(kinked.word())? == &LaurentPoly::monomial(3 * t, -1) * &bracket(d.word())?)
}
