//! Kirby and Γ-moves on presentations, and the fixture corpus used to check
//! that invariants do not see them.

use std::fmt;

use crate::diagram::{parse_link_file, BraidWord, FramedLinkDiagram};
use crate::invariants::{broda, compare, rtw, Comparison, InvariantError, SpecialFramedLink};
use crate::ring::Level;
use crate::skein::EvalConfig;
use crate::colored::evaluate_labeled_link;

const CORPUS_TEXT: &str = include_str!("../fixtures/moves.links");

/// Blow-up: distant union with a `±1`-framed unknot.
pub fn k1_add(d: &FramedLinkDiagram, sign: i64) -> FramedLinkDiagram {
    d.distant_union(&FramedLinkDiagram::unknot(sign.signum()))
}

/// Distant union with the special Hopf link.
pub fn gamma_d_add(sl: &SpecialFramedLink) -> SpecialFramedLink {
    sl.distant_union(&SpecialFramedLink::special_hopf())
}

/// Distant union with a 0-framed ordinary unknot.
pub fn gamma_e_add(sl: &SpecialFramedLink) -> SpecialFramedLink {
    sl.distant_union(&SpecialFramedLink::ordinary(FramedLinkDiagram::unknot(0)))
}

/// Slides a distant unknot of framing `framing` over component `over`.
///
/// Returns `(before, after)`: before is `sl ⊔ U`, after replaces `U` by a
/// blackboard parallel of `over` with framing `framing + f(over)`. The moved
/// unknot is special when `special` is set. Validation is left to the caller.
pub fn slide_distant_unknot(
    sl: &SpecialFramedLink,
    over: usize,
    framing: i64,
    special: bool,
) -> Result<(SpecialFramedLink, SpecialFramedLink), InvariantError> {
    let d = sl.diagram();
    let count = d.component_count();
    if over >= count {
        return Err(InvariantError::NoSuchComponent { component: over, count });
    }
    let unknot = FramedLinkDiagram::unknot(framing);
    let before_d = d.distant_union(&unknot);
    let mut before_special = sl.special_components();
    if special {
        before_special.push(count);
    }
    let before = SpecialFramedLink::new_unvalidated(before_d, &before_special)?;

    let mut mult = vec![1; count];
    mult[over] = 2;
    let cable = d
        .realize_framings()
        .cable(&mult)
        .expect("multiplicities match components");
    let mut seen_over = false;
    let mut framings = Vec::with_capacity(count + 1);
    let mut after_special = Vec::new();
    for (c, &o) in cable.origin.iter().enumerate() {
        let is_copy = o == over && seen_over;
        seen_over |= o == over;
        if is_copy {
            framings.push(framing + d.framings()[over]);
            if special {
                after_special.push(c);
            }
        } else {
            framings.push(d.framings()[o]);
            if sl.is_special(o) {
                after_special.push(c);
            }
        }
    }
    let after_d = cable
        .diagram
        .with_framings(framings)
        .expect("one framing per component");
    let after = SpecialFramedLink::new_unvalidated(after_d, &after_special)?;
    Ok((before, after))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    K1Plus,
    K1Minus,
    K2Slide,
    GammaA,
    GammaB,
    GammaC,
    GammaD,
    GammaE,
    GammaF,
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MoveKind::K1Plus => "K1+",
            MoveKind::K1Minus => "K1-",
            MoveKind::K2Slide => "K2",
            MoveKind::GammaA => "Γa",
            MoveKind::GammaB => "Γb",
            MoveKind::GammaC => "Γc",
            MoveKind::GammaD => "Γd",
            MoveKind::GammaE => "Γe",
            MoveKind::GammaF => "Γf",
        })
    }
}

/// Which quantity a fixture compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureCheck {
    Rtw,
    Broda,
    /// Bare labeled bracket (ω⁺ on ordinary, ω on special), no normalization.
    Numerator,
}

#[derive(Clone, Debug)]
pub struct MoveFixture {
    pub name: String,
    pub kind: MoveKind,
    pub before: SpecialFramedLink,
    pub after: SpecialFramedLink,
    pub check: FixtureCheck,
    pub expect_equal: bool,
    pub provenance: &'static str,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FixtureOutcome {
    pub comparison: Comparison,
    pub expect_equal: bool,
}

impl FixtureOutcome {
    pub fn passed(&self) -> bool {
        self.comparison.equal == self.expect_equal
    }
}

impl MoveFixture {
    pub fn evaluate(&self, level: Level, config: &EvalConfig) -> Result<FixtureOutcome, InvariantError> {
        let comparison = match self.check {
            FixtureCheck::Rtw => compare(
                &rtw(self.before.diagram(), level, config)?,
                &rtw(self.after.diagram(), level, config)?,
            )?,
            FixtureCheck::Broda => compare(
                &broda(&self.before, level, config)?,
                &broda(&self.after, level, config)?,
            )?,
            FixtureCheck::Numerator => {
                let eval = |sl: &SpecialFramedLink| evaluate_labeled_link(sl.diagram(), &sl.labels(), level, config);
                Comparison {
                    equal: eval(&self.before)? == eval(&self.after)?,
                    sign_ambiguous: false,
                }
            }
        };
        Ok(FixtureOutcome {
            comparison,
            expect_equal: self.expect_equal,
        })
    }
}

/// Links the K1, Γd and Γe moves are applied to.
pub fn suite_links() -> Vec<(&'static str, FramedLinkDiagram)> {
    vec![
        ("empty", FramedLinkDiagram::empty()),
        ("U0", FramedLinkDiagram::unknot(0)),
        ("Hopf(0,0)", FramedLinkDiagram::hopf(0, 0)),
        ("trefoil(-1)", trefoil(-1)),
    ]
}

/// Special links the Γd and Γe moves are applied to.
pub fn suite_special_links() -> Vec<(&'static str, SpecialFramedLink)> {
    vec![
        ("empty", SpecialFramedLink::empty()),
        ("special U0", special(FramedLinkDiagram::unknot(0), &[0])),
        ("special Hopf", SpecialFramedLink::special_hopf()),
        ("U+1", SpecialFramedLink::ordinary(FramedLinkDiagram::unknot(1))),
        ("Hopf(0,0)", SpecialFramedLink::ordinary(FramedLinkDiagram::hopf(0, 0))),
        ("trefoil(-1)", SpecialFramedLink::ordinary(trefoil(-1))),
    ]
}

fn trefoil(framing: i64) -> FramedLinkDiagram {
    BraidWord::new(2, vec![(1, 1); 3])
        .expect("valid braid")
        .closure()
        .with_framings(vec![framing])
        .expect("one component")
}

fn special(d: FramedLinkDiagram, s: &[usize]) -> SpecialFramedLink {
    SpecialFramedLink::new(d, s).expect("admissible special link")
}

fn text_pair(name: &str) -> (SpecialFramedLink, SpecialFramedLink) {
    let blocks = parse_link_file(CORPUS_TEXT).expect("fixture corpus parses");
    let get = |suffix: &str| {
        let full = format!("{name}.{suffix}");
        let b = blocks
            .iter()
            .find(|b| b.name == full)
            .unwrap_or_else(|| panic!("fixture block {full} missing"));
        special(b.diagram.clone(), &b.special)
    };
    (get("before"), get("after"))
}

/// Every fixture: the checked-in text pairs, generated slides, the move
/// insertions over the suite links, and the negative fixture.
pub fn fixture_corpus() -> Vec<MoveFixture> {
    let mut out = Vec::new();
    let mut push = |name: String,
                    kind,
                    (before, after): (SpecialFramedLink, SpecialFramedLink),
                    check,
                    expect_equal,
                    provenance| {
        out.push(MoveFixture {
            name,
            kind,
            before,
            after,
            check,
            expect_equal,
            provenance,
        })
    };

    for (name, d) in suite_links() {
        for (sign, kind) in [(1, MoveKind::K1Plus), (-1, MoveKind::K1Minus)] {
            push(
                format!("k1{}-{name}", if sign > 0 { "+" } else { "-" }),
                kind,
                (
                    SpecialFramedLink::ordinary(d.clone()),
                    SpecialFramedLink::ordinary(k1_add(&d, sign)),
                ),
                FixtureCheck::Rtw,
                true,
                "blow-up by a distant ±1-framed unknot",
            );
        }
    }

    for name in ["k2-unknots", "k2-unlink", "k2-twisted"] {
        push(
            name.to_string(),
            MoveKind::K2Slide,
            text_pair(name),
            FixtureCheck::Rtw,
            true,
            "hand-drawn handle slide between split unknots",
        );
    }
    let slid = |base: &SpecialFramedLink, over, framing, sp| {
        slide_distant_unknot(base, over, framing, sp).expect("component exists")
    };
    let tref = SpecialFramedLink::ordinary(trefoil(-1));
    push(
        "k2-over-trefoil".into(),
        MoveKind::K2Slide,
        slid(&tref, 0, 2, false),
        FixtureCheck::Rtw,
        true,
        "distant 2-framed unknot slid over the (-1)-framed trefoil",
    );
    push(
        "k2-over-hopf".into(),
        MoveKind::K2Slide,
        slid(&SpecialFramedLink::ordinary(FramedLinkDiagram::hopf(1, 0)), 0, -1, false),
        FixtureCheck::Rtw,
        true,
        "distant (-1)-framed unknot slid over a Hopf component",
    );

    for name in ["gf-r2", "gf-r3", "gf-markov", "gf-morse"] {
        push(
            name.to_string(),
            MoveKind::GammaF,
            text_pair(name),
            FixtureCheck::Broda,
            true,
            "Reidemeister rewrite of the same framed link",
        );
    }

    let shopf = SpecialFramedLink::special_hopf();
    let (_, s_over_s) = slid(&shopf, 1, 0, true);
    push(
        "ga-special-over-special".into(),
        MoveKind::GammaA,
        (gamma_e_special(&shopf), s_over_s),
        FixtureCheck::Broda,
        true,
        "distant special unknot slid over the special Hopf component",
    );
    push(
        "gb-ordinary-over-special".into(),
        MoveKind::GammaB,
        slid(&shopf, 1, 1, false),
        FixtureCheck::Broda,
        true,
        "distant 1-framed ordinary unknot slid over a special component",
    );
    push(
        "gc-ordinary-over-ordinary".into(),
        MoveKind::GammaC,
        slid(&shopf, 0, -1, false),
        FixtureCheck::Broda,
        true,
        "distant (-1)-framed ordinary unknot slid over an ordinary component",
    );
    push(
        "gc-over-trefoil".into(),
        MoveKind::GammaC,
        slid(&tref, 0, 1, false),
        FixtureCheck::Broda,
        true,
        "distant 1-framed ordinary unknot slid over the (-1)-framed trefoil",
    );

    for (name, sl) in suite_special_links() {
        push(
            format!("gd-{name}"),
            MoveKind::GammaD,
            (sl.clone(), gamma_d_add(&sl)),
            FixtureCheck::Broda,
            true,
            "distant special Hopf link added",
        );
        push(
            format!("ge-{name}"),
            MoveKind::GammaE,
            (sl.clone(), gamma_e_add(&sl)),
            FixtureCheck::Broda,
            true,
            "distant 0-framed ordinary unknot added",
        );
    }

    // ω on a special unknot slid over an ω⁺-labeled 1-framed ordinary unknot:
    // the labeled brackets differ, which is why specials may not slide over
    // ordinary components.
    push(
        "negative-special-over-ordinary".into(),
        MoveKind::GammaB,
        slid(&SpecialFramedLink::ordinary(FramedLinkDiagram::unknot(1)), 0, 0, true),
        FixtureCheck::Numerator,
        false,
        "special component slid over an ordinary one",
    );
    out
}

fn gamma_e_special(sl: &SpecialFramedLink) -> SpecialFramedLink {
    sl.distant_union(&special(FramedLinkDiagram::unknot(0), &[0]))
}
