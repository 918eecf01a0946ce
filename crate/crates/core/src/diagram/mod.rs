//! Framed link diagrams as Morse words.
//!
//! A Morse word is read bottom to top. `Cup p` opens two adjacent strands at
//! positions `p, p+1`; `Cap p` joins the strands at `p, p+1`; a crossing swaps
//! the strands at `p, p+1`. `CrossPos` is the crossing whose sign is `+1` when
//! both strands run upward; it contributes `A·(vertical) + A^-1·(cup-cap)` to
//! the bracket, `CrossNeg` the mirror expansion.

mod text;

pub use text::{
    parse_braid, parse_link_file, parse_morse, write_link_block, LinkBlock, ParseError,
    ParseErrorKind,
};

use rand::Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("event {index}: needs two open strands but only {width} are open")]
    Unbalanced { index: usize, width: usize },
    #[error("event {index}: position {position} out of range for {width} open strands")]
    PositionOutOfRange {
        index: usize,
        position: usize,
        width: usize,
    },
    #[error("word ends with {width} open strands")]
    Unclosed { width: usize },
    #[error("component {component} does not exist ({count} components)")]
    NoSuchComponent { component: usize, count: usize },
    #[error("expected {expected} per-component entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("generator s{index} out of range for a braid on {strands} strands")]
    GeneratorOutOfRange { index: usize, strands: usize },
    #[error("a braid needs at least one strand")]
    NoStrands,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EventKind {
    Cup,
    Cap,
    CrossPos,
    CrossNeg,
}

impl EventKind {
    pub fn crossing_type(self) -> Option<i64> {
        match self {
            EventKind::CrossPos => Some(1),
            EventKind::CrossNeg => Some(-1),
            _ => None,
        }
    }

    fn mirrored(self) -> EventKind {
        match self {
            EventKind::CrossPos => EventKind::CrossNeg,
            EventKind::CrossNeg => EventKind::CrossPos,
            other => other,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MorseEvent {
    pub kind: EventKind,
    pub position: usize,
}

impl MorseEvent {
    pub fn cup(position: usize) -> Self {
        MorseEvent {
            kind: EventKind::Cup,
            position,
        }
    }

    pub fn cap(position: usize) -> Self {
        MorseEvent {
            kind: EventKind::Cap,
            position,
        }
    }

    /// A crossing of type `sign` (`> 0` positive, otherwise negative).
    pub fn cross(position: usize, sign: i64) -> Self {
        MorseEvent {
            kind: if sign > 0 {
                EventKind::CrossPos
            } else {
                EventKind::CrossNeg
            },
            position,
        }
    }
}

/// A validated closed Morse word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MorseWord {
    events: Vec<MorseEvent>,
}

impl MorseWord {
    pub fn new(events: Vec<MorseEvent>) -> Result<Self, DiagramError> {
        let mut width = 0usize;
        for (index, ev) in events.iter().enumerate() {
            match ev.kind {
                EventKind::Cup => {
                    if ev.position > width {
                        return Err(DiagramError::PositionOutOfRange {
                            index,
                            position: ev.position,
                            width,
                        });
                    }
                    width += 2;
                }
                _ => {
                    if width < 2 {
                        return Err(DiagramError::Unbalanced { index, width });
                    }
                    if ev.position + 1 >= width {
                        return Err(DiagramError::PositionOutOfRange {
                            index,
                            position: ev.position,
                            width,
                        });
                    }
                    if ev.kind == EventKind::Cap {
                        width -= 2;
                    }
                }
            }
        }
        if width != 0 {
            return Err(DiagramError::Unclosed { width });
        }
        Ok(MorseWord { events })
    }

    pub fn empty() -> Self {
        MorseWord::default()
    }

    pub fn events(&self) -> &[MorseEvent] {
        &self.events
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    /// Number of open strands after each event.
    pub fn width_profile(&self) -> Vec<usize> {
        let mut w = 0;
        self.events
            .iter()
            .map(|ev| {
                match ev.kind {
                    EventKind::Cup => w += 2,
                    EventKind::Cap => w -= 2,
                    _ => {}
                }
                w
            })
            .collect()
    }

    pub fn max_width(&self) -> usize {
        self.width_profile().into_iter().max().unwrap_or(0)
    }

    pub fn crossing_count(&self) -> usize {
        self.events
            .iter()
            .filter(|e| e.kind.crossing_type().is_some())
            .count()
    }

    pub fn mirror(&self) -> MorseWord {
        MorseWord {
            events: self
                .events
                .iter()
                .map(|e| MorseEvent {
                    kind: e.kind.mirrored(),
                    position: e.position,
                })
                .collect(),
        }
    }
}

/// Segment ids are allocated in event order: two per cup, two per crossing.
/// `visit(index, event, slots_before, created)` sees the open segments before
/// the event and the segments it creates.
pub(crate) fn replay(
    events: &[MorseEvent],
    mut visit: impl FnMut(usize, MorseEvent, &[usize], [usize; 2]),
) -> usize {
    let mut slots: Vec<usize> = Vec::new();
    let mut next = 0usize;
    for (i, ev) in events.iter().enumerate() {
        let p = ev.position;
        match ev.kind {
            EventKind::Cup => {
                let created = [next, next + 1];
                next += 2;
                visit(i, *ev, &slots, created);
                slots.splice(p..p, created);
            }
            EventKind::Cap => {
                visit(i, *ev, &slots, [usize::MAX; 2]);
                slots.drain(p..p + 2);
            }
            EventKind::CrossPos | EventKind::CrossNeg => {
                let created = [next, next + 1];
                next += 2;
                visit(i, *ev, &slots, created);
                slots[p] = created[0];
                slots[p + 1] = created[1];
            }
        }
    }
    next
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingInfo {
    pub event: usize,
    pub components: (usize, usize),
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Topology {
    segment_component: Vec<usize>,
    segment_up: Vec<bool>,
    crossings: Vec<CrossingInfo>,
    first_cup: Vec<usize>,
}

impl Topology {
    fn of(word: &MorseWord) -> Topology {
        // end 2s is the bottom of segment s, 2s+1 its top
        let segment_total = 2 * word
            .events()
            .iter()
            .filter(|e| e.kind != EventKind::Cap)
            .count();
        let mut partner: Vec<usize> = vec![usize::MAX; 2 * segment_total];
        let mut cups: Vec<(usize, usize)> = Vec::new();
        let mut strands: Vec<(usize, [usize; 2], [usize; 2])> = Vec::new();
        let count = replay(word.events(), |i, ev, slots, created| {
            let p = ev.position;
            match ev.kind {
                EventKind::Cup => {
                    partner[2 * created[0]] = 2 * created[1];
                    partner[2 * created[1]] = 2 * created[0];
                    cups.push((i, created[0]));
                }
                EventKind::Cap => {
                    let (a, b) = (slots[p], slots[p + 1]);
                    partner[2 * a + 1] = 2 * b + 1;
                    partner[2 * b + 1] = 2 * a + 1;
                }
                _ => {
                    let (a, b) = (slots[p], slots[p + 1]);
                    let (c, d) = (created[0], created[1]);
                    // strand at p continues to p+1 and vice versa
                    partner[2 * a + 1] = 2 * d;
                    partner[2 * d] = 2 * a + 1;
                    partner[2 * b + 1] = 2 * c;
                    partner[2 * c] = 2 * b + 1;
                    strands.push((i, [a, d], [b, c]));
                }
            }
        });
        let mut segment_component = vec![usize::MAX; count];
        let mut segment_up = vec![true; count];
        let mut first_cup = Vec::new();
        for &(event, start) in &cups {
            if segment_component[start] != usize::MAX {
                continue;
            }
            let comp = first_cup.len();
            first_cup.push(event);
            let (mut seg, mut up) = (start, true);
            while segment_component[seg] == usize::MAX {
                segment_component[seg] = comp;
                segment_up[seg] = up;
                let exit = if up { 2 * seg + 1 } else { 2 * seg };
                let next = partner[exit];
                seg = next / 2;
                up = next.is_multiple_of(2);
            }
        }
        let crossings = strands
            .iter()
            .map(|&(event, s1, s2)| {
                let kind = word.events()[event].kind.crossing_type().unwrap_or(0);
                let d1 = if segment_up[s1[0]] { 1 } else { -1 };
                let d2 = if segment_up[s2[0]] { 1 } else { -1 };
                CrossingInfo {
                    event,
                    components: (segment_component[s1[0]], segment_component[s2[0]]),
                    sign: kind * d1 * d2,
                }
            })
            .collect();
        Topology {
            segment_component,
            segment_up,
            crossings,
            first_cup,
        }
    }

    fn component_count(&self) -> usize {
        self.first_cup.len()
    }
}

/// Component labels, pairwise linking numbers and self-writhes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkingData {
    /// Component of every strand segment, in segment-allocation order.
    pub labels: Vec<usize>,
    pub linking: Vec<Vec<i64>>,
    pub writhe: Vec<i64>,
}

/// A Morse word with per-component integer framings.
///
/// Components are numbered by the order of their first cup. Each component is
/// oriented by leaving its first cup along the left arm.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramedLinkDiagram {
    word: MorseWord,
    topo: Topology,
    framings: Vec<i64>,
}

/// Result of [`FramedLinkDiagram::cable`]: the cabled diagram and, for each of
/// its components, the component of the original diagram it is a copy of.
#[derive(Clone, Debug)]
pub struct Cable {
    pub diagram: FramedLinkDiagram,
    pub origin: Vec<usize>,
}

impl FramedLinkDiagram {
    pub fn new(word: MorseWord, framings: Vec<i64>) -> Result<Self, DiagramError> {
        let topo = Topology::of(&word);
        if framings.len() != topo.component_count() {
            return Err(DiagramError::LengthMismatch {
                expected: topo.component_count(),
                got: framings.len(),
            });
        }
        Ok(FramedLinkDiagram {
            word,
            topo,
            framings,
        })
    }

    /// Framings default to the blackboard writhe of each component.
    pub fn blackboard(word: MorseWord) -> Self {
        let topo = Topology::of(&word);
        let mut d = FramedLinkDiagram {
            word,
            topo,
            framings: Vec::new(),
        };
        d.framings = d.writhes();
        d
    }

    pub fn empty() -> Self {
        Self::blackboard(MorseWord::empty())
    }

    /// The unknot drawn as a single cup and cap, with framing `framing`.
    pub fn unknot(framing: i64) -> Self {
        let word = MorseWord::new(vec![MorseEvent::cup(0), MorseEvent::cap(0)])
            .expect("unknot word is closed");
        Self::new(word, vec![framing]).expect("one component")
    }

    /// The closure of `σ1^2` with the given framings; linking number `+1`.
    pub fn hopf(f0: i64, f1: i64) -> Self {
        BraidWord::new(2, vec![(1, 1), (1, 1)])
            .expect("valid braid")
            .closure()
            .with_framings(vec![f0, f1])
            .expect("two components")
    }

    pub fn word(&self) -> &MorseWord {
        &self.word
    }

    pub fn component_count(&self) -> usize {
        self.topo.component_count()
    }

    pub fn crossing_count(&self) -> usize {
        self.word.crossing_count()
    }

    pub fn framings(&self) -> &[i64] {
        &self.framings
    }

    pub fn crossings(&self) -> &[CrossingInfo] {
        &self.topo.crossings
    }

    pub fn with_framings(&self, framings: Vec<i64>) -> Result<Self, DiagramError> {
        if framings.len() != self.component_count() {
            return Err(DiagramError::LengthMismatch {
                expected: self.component_count(),
                got: framings.len(),
            });
        }
        Ok(FramedLinkDiagram {
            framings,
            ..self.clone()
        })
    }

    fn check_component(&self, c: usize) -> Result<(), DiagramError> {
        if c >= self.component_count() {
            return Err(DiagramError::NoSuchComponent {
                component: c,
                count: self.component_count(),
            });
        }
        Ok(())
    }

    /// Blackboard self-writhe of every component.
    pub fn writhes(&self) -> Vec<i64> {
        let mut w = vec![0; self.component_count()];
        for x in &self.topo.crossings {
            if x.components.0 == x.components.1 {
                w[x.components.0] += x.sign;
            }
        }
        w
    }

    pub fn total_writhe(&self) -> i64 {
        self.topo.crossings.iter().map(|x| x.sign).sum()
    }

    pub fn linking_number(&self, i: usize, j: usize) -> i64 {
        if i == j {
            return 0;
        }
        let twice: i64 = self
            .topo
            .crossings
            .iter()
            .filter(|x| x.components == (i, j) || x.components == (j, i))
            .map(|x| x.sign)
            .sum();
        twice / 2
    }

    pub fn components_and_linking(&self) -> LinkingData {
        let n = self.component_count();
        let mut twice = vec![vec![0i64; n]; n];
        for x in &self.topo.crossings {
            let (a, b) = x.components;
            if a != b {
                twice[a][b] += x.sign;
                twice[b][a] += x.sign;
            }
        }
        LinkingData {
            labels: self.topo.segment_component.clone(),
            linking: twice
                .into_iter()
                .map(|row| row.into_iter().map(|v| v / 2).collect())
                .collect(),
            writhe: self.writhes(),
        }
    }

    /// Flips every crossing and negates every framing.
    pub fn mirror(&self) -> Self {
        let word = self.word.mirror();
        let framings = self.framings.iter().map(|f| -f).collect();
        Self::new(word, framings).expect("mirror keeps components")
    }

    /// `self` followed by `other`, side by side; `other`'s components come last.
    pub fn distant_union(&self, other: &Self) -> Self {
        let mut events = self.word.events.clone();
        events.extend_from_slice(&other.word.events);
        let mut framings = self.framings.clone();
        framings.extend_from_slice(&other.framings);
        Self::new(MorseWord { events }, framings).expect("union of closed words")
    }

    /// Insert `|t|` Reidemeister-I kinks of sign `t` by twisting the two
    /// strands that enter the component's first cap. Those strands run in
    /// opposite directions, so a kink of sign `s` is a crossing of type `-s`.
    /// The width profile and the orientation-defining cup are untouched. The
    /// stored framing is left alone.
    pub fn insert_kinks(&self, component: usize, t: i64) -> Result<Self, DiagramError> {
        self.check_component(component)?;
        if t == 0 {
            return Ok(self.clone());
        }
        let comp = &self.topo.segment_component;
        let mut cap_at = None;
        replay(self.word.events(), |i, ev, slots, _| {
            if cap_at.is_none() && ev.kind == EventKind::Cap && comp[slots[ev.position]] == component {
                cap_at = Some(i);
            }
        });
        let at = cap_at.expect("every component has a cap");
        let p = self.word.events[at].position;
        let mut events = Vec::with_capacity(self.word.len() + t.unsigned_abs() as usize);
        events.extend_from_slice(&self.word.events[..at]);
        for _ in 0..t.unsigned_abs() {
            events.push(MorseEvent::cross(p, -t.signum()));
        }
        events.extend_from_slice(&self.word.events[at..]);
        Self::new(MorseWord { events }, self.framings.clone())
    }

    /// Insert kinks so that each component's blackboard writhe equals its framing.
    pub fn realize_framings(&self) -> Self {
        let writhes = self.writhes();
        let mut d = self.clone();
        for (c, (f, w)) in self.framings.iter().zip(writhes).enumerate() {
            d = d.insert_kinks(c, f - w).expect("component exists");
        }
        d
    }

    /// Blackboard-parallel cable with `mult[c]` copies of component `c`
    /// (zero deletes it). Framings of the result are blackboard writhes.
    pub fn cable(&self, mult: &[usize]) -> Result<Cable, DiagramError> {
        if mult.len() != self.component_count() {
            return Err(DiagramError::LengthMismatch {
                expected: self.component_count(),
                got: mult.len(),
            });
        }
        let comp = &self.topo.segment_component;
        let m_of = |seg: usize| mult[comp[seg]];
        let mut out: Vec<MorseEvent> = Vec::new();
        let mut cup_origin: Vec<Option<usize>> = Vec::new();
        replay(self.word.events(), |_, ev, slots, created| {
            let p = ev.position;
            let base: usize = slots[..p].iter().map(|&s| m_of(s)).sum();
            match ev.kind {
                EventKind::Cup => {
                    let c = comp[created[0]];
                    for j in 0..mult[c] {
                        out.push(MorseEvent::cup(base + j));
                        cup_origin.push(Some(c));
                    }
                }
                EventKind::Cap => {
                    let mu = m_of(slots[p]);
                    for j in 0..mu {
                        out.push(MorseEvent::cap(base + mu - 1 - j));
                        cup_origin.push(None);
                    }
                }
                EventKind::CrossPos | EventKind::CrossNeg => {
                    let (a, b) = (m_of(slots[p]), m_of(slots[p + 1]));
                    for j in 0..b {
                        for i in (0..a).rev() {
                            out.push(MorseEvent {
                                kind: ev.kind,
                                position: base + j + i,
                            });
                            cup_origin.push(None);
                        }
                    }
                }
            }
        });
        let word = MorseWord::new(out).expect("cabling preserves closure");
        let diagram = Self::blackboard(word);
        let origin = diagram
            .topo
            .first_cup
            .iter()
            .map(|&e| cup_origin[e].expect("components start at cups"))
            .collect();
        Ok(Cable { diagram, origin })
    }

    /// Component of every strand segment, in segment-allocation order.
    pub fn segment_components(&self) -> &[usize] {
        &self.topo.segment_component
    }
}

/// A braid on `strands` strands; letters are `(generator, sign)` with `1 ≤ generator < strands`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<(usize, i64)>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<(usize, i64)>) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::NoStrands);
        }
        for &(i, _) in &letters {
            if i == 0 || i >= strands {
                return Err(DiagramError::GeneratorOutOfRange { index: i, strands });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.letters
    }

    /// Trace closure: `n` nested cups, the crossings, `n` caps. Braid strands
    /// occupy positions `0..n` and run upward; the return strands sit to the right.
    pub fn closure(&self) -> FramedLinkDiagram {
        let n = self.strands;
        let mut events: Vec<MorseEvent> = (0..n).map(MorseEvent::cup).collect();
        events.extend(
            self.letters
                .iter()
                .map(|&(i, s)| MorseEvent::cross(i - 1, s)),
        );
        events.extend((0..n).rev().map(MorseEvent::cap));
        FramedLinkDiagram::blackboard(MorseWord::new(events).expect("closure is closed"))
    }
}

/// A random closed Morse word with exactly `crossings` crossings and width at
/// most `max_width` (which must be at least 2).
pub fn random_morse_word<R: Rng + ?Sized>(
    rng: &mut R,
    crossings: usize,
    max_width: usize,
) -> MorseWord {
    assert!(max_width >= 2);
    let max_width = max_width & !1;
    let mut events = Vec::new();
    let mut width = 0usize;
    let mut placed = 0usize;
    while placed < crossings {
        let roll: f64 = rng.gen();
        if width < 2 || (width + 2 <= max_width && roll < 0.25) {
            events.push(MorseEvent::cup(rng.gen_range(0..=width)));
            width += 2;
        } else if roll < 0.4 {
            events.push(MorseEvent::cap(rng.gen_range(0..width - 1)));
            width -= 2;
        } else {
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            events.push(MorseEvent::cross(rng.gen_range(0..width - 1), sign));
            placed += 1;
        }
    }
    while width > 0 {
        events.push(MorseEvent::cap(rng.gen_range(0..width - 1)));
        width -= 2;
    }
    MorseWord::new(events).expect("generator keeps words closed")
}
