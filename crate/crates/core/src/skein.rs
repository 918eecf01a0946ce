//! Kauffman bracket of Morse diagrams.
//!
//! Normalization: the empty diagram is `1` and every closed loop contributes
//! `δ = -A^2 - A^-2`, so the unknot is `δ`. A positive crossing expands as
//! `A·(vertical) + A^-1·(cup-cap)`.
//!
//! Two engines compute the same value. [`bracket_statesum`] enumerates all
//! `2^c` smoothings and counts loops with union-find. [`bracket_sweep`] walks
//! the word bottom to top, keeping a sparse map from non-crossing matchings of
//! the open strands to coefficients.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{EventKind, MorseWord};
use crate::ring::{CyclotomicNumber, CyclotomicRing, LaurentPoly, Level};

pub const DEFAULT_MAX_CROSSINGS: usize = 22;
pub const DEFAULT_MAX_WIDTH: usize = 16;
const HARD_MAX_WIDTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SkeinError {
    #[error("state sum refuses {crossings} crossings (cap {cap}); use the sweep engine")]
    CrossingCap { crossings: usize, cap: usize },
    #[error("sweep refuses a diagram of width {width} (cap {cap})")]
    WidthCap { width: usize, cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    StateSum,
    Sweep,
}

/// Capacity limits and engine choice for bracket evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalConfig {
    pub max_crossings: usize,
    pub max_width: usize,
    pub engine: Engine,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            max_crossings: DEFAULT_MAX_CROSSINGS,
            max_width: DEFAULT_MAX_WIDTH,
            engine: Engine::Sweep,
        }
    }
}

impl EvalConfig {
    /// Defaults, overridden by `QINV_MAX_CROSSINGS` and `QINV_MAX_WIDTH` when set.
    pub fn from_env() -> Self {
        let mut cfg = EvalConfig::default();
        if let Some(v) = env_usize("QINV_MAX_CROSSINGS") {
            cfg.max_crossings = v;
        }
        if let Some(v) = env_usize("QINV_MAX_WIDTH") {
            cfg.max_width = v;
        }
        cfg
    }

    pub fn with_engine(self, engine: Engine) -> Self {
        EvalConfig { engine, ..self }
    }
}

fn env_usize(name: &str) -> Option<usize> {
    std::env::var(name).ok()?.trim().parse().ok()
}

/// A commutative ring receiving bracket values, with a distinguished unit `A`.
pub trait BracketAlgebra: Sync {
    type Elem: Clone + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;
    /// `acc += c · A^shift · x`.
    fn add_scaled(&self, acc: &mut Self::Elem, x: &Self::Elem, shift: i64, c: i64);
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn integer(&self, n: &BigInt) -> Self::Elem;

    fn one(&self) -> Self::Elem {
        self.integer(&BigInt::from(1))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut out = x.clone();
        self.add_scaled(&mut out, y, 0, 1);
        out
    }

    /// `c · A^e`.
    fn monomial(&self, e: i64, c: i64) -> Self::Elem {
        let mut out = self.zero();
        self.add_scaled(&mut out, &self.one(), e, c);
        out
    }

    fn times_delta(&self, x: &Self::Elem) -> Self::Elem {
        let mut out = self.zero();
        self.add_scaled(&mut out, x, 2, -1);
        self.add_scaled(&mut out, x, -2, -1);
        out
    }

    /// Colored unknot value `(-1)^n Σ_{j=0..n} A^{2n-4j}`.
    fn quantum_dim(&self, n: u32) -> Self::Elem {
        let sign = if n.is_multiple_of(2) { 1 } else { -1 };
        let mut out = self.zero();
        let one = self.one();
        for j in 0..=n as i64 {
            self.add_scaled(&mut out, &one, 2 * n as i64 - 4 * j, sign);
        }
        out
    }
}

/// `Z[A, A^-1]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Generic;

impl BracketAlgebra for Generic {
    type Elem = LaurentPoly;

    fn zero(&self) -> LaurentPoly {
        LaurentPoly::zero()
    }

    fn is_zero(&self, x: &LaurentPoly) -> bool {
        x.is_zero()
    }

    fn add_scaled(&self, acc: &mut LaurentPoly, x: &LaurentPoly, shift: i64, c: i64) {
        if c == 1 {
            acc.add_shifted(x, shift);
        } else {
            let c = BigInt::from(c);
            for (e, v) in x.terms() {
                acc.add_term(e + shift, v * &c);
            }
        }
    }

    fn mul(&self, x: &LaurentPoly, y: &LaurentPoly) -> LaurentPoly {
        x * y
    }

    fn integer(&self, n: &BigInt) -> LaurentPoly {
        LaurentPoly::monomial(0, n.clone())
    }
}

/// `Z[x]/(x^4k - 1)` with `A ↦ x`; reduced to `Z[ζ]` only at the end, which is
/// cheaper than reducing after every step.
#[derive(Clone, Debug)]
pub struct AtRootOfUnity {
    ring: Arc<CyclotomicRing>,
    order: usize,
}

impl AtRootOfUnity {
    pub fn new(ring: &Arc<CyclotomicRing>) -> Self {
        AtRootOfUnity {
            ring: ring.clone(),
            order: ring.level().root_order() as usize,
        }
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn finish(&self, v: &[BigInt]) -> CyclotomicNumber {
        self.ring.reduce_root_vector(v)
    }

    pub fn lift(&self, x: &CyclotomicNumber) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.order];
        for (o, c) in v.iter_mut().zip(x.coeffs()) {
            *o = c.clone();
        }
        v
    }
}

impl BracketAlgebra for AtRootOfUnity {
    type Elem = Vec<BigInt>;

    fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.order]
    }

    fn is_zero(&self, x: &Vec<BigInt>) -> bool {
        // the unreduced form may hide a zero; only a literal zero vector counts
        x.iter().all(Zero::is_zero)
    }

    fn add_scaled(&self, acc: &mut Vec<BigInt>, x: &Vec<BigInt>, shift: i64, c: i64) {
        let n = self.order;
        let s = shift.rem_euclid(n as i64) as usize;
        for (j, v) in x.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            let t = &mut acc[(j + s) % n];
            if c == 1 {
                *t += v;
            } else {
                *t += v * c;
            }
        }
    }

    fn mul(&self, x: &Vec<BigInt>, y: &Vec<BigInt>) -> Vec<BigInt> {
        let n = self.order;
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if !b.is_zero() {
                    out[(i + j) % n] += a * b;
                }
            }
        }
        out
    }

    fn integer(&self, n: &BigInt) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = n.clone();
        v
    }
}

/// Complex floating point with `A = exp(iπ/2k)`.
#[derive(Clone, Debug)]
pub struct Numeric {
    level: Level,
    powers: Vec<Complex64>,
}

impl Numeric {
    pub fn new(level: Level) -> Self {
        let n = level.root_order() as i64;
        Numeric {
            level,
            powers: (0..n).map(|e| level.zeta_power(e)).collect(),
        }
    }

    pub fn level(&self) -> Level {
        self.level
    }
}

impl BracketAlgebra for Numeric {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }

    fn is_zero(&self, x: &Complex64) -> bool {
        *x == Complex64::new(0.0, 0.0)
    }

    fn add_scaled(&self, acc: &mut Complex64, x: &Complex64, shift: i64, c: i64) {
        let z = self.powers[shift.rem_euclid(self.powers.len() as i64) as usize];
        *acc += x * z * c as f64;
    }

    fn mul(&self, x: &Complex64, y: &Complex64) -> Complex64 {
        x * y
    }

    fn integer(&self, n: &BigInt) -> Complex64 {
        Complex64::new(n.to_f64().unwrap_or(f64::NAN), 0.0)
    }

    fn quantum_dim(&self, n: u32) -> Complex64 {
        let k = self.level.k() as f64;
        let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let t = std::f64::consts::PI / k;
        Complex64::new(sign * ((n as f64 + 1.0) * t).sin() / t.sin(), 0.0)
    }
}

/// A generic bracket value, optionally with its specialization at a level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketValue {
    pub generic: LaurentPoly,
    pub specialized: Option<CyclotomicNumber>,
}

impl BracketValue {
    pub fn new(generic: LaurentPoly) -> Self {
        BracketValue {
            generic,
            specialized: None,
        }
    }

    pub fn specialized_at(mut self, ring: &Arc<CyclotomicRing>) -> Self {
        self.specialized = Some(self.generic.specialize(ring));
        self
    }
}

/// Reference engine: sum over all `2^c` smoothings.
pub fn bracket_statesum(word: &MorseWord, config: &EvalConfig) -> Result<BracketValue, SkeinError> {
    statesum_in(&Generic, word, config).map(BracketValue::new)
}

/// Transfer-matrix engine over non-crossing matchings.
pub fn bracket_sweep(word: &MorseWord, config: &EvalConfig) -> Result<BracketValue, SkeinError> {
    sweep_in(&Generic, word, config).map(BracketValue::new)
}

/// Generic bracket with the configured engine.
pub fn bracket(word: &MorseWord, config: &EvalConfig) -> Result<BracketValue, SkeinError> {
    bracket_in(&Generic, word, config).map(BracketValue::new)
}

/// Bracket evaluated directly at `A = ζ`.
pub fn bracket_at(
    word: &MorseWord,
    ring: &Arc<CyclotomicRing>,
    config: &EvalConfig,
) -> Result<CyclotomicNumber, SkeinError> {
    let alg = AtRootOfUnity::new(ring);
    bracket_in(&alg, word, config).map(|v| alg.finish(&v))
}

pub fn bracket_in<G: BracketAlgebra>(
    alg: &G,
    word: &MorseWord,
    config: &EvalConfig,
) -> Result<G::Elem, SkeinError> {
    match config.engine {
        Engine::StateSum => statesum_in(alg, word, config),
        Engine::Sweep => sweep_in(alg, word, config),
    }
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn with_len(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i as u32;
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let g = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = g;
            x = g;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra as usize] = rb;
        true
    }
}

/// Per crossing: the arc classes below-left, below-right, above-left, above-right,
/// and whether the vertical smoothing is the A-smoothing.
struct StateSumPlan {
    nodes: usize,
    crossings: Vec<([u32; 4], bool)>,
}

fn plan_statesum(word: &MorseWord) -> StateSumPlan {
    let mut segs: Vec<([usize; 4], bool)> = Vec::new();
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    let total = crate::diagram::replay(word.events(), |_, ev, slots, created| {
        let p = ev.position;
        match ev.kind {
            EventKind::Cup => fixed.push((created[0], created[1])),
            EventKind::Cap => fixed.push((slots[p], slots[p + 1])),
            EventKind::CrossPos | EventKind::CrossNeg => segs.push((
                [slots[p], slots[p + 1], created[0], created[1]],
                ev.kind == EventKind::CrossPos,
            )),
        }
    });
    let mut uf = UnionFind::with_len(total);
    for (a, b) in fixed {
        uf.union(a as u32, b as u32);
    }
    let mut class = HashMap::new();
    let mut node_of = |uf: &mut UnionFind, s: usize| {
        let r = uf.find(s as u32);
        let next = class.len() as u32;
        *class.entry(r).or_insert(next)
    };
    let mut crossings = Vec::with_capacity(segs.len());
    for (s, vertical_is_a) in segs {
        let ids = s.map(|x| node_of(&mut uf, x));
        crossings.push((ids, vertical_is_a));
    }
    for s in 0..total {
        node_of(&mut uf, s);
    }
    StateSumPlan {
        nodes: class.len(),
        crossings,
    }
}

pub fn statesum_in<G: BracketAlgebra>(
    alg: &G,
    word: &MorseWord,
    config: &EvalConfig,
) -> Result<G::Elem, SkeinError> {
    let c = word.crossing_count();
    if c > config.max_crossings || c >= 63 {
        return Err(SkeinError::CrossingCap {
            crossings: c,
            cap: config.max_crossings,
        });
    }
    let plan = plan_statesum(word);
    let states: u64 = 1 << c;
    let chunk: u64 = 1 << 12;
    let chunks = states.div_ceil(chunk);
    // histogram of (number of A-smoothings, loops)
    let hist: HashMap<(u32, u32), u64> = (0..chunks)
        .into_par_iter()
        .map(|ci| {
            let mut local: HashMap<(u32, u32), u64> = HashMap::new();
            let mut uf = UnionFind::with_len(plan.nodes);
            let end = ((ci + 1) * chunk).min(states);
            for state in ci * chunk..end {
                uf.reset();
                let mut loops = plan.nodes as u32;
                for (i, (ids, vertical_is_a)) in plan.crossings.iter().enumerate() {
                    let a_smoothing = (state >> i) & 1 == 1;
                    let vertical = a_smoothing == *vertical_is_a;
                    let (x, y) = if vertical {
                        ((ids[0], ids[2]), (ids[1], ids[3]))
                    } else {
                        ((ids[0], ids[1]), (ids[2], ids[3]))
                    };
                    loops -= uf.union(x.0, x.1) as u32;
                    loops -= uf.union(y.0, y.1) as u32;
                }
                *local.entry((state.count_ones(), loops)).or_default() += 1;
            }
            local
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_default() += v;
            }
            a
        });

    let max_loops = hist.keys().map(|k| k.1).max().unwrap_or(0);
    let mut delta_pows = vec![alg.one()];
    for l in 1..=max_loops as usize {
        let next = alg.times_delta(&delta_pows[l - 1]);
        delta_pows.push(next);
    }
    let mut keys: Vec<_> = hist.into_iter().collect();
    keys.sort();
    let mut out = alg.zero();
    for ((a_count, loops), count) in keys {
        let e = 2 * a_count as i64 - c as i64;
        let n = alg.integer(&BigInt::from(count));
        let term = alg.mul(&n, &delta_pows[loops as usize]);
        alg.add_scaled(&mut out, &term, e, 1);
    }
    Ok(out)
}

/// Non-crossing perfect matching of `width` points, as a balanced-parenthesis
/// bit string: bit `i` is set when point `i` opens a pair.
type Matching = u64;

fn decode(m: Matching, width: usize) -> Vec<usize> {
    let mut partner = vec![0; width];
    let mut stack = Vec::with_capacity(width / 2);
    for i in 0..width {
        if (m >> i) & 1 == 1 {
            stack.push(i);
        } else {
            let j = stack.pop().expect("balanced matching");
            partner[i] = j;
            partner[j] = i;
        }
    }
    partner
}

fn encode(partner: &[usize]) -> Matching {
    partner
        .iter()
        .enumerate()
        .fold(0, |m, (i, &j)| if j > i { m | (1 << i) } else { m })
}

fn insert_pair(m: Matching, p: usize) -> Matching {
    let low = m & ((1u64 << p) - 1);
    let high = m >> p;
    low | (1 << p) | (high << (p + 2))
}

fn remove_pair(m: Matching, p: usize) -> Matching {
    let low = m & ((1u64 << p) - 1);
    low | ((m >> (p + 2)) << p)
}

/// Apply a cap at `p`. Returns the new matching and whether a loop closed.
fn cap(m: Matching, p: usize, width: usize) -> (Matching, bool) {
    if (m >> p) & 3 == 1 {
        return (remove_pair(m, p), true);
    }
    let partner = decode(m, width);
    let (a, b) = (partner[p], partner[p + 1]);
    let shrink = |x: usize| if x > p + 1 { x - 2 } else { x };
    let mut next = Vec::with_capacity(width - 2);
    for (i, &j) in partner.iter().enumerate() {
        if i == p || i == p + 1 {
            continue;
        }
        let j = if i == a {
            b
        } else if i == b {
            a
        } else {
            j
        };
        next.push(shrink(j));
    }
    (encode(&next), false)
}

pub fn sweep_in<G: BracketAlgebra>(
    alg: &G,
    word: &MorseWord,
    config: &EvalConfig,
) -> Result<G::Elem, SkeinError> {
    let max = word.max_width();
    if max > config.max_width || max > HARD_MAX_WIDTH - 2 {
        return Err(SkeinError::WidthCap {
            width: max,
            cap: config.max_width.min(HARD_MAX_WIDTH - 2),
        });
    }
    let mut states: HashMap<Matching, G::Elem> = HashMap::new();
    states.insert(0, alg.one());
    let mut width = 0usize;
    for ev in word.events() {
        let p = ev.position;
        let mut next: HashMap<Matching, G::Elem> = HashMap::with_capacity(states.len() * 2);
        let mut push = |m: Matching, x: &G::Elem, shift: i64, c: i64| {
            let slot = next.entry(m).or_insert_with(|| alg.zero());
            alg.add_scaled(slot, x, shift, c);
        };
        match ev.kind {
            EventKind::Cup => {
                for (m, x) in &states {
                    push(insert_pair(*m, p), x, 0, 1);
                }
                width += 2;
            }
            EventKind::Cap => {
                for (m, x) in &states {
                    let (m2, closed) = cap(*m, p, width);
                    if closed {
                        push(m2, x, 2, -1);
                        push(m2, x, -2, -1);
                    } else {
                        push(m2, x, 0, 1);
                    }
                }
                width -= 2;
            }
            EventKind::CrossPos | EventKind::CrossNeg => {
                let s = if ev.kind == EventKind::CrossPos { 1 } else { -1 };
                for (m, x) in &states {
                    push(*m, x, s, 1);
                    let (capped, closed) = cap(*m, p, width);
                    let m2 = insert_pair(capped, p);
                    if closed {
                        push(m2, x, -s + 2, -1);
                        push(m2, x, -s - 2, -1);
                    } else {
                        push(m2, x, -s, 1);
                    }
                }
            }
        }
        next.retain(|_, x| !alg.is_zero(x));
        states = next;
    }
    Ok(states.remove(&0).unwrap_or_else(|| alg.zero()))
}
