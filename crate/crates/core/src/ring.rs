//! Exact arithmetic for the bracket variable `A`.
//!
//! Two rings live here. [`LaurentPoly`] is `Z[A, A^-1]`, where generic bracket
//! values are computed. [`CyclotomicNumber`] is `Z[ζ]` for the primitive
//! `4k`-th root of unity `ζ = exp(iπ/2k)`, stored in the power basis
//! `1, ζ, …, ζ^(φ(4k)-1)` after reduction modulo the `4k`-th cyclotomic
//! polynomial. Sending `A ↦ ζ` gives `q = A^4 = exp(2πi/k)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("level k must be at least 2, got {0}")]
    InvalidLevel(i64),
}

/// The `m`-th cyclotomic polynomial, ascending coefficients.
///
/// Computed by exact division of `x^m - 1` by the cyclotomic polynomials of
/// all proper divisors of `m`.
pub fn cyclotomic_polynomial(m: u32) -> Vec<BigInt> {
    assert!(m >= 1, "cyclotomic_polynomial needs m >= 1");
    let mut memo: BTreeMap<u32, Vec<BigInt>> = BTreeMap::new();
    cyclotomic_memo(m, &mut memo)
}

fn cyclotomic_memo(m: u32, memo: &mut BTreeMap<u32, Vec<BigInt>>) -> Vec<BigInt> {
    if let Some(p) = memo.get(&m) {
        return p.clone();
    }
    let mut num = vec![BigInt::zero(); m as usize + 1];
    num[0] = BigInt::from(-1);
    num[m as usize] = BigInt::one();
    for d in 1..m {
        if m.is_multiple_of(d) {
            let phi_d = cyclotomic_memo(d, memo);
            num = div_exact_monic(&num, &phi_d);
        }
    }
    memo.insert(m, num.clone());
    num
}

/// Exact quotient of `num` by the monic polynomial `den`; panics on a remainder.
fn div_exact_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    quot
}

/// A Laurent polynomial in `A` with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c * A^e`.
    pub fn monomial(e: i64, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { terms }
    }

    /// The loop value `-A^2 - A^-2`.
    pub fn delta() -> Self {
        Self::from_terms([(2, -1), (-2, -1)])
    }

    pub fn from_terms<C: Into<BigInt>>(terms: impl IntoIterator<Item = (i64, C)>) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: i64) -> BigInt {
        self.terms.get(&e).cloned().unwrap_or_default()
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += A^shift * other`.
    pub fn add_shifted(&mut self, other: &LaurentPoly, shift: i64) {
        for (e, c) in &other.terms {
            self.add_term(e + shift, c.clone());
        }
    }

    /// Multiply by `A^shift`.
    pub fn shift(&self, shift: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The substitution `A ↦ A^-1`.
    pub fn conj(&self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Evaluate at an arbitrary complex `A`.
    pub fn eval(&self, a: Complex64) -> Complex64 {
        self.terms
            .iter()
            .map(|(e, c)| a.powi(*e as i32) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Floating evaluation at `A = ζ = exp(iπ/2k)`.
    pub fn complex_approx(&self, level: Level) -> Complex64 {
        let n = level.root_order() as i64;
        self.terms
            .iter()
            .map(|(e, c)| level.zeta_power(e.rem_euclid(n)) * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }

    /// Substitute `A ↦ ζ` for the level of `ring`.
    pub fn specialize(&self, ring: &Arc<CyclotomicRing>) -> CyclotomicNumber {
        let mut out = vec![BigInt::zero(); ring.degree()];
        let n = ring.level.root_order() as i64;
        for (e, c) in &self.terms {
            let row = &ring.powers[e.rem_euclid(n) as usize];
            for (o, r) in out.iter_mut().zip(row) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        CyclotomicNumber { ring: ring.clone(), coeffs: out }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "A")?,
                (1, false) => write!(f, "{mag}A")?,
                (e, true) => write!(f, "A^{e}")?,
                (e, false) => write!(f, "{mag}A^{e}")?,
            }
        }
        Ok(())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out.add_shifted(rhs, 0);
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self.add_shifted(&rhs, 0);
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.add_shifted(rhs, 0);
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// The level `k ≥ 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level(u32);

impl Level {
    pub fn new(k: i64) -> Result<Level, RingError> {
        if !(2..=u32::MAX as i64).contains(&k) {
            return Err(RingError::InvalidLevel(k));
        }
        Ok(Level(k as u32))
    }

    pub fn k(self) -> u32 {
        self.0
    }

    /// Order `4k` of `ζ`.
    pub fn root_order(self) -> u32 {
        4 * self.0
    }

    /// `ζ^e = exp(iπe/2k)`.
    pub fn zeta_power(self, e: i64) -> Complex64 {
        let n = self.root_order() as i64;
        let e = e.rem_euclid(n) as f64;
        Complex64::from_polar(1.0, std::f64::consts::PI * e / (2.0 * self.0 as f64))
    }

    pub fn zeta(self) -> Complex64 {
        self.zeta_power(1)
    }

    pub fn ring(self) -> Arc<CyclotomicRing> {
        CyclotomicRing::new(self)
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `Z[x] / Φ_{4k}(x)` together with the reduced powers `ζ^j`, `0 ≤ j < 4k`.
#[derive(Debug)]
pub struct CyclotomicRing {
    level: Level,
    modulus: Vec<BigInt>,
    powers: Vec<Vec<BigInt>>,
    zeta_approx: Vec<Complex64>,
}

impl CyclotomicRing {
    pub fn new(level: Level) -> Arc<CyclotomicRing> {
        let order = level.root_order();
        let modulus = cyclotomic_polynomial(order);
        let deg = modulus.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![BigInt::zero(); deg];
        cur[0] = BigInt::one();
        for _ in 0..order {
            powers.push(cur.clone());
            // multiply by x, folding the x^deg term back through the monic modulus
            let top = cur.pop().unwrap_or_default();
            cur.insert(0, BigInt::zero());
            if !top.is_zero() {
                for (c, m) in cur.iter_mut().zip(&modulus) {
                    *c -= &top * m;
                }
            }
        }
        let zeta_approx = (0..deg as i64).map(|j| level.zeta_power(j)).collect();
        Arc::new(CyclotomicRing {
            level,
            modulus,
            powers,
            zeta_approx,
        })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// `φ(4k)`, the dimension of the power basis.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &[BigInt] {
        &self.modulus
    }

    /// Reduce a vector indexed by exponents mod `4k` into the power basis.
    pub fn reduce_root_vector(self: &Arc<Self>, v: &[BigInt]) -> CyclotomicNumber {
        debug_assert_eq!(v.len(), self.level.root_order() as usize);
        let mut out = vec![BigInt::zero(); self.degree()];
        for (j, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.powers[j]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        CyclotomicNumber { ring: self.clone(), coeffs: out }
    }
}

/// An element of `Z[ζ]`, `ζ = exp(iπ/2k)`, in canonical power-basis form.
#[derive(Clone)]
pub struct CyclotomicNumber {
    ring: Arc<CyclotomicRing>,
    coeffs: Vec<BigInt>,
}

impl PartialEq for CyclotomicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ring.level == other.ring.level && self.coeffs == other.coeffs
    }
}

impl Eq for CyclotomicNumber {}

impl fmt::Debug for CyclotomicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(k={}, {:?})", self.ring.level, self.coeffs_string())
    }
}

impl CyclotomicNumber {
    pub fn zero(ring: &Arc<CyclotomicRing>) -> Self {
        Self {
            ring: ring.clone(),
            coeffs: vec![BigInt::zero(); ring.degree()],
        }
    }

    pub fn one(ring: &Arc<CyclotomicRing>) -> Self {
        Self::from_integer(ring, 1)
    }

    pub fn from_integer(ring: &Arc<CyclotomicRing>, n: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(ring);
        z.coeffs[0] = n.into();
        z
    }

    /// `ζ^e` for any integer `e`.
    pub fn root_power(ring: &Arc<CyclotomicRing>, e: i64) -> Self {
        let n = ring.level.root_order() as i64;
        Self {
            ring: ring.clone(),
            coeffs: ring.powers[e.rem_euclid(n) as usize].clone(),
        }
    }

    /// Build from power-basis coordinates; extra entries beyond `φ(4k)` are reduced.
    pub fn from_coeffs(ring: &Arc<CyclotomicRing>, coeffs: &[BigInt]) -> Self {
        let n = ring.level.root_order() as usize;
        let mut v = vec![BigInt::zero(); n];
        for (j, c) in coeffs.iter().enumerate() {
            v[j % n] += c;
        }
        ring.reduce_root_vector(&v)
    }

    pub fn ring(&self) -> &Arc<CyclotomicRing> {
        &self.ring
    }

    pub fn level(&self) -> Level {
        self.ring.level
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    fn coeffs_string(&self) -> Vec<String> {
        self.coeffs.iter().map(|c| c.to_string()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn check_level(&self, other: &Self) {
        assert_eq!(
            self.ring.level, other.ring.level,
            "cyclotomic level mismatch"
        );
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Complex conjugation, the automorphism `ζ ↦ ζ^-1`.
    pub fn conj(&self) -> Self {
        let n = self.ring.level.root_order() as usize;
        let mut v = vec![BigInt::zero(); n];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[(n - j) % n] += c;
        }
        self.ring.reduce_root_vector(&v)
    }

    pub fn complex_approx(&self) -> Complex64 {
        self.coeffs
            .iter()
            .zip(&self.ring.zeta_approx)
            .map(|(c, z)| z * c.to_f64().unwrap_or(f64::NAN))
            .sum()
    }
}

impl<'a> Add<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_level(rhs);
        CyclotomicNumber {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Add for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn add(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self + &rhs
    }
}

impl AddAssign<&CyclotomicNumber> for CyclotomicNumber {
    fn add_assign(&mut self, rhs: &CyclotomicNumber) {
        self.check_level(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl<'a> Sub<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_level(rhs);
        CyclotomicNumber {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Sub for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn sub(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self - &rhs
    }
}

impl Neg for &CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        CyclotomicNumber {
            ring: self.ring.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn neg(self) -> CyclotomicNumber {
        -&self
    }
}

impl<'a> Mul<&'a CyclotomicNumber> for &'a CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: &CyclotomicNumber) -> CyclotomicNumber {
        self.check_level(rhs);
        let deg = self.ring.degree();
        // 2·deg - 2 < 4k always, so the power table covers every product exponent
        let mut full = vec![BigInt::zero(); 2 * deg];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out: Vec<BigInt> = full[..deg].to_vec();
        for (j, c) in full.iter().enumerate().skip(deg) {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.ring.powers[j]) {
                if !r.is_zero() {
                    *o += c * r;
                }
            }
        }
        CyclotomicNumber {
            ring: self.ring.clone(),
            coeffs: out,
        }
    }
}

impl Mul for CyclotomicNumber {
    type Output = CyclotomicNumber;
    fn mul(self, rhs: CyclotomicNumber) -> CyclotomicNumber {
        &self * &rhs
    }
}
