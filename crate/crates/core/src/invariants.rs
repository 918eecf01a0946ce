//! The normalized 3-manifold invariant of a surgery link and the 4-manifold
//! invariant `I_k` of a special framed link.

use num_complex::Complex64;
use thiserror::Error;

use crate::colored::{evaluate_labeled_link, evaluate_labeled_link_in, ColoredError, Parity, SkeinLabel};
use crate::diagram::FramedLinkDiagram;
use crate::quadform::{inertia, linking_matrix, Inertia};
use crate::ring::{CyclotomicNumber, Level};
use crate::skein::{EvalConfig, Numeric};

/// Relative tolerance for float/exact agreement.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

/// `|a - b| <= tol * max(|a|, |b|, 1)`. The floor of 1 keeps values that
/// vanish exactly comparable with their rounded float counterparts.
pub fn approx_agrees(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= FLOAT_TOLERANCE * a.norm().max(b.norm()).max(1.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("normalization base {base} vanishes at level {level}")]
    DegenerateLevel { level: u32, base: &'static str },
    #[error("special component {component} has framing {framing}; special components must be 0-framed")]
    SpecialFraming { component: usize, framing: i64 },
    #[error("special components {first} and {second} have linking number {linking}; they must be unlinked")]
    SpecialLinking {
        first: usize,
        second: usize,
        linking: i64,
    },
    #[error("special component {component} does not exist ({count} components)")]
    NoSuchComponent { component: usize, count: usize },
    #[error("cannot compare values at levels {left} and {right}")]
    IncomparableLevels { left: u32, right: u32 },
    #[error(transparent)]
    Colored(#[from] ColoredError),
}

/// A framed link whose components are split into ordinary ones (2-handles)
/// and special ones (1-handles).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFramedLink {
    diagram: FramedLinkDiagram,
    special: Vec<bool>,
}

impl SpecialFramedLink {
    /// Checks that special components are 0-framed and pairwise unlinked.
    /// Unknottedness of special components is taken on trust.
    pub fn new(diagram: FramedLinkDiagram, special: &[usize]) -> Result<Self, InvariantError> {
        let sl = Self::new_unvalidated(diagram, special)?;
        let data = sl.diagram.components_and_linking();
        let specials = sl.special_components();
        for (x, &i) in specials.iter().enumerate() {
            let f = sl.diagram.framings()[i];
            if f != 0 {
                return Err(InvariantError::SpecialFraming {
                    component: i,
                    framing: f,
                });
            }
            for &j in &specials[x + 1..] {
                if data.linking[i][j] != 0 {
                    return Err(InvariantError::SpecialLinking {
                        first: i,
                        second: j,
                        linking: data.linking[i][j],
                    });
                }
            }
        }
        Ok(sl)
    }

    /// Skips the framing and linking checks. Useful for evaluating labeled
    /// numerators of links that are not admissible presentations.
    pub fn new_unvalidated(diagram: FramedLinkDiagram, special: &[usize]) -> Result<Self, InvariantError> {
        let count = diagram.component_count();
        let mut flags = vec![false; count];
        for &c in special {
            if c >= count {
                return Err(InvariantError::NoSuchComponent { component: c, count });
            }
            flags[c] = true;
        }
        Ok(SpecialFramedLink {
            diagram,
            special: flags,
        })
    }

    pub fn ordinary(diagram: FramedLinkDiagram) -> Self {
        let n = diagram.component_count();
        SpecialFramedLink {
            diagram,
            special: vec![false; n],
        }
    }

    pub fn empty() -> Self {
        Self::ordinary(FramedLinkDiagram::empty())
    }

    /// Hopf link with one ordinary and one special component, both 0-framed.
    pub fn special_hopf() -> Self {
        SpecialFramedLink {
            diagram: FramedLinkDiagram::hopf(0, 0),
            special: vec![false, true],
        }
    }

    pub fn diagram(&self) -> &FramedLinkDiagram {
        &self.diagram
    }

    pub fn is_special(&self, c: usize) -> bool {
        self.special[c]
    }

    pub fn special_components(&self) -> Vec<usize> {
        (0..self.special.len()).filter(|&c| self.special[c]).collect()
    }

    pub fn ordinary_count(&self) -> usize {
        self.special.iter().filter(|s| !**s).count()
    }

    pub fn special_count(&self) -> usize {
        self.special.len() - self.ordinary_count()
    }

    /// `ω⁺` on ordinary components, `ω` on special ones.
    pub fn labels(&self) -> Vec<SkeinLabel> {
        self.special
            .iter()
            .map(|&s| SkeinLabel::Omega(if s { Parity::All } else { Parity::Even }))
            .collect()
    }

    pub fn mirror(&self) -> Self {
        SpecialFramedLink {
            diagram: self.diagram.mirror(),
            special: self.special.clone(),
        }
    }

    pub fn distant_union(&self, other: &Self) -> Self {
        let mut special = self.special.clone();
        special.extend_from_slice(&other.special);
        SpecialFramedLink {
            diagram: self.diagram.distant_union(&other.diagram),
            special,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InvariantKind {
    Rtw,
    Broda,
}

/// `base^(exponent_twice / 2)` in a denominator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenominatorFactor {
    pub label: &'static str,
    pub base: CyclotomicNumber,
    pub exponent_twice: i64,
}

impl DenominatorFactor {
    pub fn is_half_integral(&self) -> bool {
        self.exponent_twice % 2 != 0
    }

    /// Principal branch for half-integral exponents.
    pub fn approx(&self) -> Complex64 {
        half_power(self.base.complex_approx(), self.exponent_twice)
    }
}

fn half_power(base: Complex64, exponent_twice: i64) -> Complex64 {
    if exponent_twice % 2 == 0 {
        base.powi((exponent_twice / 2) as i32)
    } else {
        base.sqrt().powi(exponent_twice as i32)
    }
}

/// An exact numerator over a product of denominator powers.
#[derive(Clone, Debug, PartialEq)]
pub struct InvariantValue {
    pub kind: InvariantKind,
    pub level: Level,
    pub numerator: CyclotomicNumber,
    pub denominators: Vec<DenominatorFactor>,
    pub approx: Complex64,
    pub inertia: Inertia,
    pub ordinary: usize,
    pub special: usize,
}

impl InvariantValue {
    pub fn has_half_exponent(&self) -> bool {
        self.denominators.iter().any(DenominatorFactor::is_half_integral)
    }

    fn denominator_approx(&self) -> Complex64 {
        self.denominators
            .iter()
            .map(DenominatorFactor::approx)
            .fold(Complex64::new(1.0, 0.0), |a, b| a * b)
    }

    fn recompute_approx(&mut self) {
        self.approx = self.numerator.complex_approx() / self.denominator_approx();
    }

    /// Complex conjugate, as produced by reversing orientation.
    pub fn conj(&self) -> InvariantValue {
        let mut out = self.clone();
        out.numerator = self.numerator.conj();
        for d in &mut out.denominators {
            d.base = d.base.conj();
            // conjugation exchanges the two framed-unknot bases
            d.label = match d.label {
                RTW_PLUS_BASE => RTW_MINUS_BASE,
                RTW_MINUS_BASE => RTW_PLUS_BASE,
                other => other,
            };
        }
        out.inertia = Inertia {
            b_plus: self.inertia.b_minus,
            b_minus: self.inertia.b_plus,
            nullity: self.inertia.nullity,
        };
        out.recompute_approx();
        out
    }

    /// Product of two values at the same level; exponents of equal bases add.
    pub fn mul(&self, other: &InvariantValue) -> Result<InvariantValue, InvariantError> {
        check_levels(self, other)?;
        let mut denominators = self.denominators.clone();
        for d in &other.denominators {
            match denominators.iter_mut().find(|e| e.label == d.label && e.base == d.base) {
                Some(e) => e.exponent_twice += d.exponent_twice,
                None => denominators.push(d.clone()),
            }
        }
        let mut out = InvariantValue {
            kind: self.kind,
            level: self.level,
            numerator: &self.numerator * &other.numerator,
            denominators,
            approx: Complex64::new(0.0, 0.0),
            inertia: self.inertia + other.inertia,
            ordinary: self.ordinary + other.ordinary,
            special: self.special + other.special,
        };
        out.recompute_approx();
        Ok(out)
    }
}

fn check_levels(a: &InvariantValue, b: &InvariantValue) -> Result<(), InvariantError> {
    if a.level != b.level {
        return Err(InvariantError::IncomparableLevels {
            left: a.level.k(),
            right: b.level.k(),
        });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub equal: bool,
    /// Set when the net denominator had a half-integral power, so only the
    /// squares of the two values could be compared.
    pub sign_ambiguous: bool,
}

/// Exact comparison by cross-multiplication.
pub fn compare(a: &InvariantValue, b: &InvariantValue) -> Result<Comparison, InvariantError> {
    check_levels(a, b)?;
    // net exponent of each distinct base in a / b
    let mut net: Vec<(CyclotomicNumber, i64)> = Vec::new();
    let mut bump = |base: &CyclotomicNumber, e: i64| match net.iter_mut().find(|(x, _)| x == base) {
        Some(entry) => entry.1 += e,
        None => net.push((base.clone(), e)),
    };
    for d in &a.denominators {
        bump(&d.base, d.exponent_twice);
    }
    for d in &b.denominators {
        bump(&d.base, -d.exponent_twice);
    }
    let sign_ambiguous = net.iter().any(|(_, e)| e % 2 != 0);
    let scale: u32 = if sign_ambiguous { 2 } else { 1 };
    // a == b  ⟺  num_a · Π_{net<0} base^{-net/2} == num_b · Π_{net>0} base^{net/2}
    let mut left = a.numerator.pow(scale);
    let mut right = b.numerator.pow(scale);
    for (base, e) in &net {
        let p = (e.unsigned_abs() as u32 * scale) / 2;
        if *e < 0 {
            left = &left * &base.pow(p);
        } else if *e > 0 {
            right = &right * &base.pow(p);
        }
    }
    Ok(Comparison {
        equal: left == right,
        sign_ambiguous,
    })
}

fn nonzero(
    base: CyclotomicNumber,
    exponent_twice: i64,
    label: &'static str,
    level: Level,
) -> Result<DenominatorFactor, InvariantError> {
    if exponent_twice != 0 && base.is_zero() {
        return Err(InvariantError::DegenerateLevel {
            level: level.k(),
            base: label,
        });
    }
    Ok(DenominatorFactor {
        label,
        base,
        exponent_twice,
    })
}

const OMEGA: SkeinLabel = SkeinLabel::Omega(Parity::All);
const OMEGA_EVEN: SkeinLabel = SkeinLabel::Omega(Parity::Even);

pub const RTW_PLUS_BASE: &str = "omega(U+1)";
pub const RTW_MINUS_BASE: &str = "omega(U-1)";
pub const BRODA_UNKNOT_BASE: &str = "omega+(U0)";
pub const BRODA_HOPF_BASE: &str = "omega+(H) omega(H')";

/// `⟨Π ω_{K_i}⟩ / (⟨ω_{U+1}⟩^{b+} ⟨ω_{U-1}⟩^{b-})`.
pub fn rtw(d: &FramedLinkDiagram, level: Level, config: &EvalConfig) -> Result<InvariantValue, InvariantError> {
    let labels = vec![OMEGA; d.component_count()];
    let (numerator, bases) = rayon::join(
        || evaluate_labeled_link(d, &labels, level, config),
        || {
            rayon::join(
                || evaluate_labeled_link(&FramedLinkDiagram::unknot(1), &[OMEGA], level, config),
                || evaluate_labeled_link(&FramedLinkDiagram::unknot(-1), &[OMEGA], level, config),
            )
        },
    );
    let inertia = inertia(&linking_matrix(d));
    let denominators = vec![
        nonzero(bases.0?, 2 * inertia.b_plus as i64, RTW_PLUS_BASE, level)?,
        nonzero(bases.1?, 2 * inertia.b_minus as i64, RTW_MINUS_BASE, level)?,
    ];
    let mut v = InvariantValue {
        kind: InvariantKind::Rtw,
        level,
        numerator: numerator?,
        denominators,
        approx: Complex64::new(0.0, 0.0),
        inertia,
        ordinary: d.component_count(),
        special: 0,
    };
    v.recompute_approx();
    Ok(v)
}

/// `⟨Π ω⁺_{K_i} Π ω_{K̇_j}⟩ / (⟨ω⁺_○⟩^ν ⟨ω⁺_H ω_Ḣ⟩^{(N+Ṅ-ν)/2})`.
pub fn broda(sl: &SpecialFramedLink, level: Level, config: &EvalConfig) -> Result<InvariantValue, InvariantError> {
    let d = sl.diagram();
    let labels = sl.labels();
    let (numerator, bases) = rayon::join(
        || evaluate_labeled_link(d, &labels, level, config),
        || {
            rayon::join(
                || evaluate_labeled_link(&FramedLinkDiagram::unknot(0), &[OMEGA_EVEN], level, config),
                || evaluate_labeled_link(&FramedLinkDiagram::hopf(0, 0), &[OMEGA_EVEN, OMEGA], level, config),
            )
        },
    );
    let inertia = inertia(&linking_matrix(d));
    let nu = inertia.nullity as i64;
    let total = d.component_count() as i64;
    let denominators = vec![
        nonzero(bases.0?, 2 * nu, BRODA_UNKNOT_BASE, level)?,
        nonzero(bases.1?, total - nu, BRODA_HOPF_BASE, level)?,
    ];
    let mut v = InvariantValue {
        kind: InvariantKind::Broda,
        level,
        numerator: numerator?,
        denominators,
        approx: Complex64::new(0.0, 0.0),
        inertia,
        ordinary: sl.ordinary_count(),
        special: sl.special_count(),
    };
    v.recompute_approx();
    Ok(v)
}

/// The same quotient as [`rtw`], evaluated entirely in floating point.
pub fn rtw_float(d: &FramedLinkDiagram, level: Level, config: &EvalConfig) -> Result<Complex64, InvariantError> {
    let alg = Numeric::new(level);
    let num = evaluate_labeled_link_in(&alg, d, &vec![OMEGA; d.component_count()], level, config)?;
    let plus = evaluate_labeled_link_in(&alg, &FramedLinkDiagram::unknot(1), &[OMEGA], level, config)?;
    let minus = evaluate_labeled_link_in(&alg, &FramedLinkDiagram::unknot(-1), &[OMEGA], level, config)?;
    let i = inertia(&linking_matrix(d));
    Ok(num / (plus.powi(i.b_plus as i32) * minus.powi(i.b_minus as i32)))
}

/// The same quotient as [`broda`], evaluated entirely in floating point.
pub fn broda_float(sl: &SpecialFramedLink, level: Level, config: &EvalConfig) -> Result<Complex64, InvariantError> {
    let alg = Numeric::new(level);
    let d = sl.diagram();
    let num = evaluate_labeled_link_in(&alg, d, &sl.labels(), level, config)?;
    let o = evaluate_labeled_link_in(&alg, &FramedLinkDiagram::unknot(0), &[OMEGA_EVEN], level, config)?;
    let h = evaluate_labeled_link_in(&alg, &FramedLinkDiagram::hopf(0, 0), &[OMEGA_EVEN, OMEGA], level, config)?;
    let i = inertia(&linking_matrix(d));
    let nu = i.nullity as i64;
    Ok(num / (half_power(o, 2 * nu) * half_power(h, d.component_count() as i64 - nu)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn level(k: i64) -> Level {
        Level::new(k).unwrap()
    }

    fn is_int(v: &InvariantValue, n: i64) -> bool {
        let one = InvariantValue {
            numerator: CyclotomicNumber::from_integer(&v.level.ring(), n),
            denominators: vec![],
            ..v.clone()
        };
        compare(v, &one).unwrap().equal && !compare(v, &one).unwrap().sign_ambiguous
    }

    #[test]
    fn rtw_small_values() {
        let cfg = EvalConfig::default();
        for k in 2..=5 {
            let l = level(k);
            assert!(is_int(&rtw(&FramedLinkDiagram::empty(), l, &cfg).unwrap(), 1));
            assert!(is_int(&rtw(&FramedLinkDiagram::unknot(1), l, &cfg).unwrap(), 1));
            assert!(is_int(&rtw(&FramedLinkDiagram::unknot(-1), l, &cfg).unwrap(), 1));
        }
        let s1s2 = rtw(&FramedLinkDiagram::unknot(0), level(3), &cfg).unwrap();
        assert!(is_int(&s1s2, 2));
        assert!((s1s2.approx - Complex64::new(2.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn broda_small_values() {
        let cfg = EvalConfig::default();
        for k in 3..=5 {
            let l = level(k);
            let empty = broda(&SpecialFramedLink::empty(), l, &cfg).unwrap();
            let hopf = broda(&SpecialFramedLink::special_hopf(), l, &cfg).unwrap();
            assert!(is_int(&empty, 1));
            assert!(compare(&empty, &hopf).unwrap().equal);
        }
        let s1s3 = SpecialFramedLink::new(FramedLinkDiagram::unknot(0), &[0]).unwrap();
        assert!(is_int(&broda(&s1s3, level(3), &cfg).unwrap(), 2));
    }

    #[test]
    fn validation() {
        assert_eq!(
            SpecialFramedLink::new(FramedLinkDiagram::unknot(1), &[0]),
            Err(InvariantError::SpecialFraming {
                component: 0,
                framing: 1
            })
        );
        assert_eq!(
            SpecialFramedLink::new(FramedLinkDiagram::hopf(0, 0), &[0, 1]),
            Err(InvariantError::SpecialLinking {
                first: 0,
                second: 1,
                linking: 1
            })
        );
        assert_eq!(
            SpecialFramedLink::new(FramedLinkDiagram::unknot(0), &[2]),
            Err(InvariantError::NoSuchComponent { component: 2, count: 1 })
        );
    }

    #[test]
    fn half_integral_exponent_is_flagged() {
        let cfg = EvalConfig::default();
        let cp2 = SpecialFramedLink::ordinary(FramedLinkDiagram::unknot(1));
        let v = broda(&cp2, level(3), &cfg).unwrap();
        assert!(v.has_half_exponent());
        let float = broda_float(&cp2, level(3), &cfg).unwrap();
        assert!(approx_agrees(v.approx, float));
        let squared = v.mul(&v).unwrap();
        assert!(!squared.has_half_exponent());
    }

    #[test]
    fn vanishing_numerator_is_not_degenerate() {
        // ⟨ω⁺ on U_{+1}⟩ vanishes at k = 4: a zero value, not an error
        let cfg = EvalConfig::default();
        let v = broda(&SpecialFramedLink::ordinary(FramedLinkDiagram::unknot(1)), level(4), &cfg).unwrap();
        assert!(v.numerator.is_zero());
        assert_eq!(v.approx, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn zero_base_with_positive_exponent_is_degenerate() {
        let l = level(4);
        let zero = CyclotomicNumber::zero(&l.ring());
        assert!(nonzero(zero.clone(), 0, RTW_PLUS_BASE, l).is_ok());
        assert_eq!(
            nonzero(zero, 1, BRODA_HOPF_BASE, l),
            Err(InvariantError::DegenerateLevel {
                level: 4,
                base: BRODA_HOPF_BASE
            })
        );
    }

    #[test]
    fn levels_must_match() {
        let cfg = EvalConfig::default();
        let a = rtw(&FramedLinkDiagram::empty(), level(3), &cfg).unwrap();
        let b = rtw(&FramedLinkDiagram::empty(), level(4), &cfg).unwrap();
        assert_eq!(
            compare(&a, &b),
            Err(InvariantError::IncomparableLevels { left: 3, right: 4 })
        );
    }
}
