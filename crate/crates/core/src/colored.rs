//! Colored evaluations by cabling: Chebyshev expansion of colors, quantum
//! dimensions, and the ω element with its even/odd parts.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{DiagramError, FramedLinkDiagram};
use crate::ring::{CyclotomicNumber, CyclotomicRing, LaurentPoly, Level};
use crate::skein::{bracket_in, AtRootOfUnity, BracketAlgebra, EvalConfig, Generic, SkeinError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoredError {
    #[error("{labels} labels given for {components} components")]
    LabelCount { labels: usize, components: usize },
    #[error("color {color} out of range (at most {max} at this level)")]
    ColorOutOfRange { color: u32, max: u32 },
    #[error(transparent)]
    Skein(#[from] SkeinError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// Coefficients of `S_n(x) = Σ_m c[n][m] x^m`, with `S_0 = 1`, `S_1 = x` and
/// `S_{n+2} = x S_{n+1} - S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevTable {
    rows: Vec<Vec<BigInt>>,
}

impl ChebyshevTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = vec![vec![BigInt::from(1)]];
        if max_n >= 1 {
            rows.push(vec![BigInt::zero(), BigInt::from(1)]);
        }
        for n in 2..=max_n {
            let mut row = vec![BigInt::zero(); n + 1];
            for (m, c) in rows[n - 1].iter().enumerate() {
                row[m + 1] += c;
            }
            for (m, c) in rows[n - 2].iter().enumerate() {
                row[m] -= c;
            }
            rows.push(row);
        }
        ChebyshevTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len() - 1
    }

    /// Row `n`, indexed by the power of `x`.
    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }

    pub fn coeff(&self, n: usize, m: usize) -> BigInt {
        self.rows[n].get(m).cloned().unwrap_or_default()
    }
}

/// `⟨W_n⟩` on the 0-framed unknot, at level `k`.
pub fn quantum_dim(n: u32, level: Level) -> CyclotomicNumber {
    let ring = level.ring();
    let alg = AtRootOfUnity::new(&ring);
    alg.finish(&alg.quantum_dim(n))
}

/// Generic quantum dimension as a Laurent polynomial in `A`.
pub fn quantum_dim_generic(n: u32) -> LaurentPoly {
    Generic.quantum_dim(n)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    All,
    Even,
    Odd,
}

impl Parity {
    pub fn admits(self, n: u32) -> bool {
        match self {
            Parity::All => true,
            Parity::Even => n.is_multiple_of(2),
            Parity::Odd => n % 2 == 1,
        }
    }
}

/// `ω = Σ_{n=0}^{k-2} d_n S_n`, restricted to colors of the given parity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaElement {
    pub level: Level,
    pub parity: Parity,
    pub coeffs: Vec<CyclotomicNumber>,
}

impl OmegaElement {
    pub fn new(level: Level, parity: Parity) -> Self {
        let ring = level.ring();
        let coeffs = (0..=level.k() - 2)
            .map(|n| {
                if parity.admits(n) {
                    quantum_dim(n, level)
                } else {
                    CyclotomicNumber::zero(&ring)
                }
            })
            .collect();
        OmegaElement {
            level,
            parity,
            coeffs,
        }
    }
}

pub fn omega(level: Level, parity: Parity) -> OmegaElement {
    OmegaElement::new(level, parity)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SkeinLabel {
    Color(u32),
    Omega(Parity),
}

/// Cable coefficients of a label: entry `m` multiplies the `m`-fold parallel.
fn label_coefficients<G: BracketAlgebra>(
    alg: &G,
    label: SkeinLabel,
    level: Level,
    table: &ChebyshevTable,
) -> Vec<G::Elem> {
    let colors: Vec<(u32, G::Elem)> = match label {
        SkeinLabel::Color(n) => vec![(n, alg.one())],
        SkeinLabel::Omega(parity) => (0..=level.k() - 2)
            .filter(|&n| parity.admits(n))
            .map(|n| (n, alg.quantum_dim(n)))
            .collect(),
    };
    let top = colors.iter().map(|c| c.0 as usize).max().unwrap_or(0);
    let mut out = vec![alg.zero(); top + 1];
    for (n, d) in &colors {
        for (m, c) in table.row(*n as usize).iter().enumerate() {
            if !c.is_zero() {
                let term = alg.mul(d, &alg.integer(c));
                out[m] = alg.add(&out[m], &term);
            }
        }
    }
    out
}

/// Evaluate a link whose components carry colors or ω-labels, in any bracket
/// algebra. Framings are realized by kinks before cabling.
pub fn evaluate_labeled_link_in<G: BracketAlgebra>(
    alg: &G,
    d: &FramedLinkDiagram,
    labels: &[SkeinLabel],
    level: Level,
    config: &EvalConfig,
) -> Result<G::Elem, ColoredError> {
    if labels.len() != d.component_count() {
        return Err(ColoredError::LabelCount {
            labels: labels.len(),
            components: d.component_count(),
        });
    }
    let max = level.k() - 1;
    for l in labels {
        if let SkeinLabel::Color(n) = *l {
            if n > max {
                return Err(ColoredError::ColorOutOfRange { color: n, max });
            }
        }
    }
    let table = ChebyshevTable::new(max as usize);
    let coeffs: Vec<Vec<G::Elem>> = labels
        .iter()
        .map(|&l| label_coefficients(alg, l, level, &table))
        .collect();

    // multiplicity vectors with a nonzero coefficient product
    let mut terms: Vec<(Vec<usize>, G::Elem)> = vec![(Vec::new(), alg.one())];
    for per in &coeffs {
        let mut next = Vec::new();
        for (mv, c) in &terms {
            for (m, x) in per.iter().enumerate() {
                if alg.is_zero(x) {
                    continue;
                }
                let mut mv2 = mv.clone();
                mv2.push(m);
                next.push((mv2, alg.mul(c, x)));
            }
        }
        terms = next;
    }

    let framed = d.realize_framings();
    let parts: Result<Vec<G::Elem>, ColoredError> = terms
        .par_iter()
        .map(|(mv, c)| {
            let cable = framed.cable(mv)?;
            let b = bracket_in(alg, cable.diagram.word(), config)?;
            Ok(alg.mul(c, &b))
        })
        .collect();
    let mut out = alg.zero();
    for p in parts? {
        out = alg.add(&out, &p);
    }
    Ok(out)
}

/// Exact evaluation at `A = ζ`.
pub fn evaluate_labeled_link(
    d: &FramedLinkDiagram,
    labels: &[SkeinLabel],
    level: Level,
    config: &EvalConfig,
) -> Result<CyclotomicNumber, ColoredError> {
    let ring: Arc<CyclotomicRing> = level.ring();
    let alg = AtRootOfUnity::new(&ring);
    let v = evaluate_labeled_link_in(&alg, d, labels, level, config)?;
    Ok(alg.finish(&v))
}

/// Colored bracket as a Laurent polynomial. Colors are bounded only by the
/// capacity of the skein engines.
pub fn evaluate_colored_generic(
    d: &FramedLinkDiagram,
    colors: &[u32],
    config: &EvalConfig,
) -> Result<LaurentPoly, ColoredError> {
    let top = colors.iter().copied().max().unwrap_or(0);
    let level = Level::new(top as i64 + 2).expect("level at least 2");
    let labels: Vec<SkeinLabel> = colors.iter().map(|&n| SkeinLabel::Color(n)).collect();
    evaluate_labeled_link_in(&Generic, d, &labels, level, config)
}

/// Outcome of comparing the colored kink factor with `(-1)^n A^{n²+2n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistCheck {
    pub color: u32,
    pub expected_factor: LaurentPoly,
    pub framed: LaurentPoly,
    pub unframed: LaurentPoly,
    pub holds: bool,
}

/// Colored unknot with framing +1 against framing 0, by cross-multiplication.
pub fn twist_eigen_check(n: u32, config: &EvalConfig) -> Result<TwistCheck, ColoredError> {
    let framed = evaluate_colored_generic(&FramedLinkDiagram::unknot(1), &[n], config)?;
    let unframed = evaluate_colored_generic(&FramedLinkDiagram::unknot(0), &[n], config)?;
    let n64 = n as i64;
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    let expected_factor = LaurentPoly::monomial(n64 * n64 + 2 * n64, sign);
    let holds = framed == &expected_factor * &unframed;
    Ok(TwistCheck {
        color: n,
        expected_factor,
        framed,
        unframed,
        holds,
    })
}
