//! Linking matrices and their inertia over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::diagram::FramedLinkDiagram;

/// Symmetric integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSymMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl IntSymMatrix {
    pub fn zeros(n: usize) -> Self {
        IntSymMatrix {
            n,
            entries: vec![0; n * n],
        }
    }

    /// Panics unless `rows` is square and symmetric.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut m = IntSymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), n, "matrix must be square");
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(v, rows[j][i], "matrix must be symmetric");
                m.entries[i * n + j] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.entries[i * self.n + j] = v;
        self.entries[j * self.n + i] = v;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n.max(1)).take(self.n).map(<[i64]>::to_vec).collect()
    }

    /// Block sum `self ⊕ other`.
    pub fn direct_sum(&self, other: &IntSymMatrix) -> IntSymMatrix {
        let n = self.n + other.n;
        let mut m = IntSymMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.entries[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.entries[(self.n + i) * n + self.n + j] = other.get(i, j);
            }
        }
        m
    }

    /// `Uᵀ M U`, for a square `u` of the same dimension.
    pub fn congruent(&self, u: &[Vec<i64>]) -> IntSymMatrix {
        let n = self.n;
        let mut mu = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                mu[i * n + j] = (0..n).map(|t| self.get(i, t) * u[t][j]).sum();
            }
        }
        let mut out = IntSymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = u.iter().enumerate().map(|(t, row)| row[i] * mu[t * n + j]).sum();
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Inertia {
    pub b_plus: usize,
    pub b_minus: usize,
    pub nullity: usize,
}

impl Inertia {
    pub fn dim(&self) -> usize {
        self.b_plus + self.b_minus + self.nullity
    }

    pub fn signature(&self) -> i64 {
        self.b_plus as i64 - self.b_minus as i64
    }
}

impl std::ops::Add for Inertia {
    type Output = Inertia;

    fn add(self, o: Inertia) -> Inertia {
        Inertia {
            b_plus: self.b_plus + o.b_plus,
            b_minus: self.b_minus + o.b_minus,
            nullity: self.nullity + o.nullity,
        }
    }
}

/// Framings on the diagonal, pairwise linking numbers elsewhere.
pub fn linking_matrix(d: &FramedLinkDiagram) -> IntSymMatrix {
    let data = d.components_and_linking();
    let n = d.component_count();
    let mut m = IntSymMatrix::zeros(n);
    for i in 0..n {
        m.set(i, i, d.framings()[i]);
        for j in i + 1..n {
            m.set(i, j, data.linking[i][j]);
        }
    }
    m
}

/// Exact congruence diagonalization over `Q`.
pub fn inertia(m: &IntSymMatrix) -> Inertia {
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .into_iter()
        .map(|r| r.into_iter().map(|v| BigRational::from_integer(BigInt::from(v))).collect())
        .collect();
    let mut live: Vec<usize> = (0..m.dim()).collect();
    let mut out = Inertia::default();

    while !live.is_empty() {
        if let Some(pos) = live.iter().position(|&i| !a[i][i].is_zero()) {
            let i = live.swap_remove(pos);
            let p = a[i][i].clone();
            if p.is_positive() {
                out.b_plus += 1;
            } else {
                out.b_minus += 1;
            }
            for &r in &live {
                let f = &a[r][i] / &p;
                if f.is_zero() {
                    continue;
                }
                for &s in &live {
                    let delta = &f * &a[i][s];
                    a[r][s] -= delta;
                }
            }
            continue;
        }
        // all remaining diagonal entries vanish: split off a hyperbolic pair
        let pair = live.iter().enumerate().find_map(|(x, &i)| {
            live[x + 1..]
                .iter()
                .find(|&&j| !a[i][j].is_zero())
                .map(|&j| (i, j))
        });
        let Some((i, j)) = pair else {
            out.nullity += live.len();
            break;
        };
        live.retain(|&t| t != i && t != j);
        out.b_plus += 1;
        out.b_minus += 1;
        let c = a[i][j].clone();
        let snapshot: Vec<(usize, BigRational, BigRational)> = live
            .iter()
            .map(|&r| (r, a[r][i].clone(), a[r][j].clone()))
            .collect();
        for (r, ri, rj) in &snapshot {
            for (s, si, sj) in &snapshot {
                let delta = (ri * sj + rj * si) / &c;
                a[*r][*s] -= delta;
            }
        }
    }
    out
}
