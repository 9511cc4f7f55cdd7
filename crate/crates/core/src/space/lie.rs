use num_traits::{One, Zero};

use super::qmatrix::QMatrix;
use crate::exact::rational::{frac, int};
use crate::exact::Rational;
use crate::report::IdentityReport;

/// Bases `Y_ℓ`, `T_k` and `H_1`, `H_2` for a fixed size `r`.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    r: usize,
    y: Vec<QMatrix>,
    t: Vec<QMatrix>,
    h1: QMatrix,
    h2: QMatrix,
}

impl GeneratorSet {
    pub fn new(r: usize) -> Self {
        let y = (1..=r + 1)
            .map(|l| {
                QMatrix::from_fn(r, r, |i, j| {
                    if i + j + 1 == l {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
            })
            .collect();
        let t: Vec<QMatrix> = (0..r)
            .map(|k| {
                QMatrix::from_fn(r, r, |i, j| {
                    if j == i + k {
                        int((r - k - i) as i64)
                    } else {
                        Rational::zero()
                    }
                })
            })
            .collect();
        let t0_over_r = t[0].scale(&frac(1, r as i64));
        let half = QMatrix::identity(r).scale(&frac(1, 2));
        let h1 = &t0_over_r - &half;
        let h2 = &QMatrix::identity(r) - &t0_over_r;
        GeneratorSet { r, y, t, h1, h2 }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// `Y_ℓ` for `ℓ = 1..=r+1`.
    pub fn y(&self, l: usize) -> &QMatrix {
        &self.y[l - 1]
    }

    /// `T_k` for `k = 0..r`.
    pub fn t(&self, k: usize) -> &QMatrix {
        &self.t[k]
    }

    pub fn h1(&self) -> &QMatrix {
        &self.h1
    }

    pub fn h2(&self) -> &QMatrix {
        &self.h2
    }

    /// `H_1, H_2, T_1, …, T_{r-1}` as Lie elements.
    pub fn generators(&self) -> Vec<(String, LieElement)> {
        let mut out = vec![
            ("H1".to_string(), LieElement::h1(self.r)),
            ("H2".to_string(), LieElement::h2(self.r)),
        ];
        for k in 1..self.r {
            out.push((format!("T{k}"), LieElement::t(self.r, k)));
        }
        out
    }

    /// Sub-Hankel coordinates of a symmetric matrix, or `None` if it leaves
    /// the span of the `Y_ℓ`.
    pub fn coordinates(&self, m: &QMatrix) -> Option<Vec<Rational>> {
        let r = self.r;
        let mut coords: Vec<Rational> = (0..r).map(|j| m.get(0, j).clone()).collect();
        coords.push(if r >= 2 {
            m.get(1, r - 1).clone()
        } else {
            Rational::zero()
        });
        let mut rebuilt = QMatrix::zeros(r, r);
        for (l, c) in coords.iter().enumerate() {
            rebuilt = &rebuilt + &self.y[l].scale(c);
        }
        (rebuilt == *m).then_some(coords)
    }

    /// Column `ℓ` holds the coordinates of `X·Y_ℓ + Y_ℓ·Xᵗ`; `None` if some
    /// column leaves the sub-Hankel pattern.
    pub fn action_matrix(&self, x: &QMatrix) -> Option<QMatrix> {
        let n = self.r + 1;
        let mut a = QMatrix::zeros(n, n);
        let xt = x.transpose();
        for l in 0..n {
            let img = &(x * &self.y[l]) + &(&self.y[l] * &xt);
            let coords = self.coordinates(&img)?;
            for (m, c) in coords.into_iter().enumerate() {
                a.set(m, l, c);
            }
        }
        Some(a)
    }
}

/// `h_1 H_1 + h_2 H_2 + Σ t_k T_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieElement {
    pub h1: Rational,
    pub h2: Rational,
    /// `t[k-1]` is the coefficient of `T_k`.
    pub t: Vec<Rational>,
}

impl LieElement {
    pub fn zero(r: usize) -> Self {
        LieElement {
            h1: Rational::zero(),
            h2: Rational::zero(),
            t: vec![Rational::zero(); r - 1],
        }
    }

    pub fn h1(r: usize) -> Self {
        LieElement {
            h1: Rational::one(),
            ..Self::zero(r)
        }
    }

    pub fn h2(r: usize) -> Self {
        LieElement {
            h2: Rational::one(),
            ..Self::zero(r)
        }
    }

    pub fn t(r: usize, k: usize) -> Self {
        let mut e = Self::zero(r);
        e.t[k - 1] = Rational::one();
        e
    }

    pub fn to_matrix(&self, gens: &GeneratorSet) -> QMatrix {
        let mut m = &gens.h1.scale(&self.h1) + &gens.h2.scale(&self.h2);
        for (k, c) in self.t.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &gens.t[k + 1].scale(c);
            }
        }
        m
    }

    /// Inverse of [`to_matrix`](Self::to_matrix); `None` outside the span.
    pub fn from_matrix(m: &QMatrix, gens: &GeneratorSet) -> Option<Self> {
        let r = gens.r;
        let t: Vec<Rational> = (1..r).map(|k| m.get(0, k) / int((r - k) as i64)).collect();
        let h1 = m.get(0, 0) * int(2);
        let h1_coeff_22 = frac(r as i64 - 1, r as i64) - frac(1, 2);
        let h2 = (m.get(1, 1) - &h1 * h1_coeff_22) * int(r as i64);
        let e = LieElement { h1, h2, t };
        (e.to_matrix(gens) == *m).then_some(e)
    }

    /// `dν_s(X) = s_1 h_1 + s_2 h_2`.
    pub fn character(&self, s1: &Rational, s2: &Rational) -> Rational {
        s1 * &self.h1 + s2 * &self.h2
    }
}

/// Structure constants and the `H_1`, `H_2` eigen-relations.
pub fn verify_structure_constants(gens: &GeneratorSet) -> IdentityReport {
    let r = gens.r;
    let mut report = IdentityReport::new();
    for k in 0..r {
        for k2 in 0..r {
            let lhs = gens.t[k].commutator(&gens.t[k2]);
            let rhs = if k + k2 < r {
                gens.t[k + k2].scale(&int(k2 as i64 - k as i64))
            } else {
                QMatrix::zeros(r, r)
            };
            report.check(lhs == rhs, || format!("[T{k}, T{k2}] at r={r}"));
        }
        for l in 1..=r + 1 {
            let tk = &gens.t[k];
            let lhs = &(tk * gens.y(l)) + &(gens.y(l) * &tk.transpose());
            let rhs = if l > k {
                gens.y(l - k).scale(&int((2 * r + 1 - k - l) as i64))
            } else {
                QMatrix::zeros(r, r)
            };
            report.check(lhs == rhs, || format!("T{k} Y{l} + Y{l} T{k}^t at r={r}"));
        }
    }
    for k in 1..r {
        let c = frac(k as i64, r as i64);
        let tk = &gens.t[k];
        report.check(gens.h1.commutator(tk) == tk.scale(&c), || {
            format!("[H1, T{k}] at r={r}")
        });
        report.check(gens.h2.commutator(tk) == tk.scale(&-c.clone()), || {
            format!("[H2, T{k}] at r={r}")
        });
    }
    for l in 1..=r + 1 {
        let y = gens.y(l);
        let lhs1 = &(&gens.h1 * y) + &(y * &gens.h1.transpose());
        let lhs2 = &(&gens.h2 * y) + &(y * &gens.h2.transpose());
        let c1 = frac((r + 1 - l) as i64, r as i64);
        let c2 = frac(l as i64 - 1, r as i64);
        report.check(lhs1 == y.scale(&c1), || {
            format!("H1 Y{l} + Y{l} H1^t at r={r}")
        });
        report.check(lhs2 == y.scale(&c2), || {
            format!("H2 Y{l} + Y{l} H2^t at r={r}")
        });
    }
    report
}
