use super::context::VarContext;
use super::error::{ExactError, Result};
use super::poly::Poly;

/// Dense row-major matrix of polynomials sharing one context.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Poly>) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols);
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Poly) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Self::new(rows, cols, entries)
    }

    pub fn identity(ctx: &VarContext, n: usize) -> Self {
        Self::from_fn(n, n, |i, j| {
            if i == j {
                Poly::one(ctx)
            } else {
                Poly::zero(ctx)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[Poly] {
        &self.entries
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division is exact; a zero pivot is replaced by a lower row with
    /// a nonzero entry in the pivot column, flipping the sign.
    pub fn determinant(&self) -> Result<Poly> {
        if self.rows != self.cols {
            return Err(ExactError::Shape {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let ctx = self.entries[0].context().clone();
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut negate = false;
        let mut prev = Poly::one(&ctx);
        for k in 0..n.saturating_sub(1) {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return Ok(Poly::zero(&ctx)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let cross = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                    m[i][j] = cross
                        .exact_divide(&prev)
                        .expect("Bareiss division is exact");
                }
                m[i][k] = Poly::zero(&ctx);
            }
            prev = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    #[test]
    fn two_by_two_hankel() {
        let ctx = VarContext::indexed("y", 3);
        let y = |i: usize| Poly::var_at(&ctx, i - 1);
        let m = PolyMatrix::new(2, 2, vec![y(1), y(2), y(2), y(3)]);
        assert_eq!(m.determinant().unwrap(), y(1) * y(3) - y(2).pow(2));
    }

    #[test]
    fn identity_has_unit_determinant() {
        let ctx = VarContext::indexed("x", 2);
        for n in 1..7 {
            assert_eq!(
                PolyMatrix::identity(&ctx, n).determinant().unwrap(),
                Poly::one(&ctx)
            );
        }
    }

    #[test]
    fn zero_pivot_requires_swap() {
        let ctx = VarContext::indexed("x", 1);
        let c = |v: i64| Poly::constant(&ctx, int(v));
        let m = PolyMatrix::new(2, 2, vec![c(0), c(1), c(1), c(0)]);
        assert_eq!(m.determinant().unwrap(), c(-1));
    }

    #[test]
    fn non_square_is_a_shape_error() {
        let ctx = VarContext::indexed("x", 1);
        let m = PolyMatrix::new(1, 2, vec![Poly::one(&ctx), Poly::one(&ctx)]);
        assert_eq!(m.determinant(), Err(ExactError::Shape { rows: 1, cols: 2 }));
    }
}
