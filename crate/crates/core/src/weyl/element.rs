use num_traits::Zero;

use super::{LinExpS, PowerProduct};
use crate::exact::{Poly, Result};

/// `N / ∏ B_i^{m_i} · ∏ B_i^{E_i}`.
#[derive(Clone, Debug)]
pub struct FormalElement {
    numerator: Poly,
    denominator: Vec<u32>,
    attached: PowerProduct,
}

impl FormalElement {
    /// The power product itself, numerator `1`.
    pub fn unit(attached: &PowerProduct) -> Self {
        FormalElement {
            numerator: Poly::one(attached.s_context()),
            denominator: vec![0; attached.len()],
            attached: attached.clone(),
        }
    }

    /// Reduces on construction.
    pub fn new(numerator: Poly, denominator: Vec<u32>, attached: &PowerProduct) -> Result<Self> {
        assert_eq!(denominator.len(), attached.len());
        let numerator = numerator.to_context(attached.s_context())?;
        let mut e = FormalElement {
            numerator,
            denominator,
            attached: attached.clone(),
        };
        e.reduce();
        Ok(e)
    }

    pub fn zero(attached: &PowerProduct) -> Self {
        FormalElement {
            numerator: Poly::zero(attached.s_context()),
            denominator: vec![0; attached.len()],
            attached: attached.clone(),
        }
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn denominator(&self) -> &[u32] {
        &self.denominator
    }

    pub fn attached(&self) -> &PowerProduct {
        &self.attached
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Cancel base factors from the numerator while exactly divisible.
    pub fn reduce(&mut self) {
        self.reduce_in_order(&(0..self.attached.len()).collect::<Vec<_>>());
    }

    /// Same as [`reduce`](Self::reduce) with an explicit base order.
    pub fn reduce_in_order(&mut self, order: &[usize]) {
        if self.numerator.is_zero() {
            self.denominator.iter_mut().for_each(|m| *m = 0);
            return;
        }
        for &i in order {
            let base = &self.attached.lifted()[i];
            while self.denominator[i] > 0 {
                match self.numerator.exact_divide(base) {
                    Ok(q) => {
                        self.numerator = q;
                        self.denominator[i] -= 1;
                    }
                    Err(_) => break,
                }
            }
        }
    }

    /// Multiply by a polynomial in the base variables (and possibly `s`).
    pub fn mul_poly(&self, c: &Poly) -> Self {
        let c = c
            .to_context(self.attached.s_context())
            .expect("coefficient lives in the numerator context");
        let mut out = FormalElement {
            numerator: &self.numerator * &c,
            denominator: self.denominator.clone(),
            attached: self.attached.clone(),
        };
        out.reduce();
        out
    }

    /// `∂(N/∏B^m · ∏B^E) = (∂N·∏_S B + Σ_{i∈S} (E_i - m_i) N ∂B_i ∏_{S∖i} B) / ∏B^{m+[S]} · ∏B^E`
    /// where `S` is the set of bases depending on the variable.
    pub fn differentiate(&self, var: usize) -> Self {
        let pp = &self.attached;
        let s_ctx = pp.s_context();
        let partials: Vec<(usize, Poly)> = pp
            .bases()
            .iter()
            .enumerate()
            .filter_map(|(i, b)| {
                let d = b.derivative_at(var);
                (!d.is_zero()).then(|| (i, d.to_context(s_ctx).expect("widening")))
            })
            .collect();
        let d_num = self.numerator.derivative_at(var);
        let lifted = pp.lifted();
        let mut numerator = d_num;
        for (i, _) in &partials {
            numerator = &numerator * &lifted[*i];
        }
        for (i, d_base) in &partials {
            let m = self.denominator[*i] as i64;
            let factor = pp.exponents()[*i].sub_int(m);
            if factor == LinExpS::constant(Zero::zero()) {
                continue;
            }
            let mut term = &(&self.numerator * d_base) * &factor.to_poly(s_ctx);
            for (j, _) in &partials {
                if j != i {
                    term = &term * &lifted[*j];
                }
            }
            numerator += &term;
        }
        let mut denominator = self.denominator.clone();
        for (i, _) in &partials {
            denominator[*i] += 1;
        }
        let mut out = FormalElement {
            numerator,
            denominator,
            attached: pp.clone(),
        };
        out.reduce();
        out
    }

    /// Sum over a common denominator. Both must carry the same power product.
    pub fn add(&self, other: &FormalElement) -> Self {
        assert!(self.attached.same_bases(&other.attached));
        assert_eq!(self.attached.exponents(), other.attached.exponents());
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let lifted = self.attached.lifted();
        let denominator: Vec<u32> = self
            .denominator
            .iter()
            .zip(&other.denominator)
            .map(|(a, b)| *a.max(b))
            .collect();
        let lift = |e: &FormalElement| {
            let mut n = e.numerator.clone();
            for (i, (&have, &want)) in e.denominator.iter().zip(&denominator).enumerate() {
                if want > have {
                    n = &n * &lifted[i].pow(want - have);
                }
            }
            n
        };
        let mut out = FormalElement {
            numerator: &lift(self) + &lift(other),
            denominator,
            attached: self.attached.clone(),
        };
        out.reduce();
        out
    }

    /// `N·∏B^{m'}` and `N'·∏B^m` agree, exponents agree.
    pub fn equals(&self, other: &FormalElement) -> bool {
        if !self.attached.same_bases(&other.attached)
            || self.attached.exponents() != other.attached.exponents()
        {
            return false;
        }
        let lifted = self.attached.lifted();
        let mut a = self.numerator.clone();
        let mut b = other.numerator.clone();
        for (i, (&ma, &mb)) in self.denominator.iter().zip(&other.denominator).enumerate() {
            if mb > 0 {
                a = &a * &lifted[i].pow(mb);
            }
            if ma > 0 {
                b = &b * &lifted[i].pow(ma);
            }
        }
        a == b
    }
}
