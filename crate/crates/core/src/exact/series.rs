use std::fmt;

use num_traits::Zero;

use super::laurent::LaurentPoly;
use super::rational::Rational;
use crate::error::{MassError, Result};

/// Power series in `x` truncated at `x^order`, with [`LaurentPoly`]
/// coefficients.
///
/// Binary operations on series of different orders truncate to the smaller
/// order; nothing beyond `x^order` is ever read or written.
#[derive(Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<LaurentPoly>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![LaurentPoly::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = LaurentPoly::one();
        s
    }

    /// Series with the given leading coefficients; missing ones are zero,
    /// extra ones are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = LaurentPoly>) -> Self {
        let mut s = Self::zero(order);
        for (slot, c) in s.coeffs.iter_mut().zip(coeffs) {
            *slot = c;
        }
        s
    }

    /// `c * x^k`, or zero if `k > order`.
    pub fn monomial(order: usize, c: LaurentPoly, k: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// `(1 - c x^k)^{-1} = sum_j c^j x^{jk}`, for `k >= 1`.
    pub fn geometric(order: usize, c: &LaurentPoly, k: usize) -> Self {
        assert!(k >= 1, "geometric factor needs a positive x-degree");
        let mut s = Self::zero(order);
        let mut power = LaurentPoly::one();
        let mut j = 0;
        while j * k <= order {
            s.coeffs[j * k] = power.clone();
            power = &power * c;
            j += 1;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &LaurentPoly {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[LaurentPoly] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order());
        Self {
            coeffs: self.coeffs[..=order].to_vec(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] + &other.coeffs[k])
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n)
                .map(|k| &self.coeffs[k] - &other.coeffs[k])
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut out = Self::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                out.coeffs[i + j] += &(&self.coeffs[i] * &other.coeffs[j]);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Multiply every coefficient by the Laurent polynomial `p`.
    pub fn scale_poly(&self, p: &LaurentPoly) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|c| c * p).collect(),
        }
    }

    /// Multiplicative inverse; the constant term must be a nonzero constant.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0]
            .as_constant()
            .filter(|c| !c.is_zero())
            .ok_or_else(|| {
                MassError::domain("series inverse needs a nonzero constant leading coefficient")
            })?;
        let c0_inv = c0.recip();
        let n = self.order();
        let mut out = Self::zero(n);
        out.coeffs[0] = LaurentPoly::constant(c0_inv.clone());
        for k in 1..=n {
            let mut acc = LaurentPoly::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += &(&self.coeffs[j] * &out.coeffs[k - j]);
            }
            out.coeffs[k] = acc.scale(&-c0_inv.clone());
        }
        Ok(out)
    }

    /// `exp(f)`; requires `f(0) = 0`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(MassError::domain("exp needs a zero constant term"));
        }
        // n g_n = sum_{k=1}^n k f_k g_{n-k}
        let n = self.order();
        let mut g = Self::zero(n);
        g.coeffs[0] = LaurentPoly::one();
        for m in 1..=n {
            let mut acc = LaurentPoly::zero();
            for k in 1..=m {
                if self.coeffs[k].is_zero() {
                    continue;
                }
                let term = &self.coeffs[k] * &g.coeffs[m - k];
                acc += &term.scale(&Rational::from_integer(k.into()));
            }
            g.coeffs[m] = acc.scale(&Rational::new(1.into(), m.into()));
        }
        Ok(g)
    }

    /// `log(f)`; requires `f(0) = 1`.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != LaurentPoly::one() {
            return Err(MassError::domain("log needs constant term 1"));
        }
        // h_n = f_n - (1/n) sum_{k=1}^{n-1} k h_k f_{n-k}
        let n = self.order();
        let mut h = Self::zero(n);
        for m in 1..=n {
            let mut acc = LaurentPoly::zero();
            for k in 1..m {
                if h.coeffs[k].is_zero() || self.coeffs[m - k].is_zero() {
                    continue;
                }
                let term = &h.coeffs[k] * &self.coeffs[m - k];
                acc += &term.scale(&Rational::from_integer(k.into()));
            }
            h.coeffs[m] = &self.coeffs[m] - &acc.scale(&Rational::new(1.into(), m.into()));
        }
        Ok(h)
    }

    /// `f^r := exp(r log f)`; requires `f(0) = 1`.
    pub fn pow(&self, r: &Rational) -> Result<Self> {
        if r.is_zero() {
            if self.coeffs[0] != LaurentPoly::one() {
                return Err(MassError::domain("pow needs constant term 1"));
            }
            return Ok(Self::one(self.order()));
        }
        self.log()?.scale(r).exp()
    }

    /// Substitute `x -> q^k x`: the `x^n` coefficient is multiplied by
    /// `q^{nk}`.
    pub fn substitute_x_scale(&self, power_of_q: i64) -> Self {
        Self {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.shift(-(n as i64) * power_of_q))
                .collect(),
        }
    }

    /// Evaluate every coefficient at `t = 1/q`.
    pub fn eval_at_q(&self, q: u64) -> Result<Vec<Rational>> {
        self.coeffs.iter().map(|c| c.eval_at_q(q)).collect()
    }

    /// True iff every coefficient is a constant; used for series whose
    /// coefficients were evaluated at a fixed `q`.
    pub fn is_numeric(&self) -> bool {
        self.coeffs.iter().all(|c| c.as_constant().is_some())
    }

    /// Constant series `c` (order `order`).
    pub fn constant(order: usize, c: Rational) -> Self {
        let mut s = Self::zero(order);
        if !c.is_zero() {
            s.coeffs[0] = LaurentPoly::constant(c);
        }
        s
    }

    #[cfg(test)]
    fn is_one(&self) -> bool {
        self.coeffs[0]
            .as_constant()
            .is_some_and(|c| num_traits::One::is_one(&c))
            && self.coeffs[1..].iter().all(LaurentPoly::is_zero)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})*x^{k}")?;
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

impl fmt::Debug for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PowerSeries[{self}]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn c(n: i64, d: i64) -> LaurentPoly {
        LaurentPoly::constant(rat(n, d))
    }

    fn one_minus(order: usize, coeff: LaurentPoly, k: usize) -> PowerSeries {
        PowerSeries::one(order).sub(&PowerSeries::monomial(order, coeff, k))
    }

    #[test]
    fn inverse_of_one_minus_x() {
        let f = one_minus(3, LaurentPoly::one(), 1);
        let g = f.inv().unwrap();
        assert_eq!(g, PowerSeries::from_coeffs(3, vec![c(1, 1); 4]));
        assert!(f.mul(&g).is_one());
    }

    #[test]
    fn inverse_of_one_minus_qx() {
        let q = LaurentPoly::q_pow(1);
        let f = one_minus(2, q.clone(), 1);
        let g = f.inv().unwrap();
        // multiply back
        assert!(f.mul(&g).is_one());
        assert_eq!(
            g,
            PowerSeries::from_coeffs(2, [LaurentPoly::one(), q.clone(), &q * &q])
        );
    }

    #[test]
    fn inverse_needs_constant_unit() {
        let f = PowerSeries::monomial(3, LaurentPoly::one(), 1);
        assert!(f.inv().is_err());
        let f = PowerSeries::monomial(3, LaurentPoly::t_pow(1), 0);
        assert!(f.inv().is_err());
    }

    #[test]
    fn exp_of_x() {
        let f = PowerSeries::monomial(3, LaurentPoly::one(), 1);
        assert_eq!(
            f.exp().unwrap(),
            PowerSeries::from_coeffs(3, [c(1, 1), c(1, 1), c(1, 2), c(1, 6)])
        );
        assert!(PowerSeries::one(3).exp().is_err());
    }

    #[test]
    fn sqrt_round_trip() {
        let f = one_minus(6, LaurentPoly::one(), 1);
        let r = f.pow(&rat(1, 2)).unwrap();
        assert_eq!(r.mul(&r), f);
    }

    #[test]
    fn log_of_geometric_series() {
        // (1 - x q^0)^{-1}: log = x + x^2/2
        let f = one_minus(2, LaurentPoly::q_pow(0), 1).inv().unwrap();
        let l = f.log().unwrap();
        assert_eq!(l, PowerSeries::from_coeffs(2, [c(0, 1), c(1, 1), c(1, 2)]));
        assert_eq!(l.exp().unwrap(), f);
        assert!(PowerSeries::zero(2).log().is_err());
    }

    #[test]
    fn substitute_scale() {
        let f = PowerSeries::from_coeffs(1, [LaurentPoly::one(), LaurentPoly::t_pow(1)]);
        assert_eq!(
            f.substitute_x_scale(1),
            PowerSeries::from_coeffs(1, vec![LaurentPoly::one(); 2])
        );
        assert_eq!(f.substitute_x_scale(0), f);
    }

    #[test]
    fn mixed_orders_take_minimum() {
        let a = PowerSeries::one(5);
        let b = PowerSeries::one(2);
        assert_eq!(a.mul(&b).order(), 2);
        assert_eq!(a.add(&b).order(), 2);
    }
}
