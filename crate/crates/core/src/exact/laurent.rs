use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Pow, Signed, Zero};

use super::rational::{parse_rational, Rational};
use crate::error::{MassError, Result};

/// Laurent polynomial in `t = q^{-1}` with exact rational coefficients.
///
/// Stored sparsely by exponent of `t`; negative exponents are positive powers
/// of `q`. Zero coefficients are never stored, so structural equality is
/// mathematical equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exp`.
    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `t^exp`, i.e. `q^{-exp}`.
    pub fn t_pow(exp: i64) -> Self {
        Self::monomial(Rational::one(), exp)
    }

    /// `q^exp`, i.e. `t^{-exp}`.
    pub fn q_pow(exp: i64) -> Self {
        Self::t_pow(-exp)
    }

    /// Build from `(t-exponent, coefficient)` pairs; repeated exponents add.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: i64, c: Rational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `t^exp`.
    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    /// Non-zero terms in increasing `t`-exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    /// The value if this is a constant (including zero).
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&0).cloned(),
            _ => None,
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, v)| (*e, v * c)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, v)| (e + k, v.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Substitute `t := point`.
    pub fn eval(&self, point: &Rational) -> Result<Rational> {
        if point.is_zero() {
            if self.min_exp().is_some_and(|e| e < 0) {
                return Err(MassError::domain(
                    "evaluation at t = 0 with negative exponents present",
                ));
            }
            return Ok(self.coeff(0));
        }
        let mut acc = Rational::zero();
        for (e, c) in &self.terms {
            let e = i32::try_from(*e).map_err(|_| MassError::domain("exponent out of range"))?;
            acc += c * Pow::pow(point, e);
        }
        Ok(acc)
    }

    /// Value at `t = 1/q`.
    pub fn eval_at_q(&self, q: u64) -> Result<Rational> {
        if q == 0 {
            return Err(MassError::domain("q must be positive"));
        }
        self.eval(&Rational::new(1.into(), q.into()))
    }

    /// Sparse `(q-exponent, coefficient)` list, highest power of `q` first.
    pub fn q_terms(&self) -> Vec<(i64, Rational)> {
        self.terms.iter().map(|(e, c)| (-e, c.clone())).collect()
    }
}

impl fmt::Display for LaurentPoly {
    /// Human form in powers of `q`, e.g. `1 + 2*q^-1 + 3*q^-2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (*e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (e, true) => write!(f, "q^{}", -e)?,
                (e, false) => write!(f, "{mag}*q^{}", -e)?,
            }
        }
        Ok(())
    }
}

impl std::str::FromStr for LaurentPoly {
    type Err = MassError;

    /// Inverse of `Display`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || MassError::domain(format!("not a polynomial in q: {s:?}"));
        let mut out = LaurentPoly::zero();
        if s == "0" {
            return Ok(out);
        }
        let (mut negative, mut rest) = match s.strip_prefix('-') {
            Some(r) => (true, r),
            None => (false, s),
        };
        loop {
            let (term, next) = match rest.find([' ']) {
                Some(i) => (&rest[..i], Some(rest[i..].trim_start())),
                None => (rest, None),
            };
            let (coeff, q_exp) = match term.split_once("q^") {
                Some((c, e)) => {
                    let c = match c {
                        "" => Rational::one(),
                        c => parse_rational(c.strip_suffix('*').ok_or_else(bad)?)?,
                    };
                    (c, e.parse::<i64>().map_err(|_| bad())?)
                }
                None => (parse_rational(term)?, 0),
            };
            if coeff.is_zero() || out.coeff(-q_exp) != Rational::zero() {
                return Err(bad());
            }
            out.add_term(-q_exp, if negative { -coeff } else { coeff });
            let Some(next) = next else { break };
            let (sign, r) = next.split_at(1.min(next.len()));
            negative = match sign {
                "+" => false,
                "-" => true,
                _ => return Err(bad()),
            };
            rest = r.trim_start();
        }
        Ok(out)
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
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

impl Sub for &LaurentPoly {
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

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(ea + eb, ca * cb);
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

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn t() -> LaurentPoly {
        LaurentPoly::t_pow(1)
    }

    #[test]
    fn eval_one_plus_t_at_half() {
        let p = &LaurentPoly::one() + &t();
        assert_eq!(p.eval(&rat(1, 2)).unwrap(), rat(3, 2));
    }

    #[test]
    fn eval_z2_q2_polynomial() {
        // 1 + t^2 + 2t^3 at t = 1/2
        let p = LaurentPoly::from_terms([(0, rat(1, 1)), (2, rat(1, 1)), (3, rat(2, 1))]);
        assert_eq!(p.eval(&rat(1, 2)).unwrap(), rat(3, 2));
    }

    #[test]
    fn difference_of_squares_in_q() {
        let q = LaurentPoly::q_pow(1);
        let one = LaurentPoly::one();
        let p = &(&q + &one) * &(&q - &one);
        assert_eq!(
            p,
            LaurentPoly::from_terms([(-2, rat(1, 1)), (0, rat(-1, 1))])
        );
    }

    #[test]
    fn eval_at_zero_rejects_q_powers() {
        assert!(LaurentPoly::q_pow(1).eval(&rat(0, 1)).is_err());
        assert_eq!(
            (&LaurentPoly::one() + &t()).eval(&rat(0, 1)).unwrap(),
            rat(1, 1)
        );
    }

    #[test]
    fn no_zero_coefficients_are_stored() {
        let p = &t() - &t();
        assert!(p.is_zero());
        assert_eq!(p, LaurentPoly::zero());
    }

    #[test]
    fn display_in_powers_of_q() {
        let p = LaurentPoly::from_terms([(0, rat(1, 1)), (1, rat(2, 1)), (2, rat(3, 1))]);
        assert_eq!(p.to_string(), "1 + 2*q^-1 + 3*q^-2");
        let p = LaurentPoly::from_terms([(-1, rat(1, 2)), (1, rat(-1, 1))]);
        assert_eq!(p.to_string(), "1/2*q^1 - q^-1");
    }

    #[test]
    fn parse_display_form() {
        for s in [
            "0",
            "1",
            "-3/4",
            "1 + 2*q^-1 + 3*q^-2",
            "1/2*q^1 - q^-1",
            "-q^-3 + 5/7*q^-9",
        ] {
            let p: LaurentPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        for s in ["", "1 +", "q^x", "2 q^-1", "1 + 1", "0*q^-1"] {
            assert!(s.parse::<LaurentPoly>().is_err(), "{s}");
        }
    }
}
