//! Square classes of `Q_2^*`.

use std::fmt;
use std::str::FromStr;

use crate::error::{MassError, Result};

/// An element of `Q_2^* / Q_2^{*2} ≅ (Z/2)^3`, written `2^v (-1)^s 5^w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SquareClass {
    pub odd_valuation: bool,
    pub minus: bool,
    pub five: bool,
}

impl SquareClass {
    pub const TRIVIAL: SquareClass = SquareClass::new(false, false, false);
    /// `Q_2(√-3)`, the unramified class.
    pub const MINUS_THREE: SquareClass = SquareClass::new(false, false, true);
    pub const MINUS_ONE: SquareClass = SquareClass::new(false, true, false);
    pub const TWO: SquareClass = SquareClass::new(true, false, false);

    pub const fn new(odd_valuation: bool, minus: bool, five: bool) -> Self {
        Self {
            odd_valuation,
            minus,
            five,
        }
    }

    /// Class of a nonzero integer.
    pub fn of_integer(n: i128) -> Self {
        assert!(n != 0, "zero has no square class");
        let v = n.trailing_zeros();
        let u = (n >> v).rem_euclid(8);
        Self {
            odd_valuation: v % 2 == 1,
            minus: u == 3 || u == 7,
            five: u == 3 || u == 5,
        }
    }

    pub fn mul(self, other: Self) -> Self {
        Self {
            odd_valuation: self.odd_valuation ^ other.odd_valuation,
            minus: self.minus ^ other.minus,
            five: self.five ^ other.five,
        }
    }

    /// Squarefree integer representative in `{1, -1, ±2, ±3, ±6}`.
    pub fn representative(self) -> i64 {
        match (self.odd_valuation, self.minus, self.five) {
            (false, false, false) => 1,
            (false, false, true) => -3,
            (false, true, false) => -1,
            (false, true, true) => 3,
            (true, false, false) => 2,
            (true, false, true) => -6,
            (true, true, false) => -2,
            (true, true, true) => 6,
        }
    }

    pub fn all() -> impl Iterator<Item = SquareClass> {
        (0u8..8).map(|b| SquareClass::new(b & 4 != 0, b & 2 != 0, b & 1 != 0))
    }
}

impl fmt::Display for SquareClass {
    /// The field `Q_2(√d)` cut out by the class.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.representative() {
            1 => write!(f, "Q2"),
            d => write!(f, "Q2(sqrt({d}))"),
        }
    }
}

impl FromStr for SquareClass {
    type Err = MassError;

    /// Accepts `Q2` and `Q2(sqrt(d))` for any nonzero integer `d`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || MassError::domain(format!("unknown discriminant root field {s:?}"));
        let s = s.trim();
        if s == "Q2" {
            return Ok(Self::TRIVIAL);
        }
        let d: i128 = s
            .strip_prefix("Q2(sqrt(")
            .and_then(|r| r.strip_suffix("))"))
            .ok_or_else(bad)?
            .trim()
            .parse()
            .map_err(|_| bad())?;
        if d == 0 {
            return Err(bad());
        }
        Ok(Self::of_integer(d))
    }
}
