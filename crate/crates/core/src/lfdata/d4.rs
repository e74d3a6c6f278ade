//! The wild mass of `W(D_4)` over `Q_2` from tower log series.
//!
//! With `a, b, c, d` the exponentials of the tower log series for the
//! discriminant root fields `Q_2`, `Q_2(√-3)`, `Q_2(√-1)` and `Q_2(√2)`, the
//! total mass of the `D_n` family is the coefficient series of
//!
//! ```text
//! (1/8) (a b c² d⁴ + a b c² d⁻⁴ + 2 a b c⁻² + 4 a b⁻¹)
//! ```

use super::eisenstein::tower_census;
use super::records::{tower_log_terms, LocalFieldTable};
use super::sqclass::SquareClass;
use crate::error::{MassError, Result};
use crate::exact::{rat, LaurentPoly, PowerSeries, Rational};
use crate::exec::Exec;

/// Series order needed for `D_4`.
pub const D4_ORDER: usize = 4;

/// The four discriminant root fields, in the order `a, b, c, d`.
pub const D4_CLASSES: [SquareClass; 4] = [
    SquareClass::TRIVIAL,
    SquareClass::MINUS_THREE,
    SquareClass::MINUS_ONE,
    SquareClass::TWO,
];

#[derive(Debug, Clone, PartialEq)]
pub struct D4Audit {
    /// Log series for `a, b, c, d`, through `x^4`.
    pub logs: [PowerSeries; 4],
    /// `x^n` coefficient of log `a` from field towers only.
    pub nonsplit_a: Vec<LaurentPoly>,
    /// The assembled series.
    pub series: PowerSeries,
}

impl D4Audit {
    /// The `x^4` coefficient at `q`.
    pub fn mass(&self, q: u64) -> Result<Rational> {
        self.series.coeff(D4_ORDER).eval_at_q(q)
    }
}

fn exp_combination(logs: &[PowerSeries; 4], weights: [i64; 4]) -> Result<PowerSeries> {
    let mut s = PowerSeries::zero(logs[0].order());
    for (l, w) in logs.iter().zip(weights) {
        s = s.add(&l.scale(&rat(w, 1)));
    }
    s.exp()
}

/// `(1/8)(abc²d⁴ + abc²/d⁴ + 2ab/c² + 4a/b)` with `a = exp(log a)` etc.
pub fn assemble_d4(logs: &[PowerSeries; 4]) -> Result<PowerSeries> {
    let terms = [
        (1, [1, 1, 2, 4]),
        (1, [1, 1, 2, -4]),
        (2, [1, 1, -2, 0]),
        (4, [1, -1, 0, 0]),
    ];
    let mut total = PowerSeries::zero(logs[0].order());
    for (k, w) in terms {
        total = total.add(&exp_combination(logs, w)?.scale(&rat(k, 1)));
    }
    Ok(total.scale(&rat(1, 8)))
}

fn audit_from(coeffs: Vec<[LaurentPoly; 4]>, nonsplit_a: Vec<LaurentPoly>) -> Result<D4Audit> {
    let logs: [PowerSeries; 4] = std::array::from_fn(|i| {
        PowerSeries::from_coeffs(
            D4_ORDER,
            std::iter::once(LaurentPoly::zero()).chain(coeffs.iter().map(|c| c[i].clone())),
        )
    });
    let series = assemble_d4(&logs)?;
    Ok(D4Audit {
        logs,
        nonsplit_a,
        series,
    })
}

/// Audit from towers enumerated directly over `Q_2`.
pub fn d4_audit_first_principles(exec: Exec) -> Result<D4Audit> {
    let mut coeffs = Vec::new();
    let mut nonsplit = Vec::new();
    for n in 1..=D4_ORDER {
        let census = tower_census(n, exec)?;
        coeffs.push(D4_CLASSES.map(|c| census.log_coefficient(c)));
        nonsplit.push(census.fields_for(SquareClass::TRIVIAL));
    }
    audit_from(coeffs, nonsplit)
}

/// Audit from a field table; needs every degree `1..=8` that occurs in a
/// tower over a field of degree at most 4.
pub fn d4_mass_from_data(table: &LocalFieldTable) -> Result<D4Audit> {
    let have = table.degrees();
    let missing: Vec<u32> = [1, 2, 3, 4, 6, 8]
        .into_iter()
        .filter(|d| !have.contains(d))
        .collect();
    if !missing.is_empty() {
        return Err(MassError::domain(format!(
            "field table lacks degrees {missing:?}"
        )));
    }
    let mut coeffs = Vec::new();
    let mut nonsplit = Vec::new();
    for n in 1..=D4_ORDER as u32 {
        let mut row: [LaurentPoly; 4] = Default::default();
        for (slot, class) in row.iter_mut().zip(D4_CLASSES) {
            let t = tower_log_terms(table, n, class)?;
            if class == SquareClass::TRIVIAL {
                nonsplit.push(t.fields.clone());
            }
            *slot = t.total();
        }
        coeffs.push(row);
    }
    audit_from(coeffs, nonsplit)
}
