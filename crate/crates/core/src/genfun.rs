//! Partition counts and closed-form generating functions for the Weyl-group
//! series `A_n`, `B_n` and `D_n` (odd residue characteristic).

use std::sync::{OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::Result;
use crate::exact::{rat, LaurentPoly, PowerSeries, Rational};

/// Memoized `P(n, k)`, the number of partitions of `n` into exactly `k`
/// parts. Rows are filled on demand under a write lock; reads share.
struct PartitionTable {
    rows: RwLock<Vec<Vec<BigUint>>>,
}

impl PartitionTable {
    fn global() -> &'static PartitionTable {
        static TABLE: OnceLock<PartitionTable> = OnceLock::new();
        TABLE.get_or_init(|| PartitionTable {
            rows: RwLock::new(vec![vec![BigUint::one()]]),
        })
    }

    fn get(&self, n: usize, k: usize) -> BigUint {
        if k > n {
            return BigUint::zero();
        }
        {
            let rows = self.rows.read().expect("partition table poisoned");
            if n < rows.len() {
                return rows[n][k].clone();
            }
        }
        let mut rows = self.rows.write().expect("partition table poisoned");
        while rows.len() <= n {
            let m = rows.len();
            let row: Vec<BigUint> = (0..=m)
                .map(|k| {
                    if k == 0 {
                        return BigUint::zero();
                    }
                    // P(m, k) = P(m-1, k-1) + P(m-k, k)
                    let mut v = rows[m - 1][k - 1].clone();
                    if k <= m - k {
                        v += &rows[m - k][k];
                    }
                    v
                })
                .collect();
            rows.push(row);
        }
        rows[n][k].clone()
    }
}

/// Partitions of `n` into exactly `k` parts.
pub fn partitions_exact(n: usize, k: usize) -> BigUint {
    PartitionTable::global().get(n, k)
}

/// Partitions of `n` into any number of parts.
pub fn partitions(n: usize) -> BigUint {
    (0..=n).map(|k| partitions_exact(n, k)).sum()
}

fn big(n: BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn divisors(n: usize) -> impl Iterator<Item = usize> {
    (1..=n).filter(move |f| n % f == 0)
}

/// `Σ_k P(n, n-k) t^k`: the tame mass of `S_n`.
pub fn an_mass(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms((0..=n).map(|k| (k as i64, big(partitions_exact(n, n - k)))))
}

/// `q^{-n} Σ_{j≤n} Σ_{i≤j} P(j, i) P(n-j) q^i`: the tame mass of `W(B_n)`.
pub fn bn_mass(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for j in 0..=n {
        let rest = partitions(n - j);
        for i in 0..=j {
            p.add_term((n - i) as i64, big(partitions_exact(j, i) * &rest));
        }
    }
    p
}

/// `Σ_{f|n} q^{f-n}/f`: mass of degree-`n` field extensions.
pub fn sn_transitive(n: usize) -> LaurentPoly {
    LaurentPoly::from_terms(divisors(n).map(|f| ((n - f) as i64, rat(1, f as i64))))
}

/// `Σ_{f|n} (q^{f-n} + q^{-n})/f`: transitive part of the `W(B_n)` mass.
pub fn bn_transitive(n: usize) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for f in divisors(n) {
        p.add_term((n - f) as i64, rat(1, f as i64));
        p.add_term(n as i64, rat(1, f as i64));
    }
    p
}

/// `∏_{i≥1} (1 - coeff(i) x^{degree(i)})^{-1}`, truncated at `order`.
fn geometric_product(
    order: usize,
    degree: impl Fn(usize) -> usize,
    coeff: impl Fn(usize) -> LaurentPoly,
) -> PowerSeries {
    let mut acc = PowerSeries::one(order);
    for i in 1.. {
        let d = degree(i);
        if d > order {
            break;
        }
        acc = acc.mul(&PowerSeries::geometric(order, &coeff(i), d));
    }
    acc
}

fn t(e: i64) -> LaurentPoly {
    LaurentPoly::t_pow(e)
}

/// `∏ (1 - x^i q^{1-i})^{-1}`.
pub fn an_genfun(order: usize) -> PowerSeries {
    geometric_product(order, |i| i, |i| t(i as i64 - 1))
}

/// `∏ (1 - x^i q^{-i})^{-1} (1 - x^i q^{1-i})^{-1}`.
pub fn bn_genfun(order: usize) -> PowerSeries {
    geometric_product(order, |i| i, |i| t(i as i64)).mul(&an_genfun(order))
}

/// `(1/4) A (B + B') + (1/2) C` with `A = ∏(1 - q^{1-n}x^n)^{-1}`,
/// `B = ∏(1 - q^{-n}x^n)^{-1}`, `B' = ∏(1 + q^{-n}x^n)^{-1}` and
/// `C = ∏(1 - q^{1-2n}x^{2n})^{-1}`.
///
/// This is the literal closed form. Its `x^n` coefficient is half the tame
/// mass of `W(D_n)` for `n ≥ 1`: the sum over `V_4` characters is normalized
/// by `|W(B_n)|`, and `[W(B_n) : W(D_n)] = 2`.
pub fn dn_genfun_odd(order: usize) -> PowerSeries {
    let a = an_genfun(order);
    let b = geometric_product(order, |n| n, |n| t(n as i64));
    let b_neg = geometric_product(order, |n| n, |n| -t(n as i64));
    let c = geometric_product(order, |n| 2 * n, |n| t(2 * n as i64 - 1));
    a.mul(&b.add(&b_neg))
        .scale(&rat(1, 4))
        .add(&c.scale(&rat(1, 2)))
}

/// `x^n` coefficients of [`dn_genfun_odd`] rescaled to the tame `W(D_n)`
/// mass (doubled for `n ≥ 1`).
pub fn dn_mass_odd(n: usize) -> LaurentPoly {
    let c = dn_genfun_odd(n).coeff(n).clone();
    if n == 0 {
        c
    } else {
        c.scale(&rat(2, 1))
    }
}

/// Whether `total = exp(Σ_{n≥1} transitive[n-1] x^n)` through the order of
/// `total`.
pub fn exponential_formula_check(transitive: &[LaurentPoly], total: &PowerSeries) -> bool {
    let order = total.order();
    let mut coeffs = vec![LaurentPoly::zero()];
    coeffs.extend(transitive.iter().take(order).cloned());
    let series = PowerSeries::from_coeffs(order, coeffs);
    series.exp().map(|e| &e == total).unwrap_or(false)
}

/// Raise `∏_{n≥1} (1 - c(n) x^{d(n)})` to the power `r`.
fn product_power(
    order: usize,
    r: &Rational,
    degree: impl Fn(usize) -> usize,
    coeff: impl Fn(usize) -> LaurentPoly,
) -> Result<PowerSeries> {
    let mut acc = PowerSeries::one(order);
    for n in 1.. {
        let d = degree(n);
        if d > order {
            break;
        }
        let factor = PowerSeries::one(order).sub(&PowerSeries::monomial(order, coeff(n), d));
        acc = acc.mul(&factor.pow(r)?);
    }
    Ok(acc)
}

/// The series `a`, `b`, `c` whose combination
/// `(1/4)(a b c² + a b / c² + 2 a / b)` is [`dn_genfun_odd`].
pub fn dn_abc_series(order: usize) -> Result<(PowerSeries, PowerSeries, PowerSeries)> {
    let half = rat(-1, 2);
    let quarter = rat(-1, 4);
    let a = product_power(order, &half, |n| n, |n| t(n as i64 - 1))?
        .mul(&product_power(
            order,
            &half,
            |n| 2 * n,
            |n| t(2 * n as i64 - 1),
        )?)
        .mul(&product_power(
            order,
            &quarter,
            |n| 2 * n,
            |n| t(2 * n as i64),
        )?);
    let b = product_power(order, &half, |n| 2 * n - 1, |n| t(2 * n as i64 - 2))?.mul(
        &product_power(order, &quarter, |n| 2 * n, |n| t(2 * n as i64))?,
    );
    let c = product_power(order, &rat(1, 4), |n| 2 * n, |n| t(2 * n as i64))?.mul(&product_power(
        order,
        &half,
        |n| n,
        |n| t(n as i64),
    )?);
    Ok((a, b, c))
}

/// `(1/4)(a b c² + a b / c² + 2 a / b)`.
pub fn assemble_abc(a: &PowerSeries, b: &PowerSeries, c: &PowerSeries) -> Result<PowerSeries> {
    let ab = a.mul(b);
    let c2 = c.mul(c);
    let term1 = ab.mul(&c2);
    let term2 = ab.mul(&c2.inv()?);
    let term3 = a.mul(&b.inv()?).scale(&rat(2, 1));
    Ok(term1.add(&term2).add(&term3).scale(&rat(1, 4)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn u(n: u32) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn partition_values() {
        assert_eq!(partitions_exact(0, 0), u(1));
        assert_eq!(partitions_exact(4, 2), u(2));
        assert_eq!(partitions_exact(5, 0), u(0));
        for n in 0..=20 {
            assert_eq!(partitions_exact(n, n), u(1));
        }
        assert_eq!(partitions(10), u(42));
        assert_eq!(partitions(100), "190569292".parse::<BigUint>().unwrap());
    }

    #[test]
    fn a_and_b_masses() {
        assert_eq!(an_mass(1), t(0));
        assert_eq!(an_mass(2), t(0) + t(1));
        assert_eq!(
            an_mass(4),
            LaurentPoly::from_terms([
                (0, rat(1, 1)),
                (1, rat(1, 1)),
                (2, rat(2, 1)),
                (3, rat(1, 1))
            ])
        );
        assert_eq!(bn_mass(1), t(0) + t(1));
        assert_eq!(sn_transitive(1), t(0));
        assert_eq!(
            bn_transitive(2),
            t(1) + t(2) + (t(0) + t(2)).scale(&rat(1, 2))
        );
    }

    #[test]
    fn genfun_coefficients() {
        let a = an_genfun(7);
        let b = bn_genfun(5);
        for n in 0..=7 {
            assert_eq!(a.coeff(n), &an_mass(n), "A{n}");
        }
        for n in 0..=5 {
            assert_eq!(b.coeff(n), &bn_mass(n), "B{n}");
        }
        assert_eq!(dn_genfun_odd(4).coeff(0), &t(0));
        assert_eq!(dn_mass_odd(2), (t(0) + t(1)).pow(2));
    }

    #[test]
    fn exponential_formula() {
        let sn: Vec<_> = (1..=8).map(sn_transitive).collect();
        let bn: Vec<_> = (1..=8).map(bn_transitive).collect();
        assert!(exponential_formula_check(&sn, &an_genfun(8)));
        assert!(exponential_formula_check(&bn, &bn_genfun(8)));
        assert!(exponential_formula_check(&[], &PowerSeries::one(0)));
        assert!(!exponential_formula_check(&sn, &bn_genfun(8)));
    }

    #[test]
    fn abc_identity() {
        let (a, b, c) = dn_abc_series(6).unwrap();
        for s in [&a, &b, &c] {
            assert_eq!(s.coeff(0), &t(0));
        }
        assert_eq!(assemble_abc(&a, &b, &c).unwrap(), dn_genfun_odd(6));
        assert_eq!(a.log().unwrap().coeff(1), &LaurentPoly::constant(rat(1, 2)));
    }
}
