//! Quadratic towers over `Q_2` enumerated directly from Eisenstein
//! polynomials, with no field table.
//!
//! A degree `n` extension `L/Q_2` has residue degree `f` and ramification
//! `m = n/f`. With `F = Z_2[ζ]/(g)` unramified of degree `f` and `q = 2^f`,
//! Serre's measure on Eisenstein polynomials `x^m + Σ a_i x^i` over `O_F`
//! gives
//!
//! ```text
//! Σ_L ψ(L) / aut(L) = (1/f) ∫ ψ(L_P) q^(d_F - m + 1) dP
//! ```
//!
//! for any function `ψ` of the isomorphism class. Here `ψ` counts quadratic
//! étale algebras `L(√δ)`, `δ ∈ L*/L*²`, by the square class of `N(δ)` and
//! the conductor of the tower. The integral is evaluated exactly by refining
//! residue classes of the coefficients until the discriminant is fixed and
//! Krasner's lemma guarantees every polynomial in the class defines the same
//! field.

use std::collections::{BTreeMap, HashMap};

use num_traits::{One, Zero};

use super::sqclass::SquareClass;
use crate::error::{MassError, Result};
use crate::exact::{LaurentPoly, Rational};
use crate::exec::Exec;
use num_bigint::BigInt;

/// Largest supported base degree.
pub const MAX_DEGREE: usize = 4;

type Fe = [i128; MAX_DEGREE];

/// Low coefficients of the monic `g` with `F = Z_2[ζ]/(g)`, irreducible mod 2.
fn modulus(f: usize) -> Fe {
    match f {
        1 => [0, 0, 0, 0],
        2 => [1, 1, 0, 0],
        3 => [1, 1, 0, 0],
        4 => [1, 1, 0, 0],
        _ => unreachable!("residue degree {f} unsupported"),
    }
}

#[derive(Clone, Copy)]
struct Unram {
    f: usize,
    g: Fe,
}

impl Unram {
    fn new(f: usize) -> Self {
        Self { f, g: modulus(f) }
    }

    fn mul(&self, a: &Fe, b: &Fe) -> Fe {
        let f = self.f;
        let mut r = [0i128; 2 * MAX_DEGREE - 1];
        for i in 0..f {
            if a[i] == 0 {
                continue;
            }
            for j in 0..f {
                r[i + j] = r[i + j]
                    .checked_add(a[i].checked_mul(b[j]).expect("overflow in O_F"))
                    .expect("overflow in O_F");
            }
        }
        for d in (f..2 * f - 1).rev() {
            let c = r[d];
            if c != 0 {
                r[d] = 0;
                for t in 0..f {
                    r[d - f + t] -= c * self.g[t];
                }
            }
        }
        let mut out = [0; MAX_DEGREE];
        out[..f].copy_from_slice(&r[..f]);
        out
    }

    /// An element of the residue field with absolute trace 1, lifted.
    fn trace_one(&self) -> Fe {
        let f = self.f;
        for bits in 1u32..(1 << f) {
            let theta: Fe = std::array::from_fn(|i| i128::from(i < f && bits >> i & 1 == 1));
            let mut x = theta;
            let mut trace = [0i128; MAX_DEGREE];
            for _ in 0..f {
                for i in 0..f {
                    trace[i] = (trace[i] + x[i]).rem_euclid(2);
                }
                x = self.mul(&x, &x).map(|c| c.rem_euclid(2));
            }
            if trace[0] == 1 && trace[1..].iter().all(|&c| c == 0) {
                return theta;
            }
        }
        unreachable!("trace form is surjective")
    }
}

fn v2(x: i128) -> u32 {
    if x == 0 {
        u32::MAX
    } else {
        x.trailing_zeros()
    }
}

fn v_f(a: &Fe) -> u32 {
    a.iter().map(|&c| v2(c)).min().unwrap_or(u32::MAX)
}

/// `O_L = O_F[π]/(P)` for an Eisenstein polynomial `P`.
struct Ring {
    m: usize,
    unram: Unram,
    /// `a_0 .. a_{m-1}`.
    a: Vec<Fe>,
}

type Elt = Vec<Fe>;

impl Ring {
    fn zero(&self) -> Elt {
        vec![[0; MAX_DEGREE]; self.m]
    }

    fn one(&self) -> Elt {
        let mut e = self.zero();
        e[0][0] = 1;
        e
    }

    fn pi(&self) -> Elt {
        let mut e = self.zero();
        if self.m > 1 {
            e[1][0] = 1;
        } else {
            e[0] = self.a[0].map(|c| -c);
        }
        e
    }

    fn mul(&self, x: &Elt, y: &Elt) -> Elt {
        let m = self.m;
        let f = self.unram.f;
        let mut r = vec![[0i128; MAX_DEGREE]; 2 * m - 1];
        for i in 0..m {
            if x[i].iter().all(|&c| c == 0) {
                continue;
            }
            for j in 0..m {
                let p = self.unram.mul(&x[i], &y[j]);
                for t in 0..f {
                    r[i + j][t] += p[t];
                }
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = r[d];
            if c.iter().any(|&v| v != 0) {
                r[d] = [0; MAX_DEGREE];
                for i in 0..m {
                    let p = self.unram.mul(&c, &self.a[i]);
                    for t in 0..f {
                        r[d - m + i][t] -= p[t];
                    }
                }
            }
        }
        r.truncate(m);
        r
    }

    /// `N_{L/Q_2}(x)` as the determinant of multiplication by `x`.
    fn norm(&self, x: &Elt) -> i128 {
        let m = self.m;
        let f = self.unram.f;
        let n = m * f;
        let mut mat = vec![vec![0i128; n]; n];
        for i in 0..m {
            for t in 0..f {
                let mut e = self.zero();
                e[i][t] = 1;
                let p = self.mul(x, &e);
                for ii in 0..m {
                    for tt in 0..f {
                        mat[ii * f + tt][i * f + t] = p[ii][tt];
                    }
                }
            }
        }
        bareiss(mat)
    }
}

fn bareiss(mut m: Vec<Vec<i128>>) -> i128 {
    let n = m.len();
    let mut prev = 1i128;
    let mut sign = 1i128;
    for k in 0..n.saturating_sub(1) {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j]
                    .checked_mul(m[k][k])
                    .and_then(|a| m[i][k].checked_mul(m[k][j]).and_then(|b| a.checked_sub(b)))
                    .expect("norm determinant overflow");
                m[i][j] = v / prev;
            }
        }
        prev = m[k][k];
    }
    sign * m[n - 1][n - 1]
}

/// Square class of `N(δ)` and conductor exponent of `L(√δ)/L` for every
/// `δ ∈ L*/L*²`, with multiplicities; the flag marks `δ = 1`.
fn quadratic_profile(ring: &Ring) -> Vec<(SquareClass, u32, bool, u64)> {
    let m = ring.m;
    let f = ring.unram.f;
    let one = ring.one();
    let pi = ring.pi();
    // (element, level); level 0 marks π, 2m marks the unramified unit.
    let mut basis: Vec<(Elt, u32)> = vec![(pi.clone(), 0)];
    let mut pj = one.clone();
    for j in 1..2 * m {
        pj = ring.mul(&pj, &pi);
        if j % 2 == 0 {
            continue;
        }
        for t in 0..f {
            let mut theta = ring.zero();
            theta[0][t] = 1;
            let mut el = ring.mul(&theta, &pj);
            el[0][0] += 1;
            basis.push((el, j as u32));
        }
    }
    let theta = ring.unram.trace_one();
    let mut u = ring.zero();
    u[0] = theta.map(|c| 4 * c);
    u[0][0] += 1;
    basis.push((u, 2 * m as u32));

    let classes: Vec<SquareClass> = basis
        .iter()
        .map(|(el, _)| SquareClass::of_integer(ring.norm(el)))
        .collect();
    let e = m as u32;
    let mut out: HashMap<(SquareClass, u32, bool), u64> = HashMap::new();
    for mask in 0u32..(1 << basis.len()) {
        let mut cls = SquareClass::TRIVIAL;
        let mut min_odd = u32::MAX;
        for (i, (_, level)) in basis.iter().enumerate() {
            if mask >> i & 1 == 1 {
                cls = cls.mul(classes[i]);
                if i > 0 && *level != 2 * e {
                    min_odd = min_odd.min(*level);
                }
            }
        }
        let d = if mask & 1 == 1 {
            2 * e + 1
        } else if min_odd == u32::MAX {
            0
        } else {
            2 * e + 1 - min_odd
        };
        *out.entry((cls, d, mask == 0)).or_default() += 1;
    }
    let mut v: Vec<_> = out.into_iter().map(|((c, d, s), n)| (c, d, s, n)).collect();
    v.sort();
    v
}

/// Discriminant exponent `d_F` of `P` if it is determined by the
/// coefficients modulo `2^k`.
fn discriminant_exponent(m: usize, a: &[Fe], k: u32) -> Option<u32> {
    let m32 = m as u32;
    let mut exact = m32 * v2(m as i128) + m32 - 1;
    let mut lower = u32::MAX;
    for (i, ai) in a.iter().enumerate().skip(1) {
        let i32_ = i as u32;
        let v = v_f(ai);
        if v < k {
            exact = exact.min(m32 * (v + v2(i as i128)) + i32_ - 1);
        } else {
            lower = lower.min(m32 * (k + v2(i as i128)) + i32_ - 1);
        }
    }
    (lower >= exact).then_some(exact)
}

/// Leaf counts keyed by `(k, d_F, class, d(δ), split)`.
type Leaves = HashMap<(u32, u32, SquareClass, u32, bool), u64>;

fn merge(mut a: Leaves, b: Leaves) -> Leaves {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

fn refine(m: usize, unram: Unram, k: u32, betas: &mut Vec<Fe>, acc: &mut Leaves) {
    let f = unram.f;
    let a: Vec<Fe> = betas.iter().map(|b| b.map(|c| 2 * c)).collect();
    if let Some(d) = discriminant_exponent(m, &a, k) {
        if k >= 2 * d / m as u32 + 1 {
            let ring = Ring { m, unram, a };
            for (cls, dd, split, cnt) in quadratic_profile(&ring) {
                *acc.entry((k, d, cls, dd, split)).or_default() += cnt;
            }
            return;
        }
    }
    let step = 1i128 << (k - 1);
    let saved = betas.clone();
    for choice in 0u64..(1u64 << (m * f)) {
        for i in 0..m {
            for t in 0..f {
                let bit = choice >> (i * f + t) & 1;
                betas[i][t] = saved[i][t] + step * bit as i128;
            }
        }
        refine(m, unram, k + 1, betas, acc);
    }
    betas.clone_from(&saved);
}

/// Quadratic towers `M/L/Q_2` with `[L:Q_2] = n`. Each tower contributes
/// `t^(c(M) - c(L)) / #Aut(M/L/Q_2)`, where `c` is the discriminant exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct TowerCensus {
    pub n: usize,
    /// Field towers (`M` a field) by the discriminant root field of `M`.
    pub fields: BTreeMap<SquareClass, LaurentPoly>,
    /// Split towers `M = L ⊕ L`.
    pub split: LaurentPoly,
}

impl TowerCensus {
    pub fn fields_for(&self, class: SquareClass) -> LaurentPoly {
        self.fields
            .get(&class)
            .cloned()
            .unwrap_or_else(LaurentPoly::zero)
    }

    /// The `x^n` coefficient of the log series for `class`; split towers
    /// count towards the trivial class.
    pub fn log_coefficient(&self, class: SquareClass) -> LaurentPoly {
        let mut p = self.fields_for(class);
        if class == SquareClass::TRIVIAL {
            p += &self.split;
        }
        p
    }
}

/// Enumerate quadratic towers over all degree-`n` extensions of `Q_2`.
pub fn tower_census(n: usize, exec: Exec) -> Result<TowerCensus> {
    if n == 0 || n > MAX_DEGREE {
        return Err(MassError::domain(format!(
            "tower census supports base degrees 1..={MAX_DEGREE}, got {n}"
        )));
    }
    let mut fields: BTreeMap<SquareClass, LaurentPoly> = BTreeMap::new();
    let mut split = LaurentPoly::zero();
    for m in (1..=n).filter(|m| n % m == 0) {
        let f = n / m;
        let unram = Unram::new(f);
        let leaves = if m == 1 {
            let mut acc = Leaves::new();
            let mut beta0 = [0; MAX_DEGREE];
            beta0[0] = 1;
            let ring = Ring {
                m,
                unram,
                a: vec![beta0.map(|c| 2 * c)],
            };
            for (cls, dd, split, cnt) in quadratic_profile(&ring) {
                *acc.entry((1, 0, cls, dd, split)).or_default() += cnt;
            }
            acc
        } else {
            // Residue classes of (β_0, ..., β_{m-1}) mod 2 with β_0 a unit.
            let q = 1usize << f;
            let starts = (q - 1) * q.pow(m as u32 - 1);
            exec.map_reduce(
                starts,
                Leaves::new(),
                |idx| {
                    let mut betas = vec![[0i128; MAX_DEGREE]; m];
                    let b0 = idx % (q - 1) + 1;
                    let mut rest = idx / (q - 1);
                    for t in 0..f {
                        betas[0][t] = (b0 >> t & 1) as i128;
                    }
                    for beta in betas.iter_mut().skip(1) {
                        let digit = rest % q;
                        rest /= q;
                        for t in 0..f {
                            beta[t] = (digit >> t & 1) as i128;
                        }
                    }
                    let mut acc = Leaves::new();
                    refine(m, unram, 2, &mut betas, &mut acc);
                    acc
                },
                merge,
            )
        };
        accumulate(m, f, leaves, &mut fields, &mut split);
    }
    Ok(TowerCensus { n, fields, split })
}

fn accumulate(
    m: usize,
    f: usize,
    leaves: Leaves,
    fields: &mut BTreeMap<SquareClass, LaurentPoly>,
    split: &mut LaurentPoly,
) {
    let q = BigInt::from(1u64 << f);
    let m32 = m as u32;
    for ((k, d, cls, dd, is_split), cnt) in leaves {
        // Measure of the residue class, times q^(d - m + 1) / (2f).
        let measure = if m == 1 {
            Rational::one()
        } else {
            let den = q.pow((m32 - 1) * (k - 1)) * (&q - 1) * q.pow(k - 2);
            Rational::new(BigInt::one(), den)
        };
        let jac = Rational::from_integer(q.pow(d)) / Rational::from_integer(q.pow(m32 - 1));
        let w = measure * jac * Rational::new(BigInt::from(cnt), BigInt::from(2 * f as u64));
        let exp = (f as u32 * (d + dd)) as i64;
        if w.is_zero() {
            continue;
        }
        if is_split {
            split.add_term(exp, w);
        } else {
            fields
                .entry(cls)
                .or_insert_with(LaurentPoly::zero)
                .add_term(exp, w);
        }
    }
}
