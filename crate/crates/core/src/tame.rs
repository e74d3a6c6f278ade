//! Tame total masses.
//!
//! For residue characteristic prime to `|Γ|`, tame homomorphisms correspond to
//! pairs `(g, h)` with `h g h⁻¹ = g^q`, and the mass depends only on `q` modulo
//! the exponent of `Γ`: on each unit residue it is the polynomial
//! `Σ t^{e(g)}` over classes stable under the `q`-th power map.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{MassError, Result};
use crate::exact::{LaurentPoly, Rational};
use crate::exec::Exec;
use crate::grpcore::MatGroup;

/// One Laurent polynomial in `t = q⁻¹` per unit residue modulo `modulus`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPoly {
    modulus: u64,
    table: BTreeMap<u64, LaurentPoly>,
}

impl QuasiPoly {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn table(&self) -> &BTreeMap<u64, LaurentPoly> {
        &self.table
    }

    /// Entry for the residue of `q`; `q` must be a unit modulo the modulus.
    pub fn at(&self, q: i64) -> Result<&LaurentPoly> {
        let r = q.rem_euclid(self.modulus as i64) as u64;
        self.table
            .get(&r)
            .ok_or_else(|| MassError::domain(format!("{q} is not a unit modulo {}", self.modulus)))
    }

    /// Tame mass for residue field size `q`.
    pub fn eval(&self, q: u64) -> Result<Rational> {
        self.at(q as i64)?.eval_at_q(q)
    }

    /// The common polynomial when all entries agree.
    pub fn uniform(&self) -> Option<&LaurentPoly> {
        let mut it = self.table.values();
        let first = it.next()?;
        it.all(|p| p == first).then_some(first)
    }
}

impl fmt::Display for QuasiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.uniform() {
            return write!(f, "uniform: {p}");
        }
        write!(f, "modulus {}:", self.modulus)?;
        for (r, p) in &self.table {
            write!(f, "\n  q ≡ {r}: {p}")?;
        }
        Ok(())
    }
}

/// Class-sum form of the tame quasi-polynomial.
pub fn tame_quasi_poly(group: &MatGroup) -> QuasiPoly {
    let modulus = group.exponent().max(1);
    let table = group
        .unit_residues()
        .into_iter()
        .map(|r| {
            let map = group.class_power_map(r as i64);
            let mut p = LaurentPoly::zero();
            for (c, class) in group.classes().iter().enumerate() {
                if map[c] == c {
                    p.add_term(i64::from(class.codim), Rational::one());
                }
            }
            (r, p)
        })
        .collect();
    QuasiPoly { modulus, table }
}

fn check_coprime(group: &MatGroup, q: u64) -> Result<()> {
    if q == 0 || q.gcd(&(group.order() as u64)) != 1 {
        return Err(MassError::domain(format!(
            "q = {q} is not coprime to the group order {}",
            group.order()
        )));
    }
    Ok(())
}

/// Counts indexed by `e(g)`, turned into `(1/|G|) Σ count_e q^{-e}`.
fn weighted_mass(counts: &[u64], order: usize, q: u64) -> Rational {
    let q = BigInt::from(q);
    let mut total = Rational::zero();
    for (e, &c) in counts.iter().enumerate() {
        if c != 0 {
            total += Rational::new(BigInt::from(c), num_traits::pow(q.clone(), e));
        }
    }
    total / Rational::from_integer(BigInt::from(order))
}

fn add_counts(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

fn pair_counts(
    group: &MatGroup,
    q: u64,
    exec: Exec,
    accept: impl Fn(usize, usize) -> bool + Sync + Send,
) -> Vec<u64> {
    let n = group.order();
    let max_codim = group.codims().iter().copied().max().unwrap_or(0) as usize;
    let inverses: Vec<usize> = (0..n).map(|h| group.inverse_index(h)).collect();
    exec.map_reduce(
        n,
        vec![0u64; max_codim + 1],
        |g| {
            let target = group.pow_index(g, q);
            let mut counts = vec![0u64; max_codim + 1];
            let e = group.codim(g) as usize;
            for (h, &h_inv) in inverses.iter().enumerate() {
                let conj = group.mul_index(group.mul_index(h, g), h_inv);
                if conj == target && accept(g, h) {
                    counts[e] += 1;
                }
            }
            counts
        },
        add_counts,
    )
}

/// Literal pair sum `(1/|Γ|) Σ_{h g h⁻¹ = g^q} q^{-e(g)}`.
pub fn tame_mass_pairs(group: &MatGroup, q: u64) -> Result<Rational> {
    tame_mass_pairs_with(group, q, Exec::default())
}

pub fn tame_mass_pairs_with(group: &MatGroup, q: u64, exec: Exec) -> Result<Rational> {
    check_coprime(group, q)?;
    let counts = pair_counts(group, q, exec, |_, _| true);
    Ok(weighted_mass(&counts, group.order(), q))
}

/// Whether the quasi-polynomial is a single polynomial, and that polynomial.
pub fn is_uniform_tame(group: &MatGroup) -> (bool, Option<LaurentPoly>) {
    let qp = tame_quasi_poly(group);
    match qp.uniform() {
        Some(p) => (true, Some(p.clone())),
        None => (false, None),
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Whether the permutations jointly act transitively on their letters.
pub fn generate_transitive(perms: &[&[usize]], degree: usize) -> bool {
    let mut parent: Vec<usize> = (0..degree).collect();
    let mut components = degree;
    for p in perms {
        for (j, &pj) in p.iter().enumerate() {
            let (a, b) = (find(&mut parent, j), find(&mut parent, pj));
            if a != b {
                parent[a] = b;
                components -= 1;
            }
        }
    }
    components <= 1
}

/// Pair sum restricted to pairs whose projected permutations generate a
/// transitive group: the mass of field (rather than étale algebra)
/// extensions.
pub fn tame_transitive_mass(group: &MatGroup, q: u64) -> Result<Rational> {
    tame_transitive_mass_with(group, q, Exec::default())
}

pub fn tame_transitive_mass_with(group: &MatGroup, q: u64, exec: Exec) -> Result<Rational> {
    let tag = group
        .perm_tag()
        .ok_or_else(|| MassError::domain("group carries no permutation projection"))?;
    check_coprime(group, q)?;
    let perms: Vec<Vec<usize>> = (0..group.order())
        .map(|i| group.projected_perm(i).expect("tagged"))
        .collect();
    let counts = pair_counts(group, q, exec, |g, h| {
        generate_transitive(&[&perms[g], &perms[h]], tag.degree)
    });
    Ok(weighted_mass(&counts, group.order(), q))
}
