//! Wild masses from homomorphism censuses.
//!
//! A census lists how many homomorphisms `G_K -> Γ` have each Artin
//! conductor, either as finite `(multiplicity, conductor)` terms or as
//! geometric families `base·ratio^i` at conductor `start + i·step` (for the
//! infinite sums that occur in equal characteristic).

use std::path::Path;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{MassError, Result};
use crate::exact::{rat, LaurentPoly, Rational};
use crate::grpcore::MatGroup;
use crate::tame::tame_quasi_poly;
use crate::weyl::{weyl_group, CartanDatum, CartanType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub group_order: u64,
    /// `(multiplicity, conductor)`.
    #[serde(default)]
    pub terms: Vec<(u64, u32)>,
    /// `(base, ratio, start, step)`: multiplicity `base·ratio^i` at conductor
    /// `start + i·step`, `i ≥ 0`.
    #[serde(default)]
    pub families: Vec<(u64, u64, u32, u32)>,
}

fn q_pow_neg(q: u64, e: u32) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(q), e as usize))
}

impl Census {
    pub fn finite(group_order: u64, terms: &[(u64, u32)]) -> Self {
        Self {
            group_order,
            terms: terms.to_vec(),
            families: Vec::new(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let c: Census = serde_json::from_str(text).map_err(|e| MassError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        c.validate()?;
        Ok(c)
    }

    pub fn from_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| MassError::Io {
            path: path.display().to_string(),
            msg: e.to_string(),
        })?;
        Self::from_json(&text)
    }

    fn validate(&self) -> Result<()> {
        if self.group_order == 0 {
            return Err(MassError::domain("census group order must be positive"));
        }
        if self
            .families
            .iter()
            .any(|&(b, r, _, s)| b == 0 || r == 0 || s == 0)
        {
            return Err(MassError::domain(
                "census families need positive base, ratio and step",
            ));
        }
        Ok(())
    }

    /// Sum of multiplicities over the finite terms.
    pub fn finite_count(&self) -> u64 {
        self.terms.iter().map(|&(m, _)| m).sum()
    }

    /// The finite terms as `(1/|Γ|) Σ m t^c`. Families have no polynomial
    /// form and are rejected.
    pub fn finite_poly(&self) -> Result<LaurentPoly> {
        if !self.families.is_empty() {
            return Err(MassError::domain("census has infinite families"));
        }
        Ok(LaurentPoly::from_terms(self.terms.iter().map(|&(m, c)| {
            (i64::from(c), rat(m as i64, self.group_order as i64))
        })))
    }

    /// Concatenate the terms of censuses for the same group.
    pub fn merge<'a>(parts: impl IntoIterator<Item = &'a Census>) -> Result<Census> {
        let mut it = parts.into_iter();
        let first = it
            .next()
            .ok_or_else(|| MassError::domain("nothing to merge"))?
            .clone();
        it.try_fold(first, |mut acc, c| {
            if c.group_order != acc.group_order {
                return Err(MassError::domain("censuses for different group orders"));
            }
            acc.terms.extend_from_slice(&c.terms);
            acc.families.extend_from_slice(&c.families);
            Ok(acc)
        })
    }

    /// Conductor histogram with equal conductors merged, ascending.
    pub fn normalized_terms(&self) -> Vec<(u64, u32)> {
        let mut by_c = std::collections::BTreeMap::new();
        for &(m, c) in &self.terms {
            *by_c.entry(c).or_insert(0u64) += m;
        }
        by_c.into_iter().map(|(c, m)| (m, c)).collect()
    }
}

/// `(1/|Γ|)[Σ m q^{-c} + Σ base q^{-start} / (1 - ratio q^{-step})]`.
pub fn census_mass(census: &Census, q: u64) -> Result<Rational> {
    census.validate()?;
    if q < 2 {
        return Err(MassError::domain("residue field size must be at least 2"));
    }
    let mut total = Rational::zero();
    for &(m, c) in &census.terms {
        total += q_pow_neg(q, c) * BigInt::from(m);
    }
    for &(base, ratio, start, step) in &census.families {
        let r = q_pow_neg(q, step) * BigInt::from(ratio);
        if r >= Rational::one() {
            return Err(MassError::domain(format!(
                "family with ratio {ratio} and step {step} diverges at q = {q}"
            )));
        }
        total += q_pow_neg(q, start) * BigInt::from(base) / (Rational::one() - r);
    }
    Ok(total / BigInt::from(census.group_order))
}

/// `Z/2` via its regular representation over `Q_2`: conductors 0, 2, 3 for
/// the eight quadratic characters.
pub fn z2_q2() -> Census {
    Census::finite(2, &[(2, 0), (2, 2), (4, 3)])
}

/// `Z/2` via two copies of its regular representation over `Q_2`.
pub fn z2d_q2() -> Census {
    Census::finite(2, &[(2, 0), (2, 4), (4, 6)])
}

/// `Z/2` via two copies of its regular representation over `F_2((t))`:
/// `2^i` characters of conductor `4i` for each `i ≥ 1`.
pub fn z2d_f2t() -> Census {
    Census {
        group_order: 2,
        terms: vec![(2, 0)],
        families: vec![(2, 2, 4, 4)],
    }
}

/// Look up a shipped census by name.
pub fn builtin_census(name: &str) -> Option<Census> {
    match name {
        "z2_q2" => Some(z2_q2()),
        "z2d_q2" => Some(z2d_q2()),
        "z2d_f2t" => Some(z2d_f2t()),
        "g2_q2" => Some(g2_q2_census()),
        _ => None,
    }
}

/// `W(G_2)` over `Q_2`, itemized by the image of the homomorphism.
pub fn g2_q2_itemization() -> Vec<(&'static str, Census)> {
    let c = |terms: &[(u64, u32)]| Census::finite(12, terms);
    vec![
        ("trivial", c(&[(1, 0)])),
        ("quadratic", c(&[(7, 0), (12, 2), (24, 3), (2, 4), (4, 6)])),
        ("Z/3", c(&[(2, 0)])),
        ("Z/6", c(&[(2, 0), (4, 4), (8, 6)])),
        ("(Z/2)^2", c(&[(12, 2), (24, 3), (6, 4), (48, 5), (36, 6)])),
        ("S3", c(&[(6, 2)])),
        ("Di6", c(&[(6, 2), (12, 4), (24, 6)])),
    ]
}

/// The total `W(G_2)` census over `Q_2`.
pub fn g2_q2_census() -> Census {
    Census::finite(12, &[(12, 0), (36, 2), (48, 3), (24, 4), (48, 5), (72, 6)])
}

/// `M(Q_2, W(G_2))`, checking that the itemization adds up to the total.
pub fn g2_q2_census_mass() -> Result<Rational> {
    let items = g2_q2_itemization();
    let merged = Census::merge(items.iter().map(|(_, c)| c))?;
    let total = g2_q2_census();
    if merged.normalized_terms() != total.normalized_terms() {
        return Err(MassError::domain(
            "G2 itemization does not sum to the total census",
        ));
    }
    census_mass(&total, 2)
}

/// `μ(K, C_2)` for the centre `C_2 = {±1}` of `W(G_2)`: the homomorphisms
/// into `C_2` counted by a doubled-regular census, minus the trivial one,
/// weighted by `1/|W(G_2)|`.
pub fn mu_c2_from_census(doubled: &Census, q: u64) -> Result<Rational> {
    let all = census_mass(doubled, q)? * BigInt::from(doubled.group_order);
    Ok((all - Rational::one()) / BigInt::from(12))
}

/// `1/2 + 2t + 2t² + 6μ(K, C_2)`: the `W(G_2)` mass in residue
/// characteristic 2.
pub fn g2_wild_char2_mass(mu_c2: &LaurentPoly) -> LaurentPoly {
    LaurentPoly::from_terms([(0, rat(1, 2)), (1, rat(2, 1)), (2, rat(2, 1))])
        + mu_c2.scale(&rat(6, 1))
}

/// The steps of the residue-characteristic-3 computation for `W(G_2)`.
///
/// `μ(H)` is the mass from homomorphisms with image exactly `H`; `ν(H)` is
/// the mass from homomorphisms whose projection to `D_{3,0} ≅ S_3` has image
/// `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct G2Char3 {
    pub mu_c1: LaurentPoly,
    pub mu_d10: LaurentPoly,
    pub mu_c2_d20: LaurentPoly,
    pub mu_c3_d30: LaurentPoly,
    pub nu_c1: LaurentPoly,
    pub nu_d1: LaurentPoly,
    pub nu_c3_d30: LaurentPoly,
    pub total: LaurentPoly,
}

fn g2_group() -> Result<MatGroup> {
    weyl_group(CartanDatum::new(CartanType::G2, 2)?, 12)
}

/// Mass of homomorphisms into the subgroup generated by `gens`, as a share
/// of `|W(G_2)| = 12`. The subgroups used have tame order in residue
/// characteristic 3 or come with their own uniform formula.
fn subgroup_share(g: &MatGroup, gens: &[usize]) -> Result<LaurentPoly> {
    let h = g.subgroup(gens)?;
    let p = tame_quasi_poly(&h)
        .uniform()
        .cloned()
        .ok_or_else(|| MassError::domain("subgroup mass is not uniform"))?;
    Ok(p.scale(&rat(h.order() as i64, 12)))
}

/// Find the rotation `s` of order 6 and a reflection `r` in `W(G_2)`.
fn g2_generators(g: &MatGroup) -> (usize, usize) {
    let s = (0..g.order())
        .find(|&i| g.classes()[g.class_of(i)].element_order == 6)
        .expect("W(G2) has elements of order 6");
    let r = (0..g.order())
        .find(|&i| g.codim(i) == 1)
        .expect("W(G2) has reflections");
    (s, r)
}

/// `M(K, W(G_2))` in residue characteristic 3, assembled from masses of
/// subgroups (all of which are symmetric-group-like and hence uniform) and
/// the corrections for the wild `C_3` and `D_{3,0}` parts.
pub fn g2_wild_char3() -> Result<G2Char3> {
    let g = g2_group()?;
    let (s, r) = g2_generators(&g);
    let s2 = g.pow_index(s, 2);
    let s3 = g.pow_index(s, 3);
    let twelfth = rat(1, 12);

    // masses into C1, <r>, <r, s^3>, <r, s^2>
    let m0 = LaurentPoly::constant(twelfth);
    let m1 = subgroup_share(&g, &[r])?;
    let m2 = subgroup_share(&g, &[r, s3])?;
    let m3 = subgroup_share(&g, &[r, s2])?;

    let mu_d10 = &m1 - &m0;
    let mu_c2_d20 = &(&m2 - &m0) - &mu_d10.scale(&rat(2, 1));
    let mu_c3_d30 = &(&m3 - &m0) - &mu_d10.scale(&rat(3, 1));

    // sigma trivial: image inside the centre {±1}
    let nu_c1 = subgroup_share(&g, &[s3])?;
    // sigma onto a reflection subgroup of D_{3,0}: image inside <r, -1>
    let nu_d1 = &m2 - &nu_c1;
    // sigma onto C_3 is tame only when unramified; onto D_{3,0} never tame
    let nu_c3_d30 =
        LaurentPoly::from_terms([(0, rat(-4, 12)), (2, rat(4, 12))]) + mu_c3_d30.scale(&rat(4, 1));
    let total = &(&nu_c1 + &nu_d1.scale(&rat(3, 1))) + &nu_c3_d30;
    Ok(G2Char3 {
        mu_c1: m0,
        mu_d10,
        mu_c2_d20,
        mu_c3_d30,
        nu_c1,
        nu_d1,
        nu_c3_d30,
        total,
    })
}

/// `M(K, W(G_2))` for residue characteristic 3.
pub fn g2_wild_char3_mass() -> Result<LaurentPoly> {
    Ok(g2_wild_char3()?.total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(e, n, d)| (e, rat(n, d))))
    }

    #[test]
    fn shipped_censuses() {
        assert_eq!(census_mass(&z2_q2(), 2).unwrap(), rat(3, 2));
        assert_eq!(census_mass(&z2d_q2(), 2).unwrap(), rat(35, 32));
        assert_eq!(census_mass(&z2d_f2t(), 2).unwrap(), rat(15, 14));
        assert_eq!(g2_q2_census_mass().unwrap(), rat(83, 32));
    }

    #[test]
    fn degenerate_and_divergent() {
        let c = Census::finite(6, &[(6, 0)]);
        assert_eq!(census_mass(&c, 5).unwrap(), rat(1, 1));
        let bad = Census {
            group_order: 2,
            terms: vec![],
            families: vec![(1, 16, 0, 4)],
        };
        assert!(census_mass(&bad, 2).is_err());
        assert!(census_mass(&bad, 3).is_ok());
    }

    #[test]
    fn quadratic_item() {
        let items = g2_q2_itemization();
        let quad = &items[1].1;
        let expect =
            (rat(7, 1) + rat(12, 4) + rat(24, 8) + rat(2, 16) + rat(4, 64)) / BigInt::from(12);
        assert_eq!(census_mass(quad, 2).unwrap(), expect);
    }

    #[test]
    fn json_round_trip() {
        let text = serde_json::to_string(&z2d_f2t()).unwrap();
        assert_eq!(
            text,
            r#"{"group_order":2,"terms":[[2,0]],"families":[[2,2,4,4]]}"#
        );
        assert_eq!(Census::from_json(&text).unwrap(), z2d_f2t());
        assert!(Census::from_json(r#"{"group_order":0}"#).is_err());
        assert!(Census::from_json("{").is_err());
    }

    #[test]
    fn char3_steps() {
        let d = g2_wild_char3().unwrap();
        assert_eq!(d.mu_d10, lp(&[(0, 1, 12), (1, 1, 6)]));
        assert_eq!(d.mu_c2_d20, lp(&[(0, 1, 12), (1, 1, 3), (2, 1, 3)]));
        assert_eq!(d.mu_c3_d30, lp(&[(0, 1, 6), (2, 1, 2)]));
        assert_eq!(d.nu_c1, lp(&[(0, 2, 12), (2, 2, 12)]));
        assert_eq!(d.nu_d1, lp(&[(0, 2, 12), (1, 8, 12), (2, 2, 12)]));
        assert_eq!(d.total, lp(&[(0, 1, 1), (1, 2, 1), (2, 3, 1)]));
    }

    #[test]
    fn char2_affine() {
        assert_eq!(
            g2_wild_char2_mass(&LaurentPoly::zero()),
            lp(&[(0, 1, 2), (1, 2, 1), (2, 2, 1)])
        );
        let mu = mu_c2_from_census(&z2d_q2(), 2).unwrap();
        assert_eq!(&mu * BigInt::from(6), rat(19, 32));
        let m = g2_wild_char2_mass(&LaurentPoly::constant(mu))
            .eval_at_q(2)
            .unwrap();
        assert_eq!(m, rat(83, 32));
    }
}
