//! Small permutation groups, used to decide when a tower of fields is
//! determined by its top and bottom and when its automorphisms are all of
//! `Aut(M)`.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::error::{MassError, Result};

/// A permutation of `0..n` in image notation.
pub type Perm = Vec<usize>;

fn compose(a: &Perm, b: &Perm) -> Perm {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &Perm) -> Perm {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

/// Parse one permutation in cycle notation on letters `1..=degree`,
/// e.g. `(1,2,3)(4,5)`; `()` is the identity.
pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
    let bad = |m: &str| MassError::domain(format!("bad permutation {s:?}: {m}"));
    let mut p: Perm = (0..degree).collect();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let letters: Vec<usize> = body[..close]
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| {
                x.parse::<usize>()
                    .map_err(|_| bad("letter is not an integer"))
            })
            .collect::<Result<_>>()?;
        if letters.iter().any(|&l| l == 0 || l > degree) {
            return Err(bad("letter out of range"));
        }
        let uniq: HashSet<_> = letters.iter().collect();
        if uniq.len() != letters.len() {
            return Err(bad("repeated letter in a cycle"));
        }
        // Apply this cycle after the ones already read.
        let mut c: Perm = (0..degree).collect();
        for w in 0..letters.len() {
            c[letters[w] - 1] = letters[(w + 1) % letters.len()] - 1;
        }
        p = compose(&c, &p);
        rest = body[close + 1..].trim_start();
    }
    Ok(p)
}

/// Closure of the generators, capped at `max_order` elements.
pub fn closure(gens: &[Perm], degree: usize, max_order: usize) -> Result<Vec<Perm>> {
    let id: Perm = (0..degree).collect();
    let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            if g.len() != degree {
                return Err(MassError::domain("generator of the wrong degree"));
            }
            let y = compose(g, &x);
            if seen.insert(y.clone()) {
                if seen.len() > max_order {
                    return Err(MassError::SizeLimit { cap: max_order });
                }
                queue.push_back(y);
            }
        }
    }
    let mut out: Vec<Perm> = seen.into_iter().collect();
    out.sort();
    Ok(out)
}

fn orbits(group: &[Perm], degree: usize) -> Vec<Vec<usize>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        let orbit: BTreeSet<usize> = group.iter().map(|g| g[start]).collect();
        for &x in &orbit {
            seen[x] = true;
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

type Subgroup = BTreeSet<Perm>;

fn conjugate(h: &Subgroup, g: &Perm) -> Subgroup {
    let gi = inverse(g);
    h.iter().map(|x| compose(&gi, &compose(x, g))).collect()
}

fn normalizer(group: &[Perm], h: &Subgroup) -> Vec<Perm> {
    group
        .iter()
        .filter(|g| conjugate(h, g) == *h)
        .cloned()
        .collect()
}

/// Outcome of the conjugate count for one length-2 orbit of `H`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct C123Row {
    /// The orbit, on letters `1..=degree`.
    pub orbit: Vec<usize>,
    /// Conjugates `g⁻¹Hg ⊇ Stab_G(t)` with `g` over `G`.
    pub c1: usize,
    /// The same with `g` over `N_G(H)`.
    pub c2: usize,
    /// The same with `g` over `N_G(Stab_G(t))`.
    pub c3: usize,
    /// `N_G(H)`, the automorphisms of the tower when the top is Galois.
    pub normalizer_order: usize,
}

impl C123Row {
    /// The tower is determined by its top and bottom field.
    pub fn unique_tower(&self) -> bool {
        self.c1 == self.c3
    }

    /// Every automorphism of the top field preserves the bottom field.
    pub fn aut_equal(&self) -> bool {
        self.c1 == self.c2
    }
}

/// For `G` transitive on `degree` letters and `H ≤ G`, examine each orbit of
/// `H` of length 2 whose point stabiliser `Stab_G(t)` lies in `H`, i.e. each
/// quadratic tower `M ⊃ L` with `M ↔ Stab_G(t)` and `L ↔ H`. Orbits where
/// `Stab_G(t) ⊄ H` do not describe a tower and are skipped.
pub fn c123_check(
    g_gens: &[Perm],
    h_gens: &[Perm],
    degree: usize,
    max_order: usize,
) -> Result<Vec<C123Row>> {
    let group = closure(g_gens, degree, max_order)?;
    let gset: HashSet<&Perm> = group.iter().collect();
    let h: Subgroup = closure(h_gens, degree, max_order)?.into_iter().collect();
    if !h.iter().all(|x| gset.contains(x)) {
        return Err(MassError::domain("H is not a subgroup of G"));
    }
    if orbits(&group, degree).len() != 1 {
        return Err(MassError::domain("G is not transitive"));
    }
    let hv: Vec<Perm> = h.iter().cloned().collect();
    let norm_h = normalizer(&group, &h);
    let mut rows = Vec::new();
    for orbit in orbits(&hv, degree).into_iter().filter(|o| o.len() == 2) {
        let t = orbit[0];
        let stab: Subgroup = group.iter().filter(|g| g[t] == t).cloned().collect();
        if !stab.is_subset(&h) {
            continue;
        }
        let norm_stab = normalizer(&group, &stab);
        let count = |over: &[Perm]| {
            over.iter()
                .map(|g| conjugate(&h, g))
                .filter(|c| stab.is_subset(c))
                .collect::<HashSet<_>>()
                .len()
        };
        rows.push(C123Row {
            orbit: orbit.iter().map(|x| x + 1).collect(),
            c1: count(&group),
            c2: count(&norm_h),
            c3: count(&norm_stab),
            normalizer_order: norm_h.len(),
        });
    }
    Ok(rows)
}

/// `D_4` acting regularly on its 8 elements, with a non-normal subgroup of
/// order 2: the one configuration where a tower has fewer automorphisms than
/// its top field.
pub fn dihedral_octic_model() -> (Vec<Perm>, Vec<Perm>) {
    // Elements r^i s^j indexed 2i + j; left multiplication.
    let idx = |i: usize, j: usize| 2 * (i % 4) + j;
    let rot: Perm = (0..8).map(|x| idx(x / 2 + 1, x % 2)).collect();
    // s r^i s^j = r^{-i} s^{j+1}
    let refl: Perm = (0..8).map(|x| idx(4 - x / 2, (x % 2 + 1) % 2)).collect();
    (vec![rot, refl.clone()], vec![refl])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dihedral_regular() {
        let (g, h) = dihedral_octic_model();
        assert_eq!(closure(&g, 8, 100).unwrap().len(), 8);
        let rows = c123_check(&g, &h, 8, 100).unwrap();
        assert_eq!(rows.len(), 4);
        for r in rows {
            assert_eq!((r.c1, r.c2, r.c3), (2, 1, 2));
            assert!(r.unique_tower() && !r.aut_equal());
            assert_eq!(r.normalizer_order, 4);
        }
    }

    #[test]
    fn c2_on_two_letters() {
        let g = vec![parse_cycles("(1,2)", 2).unwrap()];
        let rows = c123_check(&g, &g, 2, 10).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!((rows[0].c1, rows[0].c2, rows[0].c3), (1, 1, 1));
    }

    #[test]
    fn s3_has_no_failing_towers() {
        let g = vec![
            parse_cycles("(1,2)", 3).unwrap(),
            parse_cycles("(1,2,3)", 3).unwrap(),
        ];
        for h in ["()", "(1,2)", "(1,3)", "(2,3)", "(1,2,3)"] {
            let hg = vec![parse_cycles(h, 3).unwrap()];
            for r in c123_check(&g, &hg, 3, 10).unwrap() {
                assert!(r.unique_tower() && r.aut_equal());
            }
        }
        for r in c123_check(&g, &g, 3, 10).unwrap() {
            assert!(r.unique_tower() && r.aut_equal());
        }
    }

    #[test]
    fn cycle_parsing() {
        assert_eq!(parse_cycles("(1,2,3)", 4).unwrap(), vec![1, 2, 0, 3]);
        assert_eq!(parse_cycles("(1,2)(1,3)", 3).unwrap(), vec![1, 2, 0]);
        assert!(parse_cycles("(1,5)", 4).is_err());
        assert!(parse_cycles("(1,1)", 4).is_err());
    }
}
