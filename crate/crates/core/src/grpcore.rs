//! Finite groups of integer matrices.
//!
//! A [`MatGroup`] is built by closure from generators, then stored in
//! canonical (lexicographic) order with its conjugacy classes, centralizer
//! orders, power maps and the fixed-space codimension `e(g)` of every element
//! precomputed. Groups are immutable after construction.

use std::collections::HashMap;

use num_integer::Integer;

use crate::error::{MassError, Result};
use crate::exec::Exec;
use crate::matrix::Matrix;

/// Default closure cap; admits W(E6) but stops W(E8).
pub const DEFAULT_CAP: usize = 2_000_000;

/// One conjugacy class.
#[derive(Debug, Clone)]
pub struct ConjClass {
    /// Least element index in the class (canonical representative).
    pub rep: usize,
    /// Member element indices, ascending.
    pub members: Vec<usize>,
    pub centralizer_order: usize,
    /// Order of the representative.
    pub element_order: u64,
    /// `e(rep)`.
    pub codim: u32,
    /// `power_classes[k]` is the class of `rep^k`, for `0 <= k < element_order`.
    power_classes: Vec<usize>,
}

impl ConjClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Class index of `rep^m`.
    pub fn power_class(&self, m: u64) -> usize {
        self.power_classes[(m % self.element_order) as usize]
    }
}

/// Extra structure carried by signed-permutation realizations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PermTag {
    /// Number of letters the projection to `S_n` acts on.
    pub degree: usize,
}

#[derive(Debug, Clone)]
pub struct MatGroup {
    dim: usize,
    elements: Vec<Matrix>,
    index: HashMap<Matrix, usize>,
    generators: Vec<usize>,
    identity: usize,
    codims: Vec<u32>,
    realization: Option<String>,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
    exponent: u64,
    perm_tag: Option<PermTag>,
}

impl MatGroup {
    /// Closure of `generators` under multiplication.
    pub fn generate(generators: &[Matrix], cap: usize) -> Result<Self> {
        Self::generate_with(generators, cap, Exec::default())
    }

    pub fn generate_with(generators: &[Matrix], cap: usize, exec: Exec) -> Result<Self> {
        let dim = match generators.first() {
            Some(g) => g.dim(),
            None => return Err(MassError::domain("at least one generator is required")),
        };
        for g in generators {
            if g.dim() != dim {
                return Err(MassError::domain("generators have different dimensions"));
            }
            if g.determinant().abs() != 1 {
                return Err(MassError::domain(format!(
                    "generator {g:?} is not invertible over the integers"
                )));
            }
        }
        let elements = closure(dim, generators, cap, exec)?;
        Ok(Self::from_elements_unchecked(
            dim, elements, generators, exec,
        ))
    }

    /// Build from a complete, duplicate-free element list that is already
    /// closed under multiplication (e.g. an explicit enumeration).
    pub(crate) fn from_elements_unchecked(
        dim: usize,
        mut elements: Vec<Matrix>,
        generators: &[Matrix],
        exec: Exec,
    ) -> Self {
        elements.sort_unstable();
        let index: HashMap<Matrix, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let identity = index[&Matrix::identity(dim)];
        let mut gen_idx: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        gen_idx.sort_unstable();
        gen_idx.dedup();
        let codims = exec.map_collect(elements.len(), |i| elements[i].codim_fixed());
        let mut group = Self {
            dim,
            elements,
            index,
            generators: gen_idx,
            identity,
            codims,
            realization: None,
            classes: Vec::new(),
            class_of: Vec::new(),
            exponent: 1,
            perm_tag: None,
        };
        group.compute_classes(exec);
        group
    }

    fn compute_classes(&mut self, exec: Exec) {
        let n = self.elements.len();
        // conjugation tables s g s^{-1}, one per generator
        let tables: Vec<Vec<usize>> = self
            .generators
            .iter()
            .map(|&s| {
                let s_mat = &self.elements[s];
                let s_inv = &self.elements[self.inverse_index(s)];
                exec.map_collect(n, |i| self.index[&s_mat.mul(&self.elements[i]).mul(s_inv)])
            })
            .collect();

        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<ConjClass> = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let cid = classes.len();
            class_of[start] = cid;
            let mut members = vec![start];
            let mut cursor = 0;
            while cursor < members.len() {
                let x = members[cursor];
                cursor += 1;
                for table in &tables {
                    let y = table[x];
                    if class_of[y] == usize::MAX {
                        class_of[y] = cid;
                        members.push(y);
                    }
                }
            }
            members.sort_unstable();
            classes.push(ConjClass {
                rep: start,
                centralizer_order: n / members.len(),
                members,
                element_order: 0,
                codim: self.codims[start],
                power_classes: Vec::new(),
            });
        }

        let mut exponent = 1u64;
        for class in &mut classes {
            let g = &self.elements[class.rep];
            let mut power = Matrix::identity(self.dim);
            let mut pcs = Vec::new();
            loop {
                pcs.push(class_of[self.index[&power]]);
                power = power.mul(g);
                if power.is_identity() {
                    break;
                }
            }
            class.element_order = pcs.len() as u64;
            class.power_classes = pcs;
            exponent = exponent.lcm(&class.element_order);
        }
        self.classes = classes;
        self.class_of = class_of;
        self.exponent = exponent;
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn elements(&self) -> &[Matrix] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Matrix {
        &self.elements[i]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.generators
    }

    pub fn identity_index(&self) -> usize {
        self.identity
    }

    pub fn index_of(&self, m: &Matrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].mul(&self.elements[b])]
    }

    pub fn pow_index(&self, a: usize, e: u64) -> usize {
        let class = &self.classes[self.class_of[a]];
        let e = e % class.element_order;
        self.index[&self.elements[a].pow(e)]
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        let mut prev = self.identity;
        let mut cur = a;
        while cur != self.identity {
            prev = cur;
            cur = self.index[&self.elements[cur].mul(&self.elements[a])];
        }
        prev
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element]
    }

    /// `e(g)` for element index `i`, honoring any realization override.
    pub fn codim(&self, i: usize) -> u32 {
        self.codims[i]
    }

    pub fn codims(&self) -> &[u32] {
        &self.codims
    }

    /// Label of the eigenvalue-count override, if one is attached.
    pub fn realization(&self) -> Option<&str> {
        self.realization.as_deref()
    }

    pub fn perm_tag(&self) -> Option<PermTag> {
        self.perm_tag
    }

    pub(crate) fn set_perm_tag(&mut self, tag: PermTag) {
        self.perm_tag = Some(tag);
    }

    /// Replace `e(g)` by `f(g)` for every element, keeping the matrices.
    ///
    /// Used for abstract realizations (e.g. cube roots of unity in GL_1)
    /// whose faithful integer model lives in a larger dimension. `f` must be a
    /// class function.
    pub fn with_codim_override(mut self, label: &str, f: impl Fn(&Matrix) -> u32) -> Self {
        self.codims = self.elements.iter().map(f).collect();
        for class in &mut self.classes {
            class.codim = self.codims[class.rep];
        }
        self.realization = Some(label.to_string());
        self
    }

    /// Underlying permutation of a signed-permutation element: `j -> p[j]`
    /// where `g e_j = ±e_{p[j]}`.
    pub fn projected_perm(&self, i: usize) -> Option<Vec<usize>> {
        let tag = self.perm_tag?;
        let g = &self.elements[i];
        Some(
            (0..tag.degree)
                .map(|j| {
                    (0..tag.degree)
                        .find(|&r| g.get(r, j) != 0)
                        .expect("signed permutation")
                })
                .collect(),
        )
    }

    /// Sends the class of `g` to the class of `g^m`.
    pub fn class_power_map(&self, m: i64) -> Vec<usize> {
        let m = m.rem_euclid(self.exponent as i64) as u64;
        self.classes.iter().map(|c| c.power_class(m)).collect()
    }

    /// Units modulo the exponent, ascending.
    pub fn unit_residues(&self) -> Vec<u64> {
        (1..=self.exponent.max(1))
            .filter(|r| r.gcd(&self.exponent) == 1)
            .map(|r| r % self.exponent.max(1))
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Every element is conjugate to all of its powers coprime to the order;
    /// equivalent to a rational character table.
    pub fn is_rational_group(&self) -> bool {
        self.unit_residues().into_iter().all(|r| {
            self.class_power_map(r as i64)
                .iter()
                .enumerate()
                .all(|(c, &d)| c == d)
        })
    }

    /// Block-diagonal direct product acting on the direct sum.
    pub fn direct_sum(&self, other: &MatGroup, cap: usize) -> Result<MatGroup> {
        let size = self.order().checked_mul(other.order());
        if size.is_none_or(|s| s > cap) {
            return Err(MassError::SizeLimit { cap });
        }
        let mut elements = Vec::with_capacity(self.order() * other.order());
        let mut codims = HashMap::new();
        for (i, a) in self.elements.iter().enumerate() {
            for (j, b) in other.elements.iter().enumerate() {
                let m = a.direct_sum(b);
                codims.insert(m.clone(), self.codims[i] + other.codims[j]);
                elements.push(m);
            }
        }
        let id_a = Matrix::identity(self.dim);
        let id_b = Matrix::identity(other.dim);
        let mut gens: Vec<Matrix> = self
            .generators
            .iter()
            .map(|&g| self.elements[g].direct_sum(&id_b))
            .collect();
        gens.extend(
            other
                .generators
                .iter()
                .map(|&g| id_a.direct_sum(&other.elements[g])),
        );
        let mut group =
            Self::from_elements_unchecked(self.dim + other.dim, elements, &gens, Exec::default());
        if self.realization.is_some() || other.realization.is_some() {
            let label = format!(
                "{}+{}",
                self.realization.as_deref().unwrap_or("matrix"),
                other.realization.as_deref().unwrap_or("matrix")
            );
            group = group.with_codim_override(&label, |m| codims[m]);
        }
        Ok(group)
    }

    /// `self ⊕ trivial(k)`.
    pub fn with_trivial_summand(&self, k: usize) -> Result<MatGroup> {
        if k == 0 {
            return Ok(self.clone());
        }
        self.direct_sum(&trivial_group(k), usize::MAX)
    }

    /// Subgroup generated by the given element indices.
    pub fn subgroup(&self, gens: &[usize]) -> Result<MatGroup> {
        let mats: Vec<Matrix> = if gens.is_empty() {
            vec![Matrix::identity(self.dim)]
        } else {
            gens.iter().map(|&g| self.elements[g].clone()).collect()
        };
        let mut sub = MatGroup::generate(&mats, self.order())?;
        if self.realization.is_some() {
            let label = self.realization.clone().unwrap_or_default();
            let codims: HashMap<&Matrix, u32> = self
                .elements
                .iter()
                .zip(&self.codims)
                .map(|(m, &c)| (m, c))
                .collect();
            sub = sub.with_codim_override(&label, |m| codims[m]);
        }
        Ok(sub)
    }

    /// Checks the closure invariants; used by tests and debug builds.
    pub fn check_invariants(&self) -> std::result::Result<(), String> {
        let total: usize = self.classes.iter().map(ConjClass::size).sum();
        if total != self.order() {
            return Err(format!(
                "class sizes sum to {total}, order {}",
                self.order()
            ));
        }
        for c in &self.classes {
            if c.size() * c.centralizer_order != self.order() {
                return Err(format!(
                    "class at {} violates size * centralizer = order",
                    c.rep
                ));
            }
            if self.exponent % c.element_order != 0 {
                return Err(format!(
                    "element order {} does not divide exponent",
                    c.element_order
                ));
            }
            if c.members[0] != c.rep {
                return Err("representative is not the least member".into());
            }
        }
        if !self.elements[self.identity].is_identity() {
            return Err("identity index is wrong".into());
        }
        if self.elements.windows(2).any(|w| w[0] >= w[1]) {
            return Err("elements are not in canonical order".into());
        }
        Ok(())
    }
}

/// The trivial group in dimension `n`.
pub fn trivial_group(n: usize) -> MatGroup {
    MatGroup::from_elements_unchecked(n, vec![Matrix::identity(n)], &[], Exec::Sequential)
}

fn closure(dim: usize, generators: &[Matrix], cap: usize, exec: Exec) -> Result<Vec<Matrix>> {
    let identity = Matrix::identity(dim);
    let mut seen: HashMap<Matrix, ()> = HashMap::new();
    seen.insert(identity.clone(), ());
    let mut elements = vec![identity];
    let mut frontier: Vec<Matrix> = Vec::new();
    for g in generators {
        if seen.insert(g.clone(), ()).is_none() {
            elements.push(g.clone());
            frontier.push(g.clone());
        }
    }
    if elements.len() > cap {
        return Err(MassError::SizeLimit { cap });
    }
    while !frontier.is_empty() {
        let products = exec.map_collect(frontier.len() * generators.len(), |k| {
            let (i, j) = (k / generators.len(), k % generators.len());
            frontier[i].checked_mul(&generators[j])
        });
        let mut next = Vec::new();
        for p in products {
            let p = p.ok_or_else(|| {
                MassError::domain(
                    "matrix entries overflowed: generators do not span a finite group",
                )
            })?;
            if !seen.contains_key(&p) {
                seen.insert(p.clone(), ());
                elements.push(p.clone());
                next.push(p);
                if elements.len() > cap {
                    return Err(MassError::SizeLimit { cap });
                }
            }
        }
        frontier = next;
    }
    Ok(elements)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm_matrix(p: &[usize]) -> Matrix {
        let n = p.len();
        let mut e = vec![0; n * n];
        for (j, &i) in p.iter().enumerate() {
            e[i * n + j] = 1;
        }
        Matrix::from_flat(n, e)
    }

    fn s3() -> MatGroup {
        MatGroup::generate(
            &[perm_matrix(&[1, 0, 2]), perm_matrix(&[1, 2, 0])],
            DEFAULT_CAP,
        )
        .unwrap()
    }

    fn brute_classes(g: &MatGroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; g.order()];
        let mut out = Vec::new();
        for x in 0..g.order() {
            if seen[x] {
                continue;
            }
            let mut cls: Vec<usize> = (0..g.order())
                .map(|h| {
                    let hi = g.inverse_index(h);
                    g.mul_index(g.mul_index(h, x), hi)
                })
                .collect();
            cls.sort_unstable();
            cls.dedup();
            for &c in &cls {
                seen[c] = true;
            }
            out.push(cls);
        }
        out
    }

    #[test]
    fn trivial_generator() {
        let g = MatGroup::generate(&[Matrix::identity(2)], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.classes().len(), 1);
        g.check_invariants().unwrap();
    }

    #[test]
    fn s3_classes_match_brute_force() {
        let g = s3();
        assert_eq!(g.order(), 6);
        g.check_invariants().unwrap();
        let mut sizes: Vec<usize> = g.classes().iter().map(ConjClass::size).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 2, 3]);
        let brute = brute_classes(&g);
        let ours: Vec<Vec<usize>> = g.classes().iter().map(|c| c.members.clone()).collect();
        assert_eq!(brute, ours);
    }

    #[test]
    fn non_invertible_generator_rejected() {
        let m = Matrix::from_rows(&[vec![2, 0], vec![0, 1]]);
        assert!(matches!(
            MatGroup::generate(&[m], DEFAULT_CAP),
            Err(MassError::Domain(_))
        ));
    }

    #[test]
    fn infinite_group_hits_cap_or_overflow() {
        let m = Matrix::from_rows(&[vec![1, 1], vec![0, 1]]);
        assert!(MatGroup::generate(&[m.clone()], 50).is_err());
        assert!(matches!(
            MatGroup::generate(&[m], 50),
            Err(MassError::SizeLimit { cap: 50 })
        ));
    }

    #[test]
    fn cap_exceeded() {
        assert!(matches!(
            MatGroup::generate(&[perm_matrix(&[1, 0, 2]), perm_matrix(&[1, 2, 0])], 5),
            Err(MassError::SizeLimit { cap: 5 })
        ));
    }

    #[test]
    fn power_map_of_z3_swaps_nontrivial_classes() {
        // rotation of order 3 on the A2 root lattice
        let r = Matrix::from_rows(&[vec![0, -1], vec![1, -1]]);
        let g = MatGroup::generate(&[r], DEFAULT_CAP).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.exponent(), 3);
        let id: Vec<usize> = (0..3).collect();
        assert_eq!(g.class_power_map(1), id);
        assert_eq!(g.class_power_map(4), id);
        let pm = g.class_power_map(2);
        let e = g.class_of(g.identity_index());
        assert_eq!(pm[e], e);
        for c in 0..3 {
            if c != e {
                assert_ne!(pm[c], c);
                assert_eq!(pm[pm[c]], c);
            }
        }
        assert!(!g.is_rational_group());
    }

    #[test]
    fn direct_sum_of_sign_groups() {
        let c2 = MatGroup::generate(&[Matrix::from_rows(&[vec![-1]])], DEFAULT_CAP).unwrap();
        let v4 = c2.direct_sum(&c2, DEFAULT_CAP).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.dim(), 2);
        let mut codims = v4.codims().to_vec();
        codims.sort_unstable();
        assert_eq!(codims, vec![0, 1, 1, 2]);
        v4.check_invariants().unwrap();
    }

    #[test]
    fn trivial_summand_keeps_codims() {
        let g = s3();
        let h = g.with_trivial_summand(2).unwrap();
        assert_eq!(h.order(), g.order());
        let mut a = g.codims().to_vec();
        let mut b = h.codims().to_vec();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn codim_zero_only_at_identity_and_conjugation_invariant() {
        let g = s3();
        for i in 0..g.order() {
            assert_eq!(g.codim(i) == 0, i == g.identity_index());
            for h in 0..g.order() {
                let c = g.mul_index(g.mul_index(h, i), g.inverse_index(h));
                assert_eq!(g.codim(c), g.codim(i));
            }
        }
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let gens = [perm_matrix(&[1, 0, 2, 3]), perm_matrix(&[1, 2, 3, 0])];
        let a = MatGroup::generate_with(&gens, DEFAULT_CAP, Exec::Sequential).unwrap();
        let b = MatGroup::generate_with(&gens, DEFAULT_CAP, Exec::Parallel).unwrap();
        assert_eq!(a.elements(), b.elements());
        let ca: Vec<_> = a.classes().iter().map(|c| c.members.clone()).collect();
        let cb: Vec<_> = b.classes().iter().map(|c| c.members.clone()).collect();
        assert_eq!(ca, cb);
    }
}
