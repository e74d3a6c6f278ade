//! Constructors for Weyl groups, symmetric groups and (demi)hyperoctahedral
//! groups as integer matrix groups, plus the group-descriptor grammar used by
//! the CLI.
//!
//! Weyl groups act on the root lattice in the simple-root basis. With the
//! Cartan matrix `A[i][j] = <α_i^∨, α_j>` (Bourbaki numbering), the simple
//! reflection `s_i` sends `α_j` to `α_j - A[i][j] α_i`; column `j` of its
//! matrix is the coordinate vector of `s_i(α_j)`.

use std::fmt;
use std::str::FromStr;

use crate::error::{MassError, Result};
use crate::exec::Exec;
use crate::grpcore::{trivial_group, MatGroup, PermTag, DEFAULT_CAP};
use crate::matrix::Matrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G2,
    F4,
    E6,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CartanDatum {
    kind: CartanType,
    rank: usize,
}

impl CartanDatum {
    pub fn new(kind: CartanType, rank: usize) -> Result<Self> {
        let ok = match kind {
            CartanType::A | CartanType::B | CartanType::C => rank >= 1,
            CartanType::D => rank >= 2,
            CartanType::G2 => rank == 2,
            CartanType::F4 => rank == 4,
            CartanType::E6 => rank == 6,
        };
        if !ok {
            return Err(MassError::domain(format!(
                "invalid rank {rank} for type {kind:?}"
            )));
        }
        Ok(Self { kind, rank })
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `A[i][j] = <α_i^∨, α_j>`, zero-based Bourbaki numbering.
    pub fn cartan_matrix(&self) -> Vec<Vec<i32>> {
        let n = self.rank;
        let mut a = vec![vec![0; n]; n];
        for (i, row) in a.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut link = |i: usize, j: usize, aij: i32, aji: i32| {
            a[i][j] = aij;
            a[j][i] = aji;
        };
        match self.kind {
            CartanType::A => (0..n.saturating_sub(1)).for_each(|i| link(i, i + 1, -1, -1)),
            CartanType::B | CartanType::C => {
                for i in 0..n.saturating_sub(2) {
                    link(i, i + 1, -1, -1);
                }
                if n >= 2 {
                    // B: last root short; C: last root long
                    if self.kind == CartanType::B {
                        link(n - 2, n - 1, -1, -2);
                    } else {
                        link(n - 2, n - 1, -2, -1);
                    }
                }
            }
            CartanType::D => {
                for i in 0..n.saturating_sub(3) {
                    link(i, i + 1, -1, -1);
                }
                if n >= 3 {
                    link(n - 3, n - 2, -1, -1);
                    link(n - 3, n - 1, -1, -1);
                }
            }
            // α_1 short, α_2 long
            CartanType::G2 => link(0, 1, -3, -1),
            CartanType::F4 => {
                link(0, 1, -1, -1);
                link(1, 2, -1, -2);
                link(2, 3, -1, -1);
            }
            CartanType::E6 => {
                link(0, 2, -1, -1);
                link(2, 3, -1, -1);
                link(3, 4, -1, -1);
                link(4, 5, -1, -1);
                link(1, 3, -1, -1);
            }
        }
        a
    }

    pub fn simple_reflections(&self) -> Vec<Matrix> {
        let a = self.cartan_matrix();
        let n = self.rank;
        (0..n)
            .map(|i| {
                let mut m = Matrix::identity(n).entries().to_vec();
                for j in 0..n {
                    m[i * n + j] -= a[i][j];
                }
                Matrix::from_flat(n, m)
            })
            .collect()
    }

    /// `|W|` from the classification; used to sanity-check closures.
    pub fn expected_order(&self) -> u64 {
        let fact = |k: usize| (1..=k as u64).product::<u64>();
        let n = self.rank;
        match self.kind {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u64 << n) * fact(n),
            CartanType::D => (1u64 << (n - 1)) * fact(n),
            CartanType::G2 => 12,
            CartanType::F4 => 1152,
            CartanType::E6 => 51840,
        }
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CartanType::G2 => write!(f, "G2"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::E6 => write!(f, "E6"),
            k => write!(f, "{k:?}{}", self.rank),
        }
    }
}

/// Weyl group acting on the root lattice in the simple-root basis.
pub fn weyl_group(datum: CartanDatum, cap: usize) -> Result<MatGroup> {
    MatGroup::generate(&datum.simple_reflections(), cap)
}

/// Signed permutation `e_j -> signs[j] e_{perm[j]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedPerm {
    perm: Vec<usize>,
    signs: Vec<i8>,
}

impl SignedPerm {
    pub fn new(perm: Vec<usize>, signs: Vec<i8>) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(MassError::domain("not a permutation"));
            }
        }
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(MassError::domain("signs must be ±1, one per letter"));
        }
        Ok(Self { perm, signs })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            signs: vec![1; n],
        }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPerm) -> SignedPerm {
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = (0..other.degree())
            .map(|j| other.signs[j] * self.signs[other.perm[j]])
            .collect();
        SignedPerm { perm, signs }
    }

    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.degree();
        let mut e = vec![0; n * n];
        for j in 0..n {
            e[self.perm[j] * n + j] = i32::from(self.signs[j]);
        }
        Matrix::from_flat(n, e)
    }

    /// Cycles of the underlying permutation with the product of their signs.
    pub fn signed_cycles(&self) -> Vec<(Vec<usize>, i8)> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut sign = 1;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                cycle.push(j);
                sign *= self.signs[j];
                j = self.perm[j];
            }
            out.push((cycle, sign));
        }
        out
    }

    /// `n` minus the number of cycles with sign product `+1`.
    pub fn codim_fixed(&self) -> u32 {
        let positive = self.signed_cycles().iter().filter(|(_, s)| *s == 1).count();
        (self.degree() - positive) as u32
    }
}

fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            break;
        };
        let j = (i..n)
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("pivot exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
    out
}

/// All signed permutations of degree `n`, optionally only those with an even
/// number of sign changes.
pub fn signed_perms(n: usize, even_only: bool) -> Vec<SignedPerm> {
    let perms = all_perms(n);
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        if even_only && mask.count_ones() % 2 == 1 {
            continue;
        }
        let signs: Vec<i8> = (0..n)
            .map(|j| if mask >> j & 1 == 1 { -1 } else { 1 })
            .collect();
        for p in &perms {
            out.push(SignedPerm {
                perm: p.clone(),
                signs: signs.clone(),
            });
        }
    }
    out
}

fn check_cap(order: u64, cap: usize) -> Result<()> {
    if order > cap as u64 {
        return Err(MassError::SizeLimit { cap });
    }
    Ok(())
}

fn perm_generators(n: usize) -> Vec<SignedPerm> {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(SignedPerm::new(swap, vec![1; n]).expect("valid"));
        let cycle: Vec<usize> = (0..n).map(|j| (j + 1) % n).collect();
        gens.push(SignedPerm::new(cycle, vec![1; n]).expect("valid"));
    }
    gens
}

/// `S_n` as `n x n` permutation matrices, tagged with its action on `n`
/// letters.
pub fn sn_perm_group(n: usize, cap: usize) -> Result<MatGroup> {
    if n == 0 {
        return Err(MassError::domain("S_n needs n >= 1"));
    }
    check_cap((1..=n as u64).product(), cap)?;
    let elements: Vec<Matrix> = all_perms(n)
        .into_iter()
        .map(|p| SignedPerm::new(p, vec![1; n]).expect("valid").to_matrix())
        .collect();
    let gens: Vec<Matrix> = perm_generators(n)
        .iter()
        .map(SignedPerm::to_matrix)
        .collect();
    let mut g = MatGroup::from_elements_unchecked(n, elements, &gens, Exec::default());
    g.set_perm_tag(PermTag { degree: n });
    Ok(g)
}

/// Signed permutation matrices (`W(B_n)`), or the even-sign kernel `W(D_n)`
/// of the sign-product character when `even_only`.
pub fn signed_perm_group(n: usize, even_only: bool, cap: usize) -> Result<MatGroup> {
    if n == 0 || (even_only && n < 2) {
        return Err(MassError::domain(
            "signed permutation groups need n >= 1 (n >= 2 for the even kernel)",
        ));
    }
    let fact: u64 = (1..=n as u64).product();
    let order = (1u64 << n) * fact / if even_only { 2 } else { 1 };
    check_cap(order, cap)?;
    let elements: Vec<Matrix> = signed_perms(n, even_only)
        .iter()
        .map(SignedPerm::to_matrix)
        .collect();
    let mut gens = perm_generators(n);
    let mut flip = vec![1i8; n];
    flip[0] = -1;
    if even_only {
        flip[1] = -1;
    }
    gens.push(SignedPerm::new((0..n).collect(), flip).expect("valid"));
    let gens: Vec<Matrix> = gens.iter().map(SignedPerm::to_matrix).collect();
    let mut g = MatGroup::from_elements_unchecked(n, elements, &gens, Exec::default());
    g.set_perm_tag(PermTag { degree: n });
    Ok(g)
}

/// `Z/3` as the order-3 rotation of the A2 root lattice (dimension 2).
pub fn z3_lattice() -> MatGroup {
    let r = Matrix::from_rows(&[vec![0, -1], vec![1, -1]]);
    MatGroup::generate(&[r], DEFAULT_CAP).expect("cyclic group of order 3")
}

/// `Z/3` read as the cube roots of unity in `GL_1(C)`: the lattice model with
/// `e(g) = 1` for every `g != e`.
pub fn z3_gl1() -> MatGroup {
    z3_lattice().with_codim_override("gl1-cube-roots", |m| u32::from(!m.is_identity()))
}

/// `Z/2` via `copies` copies of its regular representation.
pub fn z2_regular(copies: usize) -> MatGroup {
    let swap = Matrix::from_rows(&[vec![0, 1], vec![1, 0]]);
    let mut g = swap.clone();
    for _ in 1..copies {
        g = g.direct_sum(&swap);
    }
    MatGroup::generate(&[g], DEFAULT_CAP).expect("order 2")
}

/// Options for [`parse_group`].
#[derive(Debug, Clone, Copy)]
pub struct GroupOptions {
    pub cap: usize,
    /// Allow `E6` (order 51840).
    pub allow_e6: bool,
    /// Read `Z3` as cube roots of unity in `GL_1` instead of the lattice model.
    pub z3_gl1: bool,
}

impl Default for GroupOptions {
    fn default() -> Self {
        Self {
            cap: DEFAULT_CAP,
            allow_e6: false,
            z3_gl1: false,
        }
    }
}

fn parse_arg(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?
        .strip_prefix('(')?
        .strip_suffix(')')?
        .trim()
        .parse()
        .ok()
}

fn parse_factor(text: &str, opts: &GroupOptions) -> Result<MatGroup> {
    let text = text.trim();
    let bad = || MassError::domain(format!("unknown group descriptor {text:?}"));
    // trivial summand suffix: "+1" or "+1^k"
    if let Some((base, extra)) = text.split_once('+') {
        let k = match extra.trim() {
            "1" => 1,
            s => s
                .strip_prefix("1^")
                .and_then(|k| k.parse::<usize>().ok())
                .ok_or_else(bad)?,
        };
        return parse_factor(base, opts)?.with_trivial_summand(k);
    }
    if text == "Trivial" {
        return Ok(trivial_group(1));
    }
    if let Some(k) = parse_arg(text, "Trivial") {
        return if k == 0 {
            Err(bad())
        } else {
            Ok(trivial_group(k))
        };
    }
    if let Some(k) = parse_arg(text, "Sn") {
        return sn_perm_group(k, opts.cap);
    }
    if let Some(k) = parse_arg(text, "Bsigned") {
        return signed_perm_group(k, false, opts.cap);
    }
    if let Some(k) = parse_arg(text, "Dsigned") {
        return signed_perm_group(k, true, opts.cap);
    }
    match text {
        "Z2reg" => return Ok(z2_regular(1)),
        "Z2reg2" => return Ok(z2_regular(2)),
        "Z3" => return Ok(if opts.z3_gl1 { z3_gl1() } else { z3_lattice() }),
        "G2" => return weyl_group(CartanDatum::new(CartanType::G2, 2)?, opts.cap),
        "F4" => return weyl_group(CartanDatum::new(CartanType::F4, 4)?, opts.cap),
        "E6" => {
            if !opts.allow_e6 {
                return Err(MassError::domain("E6 is opt-in (enable it explicitly)"));
            }
            return weyl_group(CartanDatum::new(CartanType::E6, 6)?, opts.cap);
        }
        _ => {}
    }
    let (head, rank) = text.split_at(1.min(text.len()));
    let rank: usize = rank.parse().map_err(|_| bad())?;
    let (kind, max) = match head {
        "A" => (CartanType::A, 7),
        "B" => (CartanType::B, 6),
        "C" => (CartanType::C, 6),
        "D" => (CartanType::D, 6),
        _ => return Err(bad()),
    };
    if rank > max {
        return Err(MassError::domain(format!(
            "{text} is beyond the supported range"
        )));
    }
    weyl_group(CartanDatum::new(kind, rank)?, opts.cap)
}

/// Parse a group descriptor: factors separated by `×` (or `x`, `*`), each a
/// name such as `A3`, `G2`, `Sn(4)`, `Bsigned(3)`, `Dsigned(4)`, `Z2reg`,
/// `Z2reg2`, `Z3`, `Trivial`, optionally followed by a trivial summand
/// `+1` or `+1^k`.
pub fn parse_group(descriptor: &str, opts: &GroupOptions) -> Result<MatGroup> {
    let parts: Vec<&str> = descriptor.split(['×', 'x', '*']).map(str::trim).collect();
    if parts.iter().any(|p| p.is_empty()) {
        return Err(MassError::domain(format!(
            "malformed group descriptor {descriptor:?}"
        )));
    }
    let mut group = parse_factor(parts[0], opts)?;
    for part in &parts[1..] {
        group = group.direct_sum(&parse_factor(part, opts)?, opts.cap)?;
    }
    Ok(group)
}

impl FromStr for CartanDatum {
    type Err = MassError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "G2" => return CartanDatum::new(CartanType::G2, 2),
            "F4" => return CartanDatum::new(CartanType::F4, 4),
            "E6" => return CartanDatum::new(CartanType::E6, 6),
            _ => {}
        }
        let (head, rank) = s.split_at(1.min(s.len()));
        let rank = rank
            .parse()
            .map_err(|_| MassError::domain(format!("bad Cartan type {s:?}")))?;
        let kind = match head {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            _ => return Err(MassError::domain(format!("bad Cartan type {s:?}"))),
        };
        CartanDatum::new(kind, rank)
    }
}
