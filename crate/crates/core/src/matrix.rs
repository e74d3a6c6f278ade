use std::fmt;

/// Square integer matrix, row-major.
///
/// Ordering is lexicographic on the flattened entries; this is the canonical
/// element order used by [`crate::grpcore::MatGroup`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    n: usize,
    entries: Box<[i32]>,
}

impl Matrix {
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![0; n * n].into_boxed_slice();
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { n, entries }
    }

    /// Panics if the rows are ragged or not square.
    pub fn from_rows(rows: &[Vec<i32>]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Self {
            n,
            entries: rows.iter().flatten().copied().collect(),
        }
    }

    pub fn from_flat(n: usize, entries: Vec<i32>) -> Self {
        assert_eq!(entries.len(), n * n, "matrix must be square");
        Self {
            n,
            entries: entries.into_boxed_slice(),
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i32 {
        self.entries[row * self.n + col]
    }

    pub fn entries(&self) -> &[i32] {
        &self.entries
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == i32::from(i == j)))
    }

    /// Product `self * rhs`, or `None` on `i32` overflow.
    pub fn checked_mul(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = vec![0i32; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = i64::from(self.entries[i * n + k]);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = i64::from(out[i * n + j]) + a * i64::from(rhs.entries[k * n + j]);
                    out[i * n + j] = i32::try_from(v).ok()?;
                }
            }
        }
        Some(Matrix::from_flat(n, out))
    }

    /// Panicking product; only for matrices known to lie in a finite group.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs)
            .expect("matrix entries overflowed i32")
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Block-diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let n = self.n + other.n;
        let mut out = vec![0; n * n];
        for i in 0..self.n {
            for j in 0..self.n {
                out[i * n + j] = self.get(i, j);
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out[(self.n + i) * n + self.n + j] = other.get(i, j);
            }
        }
        Matrix::from_flat(n, out)
    }

    pub fn determinant(&self) -> i128 {
        let rows: Vec<Vec<i128>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| i128::from(self.get(i, j))).collect())
            .collect();
        bareiss(rows).1
    }

    /// Number of eigenvalues different from 1, i.e. `n - dim ker(g - I)`,
    /// for elements of a finite group (which are diagonalizable).
    pub fn codim_fixed(&self) -> u32 {
        let rows: Vec<Vec<i128>> = (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| i128::from(self.get(i, j)) - i128::from(i == j))
                    .collect()
            })
            .collect();
        bareiss(rows).0 as u32
    }
}

/// Fraction-free Gaussian elimination. Returns `(rank, determinant)`; the
/// determinant is only meaningful for full-rank input (it is 0 otherwise).
fn bareiss(mut a: Vec<Vec<i128>>) -> (usize, i128) {
    let n = a.len();
    let cols = if n == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    let mut prev = 1i128;
    let mut sign = 1i128;
    for col in 0..cols {
        if rank == n {
            break;
        }
        let Some(p) = (rank..n).find(|&r| a[r][col] != 0) else {
            continue;
        };
        if p != rank {
            a.swap(p, rank);
            sign = -sign;
        }
        for r in (rank + 1)..n {
            for c in (col + 1)..cols {
                a[r][c] = (a[r][c] * a[rank][col] - a[r][col] * a[rank][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[rank][col];
        rank += 1;
    }
    let det = if rank == n && n == cols {
        sign * prev
    } else {
        0
    };
    (rank, det)
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.n).map(|j| self.get(i, j).to_string()).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}
