//! Dense integer matrices with the exact algorithms the rest of the crate
//! leans on: rank, determinant, Hermite and Smith normal forms, and integer
//! linear solving.
//!
//! Everything runs on `i64` with checked arithmetic. The matrices that show
//! up here are small (at most a few hundred entries per side) and have tiny
//! entries, so an overflow means a caller bug and panics.

use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

fn ck_mul(a: i64, b: i64) -> i64 {
    a.checked_mul(b)
        .expect("integer overflow in matrix arithmetic")
}

fn ck_add(a: i64, b: i64) -> i64 {
    a.checked_add(b)
        .expect("integer overflow in matrix arithmetic")
}

fn ck_sub(a: i64, b: i64) -> i64 {
    a.checked_sub(b)
        .expect("integer overflow in matrix arithmetic")
}

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// Builds a matrix from row vectors. Panics on ragged input.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<i64>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for (i, &v) in c.iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other[(k, j)];
                    if b != 0 {
                        out[(i, j)] = ck_add(out[(i, j)], ck_mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0i64, |acc, (&a, &b)| ck_add(acc, ck_mul(a, b)))
            })
            .collect()
    }

    pub fn scale(&self, c: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| ck_mul(x, c)).collect(),
        }
    }

    pub fn sub(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(&a, &b)| ck_sub(a, b))
                .collect(),
        }
    }

    /// Reduces every entry into `0..modulus`.
    pub fn reduce_mod(&self, modulus: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&x| x.rem_euclid(modulus)).collect(),
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += factor * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, factor: i64) {
        if factor == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self[(src, j)];
            if v != 0 {
                self[(dst, j)] = ck_add(self[(dst, j)], ck_mul(factor, v));
            }
        }
    }

    /// col[dst] += factor * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, factor: i64) {
        if factor == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self[(i, src)];
            if v != 0 {
                self[(i, dst)] = ck_add(self[(i, dst)], ck_mul(factor, v));
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            self[(i, j)] = -self[(i, j)];
        }
    }

    /// Rank over the rationals (fraction-free elimination).
    pub fn rank(&self) -> usize {
        let mut m: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| m[r][col] != 0) else {
                continue;
            };
            m.swap(rank, p);
            for r in rank + 1..self.rows {
                if m[r][col] == 0 {
                    continue;
                }
                let (a, b) = (m[rank][col], m[r][col]);
                let g = {
                    let (mut x, mut y) = (a.abs(), b.abs());
                    while y != 0 {
                        let t = x % y;
                        x = y;
                        y = t;
                    }
                    x
                };
                let (fa, fb) = (a / g, b / g);
                let pivot = m[rank].clone();
                for (x, p) in m[r][col..].iter_mut().zip(&pivot[col..]) {
                    *x = *x * fa - p * fb;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    /// Exact determinant via Bareiss elimination. Panics if not square.
    pub fn determinant(&self) -> i64 {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut m: Vec<Vec<i128>> = self
            .to_rows()
            .into_iter()
            .map(|r| r.into_iter().map(i128::from).collect())
            .collect();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if m[k][k] == 0 {
                let Some(p) = (k + 1..n).find(|&r| m[r][k] != 0) else {
                    return 0;
                };
                m.swap(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
                }
            }
            prev = m[k][k];
        }
        i64::try_from(sign * m[n - 1][n - 1]).expect("determinant overflows i64")
    }

    /// Row-style Hermite normal form of the row lattice.
    ///
    /// Returns the nonzero rows of the echelon form together with their pivot
    /// columns. Pivots are positive and the entries above each pivot lie in
    /// `0..pivot`, which makes the result a canonical basis of the lattice
    /// spanned by the rows.
    pub fn hermite_normal_form(&self) -> Hermite {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols {
            if r == m.rows {
                break;
            }
            // Euclid on the column below r until one nonzero entry remains.
            loop {
                let nz: Vec<usize> = (r..m.rows).filter(|&i| m[(i, col)] != 0).collect();
                if nz.is_empty() {
                    break;
                }
                let p = *nz.iter().min_by_key(|&&i| m[(i, col)].abs()).unwrap();
                m.swap_rows(r, p);
                let mut clean = true;
                for i in r + 1..m.rows {
                    let q = m[(i, col)].div_euclid(m[(r, col)]);
                    m.add_row_multiple(i, r, -q);
                    if m[(i, col)] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
            if m[(r, col)] == 0 {
                continue;
            }
            if m[(r, col)] < 0 {
                m.negate_row(r);
            }
            let piv = m[(r, col)];
            for i in 0..r {
                let q = m[(i, col)].div_euclid(piv);
                m.add_row_multiple(i, r, -q);
            }
            pivots.push(col);
            r += 1;
        }
        let basis = IntMatrix::from_rows(&m.to_rows()[..r]);
        let basis = if r == 0 {
            IntMatrix::zeros(0, self.cols)
        } else {
            basis
        };
        Hermite { basis, pivots }
    }

    /// Smith normal form: unimodular `left`, `right` with
    /// `left * self * right = diag(d_1, d_2, ...)`, each `d_i` dividing the next.
    pub fn smith_normal_form(&self) -> Smith {
        let (m, n) = (self.rows, self.cols);
        let mut a = self.clone();
        let mut left = IntMatrix::identity(m);
        let mut right = IntMatrix::identity(n);
        let mut t = 0;
        while t < m.min(n) {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for i in t..m {
                for j in t..n {
                    let v = a[(i, j)];
                    if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < a[(bi, bj)].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            a.swap_rows(t, bi);
            left.swap_rows(t, bi);
            a.swap_cols(t, bj);
            right.swap_cols(t, bj);

            let piv = a[(t, t)];
            let mut settled = true;
            for i in t + 1..m {
                let q = a[(i, t)] / piv;
                a.add_row_multiple(i, t, -q);
                left.add_row_multiple(i, t, -q);
                if a[(i, t)] != 0 {
                    settled = false;
                }
            }
            for j in t + 1..n {
                let q = a[(t, j)] / piv;
                a.add_col_multiple(j, t, -q);
                right.add_col_multiple(j, t, -q);
                if a[(t, j)] != 0 {
                    settled = false;
                }
            }
            if !settled {
                continue;
            }
            // the pivot must divide the rest of the block
            let offender = (t + 1..m).find(|&i| (t + 1..n).any(|j| a[(i, j)] % piv != 0));
            if let Some(i) = offender {
                a.add_row_multiple(t, i, 1);
                left.add_row_multiple(t, i, 1);
                continue;
            }
            if piv < 0 {
                a.negate_row(t);
                left.negate_row(t);
            }
            t += 1;
        }
        let diagonal = (0..m.min(n))
            .map(|i| a[(i, i)])
            .take_while(|&d| d != 0)
            .collect();
        Smith {
            left,
            right,
            diagonal,
        }
    }

    /// Nonzero invariant factors of the matrix.
    pub fn elementary_divisors(&self) -> Vec<i64> {
        self.smith_normal_form().diagonal
    }

    /// Solves `self * x = b` over the integers.
    pub fn solve_integer(&self, b: &[i64]) -> Result<Vec<i64>, Unsolvable> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let smith = self.smith_normal_form();
        let c = smith.left.mul_vec(b);
        let r = smith.diagonal.len();
        if c[r..].iter().any(|&x| x != 0) {
            return Err(Unsolvable {
                rational_solution: false,
                denominators: Vec::new(),
            });
        }
        let mut y = vec![0i64; self.cols];
        let mut denominators = Vec::new();
        for i in 0..r {
            let d = smith.diagonal[i];
            if c[i] % d != 0 {
                denominators.push(d / gcd(d, c[i]));
            } else {
                y[i] = c[i] / d;
            }
        }
        if !denominators.is_empty() {
            denominators.sort_unstable();
            denominators.dedup();
            return Err(Unsolvable {
                rational_solution: true,
                denominators,
            });
        }
        Ok(smith.right.mul_vec(&y))
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[derive(Clone, Debug)]
pub struct Hermite {
    pub basis: IntMatrix,
    pub pivots: Vec<usize>,
}

impl Hermite {
    /// Canonical representative of `v` modulo the row lattice: each pivot
    /// coordinate is brought into `0..pivot`.
    pub fn reduce(&self, v: &[i64]) -> Vec<i64> {
        let mut out = v.to_vec();
        for (r, &col) in self.pivots.iter().enumerate() {
            let piv = self.basis[(r, col)];
            let q = out[col].div_euclid(piv);
            if q != 0 {
                for (j, x) in out.iter_mut().enumerate() {
                    *x = ck_sub(*x, ck_mul(q, self.basis[(r, j)]));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct Smith {
    pub left: IntMatrix,
    pub right: IntMatrix,
    pub diagonal: Vec<i64>,
}

/// Failure of an integer linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unsolvable {
    /// Whether the system has a solution over the rationals.
    pub rational_solution: bool,
    /// Denominators forced on a rational solution (empty when there is none).
    pub denominators: Vec<i64>,
}
