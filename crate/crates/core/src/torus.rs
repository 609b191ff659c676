//! Integral cohomology ring of the mapping torus of a Torelli element,
//! assembled from its Johnson value.
//!
//! Basis, by degree:
//!
//! | degree | elements |
//! |--------|----------|
//! | 0 | `1` |
//! | 1 | `e1 .. e2g` (dual to `a1, b1, ...`), `theta` |
//! | 2 | `PDsigma`, `theta^e1 .. theta^e2g` |
//! | 3 | `vol` |
//!
//! The form on `H^1(S)` is `<e_i, e_j> = J_ij`. The invariant
//! `f : Lambda^2 H^1 -> H^1` enters through
//! `e_j e_k = <e_j, e_k> PDsigma - theta^f(e_j ^ e_k)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::IntMatrix;
use crate::symplectic::{
    binom, extract_iota_preimage, pair_index, pairing_matrix, pairs, TensorHW2, Wedge3,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusRing {
    genus: usize,
    /// Column `pair_index(j, k)` holds the coordinates of `f(e_j ^ e_k)`.
    f: IntMatrix,
    /// `table[a * N + b]` is the product of basis elements `a` and `b`.
    table: Vec<Vec<i64>>,
}

impl TorusRing {
    pub fn dimension(&self) -> usize {
        4 * self.genus + 4
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn f(&self) -> &IntMatrix {
        &self.f
    }

    pub fn one(&self) -> usize {
        0
    }

    pub fn e(&self, i: usize) -> usize {
        1 + i
    }

    pub fn theta(&self) -> usize {
        2 * self.genus + 1
    }

    pub fn pd_sigma(&self) -> usize {
        2 * self.genus + 2
    }

    pub fn theta_e(&self, i: usize) -> usize {
        2 * self.genus + 3 + i
    }

    pub fn vol(&self) -> usize {
        4 * self.genus + 3
    }

    pub fn degree(&self, a: usize) -> usize {
        let g = self.genus;
        match a {
            0 => 0,
            a if a <= 2 * g + 1 => 1,
            a if a <= 4 * g + 2 => 2,
            _ => 3,
        }
    }

    pub fn label(&self, a: usize) -> String {
        let g = self.genus;
        match a {
            0 => "1".into(),
            a if a <= 2 * g => format!("e{a}"),
            a if a == 2 * g + 1 => "theta".into(),
            a if a == 2 * g + 2 => "PDsigma".into(),
            a if a <= 4 * g + 2 => format!("theta^e{}", a - 2 * g - 2),
            _ => "vol".into(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.dimension()).map(|a| self.label(a)).collect()
    }

    /// Product of two basis elements, as a coordinate vector.
    pub fn basis_product(&self, a: usize, b: usize) -> &[i64] {
        &self.table[a * self.dimension() + b]
    }

    /// Product of two arbitrary elements.
    pub fn mul(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let n = self.dimension();
        let mut out = vec![0; n];
        for (a, &xa) in x.iter().enumerate().filter(|(_, &c)| c != 0) {
            for (b, &yb) in y.iter().enumerate().filter(|(_, &c)| c != 0) {
                for (o, &p) in out.iter_mut().zip(self.basis_product(a, b)) {
                    *o += xa * yb * p;
                }
            }
        }
        out
    }

    fn unit_vector(&self, a: usize) -> Vec<i64> {
        let mut v = vec![0; self.dimension()];
        v[a] = 1;
        v
    }

    /// Nonzero structure constants `(left, right, result, coefficient)`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, i64)> {
        let n = self.dimension();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for (c, &x) in self.basis_product(a, b).iter().enumerate() {
                    if x != 0 {
                        out.push((a, b, c, x));
                    }
                }
            }
        }
        out
    }

    /// Builds the ring with a prescribed `f`, which need not come from a
    /// Johnson value.
    pub fn from_f(genus: usize, f: IntMatrix) -> Result<TorusRing> {
        if genus < 1 || f.rows() != 2 * genus || f.cols() != binom(2 * genus, 2) {
            return Err(Error::Mismatch("f must be a 2g x C(2g,2) matrix".into()));
        }
        let mut ring = TorusRing {
            genus,
            f,
            table: Vec::new(),
        };
        ring.table = ring.products();
        Ok(ring)
    }

    fn products(&self) -> Vec<Vec<i64>> {
        let g = self.genus;
        let n = self.dimension();
        let j = pairing_matrix(g);
        let mut table = vec![vec![0; n]; n * n];
        let mut set = |a: usize, b: usize, c: usize, x: i64| table[a * n + b][c] += x;

        for a in 0..n {
            set(0, a, a, 1);
            if a != 0 {
                set(a, 0, a, 1);
            }
        }
        for p in 0..2 * g {
            for q in 0..2 * g {
                // e_p e_q = J_pq PDsigma - theta^f(e_p ^ e_q)
                set(self.e(p), self.e(q), self.pd_sigma(), j[(p, q)]);
                if p != q {
                    let (lo, hi, s) = if p < q { (p, q, 1) } else { (q, p, -1) };
                    let col = pair_index(2 * g, lo, hi);
                    for l in 0..2 * g {
                        set(self.e(p), self.e(q), self.theta_e(l), -s * self.f[(l, col)]);
                    }
                }
                // e_p (theta^e_q) = -J_pq vol, and the mirror product
                set(self.e(p), self.theta_e(q), self.vol(), -j[(p, q)]);
                set(self.theta_e(q), self.e(p), self.vol(), -j[(p, q)]);
            }
            set(self.theta(), self.e(p), self.theta_e(p), 1);
            set(self.e(p), self.theta(), self.theta_e(p), -1);
        }
        set(self.theta(), self.pd_sigma(), self.vol(), 1);
        set(self.pd_sigma(), self.theta(), self.vol(), 1);
        table
    }
}

/// `f` determined by a Johnson value: `f(e_j ^ e_k) = -J t` where
/// `t_i = tau_ijk`.
fn f_from_tau(tau: &Wedge3) -> IntMatrix {
    let g = tau.genus();
    let n = 2 * g;
    let j = pairing_matrix(g);
    let cols: Vec<Vec<i64>> = pairs(n)
        .into_iter()
        .map(|(p, q)| {
            let t: Vec<i64> = (0..n).map(|i| tau.coeff(i, p, q)).collect();
            j.mul_vec(&t).into_iter().map(|x| -x).collect()
        })
        .collect();
    IntMatrix::from_columns(&cols, n)
}

pub fn build_ring(tau: &Wedge3) -> Result<TorusRing> {
    let g = tau.genus();
    if g < 2 {
        return Err(Error::GenusTooSmall {
            genus: g,
            minimum: 2,
        });
    }
    TorusRing::from_f(g, f_from_tau(tau))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RingViolation {
    Commutativity { left: String, right: String },
    Associativity { a: String, b: String, c: String },
    PairingNotUnimodular { determinant: i64 },
}

impl fmt::Display for RingViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingViolation::Commutativity { left, right } => {
                write!(f, "graded commutativity fails for ({left}, {right})")
            }
            RingViolation::Associativity { a, b, c } => {
                write!(f, "associativity fails for ({a}, {b}, {c})")
            }
            RingViolation::PairingNotUnimodular { determinant } => {
                write!(f, "H^1 x H^2 -> H^3 pairing has determinant {determinant}")
            }
        }
    }
}

/// Every violated ring axiom; empty for a Poincare duality algebra.
pub fn verify_ring(ring: &TorusRing) -> Vec<RingViolation> {
    let n = ring.dimension();
    let mut out = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let sign = if (ring.degree(a) * ring.degree(b)).is_multiple_of(2) {
                1
            } else {
                -1
            };
            let ab = ring.basis_product(a, b);
            let ba = ring.basis_product(b, a);
            if ab.iter().zip(ba).any(|(x, y)| *x != sign * y) {
                out.push(RingViolation::Commutativity {
                    left: ring.label(a),
                    right: ring.label(b),
                });
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = ring.basis_product(a, b).to_vec();
            for c in 0..n {
                let left = ring.mul(&ab, &ring.unit_vector(c));
                let right = ring.mul(&ring.unit_vector(a), ring.basis_product(b, c));
                if left != right {
                    out.push(RingViolation::Associativity {
                        a: ring.label(a),
                        b: ring.label(b),
                        c: ring.label(c),
                    });
                }
            }
        }
    }
    let deg1: Vec<usize> = (0..n).filter(|&a| ring.degree(a) == 1).collect();
    let deg2: Vec<usize> = (0..n).filter(|&a| ring.degree(a) == 2).collect();
    let rows: Vec<Vec<i64>> = deg1
        .iter()
        .map(|&a| {
            deg2.iter()
                .map(|&b| ring.basis_product(a, b)[ring.vol()])
                .collect()
        })
        .collect();
    let determinant = IntMatrix::from_rows(&rows).determinant();
    if determinant.abs() != 1 {
        out.push(RingViolation::PairingNotUnimodular { determinant });
    }
    out
}

/// `F(u (x) v ^ w)` read from `u (v w) = F vol` on degree-one classes.
pub fn extract_f(ring: &TorusRing) -> Result<TensorHW2> {
    let g = ring.genus;
    let n = 2 * g;
    let mut m = IntMatrix::zeros(n, binom(n, 2));
    for (col, (p, q)) in pairs(n).into_iter().enumerate() {
        let pq = ring.basis_product(ring.e(p), ring.e(q)).to_vec();
        for i in 0..n {
            m[(i, col)] = ring.mul(&ring.unit_vector(ring.e(i)), &pq)[ring.vol()];
        }
    }
    let t = TensorHW2::from_matrix(g, m)?;
    extract_iota_preimage(&t)?;
    Ok(t)
}
