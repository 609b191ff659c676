//! The symplectic lattice `H = H_1(S, Z)` of a genus-g surface and the
//! exterior powers built on it.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * The ordered basis is `(a1, b1, a2, b2, ..., ag, bg)`; basis index `2i`
//!   is `a_{i+1}` and `2i + 1` is `b_{i+1}`.
//! * The intersection pairing has `a_i . b_i = +1`, `b_i . a_i = -1` and
//!   every other basis pairing zero.
//! * `q = sum_i a_i ^ b_i`.
//! * `Lambda^2 H` and `Lambda^3 H` use the lexicographically ordered index
//!   pairs `i < j` and triples `i < j < k`.
//!
//! With these choices the contraction `p(x^y^z) = (x.y) z + (y.z) x + (z.x) y`
//! satisfies `p(q ^ h) = (g - 1) h` with a positive sign.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_rational::Rational64;

use crate::error::{check_genus, Error, Result};
use crate::lattice::IntMatrix;

pub fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// Label of basis vector `i`: `a1`, `b1`, `a2`, ...
pub fn basis_label(i: usize) -> String {
    let kind = if i.is_multiple_of(2) { 'a' } else { 'b' };
    format!("{kind}{}", i / 2 + 1)
}

pub fn parse_basis_label(label: &str, genus: usize) -> Result<usize> {
    let bad = || Error::Parse(format!("unknown basis label {label:?} for genus {genus}"));
    let mut chars = label.chars();
    let offset = match chars.next() {
        Some('a') => 0,
        Some('b') => 1,
        _ => return Err(bad()),
    };
    let handle: usize = chars.as_str().parse().map_err(|_| bad())?;
    if handle == 0 || handle > genus {
        return Err(bad());
    }
    Ok(2 * (handle - 1) + offset)
}

/// Lexicographic position of the pair `i < j` among `C(n, 2)` pairs.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// Lexicographic position of the triple `i < j < k` among `C(n, 3)` triples.
pub fn triple_index(n: usize, i: usize, j: usize, k: usize) -> usize {
    debug_assert!(i < j && j < k && k < n);
    let before_i: usize = (0..i).map(|a| binom(n - a - 1, 2)).sum();
    let before_j: usize = (i + 1..j).map(|b| n - b - 1).sum();
    before_i + before_j + (k - j - 1)
}

pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect()
}

pub fn triples(n: usize) -> Vec<(usize, usize, usize)> {
    (0..n)
        .flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
        .collect()
}

/// Sorts distinct indices and reports the permutation sign; `None` on repeats.
fn sort_with_sign<const K: usize>(mut idx: [usize; K]) -> Option<([usize; K], i64)> {
    let mut sign = 1;
    for a in 0..K {
        for b in 0..K - 1 - a {
            if idx[b] == idx[b + 1] {
                return None;
            }
            if idx[b] > idx[b + 1] {
                idx.swap(b, b + 1);
                sign = -sign;
            }
        }
    }
    Some((idx, sign))
}

/// The intersection-pairing matrix `J` with `J[a_i][b_i] = 1`.
pub fn pairing_matrix(genus: usize) -> IntMatrix {
    let mut j = IntMatrix::zeros(2 * genus, 2 * genus);
    for i in 0..genus {
        j[(2 * i, 2 * i + 1)] = 1;
        j[(2 * i + 1, 2 * i)] = -1;
    }
    j
}

fn basis_pairing(i: usize, j: usize) -> i64 {
    if i / 2 != j / 2 || i == j {
        0
    } else if i.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Splits `"2 * a1^b1 - a2^b2, 3*a1^b3"` into signed terms.
fn split_terms(text: &str) -> Vec<String> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut terms = Vec::new();
    let mut current = String::new();
    for c in compact.chars() {
        match c {
            '+' | ',' | ';' => {
                if !current.is_empty() {
                    terms.push(std::mem::take(&mut current));
                }
            }
            '-' => {
                if !current.is_empty() && !current.ends_with('*') {
                    terms.push(std::mem::take(&mut current));
                }
                current.push('-');
            }
            _ => current.push(c),
        }
    }
    if !current.is_empty() {
        terms.push(current);
    }
    terms
}

/// Parses a sparse linear combination of degree-`arity` wedge monomials.
fn parse_monomials(text: &str, genus: usize, arity: usize) -> Result<Vec<(i64, Vec<usize>)>> {
    let trimmed = text.trim();
    if trimmed.is_empty() || trimmed == "0" {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for term in split_terms(trimmed) {
        let (negative, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.as_str()),
        };
        let (coeff, monomial) = match body.split_once('*') {
            Some((c, m)) => {
                let c: i64 = c
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in term {term:?}")))?;
                (c, m)
            }
            None => (1, body),
        };
        let coeff = if negative { -coeff } else { coeff };
        let labels: Vec<&str> = monomial.split('^').collect();
        if labels.len() != arity {
            return Err(Error::Parse(format!(
                "term {term:?} should have {arity} factor(s)"
            )));
        }
        let idx = labels
            .iter()
            .map(|l| parse_basis_label(l, genus))
            .collect::<Result<Vec<_>>>()?;
        out.push((coeff, idx));
    }
    Ok(out)
}

fn render_term(coeff: impl fmt::Display, labels: &[usize]) -> String {
    let mono: Vec<String> = labels.iter().map(|&i| basis_label(i)).collect();
    format!("{coeff} * {}", mono.join("^"))
}

macro_rules! lattice_vector_ops {
    ($ty:ident) => {
        impl $ty {
            pub fn genus(&self) -> usize {
                self.genus
            }

            pub fn coeffs(&self) -> &[i64] {
                &self.coeffs
            }

            pub fn is_zero(&self) -> bool {
                self.coeffs.iter().all(|&c| c == 0)
            }
        }

        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                assert_eq!(self.genus, rhs.genus, "genus mismatch");
                $ty {
                    genus: self.genus,
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(&rhs.coeffs)
                        .map(|(a, b)| a + b)
                        .collect(),
                }
            }
        }

        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                &self + &rhs
            }
        }

        impl AddAssign<&$ty> for $ty {
            fn add_assign(&mut self, rhs: &$ty) {
                assert_eq!(self.genus, rhs.genus, "genus mismatch");
                for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
                    *a += b;
                }
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                assert_eq!(self.genus, rhs.genus, "genus mismatch");
                $ty {
                    genus: self.genus,
                    coeffs: self
                        .coeffs
                        .iter()
                        .zip(&rhs.coeffs)
                        .map(|(a, b)| a - b)
                        .collect(),
                }
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                &self - &rhs
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty {
                    genus: self.genus,
                    coeffs: self.coeffs.iter().map(|a| -a).collect(),
                }
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                -&self
            }
        }

        impl Mul<&$ty> for i64 {
            type Output = $ty;
            fn mul(self, rhs: &$ty) -> $ty {
                $ty {
                    genus: rhs.genus,
                    coeffs: rhs.coeffs.iter().map(|a| self * a).collect(),
                }
            }
        }
    };
}

/// A class in `H_1(S, Z)`, coordinates over `(a1, b1, ..., ag, bg)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct H1Class {
    genus: usize,
    coeffs: Vec<i64>,
}

lattice_vector_ops!(H1Class);

impl H1Class {
    pub fn zero(genus: usize) -> Self {
        H1Class {
            genus,
            coeffs: vec![0; 2 * genus],
        }
    }

    pub fn basis(genus: usize, i: usize) -> Self {
        let mut h = Self::zero(genus);
        h.coeffs[i] = 1;
        h
    }

    pub fn from_coords(genus: usize, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != 2 * genus {
            return Err(Error::Mismatch(format!(
                "H1 class needs {} coordinates, got {}",
                2 * genus,
                coeffs.len()
            )));
        }
        Ok(H1Class { genus, coeffs })
    }

    /// Parses `"a1 - 2*b3"`.
    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        let mut h = Self::zero(genus);
        for (c, idx) in parse_monomials(text, genus, 1)? {
            h.coeffs[idx[0]] += c;
        }
        Ok(h)
    }

    pub fn coords(&self) -> &[i64] {
        &self.coeffs
    }
}

impl fmt::Display for H1Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0) {
            let label = basis_label(i);
            let sign = if c < 0 { "-" } else { "+" };
            let mag = c.abs();
            match (first, mag) {
                (true, 1) if c < 0 => write!(f, "-{label}")?,
                (true, 1) => write!(f, "{label}")?,
                (true, _) => write!(f, "{c}*{label}")?,
                (false, 1) => write!(f, " {sign} {label}")?,
                (false, _) => write!(f, " {sign} {mag}*{label}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// An element of `Lambda^2 H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wedge2 {
    genus: usize,
    coeffs: Vec<i64>,
}

lattice_vector_ops!(Wedge2);

impl Wedge2 {
    pub fn zero(genus: usize) -> Self {
        Wedge2 {
            genus,
            coeffs: vec![0; binom(2 * genus, 2)],
        }
    }

    pub fn from_coeffs(genus: usize, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != binom(2 * genus, 2) {
            return Err(Error::Mismatch(
                "wrong number of wedge-2 coefficients".into(),
            ));
        }
        Ok(Wedge2 { genus, coeffs })
    }

    /// `e_i ^ e_j` for arbitrary (possibly unsorted, possibly equal) indices.
    pub fn monomial(genus: usize, i: usize, j: usize) -> Self {
        let mut w = Self::zero(genus);
        if let Some(([i, j], s)) = sort_with_sign([i, j]) {
            w.coeffs[pair_index(2 * genus, i, j)] = s;
        }
        w
    }

    pub fn wedge(u: &H1Class, v: &H1Class) -> Self {
        assert_eq!(u.genus, v.genus, "genus mismatch");
        let n = 2 * u.genus;
        let mut w = Self::zero(u.genus);
        for (idx, (i, j)) in pairs(n).into_iter().enumerate() {
            w.coeffs[idx] = u.coeffs[i] * v.coeffs[j] - u.coeffs[j] * v.coeffs[i];
        }
        w
    }

    /// Coefficient of `e_i ^ e_j` (antisymmetric in the indices).
    pub fn coeff(&self, i: usize, j: usize) -> i64 {
        match sort_with_sign([i, j]) {
            Some(([i, j], s)) => s * self.coeffs[pair_index(2 * self.genus, i, j)],
            None => 0,
        }
    }

    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        let mut w = Self::zero(genus);
        for (c, idx) in parse_monomials(text, genus, 2)? {
            w += &(c * &Self::monomial(genus, idx[0], idx[1]));
        }
        Ok(w)
    }

    /// Sparse term list, e.g. `["1 * a1^b1", "-2 * a2^b3"]`.
    pub fn terms(&self) -> Vec<String> {
        pairs(2 * self.genus)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|((i, j), &c)| render_term(c, &[i, j]))
            .collect()
    }
}

/// An element of `Lambda^3 H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wedge3 {
    genus: usize,
    coeffs: Vec<i64>,
}

lattice_vector_ops!(Wedge3);

impl Wedge3 {
    pub fn zero(genus: usize) -> Self {
        Wedge3 {
            genus,
            coeffs: vec![0; binom(2 * genus, 3)],
        }
    }

    pub fn from_coeffs(genus: usize, coeffs: Vec<i64>) -> Result<Self> {
        if coeffs.len() != binom(2 * genus, 3) {
            return Err(Error::Mismatch(
                "wrong number of wedge-3 coefficients".into(),
            ));
        }
        Ok(Wedge3 { genus, coeffs })
    }

    pub fn monomial(genus: usize, i: usize, j: usize, k: usize) -> Self {
        let mut w = Self::zero(genus);
        if let Some(([i, j, k], s)) = sort_with_sign([i, j, k]) {
            w.coeffs[triple_index(2 * genus, i, j, k)] = s;
        }
        w
    }

    pub fn wedge(u: &H1Class, v: &H1Class, w: &H1Class) -> Self {
        assert!(u.genus == v.genus && v.genus == w.genus, "genus mismatch");
        let n = 2 * u.genus;
        let (u, v, w) = (&u.coeffs, &v.coeffs, &w.coeffs);
        let coeffs = triples(n)
            .into_iter()
            .map(|(i, j, k)| {
                u[i] * (v[j] * w[k] - v[k] * w[j]) - u[j] * (v[i] * w[k] - v[k] * w[i])
                    + u[k] * (v[i] * w[j] - v[j] * w[i])
            })
            .collect();
        Wedge3 {
            genus: n / 2,
            coeffs,
        }
    }

    pub fn coeff(&self, i: usize, j: usize, k: usize) -> i64 {
        match sort_with_sign([i, j, k]) {
            Some(([i, j, k], s)) => s * self.coeffs[triple_index(2 * self.genus, i, j, k)],
            None => 0,
        }
    }

    pub fn parse(text: &str, genus: usize) -> Result<Self> {
        let mut w = Self::zero(genus);
        for (c, idx) in parse_monomials(text, genus, 3)? {
            w += &(c * &Self::monomial(genus, idx[0], idx[1], idx[2]));
        }
        Ok(w)
    }

    /// Sparse term list, e.g. `["1 * a1^b1^b2"]`.
    pub fn terms(&self) -> Vec<String> {
        triples(2 * self.genus)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, &c)| c != 0)
            .map(|((i, j, k), &c)| render_term(c, &[i, j, k]))
            .collect()
    }
}

impl fmt::Display for Wedge3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// An element of `Lambda^3 H (x) Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalWedge3 {
    pub genus: usize,
    pub coeffs: Vec<Rational64>,
}

impl RationalWedge3 {
    pub fn from_integral(w: &Wedge3) -> Self {
        RationalWedge3 {
            genus: w.genus,
            coeffs: w
                .coeffs
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| *c == Rational64::from_integer(0))
    }

    /// `Some` when every coefficient is an integer.
    pub fn to_integral(&self) -> Option<Wedge3> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect::<Option<Vec<_>>>()?;
        Some(Wedge3 {
            genus: self.genus,
            coeffs,
        })
    }

    pub fn terms(&self) -> Vec<String> {
        triples(2 * self.genus)
            .into_iter()
            .zip(&self.coeffs)
            .filter(|(_, c)| **c != Rational64::from_integer(0))
            .map(|((i, j, k), c)| render_term(c, &[i, j, k]))
            .collect()
    }
}

impl Add for &RationalWedge3 {
    type Output = RationalWedge3;
    fn add(self, rhs: &RationalWedge3) -> RationalWedge3 {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        RationalWedge3 {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// An element of `H (x) Lambda^2 H`: rows indexed by the basis of `H`,
/// columns by the lexicographic basis of `Lambda^2 H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorHW2 {
    genus: usize,
    matrix: IntMatrix,
}

impl TensorHW2 {
    pub fn zero(genus: usize) -> Self {
        TensorHW2 {
            genus,
            matrix: IntMatrix::zeros(2 * genus, binom(2 * genus, 2)),
        }
    }

    pub fn from_matrix(genus: usize, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != 2 * genus || matrix.cols() != binom(2 * genus, 2) {
            return Err(Error::Mismatch("tensor matrix has the wrong shape".into()));
        }
        Ok(TensorHW2 { genus, matrix })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    /// Coefficient of `e_h (x) (e_i ^ e_j)`.
    pub fn coeff(&self, h: usize, i: usize, j: usize) -> i64 {
        match sort_with_sign([i, j]) {
            Some(([i, j], s)) => s * self.matrix[(h, pair_index(2 * self.genus, i, j))],
            None => 0,
        }
    }

    /// Adds `c * e_h (x) w`.
    pub fn add_term(&mut self, c: i64, h: usize, w: &Wedge2) {
        for (col, &x) in w.coeffs.iter().enumerate() {
            self.matrix[(h, col)] += c * x;
        }
    }

    /// Adds `u (x) w` for an arbitrary class `u`.
    pub fn add_tensor(&mut self, u: &H1Class, w: &Wedge2) {
        for (h, &c) in u.coeffs.iter().enumerate() {
            if c != 0 {
                self.add_term(c, h, w);
            }
        }
    }

    fn flatten(&self) -> Vec<i64> {
        self.matrix.to_rows().concat()
    }
}

/// The intersection form on `H`, with `q` as an element of `Lambda^2 H`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    pub genus: usize,
    pub matrix: IntMatrix,
    pub q: Wedge2,
}

impl SymplecticForm {
    pub fn new(genus: usize) -> Self {
        let mut q = Wedge2::zero(genus);
        for i in 0..genus {
            q += &Wedge2::monomial(genus, 2 * i, 2 * i + 1);
        }
        SymplecticForm {
            genus,
            matrix: pairing_matrix(genus),
            q,
        }
    }
}

/// Algebraic intersection number `u . v`.
pub fn intersection(u: &H1Class, v: &H1Class) -> Result<i64> {
    check_genus(u.genus, v.genus)?;
    Ok(intersection_unchecked(u, v))
}

fn intersection_unchecked(u: &H1Class, v: &H1Class) -> i64 {
    (0..u.genus)
        .map(|i| u.coeffs[2 * i] * v.coeffs[2 * i + 1] - u.coeffs[2 * i + 1] * v.coeffs[2 * i])
        .sum()
}

/// A `2g x 2g` integer matrix preserving the intersection pairing, acting on
/// column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpMatrix {
    genus: usize,
    matrix: IntMatrix,
}

impl SpMatrix {
    pub fn new(genus: usize, matrix: IntMatrix) -> Result<Self> {
        if matrix.rows() != 2 * genus || matrix.cols() != 2 * genus {
            return Err(Error::Mismatch(
                "symplectic matrix has the wrong size".into(),
            ));
        }
        let j = pairing_matrix(genus);
        if matrix.transpose().mul(&j).mul(&matrix) != j {
            return Err(Error::NotSymplectic);
        }
        Ok(SpMatrix { genus, matrix })
    }

    pub fn identity(genus: usize) -> Self {
        SpMatrix {
            genus,
            matrix: IntMatrix::identity(2 * genus),
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.matrix == IntMatrix::identity(2 * self.genus)
    }

    pub fn apply(&self, h: &H1Class) -> H1Class {
        assert_eq!(self.genus, h.genus, "genus mismatch");
        H1Class {
            genus: self.genus,
            coeffs: self.matrix.mul_vec(&h.coeffs),
        }
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &SpMatrix) -> SpMatrix {
        assert_eq!(self.genus, other.genus, "genus mismatch");
        SpMatrix {
            genus: self.genus,
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// `M^-1 = -J M^T J`.
    pub fn inverse(&self) -> SpMatrix {
        let j = pairing_matrix(self.genus);
        SpMatrix {
            genus: self.genus,
            matrix: j.mul(&self.matrix.transpose()).mul(&j).scale(-1),
        }
    }

    fn image_of_basis(&self, i: usize) -> H1Class {
        H1Class {
            genus: self.genus,
            coeffs: self.matrix.column(i),
        }
    }

    /// Induced action on `Lambda^3 H`.
    pub fn act_wedge3(&self, w: &Wedge3) -> Wedge3 {
        assert_eq!(self.genus, w.genus, "genus mismatch");
        let n = 2 * self.genus;
        let mut out = Wedge3::zero(self.genus);
        for ((i, j, k), &c) in triples(n).into_iter().zip(&w.coeffs) {
            if c != 0 {
                let img = Wedge3::wedge(
                    &self.image_of_basis(i),
                    &self.image_of_basis(j),
                    &self.image_of_basis(k),
                );
                out += &(c * &img);
            }
        }
        out
    }
}

/// Matrix of `x -> x + (x . c) c`.
pub fn transvection(c: &H1Class) -> SpMatrix {
    let g = c.genus;
    let cols: Vec<Vec<i64>> = (0..2 * g)
        .map(|j| {
            let e = H1Class::basis(g, j);
            let t = intersection_unchecked(&e, c);
            (&e + &(t * c)).coeffs
        })
        .collect();
    SpMatrix {
        genus: g,
        matrix: IntMatrix::from_columns(&cols, 2 * g),
    }
}

/// `q ^ h`, the image of `H` in `Lambda^3 H`.
pub fn wedge_q(h: &H1Class) -> Wedge3 {
    let g = h.genus;
    let mut out = Wedge3::zero(g);
    for i in 0..g {
        for (l, &c) in h.coeffs.iter().enumerate() {
            if c != 0 {
                out += &(c * &Wedge3::monomial(g, 2 * i, 2 * i + 1, l));
            }
        }
    }
    out
}

/// The contraction `p : Lambda^3 H -> H`.
pub fn contract_p(w: &Wedge3) -> H1Class {
    let g = w.genus;
    let mut out = H1Class::zero(g);
    for ((i, j, k), &c) in triples(2 * g).into_iter().zip(&w.coeffs) {
        if c == 0 {
            continue;
        }
        out.coeffs[k] += c * basis_pairing(i, j);
        out.coeffs[i] += c * basis_pairing(j, k);
        out.coeffs[j] += c * basis_pairing(k, i);
    }
    out
}

/// The canonical embedding `a^b^c -> a(x)(b^c) + b(x)(c^a) + c(x)(a^b)`.
pub fn embed_iota(w: &Wedge3) -> TensorHW2 {
    let g = w.genus;
    let mut t = TensorHW2::zero(g);
    for ((i, j, k), &c) in triples(2 * g).into_iter().zip(&w.coeffs) {
        if c == 0 {
            continue;
        }
        t.add_term(c, i, &Wedge2::monomial(g, j, k));
        t.add_term(c, j, &Wedge2::monomial(g, k, i));
        t.add_term(c, k, &Wedge2::monomial(g, i, j));
    }
    t
}

/// Matrix of [`embed_iota`] on the standard bases, rows in row-major tensor order.
pub fn iota_matrix(genus: usize) -> IntMatrix {
    let n = 2 * genus;
    let cols: Vec<Vec<i64>> = (0..binom(n, 3))
        .map(|idx| {
            let mut e = Wedge3::zero(genus);
            e.coeffs[idx] = 1;
            embed_iota(&e).flatten()
        })
        .collect();
    IntMatrix::from_columns(&cols, n * binom(n, 2))
}

/// The unique `w` with `embed_iota(w) = t`.
///
/// For `i < j < k` the coordinate `(e_i, e_j ^ e_k)` of `embed_iota(w)` is
/// exactly `w_ijk`, so the candidate is read off directly and then checked.
/// On failure the full system is solved over Z to report whether a rational
/// preimage exists.
pub fn extract_iota_preimage(t: &TensorHW2) -> Result<Wedge3> {
    let g = t.genus;
    let coeffs = triples(2 * g)
        .into_iter()
        .map(|(i, j, k)| t.coeff(i, j, k))
        .collect();
    let candidate = Wedge3 { genus: g, coeffs };
    if embed_iota(&candidate) == *t {
        return Ok(candidate);
    }
    let denominators = match iota_matrix(g).solve_integer(&t.flatten()) {
        Ok(_) => unreachable!("integral preimage must agree with the direct read-off"),
        Err(e) if e.rational_solution => Some(e.denominators),
        Err(_) => None,
    };
    Err(Error::NotInImage { denominators })
}

/// The splitting `Lambda^3 H (x) Q = V(lambda_1) + V(lambda_3)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lambda3Decomposition {
    /// Component in `q ^ H`.
    pub part1: RationalWedge3,
    /// Primitive component, killed by [`contract_p`].
    pub part3: RationalWedge3,
}

pub fn decompose_lambda3(w: &Wedge3) -> Result<Lambda3Decomposition> {
    let g = w.genus;
    if g < 2 {
        return Err(Error::GenusTooSmall {
            genus: g,
            minimum: 2,
        });
    }
    let scaled = wedge_q(&contract_p(w));
    let denom = (g - 1) as i64;
    let part1: Vec<Rational64> = scaled
        .coeffs
        .iter()
        .map(|&c| Rational64::new(c, denom))
        .collect();
    let part3 = w
        .coeffs
        .iter()
        .zip(&part1)
        .map(|(&c, p)| Rational64::from_integer(c) - p)
        .collect();
    Ok(Lambda3Decomposition {
        part1: RationalWedge3 {
            genus: g,
            coeffs: part1,
        },
        part3: RationalWedge3 {
            genus: g,
            coeffs: part3,
        },
    })
}

/// `(g - 1)` times the projector onto `V(lambda_3)`, as an integer matrix.
pub fn scaled_lambda3_projector(genus: usize) -> IntMatrix {
    let n = binom(2 * genus, 3);
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|idx| {
            let mut e = Wedge3::zero(genus);
            e.coeffs[idx] = 1;
            let p1 = wedge_q(&contract_p(&e));
            ((genus as i64 - 1) * &e - p1).coeffs
        })
        .collect();
    IntMatrix::from_columns(&cols, n)
}

/// Canonical representative of `w` modulo `q ^ H`.
pub fn coset_normal_form(w: &Wedge3) -> Result<Wedge3> {
    let g = w.genus;
    if g < 2 {
        return Err(Error::GenusTooSmall {
            genus: g,
            minimum: 2,
        });
    }
    let rows: Vec<Vec<i64>> = (0..2 * g)
        .map(|i| wedge_q(&H1Class::basis(g, i)).coeffs)
        .collect();
    let hnf = IntMatrix::from_rows(&rows).hermite_normal_form();
    Ok(Wedge3 {
        genus: g,
        coeffs: hnf.reduce(&w.coeffs),
    })
}
