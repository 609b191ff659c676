//! The Johnson homomorphism computed through the lower central series of
//! the free group.
//!
//! For a Torelli automorphism `phi` and generator `gamma`, the word
//! `phi(gamma) gamma^-1` lies in `F^(2)`; its class in `Lambda^2 H` defines a
//! map `H -> Lambda^2 H`. Dualizing the source by `u -> (v -> u . v)` gives a
//! tensor in `H (x) Lambda^2 H`, and that tensor is `iota(tau(phi))`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::freegroup::{lcs_class2, BoundaryMode, SurfaceAutomorphism, Word};
use crate::lattice::IntMatrix;
use crate::symplectic::{
    contract_p, coset_normal_form, extract_iota_preimage, H1Class, TensorHW2, Wedge3,
};

pub fn is_torelli(aut: &SurfaceAutomorphism) -> bool {
    aut.homology_matrix() == IntMatrix::identity(2 * aut.genus())
}

/// Class `u` with `u . v` equal to the `j`-th coordinate of `v`.
fn coordinate_dual(genus: usize, j: usize) -> H1Class {
    if j.is_multiple_of(2) {
        -H1Class::basis(genus, j + 1)
    } else {
        H1Class::basis(genus, j - 1)
    }
}

/// The tensor `sum_j dual(e_j) (x) [phi(gamma_j) gamma_j^-1]`.
pub fn johnson_tensor(aut: &SurfaceAutomorphism) -> Result<TensorHW2> {
    if aut.mode() != BoundaryMode::FixesRelator {
        return Err(Error::RelatorNotFixed);
    }
    if !is_torelli(aut) {
        return Err(Error::NotTorelli);
    }
    let g = aut.genus();
    let mut t = TensorHW2::zero(g);
    for (j, image) in aut.images().iter().enumerate() {
        let defect = image.mul(&Word::generator(j).inverse());
        let c = lcs_class2(&defect, g)?;
        t.add_tensor(&coordinate_dual(g, j), &c);
    }
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JohnsonValue {
    pub genus: usize,
    /// Value in `Lambda^3 H` for the bordered surface.
    pub bounded: Wedge3,
    /// Normal form of `bounded` modulo `q ^ H`.
    pub closed: Wedge3,
}

pub fn tau1(aut: &SurfaceAutomorphism) -> Result<JohnsonValue> {
    let bounded = extract_iota_preimage(&johnson_tensor(aut)?)?;
    let closed = if aut.genus() >= 2 {
        coset_normal_form(&bounded)?
    } else {
        bounded.clone()
    };
    Ok(JohnsonValue {
        genus: aut.genus(),
        bounded,
        closed,
    })
}

pub fn tau_closed(aut: &SurfaceAutomorphism) -> Result<Wedge3> {
    Ok(tau1(aut)?.closed)
}

/// An element of `H_1(S, Z/(g-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PsiValue {
    pub genus: usize,
    pub modulus: u64,
    pub coords: Vec<u64>,
}

impl PsiValue {
    pub fn from_class(h: &H1Class, modulus: u64) -> Self {
        let m = modulus as i64;
        PsiValue {
            genus: h.genus(),
            modulus,
            coords: h.coords().iter().map(|&c| c.rem_euclid(m) as u64).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &PsiValue) -> PsiValue {
        assert_eq!((self.genus, self.modulus), (other.genus, other.modulus));
        PsiValue {
            genus: self.genus,
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| (a + b) % self.modulus)
                .collect(),
        }
    }
}

/// `p(tau(phi))` reduced mod `g - 1`; independent of the coset representative.
pub fn psi(aut: &SurfaceAutomorphism) -> Result<PsiValue> {
    let g = aut.genus();
    if g < 2 {
        return Err(Error::GenusTooSmall {
            genus: g,
            minimum: 2,
        });
    }
    let tau = tau1(aut)?;
    Ok(PsiValue::from_class(
        &contract_p(&tau.bounded),
        g as u64 - 1,
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Lambda1,
    Lambda3,
    Other,
}

impl FromStr for Weight {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lambda1" => Ok(Weight::Lambda1),
            "lambda3" => Ok(Weight::Lambda3),
            "other" => Ok(Weight::Other),
            _ => Err(Error::Parse(format!("unknown weight {s:?}"))),
        }
    }
}

impl Weight {
    pub fn as_str(self) -> &'static str {
        match self {
            Weight::Lambda1 => "lambda1",
            Weight::Lambda3 => "lambda3",
            Weight::Other => "other",
        }
    }
}

/// Rational rank of the first cohomology of the level-L mapping class group
/// with `r` boundary components and `n` punctures, coefficients in `V(lambda)`,
/// for `g >= 3`.
pub fn rank_h1(weight: Weight, r: u64, n: u64) -> u64 {
    match weight {
        Weight::Lambda1 => r + n,
        Weight::Lambda3 => 1,
        Weight::Other => 0,
    }
}

/// Abelian-group rank of a list of Johnson values.
pub fn value_rank(values: &[Wedge3]) -> usize {
    if values.is_empty() {
        return 0;
    }
    let rows: Vec<Vec<i64>> = values.iter().map(|w| w.coeffs().to_vec()).collect();
    IntMatrix::from_rows(&rows).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::intersection;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn coordinate_dual_reads_coordinates() {
        let g = 3;
        for j in 0..2 * g {
            let u = coordinate_dual(g, j);
            for k in 0..2 * g {
                let expected = i64::from(j == k);
                assert_eq!(intersection(&u, &H1Class::basis(g, k)).unwrap(), expected);
            }
        }
    }

    #[test]
    fn identity_has_zero_tau() {
        let id = SurfaceAutomorphism::identity(3);
        assert!(is_torelli(&id));
        let v = tau1(&id).unwrap();
        assert!(v.bounded.is_zero() && v.closed.is_zero());
        assert!(psi(&id).unwrap().is_zero());
    }

    #[test]
    fn twist_is_not_torelli() {
        let g = 2;
        let mut images: Vec<Word> = (0..2 * g).map(Word::generator).collect();
        let mut inv = images.clone();
        images[1] = w("y1*x1^-1");
        inv[1] = w("y1*x1");
        let t = SurfaceAutomorphism::new(g, images, inv, BoundaryMode::FixesRelator).unwrap();
        assert!(!is_torelli(&t));
        assert_eq!(tau1(&t), Err(Error::NotTorelli));
    }

    #[test]
    fn inner_by_relator_is_separating_and_tau_free() {
        // conjugation by the boundary word is the twist about the boundary
        let g = 2;
        let rel = crate::freegroup::relator(g);
        let inner = SurfaceAutomorphism::inner(g, &rel).unwrap();
        assert_eq!(inner.mode(), BoundaryMode::FixesRelator);
        assert!(tau1(&inner).unwrap().bounded.is_zero());
    }

    #[test]
    fn conjugacy_mode_is_rejected() {
        let inner = SurfaceAutomorphism::inner(2, &w("x1")).unwrap();
        assert_eq!(tau1(&inner), Err(Error::RelatorNotFixed));
    }

    #[test]
    fn rank_table() {
        assert_eq!(rank_h1(Weight::Lambda3, 0, 0), 1);
        assert_eq!(rank_h1(Weight::Lambda1, 2, 1), 3);
        assert_eq!(rank_h1(Weight::Other, 5, 5), 0);
        assert_eq!("lambda3".parse::<Weight>().unwrap(), Weight::Lambda3);
        assert!("lambda2".parse::<Weight>().is_err());
    }
}
