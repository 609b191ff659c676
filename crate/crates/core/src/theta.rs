//! The torsor of `n`-th roots of the canonical bundle, its affine symmetry
//! group `K_n`, and the action of the Torelli group on it.
//!
//! Roots are recorded by their offset from an unnamed base root, a vector in
//! `(Z/n)^2g` over the coordinates dual to `(a1, b1, ...)`. An element of `K_n`
//! acts by `offset -> M offset + t`.

use crate::error::{check_genus, Error, Result};
use crate::freegroup::SurfaceAutomorphism;
use crate::johnson::tau1;
use crate::lattice::IntMatrix;
use crate::symplectic::{contract_p, intersection, pairing_matrix, H1Class, SpMatrix};

fn check_modulus(genus: usize, n: u64) -> Result<()> {
    let twice_euler = 2 * (genus as u64).saturating_sub(1);
    if n == 0 || !twice_euler.is_multiple_of(n) {
        return Err(Error::InvalidModulus { n, twice_euler });
    }
    Ok(())
}

fn reduce_vec(v: &[i64], n: u64) -> Vec<u64> {
    v.iter().map(|&x| x.rem_euclid(n as i64) as u64).collect()
}

fn signed(v: &[u64]) -> Vec<i64> {
    v.iter().map(|&x| x as i64).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootTorsorPoint {
    genus: usize,
    modulus: u64,
    offset: Vec<u64>,
}

impl RootTorsorPoint {
    pub fn new(genus: usize, modulus: u64, offset: &[i64]) -> Result<Self> {
        check_modulus(genus, modulus)?;
        if offset.len() != 2 * genus {
            return Err(Error::Mismatch("offset must have 2g entries".into()));
        }
        Ok(RootTorsorPoint {
            genus,
            modulus,
            offset: reduce_vec(offset, modulus),
        })
    }

    /// The reference root.
    pub fn base(genus: usize, modulus: u64) -> Result<Self> {
        Self::new(genus, modulus, &vec![0; 2 * genus])
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn offset(&self) -> &[u64] {
        &self.offset
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnElement {
    genus: usize,
    modulus: u64,
    sp: IntMatrix,
    translation: Vec<u64>,
}

impl KnElement {
    pub fn new(genus: usize, modulus: u64, sp: &IntMatrix, translation: &[i64]) -> Result<Self> {
        check_modulus(genus, modulus)?;
        if sp.rows() != 2 * genus || sp.cols() != 2 * genus || translation.len() != 2 * genus {
            return Err(Error::Mismatch(
                "K_n element has the wrong dimensions".into(),
            ));
        }
        let m = modulus as i64;
        let sp = sp.reduce_mod(m);
        let j = pairing_matrix(genus);
        if sp.transpose().mul(&j).mul(&sp).reduce_mod(m) != j.reduce_mod(m) {
            return Err(Error::NotSymplectic);
        }
        Ok(KnElement {
            genus,
            modulus,
            sp,
            translation: reduce_vec(translation, modulus),
        })
    }

    pub fn identity(genus: usize, modulus: u64) -> Result<Self> {
        Self::new(
            genus,
            modulus,
            &IntMatrix::identity(2 * genus),
            &vec![0; 2 * genus],
        )
    }

    pub fn translation_by(genus: usize, modulus: u64, t: &[i64]) -> Result<Self> {
        Self::new(genus, modulus, &IntMatrix::identity(2 * genus), t)
    }

    /// Linear part only; the translation of a lift is not determined.
    pub fn from_sp(sp: &SpMatrix, modulus: u64) -> Result<Self> {
        let g = sp.genus();
        Self::new(g, modulus, sp.matrix(), &vec![0; 2 * g])
    }

    /// The element by which a Torelli automorphism acts: a pure translation.
    pub fn from_torelli(aut: &SurfaceAutomorphism, modulus: u64) -> Result<Self> {
        let t = theta_translation(aut, modulus)?;
        Self::translation_by(aut.genus(), modulus, &signed(&t))
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn sp_part(&self) -> &IntMatrix {
        &self.sp
    }

    pub fn translation(&self) -> &[u64] {
        &self.translation
    }

    /// Translation lies in `2 (Z/n)^2g`.
    pub fn is_even(&self) -> bool {
        is_even(&self.translation, self.modulus)
    }

    fn check_same(&self, genus: usize, modulus: u64) -> Result<()> {
        check_genus(self.genus, genus)?;
        if self.modulus != modulus {
            return Err(Error::Mismatch(format!(
                "modulus {} against modulus {}",
                self.modulus, modulus
            )));
        }
        Ok(())
    }

    /// `self . other`: first `other`, then `self`.
    pub fn compose(&self, other: &KnElement) -> Result<KnElement> {
        other.check_same(self.genus, self.modulus)?;
        let m = self.modulus as i64;
        let sp = self.sp.mul(&other.sp).reduce_mod(m);
        let moved = self.sp.mul_vec(&signed(&other.translation));
        let t: Vec<i64> = moved
            .iter()
            .zip(&self.translation)
            .map(|(a, &b)| a + b as i64)
            .collect();
        Ok(KnElement {
            genus: self.genus,
            modulus: self.modulus,
            sp,
            translation: reduce_vec(&t, self.modulus),
        })
    }

    pub fn inverse(&self) -> KnElement {
        let m = self.modulus as i64;
        let j = pairing_matrix(self.genus);
        let inv = j.mul(&self.sp.transpose()).mul(&j).scale(-1).reduce_mod(m);
        let t: Vec<i64> = inv
            .mul_vec(&signed(&self.translation))
            .into_iter()
            .map(|x| -x)
            .collect();
        KnElement {
            genus: self.genus,
            modulus: self.modulus,
            sp: inv,
            translation: reduce_vec(&t, self.modulus),
        }
    }

    pub fn act(&self, root: &RootTorsorPoint) -> Result<RootTorsorPoint> {
        self.check_same(root.genus, root.modulus)?;
        let moved = self.sp.mul_vec(&signed(&root.offset));
        let t: Vec<i64> = moved
            .iter()
            .zip(&self.translation)
            .map(|(a, &b)| a + b as i64)
            .collect();
        Ok(RootTorsorPoint {
            genus: self.genus,
            modulus: self.modulus,
            offset: reduce_vec(&t, self.modulus),
        })
    }
}

pub fn is_even(v: &[u64], modulus: u64) -> bool {
    let d = if modulus.is_multiple_of(2) { 2 } else { 1 };
    v.iter().all(|&x| x % d == 0)
}

/// Poincare dual of `u` in the coordinates dual to `(a1, b1, ...)`:
/// the functional `v -> u . v`.
pub fn poincare_dual(u: &H1Class) -> Vec<i64> {
    let g = u.genus();
    (0..2 * g)
        .map(|k| intersection(u, &H1Class::basis(g, k)).expect("same genus"))
        .collect()
}

/// Translation by which a Torelli automorphism moves every `n`-th root:
/// `PD(2 p(tau))` mod `n`.
pub fn theta_translation(aut: &SurfaceAutomorphism, n: u64) -> Result<Vec<u64>> {
    let g = aut.genus();
    check_modulus(g, n)?;
    if g < 2 {
        return Err(Error::GenusTooSmall {
            genus: g,
            minimum: 2,
        });
    }
    let k = contract_p(&tau1(aut)?.bounded);
    Ok(reduce_vec(&poincare_dual(&(2 * &k)), n))
}

/// Whether the Torelli group acts trivially on `n`-th roots in genus `g`.
pub fn torelli_action_trivial(n: u64, g: usize) -> Result<bool> {
    if g < 3 {
        return Err(Error::GenusTooSmall {
            genus: g,
            minimum: 3,
        });
    }
    check_modulus(g, n)?;
    Ok(n <= 2)
}

/// [`torelli_action_trivial`], confirmed against explicit translations.
pub fn torelli_action_trivial_on_pool(
    n: u64,
    g: usize,
    pool: &[SurfaceAutomorphism],
) -> Result<bool> {
    let claim = torelli_action_trivial(n, g)?;
    let mut observed_trivial = true;
    for aut in pool {
        check_genus(g, aut.genus())?;
        if theta_translation(aut, n)?.iter().any(|&x| x != 0) {
            observed_trivial = false;
        }
    }
    if !pool.is_empty() && observed_trivial != claim {
        return Err(Error::Mismatch(format!(
            "pool translations {} trivial at n = {n}",
            if observed_trivial { "are" } else { "are not" }
        )));
    }
    Ok(claim)
}
