//! Exact computations with the Johnson homomorphism of the Torelli group.
//!
//! Mapping classes of a once-bordered surface are given as automorphisms of
//! the free group `F_2g` ([`freegroup`]). From those the crate computes the
//! Johnson value in `Lambda^3 H` ([`johnson`]), the cohomology ring of the
//! mapping torus ([`torus`]) and the action on `n`-th roots of the canonical
//! bundle ([`theta`]). [`catalogue`] ships validated twists and bounding pair
//! maps in genus 2 and 3.

pub mod catalogue;
pub mod error;
pub mod freegroup;
pub mod johnson;
pub mod json;
pub mod lattice;
pub mod symplectic;
pub mod theta;
pub mod torus;

pub use catalogue::{load, torelli_pool, Catalogue, CatalogueEntry, EntryKind};
pub use error::{Error, Result};
pub use freegroup::{
    abelianize, lcs_class2, AutomorphismRecord, BoundaryMode, SurfaceAutomorphism, Word,
};
pub use johnson::{is_torelli, psi, rank_h1, tau1, tau_closed, JohnsonValue, PsiValue, Weight};
pub use lattice::IntMatrix;
pub use symplectic::{
    contract_p, decompose_lambda3, embed_iota, extract_iota_preimage, wedge_q, H1Class, SpMatrix,
    TensorHW2, Wedge2, Wedge3,
};
pub use theta::{theta_translation, torelli_action_trivial, KnElement, RootTorsorPoint};
pub use torus::{build_ring, extract_f, verify_ring, TorusRing};
