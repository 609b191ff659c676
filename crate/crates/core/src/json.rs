//! JSON views shared by the command-line tool and its tests.
//!
//! Every response is an envelope
//! `{"schema_version": 1, "command": ..., "genus": ..., "result": ...}`, or
//! `{"schema_version": 1, "command": ..., "error": {"name": ..., "message": ...}}`
//! on failure. Wedge elements are sparse term lists such as
//! `["1 * a1^b1^b2", "-2 * a1^a2^a3"]`; classes in `H_1` and translations are
//! plain integer arrays over `(a1, b1, ..., ag, bg)`.

use serde::Serialize;

use crate::catalogue::{validate, Catalogue};
use crate::error::{Error, Result};
use crate::freegroup::SurfaceAutomorphism;
use crate::johnson::{psi, rank_h1, tau1, JohnsonValue, PsiValue, Weight};
use crate::symplectic::{decompose_lambda3, Wedge3};
use crate::theta::{is_even, theta_translation};
use crate::torus::{build_ring, extract_f, verify_ring};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    schema_version: u32,
    command: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    genus: Option<usize>,
    result: T,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    name: &'a str,
    message: String,
}

#[derive(Serialize)]
struct ErrorEnvelope<'a> {
    schema_version: u32,
    command: &'a str,
    error: ErrorBody<'a>,
}

fn to_text<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("views serialize");
    s.push('\n');
    s
}

pub fn render<T: Serialize>(command: &str, genus: Option<usize>, result: T) -> String {
    to_text(&Envelope {
        schema_version: SCHEMA_VERSION,
        command,
        genus,
        result,
    })
}

pub fn render_error(command: &str, error: &Error) -> String {
    to_text(&ErrorEnvelope {
        schema_version: SCHEMA_VERSION,
        command,
        error: ErrorBody {
            name: error.name(),
            message: error.to_string(),
        },
    })
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct JohnsonView {
    pub genus: usize,
    pub bounded: Vec<String>,
    pub closed: Vec<String>,
}

impl From<&JohnsonValue> for JohnsonView {
    fn from(v: &JohnsonValue) -> Self {
        JohnsonView {
            genus: v.genus,
            bounded: v.bounded.terms(),
            closed: v.closed.terms(),
        }
    }
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct PsiView {
    pub genus: usize,
    pub modulus: u64,
    pub coords: Vec<u64>,
}

impl From<&PsiValue> for PsiView {
    fn from(v: &PsiValue) -> Self {
        PsiView {
            genus: v.genus,
            modulus: v.modulus,
            coords: v.coords.clone(),
        }
    }
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct ThetaView {
    pub genus: usize,
    pub n: u64,
    pub translation: Vec<u64>,
    pub even: bool,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct DecomposeView {
    pub genus: usize,
    pub input: Vec<String>,
    pub part1: Vec<String>,
    pub part3: Vec<String>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct BasisView {
    pub label: String,
    pub degree: usize,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct ConstantView {
    pub degrees: [usize; 2],
    pub left: String,
    pub right: String,
    pub result: String,
    pub coeff: i64,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct RingView {
    pub genus: usize,
    pub tau: Vec<String>,
    pub basis: Vec<BasisView>,
    pub structure_constants: Vec<ConstantView>,
    pub violations: Vec<String>,
    /// Rows over `H`, columns over the lexicographic basis of `Lambda^2 H`.
    pub f_tensor: Vec<Vec<i64>>,
    pub round_trip: bool,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct RankView {
    pub lambda: &'static str,
    pub r: u64,
    pub n: u64,
    pub rank: u64,
    pub valid_for: &'static str,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct BoundingPairView {
    pub g_prime: usize,
    pub g_double_prime: usize,
    pub class_a: Vec<i64>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct EntryView {
    pub name: String,
    pub kind: &'static str,
    pub curve: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounding_pair: Option<BoundingPairView>,
    pub derivation: String,
    pub report: Vec<String>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct RelationView {
    pub relation: String,
    pub holds: bool,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct CatalogueView {
    pub genus: usize,
    pub valid: bool,
    pub entries: Vec<EntryView>,
    pub relations: Vec<RelationView>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct PoolElementView {
    pub index: usize,
    pub word_length: usize,
    pub tau: Vec<String>,
}

#[derive(Serialize, Debug, PartialEq, Eq)]
pub struct PoolView {
    pub genus: usize,
    pub size: usize,
    pub elements: Vec<PoolElementView>,
}

pub fn tau_view(aut: &SurfaceAutomorphism) -> Result<JohnsonView> {
    Ok(JohnsonView::from(&tau1(aut)?))
}

pub fn psi_view(aut: &SurfaceAutomorphism) -> Result<PsiView> {
    Ok(PsiView::from(&psi(aut)?))
}

pub fn theta_view(aut: &SurfaceAutomorphism, n: u64) -> Result<ThetaView> {
    let translation = theta_translation(aut, n)?;
    Ok(ThetaView {
        genus: aut.genus(),
        n,
        even: is_even(&translation, n),
        translation,
    })
}

pub fn decompose_view(w: &Wedge3) -> Result<DecomposeView> {
    let d = decompose_lambda3(w)?;
    Ok(DecomposeView {
        genus: w.genus(),
        input: w.terms(),
        part1: d.part1.terms(),
        part3: d.part3.terms(),
    })
}

pub fn ring_view(tau: &Wedge3) -> Result<RingView> {
    let ring = build_ring(tau)?;
    let violations: Vec<String> = verify_ring(&ring).iter().map(|v| v.to_string()).collect();
    let f = extract_f(&ring)?;
    let round_trip = crate::symplectic::extract_iota_preimage(&f)? == *tau;
    Ok(RingView {
        genus: ring.genus(),
        tau: tau.terms(),
        basis: (0..ring.dimension())
            .map(|a| BasisView {
                label: ring.label(a),
                degree: ring.degree(a),
            })
            .collect(),
        structure_constants: ring
            .structure_constants()
            .into_iter()
            .map(|(a, b, c, x)| ConstantView {
                degrees: [ring.degree(a), ring.degree(b)],
                left: ring.label(a),
                right: ring.label(b),
                result: ring.label(c),
                coeff: x,
            })
            .collect(),
        violations,
        f_tensor: f.matrix().to_rows(),
        round_trip,
    })
}

pub fn rank_view(weight: Weight, r: u64, n: u64) -> RankView {
    RankView {
        lambda: weight.as_str(),
        r,
        n,
        rank: rank_h1(weight, r, n),
        valid_for: "g >= 3",
    }
}

pub fn catalogue_view(cat: &Catalogue) -> CatalogueView {
    let entries: Vec<EntryView> = cat
        .entries
        .iter()
        .map(|e| EntryView {
            name: e.name.clone(),
            kind: e.kind.as_str(),
            curve: e.curve.coords().to_vec(),
            bounding_pair: e.bounding_pair.as_ref().map(|b| BoundingPairView {
                g_prime: b.g_prime,
                g_double_prime: b.g_double_prime,
                class_a: b.class_a.coords().to_vec(),
            }),
            derivation: e.derivation.clone(),
            report: validate(e),
        })
        .collect();
    let relations: Vec<RelationView> = cat
        .relations
        .iter()
        .map(|rel| RelationView {
            relation: rel.to_string(),
            holds: cat
                .evaluate(&rel.lhs)
                .and_then(|l| {
                    cat.evaluate(&rel.rhs)
                        .and_then(|r| l.equals_up_to_inner(&r))
                })
                .unwrap_or(false),
        })
        .collect();
    let valid = crate::catalogue::validate_catalogue(cat).is_empty();
    CatalogueView {
        genus: cat.genus,
        valid,
        entries,
        relations,
    }
}

pub fn pool_view(genus: usize, pool: &[SurfaceAutomorphism]) -> Result<PoolView> {
    let elements = pool
        .iter()
        .enumerate()
        .map(|(index, aut)| {
            Ok(PoolElementView {
                index,
                word_length: aut.images().iter().map(|w| w.len()).sum(),
                tau: tau1(aut)?.bounded.terms(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PoolView {
        genus,
        size: pool.len(),
        elements,
    })
}
