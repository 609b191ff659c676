//! Shipped mapping classes of `S_{g,1}` for `g = 2, 3`, and seeded pools of
//! Torelli elements built from them.
//!
//! # File format
//!
//! ```text
//! # comment
//! [entry]
//! name = a1
//! kind = nonseparating-twist      # or separating-twist, bounding-pair, conjugator
//! curve = a1                      # homology class of the curve, 0 if separating
//! g_prime = 1                     # bounding pairs only, with g_double_prime
//! g_double_prime = 1              # and class_a
//! class_a = b2
//! derivation = free text
//! genus = 3                       # the remaining lines form an automorphism record
//! boundary_mode = fixes-relator
//! x1 = x1 | x1
//! y1 = y1*x1^-1 | y1*x1
//! ...
//! [relations]
//! relation = a1 * b1 * a1 == b1 * a1 * b1
//! ```
//!
//! A product `s * t` in a relation means `s` after `t`, and factors may carry
//! an integer exponent (`b2p^-1`). Relations are checked in `Out(F_2g)`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freegroup::{preserves_relator, AutomorphismRecord, RelatorStatus, SurfaceAutomorphism};
use crate::johnson::is_torelli;
use crate::symplectic::{transvection, H1Class};

const GENUS2: &str = include_str!("../data/genus2.cat");
const GENUS3: &str = include_str!("../data/genus3.cat");

pub const SUPPORTED_GENERA: [usize; 2] = [2, 3];

pub const POOL_SEED: u64 = 0x70e1_1135;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EntryKind {
    NonseparatingTwist,
    SeparatingTwist,
    BoundingPair,
    Conjugator,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::NonseparatingTwist => "nonseparating-twist",
            EntryKind::SeparatingTwist => "separating-twist",
            EntryKind::BoundingPair => "bounding-pair",
            EntryKind::Conjugator => "conjugator",
        }
    }
}

impl FromStr for EntryKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nonseparating-twist" => Ok(EntryKind::NonseparatingTwist),
            "separating-twist" => Ok(EntryKind::SeparatingTwist),
            "bounding-pair" => Ok(EntryKind::BoundingPair),
            "conjugator" => Ok(EntryKind::Conjugator),
            _ => Err(Error::Parse(format!("unknown entry kind {s:?}"))),
        }
    }
}

/// Data of a bounding pair `{A, B}` with homology class `[a]`: the two
/// sides of `A u B` in the closed surface have genus `g'` and `g''`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundingPairData {
    pub g_prime: usize,
    pub g_double_prime: usize,
    pub class_a: H1Class,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogueEntry {
    pub name: String,
    pub genus: usize,
    pub kind: EntryKind,
    pub curve: H1Class,
    pub bounding_pair: Option<BoundingPairData>,
    pub derivation: String,
    pub record: AutomorphismRecord,
}

impl CatalogueEntry {
    pub fn automorphism(&self) -> Result<SurfaceAutomorphism> {
        self.record.clone().validate()
    }
}

/// A product of catalogue entries with exponents, composed right to left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Product(pub Vec<(String, i64)>);

impl FromStr for Product {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let mut factors = Vec::new();
        for f in s.split('*').map(str::trim) {
            if f.is_empty() {
                return Err(Error::Parse(format!("empty factor in {s:?}")));
            }
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => (
                    n.trim(),
                    e.trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
                ),
                None => (f, 1),
            };
            factors.push((name.to_string(), exp));
        }
        Ok(Product(factors))
    }
}

impl fmt::Display for Product {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(n, e)| {
                if *e == 1 {
                    n.clone()
                } else {
                    format!("{n}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub lhs: Product,
    pub rhs: Product,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} == {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Catalogue {
    pub genus: usize,
    pub entries: Vec<CatalogueEntry>,
    pub relations: Vec<Relation>,
}

impl Catalogue {
    pub fn get(&self, name: &str) -> Option<&CatalogueEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    pub fn automorphism(&self, name: &str) -> Result<SurfaceAutomorphism> {
        self.get(name)
            .ok_or_else(|| Error::Parse(format!("no catalogue entry named {name:?}")))?
            .automorphism()
    }

    pub fn of_kind(&self, kind: EntryKind) -> impl Iterator<Item = &CatalogueEntry> {
        self.entries.iter().filter(move |e| e.kind == kind)
    }

    /// Evaluates a product of entries.
    pub fn evaluate(&self, product: &Product) -> Result<SurfaceAutomorphism> {
        let mut acc = SurfaceAutomorphism::identity(self.genus);
        for (name, exp) in &product.0 {
            acc = acc.compose(&self.automorphism(name)?.pow(*exp))?;
        }
        Ok(acc)
    }
}

fn parse_entry(lines: &[&str]) -> Result<CatalogueEntry> {
    let mut fields: HashMap<&str, &str> = HashMap::new();
    let mut record_lines = Vec::new();
    for line in lines {
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| Error::Parse(format!("expected `key = value`, got {line:?}")))?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "name" | "kind" | "curve" | "g_prime" | "g_double_prime" | "class_a" | "derivation" => {
                fields.insert(key, value);
            }
            _ => record_lines.push(*line),
        }
    }
    let field = |k: &str| {
        fields
            .get(k)
            .copied()
            .ok_or_else(|| Error::Parse(format!("entry is missing `{k}`")))
    };
    let name = field("name")?.to_string();
    let record = AutomorphismRecord::parse(&record_lines.join("\n"))?;
    let genus = record.genus;
    let kind: EntryKind = field("kind")?.parse()?;
    let curve = H1Class::parse(field("curve")?, genus)?;
    let bounding_pair = if kind == EntryKind::BoundingPair {
        let number = |k: &str| -> Result<usize> {
            field(k)?
                .parse()
                .map_err(|_| Error::Parse(format!("bad `{k}` in entry {name}")))
        };
        Some(BoundingPairData {
            g_prime: number("g_prime")?,
            g_double_prime: number("g_double_prime")?,
            class_a: H1Class::parse(field("class_a")?, genus)?,
        })
    } else {
        None
    };
    Ok(CatalogueEntry {
        name,
        genus,
        kind,
        curve,
        bounding_pair,
        derivation: fields.get("derivation").unwrap_or(&"").to_string(),
        record,
    })
}

/// Parses catalogue text without validating it.
pub fn parse(text: &str, genus: usize) -> Result<Catalogue> {
    enum Section {
        None,
        Entry,
        Relations,
    }
    let mut section = Section::None;
    let mut blocks: Vec<Vec<&str>> = Vec::new();
    let mut relations = Vec::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line {
            "[entry]" => {
                section = Section::Entry;
                blocks.push(Vec::new());
                continue;
            }
            "[relations]" => {
                section = Section::Relations;
                continue;
            }
            _ => {}
        }
        match section {
            Section::None => {
                return Err(Error::Parse(format!("line outside any section: {line:?}")))
            }
            Section::Entry => blocks.last_mut().expect("inside a block").push(line),
            Section::Relations => {
                let body = line
                    .strip_prefix("relation")
                    .and_then(|r| r.trim_start().strip_prefix('='))
                    .ok_or_else(|| {
                        Error::Parse(format!("expected `relation = ...`, got {line:?}"))
                    })?;
                let (lhs, rhs) = body
                    .split_once("==")
                    .ok_or_else(|| Error::Parse(format!("relation without `==`: {body:?}")))?;
                relations.push(Relation {
                    lhs: lhs.parse()?,
                    rhs: rhs.parse()?,
                });
            }
        }
    }
    let entries = blocks
        .iter()
        .map(|b| parse_entry(b))
        .collect::<Result<Vec<_>>>()?;
    Ok(Catalogue {
        genus,
        entries,
        relations,
    })
}

/// Every failed invariant of a single entry; empty when the entry is valid.
pub fn validate(entry: &CatalogueEntry) -> Vec<String> {
    let mut report = entry.record.problems();
    if !report.is_empty() {
        return report;
    }
    let aut = entry.automorphism().expect("validated above");
    if preserves_relator(&aut) != RelatorStatus::Fixed {
        report.push("relator is not fixed exactly".to_string());
    }
    let torelli = is_torelli(&aut);
    match entry.kind {
        EntryKind::NonseparatingTwist => {
            if entry.curve.is_zero() {
                report.push("nonseparating twist with zero curve class".to_string());
            }
            if aut.homology_matrix() != *transvection(&entry.curve).matrix() {
                report.push(format!(
                    "homology action is not the transvection along {}",
                    entry.curve
                ));
            }
        }
        EntryKind::SeparatingTwist => {
            if !entry.curve.is_zero() {
                report.push("separating curve must be null-homologous".to_string());
            }
            if !torelli {
                report.push("separating twist is not Torelli".to_string());
            }
        }
        EntryKind::BoundingPair => {
            if !torelli {
                report.push("bounding pair map is not Torelli".to_string());
            }
            match &entry.bounding_pair {
                None => report.push("bounding pair metadata missing".to_string()),
                Some(bp) => {
                    if bp.g_prime + bp.g_double_prime + 1 != entry.genus {
                        report.push(format!(
                            "g' + g'' = {} but g - 1 = {}",
                            bp.g_prime + bp.g_double_prime,
                            entry.genus - 1
                        ));
                    }
                    if bp.class_a.is_zero() {
                        report.push("bounding pair curves must be nonseparating".to_string());
                    }
                }
            }
        }
        EntryKind::Conjugator => {}
    }
    report
}

/// Entry reports, relation checks and coverage requirements.
pub fn validate_catalogue(cat: &Catalogue) -> Vec<String> {
    let g = cat.genus;
    let mut report = Vec::new();
    for e in &cat.entries {
        if e.genus != g {
            report.push(format!(
                "{}: genus {} in a genus {g} catalogue",
                e.name, e.genus
            ));
            continue;
        }
        report.extend(validate(e).into_iter().map(|r| format!("{}: {r}", e.name)));
    }
    if !report.is_empty() {
        return report;
    }
    for rel in &cat.relations {
        let holds = cat.evaluate(&rel.lhs).and_then(|l| {
            cat.evaluate(&rel.rhs)
                .and_then(|r| l.equals_up_to_inner(&r))
        });
        match holds {
            Ok(true) => {}
            Ok(false) => report.push(format!("relation fails: {rel}")),
            Err(e) => report.push(format!("relation {rel}: {e}")),
        }
    }
    let twists = cat.of_kind(EntryKind::NonseparatingTwist).count();
    if twists < 2 * g + 1 {
        report.push(format!(
            "only {twists} nonseparating twists, need {}",
            2 * g + 1
        ));
    }
    if !cat
        .of_kind(EntryKind::BoundingPair)
        .any(|e| e.bounding_pair.as_ref().is_some_and(|b| b.g_prime == 1))
    {
        report.push("no bounding pair with g' = 1".to_string());
    }
    if cat.of_kind(EntryKind::SeparatingTwist).next().is_none() {
        report.push("no separating twist".to_string());
    }
    report
}

fn source(genus: usize) -> Result<&'static str> {
    match genus {
        2 => Ok(GENUS2),
        3 => Ok(GENUS3),
        _ => Err(Error::UnsupportedGenus(genus)),
    }
}

/// The shipped catalogue, parsed but not validated.
pub fn parse_shipped(genus: usize) -> Result<Catalogue> {
    parse(source(genus)?, genus).map_err(|e| Error::CorruptCatalogue(e.to_string()))
}

/// The shipped catalogue, validated.
pub fn load(genus: usize) -> Result<Catalogue> {
    let cat = parse_shipped(genus)?;
    let report = validate_catalogue(&cat);
    if !report.is_empty() {
        return Err(Error::CorruptCatalogue(report.join("; ")));
    }
    Ok(cat)
}

const MAX_POOL_WORD_LENGTH: usize = 1200;

fn total_length(aut: &SurfaceAutomorphism) -> usize {
    aut.images().iter().map(|w| w.len()).sum()
}

/// A seeded list of Torelli elements. The first is the bounding pair map
/// `bp1`, the second the separating twist `sep1`; the rest are conjugates of
/// earlier elements by short twist products and products of earlier elements.
pub fn torelli_pool(genus: usize, size: usize) -> Result<Vec<SurfaceAutomorphism>> {
    let cat = load(genus)?;
    let mut pool = vec![cat.automorphism("bp1")?, cat.automorphism("sep1")?];
    pool.truncate(size);
    let conjugators: Vec<SurfaceAutomorphism> = cat
        .entries
        .iter()
        .filter(|e| {
            matches!(
                e.kind,
                EntryKind::NonseparatingTwist | EntryKind::Conjugator
            )
        })
        .map(|e| e.automorphism())
        .collect::<Result<_>>()?;
    let mut rng = ChaCha8Rng::seed_from_u64(POOL_SEED);
    while pool.len() < size {
        let candidate = if rng.gen_bool(0.6) {
            let base = pool[rng.gen_range(0..pool.len())].clone();
            let mut c = SurfaceAutomorphism::identity(genus);
            for _ in 0..rng.gen_range(1..=4) {
                let t = conjugators.choose(&mut rng).expect("nonempty catalogue");
                let t = if rng.gen_bool(0.5) {
                    t.clone()
                } else {
                    t.inverse()
                };
                c = c.compose(&t)?;
            }
            base.conjugate_by(&c)?
        } else {
            let a = &pool[rng.gen_range(0..pool.len())];
            let b = &pool[rng.gen_range(0..pool.len())];
            let b = if rng.gen_bool(0.5) {
                b.clone()
            } else {
                b.inverse()
            };
            a.compose(&b)?
        };
        if total_length(&candidate) <= MAX_POOL_WORD_LENGTH && !pool.contains(&candidate) {
            debug_assert!(is_torelli(&candidate));
            pool.push(candidate);
        }
    }
    Ok(pool)
}
