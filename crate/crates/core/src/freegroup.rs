//! Words in the free group `F_2g` on `x1, y1, ..., xg, yg` and automorphisms
//! of it that model mapping classes of the once-bordered surface `S_{g,1}`.
//!
//! Generator index `2i` is `x_{i+1}` and `2i + 1` is `y_{i+1}`, so a letter's
//! index coincides with the index of its homology class in
//! [`crate::symplectic`]. The boundary word is
//! `w = [x1,y1][x2,y2]...[xg,yg]` with `[u,v] = u v u^-1 v^-1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{check_genus, Error, Result};
use crate::lattice::IntMatrix;
use crate::symplectic::{pair_index, H1Class, SpMatrix, Wedge2};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(index: usize, inverse: bool) -> Self {
        Letter { index, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            index: self.index,
            inverse: !self.inverse,
        }
    }

    fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.index.is_multiple_of(2) {
            'x'
        } else {
            'y'
        };
        write!(f, "{kind}{}", self.index / 2 + 1)?;
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

fn parse_generator(label: &str) -> Result<usize> {
    let bad = || Error::Parse(format!("unknown generator {label:?}"));
    let mut chars = label.chars();
    let offset = match chars.next() {
        Some('x') => 0,
        Some('y') => 1,
        _ => return Err(bad()),
    };
    let handle: usize = chars.as_str().parse().map_err(|_| bad())?;
    if handle == 0 {
        return Err(bad());
    }
    Ok(2 * (handle - 1) + offset)
}

/// A freely reduced word. Every constructor reduces, so two words are equal
/// as group elements exactly when they are equal as values.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: usize) -> Self {
        Word {
            letters: vec![Letter::new(index, false)],
        }
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index used, if any.
    pub fn max_index(&self) -> Option<usize> {
        self.letters.iter().map(|l| l.index).max()
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word::from_letters(self.letters.iter().chain(&other.letters).copied())
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(u: &Word, v: &Word) -> Word {
        u.mul(v).mul(&u.inverse()).mul(&v.inverse())
    }

    /// `c self c^-1`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.mul(self).mul(&c.inverse())
    }

    /// Splits the word as `p m p^-1` with `m` cyclically reduced.
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let l = &self.letters;
        let mut k = 0;
        while 2 * k + 1 < l.len() && l[k] == l[l.len() - 1 - k].inv() {
            k += 1;
        }
        (
            Word {
                letters: l[..k].to_vec(),
            },
            Word {
                letters: l[k..l.len() - k].to_vec(),
            },
        )
    }

    pub fn cyclic_reduce(&self) -> Word {
        self.cyclic_decomposition().1
    }

    /// Conjugacy in the free group: cyclic reductions agree up to rotation.
    pub fn is_conjugate_to(&self, other: &Word) -> bool {
        let a = self.cyclic_reduce();
        let b = other.cyclic_reduce();
        if a.len() != b.len() {
            return false;
        }
        if a.is_empty() {
            return true;
        }
        let n = a.len();
        (0..n).any(|r| (0..n).all(|i| a.letters[(i + r) % n] == b.letters[i]))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"x1*y1^-1*x2^3"`; `"1"` or an empty string is the identity.
    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() || compact == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for factor in compact.split('*') {
            if factor == "1" {
                continue;
            }
            let (label, exp) = match factor.split_once('^') {
                Some((label, exp)) => {
                    let e: i64 = exp
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                    (label, e)
                }
                None => (factor, 1),
            };
            let index = parse_generator(label)?;
            let letter = Letter::new(index, exp < 0);
            letters.extend(std::iter::repeat_n(letter, exp.unsigned_abs() as usize));
        }
        Ok(Word::from_letters(letters))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// The boundary word `[x1,y1]...[xg,yg]`.
pub fn relator(genus: usize) -> Word {
    (0..genus).fold(Word::identity(), |acc, i| {
        acc.mul(&Word::commutator(
            &Word::generator(2 * i),
            &Word::generator(2 * i + 1),
        ))
    })
}

fn check_range(word: &Word, genus: usize) -> Result<()> {
    match word.max_index() {
        Some(index) if index >= 2 * genus => Err(Error::GeneratorOutOfRange { index, genus }),
        _ => Ok(()),
    }
}

/// Exponent-sum vector.
pub fn abelianize(word: &Word, genus: usize) -> Result<H1Class> {
    check_range(word, genus)?;
    let mut coords = vec![0; 2 * genus];
    for l in word.letters() {
        coords[l.index] += l.exponent();
    }
    H1Class::from_coords(genus, coords)
}

/// Degree-one and degree-two parts of the Magnus expansion
/// `x_k -> 1 + X_k`, truncated above degree two.
pub(crate) fn magnus2(word: &Word, n: usize) -> (Vec<i64>, IntMatrix) {
    let mut lin = vec![0i64; n];
    let mut quad = IntMatrix::zeros(n, n);
    for l in word.letters() {
        let k = l.index;
        if l.inverse {
            // (1 + L + Q)(1 - X_k + X_k^2)
            for (i, &c) in lin.iter().enumerate() {
                quad[(i, k)] -= c;
            }
            quad[(k, k)] += 1;
            lin[k] -= 1;
        } else {
            for (i, &c) in lin.iter().enumerate() {
                quad[(i, k)] += c;
            }
            lin[k] += 1;
        }
    }
    (lin, quad)
}

/// Class of a word of `F^(2)` in `F^(2)/F^(3) = Lambda^2 H`.
pub fn lcs_class2(word: &Word, genus: usize) -> Result<Wedge2> {
    check_range(word, genus)?;
    let n = 2 * genus;
    let (lin, quad) = magnus2(word, n);
    if lin.iter().any(|&c| c != 0) {
        return Err(Error::NotInCommutatorSubgroup {
            abelianization: lin,
        });
    }
    let mut coeffs = vec![0; n * (n - 1) / 2];
    for i in 0..n {
        for j in i + 1..n {
            debug_assert_eq!(quad[(i, j)], -quad[(j, i)]);
            coeffs[pair_index(n, i, j)] = quad[(i, j)];
        }
    }
    Wedge2::from_coeffs(genus, coeffs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoundaryMode {
    /// Mapping class of `S_{g,1}`: the boundary word is fixed.
    FixesRelator,
    /// Mapping class of the closed surface: the boundary word moves to a conjugate.
    PreservesRelatorConjugacy,
}

impl BoundaryMode {
    pub fn as_str(self) -> &'static str {
        match self {
            BoundaryMode::FixesRelator => "fixes-relator",
            BoundaryMode::PreservesRelatorConjugacy => "preserves-relator-conjugacy",
        }
    }

    fn weaker(self, other: BoundaryMode) -> BoundaryMode {
        self.max(other)
    }
}

impl FromStr for BoundaryMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "fixes-relator" => Ok(BoundaryMode::FixesRelator),
            "preserves-relator-conjugacy" => Ok(BoundaryMode::PreservesRelatorConjugacy),
            other => Err(Error::Parse(format!("unknown boundary mode {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelatorStatus {
    Fixed,
    Conjugate,
    No,
}

impl RelatorStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            RelatorStatus::Fixed => "fixed",
            RelatorStatus::Conjugate => "conjugate",
            RelatorStatus::No => "no",
        }
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inv()) {
        out.pop();
    } else {
        out.push(l);
    }
}

fn substitute(images: &[Word], word: &Word) -> Word {
    let mut out = Vec::new();
    for l in word.letters() {
        let img = &images[l.index].letters;
        if l.inverse {
            img.iter()
                .rev()
                .for_each(|&x| push_reduced(&mut out, x.inv()));
        } else {
            img.iter().for_each(|&x| push_reduced(&mut out, x));
        }
    }
    Word { letters: out }
}

/// Where the boundary word goes under the endomorphism with the given
/// generator images.
pub fn relator_status(genus: usize, images: &[Word]) -> RelatorStatus {
    let w = relator(genus);
    let image = substitute(images, &w);
    if image == w {
        RelatorStatus::Fixed
    } else if image.is_conjugate_to(&w) {
        RelatorStatus::Conjugate
    } else {
        RelatorStatus::No
    }
}

/// Unvalidated automorphism data, as read from a record.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutomorphismRecord {
    pub genus: usize,
    pub mode: BoundaryMode,
    pub images: Vec<Word>,
    pub inverse_images: Vec<Word>,
}

impl AutomorphismRecord {
    /// Every way this record fails to describe a valid automorphism.
    pub fn problems(&self) -> Vec<String> {
        let g = self.genus;
        let mut out = Vec::new();
        if g == 0 {
            out.push("genus must be positive".to_string());
            return out;
        }
        if self.images.len() != 2 * g || self.inverse_images.len() != 2 * g {
            out.push(format!("expected {} generator images", 2 * g));
            return out;
        }
        for (i, w) in self.images.iter().chain(&self.inverse_images).enumerate() {
            if let Err(e) = check_range(w, g) {
                out.push(format!("image {}: {e}", i % (2 * g)));
            }
        }
        if !out.is_empty() {
            return out;
        }
        for i in 0..2 * g {
            let gen = Word::generator(i);
            let forward = substitute(&self.images, &self.inverse_images[i]);
            let backward = substitute(&self.inverse_images, &self.images[i]);
            if forward != gen || backward != gen {
                out.push(format!(
                    "inverse images do not invert the images on generator {}",
                    Letter::new(i, false)
                ));
            }
        }
        match (relator_status(g, &self.images), self.mode) {
            (RelatorStatus::Fixed, _) => {}
            (RelatorStatus::Conjugate, BoundaryMode::PreservesRelatorConjugacy) => {}
            (RelatorStatus::Conjugate, BoundaryMode::FixesRelator) => {
                out.push("relator is only mapped to a conjugate of itself".to_string())
            }
            (RelatorStatus::No, _) => out.push("relator is not preserved".to_string()),
        }
        out
    }

    pub fn validate(self) -> Result<SurfaceAutomorphism> {
        let problems = self.problems();
        if !problems.is_empty() {
            return Err(Error::InvalidAutomorphism(problems.join("; ")));
        }
        Ok(SurfaceAutomorphism {
            genus: self.genus,
            images: self.images,
            inverse_images: self.inverse_images,
            mode: self.mode,
        })
    }

    /// Parses the line-oriented record format (`;` may stand for a newline):
    ///
    /// ```text
    /// genus = 2
    /// boundary_mode = fixes-relator
    /// x1 = x1*y1 | x1*y1^-1
    /// ```
    ///
    /// Generators without a line are fixed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut genus = None;
        let mut mode = BoundaryMode::FixesRelator;
        let mut lines: Vec<(usize, Word, Word)> = Vec::new();
        for raw in text.split(['\n', ';']) {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected `key = value`, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "genus" => {
                    let g: usize = value
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad genus {value:?}")))?;
                    genus = Some(g);
                }
                "boundary_mode" => mode = value.parse()?,
                _ => {
                    let index = parse_generator(key)?;
                    let (img, inv) = value.split_once('|').ok_or_else(|| {
                        Error::Parse(format!(
                            "generator line for {key} needs `image | inverse image`"
                        ))
                    })?;
                    lines.push((index, img.parse()?, inv.parse()?));
                }
            }
        }
        let genus = genus.ok_or_else(|| Error::Parse("record has no genus".into()))?;
        let mut images: Vec<Word> = (0..2 * genus).map(Word::generator).collect();
        let mut inverse_images = images.clone();
        for (index, img, inv) in lines {
            if index >= 2 * genus {
                return Err(Error::GeneratorOutOfRange { index, genus });
            }
            images[index] = img;
            inverse_images[index] = inv;
        }
        Ok(AutomorphismRecord {
            genus,
            mode,
            images,
            inverse_images,
        })
    }
}

impl fmt::Display for AutomorphismRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus = {}", self.genus)?;
        writeln!(f, "boundary_mode = {}", self.mode.as_str())?;
        for (i, (img, inv)) in self.images.iter().zip(&self.inverse_images).enumerate() {
            writeln!(f, "{} = {img} | {inv}", Letter::new(i, false))?;
        }
        Ok(())
    }
}

/// A validated automorphism of `F_2g` preserving the boundary word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfaceAutomorphism {
    genus: usize,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
    mode: BoundaryMode,
}

impl SurfaceAutomorphism {
    pub fn new(
        genus: usize,
        images: Vec<Word>,
        inverse_images: Vec<Word>,
        mode: BoundaryMode,
    ) -> Result<Self> {
        AutomorphismRecord {
            genus,
            mode,
            images,
            inverse_images,
        }
        .validate()
    }

    pub fn parse(text: &str) -> Result<Self> {
        AutomorphismRecord::parse(text)?.validate()
    }

    pub fn identity(genus: usize) -> Self {
        let gens: Vec<Word> = (0..2 * genus).map(Word::generator).collect();
        SurfaceAutomorphism {
            genus,
            images: gens.clone(),
            inverse_images: gens,
            mode: BoundaryMode::FixesRelator,
        }
    }

    /// `gamma -> c gamma c^-1`.
    pub fn inner(genus: usize, c: &Word) -> Result<Self> {
        check_range(c, genus)?;
        let images = (0..2 * genus)
            .map(|i| Word::generator(i).conjugate_by(c))
            .collect();
        let inverse_images = (0..2 * genus)
            .map(|i| Word::generator(i).conjugate_by(&c.inverse()))
            .collect();
        let mode = if relator(genus).conjugate_by(c) == relator(genus) {
            BoundaryMode::FixesRelator
        } else {
            BoundaryMode::PreservesRelatorConjugacy
        };
        Ok(SurfaceAutomorphism {
            genus,
            images,
            inverse_images,
            mode,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn mode(&self) -> BoundaryMode {
        self.mode
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn to_record(&self) -> AutomorphismRecord {
        AutomorphismRecord {
            genus: self.genus,
            mode: self.mode,
            images: self.images.clone(),
            inverse_images: self.inverse_images.clone(),
        }
    }

    pub fn apply(&self, word: &Word) -> Result<Word> {
        check_range(word, self.genus)?;
        Ok(substitute(&self.images, word))
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &SurfaceAutomorphism) -> Result<SurfaceAutomorphism> {
        check_genus(self.genus, other.genus)?;
        let images = other
            .images
            .iter()
            .map(|w| substitute(&self.images, w))
            .collect();
        let inverse_images = self
            .inverse_images
            .iter()
            .map(|w| substitute(&other.inverse_images, w))
            .collect();
        Ok(SurfaceAutomorphism {
            genus: self.genus,
            images,
            inverse_images,
            mode: self.mode.weaker(other.mode),
        })
    }

    pub fn inverse(&self) -> SurfaceAutomorphism {
        SurfaceAutomorphism {
            genus: self.genus,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
            mode: self.mode,
        }
    }

    pub fn pow(&self, n: i64) -> SurfaceAutomorphism {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        (0..n.unsigned_abs()).fold(Self::identity(self.genus), |acc, _| {
            acc.compose(&base).expect("same genus")
        })
    }

    /// `c . self . c^-1`.
    pub fn conjugate_by(&self, c: &SurfaceAutomorphism) -> Result<SurfaceAutomorphism> {
        c.compose(self)?.compose(&c.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i))
    }

    /// The word `c` with `self(gamma) = c gamma c^-1` for all generators, if any.
    pub fn inner_conjugator(&self) -> Option<Word> {
        if self.genus == 0 {
            return Some(Word::identity());
        }
        // self(x1) = p x1^e p^-1 forces e = 1 and c = p x1^k.
        let (p, core) = self.images[0].cyclic_decomposition();
        if core != Word::generator(0) {
            return None;
        }
        let z = p.inverse().mul(&self.images[1]).mul(&p);
        let x1 = Letter::new(0, false);
        let lead = z
            .letters()
            .iter()
            .take_while(|&&l| l == x1 || l == x1.inv())
            .count();
        let k = match z.letters().first() {
            Some(l) if lead > 0 && l.inverse => -(lead as i64),
            _ => lead as i64,
        };
        let c = p.mul(&Word::generator(0).pow(k));
        let all = self
            .images
            .iter()
            .enumerate()
            .all(|(i, w)| *w == Word::generator(i).conjugate_by(&c));
        all.then_some(c)
    }

    /// Equality in `Out(F_2g)`.
    pub fn equals_up_to_inner(&self, other: &SurfaceAutomorphism) -> Result<bool> {
        Ok(self.compose(&other.inverse())?.inner_conjugator().is_some())
    }

    /// Action on `H_1`: column `i` is the abelianized image of generator `i`.
    pub fn homology_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self
            .images
            .iter()
            .map(|w| {
                abelianize(w, self.genus)
                    .expect("validated images stay in range")
                    .coords()
                    .to_vec()
            })
            .collect();
        IntMatrix::from_columns(&cols, 2 * self.genus)
    }

    pub fn sp_matrix(&self) -> SpMatrix {
        SpMatrix::new(self.genus, self.homology_matrix())
            .expect("automorphisms preserving the relator act symplectically")
    }
}

pub fn preserves_relator(aut: &SurfaceAutomorphism) -> RelatorStatus {
    relator_status(aut.genus, &aut.images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn arb_word(gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..gens, any::<bool>()), 0..max_len)
            .prop_map(|ls| Word::from_letters(ls.into_iter().map(|(i, inv)| Letter::new(i, inv))))
    }

    fn raw_letters(gens: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
        prop::collection::vec((0..gens, any::<bool>()), 0..max_len)
            .prop_map(|ls| ls.into_iter().map(|(i, inv)| Letter::new(i, inv)).collect())
    }

    fn twist_b1(genus: usize) -> SurfaceAutomorphism {
        let mut images: Vec<Word> = (0..2 * genus).map(Word::generator).collect();
        let mut inv = images.clone();
        images[0] = w("x1*y1");
        inv[0] = w("x1*y1^-1");
        SurfaceAutomorphism::new(genus, images, inv, BoundaryMode::FixesRelator).unwrap()
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(w("x1*x1^-1"), Word::identity());
        assert_eq!(w("x1*y1*y1^-1*x2"), w("x1*x2"));
        assert_eq!(w("x1*y1*x1^-1*y1^-1").len(), 4);
        assert_eq!(w("x1^3*y2^-2").to_string(), "x1*x1*x1*y2^-1*y2^-1");
        assert_eq!(Word::identity().to_string(), "1");
        assert!("z1".parse::<Word>().is_err());
    }

    #[test]
    fn apply_examples() {
        let t = twist_b1(2);
        assert_eq!(t.apply(&w("x1^-1")).unwrap(), w("y1^-1*x1^-1"));
        let id = SurfaceAutomorphism::identity(2);
        assert_eq!(id.apply(&w("x2*y1")).unwrap(), w("x2*y1"));
        assert!(matches!(
            t.apply(&w("x3")),
            Err(Error::GeneratorOutOfRange { index: 4, genus: 2 })
        ));
    }

    #[test]
    fn compose_examples() {
        let t = twist_b1(2);
        assert_eq!(t.compose(&SurfaceAutomorphism::identity(2)).unwrap(), t);
        assert!(t.compose(&t.inverse()).unwrap().is_identity());
        assert!(t.compose(&twist_b1(3)).is_err());
    }

    #[test]
    fn abelianize_examples() {
        assert!(abelianize(&w("x1*y1*x1^-1*y1^-1"), 2).unwrap().is_zero());
        assert_eq!(
            abelianize(&w("x1^2*y3^-1"), 3).unwrap(),
            H1Class::parse("2*a1 - b3", 3).unwrap()
        );
        assert!(abelianize(&relator(3), 3).unwrap().is_zero());
    }

    #[test]
    fn lcs_examples() {
        let g = 3;
        assert_eq!(
            lcs_class2(&w("x1*y1*x1^-1*y1^-1"), g).unwrap(),
            Wedge2::parse("a1^b1", g).unwrap()
        );
        let c = Word::commutator(&w("x2"), &w("x3^-1"));
        assert_eq!(
            lcs_class2(&c, g).unwrap(),
            Wedge2::parse("-1 * a2^a3", g).unwrap()
        );
        let deep = Word::commutator(&w("x1*y1*x1^-1*y1^-1"), &w("x2"));
        assert!(lcs_class2(&deep, g).unwrap().is_zero());
        assert!(matches!(
            lcs_class2(&w("x1"), g),
            Err(Error::NotInCommutatorSubgroup { .. })
        ));
    }

    #[test]
    fn relator_examples() {
        let g = 2;
        assert_eq!(
            preserves_relator(&SurfaceAutomorphism::identity(g)),
            RelatorStatus::Fixed
        );
        let inner = SurfaceAutomorphism::inner(g, &w("x1")).unwrap();
        assert_eq!(preserves_relator(&inner), RelatorStatus::Conjugate);
        assert_eq!(inner.mode(), BoundaryMode::PreservesRelatorConjugacy);
        let mut images: Vec<Word> = (0..2 * g).map(Word::generator).collect();
        images[0] = w("x1^2");
        assert_eq!(relator_status(g, &images), RelatorStatus::No);
    }

    #[test]
    fn inner_detection() {
        let g = 2;
        for c in ["x1", "y1^-1*x2", "x1^3*y2", "x1^-2*y1*x1"] {
            let inner = SurfaceAutomorphism::inner(g, &w(c)).unwrap();
            assert_eq!(inner.inner_conjugator(), Some(w(c)), "{c}");
        }
        assert_eq!(twist_b1(g).inner_conjugator(), None);
        let t = twist_b1(g);
        let conj = t
            .compose(&SurfaceAutomorphism::inner(g, &w("y2*x1")).unwrap())
            .unwrap();
        assert!(conj.equals_up_to_inner(&t).unwrap());
    }

    #[test]
    fn record_round_trip() {
        let t = twist_b1(2);
        let text = t.to_record().to_string();
        assert_eq!(SurfaceAutomorphism::parse(&text).unwrap(), t);
        let inline = "genus = 2; x1 = x1*y1 | x1*y1^-1";
        assert_eq!(SurfaceAutomorphism::parse(inline).unwrap(), t);
        let broken = "genus = 2; x1 = x1*y1 | x1";
        assert!(matches!(
            SurfaceAutomorphism::parse(broken),
            Err(Error::InvalidAutomorphism(_))
        ));
    }

    #[test]
    fn conjugate_mode_record_needs_declaration() {
        let rec = SurfaceAutomorphism::inner(2, &w("y1")).unwrap().to_record();
        let mut fixed = rec.clone();
        fixed.mode = BoundaryMode::FixesRelator;
        assert!(fixed.validate().is_err());
        assert!(rec.validate().is_ok());
    }

    proptest! {
        #[test]
        fn reduce_is_idempotent_and_shortens(ls in raw_letters(6, 40)) {
            let once = Word::from_letters(ls.clone());
            prop_assert!(once.len() <= ls.len());
            prop_assert_eq!(Word::from_letters(once.letters().to_vec()), once.clone());
            prop_assert!(once.letters().windows(2).all(|p| p[0] != p[1].inv()));
        }

        #[test]
        fn abelianize_is_a_homomorphism(u in arb_word(6, 30), v in arb_word(6, 30)) {
            let lhs = abelianize(&u.mul(&v), 3).unwrap();
            let rhs = abelianize(&u, 3).unwrap() + abelianize(&v, 3).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn lcs_of_commutator_is_wedge(u in arb_word(6, 12), v in arb_word(6, 12)) {
            let g = 3;
            let c = Word::commutator(&u, &v);
            let expected = Wedge2::wedge(&abelianize(&u, g).unwrap(), &abelianize(&v, g).unwrap());
            prop_assert_eq!(lcs_class2(&c, g).unwrap(), expected);
        }

        #[test]
        fn lcs_is_additive(
            pairs in prop::collection::vec((arb_word(6, 6), arb_word(6, 6)), 1..4),
            others in prop::collection::vec((arb_word(6, 6), arb_word(6, 6)), 1..4),
        ) {
            let g = 3;
            let build = |ps: &[(Word, Word)]| ps.iter().fold(Word::identity(), |acc, (a, b)| {
                acc.mul(&Word::commutator(a, b))
            });
            let (u, v) = (build(&pairs), build(&others));
            let lhs = lcs_class2(&u.mul(&v), g).unwrap();
            let rhs = lcs_class2(&u, g).unwrap() + lcs_class2(&v, g).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn automorphism_round_trip(u in arb_word(4, 30), c in arb_word(4, 6)) {
            let g = 2;
            let t = twist_b1(g).compose(&SurfaceAutomorphism::inner(g, &c).unwrap()).unwrap();
            prop_assert_eq!(t.apply(&t.inverse().apply(&u).unwrap()).unwrap(), u.clone());
            prop_assert_eq!(t.inverse().apply(&t.apply(&u).unwrap()).unwrap(), u);
        }

        #[test]
        fn automorphisms_preserve_commutator_depth(a in arb_word(4, 8), b in arb_word(4, 8)) {
            let g = 2;
            let t = twist_b1(g);
            let c = Word::commutator(&a, &b);
            prop_assert!(abelianize(&t.apply(&c).unwrap(), g).unwrap().is_zero());
        }

        #[test]
        fn conjugates_are_detected(u in arb_word(4, 12), c in arb_word(4, 8)) {
            prop_assert!(u.conjugate_by(&c).is_conjugate_to(&u));
        }
    }
}
