//! Words in the free algebra generated by two families of mutually
//! orthogonal idempotents `e_0..e_d` (nonstarred) and `E_0..E_d` (starred).
//!
//! A word alternates between the two families, so it is fully described by
//! the family of its first letter and its index sequence. Words form a basis
//! of the algebra; see [`TElement`] for linear combinations.

mod element;
mod zigzag;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub use element::TElement;
pub use zigzag::{
    enumerate_zigzag, is_bracket_zigzag, is_zigzag, is_zigzag_via_signs, kappa_candidates, kappa_of,
};

/// Which idempotent family a generator belongs to. Starred sorts first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Starred,
    Nonstarred,
}

impl Family {
    pub fn other(self) -> Family {
        match self {
            Family::Starred => Family::Nonstarred,
            Family::Nonstarred => Family::Starred,
        }
    }
}

/// An idempotent generator `e_i` or `E_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub family: Family,
    pub index: u8,
}

impl Generator {
    pub fn starred(index: u8) -> Self {
        Self {
            family: Family::Starred,
            index,
        }
    }

    pub fn nonstarred(index: u8) -> Self {
        Self {
            family: Family::Nonstarred,
            index,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::Starred => write!(f, "E{}", self.index),
            Family::Nonstarred => write!(f, "e{}", self.index),
        }
    }
}

impl FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let family = match s.chars().next() {
            Some('E') => Family::Starred,
            Some('e') => Family::Nonstarred,
            _ => return Err(Error::Parse(format!("bad generator {s:?}"))),
        };
        let index = s[1..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad generator {s:?}")))?;
        Ok(Generator { family, index })
    }
}

/// A word `g_1 g_2 ... g_n`; the empty word is the identity.
///
/// Families alternate, so only the first family is stored. The trivial
/// word always carries `Family::Starred` to keep equality structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    begin: Family,
    indices: Vec<u8>,
}

impl Word {
    pub fn trivial() -> Self {
        Self {
            begin: Family::Starred,
            indices: Vec::new(),
        }
    }

    pub fn new(begin: Family, indices: Vec<u8>) -> Self {
        if indices.is_empty() {
            return Self::trivial();
        }
        Self { begin, indices }
    }

    pub fn generator(g: Generator) -> Self {
        Self::new(g.family, vec![g.index])
    }

    /// Builds a word from generators; fails if two neighbours share a family.
    pub fn from_generators(gens: &[Generator]) -> Result<Self> {
        for w in gens.windows(2) {
            if w[0].family == w[1].family {
                return Err(Error::Parse(format!(
                    "generators {} and {} are not alternating",
                    w[0], w[1]
                )));
            }
        }
        Ok(match gens.first() {
            None => Self::trivial(),
            Some(g) => Self::new(g.family, gens.iter().map(|g| g.index).collect()),
        })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[u8] {
        &self.indices
    }

    /// Family of the first letter; meaningless for the trivial word.
    pub fn begin_family(&self) -> Family {
        self.begin
    }

    /// Family of the letter at 0-based `pos`.
    pub fn family_at(&self, pos: usize) -> Family {
        if pos.is_multiple_of(2) {
            self.begin
        } else {
            self.begin.other()
        }
    }

    pub fn generator_at(&self, pos: usize) -> Generator {
        Generator {
            family: self.family_at(pos),
            index: self.indices[pos],
        }
    }

    pub fn generators(&self) -> impl Iterator<Item = Generator> + '_ {
        (0..self.len()).map(|i| self.generator_at(i))
    }

    pub fn begin(&self) -> Option<Generator> {
        (!self.is_trivial()).then(|| self.generator_at(0))
    }

    pub fn end(&self) -> Option<Generator> {
        (!self.is_trivial()).then(|| self.generator_at(self.len() - 1))
    }

    pub fn max_index(&self) -> Option<u8> {
        self.indices.iter().copied().max()
    }

    /// Number of starred letters.
    pub fn star_length(&self) -> usize {
        self.generators()
            .filter(|g| g.family == Family::Starred)
            .count()
    }

    pub fn is_constant(&self) -> bool {
        self.indices.windows(2).all(|w| w[0] == w[1])
    }

    pub fn word_type(&self) -> WordType {
        type_of(self)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then(self.begin.cmp(&other.begin))
            .then_with(|| self.indices.cmp(&other.indices))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "1");
        }
        for (i, g) in self.generators().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Parses `"E0 e2 E0"`, `"E0e2E0"` or `"1"` for the trivial word.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(Word::trivial());
        }
        let mut gens = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            rest = rest.trim_start();
            let digits_end = rest[1..]
                .find(|c: char| !c.is_ascii_digit())
                .map_or(rest.len(), |k| k + 1);
            if digits_end == 1 {
                return Err(Error::Parse(format!("bad word {s:?}")));
            }
            gens.push(rest[..digits_end].parse::<Generator>()?);
            rest = &rest[digits_end..];
        }
        Word::from_generators(&gens)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Product of two words: the identity, an alternating concatenation, a
/// merge of equal boundary letters, or zero (`None`).
pub fn word_mul(u: &Word, v: &Word) -> Option<Word> {
    if u.is_trivial() {
        return Some(v.clone());
    }
    if v.is_trivial() {
        return Some(u.clone());
    }
    let (end, begin) = (u.end().unwrap(), v.begin().unwrap());
    let mut indices = u.indices.clone();
    if end.family != begin.family {
        indices.extend_from_slice(&v.indices);
    } else if end.index == begin.index {
        indices.extend_from_slice(&v.indices[1..]);
    } else {
        return None;
    }
    Some(Word::new(u.begin, indices))
}

/// Equivalence class of words with equal length, first letter and last letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WordType {
    Trivial,
    Nontrivial {
        length: usize,
        begin: Generator,
        end: Generator,
    },
}

impl WordType {
    /// The type `[n]`: length `2n+1`, beginning and ending with `E0`.
    pub fn bracket(n: usize) -> Self {
        WordType::Nontrivial {
            length: 2 * n + 1,
            begin: Generator::starred(0),
            end: Generator::starred(0),
        }
    }

    /// `Some(n)` when this is `[n]`.
    pub fn as_bracket(&self) -> Option<usize> {
        match *self {
            WordType::Nontrivial { length, begin, end }
                if begin == Generator::starred(0) && end == begin && length % 2 == 1 =>
            {
                Some(length / 2)
            }
            _ => None,
        }
    }

    pub fn length(&self) -> usize {
        match self {
            WordType::Trivial => 0,
            WordType::Nontrivial { length, .. } => *length,
        }
    }

    pub fn begin(&self) -> Option<Generator> {
        match self {
            WordType::Trivial => None,
            WordType::Nontrivial { begin, .. } => Some(*begin),
        }
    }

    pub fn end(&self) -> Option<Generator> {
        match self {
            WordType::Trivial => None,
            WordType::Nontrivial { end, .. } => Some(*end),
        }
    }

    /// Checks that some word has this type and that indices fit `d`.
    pub fn validate(&self, d: usize) -> Result<()> {
        let WordType::Nontrivial { length, begin, end } = *self else {
            return Ok(());
        };
        if length == 0 {
            return Err(Error::InconsistentType(
                "nontrivial type of length 0".into(),
            ));
        }
        let expected_end = if length % 2 == 1 {
            begin.family
        } else {
            begin.family.other()
        };
        if end.family != expected_end {
            return Err(Error::InconsistentType(format!(
                "a word of length {length} starting with {begin} cannot end with {end}"
            )));
        }
        if length == 1 && begin != end {
            return Err(Error::InconsistentType(format!(
                "length-1 type must begin and end with the same generator, got {begin}, {end}"
            )));
        }
        if begin.index as usize > d || end.index as usize > d {
            return Err(Error::InconsistentType(format!(
                "generator index exceeds d = {d}"
            )));
        }
        Ok(())
    }

    /// Number of words of this type, i.e. `dim T_lambda`.
    pub fn dimension(&self, d: usize) -> usize {
        match self.length() {
            0 | 1 => 1,
            n => (d + 1).pow((n - 2) as u32),
        }
    }

    /// Position of `w` (assumed of this type) in [`enumerate_words`] order.
    pub fn position_of(&self, w: &Word, d: usize) -> usize {
        let n = w.len();
        if n <= 2 {
            return 0;
        }
        w.indices[1..n - 1]
            .iter()
            .fold(0, |acc, &i| acc * (d + 1) + i as usize)
    }

    /// Every consistent type of length `1..=max_length` for indices `0..=d`,
    /// sorted; the trivial type is not included.
    pub fn all_up_to(max_length: usize, d: usize) -> Vec<WordType> {
        let mut out = Vec::new();
        for length in 1..=max_length {
            for fam in [Family::Starred, Family::Nonstarred] {
                for b in 0..=d as u8 {
                    let begin = Generator {
                        family: fam,
                        index: b,
                    };
                    let end_family = if length % 2 == 1 { fam } else { fam.other() };
                    for e in 0..=d as u8 {
                        let end = Generator {
                            family: end_family,
                            index: e,
                        };
                        if length == 1 && begin != end {
                            continue;
                        }
                        out.push(WordType::Nontrivial { length, begin, end });
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for WordType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_bracket() {
            return write!(f, "[{n}]");
        }
        match self {
            WordType::Trivial => write!(f, "trivial"),
            WordType::Nontrivial { length, begin, end } => write!(f, "({length},{begin},{end})"),
        }
    }
}

/// Accepts `n=2`, `[2]`, `trivial`, `(5,E0,E1)` and
/// `length=5,begin=E0,end=E1`.
impl FromStr for WordType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad type {s:?}"));
        let bracket = |n: &str| {
            n.trim()
                .parse::<usize>()
                .map(WordType::bracket)
                .map_err(|_| bad())
        };
        if let Some(n) = s.strip_prefix("n=") {
            return bracket(n);
        }
        if let Some(n) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            return bracket(n);
        }
        if s == "trivial" || s == "1" || s == "length=0" {
            return Ok(WordType::Trivial);
        }
        let (length, begin, end) =
            if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
                let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
                let [l, b, e] = parts[..] else {
                    return Err(bad());
                };
                (Some(l), Some(b), Some(e))
            } else {
                let (mut l, mut b, mut e) = (None, None, None);
                for part in s.split(',') {
                    let (k, v) = part.split_once('=').ok_or_else(bad)?;
                    match k.trim() {
                        "length" => l = Some(v.trim()),
                        "begin" => b = Some(v.trim()),
                        "end" => e = Some(v.trim()),
                        _ => return Err(bad()),
                    }
                }
                (l, b, e)
            };
        let (Some(l), Some(b), Some(e)) = (length, begin, end) else {
            return Err(bad());
        };
        let t = WordType::Nontrivial {
            length: l.parse().map_err(|_| bad())?,
            begin: b.parse()?,
            end: e.parse()?,
        };
        // reject inconsistent families and lengths
        t.validate(usize::from(u8::MAX))?;
        Ok(t)
    }
}

pub fn type_of(w: &Word) -> WordType {
    match (w.begin(), w.end()) {
        (Some(begin), Some(end)) => WordType::Nontrivial {
            length: w.len(),
            begin,
            end,
        },
        _ => WordType::Trivial,
    }
}

/// All words of type `lambda`, sorted lexicographically by index tuple.
pub fn enumerate_words(lambda: &WordType, d: usize) -> Result<Vec<Word>> {
    lambda.validate(d)?;
    let WordType::Nontrivial { length, begin, end } = *lambda else {
        return Ok(vec![Word::trivial()]);
    };
    if length == 1 {
        return Ok(vec![Word::generator(begin)]);
    }
    let interior = length - 2;
    let total = lambda.dimension(d);
    let mut out = Vec::with_capacity(total);
    let mut digits = vec![0u8; interior];
    for _ in 0..total {
        let mut idx = Vec::with_capacity(length);
        idx.push(begin.index);
        idx.extend_from_slice(&digits);
        idx.push(end.index);
        out.push(Word::new(begin.family, idx));
        // odometer increment, last digit fastest
        for k in (0..interior).rev() {
            if (digits[k] as usize) < d {
                digits[k] += 1;
                break;
            }
            digits[k] = 0;
        }
    }
    Ok(out)
}
