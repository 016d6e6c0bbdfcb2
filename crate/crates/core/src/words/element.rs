use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Serialize, Serializer};

use super::{type_of, word_mul, Family, Generator, Word, WordType};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// A finite linear combination of words with coefficients in a field.
///
/// Zero coefficients are never stored, so two elements are equal exactly
/// when their term maps are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TElement {
    ctx: FieldCtx,
    d: usize,
    terms: BTreeMap<Word, FieldElement>,
}

impl TElement {
    pub fn zero(ctx: FieldCtx, d: usize) -> Self {
        Self {
            ctx,
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ctx: FieldCtx, d: usize) -> Self {
        Self::from_word(ctx, d, Word::trivial())
    }

    pub fn from_word(ctx: FieldCtx, d: usize, w: Word) -> Self {
        let mut x = Self::zero(ctx, d);
        x.terms.insert(w, ctx.one());
        x
    }

    pub fn generator(ctx: FieldCtx, d: usize, g: Generator) -> Self {
        Self::from_word(ctx, d, Word::generator(g))
    }

    /// `sum_i e_i` or `sum_i E_i`.
    pub fn family_sum(ctx: FieldCtx, d: usize, family: Family) -> Self {
        let mut x = Self::zero(ctx, d);
        for i in 0..=d as u8 {
            x.terms
                .insert(Word::generator(Generator { family, index: i }), ctx.one());
        }
        x
    }

    /// Builds from `(word, coefficient)` pairs, merging repeats.
    pub fn from_terms(
        ctx: FieldCtx,
        d: usize,
        terms: impl IntoIterator<Item = (Word, FieldElement)>,
    ) -> Result<Self> {
        let mut x = Self::zero(ctx, d);
        for (w, c) in terms {
            x.add_term(w, &c)?;
        }
        Ok(x)
    }

    fn add_term(&mut self, w: Word, c: &FieldElement) -> Result<()> {
        if c.ctx() != self.ctx {
            return Err(Error::CtxMismatch(self.ctx, c.ctx()));
        }
        if let Some(m) = w.max_index() {
            if m as usize > self.d {
                return Err(Error::IndexOutOfRange {
                    index: m as usize,
                    max: self.d,
                });
            }
        }
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.get_mut(&w) {
            Some(old) => {
                let s = old.add(c)?;
                if s.is_zero() {
                    self.terms.remove(&w);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(w, c.clone());
            }
        }
        Ok(())
    }

    pub fn ctx(&self) -> FieldCtx {
        self.ctx
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<Word, FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Word) -> FieldElement {
        self.terms
            .get(w)
            .cloned()
            .unwrap_or_else(|| self.ctx.zero())
    }

    fn check_compatible(&self, other: &TElement) -> Result<()> {
        if self.ctx != other.ctx {
            return Err(Error::CtxMismatch(self.ctx, other.ctx));
        }
        if self.d != other.d {
            return Err(Error::DimensionMismatch(format!(
                "d = {} vs d = {}",
                self.d, other.d
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &TElement) -> Result<TElement> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c)?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TElement) -> Result<TElement> {
        self.add(&other.scale(&self.ctx.from_integer(-1))?)
    }

    pub fn scale(&self, c: &FieldElement) -> Result<TElement> {
        let mut out = TElement::zero(self.ctx, self.d);
        for (w, x) in &self.terms {
            out.add_term(w.clone(), &x.mul(c)?)?;
        }
        Ok(out)
    }

    /// Bilinear extension of [`word_mul`].
    pub fn mul(&self, other: &TElement) -> Result<TElement> {
        self.check_compatible(other)?;
        let mut out = TElement::zero(self.ctx, self.d);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some(w) = word_mul(u, v) {
                    out.add_term(w, &a.mul(b)?)?;
                }
            }
        }
        Ok(out)
    }

    /// The `lambda`-homogeneous part.
    pub fn project_component(&self, lambda: &WordType) -> TElement {
        TElement {
            ctx: self.ctx,
            d: self.d,
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| type_of(w) == *lambda)
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
        }
    }

    /// Splits into homogeneous components keyed by type.
    pub fn components(&self) -> BTreeMap<WordType, TElement> {
        let mut out: BTreeMap<WordType, TElement> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(type_of(w))
                .or_insert_with(|| TElement::zero(self.ctx, self.d))
                .terms
                .insert(w.clone(), c.clone());
        }
        out
    }

    /// `Some(lambda)` when every term has type `lambda` (zero gives `None`).
    pub fn homogeneous_type(&self) -> Option<WordType> {
        let mut types = self.terms.keys().map(type_of);
        let first = types.next()?;
        types.all(|t| t == first).then_some(first)
    }

    /// Parses the JSON term-list form `[{"word": "...", "coeff": "..."}]`.
    pub fn from_json(ctx: FieldCtx, d: usize, value: &serde_json::Value) -> Result<TElement> {
        #[derive(Deserialize)]
        struct Term {
            word: String,
            coeff: serde_json::Value,
        }
        let terms: Vec<Term> =
            serde_json::from_value(value.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let mut x = TElement::zero(ctx, d);
        for t in terms {
            let coeff = match &t.coeff {
                serde_json::Value::String(s) => ctx.parse_element(s)?,
                serde_json::Value::Number(n) => ctx.parse_element(&n.to_string())?,
                other => return Err(Error::Parse(format!("bad coefficient {other}"))),
            };
            x.add_term(t.word.parse()?, &coeff)?;
        }
        Ok(x)
    }
}

impl Serialize for TElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            word: &'a Word,
            coeff: &'a FieldElement,
        }
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (word, coeff) in &self.terms {
            seq.serialize_element(&Term { word, coeff })?;
        }
        seq.end()
    }
}

impl fmt::Display for TElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if c.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}
