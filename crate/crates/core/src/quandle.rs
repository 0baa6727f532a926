//! The free quandle on `n` generators, realised inside the conjugation
//! quandle of `F_n`.
//!
//! An element `(w, j)` stands for the conjugate `w x_j w^-1`; the operation is
//! `e(a * b) = e(b) e(a) e(b)^-1`. Since the centraliser of `x_j` in the free
//! group is generated by `x_j`, two pairs name the same element exactly when
//! their conjugators differ by trailing powers of `x_j`. Dropping those gives
//! a canonical form.

use std::fmt;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::free_group::FreeWord;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuandleElement {
    conj: FreeWord,
    gen: usize,
}

impl QuandleElement {
    pub fn new(conj: FreeWord, gen: usize) -> Result<Self> {
        let n = conj.n();
        if gen == 0 || gen > n {
            return Err(Error::GenOutOfRange { gen, n });
        }
        let letters = conj.letters();
        let keep = letters
            .iter()
            .rposition(|&k| k.unsigned_abs() as usize != gen)
            .map_or(0, |p| p + 1);
        let conj = FreeWord::reduce(&letters[..keep], n)?;
        Ok(Self { conj, gen })
    }

    pub fn generator(n: usize, gen: usize) -> Result<Self> {
        Self::new(FreeWord::identity(n), gen)
    }

    /// The generator tuple `(q_1, ..., q_n)`.
    pub fn generators(n: usize) -> Vec<Self> {
        (1..=n)
            .map(|g| Self {
                conj: FreeWord::identity(n),
                gen: g,
            })
            .collect()
    }

    /// Parses `"w * q<k>"`, or a bare `"q<k>"` for an empty conjugator.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let text = text.trim();
        let (conj, gen) = match text.rsplit_once('*') {
            Some((w, q)) => (FreeWord::parse(w, n)?, q.trim()),
            None => (FreeWord::identity(n), text),
        };
        let index = gen
            .strip_prefix('q')
            .filter(|s| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| Error::MalformedToken(gen.to_string()))?;
        let gen = index
            .parse()
            .map_err(|_| Error::MalformedToken(gen.to_string()))?;
        Self::new(conj, gen)
    }

    pub fn n(&self) -> usize {
        self.conj.n()
    }

    pub fn conj(&self) -> &FreeWord {
        &self.conj
    }

    pub fn gen(&self) -> usize {
        self.gen
    }

    /// The conjugate `w x_j w^-1` in `F_n`.
    pub fn embed(&self) -> FreeWord {
        let x = FreeWord::generator(self.n(), self.gen).expect("generator in range");
        self.conj.conjugate(&x).expect("same rank")
    }

    /// `self * other`: conjugate `self` by `other`.
    pub fn op(&self, other: &QuandleElement) -> Result<QuandleElement> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Self::new(other.embed().multiply(&self.conj)?, self.gen)
    }

    /// The right inverse of [`QuandleElement::op`]:
    /// `a.op(b).unop(b) == a` and `a.unop(b).op(b) == a`.
    pub fn unop(&self, other: &QuandleElement) -> Result<QuandleElement> {
        if self.n() != other.n() {
            return Err(Error::RankMismatch(self.n(), other.n()));
        }
        Self::new(other.embed().invert().multiply(&self.conj)?, self.gen)
    }
}

impl fmt::Display for QuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.conj.is_empty() {
            write!(f, "q{}", self.gen)
        } else {
            write!(f, "{} * q{}", self.conj, self.gen)
        }
    }
}

/// Applies one braid letter to a tuple in place. `+i` sends
/// `(q_i, q_{i+1})` to `(q_{i+1} * q_i, q_i)`; `-i` undoes it.
pub fn act_letter(tuple: &mut [QuandleElement], k: i32) {
    let i = k.unsigned_abs() as usize;
    assert!(k != 0 && i < tuple.len(), "letter {k} out of range");
    let (a, b) = (&tuple[i - 1], &tuple[i]);
    let (new_a, new_b) = if k > 0 {
        (b.op(a).expect("same rank"), a.clone())
    } else {
        (b.clone(), a.unop(b).expect("same rank"))
    };
    tuple[i - 1] = new_a;
    tuple[i] = new_b;
}

/// The braid action on `n`-tuples of quandle elements, letters applied left
/// to right.
pub fn braid_act(word: &BraidWord, tuple: &[QuandleElement]) -> Result<Vec<QuandleElement>> {
    if tuple.len() != word.n() {
        return Err(Error::StrandMismatch(word.n(), tuple.len()));
    }
    if let Some(bad) = tuple.iter().find(|q| q.n() != word.n()) {
        return Err(Error::RankMismatch(word.n(), bad.n()));
    }
    let mut out = tuple.to_vec();
    for &k in word.letters() {
        act_letter(&mut out, k);
    }
    Ok(out)
}
