//! Braid words over the Artin generators.
//!
//! A word is a sequence of signed letters: `+i` is the positive crossing of
//! the strands at positions `i` and `i + 1`, `-i` its inverse. Words are only
//! ever simplified by cancelling `k, -k` pairs at a composition seam. Equality
//! of braids is decided through the (faithful) Artin action on the free group,
//! see [`crate::free_group::EndoImages::artin_image`].

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::free_group::EndoImages;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    n: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    /// The identity braid on `n` strands.
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::BadStrandCount(n));
        }
        Ok(Self {
            n,
            letters: Vec::new(),
        })
    }

    pub fn new(n: usize, letters: Vec<i32>) -> Result<Self> {
        let mut word = Self::identity(n)?;
        for letter in letters {
            word.push(letter)?;
        }
        Ok(word)
    }

    /// Parses whitespace-separated signed integers, e.g. `"1 -2 1"`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut word = Self::identity(n)?;
        for token in text.split_whitespace() {
            let letter: i64 = token
                .parse()
                .map_err(|_| Error::MalformedToken(token.to_string()))?;
            if letter == 0 || letter.unsigned_abs() >= n as u64 {
                return Err(Error::LetterOutOfRange { letter, n });
            }
            word.letters.push(letter as i32);
        }
        Ok(word)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Appends a letter without any cancellation.
    pub fn push(&mut self, letter: i32) -> Result<()> {
        if letter == 0 || letter.unsigned_abs() as usize >= self.n {
            return Err(Error::LetterOutOfRange {
                letter: letter.into(),
                n: self.n,
            });
        }
        self.letters.push(letter);
        Ok(())
    }

    /// Stacks `other` below `self`, cancelling inverse pairs at the seam only.
    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        let mut letters = self.letters.clone();
        let mut rest = other.letters.iter().copied().peekable();
        while let (Some(&last), Some(&next)) = (letters.last(), rest.peek()) {
            if last != -next {
                break;
            }
            letters.pop();
            rest.next();
        }
        letters.extend(rest);
        Ok(BraidWord { n: self.n, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&k| -k).collect(),
        }
    }

    /// The underlying permutation: letters act as adjacent transpositions of
    /// positions, left to right. `images[p - 1]` is the starting position of
    /// the strand that ends at position `p`.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (1..=self.n).collect();
        for &k in &self.letters {
            let i = k.unsigned_abs() as usize;
            images.swap(i - 1, i);
        }
        Permutation { images }
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|&k| i64::from(k.signum())).sum()
    }

    /// Whether the braid is the identity, decided by the Artin action.
    pub fn is_trivial(&self) -> bool {
        EndoImages::artin_image(self).is_identity()
    }

    pub fn equal(&self, other: &BraidWord) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::StrandMismatch(self.n, other.n));
        }
        // Cheap necessary conditions first.
        if self.exponent_sum() != other.exponent_sum()
            || self.permutation() != other.permutation()
        {
            return Ok(false);
        }
        Ok(self.compose(&other.inverse())?.is_trivial())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, k) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

/// A permutation of `{1..n}` stored one-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (1..=n).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
                return None;
            }
        }
        Some(Self { images })
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| v == i + 1)
    }
}
