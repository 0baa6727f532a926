//! The free group `F_n` and the Artin action of `B_n` on it.
//!
//! Generators are `x_1..x_n`; a letter `k` stands for `x_k` and `-k` for its
//! inverse. Words are reduced on construction so equality is structural.
//!
//! The action: letter `+i` sends `x_i -> x_i x_{i+1} x_i^-1`, `x_{i+1} -> x_i`;
//! letter `-i` sends `x_i -> x_{i+1}`, `x_{i+1} -> x_{i+1}^-1 x_i x_{i+1}`.
//! The image of a word `w = l_1 l_2 ... l_m` is the composite
//! `phi_{l_1} . phi_{l_2} . ... . phi_{l_m}`, so that
//! `artin_image(a . b) = compose_endo(artin_image(a), artin_image(b))`.
//! Computed left to right this is exactly the tuple rule of
//! [`EndoImages::push_letter`].

use std::fmt;

use crate::braid::BraidWord;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreeWord {
    n: usize,
    letters: Vec<i32>,
}

impl FreeWord {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            letters: Vec::new(),
        }
    }

    pub fn generator(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::GenOutOfRange { gen: k, n });
        }
        Ok(Self {
            n,
            letters: vec![k as i32],
        })
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce(raw: &[i32], n: usize) -> Result<Self> {
        let mut letters: Vec<i32> = Vec::with_capacity(raw.len());
        for &k in raw {
            if k == 0 || k.unsigned_abs() as usize > n {
                return Err(Error::LetterOutOfRange {
                    letter: k.into(),
                    n,
                });
            }
            push_reduced(&mut letters, k);
        }
        Ok(Self { n, letters })
    }

    /// Parses `x<k>` / `x<k>^-1` tokens separated by whitespace.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut raw = Vec::new();
        for token in text.split_whitespace() {
            let malformed = || Error::MalformedToken(token.to_string());
            let body = token.strip_prefix('x').ok_or_else(malformed)?;
            let (index, sign) = match body.split_once('^') {
                Some((index, "-1")) => (index, -1),
                Some((index, "1")) => (index, 1),
                Some(_) => return Err(malformed()),
                None => (body, 1),
            };
            if !index.bytes().all(|b| b.is_ascii_digit()) {
                return Err(malformed());
            }
            let k: i64 = index.parse().map_err(|_| malformed())?;
            if k == 0 || k > n as i64 {
                return Err(Error::GenOutOfRange {
                    gen: k as usize,
                    n,
                });
            }
            raw.push(sign * k as i32);
        }
        Self::reduce(&raw, n)
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

    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &FreeWord) -> FreeWord {
        let mut letters = self.letters.clone();
        for &k in &other.letters {
            push_reduced(&mut letters, k);
        }
        FreeWord { n: self.n, letters }
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&k| -k).collect(),
        }
    }

    /// `self . other . self^-1`
    pub fn conjugate(&self, other: &FreeWord) -> Result<FreeWord> {
        Ok(self.multiply(other)?.mul_unchecked(&self.invert()))
    }

    /// Splits a word of the form `w x_j w^-1` into `(w, j)`. The reduced form
    /// of such a conjugate is a palindrome up to inversion around a positive
    /// middle letter, so the factorisation is unique when it exists.
    pub fn as_conjugate_of_generator(&self) -> Option<(FreeWord, usize)> {
        let len = self.letters.len();
        if len % 2 == 0 {
            return None;
        }
        let half = len / 2;
        let middle = self.letters[half];
        if middle < 0 {
            return None;
        }
        let prefix = &self.letters[..half];
        let suffix = &self.letters[half + 1..];
        let mirrored = prefix.iter().rev().map(|&k| -k);
        if !mirrored.eq(suffix.iter().copied()) {
            return None;
        }
        Some((
            FreeWord {
                n: self.n,
                letters: prefix.to_vec(),
            },
            middle as usize,
        ))
    }
}

fn push_reduced(letters: &mut Vec<i32>, k: i32) {
    if letters.last() == Some(&-k) {
        letters.pop();
    } else {
        letters.push(k);
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, &k) in self.letters.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            if k > 0 {
                write!(f, "x{k}")?;
            } else {
                write!(f, "x{}^-1", -k)?;
            }
        }
        Ok(())
    }
}

/// An endomorphism of `F_n`, stored as the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EndoImages {
    n: usize,
    images: Vec<FreeWord>,
}

impl EndoImages {
    pub fn identity(n: usize) -> Self {
        Self {
            n,
            images: (1..=n)
                .map(|k| FreeWord {
                    n,
                    letters: vec![k as i32],
                })
                .collect(),
        }
    }

    pub fn from_images(images: Vec<FreeWord>) -> Result<Self> {
        let n = images.len();
        if let Some(bad) = images.iter().find(|w| w.n != n) {
            return Err(Error::RankMismatch(n, bad.n));
        }
        Ok(Self { n, images })
    }

    pub fn artin_image(word: &BraidWord) -> Self {
        let mut endo = Self::identity(word.n());
        for &k in word.letters() {
            endo.push_letter(k);
        }
        endo
    }

    /// Replaces `self` by `self . phi_k`. On the image tuple this is the
    /// local rule `(a, b) -> (a b a^-1, a)` for `+i` and
    /// `(a, b) -> (b, b^-1 a b)` for `-i` at positions `i, i + 1`.
    pub fn push_letter(&mut self, k: i32) {
        let i = k.unsigned_abs() as usize;
        assert!(
            k != 0 && i < self.n,
            "letter {k} out of range for rank {}",
            self.n
        );
        let a = &self.images[i - 1];
        let b = &self.images[i];
        let (new_a, new_b) = if k > 0 {
            (a.mul_unchecked(b).mul_unchecked(&a.invert()), a.clone())
        } else {
            (b.clone(), b.invert().mul_unchecked(a).mul_unchecked(b))
        };
        self.images[i - 1] = new_a;
        self.images[i] = new_b;
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn apply(&self, word: &FreeWord) -> Result<FreeWord> {
        if word.n != self.n {
            return Err(Error::RankMismatch(self.n, word.n));
        }
        let mut letters = Vec::new();
        for &k in &word.letters {
            let image = &self.images[k.unsigned_abs() as usize - 1];
            if k > 0 {
                for &l in &image.letters {
                    push_reduced(&mut letters, l);
                }
            } else {
                for &l in image.letters.iter().rev() {
                    push_reduced(&mut letters, -l);
                }
            }
        }
        Ok(FreeWord { n: self.n, letters })
    }

    /// `self . other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &EndoImages) -> Result<EndoImages> {
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        let images = other
            .images
            .iter()
            .map(|w| self.apply(w))
            .collect::<Result<_>>()?;
        Ok(EndoImages { n: self.n, images })
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, w)| w.letters == [i as i32 + 1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fw(n: usize, letters: &[i32]) -> FreeWord {
        FreeWord::reduce(letters, n).unwrap()
    }

    fn braid(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(fw(2, &[1, -1]).is_empty());
        assert!(fw(2, &[1, 2, -2, -1]).is_empty());
        assert_eq!(fw(2, &[1, 2, -1]).letters(), &[1, 2, -1]);
        assert_eq!(
            FreeWord::reduce(&[3], 2),
            Err(Error::LetterOutOfRange { letter: 3, n: 2 })
        );
        assert!(FreeWord::reduce(&[0], 2).is_err());
    }

    #[test]
    fn multiply_and_invert_examples() {
        assert!(fw(2, &[1]).multiply(&fw(2, &[-1])).unwrap().is_empty());
        assert_eq!(fw(2, &[1, -2]).invert().letters(), &[2, -1]);
        assert_eq!(
            fw(3, &[1, 2]).multiply(&fw(3, &[-2, 3])).unwrap().letters(),
            &[1, 3]
        );
        assert_eq!(
            fw(2, &[1]).multiply(&fw(3, &[1])),
            Err(Error::RankMismatch(2, 3))
        );
    }

    #[test]
    fn text_format() {
        let w = FreeWord::parse("x1 x2^-1 x1", 2).unwrap();
        assert_eq!(w.letters(), &[1, -2, 1]);
        assert_eq!(w.to_string(), "x1 x2^-1 x1");
        assert!(FreeWord::parse("", 3).unwrap().is_empty());
        assert!(FreeWord::parse("x1 x1^-1", 3).unwrap().is_empty());
        assert_eq!(FreeWord::parse("x2^1", 3).unwrap().letters(), &[2]);
        assert!(matches!(
            FreeWord::parse("y1", 3),
            Err(Error::MalformedToken(_))
        ));
        assert!(matches!(
            FreeWord::parse("x1^2", 3),
            Err(Error::MalformedToken(_))
        ));
        assert!(matches!(
            FreeWord::parse("x+1", 3),
            Err(Error::MalformedToken(_))
        ));
        assert!(matches!(
            FreeWord::parse("x4", 3),
            Err(Error::GenOutOfRange { gen: 4, n: 3 })
        ));
        assert!(matches!(
            FreeWord::parse("x0", 3),
            Err(Error::GenOutOfRange { gen: 0, n: 3 })
        ));
    }

    #[test]
    fn artin_image_examples() {
        assert!(EndoImages::artin_image(&braid(3, &[])).is_identity());
        let s1 = EndoImages::artin_image(&braid(2, &[1]));
        assert_eq!(s1.images()[0].letters(), &[1, 2, -1]);
        assert_eq!(s1.images()[1].letters(), &[1]);
        assert!(EndoImages::artin_image(&braid(2, &[1, -1])).is_identity());
        let s1_inv = EndoImages::artin_image(&braid(2, &[-1]));
        assert_eq!(s1_inv.images()[0].letters(), &[2]);
        assert_eq!(s1_inv.images()[1].letters(), &[-2, 1, 2]);
    }

    #[test]
    fn braid_relation_gives_identical_images() {
        // Worked out by substitution:
        //   x1 -> x1 x2 x3 x2^-1 x1^-1, x2 -> x1 x2 x1^-1, x3 -> x1.
        let expected = EndoImages::from_images(vec![
            fw(3, &[1, 2, 3, -2, -1]),
            fw(3, &[1, 2, -1]),
            fw(3, &[1]),
        ])
        .unwrap();
        assert_eq!(EndoImages::artin_image(&braid(3, &[1, 2, 1])), expected);
        assert_eq!(EndoImages::artin_image(&braid(3, &[2, 1, 2])), expected);
    }

    #[test]
    fn apply_examples() {
        let w = fw(3, &[1, -3, 2, 2]);
        assert_eq!(EndoImages::identity(3).apply(&w).unwrap(), w);
        let s1 = EndoImages::artin_image(&braid(2, &[1]));
        assert_eq!(s1.apply(&fw(2, &[2])).unwrap().letters(), &[1]);
        // (x1 x2 x1^-1)(x1) = x1 x2
        assert_eq!(s1.apply(&fw(2, &[1, 2])).unwrap().letters(), &[1, 2]);
        assert_eq!(s1.apply(&fw(3, &[1])), Err(Error::RankMismatch(2, 3)));
    }

    #[test]
    fn compose_examples() {
        let id = EndoImages::identity(3);
        let g = EndoImages::artin_image(&braid(3, &[2, -1]));
        assert_eq!(id.compose(&g).unwrap(), g);
        assert_eq!(g.compose(&id).unwrap(), g);
        let a = EndoImages::artin_image(&braid(3, &[1]));
        let b = EndoImages::artin_image(&braid(3, &[2]));
        assert_eq!(
            a.compose(&b).unwrap(),
            EndoImages::artin_image(&braid(3, &[1, 2]))
        );
        assert!(a.compose(&EndoImages::identity(2)).is_err());
    }

    #[test]
    fn identity_detection() {
        assert!(EndoImages::identity(4).is_identity());
        assert!(!EndoImages::artin_image(&braid(2, &[1])).is_identity());
        let rel = braid(3, &[1, 2, 1])
            .compose(&braid(3, &[2, 1, 2]).inverse())
            .unwrap();
        assert!(EndoImages::artin_image(&rel).is_identity());
    }

    #[test]
    fn conjugate_factorisation() {
        let w = fw(3, &[1, 2, 3, -2, -1]);
        let (conj, j) = w.as_conjugate_of_generator().unwrap();
        assert_eq!(conj.letters(), &[1, 2]);
        assert_eq!(j, 3);
        assert!(fw(3, &[1, 2]).as_conjugate_of_generator().is_none());
        assert!(fw(3, &[-1]).as_conjugate_of_generator().is_none());
        assert!(fw(3, &[1, 2, 1]).as_conjugate_of_generator().is_none());
        assert_eq!(
            fw(3, &[2]).as_conjugate_of_generator(),
            Some((FreeWord::identity(3), 2))
        );
    }

    /// Independent route: apply each letter as a substitution on words and
    /// nest them, `phi_{l_1}(phi_{l_2}(... phi_{l_m}(x_i)))`.
    fn substitution_oracle(word: &BraidWord) -> Vec<Vec<i32>> {
        fn phi(k: i32, w: &[i32]) -> Vec<i32> {
            let i = k.abs();
            let mut raw = Vec::new();
            for &l in w {
                let image: Vec<i32> = match (k > 0, l.abs()) {
                    (true, g) if g == i => vec![i, i + 1, -i],
                    (true, g) if g == i + 1 => vec![i],
                    (false, g) if g == i => vec![i + 1],
                    (false, g) if g == i + 1 => vec![-(i + 1), i, i + 1],
                    _ => vec![l.abs()],
                };
                if l > 0 {
                    raw.extend(image);
                } else {
                    raw.extend(image.iter().rev().map(|&x| -x));
                }
            }
            let mut out: Vec<i32> = Vec::new();
            for l in raw {
                if out.last() == Some(&-l) {
                    out.pop();
                } else {
                    out.push(l);
                }
            }
            out
        }
        (1..=word.n() as i32)
            .map(|g| {
                let mut w = vec![g];
                for &k in word.letters().iter().rev() {
                    w = phi(k, &w);
                }
                w
            })
            .collect()
    }

    fn arb_braid(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
        (2..=max_n).prop_flat_map(move |n| {
            let letter = (1..n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
            prop::collection::vec(letter, 0..=max_len)
                .prop_map(move |letters| BraidWord::new(n, letters).unwrap())
        })
    }

    fn arb_free(n: usize, max_len: usize) -> impl Strategy<Value = FreeWord> {
        let letter = (1..=n as i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(letter, 0..=max_len)
            .prop_map(move |raw| FreeWord::reduce(&raw, n).unwrap())
    }

    proptest! {
        #[test]
        fn artin_image_matches_substitution_oracle(b in arb_braid(5, 10)) {
            let endo = EndoImages::artin_image(&b);
            let oracle = substitution_oracle(&b);
            for (image, expected) in endo.images().iter().zip(&oracle) {
                prop_assert_eq!(image.letters(), expected.as_slice());
            }
        }

        #[test]
        fn reduce_is_idempotent_and_shortening(raw in prop::collection::vec(
            (1..=4i32).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]), 0..30)) {
            let once = FreeWord::reduce(&raw, 4).unwrap();
            let twice = FreeWord::reduce(once.letters(), 4).unwrap();
            prop_assert!(once.len() <= raw.len());
            prop_assert_eq!(&once, &twice);
            prop_assert!(once.letters().windows(2).all(|p| p[0] != -p[1]));
        }

        #[test]
        fn apply_is_a_homomorphism(b in arb_braid(4, 8), u in arb_free(4, 8), v in arb_free(4, 8)) {
            let b = BraidWord::new(4, b.letters().iter().copied().filter(|k| k.abs() < 4).collect()).unwrap();
            let e = EndoImages::artin_image(&b);
            let lhs = e.apply(&u.multiply(&v).unwrap()).unwrap();
            let rhs = e.apply(&u).unwrap().multiply(&e.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn action_is_functorial(a in arb_braid(4, 6), c in arb_braid(4, 6)) {
            let n = a.n().min(c.n());
            let restrict = |w: &BraidWord| BraidWord::new(
                n, w.letters().iter().copied().filter(|k| (k.unsigned_abs() as usize) < n).collect()).unwrap();
            let (a, c) = (restrict(&a), restrict(&c));
            let lhs = EndoImages::artin_image(&a.compose(&c).unwrap());
            let rhs = EndoImages::artin_image(&a).compose(&EndoImages::artin_image(&c)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_braid_undoes_the_action(b in arb_braid(5, 8), seed in prop::collection::vec(1..=5i32, 0..10)) {
            let n = b.n();
            let raw: Vec<i32> = seed.into_iter().map(|k| (k - 1) % n as i32 + 1).collect();
            let w = FreeWord::reduce(&raw, n).unwrap();
            let forward = EndoImages::artin_image(&b).apply(&w).unwrap();
            let back = EndoImages::artin_image(&b.inverse()).apply(&forward).unwrap();
            prop_assert_eq!(back, w);
        }
    }
}
