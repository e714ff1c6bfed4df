//! Braid words in the Artin generators and the permutation homomorphism.
//!
//! A word on `n` strands is a sequence of nonzero signed letters; letter `+k`
//! is the generator crossing strands `k` and `k+1`, letter `-k` its inverse.
//! Words compose left to right and everything downstream (permutations,
//! matrices) multiplies in the same order.

use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{BraidError, Result};

/// A word in the Artin generators of the braid group on `strands` strands.
///
/// No reduction is performed on construction or composition; words keep
/// their letters exactly as written.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        for &k in &letters {
            let idx = k.unsigned_abs() as usize;
            if k == 0 || idx >= strands {
                return Err(BraidError::LetterOutOfRange { letter: k, strands });
            }
        }
        Ok(Self { strands, letters })
    }

    /// The empty word (identity braid).
    pub fn identity(strands: usize) -> Self {
        Self { strands, letters: Vec::new() }
    }

    /// The single generator crossing strands `i` and `i+1`.
    pub fn generator(strands: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= strands {
            return Err(BraidError::GeneratorOutOfRange { index: i, strands });
        }
        Self::new(strands, vec![i as i32])
    }

    pub fn strands(&self) -> usize {
        self.strands
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

    /// Concatenation; no free reduction happens here.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Self { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|&k| -k).collect();
        Self { strands: self.strands, letters }
    }

    /// Deletes adjacent `(k, -k)` pairs until none remain.
    pub fn free_reduce(&self) -> Self {
        let mut stack: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &k in &self.letters {
            if stack.last() == Some(&-k) {
                stack.pop();
            } else {
                stack.push(k);
            }
        }
        Self { strands: self.strands, letters: stack }
    }

    /// `k`-fold concatenation; negative `k` uses the inverse.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.letters.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        Self { strands: self.strands, letters }
    }

    /// The standard pure braid generator wrapping strands `i` and `j`,
    /// the conjugate of the square of generator `i` by the descending run
    /// of generators `j-1, ..., i+1`.
    pub fn pure_generator(strands: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > strands {
            return Err(BraidError::BadStrandPair { i, j, strands });
        }
        let mut letters = Vec::with_capacity(2 * (j - i));
        for k in (i + 1..j).rev() {
            letters.push(k as i32);
        }
        letters.push(i as i32);
        letters.push(i as i32);
        for k in i + 1..j {
            letters.push(-(k as i32));
        }
        Self::new(strands, letters)
    }

    /// The image of the word in the symmetric group: each letter contributes
    /// the transposition of adjacent positions, leftmost letter acting first.
    pub fn permutation(&self) -> Permutation {
        let mut images: Vec<usize> = (0..self.strands).collect();
        for &k in &self.letters {
            let p = k.unsigned_abs() as usize - 1;
            for img in images.iter_mut() {
                if *img == p {
                    *img = p + 1;
                } else if *img == p + 1 {
                    *img = p;
                }
            }
        }
        Permutation { images }
    }

    pub fn is_pure(&self) -> bool {
        self.permutation().is_identity()
    }

    /// Parses whitespace-separated signed letters, e.g. `"1 -2 1"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let k: i32 = tok
                .parse()
                .map_err(|_| BraidError::BadWordToken(tok.to_string()))?;
            letters.push(k);
        }
        Self::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for &k in &self.letters {
            if !first {
                write!(f, " ")?;
            }
            write!(f, "{k}")?;
            first = false;
        }
        Ok(())
    }
}

/// A permutation of `{1, ..., n}`, stored 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { images: (0..n).collect() }
    }

    /// The transposition of positions `k` and `k+1` (1-based `k`).
    pub fn adjacent_transposition(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(BraidError::GeneratorOutOfRange { index: k, strands: n });
        }
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(k - 1, k);
        Ok(Self { images })
    }

    pub fn size(&self) -> usize {
        self.images.len()
    }

    /// Image of 1-based point `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Self) -> Result<Self> {
        if self.images.len() != other.images.len() {
            return Err(BraidError::StrandMismatch(self.images.len(), other.images.len()));
        }
        let images = self.images.iter().map(|&i| other.images[i]).collect();
        Ok(Self { images })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Self { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i + 1).collect()
    }
}

/// Deterministic word sampling: `length` uniform picks from the alphabet and
/// the inverses of its entries, concatenated.
pub fn random_word(
    strands: usize,
    length: usize,
    alphabet: &[BraidWord],
    seed: u64,
) -> Result<BraidWord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_word_with(strands, length, alphabet, &mut rng)
}

/// Same as [`random_word`] but drawing from a caller-owned generator, so a
/// harness can sample many words from one seed.
pub fn random_word_with(
    strands: usize,
    length: usize,
    alphabet: &[BraidWord],
    rng: &mut ChaCha8Rng,
) -> Result<BraidWord> {
    if alphabet.is_empty() {
        return Err(BraidError::EmptyAlphabet);
    }
    for w in alphabet {
        if w.strands() != strands {
            return Err(BraidError::StrandMismatch(strands, w.strands()));
        }
    }
    let mut word = BraidWord::identity(strands);
    for _ in 0..length {
        let pick = rng.random_range(0..alphabet.len() * 2);
        let piece = if pick < alphabet.len() {
            alphabet[pick].clone()
        } else {
            alphabet[pick - alphabet.len()].inverse()
        };
        word = word.compose(&piece)?;
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, letters: &[i32]) -> BraidWord {
        BraidWord::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn compose_concatenates_without_reduction() {
        let a = w(3, &[1]);
        let b = w(3, &[2]);
        assert_eq!(a.compose(&b).unwrap().letters(), &[1, 2]);

        let e = BraidWord::identity(3);
        assert_eq!(e.compose(&a).unwrap(), a);

        let ainv = w(3, &[-1]);
        assert_eq!(a.compose(&ainv).unwrap().letters(), &[1, -1]);
    }

    #[test]
    fn compose_rejects_strand_mismatch() {
        let a = w(3, &[1]);
        let b = w(4, &[1]);
        assert!(matches!(a.compose(&b), Err(BraidError::StrandMismatch(3, 4))));
    }

    #[test]
    fn inverse_reverses_and_flips() {
        assert_eq!(w(3, &[1, 2]).inverse().letters(), &[-2, -1]);
        assert_eq!(BraidWord::identity(3).inverse().letters(), &[] as &[i32]);
        assert_eq!(w(4, &[3, -1]).inverse().letters(), &[1, -3]);
    }

    #[test]
    fn free_reduce_cancels_adjacent_pairs() {
        assert!(w(3, &[1, -1]).free_reduce().is_empty());
        assert!(w(3, &[1, 2, -2, -1]).free_reduce().is_empty());
        assert_eq!(w(3, &[1, 2, 1]).free_reduce().letters(), &[1, 2, 1]);
    }

    #[test]
    fn power_concatenates() {
        assert_eq!(w(3, &[1]).power(2).letters(), &[1, 1]);
        assert!(w(3, &[1, 2]).power(0).is_empty());
        assert_eq!(w(3, &[2]).power(-3).letters(), &[-2, -2, -2]);
    }

    #[test]
    fn pure_generator_words() {
        assert_eq!(BraidWord::pure_generator(3, 1, 2).unwrap().letters(), &[1, 1]);
        assert_eq!(BraidWord::pure_generator(3, 1, 3).unwrap().letters(), &[2, 1, 1, -2]);
        assert_eq!(BraidWord::pure_generator(4, 2, 4).unwrap().letters(), &[3, 2, 2, -3]);
    }

    #[test]
    fn pure_generator_rejects_bad_pairs() {
        assert!(BraidWord::pure_generator(3, 2, 2).is_err());
        assert!(BraidWord::pure_generator(3, 0, 2).is_err());
        assert!(BraidWord::pure_generator(3, 1, 4).is_err());
    }

    #[test]
    fn permutation_of_generator_is_transposition() {
        let p = w(3, &[1]).permutation();
        assert_eq!(p.images(), vec![2, 1, 3]);
        assert!(BraidWord::identity(3).permutation().is_identity());
        // leftmost letter acts first
        let p = w(3, &[1, 2]).permutation();
        assert_eq!(p.images(), vec![3, 1, 2]);
    }

    #[test]
    fn letters_validated() {
        assert!(BraidWord::new(3, vec![0]).is_err());
        assert!(BraidWord::new(3, vec![3]).is_err());
        assert!(BraidWord::new(3, vec![-3]).is_err());
        assert!(BraidWord::new(1, vec![]).is_err());
    }

    #[test]
    fn random_word_is_deterministic() {
        let alphabet = vec![w(3, &[1]), w(3, &[2])];
        let a = random_word(3, 5, &alphabet, 7).unwrap();
        let b = random_word(3, 5, &alphabet, 7).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        assert!(random_word(3, 0, &alphabet, 0).unwrap().is_empty());
        assert!(matches!(random_word(3, 5, &[], 0), Err(BraidError::EmptyAlphabet)));
    }

    #[test]
    fn parse_roundtrip() {
        let word = BraidWord::parse(3, "1 -2 1").unwrap();
        assert_eq!(word.letters(), &[1, -2, 1]);
        assert_eq!(word.to_string(), "1 -2 1");
        assert!(BraidWord::parse(3, "1 x").is_err());
    }
}
