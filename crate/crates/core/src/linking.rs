//! Pure braid abelianization via pairwise linking numbers, and its mod-2
//! reduction.
//!
//! The vector is computed by scanning the word while tracking which strand
//! sits at each position: letter `+-k` crosses the two strands currently at
//! positions `k` and `k+1`, contributing `+-1` to their pair counter. For a
//! pure braid every counter is even and the linking number is half of it.

use serde_json::{json, Value};

use crate::error::{BraidError, Result};
use crate::word::BraidWord;

/// Flat index of the pair `(i, j)`, `1 <= i < j <= n`, in lexicographic
/// order.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(1 <= i && i < j && j <= n);
    // pairs (1,2),(1,3),...,(1,n),(2,3),...
    let before = (i - 1) * n - (i - 1) * i / 2;
    before + (j - i - 1)
}

/// All pairs `(i, j)` in index order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((i, j));
        }
    }
    out
}

/// Element of the free abelian group on strand pairs; the abelianized image
/// of a pure braid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentVector {
    strands: usize,
    components: Vec<i64>,
}

impl ExponentVector {
    pub fn zero(strands: usize) -> Self {
        Self { strands, components: vec![0; strands * (strands - 1) / 2] }
    }

    /// Standard basis vector for the pair `(i, j)`.
    pub fn basis(strands: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j || j > strands {
            return Err(BraidError::BadStrandPair { i, j, strands });
        }
        let mut v = Self::zero(strands);
        v.components[pair_index(strands, i, j)] = 1;
        Ok(v)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn component(&self, i: usize, j: usize) -> i64 {
        self.components[pair_index(self.strands, i, j)]
    }

    pub fn components(&self) -> &[i64] {
        &self.components
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let components = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a + b)
            .collect();
        Ok(Self { strands: self.strands, components })
    }

    pub fn scale(&self, k: i64) -> Self {
        Self {
            strands: self.strands,
            components: self.components.iter().map(|c| c * k).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|&c| c == 0)
    }

    pub fn mod2(&self) -> Mod2Vector {
        Mod2Vector {
            strands: self.strands,
            bits: self.components.iter().map(|c| (c.rem_euclid(2)) as u8).collect(),
        }
    }

    /// Nonzero components only: `{"n": n, "pairs": [[i, j, value], ...]}`.
    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = pairs(self.strands)
            .into_iter()
            .filter_map(|(i, j)| {
                let v = self.component(i, j);
                (v != 0).then(|| json!([i, j, v]))
            })
            .collect();
        json!({ "n": self.strands, "pairs": entries })
    }
}

/// Element of the elementary abelian 2-group on strand pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mod2Vector {
    strands: usize,
    bits: Vec<u8>,
}

impl Mod2Vector {
    pub fn zero(strands: usize) -> Self {
        Self { strands, bits: vec![0; strands * (strands - 1) / 2] }
    }

    pub fn basis(strands: usize, i: usize, j: usize) -> Result<Self> {
        Ok(ExponentVector::basis(strands, i, j)?.mod2())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn bit(&self, i: usize, j: usize) -> u8 {
        self.bits[pair_index(self.strands, i, j)]
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let bits = self.bits.iter().zip(&other.bits).map(|(a, b)| a ^ b).collect();
        Ok(Self { strands: self.strands, bits })
    }

    pub fn is_zero(&self) -> bool {
        self.bits.iter().all(|&b| b == 0)
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = pairs(self.strands)
            .into_iter()
            .filter_map(|(i, j)| {
                let v = self.bit(i, j);
                (v != 0).then(|| json!([i, j, v]))
            })
            .collect();
        json!({ "n": self.strands, "pairs": entries })
    }
}

/// Raw signed crossing counters per strand pair, exposed for the parity
/// property: the counter of a pair is even exactly when both strands end
/// where they started relative to each other.
pub fn raw_crossing_counters(word: &BraidWord) -> Vec<i64> {
    let n = word.strands();
    let mut counters = vec![0i64; n * (n - 1) / 2];
    // pos[p] = strand currently at position p (both 0-based)
    let mut pos: Vec<usize> = (0..n).collect();
    for &k in word.letters() {
        let p = k.unsigned_abs() as usize - 1;
        let (a, b) = (pos[p], pos[p + 1]);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        counters[pair_index(n, lo + 1, hi + 1)] += k.signum() as i64;
        pos.swap(p, p + 1);
    }
    counters
}

/// Linking numbers of a pure braid: half the signed crossing count of each
/// strand pair. Non-pure words are rejected.
pub fn linking_vector(word: &BraidWord) -> Result<ExponentVector> {
    if !word.is_pure() {
        return Err(BraidError::NotPure);
    }
    let counters = raw_crossing_counters(word);
    debug_assert!(counters.iter().all(|c| c % 2 == 0));
    Ok(ExponentVector {
        strands: word.strands(),
        components: counters.into_iter().map(|c| c / 2).collect(),
    })
}

/// The mod-2 abelianization of a pure braid.
pub fn phi_mod2(word: &BraidWord) -> Result<Mod2Vector> {
    Ok(linking_vector(word)?.mod2())
}
