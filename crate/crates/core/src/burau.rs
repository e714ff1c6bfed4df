//! The reduced integral Burau representation, its mod-m reduction, and
//! congruence-subgroup membership.
//!
//! Generator images are the explicit block matrices: the first generator
//! carries `[[1,0],[1,1]]` at the top left, the last carries `[[1,-1],[0,1]]`
//! at the bottom right, and interior generators carry the 3x3 block
//! `[[1,-1,0],[0,1,0],[0,1,1]]` offset down the diagonal. Every block is
//! unimodular, so inverses are exact over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{BraidError, Result};
use crate::word::BraidWord;

/// Default cap on word length for integer-matrix evaluation; bounds bigint
/// growth. Callers may pass their own cap through [`burau_int_capped`].
pub const DEFAULT_WORD_CAP: usize = 10_000;

/// Exact square integer matrix with arbitrary-precision entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(dim: usize) -> Self {
        Self { dim, entries: vec![BigInt::zero(); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let dim = rows.len();
        let mut m = Self::zero(dim);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "rows must be square");
            for (c, &v) in row.iter().enumerate() {
                m.set(r, c, BigInt::from(v));
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.entries[r * self.dim + c] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut out = Self::zero(d);
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    let add = a * other.get(k, c);
                    let cur = out.get(r, c) + add;
                    out.set(r, c, cur);
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d);
        for r in 0..d {
            for c in 0..d {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        let d = self.dim;
        (0..d).all(|r| {
            (0..d).all(|c| {
                if r == c {
                    self.get(r, c).is_one()
                } else {
                    self.get(r, c).is_zero()
                }
            })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let d = self.dim;
        if d == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..d)
            .map(|r| (0..d).map(|c| self.get(r, c).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..d - 1 {
            if a[k][k].is_zero() {
                match (k + 1..d).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..d {
                for j in k + 1..d {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[d - 1][d - 1].clone()
    }

    /// The adjugate, i.e. `det(self) * self^{-1}`, computed entrywise from
    /// cofactor minors.
    pub fn adjugate(&self) -> Self {
        let d = self.dim;
        let mut out = Self::zero(d);
        if d == 0 {
            return out;
        }
        if d == 1 {
            out.set(0, 0, BigInt::one());
            return out;
        }
        for r in 0..d {
            for c in 0..d {
                let mut minor = Self::zero(d - 1);
                let mut mr = 0;
                for i in 0..d {
                    if i == r {
                        continue;
                    }
                    let mut mc = 0;
                    for j in 0..d {
                        if j == c {
                            continue;
                        }
                        minor.set(mr, mc, self.get(i, j).clone());
                        mc += 1;
                    }
                    mr += 1;
                }
                let mut cof = minor.det();
                if (r + c) % 2 == 1 {
                    cof = -cof;
                }
                out.set(c, r, cof);
            }
        }
        out
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.dim)
            .map(|r| {
                Value::Array(
                    (0..self.dim)
                        .map(|c| Value::String(self.get(r, c).to_string()))
                        .collect(),
                )
            })
            .collect();
        json!({ "m": Value::Null, "d": self.dim, "rows": rows })
    }
}

/// Square matrix over Z/mZ with entries normalized into `[0, m)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ModularMatrix {
    modulus: u64,
    dim: usize,
    entries: Vec<u64>,
}

impl ModularMatrix {
    pub fn identity(modulus: u64, dim: usize) -> Self {
        let mut entries = vec![0u64; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1 % modulus;
        }
        Self { modulus, dim, entries }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.dim + c]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let m = self.modulus as u128;
        let mut entries = vec![0u64; d * d];
        for r in 0..d {
            for c in 0..d {
                let mut acc: u128 = 0;
                for k in 0..d {
                    acc += self.entries[r * d + k] as u128 * other.entries[k * d + c] as u128;
                }
                entries[r * d + c] = (acc % m) as u64;
            }
        }
        Self { modulus: self.modulus, dim: d, entries }
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.modulus, self.dim)
    }

    /// Canonical byte key: modulus, dimension, then row-major residues.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut key = Vec::with_capacity(16 + self.entries.len() * 8);
        key.extend_from_slice(&self.modulus.to_le_bytes());
        key.extend_from_slice(&(self.dim as u64).to_le_bytes());
        for &e in &self.entries {
            key.extend_from_slice(&e.to_le_bytes());
        }
        key
    }

    pub fn from_canonical_key(key: &[u8]) -> Option<Self> {
        if key.len() < 16 {
            return None;
        }
        let modulus = u64::from_le_bytes(key[0..8].try_into().ok()?);
        let dim = u64::from_le_bytes(key[8..16].try_into().ok()?) as usize;
        let body = &key[16..];
        if body.len() != dim * dim * 8 || modulus < 2 {
            return None;
        }
        let entries: Vec<u64> = body
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        if entries.iter().any(|&e| e >= modulus) {
            return None;
        }
        Some(Self { modulus, dim, entries })
    }

    /// Lift to an integer matrix with entries in `[0, m)`.
    pub fn lift(&self) -> IntegerMatrix {
        let mut out = IntegerMatrix::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                out.set(r, c, BigInt::from(self.get(r, c)));
            }
        }
        out
    }

    /// Exact inverse mod m via the adjugate, if the determinant is a unit.
    pub fn inverse(&self) -> Option<Self> {
        let lifted = self.lift();
        let det = lifted.det();
        let det_res = modular_residue(&det, self.modulus);
        let det_inv = mod_inverse(det_res, self.modulus)?;
        let adj = lifted.adjugate();
        let d = self.dim;
        let m = self.modulus as u128;
        let mut entries = vec![0u64; d * d];
        for r in 0..d {
            for c in 0..d {
                let a = modular_residue(adj.get(r, c), self.modulus) as u128;
                entries[r * d + c] = ((a * det_inv as u128) % m) as u64;
            }
        }
        Some(Self { modulus: self.modulus, dim: d, entries })
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = (0..self.dim)
            .map(|r| Value::Array((0..self.dim).map(|c| json!(self.get(r, c))).collect()))
            .collect();
        json!({ "m": self.modulus, "d": self.dim, "rows": rows })
    }
}

fn modular_residue(v: &BigInt, m: u64) -> u64 {
    let m_big = BigInt::from(m);
    let mut r = v % &m_big;
    if r.is_negative() {
        r += &m_big;
    }
    let (_, digits) = r.to_u64_digits();
    *digits.first().unwrap_or(&0)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    // extended euclid on (a, m)
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// A congruence level: levels 0 and 1 are degenerate and rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongruenceLevel(u64);

impl CongruenceLevel {
    pub fn new(level: u64) -> Result<Self> {
        if level < 2 {
            return Err(BraidError::InvalidLevel(level));
        }
        Ok(Self(level))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// Image of a single Artin generator (`sign = -1` for the inverse) under the
/// reduced integral Burau representation.
pub fn generator_matrix(strands: usize, index: usize, sign: i8) -> Result<IntegerMatrix> {
    if strands < 2 {
        return Err(BraidError::TooFewStrands(strands));
    }
    if index == 0 || index >= strands {
        return Err(BraidError::GeneratorOutOfRange { index, strands });
    }
    let d = strands - 1;
    let inv = sign < 0;
    let mut m = IntegerMatrix::identity(d);
    let one = BigInt::one();
    let neg = || -BigInt::one();
    if index == 1 {
        // [[1,0],[1,1]] in the top-left corner (d = 1 leaves just [1])
        if d >= 2 {
            m.set(1, 0, if inv { neg() } else { one.clone() });
        }
    } else if index == strands - 1 {
        // [[1,-1],[0,1]] in the bottom-right corner
        m.set(d - 2, d - 1, if inv { one.clone() } else { neg() });
    } else {
        // interior 3x3 block with Id_{i-2} above
        let o = index - 2;
        if inv {
            m.set(o, o + 1, one.clone());
            m.set(o + 2, o + 1, neg());
        } else {
            m.set(o, o + 1, neg());
            m.set(o + 2, o + 1, one.clone());
        }
    }
    Ok(m)
}

/// The image of a word under the representation, leftmost letter first.
pub fn burau_int(word: &BraidWord) -> IntegerMatrix {
    burau_int_capped(word, usize::MAX).expect("uncapped evaluation cannot fail")
}

/// Like [`burau_int`] but rejecting words longer than `cap` letters.
pub fn burau_int_capped(word: &BraidWord, cap: usize) -> Result<IntegerMatrix> {
    if word.len() > cap {
        return Err(BraidError::WordTooLong(word.len(), cap));
    }
    let n = word.strands();
    let mut acc = IntegerMatrix::identity(n - 1);
    for &k in word.letters() {
        let g = generator_matrix(n, k.unsigned_abs() as usize, k.signum() as i8)
            .expect("validated letters");
        acc = acc.mul(&g);
    }
    Ok(acc)
}

/// Componentwise reduction into `[0, m)`.
pub fn reduce_mod(matrix: &IntegerMatrix, modulus: u64) -> Result<ModularMatrix> {
    if modulus < 2 {
        return Err(BraidError::InvalidLevel(modulus));
    }
    let d = matrix.dim();
    let mut entries = vec![0u64; d * d];
    for r in 0..d {
        for c in 0..d {
            entries[r * d + c] = modular_residue(matrix.get(r, c), modulus);
        }
    }
    Ok(ModularMatrix { modulus, dim: d, entries })
}

/// Word image mod m, reducing after every multiplication so entries never grow.
pub fn burau_mod(word: &BraidWord, modulus: u64) -> Result<ModularMatrix> {
    if modulus < 2 {
        return Err(BraidError::InvalidLevel(modulus));
    }
    let n = word.strands();
    let mut acc = ModularMatrix::identity(modulus, n - 1);
    for &k in word.letters() {
        let g = generator_matrix(n, k.unsigned_abs() as usize, k.signum() as i8)
            .expect("validated letters");
        acc = acc.mul(&reduce_mod(&g, modulus)?);
    }
    Ok(acc)
}

/// Membership in the level-l congruence subgroup: the word's image mod l is
/// the identity.
pub fn is_congruence_member(word: &BraidWord, level: CongruenceLevel) -> bool {
    burau_mod(word, level.get())
        .expect("level validated >= 2")
        .is_identity()
}
