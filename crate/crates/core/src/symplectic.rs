//! Invariant bilinear forms of the Burau generator images, by exact rational
//! elimination.
//!
//! For odd strand counts the representation preserves a nondegenerate
//! alternating form, which this module recovers as an integral basis of the
//! solution space of `G^T J G = J` over all generators. For even strand
//! counts the solution space is still reported, but nothing is asserted
//! about it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::burau::{generator_matrix, IntegerMatrix};
use crate::error::{BraidError, Result};

/// Integral basis of the space of bilinear forms invariant under every
/// generator image for a fixed strand count.
#[derive(Debug, Clone)]
pub struct FormSpace {
    dimension: usize,
    basis: Vec<IntegerMatrix>,
}

impl FormSpace {
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn basis(&self) -> &[IntegerMatrix] {
        &self.basis
    }
}

/// True iff `J` is skew-symmetric with zero diagonal and nonzero exact
/// determinant.
pub fn is_alternating_nondegenerate(j: &IntegerMatrix) -> bool {
    let d = j.dim();
    for r in 0..d {
        if !j.get(r, r).is_zero() {
            return false;
        }
        for c in 0..d {
            if *j.get(r, c) != -j.get(c, r) {
                return false;
            }
        }
    }
    !j.det().is_zero()
}

/// Solves `G_i^T J G_i = J` for all generator images `G_i` on `n` strands,
/// returning an integral basis of the solution space (content 1, first
/// nonzero entry positive).
pub fn invariant_forms(n: usize) -> Result<FormSpace> {
    if n < 3 {
        return Err(BraidError::TooFewStrands(n));
    }
    let d = n - 1;
    let unknowns = d * d;
    // one block of d*d equations per generator: for target entry (a,b),
    // sum_{r,c} G[r][a] * G[c][b] * x_{rc} - x_{ab} = 0
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for i in 1..n {
        let g = generator_matrix(n, i, 1)?;
        for a in 0..d {
            for b in 0..d {
                let mut row = vec![BigRational::zero(); unknowns];
                for r in 0..d {
                    let gra = g.get(r, a);
                    if gra.is_zero() {
                        continue;
                    }
                    for c in 0..d {
                        let coeff = gra * g.get(c, b);
                        if !coeff.is_zero() {
                            row[r * d + c] += BigRational::from(coeff);
                        }
                    }
                }
                row[a * d + b] -= BigRational::one();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let null_basis = rational_nullspace(&mut rows, unknowns);
    let basis = null_basis
        .into_iter()
        .map(|v| integerize(&v, d))
        .collect();
    Ok(FormSpace { dimension: d, basis })
}

/// Reduced row echelon form in place; returns a basis of the nullspace.
fn rational_nullspace(rows: &mut Vec<Vec<BigRational>>, unknowns: usize) -> Vec<Vec<BigRational>> {
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut rank = 0usize;
    for col in 0..unknowns {
        let pivot_row = (rank..rows.len()).find(|&r| !rows[r][col].is_zero());
        let Some(pr) = pivot_row else { continue };
        rows.swap(rank, pr);
        let inv = rows[rank][col].recip();
        for x in rows[rank].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..unknowns {
                    let sub = &factor * &rows[rank][c];
                    rows[r][c] -= sub;
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..unknowns {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); unknowns];
        v[free] = BigRational::one();
        for (row_idx, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = -rows[row_idx][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Clears denominators, divides by the content, and fixes the sign of the
/// first nonzero entry.
fn integerize(v: &[BigRational], d: usize) -> IntegerMatrix {
    let mut lcm = BigInt::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from(lcm.clone())).to_integer()).collect();
    let mut content = BigInt::zero();
    for x in &ints {
        content = content.gcd(x);
    }
    if !content.is_zero() && !content.is_one() {
        for x in ints.iter_mut() {
            *x = &*x / &content;
        }
    }
    if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in ints.iter_mut() {
                *x = -&*x;
            }
        }
    }
    let mut m = IntegerMatrix::zero(d);
    for r in 0..d {
        for c in 0..d {
            m.set(r, c, ints[r * d + c].clone());
        }
    }
    m
}
