//! Exact dense linear algebra over the rationals and the integers.

use nalgebra::DMatrix;
use num::{BigInt, One, Zero};

use crate::algebra::Scalar;

pub type RatMatrix = Vec<Vec<Scalar>>;

pub fn from_int(m: &DMatrix<i64>) -> RatMatrix {
    (0..m.nrows()).map(|i| (0..m.ncols()).map(|j| Scalar::from_integer(BigInt::from(m[(i, j)]))).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut RatMatrix) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = Scalar::one() / &m[r][c];
        for x in m[r].iter_mut().skip(c) {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Rank by rational Gaussian elimination.
pub fn rank_rational(m: &RatMatrix) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Rank by fraction-free (Bareiss) elimination over the integers.
pub fn rank_bareiss(m: &DMatrix<i64>) -> usize {
    let rows = m.nrows();
    let cols = m.ncols();
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| (0..cols).map(|j| BigInt::from(m[(i, j)])).collect()).collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Basis of the null space `{x : m x = 0}`.
pub fn null_space(m: &RatMatrix, cols: usize) -> Vec<Vec<Scalar>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -a[row][f].clone();
            }
            v
        })
        .collect()
}


pub fn transpose(m: &RatMatrix, cols: usize) -> RatMatrix {
    (0..cols).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn mat_vec(m: &RatMatrix, v: &[Scalar]) -> Vec<Scalar> {
    m.iter()
        .map(|row| row.iter().zip(v).filter(|(a, _)| !a.is_zero()).fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
        .collect()
}

pub fn mat_mul(a: &RatMatrix, b: &RatMatrix, b_cols: usize) -> RatMatrix {
    a.iter()
        .map(|row| {
            (0..b_cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Scalar::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Orthogonal projection of `v` onto the column space of `m`.
pub fn project(m: &RatMatrix, v: &[Scalar]) -> Vec<Scalar> {
    let mut reduced = m.clone();
    let pivots = rref(&mut reduced);
    if pivots.is_empty() {
        return vec![Scalar::zero(); v.len()];
    }
    // independent columns of m span the same space
    let basis: RatMatrix = m.iter().map(|row| pivots.iter().map(|&p| row[p].clone()).collect()).collect();
    let r = pivots.len();
    let bt = transpose(&basis, r);
    let mut normal = mat_mul(&bt, &basis, r);
    let rhs = mat_vec(&bt, v);
    for (row, b) in normal.iter_mut().zip(rhs) {
        row.push(b);
    }
    rref(&mut normal);
    let coeffs: Vec<Scalar> = normal.iter().map(|row| row[r].clone()).collect();
    mat_vec(&basis, &coeffs)
}
