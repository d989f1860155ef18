//! Integral simplicial homology of flag complexes.
//!
//! Simplices are oriented by their sorted vertex order; the face of a
//! simplex omitting its `i`-th vertex carries sign `(-1)^i`. Ranks and
//! torsion come from an exact Smith normal form over arbitrary-precision
//! integers.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::FlagComplex;

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix({}x{})", self.rows, self.cols)
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        IntMatrix { rows: rows.len(), cols, data: rows.iter().flatten().map(|&x| BigInt::from(x)).collect() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// Boundary map from `dim`-chains to `(dim-1)`-chains.
#[derive(Clone, Debug)]
pub struct ChainBoundary {
    pub dim: usize,
    pub matrix: IntMatrix,
}

/// `∂_1 ..= ∂_max_dim` over lexicographically sorted simplex bases.
pub fn boundary_matrices(c: &FlagComplex, max_dim: usize) -> Vec<ChainBoundary> {
    let simplices = c.simplices(max_dim);
    boundaries_from(&simplices, max_dim)
}

fn boundaries_from(simplices: &[Vec<crate::complex::Simplex>], max_dim: usize) -> Vec<ChainBoundary> {
    (1..=max_dim)
        .map(|k| {
            let faces = &simplices[k - 1];
            let cells = &simplices[k];
            let row: HashMap<&[usize], usize> = faces.iter().enumerate().map(|(i, s)| (s.vertices(), i)).collect();
            let mut m = IntMatrix::zeros(faces.len(), cells.len());
            for (j, s) in cells.iter().enumerate() {
                let v = s.vertices();
                for omit in 0..v.len() {
                    let face: Vec<usize> = v.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, &x)| x).collect();
                    let sign = if omit % 2 == 0 { 1 } else { -1 };
                    m.set(row[face.as_slice()], j, BigInt::from(sign));
                }
            }
            ChainBoundary { dim: k, matrix: m }
        })
        .collect()
}

/// Rank and invariant factors `d_1 | d_2 | ... | d_rank` (all positive).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub invariant_factors: Vec<BigInt>,
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<BigInt>> = (0..rows).map(|i| m.data[i * cols..(i + 1) * cols].to_vec()).collect();
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t..rows, t..cols) else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let pivot_row = a[t].clone();
                row_sub(&mut a[i], &pivot_row, &q, t);
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                col_sub(&mut a, j, t, &q, t);
                clean &= a[t][j].is_zero();
            }
            if !clean {
                // a smaller remainder sits in row or column t; make it the pivot
                let in_col = min_abs_entry(&a, t..rows, t..t + 1);
                let in_row = min_abs_entry(&a, t..t + 1, t..cols);
                let best = [in_col, in_row]
                    .into_iter()
                    .flatten()
                    .min_by(|x, y| a[x.0][x.1].abs().cmp(&a[y.0][y.1].abs()))
                    .expect("pivot is nonzero");
                a.swap(t, best.0);
                swap_cols(&mut a, t, best.1);
                continue;
            }
            // the pivot must divide the remaining block
            let offender = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match offender {
                Some(i) => {
                    let other = a[i].clone();
                    for j in t..cols {
                        let v = a[t][j].clone() + &other[j];
                        a[t][j] = v;
                    }
                }
                None => break,
            }
        }
        factors.push(a[t][t].abs());
        t += 1;
    }
    SmithForm { rank: factors.len(), invariant_factors: factors }
}

fn min_abs_entry(a: &[Vec<BigInt>], rows: Range<usize>, cols: Range<usize>) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            let v = &a[i][j];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
                if v.is_one() || (-v).is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn swap_cols(a: &mut [Vec<BigInt>], x: usize, y: usize) {
    if x != y {
        for row in a.iter_mut() {
            row.swap(x, y);
        }
    }
}

fn row_sub(row: &mut [BigInt], pivot: &[BigInt], q: &BigInt, from: usize) {
    for j in from..row.len() {
        if !pivot[j].is_zero() {
            row[j] -= q * &pivot[j];
        }
    }
}

fn col_sub(a: &mut [Vec<BigInt>], j: usize, pivot_col: usize, q: &BigInt, from: usize) {
    for row in a.iter_mut().skip(from) {
        if !row[pivot_col].is_zero() {
            let d = q * &row[pivot_col];
            row[j] -= d;
        }
    }
}

/// Rank over the field with `p` elements (`p` prime, below `2^32`).
pub fn rank_mod_prime(m: &IntMatrix, p: u64) -> usize {
    assert!(p > 1 && p < 1 << 32, "modulus out of range");
    let pb = BigInt::from(p);
    let mut a: Vec<Vec<u64>> = (0..m.rows)
        .map(|i| (0..m.cols).map(|j| m.get(i, j).mod_floor(&pb).to_u64().expect("reduced entry fits")).collect())
        .collect();
    let inv = |x: u64| pow_mod(x, p - 2, p);
    let mut rank = 0;
    for col in 0..m.cols {
        let Some(pr) = (rank..m.rows).find(|&i| a[i][col] != 0) else { continue };
        a.swap(rank, pr);
        let scale = inv(a[rank][col]);
        for x in a[rank].iter_mut() {
            *x = *x * scale % p;
        }
        let pivot = a[rank].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x = (*x + p - f * y % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Homology summary in degrees `0..=max_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    /// Simplex counts in degrees `0..=max_dim + 1`.
    pub counts: Vec<u64>,
    /// Ranks of `∂_1 ..= ∂_{max_dim+1}`.
    pub boundary_ranks: Vec<usize>,
    pub betti: Vec<u64>,
    /// Nontrivial invariant factors of `∂_{k+1}`: the torsion of `H_k`.
    pub torsion: Vec<Vec<String>>,
    /// Alternating sum of the simplex counts in degrees `0..=max_dim`.
    pub euler_characteristic: i64,
    pub euler_from_betti: i64,
    /// No simplices above `max_dim`, so the numbers above describe the whole complex.
    pub complete: bool,
}

pub fn betti_numbers(c: &FlagComplex, max_dim: usize) -> HomologyReport {
    let simplices = c.simplices(max_dim + 1);
    let counts: Vec<u64> = simplices.iter().map(|g| g.len() as u64).collect();
    let boundaries = boundaries_from(&simplices, max_dim + 1);
    let forms: Vec<SmithForm> = boundaries.iter().map(|b| smith_normal_form(&b.matrix)).collect();
    let rank = |k: usize| if k == 0 { 0 } else { forms[k - 1].rank };
    let betti: Vec<u64> = (0..=max_dim).map(|k| counts[k] - (rank(k) + rank(k + 1)) as u64).collect();
    let torsion = (0..=max_dim)
        .map(|k| forms[k].invariant_factors.iter().filter(|d| !d.is_one()).map(ToString::to_string).collect())
        .collect();
    let alt = |xs: &[u64]| xs.iter().enumerate().map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
    HomologyReport {
        euler_characteristic: alt(&counts[..=max_dim]),
        euler_from_betti: alt(&betti),
        complete: counts[max_dim + 1] == 0,
        counts,
        boundary_ranks: forms.iter().map(|f| f.rank).collect(),
        betti,
        torsion,
    }
}
