//! Gaussian elimination over any [`FiniteField`], plus a table-driven rank
//! kernel for GF(q) used by the distance oracles.

use crate::gf::{BaseField, FiniteField};

/// Reduced row echelon form in place. Returns the pivot columns; rows past
/// the last pivot are zero.
pub fn rref<F: FiniteField>(f: &F, rows: &mut [Vec<F::Elem>]) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][c]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || f.is_zero(row[c]) {
                continue;
            }
            let factor = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                *x = f.sub(*x, f.mul(factor, y));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: FiniteField>(f: &F, rows: &[Vec<F::Elem>]) -> usize {
    let mut work = rows.to_vec();
    rref(f, &mut work).len()
}

/// Basis of `{x : rows · x = 0}` (right kernel), one vector per free column.
pub fn nullspace<F: FiniteField>(f: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut work = rows.to_vec();
    let pivots = rref(f, &mut work);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![f.zero(); ncols];
            v[fc] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(work[r][fc]);
            }
            v
        })
        .collect()
}

/// Inverse of a row-major `n×n` matrix over GF(q).
pub fn invert(f: &BaseField, a: &[u32], n: usize) -> Option<Vec<u32>> {
    let mut rows: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut row = a[i * n..(i + 1) * n].to_vec();
            row.extend((0..n).map(|j| u32::from(i == j)));
            row
        })
        .collect();
    let pivots = rref(f, &mut rows);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(rows.iter().flat_map(|r| r[n..].iter().copied()).collect())
}

/// `a · v` for a row-major `n×n` matrix.
pub fn mat_vec(f: &BaseField, a: &[u32], n: usize, v: &[u32]) -> Vec<u32> {
    (0..n)
        .map(|i| {
            a[i * n..(i + 1) * n]
                .iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

/// Rank of a row-major `rows×cols` matrix, destroying `data`.
pub fn rank_in_place(f: &BaseField, data: &mut [u32], rows: usize, cols: usize) -> usize {
    debug_assert_eq!(data.len(), rows * cols);
    // eliminate along the shorter side
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| data[i * cols + c] != 0) else {
            continue;
        };
        if p != r {
            for j in c..cols {
                data.swap(r * cols + j, p * cols + j);
            }
        }
        let inv = f.inv(data[r * cols + c]).expect("nonzero pivot");
        for i in r + 1..rows {
            let lead = data[i * cols + c];
            if lead == 0 {
                continue;
            }
            let factor = f.mul(lead, inv);
            let row = f.mul_row(factor);
            for j in c..cols {
                let t = row[data[r * cols + j] as usize];
                data[i * cols + j] = f.sub(data[i * cols + j], t);
            }
        }
        r += 1;
    }
    r
}
