//! The sum-rank ambient space: block profiles, matrix tuples, the matrix
//! representation of vectors over GF(q^m), weights, and the Singleton bound.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf::{BaseField, FieldElement, FieldTower, FiniteField};
use crate::linalg;

/// A dense matrix over GF(q), entries stored as canonical codes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = (0..self.rows).map(|r| self.row(r)).collect();
        write!(f, "{rows:?}")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<u32>) -> Self {
        assert_eq!(data.len(), rows * cols);
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn data(&self) -> &[u32] {
        &self.data
    }
    pub fn row(&self, r: usize) -> &[u32] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn get(&self, r: usize, c: usize) -> u32 {
        self.data[r * self.cols + c]
    }
    pub fn set(&mut self, r: usize, c: usize, v: u32) {
        self.data[r * self.cols + c] = v;
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn rank(&self, f: &BaseField) -> usize {
        let mut work = self.data.clone();
        linalg::rank_in_place(f, &mut work, self.rows, self.cols)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c));
            }
        }
        t
    }

    /// Entries at `rows × cols`, in the given index order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        let data = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| self.get(r, c)))
            .collect();
        Matrix::from_flat(rows.len(), cols.len(), data)
    }

    pub fn add(&self, f: &BaseField, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix::from_flat(self.rows, self.cols, data)
    }

    pub fn scale(&self, f: &BaseField, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(c, a)).collect();
        Matrix::from_flat(self.rows, self.cols, data)
    }

    pub fn neg(&self, f: &BaseField) -> Matrix {
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Matrix::from_flat(self.rows, self.cols, data)
    }

    pub fn matmul(&self, f: &BaseField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = f.add(out.get(i, j), f.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }
}

/// Ordered block shapes `(m_i, n_i)` with `m_i >= n_i >= 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BlockProfile {
    blocks: Vec<(usize, usize)>,
}

impl fmt::Debug for BlockProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BlockProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|(m, n)| format!("({m},{n})")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl BlockProfile {
    pub fn new(blocks: Vec<(usize, usize)>) -> Result<Self> {
        if let Some(&(rows, cols)) = blocks.iter().find(|&&(m, n)| n == 0 || n > m) {
            return Err(Error::BadBlock { rows, cols });
        }
        Ok(BlockProfile { blocks })
    }

    pub fn blocks(&self) -> &[(usize, usize)] {
        &self.blocks
    }
    pub fn len(&self) -> usize {
        self.blocks.len()
    }
    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
    /// Σ n_i, the largest possible weight.
    pub fn total_cols(&self) -> usize {
        self.blocks.iter().map(|b| b.1).sum()
    }
    /// Σ m_i n_i, the GF(q)-dimension of the ambient space.
    pub fn ambient_dim(&self) -> usize {
        self.blocks.iter().map(|(m, n)| m * n).sum()
    }

    pub fn is_canonical(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn has_sorted_rows(&self) -> bool {
        self.blocks.windows(2).all(|w| w[0].0 >= w[1].0)
    }

    /// Sorted by non-increasing rows, ties by non-increasing columns.
    pub fn canonicalize(&self) -> BlockProfile {
        let mut blocks = self.blocks.clone();
        blocks.sort_by(|a, b| b.cmp(a));
        BlockProfile { blocks }
    }

    pub fn concat(&self, other: &BlockProfile) -> BlockProfile {
        let mut blocks = self.blocks.clone();
        blocks.extend_from_slice(&other.blocks);
        BlockProfile { blocks }
    }

    /// Start offset of each block in the flat (block-major, row-major) layout.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.blocks
            .iter()
            .map(|(m, n)| {
                let o = acc;
                acc += m * n;
                o
            })
            .collect()
    }

    /// Sum-rank weight of a flattened tuple; `scratch` must hold the largest block.
    pub(crate) fn flat_weight(&self, f: &BaseField, flat: &[u32], scratch: &mut Vec<u32>) -> usize {
        let mut off = 0;
        let mut w = 0;
        for &(m, n) in &self.blocks {
            let len = m * n;
            let block = &flat[off..off + len];
            if block.iter().any(|&x| x != 0) {
                scratch.clear();
                scratch.extend_from_slice(block);
                w += linalg::rank_in_place(f, scratch, m, n);
            }
            off += len;
        }
        w
    }
}

/// A codeword: one GF(q) matrix per block.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MatrixTuple {
    blocks: Vec<Matrix>,
}

impl MatrixTuple {
    pub fn new(blocks: Vec<Matrix>) -> Self {
        MatrixTuple { blocks }
    }

    pub fn zero(profile: &BlockProfile) -> Self {
        MatrixTuple {
            blocks: profile.blocks.iter().map(|&(m, n)| Matrix::zeros(m, n)).collect(),
        }
    }

    pub fn blocks(&self) -> &[Matrix] {
        &self.blocks
    }
    pub fn into_blocks(self) -> Vec<Matrix> {
        self.blocks
    }

    pub fn shape(&self) -> Vec<(usize, usize)> {
        self.blocks.iter().map(|b| (b.rows, b.cols)).collect()
    }

    pub fn matches(&self, profile: &BlockProfile) -> bool {
        self.shape() == profile.blocks
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(Matrix::is_zero)
    }

    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.data.iter().copied()).collect()
    }

    pub fn from_flat(profile: &BlockProfile, flat: &[u32]) -> Self {
        assert_eq!(flat.len(), profile.ambient_dim());
        let mut off = 0;
        let blocks = profile
            .blocks
            .iter()
            .map(|&(m, n)| {
                let b = Matrix::from_flat(m, n, flat[off..off + m * n].to_vec());
                off += m * n;
                b
            })
            .collect();
        MatrixTuple { blocks }
    }

    pub fn add(&self, f: &BaseField, other: &MatrixTuple) -> Result<MatrixTuple> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch);
        }
        Ok(MatrixTuple {
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a.add(f, b)).collect(),
        })
    }

    pub fn sub(&self, f: &BaseField, other: &MatrixTuple) -> Result<MatrixTuple> {
        self.add(f, &other.neg(f))
    }

    pub fn neg(&self, f: &BaseField) -> MatrixTuple {
        MatrixTuple {
            blocks: self.blocks.iter().map(|b| b.neg(f)).collect(),
        }
    }

    pub fn scale(&self, f: &BaseField, c: u32) -> MatrixTuple {
        MatrixTuple {
            blocks: self.blocks.iter().map(|b| b.scale(f, c)).collect(),
        }
    }

    /// Tuple formed by these blocks followed by `other`'s.
    pub fn concat(&self, other: &MatrixTuple) -> MatrixTuple {
        let mut blocks = self.blocks.clone();
        blocks.extend(other.blocks.iter().cloned());
        MatrixTuple { blocks }
    }
}

/// The split `(n_1, ..., n_ℓ)` of a vector over GF(q^m) into blocks.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LengthPartition {
    parts: Vec<usize>,
    m: usize,
}

impl LengthPartition {
    pub fn new(parts: Vec<usize>, m: usize) -> Result<Self> {
        if let Some(&part) = parts.iter().find(|&&n| n == 0 || n > m) {
            return Err(Error::BadPartition { part, m });
        }
        Ok(LengthPartition { parts, m })
    }

    /// `count` blocks of length `r`.
    pub fn uniform(r: usize, count: usize, m: usize) -> Result<Self> {
        Self::new(vec![r; count], m)
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn length(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Profile of the image blocks, `(m, n_i)` each.
    pub fn profile(&self) -> BlockProfile {
        BlockProfile {
            blocks: self.parts.iter().map(|&n| (self.m, n)).collect(),
        }
    }
}

/// Block `i` is the `m × n_i` matrix whose column `j` holds the gamma
/// coordinates of the matching entry of `c`.
pub fn matrix_repr(
    tower: &FieldTower,
    c: &[FieldElement],
    partition: &LengthPartition,
) -> Result<MatrixTuple> {
    if c.len() != partition.length() {
        return Err(Error::LengthMismatch {
            expected: partition.length(),
            got: c.len(),
        });
    }
    if partition.m != tower.m() {
        return Err(Error::FieldMismatch);
    }
    let m = tower.m();
    let mut blocks = Vec::with_capacity(partition.parts.len());
    let mut pos = 0;
    for &n in &partition.parts {
        let mut b = Matrix::zeros(m, n);
        for j in 0..n {
            for (i, v) in tower.coords(c[pos + j]).into_iter().enumerate() {
                b.set(i, j, v);
            }
        }
        pos += n;
        blocks.push(b);
    }
    Ok(MatrixTuple { blocks })
}

/// Σ Rk(C_i) over GF(q).
pub fn sumrank_weight(f: &BaseField, c: &MatrixTuple) -> usize {
    c.blocks.iter().map(|b| b.rank(f)).sum()
}

pub fn sumrank_distance(f: &BaseField, c: &MatrixTuple, d: &MatrixTuple) -> Result<usize> {
    Ok(sumrank_weight(f, &c.sub(f, d)?))
}

/// `d = Σ_{i<j} n_i + delta + 1` with `0 <= delta < n_j`; `j` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundExpansion {
    pub j: usize,
    pub delta: usize,
}

fn expand_unchecked(profile: &BlockProfile, d: usize) -> Result<BoundExpansion> {
    let max = profile.total_cols();
    if d == 0 || d > max {
        return Err(Error::DistanceOutOfRange { d, max });
    }
    let mut prefix = 0;
    for (idx, &(_, n)) in profile.blocks.iter().enumerate() {
        if d <= prefix + n {
            return Ok(BoundExpansion {
                j: idx + 1,
                delta: d - prefix - 1,
            });
        }
        prefix += n;
    }
    unreachable!("d <= Σ n_i")
}

/// Splits `d` against a canonical profile by a prefix scan.
pub fn expand_distance(profile: &BlockProfile, d: usize) -> Result<BoundExpansion> {
    if !profile.is_canonical() {
        return Err(Error::NonCanonicalProfile);
    }
    expand_unchecked(profile, d)
}

/// Largest GF(q)-dimension of a code with minimum sum-rank distance `d`
/// on a canonical profile: `Σ_{i>=j} m_i n_i - m_j delta`.
pub fn singleton_bound(profile: &BlockProfile, d: usize) -> Result<usize> {
    if !profile.is_canonical() {
        return Err(Error::NonCanonicalProfile);
    }
    bound_in_order(profile, d)
}

/// The bound evaluated in the stored block order, which only needs
/// non-increasing row counts; ties in row count may appear in any order.
pub fn bound_in_order(profile: &BlockProfile, d: usize) -> Result<usize> {
    if !profile.has_sorted_rows() {
        return Err(Error::UnsortedProfile);
    }
    let BoundExpansion { j, delta } = expand_unchecked(profile, d)?;
    let tail: usize = profile.blocks[j - 1..].iter().map(|(m, n)| m * n).sum();
    Ok(tail - profile.blocks[j - 1].0 * delta)
}
