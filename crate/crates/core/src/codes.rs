//! GF(q)-linear and GF(q^m)-linear sum-rank codes and the exhaustive
//! distance oracles every construction is checked against.
//!
//! The oracles enumerate all `q^dim` codewords. The coefficient space is
//! split into contiguous index ranges that are walked independently (each
//! range keeps a running codeword updated one coordinate at a time) and the
//! per-range weight histograms are summed, so the result does not depend on
//! scheduling.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, FiniteField};
use crate::linalg;
use crate::sumrank::{matrix_repr, singleton_bound, BlockProfile, LengthPartition, MatrixTuple};

/// Default limit on the number of codewords an oracle may enumerate.
pub const DEFAULT_GUARD: u128 = 1_000_000;

/// A GF(q)-linear code given by a basis of matrix tuples.
#[derive(Clone, PartialEq, Eq)]
pub struct FqLinearCode {
    tower: Arc<FieldTower>,
    profile: BlockProfile,
    basis: Vec<MatrixTuple>,
}

impl fmt::Debug for FqLinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FqLinearCode")
            .field("q", &self.tower.q())
            .field("profile", &self.profile)
            .field("dim", &self.basis.len())
            .finish()
    }
}

/// Outcome of an MSRD check; `msrd` holds iff `dim == bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MsrdCertificate {
    pub d: usize,
    pub dim: usize,
    pub bound: usize,
    pub msrd: bool,
}

impl fmt::Display for MsrdCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d={} dim={} bound={} msrd={}",
            self.d, self.dim, self.bound, self.msrd
        )
    }
}

/// Exact number of codewords of each sum-rank weight.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightDistribution(pub BTreeMap<usize, u64>);

impl WeightDistribution {
    fn from_counts(counts: &[u64]) -> Self {
        WeightDistribution(
            counts
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w, c))
                .collect(),
        )
    }

    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn nonzero_weights(&self) -> Vec<usize> {
        self.0.keys().copied().filter(|&w| w > 0).collect()
    }

    pub fn min_nonzero(&self) -> Option<usize> {
        self.0.keys().copied().find(|&w| w > 0)
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(w, c)| format!("{w}:{c}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

fn pow_saturating(q: u32, k: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..k {
        acc = acc.saturating_mul(q as u128);
    }
    acc
}

impl FqLinearCode {
    pub fn new(tower: Arc<FieldTower>, profile: BlockProfile, basis: Vec<MatrixTuple>) -> Result<Self> {
        let q = tower.q();
        for b in &basis {
            if !b.matches(&profile) {
                return Err(Error::ShapeMismatch);
            }
            if let Some(&x) = b.flatten().iter().find(|&&x| x >= q) {
                return Err(Error::ElementOutOfRange {
                    code: x as u64,
                    order: q as u64,
                });
            }
        }
        let rows: Vec<Vec<u32>> = basis.iter().map(MatrixTuple::flatten).collect();
        if linalg::rank(tower.base(), &rows) != basis.len() {
            return Err(Error::DependentBasis);
        }
        Ok(FqLinearCode {
            tower,
            profile,
            basis,
        })
    }

    pub fn zero(tower: Arc<FieldTower>, profile: BlockProfile) -> Self {
        FqLinearCode {
            tower,
            profile,
            basis: Vec::new(),
        }
    }

    /// The whole ambient space, spanned by matrix units in block-major,
    /// row-major order.
    pub fn full(tower: Arc<FieldTower>, profile: BlockProfile) -> Self {
        let n = profile.ambient_dim();
        let basis = (0..n)
            .map(|i| {
                let mut flat = vec![0; n];
                flat[i] = 1;
                MatrixTuple::from_flat(&profile, &flat)
            })
            .collect();
        FqLinearCode {
            tower,
            profile,
            basis,
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn profile(&self) -> &BlockProfile {
        &self.profile
    }
    pub fn basis(&self) -> &[MatrixTuple] {
        &self.basis
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Same code with its basis permuted; `order[i]` is the old index placed at `i`.
    pub fn with_basis_order(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.dim()];
        for &i in order {
            if i >= self.dim() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Parameter("basis order must be a permutation".into()));
            }
        }
        if order.len() != self.dim() {
            return Err(Error::Parameter("basis order must be a permutation".into()));
        }
        Ok(FqLinearCode {
            basis: order.iter().map(|&i| self.basis[i].clone()).collect(),
            ..self.clone()
        })
    }

    /// Σ coeffs_i · basis_i.
    pub fn codeword(&self, coeffs: &[u32]) -> MatrixTuple {
        assert_eq!(coeffs.len(), self.dim());
        let f = self.tower.base();
        let mut acc = vec![0; self.profile.ambient_dim()];
        for (&c, b) in coeffs.iter().zip(&self.basis) {
            axpy(f, &mut acc, c, &b.flatten());
        }
        MatrixTuple::from_flat(&self.profile, &acc)
    }

    /// Whether both codes span the same subspace.
    pub fn same_span(&self, other: &FqLinearCode) -> bool {
        if self.profile != other.profile || self.tower != other.tower || self.dim() != other.dim() {
            return false;
        }
        let f = self.tower.base();
        let mut rows: Vec<Vec<u32>> = self.basis.iter().map(MatrixTuple::flatten).collect();
        rows.extend(other.basis.iter().map(MatrixTuple::flatten));
        linalg::rank(f, &rows) == self.dim()
    }

    /// Number of codewords, `q^dim` (saturating).
    pub fn size(&self) -> u128 {
        pow_saturating(self.tower.q(), self.dim())
    }

    fn check_guard(&self, guard: u128) -> Result<u64> {
        let needed = self.size();
        if needed > guard {
            return Err(Error::GuardExceeded { needed, guard });
        }
        Ok(needed as u64)
    }

    /// Every codeword once, in canonical coefficient order (coefficient
    /// vector read as a little-endian base-q integer).
    pub fn enumerate_codewords(&self, guard: u128) -> Result<Vec<MatrixTuple>> {
        let total = self.check_guard(guard)?;
        let q = self.tower.q() as u64;
        Ok((0..total)
            .map(|idx| {
                let coeffs: Vec<u32> = (0..self.dim())
                    .scan(idx, |rest, _| {
                        let d = (*rest % q) as u32;
                        *rest /= q;
                        Some(d)
                    })
                    .collect();
                self.codeword(&coeffs)
            })
            .collect())
    }

    /// Histogram of weights over all codewords, indexed by weight.
    fn weight_counts(&self, guard: u128) -> Result<Vec<u64>> {
        let total = self.check_guard(guard)?;
        let f = self.tower.base();
        let q = self.tower.q();
        let k = self.dim();
        let len = self.profile.ambient_dim();
        let max_w = self.profile.total_cols();
        let flat: Vec<Vec<u32>> = self.basis.iter().map(MatrixTuple::flatten).collect();
        // delta[c] = (c + 1) - c in code order, wrapping at q
        let delta: Vec<u32> = (0..q).map(|c| f.sub((c + 1) % q, c)).collect();
        let chunk = (total / 256).max(1024);
        let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
        let partials: Vec<Vec<u64>> = starts
            .par_iter()
            .map(|&start| {
                let end = (start + chunk).min(total);
                let mut counts = vec![0u64; max_w + 1];
                let mut digits = vec![0u32; k];
                let mut rest = start;
                let mut sum = vec![0u32; len];
                for (i, d) in digits.iter_mut().enumerate() {
                    *d = (rest % q as u64) as u32;
                    rest /= q as u64;
                    axpy(f, &mut sum, *d, &flat[i]);
                }
                let mut scratch = Vec::new();
                for idx in start..end {
                    counts[self.profile.flat_weight(f, &sum, &mut scratch)] += 1;
                    if idx + 1 == end {
                        break;
                    }
                    for (i, d) in digits.iter_mut().enumerate() {
                        axpy(f, &mut sum, delta[*d as usize], &flat[i]);
                        *d += 1;
                        if *d < q {
                            break;
                        }
                        *d = 0;
                    }
                }
                counts
            })
            .collect();
        let mut counts = vec![0u64; max_w + 1];
        for p in partials {
            for (c, x) in counts.iter_mut().zip(p) {
                *c += x;
            }
        }
        Ok(counts)
    }

    pub fn weight_distribution(&self, guard: u128) -> Result<WeightDistribution> {
        Ok(WeightDistribution::from_counts(&self.weight_counts(guard)?))
    }

    /// Minimum sum-rank weight over nonzero codewords, by exhaustive
    /// enumeration with [`DEFAULT_GUARD`].
    pub fn min_sumrank_distance(&self) -> Result<usize> {
        self.min_distance_with_guard(DEFAULT_GUARD)
    }

    pub fn min_distance_with_guard(&self, guard: u128) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::ZeroCode);
        }
        let counts = self.weight_counts(guard)?;
        Ok(counts
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, &c)| c > 0)
            .map(|(w, _)| w)
            .expect("a nonzero codeword has positive weight"))
    }

    pub fn is_msrd(&self) -> Result<MsrdCertificate> {
        self.is_msrd_with_guard(DEFAULT_GUARD)
    }

    /// Compares the dimension with the Singleton bound at the oracle
    /// distance. A dimension above the bound is an error, never a verdict.
    pub fn is_msrd_with_guard(&self, guard: u128) -> Result<MsrdCertificate> {
        let d = self.min_distance_with_guard(guard)?;
        certificate(&self.profile, d, self.dim())
    }

    pub fn is_one_weight(&self, guard: u128) -> Result<bool> {
        if self.dim() == 0 {
            return Err(Error::ZeroCode);
        }
        Ok(self.weight_distribution(guard)?.nonzero_weights().len() == 1)
    }
}

pub(crate) fn certificate(profile: &BlockProfile, d: usize, dim: usize) -> Result<MsrdCertificate> {
    let bound = singleton_bound(&profile.canonicalize(), d)?;
    if dim > bound {
        return Err(Error::SingletonViolated { dim, bound });
    }
    Ok(MsrdCertificate {
        d,
        dim,
        bound,
        msrd: dim == bound,
    })
}

#[inline]
pub(crate) fn axpy(f: &crate::gf::BaseField, acc: &mut [u32], c: u32, x: &[u32]) {
    if c == 0 {
        return;
    }
    let row = f.mul_row(c);
    for (a, &b) in acc.iter_mut().zip(x) {
        *a = f.add(*a, row[b as usize]);
    }
}

/// A GF(q^m)-linear code: a full-rank generator matrix plus a length partition.
#[derive(Clone, PartialEq, Eq)]
pub struct FqmLinearCode {
    tower: Arc<FieldTower>,
    partition: LengthPartition,
    genmat: Vec<Vec<FieldElement>>,
}

impl fmt::Debug for FqmLinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = self
            .genmat
            .iter()
            .map(|r| r.iter().map(|x| x.code()).collect())
            .collect();
        f.debug_struct("FqmLinearCode")
            .field("partition", &self.partition.parts())
            .field("genmat", &rows)
            .finish()
    }
}

impl FqmLinearCode {
    pub fn new(
        tower: Arc<FieldTower>,
        partition: LengthPartition,
        genmat: Vec<Vec<FieldElement>>,
    ) -> Result<Self> {
        if partition.m() != tower.m() {
            return Err(Error::FieldMismatch);
        }
        let n = partition.length();
        if let Some(row) = genmat.iter().find(|r| r.len() != n) {
            return Err(Error::LengthMismatch {
                expected: n,
                got: row.len(),
            });
        }
        if let Some(x) = genmat.iter().flatten().find(|x| x.code() as u64 >= tower.order()) {
            return Err(Error::ElementOutOfRange {
                code: x.code() as u64,
                order: tower.order(),
            });
        }
        if linalg::rank(tower.as_ref(), &genmat) != genmat.len() {
            return Err(Error::RankDeficient);
        }
        Ok(FqmLinearCode {
            tower,
            partition,
            genmat,
        })
    }

    pub fn zero(tower: Arc<FieldTower>, partition: LengthPartition) -> Self {
        FqmLinearCode {
            tower,
            partition,
            genmat: Vec::new(),
        }
    }

    pub fn full(tower: Arc<FieldTower>, partition: LengthPartition) -> Self {
        let n = partition.length();
        let genmat = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO })
                    .collect()
            })
            .collect();
        FqmLinearCode {
            tower,
            partition,
            genmat,
        }
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }
    pub fn partition(&self) -> &LengthPartition {
        &self.partition
    }
    pub fn genmat(&self) -> &[Vec<FieldElement>] {
        &self.genmat
    }
    /// Dimension over GF(q^m).
    pub fn dim(&self) -> usize {
        self.genmat.len()
    }
    pub fn length(&self) -> usize {
        self.partition.length()
    }
    pub fn profile(&self) -> BlockProfile {
        self.partition.profile()
    }

    /// `msg · G`.
    pub fn encode(&self, msg: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(msg.len(), self.dim());
        let t = &self.tower;
        let mut out = vec![FieldElement::ZERO; self.length()];
        for (&x, row) in msg.iter().zip(&self.genmat) {
            if x == FieldElement::ZERO {
                continue;
            }
            for (o, &g) in out.iter_mut().zip(row) {
                *o = t.add(*o, t.mul(x, g));
            }
        }
        out
    }

    /// The image under the matrix representation: basis
    /// `{M(gamma_j · g_i)}` for each row `i` and basis element `j`.
    pub fn to_fq_linear(&self) -> FqLinearCode {
        let t = &self.tower;
        let basis = self
            .genmat
            .iter()
            .flat_map(|row| {
                t.gamma().iter().map(move |&g| {
                    let scaled: Vec<FieldElement> = row.iter().map(|&x| t.mul(g, x)).collect();
                    matrix_repr(t, &scaled, &self.partition).expect("row length matches partition")
                })
            })
            .collect();
        FqLinearCode::new(t.clone(), self.partition.profile(), basis)
            .expect("a full-rank generator gives an independent GF(q)-basis")
    }

    /// Generator of `{y : Σ x_i y_i = 0 for all x in C}` under the standard
    /// coordinatewise bilinear form.
    pub fn dual(&self) -> FqmLinearCode {
        let n = self.length();
        let genmat = linalg::nullspace(self.tower.as_ref(), &self.genmat, n);
        FqmLinearCode {
            tower: self.tower.clone(),
            partition: self.partition.clone(),
            genmat,
        }
    }

    pub fn same_row_space(&self, other: &FqmLinearCode) -> bool {
        if self.tower != other.tower || self.partition != other.partition || self.dim() != other.dim() {
            return false;
        }
        let mut rows = self.genmat.clone();
        rows.extend(other.genmat.iter().cloned());
        linalg::rank(self.tower.as_ref(), &rows) == self.dim()
    }

    /// Second oracle path: enumerate all messages over GF(q^m), encode and
    /// take the weight of the matrix representation.
    pub fn min_distance_by_messages(&self, guard: u128) -> Result<usize> {
        if self.dim() == 0 {
            return Err(Error::ZeroCode);
        }
        let order = self.tower.order();
        let needed = pow_saturating(order as u32, self.dim());
        if needed > guard {
            return Err(Error::GuardExceeded { needed, guard });
        }
        let f = self.tower.base();
        let mut best = usize::MAX;
        for idx in 1..needed as u64 {
            let mut rest = idx;
            let msg: Vec<FieldElement> = (0..self.dim())
                .map(|_| {
                    let c = rest % order;
                    rest /= order;
                    self.tower.elem(c)
                })
                .collect();
            let word = self.encode(&msg);
            let tuple = matrix_repr(&self.tower, &word, &self.partition)?;
            best = best.min(crate::sumrank::sumrank_weight(f, &tuple));
        }
        Ok(best)
    }

    pub fn is_msrd(&self) -> Result<MsrdCertificate> {
        self.to_fq_linear().is_msrd()
    }
}
