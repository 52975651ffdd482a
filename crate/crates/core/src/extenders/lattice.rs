//! Extension through a lattice `{C_I}` of MSRD codes, `C_I = C_∅ ⊕ ⟨B_{i,j} : i ∈ I⟩`.
//!
//! Ext blocks are split into `t` consecutive groups by breakpoints
//! `ℓ_1 < … < ℓ_t`; ext block `j` of group `i` carries a subspace `V_j ⊆ GF(q)^m`
//! and contributes, for each stored basis vector `α` of `V_j`, the codeword
//! `(Σ_k α_k B_{i,k}, …, E_a, …)` where `E_a` is the `a`-th matrix unit of
//! block `j` in row-major order.

use std::sync::Arc;

use rayon::prelude::*;

use crate::codes::{certificate, FqLinearCode, FqmLinearCode, WeightDistribution, DEFAULT_GUARD};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, DEFAULT_ELEMENT_GUARD};
use crate::linalg;
use crate::msrd_gen::{build_generator, select_beta, select_norm_reps, BetaVector};
use crate::sumrank::{matrix_repr, BlockProfile, LengthPartition, MatrixTuple};

#[derive(Debug, Clone)]
pub struct LatticeSpec {
    /// `C_∅` on blocks `1..ℓ`; its last block has `m` rows.
    pub base: FqLinearCode,
    /// `B_{i,j}` for `i < t`, `j < m`.
    pub b_tuples: Vec<Vec<MatrixTuple>>,
    /// `ℓ_1, …, ℓ_t`.
    pub breakpoints: Vec<usize>,
    /// Shapes `(m_{ℓ+j}, n_{ℓ+j})`.
    pub ext_blocks: Vec<(usize, usize)>,
    /// Basis of `V_j ⊆ GF(q)^m` for each ext block.
    pub v_bases: Vec<Vec<Vec<u32>>>,
}

/// One member `C_I` of the lattice; `subset` is 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMember {
    pub subset: Vec<usize>,
    pub dim: usize,
    pub distance: usize,
}

fn check_groups(m: usize, t: usize, breakpoints: &[usize], ext: &[(usize, usize)]) -> Result<()> {
    if breakpoints.len() != t
        || breakpoints.first().is_some_and(|&b| b == 0)
        || breakpoints.windows(2).any(|w| w[0] >= w[1])
        || breakpoints.last().copied().unwrap_or(0) != ext.len()
    {
        return Err(Error::BadBreakpoints);
    }
    let mut lo = 0;
    for (g, &hi) in breakpoints.iter().enumerate() {
        let total: usize = ext[lo..hi].iter().map(|(a, b)| a * b).sum();
        if total > m {
            return Err(Error::GroupTooLarge { group: g + 1, total, m });
        }
        lo = hi;
    }
    Ok(())
}

/// Consecutive standard basis vectors of GF(q)^m, restarting in each group.
fn default_v_bases(m: usize, breakpoints: &[usize], ext: &[(usize, usize)]) -> Vec<Vec<Vec<u32>>> {
    let mut out = Vec::with_capacity(ext.len());
    let mut lo = 0;
    for &hi in breakpoints {
        let mut offset = 0;
        for &(a, b) in &ext[lo..hi] {
            out.push(
                (offset..offset + a * b)
                    .map(|i| {
                        let mut v = vec![0; m];
                        v[i] = 1;
                        v
                    })
                    .collect(),
            );
            offset += a * b;
        }
        lo = hi;
    }
    out
}

impl LatticeSpec {
    /// Spec with the default subspaces `V_j`.
    pub fn new(
        base: FqLinearCode,
        b_tuples: Vec<Vec<MatrixTuple>>,
        breakpoints: Vec<usize>,
        ext_blocks: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let m = base.profile().blocks().last().map_or(0, |b| b.0);
        check_groups(m, b_tuples.len(), &breakpoints, &ext_blocks)?;
        let v_bases = default_v_bases(m, &breakpoints, &ext_blocks);
        Ok(LatticeSpec {
            base,
            b_tuples,
            breakpoints,
            ext_blocks,
            v_bases,
        })
    }

    pub fn with_v_bases(mut self, v_bases: Vec<Vec<Vec<u32>>>) -> Self {
        self.v_bases = v_bases;
        self
    }

    pub fn t(&self) -> usize {
        self.b_tuples.len()
    }

    /// Row count shared by the trailing blocks of the base profile.
    pub fn m(&self) -> usize {
        self.base.profile().blocks().last().map_or(0, |b| b.0)
    }

    /// `C_I` for a 1-based subset `I` of `1..=t`.
    pub fn member_code(&self, subset: &[usize]) -> Result<FqLinearCode> {
        let t = self.t();
        if subset.iter().any(|&i| i == 0 || i > t) {
            return Err(Error::Parameter(format!("subset entries must lie in 1..={t}")));
        }
        self.member(subset.iter().fold(0, |acc, &i| acc | 1 << (i - 1)))
    }

    fn member(&self, mask: u32) -> Result<FqLinearCode> {
        let mut basis = self.base.basis().to_vec();
        for (i, row) in self.b_tuples.iter().enumerate() {
            if mask & (1 << i) != 0 {
                basis.extend(row.iter().cloned());
            }
        }
        FqLinearCode::new(self.base.tower().clone(), self.base.profile().clone(), basis)
            .map_err(|_| Error::ExtensionTuplesDependent)
    }
}

fn subset_of(mask: u32, t: usize) -> Vec<usize> {
    (0..t).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

/// Oracle distance of every `C_I`, in bitmask order of `I`. The zero code
/// is assigned distance `n + 1`.
pub fn lattice_distances(spec: &LatticeSpec) -> Result<Vec<LatticeMember>> {
    let t = spec.t();
    let n = spec.base.profile().total_cols();
    (0..1u32 << t)
        .into_par_iter()
        .map(|mask| {
            let code = spec.member(mask)?;
            let distance = if code.dim() == 0 { n + 1 } else { code.min_sumrank_distance()? };
            Ok(LatticeMember {
                subset: subset_of(mask, t),
                dim: code.dim(),
                distance,
            })
        })
        .collect()
}

/// Validates every premise of the extension, in order, and builds the code.
pub fn extend_lattice(spec: &LatticeSpec) -> Result<FqLinearCode> {
    let t = spec.t();
    let m = spec.m();
    let base = &spec.base;
    let profile = base.profile();
    let f = base.tower().base();
    if t == 0 {
        return Err(Error::Parameter("t must be positive".into()));
    }
    for row in &spec.b_tuples {
        if row.len() != m {
            return Err(Error::Parameter(format!("each extension row needs {m} tuples")));
        }
        if row.iter().any(|b| !b.matches(profile)) {
            return Err(Error::ShapeMismatch);
        }
    }
    check_groups(m, t, &spec.breakpoints, &spec.ext_blocks)?;
    let ext_profile = BlockProfile::new(spec.ext_blocks.clone())?;

    let n = profile.total_cols();
    let d = if base.dim() == 0 { n + 1 } else { base.min_sumrank_distance()? };
    let s = profile.blocks().iter().position(|b| b.0 == m).unwrap_or(0);
    let rhs = profile.blocks()[..s].iter().map(|b| b.1).sum::<usize>() + 1;
    let lhs = d as i64 - t as i64;
    if lhs < rhs as i64 {
        return Err(Error::DistanceCondition { lhs, rhs });
    }
    if base.dim() > 0 && !certificate(profile, d, base.dim())?.msrd {
        return Err(Error::NotMsrd("base code".into()));
    }
    let mut rows: Vec<Vec<u32>> = base.basis().iter().map(MatrixTuple::flatten).collect();
    rows.extend(spec.b_tuples.iter().flatten().map(MatrixTuple::flatten));
    if linalg::rank(f, &rows) != base.dim() + t * m {
        return Err(Error::ExtensionTuplesDependent);
    }

    if spec.v_bases.len() != spec.ext_blocks.len() {
        return Err(Error::Parameter("one subspace basis per ext block is required".into()));
    }
    let q = base.tower().q();
    for (j, (v, &(a, b))) in spec.v_bases.iter().zip(&spec.ext_blocks).enumerate() {
        if v.iter().any(|x| x.len() != m || x.iter().any(|&c| c >= q)) {
            return Err(Error::Parameter(format!("subspace basis {} has bad vectors", j + 1)));
        }
        let got = linalg::rank(f, v);
        if got != a * b || v.len() != a * b {
            return Err(Error::SubspaceDimension {
                block: j + 1,
                expected: a * b,
                got,
            });
        }
    }
    let mut lo = 0;
    for (g, &hi) in spec.breakpoints.iter().enumerate() {
        let stacked: Vec<Vec<u32>> = spec.v_bases[lo..hi].iter().flatten().cloned().collect();
        if linalg::rank(f, &stacked) != stacked.len() {
            return Err(Error::NotDirectSum { group: g + 1 });
        }
        lo = hi;
    }

    for member in lattice_distances(spec)? {
        let expected = d - member.subset.len();
        if member.distance != expected {
            return Err(Error::LatticeBroken {
                subset: member.subset,
                expected,
                found: Some(member.distance),
            });
        }
    }

    let zero_ext = MatrixTuple::zero(&ext_profile);
    let mut basis: Vec<MatrixTuple> = base.basis().iter().map(|b| b.concat(&zero_ext)).collect();
    let mut lo = 0;
    for (i, &hi) in spec.breakpoints.iter().enumerate() {
        for j in lo..hi {
            let (_, cols) = spec.ext_blocks[j];
            for (a, alpha) in spec.v_bases[j].iter().enumerate() {
                let mut head = vec![0u32; profile.ambient_dim()];
                for (&c, bt) in alpha.iter().zip(&spec.b_tuples[i]) {
                    crate::codes::axpy(f, &mut head, c, &bt.flatten());
                }
                let mut ext = zero_ext.clone().into_blocks();
                ext[j].set(a / cols, a % cols, 1);
                basis.push(MatrixTuple::from_flat(profile, &head).concat(&MatrixTuple::new(ext)));
            }
        }
        lo = hi;
    }
    FqLinearCode::new(base.tower().clone(), profile.concat(&ext_profile), basis)
}

/// Rows `g_1, …, g_{t+k}` over GF(q^m) whose leading `t` rows extend the
/// code spanned by the remaining `k`.
#[derive(Debug, Clone)]
pub struct LatticeRows {
    pub tower: Arc<FieldTower>,
    pub partition: LengthPartition,
    pub rows: Vec<Vec<FieldElement>>,
    pub t: usize,
    pub beta: BetaVector,
}

impl LatticeRows {
    /// `C_∅ = M(⟨g_{t+1}, …⟩)` and `B_{i,j} = M(γ_j g_i)`.
    pub fn spec(&self, ext_blocks: Vec<(usize, usize)>, breakpoints: Vec<usize>) -> Result<LatticeSpec> {
        let tw = &self.tower;
        let base = if self.rows.len() > self.t {
            FqmLinearCode::new(tw.clone(), self.partition.clone(), self.rows[self.t..].to_vec())?
        } else {
            FqmLinearCode::zero(tw.clone(), self.partition.clone())
        };
        let b_tuples = self.rows[..self.t]
            .iter()
            .map(|g| {
                tw.gamma()
                    .iter()
                    .map(|&gj| {
                        let scaled: Vec<FieldElement> = g.iter().map(|&x| tw.mul(gj, x)).collect();
                        matrix_repr(tw, &scaled, &self.partition)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        LatticeSpec::new(base.to_fq_linear(), b_tuples, breakpoints, ext_blocks)
    }
}

/// `t = 2` rows from `M_{k+2}`: `g_1` is its first row, `g_2` its last row and
/// `g_3, …, g_{k+2}` the rows in between.
pub fn build_lattice_t2(tower: &Arc<FieldTower>, mu: usize, r: usize, k: usize) -> Result<LatticeRows> {
    let n = mu * (tower.q() as usize - 1) * r;
    if k + 2 > n {
        return Err(Error::Parameter(format!("k + 2 = {} exceeds the length {n}", k + 2)));
    }
    let reps = select_norm_reps(tower)?;
    let beta = select_beta(tower, mu, r, k + 2)?;
    let code = build_generator(tower, &reps, &beta, k + 2)?;
    let g = code.genmat();
    let mut rows = vec![g[0].clone(), g[k + 1].clone()];
    rows.extend(g[1..=k].iter().cloned());
    Ok(LatticeRows {
        tower: tower.clone(),
        partition: code.partition().clone(),
        rows,
        t: 2,
        beta,
    })
}

/// `t = 3`, `k = 0`: the first three rows of `M_3`, which form a lattice
/// when `q` is even and `m` is odd.
pub fn build_lattice_t3(tower: &Arc<FieldTower>, mu: usize, r: usize) -> Result<LatticeRows> {
    if !tower.q().is_multiple_of(2) {
        return Err(Error::QMustBeEven);
    }
    if tower.m().is_multiple_of(2) {
        return Err(Error::MOddRequired);
    }
    let n = mu * (tower.q() as usize - 1) * r;
    if n < 3 {
        return Err(Error::Parameter(format!("length {n} is below 3")));
    }
    let reps = select_norm_reps(tower)?;
    let beta = select_beta(tower, mu, r, 3)?;
    let code = build_generator(tower, &reps, &beta, 3)?;
    Ok(LatticeRows {
        tower: tower.clone(),
        partition: code.partition().clone(),
        rows: code.genmat().to_vec(),
        t: 3,
        beta,
    })
}

/// Criterion versus oracle for one-weightness of a `t = 2` extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OneWeightReport {
    pub criterion: bool,
    pub one_weight: bool,
    pub distribution: WeightDistribution,
}

impl OneWeightReport {
    pub fn agree(&self) -> bool {
        self.criterion == self.one_weight
    }
}

/// For a code of dimension `2m` built from a `t = 2` lattice: the criterion
/// is breakpoints `[1, 2]` and the subspaces `H_i` covering GF(q^m), which is
/// tested by exhaustive membership.
pub fn check_one_weight(code: &FqLinearCode, breakpoints: &[usize], beta: &BetaVector) -> Result<OneWeightReport> {
    let tower = code.tower();
    let m = tower.m();
    if code.dim() != 2 * m {
        return Err(Error::OneWeightInapplicable {
            expected: 2 * m,
            got: code.dim(),
        });
    }
    let f = tower.base();
    let spaces: Vec<Vec<Vec<u32>>> = beta
        .beta
        .chunks(beta.r)
        .map(|h| h.iter().map(|&x| tower.coords(x)).collect())
        .collect();
    let dims: Vec<usize> = spaces.iter().map(|h| linalg::rank(f, h)).collect();
    let covers = tower.enumerate_elements(DEFAULT_ELEMENT_GUARD)?.into_iter().all(|x| {
        let v = tower.coords(x);
        spaces.iter().zip(&dims).any(|(h, &dh)| {
            let mut rows = h.clone();
            rows.push(v.clone());
            linalg::rank(f, &rows) == dh
        })
    });
    let criterion = breakpoints == [1, 2] && covers;
    let distribution = code.weight_distribution(DEFAULT_GUARD)?;
    Ok(OneWeightReport {
        criterion,
        one_weight: distribution.nonzero_weights().len() == 1,
        distribution,
    })
}
