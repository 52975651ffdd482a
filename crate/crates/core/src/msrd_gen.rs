//! Generator matrices `M_k(a, β)` of the GF(q^m)-linear MSRD codes with
//! `ℓ = μ(q−1)` blocks of length `r`, and the linearized Reed-Solomon case
//! `μ = 1`.
//!
//! Column layout: block group `u` (one per norm representative `a_u`) holds
//! `μr` consecutive columns, one per `β_j`; entry `(i, u, j)` is
//! `β_j^{q^i} · a_u^{(q^i−1)/(q−1)}`.

use std::sync::Arc;

use crate::codes::FqmLinearCode;
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower, DEFAULT_ELEMENT_GUARD};
use crate::linalg;
use crate::sumrank::LengthPartition;

/// Node budget of the β backtracking search.
pub const BETA_SEARCH_BUDGET: u64 = 5_000_000;

/// Nonzero elements `a_1, …, a_{q−1}` with pairwise distinct norms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormClassReps {
    pub a: Vec<FieldElement>,
}

/// `β_1, …, β_{μr}` grouped into `μ` subspaces `H_i` of dimension `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaVector {
    pub beta: Vec<FieldElement>,
    pub mu: usize,
    pub r: usize,
    pub k: usize,
}

/// First element of each norm value in canonical scan order.
pub fn select_norm_reps(tower: &FieldTower) -> Result<NormClassReps> {
    select_norm_reps_with_guard(tower, DEFAULT_ELEMENT_GUARD)
}

pub fn select_norm_reps_with_guard(tower: &FieldTower, guard: u64) -> Result<NormClassReps> {
    let want = tower.q() as usize - 1;
    let mut seen = Vec::new();
    let mut a = Vec::new();
    for x in tower.enumerate_elements(guard)?.into_iter().skip(1) {
        let n = tower.norm(x);
        if !seen.contains(&n) {
            seen.push(n);
            a.push(x);
            if a.len() == want {
                break;
            }
        }
    }
    debug_assert_eq!(a.len(), want, "the norm is onto GF(q)*");
    Ok(NormClassReps { a })
}

/// Every nonempty subset of `0..n` as a bitmask, at most `max` elements.
fn subsets_up_to(n: usize, max: usize) -> impl Iterator<Item = u32> {
    (1u32..(1 << n)).filter(move |s| s.count_ones() as usize <= max)
}

/// Checks the subspace conditions on (possibly partial) blocks: each block
/// is independent, and every block meets the sum of any `g` other blocks
/// trivially. Blocks may be shorter than `r` during search.
fn blocks_ok(tower: &FieldTower, blocks: &[Vec<Vec<u32>>], g: usize) -> bool {
    let f = tower.base();
    let dims: Vec<usize> = blocks.iter().map(|b| linalg::rank(f, b)).collect();
    if dims.iter().zip(blocks).any(|(&d, b)| d != b.len()) {
        return false;
    }
    let mu = blocks.len();
    for i in 0..mu {
        for s in subsets_up_to(mu, g) {
            if s & (1 << i) != 0 {
                continue;
            }
            let mut rows: Vec<Vec<u32>> = Vec::new();
            for (j, b) in blocks.iter().enumerate() {
                if s & (1 << j) != 0 {
                    rows.extend(b.iter().cloned());
                }
            }
            let dim_s = linalg::rank(f, &rows);
            rows.extend(blocks[i].iter().cloned());
            if linalg::rank(f, &rows) != dim_s + dims[i] {
                return false;
            }
        }
    }
    true
}

fn max_gamma(k: usize, mu: usize) -> usize {
    k.min(mu) - 1
}

/// Validates both subspace conditions exhaustively over all admissible `Γ`.
pub fn validate_beta(tower: &FieldTower, beta: &BetaVector) -> Result<()> {
    let BetaVector { beta: b, mu, r, k } = beta;
    let (mu, r, k) = (*mu, *r, *k);
    if mu == 0 || r == 0 || k == 0 {
        return Err(Error::InvalidBeta("mu, r and k must be positive".into()));
    }
    if b.len() != mu * r {
        return Err(Error::InvalidBeta(format!("expected {} entries, got {}", mu * r, b.len())));
    }
    if b.iter().any(|x| x.code() as u64 >= tower.order()) {
        return Err(Error::InvalidBeta("entry outside the field".into()));
    }
    if b.contains(&FieldElement::ZERO) {
        return Err(Error::InvalidBeta("entries must be nonzero".into()));
    }
    let blocks: Vec<Vec<Vec<u32>>> = b
        .chunks(r)
        .map(|c| c.iter().map(|&x| tower.coords(x)).collect())
        .collect();
    if !blocks_ok(tower, &blocks, max_gamma(k, mu)) {
        return Err(Error::InvalidBeta(
            "subspaces are not of full dimension or intersect nontrivially".into(),
        ));
    }
    Ok(())
}

/// Deterministic `β`: the polynomial-basis prefix for `μ = 1`, otherwise the
/// first solution of a backtracking search in canonical element order.
pub fn select_beta(tower: &FieldTower, mu: usize, r: usize, k: usize) -> Result<BetaVector> {
    if mu == 0 || r == 0 || k == 0 {
        return Err(Error::Parameter("mu, r and k must be positive".into()));
    }
    let m = tower.m();
    if r > m {
        return Err(Error::NoValidBeta(format!(
            "dimension count: each subspace needs dimension {r} > m = {m}"
        )));
    }
    if mu == 1 {
        let mut x = vec![0u32; m];
        let beta = (0..r)
            .map(|i| {
                x.iter_mut().for_each(|d| *d = 0);
                x[i] = 1;
                tower.from_digits(&x).expect("digits are in range")
            })
            .collect();
        return Ok(BetaVector { beta, mu, r, k });
    }
    let g = max_gamma(k, mu);
    if (g + 1) * r > m {
        return Err(Error::NoValidBeta(format!(
            "dimension count: {} subspaces of dimension {r} in direct sum need {} > m = {m}",
            g + 1,
            (g + 1) * r
        )));
    }
    let candidates: Vec<FieldElement> = tower.enumerate_elements(DEFAULT_ELEMENT_GUARD)?[1..].to_vec();
    let coords: Vec<Vec<u32>> = candidates.iter().map(|&x| tower.coords(x)).collect();
    let mut choice: Vec<usize> = Vec::with_capacity(mu * r);
    let mut nodes = 0u64;
    let blocks_of = |choice: &[usize]| -> Vec<Vec<Vec<u32>>> {
        choice
            .chunks(r)
            .map(|c| c.iter().map(|&i| coords[i].clone()).collect())
            .collect()
    };
    // iterative depth-first search; `next` is the candidate index to try at the current depth
    let mut next = 0usize;
    loop {
        if choice.len() == mu * r {
            let beta = choice.iter().map(|&i| candidates[i]).collect();
            return Ok(BetaVector { beta, mu, r, k });
        }
        let mut advanced = false;
        while next < candidates.len() {
            nodes += 1;
            if nodes > BETA_SEARCH_BUDGET {
                return Err(Error::NoValidBeta(format!(
                    "search budget of {BETA_SEARCH_BUDGET} nodes exhausted"
                )));
            }
            choice.push(next);
            if blocks_ok(tower, &blocks_of(&choice), g) {
                advanced = true;
                // within a block the order of vectors is irrelevant, so keep it increasing
                next = if choice.len().is_multiple_of(r) { 0 } else { next + 1 };
                break;
            }
            choice.pop();
            next += 1;
        }
        if !advanced {
            match choice.pop() {
                Some(last) => next = last + 1,
                None => {
                    return Err(Error::NoValidBeta(format!(
                        "no admissible beta in GF({}^{m}) for mu={mu}, r={r}, k={k}",
                        tower.q()
                    )))
                }
            }
        }
    }
}

/// The `k × μ(q−1)r` matrix `M_k(a, β)` on the partition `(r, …, r)`.
pub fn build_generator(
    tower: &Arc<FieldTower>,
    reps: &NormClassReps,
    beta: &BetaVector,
    k: usize,
) -> Result<FqmLinearCode> {
    let q = tower.q() as usize;
    if reps.a.len() != q - 1 {
        return Err(Error::Parameter(format!("need {} norm representatives", q - 1)));
    }
    let n = beta.mu * (q - 1) * beta.r;
    if k == 0 || k > n {
        return Err(Error::Parameter(format!("k must lie in 1..={n}")));
    }
    let checked = BetaVector { k, ..beta.clone() };
    validate_beta(tower, &checked)?;
    let partition = LengthPartition::uniform(beta.r, beta.mu * (q - 1), tower.m())?;
    // running powers a_u^{(q^i−1)/(q−1)}, updated by a_u^{q^i}
    let mut apow: Vec<FieldElement> = vec![FieldElement::ONE; q - 1];
    let mut genmat = Vec::with_capacity(k);
    for i in 0..k {
        if let Some(qi) = (q as u128).checked_pow(i as u32) {
            assert_eq!((qi - 1) % (q as u128 - 1), 0, "norm-type exponent must be integral");
        }
        let fb: Vec<FieldElement> = beta.beta.iter().map(|&b| tower.frobenius(b, i)).collect();
        let row: Vec<FieldElement> = apow
            .iter()
            .flat_map(|&ap| fb.iter().map(move |&b| tower.mul(b, ap)))
            .collect();
        genmat.push(row);
        for (ap, &a) in apow.iter_mut().zip(&reps.a) {
            *ap = tower.mul(*ap, tower.frobenius(a, i));
        }
    }
    FqmLinearCode::new(tower.clone(), partition, genmat)
}

/// Linearized Reed-Solomon code: `μ = 1` with the default selections.
pub fn build_lrs(tower: &Arc<FieldTower>, r: usize, k: usize) -> Result<FqmLinearCode> {
    if r == 0 || r > tower.m() {
        return Err(Error::Parameter(format!("r must lie in 1..={}", tower.m())));
    }
    let reps = select_norm_reps(tower)?;
    let beta = select_beta(tower, 1, r, k)?;
    build_generator(tower, &reps, &beta, k)
}

/// General code with `μ ≥ 1` and the default selections.
pub fn build_msrd(tower: &Arc<FieldTower>, mu: usize, r: usize, k: usize) -> Result<FqmLinearCode> {
    let reps = select_norm_reps(tower)?;
    let beta = select_beta(tower, mu, r, k)?;
    build_generator(tower, &reps, &beta, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(q: u64, m: usize) -> Arc<FieldTower> {
        Arc::new(FieldTower::for_q(q, m).unwrap())
    }

    fn codes(v: &[FieldElement]) -> Vec<u32> {
        v.iter().map(|x| x.code()).collect()
    }

    #[test]
    fn norm_reps_examples() {
        assert_eq!(codes(&select_norm_reps(&t(2, 3)).unwrap().a), vec![1]);
        assert_eq!(codes(&select_norm_reps(&t(3, 2)).unwrap().a), vec![1, 4]);
        assert_eq!(codes(&select_norm_reps(&t(2, 2)).unwrap().a), vec![1]);
        let reps = select_norm_reps(&t(5, 2)).unwrap();
        let tw = t(5, 2);
        let mut norms: Vec<_> = reps.a.iter().map(|&a| tw.norm(a)).collect();
        norms.dedup();
        assert_eq!(norms.len(), 4);
    }

    #[test]
    fn beta_examples() {
        let tw = t(3, 2);
        assert_eq!(codes(&select_beta(&tw, 1, 2, 2).unwrap().beta), vec![1, 3]);
        assert_eq!(codes(&select_beta(&tw, 2, 1, 2).unwrap().beta), vec![1, 3]);
        assert!(matches!(select_beta(&t(2, 2), 2, 2, 2), Err(Error::NoValidBeta(_))));
    }

    #[test]
    fn beta_k1_allows_repeated_subspaces() {
        // with k = 1 no intersection condition applies
        let tw = t(2, 2);
        let b = select_beta(&tw, 3, 2, 1).unwrap();
        validate_beta(&tw, &b).unwrap();
        assert_eq!(b.beta.len(), 6);
    }

    #[test]
    fn validate_rejects_overlap() {
        let tw = t(3, 2);
        let e = |c| tw.element(c).unwrap();
        let bad = BetaVector { beta: vec![e(1), e(2)], mu: 2, r: 1, k: 2 };
        assert!(validate_beta(&tw, &bad).is_err());
        let ok = BetaVector { beta: vec![e(1), e(2)], mu: 2, r: 1, k: 1 };
        assert!(validate_beta(&tw, &ok).is_ok());
    }

    #[test]
    fn generator_first_row_repeats_beta() {
        let tw = t(3, 2);
        let beta = select_beta(&tw, 2, 1, 2).unwrap();
        let reps = select_norm_reps(&tw).unwrap();
        let c = build_generator(&tw, &reps, &beta, 1).unwrap();
        assert_eq!(c.genmat().len(), 1);
        assert_eq!(codes(&c.genmat()[0]), vec![1, 3, 1, 3]);
        // k = 1 imposes no intersection condition
        assert_eq!(codes(&build_msrd(&tw, 2, 1, 1).unwrap().genmat()[0]), vec![1, 1, 1, 1]);
    }

    #[test]
    fn lrs_examples() {
        let c = build_lrs(&t(3, 2), 2, 2).unwrap();
        let g: Vec<Vec<u32>> = c.genmat().iter().map(|r| codes(r)).collect();
        assert_eq!(g, vec![vec![1, 3, 1, 3], vec![1, 6, 4, 7]]);
        assert_eq!(c.to_fq_linear().min_sumrank_distance().unwrap(), 3);
        let c = build_lrs(&t(2, 3), 3, 1).unwrap();
        assert_eq!(c.to_fq_linear().min_sumrank_distance().unwrap(), 3);
        let c = build_lrs(&t(3, 2), 2, 4).unwrap();
        assert_eq!(c.to_fq_linear().min_sumrank_distance().unwrap(), 1);
        assert!(build_lrs(&t(3, 2), 2, 5).is_err());
        assert!(build_lrs(&t(3, 2), 3, 1).is_err());
    }

    #[test]
    fn mu2_generator_is_msrd() {
        let c = build_msrd(&t(3, 2), 2, 1, 2).unwrap();
        let cert = c.is_msrd().unwrap();
        assert_eq!((cert.d, cert.msrd), (3, true));
    }
}
