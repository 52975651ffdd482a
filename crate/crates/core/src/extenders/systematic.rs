//! Extension through a generator matrix of an MSRD code `D_0` on the
//! partition `(n_1, …, n_ℓ, t)` brought to the form whose last `t` columns are
//! `(I_t; 0)`, with the rows `(λ_1, …, λ_t) ∈ V` sent to new blocks by `φ`.
//!
//! The resulting distance is `d(D_0)` itself and the free part has
//! `k = dim(D_0) − t` rows.

use std::sync::Arc;

use crate::codes::{FqLinearCode, FqmLinearCode};
use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::sumrank::{matrix_repr, LengthPartition, MatrixTuple};

use super::partition::{phi_build, MatrixPartition};

/// Rows `g_1, …, g_{t+k}` restricted to the first `n` columns of the
/// reduced generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystematicForm {
    pub g_rows: Vec<Vec<FieldElement>>,
    pub t: usize,
    pub k: usize,
}

impl SystematicForm {
    /// The full `(t+k) × (n+t)` matrix with `(I_t; 0)` appended.
    pub fn reassemble(&self) -> Vec<Vec<FieldElement>> {
        self.g_rows
            .iter()
            .enumerate()
            .map(|(i, g)| {
                let mut row = g.clone();
                row.extend((0..self.t).map(|j| if i == j { FieldElement::ONE } else { FieldElement::ZERO }));
                row
            })
            .collect()
    }
}

/// Eliminates on the last `t` columns only, so input already in the target
/// form is returned unchanged.
pub fn systematic_form(code: &FqmLinearCode, t: usize) -> Result<SystematicForm> {
    let tw = code.tower();
    let dim = code.dim();
    if t == 0 || t > dim {
        return Err(Error::Parameter(format!("t must lie in 1..={dim}")));
    }
    if code.partition().parts().last() != Some(&t) {
        return Err(Error::Parameter(format!("the last block must have length {t}")));
    }
    let n = code.length() - t;
    let mut rows = code.genmat().to_vec();
    for c in 0..t {
        let col = n + c;
        let p = (c..dim)
            .find(|&i| rows[i][col] != FieldElement::ZERO)
            .ok_or(Error::SingularTail { t })?;
        rows.swap(c, p);
        let inv = tw.inv(rows[c][col])?;
        if inv != FieldElement::ONE {
            for x in rows[c].iter_mut() {
                *x = tw.mul(*x, inv);
            }
        }
        let pivot = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == c || row[col] == FieldElement::ZERO {
                continue;
            }
            let factor = row[col];
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = tw.sub(*x, tw.mul(factor, y));
            }
        }
    }
    Ok(SystematicForm {
        g_rows: rows.into_iter().map(|mut r| {
            r.truncate(n);
            r
        }).collect(),
        t,
        k: dim - t,
    })
}

/// Builds the extended code; the input must be MSRD (checked by oracle).
pub fn extend_systematic(d0_code: &FqmLinearCode, t: usize, partition: &MatrixPartition) -> Result<FqLinearCode> {
    let tw: &Arc<FieldTower> = d0_code.tower();
    let m = tw.m();
    if t == 0 || t > m {
        return Err(Error::Parameter(format!("t must lie in 1..={m}")));
    }
    if partition.t() != t || partition.m() != m {
        return Err(Error::Parameter(format!("partition must cover a {m}×{t} matrix")));
    }
    if partition.cells() > t * m {
        return Err(Error::NecessaryCondition {
            cells: partition.cells(),
            limit: t * m,
        });
    }
    if !d0_code.is_msrd()?.msrd {
        return Err(Error::NotMsrd("input code".into()));
    }
    let form = systematic_form(d0_code, t)?;
    let parts = d0_code.partition().parts();
    let head = LengthPartition::new(parts[..parts.len() - 1].to_vec(), m)?;
    let phi = phi_build(tw, partition)?;
    let profile = head.profile().concat(&partition.profile());
    let zero_ext = MatrixTuple::zero(&partition.profile());

    let combine = |coeffs: &[FieldElement], rows: &[Vec<FieldElement>]| -> Vec<FieldElement> {
        let mut acc = vec![FieldElement::ZERO; head.length()];
        for (&c, g) in coeffs.iter().zip(rows) {
            if c == FieldElement::ZERO {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(g) {
                *a = tw.add(*a, tw.mul(c, x));
            }
        }
        acc
    };
    let mut basis = Vec::with_capacity(phi.dim() + m * form.k);
    for (lambda, image) in phi.v_basis.iter().zip(&phi.images) {
        let word = combine(lambda, &form.g_rows[..t]);
        basis.push(matrix_repr(tw, &word, &head)?.concat(image));
    }
    for g in &form.g_rows[t..] {
        for &gamma in tw.gamma() {
            let word: Vec<FieldElement> = g.iter().map(|&x| tw.mul(gamma, x)).collect();
            basis.push(matrix_repr(tw, &word, &head)?.concat(&zero_ext));
        }
    }
    FqLinearCode::new(tw.clone(), profile, basis)
}
