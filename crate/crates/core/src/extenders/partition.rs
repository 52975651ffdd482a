//! Disjoint pieces `X_s × Y_s` of an `m × t` matrix, the projection `π` onto
//! them, and the map `φ = π ∘ M^t` on the subspace `V` of vectors in
//! GF(q^m)^t whose coordinate matrix is supported on the pieces.

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldTower};
use crate::sumrank::{matrix_repr, sumrank_weight, BlockProfile, LengthPartition, Matrix, MatrixTuple};

/// Pieces `(X_s, Y_s)` with `X_s ⊆ 0..m`, `Y_s ⊆ 0..t`, pairwise disjoint as
/// sets of cells. Indices are 0-based and kept in the given order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixPartition {
    m: usize,
    t: usize,
    pieces: Vec<(Vec<usize>, Vec<usize>)>,
}

impl MatrixPartition {
    pub fn new(m: usize, t: usize, pieces: Vec<(Vec<usize>, Vec<usize>)>) -> Result<Self> {
        let cells: usize = pieces.iter().map(|(x, y)| x.len() * y.len()).sum();
        if cells > t * m {
            return Err(Error::NecessaryCondition { cells, limit: t * m });
        }
        for (s, (x, y)) in pieces.iter().enumerate() {
            let strictly_increasing = |v: &[usize], bound: usize| {
                !v.is_empty() && v.windows(2).all(|w| w[0] < w[1]) && v.iter().all(|&i| i < bound)
            };
            if !strictly_increasing(x, m) || !strictly_increasing(y, t) {
                return Err(Error::BadPiece { piece: s + 1 });
            }
        }
        for a in 0..pieces.len() {
            for b in a + 1..pieces.len() {
                let meets = |u: &[usize], v: &[usize]| u.iter().any(|i| v.contains(i));
                if meets(&pieces[a].0, &pieces[b].0) && meets(&pieces[a].1, &pieces[b].1) {
                    return Err(Error::OverlappingPieces { a: a + 1, b: b + 1 });
                }
            }
        }
        Ok(MatrixPartition { m, t, pieces })
    }

    /// The single piece `[m] × [t]`.
    pub fn trivial(m: usize, t: usize) -> Self {
        MatrixPartition {
            m,
            t,
            pieces: vec![((0..m).collect(), (0..t).collect())],
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }
    pub fn t(&self) -> usize {
        self.t
    }
    pub fn pieces(&self) -> &[(Vec<usize>, Vec<usize>)] {
        &self.pieces
    }

    pub fn cells(&self) -> usize {
        self.pieces.iter().map(|(x, y)| x.len() * y.len()).sum()
    }

    /// Output block shapes; a piece wider than tall is transposed.
    pub fn shapes(&self) -> Vec<(usize, usize)> {
        self.pieces
            .iter()
            .map(|(x, y)| (x.len().max(y.len()), x.len().min(y.len())))
            .collect()
    }

    pub fn profile(&self) -> BlockProfile {
        BlockProfile::new(self.shapes()).expect("shapes satisfy n <= m")
    }

    /// `π(C)`: the submatrix of each piece, transposed when wider than tall.
    pub fn project(&self, c: &Matrix) -> MatrixTuple {
        assert_eq!((c.rows(), c.cols()), (self.m, self.t));
        MatrixTuple::new(
            self.pieces
                .iter()
                .map(|(x, y)| {
                    let sub = c.submatrix(x, y);
                    if y.len() > x.len() {
                        sub.transpose()
                    } else {
                        sub
                    }
                })
                .collect(),
        )
    }

    /// Whether cell `(i, j)` lies in some piece.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.pieces.iter().any(|(x, y)| x.contains(&i) && y.contains(&j))
    }
}

/// `V` with its basis and the images `φ(v)` of the basis vectors.
#[derive(Debug, Clone)]
pub struct PhiMap {
    pub partition: MatrixPartition,
    /// Basis of `V`: `γ_x e_y` for each covered cell `(x, y)`, piece by piece,
    /// row-major inside a piece.
    pub v_basis: Vec<Vec<FieldElement>>,
    pub images: Vec<MatrixTuple>,
}

/// `V = (M^t)^{-1}(U)` and `φ` on its basis.
pub fn phi_build(tower: &FieldTower, partition: &MatrixPartition) -> Result<PhiMap> {
    if partition.m() != tower.m() {
        return Err(Error::FieldMismatch);
    }
    let t = partition.t();
    let lp = LengthPartition::new(vec![t], tower.m())?;
    let mut v_basis = Vec::with_capacity(partition.cells());
    let mut images = Vec::with_capacity(partition.cells());
    for (x, y) in partition.pieces() {
        for &i in x {
            for &j in y {
                let mut lambda = vec![FieldElement::ZERO; t];
                lambda[j] = tower.gamma()[i];
                let coords = matrix_repr(tower, &lambda, &lp)?.into_blocks().remove(0);
                images.push(partition.project(&coords));
                v_basis.push(lambda);
            }
        }
    }
    Ok(PhiMap {
        partition: partition.clone(),
        v_basis,
        images,
    })
}

impl PhiMap {
    pub fn dim(&self) -> usize {
        self.v_basis.len()
    }

    /// `φ(λ)`; errors when `λ` is outside `V`.
    pub fn apply(&self, tower: &FieldTower, lambda: &[FieldElement]) -> Result<MatrixTuple> {
        let lp = LengthPartition::new(vec![self.partition.t()], tower.m())?;
        let c = matrix_repr(tower, lambda, &lp)?.into_blocks().remove(0);
        for i in 0..c.rows() {
            for j in 0..c.cols() {
                if c.get(i, j) != 0 && !self.partition.covers(i, j) {
                    return Err(Error::Parameter("vector is outside the subspace V".into()));
                }
            }
        }
        Ok(self.partition.project(&c))
    }

    /// Exhaustively checks `wt(φ(λ)) >= Rk(M^t(λ))` over all of `V`.
    pub fn check_weight_property(&self, tower: &FieldTower, guard: u128) -> Result<bool> {
        let q = tower.q() as u128;
        let needed = q.checked_pow(self.dim() as u32).unwrap_or(u128::MAX);
        if needed > guard {
            return Err(Error::GuardExceeded { needed, guard });
        }
        let f = tower.base();
        let lp = LengthPartition::new(vec![self.partition.t()], tower.m())?;
        for idx in 0..needed {
            let mut rest = idx;
            let mut lambda = vec![FieldElement::ZERO; self.partition.t()];
            let mut image = MatrixTuple::zero(&self.partition.profile());
            for (v, img) in self.v_basis.iter().zip(&self.images) {
                let c = (rest % q) as u32;
                rest /= q;
                if c == 0 {
                    continue;
                }
                for (l, &x) in lambda.iter_mut().zip(v) {
                    *l = tower.add(*l, tower.scale(c, x));
                }
                image = image.add(f, &img.scale(f, c))?;
            }
            let lw = sumrank_weight(f, &matrix_repr(tower, &lambda, &lp)?);
            if sumrank_weight(f, &image) < lw {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
