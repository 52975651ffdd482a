//! Stacking codes on square blocks into taller blocks, and glueing two codes
//! on disjoint block ranges by pairing their bases.

use std::fmt;
use std::sync::Arc;

use crate::codes::{FqLinearCode, MsrdCertificate};
use crate::error::{Error, Result};
use crate::gf::FieldTower;
use crate::sumrank::{BlockProfile, Matrix, MatrixTuple};

/// Verdict of a premise-checking MSRD test. `reason` names the first failed
/// premise; `certificate` is the oracle result for the combined code when it
/// was computed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnosis {
    pub ok: bool,
    pub reason: Option<String>,
    pub certificate: Option<MsrdCertificate>,
}

impl Diagnosis {
    fn fail(reason: &str) -> Self {
        Diagnosis {
            ok: false,
            reason: Some(reason.to_string()),
            certificate: None,
        }
    }
}

impl fmt::Display for Diagnosis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ok={}", self.ok)?;
        if let Some(c) = &self.certificate {
            write!(f, " {c}")?;
        }
        if let Some(r) = &self.reason {
            write!(f, " reason=\"{r}\"")?;
        }
        Ok(())
    }
}

/// `t` codes on a common profile of square blocks.
#[derive(Debug, Clone)]
pub struct StackSpec {
    components: Vec<FqLinearCode>,
}

impl StackSpec {
    pub fn new(components: Vec<FqLinearCode>) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Parameter("at least one component is required".into()))?;
        if first.profile().blocks().iter().any(|&(m, n)| m != n) {
            return Err(Error::NonSquareBlocks);
        }
        for c in &components[1..] {
            if c.tower() != first.tower() {
                return Err(Error::FieldMismatch);
            }
            if c.profile() != first.profile() {
                return Err(Error::ShapeMismatch);
            }
        }
        Ok(StackSpec { components })
    }

    pub fn t(&self) -> usize {
        self.components.len()
    }
    pub fn components(&self) -> &[FqLinearCode] {
        &self.components
    }
}

/// Component `k` occupies row band `k` of every block; the result lives on
/// blocks of size `(t·m_i) × m_i`.
pub fn stack_product(spec: &StackSpec) -> FqLinearCode {
    let t = spec.t();
    let first = &spec.components[0];
    let tower: Arc<FieldTower> = first.tower().clone();
    let profile = BlockProfile::new(first.profile().blocks().iter().map(|&(m, n)| (t * m, n)).collect())
        .expect("taller blocks keep m >= n");
    let mut basis = Vec::new();
    for (k, comp) in spec.components.iter().enumerate() {
        for b in comp.basis() {
            let blocks = b
                .blocks()
                .iter()
                .map(|blk| {
                    let m = blk.rows();
                    let mut out = Matrix::zeros(t * m, blk.cols());
                    for r in 0..m {
                        for c in 0..blk.cols() {
                            out.set(k * m + r, c, blk.get(r, c));
                        }
                    }
                    out
                })
                .collect();
            basis.push(MatrixTuple::new(blocks));
        }
    }
    FqLinearCode::new(tower, profile, basis).expect("disjoint bands keep the basis independent")
}

/// Checks the premises (each component MSRD, equal dimensions, equal
/// distances) and then the stacked code itself by oracle.
pub fn check_stack_msrd(spec: &StackSpec) -> Result<Diagnosis> {
    let mut certs = Vec::new();
    for c in spec.components() {
        certs.push(c.is_msrd()?);
    }
    if certs.iter().any(|c| c.d != certs[0].d) {
        return Ok(Diagnosis::fail("distance mismatch"));
    }
    if certs.iter().any(|c| c.dim != certs[0].dim) {
        return Ok(Diagnosis::fail("size mismatch"));
    }
    if certs.iter().any(|c| !c.msrd) {
        return Ok(Diagnosis::fail("component not MSRD"));
    }
    let cert = stack_product(spec).is_msrd()?;
    let expected = spec.t() * certs[0].bound;
    let ok = cert.msrd && cert.d == certs[0].d && cert.dim == expected;
    Ok(Diagnosis {
        ok,
        reason: (!ok).then(|| "stacked code not MSRD".to_string()),
        certificate: Some(cert),
    })
}

/// Two codes on consecutive block ranges; their stored basis orders define
/// the pairing.
#[derive(Debug, Clone)]
pub struct GlueSpec {
    c1: FqLinearCode,
    c2: FqLinearCode,
}

impl GlueSpec {
    pub fn new(c1: FqLinearCode, c2: FqLinearCode) -> Result<Self> {
        if c1.tower() != c2.tower() {
            return Err(Error::FieldMismatch);
        }
        if !c1.profile().concat(c2.profile()).has_sorted_rows() {
            return Err(Error::GlueOrder);
        }
        Ok(GlueSpec { c1, c2 })
    }

    /// Same spec with both bases reordered before pairing.
    pub fn with_pairing(&self, order1: &[usize], order2: &[usize]) -> Result<Self> {
        Ok(GlueSpec {
            c1: self.c1.with_basis_order(order1)?,
            c2: self.c2.with_basis_order(order2)?,
        })
    }

    pub fn c1(&self) -> &FqLinearCode {
        &self.c1
    }
    pub fn c2(&self) -> &FqLinearCode {
        &self.c2
    }
}

/// Span of `(B_{1,i}, B_{2,i})` for `i < min(k_1, k_2)`.
pub fn glue_bases(spec: &GlueSpec) -> FqLinearCode {
    let profile = spec.c1.profile().concat(spec.c2.profile());
    let basis = spec
        .c1
        .basis()
        .iter()
        .zip(spec.c2.basis())
        .map(|(a, b)| a.concat(b))
        .collect();
    FqLinearCode::new(spec.c1.tower().clone(), profile, basis)
        .expect("the first halves are independent")
}

/// Checks `d_1 = Σ n_i` over the first code, `k_1 = m_ℓ`, `k_2 ≤ m_ℓ`, that
/// both inputs are MSRD, and then that the glued code has distance
/// `d_1 + d_2` and meets the Singleton bound.
pub fn check_glue_msrd(spec: &GlueSpec) -> Result<Diagnosis> {
    let c1 = spec.c1.is_msrd()?;
    let full = spec.c1.profile().total_cols();
    if c1.d != full {
        return Ok(Diagnosis::fail("c1 not full-distance"));
    }
    let m_last = spec.c1.profile().blocks().last().map_or(0, |b| b.0);
    if c1.dim != m_last {
        return Ok(Diagnosis::fail("k1 differs from m_l"));
    }
    if spec.c2.dim() > m_last {
        return Ok(Diagnosis::fail("dimension exceeds m_l"));
    }
    if !c1.msrd {
        return Ok(Diagnosis::fail("c1 not MSRD"));
    }
    let c2 = spec.c2.is_msrd()?;
    if !c2.msrd {
        return Ok(Diagnosis::fail("c2 not MSRD"));
    }
    let cert = glue_bases(spec).is_msrd()?;
    let ok = cert.msrd && cert.d == c1.d + c2.d;
    Ok(Diagnosis {
        ok,
        reason: (!ok).then(|| "glued code not MSRD".to_string()),
        certificate: Some(cert),
    })
}
