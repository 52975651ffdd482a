//! Dense univariate polynomials over a [`FiniteField`], little-endian
//! coefficient vectors. Only what the field constructors need.

use super::FiniteField;

pub(crate) fn trim<F: FiniteField>(f: &F, p: &mut Vec<F::Elem>) {
    while p.last().is_some_and(|&c| f.is_zero(c)) {
        p.pop();
    }
}

pub(crate) fn degree<F: FiniteField>(f: &F, p: &[F::Elem]) -> Option<usize> {
    p.iter().rposition(|&c| !f.is_zero(c))
}

pub(crate) fn mul<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    trim(f, &mut out);
    out
}

pub(crate) fn sub<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(f.zero());
        let y = b.get(i).copied().unwrap_or(f.zero());
        out.push(f.sub(x, y));
    }
    trim(f, &mut out);
    out
}

/// Quotient and remainder. Panics on a zero divisor.
pub(crate) fn divrem<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    b: &[F::Elem],
) -> (Vec<F::Elem>, Vec<F::Elem>) {
    let db = degree(f, b).expect("division by the zero polynomial");
    let lead_inv = f.inv(b[db]).expect("leading coefficient is nonzero");
    let mut rem: Vec<F::Elem> = a.to_vec();
    trim(f, &mut rem);
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![f.zero(); rem.len() - db];
    while let Some(dr) = degree(f, &rem) {
        if dr < db {
            break;
        }
        let coef = f.mul(rem[dr], lead_inv);
        let shift = dr - db;
        quot[shift] = coef;
        for (i, &bc) in b[..=db].iter().enumerate() {
            rem[shift + i] = f.sub(rem[shift + i], f.mul(coef, bc));
        }
        trim(f, &mut rem);
    }
    trim(f, &mut quot);
    (quot, rem)
}

pub(crate) fn rem<F: FiniteField>(f: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
    divrem(f, a, b).1
}

/// Inverse of `a` modulo `modulus` by the extended Euclidean algorithm.
/// `None` when `a` is zero or shares a factor with the modulus.
pub(crate) fn inv_mod<F: FiniteField>(
    f: &F,
    a: &[F::Elem],
    modulus: &[F::Elem],
) -> Option<Vec<F::Elem>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = rem(f, a, modulus);
    let mut s0: Vec<F::Elem> = Vec::new();
    let mut s1: Vec<F::Elem> = vec![f.one()];
    degree(f, &r1)?;
    while degree(f, &r1).is_some() {
        let (q, r) = divrem(f, &r0, &r1);
        let s2 = sub(f, &s0, &mul(f, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is the gcd; it must be a nonzero constant
    if degree(f, &r0) != Some(0) {
        return None;
    }
    let c = f.inv(r0[0])?;
    let mut out: Vec<F::Elem> = s0.iter().map(|&x| f.mul(x, c)).collect();
    trim(f, &mut out);
    Some(out)
}

/// All monic polynomials of exact degree `d`, in canonical code order of
/// their non-leading coefficient tuple.
pub(crate) fn monic_of_degree<F: FiniteField>(
    f: &F,
    d: usize,
) -> impl Iterator<Item = Vec<F::Elem>> + '_ {
    let q = f.order();
    let count = q.pow(d as u32);
    (0..count).map(move |mut code| {
        let mut p = Vec::with_capacity(d + 1);
        for _ in 0..d {
            p.push(f.elem(code % q));
            code /= q;
        }
        p.push(f.one());
        p
    })
}

/// Irreducibility by trial division against every monic polynomial of
/// degree 1..=deg/2.
pub(crate) fn is_irreducible<F: FiniteField>(f: &F, p: &[F::Elem]) -> bool {
    let Some(d) = degree(f, p) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    for dd in 1..=d / 2 {
        for g in monic_of_degree(f, dd) {
            if degree(f, &rem(f, p, &g)).is_none() {
                return false;
            }
        }
    }
    true
}

/// The canonical modulus of degree `d`: monic irreducible with the smallest
/// code of its non-leading coefficient tuple.
pub(crate) fn canonical_irreducible<F: FiniteField>(f: &F, d: usize) -> Vec<F::Elem> {
    monic_of_degree(f, d)
        .find(|p| is_irreducible(f, p))
        .expect("an irreducible polynomial exists in every degree")
}
