//! Exact arithmetic in the tower GF(p) ⊂ GF(q) ⊂ GF(q^m).
//!
//! Elements at every level are identified with their canonical integer
//! code: a polynomial `c_0 + c_1 x + ... + c_{d-1} x^{d-1}` over the level
//! below is encoded as `Σ code(c_i) * base^i`. The code is a bijection onto
//! `[0, order)` and defines the element order used by every deterministic
//! selection in the crate.
//!
//! [`BaseField`] is GF(q) backed by full operation tables (q is tiny at desk
//! scale). [`FieldTower`] is GF(q^m) over a `BaseField`, with reduction by a
//! monic irreducible modulus, Frobenius and norm maps, and an ordered
//! GF(q)-basis `gamma` used for coordinates.

pub(crate) mod poly;

use std::fmt;

use crate::error::{Error, Result};

/// Arithmetic shared by the prime field, GF(q) and GF(q^m).
pub trait FiniteField {
    type Elem: Copy + Eq + fmt::Debug;

    fn order(&self) -> u64;
    /// Element with canonical code `code`. Panics when out of range.
    fn elem(&self, code: u64) -> Self::Elem;
    fn code(&self, a: Self::Elem) -> u64;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }
}

/// Largest GF(q) that is tabulated.
pub const MAX_BASE_ORDER: u64 = 1 << 10;
/// Largest GF(q^m) that can be constructed (codes must fit in `u32`).
pub const MAX_TOWER_ORDER: u64 = 1 << 31;
/// Default guard for [`FieldTower::enumerate_elements`].
pub const DEFAULT_ELEMENT_GUARD: u64 = 1 << 20;
const MAX_M: usize = 32;

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits a prime power `q` into `(p, e)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p as u32, e))
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct PrimeField {
    p: u32,
}

impl FiniteField for PrimeField {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.p as u64
    }
    fn elem(&self, code: u64) -> u32 {
        assert!(code < self.p as u64);
        code as u32
    }
    fn code(&self, a: u32) -> u64 {
        a as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.p
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: u32) -> u32 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        // Fermat
        let mut acc = 1u64;
        let mut base = a as u64;
        let mut exp = self.p as u64 - 2;
        let p = self.p as u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        Some(acc as u32)
    }
}

/// GF(q) with q = p^e, tabulated.
#[derive(Clone)]
pub struct BaseField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Vec<u32>,
    add_t: Vec<u32>,
    mul_t: Vec<u32>,
    neg_t: Vec<u32>,
    inv_t: Vec<u32>,
}

impl fmt::Debug for BaseField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BaseField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for BaseField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}
impl Eq for BaseField {}

impl BaseField {
    /// GF(p^e) with the canonical modulus.
    pub fn new(p: u32, e: u32) -> Result<Self> {
        Self::check_params(p, e)?;
        let fp = PrimeField { p };
        let modulus = poly::canonical_irreducible(&fp, e as usize);
        Self::build(p, e, modulus)
    }

    /// GF(p^e) with an explicit monic modulus, coefficients little-endian.
    pub fn with_modulus(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        Self::check_params(p, e)?;
        if modulus.len() != e as usize + 1
            || modulus.last() != Some(&1)
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(Error::BadModulus { expected: e as usize });
        }
        if !poly::is_irreducible(&PrimeField { p }, &modulus) {
            return Err(Error::ReducibleModulus);
        }
        Self::build(p, e, modulus)
    }

    fn check_params(p: u32, e: u32) -> Result<()> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 {
            return Err(Error::BadModulus { expected: 0 });
        }
        let q = (p as u64).checked_pow(e).unwrap_or(u64::MAX);
        if q > MAX_BASE_ORDER {
            return Err(Error::FieldTooLarge {
                order: q,
                limit: MAX_BASE_ORDER,
            });
        }
        Ok(())
    }

    fn build(p: u32, e: u32, modulus: Vec<u32>) -> Result<Self> {
        let fp = PrimeField { p };
        let q = p.pow(e);
        let digits = |mut c: u32| -> Vec<u32> {
            let mut v = Vec::with_capacity(e as usize);
            for _ in 0..e {
                v.push(c % p);
                c /= p;
            }
            poly::trim(&fp, &mut v);
            v
        };
        let encode = |v: &[u32]| -> u32 { v.iter().rev().fold(0, |acc, &d| acc * p + d) };
        let qs = q as usize;
        let mut add_t = vec![0; qs * qs];
        let mut mul_t = vec![0; qs * qs];
        let mut neg_t = vec![0; qs];
        let mut inv_t = vec![0; qs];
        for a in 0..q {
            let da = digits(a);
            let mut na = da.clone();
            for c in na.iter_mut() {
                *c = fp.neg(*c);
            }
            neg_t[a as usize] = encode(&na);
            for b in 0..q {
                let db = digits(b);
                let idx = a as usize * qs + b as usize;
                let mut sum: Vec<u32> = (0..e as usize)
                    .map(|i| {
                        fp.add(
                            da.get(i).copied().unwrap_or(0),
                            db.get(i).copied().unwrap_or(0),
                        )
                    })
                    .collect();
                poly::trim(&fp, &mut sum);
                add_t[idx] = encode(&sum);
                let prod = poly::rem(&fp, &poly::mul(&fp, &da, &db), &modulus);
                mul_t[idx] = encode(&prod);
            }
        }
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul_t[a as usize * qs + b as usize] == 1)
                .ok_or(Error::ReducibleModulus)?;
            inv_t[a as usize] = b;
        }
        Ok(BaseField {
            p,
            e,
            q,
            modulus,
            add_t,
            mul_t,
            neg_t,
            inv_t,
        })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn e(&self) -> u32 {
        self.e
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// Monic modulus over GF(p), little-endian, `e + 1` coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub(crate) fn mul_row(&self, a: u32) -> &[u32] {
        let q = self.q as usize;
        &self.mul_t[a as usize * q..(a as usize + 1) * q]
    }
}

impl FiniteField for BaseField {
    type Elem = u32;

    fn order(&self) -> u64 {
        self.q as u64
    }
    fn elem(&self, code: u64) -> u32 {
        assert!(code < self.q as u64, "code {code} out of range");
        code as u32
    }
    fn code(&self, a: u32) -> u64 {
        a as u64
    }
    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        self.add_t[a as usize * self.q as usize + b as usize]
    }
    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg_t[b as usize])
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        self.neg_t[a as usize]
    }
    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul_t[a as usize * self.q as usize + b as usize]
    }
    fn inv(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.inv_t[a as usize])
    }
}

/// An element of GF(q^m), identified by its canonical code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn code(self) -> u32 {
        self.0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The chain GF(p) ⊂ GF(q) ⊂ GF(q^m) with a fixed ordered basis of GF(q^m)
/// over GF(q).
#[derive(Clone)]
pub struct FieldTower {
    base: BaseField,
    m: usize,
    order: u64,
    ext_modulus: Vec<u32>,
    gamma: Vec<FieldElement>,
    // row-major m×m matrix taking polynomial coordinates to gamma coordinates;
    // None for the polynomial basis
    to_gamma: Option<Vec<u32>>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF({}^{})^{} submod={:?} extmod={:?}",
            self.base.p, self.base.e, self.m, self.base.modulus, self.ext_modulus
        )
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.base == other.base
            && self.m == other.m
            && self.ext_modulus == other.ext_modulus
            && self.gamma == other.gamma
    }
}
impl Eq for FieldTower {}

impl FieldTower {
    /// GF((p^e)^m) with canonical moduli and the polynomial basis.
    pub fn new(p: u32, e: u32, m: usize) -> Result<Self> {
        let base = BaseField::new(p, e)?;
        Self::check_order(&base, m)?;
        let ext_modulus = poly::canonical_irreducible(&base, m);
        Ok(Self::assemble(base, m, ext_modulus))
    }

    /// GF(q^m) for a prime power `q`.
    pub fn for_q(q: u64, m: usize) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrime(q))?;
        Self::new(p, e, m)
    }

    /// Tower with explicit moduli (coefficients little-endian, as canonical
    /// codes of the level below).
    pub fn with_moduli(
        p: u32,
        e: u32,
        m: usize,
        sub_modulus: Vec<u32>,
        ext_modulus: Vec<u32>,
    ) -> Result<Self> {
        let base = BaseField::with_modulus(p, e, sub_modulus)?;
        Self::check_order(&base, m)?;
        if ext_modulus.len() != m + 1
            || ext_modulus.last() != Some(&1)
            || ext_modulus.iter().any(|&c| c >= base.q)
        {
            return Err(Error::BadModulus { expected: m });
        }
        if !poly::is_irreducible(&base, &ext_modulus) {
            return Err(Error::ReducibleModulus);
        }
        Ok(Self::assemble(base, m, ext_modulus))
    }

    fn check_order(base: &BaseField, m: usize) -> Result<()> {
        if m == 0 || m > MAX_M {
            return Err(Error::BadModulus { expected: m });
        }
        let order = (base.q as u64).checked_pow(m as u32).unwrap_or(u64::MAX);
        if order > MAX_TOWER_ORDER {
            return Err(Error::FieldTooLarge {
                order,
                limit: MAX_TOWER_ORDER,
            });
        }
        Ok(())
    }

    fn assemble(base: BaseField, m: usize, ext_modulus: Vec<u32>) -> Self {
        let q = base.q as u64;
        let order = q.pow(m as u32);
        let gamma = (0..m).map(|i| FieldElement(q.pow(i as u32) as u32)).collect();
        FieldTower {
            base,
            m,
            order,
            ext_modulus,
            gamma,
            to_gamma: None,
        }
    }

    /// The same field with a different ordered basis of GF(q^m) over GF(q).
    pub fn with_basis(&self, gamma: Vec<FieldElement>) -> Result<Self> {
        let m = self.m;
        if gamma.len() != m || gamma.iter().any(|g| g.0 as u64 >= self.order) {
            return Err(Error::BadBasis { expected: m });
        }
        // column i of `a` holds the polynomial coordinates of gamma_i
        let mut a = vec![0u32; m * m];
        for (i, &g) in gamma.iter().enumerate() {
            for (r, d) in self.digits(g).into_iter().enumerate() {
                a[r * m + i] = d;
            }
        }
        let inv = crate::linalg::invert(&self.base, &a, m).ok_or(Error::BadBasis { expected: m })?;
        let is_poly = gamma
            .iter()
            .enumerate()
            .all(|(i, g)| g.0 as u64 == (self.base.q as u64).pow(i as u32));
        Ok(FieldTower {
            gamma,
            to_gamma: (!is_poly).then_some(inv),
            ..self.clone()
        })
    }

    pub fn base(&self) -> &BaseField {
        &self.base
    }
    pub fn p(&self) -> u32 {
        self.base.p
    }
    pub fn e(&self) -> u32 {
        self.base.e
    }
    pub fn q(&self) -> u32 {
        self.base.q
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn sub_modulus(&self) -> &[u32] {
        &self.base.modulus
    }
    pub fn ext_modulus(&self) -> &[u32] {
        &self.ext_modulus
    }
    pub fn gamma(&self) -> &[FieldElement] {
        &self.gamma
    }
    pub fn has_polynomial_basis(&self) -> bool {
        self.to_gamma.is_none()
    }

    pub fn element(&self, code: u64) -> Result<FieldElement> {
        if code >= self.order {
            return Err(Error::ElementOutOfRange {
                code,
                order: self.order,
            });
        }
        Ok(FieldElement(code as u32))
    }

    /// The subfield element `c ∈ GF(q)` viewed in GF(q^m).
    pub fn embed(&self, c: u32) -> FieldElement {
        assert!(c < self.base.q);
        FieldElement(c)
    }

    /// `Some(c)` when `a` lies in the subfield GF(q).
    pub fn subfield_value(&self, a: FieldElement) -> Option<u32> {
        (a.0 < self.base.q).then_some(a.0)
    }

    /// Polynomial coefficients (c_0, ..., c_{m-1}) over GF(q).
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let q = self.base.q;
        let mut c = a.0;
        (0..self.m)
            .map(|_| {
                let d = c % q;
                c /= q;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<FieldElement> {
        if digits.len() != self.m {
            return Err(Error::LengthMismatch {
                expected: self.m,
                got: digits.len(),
            });
        }
        if let Some(&d) = digits.iter().find(|&&d| d >= self.base.q) {
            return Err(Error::ElementOutOfRange {
                code: d as u64,
                order: self.base.q as u64,
            });
        }
        Ok(self.encode(digits))
    }

    #[inline]
    fn encode(&self, digits: &[u32]) -> FieldElement {
        let q = self.base.q;
        FieldElement(digits.iter().rev().fold(0, |acc, &d| acc * q + d))
    }

    #[inline]
    fn decode_into(&self, a: FieldElement, out: &mut [u32]) {
        let q = self.base.q;
        let mut c = a.0;
        for slot in out.iter_mut().take(self.m) {
            *slot = c % q;
            c /= q;
        }
    }

    /// Coordinates of `a` in the basis gamma.
    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        let d = self.digits(a);
        match &self.to_gamma {
            None => d,
            Some(t) => crate::linalg::mat_vec(&self.base, t, self.m, &d),
        }
    }

    /// Σ c_i gamma_i.
    pub fn from_coords(&self, c: &[u32]) -> FieldElement {
        assert_eq!(c.len(), self.m);
        let mut acc = FieldElement::ZERO;
        for (&ci, &g) in c.iter().zip(&self.gamma) {
            acc = self.add(acc, self.scale(ci, g));
        }
        acc
    }

    /// Multiplication by a subfield scalar.
    pub fn scale(&self, c: u32, a: FieldElement) -> FieldElement {
        let mut d = [0u32; MAX_M];
        self.decode_into(a, &mut d);
        let row = self.base.mul_row(c);
        for x in d.iter_mut().take(self.m) {
            *x = row[*x as usize];
        }
        self.encode(&d[..self.m])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.base.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        let (mut x, mut y) = ([0u32; MAX_M], [0u32; MAX_M]);
        self.decode_into(a, &mut x);
        self.decode_into(b, &mut y);
        for i in 0..self.m {
            x[i] = self.base.add(x[i], y[i]);
        }
        self.encode(&x[..self.m])
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.base.p == 2 {
            return a;
        }
        let mut x = [0u32; MAX_M];
        self.decode_into(a, &mut x);
        for v in x.iter_mut().take(self.m) {
            *v = self.base.neg(*v);
        }
        self.encode(&x[..self.m])
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let m = self.m;
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if m == 1 {
            return FieldElement(self.base.mul(a.0, b.0));
        }
        let (mut x, mut y) = ([0u32; MAX_M], [0u32; MAX_M]);
        self.decode_into(a, &mut x);
        self.decode_into(b, &mut y);
        let mut prod = [0u32; 2 * MAX_M];
        for i in 0..m {
            if x[i] == 0 {
                continue;
            }
            let row = self.base.mul_row(x[i]);
            for j in 0..m {
                let t = row[y[j] as usize];
                prod[i + j] = self.base.add(prod[i + j], t);
            }
        }
        // reduce by the monic modulus, top degree first
        for deg in (m..2 * m - 1).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            let row = self.base.mul_row(c);
            for i in 0..m {
                let t = row[self.ext_modulus[i] as usize];
                prod[deg - m + i] = self.base.sub(prod[deg - m + i], t);
            }
        }
        self.encode(&prod[..m])
    }

    /// Inverse by the extended Euclidean algorithm over GF(q).
    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let mut d = self.digits(a);
        poly::trim(&self.base, &mut d);
        let mut r = poly::inv_mod(&self.base, &d, &self.ext_modulus).ok_or(Error::ZeroInverse)?;
        r.resize(self.m, 0);
        Ok(self.encode(&r))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = FieldElement::ONE;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `a^(q^i)`.
    pub fn frobenius(&self, a: FieldElement, i: usize) -> FieldElement {
        let i = i % self.m;
        self.pow(a, (self.base.q as u64).pow(i as u32))
    }

    /// Norm down to GF(q): `a^((q^m - 1)/(q - 1))`; lies in the subfield.
    pub fn norm(&self, a: FieldElement) -> FieldElement {
        let q = self.base.q as u64;
        self.pow(a, (self.order - 1) / (q - 1))
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// All elements in increasing code order.
    pub fn enumerate_elements(&self, guard: u64) -> Result<Vec<FieldElement>> {
        if self.order > guard {
            return Err(Error::GuardExceeded {
                needed: self.order as u128,
                guard: guard as u128,
            });
        }
        Ok((0..self.order as u32).map(FieldElement).collect())
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order as u32).map(FieldElement)
    }
}

impl FiniteField for FieldTower {
    type Elem = FieldElement;

    fn order(&self) -> u64 {
        self.order
    }
    fn elem(&self, code: u64) -> FieldElement {
        assert!(code < self.order);
        FieldElement(code as u32)
    }
    fn code(&self, a: FieldElement) -> u64 {
        a.0 as u64
    }
    fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }
    fn one(&self) -> FieldElement {
        FieldElement::ONE
    }
    fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldTower::add(self, a, b)
    }
    fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldTower::sub(self, a, b)
    }
    fn neg(&self, a: FieldElement) -> FieldElement {
        FieldTower::neg(self, a)
    }
    fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldTower::mul(self, a, b)
    }
    fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        FieldTower::inv(self, a).ok()
    }
}
