use std::fmt;

use crate::algebra::poly::FieldPoly;
use crate::error::{Error, Result};

/// Largest supported field order. Multiplication goes through log tables
/// of this size.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// An element of F_{p^m}, stored as the integer `sum c_i p^i` where `c_i`
/// is the coordinate of `a^i` and `a` is the class of the modulus variable.
///
/// The encoding makes elements `Copy` and totally ordered; the ordering is
/// the one used for every lexicographic comparison in the crate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(pub(crate) u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// The finite field F_{p^m} = F_p[a]/(modulus).
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: usize,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so log a + log b never needs a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx {
    /// Builds F_{p^m}. Without an explicit modulus the lexicographically
    /// smallest monic irreducible of degree `m` is used, coefficients
    /// compared from the constant term upwards.
    pub fn new(p: u64, m: usize, modulus: Option<&[u32]>) -> Result<FieldCtx> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if m == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        let q = (p as u128)
            .checked_pow(m as u32)
            .filter(|&q| q <= MAX_FIELD_ORDER as u128)
            .ok_or(Error::FieldTooLarge { p, m })? as u32;
        let p = p as u32;
        let prime = FieldCtx::prime(p);
        let modulus = match modulus {
            Some(coeffs) => {
                let poly = FieldPoly::new(coeffs.iter().map(|&c| FieldElement(c % p)).collect());
                let found = poly.degree().finite().unwrap_or(0);
                if found != m || poly.leading() != FieldElement::ONE {
                    return Err(Error::DegreeMismatch { expected: m, found });
                }
                if !prime.is_irreducible(&poly)? {
                    return Err(Error::ReducibleModulus { p });
                }
                poly.coeffs().iter().map(|c| c.0).collect()
            }
            None => {
                let poly = prime
                    .monic_polys(m)
                    .find(|f| prime.is_irreducible(f).unwrap_or(false))
                    .expect("an irreducible polynomial exists in every degree");
                poly.coeffs().iter().map(|c| c.0).collect()
            }
        };
        Ok(FieldCtx::with_modulus(p, m, q, modulus))
    }

    /// F_p with modulus `x`.
    pub(crate) fn prime(p: u32) -> FieldCtx {
        FieldCtx::with_modulus(p, 1, p, vec![0, 1])
    }

    fn with_modulus(p: u32, m: usize, q: u32, modulus: Vec<u32>) -> FieldCtx {
        let mut ctx = FieldCtx { p, m, q, modulus, exp: Vec::new(), log: Vec::new() };
        ctx.build_tables();
        ctx
    }

    fn build_tables(&mut self) {
        let order = self.q - 1;
        let generator = (1..self.q)
            .find(|&g| self.raw_order(g) == order)
            .expect("multiplicative group is cyclic");
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; self.q as usize];
        let mut cur = 1u32;
        for k in 0..order {
            exp.push(cur);
            log[cur as usize] = k;
            cur = self.raw_mul(cur, generator);
        }
        let head = exp.clone();
        exp.extend(head);
        self.exp = exp;
        self.log = log;
    }

    fn raw_order(&self, g: u32) -> u32 {
        let mut cur = g;
        let mut k = 1;
        while cur != 1 {
            cur = self.raw_mul(cur, g);
            k += 1;
            if k > self.q {
                return 0;
            }
        }
        k
    }

    fn digits(&self, mut v: u32) -> Vec<u32> {
        let mut out = vec![0; self.m];
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    fn undigits(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    // schoolbook product in F_p[a] reduced by the modulus; only used to
    // build the log tables
    fn raw_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for k in (self.m..2 * self.m).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            for (j, &mc) in self.modulus.iter().enumerate() {
                let idx = k - self.m + j;
                prod[idx] = (prod[idx] + (p - c) * mc as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..self.m].iter().map(|&c| c as u32).collect();
        self.undigits(&low)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Validates that `v` encodes an element of this field.
    pub fn element(&self, v: u32) -> Result<FieldElement> {
        if v < self.q {
            Ok(FieldElement(v))
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        FieldElement(v.rem_euclid(self.p as i64) as u32)
    }

    /// The generator `a` of F_{p^m} over F_p (equals 0 when m = 1).
    pub fn generator(&self) -> FieldElement {
        if self.m == 1 {
            self.neg(FieldElement(self.modulus[0]))
        } else {
            FieldElement(self.p)
        }
    }

    pub fn coords(&self, a: FieldElement) -> Vec<u32> {
        self.digits(a.0)
    }

    pub fn from_coords(&self, coords: &[u32]) -> Result<FieldElement> {
        if coords.len() != self.m || coords.iter().any(|&c| c >= self.p) {
            return Err(Error::ContextMismatch);
        }
        Ok(FieldElement(self.undigits(coords)))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.m == 1 {
            let s = a.0 + b.0;
            FieldElement(if s >= self.p { s - self.p } else { s })
        } else {
            let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
            while x > 0 || y > 0 {
                let d = (x % self.p + y % self.p) % self.p;
                out += d * place;
                place *= self.p;
                x /= self.p;
                y /= self.p;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.m == 1 {
            FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 })
        } else {
            let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
            while x > 0 {
                let d = x % self.p;
                out += ((self.p - d) % self.p) * place;
                place *= self.p;
                x /= self.p;
            }
            FieldElement(out)
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        if self.m == 1 {
            return FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32);
        }
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[k as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let k = (order - self.log[a.0 as usize]) % order;
        Ok(FieldElement(self.exp[k as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `a^e` for a signed exponent; negative exponents need `a != 0`.
    pub fn pow(&self, a: FieldElement, e: i128) -> Result<FieldElement> {
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Less => Err(Error::DivisionByZero),
                std::cmp::Ordering::Equal => Ok(FieldElement::ONE),
                std::cmp::Ordering::Greater => Ok(FieldElement::ZERO),
            };
        }
        let order = (self.q - 1) as i128;
        let k = (self.log[a.0 as usize] as i128 * e.rem_euclid(order)).rem_euclid(order);
        Ok(FieldElement(self.exp[k as usize]))
    }
}
