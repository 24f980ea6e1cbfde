use std::cmp::Ordering;

use crate::algebra::field::{FieldCtx, FieldElement};
use crate::error::{Error, Result};

/// Largest degree accepted by [`FieldCtx::factor`].
pub const FACTOR_DEGREE_LIMIT: usize = 24;

/// Polynomial degree; the zero polynomial has degree `MinusInfinity`,
/// which compares below every finite degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::MinusInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

/// Dense polynomial over F_{p^m}; `coeffs[k]` is the coefficient of `x^k`.
/// Always normalized: no trailing zero coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldPoly {
    coeffs: Vec<FieldElement>,
}

impl FieldPoly {
    pub fn new(mut coeffs: Vec<FieldElement>) -> FieldPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FieldPoly { coeffs }
    }

    pub fn zero() -> FieldPoly {
        FieldPoly { coeffs: Vec::new() }
    }

    pub fn one() -> FieldPoly {
        FieldPoly::constant(FieldElement::ONE)
    }

    pub fn constant(c: FieldElement) -> FieldPoly {
        FieldPoly::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: FieldElement, k: usize) -> FieldPoly {
        let mut coeffs = vec![FieldElement::ZERO; k + 1];
        coeffs[k] = c;
        FieldPoly::new(coeffs)
    }

    pub fn x() -> FieldPoly {
        FieldPoly::monomial(FieldElement::ONE, 1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> FieldElement {
        self.coeffs.get(k).copied().unwrap_or(FieldElement::ZERO)
    }

    pub fn degree(&self) -> Degree {
        match self.coeffs.len() {
            0 => Degree::MinusInfinity,
            n => Degree::Finite(n - 1),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs.last().copied().unwrap_or(FieldElement::ZERO)
    }

    /// Coefficients padded or truncated to exactly `n` entries.
    pub fn to_dense(&self, n: usize) -> Vec<FieldElement> {
        let mut v = self.coeffs.clone();
        v.resize(n, FieldElement::ZERO);
        v
    }
}

/// Lexicographic comparison of equal-degree polynomials, constant term
/// first.
fn lex_cmp(a: &FieldPoly, b: &FieldPoly) -> Ordering {
    a.coeffs.cmp(&b.coeffs)
}

/// A complete factorization `unit * prod v_i^{n_i}` with every `v_i` monic
/// irreducible and pairwise distinct, ordered by degree then lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FieldElement,
    pub factors: Vec<(FieldPoly, usize)>,
}

impl FieldCtx {
    pub fn poly_add(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FieldPoly::new((0..n).map(|k| self.add(a.coeff(k), b.coeff(k))).collect())
    }

    pub fn poly_neg(&self, a: &FieldPoly) -> FieldPoly {
        FieldPoly::new(a.coeffs.iter().map(|&c| self.neg(c)).collect())
    }

    pub fn poly_sub(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        self.poly_add(a, &self.poly_neg(b))
    }

    pub fn poly_scale(&self, a: &FieldPoly, c: FieldElement) -> FieldPoly {
        FieldPoly::new(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &FieldPoly, b: &FieldPoly) -> FieldPoly {
        if a.is_zero() || b.is_zero() {
            return FieldPoly::zero();
        }
        let mut out = vec![FieldElement::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        FieldPoly::new(out)
    }

    pub fn poly_pow(&self, a: &FieldPoly, mut e: usize) -> FieldPoly {
        let mut base = a.clone();
        let mut acc = FieldPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.poly_mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.poly_mul(&base, &base);
            }
        }
        acc
    }

    /// Euclidean division `a = q b + r` with `deg r < deg b`.
    pub fn poly_divmod(&self, a: &FieldPoly, b: &FieldPoly) -> Result<(FieldPoly, FieldPoly)> {
        let Degree::Finite(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = self.inv(b.leading())?;
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return Ok((FieldPoly::zero(), a.clone()));
        }
        let mut quot = vec![FieldElement::ZERO; rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = self.mul(rem[k], lead_inv);
            if c.is_zero() {
                continue;
            }
            quot[k - db] = c;
            for (j, &bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                rem[idx] = self.sub(rem[idx], self.mul(c, bc));
            }
        }
        rem.truncate(db);
        Ok((FieldPoly::new(quot), FieldPoly::new(rem)))
    }

    pub fn poly_rem(&self, a: &FieldPoly, b: &FieldPoly) -> Result<FieldPoly> {
        Ok(self.poly_divmod(a, b)?.1)
    }

    pub fn poly_monic(&self, a: &FieldPoly) -> FieldPoly {
        if a.is_zero() {
            return FieldPoly::zero();
        }
        let inv = self.inv(a.leading()).expect("nonzero leading coefficient");
        self.poly_scale(a, inv)
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &FieldPoly, b: &FieldPoly) -> Result<FieldPoly> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y)?;
            x = y;
            y = r;
        }
        Ok(self.poly_monic(&x))
    }

    /// Returns `(g, s, t)` with `g = s a + t b` and `g` the monic gcd.
    pub fn poly_ext_gcd(
        &self,
        a: &FieldPoly,
        b: &FieldPoly,
    ) -> Result<(FieldPoly, FieldPoly, FieldPoly)> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::BothZero);
        }
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (FieldPoly::one(), FieldPoly::zero());
        let (mut t0, mut t1) = (FieldPoly::zero(), FieldPoly::one());
        while !r1.is_zero() {
            let (q, r) = self.poly_divmod(&r0, &r1)?;
            let s2 = self.poly_sub(&s0, &self.poly_mul(&q, &s1));
            let t2 = self.poly_sub(&t0, &self.poly_mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let inv = self.inv(r0.leading())?;
        Ok((self.poly_scale(&r0, inv), self.poly_scale(&s0, inv), self.poly_scale(&t0, inv)))
    }

    /// All monic polynomials of degree `k` in lexicographic order
    /// (constant coefficient most significant).
    pub fn monic_polys(&self, k: usize) -> impl Iterator<Item = FieldPoly> + '_ {
        let q = self.order() as u128;
        let total = q.pow(k as u32);
        (0..total).map(move |mut n| {
            let mut coeffs = vec![FieldElement::ZERO; k + 1];
            coeffs[k] = FieldElement::ONE;
            for slot in (0..k).rev() {
                coeffs[slot] = FieldElement((n % q) as u32);
                n /= q;
            }
            FieldPoly::new(coeffs)
        })
    }

    /// True iff `f` has no monic factor of degree in `1..=deg f / 2`.
    pub fn is_irreducible(&self, f: &FieldPoly) -> Result<bool> {
        let d = match f.degree() {
            Degree::Finite(d) if d >= 1 => d,
            _ => return Err(Error::ConstantPolynomial),
        };
        for k in 1..=d / 2 {
            for g in self.monic_polys(k) {
                if self.poly_rem(f, &g)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Trial-division factorization. Candidates are tried in increasing
    /// degree and lex order within a degree, so any candidate that divides
    /// the running cofactor is irreducible.
    pub fn factor(&self, f: &FieldPoly) -> Result<Factorization> {
        let Degree::Finite(deg) = f.degree() else {
            return Err(Error::ZeroPolynomial);
        };
        if deg > FACTOR_DEGREE_LIMIT {
            return Err(Error::FactorLimit { degree: deg, limit: FACTOR_DEGREE_LIMIT });
        }
        let unit = f.leading();
        let mut rest = self.poly_monic(f);
        let mut factors = Vec::new();
        let mut k = 1;
        while let Degree::Finite(dr) = rest.degree() {
            if dr == 0 {
                break;
            }
            if 2 * k > dr {
                factors.push((rest.clone(), 1));
                break;
            }
            for g in self.monic_polys(k) {
                let mut mult = 0;
                loop {
                    let (qt, r) = self.poly_divmod(&rest, &g)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = qt;
                    mult += 1;
                }
                if mult > 0 {
                    factors.push((g, mult));
                }
            }
            k += 1;
        }
        factors.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| lex_cmp(a, b)));
        Ok(Factorization { unit, factors })
    }

    /// Re-expands a factorization.
    pub fn expand(&self, fac: &Factorization) -> FieldPoly {
        fac.factors.iter().fold(FieldPoly::constant(fac.unit), |acc, (v, n)| {
            self.poly_mul(&acc, &self.poly_pow(v, *n))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &FieldCtx, c: &[i64]) -> FieldPoly {
        FieldPoly::new(c.iter().map(|&v| f.from_int(v)).collect())
    }

    #[test]
    fn divmod_examples() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let (q, r) = f3.poly_divmod(&poly(&f3, &[-1, 0, 1]), &poly(&f3, &[-1, 1])).unwrap();
        assert_eq!((q, r), (poly(&f3, &[1, 1]), FieldPoly::zero()));

        let (q, r) = f3.poly_divmod(&FieldPoly::x(), &poly(&f3, &[0, 0, 1])).unwrap();
        assert_eq!((q, r), (FieldPoly::zero(), FieldPoly::x()));

        let f2 = FieldCtx::new(2, 1, None).unwrap();
        let (q, r) = f2.poly_divmod(&poly(&f2, &[1, 1, 0, 1]), &poly(&f2, &[1, 1])).unwrap();
        assert_eq!((q, r), (poly(&f2, &[0, 1, 1]), FieldPoly::one()));

        assert_eq!(f2.poly_divmod(&FieldPoly::x(), &FieldPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn divmod_reconstruction_exhaustive() {
        for p in [2u64, 3] {
            let f = FieldCtx::new(p, 1, None).unwrap();
            let all: Vec<FieldPoly> = (0..=3)
                .flat_map(|k| {
                    (0..(p as usize).pow(k + 1)).map(move |mut n| {
                        let mut c = vec![0i64; k as usize + 1];
                        for slot in c.iter_mut() {
                            *slot = (n % p as usize) as i64;
                            n /= p as usize;
                        }
                        c
                    })
                })
                .map(|c| poly(&f, &c))
                .collect();
            for a in &all {
                for b in all.iter().filter(|b| !b.is_zero()) {
                    let (q, r) = f.poly_divmod(a, b).unwrap();
                    assert_eq!(f.poly_add(&f.poly_mul(&q, b), &r), *a);
                    assert!(r.degree() < b.degree());
                }
            }
        }
    }

    #[test]
    fn gcd_examples() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        let g = poly(&f2, &[1, 0, 1]);
        assert_eq!(f2.poly_gcd(&g, &FieldPoly::zero()).unwrap(), g);
        assert_eq!(f2.poly_gcd(&g, &poly(&f2, &[1, 1])).unwrap(), poly(&f2, &[1, 1]));
        assert_eq!(f2.poly_gcd(&FieldPoly::zero(), &FieldPoly::zero()), Err(Error::BothZero));

        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let l = poly(&f3, &[-1, 1]);
        let a = f3.poly_pow(&l, 2);
        let b = f3.poly_pow(&l, 3);
        assert_eq!(f3.poly_gcd(&a, &b).unwrap(), a);
        let c = f3.poly_scale(&poly(&f3, &[1, 0, 1]), f3.from_int(2));
        assert_eq!(f3.poly_gcd(&c, &FieldPoly::zero()).unwrap(), poly(&f3, &[1, 0, 1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let a = poly(&f3, &[1, 2, 0, 1]);
        let b = poly(&f3, &[2, 1, 1]);
        let (g, s, t) = f3.poly_ext_gcd(&a, &b).unwrap();
        assert_eq!(f3.poly_add(&f3.poly_mul(&s, &a), &f3.poly_mul(&t, &b)), g);
        assert_eq!(g, f3.poly_gcd(&a, &b).unwrap());
    }

    #[test]
    fn irreducibility() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert!(f3.is_irreducible(&poly(&f3, &[-1, 1])).unwrap());
        assert!(!f2.is_irreducible(&poly(&f2, &[1, 0, 1])).unwrap());
        assert!(f2.is_irreducible(&poly(&f2, &[1, 1, 1])).unwrap());
        assert_eq!(f2.is_irreducible(&FieldPoly::one()), Err(Error::ConstantPolynomial));
    }

    #[test]
    fn factor_examples() {
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        let fac = f3.factor(&poly(&f3, &[-1, 0, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f3, &[2, 1]), 3)]);
        let fac = f3.factor(&poly(&f3, &[-1, 0, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f3, &[1, 1]), 1), (poly(&f3, &[2, 1]), 1)]);
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        let fac = f2.factor(&poly(&f2, &[1, 1])).unwrap();
        assert_eq!(fac.factors, vec![(poly(&f2, &[1, 1]), 1)]);
        assert_eq!(f2.factor(&FieldPoly::zero()), Err(Error::ZeroPolynomial));
        let big = FieldPoly::monomial(FieldElement::ONE, 25);
        assert!(matches!(f2.factor(&big), Err(Error::FactorLimit { .. })));
    }

    #[test]
    fn factor_round_trip_all_monic_deg_le_4_over_f2() {
        let f2 = FieldCtx::new(2, 1, None).unwrap();
        for k in 1..=4 {
            for g in f2.monic_polys(k) {
                let fac = f2.factor(&g).unwrap();
                assert_eq!(f2.expand(&fac), g);
                for (i, (v, n)) in fac.factors.iter().enumerate() {
                    assert!(*n >= 1);
                    assert!(f2.is_irreducible(v).unwrap());
                    assert_eq!(v.leading(), FieldElement::ONE);
                    assert!(fac.factors[i + 1..].iter().all(|(w, _)| w != v));
                }
            }
        }
    }

    #[test]
    fn factor_with_unit_over_f4() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let a = f4.generator();
        // a * (x + a) * (x + 1)^2
        let g = f4.poly_mul(
            &f4.poly_scale(&FieldPoly::new(vec![a, FieldElement::ONE]), a),
            &f4.poly_pow(&FieldPoly::new(vec![FieldElement::ONE, FieldElement::ONE]), 2),
        );
        let fac = f4.factor(&g).unwrap();
        assert_eq!(fac.unit, a);
        assert_eq!(f4.expand(&fac), g);
        assert_eq!(fac.factors.len(), 2);
    }
}
