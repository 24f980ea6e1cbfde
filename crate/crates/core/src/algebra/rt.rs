use crate::algebra::field::{FieldCtx, FieldElement};
use crate::algebra::poly::{Degree, FieldPoly};
use crate::error::{Error, Result};

/// An element of R^t = F_{p^m}[u]/<u^t>; `parts[l]` is the coefficient of
/// `u^l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RtElement {
    parts: Vec<FieldElement>,
}

impl RtElement {
    pub fn zero(t: usize) -> RtElement {
        RtElement { parts: vec![FieldElement::ZERO; t] }
    }

    pub fn one(t: usize) -> RtElement {
        RtElement::constant(t, FieldElement::ONE)
    }

    pub fn constant(t: usize, c: FieldElement) -> RtElement {
        let mut e = RtElement::zero(t);
        e.parts[0] = c;
        e
    }

    /// `c * u^l`; zero when `l >= t`.
    pub fn monomial(t: usize, c: FieldElement, l: usize) -> RtElement {
        let mut e = RtElement::zero(t);
        if l < t {
            e.parts[l] = c;
        }
        e
    }

    pub fn from_parts(parts: Vec<FieldElement>) -> RtElement {
        RtElement { parts }
    }

    pub fn parts(&self) -> &[FieldElement] {
        &self.parts
    }

    pub fn part(&self, l: usize) -> FieldElement {
        self.parts[l]
    }

    pub fn t(&self) -> usize {
        self.parts.len()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|c| c.is_zero())
    }

    /// Smallest `l` with a nonzero `u^l` coefficient; `t` for zero.
    pub fn u_valuation(&self) -> usize {
        self.parts.iter().position(|c| !c.is_zero()).unwrap_or(self.parts.len())
    }

    pub fn is_unit(&self) -> bool {
        !self.parts[0].is_zero()
    }
}

impl FieldCtx {
    pub fn rt_add(&self, a: &RtElement, b: &RtElement) -> RtElement {
        RtElement::from_parts(a.parts.iter().zip(&b.parts).map(|(&x, &y)| self.add(x, y)).collect())
    }

    pub fn rt_neg(&self, a: &RtElement) -> RtElement {
        RtElement::from_parts(a.parts.iter().map(|&x| self.neg(x)).collect())
    }

    pub fn rt_sub(&self, a: &RtElement, b: &RtElement) -> RtElement {
        self.rt_add(a, &self.rt_neg(b))
    }

    pub fn rt_scale(&self, a: &RtElement, c: FieldElement) -> RtElement {
        RtElement::from_parts(a.parts.iter().map(|&x| self.mul(x, c)).collect())
    }

    /// Product truncated at `u^t`.
    pub fn rt_mul(&self, a: &RtElement, b: &RtElement) -> RtElement {
        let t = a.t();
        let mut out = vec![FieldElement::ZERO; t];
        for (i, &x) in a.parts.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.parts[..t - i].iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        RtElement::from_parts(out)
    }

    /// Inverse of a unit of R^t by Newton lifting.
    pub fn rt_inv(&self, a: &RtElement) -> Result<RtElement> {
        let t = a.t();
        let c = self.inv(a.parts[0])?;
        let two = RtElement::constant(t, self.from_int(2));
        let mut b = RtElement::constant(t, c);
        let mut precision = 1;
        while precision < t {
            let ab = self.rt_mul(a, &b);
            b = self.rt_mul(&b, &self.rt_sub(&two, &ab));
            precision *= 2;
        }
        Ok(b)
    }
}

/// Polynomial in `x` with coefficients in R^t, normalized to have no
/// trailing zero coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RtPoly {
    t: usize,
    coeffs: Vec<RtElement>,
}

impl RtPoly {
    pub fn new(t: usize, mut coeffs: Vec<RtElement>) -> RtPoly {
        debug_assert!(coeffs.iter().all(|c| c.t() == t));
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RtPoly { t, coeffs }
    }

    pub fn zero(t: usize) -> RtPoly {
        RtPoly { t, coeffs: Vec::new() }
    }

    /// Embeds a polynomial over F_{p^m} at `u`-level 0.
    pub fn from_field_poly(t: usize, f: &FieldPoly) -> RtPoly {
        RtPoly::new(t, f.coeffs().iter().map(|&c| RtElement::constant(t, c)).collect())
    }

    /// Assembles `sum_l u^l levels[l]`.
    pub fn from_levels(t: usize, levels: &[FieldPoly]) -> RtPoly {
        let n = levels.iter().map(|p| p.coeffs().len()).max().unwrap_or(0);
        let coeffs = (0..n)
            .map(|k| {
                let mut parts = vec![FieldElement::ZERO; t];
                for (l, lp) in levels.iter().enumerate().take(t) {
                    parts[l] = lp.coeff(k);
                }
                RtElement::from_parts(parts)
            })
            .collect();
        RtPoly::new(t, coeffs)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn coeffs(&self) -> &[RtElement] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> RtElement {
        self.coeffs.get(k).cloned().unwrap_or_else(|| RtElement::zero(self.t))
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

    /// The coefficient of `u^l`, a polynomial over F_{p^m}.
    pub fn level(&self, l: usize) -> FieldPoly {
        FieldPoly::new(self.coeffs.iter().map(|c| c.part(l)).collect())
    }
}

impl FieldCtx {
    pub fn rtpoly_add(&self, a: &RtPoly, b: &RtPoly) -> RtPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        RtPoly::new(a.t, (0..n).map(|k| self.rt_add(&a.coeff(k), &b.coeff(k))).collect())
    }

    pub fn rtpoly_neg(&self, a: &RtPoly) -> RtPoly {
        RtPoly::new(a.t, a.coeffs.iter().map(|c| self.rt_neg(c)).collect())
    }

    pub fn rtpoly_mul(&self, a: &RtPoly, b: &RtPoly) -> RtPoly {
        if a.is_zero() || b.is_zero() {
            return RtPoly::zero(a.t);
        }
        let mut out = vec![RtElement::zero(a.t); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.rt_add(&out[i + j], &self.rt_mul(x, y));
            }
        }
        RtPoly::new(a.t, out)
    }

    /// Remainder modulo a polynomial whose leading coefficient is a unit.
    pub fn rtpoly_rem(&self, a: &RtPoly, b: &RtPoly) -> Result<RtPoly> {
        let Degree::Finite(db) = b.degree() else {
            return Err(Error::DivisionByZero);
        };
        let lead_inv = self.rt_inv(&b.coeffs[db]).map_err(|_| Error::NonUnitLeadingCoefficient)?;
        let mut rem = a.coeffs.clone();
        for k in (db..rem.len()).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let c = self.rt_mul(&rem[k], &lead_inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                let idx = k - db + j;
                rem[idx] = self.rt_sub(&rem[idx], &self.rt_mul(&c, bc));
            }
        }
        rem.truncate(db);
        Ok(RtPoly::new(a.t, rem))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuation() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        assert_eq!(RtElement::monomial(4, FieldElement::ONE, 2).u_valuation(), 2);
        assert_eq!(RtElement::zero(4).u_valuation(), 4);
        let one_plus_u = f.rt_add(&RtElement::one(4), &RtElement::monomial(4, FieldElement::ONE, 1));
        assert_eq!(one_plus_u.u_valuation(), 0);
    }

    #[test]
    fn multiplication_truncates() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let top = RtElement::monomial(3, FieldElement::ONE, 2);
        let u = RtElement::monomial(3, FieldElement::ONE, 1);
        assert!(f.rt_mul(&top, &u).is_zero());
        assert_eq!(f.rt_mul(&u, &u), top);
    }

    #[test]
    fn inverse_of_units() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        for a0 in 1..3 {
            for a1 in 0..3 {
                for a2 in 0..3 {
                    let a = RtElement::from_parts(vec![f.from_int(a0), f.from_int(a1), f.from_int(a2)]);
                    let b = f.rt_inv(&a).unwrap();
                    assert_eq!(f.rt_mul(&a, &b), RtElement::one(3));
                }
            }
        }
        assert!(f.rt_inv(&RtElement::monomial(3, FieldElement::ONE, 1)).is_err());
    }

    #[test]
    fn poly_remainder_over_rt() {
        let f = FieldCtx::new(2, 1, None).unwrap();
        let t = 2;
        // x^2 + u x + 1
        let omega = RtPoly::new(
            t,
            vec![RtElement::one(t), RtElement::monomial(t, FieldElement::ONE, 1), RtElement::one(t)],
        );
        let x = RtPoly::new(t, vec![RtElement::zero(t), RtElement::one(t)]);
        let x2 = f.rtpoly_mul(&x, &x);
        // x^2 = u x + 1 modulo omega in characteristic 2
        let r = f.rtpoly_rem(&x2, &omega).unwrap();
        assert_eq!(r.level(0), FieldPoly::one());
        assert_eq!(r.level(1), FieldPoly::x());
    }
}
