//! Cyclic codes of length p^s correspond to λ-constacyclic ones through
//! σ: c(x) ↦ c(λ_0 x), R^{t,(x-1)^{p^s}} → R^{t,x^{p^s}-λ}.

use std::sync::Arc;

use crate::algebra::{FieldCtx, FieldElement, FieldPoly, RtPoly};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::linalg::RowSpace;
use crate::quotient::{QuotElem, RingCtx};

/// `λ_0 = λ^{-p^{m-r}}` with `r = s mod m`, so that `λ_0^{p^s} = λ^{-1}`.
pub fn lambda0(field: &FieldCtx, lambda: FieldElement, s: u32) -> Result<FieldElement> {
    if lambda.is_zero() {
        return Err(Error::ZeroLambda);
    }
    let m = field.m() as u32;
    let r = s % m;
    let e = (field.p() as i128).pow(m - r);
    let l0 = field.pow(lambda, -e)?;
    let ps = (field.p() as i128).pow(s);
    if field.mul(field.pow(l0, ps)?, lambda) != FieldElement::ONE {
        return Err(Error::ConstraintViolation("lambda0^(p^s) * lambda != 1".into()));
    }
    Ok(l0)
}

#[derive(Clone, Debug)]
pub struct SigmaMap {
    pub source: Arc<RingCtx>,
    pub target: Arc<RingCtx>,
    pub lambda: FieldElement,
    pub lambda0: FieldElement,
    // lambda0^k and lambda0^{-k} for k < p^s
    forward: Vec<FieldElement>,
    backward: Vec<FieldElement>,
}

impl SigmaMap {
    pub fn new(field: FieldCtx, t: usize, s: u32, lambda: FieldElement) -> Result<SigmaMap> {
        let l0 = lambda0(&field, lambda, s)?;
        let xm1 = FieldPoly::new(vec![field.from_int(-1), FieldElement::ONE]);
        let source = RingCtx::special(field.clone(), t, &xm1, s)?;
        let ps = source.n();
        let mut omega = vec![FieldElement::ZERO; ps + 1];
        omega[0] = field.neg(lambda);
        omega[ps] = FieldElement::ONE;
        let target = RingCtx::new(field.clone(), t, &RtPoly::from_field_poly(t, &FieldPoly::new(omega)))?;
        let inv = field.inv(l0)?;
        let powers = |base: FieldElement| {
            let mut acc = FieldElement::ONE;
            (0..ps)
                .map(|_| {
                    let v = acc;
                    acc = field.mul(acc, base);
                    v
                })
                .collect::<Vec<_>>()
        };
        Ok(SigmaMap { forward: powers(l0), backward: powers(inv), source, target, lambda, lambda0: l0 })
    }

    fn substitute(&self, c: &QuotElem, from: &Arc<RingCtx>, to: &Arc<RingCtx>, scale: &[FieldElement]) -> Result<QuotElem> {
        if !c.ctx().same(from) {
            return Err(Error::ContextMismatch);
        }
        let f = from.field();
        let n = from.n();
        let coeffs = c.coeffs().iter().enumerate().map(|(i, &v)| f.mul(v, scale[i % n])).collect();
        to.from_coords(coeffs)
    }

    /// `c(x) ↦ c(λ_0 x)`
    pub fn apply(&self, c: &QuotElem) -> Result<QuotElem> {
        self.substitute(c, &self.source, &self.target, &self.forward)
    }

    /// `c(x) ↦ c(λ_0^{-1} x)`
    pub fn inverse(&self, c: &QuotElem) -> Result<QuotElem> {
        self.substitute(c, &self.target, &self.source, &self.backward)
    }

    /// The image of a cyclic code.
    pub fn transfer_code(&self, code: &Code) -> Result<Code> {
        if !code.ctx().same(&self.source) {
            return Err(Error::ContextMismatch);
        }
        let f = self.source.field();
        let rows = code
            .basis()
            .rows()
            .iter()
            .map(|r| Ok(self.apply(&self.source.from_coords(r.clone())?)?.into_coeffs()))
            .collect::<Result<Vec<_>>>()?;
        Code::from_space(&self.target, RowSpace::from_vectors(f, self.target.dim(), rows))
    }
}

pub fn sigma_apply(map: &SigmaMap, c: &QuotElem) -> Result<QuotElem> {
    map.apply(c)
}

pub fn transfer_code(map: &SigmaMap, code: &Code) -> Result<Code> {
    map.transfer_code(code)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda0_examples() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(lambda0(&f, FieldElement::ONE, 1).unwrap(), FieldElement::ONE);
        assert_eq!(lambda0(&f, f.from_int(-1), 1).unwrap(), f.from_int(-1));
        assert_eq!(lambda0(&f, FieldElement::ZERO, 1), Err(Error::ZeroLambda));
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let a = f4.generator();
        assert_eq!(lambda0(&f4, a, 1).unwrap(), f4.pow(a, -2).unwrap());
    }

    #[test]
    fn sigma_of_x_minus_one() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let map = SigmaMap::new(f.clone(), 2, 1, f.from_int(2)).unwrap();
        let s = &map.source;
        assert_eq!(map.apply(&s.one()).unwrap(), map.target.one());
        assert_eq!(map.apply(&s.x()).unwrap(), map.target.x().scale(map.lambda0));
        let img = map.apply(&s.x().sub(&s.one()).unwrap()).unwrap();
        // 2x - 1 = 2(x + 1)
        let expect = map.target.x().add(&map.target.one()).unwrap().scale(f.from_int(2));
        assert_eq!(img, expect);
        assert!(!img.is_unit());
        assert_eq!(map.inverse(&img).unwrap(), s.x().sub(&s.one()).unwrap());
    }

    #[test]
    fn homomorphism_on_small_ring() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let map = SigmaMap::new(f.clone(), 1, 1, f.from_int(2)).unwrap();
        let s = &map.source;
        let size = s.size().unwrap();
        for i in 0..size {
            for j in (0..size).step_by(5) {
                let (a, b) = (s.element_at(i), s.element_at(j));
                let lhs = map.apply(&a.mul(&b).unwrap()).unwrap();
                let rhs = map.apply(&a).unwrap().mul(&map.apply(&b).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }
}
