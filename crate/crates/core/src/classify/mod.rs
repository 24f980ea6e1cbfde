//! Closed forms for the t = 4 case: the exponent L for four generator shapes, the torsion
//! and cardinality tables, and the sixteen ideal types.

mod params;
mod types;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quotient::{FBasisCoords, QuotElem, RingCtx};

pub use params::{
    l_prop41, l_prop42, l_prop43, l_prop44, Evaluation, ParamCase41, ParamCase42, ParamCase43, ParamCase44,
};
pub use types::{
    build_type, card_table, card_table_as_printed, check_static, derived_params, expected_signature, generators,
    torsion_table, validate_constraints, Derived, TypeSpec,
};

/// An element of R^{1,ω} that is zero or a unit.
#[derive(Clone, PartialEq, Eq)]
pub struct UnitOrZero(QuotElem);

impl fmt::Debug for UnitOrZero {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UnitOrZero({:?})", self.0)
    }
}

impl UnitOrZero {
    /// Accepts an element of any R^{k,ω}, keeping its residue.
    pub fn new(e: QuotElem) -> Result<UnitOrZero> {
        let e = e.reduce_mod_u(1)?;
        if e.is_zero() || e.is_unit() {
            Ok(UnitOrZero(e))
        } else {
            Err(Error::ConstraintViolation("h must be zero or a unit".into()))
        }
    }

    pub fn zero(ctx: &Arc<RingCtx>) -> UnitOrZero {
        UnitOrZero(ctx.residue().zero())
    }

    pub fn one(ctx: &Arc<RingCtx>) -> UnitOrZero {
        UnitOrZero(ctx.residue().one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn elem(&self) -> &QuotElem {
        &self.0
    }

    /// Zero followed by every unit whose f-basis coordinates vanish from
    /// `f^support` on.
    pub fn enumerate(ctx: &Arc<RingCtx>, support: usize) -> Result<Vec<UnitOrZero>> {
        let sp = ctx.require_special()?.clone();
        let residue = ctx.residue();
        let support = support.min(sp.ps);
        let q = ctx.field().order() as u128;
        let free = (support * sp.d) as u32;
        let mut out = vec![UnitOrZero::zero(ctx)];
        for idx in 0..q.pow(free) {
            let mut coords = FBasisCoords::new(1, sp.ps, sp.d);
            let mut rest = idx;
            for j in 0..support {
                for i in 0..sp.d {
                    coords.set(0, j, i, ctx.field().element((rest % q) as u32)?);
                    rest /= q;
                }
            }
            let e = residue.from_f_basis(&coords)?;
            if e.is_unit() {
                out.push(UnitOrZero(e));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldCtx, FieldElement, FieldPoly};

    #[test]
    fn enumerated_units() {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let xm1 = FieldPoly::new(vec![f.from_int(-1), FieldElement::ONE]);
        let r = RingCtx::special(f, 4, &xm1, 2).unwrap();
        let hs = UnitOrZero::enumerate(&r, 2).unwrap();
        // zero plus 2 * 3 units c0 + c1 f
        assert_eq!(hs.len(), 7);
        assert!(hs[0].is_zero());
        assert!(hs[1..].iter().all(|h| h.elem().is_unit()));
        assert!(UnitOrZero::new(r.residue().from_field_poly(&xm1)).is_err());
    }
}
