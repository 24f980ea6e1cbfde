//! Ideals of R^{t,ω} stored as F_{p^m}-row spaces in monomial coordinates.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::{FieldElement, FieldPoly};
use crate::error::{Error, Result};
use crate::linalg::{kernel, RowSpace};
use crate::quotient::{QuotElem, RingCtx};

#[derive(Clone)]
pub struct Code {
    ctx: Arc<RingCtx>,
    gens: Vec<QuotElem>,
    basis: RowSpace,
}

impl PartialEq for Code {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && self.ctx.same(&other.ctx)
    }
}

impl Eq for Code {}

impl fmt::Debug for Code {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Code").field("rank", &self.rank()).field("gens", &self.gens).finish()
    }
}

/// Torsional degrees (T_0, ..., T_{t-1}).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct TorsionProfile(pub Vec<usize>);

impl TorsionProfile {
    /// `bound >= T_0 >= T_1 >= ... >= 0`
    pub fn is_monotone(&self, bound: usize) -> bool {
        self.0.first().is_none_or(|&t0| t0 <= bound) && self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sum(&self) -> usize {
        self.0.iter().sum()
    }
}

impl Code {
    /// The ideal generated by `gens`: the span of every `u^l x^k g`.
    pub fn from_gens(ctx: &Arc<RingCtx>, gens: Vec<QuotElem>) -> Result<Code> {
        if gens.iter().any(|g| !g.ctx().same(ctx)) {
            return Err(Error::ContextMismatch);
        }
        let f = ctx.field();
        let dim = ctx.dim();
        let mut basis = RowSpace::new(dim);
        'gens: for g in &gens {
            let mut level = g.clone();
            for _ in 0..ctx.t() {
                if level.is_zero() {
                    break;
                }
                let mut shifted = level.clone();
                for _ in 0..ctx.n() {
                    if basis.rank() == dim {
                        break 'gens;
                    }
                    basis.insert(f, shifted.coeffs().to_vec());
                    shifted = shifted.mul_x();
                }
                level = level.mul_u_pow(1);
            }
        }
        Ok(Code { ctx: ctx.clone(), gens, basis })
    }

    /// Wraps a row space already known to be an ideal; the generators are the
    /// basis rows.
    pub fn from_space(ctx: &Arc<RingCtx>, basis: RowSpace) -> Result<Code> {
        if basis.ncols() != ctx.dim() {
            return Err(Error::ContextMismatch);
        }
        let gens = basis.rows().iter().map(|r| ctx.from_coords(r.clone())).collect::<Result<_>>()?;
        Ok(Code { ctx: ctx.clone(), gens, basis })
    }

    pub fn zero(ctx: &Arc<RingCtx>) -> Code {
        Code { ctx: ctx.clone(), gens: Vec::new(), basis: RowSpace::new(ctx.dim()) }
    }

    pub fn unit(ctx: &Arc<RingCtx>) -> Code {
        Code { ctx: ctx.clone(), gens: vec![ctx.one()], basis: RowSpace::full(ctx.dim()) }
    }

    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn gens(&self) -> &[QuotElem] {
        &self.gens
    }

    pub fn basis(&self) -> &RowSpace {
        &self.basis
    }

    pub fn into_basis(self) -> RowSpace {
        self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.rank() == 0
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.basis.rank() == self.ctx.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.is_zero() || self.is_unit_ideal()
    }

    fn check(&self, v: &QuotElem) -> Result<()> {
        if v.ctx().same(&self.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    fn check_code(&self, other: &Code) -> Result<()> {
        if other.ctx.same(&self.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn contains(&self, v: &QuotElem) -> Result<bool> {
        self.check(v)?;
        Ok(self.basis.contains(self.ctx.field(), v.coeffs()))
    }

    pub fn is_subcode_of(&self, other: &Code) -> Result<bool> {
        self.check_code(other)?;
        Ok(self.basis.is_subspace_of(self.ctx.field(), &other.basis))
    }

    /// Whether the row space is closed under multiplication by `x` and `u`.
    pub fn is_ideal(&self) -> bool {
        let f = self.ctx.field();
        self.basis.rows().iter().all(|r| {
            let e = self.ctx.from_coords(r.clone()).expect("row of this context");
            self.basis.contains(f, e.mul_x().coeffs()) && self.basis.contains(f, e.mul_u_pow(1).coeffs())
        })
    }

    pub fn sum(&self, other: &Code) -> Result<Code> {
        self.check_code(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        let basis = self.basis.sum(self.ctx.field(), &other.basis);
        Ok(Code { ctx: self.ctx.clone(), gens, basis })
    }

    /// `r C`
    pub fn mul_elem(&self, r: &QuotElem) -> Result<Code> {
        self.check(r)?;
        let gens = self.gens.iter().map(|g| r.mul(g)).collect::<Result<_>>()?;
        Code::from_gens(&self.ctx, gens)
    }

    /// `(C : a) = {y : a y in C}`
    pub fn colon(&self, a: &QuotElem) -> Result<Code> {
        self.check(a)?;
        let f = self.ctx.field();
        let dim = self.ctx.dim();
        let images: Vec<Vec<FieldElement>> = (0..dim)
            .map(|j| {
                let mut e = vec![FieldElement::ZERO; dim];
                e[j] = FieldElement::ONE;
                let mut img = a.mul(&self.ctx.from_coords(e).expect("unit vector")).expect("same context").into_coeffs();
                self.basis.reduce(f, &mut img);
                img
            })
            .collect();
        let space = RowSpace::from_vectors(f, dim, kernel(f, &images));
        Code::from_space(&self.ctx, space)
    }

    /// Splits `C = <lifts> + pi (C : pi)`. For `pi = u` a single lift of the
    /// generator of the residue code suffices.
    pub fn decompose(&self, pi: &QuotElem) -> Result<(Vec<QuotElem>, Code)> {
        self.check(pi)?;
        let remainder = self.colon(pi)?.mul_elem(pi)?;
        let f = self.ctx.field();
        let n = self.ctx.n();
        let lifts = if *pi == self.ctx.u() {
            let mut g = self.ctx.omega0().clone();
            for r in self.basis.rows() {
                let level0 = FieldPoly::new(r[..n].to_vec());
                if !level0.is_zero() {
                    g = f.poly_gcd(&g, &level0)?;
                }
            }
            if g == *self.ctx.omega0() {
                Vec::new()
            } else {
                let w = self.basis.solve_prefix(f, &g.to_dense(n)).expect("gcd lies in the residue code");
                vec![self.ctx.from_coords(w)?]
            }
        } else {
            let mut covered = Code::from_gens(&self.ctx, vec![pi.clone()])?.basis;
            let mut lifts = Vec::new();
            for r in self.basis.rows() {
                if !covered.contains(f, r) {
                    let e = self.ctx.from_coords(r.clone())?;
                    covered = covered.sum(f, &Code::from_gens(&self.ctx, vec![e.clone()])?.basis);
                    lifts.push(e);
                }
            }
            lifts
        };
        Ok((lifts, remainder))
    }

    /// `Tor_i(C)`, an ideal of the residue ring.
    pub fn torsion(&self, i: usize) -> Result<Code> {
        let t = self.ctx.t();
        if i >= t {
            return Err(Error::BadIndex { index: i, bound: t });
        }
        let colon = self.colon(&self.ctx.one().mul_u_pow(i))?;
        let residue = self.ctx.residue();
        let n = self.ctx.n();
        let f = self.ctx.field();
        let space = RowSpace::from_vectors(f, n, colon.basis.rows().iter().map(|r| r[..n].to_vec()));
        Code::from_space(&residue, space)
    }

    pub fn torsional_degree(&self, i: usize) -> Result<usize> {
        let sp = self.ctx.require_special()?;
        Ok(sp.ps - self.torsion(i)?.rank() / sp.d)
    }

    pub fn torsion_profile(&self) -> Result<TorsionProfile> {
        (0..self.ctx.t()).map(|i| self.torsional_degree(i)).collect::<Result<_>>().map(TorsionProfile)
    }

    /// `log_p |C|`
    pub fn card_exponent(&self) -> usize {
        self.ctx.field().m() * self.rank()
    }

    /// An element of C vanishing below `level` whose `u^level` part is
    /// `poly`, with every free coordinate set to zero.
    pub fn element_with_leading(&self, level: usize, poly: &FieldPoly) -> Result<Option<QuotElem>> {
        let t = self.ctx.t();
        if level >= t {
            return Err(Error::BadIndex { index: level, bound: t });
        }
        let n = self.ctx.n();
        let f = self.ctx.field();
        let reduced = f.poly_rem(poly, self.ctx.omega0())?;
        let mut target = vec![FieldElement::ZERO; level * n];
        target.extend(reduced.to_dense(n));
        self.basis
            .solve_prefix(f, &target)
            .map(|w| self.ctx.from_coords(w))
            .transpose()
    }

    /// Smallest `L` with `u^{t-1} f^L` in `u^j C`; `p^s` always qualifies.
    pub fn smallest_l(&self, j: usize) -> Result<usize> {
        let sp = self.ctx.require_special()?.clone();
        let t = self.ctx.t();
        if j >= t {
            return Err(Error::BadIndex { index: j, bound: t });
        }
        let scaled = self.mul_elem(&self.ctx.one().mul_u_pow(j))?;
        let f = self.ctx.field();
        let mut power = FieldPoly::one();
        for l in 0..sp.ps {
            let probe = self.ctx.from_field_poly(&power).mul_u_pow(t - 1);
            if scaled.contains(&probe)? {
                return Ok(l);
            }
            power = f.poly_mul(&power, &sp.f);
        }
        Ok(sp.ps)
    }

    /// Canonical generators `u^i f^{T_i} + u^{i+1} g_i`, one for each level
    /// where the torsional degree is not already attained by the generators
    /// chosen at lower levels.
    pub fn extract_canonical(&self) -> Result<Vec<QuotElem>> {
        let sp = self.ctx.require_special()?.clone();
        if self.is_trivial() {
            return Err(Error::TrivialIdeal);
        }
        let profile = self.torsion_profile()?;
        let f = self.ctx.field();
        let mut chosen: Vec<QuotElem> = Vec::new();
        let mut generated = Code::zero(&self.ctx);
        for (i, &ti) in profile.0.iter().enumerate() {
            if ti == sp.ps || generated.torsional_degree(i)? == ti {
                continue;
            }
            let w = self
                .element_with_leading(i, &f.poly_pow(&sp.f, ti))?
                .expect("f^{T_i} lies in the i-th torsion code");
            chosen.push(w);
            generated = Code::from_gens(&self.ctx, chosen.clone())?;
        }
        Ok(chosen)
    }

    /// u-levels of the canonical generators: empty for the zero ideal and
    /// `{0}` for the unit ideal.
    pub fn type_signature(&self) -> Result<Vec<usize>> {
        self.ctx.require_special()?;
        if self.is_zero() {
            return Ok(Vec::new());
        }
        if self.is_unit_ideal() {
            return Ok(vec![0]);
        }
        Ok(self.extract_canonical()?.iter().map(|g| g.u_valuation()).collect())
    }
}
