//! The ring R^{t,ω} = R^t[x]/<ω(x)> and its elements.
//!
//! Elements are dense vectors over F_{p^m} indexed `l * N + k`, the
//! coefficient of `u^l x^k`. This is also the column order of every code
//! basis.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::algebra::{Degree, Factorization, FieldCtx, FieldElement, FieldPoly, RtElement, RtPoly};
use crate::error::{Error, Result};

/// Data of the case ω = f^{p^s} with f irreducible over F_{p^m}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Special {
    pub f: FieldPoly,
    pub d: usize,
    pub s: u32,
    pub ps: usize,
}

pub struct RingCtx {
    field: FieldCtx,
    t: usize,
    n: usize,
    omega: RtPoly,
    // x^N = sum_j tail[j] x^j
    tail: Vec<RtElement>,
    omega0: FieldPoly,
    factorization: Factorization,
    special: Option<Special>,
    residue: OnceLock<Arc<RingCtx>>,
}

impl fmt::Debug for RingCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RingCtx")
            .field("field", &self.field)
            .field("t", &self.t)
            .field("omega", &self.omega)
            .field("special", &self.special)
            .finish()
    }
}

fn power_of(p: usize, n: usize) -> Option<u32> {
    let (mut v, mut s) = (1usize, 0u32);
    while v < n {
        v *= p;
        s += 1;
    }
    (v == n).then_some(s)
}

impl RingCtx {
    /// Builds R^{t,ω}. ω is scaled to be monic; its leading coefficient must
    /// be a unit of R^t.
    pub fn new(field: FieldCtx, t: usize, omega: &RtPoly) -> Result<Arc<RingCtx>> {
        if t == 0 || omega.t() != t {
            return Err(Error::BadLevel { level: omega.t(), t });
        }
        let omega0 = omega.level(0);
        if omega0.is_zero() {
            return Err(Error::ZeroResidue);
        }
        let n = match omega.degree() {
            Degree::Finite(n) => n,
            Degree::MinusInfinity => return Err(Error::ZeroResidue),
        };
        let lead = omega.coeff(n);
        if !lead.is_unit() {
            return Err(Error::NonUnitLeadingCoefficient);
        }
        if n == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let inv = field.rt_inv(&lead)?;
        let monic = RtPoly::new(t, omega.coeffs().iter().map(|c| field.rt_mul(c, &inv)).collect());
        let omega0 = monic.level(0);
        let factorization = field.factor(&omega0)?;
        let u_free = (1..t).all(|l| monic.level(l).is_zero());
        let special = match factorization.factors.as_slice() {
            [(v, mult)] if u_free => power_of(field.p() as usize, *mult).map(|s| Special {
                f: v.clone(),
                d: v.degree().finite().unwrap_or(0),
                s,
                ps: *mult,
            }),
            _ => None,
        };
        Ok(Arc::new(RingCtx::assemble(field, t, monic, factorization, special)))
    }

    /// R^{t, f^{p^s}} for an irreducible `f`, without factoring ω.
    pub fn special(field: FieldCtx, t: usize, f: &FieldPoly, s: u32) -> Result<Arc<RingCtx>> {
        if t == 0 {
            return Err(Error::BadLevel { level: 0, t });
        }
        if !field.is_irreducible(f)? {
            return Err(Error::NotSpecialCase);
        }
        let f = field.poly_monic(f);
        let ps = (field.p() as usize).checked_pow(s).ok_or(Error::ExponentOverflow { offset: 0 })?;
        let omega0 = field.poly_pow(&f, ps);
        let d = f.degree().finite().unwrap_or(0);
        let factorization = Factorization { unit: FieldElement::ONE, factors: vec![(f.clone(), ps)] };
        let omega = RtPoly::from_field_poly(t, &omega0);
        let special = Some(Special { f, d, s, ps });
        Ok(Arc::new(RingCtx::assemble(field, t, omega, factorization, special)))
    }

    fn assemble(
        field: FieldCtx,
        t: usize,
        omega: RtPoly,
        factorization: Factorization,
        special: Option<Special>,
    ) -> RingCtx {
        let n = omega.degree().finite().expect("omega is nonzero");
        let tail = (0..n).map(|k| field.rt_neg(&omega.coeff(k))).collect();
        let omega0 = omega.level(0);
        RingCtx { field, t, n, omega, tail, omega0, factorization, special, residue: OnceLock::new() }
    }

    pub fn field(&self) -> &FieldCtx {
        &self.field
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Degree of ω, the number of x-coefficients per level.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Dimension over F_{p^m}.
    pub fn dim(&self) -> usize {
        self.t * self.n
    }

    pub fn omega(&self) -> &RtPoly {
        &self.omega
    }

    pub fn omega0(&self) -> &FieldPoly {
        &self.omega0
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    pub fn special_data(&self) -> Option<&Special> {
        self.special.as_ref()
    }

    pub fn require_special(&self) -> Result<&Special> {
        self.special.as_ref().ok_or(Error::NotSpecialCase)
    }

    /// Number of ring elements, `None` on overflow.
    pub fn size(&self) -> Option<u128> {
        (self.field.order() as u128).checked_pow(self.dim() as u32)
    }

    pub fn same(&self, other: &RingCtx) -> bool {
        std::ptr::eq(self, other)
            || (self.field == other.field && self.t == other.t && self.omega == other.omega)
    }

    /// R^{k, ω mod u^k}.
    pub fn truncated(self: &Arc<Self>, k: usize) -> Result<Arc<RingCtx>> {
        if k == 0 || k > self.t {
            return Err(Error::BadLevel { level: k, t: self.t });
        }
        if k == self.t {
            return Ok(self.clone());
        }
        if k == 1 {
            return Ok(self.residue());
        }
        Ok(Arc::new(self.truncate_to(k)))
    }

    fn truncate_to(&self, k: usize) -> RingCtx {
        let omega = RtPoly::new(
            k,
            self.omega.coeffs().iter().map(|c| RtElement::from_parts(c.parts()[..k].to_vec())).collect(),
        );
        RingCtx::assemble(self.field.clone(), k, omega, self.factorization.clone(), self.special.clone())
    }

    /// The residue ring R^{1,ω_0}.
    pub fn residue(self: &Arc<Self>) -> Arc<RingCtx> {
        if self.t == 1 {
            return self.clone();
        }
        self.residue.get_or_init(|| Arc::new(self.truncate_to(1))).clone()
    }

    pub fn zero(self: &Arc<Self>) -> QuotElem {
        QuotElem { ctx: self.clone(), coeffs: vec![FieldElement::ZERO; self.dim()] }
    }

    pub fn one(self: &Arc<Self>) -> QuotElem {
        self.constant(FieldElement::ONE)
    }

    pub fn constant(self: &Arc<Self>, c: FieldElement) -> QuotElem {
        let mut e = self.zero();
        e.coeffs[0] = c;
        e
    }

    pub fn x(self: &Arc<Self>) -> QuotElem {
        self.one().mul_x()
    }

    pub fn u(self: &Arc<Self>) -> QuotElem {
        self.one().mul_u_pow(1)
    }

    pub fn from_coords(self: &Arc<Self>, coeffs: Vec<FieldElement>) -> Result<QuotElem> {
        if coeffs.len() != self.dim() || coeffs.iter().any(|c| c.index() >= self.field.order()) {
            return Err(Error::ContextMismatch);
        }
        Ok(QuotElem { ctx: self.clone(), coeffs })
    }

    /// Reduces a polynomial over R^t modulo ω.
    pub fn from_rtpoly(self: &Arc<Self>, a: &RtPoly) -> Result<QuotElem> {
        if a.t() != self.t {
            return Err(Error::ContextMismatch);
        }
        let r = self.field.rtpoly_rem(a, &self.omega)?;
        let mut coeffs = vec![FieldElement::ZERO; self.dim()];
        for (k, c) in r.coeffs().iter().enumerate() {
            for l in 0..self.t {
                coeffs[l * self.n + k] = c.part(l);
            }
        }
        Ok(QuotElem { ctx: self.clone(), coeffs })
    }

    /// `sum_l u^l levels[l]`, reduced modulo ω.
    pub fn from_levels(self: &Arc<Self>, levels: &[FieldPoly]) -> QuotElem {
        let p = RtPoly::from_levels(self.t, levels);
        self.from_rtpoly(&p).expect("levels built in this context")
    }

    pub fn from_field_poly(self: &Arc<Self>, f: &FieldPoly) -> QuotElem {
        self.from_levels(std::slice::from_ref(f))
    }

    /// The element with coordinate vector equal to the base-q digits of
    /// `index`.
    pub fn element_at(self: &Arc<Self>, mut index: u128) -> QuotElem {
        let q = self.field.order() as u128;
        let coeffs = (0..self.dim())
            .map(|_| {
                let c = FieldElement((index % q) as u32);
                index /= q;
                c
            })
            .collect();
        QuotElem { ctx: self.clone(), coeffs }
    }

    /// `u^l f^e h` for a polynomial `h` over F_{p^m}.
    pub fn u_f_term(self: &Arc<Self>, l: usize, e: usize, h: &FieldPoly) -> Result<QuotElem> {
        let sp = self.require_special()?;
        if l >= self.t || e >= sp.ps || h.is_zero() {
            return Ok(self.zero());
        }
        let fe = self.field.poly_mul(&self.field.poly_pow(&sp.f, e), h);
        let fe = self.field.poly_rem(&fe, &self.omega0)?;
        let mut levels = vec![FieldPoly::zero(); l + 1];
        levels[l] = fe;
        Ok(self.from_levels(&levels))
    }

    fn mul_raw(&self, a: &[FieldElement], b: &[FieldElement]) -> Vec<FieldElement> {
        let (t, n, f) = (self.t, self.n, &self.field);
        let w = 2 * n - 1;
        let mut prod = vec![FieldElement::ZERO; t * w];
        for la in 0..t {
            for i in 0..n {
                let x = a[la * n + i];
                if x.is_zero() {
                    continue;
                }
                for lb in 0..t - la {
                    let row = (la + lb) * w + i;
                    for (j, &y) in b[lb * n..(lb + 1) * n].iter().enumerate() {
                        if !y.is_zero() {
                            prod[row + j] = f.add(prod[row + j], f.mul(x, y));
                        }
                    }
                }
            }
        }
        for k in (n..w).rev() {
            for lc in 0..t {
                let c = prod[lc * w + k];
                if c.is_zero() {
                    continue;
                }
                prod[lc * w + k] = FieldElement::ZERO;
                for (j, tj) in self.tail.iter().enumerate() {
                    for lt in 0..t - lc {
                        let y = tj.part(lt);
                        if !y.is_zero() {
                            let idx = (lc + lt) * w + k - n + j;
                            prod[idx] = f.add(prod[idx], f.mul(c, y));
                        }
                    }
                }
            }
        }
        let mut out = Vec::with_capacity(t * n);
        for l in 0..t {
            out.extend_from_slice(&prod[l * w..l * w + n]);
        }
        out
    }
}

/// An element of R^{t,ω}.
#[derive(Clone)]
pub struct QuotElem {
    ctx: Arc<RingCtx>,
    coeffs: Vec<FieldElement>,
}

impl PartialEq for QuotElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.ctx.same(&other.ctx)
    }
}

impl Eq for QuotElem {}

impl fmt::Debug for QuotElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<u32> = self.coeffs.iter().map(|c| c.index()).collect();
        f.debug_tuple("QuotElem").field(&v).finish()
    }
}

/// Coordinates of an element in the basis `u^l x^i f^j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FBasisCoords {
    pub t: usize,
    pub ps: usize,
    pub d: usize,
    coeffs: Vec<FieldElement>,
}

impl FBasisCoords {
    pub fn new(t: usize, ps: usize, d: usize) -> FBasisCoords {
        FBasisCoords { t, ps, d, coeffs: vec![FieldElement::ZERO; t * ps * d] }
    }

    /// `c^{(l)}_{i,j}`
    pub fn get(&self, l: usize, j: usize, i: usize) -> FieldElement {
        self.coeffs[(l * self.ps + j) * self.d + i]
    }

    pub fn set(&mut self, l: usize, j: usize, i: usize, c: FieldElement) {
        self.coeffs[(l * self.ps + j) * self.d + i] = c;
    }

    /// Flat view ordered by u-level, then f-power, then x-power.
    pub fn as_slice(&self) -> &[FieldElement] {
        &self.coeffs
    }
}

impl QuotElem {
    pub fn ctx(&self) -> &Arc<RingCtx> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<FieldElement> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// The coefficient of `u^l` as a polynomial of degree < N.
    pub fn level(&self, l: usize) -> FieldPoly {
        let n = self.ctx.n;
        FieldPoly::new(self.coeffs[l * n..(l + 1) * n].to_vec())
    }

    /// Smallest level with a nonzero part; `t` for zero.
    pub fn u_valuation(&self) -> usize {
        self.coeffs.iter().position(|c| !c.is_zero()).map_or(self.ctx.t, |i| i / self.ctx.n)
    }

    fn check(&self, other: &QuotElem) -> Result<()> {
        if self.ctx.same(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn add(&self, other: &QuotElem) -> Result<QuotElem> {
        self.check(other)?;
        let f = &self.ctx.field;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(QuotElem { ctx: self.ctx.clone(), coeffs })
    }

    pub fn neg(&self) -> QuotElem {
        let f = &self.ctx.field;
        QuotElem { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|&a| f.neg(a)).collect() }
    }

    pub fn sub(&self, other: &QuotElem) -> Result<QuotElem> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: FieldElement) -> QuotElem {
        let f = &self.ctx.field;
        QuotElem { ctx: self.ctx.clone(), coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect() }
    }

    pub fn mul(&self, other: &QuotElem) -> Result<QuotElem> {
        self.check(other)?;
        Ok(QuotElem { ctx: self.ctx.clone(), coeffs: self.ctx.mul_raw(&self.coeffs, &other.coeffs) })
    }

    pub fn pow(&self, mut e: u64) -> QuotElem {
        let mut base = self.clone();
        let mut acc = self.ctx.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same context");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same context");
            }
        }
        acc
    }

    pub fn mul_x(&self) -> QuotElem {
        let ctx = &self.ctx;
        let (t, n, f) = (ctx.t, ctx.n, &ctx.field);
        let mut out = vec![FieldElement::ZERO; t * n];
        for l in 0..t {
            out[l * n + 1..(l + 1) * n].copy_from_slice(&self.coeffs[l * n..(l + 1) * n - 1]);
        }
        for lc in 0..t {
            let c = self.coeffs[lc * n + n - 1];
            if c.is_zero() {
                continue;
            }
            for (j, tj) in ctx.tail.iter().enumerate() {
                for lt in 0..t - lc {
                    let y = tj.part(lt);
                    if !y.is_zero() {
                        let idx = (lc + lt) * n + j;
                        out[idx] = f.add(out[idx], f.mul(c, y));
                    }
                }
            }
        }
        QuotElem { ctx: ctx.clone(), coeffs: out }
    }

    pub fn mul_u_pow(&self, l: usize) -> QuotElem {
        let (t, n) = (self.ctx.t, self.ctx.n);
        let mut out = vec![FieldElement::ZERO; t * n];
        if l < t {
            out[l * n..].copy_from_slice(&self.coeffs[..(t - l) * n]);
        }
        QuotElem { ctx: self.ctx.clone(), coeffs: out }
    }

    /// Image in R^{k, ω mod u^k}: drops every `u^l` with `l >= k`.
    pub fn reduce_mod_u(&self, k: usize) -> Result<QuotElem> {
        let target = self.ctx.truncated(k)?;
        let coeffs = self.coeffs[..k * self.ctx.n].to_vec();
        Ok(QuotElem { ctx: target, coeffs })
    }

    /// The image of an element of R^{k,ω mod u^k} under the inclusion of
    /// representatives into `ctx`.
    pub fn lift_to(&self, ctx: &Arc<RingCtx>) -> Result<QuotElem> {
        if ctx.n != self.ctx.n || ctx.t < self.ctx.t || ctx.field != self.ctx.field {
            return Err(Error::ContextMismatch);
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(ctx.dim(), FieldElement::ZERO);
        Ok(QuotElem { ctx: ctx.clone(), coeffs })
    }

    pub fn is_unit(&self) -> bool {
        let f = &self.ctx.field;
        let a0 = self.level(0);
        match &self.ctx.special {
            Some(sp) => !f.poly_rem(&a0, &sp.f).expect("f is nonzero").is_zero(),
            None => {
                !a0.is_zero()
                    && f.poly_gcd(&a0, &self.ctx.omega0).expect("omega0 is nonzero").degree()
                        == Degree::Finite(0)
            }
        }
    }

    /// Units are inverted modulo u with an extended gcd, then lifted by
    /// Newton iteration.
    pub fn inverse(&self) -> Result<QuotElem> {
        if !self.is_unit() {
            return Err(Error::DivisionByZero);
        }
        let ctx = &self.ctx;
        let f = &ctx.field;
        let (_, s, _) = f.poly_ext_gcd(&self.level(0), &ctx.omega0)?;
        let mut b = ctx.from_field_poly(&f.poly_rem(&s, &ctx.omega0)?);
        let two = ctx.constant(f.from_int(2));
        let mut precision = 1;
        while precision < ctx.t {
            let ab = self.mul(&b)?;
            b = b.mul(&two.sub(&ab)?)?;
            precision *= 2;
        }
        Ok(b)
    }

    pub fn to_f_basis(&self) -> Result<FBasisCoords> {
        let sp = self.ctx.require_special()?;
        let f = &self.ctx.field;
        let mut out = FBasisCoords::new(self.ctx.t, sp.ps, sp.d);
        for l in 0..self.ctx.t {
            let mut rest = self.level(l);
            for j in 0..sp.ps {
                let (q, r) = f.poly_divmod(&rest, &sp.f)?;
                for (i, &c) in r.coeffs().iter().enumerate() {
                    out.set(l, j, i, c);
                }
                rest = q;
            }
        }
        Ok(out)
    }

    /// Largest `k <= p^s` with `f^k | mu(self)`; `p^s` for elements of
    /// `<u>`.
    pub fn val_f(&self) -> Result<usize> {
        let sp = self.ctx.require_special()?;
        let f = &self.ctx.field;
        let mut rest = self.level(0);
        for j in 0..sp.ps {
            if rest.is_zero() {
                return Ok(sp.ps);
            }
            let (q, r) = f.poly_divmod(&rest, &sp.f)?;
            if !r.is_zero() {
                return Ok(j);
            }
            rest = q;
        }
        Ok(sp.ps)
    }

    /// For a nonzero `a` of R^{1,ω}: the unit `h` with `a = f^{val} h`, as
    /// the representative of `a / f^{val}` modulo `f^{p^s - val}`.
    pub fn unit_part(&self) -> Result<QuotElem> {
        let sp = self.ctx.require_special()?;
        let v = self.val_f()?;
        if v >= sp.ps {
            return Err(Error::DivisionByZero);
        }
        let f = &self.ctx.field;
        let (q, _) = f.poly_divmod(&self.level(0), &f.poly_pow(&sp.f, v))?;
        Ok(self.ctx.residue().from_field_poly(&q))
    }
}

impl RingCtx {
    pub fn from_f_basis(self: &Arc<Self>, coords: &FBasisCoords) -> Result<QuotElem> {
        let sp = self.require_special()?;
        if coords.t != self.t || coords.ps != sp.ps || coords.d != sp.d {
            return Err(Error::ContextMismatch);
        }
        let f = &self.field;
        let mut levels = Vec::with_capacity(self.t);
        for l in 0..self.t {
            let mut acc = FieldPoly::zero();
            for j in (0..sp.ps).rev() {
                acc = f.poly_mul(&acc, &sp.f);
                let r = FieldPoly::new((0..sp.d).map(|i| coords.get(l, j, i)).collect());
                acc = f.poly_add(&acc, &r);
            }
            levels.push(acc);
        }
        Ok(self.from_levels(&levels))
    }
}
