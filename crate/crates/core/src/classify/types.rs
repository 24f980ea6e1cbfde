//! The sixteen ideal types of R^{4,f^{p^s}}, their generators, side
//! conditions, torsional degrees and cardinalities.

use std::sync::Arc;

use serde::Serialize;

use super::UnitOrZero;
use crate::algebra::FieldPoly;
use crate::code::{Code, TorsionProfile};
use crate::error::{Error, Result};
use crate::quotient::{QuotElem, RingCtx};

/// Parameters of one of the sixteen types. Exponent lists are 0-based, so
/// `a[0]` is `a_1` (or `a` for types with a single one) and `t[0]` is `t_1`.
/// Type 1 covers both trivial ideals: `b == Some(0)` is `<1>` and
/// `b == None` is `<0>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeSpec {
    pub type_id: u8,
    pub a: Vec<usize>,
    pub b: Option<usize>,
    pub t: Vec<usize>,
    pub h: Vec<UnitOrZero>,
}

/// `L`, `M`, `N` as read off a constructed code.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Derived {
    pub l: Option<usize>,
    pub m: Option<usize>,
    pub n: Option<usize>,
}

/// (#a, has b, #t)
fn shape(type_id: u8) -> Option<(usize, bool, usize)> {
    Some(match type_id {
        2 => (1, false, 0),
        3 => (2, false, 1),
        4 => (2, false, 2),
        5 => (3, false, 3),
        6 => (1, false, 1),
        7 => (2, false, 3),
        8 => (1, false, 2),
        9 => (0, true, 3),
        10 => (1, true, 3),
        11 => (2, true, 4),
        12 => (2, true, 5),
        13 => (3, true, 6),
        14 => (2, true, 6),
        15 => (1, true, 4),
        16 => (1, true, 5),
        _ => return None,
    })
}

impl TypeSpec {
    pub fn new(type_id: u8, a: Vec<usize>, b: Option<usize>, t: Vec<usize>, h: Vec<UnitOrZero>) -> Result<TypeSpec> {
        let (na, hb, nt) = match type_id {
            1 => (0, b.is_some(), 0),
            _ => shape(type_id).ok_or_else(|| Error::ConstraintViolation(format!("no type {type_id}")))?,
        };
        if type_id == 1 && b.is_some_and(|b| b != 0) {
            return Err(Error::ConstraintViolation("type 1 takes b = 0 or no b".into()));
        }
        if a.len() != na || b.is_some() != hb || t.len() != nt || h.len() != nt {
            return Err(Error::ConstraintViolation(format!(
                "type {type_id} takes {na} a, {} b, {nt} t and {nt} h",
                usize::from(hb)
            )));
        }
        Ok(TypeSpec { type_id, a, b, t, h })
    }

    pub fn zero_ideal() -> TypeSpec {
        TypeSpec { type_id: 1, a: vec![], b: None, t: vec![], h: vec![] }
    }

    pub fn unit_ideal() -> TypeSpec {
        TypeSpec { type_id: 1, a: vec![], b: Some(0), t: vec![], h: vec![] }
    }
}

#[derive(Clone, Copy)]
enum Exp {
    A(usize),
    B,
    T(usize),
}

/// (u-level, f-exponent, index into h)
type Term = (usize, Exp, Option<usize>);

fn layout(type_id: u8) -> Vec<Vec<Term>> {
    use Exp::*;
    let p: Vec<Term> = vec![(0, B, None), (1, T(0), Some(0)), (2, T(1), Some(1)), (3, T(2), Some(2))];
    let top = |i| vec![(3, A(i), None)];
    let mid = |i, k: usize| vec![(2, A(i), None), (3, T(k), Some(k))];
    let low = |i, k: usize| vec![(1, A(i), None), (2, T(k), Some(k)), (3, T(k + 1), Some(k + 1))];
    match type_id {
        2 => vec![top(0)],
        3 => vec![top(0), mid(1, 0)],
        4 => vec![top(0), low(1, 0)],
        5 => vec![top(0), mid(1, 0), low(2, 1)],
        6 => vec![mid(0, 0)],
        7 => vec![mid(0, 0), low(1, 1)],
        8 => vec![low(0, 0)],
        9 => vec![p],
        10 => vec![p, top(0)],
        11 => vec![p, top(0), mid(1, 3)],
        12 => vec![p, top(0), low(1, 3)],
        13 => vec![p, top(0), mid(1, 3), low(2, 4)],
        14 => vec![p, mid(0, 3), low(1, 4)],
        15 => vec![p, mid(0, 3)],
        16 => vec![p, low(0, 3)],
        _ => vec![],
    }
}

/// The displayed generators of `spec` in `ctx`.
pub fn generators(ctx: &Arc<RingCtx>, spec: &TypeSpec) -> Result<Vec<QuotElem>> {
    if spec.type_id == 1 {
        return Ok(vec![if spec.b.is_some() { ctx.one() } else { ctx.zero() }]);
    }
    let one = FieldPoly::one();
    layout(spec.type_id)
        .into_iter()
        .map(|terms| {
            let mut g = ctx.zero();
            for (level, exp, hi) in terms {
                let e = match exp {
                    Exp::A(i) => spec.a[i],
                    Exp::B => spec.b.expect("shape checked"),
                    Exp::T(i) => spec.t[i],
                };
                let h = match hi {
                    Some(i) => spec.h[i].elem().level(0),
                    None => one.clone(),
                };
                g = g.add(&ctx.u_f_term(level, e, &h)?)?;
            }
            Ok(g)
        })
        .collect()
}

/// (generator indices, j) for each of L, M, N: the smallest `L` with
/// `u^{3-j} f^L + u^{4-j} g` in the ideal spanned by those generators.
#[allow(clippy::type_complexity)]
fn derived_layout(type_id: u8) -> [Option<(&'static [usize], usize)>; 3] {
    match type_id {
        3 => [Some((&[1], 0)), None, None],
        4 => [Some((&[1], 0)), Some((&[1], 1)), None],
        5 => [Some((&[1, 2], 0)), Some((&[2], 1)), None],
        6 => [Some((&[0], 0)), None, None],
        7 => [Some((&[1], 1)), Some((&[0, 1], 0)), None],
        8 => [Some((&[0], 1)), Some((&[0], 0)), None],
        9 => [Some((&[0], 2)), Some((&[0], 1)), Some((&[0], 0))],
        10 => [Some((&[0], 0)), Some((&[0], 2)), Some((&[0], 1))],
        11 => [Some((&[0, 2], 0)), Some((&[0], 1)), Some((&[0], 2))],
        12 => [Some((&[0, 2], 0)), Some((&[0], 2)), Some((&[0, 2], 1))],
        13 => [Some((&[0, 2, 3], 0)), Some((&[0, 3], 1)), Some((&[0], 2))],
        14 => [Some((&[0, 2], 1)), Some((&[0], 2)), Some((&[0, 1, 2], 0))],
        15 => [Some((&[0], 1)), Some((&[0], 2)), Some((&[0, 1], 0))],
        16 => [Some((&[0], 2)), Some((&[0, 1], 1)), Some((&[0, 1], 0))],
        _ => [None, None, None],
    }
}

/// Recomputes `L`, `M`, `N` from the generators of `spec`.
pub fn derived_params(ctx: &Arc<RingCtx>, spec: &TypeSpec) -> Result<Derived> {
    let gens = generators(ctx, spec)?;
    let mut out = [None; 3];
    for (slot, entry) in out.iter_mut().zip(derived_layout(spec.type_id)) {
        if let Some((idx, j)) = entry {
            let sub = Code::from_gens(ctx, idx.iter().map(|&i| gens[i].clone()).collect())?;
            *slot = Some(sub.smallest_l(j)?);
        }
    }
    Ok(Derived { l: out[0], m: out[1], n: out[2] })
}

// Types 12 and 15 are printed with N<L and M<L. Neither can hold: L is
// the u^3 (resp. u^2) exponent of the ideal whose u^2 (resp. u) exponent
// is N (resp. M), so L <= N (resp. L <= M). N<a2 and M<b are used instead.
fn chains(type_id: u8) -> &'static [&'static str] {
    match type_id {
        2 => &["a1<=top"],
        3 => &["t1<a1<L<a2<=top"],
        4 => &["t2<a1<L<a2<=top", "t2<t1<M<a2"],
        5 => &["t1<a1<L<a2<M<a3<=top", "t3<a1", "t3<t2<a2"],
        6 => &["t1<L<a1<=top"],
        7 => &["t1<a1<L<a2<=top", "t3<t2<a1", "t1<M<L", "t3<M"],
        8 => &["t2<t1<L<a1<=top", "t2<M<L"],
        9 => &["t3<t2<t1<L<b<=top", "t2<M<L", "t3<N<M"],
        10 => &["t3<a1<L<b<=top", "t3<t2<t1<M<b", "t2<N<M"],
        11 => &["t3<a1<L<a2<M<b<=top", "t4<a1", "t3<t2<t1<N<b", "t2<a2"],
        12 => &["t3<a1<L<a2<M<b<=top", "t5<a1", "t3<t2<t1<a2", "t5<t4<a2", "t2<N<a2", "t4<N"],
        13 => &["t3<a1<L<a2<M<a3<N<b<=top", "t4<a1", "t6<a1", "t3<t2<t1<a3", "t6<t5<a3", "t2<a2", "t5<a2"],
        14 => &[
            "t3<a1<L<a2<M<b<=top",
            "t4<a1",
            "t6<a1",
            "t3<t2<t1<b",
            "t6<t5<=a1",
            "t1<a2",
            "t2<a1",
            "t3<N<a1",
            "t4<N",
            "t6<N",
        ],
        15 => &["a1<L<b<=top", "t3<t2<t1<b", "t2<a1", "t4<a1", "t1<M<b", "t3<N<a1"],
        16 => &["a1<L<b<=top", "t3<t2<t1<a1", "t5<t4<a1", "t2<M<a1", "t4<M", "t3<N<M", "t5<N"],
        _ => &[],
    }
}

/// Splits `"x<y<=z"` into symbols and strictness flags.
fn parse_chain(chain: &str) -> (Vec<&str>, Vec<bool>) {
    let mut syms = Vec::new();
    let mut strict = Vec::new();
    let mut rest = chain;
    while let Some(pos) = rest.find('<') {
        syms.push(&rest[..pos]);
        if rest[pos + 1..].starts_with('=') {
            strict.push(false);
            rest = &rest[pos + 2..];
        } else {
            strict.push(true);
            rest = &rest[pos + 1..];
        }
    }
    syms.push(rest);
    (syms, strict)
}

/// Value of a chain symbol; `None` drops it from the chain.
fn lookup(spec: &TypeSpec, ps: usize, derived: Option<&Derived>, sym: &str) -> Option<usize> {
    let idx = |s: &str| s[1..].parse::<usize>().ok().map(|i| i - 1);
    match sym {
        "top" => Some(ps - 1),
        "b" => spec.b,
        "L" => derived.and_then(|d| d.l),
        "M" => derived.and_then(|d| d.m),
        "N" => derived.and_then(|d| d.n),
        s if s.starts_with('a') => spec.a.get(idx(s)?).copied(),
        s if s.starts_with('t') => {
            let i = idx(s)?;
            (!spec.h.get(i)?.is_zero()).then(|| spec.t[i])
        }
        _ => None,
    }
}

/// Relations of the side conditions that fail, e.g. `"a1<L"`. Symbols
/// without a value are dropped and their neighbours compared directly.
fn failures(spec: &TypeSpec, ps: usize, derived: Option<&Derived>) -> Vec<String> {
    let mut out = Vec::new();
    for chain in chains(spec.type_id) {
        let (syms, strict) = parse_chain(chain);
        let mut prev: Option<(&str, usize)> = None;
        let mut pending_strict = false;
        for (k, sym) in syms.iter().enumerate() {
            if k > 0 {
                pending_strict |= strict[k - 1];
            }
            let Some(v) = lookup(spec, ps, derived, sym) else {
                continue;
            };
            if let Some((ps_name, pv)) = prev {
                let ok = if pending_strict { pv < v } else { pv <= v };
                if !ok {
                    let rel = if pending_strict { "<" } else { "<=" };
                    out.push(format!("{ps_name}{rel}{sym}"));
                }
            }
            prev = Some((sym, v));
            pending_strict = false;
        }
    }
    out
}

/// Checks every side condition not involving `L`, `M`, `N`.
pub fn check_static(spec: &TypeSpec, ps: usize) -> Result<()> {
    let bad = failures(spec, ps, None);
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Error::ConstraintViolation(format!("type {}: {}", spec.type_id, bad.join(", "))))
    }
}

/// All side conditions, with `L`, `M`, `N` taken from `derived`.
pub fn validate_constraints(spec: &TypeSpec, ps: usize, derived: &Derived) -> bool {
    failures(spec, ps, Some(derived)).is_empty()
}

fn special_ps(ctx: &RingCtx) -> Result<usize> {
    if ctx.t() != 4 {
        return Err(Error::ConstraintViolation(format!("the sixteen types need t = 4, not {}", ctx.t())));
    }
    Ok(ctx.require_special()?.ps)
}

/// The code generated by the displayed generators of `spec`.
pub fn build_type(ctx: &Arc<RingCtx>, spec: &TypeSpec) -> Result<Code> {
    let ps = special_ps(ctx)?;
    check_static(spec, ps)?;
    Code::from_gens(ctx, generators(ctx, spec)?)
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| Error::ConstraintViolation(format!("{name} is required")))
}

/// `(T_0, T_1, T_2, T_3)` in closed form.
pub fn torsion_table(ctx: &RingCtx, spec: &TypeSpec, derived: &Derived) -> Result<TorsionProfile> {
    let ps = special_ps(ctx)?;
    let a = |i: usize| spec.a[i];
    let b = || spec.b.expect("shape checked");
    let l = || need(derived.l, "L");
    let m = || need(derived.m, "M");
    let n = || need(derived.n, "N");
    let v = match spec.type_id {
        1 if spec.b.is_some() => [0, 0, 0, 0],
        1 => [ps; 4],
        2 => [ps, ps, ps, a(0)],
        3 => [ps, ps, a(1), a(0)],
        4 => [ps, a(1), m()?, a(0)],
        5 => [ps, a(2), a(1), a(0)],
        6 => [ps, ps, a(0), l()?],
        7 => [ps, a(1), a(0), m()?],
        8 => [ps, a(0), l()?, m()?],
        9 => [b(), l()?, m()?, n()?],
        10 => [b(), m()?, n()?, a(0)],
        11 => [b(), n()?, a(1), a(0)],
        12 => [b(), a(1), n()?, a(0)],
        13 => [b(), a(2), a(1), a(0)],
        14 => [b(), a(1), a(0), n()?],
        15 => [b(), m()?, a(0), n()?],
        16 => [b(), a(0), m()?, n()?],
        id => return Err(Error::ConstraintViolation(format!("no type {id}"))),
    };
    Ok(TorsionProfile(v.to_vec()))
}

/// `log_p |C|`, as `dm(4p^s - T_0 - T_1 - T_2 - T_3)`.
pub fn card_table(ctx: &RingCtx, spec: &TypeSpec, derived: &Derived) -> Result<usize> {
    let ps = special_ps(ctx)?;
    let dm = ctx.require_special()?.d * ctx.field().m();
    let profile = torsion_table(ctx, spec, derived)?;
    Ok(dm * (4 * ps - profile.sum()))
}

/// `log_p |C|` by the formulas exactly as printed. Types 6 and 7 have their
/// formulas interchanged there; type 6's printed formula mentions `a_2`,
/// which that type lacks, so it yields `None`.
pub fn card_table_as_printed(ctx: &RingCtx, spec: &TypeSpec, derived: &Derived) -> Result<Option<i64>> {
    let ps = special_ps(ctx)? as i64;
    let dm = (ctx.require_special()?.d * ctx.field().m()) as i64;
    let at = |k: usize| spec.a.get(k).map(|&x| x as i64);
    let a = |k: usize| at(k).ok_or_else(|| Error::ConstraintViolation(format!("a{} is required", k + 1)));
    let b = || spec.b.map(|x| x as i64).ok_or_else(|| Error::ConstraintViolation("b is required".into()));
    let l = || need(derived.l, "L").map(|x| x as i64);
    let m = || need(derived.m, "M").map(|x| x as i64);
    let n = || need(derived.n, "N").map(|x| x as i64);
    let inner = match spec.type_id {
        1 if spec.b.is_some() => 4 * ps,
        1 => 0,
        2 => ps - a(0)?,
        3 => 2 * ps - a(0)? - a(1)?,
        4 => 3 * ps - a(0)? - a(1)? - m()?,
        5 => 3 * ps - a(0)? - a(1)? - a(2)?,
        6 => match at(1) {
            Some(a2) => 3 * ps - a(0)? - a2 - l()?,
            None => return Ok(None),
        },
        7 => 2 * ps - a(0)? - m()?,
        8 => 3 * ps - a(0)? - l()? - m()?,
        9 => 4 * ps - b()? - l()? - m()? - n()?,
        10 => 4 * ps - b()? - m()? - n()? - a(0)?,
        11 | 12 | 14 => 4 * ps - b()? - a(0)? - a(1)? - n()?,
        13 => 4 * ps - b()? - a(0)? - a(1)? - a(2)?,
        15 | 16 => 4 * ps - b()? - a(0)? - m()? - n()?,
        id => return Err(Error::ConstraintViolation(format!("no type {id}"))),
    };
    Ok(Some(dm * inner))
}

/// u-levels of the displayed generators.
pub fn expected_signature(spec: &TypeSpec) -> Vec<usize> {
    match spec.type_id {
        1 if spec.b.is_some() => vec![0],
        1 => vec![],
        id => {
            let mut levels: Vec<usize> = layout(id).iter().map(|g| g[0].0).collect();
            levels.sort_unstable();
            levels
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FieldCtx, FieldElement};

    fn ring(p: u64, s: u32) -> Arc<RingCtx> {
        let f = FieldCtx::new(p, 1, None).unwrap();
        let xm1 = FieldPoly::new(vec![f.from_int(-1), FieldElement::ONE]);
        RingCtx::special(f, 4, &xm1, s).unwrap()
    }

    #[test]
    fn chain_parsing() {
        let (syms, strict) = parse_chain("t6<t5<=a1");
        assert_eq!(syms, ["t6", "t5", "a1"]);
        assert_eq!(strict, [true, false]);
    }

    #[test]
    fn type2_is_u3_power() {
        let r = ring(2, 2);
        let spec = TypeSpec::new(2, vec![0], None, vec![], vec![]).unwrap();
        let c = build_type(&r, &spec).unwrap();
        assert_eq!(c.basis(), Code::from_gens(&r, vec![r.u().pow(3)]).unwrap().basis());
        assert!(validate_constraints(&spec, 4, &Derived::default()));
    }

    #[test]
    fn type3_examples() {
        let r = ring(2, 2);
        let one = UnitOrZero::one(&r);
        let zero = UnitOrZero::zero(&r);
        for h in [one, zero] {
            let spec = TypeSpec::new(3, vec![1, 3], None, vec![0], vec![h]).unwrap();
            let d = derived_params(&r, &spec).unwrap();
            assert!(!validate_constraints(&spec, 4, &d));
        }
    }

    #[test]
    fn type6_tables_match_code() {
        let r = ring(2, 2);
        let spec = TypeSpec::new(6, vec![2], None, vec![0], vec![UnitOrZero::one(&r)]).unwrap();
        let c = build_type(&r, &spec).unwrap();
        let d = derived_params(&r, &spec).unwrap();
        assert_eq!(torsion_table(&r, &spec, &d).unwrap(), c.torsion_profile().unwrap());
        assert_eq!(card_table(&r, &spec, &d).unwrap(), c.card_exponent());
        assert_eq!(card_table_as_printed(&r, &spec, &d).unwrap(), None);
        assert_eq!(c.type_signature().unwrap(), expected_signature(&spec));
    }

    #[test]
    fn trivial_ideals() {
        let r = ring(3, 1);
        let d = Derived::default();
        assert_eq!(card_table(&r, &TypeSpec::unit_ideal(), &d).unwrap(), 12);
        assert_eq!(card_table(&r, &TypeSpec::zero_ideal(), &d).unwrap(), 0);
        assert!(build_type(&r, &TypeSpec::zero_ideal()).unwrap().is_zero());
        assert_eq!(expected_signature(&TypeSpec::unit_ideal()), vec![0]);
    }

    #[test]
    fn bad_shapes_rejected() {
        assert!(TypeSpec::new(3, vec![1], None, vec![0], vec![]).is_err());
        assert!(TypeSpec::new(17, vec![], None, vec![], vec![]).is_err());
    }
}
