//! Brute force on small rings: every ideal, censuses of their invariants,
//! and sweeps comparing the closed forms for `L` with direct search.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use serde::Serialize;

use crate::algebra::FieldPoly;
use crate::classify::{
    l_prop41, l_prop42, l_prop43, l_prop44, Evaluation, ParamCase41, ParamCase42, ParamCase43, ParamCase44,
    UnitOrZero,
};
use crate::code::Code;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::linalg::RowSpace;
use crate::quotient::{QuotElem, RingCtx};
use crate::text;

/// Largest ring (in elements) enumerated unless overridden.
pub const DEFAULT_CAP: u128 = 1 << 16;

/// Environment variable overriding [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "CHAINRING_CAP";

/// The enumeration cap from `CHAINRING_CAP`, or [`DEFAULT_CAP`] when unset.
pub fn cap_from_env() -> Result<u128> {
    match std::env::var(CAP_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::Syntax { offset: 0, message: format!("{CAP_ENV}={v}") }),
        Err(_) => Ok(DEFAULT_CAP),
    }
}

fn check_cap(ctx: &RingCtx, cap: u128) -> Result<u128> {
    let size = ctx.size().unwrap_or(u128::MAX);
    if size > cap {
        return Err(Error::CapExceeded { required: size, cap });
    }
    Ok(size)
}

/// Every ideal of `ctx`, ordered by rank and then by basis.
///
/// Principal ideals of all ring elements are closed under sums until no new
/// ideal appears.
pub fn enumerate_ideals(ctx: &Arc<RingCtx>, cap: u128, exec: Exec) -> Result<Vec<Code>> {
    let size = check_cap(ctx, cap)? as usize;
    let f = ctx.field();
    let principal = exec.map_range(size, |i| {
        Code::from_gens(ctx, vec![ctx.element_at(i as u128)]).map(Code::into_basis)
    });
    let mut seen: HashSet<RowSpace> = HashSet::new();
    let mut all: Vec<RowSpace> = Vec::new();
    for space in principal {
        let space = space?;
        if seen.insert(space.clone()) {
            all.push(space);
        }
    }
    let mut frontier = all.clone();
    while !frontier.is_empty() {
        let known = &all;
        let seen_ref = &seen;
        let found = exec.map(&frontier, |a| {
            let mut local: Vec<RowSpace> = Vec::new();
            let mut local_seen: HashSet<RowSpace> = HashSet::new();
            for b in known {
                let s = a.sum(f, b);
                if !seen_ref.contains(&s) && local_seen.insert(s.clone()) {
                    local.push(s);
                }
            }
            local
        });
        frontier = Vec::new();
        for s in found.into_iter().flatten() {
            if seen.insert(s.clone()) {
                frontier.push(s.clone());
                all.push(s);
            }
        }
    }
    all.sort_by(|a, b| (a.rank(), a).cmp(&(b.rank(), b)));
    all.into_iter().map(|s| Code::from_space(ctx, s)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub ideal: usize,
    pub property: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub ring: String,
    pub ideal_count: usize,
    /// Ideals per type signature, written `{0,2}`; empty without the
    /// special case.
    pub signatures: BTreeMap<String, usize>,
    pub distinct_signatures: usize,
    /// Distinct types when `<0>` and `<1>` count as one.
    pub types_trivial_merged: usize,
    pub violations: Vec<Violation>,
}

impl CensusReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn signature_key(levels: &[usize]) -> String {
    let inner: Vec<String> = levels.iter().map(|l| l.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Properties that fail for `c`, by name.
pub fn check_ideal(c: &Code) -> Result<Vec<&'static str>> {
    let ctx = c.ctx();
    let t = ctx.t();
    let mut bad = Vec::new();
    let tors: Vec<Code> = (0..t).map(|i| c.torsion(i)).collect::<Result<_>>()?;
    let m = ctx.field().m();
    if c.card_exponent() != m * tors.iter().map(Code::rank).sum::<usize>() {
        bad.push("torsion_product");
    }
    for w in tors.windows(2) {
        if !w[0].is_subcode_of(&w[1])? {
            bad.push("torsion_chain");
            break;
        }
    }
    let u = ctx.u();
    let (lifts, rest) = c.decompose(&u)?;
    if Code::from_gens(ctx, lifts)?.sum(&rest)? != *c {
        bad.push("decompose");
    }
    if let Some(sp) = ctx.special_data() {
        let profile = c.torsion_profile()?;
        if !profile.is_monotone(sp.ps) {
            bad.push("monotone");
        }
        if !c.is_trivial() {
            let gens = c.extract_canonical()?;
            if Code::from_gens(ctx, gens.clone())? != *c {
                bad.push("canonical_roundtrip");
            }
            if !canonical_shape(ctx, &gens, &profile.0)? {
                bad.push("canonical_shape");
            }
        }
    }
    Ok(bad)
}

/// At most `t` generators `u^i f^{T_i} + u^{i+1} g_i` with increasing `i`.
fn canonical_shape(ctx: &Arc<RingCtx>, gens: &[QuotElem], profile: &[usize]) -> Result<bool> {
    let sp = ctx.require_special()?;
    let f = ctx.field();
    if gens.len() > ctx.t() {
        return Ok(false);
    }
    let mut last = None;
    for g in gens {
        let i = g.u_valuation();
        if i >= ctx.t() || last.is_some_and(|l| l >= i) {
            return Ok(false);
        }
        let lead = f.poly_rem(&f.poly_pow(&sp.f, profile[i]), ctx.omega0())?;
        if g.level(i) != lead {
            return Ok(false);
        }
        last = Some(i);
    }
    Ok(true)
}

pub fn census(ctx: &Arc<RingCtx>, cap: u128, exec: Exec) -> Result<CensusReport> {
    let ideals = enumerate_ideals(ctx, cap, exec)?;
    let checked = exec.map(&ideals, |c| {
        let bad = check_ideal(c)?;
        let sig = match ctx.special_data() {
            Some(_) => Some(c.type_signature()?),
            None => None,
        };
        Ok((bad, sig))
    });
    let mut signatures = BTreeMap::new();
    let mut nontrivial = HashSet::new();
    let mut violations = Vec::new();
    for (id, (c, r)) in ideals.iter().zip(checked).enumerate() {
        let (bad, sig): (Vec<&str>, Option<Vec<usize>>) = r?;
        violations.extend(bad.into_iter().map(|p| Violation { ideal: id, property: p.to_string() }));
        if let Some(sig) = sig {
            if !c.is_trivial() {
                nontrivial.insert(sig.clone());
            }
            *signatures.entry(signature_key(&sig)).or_insert(0) += 1;
        }
    }
    let has_trivial = ideals.iter().any(Code::is_trivial);
    Ok(CensusReport {
        ring: text::rt_poly(ctx.field(), ctx.omega()),
        ideal_count: ideals.len(),
        distinct_signatures: signatures.len(),
        types_trivial_merged: if signatures.is_empty() { 0 } else { nontrivial.len() + usize::from(has_trivial) },
        signatures,
        violations,
    })
}

/// An element `u^{t-1-j} f^L + u^{t-j} g` of `c`, if one exists.
pub fn smallest_witness(c: &Code, j: usize, l: usize) -> Result<Option<QuotElem>> {
    let sp = c.ctx().require_special()?;
    let t = c.ctx().t();
    if j >= t {
        return Err(Error::BadIndex { index: j, bound: t });
    }
    let f = c.ctx().field();
    c.element_with_leading(t - 1 - j, &f.poly_pow(&sp.f, l.min(sp.ps)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Prop {
    #[serde(rename = "4.1")]
    P41,
    #[serde(rename = "4.2")]
    P42,
    #[serde(rename = "4.3")]
    P43,
    #[serde(rename = "4.4")]
    P44,
}

impl Prop {
    pub fn parse(s: &str) -> Option<Prop> {
        Some(match s {
            "4.1" => Prop::P41,
            "4.2" => Prop::P42,
            "4.3" => Prop::P43,
            "4.4" => Prop::P44,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Prop::P41 => "4.1",
            Prop::P42 => "4.2",
            Prop::P43 => "4.3",
            Prop::P44 => "4.4",
        }
    }

    fn exponent_names(self) -> &'static [&'static str] {
        match self {
            Prop::P41 => &["a", "tau"],
            Prop::P42 => &["a", "t1", "t2"],
            Prop::P43 => &["a1", "a2", "t1", "t2", "t3"],
            Prop::P44 => &["b", "t1", "t2", "t3"],
        }
    }
}

/// Sweep points draw each `h` from zero and the units whose f-adic
/// expansion stops before `f^h_support`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SweepGrid {
    pub h_support: usize,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid { h_support: 2 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub exponents: Vec<usize>,
    pub h: Vec<String>,
    pub closed_form: Option<usize>,
    pub oracle: usize,
    pub matched: bool,
    pub branch: Option<usize>,
    pub branches_matched: Vec<usize>,
    pub error: Option<String>,
    /// A witness exists at the oracle value and none one below it.
    pub certified: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BranchTally {
    pub agree: usize,
    pub disagree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub prop: Prop,
    pub p: u32,
    pub m: usize,
    pub s: u32,
    pub grid: SweepGrid,
    pub exponent_names: Vec<String>,
    pub total: usize,
    pub mismatches: usize,
    pub uncertified: usize,
    /// Keyed by branch number; `0` collects points where no branch
    /// produced a value.
    pub branches: BTreeMap<usize, BranchTally>,
    pub entries: Vec<SweepEntry>,
}

impl SweepReport {
    pub fn all_matched(&self) -> bool {
        self.mismatches == 0
    }
}

struct Point {
    exps: Vec<usize>,
    hs: Vec<usize>,
}

/// Exponent `t_i` ranges over `0..bound` when `h_i` is nonzero and is fixed
/// at 0 otherwise.
fn tail_ranges(hs: &[usize], bound: usize, ordered: bool) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &h in hs {
        let mut next = Vec::new();
        for prefix in &out {
            if h == 0 {
                let mut v = prefix.clone();
                v.push(0);
                next.push(v);
                continue;
            }
            for x in 0..bound {
                // ordered tails decrease across the nonzero entries
                let prev = prefix.iter().zip(hs).filter(|(_, &hh)| hh != 0).map(|(&v, _)| v).next_back();
                if ordered && prev.is_some_and(|p| x >= p) {
                    continue;
                }
                let mut v = prefix.clone();
                v.push(x);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

fn grid_points(prop: Prop, ps: usize, nh: usize) -> Vec<Point> {
    let mut pts = Vec::new();
    let hcount = match prop {
        Prop::P41 => 1,
        Prop::P42 => 2,
        Prop::P43 | Prop::P44 => 3,
    };
    let mut hcombos: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..hcount {
        hcombos = hcombos.into_iter().flat_map(|c| (0..nh).map(move |h| [c.clone(), vec![h]].concat())).collect();
    }
    let heads: Vec<Vec<usize>> = match prop {
        Prop::P43 => (0..ps).flat_map(|a1| (a1 + 1..ps).map(move |a2| vec![a1, a2])).collect(),
        _ => (0..ps).map(|a| vec![a]).collect(),
    };
    for head in &heads {
        for hs in &hcombos {
            let bound = head[0];
            let tails = match prop {
                Prop::P41 | Prop::P42 | Prop::P44 => tail_ranges(hs, bound, true),
                // h1 stands alone; only t3 < t2 is imposed
                Prop::P43 => tail_ranges(&hs[..1], bound, false)
                    .into_iter()
                    .flat_map(|t1| tail_ranges(&hs[1..], bound, true).into_iter().map(move |r| [t1.clone(), r].concat()))
                    .collect(),
            };
            for tail in tails {
                pts.push(Point { exps: [head.clone(), tail].concat(), hs: hs.clone() });
            }
        }
    }
    pts.sort_by(|a, b| (&a.exps, &a.hs).cmp(&(&b.exps, &b.hs)));
    pts
}

fn sweep_generators(ctx: &Arc<RingCtx>, prop: Prop, e: &[usize], h: &[&UnitOrZero]) -> Result<Vec<QuotElem>> {
    let one = FieldPoly::one();
    let term = |l: usize, exp: usize, hh: Option<&UnitOrZero>| match hh {
        Some(h) => ctx.u_f_term(l, exp, &h.elem().level(0)),
        None => ctx.u_f_term(l, exp, &one),
    };
    let sum = |ts: Vec<Result<QuotElem>>| -> Result<QuotElem> {
        ts.into_iter().try_fold(ctx.zero(), |acc, t| acc.add(&t?))
    };
    Ok(match prop {
        Prop::P41 => vec![sum(vec![term(2, e[0], None), term(3, e[1], Some(h[0]))])?],
        Prop::P42 => vec![sum(vec![term(1, e[0], None), term(2, e[1], Some(h[0])), term(3, e[2], Some(h[1]))])?],
        Prop::P43 => vec![
            sum(vec![term(2, e[0], None), term(3, e[2], Some(h[0]))])?,
            sum(vec![term(1, e[1], None), term(2, e[3], Some(h[1])), term(3, e[4], Some(h[2]))])?,
        ],
        Prop::P44 => vec![sum(vec![
            term(0, e[0], None),
            term(1, e[1], Some(h[0])),
            term(2, e[2], Some(h[1])),
            term(3, e[3], Some(h[2])),
        ])?],
    })
}

fn closed_form(prop: Prop, e: &[usize], h: &[&UnitOrZero]) -> Result<Evaluation> {
    match prop {
        Prop::P41 => l_prop41(&ParamCase41 { a: e[0], tau: e[1], h: h[0].clone() }),
        Prop::P42 => l_prop42(&ParamCase42 { a: e[0], t1: e[1], t2: e[2], h1: h[0].clone(), h2: h[1].clone() }),
        Prop::P43 => l_prop43(&ParamCase43 {
            a1: e[0],
            a2: e[1],
            t1: e[2],
            t2: e[3],
            t3: e[4],
            h1: h[0].clone(),
            h2: h[1].clone(),
            h3: h[2].clone(),
        }),
        Prop::P44 => l_prop44(&ParamCase44 {
            b: e[0],
            t1: e[1],
            t2: e[2],
            t3: e[3],
            h1: h[0].clone(),
            h2: h[1].clone(),
            h3: h[2].clone(),
        }),
    }
}

fn certified(c: &Code, l: usize) -> Result<bool> {
    let found = smallest_witness(c, 0, l)?.is_some();
    let below = if l == 0 { false } else { smallest_witness(c, 0, l - 1)?.is_some() };
    Ok(found && !below)
}

/// Compares the closed form for `L` with direct search over every
/// admissible point of the grid. Entries are sorted by case tuple.
pub fn param_sweep(prop: Prop, ctx: &Arc<RingCtx>, grid: SweepGrid, exec: Exec) -> Result<SweepReport> {
    let sp = ctx.require_special()?.clone();
    if ctx.t() != 4 {
        return Err(Error::ConstraintViolation(format!("parameter sweeps need t = 4, not {}", ctx.t())));
    }
    let hs = UnitOrZero::enumerate(ctx, grid.h_support)?;
    let points = grid_points(prop, sp.ps, hs.len());
    let entries = exec.map(&points, |pt| -> Result<SweepEntry> {
        let h: Vec<&UnitOrZero> = pt.hs.iter().map(|&i| &hs[i]).collect();
        let code = Code::from_gens(ctx, sweep_generators(ctx, prop, &pt.exps, &h)?)?;
        let oracle = code.smallest_l(0)?;
        let certified = certified(&code, oracle)?;
        let (closed_form, branch, branches_matched, error) = match closed_form(prop, &pt.exps, &h) {
            Ok(ev) => (Some(ev.value), Some(ev.branch), ev.matched, None),
            Err(Error::AmbiguousBranch { candidates }) => {
                (None, None, candidates.clone(), Some(Error::AmbiguousBranch { candidates }.to_string()))
            }
            Err(e) => (None, None, Vec::new(), Some(e.to_string())),
        };
        Ok(SweepEntry {
            exponents: pt.exps.clone(),
            h: h.iter().map(|x| text::quot_elem(x.elem())).collect(),
            matched: closed_form == Some(oracle),
            closed_form,
            oracle,
            branch,
            branches_matched,
            error,
            certified,
        })
    });
    let entries: Vec<SweepEntry> = entries.into_iter().collect::<Result<_>>()?;
    let mut branches: BTreeMap<usize, BranchTally> = BTreeMap::new();
    for e in &entries {
        let tally = branches.entry(e.branch.unwrap_or(0)).or_default();
        if e.matched {
            tally.agree += 1;
        } else {
            tally.disagree += 1;
        }
    }
    Ok(SweepReport {
        prop,
        p: ctx.field().p(),
        m: ctx.field().m(),
        s: sp.s,
        grid,
        exponent_names: prop.exponent_names().iter().map(|s| s.to_string()).collect(),
        total: entries.len(),
        mismatches: entries.iter().filter(|e| !e.matched).count(),
        uncertified: entries.iter().filter(|e| !e.certified).count(),
        branches,
        entries,
    })
}
