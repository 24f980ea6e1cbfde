//! Closed-form values of the smallest `L` with `u^3 f^L` in a given ideal.
//!
//! Tables are evaluated row by row in printed order. Valuations are taken in
//! R^{1,ω} with `val_f(0) = p^s`.

use std::cell::Cell;
use std::sync::Arc;

use serde::Serialize;

use super::UnitOrZero;
use crate::algebra::FieldPoly;
use crate::error::{Error, Result};
use crate::quotient::{QuotElem, RingCtx};

#[derive(Clone, Debug)]
pub struct ParamCase41 {
    pub a: usize,
    pub tau: usize,
    pub h: UnitOrZero,
}

#[derive(Clone, Debug)]
pub struct ParamCase42 {
    pub a: usize,
    pub t1: usize,
    pub t2: usize,
    pub h1: UnitOrZero,
    pub h2: UnitOrZero,
}

#[derive(Clone, Debug)]
pub struct ParamCase43 {
    pub a1: usize,
    pub a2: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub h1: UnitOrZero,
    pub h2: UnitOrZero,
    pub h3: UnitOrZero,
}

#[derive(Clone, Debug)]
pub struct ParamCase44 {
    pub b: usize,
    pub t1: usize,
    pub t2: usize,
    pub t3: usize,
    pub h1: UnitOrZero,
    pub h2: UnitOrZero,
    pub h3: UnitOrZero,
}

/// Value of a table together with the rows whose conditions held. `branch`
/// is the first of them (1-based).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Evaluation {
    pub value: usize,
    pub branch: usize,
    pub matched: Vec<usize>,
}

/// `(sign, f-exponent, [(h index, power)])`
type Term<'a> = (i64, i64, &'a [(usize, i32)]);

struct Ev {
    ring: Arc<RingCtx>,
    ps: i64,
    // h[1..=3] from the case; h[4..=7] derived unit parts
    h: Vec<Option<Result<QuotElem>>>,
    branch: Cell<usize>,
}

fn violation(msg: &str) -> Error {
    Error::ConstraintViolation(msg.to_string())
}

impl Ev {
    fn new(hs: [&UnitOrZero; 3]) -> Result<Ev> {
        let ring = hs[0].elem().ctx().clone();
        if hs.iter().any(|h| !h.elem().ctx().same(&ring)) {
            return Err(Error::ContextMismatch);
        }
        let ps = ring.require_special()?.ps as i64;
        let mut h = vec![None];
        h.extend(hs.iter().map(|x| Some(Ok(x.elem().clone()))));
        h.resize(8, None);
        Ok(Ev { ring, ps, h, branch: Cell::new(0) })
    }

    fn nonzero(&self, i: usize) -> bool {
        matches!(&self.h[i], Some(Ok(e)) if !e.is_zero())
    }

    fn neg_exp(&self, exponent: i64) -> Error {
        Error::NegativeExponent { branch: self.branch.get(), exponent }
    }

    fn h_pow(&self, i: usize, k: i32) -> Result<QuotElem> {
        let base = match &self.h[i] {
            Some(Ok(e)) => e.clone(),
            Some(Err(Error::NegativeExponent { exponent, .. })) => return Err(self.neg_exp(*exponent)),
            Some(Err(e)) => return Err(e.clone()),
            None => return Err(Error::DivisionByZero),
        };
        let base = if k < 0 { base.inverse()? } else { base };
        Ok(base.pow(k.unsigned_abs() as u64))
    }

    fn term(&self, (sign, exp, hs): Term) -> Result<QuotElem> {
        let mut acc = self.ring.one();
        for &(i, k) in hs {
            acc = acc.mul(&self.h_pow(i, k)?)?;
            if acc.is_zero() {
                return Ok(acc);
            }
        }
        if exp < 0 {
            return Err(self.neg_exp(exp));
        }
        if exp >= self.ps {
            return Ok(self.ring.zero());
        }
        let fe = self.ring.u_f_term(0, exp as usize, &FieldPoly::one())?;
        let v = acc.mul(&fe)?;
        Ok(if sign < 0 { v.neg() } else { v })
    }

    fn sum(&self, terms: &[Term]) -> Result<QuotElem> {
        let mut acc = self.ring.zero();
        for &t in terms {
            acc = acc.add(&self.term(t)?)?;
        }
        Ok(acc)
    }

    fn v(&self, terms: &[Term]) -> Result<i64> {
        Ok(self.sum(terms)?.val_f()? as i64)
    }

    fn eq(&self, lhs: Term, rhs: Term) -> Result<bool> {
        Ok(self.term(lhs)? == self.term(rhs)?)
    }

    /// Stores the unit part of a nonzero expression as `h[slot]`.
    fn define_unit(&mut self, slot: usize, terms: &[Term]) {
        let unit = self.sum(terms).and_then(|e| e.unit_part());
        self.h[slot] = Some(unit);
    }
}

type Cond = Box<dyn Fn(&Ev) -> Result<bool>>;
type Value = Box<dyn Fn(&Ev) -> Result<Vec<i64>>>;

fn select(ev: &Ev, rows: Vec<(Cond, Value)>) -> Result<Evaluation> {
    let mut matched = Vec::new();
    let mut values: Vec<(usize, Result<i64>)> = Vec::new();
    for (i, (cond, value)) in rows.iter().enumerate() {
        ev.branch.set(i + 1);
        if cond(ev)? {
            matched.push(i + 1);
            let v = value(ev).and_then(|vs| {
                let m = vs.into_iter().min().expect("nonempty minimum");
                if m < 0 {
                    Err(ev.neg_exp(m))
                } else {
                    Ok(m)
                }
            });
            values.push((i + 1, v));
        }
    }
    let oks: Vec<(usize, i64)> = values.iter().filter_map(|(b, v)| v.as_ref().ok().map(|&v| (*b, v))).collect();
    match oks.first() {
        None => match values.into_iter().next() {
            Some((_, Err(e))) => Err(e),
            _ => Err(Error::AmbiguousBranch { candidates: matched }),
        },
        Some(&(branch, value)) if oks.iter().all(|&(_, v)| v == value) => {
            Ok(Evaluation { value: value as usize, branch, matched })
        }
        Some(_) => Err(Error::AmbiguousBranch { candidates: matched }),
    }
}

fn row<C, V>(cond: C, value: V) -> (Cond, Value)
where
    C: Fn(&Ev) -> Result<bool> + 'static,
    V: Fn(&Ev) -> Result<Vec<i64>> + 'static,
{
    (Box::new(cond), Box::new(value))
}

fn pattern(ev: &Ev, want: [bool; 3]) -> bool {
    (1..=3).all(|i| ev.nonzero(i) == want[i - 1])
}

/// `L` for `<u^2 f^a + u^3 f^tau h>`.
pub fn l_prop41(case: &ParamCase41) -> Result<Evaluation> {
    let ev = Ev::new([&case.h, &case.h, &case.h])?;
    let (a, tau, ps) = (case.a as i64, case.tau as i64, ev.ps);
    if a > ps - 1 || (!case.h.is_zero() && tau >= a) {
        return Err(violation("requires tau < a <= p^s - 1"));
    }
    let h = !case.h.is_zero();
    select(
        &ev,
        vec![row(move |_| Ok(!h), move |_| Ok(vec![a])), row(move |_| Ok(h), move |_| Ok(vec![a, ps - a + tau]))],
    )
}

/// `L` for `<u f^a + u^2 f^{t1} h1 + u^3 f^{t2} h2>`.
pub fn l_prop42(case: &ParamCase42) -> Result<Evaluation> {
    let ev = Ev::new([&case.h1, &case.h2, &case.h2])?;
    let (a, t1, t2, ps) = (case.a as i64, case.t1 as i64, case.t2 as i64, ev.ps);
    let (n1, n2) = (!case.h1.is_zero(), !case.h2.is_zero());
    if a > ps - 1 || (n1 && t1 >= a) || (n2 && t2 >= a) || (n1 && n2 && t2 >= t1) {
        return Err(violation("requires t2 < t1 < a <= p^s - 1"));
    }
    let low = a <= ps - a + t1;
    let high = a >= ps - a + t1;
    let rows = vec![
        row(move |_| Ok(!n1 && !n2), move |_| Ok(vec![a])),
        row(move |_| Ok(!n1 && n2), move |_| Ok(vec![a, ps - a + t2])),
        row(move |_| Ok(n1 && !n2 && low), move |_| Ok(vec![a, ps - 2 * (a - t1)])),
        row(move |_| Ok(n1 && !n2 && high), move |_| Ok(vec![t1])),
        row(move |_| Ok(n1 && n2 && low), move |ev| {
            let beta1 = ev.v(&[(1, ps - a + t2, &[(2, 1)]), (-1, ps - 2 * a + 2 * t1, &[(1, 2)])])?;
            Ok(vec![a, ps - a + t1, beta1])
        }),
        row(move |_| Ok(n1 && n2 && high), move |ev| {
            let beta2 = ev.v(&[(1, t1, &[(1, 1)]), (-1, a + t2 - t1, &[(2, 1), (1, -1)])])?;
            Ok(vec![a, ps + t2 - t1, beta2])
        }),
    ];
    select(&ev, rows)
}

/// `L` for `<u^2 f^{a1} + u^3 f^{t1} h1, u f^{a2} + u^2 f^{t2} h2 + u^3 f^{t3} h3>`.
/// The first row's printed value `a` is read as `a1`.
pub fn l_prop43(case: &ParamCase43) -> Result<Evaluation> {
    let ev = Ev::new([&case.h1, &case.h2, &case.h3])?;
    let (a1, a2, ps) = (case.a1 as i64, case.a2 as i64, ev.ps);
    let (t1, t2, t3) = (case.t1 as i64, case.t2 as i64, case.t3 as i64);
    let (n1, n2, n3) = (!case.h1.is_zero(), !case.h2.is_zero(), !case.h3.is_zero());
    if a2 > ps - 1 || a1 >= a2 || (n1 && t1 >= a1) || (n2 && t2 >= a1) || (n3 && t3 >= a1) || (n2 && n3 && t3 >= t2)
    {
        return Err(violation("requires t1 < a1 < a2 <= p^s - 1 and t3 < t2 < a1"));
    }
    let low = a1 <= ps - a2 + t2;
    let high = a1 >= ps - a2 + t2;
    let beta1 = move |ev: &Ev| ev.v(&[(1, t2, &[(2, 1)]), (-1, a2 + t3 - t2, &[(3, 1), (2, -1)])]);
    let beta2 = move |ev: &Ev| ev.v(&[(1, t2, &[(2, 1)]), (-1, a2 - a1 + t1, &[(1, 1)])]);
    let beta4 =
        move |ev: &Ev| ev.v(&[(1, ps - a2 + t3, &[(3, 1)]), (-1, ps - a1 - a2 + t1 + t2, &[(1, 1), (2, 1)])]);
    let beta5 = move |ev: &Ev| ev.v(&[(1, t1, &[(1, 1)]), (1, a1 + t3 - t2, &[(3, 1), (2, -1)])]);
    let beta6 = move |ev: &Ev| ev.v(&[(1, t2, &[(2, 1)]), (1, a2 + t3 - t2, &[(3, 1), (2, -1)])]);
    let rows = vec![
        row(move |ev| Ok(pattern(ev, [false, false, false])), move |_| Ok(vec![a1])),
        row(move |ev| Ok(pattern(ev, [true, false, false])), move |_| Ok(vec![a1, a2 - a1 + t1])),
        row(move |ev| Ok(pattern(ev, [false, true, false])), move |_| Ok(vec![t2])),
        row(move |ev| Ok(pattern(ev, [false, false, true])), move |_| Ok(vec![a1, ps - a2 + t3])),
        row(move |ev| Ok(pattern(ev, [false, true, true]) && low), move |_| Ok(vec![t2, ps - a2 + t3])),
        row(move |ev| Ok(pattern(ev, [false, true, true]) && high), move |ev| {
            Ok(vec![a1, a1 + t3 - t2, beta1(ev)?])
        }),
        row(move |ev| Ok(pattern(ev, [true, true, false]) && low), move |ev| {
            Ok(vec![a1, ps - a1 - a2 + t1 + t2, beta2(ev)?])
        }),
        row(move |ev| Ok(pattern(ev, [true, true, false]) && high), move |_| Ok(vec![t1, t2])),
        row(move |ev| Ok(pattern(ev, [true, false, true])), move |_| Ok(vec![a1, a2 - a1 + t1, ps - a2 + t3])),
        row(move |ev| Ok(pattern(ev, [true, true, true]) && low), move |ev| {
            Ok(vec![a1, ps - a1 + t1, beta2(ev)?, beta4(ev)?])
        }),
        row(move |ev| Ok(pattern(ev, [true, true, true]) && high), move |ev| {
            Ok(vec![a1, ps + t3 - t2, beta5(ev)?, beta6(ev)?])
        }),
    ];
    select(&ev, rows)
}

/// `L` for `<f^b + u f^{t1} h1 + u^2 f^{t2} h2 + u^3 f^{t3} h3>`.
///
/// Printed symbols `m_1`, `m_2`, `b_1` and `g_2` are read as `t1`, `t2`, `b`
/// and `h2`, and `p^s + h_2 - t_1` as `p^s + t2 - t1`.
pub fn l_prop44(case: &ParamCase44) -> Result<Evaluation> {
    let mut ev = Ev::new([&case.h1, &case.h2, &case.h3])?;
    let (b, ps) = (case.b as i64, ev.ps);
    let (t1, t2, t3) = (case.t1 as i64, case.t2 as i64, case.t3 as i64);
    let (n1, n2, n3) = (!case.h1.is_zero(), !case.h2.is_zero(), !case.h3.is_zero());
    if b > ps - 1
        || (n1 && t1 >= b)
        || (n2 && t2 >= b)
        || (n3 && t3 >= b)
        || (n1 && n2 && t2 >= t1)
        || (n2 && n3 && t3 >= t2)
        || (n1 && n3 && t3 >= t1)
    {
        return Err(violation("requires t3 < t2 < t1 < b <= p^s - 1"));
    }
    // f^{beta1} h4 = f^{beta9} h6 and f^{alpha1} h5 = f^{alpha2} h7
    let e1: [Term; 2] = [(1, ps - b + t2, &[(2, 1)]), (-1, ps - 2 * b + 2 * t1, &[(1, 2)])];
    let e2: [Term; 2] = [(1, t1, &[(1, 1)]), (-1, b + t2 - t1, &[(2, 1), (1, -1)])];
    if n1 && n2 {
        ev.define_unit(4, &e1);
        ev.define_unit(6, &e1);
        ev.define_unit(5, &e2);
        ev.define_unit(7, &e2);
    }

    let c1 = b <= ps - (b - t1);
    let c1r = b >= ps - (b - t1);
    let c2 = b <= ps - 2 * (b - t1);
    let c2r = b >= ps - 2 * (b - t1);
    let e1_holds = move |ev: &Ev| ev.eq(e1[0], (1, ps - 2 * b + 2 * t1, &[(1, 2)]));
    let e2_holds = move |ev: &Ev| ev.eq(e2[0], (1, b + t2 - t1, &[(2, 1), (1, -1)]));
    let beta1 = move |ev: &Ev| ev.v(&e1);
    let alpha1 = move |ev: &Ev| ev.v(&e2);

    let rows = vec![
        // 1
        row(move |ev| Ok(pattern(ev, [false, false, false])), move |_| Ok(vec![b])),
        // 2
        row(move |ev| Ok(pattern(ev, [true, false, false]) && c1 && c2), move |_| Ok(vec![b, ps - 3 * (b - t1)])),
        // 3
        row(move |ev| Ok(pattern(ev, [true, false, false]) && c1 && c2r), move |_| Ok(vec![t1])),
        // 4
        row(move |ev| Ok(pattern(ev, [false, true, false])), move |_| Ok(vec![b, ps - b + t2])),
        // 5
        row(move |ev| Ok(pattern(ev, [false, false, true])), move |_| Ok(vec![b, ps - b + t3])),
        // 6
        row(move |ev| Ok(pattern(ev, [true, true, false]) && c1 && e1_holds(ev)?), move |ev| {
            Ok(vec![b, ps - 2 * b + t1 + t2, beta1(ev)?])
        }),
        // 7
        row(
            move |ev| Ok(pattern(ev, [true, true, false]) && c1 && !e1_holds(ev)? && beta1(ev)? <= b),
            move |ev| {
                let b1 = beta1(ev)?;
                let beta2 = ev.v(&[(1, t1, &[(1, 1)]), (1, ps - b + t1 + t2 - b1, &[(2, 1), (4, -1)])])?;
                let beta3 = ev.v(&[
                    (1, ps - b + t2, &[(2, 1)]),
                    (1, 2 * ps - 3 * b + 2 * t1 + t2 - b1, &[(1, 1), (2, 1), (4, -1)]),
                ])?;
                Ok(vec![b, 2 * ps - 2 * b + t1 + t2 - b1, beta2, beta3])
            },
        ),
        // 8
        row(
            move |ev| Ok(pattern(ev, [true, true, false]) && c1 && !e1_holds(ev)? && beta1(ev)? >= b),
            move |ev| {
                let b1 = beta1(ev)?;
                let beta4 = ev.v(&[(1, b1 - b + t1, &[(1, 1), (4, 1)]), (1, ps - 2 * b + t1 + t2, &[(2, 1)])])?;
                Ok(vec![b, beta4])
            },
        ),
        // 9
        row(move |ev| Ok(pattern(ev, [true, true, false]) && c1r && e2_holds(ev)?), move |_| Ok(vec![t2])),
        // 10
        row(
            move |ev| {
                Ok(pattern(ev, [true, true, false])
                    && c1r
                    && !e2_holds(ev)?
                    && b <= alpha1(ev)?
                    && b <= ps + t2 - t1)
            },
            move |ev| {
                let a1 = alpha1(ev)?;
                let beta5 = ev.v(&[(1, t2, &[(2, 1)]), (-1, t1 + a1 - b, &[(1, 1), (5, 1)])])?;
                Ok(vec![beta5, ps + t2 - b])
            },
        ),
        // 11
        row(
            move |ev| {
                let a1 = if pattern(ev, [true, true, false]) && c1r { alpha1(ev)? } else { 0 };
                Ok(pattern(ev, [true, true, false]) && c1r && !e2_holds(ev)? && a1 <= b && a1 <= ps + t2 - t1)
            },
            move |ev| {
                let a1 = alpha1(ev)?;
                let beta6 = ev.v(&[(1, t1, &[(1, 1)]), (-1, b - a1 + t2, &[(2, 1), (5, -1)])])?;
                Ok(vec![b, beta6, ps + 2 * t2 - t1 - a1])
            },
        ),
        // 12
        row(
            move |ev| {
                Ok(pattern(ev, [true, true, false])
                    && c1r
                    && !e2_holds(ev)?
                    && ps + t2 - t1 <= b
                    && ps + t2 - t1 <= alpha1(ev)?)
            },
            move |_| Ok(vec![t2]),
        ),
        // 13
        row(move |ev| Ok(pattern(ev, [true, false, true]) && c1 && c2), move |ev| {
            let beta7 = ev.v(&[(1, ps - 3 * b + 3 * t1, &[(1, 3)]), (1, ps - b + t3, &[(3, 1)])])?;
            Ok(vec![ps - 2 * (b - t1), beta7])
        }),
        // 14
        row(move |ev| Ok(pattern(ev, [true, false, true]) && c1 && c2r), move |ev| {
            let beta8 = ev.v(&[(1, t1, &[(1, 1)]), (1, 2 * b - 2 * t1 + t3, &[(3, 1), (1, -1)])])?;
            Ok(vec![b, ps - b - 2 * t1 + t3, beta8])
        }),
        // 15
        row(move |ev| Ok(pattern(ev, [true, false, true]) && c1r), move |ev| {
            let beta8 = ev.v(&[(1, t1, &[(1, 1)]), (1, 2 * b - 2 * t1 + t3, &[(3, 1), (1, -1)])])?;
            Ok(vec![b, ps + t3 - t1, beta8])
        }),
        // 16
        row(move |ev| Ok(pattern(ev, [false, true, true]) && b <= ps - (b - t2)), move |_| Ok(vec![b, ps - b + t3])),
        // 17
        row(move |ev| Ok(pattern(ev, [false, true, true]) && b >= ps - (b - t2)), move |_| {
            Ok(vec![b, ps - b + t2, b + t3 - t2])
        }),
        // 18
        row(move |ev| Ok(pattern(ev, [true, true, true]) && c1 && e1_holds(ev)?), move |ev| {
            let beta9 = beta1(ev)?;
            let beta10 = ev.v(&[(1, ps - b + t3, &[(3, 1)]), (-1, ps - 2 * b + t1 + t2, &[(1, 1), (2, 1)])])?;
            Ok(vec![b, beta9, beta10])
        }),
        // 19
        row(
            move |ev| Ok(pattern(ev, [true, true, true]) && c1 && !e1_holds(ev)? && b <= beta1(ev)?),
            move |ev| {
                let beta9 = beta1(ev)?;
                let beta11 = ev.v(&[
                    (1, ps - b + t3, &[(3, 1)]),
                    (-1, ps - 2 * b + t1 + t2, &[(1, 1), (2, 1)]),
                    (-1, beta9 + t1 - b, &[(1, 1), (6, 1)]),
                ])?;
                Ok(vec![ps - b + t1, beta9, beta11])
            },
        ),
        // 20
        row(
            move |ev| Ok(pattern(ev, [true, true, true]) && c1 && !e1_holds(ev)? && b >= beta1(ev)?),
            move |ev| {
                let beta9 = beta1(ev)?;
                let beta12 = ev.v(&[(1, t1, &[(1, 1)]), (-1, ps + t3 - beta9, &[(3, 1), (6, -1)])])?;
                let beta13 = ev.v(&[
                    (1, ps - b + t2, &[(2, 1)]),
                    (-1, 2 * ps - 2 * b + t1 + t3 - beta9, &[(1, 1), (3, 1), (6, -1)]),
                ])?;
                Ok(vec![b, ps - 2 * b + t1 + t2, 2 * ps - b + t3 - beta9, beta12, beta13])
            },
        ),
        // 21
        row(
            move |ev| Ok(pattern(ev, [true, true, true]) && c1r && e2_holds(ev)? && b <= ps + t2 - t1),
            move |ev| {
                let beta14 = ev.v(&[(1, ps + t3 - t1, &[(3, 1), (1, 1)]), (-1, ps + t2 - b, &[(2, 1)])])?;
                let beta15 = ev.v(&[(1, t2, &[(2, 1)]), (-1, b + t3 - t1, &[(3, 1), (1, -1)])])?;
                Ok(vec![ps - b + t1, beta14, beta15])
            },
        ),
        // 22
        row(
            move |ev| Ok(pattern(ev, [true, true, true]) && c1r && e2_holds(ev)? && b >= ps + t2 - t1),
            move |ev| {
                let beta15 = ev.v(&[(1, t2, &[(2, 1)]), (-1, b + t3 - t1, &[(3, 1), (1, -1)])])?;
                let beta16 = ev.v(&[(1, t1, &[(1, 1)]), (-1, b + t3 - t2, &[(3, 1), (2, -1)])])?;
                Ok(vec![ps + t3 - t2, beta15, beta16])
            },
        ),
        // 23
        row(
            move |ev| {
                Ok(pattern(ev, [true, true, true])
                    && c1r
                    && !e2_holds(ev)?
                    && b <= ps + t2 - t1
                    && b <= alpha1(ev)?)
            },
            move |ev| {
                let a2 = alpha1(ev)?;
                let beta17 = ev.v(&[
                    (1, t2, &[(2, 1)]),
                    (-1, b + t3 - t1, &[(3, 1), (1, -1)]),
                    (-1, a2 - b + t1, &[(1, 1), (7, 1)]),
                ])?;
                let beta18 = ev.v(&[(1, ps + t3 - t1, &[(3, 1), (1, -1)]), (-1, ps + t2 - b, &[(2, 1)])])?;
                Ok(vec![ps - b + t1, beta17, beta18])
            },
        ),
        // 24
        row(
            move |ev| {
                if !(pattern(ev, [true, true, true]) && c1r && !e2_holds(ev)?) {
                    return Ok(false);
                }
                let a2 = alpha1(ev)?;
                Ok(a2 <= ps + t2 - t1
                    && a2 <= b
                    && !ev.eq((1, t2, &[(2, 1)]), (1, b + t3 - t1, &[(3, 1), (1, -1)]))?)
            },
            move |ev| {
                let a2 = alpha1(ev)?;
                let beta19 = ev.v(&[
                    (1, t1, &[(1, 1)]),
                    (-1, b + t2 - a2, &[(7, -1), (2, 1)]),
                    (1, 2 * b + t3 - t1 - a2, &[(7, -1), (3, 1), (1, -1)]),
                ])?;
                let beta20 = ev.v(&[
                    (1, ps + t2 - a2, &[(7, -1), (2, 1)]),
                    (-1, ps - b + t3 - t1 - a2, &[(7, -1), (3, 1), (1, -1)]),
                ])?;
                let beta21 = ev.v(&[
                    (1, ps + b + t3 + t2 - 2 * t1, &[(2, 2), (1, -2), (7, -1)]),
                    (-1, ps + 2 * t2 - t1, &[(2, 2), (1, -1), (7, -1)]),
                    (1, ps + t3 - t1, &[(3, 1), (1, -1)]),
                ])?;
                Ok(vec![b, beta19, beta20, beta21])
            },
        ),
        // 25
        row(
            move |ev| {
                Ok(pattern(ev, [true, true, true])
                    && c1r
                    && !e2_holds(ev)?
                    && ps + t2 - t1 <= alpha1(ev)?
                    && ps + t2 - t1 <= b)
            },
            move |ev| {
                let a2 = alpha1(ev)?;
                let beta16 = ev.v(&[(1, t1, &[(1, 1)]), (-1, b + t3 - t2, &[(3, 1), (2, -1)])])?;
                let beta22 = ev.v(&[
                    (1, t2, &[(2, 1)]),
                    (-1, b + t3 - t1, &[(3, 1), (1, -1)]),
                    (1, a2 + t3 - t2, &[(3, 1), (2, -1), (7, 1)]),
                ])?;
                Ok(vec![b + t3 - t2, beta16, beta22])
            },
        ),
    ];
    select(&ev, rows)
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
    fn prop41_examples() {
        let r = ring(2, 2);
        let zero = UnitOrZero::zero(&r);
        let one = UnitOrZero::one(&r);
        assert_eq!(l_prop41(&ParamCase41 { a: 3, tau: 0, h: zero }).unwrap().value, 3);
        assert_eq!(l_prop41(&ParamCase41 { a: 3, tau: 1, h: one.clone() }).unwrap().value, 2);
        assert_eq!(l_prop41(&ParamCase41 { a: 1, tau: 0, h: one.clone() }).unwrap().value, 1);
        assert!(matches!(
            l_prop41(&ParamCase41 { a: 1, tau: 1, h: one }),
            Err(Error::ConstraintViolation(_))
        ));
    }

    #[test]
    fn prop42_examples() {
        let r = ring(2, 2);
        let zero = UnitOrZero::zero(&r);
        let one = UnitOrZero::one(&r);
        let c = |a, t1, t2, h1: &UnitOrZero, h2: &UnitOrZero| ParamCase42 { a, t1, t2, h1: h1.clone(), h2: h2.clone() };
        assert_eq!(l_prop42(&c(3, 0, 0, &zero, &zero)).unwrap().value, 3);
        let e = l_prop42(&c(3, 0, 0, &zero, &one)).unwrap();
        assert_eq!((e.value, e.branch), (1, 2));
        // a >= p^s - a + t1 with h2 = 0 gives t1
        let e = l_prop42(&c(3, 1, 0, &one, &zero)).unwrap();
        assert_eq!((e.value, e.branch), (1, 4));
        // on the boundary both rows apply and agree
        let e = l_prop42(&c(3, 2, 0, &one, &zero)).unwrap();
        assert_eq!((e.value, e.matched), (2, vec![3, 4]));
    }

    #[test]
    fn prop43_and_44_first_rows() {
        let r = ring(2, 2);
        let z = UnitOrZero::zero(&r);
        let one = UnitOrZero::one(&r);
        let c43 = ParamCase43 { a1: 1, a2: 3, t1: 0, t2: 0, t3: 0, h1: z.clone(), h2: z.clone(), h3: z.clone() };
        assert_eq!(l_prop43(&c43).unwrap(), Evaluation { value: 1, branch: 1, matched: vec![1] });
        let c44 = ParamCase44 { b: 3, t1: 0, t2: 0, t3: 0, h1: z.clone(), h2: z.clone(), h3: z.clone() };
        assert_eq!(l_prop44(&c44).unwrap().value, 3);
        let c44 = ParamCase44 { b: 3, t1: 0, t2: 1, t3: 0, h1: z.clone(), h2: one, h3: z };
        let e = l_prop44(&c44).unwrap();
        assert_eq!((e.value, e.branch), (2, 4));
    }
}
