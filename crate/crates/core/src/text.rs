//! Canonical text for field elements, polynomials and ring elements.
//!
//! Terms are ordered by ascending power of `u`, then descending power of
//! `x`; the output parses back with [`crate::cli::parse_poly`].

use crate::algebra::{FieldCtx, FieldElement, FieldPoly, RtPoly};
use crate::quotient::QuotElem;

fn power(var: &str, e: usize) -> Option<String> {
    match e {
        0 => None,
        1 => Some(var.to_string()),
        _ => Some(format!("{var}^{e}")),
    }
}

/// A field element as a polynomial in the generator `a`.
pub fn field_element(f: &FieldCtx, c: FieldElement) -> String {
    let coords = f.coords(c);
    let terms: Vec<String> = (0..coords.len())
        .rev()
        .filter(|&i| coords[i] != 0)
        .map(|i| monomial(coords[i].to_string(), &[power("a", i)]))
        .collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

fn monomial(coef: String, vars: &[Option<String>]) -> String {
    let vars: Vec<&String> = vars.iter().flatten().collect();
    if vars.is_empty() {
        return coef;
    }
    let mut parts = Vec::new();
    if coef != "1" {
        parts.push(if coef.contains('+') { format!("({coef})") } else { coef });
    }
    parts.extend(vars.iter().map(|v| v.to_string()));
    parts.join("*")
}

/// Terms `(u-level, x-degree, coefficient)` in printing order.
fn join_terms(f: &FieldCtx, terms: impl Iterator<Item = (usize, usize, FieldElement)>) -> String {
    let out: Vec<String> = terms
        .filter(|(_, _, c)| !c.is_zero())
        .map(|(l, k, c)| monomial(field_element(f, c), &[power("u", l), power("x", k)]))
        .collect();
    if out.is_empty() {
        "0".into()
    } else {
        out.join("+")
    }
}

pub fn field_poly(f: &FieldCtx, p: &FieldPoly) -> String {
    let c = p.coeffs();
    join_terms(f, (0..c.len()).rev().map(|k| (0, k, c[k])))
}

pub fn rt_poly(f: &FieldCtx, p: &RtPoly) -> String {
    let c = p.coeffs();
    join_terms(f, (0..p.t()).flat_map(|l| (0..c.len()).rev().map(move |k| (l, k, c[k].part(l)))))
}

pub fn quot_elem(e: &QuotElem) -> String {
    let ctx = e.ctx();
    let (n, c) = (ctx.n(), e.coeffs());
    join_terms(ctx.field(), (0..ctx.t()).flat_map(|l| (0..n).rev().map(move |k| (l, k, c[l * n + k]))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_elements() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let a = f4.generator();
        assert_eq!(field_element(&f4, a), "a");
        assert_eq!(field_element(&f4, f4.add(a, FieldElement::ONE)), "a+1");
        let f3 = FieldCtx::new(3, 1, None).unwrap();
        assert_eq!(field_element(&f3, f3.from_int(-1)), "2");
    }

    #[test]
    fn polynomials() {
        let f4 = FieldCtx::new(2, 2, None).unwrap();
        let a1 = f4.add(f4.generator(), FieldElement::ONE);
        let p = FieldPoly::new(vec![FieldElement::ONE, a1, FieldElement::ZERO, FieldElement::ONE]);
        assert_eq!(field_poly(&f4, &p), "x^3+(a+1)*x+1");
        assert_eq!(field_poly(&f4, &FieldPoly::zero()), "0");
    }
}
