use std::sync::Arc;

use proptest::prelude::*;

use polycyclic::algebra::{Degree, FieldCtx, FieldElement, FieldPoly, RtElement};
use polycyclic::cli::{parse_field_element, parse_field_poly, parse_poly};
use polycyclic::code::Code;
use polycyclic::constacyclic::{lambda0, SigmaMap};
use polycyclic::oracle::{enumerate_ideals, DEFAULT_CAP};
use polycyclic::quotient::{QuotElem, RingCtx};
use polycyclic::text;
use polycyclic::Exec;

fn special(p: u64, m: usize, t: usize, f: &str, s: u32) -> Arc<RingCtx> {
    let fc = FieldCtx::new(p, m, None).unwrap();
    let f = parse_field_poly(f, &fc).unwrap();
    RingCtx::special(fc, t, &f, s).unwrap()
}

fn fields() -> impl Strategy<Value = FieldCtx> {
    prop_oneof![Just((2, 1)), Just((2, 3)), Just((3, 1)), Just((3, 2)), Just((5, 2)), Just((7, 1))]
        .prop_map(|(p, m)| FieldCtx::new(p, m, None).unwrap())
}

fn field_with(n: usize) -> impl Strategy<Value = (FieldCtx, Vec<FieldElement>)> {
    fields().prop_flat_map(move |f| {
        let q = f.order();
        (Just(f.clone()), proptest::collection::vec(0..q, n))
            .prop_map(|(f, v)| (f.clone(), v.into_iter().map(|i| f.element(i).unwrap()).collect()))
    })
}

/// Small special rings, all at most 2^12 elements.
fn rings() -> impl Strategy<Value = Arc<RingCtx>> {
    prop_oneof![
        Just((2, 1, 2, "x-1", 1)),
        Just((2, 1, 4, "x-1", 1)),
        Just((2, 1, 3, "x-1", 2)),
        Just((3, 1, 2, "x-1", 1)),
        Just((2, 2, 2, "x+a", 1)),
        Just((2, 1, 2, "x^2+x+1", 1)),
        Just((3, 1, 1, "x^2+1", 1)),
    ]
    .prop_map(|(p, m, t, f, s)| special(p, m, t, f, s))
}

fn ring_with(n: usize) -> impl Strategy<Value = (Arc<RingCtx>, Vec<QuotElem>)> {
    rings().prop_flat_map(move |r| {
        let size = r.size().unwrap();
        (Just(r.clone()), proptest::collection::vec(0..size, n))
            .prop_map(|(r, v)| (r.clone(), v.into_iter().map(|i| r.element_at(i)).collect()))
    })
}

proptest! {
    #[test]
    fn field_axioms((f, v) in field_with(3)) {
        let (a, b, c) = (v[0], v[1], v[2]);
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(f.inv(a).unwrap(), a), FieldElement::ONE);
        }
        prop_assert_eq!(f.pow(a, f.order() as i128).unwrap(), a);
    }

    #[test]
    fn divmod_reconstructs((f, v) in field_with(10)) {
        let a = FieldPoly::new(v[..6].to_vec());
        let b = FieldPoly::new(v[6..].to_vec());
        prop_assume!(!b.is_zero());
        let (q, r) = f.poly_divmod(&a, &b).unwrap();
        prop_assert_eq!(f.poly_add(&f.poly_mul(&q, &b), &r), a);
        prop_assert!(r.degree() < b.degree());
    }

    #[test]
    fn truncation_kills_top_power(t in 2usize..6, p in prop_oneof![Just(2u64), Just(3)]) {
        let f = FieldCtx::new(p, 1, None).unwrap();
        let top = RtElement::monomial(t, FieldElement::ONE, t - 1);
        let u = RtElement::monomial(t, FieldElement::ONE, 1);
        prop_assert!(f.rt_mul(&top, &u).is_zero());
        prop_assert!(!f.rt_mul(&top, &RtElement::one(t)).is_zero());
    }

    #[test]
    fn reduce_mod_u_is_a_homomorphism((r, v) in ring_with(2), k in 1usize..4) {
        let k = k.min(r.t());
        let (a, b) = (&v[0], &v[1]);
        let red = |e: &QuotElem| e.reduce_mod_u(k).unwrap();
        prop_assert_eq!(red(&a.add(b).unwrap()), red(a).add(&red(b)).unwrap());
        prop_assert_eq!(red(&a.mul(b).unwrap()), red(a).mul(&red(b)).unwrap());
        prop_assert_eq!(red(&r.one()), r.truncated(k).unwrap().one());
    }

    #[test]
    fn f_valuation_is_superadditive(
        (p, m, f, s) in prop_oneof![
            Just((2u64, 1usize, "x-1", 3u32)),
            Just((3, 1, "x^2+1", 1)),
            Just((2, 2, "x+a", 2)),
            Just((5, 1, "x-1", 1)),
        ],
        i in 0u128..729,
        j in 0u128..729,
    ) {
        let r = special(p, m, 1, f, s);
        let size = r.size().unwrap();
        let ps = r.special_data().unwrap().ps;
        let (a, b) = (&r.element_at(i % size), &r.element_at(j % size));
        let (va, vb) = (a.val_f().unwrap(), b.val_f().unwrap());
        let vab = a.mul(b).unwrap().val_f().unwrap();
        prop_assert!(vab >= (va + vb).min(ps));
        if va + vb < ps {
            prop_assert_eq!(vab, va + vb);
        }
    }

    #[test]
    fn ring_multiplication_commutes_and_associates((_r, v) in ring_with(3)) {
        let (a, b, c) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(a.mul(b).unwrap(), b.mul(a).unwrap());
        prop_assert_eq!(a.mul(b).unwrap().mul(c).unwrap(), a.mul(&b.mul(c).unwrap()).unwrap());
    }

    #[test]
    fn printer_round_trips((r, v) in ring_with(1)) {
        let printed = text::quot_elem(&v[0]);
        prop_assert_eq!(parse_poly(&printed, &r).unwrap(), v[0].clone());
    }

    #[test]
    fn f_basis_round_trips((r, v) in ring_with(1)) {
        let c = v[0].to_f_basis().unwrap();
        prop_assert_eq!(r.from_f_basis(&c).unwrap(), v[0].clone());
    }

    #[test]
    fn sigma_is_a_ring_isomorphism(idx in (0u128..729, 0u128..729), lambda in 1i64..3) {
        let f = FieldCtx::new(3, 1, None).unwrap();
        let map = SigmaMap::new(f.clone(), 2, 1, f.from_int(lambda)).unwrap();
        let s = &map.source;
        let (a, b) = (s.element_at(idx.0), s.element_at(idx.1));
        let ap = map.apply(&a).unwrap();
        let bp = map.apply(&b).unwrap();
        prop_assert_eq!(map.apply(&a.mul(&b).unwrap()).unwrap(), ap.mul(&bp).unwrap());
        prop_assert_eq!(map.apply(&a.add(&b).unwrap()).unwrap(), ap.add(&bp).unwrap());
        prop_assert_eq!(map.inverse(&ap).unwrap(), a);
    }

    #[test]
    fn lambda0_inverts_lambda(
        (p, m) in prop_oneof![Just((2u64, 2usize)), Just((3, 1)), Just((3, 2)), Just((5, 1))],
        s in 0u32..4,
        raw in 1u32..25,
    ) {
        let f = FieldCtx::new(p, m, None).unwrap();
        let lambda = f.element(raw % (f.order() - 1) + 1).unwrap();
        let l0 = lambda0(&f, lambda, s).unwrap();
        let ps = (p as i128).pow(s);
        prop_assert_eq!(f.mul(f.pow(l0, ps).unwrap(), lambda), FieldElement::ONE);
    }

    #[test]
    fn field_elements_parse_back((f, v) in field_with(1)) {
        prop_assert_eq!(parse_field_element(&text::field_element(&f, v[0]), &f).unwrap(), v[0]);
    }
}

fn enumerated(r: &Arc<RingCtx>) -> Vec<Code> {
    enumerate_ideals(r, DEFAULT_CAP, Exec::Parallel).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Membership of u^i (f^l + u g) forces l >= T_i.
    #[test]
    fn leading_exponent_bounded_by_torsion(pick in 0usize..1000, i in 0usize..4, l in 0usize..3, g in 0u128..256) {
        let r = special(2, 1, 4, "x-1", 1);
        let ideals = enumerated(&r);
        let c = &ideals[pick % ideals.len()];
        let profile = c.torsion_profile().unwrap();
        let e = r.u_f_term(i, l, &FieldPoly::one()).unwrap().add(&r.element_at(g).mul_u_pow(i + 1)).unwrap();
        if c.contains(&e).unwrap() {
            prop_assert!(l >= profile.0[i]);
        }
    }
}

#[test]
fn divmod_exhaustive_small_degree() {
    for p in [2, 3] {
        let f = FieldCtx::new(p, 1, None).unwrap();
        let all: Vec<FieldPoly> = (0..4)
            .flat_map(|k| f.monic_polys(k).collect::<Vec<_>>())
            .flat_map(|m| f.elements().filter(|c| !c.is_zero()).map(move |c| (m.clone(), c)).collect::<Vec<_>>())
            .map(|(m, c)| f.poly_scale(&m, c))
            .chain(std::iter::once(FieldPoly::zero()))
            .collect();
        for a in &all {
            for b in all.iter().filter(|b| !b.is_zero()) {
                let (q, r) = f.poly_divmod(a, b).unwrap();
                assert_eq!(&f.poly_add(&f.poly_mul(&q, b), &r), a);
                assert!(r.degree() < b.degree() || r.degree() == Degree::MinusInfinity);
            }
        }
    }
}

#[test]
fn factorization_expands_back() {
    let f = FieldCtx::new(2, 1, None).unwrap();
    for k in 1..=4 {
        for poly in f.monic_polys(k) {
            assert_eq!(f.expand(&f.factor(&poly).unwrap()), poly);
        }
    }
}

#[test]
fn units_are_exactly_invertibles() {
    for r in [special(2, 1, 2, "x-1", 1), special(3, 1, 1, "x-1", 1), special(2, 2, 1, "x+a", 1)] {
        let size = r.size().unwrap();
        let elems: Vec<QuotElem> = (0..size).map(|i| r.element_at(i)).collect();
        for a in &elems {
            let has_inverse = elems.iter().any(|b| a.mul(b).unwrap() == r.one());
            assert_eq!(a.is_unit(), has_inverse, "{a:?}");
        }
    }
}

#[test]
fn enumerated_ideals_are_closed() {
    for r in [special(2, 1, 4, "x-1", 1), special(3, 1, 2, "x-1", 1)] {
        let x = r.x();
        let u = r.u();
        for c in enumerated(&r) {
            for row in c.basis().rows() {
                let e = r.from_coords(row.clone()).unwrap();
                assert!(c.contains(&e.mul(&x).unwrap()).unwrap());
                assert!(c.contains(&e.mul(&u).unwrap()).unwrap());
            }
        }
    }
}
