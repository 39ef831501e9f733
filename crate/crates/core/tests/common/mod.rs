//! Strategies and property bodies shared by the property suite and the
//! acceptance report.
#![allow(dead_code)]

use std::sync::Arc;

use braidquot::braid::{BraidGraph, BraidGraphSpec, FramingPreset};
use braidquot::groebner::{
    buchberger, groebner_basis, ideal_contains, ideal_subset, intersect, normal_form, quotient,
    reduce_to_canonical, satisfies_buchberger_criterion, Ideal,
};
use braidquot::poly::{
    lex_compare, reduce, s_polynomial, Monomial, Polynomial, Term, VariableOrder,
};
use braidquot::verify::zeta_relation_holds;
use braidquot::{IntLaurentPoly, RationalFunction};
use num_bigint::BigInt;
use proptest::collection::vec;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

pub type PropResult = Result<(), TestCaseError>;

pub fn order(n: usize) -> Arc<VariableOrder> {
    VariableOrder::new(["a", "b", "c", "d", "e"].iter().take(n).copied()).unwrap()
}

pub fn laurent() -> impl Strategy<Value = IntLaurentPoly> {
    (-3i64..=3, vec(-4i64..=4, 1..4)).prop_map(|(low, cs)| {
        IntLaurentPoly::from_terms(
            cs.into_iter()
                .enumerate()
                .map(|(i, c)| (low + i as i64, BigInt::from(c))),
        )
    })
}

pub fn rational() -> impl Strategy<Value = RationalFunction> {
    (laurent(), laurent()).prop_filter_map("nonzero denominator", |(n, d)| {
        RationalFunction::from_fraction(n, d).ok()
    })
}

/// Small nonzero coefficients: integers, powers of `t` and `t^k - 1`.
pub fn coeff() -> impl Strategy<Value = RationalFunction> {
    prop_oneof![
        (1i64..=3, any::<bool>()).prop_map(|(c, neg)| RationalFunction::from_int(if neg {
            -c
        } else {
            c
        })),
        (-2i64..=2).prop_map(RationalFunction::t_pow),
        (1i64..=2).prop_map(|k| &RationalFunction::t_pow(k) - &RationalFunction::one()),
    ]
}

pub fn monomial(n: usize, max_exp: u32) -> impl Strategy<Value = Monomial> {
    vec(0..=max_exp, n).prop_map(Monomial::from_exponents)
}

pub fn poly(
    order: Arc<VariableOrder>,
    max_terms: usize,
    max_exp: u32,
) -> impl Strategy<Value = Polynomial> {
    let n = order.len();
    vec((coeff(), monomial(n, max_exp)), 1..=max_terms).prop_map(move |ts| {
        let terms = ts.into_iter().map(|(c, m)| Term::new(c, m)).collect();
        Polynomial::from_terms(&order, terms).unwrap()
    })
}

pub fn nonzero_poly(
    order: Arc<VariableOrder>,
    max_terms: usize,
    max_exp: u32,
) -> impl Strategy<Value = Polynomial> {
    poly(order, max_terms, max_exp).prop_filter("nonzero", |p| !p.is_zero())
}

/// A binomial `c1 m1 - c2 m2` with distinct monomials.
pub fn binomial(order: Arc<VariableOrder>, max_exp: u32) -> impl Strategy<Value = Polynomial> {
    let n = order.len();
    (coeff(), coeff(), monomial(n, max_exp), monomial(n, max_exp))
        .prop_filter("distinct monomials", |(_, _, a, b)| a != b)
        .prop_map(move |(c1, c2, a, b)| {
            Polynomial::from_terms(&order, vec![Term::new(c1, a), Term::new(-c2, b)]).unwrap()
        })
}

/// Ideals of sparse generators (one or two terms, exponents at most 2).
/// Dense random generators make lex bases explode over `Q(t)`.
pub fn small_ideal(order: Arc<VariableOrder>, max_gens: usize) -> impl Strategy<Value = Ideal> {
    vec(nonzero_poly(order.clone(), 2, 2), 1..=max_gens)
        .prop_map(move |gens| Ideal::new(&order, gens).unwrap())
}

/// Random diagrams on 2 or 3 strands with up to three thick edges, any
/// closure level and framings in `[-2, 2]`.
pub fn graph() -> impl Strategy<Value = BraidGraph> {
    (2usize..=3)
        .prop_flat_map(|b| (Just(b), vec(1..b, 0..=3), 0..b, vec(-2i64..=2, 16)))
        .prop_map(|(b, ev, closed, fr)| {
            let g = BraidGraph::new(BraidGraphSpec::new(b, &ev, closed)).unwrap();
            let n = g.edges().len();
            g.with_framings(&fr[..n]).unwrap()
        })
}

// ---- coefficient field ----

pub fn field_axioms(
    (a, b, c): (RationalFunction, RationalFunction, RationalFunction),
) -> PropResult {
    prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
    prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
    prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    prop_assert!((&a + &(-a.clone())).is_zero());
    if !a.is_zero() {
        prop_assert!((&a * &a.inv().unwrap()).is_one());
    }
    Ok(())
}

pub fn canonical_idempotent(a: RationalFunction) -> PropResult {
    let again =
        RationalFunction::from_fraction(a.numerator().clone(), a.denominator().clone()).unwrap();
    prop_assert_eq!(again, a);
    Ok(())
}

pub fn embedding((a, b): (i64, i64)) -> PropResult {
    prop_assert_eq!(
        &RationalFunction::t_pow(a) * &RationalFunction::t_pow(b),
        RationalFunction::t_pow(a + b)
    );
    Ok(())
}

// ---- monomial order, division, S-polynomials ----

pub fn order_axioms((m, m2, z): (Monomial, Monomial, Monomial)) -> PropResult {
    let ord = order(m.nvars());
    let one = Monomial::one(m.nvars());
    let c = lex_compare(&one, &m, &ord).unwrap();
    let ok = if m.is_one() { c.is_eq() } else { c.is_lt() };
    prop_assert!(ok);
    if lex_compare(&m, &m2, &ord).unwrap().is_lt() {
        prop_assert!(lex_compare(&m.mul(&z), &m2.mul(&z), &ord).unwrap().is_lt());
    }
    Ok(())
}

pub fn division_contract((f, divisors): (Polynomial, Vec<Polynomial>)) -> PropResult {
    let (qs, r) = reduce(&f, &divisors).unwrap();
    let mut total = r.clone();
    for (q, g) in qs.iter().zip(&divisors) {
        total = total.add(&q.mul(g).unwrap()).unwrap();
    }
    prop_assert_eq!(total, f);
    for t in r.terms() {
        for g in &divisors {
            prop_assert!(!g.leading_monomial().unwrap().divides(&t.monomial));
        }
    }
    Ok(())
}

pub fn s_polynomial_cancels((f, g): (Polynomial, Polynomial)) -> PropResult {
    let s = s_polynomial(&f, &g).unwrap();
    let l = f
        .leading_monomial()
        .unwrap()
        .lcm(g.leading_monomial().unwrap());
    if let Ok(lm) = s.leading_monomial() {
        prop_assert!(lm < &l);
    }
    Ok(())
}

fn mono_poly(order: &Arc<VariableOrder>, m: &Monomial) -> Polynomial {
    Polynomial::from_term(order, Term::new(RationalFunction::one(), m.clone()))
}

/// `S(af, ag) = a S(f, g)`, `S(af, bg) = ab S(f, g)` under the coprimality
/// hypotheses, and `S(af, a lt(g) + tail(g)) = S(f, a lt(g) + tail(g))`
/// when `a` is coprime to `lm f`.
pub fn s_polynomial_identities(
    (a, b, f, g): (Monomial, Monomial, Polynomial, Polynomial),
) -> PropResult {
    let ord = f.order().clone();
    let (pa, pb) = (mono_poly(&ord, &a), mono_poly(&ord, &b));
    let s = s_polynomial(&f, &g).unwrap();
    let af = f.mul(&pa).unwrap();
    prop_assert_eq!(
        s_polynomial(&af, &g.mul(&pa).unwrap()).unwrap(),
        s.mul(&pa).unwrap()
    );
    let (lf, lg) = (f.leading_monomial().unwrap(), g.leading_monomial().unwrap());
    if a.is_coprime(&b) && a.is_coprime(lg) && b.is_coprime(lf) {
        let lhs = s_polynomial(&af, &g.mul(&pb).unwrap()).unwrap();
        prop_assert_eq!(lhs, s.mul(&pa.mul(&pb).unwrap()).unwrap());
    }
    if a.is_coprime(lf) {
        let lt = Polynomial::from_term(&ord, g.leading_term().unwrap().clone());
        let tail = g.sub(&lt).unwrap();
        let g2 = lt.mul(&pa).unwrap().add(&tail).unwrap();
        prop_assert_eq!(
            s_polynomial(&af, &g2).unwrap(),
            s_polynomial(&f, &g2).unwrap()
        );
    }
    Ok(())
}

/// Whether `f` reaches zero through at most `depth` leading-term
/// reductions, choosing any applicable divisor at each step.
fn reaches_zero(f: &Polynomial, divisors: &[Polynomial], depth: usize) -> bool {
    let Ok(lt) = f.leading_term() else {
        return true;
    };
    if depth == 0 {
        return false;
    }
    divisors.iter().any(|g| {
        let glt = g.leading_term().unwrap();
        let Some(m) = lt.monomial.div(&glt.monomial) else {
            return false;
        };
        let c = lt.coeff.div(&glt.coeff).unwrap();
        let next = f.sub(&g.mul_term(&Term::new(c, m))).unwrap();
        reaches_zero(&next, divisors, depth - 1)
    })
}

/// `ps - rq` (in whichever sign is correctly ordered) reduces to zero via
/// `p - q` and `r - s` in two steps.
pub fn unordered_reduction((p, q, r, s): (Monomial, Monomial, Monomial, Monomial)) -> PropResult {
    prop_assume!(p != q && r != s);
    let ord = order(p.nvars());
    let m = |x: &Monomial| mono_poly(&ord, x);
    let f = m(&p.mul(&s)).sub(&m(&r.mul(&q))).unwrap();
    let d1 = m(&p).sub(&m(&q)).unwrap();
    let d2 = m(&r).sub(&m(&s)).unwrap();
    prop_assert!(reaches_zero(&f, &[d1, d2], 2), "{}", f);
    Ok(())
}

// ---- Gröbner bases and ideal operations ----

pub fn gb_criterion(ideal: Ideal) -> PropResult {
    let raw = buchberger(&ideal, true);
    prop_assert!(satisfies_buchberger_criterion(&raw));
    prop_assert!(satisfies_buchberger_criterion(&reduce_to_canonical(&raw)));
    for g in ideal.generators() {
        prop_assert!(normal_form(g, &raw).unwrap().is_zero());
    }
    Ok(())
}

fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, head.clone());
            out.push(p);
        }
    }
    out
}

pub fn normal_form_permutation_invariant((ideal, f): (Ideal, Polynomial)) -> PropResult {
    let gb = groebner_basis(&ideal);
    let els = gb.elements();
    let expected = normal_form(&f, &gb).unwrap();
    let orders: Vec<Vec<Polynomial>> = if els.len() <= 6 {
        permutations(els)
    } else {
        (0..els.len())
            .map(|k| [&els[k..], &els[..k]].concat())
            .collect()
    };
    for perm in orders {
        let r = braidquot::poly::reduce(&f, &perm).unwrap().1;
        prop_assert_eq!(&r, &expected);
    }
    Ok(())
}

pub fn quotient_sandwich((ideal, f): (Ideal, Polynomial)) -> PropResult {
    let q = quotient(&ideal, &f).unwrap();
    prop_assert!(ideal_subset(&ideal, &q).unwrap());
    let gb = groebner_basis(&ideal);
    for h in q.generators() {
        prop_assert!(normal_form(&f.mul(h).unwrap(), &gb).unwrap().is_zero());
    }
    Ok(())
}

pub fn intersection_oracle(
    (i, j, f, h1, h2): (Ideal, Ideal, Polynomial, Polynomial, Polynomial),
) -> PropResult {
    let m = intersect(&i, &j).unwrap();
    prop_assert!(!m.order().has_nu());
    let both = ideal_contains(&i, &f).unwrap() && ideal_contains(&j, &f).unwrap();
    prop_assert_eq!(ideal_contains(&m, &f).unwrap(), both);
    // A product of members lies in both ideals.
    let a = i.generators()[0].mul(&h1).unwrap();
    let b = j.generators()[0].mul(&h2).unwrap();
    let ab = a.mul(&b).unwrap();
    prop_assert!(ideal_contains(&m, &ab).unwrap());
    Ok(())
}

pub fn criterion_safety(ideal: Ideal) -> PropResult {
    let with = reduce_to_canonical(&buchberger(&ideal, true));
    let without = reduce_to_canonical(&buchberger(&ideal, false));
    prop_assert_eq!(with.elements(), without.elements());
    Ok(())
}

// ---- braid graphs ----

fn levels(g: &BraidGraph) -> std::ops::Range<usize> {
    g.base_level()..g.strands() - 1
}

pub fn weight_consistency(g: BraidGraph) -> PropResult {
    for k in levels(&g) {
        let ring = g.edge_ring(k).unwrap();
        let (next, _) = ring.close_strand().unwrap();
        for s in 1u32..1 << g.num_events() {
            let here = ring.subset_weights(s);
            let there = next.subset_weights(s);
            prop_assert_eq!(here.total, there.w + there.w_in, "subset {} level {}", s, k);
        }
    }
    Ok(())
}

pub fn weight_additivity(g: BraidGraph) -> PropResult {
    let m = g.num_events();
    for k in g.base_level()..g.strands() {
        let ring = g.edge_ring(k).unwrap();
        for a in 1u32..1 << m {
            for b in 1u32..1 << m {
                if a & b == 0 {
                    let w = |s| ring.subset_weights(s).total;
                    prop_assert_eq!(w(a | b), w(a) + w(b));
                }
            }
        }
    }
    Ok(())
}

/// Every thin edge framed `+1`: `w + w_in` counts two per thick edge.
pub fn plus_one_count(g: BraidGraph) -> PropResult {
    let g = g.framing_preset(FramingPreset::PlusOne);
    let ring = g.base_ring();
    for s in 1u32..1 << g.num_events() {
        let wd = ring.subset_weights(s);
        prop_assert_eq!(wd.w + wd.w_in, 2 * i64::from(s.count_ones()));
    }
    Ok(())
}

pub fn zeta_relation(g: BraidGraph) -> PropResult {
    for k in levels(&g) {
        prop_assert!(zeta_relation_holds(&g.edge_ring(k).unwrap()).unwrap());
    }
    Ok(())
}

pub fn q_inside_n(g: BraidGraph) -> PropResult {
    for k in g.base_level()..g.strands() {
        let ring = g.edge_ring(k).unwrap();
        prop_assert!(ideal_subset(&ring.quadratic_ideal(), &ring.nonlocal_ideal()).unwrap());
    }
    Ok(())
}

pub fn projection_compatibility(g: BraidGraph) -> PropResult {
    use braidquot::groebner::ideal_equal;
    for k in levels(&g) {
        let ring = g.edge_ring(k).unwrap();
        let (next, pi) = ring.close_strand().unwrap();
        let l = pi.apply_ideal(&ring.linear_ideal()).unwrap();
        prop_assert!(ideal_equal(&l, &next.linear_ideal()).unwrap());
        let q = pi.apply_ideal(&ring.quadratic_ideal()).unwrap();
        prop_assert!(ideal_equal(&q, &next.quadratic_ideal()).unwrap());
    }
    Ok(())
}

/// S-polynomials of pairs of nonlocal generators lie in the nonlocal ideal.
pub fn nonlocal_s_polynomials(g: BraidGraph) -> PropResult {
    let ring = g.edge_ring(g.strands() - 1).unwrap();
    let gb = groebner_basis(&ring.nonlocal_ideal());
    let gens: Vec<Polynomial> = (1u32..1 << g.num_events())
        .map(|s| ring.nonlocal_generator(s))
        .filter(|p| !p.is_zero())
        .collect();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let s = s_polynomial(a, b).unwrap();
            prop_assert!(normal_form(&s, &gb).unwrap().is_zero());
        }
    }
    Ok(())
}
