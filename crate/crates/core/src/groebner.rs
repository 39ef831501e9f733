//! Buchberger's algorithm and the ideal operations built on it.

use std::collections::VecDeque;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{remainder, s_polynomial, Polynomial, VariableOrder};

/// A finitely generated ideal. Zero generators are dropped on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    order: Arc<VariableOrder>,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(order: &Arc<VariableOrder>, generators: Vec<Polynomial>) -> Result<Self> {
        if generators
            .iter()
            .any(|g| !Arc::ptr_eq(g.order(), order) && g.order() != order)
        {
            return Err(Error::OrderMismatch);
        }
        Ok(Self {
            order: order.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(order: &Arc<VariableOrder>) -> Self {
        Self {
            order: order.clone(),
            generators: Vec::new(),
        }
    }

    pub fn unit(order: &Arc<VariableOrder>) -> Self {
        Self {
            order: order.clone(),
            generators: vec![Polynomial::one(order)],
        }
    }

    pub fn order(&self) -> &Arc<VariableOrder> {
        &self.order
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Appends generators from the same order.
    pub fn extend(&self, more: &[Polynomial]) -> Result<Self> {
        let mut g = self.generators.clone();
        g.extend(more.iter().cloned());
        Self::new(&self.order, g)
    }

    /// Moves every generator into `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<VariableOrder>) -> Result<Self> {
        let gens = self
            .generators
            .iter()
            .map(|g| g.embed(target))
            .collect::<Result<_>>()?;
        Self::new(target, gens)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.order, &other.order) || self.order == other.order {
            Ok(())
        } else {
            Err(Error::OrderMismatch)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    order: Arc<VariableOrder>,
    elements: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn order(&self) -> &Arc<VariableOrder> {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    /// The basis of the whole ring.
    pub fn is_unit(&self) -> bool {
        self.elements.iter().any(Polynomial::is_unit)
    }

    pub fn into_ideal(self) -> Ideal {
        Ideal {
            order: self.order,
            generators: self.elements,
        }
    }

    /// Elements printed one per entry.
    pub fn to_strings(&self) -> Vec<String> {
        self.elements.iter().map(ToString::to_string).collect()
    }
}

/// Buchberger's algorithm with a FIFO pair queue.
///
/// Pairs `(i, j)` with `i < j` are queued for the input generators; each new
/// element `n` appends `(0, n), ..., (n - 1, n)`. With `use_coprime_criterion`
/// pairs whose leading monomials are coprime are skipped, since their
/// S-polynomials always reduce to zero.
pub fn buchberger(ideal: &Ideal, use_coprime_criterion: bool) -> GroebnerBasis {
    let order = ideal.order.clone();
    let mut basis: Vec<Polynomial> = ideal.generators.iter().map(Polynomial::monic).collect();
    if let Some(u) = basis.iter().find(|g| g.is_unit()) {
        return GroebnerBasis {
            order,
            elements: vec![u.clone()],
            reduced: false,
        };
    }
    let mut queue: VecDeque<(usize, usize)> = (0..basis.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();
    while let Some((i, j)) = queue.pop_front() {
        let (f, g) = (&basis[i], &basis[j]);
        if use_coprime_criterion {
            let (lf, lg) = (&f.terms()[0].monomial, &g.terms()[0].monomial);
            if lf.is_coprime(lg) {
                continue;
            }
        }
        let s = s_polynomial(f, g).expect("nonzero basis elements share an order");
        let r = remainder(&s, &basis);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if r.is_unit() {
            return GroebnerBasis {
                order,
                elements: vec![r],
                reduced: false,
            };
        }
        let n = basis.len();
        basis.push(r);
        queue.extend((0..n).map(|i| (i, n)));
    }
    GroebnerBasis {
        order,
        elements: basis,
        reduced: false,
    }
}

/// The unique reduced basis: monic, auto-reduced, sorted by leading
/// monomial descending.
pub fn reduce_to_canonical(g: &GroebnerBasis) -> GroebnerBasis {
    let mut monic: Vec<Polynomial> = g
        .elements
        .iter()
        .filter(|p| !p.is_zero())
        .map(Polynomial::monic)
        .collect();
    monic.sort_by(|a, b| a.terms()[0].monomial.cmp(&b.terms()[0].monomial));
    // Ascending order: an element is redundant if an earlier (smaller or
    // equal) leading monomial divides its own.
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in monic {
        let lm = &p.terms()[0].monomial;
        if !minimal.iter().any(|q| q.terms()[0].monomial.divides(lm)) {
            minimal.push(p);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Polynomial> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, q)| q.clone())
            .collect();
        reduced.push(remainder(&minimal[i], &others));
    }
    reduced.reverse();
    GroebnerBasis {
        order: g.order.clone(),
        elements: reduced,
        reduced: true,
    }
}

/// Canonical reduced basis of `ideal`.
pub fn groebner_basis(ideal: &Ideal) -> GroebnerBasis {
    reduce_to_canonical(&buchberger(ideal, true))
}

/// Remainder of `f` modulo a Gröbner basis; unique for a given ideal.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Result<Polynomial> {
    if !Arc::ptr_eq(f.order(), &g.order) && f.order() != &g.order {
        return Err(Error::OrderMismatch);
    }
    Ok(remainder(f, &g.elements))
}

/// Direct check that every pairwise S-polynomial reduces to zero.
pub fn satisfies_buchberger_criterion(g: &GroebnerBasis) -> bool {
    let els = &g.elements;
    (0..els.len()).all(|j| {
        (0..j).all(|i| {
            let s = s_polynomial(&els[i], &els[j]).expect("same order");
            remainder(&s, els).is_zero()
        })
    })
}

pub fn ideal_contains(ideal: &Ideal, f: &Polynomial) -> Result<bool> {
    Ok(normal_form(f, &groebner_basis(ideal))?.is_zero())
}

/// Equal canonical reduced bases.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.check(b)?;
    Ok(groebner_basis(a).elements == groebner_basis(b).elements)
}

/// `a ⊆ b`, tested generator by generator.
pub fn ideal_subset(a: &Ideal, b: &Ideal) -> Result<bool> {
    a.check(b)?;
    let gb = groebner_basis(b);
    for f in &a.generators {
        if !normal_form(f, &gb)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `I ∩ J` by eliminating a fresh top variable from `nu I + (nu - 1) J`.
pub fn intersect(a: &Ideal, b: &Ideal) -> Result<Ideal> {
    a.check(b)?;
    let order = a.order.clone();
    let big = order.with_nu()?;
    let nu = Polynomial::var_at(&big, 0);
    let nu_minus_one = nu.sub(&Polynomial::one(&big))?;
    let mut gens = Vec::with_capacity(a.generators.len() + b.generators.len());
    for g in &a.generators {
        gens.push(nu.mul(&g.embed(&big)?)?);
    }
    for g in &b.generators {
        gens.push(nu_minus_one.mul(&g.embed(&big)?)?);
    }
    let gb = groebner_basis(&Ideal::new(&big, gens)?);
    let kept = gb
        .elements
        .iter()
        .filter(|p| !p.mentions(0))
        .map(|p| p.embed(&order))
        .collect::<Result<_>>()?;
    Ideal::new(&order, kept)
}

/// `I : (f)`. Intersects with `(f)` and divides each generator by `f`;
/// `I : (0)` is the unit ideal.
pub fn quotient(ideal: &Ideal, f: &Polynomial) -> Result<Ideal> {
    if !Arc::ptr_eq(f.order(), &ideal.order) && f.order() != &ideal.order {
        return Err(Error::OrderMismatch);
    }
    if f.is_zero() {
        return Ok(Ideal::unit(&ideal.order));
    }
    let principal = Ideal::new(&ideal.order, vec![f.clone()])?;
    let meet = intersect(ideal, &principal)?;
    let gens = meet
        .generators
        .iter()
        .map(|g| g.div_exact(f))
        .collect::<Result<_>>()?;
    Ideal::new(&ideal.order, gens)
}

/// `(...((I : f_1) : f_2) ...) : f_n`.
pub fn quotient_by_product(ideal: &Ideal, fs: &[Polynomial]) -> Result<Ideal> {
    let mut acc = ideal.clone();
    for f in fs {
        acc = quotient(&acc, f)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    fn ord(names: &[&str]) -> Arc<VariableOrder> {
        VariableOrder::new(names.iter().copied()).unwrap()
    }

    fn ideal(o: &Arc<VariableOrder>, gens: &[&str]) -> Ideal {
        let g = gens
            .iter()
            .map(|s| parse_polynomial(s, o).unwrap())
            .collect();
        Ideal::new(o, g).unwrap()
    }

    fn p(o: &Arc<VariableOrder>, s: &str) -> Polynomial {
        parse_polynomial(s, o).unwrap()
    }

    #[test]
    fn single_generator() {
        let o = ord(&["x1", "x2"]);
        let g = buchberger(&ideal(&o, &["x1 - x2"]), true);
        assert_eq!(g.to_strings(), ["x1 - x2"]);
    }

    #[test]
    fn linear_combination_reduces() {
        let o = ord(&["x1", "x2", "x4"]);
        let i = ideal(&o, &["x1 - x2", "x2 - x4"]);
        let g = buchberger(&i, false);
        assert!(satisfies_buchberger_criterion(&g));
        assert!(normal_form(&p(&o, "x1 - x4"), &g).unwrap().is_zero());
        assert!(ideal_contains(&i, &p(&o, "x1 - x4")).unwrap());
    }

    #[test]
    fn canonical_examples() {
        let o = ord(&["x1", "x2", "x4", "x5"]);
        let g = groebner_basis(&ideal(&o, &["2*x1 - 2*x2"]));
        assert_eq!(g.to_strings(), ["x1 - x2"]);
        let g = groebner_basis(&ideal(&o, &["x1 - x2", "x1 - x2"]));
        assert_eq!(g.to_strings(), ["x1 - x2"]);
        let i = ideal(&o, &["x1 - x2", "x1*x5 - x2*x4"]);
        let g = groebner_basis(&i);
        assert_eq!(g.to_strings(), ["x1 - x2", "x2*x4 - x2*x5"]);
        let j = ideal(&o, &["x1 - x2", "x2*x5 - x2*x4"]);
        assert!(ideal_subset(&i, &j).unwrap() && ideal_subset(&j, &i).unwrap());
    }

    #[test]
    fn normal_form_of_non_leading_variable() {
        let o = ord(&["x1", "x2", "x4", "x5"]);
        let g = groebner_basis(&ideal(&o, &["x1 - x2", "-x1*x5 + x2*x4", "x4 - x5"]));
        assert_eq!(normal_form(&p(&o, "x5"), &g).unwrap(), p(&o, "x5"));
        for e in g.elements() {
            assert!(normal_form(e, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn equality_examples() {
        let o = ord(&["x1", "x2", "x4"]);
        let a = ideal(&o, &["x1 - x2", "x2*x4 - 1"]);
        let b = ideal(&o, &["x2*x4 - 1", "x1 - x2"]);
        assert!(ideal_equal(&a, &b).unwrap());
        let c = ideal(&o, &["t^2*x1 - t^2*x2"]);
        assert!(ideal_equal(&ideal(&o, &["x1 - x2"]), &c).unwrap());
    }

    #[test]
    fn intersections() {
        let o = ord(&["x1", "x2"]);
        let a = ideal(&o, &["x1 - x2", "x2^2"]);
        assert!(ideal_equal(&intersect(&a, &a).unwrap(), &a).unwrap());
        let m = intersect(&ideal(&o, &["x1"]), &ideal(&o, &["x2"])).unwrap();
        assert!(ideal_equal(&m, &ideal(&o, &["x1*x2"])).unwrap());
        let with_nu = o.with_nu().unwrap();
        let n = Ideal::unit(&with_nu);
        assert!(intersect(&n, &n).is_err());
    }

    #[test]
    fn quotients() {
        let o = ord(&["x", "z", "w"]);
        let i = ideal(&o, &["x*z", "z^2"]);
        assert!(ideal_equal(&quotient(&i, &Polynomial::one(&o)).unwrap(), &i).unwrap());
        assert!(ideal_equal(&quotient(&i, &p(&o, "z")).unwrap(), &ideal(&o, &["x", "z"])).unwrap());
        let u = quotient(&i, &Polynomial::zero(&o)).unwrap();
        assert!(groebner_basis(&u).is_unit());
        // t x - z is prime and (t^-1 - 1)(z - w) is not in it.
        let prime = ideal(&o, &["t*x - z"]);
        let f = p(&o, "(t^-1 - 1)*z - (t^-1 - 1)*w");
        assert!(ideal_equal(&quotient(&prime, &f).unwrap(), &prime).unwrap());
    }

    #[test]
    fn product_quotients() {
        let o = ord(&["x", "y", "z"]);
        let i = ideal(&o, &["x*y*z", "x^2*y - z^2"]);
        let one = Polynomial::one(&o);
        let same = quotient_by_product(&i, &[one.clone(), one]).unwrap();
        assert!(ideal_equal(&same, &i).unwrap());
        let (x, y) = (p(&o, "x"), p(&o, "y"));
        let iter = quotient_by_product(&i, &[x.clone(), y.clone()]).unwrap();
        let direct = quotient(&i, &x.mul(&y).unwrap()).unwrap();
        assert!(ideal_equal(&iter, &direct).unwrap());
    }
}
