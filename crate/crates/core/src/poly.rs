//! Sparse multivariate polynomials over `Q(t)` under lexicographic orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::coeff::{IntLaurentPoly, RationalFunction};
use crate::error::{Error, Result};

/// Name of the elimination variable. User orders may not contain it.
pub const NU: &str = "nu";

/// The coefficient symbol; it can never be a polynomial variable.
pub const T: &str = "t";

/// Variable names, highest precedence first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VariableOrder {
    names: Vec<String>,
}

impl VariableOrder {
    /// A user order. Rejects duplicates and the reserved names `nu` and `t`.
    pub fn new<I, S>(names: I) -> Result<Arc<Self>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n == NU || n == T {
                return Err(Error::ReservedVariable(n.clone()));
            }
            if !is_identifier(n) {
                return Err(Error::UnknownVariable(n.clone()));
            }
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(Self { names }))
    }

    /// This order with `nu` adjoined as the new highest variable.
    pub fn with_nu(&self) -> Result<Arc<Self>> {
        if self.has_nu() {
            return Err(Error::ReservedVariable(NU.into()));
        }
        let mut names = Vec::with_capacity(self.names.len() + 1);
        names.push(NU.to_string());
        names.extend(self.names.iter().cloned());
        Ok(Arc::new(Self { names }))
    }

    /// Drops a leading `nu`, if present.
    pub fn without_nu(&self) -> Arc<Self> {
        let names = if self.has_nu() {
            self.names[1..].to_vec()
        } else {
            self.names.clone()
        };
        Arc::new(Self { names })
    }

    pub fn has_nu(&self) -> bool {
        self.names.first().is_some_and(|n| n == NU)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Dense exponent vector indexed by precedence position.
///
/// The derived `Ord` is exactly the lexicographic order: the first position
/// where the exponents differ decides, and the larger exponent wins.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Self(exps)
    }

    /// The monomial `x_idx`.
    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut e = vec![0; nvars];
        e[idx] = 1;
        Self(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, idx: usize) -> u32 {
        self.0[idx]
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Self) -> Self {
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        other
            .divides(self)
            .then(|| Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

/// Lexicographic comparison checked against `ord`.
pub fn lex_compare(a: &Monomial, b: &Monomial, ord: &VariableOrder) -> Result<Ordering> {
    for m in [a, b] {
        if m.nvars() > ord.len() {
            return Err(Error::UnknownVariable(format!("#{}", ord.len())));
        }
        if m.nvars() < ord.len() {
            return Err(Error::OrderMismatch);
        }
    }
    Ok(a.cmp(b))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: RationalFunction,
    pub monomial: Monomial,
}

impl Term {
    pub fn new(coeff: RationalFunction, monomial: Monomial) -> Self {
        Self { coeff, monomial }
    }
}

/// A polynomial whose terms are kept strictly descending in its order.
#[derive(Clone)]
pub struct Polynomial {
    order: Arc<VariableOrder>,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        self.same_order(other) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(order: &Arc<VariableOrder>) -> Self {
        Self {
            order: order.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(order: &Arc<VariableOrder>, c: RationalFunction) -> Self {
        Self::from_term(order, Term::new(c, Monomial::one(order.len())))
    }

    pub fn one(order: &Arc<VariableOrder>) -> Self {
        Self::constant(order, RationalFunction::one())
    }

    /// The variable called `name`.
    pub fn var(order: &Arc<VariableOrder>, name: &str) -> Result<Self> {
        let idx = order
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(order, idx))
    }

    pub fn var_at(order: &Arc<VariableOrder>, idx: usize) -> Self {
        Self::from_term(
            order,
            Term::new(RationalFunction::one(), Monomial::var(order.len(), idx)),
        )
    }

    pub fn from_term(order: &Arc<VariableOrder>, term: Term) -> Self {
        debug_assert_eq!(term.monomial.nvars(), order.len());
        let terms = if term.coeff.is_zero() {
            Vec::new()
        } else {
            vec![term]
        };
        Self {
            order: order.clone(),
            terms,
        }
    }

    /// Sorts, merges equal monomials and drops zero coefficients.
    pub fn from_terms(order: &Arc<VariableOrder>, mut terms: Vec<Term>) -> Result<Self> {
        if terms.iter().any(|t| t.monomial.nvars() != order.len()) {
            return Err(Error::OrderMismatch);
        }
        terms.sort_by(|a, b| b.monomial.cmp(&a.monomial));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.monomial == t.monomial => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => out.push(t),
            }
        }
        // Merged runs may have cancelled.
        out.retain(|t| !t.coeff.is_zero());
        Ok(Self {
            order: order.clone(),
            terms: out,
        })
    }

    pub fn order(&self) -> &Arc<VariableOrder> {
        &self.order
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// Number of terms.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// A nonzero element of the coefficient field.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].monomial.is_one()
    }

    pub fn same_order(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.order, &other.order) || self.order == other.order
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_order(other) {
            Ok(())
        } else {
            Err(Error::OrderMismatch)
        }
    }

    pub fn leading_term(&self) -> Result<&Term> {
        self.terms.first().ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self) -> Result<&Monomial> {
        Ok(&self.leading_term()?.monomial)
    }

    pub fn leading_coeff(&self) -> Result<&RationalFunction> {
        Ok(&self.leading_term()?.coeff)
    }

    /// The second term of a binomial.
    pub fn trailing_term(&self) -> Result<&Term> {
        match self.terms.len() {
            0 => Err(Error::ZeroPolynomial),
            2 => Ok(&self.terms[1]),
            n => Err(Error::NotBinomial(n)),
        }
    }

    /// True when some term has a positive exponent at `idx`.
    pub fn mentions(&self, idx: usize) -> bool {
        self.terms.iter().any(|t| t.monomial.exponent(idx) > 0)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        Ok(self.with_terms(merge(&self.terms, &rhs.terms, None)))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let neg = Term::new(-RationalFunction::one(), Monomial::one(self.order.len()));
        Ok(self.with_terms(merge(&self.terms, &rhs.terms, Some(&neg))))
    }

    pub fn neg(&self) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .map(|t| Term::new(-&t.coeff, t.monomial.clone()))
                .collect(),
        )
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.check(rhs)?;
        let mut acc = Vec::new();
        for t in &rhs.terms {
            acc = merge(&acc, &self.terms, Some(t));
        }
        Ok(self.with_terms(acc))
    }

    pub fn scale(&self, c: &RationalFunction) -> Self {
        if c.is_zero() {
            return Self::zero(&self.order);
        }
        self.with_terms(
            self.terms
                .iter()
                .map(|t| Term::new(&t.coeff * c, t.monomial.clone()))
                .collect(),
        )
    }

    /// `self * term`.
    pub fn mul_term(&self, term: &Term) -> Self {
        if term.coeff.is_zero() {
            return Self::zero(&self.order);
        }
        self.with_terms(
            self.terms
                .iter()
                .map(|t| Term::new(&t.coeff * &term.coeff, t.monomial.mul(&term.monomial)))
                .collect(),
        )
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Self {
        self.with_terms(
            self.terms
                .iter()
                .map(|t| Term::new(t.coeff.clone(), t.monomial.mul(m)))
                .collect(),
        )
    }

    /// Scales so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some(t) if t.coeff.is_one() => self.clone(),
            Some(t) => self.scale(&t.coeff.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Scales by the smallest factor (up to sign and integer content) that
    /// leaves every coefficient in `Z[t]` with no negative powers of `t`.
    pub fn clear_denominators(&self) -> Self {
        let mut lcm = IntLaurentPoly::one();
        for t in &self.terms {
            let d = t.coeff.denominator();
            let cofactor = RationalFunction::from_fraction(lcm.clone(), d.clone())
                .expect("denominators are nonzero");
            lcm = &lcm * cofactor.denominator();
        }
        let cleared = self.scale(&RationalFunction::from_laurent(lcm));
        let low = cleared
            .terms
            .iter()
            .map(|t| t.coeff.numerator().valuation())
            .min()
            .unwrap_or(0);
        cleared.scale(&RationalFunction::t_pow(-low))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(&self.order);
        for _ in 0..exp {
            acc = acc.mul(self).expect("same order");
        }
        acc
    }

    fn with_terms(&self, terms: Vec<Term>) -> Self {
        Self {
            order: self.order.clone(),
            terms,
        }
    }

    /// Rewrites into `target`, matching variables by name.
    pub fn embed(&self, target: &Arc<VariableOrder>) -> Result<Self> {
        let map: Vec<Option<usize>> = self
            .order
            .names()
            .iter()
            .map(|n| target.index_of(n))
            .collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let mut e = vec![0; target.len()];
            for (i, &x) in t.monomial.exponents().iter().enumerate() {
                if x == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e[j] = x,
                    None => return Err(Error::UnknownVariable(self.order.name(i).to_string())),
                }
            }
            terms.push(Term::new(t.coeff.clone(), Monomial::from_exponents(e)));
        }
        Self::from_terms(target, terms)
    }

    /// Applies a ring map sending each variable `i` of `self` to
    /// `images[i]`, a polynomial in `target`.
    pub fn substitute(&self, target: &Arc<VariableOrder>, images: &[Polynomial]) -> Result<Self> {
        if images.len() != self.order.len() {
            return Err(Error::OrderMismatch);
        }
        if images
            .iter()
            .any(|p| !Arc::ptr_eq(p.order(), target) && p.order() != target)
        {
            return Err(Error::OrderMismatch);
        }
        let mut acc = Self::zero(target);
        for t in &self.terms {
            let mut prod = Self::constant(target, t.coeff.clone());
            for (i, &x) in t.monomial.exponents().iter().enumerate() {
                if x > 0 {
                    prod = prod.mul(&images[i].pow(x))?;
                }
            }
            acc = acc.add(&prod)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / divisor`; fails if a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (mut q, r) = reduce(self, std::slice::from_ref(divisor))?;
        if !r.is_zero() {
            return Err(Error::InexactDivision(format!("{self} by {divisor}")));
        }
        Ok(q.pop().expect("one quotient"))
    }
}

/// `a + c * m * b` where the optional term supplies `c * m`. Inputs must be
/// sorted descending; the result is too.
fn merge(a: &[Term], b: &[Term], factor: Option<&Term>) -> Vec<Term> {
    let scaled = |t: &Term| match factor {
        None => t.clone(),
        Some(f) => Term::new(&t.coeff * &f.coeff, t.monomial.mul(&f.monomial)),
    };
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut next_b = b.first().map(scaled);
    while i < a.len() || next_b.is_some() {
        let take = match (a.get(i), next_b.as_ref()) {
            (Some(x), Some(y)) => x.monomial.cmp(&y.monomial),
            (Some(_), None) => Ordering::Greater,
            (None, _) => Ordering::Less,
        };
        match take {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(next_b.take().unwrap());
                j += 1;
                next_b = b.get(j).map(scaled);
            }
            Ordering::Equal => {
                let y = next_b.take().unwrap();
                let c = &a[i].coeff + &y.coeff;
                if !c.is_zero() {
                    out.push(Term::new(c, y.monomial));
                }
                i += 1;
                j += 1;
                next_b = b.get(j).map(scaled);
            }
        }
    }
    out
}

pub fn monomial_lcm(a: &Monomial, b: &Monomial) -> Monomial {
    a.lcm(b)
}

pub fn monomial_gcd(a: &Monomial, b: &Monomial) -> Monomial {
    a.gcd(b)
}

pub fn monomial_divides(a: &Monomial, b: &Monomial) -> bool {
    a.divides(b)
}

/// `(L / lt f) f - (L / lt g) g` with `L = lcm(lm f, lm g)`.
pub fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    f.check(g)?;
    let (lf, lg) = (f.leading_term()?, g.leading_term()?);
    let l = lf.monomial.lcm(&lg.monomial);
    let a = Term::new(lf.coeff.inv()?, l.div(&lf.monomial).unwrap());
    let b = Term::new(-&lg.coeff.inv()?, l.div(&lg.monomial).unwrap());
    let fa: Vec<Term> = merge(&[], &f.terms, Some(&a));
    Ok(f.with_terms(merge(&fa, &g.terms, Some(&b))))
}

/// Multivariate division with first-match divisor selection.
///
/// Returns quotients `q_i` and remainder `r` with `f = sum q_i g_i + r` and
/// no term of `r` divisible by any `lm(g_i)`.
pub fn reduce(f: &Polynomial, divisors: &[Polynomial]) -> Result<(Vec<Polynomial>, Polynomial)> {
    for g in divisors {
        f.check(g)?;
        if g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
    }
    let mut quotients: Vec<Vec<Term>> = vec![Vec::new(); divisors.len()];
    let r = divide(f, divisors, |i, t| quotients[i].push(t));
    let quotients = quotients
        .into_iter()
        .map(|q| Polynomial::from_terms(&f.order, q).expect("same order"))
        .collect();
    Ok((quotients, r))
}

/// Remainder only; divisors must be nonzero and share `f`'s order.
pub(crate) fn remainder(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    divide(f, divisors, |_, _| {})
}

fn divide<F>(f: &Polynomial, divisors: &[Polynomial], mut record: F) -> Polynomial
where
    F: FnMut(usize, Term),
{
    // terms[..done] is final remainder; terms[done..] still to be examined.
    let mut terms = f.terms.clone();
    let mut done = 0;
    let inv_lc: Vec<RationalFunction> = divisors
        .iter()
        .map(|g| g.terms[0].coeff.inv().expect("nonzero divisor"))
        .collect();
    while done < terms.len() {
        let lead = &terms[done];
        let hit = divisors
            .iter()
            .position(|g| g.terms[0].monomial.divides(&lead.monomial));
        match hit {
            None => done += 1,
            Some(i) => {
                let g = &divisors[i];
                let q = Term::new(
                    &lead.coeff * &inv_lc[i],
                    lead.monomial.div(&g.terms[0].monomial).unwrap(),
                );
                let neg = Term::new(-&q.coeff, q.monomial.clone());
                // The leading terms cancel exactly, so skip them.
                let tail = merge(&terms[done + 1..], &g.terms[1..], Some(&neg));
                terms.truncate(done);
                terms.extend(tail);
                record(i, q);
            }
        }
    }
    f.with_terms(terms)
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
