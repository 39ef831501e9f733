//! Exact arithmetic in the rational function field `Q(t)`.
//!
//! Elements are stored as a reduced fraction of two integer Laurent
//! polynomials. The representation is canonical, so structural equality is
//! field equality:
//!
//! * numerator and denominator share no common factor in `Z[t]`,
//! * the denominator has no negative powers of `t` and a nonzero constant
//!   term (any power of `t` lives in the numerator),
//! * the denominator's leading integer coefficient is positive.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Integer Laurent polynomial `sum c_i t^i`, stored densely from its lowest
/// nonzero power.
///
/// Invariant: the first and last stored coefficients are nonzero. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntLaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl IntLaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^exp`.
    pub fn monomial(c: BigInt, exp: i64) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: exp,
            coeffs: vec![c],
        }
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigInt)>,
    {
        let mut acc = Self::zero();
        for (e, c) in terms {
            acc = &acc + &Self::monomial(c, e);
        }
        acc
    }

    fn from_raw(low: i64, mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead_zeros = coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead_zeros == coeffs.len() {
            return Self::zero();
        }
        coeffs.drain(..lead_zeros);
        Self {
            low: low + lead_zeros as i64,
            coeffs,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Single term `c * t^e`.
    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Lowest exponent carrying a nonzero coefficient (0 for the zero polynomial).
    pub fn valuation(&self) -> i64 {
        self.low
    }

    /// Highest exponent carrying a nonzero coefficient.
    pub fn degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        let idx = exp - self.low;
        if idx < 0 || idx as usize >= self.coeffs.len() {
            BigInt::zero()
        } else {
            self.coeffs[idx as usize].clone()
        }
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    fn shift_to_zero(&self) -> Self {
        self.shift(-self.low)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Gcd of the integer coefficients (positive; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    fn exact_div_int(&self, c: &BigInt) -> Self {
        Self {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x / c).collect(),
        }
    }

    fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_one() || c.is_zero() {
            self.clone()
        } else {
            self.exact_div_int(&c)
        }
    }

    /// Pseudo-remainder of `self` by `divisor`, both treated as elements of
    /// `Z[t]` with valuation zero.
    fn pseudo_rem(&self, divisor: &Self) -> Self {
        let lc = divisor.leading_coeff().expect("nonzero divisor").clone();
        let mut r = self.clone();
        while !r.is_zero() && r.degree() >= divisor.degree() {
            let shift = r.degree() - divisor.degree();
            let rc = r.leading_coeff().unwrap().clone();
            r = &r.scale(&lc) - &divisor.shift(shift).scale(&rc);
        }
        r
    }

    /// Gcd in `Z[t]` of two polynomials with valuation zero; positive
    /// leading coefficient.
    fn gcd_zt(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalize_sign();
        }
        if b.is_zero() {
            return a.normalize_sign();
        }
        let content = a.content().gcd(&b.content());
        if a.degree() == 0 || b.degree() == 0 {
            return Self::constant(content);
        }
        let (mut x, mut y) = (a.primitive_part(), b.primitive_part());
        if x.degree() < y.degree() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let r = x.pseudo_rem(&y).primitive_part();
            x = y;
            y = r;
        }
        x.normalize_sign().scale(&content)
    }

    fn normalize_sign(&self) -> Self {
        match self.leading_coeff() {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Exact quotient in `Z[t, 1/t]`, or `None` when `divisor` does not divide.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        if divisor.is_monomial() {
            let c = &divisor.coeffs[0];
            if self.coeffs.iter().any(|x| !x.is_multiple_of(c)) {
                return None;
            }
            return Some(Self {
                low: self.low - divisor.low,
                coeffs: self.coeffs.iter().map(|x| x / c).collect(),
            });
        }
        let d = divisor.shift_to_zero();
        let mut r = self.shift_to_zero();
        let lc = d.leading_coeff().unwrap().clone();
        let mut q = vec![BigInt::zero(); (r.degree() - d.degree()).max(0) as usize + 1];
        while !r.is_zero() && r.degree() >= d.degree() {
            let (qc, rem) = r.leading_coeff().unwrap().div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = r.degree() - d.degree();
            r = &r - &d.shift(shift).scale(&qc);
            q[shift as usize] = qc;
        }
        if !r.is_zero() {
            return None;
        }
        Some(Self::from_raw(self.low - divisor.low, q))
    }
}

impl fmt::Debug for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntLaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms().rev().enumerate() {
            let neg = c.is_negative();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if e == 1 {
                        f.write_str("t")?;
                    } else {
                        write!(f, "t^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Neg for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn neg(self) -> IntLaurentPoly {
        IntLaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn add(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.degree().max(rhs.degree());
        let mut coeffs = vec![BigInt::zero(); (high - low + 1) as usize];
        for (e, c) in self.terms().chain(rhs.terms()) {
            coeffs[(e - low) as usize] += c;
        }
        IntLaurentPoly::from_raw(low, coeffs)
    }
}

impl Sub for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn sub(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &IntLaurentPoly {
    type Output = IntLaurentPoly;
    fn mul(self, rhs: &IntLaurentPoly) -> IntLaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntLaurentPoly::zero();
        }
        if rhs.is_monomial() {
            return self.scale(&rhs.coeffs[0]).shift(rhs.low);
        }
        if self.is_monomial() {
            return rhs.scale(&self.coeffs[0]).shift(self.low);
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        IntLaurentPoly::from_raw(self.low + rhs.low, coeffs)
    }
}

/// An element of `Q(t)` in canonical form (see the module docs).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: IntLaurentPoly,
    den: IntLaurentPoly,
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl RationalFunction {
    pub fn zero() -> Self {
        Self {
            num: IntLaurentPoly::zero(),
            den: IntLaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_bigint(BigInt::from(n))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self {
            num: IntLaurentPoly::constant(n),
            den: IntLaurentPoly::one(),
        }
    }

    /// The canonical representative of `t^exp`.
    pub fn t_pow(exp: i64) -> Self {
        Self {
            num: IntLaurentPoly::monomial(BigInt::one(), exp),
            den: IntLaurentPoly::one(),
        }
    }

    /// `c * t^exp`.
    pub fn monomial(c: i64, exp: i64) -> Self {
        Self {
            num: IntLaurentPoly::monomial(BigInt::from(c), exp),
            den: IntLaurentPoly::one(),
        }
    }

    pub fn from_laurent(p: IntLaurentPoly) -> Self {
        Self {
            num: p,
            den: IntLaurentPoly::one(),
        }
    }

    /// `num / den` brought to canonical form.
    pub fn from_fraction(num: IntLaurentPoly, den: IntLaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    fn canonical(num: IntLaurentPoly, den: IntLaurentPoly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        let num = num.shift(-den.valuation());
        let den = den.shift_to_zero();
        if den.is_one() {
            return Self { num, den };
        }
        let g = if den.is_monomial() {
            IntLaurentPoly::constant(num.content().gcd(&den.coeffs[0]))
        } else {
            IntLaurentPoly::gcd_zt(&num.shift_to_zero(), &den)
        };
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &IntLaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &IntLaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is an integer Laurent polynomial.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True for `c * t^k` with `c` an integer.
    pub fn is_laurent_monomial(&self) -> bool {
        self.den.is_one() && self.num.is_monomial()
    }

    /// Sign of the numerator's leading coefficient; used by printers.
    pub fn leading_sign(&self) -> Ordering {
        match self.num.leading_coeff() {
            None => Ordering::Equal,
            Some(c) if c.is_negative() => Ordering::Less,
            Some(_) => Ordering::Greater,
        }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Swapping is already reduced; only the t-shift and sign need fixing.
        let shift = self.num.valuation();
        let mut den = self.num.shift(-shift);
        let mut num = self.den.shift(-shift);
        if den.leading_coeff().is_some_and(Signed::is_negative) {
            num = -&num;
            den = -&den;
        }
        Ok(Self { num, den })
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        -&self
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_laurent(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return RationalFunction::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RationalFunction::canonical(num, &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RationalFunction::from_laurent(&self.num * &rhs.num);
        }
        RationalFunction::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);
