//! Exact arithmetic in `R = Q(e)`, the field of rational functions in one
//! infinitesimal `e`, ordered so that `0 < e < q` for every positive rational `q`.
//!
//! Elements are kept in a canonical form: numerator and denominator are
//! coprime polynomials and the lowest-degree nonzero coefficient of the
//! denominator is exactly 1. Equality of values is then structural equality.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

use super::poly::{check_degree, Poly};
use crate::error::{Error, Result};

/// The valuation `ord_e` of an element of `Q(e)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Valuation {
    Finite(i64),
    /// Valuation of zero.
    Infinity,
}

impl Valuation {
    pub fn is_nonnegative(self) -> bool {
        match self {
            Valuation::Finite(v) => v >= 0,
            Valuation::Infinity => true,
        }
    }

    pub fn is_positive(self) -> bool {
        match self {
            Valuation::Finite(v) => v > 0,
            Valuation::Infinity => true,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{}", v),
            Valuation::Infinity => write!(f, "+infinity"),
        }
    }
}

/// Classification of an element by its valuation: membership in `m`, `V`,
/// or `R \ V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarClass {
    Zero,
    Infinitesimal,
    FiniteUnit,
    Infinite,
}

impl fmt::Display for ScalarClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ScalarClass::Zero => "zero",
            ScalarClass::Infinitesimal => "infinitesimal",
            ScalarClass::FiniteUnit => "finite-unit",
            ScalarClass::Infinite => "infinite",
        };
        f.write_str(s)
    }
}

/// An element of `Q(e)` in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    num: Poly,
    den: Poly,
}

impl FieldElement {
    /// Build from a numerator/denominator pair, canonicalizing.
    /// Panics if the denominator is zero; use [`FieldElement::div`] for a
    /// checked quotient.
    pub fn from_parts(num: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator in Q(e)");
        if num.is_zero() {
            return FieldElement {
                num: Poly::zero(),
                den: Poly::one(),
            };
        }
        // Fast path for the overwhelmingly common polynomial case.
        if den.is_one() {
            if let Err(e) = check_degree(num.degree()) {
                panic!("{e}");
            }
            return FieldElement { num, den };
        }
        let g = num.gcd(&den);
        let (num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let low = den.lowest_coeff().expect("nonzero denominator").clone();
        let inv = BigRational::one() / low;
        let elem = FieldElement {
            num: num.scale(&inv),
            den: den.scale(&inv),
        };
        if let Err(e) = check_degree(elem.num.degree().max(elem.den.degree())) {
            panic!("{e}");
        }
        elem
    }

    pub fn zero() -> Self {
        FieldElement {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        FieldElement {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    /// The distinguished positive infinitesimal `e`.
    pub fn epsilon() -> Self {
        FieldElement {
            num: Poly::epsilon(),
            den: Poly::one(),
        }
    }

    pub fn from_rational(q: BigRational) -> Self {
        FieldElement {
            num: Poly::constant(q),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        assert!(d != 0);
        Self::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.num.degree() == 0 && self.den == Poly::one()
    }

    /// The exact rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.num.degree() == 0 && self.den == Poly::one() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).add(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::from_parts(num, den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let num = self.num.mul(&other.den).sub(&other.num.mul(&self.den));
        let den = self.den.mul(&other.den);
        Self::from_parts(num, den)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::from_parts(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_parts(
            self.num.mul(&other.den),
            self.den.mul(&other.num),
        ))
    }

    /// Multiplicative inverse; panics on zero (internal use on checked pivots).
    pub fn inv(&self) -> Self {
        Self::one().div(self).expect("inverse of zero")
    }

    pub fn abs(&self) -> Self {
        if self.sign() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Sign of the value for small positive `e`.
    pub fn sign(&self) -> i32 {
        // Denominator is canonical with positive lowest coefficient.
        self.num.sign_at_zero_plus()
    }

    /// `ord_e(num) - ord_e(den)`; `Infinity` for zero.
    pub fn valuation(&self) -> Valuation {
        match self.num.order() {
            None => Valuation::Infinity,
            Some(on) => {
                let od = self.den.order().expect("nonzero denominator");
                Valuation::Finite(on as i64 - od as i64)
            }
        }
    }

    /// The standard part: the value at `e = 0`. Defined exactly on `V`
    /// (valuation >= 0) where it is a ring homomorphism onto `Q`.
    pub fn standard_part(&self) -> Result<BigRational> {
        match self.valuation() {
            Valuation::Infinity => Ok(BigRational::zero()),
            Valuation::Finite(v) if v < 0 => Err(Error::NotFinite),
            Valuation::Finite(_) => {
                let d0 = self.den.coeff(0);
                debug_assert!(!d0.is_zero());
                Ok(self.num.coeff(0) / d0)
            }
        }
    }

    pub fn is_finite(&self) -> bool {
        self.valuation().is_nonnegative()
    }

    pub fn is_infinitesimal(&self) -> bool {
        self.valuation().is_positive()
    }

    pub fn classify(&self) -> ScalarClass {
        match self.valuation() {
            Valuation::Infinity => ScalarClass::Zero,
            Valuation::Finite(v) if v > 0 => ScalarClass::Infinitesimal,
            Valuation::Finite(0) => ScalarClass::FiniteUnit,
            Valuation::Finite(_) => ScalarClass::Infinite,
        }
    }

    /// Integer power (exponent may be negative for nonzero base).
    pub fn pow(&self, exp: i64) -> Result<Self> {
        if exp < 0 {
            return Self::one().div(self)?.pow(-exp);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = exp as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Substitute an exact rational value for `e`. Fails when the
    /// denominator vanishes at that value.
    pub fn eval_at(&self, x: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.num.eval(x) / d)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.sub(other).sign() {
            s if s < 0 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        format!("{}", q.numer())
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn fmt_poly(p: &Poly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    let mut first = true;
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let neg = c.is_negative();
        if first {
            if neg {
                out.push('-');
            }
            first = false;
        } else if neg {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let coeff = fmt_rational(&mag);
        if k == 0 {
            out.push_str(&coeff);
        } else {
            if !mag.is_one() {
                out.push_str(&coeff);
                out.push('*');
            }
            if k == 1 {
                out.push('e');
            } else {
                out.push_str(&format!("e^{}", k));
            }
        }
    }
    out
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Poly::one() {
            write!(f, "{}", fmt_poly(&self.num))
        } else {
            write!(f, "({})/({})", fmt_poly(&self.num), fmt_poly(&self.den))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    fn fe(s: &str) -> FieldElement {
        parse_scalar(s).unwrap()
    }

    #[test]
    fn epsilon_below_every_positive_rational() {
        // compare(e, 1/1000000) -> -1
        assert!(FieldElement::epsilon() < fe("1/1000000"));
        assert!(FieldElement::epsilon() > FieldElement::zero());
    }

    #[test]
    fn product_identity() {
        // (1+e)(1-e) = 1-e^2
        assert_eq!(fe("1+e").mul(&fe("1-e")), fe("1 - e^2"));
    }

    #[test]
    fn compare_infinitesimals() {
        // compare(2e - e^2, e) -> +1; oracle: substitute e := 10^-6 exactly.
        let a = fe("2*e - e^2");
        let b = fe("e");
        assert!(a > b);
        let x = BigRational::new(1.into(), 1_000_000.into());
        assert!(a.eval_at(&x).unwrap() > b.eval_at(&x).unwrap());
    }

    #[test]
    fn valuations() {
        assert_eq!(
            fe("(e^2)/(2+e)").valuation(),
            Valuation::Finite(2),
            "ord 2 minus ord 0"
        );
        assert_eq!(FieldElement::zero().valuation(), Valuation::Infinity);
        // (3e + e^3)/e^2: scan coefficient orders.
        assert_eq!(fe("(3*e + e^3)/(e^2)").valuation(), Valuation::Finite(-1));
    }

    #[test]
    fn standard_parts() {
        assert_eq!(
            fe("(2+e)/(1+3*e)").standard_part().unwrap(),
            BigRational::from_integer(2.into())
        );
        assert_eq!(fe("e^3").standard_part().unwrap(), BigRational::zero());
        assert_eq!(fe("(1)/(e)").standard_part(), Err(Error::NotFinite));
    }

    #[test]
    fn classification() {
        assert_eq!(fe("(e)/(1+e)").classify(), ScalarClass::Infinitesimal);
        assert_eq!(fe("7/2").classify(), ScalarClass::FiniteUnit);
        // (1+e)/e^2 has valuation -2.
        assert_eq!(fe("(1+e)/(e^2)").classify(), ScalarClass::Infinite);
        assert_eq!(FieldElement::zero().classify(), ScalarClass::Zero);
    }

    #[test]
    fn display_roundtrip() {
        for s in [
            "0",
            "-3/4",
            "1 + 2*e - 3/2*e^2",
            "(1+2*e)/(1-e)",
            "(e)/(1+e)",
            "e^3",
        ] {
            let x = fe(s);
            assert_eq!(fe(&x.to_string()), x, "roundtrip of {s}");
        }
    }
}
