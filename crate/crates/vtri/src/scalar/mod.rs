//! The scalar layer: exact arithmetic in the ordered field `R = Q(e)` with
//! convex subring `V` (finite elements), maximal ideal `m` (infinitesimals),
//! residue field `k = Q`, and the standard part map `st`.

mod field;
mod parse;
mod poly;

pub use field::{FieldElement, ScalarClass, Valuation};
pub use parse::{parse_scalar, parse_scalar_at};
pub use poly::{degree_cap, set_degree_cap, Poly, DEFAULT_DEGREE_CAP};

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use std::fmt::{Debug, Display};
use std::hash::Hash;

/// Exact ordered-field scalar, implemented by `Q` (the residue field) and
/// `Q(e)`. All geometric machinery is generic over this trait so the same
/// code runs on both levels of the standard part map.
pub trait Scalar: Clone + Ord + Eq + Hash + Debug + Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    fn from_ratio(n: i64, d: i64) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Division; panics on zero divisor (callers check pivots).
    fn div(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl Scalar for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(n.into())
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        BigRational::new(n.into(), d.into())
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div(&self, other: &Self) -> Self {
        assert!(!Zero::is_zero(other), "division by zero");
        self / other
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
}

impl Scalar for FieldElement {
    fn zero() -> Self {
        FieldElement::zero()
    }
    fn one() -> Self {
        FieldElement::one()
    }
    fn from_int(n: i64) -> Self {
        FieldElement::from_int(n)
    }
    fn from_ratio(n: i64, d: i64) -> Self {
        FieldElement::from_ratio(n, d)
    }
    fn add(&self, other: &Self) -> Self {
        FieldElement::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        FieldElement::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElement::mul(self, other)
    }
    fn neg(&self) -> Self {
        FieldElement::neg(self)
    }
    fn div(&self, other: &Self) -> Self {
        FieldElement::div(self, other).expect("division by zero")
    }
    fn is_zero(&self) -> bool {
        FieldElement::is_zero(self)
    }
    fn abs(&self) -> Self {
        FieldElement::abs(self)
    }
}

/// Three-way comparison exposed with the sign convention of the ordered field.
pub fn compare<T: Scalar>(a: &T, b: &T) -> i32 {
    match a.cmp(b) {
        std::cmp::Ordering::Less => -1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Greater => 1,
    }
}
