//! Dense univariate polynomials in the infinitesimal `e` over the rationals.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};

/// Default cap on polynomial degree in a `FieldElement`.
pub const DEFAULT_DEGREE_CAP: usize = 512;

static DEGREE_CAP: AtomicUsize = AtomicUsize::new(DEFAULT_DEGREE_CAP);

/// Set the global degree cap for `Q(e)` arithmetic.
pub fn set_degree_cap(cap: usize) {
    DEGREE_CAP.store(cap, Ordering::Relaxed);
}

pub fn degree_cap() -> usize {
    DEGREE_CAP.load(Ordering::Relaxed)
}

pub(crate) fn check_degree(deg: usize) -> Result<()> {
    if deg > degree_cap() {
        Err(Error::ResourceLimit {
            what: format!("polynomial degree {} exceeds cap {}", deg, degree_cap()),
        })
    } else {
        Ok(())
    }
}

/// Coefficients indexed by degree; the leading coefficient is nonzero.
/// The zero polynomial has an empty coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    /// The monomial `e`.
    pub fn epsilon() -> Self {
        Poly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Order at `e = 0`: index of the lowest nonzero coefficient.
    /// `None` for the zero polynomial.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Lowest-degree nonzero coefficient.
    pub fn lowest_coeff(&self) -> Option<&BigRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        Poly::new(out)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Euclidean division: returns `(quotient, remainder)`.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        assert!(!divisor.is_zero(), "polynomial division by zero");
        let mut rem = self.coeffs.clone();
        let dlen = divisor.coeffs.len();
        if rem.len() < dlen {
            return (Poly::zero(), Poly::new(rem));
        }
        let lead = divisor.leading_coeff().unwrap().clone();
        let mut quot = vec![BigRational::zero(); rem.len() - dlen + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dlen - 1] / &lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                let t = &c * d;
                rem[k + j] -= t;
            }
            quot[k] = c;
        }
        (Poly::new(quot), Poly::new(rem))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Scaled so the leading coefficient is 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => Poly::zero(),
            Some(l) => {
                let inv = BigRational::one() / l;
                self.scale(&inv)
            }
        }
    }

    /// Evaluate at a rational argument.
    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Sign of the polynomial for small positive `e`: the sign of the
    /// lowest-degree nonzero coefficient.
    pub fn sign_at_zero_plus(&self) -> i32 {
        match self.lowest_coeff() {
            None => 0,
            Some(c) => {
                if c.is_positive() {
                    1
                } else {
                    -1
                }
            }
        }
    }
}
