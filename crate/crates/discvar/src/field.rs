//! Coefficient fields for the polynomial layer.
//!
//! Everything symbolic in this crate runs over an exact field: the rationals
//! for the main pipeline, the rational-function field in one parameter for
//! the 1-orbit systems. `Field` is the small interface both provide.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exact arbitrary-precision rational scalar. Always reduced, denominator
/// positive, arithmetic never rounds.
pub type Rat = num_rational::BigRational;

/// Build a rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Build a rational from an integer.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// An exact coefficient field.
///
/// Arithmetic is by reference. `from_rat` is the embedding of the prime
/// field; integer constants, Kronecker deltas and parsed literals enter
/// through it.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, rhs: &Self) -> Self;
    fn sub_ref(&self, rhs: &Self) -> Self;
    fn mul_ref(&self, rhs: &Self) -> Self;
    fn div_ref(&self, rhs: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    fn from_rat(r: &Rat) -> Self;

    /// The factor every coefficient of a basis polynomial is divided by to
    /// bring it to canonical form. Rationals clear to primitive integer form
    /// with positive leading coefficient; other fields normalize monic.
    fn canonical_scale(leading: &Self, all: &[Self]) -> Self;

    /// Recognize a symbol of the coefficient field while parsing ("k" for
    /// the rational-function field). Fields without named generators
    /// return `None`.
    fn parse_symbol(_name: &str) -> Option<Self> {
        None
    }

    /// Cross-scaling factors `(s_work, s_g)` for one pseudo-reduction step,
    /// satisfying `s_work * c = s_g * lc` with `s_work` positive. The
    /// default divides outright; the rationals override this to stay in
    /// integers.
    fn pseudo_scales(c: &Self, lc: &Self) -> (Self, Self) {
        (Self::one(), c.div_ref(lc))
    }

    /// Rough size in bits of the largest integer inside, used by the
    /// Groebner resource limits. `None` when the notion does not apply.
    fn bit_size(&self) -> Option<u64>;

    /// Write the value as a coefficient prefix, parenthesized when it is
    /// not a plain integer, e.g. `2` or `(1/2)` or `(k^2-1)/(k^2+1)`.
    fn fmt_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result;
}

impl Field for Rat {
    fn zero() -> Self {
        <Rat as Zero>::zero()
    }
    fn one() -> Self {
        <Rat as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Rat as Zero>::is_zero(self)
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg_ref(&self) -> Self {
        -self
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }

    /// Content-and-sign scale: dividing through by it leaves integer
    /// coefficients with gcd 1 and a positive leading coefficient.
    fn canonical_scale(leading: &Self, all: &[Self]) -> Self {
        let mut den_lcm = BigInt::one();
        let mut num_gcd = BigInt::zero();
        for c in all {
            den_lcm = den_lcm.lcm(c.denom());
            num_gcd = num_gcd.gcd(c.numer());
        }
        if num_gcd.is_zero() {
            return <Rat as One>::one();
        }
        let mut scale = Rat::new(num_gcd, den_lcm);
        if leading.is_negative() {
            scale = -scale;
        }
        scale
    }

    fn bit_size(&self) -> Option<u64> {
        Some(self.numer().bits().max(self.denom().bits()))
    }

    fn pseudo_scales(c: &Self, lc: &Self) -> (Self, Self) {
        if c.is_integer() && lc.is_integer() {
            let mut g = c.numer().gcd(lc.numer());
            if lc.numer().is_negative() {
                g = -g;
            }
            (
                Rat::from_integer(lc.numer() / &g),
                Rat::from_integer(c.numer() / &g),
            )
        } else {
            (<Rat as One>::one(), c / lc)
        }
    }

    fn fmt_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({}/{})", self.numer(), self.denom())
        }
    }
}

/// Convert a rational to the nearest double.
pub fn rat_to_f64(r: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of truncated parts for extreme values.
        let n = r.numer().to_f64().unwrap_or(f64::INFINITY);
        let d = r.denom().to_f64().unwrap_or(f64::INFINITY);
        n / d
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_scale_clears_fractions() {
        let coeffs = vec![rat(1, 2), rat(1, 2)];
        let s = <Rat as Field>::canonical_scale(&coeffs[0], &coeffs);
        assert_eq!(&coeffs[0] / &s, rat_int(1));
    }

    #[test]
    fn canonical_scale_fixes_sign_and_content() {
        let coeffs = vec![rat_int(-2), rat_int(4)];
        let s = <Rat as Field>::canonical_scale(&coeffs[0], &coeffs);
        assert_eq!(&coeffs[0] / &s, rat_int(1));
        assert_eq!(&coeffs[1] / &s, rat_int(-2));
    }
}
