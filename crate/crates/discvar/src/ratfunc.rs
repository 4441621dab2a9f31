//! The rational-function field in one parameter `k` over the rationals.
//!
//! Coefficient field for the 1-orbit systems, whose equations carry
//! rational functions of the axis parameter. Representation: a reduced
//! fraction of dense univariate polynomials with the denominator monic.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::field::{rat_to_f64, Field, Rat};

/// Dense univariate polynomial in `k` over the rationals. Coefficients
/// ascend by degree; the leading coefficient is never zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KPoly {
    coeffs: Vec<Rat>,
}

impl KPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        KPoly { coeffs }
    }

    pub fn zero() -> Self {
        KPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        KPoly::constant(<Rat as Field>::one())
    }

    pub fn constant(c: Rat) -> Self {
        KPoly::new(vec![c])
    }

    /// The generator `k`.
    pub fn gen() -> Self {
        KPoly::new(vec![<Rat as Field>::zero(), <Rat as Field>::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rat {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(<Rat as Field>::zero)
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(<Rat as Field>::zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        KPoly::new(out)
    }

    pub fn neg(&self) -> Self {
        KPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return KPoly::zero();
        }
        let mut out = vec![<Rat as Field>::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        KPoly::new(out)
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if Zero::is_zero(c) {
            return KPoly::zero();
        }
        KPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Quotient and remainder of Euclidean division.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial in k");
        let mut rem = self.clone();
        let mut quo = vec![<Rat as Field>::zero(); self.coeffs.len()];
        let dlc = d.leading();
        while !rem.is_zero() && rem.degree() >= d.degree() {
            let shift = rem.degree() - d.degree();
            let factor = rem.leading() / &dlc;
            quo[shift] = factor.clone();
            let mut sub = vec![<Rat as Field>::zero(); shift];
            sub.extend(d.coeffs.iter().map(|c| c * &factor));
            rem = rem.sub(&KPoly::new(sub));
        }
        (KPoly::new(quo), rem)
    }

    pub fn gcd(&self, rhs: &Self) -> Self {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        // monic representative
        let lc = a.leading();
        a.scale(&(<Rat as Field>::one() / lc))
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = <Rat as Field>::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }
}

impl fmt::Display for KPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate().rev() {
            if Zero::is_zero(c) {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, "-")?;
            } else {
                write!(f, "+")?;
            }
            let mag_str = if mag.is_integer() {
                mag.numer().to_string()
            } else {
                format!("({}/{})", mag.numer(), mag.denom())
            };
            if e == 0 {
                write!(f, "{mag_str}")?;
            } else {
                if mag_str != "1" {
                    write!(f, "{mag_str}*")?;
                }
                write!(f, "k")?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// Element of the field of rational functions in `k`: a reduced fraction
/// with monic, nonzero denominator.
#[derive(Clone, Debug, PartialEq)]
pub struct RatFunc {
    num: KPoly,
    den: KPoly,
}

impl RatFunc {
    pub fn new(num: KPoly, den: KPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num: KPoly::zero(),
                den: KPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (mut num, r1) = num.div_rem(&g);
        debug_assert!(r1.is_zero());
        let (mut den, r2) = den.div_rem(&g);
        debug_assert!(r2.is_zero());
        let lc = den.leading();
        let inv = <Rat as Field>::one() / lc;
        num = num.scale(&inv);
        den = den.scale(&inv);
        RatFunc { num, den }
    }

    pub fn from_kpoly(p: KPoly) -> Self {
        RatFunc {
            num: p,
            den: KPoly::one(),
        }
    }

    pub fn gen() -> Self {
        RatFunc::from_kpoly(KPoly::gen())
    }

    pub fn numer(&self) -> &KPoly {
        &self.num
    }

    pub fn denom(&self) -> &KPoly {
        &self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree() == 0 && self.den.degree() == 0 || self.num.is_zero()
    }

    /// Exact value at a rational point where the denominator is nonzero.
    pub fn eval(&self, x: &Rat) -> Option<Rat> {
        let d = self.den.eval(x);
        if Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(x) / d)
    }

    /// Value of the limit as `k` goes to infinity; `None` when unbounded.
    pub fn limit_at_infinity(&self) -> Option<Rat> {
        use std::cmp::Ordering::*;
        if self.num.is_zero() {
            return Some(<Rat as Field>::zero());
        }
        match self.num.degree().cmp(&self.den.degree()) {
            Less => Some(<Rat as Field>::zero()),
            Equal => Some(self.num.leading() / self.den.leading()),
            Greater => None,
        }
    }

    /// Degree of growth at infinity: deg(num) - deg(den).
    pub fn infinity_order(&self) -> i64 {
        if self.num.is_zero() {
            return i64::MIN;
        }
        self.num.degree() as i64 - self.den.degree() as i64
    }

    /// Multiply by `k^e` (e may be negative).
    pub fn shift_k(&self, e: i64) -> Self {
        if self.num.is_zero() {
            return self.clone();
        }
        let mut pow = vec![<Rat as Field>::zero(); e.unsigned_abs() as usize];
        pow.push(<Rat as Field>::one());
        let kp = KPoly::new(pow);
        if e >= 0 {
            RatFunc::new(self.num.mul(&kp), self.den.clone())
        } else {
            RatFunc::new(self.num.clone(), self.den.mul(&kp))
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == KPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Field for RatFunc {
    fn zero() -> Self {
        RatFunc::from_kpoly(KPoly::zero())
    }
    fn one() -> Self {
        RatFunc::from_kpoly(KPoly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add_ref(&self, rhs: &Self) -> Self {
        RatFunc::new(
            self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            self.den.mul(&rhs.den),
        )
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_ref(&rhs.neg_ref())
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        RatFunc::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den))
    }
    fn div_ref(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero rational function");
        RatFunc::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }
    fn neg_ref(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn from_rat(r: &Rat) -> Self {
        RatFunc::from_kpoly(KPoly::constant(r.clone()))
    }

    /// Monic normalization: divide through by the leading coefficient.
    fn canonical_scale(leading: &Self, _all: &[Self]) -> Self {
        leading.clone()
    }

    fn parse_symbol(name: &str) -> Option<Self> {
        (name == "k").then(RatFunc::gen)
    }

    fn bit_size(&self) -> Option<u64> {
        let max_bits = |p: &KPoly| {
            p.coeffs()
                .iter()
                .map(|c| c.numer().bits().max(c.denom().bits()))
                .max()
                .unwrap_or(0)
        };
        Some(max_bits(&self.num).max(max_bits(&self.den)))
    }

    fn fmt_coeff(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == KPoly::one() {
            if self.num.degree() == 0 && !self.num.is_zero() {
                return Field::fmt_coeff(&self.num.coeff(0), f);
            }
            if self.num.is_zero() {
                return write!(f, "0");
            }
            return write!(f, "({})", self.num);
        }
        write!(f, "({})/({})", self.num, self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, rat_int};

    fn k() -> RatFunc {
        RatFunc::gen()
    }

    #[test]
    fn reduced_and_monic_denominator() {
        // (2k) / (4k^2 + 4k) = 1/(2k + 2) -> monic: (1/2)/(k+1)
        let num = KPoly::new(vec![rat_int(0), rat_int(2)]);
        let den = KPoly::new(vec![rat_int(0), rat_int(4), rat_int(4)]);
        let f = RatFunc::new(num, den);
        assert_eq!(f.denom().leading(), rat_int(1));
        assert_eq!(f.eval(&rat_int(1)).unwrap(), rat(1, 4));
    }

    #[test]
    fn inverse_product_is_one() {
        let a = k().add_ref(&RatFunc::from_rat(&rat_int(3)));
        let b = k().mul_ref(&k()).sub_ref(&RatFunc::from_rat(&rat(1, 7)));
        let q = a.div_ref(&b);
        let p = b.div_ref(&a);
        assert_eq!(q.mul_ref(&p), Field::one());
    }

    #[test]
    fn limit_at_infinity_cases() {
        let k2p1 = k().mul_ref(&k()).add_ref(&RatFunc::from_rat(&rat_int(1)));
        // k^2/(k^2+1) -> 1
        let f = k().mul_ref(&k()).div_ref(&k2p1);
        assert_eq!(f.limit_at_infinity().unwrap(), rat_int(1));
        // k/(k^2+1) -> 0
        let g = k().div_ref(&k2p1);
        assert_eq!(g.limit_at_infinity().unwrap(), rat_int(0));
        // k^3/(k^2+1) unbounded
        let h = k().pow_k(3).div_ref(&k2p1);
        assert_eq!(h.limit_at_infinity(), None);
    }

    impl RatFunc {
        fn pow_k(&self, e: u32) -> RatFunc {
            let mut acc: RatFunc = Field::one();
            for _ in 0..e {
                acc = acc.mul_ref(self);
            }
            acc
        }
    }

    #[test]
    fn field_cancellation_in_poly() {
        use crate::poly::{parse_poly, MonomialOrder, MultiPoly, VarContext};
        let ctx = VarContext::new(vec!["x"]);
        // (k/(k^2+1))*x * (k^2+1) = k*x
        let p: MultiPoly<RatFunc> =
            parse_poly("(k/(k^2+1))*x", &ctx, MonomialOrder::GrevLex).unwrap();
        let q: MultiPoly<RatFunc> = parse_poly("k^2+1", &ctx, MonomialOrder::GrevLex).unwrap();
        let kx: MultiPoly<RatFunc> = parse_poly("k*x", &ctx, MonomialOrder::GrevLex).unwrap();
        assert_eq!(p.mul(&q), kx);
    }
}
