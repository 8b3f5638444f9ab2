use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntPoly, TruncSeries};
use crate::error::{Error, Result};

/// A rational function `num / den` in canonical form.
///
/// Canonical form: `num` and `den` are coprime over the rationals, the
/// integer content shared by `num` and `den` is 1, and the lowest-degree
/// nonzero coefficient of `den` is positive. Zero is `0 / 1`. Two values are
/// equal exactly when their fields are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: IntPoly,
    den: IntPoly,
}

/// Builds the canonical representative of `num / den`.
pub fn rf_normalize(num: IntPoly, den: IntPoly) -> Result<RatFunc> {
    RatFunc::new(num, den)
}

impl RatFunc {
    pub fn new(num: IntPoly, den: IntPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDivision);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_scalar(&c);
            den = den.div_scalar(&c);
        }
        if den.trailing().is_some_and(Signed::is_negative) {
            num = -num;
            den = -den;
        }
        Ok(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc {
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(IntPoly::one())
    }

    pub fn from_poly(p: IntPoly) -> Self {
        Self::new(p, IntPoly::one()).expect("nonzero denominator")
    }

    pub fn from_integer(c: i64) -> Self {
        Self::from_poly(IntPoly::constant(BigInt::from(c)))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::new(
            IntPoly::constant(q.numer().clone()),
            IntPoly::constant(q.denom().clone()),
        )
        .expect("rational has nonzero denominator")
    }

    pub fn num(&self) -> &IntPoly {
        &self.num
    }

    pub fn den(&self) -> &IntPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    /// The polynomial value when the denominator is a unit scalar dividing
    /// every numerator coefficient.
    pub fn as_polynomial(&self) -> Option<IntPoly> {
        if !self.is_polynomial() {
            return None;
        }
        let d = &self.den.coeffs()[0];
        if self.num.coeffs().iter().all(|c| (c % d).is_zero()) {
            Some(self.num.div_scalar(d))
        } else {
            None
        }
    }

    /// `deg num - deg den`; `None` stands for minus infinity (the zero function).
    pub fn degree(&self) -> Option<i64> {
        let n = self.num.degree()? as i64;
        Some(n - self.den.degree().unwrap() as i64)
    }

    pub fn inv(&self) -> Result<RatFunc> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, e: i32) -> Result<RatFunc> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(k),
            den: base.den.pow(k),
        }
        .renormalized())
    }

    fn renormalized(self) -> RatFunc {
        RatFunc::new(self.num, self.den).expect("nonzero denominator")
    }

    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(q);
        if d.is_zero() {
            return Err(Error::Pole(q.to_string()));
        }
        Ok(self.num.eval(q) / d)
    }

    /// First `order + 1` Taylor coefficients at `t = 0`.
    pub fn series(&self, order: usize) -> Result<TruncSeries> {
        let d0 = self.den.constant_term();
        if d0.is_zero() {
            return Err(Error::PoleAtOrigin);
        }
        // integral recurrence scaled by d0^k keeps everything in Z until the end
        let mut scaled: Vec<BigInt> = Vec::with_capacity(order + 1);
        let mut d0_pow = BigInt::one();
        let mut d0_pows = Vec::with_capacity(order + 1);
        for k in 0..=order {
            d0_pows.push(d0_pow.clone());
            // c_k = (n_k - sum_{j>=1} d_j c_{k-j}) / d0 ; store s_k = c_k * d0^(k+1)
            let mut acc = self.num.coeff(k) * &d0_pow;
            for (j, dj) in self.den.coeffs().iter().enumerate().skip(1).take(k) {
                // c_{k-j} = s_{k-j} / d0^(k-j+1); scale to d0^k
                let s = &scaled[k - j];
                acc -= dj * s * &d0_pows[j - 1];
            }
            scaled.push(acc);
            d0_pow *= &d0;
        }
        let coeffs = scaled
            .into_iter()
            .zip(d0_pows)
            .map(|(s, p)| BigRational::new(s, p * &d0))
            .collect();
        Ok(TruncSeries::new(coeffs))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = self.den.gcd(&rhs.den);
        let (bl, dl) = if g.degree() == Some(0) {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &self.num * &dl + &rhs.num * &bl;
        let den = &self.den * &dl;
        RatFunc::new(num, den).expect("nonzero denominator")
    }
}

impl Sub<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul<&RatFunc> for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        // cross-cancel first to keep degrees small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_exact(&g1).unwrap_or_else(|| self.num.clone());
        let d = rhs.den.div_exact(&g1).unwrap_or_else(|| rhs.den.clone());
        let c = rhs.num.div_exact(&g2).unwrap_or_else(|| rhs.num.clone());
        let b = self.den.div_exact(&g2).unwrap_or_else(|| self.den.clone());
        RatFunc::new(&a * &c, &b * &d).expect("nonzero denominator")
    }
}

impl Div<&RatFunc> for &RatFunc {
    type Output = Result<RatFunc>;
    fn div(self, rhs: &RatFunc) -> Result<RatFunc> {
        if rhs.is_zero() {
            return Err(Error::ZeroDivision);
        }
        Ok(self * &rhs.inv()?)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Add for RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: RatFunc) -> RatFunc {
        &self + &rhs
    }
}

impl Sub for RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: RatFunc) -> RatFunc {
        &self - &rhs
    }
}

impl Mul for RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: RatFunc) -> RatFunc {
        &self * &rhs
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl From<IntPoly> for RatFunc {
    fn from(p: IntPoly) -> Self {
        RatFunc::from_poly(p)
    }
}
