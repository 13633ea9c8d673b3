use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::zpoly::{self, ZPoly};
use super::{Polynomial, Rational, Scalar};
use crate::error::{Error, Result};

/// Quotient of two polynomials in the rescue indeterminate `s`.
///
/// Stored over the integers and always canonical: numerator and denominator
/// are coprime, their coefficients share no common factor and the leading
/// coefficient of the denominator is positive. Structural equality is
/// therefore field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: ZPoly,
    den: ZPoly,
}

impl RationalFunction {
    /// Builds `num / den` in canonical form.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        let (n, ln) = zpoly::from_rational_poly(&num);
        let (d, ld) = zpoly::from_rational_poly(&den);
        Ok(Self::reduce(zpoly::scale(&n, &ld), zpoly::scale(&d, &ln)))
    }

    /// Removes the polynomial gcd, then normalizes.
    fn reduce(num: ZPoly, den: ZPoly) -> Self {
        if num.is_empty() {
            return Self::zero();
        }
        let g = zpoly::gcd(&num, &den);
        if zpoly::degree(&g) == Some(0) {
            Self::normalize(num, den)
        } else {
            Self::normalize(zpoly::div_exact(&num, &g), zpoly::div_exact(&den, &g))
        }
    }

    /// Divides out the joint content and fixes the sign, assuming `num` and
    /// `den` are already coprime over `Q`.
    fn normalize(mut num: ZPoly, mut den: ZPoly) -> Self {
        debug_assert!(!den.is_empty());
        if num.is_empty() {
            return Self::zero();
        }
        let c = zpoly::joint_content(&num, &den);
        if !c.is_one() {
            num = zpoly::div_exact_int(&num, &c);
            den = zpoly::div_exact_int(&den, &c);
        }
        if den.last().is_some_and(Signed::is_negative) {
            num = zpoly::neg(&num);
            den = zpoly::neg(&den);
        }
        Self { num, den }
    }

    pub fn constant(c: Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let (n, d) = c.into_raw();
        Self {
            num: vec![n],
            den: vec![d],
        }
    }

    /// The rescue symbol `s`.
    pub fn indeterminate() -> Self {
        Self {
            num: vec![BigInt::zero(), BigInt::one()],
            den: vec![BigInt::one()],
        }
    }

    /// Numerator scaled so that [`Self::denominator`] is monic.
    pub fn numerator(&self) -> Polynomial {
        zpoly::to_rational_poly(&self.num, self.den_lead())
    }

    /// Monic denominator.
    pub fn denominator(&self) -> Polynomial {
        zpoly::to_rational_poly(&self.den, self.den_lead())
    }

    fn den_lead(&self) -> &BigInt {
        self.den.last().expect("nonzero denominator")
    }

    /// `Some(c)` when the function does not depend on `s`.
    pub fn as_constant(&self) -> Option<Rational> {
        (self.num.len() <= 1 && self.den.len() == 1).then(|| self.constant_ratio())
    }

    fn constant_ratio(&self) -> Rational {
        match self.num.first() {
            Some(n) => Rational::new(n.clone(), self.den[0].clone()),
            None => Rational::zero(),
        }
    }

    /// Value at `t`, or `None` at a pole.
    pub fn eval(&self, t: &Rational) -> Option<Rational> {
        let d = zpoly::eval(&self.den, t);
        (!d.is_zero()).then(|| zpoly::eval(&self.num, t) / d)
    }

    /// Substitutes `s := 0`.
    pub fn eval_at_zero(&self) -> Result<Rational> {
        if self.den[0].is_zero() {
            return Err(Error::PoleAtZero);
        }
        Ok(self.constant_ratio())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inverse = rhs.recip()?;
        Ok(self * &inverse)
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZeroFunction);
        }
        let (num, den) = (self.den.clone(), self.num.clone());
        Ok(if den.last().is_some_and(Signed::is_negative) {
            Self {
                num: zpoly::neg(&num),
                den: zpoly::neg(&den),
            }
        } else {
            Self { num, den }
        })
    }
}

impl Zero for RationalFunction {
    fn zero() -> Self {
        Self {
            num: Vec::new(),
            den: vec![BigInt::one()],
        }
    }

    fn is_zero(&self) -> bool {
        self.num.is_empty()
    }
}

impl One for RationalFunction {
    fn one() -> Self {
        Self::constant(Rational::one())
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        Self::constant(c)
    }
}

impl<'a> Add<&'a RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    /// Uses `g = gcd(d1, d2)` so only `gcd(t, g)` has to be removed afterwards.
    fn add(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let g = zpoly::gcd(&self.den, &rhs.den);
        if zpoly::degree(&g) == Some(0) {
            let num = zpoly::add(
                &zpoly::mul(&self.num, &rhs.den),
                &zpoly::mul(&rhs.num, &self.den),
            );
            return RationalFunction::normalize(num, zpoly::mul(&self.den, &rhs.den));
        }
        let d1 = zpoly::div_exact(&self.den, &g);
        let d2 = zpoly::div_exact(&rhs.den, &g);
        let t = zpoly::add(&zpoly::mul(&self.num, &d2), &zpoly::mul(&rhs.num, &d1));
        if t.is_empty() {
            return RationalFunction::zero();
        }
        let h = zpoly::gcd(&t, &g);
        if zpoly::degree(&h) == Some(0) {
            RationalFunction::normalize(t, zpoly::mul(&d1, &rhs.den))
        } else {
            RationalFunction::normalize(
                zpoly::div_exact(&t, &h),
                zpoly::mul(&d1, &zpoly::div_exact(&rhs.den, &h)),
            )
        }
    }
}

impl<'a> Sub<&'a RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    fn sub(self, rhs: &'a RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    /// Cancels `gcd(n1, d2)` and `gcd(n2, d1)` before multiplying, so only the
    /// integer content is left to remove.
    fn mul(self, rhs: &'a RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let (n1, d2) = cancel(&self.num, &rhs.den);
        let (n2, d1) = cancel(&rhs.num, &self.den);
        RationalFunction::normalize(zpoly::mul(&n1, &n2), zpoly::mul(&d1, &d2))
    }
}

fn cancel(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly) {
    let g = zpoly::gcd(a, b);
    if zpoly::degree(&g) == Some(0) {
        (a.clone(), b.clone())
    } else {
        (zpoly::div_exact(a, &g), zpoly::div_exact(b, &g))
    }
}

impl<'a> Div<&'a RationalFunction> for &RationalFunction {
    type Output = RationalFunction;

    /// Panics on division by the zero function; see [`RationalFunction::checked_div`].
    fn div(self, rhs: &'a RationalFunction) -> RationalFunction {
        self.checked_div(rhs)
            .expect("division by the zero rational function")
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;

    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: zpoly::neg(&self.num),
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

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a RationalFunction> for RationalFunction {
            type Output = RationalFunction;
            fn $method(self, rhs: &'a RationalFunction) -> RationalFunction {
                (&self).$method(rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Scalar for RationalFunction {
    const EXACT: bool = true;

    fn is_rescue_zero(&self, _epsilon: f64) -> bool {
        self.is_zero()
    }

    fn from_rational(q: &Rational) -> Self {
        Self::constant(q.clone())
    }

    fn sub_product(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        *self = &*self - &(a * b);
    }

    fn div_by(&mut self, d: &Self) {
        *self = &*self / d;
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = (self.numerator(), self.denominator());
        if den.is_one() {
            return write!(f, "{num}");
        }
        let wrap = |p: &Polynomial| {
            let text = p.to_string();
            if text.contains([' ', '*', '/']) {
                format!("({text})")
            } else {
                text
            }
        };
        write!(f, "{}/{}", wrap(&num), wrap(&den))
    }
}
