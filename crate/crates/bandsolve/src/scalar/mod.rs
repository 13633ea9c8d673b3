//! Scalar fields the solver is generic over.
//!
//! - `f32` / `f64`: a pivot is zero when its magnitude is below `epsilon`.
//! - [`Rational`]: exact rationals, zero means exactly zero.
//! - [`RationalFunction`]: `Q(s)`, the field used once a pivot has been
//!   replaced by the indeterminate `s`.

mod poly;
mod ratfunc;
mod rational;
mod zpoly;

use std::fmt;
use std::ops::{Div, Neg, Sub};

use num_traits::{One, Zero};

pub use poly::Polynomial;
pub use ratfunc::RationalFunction;
pub use rational::{parse_rational, rational_from_f64, rational_to_f64, Rational};

/// Field operations needed by the band recurrences.
pub trait Scalar:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Div<Output = Self>
{
    /// Exact kinds never consult `epsilon`.
    const EXACT: bool;

    /// Whether a pivot with this value must be treated as zero.
    fn is_rescue_zero(&self, epsilon: f64) -> bool;

    /// Embeds an exact rational (rounded for the float kinds).
    fn from_rational(q: &Rational) -> Self;

    /// `self -= a * b`
    fn sub_product(&mut self, a: &Self, b: &Self) {
        let v = std::mem::replace(self, Self::zero());
        *self = v - a.clone() * b.clone();
    }

    /// `self /= d`
    fn div_by(&mut self, d: &Self) {
        let v = std::mem::replace(self, Self::zero());
        *self = v / d.clone();
    }
}

/// Pivot zero test: `|x| < epsilon` for floats, `x == 0` for exact kinds.
pub fn is_rescue_zero<T: Scalar>(x: &T, epsilon: f64) -> bool {
    x.is_rescue_zero(epsilon)
}

macro_rules! float_scalar {
    ($t:ty) => {
        impl Scalar for $t {
            const EXACT: bool = false;

            fn is_rescue_zero(&self, epsilon: f64) -> bool {
                // NaN compares false, so it is not reported as a zero pivot.
                f64::from(*self).abs() < epsilon
            }

            fn from_rational(q: &Rational) -> Self {
                rational_to_f64(q) as $t
            }

            #[inline]
            fn sub_product(&mut self, a: &Self, b: &Self) {
                *self -= a * b;
            }

            #[inline]
            fn div_by(&mut self, d: &Self) {
                *self /= d;
            }
        }
    };
}

float_scalar!(f32);
float_scalar!(f64);

impl Scalar for Rational {
    const EXACT: bool = true;

    fn is_rescue_zero(&self, _epsilon: f64) -> bool {
        self.is_zero()
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn sub_product(&mut self, a: &Self, b: &Self) {
        if !a.is_zero() && !b.is_zero() {
            *self -= a * b;
        }
    }

    fn div_by(&mut self, d: &Self) {
        *self /= d;
    }
}
