//! Integer-coefficient polynomials backing [`super::RationalFunction`].
//!
//! Keeping numerator and denominator over `Z` means products and sums need no
//! per-coefficient gcd; the content is removed once per field operation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Polynomial, Rational};

/// Lowest degree first, no trailing zeros.
pub(super) type ZPoly = Vec<BigInt>;

pub(super) fn trim(mut p: ZPoly) -> ZPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub(super) fn degree(p: &[BigInt]) -> Option<usize> {
    p.len().checked_sub(1)
}

pub(super) fn mul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    if a.len() == 1 {
        return scale(b, &a[0]);
    }
    if b.len() == 1 {
        return scale(a, &b[0]);
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub(super) fn add(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o += s;
    }
    trim(out)
}

pub(super) fn scale(p: &[BigInt], c: &BigInt) -> ZPoly {
    if c.is_zero() {
        return Vec::new();
    }
    p.iter().map(|x| x * c).collect()
}

pub(super) fn neg(p: &[BigInt]) -> ZPoly {
    p.iter().map(|x| -x).collect()
}

fn content(p: &[BigInt]) -> BigInt {
    joint_content(p, &[])
}

/// Non-negative gcd of all coefficients of `a` and `b`; zero if both are zero.
pub(super) fn joint_content(a: &[BigInt], b: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in a.iter().chain(b) {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

pub(super) fn div_exact_int(p: &[BigInt], c: &BigInt) -> ZPoly {
    p.iter().map(|x| x / c).collect()
}

fn primitive(p: &[BigInt]) -> ZPoly {
    let g = content(p);
    let mut out = if g.is_one() {
        p.to_vec()
    } else {
        div_exact_int(p, &g)
    };
    if out.last().is_some_and(Signed::is_negative) {
        out = neg(&out);
    }
    out
}

/// Quotient of `a` by a divisor `d` known to divide it in `Z[s]`.
pub(super) fn div_exact(a: &[BigInt], d: &[BigInt]) -> ZPoly {
    let dd = degree(d).expect("division by the zero polynomial");
    let Some(da) = degree(a).filter(|&x| x >= dd) else {
        return Vec::new();
    };
    let lead = &d[dd];
    let mut rem = a.to_vec();
    let mut quot = vec![BigInt::zero(); da - dd + 1];
    for shift in (0..=da - dd).rev() {
        let c = &rem[shift + dd] / lead;
        if c.is_zero() {
            continue;
        }
        for (j, dc) in d.iter().enumerate() {
            rem[shift + j] -= &c * dc;
        }
        quot[shift] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
    trim(quot)
}

/// `lead^(deg a - deg b + 1) * a mod b` (pseudo-remainder).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = &b[db];
    let mut rem = a.to_vec();
    while let Some(dr) = degree(&rem).filter(|&x| x >= db) {
        let c = rem[dr].clone();
        rem = rem.iter().map(|x| x * lead).collect();
        for (j, bc) in b.iter().enumerate() {
            rem[dr - db + j] -= &c * bc;
        }
        rem = trim(rem);
    }
    rem
}

/// Primitive gcd with positive leading coefficient; `[1]` when coprime over `Q`.
/// Neither argument may be zero.
pub(super) fn gcd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    match (degree(a), degree(b)) {
        (Some(0), _) | (_, Some(0)) | (None, _) | (_, None) => return vec![BigInt::one()],
        (Some(1), _) => return gcd_linear(a, b),
        (_, Some(1)) => return gcd_linear(b, a),
        _ => {}
    }
    let (mut x, mut y) = (primitive(a), primitive(b));
    if degree(&x) < degree(&y) {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_empty() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = primitive(&r);
    }
    if degree(&x) == Some(0) {
        vec![BigInt::one()]
    } else {
        primitive(&x)
    }
}

/// Root test: `c1 s + c0` divides `p` iff `sum p_k (-c0)^k c1^(d-k) = 0`.
fn gcd_linear(linear: &[BigInt], p: &[BigInt]) -> ZPoly {
    let root_num = -&linear[0];
    let root_den = &linear[1];
    let mut coeffs = p.iter().rev();
    let mut acc = coeffs.next().cloned().unwrap_or_default();
    let mut den_pow = root_den.clone();
    for c in coeffs {
        acc = acc * &root_num + c * &den_pow;
        den_pow *= root_den;
    }
    if acc.is_zero() {
        primitive(linear)
    } else {
        vec![BigInt::one()]
    }
}

pub(super) fn eval(p: &[BigInt], t: &Rational) -> Rational {
    p.iter().rev().fold(Rational::zero(), |acc, c| {
        acc * t + Rational::from_integer(c.clone())
    })
}

/// Clears denominators: returns `(q, l)` with `p = q / l` and `l > 0`.
pub(super) fn from_rational_poly(p: &Polynomial) -> (ZPoly, BigInt) {
    let l = p
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let q = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect();
    (q, l)
}

pub(super) fn to_rational_poly(p: &[BigInt], divisor: &BigInt) -> Polynomial {
    Polynomial::new(
        p.iter()
            .map(|c| Rational::new(c.clone(), divisor.clone()))
            .collect(),
    )
}
