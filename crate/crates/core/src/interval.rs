//! Closed intervals and complex boxes with exact rational endpoints.
//!
//! Every inexact quantity in the crate travels as one of these. Endpoints are
//! kept dyadic by [`Interval::round_out`] so that repeated refinement does not
//! blow up denominators.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rat::{self, Q};

/// A real interval `[lo, hi]` certified to contain some real value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Q,
    pub hi: Q,
}

impl Interval {
    pub fn new(lo: Q, hi: Q) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(x: Q) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn zero() -> Self {
        Self::point(Q::zero())
    }

    pub fn around(center: Q, radius: Q) -> Self {
        Interval { lo: &center - &radius, hi: center + radius }
    }

    pub fn width(&self) -> Q {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Q {
        (&self.lo + &self.hi) / rat::q(2)
    }

    pub fn radius(&self) -> Q {
        self.width() / rat::q(2)
    }

    pub fn contains(&self, x: &Q) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.hi.is_negative()
    }

    /// Upper bound of `|x|` over the interval.
    pub fn mag(&self) -> Q {
        let a = self.lo.abs();
        let b = self.hi.abs();
        if a > b {
            a
        } else {
            b
        }
    }

    /// Lower bound of `|x|` over the interval.
    pub fn mig(&self) -> Q {
        if self.contains_zero() {
            Q::zero()
        } else if self.lo.is_positive() {
            self.lo.clone()
        } else {
            -self.hi.clone()
        }
    }

    pub fn abs(&self) -> Interval {
        Interval { lo: self.mig(), hi: self.mag() }
    }

    pub fn scale(&self, k: &Q) -> Interval {
        let a = &self.lo * k;
        let b = &self.hi * k;
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn shift(&self, k: &Q) -> Interval {
        Interval { lo: &self.lo + k, hi: &self.hi + k }
    }

    pub fn sqr(&self) -> Interval {
        let m = self.mag();
        let n = self.mig();
        Interval { lo: &n * &n, hi: &m * &m }
    }

    pub fn powi(&self, e: u32) -> Interval {
        let mut acc = Interval::point(Q::one());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: if self.lo < other.lo { self.lo.clone() } else { other.lo.clone() },
            hi: if self.hi > other.hi { self.hi.clone() } else { other.hi.clone() },
        }
    }

    pub fn intersects(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Outward rounding of both endpoints to multiples of `2^-bits`.
    pub fn round_out(&self, bits: u32) -> Interval {
        Interval { lo: rat::round_down(&self.lo, bits), hi: rat::round_up(&self.hi, bits) }
    }

    /// Enclosure of `1/x`; `None` when the interval contains zero.
    pub fn recip(&self) -> Option<Interval> {
        if self.contains_zero() {
            return None;
        }
        Some(Interval { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    /// Enclosure of `sqrt(x)` for `x >= 0` (negative parts are clamped).
    pub fn sqrt(&self, bits: u32) -> Interval {
        let lo = if self.lo.is_positive() { rat::sqrt_lower(&self.lo, bits) } else { Q::zero() };
        let hi = if self.hi.is_positive() { rat::sqrt_upper(&self.hi, bits) } else { Q::zero() };
        Interval { lo, hi }
    }

    pub fn to_f64(&self) -> f64 {
        rat::to_f64(&self.mid())
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", rat::fmt_rational(&self.lo), rat::fmt_rational(&self.hi))
    }
}

impl<'a> Add<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo + &rhs.lo, hi: &self.hi + &rhs.hi }
    }
}

impl<'a> Sub<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval { lo: &self.lo - &rhs.hi, hi: &self.hi - &rhs.lo }
    }
}

impl<'a> Mul<&'a Interval> for &'a Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        if self.is_point() {
            return rhs.scale(&self.lo);
        }
        if rhs.is_point() {
            return self.scale(&rhs.lo);
        }
        let c = [&self.lo * &rhs.lo, &self.lo * &rhs.hi, &self.hi * &rhs.lo, &self.hi * &rhs.hi];
        let mut lo = c[0].clone();
        let mut hi = c[0].clone();
        for v in &c[1..] {
            if *v < lo {
                lo = v.clone();
            }
            if *v > hi {
                hi = v.clone();
            }
        }
        Interval { lo, hi }
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval { lo: -self.hi.clone(), hi: -self.lo.clone() }
    }
}

/// A complex box `re + i im`, certified to contain some complex value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn new(re: Interval, im: Interval) -> Self {
        ComplexInterval { re, im }
    }

    pub fn real(re: Interval) -> Self {
        ComplexInterval { re, im: Interval::zero() }
    }

    pub fn point(re: Q, im: Q) -> Self {
        ComplexInterval { re: Interval::point(re), im: Interval::point(im) }
    }

    pub fn conj(&self) -> Self {
        ComplexInterval { re: self.re.clone(), im: -&self.im }
    }

    /// Enclosure of `|z|^2`.
    pub fn norm_sq(&self) -> Interval {
        &self.re.sqr() + &self.im.sqr()
    }

    /// Enclosure of `|z|`.
    pub fn abs(&self, bits: u32) -> Interval {
        self.norm_sq().sqrt(bits)
    }

    pub fn scale(&self, k: &Q) -> Self {
        ComplexInterval { re: self.re.scale(k), im: self.im.scale(k) }
    }

    pub fn shift(&self, k: &Q) -> Self {
        ComplexInterval { re: self.re.shift(k), im: self.im.clone() }
    }

    pub fn round_out(&self, bits: u32) -> Self {
        ComplexInterval { re: self.re.round_out(bits), im: self.im.round_out(bits) }
    }

    /// Largest half-width of the two components.
    pub fn radius(&self) -> Q {
        let a = self.re.radius();
        let b = self.im.radius();
        if a > b {
            a
        } else {
            b
        }
    }

    pub fn powi(&self, e: u32) -> Self {
        let mut acc = ComplexInterval::point(Q::one(), Q::zero());
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Display for ComplexInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + i{}", self.re, self.im)
    }
}

impl<'a> Add<&'a ComplexInterval> for &'a ComplexInterval {
    type Output = ComplexInterval;
    fn add(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a ComplexInterval> for &'a ComplexInterval {
    type Output = ComplexInterval;
    fn sub(self, rhs: &ComplexInterval) -> ComplexInterval {
        ComplexInterval { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a ComplexInterval> for &'a ComplexInterval {
    type Output = ComplexInterval;
    fn mul(self, rhs: &ComplexInterval) -> ComplexInterval {
        let re = &(&self.re * &rhs.re) - &(&self.im * &rhs.im);
        let im = &(&self.re * &rhs.im) + &(&self.im * &rhs.re);
        ComplexInterval { re, im }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{q, qf};

    #[test]
    fn arithmetic_encloses() {
        let a = Interval::new(q(-1), q(2));
        let b = Interval::new(q(3), q(4));
        let p = &a * &b;
        assert_eq!(p, Interval::new(q(-4), q(8)));
        assert_eq!((&a - &b), Interval::new(q(-5), q(-1)));
        assert_eq!(a.sqr(), Interval::new(q(0), q(4)));
        assert!(a.recip().is_none());
        assert_eq!(b.recip().unwrap(), Interval::new(qf(1, 4), qf(1, 3)));
    }

    #[test]
    fn complex_norm() {
        let z = ComplexInterval::point(q(3), q(4));
        assert_eq!(z.norm_sq(), Interval::point(q(25)));
        let w = &z * &z.conj();
        assert_eq!(w.re, Interval::point(q(25)));
        assert_eq!(w.im, Interval::point(q(0)));
    }
}
