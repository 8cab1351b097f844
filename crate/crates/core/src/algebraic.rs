//! Real algebraic numbers given by an annihilating polynomial plus a
//! refinable enclosure.
//!
//! The polynomial need not be minimal: it only has to vanish at the value.
//! Exact comparisons against rationals shift the polynomial so that the
//! candidate becomes the root 0, strip that root, and use the Cauchy lower
//! bound on the remaining roots: once the enclosure is narrower than that
//! bound the value must equal the candidate.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::interval::Interval;
use crate::poly::Poly;
use crate::rat::{self, Q};

/// Refinable enclosure: the returned interval must contain the value and its
/// width must tend to zero as `bits` grows.
pub type Enclosure = Arc<dyn Fn(u32) -> Interval + Send + Sync>;

const FIRST_BITS: u32 = 48;
const MAX_BITS: u32 = 1 << 16;

#[derive(Clone)]
pub struct RealAlg {
    poly: Poly,
    enclose: Enclosure,
}

impl fmt::Debug for RealAlg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RealAlg({} ~ {})", self.poly, (self.enclose)(FIRST_BITS))
    }
}

impl RealAlg {
    /// `poly` must vanish at the value enclosed by `enclose`.
    pub fn new(poly: Poly, enclose: Enclosure) -> Self {
        debug_assert!(!poly.is_zero());
        RealAlg { poly: poly.squarefree_part(), enclose }
    }

    pub fn rational(x: Q) -> Self {
        let p = Poly::new(vec![-x.clone(), Q::one()]);
        RealAlg { poly: p, enclose: Arc::new(move |_| Interval::point(x.clone())) }
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn enclose(&self, bits: u32) -> Interval {
        (self.enclose)(bits)
    }

    /// The value if the annihilating polynomial is linear.
    pub fn as_rational(&self) -> Option<Q> {
        (self.poly.degree() == 1).then(|| -self.poly.coeff(0) / self.poly.coeff(1))
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, q: &Q) -> Ordering {
        if let Some(v) = self.as_rational() {
            return v.cmp(q);
        }
        let mut bits = FIRST_BITS;
        for _ in 0..2 {
            let iv = self.enclose(bits);
            if iv.lo > *q {
                return Ordering::Greater;
            }
            if iv.hi < *q {
                return Ordering::Less;
            }
            bits *= 2;
        }
        let shifted = self.poly.shift(q);
        let sep = if shifted.coeff(0).is_zero() {
            let rest = shifted.strip_zero_roots();
            if rest.degree() == 0 {
                return Ordering::Equal;
            }
            Some(rest.nonzero_root_lower_bound())
        } else {
            None
        };
        loop {
            let iv = self.enclose(bits);
            if iv.lo > *q {
                return Ordering::Greater;
            }
            if iv.hi < *q {
                return Ordering::Less;
            }
            if let Some(b) = &sep {
                if &iv.hi - q < *b && q - &iv.lo < *b {
                    return Ordering::Equal;
                }
            }
            assert!(bits < MAX_BITS, "enclosure failed to converge");
            bits *= 2;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.cmp_rational(&Q::zero()) == Ordering::Equal
    }

    pub fn signum(&self) -> i32 {
        match self.cmp_rational(&Q::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        if let Some(v) = self.as_rational() {
            return rat::floor(&v);
        }
        let mut bits = FIRST_BITS;
        loop {
            let iv = self.enclose(bits);
            let a = rat::floor(&iv.lo);
            let b = rat::floor(&iv.hi);
            if a == b {
                return a;
            }
            if &b - &a == BigInt::one() {
                let n = Q::from_integer(b.clone());
                return match self.cmp_rational(&n) {
                    Ordering::Less => a,
                    _ => b,
                };
            }
            assert!(bits < MAX_BITS, "enclosure failed to converge");
            bits *= 2;
        }
    }

    /// Replaces the value by a rational when it is one.
    pub fn try_collapse(&self) -> Option<Q> {
        if let Some(v) = self.as_rational() {
            return Some(v);
        }
        let ints = self.poly.primitive_integer();
        let lc = Q::from_integer(ints.last().cloned().unwrap_or_else(BigInt::one).abs());
        let tol = Q::one() / (&lc * rat::q(4));
        let mut bits = FIRST_BITS;
        let iv = loop {
            let iv = self.enclose(bits);
            if iv.width() < tol || bits >= 4096 {
                break iv;
            }
            bits *= 2;
        };
        let n = rat::floor(&(iv.mid() * &lc + rat::qf(1, 2)));
        let cand = Q::from_integer(n) / &lc;
        if !self.poly.eval(&cand).is_zero() {
            return None;
        }
        (self.cmp_rational(&cand) == Ordering::Equal).then_some(cand)
    }

    pub fn neg(&self) -> RealAlg {
        let e = self.enclose.clone();
        RealAlg { poly: self.poly.scale_arg(&-Q::one()), enclose: Arc::new(move |b| -&e(b)) }
    }

    pub fn add_rational(&self, q: &Q) -> RealAlg {
        let e = self.enclose.clone();
        let qq = q.clone();
        RealAlg { poly: self.poly.shift(&-q.clone()), enclose: Arc::new(move |b| e(b).shift(&qq)) }
    }

    pub fn mul_rational(&self, q: &Q) -> RealAlg {
        if q.is_zero() {
            return RealAlg::rational(Q::zero());
        }
        let e = self.enclose.clone();
        let qq = q.clone();
        RealAlg { poly: self.poly.scale_arg(&q.recip()), enclose: Arc::new(move |b| e(b).scale(&qq)) }
    }

    pub fn add(&self, other: &RealAlg) -> RealAlg {
        if let Some(v) = other.as_rational() {
            return self.add_rational(&v);
        }
        if let Some(v) = self.as_rational() {
            return other.add_rational(&v);
        }
        let poly = sum_poly(&self.poly, &other.poly);
        let (ea, eb) = (self.enclose.clone(), other.enclose.clone());
        RealAlg::new(poly, Arc::new(move |b| (&ea(b) + &eb(b)).round_out(b + 8)))
    }

    pub fn sub(&self, other: &RealAlg) -> RealAlg {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RealAlg) -> RealAlg {
        if let Some(v) = other.as_rational() {
            return self.mul_rational(&v);
        }
        if let Some(v) = self.as_rational() {
            return other.mul_rational(&v);
        }
        let poly = product_poly(&self.poly, &other.poly);
        let (ea, eb) = (self.enclose.clone(), other.enclose.clone());
        RealAlg::new(poly, Arc::new(move |b| (&ea(b) * &eb(b)).round_out(b + 8)))
    }
}

/// Polynomial whose roots are all sums `a + b` of roots of `p` and `q`.
pub fn sum_poly(p: &Poly, q: &Poly) -> Poly {
    let dp = p.degree();
    let dq = q.degree();
    let pneg = p.scale_arg(&-Q::one());
    let pts: Vec<(Q, Q)> = (0..=dp * dq)
        .map(|k| {
            let t = rat::q(k as i64);
            // p(t - y) = pneg(y - t)
            let a = pneg.shift(&-t.clone());
            (t, a.resultant(q))
        })
        .collect();
    Poly::interpolate(&pts)
}

/// Polynomial whose roots are all products `a b` of roots of `p` and `q`.
pub fn product_poly(p: &Poly, q: &Poly) -> Poly {
    let dp = p.degree();
    let dq = q.degree();
    let pts: Vec<(Q, Q)> = (0..=dp * dq)
        .map(|k| {
            let t = rat::q(k as i64 + 1);
            // y^dp p(t / y)
            let mut c = vec![Q::zero(); dp + 1];
            let mut tp = Q::one();
            for i in 0..=dp {
                c[dp - i] = p.coeff(i) * &tp;
                tp *= &t;
            }
            (t, Poly::new(c).resultant(q))
        })
        .collect();
    Poly::interpolate(&pts)
}
