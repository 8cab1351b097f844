//! Dense univariate polynomials over `Q`, stored lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::interval::{ComplexInterval, Interval};
use crate::rat::{self, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Q>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![Q::one()] }
    }

    pub fn constant(c: Q) -> Self {
        Poly::new(vec![c])
    }

    /// `t`
    pub fn x() -> Self {
        Poly::new(vec![Q::zero(), Q::one()])
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&v| rat::q(v)).collect())
    }

    /// Builds a polynomial from coefficients listed leading term first.
    pub fn from_leading_first(c: &[Q]) -> Self {
        Poly::new(c.iter().rev().cloned().collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Q {
        self.coeffs.get(k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lc();
        Poly::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, k: &Q) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_interval(&self, x: &Interval) -> Interval {
        let mut acc = Interval::zero();
        for c in self.coeffs.iter().rev() {
            acc = (&acc * x).shift(c);
        }
        acc
    }

    pub fn eval_complex_interval(&self, z: &ComplexInterval) -> ComplexInterval {
        let mut acc = ComplexInterval::point(Q::zero(), Q::zero());
        for c in self.coeffs.iter().rev() {
            acc = (&acc * z).shift(c);
        }
        acc
    }

    /// Exact evaluation at the Gaussian rational `re + i im`.
    pub fn eval_complex(&self, re: &Q, im: &Q) -> (Q, Q) {
        let mut ar = Q::zero();
        let mut ai = Q::zero();
        for c in self.coeffs.iter().rev() {
            let nr = &ar * re - &ai * im + c;
            let ni = &ar * im + &ai * re;
            ar = nr;
            ai = ni;
        }
        (ar, ai)
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * rat::q(k as i64)).collect(),
        )
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.coeffs.len() + other.coeffs.len() - 1];
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

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Quotient and remainder; panics on division by the zero polynomial.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.degree();
        let dl = d.lc();
        if r.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut qv = vec![Q::zero(); r.len() - dd];
        for k in (0..qv.len()).rev() {
            let c = &r[k + dd] / &dl;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] -= &c * dc;
                }
            }
            qv[k] = c;
        }
        r.truncate(dd);
        (Poly::new(qv), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == 0
    }

    /// `p / gcd(p, p')`, made monic.
    pub fn squarefree_part(&self) -> Poly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// `p(t + s)`
    pub fn shift(&self, s: &Q) -> Poly {
        // Horner in the polynomial ring.
        let lin = Poly::new(vec![s.clone(), Q::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// `p(k t)`
    pub fn scale_arg(&self, k: &Q) -> Poly {
        let mut pw = Q::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pw);
            pw *= k;
        }
        Poly::new(out)
    }

    /// `t^n p(1/t)` with `n = deg p`.
    pub fn reversed(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly::new(c)
    }

    /// True when `p` equals `± t^n p(1/t)`.
    pub fn is_reciprocal(&self) -> bool {
        let r = self.reversed();
        r.degree() == self.degree() && (r == *self || r == self.neg())
    }

    /// Multiplicity of the root 0.
    pub fn zero_multiplicity(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// `p / t^k` where `k` is the multiplicity of the root 0.
    pub fn strip_zero_roots(&self) -> Poly {
        let k = self.zero_multiplicity();
        Poly::new(self.coeffs[k..].to_vec())
    }

    /// Primitive integer polynomial with positive leading coefficient and the
    /// same roots.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        let den = rat::common_denominator(self.coeffs.iter());
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let mut out: Vec<BigInt> = ints.iter().map(|v| v / &g).collect();
        if out.last().is_some_and(|v| v.is_negative()) {
            for v in &mut out {
                *v = -v.clone();
            }
        }
        out
    }

    /// Cauchy bound: every complex root has modulus `< 1 + max |a_k / a_n|`.
    pub fn cauchy_bound(&self) -> Q {
        let l = self.lc().abs();
        let m = self.coeffs[..self.degree()].iter().map(|c| c.abs() / &l).max().unwrap_or_else(Q::zero);
        Q::one() + m
    }

    /// Lower bound on the modulus of every root when `p(0) != 0`.
    pub fn nonzero_root_lower_bound(&self) -> Q {
        let a0 = self.coeff(0).abs();
        debug_assert!(!a0.is_zero());
        let m = self.coeffs[1..].iter().map(|c| c.abs()).max().unwrap_or_else(Q::zero);
        &a0 / (&a0 + m)
    }

    /// Sturm sequence `p, p', -rem(p, p'), ...`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone(), self.derivative()];
        loop {
            let n = seq.len();
            if seq[n - 1].is_zero() {
                seq.pop();
                break;
            }
            let r = seq[n - 2].rem(&seq[n - 1]).neg();
            if r.is_zero() {
                break;
            }
            seq.push(r);
        }
        seq
    }

    /// Number of distinct real roots in `(a, b]`.
    pub fn count_real_roots(seq: &[Poly], a: &Q, b: &Q) -> usize {
        let va = sign_variations(seq.iter().map(|p| p.eval(a)));
        let vb = sign_variations(seq.iter().map(|p| p.eval(b)));
        va.saturating_sub(vb)
    }

    /// Newton-form interpolation through `(x_k, y_k)` with distinct `x_k`.
    pub fn interpolate(points: &[(Q, Q)]) -> Poly {
        let n = points.len();
        let xs: Vec<&Q> = points.iter().map(|p| &p.0).collect();
        let mut dd: Vec<Q> = points.iter().map(|p| p.1.clone()).collect();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (xs[i] - xs[i - j]);
            }
        }
        let mut acc = Poly::zero();
        for k in (0..n).rev() {
            let lin = Poly::new(vec![-xs[k].clone(), Q::one()]);
            acc = acc.mul(&lin).add(&Poly::constant(dd[k].clone()));
        }
        acc
    }

    /// Resultant `res(self, other)` by the Euclidean algorithm.
    pub fn resultant(&self, other: &Poly) -> Q {
        if self.is_zero() || other.is_zero() {
            return Q::zero();
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = Q::one();
        loop {
            let da = a.degree();
            let db = b.degree();
            if db == 0 {
                return acc * num_traits::pow(b.lc(), da);
            }
            let r = a.rem(&b);
            if r.is_zero() {
                return Q::zero();
            }
            let dr = r.degree();
            if (da * db) % 2 == 1 {
                acc = -acc;
            }
            acc *= num_traits::pow(b.lc(), da - dr);
            a = b;
            b = r;
        }
    }

    pub fn to_string_var(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let cs = rat::fmt_rational(&a);
            match k {
                0 => out.push_str(&cs),
                _ => {
                    if !a.is_one() {
                        out.push_str(&cs);
                        out.push('*');
                    }
                    out.push_str(var);
                    if k > 1 {
                        out.push_str(&format!("^{k}"));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_var("x"))
    }
}

fn sign_variations(vals: impl Iterator<Item = Q>) -> usize {
    let mut last: Option<bool> = None;
    let mut n = 0;
    for v in vals {
        if v.is_zero() {
            continue;
        }
        let s = v.is_positive();
        if let Some(l) = last {
            if l != s {
                n += 1;
            }
        }
        last = Some(s);
    }
    n
}

/// Characteristic polynomial `det(t I - A)` of a square rational matrix, by
/// evaluation at `n + 1` integer points and interpolation.
pub fn charpoly_of_matrix(a: &[Vec<Q>]) -> Poly {
    let n = a.len();
    let pts: Vec<(Q, Q)> = (0..=n)
        .map(|k| {
            let t = rat::q(k as i64);
            let m: Vec<Vec<Q>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| if i == j { &t - &a[i][j] } else { -a[i][j].clone() })
                        .collect()
                })
                .collect();
            (t, crate::linalg::det(m))
        })
        .collect();
    Poly::interpolate(&pts)
}
