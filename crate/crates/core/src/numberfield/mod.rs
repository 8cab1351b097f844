//! Exact arithmetic in `K = Q(beta)` with certified embeddings.
//!
//! Elements are coordinate vectors in the power basis `1, beta, ...,
//! beta^(m-1)`. Embeddings are indexed in canonical order: real roots
//! ascending, then complex roots sorted by real part with the root of
//! positive imaginary part immediately followed by its conjugate.

mod roots;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::{self, RealAlg};
use crate::error::{Error, Result};
use crate::interval::{ComplexInterval, Interval};
use crate::linalg;
use crate::poly::{self, Poly};
use crate::rat::{self, Q};

use roots::RootState;

/// How the distinguished root `beta` is chosen among the conjugates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RootSelector {
    /// Real root of largest absolute value (positive on ties), else index 0.
    #[default]
    Auto,
    /// Like `Auto` but fails with `NoRealRoot` when there is no real root.
    LargestReal,
    /// Explicit canonical index.
    Index(usize),
}

struct Inner {
    minpoly: Poly,
    degree: usize,
    r1: usize,
    real: Vec<bool>,
    distinguished: usize,
    /// `beta^(m+k)` for `k = 0..m-1`, in coordinates.
    reduction: Vec<Vec<Q>>,
    power_sums: Vec<Q>,
    roots: Mutex<RootState>,
    levels: Mutex<HashMap<u32, Arc<Vec<ComplexInterval>>>>,
}

/// A number field `Q(beta)`; cheap to clone.
#[derive(Clone)]
pub struct NumberField(Arc<Inner>);

impl fmt::Debug for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NumberField({}, root {})", self.0.minpoly, self.0.distinguished)
    }
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.minpoly == other.0.minpoly && self.0.distinguished == other.0.distinguished)
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// Field from rational coefficients listed from the constant term up.
    pub fn new(coeffs_low_first: &[Q]) -> Result<Self> {
        Self::from_poly(&Poly::new(coeffs_low_first.to_vec()), RootSelector::Auto)
    }

    /// Field from coefficients listed leading term first, constant last.
    pub fn from_leading_first(coeffs: &[Q], selector: RootSelector) -> Result<Self> {
        Self::from_poly(&Poly::from_leading_first(coeffs), selector)
    }

    pub fn from_i64(coeffs_low_first: &[i64]) -> Result<Self> {
        Self::from_poly(&Poly::from_i64(coeffs_low_first), RootSelector::Auto)
    }

    pub fn from_poly(p: &Poly, selector: RootSelector) -> Result<Self> {
        if p.is_zero() || p.degree() == 0 {
            return Err(Error::ZeroDegree);
        }
        if !p.is_squarefree() {
            return Err(Error::NotSquarefree);
        }
        let minpoly = p.monic();
        let m = minpoly.degree();
        let mut st = RootState::isolate(&minpoly)?;
        factor_search(&minpoly, &mut st)?;
        let real = st.real.clone();
        let r1 = real.iter().filter(|r| **r).count();
        let distinguished = match selector {
            RootSelector::Index(i) if i >= m => return Err(Error::RootIndexOutOfRange { index: i, degree: m }),
            RootSelector::Index(i) => i,
            RootSelector::LargestReal if r1 == 0 => return Err(Error::NoRealRoot),
            _ if r1 == 0 => 0,
            _ => {
                let key = |i: usize| {
                    let v = rat::to_f64(&st.centers[i].0);
                    ((v.abs() * 1e9).round() as i64, v > 0.0)
                };
                (0..r1).max_by_key(|&i| key(i)).unwrap_or(0)
            }
        };
        // beta^m = -sum c_k beta^k; higher powers by shifting.
        let mut reduction: Vec<Vec<Q>> = Vec::with_capacity(m);
        let mut cur: Vec<Q> = (0..m).map(|k| -minpoly.coeff(k)).collect();
        for _ in 0..m {
            reduction.push(cur.clone());
            let top = cur[m - 1].clone();
            let mut next = vec![Q::zero(); m];
            for k in (1..m).rev() {
                next[k] = cur[k - 1].clone();
            }
            for k in 0..m {
                next[k] += &top * &reduction[0][k];
            }
            cur = next;
        }
        let inner = Inner {
            minpoly,
            degree: m,
            r1,
            real,
            distinguished,
            reduction,
            power_sums: Vec::new(),
            roots: Mutex::new(st),
            levels: Mutex::new(HashMap::new()),
        };
        let mut field = NumberField(Arc::new(inner));
        let sums: Vec<Q> = {
            let b = field.gen();
            let mut p = field.one();
            (0..2 * m)
                .map(|_| {
                    let t = p.trace();
                    p = &p * &b;
                    t
                })
                .collect()
        };
        Arc::get_mut(&mut field.0).expect("fresh field").power_sums = sums;
        Ok(field)
    }

    pub fn minpoly(&self) -> &Poly {
        &self.0.minpoly
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// `(r1, r2)`.
    pub fn signature(&self) -> (usize, usize) {
        (self.0.r1, (self.0.degree - self.0.r1) / 2)
    }

    pub fn distinguished(&self) -> usize {
        self.0.distinguished
    }

    pub fn is_real(&self, k: usize) -> bool {
        self.0.real[k]
    }

    /// Index of the complex conjugate embedding (itself for real ones).
    pub fn conj_index(&self, k: usize) -> usize {
        if self.0.real[k] {
            k
        } else if (k - self.0.r1).is_multiple_of(2) {
            k + 1
        } else {
            k - 1
        }
    }

    /// Unit rank `r1 + r2 - 1`.
    pub fn unit_rank(&self) -> usize {
        let (r1, r2) = self.signature();
        r1 + r2 - 1
    }

    /// Same field with a different distinguished root.
    pub fn with_distinguished(&self, k: usize) -> Result<Self> {
        if k >= self.degree() {
            return Err(Error::RootIndexOutOfRange { index: k, degree: self.degree() });
        }
        let st = self.0.roots.lock().expect("root cache").clone();
        let mut inner = Inner {
            minpoly: self.0.minpoly.clone(),
            degree: self.0.degree,
            r1: self.0.r1,
            real: self.0.real.clone(),
            distinguished: k,
            reduction: self.0.reduction.clone(),
            power_sums: self.0.power_sums.clone(),
            roots: Mutex::new(st),
            levels: Mutex::new(HashMap::new()),
        };
        inner.distinguished = k;
        Ok(NumberField(Arc::new(inner)))
    }

    /// Certified boxes around all roots, radius `<= 2^-bits`.
    pub fn root_boxes(&self, bits: u32) -> Result<Arc<Vec<ComplexInterval>>> {
        let level = bits.max(32).next_power_of_two();
        if let Some(b) = self.0.levels.lock().expect("root cache").get(&level) {
            return Ok(b.clone());
        }
        let boxes = Arc::new(self.0.roots.lock().expect("root cache").boxes(level)?);
        self.0.levels.lock().expect("root cache").insert(level, boxes.clone());
        Ok(boxes)
    }

    pub fn element(&self, coords: Vec<Q>) -> Result<FieldElement> {
        if coords.len() != self.degree() {
            return Err(Error::DimensionMismatch { expected: self.degree(), got: coords.len() });
        }
        Ok(FieldElement { field: self.clone(), coords })
    }

    pub fn element_i64(&self, coords: &[i64]) -> Result<FieldElement> {
        self.element(coords.iter().map(|&c| rat::q(c)).collect())
    }

    /// Element from a polynomial in `beta`, reduced modulo the minimal polynomial.
    pub fn from_poly_in_beta(&self, p: &Poly) -> FieldElement {
        let r = p.rem(&self.0.minpoly);
        let coords = (0..self.degree()).map(|k| r.coeff(k)).collect();
        FieldElement { field: self.clone(), coords }
    }

    pub fn rational(&self, q: Q) -> FieldElement {
        let mut coords = vec![Q::zero(); self.degree()];
        coords[0] = q;
        FieldElement { field: self.clone(), coords }
    }

    pub fn zero(&self) -> FieldElement {
        self.rational(Q::zero())
    }

    pub fn one(&self) -> FieldElement {
        self.rational(Q::one())
    }

    /// The generator `beta`.
    pub fn gen(&self) -> FieldElement {
        if self.degree() == 1 {
            return self.rational(-self.0.minpoly.coeff(0));
        }
        let mut coords = vec![Q::zero(); self.degree()];
        coords[1] = Q::one();
        FieldElement { field: self.clone(), coords }
    }

    /// `Tr(beta^k)` for `0 <= k < 2m`.
    pub fn power_sum(&self, k: usize) -> Q {
        if let Some(v) = self.0.power_sums.get(k) {
            return v.clone();
        }
        self.gen().pow(k as i64).expect("nonnegative power").trace()
    }

    /// Trace-form Gram matrix `[Tr(beta^(i+j))]` of the power basis.
    pub fn trace_gram(&self) -> Vec<Vec<Q>> {
        let m = self.degree();
        (0..m).map(|i| (0..m).map(|j| self.power_sum(i + j)).collect()).collect()
    }

    /// Trace-dual basis of `basis`: `Tr(b_i d_j) = delta_ij`.
    pub fn dual_basis(&self, basis: &[FieldElement]) -> Result<Vec<FieldElement>> {
        let m = self.degree();
        if basis.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: basis.len() });
        }
        for b in basis {
            self.check(b)?;
        }
        let rows: Vec<Vec<Q>> = basis.iter().map(|b| b.coords.clone()).collect();
        if linalg::rank(&rows) < m {
            return Err(Error::DependentBasis);
        }
        // d_j = sum_k D[k][j] beta^k with sum_k Tr(b_i beta^k) D[k][j] = delta_ij.
        let t: Vec<Vec<Q>> = basis
            .iter()
            .map(|b| (0..m).map(|k| (0..m).map(|l| &b.coords[l] * self.power_sum(l + k)).sum()).collect())
            .collect();
        let inv = linalg::inverse(&t).ok_or(Error::SingularSystem)?;
        Ok((0..m).map(|j| FieldElement { field: self.clone(), coords: (0..m).map(|k| inv[k][j].clone()).collect() }).collect())
    }

    fn check(&self, x: &FieldElement) -> Result<()> {
        if x.field == *self {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn reduce(&self, mut prod: Vec<Q>) -> Vec<Q> {
        let m = self.degree();
        if prod.len() <= m {
            prod.resize(m, Q::zero());
            return prod;
        }
        let mut out: Vec<Q> = prod[..m].to_vec();
        for (k, c) in prod.drain(m..).enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, r) in out.iter_mut().zip(&self.0.reduction[k]) {
                *o += &c * r;
            }
        }
        out
    }
}

/// Bounded factor search: products of conjugation-closed root subsets of
/// size at most `m/2` are rounded to integer polynomials and tested exactly.
fn factor_search(minpoly: &Poly, st: &mut RootState) -> Result<()> {
    let m = minpoly.degree();
    if !(2..=12).contains(&m) || !minpoly.coeffs().iter().all(rat::is_integer) {
        return Ok(());
    }
    let approx: Vec<(f64, f64)> =
        st.centers.iter().map(|(re, im)| (rat::to_f64(re), rat::to_f64(im))).collect();
    let real = st.real.clone();
    for mask in 1u32..(1 << m) {
        let size = mask.count_ones() as usize;
        if size > m / 2 {
            continue;
        }
        // conjugation closed: complex roots come in adjacent pairs
        let closed = (0..m).all(|k| {
            if real[k] || mask >> k & 1 == 0 {
                return true;
            }
            let r1 = real.iter().filter(|r| **r).count();
            let partner = if (k - r1) % 2 == 0 { k + 1 } else { k - 1 };
            mask >> partner & 1 == 1
        });
        if !closed {
            continue;
        }
        let mut c: Vec<(f64, f64)> = vec![(1.0, 0.0)];
        for (k, &(re, im)) in approx.iter().enumerate() {
            if mask >> k & 1 == 0 {
                continue;
            }
            let mut next = vec![(0.0, 0.0); c.len() + 1];
            for (i, &(a, b)) in c.iter().enumerate() {
                next[i + 1].0 += a;
                next[i + 1].1 += b;
                next[i].0 -= a * re - b * im;
                next[i].1 -= a * im + b * re;
            }
            c = next;
        }
        let mut ints = Vec::with_capacity(c.len());
        let mut ok = true;
        for &(re, im) in &c {
            let r = re.round();
            if (re - r).abs() > 1e-6 || im.abs() > 1e-6 || r.abs() > 1e15 {
                ok = false;
                break;
            }
            ints.push(r as i64);
        }
        if !ok {
            continue;
        }
        let f = Poly::from_i64(&ints);
        if f.degree() >= 1 && minpoly.rem(&f).is_zero() {
            return Err(Error::ReducibleDetected(f.to_string()));
        }
    }
    Ok(())
}

/// An element of a [`NumberField`].
#[derive(Clone)]
pub struct FieldElement {
    field: NumberField,
    coords: Vec<Q>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coords == other.coords
    }
}

impl Eq for FieldElement {}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_poly().to_string_var("b"))
    }
}

/// Binary field operation selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary arithmetic.
pub fn arith(op: ArithOp, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    match op {
        ArithOp::Add => a.checked_add(b),
        ArithOp::Sub => a.checked_sub(b),
        ArithOp::Mul => a.checked_mul(b),
        ArithOp::Div => a.checked_div(b),
    }
}

impl FieldElement {
    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn coords(&self) -> &[Q] {
        &self.coords
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coords.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// The value when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<Q> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    pub fn checked_add(&self, o: &FieldElement) -> Result<FieldElement> {
        self.field.check(o)?;
        Ok(self.zip(o, |a, b| a + b))
    }

    pub fn checked_sub(&self, o: &FieldElement) -> Result<FieldElement> {
        self.field.check(o)?;
        Ok(self.zip(o, |a, b| a - b))
    }

    pub fn checked_mul(&self, o: &FieldElement) -> Result<FieldElement> {
        self.field.check(o)?;
        let m = self.coords.len();
        let mut prod = vec![Q::zero(); 2 * m - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coords.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(FieldElement { field: self.field.clone(), coords: self.field.reduce(prod) })
    }

    pub fn checked_div(&self, o: &FieldElement) -> Result<FieldElement> {
        self.field.check(o)?;
        self.checked_mul(&o.inverse()?)
    }

    fn zip(&self, o: &FieldElement, f: impl Fn(&Q, &Q) -> Q) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().zip(&o.coords).map(|(a, b)| f(a, b)).collect() }
    }

    pub fn scale(&self, k: &Q) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| c * k).collect() }
    }

    pub fn add_rational(&self, k: &Q) -> FieldElement {
        let mut c = self.coords.clone();
        c[0] += k;
        FieldElement { field: self.field.clone(), coords: c }
    }

    /// Inverse via the extended Euclidean algorithm modulo the minimal polynomial.
    pub fn inverse(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(q) = self.as_rational() {
            return Ok(self.field.rational(q.recip()));
        }
        let (mut r0, mut r1) = (self.field.0.minpoly.clone(), self.to_poly());
        let (mut s0, mut s1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() > 0 {
            return Err(Error::ReducibleDetected(r0.monic().to_string()));
        }
        Ok(self.field.from_poly_in_beta(&s0.scale(&r0.coeff(0).recip())))
    }

    /// `x^e`; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.field.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Matrix of multiplication by `x`; column `j` holds `x beta^j`.
    pub fn mult_matrix(&self) -> Vec<Vec<Q>> {
        let m = self.field.degree();
        let mut cols = Vec::with_capacity(m);
        let b = self.field.gen();
        let mut cur = self.clone();
        for _ in 0..m {
            cols.push(cur.coords.clone());
            cur = &cur * &b;
        }
        (0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect()
    }

    pub fn trace(&self) -> Q {
        if self.field.0.power_sums.is_empty() {
            let mm = self.mult_matrix();
            return (0..mm.len()).map(|i| mm[i][i].clone()).sum();
        }
        self.coords.iter().enumerate().map(|(k, c)| c * &self.field.0.power_sums[k]).sum()
    }

    pub fn norm(&self) -> Q {
        if let Some(q) = self.as_rational() {
            return num_traits::pow(q, self.field.degree());
        }
        if self.field.degree() == 2 {
            // N(a + b t) = a^2 - c1 a b + c0 b^2 for t^2 + c1 t + c0
            let (a, b) = (&self.coords[0], &self.coords[1]);
            let mp = &self.field.0.minpoly;
            return a * a - mp.coeff(1) * a * b + mp.coeff(0) * b * b;
        }
        linalg::det(self.mult_matrix())
    }

    /// Characteristic polynomial of multiplication by `x` (degree `m`).
    pub fn char_poly(&self) -> Poly {
        poly::charpoly_of_matrix(&self.mult_matrix())
    }

    /// Minimal polynomial over `Q` (squarefree part of the characteristic polynomial).
    pub fn min_poly(&self) -> Poly {
        self.char_poly().squarefree_part()
    }

    pub fn is_algebraic_integer(&self) -> bool {
        if self.coords.iter().all(rat::is_integer) && self.field.0.minpoly.coeffs().iter().all(rat::is_integer) {
            return true;
        }
        self.char_poly().coeffs().iter().all(rat::is_integer)
    }

    pub fn is_unit(&self) -> bool {
        !self.is_zero() && self.is_algebraic_integer() && self.norm().abs().is_one()
    }

    // ---- embeddings ----

    /// Box of radius `<= 2^-bits` containing `sigma_k(x)`.
    pub fn embed(&self, k: usize, bits: u32) -> Result<ComplexInterval> {
        let m = self.field.degree();
        if k >= m {
            return Err(Error::RootIndexOutOfRange { index: k, degree: m });
        }
        if let Some(q) = self.as_rational() {
            return Ok(ComplexInterval::point(q, Q::zero()));
        }
        let target = Q::new(BigInt::one(), BigInt::one() << bits);
        let extra = self.coords.iter().map(|c| rat::log2_abs(c).max(0.0) as u32).max().unwrap_or(0);
        let mut rb = bits + 8 + extra + 2 * m as u32;
        loop {
            let boxes = self.field.root_boxes(rb)?;
            let z = &boxes[k];
            let wb = rb + 16;
            let v = if self.field.is_real(k) {
                ComplexInterval::real(self.eval_real(&z.re, wb))
            } else {
                self.eval_complex(z, wb)
            };
            if v.radius() <= target {
                return Ok(v);
            }
            rb *= 2;
        }
    }

    fn eval_real(&self, x: &Interval, wb: u32) -> Interval {
        let mut acc = Interval::point(self.coords[self.coords.len() - 1].clone());
        for c in self.coords.iter().rev().skip(1) {
            acc = (&acc * x).shift(c).round_out(wb);
        }
        acc
    }

    fn eval_complex(&self, z: &ComplexInterval, wb: u32) -> ComplexInterval {
        let mut acc = ComplexInterval::point(self.coords[self.coords.len() - 1].clone(), Q::zero());
        for c in self.coords.iter().rev().skip(1) {
            acc = (&acc * z).shift(c).round_out(wb);
        }
        acc
    }

    /// Enclosure of a real embedding.
    pub fn embed_real(&self, k: usize, bits: u32) -> Result<Interval> {
        if k < self.field.degree() && !self.field.is_real(k) {
            return Err(Error::ComplexEmbedding(k));
        }
        Ok(self.embed(k, bits)?.re)
    }

    /// Enclosure in the distinguished embedding.
    pub fn embed_distinguished(&self, bits: u32) -> Result<ComplexInterval> {
        self.embed(self.field.distinguished(), bits)
    }

    /// Fast floating approximation of `sigma_k(x)`.
    pub fn approx(&self, k: usize) -> (f64, f64) {
        match self.embed(k, 53) {
            Ok(z) => (z.re.to_f64(), z.im.to_f64()),
            Err(_) => (f64::NAN, f64::NAN),
        }
    }

    /// `sigma_k(x)` as an exact real algebraic number.
    pub fn real_alg(&self, k: usize) -> Result<RealAlg> {
        if !self.field.is_real(k) {
            return Err(Error::ComplexEmbedding(k));
        }
        if let Some(q) = self.as_rational() {
            return Ok(RealAlg::rational(q));
        }
        let x = self.clone();
        Ok(RealAlg::new(self.min_poly(), Arc::new(move |b| x.embed(k, b).expect("embedding").re)))
    }

    /// Exact sign comparison of `sigma_k(x)` with a rational.
    pub fn cmp_rational(&self, k: usize, q: &Q) -> Result<Ordering> {
        if !self.field.is_real(k) {
            return Err(Error::ComplexEmbedding(k));
        }
        if let Some(v) = self.as_rational() {
            return Ok(v.cmp(q));
        }
        // sigma_k is injective, so an irrational value never equals q.
        let mut bits = 32;
        loop {
            let iv = self.embed(k, bits)?.re;
            if iv.lo > *q {
                return Ok(Ordering::Greater);
            }
            if iv.hi < *q {
                return Ok(Ordering::Less);
            }
            bits *= 2;
        }
    }

    /// Exact `floor(sigma_k(x))` for a real embedding.
    pub fn certified_floor(&self, k: usize) -> Result<BigInt> {
        if !self.field.is_real(k) {
            return Err(Error::ComplexEmbedding(k));
        }
        if let Some(v) = self.as_rational() {
            return Ok(rat::floor(&v));
        }
        let mut bits = 32;
        loop {
            let iv = self.embed(k, bits)?.re;
            let a = rat::floor(&iv.lo);
            if a == rat::floor(&iv.hi) {
                return Ok(a);
            }
            bits *= 2;
        }
    }

    /// Nearest integer, ties rounded up: `floor(x + 1/2)`.
    pub fn certified_nint(&self, k: usize) -> Result<BigInt> {
        self.add_rational(&rat::qf(1, 2)).certified_floor(k)
    }

    /// Fractional part `x - floor(x)` as an exact element.
    pub fn certified_frac(&self, k: usize) -> Result<FieldElement> {
        let n = self.certified_floor(k)?;
        Ok(self.add_rational(&-rat::qi(n)))
    }

    /// Distance to the nearest integer as an exact element.
    pub fn certified_dist(&self, k: usize) -> Result<FieldElement> {
        let n = self.certified_nint(k)?;
        let d = self.add_rational(&-rat::qi(n));
        Ok(if d.cmp_rational(k, &Q::zero())? == Ordering::Less { -&d } else { d })
    }

    fn conj_pair(&self, k: usize) -> Result<(usize, Poly)> {
        if self.field.is_real(k) {
            return Err(Error::RealEmbedding(k));
        }
        Ok((self.field.conj_index(k), self.char_poly()))
    }

    /// `Re tau_k(x)` as an exact real algebraic number.
    pub fn re_alg(&self, k: usize) -> Result<RealAlg> {
        let (_, cp) = self.conj_pair(k)?;
        if let Some(q) = self.as_rational() {
            return Ok(RealAlg::rational(q));
        }
        // roots a_i + a_j; Re = s/2
        let s = algebraic::sum_poly(&cp, &cp).scale_arg(&rat::q(2));
        let x = self.clone();
        Ok(RealAlg::new(s, Arc::new(move |b| x.embed(k, b).expect("embedding").re)))
    }

    /// `Im tau_k(x)` as an exact real algebraic number.
    pub fn im_alg(&self, k: usize) -> Result<RealAlg> {
        let (_, cp) = self.conj_pair(k)?;
        if self.as_rational().is_some() {
            return Ok(RealAlg::rational(Q::zero()));
        }
        // roots a_i - a_j, all with the matching negatives; d = 2 i Im.
        let d = algebraic::sum_poly(&cp, &cp.scale_arg(&-Q::one())).strip_zero_roots();
        let mut c = vec![Q::zero(); d.degree() + 2];
        let mut f = Q::one();
        for j in (0..=d.degree()).step_by(2) {
            c[j + 1] = d.coeff(j) * &f;
            f *= rat::q(-4);
        }
        let x = self.clone();
        Ok(RealAlg::new(Poly::new(c), Arc::new(move |b| x.embed(k, b).expect("embedding").im)))
    }

    /// `|sigma_k(x)|^2` as an exact real algebraic number.
    pub fn abs_sq_alg(&self, k: usize) -> Result<RealAlg> {
        if self.field.is_real(k) {
            let sq = self * self;
            return sq.real_alg(k);
        }
        if let Some(q) = self.as_rational() {
            return Ok(RealAlg::rational(&q * &q));
        }
        let cp = self.char_poly();
        let p = algebraic::product_poly(&cp, &cp);
        let x = self.clone();
        Ok(RealAlg::new(p, Arc::new(move |b| x.embed(k, b + 4).expect("embedding").norm_sq().round_out(b + 2))))
    }

    /// Exact comparison of `|sigma_k(x)|^2` with a rational.
    pub fn abs_sq_cmp(&self, k: usize, q: &Q) -> Result<Ordering> {
        if self.field.is_real(k) {
            return (self * self).cmp_rational(k, q);
        }
        for bits in [32u32, 96] {
            let n = self.embed(k, bits)?.norm_sq();
            if n.lo > *q {
                return Ok(Ordering::Greater);
            }
            if n.hi < *q {
                return Ok(Ordering::Less);
            }
        }
        Ok(self.abs_sq_alg(k)?.cmp_rational(q))
    }

    /// Exact componentwise floor of a complex embedding: `(floor Re, floor Im)`.
    pub fn complex_floor(&self, k: usize) -> Result<(BigInt, BigInt)> {
        if self.field.is_real(k) {
            return Err(Error::RealEmbedding(k));
        }
        Ok((self.re_alg(k)?.floor(), self.im_alg(k)?.floor()))
    }

    pub fn to_f64(&self) -> f64 {
        self.approx(self.field.distinguished()).0
    }

    /// Coordinates as `p/q` strings.
    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(rat::fmt_rational).collect()
    }

    /// Integer coordinates as `i64`, if they all fit.
    pub fn integer_coords(&self) -> Option<Vec<i64>> {
        self.coords.iter().map(|c| if rat::is_integer(c) { c.to_integer().to_i64() } else { None }).collect()
    }

    pub fn is_positive_at(&self, k: usize) -> Result<bool> {
        Ok(self.cmp_rational(k, &Q::zero())? == Ordering::Greater)
    }
}

impl<'a> Add<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.checked_add(rhs).expect("field mismatch")
    }
}

impl<'a> Sub<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.checked_sub(rhs).expect("field mismatch")
    }
}

impl<'a> Mul<&'a FieldElement> for &'a FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.checked_mul(rhs).expect("field mismatch")
    }
}

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: FieldElement) -> FieldElement {
        &self + &rhs
    }
}

impl Sub for FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: FieldElement) -> FieldElement {
        &self - &rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: FieldElement) -> FieldElement {
        &self * &rhs
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        -&self
    }
}

/// Convenience constructors for the fields used throughout the examples.
pub mod fields {
    use super::*;

    /// `Q(phi)`, `phi^2 = phi + 1`.
    pub fn golden() -> NumberField {
        NumberField::from_i64(&[-1, -1, 1]).expect("valid field")
    }

    /// `Q(sqrt 2)`.
    pub fn sqrt2() -> NumberField {
        NumberField::from_i64(&[-2, 0, 1]).expect("valid field")
    }

    /// `Q(1 + sqrt 2)`, minimal polynomial `x^2 - 2x - 1`.
    pub fn silver() -> NumberField {
        NumberField::from_i64(&[-1, -2, 1]).expect("valid field")
    }

    /// Plastic number field `x^3 - x - 1`.
    pub fn plastic() -> NumberField {
        NumberField::from_i64(&[-1, -1, 0, 1]).expect("valid field")
    }

    /// Quartic Salem field `x^4 - x^3 - x^2 - x + 1`.
    pub fn salem_quartic() -> NumberField {
        NumberField::from_i64(&[1, -1, -1, -1, 1]).expect("valid field")
    }

    /// `Q(i)`.
    pub fn gaussian() -> NumberField {
        NumberField::from_i64(&[1, 0, 1]).expect("valid field")
    }
}

#[cfg(test)]
mod tests {
    use super::fields::*;
    use super::*;
    use crate::rat::{q, qf};

    #[test]
    fn golden_arithmetic() {
        let k = golden();
        assert_eq!(k.signature(), (2, 0));
        assert_eq!(k.distinguished(), 1);
        let phi = k.gen();
        assert_eq!(&phi * &phi, k.element_i64(&[1, 1]).unwrap());
        assert_eq!(k.one().checked_div(&phi).unwrap(), k.element_i64(&[-1, 1]).unwrap());
        assert!((&phi + &-&phi).is_zero());
        assert_eq!(phi.norm(), q(-1));
        assert_eq!(phi.trace(), q(1));
        assert_eq!(phi.char_poly(), Poly::from_i64(&[-1, -1, 1]));
        assert!(!phi.scale(&qf(1, 2)).is_algebraic_integer());
        assert_eq!(phi.certified_floor(1).unwrap(), BigInt::from(1));
        assert_eq!(phi.certified_floor(0).unwrap(), BigInt::from(-1));
        assert_eq!(phi.certified_dist(1).unwrap(), k.element_i64(&[2, -1]).unwrap());
        assert_eq!(k.rational(q(2)).certified_floor(1).unwrap(), BigInt::from(2));
        assert_eq!(k.rational(qf(5, 2)).certified_nint(1).unwrap(), BigInt::from(3));
    }

    #[test]
    fn rejects_bad_polys() {
        assert_eq!(NumberField::from_i64(&[1, -2, 1]).unwrap_err(), Error::NotSquarefree);
        assert!(matches!(NumberField::from_i64(&[-2, 1, 1]), Err(Error::ReducibleDetected(_))));
        assert_eq!(
            NumberField::from_poly(&Poly::from_i64(&[1, 0, 1]), RootSelector::LargestReal).unwrap_err(),
            Error::NoRealRoot
        );
        assert_eq!(gaussian().signature(), (0, 1));
    }

    #[test]
    fn sqrt2_trace_and_gram() {
        let k = sqrt2();
        let r = k.gen();
        assert_eq!(r.trace(), q(0));
        assert_eq!(r.add_rational(&q(3)).trace(), q(6));
        assert_eq!(linalg::det(k.trace_gram()), q(8));
        assert_eq!(k.rational(q(3)).norm(), q(9));
    }

    #[test]
    fn embeddings_are_certified() {
        let k = golden();
        let phi = k.gen();
        let z = phi.embed(1, 30).unwrap();
        assert!(z.re.contains(&qf(16180339887, 10000000000)) || z.re.lo > qf(1618, 1000));
        assert!(z.radius() <= Q::new(BigInt::one(), BigInt::one() << 30));
        let w = phi.embed(0, 10).unwrap();
        assert!(w.re.hi < qf(-6, 10) && w.re.lo > qf(-7, 10));
    }

    #[test]
    fn complex_parts() {
        let g = gaussian();
        let i = g.gen();
        assert_eq!(i.complex_floor(0).unwrap(), (BigInt::from(0), BigInt::from(1)));
        let h = g.element(vec![qf(1, 2), qf(1, 2)]).unwrap();
        assert_eq!(h.complex_floor(0).unwrap(), (BigInt::from(0), BigInt::from(0)));
        assert_eq!(i.complex_floor(1).unwrap(), (BigInt::from(0), BigInt::from(-1)));
        let s = salem_quartic();
        let b = s.gen();
        assert_eq!(b.abs_sq_cmp(2, &q(1)).unwrap(), Ordering::Equal);
        let (re, im) = b.complex_floor(2).unwrap();
        assert!(re >= BigInt::from(-1) && re <= BigInt::from(0));
        assert!(im >= BigInt::from(-1) && im <= BigInt::from(0));
    }

    #[test]
    fn dual_basis_is_dual() {
        let k = golden();
        let basis = vec![k.one(), k.gen()];
        let d = k.dual_basis(&basis).unwrap();
        for (i, b) in basis.iter().enumerate() {
            for (j, dj) in d.iter().enumerate() {
                assert_eq!((b * dj).trace(), if i == j { q(1) } else { q(0) });
            }
        }
    }
}
