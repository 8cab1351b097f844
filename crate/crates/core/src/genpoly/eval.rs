use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::GPExpr;
use crate::algebraic::RealAlg;
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::numberfield::{FieldElement, NumberField};
use crate::poly::Poly;
use crate::rat::{self, Q};

/// A variable binding.
#[derive(Clone, Debug, PartialEq)]
pub enum Binding {
    Rational(Q),
    Element(FieldElement),
}

/// Variable bindings for evaluation.
#[derive(Clone, Debug, Default)]
pub struct Environment {
    vars: BTreeMap<String, Binding>,
}

impl Environment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind_rational(&mut self, name: &str, q: Q) -> &mut Self {
        self.vars.insert(name.to_string(), Binding::Rational(q));
        self
    }

    pub fn bind_element(&mut self, name: &str, x: FieldElement) -> &mut Self {
        self.vars.insert(name.to_string(), Binding::Element(x));
        self
    }

    pub fn get(&self, name: &str) -> Result<&Binding> {
        self.vars.get(name).ok_or_else(|| Error::UnboundVariable(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Binding)> {
        self.vars.iter()
    }
}

/// An exact real value.
///
/// `Lin(K, y)` stands for `sum_k Re sigma_k(y_k)`, with complex conjugate
/// embeddings folded into the member of positive imaginary part. Sums of
/// embeddings stay in this form, which keeps traces and linear functionals
/// exact without resultants.
#[derive(Clone, Debug)]
pub enum Real {
    Rat(Q),
    Lin(NumberField, Vec<FieldElement>),
    Alg(RealAlg),
}

fn canonical(field: &NumberField, k: usize) -> usize {
    if field.is_real(k) {
        k
    } else {
        k.min(field.conj_index(k))
    }
}

impl Real {
    /// `Re sigma_k(x)`.
    pub fn embedding(x: &FieldElement, k: usize) -> Real {
        let f = x.field().clone();
        let mut terms = vec![f.zero(); f.degree()];
        terms[canonical(&f, k)] = x.clone();
        Real::Lin(f, terms)
    }

    fn nonzero_terms(terms: &[FieldElement]) -> Vec<(usize, &FieldElement)> {
        terms.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect()
    }

    /// Rational value when it is visible without algebraic elimination.
    pub fn quick_rational(&self) -> Option<Q> {
        match self {
            Real::Rat(q) => Some(q.clone()),
            Real::Alg(a) => a.as_rational(),
            Real::Lin(f, terms) => {
                let nz = Self::nonzero_terms(terms);
                match nz.as_slice() {
                    [] => Some(Q::zero()),
                    [(_, y)] => y.as_rational(),
                    _ => trace_pattern(f, terms).map(|y| y.trace()),
                }
            }
        }
    }

    /// Exact rational value, if the value is rational.
    pub fn as_rational(&self) -> Option<Q> {
        if let Some(q) = self.quick_rational() {
            return Some(q);
        }
        self.to_alg().ok()?.try_collapse()
    }

    pub fn to_alg(&self) -> Result<RealAlg> {
        if let Some(q) = self.quick_rational() {
            return Ok(RealAlg::rational(q));
        }
        match self {
            Real::Rat(q) => Ok(RealAlg::rational(q.clone())),
            Real::Alg(a) => Ok(a.clone()),
            Real::Lin(f, terms) => {
                let mut acc: Option<RealAlg> = None;
                for (k, y) in Self::nonzero_terms(terms) {
                    let a = if f.is_real(k) { y.real_alg(k)? } else { y.re_alg(k)? };
                    acc = Some(match acc {
                        None => a,
                        Some(s) => s.add(&a),
                    });
                }
                Ok(acc.unwrap_or_else(|| RealAlg::rational(Q::zero())))
            }
        }
    }

    pub fn enclose(&self, bits: u32) -> Result<Interval> {
        match self {
            Real::Rat(q) => Ok(Interval::point(q.clone())),
            Real::Alg(a) => Ok(a.enclose(bits)),
            Real::Lin(_, terms) => {
                let nz = Self::nonzero_terms(terms);
                let extra = (nz.len() as u32).next_power_of_two().trailing_zeros() + 1;
                let mut acc = Interval::zero();
                for (k, y) in nz {
                    acc = &acc + &y.embed(k, bits + extra)?.re;
                }
                Ok(acc)
            }
        }
    }

    pub fn floor(&self) -> Result<Q> {
        if let Some(q) = self.quick_rational() {
            return Ok(rat::qi(rat::floor(&q)));
        }
        if let Real::Lin(f, terms) = self {
            let nz = Self::nonzero_terms(terms);
            if let [(k, y)] = nz.as_slice() {
                return Ok(rat::qi(if f.is_real(*k) { y.certified_floor(*k)? } else { y.re_alg(*k)?.floor() }));
            }
            for bits in [64u32, 128, 256] {
                let iv = self.enclose(bits)?;
                let a = rat::floor(&iv.lo);
                if a == rat::floor(&iv.hi) {
                    return Ok(rat::qi(a));
                }
            }
        }
        Ok(rat::qi(self.to_alg()?.floor()))
    }

    pub fn signum(&self) -> Result<i32> {
        if let Some(q) = self.quick_rational() {
            return Ok(if q.is_zero() { 0 } else if q.is_positive() { 1 } else { -1 });
        }
        if let Real::Lin(f, terms) = self {
            let nz = Self::nonzero_terms(terms);
            if let [(k, y)] = nz.as_slice() {
                if f.is_real(*k) {
                    return Ok(match y.cmp_rational(*k, &Q::zero())? {
                        Ordering::Less => -1,
                        Ordering::Equal => 0,
                        Ordering::Greater => 1,
                    });
                }
            }
            for bits in [64u32, 128] {
                let iv = self.enclose(bits)?;
                if iv.is_positive() {
                    return Ok(1);
                }
                if iv.is_negative() {
                    return Ok(-1);
                }
            }
        }
        Ok(self.to_alg()?.signum())
    }

    pub fn neg(&self) -> Real {
        match self {
            Real::Rat(q) => Real::Rat(-q),
            Real::Lin(f, t) => Real::Lin(f.clone(), t.iter().map(|y| -y).collect()),
            Real::Alg(a) => Real::Alg(a.neg()),
        }
    }

    pub fn add_rational(&self, q: &Q) -> Real {
        match self {
            Real::Rat(a) => Real::Rat(a + q),
            Real::Lin(f, t) => {
                let mut t = t.clone();
                let k = Self::nonzero_terms(&t).first().map_or(0, |p| p.0);
                t[k] = t[k].add_rational(q);
                Real::Lin(f.clone(), t)
            }
            Real::Alg(a) => Real::Alg(a.add_rational(q)),
        }
    }

    pub fn scale(&self, q: &Q) -> Real {
        if q.is_zero() {
            return Real::Rat(Q::zero());
        }
        match self {
            Real::Rat(a) => Real::Rat(a * q),
            Real::Lin(f, t) => Real::Lin(f.clone(), t.iter().map(|y| y.scale(q)).collect()),
            Real::Alg(a) => Real::Alg(a.mul_rational(q)),
        }
    }

    pub fn add(&self, o: &Real) -> Result<Real> {
        if let Some(q) = o.quick_rational() {
            return Ok(self.add_rational(&q));
        }
        if let Some(q) = self.quick_rational() {
            return Ok(o.add_rational(&q));
        }
        if let (Real::Lin(f, a), Real::Lin(g, b)) = (self, o) {
            if f == g {
                return Ok(Real::Lin(f.clone(), a.iter().zip(b).map(|(x, y)| x + y).collect()));
            }
        }
        Ok(Real::Alg(self.to_alg()?.add(&o.to_alg()?)))
    }

    pub fn sub(&self, o: &Real) -> Result<Real> {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Real) -> Result<Real> {
        if let Some(q) = o.quick_rational() {
            return Ok(self.scale(&q));
        }
        if let Some(q) = self.quick_rational() {
            return Ok(o.scale(&q));
        }
        if let (Real::Lin(f, a), Real::Lin(g, b)) = (self, o) {
            if f == g {
                let na = Self::nonzero_terms(a);
                let nb = Self::nonzero_terms(b);
                if let ([(i, x)], [(j, y)]) = (na.as_slice(), nb.as_slice()) {
                    if i == j && f.is_real(*i) {
                        return Ok(Real::embedding(&(*x * *y), *i));
                    }
                }
            }
        }
        Ok(Real::Alg(self.to_alg()?.mul(&o.to_alg()?)))
    }

    pub fn to_f64(&self) -> f64 {
        self.enclose(60).map(|i| i.to_f64()).unwrap_or(f64::NAN)
    }
}

/// `y` with value `Tr(y)` when the terms have the trace shape.
fn trace_pattern(f: &NumberField, terms: &[FieldElement]) -> Option<FieldElement> {
    let m = f.degree();
    let y = if f.is_real(0) { terms[0].clone() } else { terms[0].scale(&rat::qf(1, 2)) };
    let mut k = 0;
    while k < m {
        if f.is_real(k) {
            if terms[k] != y {
                return None;
            }
            k += 1;
        } else {
            if terms[k] != y.scale(&rat::q(2)) || !terms[k + 1].is_zero() {
                return None;
            }
            k += 2;
        }
    }
    Some(y)
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.quick_rational() {
            return write!(f, "{}", rat::fmt_rational(&q));
        }
        match self {
            Real::Lin(_, t) => {
                let parts: Vec<String> = Self::nonzero_terms(t)
                    .into_iter()
                    .map(|(k, y)| format!("re emb_{k}[{}]", y.to_strings().join(", ")))
                    .collect();
                write!(f, "{} ~ {:.12}", parts.join(" + "), self.to_f64())
            }
            _ => write!(f, "~ {:.12}", self.to_f64()),
        }
    }
}

/// An exact value: real, complex with real and imaginary parts, or a complex
/// embedding of a field element.
#[derive(Clone, Debug)]
pub enum Value {
    Real(Real),
    Complex(Real, Real),
    CEmb(FieldElement, usize),
}

impl Value {
    fn rat(q: Q) -> Value {
        Value::Real(Real::Rat(q))
    }

    fn complex(re: Real, im: Real) -> Value {
        match im.quick_rational() {
            Some(q) if q.is_zero() => Value::Real(re),
            _ => Value::Complex(re, im),
        }
    }

    /// `(Re, Im)`.
    pub fn parts(&self) -> Result<(Real, Real)> {
        match self {
            Value::Real(r) => Ok((r.clone(), Real::Rat(Q::zero()))),
            Value::Complex(a, b) => Ok((a.clone(), b.clone())),
            Value::CEmb(x, k) => Ok((Real::embedding(x, *k), Real::Alg(x.im_alg(*k)?))),
        }
    }

    /// The real value, or `NonRealFloorArgument` if the imaginary part is nonzero.
    pub fn expect_real(&self) -> Result<Real> {
        match self {
            Value::Real(r) => Ok(r.clone()),
            _ => {
                let (re, im) = self.parts()?;
                if im.signum()? == 0 {
                    Ok(re)
                } else {
                    Err(Error::NonRealFloorArgument)
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<Q> {
        match self {
            Value::Real(r) => r.as_rational(),
            _ => {
                let (re, im) = self.parts().ok()?;
                (im.as_rational()? == Q::zero()).then(|| re.as_rational()).flatten()
            }
        }
    }

    /// `(a, b)` when the value is the Gaussian rational `a + b i`.
    pub fn as_gaussian(&self) -> Option<(Q, Q)> {
        let (re, im) = self.parts().ok()?;
        Some((re.as_rational()?, im.as_rational()?))
    }

    /// `(x, k)` when the value is `sigma_k(x)` for a single field element.
    pub fn as_element(&self) -> Option<(FieldElement, usize)> {
        match self {
            Value::CEmb(x, k) => Some((x.clone(), *k)),
            Value::Real(Real::Lin(f, t)) => {
                let nz = Real::nonzero_terms(t);
                match nz.as_slice() {
                    [(k, y)] if f.is_real(*k) => Some(((*y).clone(), *k)),
                    _ => None,
                }
            }
            _ => None,
        }
    }

    pub fn add(&self, o: &Value) -> Result<Value> {
        match (self, o) {
            (Value::Real(a), Value::Real(b)) => Ok(Value::Real(a.add(b)?)),
            (Value::CEmb(x, i), Value::CEmb(y, j)) if i == j && x.field() == y.field() => {
                Ok(Value::CEmb(x + y, *i))
            }
            (Value::CEmb(x, i), Value::Real(r)) | (Value::Real(r), Value::CEmb(x, i)) if r.quick_rational().is_some() => {
                Ok(Value::CEmb(x.add_rational(&r.quick_rational().unwrap_or_default()), *i))
            }
            _ => {
                let (a, b) = self.parts()?;
                let (c, d) = o.parts()?;
                Ok(Value::complex(a.add(&c)?, b.add(&d)?))
            }
        }
    }

    pub fn neg(&self) -> Value {
        match self {
            Value::Real(r) => Value::Real(r.neg()),
            Value::Complex(a, b) => Value::Complex(a.neg(), b.neg()),
            Value::CEmb(x, k) => Value::CEmb(-x, *k),
        }
    }

    pub fn mul(&self, o: &Value) -> Result<Value> {
        match (self, o) {
            (Value::Real(a), Value::Real(b)) => Ok(Value::Real(a.mul(b)?)),
            (Value::CEmb(x, i), Value::CEmb(y, j)) if i == j && x.field() == y.field() => {
                Ok(Value::CEmb(x * y, *i))
            }
            (Value::CEmb(x, i), Value::Real(r)) | (Value::Real(r), Value::CEmb(x, i)) if r.quick_rational().is_some() => {
                Ok(Value::CEmb(x.scale(&r.quick_rational().unwrap_or_default()), *i))
            }
            _ => {
                let (a, b) = self.parts()?;
                let (c, d) = o.parts()?;
                let re = a.mul(&c)?.sub(&b.mul(&d)?)?;
                let im = a.mul(&d)?.add(&b.mul(&c)?)?;
                Ok(Value::complex(re, im))
            }
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{}", rat::fmt_rational(&q));
        }
        match self {
            Value::Real(r) => write!(f, "{r}"),
            _ => match self.parts() {
                Ok((a, b)) => write!(f, "({a}) + ({b})*i"),
                Err(e) => write!(f, "<{e}>"),
            },
        }
    }
}

fn check_fields(expr: &GPExpr, env: &Environment) -> Result<()> {
    let mut field: Option<&NumberField> = None;
    for v in expr.variables() {
        if let Binding::Element(x) = env.get(&v)? {
            match field {
                None => field = Some(x.field()),
                Some(f) if f != x.field() => return Err(Error::MixedFields),
                _ => {}
            }
        }
    }
    Ok(())
}

/// Evaluates `expr` exactly.
pub fn eval(expr: &GPExpr, env: &Environment) -> Result<Value> {
    check_fields(expr, env)?;
    ev(expr, env)
}

fn sqrt_value(q: &Q) -> Value {
    let num = q.numer().sqrt();
    let den = q.denom().sqrt();
    if &num * &num == *q.numer() && &den * &den == *q.denom() {
        return Value::rat(Q::new(num, den));
    }
    let qq = q.clone();
    let poly = Poly::new(vec![-q.clone(), Q::zero(), Q::one()]);
    Value::Real(Real::Alg(RealAlg::new(
        poly,
        Arc::new(move |b| Interval::new(rat::sqrt_lower(&qq, b + 1), rat::sqrt_upper(&qq, b + 1))),
    )))
}

fn ev(e: &GPExpr, env: &Environment) -> Result<Value> {
    use GPExpr::*;
    Ok(match e {
        Rat(q) => Value::rat(q.clone()),
        Complex(a, b) => Value::complex(Real::Rat(a.clone()), Real::Rat(b.clone())),
        Sqrt(q) => sqrt_value(q),
        Var(v) => match env.get(v)? {
            Binding::Rational(q) => Value::rat(q.clone()),
            Binding::Element(x) => embed_value(x, x.field().distinguished()),
        },
        Embed { var, k, coeffs } => match env.get(var)? {
            Binding::Rational(q) if coeffs.is_none() => Value::rat(q.clone()),
            Binding::Rational(_) => {
                return Err(Error::Parse(format!("`{var}` is rational; emb with coefficients needs a field element")))
            }
            Binding::Element(x) => {
                let f = x.field();
                if *k >= f.degree() {
                    return Err(Error::RootIndexOutOfRange { index: *k, degree: f.degree() });
                }
                let y = match coeffs {
                    None => x.clone(),
                    Some(c) => {
                        if c.len() > f.degree() {
                            return Err(Error::DimensionMismatch { expected: f.degree(), got: c.len() });
                        }
                        let mut c = c.clone();
                        c.resize(f.degree(), Q::zero());
                        &f.element(c)? * x
                    }
                };
                embed_value(&y, *k)
            }
        },
        Trace(var) => match env.get(var)? {
            Binding::Rational(q) => Value::rat(q.clone()),
            Binding::Element(x) => Value::rat(x.trace()),
        },
        Add(a, b) => ev(a, env)?.add(&ev(b, env)?)?,
        Sub(a, b) => ev(a, env)?.add(&ev(b, env)?.neg())?,
        Mul(a, b) => ev(a, env)?.mul(&ev(b, env)?)?,
        Neg(a) => ev(a, env)?.neg(),
        Floor(a) => Value::rat(ev(a, env)?.expect_real()?.floor()?),
        Frac(a) => {
            let r = ev(a, env)?.expect_real()?;
            let n = r.floor()?;
            Value::Real(r.add_rational(&-n))
        }
        Nint(a) => Value::rat(ev(a, env)?.expect_real()?.add_rational(&rat::qf(1, 2)).floor()?),
        Dist(a) => {
            let r = ev(a, env)?.expect_real()?;
            let n = r.add_rational(&rat::qf(1, 2)).floor()?;
            let d = r.add_rational(&-n);
            Value::Real(if d.signum()? < 0 { d.neg() } else { d })
        }
        CFloor(a) => match ev(a, env)? {
            Value::CEmb(x, k) => {
                let (re, im) = x.complex_floor(k)?;
                Value::complex(Real::Rat(rat::qi(re)), Real::Rat(rat::qi(im)))
            }
            v => {
                let (re, im) = v.parts()?;
                Value::complex(Real::Rat(re.floor()?), Real::Rat(im.floor()?))
            }
        },
        Re(a) => Value::Real(ev(a, env)?.parts()?.0),
        Im(a) => Value::Real(ev(a, env)?.parts()?.1),
    })
}

fn embed_value(x: &FieldElement, k: usize) -> Value {
    if x.field().is_real(k) {
        Value::Real(Real::embedding(x, k))
    } else if let Some(q) = x.as_rational() {
        Value::rat(q)
    } else {
        Value::CEmb(x.clone(), k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;
    use crate::rat::{q, qf};

    #[test]
    fn derived_operations_match_floor_identities() {
        let k = fields::golden();
        let x = k.gen().scale(&qf(7, 3));
        let r = Real::embedding(&x, 1);
        let fl = r.floor().unwrap();
        let frac = r.add_rational(&-fl.clone());
        assert!(frac.signum().unwrap() >= 0);
        assert_eq!(frac.add_rational(&-Q::one()).signum().unwrap(), -1);
        // ceil(x) = -floor(-x) = floor(x) + 1 for irrational x
        assert_eq!(-r.neg().floor().unwrap(), fl + q(1));
    }

    #[test]
    fn mixed_real_algebraic_products() {
        let k = fields::sqrt2();
        let s = Real::embedding(&k.gen(), 1);
        let env = Environment::new();
        let t = ev(&GPExpr::Sqrt(q(2)), &env).unwrap().expect_real().unwrap();
        let p = s.mul(&t).unwrap();
        assert_eq!(p.as_rational(), Some(q(2)));
        assert_eq!(p.floor().unwrap(), q(2));
    }
}
