//! Generalised polynomial expressions: syntax tree, text form, evaluation.
//!
//! Grammar (coefficients are exact rationals; there is no division operator):
//!
//! ```text
//! expr    := term (("+" | "-") term)*
//! term    := factor ("*" factor)*
//! factor  := "-" factor | atom
//! atom    := NUMBER | IDENT | "(" expr ")"
//!          | ("floor" | "cfloor" | "frac" | "nint" | "dist" | "re" | "im") "(" expr ")"
//!          | "emb" "(" IDENT "," INT ["," "[" NUMBER ("," NUMBER)* "]"] ")"
//!          | "tr" "(" IDENT ")"
//!          | "c" "(" SNUMBER "," SNUMBER ")"
//!          | "sqrt" "(" NUMBER ")"
//! NUMBER  := digits ["/" digits | "." digits]
//! ```
//!
//! A bare variable bound to a field element denotes its distinguished
//! embedding. `emb(x, k, [c0, c1, ...])` is `sigma_k(c x)` where `c` has the
//! given power-basis coordinates.

mod eval;
mod parse;

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::numberfield::{FieldElement, NumberField};
use crate::rat::{self, Q};

pub use eval::{eval, Binding, Environment, Real, Value};
pub use parse::parse;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GPExpr {
    Rat(Q),
    Complex(Q, Q),
    /// Square root of a nonnegative rational.
    Sqrt(Q),
    Var(String),
    Embed { var: String, k: usize, coeffs: Option<Vec<Q>> },
    Trace(String),
    Add(Box<GPExpr>, Box<GPExpr>),
    Sub(Box<GPExpr>, Box<GPExpr>),
    Mul(Box<GPExpr>, Box<GPExpr>),
    Neg(Box<GPExpr>),
    Floor(Box<GPExpr>),
    CFloor(Box<GPExpr>),
    Frac(Box<GPExpr>),
    Nint(Box<GPExpr>),
    Dist(Box<GPExpr>),
    Re(Box<GPExpr>),
    Im(Box<GPExpr>),
}

pub(crate) const RESERVED: &[&str] =
    &["floor", "cfloor", "frac", "nint", "dist", "re", "im", "emb", "tr", "c", "sqrt"];

#[allow(clippy::should_implement_trait)]
impl GPExpr {
    pub fn rat(q: Q) -> Self {
        GPExpr::Rat(q)
    }

    pub fn int(n: i64) -> Self {
        GPExpr::Rat(rat::q(n))
    }

    pub fn var(name: &str) -> Self {
        GPExpr::Var(name.to_string())
    }

    pub fn emb(var: &str, k: usize) -> Self {
        GPExpr::Embed { var: var.to_string(), k, coeffs: None }
    }

    pub fn add(a: GPExpr, b: GPExpr) -> Self {
        GPExpr::Add(Box::new(a), Box::new(b))
    }

    pub fn sub(a: GPExpr, b: GPExpr) -> Self {
        GPExpr::Sub(Box::new(a), Box::new(b))
    }

    pub fn mul(a: GPExpr, b: GPExpr) -> Self {
        GPExpr::Mul(Box::new(a), Box::new(b))
    }

    pub fn neg(a: GPExpr) -> Self {
        GPExpr::Neg(Box::new(a))
    }

    pub fn floor(a: GPExpr) -> Self {
        GPExpr::Floor(Box::new(a))
    }

    pub fn frac(a: GPExpr) -> Self {
        GPExpr::Frac(Box::new(a))
    }

    pub fn re(a: GPExpr) -> Self {
        GPExpr::Re(Box::new(a))
    }

    pub fn im(a: GPExpr) -> Self {
        GPExpr::Im(Box::new(a))
    }

    /// Names of all variables referenced.
    pub fn variables(&self) -> Vec<String> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_vars(&self, out: &mut Vec<String>) {
        use GPExpr::*;
        match self {
            Rat(_) | Complex(..) | Sqrt(_) => {}
            Var(v) | Trace(v) | Embed { var: v, .. } => out.push(v.clone()),
            Add(a, b) | Sub(a, b) | Mul(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
            Neg(a) | Floor(a) | CFloor(a) | Frac(a) | Nint(a) | Dist(a) | Re(a) | Im(a) => a.collect_vars(out),
        }
    }

    fn prec(&self) -> u8 {
        match self {
            GPExpr::Add(..) | GPExpr::Sub(..) => 1,
            GPExpr::Mul(..) => 2,
            GPExpr::Neg(_) => 3,
            GPExpr::Rat(q) if q.is_negative() => 3,
            _ => 4,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.prec() < min {
            write!(f, "(")?;
            self.write_at(f, 0)?;
            return write!(f, ")");
        }
        use GPExpr::*;
        match self {
            Rat(q) => write!(f, "{}", rat::fmt_rational(q)),
            Complex(a, b) => write!(f, "c({}, {})", rat::fmt_rational(a), rat::fmt_rational(b)),
            Sqrt(q) => write!(f, "sqrt({})", rat::fmt_rational(q)),
            Var(v) => write!(f, "{v}"),
            Trace(v) => write!(f, "tr({v})"),
            Embed { var, k, coeffs: None } => write!(f, "emb({var}, {k})"),
            Embed { var, k, coeffs: Some(c) } => {
                let cs: Vec<String> = c.iter().map(rat::fmt_rational).collect();
                write!(f, "emb({var}, {k}, [{}])", cs.join(", "))
            }
            Add(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " + ")?;
                b.write_at(f, 2)
            }
            Sub(a, b) => {
                a.write_at(f, 1)?;
                write!(f, " - ")?;
                b.write_at(f, 2)
            }
            Mul(a, b) => {
                a.write_at(f, 2)?;
                write!(f, " * ")?;
                b.write_at(f, 3)
            }
            Neg(a) => {
                write!(f, "-")?;
                match a.as_ref() {
                    // `-3` would read back as a literal
                    Rat(q) if !q.is_negative() => {
                        write!(f, "(")?;
                        a.write_at(f, 0)?;
                        write!(f, ")")
                    }
                    _ => a.write_at(f, 3),
                }
            }
            Floor(a) => call(f, "floor", a),
            CFloor(a) => call(f, "cfloor", a),
            Frac(a) => call(f, "frac", a),
            Nint(a) => call(f, "nint", a),
            Dist(a) => call(f, "dist", a),
            Re(a) => call(f, "re", a),
            Im(a) => call(f, "im", a),
        }
    }
}

fn call(f: &mut fmt::Formatter<'_>, name: &str, a: &GPExpr) -> fmt::Result {
    write!(f, "{name}(")?;
    a.write_at(f, 0)?;
    write!(f, ")")
}

impl fmt::Display for GPExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, 0)
    }
}

/// `floor(1 - frac(f)) * floor(1 - frac(sqrt(2) * f))`: equals 1 when the
/// real value `f` is 0 and 0 otherwise.
pub fn zero_indicator(f: GPExpr) -> GPExpr {
    let one = || GPExpr::int(1);
    let a = GPExpr::floor(GPExpr::sub(one(), GPExpr::frac(f.clone())));
    let b = GPExpr::floor(GPExpr::sub(one(), GPExpr::frac(GPExpr::mul(GPExpr::Sqrt(rat::q(2)), f))));
    GPExpr::mul(a, b)
}

/// Zero indicator for a possibly complex `f`: product of the indicators of
/// its real and imaginary parts.
pub fn zero_indicator_complex(f: GPExpr) -> GPExpr {
    GPExpr::mul(zero_indicator(GPExpr::re(f.clone())), zero_indicator(GPExpr::im(f)))
}

/// The trace `Tr(x)` of the variable `var` as a sum of embeddings; complex
/// pairs contribute twice the real part of one member.
pub fn trace_expr(field: &NumberField, var: &str) -> GPExpr {
    embedding_sum(field, var, None)
}

/// The functional `x -> Tr(delta x)` as a sum of embeddings.
pub fn linear_functional_expr(field: &NumberField, delta: &FieldElement, var: &str) -> GPExpr {
    embedding_sum(field, var, Some(delta.coords().to_vec()))
}

fn embedding_sum(field: &NumberField, var: &str, coeffs: Option<Vec<Q>>) -> GPExpr {
    let m = field.degree();
    let mut terms = Vec::new();
    let mut k = 0;
    while k < m {
        let e = GPExpr::Embed { var: var.to_string(), k, coeffs: coeffs.clone() };
        if field.is_real(k) {
            terms.push(e);
            k += 1;
        } else {
            terms.push(GPExpr::mul(GPExpr::int(2), GPExpr::re(e)));
            k += 2;
        }
    }
    terms.into_iter().reduce(GPExpr::add).unwrap_or_else(|| GPExpr::Rat(Q::zero()))
}

/// The Sturmian template `floor(a*(n+1) + b) - floor(a*n + b)`.
pub fn sturmian_expr(a: GPExpr, b: GPExpr, n: GPExpr) -> GPExpr {
    let shifted = GPExpr::add(GPExpr::mul(a.clone(), GPExpr::add(n.clone(), GPExpr::Rat(Q::one()))), b.clone());
    let base = GPExpr::add(GPExpr::mul(a, n), b);
    GPExpr::sub(GPExpr::floor(shifted), GPExpr::floor(base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numberfield::fields;
    use crate::rat::{q, qf};

    fn env_with(name: &str, x: FieldElement) -> Environment {
        let mut e = Environment::new();
        e.bind_element(name, x);
        e
    }

    #[test]
    fn printing_round_trips() {
        for s in [
            "floor(1 - frac(f)) * floor(1 - frac(r2 * f))",
            "floor(a * (n + 1) + b) - floor(a * n + b)",
            "cfloor(emb(x, 2))",
            "-3/2 * x - -(4)",
            "c(1/2, -3) * emb(x, 0, [1, 1/2]) + tr(y) + sqrt(2)",
        ] {
            let e = parse(s).unwrap();
            assert_eq!(e.to_string(), s);
            assert_eq!(parse(&e.to_string()).unwrap(), e);
        }
        assert_eq!(parse("cfloor(emb(x,2))").unwrap(), GPExpr::CFloor(Box::new(GPExpr::emb("x", 2))));
    }

    #[test]
    fn sturmian_at_two() {
        let k = fields::sqrt2();
        let a = k.element(vec![q(-1), q(1)]).unwrap();
        let mut env = env_with("a", a);
        env.bind_rational("n", q(2));
        env.bind_rational("b", q(0));
        let e = parse("floor(a*(n+1)+b) - floor(a*n+b)").unwrap();
        assert_eq!(eval(&e, &env).unwrap().as_rational(), Some(q(1)));
    }

    #[test]
    fn zero_indicator_values() {
        let env = Environment::new();
        for (v, want) in [(q(0), 1), (qf(1, 2), 0), (q(3), 0), (q(-7), 0)] {
            let e = zero_indicator(GPExpr::Rat(v));
            assert_eq!(eval(&e, &env).unwrap().as_rational(), Some(q(want)));
        }
        let k = fields::sqrt2();
        let x = k.element(vec![q(-1), q(1)]).unwrap();
        let env = env_with("x", x);
        let e = zero_indicator(GPExpr::var("x"));
        assert_eq!(eval(&e, &env).unwrap().as_rational(), Some(q(0)));
        let e = zero_indicator(GPExpr::sub(GPExpr::mul(GPExpr::var("x"), GPExpr::var("x")), parse("3 - 2*sqrt(2)").unwrap()));
        assert_eq!(eval(&e, &env).unwrap().as_rational(), Some(q(1)));
    }

    #[test]
    fn trace_and_functionals() {
        let k = fields::golden();
        let env = env_with("x", k.gen());
        assert_eq!(eval(&trace_expr(&k, "x"), &env).unwrap().as_rational(), Some(q(1)));
        let d = k.dual_basis(&[k.one(), k.gen()]).unwrap();
        let e = linear_functional_expr(&k, &d[0], "x");
        assert_eq!(eval(&e, &env).unwrap().as_rational(), Some(q(0)));
        let e = linear_functional_expr(&k, &d[1], "x");
        assert_eq!(eval(&e, &env).unwrap().as_rational(), Some(q(1)));
        let s = fields::salem_quartic();
        let env = env_with("x", s.gen());
        assert_eq!(eval(&trace_expr(&s, "x"), &env).unwrap().as_rational(), Some(q(1)));
    }

    #[test]
    fn complex_floor_and_parts() {
        let g = fields::gaussian();
        let env = env_with("x", g.gen());
        let v = eval(&parse("cfloor(x)").unwrap(), &env).unwrap();
        assert_eq!(v.as_gaussian(), Some((q(0), q(1))));
        let v = eval(&parse("im(x * x)").unwrap(), &env).unwrap();
        assert_eq!(v.as_rational(), Some(q(0)));
        assert!(matches!(
            eval(&parse("floor(x)").unwrap(), &env),
            Err(crate::Error::NonRealFloorArgument)
        ));
        let v = eval(&zero_indicator_complex(parse("x * x + 1").unwrap()), &env).unwrap();
        assert_eq!(v.as_rational(), Some(q(1)));
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("flor(x)"), Err(crate::Error::UnknownFunction(_))));
        assert!(matches!(parse("1 +"), Err(crate::Error::Syntax { .. })));
        let env = Environment::new();
        assert!(matches!(eval(&parse("y").unwrap(), &env), Err(crate::Error::UnboundVariable(_))));
        let mut env = env_with("x", fields::golden().gen());
        env.bind_element("y", fields::sqrt2().gen());
        assert!(matches!(eval(&parse("x + y").unwrap(), &env), Err(crate::Error::MixedFields)));
    }
}
