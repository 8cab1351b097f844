//! Small helpers around [`BigRational`]: parsing, formatting, dyadic rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: BigInt) -> Q {
    Q::from_integer(n)
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-1.25"`.
pub fn parse_rational(s: &str) -> Result<Q> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad numerator in `{s}`")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad denominator in `{s}`")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in `{s}`")));
        }
        return Ok(Q::new(n, d));
    }
    if let Some((ip, fp)) = s.split_once('.') {
        let neg = ip.starts_with('-');
        let digits = format!("{}{}", ip.trim_start_matches(['-', '+']), fp);
        let n: BigInt = digits.parse().map_err(|_| Error::Parse(format!("bad decimal `{s}`")))?;
        let d = num_traits::pow(BigInt::from(10), fp.len());
        let v = Q::new(n, d);
        return Ok(if neg { -v } else { v });
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad integer `{s}`")))?;
    Ok(Q::from_integer(n))
}

/// Parses a comma separated list of rationals.
pub fn parse_rational_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').filter(|t| !t.trim().is_empty()).map(parse_rational).collect()
}

pub fn fmt_rational(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn floor(x: &Q) -> BigInt {
    x.numer().div_floor(x.denom())
}

pub fn ceil(x: &Q) -> BigInt {
    -((-x).numer().div_floor(x.denom()))
}

pub fn is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// Largest multiple of `2^-bits` that is `<= x`.
pub fn round_down(x: &Q, bits: u32) -> Q {
    if x.denom().bits() <= 1 {
        return x.clone();
    }
    let scale = BigInt::one() << bits;
    let n = (x.numer() * &scale).div_floor(x.denom());
    Q::new(n, scale)
}

/// Smallest multiple of `2^-bits` that is `>= x`.
pub fn round_up(x: &Q, bits: u32) -> Q {
    -round_down(&-x, bits)
}

/// Approximate value as `f64` that does not overflow for huge operands.
pub fn to_f64(x: &Q) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let l = log2_abs(x);
    let v = l.exp2();
    if x.is_negative() {
        -v
    } else {
        v
    }
}

/// `log2 |x|` as an `f64`; `-inf` for zero.
pub fn log2_abs(x: &Q) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    log2_int(x.numer()) - log2_int(x.denom())
}

fn log2_int(n: &BigInt) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.abs().to_f64().unwrap_or(f64::INFINITY).log2();
    }
    let shift = bits - 64;
    let top = (n.abs() >> shift).to_f64().unwrap_or(1.0);
    top.log2() + shift as f64
}

/// Upper bound for `sqrt(x)` (x >= 0) accurate to about `2^-bits`.
pub fn sqrt_upper(x: &Q, bits: u32) -> Q {
    assert!(!x.is_negative(), "sqrt of negative rational");
    if x.is_zero() {
        return Q::zero();
    }
    // sqrt(x) <= ceil(sqrt(x * 4^bits)) / 2^bits
    let scale = BigInt::one() << (2 * bits);
    let scaled = Q::from_integer(scale) * x;
    let c = ceil(&scaled);
    let mut r = c.sqrt();
    if &r * &r < c {
        r += 1;
    }
    Q::new(r, BigInt::one() << bits)
}

/// Lower bound for `sqrt(x)` (x >= 0) accurate to about `2^-bits`.
pub fn sqrt_lower(x: &Q, bits: u32) -> Q {
    assert!(!x.is_negative(), "sqrt of negative rational");
    let scale = BigInt::one() << (2 * bits);
    let scaled = Q::from_integer(scale) * x;
    let f = floor(&scaled);
    Q::new(f.sqrt(), BigInt::one() << bits)
}

pub fn sign(x: &Q) -> Sign {
    if x.is_zero() {
        Sign::NoSign
    } else if x.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

pub fn abs(x: &Q) -> Q {
    x.abs()
}

/// `lcm` of the denominators of `xs`.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Q>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3/6").unwrap(), qf(1, 2));
        assert_eq!(parse_rational("-7").unwrap(), q(-7));
        assert_eq!(parse_rational("-1.25").unwrap(), qf(-5, 4));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(fmt_rational(&qf(-6, 4)), "-3/2");
    }

    #[test]
    fn floors_and_rounding() {
        assert_eq!(floor(&qf(-1, 2)), BigInt::from(-1));
        assert_eq!(ceil(&qf(-1, 2)), BigInt::from(0));
        assert_eq!(ceil(&qf(3, 2)), BigInt::from(2));
        let x = qf(1, 3);
        let lo = round_down(&x, 10);
        let hi = round_up(&x, 10);
        assert!(lo <= x && x <= hi);
        assert!(&hi - &lo <= qf(1, 1024));
    }

    #[test]
    fn sqrt_bounds() {
        let two = q(2);
        let u = sqrt_upper(&two, 40);
        let l = sqrt_lower(&two, 40);
        assert!(&u * &u >= two && &l * &l <= two);
        assert!(&u - &l <= Q::new(BigInt::from(2), BigInt::one() << 40));
    }
}
