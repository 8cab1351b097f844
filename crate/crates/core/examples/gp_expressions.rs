//! Parsing and exact evaluation of generalised polynomials, including the
//! zero indicator and the trace written with floors.

use gpsets::genpoly::{eval, parse, trace_expr, zero_indicator, Environment};
use gpsets::numberfield::fields;
use gpsets::rat::q;

fn main() -> gpsets::Result<()> {
    let k = fields::sqrt2();
    let r = k.gen();
    let x = k.element_i64(&[1, 1])?;

    let mut env = Environment::new();
    env.bind_element("x", x.clone()).bind_rational("n", q(7));

    for src in ["floor(x * n)", "frac(x * x)", "floor(sqrt(2) * n) - floor(x * n)"] {
        let e = parse(src)?;
        println!("{e:<40} = {}", eval(&e, &env)?);
    }

    // 1_{f = 0} as a generalised polynomial, evaluated exactly.
    let f = parse("x * x - 3 - 2 * sqrt(2)")?;
    println!("zero indicator of {f}: {}", eval(&zero_indicator(f.clone()), &env)?);
    env.bind_element("x", &r + &k.one());
    let g = parse("x * x - 2")?;
    println!("zero indicator of {g}: {}", eval(&zero_indicator(g.clone()), &env)?);

    let t = trace_expr(&k, "x");
    env.bind_element("x", x.clone());
    println!("{t} = {} (exact trace {})", eval(&t, &env)?, x.trace());
    Ok(())
}
