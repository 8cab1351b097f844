//! Membership in the Fibonacci value set through nearest-integer stepping
//! and a transfer map to powers of phi.

use gpsets::linrec::{transfer_map, transfer_to_powers, verified_i0, LinRecSeq, ValueSet};
use gpsets::rat::q;

fn main() -> gpsets::Result<()> {
    let fib = LinRecSeq::fibonacci();
    let lucas = LinRecSeq::lucas();
    let head: Vec<String> = fib.terms(12).iter().map(ToString::to_string).collect();
    println!("F_0..F_11: {}", head.join(" "));
    println!("trace representation: {}", fib.trace_representation()?);

    for j in 1..=3 {
        let r = verified_i0(&fib, j)?;
        println!("F_(i+{j}) = nint(phi^{j} F_i) for i >= {} (observed from {})", r.sound, r.observed);
    }

    let to_lucas = transfer_map(&fib, &lucas)?;
    println!("Fibonacci to Lucas: {}", to_lucas.describe());
    println!("  55 maps to {}", to_lucas.apply(&q(55))?);

    let to_powers = transfer_to_powers(&fib)?;
    println!("Fibonacci to phi^i: 55 maps to {}", to_powers.apply(&q(55))?);

    let vs = ValueSet::new(&fib, 1_000)?;
    let members: Vec<i64> = (0..200).filter(|&n| vs.contains(&q(n)).unwrap_or(false)).collect();
    println!("value set below 200: {members:?}");
    Ok(())
}
