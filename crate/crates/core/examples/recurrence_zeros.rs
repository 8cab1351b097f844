//! Zeros of linear recurrences and uniqueness of trace representations.

use gpsets::constructions::trace_sequence;
use gpsets::linrec::{sml_zeros, trace_uniqueness, LinRecSeq};
use gpsets::numberfield::fields;

fn main() -> gpsets::Result<()> {
    let examples = [
        ("Perrin", LinRecSeq::perrin()),
        ("Fibonacci", LinRecSeq::fibonacci()),
        ("x^2 - 1 from (2, 0)", LinRecSeq::from_i64(&[-1, 0, 1], &[2, 0])?),
    ];
    for (name, s) in &examples {
        let r = sml_zeros(s, 60)?;
        println!("{name}: zeros {:?}, progressions {:?}, sporadic {:?}", r.zeros, r.progressions, r.sporadic);
    }

    let k = fields::plastic();
    let x = k.element_i64(&[1, 0, 2])?;
    let y = k.element_i64(&[0, 1, 1])?;
    let tr: Vec<String> = trace_sequence(&x, 8).iter().map(ToString::to_string).collect();
    println!("Tr(beta^i x) in the plastic field: {}", tr.join(", "));
    let u = trace_uniqueness(&x, &y)?;
    println!("x vs y: traces equal {}, unique {}", u.traces_equal, u.unique);
    Ok(())
}
