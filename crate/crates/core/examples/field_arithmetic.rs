//! Exact arithmetic in `Q(phi)` and certified rounding of embeddings.

use gpsets::numberfield::fields;
use gpsets::rat::q;

fn main() -> gpsets::Result<()> {
    let k = fields::golden();
    let phi = k.gen();
    let d = k.distinguished();

    println!("field: Q(phi), phi root of {}", k.minpoly());
    println!("signature {:?}, unit rank {}", k.signature(), k.unit_rank());

    let x = &(&phi * &phi) - &phi;
    println!("phi^2 - phi = {x}");

    let inv = phi.inverse()?;
    println!("1/phi = {inv}, phi * (1/phi) = {}", &phi * &inv);

    let p10 = phi.pow(10)?;
    println!("phi^10 = {p10}");
    println!("  trace {}, norm {}, unit {}", p10.trace(), p10.norm(), p10.is_unit());
    println!("  floor {}, nearest integer {}", p10.certified_floor(d)?, p10.certified_nint(d)?);
    println!("  enclosure {}", p10.embed(d, 64)?);

    // The other embedding sends phi to -1/phi.
    for j in 0..k.degree() {
        let (re, _) = p10.approx(j);
        println!("  sigma_{j}(phi^10) ~ {re:.12}");
    }

    println!("phi compared to 3/2: {:?}", phi.cmp_rational(d, &(q(3) / q(2)))?);
    Ok(())
}
