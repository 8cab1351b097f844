//! Recovering `beta^i` from one term of the Salem power-sum sequence via the
//! finite family of correction tuples.

use gpsets::linrec::{salem_recover_exact, salem_recovery_family, LinRecSeq, ValueSet};
use gpsets::rat::q;

fn main() -> gpsets::Result<()> {
    let seq = LinRecSeq::salem_power_sums();
    let beta = seq.beta()?;
    println!("beta ~ {:.10}, root of {}", beta.to_f64(), seq.charpoly());

    let window: Vec<_> = (10..14).map(|i| seq.term(i)).collect();
    println!("window n_10..n_13 solves to {}", salem_recover_exact(&seq, &window)?);

    let fam = salem_recovery_family(&seq, 32)?;
    println!("correction bounds {:?}, |C| = {}", fam.bounds, fam.candidate_count());
    for i in [5u64, 10, 20] {
        let n = seq.term(i);
        for (c, k) in fam.search(&n, 100)? {
            println!("n_{i} = {n}: tuple {c:?} gives beta^{k}");
        }
    }

    let vs = ValueSet::new(&seq, 500)?;
    let members: Vec<i64> = (0..400).filter(|&n| vs.contains(&q(n)).unwrap_or(false)).collect();
    println!("value set below 400: {members:?}");
    Ok(())
}
