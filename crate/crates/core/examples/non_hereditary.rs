//! Level-by-level construction of a subset with prescribed factor complexity
//! inside a dense set.

use gpsets::analysis::{non_hereditary_construct, subword_complexity, Rate};

fn main() -> gpsets::Result<()> {
    let e = |n: i64| n % 7 != 3;
    let rate = Rate::parse("const:1/2")?;
    let plan = non_hereditary_construct(&e, &rate, 4)?;

    println!("{:>3} {:>3} {:>6} {:>7} {:>7} {:>4}", "L", "k", "hc", "M_L", "N_L", "p");
    for r in &plan.levels {
        println!("{:>3} {:>3} {:>6} {:>7} {:>7} {:>4}", r.level, r.k, r.hc.to_string(), r.m, r.n, r.complexity);
    }
    let top = plan.levels.last().expect("at least one level");
    println!("level {} block {:?}, first removed subsets {:?}", top.level, top.block, &top.removed[..2]);
    for l in 1..=4 {
        println!("p({l}) on the window = {}", subword_complexity(&plan.window, l)?);
    }
    Ok(())
}
