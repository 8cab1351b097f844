//! Sturmian words from exact floors and their factor complexity.

use gpsets::analysis::{growth_exponent, sturmian, subword_complexity, telescoped_ones, BinaryWord};
use gpsets::numberfield::fields;

fn main() -> gpsets::Result<()> {
    let k = fields::golden();
    let a = k.gen().inverse()?;
    let b = k.zero();
    let w = sturmian(&a, &b, 0..2000)?;
    let head: String = w.to_string().chars().take(40).collect();
    println!("floor((n+1)/phi) - floor(n/phi): {head}...");
    for n in [1, 2, 5, 10, 20] {
        println!("  p({n}) = {}", subword_complexity(&w, n)?);
    }
    println!("ones {} = telescoped {}", w.ones(), telescoped_ones(&w, &a, &b)?);

    let periodic = BinaryWord::from_oracle(0..2000, &|n| n % 3 == 0);
    println!("period 3 word: p(10) = {}", subword_complexity(&periodic, 10)?);
    println!("growth exponent of the Sturmian word: {:.3}", growth_exponent(&w, &[4, 8, 16, 32])?);
    Ok(())
}
