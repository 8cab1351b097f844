//! Powers of a Pisot unit: detectors, the exact power set and a hereditary
//! subset selected by exponent.

use gpsets::constructions::{
    hereditary_explain, is_pisot_number, pisot_unit_test, power_exponent, power_set_predicate, salem_test, IndexSet,
    PisotSetSpec,
};
use gpsets::numberfield::fields;
use gpsets::rat::qf;

fn main() -> gpsets::Result<()> {
    let k = fields::golden();
    let phi = k.gen();

    println!("phi Pisot unit: {}", pisot_unit_test(&phi)?);
    // 2 + phi has conjugate 2 - 1/phi > 1; 1 + 2 phi has conjugate 1 - 2/phi.
    println!("2 + phi Pisot number: {}", is_pisot_number(&k.element_i64(&[2, 1])?)?);
    println!("1 + 2 phi Pisot number: {}", is_pisot_number(&k.element_i64(&[1, 2])?)?);
    println!("quartic Salem generator is Salem: {}", salem_test(&fields::salem_quartic().gen())?);

    let powers = power_set_predicate(&phi)?;
    for e in [0, 1, 5, 12] {
        let x = phi.pow(e)?;
        println!("phi^{e:<2} = {x:<14} in power set: {}", powers.contains(&x)?);
    }
    let y = k.element_i64(&[3, 4])?;
    println!("{y} in power set: {}, exponent {:?}", powers.contains(&y)?, power_exponent(&phi, &y)?);

    let spec = PisotSetSpec::new(&phi, qf(3, 2), IndexSet::evens())?;
    println!("hereditary set over even exponents, m = {}", spec.m);
    for e in 0..6 {
        let rep = hereditary_explain(&spec, &phi.pow(e)?)?.expect("power of phi");
        println!(
            "  phi^{e}: residue {} depth {} norm ~ {:.6} threshold ~ {:.6} -> {}",
            rep.residue,
            rep.depth,
            rep.norm.to_f64(),
            rep.threshold.to_f64(),
            rep.member
        );
    }
    Ok(())
}
