//! Classify a few parabolic submonoids of diag(2,2) and test membership.

use parabolic_voa::exactnum::{int, QuadField};
use parabolic_voa::lattice::{GramLattice, HVec, LatVec};
use parabolic_voa::monoid::{classify, MonoidDescriptor};

fn main() -> parabolic_voa::error::Result<()> {
    let l = GramLattice::diag(2, 2);
    let f = QuadField::new(2)?;
    let rational = LatVec(0, 1).to_hvec();
    let irrational = HVec(f.elem(int(1), int(0)), f.sqrt_d());
    let descs = [
        ("type I, rational line", MonoidDescriptor::type_i(&l, rational.clone())?),
        ("type II, rational line", MonoidDescriptor::type_ii(&l, rational)?),
        ("type I, irrational line", MonoidDescriptor::type_i(&l, irrational)?),
        ("generated by ±α and β", MonoidDescriptor::generators(vec![LatVec(1, 0), LatVec(-1, 0), LatVec(0, 1)])),
    ];
    for (name, d) in &descs {
        let r = classify(&l, d)?;
        println!("{name}: {:?}, boundary {:?}", r.kind, r.alpha);
        let sample: Vec<String> = [LatVec(-3, 0), LatVec(3, 0), LatVec(2, -1)]
            .iter()
            .map(|&v| format!("{v} {}", if d.member_within(&l, v, 8).unwrap() { "in" } else { "out" }))
            .collect();
        println!("    {}", sample.join(", "));
    }
    Ok(())
}
