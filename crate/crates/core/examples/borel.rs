//! A Borel-type submonoid: half of the lattice, with the boundary ray chosen.

use parabolic_voa::exactnum::{int, QuadField};
use parabolic_voa::lattice::{GramLattice, HVec};
use parabolic_voa::monoid::{borel_in, check_borel_axioms};

fn main() -> parabolic_voa::error::Result<()> {
    let l = GramLattice::a2();
    let f = QuadField::new(3)?;
    let gamma = HVec(f.elem(int(2), int(0)), f.elem(int(-1), int(1)));
    let b = borel_in(&l, &gamma)?;
    println!("B = {b:?}");
    let check = check_borel_axioms(&l, &gamma, &b, 8)?;
    println!("{}", serde_json::to_string_pretty(&check).unwrap());
    Ok(())
}
