//! Witnesses that one vector outside a half-plane saturates it to the lattice.

use parabolic_voa::lattice::{GramLattice, LatVec};
use parabolic_voa::monoid::{check_saturation, saturate_witnesses, saturation_closure_is_full};

fn main() -> parabolic_voa::error::Result<()> {
    let l = GramLattice::diag(2, 2);
    let gamma = LatVec(-3, 4).to_hvec();
    let alpha = LatVec(3, 2);
    let w = saturate_witnesses(&l, &gamma, alpha)?;
    println!("{}", serde_json::to_string_pretty(&w).unwrap());
    println!("witnesses check: {:?}", check_saturation(&l, &gamma, alpha, &w)?);
    println!("closure fills the R=5 box: {}", saturation_closure_is_full(&l, &gamma, alpha, 5)?);
    Ok(())
}
