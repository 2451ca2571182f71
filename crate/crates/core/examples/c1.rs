//! C₁-cofiniteness: the basis-cone decision and exact quotient dimensions.

use parabolic_voa::config::{SessionConfig, A2, DIAG22};
use parabolic_voa::modrep::{c1_decide, c1_quotient_dims, C1Target};

fn main() -> parabolic_voa::error::Result<()> {
    for text in [DIAG22, A2] {
        let cfg = SessionConfig::from_json(text)?;
        for (name, d) in &cfg.descriptors {
            let r = c1_decide(&cfg.lattice, d)?;
            println!("{:?} {name}: {:?} {:?} {:?}", cfg.lattice.gram(), r.verdict, r.witness_basis, r.condition_values);
        }
    }
    let cfg = SessionConfig::from_json(DIAG22)?;
    let p2 = cfg.descriptor("P2")?.clone();
    println!("dim V_H/C1 by degree: {:?}", c1_quotient_dims(&cfg.lattice, &C1Target::VH(p2), 4, &cfg.truncation)?);
    Ok(())
}
