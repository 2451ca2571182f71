//! V_+ is an ideal of V_P and V_P = V_H ⊕ V_+ degree by degree.

use parabolic_voa::config::{SessionConfig, A2};
use parabolic_voa::vertexops::{check_ideal, check_vp_decomposition, TruncationCtx};

fn main() -> parabolic_voa::error::Result<()> {
    let cfg = SessionConfig::from_json(A2)?;
    let ctx = TruncationCtx::new(4);
    for (name, d) in &cfg.descriptors {
        let r = check_ideal(&cfg.lattice, d, 30, cfg.seed, &ctx)?;
        println!("{name}: ideal check {} instances, passed {}", r.instances, r.passed());
        let (p, rows) = check_vp_decomposition(&cfg.lattice, d, 5)?;
        println!("    [deg, V_P, V_H, V_+] = {rows:?}, passed {}", p.passed());
    }
    Ok(())
}
