//! A replayable certificate that e^β is nilpotent in Zhu's algebra.

use parabolic_voa::config::{SessionConfig, DIAG22};
use parabolic_voa::lattice::LatVec;
use parabolic_voa::zhu::{nilpotency_certificate, replay};

fn main() -> parabolic_voa::error::Result<()> {
    let cfg = SessionConfig::from_json(DIAG22)?;
    let p = cfg.descriptor("P2")?;
    let cert = nilpotency_certificate(&cfg.lattice, p, LatVec(0, 1), &cfg.truncation)?;
    println!("{}", serde_json::to_string_pretty(&cert).unwrap());
    println!("replayed: {}", replay(&cfg.lattice, p, &cert, &cfg.truncation)?);
    Ok(())
}
