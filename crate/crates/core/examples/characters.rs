//! Graded dimensions of V_L, V_P, the Cartan part V_H and a module character.

use parabolic_voa::config::{SessionConfig, DIAG22};
use parabolic_voa::exactnum::int;
use parabolic_voa::modrep::{character, irreducibles, module_character, CharacterTarget, SampleParams};

fn main() -> parabolic_voa::error::Result<()> {
    let cfg = SessionConfig::from_json(DIAG22)?;
    let l = &cfg.lattice;
    let p1 = cfg.descriptor("P1")?.clone();
    let p2 = cfg.descriptor("P2")?.clone();
    for (name, t) in [
        ("V_L", CharacterTarget::VL),
        ("V_P (type I)", CharacterTarget::VP(p1)),
        ("V_P (type II)", CharacterTarget::VP(p2.clone())),
        ("V_H", CharacterTarget::VH(p2.clone())),
    ] {
        println!("{name:>14}: {:?}", character(l, &t, 6)?.integer_dims());
    }
    let reg = irreducibles(l, &p2, &SampleParams { lambdas: vec![], ts: vec![int(0)] })?;
    for m in &reg.modules {
        println!("{:?}: h = {}, ch = {}", m.label, m.h, module_character(l, reg.line.as_ref(), &m.label, 3)?);
    }
    Ok(())
}
