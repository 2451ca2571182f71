//! Fusion rules of the type-II modules form a group.

use parabolic_voa::config::{SessionConfig, DIAG22};
use parabolic_voa::exactnum::rat;
use parabolic_voa::modrep::{check_fusion_group, fusion_table, ModuleLabel};

fn main() -> parabolic_voa::error::Result<()> {
    let cfg = SessionConfig::from_json(DIAG22)?;
    let p2 = cfg.descriptor("P2")?;
    let alpha = p2.parabolic(&cfg.lattice)?.alpha.expect("type II has a boundary");
    println!("boundary α = {alpha}, N = {}\n", cfg.lattice.norm(alpha) / 2);
    let labels: Vec<ModuleLabel> = [rat(-1, 2), rat(0, 1), rat(1, 2)]
        .into_iter()
        .flat_map(|t| (0..2).map(move |i| ModuleLabel::TypeII { t: t.clone(), i, n: 1 }))
        .collect();
    let table = fusion_table(&labels)?;
    let show = |m: &ModuleLabel| match m {
        ModuleLabel::TypeII { t, i, .. } => format!("L({t}β, {i})"),
        ModuleLabel::TypeI { lambda } => format!("M(1, {lambda})"),
    };
    for [a, b, c] in &table.triples {
        println!("{} × {} -> {}", show(&labels[*a]), show(&labels[*b]), show(&labels[*c]));
    }
    println!("group law: {:?}", check_fusion_group(&labels)?);
    Ok(())
}
