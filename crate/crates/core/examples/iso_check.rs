//! V_H splits as V_{Zα} ⊗ M(1) along an adapted basis.

use parabolic_voa::lattice::{GramLattice, LatVec};
use parabolic_voa::modrep::check_tensor_character;
use parabolic_voa::vertexops::{check_phi_hom, alpha_commutation_suite, Engine, TruncationCtx};

fn main() -> parabolic_voa::error::Result<()> {
    let l = GramLattice::diag(2, 2);
    let alpha = LatVec(1, 0);
    let ctx = TruncationCtx::new(4);
    let beta = l.orthogonal_primitive(alpha)?.to_hvec();
    let r = alpha_commutation_suite(&Engine::lattice(&l), alpha, &beta, -2..=2, 2, &ctx)?;
    println!("β(m) commutes with α-word fields: {} residuals, passed {}", r.instances, r.passed());
    let phi = check_phi_hom(&l, alpha, 2, &ctx)?;
    println!("φ is a homomorphism: {} instances, passed {}", phi.report.instances, phi.report.passed());
    let c = check_tensor_character(&l, alpha, 8)?;
    println!("characters agree to q^8: {}", c.equal);
    Ok(())
}
