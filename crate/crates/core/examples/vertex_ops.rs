//! Modes of lattice vertex operators on the truncated Fock space.

use parabolic_voa::fock::FockState;
use parabolic_voa::lattice::{GramLattice, LatVec};
use parabolic_voa::vertexops::{check_derivative, commutator_suite, Engine, TruncationCtx};

fn main() -> parabolic_voa::error::Result<()> {
    let l = GramLattice::a2();
    let e = Engine::lattice(&l);
    let ctx = TruncationCtx::new(4);
    let (a, b) = (FockState::exp(LatVec(1, 0)), FockState::exp(LatVec(0, 1)));
    for n in -3..=0 {
        println!("e^a_({n}) e^b = {}", e.mode(&a, n, &b, &ctx)?);
    }
    println!("omega = {}", e.virasoro());
    let r = commutator_suite(&e, 20, 1, &ctx)?;
    println!("commutator formula: {} instances, passed {}", r.instances, r.passed());
    let r = check_derivative(&e, 2, &ctx)?;
    println!("derivative property: {} instances, passed {}", r.instances, r.passed());
    Ok(())
}
