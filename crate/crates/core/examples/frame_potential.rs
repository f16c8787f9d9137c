//! Frame potentials of Clifford ensembles against the Haar value.

use twirl_lab::clifford::Ensemble;
use twirl_lab::design::CompiledEnsemble;
use twirl_lab::frame::frame_potential;
use twirl_lab::pauli::SystemParams;

fn main() -> twirl_lab::Result<()> {
    for (n, d) in [(1, 2), (2, 2), (1, 3)] {
        let ens = CompiledEnsemble::new(&Ensemble::clifford_uniform(SystemParams::new(n, d)?)?)?;
        for k in 1..=4 {
            let f = frame_potential(&ens, k, None)?;
            let verdict = if f.is_design() { "design" } else { "not a design" };
            println!("n={n} d={d} k={k}: F = {}, Haar = {} ({verdict})", f.value, f.haar);
        }
    }
    Ok(())
}
