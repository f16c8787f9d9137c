//! The single-qutrit Clifford group is a 2-design but not a 3-design.

use twirl_lab::clifford::Ensemble;
use twirl_lab::design::{verify_k_design, CompiledEnsemble, VerifyOptions};
use twirl_lab::pauli::SystemParams;
use twirl_lab::witness::witness_qudit_not_3_design;

fn main() -> twirl_lab::Result<()> {
    let ens = CompiledEnsemble::new(&Ensemble::clifford_uniform(SystemParams::new(1, 3)?)?)?;
    for k in [2, 3] {
        let r = verify_k_design(&ens, k, &VerifyOptions::default())?;
        println!("k={k}: pass = {}, {} mismatches", r.pass(), r.mismatches);
    }
    let w = witness_qudit_not_3_design(&ens)?;
    println!("X = {}", w.input);
    for p in &w.probes {
        println!(
            "  {:<16} Clifford {}, Haar {} = {}",
            p.name, p.psi, p.haar, p.formula_text
        );
    }
    Ok(())
}
