//! The explicit probe showing qubit Clifford groups are not 4-designs.

use twirl_lab::clifford::Ensemble;
use twirl_lab::design::CompiledEnsemble;
use twirl_lab::pauli::SystemParams;
use twirl_lab::witness::witness_not_4_design;

fn main() -> twirl_lab::Result<()> {
    for n in [1, 2] {
        let ens = CompiledEnsemble::new(&Ensemble::clifford_uniform(SystemParams::new(n, 2)?)?)?;
        let w = witness_not_4_design(&ens)?;
        println!("n={n}, X = {}", w.input);
        for (class, a) in &w.alphas {
            println!("  alpha[{class}] = {a}");
        }
        for p in &w.probes {
            println!(
                "  {:<12} Y = {}: Clifford {}, Haar {} = {}",
                p.name, p.probe, p.psi, p.haar, p.formula_text
            );
        }
        println!("  witness found: {}", w.confirmed());
    }
    Ok(())
}
