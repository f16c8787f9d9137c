//! Pauli mixing and 2-mixing weights, and the full group census.

use twirl_lab::clifford::Ensemble;
use twirl_lab::design::CompiledEnsemble;
use twirl_lab::mixing::{check_pauli_2_mixing, check_pauli_mixing, group_census, MixingReport};
use twirl_lab::pauli::SystemParams;

fn show(title: &str, r: &MixingReport) {
    println!("{title}: pass = {}", r.pass);
    for c in &r.classes {
        let seen: Vec<String> = c.observed.keys().map(|w| w.to_string()).collect();
        println!(
            "  {:<14} expected {}, observed [{}]",
            c.name,
            c.expected,
            seen.join(", ")
        );
    }
}

fn main() -> twirl_lab::Result<()> {
    let p = SystemParams::new(1, 2)?;
    let paulis = CompiledEnsemble::new(&Ensemble::pauli_uniform(p)?)?;
    show("Pauli group, mixing", &check_pauli_mixing(&paulis)?);
    show("Pauli group, 2-mixing", &check_pauli_2_mixing(&paulis)?);

    for (n, d) in [(1, 2), (2, 2), (1, 3)] {
        let c = group_census(SystemParams::new(n, d)?)?;
        println!("census n={n} d={d}: |C| = {}, |H_l| = {:?}", c.enumerated, c.h_sizes);
        show("  2-mixing", &c.census);
    }
    Ok(())
}
