//! Exhaustive 3-design check of the uniform qubit Clifford group.

use twirl_lab::clifford::Ensemble;
use twirl_lab::design::{verify_k_design, CompiledEnsemble, VerifyOptions};
use twirl_lab::pauli::SystemParams;

fn main() -> twirl_lab::Result<()> {
    let n = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let ens = CompiledEnsemble::new(&Ensemble::clifford_uniform(SystemParams::new(n, 2)?)?)?;
    for k in 1..=3 {
        let r = verify_k_design(&ens, k, &VerifyOptions::default())?;
        println!(
            "n={n} k={k}: {} of {} basis tensors match ({} ms)",
            r.checked - r.mismatches,
            r.basis_size,
            r.elapsed_ms
        );
        for (case, (seen, bad)) in &r.cases {
            println!("  {:<12} {seen} checked, {bad} mismatched", case.name());
        }
    }
    Ok(())
}
