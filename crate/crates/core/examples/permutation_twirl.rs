//! Pauli expansion of permutation operators and the exact Haar twirl.

use twirl_lab::operator::{PauliTensor, SparseOperator};
use twirl_lab::pauli::SystemParams;
use twirl_lab::perm::{haar_frame_potential, haar_twirl, w_pauli_decomposition, Permutation};

fn main() -> twirl_lab::Result<()> {
    let p = SystemParams::new(1, 2)?;
    let swap = w_pauli_decomposition(&Permutation::parse("(12)", 2)?, p)?;
    println!("W_(12) = {swap}");

    // X (x) X twirls onto (D W_(12) - I)/(D^2 - 1)
    let x = SparseOperator::from_tensor(&PauliTensor::from_key(p, &[2, 2]));
    let (t, coeffs) = haar_twirl(&x)?;
    println!("T(X X) = {t}");
    for (pi, c) in coeffs.perms.iter().zip(&coeffs.coeffs) {
        println!("  alpha_{pi} = {c}");
    }
    for k in 1..=4 {
        println!("Haar frame potential k={k}, D=2: {}", haar_frame_potential(k, 2)?);
    }
    Ok(())
}
