//! Phase-tracked Pauli products and the symplectic commutation form.

use twirl_lab::pauli::{commutation_strings, PauliString, SystemParams};

fn main() -> twirl_lab::Result<()> {
    for d in [2, 3] {
        let p = SystemParams::new(2, d)?;
        let x = PauliString::x_gen(p, 0);
        let z = PauliString::z_gen(p, 0);
        let xz = x.mul(&z)?;
        let zx = z.mul(&x)?;
        println!(
            "d={d}: X0 Z0 = {xz}, Z0 X0 = {zx}, form = {}",
            commutation_strings(&x, &z)
        );
        println!("  (X0 Z0)^dagger = {}, (X0 Z0)^d = {}", xz.dagger(), xz.pow(d));
        println!("  canonical rep of the X0 Z0 label: {}", xz.label().representative());
    }
    Ok(())
}
