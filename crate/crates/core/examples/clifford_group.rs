//! Enumerate a Clifford group, compose and invert tableaux, and sample uniformly.

use twirl_lab::clifford::{clifford_group_order, enumerate_clifford, sample_clifford, Generator};
use twirl_lab::pauli::SystemParams;

fn main() -> twirl_lab::Result<()> {
    for (n, d) in [(1, 2), (1, 3), (2, 2)] {
        let p = SystemParams::new(n, d)?;
        let group = enumerate_clifford(p)?;
        println!(
            "n={n} d={d}: {} elements (formula {:?})",
            group.len(),
            clifford_group_order(p)
        );
    }

    let p = SystemParams::new(2, 2)?;
    let u = sample_clifford(p, 7)?;
    let v = sample_clifford(p, 8)?;
    for g in Generator::all(2) {
        println!("{g} -> {}", u.image_of(g));
    }
    let uv = u.compose(&v);
    assert!(uv.validate().is_valid());
    assert_eq!(
        uv.compose(&uv.inverse()).to_string(),
        twirl_lab::clifford::CliffordTableau::identity(p).to_string()
    );
    println!("composition and inverse check out");
    Ok(())
}
