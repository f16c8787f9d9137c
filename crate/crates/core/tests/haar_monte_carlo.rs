//! The exact Haar twirl against sampled Haar unitaries at D = 2.

mod common;

use common::*;
use twirl_lab::operator::{PauliTensor, SparseOperator};
use twirl_lab::perm::haar_twirl;

const SAMPLES: usize = 100_000;
const SIGMAS: f64 = 5.0;

/// Largest deviation of the sample mean from the exact twirl, in standard errors.
fn worst_z(key: &[u32], seed: u64) -> f64 {
    let p = params(1, 2);
    let x = SparseOperator::from_tensor(&PauliTensor::from_key(p, key));
    worst_z_against(key, SAMPLES, &haar_twirl(&x).unwrap().0.to_dense().unwrap(), seed)
}

#[test]
fn haar_twirl_k2_matches_sampling() {
    // X (x) X, X (x) Z, and X (x) I.
    for (i, key) in [[2u32, 2], [2, 1], [2, 0]].iter().enumerate() {
        let z = worst_z(key, 10 + i as u64);
        assert!(z <= SIGMAS, "{key:?}: {z:.2} standard errors");
    }
}

#[test]
fn haar_twirl_k3_matches_sampling() {
    // Z (x) X (x) Y closes to the identity; Z (x) Z (x) X does not.
    for (i, key) in [[1u32, 2, 3], [1, 1, 2]].iter().enumerate() {
        let z = worst_z(key, 20 + i as u64);
        assert!(z <= SIGMAS, "{key:?}: {z:.2} standard errors");
    }
}

#[test]
fn sampling_rejects_the_untwirled_operator() {
    let key = [2u32, 2];
    let x = SparseOperator::from_tensor(&PauliTensor::from_key(params(1, 2), &key));
    assert!(worst_z_against(&key, SAMPLES, &x.to_dense().unwrap(), 30) > 100.0);
}
