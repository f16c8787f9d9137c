//! Frame potentials of finite Clifford ensembles.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::clifford::clifford_group_order;
use crate::design::CompiledEnsemble;
use crate::error::{Error, Result};
use crate::pauli::SystemParams;
use crate::perm::haar_frame_potential;
use crate::scalar::ZCyclo;

/// Largest number of ordered element pairs a frame potential will visit.
pub const MAX_FRAME_PAIRS: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameReport {
    pub params: SystemParams,
    pub k: usize,
    pub value: BigRational,
    pub haar: BigInt,
    /// `|tr(U_i^dagger U_j)|^2` -> total pair weight with that value.
    pub histogram: BTreeMap<u64, BigRational>,
    /// Element pairs visited; `len` when the group shortcut applied.
    pub pairs: u64,
    /// The ensemble was the uniform full Clifford group, so `F_k = E_j |tr U_j|^{2k}`.
    pub group_shortcut: bool,
    pub elapsed_ms: u64,
}

impl FrameReport {
    /// A unitary `k`-design exactly when the potential meets the Haar bound.
    pub fn is_design(&self) -> bool {
        self.value == BigRational::from_integer(self.haar.clone())
    }
}

/// `|tr W|^2` for Clifford `W` is the sum of `w^phase[L]` over labels fixed by `W`.
fn squared_trace(order: u32, counts: &[u32]) -> Result<u64> {
    let c: Vec<i64> = counts.iter().map(|&v| v as i64).collect();
    let value = ZCyclo::from_counts(order, &c).to_cyclotomic(&BigInt::one());
    value
        .as_rational()
        .filter(|r| r.is_integer() && !r.is_negative())
        .and_then(|r| r.to_integer().to_u64())
        .ok_or_else(|| Error::Contract(format!("squared trace {value} is not a nonnegative integer")))
}

/// Uniform weights over as many distinct tableaux as the group has elements.
pub fn is_uniform_full_group(ens: &CompiledEnsemble) -> bool {
    clifford_group_order(ens.params()) == Some(ens.len() as u128)
        && (0..ens.len()).all(|e| ens.weight_numerator(e) == ens.weight_numerator(0))
}

/// `F_k = sum_{i,j} w_i w_j |tr(U_i^dagger U_j)|^{2k}`.
pub fn frame_potential(ens: &CompiledEnsemble, k: usize, threads: Option<usize>) -> Result<FrameReport> {
    if is_uniform_full_group(ens) {
        group_frame_potential(ens, k)
    } else {
        frame_potential_pairwise(ens, k, threads)
    }
}

fn group_frame_potential(ens: &CompiledEnsemble, k: usize) -> Result<FrameReport> {
    let start = Instant::now();
    let params = ens.params();
    let m = params.num_labels();
    let order = params.phase_order();
    let mut by_counts: HashMap<Vec<u32>, i128> = HashMap::new();
    let mut counts = vec![0u32; order as usize];
    for j in 0..ens.len() {
        counts.iter_mut().for_each(|c| *c = 0);
        for l in 0..m {
            let (img, a) = ens.act(j, l);
            if img == l {
                counts[a as usize] += 1;
            }
        }
        *by_counts.entry(counts.clone()).or_default() += ens.weight_numerator(j) as i128;
    }
    finish(ens, k, by_counts, ens.denom().clone(), ens.len() as u64, true, start)
}

/// The double sum over all ordered pairs, for any ensemble.
pub fn frame_potential_pairwise(ens: &CompiledEnsemble, k: usize, threads: Option<usize>) -> Result<FrameReport> {
    let start = Instant::now();
    let params = ens.params();
    let n = ens.len();
    let pairs = n as u64 * n as u64;
    if pairs > MAX_FRAME_PAIRS {
        return Err(Error::capacity(
            "frame potential (ordered pairs)",
            pairs,
            MAX_FRAME_PAIRS,
        ));
    }
    let m = params.num_labels() as usize;
    let order = params.phase_order();
    let inverses: Vec<_> = (0..n).map(|i| ens.tableau(i).inverse().label_action()).collect();

    let row = |i: usize| -> HashMap<Vec<u32>, i128> {
        let inv = &inverses[i];
        let wi = ens.weight_numerator(i) as i128;
        let mut out: HashMap<Vec<u32>, i128> = HashMap::new();
        let mut counts = vec![0u32; order as usize];
        for j in 0..n {
            counts.iter_mut().for_each(|c| *c = 0);
            for l in 0..m as u32 {
                let (img, a) = ens.act(j, l);
                if inv.image[img as usize] == l {
                    let b = inv.phase[img as usize] as u32;
                    counts[((a as u32 + b) % order) as usize] += 1;
                }
            }
            let w = wi * ens.weight_numerator(j) as i128;
            match out.get_mut(&counts[..]) {
                Some(v) => *v += w,
                None => {
                    out.insert(counts.clone(), w);
                }
            }
        }
        out
    };
    let merge = |mut a: HashMap<Vec<u32>, i128>, b: HashMap<Vec<u32>, i128>| {
        for (key, v) in b {
            *a.entry(key).or_default() += v;
        }
        a
    };
    let run = || (0..n).into_par_iter().map(row).reduce(HashMap::new, merge);
    let by_counts = match threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Parameter(format!("thread pool: {e}")))?
            .install(run),
        None => run(),
    };

    finish(ens, k, by_counts, ens.denom() * ens.denom(), pairs, false, start)
}

fn finish(
    ens: &CompiledEnsemble,
    k: usize,
    by_counts: HashMap<Vec<u32>, i128>,
    denom: BigInt,
    pairs: u64,
    group_shortcut: bool,
    start: Instant,
) -> Result<FrameReport> {
    let params = ens.params();
    let order = params.phase_order();
    let mut totals: BTreeMap<u64, BigInt> = BTreeMap::new();
    for (counts, w) in by_counts {
        *totals.entry(squared_trace(order, &counts)?).or_default() += BigInt::from(w);
    }
    let mut value = BigInt::zero();
    let mut histogram = BTreeMap::new();
    for (t, w) in totals {
        value += &w * BigInt::from(t).pow(k as u32);
        histogram.insert(t, BigRational::new(w, denom.clone()));
    }
    Ok(FrameReport {
        params,
        k,
        value: BigRational::new(value, denom),
        haar: haar_frame_potential(k, params.dim())?,
        histogram,
        pairs,
        group_shortcut,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{CliffordTableau, Ensemble};

    fn p(n: usize, d: u32) -> SystemParams {
        SystemParams::new(n, d).unwrap()
    }

    fn fp(e: &Ensemble, k: usize) -> FrameReport {
        frame_potential(&CompiledEnsemble::new(e).unwrap(), k, None).unwrap()
    }

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn single_qubit_clifford() {
        let c = Ensemble::clifford_uniform(p(1, 2)).unwrap();
        assert_eq!(fp(&c, 1).value, int(1));
        assert_eq!(fp(&c, 2).value, int(2));
        let three = fp(&c, 3);
        assert_eq!(three.value, int(5));
        assert!(three.is_design());
        let four = fp(&c, 4);
        assert!(four.value > int(14));
        assert!(!four.is_design());
        assert_eq!(four.haar, BigInt::from(14));
    }

    #[test]
    fn two_qubit_clifford_is_three_design() {
        let c = Ensemble::clifford_uniform(p(2, 2)).unwrap();
        let ens = CompiledEnsemble::new(&c).unwrap();
        for k in 1..=3 {
            assert!(frame_potential(&ens, k, None).unwrap().is_design(), "k={k}");
        }
        assert!(!frame_potential(&ens, 4, None).unwrap().is_design());
    }

    #[test]
    fn shortcut_matches_pairwise() {
        for params in [p(1, 2), p(1, 3)] {
            let ens = CompiledEnsemble::new(&Ensemble::clifford_uniform(params).unwrap()).unwrap();
            assert!(is_uniform_full_group(&ens));
            for k in 1..=4 {
                let fast = frame_potential(&ens, k, None).unwrap();
                let slow = frame_potential_pairwise(&ens, k, Some(1)).unwrap();
                assert!(fast.group_shortcut && !slow.group_shortcut);
                assert_eq!(fast.value, slow.value);
                assert_eq!(fast.histogram, slow.histogram);
            }
        }
    }

    #[test]
    fn qutrit_clifford_is_two_not_three_design() {
        let c = Ensemble::clifford_uniform(p(1, 3)).unwrap();
        assert!(fp(&c, 2).is_design());
        assert!(!fp(&c, 3).is_design());
    }

    #[test]
    fn pauli_group_is_one_design_only() {
        let e = Ensemble::pauli_uniform(p(1, 2)).unwrap();
        assert!(fp(&e, 1).is_design());
        assert!(!fp(&e, 2).is_design());
        let id = Ensemble::singleton(CliffordTableau::identity(p(1, 2))).unwrap();
        assert_eq!(fp(&id, 1).value, int(4));
    }
}
