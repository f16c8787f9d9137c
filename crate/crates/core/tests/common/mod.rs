//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use twirl_lab::clifford::CliffordTableau;
use twirl_lab::operator::{PauliTensor, SparseOperator};
use twirl_lab::pauli::{PauliLabel, PauliString, SystemParams};

pub type CMat = DMatrix<Complex64>;

pub fn params(n: usize, d: u32) -> SystemParams {
    SystemParams::new(n, d).unwrap()
}

pub fn pauli_dense(s: &PauliString) -> CMat {
    SparseOperator::from_tensor(&PauliTensor::from_strings(std::slice::from_ref(s)).unwrap())
        .to_dense()
        .unwrap()
}

/// Unitary with `U P U^dagger` matching the tableau on every label, up to global phase.
///
/// Uses `sum_L U rep(L) U^dagger M rep(L)^dagger = D tr(U^dagger M) U` with `M = |0><a|`.
pub fn clifford_dense(t: &CliffordTableau) -> CMat {
    let params = t.params();
    let dim = params.dim() as usize;
    let images: Vec<(CMat, CMat)> = (0..params.num_labels())
        .map(|l| {
            let rep = PauliLabel::from_index(params, l).representative();
            (pauli_dense(&t.apply(&rep)), pauli_dense(&rep).adjoint())
        })
        .collect();
    let mut best: Option<CMat> = None;
    for a in 0..dim {
        let mut m = CMat::zeros(dim, dim);
        m[(0, a)] = Complex64::new(1.0, 0.0);
        let s = images
            .iter()
            .fold(CMat::zeros(dim, dim), |acc, (img, rep_dag)| acc + img * &m * rep_dag);
        if best.as_ref().is_none_or(|b| s.norm() > b.norm()) {
            best = Some(s);
        }
    }
    let s = best.unwrap();
    let scale = (s.adjoint() * &s)[(0, 0)].re.sqrt();
    s / Complex64::new(scale, 0.0)
}

pub fn kron_power(u: &CMat, k: usize) -> CMat {
    let mut out = u.clone();
    for _ in 1..k {
        out = out.kronecker(u);
    }
    out
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the diagonal phases of R removed.
pub fn haar_unitary<R: Rng>(rng: &mut R, dim: usize) -> CMat {
    let g = CMat::from_fn(dim, dim, |_, _| {
        Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let phase = r[(j, j)] / r[(j, j)].norm();
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Partitions of `k` into at most `max_parts` parts, non-increasing.
pub fn partitions(k: usize, max_parts: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, cap: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for p in (1..=cap.min(rest)).rev() {
            cur.push(p);
            rec(rest - p, p, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, max_parts, &mut Vec::new(), &mut out);
    out
}

/// Standard Young tableaux of shape `lambda`, by the hook length formula.
pub fn syt_count(lambda: &[usize]) -> u64 {
    let k: usize = lambda.iter().sum();
    let mut hooks: u64 = 1;
    for (i, &row) in lambda.iter().enumerate() {
        for j in 0..row {
            let arm = row - j - 1;
            let leg = lambda[i + 1..].iter().filter(|&&r| r > j).count();
            hooks *= (arm + leg + 1) as u64;
        }
    }
    (1..=k as u64).product::<u64>() / hooks
}

/// Dimension of the commutant of `U^{(x)k}`: `sum_lambda (f^lambda)^2` over at most `dim` rows.
pub fn commutant_dimension(k: usize, dim: u64) -> u64 {
    partitions(k, dim.min(k as u64) as usize)
        .iter()
        .map(|l| syt_count(l).pow(2))
        .sum()
}

/// `|C_n^d|` modulo phases, from `d^{n^2 + 2n} prod_j (d^{2j} - 1)`.
pub fn clifford_order(n: u32, d: u64) -> u128 {
    let d = d as u128;
    let mut order = d.pow(n * n + 2 * n);
    for j in 1..=n {
        order *= d.pow(2 * j) - 1;
    }
    order
}

/// Symplectic form from raw digits, independent of the library's implementation.
pub fn form(d: u32, xp: &[u8], zp: &[u8], xq: &[u8], zq: &[u8]) -> u32 {
    let d = d as i64;
    let mut acc = 0i64;
    for j in 0..xp.len() {
        acc += zp[j] as i64 * xq[j] as i64 - xp[j] as i64 * zq[j] as i64;
    }
    acc.rem_euclid(d) as u32
}

/// `|H_l|` by brute force: ordered pairs of phased nonidentity Paulis, not proportional,
/// with form `l`. Each label carries `d` phases of order dividing `d`.
pub fn h_sizes_brute(n: usize, d: u32) -> Vec<u64> {
    let m = (d as u64).pow(2 * n as u32);
    let digits = |idx: u64| -> (Vec<u8>, Vec<u8>) {
        let mut v: Vec<u8> = (0..2 * n)
            .scan(idx, |r, _| {
                let out = (*r % d as u64) as u8;
                *r /= d as u64;
                Some(out)
            })
            .collect();
        v.reverse();
        (v[..n].to_vec(), v[n..].to_vec())
    };
    let mut out = vec![0u64; d as usize];
    for a in 1..m {
        let (xa, za) = digits(a);
        for b in 1..m {
            let (xb, zb) = digits(b);
            let proportional = (1..d).any(|c| {
                xa.iter().zip(&xb).all(|(&p, &q)| (c * p as u32) % d == q as u32)
                    && za.iter().zip(&zb).all(|(&p, &q)| (c * p as u32) % d == q as u32)
            });
            if !proportional {
                out[form(d, &xa, &za, &xb, &zb) as usize] += (d * d) as u64;
            }
        }
    }
    out
}

/// Largest deviation, in standard errors, of the sampled Haar twirl of a qubit Pauli tensor
/// from `exact`.
pub fn worst_z_against(key: &[u32], samples: usize, exact: &CMat, seed: u64) -> f64 {
    let x = SparseOperator::from_tensor(&PauliTensor::from_key(params(1, 2), key));
    let xd = x.to_dense().unwrap();
    let dim = xd.nrows();
    let mut sum = vec![[0.0f64; 2]; dim * dim];
    let mut sum_sq = vec![[0.0f64; 2]; dim * dim];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let u = kron_power(&haar_unitary(&mut rng, 2), key.len());
        let y = &u * &xd * u.adjoint();
        for (i, z) in y.iter().enumerate() {
            sum[i][0] += z.re;
            sum[i][1] += z.im;
            sum_sq[i][0] += z.re * z.re;
            sum_sq[i][1] += z.im * z.im;
        }
    }
    let n = samples as f64;
    let mut worst: f64 = 0.0;
    for (i, z) in exact.iter().enumerate() {
        for (part, target) in [(0, z.re), (1, z.im)] {
            let mean = sum[i][part] / n;
            let var = (sum_sq[i][part] / n - mean * mean).max(0.0) * n / (n - 1.0);
            let se = (var / n).sqrt();
            let dev = (mean - target).abs();
            let z = if se > 1e-12 {
                dev / se
            } else if dev < 1e-9 {
                0.0
            } else {
                f64::INFINITY
            };
            worst = worst.max(z);
        }
    }
    worst
}
