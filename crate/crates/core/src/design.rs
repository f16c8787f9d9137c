//! Ensemble twirls and exact k-design verification over the Pauli tensor basis.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::clifford::{CliffordTableau, Ensemble};
use crate::error::{Error, Result};
use crate::operator::{PauliTensor, SparseOperator, TensorKey};
use crate::pauli::{PauliLabel, SystemParams};
use crate::perm::{haar_twirl, PermutationBasis};
use crate::scalar::{Cyclotomic, ZCyclo};

/// Largest basis an exhaustive sweep will visit.
pub const MAX_EXHAUSTIVE_BASIS: u64 = 100_000;

/// Above this many keys the twirl accumulator switches from a dense table to a hash map.
const DENSE_ACCUMULATOR_LIMIT: u64 = 1 << 22;

/// Ensemble with merged duplicates, integer weights over a common denominator,
/// and each element's action on Pauli labels tabulated.
#[derive(Clone, Debug)]
pub struct CompiledEnsemble {
    params: SystemParams,
    denom: BigInt,
    weights: Vec<i64>,
    tableaux: Vec<CliffordTableau>,
    /// Entry-major: `images[e * M + L]`.
    images: Vec<u32>,
    phases: Vec<u8>,
}

impl CompiledEnsemble {
    pub fn new(ensemble: &Ensemble) -> Result<Self> {
        let params = ensemble.params();
        let merged = ensemble.merged();
        let mut denom = BigInt::one();
        for e in merged.entries() {
            denom = denom.lcm(e.weight.denom());
        }
        let m = params.num_labels() as usize;
        let scale = BigRational::from_integer(denom.clone());
        let mut weights = Vec::new();
        let mut tableaux = Vec::new();
        let mut images = Vec::with_capacity(merged.len() * m);
        let mut phases = Vec::with_capacity(merged.len() * m);
        for e in merged.entries() {
            if e.weight.is_zero() {
                continue;
            }
            let w = (&e.weight * &scale).to_integer();
            let w = w
                .to_i64()
                .ok_or_else(|| Error::capacity("integer ensemble weight", w.clone(), i64::MAX))?;
            let action = e.element.label_action();
            images.extend_from_slice(&action.image);
            phases.extend_from_slice(&action.phase);
            weights.push(w);
            tableaux.push(e.element.clone());
        }
        Ok(CompiledEnsemble {
            params,
            denom,
            weights,
            tableaux,
            images,
            phases,
        })
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Common denominator `L` of the weights.
    pub fn denom(&self) -> &BigInt {
        &self.denom
    }

    /// Weight numerator over `denom()`.
    pub fn weight_numerator(&self, e: usize) -> i64 {
        self.weights[e]
    }

    pub fn weight(&self, e: usize) -> BigRational {
        BigRational::new(BigInt::from(self.weights[e]), self.denom.clone())
    }

    pub fn tableau(&self, e: usize) -> &CliffordTableau {
        &self.tableaux[e]
    }

    /// `(image label, phase relative to its representative)` of label `l` under entry `e`.
    #[inline]
    pub fn act(&self, e: usize, l: u32) -> (u32, u8) {
        let i = e * self.params.num_labels() as usize + l as usize;
        (self.images[i], self.phases[i])
    }

    /// `Psi_{E,k}(X)`, term by term through the label tables.
    pub fn twirl(&self, x: &SparseOperator) -> Result<SparseOperator> {
        self.params.check_same(&x.params())?;
        let order = self.params.phase_order() as usize;
        let mut out = SparseOperator::zero(self.params, x.k());
        for (key, c) in x.terms() {
            let mut counts: HashMap<TensorKey, Vec<i64>> = HashMap::new();
            for e in 0..self.len() {
                let mut img = TensorKey::with_capacity(key.len());
                let mut ph = 0usize;
                for &l in key {
                    let (li, p) = self.act(e, l);
                    img.push(li);
                    ph += p as usize;
                }
                counts.entry(img).or_insert_with(|| vec![0; order])[ph % order] += self.weights[e];
            }
            let mut sorted: Vec<_> = counts.into_iter().collect();
            sorted.sort();
            for (img, cnt) in sorted {
                let v = Cyclotomic::from_counts(order as u32, &cnt, &self.denom);
                if !v.is_zero() {
                    out.add_term(img, &(c * &v));
                }
            }
        }
        Ok(out)
    }
}

/// `Psi_{E,k}(X) = sum alpha U^{(x)k} X U^{dagger (x)k}`.
pub fn ensemble_twirl(ensemble: &Ensemble, k: usize, x: &SparseOperator) -> Result<SparseOperator> {
    if x.k() != k {
        return Err(Error::Parameter(format!(
            "operator has {} tensor factors, expected {k}",
            x.k()
        )));
    }
    CompiledEnsemble::new(ensemble)?.twirl(x)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    pub mode: Mode,
    pub witness_cap: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            mode: Mode::Exhaustive,
            witness_cap: 8,
            threads: None,
        }
    }
}

/// Basis tensor classes, used only to label report counts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BasisCase {
    /// Some factor is the identity.
    IdentityFactor,
    /// All factors nonidentity and their product is proportional to the identity.
    ClosedProduct,
    OpenProduct,
}

impl BasisCase {
    pub fn name(&self) -> &'static str {
        match self {
            BasisCase::IdentityFactor => "identity-factor",
            BasisCase::ClosedProduct => "closed-product",
            BasisCase::OpenProduct => "open-product",
        }
    }

    pub fn of(params: SystemParams, key: &[u32]) -> BasisCase {
        if key.contains(&0) {
            return BasisCase::IdentityFactor;
        }
        let mut sum = PauliLabel::identity(params);
        for &l in key {
            sum = sum.combine(1, &PauliLabel::from_index(params, l), 1);
        }
        if sum.is_identity() {
            BasisCase::ClosedProduct
        } else {
            BasisCase::OpenProduct
        }
    }
}

/// Basis element `X`, probe `Y`, and the two normalized overlaps `<Y, .>/D^k` that differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwirlWitness {
    pub k: usize,
    pub input: PauliTensor,
    pub probe: PauliTensor,
    pub psi: Cyclotomic,
    pub haar: Cyclotomic,
    pub verdict: String,
}

#[derive(Clone, Debug)]
pub struct DesignReport {
    pub params: SystemParams,
    pub k: usize,
    pub mode: Mode,
    pub basis_size: u64,
    pub checked: u64,
    pub mismatches: u64,
    pub cases: BTreeMap<BasisCase, (u64, u64)>,
    pub witnesses: Vec<TwirlWitness>,
    pub elapsed_ms: u64,
}

impl DesignReport {
    pub fn pass(&self) -> bool {
        self.mismatches == 0
    }
}

struct Accumulator {
    order: usize,
    dense: Option<Vec<u32>>,
    sparse: HashMap<u64, u32>,
    keys: Vec<u64>,
    counts: Vec<i64>,
}

impl Accumulator {
    fn new(order: usize, key_space: u64) -> Self {
        Accumulator {
            order,
            dense: (key_space <= DENSE_ACCUMULATOR_LIMIT).then(|| vec![u32::MAX; key_space as usize]),
            sparse: HashMap::new(),
            keys: Vec::new(),
            counts: Vec::new(),
        }
    }

    #[inline]
    fn add(&mut self, key: u64, phase: usize, w: i64) {
        let fresh = self.keys.len() as u32;
        let slot = match &mut self.dense {
            Some(table) => {
                let s = &mut table[key as usize];
                if *s == u32::MAX {
                    *s = fresh;
                }
                *s
            }
            None => *self.sparse.entry(key).or_insert(fresh),
        };
        if slot == fresh {
            self.keys.push(key);
            self.counts.resize(self.counts.len() + self.order, 0);
        }
        self.counts[slot as usize * self.order + phase] += w;
    }

    fn clear(&mut self) {
        if let Some(table) = &mut self.dense {
            for &k in &self.keys {
                table[k as usize] = u32::MAX;
            }
        }
        self.sparse.clear();
        self.keys.clear();
        self.counts.clear();
    }
}

/// Shared data for one sweep.
///
/// With `Psi = (1/L) sum_K psi_K rep(K)`, `w_pi = sum_K what_pi[K] rep(K) / D^{k-1}`,
/// `v = <W, X>`, `u = G^+ v = (D/g) Uhat`, the squared residual
/// `|Psi - T|^2 = |Psi|^2 - 2 Re <Psi, T> + |T|^2` times `g L^2` is
/// `g D^k N2 - D^2 L (B + conj B) + D^2 L^2 A`, with
/// `N2 = sum |psi_K|^2`, `A = sum conj(Uhat) V`, `B = sum Uhat conj(S)`,
/// `S_pi = sum_K conj(what_pi[K]) psi_K`, `V_pi = conj(what_pi[X])`.
struct Sweep<'a> {
    ens: &'a CompiledEnsemble,
    k: usize,
    m: u64,
    order: usize,
    nperms: usize,
    /// Packed key -> list of `(perm index, conj(what_pi[K]))`.
    windex: HashMap<u64, Vec<(usize, ZCyclo)>>,
    pinv_scaled: Vec<Vec<i128>>,
    c_n2: BigInt,
    c_b: BigInt,
    c_a: BigInt,
}

fn pack(key: &[u32], m: u64) -> u64 {
    key.iter().fold(0u64, |acc, &l| acc * m + l as u64)
}

fn unpack(mut v: u64, m: u64, k: usize) -> TensorKey {
    let mut key: TensorKey = smallvec::smallvec![0; k];
    for slot in key.iter_mut().rev() {
        *slot = (v % m) as u32;
        v /= m;
    }
    key
}

impl<'a> Sweep<'a> {
    fn new(ens: &'a CompiledEnsemble, k: usize) -> Result<Self> {
        let params = ens.params;
        let basis = PermutationBasis::get(params, k)?;
        let m = params.num_labels() as u64;
        let order = params.phase_order();
        let dim = BigInt::from(params.dim());
        let lift = BigRational::from_integer(dim.pow(k as u32 - 1));
        let mut windex: HashMap<u64, Vec<(usize, ZCyclo)>> = HashMap::new();
        for i in 0..basis.perms().len() {
            let w = basis.w(i)?;
            for (key, c) in w.terms() {
                let what = c
                    .scale(&lift)
                    .to_integral()
                    .ok_or_else(|| Error::Contract("permutation coefficients not integral after lift".into()))?;
                windex.entry(pack(key, m)).or_default().push((i, what.conj()));
            }
        }
        let pinv = basis.pseudo_inverse();
        let n = pinv.rows();
        let mut g = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                g = g.lcm(pinv[(i, j)].denom());
            }
        }
        let gr = BigRational::from_integer(g.clone());
        let pinv_scaled = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        (&pinv[(i, j)] * &gr).to_integer().to_i128().ok_or_else(|| {
                            Error::capacity("scaled Gram pseudo-inverse entry", "i128 overflow", i128::MAX)
                        })
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let l = ens.denom.clone();
        let d2 = &dim * &dim;
        Ok(Sweep {
            ens,
            k,
            m,
            order: order as usize,
            nperms: n,
            windex,
            pinv_scaled,
            c_n2: &g * dim.pow(k as u32),
            c_b: &d2 * &l,
            c_a: &d2 * &l * &l,
        })
    }

    fn basis_size(&self) -> u64 {
        self.m.pow(self.k as u32)
    }

    /// Exact test of `Psi(rep(key)) == T(rep(key))`.
    fn check(&self, acc: &mut Accumulator, packed: u64) -> bool {
        let key = unpack(packed, self.m, self.k);
        let ens = self.ens;
        let mlen = self.m as usize;
        acc.clear();
        for e in 0..ens.len() {
            let base = e * mlen;
            let mut img = 0u64;
            let mut ph = 0usize;
            for &l in &key {
                let i = base + l as usize;
                img = img * self.m + ens.images[i] as u64;
                ph += ens.phases[i] as usize;
            }
            acc.add(img, ph % self.order, ens.weights[e]);
        }
        let order = self.order as u32;
        let mut n2 = ZCyclo::zero(order);
        let mut s: Vec<ZCyclo> = vec![ZCyclo::zero(order); self.nperms];
        for (slot, &img) in acc.keys.iter().enumerate() {
            let psi = ZCyclo::from_counts(order, &acc.counts[slot * self.order..(slot + 1) * self.order]);
            if psi.is_zero() {
                continue;
            }
            n2.add_assign(&psi.mul(&psi.conj()));
            if let Some(list) = self.windex.get(&img) {
                for (pi, cw) in list {
                    s[*pi].add_assign(&cw.mul(&psi));
                }
            }
        }
        let v = match self.windex.get(&packed) {
            None => return n2.is_zero(),
            Some(v) => v,
        };
        let one = BigInt::one();
        let mut uhat = vec![ZCyclo::zero(order); self.nperms];
        for (i, row) in self.pinv_scaled.iter().enumerate() {
            for (j, vj) in v {
                if row[*j] != 0 {
                    uhat[i].add_assign(&vj.scale(row[*j]));
                }
            }
        }
        let mut a = Cyclotomic::zero(order);
        for (j, vj) in v {
            a += &(&uhat[*j].conj().to_cyclotomic(&one) * &vj.to_cyclotomic(&one));
        }
        let mut b = Cyclotomic::zero(order);
        for (i, u) in uhat.iter().enumerate() {
            if !u.is_zero() && !s[i].is_zero() {
                b += &(&u.to_cyclotomic(&one) * &s[i].conj().to_cyclotomic(&one));
            }
        }
        let r = &(&n2
            .to_cyclotomic(&one)
            .scale(&BigRational::from_integer(self.c_n2.clone()))
            - &(&b + &b.conj()).scale(&BigRational::from_integer(self.c_b.clone())))
            + &a.scale(&BigRational::from_integer(self.c_a.clone()));
        r.is_zero()
    }
}

/// Compare `Psi_{E,k}(X)` with `T_k(X)` exactly for every basis tensor `X` (or a seeded sample).
pub fn verify_k_design(ensemble: &CompiledEnsemble, k: usize, options: &VerifyOptions) -> Result<DesignReport> {
    let start = Instant::now();
    let params = ensemble.params();
    let sweep = Sweep::new(ensemble, k)?;
    let basis_size = sweep.basis_size();
    let keys: Vec<u64> = match options.mode {
        Mode::Exhaustive => {
            if basis_size > MAX_EXHAUSTIVE_BASIS {
                return Err(Error::capacity(
                    "exhaustive Pauli basis sweep",
                    basis_size,
                    MAX_EXHAUSTIVE_BASIS,
                ));
            }
            (0..basis_size).collect()
        }
        Mode::Random { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).map(|_| rng.random_range(0..basis_size)).collect()
        }
    };
    let run = || -> Vec<bool> {
        keys.par_iter()
            .map_init(
                || Accumulator::new(sweep.order, basis_size),
                |acc, &key| sweep.check(acc, key),
            )
            .collect()
    };
    let results = match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| Error::Parameter(format!("cannot build worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    let mut cases: BTreeMap<BasisCase, (u64, u64)> = BTreeMap::new();
    let mut mismatches = 0u64;
    let mut witnesses = Vec::new();
    for (&packed, &ok) in keys.iter().zip(&results) {
        let key = unpack(packed, sweep.m, k);
        let entry = cases.entry(BasisCase::of(params, &key)).or_default();
        entry.0 += 1;
        if !ok {
            entry.1 += 1;
            mismatches += 1;
            if witnesses.len() < options.witness_cap {
                witnesses.push(mismatch_witness(ensemble, params, &key)?);
            }
        }
    }
    Ok(DesignReport {
        params,
        k,
        mode: options.mode,
        basis_size,
        checked: keys.len() as u64,
        mismatches,
        cases,
        witnesses,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Recompute one failing basis element through the general sparse path and
/// report the first key where the two twirls differ.
fn mismatch_witness(ens: &CompiledEnsemble, params: SystemParams, key: &[u32]) -> Result<TwirlWitness> {
    let input = PauliTensor::from_key(params, key);
    let x = SparseOperator::from_tensor(&input);
    let psi = ens.twirl(&x)?;
    let (t, _) = haar_twirl(&x)?;
    let diff = psi.sub(&t)?;
    let probe_key = diff
        .terms()
        .keys()
        .next()
        .ok_or_else(|| Error::Contract("fast path reported a mismatch the sparse path does not see".into()))?;
    let probe = PauliTensor::from_key(params, probe_key);
    Ok(TwirlWitness {
        k: key.len(),
        input,
        psi: psi.normalized_overlap(&probe),
        haar: t.normalized_overlap(&probe),
        probe,
        verdict: format!("not-{}-design", key.len()),
    })
}

/// Shared handle for callers that verify several `k` on one ensemble.
pub fn compile(ensemble: &Ensemble) -> Result<Arc<CompiledEnsemble>> {
    Ok(Arc::new(CompiledEnsemble::new(ensemble)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{Ensemble, EnsembleEntry};
    use crate::pauli::PauliString;
    use crate::perm::{w_pauli_decomposition, Permutation};

    fn p(n: usize, d: u32) -> SystemParams {
        SystemParams::new(n, d).unwrap()
    }

    fn uniform(params: SystemParams) -> CompiledEnsemble {
        CompiledEnsemble::new(&Ensemble::clifford_uniform(params).unwrap()).unwrap()
    }

    fn tensor(params: SystemParams, parts: &[&str]) -> SparseOperator {
        let labels = parts.iter().map(|s| PauliLabel::parse(s, params).unwrap()).collect();
        SparseOperator::from_tensor(&PauliTensor::new(params, labels, 0).unwrap())
    }

    #[test]
    fn identity_ensemble_is_trivial() {
        let q = p(1, 2);
        let e = CompiledEnsemble::new(&Ensemble::singleton(CliffordTableau::identity(q)).unwrap()).unwrap();
        let x = tensor(q, &["X1 Z0", "X1 Z1"]);
        assert_eq!(e.twirl(&x).unwrap(), x);
    }

    #[test]
    fn single_qubit_x_twirls_to_zero() {
        let q = p(1, 2);
        assert!(uniform(q).twirl(&tensor(q, &["X1 Z0"])).unwrap().is_empty());
    }

    #[test]
    fn closed_product_case_matches_closed_form() {
        // X (x) Z (x) rep(XZ) -> (1/3)(W_(132) - W_(123)) over the 24 single-qubit Cliffords.
        let q = p(1, 2);
        let e = uniform(q);
        let xs = PauliString::x_gen(q, 0);
        let zs = PauliString::z_gen(q, 0);
        let factors = [xs.clone(), zs.clone(), xs.mul(&zs).unwrap()];
        let x = SparseOperator::from_tensor(&PauliTensor::from_strings(&factors).unwrap());
        let got = e.twirl(&x).unwrap();
        let w123 = w_pauli_decomposition(&Permutation::parse("(123)", 3).unwrap(), q).unwrap();
        let w132 = w_pauli_decomposition(&Permutation::parse("(132)", 3).unwrap(), q).unwrap();
        let third = BigRational::new(1.into(), 3.into());
        assert_eq!(got, w132.sub(&w123).unwrap().scale_rational(&third));

        // Independent oracle: conjugate each factor through the tableaux directly.
        let all = crate::clifford::enumerate_clifford(q).unwrap();
        let mut direct = SparseOperator::zero(q, 3);
        let w = Cyclotomic::from_ratio(4, 1, 24);
        for c in &all {
            let imgs: Vec<_> = factors.iter().map(|f| c.apply(f)).collect();
            let t = PauliTensor::from_strings(&imgs).unwrap();
            direct = direct.add(&SparseOperator::from_tensor(&t).scale(&w)).unwrap();
        }
        assert_eq!(direct, got);
    }

    #[test]
    fn weights_are_merged_and_scaled() {
        let q = p(1, 2);
        let id = CliffordTableau::identity(q);
        let entries = vec![
            EnsembleEntry {
                weight: BigRational::new(1.into(), 4.into()),
                element: id.clone(),
            },
            EnsembleEntry {
                weight: BigRational::new(1.into(), 4.into()),
                element: id.clone(),
            },
            EnsembleEntry {
                weight: BigRational::new(1.into(), 2.into()),
                element: CliffordTableau::pauli_conjugation(&PauliLabel::from_index(q, 1)),
            },
        ];
        let e = CompiledEnsemble::new(&Ensemble::new(q, entries).unwrap()).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e.denom(), &BigInt::from(2));
        assert_eq!(e.weight(0), BigRational::new(1.into(), 2.into()));
    }

    #[test]
    fn single_qubit_designs() {
        let q = p(1, 2);
        let e = uniform(q);
        for k in 1..=3 {
            let r = verify_k_design(&e, k, &VerifyOptions::default()).unwrap();
            assert!(r.pass(), "k={k}");
            assert_eq!(r.checked, 4u64.pow(k as u32));
        }
        let r = verify_k_design(&e, 4, &VerifyOptions::default()).unwrap();
        assert!(!r.pass());
        assert!(!r.witnesses.is_empty());
        let w = &r.witnesses[0];
        assert_ne!(w.psi, w.haar);
    }

    #[test]
    fn fast_path_agrees_with_sparse_path() {
        // Pauli ensemble: a 1-design, not a 2-design.
        let q = p(1, 2);
        let e = CompiledEnsemble::new(&Ensemble::pauli_uniform(q).unwrap()).unwrap();
        assert!(verify_k_design(&e, 1, &VerifyOptions::default()).unwrap().pass());
        let sweep = Sweep::new(&e, 2).unwrap();
        let mut acc = Accumulator::new(sweep.order, sweep.basis_size());
        for packed in 0..16u64 {
            let key = unpack(packed, 4, 2);
            let x = SparseOperator::from_tensor(&PauliTensor::from_key(q, &key));
            let exact = e.twirl(&x).unwrap() == haar_twirl(&x).unwrap().0;
            assert_eq!(sweep.check(&mut acc, packed), exact, "{key:?}");
        }
    }

    #[test]
    fn random_mode_is_seeded() {
        let q = p(1, 3);
        let e = uniform(q);
        let opts = VerifyOptions {
            mode: Mode::Random { samples: 50, seed: 7 },
            ..Default::default()
        };
        let a = verify_k_design(&e, 2, &opts).unwrap();
        assert!(a.pass());
        assert_eq!(a.checked, 50);
        assert!(!verify_k_design(&e, 3, &VerifyOptions::default()).unwrap().pass());
    }

    #[test]
    fn case_labels() {
        let q = p(1, 2);
        assert_eq!(BasisCase::of(q, &[0, 1, 2]), BasisCase::IdentityFactor);
        assert_eq!(BasisCase::of(q, &[1, 2, 3]), BasisCase::ClosedProduct);
        assert_eq!(BasisCase::of(q, &[1, 1, 2]), BasisCase::OpenProduct);
    }
}
