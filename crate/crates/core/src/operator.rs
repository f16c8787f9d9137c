//! Operators on the k-fold tensor space, expanded in the Pauli tensor basis.
//!
//! Keys are phase-free label tuples; a key stands for the tensor product of
//! the canonical representatives of its labels. Phases live in the
//! coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::pauli::{PauliLabel, PauliString, SystemParams};
use crate::scalar::Cyclotomic;

/// Largest total dimension `D^k` realized as a dense matrix.
pub const MAX_DENSE_DIM: u64 = 512;

/// Label indices of the k tensor factors.
pub type TensorKey = SmallVec<[u32; 4]>;

/// `w^phase * rep(labels[0]) (x) ... (x) rep(labels[k-1])`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliTensor {
    params: SystemParams,
    labels: Vec<PauliLabel>,
    phase: u32,
}

impl PauliTensor {
    pub fn new(params: SystemParams, labels: Vec<PauliLabel>, phase: i64) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Parameter("a Pauli tensor needs at least one factor".into()));
        }
        for l in &labels {
            params.check_same(&l.params())?;
        }
        Ok(PauliTensor {
            params,
            labels,
            phase: phase.rem_euclid(params.phase_order() as i64) as u32,
        })
    }

    /// Tensor product of phased strings, phases folded into one exponent.
    pub fn from_strings(strings: &[PauliString]) -> Result<Self> {
        let first = strings
            .first()
            .ok_or_else(|| Error::Parameter("a Pauli tensor needs at least one factor".into()))?;
        let params = first.params();
        let phase: i64 = strings.iter().map(|s| s.phase_relative_to_rep() as i64).sum();
        PauliTensor::new(params, strings.iter().map(|s| s.label()).collect(), phase)
    }

    pub fn from_key(params: SystemParams, key: &[u32]) -> Self {
        PauliTensor {
            params,
            labels: key.iter().map(|&i| PauliLabel::from_index(params, i)).collect(),
            phase: 0,
        }
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[PauliLabel] {
        &self.labels
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn key(&self) -> TensorKey {
        self.labels.iter().map(|l| l.index()).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "phase": self.phase,
            "labels": self.labels.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for PauliTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.phase != 0 {
            write!(f, "w^{} ", self.phase)?;
        }
        let parts: Vec<String> = self.labels.iter().map(|l| format!("({l})")).collect();
        write!(f, "{}", parts.join(" (x) "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseOperator {
    params: SystemParams,
    k: usize,
    terms: BTreeMap<TensorKey, Cyclotomic>,
}

impl SparseOperator {
    pub fn zero(params: SystemParams, k: usize) -> Self {
        assert!(k >= 1, "tensor order must be positive");
        SparseOperator {
            params,
            k,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(params: SystemParams, k: usize) -> Self {
        let mut op = Self::zero(params, k);
        op.add_term(SmallVec::from_elem(0, k), &Cyclotomic::one(params.phase_order()));
        op
    }

    pub fn from_tensor(t: &PauliTensor) -> Self {
        let mut op = Self::zero(t.params, t.k());
        op.add_term(t.key(), &Cyclotomic::root(t.params.phase_order(), t.phase as i64));
        op
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.params.phase_order()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<TensorKey, Cyclotomic> {
        &self.terms
    }

    pub fn coefficient(&self, key: &[u32]) -> Cyclotomic {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order()))
    }

    /// Add `c` to the coefficient of `key`, pruning zeros.
    pub fn add_term(&mut self, key: TensorKey, c: &Cyclotomic) {
        assert_eq!(key.len(), self.k, "key length must equal k");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_shape(&self, other: &SparseOperator) -> Result<()> {
        self.params.check_same(&other.params)?;
        if self.k != other.k {
            return Err(Error::Parameter(format!(
                "tensor orders differ: {} vs {}",
                self.k, other.k
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (key, c) in &other.terms {
            out.add_term(key.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseOperator) -> Result<SparseOperator> {
        self.add(&other.scale(&Cyclotomic::from_int(self.order(), -1)))
    }

    pub fn scale(&self, c: &Cyclotomic) -> SparseOperator {
        let mut out = Self::zero(self.params, self.k);
        if c.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(key, v)| (key.clone(), v * c)).collect();
        out
    }

    pub fn scale_rational(&self, r: &BigRational) -> SparseOperator {
        self.scale(&Cyclotomic::from_rational(self.order(), r.clone()))
    }

    /// `A^dagger`.
    pub fn adjoint(&self) -> SparseOperator {
        let mut out = Self::zero(self.params, self.k);
        for (key, c) in &self.terms {
            let mut phase = 0i64;
            let mut new_key = TensorKey::new();
            for &idx in key {
                let dag = PauliLabel::from_index(self.params, idx).representative().dagger();
                phase += dag.phase_relative_to_rep() as i64;
                new_key.push(dag.label_index());
            }
            out.add_term(new_key, &(&c.conj() * &Cyclotomic::root(self.order(), phase)));
        }
        out
    }

    /// `tr(A^dagger B)`.
    pub fn hs_inner(&self, other: &SparseOperator) -> Result<Cyclotomic> {
        self.check_shape(other)?;
        let (small, large, flip) = if self.len() <= other.len() {
            (self, other, false)
        } else {
            (other, self, true)
        };
        let mut acc = Cyclotomic::zero(self.order());
        for (key, a) in &small.terms {
            if let Some(b) = large.terms.get(key) {
                acc += &(&a.conj() * b);
            }
        }
        if flip {
            acc = acc.conj();
        }
        Ok(acc.scale(&BigRational::from_integer(self.trace_of_identity())))
    }

    /// `<Y, A> / D^k`: the coefficient of the probe tensor, phase accounted for.
    pub fn normalized_overlap(&self, probe: &PauliTensor) -> Cyclotomic {
        let c = self.coefficient(&probe.key());
        &Cyclotomic::root(self.order(), -(probe.phase as i64)) * &c
    }

    /// `D^k`.
    pub fn trace_of_identity(&self) -> BigInt {
        BigInt::from(self.params.dim()).pow(self.k as u32)
    }

    pub fn total_dim(&self) -> Option<u64> {
        self.params.dim().checked_pow(self.k as u32)
    }

    pub fn to_dense(&self) -> Result<DMatrix<Complex64>> {
        let dim = dense_dim(self.params, self.k)?;
        let mut m = DMatrix::<Complex64>::zeros(dim, dim);
        let order = self.order() as f64;
        for (key, c) in &self.terms {
            let c = c.to_complex();
            let (x, z, s0) = flatten_key(self.params, key);
            let d = self.params.d();
            let step = self.params.omega_step();
            for col in 0..dim {
                let digits = to_digits(col, d, x.len());
                let mut e = s0 as u64;
                let mut row_digits = digits.clone();
                for i in 0..x.len() {
                    e += step as u64 * z[i] as u64 * digits[i] as u64;
                    row_digits[i] = ((digits[i] as u32 + x[i] as u32) % d) as u8;
                }
                let row = from_digits(&row_digits, d);
                let theta = 2.0 * std::f64::consts::PI * (e % self.order() as u64) as f64 / order;
                m[(row, col)] += c * Complex64::from_polar(1.0, theta);
            }
        }
        Ok(m)
    }

    /// Report form: sorted list of `{"label": [...], "coeff": "..."}`.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(key, c)| {
                    json!({
                        "label": key
                            .iter()
                            .map(|&i| PauliLabel::from_index(self.params, i).to_string())
                            .collect::<Vec<_>>(),
                        "coeff": c.to_string(),
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for SparseOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let t = PauliTensor::from_key(self.params, key);
            write!(f, "({c}) {t}")?;
        }
        Ok(())
    }
}

pub fn hs_inner(a: &SparseOperator, b: &SparseOperator) -> Result<Cyclotomic> {
    a.hs_inner(b)
}

pub fn op_add(a: &SparseOperator, b: &SparseOperator) -> Result<SparseOperator> {
    a.add(b)
}

pub fn op_scale(a: &SparseOperator, c: &Cyclotomic) -> SparseOperator {
    a.scale(c)
}

pub fn to_dense(a: &SparseOperator) -> Result<DMatrix<Complex64>> {
    a.to_dense()
}

fn dense_dim(params: SystemParams, k: usize) -> Result<usize> {
    let dim = params.dim().checked_pow(k as u32).unwrap_or(u64::MAX);
    if dim > MAX_DENSE_DIM {
        return Err(Error::capacity("dense realization D^k", dim, MAX_DENSE_DIM));
    }
    Ok(dim as usize)
}

/// Concatenated x and z digits of all factors plus the summed canonical phase.
fn flatten_key(params: SystemParams, key: &[u32]) -> (Vec<u8>, Vec<u8>, u32) {
    let mut x = Vec::with_capacity(key.len() * params.n());
    let mut z = Vec::with_capacity(key.len() * params.n());
    let mut s = 0u32;
    for &idx in key {
        let rep = PauliLabel::from_index(params, idx).representative();
        x.extend_from_slice(rep.x());
        z.extend_from_slice(rep.z());
        s += rep.phase();
    }
    (x, z, s % params.phase_order())
}

fn to_digits(mut v: usize, d: u32, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (v % d as usize) as u8;
        v /= d as usize;
    }
    out
}

fn from_digits(digits: &[u8], d: u32) -> usize {
    digits.iter().fold(0usize, |acc, &c| acc * d as usize + c as usize)
}

fn key_from_digits(params: SystemParams, x: &[u8], z: &[u8]) -> TensorKey {
    let n = params.n();
    (0..x.len() / n)
        .map(|j| {
            let r = j * n..(j + 1) * n;
            PauliLabel::new(params, x[r.clone()].to_vec(), z[r].to_vec())
                .expect("digit slices have length n")
                .index()
        })
        .collect()
}

/// Sparse exact square matrix over `Q[w]` in the computational basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    order: u32,
    entries: BTreeMap<(usize, usize), Cyclotomic>,
}

impl ExactMatrix {
    pub fn zeros(dim: usize, order: u32) -> Self {
        ExactMatrix {
            dim,
            order,
            entries: BTreeMap::new(),
        }
    }

    /// Permutation matrix with `M[perm[c], c] = 1`.
    pub fn permutation(perm: &[usize], order: u32) -> Self {
        let mut m = Self::zeros(perm.len(), order);
        for (c, &r) in perm.iter().enumerate() {
            m.set(r, c, Cyclotomic::one(order));
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn set(&mut self, row: usize, col: usize, v: Cyclotomic) {
        assert!(row < self.dim && col < self.dim, "entry out of range");
        if v.is_zero() {
            self.entries.remove(&(row, col));
        } else {
            self.entries.insert((row, col), v);
        }
    }

    pub fn get(&self, row: usize, col: usize) -> Cyclotomic {
        self.entries
            .get(&(row, col))
            .cloned()
            .unwrap_or_else(|| Cyclotomic::zero(self.order))
    }

    pub fn to_complex(&self) -> DMatrix<Complex64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (&(r, c), v) in &self.entries {
            m[(r, c)] = v.to_complex();
        }
        m
    }
}

/// Exact Pauli expansion `M = sum_P (<P, M> / D^k) P`.
pub fn pauli_expand_dense(m: &ExactMatrix, params: SystemParams, k: usize) -> Result<SparseOperator> {
    let dim = dense_dim(params, k)?;
    if m.dim != dim {
        return Err(Error::Parameter(format!(
            "matrix has size {}, expected D^k = {dim}",
            m.dim
        )));
    }
    if m.order != params.phase_order() {
        return Err(Error::Parameter("matrix entries live in a different field".into()));
    }
    let d = params.d();
    let order = params.phase_order();
    let step = params.omega_step() as u64;
    let len = k * params.n();
    // <P, M> = sum_{r,c} conj(P[r,c]) M[r,c], and P = w^s X^x Z^z has
    // P[c + x, c] = w^s omega^{z.c}; so each entry feeds every z with x = r - c.
    let mut sums: HashMap<(Vec<u8>, Vec<u8>), Vec<Cyclotomic>> = HashMap::new();
    for (&(r, c), v) in &m.entries {
        let rd = to_digits(r, d, len);
        let cd = to_digits(c, d, len);
        let x: Vec<u8> = rd
            .iter()
            .zip(&cd)
            .map(|(&a, &b)| ((a as u32 + d - b as u32) % d) as u8)
            .collect();
        for zi in 0..dim {
            let z = to_digits(zi, d, len);
            let e: u64 = z.iter().zip(&cd).map(|(&a, &b)| a as u64 * b as u64).sum::<u64>() * step;
            let slot = sums
                .entry((x.clone(), z))
                .or_insert_with(|| vec![Cyclotomic::zero(order); order as usize]);
            slot[(e % order as u64) as usize] += v;
        }
    }
    let mut out = SparseOperator::zero(params, k);
    let norm = BigRational::new(BigInt::one(), BigInt::from(dim));
    for ((x, z), by_exp) in sums {
        let key = key_from_digits(params, &x, &z);
        let s0 = flatten_key(params, &key).2 as i64;
        // conj(w^{s0 + e}) multiplies the entry sum.
        let mut acc = Cyclotomic::zero(order);
        for (e, v) in by_exp.iter().enumerate() {
            if !v.is_zero() {
                acc += &(&Cyclotomic::root(order, -(s0 + e as i64)) * v);
            }
        }
        out.add_term(key, &acc.scale(&norm));
    }
    Ok(out)
}

/// Floating Pauli expansion of a complex matrix, as `(key, coefficient)` pairs in key order.
pub fn pauli_expand_complex(
    m: &DMatrix<Complex64>,
    params: SystemParams,
    k: usize,
) -> Result<Vec<(TensorKey, Complex64)>> {
    let dim = dense_dim(params, k)?;
    if m.nrows() != dim || m.ncols() != dim {
        return Err(Error::Parameter(format!(
            "matrix has size {}x{}, expected D^k = {dim}",
            m.nrows(),
            m.ncols()
        )));
    }
    let total = (params.num_labels() as u64).pow(k as u32);
    let mut out = Vec::with_capacity(total as usize);
    let mut key: TensorKey = SmallVec::from_elem(0, k);
    for t in 0..total {
        let mut v = t;
        for slot in key.iter_mut().rev() {
            *slot = (v % params.num_labels() as u64) as u32;
            v /= params.num_labels() as u64;
        }
        let single = SparseOperator {
            params,
            k,
            terms: BTreeMap::from([(key.clone(), Cyclotomic::one(params.phase_order()))]),
        };
        let p = single.to_dense()?;
        let inner: Complex64 = p.iter().zip(m.iter()).map(|(a, b)| a.conj() * b).sum();
        out.push((key.clone(), inner / dim as f64));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, d: u32) -> SystemParams {
        SystemParams::new(n, d).unwrap()
    }

    fn label(params: SystemParams, s: &str) -> PauliLabel {
        PauliLabel::parse(s, params).unwrap()
    }

    fn tensor(params: SystemParams, parts: &[&str]) -> SparseOperator {
        let t = PauliTensor::new(params, parts.iter().map(|s| label(params, s)).collect(), 0).unwrap();
        SparseOperator::from_tensor(&t)
    }

    fn swap(params: SystemParams) -> ExactMatrix {
        let d = params.dim() as usize;
        let perm: Vec<usize> = (0..d * d).map(|c| (c % d) * d + c / d).collect();
        ExactMatrix::permutation(&perm, params.phase_order())
    }

    fn close(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> bool {
        (a - b).iter().all(|v| v.norm() < 1e-12)
    }

    #[test]
    fn inner_products() {
        let q = p(1, 2);
        let ii = SparseOperator::identity(q, 2);
        assert_eq!(ii.hs_inner(&ii).unwrap(), Cyclotomic::from_int(4, 4));
        let xz = tensor(q, &["X1 Z0", "X0 Z1"]);
        let zx = tensor(q, &["X0 Z1", "X1 Z0"]);
        assert_eq!(xz.hs_inner(&xz).unwrap(), Cyclotomic::from_int(4, 4));
        assert!(xz.hs_inner(&zx).unwrap().is_zero());
        let w12 = pauli_expand_dense(&swap(q), q, 2).unwrap();
        let yy = tensor(q, &["X1 Z1", "X1 Z1"]);
        assert_eq!(yy.hs_inner(&w12).unwrap(), Cyclotomic::from_int(4, 2));
        assert!(xz.hs_inner(&SparseOperator::identity(q, 3)).is_err());
    }

    #[test]
    fn linear_space() {
        let q = p(1, 3);
        let a = tensor(q, &["X1 Z2", "X0 Z1"])
            .add(&SparseOperator::identity(q, 2))
            .unwrap();
        assert_eq!(a.add(&SparseOperator::zero(q, 2)).unwrap(), a);
        assert!(a.sub(&a).unwrap().is_empty());
        let three = a.scale(&Cyclotomic::from_int(3, 3));
        assert_eq!(three.scale(&Cyclotomic::from_ratio(3, 1, 3)), a);
        assert!(a.scale(&Cyclotomic::zero(3)).is_empty());
    }

    #[test]
    fn dense_examples() {
        let q = p(1, 2);
        let id = SparseOperator::identity(q, 1).to_dense().unwrap();
        assert!(close(&id, &DMatrix::identity(2, 2)));
        let x = tensor(q, &["X1 Z0"]).to_dense().unwrap();
        let expect = DMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.0, 0.0),
            ],
        );
        assert!(close(&x, &expect));
        let y = tensor(q, &["X1 Z1"]).to_dense().unwrap();
        assert!((y[(0, 1)] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((y[(1, 0)] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
        let w12 = pauli_expand_dense(&swap(q), q, 2).unwrap();
        assert!(close(&w12.to_dense().unwrap(), &swap(q).to_complex()));
        assert!(SparseOperator::identity(q, 10).to_dense().is_err());
    }

    #[test]
    fn swap_expansion() {
        let q = p(1, 2);
        let w12 = pauli_expand_dense(&swap(q), q, 2).unwrap();
        assert_eq!(w12.len(), 4);
        for (key, c) in w12.terms() {
            assert_eq!(key[0], key[1]);
            assert_eq!(c, &Cyclotomic::from_ratio(4, 1, 2));
        }
        let zero = ExactMatrix::zeros(4, 4);
        assert!(pauli_expand_dense(&zero, q, 2).unwrap().is_empty());
        assert!(pauli_expand_dense(&zero, q, 1).is_err());
    }

    #[test]
    fn expansion_round_trips() {
        for params in [p(1, 2), p(1, 3), p(2, 2)] {
            let order = params.phase_order();
            let mut a = SparseOperator::zero(params, 1);
            for idx in 0..params.num_labels() {
                let c = &Cyclotomic::from_ratio(order, idx as i64 + 1, 7) * &Cyclotomic::root(order, idx as i64);
                a.add_term(SmallVec::from_elem(idx, 1), &c);
            }
            let dense = a.to_dense().unwrap();
            // exact dense realization built entrywise from the floats' known structure
            let mut exact = ExactMatrix::zeros(dense.nrows(), order);
            for (key, c) in a.terms() {
                let single = SparseOperator::from_tensor(&PauliTensor::from_key(params, key));
                let dm = single.to_dense().unwrap();
                for r in 0..dm.nrows() {
                    for col in 0..dm.ncols() {
                        let v = dm[(r, col)];
                        if v.norm() > 0.5 {
                            let e = (v.arg() / (2.0 * std::f64::consts::PI) * order as f64).round() as i64;
                            let prev = exact.get(r, col);
                            exact.set(r, col, &prev + &(c * &Cyclotomic::root(order, e)));
                        }
                    }
                }
            }
            assert!(close(&exact.to_complex(), &dense));
            assert_eq!(pauli_expand_dense(&exact, params, 1).unwrap(), a);
            let float = pauli_expand_complex(&dense, params, 1).unwrap();
            for (key, v) in float {
                assert!((a.coefficient(&key).to_complex() - v).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn adjoint_and_parseval() {
        let q = p(1, 3);
        let mut a = tensor(q, &["X1 Z1", "X2 Z0"]);
        a = a
            .add(&tensor(q, &["X0 Z1", "X1 Z0"]).scale(&Cyclotomic::root(3, 1)))
            .unwrap();
        let dense = a.to_dense().unwrap();
        assert!(close(&a.adjoint().to_dense().unwrap(), &dense.adjoint()));
        let norm = a.hs_inner(&a).unwrap();
        let parseval = a
            .terms()
            .values()
            .fold(Cyclotomic::zero(3), |acc, c| &acc + &c.abs_sq())
            .scale(&BigRational::from_integer(BigInt::from(9)));
        assert_eq!(norm, parseval);
        let trace: Complex64 = (dense.adjoint() * &dense).trace();
        assert!((trace - norm.to_complex()).norm() < 1e-9);
    }

    #[test]
    fn normalized_overlap_accounts_for_phase() {
        let q = p(1, 3);
        let r = label(q, "X1 Z0").representative();
        let phased = r.pow(2).dagger();
        let probe = PauliTensor::from_strings(std::slice::from_ref(&phased)).unwrap();
        let op = SparseOperator::from_tensor(&probe);
        assert_eq!(op.normalized_overlap(&probe), Cyclotomic::one(3));
        assert_eq!(
            op.hs_inner(&SparseOperator::from_tensor(&probe)).unwrap(),
            Cyclotomic::from_int(3, 3)
        );
    }

    #[test]
    fn json_is_sorted() {
        let q = p(1, 2);
        let a = tensor(q, &["X1 Z1"]).add(&tensor(q, &["X0 Z1"])).unwrap();
        let v = a.to_json();
        assert_eq!(v[0]["label"][0], "X0 Z1");
        assert_eq!(v[1]["coeff"], "1");
    }
}
