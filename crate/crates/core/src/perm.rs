//! Permutation operators `W_pi` and the Haar twirl as exact projection onto their span.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::operator::{pauli_expand_dense, ExactMatrix, SparseOperator, TensorKey};
use crate::pauli::{mul_unchecked, PauliLabel, PauliString, SystemParams};
use crate::scalar::Cyclotomic;

/// Largest tensor order for which the Gram matrix is built.
pub const MAX_GRAM_K: usize = 6;

/// Largest tensor order accepted by the Haar twirl.
pub const MAX_TWIRL_K: usize = 4;

/// Largest number of Pauli terms a closed-form decomposition may produce.
pub const MAX_DECOMPOSITION_TERMS: u64 = 1 << 22;

/// Bijection on `0..k`; `images[j]` is where register `j` is sent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(Error::Parameter(format!("{images:?} is not a permutation")));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(k: usize) -> Self {
        Permutation {
            images: (0..k).collect(),
        }
    }

    /// Parse 1-based cycle notation such as `(123)`, `(12)(34)` or `e`.
    pub fn parse(text: &str, k: usize) -> Result<Self> {
        let t: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = |why: &str| Error::Parse(format!("permutation '{text}': {why}"));
        let mut images: Vec<usize> = (0..k).collect();
        if t == "e" || t == "()" || t.is_empty() {
            return Ok(Permutation { images });
        }
        let mut used = vec![false; k];
        let mut rest = t.as_str();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let end = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let points: Vec<usize> = body[..end]
                .chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|v| v as usize)
                        .filter(|&v| v >= 1 && v <= k)
                        .map(|v| v - 1)
                        .ok_or_else(|| bad("points must be digits in 1..=k"))
                })
                .collect::<Result<_>>()?;
            for &p in &points {
                if used[p] {
                    return Err(bad("point repeated"));
                }
                used[p] = true;
            }
            for (i, &p) in points.iter().enumerate() {
                images[p] = points[(i + 1) % points.len()];
            }
            rest = &body[end + 1..];
        }
        Ok(Permutation { images })
    }

    pub fn k(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, j: usize) -> usize {
        self.images[j]
    }

    /// `self` after `inner`.
    pub fn compose(&self, inner: &Permutation) -> Permutation {
        assert_eq!(self.k(), inner.k(), "composing permutations of different degree");
        Permutation {
            images: inner.images.iter().map(|&j| self.images[j]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.k()];
        for (j, &i) in self.images.iter().enumerate() {
            images[i] = j;
        }
        Permutation { images }
    }

    /// Cycles including fixed points, each starting at its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.k()];
        let mut out = Vec::new();
        for start in 0..self.k() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut j = self.images[start];
            while j != start {
                seen[j] = true;
                cycle.push(j);
                j = self.images[j];
            }
            out.push(cycle);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        self.cycles().len()
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    pub fn has_fixed_point(&self) -> bool {
        self.images.iter().enumerate().any(|(j, &i)| i == j)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(j, &i)| i == j)
    }

    /// All of `S_k`, in lexicographic order of image arrays.
    pub fn all(k: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut current = Vec::with_capacity(k);
        let mut used = vec![false; k];
        fn rec(k: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Permutation>) {
            if current.len() == k {
                out.push(Permutation {
                    images: current.clone(),
                });
                return;
            }
            for v in 0..k {
                if !used[v] {
                    used[v] = true;
                    current.push(v);
                    rec(k, current, used, out);
                    current.pop();
                    used[v] = false;
                }
            }
        }
        rec(k, &mut current, &mut used, &mut out);
        out
    }

    /// Basis permutation of `W_pi` on `D^k` states: column `a` maps to the returned row.
    pub fn basis_action(&self, local_dim: usize) -> Vec<usize> {
        let k = self.k();
        let total = local_dim.pow(k as u32);
        let mut out = Vec::with_capacity(total);
        let mut a = vec![0usize; k];
        let mut b = vec![0usize; k];
        for col in 0..total {
            let mut v = col;
            for slot in a.iter_mut().rev() {
                *slot = v % local_dim;
                v /= local_dim;
            }
            for j in 0..k {
                b[self.images[j]] = a[j];
            }
            out.push(b.iter().fold(0, |acc, &x| acc * local_dim + x));
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "e");
        }
        for c in cycles {
            write!(f, "(")?;
            for p in c {
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

type CycleTerms = (Vec<usize>, Vec<(Vec<u32>, i64)>);

/// Pauli decomposition of `W_pi`, built cycle by cycle.
///
/// For a cycle `c1 -> c2 -> ... -> cm`, `tr((A_1 (x) ... (x) A_m) W) =
/// tr(A_c1 A_cm A_c(m-1) ... A_c2)`, so the coefficient of `P` is
/// `tr(P_c1^+ P_cm^+ ... P_c2^+) / D^m`: nonzero exactly when the labels on the
/// cycle sum to zero, and then equal to a root of unity over `D^(m-1)`.
pub fn w_pauli_decomposition(pi: &Permutation, params: SystemParams) -> Result<SparseOperator> {
    let k = pi.k();
    if k == 0 {
        return Err(Error::Parameter("permutation degree must be positive".into()));
    }
    let m = params.num_labels() as u64;
    let terms = m.checked_pow((k - pi.num_cycles()) as u32).unwrap_or(u64::MAX);
    if terms > MAX_DECOMPOSITION_TERMS {
        return Err(Error::capacity(
            "W_pi Pauli decomposition terms",
            terms,
            MAX_DECOMPOSITION_TERMS,
        ));
    }
    let order = params.phase_order();
    let dim = BigInt::from(params.dim());
    // Per cycle: positions along the cycle, then (labels, phase exponent) for each term.
    let mut per_cycle: Vec<CycleTerms> = Vec::new();
    for cycle in pi.cycles() {
        let len = cycle.len();
        let mut entries = Vec::new();
        let free = (m as usize).pow((len - 1) as u32);
        for t in 0..free {
            let mut v = t;
            let mut labels = vec![0u32; len];
            for slot in labels[..len - 1].iter_mut().rev() {
                *slot = (v % m as usize) as u32;
                v /= m as usize;
            }
            let mut sum = PauliLabel::identity(params);
            for &l in &labels[..len - 1] {
                sum = sum.combine(1, &PauliLabel::from_index(params, l), 1);
            }
            let last = sum.combine(0, &sum, params.d() - 1);
            labels[len - 1] = last.index();
            // Order of the trace product: c1, cm, c(m-1), ..., c2.
            let mut prod = PauliString::identity(params);
            let sequence = std::iter::once(0).chain((1..len).rev());
            for pos in sequence {
                let rep = PauliLabel::from_index(params, labels[pos]).representative();
                prod = mul_unchecked(&prod, &rep.dagger());
            }
            debug_assert!(prod.is_identity_label());
            entries.push((labels, prod.phase() as i64));
        }
        per_cycle.push((cycle, entries));
    }
    let mut out = SparseOperator::zero(params, k);
    let denom = dim.pow((k - pi.num_cycles()) as u32);
    let scale = BigRational::new(BigInt::one(), denom);
    let mut idx = vec![0usize; per_cycle.len()];
    loop {
        let mut key: TensorKey = smallvec::smallvec![0; k];
        let mut phase = 0i64;
        for (c, (points, entries)) in per_cycle.iter().enumerate() {
            let (labels, s) = &entries[idx[c]];
            for (p, &l) in points.iter().zip(labels) {
                key[*p] = l;
            }
            phase += s;
        }
        out.add_term(key, &Cyclotomic::root(order, phase).scale(&scale));
        let mut c = 0;
        loop {
            if c == per_cycle.len() {
                return Ok(out);
            }
            idx[c] += 1;
            if idx[c] < per_cycle[c].1.len() {
                break;
            }
            idx[c] = 0;
            c += 1;
        }
    }
}

/// Pauli decomposition of `W_pi` via exact expansion of its permutation matrix.
pub fn w_pauli_decomposition_dense(pi: &Permutation, params: SystemParams) -> Result<SparseOperator> {
    let action = pi.basis_action(params.dim() as usize);
    let m = ExactMatrix::permutation(&action, params.phase_order());
    pauli_expand_dense(&m, params, pi.k())
}

/// Cached closed-form decomposition.
pub fn w_operator(pi: &Permutation, params: SystemParams) -> Result<Arc<SparseOperator>> {
    type Cache = Mutex<HashMap<(SystemParams, Permutation), Arc<SparseOperator>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(op) = cache.lock().expect("cache poisoned").get(&(params, pi.clone())) {
        return Ok(op.clone());
    }
    let op = Arc::new(w_pauli_decomposition(pi, params)?);
    cache
        .lock()
        .expect("cache poisoned")
        .insert((params, pi.clone()), op.clone());
    Ok(op)
}

/// `G[pi][sigma] = D^{#cycles(pi^-1 sigma)}` over `S_k` in lexicographic order.
pub fn gram_matrix(k: usize, dim: u64) -> Result<RationalMatrix> {
    if k == 0 || k > MAX_GRAM_K {
        return Err(Error::Parameter(format!(
            "Gram matrix needs 1 <= k <= {MAX_GRAM_K}, got {k}"
        )));
    }
    let perms = Permutation::all(k);
    let d = BigInt::from(dim);
    Ok(RationalMatrix::from_fn(perms.len(), perms.len(), |i, j| {
        let c = perms[i].inverse().compose(&perms[j]).num_cycles();
        BigRational::from_integer(d.pow(c as u32))
    }))
}

/// Moore-Penrose pseudo-inverse of a symmetric Gram matrix, exactly.
///
/// With `B` the pivot columns of `G`, every solution of `G u = v` that lies in
/// the range of `G` is `u = B y`, and `G B` has full column rank, so
/// `u = B ((GB)^T GB)^-1 (GB)^T v`.
pub fn gram_pseudo_inverse(g: &RationalMatrix) -> RationalMatrix {
    let (_, pivots) = g.rref();
    if pivots.is_empty() {
        return RationalMatrix::zeros(g.cols(), g.rows());
    }
    let b = g.select_columns(&pivots);
    let gb = g.mul(&b);
    let gbt = gb.transpose();
    let inner = gbt.mul(&gb).inverse().expect("G B has full column rank");
    b.mul(&inner).mul(&gbt)
}

/// Exact solver for the Haar twirl at fixed `(n, d, k)`.
#[derive(Clone, Debug)]
pub struct PermutationBasis {
    params: SystemParams,
    k: usize,
    perms: Vec<Permutation>,
    gram: RationalMatrix,
    pinv: RationalMatrix,
    rank: usize,
}

impl PermutationBasis {
    pub fn new(params: SystemParams, k: usize) -> Result<Self> {
        if k == 0 || k > MAX_TWIRL_K {
            return Err(Error::Parameter(format!(
                "Haar twirl supports 1 <= k <= {MAX_TWIRL_K}, got {k}"
            )));
        }
        let gram = gram_matrix(k, params.dim())?;
        let rank = gram.rank();
        let pinv = gram_pseudo_inverse(&gram);
        Ok(PermutationBasis {
            params,
            k,
            perms: Permutation::all(k),
            gram,
            pinv,
            rank,
        })
    }

    /// Cached instance.
    pub fn get(params: SystemParams, k: usize) -> Result<Arc<PermutationBasis>> {
        type Cache = Mutex<HashMap<(SystemParams, usize), Arc<PermutationBasis>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(b) = cache.lock().expect("cache poisoned").get(&(params, k)) {
            return Ok(b.clone());
        }
        let b = Arc::new(PermutationBasis::new(params, k)?);
        cache.lock().expect("cache poisoned").insert((params, k), b.clone());
        Ok(b)
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn perms(&self) -> &[Permutation] {
        &self.perms
    }

    pub fn gram(&self) -> &RationalMatrix {
        &self.gram
    }

    pub fn pseudo_inverse(&self) -> &RationalMatrix {
        &self.pinv
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn w(&self, index: usize) -> Result<Arc<SparseOperator>> {
        w_operator(&self.perms[index], self.params)
    }

    /// `u = G^+ v` for inner products `v_sigma = <W_sigma, X>`.
    pub fn solve(&self, v: &[Cyclotomic]) -> Vec<Cyclotomic> {
        let order = self.params.phase_order();
        (0..self.perms.len())
            .map(|i| {
                let mut acc = Cyclotomic::zero(order);
                for (j, vj) in v.iter().enumerate() {
                    let g = &self.pinv[(i, j)];
                    if !g.is_zero() && !vj.is_zero() {
                        acc += &vj.scale(g);
                    }
                }
                acc
            })
            .collect()
    }

    /// `sum_pi u_pi W_pi`.
    pub fn combine(&self, u: &[Cyclotomic]) -> Result<SparseOperator> {
        let mut out = SparseOperator::zero(self.params, self.k);
        for (i, c) in u.iter().enumerate() {
            if !c.is_zero() {
                out = out.add(&self.w(i)?.scale(c))?;
            }
        }
        Ok(out)
    }

    pub fn coefficients(&self, x: &SparseOperator) -> Result<HaarCoefficients> {
        if x.params() != self.params || x.k() != self.k {
            return Err(Error::Parameter(
                "operator shape does not match the permutation basis".into(),
            ));
        }
        let v = (0..self.perms.len())
            .map(|i| self.w(i)?.hs_inner(x))
            .collect::<Result<Vec<_>>>()?;
        let u = self.solve(&v);
        Ok(HaarCoefficients {
            perms: self.perms.clone(),
            coeffs: u,
            exact: true,
        })
    }
}

/// `T_k(X) = sum_pi u_pi W_pi`; `u` is the minimum-norm exact solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HaarCoefficients {
    pub perms: Vec<Permutation>,
    pub coeffs: Vec<Cyclotomic>,
    /// The Gram system was solved exactly (always true for this solver).
    pub exact: bool,
}

impl HaarCoefficients {
    pub fn get(&self, pi: &Permutation) -> Option<&Cyclotomic> {
        self.perms.iter().position(|p| p == pi).map(|i| &self.coeffs[i])
    }

    /// Common coefficient of all permutations of the given cycle type, if constant on it.
    pub fn class_value(&self, cycle_type: &[usize]) -> Option<Cyclotomic> {
        let mut found: Option<&Cyclotomic> = None;
        for (p, c) in self.perms.iter().zip(&self.coeffs) {
            if p.cycle_type() == cycle_type {
                match found {
                    None => found = Some(c),
                    Some(prev) if prev != c => return None,
                    _ => {}
                }
            }
        }
        found.cloned()
    }
}

pub fn haar_twirl(x: &SparseOperator) -> Result<(SparseOperator, HaarCoefficients)> {
    let basis = PermutationBasis::get(x.params(), x.k())?;
    let coeffs = basis.coefficients(x)?;
    let t = basis.combine(&coeffs.coeffs)?;
    Ok((t, coeffs))
}

/// Whether `X` equals its projection onto the span of the `W_pi`, with the coefficients.
pub fn is_in_permutation_span(x: &SparseOperator) -> Result<(bool, HaarCoefficients)> {
    let (t, coeffs) = haar_twirl(x)?;
    let diff = x.sub(&t)?;
    let residual = diff.hs_inner(&diff)?;
    Ok((residual.is_zero(), coeffs))
}

/// `rank(G)`, the number of linearly independent `W_pi` for `k` copies of dimension `dim`.
pub fn haar_frame_potential(k: usize, dim: u64) -> Result<BigInt> {
    Ok(BigInt::from(gram_matrix(k, dim)?.rank()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operator::PauliTensor;

    fn p(n: usize, d: u32) -> SystemParams {
        SystemParams::new(n, d).unwrap()
    }

    fn perm(s: &str, k: usize) -> Permutation {
        Permutation::parse(s, k).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(perm("(123)", 3).images(), &[1, 2, 0]);
        assert_eq!(perm("(12)(34)", 4).images(), &[1, 0, 3, 2]);
        assert!(perm("e", 3).is_identity());
        assert_eq!(perm("(132)", 3).to_string(), "(132)");
        assert_eq!(perm("(312)", 3).to_string(), "(123)");
        assert_eq!(perm("(34)(12)", 4).to_string(), "(12)(34)");
        assert!(Permutation::parse("(11)", 3).is_err());
        assert!(Permutation::parse("(14)", 3).is_err());
        assert!(Permutation::parse("(12", 3).is_err());
    }

    #[test]
    fn group_structure() {
        let all = Permutation::all(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        let a = perm("(123)", 3);
        assert_eq!(a.compose(&a.inverse()), Permutation::identity(3));
        assert_eq!(a.compose(&a), perm("(132)", 3));
        assert_eq!(perm("(12)(34)", 4).cycle_type(), vec![2, 2]);
        assert_eq!(perm("(12)", 3).num_cycles(), 2);
        assert!(perm("(12)", 3).has_fixed_point());
        assert!(!perm("(1234)", 4).has_fixed_point());
    }

    #[test]
    fn basis_action_moves_register_contents() {
        // |a,b,c> -> |c,a,b> for (123) on qubits.
        let act = perm("(123)", 3).basis_action(2);
        assert_eq!(act[0b100], 0b010);
        assert_eq!(act[0b001], 0b100);
    }

    #[test]
    fn swap_decomposition() {
        let q = p(1, 2);
        let w = w_pauli_decomposition(&perm("(12)", 2), q).unwrap();
        assert_eq!(w.len(), 4);
        for (key, c) in w.terms() {
            assert_eq!(key[0], key[1]);
            assert_eq!(c, &Cyclotomic::from_ratio(4, 1, 2));
        }
        let id = w_pauli_decomposition(&Permutation::identity(3), q).unwrap();
        assert_eq!(id, SparseOperator::identity(q, 3));
    }

    #[test]
    fn qutrit_three_cycle() {
        let t = p(1, 3);
        let w = w_pauli_decomposition(&perm("(123)", 3), t).unwrap();
        assert_eq!(w.len(), 81);
        // Each term is p1 (x) p2 (x) (p2^+ p1^+) with weight 1/9 once its phase is folded in.
        for l1 in 0..9 {
            for l2 in 0..9 {
                let p1 = PauliLabel::from_index(t, l1).representative();
                let p2 = PauliLabel::from_index(t, l2).representative();
                let third = mul_unchecked(&p2.dagger(), &p1.dagger());
                let probe = PauliTensor::from_strings(&[p1, p2, third]).unwrap();
                assert_eq!(w.normalized_overlap(&probe), Cyclotomic::from_ratio(3, 1, 9));
            }
        }
        assert_eq!(w, w_pauli_decomposition_dense(&perm("(123)", 3), t).unwrap());
    }

    #[test]
    fn closed_forms_match_dense() {
        for (params, k) in [(p(1, 2), 2), (p(1, 2), 3), (p(1, 3), 2), (p(1, 3), 3), (p(1, 2), 4)] {
            for pi in Permutation::all(k) {
                assert_eq!(
                    w_pauli_decomposition(&pi, params).unwrap(),
                    w_pauli_decomposition_dense(&pi, params).unwrap(),
                    "{pi} at {params:?}"
                );
            }
        }
    }

    #[test]
    fn gram_examples() {
        let g2 = gram_matrix(2, 5).unwrap();
        assert_eq!(g2[(0, 0)], r(25, 1));
        assert_eq!(g2[(0, 1)], r(5, 1));
        let g3 = gram_matrix(3, 2).unwrap();
        assert_eq!(g3, g3.transpose());
        assert!((0..6).all(|i| g3[(i, i)] == r(8, 1)));
        assert_eq!(g3.rank(), 5);
        assert_eq!(haar_frame_potential(2, 4).unwrap(), BigInt::from(2));
        assert!(gram_matrix(7, 2).is_err());
    }

    #[test]
    fn pseudo_inverse_laws() {
        for (k, dim) in [(3, 2), (4, 2), (3, 4)] {
            let g = gram_matrix(k, dim).unwrap();
            let pinv = gram_pseudo_inverse(&g);
            assert_eq!(g.mul(&pinv).mul(&g), g);
            assert_eq!(pinv.mul(&g).mul(&pinv), pinv);
            assert_eq!(pinv, pinv.transpose());
        }
    }

    #[test]
    fn twirl_examples() {
        let q = p(1, 2);
        let w12 = w_pauli_decomposition(&perm("(12)", 2), q).unwrap();
        assert_eq!(haar_twirl(&w12).unwrap().0, w12);

        let x = PauliLabel::parse("X1 Z0", q).unwrap();
        let z = PauliLabel::parse("X0 Z1", q).unwrap();
        let xx = SparseOperator::from_tensor(&PauliTensor::new(q, vec![x.clone(), x.clone()], 0).unwrap());
        let expect = w12
            .scale_rational(&r(2, 3))
            .sub(&SparseOperator::identity(q, 2).scale_rational(&r(1, 3)))
            .unwrap();
        assert_eq!(haar_twirl(&xx).unwrap().0, expect);

        let xz = SparseOperator::from_tensor(&PauliTensor::new(q, vec![x, z], 0).unwrap());
        assert!(haar_twirl(&xz).unwrap().0.is_empty());
        assert!(haar_twirl(&SparseOperator::identity(q, 5)).is_err());
    }

    #[test]
    fn permutation_span_membership() {
        let q = p(1, 2);
        let w123 = w_pauli_decomposition(&perm("(123)", 3), q).unwrap();
        let combo = w123
            .scale_rational(&r(3, 1))
            .sub(&SparseOperator::identity(q, 3))
            .unwrap();
        assert!(is_in_permutation_span(&combo).unwrap().0);
        let x = PauliLabel::parse("X1 Z0", q).unwrap();
        let xxx = SparseOperator::from_tensor(&PauliTensor::new(q, vec![x.clone(), x.clone(), x], 0).unwrap());
        assert!(!is_in_permutation_span(&xxx).unwrap().0);
        let (inside, coeffs) = is_in_permutation_span(&SparseOperator::zero(q, 3)).unwrap();
        assert!(inside);
        assert!(coeffs.coeffs.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn coefficients_reproduce_inner_products() {
        let q = p(1, 2);
        let basis = PermutationBasis::get(q, 4).unwrap();
        let x = PauliLabel::parse("X1 Z0", q).unwrap();
        let op = SparseOperator::from_tensor(&PauliTensor::new(q, vec![x; 4], 0).unwrap());
        let coeffs = basis.coefficients(&op).unwrap();
        let t = basis.combine(&coeffs.coeffs).unwrap();
        for i in 0..24 {
            let w = basis.w(i).unwrap();
            assert_eq!(w.hs_inner(&t).unwrap(), w.hs_inner(&op).unwrap());
        }
        assert!(coeffs.class_value(&[4]).is_some());
        assert!(coeffs.class_value(&[2, 2]).is_some());
    }
}
