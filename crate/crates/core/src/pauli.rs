//! Phase-tracked generalized Pauli operators on `n` qudits of dimension `d`.
//!
//! A [`PauliString`] is `w^s * prod_j X_j^{x_j} Z_j^{z_j}` in X-before-Z normal
//! form, where `w` is a root of unity of order `d` (odd `d`) or `2d` (even `d`)
//! and `X|j> = |j+1>`, `Z|j> = omega^j |j>` with `omega = w^(N/d)`.
//!
//! Labels (phase-free `(x, z)` pairs) are indexed in lexicographic order,
//! x-major, which is also the global ordering used by every report.

use std::fmt;

use crate::error::{Error, Result};

/// Largest Hilbert-space dimension for which the full label set is enumerated.
pub const MAX_ENUMERATION_DIM: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SystemParams {
    n: usize,
    d: u32,
}

impl SystemParams {
    pub fn new(n: usize, d: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Parameter("qudit count n must be positive".into()));
        }
        if !(2..=10).contains(&d) {
            return Err(Error::Parameter(format!(
                "local dimension d must lie in 2..=10 (digit label syntax), got {d}"
            )));
        }
        let labels = (d as u128).checked_pow(2 * n as u32);
        if labels.is_none_or(|l| l > u32::MAX as u128) {
            return Err(Error::capacity(
                "label index space d^(2n)",
                format!("{d}^{}", 2 * n),
                u32::MAX,
            ));
        }
        Ok(SystemParams { n, d })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Hilbert-space dimension `D = d^n`.
    pub fn dim(&self) -> u64 {
        (self.d as u64).pow(self.n as u32)
    }

    /// Order of the phase root `w`: `d` for odd `d`, `2d` for even `d`.
    pub fn phase_order(&self) -> u32 {
        if self.d % 2 == 1 {
            self.d
        } else {
            2 * self.d
        }
    }

    /// `omega = w^omega_step()`.
    pub fn omega_step(&self) -> u32 {
        self.phase_order() / self.d
    }

    /// Number of labels `d^(2n)`, identity included.
    pub fn num_labels(&self) -> u32 {
        self.d.pow(2 * self.n as u32)
    }

    pub fn d_is_prime(&self) -> bool {
        let d = self.d;
        d >= 2 && (2..d).take_while(|p| p * p <= d).all(|p| !d.is_multiple_of(p))
    }

    pub(crate) fn check_same(&self, other: &SystemParams) -> Result<()> {
        if self != other {
            return Err(Error::Parameter(format!(
                "system mismatch: (n={}, d={}) vs (n={}, d={})",
                self.n, self.d, other.n, other.d
            )));
        }
        Ok(())
    }

    pub(crate) fn encode(&self, x: &[u8], z: &[u8]) -> u32 {
        let d = self.d;
        x.iter().chain(z.iter()).fold(0u32, |acc, &v| acc * d + v as u32)
    }

    pub(crate) fn decode(&self, mut index: u32) -> (Vec<u8>, Vec<u8>) {
        let n = self.n;
        let mut digits = vec![0u8; 2 * n];
        for slot in digits.iter_mut().rev() {
            *slot = (index % self.d) as u8;
            index /= self.d;
        }
        let z = digits.split_off(n);
        (digits, z)
    }

    /// Phase exponent of the canonical representative of a label:
    /// `i^{x.z}` for qubits, `1` for odd `d`, `w^{x.z}` for even `d > 2`.
    pub(crate) fn canonical_phase(&self, x: &[u8], z: &[u8]) -> u32 {
        if self.d % 2 == 1 {
            return 0;
        }
        let dot: u64 = x.iter().zip(z).map(|(&a, &b)| a as u64 * b as u64).sum();
        (dot % self.phase_order() as u64) as u32
    }
}

/// Phase-free Pauli label `(x, z)`: an element of the Pauli group modulo phases.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliLabel {
    params: SystemParams,
    x: Vec<u8>,
    z: Vec<u8>,
}

impl PauliLabel {
    pub fn new(params: SystemParams, x: Vec<u8>, z: Vec<u8>) -> Result<Self> {
        if x.len() != params.n || z.len() != params.n {
            return Err(Error::Parameter(format!(
                "label vectors must have length n={}",
                params.n
            )));
        }
        let d = params.d as u8;
        Ok(PauliLabel {
            params,
            x: x.into_iter().map(|v| v % d).collect(),
            z: z.into_iter().map(|v| v % d).collect(),
        })
    }

    pub fn identity(params: SystemParams) -> Self {
        PauliLabel {
            params,
            x: vec![0; params.n],
            z: vec![0; params.n],
        }
    }

    pub fn from_index(params: SystemParams, index: u32) -> Self {
        let (x, z) = params.decode(index);
        PauliLabel { params, x, z }
    }

    pub fn index(&self) -> u32 {
        self.params.encode(&self.x, &self.z)
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn z(&self) -> &[u8] {
        &self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Canonical representative: Hermitian for qubits, phase-free for odd `d`.
    pub fn representative(&self) -> PauliString {
        PauliString {
            params: self.params,
            s: self.params.canonical_phase(&self.x, &self.z),
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    /// Componentwise `a * self + b * other` over `Z_d`.
    pub fn combine(&self, a: u32, other: &PauliLabel, b: u32) -> PauliLabel {
        let d = self.params.d;
        let mix = |u: &[u8], v: &[u8]| {
            u.iter()
                .zip(v)
                .map(|(&p, &q)| ((a * p as u32 + b * q as u32) % d) as u8)
                .collect()
        };
        PauliLabel {
            params: self.params,
            x: mix(&self.x, &other.x),
            z: mix(&self.z, &other.z),
        }
    }

    pub fn parse(text: &str, params: SystemParams) -> Result<Self> {
        let p = PauliString::parse(text, params)?;
        if p.s != 0 {
            return Err(Error::Parse(format!("label '{text}' must not carry a phase")));
        }
        Ok(p.label())
    }
}

impl fmt::Display for PauliLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X{} Z{}", digits(&self.x), digits(&self.z))
    }
}

fn digits(v: &[u8]) -> String {
    v.iter().map(|&c| char::from(b'0' + c)).collect()
}

/// `w^s * X^x Z^z` in normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PauliString {
    params: SystemParams,
    x: Vec<u8>,
    z: Vec<u8>,
    s: u32,
}

impl PauliString {
    pub fn new(params: SystemParams, x: Vec<u8>, z: Vec<u8>, s: i64) -> Result<Self> {
        let label = PauliLabel::new(params, x, z)?;
        Ok(Self::from_label(&label, s))
    }

    pub fn from_label(label: &PauliLabel, s: i64) -> Self {
        PauliString {
            params: label.params,
            x: label.x.clone(),
            z: label.z.clone(),
            s: s.rem_euclid(label.params.phase_order() as i64) as u32,
        }
    }

    pub fn identity(params: SystemParams) -> Self {
        PauliLabel::identity(params).representative()
    }

    /// `X` on site `j`.
    pub fn x_gen(params: SystemParams, j: usize) -> Self {
        let mut p = Self::identity(params);
        p.x[j] = 1;
        p
    }

    /// `Z` on site `j`.
    pub fn z_gen(params: SystemParams, j: usize) -> Self {
        let mut p = Self::identity(params);
        p.z[j] = 1;
        p
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn x(&self) -> &[u8] {
        &self.x
    }

    pub fn z(&self) -> &[u8] {
        &self.z
    }

    /// Phase exponent `s` in `w^s X^x Z^z`.
    pub fn phase(&self) -> u32 {
        self.s
    }

    pub fn label(&self) -> PauliLabel {
        PauliLabel {
            params: self.params,
            x: self.x.clone(),
            z: self.z.clone(),
        }
    }

    pub fn label_index(&self) -> u32 {
        self.params.encode(&self.x, &self.z)
    }

    pub fn is_identity_label(&self) -> bool {
        self.x.iter().chain(&self.z).all(|&v| v == 0)
    }

    /// Exponent `t` with `self = w^t * representative(label)`.
    pub fn phase_relative_to_rep(&self) -> u32 {
        let n = self.params.phase_order();
        let s0 = self.params.canonical_phase(&self.x, &self.z);
        (self.s + n - s0) % n
    }

    pub fn with_phase(&self, s: i64) -> Self {
        PauliString {
            s: s.rem_euclid(self.params.phase_order() as i64) as u32,
            ..self.clone()
        }
    }

    /// Multiply by `w^t`.
    pub fn times_root(&self, t: i64) -> Self {
        self.with_phase(self.s as i64 + t)
    }

    pub fn mul(&self, other: &PauliString) -> Result<PauliString> {
        pauli_mul(self, other)
    }

    pub fn dagger(&self) -> PauliString {
        pauli_dagger(self)
    }

    pub fn pow(&self, m: u32) -> PauliString {
        let mut acc = Self::identity(self.params);
        for _ in 0..m {
            acc = mul_unchecked(&acc, self);
        }
        acc
    }

    /// Whether `self^d` is the identity (membership in the phased set of order-dividing-d elements).
    pub fn has_order_dividing_d(&self) -> bool {
        let p = self.pow(self.params.d);
        p.is_identity_label() && p.s == 0
    }

    /// Parse `w^s X<digits> Z<digits>`; the `w^s` prefix is optional.
    pub fn parse(text: &str, params: SystemParams) -> Result<Self> {
        let mut s = 0i64;
        let mut x = None;
        let mut z = None;
        for tok in text.split_whitespace() {
            if let Some(rest) = tok.strip_prefix("w^") {
                s = rest
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad phase exponent in '{text}'")))?;
            } else if let Some(rest) = tok.strip_prefix('X') {
                x = Some(parse_digits(rest, params, text)?);
            } else if let Some(rest) = tok.strip_prefix('Z') {
                z = Some(parse_digits(rest, params, text)?);
            } else {
                return Err(Error::Parse(format!("unexpected token '{tok}' in '{text}'")));
            }
        }
        let x = x.ok_or_else(|| Error::Parse(format!("missing X part in '{text}'")))?;
        let z = z.ok_or_else(|| Error::Parse(format!("missing Z part in '{text}'")))?;
        PauliString::new(params, x, z, s)
    }
}

fn parse_digits(s: &str, params: SystemParams, text: &str) -> Result<Vec<u8>> {
    if s.len() != params.n {
        return Err(Error::Parse(format!(
            "'{text}': expected {} digits per vector",
            params.n
        )));
    }
    s.chars()
        .map(|c| {
            c.to_digit(10)
                .filter(|&v| v < params.d)
                .map(|v| v as u8)
                .ok_or_else(|| Error::Parse(format!("'{text}': digit '{c}' out of range")))
        })
        .collect()
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.s != 0 {
            write!(f, "w^{} ", self.s)?;
        }
        write!(f, "X{} Z{}", digits(&self.x), digits(&self.z))
    }
}

fn dot(a: &[u8], b: &[u8]) -> u64 {
    a.iter().zip(b).map(|(&u, &v)| u as u64 * v as u64).sum()
}

pub(crate) fn mul_unchecked(p: &PauliString, q: &PauliString) -> PauliString {
    let params = p.params;
    let d = params.d as u8;
    let order = params.phase_order() as u64;
    let s = (p.s as u64 + q.s as u64 + params.omega_step() as u64 * dot(&p.z, &q.x)) % order;
    PauliString {
        params,
        x: p.x.iter().zip(&q.x).map(|(&a, &b)| (a + b) % d).collect(),
        z: p.z.iter().zip(&q.z).map(|(&a, &b)| (a + b) % d).collect(),
        s: s as u32,
    }
}

/// Normal-form product `pq`.
pub fn pauli_mul(p: &PauliString, q: &PauliString) -> Result<PauliString> {
    p.params.check_same(&q.params)?;
    Ok(mul_unchecked(p, q))
}

/// Normal form of `p^dagger = w^{-s} Z^{-z} X^{-x}`.
pub fn pauli_dagger(p: &PauliString) -> PauliString {
    let params = p.params;
    let d = params.d as u8;
    let order = params.phase_order() as u64;
    let neg = |v: &[u8]| v.iter().map(|&a| (d - a) % d).collect::<Vec<_>>();
    let s = (order - p.s as u64 % order + params.omega_step() as u64 * dot(&p.x, &p.z)) % order;
    PauliString {
        params,
        x: neg(&p.x),
        z: neg(&p.z),
        s: s as u32,
    }
}

/// Exponent `F(p, q)` in `pq = omega^F qp`, i.e. `z_p.x_q - x_p.z_q mod d`.
pub fn commutation(p: &PauliLabel, q: &PauliLabel) -> u32 {
    commutation_raw(p.params.d, &p.x, &p.z, &q.x, &q.z)
}

pub(crate) fn commutation_raw(d: u32, px: &[u8], pz: &[u8], qx: &[u8], qz: &[u8]) -> u32 {
    let d = d as u64;
    let a = dot(pz, qx) % d;
    let b = dot(px, qz) % d;
    ((a + d - b) % d) as u32
}

/// Commutation exponent of two phased strings; phases do not enter.
pub fn commutation_strings(p: &PauliString, q: &PauliString) -> u32 {
    commutation_raw(p.params.d, &p.x, &p.z, &q.x, &q.z)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliFilter {
    /// Every label, as the phase-free string `X^x Z^z`.
    All,
    /// Every non-identity label, as `X^x Z^z`.
    NonIdentity,
    /// Canonical representatives of every label.
    HermitianReps,
}

/// Labels in lexicographic (x-major) order.
pub fn enumerate_labels(params: SystemParams, include_identity: bool) -> Result<Vec<PauliLabel>> {
    if params.dim() > MAX_ENUMERATION_DIM {
        return Err(Error::capacity(
            "Pauli label enumeration (Hilbert dimension)",
            params.dim(),
            MAX_ENUMERATION_DIM,
        ));
    }
    let start = if include_identity { 0 } else { 1 };
    Ok((start..params.num_labels())
        .map(|i| PauliLabel::from_index(params, i))
        .collect())
}

pub fn enumerate_paulis(params: SystemParams, filter: PauliFilter) -> Result<Vec<PauliString>> {
    let labels = enumerate_labels(params, filter != PauliFilter::NonIdentity)?;
    Ok(labels
        .iter()
        .map(|l| match filter {
            PauliFilter::HermitianReps => l.representative(),
            _ => PauliString::from_label(l, 0),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: usize, d: u32) -> SystemParams {
        SystemParams::new(n, d).unwrap()
    }

    #[test]
    fn params_invariants() {
        let q = p(2, 2);
        assert_eq!(q.dim(), 4);
        assert_eq!(q.phase_order(), 4);
        assert_eq!(p(1, 3).phase_order(), 3);
        assert_eq!(p(1, 4).phase_order(), 8);
        assert!(SystemParams::new(0, 2).is_err());
        assert!(SystemParams::new(1, 1).is_err());
        assert!(p(1, 3).d_is_prime());
        assert!(!p(1, 4).d_is_prime());
    }

    #[test]
    fn qubit_products() {
        let q = p(1, 2);
        let x = PauliString::x_gen(q, 0);
        let z = PauliString::z_gen(q, 0);
        let xz = pauli_mul(&x, &z).unwrap();
        assert_eq!((xz.x(), xz.z(), xz.phase()), (&[1u8][..], &[1u8][..], 0));
        let zx = pauli_mul(&z, &x).unwrap();
        assert_eq!((zx.x(), zx.z(), zx.phase()), (&[1u8][..], &[1u8][..], 2));
    }

    #[test]
    fn qutrit_zx_is_omega_xz() {
        let q = p(1, 3);
        let zx = pauli_mul(&PauliString::z_gen(q, 0), &PauliString::x_gen(q, 0)).unwrap();
        // omega = w^1 for odd d
        assert_eq!(zx, PauliString::new(q, vec![1], vec![1], 1).unwrap());
    }

    #[test]
    fn mismatched_systems_are_rejected() {
        let a = PauliString::x_gen(p(1, 2), 0);
        let b = PauliString::x_gen(p(2, 2), 0);
        assert!(matches!(pauli_mul(&a, &b), Err(Error::Parameter(_))));
    }

    #[test]
    fn daggers() {
        let q = p(1, 2);
        let y = PauliLabel::new(q, vec![1], vec![1]).unwrap().representative();
        assert_eq!(y.phase(), 1);
        assert_eq!(pauli_dagger(&y), y);

        let t = p(1, 3);
        let x = PauliString::x_gen(t, 0);
        assert_eq!(pauli_dagger(&x), PauliString::new(t, vec![2], vec![0], 0).unwrap());
        let xz = PauliString::new(t, vec![1], vec![1], 0).unwrap();
        let z2x2 = pauli_mul(
            &PauliString::new(t, vec![0], vec![2], 0).unwrap(),
            &PauliString::new(t, vec![2], vec![0], 0).unwrap(),
        )
        .unwrap();
        assert_eq!(pauli_dagger(&xz), z2x2);
        for d in [2u32, 3, 5] {
            for l in enumerate_labels(p(1, d), true).unwrap() {
                for s in 0..p(1, d).phase_order() as i64 {
                    let a = PauliString::from_label(&l, s);
                    assert_eq!(
                        pauli_mul(&a, &pauli_dagger(&a)).unwrap(),
                        PauliString::identity(p(1, d))
                    );
                }
            }
        }
    }

    #[test]
    fn commutation_values() {
        let q = p(1, 2);
        let x = PauliString::x_gen(q, 0).label();
        let z = PauliString::z_gen(q, 0).label();
        assert_eq!(commutation(&x, &z), 1);
        assert_eq!(commutation(&x, &x), 0);
        let t = p(1, 3);
        let x = PauliString::x_gen(t, 0).label();
        let z = PauliString::z_gen(t, 0).label();
        assert_eq!(commutation(&x, &z), 2);
        assert_eq!(commutation(&z, &x), 1);
    }

    #[test]
    fn enumeration_counts_and_order() {
        let q = p(1, 2);
        let labels: Vec<_> = enumerate_paulis(q, PauliFilter::NonIdentity)
            .unwrap()
            .iter()
            .map(|s| (s.x()[0], s.z()[0]))
            .collect();
        assert_eq!(labels, vec![(0, 1), (1, 0), (1, 1)]);
        assert_eq!(enumerate_paulis(p(2, 2), PauliFilter::All).unwrap().len(), 16);
        assert_eq!(enumerate_paulis(p(1, 3), PauliFilter::NonIdentity).unwrap().len(), 8);
        let reps = enumerate_paulis(q, PauliFilter::HermitianReps).unwrap();
        assert!(reps.iter().all(|r| r.pow(2) == PauliString::identity(q)));
        assert!(matches!(
            enumerate_paulis(p(6, 3), PauliFilter::All),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn order_dividing_d() {
        let q = p(1, 2);
        let y = PauliLabel::new(q, vec![1], vec![1]).unwrap();
        assert!(y.representative().has_order_dividing_d());
        assert!(!PauliString::from_label(&y, 0).has_order_dividing_d());
        assert!(PauliString::from_label(&y, 3).has_order_dividing_d());
        let t = p(1, 3);
        for l in enumerate_labels(t, false).unwrap() {
            for s in 0..3 {
                assert!(PauliString::from_label(&l, s).has_order_dividing_d());
            }
        }
    }

    #[test]
    fn text_round_trip() {
        let q = p(2, 2);
        let a = PauliString::parse("X10 Z01", q).unwrap();
        assert_eq!(a.to_string(), "X10 Z01");
        let b = PauliString::parse("w^3 X11 Z01", q).unwrap();
        assert_eq!(b.phase(), 3);
        assert_eq!(PauliString::parse(&b.to_string(), q).unwrap(), b);
        assert!(PauliString::parse("X1 Z0", q).is_err());
        assert!(PauliString::parse("X12 Z00", q).is_err());
        assert_eq!(PauliLabel::parse("X01 Z10", q).unwrap().to_string(), "X01 Z10");
    }

    #[test]
    fn index_order_is_lexicographic() {
        let q = p(2, 3);
        let labels = enumerate_labels(q, true).unwrap();
        for w in labels.windows(2) {
            assert!(w[0] < w[1]);
        }
        for (i, l) in labels.iter().enumerate() {
            assert_eq!(l.index(), i as u32);
        }
    }
}
