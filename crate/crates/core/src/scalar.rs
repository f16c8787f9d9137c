//! Exact arithmetic in the cyclotomic field `Q[w]`, where `w` is a primitive
//! root of unity of some order `N`.
//!
//! Elements are stored as rational coefficient vectors over the power basis
//! `1, w, ..., w^(phi(N)-1)`, reduced by the `N`-th cyclotomic polynomial, so
//! structural equality is field equality.
//!
//! [`ZCyclo`] is the integer counterpart used on hot accumulation paths: the
//! same basis with `i128` coefficients, valid because the cyclotomic polynomial
//! is monic with integer coefficients.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use smallvec::SmallVec;

/// Reduction data for `Q[x]/Phi_N(x)`.
#[derive(Debug)]
pub(crate) struct Field {
    pub(crate) order: u32,
    pub(crate) degree: usize,
    /// `x^j mod Phi_N` for `j in 0..N`, as integer vectors of length `degree`.
    pub(crate) powers: Vec<Vec<i64>>,
    units: Vec<u32>,
}

fn cyclotomic_poly(n: u32) -> Vec<i64> {
    // x^n - 1 divided by Phi_m for every proper divisor m.
    let mut poly = vec![0i64; n as usize + 1];
    poly[0] = -1;
    poly[n as usize] = 1;
    for m in 1..n {
        if n.is_multiple_of(m) {
            poly = divide_monic(&poly, &cyclotomic_poly(m));
        }
    }
    poly
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for i in (0..=qd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        for (j, &dj) in den.iter().enumerate() {
            rem[i + j] -= c * dj;
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

impl Field {
    fn build(order: u32) -> Field {
        assert!(order >= 1, "root-of-unity order must be positive");
        let phi = cyclotomic_poly(order);
        let degree = phi.len() - 1;
        let mut powers = Vec::with_capacity(order as usize);
        let mut cur = vec![0i64; degree];
        cur[0] = 1;
        for _ in 0..order {
            powers.push(cur.clone());
            let carry = cur[degree - 1];
            let mut next = vec![0i64; degree];
            next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
            for i in 0..degree {
                next[i] -= carry * phi[i];
            }
            cur = next;
        }
        let units = (1..=order).filter(|a| a.gcd(&order) == 1).map(|a| a % order).collect();
        Field {
            order,
            degree,
            powers,
            units,
        }
    }
}

pub(crate) fn field(order: u32) -> &'static Field {
    static FIELDS: OnceLock<Mutex<HashMap<u32, &'static Field>>> = OnceLock::new();
    let mut map = FIELDS
        .get_or_init(|| Mutex::new(HashMap::new()))
        .lock()
        .expect("field cache poisoned");
    map.entry(order)
        .or_insert_with(|| Box::leak(Box::new(Field::build(order))))
}

/// Element of `Q[w]` with `w = exp(2 pi i / order)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Cyclotomic {
    order: u32,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(order: u32) -> Self {
        let f = field(order);
        Cyclotomic {
            order,
            coeffs: vec![BigRational::zero(); f.degree],
        }
    }

    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    pub fn from_rational(order: u32, r: BigRational) -> Self {
        let mut z = Self::zero(order);
        z.coeffs[0] = r;
        z
    }

    pub fn from_int(order: u32, v: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(v)))
    }

    pub fn from_ratio(order: u32, num: i64, den: i64) -> Self {
        Self::from_rational(order, BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `w^j`.
    pub fn root(order: u32, j: i64) -> Self {
        let f = field(order);
        let j = j.rem_euclid(order as i64) as usize;
        Cyclotomic {
            order,
            coeffs: f.powers[j]
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        }
    }

    /// `(sum_j counts[j] w^j) / denom` for `counts` indexed by exponent.
    pub fn from_counts(order: u32, counts: &[i64], denom: &BigInt) -> Self {
        let z = ZCyclo::from_counts(order, counts);
        z.to_cyclotomic(denom)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Coefficients over the reduced power basis.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// The same element over `Z[w]`, if every coefficient is an integer that fits.
    pub fn to_integral(&self) -> Option<ZCyclo> {
        let coeffs: Option<Vec<i128>> = self
            .coeffs
            .iter()
            .map(|c| if c.is_integer() { c.numer().to_i128() } else { None })
            .collect();
        Some(ZCyclo::from_coeffs(self.order, &coeffs?))
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.order, other.order, "cyclotomic elements from different fields");
    }

    fn apply_exponent_map(&self, map: impl Fn(usize) -> usize) -> Self {
        let f = field(self.order);
        let mut out = vec![BigRational::zero(); f.degree];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let target = &f.powers[map(j) % f.order as usize];
            for (o, &t) in out.iter_mut().zip(target) {
                if t != 0 {
                    *o += c * BigInt::from(t);
                }
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: out,
        }
    }

    /// Complex conjugate, `w -> w^-1`.
    pub fn conj(&self) -> Self {
        let n = self.order as usize;
        self.apply_exponent_map(|j| (n - j % n) % n)
    }

    /// Galois automorphism `w -> w^a`.
    pub fn galois(&self, a: u32) -> Self {
        let n = self.order as usize;
        self.apply_exponent_map(|j| (j * a as usize) % n)
    }

    /// Field norm; always rational.
    pub fn norm(&self) -> BigRational {
        let f = field(self.order);
        let mut acc = Cyclotomic::one(self.order);
        for &a in &f.units {
            acc = &acc * &self.galois(a);
        }
        acc.as_rational().expect("field norm is rational")
    }

    pub fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let f = field(self.order);
        let mut others = Cyclotomic::one(self.order);
        for &a in &f.units {
            if a != 1 % f.order {
                others = &others * &self.galois(a);
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("product of all conjugates is rational");
        Some(others.scale(&norm.recip()))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Cyclotomic::one(self.order);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `|z|^2`, computed exactly.
    pub fn abs_sq(&self) -> Self {
        self * &self.conj()
    }

    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let theta = 2.0 * std::f64::consts::PI * j as f64 / n;
                Complex64::from_polar(ratio_to_f64(c), theta)
            })
            .sum()
    }
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    r.numer().to_f64().unwrap_or(f64::NAN) / r.denom().to_f64().unwrap_or(f64::NAN)
}

impl fmt::Display for Cyclotomic {
    /// Exact text form over the reduced power basis, e.g. `1/9 - 2/9*w`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match j {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*w")?,
                _ => write!(f, "{mag}*w^{j}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul<&Cyclotomic> for &Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check(rhs);
        let f = field(self.order);
        let mut full = vec![BigRational::zero(); 2 * f.degree - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    full[i + j] += a * b;
                }
            }
        }
        let mut out = vec![BigRational::zero(); f.degree];
        for (j, c) in full.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if j < f.degree {
                out[j] += c;
            } else {
                let target = &f.powers[j % f.order as usize];
                for (o, &t) in out.iter_mut().zip(target) {
                    if t != 0 {
                        *o += &c * BigInt::from(t);
                    }
                }
            }
        }
        Cyclotomic {
            order: self.order,
            coeffs: out,
        }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: Cyclotomic) -> Cyclotomic {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Cyclotomic> for Cyclotomic {
            type Output = Cyclotomic;
            fn $m(self, rhs: &Cyclotomic) -> Cyclotomic {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&Cyclotomic> for Cyclotomic {
    fn sub_assign(&mut self, rhs: &Cyclotomic) {
        self.check(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

/// Element of `Z[w]` over the reduced power basis.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZCyclo {
    order: u32,
    coeffs: SmallVec<[i128; 4]>,
}

impl ZCyclo {
    pub fn zero(order: u32) -> Self {
        ZCyclo {
            order,
            coeffs: SmallVec::from_elem(0, field(order).degree),
        }
    }

    pub fn root(order: u32, j: i64) -> Self {
        let f = field(order);
        let j = j.rem_euclid(order as i64) as usize;
        ZCyclo {
            order,
            coeffs: f.powers[j].iter().map(|&c| c as i128).collect(),
        }
    }

    /// Reduce `sum_j counts[j] w^j` (`counts.len() == order`).
    pub fn from_counts(order: u32, counts: &[i64]) -> Self {
        let f = field(order);
        let mut z = ZCyclo::zero(order);
        for (j, &c) in counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &t) in z.coeffs.iter_mut().zip(&f.powers[j % f.order as usize]) {
                *o += c as i128 * t as i128;
            }
        }
        z
    }

    pub fn from_coeffs(order: u32, coeffs: &[i128]) -> Self {
        assert_eq!(coeffs.len(), field(order).degree, "coefficient vector has wrong length");
        ZCyclo {
            order,
            coeffs: coeffs.iter().copied().collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn scale(&self, s: i128) -> Self {
        ZCyclo {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| c * s).collect(),
        }
    }

    pub fn conj(&self) -> Self {
        let f = field(self.order);
        let n = f.order as usize;
        let mut out = ZCyclo::zero(self.order);
        for (j, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &t) in out.coeffs.iter_mut().zip(&f.powers[(n - j % n) % n]) {
                *o += c * t as i128;
            }
        }
        out
    }

    pub fn mul(&self, rhs: &ZCyclo) -> ZCyclo {
        let f = field(self.order);
        let mut full: SmallVec<[i128; 8]> = SmallVec::from_elem(0, 2 * f.degree - 1);
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                full[i + j] += a * b;
            }
        }
        let mut out = ZCyclo::zero(self.order);
        for (j, c) in full.into_iter().enumerate() {
            if c == 0 {
                continue;
            }
            if j < f.degree {
                out.coeffs[j] += c;
            } else {
                for (o, &t) in out.coeffs.iter_mut().zip(&f.powers[j % f.order as usize]) {
                    *o += c * t as i128;
                }
            }
        }
        out
    }

    pub fn add_assign(&mut self, rhs: &ZCyclo) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }

    pub fn to_cyclotomic(&self, denom: &BigInt) -> Cyclotomic {
        Cyclotomic {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|&c| BigRational::new(BigInt::from(c), denom.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), vec![-1, 1]);
        assert_eq!(cyclotomic_poly(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_poly(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_poly(5), vec![1, 1, 1, 1, 1]);
    }

    #[test]
    fn roots_of_unity_multiply() {
        for order in [2u32, 3, 4, 5, 6, 8] {
            for a in 0..order as i64 {
                for b in 0..order as i64 {
                    let lhs = Cyclotomic::root(order, a) * Cyclotomic::root(order, b);
                    assert_eq!(lhs, Cyclotomic::root(order, a + b));
                }
            }
        }
    }

    #[test]
    fn sum_of_roots_vanishes() {
        for order in [2u32, 3, 4, 5, 6] {
            let mut acc = Cyclotomic::zero(order);
            for j in 0..order as i64 {
                acc += &Cyclotomic::root(order, j);
            }
            assert!(acc.is_zero(), "order {order}");
        }
    }

    #[test]
    fn conj_and_inverse() {
        let w = Cyclotomic::root(3, 1);
        assert_eq!(w.conj(), Cyclotomic::root(3, 2));
        let z = &Cyclotomic::from_int(3, 2) + &w;
        let inv = z.inverse().unwrap();
        assert_eq!(&z * &inv, Cyclotomic::one(3));
        assert!(z.abs_sq().as_rational().is_some());

        let i = Cyclotomic::root(4, 1);
        assert_eq!(i.conj(), -&i);
        assert_eq!(i.norm(), BigRational::one());
        let z5 = &Cyclotomic::from_int(5, 1) + &Cyclotomic::root(5, 2);
        assert_eq!(&z5 * &z5.inverse().unwrap(), Cyclotomic::one(5));
    }

    #[test]
    fn complex_realization() {
        let w = Cyclotomic::root(3, 1).to_complex();
        assert!((w - Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)).norm() < 1e-12);
        let i = Cyclotomic::root(4, 3).to_complex();
        assert!((i - Complex64::new(0.0, -1.0)).norm() < 1e-12);
    }

    #[test]
    fn integer_path_matches_rational_path() {
        let counts = [3i64, -1, 4, 2];
        let z = ZCyclo::from_counts(4, &counts);
        let c = z.to_cyclotomic(&BigInt::from(6));
        let mut expect = Cyclotomic::zero(4);
        for (j, &k) in counts.iter().enumerate() {
            expect += &Cyclotomic::root(4, j as i64).scale(&BigRational::new(k.into(), 6.into()));
        }
        assert_eq!(c, expect);
        let w = ZCyclo::root(3, 1);
        assert_eq!(w.mul(&w), ZCyclo::root(3, 2));
        assert_eq!(w.conj(), ZCyclo::root(3, 2));
    }

    #[test]
    fn display_is_exact() {
        let z = &Cyclotomic::from_ratio(3, 1, 9) - &Cyclotomic::root(3, 1).scale(&BigRational::new(2.into(), 9.into()));
        assert_eq!(z.to_string(), "1/9 - 2/9*w");
        assert_eq!(Cyclotomic::zero(4).to_string(), "0");
        assert_eq!(Cyclotomic::from_ratio(4, -1, 3).to_string(), "-1/3");
    }
}
