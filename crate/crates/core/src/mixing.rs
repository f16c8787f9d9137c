//! Pauli mixing, Pauli 2-mixing, Pauli invariance, and the pair census.

use std::collections::{BTreeMap, HashMap};
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::clifford::{clifford_group_order, valid_images, Ensemble};
use crate::design::CompiledEnsemble;
use crate::error::{Error, Result};
use crate::pauli::{commutation, PauliLabel, PauliString, SystemParams};

/// Largest `sources x entries` product a 2-mixing tabulation will run.
pub const MAX_MIXING_WORK: u64 = 500_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MixingKind {
    Mixing,
    TwoMixing,
}

/// One orbit class: the sources sharing an expected target weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingClass {
    pub name: String,
    pub expected: BigRational,
    pub sources: u64,
    pub targets: u64,
    /// Observed weight -> number of (source, target) cells with that weight.
    pub observed: BTreeMap<BigRational, u64>,
    pub pass: bool,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deviation {
    pub p: Vec<PauliLabel>,
    pub q: Vec<PauliString>,
    pub observed: BigRational,
    pub expected: BigRational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixingReport {
    pub kind: MixingKind,
    pub params: SystemParams,
    pub classes: Vec<MixingClass>,
    pub pass: bool,
    pub first_deviation: Option<Deviation>,
    pub elapsed_ms: u64,
}

impl MixingReport {
    pub fn class(&self, name: &str) -> Option<&MixingClass> {
        self.classes.iter().find(|c| c.name == name)
    }
}

/// Phased targets in `valid_images` order, indexed by `(label, phase relative to rep)`.
struct Targets {
    list: Vec<PauliString>,
    /// `index[label * order + rel_phase]`, or `usize::MAX` for phases of wrong order.
    index: Vec<usize>,
    order: usize,
}

impl Targets {
    fn new(params: SystemParams) -> Self {
        let list = valid_images(params);
        let order = params.phase_order() as usize;
        let mut index = vec![usize::MAX; params.num_labels() as usize * order];
        for (i, t) in list.iter().enumerate() {
            index[t.label_index() as usize * order + t.phase_relative_to_rep() as usize] = i;
        }
        Targets { list, index, order }
    }

    fn slot(&self, label: u32, phase: u8) -> usize {
        self.index[label as usize * self.order + phase as usize]
    }
}

struct Tally<'a> {
    denom: &'a BigInt,
    deviation: Option<Deviation>,
}

impl Tally<'_> {
    /// Record one cell; true when the observed weight equals `1/size`.
    fn cell(
        &mut self,
        class: &mut MixingClass,
        count: i64,
        size: u64,
        p: impl FnOnce() -> Vec<PauliLabel>,
        q: impl FnOnce() -> Vec<PauliString>,
    ) {
        let observed = BigRational::new(BigInt::from(count), self.denom.clone());
        let ok = BigInt::from(count) * BigInt::from(size) == *self.denom;
        *class.observed.entry(observed.clone()).or_default() += 1;
        if !ok {
            class.pass = false;
            if self.deviation.is_none() {
                self.deviation = Some(Deviation {
                    p: p(),
                    q: q(),
                    observed,
                    expected: class.expected.clone(),
                });
            }
        }
    }
}

fn new_class(name: &str, size: u64) -> MixingClass {
    MixingClass {
        name: name.to_string(),
        expected: if size == 0 {
            BigRational::zero()
        } else {
            BigRational::new(BigInt::one(), BigInt::from(size))
        },
        sources: 0,
        targets: size,
        observed: BTreeMap::new(),
        pass: true,
        note: None,
    }
}

/// Every nonidentity `p` must reach every phased target `q` with weight `1/(d(d^{2n}-1))`.
pub fn check_pauli_mixing(ens: &CompiledEnsemble) -> Result<MixingReport> {
    let start = Instant::now();
    let params = ens.params();
    let targets = Targets::new(params);
    let size = targets.list.len() as u64;
    let mut class = new_class("nonidentity", size);
    let mut tally = Tally {
        denom: ens.denom(),
        deviation: None,
    };
    let m = params.num_labels();
    let mut table = vec![0i64; targets.list.len()];
    for p in 1..m {
        table.iter_mut().for_each(|c| *c = 0);
        for e in 0..ens.len() {
            let (img, ph) = ens.act(e, p);
            let slot = targets.slot(img, ph);
            if slot == usize::MAX {
                return Err(Error::Contract(format!(
                    "entry {e} maps a Pauli outside the phased set"
                )));
            }
            table[slot] += ens.weight_numerator(e);
        }
        class.sources += 1;
        for (t, &count) in table.iter().enumerate() {
            tally.cell(
                &mut class,
                count,
                size,
                || vec![PauliLabel::from_index(params, p)],
                || vec![targets.list[t].clone()],
            );
        }
    }
    let pass = class.pass;
    Ok(MixingReport {
        kind: MixingKind::Mixing,
        params,
        classes: vec![class],
        pass,
        first_deviation: tally.deviation,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Whether `b` lies in the cyclic span of `a` over `Z_d`.
pub fn proportional(a: &PauliLabel, b: &PauliLabel) -> bool {
    let d = a.params().d();
    (0..d).any(|c| &a.combine(c, a, 0) == b)
}

/// Ordered target pairs `(q1, q2)` with `q2` outside the span of `q1` and `F(q1, q2) = l`,
/// as index pairs into `valid_images`.
fn h_classes(params: SystemParams, targets: &Targets) -> Vec<Vec<(usize, usize)>> {
    let d = params.d();
    let labels: Vec<PauliLabel> = targets.list.iter().map(|t| t.label()).collect();
    let mut out = vec![Vec::new(); d as usize];
    for (a, la) in labels.iter().enumerate() {
        for (b, lb) in labels.iter().enumerate() {
            if !proportional(la, lb) {
                out[commutation(la, lb) as usize].push((a, b));
            }
        }
    }
    out
}

/// `|H_l|` by enumeration.
pub fn h_class_sizes(params: SystemParams) -> Vec<u64> {
    let targets = Targets::new(params);
    h_classes(params, &targets).iter().map(|h| h.len() as u64).collect()
}

fn class_name(d: u32, l: usize) -> String {
    match (d, l) {
        (_, 0) => "commuting".to_string(),
        (2, _) => "anticommuting".to_string(),
        _ => format!("F={l}"),
    }
}

/// Every independent ordered pair `(p1, p2)` must reach every pair in `H_{F(p1,p2)}`
/// with weight `1/|H_{F(p1,p2)}|`.
pub fn check_pauli_2_mixing(ens: &CompiledEnsemble) -> Result<MixingReport> {
    let start = Instant::now();
    let params = ens.params();
    let m = params.num_labels();
    let targets = Targets::new(params);
    let nt = targets.list.len();
    let h = h_classes(params, &targets);
    let sources: Vec<(u32, u32)> = (1..m)
        .flat_map(|a| (1..m).map(move |b| (a, b)))
        .filter(|&(a, b)| !proportional(&PauliLabel::from_index(params, a), &PauliLabel::from_index(params, b)))
        .collect();
    let work = sources.len() as u64 * ens.len() as u64;
    if work > MAX_MIXING_WORK {
        return Err(Error::capacity(
            "2-mixing tabulation (pairs x entries)",
            work,
            MAX_MIXING_WORK,
        ));
    }
    let d = params.d();
    let mut classes: Vec<MixingClass> = (0..d as usize)
        .map(|l| new_class(&class_name(d, l), h[l].len() as u64))
        .collect();
    let mut tally = Tally {
        denom: ens.denom(),
        deviation: None,
    };
    let mut table = vec![0i64; nt * nt];
    for &(a, b) in &sources {
        let la = PauliLabel::from_index(params, a);
        let lb = PauliLabel::from_index(params, b);
        let l = commutation(&la, &lb) as usize;
        table.iter_mut().for_each(|c| *c = 0);
        for e in 0..ens.len() {
            let (ia, pa) = ens.act(e, a);
            let (ib, pb) = ens.act(e, b);
            let (sa, sb) = (targets.slot(ia, pa), targets.slot(ib, pb));
            if sa == usize::MAX || sb == usize::MAX {
                return Err(Error::Contract(format!(
                    "entry {e} maps a Pauli outside the phased set"
                )));
            }
            table[sa * nt + sb] += ens.weight_numerator(e);
        }
        let class = &mut classes[l];
        class.sources += 1;
        let size = class.targets;
        for &(ta, tb) in &h[l] {
            tally.cell(
                class,
                table[ta * nt + tb],
                size,
                || vec![la.clone(), lb.clone()],
                || vec![targets.list[ta].clone(), targets.list[tb].clone()],
            );
        }
    }
    for c in classes.iter_mut() {
        if c.sources == 0 {
            c.note = Some(format!("empty class: no independent source pairs, |H| = {}", c.targets));
        }
    }
    let pass = classes.iter().all(|c| c.pass);
    Ok(MixingReport {
        kind: MixingKind::TwoMixing,
        params,
        classes,
        pass,
        first_deviation: tally.deviation,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub pass: bool,
    /// Entry index and Pauli label whose right product is missing or reweighted.
    pub first_failure: Option<(usize, PauliLabel)>,
}

/// Right Pauli invariance modulo phase: `(a, U)` in `E` implies `(a, U p)` in `E`.
pub fn check_pauli_invariance(ens: &CompiledEnsemble) -> InvarianceReport {
    let params = ens.params();
    let m = params.num_labels();
    let order = params.phase_order();
    let step = params.omega_step();
    // U p rep(L) p^+ U^+ = w^{step F(p, L)} U rep(L) U^+, so only phases move.
    let signature = |e: usize, shift: &[u32]| -> Vec<u8> {
        (0..m)
            .map(|l| {
                let (_, ph) = ens.act(e, l);
                ((ph as u32 + shift[l as usize]) % order) as u8
            })
            .collect()
    };
    let no_shift = vec![0u32; m as usize];
    let mut weights: HashMap<(Vec<u32>, Vec<u8>), i64> = HashMap::new();
    for e in 0..ens.len() {
        let images: Vec<u32> = (0..m).map(|l| ens.act(e, l).0).collect();
        *weights.entry((images, signature(e, &no_shift))).or_default() += ens.weight_numerator(e);
    }
    for p in 0..m {
        let lp = PauliLabel::from_index(params, p);
        let shift: Vec<u32> = (0..m)
            .map(|l| step * commutation(&lp, &PauliLabel::from_index(params, l)))
            .collect();
        for e in 0..ens.len() {
            let images: Vec<u32> = (0..m).map(|l| ens.act(e, l).0).collect();
            let own = weights[&(images.clone(), signature(e, &no_shift))];
            let moved = weights.get(&(images, signature(e, &shift))).copied().unwrap_or(0);
            if own != moved {
                return InvarianceReport {
                    pass: false,
                    first_failure: Some((e, lp)),
                };
            }
        }
    }
    InvarianceReport {
        pass: true,
        first_failure: None,
    }
}

/// Group order by enumeration and formula, plus the pair census
/// `|C_{p->q}| * |H_{F(p1,p2)}| = |C|` for every independent pair class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub params: SystemParams,
    pub enumerated: u64,
    pub formula: Option<u128>,
    pub h_sizes: Vec<u64>,
    pub census: MixingReport,
    pub pass: bool,
}

pub fn group_census(params: SystemParams) -> Result<CensusReport> {
    let ensemble = Ensemble::clifford_uniform(params)?;
    let enumerated = ensemble.len() as u64;
    let formula = clifford_group_order(params);
    let ens = CompiledEnsemble::new(&ensemble)?;
    let census = check_pauli_2_mixing(&ens)?;
    let pass = census.pass && formula == Some(enumerated as u128);
    Ok(CensusReport {
        params,
        enumerated,
        formula,
        h_sizes: h_class_sizes(params),
        census,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::CliffordTableau;

    fn p(n: usize, d: u32) -> SystemParams {
        SystemParams::new(n, d).unwrap()
    }

    fn compiled(e: &Ensemble) -> CompiledEnsemble {
        CompiledEnsemble::new(e).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn uniform_groups_are_mixing() {
        for (params, w) in [(p(1, 2), r(1, 6)), (p(2, 2), r(1, 30)), (p(1, 3), r(1, 24))] {
            let rep = check_pauli_mixing(&compiled(&Ensemble::clifford_uniform(params).unwrap())).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.classes[0].expected, w);
            assert_eq!(rep.classes[0].observed.keys().collect::<Vec<_>>(), vec![&w]);
        }
    }

    #[test]
    fn identity_is_not_mixing() {
        let q = p(1, 2);
        let e = compiled(&Ensemble::singleton(CliffordTableau::identity(q)).unwrap());
        let rep = check_pauli_mixing(&e).unwrap();
        assert!(!rep.pass);
        let dev = rep.first_deviation.unwrap();
        assert_eq!(dev.p[0].to_string(), "X0 Z1");
        assert_eq!(dev.q[0].to_string(), "X0 Z1");
        assert_eq!(dev.observed, r(1, 1));
        assert_eq!(dev.expected, r(1, 6));
    }

    #[test]
    fn h_sizes_match_counting() {
        // |H_l| for l != 0 is d^{2n+1}(d^{2n}-1); |H_0| is d(d^{2n}-1)(d^{2n}-d^2).
        for (n, d) in [(1usize, 2u32), (2, 2), (1, 3), (3, 2)] {
            let params = p(n, d);
            let m = d.pow(2 * n as u32) as u64;
            let d = d as u64;
            let sizes = h_class_sizes(params);
            assert_eq!(sizes[0], d * (m - 1) * (m - d * d), "n={n} d={d}");
            for &s in &sizes[1..] {
                assert_eq!(s, d * m * (m - 1));
            }
        }
    }

    #[test]
    fn two_mixing_weights() {
        let one = check_pauli_2_mixing(&compiled(&Ensemble::clifford_uniform(p(1, 2)).unwrap())).unwrap();
        assert!(one.pass);
        assert_eq!(one.class("anticommuting").unwrap().expected, r(1, 24));
        assert_eq!(one.class("commuting").unwrap().targets, 0);
        assert!(one.class("commuting").unwrap().note.is_some());

        let two = check_pauli_2_mixing(&compiled(&Ensemble::clifford_uniform(p(2, 2)).unwrap())).unwrap();
        assert!(two.pass);
        assert_eq!(two.class("commuting").unwrap().expected, r(1, 360));
        assert_eq!(two.class("anticommuting").unwrap().expected, r(1, 480));

        let qutrit = check_pauli_2_mixing(&compiled(&Ensemble::clifford_uniform(p(1, 3)).unwrap())).unwrap();
        assert!(qutrit.pass);
        assert_eq!(qutrit.class("F=1").unwrap().expected, r(1, 216));
    }

    #[test]
    fn pauli_ensemble_is_not_two_mixing() {
        let e = compiled(&Ensemble::pauli_uniform(p(1, 2)).unwrap());
        assert!(!check_pauli_2_mixing(&e).unwrap().pass);
        assert!(check_pauli_invariance(&e).pass);
    }

    #[test]
    fn invariance() {
        assert!(check_pauli_invariance(&compiled(&Ensemble::clifford_uniform(p(1, 3)).unwrap())).pass);
        let id = compiled(&Ensemble::singleton(CliffordTableau::identity(p(1, 2))).unwrap());
        let rep = check_pauli_invariance(&id);
        assert!(!rep.pass);
        assert_eq!(rep.first_failure.unwrap().1.index(), 1);
    }

    #[test]
    fn census() {
        let c = group_census(p(1, 3)).unwrap();
        assert_eq!(c.enumerated, 216);
        assert!(c.pass);
    }
}
