//! Explicit witnesses that Clifford ensembles miss the next design order.

use std::time::Instant;

use num_rational::BigRational;

use crate::design::{CompiledEnsemble, TwirlWitness};
use crate::error::{Error, Result};
use crate::operator::{PauliTensor, SparseOperator};
use crate::pauli::{commutation, PauliLabel, PauliString, SystemParams};
use crate::perm::{haar_twirl, HaarCoefficients, Permutation};
use crate::scalar::Cyclotomic;

/// One probe `Y` with `<Y, Psi(X)>/D^k`, `<Y, T(X)>/D^k`, and the closed form for the latter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeValue {
    pub name: String,
    pub probe: PauliTensor,
    pub psi: Cyclotomic,
    pub haar: Cyclotomic,
    pub formula: Cyclotomic,
    pub formula_text: String,
}

impl ProbeValue {
    pub fn differs(&self) -> bool {
        self.psi != self.haar
    }

    pub fn formula_holds(&self) -> bool {
        self.formula == self.haar
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub params: SystemParams,
    pub k: usize,
    pub input: PauliTensor,
    /// Haar coefficients by permutation class, e.g. `("4", a)` or `("(123)", a)`.
    pub alphas: Vec<(String, Cyclotomic)>,
    pub probes: Vec<ProbeValue>,
    /// First probe, in construction order, on which the two channels differ.
    pub witness: Option<TwirlWitness>,
    pub elapsed_ms: u64,
}

impl WitnessReport {
    /// A witness exists, the structural zeros hold, and every closed form matches.
    pub fn confirmed(&self) -> bool {
        self.witness.is_some() && self.probes.iter().all(ProbeValue::formula_holds)
    }

    pub fn probe(&self, name: &str) -> Option<&ProbeValue> {
        self.probes.iter().find(|p| p.name == name)
    }
}

struct Evaluation {
    psi: SparseOperator,
    haar: SparseOperator,
    coeffs: HaarCoefficients,
}

fn evaluate(ens: &CompiledEnsemble, input: &PauliTensor) -> Result<Evaluation> {
    let x = SparseOperator::from_tensor(input);
    let psi = ens.twirl(&x)?;
    let (haar, coeffs) = haar_twirl(&x)?;
    Ok(Evaluation { psi, haar, coeffs })
}

fn class_alpha(coeffs: &HaarCoefficients, cycle_type: &[usize]) -> Result<Cyclotomic> {
    coeffs
        .class_value(cycle_type)
        .ok_or_else(|| Error::Contract(format!("Haar coefficients are not constant on class {cycle_type:?}")))
}

fn perm_alpha(coeffs: &HaarCoefficients, cycle: &str, k: usize) -> Result<Cyclotomic> {
    let pi = Permutation::parse(cycle, k)?;
    coeffs
        .get(&pi)
        .cloned()
        .ok_or_else(|| Error::Contract(format!("no Haar coefficient for {pi}")))
}

fn probe_value(
    eval: &Evaluation,
    name: &str,
    probe: PauliTensor,
    formula: Cyclotomic,
    formula_text: &str,
) -> ProbeValue {
    ProbeValue {
        name: name.to_string(),
        psi: eval.psi.normalized_overlap(&probe),
        haar: eval.haar.normalized_overlap(&probe),
        probe,
        formula,
        formula_text: formula_text.to_string(),
    }
}

fn first_witness(k: usize, input: &PauliTensor, probes: &[ProbeValue]) -> Option<TwirlWitness> {
    probes.iter().find(|p| p.differs()).map(|p| TwirlWitness {
        k,
        input: input.clone(),
        probe: p.probe.clone(),
        psi: p.psi.clone(),
        haar: p.haar.clone(),
        verdict: format!("not-{k}-design"),
    })
}

/// First ordered label pair `(a, b)`, both nonidentity, with `F(a, b) = l`.
fn first_pair(params: SystemParams, l: u32) -> Option<(PauliLabel, PauliLabel)> {
    let m = params.num_labels();
    (1..m)
        .flat_map(|a| (1..m).map(move |b| (a, b)))
        .map(|(a, b)| (PauliLabel::from_index(params, a), PauliLabel::from_index(params, b)))
        .find(|(a, b)| commutation(a, b) == l)
}

fn tensor(strings: &[PauliString]) -> Result<PauliTensor> {
    PauliTensor::from_strings(strings)
}

fn rep(l: &PauliLabel) -> PauliString {
    l.representative()
}

/// Qubits, `X = p^{(x)4}`: probes `r1 r1 r2 r2`, `r1 r2 r1 r2` with `F(r1, r2) = 1`, and `r0^{(x)4}`.
pub fn witness_not_4_design(ens: &CompiledEnsemble) -> Result<WitnessReport> {
    let start = Instant::now();
    let params = ens.params();
    if params.d() != 2 {
        return Err(Error::Parameter(format!(
            "the 4-design witness is built for qubits, got d = {}",
            params.d()
        )));
    }
    let p = PauliLabel::from_index(params, 1);
    let input = tensor(&[rep(&p), rep(&p), rep(&p), rep(&p)])?;
    let eval = evaluate(ens, &input)?;
    let a4 = class_alpha(&eval.coeffs, &[4])?;
    let a22 = class_alpha(&eval.coeffs, &[2, 2])?;
    let dim = params.dim() as i64;
    let lin = |c4: i64, c22: i64| {
        &a4.scale(&BigRational::new(c4.into(), (dim * dim * dim).into()))
            + &a22.scale(&BigRational::new(c22.into(), (dim * dim).into()))
    };

    let (r1, r2) = first_pair(params, 1).ok_or_else(|| Error::Contract("no anticommuting pair".into()))?;
    let r0 = (1..params.num_labels())
        .map(|l| PauliLabel::from_index(params, l))
        .find(|r| {
            let y = PauliTensor::new(params, vec![r.clone(); 4], 0).expect("valid probe");
            !eval.psi.normalized_overlap(&y).is_zero()
        })
        .ok_or_else(|| Error::Contract("the twirl has no r^(x)4 component".into()))?;

    let probes = vec![
        probe_value(
            &eval,
            "r1 r1 r2 r2",
            tensor(&[rep(&r1), rep(&r1), rep(&r2), rep(&r2)])?,
            lin(2, 1),
            "(2/D^3) a_4 + (1/D^2) a_22",
        ),
        probe_value(
            &eval,
            "r1 r2 r1 r2",
            tensor(&[rep(&r1), rep(&r2), rep(&r1), rep(&r2)])?,
            lin(2, 1),
            "(2/D^3) a_4 + (1/D^2) a_22",
        ),
        probe_value(
            &eval,
            "r0^4",
            tensor(&[rep(&r0), rep(&r0), rep(&r0), rep(&r0)])?,
            lin(6, 3),
            "(6/D^3) a_4 + (3/D^2) a_22",
        ),
    ];
    Ok(WitnessReport {
        params,
        k: 4,
        witness: first_witness(4, &input, &probes),
        input,
        alphas: vec![("4".into(), a4), ("2,2".into(), a22)],
        probes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Odd prime `d`, `X = p1 (x) p2 (x) (p1 p2)^dagger` with `F(p1, p2) = 1`:
/// probes `r1 (x) r1 (x) (r1^2)^dagger` and `r1 (x) r2 (x) (r1 r2)^dagger` with `F(r1, r2) = 2`.
pub fn witness_qudit_not_3_design(ens: &CompiledEnsemble) -> Result<WitnessReport> {
    let start = Instant::now();
    let params = ens.params();
    if params.d() <= 2 || !params.d_is_prime() {
        return Err(Error::Parameter(format!(
            "the qudit 3-design witness needs an odd prime d, got d = {}",
            params.d()
        )));
    }
    let (p1, p2) = first_pair(params, 1).ok_or_else(|| Error::Contract("no pair with F = 1".into()))?;
    let (q1, q2) = (rep(&p1), rep(&p2));
    let input = tensor(&[q1.clone(), q2.clone(), q1.mul(&q2)?.dagger()])?;
    let eval = evaluate(ens, &input)?;
    let order = params.phase_order();
    let a123 = perm_alpha(&eval.coeffs, "(123)", 3)?;
    let a132 = perm_alpha(&eval.coeffs, "(132)", 3)?;
    let d2n = BigRational::new(1.into(), (params.dim() * params.dim()).into());
    let omega_sq = Cyclotomic::root(order, 2 * params.omega_step() as i64);

    let r1 = PauliLabel::from_index(params, 1);
    let r2 = (1..params.num_labels())
        .map(|l| PauliLabel::from_index(params, l))
        .find(|r| commutation(&r1, r) == 2)
        .ok_or_else(|| Error::Contract("no r2 with F(r1, r2) = 2".into()))?;
    let (s1, s2) = (rep(&r1), rep(&r2));

    let probes = vec![
        probe_value(
            &eval,
            "r1 r1 (r1^2)^+",
            tensor(&[s1.clone(), s1.clone(), s1.pow(2).dagger()])?,
            (&a123 + &a132).scale(&d2n),
            "(a_(123) + a_(132)) / d^(2n)",
        ),
        probe_value(
            &eval,
            "r1 r2 (r1 r2)^+",
            tensor(&[s1.clone(), s2.clone(), s1.mul(&s2)?.dagger()])?,
            (&a123 + &(&omega_sq * &a132)).scale(&d2n),
            "(a_(123) + w^2 a_(132)) / d^(2n)",
        ),
    ];
    Ok(WitnessReport {
        params,
        k: 3,
        witness: first_witness(3, &input, &probes),
        input,
        alphas: vec![("(123)".into(), a123), ("(132)".into(), a132)],
        probes,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::Ensemble;

    fn uniform(n: usize, d: u32) -> CompiledEnsemble {
        CompiledEnsemble::new(&Ensemble::clifford_uniform(SystemParams::new(n, d).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn qubit_witness_n1() {
        let rep = witness_not_4_design(&uniform(1, 2)).unwrap();
        for p in &rep.probes {
            assert!(p.formula_holds(), "{}: haar {} formula {}", p.name, p.haar, p.formula);
        }
        assert!(rep.probe("r1 r1 r2 r2").unwrap().psi.is_zero());
        assert!(rep.probe("r1 r2 r1 r2").unwrap().psi.is_zero());
        assert!(!rep.probe("r0^4").unwrap().psi.is_zero());
        assert!(rep.confirmed());
        assert_eq!(rep.witness.unwrap().verdict, "not-4-design");
    }

    #[test]
    fn qutrit_witness() {
        let rep = witness_qudit_not_3_design(&uniform(1, 3)).unwrap();
        for p in &rep.probes {
            assert!(p.psi.is_zero(), "{}", p.name);
            assert!(p.formula_holds(), "{}: haar {} formula {}", p.name, p.haar, p.formula);
        }
        assert!(rep.confirmed());
    }

    #[test]
    fn wrong_dimension_is_rejected() {
        assert!(witness_not_4_design(&uniform(1, 3)).is_err());
        assert!(witness_qudit_not_3_design(&uniform(1, 2)).is_err());
    }
}
