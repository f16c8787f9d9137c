//! JSON reports. Every number is an exact string; nothing is serialized as a float.

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::design::{DesignReport, Mode, TwirlWitness};
use crate::frame::FrameReport;
use crate::mixing::{CensusReport, MixingClass, MixingKind, MixingReport};
use crate::operator::SparseOperator;
use crate::pauli::SystemParams;
use crate::perm::Permutation;
use crate::witness::WitnessReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReportParams {
    pub n: usize,
    pub d: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    /// Scalars are written over `w = exp(2 pi i / phase_order)`.
    pub phase_order: u32,
}

impl ReportParams {
    pub fn new(params: SystemParams, k: Option<usize>) -> Self {
        ReportParams {
            n: params.n(),
            d: params.d(),
            k,
            phase_order: params.phase_order(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub input: String,
    pub probe: String,
    pub psi: String,
    pub haar: String,
    pub verdict: String,
}

impl From<&TwirlWitness> for WitnessEntry {
    fn from(w: &TwirlWitness) -> Self {
        WitnessEntry {
            input: w.input.to_string(),
            probe: w.probe.to_string(),
            psi: w.psi.to_string(),
            haar: w.haar.to_string(),
            verdict: w.verdict.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub params: ReportParams,
    pub pass: bool,
    pub counts: Map<String, Value>,
    pub witnesses: Vec<WitnessEntry>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub elapsed_ms: u64,
}

impl Report {
    fn new(check: &str, params: ReportParams, pass: bool, elapsed_ms: u64) -> Self {
        Report {
            check: check.to_string(),
            params,
            pass,
            counts: Map::new(),
            witnesses: Vec::new(),
            notes: Vec::new(),
            elapsed_ms,
        }
    }

    fn count(&mut self, key: &str, value: impl Into<Value>) {
        self.counts.insert(key.to_string(), value.into());
    }

    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn verify_design(r: &DesignReport) -> Self {
        let mut out = Report::new(
            "verify-design",
            ReportParams::new(r.params, Some(r.k)),
            r.pass(),
            r.elapsed_ms,
        );
        out.count("basis_size", r.basis_size.to_string());
        out.count("checked", r.checked.to_string());
        out.count("mismatches", r.mismatches.to_string());
        out.count(
            "mode",
            match r.mode {
                Mode::Exhaustive => json!("exhaustive"),
                Mode::Random { samples, seed } => {
                    json!({"random": {"samples": samples.to_string(), "seed": seed.to_string()}})
                }
            },
        );
        let cases: Map<String, Value> = r
            .cases
            .iter()
            .map(|(case, (checked, bad))| {
                (
                    case.name().to_string(),
                    json!({"checked": checked.to_string(), "mismatches": bad.to_string()}),
                )
            })
            .collect();
        out.count("cases", Value::Object(cases));
        out.witnesses = r.witnesses.iter().map(WitnessEntry::from).collect();
        out
    }

    pub fn mixing(r: &MixingReport) -> Self {
        let check = match r.kind {
            MixingKind::Mixing => "check-mixing",
            MixingKind::TwoMixing => "check-2mixing",
        };
        let mut out = Report::new(check, ReportParams::new(r.params, None), r.pass, r.elapsed_ms);
        out.count("classes", Value::Array(r.classes.iter().map(class_json).collect()));
        if let Some(dev) = &r.first_deviation {
            let labels: Vec<String> = dev.p.iter().map(|p| p.to_string()).collect();
            let targets: Vec<String> = dev.q.iter().map(|q| q.to_string()).collect();
            out.count(
                "first_deviation",
                json!({
                    "p": labels,
                    "q": targets,
                    "observed": dev.observed.to_string(),
                    "expected": dev.expected.to_string(),
                }),
            );
        }
        out.notes = r.classes.iter().filter_map(|c| c.note.clone()).collect();
        out
    }

    pub fn frame_potential(r: &FrameReport) -> Self {
        let mut out = Report::new(
            "frame-potential",
            ReportParams::new(r.params, Some(r.k)),
            r.is_design(),
            r.elapsed_ms,
        );
        out.count("value", r.value.to_string());
        out.count("haar", r.haar.to_string());
        out.count("pairs", r.pairs.to_string());
        out.count("group_shortcut", r.group_shortcut);
        let hist: Map<String, Value> = r
            .histogram
            .iter()
            .map(|(t, w)| (t.to_string(), Value::String(w.to_string())))
            .collect();
        out.count("squared_trace_weights", Value::Object(hist));
        out
    }

    pub fn witness(check: &str, r: &WitnessReport) -> Self {
        let mut out = Report::new(
            check,
            ReportParams::new(r.params, Some(r.k)),
            r.witness.is_none(),
            r.elapsed_ms,
        );
        out.count("input", r.input.to_string());
        let alphas: Map<String, Value> = r
            .alphas
            .iter()
            .map(|(name, a)| (name.clone(), Value::String(a.to_string())))
            .collect();
        out.count("alphas", Value::Object(alphas));
        let probes: Vec<Value> = r
            .probes
            .iter()
            .map(|p| {
                json!({
                    "name": p.name,
                    "probe": p.probe.to_string(),
                    "psi": p.psi.to_string(),
                    "haar": p.haar.to_string(),
                    "formula": p.formula_text,
                    "formula_value": p.formula.to_string(),
                    "formula_holds": p.formula_holds(),
                })
            })
            .collect();
        out.count("probes", Value::Array(probes));
        out.witnesses = r.witness.iter().map(WitnessEntry::from).collect();
        out
    }

    pub fn group_census(r: &CensusReport) -> Self {
        let mut out = Report::new(
            "group-census",
            ReportParams::new(r.params, None),
            r.pass,
            r.census.elapsed_ms,
        );
        out.count("order", r.enumerated.to_string());
        out.count(
            "order_formula",
            r.formula.map_or(Value::Null, |f| Value::String(f.to_string())),
        );
        out.count(
            "h_sizes",
            Value::Array(r.h_sizes.iter().map(|s| Value::String(s.to_string())).collect()),
        );
        let classes: Vec<Value> = r
            .census
            .classes
            .iter()
            .map(|c| {
                let mut v = class_json(c);
                // |C_{p->q}| = |C| * weight for a uniform ensemble.
                let per_target: Vec<String> = c
                    .observed
                    .keys()
                    .map(|w| (w * num_rational::BigRational::from_integer(r.enumerated.into())).to_string())
                    .collect();
                v["cliffords_per_target"] = json!(per_target);
                v
            })
            .collect();
        out.count("pair_classes", Value::Array(classes));
        out.notes = r.census.classes.iter().filter_map(|c| c.note.clone()).collect();
        out
    }

    pub fn decomposition(
        pi: &Permutation,
        params: SystemParams,
        op: &SparseOperator,
        dense_match: Option<bool>,
    ) -> Self {
        let mut out = Report::new(
            "decompose-w",
            ReportParams::new(params, Some(pi.k())),
            dense_match.unwrap_or(true),
            0,
        );
        out.count("permutation", pi.to_string());
        out.count("terms", op.len().to_string());
        out.count("dense_cross_check", dense_match.map_or(Value::Null, Value::Bool));
        out.count("operator", op.to_json());
        if dense_match.is_none() {
            out.notes
                .push("dense cross-check skipped above the dense size cap".into());
        }
        out
    }

    /// Zero the timing field so identical runs give identical bytes.
    pub fn without_timing(mut self) -> Self {
        self.elapsed_ms = 0;
        self
    }
}

fn class_json(c: &MixingClass) -> Value {
    let observed: Map<String, Value> = c
        .observed
        .iter()
        .map(|(w, count)| (w.to_string(), Value::String(count.to_string())))
        .collect();
    json!({
        "class": c.name,
        "expected": c.expected.to_string(),
        "sources": c.sources.to_string(),
        "targets": c.targets.to_string(),
        "observed": observed,
        "pass": c.pass,
    })
}
