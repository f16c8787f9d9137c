//! Clifford elements modulo global phase, stored as the phased images of the
//! `2n` Pauli generators under conjugation.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{commutation_raw, commutation_strings, mul_unchecked, PauliLabel, PauliString, SystemParams};

/// Largest group order `enumerate_clifford` will materialize.
pub const MAX_ENUMERATED_ORDER: u128 = 10_000_000;

/// Largest label space scanned per step by `sample_clifford`.
pub const MAX_SAMPLING_LABELS: u32 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    X(usize),
    Z(usize),
}

impl Generator {
    /// Generators in tableau order: `X0, Z0, X1, Z1, ...`.
    pub fn all(n: usize) -> Vec<Generator> {
        (0..n).flat_map(|j| [Generator::X(j), Generator::Z(j)]).collect()
    }

    pub fn string(&self, params: SystemParams) -> PauliString {
        match *self {
            Generator::X(j) => PauliString::x_gen(params, j),
            Generator::Z(j) => PauliString::z_gen(params, j),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::X(j) => write!(f, "X{j}"),
            Generator::Z(j) => write!(f, "Z{j}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableauDefect {
    Shape(String),
    IdentityImage(Generator),
    /// Image does not have order dividing `d` (for qubits: does not square to `I`).
    BadOrder(Generator),
    Commutation {
        first: Generator,
        second: Generator,
        expected: u32,
        found: u32,
    },
}

impl fmt::Display for TableauDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableauDefect::Shape(s) => write!(f, "malformed tableau: {s}"),
            TableauDefect::IdentityImage(g) => write!(f, "image of {g} is the identity"),
            TableauDefect::BadOrder(g) => write!(f, "image of {g} has order not dividing d"),
            TableauDefect::Commutation {
                first,
                second,
                expected,
                found,
            } => write!(
                f,
                "images of ({first}, {second}) have commutation {found}, expected {expected}"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidityReport {
    pub defect: Option<TableauDefect>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.defect.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CliffordTableau {
    params: SystemParams,
    x_images: Vec<PauliString>,
    z_images: Vec<PauliString>,
}

/// Conjugation action on labels: `U rep(L) U^dagger = w^phase[L] rep(image[L])`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelAction {
    pub image: Vec<u32>,
    pub phase: Vec<u8>,
}

impl CliffordTableau {
    pub fn identity(params: SystemParams) -> Self {
        CliffordTableau {
            params,
            x_images: (0..params.n()).map(|j| PauliString::x_gen(params, j)).collect(),
            z_images: (0..params.n()).map(|j| PauliString::z_gen(params, j)).collect(),
        }
    }

    /// Build and validate.
    pub fn from_images(params: SystemParams, x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Result<Self> {
        let t = Self::from_images_unchecked(params, x_images, z_images);
        match t.validate().defect {
            None => Ok(t),
            Some(defect) => Err(Error::Contract(defect.to_string())),
        }
    }

    pub fn from_images_unchecked(params: SystemParams, x_images: Vec<PauliString>, z_images: Vec<PauliString>) -> Self {
        CliffordTableau {
            params,
            x_images,
            z_images,
        }
    }

    /// Tableau of conjugation by the canonical representative of `label`.
    pub fn pauli_conjugation(label: &PauliLabel) -> Self {
        let params = label.params();
        let step = params.omega_step() as i64;
        let rep = label.representative();
        let conj = |g: PauliString| {
            let f = commutation_strings(&rep, &g) as i64;
            g.times_root(step * f)
        };
        CliffordTableau {
            params,
            x_images: (0..params.n()).map(|j| conj(PauliString::x_gen(params, j))).collect(),
            z_images: (0..params.n()).map(|j| conj(PauliString::z_gen(params, j))).collect(),
        }
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn x_images(&self) -> &[PauliString] {
        &self.x_images
    }

    pub fn z_images(&self) -> &[PauliString] {
        &self.z_images
    }

    pub fn image_of(&self, g: Generator) -> &PauliString {
        match g {
            Generator::X(j) => &self.x_images[j],
            Generator::Z(j) => &self.z_images[j],
        }
    }

    /// `c p c^dagger`, with exact phase.
    pub fn apply(&self, p: &PauliString) -> PauliString {
        assert_eq!(p.params(), self.params, "tableau and Pauli on different systems");
        let mut acc = PauliString::identity(self.params).with_phase(p.phase() as i64);
        for j in 0..self.params.n() {
            for _ in 0..p.x()[j] {
                acc = mul_unchecked(&acc, &self.x_images[j]);
            }
            for _ in 0..p.z()[j] {
                acc = mul_unchecked(&acc, &self.z_images[j]);
            }
        }
        acc
    }

    /// Element acting as `self` after `inner`: images under `self * inner`.
    pub fn compose(&self, inner: &CliffordTableau) -> CliffordTableau {
        assert_eq!(self.params, inner.params, "composing tableaux on different systems");
        CliffordTableau {
            params: self.params,
            x_images: inner.x_images.iter().map(|p| self.apply(p)).collect(),
            z_images: inner.z_images.iter().map(|p| self.apply(p)).collect(),
        }
    }

    pub fn inverse(&self) -> CliffordTableau {
        // The symplectic inverse is Omega^-1 S^T Omega, so the preimage of g has
        // x-part F(img(Z_j), g) and z-part -F(img(X_j), g).
        let params = self.params;
        let n = params.n();
        let d = params.d();
        let preimage = |g: &PauliString| -> PauliString {
            let x: Vec<u8> = (0..n)
                .map(|j| commutation_strings(&self.z_images[j], g) as u8)
                .collect();
            let z: Vec<u8> = (0..n)
                .map(|j| ((d - commutation_strings(&self.x_images[j], g)) % d) as u8)
                .collect();
            let q = PauliString::new(params, x, z, 0).expect("shape preserved");
            let r = self.apply(&q);
            debug_assert_eq!(r.label(), g.label(), "tableau is not symplectic");
            q.with_phase(-(r.phase() as i64) + g.phase() as i64)
        };
        CliffordTableau {
            params,
            x_images: (0..n).map(|j| preimage(&PauliString::x_gen(params, j))).collect(),
            z_images: (0..n).map(|j| preimage(&PauliString::z_gen(params, j))).collect(),
        }
    }

    pub fn validate(&self) -> ValidityReport {
        let defect = self.find_defect();
        ValidityReport { defect }
    }

    fn find_defect(&self) -> Option<TableauDefect> {
        let n = self.params.n();
        if self.x_images.len() != n || self.z_images.len() != n {
            return Some(TableauDefect::Shape(format!("expected {n} X and {n} Z images")));
        }
        let gens = Generator::all(n);
        for g in &gens {
            let img = self.image_of(*g);
            if img.params() != self.params {
                return Some(TableauDefect::Shape(format!("image of {g} lives on another system")));
            }
            if img.is_identity_label() {
                return Some(TableauDefect::IdentityImage(*g));
            }
            if !img.has_order_dividing_d() {
                return Some(TableauDefect::BadOrder(*g));
            }
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let expected = commutation_strings(&a.string(self.params), &b.string(self.params));
                let found = commutation_strings(self.image_of(*a), self.image_of(*b));
                if expected != found {
                    return Some(TableauDefect::Commutation {
                        first: *a,
                        second: *b,
                        expected,
                        found,
                    });
                }
            }
        }
        None
    }

    pub fn label_action(&self) -> LabelAction {
        let m = self.params.num_labels();
        let mut image = Vec::with_capacity(m as usize);
        let mut phase = Vec::with_capacity(m as usize);
        for idx in 0..m {
            let rep = PauliLabel::from_index(self.params, idx).representative();
            let out = self.apply(&rep);
            image.push(out.label_index());
            phase.push(out.phase_relative_to_rep() as u8);
        }
        LabelAction { image, phase }
    }
}

impl fmt::Display for CliffordTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = Generator::all(self.params.n())
            .into_iter()
            .map(|g| format!("{g}->{}", self.image_of(g)))
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// `|C_n^d|` mod phases for prime `d`: `d^{n^2} prod_j (d^{2j} - 1) * d^{2n}`.
pub fn clifford_group_order(params: SystemParams) -> Option<u128> {
    if !params.d_is_prime() {
        return None;
    }
    let d = params.d() as u128;
    let n = params.n() as u32;
    let mut acc = d.checked_pow(n.checked_mul(n)?)?;
    for j in 1..=n {
        acc = acc.checked_mul(d.checked_pow(2 * j)? - 1)?;
    }
    acc.checked_mul(d.checked_pow(2 * n)?)
}

/// Every phased non-identity Pauli whose order divides `d`, ordered by (label, phase).
pub fn valid_images(params: SystemParams) -> Vec<PauliString> {
    let order = params.phase_order() as i64;
    (1..params.num_labels())
        .flat_map(|idx| {
            let label = PauliLabel::from_index(params, idx);
            (0..order)
                .map(move |s| PauliString::from_label(&label, s))
                .filter(|p| p.has_order_dividing_d())
                .collect::<Vec<_>>()
        })
        .collect()
}

struct Frame {
    params: SystemParams,
    gens: Vec<PauliString>,
    candidates: Vec<PauliString>,
}

impl Frame {
    fn new(params: SystemParams) -> Self {
        Frame {
            params,
            gens: Generator::all(params.n()).iter().map(|g| g.string(params)).collect(),
            candidates: valid_images(params),
        }
    }

    fn fits(&self, cand: &PauliString, chosen: &[PauliString]) -> bool {
        let depth = chosen.len();
        let d = self.params.d();
        chosen.iter().enumerate().all(|(j, img)| {
            let want = commutation_raw(
                d,
                self.gens[depth].x(),
                self.gens[depth].z(),
                self.gens[j].x(),
                self.gens[j].z(),
            );
            commutation_raw(d, cand.x(), cand.z(), img.x(), img.z()) == want
        })
    }

    fn tableau(&self, chosen: &[PauliString]) -> CliffordTableau {
        CliffordTableau {
            params: self.params,
            x_images: chosen.iter().step_by(2).cloned().collect(),
            z_images: chosen.iter().skip(1).step_by(2).cloned().collect(),
        }
    }
}

fn require_prime(params: SystemParams, what: &str) -> Result<()> {
    if !params.d_is_prime() {
        return Err(Error::Parameter(format!(
            "{what} requires prime local dimension, got d={}",
            params.d()
        )));
    }
    Ok(())
}

/// Visit every element of the Clifford group mod phase in lexicographic
/// order of generator images. Returns the number visited.
pub fn for_each_clifford(params: SystemParams, mut visit: impl FnMut(CliffordTableau)) -> Result<u64> {
    require_prime(params, "Clifford enumeration")?;
    let order = clifford_group_order(params).unwrap_or(u128::MAX);
    if order > MAX_ENUMERATED_ORDER {
        return Err(Error::capacity(
            "Clifford group enumeration",
            order,
            MAX_ENUMERATED_ORDER,
        ));
    }
    let frame = Frame::new(params);
    let mut chosen = Vec::with_capacity(2 * params.n());
    let mut count = 0u64;
    fn dfs(frame: &Frame, chosen: &mut Vec<PauliString>, count: &mut u64, visit: &mut dyn FnMut(CliffordTableau)) {
        if chosen.len() == frame.gens.len() {
            *count += 1;
            visit(frame.tableau(chosen));
            return;
        }
        for cand in &frame.candidates {
            if frame.fits(cand, chosen) {
                chosen.push(cand.clone());
                dfs(frame, chosen, count, visit);
                chosen.pop();
            }
        }
    }
    dfs(&frame, &mut chosen, &mut count, &mut visit);
    Ok(count)
}

pub fn enumerate_clifford(params: SystemParams) -> Result<Vec<CliffordTableau>> {
    let mut out = Vec::new();
    for_each_clifford(params, |c| out.push(c))?;
    Ok(out)
}

/// Exactly uniform sample: each generator image is drawn uniformly from the
/// images consistent with those already chosen.
pub fn sample_clifford_with<R: Rng + ?Sized>(params: SystemParams, rng: &mut R) -> Result<CliffordTableau> {
    require_prime(params, "uniform Clifford sampling")?;
    if params.num_labels() > MAX_SAMPLING_LABELS {
        return Err(Error::capacity(
            "Clifford sampling label scan",
            params.num_labels(),
            MAX_SAMPLING_LABELS,
        ));
    }
    let frame = Frame::new(params);
    let mut chosen: Vec<PauliString> = Vec::with_capacity(2 * params.n());
    let mut fitting = Vec::new();
    while chosen.len() < frame.gens.len() {
        fitting.clear();
        fitting.extend(frame.candidates.iter().filter(|c| frame.fits(c, &chosen)));
        let pick = fitting[rng.random_range(0..fitting.len())].clone();
        chosen.push(pick);
    }
    Ok(frame.tableau(&chosen))
}

pub fn sample_clifford(params: SystemParams, seed: u64) -> Result<CliffordTableau> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_clifford_with(params, &mut rng)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnsembleEntry {
    pub weight: BigRational,
    pub element: CliffordTableau,
}

/// Weighted finite list of Clifford elements; weights sum to exactly one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ensemble {
    params: SystemParams,
    entries: Vec<EnsembleEntry>,
}

impl Ensemble {
    pub fn new(params: SystemParams, entries: Vec<EnsembleEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Contract("ensemble has no entries".into()));
        }
        let mut total = BigRational::zero();
        for (i, e) in entries.iter().enumerate() {
            if e.weight.is_negative() {
                return Err(Error::Contract(format!("entry {i} has negative weight {}", e.weight)));
            }
            if e.element.params() != params {
                return Err(Error::Contract(format!("entry {i} lives on another system")));
            }
            if let Some(defect) = e.element.validate().defect {
                return Err(Error::Contract(format!("entry {i} is not a valid tableau: {defect}")));
            }
            total += &e.weight;
        }
        if !total.is_one() {
            return Err(Error::Contract(format!(
                "weights sum to {total}, deficit {}",
                BigRational::one() - &total
            )));
        }
        Ok(Ensemble { params, entries })
    }

    pub fn uniform(params: SystemParams, elements: Vec<CliffordTableau>) -> Result<Self> {
        let w = BigRational::new(BigInt::one(), BigInt::from(elements.len().max(1)));
        Ensemble::new(
            params,
            elements
                .into_iter()
                .map(|element| EnsembleEntry {
                    weight: w.clone(),
                    element,
                })
                .collect(),
        )
    }

    pub fn clifford_uniform(params: SystemParams) -> Result<Self> {
        Ensemble::uniform(params, enumerate_clifford(params)?)
    }

    /// Uniform over conjugation by the `d^{2n}` Pauli labels.
    pub fn pauli_uniform(params: SystemParams) -> Result<Self> {
        let elements = (0..params.num_labels())
            .map(|i| CliffordTableau::pauli_conjugation(&PauliLabel::from_index(params, i)))
            .collect();
        Ensemble::uniform(params, elements)
    }

    pub fn singleton(element: CliffordTableau) -> Result<Self> {
        Ensemble::uniform(element.params(), vec![element])
    }

    pub fn params(&self) -> SystemParams {
        self.params
    }

    pub fn entries(&self) -> &[EnsembleEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total weight of entries mapping every `p[i]` to exactly `q[i]`, phase included.
    pub fn subensemble_weight(&self, p: &[PauliLabel], q: &[PauliString]) -> Result<BigRational> {
        if p.len() != q.len() || p.is_empty() {
            return Err(Error::Parameter(format!(
                "p- and q-tuples must have equal positive length, got {} and {}",
                p.len(),
                q.len()
            )));
        }
        for l in p {
            self.params.check_same(&l.params())?;
        }
        for s in q {
            self.params.check_same(&s.params())?;
        }
        let reps: Vec<PauliString> = p.iter().map(|l| l.representative()).collect();
        let mut total = BigRational::zero();
        for e in &self.entries {
            if reps.iter().zip(q).all(|(r, target)| &e.element.apply(r) == target) {
                total += &e.weight;
            }
        }
        Ok(total)
    }

    /// Merge repeated elements, summing their weights; order of first appearance is kept.
    pub fn merged(&self) -> Ensemble {
        let mut index: HashMap<&CliffordTableau, usize> = HashMap::new();
        let mut entries: Vec<EnsembleEntry> = Vec::new();
        for e in &self.entries {
            match index.get(&e.element) {
                Some(&i) => entries[i].weight += &e.weight,
                None => {
                    index.insert(&e.element, entries.len());
                    entries.push(e.clone());
                }
            }
        }
        Ensemble {
            params: self.params,
            entries,
        }
    }

    pub fn to_json(&self) -> Result<String> {
        let file = EnsembleFile {
            n: self.params.n(),
            d: self.params.d(),
            entries: self
                .entries
                .iter()
                .map(|e| EntryFile {
                    weight: e.weight.to_string(),
                    x_images: e.element.x_images.iter().map(PauliStringFile::from).collect(),
                    z_images: e.element.z_images.iter().map(PauliStringFile::from).collect(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&file)?)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: EnsembleFile = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("ensemble file, line {} column {}: {e}", e.line(), e.column())))?;
        let params = SystemParams::new(file.n, file.d)?;
        let mut entries = Vec::with_capacity(file.entries.len());
        for (i, e) in file.entries.into_iter().enumerate() {
            let ctx = |err: Error| Error::Parse(format!("entry {i}: {err}"));
            let weight = parse_rational(&e.weight).map_err(ctx)?;
            let conv = |v: Vec<PauliStringFile>| -> Result<Vec<PauliString>> {
                v.into_iter().map(|p| p.to_string_in(params)).collect()
            };
            let element = CliffordTableau::from_images_unchecked(
                params,
                conv(e.x_images).map_err(ctx)?,
                conv(e.z_images).map_err(ctx)?,
            );
            entries.push(EnsembleEntry { weight, element });
        }
        Ensemble::new(params, entries)
    }
}

/// Parse `num/den`, an integer, or a finite decimal, exactly.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: '{text}'"));
    if let Some((num, den)) = t.split_once('/') {
        let num: BigInt = num.trim().parse().map_err(|_| bad())?;
        let den: BigInt = den.trim().parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        let num: BigInt = digits.parse().map_err(|_| bad())?;
        let den = BigInt::from(10u32).pow(frac.len() as u32);
        let r = BigRational::new(num, den);
        return Ok(if negative { -r } else { r });
    }
    let v: BigInt = t.parse().map_err(|_| bad())?;
    Ok(BigRational::from_integer(v))
}

#[derive(Serialize, Deserialize)]
struct EnsembleFile {
    n: usize,
    d: u32,
    entries: Vec<EntryFile>,
}

#[derive(Serialize, Deserialize)]
struct EntryFile {
    weight: String,
    x_images: Vec<PauliStringFile>,
    z_images: Vec<PauliStringFile>,
}

#[derive(Serialize, Deserialize)]
struct PauliStringFile {
    x: String,
    z: String,
    s: i64,
}

impl From<&PauliString> for PauliStringFile {
    fn from(p: &PauliString) -> Self {
        let digits = |v: &[u8]| v.iter().map(|&c| char::from(b'0' + c)).collect();
        PauliStringFile {
            x: digits(p.x()),
            z: digits(p.z()),
            s: p.phase() as i64,
        }
    }
}

impl PauliStringFile {
    fn to_string_in(&self, params: SystemParams) -> Result<PauliString> {
        PauliString::parse(&format!("w^{} X{} Z{}", self.s, self.x, self.z), params)
    }
}
