//! Qutrit circuit intermediate representation, state-vector simulator,
//! projective measurement, truth-table extraction, and lowering of Clifford
//! gates to braid words.
//!
//! Wire 0 is the top wire; kets print the leftmost wire first, so basis index
//! = sum of digit_w * 3^(n-1-w).

use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::{Matrix, UnitaryMatrix, TOL};
use crate::metaplectic_gates::GateLibrary;
use crate::rng::SplitMix64;

pub type Trit = u8;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PermKind {
    P01,
    P12,
    P02,
}

impl PermKind {
    fn apply(self, d: Trit) -> Trit {
        match (self, d) {
            (PermKind::P01, 0) => 1,
            (PermKind::P01, 1) => 0,
            (PermKind::P12, 1) => 2,
            (PermKind::P12, 2) => 1,
            (PermKind::P02, 0) => 2,
            (PermKind::P02, 2) => 0,
            (_, d) => d,
        }
    }

    fn name(self) -> &'static str {
        match self {
            PermKind::P01 => "perm01",
            PermKind::P12 => "perm12",
            PermKind::P02 => "perm02",
        }
    }
}

/// One gate of the circuit IR. `Hard` nests for multiply-controlled gates.
#[derive(Debug, Clone, PartialEq)]
pub enum GateKind {
    Shift {
        amount: u8,
        wire: usize,
    },
    Perm {
        kind: PermKind,
        wire: usize,
    },
    Chrestenson {
        wire: usize,
    },
    Sum {
        variant: u8,
        control: usize,
        target: usize,
    },
    Hard {
        inner: Box<GateKind>,
        control: usize,
        value: Trit,
    },
    ControlledSum {
        control: usize,
        value: Trit,
        soft: usize,
        target: usize,
    },
    Horner {
        i: usize,
        j: usize,
        k: usize,
    },
    Swap {
        a: usize,
        b: usize,
    },
    Measure {
        wire: usize,
    },
}

impl GateKind {
    /// Addressed wires in tensor order (most significant first).
    pub fn wires(&self) -> Vec<usize> {
        match self {
            GateKind::Shift { wire, .. }
            | GateKind::Perm { wire, .. }
            | GateKind::Chrestenson { wire }
            | GateKind::Measure { wire } => vec![*wire],
            GateKind::Sum {
                control, target, ..
            } => vec![*control, *target],
            GateKind::Hard { inner, control, .. } => {
                let mut ws = vec![*control];
                ws.extend(inner.wires());
                ws
            }
            GateKind::ControlledSum {
                control,
                soft,
                target,
                ..
            } => vec![*control, *soft, *target],
            GateKind::Horner { i, j, k } => vec![*i, *j, *k],
            GateKind::Swap { a, b } => vec![*a, *b],
        }
    }

    fn validate(&self, n_wires: usize) -> Result<()> {
        let ws = self.wires();
        for &w in &ws {
            if w >= n_wires {
                return Err(Error::Domain(format!(
                    "wire {w} out of range for {n_wires} wires"
                )));
            }
        }
        let mut sorted = ws.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != ws.len() {
            return Err(Error::Domain("gate wires must be distinct".into()));
        }
        match self {
            GateKind::Shift { amount, .. } if !matches!(amount, 1 | 2) => {
                Err(Error::Domain(format!("bad shift amount {amount}")))
            }
            GateKind::Sum { variant, .. } if !matches!(variant, 1 | 2) => {
                Err(Error::Domain(format!("bad sum variant {variant}")))
            }
            GateKind::Hard { inner, value, .. } => {
                if *value > 2 {
                    return Err(Error::Domain(format!("control value {value} not a trit")));
                }
                if matches!(inner.as_ref(), GateKind::Measure { .. }) {
                    return Err(Error::Domain("cannot hard-control a measurement".into()));
                }
                Ok(())
            }
            GateKind::ControlledSum { value, .. } if *value > 2 => {
                Err(Error::Domain(format!("control value {value} not a trit")))
            }
            _ => Ok(()),
        }
    }

    /// The local unitary on `wires()`. Measurement has no matrix.
    pub fn matrix(&self) -> Result<Matrix> {
        match self {
            GateKind::Shift { amount, .. } => {
                let mut m = Matrix::zeros(3);
                for d in 0..3usize {
                    m[((d + *amount as usize) % 3, d)] = c(1.0, 0.0);
                }
                Ok(m)
            }
            GateKind::Perm { kind, .. } => {
                let mut m = Matrix::zeros(3);
                for d in 0..3u8 {
                    m[(kind.apply(d) as usize, d as usize)] = c(1.0, 0.0);
                }
                Ok(m)
            }
            GateKind::Chrestenson { .. } => {
                let w = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
                let s = 1.0 / 3f64.sqrt();
                let one = c(1.0, 0.0);
                Ok(Matrix::from_rows(&[
                    vec![one, one, one],
                    vec![one, w, w.conj()],
                    vec![one, w.conj(), w],
                ])
                .scale(c(s, 0.0)))
            }
            GateKind::Sum { variant, .. } => {
                let mut m = Matrix::zeros(9);
                for ctl in 0..3usize {
                    for t in 0..3usize {
                        let t2 = (t + *variant as usize * ctl) % 3;
                        m[(3 * ctl + t2, 3 * ctl + t)] = c(1.0, 0.0);
                    }
                }
                Ok(m)
            }
            GateKind::Hard { inner, value, .. } => {
                let im = inner.matrix()?;
                let d = im.dim();
                let mut m = Matrix::zeros(3 * d);
                for ctl in 0..3usize {
                    for r in 0..d {
                        for col in 0..d {
                            let v = if ctl == *value as usize {
                                im[(r, col)]
                            } else if r == col {
                                c(1.0, 0.0)
                            } else {
                                c(0.0, 0.0)
                            };
                            if v.norm_sqr() > 0.0 {
                                m[(ctl * d + r, ctl * d + col)] = v;
                            }
                        }
                    }
                }
                Ok(m)
            }
            GateKind::ControlledSum { value, .. } => {
                let mut m = Matrix::zeros(27);
                for h in 0..3usize {
                    for s in 0..3usize {
                        for t in 0..3usize {
                            let t2 = if h == *value as usize { (t + s) % 3 } else { t };
                            m[(9 * h + 3 * s + t2, 9 * h + 3 * s + t)] = c(1.0, 0.0);
                        }
                    }
                }
                Ok(m)
            }
            GateKind::Horner { .. } => {
                let mut m = Matrix::zeros(27);
                for i in 0..3usize {
                    for j in 0..3usize {
                        for k in 0..3usize {
                            m[(9 * i + 3 * j + (k + i * j) % 3, 9 * i + 3 * j + k)] = c(1.0, 0.0);
                        }
                    }
                }
                Ok(m)
            }
            GateKind::Swap { .. } => {
                let mut m = Matrix::zeros(9);
                for a in 0..3usize {
                    for b in 0..3usize {
                        m[(3 * b + a, 3 * a + b)] = c(1.0, 0.0);
                    }
                }
                Ok(m)
            }
            GateKind::Measure { .. } => Err(Error::Domain("measurement has no matrix".into())),
        }
    }

    /// Gates realizable by braiding alone.
    pub fn is_clifford(&self) -> bool {
        matches!(
            self,
            GateKind::Shift { .. }
                | GateKind::Perm { .. }
                | GateKind::Chrestenson { .. }
                | GateKind::Sum { .. }
                | GateKind::Swap { .. }
        )
    }

    /// The inverse as a short gate sequence.
    pub fn inverse(&self) -> Result<Vec<GateKind>> {
        Ok(match self {
            GateKind::Shift { amount, wire } => vec![GateKind::Shift {
                amount: 3 - amount,
                wire: *wire,
            }],
            GateKind::Perm { .. } | GateKind::Swap { .. } => vec![self.clone()],
            GateKind::Chrestenson { wire } => vec![GateKind::Chrestenson { wire: *wire }; 3],
            GateKind::Sum {
                variant,
                control,
                target,
            } => vec![GateKind::Sum {
                variant: 3 - variant,
                control: *control,
                target: *target,
            }],
            GateKind::Hard {
                inner,
                control,
                value,
            } => inner
                .inverse()?
                .into_iter()
                .map(|g| GateKind::Hard {
                    inner: Box::new(g),
                    control: *control,
                    value: *value,
                })
                .collect(),
            GateKind::ControlledSum {
                control,
                value,
                soft,
                target,
            } => vec![GateKind::Hard {
                inner: Box::new(GateKind::Sum {
                    variant: 2,
                    control: *soft,
                    target: *target,
                }),
                control: *control,
                value: *value,
            }],
            GateKind::Horner { i, j, k } => vec![
                GateKind::Horner {
                    i: *i,
                    j: *j,
                    k: *k,
                };
                2
            ],
            GateKind::Measure { .. } => {
                return Err(Error::Domain("measurement is not invertible".into()))
            }
        })
    }
}

/// The local unitary of a gate with the unitarity invariant checked.
pub fn gate_matrix(kind: &GateKind) -> Result<UnitaryMatrix> {
    UnitaryMatrix::new(kind.matrix()?)
}

#[derive(Debug, Clone)]
pub struct QutritCircuit {
    pub n_wires: usize,
    pub gates: Vec<GateKind>,
    pub labels: Option<Vec<String>>,
}

impl QutritCircuit {
    pub fn new(n_wires: usize, gates: Vec<GateKind>) -> Result<Self> {
        for g in &gates {
            g.validate(n_wires)?;
        }
        Ok(Self {
            n_wires,
            gates,
            labels: None,
        })
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    /// Reversed gate list with every gate inverted.
    pub fn inverse(&self) -> Result<QutritCircuit> {
        let mut gates = Vec::new();
        for g in self.gates.iter().rev() {
            gates.extend(g.inverse()?);
        }
        QutritCircuit::new(self.n_wires, gates)
    }

    pub fn to_json(&self) -> Value {
        let gates: Vec<Value> = self.gates.iter().map(gate_to_json).collect();
        let mut obj = json!({ "wires": self.n_wires, "gates": gates });
        if let Some(labels) = &self.labels {
            obj["labels"] = json!(labels);
        }
        obj
    }

    pub fn from_json(v: &Value) -> Result<QutritCircuit> {
        let n_wires = v
            .get("wires")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Parse("circuit JSON needs a numeric 'wires' field".into()))?
            as usize;
        let gates_json = v
            .get("gates")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("circuit JSON needs a 'gates' array".into()))?;
        let gates: Result<Vec<GateKind>> = gates_json.iter().map(gate_from_json).collect();
        let mut circuit = QutritCircuit::new(n_wires, gates?)?;
        if let Some(labels) = v.get("labels").and_then(Value::as_array) {
            circuit.labels = Some(
                labels
                    .iter()
                    .map(|l| l.as_str().unwrap_or_default().to_string())
                    .collect(),
            );
        }
        Ok(circuit)
    }
}

fn one_qutrit_name(g: &GateKind) -> Option<&'static str> {
    match g {
        GateKind::Shift { amount: 1, .. } => Some("shift+1"),
        GateKind::Shift { amount: 2, .. } => Some("shift+2"),
        GateKind::Perm { kind, .. } => Some(kind.name()),
        GateKind::Chrestenson { .. } => Some("chrestenson"),
        _ => None,
    }
}

fn gate_to_json(g: &GateKind) -> Value {
    match g {
        GateKind::Shift { wire, .. }
        | GateKind::Perm { wire, .. }
        | GateKind::Chrestenson { wire } => {
            json!({ "kind": one_qutrit_name(g).unwrap(), "target": wire })
        }
        GateKind::Sum {
            variant,
            control,
            target,
        } => json!({ "kind": format!("sum{variant}"), "control": control, "target": target }),
        GateKind::Hard {
            inner,
            control,
            value,
        } => {
            if let Some(name) = one_qutrit_name(inner) {
                let target = inner.wires()[0];
                json!({ "kind": "hard", "inner": name, "control": control, "value": value, "target": target })
            } else {
                json!({ "kind": "hard", "inner": gate_to_json(inner), "control": control, "value": value })
            }
        }
        GateKind::ControlledSum {
            control,
            value,
            soft,
            target,
        } => {
            json!({ "kind": "csum", "control": control, "value": value, "soft": soft, "target": target })
        }
        GateKind::Horner { i, j, k } => json!({ "kind": "horner", "i": i, "j": j, "k": k }),
        GateKind::Swap { a, b } => json!({ "kind": "swap", "a": a, "b": b }),
        GateKind::Measure { wire } => json!({ "kind": "measure", "wire": wire }),
    }
}

fn get_usize(v: &Value, field: &str) -> Result<usize> {
    v.get(field)
        .and_then(Value::as_u64)
        .map(|x| x as usize)
        .ok_or_else(|| Error::Parse(format!("gate JSON needs a numeric '{field}' field")))
}

fn one_qutrit_from_name(name: &str, wire: usize) -> Result<GateKind> {
    Ok(match name {
        "shift+1" => GateKind::Shift { amount: 1, wire },
        "shift+2" => GateKind::Shift { amount: 2, wire },
        "perm01" => GateKind::Perm {
            kind: PermKind::P01,
            wire,
        },
        "perm12" => GateKind::Perm {
            kind: PermKind::P12,
            wire,
        },
        "perm02" => GateKind::Perm {
            kind: PermKind::P02,
            wire,
        },
        "chrestenson" => GateKind::Chrestenson { wire },
        other => return Err(Error::Parse(format!("unknown one-qutrit gate '{other}'"))),
    })
}

fn gate_from_json(v: &Value) -> Result<GateKind> {
    let kind = v
        .get("kind")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Parse("gate JSON needs a string 'kind' field".into()))?;
    Ok(match kind {
        "shift+1" | "shift+2" | "perm01" | "perm12" | "perm02" | "chrestenson" => {
            one_qutrit_from_name(kind, get_usize(v, "target")?)?
        }
        "sum1" | "sum2" => GateKind::Sum {
            variant: if kind == "sum1" { 1 } else { 2 },
            control: get_usize(v, "control")?,
            target: get_usize(v, "target")?,
        },
        "hard" => {
            let control = get_usize(v, "control")?;
            let value = get_usize(v, "value")? as Trit;
            let inner_field = v
                .get("inner")
                .ok_or_else(|| Error::Parse("hard gate needs an 'inner' field".into()))?;
            let inner = match inner_field {
                Value::String(name) => one_qutrit_from_name(name, get_usize(v, "target")?)?,
                obj => gate_from_json(obj)?,
            };
            GateKind::Hard {
                inner: Box::new(inner),
                control,
                value,
            }
        }
        "csum" => GateKind::ControlledSum {
            control: get_usize(v, "control")?,
            value: get_usize(v, "value")? as Trit,
            soft: get_usize(v, "soft")?,
            target: get_usize(v, "target")?,
        },
        "horner" => GateKind::Horner {
            i: get_usize(v, "i")?,
            j: get_usize(v, "j")?,
            k: get_usize(v, "k")?,
        },
        "swap" => GateKind::Swap {
            a: get_usize(v, "a")?,
            b: get_usize(v, "b")?,
        },
        "measure" => GateKind::Measure {
            wire: get_usize(v, "wire")?,
        },
        other => return Err(Error::Parse(format!("unknown gate kind '{other}'"))),
    })
}

/// A pure state of n qutrits: 3^n complex amplitudes.
#[derive(Debug, Clone)]
pub struct QutritState {
    n: usize,
    amps: Vec<Complex64>,
}

impl QutritState {
    pub fn basis(n: usize, digits: &[Trit]) -> Result<Self> {
        if digits.len() != n {
            return Err(Error::Dimension {
                expected: n,
                got: digits.len(),
            });
        }
        if digits.iter().any(|&d| d > 2) {
            return Err(Error::Domain("basis digits must be trits".into()));
        }
        let mut amps = vec![c(0.0, 0.0); 3usize.pow(n as u32)];
        amps[digits_to_index(digits)] = c(1.0, 0.0);
        Ok(Self { n, amps })
    }

    pub fn from_amplitudes(n: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 3usize.pow(n as u32) {
            return Err(Error::Dimension {
                expected: 3usize.pow(n as u32),
                got: amps.len(),
            });
        }
        let state = Self { n, amps };
        if (state.norm_sqr() - 1.0).abs() > TOL {
            return Err(Error::Domain("state is not normalized".into()));
        }
        Ok(state)
    }

    pub fn n_wires(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// |<self|other>|^2; insensitive to global phase.
    pub fn fidelity(&self, other: &QutritState) -> f64 {
        let ip: Complex64 = self
            .amps
            .iter()
            .zip(other.amps.iter())
            .map(|(a, b)| a.conj() * b)
            .sum();
        ip.norm_sqr()
    }

    /// Marginal outcome distribution of one wire.
    pub fn wire_distribution(&self, wire: usize) -> [f64; 3] {
        let mut p = [0.0; 3];
        for (idx, a) in self.amps.iter().enumerate() {
            p[digit_of(idx, wire, self.n) as usize] += a.norm_sqr();
        }
        p
    }
}

pub fn digits_to_index(digits: &[Trit]) -> usize {
    digits.iter().fold(0usize, |acc, &d| acc * 3 + d as usize)
}

pub fn index_to_digits(mut idx: usize, n: usize) -> Vec<Trit> {
    let mut digits = vec![0u8; n];
    for w in (0..n).rev() {
        digits[w] = (idx % 3) as Trit;
        idx /= 3;
    }
    digits
}

fn digit_of(idx: usize, wire: usize, n: usize) -> Trit {
    ((idx / 3usize.pow((n - 1 - wire) as u32)) % 3) as Trit
}

/// Applies a local unitary over the given wires (tensor order as listed).
pub fn apply_matrix(state: &QutritState, m: &Matrix, wires: &[usize]) -> Result<QutritState> {
    let n = state.n;
    let k = wires.len();
    if m.dim() != 3usize.pow(k as u32) {
        return Err(Error::Dimension {
            expected: 3usize.pow(k as u32),
            got: m.dim(),
        });
    }
    for &w in wires {
        if w >= n {
            return Err(Error::Domain(format!("wire {w} out of range")));
        }
    }
    let strides: Vec<usize> = wires
        .iter()
        .map(|&w| 3usize.pow((n - 1 - w) as u32))
        .collect();
    let local = 3usize.pow(k as u32);
    let mut out = state.amps.clone();
    let total = state.amps.len();
    let mut gathered = vec![c(0.0, 0.0); local];
    for base in 0..total {
        // Visit each fiber once: all addressed digits zero.
        if wires.iter().any(|&w| digit_of(base, w, n) != 0) {
            continue;
        }
        for (l, g) in gathered.iter_mut().enumerate() {
            let mut idx = base;
            let mut rest = l;
            for p in (0..k).rev() {
                idx += (rest % 3) * strides[p];
                rest /= 3;
            }
            *g = state.amps[idx];
        }
        for r in 0..local {
            let mut idx = base;
            let mut rest = r;
            for p in (0..k).rev() {
                idx += (rest % 3) * strides[p];
                rest /= 3;
            }
            let mut acc = c(0.0, 0.0);
            for (l, g) in gathered.iter().enumerate() {
                acc += m[(r, l)] * g;
            }
            out[idx] = acc;
        }
    }
    Ok(QutritState { n, amps: out })
}

/// Applies one gate; measurement gates are rejected here.
pub fn apply(state: &QutritState, gate: &GateKind) -> Result<QutritState> {
    apply_matrix(state, &gate.matrix()?, &gate.wires())
}

/// Projectively measures one wire: outcome drawn from the marginal, state
/// collapsed and renormalized. A zero-probability branch is never returned.
pub fn measure(
    state: &QutritState,
    wire: usize,
    rng: &mut SplitMix64,
) -> Result<(Trit, QutritState)> {
    if wire >= state.n {
        return Err(Error::Domain(format!("wire {wire} out of range")));
    }
    let p = state.wire_distribution(wire);
    let total: f64 = p.iter().sum();
    let u = rng.next_f64() * total;
    let mut outcome = None;
    let mut acc = 0.0;
    for (v, &pv) in p.iter().enumerate() {
        if pv <= 1e-15 {
            continue;
        }
        acc += pv;
        if u < acc {
            outcome = Some(v as Trit);
            break;
        }
    }
    let outcome = outcome.unwrap_or_else(|| {
        // Floating-point edge: fall back to the largest branch.
        p.iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0 as Trit
    });
    let norm = p[outcome as usize].sqrt();
    let mut amps = state.amps.clone();
    for (idx, a) in amps.iter_mut().enumerate() {
        if digit_of(idx, wire, state.n) == outcome {
            *a /= c(norm, 0.0);
        } else {
            *a = c(0.0, 0.0);
        }
    }
    Ok((outcome, QutritState { n: state.n, amps }))
}

/// Outcome of a full simulation: final state plus the measurement transcript.
pub struct SimOutcome {
    pub state: QutritState,
    pub transcript: Vec<(usize, Trit)>,
}

/// Applies all gates in order; Measure gates collapse with seeded randomness.
pub fn simulate(circuit: &QutritCircuit, input: &[Trit], seed: u64) -> Result<SimOutcome> {
    let mut state = QutritState::basis(circuit.n_wires, input)?;
    let mut rng = SplitMix64::new(seed);
    let mut transcript = Vec::new();
    for gate in &circuit.gates {
        if let GateKind::Measure { wire } = gate {
            let (outcome, next) = measure(&state, *wire, &mut rng)?;
            transcript.push((*wire, outcome));
            state = next;
        } else {
            state = apply(&state, gate)?;
        }
    }
    Ok(SimOutcome { state, transcript })
}

/// A classical truth table: inputs enumerated lexicographically.
#[derive(Debug, Clone, PartialEq)]
pub struct TruthTable {
    pub input_names: Vec<String>,
    pub output_names: Vec<String>,
    pub rows: Vec<(Vec<Trit>, Vec<Trit>)>,
}

impl TruthTable {
    /// CSV with header = input names then output names.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<&str> = self
            .input_names
            .iter()
            .chain(self.output_names.iter())
            .map(String::as_str)
            .collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for (ins, outs) in &self.rows {
            let cells: Vec<String> = ins
                .iter()
                .chain(outs.iter())
                .map(|d| d.to_string())
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn wire_name(circuit: &QutritCircuit, w: usize) -> String {
    circuit
        .labels
        .as_ref()
        .and_then(|ls| ls.get(w).cloned())
        .unwrap_or_else(|| format!("w{w}"))
}

/// Propagates a basis state through one local matrix classically, failing if
/// a superposition appears.
fn classical_step(m: &Matrix, wires: &[usize], digits: &mut [Trit], input: &[Trit]) -> Result<()> {
    let k = wires.len();
    let col = {
        let mut idx = 0usize;
        for &w in wires {
            idx = idx * 3 + digits[w] as usize;
        }
        idx
    };
    let dim = 3usize.pow(k as u32);
    let mut hit = None;
    for r in 0..dim {
        let a = m[(r, col)].norm();
        if a > TOL {
            if a < 1.0 - TOL || hit.is_some() {
                return Err(Error::NonClassical {
                    input: input.to_vec(),
                    detail: "gate output is not a basis state".into(),
                });
            }
            hit = Some(r);
        }
    }
    let mut r = hit.ok_or_else(|| Error::Integrity("gate column is zero".into()))?;
    for &w in wires.iter().rev() {
        digits[w] = (r % 3) as Trit;
        r /= 3;
    }
    Ok(())
}

/// Propagates one full basis assignment through a classical-reversible
/// circuit, returning the final digits of every wire. Measurements act as
/// identities on basis states.
pub fn classical_outputs(circuit: &QutritCircuit, assignment: &[Trit]) -> Result<Vec<Trit>> {
    if assignment.len() != circuit.n_wires {
        return Err(Error::Dimension {
            expected: circuit.n_wires,
            got: assignment.len(),
        });
    }
    let mut digits = assignment.to_vec();
    for gate in &circuit.gates {
        if matches!(gate, GateKind::Measure { .. }) {
            continue;
        }
        classical_step(&gate.matrix()?, &gate.wires(), &mut digits, assignment)?;
    }
    Ok(digits)
}

/// For every assignment of {0,1,2} to the input wires (constants fixed on all
/// remaining wires), the resulting basis state restricted to the output
/// wires. The circuit must act classically; a non-classical gate output is
/// reported with the offending input.
pub fn truth_table(
    circuit: &QutritCircuit,
    input_wires: &[usize],
    output_wires: &[usize],
    constants: &[(usize, Trit)],
) -> Result<TruthTable> {
    let n = circuit.n_wires;
    let mut covered = vec![false; n];
    for &w in input_wires {
        covered[w] = true;
    }
    for &(w, v) in constants {
        if covered[w] {
            return Err(Error::Domain(format!(
                "wire {w} is both an input and a constant"
            )));
        }
        if v > 2 {
            return Err(Error::Domain("constant value must be a trit".into()));
        }
        covered[w] = true;
    }
    if covered.iter().any(|&x| !x) {
        return Err(Error::Domain(
            "every wire must be an input or a constant".into(),
        ));
    }

    // Local matrices computed once per gate.
    let mats: Result<Vec<(Matrix, Vec<usize>)>> = circuit
        .gates
        .iter()
        .filter(|g| !matches!(g, GateKind::Measure { .. }))
        .map(|g| Ok((g.matrix()?, g.wires())))
        .collect();
    let mats = mats?;

    let combos = 3usize.pow(input_wires.len() as u32);
    let mut rows = Vec::with_capacity(combos);
    for assignment in 0..combos {
        let ins = index_to_digits(assignment, input_wires.len());
        let mut digits = vec![0u8; n];
        for (&w, &v) in input_wires.iter().zip(ins.iter()) {
            digits[w] = v;
        }
        for &(w, v) in constants {
            digits[w] = v;
        }
        for (m, ws) in &mats {
            classical_step(m, ws, &mut digits, &ins)?;
        }
        let outs: Vec<Trit> = output_wires.iter().map(|&w| digits[w]).collect();
        rows.push((ins, outs));
    }
    Ok(TruthTable {
        input_names: input_wires.iter().map(|&w| wire_name(circuit, w)).collect(),
        output_names: output_wires
            .iter()
            .map(|&w| wire_name(circuit, w))
            .collect(),
        rows,
    })
}

/// One item of a lowered program: a braid word on an encoding region, a
/// measurement-assisted gate kept as its exact matrix, or a measurement.
pub enum LoweredOp {
    /// Braid word over the 4-anyon encoding of one wire; letters are signed
    /// generator indices in temporal order.
    OneQutritWord {
        wire: usize,
        word: Vec<i8>,
        gate: String,
    },
    /// Braid word over the 8-anyon encoding of an ordered wire pair.
    TwoQutritWord {
        wires: [usize; 2],
        word: Vec<i8>,
        gate: String,
    },
    /// Non-Clifford gate: applied as its exact unitary, annotated as
    /// measurement-assisted.
    MeasurementAssisted {
        wires: Vec<usize>,
        gate: String,
        matrix: Matrix,
    },
    Measure {
        wire: usize,
    },
}

pub struct BraidProgram {
    pub n_wires: usize,
    pub ops: Vec<LoweredOp>,
}

impl BraidProgram {
    pub fn braid_word_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| {
                matches!(
                    op,
                    LoweredOp::OneQutritWord { .. } | LoweredOp::TwoQutritWord { .. }
                )
            })
            .count()
    }

    pub fn measurement_assisted_count(&self) -> usize {
        self.ops
            .iter()
            .filter(|op| matches!(op, LoweredOp::MeasurementAssisted { .. }))
            .count()
    }
}

fn invert_word(word: &[i8]) -> Vec<i8> {
    word.iter().rev().map(|&l| -l).collect()
}

fn shift_word(word: &[i8], by: i8) -> Vec<i8> {
    word.iter()
        .map(|&l| if l > 0 { l + by } else { l - by })
        .collect()
}

/// Braid words, in temporal order, for the synthesized gate set.
pub mod braid_words {
    use super::{invert_word, shift_word};

    /// q = sigma1 sigma2 sigma1 (temporal; palindrome).
    pub fn q_word() -> Vec<i8> {
        vec![1, 2, 1]
    }

    /// p = sigma2 sigma3 sigma2.
    pub fn p_word() -> Vec<i8> {
        vec![2, 3, 2]
    }

    /// H = q^2 p q^2.
    pub fn hadamard() -> Vec<i8> {
        let q2: Vec<i8> = [q_word(), q_word()].concat();
        [q2.clone(), p_word(), q2].concat()
    }

    /// Z = sigma1 sigma3^{-1}.
    pub fn z_phase() -> Vec<i8> {
        vec![-3, 1]
    }

    pub fn perm01() -> Vec<i8> {
        [p_word(), p_word()].concat()
    }

    pub fn perm02() -> Vec<i8> {
        [q_word(), q_word()].concat()
    }

    pub fn perm12() -> Vec<i8> {
        [hadamard(), hadamard()].concat()
    }

    /// Z3(+1) = H Z^dagger H^dagger.
    pub fn shift1() -> Vec<i8> {
        [
            invert_word(&hadamard()),
            invert_word(&z_phase()),
            hadamard(),
        ]
        .concat()
    }

    /// Z3(+2) = H Z H^dagger.
    pub fn shift2() -> Vec<i8> {
        [invert_word(&hadamard()), z_phase(), hadamard()].concat()
    }

    fn s_word(i: usize) -> Vec<i8> {
        // s = sigma_{i+1} sigma_i sigma_{i+2} sigma_{i+1} as a matrix product.
        let i = i as i8;
        vec![i + 1, i + 2, i, i + 1]
    }

    /// Lambda(Z) = s1^{-1} s2^2 s1 s3^{-1} s2^2 s3.
    pub fn lambda_z() -> Vec<i8> {
        let s1 = s_word(1);
        let s2 = s_word(3);
        let s3 = s_word(5);
        [
            s3.clone(),
            s2.clone(),
            s2.clone(),
            invert_word(&s3),
            s1.clone(),
            s2.clone(),
            s2,
            invert_word(&s1),
        ]
        .concat()
    }

    /// SUM1 = (I x H^{-1}) Lambda(Z) (I x H): control on the first qutrit.
    pub fn sum1() -> Vec<i8> {
        let h_2nd = shift_word(&hadamard(), 4);
        [h_2nd.clone(), lambda_z(), invert_word(&h_2nd)].concat()
    }

    /// SUM2 uses the inverse Lambda(Z) word.
    pub fn sum2() -> Vec<i8> {
        let h_2nd = shift_word(&hadamard(), 4);
        [h_2nd.clone(), invert_word(&lambda_z()), invert_word(&h_2nd)].concat()
    }

    /// SUM with control on the second qutrit: (H^{-1} x I) Lambda(Z) (H x I).
    pub fn sum21() -> Vec<i8> {
        let h_1st = hadamard();
        [h_1st.clone(), lambda_z(), invert_word(&h_1st)].concat()
    }

    /// SWAP = (Z3(12) x I) SUM_{1,2} SUM_{2,1} SUM_{2,1} SUM_{1,2}.
    pub fn swap() -> Vec<i8> {
        [sum1(), sum21(), sum21(), sum1(), perm12()].concat()
    }
}

/// Replaces every Clifford gate with its braid word; non-Clifford gates are
/// annotated as measurement-assisted and kept as exact matrices.
pub fn lower_to_braids(circuit: &QutritCircuit, library: &GateLibrary) -> Result<BraidProgram> {
    let mut ops = Vec::new();
    // Each distinct two-qutrit word is validated once: the realized
    // 27-dimensional unitary must be closed on the computational subspace,
    // or the lowering carries a basis-ordering bug.
    let mut validated: std::collections::HashSet<String> = std::collections::HashSet::new();
    let mut validate_word = |name: &str, word: &[i8]| -> Result<()> {
        if validated.insert(name.to_string()) {
            let u27 = word_unitary(word, &library.two.sigma)?;
            library.restrict27(&u27, name)?;
        }
        Ok(())
    };
    for gate in &circuit.gates {
        match gate {
            GateKind::Shift { amount, wire } => ops.push(LoweredOp::OneQutritWord {
                wire: *wire,
                word: if *amount == 1 {
                    braid_words::shift1()
                } else {
                    braid_words::shift2()
                },
                gate: format!("shift+{amount}"),
            }),
            GateKind::Perm { kind, wire } => ops.push(LoweredOp::OneQutritWord {
                wire: *wire,
                word: match kind {
                    PermKind::P01 => braid_words::perm01(),
                    PermKind::P12 => braid_words::perm12(),
                    PermKind::P02 => braid_words::perm02(),
                },
                gate: kind.name().into(),
            }),
            GateKind::Chrestenson { wire } => ops.push(LoweredOp::OneQutritWord {
                wire: *wire,
                word: braid_words::hadamard(),
                gate: "chrestenson".into(),
            }),
            GateKind::Sum {
                variant,
                control,
                target,
            } => {
                let word = if *variant == 1 {
                    braid_words::sum1()
                } else {
                    braid_words::sum2()
                };
                let name = format!("sum{variant}");
                validate_word(&name, &word)?;
                ops.push(LoweredOp::TwoQutritWord {
                    wires: [*control, *target],
                    word,
                    gate: name,
                });
            }
            GateKind::Swap { a, b } => {
                let word = braid_words::swap();
                validate_word("swap", &word)?;
                ops.push(LoweredOp::TwoQutritWord {
                    wires: [*a, *b],
                    word,
                    gate: "swap".into(),
                });
            }
            GateKind::Measure { wire } => ops.push(LoweredOp::Measure { wire: *wire }),
            other => ops.push(LoweredOp::MeasurementAssisted {
                wires: other.wires(),
                gate: format!("{other:?}"),
                matrix: other.matrix()?,
            }),
        }
    }
    Ok(BraidProgram {
        n_wires: circuit.n_wires,
        ops,
    })
}

/// Result of simulating a lowered program. `retries` counts the sampled
/// repeat-until-success attempts of the measurement-assisted gates in
/// stochastic mode (the applied unitaries stay exact).
pub struct LoweredRun {
    pub state: QutritState,
    pub transcript: Vec<(usize, Trit)>,
    pub retries: u64,
}

/// The unitary realized by a braid word over the library generators: letters
/// act in temporal order.
fn word_unitary(word: &[i8], generators: &[Matrix]) -> Result<Matrix> {
    let dim = generators[0].dim();
    let mut inverses: Vec<Option<Matrix>> = vec![None; generators.len()];
    let mut acc = Matrix::identity(dim);
    for &l in word {
        let idx = l.unsigned_abs() as usize - 1;
        if idx >= generators.len() {
            return Err(Error::Domain(format!("braid letter {l} out of range")));
        }
        let m = if l > 0 {
            generators[idx].clone()
        } else {
            if inverses[idx].is_none() {
                inverses[idx] = Some(generators[idx].inverse()?);
            }
            inverses[idx].clone().unwrap()
        };
        acc = m.mul(&acc);
    }
    Ok(acc)
}

/// Simulates a lowered program. Braid words are multiplied out over the
/// library's generators (two-qutrit words on the 27-dimensional space, then
/// restricted to the computational subspace with a closure check).
pub fn simulate_lowered(
    program: &BraidProgram,
    library: &GateLibrary,
    input: &[Trit],
    seed: u64,
    stochastic: bool,
) -> Result<LoweredRun> {
    let mut state = QutritState::basis(program.n_wires, input)?;
    let mut rng = SplitMix64::new(seed);
    let mut transcript = Vec::new();
    let mut retries = 0u64;
    for op in &program.ops {
        match op {
            LoweredOp::OneQutritWord { wire, word, .. } => {
                let u = word_unitary(word, &library.one.sigma)?;
                state = apply_matrix(&state, &u, &[*wire])?;
            }
            LoweredOp::TwoQutritWord { wires, word, gate } => {
                let u27 = word_unitary(word, &library.two.sigma)?;
                let u9 = library.restrict27(&u27, gate)?;
                state = apply_matrix(&state, &u9, &wires[..])?;
            }
            LoweredOp::MeasurementAssisted { wires, matrix, .. } => {
                if stochastic {
                    // Repeat-until-success bookkeeping: each attempt reads the
                    // control charge, succeeding with probability 1/3.
                    while rng.next_below(3) != 0 {
                        retries += 1;
                    }
                }
                state = apply_matrix(&state, matrix, wires)?;
            }
            LoweredOp::Measure { wire } => {
                let (outcome, next) = measure(&state, *wire, &mut rng)?;
                transcript.push((*wire, outcome));
                state = next;
            }
        }
    }
    Ok(LoweredRun {
        state,
        transcript,
        retries,
    })
}
