//! Ternary arithmetic circuits as qutrit blueprints: half/full adder,
//! half/full subtractor, partial-product generator, the four restricted
//! adder blocks, the two-qutrit ripple adder, and the two-qutrit multiplier.
//! Each blueprint is verified against its embedded reference table or an
//! integer-arithmetic identity.

use crate::circuit::{classical_outputs, GateKind, PermKind, QutritCircuit, Trit, TruthTable};
use crate::error::{Error, Result};

/// A reversible arithmetic circuit with its wire bookkeeping. Input and
/// constant wires partition the circuit's wires on the input side; output
/// and garbage wires partition them on the output side.
pub struct CircuitBlueprint {
    pub name: String,
    pub description: String,
    pub circuit: QutritCircuit,
    pub input_wires: Vec<usize>,
    pub input_names: Vec<String>,
    /// Allowed values per input wire (the blocks have restricted domains).
    pub input_ranges: Vec<Vec<Trit>>,
    pub constant_wires: Vec<(usize, Trit)>,
    pub output_wires: Vec<usize>,
    pub output_names: Vec<String>,
    pub garbage_wires: Vec<usize>,
}

impl CircuitBlueprint {
    fn validate(&self) -> Result<()> {
        let n = self.circuit.n_wires;
        let mut seen = vec![false; n];
        for &w in &self.input_wires {
            seen[w] = true;
        }
        for &(w, _) in &self.constant_wires {
            if seen[w] {
                return Err(Error::Integrity(format!(
                    "{}: wire {w} is both input and constant",
                    self.name
                )));
            }
            seen[w] = true;
        }
        if seen.iter().any(|&x| !x) {
            return Err(Error::Integrity(format!(
                "{}: input and constant wires do not cover the circuit",
                self.name
            )));
        }
        let mut out_seen = vec![false; n];
        for &w in self.output_wires.iter().chain(self.garbage_wires.iter()) {
            if out_seen[w] {
                return Err(Error::Integrity(format!(
                    "{}: wire {w} appears twice on the output side",
                    self.name
                )));
            }
            out_seen[w] = true;
        }
        // Input wires that are neither outputs nor garbage are unaccounted.
        if out_seen.iter().any(|&x| !x) {
            return Err(Error::Integrity(format!(
                "{}: output and garbage wires do not cover the circuit",
                self.name
            )));
        }
        Ok(())
    }

    /// All input assignments over the blueprint's (possibly restricted)
    /// domain, lexicographically ordered.
    pub fn domain(&self) -> Vec<Vec<Trit>> {
        let mut combos = vec![Vec::new()];
        for range in &self.input_ranges {
            let mut next = Vec::with_capacity(combos.len() * range.len());
            for combo in &combos {
                for &v in range {
                    let mut c = combo.clone();
                    c.push(v);
                    next.push(c);
                }
            }
            combos = next;
        }
        combos
    }

    /// Runs one input assignment; returns the output-wire digits.
    pub fn run(&self, inputs: &[Trit]) -> Result<Vec<Trit>> {
        let mut assignment = vec![0u8; self.circuit.n_wires];
        for (&w, &v) in self.input_wires.iter().zip(inputs.iter()) {
            assignment[w] = v;
        }
        for &(w, v) in &self.constant_wires {
            assignment[w] = v;
        }
        let finals = classical_outputs(&self.circuit, &assignment)?;
        Ok(self.output_wires.iter().map(|&w| finals[w]).collect())
    }

    /// Truth table over the blueprint's domain.
    pub fn truth_table(&self) -> Result<TruthTable> {
        let mut rows = Vec::new();
        for inputs in self.domain() {
            let outputs = self.run(&inputs)?;
            rows.push((inputs, outputs));
        }
        Ok(TruthTable {
            input_names: self.input_names.clone(),
            output_names: self.output_names.clone(),
            rows,
        })
    }

    /// (braiding, measurement-assisted) gate counts.
    pub fn gate_counts(&self) -> (usize, usize) {
        let clifford = self
            .circuit
            .gates
            .iter()
            .filter(|g| g.is_clifford())
            .count();
        (clifford, self.circuit.gates.len() - clifford)
    }

    /// Checks every expected row (from the embedded reference table or the
    /// arithmetic identity); returns (matched, total, mismatches).
    pub fn verify(&self) -> Result<(usize, usize, Vec<String>)> {
        let mut mismatches = Vec::new();
        let mut total = 0usize;
        match expected_for(&self.name) {
            Expected::Table(table) => {
                for (ins, want) in &table.rows {
                    total += 1;
                    let got = self.run(ins)?;
                    if got != *want {
                        mismatches.push(format!(
                            "inputs {ins:?}: expected {want:?}, computed {got:?}"
                        ));
                    }
                }
            }
            Expected::Identity(check) => {
                for ins in self.domain() {
                    total += 1;
                    let got = self.run(&ins)?;
                    if !check(&ins, &got) {
                        mismatches.push(format!(
                            "inputs {ins:?}: outputs {got:?} break the identity"
                        ));
                    }
                }
            }
        }
        let matched = total - mismatches.len();
        Ok((matched, total, mismatches))
    }
}

/// What a blueprint is verified against.
pub enum Expected {
    Table(TruthTable),
    Identity(fn(&[Trit], &[Trit]) -> bool),
}

fn full_range() -> Vec<Trit> {
    vec![0, 1, 2]
}

fn carry_range() -> Vec<Trit> {
    vec![0, 1]
}

// Shared gate-list builders, parameterized by wire indices so the composite
// circuits can instantiate them anywhere.

fn hard(inner: GateKind, control: usize, value: Trit) -> GateKind {
    GateKind::Hard {
        inner: Box::new(inner),
        control,
        value,
    }
}

fn shift(amount: u8, wire: usize) -> GateKind {
    GateKind::Shift { amount, wire }
}

fn perm(kind: PermKind, wire: usize) -> GateKind {
    GateKind::Perm { kind, wire }
}

fn sum(variant: u8, control: usize, target: usize) -> GateKind {
    GateKind::Sum {
        variant,
        control,
        target,
    }
}

fn half_adder_gates(a: usize, b: usize, anc: usize) -> Vec<GateKind> {
    vec![
        GateKind::ControlledSum {
            control: a,
            value: 2,
            soft: b,
            target: anc,
        },
        hard(perm(PermKind::P12, anc), b, 2),
        hard(hard(shift(1, anc), b, 2), a, 1),
        sum(1, b, a),
    ]
}

fn full_adder_gates(a: usize, b: usize, c: usize, anc: usize) -> Vec<GateKind> {
    vec![
        GateKind::ControlledSum {
            control: a,
            value: 2,
            soft: b,
            target: anc,
        },
        hard(perm(PermKind::P12, anc), b, 2),
        hard(hard(shift(1, anc), b, 2), a, 1),
        sum(1, b, a),
        GateKind::ControlledSum {
            control: a,
            value: 2,
            soft: c,
            target: anc,
        },
        hard(hard(shift(2, anc), c, 2), a, 2),
        hard(hard(shift(1, anc), c, 2), a, 1),
        sum(1, c, a),
    ]
}

fn half_subtractor_gates(a: usize, b: usize, anc: usize) -> Vec<GateKind> {
    vec![
        GateKind::ControlledSum {
            control: a,
            value: 0,
            soft: b,
            target: anc,
        },
        hard(perm(PermKind::P12, anc), b, 2),
        hard(hard(shift(1, anc), b, 2), a, 1),
        sum(2, b, a),
    ]
}

fn full_subtractor_gates(a: usize, b: usize, c: usize, anc: usize) -> Vec<GateKind> {
    vec![
        hard(shift(1, anc), b, 2),
        hard(hard(shift(1, anc), b, 1), a, 0),
        hard(hard(shift(2, anc), b, 2), a, 2),
        sum(2, b, a),
        sum(2, c, a),
        hard(hard(shift(1, anc), c, 2), a, 2),
        hard(hard(shift(1, anc), c, 1), a, 2),
        hard(hard(shift(1, anc), c, 2), a, 1),
    ]
}

fn tppg_gates(a: usize, b: usize, p: usize, cp: usize) -> Vec<GateKind> {
    vec![
        sum(1, b, p),
        hard(perm(PermKind::P12, p), a, 2),
        hard(sum(2, b, p), a, 0),
        hard(hard(shift(1, cp), b, 2), a, 2),
    ]
}

fn block1_gates(a: usize, b: usize, c: usize, anc: usize) -> Vec<GateKind> {
    vec![
        hard(shift(1, anc), b, 2),
        hard(hard(shift(1, anc), b, 1), a, 2),
        hard(hard(perm(PermKind::P01, anc), b, 2), a, 0),
        sum(1, b, a),
        sum(1, c, a),
        hard(hard(shift(1, anc), c, 1), a, 0),
    ]
}

fn block2_gates(a: usize, b: usize, c: usize, anc: usize) -> Vec<GateKind> {
    vec![
        hard(hard(shift(1, anc), b, 1), a, 2),
        sum(1, b, a),
        sum(1, c, a),
        hard(hard(shift(1, anc), c, 1), a, 0),
    ]
}

fn block3_gates(a: usize, b: usize, c: usize, anc: usize) -> Vec<GateKind> {
    vec![
        sum(1, b, a),
        sum(1, c, a),
        hard(hard(shift(1, anc), c, 1), a, 0),
    ]
}

fn block4_gates(a: usize, c: usize, anc: usize) -> Vec<GateKind> {
    vec![hard(hard(shift(1, anc), c, 1), a, 2), sum(1, c, a)]
}

#[allow(clippy::too_many_arguments)]
fn blueprint(
    name: &str,
    description: &str,
    n_wires: usize,
    gates: Vec<GateKind>,
    inputs: &[(usize, &str)],
    ranges: Vec<Vec<Trit>>,
    constants: &[(usize, Trit)],
    outputs: &[(usize, &str)],
    garbage: &[usize],
) -> CircuitBlueprint {
    let bp = CircuitBlueprint {
        name: name.into(),
        description: description.into(),
        circuit: QutritCircuit::new(n_wires, gates).expect("valid blueprint circuit"),
        input_wires: inputs.iter().map(|&(w, _)| w).collect(),
        input_names: inputs.iter().map(|&(_, n)| n.to_string()).collect(),
        input_ranges: ranges,
        constant_wires: constants.to_vec(),
        output_wires: outputs.iter().map(|&(w, _)| w).collect(),
        output_names: outputs.iter().map(|&(_, n)| n.to_string()).collect(),
        garbage_wires: garbage.to_vec(),
    };
    bp.validate().expect("blueprint wire sets partition");
    bp
}

/// Half adder: S = (A+B) mod 3 on the A wire, carry on the ancilla.
pub fn build_half_adder() -> CircuitBlueprint {
    blueprint(
        "half-adder",
        "ternary half adder: one soft sum and three hard-controlled gates",
        3,
        half_adder_gates(0, 1, 2),
        &[(0, "A"), (1, "B")],
        vec![full_range(), full_range()],
        &[(2, 0)],
        &[(0, "S"), (2, "c_out")],
        &[1],
    )
}

pub fn build_full_adder() -> CircuitBlueprint {
    blueprint(
        "full-adder",
        "ternary full adder over A, B and carry-in C",
        4,
        full_adder_gates(0, 1, 2, 3),
        &[(0, "A"), (1, "B"), (2, "C")],
        vec![full_range(), full_range(), full_range()],
        &[(3, 0)],
        &[(0, "S"), (3, "c_out")],
        &[1, 2],
    )
}

pub fn build_half_subtractor() -> CircuitBlueprint {
    blueprint(
        "half-sub",
        "ternary half subtractor: D = A - B with borrow",
        3,
        half_subtractor_gates(0, 1, 2),
        &[(0, "A"), (1, "B")],
        vec![full_range(), full_range()],
        &[(2, 0)],
        &[(0, "D"), (2, "b_out")],
        &[1],
    )
}

pub fn build_full_subtractor() -> CircuitBlueprint {
    blueprint(
        "full-sub",
        "ternary full subtractor: D = A - B - C with borrow",
        4,
        full_subtractor_gates(0, 1, 2, 3),
        &[(0, "A"), (1, "B"), (2, "C")],
        vec![full_range(), full_range(), full_range()],
        &[(3, 0)],
        &[(0, "D"), (3, "b_out")],
        &[1, 2],
    )
}

pub fn build_tppg() -> CircuitBlueprint {
    blueprint(
        "tppg",
        "two-qutrit partial product: P = A*B mod 3, carry iff A = B = 2",
        4,
        tppg_gates(0, 1, 2, 3),
        &[(0, "A"), (1, "B")],
        vec![full_range(), full_range()],
        &[(2, 0), (3, 0)],
        &[(2, "P"), (3, "cp")],
        &[0, 1],
    )
}

/// Restricted-domain adder block n (1..=4).
pub fn build_adder_block(n: u8) -> Result<CircuitBlueprint> {
    Ok(match n {
        1 => blueprint(
            "block1",
            "adder block 1: A + B + c_in with A, B ternary and c_in binary",
            4,
            block1_gates(0, 1, 2, 3),
            &[(0, "A"), (1, "B"), (2, "c_in")],
            vec![full_range(), full_range(), carry_range()],
            &[(3, 0)],
            &[(0, "Sum"), (3, "c_out")],
            &[1, 2],
        ),
        2 => blueprint(
            "block2",
            "adder block 2: A ternary, B and c_in binary",
            4,
            block2_gates(0, 1, 2, 3),
            &[(0, "A"), (1, "B"), (2, "c_in")],
            vec![full_range(), carry_range(), carry_range()],
            &[(3, 0)],
            &[(0, "Sum"), (3, "c_out")],
            &[1, 2],
        ),
        3 => blueprint(
            "block3",
            "adder block 3: all inputs binary",
            4,
            block3_gates(0, 1, 2, 3),
            &[(0, "A"), (1, "B"), (2, "c_in")],
            vec![carry_range(), carry_range(), carry_range()],
            &[(3, 0)],
            &[(0, "Sum"), (3, "c_out")],
            &[1, 2],
        ),
        4 => blueprint(
            "block4",
            "adder block 4: A ternary plus a binary carry",
            3,
            block4_gates(0, 1, 2),
            &[(0, "A"), (1, "c_in")],
            vec![full_range(), carry_range()],
            &[(2, 0)],
            &[(0, "Sum"), (2, "c_out")],
            &[1],
        ),
        other => return Err(Error::Domain(format!("no adder block {other}"))),
    })
}

/// Two-qutrit ripple adder: a half adder on the low digits, the carry routed
/// through a SWAP into a full adder on the high digits.
pub fn build_two_qutrit_adder() -> CircuitBlueprint {
    let mut gates = half_adder_gates(0, 1, 2);
    gates.push(GateKind::Swap { a: 2, b: 5 });
    gates.extend(full_adder_gates(3, 4, 5, 6));
    blueprint(
        "adder2",
        "two-qutrit adder: half adder on (A0,B0), SWAP routes the carry into \
         the full adder on (A1,B1)",
        7,
        gates,
        &[(0, "A0"), (1, "B0"), (3, "A1"), (4, "B1")],
        vec![full_range(), full_range(), full_range(), full_range()],
        &[(2, 0), (5, 0), (6, 0)],
        &[(0, "S0"), (3, "S1"), (6, "c_out")],
        &[1, 2, 4, 5],
    )
}

/// Two-qutrit multiplier from four partial-product generators and the four
/// adder blocks.
pub fn build_multiplier() -> CircuitBlueprint {
    // Wires: 0 A0, 1 P0-anc, 2 cp0-anc, 3 B0, 4 A1B0-anc, 5 cp1-anc, 6 A1,
    // 7 A1B1-anc, 8 cp3-anc, 9 B1, 10 A0B1-anc, 11 cp2-anc, 12 c0-anc,
    // 13 c1-anc, 14 c2-anc, 15 cout-anc.
    let mut gates = Vec::new();
    gates.extend(tppg_gates(0, 3, 1, 2)); // P0 = A0*B0, cp0
    gates.extend(tppg_gates(6, 9, 7, 8)); // A1*B1, cp3
    gates.extend(tppg_gates(6, 3, 4, 5)); // A1*B0, cp1
    gates.extend(tppg_gates(0, 9, 10, 11)); // A0*B1, cp2
    gates.extend(block1_gates(10, 4, 2, 12)); // P1 = A0B1 + A1B0 + cp0, c0
    gates.extend(block2_gates(7, 5, 11, 13)); // s1 = A1B1 + cp1 + cp2, c1
    gates.extend(block4_gates(7, 12, 14)); // P2 = s1 + c0, c2
    gates.extend(block3_gates(14, 8, 13, 15)); // P3 = c2 + cp3 + c1, c_out
    blueprint(
        "multiplier",
        "two-qutrit multiplier: the figure's final wire relabeling is \
         realized by reading P2 from the block-2 sum wire rather than by a \
         trailing crossing; c_out is provably 0 for all two-digit inputs",
        16,
        gates,
        &[(0, "A0"), (3, "B0"), (6, "A1"), (9, "B1")],
        vec![full_range(), full_range(), full_range(), full_range()],
        &[
            (1, 0),
            (2, 0),
            (4, 0),
            (5, 0),
            (7, 0),
            (8, 0),
            (10, 0),
            (11, 0),
            (12, 0),
            (13, 0),
            (14, 0),
            (15, 0),
        ],
        &[(1, "P0"), (10, "P1"), (7, "P2"), (14, "P3"), (15, "c_out")],
        &[0, 2, 3, 4, 5, 6, 8, 9, 11, 12, 13],
    )
}

pub fn blueprint_names() -> &'static [&'static str] {
    &[
        "half-adder",
        "full-adder",
        "adder2",
        "half-sub",
        "full-sub",
        "tppg",
        "block1",
        "block2",
        "block3",
        "block4",
        "multiplier",
    ]
}

pub fn build_by_name(name: &str) -> Result<CircuitBlueprint> {
    Ok(match name {
        "half-adder" => build_half_adder(),
        "full-adder" => build_full_adder(),
        "adder2" => build_two_qutrit_adder(),
        "half-sub" => build_half_subtractor(),
        "full-sub" => build_full_subtractor(),
        "tppg" => build_tppg(),
        "block1" => build_adder_block(1)?,
        "block2" => build_adder_block(2)?,
        "block3" => build_adder_block(3)?,
        "block4" => build_adder_block(4)?,
        "multiplier" => build_multiplier(),
        other => return Err(Error::Domain(format!("unknown circuit '{other}'"))),
    })
}

// Reference tables, row for row as printed.

const HALF_ADDER_TABLE: [[Trit; 4]; 9] = [
    [0, 0, 0, 0],
    [0, 1, 1, 0],
    [0, 2, 2, 0],
    [1, 0, 1, 0],
    [1, 1, 2, 0],
    [1, 2, 0, 1],
    [2, 0, 2, 0],
    [2, 1, 0, 1],
    [2, 2, 1, 1],
];

const FULL_ADDER_TABLE: [[Trit; 5]; 27] = [
    [0, 0, 0, 0, 0],
    [0, 0, 1, 1, 0],
    [0, 0, 2, 2, 0],
    [0, 1, 0, 1, 0],
    [0, 1, 1, 2, 0],
    [0, 1, 2, 0, 1],
    [0, 2, 0, 2, 0],
    [0, 2, 1, 0, 1],
    [0, 2, 2, 1, 1],
    [1, 0, 0, 1, 0],
    [1, 0, 1, 2, 0],
    [1, 0, 2, 0, 1],
    [1, 1, 0, 2, 0],
    [1, 1, 1, 0, 1],
    [1, 1, 2, 1, 1],
    [1, 2, 0, 0, 1],
    [1, 2, 1, 1, 1],
    [1, 2, 2, 2, 1],
    [2, 0, 0, 2, 0],
    [2, 0, 1, 0, 1],
    [2, 0, 2, 1, 1],
    [2, 1, 0, 0, 1],
    [2, 1, 1, 1, 1],
    [2, 1, 2, 2, 1],
    [2, 2, 0, 1, 1],
    [2, 2, 1, 2, 1],
    [2, 2, 2, 0, 2],
];

const HALF_SUB_TABLE: [[Trit; 4]; 9] = [
    [0, 0, 0, 0],
    [0, 1, 2, 1],
    [0, 2, 1, 1],
    [1, 0, 1, 0],
    [1, 1, 0, 0],
    [1, 2, 2, 1],
    [2, 0, 2, 0],
    [2, 1, 1, 0],
    [2, 2, 0, 0],
];

const FULL_SUB_TABLE: [[Trit; 5]; 27] = [
    [0, 0, 0, 0, 0],
    [0, 0, 1, 2, 1],
    [0, 0, 2, 1, 1],
    [0, 1, 0, 2, 1],
    [0, 1, 1, 1, 1],
    [0, 1, 2, 0, 1],
    [0, 2, 0, 1, 1],
    [0, 2, 1, 0, 1],
    [0, 2, 2, 2, 2],
    [1, 0, 0, 1, 0],
    [1, 0, 1, 0, 0],
    [1, 0, 2, 2, 1],
    [1, 1, 0, 0, 0],
    [1, 1, 1, 2, 1],
    [1, 1, 2, 1, 1],
    [1, 2, 0, 2, 1],
    [1, 2, 1, 1, 1],
    [1, 2, 2, 0, 1],
    [2, 0, 0, 2, 0],
    [2, 0, 1, 1, 0],
    [2, 0, 2, 0, 0],
    [2, 1, 0, 1, 0],
    [2, 1, 1, 0, 0],
    [2, 1, 2, 2, 1],
    [2, 2, 0, 0, 0],
    [2, 2, 1, 2, 1],
    [2, 2, 2, 1, 1],
];

const TPPG_TABLE: [[Trit; 4]; 9] = [
    [0, 0, 0, 0],
    [1, 0, 0, 0],
    [2, 0, 0, 0],
    [0, 1, 0, 0],
    [1, 1, 1, 0],
    [2, 1, 2, 0],
    [0, 2, 0, 0],
    [1, 2, 2, 0],
    [2, 2, 1, 1],
];

const BLOCK1_TABLE: [[Trit; 5]; 18] = [
    [0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0],
    [2, 0, 0, 2, 0],
    [0, 1, 0, 1, 0],
    [1, 1, 0, 2, 0],
    [2, 1, 0, 0, 1],
    [0, 2, 0, 2, 0],
    [1, 2, 0, 0, 1],
    [2, 2, 0, 1, 1],
    [0, 0, 1, 1, 0],
    [1, 0, 1, 2, 0],
    [2, 0, 1, 0, 1],
    [0, 1, 1, 2, 0],
    [1, 1, 1, 0, 1],
    [2, 1, 1, 1, 1],
    [0, 2, 1, 0, 1],
    [1, 2, 1, 1, 1],
    [2, 2, 1, 2, 1],
];

const BLOCK2_TABLE: [[Trit; 5]; 12] = [
    [0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0],
    [2, 0, 0, 2, 0],
    [0, 1, 0, 1, 0],
    [1, 1, 0, 2, 0],
    [2, 1, 0, 0, 1],
    [0, 0, 1, 1, 0],
    [1, 0, 1, 2, 0],
    [2, 0, 1, 0, 1],
    [0, 1, 1, 2, 0],
    [1, 1, 1, 0, 1],
    [2, 1, 1, 1, 1],
];

const BLOCK3_TABLE: [[Trit; 5]; 8] = [
    [0, 0, 0, 0, 0],
    [1, 0, 0, 1, 0],
    [0, 1, 0, 1, 0],
    [1, 1, 0, 2, 0],
    [0, 0, 1, 1, 0],
    [1, 0, 1, 2, 0],
    [0, 1, 1, 2, 0],
    [1, 1, 1, 0, 1],
];

const BLOCK4_TABLE: [[Trit; 4]; 6] = [
    [0, 0, 0, 0],
    [1, 0, 1, 0],
    [2, 0, 2, 0],
    [0, 1, 1, 0],
    [1, 1, 2, 0],
    [2, 1, 0, 1],
];

fn table_from_rows(
    input_names: &[&str],
    output_names: &[&str],
    rows: impl Iterator<Item = (Vec<Trit>, Vec<Trit>)>,
) -> TruthTable {
    TruthTable {
        input_names: input_names.iter().map(|s| s.to_string()).collect(),
        output_names: output_names.iter().map(|s| s.to_string()).collect(),
        rows: rows.collect(),
    }
}

fn split_rows<const W: usize>(rows: &[[Trit; W]], n_in: usize) -> Vec<(Vec<Trit>, Vec<Trit>)> {
    rows.iter()
        .map(|r| (r[..n_in].to_vec(), r[n_in..].to_vec()))
        .collect()
}

/// The reference a blueprint is verified against: the embedded printed table
/// where one exists, the base-3 arithmetic identity otherwise.
pub fn expected_for(name: &str) -> Expected {
    match name {
        "half-adder" => Expected::Table(table_from_rows(
            &["A", "B"],
            &["S", "c_out"],
            split_rows(&HALF_ADDER_TABLE, 2).into_iter(),
        )),
        "full-adder" => Expected::Table(table_from_rows(
            &["A", "B", "C"],
            &["S", "c_out"],
            split_rows(&FULL_ADDER_TABLE, 3).into_iter(),
        )),
        "half-sub" => Expected::Table(table_from_rows(
            &["A", "B"],
            &["D", "b_out"],
            split_rows(&HALF_SUB_TABLE, 2).into_iter(),
        )),
        "full-sub" => Expected::Table(table_from_rows(
            &["A", "B", "C"],
            &["D", "b_out"],
            split_rows(&FULL_SUB_TABLE, 3).into_iter(),
        )),
        "tppg" => Expected::Table(table_from_rows(
            &["A", "B"],
            &["P", "cp"],
            split_rows(&TPPG_TABLE, 2).into_iter(),
        )),
        "block1" => Expected::Table(table_from_rows(
            &["A", "B", "c_in"],
            &["Sum", "c_out"],
            split_rows(&BLOCK1_TABLE, 3).into_iter(),
        )),
        "block2" => Expected::Table(table_from_rows(
            &["A", "B", "c_in"],
            &["Sum", "c_out"],
            split_rows(&BLOCK2_TABLE, 3).into_iter(),
        )),
        "block3" => Expected::Table(table_from_rows(
            &["A", "B", "c_in"],
            &["Sum", "c_out"],
            split_rows(&BLOCK3_TABLE, 3).into_iter(),
        )),
        "block4" => Expected::Table(table_from_rows(
            &["A", "c_in"],
            &["Sum", "c_out"],
            split_rows(&BLOCK4_TABLE, 2).into_iter(),
        )),
        "adder2" => Expected::Identity(|ins, outs| {
            // ins = [A0, B0, A1, B1]; outs = [S0, S1, c_out].
            let a = ins[0] as u32 + 3 * ins[2] as u32;
            let b = ins[1] as u32 + 3 * ins[3] as u32;
            let s = outs[0] as u32 + 3 * outs[1] as u32 + 9 * outs[2] as u32;
            a + b == s
        }),
        "multiplier" => Expected::Identity(|ins, outs| {
            // ins = [A0, B0, A1, B1]; outs = [P0, P1, P2, P3, c_out].
            let a = ins[0] as u32 + 3 * ins[2] as u32;
            let b = ins[1] as u32 + 3 * ins[3] as u32;
            let p = outs[0] as u32
                + 3 * outs[1] as u32
                + 9 * outs[2] as u32
                + 27 * outs[3] as u32
                + 81 * outs[4] as u32;
            a * b == p
        }),
        other => panic!("no expected data for '{other}'"),
    }
}

/// Names of blueprints backed by an embedded printed table.
pub fn tabled_blueprints() -> &'static [&'static str] {
    &[
        "half-adder",
        "full-adder",
        "half-sub",
        "full-sub",
        "tppg",
        "block1",
        "block2",
        "block3",
        "block4",
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn all_tables_reproduced_cell_for_cell() {
        for name in tabled_blueprints() {
            let bp = build_by_name(name).unwrap();
            let (matched, total, mismatches) = bp.verify().unwrap();
            assert_eq!(
                matched,
                total,
                "{name}: {} mismatches: {:?}",
                mismatches.len(),
                mismatches
            );
        }
    }

    #[test]
    fn half_adder_spot_checks() {
        let bp = build_half_adder();
        assert_eq!(bp.run(&[1, 2]).unwrap(), vec![0, 1]);
        assert_eq!(bp.run(&[0, 0]).unwrap(), vec![0, 0]);
        for a in 0..3u8 {
            for b in 0..3u8 {
                let out = bp.run(&[a, b]).unwrap();
                assert_eq!(out[0], (a + b) % 3);
                assert_eq!(out[1], (a + b) / 3);
            }
        }
    }

    #[test]
    fn half_adder_gate_count_claim() {
        let (clifford, non_clifford) = build_half_adder().gate_counts();
        assert_eq!(clifford, 1);
        assert_eq!(non_clifford, 3);
    }

    #[test]
    fn full_adder_oracle() {
        let bp = build_full_adder();
        assert_eq!(bp.run(&[0, 1, 2]).unwrap(), vec![0, 1]);
        assert_eq!(bp.run(&[2, 2, 2]).unwrap(), vec![0, 2]);
        for a in 0..3u8 {
            for b in 0..3u8 {
                for c in 0..3u8 {
                    let out = bp.run(&[a, b, c]).unwrap();
                    assert_eq!(out[0], (a + b + c) % 3);
                    assert_eq!(out[1], (a + b + c) / 3);
                }
            }
        }
    }

    #[test]
    fn subtractor_oracles() {
        let half = build_half_subtractor();
        assert_eq!(half.run(&[0, 1]).unwrap(), vec![2, 1]);
        assert_eq!(half.run(&[2, 2]).unwrap(), vec![0, 0]);
        for a in 0..3i32 {
            for b in 0..3i32 {
                let out = half.run(&[a as u8, b as u8]).unwrap();
                assert_eq!(out[0] as i32, (a - b).rem_euclid(3));
                assert_eq!(out[1], u8::from(a < b));
            }
        }
        let full = build_full_subtractor();
        assert_eq!(full.run(&[0, 2, 2]).unwrap(), vec![2, 2]);
        for a in 0..3i32 {
            for b in 0..3i32 {
                for c in 0..3i32 {
                    let out = full.run(&[a as u8, b as u8, c as u8]).unwrap();
                    assert_eq!(out[0] as i32, (a - b - c).rem_euclid(3), "{a} {b} {c}");
                    // Borrows needed so that a - b - c + 3*borrow lands in 0..3.
                    let borrow = (b + c - a + 2).div_euclid(3).max(0);
                    assert_eq!(out[1] as i32, borrow, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn tppg_oracle() {
        let bp = build_tppg();
        assert_eq!(bp.run(&[2, 2]).unwrap(), vec![1, 1]);
        for a in 0..3u8 {
            for b in 0..3u8 {
                let out = bp.run(&[a, b]).unwrap();
                assert_eq!(out[0], (a * b) % 3);
                assert_eq!(out[1], (a * b) / 3);
            }
        }
    }

    #[test]
    fn adder_blocks_match_sum_oracle_on_domains() {
        for n in 1..=4u8 {
            let bp = build_adder_block(n).unwrap();
            for ins in bp.domain() {
                let total: u8 = ins.iter().sum();
                let out = bp.run(&ins).unwrap();
                assert_eq!(out[0], total % 3, "block{n} {ins:?}");
                assert_eq!(out[1], total / 3, "block{n} {ins:?}");
            }
        }
        let b1 = build_adder_block(1).unwrap();
        assert_eq!(b1.run(&[2, 1, 0]).unwrap(), vec![0, 1]);
        let b4 = build_adder_block(4).unwrap();
        assert_eq!(b4.run(&[2, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn block_gate_count_claims() {
        let expect = [(1u8, 2usize, 4usize), (2, 2, 2), (3, 2, 1), (4, 1, 1)];
        for (n, clifford, non_clifford) in expect {
            let bp = build_adder_block(n).unwrap();
            assert_eq!(bp.gate_counts(), (clifford, non_clifford), "block{n}");
        }
    }

    #[test]
    fn two_qutrit_adder_identity() {
        let bp = build_two_qutrit_adder();
        // 8 + 8 = 16 = 121_3.
        assert_eq!(bp.run(&[2, 2, 2, 2]).unwrap(), vec![1, 2, 1]);
        assert_eq!(bp.run(&[0, 0, 0, 0]).unwrap(), vec![0, 0, 0]);
        let (matched, total, mismatches) = bp.verify().unwrap();
        assert_eq!(total, 81);
        assert_eq!(matched, 81, "{mismatches:?}");
    }

    #[test]
    fn multiplier_identity() {
        let bp = build_multiplier();
        // 8 * 8 = 64 = 2101_3.
        assert_eq!(bp.run(&[2, 2, 2, 2]).unwrap(), vec![1, 0, 1, 2, 0]);
        let (matched, total, mismatches) = bp.verify().unwrap();
        assert_eq!(total, 81);
        assert_eq!(matched, 81, "{mismatches:?}");
        // A = 0 annihilates, and c_out is identically zero.
        for ins in bp.domain() {
            let out = bp.run(&ins).unwrap();
            if ins[0] == 0 && ins[2] == 0 {
                assert_eq!(out[..4], [0, 0, 0, 0]);
            }
            assert_eq!(out[4], 0);
        }
    }

    #[test]
    fn blueprints_are_injective_over_their_domains() {
        for name in blueprint_names() {
            let bp = build_by_name(name).unwrap();
            let mut seen = HashSet::new();
            for ins in bp.domain() {
                let mut assignment = vec![0u8; bp.circuit.n_wires];
                for (&w, &v) in bp.input_wires.iter().zip(ins.iter()) {
                    assignment[w] = v;
                }
                for &(w, v) in &bp.constant_wires {
                    assignment[w] = v;
                }
                let finals = classical_outputs(&bp.circuit, &assignment).unwrap();
                assert!(
                    seen.insert(finals),
                    "{name}: two inputs map to the same full output"
                );
            }
        }
    }

    #[test]
    fn truth_table_csv_shape() {
        let bp = build_half_adder();
        let csv = bp.truth_table().unwrap().to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "A,B,S,c_out");
        assert_eq!(lines.next().unwrap(), "0,0,0,0");
        assert_eq!(csv.lines().count(), 10);
    }
}
