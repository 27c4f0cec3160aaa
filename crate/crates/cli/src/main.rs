//! Command-line front end: model verification, topological data dumps, braid
//! generators, gate synthesis, circuit simulation, arithmetic truth tables,
//! Kauffman brackets, and q-deformed coefficients.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde_json::{json, Value};

use anyonic::anyon_models::{model_by_name, verify_hexagon, verify_pentagon, verify_ribbon};
use anyonic::arithmetic;
use anyonic::circuit::{self, QutritCircuit, Trit};
use anyonic::error::Error;
use anyonic::fusion_space::{braid_generator, enumerate_basis};
use anyonic::kauffman::{bracket, jones, writhe, BraidWord};
use anyonic::matrix::{align_global_phase, Matrix, TOL};
use anyonic::metaplectic_gates::GateLibrary;
use anyonic::qdeform::{self, DeformationLevel, SpinLabel};
use anyonic::su2k::Su2kData;

/// All randomness flows through this default; no wall clock, no entropy.
const DEFAULT_SEED: u64 = 12345;

#[derive(Parser)]
#[command(
    name = "anyonic",
    version,
    about = "Topological ternary gates from metaplectic anyon braiding"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Pentagon/hexagon/ribbon residuals of a built-in anyon model.
    Verify {
        #[arg(long)]
        model: String,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Full SU(2)_k data block: dimensions, twists, S-matrix, fusion table.
    Data {
        #[arg(long)]
        level: u32,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Braid-group generator matrix on a fusion-tree basis.
    Braid {
        #[arg(long)]
        model: String,
        #[arg(long)]
        anyons: usize,
        #[arg(long)]
        total: String,
        #[arg(long)]
        generator: usize,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Synthesized gate matrix; --check reports the deviation from the
    /// reference after global-phase alignment.
    Synth {
        #[arg(long)]
        gate: String,
        #[arg(long)]
        check: bool,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Simulate a circuit JSON file from a basis state.
    Simulate {
        #[arg(short = 'c')]
        circuit: PathBuf,
        /// Input digits, e.g. "0 1 2"; defaults to all zeros.
        #[arg(long)]
        input: Option<String>,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// With N > 0, measure every wire over N shots and print counts.
        #[arg(long, default_value_t = 0)]
        shots: u64,
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Truth table of a named arithmetic circuit.
    TruthTable {
        name: String,
        /// Diff against the embedded reference; nonzero exit on mismatch.
        #[arg(long)]
        expected: bool,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// Kauffman bracket of a braid-word trace closure.
    Bracket {
        #[arg(long)]
        braid: String,
        #[arg(long)]
        strands: usize,
        #[arg(long, default_value = "csv")]
        format: String,
    },
    /// q-deformed coefficients; spin labels are doubled integers (2j).
    Coeff {
        /// One of: q-integer, q-factorial, q-delta, q-six-j, classical-six-j,
        /// admissible, fusion.
        kind: String,
        /// q-integer/q-factorial take n; the rest take doubled spins (2j).
        args: Vec<i64>,
        #[arg(long)]
        level: Option<u32>,
        #[arg(long, default_value = "json")]
        format: String,
    },
}

fn fmt_f(x: f64) -> String {
    format!("{x:.12}")
}

fn fmt_c(z: Complex64) -> String {
    format!("{:.12}{:+.12}i", z.re, z.im)
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|&z| complex_json(z)).collect()))
            .collect(),
    )
}

fn matrix_csv(m: &Matrix) -> String {
    m.rows()
        .iter()
        .map(|row| row.iter().map(|&z| fmt_c(z)).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("\n")
}

fn print_matrix(m: &Matrix, format: &str) {
    if format == "json" {
        println!("{}", matrix_json(m));
    } else {
        println!("{}", matrix_csv(m));
    }
}

fn usage_err(msg: String) -> Error {
    Error::Domain(msg)
}

fn parse_trits(text: &str) -> Result<Vec<Trit>, Error> {
    text.split_whitespace()
        .map(|tok| match tok {
            "0" => Ok(0),
            "1" => Ok(1),
            "2" => Ok(2),
            other => Err(Error::Parse(format!("'{other}' is not a trit"))),
        })
        .collect()
}

fn cmd_verify(model: &str, format: &str) -> Result<i32, Error> {
    let m = model_by_name(model)?;
    let pentagon = verify_pentagon(&m);
    let hexagon = verify_hexagon(&m);
    let ribbon = verify_ribbon(&m);
    let pass = pentagon < TOL && hexagon < TOL && ribbon < TOL;
    if format == "csv" {
        println!("check,residual");
        println!("pentagon,{}", fmt_f(pentagon));
        println!("hexagon,{}", fmt_f(hexagon));
        println!("ribbon,{}", fmt_f(ribbon));
        println!("pass,{pass}");
    } else {
        println!(
            "{}",
            json!({
                "model": m.name(),
                "pentagon": pentagon,
                "hexagon": hexagon,
                "ribbon": ribbon,
                "pass": pass,
            })
        );
    }
    Ok(if pass { 0 } else { 1 })
}

fn cmd_data(level: u32, format: &str) -> Result<i32, Error> {
    let su = Su2kData::new(level);
    let charges: Vec<String> = su.charges().iter().map(|c| c.to_string()).collect();
    let dims: Vec<f64> = su.charges().iter().map(|&j| su.quantum_dim(j)).collect();
    let twists: Vec<Complex64> = su.charges().iter().map(|&j| su.twist(j)).collect();
    if format == "csv" {
        println!("charge,dim,twist");
        for ((c, d), t) in charges.iter().zip(dims.iter()).zip(twists.iter()) {
            println!("{c},{},{}", fmt_f(*d), fmt_c(*t));
        }
        println!("total_dim,{}", fmt_f(su.total_dim()));
        println!("s_matrix");
        println!("{}", matrix_csv(&su.s_matrix()));
    } else {
        let mut fusion = serde_json::Map::new();
        for &a in su.charges() {
            for &b in su.charges() {
                let products: Vec<String> = su
                    .fusion_products(a, b)?
                    .iter()
                    .map(|c| c.to_string())
                    .collect();
                fusion.insert(format!("{a} x {b}"), json!(products));
            }
        }
        println!(
            "{}",
            json!({
                "level": level,
                "charges": charges,
                "dims": dims,
                "twists": twists.iter().map(|&t| complex_json(t)).collect::<Vec<_>>(),
                "total_dim": su.total_dim(),
                "s_matrix": matrix_json(&su.s_matrix()),
                "fusion": Value::Object(fusion),
            })
        );
    }
    Ok(0)
}

fn cmd_simulate(
    path: &PathBuf,
    input: Option<String>,
    seed: u64,
    shots: u64,
    format: &str,
) -> Result<i32, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_err(format!("cannot read {}: {e}", path.display())))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    let circuit = QutritCircuit::from_json(&value)?;
    let input = match input {
        Some(text) => parse_trits(&text)?,
        None => vec![0; circuit.n_wires],
    };
    if shots == 0 {
        let out = circuit::simulate(&circuit, &input, seed)?;
        let mut entries: Vec<(String, Complex64)> = Vec::new();
        for (idx, amp) in out.state.amplitudes().iter().enumerate() {
            if amp.norm_sqr() > 1e-24 {
                let digits = circuit::index_to_digits(idx, circuit.n_wires);
                entries.push((digits.iter().map(|d| d.to_string()).collect(), *amp));
            }
        }
        if format == "csv" {
            println!("basis,amplitude");
            for (label, amp) in &entries {
                println!("{label},{}", fmt_c(*amp));
            }
        } else {
            let mut map = serde_json::Map::new();
            for (label, amp) in &entries {
                map.insert(label.clone(), complex_json(*amp));
            }
            println!(
                "{}",
                json!({"seed": seed, "amplitudes": Value::Object(map),
                       "measurements": out.transcript})
            );
        }
    } else {
        let mut full_gates = circuit.gates.clone();
        for w in 0..circuit.n_wires {
            full_gates.push(circuit::GateKind::Measure { wire: w });
        }
        let full = QutritCircuit::new(circuit.n_wires, full_gates)?;
        let mut counts = std::collections::BTreeMap::new();
        for shot in 0..shots {
            let out = circuit::simulate(&full, &input, seed.wrapping_add(shot))?;
            let tail = out.transcript.len() - circuit.n_wires;
            let key: String = out.transcript[tail..]
                .iter()
                .map(|(_, o)| o.to_string())
                .collect();
            *counts.entry(key).or_insert(0u64) += 1;
        }
        if format == "csv" {
            println!("outcome,count");
            for (k, v) in &counts {
                println!("{k},{v}");
            }
        } else {
            println!(
                "{}",
                json!({"seed": seed, "shots": shots, "counts": counts})
            );
        }
    }
    Ok(0)
}

fn cmd_coeff(kind: &str, args: &[i64], level: Option<u32>, format: &str) -> Result<i32, Error> {
    let need_level = || {
        level
            .map(DeformationLevel::new)
            .ok_or_else(|| usage_err("--level is required for q-deformed values".into()))
    };
    let spin = |x: i64| -> Result<SpinLabel, Error> {
        u32::try_from(x)
            .map(SpinLabel::from_twice)
            .map_err(|_| usage_err(format!("label {x} is not a doubled spin")))
    };
    let want = |n: usize| -> Result<(), Error> {
        if args.len() == n {
            Ok(())
        } else {
            Err(usage_err(format!(
                "'{kind}' takes {n} argument(s), got {}",
                args.len()
            )))
        }
    };
    let result: Value = match kind {
        "q-integer" => {
            want(1)?;
            complex_json(qdeform::q_integer(args[0], &need_level()?))
        }
        "q-factorial" => {
            want(1)?;
            complex_json(qdeform::q_factorial(args[0], &need_level()?)?)
        }
        "q-delta" => {
            want(3)?;
            complex_json(qdeform::q_delta(
                spin(args[0])?,
                spin(args[1])?,
                spin(args[2])?,
                &need_level()?,
            )?)
        }
        "q-six-j" => {
            want(6)?;
            complex_json(qdeform::q_six_j(
                spin(args[0])?,
                spin(args[1])?,
                spin(args[2])?,
                spin(args[3])?,
                spin(args[4])?,
                spin(args[5])?,
                &need_level()?,
            ))
        }
        "classical-six-j" => {
            want(6)?;
            json!(qdeform::classical_six_j(
                spin(args[0])?,
                spin(args[1])?,
                spin(args[2])?,
                spin(args[3])?,
                spin(args[4])?,
                spin(args[5])?,
            ))
        }
        "admissible" => {
            want(3)?;
            json!(qdeform::admissible(
                spin(args[0])?,
                spin(args[1])?,
                spin(args[2])?,
                &need_level()?,
            ))
        }
        "fusion" => {
            want(2)?;
            let su = Su2kData::new(need_level()?.k());
            json!(su
                .fusion_products(spin(args[0])?, spin(args[1])?)?
                .iter()
                .map(|c| c.to_string())
                .collect::<Vec<_>>())
        }
        other => return Err(usage_err(format!("unknown coefficient kind '{other}'"))),
    };
    if format == "csv" {
        match &result {
            Value::Array(items) if items.len() == 2 && items[0].is_f64() => {
                println!(
                    "{}",
                    fmt_c(Complex64::new(
                        items[0].as_f64().unwrap(),
                        items[1].as_f64().unwrap()
                    ))
                );
            }
            other => println!("{other}"),
        }
    } else {
        println!("{}", json!({"kind": kind, "value": result}));
    }
    Ok(0)
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.cmd {
        Cmd::Verify { model, format } => cmd_verify(&model, &format),
        Cmd::Data { level, format } => cmd_data(level, &format),
        Cmd::Braid {
            model,
            anyons,
            total,
            generator,
            format,
        } => {
            let m = model_by_name(&model)?;
            let leaf_name = match model.as_str() {
                "fibonacci" => "tau",
                "ising" => "sigma",
                _ => "X",
            };
            let leaf = m.label_by_name(leaf_name).unwrap();
            let total = m
                .label_by_name(&total)
                .ok_or_else(|| usage_err(format!("unknown label '{total}'")))?;
            let basis = enumerate_basis(&m, leaf, anyons, total)?;
            let g = braid_generator(&m, &basis, generator)?;
            print_matrix(&g, &format);
            Ok(0)
        }
        Cmd::Synth {
            gate,
            check,
            format,
        } => {
            let lib = GateLibrary::build()?;
            let (computed, reference) = lib.gate_and_reference(&gate)?;
            print_matrix(&computed, &format);
            if check {
                let (aligned, phase) = align_global_phase(&computed, &reference);
                let deviation = aligned.max_abs_diff(&reference);
                if format == "json" {
                    println!(
                        "{}",
                        json!({"gate": gate, "deviation": deviation,
                               "phase": complex_json(phase)})
                    );
                } else {
                    println!("deviation,{}", fmt_f(deviation));
                    println!("phase,{}", fmt_c(phase));
                }
                return Ok(if deviation < TOL { 0 } else { 1 });
            }
            Ok(0)
        }
        Cmd::Simulate {
            circuit,
            input,
            seed,
            shots,
            format,
        } => cmd_simulate(&circuit, input, seed, shots, &format),
        Cmd::TruthTable {
            name,
            expected,
            format,
        } => {
            let bp = arithmetic::build_by_name(&name)?;
            let table = bp.truth_table()?;
            if format == "json" {
                let rows: Vec<Value> = table
                    .rows
                    .iter()
                    .map(|(i, o)| json!({"inputs": i, "outputs": o}))
                    .collect();
                println!(
                    "{}",
                    json!({"name": name, "inputs": table.input_names,
                           "outputs": table.output_names, "rows": rows})
                );
            } else {
                print!("{}", table.to_csv());
            }
            if expected {
                let (matched, total, mismatches) = bp.verify()?;
                println!("{matched}/{total} rows match");
                for m in &mismatches {
                    eprintln!("mismatch: {m}");
                }
                return Ok(if mismatches.is_empty() { 0 } else { 1 });
            }
            Ok(0)
        }
        Cmd::Bracket {
            braid,
            strands,
            format,
        } => {
            let word = BraidWord::parse(strands, &braid)?;
            let b = bracket(&word)?;
            if format == "json" {
                let v = jones(&word)?;
                println!(
                    "{}",
                    json!({
                        "bracket": b.to_string(),
                        "writhe": writhe(&word),
                        "jones": v.to_string(),
                        "terms": b.terms(),
                    })
                );
            } else {
                println!("{b}");
            }
            Ok(0)
        }
        Cmd::Coeff {
            kind,
            args,
            level,
            format,
        } => cmd_coeff(&kind, &args, level, &format),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
