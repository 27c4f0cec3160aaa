//! One- and two-qutrit gates synthesized from metaplectic braid generators,
//! verified against their reference matrices.
//!
//! One-qutrit gates live on the basis {-|YY>, |1Y>, |Y1>} of four X anyons
//! with total charge Y (the minus sign is a basis-vector weight). Two-qutrit
//! gates live on the nine-dimensional c14 = c58 = Y subspace of eight X
//! anyons, ordered first-qutrit major.

use num_complex::Complex64;

use crate::anyon_models::{metaplectic_model, AnyonModel, Label};
use crate::error::{Error, Result};
use crate::fusion_space::{braid_generator, shaped_basis, FusionBasis, TreeShape};
use crate::matrix::{align_global_phase, Matrix, TOL};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn omega() -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0)
}

fn gamma() -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::PI / 12.0)
}

/// Reference matrices for the synthesized gates.
pub mod reference {
    use super::*;

    pub fn sigma1() -> Matrix {
        let w = omega();
        Matrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), w, c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
        ])
        .scale(gamma())
    }

    pub fn sigma3() -> Matrix {
        let w = omega();
        Matrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), w],
        ])
        .scale(gamma())
    }

    pub fn sigma2() -> Matrix {
        let w = omega();
        let one = c(1.0, 0.0);
        let g3 = gamma().powu(3);
        Matrix::from_rows(&[vec![one, w, w], vec![w, one, w], vec![w, w, one]])
            .scale(g3 / c(3f64.sqrt(), 0.0))
    }

    /// Z = diag(1, omega, omega^2).
    pub fn z_phase() -> Matrix {
        let w = omega();
        Matrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)],
            vec![c(0.0, 0.0), w, c(0.0, 0.0)],
            vec![c(0.0, 0.0), c(0.0, 0.0), w * w],
        ])
    }

    /// `H = (1/(sqrt(3) i)) [[1,1,1],[1,w,w^2],[1,w^2,w]]`.
    pub fn hadamard() -> Matrix {
        let w = omega();
        let one = c(1.0, 0.0);
        let s = c(0.0, -1.0 / 3f64.sqrt());
        Matrix::from_rows(&[
            vec![one, one, one],
            vec![one, w, w * w],
            vec![one, w * w, w],
        ])
        .scale(s)
    }

    pub fn shift1() -> Matrix {
        Matrix::from_int_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 0]])
    }

    pub fn shift2() -> Matrix {
        Matrix::from_int_rows(&[vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])
    }

    pub fn perm01() -> Matrix {
        Matrix::from_int_rows(&[vec![0, 1, 0], vec![1, 0, 0], vec![0, 0, 1]])
    }

    pub fn perm12() -> Matrix {
        Matrix::from_int_rows(&[vec![1, 0, 0], vec![0, 0, 1], vec![0, 1, 0]])
    }

    pub fn perm02() -> Matrix {
        Matrix::from_int_rows(&[vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]])
    }

    /// Controlled-Z: diag over |i,j> of omega^{ij}.
    pub fn lambda_z() -> Matrix {
        let w = omega();
        let mut m = Matrix::zeros(9);
        for i in 0..3u32 {
            for j in 0..3u32 {
                m[((3 * i + j) as usize, (3 * i + j) as usize)] = w.powu(i * j);
            }
        }
        m
    }

    /// SUM1 = diag(I, X, X^2) in first-qutrit-major blocks.
    pub fn sum1() -> Matrix {
        let mut m = Matrix::zeros(9);
        for i in 0..3usize {
            for j in 0..3usize {
                // |i, j> -> |i, j + i mod 3|
                m[(3 * i + (j + i) % 3, 3 * i + j)] = c(1.0, 0.0);
            }
        }
        m
    }

    /// SUM2 = diag(I, X^2, X).
    pub fn sum2() -> Matrix {
        let mut m = Matrix::zeros(9);
        for i in 0..3usize {
            for j in 0..3usize {
                m[(3 * i + (j + 2 * i) % 3, 3 * i + j)] = c(1.0, 0.0);
            }
        }
        m
    }

    /// SUM with control on the second qutrit: |i, j> -> |i + j, j>.
    pub fn sum21() -> Matrix {
        let mut m = Matrix::zeros(9);
        for i in 0..3usize {
            for j in 0..3usize {
                m[(3 * ((i + j) % 3) + j, 3 * i + j)] = c(1.0, 0.0);
            }
        }
        m
    }

    /// SWAP: |i, j> -> |j, i>.
    pub fn swap() -> Matrix {
        let mut m = Matrix::zeros(9);
        for i in 0..3usize {
            for j in 0..3usize {
                m[(3 * j + i, 3 * i + j)] = c(1.0, 0.0);
            }
        }
        m
    }
}

/// How far a synthesized gate sits from its reference after global-phase
/// alignment, together with the phase that was applied.
#[derive(Debug, Clone)]
pub struct GateReport {
    pub name: String,
    pub phase: Complex64,
    pub deviation: f64,
}

pub struct OneQutritGates {
    /// Braid generators sigma_1..3 on the computational basis, exact phases.
    pub sigma: [Matrix; 3],
    /// gamma-stripped words with p^2 = -Z3(01), q^2 = -Z3(02), H = q^2 p q^2.
    pub p: Matrix,
    pub q: Matrix,
    pub z_phase: Matrix,
    pub hadamard: Matrix,
    pub shift1: Matrix,
    pub shift2: Matrix,
    pub perm01: Matrix,
    pub perm12: Matrix,
    pub perm02: Matrix,
    pub reports: Vec<GateReport>,
}

pub struct TwoQutritGates {
    /// sigma_1..7 on the 27-dimensional basis of eight X anyons, total Y.
    pub sigma: [Matrix; 7],
    /// Composite four-strand braids s1, s2, s3 (27-dimensional).
    pub s: [Matrix; 3],
    /// Map from the 9 computational states (first-qutrit major) to positions
    /// in the 27-dimensional fusion basis.
    pub subspace_index: [usize; 9],
    /// 9-dimensional restrictions, phase-aligned to their references.
    pub lambda_z: Matrix,
    pub sum1: Matrix,
    pub sum2: Matrix,
    pub sum21: Matrix,
    pub swap: Matrix,
    /// Raw (unaligned) 9-dimensional restriction of the Lambda(Z) braid word.
    pub lambda_z_raw: Matrix,
    pub reports: Vec<GateReport>,
    embedding: Matrix27x9,
}

/// 27x9 embedding of the computational subspace, carrying the -|YY> weights.
pub struct Matrix27x9 {
    cols: Vec<Vec<Complex64>>,
}

impl Matrix27x9 {
    /// E^dagger M E, failing if M does not preserve the subspace.
    pub fn restrict(&self, m: &Matrix, what: &str) -> Result<Matrix> {
        assert_eq!(m.dim(), 27);
        let mut out = Matrix::zeros(9);
        for (j, col) in self.cols.iter().enumerate() {
            let image = m.apply(col);
            // Project onto the subspace and measure what is left outside.
            let mut coeffs = [Complex64::new(0.0, 0.0); 9];
            let mut inside = vec![Complex64::new(0.0, 0.0); 27];
            for (i, basis_col) in self.cols.iter().enumerate() {
                let amp: Complex64 = basis_col
                    .iter()
                    .zip(image.iter())
                    .map(|(b, v)| b.conj() * v)
                    .sum();
                coeffs[i] = amp;
                for (x, b) in inside.iter_mut().zip(basis_col.iter()) {
                    *x += amp * b;
                }
            }
            let leak: f64 = image
                .iter()
                .zip(inside.iter())
                .map(|(v, w)| (v - w).norm_sqr())
                .sum::<f64>()
                .sqrt();
            if leak >= TOL {
                return Err(Error::Integrity(format!(
                    "{what} leaks {leak:.3e} out of the computational subspace on state {j}"
                )));
            }
            for i in 0..9 {
                out[(i, j)] = coeffs[i];
            }
        }
        Ok(out)
    }
}

fn metaplectic_labels(model: &AnyonModel) -> Result<(Label, Label, Label)> {
    match (
        model.label_by_name("X"),
        model.label_by_name("Y"),
        model.label_by_name("1"),
    ) {
        (Some(x), Some(y), Some(one)) if model.label_count() == 5 => Ok((x, y, one)),
        _ => Err(Error::Domain(
            "gate synthesis requires the metaplectic model".into(),
        )),
    }
}

/// State order (-|YY>, |1Y>, |Y1>) as (position in the shaped basis, weight).
fn computational_state_order(
    basis: &FusionBasis,
    one: Label,
    y: Label,
) -> Result<Vec<(usize, Complex64)>> {
    let states = [
        (vec![y, y], c(-1.0, 0.0)),
        (vec![one, y], c(1.0, 0.0)),
        (vec![y, one], c(1.0, 0.0)),
    ];
    states
        .iter()
        .map(|(ints, w)| {
            basis
                .position(ints)
                .map(|p| (p, *w))
                .ok_or_else(|| Error::Integrity("missing pair-tree state".into()))
        })
        .collect()
}

pub fn build_one_qutrit_library(model: &AnyonModel) -> Result<OneQutritGates> {
    let (x, y, one) = metaplectic_labels(model)?;
    let basis = shaped_basis(model, TreeShape::pair_tree(), x, y)?;
    let order = computational_state_order(&basis, one, y)?;

    // W columns: computational basis vectors in shaped-basis coordinates.
    let mut w = Matrix::zeros(3);
    for (i, &(pos, weight)) in order.iter().enumerate() {
        w[(pos, i)] = weight;
    }
    let wdag = w.adjoint();

    let mut sigma = Vec::new();
    for i in 1..=3 {
        let g = braid_generator(model, &basis, i)?;
        sigma.push(wdag.mul(&g).mul(&w));
    }
    let sigma: [Matrix; 3] = sigma.try_into().unwrap();

    let inv_gamma = c(1.0, 0.0) / gamma();
    let stripped: Vec<Matrix> = sigma.iter().map(|s| s.scale(inv_gamma)).collect();
    // p and q are the gamma-stripped three-letter words whose squares are the
    // negated 01 and 02 permutations; p takes the outer generators 2,3 and q
    // the inner 1,2 so that p^2 = -Z3(01) and q^2 = -Z3(02) hold as matrices.
    let p = stripped[1].mul(&stripped[2]).mul(&stripped[1]);
    let q = stripped[0].mul(&stripped[1]).mul(&stripped[0]);
    let q2 = q.mul(&q);
    let h_raw = q2.mul(&p).mul(&q2);
    // Z = sigma1 sigma3^{-1}; the gamma factors cancel.
    let z_raw = sigma[0].mul(&sigma[2].inverse()?);

    let mut reports = Vec::new();
    let mut align = |name: &str, computed: &Matrix, reference: &Matrix| -> Matrix {
        let (aligned, phase) = align_global_phase(computed, reference);
        reports.push(GateReport {
            name: name.into(),
            phase,
            deviation: aligned.max_abs_diff(reference),
        });
        aligned
    };

    let z_phase = align("z", &z_raw, &reference::z_phase());
    let hadamard = align("hadamard", &h_raw, &reference::hadamard());
    // Increment gates by Clifford conjugation: H Z^dagger H^dagger and H Z H^dagger.
    let shift1_raw = h_raw.mul(&z_raw.adjoint()).mul(&h_raw.adjoint());
    let shift2_raw = h_raw.mul(&z_raw).mul(&h_raw.adjoint());
    let shift1 = align("shift1", &shift1_raw, &reference::shift1());
    let shift2 = align("shift2", &shift2_raw, &reference::shift2());
    // Permutations: p^2 = -Z3(01), q^2 = -Z3(02), (q^2 p q^2)^2 = -Z3(12).
    let perm01 = align(
        "perm01",
        &p.mul(&p).scale(c(-1.0, 0.0)),
        &reference::perm01(),
    );
    let perm02 = align("perm02", &q2.scale(c(-1.0, 0.0)), &reference::perm02());
    let perm12 = align(
        "perm12",
        &h_raw.mul(&h_raw).scale(c(-1.0, 0.0)),
        &reference::perm12(),
    );
    for (name, computed, reference) in [
        ("sigma1", &sigma[0], reference::sigma1()),
        ("sigma2", &sigma[1], reference::sigma2()),
        ("sigma3", &sigma[2], reference::sigma3()),
    ] {
        let (aligned, phase) = align_global_phase(computed, &reference);
        reports.push(GateReport {
            name: name.into(),
            phase,
            deviation: aligned.max_abs_diff(&reference),
        });
    }

    Ok(OneQutritGates {
        sigma,
        p,
        q,
        z_phase,
        hadamard,
        shift1,
        shift2,
        perm01,
        perm12,
        perm02,
        reports,
    })
}

pub fn build_two_qutrit_library(model: &AnyonModel) -> Result<TwoQutritGates> {
    let (x, y, one) = metaplectic_labels(model)?;
    let basis = shaped_basis(model, TreeShape::double_pair_tree(), x, y)?;
    if basis.dim() != 27 {
        return Err(Error::Integrity(format!(
            "two-qutrit basis has dimension {}, expected 27",
            basis.dim()
        )));
    }

    let mut sigma = Vec::new();
    for i in 1..=7 {
        sigma.push(braid_generator(model, &basis, i)?.into_matrix());
    }
    let sigma: [Matrix; 7] = sigma.try_into().unwrap();

    let word = |idx: [usize; 4]| -> Matrix {
        sigma[idx[0] - 1]
            .mul(&sigma[idx[1] - 1])
            .mul(&sigma[idx[2] - 1])
            .mul(&sigma[idx[3] - 1])
    };
    let s1 = word([2, 1, 3, 2]);
    let s2 = word([4, 3, 5, 4]);
    let s3 = word([6, 5, 7, 6]);

    let s2sq = s2.mul(&s2);
    let lambda27 = s1
        .inverse()?
        .mul(&s2sq)
        .mul(&s1)
        .mul(&s3.inverse()?)
        .mul(&s2sq)
        .mul(&s3);

    // Embedding of |i,j> (first-qutrit major) with the -|YY> weights on each
    // qutrit factor.
    let pair_states = [
        (vec![y, y], c(-1.0, 0.0)),
        (vec![one, y], c(1.0, 0.0)),
        (vec![y, one], c(1.0, 0.0)),
    ];
    let mut subspace_index = [0usize; 9];
    let mut cols = Vec::new();
    for i in 0..3usize {
        for j in 0..3usize {
            let (c12, c34) = (pair_states[i].0[0], pair_states[i].0[1]);
            let (c56, c78) = (pair_states[j].0[0], pair_states[j].0[1]);
            let ints = vec![c12, c34, y, c56, c78, y];
            let pos = basis
                .position(&ints)
                .ok_or_else(|| Error::Integrity("missing two-qutrit basis state".into()))?;
            subspace_index[3 * i + j] = pos;
            let mut col = vec![c(0.0, 0.0); 27];
            col[pos] = pair_states[i].1 * pair_states[j].1;
            cols.push(col);
        }
    }
    let embedding = Matrix27x9 { cols };

    let lambda_z_raw = embedding.restrict(&lambda27, "Lambda(Z)")?;

    let one_qutrit = build_one_qutrit_library(model)?;
    let h = &one_qutrit.hadamard;
    let i3 = Matrix::identity(3);
    let ih = i3.kron(h);
    let hi = h.kron(&i3);

    // SUM1 = (I x H^{-1}) Lambda(Z) (I x H): conjugation turns the Z^i blocks
    // of the controlled-Z into X^i. SUM2 uses the inverse braid word.
    let sum1_raw = ih.adjoint().mul(&lambda_z_raw).mul(&ih);
    let lambda_inv = lambda_z_raw.inverse()?;
    let sum2_raw = ih.adjoint().mul(&lambda_inv).mul(&ih);
    let sum21_raw = hi.adjoint().mul(&lambda_z_raw).mul(&hi);

    let mut reports = Vec::new();
    let mut align = |name: &str, computed: &Matrix, reference: &Matrix| -> Matrix {
        let (aligned, phase) = align_global_phase(computed, reference);
        reports.push(GateReport {
            name: name.into(),
            phase,
            deviation: aligned.max_abs_diff(reference),
        });
        aligned
    };

    let lambda_z = align("lambda-z", &lambda_z_raw, &reference::lambda_z());
    let sum1 = align("sum", &sum1_raw, &reference::sum1());
    let sum2 = align("sum2", &sum2_raw, &reference::sum2());
    let sum21 = align("sum21", &sum21_raw, &reference::sum21());

    // SWAP = (Z3(12) x I) SUM_{1,2} SUM_{2,1} SUM_{2,1} SUM_{1,2}.
    let swap_raw = one_qutrit
        .perm12
        .kron(&i3)
        .mul(&sum1)
        .mul(&sum21)
        .mul(&sum21)
        .mul(&sum1);
    let swap = align("swap", &swap_raw, &reference::swap());

    Ok(TwoQutritGates {
        sigma,
        s: [s1, s2, s3],
        subspace_index,
        lambda_z,
        sum1,
        sum2,
        sum21,
        swap,
        lambda_z_raw,
        reports,
        embedding,
    })
}

/// The SWAP composite alone: (Z3(12) x I) SUM_{1,2} SUM_{2,1} SUM_{2,1}
/// SUM_{1,2}, mapping |i,j> to |j,i> up to global phase.
pub fn build_swap(model: &AnyonModel) -> Result<Matrix> {
    Ok(build_two_qutrit_library(model)?.swap)
}

/// The full synthesized gate set for the metaplectic model.
pub struct GateLibrary {
    pub one: OneQutritGates,
    pub two: TwoQutritGates,
}

impl GateLibrary {
    pub fn build() -> Result<GateLibrary> {
        let model = metaplectic_model();
        Ok(GateLibrary {
            one: build_one_qutrit_library(&model)?,
            two: build_two_qutrit_library(&model)?,
        })
    }

    pub fn reports(&self) -> impl Iterator<Item = &GateReport> {
        self.one.reports.iter().chain(self.two.reports.iter())
    }

    /// Synthesized gate by CLI name, with its reference.
    pub fn gate_and_reference(&self, name: &str) -> Result<(Matrix, Matrix)> {
        let pair = match name {
            "sigma1" => (self.one.sigma[0].clone(), reference::sigma1()),
            "sigma2" => (self.one.sigma[1].clone(), reference::sigma2()),
            "sigma3" => (self.one.sigma[2].clone(), reference::sigma3()),
            "z" => (self.one.z_phase.clone(), reference::z_phase()),
            "hadamard" => (self.one.hadamard.clone(), reference::hadamard()),
            "shift1" => (self.one.shift1.clone(), reference::shift1()),
            "shift2" => (self.one.shift2.clone(), reference::shift2()),
            "perm01" => (self.one.perm01.clone(), reference::perm01()),
            "perm12" => (self.one.perm12.clone(), reference::perm12()),
            "perm02" => (self.one.perm02.clone(), reference::perm02()),
            "lambda-z" => (self.two.lambda_z.clone(), reference::lambda_z()),
            "sum" | "sum1" => (self.two.sum1.clone(), reference::sum1()),
            "sum2" => (self.two.sum2.clone(), reference::sum2()),
            "sum21" => (self.two.sum21.clone(), reference::sum21()),
            "swap" => (self.two.swap.clone(), reference::swap()),
            other => return Err(Error::Domain(format!("unknown gate '{other}'"))),
        };
        Ok(pair)
    }

    pub fn gate_names() -> &'static [&'static str] {
        &[
            "sigma1", "sigma2", "sigma3", "z", "hadamard", "shift1", "shift2", "perm01", "perm12",
            "perm02", "lambda-z", "sum", "sum2", "sum21", "swap",
        ]
    }

    pub fn restrict27(&self, m: &Matrix, what: &str) -> Result<Matrix> {
        self.two.embedding.restrict(m, what)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_qutrit_sigmas_match_printed_matrices() {
        let model = metaplectic_model();
        let lib = build_one_qutrit_library(&model).unwrap();
        assert!(
            lib.sigma[0].max_abs_diff(&reference::sigma1()) < TOL,
            "sigma1:\n{:?}",
            lib.sigma[0]
        );
        assert!(
            lib.sigma[1].max_abs_diff(&reference::sigma2()) < TOL,
            "sigma2:\n{:?}",
            lib.sigma[1]
        );
        assert!(
            lib.sigma[2].max_abs_diff(&reference::sigma3()) < TOL,
            "sigma3:\n{:?}",
            lib.sigma[2]
        );
    }

    #[test]
    fn permutation_words_match_printed_matrices() {
        let model = metaplectic_model();
        let lib = build_one_qutrit_library(&model).unwrap();
        let p2 = lib.p.mul(&lib.p);
        assert!(
            p2.max_abs_diff(&reference::perm01().scale(c(-1.0, 0.0))) < TOL,
            "{p2:?}"
        );
        let q2 = lib.q.mul(&lib.q);
        assert!(
            q2.max_abs_diff(&reference::perm02().scale(c(-1.0, 0.0))) < TOL,
            "{q2:?}"
        );
        // H = q^2 p q^2 from the stripped words.
        let h = q2.mul(&lib.p).mul(&q2);
        assert!(h.max_abs_diff(&reference::hadamard()) < TOL, "{h:?}");
        let h2 = lib.hadamard.mul(&lib.hadamard);
        assert!(
            h2.max_abs_diff(&reference::perm12().scale(c(-1.0, 0.0))) < TOL,
            "{h2:?}"
        );
        for r in &lib.reports {
            assert!(r.deviation < TOL, "{} deviates by {}", r.name, r.deviation);
        }
    }

    #[test]
    fn hadamard_and_z_values() {
        let model = metaplectic_model();
        let lib = build_one_qutrit_library(&model).unwrap();
        assert!(lib.z_phase.max_abs_diff(&reference::z_phase()) < TOL);
        assert!(lib.hadamard.max_abs_diff(&reference::hadamard()) < TOL);
        // H^4 = I up to global phase.
        let h4 = lib.hadamard.pow(4);
        let (aligned, _) = align_global_phase(&h4, &Matrix::identity(3));
        assert!(aligned.max_abs_diff(&Matrix::identity(3)) < TOL);
    }

    #[test]
    fn two_qutrit_gates_match_references() {
        let lib = GateLibrary::build().unwrap();
        for r in lib.reports() {
            assert!(
                r.deviation < TOL,
                "{} deviates by {:.3e}",
                r.name,
                r.deviation
            );
        }
        // SUM2 = SUM1^2 exactly as matrices.
        let sq = lib.two.sum1.mul(&lib.two.sum1);
        assert!(sq.max_abs_diff(&lib.two.sum2) < TOL);
    }

    #[test]
    fn swap_permutes_all_basis_pairs() {
        let lib = GateLibrary::build().unwrap();
        let standalone = build_swap(&metaplectic_model()).unwrap();
        assert!(standalone.max_abs_diff(&lib.two.swap) < TOL);
        for i in 0..3usize {
            for j in 0..3usize {
                let mut v = vec![c(0.0, 0.0); 9];
                v[3 * i + j] = c(1.0, 0.0);
                let out = lib.two.swap.apply(&v);
                for (idx, amp) in out.iter().enumerate() {
                    let expect = if idx == 3 * j + i { 1.0 } else { 0.0 };
                    assert!((amp.norm() - expect).abs() < TOL);
                }
            }
        }
        // SWAP^2 = I up to global phase.
        let sq = lib.two.swap.mul(&lib.two.swap);
        let (aligned, _) = align_global_phase(&sq, &Matrix::identity(9));
        assert!(aligned.max_abs_diff(&Matrix::identity(9)) < TOL);
    }

    #[test]
    fn single_crossing_generator_leaks_subspace() {
        // sigma_4 braids across the two qutrit groups and must be rejected by
        // the restriction, while the full Lambda(Z) word is closed.
        let lib = GateLibrary::build().unwrap();
        let err = lib.restrict27(&lib.two.sigma[3], "sigma4");
        assert!(err.is_err());
    }

    #[test]
    fn lambda_z_is_controlled_z_up_to_phase() {
        let lib = GateLibrary::build().unwrap();
        assert!(lib.two.lambda_z.max_abs_diff(&reference::lambda_z()) < TOL);
        // The raw restriction is diagonal.
        for i in 0..9 {
            for j in 0..9 {
                if i != j {
                    assert!(lib.two.lambda_z_raw[(i, j)].norm() < TOL);
                }
            }
        }
    }

    #[test]
    fn libraries_reject_other_models() {
        let fib = crate::anyon_models::fibonacci_model();
        assert!(build_one_qutrit_library(&fib).is_err());
    }
}
