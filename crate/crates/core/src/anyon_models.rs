//! Uniform anyon-model abstraction (labels, duals, fusion table, F/R tensors,
//! dimensions, twists) with built-in Fibonacci, Ising, and metaplectic
//! (SU(2)_4) instances, plus model-wide consistency verification.

use std::collections::{BTreeSet, HashMap};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qdeform::SpinLabel;
use crate::su2k::Su2kData;

/// Index into a model's label list. Label 0 is always the vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub usize);

type FKey = (Label, Label, Label, Label, Label, Label);
type RKey = (Label, Label, Label);

pub struct AnyonModel {
    name: String,
    labels: Vec<String>,
    dual: Vec<Label>,
    fusion: BTreeSet<(Label, Label, Label)>,
    f_tensor: HashMap<FKey, Complex64>,
    r_tensor: HashMap<RKey, Complex64>,
    dims: Vec<f64>,
    twists: Vec<Complex64>,
}

impl AnyonModel {
    /// Builds a model and checks the structural invariants: commutative
    /// multiplicity-free fusion, vacuum behavior, dual pairing, and the
    /// quantum-dimension consistency d_a d_b = sum_c N_ab^c d_c.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        labels: Vec<String>,
        dual: Vec<Label>,
        fusion: BTreeSet<(Label, Label, Label)>,
        f_tensor: HashMap<FKey, Complex64>,
        r_tensor: HashMap<RKey, Complex64>,
        dims: Vec<f64>,
        twists: Vec<Complex64>,
    ) -> Result<Self> {
        let model = Self {
            name: name.to_string(),
            labels,
            dual,
            fusion,
            f_tensor,
            r_tensor,
            dims,
            twists,
        };
        model.validate()?;
        Ok(model)
    }

    fn validate(&self) -> Result<()> {
        let n = self.labels.len();
        if n == 0 || self.dual.len() != n || self.dims.len() != n || self.twists.len() != n {
            return Err(Error::Integrity("inconsistent model table sizes".into()));
        }
        let vac = self.vacuum();
        for (a, b, c) in self.fusion.iter() {
            if !self.fusion.contains(&(*b, *a, *c)) {
                return Err(Error::Integrity(format!(
                    "fusion table not commutative at ({},{})",
                    self.label_name(*a),
                    self.label_name(*b)
                )));
            }
        }
        for a in self.all_labels() {
            for c in self.all_labels() {
                let expect = a == c;
                if self.n(a, vac, c) != expect {
                    return Err(Error::Integrity("vacuum is not the fusion identity".into()));
                }
            }
            for b in self.all_labels() {
                let expect = b == self.dual[a.0];
                if self.n(a, b, vac) != expect {
                    return Err(Error::Integrity("dual pairing broken".into()));
                }
            }
        }
        if (self.dims[0] - 1.0).abs() > 1e-9
            || (self.twists[0] - Complex64::new(1.0, 0.0)).norm() > 1e-9
        {
            return Err(Error::Integrity(
                "vacuum must have d = 1 and theta = 1".into(),
            ));
        }
        for a in self.all_labels() {
            for b in self.all_labels() {
                let lhs = self.dim(a) * self.dim(b);
                let rhs: f64 = self
                    .fusion_products(a, b)
                    .iter()
                    .map(|&c| self.dim(c))
                    .sum();
                if (lhs - rhs).abs() > 1e-9 {
                    return Err(Error::Integrity(format!(
                        "quantum dimension mismatch at ({},{}): {lhs} vs {rhs}",
                        self.label_name(a),
                        self.label_name(b)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vacuum(&self) -> Label {
        Label(0)
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn all_labels(&self) -> impl Iterator<Item = Label> {
        (0..self.labels.len()).map(Label)
    }

    pub fn label_name(&self, l: Label) -> &str {
        &self.labels[l.0]
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.labels.iter().position(|s| s == name).map(Label)
    }

    pub fn dual(&self, a: Label) -> Label {
        self.dual[a.0]
    }

    pub fn dim(&self, a: Label) -> f64 {
        self.dims[a.0]
    }

    pub fn twist(&self, a: Label) -> Complex64 {
        self.twists[a.0]
    }

    /// N_ab^c as a boolean (multiplicity-free).
    pub fn n(&self, a: Label, b: Label, c: Label) -> bool {
        self.fusion.contains(&(a, b, c))
    }

    pub fn fusion_products(&self, a: Label, b: Label) -> Vec<Label> {
        self.all_labels().filter(|&c| self.n(a, b, c)).collect()
    }

    /// [F^{abc}_d]_{ef}; zero when any vertex is inadmissible.
    pub fn f(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> Complex64 {
        self.f_tensor
            .get(&(a, b, c, d, e, f))
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// R^{ab}_c: the phase for exchanging a and b in channel c.
    pub fn r(&self, a: Label, b: Label, c: Label) -> Result<Complex64> {
        self.r_tensor.get(&(a, b, c)).copied().ok_or_else(|| {
            Error::Domain(format!(
                "{} is not a fusion channel of {} x {}",
                self.label_name(c),
                self.label_name(a),
                self.label_name(b)
            ))
        })
    }

    /// Row channels e (of a x b compatible with d via c), column channels f
    /// (of b x c compatible with d via a), and the F-matrix block.
    pub fn f_matrix(
        &self,
        a: Label,
        b: Label,
        c: Label,
        d: Label,
    ) -> (Vec<Label>, Vec<Label>, Matrix) {
        let rows: Vec<Label> = self
            .fusion_products(a, b)
            .into_iter()
            .filter(|&e| self.n(e, c, d))
            .collect();
        let cols: Vec<Label> = self
            .fusion_products(b, c)
            .into_iter()
            .filter(|&f| self.n(a, f, d))
            .collect();
        assert_eq!(
            rows.len(),
            cols.len(),
            "F-matrix block for ({},{},{};{}) is not square",
            self.label_name(a),
            self.label_name(b),
            self.label_name(c),
            self.label_name(d)
        );
        let mut m = Matrix::zeros(rows.len());
        for (i, &e) in rows.iter().enumerate() {
            for (j, &f) in cols.iter().enumerate() {
                m[(i, j)] = self.f(a, b, c, d, e, f);
            }
        }
        (rows, cols, m)
    }
}

/// Maximum pentagon residual over all admissible label assignments.
///
/// For every a,b,c,d fusing to e through channels (f,g) on the left-leaning
/// side and (l,k) on the right,
/// `F^{fcd}_e[g,l] F^{abl}_e[f,k] = sum_h F^{abc}_g[f,h] F^{ahd}_e[g,k] F^{bcd}_k[h,l]`.
pub fn verify_pentagon(model: &AnyonModel) -> f64 {
    let mut max_residual: f64 = 0.0;
    for a in model.all_labels() {
        for b in model.all_labels() {
            for c in model.all_labels() {
                for d in model.all_labels() {
                    for f in model.fusion_products(a, b) {
                        for g in model.fusion_products(f, c) {
                            for e in model.fusion_products(g, d) {
                                for l in model.fusion_products(c, d) {
                                    for k in model.fusion_products(b, l) {
                                        if !model.n(a, k, e) {
                                            continue;
                                        }
                                        let lhs =
                                            model.f(f, c, d, e, g, l) * model.f(a, b, l, e, f, k);
                                        let mut rhs = Complex64::new(0.0, 0.0);
                                        for h in model.fusion_products(b, c) {
                                            rhs += model.f(a, b, c, g, f, h)
                                                * model.f(a, h, d, e, g, k)
                                                * model.f(b, c, d, k, h, l);
                                        }
                                        max_residual = max_residual.max((lhs - rhs).norm());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    max_residual
}

/// Maximum hexagon residual over all admissible label assignments, for both
/// the R and the R-inverse hexagons:
/// `sum_f F^{abc}_d[e,f] R^{bc}_f (F^{acb}_d)^{-1}[f,g] R^{ac}_g = R^{ec}_d (F^{cab}_d)^{-1}[e,g]`.
pub fn verify_hexagon(model: &AnyonModel) -> f64 {
    let mut max_residual: f64 = 0.0;
    for a in model.all_labels() {
        for b in model.all_labels() {
            for c in model.all_labels() {
                for d in model.all_labels() {
                    let es: Vec<Label> = model
                        .fusion_products(a, b)
                        .into_iter()
                        .filter(|&e| model.n(e, c, d))
                        .collect();
                    let gs: Vec<Label> = model
                        .fusion_products(a, c)
                        .into_iter()
                        .filter(|&g| model.n(g, b, d))
                        .collect();
                    if es.is_empty() || gs.is_empty() {
                        continue;
                    }
                    let (_, acb_cols, f_acb) = model.f_matrix(a, c, b, d);
                    let (cab_rows, cab_cols, f_cab) = model.f_matrix(c, a, b, d);
                    let inv_acb = f_acb.inverse().expect("unitary F block");
                    let inv_cab = f_cab.inverse().expect("unitary F block");
                    // cab_rows are fusion(c,a) channels, cab_cols fusion(a,b).
                    for (ei, &e) in es.iter().enumerate() {
                        let _ = ei;
                        for (gi, &g) in gs.iter().enumerate() {
                            let _ = gi;
                            for inverse_braid in [false, true] {
                                let braid = |x: Label, y: Label, z: Label| -> Complex64 {
                                    let r = model.r(x, y, z).expect("channel");
                                    if inverse_braid {
                                        r.conj()
                                    } else {
                                        r
                                    }
                                };
                                let mut lhs = Complex64::new(0.0, 0.0);
                                for (fi, &fchan) in acb_cols.iter().enumerate() {
                                    // [(F^{acb}_d)^{-1}]_{f,g}: rows of the
                                    // inverse are the cb channels.
                                    let gpos = gs.iter().position(|&x| x == g).expect("g channel");
                                    lhs += model.f(a, b, c, d, e, fchan)
                                        * braid(b, c, fchan)
                                        * inv_acb[(fi, gpos)]
                                        * braid(a, c, g);
                                }
                                let epos = cab_cols.iter().position(|&x| x == e).expect("e");
                                let gpos = cab_rows.iter().position(|&x| x == g).expect("g");
                                let rhs = braid(e, c, d) * inv_cab[(epos, gpos)];
                                max_residual = max_residual.max((lhs - rhs).norm());
                            }
                        }
                    }
                }
            }
        }
    }
    max_residual
}

/// Maximum ribbon residual: |(R^{ab}_c)^2 - theta_c / (theta_a theta_b)|.
pub fn verify_ribbon(model: &AnyonModel) -> f64 {
    let mut max_residual: f64 = 0.0;
    for a in model.all_labels() {
        for b in model.all_labels() {
            for c in model.fusion_products(a, b) {
                let r = model.r(a, b, c).expect("channel");
                let lhs = r * r;
                let rhs = model.twist(c) / (model.twist(a) * model.twist(b));
                max_residual = max_residual.max((lhs - rhs).norm());
            }
        }
    }
    max_residual
}

/// Fusion outcome probabilities p_c = N_ab^c d_c / (d_a d_b).
pub fn fusion_probabilities(model: &AnyonModel, a: Label, b: Label) -> Vec<(Label, f64)> {
    let denom = model.dim(a) * model.dim(b);
    model
        .fusion_products(a, b)
        .into_iter()
        .map(|c| (c, model.dim(c) / denom))
        .collect()
}

fn symmetric_fusion(triples: &[(usize, usize, usize)]) -> BTreeSet<(Label, Label, Label)> {
    let mut set = BTreeSet::new();
    for &(a, b, c) in triples {
        set.insert((Label(a), Label(b), Label(c)));
        set.insert((Label(b), Label(a), Label(c)));
    }
    set
}

/// Inserts the F entries that are forced to 1 whenever a vertex touches the
/// vacuum (trivial recoupling), for every admissible combination.
fn fill_trivial_f(
    fusion: &BTreeSet<(Label, Label, Label)>,
    n_labels: usize,
    f: &mut HashMap<FKey, Complex64>,
) {
    let n = |a: Label, b: Label, c: Label| fusion.contains(&(a, b, c));
    let labels: Vec<Label> = (0..n_labels).map(Label).collect();
    for &a in &labels {
        for &b in &labels {
            for &c in &labels {
                for &d in &labels {
                    for &e in &labels {
                        for &ff in &labels {
                            if !(n(a, b, e) && n(e, c, d) && n(b, c, ff) && n(a, ff, d)) {
                                continue;
                            }
                            if a.0 == 0 || b.0 == 0 || c.0 == 0 {
                                f.entry((a, b, c, d, e, ff))
                                    .or_insert(Complex64::new(1.0, 0.0));
                            }
                        }
                    }
                }
            }
        }
    }
}

/// The Fibonacci model: labels {1, tau}, tau x tau = 1 + tau, d_tau the
/// golden ratio. The F-matrix is the golden-ratio matrix; R and the twist
/// are the hexagon solution with the same chirality as the SU(2)_3
/// integer-spin sector.
pub fn fibonacci_model() -> AnyonModel {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let one = Label(0);
    let tau = Label(1);
    let fusion = symmetric_fusion(&[(0, 0, 0), (0, 1, 1), (1, 1, 0), (1, 1, 1)]);

    let mut f = HashMap::new();
    fill_trivial_f(&fusion, 2, &mut f);
    let re = |x: f64| Complex64::new(x, 0.0);
    // [F^{tau tau tau}_tau] over channels {1, tau}.
    f.insert((tau, tau, tau, tau, one, one), re(1.0 / phi));
    f.insert((tau, tau, tau, tau, one, tau), re(1.0 / phi.sqrt()));
    f.insert((tau, tau, tau, tau, tau, one), re(1.0 / phi.sqrt()));
    f.insert((tau, tau, tau, tau, tau, tau), re(-1.0 / phi));
    // [F^{tau tau tau}_1] is the trivial 1x1 block.
    f.insert((tau, tau, tau, one, tau, tau), re(1.0));

    let mut r = HashMap::new();
    let pi = std::f64::consts::PI;
    r.insert((one, one, one), re(1.0));
    r.insert((one, tau, tau), re(1.0));
    r.insert((tau, one, tau), re(1.0));
    r.insert((tau, tau, one), Complex64::from_polar(1.0, -4.0 * pi / 5.0));
    r.insert((tau, tau, tau), Complex64::from_polar(1.0, 3.0 * pi / 5.0));

    let twists = vec![re(1.0), Complex64::from_polar(1.0, 4.0 * pi / 5.0)];
    AnyonModel::new(
        "fibonacci",
        vec!["1".into(), "tau".into()],
        vec![one, tau],
        fusion,
        f,
        r,
        vec![1.0, phi],
        twists,
    )
    .expect("fibonacci model is consistent")
}

/// The Ising model: labels {1, sigma, psi}, sigma x sigma = 1 + psi.
pub fn ising_model() -> AnyonModel {
    let one = Label(0);
    let sigma = Label(1);
    let psi = Label(2);
    let fusion = symmetric_fusion(&[
        (0, 0, 0),
        (0, 1, 1),
        (0, 2, 2),
        (1, 1, 0),
        (1, 1, 2),
        (1, 2, 1),
        (2, 2, 0),
    ]);

    let mut f = HashMap::new();
    fill_trivial_f(&fusion, 3, &mut f);
    let re = |x: f64| Complex64::new(x, 0.0);
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // [F^{sss}_s] over channels {1, psi}.
    f.insert((sigma, sigma, sigma, sigma, one, one), re(s));
    f.insert((sigma, sigma, sigma, sigma, one, psi), re(s));
    f.insert((sigma, sigma, sigma, sigma, psi, one), re(s));
    f.insert((sigma, sigma, sigma, sigma, psi, psi), re(-s));
    // The psi-sandwich blocks are -1; every other admissible block is +1.
    f.insert((sigma, psi, sigma, psi, sigma, sigma), re(-1.0));
    f.insert((psi, sigma, psi, sigma, sigma, sigma), re(-1.0));
    for key in [
        (sigma, psi, sigma, one, sigma, sigma),
        (sigma, sigma, psi, psi, one, sigma),
        (sigma, sigma, psi, psi, psi, sigma),
        (sigma, sigma, psi, one, psi, sigma),
        (psi, sigma, sigma, psi, sigma, one),
        (psi, sigma, sigma, one, sigma, psi),
        (sigma, psi, psi, sigma, sigma, one),
        (psi, psi, sigma, sigma, one, sigma),
        (psi, psi, psi, psi, one, one),
    ] {
        f.entry(key).or_insert(re(1.0));
    }

    let mut r = HashMap::new();
    let pi = std::f64::consts::PI;
    r.insert((one, one, one), re(1.0));
    r.insert((one, sigma, sigma), re(1.0));
    r.insert((sigma, one, sigma), re(1.0));
    r.insert((one, psi, psi), re(1.0));
    r.insert((psi, one, psi), re(1.0));
    r.insert((sigma, sigma, one), Complex64::from_polar(1.0, -pi / 8.0));
    r.insert(
        (sigma, sigma, psi),
        Complex64::from_polar(1.0, 3.0 * pi / 8.0),
    );
    r.insert((sigma, psi, sigma), Complex64::new(0.0, -1.0));
    r.insert((psi, sigma, sigma), Complex64::new(0.0, -1.0));
    r.insert((psi, psi, one), re(-1.0));

    let twists = vec![re(1.0), Complex64::from_polar(1.0, pi / 8.0), re(-1.0)];
    AnyonModel::new(
        "ising",
        vec!["1".into(), "sigma".into(), "psi".into()],
        vec![one, sigma, psi],
        fusion,
        f,
        r,
        vec![1.0, 2f64.sqrt(), 1.0],
        twists,
    )
    .expect("ising model is consistent")
}

/// Bijection between the SU(2)_4 charges (doubled spins 0..4) and the
/// metaplectic labels {1, X, Y, X', Z}.
pub struct LabelMap {
    charge_to_label: [Label; 5],
}

impl LabelMap {
    pub fn metaplectic() -> Self {
        // Doubled charge 0,1,2,3,4 <-> 1, X, Y, X', Z in the model's
        // label order [1, Z, X, X', Y].
        Self {
            charge_to_label: [Label(0), Label(2), Label(4), Label(3), Label(1)],
        }
    }

    pub fn label_of(&self, charge: SpinLabel) -> Label {
        self.charge_to_label[charge.twice() as usize]
    }

    pub fn charge_of(&self, l: Label) -> SpinLabel {
        let idx = self
            .charge_to_label
            .iter()
            .position(|&x| x == l)
            .expect("label in range");
        SpinLabel::from_twice(idx as u32)
    }
}

/// The metaplectic (SU(2)_4) model: labels {1, Z, X, X', Y}, built from the
/// level-4 data block through the charge map.
pub fn metaplectic_model() -> AnyonModel {
    let su = Su2kData::new(4);
    let map = LabelMap::metaplectic();
    let charges: Vec<SpinLabel> = su.charges().to_vec();

    let mut fusion = BTreeSet::new();
    for &a in &charges {
        for &b in &charges {
            for &c in su.fusion_products(a, b).unwrap().iter() {
                fusion.insert((map.label_of(a), map.label_of(b), map.label_of(c)));
            }
        }
    }

    let mut f = HashMap::new();
    for &a in &charges {
        for &b in &charges {
            for &c in &charges {
                for &d in &charges {
                    for &e in &charges {
                        for &ff in &charges {
                            let v = su.f_symbol(a, b, c, d, e, ff);
                            if v.norm() > 0.0 {
                                f.insert(
                                    (
                                        map.label_of(a),
                                        map.label_of(b),
                                        map.label_of(c),
                                        map.label_of(d),
                                        map.label_of(e),
                                        map.label_of(ff),
                                    ),
                                    v,
                                );
                            }
                        }
                    }
                }
            }
        }
    }

    let mut r = HashMap::new();
    for &a in &charges {
        for &b in &charges {
            for &c in su.fusion_products(a, b).unwrap().iter() {
                r.insert(
                    (map.label_of(a), map.label_of(b), map.label_of(c)),
                    su.r_symbol(a, b, c).unwrap(),
                );
            }
        }
    }

    // Order tables by label index: [1, Z, X, X', Y] <-> charges [0, 4, 1, 3, 2].
    let label_charges = [0u32, 4, 1, 3, 2];
    let dims: Vec<f64> = label_charges
        .iter()
        .map(|&t| su.quantum_dim(SpinLabel::from_twice(t)))
        .collect();
    let twists: Vec<Complex64> = label_charges
        .iter()
        .map(|&t| su.twist(SpinLabel::from_twice(t)))
        .collect();

    AnyonModel::new(
        "metaplectic",
        vec!["1".into(), "Z".into(), "X".into(), "X'".into(), "Y".into()],
        (0..5).map(Label).collect(),
        fusion,
        f,
        r,
        dims,
        twists,
    )
    .expect("metaplectic model is consistent")
}

pub fn model_by_name(name: &str) -> Result<AnyonModel> {
    match name {
        "fibonacci" => Ok(fibonacci_model()),
        "ising" => Ok(ising_model()),
        "metaplectic" => Ok(metaplectic_model()),
        other => Err(Error::Domain(format!("unknown model '{other}'"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    #[test]
    fn fibonacci_basics() {
        let m = fibonacci_model();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let tau = m.label_by_name("tau").unwrap();
        assert!((m.dim(tau) - phi).abs() < TOL);
        assert_eq!(m.fusion_products(tau, tau), vec![Label(0), tau]);
    }

    #[test]
    fn fibonacci_consistency() {
        let m = fibonacci_model();
        assert!(
            verify_pentagon(&m) < TOL,
            "pentagon {}",
            verify_pentagon(&m)
        );
        assert!(verify_hexagon(&m) < TOL, "hexagon {}", verify_hexagon(&m));
        assert!(verify_ribbon(&m) < TOL, "ribbon {}", verify_ribbon(&m));
    }

    #[test]
    fn ising_basics() {
        let m = ising_model();
        let sigma = m.label_by_name("sigma").unwrap();
        let psi = m.label_by_name("psi").unwrap();
        assert!((m.dim(sigma) - 2f64.sqrt()).abs() < TOL);
        assert_eq!(m.fusion_products(psi, psi), vec![Label(0)]);
        // Printed braiding phases.
        let pi = std::f64::consts::PI;
        let r1 = m.r(sigma, sigma, Label(0)).unwrap();
        let rpsi = m.r(sigma, sigma, psi).unwrap();
        assert!((r1 - Complex64::from_polar(1.0, -pi / 8.0)).norm() < TOL);
        assert!((rpsi - Complex64::from_polar(1.0, 3.0 * pi / 8.0)).norm() < TOL);
    }

    #[test]
    fn ising_consistency() {
        let m = ising_model();
        assert!(
            verify_pentagon(&m) < TOL,
            "pentagon {}",
            verify_pentagon(&m)
        );
        assert!(verify_hexagon(&m) < TOL, "hexagon {}", verify_hexagon(&m));
        assert!(verify_ribbon(&m) < TOL, "ribbon {}", verify_ribbon(&m));
    }

    #[test]
    fn metaplectic_basics() {
        let m = metaplectic_model();
        let x = m.label_by_name("X").unwrap();
        let y = m.label_by_name("Y").unwrap();
        let xp = m.label_by_name("X'").unwrap();
        let z = m.label_by_name("Z").unwrap();
        assert_eq!(m.fusion_products(x, x), vec![Label(0), y]);
        assert_eq!(m.fusion_products(x, z), vec![xp]);
        let mut xy = m.fusion_products(x, xp);
        xy.sort();
        assert_eq!(xy, vec![z, y]);
        // dims (1, 1, sqrt3, sqrt3, 2) in label order [1, Z, X, X', Y].
        let expect = [1.0, 1.0, 3f64.sqrt(), 3f64.sqrt(), 2.0];
        for (l, &d) in m.all_labels().zip(expect.iter()) {
            assert!((m.dim(l) - d).abs() < TOL);
        }
        let pi = std::f64::consts::PI;
        assert!((m.twist(y) - Complex64::from_polar(1.0, 2.0 * pi / 3.0)).norm() < TOL);
        assert!((m.twist(x) - Complex64::from_polar(1.0, pi / 4.0)).norm() < TOL);
        assert!((m.twist(z) - Complex64::new(1.0, 0.0)).norm() < TOL);
    }

    #[test]
    fn metaplectic_consistency() {
        let m = metaplectic_model();
        assert!(
            verify_pentagon(&m) < TOL,
            "pentagon {}",
            verify_pentagon(&m)
        );
        assert!(verify_hexagon(&m) < TOL, "hexagon {}", verify_hexagon(&m));
        assert!(verify_ribbon(&m) < TOL, "ribbon {}", verify_ribbon(&m));
    }

    #[test]
    fn metaplectic_matches_su2k_under_charge_map() {
        let m = metaplectic_model();
        let su = Su2kData::new(4);
        let map = LabelMap::metaplectic();
        let s = SpinLabel::from_twice;
        // Spot-check F and R agreement through the map.
        let f_model = m.f(
            map.label_of(s(1)),
            map.label_of(s(1)),
            map.label_of(s(2)),
            map.label_of(s(2)),
            map.label_of(s(2)),
            map.label_of(s(1)),
        );
        let f_su = su.f_symbol(s(1), s(1), s(2), s(2), s(2), s(1));
        assert_eq!(f_model, f_su);
        let r_model = m
            .r(map.label_of(s(1)), map.label_of(s(1)), map.label_of(s(2)))
            .unwrap();
        assert_eq!(r_model, su.r_symbol(s(1), s(1), s(2)).unwrap());
    }

    #[test]
    fn label_map_is_bijective() {
        let map = LabelMap::metaplectic();
        for t in 0..=4u32 {
            let c = SpinLabel::from_twice(t);
            assert_eq!(map.charge_of(map.label_of(c)), c);
        }
        assert_eq!(map.label_of(SpinLabel::from_twice(0)), Label(0));
    }

    #[test]
    fn fusion_probability_values() {
        let fib = fibonacci_model();
        let tau = fib.label_by_name("tau").unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let probs = fusion_probabilities(&fib, tau, tau);
        let total: f64 = probs.iter().map(|(_, p)| p).sum();
        assert!((total - 1.0).abs() < TOL);
        for (c, p) in probs {
            if c == Label(0) {
                assert!((p - 1.0 / (phi * phi)).abs() < TOL);
            } else {
                assert!((p - 1.0 / phi).abs() < TOL);
            }
        }
        // (a, vacuum) -> {a: 1}.
        let probs = fusion_probabilities(&fib, tau, Label(0));
        assert_eq!(probs.len(), 1);
        assert!((probs[0].1 - 1.0).abs() < TOL);
        // Ising sigma x sigma is an even split.
        let ising = ising_model();
        let sigma = ising.label_by_name("sigma").unwrap();
        for (_, p) in fusion_probabilities(&ising, sigma, sigma) {
            assert!((p - 0.5).abs() < TOL);
        }
    }

    #[test]
    fn perturbed_f_detected_by_pentagon() {
        let mut m = fibonacci_model();
        let tau = Label(1);
        let key = (tau, tau, tau, tau, tau, tau);
        let v = m.f_tensor[&key];
        m.f_tensor.insert(key, v + Complex64::new(1e-3, 0.0));
        assert!(verify_pentagon(&m) >= 1e-4);
    }

    #[test]
    fn perturbed_r_detected_by_hexagon() {
        let mut m = fibonacci_model();
        let tau = Label(1);
        let key = (tau, tau, tau);
        let v = m.r_tensor[&key];
        m.r_tensor.insert(key, v * Complex64::from_polar(1.0, 1e-3));
        assert!(verify_hexagon(&m) >= 1e-4);
    }

    #[test]
    fn vacuum_only_model_passes_exactly() {
        let fusion = symmetric_fusion(&[(0, 0, 0)]);
        let mut f = HashMap::new();
        fill_trivial_f(&fusion, 1, &mut f);
        let mut r = HashMap::new();
        r.insert((Label(0), Label(0), Label(0)), Complex64::new(1.0, 0.0));
        let m = AnyonModel::new(
            "vacuum",
            vec!["1".into()],
            vec![Label(0)],
            fusion,
            f,
            r,
            vec![1.0],
            vec![Complex64::new(1.0, 0.0)],
        )
        .unwrap();
        assert_eq!(verify_pentagon(&m), 0.0);
        assert_eq!(verify_hexagon(&m), 0.0);
        assert_eq!(verify_ribbon(&m), 0.0);
    }

    #[test]
    fn ising_fusion_space_dimension_doubles() {
        // 2n sigma anyons with fixed total charge span 2^{n-1} states:
        // count chain labelings by dynamic programming on the charge.
        let m = ising_model();
        let sigma = m.label_by_name("sigma").unwrap();
        for n_pairs in 1..=4u32 {
            let n_anyons = 2 * n_pairs as usize;
            let mut reachable: HashMap<Label, u64> = HashMap::new();
            reachable.insert(sigma, 1);
            for _ in 1..n_anyons {
                let mut next: HashMap<Label, u64> = HashMap::new();
                for (&l, &count) in reachable.iter() {
                    for c in m.fusion_products(l, sigma) {
                        *next.entry(c).or_insert(0) += count;
                    }
                }
                reachable = next;
            }
            let dim = reachable.get(&Label(0)).copied().unwrap_or(0);
            assert_eq!(dim, 1u64 << (n_pairs - 1));
        }
    }
}
