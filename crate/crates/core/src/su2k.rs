//! The complete SU(2)_k topological data block: fusion products, F-symbols,
//! R-symbols, quantum dimensions, total dimension, twists, and the S-matrix.

use std::collections::HashMap;
use std::sync::Mutex;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::qdeform::{self, DeformationLevel, SpinLabel};

/// SU(2)_k data with memo tables for the F and R symbols. The caches are
/// lock-guarded; concurrent calls observe identical values.
pub struct Su2kData {
    level: DeformationLevel,
    charges: Vec<SpinLabel>,
    f_cache: Mutex<HashMap<[u32; 6], Complex64>>,
    r_cache: Mutex<HashMap<[u32; 3], Complex64>>,
}

impl Su2kData {
    pub fn new(k: u32) -> Self {
        Self {
            level: DeformationLevel::new(k),
            charges: (0..=k).map(SpinLabel::from_twice).collect(),
            f_cache: Mutex::new(HashMap::new()),
            r_cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn level(&self) -> &DeformationLevel {
        &self.level
    }

    pub fn k(&self) -> u32 {
        self.level.k()
    }

    /// The k+1 charges j = 0, 1/2, ..., k/2.
    pub fn charges(&self) -> &[SpinLabel] {
        &self.charges
    }

    fn check_charge(&self, j: SpinLabel) -> Result<()> {
        if !j.in_level(&self.level) {
            return Err(Error::Domain(format!(
                "charge {j} exceeds level k = {}",
                self.k()
            )));
        }
        Ok(())
    }

    /// j1 x j2 = sum of j for |j1-j2| <= j <= min(j1+j2, k-j1-j2), step 1.
    pub fn fusion_products(&self, j1: SpinLabel, j2: SpinLabel) -> Result<Vec<SpinLabel>> {
        self.check_charge(j1)?;
        self.check_charge(j2)?;
        let (t1, t2) = (j1.twice() as i64, j2.twice() as i64);
        let lo = (t1 - t2).abs();
        let hi = (t1 + t2).min(2 * self.k() as i64 - t1 - t2);
        let mut out = Vec::new();
        let mut t = lo;
        while t <= hi {
            out.push(SpinLabel::from_twice(t as u32));
            t += 2;
        }
        Ok(out)
    }

    pub fn is_channel(&self, j1: SpinLabel, j2: SpinLabel, j: SpinLabel) -> bool {
        qdeform::admissible(j1, j2, j, &self.level)
    }

    /// [F_j^{j1,j2,j3}]_{j12,j23}; zero for inadmissible channels.
    pub fn f_symbol(
        &self,
        j1: SpinLabel,
        j2: SpinLabel,
        j3: SpinLabel,
        j: SpinLabel,
        j12: SpinLabel,
        j23: SpinLabel,
    ) -> Complex64 {
        let key = [
            j1.twice(),
            j2.twice(),
            j3.twice(),
            j.twice(),
            j12.twice(),
            j23.twice(),
        ];
        if let Some(v) = self.f_cache.lock().unwrap().get(&key) {
            return *v;
        }
        let six = qdeform::q_six_j(j1, j2, j12, j3, j, j23, &self.level);
        let value = if six.norm() == 0.0 {
            Complex64::new(0.0, 0.0)
        } else {
            let tsum = j1.twice() + j2.twice() + j3.twice() + j.twice();
            // Admissible channels force an integer exponent; anything else is
            // an internal bug, not a caller error.
            assert!(
                tsum.is_multiple_of(2),
                "non-integer phase exponent for admissible F-symbol"
            );
            let sign = if (tsum / 2).is_multiple_of(2) {
                1.0
            } else {
                -1.0
            };
            let d12 = qdeform::q_integer(j12.twice() as i64 + 1, &self.level);
            let d23 = qdeform::q_integer(j23.twice() as i64 + 1, &self.level);
            (d12 * d23).sqrt().scale(sign) * six
        };
        self.f_cache.lock().unwrap().insert(key, value);
        value
    }

    /// The F-matrix [F^{j1 j2 j3}_j] together with its row (j12) and column
    /// (j23) channel lists.
    pub fn f_matrix(
        &self,
        j1: SpinLabel,
        j2: SpinLabel,
        j3: SpinLabel,
        j: SpinLabel,
    ) -> Result<(Vec<SpinLabel>, Vec<SpinLabel>, Matrix)> {
        let rows: Vec<SpinLabel> = self
            .fusion_products(j1, j2)?
            .into_iter()
            .filter(|&e| self.is_channel(e, j3, j))
            .collect();
        let cols: Vec<SpinLabel> = self
            .fusion_products(j2, j3)?
            .into_iter()
            .filter(|&f| self.is_channel(j1, f, j))
            .collect();
        if rows.len() != cols.len() {
            return Err(Error::Integrity(format!(
                "F-matrix for ({j1},{j2},{j3};{j}) is not square: {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        let mut m = Matrix::zeros(rows.len());
        for (i, &e) in rows.iter().enumerate() {
            for (c, &f) in cols.iter().enumerate() {
                m[(i, c)] = self.f_symbol(j1, j2, j3, j, e, f);
            }
        }
        Ok((rows, cols, m))
    }

    /// R_j^{j1,j2} = (-1)^{j-j1-j2} q^{[j(j+1) - j1(j1+1) - j2(j2+1)]/2}.
    pub fn r_symbol(&self, j1: SpinLabel, j2: SpinLabel, j: SpinLabel) -> Result<Complex64> {
        if !self.is_channel(j1, j2, j) {
            return Err(Error::Domain(format!(
                "{j} is not a fusion channel of {j1} x {j2} at k = {}",
                self.k()
            )));
        }
        let key = [j1.twice(), j2.twice(), j.twice()];
        if let Some(v) = self.r_cache.lock().unwrap().get(&key) {
            return Ok(*v);
        }
        let (t1, t2, t) = (j1.twice() as i64, j2.twice() as i64, j.twice() as i64);
        let sign_exp = (t - t1 - t2) / 2;
        let sign = if sign_exp.rem_euclid(2) == 0 {
            1.0
        } else {
            -1.0
        };
        // j(j+1) = t(t+2)/4, so the q-exponent is an integer count of eighths.
        let eighths = t * (t + 2) - t1 * (t1 + 2) - t2 * (t2 + 2);
        let value = self.level.q_pow_eighths(eighths).scale(sign);
        self.r_cache.lock().unwrap().insert(key, value);
        Ok(value)
    }

    /// d_j = [2j+1]_q, via the q-integer.
    pub fn quantum_dim(&self, j: SpinLabel) -> f64 {
        qdeform::q_integer(j.twice() as i64 + 1, &self.level).re
    }

    /// d_j = sin((2j+1)pi/(k+2)) / sin(pi/(k+2)), the trigonometric closed form.
    pub fn quantum_dim_sine(&self, j: SpinLabel) -> f64 {
        let denom = (self.k() + 2) as f64;
        let x = std::f64::consts::PI / denom;
        ((j.twice() + 1) as f64 * x).sin() / x.sin()
    }

    /// D = sqrt((k+2)/2) / sin(pi/(k+2)).
    pub fn total_dim(&self) -> f64 {
        let denom = (self.k() + 2) as f64;
        (denom / 2.0).sqrt() / (std::f64::consts::PI / denom).sin()
    }

    /// theta_j = q^{j(j+1)}.
    pub fn twist(&self, j: SpinLabel) -> Complex64 {
        let t = j.twice() as i64;
        self.level.q_pow_eighths(2 * t * (t + 2))
    }

    /// S_{j1 j2} = sqrt(2/(k+2)) sin((2j1+1)(2j2+1)pi/(k+2)).
    pub fn s_matrix_entry(&self, j1: SpinLabel, j2: SpinLabel) -> f64 {
        let denom = (self.k() + 2) as f64;
        (2.0 / denom).sqrt()
            * ((j1.twice() + 1) as f64 * (j2.twice() + 1) as f64 * std::f64::consts::PI / denom)
                .sin()
    }

    pub fn s_matrix(&self) -> Matrix {
        let n = self.charges.len();
        let mut m = Matrix::zeros(n);
        for (i, &a) in self.charges.iter().enumerate() {
            for (j, &b) in self.charges.iter().enumerate() {
                m[(i, j)] = Complex64::new(self.s_matrix_entry(a, b), 0.0);
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::TOL;

    fn s(t: u32) -> SpinLabel {
        SpinLabel::from_twice(t)
    }

    #[test]
    fn fusion_products_metaplectic() {
        let d = Su2kData::new(4);
        // X x X = 1 + Y under the charge map.
        assert_eq!(d.fusion_products(s(1), s(1)).unwrap(), vec![s(0), s(2)]);
        // Y x Y = 1 + Y + Z.
        assert_eq!(
            d.fusion_products(s(2), s(2)).unwrap(),
            vec![s(0), s(2), s(4)]
        );
        // Vacuum is the identity of fusion.
        for t in 0..=4 {
            assert_eq!(d.fusion_products(s(t), s(0)).unwrap(), vec![s(t)]);
        }
        assert!(d.fusion_products(s(6), s(0)).is_err());
    }

    #[test]
    fn quantum_dims_and_total() {
        let d = Su2kData::new(4);
        assert!((d.quantum_dim(s(0)) - 1.0).abs() < TOL);
        assert!((d.quantum_dim(s(1)) - 3f64.sqrt()).abs() < TOL);
        assert!((d.quantum_dim(s(2)) - 2.0).abs() < TOL);
        assert!((d.total_dim() - 2.0 * 3f64.sqrt()).abs() < TOL);
        assert!((Su2kData::new(2).total_dim() - 2.0).abs() < TOL);
    }

    #[test]
    fn quantum_dim_closed_forms_agree() {
        for k in 1..=8 {
            let d = Su2kData::new(k);
            for &j in d.charges() {
                assert!((d.quantum_dim(j) - d.quantum_dim_sine(j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn total_dim_is_root_sum_of_squares() {
        for k in 1..=8 {
            let d = Su2kData::new(k);
            let sum: f64 = d.charges().iter().map(|&j| d.quantum_dim(j).powi(2)).sum();
            assert!((d.total_dim().powi(2) - sum).abs() < TOL);
        }
    }

    #[test]
    fn quantum_dim_fusion_consistency() {
        for k in 1..=5 {
            let d = Su2kData::new(k);
            for &a in d.charges() {
                for &b in d.charges() {
                    let lhs = d.quantum_dim(a) * d.quantum_dim(b);
                    let rhs: f64 = d
                        .fusion_products(a, b)
                        .unwrap()
                        .iter()
                        .map(|&c| d.quantum_dim(c))
                        .sum();
                    assert!((lhs - rhs).abs() < TOL, "k={k} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn twists_metaplectic() {
        let d = Su2kData::new(4);
        assert!((d.twist(s(0)) - Complex64::new(1.0, 0.0)).norm() < TOL);
        let t1 = Complex64::from_polar(1.0, std::f64::consts::PI / 4.0);
        assert!((d.twist(s(1)) - t1).norm() < TOL);
        let t2 = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        assert!((d.twist(s(2)) - t2).norm() < TOL);
        assert!((d.twist(s(4)) - Complex64::new(1.0, 0.0)).norm() < TOL);
        for &j in d.charges() {
            assert!((d.twist(j).norm() - 1.0).abs() < TOL);
        }
    }

    #[test]
    fn s_matrix_properties() {
        let d = Su2kData::new(4);
        // S_00 = 1/D.
        assert!((d.s_matrix_entry(s(0), s(0)) - 1.0 / d.total_dim()).abs() < TOL);
        let m = d.s_matrix();
        assert!(m.max_abs_diff(&m.transpose()) < TOL);
        assert!(m.is_unitary(TOL));
    }

    #[test]
    fn f_matrices_unitary_small_levels() {
        for k in 1..=5 {
            let d = Su2kData::new(k);
            for &j1 in d.charges() {
                for &j2 in d.charges() {
                    for &j3 in d.charges() {
                        for &j in d.charges() {
                            let (rows, _, m) = d.f_matrix(j1, j2, j3, j).unwrap();
                            if rows.is_empty() {
                                continue;
                            }
                            assert!(
                                m.is_unitary(TOL),
                                "F({j1},{j2},{j3};{j}) at k={k} not unitary: {m:?}"
                            );
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn f_with_vacuum_outer_label_is_unimodular_scalar() {
        let d = Su2kData::new(4);
        for &j1 in d.charges() {
            for &j3 in d.charges() {
                for &j in d.fusion_products(j1, j3).unwrap().iter() {
                    let (rows, _, m) = d.f_matrix(j1, s(0), j3, j).unwrap();
                    assert_eq!(rows.len(), 1);
                    assert!((m[(0, 0)].norm() - 1.0).abs() < TOL);
                }
            }
        }
    }

    #[test]
    fn f_fibonacci_sector_moduli() {
        // The integer-spin sector of k=3 carries Fibonacci fusion; the
        // golden-ratio matrix entries appear in modulus.
        let d = Su2kData::new(3);
        let tau = s(2);
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let (rows, cols, m) = d.f_matrix(tau, tau, tau, tau).unwrap();
        assert_eq!(rows, vec![s(0), s(2)]);
        assert_eq!(cols, vec![s(0), s(2)]);
        assert!((m[(0, 0)].norm() - 1.0 / phi).abs() < TOL);
        assert!((m[(0, 1)].norm() - 1.0 / phi.sqrt()).abs() < TOL);
        assert!((m[(1, 0)].norm() - 1.0 / phi.sqrt()).abs() < TOL);
        assert!((m[(1, 1)].norm() - 1.0 / phi).abs() < TOL);
    }

    #[test]
    fn r_symbol_values() {
        let d = Su2kData::new(4);
        // Vacuum braiding is trivial.
        assert!((d.r_symbol(s(0), s(0), s(0)).unwrap() - Complex64::new(1.0, 0.0)).norm() < TOL);
        // Non-channel is a domain error.
        assert!(d.r_symbol(s(1), s(1), s(1)).is_err());
        // All R phases are unimodular.
        for &j1 in d.charges() {
            for &j2 in d.charges() {
                for &j in d.fusion_products(j1, j2).unwrap().iter() {
                    let r = d.r_symbol(j1, j2, j).unwrap();
                    assert!((r.norm() - 1.0).abs() < TOL);
                }
            }
        }
    }

    #[test]
    fn ribbon_equation_at_k4() {
        let d = Su2kData::new(4);
        for &j1 in d.charges() {
            for &j2 in d.charges() {
                for &j in d.fusion_products(j1, j2).unwrap().iter() {
                    let r = d.r_symbol(j1, j2, j).unwrap();
                    let lhs = r * r;
                    let rhs = d.twist(j) / (d.twist(j1) * d.twist(j2));
                    assert!((lhs - rhs).norm() < TOL, "ribbon fails at ({j1},{j2};{j})");
                }
            }
        }
    }

    #[test]
    fn concurrent_readers_see_identical_values() {
        // Cold caches hammered from eight threads: every reader must observe
        // the same F and R values bit for bit.
        let d = std::sync::Arc::new(Su2kData::new(4));
        let handles: Vec<_> = (0..8)
            .map(|_| {
                let d = d.clone();
                std::thread::spawn(move || {
                    (
                        d.f_symbol(s(2), s(1), s(1), s(2), s(2), s(1)),
                        d.r_symbol(s(1), s(1), s(2)).unwrap(),
                    )
                })
            })
            .collect();
        let results: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        for pair in &results[1..] {
            assert_eq!(*pair, results[0]);
        }
    }

    #[test]
    fn one_qutrit_braid_phases_from_r() {
        // R^{XX}_Y = e^{i pi/12} and R^{XX}_1 = e^{i pi/12} * omega at k=4,
        // the diagonal entries of the printed sigma_1.
        let d = Su2kData::new(4);
        let gamma = Complex64::from_polar(1.0, std::f64::consts::PI / 12.0);
        let omega = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let r_y = d.r_symbol(s(1), s(1), s(2)).unwrap();
        let r_1 = d.r_symbol(s(1), s(1), s(0)).unwrap();
        assert!((r_y - gamma).norm() < TOL);
        assert!((r_1 - gamma * omega).norm() < TOL);
    }
}
