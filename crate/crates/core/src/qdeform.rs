//! q-deformed integer arithmetic and the q-6j symbol kernel, plus the
//! classical (q -> 1) Racah oracle.
//!
//! All spin labels are carried as doubled integers (2j) so admissibility is
//! exact integer arithmetic and labels can key hash maps.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Tolerance for numeric equality of derived quantities.
pub const TOL: f64 = 1e-9;
/// Tolerance for realness checks of quantities that are real in exact arithmetic.
pub const REAL_TOL: f64 = 1e-12;

/// The level k of the deformation, with q = exp(2*pi*i/(k+2)) and its fixed
/// principal square root q_half = exp(pi*i/(k+2)).
#[derive(Debug, Clone, Copy)]
pub struct DeformationLevel {
    k: u32,
    q: Complex64,
    q_half: Complex64,
}

impl DeformationLevel {
    pub fn new(k: u32) -> Self {
        let denom = (k + 2) as f64;
        Self {
            k,
            q: Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI / denom),
            q_half: Complex64::from_polar(1.0, std::f64::consts::PI / denom),
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> Complex64 {
        self.q
    }

    pub fn q_half(&self) -> Complex64 {
        self.q_half
    }

    /// q_half^n for signed n, computed on the unit circle.
    fn q_half_pow(&self, n: i64) -> Complex64 {
        let denom = (self.k + 2) as f64;
        Complex64::from_polar(1.0, n as f64 * std::f64::consts::PI / denom)
    }

    /// q^x where x is given in eighths of the doubled-integer exponent
    /// (used by the R-symbol, whose exponent is j(j+1)-like).
    pub(crate) fn q_pow_eighths(&self, numerator: i64) -> Complex64 {
        let denom = (self.k + 2) as f64;
        Complex64::from_polar(1.0, numerator as f64 * std::f64::consts::PI / (4.0 * denom))
    }
}

/// Half-integer charge label stored as a doubled integer (2j).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinLabel(u32);

impl SpinLabel {
    pub const ZERO: SpinLabel = SpinLabel(0);

    pub fn from_twice(twice_j: u32) -> Self {
        SpinLabel(twice_j)
    }

    pub fn twice(&self) -> u32 {
        self.0
    }

    pub fn j(&self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn in_level(&self, level: &DeformationLevel) -> bool {
        self.0 <= level.k()
    }
}

impl fmt::Display for SpinLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `[n]_q = (q^{n/2} - q^{-n/2}) / (q^{1/2} - q^{-1/2})`.
///
/// Real-valued for q on the unit circle; the imaginary residue is floating
/// point noise only.
pub fn q_integer(n: i64, level: &DeformationLevel) -> Complex64 {
    match n {
        0 => Complex64::new(0.0, 0.0),
        1 => Complex64::new(1.0, 0.0),
        _ => {
            let num = level.q_half_pow(n) - level.q_half_pow(-n);
            let den = level.q_half_pow(1) - level.q_half_pow(-1);
            num / den
        }
    }
}

/// `[n]_q! = prod_{m=1}^n [m]_q`, with `[0]_q! = 1`.
pub fn q_factorial(n: i64, level: &DeformationLevel) -> Result<Complex64> {
    if n < 0 {
        return Err(Error::Domain(format!(
            "q-factorial of negative argument {n}"
        )));
    }
    let mut acc = Complex64::new(1.0, 0.0);
    for m in 1..=n {
        acc *= q_integer(m, level);
    }
    Ok(acc)
}

/// Triangle condition plus the level cutoff j1 + j2 + j3 <= k.
pub fn admissible(j1: SpinLabel, j2: SpinLabel, j3: SpinLabel, level: &DeformationLevel) -> bool {
    triangle(j1, j2, j3) && j1.twice() + j2.twice() + j3.twice() <= 2 * level.k()
}

/// Classical triangle condition: |j1 - j2| <= j3 <= j1 + j2 with integer sum.
pub fn triangle(j1: SpinLabel, j2: SpinLabel, j3: SpinLabel) -> bool {
    let (a, b, c) = (j1.twice() as i64, j2.twice() as i64, j3.twice() as i64);
    (a - b).abs() <= c && c <= a + b && (a + b + c) % 2 == 0
}

/// `Delta(j1,j2,j3) = sqrt([-j1+j2+j3]! [j1-j2+j3]! [j1+j2-j3]! / [j1+j2+j3+1]!)`.
pub fn q_delta(
    j1: SpinLabel,
    j2: SpinLabel,
    j3: SpinLabel,
    level: &DeformationLevel,
) -> Result<Complex64> {
    if !admissible(j1, j2, j3, level) {
        return Err(Error::Domain(format!(
            "inadmissible triple ({j1}, {j2}, {j3}) at level {}",
            level.k()
        )));
    }
    let (a, b, c) = (j1.twice() as i64, j2.twice() as i64, j3.twice() as i64);
    let n1 = q_factorial((-a + b + c) / 2, level)?;
    let n2 = q_factorial((a - b + c) / 2, level)?;
    let n3 = q_factorial((a + b - c) / 2, level)?;
    let d = q_factorial((a + b + c) / 2 + 1, level)?;
    Ok((n1 * n2 * n3 / d).sqrt())
}

/// The q-deformed 6j symbol for the tableau {j1 j2 j12; j3 j j23}.
///
/// Returns exactly zero when any of the four triangle triples (j1,j2,j12),
/// (j12,j3,j), (j2,j3,j23), (j1,j23,j) is inadmissible, or when the z-sum
/// range is empty.
pub fn q_six_j(
    j1: SpinLabel,
    j2: SpinLabel,
    j12: SpinLabel,
    j3: SpinLabel,
    j: SpinLabel,
    j23: SpinLabel,
    level: &DeformationLevel,
) -> Complex64 {
    let zero = Complex64::new(0.0, 0.0);
    if !admissible(j1, j2, j12, level)
        || !admissible(j12, j3, j, level)
        || !admissible(j2, j3, j23, level)
        || !admissible(j1, j23, j, level)
    {
        return zero;
    }
    let prefactor = q_delta(j1, j2, j12, level).unwrap()
        * q_delta(j12, j3, j, level).unwrap()
        * q_delta(j2, j3, j23, level).unwrap()
        * q_delta(j1, j23, j, level).unwrap();

    let (t1, t2, t12) = (j1.twice() as i64, j2.twice() as i64, j12.twice() as i64);
    let (t3, t, t23) = (j3.twice() as i64, j.twice() as i64, j23.twice() as i64);
    let alphas = [
        (t1 + t2 + t12) / 2,
        (t12 + t3 + t) / 2,
        (t2 + t3 + t23) / 2,
        (t1 + t23 + t) / 2,
    ];
    let betas = [
        (t1 + t2 + t3 + t) / 2,
        (t1 + t12 + t3 + t23) / 2,
        (t2 + t12 + t + t23) / 2,
    ];
    let z_min = *alphas.iter().max().unwrap();
    let z_max = *betas.iter().min().unwrap();
    if z_min > z_max {
        return zero;
    }

    let mut sum = zero;
    for z in z_min..=z_max {
        // Arguments are non-negative by the bounds; the guard keeps a
        // negative-argument term at zero rather than an error.
        if alphas.iter().any(|&a| z < a) || betas.iter().any(|&b| b < z) {
            continue;
        }
        let sign = if z % 2 == 0 { 1.0 } else { -1.0 };
        let mut term = q_factorial(z + 1, level).unwrap().scale(sign);
        for &a in &alphas {
            term /= q_factorial(z - a, level).unwrap();
        }
        for &b in &betas {
            term /= q_factorial(b - z, level).unwrap();
        }
        sum += term;
    }
    prefactor * sum
}

fn factorial(n: i64) -> f64 {
    (1..=n).map(|m| m as f64).product()
}

fn classical_delta(j1: SpinLabel, j2: SpinLabel, j3: SpinLabel) -> f64 {
    let (a, b, c) = (j1.twice() as i64, j2.twice() as i64, j3.twice() as i64);
    (factorial((-a + b + c) / 2) * factorial((a - b + c) / 2) * factorial((a + b - c) / 2)
        / factorial((a + b + c) / 2 + 1))
    .sqrt()
}

/// The classical Wigner 6j symbol {j1 j2 j12; j3 j j23}, from the Racah
/// single-sum formula over ordinary factorials. Serves as the q -> 1 oracle
/// for `q_six_j`, so it deliberately shares no code with it beyond integer
/// bookkeeping.
pub fn classical_six_j(
    j1: SpinLabel,
    j2: SpinLabel,
    j12: SpinLabel,
    j3: SpinLabel,
    j: SpinLabel,
    j23: SpinLabel,
) -> f64 {
    if !triangle(j1, j2, j12)
        || !triangle(j12, j3, j)
        || !triangle(j2, j3, j23)
        || !triangle(j1, j23, j)
    {
        return 0.0;
    }
    // Racah: W(abcd;ef) with a=j1, b=j2, c=j, d=j3, e=j12, f=j23 so that the
    // four triangles are exactly the tableau's; {6j} = (-1)^{a+b+c+d} W.
    let (t1, t2, t12) = (j1.twice() as i64, j2.twice() as i64, j12.twice() as i64);
    let (t3, t, t23) = (j3.twice() as i64, j.twice() as i64, j23.twice() as i64);
    let alphas = [
        (t1 + t2 + t12) / 2,
        (t + t3 + t12) / 2,
        (t1 + t + t23) / 2,
        (t2 + t3 + t23) / 2,
    ];
    let betas = [
        (t1 + t2 + t + t3) / 2,
        (t1 + t3 + t12 + t23) / 2,
        (t2 + t + t12 + t23) / 2,
    ];
    let b1 = betas[0];
    let z_min = *alphas.iter().max().unwrap();
    let z_max = *betas.iter().min().unwrap();
    let mut omega = 0.0;
    for z in z_min..=z_max {
        let sign = if (z + b1) % 2 == 0 { 1.0 } else { -1.0 };
        let mut denom = 1.0;
        for &a in &alphas {
            denom *= factorial(z - a);
        }
        for &b in &betas {
            denom *= factorial(b - z);
        }
        omega += sign * factorial(z + 1) / denom;
    }
    let w = classical_delta(j1, j2, j12)
        * classical_delta(j, j3, j12)
        * classical_delta(j1, j, j23)
        * classical_delta(j2, j3, j23)
        * omega;
    let sign = if b1 % 2 == 0 { 1.0 } else { -1.0 };
    sign * w
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(twice: u32) -> SpinLabel {
        SpinLabel::from_twice(twice)
    }

    #[test]
    fn q_integer_base_cases() {
        let lvl = DeformationLevel::new(4);
        assert_eq!(q_integer(0, &lvl), Complex64::new(0.0, 0.0));
        assert_eq!(q_integer(1, &lvl), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn q_integer_metaplectic_dimensions() {
        // [2]_q = sqrt(3) and [3]_q = 2 at k = 4.
        let lvl = DeformationLevel::new(4);
        assert!((q_integer(2, &lvl).re - 3f64.sqrt()).abs() < TOL);
        assert!((q_integer(3, &lvl).re - 2.0).abs() < TOL);
    }

    #[test]
    fn q_integer_real_and_odd() {
        for k in [1u32, 2, 3, 4, 7, 12] {
            let lvl = DeformationLevel::new(k);
            for n in -10i64..=10 {
                let v = q_integer(n, &lvl);
                assert!(v.im.abs() < REAL_TOL, "imag residue too large: {v}");
                let w = q_integer(-n, &lvl);
                assert!((v + w).norm() < REAL_TOL);
            }
        }
    }

    #[test]
    fn level_invariants() {
        for k in [1u32, 2, 3, 4, 8] {
            let lvl = DeformationLevel::new(k);
            assert!((lvl.q().norm() - 1.0).abs() < REAL_TOL);
            assert!((lvl.q_half() * lvl.q_half() - lvl.q()).norm() < REAL_TOL);
            // q is a (k+2)-th root of unity.
            let mut p = Complex64::new(1.0, 0.0);
            for _ in 0..k + 2 {
                p *= lvl.q();
            }
            assert!((p - Complex64::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn q_factorial_values() {
        let lvl = DeformationLevel::new(4);
        assert_eq!(q_factorial(0, &lvl).unwrap(), Complex64::new(1.0, 0.0));
        // Products of q-integers, checked against q_integer directly.
        let f2 = q_integer(1, &lvl) * q_integer(2, &lvl);
        assert!((q_factorial(2, &lvl).unwrap() - f2).norm() < TOL);
        let f3 = f2 * q_integer(3, &lvl);
        assert!((q_factorial(3, &lvl).unwrap() - f3).norm() < TOL);
        assert!((f3.re - 2.0 * 3f64.sqrt()).abs() < TOL);
        assert!(q_factorial(-1, &lvl).is_err());
    }

    #[test]
    fn admissibility_cases() {
        let lvl = DeformationLevel::new(4);
        assert!(admissible(s(1), s(1), s(2), &lvl));
        assert!(!admissible(s(1), s(1), s(4), &lvl));
        // Level cutoff: j1 + j2 + j3 = 6 > 4.
        assert!(!admissible(s(4), s(4), s(4), &lvl));
        assert!(triangle(s(4), s(4), s(4)));
    }

    #[test]
    fn q_delta_values() {
        let lvl = DeformationLevel::new(4);
        let one = q_delta(s(0), s(0), s(0), &lvl).unwrap();
        assert!((one - Complex64::new(1.0, 0.0)).norm() < TOL);

        // Delta(1/2,1/2,0) = [2]_q^{-1/2}.
        let v = q_delta(s(1), s(1), s(0), &lvl).unwrap();
        let expect = 1.0 / q_integer(2, &lvl).re.sqrt();
        assert!((v.re - expect).abs() < TOL);

        // Delta(1/2,1/2,1) = sqrt([1]![1]![0]!/[3]!), evaluated by q_factorial.
        let v = q_delta(s(1), s(1), s(2), &lvl).unwrap();
        let expect = (1.0 / q_factorial(3, &lvl).unwrap().re).sqrt();
        assert!((v.re - expect).abs() < TOL);
        assert!((v.re - 0.5372849659).abs() < 1e-6);

        assert!(q_delta(s(4), s(4), s(4), &lvl).is_err());
    }

    #[test]
    fn q_six_j_vanishes_when_inadmissible() {
        let lvl = DeformationLevel::new(4);
        let v = q_six_j(s(1), s(1), s(4), s(1), s(1), s(0), &lvl);
        assert_eq!(v, Complex64::new(0.0, 0.0));
    }

    #[test]
    fn classical_racah_tabulated_value() {
        // {1/2 1/2 0; 1/2 1/2 0} = -1/2.
        let v = classical_six_j(s(1), s(1), s(0), s(1), s(1), s(0));
        assert!((v + 0.5).abs() < 1e-12, "got {v}");
        // Inadmissible -> 0.
        assert_eq!(classical_six_j(s(1), s(1), s(3), s(1), s(1), s(0)), 0.0);
    }

    #[test]
    fn classical_column_permutation_symmetry() {
        let tab = [s(2), s(2), s(2), s(2), s(2), s(2)];
        let base = classical_six_j(tab[0], tab[1], tab[2], tab[3], tab[4], tab[5]);
        // Columns are (j1,j3), (j2,j), (j12,j23); all 6 permutations agree.
        let cols = [(tab[0], tab[3]), (tab[1], tab[4]), (tab[2], tab[5])];
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        for p in perms {
            let v = classical_six_j(
                cols[p[0]].0,
                cols[p[1]].0,
                cols[p[2]].0,
                cols[p[0]].1,
                cols[p[1]].1,
                cols[p[2]].1,
            );
            assert!((v - base).abs() < 1e-12);
        }
    }

    #[test]
    fn q_six_j_column_symmetry_all_su24_tableaux() {
        let lvl = DeformationLevel::new(4);
        let labels: Vec<SpinLabel> = (0..=4).map(s).collect();
        let mut checked = 0usize;
        for &j1 in &labels {
            for &j2 in &labels {
                for &j12 in &labels {
                    for &j3 in &labels {
                        for &j in &labels {
                            for &j23 in &labels {
                                let base = q_six_j(j1, j2, j12, j3, j, j23, &lvl);
                                if base.norm() < 1e-12 {
                                    continue;
                                }
                                checked += 1;
                                let cols = [(j1, j3), (j2, j), (j12, j23)];
                                for p in
                                    [[1usize, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]]
                                {
                                    let v = q_six_j(
                                        cols[p[0]].0,
                                        cols[p[1]].0,
                                        cols[p[2]].0,
                                        cols[p[0]].1,
                                        cols[p[1]].1,
                                        cols[p[2]].1,
                                        &lvl,
                                    );
                                    assert!(
                                        (v - base).norm() < TOL,
                                        "column symmetry broken at {j1} {j2} {j12}; {j3} {j} {j23}"
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
        assert!(checked > 50, "too few admissible tableaux exercised");
    }

    #[test]
    fn q_six_j_approaches_classical() {
        let tab = [s(2), s(2), s(2), s(2), s(2), s(2)];
        let classical = classical_six_j(tab[0], tab[1], tab[2], tab[3], tab[4], tab[5]);
        let at = |k: u32| {
            let lvl = DeformationLevel::new(k);
            q_six_j(tab[0], tab[1], tab[2], tab[3], tab[4], tab[5], &lvl)
        };
        let d200 = (at(200).re - classical).abs();
        let d1000 = (at(1000).re - classical).abs();
        assert!(d1000 < 1e-4, "k=1000 deviation {d1000}");
        assert!(
            d1000 < d200,
            "deviation must shrink with k: {d200} vs {d1000}"
        );
    }

    #[test]
    fn spin_label_display() {
        assert_eq!(s(0).to_string(), "0");
        assert_eq!(s(1).to_string(), "1/2");
        assert_eq!(s(4).to_string(), "2");
    }
}
