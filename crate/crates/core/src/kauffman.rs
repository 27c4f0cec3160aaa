//! Kauffman bracket and Jones polynomial for links presented as trace
//! closures of braid words, evaluated by the exhaustive state sum over
//! crossing smoothings with loops counted by union-find.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Laurent polynomial in the variable A with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        if coeff != 0 {
            coeffs.insert(exp, coeff);
        }
        Self { coeffs }
    }

    /// d = -(A^2 + A^{-2}), the loop value.
    pub fn loop_value() -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(2, -1);
        coeffs.insert(-2, -1);
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_assign(&mut self, other: &LaurentPoly) {
        for (&e, &c) in other.coeffs.iter() {
            let entry = self.coeffs.entry(e).or_insert(0);
            *entry += c;
            if *entry == 0 {
                self.coeffs.remove(&e);
            }
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in self.coeffs.iter() {
            for (&e2, &c2) in other.coeffs.iter() {
                let entry = out.coeffs.entry(e1 + e2).or_insert(0);
                *entry += c1 * c2;
                if *entry == 0 {
                    out.coeffs.remove(&(e1 + e2));
                }
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute A -> A^{-1} (mirror image).
    pub fn mirror(&self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect();
        Self { coeffs }
    }

    pub fn eval(&self, a: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .map(|(&e, &c)| a.powi(e as i32) * Complex64::new(c as f64, 0.0))
            .sum()
    }

    /// (exponent, coefficient) pairs in descending exponent order.
    pub fn terms(&self) -> Vec<(i64, i64)> {
        self.coeffs.iter().rev().map(|(&e, &c)| (e, c)).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .rev()
            .map(|(&e, &c)| {
                if e == 0 {
                    format!("{c}")
                } else {
                    format!("{c}*A^{e}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// A braid word on n strands: signed generator indices, +i for sigma_i and
/// -i for its inverse, with 1 <= |i| <= n-1.
#[derive(Debug, Clone)]
pub struct BraidWord {
    n_strands: usize,
    letters: Vec<i32>,
}

/// State-sum words are capped here; 2^20 smoothings is the practical ceiling.
pub const MAX_LETTERS: usize = 20;

impl BraidWord {
    pub fn new(n_strands: usize, letters: Vec<i32>) -> Result<Self> {
        if n_strands == 0 {
            return Err(Error::Domain("a braid needs at least one strand".into()));
        }
        for &l in &letters {
            let idx = l.unsigned_abs() as usize;
            if l == 0 || idx >= n_strands {
                return Err(Error::Domain(format!(
                    "generator {l} out of range for {n_strands} strands"
                )));
            }
        }
        Ok(Self { n_strands, letters })
    }

    pub fn n_strands(&self) -> usize {
        self.n_strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    /// Parses a whitespace-separated list of signed generator indices.
    pub fn parse(n_strands: usize, text: &str) -> Result<Self> {
        let letters: Result<Vec<i32>> = text
            .split_whitespace()
            .map(|tok| {
                tok.parse::<i32>()
                    .map_err(|_| Error::Parse(format!("bad braid letter '{tok}'")))
            })
            .collect();
        Self::new(n_strands, letters?)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new() -> Self {
        Self { parent: Vec::new() }
    }

    fn make(&mut self) -> usize {
        self.parent.push(self.parent.len());
        self.parent.len() - 1
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The Kauffman bracket of the trace closure: every crossing is resolved into
/// its two planar smoothings (sigma = A * identity + A^{-1} * cup-cap), each
/// closed loop contributes a factor d, and an isolated unknot counts 1.
pub fn bracket(word: &BraidWord) -> Result<LaurentPoly> {
    let c = word.letters.len();
    if c > MAX_LETTERS {
        return Err(Error::Domain(format!(
            "braid word has {c} letters; the state sum is capped at {MAX_LETTERS}"
        )));
    }
    let n = word.n_strands;
    let d = LaurentPoly::loop_value();
    let mut total = LaurentPoly::zero();
    for state in 0u32..(1 << c) {
        let mut uf = UnionFind::new();
        let bottom: Vec<usize> = (0..n).map(|_| uf.make()).collect();
        let mut current = bottom.clone();
        let mut exponent: i64 = 0;
        for (pos, &letter) in word.letters.iter().enumerate() {
            let i = letter.unsigned_abs() as usize - 1;
            let pick_b = (state >> pos) & 1 == 1;
            // For sigma_i the A-smoothing is the identity; for the inverse the
            // A-smoothing is the cup-cap.
            let (weight, cupcap) = if letter > 0 {
                if pick_b {
                    (-1, true)
                } else {
                    (1, false)
                }
            } else if pick_b {
                (-1, false)
            } else {
                (1, true)
            };
            exponent += weight;
            if cupcap {
                uf.union(current[i], current[i + 1]);
                let fresh = uf.make();
                current[i] = fresh;
                current[i + 1] = fresh;
            }
        }
        for i in 0..n {
            uf.union(current[i], bottom[i]);
        }
        let mut roots: Vec<usize> = (0..uf.parent.len()).map(|x| uf.find(x)).collect();
        roots.sort_unstable();
        roots.dedup();
        let loops = roots.len();
        let mut term = LaurentPoly::monomial(1, exponent);
        term = term.mul(&d.pow(loops as u32 - 1));
        total.add_assign(&term);
    }
    Ok(total)
}

/// Writhe: the sum of the letter signs.
pub fn writhe(word: &BraidWord) -> i64 {
    word.letters.iter().map(|&l| l.signum() as i64).sum()
}

/// Jones polynomial `V_L(A) = (-A^3)^{-w} <L>`.
pub fn jones(word: &BraidWord) -> Result<LaurentPoly> {
    let w = writhe(word);
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let correction = LaurentPoly::monomial(sign, -3 * w);
    Ok(correction.mul(&bracket(word)?))
}

/// Evaluates the two spacetime-history overlap diagrams as planar loop
/// counts: returns (<1|1>, <2|1>) = (d^2, d).
pub fn history_overlap() -> (LaurentPoly, LaurentPoly) {
    // Four endpoints; |1> pairs them side by side, |2> nested. Gluing a bra
    // to a ket traces the pairings into loops, each worth a factor d.
    let ket1: [usize; 4] = [1, 0, 3, 2];
    let ket2: [usize; 4] = [3, 2, 1, 0];
    let loops = |top: [usize; 4], bottom: [usize; 4]| -> u32 {
        let mut seen = [false; 4];
        let mut count = 0;
        for start in 0..4 {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut pos = start;
            loop {
                seen[pos] = true;
                pos = top[pos];
                seen[pos] = true;
                pos = bottom[pos];
                if pos == start {
                    break;
                }
            }
        }
        count
    };
    let d = LaurentPoly::loop_value();
    let one_one = d.pow(loops(ket1, ket1));
    let two_one = d.pow(loops(ket2, ket1));
    (one_one, two_one)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    fn poly(terms: &[(i64, i64)]) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for &(e, c) in terms {
            p.add_assign(&LaurentPoly::monomial(c, e));
        }
        p
    }

    #[test]
    fn unknot_is_one() {
        let w = BraidWord::new(1, vec![]).unwrap();
        assert_eq!(bracket(&w).unwrap(), LaurentPoly::one());
        assert_eq!(jones(&w).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn positive_kink_gives_minus_a_cubed() {
        let w = BraidWord::new(2, vec![1]).unwrap();
        assert_eq!(bracket(&w).unwrap(), poly(&[(3, -1)]));
        // The Jones normalization cancels the kink.
        assert_eq!(jones(&w).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn hopf_link_bracket() {
        let w = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(bracket(&w).unwrap(), poly(&[(4, -1), (-4, -1)]));
    }

    #[test]
    fn writhe_examples() {
        assert_eq!(writhe(&BraidWord::new(2, vec![]).unwrap()), 0);
        assert_eq!(writhe(&BraidWord::new(2, vec![1, 1]).unwrap()), 2);
        assert_eq!(writhe(&BraidWord::new(3, vec![1, -2]).unwrap()), 0);
    }

    #[test]
    fn trefoil_and_mirror_related_by_inversion() {
        let trefoil = BraidWord::new(2, vec![1, 1, 1]).unwrap();
        let mirror = BraidWord::new(2, vec![-1, -1, -1]).unwrap();
        let v = jones(&trefoil).unwrap();
        let vm = jones(&mirror).unwrap();
        assert_eq!(v.mirror(), vm);
        assert_ne!(v, vm);
    }

    #[test]
    fn split_union_multiplies_by_d() {
        let w = BraidWord::new(2, vec![1, 1]).unwrap();
        let with_spare = BraidWord::new(3, vec![1, 1]).unwrap();
        let expect = bracket(&w).unwrap().mul(&LaurentPoly::loop_value());
        assert_eq!(bracket(&with_spare).unwrap(), expect);
    }

    fn random_word(rng: &mut SplitMix64, n: usize, len: usize) -> Vec<i32> {
        (0..len)
            .map(|_| {
                let idx = rng.next_below((n - 1) as u64) as i32 + 1;
                if rng.next_below(2) == 0 {
                    idx
                } else {
                    -idx
                }
            })
            .collect()
    }

    #[test]
    fn reidemeister_two_invariance() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..60 {
            let n = 3;
            let base = random_word(&mut rng, n, 5);
            let cut = rng.next_below(base.len() as u64 + 1) as usize;
            let g = rng.next_below((n - 1) as u64) as i32 + 1;
            let mut padded = base.clone();
            padded.splice(cut..cut, [g, -g]);
            let a = bracket(&BraidWord::new(n, base).unwrap()).unwrap();
            let b = bracket(&BraidWord::new(n, padded).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn reidemeister_three_invariance() {
        let mut rng = SplitMix64::new(23);
        for _ in 0..60 {
            let n = 3;
            let mut left = random_word(&mut rng, n, 3);
            let mut right = left.clone();
            left.extend([1, 2, 1]);
            right.extend([2, 1, 2]);
            let tail = random_word(&mut rng, n, 3);
            left.extend(&tail);
            right.extend(&tail);
            let a = bracket(&BraidWord::new(n, left).unwrap()).unwrap();
            let b = bracket(&BraidWord::new(n, right).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn jones_invariant_under_markov_stabilization() {
        let mut rng = SplitMix64::new(37);
        for _ in 0..40 {
            let n = 3;
            let base = random_word(&mut rng, n, 6);
            let mut stabilized = base.clone();
            let sign = if rng.next_below(2) == 0 { 1 } else { -1 };
            stabilized.push(sign * n as i32);
            let a = jones(&BraidWord::new(n, base).unwrap()).unwrap();
            let b = jones(&BraidWord::new(n + 1, stabilized).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn history_overlaps() {
        let (one_one, two_one) = history_overlap();
        // <1|1> = d^2 = (A^2 + A^{-2})^2 and <2|1> = d.
        assert_eq!(one_one, poly(&[(4, 1), (0, 2), (-4, 1)]));
        assert_eq!(two_one, LaurentPoly::loop_value());
        // d vanishes at A = e^{i pi/4}; evaluation is still well defined.
        let a = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        assert!(two_one.eval(a).norm() < 1e-12);
    }

    #[test]
    fn word_validation() {
        assert!(BraidWord::new(2, vec![2]).is_err());
        assert!(BraidWord::new(2, vec![0]).is_err());
        assert!(BraidWord::new(0, vec![]).is_err());
        assert!(BraidWord::parse(3, "1 -2 1").is_ok());
        assert!(BraidWord::parse(3, "1 x").is_err());
        let long = vec![1i32; MAX_LETTERS + 1];
        assert!(bracket(&BraidWord::new(2, long).unwrap()).is_err());
    }

    #[test]
    fn display_format() {
        let w = BraidWord::new(2, vec![1, 1]).unwrap();
        assert_eq!(bracket(&w).unwrap().to_string(), "-1*A^4 + -1*A^-4");
        assert_eq!(LaurentPoly::one().to_string(), "1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
