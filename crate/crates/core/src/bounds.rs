//! Exact Krawtchouk-polynomial machinery and the two upper bounds for
//! self-complementary codes, with their specializations to matrix-family
//! sizes, plus the association scheme axiom checker.
//!
//! The Krawtchouk polynomial of degree i for length n is
//! `K_i(z) = sum_j (-1)^j C(z,j) C(n-z, i-j)`. For a distance set S with
//! `n in S` that is closed under `i -> n-i`, the reduced annihilator
//! `prod_{i in S\{n}} (1 - z/i)` expands over K_0..K_{s-1} using only
//! degrees of parity s-1; the expansion coefficients drive both bounds:
//!
//! * absolute bound: `|C| <= 2 sum C(n,i)` over those degrees;
//! * linear programming bound: when all coefficients are nonnegative and
//!   the lowest-degree one is positive, `|C| <= floor(2 / alpha_delta)`.
//!
//! All arithmetic is exact rational; nothing here rounds.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::binary::{distance_distribution, BinaryCode};
use crate::error::{Error, Result};

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Exact Krawtchouk value `K_i(z)` for integer `z` in `0..=n`.
pub fn krawtchouk(n: u64, i: u64, z: u64) -> BigInt {
    let mut acc = BigInt::zero();
    for j in 0..=i.min(z) {
        let term = BigInt::from(binomial(z, j)) * BigInt::from(binomial(n - z, i - j));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Dense polynomial over exact rationals, coefficient of z^k at index k.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn constant(c: BigRational) -> Self {
        Poly(vec![c])
    }

    fn degree(&self) -> usize {
        self.0
            .iter()
            .rposition(|c| !c.is_zero())
            .unwrap_or(0)
    }

    fn coeff(&self, k: usize) -> BigRational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![BigRational::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn sub_scaled(&mut self, other: &Poly, scale: &BigRational) {
        if self.0.len() < other.0.len() {
            self.0.resize(other.0.len(), BigRational::zero());
        }
        for (i, b) in other.0.iter().enumerate() {
            self.0[i] -= scale * b;
        }
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// `C(z, j)` as a polynomial in z.
fn falling_binomial(j: u64) -> Poly {
    let mut p = Poly::constant(BigRational::one());
    for t in 0..j {
        // (z - t) / (t + 1)
        let factor = Poly(vec![
            rational(-(t as i64), t as i64 + 1),
            rational(1, t as i64 + 1),
        ]);
        p = p.mul(&factor);
    }
    p
}

/// `C(n - z, j)` as a polynomial in z.
fn falling_binomial_complement(n: u64, j: u64) -> Poly {
    let mut p = Poly::constant(BigRational::one());
    for t in 0..j {
        // (n - z - t) / (t + 1)
        let factor = Poly(vec![
            rational(n as i64 - t as i64, t as i64 + 1),
            rational(-1, t as i64 + 1),
        ]);
        p = p.mul(&factor);
    }
    p
}

/// `K_i(z)` as a polynomial in z.
fn krawtchouk_poly(n: u64, i: u64) -> Poly {
    let mut acc = Poly::constant(BigRational::zero());
    for j in 0..=i {
        let term = falling_binomial(j).mul(&falling_binomial_complement(n, i - j));
        let sign = if j % 2 == 0 {
            BigRational::one()
        } else {
            -BigRational::one()
        };
        acc.sub_scaled(&term, &-sign);
    }
    acc
}

/// Coefficients of a polynomial in the Krawtchouk basis for fixed n.
#[derive(Clone, Debug, PartialEq)]
pub struct KrawtchoukExpansion {
    pub n: u64,
    pub coeffs: BTreeMap<u64, BigRational>,
}

impl KrawtchoukExpansion {
    /// Exact evaluation at integer z.
    pub fn eval(&self, z: u64) -> BigRational {
        self.coeffs
            .iter()
            .map(|(&i, c)| c * BigRational::from_integer(krawtchouk(self.n, i, z)))
            .sum()
    }
}

/// Expands the reduced annihilator `prod_{i in S\{n}} (1 - z/i)` in the
/// Krawtchouk basis. `S` must contain n and be closed under `i -> n - i`.
/// Only degrees `i = s - 1 (mod 2)`, `i <= s - 1` carry nonzero
/// coefficients.
pub fn annihilator_expansion(n: u64, s_set: &[u64]) -> Result<KrawtchoukExpansion> {
    let set: std::collections::BTreeSet<u64> = s_set.iter().copied().collect();
    if !set.contains(&n) {
        return Err(Error::BadDistanceSet { offender: n as usize });
    }
    for &a in &set {
        if a == 0 || a > n {
            return Err(Error::BadDistanceSet { offender: a as usize });
        }
        if a != n && !set.contains(&(n - a)) {
            return Err(Error::BadDistanceSet { offender: a as usize });
        }
    }
    let s = set.len() as u64;
    let mut poly = Poly::constant(BigRational::one());
    for &i in set.iter().filter(|&&i| i != n) {
        // (1 - z/i)
        poly = poly.mul(&Poly(vec![
            BigRational::one(),
            BigRational::new(BigInt::from(-1), BigInt::from(i)),
        ]));
    }
    let mut coeffs = BTreeMap::new();
    while !poly.is_zero() {
        let d = poly.degree() as u64;
        let k = krawtchouk_poly(n, d);
        let alpha = poly.coeff(d as usize) / k.coeff(d as usize);
        poly.sub_scaled(&k, &alpha);
        if !alpha.is_zero() {
            coeffs.insert(d, alpha);
        }
    }
    debug_assert!(
        coeffs.keys().all(|&i| i <= s - 1 && i % 2 == (s - 1) % 2),
        "expansion degrees must have parity s-1"
    );
    Ok(KrawtchoukExpansion { n, coeffs })
}

/// Absolute bound for self-complementary codes of length n and degree s:
/// `2 sum C(n,i)` over `i <= s-1` with `i = s-1 (mod 2)`.
pub fn absolute_bound(n: u64, s: u64) -> Result<u128> {
    let mut acc = BigUint::zero();
    let mut i = (s - 1) % 2;
    while i <= s - 1 {
        acc += binomial(n, i);
        i += 2;
        if i == 0 {
            break;
        }
    }
    (BigUint::from(2u32) * acc)
        .to_u128()
        .ok_or(Error::Overflow)
}

/// Linear programming bound: `floor(2 / alpha_delta)` when the expansion
/// coefficients are all nonnegative and the parity-lowest one is positive;
/// `None` when the hypothesis fails.
pub fn lp_bound(n: u64, s_set: &[u64]) -> Result<Option<u128>> {
    let expansion = annihilator_expansion(n, s_set)?;
    let s = s_set
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .len() as u64;
    // delta = 0 for odd s, 1 for even s
    let delta = if s % 2 == 1 { 0 } else { 1 };
    if expansion.coeffs.values().any(|c| c.is_negative()) {
        return Ok(None);
    }
    let Some(alpha_delta) = expansion.coeffs.get(&delta) else {
        return Ok(None);
    };
    if !alpha_delta.is_positive() {
        return Ok(None);
    }
    let bound = (BigRational::from_integer(BigInt::from(2)) / alpha_delta).floor();
    bound.to_integer().to_u128().ok_or(Error::Overflow).map(Some)
}

/// Matrix-count bounds for mutually quasi-unbiased families of order n with
/// `a = 4 alpha^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct QubBounds {
    /// `floor((n^2 - 3n + 8)/6)`.
    pub absolute_raw: u64,
    /// Raw bound minus one when the raw value is attained only with
    /// `4 alpha^2 = 3n - 8` and that fails here.
    pub absolute_refined: u64,
    /// `floor((n^2 - 4 alpha^2)/(3n - 4 alpha^2 - 2))` when the denominator
    /// is positive.
    pub lp: Option<u64>,
}

/// The two bounds on the size of a set of mutually quasi-unbiased Hadamard
/// matrices of order n with parameters `((n/2 alpha)^2, 4 alpha^2)`.
pub fn qub_bounds(n: u64, alpha: u64) -> QubBounds {
    let raw_num = n * n - 3 * n + 8;
    let absolute_raw = raw_num / 6;
    let exact = raw_num % 6 == 0;
    let absolute_refined = if exact && 4 * alpha * alpha != 3 * n - 8 {
        absolute_raw - 1
    } else {
        absolute_raw
    };
    let denom = 3 * n as i64 - 4 * (alpha * alpha) as i64 - 2;
    let lp = (denom > 0).then(|| (n * n - 4 * alpha * alpha) / denom as u64);
    QubBounds {
        absolute_raw,
        absolute_refined,
        lp,
    }
}

/// Matrix-count bounds for mutually Type II weakly unbiased families; `a`
/// and `b` are the binary distance offsets (half the sigma values).
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct WeakTwoBounds {
    /// `floor((n^4 - 10n^3 + 55n^2 - 110n + 184)/120)`.
    pub absolute: u64,
    /// The s = 6 linear programming specialization, when its two positivity
    /// hypotheses hold.
    pub lp: Option<u64>,
}

pub fn weak2_bounds(n: u64, a: u64, b: u64) -> WeakTwoBounds {
    let n = n as i128;
    let (a2, b2) = ((a * a) as i128, (b * b) as i128);
    let absolute = ((n * n * n * n - 10 * n * n * n + 55 * n * n - 110 * n + 184) / 120) as u64;
    let denom = 15 * n * n - 30 * n + 16 - 4 * (3 * n - 2) * (a2 + b2) + 16 * a2 * b2;
    let side = 5 * (n - 2) - 2 * a2 - 2 * b2;
    let lp = (denom > 0 && side >= 0)
        .then(|| (((n * n - 4 * a2) * (n * n - 4 * b2)) / denom) as u64);
    WeakTwoBounds { absolute, lp }
}

/// Result of checking the symmetric association scheme axioms on the
/// distance classes of a code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SchemeReport {
    /// All axioms hold; carries the class distances and the intersection
    /// numbers `p[i][j][k]`.
    Valid {
        distances: Vec<usize>,
        p: Vec<Vec<Vec<i64>>>,
    },
    /// First failing axiom, described.
    Invalid { axiom: String },
}

impl SchemeReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, SchemeReport::Valid { .. })
    }
}

/// Checks the symmetric association scheme axioms for the distance classes
/// `R_i = {(x,y) : d(x,y) = beta_i}` of a code of degree at most 4: the
/// identity class, completeness, symmetry, and closure of products with
/// constant intersection numbers.
pub fn verify_association_scheme(code: &BinaryCode) -> Result<SchemeReport> {
    let dist = distance_distribution(code)?;
    let support = dist.support();
    if support.len() > 4 {
        return Err(Error::DegreeTooLarge {
            degree: support.len(),
            max: 4,
        });
    }
    let mut distances = vec![0usize];
    distances.extend(&support);
    let m = code.len();
    let words = code.words();
    let classes = distances.len();
    // class index of each ordered pair, or None if some distance occurs
    // that is not in the class list (cannot happen: support is exhaustive)
    let mut class_of = vec![vec![0usize; m]; m];
    for u in 0..m {
        for v in 0..m {
            let d = words[u].distance(&words[v]);
            match distances.iter().position(|&x| x == d) {
                Some(k) => class_of[u][v] = k,
                None => {
                    return Ok(SchemeReport::Invalid {
                        axiom: format!("distance {d} outside class list"),
                    })
                }
            }
        }
    }
    // A_0 = I and sum A_i = J hold by construction of class_of; symmetry:
    for u in 0..m {
        for v in 0..m {
            if class_of[u][v] != class_of[v][u] {
                return Ok(SchemeReport::Invalid {
                    axiom: format!("class not symmetric at ({u},{v})"),
                });
            }
        }
    }
    // Bitset rows of each A_i for popcount products.
    let blocks = m.div_ceil(64);
    let mut rows = vec![vec![0u64; m * blocks]; classes];
    for u in 0..m {
        for v in 0..m {
            let k = class_of[u][v];
            rows[k][u * blocks + v / 64] |= 1 << (v % 64);
        }
    }
    let mut p = vec![vec![vec![-1i64; classes]; classes]; classes];
    for i in 0..classes {
        for j in 0..classes {
            for u in 0..m {
                for v in 0..m {
                    // (A_i A_j)[u][v] = |{w : d(u,w)=b_i, d(w,v)=b_j}|
                    // = popcount(row_i(u) & row_j(v)) by symmetry of A_j.
                    let mut acc = 0i64;
                    for b in 0..blocks {
                        acc += (rows[i][u * blocks + b] & rows[j][v * blocks + b]).count_ones()
                            as i64;
                    }
                    let k = class_of[u][v];
                    if p[i][j][k] < 0 {
                        p[i][j][k] = acc;
                    } else if p[i][j][k] != acc {
                        return Ok(SchemeReport::Invalid {
                            axiom: format!(
                                "product A_{i} A_{j} not constant on class {k}: {} vs {acc}",
                                p[i][j][k]
                            ),
                        });
                    }
                }
            }
        }
    }
    for i in 0..classes {
        for j in 0..classes {
            for k in 0..classes {
                if p[i][j][k] < 0 {
                    p[i][j][k] = 0;
                }
            }
        }
    }
    Ok(SchemeReport::Valid { distances, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::code_of_hadamard;
    use crate::fixtures;

    #[test]
    fn krawtchouk_basics() {
        for z in 0..=8 {
            assert_eq!(krawtchouk(8, 0, z), BigInt::from(1));
        }
        // K_1(z) = n - 2z
        assert_eq!(krawtchouk(8, 1, 3), BigInt::from(2));
        // direct summation example
        assert_eq!(krawtchouk(8, 2, 4), BigInt::from(-4));
    }

    #[test]
    fn krawtchouk_recursion_small() {
        // K_1 K_i = (n-i+1) K_{i-1} + (i+1) K_{i+1}
        for n in [6u64, 12] {
            for i in 1..n {
                for z in 0..=n {
                    let left = krawtchouk(n, 1, z) * krawtchouk(n, i, z);
                    let right = BigInt::from(n - i + 1) * krawtchouk(n, i - 1, z)
                        + BigInt::from(i + 1) * krawtchouk(n, i + 1, z);
                    assert_eq!(left, right);
                }
            }
        }
    }

    #[test]
    fn annihilator_s4_closed_form() {
        // S = {n/2 - alpha, n/2, n/2 + alpha, n}: coefficients
        // (3n - 4a^2 - 2)/(n(n^2-4a^2)) at K_1 and 6/(n(n^2-4a^2)) at K_3.
        for (n, alpha) in [(12u64, 2u64), (16, 2), (24, 4), (48, 4)] {
            let s = vec![n / 2 - alpha, n / 2, n / 2 + alpha, n];
            let e = annihilator_expansion(n, &s).unwrap();
            assert_eq!(e.coeffs.len(), 2);
            let denom = BigInt::from(n * (n * n - 4 * alpha * alpha));
            let k1 = BigRational::new(
                BigInt::from(3 * n as i64 - 4 * (alpha * alpha) as i64 - 2),
                denom.clone(),
            );
            let k3 = BigRational::new(BigInt::from(6), denom);
            assert_eq!(e.coeffs[&1], k1);
            assert_eq!(e.coeffs[&3], k3);
        }
    }

    #[test]
    fn annihilator_vanishes_on_s_and_is_one_at_zero() {
        let s = vec![8u64, 10, 12, 14, 16, 24];
        let e = annihilator_expansion(24, &s).unwrap();
        assert_eq!(e.eval(0), BigRational::one());
        for &z in &s {
            if z != 24 {
                assert!(e.eval(z).is_zero(), "nonzero at {z}");
            }
        }
    }

    #[test]
    fn annihilator_of_single_n_is_k0() {
        let e = annihilator_expansion(12, &[12]).unwrap();
        assert_eq!(e.coeffs.len(), 1);
        assert_eq!(e.coeffs[&0], BigRational::one());
    }

    #[test]
    fn annihilator_rejects_asymmetric_sets() {
        assert!(annihilator_expansion(12, &[4, 12]).is_err());
        assert!(annihilator_expansion(12, &[4, 8]).is_err());
    }

    #[test]
    fn absolute_bound_values() {
        // s = 4: 2(C(n,1) + C(n,3))
        assert_eq!(absolute_bound(12, 4).unwrap(), 2 * (12 + 220));
        // s = 1: only weights {0}
        assert_eq!(absolute_bound(10, 1).unwrap(), 2);
        // s = 6, n = 24: matrix form floor(5569/3) = 1856 after /(2n)
        let code_bound = absolute_bound(24, 6).unwrap();
        assert_eq!(code_bound / 48, 1856);
    }

    #[test]
    fn lp_bound_table_two_entries() {
        // n=12, alpha=2: code bound floor(512/3) = 170, matrix bound 7
        let b = lp_bound(12, &[4, 6, 8, 12]).unwrap().unwrap();
        assert_eq!(b, 170);
        assert_eq!(b / 24, 7);
        // n=16, alpha=4 (l=4): hypothesis fails
        assert_eq!(lp_bound(16, &[4, 8, 12, 16]).unwrap(), None);
        // n=48, alpha=4: matrix bound floor(1120/39) = 28
        assert_eq!(qub_bounds(48, 4).lp, Some(28));
    }

    #[test]
    fn qub_bounds_refinement() {
        let b16 = qub_bounds(16, 2);
        assert_eq!(b16.absolute_raw, 36);
        assert_eq!(b16.absolute_refined, 35);
        assert_eq!(b16.lp, Some(8));
        let b24 = qub_bounds(24, 4);
        assert_eq!(b24.absolute_raw, 85);
        assert_eq!(b24.absolute_refined, 85);
        assert_eq!(b24.lp, Some(85));
        let b32 = qub_bounds(32, 4);
        assert_eq!(b32.absolute_raw, 156);
        assert_eq!(b32.lp, Some(32));
    }

    #[test]
    fn qub_bounds_match_generic_lp() {
        for (n, alpha) in [(12u64, 2u64), (16, 2), (24, 4), (32, 4), (36, 3), (40, 4), (48, 4)] {
            let s = vec![n / 2 - alpha, n / 2, n / 2 + alpha, n];
            let generic = lp_bound(n, &s).unwrap();
            let special = qub_bounds(n, alpha).lp;
            match (generic, special) {
                (None, None) => {}
                (Some(code_bound), Some(matrix_bound)) => {
                    assert_eq!(code_bound as u64 / (2 * n), matrix_bound);
                }
                other => panic!("mismatch for ({n},{alpha}): {other:?}"),
            }
        }
    }

    #[test]
    fn weak2_bounds_table_rows() {
        assert_eq!(
            weak2_bounds(24, 2, 4),
            WeakTwoBounds {
                absolute: 1856,
                lp: Some(85)
            }
        );
        assert_eq!(weak2_bounds(32, 2, 6).lp, Some(528));
        assert_eq!(weak2_bounds(36, 2, 8).lp, None);
        assert_eq!(weak2_bounds(48, 2, 6).lp, Some(388));
        assert_eq!(weak2_bounds(48, 2, 2 * 7).lp, None);
    }

    #[test]
    fn weak2_bounds_match_generic_lp() {
        for (n, a, b) in [(24u64, 2u64, 4u64), (32, 2, 6), (36, 2, 4), (40, 2, 4), (48, 2, 4), (48, 2, 6)] {
            let s = vec![n / 2 - b, n / 2 - a, n / 2, n / 2 + a, n / 2 + b, n];
            let generic = lp_bound(n, &s).unwrap();
            let special = weak2_bounds(n, a, b).lp;
            match (generic, special) {
                (None, None) => {}
                (Some(code_bound), Some(matrix_bound)) => {
                    assert_eq!(code_bound as u64 / (2 * n), matrix_bound, "n={n} a={a} b={b}");
                }
                other => panic!("mismatch for ({n},{a},{b}): {other:?}"),
            }
        }
    }

    #[test]
    fn scheme_axioms_on_hadamard_code() {
        let h8 = {
            let h2 = crate::matrix::SignMatrix::from_sign_rows(&["++", "+-"]).unwrap();
            h2.kronecker(&h2).unwrap().kronecker(&h2).unwrap()
        };
        let c = code_of_hadamard(&h8).unwrap();
        let report = verify_association_scheme(&c).unwrap();
        assert!(report.is_valid());
    }

    #[test]
    fn scheme_axioms_on_lp_tight_code() {
        // B8,7,1 attains the LP bound 2n(n^2-4a^2)/(3n-4a^2-2) = 128.
        let c = fixtures::b8_code(7, 1).unwrap();
        assert_eq!(c.len(), 128);
        let report = verify_association_scheme(&c).unwrap();
        assert!(report.is_valid());
    }

    #[test]
    fn scheme_axioms_fail_on_perturbed_code() {
        // Drop one word from B8,7,1 and complement-close: no longer a scheme.
        let full = fixtures::b8_code(7, 1).unwrap();
        let words: Vec<crate::bitvec::BitVec> = full.words()[2..].to_vec();
        let c = BinaryCode::new(8, words).unwrap();
        let report = verify_association_scheme(&c).unwrap();
        assert!(!report.is_valid());
    }

    #[test]
    fn scheme_degree_cap() {
        // random-ish code of degree > 4 errors out
        let mut words = vec![crate::bitvec::BitVec::zeros(8)];
        for i in 1..=6 {
            let mut w = crate::bitvec::BitVec::zeros(8);
            for j in 0..i {
                w.set(j, true);
            }
            words.push(w);
        }
        let c = BinaryCode::new(8, words).unwrap();
        assert!(verify_association_scheme(&c).is_err());
    }
}
