//! Linear Z4-codes: Lee metric, Gray map, the first-order Reed-Muller
//! Z4-code ZRM(1,m), the balance conditions that produce quasi-unbiased and
//! weakly unbiased Hadamard matrices through the Gray image, and the
//! coordinate/codeword digraph whose isomorphism class captures code
//! equivalence.
//!
//! Vectors are stored as two bit-planes (low and high bit of each digit);
//! the component counts n_0(x), ..., n_3(x), the balance n_0(x) - n_2(x)
//! and the Lee weight n_1(x) + 2 n_2(x) + n_3(x) are popcount expressions.

use std::collections::HashSet;

use num_rational::Rational64;
use num_traits::Zero;

use crate::binary::{BinaryCode, DistanceDistribution};
use crate::bitvec::BitVec;
use crate::canon::{self, ColoredGraph};
use crate::error::{Error, Result};

/// Enumeration cap: classification never needs more than 2^11 codewords.
pub const MAX_WORDS_LOG2: u32 = 14;

const BITS: usize = 64;

/// Vector over Z4 packed as two bit-planes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z4Vector {
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl Z4Vector {
    pub fn zeros(n: usize) -> Self {
        let w = n.div_ceil(BITS).max(1);
        Z4Vector {
            lo: vec![0; w],
            hi: vec![0; w],
        }
    }

    pub fn from_digits(digits: &[u8]) -> Self {
        let mut v = Z4Vector::zeros(digits.len());
        for (i, &d) in digits.iter().enumerate() {
            v.set(i, d & 3);
        }
        v
    }

    pub fn get(&self, i: usize) -> u8 {
        let (b, s) = (i / BITS, i % BITS);
        ((self.lo[b] >> s & 1) | (self.hi[b] >> s & 1) << 1) as u8
    }

    pub fn set(&mut self, i: usize, d: u8) {
        let (b, s) = (i / BITS, i % BITS);
        self.lo[b] = self.lo[b] & !(1 << s) | u64::from(d & 1) << s;
        self.hi[b] = self.hi[b] & !(1 << s) | u64::from(d >> 1 & 1) << s;
    }

    /// Componentwise sum modulo 4.
    pub fn add(&self, other: &Z4Vector) -> Z4Vector {
        let mut out = self.clone();
        out.add_in_place(other);
        out
    }

    pub fn add_in_place(&mut self, other: &Z4Vector) {
        for b in 0..self.lo.len() {
            let carry = self.lo[b] & other.lo[b];
            self.lo[b] ^= other.lo[b];
            self.hi[b] ^= other.hi[b] ^ carry;
        }
    }

    /// Componentwise negation: 1 <-> 3.
    pub fn negated(&self) -> Z4Vector {
        let mut out = self.clone();
        for b in 0..out.lo.len() {
            out.hi[b] ^= out.lo[b];
        }
        out
    }

    /// Doubling: digits map 0,1,2,3 -> 0,2,0,2.
    pub fn doubled(&self) -> Z4Vector {
        let w = self.lo.len();
        let mut out = Z4Vector {
            lo: vec![0; w],
            hi: vec![0; w],
        };
        for b in 0..w {
            out.hi[b] = self.lo[b];
        }
        out
    }

    pub fn scaled(&self, c: u8) -> Z4Vector {
        match c & 3 {
            0 => Z4Vector {
                lo: vec![0; self.lo.len()],
                hi: vec![0; self.hi.len()],
            },
            1 => self.clone(),
            2 => self.doubled(),
            _ => self.negated(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lo.iter().all(|&w| w == 0) && self.hi.iter().all(|&w| w == 0)
    }

    /// Component counts (n_0, n_1, n_2, n_3) over the first `n` coordinates.
    pub fn component_counts(&self, n: usize) -> (usize, usize, usize, usize) {
        let (mut n1, mut n2, mut n3) = (0usize, 0usize, 0usize);
        for b in 0..self.lo.len() {
            let mask = tail_mask(n, b);
            let (lo, hi) = (self.lo[b] & mask, self.hi[b] & mask);
            n1 += (lo & !hi).count_ones() as usize;
            n2 += (hi & !lo).count_ones() as usize;
            n3 += (lo & hi).count_ones() as usize;
        }
        (n - n1 - n2 - n3, n1, n2, n3)
    }

    /// The balance n_0(x) - n_2(x).
    pub fn balance(&self, n: usize) -> i64 {
        let (n0, _, n2, _) = self.component_counts(n);
        n0 as i64 - n2 as i64
    }

    /// Lee weight n_1 + 2 n_2 + n_3.
    pub fn lee_weight(&self, n: usize) -> usize {
        let (_, n1, n2, n3) = self.component_counts(n);
        n1 + 2 * n2 + n3
    }

    pub fn to_digit_string(&self, n: usize) -> String {
        (0..n)
            .map(|i| char::from(b'0' + self.get(i)))
            .collect()
    }

    /// Gray image: each digit becomes the bit pair (hi, hi^lo), so
    /// 0 -> 00, 1 -> 01, 2 -> 11, 3 -> 10.
    pub fn gray_image(&self, n: usize) -> BitVec {
        let mut out = BitVec::zeros(2 * n);
        for i in 0..n {
            let d = self.get(i);
            out.set(2 * i, d >> 1 & 1 == 1);
            out.set(2 * i + 1, (d >> 1 ^ d) & 1 == 1);
        }
        out
    }
}

impl std::fmt::Debug for Z4Vector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Z4Vector({:x?}/{:x?})", self.lo, self.hi)
    }
}

fn tail_mask(n: usize, block: usize) -> u64 {
    if n >= (block + 1) * BITS {
        !0
    } else if n <= block * BITS {
        0
    } else {
        (1u64 << (n - block * BITS)) - 1
    }
}

/// A linear Z4-code: generator rows plus the enumerated codeword set
/// (always a power of two in size), sorted for determinism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Z4LinearCode {
    length: usize,
    generators: Vec<Z4Vector>,
    words: Vec<Z4Vector>,
}

impl Z4LinearCode {
    pub fn from_generators(length: usize, generators: &[Z4Vector]) -> Result<Self> {
        let mut set: HashSet<Z4Vector> = HashSet::new();
        set.insert(Z4Vector::zeros(length));
        for g in generators {
            let current: Vec<Z4Vector> = set.iter().cloned().collect();
            for c in 1..4u8 {
                let inc = g.scaled(c);
                for w in &current {
                    set.insert(w.add(&inc));
                }
            }
            if set.len() > 1 << MAX_WORDS_LOG2 {
                return Err(Error::CodeTooLarge {
                    cap: MAX_WORDS_LOG2,
                });
            }
        }
        let mut words: Vec<Z4Vector> = set.into_iter().collect();
        words.sort();
        debug_assert!(words.len().is_power_of_two());
        Ok(Z4LinearCode {
            length,
            generators: generators.to_vec(),
            words,
        })
    }

    /// Extends by one generator: `<self, x>`.
    pub fn extended(&self, x: &Z4Vector) -> Result<Z4LinearCode> {
        let mut gens = self.generators.clone();
        gens.push(x.clone());
        Z4LinearCode::from_generators(self.length, &gens)
    }

    /// Fast path for `<self, x>` when `2x` is already a codeword, so the
    /// result is exactly the union of `self` and `x + self`.
    pub fn extended_index_two(&self, x: &Z4Vector) -> Z4LinearCode {
        debug_assert!(self.contains(&x.doubled()));
        let mut words = self.words.clone();
        words.extend(self.words.iter().map(|w| w.add(x)));
        words.sort();
        let mut generators = self.generators.clone();
        generators.push(x.clone());
        Z4LinearCode {
            length: self.length,
            generators,
            words,
        }
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn generators(&self) -> &[Z4Vector] {
        &self.generators
    }

    pub fn words(&self) -> &[Z4Vector] {
        &self.words
    }

    pub fn contains(&self, x: &Z4Vector) -> bool {
        self.words.binary_search(x).is_ok()
    }

    /// True iff every word of `other` is a word of `self`.
    pub fn contains_code(&self, other: &Z4LinearCode) -> bool {
        other.words.iter().all(|w| self.contains(w))
    }

    /// Minimum Hamming distance (= minimum Hamming weight by linearity).
    pub fn min_hamming_distance(&self) -> Result<usize> {
        if self.len() < 2 {
            return Err(Error::TooFewWords);
        }
        Ok(self
            .words
            .iter()
            .filter(|w| !w.is_zero())
            .map(|w| {
                let (n0, ..) = w.component_counts(self.length);
                self.length - n0
            })
            .min()
            .unwrap())
    }

    /// Minimum Lee distance (= minimum Lee weight by linearity).
    pub fn min_lee_distance(&self) -> Result<usize> {
        if self.len() < 2 {
            return Err(Error::TooFewWords);
        }
        Ok(self
            .words
            .iter()
            .filter(|w| !w.is_zero())
            .map(|w| w.lee_weight(self.length))
            .min()
            .unwrap())
    }
}

/// Exact Lee distance distribution (A_0, ..., A_2n); by linearity the
/// distances from 0 give the whole distribution.
pub fn lee_distribution(code: &Z4LinearCode) -> DistanceDistribution {
    let n = code.length();
    let mut counts = vec![Rational64::zero(); 2 * n + 1];
    for w in code.words() {
        counts[w.lee_weight(n)] += Rational64::from_integer(1);
    }
    DistanceDistribution { n: 2 * n, counts }
}

/// Gray image as a binary (2n, |C|) code.
pub fn gray_map(code: &Z4LinearCode) -> BinaryCode {
    let n = code.length();
    let words: Vec<BitVec> = code.words().iter().map(|w| w.gray_image(n)).collect();
    BinaryCode::new(2 * n, words).expect("Gray map is injective")
}

/// The ZRM(1,m) generator rows: the all-ones vector over the doubled rows
/// of the standard RM(1,m) generator matrix.
pub fn zrm_generators(m: usize) -> Vec<Z4Vector> {
    let n = 1 << m;
    let mut gens = vec![Z4Vector::from_digits(&vec![1u8; n])];
    for k in 0..m {
        let mut row = Z4Vector::zeros(n);
        for j in 0..n {
            if j >> k & 1 == 1 {
                row.set(j, 2);
            }
        }
        gens.push(row);
    }
    gens
}

/// ZRM(1,m) for m in {2,3,4}; |ZRM(1,m)| = 2^{m+2}.
pub fn zrm_fixture(m: usize) -> Result<Z4LinearCode> {
    if !(2..=4).contains(&m) {
        return Err(Error::UnsupportedFixture {
            m,
            supported: "2..=4",
        });
    }
    Z4LinearCode::from_generators(1 << m, &zrm_generators(m))
}

/// Quasi-unbiased code check: the balance squares `(n_0 - n_2)^2` over all
/// codewords are exactly `{0, beta^2, n^2}`, and ZRM(1,m) is a subcode.
/// Returns beta. The Gray image then satisfies the binary conditions for a
/// family of `|C|/(4n)` mutually quasi-unbiased Hadamard matrices of order
/// 2n with parameters `(n^2/beta^2, 4 beta^2)`.
pub fn check_z4_qub(code: &Z4LinearCode) -> Option<u64> {
    let n = code.length();
    if !n.is_power_of_two() {
        return None;
    }
    let m = n.trailing_zeros() as usize;
    let mut squares = std::collections::BTreeSet::new();
    for w in code.words() {
        let b = w.balance(n);
        squares.insert((b * b) as u64);
    }
    let n2 = (n * n) as u64;
    let values: Vec<u64> = squares.into_iter().collect();
    let beta2 = match values.as_slice() {
        [0, b2, v] if *v == n2 => *b2,
        _ => return None,
    };
    let zrm = zrm_fixture(m).ok()?;
    if !code.contains_code(&zrm) {
        return None;
    }
    Some(integer_sqrt(beta2))
}

/// Which parity of balance values a weak-type check requires.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WeakParity {
    /// Weakly unbiased: odd a, b.
    Odd,
    /// Type II weakly unbiased: even a, b.
    Even,
}

/// Weak-type code check: balance squares exactly `{0, a^2, b^2, n^2}` with
/// the requested parity of a and b, exactly `4n - 2` codewords of balance
/// zero, and ZRM(1,m) as a subcode. Returns `(a, b)` with a < b.
pub fn check_z4_weak(code: &Z4LinearCode, parity: WeakParity) -> Option<(u64, u64)> {
    let n = code.length();
    if !n.is_power_of_two() {
        return None;
    }
    let m = n.trailing_zeros() as usize;
    let mut squares = std::collections::BTreeSet::new();
    let mut balanced = 0usize;
    for w in code.words() {
        let b = w.balance(n);
        if b == 0 {
            balanced += 1;
        }
        squares.insert((b * b) as u64);
    }
    if balanced != 4 * n - 2 {
        return None;
    }
    let n2 = (n * n) as u64;
    let values: Vec<u64> = squares.into_iter().collect();
    let (a2, b2) = match values.as_slice() {
        [0, a2, b2, v] if *v == n2 => (*a2, *b2),
        _ => return None,
    };
    let (a, b) = (integer_sqrt(a2), integer_sqrt(b2));
    let wanted = match parity {
        WeakParity::Odd => 1,
        WeakParity::Even => 0,
    };
    if a % 2 != wanted || b % 2 != wanted {
        return None;
    }
    let zrm = zrm_fixture(m).ok()?;
    if !code.contains_code(&zrm) {
        return None;
    }
    Some((a, b))
}

fn integer_sqrt(v: u64) -> u64 {
    let mut r = (v as f64).sqrt().round() as u64;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

/// The equivalence digraph: vertices are the nonzero codewords together
/// with (coordinate, value) pairs for values 1, 2, 3; a codeword points at
/// the (j, c_j) vertices of its nonzero coordinates, and each coordinate
/// gadget links (j,1) and (j,3) with (j,2) in both directions.
pub fn gamma_digraph(code: &Z4LinearCode) -> ColoredGraph {
    let n = code.length();
    let nonzero: Vec<&Z4Vector> = code.words().iter().filter(|w| !w.is_zero()).collect();
    let vcount = nonzero.len() + 3 * n;
    let mut colors = vec![0u32; nonzero.len()];
    colors.extend(std::iter::repeat(1).take(3 * n));
    let mut g = ColoredGraph::new(vcount, colors);
    let coord_vertex = |j: usize, v: u8| nonzero.len() + 3 * j + (v as usize - 1);
    for (i, w) in nonzero.iter().enumerate() {
        for j in 0..n {
            let d = w.get(j);
            if d != 0 {
                g.add_arc(i, coord_vertex(j, d));
            }
        }
    }
    for j in 0..n {
        for v in [1u8, 3] {
            g.add_arc(coord_vertex(j, v), coord_vertex(j, 2));
            g.add_arc(coord_vertex(j, 2), coord_vertex(j, v));
        }
    }
    g
}

/// Code equivalence under coordinate permutations and sign changes, decided
/// through canonical forms of the equivalence digraphs.
pub fn z4_equivalent(c1: &Z4LinearCode, c2: &Z4LinearCode) -> bool {
    c1.length() == c2.length()
        && c1.len() == c2.len()
        && canon::isomorphic(&gamma_digraph(c1), &gamma_digraph(c2))
}

/// The length-16 Kerdock Z4-code from the trace construction over the
/// Galois ring GR(4,4) = Z4[x]/(x^4 + 2x^2 + 3x + 1): codewords
/// `(eps + T(lambda t))_t` over the Teichmueller set, |K| = 4^5.
pub fn kerdock_fixture() -> Result<Z4LinearCode> {
    let gr = GaloisRing44::new();
    let points = gr.teichmuller_set();
    let mut gens = vec![Z4Vector::from_digits(&vec![1u8; 16])];
    for basis in 0..4 {
        let lambda = gr.monomial(basis);
        let digits: Vec<u8> = points
            .iter()
            .map(|t| gr.trace(gr.mul(lambda, *t)))
            .collect();
        gens.push(Z4Vector::from_digits(&digits));
    }
    Z4LinearCode::from_generators(16, &gens)
}

/// Arithmetic in GR(4,4), elements as degree-<4 polynomials over Z4.
struct GaloisRing44 {
    /// x^4 = -(2x^2 + 3x + 1) = 2x^2 + x + 3 reduced coefficients.
    reduction: [u8; 4],
}

type GrElem = [u8; 4];

impl GaloisRing44 {
    fn new() -> Self {
        // x^4 + 2x^2 + 3x + 1 = 0  =>  x^4 = -2x^2 - 3x - 1 = 2x^2 + x + 3
        GaloisRing44 {
            reduction: [3, 1, 2, 0],
        }
    }

    fn monomial(&self, k: usize) -> GrElem {
        let mut e = [0u8; 4];
        e[k] = 1;
        e
    }

    fn add(&self, a: GrElem, b: GrElem) -> GrElem {
        std::array::from_fn(|i| (a[i] + b[i]) & 3)
    }

    fn mul(&self, a: GrElem, b: GrElem) -> GrElem {
        let mut acc = [0u8; 8];
        for i in 0..4 {
            for j in 0..4 {
                acc[i + j] = (acc[i + j] + a[i] * b[j]) & 3;
            }
        }
        for deg in (4..8).rev() {
            let c = acc[deg];
            if c != 0 {
                acc[deg] = 0;
                for (i, &r) in self.reduction.iter().enumerate() {
                    acc[deg - 4 + i] = (acc[deg - 4 + i] + c * r) & 3;
                }
            }
        }
        std::array::from_fn(|i| acc[i])
    }

    fn pow(&self, mut base: GrElem, mut e: u64) -> GrElem {
        let mut acc = self.monomial(0);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// {0} together with the 15 powers of the Teichmueller unit x.
    fn teichmuller_set(&self) -> Vec<GrElem> {
        let xi = self.monomial(1);
        let mut points = vec![[0u8; 4]];
        let mut p = self.monomial(0);
        for _ in 0..15 {
            points.push(p);
            p = self.mul(p, xi);
        }
        points
    }

    /// Frobenius: a + 2b -> a^2 + 2b^2 on the 2-adic decomposition with
    /// a, b in the Teichmueller set.
    fn frobenius(&self, z: GrElem) -> GrElem {
        let (a, b) = self.teichmuller_decompose(z);
        self.add(self.mul(a, a), self.mul(self.mul(b, b), [2, 0, 0, 0]))
    }

    fn teichmuller_decompose(&self, z: GrElem) -> (GrElem, GrElem) {
        let a = self.teichmuller_lift(z);
        let diff: GrElem = std::array::from_fn(|i| (z[i] + 4 - a[i]) & 3);
        debug_assert!(diff.iter().all(|&c| c % 2 == 0));
        let half: GrElem = std::array::from_fn(|i| diff[i] >> 1);
        let b = self.teichmuller_lift(half);
        (a, b)
    }

    /// The unique Teichmueller element congruent to z mod 2.
    fn teichmuller_lift(&self, z: GrElem) -> GrElem {
        // t -> t^4 iterated stabilizes on the Teichmueller set and only
        // depends on z mod 2.
        let mut t = z;
        for _ in 0..4 {
            t = self.pow(t, 4);
        }
        t
    }

    /// Trace to Z4: z + F(z) + F^2(z) + F^3(z); the result is a constant
    /// polynomial.
    fn trace(&self, z: GrElem) -> u8 {
        let mut acc = [0u8; 4];
        let mut t = z;
        for _ in 0..4 {
            acc = self.add(acc, t);
            t = self.frobenius(t);
        }
        debug_assert_eq!(&acc[1..], &[0, 0, 0]);
        acc[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::binary::{distance_distribution, is_self_complementary};

    #[test]
    fn gray_map_single_digits() {
        let two = Z4Vector::from_digits(&[2]);
        assert_eq!(two.gray_image(1).to_bit_string(2), "11");
        assert_eq!(Z4Vector::from_digits(&[0]).gray_image(1).to_bit_string(2), "00");
        assert_eq!(Z4Vector::from_digits(&[1]).gray_image(1).to_bit_string(2), "01");
        assert_eq!(Z4Vector::from_digits(&[3]).gray_image(1).to_bit_string(2), "10");
    }

    #[test]
    fn zrm_sizes() {
        for m in 2..=4 {
            let c = zrm_fixture(m).unwrap();
            assert_eq!(c.len(), 1 << (m + 2));
            assert_eq!(c.length(), 1 << m);
        }
        assert!(zrm_fixture(5).is_err());
    }

    #[test]
    fn zrm_contains_doubled_ones() {
        let c = zrm_fixture(4).unwrap();
        let ones = Z4Vector::from_digits(&vec![1u8; 16]);
        assert!(c.contains(&ones.doubled()));
    }

    #[test]
    fn gray_image_of_zrm_is_self_complementary() {
        let c = zrm_fixture(4).unwrap();
        let img = gray_map(&c);
        assert_eq!(img.length(), 32);
        assert_eq!(img.len(), 64);
        assert!(is_self_complementary(&img));
    }

    #[test]
    fn gray_isometry_on_zrm() {
        let c = zrm_fixture(3).unwrap();
        let lee = lee_distribution(&c);
        let ham = distance_distribution(&gray_map(&c)).unwrap();
        assert_eq!(lee, ham);
    }

    #[test]
    fn zrm_fails_qub_check() {
        assert_eq!(check_z4_qub(&zrm_fixture(4).unwrap()), None);
    }

    #[test]
    fn zrm_fails_weak_check() {
        assert_eq!(check_z4_weak(&zrm_fixture(4).unwrap(), WeakParity::Odd), None);
        assert_eq!(check_z4_weak(&zrm_fixture(4).unwrap(), WeakParity::Even), None);
    }

    #[test]
    fn balance_identity() {
        // n_1 + 2 n_2 + n_3 = n - (n_0 - n_2) for every word.
        let c = zrm_fixture(3).unwrap();
        for w in c.words() {
            let n = c.length();
            assert_eq!(w.lee_weight(n) as i64, n as i64 - w.balance(n));
        }
    }

    #[test]
    fn gamma_digraph_counts() {
        let c = zrm_fixture(4).unwrap();
        let g = gamma_digraph(&c);
        assert_eq!(g.vertex_count(), 63 + 48);
        // codeword out-degree = number of nonzero coordinates
        let ones = Z4Vector::from_digits(&vec![1u8; 16]);
        let idx = c
            .words()
            .iter()
            .filter(|w| !w.is_zero())
            .position(|w| *w == ones)
            .unwrap();
        assert_eq!(g.out_degree(idx), 16);
        // gadget arcs: (j,2) has out-arcs to exactly (j,1),(j,3)
        let base = 63;
        assert_eq!(g.out_degree(base + 1), 2);
    }

    #[test]
    fn equivalence_under_permutation_and_sign_flip() {
        let c = zrm_fixture(3).unwrap();
        // swap coordinates 0 and 5
        let permuted: Vec<Z4Vector> = c
            .generators()
            .iter()
            .map(|g| {
                let mut digits: Vec<u8> = (0..8).map(|i| g.get(i)).collect();
                digits.swap(0, 5);
                Z4Vector::from_digits(&digits)
            })
            .collect();
        let cp = Z4LinearCode::from_generators(8, &permuted).unwrap();
        assert!(z4_equivalent(&c, &cp));
        // sign flip at coordinate 2
        let flipped: Vec<Z4Vector> = c
            .generators()
            .iter()
            .map(|g| {
                let mut digits: Vec<u8> = (0..8).map(|i| g.get(i)).collect();
                digits[2] = (4 - digits[2]) & 3;
                Z4Vector::from_digits(&digits)
            })
            .collect();
        let cf = Z4LinearCode::from_generators(8, &flipped).unwrap();
        assert!(z4_equivalent(&c, &cf));
    }

    #[test]
    fn kerdock_code_shape() {
        let k = kerdock_fixture().unwrap();
        assert_eq!(k.length(), 16);
        assert_eq!(k.len(), 1 << 10);
        // Kerdock satisfies the quasi-unbiased balance condition with
        // beta^2 = 16 after aligning coordinates; balance values alone:
        let mut squares: Vec<u64> = k
            .words()
            .iter()
            .map(|w| (w.balance(16) * w.balance(16)) as u64)
            .collect();
        squares.sort_unstable();
        squares.dedup();
        assert_eq!(squares, vec![0, 16, 256]);
    }
}

/// Test-support: exposes the classification candidate enumeration.
pub fn debug_enumerate_reps(code: &Z4LinearCode, visit: impl FnMut(&Z4Vector)) {
    crate::classify::enumerate_extension_reps_public(code, visit)
}
