//! Binary codes with exact distance distributions, the Hadamard code
//! `C(H)`, first-order Reed-Muller fixtures, and the checkers tying
//! self-complementary codes to quasi-unbiased and weakly unbiased
//! Hadamard matrix sets.
//!
//! The distance distribution of a code `C` of length n is
//! `A_i = |{(x,y) : d(x,y) = i}| / |C|`, kept as exact rationals. A code is
//! self-complementary when it is closed under adding the all-ones vector;
//! the Hadamard code of a normalized Hadamard matrix is the prototypical
//! example, with distribution `(A_0, A_{n/2}, A_n) = (1, 2n-2, 1)`.

use num_rational::Rational64;
use num_traits::Zero;

use crate::bitvec::BitVec;
use crate::error::{Error, Result};
use crate::matrix::{self, SignMatrix};

/// A binary `(n, M)` code: `M` distinct words of length `n`, in insertion
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryCode {
    length: usize,
    words: Vec<BitVec>,
}

impl BinaryCode {
    /// Builds a code from distinct words of the stated length.
    pub fn new(length: usize, words: Vec<BitVec>) -> Result<Self> {
        let expected_words = length.div_ceil(64).max(1);
        let mut seen = std::collections::HashSet::with_capacity(words.len());
        for (i, w) in words.iter().enumerate() {
            if w.words().len() != expected_words {
                return Err(Error::WordLengthMismatch {
                    index: i,
                    got: w.words().len() * 64,
                    expected: length,
                });
            }
            if !seen.insert(w.clone()) {
                return Err(Error::DuplicateWord { index: i });
            }
        }
        Ok(BinaryCode { length, words })
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

    pub fn words(&self) -> &[BitVec] {
        &self.words
    }

    pub fn contains(&self, w: &BitVec) -> bool {
        self.words.iter().any(|x| x == w)
    }

    /// The linear span of a set of generator rows.
    pub fn span(length: usize, generators: &[BitVec]) -> Result<Self> {
        let mut words = vec![BitVec::zeros(length)];
        let mut seen: std::collections::HashSet<BitVec> = words.iter().cloned().collect();
        for g in generators {
            let current: Vec<BitVec> = words.clone();
            for w in current {
                let s = w.xor(g);
                if seen.insert(s.clone()) {
                    words.push(s);
                }
            }
        }
        words.sort();
        BinaryCode::new(length, words)
    }

    /// Union of translates `u + C` for the given coset leaders (including
    /// the implicit leader 0 only if it is passed explicitly).
    pub fn union_of_cosets(base: &BinaryCode, leaders: &[BitVec]) -> Result<Self> {
        let mut words = Vec::with_capacity(base.len() * leaders.len());
        for u in leaders {
            for w in base.words() {
                words.push(u.xor(w));
            }
        }
        BinaryCode::new(base.length, words)
    }
}

/// Exact distance (or Lee) distribution `(A_0, ..., A_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceDistribution {
    pub n: usize,
    pub counts: Vec<Rational64>,
}

impl DistanceDistribution {
    /// Nonzero distances: `S(C) = {i >= 1 : A_i != 0}`.
    pub fn support(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.counts[i].is_zero()).collect()
    }

    /// Degree `s = |S(C)|`.
    pub fn degree(&self) -> usize {
        self.support().len()
    }

    pub fn total(&self) -> Rational64 {
        self.counts.iter().sum()
    }

    /// True iff `A_i = A_{n-i}` for all i.
    pub fn is_palindromic(&self) -> bool {
        (0..=self.n).all(|i| self.counts[i] == self.counts[self.n - i])
    }

    /// Integer counts, when every entry is integral.
    pub fn as_integers(&self) -> Option<Vec<i64>> {
        self.counts
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }
}

/// Exact distance distribution of a nonempty code.
pub fn distance_distribution(code: &BinaryCode) -> Result<DistanceDistribution> {
    if code.is_empty() {
        return Err(Error::EmptyCode);
    }
    let n = code.length();
    let mut pair_counts = vec![0i64; n + 1];
    let words = code.words();
    pair_counts[0] = words.len() as i64;
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            pair_counts[words[i].distance(&words[j])] += 2;
        }
    }
    let m = words.len() as i64;
    Ok(DistanceDistribution {
        n,
        counts: pair_counts
            .into_iter()
            .map(|c| Rational64::new(c, m))
            .collect(),
    })
}

/// Minimum Hamming distance; requires at least two words.
pub fn min_distance(code: &BinaryCode) -> Result<usize> {
    if code.len() < 2 {
        return Err(Error::TooFewWords);
    }
    let words = code.words();
    let mut best = code.length();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            best = best.min(words[i].distance(&words[j]));
        }
    }
    Ok(best)
}

/// True iff the code is closed under adding the all-ones vector.
pub fn is_self_complementary(code: &BinaryCode) -> bool {
    let ones = BitVec::ones(code.length());
    let set: std::collections::HashSet<&BitVec> = code.words().iter().collect();
    code.words().iter().all(|w| set.contains(&w.xor(&ones)))
}

/// The Hadamard code `C(H)`: the 2n rows of `(H+J)/2` and `(-H+J)/2` for a
/// normalized Hadamard matrix `H`.
pub fn code_of_hadamard(h: &SignMatrix) -> Result<BinaryCode> {
    if !h.is_hadamard() {
        return Err(Error::NotHadamard { order: h.order() });
    }
    if !matrix::is_normalized(h) {
        return Err(Error::NotNormalized);
    }
    let n = h.order();
    let mut words = Vec::with_capacity(2 * n);
    for i in 0..n {
        let mut w = BitVec::zeros(n);
        for j in 0..n {
            // +1 -> 0, -1 -> 1
            w.set(j, h.get(i, j) < 0);
        }
        let mut comp = w.clone();
        comp.xor_in_place(&BitVec::ones(n));
        words.push(w);
        words.push(comp);
    }
    BinaryCode::new(n, words)
}

/// The sign map on words: 0 -> +1, 1 -> -1, giving one +-1 row per word.
fn sign_row(w: &BitVec, n: usize) -> Vec<u64> {
    let mut row = vec![0u64; n.div_ceil(64).max(1)];
    row.copy_from_slice(w.words());
    row
}

/// Recovers the Hadamard matrices behind a code satisfying the block
/// conditions: one matrix per antipodal block with distribution
/// `(1, 2n-2, 1)`. When the caller knows the block structure (codes built
/// as unions of cosets), pass it; otherwise the decomposition is searched
/// for, greedily first and by exact backtracking if blocks overlap at
/// distance n/2.
pub fn psi_matrices(code: &BinaryCode, blocks: Option<&[Vec<usize>]>) -> Result<Vec<SignMatrix>> {
    let n = code.length();
    let owned;
    let blocks: &[Vec<usize>] = match blocks {
        Some(b) => b,
        None => {
            owned = decompose_blocks(code)?;
            &owned
        }
    };
    let words = code.words();
    let ones = BitVec::ones(n);
    let mut out = Vec::with_capacity(blocks.len());
    for block in blocks {
        if block.len() != 2 * n {
            return Err(Error::NoBlockDecomposition {
                w1: block.first().copied().unwrap_or(0),
                w2: 0,
            });
        }
        // One representative per antipodal pair: the lexicographically
        // smaller of {v, v + 1}; rows sorted for determinism.
        let mut reps: Vec<BitVec> = Vec::with_capacity(n);
        for &i in block {
            let w = &words[i];
            let comp = w.xor(&ones);
            if *w < comp {
                reps.push(w.clone());
            }
        }
        if reps.len() != n {
            return Err(Error::NoBlockDecomposition {
                w1: block[0],
                w2: block[block.len() - 1],
            });
        }
        reps.sort();
        let rows: Vec<Vec<u64>> = reps.iter().map(|w| sign_row(w, n)).collect();
        let m = SignMatrix::from_full_sign_bits(n, &rows);
        if !m.is_hadamard() {
            return Err(Error::NoBlockDecomposition {
                w1: block[0],
                w2: block[1],
            });
        }
        out.push(m);
    }
    Ok(out)
}

/// Partitions the word indexes into antipodal blocks of size 2n whose
/// internal distances are {0, n/2, n}.
pub fn decompose_blocks(code: &BinaryCode) -> Result<Vec<Vec<usize>>> {
    let n = code.length();
    let words = code.words();
    if words.len() % (2 * n) != 0 {
        return Err(Error::NoBlockDecomposition { w1: 0, w2: 0 });
    }
    let f = words.len() / (2 * n);
    // Greedy pass: a block is everything at distance {0, n/2, n} of a seed.
    // This is exact whenever inter-block words are never at distance n/2
    // (weak-type codes, and quasi-unbiased codes with l = n); otherwise it
    // overshoots and we fall back to backtracking.
    if let Some(blocks) = greedy_blocks(words, n, f) {
        return Ok(blocks);
    }
    backtrack_blocks(words, n, f).ok_or(Error::NoBlockDecomposition { w1: 0, w2: 1 })
}

fn greedy_blocks(words: &[BitVec], n: usize, f: usize) -> Option<Vec<Vec<usize>>> {
    let mut assigned = vec![false; words.len()];
    let mut blocks = Vec::with_capacity(f);
    for seed in 0..words.len() {
        if assigned[seed] {
            continue;
        }
        let members: Vec<usize> = (0..words.len())
            .filter(|&j| {
                !assigned[j] && {
                    let d = words[seed].distance(&words[j]);
                    d == 0 || d == n / 2 || d == n
                }
            })
            .collect();
        if members.len() != 2 * n {
            return None;
        }
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                let d = words[i].distance(&words[j]);
                if d != n / 2 && d != n {
                    return None;
                }
            }
        }
        for &i in &members {
            assigned[i] = true;
        }
        blocks.push(members);
    }
    (blocks.len() == f).then_some(blocks)
}

/// Exact search: group words into antipodal classes {w, w+1}, then partition
/// the classes into cliques of the orthogonality relation d = n/2.
fn backtrack_blocks(words: &[BitVec], n: usize, f: usize) -> Option<Vec<Vec<usize>>> {
    let ones = BitVec::ones(n);
    let mut class_of = vec![usize::MAX; words.len()];
    let mut classes: Vec<(usize, usize)> = Vec::new();
    let index: std::collections::HashMap<&BitVec, usize> =
        words.iter().enumerate().map(|(i, w)| (w, i)).collect();
    for i in 0..words.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        let j = *index.get(&words[i].xor(&ones))?;
        class_of[i] = classes.len();
        class_of[j] = classes.len();
        classes.push((i, j));
    }
    let c = classes.len();
    let ortho: Vec<Vec<bool>> = (0..c)
        .map(|a| {
            (0..c)
                .map(|b| words[classes[a].0].distance(&words[classes[b].0]) == n / 2)
                .collect()
        })
        .collect();
    let mut assignment = vec![usize::MAX; c];
    let mut block_sizes = vec![0usize; f];
    fn rec(
        at: usize,
        c: usize,
        n: usize,
        f: usize,
        ortho: &[Vec<bool>],
        assignment: &mut [usize],
        block_sizes: &mut [usize],
    ) -> bool {
        if at == c {
            return true;
        }
        let open_blocks = block_sizes.iter().filter(|&&s| s > 0).count();
        for b in 0..f.min(open_blocks + 1) {
            if block_sizes[b] == n {
                continue;
            }
            let compatible = (0..at).all(|other| assignment[other] != b || ortho[at][other]);
            if compatible {
                assignment[at] = b;
                block_sizes[b] += 1;
                if rec(at + 1, c, n, f, ortho, assignment, block_sizes) {
                    return true;
                }
                block_sizes[b] -= 1;
                assignment[at] = usize::MAX;
            }
        }
        false
    }
    if !rec(0, c, n, f, &ortho, &mut assignment, &mut block_sizes) {
        return None;
    }
    let mut blocks = vec![Vec::with_capacity(2 * n); f];
    for (cls, &b) in assignment.iter().enumerate() {
        blocks[b].push(classes[cls].0);
        blocks[b].push(classes[cls].1);
    }
    for b in blocks.iter_mut() {
        b.sort_unstable();
    }
    Some(blocks)
}

/// The code of a set of Hadamard matrices: all rows of each `H_i` and their
/// negations, pulled back through the sign map. For mutually quasi-unbiased
/// inputs this inverts `psi_matrices`.
pub fn code_of_matrix_set(ms: &[SignMatrix]) -> Result<BinaryCode> {
    if ms.is_empty() {
        return Err(Error::EmptyCode);
    }
    let n = ms[0].order();
    let ones = BitVec::ones(n);
    let mut words = Vec::with_capacity(2 * n * ms.len());
    for m in ms {
        for i in 0..n {
            let mut w = BitVec::zeros(n);
            for j in 0..n {
                w.set(j, m.get(i, j) < 0);
            }
            let comp = w.xor(&ones);
            words.push(w);
            words.push(comp);
        }
    }
    BinaryCode::new(n, words)
}

/// Checks the quasi-unbiased code conditions: `|C| = 2fn`,
/// self-complementary, support set exactly `{0, n/2 +- alpha, n/2, n}`, and
/// an f-block antipodal decomposition exists.
pub fn check_f2(code: &BinaryCode, alpha: usize, f: usize) -> bool {
    let n = code.length();
    if alpha == 0 || 2 * alpha >= n || code.len() != 2 * f * n {
        return false;
    }
    if !is_self_complementary(code) {
        return false;
    }
    let Ok(dist) = distance_distribution(code) else {
        return false;
    };
    let expected: Vec<usize> = {
        let mut s = vec![n / 2 - alpha, n / 2, n / 2 + alpha, n];
        s.sort_unstable();
        s.dedup();
        s
    };
    if dist.support() != expected {
        return false;
    }
    decompose_blocks(code).is_ok_and(|blocks| blocks.len() == f)
}

/// The five-point distribution `(1, (f-1)l, 2n-2+(f-1)(2n-2l), (f-1)l, 1)` at
/// distances `{0, n/2-alpha, n/2, n/2+alpha, n}` predicted for codes passing
/// `check_f2`.
pub fn predicted_distribution(n: usize, f: usize, l: usize) -> DistanceDistribution {
    let alpha = integer_sqrt(n * n / (4 * l));
    debug_assert_eq!((n / (2 * alpha)) * (n / (2 * alpha)), l);
    let mut counts = vec![Rational64::zero(); n + 1];
    let fl = ((f - 1) * l) as i64;
    counts[0] = Rational64::from_integer(1);
    counts[n] = Rational64::from_integer(1);
    counts[n / 2 - alpha] = Rational64::from_integer(fl);
    counts[n / 2 + alpha] = Rational64::from_integer(fl);
    counts[n / 2] = Rational64::from_integer((2 * n - 2 + (f - 1) * (2 * n - 2 * l)) as i64);
    DistanceDistribution { n, counts }
}

fn integer_sqrt(v: usize) -> usize {
    let mut r = (v as f64).sqrt().round() as usize;
    while r * r > v {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= v {
        r += 1;
    }
    r
}

fn check_weak_common(code: &BinaryCode, a: usize, b: usize, f: usize) -> bool {
    let n = code.length();
    if a == 0 || a >= b || 2 * b >= n || code.len() != 2 * f * n {
        return false;
    }
    if !is_self_complementary(code) {
        return false;
    }
    let Ok(dist) = distance_distribution(code) else {
        return false;
    };
    let expected: Vec<usize> = {
        let mut s = vec![n / 2 - b, n / 2 - a, n / 2, n / 2 + a, n / 2 + b, n];
        s.sort_unstable();
        s.dedup();
        s
    };
    if dist.support() != expected {
        return false;
    }
    if dist.counts[n / 2] != Rational64::from_integer((2 * n - 2) as i64) {
        return false;
    }
    decompose_blocks(code).is_ok_and(|blocks| blocks.len() == f)
}

/// Checks the weakly unbiased code conditions for odd offsets `a < b`:
/// `|C| = 4n`, support `{0, n/2 +- a, n/2 +- b, n/2, n}`, `A_{n/2} = 2n-2`,
/// and a 2-block decomposition. The matrices from `psi_matrices` then form a
/// weakly unbiased pair with sigma = {2a, 2b}.
pub fn check_weak_f2(code: &BinaryCode, a: usize, b: usize) -> bool {
    a % 2 == 1 && b % 2 == 1 && check_weak_common(code, a, b, 2)
}

/// Type II analogue of `check_weak_f2`: even offsets and an f-block
/// decomposition.
pub fn check_weak2_f2(code: &BinaryCode, a: usize, b: usize, f: usize) -> bool {
    a % 2 == 0 && b % 2 == 0 && check_weak_common(code, a, b, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::{check_mutual, classify_pair, PairClassification};

    #[test]
    fn hadamard_code_distribution() {
        let h12 = fixtures::paley_h12();
        let c = code_of_hadamard(&h12).unwrap();
        assert_eq!(c.len(), 24);
        let d = distance_distribution(&c).unwrap();
        assert_eq!(d.support(), vec![6, 12]);
        assert_eq!(d.counts[0], Rational64::from_integer(1));
        assert_eq!(d.counts[6], Rational64::from_integer(22));
        assert_eq!(d.counts[12], Rational64::from_integer(1));
    }

    #[test]
    fn order_two_hadamard_code() {
        let h2 = SignMatrix::from_sign_rows(&["++", "+-"]).unwrap();
        let c = code_of_hadamard(&h2).unwrap();
        let mut words: Vec<String> = c.words().iter().map(|w| w.to_bit_string(2)).collect();
        words.sort();
        assert_eq!(words, vec!["00", "01", "10", "11"]);
    }

    #[test]
    fn singleton_distribution() {
        let c = BinaryCode::new(4, vec![BitVec::zeros(4)]).unwrap();
        let d = distance_distribution(&c).unwrap();
        assert_eq!(d.counts[0], Rational64::from_integer(1));
        assert!(d.support().is_empty());
    }

    #[test]
    fn self_complementary_checks() {
        let h12 = fixtures::paley_h12();
        assert!(is_self_complementary(&code_of_hadamard(&h12).unwrap()));
        let zero_only = BinaryCode::new(4, vec![BitVec::zeros(4)]).unwrap();
        assert!(!is_self_complementary(&zero_only));
        let pair = BinaryCode::new(4, vec![BitVec::zeros(4), BitVec::ones(4)]).unwrap();
        assert!(is_self_complementary(&pair));
    }

    #[test]
    fn psi_inverts_hadamard_code() {
        let h12 = fixtures::paley_h12();
        let c = code_of_hadamard(&h12).unwrap();
        let ms = psi_matrices(&c, None).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(
            classify_pair(&h12, &ms[0]),
            PairClassification::QuasiUnbiased { l: 1, a: 144 }
        );
    }

    #[test]
    fn psi_on_b8_1_1_gives_a_4_16_pair() {
        let c = fixtures::b8_code(1, 1).unwrap();
        assert_eq!(c.len(), 32);
        assert!(check_f2(&c, 2, 2));
        let ms = psi_matrices(&c, None).unwrap();
        assert_eq!(ms.len(), 2);
        assert!(check_mutual(
            &ms,
            &PairClassification::QuasiUnbiased { l: 4, a: 16 }
        ));
    }

    #[test]
    fn check_f2_rejects_single_hadamard_code() {
        let c = code_of_hadamard(&fixtures::paley_h12()).unwrap();
        assert!(!check_f2(&c, 2, 1));
        assert!(!check_f2(&c, 3, 1));
    }

    #[test]
    fn predicted_distribution_matches_formula() {
        let d = predicted_distribution(24, 16, 9);
        assert_eq!(d.counts[0], Rational64::from_integer(1));
        assert_eq!(d.counts[8], Rational64::from_integer(135));
        assert_eq!(d.counts[12], Rational64::from_integer(496));
        assert_eq!(d.counts[16], Rational64::from_integer(135));
        assert_eq!(d.counts[24], Rational64::from_integer(1));
        assert_eq!(d.total(), Rational64::from_integer(768));

        let single = predicted_distribution(12, 1, 9);
        assert_eq!(single.counts[6], Rational64::from_integer(22));

        let d8 = predicted_distribution(8, 8, 4);
        let ints: Vec<i64> = d8.counts.iter().map(|c| c.to_integer()).collect();
        assert_eq!(ints, vec![1, 0, 28, 0, 70, 0, 28, 0, 1]);
        assert_eq!(d8.total(), Rational64::from_integer(128));
    }

    #[test]
    fn b8_7_1_matches_predicted_distribution() {
        let c = fixtures::b8_code(7, 1).unwrap();
        let d = distance_distribution(&c).unwrap();
        assert_eq!(d, predicted_distribution(8, 8, 4));
    }

    #[test]
    fn min_distances() {
        let c = fixtures::b8_code(3, 2).unwrap();
        assert_eq!(min_distance(&c).unwrap(), 2);
        let ch = code_of_hadamard(&fixtures::paley_h12()).unwrap();
        assert_eq!(min_distance(&ch).unwrap(), 6);
        let singleton = BinaryCode::new(4, vec![BitVec::zeros(4)]).unwrap();
        assert!(min_distance(&singleton).is_err());
    }

    #[test]
    fn rm_fixture_shapes() {
        for (m, n, words) in [(3usize, 8usize, 16usize), (4, 16, 32), (5, 32, 64)] {
            let c = fixtures::rm_fixture(m).unwrap();
            assert_eq!(c.length(), n);
            assert_eq!(c.len(), words);
            assert!(is_self_complementary(&c));
        }
        let d = distance_distribution(&fixtures::rm_fixture(3).unwrap()).unwrap();
        let ints = d.as_integers().unwrap();
        assert_eq!(ints, vec![1, 0, 0, 0, 14, 0, 0, 0, 1]);
    }

    #[test]
    fn weak_checker_on_d12_codes() {
        let d12_1 = fixtures::d_code_12(1).unwrap();
        assert!(check_weak_f2(&d12_1, 1, 5));
        let ms = psi_matrices(&d12_1, None).unwrap();
        assert_eq!(
            classify_pair(&ms[0], &ms[1]).sigma(),
            Some((2, 10))
        );

        let d12_2 = fixtures::d_code_12(2).unwrap();
        assert!(check_weak_f2(&d12_2, 1, 3));
        let ms = psi_matrices(&d12_2, None).unwrap();
        assert_eq!(classify_pair(&ms[0], &ms[1]).sigma(), Some((2, 6)));
    }

    #[test]
    fn duplicate_words_rejected() {
        let w = BitVec::zeros(4);
        assert!(BinaryCode::new(4, vec![w.clone(), w]).is_err());
    }

    #[test]
    fn code_of_matrix_set_roundtrip() {
        let h12 = fixtures::paley_h12();
        let k12 = fixtures::figure_k12();
        let c = code_of_matrix_set(&[h12, k12]).unwrap();
        assert_eq!(c.len(), 48);
        assert!(check_f2(&c, 2, 2));
    }
}
